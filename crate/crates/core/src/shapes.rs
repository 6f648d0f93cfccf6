//! Convenient Shapes 1 and 2.
//!
//! Shape 1 (odd discriminant `δ`): `a` odd with `a ≡ −δ (mod 4)`, `d` odd,
//! `e, f` even. Shape 2 (discriminant `16δ`, `δ` odd): `a` odd with
//! `a ≡ −δ (mod 4)` and `b, c, d, e, f ≡ 0 (mod 4)`.

use crate::error::{Error, Result};
use crate::form::{TernaryForm, UnimodularMap};
use crate::matrix::Mat3;
use crate::reduce::quick_reduce;
use crate::scalar::{int, Scalar};

fn is_mod4<T: Scalar>(v: &T, r: i64) -> bool {
    v.mod_floor(&int(4)) == int::<T>(r).mod_floor(&int(4))
}

pub fn is_shape_1<T: Scalar>(g: &TernaryForm<T>) -> bool {
    let delta = g.discriminant();
    delta.is_odd() && g.a.is_odd() && (g.a.clone() + delta).mod_floor(&int(4)).is_zero() && g.d.is_odd() && g.e.is_even() && g.f.is_even()
}

pub fn is_shape_2<T: Scalar>(g: &TernaryForm<T>) -> bool {
    let disc = g.discriminant();
    let sixteen: T = int(16);
    if !disc.is_multiple_of(&sixteen) {
        return false;
    }
    let delta = disc / sixteen;
    delta.is_odd()
        && g.a.is_odd()
        && (g.a.clone() + delta).mod_floor(&int(4)).is_zero()
        && [&g.b, &g.c, &g.d, &g.e, &g.f].iter().all(|v| is_mod4(*v, 0))
}

fn shape_error<T: Scalar>(form: &TernaryForm<T>, condition: impl Into<String>) -> Error {
    Error::ShapePrecondition {
        form: form.to_string(),
        condition: condition.into(),
    }
}

/// Unimodular matrix whose first column is the primitive vector `v`.
pub fn extend_to_basis<T: Scalar>(v: &[T; 3]) -> Result<Mat3<T>> {
    let [v1, v2, v3] = v.clone();
    let g = v1.gcd(&v2);
    let m = if g.is_zero() {
        if !v3.abs().is_one() {
            return Err(Error::InvalidInput(format!("{v:?} is not primitive")));
        }
        // (0, 0, ±1)
        Mat3::from_columns([v.clone(), [T::zero(), T::one(), T::zero()], [-v3, T::zero(), T::zero()]])
    } else {
        // s v1 + t v2 = g, and α g − β v3 = 1.
        let e = v1.extended_gcd(&v2);
        let (s, t) = (e.x, e.y);
        let h = g.extended_gcd(&v3);
        if !h.gcd.is_one() {
            return Err(Error::InvalidInput(format!("{v:?} is not primitive")));
        }
        let (alpha, beta) = (h.x, -h.y);
        Mat3::from_columns([
            v.clone(),
            [-t, s, T::zero()],
            [beta.clone() * v1 / g.clone(), beta * v2 / g, alpha],
        ])
    };
    debug_assert!(m.det().is_one(), "{m:?}");
    Ok(m)
}

fn is_primitive_vector<T: Scalar>(v: &[T; 3]) -> bool {
    v[0].gcd(&v[1]).gcd(&v[2]).is_one()
}

/// Smallest odd value at a primitive vector of the box `max |x_i| ≤ r`, growing
/// the box by 2 until one is found. Ties go to the lexicographically least vector.
fn odd_primitive_value<T: Scalar>(g: &TernaryForm<T>) -> [T; 3] {
    let mut r = 6i64;
    loop {
        let mut best: Option<(T, [T; 3])> = None;
        for x in -r..=r {
            for y in -r..=r {
                for z in -r..=r {
                    let v = [int::<T>(x), int::<T>(y), int::<T>(z)];
                    let q = g.value(&v);
                    if q.is_odd() && q.is_positive() && is_primitive_vector(&v) {
                        let better = match &best {
                            None => true,
                            Some((bq, bv)) => (&q, &v) < (bq, bv),
                        };
                        if better {
                            best = Some((q, v));
                        }
                    }
                }
            }
        }
        if let Some((_, v)) = best {
            return v;
        }
        r += 2;
    }
}

/// An equivalent form in Convenient Shape 1 and the witness `u` with
/// `apply_map(form, u) = shape`. Forms already in shape are returned unchanged.
pub fn to_convenient_shape_1<T: Scalar>(form: &TernaryForm<T>) -> Result<(TernaryForm<T>, UnimodularMap<T>)> {
    let delta = form.discriminant();
    if delta.is_even() {
        return Err(Error::EvenDiscriminant(form.to_string(), delta.to_string()));
    }
    if !form.is_primitive() {
        return Err(Error::Imprimitive(form.to_string()));
    }
    if is_shape_1(form) {
        return Ok((form.clone(), UnimodularMap::identity()));
    }
    let (r, mut u) = quick_reduce(form)?;
    let v = odd_primitive_value(&r);
    u = u.compose(&UnimodularMap::new_unchecked(extend_to_basis(&v)?));
    let mut g = form.apply_map(&u);
    let mut step = |g: &mut TernaryForm<T>, m: UnimodularMap<T>| {
        *g = g.apply_map(&m);
        u = u.compose(&m);
    };
    if !(g.e.is_even() && g.f.is_even()) {
        if g.f.is_odd() {
            step(&mut g, UnimodularMap::swap_yz());
        }
        if g.d.is_even() {
            step(&mut g, UnimodularMap::elementary(0, 1));
        }
        if g.f.is_odd() {
            step(&mut g, UnimodularMap::elementary(2, 1));
        }
        step(&mut g, UnimodularMap::elementary(1, 0));
    }
    if !is_shape_1(&g) {
        return Err(Error::Inconsistent(format!("shape 1 moves on {form} ended at {g}")));
    }
    Ok((g, u))
}

/// An equivalent form in Convenient Shape 2 and its witness.
///
/// With `d, e, f` even the form is `a x + b y + c z (mod 2)`, so the vectors of
/// even value form an index-2 sublattice `K`. Take `w1 = e_i` with `a_i` odd and
/// complete it by a basis of `K` modulo `2 w1`; a form that misses the residues
/// `2` and `δ (mod 4)` is then in Shape 2 for every such choice.
pub fn to_convenient_shape_2<T: Scalar>(form: &TernaryForm<T>) -> Result<(TernaryForm<T>, UnimodularMap<T>)> {
    let disc = form.discriminant();
    let sixteen: T = int(16);
    if !disc.is_multiple_of(&sixteen) || (disc.clone() / sixteen.clone()).is_even() {
        return Err(shape_error(form, format!("discriminant {disc} is not 16 times an odd number")));
    }
    let delta = disc / sixteen;
    if !form.is_primitive() {
        return Err(shape_error(form, "form is not primitive"));
    }
    if !(form.d.is_even() && form.e.is_even() && form.f.is_even()) {
        return Err(shape_error(form, "d, e, f are not all even"));
    }
    if is_shape_2(form) {
        return Ok((form.clone(), UnimodularMap::identity()));
    }
    let diag = [&form.a, &form.b, &form.c];
    let i = (0..3).find(|&k| diag[k].is_odd()).expect("primitive with even cross terms");
    let unit = |k: usize| {
        let mut v = [T::zero(), T::zero(), T::zero()];
        v[k] = T::one();
        v
    };
    let mut cols = vec![unit(i)];
    for j in (0..3).filter(|&j| j != i) {
        let mut w = unit(j);
        if diag[j].is_odd() {
            w[i] = T::one();
        }
        cols.push(w);
    }
    let m = Mat3::from_columns([cols[0].clone(), cols[1].clone(), cols[2].clone()]);
    let u = UnimodularMap::new(m)?;
    let g = form.apply_map(&u);
    if is_shape_2(&g) {
        return Ok((g, u));
    }
    Err(shape_error(form, forbidden_witness(&g, &delta)))
}

/// Names a small vector whose value lies in a residue class `2` or `δ (mod 4)`.
fn forbidden_witness<T: Scalar>(g: &TernaryForm<T>, delta: &T) -> String {
    let four: T = int(4);
    let bad = delta.mod_floor(&four);
    for x in -2i64..=2 {
        for y in -2i64..=2 {
            for z in -2i64..=2 {
                let v = [int::<T>(x), int::<T>(y), int::<T>(z)];
                let q = g.value(&v);
                let r = q.mod_floor(&four);
                if r == int(2) || r == bad {
                    return format!("form represents {q} ≡ {r} (mod 4), which Shape 2 excludes");
                }
            }
        }
    }
    "shape 2 congruences b, c, d, e, f ≡ 0 (mod 4) fail".to_string()
}
