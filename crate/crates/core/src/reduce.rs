//! Reduction of positive definite forms and the canonical class representative.
//!
//! [`quick_reduce`] shortens a basis by pairwise and three-term size reduction.
//! [`reduce`] then enumerates every basis whose norm triple `(a, b, c)` is
//! lexicographically minimal (these are the successive minima in dimension
//! three) and keeps the one with the smallest key
//! `(a, b, c, |d|, |e|, |f|, d < 0, e < 0, f < 0)`. The candidate set depends
//! only on the lattice, so the result is an invariant of the class.

use crate::enumerate::short_vectors;
use crate::error::Result;
use crate::form::{TernaryForm, UnimodularMap};
use crate::matrix::Mat3;
use crate::scalar::{round_div, Scalar};

fn diag<T: Scalar>(form: &TernaryForm<T>, i: usize) -> &T {
    match i {
        0 => &form.a,
        1 => &form.b,
        _ => &form.c,
    }
}

/// Sum of `basis[k]` with the given integer coefficients on the other columns.
fn column_op<T: Scalar>(target: usize, coeffs: [(usize, T); 2]) -> Mat3<T> {
    let mut m = Mat3::identity();
    for (i, k) in coeffs {
        m.set(i, target, k);
    }
    m
}

/// Sorts the diagonal into ascending order with a signed permutation of determinant +1.
fn sort_diagonal<T: Scalar>(form: &TernaryForm<T>) -> Mat3<T> {
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| diag(form, i).cmp(diag(form, j)).then(i.cmp(&j)));
    let mut cols = [[T::zero(), T::zero(), T::zero()], [T::zero(), T::zero(), T::zero()], [T::zero(), T::zero(), T::zero()]];
    for (new, &old) in order.iter().enumerate() {
        cols[new][old] = T::one();
    }
    let mut m = Mat3::from_columns(cols);
    if m.det().is_negative() {
        for i in 0..3 {
            let v = -m.get(i, 2).clone();
            m.set(i, 2, v);
        }
    }
    m
}

/// Fast, non-canonical reduction: returns `(r, u)` with `apply_map(form, u) = r`,
/// `r.a ≤ r.b ≤ r.c`, no column shortened by subtracting a multiple of another,
/// and no column shortened by adding `±b_i ± b_j`.
pub fn quick_reduce<T: Scalar>(form: &TernaryForm<T>) -> Result<(TernaryForm<T>, UnimodularMap<T>)> {
    form.require_positive_definite()?;
    let mut g = form.clone();
    let mut u: Mat3<T> = Mat3::identity();
    loop {
        let mut improved = false;
        let gram = g.gram();
        'pairs: for j in 0..3 {
            for i in 0..3 {
                if i == j {
                    continue;
                }
                let k = round_div(gram.get(i, j), gram.get(i, i));
                if k.is_zero() {
                    continue;
                }
                let other = 3 - i - j;
                let e = column_op(j, [(i, -k), (other, T::zero())]);
                let cand = g.transform(&e);
                if diag(&cand, j) < diag(&g, j) {
                    g = cand;
                    u = &u * &e;
                    improved = true;
                    break 'pairs;
                }
            }
        }
        if !improved {
            'triples: for k in 0..3 {
                let (i, j) = ((k + 1) % 3, (k + 2) % 3);
                for (si, sj) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                    let e = column_op(k, [(i, crate::scalar::int(si)), (j, crate::scalar::int(sj))]);
                    let cand = g.transform(&e);
                    if diag(&cand, k) < diag(&g, k) {
                        g = cand;
                        u = &u * &e;
                        improved = true;
                        break 'triples;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    let p = sort_diagonal(&g);
    g = g.transform(&p);
    u = &u * &p;
    Ok((g, UnimodularMap::new_unchecked(u)))
}

fn cross<T: Scalar>(u: &[T; 3], v: &[T; 3]) -> [T; 3] {
    [
        u[1].clone() * v[2].clone() - u[2].clone() * v[1].clone(),
        u[2].clone() * v[0].clone() - u[0].clone() * v[2].clone(),
        u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone(),
    ]
}

fn dot<T: Scalar>(u: &[T; 3], v: &[T; 3]) -> T {
    u[0].clone() * v[0].clone() + u[1].clone() * v[1].clone() + u[2].clone() * v[2].clone()
}

/// `{u, v}` extends to a basis of `Z³` iff the 2×2 minors of `[u v]` are coprime.
fn primitive_pair<T: Scalar>(u: &[T; 3], v: &[T; 3]) -> bool {
    let c = cross(u, v);
    c[0].gcd(&c[1]).gcd(&c[2]).is_one()
}

type Key<T> = (T, T, T, T, T, T, bool, bool, bool);

fn key<T: Scalar>(g: &TernaryForm<T>) -> Key<T> {
    (
        g.a.clone(),
        g.b.clone(),
        g.c.clone(),
        g.d.abs(),
        g.e.abs(),
        g.f.abs(),
        g.d.is_negative(),
        g.e.is_negative(),
        g.f.is_negative(),
    )
}

/// Bases with lexicographically minimal norm triple, drawn from `vectors`
/// (sorted by value). Empty if `vectors` does not reach far enough.
fn minimal_bases<T: Scalar>(vectors: &[([T; 3], T)]) -> Vec<[[T; 3]; 3]> {
    let nonzero: Vec<&([T; 3], T)> = vectors.iter().filter(|(_, q)| !q.is_zero()).collect();
    let Some((_, min1)) = nonzero.first() else { return Vec::new() };
    let firsts: Vec<&[T; 3]> = nonzero.iter().take_while(|(_, q)| q == min1).map(|(v, _)| v).collect();

    // Second vectors: smallest value over all first choices.
    let mut pairs: Vec<(&[T; 3], &[T; 3])> = Vec::new();
    let mut best2: Option<&T> = None;
    for &b1 in &firsts {
        for (v, q) in &nonzero {
            if best2.is_some_and(|b| q > b) {
                break;
            }
            if primitive_pair(b1, v) {
                if best2.is_none_or(|b| q < b) {
                    best2 = Some(q);
                    pairs.clear();
                }
                pairs.push((b1, v));
            }
        }
    }

    let mut bases: Vec<[[T; 3]; 3]> = Vec::new();
    let mut best3: Option<&T> = None;
    for (b1, b2) in pairs {
        let normal = cross(b1, b2);
        for (v, q) in &nonzero {
            if best3.is_some_and(|b| q > b) {
                break;
            }
            if dot(&normal, v).abs().is_one() {
                if best3.is_none_or(|b| q < b) {
                    best3 = Some(q);
                    bases.clear();
                }
                bases.push([b1.clone(), b2.clone(), v.clone()]);
            }
        }
    }
    bases
}

/// Canonical reduced representative `r` of the class of `form` and a witness `u`
/// with `apply_map(form, u) = r`. Equivalent forms reduce to the same `r`.
pub fn reduce<T: Scalar>(form: &TernaryForm<T>) -> Result<(TernaryForm<T>, UnimodularMap<T>)> {
    let (r0, u0) = quick_reduce(form)?;
    let mut bound = r0.c.clone();
    loop {
        let vectors = short_vectors(&r0, &bound);
        let bases = minimal_bases(&vectors);
        if !bases.is_empty() {
            let (best, basis) = bases
                .into_iter()
                .map(|cols| {
                    let m = Mat3::from_columns(cols);
                    (r0.transform(&m), m)
                })
                .min_by(|(g1, m1), (g2, m2)| key(g1).cmp(&key(g2)).then_with(|| m1.cmp(m2)))
                .expect("nonempty");
            if best == *form {
                return Ok((best, UnimodularMap::identity()));
            }
            let u = u0.compose(&UnimodularMap::new_unchecked(basis));
            return Ok((best, u));
        }
        bound = bound.clone() + bound;
    }
}

/// The canonical form alone.
pub fn canonical<T: Scalar>(form: &TernaryForm<T>) -> Result<TernaryForm<T>> {
    reduce(form).map(|(r, _)| r)
}

/// Reduction inequalities `0 < a ≤ b ≤ c`, `|d| ≤ b`, `|e| ≤ a`, `|f| ≤ a`.
pub fn is_reduced_shape<T: Scalar>(g: &TernaryForm<T>) -> bool {
    g.a.is_positive() && g.a <= g.b && g.b <= g.c && g.d.abs() <= g.b && g.e.abs() <= g.a && g.f.abs() <= g.a
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = TernaryForm<i64>;

    #[test]
    fn already_reduced() {
        let (r, u) = reduce(&F::sum_of_squares()).unwrap();
        assert_eq!(r, F::sum_of_squares());
        assert!(u.is_identity());
    }

    #[test]
    fn sorts_diagonal() {
        let g = F::from_i64([3, 1, 1, 0, 0, 0]);
        let (r, u) = reduce(&g).unwrap();
        assert_eq!(r, F::from_i64([1, 1, 3, 0, 0, 0]));
        assert_eq!(g.apply_map(&u), r);
        assert!(u.det().abs() == 1);
    }

    #[test]
    fn witness_and_inequalities() {
        for coeffs in [[31, 5, 11, 1, -14, 6], [15, 14, 10, 7, 4, 16], [7, 44, 84, 44, 4, 8], [1, 1, 3, 0, 0, 1]] {
            let g = F::from_i64(coeffs);
            let (r, u) = reduce(&g).unwrap();
            assert_eq!(g.apply_map(&u), r);
            assert!(is_reduced_shape(&r), "{r}");
            assert_eq!(reduce(&r).unwrap().0, r, "idempotent");
        }
    }

    #[test]
    fn sign_flip_is_same_class() {
        let g = F::from_i64([1, 1, 3, 0, 0, 1]);
        let h = F::from_i64([1, 1, 3, 0, 0, -1]);
        assert_eq!(canonical(&g).unwrap(), canonical(&h).unwrap());
    }

    #[test]
    fn rejects_indefinite() {
        assert!(reduce(&F::from_i64([-1, 0, 0, 1, 0, 0])).is_err());
    }
}
