//! Exact enumeration of lattice points in the ellipsoid `form(v) ≤ N`.
//!
//! Coordinates are bounded by completing squares in exact integer arithmetic.
//! Each bound is widened by one and then filtered exactly, so no lattice point
//! can be lost to rounding.

use rayon::prelude::*;

use crate::form::TernaryForm;
use crate::scalar::{exact_sqrt, int, isqrt, Scalar};

/// Integer superset `[lo, hi]` of the solutions of `A t² + B t + C ≤ 0` with `A > 0`.
fn quadratic_range<T: Scalar>(a: &T, b: &T, c: &T) -> Option<(T, T)> {
    let four: T = int(4);
    let disc = b.clone() * b.clone() - four * a.clone() * c.clone();
    if disc.is_negative() {
        return None;
    }
    let s = isqrt(&disc);
    let one = T::one();
    let two_a = int::<T>(2) * a.clone();
    let lo = (-b.clone() - s.clone() - one.clone()).div_ceil(&two_a);
    let hi = (-b.clone() + s + one).div_floor(&two_a);
    Some((lo, hi))
}

/// Precomputed coefficients for nested coordinate bounds.
struct Bounds<T> {
    form: TernaryForm<T>,
    // 4bc − d²
    minor: T,
    disc: T,
}

impl<T: Scalar> Bounds<T> {
    fn new(form: &TernaryForm<T>) -> Self {
        debug_assert!(form.is_positive_definite(), "{form}");
        let four: T = int(4);
        Bounds {
            minor: four * form.b.clone() * form.c.clone() - form.d.clone() * form.d.clone(),
            disc: form.discriminant(),
            form: form.clone(),
        }
    }

    /// `|x| ≤ x_max` for every point with `form ≤ n`.
    fn x_max(&self, n: &T) -> T {
        if n.is_negative() {
            return int(-1);
        }
        isqrt(&((n.clone() * self.minor.clone()).div_floor(&self.disc)))
    }

    fn y_range(&self, x: &T, n: &T) -> Option<(T, T)> {
        let f = &self.form;
        let (two, four): (T, T) = (int(2), int(4));
        let b2 = (four.clone() * f.c.clone() * f.f.clone() - two * f.d.clone() * f.e.clone()) * x.clone();
        let c2 = (four.clone() * f.a.clone() * f.c.clone() - f.e.clone() * f.e.clone()) * x.clone() * x.clone()
            - four * f.c.clone() * n.clone();
        quadratic_range(&self.minor, &b2, &c2)
    }

    /// Linear and constant part of the form as a polynomial in `z`.
    fn z_poly(&self, x: &T, y: &T) -> (T, T) {
        let f = &self.form;
        let lin = f.d.clone() * y.clone() + f.e.clone() * x.clone();
        let cst = f.a.clone() * x.clone() * x.clone() + f.b.clone() * y.clone() * y.clone() + f.f.clone() * x.clone() * y.clone();
        (lin, cst)
    }
}

fn i64_span<T: Scalar>(lo: &T, hi: &T) -> i64 {
    (hi.clone() - lo.clone()).to_i64().expect("coordinate range fits in i64")
}

/// Calls `visit(v, value)` for every `v` with `form(v) ≤ n`, sequentially and in
/// lexicographic order of `(x, y, z)`.
pub fn for_each_point<T: Scalar, F: FnMut([T; 3], T)>(form: &TernaryForm<T>, n: &T, mut visit: F) {
    let bounds = Bounds::new(form);
    let xm = bounds.x_max(n);
    let mut x = -xm.clone();
    while x <= xm {
        slab(&bounds, &x, n, &mut visit);
        x = x + T::one();
    }
}

fn slab<T: Scalar, F: FnMut([T; 3], T)>(bounds: &Bounds<T>, x: &T, n: &T, visit: &mut F) {
    let Some((ylo, yhi)) = bounds.y_range(x, n) else { return };
    let c = &bounds.form.c;
    let mut y = ylo;
    while y <= yhi {
        let (lin, cst) = bounds.z_poly(x, &y);
        if let Some((zlo, zhi)) = quadratic_range(c, &lin, &(cst.clone() - n.clone())) {
            let mut z = zlo;
            while z <= zhi {
                let v = c.clone() * z.clone() * z.clone() + lin.clone() * z.clone() + cst.clone();
                if v <= *n {
                    visit([x.clone(), y.clone(), z.clone()], v);
                }
                z = z + T::one();
            }
        }
        y = y + T::one();
    }
}

/// All points with `form(v) ≤ n`, sorted by `(value, v)`.
pub fn short_vectors<T: Scalar>(form: &TernaryForm<T>, n: &T) -> Vec<([T; 3], T)> {
    let mut out = Vec::new();
    for_each_point(form, n, |v, val| out.push((v, val)));
    out.sort_by(|(v1, q1), (v2, q2)| q1.cmp(q2).then_with(|| v1.cmp(v2)));
    out
}

/// Histogram of values `0..=n` over the ellipsoid, parallel over `x` slabs.
pub fn value_histogram<T: Scalar>(form: &TernaryForm<T>, n: &T) -> Vec<u64> {
    let len = n.to_usize().expect("theta bound fits in usize") + 1;
    let bounds = Bounds::new(form);
    let xm = bounds.x_max(n);
    let span = i64_span(&-xm.clone(), &xm);
    let lo = -xm;
    (0..=span)
        .into_par_iter()
        .fold(
            || vec![0u64; len],
            |mut hist, k| {
                let x = lo.clone() + int::<T>(k);
                slab(&bounds, &x, n, &mut |_, v: T| {
                    hist[v.to_usize().expect("value in range")] += 1;
                });
                hist
            },
        )
        .reduce(
            || vec![0u64; len],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

fn z_roots<T: Scalar>(c: &T, lin: &T, cst: &T) -> impl Iterator<Item = T> {
    // c z² + lin z + cst = 0
    let four: T = int(4);
    let disc = lin.clone() * lin.clone() - four * c.clone() * cst.clone();
    let mut roots: Vec<T> = Vec::with_capacity(2);
    if let Some(s) = exact_sqrt(&disc) {
        let two_c = int::<T>(2) * c.clone();
        for num in [-lin.clone() - s.clone(), -lin.clone() + s.clone()] {
            if num.is_multiple_of(&two_c) {
                let z = num / two_c.clone();
                if !roots.contains(&z) {
                    roots.push(z);
                }
            }
        }
    }
    roots.into_iter()
}

/// Number of `v` with `form(v) = n`; solves for `z` instead of scanning it.
pub fn count_value<T: Scalar>(form: &TernaryForm<T>, n: &T) -> u64 {
    if n.is_negative() {
        return 0;
    }
    let bounds = Bounds::new(form);
    let xm = bounds.x_max(n);
    let span = i64_span(&-xm.clone(), &xm);
    let lo = -xm;
    (0..=span)
        .into_par_iter()
        .map(|k| {
            let x = lo.clone() + int::<T>(k);
            let mut count = 0u64;
            if let Some((ylo, yhi)) = bounds.y_range(&x, n) {
                let mut y = ylo;
                while y <= yhi {
                    let (lin, cst) = bounds.z_poly(&x, &y);
                    count += z_roots(&bounds.form.c, &lin, &(cst - n.clone())).count() as u64;
                    y = y + T::one();
                }
            }
            count
        })
        .sum()
}

/// Every `v` with `form(v) = n`, sorted.
pub fn vectors_of_value<T: Scalar>(form: &TernaryForm<T>, n: &T) -> Vec<[T; 3]> {
    let mut out = Vec::new();
    if n.is_negative() {
        return out;
    }
    let bounds = Bounds::new(form);
    let xm = bounds.x_max(n);
    let mut x = -xm.clone();
    while x <= xm {
        if let Some((ylo, yhi)) = bounds.y_range(&x, n) {
            let mut y = ylo;
            while y <= yhi {
                let (lin, cst) = bounds.z_poly(&x, &y);
                for z in z_roots(&bounds.form.c, &lin, &(cst - n.clone())) {
                    out.push([x.clone(), y.clone(), z]);
                }
                y = y + T::one();
            }
        }
        x = x + T::one();
    }
    out.sort();
    out
}
