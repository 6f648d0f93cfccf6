//! Integral equivalence and automorph groups of positive definite forms.
//!
//! Both reduce to the same search: columns `u1, u2, u3` with prescribed values
//! `h.a, h.b, h.c` under `g` and prescribed pairwise products `h.f, h.e, h.d`.
//! Candidates come from a complete enumeration of short vectors of a reduced
//! basis, so the search is exhaustive.

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::short_vectors;
use crate::error::{Error, Result};
use crate::form::{TernaryForm, UnimodularMap};
use crate::matrix::Mat3;
use crate::reduce::quick_reduce;
use crate::scalar::Scalar;

#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct AutomorphGroup<T: Scalar> {
    pub form: TernaryForm<T>,
    pub elements: Vec<UnimodularMap<T>>,
    pub order: usize,
}

impl<T: Scalar> AutomorphGroup<T> {
    pub fn contains(&self, u: &UnimodularMap<T>) -> bool {
        self.elements.binary_search(u).is_ok()
    }
}

struct Candidates<T> {
    first: Vec<[T; 3]>,
    second: Vec<[T; 3]>,
    third: Vec<[T; 3]>,
}

fn candidates<T: Scalar>(g: &TernaryForm<T>, h: &TernaryForm<T>) -> Candidates<T> {
    let top = h.a.clone().max(h.b.clone()).max(h.c.clone());
    let vectors = short_vectors(g, &top);
    let with_value = |t: &T| vectors.iter().filter(|(_, q)| q == t).map(|(v, _)| v.clone()).collect::<Vec<_>>();
    Candidates {
        first: with_value(&h.a),
        second: with_value(&h.b),
        third: with_value(&h.c),
    }
}

/// All `[u1 u2 u3]` extending a fixed first column.
fn extend<T: Scalar>(
    g: &TernaryForm<T>,
    h: &TernaryForm<T>,
    cands: &Candidates<T>,
    u1: &[T; 3],
    first_only: bool,
) -> Vec<Mat3<T>> {
    let mut out = Vec::new();
    for u2 in &cands.second {
        if g.bilinear(u1, u2) != h.f {
            continue;
        }
        for u3 in &cands.third {
            if g.bilinear(u1, u3) == h.e && g.bilinear(u2, u3) == h.d {
                out.push(Mat3::from_columns([u1.clone(), u2.clone(), u3.clone()]));
                if first_only {
                    return out;
                }
            }
        }
    }
    out
}

/// Every integral `V` with `V' G V = H`, sorted.
fn isometries<T: Scalar>(g: &TernaryForm<T>, h: &TernaryForm<T>) -> Vec<Mat3<T>> {
    let cands = candidates(g, h);
    let mut all: Vec<Mat3<T>> = cands
        .first
        .par_iter()
        .flat_map_iter(|u1| extend(g, h, &cands, u1, false))
        .collect();
    all.sort();
    all
}

fn first_isometry<T: Scalar>(g: &TernaryForm<T>, h: &TernaryForm<T>) -> Option<Mat3<T>> {
    let cands = candidates(g, h);
    cands.first.iter().find_map(|u1| extend(g, h, &cands, u1, true).pop())
}

/// Full integral automorph group, `±I` included.
pub fn automorphs<T: Scalar>(form: &TernaryForm<T>) -> Result<AutomorphGroup<T>> {
    let (r, u) = quick_reduce(form)?;
    let u_inv = u.inverse();
    let mut elements: Vec<UnimodularMap<T>> = isometries(&r, &r)
        .into_iter()
        .map(|s| UnimodularMap::new_unchecked(&(u.matrix() * &s) * u_inv.matrix()))
        .collect();
    elements.sort();
    let order = elements.len();
    if order < 2 || order % 2 != 0 {
        return Err(Error::Inconsistent(format!("automorph group of {form} has order {order}")));
    }
    Ok(AutomorphGroup {
        form: form.clone(),
        elements,
        order,
    })
}

/// A witness `u` with `apply_map(g, u) = h`, or `None` if the forms are not
/// integrally equivalent.
pub fn equivalent<T: Scalar>(g: &TernaryForm<T>, h: &TernaryForm<T>) -> Result<Option<UnimodularMap<T>>> {
    g.require_positive_definite()?;
    h.require_positive_definite()?;
    if g.discriminant() != h.discriminant() {
        return Ok(None);
    }
    let (rg, ug) = quick_reduce(g)?;
    let (rh, uh) = quick_reduce(h)?;
    Ok(first_isometry(&rg, &rh).map(|v| {
        let w = &(ug.matrix() * &v) * uh.inverse().matrix();
        UnimodularMap::new_unchecked(w)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = TernaryForm<i64>;

    #[test]
    fn automorph_orders() {
        assert_eq!(automorphs(&F::sum_of_squares()).unwrap().order, 48);
        assert_eq!(automorphs(&F::from_i64([31, 5, 11, 1, -14, 6])).unwrap().order, 2);
        assert_eq!(automorphs(&F::from_i64([11, 7, 20, 7, 2, 4])).unwrap().order, 4);
    }

    #[test]
    fn elements_fix_the_form() {
        let g = F::from_i64([15, 14, 10, 7, 4, 16]);
        let group = automorphs(&g).unwrap();
        assert!(group.contains(&UnimodularMap::identity()));
        assert!(group.contains(&UnimodularMap::negative_identity()));
        for u in &group.elements {
            assert_eq!(g.apply_map(u), g);
        }
    }

    #[test]
    fn sign_change_equivalence() {
        let g = F::from_i64([1, 1, 3, 0, 0, 1]);
        let h = F::from_i64([1, 1, 3, 0, 0, -1]);
        let w = equivalent(&g, &h).unwrap().expect("equivalent");
        assert_eq!(g.apply_map(&w), h);
    }

    #[test]
    fn distinct_classes() {
        let h3 = F::from_i64([11, 7, 20, 7, 2, 4]);
        let h4 = F::from_i64([7, 11, 21, 11, 2, 4]);
        assert!(equivalent(&h3, &h4).unwrap().is_none());
    }

    #[test]
    fn discriminant_mismatch_is_not_equivalent() {
        let g = F::sum_of_squares();
        let h = F::from_i64([1, 1, 2, 0, 0, 0]);
        assert!(equivalent(&g, &h).unwrap().is_none());
    }
}
