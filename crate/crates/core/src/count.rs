//! Representation numbers `R_f(n)` and theta coefficients.

use num_integer::Roots;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{count_value, value_histogram};
use crate::error::{Error, Result};
use crate::form::TernaryForm;
use crate::scalar::{int, Scalar};

/// `counts[n] = R_form(n)` for `0 ≤ n ≤ bound`.
#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct ThetaVector<T: Scalar> {
    pub form: TernaryForm<T>,
    pub bound: u64,
    pub counts: Vec<u64>,
}

impl<T: Scalar> ThetaVector<T> {
    /// `R(n)`, zero for negative `n`. Panics past the bound.
    pub fn get(&self, n: i64) -> u64 {
        if n < 0 {
            return 0;
        }
        self.counts[n as usize]
    }
}

/// Number of integer triples with `form(x, y, z) = n`.
pub fn rep_count<T: Scalar>(form: &TernaryForm<T>, n: &T) -> Result<u64> {
    form.require_positive_definite()?;
    Ok(count_value(form, n))
}

/// All of `R_form(0..=bound)` from a single sweep of the ellipsoid.
pub fn theta<T: Scalar>(form: &TernaryForm<T>, bound: u64) -> Result<ThetaVector<T>> {
    form.require_positive_definite()?;
    let n: T = T::from_u64(bound).ok_or_else(|| Error::InvalidInput(format!("theta bound {bound} out of range")))?;
    Ok(ThetaVector {
        form: form.clone(),
        bound,
        counts: value_histogram(form, &n),
    })
}

/// Representations of `n` as a sum of three squares.
pub fn s(n: u64) -> u64 {
    let form: TernaryForm<i64> = TernaryForm::sum_of_squares();
    count_value(&form, &int::<i64>(n as i64))
}

/// `s(m)` for each requested `m`, via a table of two-square counts up to the
/// largest value; `O(max)` memory and `O(√m)` per value.
pub fn three_square_counts(values: &[u64]) -> Vec<u64> {
    let Some(&top) = values.iter().max() else { return Vec::new() };
    let r2 = two_square_table(top);
    values
        .par_iter()
        .map(|&m| {
            let root = m.sqrt() as i64;
            (-root..=root).map(|z| r2[(m - (z * z) as u64) as usize] as u64).sum()
        })
        .collect()
}

fn two_square_table(top: u64) -> Vec<u32> {
    let mut r2 = vec![0u32; top as usize + 1];
    let root = top.sqrt() as i64;
    for x in -root..=root {
        let rest = top - (x * x) as u64;
        let ymax = rest.sqrt() as i64;
        for y in -ymax..=ymax {
            r2[(x * x + y * y) as usize] += 1;
        }
    }
    r2
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = TernaryForm<i64>;

    fn brute(form: &F, n: i64, r: i64) -> u64 {
        let mut c = 0;
        for x in -r..=r {
            for y in -r..=r {
                for z in -r..=r {
                    if form.evaluate(&x, &y, &z) == n {
                        c += 1;
                    }
                }
            }
        }
        c
    }

    #[test]
    fn small_counts() {
        assert_eq!(rep_count(&F::sum_of_squares(), &1).unwrap(), 6);
        assert_eq!(brute(&F::from_i64([1, 1, 3, 0, 0, 1]), 1, 2), 6);
        assert_eq!(rep_count(&F::from_i64([1, 1, 3, 0, 0, 1]), &1).unwrap(), 6);
        assert_eq!(brute(&F::from_i64([4, 3, 4, 0, 4, 0]), 1, 3), 0);
        assert_eq!(rep_count(&F::from_i64([4, 3, 4, 0, 4, 0]), &1).unwrap(), 0);
    }

    #[test]
    fn three_squares() {
        assert_eq!(s(2), 12);
        assert_eq!(s(3), 8);
        assert_eq!(s(7), 0);
        assert_eq!(s(28), 0);
        assert_eq!(s(9), 30);
        assert_eq!(s(25), 30);
    }

    #[test]
    fn theta_examples() {
        let t = theta(&F::sum_of_squares(), 10).unwrap();
        assert_eq!(t.counts[9], 30);
        assert_eq!(t.counts[7], 0);
        assert_eq!(t.counts[0], 1);
        assert_eq!(theta(&F::from_i64([31, 5, 11, 1, -14, 6]), 0).unwrap().counts, vec![1]);
    }

    #[test]
    fn table_route_matches_enumeration() {
        let values: Vec<u64> = (0..400).chain([9 * 999, 25 * 1000, 73 * 73 * 3]).collect();
        let fast = three_square_counts(&values);
        for (m, got) in values.iter().zip(fast) {
            assert_eq!(got, s(*m), "m={m}");
        }
    }

    #[test]
    fn rejects_indefinite() {
        assert!(rep_count(&F::from_i64([-1, 0, 0, 1, 0, 0]), &1).is_err());
    }
}
