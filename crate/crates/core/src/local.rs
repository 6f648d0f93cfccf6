//! p-adic local representation densities.
//!
//! `d_p(n) = N_t(n) / p^(2t)` where `N_t(n)` counts triples modulo `p^t` on
//! which the form is congruent to `n`. Two exact counters are provided:
//! [`count_solutions_mod`] sweeps two variables and solves the third through a
//! square-root table (`O(p^(2t))`), and [`count_solutions_lifted`] lifts
//! residues one power of `p` at a time, so its cost barely grows with `t`.
//! Densities use the lifting counter; the sweep serves as an independent check.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::TernaryForm;
use crate::kronecker::kronecker;
use crate::matrix::Mat3;
use crate::rational::{serialize_fraction, Rational};
use crate::scalar::{is_prime, valuation, Scalar};

/// Default budget of elementary operations for a single count.
pub const DEFAULT_WORK_LIMIT: u64 = 1_000_000_000;

/// Largest modulus the residue arithmetic accepts.
const MAX_MODULUS: i128 = 1 << 60;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalDensity {
    #[serde(serialize_with = "serialize_fraction")]
    pub value: Rational,
    pub prime: u64,
    pub exponent_used: u32,
    pub stabilized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiValue {
    pub n: u64,
    /// `n = 4^a k` with `4 ∤ k`.
    pub a: u32,
    /// `k mod 8`.
    pub k_class: u8,
    #[serde(serialize_with = "serialize_fraction")]
    pub value: Rational,
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

fn require_odd_prime(p: u64) -> Result<()> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::InvalidInput("expected an odd prime, got 2".into()));
    }
    Ok(())
}

fn modulus(p: u64, t: u32) -> Option<i128> {
    (p as i128).checked_pow(t).filter(|&q| q <= MAX_MODULUS)
}

fn too_large(what: String, p: u64, t: u32, limit: u64) -> Error {
    Error::ResourceLimit {
        what,
        needed: format!("{p}^{t}"),
        limit,
    }
}

/// A scalar reduced into `[0, q)`.
fn residue<T: Scalar>(v: &T, q: i128) -> i128 {
    match T::from_i128(q) {
        Some(qt) => v.mod_floor(&qt).to_i128().expect("residue fits in i128"),
        None => v.to_i128().expect("value smaller than modulus").rem_euclid(q),
    }
}

fn residues<T: Scalar>(form: &TernaryForm<T>, q: i128) -> [i128; 6] {
    form.coeffs().map(|c| residue(&c, q))
}

// ---------------------------------------------------------------------------
// Two-variable sweep.

/// Number of solution triples of `form ≡ n (mod p^t)`, by the `O(p^(2t))` sweep.
pub fn count_solutions_mod<T: Scalar>(form: &TernaryForm<T>, n: &T, p: u64, t: u32) -> Result<u64> {
    count_solutions_mod_with_limit(form, n, p, t, DEFAULT_WORK_LIMIT)
}

pub fn count_solutions_mod_with_limit<T: Scalar>(
    form: &TernaryForm<T>,
    n: &T,
    p: u64,
    t: u32,
    limit: u64,
) -> Result<u64> {
    require_prime(p)?;
    if t == 0 {
        return Err(Error::InvalidInput("exponent t must be at least 1".into()));
    }
    let what = || format!("counting solutions modulo {p}^{t}");
    let q = modulus(p, t).ok_or_else(|| too_large(what(), p, 2 * t, limit))?;
    if q.checked_mul(q).is_none_or(|w| w > limit as i128) {
        return Err(too_large(what(), p, 2 * t, limit));
    }
    Ok(sweep(residues(form, q), residue(n, q), p as i128, t))
}

/// Index set `(i, j)` and the remaining index for each pair.
const PAIRS: [(usize, usize, usize); 3] = [(1, 2, 0), (0, 2, 1), (0, 1, 2)];

/// A unimodular change of variables after which the `z²` coefficient is a unit mod `p`.
fn unit_last_coefficient(f: &TernaryForm<i128>, p: i128) -> Option<Mat3<i128>> {
    let unit = |v: i128| v.rem_euclid(p) != 0;
    let e = |i: usize| {
        let mut v = [0i128; 3];
        v[i] = 1;
        v
    };
    let diag = [f.a, f.b, f.c];
    // Permutations first, with the z column last.
    for k in [2usize, 0, 1] {
        if unit(diag[k]) {
            let (i, j, _) = PAIRS[k];
            return Some(Mat3::from_columns([e(i), e(j), e(k)]));
        }
    }
    // Then `e_i + e_j`, whose value is `a_i + a_j + (cross term)`.
    for (i, j, l) in PAIRS {
        let sum = {
            let mut v = e(i);
            v[j] = 1;
            v
        };
        if unit(f.value(&sum)) {
            return Some(Mat3::from_columns([e(i), e(l), sum]));
        }
    }
    None
}

fn sweep(coeffs: [i128; 6], n: i128, p: i128, t: u32) -> u64 {
    if t == 0 {
        return 1;
    }
    let q = p.pow(t);
    let form = TernaryForm::from_coeffs(coeffs);
    let Some(m) = unit_last_coefficient(&form, p) else {
        // Every coefficient is divisible by p.
        if n % p != 0 {
            return 0;
        }
        let inner = coeffs.map(|c| c / p);
        return (p * p * p) as u64 * sweep(inner, n / p, p, t - 1);
    };
    let g = form.transform(&m);
    let [a, b, c, d, e, f] = g.coeffs().map(|v| v.rem_euclid(q));

    let mut roots = vec![0u32; q as usize];
    for z in 0..q {
        roots[(z * z % q) as usize] += 1;
    }
    let roots = &roots;
    let count_z = move |lin: i128, rest: i128| -> u64 {
        // #{z : c z² + lin z + rest ≡ 0 (mod q)}
        if p != 2 {
            let disc = (lin * lin - 4 * c * rest).rem_euclid(q);
            roots[disc as usize] as u64
        } else if lin % 2 != 0 {
            if rest % 2 == 0 {
                2
            } else {
                0
            }
        } else {
            let half = lin / 2;
            roots[(half * half - c * rest).rem_euclid(q) as usize] as u64
        }
    };
    (0..q)
        .into_par_iter()
        .map(|x| {
            let mut total = 0u64;
            for y in 0..q {
                let lin = (d * y + e * x) % q;
                let rest = (a * x * x + b * y * y + f * x * y - n).rem_euclid(q);
                total += count_z(lin, rest);
            }
            total
        })
        .sum()
}

// ---------------------------------------------------------------------------
// Residue lifting.

struct Lift {
    p: i128,
    /// `(x0, Q(x0), G x0)` for every `x0 ∈ [0, p)³`.
    table: Vec<([i128; 3], i128, [i128; 3])>,
    memo: HashMap<(u32, [i128; 3], i128), u128>,
    work: u64,
    limit: u64,
}

impl Lift {
    fn new(coeffs: [i128; 6], p: i128, limit: u64) -> Self {
        let form = TernaryForm::from_coeffs(coeffs);
        let gram = form.gram();
        let mut table = Vec::with_capacity((p * p * p) as usize);
        for x in 0..p {
            for y in 0..p {
                for z in 0..p {
                    let v = [x, y, z];
                    table.push((v, form.value(&v), gram.mul_vec(&v)));
                }
            }
        }
        Lift {
            p,
            table,
            memo: HashMap::new(),
            work: 0,
            limit,
        }
    }

    /// `#{x mod p^k : Q(x) + L·x + c ≡ 0 (mod p^k)}`.
    ///
    /// Writing `x = x0 + p y` gives `P(x) = P(x0) + p (G x0 + L)·y + p² Q(y)`.
    /// A root `x0` of `P` mod `p` with nonzero gradient lifts to `p^(2(k-1))`
    /// solutions; with zero gradient the problem recurses at `k - 2`.
    fn count(&mut self, k: u32, lin: [i128; 3], c: i128) -> Option<u128> {
        if k == 0 {
            return Some(1);
        }
        let p = self.p;
        let q = p.pow(k);
        let key = (k, lin.map(|v| v.rem_euclid(q)), c.rem_euclid(q));
        if let Some(&hit) = self.memo.get(&key) {
            return Some(hit);
        }
        self.work += self.table.len() as u64;
        if self.work > self.limit {
            return None;
        }
        let (lin, c) = (key.1, key.2);
        let smooth = (p as u128).checked_pow(2 * (k - 1))?;
        let cube = (p * p * p) as u128;
        let mut total = 0u128;
        for i in 0..self.table.len() {
            let (x0, qv, gx) = self.table[i];
            let v = qv + lin[0] * x0[0] + lin[1] * x0[1] + lin[2] * x0[2] + c;
            if v % p != 0 {
                continue;
            }
            let grad = [gx[0] + lin[0], gx[1] + lin[1], gx[2] + lin[2]];
            let term = if grad.iter().any(|g| g % p != 0) {
                smooth
            } else if k == 1 {
                1
            } else {
                let c1 = v / p;
                if c1 % p != 0 {
                    continue;
                }
                cube.checked_mul(self.count(k - 2, grad.map(|g| g / p), c1 / p)?)?
            };
            total = total.checked_add(term)?;
        }
        self.memo.insert(key, total);
        Some(total)
    }
}

/// Number of solution triples of `form ≡ n (mod p^t)`, by residue lifting.
pub fn count_solutions_lifted<T: Scalar>(form: &TernaryForm<T>, n: &T, p: u64, t: u32, limit: u64) -> Result<u128> {
    require_prime(p)?;
    let what = || format!("lifting solutions modulo {p}^{t}");
    let q = modulus(p, t).ok_or_else(|| too_large(what(), p, t, limit))?;
    let mut lift = Lift::new(residues(form, q), p as i128, limit);
    lift.count(t, [0; 3], -residue(n, q))
        .ok_or_else(|| too_large(what(), p, t, limit))
}

/// `N_t(n) / p^(2t)` at a fixed exponent.
pub fn density_at<T: Scalar>(form: &TernaryForm<T>, n: &T, p: u64, t: u32, limit: u64) -> Result<Rational> {
    let count = count_solutions_lifted(form, n, p, t, limit)?;
    let scale = num_traits::pow(BigInt::from(p), 2 * t as usize);
    Ok(Rational::new(BigInt::from(count), scale))
}

/// The exponent at which densities are evaluated before the `t + 1` check.
pub fn sufficient_exponent<T: Scalar>(n: &T, p: u64) -> u32 {
    let pt: T = T::from_u64(p).expect("prime fits the scalar type");
    valuation(n, &pt) + if p == 2 { 5 } else { 3 }
}

pub fn local_density<T: Scalar>(form: &TernaryForm<T>, n: &T, p: u64) -> Result<LocalDensity> {
    local_density_with_limit(form, n, p, DEFAULT_WORK_LIMIT)
}

/// Density at `t = v_p(n) + 3` (`+ 5` for `p = 2`), certified by equality at `t + 1`.
pub fn local_density_with_limit<T: Scalar>(form: &TernaryForm<T>, n: &T, p: u64, limit: u64) -> Result<LocalDensity> {
    require_prime(p)?;
    if n.is_zero() {
        return Err(Error::InvalidInput("local density of 0 is not defined".into()));
    }
    let t = sufficient_exponent(n, p);
    let at_t = density_at(form, n, p, t, limit)?;
    let at_next = density_at(form, n, p, t + 1, limit)?;
    if at_t != at_next {
        return Err(Error::NotStabilized {
            t,
            at_t: at_t.to_string(),
            at_next: at_next.to_string(),
        });
    }
    Ok(LocalDensity {
        value: at_t,
        prime: p,
        exponent_used: t,
        stabilized: true,
    })
}

// ---------------------------------------------------------------------------
// Closed forms.

/// `n = m p^j` with `p ∤ m`.
fn split(mut n: u64, p: u64) -> (u64, u32) {
    let mut j = 0;
    while n % p == 0 {
        n /= p;
        j += 1;
    }
    (n, j)
}

fn inv_pow(p: u64, e: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(p), e as usize))
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Siegel's density for a prime not dividing `2Δ`.
pub fn density_formula_odd(n: u64, p: u64) -> Result<Rational> {
    require_odd_prime(p)?;
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let (m, j) = split(n, p);
    let k = j / 2;
    let base = int(1) + inv_pow(p, 1);
    Ok(if j % 2 == 0 {
        let chi = kronecker(&-(m as i128), &(p as i128));
        base + inv_pow(p, k + 1) * int(chi as i64 - 1)
    } else {
        base * (int(1) - inv_pow(p, k + 1))
    })
}

/// `Γ_p(n) = p (d_p(p² n) − d_p(n))` in closed form.
pub fn gamma_p(n: u64, p: u64) -> Result<Rational> {
    require_odd_prime(p)?;
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let (m, j) = split(n, p);
    let k = j / 2;
    let lead = int(p as i64 - 1) * inv_pow(p, k + 1);
    Ok(if j % 2 == 0 {
        let chi = kronecker(&-(m as i128), &(p as i128));
        lead * int(1 - chi as i64)
    } else {
        lead * (int(1) + inv_pow(p, 1))
    })
}

/// The 2-adic density of `x² + y² + z²` in closed form.
pub fn psi(n: u64) -> Result<PsiValue> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let mut a = 0;
    let mut k = n;
    while k % 4 == 0 {
        k /= 4;
        a += 1;
    }
    let value = match k % 8 {
        7 => int(0),
        3 => inv_pow(2, a),
        _ => int(3) * inv_pow(2, a + 1),
    };
    Ok(PsiValue {
        n,
        a,
        k_class: (k % 8) as u8,
        value,
    })
}

/// Odd primes with their multiplicities.
fn odd_prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    while n % 2 == 0 {
        n /= 2;
    }
    let mut out = Vec::new();
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The product `P(n)` over odd primes whose square divides `n`.
pub fn p_factor(n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let mut product = int(1);
    for (p, e) in odd_prime_factors(n) {
        let b = e / 2;
        if b == 0 {
            continue;
        }
        let mut factor = (0..b).map(|i| inv_pow(p, i)).fold(int(0), |acc, x| acc + x);
        let rest = n / p.pow(2 * b);
        let chi = kronecker(&-(rest as i128), &(p as i128));
        let tail = inv_pow(p, b) / (int(1) - Rational::new(BigInt::from(chi), BigInt::from(p)));
        factor += tail;
        product *= factor;
    }
    Ok(product)
}

/// `#{0 ≤ x < 2^t : x² ≡ c}` from the closed-form case table, `t ≥ 3`.
pub fn sqrt_count_mod_2t(c: u64, t: u32) -> Result<u64> {
    if !(3..=63).contains(&t) {
        return Err(Error::InvalidInput(format!("exponent {t} outside 3..=63")));
    }
    if c >= 1u64 << t {
        return Err(Error::InvalidInput(format!("{c} is not reduced modulo 2^{t}")));
    }
    let (s, delta) = ((t - 3) / 2, (t - 3) % 2);
    if c == 0 {
        return Ok(1 << (s + 1 + delta));
    }
    let v = c.trailing_zeros();
    if v % 2 == 1 {
        return Ok(0);
    }
    let m = v / 2;
    let odd = c >> v;
    Ok(if m <= s {
        if odd % 8 == 1 {
            1 << (m + 2)
        } else {
            0
        }
    } else {
        // m = s + 1: only c = 4^(s+1) itself is a square.
        if odd == 1 {
            1 << (s + 1 + delta)
        } else {
            0
        }
    })
}

/// `Σ_{y mod p} ((y² + a) | p)`, which is `-1` whenever `p ∤ a`.
pub fn character_sum_check(a: i64, p: u64) -> Result<i64> {
    require_odd_prime(p)?;
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::InvalidInput(format!("{p} divides {a}")));
    }
    let p = p as i128;
    Ok((0..p).map(|y| kronecker(&(y * y + a as i128), &p) as i64).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    type F = TernaryForm<i64>;

    fn brute(form: &F, n: i64, q: i64) -> u64 {
        let mut c = 0;
        for x in 0..q {
            for y in 0..q {
                for z in 0..q {
                    if (form.evaluate(&x, &y, &z) - n).rem_euclid(q) == 0 {
                        c += 1;
                    }
                }
            }
        }
        c
    }

    #[test]
    fn counters_match_cube_scan() {
        let forms = [
            F::sum_of_squares(),
            F::from_i64([1, 1, 3, 0, 0, 1]),
            F::from_i64([4, 3, 4, 0, 4, 0]),
            F::from_i64([-1, 0, 0, 1, 0, 0]),
            F::from_i64([-1, 0, 0, 4, 0, 0]),
            F::from_i64([3, 3, 9, 0, 0, 0]),
            F::from_i64([0, 0, 0, 2, 4, 6]),
            F::from_i64([2, 5, 7, 3, 1, 1]),
        ];
        for form in &forms {
            for (p, t) in [(2u64, 1u32), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (5, 2)] {
                let q = p.pow(t) as i64;
                for n in 0..q.min(12) {
                    let expect = brute(form, n, q);
                    assert_eq!(count_solutions_mod(form, &n, p, t).unwrap(), expect, "{form} n={n} mod {p}^{t}");
                    assert_eq!(
                        count_solutions_lifted(form, &n, p, t, DEFAULT_WORK_LIMIT).unwrap(),
                        expect as u128,
                        "lifted {form} n={n} mod {p}^{t}"
                    );
                }
            }
        }
    }

    #[test]
    fn counters_agree_at_higher_powers() {
        let form = F::from_i64([31, 5, 11, 1, -14, 6]);
        for (p, t) in [(2u64, 7u32), (3, 5), (73, 2)] {
            for n in [1i64, 3, 4, 12, 73, 146] {
                assert_eq!(
                    count_solutions_mod(&form, &n, p, t).unwrap() as u128,
                    count_solutions_lifted(&form, &n, p, t, DEFAULT_WORK_LIMIT).unwrap(),
                    "n={n} mod {p}^{t}"
                );
            }
        }
    }

    #[test]
    fn count_examples() {
        let g = F::sum_of_squares();
        assert_eq!(count_solutions_mod(&g, &3, 2, 3).unwrap(), 64);
        assert_eq!(count_solutions_mod(&g, &7, 2, 3).unwrap(), 0);
        assert_eq!(count_solutions_mod(&g, &1, 3, 1).unwrap(), 6);
        assert_eq!(count_solutions_mod(&g, &1, 3, 2).unwrap(), 54);
    }

    #[test]
    fn work_limit_is_enforced() {
        let g = F::sum_of_squares();
        assert!(matches!(count_solutions_mod(&g, &1, 11, 5), Err(Error::ResourceLimit { .. })));
        assert!(matches!(
            count_solutions_mod_with_limit(&g, &1, 3, 3, 100),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(count_solutions_mod(&g, &1, 4, 2).is_err());
    }

    #[test]
    fn density_examples() {
        let g = F::sum_of_squares();
        assert_eq!(local_density(&g, &1, 2).unwrap().value, ratio(3, 2));
        assert_eq!(local_density(&g, &3, 2).unwrap().value, ratio(1, 1));
        let d = local_density(&g, &1, 3).unwrap();
        assert_eq!(d.value, ratio(2, 3));
        assert_eq!(d.exponent_used, 3);
        assert!(d.stabilized);
        assert!(local_density(&g, &0, 3).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(density_formula_odd(1, 3).unwrap(), ratio(2, 3));
        assert_eq!(density_formula_odd(3, 3).unwrap(), ratio(8, 9));
        assert_eq!(density_formula_odd(9, 3).unwrap(), ratio(10, 9));
        assert_eq!(gamma_p(1, 3).unwrap(), ratio(4, 3));
        assert_eq!(gamma_p(3, 3).unwrap(), ratio(8, 9));
        assert_eq!(gamma_p(1, 5).unwrap(), ratio(0, 1));
        assert_eq!(psi(7).unwrap().value, ratio(0, 1));
        assert_eq!(psi(12).unwrap().value, ratio(1, 2));
        assert_eq!(psi(12).unwrap().a, 1);
        assert_eq!(psi(12).unwrap().k_class, 3);
        assert_eq!(psi(2).unwrap().value, ratio(3, 2));
        assert_eq!(p_factor(30).unwrap(), ratio(1, 1));
        assert_eq!(p_factor(4).unwrap(), ratio(1, 1));
        assert_eq!(p_factor(9).unwrap(), ratio(5, 4));
    }

    #[test]
    fn gamma_matches_its_definition() {
        for p in [3u64, 5, 7, 11] {
            for n in 1..=200u64 {
                let by_def = Rational::from_integer(BigInt::from(p))
                    * (density_formula_odd(p * p * n, p).unwrap() - density_formula_odd(n, p).unwrap());
                assert_eq!(gamma_p(n, p).unwrap(), by_def, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn p_factor_matches_three_square_ratios() {
        // For odd p and n = p^(2b) n0 with p² ∤ n0 the only change in the
        // three-square formula is √n, the L-factor at p, and P:
        // s(n) / s(n0) = p^b · E · P(n) / P(n0), E = 1 − (−n0|p)/p.
        use crate::count::s;
        for p in [3u64, 5, 7] {
            for n0 in 1..=40u64 {
                if n0 % (p * p) == 0 || s(n0) == 0 {
                    continue;
                }
                for b in 1..=2u32 {
                    let n = n0 * p.pow(2 * b);
                    let chi = if n0 % p == 0 { 0 } else { kronecker(&-(n0 as i64), &(p as i64)) };
                    let euler = int(1) - Rational::new(BigInt::from(chi), BigInt::from(p));
                    let predicted = int(p.pow(b) as i64) * euler * p_factor(n).unwrap() / p_factor(n0).unwrap();
                    assert_eq!(Rational::new(BigInt::from(s(n)), BigInt::from(s(n0))), predicted, "p={p} n0={n0} b={b}");
                }
            }
        }
    }

    #[test]
    fn sqrt_counts_match_scan() {
        assert_eq!(sqrt_count_mod_2t(1, 3).unwrap(), 4);
        assert_eq!(sqrt_count_mod_2t(3, 3).unwrap(), 0);
        assert_eq!(sqrt_count_mod_2t(4, 4).unwrap(), 4);
        for t in 3..=12u32 {
            let q = 1u64 << t;
            let mut table = vec![0u64; q as usize];
            for x in 0..q {
                table[(x * x % q) as usize] += 1;
            }
            for c in 0..q {
                assert_eq!(sqrt_count_mod_2t(c, t).unwrap(), table[c as usize], "c={c} t={t}");
            }
        }
    }

    #[test]
    fn character_sums() {
        assert_eq!(character_sum_check(1, 3).unwrap(), -1);
        assert_eq!(character_sum_check(2, 5).unwrap(), -1);
        assert_eq!(character_sum_check(1, 13).unwrap(), -1);
        for p in [3u64, 5, 7, 11, 13, 73] {
            for a in 1..(p as i64) {
                assert_eq!(character_sum_check(a, p).unwrap(), -1);
            }
        }
        assert!(character_sum_check(3, 3).is_err());
    }
}
