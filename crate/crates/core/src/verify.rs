//! Exact checks of the three-squares identities and the property suites behind them.
//!
//! Identities compare `s(p²n) − p s(n)` with a weighted sum of representation
//! numbers for every `1 ≤ n ≤ n_max`. Suites collect failures as report entries
//! instead of stopping at the first one.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::count::{theta, three_square_counts};
use crate::error::{Error, Result};
use crate::form::TernaryForm;
use crate::genus::{genus_pair, mass_closed_form, GenusCache, GenusSet};
use crate::isometry::{automorphs, equivalent};
use crate::local::{density_formula_odd, gamma_p, local_density, psi, sqrt_count_mod_2t};
use crate::rational::{fraction_string, ratio, Rational};
use crate::reduce::canonical;
use crate::watson::{lambda_m, phi, phi_inverse, transport_automorph};

type F = TernaryForm<i64>;

/// One `n` at which the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: u64,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub p: u64,
    pub n_max: u64,
    pub failures: Vec<Mismatch>,
    pub pass: bool,
}

/// A named family of exact checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub failures: Vec<String>,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.into(),
            cases: 0,
            failures: Vec::new(),
            pass: true,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
            self.pass = false;
        }
    }

    /// Records `Ok(true)` as a pass; `Ok(false)` and errors as failures.
    fn check_result(&mut self, outcome: Result<bool>, what: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.check(ok, what),
            Err(e) => self.check(false, || format!("{}: {e}", what())),
        }
    }

    fn merge(mut self, other: SuiteReport) -> Self {
        self.cases += other.cases;
        self.pass &= other.pass;
        self.failures.extend(other.failures);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullReport {
    pub identities: Vec<IdentityReport>,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

/// Checks `s(p²n) − p s(n) = Σ w_f R_f(n)` for `1 ≤ n ≤ n_max`.
pub fn check_identity(identity: &str, p: u64, n_max: u64, terms: &[(Rational, F)]) -> Result<IdentityReport> {
    if n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let p2 = p.checked_mul(p).ok_or_else(|| Error::InvalidInput(format!("p = {p} is too large")))?;
    let scaled: Vec<u64> = (1..=n_max)
        .map(|n| n.checked_mul(p2))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidInput(format!("{p}² · {n_max} overflows")))?;
    let plain: Vec<u64> = (1..=n_max).collect();
    let (s_scaled, s_plain) = rayon::join(|| three_square_counts(&scaled), || three_square_counts(&plain));
    let thetas = terms
        .par_iter()
        .map(|(_, f)| theta(f, n_max))
        .collect::<Result<Vec<_>>>()?;

    let mut failures = Vec::new();
    for n in 1..=n_max {
        let i = (n - 1) as usize;
        let lhs = s_scaled[i] as i64 - p as i64 * s_plain[i] as i64;
        let rhs = terms
            .iter()
            .zip(&thetas)
            .map(|((w, _), th)| w * Rational::from_integer(BigInt::from(th.get(n as i64))))
            .fold(Rational::zero(), |a, b| a + b);
        if !rhs.is_integer() {
            return Err(Error::Inconsistent(format!("{identity}: right side {rhs} at n = {n} is not an integer")));
        }
        let rhs = rhs
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::Inconsistent(format!("{identity}: right side at n = {n} overflows")))?;
        // Both s(p²n) and s(n) vanish for n ≡ 7 (mod 8), so the weighted sums must cancel.
        if lhs != rhs || (n % 8 == 7 && lhs != 0) {
            failures.push(Mismatch { n, lhs, rhs });
        }
    }
    Ok(IdentityReport {
        identity: identity.into(),
        p,
        n_max,
        pass: failures.is_empty(),
        failures,
    })
}

fn weighted(w: i64, coeffs: [i64; 6]) -> (Rational, F) {
    (ratio(w, 1), F::from_i64(coeffs))
}

/// `s(9n) − 3s(n) = 2R⟨1,1,3,0,0,1⟩(n) − 4R⟨4,3,4,0,4,0⟩(n)`.
pub fn verify_theorem_1_1(n_max: u64) -> Result<IdentityReport> {
    let terms = [weighted(2, [1, 1, 3, 0, 0, 1]), weighted(-4, [4, 3, 4, 0, 4, 0])];
    check_identity("thm1.1", 3, n_max, &terms)
}

/// `s(25n) − 5s(n) = 4R⟨2,2,2,−1,1,1⟩(n) − 8R⟨7,8,8,−4,8,8⟩(n)`.
pub fn verify_theorem_1_2(n_max: u64) -> Result<IdentityReport> {
    let terms = [weighted(4, [2, 2, 2, -1, 1, 1]), weighted(-8, [7, 8, 8, -4, 8, 8])];
    check_identity("thm1.2", 5, n_max, &terms)
}

/// The general identity with weights `48/|Aut|` on `TG1(p)` and `−96/|Aut|` on `TG2(p)`.
pub fn verify_theorem_1_3(p: u64, n_max: u64, cache: Option<&GenusCache>) -> Result<IdentityReport> {
    let (tg1, tg2) = genus_pair::<i64>(p, cache)?;
    check_identity("thm1.3", p, n_max, &identity_terms(&tg1, &tg2))
}

/// `(48/|Aut f|, f)` over `TG1` followed by `(−96/|Aut f|, f)` over `TG2`.
pub fn identity_terms(tg1: &GenusSet<i64>, tg2: &GenusSet<i64>) -> Vec<(Rational, F)> {
    let term = |w: i64, c: &crate::genus::GenusClass<i64>| (ratio(w, c.aut as i64), c.form.clone());
    tg1.classes
        .iter()
        .map(|c| term(48, c))
        .chain(tg2.classes.iter().map(|c| term(-96, c)))
        .collect()
}

/// The forms `h₁..h₄` of `TG1(73)`.
pub const TG1_73: [[i64; 6]; 4] = [
    [31, 5, 11, 1, -14, 6],
    [15, 14, 10, 7, 4, 16],
    [11, 7, 20, 7, 2, 4],
    [7, 11, 21, 11, 2, 4],
];

/// The forms `g₁..g₄` of `TG2(73)`, `g_i = Φ(h_i)`.
pub const TG2_73: [[i64; 6]; 4] = [
    [31, 20, 44, 4, -28, 12],
    [15, 56, 40, 28, 8, 32],
    [11, 28, 80, 28, 4, 8],
    [7, 44, 84, 44, 4, 8],
];

/// The explicit `p = 73` expansion with coefficients `24, 24, 12, 12, −48, −48, −24, −24`.
pub fn verify_tg73_expansion(n_max: u64) -> Result<IdentityReport> {
    let weights = [24, 24, 12, 12, -48, -48, -24, -24];
    let terms: Vec<_> = TG1_73
        .iter()
        .chain(&TG2_73)
        .zip(weights)
        .map(|(c, w)| weighted(w, *c))
        .collect();
    check_identity("tg73", 73, n_max, &terms)
}

// ---------------------------------------------------------------------------
// Density suites.

fn sos() -> F {
    F::sum_of_squares()
}

fn density(form: &F, n: u64, p: u64) -> Result<Rational> {
    Ok(local_density(form, &(n as i64), p)?.value)
}

/// A copy of a result computed once and read several times.
fn shared<T: Clone>(r: &Result<T>) -> Result<T> {
    match r {
        Ok(v) => Ok(v.clone()),
        Err(e) => Err(Error::Inconsistent(e.to_string())),
    }
}

fn show(r: &Rational) -> String {
    fraction_string(r)
}

/// Odd-prime densities of `x² + y² + z²` against the closed form.
fn suite_odd_formula() -> SuiteReport {
    let cases: Vec<(u64, u64)> = [3u64, 5, 7, 11].iter().flat_map(|&p| (1..=200).map(move |n| (p, n))).collect();
    let results: Vec<_> = cases
        .par_iter()
        .map(|&(p, n)| (p, n, density(&sos(), n, p), density_formula_odd(n, p)))
        .collect();
    let mut r = SuiteReport::new("density-odd");
    for (p, n, got, want) in results {
        r.check_result(
            got.and_then(|g| Ok(g == want?)),
            || format!("p={p} n={n}"),
        );
    }
    r
}

/// The 2-adic density of `x² + y² + z²`: equal to `ψ`, the case table, and halving under `n ↦ 4n`.
fn suite_two_adic() -> Vec<SuiteReport> {
    let values: Vec<(u64, Result<Rational>)> = (1..=1024u64).into_par_iter().map(|n| (n, density(&sos(), n, 2))).collect();
    let d = |n: u64| shared(&values[(n - 1) as usize].1);
    let mut psi_match = SuiteReport::new("density-2-psi");
    let mut psi_table = SuiteReport::new("psi-table");
    let mut cases = SuiteReport::new("density-2-cases");
    for n in 1..=256u64 {
        psi_match.check_result(
            d(n).and_then(|v| Ok(v == psi(n)?.value)),
            || format!("n={n}"),
        );
        let k = {
            let mut k = n;
            while k % 4 == 0 {
                k /= 4;
            }
            k
        };
        let a = (n / k).trailing_zeros() / 2;
        let table = match k % 8 {
            7 => ratio(0, 1),
            3 => ratio(1, 1 << a),
            _ => ratio(3, 1 << (a + 1)),
        };
        psi_table.check_result(psi(n).map(|v| v.value == table), || format!("n={n}"));
        let base = match n % 8 {
            7 => Some(ratio(0, 1)),
            3 => Some(ratio(1, 1)),
            1 | 2 | 5 | 6 => Some(ratio(3, 2)),
            _ => None,
        };
        if let Some(want) = base {
            cases.check_result(d(n).map(|v| v == want), || format!("n={n}"));
        }
        cases.check_result(
            d(4 * n).and_then(|v4| Ok(v4 * ratio(2, 1) == d(n)?)),
            || format!("d(4n) = d(n)/2 at n={n}"),
        );
    }
    vec![psi_match, psi_table, cases]
}

/// `Γ_p(n) = p (d_p(p²n) − d_p(n))` against its closed form.
fn suite_gamma() -> SuiteReport {
    let cases: Vec<(u64, u64)> = [3u64, 5, 7].iter().flat_map(|&p| (1..=100).map(move |n| (p, n))).collect();
    let results: Vec<_> = cases
        .par_iter()
        .map(|&(p, n)| {
            let outcome = (|| {
                let lhs = ratio(p as i64, 1) * (density(&sos(), p * p * n, p)? - density(&sos(), n, p)?);
                Ok(lhs == gamma_p(n, p)?)
            })();
            (p, n, outcome)
        })
        .collect();
    let mut r = SuiteReport::new("gamma-closed-form");
    for (p, n, outcome) in results {
        r.check_result(outcome, || format!("p={p} n={n}"));
    }
    r
}

/// Densities of `⟨u, p, pu, 0, 0, 0⟩` at `p` equal `p/(p − 1) Γ_p(n)`.
fn suite_ramified() -> SuiteReport {
    let cases: Vec<(u64, i64, u64)> = [(3u64, 1i64), (5, 2), (7, 1)]
        .iter()
        .flat_map(|&(p, u)| (1..=150).map(move |n| (p, u, n)))
        .collect();
    let results: Vec<_> = cases
        .par_iter()
        .map(|&(p, u, n)| {
            let pi = p as i64;
            let form = F::from_i64([u, pi, pi * u, 0, 0, 0]);
            let outcome = (|| Ok(density(&form, n, p)? == ratio(pi, pi - 1) * gamma_p(n, p)?))();
            (p, n, outcome)
        })
        .collect();
    let mut r = SuiteReport::new("density-ramified");
    for (p, n, outcome) in results {
        r.check_result(outcome, || format!("p={p} n={n}"));
    }
    r
}

/// 2-adic densities of `yz − x²` and `4yz − x²`: closed forms, recurrences and initial values.
fn suite_two_adic_models() -> Vec<SuiteReport> {
    let g1 = F::from_i64([-1, 0, 0, 1, 0, 0]);
    let g2 = F::from_i64([-1, 0, 0, 4, 0, 0]);
    let rows: Vec<_> = (1..=256u64)
        .into_par_iter()
        .map(|n| (n, density(&g1, n, 2), density(&g2, n, 2), density(&g2, 4 * n, 2)))
        .collect();
    let mut model1 = SuiteReport::new("density-yz-x2");
    let mut model2 = SuiteReport::new("density-4yz-x2");
    let mut psi_diff = SuiteReport::new("psi-difference");
    let mut rec_4n = SuiteReport::new("recurrence-4n");
    let mut rec_linear = SuiteReport::new("recurrence-linear");
    let mut start = SuiteReport::new("initial-values");
    for (n, d1, d2, d2_4n) in rows {
        let label = || format!("n={n}");
        let (d1, d2, d2_4n) = match (d1, d2, d2_4n) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            (a, b, c) => {
                let err = [a.err(), b.err(), c.err()].into_iter().flatten().next().expect("one side failed");
                for s in [&mut model1, &mut model2, &mut psi_diff, &mut rec_4n, &mut rec_linear] {
                    s.check(false, || format!("n={n}: {err}"));
                }
                continue;
            }
        };
        let mut k = n;
        let mut a = 0u32;
        while k % 4 == 0 {
            k /= 4;
            a += 1;
        }
        let half_pow = |e: i64| -> Rational {
            if e >= 0 {
                ratio(1, 1 << e)
            } else {
                ratio(1 << -e, 1)
            }
        };
        let a = a as i64;
        let (want1, want2) = match k % 8 {
            7 => (ratio(3, 2), ratio(3, 1)),
            3 => (ratio(3, 2) - half_pow(a + 1), ratio(3, 1) - half_pow(a - 1)),
            _ => (ratio(3, 2) - ratio(3, 1) * half_pow(a + 2), ratio(3, 1) - ratio(3, 1) * half_pow(a)),
        };
        model1.check(d1 == want1, || format!("{} got {}", label(), show(&d1)));
        model2.check(d2 == want2, || format!("{} got {}", label(), show(&d2)));
        psi_diff.check_result(
            psi(n).map(|v| v.value == ratio(2, 1) * &d1 - &d2),
            label,
        );
        rec_4n.check(ratio(2, 1) * &d1 == d2_4n, label);
        rec_linear.check(ratio(4, 1) * &d1 - &d2 == ratio(3, 1), label);
        let initial = match n % 8 {
            7 => Some(ratio(3, 1)),
            3 => Some(ratio(1, 1)),
            1 | 2 | 5 | 6 => Some(ratio(0, 1)),
            _ => None,
        };
        if let Some(want) = initial {
            start.check(d2 == want, label);
        }
    }
    vec![model1, model2, psi_diff, rec_4n, rec_linear, start]
}

/// The square-root count table modulo `2^t` against a scan, with its odd case.
fn suite_square_roots() -> SuiteReport {
    let mut r = SuiteReport::new("sqrt-mod-2t");
    for t in 3..=12u32 {
        let q = 1u64 << t;
        let mut scan = vec![0u64; q as usize];
        for x in 0..q {
            scan[(x * x % q) as usize] += 1;
        }
        for c in 0..q {
            r.check_result(sqrt_count_mod_2t(c, t).map(|v| v == scan[c as usize]), || format!("t={t} c={c}"));
            if c % 2 == 1 {
                let want = if c % 8 == 1 { 4 } else { 0 };
                r.check(scan[c as usize] == want, || format!("odd root count t={t} c={c}"));
            }
        }
    }
    r
}

/// Every local-density suite.
pub fn verify_density_theorems() -> Vec<SuiteReport> {
    let mut out = vec![suite_odd_formula()];
    out.extend(suite_two_adic());
    out.push(suite_gamma());
    out.push(suite_ramified());
    out.extend(suite_two_adic_models());
    out.push(suite_square_roots());
    out
}

// ---------------------------------------------------------------------------
// Genus and Watson suites.

/// Primes whose genera the genus and Watson suites cover.
pub const TEST_PRIMES: [u64; 9] = [3, 5, 7, 11, 13, 17, 19, 23, 73];

/// `mass(TG1) = (p − 1)/48` by enumeration and `mass(TG2) = mass(TG1)`.
pub fn verify_masses(primes: &[u64], cache: Option<&GenusCache>) -> SuiteReport {
    let mut r = SuiteReport::new("mass");
    for &p in primes {
        r.check_result(
            genus_pair::<i64>(p, cache).map(|(tg1, tg2)| tg1.mass == mass_closed_form(p) && tg2.mass == tg1.mass),
            || format!("p={p}"),
        );
    }
    r
}

/// `TG1(73)` has four classes matching `h₁..h₄` by verified witnesses, with orders `{2,2,4,4}` and mass `3/2`.
pub fn verify_tg73_structure(cache: Option<&GenusCache>) -> SuiteReport {
    let mut r = SuiteReport::new("tg1-73");
    let (tg1, tg2) = match genus_pair::<i64>(73, cache) {
        Ok(pair) => pair,
        Err(e) => {
            r.check(false, || format!("enumeration: {e}"));
            return r;
        }
    };
    for (set, named) in [(&tg1, &TG1_73), (&tg2, &TG2_73)] {
        r.check(set.classes.len() == 4, || format!("{} has {} classes", set.label, set.classes.len()));
        let mut orders: Vec<usize> = set.classes.iter().map(|c| c.aut).collect();
        orders.sort_unstable();
        r.check(orders == [2, 2, 4, 4], || format!("{} automorph orders {orders:?}", set.label));
        r.check(set.mass == ratio(3, 2), || format!("{} mass {}", set.label, show(&set.mass)));
        for (i, coeffs) in named.iter().enumerate() {
            let form = F::from_i64(*coeffs);
            let matched = set.classes.iter().any(|c| {
                matches!(equivalent(&form, &c.form), Ok(Some(w)) if form.apply_map(&w) == c.form)
            });
            r.check(matched, || format!("{} has no class equivalent to {form} (index {})", set.label, i + 1));
        }
    }
    r
}

/// `λ₄` is an involution on classes, agrees with `Φ`, scales representation
/// numbers by 4, and transports automorphs bijectively.
pub fn verify_watson(primes: &[u64], cache: Option<&GenusCache>) -> Vec<SuiteReport> {
    let mut missing = SuiteReport::new("watson-genera");
    let mut classes: Vec<(u64, F)> = Vec::new();
    for &p in primes {
        match genus_pair::<i64>(p, cache) {
            Ok((tg1, _)) => {
                missing.check(true, String::new);
                classes.extend(tg1.classes.into_iter().map(|c| (p, c.form)));
            }
            Err(e) => missing.check(false, || format!("p={p}: {e}")),
        }
    }
    let four = 4i64;
    let per_class: Vec<[SuiteReport; 5]> = classes
        .par_iter()
        .map(|(p, g)| {
            let label = || format!("p={p} {g}");
            let mut involution = SuiteReport::new("lambda4-involution");
            let mut agree = SuiteReport::new("phi-lambda4");
            let mut inverse = SuiteReport::new("phi-inverse");
            let mut scaling = SuiteReport::new("rep-scaling");
            let mut transport = SuiteReport::new("automorph-transport");
            let phi_g = phi(g);
            let image = || shared(&phi_g);
            involution.check_result(
                lambda_m(g, &four).and_then(|l| Ok(lambda_m(&l, &four)? == canonical(g)?)),
                label,
            );
            agree.check_result(
                image().and_then(|im| Ok(lambda_m(g, &four)? == im)),
                label,
            );
            inverse.check_result(
                image().and_then(|im| Ok(phi_inverse(&im)? == canonical(g)?)),
                label,
            );
            scaling.check_result(
                image().and_then(|im| {
                    let (small, large) = (theta(g, 300)?, theta(&im, 1200)?);
                    Ok((0..=300).all(|n| small.get(n) == large.get(4 * n)))
                }),
                label,
            );
            transport.check_result(image().and_then(|im| transport_is_bijective(g, &im)), label);
            [involution, agree, inverse, scaling, transport]
        })
        .collect();
    let mut totals = [
        SuiteReport::new("lambda4-involution"),
        SuiteReport::new("phi-lambda4"),
        SuiteReport::new("phi-inverse"),
        SuiteReport::new("rep-scaling"),
        SuiteReport::new("automorph-transport"),
    ];
    for reports in per_class {
        for (total, r) in totals.iter_mut().zip(reports) {
            *total = std::mem::replace(total, SuiteReport::new("")).merge(r);
        }
    }
    let mut out = vec![missing];
    out.extend(totals);
    out
}

/// Whether `r ↦ N r M / 4` maps `Aut(g)` one-to-one onto `Aut(image)`.
fn transport_is_bijective(g: &F, image: &F) -> Result<bool> {
    let source = automorphs(g)?;
    let target = automorphs(image)?;
    if source.order != target.order {
        return Ok(false);
    }
    let mut hits = vec![false; target.order];
    for r in &source.elements {
        let s = transport_automorph(g, image, &4, r)?;
        match target.elements.binary_search(&s) {
            Ok(i) if !hits[i] => hits[i] = true,
            _ => return Ok(false),
        }
    }
    Ok(hits.iter().all(|&h| h))
}

/// No class of `TG2` represents `1` or `2 (mod 4)`.
pub fn verify_tg2_residues(primes: &[u64], cache: Option<&GenusCache>) -> SuiteReport {
    let mut r = SuiteReport::new("tg2-residues");
    for &p in primes {
        r.check_result(
            genus_pair::<i64>(p, cache).and_then(|(_, tg2)| {
                let bound = 200;
                for c in &tg2.classes {
                    let th = theta(&c.form, bound)?;
                    if (1..=bound as i64).any(|n| matches!(n % 4, 1 | 2) && th.get(n) != 0) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }),
            || format!("p={p}"),
        );
    }
    r
}

/// Everything: the identities at their acceptance ranges and every suite.
pub fn verify_all(cache: Option<&GenusCache>) -> Result<FullReport> {
    let mut identities = vec![verify_theorem_1_1(1000)?, verify_theorem_1_2(1000)?];
    for p in [3, 5, 7, 11, 13] {
        identities.push(verify_theorem_1_3(p, 500, cache)?);
    }
    identities.push(verify_theorem_1_3(73, 200, cache)?);
    identities.push(verify_tg73_expansion(200)?);

    let mut suites = vec![verify_masses(&TEST_PRIMES, cache), verify_tg73_structure(cache)];
    suites.push(verify_tg2_residues(&TEST_PRIMES, cache));
    suites.extend(verify_watson(&TEST_PRIMES, cache));
    suites.extend(verify_density_theorems());

    let pass = identities.iter().all(|r| r.pass) && suites.iter().all(|s| s.pass);
    Ok(FullReport { identities, suites, pass })
}

/// The coefficient `48/|Aut|` (or `−96/|Aut|`) of every class, as in the identity for `p`.
pub fn identity_coefficients(p: u64, cache: Option<&GenusCache>) -> Result<Vec<(F, Rational)>> {
    let (tg1, tg2) = genus_pair::<i64>(p, cache)?;
    Ok(identity_terms(&tg1, &tg2).into_iter().map(|(w, f)| (f, w)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_identities() {
        let r = verify_theorem_1_1(100).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.identity, "thm1.1");
        let r = verify_theorem_1_2(100).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(verify_theorem_1_3(7, 100, None).unwrap().pass);
    }

    #[test]
    fn first_values() {
        // s(9) − 3 s(1) = 30 − 18 = 12 = 2·6 − 4·0.
        assert_eq!(crate::count::s(9), 30);
        assert_eq!(crate::count::s(25), 30);
        let terms = [weighted(2, [1, 1, 3, 0, 0, 1]), weighted(-4, [4, 3, 4, 0, 4, 0])];
        assert!(check_identity("thm1.1", 3, 1, &terms).unwrap().pass);
    }

    #[test]
    fn wrong_weights_are_reported() {
        let terms = [weighted(2, [1, 1, 3, 0, 0, 1]), weighted(-2, [4, 3, 4, 0, 4, 0])];
        let r = check_identity("bad", 3, 30, &terms).unwrap();
        assert!(!r.pass);
        assert!(r.failures.iter().all(|m| m.lhs != m.rhs));
    }

    #[test]
    fn non_integral_right_side_is_an_error() {
        let terms = [(ratio(1, 7), F::from_i64([1, 1, 3, 0, 0, 1]))];
        assert!(matches!(check_identity("bad", 3, 5, &terms), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn report_json() {
        let r = verify_theorem_1_3(3, 10, None).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"identity":"thm1.3","p":3,"n_max":10,"failures":[],"pass":true}"#
        );
    }

    #[test]
    fn coefficient_pattern_for_73() {
        let coeffs = identity_coefficients(73, None).unwrap();
        let mut weights: Vec<Rational> = coeffs.into_iter().map(|(_, w)| w).collect();
        weights.sort();
        let want: Vec<Rational> = [-48, -48, -24, -24, 12, 12, 24, 24].iter().map(|&w| ratio(w, 1)).collect();
        assert_eq!(weights, want);
    }

    #[test]
    fn suites_on_a_small_prime() {
        assert!(verify_masses(&[3, 5, 7], None).pass);
        for s in verify_watson(&[5, 11], None) {
            assert!(s.pass, "{s:?}");
        }
        assert!(verify_tg2_residues(&[3, 11], None).pass);
        assert!(suite_square_roots().pass);
    }
}
