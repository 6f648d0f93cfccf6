//! The genera `TG1(p)` (discriminant `p²`) and `TG2(p)` (discriminant `16p²`).
//!
//! `TG1` is enumerated over reduced sextuples and certified complete by its mass,
//! which must equal `(p − 1)/48`. `TG2` is built as the image of `TG1` under `Φ`.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::count::rep_count;
use crate::error::{Error, Result};
use crate::form::TernaryForm;
use crate::isometry::automorphs;
use crate::rational::{fraction_string, parse_fraction, Rational};
use crate::reduce::canonical;
use crate::scalar::{exact_sqrt, int, is_prime, Scalar};
use crate::watson::phi;

/// Largest prime accepted by [`enumerate_tg1`].
pub const DEFAULT_MAX_PRIME: u64 = 97;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GenusLabel {
    TG1,
    TG2,
}

impl fmt::Display for GenusLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenusLabel::TG1 => "TG1",
            GenusLabel::TG2 => "TG2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusClass<T> {
    /// Canonical representative.
    pub form: TernaryForm<T>,
    pub aut: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusSet<T> {
    pub label: GenusLabel,
    pub prime: u64,
    /// Sorted by coefficients.
    pub classes: Vec<GenusClass<T>>,
    pub mass: Rational,
}

impl<T: Scalar> GenusSet<T> {
    pub fn discriminant(&self) -> T {
        let p: T = T::from_u64(self.prime).expect("prime fits the scalar type");
        let base = p.clone() * p;
        match self.label {
            GenusLabel::TG1 => base,
            GenusLabel::TG2 => int::<T>(16) * base,
        }
    }
}

fn mass_of<T>(classes: &[GenusClass<T>]) -> Rational {
    classes
        .iter()
        .map(|c| Rational::new(BigInt::from(1), BigInt::from(c.aut)))
        .fold(Rational::zero(), |a, b| a + b)
}

/// `(p − 1)/48`.
pub fn mass_closed_form(p: u64) -> Rational {
    Rational::new(BigInt::from(p) - 1, BigInt::from(48))
}

fn require_odd_prime(p: u64, max_p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    if p > max_p {
        return Err(Error::InvalidInput(format!("p = {p} exceeds the configured bound {max_p}")));
    }
    Ok(())
}

/// Reduced sextuples `0 < a ≤ b ≤ c`, `|e|, |f| ≤ a`, `|d| ≤ b`, `abc ≤ Δ` with
/// the given discriminant. `d` is solved from `a d² − ef d + (Δ − 4abc + be² + cf²) = 0`.
fn reduced_candidates<T: Scalar>(disc: &T) -> Vec<TernaryForm<T>> {
    let four: T = int(4);
    let mut tops = Vec::new();
    let mut a = T::one();
    while a.clone() * a.clone() * a.clone() <= *disc {
        tops.push(a.clone());
        a = a + T::one();
    }
    tops.par_iter()
        .flat_map_iter(|a| {
            let mut out = Vec::new();
            let mut b = a.clone();
            while a.clone() * b.clone() * b.clone() <= *disc {
                let mut c = b.clone();
                while a.clone() * b.clone() * c.clone() <= *disc {
                    let mut e = -a.clone();
                    while e <= *a {
                        let mut f = -a.clone();
                        while f <= *a {
                            let lin = e.clone() * f.clone();
                            let cst = disc.clone() - four.clone() * a.clone() * b.clone() * c.clone()
                                + b.clone() * e.clone() * e.clone()
                                + c.clone() * f.clone() * f.clone();
                            let dd = lin.clone() * lin.clone() - four.clone() * a.clone() * cst;
                            if let Some(s) = exact_sqrt(&dd) {
                                let two_a = int::<T>(2) * a.clone();
                                let mut roots = vec![lin.clone() - s.clone(), lin.clone() + s];
                                roots.dedup();
                                for num in roots {
                                    if num.is_multiple_of(&two_a) {
                                        let d = num / two_a.clone();
                                        if d.abs() <= b {
                                            out.push(TernaryForm::new(a.clone(), b.clone(), c.clone(), d, e.clone(), f.clone()));
                                        }
                                    }
                                }
                            }
                            f = f + T::one();
                        }
                        e = e + T::one();
                    }
                    c = c + T::one();
                }
                b = b + T::one();
            }
            out
        })
        .collect()
}

/// Canonical representatives of the distinct classes among `forms`, sorted, with automorph orders.
fn classes_of<T: Scalar>(forms: Vec<TernaryForm<T>>) -> Result<Vec<GenusClass<T>>> {
    let reps: Vec<TernaryForm<T>> = forms.par_iter().map(canonical).collect::<Result<_>>()?;
    let unique: BTreeMap<[T; 6], TernaryForm<T>> = reps.into_iter().map(|r| (r.coeffs(), r)).collect();
    unique
        .into_values()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|form| {
            Ok(GenusClass {
                aut: automorphs(form)?.order,
                form: form.clone(),
            })
        })
        .collect()
}

pub fn enumerate_tg1<T: Scalar>(p: u64) -> Result<GenusSet<T>> {
    enumerate_tg1_bounded(p, DEFAULT_MAX_PRIME)
}

/// Every class of positive primitive forms of discriminant `p²`, certified by mass.
pub fn enumerate_tg1_bounded<T: Scalar>(p: u64, max_p: u64) -> Result<GenusSet<T>> {
    require_odd_prime(p, max_p)?;
    let pt: T = T::from_u64(p).ok_or_else(|| Error::InvalidInput(format!("p = {p} does not fit")))?;
    let disc = pt.clone() * pt;
    let forms: Vec<TernaryForm<T>> = reduced_candidates(&disc)
        .into_iter()
        .filter(|g| g.is_positive_definite() && g.is_primitive())
        .collect();
    let classes = classes_of(forms)?;
    let mass = mass_of(&classes);
    let expected = mass_closed_form(p);
    if mass != expected {
        return Err(Error::Incomplete {
            label: "TG1".into(),
            p,
            found: fraction_string(&mass),
            expected: fraction_string(&expected),
        });
    }
    Ok(GenusSet {
        label: GenusLabel::TG1,
        prime: p,
        classes,
        mass,
    })
}

/// The image of `TG1(p)` under `Φ`, with automorph orders checked class by class.
pub fn build_tg2<T: Scalar>(tg1: &GenusSet<T>) -> Result<GenusSet<T>> {
    if tg1.label != GenusLabel::TG1 {
        return Err(Error::InvalidInput(format!("expected a TG1 genus, got {}", tg1.label)));
    }
    let images: Vec<GenusClass<T>> = tg1
        .classes
        .par_iter()
        .map(|class| {
            let image = phi(&class.form)?;
            let aut = automorphs(&image)?.order;
            if aut != class.aut {
                return Err(Error::Inconsistent(format!(
                    "Φ({}) = {} has {} automorphs, preimage has {}",
                    class.form, image, aut, class.aut
                )));
            }
            Ok(GenusClass { form: image, aut })
        })
        .collect::<Result<_>>()?;
    let mut classes = images;
    classes.sort_by_key(|c| c.form.coeffs());
    if classes.windows(2).any(|w| w[0].form == w[1].form) {
        return Err(Error::Inconsistent(format!("Φ is not injective on TG1({})", tg1.prime)));
    }
    let mass = mass_of(&classes);
    if mass != tg1.mass {
        return Err(Error::Inconsistent(format!("TG2 mass {mass} differs from TG1 mass {}", tg1.mass)));
    }
    Ok(GenusSet {
        label: GenusLabel::TG2,
        prime: tg1.prime,
        classes,
        mass,
    })
}

/// `Σ R_f(n) / |Aut(f)|` over the classes.
pub fn weighted_rep_sum<T: Scalar>(genus: &GenusSet<T>, n: &T) -> Result<Rational> {
    if n.is_negative() {
        return Err(Error::InvalidInput(format!("n = {n} is negative")));
    }
    let mut total = Rational::zero();
    for class in &genus.classes {
        let r = rep_count(&class.form, n)?;
        total += Rational::new(BigInt::from(r), BigInt::from(class.aut));
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Cache.

#[derive(Serialize, Deserialize)]
struct CachedClass {
    coeffs: Vec<serde_json::Number>,
    aut: usize,
}

#[derive(Serialize, Deserialize)]
struct CachedGenus {
    v: u32,
    label: GenusLabel,
    p: u64,
    classes: Vec<CachedClass>,
    mass: String,
}

const CACHE_VERSION: u32 = 1;

/// A directory holding one `<label>_<p>.json` file per genus.
#[derive(Clone, Debug)]
pub struct GenusCache {
    dir: PathBuf,
}

impl GenusCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GenusCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, label: GenusLabel, p: u64) -> PathBuf {
        self.dir.join(format!("{label}_{p}.json"))
    }

    /// A cached genus, validated against its stored invariants; `None` if absent.
    pub fn load<T: Scalar>(&self, label: GenusLabel, p: u64) -> Result<Option<GenusSet<T>>> {
        let path = self.path(label, p);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let bad = |msg: String| Error::Cache(format!("{}: {msg}", path.display()));
        let raw: CachedGenus = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
        if raw.v != CACHE_VERSION || raw.label != label || raw.p != p {
            return Err(bad(format!("header v={} label={} p={} does not match", raw.v, raw.label, raw.p)));
        }
        let mut classes = Vec::with_capacity(raw.classes.len());
        for c in &raw.classes {
            let coeffs: Vec<T> = c
                .coeffs
                .iter()
                .map(|n| crate::form::parse_json_number(n).ok_or_else(|| bad(format!("bad coefficient {n}"))))
                .collect::<Result<_>>()?;
            let coeffs: [T; 6] = coeffs.try_into().map_err(|_| bad("expected six coefficients".into()))?;
            classes.push(GenusClass {
                form: TernaryForm::from_coeffs(coeffs),
                aut: c.aut,
            });
        }
        let set = GenusSet {
            label,
            prime: p,
            mass: parse_fraction(&raw.mass).ok_or_else(|| bad(format!("bad mass {}", raw.mass)))?,
            classes,
        };
        let disc = set.discriminant();
        for c in &set.classes {
            if c.form.discriminant() != disc || !c.form.is_positive_definite() || !c.form.is_primitive() || c.aut == 0 {
                return Err(bad(format!("class {} is not valid for {label}({p})", c.form)));
            }
        }
        if set.mass != mass_of(&set.classes) || set.mass != mass_closed_form(p) {
            return Err(bad(format!("mass {} fails the certificate", raw.mass)));
        }
        Ok(Some(set))
    }

    /// Writes atomically through a temporary file in the same directory.
    pub fn store<T: Scalar>(&self, set: &GenusSet<T>) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let raw = CachedGenus {
            v: CACHE_VERSION,
            label: set.label,
            p: set.prime,
            classes: set
                .classes
                .iter()
                .map(|c| CachedClass {
                    coeffs: c.form.coeffs().iter().map(crate::form::json_number).collect(),
                    aut: c.aut,
                })
                .collect(),
            mass: fraction_string(&set.mass),
        };
        let text = serde_json::to_string(&raw).map_err(|e| Error::Cache(e.to_string()))?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.flush()?;
        tmp.persist(self.path(set.label, set.prime)).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }
}

/// `TG1(p)` and `TG2(p)`, read from and written to `cache` when given.
pub fn genus_pair<T: Scalar>(p: u64, cache: Option<&GenusCache>) -> Result<(GenusSet<T>, GenusSet<T>)> {
    let tg1 = match cache.map(|c| c.load(GenusLabel::TG1, p)).transpose()?.flatten() {
        Some(set) => set,
        None => {
            let set = enumerate_tg1(p)?;
            if let Some(c) = cache {
                c.store(&set)?;
            }
            set
        }
    };
    let tg2 = match cache.map(|c| c.load(GenusLabel::TG2, p)).transpose()?.flatten() {
        Some(set) => set,
        None => {
            let set = build_tg2(&tg1)?;
            if let Some(c) = cache {
                c.store(&set)?;
            }
            set
        }
    };
    Ok((tg1, tg2))
}
