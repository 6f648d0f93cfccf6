//! Subcommand bodies. Each returns its JSON and TSV renderings.

use std::fmt::{Display, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Number, Value};
use ternary::form::TernaryForm;
use ternary::genus::{genus_pair, mass_closed_form, GenusCache, GenusSet};
use ternary::rational::fraction_string;
use ternary::verify::{self, FullReport, IdentityReport, SuiteReport};
use ternary::{automorphs, equivalent, lambda_lattice, lambda_m, local, phi, phi_inverse, reduce, rep_count, theta};
use ternary::{Error, Mat3, Result, Scalar, UnimodularMap};

use crate::{Command, Config, GenusChoice, VerifyTarget};

pub struct Output {
    pub json: String,
    pub tsv: String,
    pub pass: bool,
}

impl Output {
    fn new(json: &impl Serialize, tsv: String) -> Self {
        Output {
            json: serde_json::to_string(json).expect("values serialize"),
            tsv,
            pass: true,
        }
    }
}

/// Inputs whose coefficients stay below this magnitude run on `i64`.
const SMALL: i64 = 1 << 20;

fn num(v: impl Display) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integers are valid JSON numbers"))
}

fn matrix_tsv<T: Scalar>(m: &Mat3<T>) -> String {
    m.rows()
        .iter()
        .map(|r| format!("{},{},{}", r[0], r[1], r[2]))
        .collect::<Vec<_>>()
        .join(";")
}

fn map_tsv<T: Scalar>(u: &UnimodularMap<T>) -> String {
    matrix_tsv(u.matrix())
}

fn parse_int(field: &str, s: &str) -> Result<BigInt> {
    s.parse().map_err(|_| Error::Parse {
        field: field.into(),
        message: format!("{s:?} is not an integer"),
    })
}

/// Parsed integer arguments, on `i64` when every value is small and on `BigInt` otherwise.
struct Inputs<T> {
    forms: Vec<TernaryForm<T>>,
    ints: Vec<T>,
}

fn narrow(forms: &[TernaryForm<BigInt>], ints: &[BigInt]) -> Option<Inputs<i64>> {
    let small = |v: &BigInt| v.abs() < BigInt::from(SMALL);
    if !forms.iter().all(|f| f.coeffs().iter().all(small)) || !ints.iter().all(|n| n.abs() < BigInt::from(1i64 << 40)) {
        return None;
    }
    Some(Inputs {
        forms: forms.iter().map(|f| f.cast()).collect::<Option<_>>()?,
        ints: ints.iter().map(|n| i64::try_from(n).ok()).collect::<Option<_>>()?,
    })
}

pub fn run(command: &Command, config: &Config) -> Result<Output> {
    let cache = config.cache.as_ref().map(GenusCache::new);
    match command {
        Command::Genus { p, label } => genus(*p, *label, cache.as_ref()),
        Command::Mass { p } => mass(*p, cache.as_ref()),
        Command::Verify { target, p, n_max } => run_verify(*target, *p, *n_max, cache.as_ref()),
        _ => {
            let (forms, ints) = form_arguments(command)?;
            match narrow(&forms, &ints) {
                Some(inputs) => form_command(command, config, &inputs),
                None => form_command(command, config, &Inputs { forms, ints }),
            }
        }
    }
}

fn form_arguments(command: &Command) -> Result<(Vec<TernaryForm<BigInt>>, Vec<BigInt>)> {
    let form = |s: &String| s.parse::<TernaryForm<BigInt>>();
    Ok(match command {
        Command::Disc { form: f }
        | Command::Reduce { form: f }
        | Command::Auts { form: f, .. }
        | Command::Phi { form: f }
        | Command::PhiInv { form: f }
        | Command::Theta { form: f, .. } => (vec![form(f)?], vec![]),
        Command::Count { form: f, n } | Command::Density { form: f, n, .. } => (vec![form(f)?], vec![parse_int("n", n)?]),
        Command::Lambda { form: f, m } => (vec![form(f)?], vec![parse_int("m", m)?]),
        Command::Equiv { first, second } => (vec![form(first)?, form(second)?], vec![]),
        Command::Genus { .. } | Command::Mass { .. } | Command::Verify { .. } => unreachable!("no form arguments"),
    })
}

fn form_command<T: Scalar>(command: &Command, config: &Config, inputs: &Inputs<T>) -> Result<Output> {
    let g = &inputs.forms[0];
    Ok(match command {
        Command::Disc { .. } => {
            let d = g.discriminant();
            Output::new(&json!({ "disc": num(&d) }), format!("disc\n{d}\n"))
        }
        Command::Reduce { .. } => {
            let (r, u) = reduce(g)?;
            Output::new(
                &json!({ "coeffs": r.coeffs().iter().map(num).collect::<Vec<_>>(), "witness": u }),
                format!("coeffs\twitness\n{r}\t{}\n", map_tsv(&u)),
            )
        }
        Command::Count { .. } => {
            let n = &inputs.ints[0];
            let c = rep_count(g, n)?;
            Output::new(&json!({ "n": num(n), "count": c }), format!("n\tcount\n{n}\t{c}\n"))
        }
        Command::Theta { bound, .. } => {
            let th = theta(g, *bound)?;
            let mut tsv = String::from("n\tcount\n");
            for (n, c) in th.counts.iter().enumerate() {
                writeln!(tsv, "{n}\t{c}").expect("writing to a string");
            }
            Output::new(&json!({ "bound": bound, "counts": th.counts }), tsv)
        }
        Command::Auts { elements, .. } => {
            let group = automorphs(g)?;
            if *elements {
                let mut tsv = String::from("order\telement\n");
                for u in &group.elements {
                    writeln!(tsv, "{}\t{}", group.order, map_tsv(u)).expect("writing to a string");
                }
                Output::new(&json!({ "order": group.order, "elements": group.elements }), tsv)
            } else {
                Output::new(&json!({ "order": group.order }), format!("order\n{}\n", group.order))
            }
        }
        Command::Equiv { .. } => {
            let h = &inputs.forms[1];
            match equivalent(g, h)? {
                Some(u) => Output::new(
                    &json!({ "equivalent": true, "witness": u }),
                    format!("equivalent\twitness\ntrue\t{}\n", map_tsv(&u)),
                ),
                None => Output::new(&json!({ "equivalent": false, "witness": null }), "equivalent\twitness\nfalse\t\n".into()),
            }
        }
        Command::Phi { .. } => form_output(&phi(g)?),
        Command::PhiInv { .. } => form_output(&phi_inverse(g)?),
        Command::Lambda { .. } => {
            let m = &inputs.ints[0];
            let lattice = lambda_lattice(g, m)?;
            let image = lambda_m(g, m)?;
            Output::new(
                &json!({
                    "coeffs": image.coeffs().iter().map(num).collect::<Vec<_>>(),
                    "modulus": num(m),
                    "basis": lattice.basis,
                    "index": num(&lattice.index),
                }),
                format!(
                    "coeffs\tmodulus\tbasis\tindex\n{image}\t{m}\t{}\t{}\n",
                    matrix_tsv(&lattice.basis),
                    lattice.index
                ),
            )
        }
        Command::Density { p, .. } => {
            let n = &inputs.ints[0];
            let d = local::local_density_with_limit(g, n, *p, config.work_limit)?;
            let value = fraction_string(&d.value);
            Output::new(
                &json!({ "value": value, "t": d.exponent_used, "stabilized": d.stabilized }),
                format!("value\tt\tstabilized\n{value}\t{}\t{}\n", d.exponent_used, d.stabilized),
            )
        }
        Command::Genus { .. } | Command::Mass { .. } | Command::Verify { .. } => unreachable!("handled in run"),
    })
}

fn form_output<T: Scalar>(f: &TernaryForm<T>) -> Output {
    Output::new(f, format!("coeffs\n{f}\n"))
}

fn genus(p: u64, label: GenusChoice, cache: Option<&GenusCache>) -> Result<Output> {
    let (tg1, tg2) = genus_pair::<i64>(p, cache)?;
    let set: &GenusSet<i64> = match label {
        GenusChoice::Tg1 => &tg1,
        GenusChoice::Tg2 => &tg2,
    };
    let classes: Vec<Value> = set
        .classes
        .iter()
        .map(|c| json!({ "coeffs": c.form.coeffs(), "aut": c.aut }))
        .collect();
    let mut tsv = String::from("label\tp\tcoeffs\taut\n");
    for c in &set.classes {
        writeln!(tsv, "{}\t{p}\t{}\t{}", set.label, c.form, c.aut).expect("writing to a string");
    }
    Ok(Output::new(
        &json!({ "label": set.label, "p": p, "classes": classes, "mass": fraction_string(&set.mass) }),
        tsv,
    ))
}

fn mass(p: u64, cache: Option<&GenusCache>) -> Result<Output> {
    let (tg1, tg2) = genus_pair::<i64>(p, cache)?;
    let closed = mass_closed_form(p);
    let pass = tg1.mass == closed && tg2.mass == closed;
    let [m1, m2, mc] = [&tg1.mass, &tg2.mass, &closed].map(fraction_string);
    let mut out = Output::new(
        &json!({ "p": p, "tg1": m1, "tg2": m2, "closed_form": mc, "pass": pass }),
        format!("p\ttg1\ttg2\tclosed_form\tpass\n{p}\t{m1}\t{m2}\t{mc}\t{pass}\n"),
    );
    out.pass = pass;
    Ok(out)
}

fn identity_output(r: &IdentityReport) -> Output {
    let mut tsv = String::from("identity\tp\tn_max\tpass\tfailures\n");
    let fails: Vec<String> = r.failures.iter().map(|m| format!("{}:{}:{}", m.n, m.lhs, m.rhs)).collect();
    writeln!(tsv, "{}\t{}\t{}\t{}\t{}", r.identity, r.p, r.n_max, r.pass, fails.join(",")).expect("writing to a string");
    let mut out = Output::new(r, tsv);
    out.pass = r.pass;
    out
}

fn suite_rows(tsv: &mut String, suites: &[SuiteReport]) {
    for s in suites {
        writeln!(tsv, "{}\t{}\t{}\t{}", s.suite, s.cases, s.pass, s.failures.join("; ")).expect("writing to a string");
    }
}

fn suites_output(suites: Vec<SuiteReport>) -> Output {
    let pass = suites.iter().all(|s| s.pass);
    let mut tsv = String::from("suite\tcases\tpass\tfailures\n");
    suite_rows(&mut tsv, &suites);
    let mut out = Output::new(&json!({ "suites": suites, "pass": pass }), tsv);
    out.pass = pass;
    out
}

fn full_output(r: &FullReport) -> Output {
    let mut tsv = String::from("check\tscope\tpass\tfailures\n");
    for i in &r.identities {
        writeln!(tsv, "{}\tp={} n<={}\t{}\t{}", i.identity, i.p, i.n_max, i.pass, i.failures.len()).expect("writing to a string");
    }
    for s in &r.suites {
        writeln!(tsv, "{}\tcases={}\t{}\t{}", s.suite, s.cases, s.pass, s.failures.len()).expect("writing to a string");
    }
    writeln!(tsv, "all\t\t{}\t", r.pass).expect("writing to a string");
    let mut out = Output::new(r, tsv);
    out.pass = r.pass;
    out
}

fn run_verify(target: VerifyTarget, p: Option<u64>, n_max: Option<u64>, cache: Option<&GenusCache>) -> Result<Output> {
    let unused = |flag: &str| Error::InvalidInput(format!("{flag} does not apply to this target"));
    Ok(match target {
        VerifyTarget::Thm11 | VerifyTarget::Thm12 | VerifyTarget::Tg73 if p.is_some() => return Err(unused("--p")),
        VerifyTarget::Thm11 => identity_output(&verify::verify_theorem_1_1(n_max.unwrap_or(1000))?),
        VerifyTarget::Thm12 => identity_output(&verify::verify_theorem_1_2(n_max.unwrap_or(1000))?),
        VerifyTarget::Thm13 => {
            let p = p.ok_or_else(|| Error::InvalidInput("thm1.3 needs --p".into()))?;
            identity_output(&verify::verify_theorem_1_3(p, n_max.unwrap_or(500), cache)?)
        }
        VerifyTarget::Tg73 => identity_output(&verify::verify_tg73_expansion(n_max.unwrap_or(200))?),
        _ if p.is_some() => return Err(unused("--p")),
        _ if n_max.is_some() => return Err(unused("--n-max")),
        VerifyTarget::Densities => suites_output(verify::verify_density_theorems()),
        VerifyTarget::Genus => suites_output(vec![
            verify::verify_masses(&verify::TEST_PRIMES, cache),
            verify::verify_tg73_structure(cache),
            verify::verify_tg2_residues(&verify::TEST_PRIMES, cache),
        ]),
        VerifyTarget::Watson => suites_output(verify::verify_watson(&verify::TEST_PRIMES, cache)),
        VerifyTarget::All => full_output(&verify::verify_all(cache)?),
    })
}
