use num_bigint::BigInt;
use ternary::genus::{build_tg2, enumerate_tg1, weighted_rep_sum};
use ternary::verify::{TG1_73, TG2_73};
use ternary::{automorphs, canonical, phi, rep_count, Form, Form128, Form64, TernaryForm};

fn big(coeffs: [i64; 6]) -> Form {
    Form::from_i64(coeffs)
}

#[test]
fn scalar_types_agree_on_the_worked_genus() {
    for (h, g) in TG1_73.iter().zip(&TG2_73) {
        let small = Form64::from_i64(*h);
        let wide = Form128::from_i64(*h);
        let huge = big(*h);
        assert_eq!(canonical(&huge).unwrap(), canonical(&small).unwrap().cast().unwrap());
        assert_eq!(canonical(&wide).unwrap(), canonical(&small).unwrap().cast().unwrap());
        assert_eq!(automorphs(&huge).unwrap().order, automorphs(&small).unwrap().order);
        assert_eq!(phi(&huge).unwrap(), canonical(&big(*g)).unwrap());
        for n in [1, 7, 31, 73, 100] {
            assert_eq!(rep_count(&huge, &BigInt::from(n)).unwrap(), rep_count(&small, &n).unwrap());
        }
    }
}

#[test]
fn genus_enumeration_is_scalar_independent() {
    let a = enumerate_tg1::<i64>(41).unwrap();
    let b = enumerate_tg1::<BigInt>(41).unwrap();
    assert_eq!(a.classes.len(), b.classes.len());
    for (x, y) in a.classes.iter().zip(&b.classes) {
        assert_eq!(x.form.cast::<BigInt>().unwrap(), y.form);
        assert_eq!(x.aut, y.aut);
    }
    assert_eq!(a.mass, b.mass);
}

#[test]
fn large_coefficients_do_not_overflow() {
    // Scaling by 10^12 pushes intermediate products past i64.
    let k = BigInt::from(10).pow(12);
    let g: Form = TernaryForm::sum_of_squares().scale(&k);
    assert_eq!(g.discriminant(), BigInt::from(4) * k.pow(3));
    assert_eq!(canonical(&g).unwrap(), g);
    assert_eq!(rep_count(&g, &(k.clone() * 2)).unwrap(), 12);
}

#[test]
fn weighted_sums_match_the_identity_weights() {
    // 48 Σ R/|Aut| over TG1(73) and 96 Σ R/|Aut| over TG2(73) are integers.
    let tg1 = enumerate_tg1::<i64>(73).unwrap();
    let tg2 = build_tg2(&tg1).unwrap();
    for n in 1..=120i64 {
        let w1 = weighted_rep_sum(&tg1, &n).unwrap() * BigInt::from(48);
        let w2 = weighted_rep_sum(&tg2, &n).unwrap() * BigInt::from(96);
        assert!(w1.is_integer() && w2.is_integer(), "n = {n}");
    }
}
