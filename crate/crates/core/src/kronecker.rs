//! The Kronecker symbol `(a|n)` for arbitrary integers.

use crate::scalar::{int, Scalar};

/// `(a|2)`: zero for even `a`, `+1` for `a ≡ ±1 (mod 8)`, else `-1`.
fn two_symbol<T: Scalar>(a: &T) -> i32 {
    let r = a.mod_floor(&int(8)).to_u8().expect("residue mod 8");
    match r {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    }
}

/// Jacobi symbol for odd positive `n` by reciprocity.
fn jacobi<T: Scalar>(a: &T, n: &T) -> i32 {
    let (eight, four, three, five): (T, T, T, T) = (int(8), int(4), int(3), int(5));
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1;
    while !a.is_zero() {
        while a.is_even() {
            a = a / int::<T>(2);
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Kronecker symbol `(a|n)`, extending the Jacobi symbol to every `n`.
pub fn kronecker<T: Scalar>(a: &T, n: &T) -> i32 {
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    let mut result = 1;
    let mut m = n.clone();
    if m.is_negative() {
        m = -m;
        if a.is_negative() {
            result = -result;
        }
    }
    let two: T = int(2);
    while m.is_even() {
        m = m / two.clone();
        result *= two_symbol(a);
        if result == 0 {
            return 0;
        }
    }
    result * jacobi(a, &m)
}
