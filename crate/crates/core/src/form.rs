//! Integral ternary quadratic forms `a x² + b y² + c z² + d yz + e zx + f xy`
//! and the unimodular changes of variables acting on them.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Mat3;
use crate::scalar::{int, Scalar};

/// The sextuple `⟨a,b,c,d,e,f⟩`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TernaryForm<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub e: T,
    pub f: T,
}

impl<T: Scalar> TernaryForm<T> {
    pub fn new(a: T, b: T, c: T, d: T, e: T, f: T) -> Self {
        TernaryForm { a, b, c, d, e, f }
    }

    pub fn from_i64(coeffs: [i64; 6]) -> Self {
        let [a, b, c, d, e, f] = coeffs.map(int::<T>);
        TernaryForm { a, b, c, d, e, f }
    }

    pub fn from_coeffs(coeffs: [T; 6]) -> Self {
        let [a, b, c, d, e, f] = coeffs;
        TernaryForm { a, b, c, d, e, f }
    }

    /// `x² + y² + z²`.
    pub fn sum_of_squares() -> Self {
        Self::from_i64([1, 1, 1, 0, 0, 0])
    }

    pub fn coeffs(&self) -> [T; 6] {
        [
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            self.e.clone(),
            self.f.clone(),
        ]
    }

    /// Symmetric matrix of second partials, `[[2a,f,e],[f,2b,d],[e,d,2c]]`.
    pub fn gram(&self) -> Mat3<T> {
        let two: T = int(2);
        Mat3::from_rows([
            [two.clone() * self.a.clone(), self.f.clone(), self.e.clone()],
            [self.f.clone(), two.clone() * self.b.clone(), self.d.clone()],
            [self.e.clone(), self.d.clone(), two * self.c.clone()],
        ])
    }

    /// Inverse of [`gram`](Self::gram). The matrix must be symmetric with even diagonal.
    pub fn from_gram(g: &Mat3<T>) -> Result<Self> {
        let two: T = int(2);
        for i in 0..3 {
            if !g.get(i, i).is_multiple_of(&two) {
                return Err(Error::InvalidInput(format!("Gram matrix {g} has an odd diagonal entry")));
            }
            for j in 0..i {
                if g.get(i, j) != g.get(j, i) {
                    return Err(Error::InvalidInput(format!("Gram matrix {g} is not symmetric")));
                }
            }
        }
        Ok(TernaryForm {
            a: g.get(0, 0).clone() / two.clone(),
            b: g.get(1, 1).clone() / two.clone(),
            c: g.get(2, 2).clone() / two,
            d: g.get(1, 2).clone(),
            e: g.get(0, 2).clone(),
            f: g.get(0, 1).clone(),
        })
    }

    pub fn evaluate(&self, x: &T, y: &T, z: &T) -> T {
        self.a.clone() * x.clone() * x.clone()
            + self.b.clone() * y.clone() * y.clone()
            + self.c.clone() * z.clone() * z.clone()
            + self.d.clone() * y.clone() * z.clone()
            + self.e.clone() * z.clone() * x.clone()
            + self.f.clone() * x.clone() * y.clone()
    }

    pub fn value(&self, v: &[T; 3]) -> T {
        self.evaluate(&v[0], &v[1], &v[2])
    }

    /// `u' G v`, so that `value(u + v) = value(u) + bilinear(u, v) + value(v)`.
    pub fn bilinear(&self, u: &[T; 3], v: &[T; 3]) -> T {
        let two: T = int(2);
        two.clone() * self.a.clone() * u[0].clone() * v[0].clone()
            + two.clone() * self.b.clone() * u[1].clone() * v[1].clone()
            + two * self.c.clone() * u[2].clone() * v[2].clone()
            + self.d.clone() * (u[1].clone() * v[2].clone() + u[2].clone() * v[1].clone())
            + self.e.clone() * (u[0].clone() * v[2].clone() + u[2].clone() * v[0].clone())
            + self.f.clone() * (u[0].clone() * v[1].clone() + u[1].clone() * v[0].clone())
    }

    /// `4abc + def − ad² − be² − cf²`, half the Gram determinant.
    pub fn discriminant(&self) -> T {
        let (a, b, c, d, e, f) = (&self.a, &self.b, &self.c, &self.d, &self.e, &self.f);
        let four: T = int(4);
        four * a.clone() * b.clone() * c.clone() + d.clone() * e.clone() * f.clone()
            - a.clone() * d.clone() * d.clone()
            - b.clone() * e.clone() * e.clone()
            - c.clone() * f.clone() * f.clone()
    }

    /// All three leading principal minors of the Gram matrix are positive.
    pub fn is_positive_definite(&self) -> bool {
        let four: T = int(4);
        self.a.is_positive()
            && (four * self.a.clone() * self.b.clone() - self.f.clone() * self.f.clone()).is_positive()
            && self.discriminant().is_positive()
    }

    pub fn content(&self) -> T {
        self.coeffs().iter().fold(T::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// The form with Gram matrix `U' G U`, i.e. `x ↦ form(U x)`.
    pub fn apply_map(&self, u: &UnimodularMap<T>) -> Self {
        self.transform(u.matrix())
    }

    /// `x ↦ form(M x)` for an arbitrary integer matrix.
    pub fn transform(&self, m: &Mat3<T>) -> Self {
        let g = self.gram();
        let h = &(&m.transpose() * &g) * m;
        Self::from_gram(&h).expect("congruent Gram matrices keep an even diagonal")
    }

    pub fn scale(&self, k: &T) -> Self {
        let [a, b, c, d, e, f] = self.coeffs().map(|x| x * k.clone());
        TernaryForm { a, b, c, d, e, f }
    }

    pub fn cast<U: Scalar>(&self) -> Option<TernaryForm<U>> {
        Some(TernaryForm {
            a: crate::scalar::cast(&self.a)?,
            b: crate::scalar::cast(&self.b)?,
            c: crate::scalar::cast(&self.c)?,
            d: crate::scalar::cast(&self.d)?,
            e: crate::scalar::cast(&self.e)?,
            f: crate::scalar::cast(&self.f)?,
        })
    }

    pub(crate) fn require_positive_definite(&self) -> Result<()> {
        if self.is_positive_definite() {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite(self.to_string()))
        }
    }
}

impl<T: Scalar> fmt::Display for TernaryForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{},{}", self.a, self.b, self.c, self.d, self.e, self.f)
    }
}

const FIELD_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

impl<T: Scalar> FromStr for TernaryForm<T> {
    type Err = Error;

    /// Parses the comma separated sextuple `a,b,c,d,e,f`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 6 {
            let field = if parts.len() < 6 { FIELD_NAMES[parts.len()] } else { "f" };
            return Err(Error::Parse {
                field: field.to_string(),
                message: format!("expected six comma separated integers, got {} in {s:?}", parts.len()),
            });
        }
        let mut coeffs: Vec<T> = Vec::with_capacity(6);
        for (name, part) in FIELD_NAMES.iter().zip(&parts) {
            let v = T::from_str_radix(part, 10).map_err(|_| Error::Parse {
                field: name.to_string(),
                message: format!("{part:?} is not an integer"),
            })?;
            coeffs.push(v);
        }
        let arr: [T; 6] = coeffs.try_into().expect("six coefficients");
        Ok(Self::from_coeffs(arr))
    }
}

pub(crate) fn json_number<T: Scalar>(v: &T) -> serde_json::Number {
    serde_json::Number::from_str(&v.to_string()).expect("integers are valid JSON numbers")
}

pub(crate) fn serialize_scalar<T: Scalar, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    json_number(v).serialize(s)
}

pub(crate) fn parse_json_number<T: Scalar>(n: &serde_json::Number) -> Option<T> {
    T::from_str_radix(&n.to_string(), 10).ok()
}

impl<T: Scalar> Serialize for TernaryForm<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<serde_json::Number> = self.coeffs().iter().map(json_number).collect();
        let mut st = serializer.serialize_struct("TernaryForm", 1)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de, T: Scalar> Deserialize<'de> for TernaryForm<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            coeffs: Vec<serde_json::Number>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.coeffs.len() != 6 {
            return Err(de::Error::invalid_length(raw.coeffs.len(), &"six coefficients"));
        }
        let mut out = Vec::with_capacity(6);
        for (name, n) in FIELD_NAMES.iter().zip(&raw.coeffs) {
            out.push(parse_json_number(n).ok_or_else(|| de::Error::custom(format!("field {name}: {n} is not an integer")))?);
        }
        Ok(Self::from_coeffs(out.try_into().expect("six coefficients")))
    }
}

/// A 3×3 integer matrix of determinant ±1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnimodularMap<T>(Mat3<T>);

impl<T: Scalar> UnimodularMap<T> {
    pub fn new(m: Mat3<T>) -> Result<Self> {
        let det = m.det();
        if det.abs().is_one() {
            Ok(UnimodularMap(m))
        } else {
            Err(Error::NotUnimodular(m.to_string(), det.to_string()))
        }
    }

    pub(crate) fn new_unchecked(m: Mat3<T>) -> Self {
        debug_assert!(m.det().abs().is_one(), "{m:?}");
        UnimodularMap(m)
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(Mat3::from_i64(rows))
    }

    pub fn identity() -> Self {
        UnimodularMap(Mat3::identity())
    }

    pub fn negative_identity() -> Self {
        UnimodularMap(Mat3::scalar(int(-1)))
    }

    /// The identity with an extra `1` at row `i`, column `j` (zero-based, `i ≠ j`).
    pub fn elementary(i: usize, j: usize) -> Self {
        assert!(i != j && i < 3 && j < 3);
        let mut m = Mat3::identity();
        m.set(i, j, int(1));
        UnimodularMap(m)
    }

    /// The variable permutation `[[1,0,0],[0,0,−1],[0,1,0]]`, sending
    /// `⟨a,b,c,d,e,f⟩` to `⟨a,c,b,−d,−f,e⟩`.
    pub fn swap_yz() -> Self {
        UnimodularMap(Mat3::from_i64([[1, 0, 0], [0, 0, -1], [0, 1, 0]]))
    }

    pub fn matrix(&self) -> &Mat3<T> {
        &self.0
    }

    pub fn into_matrix(self) -> Mat3<T> {
        self.0
    }

    pub fn det(&self) -> T {
        self.0.det()
    }

    /// Product `self · other`; acting by the product equals acting by `self` then `other`.
    pub fn compose(&self, other: &Self) -> Self {
        UnimodularMap(&self.0 * &other.0)
    }

    pub fn inverse(&self) -> Self {
        let det = self.0.det();
        UnimodularMap(self.0.adjugate().map(|x| x.clone() * det.clone()))
    }

    pub fn is_identity(&self) -> bool {
        self.0 == Mat3::identity()
    }

    pub fn cast<U: Scalar>(&self) -> Option<UnimodularMap<U>> {
        self.0.cast().map(UnimodularMap)
    }
}

impl<T: Scalar> fmt::Debug for UnimodularMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl<T: Scalar> fmt::Display for UnimodularMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl<T: Scalar> Serialize for UnimodularMap<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

pub fn evaluate<T: Scalar>(form: &TernaryForm<T>, x: &T, y: &T, z: &T) -> T {
    form.evaluate(x, y, z)
}

pub fn discriminant<T: Scalar>(form: &TernaryForm<T>) -> T {
    form.discriminant()
}

pub fn apply_map<T: Scalar>(form: &TernaryForm<T>, u: &UnimodularMap<T>) -> TernaryForm<T> {
    form.apply_map(u)
}

pub fn is_primitive<T: Scalar>(form: &TernaryForm<T>) -> bool {
    form.is_primitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type F = TernaryForm<i64>;

    fn h1() -> F {
        F::from_i64([31, 5, 11, 1, -14, 6])
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(F::sum_of_squares().evaluate(&1, &2, &2), 9);
        assert_eq!(F::from_i64([1, 1, 3, 0, 0, 1]).evaluate(&1, &-1, &0), 1);
        assert_eq!(h1().evaluate(&1, &0, &0), 31);
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(F::sum_of_squares().discriminant(), 4);
        assert_eq!(h1().discriminant(), 73 * 73);
        assert_eq!(F::from_i64([31, 20, 44, 4, -28, 12]).discriminant(), 16 * 73 * 73);
        assert_eq!(F::from_i64([31, 20, 44, 4, -28, 12]).discriminant(), 85264);
    }

    #[test]
    fn discriminant_is_half_gram_determinant() {
        for form in [h1(), F::from_i64([2, 2, 2, -1, 1, 1]), F::from_i64([7, 8, 8, -4, 8, 8])] {
            assert_eq!(form.gram().det(), 2 * form.discriminant());
        }
    }

    #[test]
    fn primitivity() {
        assert!(F::sum_of_squares().is_primitive());
        assert!(!F::from_i64([2, 2, 2, 0, 0, 0]).is_primitive());
        assert!(F::from_i64([31, 20, 44, 4, -28, 12]).is_primitive());
    }

    #[test]
    fn named_moves() {
        let g = F::from_i64([3, 5, 7, 11, 13, 17]);
        let [a, b, c, d, e, f] = g.coeffs();
        assert_eq!(g.apply_map(&UnimodularMap::identity()), g);
        assert_eq!(g.apply_map(&UnimodularMap::swap_yz()), F::new(a, c, b, -d, -f, e));
        // M12
        assert_eq!(
            g.apply_map(&UnimodularMap::elementary(0, 1)),
            F::new(a, a + b + f, c, d + e, e, f + 2 * a)
        );
        // M32
        assert_eq!(
            g.apply_map(&UnimodularMap::elementary(2, 1)),
            F::new(a, b + c + d, c, d + 2 * c, e, f + e)
        );
        // M21
        assert_eq!(
            g.apply_map(&UnimodularMap::elementary(1, 0)),
            F::new(a + b + f, b, c, d, e + d, f + 2 * b)
        );
    }

    #[test]
    fn composition_matches_sequential_action() {
        let g = h1();
        let u = UnimodularMap::elementary(0, 1);
        let v = UnimodularMap::swap_yz();
        assert_eq!(g.apply_map(&u).apply_map(&v), g.apply_map(&u.compose(&v)));
        assert_eq!(g.apply_map(&u).apply_map(&u.inverse()), g);
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(UnimodularMap::<i64>::from_i64([[2, 0, 0], [0, 1, 0], [0, 0, 1]]).is_err());
        assert!(UnimodularMap::<i64>::from_i64([[0, 1, 0], [1, 0, 0], [0, 0, 1]]).is_ok());
    }

    #[test]
    fn positive_definiteness() {
        assert!(h1().is_positive_definite());
        assert!(!F::from_i64([-1, 0, 0, 1, 0, 0]).is_positive_definite());
        assert!(!F::from_i64([1, 1, 1, 2, 0, 0]).is_positive_definite());
    }

    #[test]
    fn parsing() {
        let g: TernaryForm<BigInt> = "31,5,11,1,-14,6".parse().unwrap();
        assert_eq!(g.to_string(), "31,5,11,1,-14,6");
        match "1,2,x,0,0,0".parse::<F>() {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "c"),
            other => panic!("{other:?}"),
        }
        match "1,2,3".parse::<F>() {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "d"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn json_encoding() {
        let g = h1();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"coeffs":[31,5,11,1,-14,6]}"#);
        let back: F = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        let big: TernaryForm<BigInt> = serde_json::from_str(r#"{"coeffs":[100000000000000000000000,0,1,0,0,0]}"#).unwrap();
        assert_eq!(big.a.to_string(), "100000000000000000000000");
    }
}
