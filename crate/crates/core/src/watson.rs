//! Watson's `m`-mapping and the maps `Φ`, `Φ⁻¹` between the two genera.
//!
//! `Λ_m(f) = {x : F x ≡ 0 and f(x) ≡ 0 (mod m)}` contains `m Z³`. With `M` a basis
//! matrix of `Λ_m(f)`, `λ_m(f)` has Gram matrix `M' F M / m`. Bases are put in
//! lower-triangular column Hermite normal form, so results are reproducible.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{TernaryForm, UnimodularMap};
use crate::isometry::equivalent;
use crate::matrix::Mat3;
use crate::reduce::canonical;
use crate::scalar::{int, Scalar};
use crate::shapes::{to_convenient_shape_1, to_convenient_shape_2};

/// Largest `m³` residue sweep accepted by [`lambda_lattice`].
const MAX_RESIDUES: u64 = 50_000_000;

#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct WatsonLattice<T: Scalar> {
    pub form: TernaryForm<T>,
    #[serde(serialize_with = "crate::form::serialize_scalar")]
    pub modulus: T,
    /// Columns form a basis of `Λ_m(form)`.
    pub basis: Mat3<T>,
    #[serde(serialize_with = "crate::form::serialize_scalar")]
    pub index: T,
}

impl<T: Scalar> WatsonLattice<T> {
    /// `N = m M⁻¹`, integral because `m Z³ ⊆ Λ_m`.
    pub fn cofactor(&self) -> Result<Mat3<T>> {
        let adj = self.basis.adjugate().map(|x| x.clone() * self.modulus.clone());
        adj.div_exact(&self.index)
            .ok_or_else(|| Error::Inconsistent(format!("m M⁻¹ is not integral for M = {}", self.basis)))
    }

    /// `λ_m(form)` in this basis, before any reduction.
    pub fn image(&self) -> Result<TernaryForm<T>> {
        let raw = &(&self.basis.transpose() * &self.form.gram()) * &self.basis;
        let gram = raw
            .div_exact(&self.modulus)
            .ok_or_else(|| Error::Inconsistent(format!("M' F M / {} is not integral for {}", self.modulus, self.form)))?;
        TernaryForm::from_gram(&gram)
    }
}

/// Lower-triangular column Hermite normal form of the lattice spanned by the
/// columns of `basis` together with `v`: positive diagonal and
/// `0 ≤ h[i][j] < h[i][i]` for `j < i`.
fn hermite_insert<T: Scalar>(basis: &Mat3<T>, v: &[T; 3]) -> Mat3<T> {
    let mut cols: Vec<[T; 3]> = (0..3).map(|j| basis.column(j)).collect();
    cols.push(v.clone());
    for row in 0..3 {
        // Fold the entries of `row` in columns row.. into column `row` by gcd steps.
        for k in row + 1..cols.len() {
            let (x, y) = (cols[row][row].clone(), cols[k][row].clone());
            if y.is_zero() {
                continue;
            }
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (xg, yg) = (x / g.clone(), y / g.clone());
            let a = cols[row].clone();
            let b = cols[k].clone();
            for i in 0..3 {
                cols[row][i] = s.clone() * a[i].clone() + t.clone() * b[i].clone();
                cols[k][i] = xg.clone() * b[i].clone() - yg.clone() * a[i].clone();
            }
        }
        if cols[row][row].is_negative() {
            cols[row] = cols[row].clone().map(|x| -x);
        }
    }
    cols.truncate(3);
    for i in 1..3 {
        for j in 0..i {
            let q = cols[j][i].div_floor(&cols[i][i]);
            if !q.is_zero() {
                for r in 0..3 {
                    let sub = q.clone() * cols[i][r].clone();
                    cols[j][r] = cols[j][r].clone() - sub;
                }
            }
        }
    }
    Mat3::from_columns([cols[0].clone(), cols[1].clone(), cols[2].clone()])
}

/// `Λ_m(form)` with its canonical basis.
pub fn lambda_lattice<T: Scalar>(form: &TernaryForm<T>, m: &T) -> Result<WatsonLattice<T>> {
    let mu = m.to_u64().filter(|&v| v >= 1).ok_or_else(|| Error::InvalidInput(format!("modulus {m} must be a positive integer")))?;
    if mu.checked_pow(3).is_none_or(|c| c > MAX_RESIDUES) {
        return Err(Error::ResourceLimit {
            what: format!("sweeping residues modulo {m}"),
            needed: format!("{m}^3"),
            limit: MAX_RESIDUES,
        });
    }
    let gram = form.gram();
    let mut basis = Mat3::scalar(m.clone());
    let steps = mu as i64;
    for x in 0..steps {
        for y in 0..steps {
            for z in 0..steps {
                let v = [int::<T>(x), int::<T>(y), int::<T>(z)];
                if gram.mul_vec(&v).iter().all(|c| c.is_multiple_of(m)) && form.value(&v).is_multiple_of(m) {
                    basis = hermite_insert(&basis, &v);
                }
            }
        }
    }
    Ok(WatsonLattice {
        form: form.clone(),
        modulus: m.clone(),
        index: basis.det(),
        basis,
    })
}

fn finish<T: Scalar>(g: TernaryForm<T>) -> Result<TernaryForm<T>> {
    if g.is_positive_definite() {
        canonical(&g)
    } else {
        Ok(g)
    }
}

/// `λ_m(form)`, canonically reduced when positive definite.
pub fn lambda_m<T: Scalar>(form: &TernaryForm<T>, m: &T) -> Result<TernaryForm<T>> {
    finish(lambda_lattice(form, m)?.image()?)
}

/// `Φ⟨a,b,c,d,e,f⟩ = ⟨a,4b,4c,4d,2e,2f⟩` on a Convenient Shape 1 representative.
pub fn phi<T: Scalar>(form: &TernaryForm<T>) -> Result<TernaryForm<T>> {
    let (g, _) = to_convenient_shape_1(form)?;
    let (two, four): (T, T) = (int(2), int(4));
    finish(TernaryForm::new(
        g.a,
        four.clone() * g.b,
        four.clone() * g.c,
        four * g.d,
        two.clone() * g.e,
        two * g.f,
    ))
}

/// `Φ⁻¹⟨a,b,c,d,e,f⟩ = ⟨a,b/4,c/4,d/4,e/2,f/2⟩` on a Convenient Shape 2 representative.
pub fn phi_inverse<T: Scalar>(form: &TernaryForm<T>) -> Result<TernaryForm<T>> {
    let (g, _) = to_convenient_shape_2(form)?;
    let (two, four): (T, T) = (int(2), int(4));
    finish(TernaryForm::new(
        g.a,
        g.b / four.clone(),
        g.c / four.clone(),
        g.d / four,
        g.e / two.clone(),
        g.f / two,
    ))
}

/// Carries an automorph `r` of `preimage` to the automorph `N r M / m` of the
/// raw image, then conjugates it onto `image`, which must be equivalent to
/// `λ_m(preimage)`.
pub fn transport_automorph<T: Scalar>(
    preimage: &TernaryForm<T>,
    image: &TernaryForm<T>,
    m: &T,
    r: &UnimodularMap<T>,
) -> Result<UnimodularMap<T>> {
    if preimage.apply_map(r) != *preimage {
        return Err(Error::InvalidInput(format!("{r} is not an automorph of {preimage}")));
    }
    let lattice = lambda_lattice(preimage, m)?;
    let raw = lattice.image()?;
    let n = lattice.cofactor()?;
    let s = (&(&n * r.matrix()) * &lattice.basis)
        .div_exact(m)
        .ok_or_else(|| Error::Inconsistent(format!("N R M / {m} is not integral")))?;
    let s = UnimodularMap::new(s)?;
    let s = if raw == *image {
        s
    } else {
        let w = equivalent(&raw, image)?
            .ok_or_else(|| Error::InvalidInput(format!("{image} is not equivalent to λ_{m}({preimage}) = {raw}")))?;
        w.inverse().compose(&s).compose(&w)
    };
    if image.apply_map(&s) != *image {
        return Err(Error::Inconsistent(format!("transported map {s} does not fix {image}")));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::automorphs;

    type F = TernaryForm<i64>;

    fn h(i: usize) -> F {
        F::from_i64(
            [
                [31, 5, 11, 1, -14, 6],
                [15, 14, 10, 7, 4, 16],
                [11, 7, 20, 7, 2, 4],
                [7, 11, 21, 11, 2, 4],
            ][i],
        )
    }

    fn g(i: usize) -> F {
        F::from_i64(
            [
                [31, 20, 44, 4, -28, 12],
                [15, 56, 40, 28, 8, 32],
                [11, 28, 80, 28, 4, 8],
                [7, 44, 84, 44, 4, 8],
            ][i],
        )
    }

    #[test]
    fn lattice_examples() {
        let l = lambda_lattice(&h(0), &4).unwrap();
        assert_eq!(l.basis, Mat3::diag(2, 4, 4));
        assert_eq!(l.index, 32);
        assert_eq!(l.cofactor().unwrap(), Mat3::diag(2, 1, 1));
        assert_eq!(lambda_lattice(&g(0), &4).unwrap().basis, Mat3::diag(2, 1, 1));
        assert_eq!(lambda_lattice(&F::sum_of_squares(), &1).unwrap().basis, Mat3::identity());
    }

    #[test]
    fn lattice_columns_satisfy_membership() {
        for (form, m) in [(h(2), 4i64), (h(3), 3), (F::from_i64([2, 3, 5, 1, 1, 1]), 6), (F::from_i64([1, 1, 3, 0, 0, 1]), 9)] {
            let l = lambda_lattice(&form, &m).unwrap();
            let gram = form.gram();
            for j in 0..3 {
                let v = l.basis.column(j);
                assert!(gram.mul_vec(&v).iter().all(|c| c % m == 0));
                assert_eq!(form.value(&v) % m, 0);
                assert!(l.basis.get(j, j) > &0);
            }
            // m I is in the span: N = m M⁻¹ integral.
            assert_eq!(&l.basis * &l.cofactor().unwrap(), Mat3::scalar(m));
            l.image().unwrap();
        }
    }

    #[test]
    fn hermite_form_is_canonical() {
        let b = hermite_insert(&Mat3::scalar(6i64), &[3, 2, 5]);
        for i in 0..3 {
            assert!(*b.get(i, i) > 0);
            for j in 0..i {
                assert!((0..*b.get(i, i)).contains(b.get(i, j)), "{b:?}");
            }
            for j in i + 1..3 {
                assert_eq!(*b.get(i, j), 0);
            }
        }
        // Same lattice from a different generating order.
        let c = hermite_insert(&hermite_insert(&Mat3::scalar(6i64), &[3, 0, 5]), &[0, 2, 0]);
        let d = hermite_insert(&hermite_insert(&Mat3::scalar(6i64), &[0, 2, 0]), &[3, 0, 5]);
        assert_eq!(c, d);
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_m(&F::from_i64([-1, 0, 0, 1, 0, 0]), &4).unwrap(), F::from_i64([-1, 0, 0, 4, 0, 0]));
        let raw = lambda_lattice(&h(0), &4).unwrap().image().unwrap();
        assert_eq!(raw, F::from_i64([31, 20, 44, 4, -28, 12]));
        for i in 0..4 {
            let twice = lambda_m(&lambda_m(&h(i), &4).unwrap(), &4).unwrap();
            assert_eq!(twice, canonical(&h(i)).unwrap());
        }
    }

    #[test]
    fn phi_pairs() {
        for i in 0..4 {
            assert_eq!(phi(&h(i)).unwrap(), canonical(&g(i)).unwrap(), "h{}", i + 1);
            assert_eq!(phi_inverse(&g(i)).unwrap(), canonical(&h(i)).unwrap(), "g{}", i + 1);
            assert_eq!(phi(&h(i)).unwrap(), lambda_m(&h(i), &4).unwrap());
        }
        assert_eq!(phi_inverse(&F::from_i64([-1, 0, 0, 4, 0, 0])).unwrap(), F::from_i64([-1, 0, 0, 1, 0, 0]));
        assert_eq!(phi(&F::from_i64([-1, 0, 0, 1, 0, 0])).unwrap(), F::from_i64([-1, 0, 0, 4, 0, 0]));
        assert!(phi(&F::sum_of_squares()).is_err());
    }

    #[test]
    fn transport_is_a_bijection() {
        for i in 0..4 {
            let pre = h(i);
            let img = canonical(&g(i)).unwrap();
            let src = automorphs(&pre).unwrap();
            let dst = automorphs(&img).unwrap();
            let mut moved: Vec<_> = src.elements.iter().map(|r| transport_automorph(&pre, &img, &4, r).unwrap()).collect();
            moved.sort();
            moved.dedup();
            assert_eq!(moved, dst.elements, "h{}", i + 1);
        }
        let pre = h(2);
        let img = canonical(&g(2)).unwrap();
        assert!(transport_automorph(&pre, &img, &4, &UnimodularMap::identity()).unwrap().is_identity());
        assert_eq!(
            transport_automorph(&pre, &img, &4, &UnimodularMap::negative_identity()).unwrap(),
            UnimodularMap::negative_identity()
        );
    }

    #[test]
    fn transport_is_multiplicative() {
        let pre = h(3);
        let img = canonical(&g(3)).unwrap();
        let group = automorphs(&pre).unwrap();
        let t = |r: &UnimodularMap<i64>| transport_automorph(&pre, &img, &4, r).unwrap();
        for a in &group.elements {
            for b in &group.elements {
                assert_eq!(t(&a.compose(b)), t(a).compose(&t(b)));
            }
        }
    }
}
