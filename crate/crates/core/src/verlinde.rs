//! Exact dimension engine over the fusion ring, with an S-matrix cross-check.
//!
//! `genus_dim(C, g, [x1..xn])` is the unit multiplicity of
//! `x1 ⊗ … ⊗ xn ⊗ H^{⊗g}` where `H = ⊕_i i ⊗ i*` is the handle object.
//! The exact path uses arbitrary-precision fusion; the float path evaluates
//! the Verlinde sum and is used only as an oracle.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fusion::{ModularData, INTEGER_TOL};

/// A formal nonnegative combination of simple objects.
#[derive(Clone, PartialEq)]
pub struct ObjectVector {
    category: Arc<ModularData>,
    mult: Vec<BigUint>,
}

impl ObjectVector {
    pub fn zero(category: Arc<ModularData>) -> Self {
        let mult = vec![BigUint::zero(); category.rank()];
        Self { category, mult }
    }

    pub fn simple(category: Arc<ModularData>, i: usize) -> Self {
        let mut v = Self::zero(category);
        v.mult[i] = BigUint::one();
        v
    }

    pub fn unit(category: Arc<ModularData>) -> Self {
        let u = category.unit();
        Self::simple(category, u)
    }

    pub fn from_label(category: Arc<ModularData>, label: &str) -> Result<Self> {
        let i = category.index_of(label).ok_or_else(|| Error::Lookup {
            kind: "label",
            name: label.to_string(),
            available: category.labels().join(", "),
        })?;
        Ok(Self::simple(category, i))
    }

    pub fn from_counts(category: Arc<ModularData>, counts: &[u64]) -> Self {
        assert_eq!(counts.len(), category.rank(), "count vector length");
        let mult = counts.iter().map(|&c| BigUint::from(c)).collect();
        Self { category, mult }
    }

    pub fn from_mult(category: Arc<ModularData>, mult: Vec<BigUint>) -> Result<Self> {
        if mult.len() != category.rank() {
            return Err(Error::Structure(format!(
                "object over {} needs {} multiplicities, got {}",
                category.name(),
                category.rank(),
                mult.len()
            )));
        }
        Ok(Self { category, mult })
    }

    pub fn category(&self) -> &Arc<ModularData> {
        &self.category
    }

    pub fn mult(&self) -> &[BigUint] {
        &self.mult
    }

    pub fn get(&self, i: usize) -> &BigUint {
        &self.mult[i]
    }

    /// Indices with nonzero multiplicity.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, _)| i)
    }

    pub fn add(&self, other: &ObjectVector) -> Result<ObjectVector> {
        same_category(self, other)?;
        let mult = self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect();
        Ok(Self {
            category: self.category.clone(),
            mult,
        })
    }

    /// Total quantum dimension `Σ n_i d_i` (floating point).
    pub fn dimension(&self) -> f64 {
        self.mult
            .iter()
            .enumerate()
            .map(|(i, m)| m.to_f64().unwrap_or(f64::INFINITY) * self.category.qdim(i))
            .sum()
    }

    /// Fuses with a single simple `s`.
    fn fuse_simple(&self, s: usize) -> ObjectVector {
        let ring = self.category.ring();
        let r = ring.rank();
        let mut out = vec![BigUint::zero(); r];
        for (i, m) in self.mult.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                let n = ring.n(i, s, k);
                if n != 0 {
                    *o += m * n;
                }
            }
        }
        ObjectVector {
            category: self.category.clone(),
            mult: out,
        }
    }
}

impl fmt::Debug for ObjectVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.category.name(), self)
    }
}

impl fmt::Display for ObjectVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.support() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if self.mult[i].is_one() {
                write!(f, "{}", self.category.label(i))?;
            } else {
                write!(f, "{}*{}", self.mult[i], self.category.label(i))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn same_category(a: &ObjectVector, b: &ObjectVector) -> Result<()> {
    if a.category.same_as(&b.category) {
        Ok(())
    } else {
        Err(Error::CategoryMismatch(format!(
            "objects over {} and {}",
            a.category.name(),
            b.category.name()
        )))
    }
}

/// `(v ⊗ w)_k = Σ_{i,j} v_i w_j N[i][j][k]`.
pub fn fuse(v: &ObjectVector, w: &ObjectVector) -> Result<ObjectVector> {
    same_category(v, w)?;
    let r = v.category.rank();
    let mut out = vec![BigUint::zero(); r];
    for j in w.support() {
        let part = v.fuse_simple(j);
        for (o, p) in out.iter_mut().zip(part.mult) {
            if !p.is_zero() {
                *o += p * &w.mult[j];
            }
        }
    }
    Ok(ObjectVector {
        category: v.category.clone(),
        mult: out,
    })
}

pub fn dual_object(v: &ObjectVector) -> ObjectVector {
    let mut mult = vec![BigUint::zero(); v.mult.len()];
    for (i, m) in v.mult.iter().enumerate() {
        mult[v.category.dual(i)] = m.clone();
    }
    ObjectVector {
        category: v.category.clone(),
        mult,
    }
}

/// The handle object `H = ⊕_i i ⊗ i*`, one copy per unit of genus.
pub fn handle_object(c: &Arc<ModularData>) -> ObjectVector {
    let ring = c.ring();
    let r = ring.rank();
    let counts: Vec<u64> = (0..r)
        .map(|k| (0..r).map(|i| u64::from(ring.n(i, ring.dual(i), k))).sum())
        .collect();
    ObjectVector::from_counts(c.clone(), &counts)
}

pub fn unit_multiplicity(v: &ObjectVector) -> BigUint {
    v.mult[v.category.unit()].clone()
}

fn check_insertions(c: &Arc<ModularData>, insertions: &[ObjectVector]) -> Result<()> {
    for x in insertions {
        if !x.category.same_as(c) {
            return Err(Error::CategoryMismatch(format!(
                "insertion over {} on a surface labeled by {}",
                x.category.name(),
                c.name()
            )));
        }
    }
    Ok(())
}

/// The fused object `x1 ⊗ … ⊗ xn ⊗ H^{⊗g}`, fused left to right.
pub fn fused_insertions(
    c: &Arc<ModularData>,
    genus: u32,
    insertions: &[ObjectVector],
) -> Result<ObjectVector> {
    check_insertions(c, insertions)?;
    let mut acc = ObjectVector::unit(c.clone());
    for x in insertions {
        acc = fuse(&acc, x)?;
    }
    if genus > 0 {
        let h = handle_object(c);
        for _ in 0..genus {
            acc = fuse(&acc, &h)?;
        }
    }
    Ok(acc)
}

/// `dim hom(1, x1 ⊗ … ⊗ xn ⊗ H^{⊗g})`, computed exactly.
pub fn genus_dim(c: &Arc<ModularData>, genus: u32, insertions: &[ObjectVector]) -> Result<BigUint> {
    Ok(unit_multiplicity(&fused_insertions(c, genus, insertions)?))
}

/// Per-simple S-matrix eigenvalue of an object: `λ_a(x) = Σ_i x_i S_ia / S_0a`.
pub(crate) fn s_eigenvalues(x: &ObjectVector) -> Vec<Complex64> {
    let c = &x.category;
    let r = c.rank();
    let u = c.unit();
    (0..r)
        .map(|a| {
            let s0a = c.s(u, a);
            x.support()
                .map(|i| c.s(i, a) * x.mult[i].to_f64().unwrap_or(f64::INFINITY))
                .sum::<Complex64>()
                / s0a
        })
        .collect()
}

/// Floating-point Verlinde value `Σ_a S_0a^{2-2g} Π_k λ_a(x_k)` before rounding.
pub fn verlinde_value(
    c: &Arc<ModularData>,
    genus: u32,
    insertions: &[ObjectVector],
) -> Result<Complex64> {
    check_insertions(c, insertions)?;
    let u = c.unit();
    let mut terms: Vec<Complex64> = (0..c.rank())
        .map(|a| Complex64::new(c.s(u, a).re.powf(2.0 - 2.0 * f64::from(genus)), 0.0))
        .collect();
    for x in insertions {
        for (t, l) in terms.iter_mut().zip(s_eigenvalues(x)) {
            *t *= l;
        }
    }
    Ok(terms.into_iter().sum())
}

/// Rounds a Verlinde sum to a nonnegative integer. The residual is measured
/// relative to `max(1, |value|)` and must stay below [`INTEGER_TOL`].
pub(crate) fn round_verlinde(value: Complex64) -> Result<BigUint> {
    let rounded = value.re.round();
    let residual = ((value.re - rounded).powi(2) + value.im.powi(2)).sqrt() / rounded.abs().max(1.0);
    if residual.is_nan() || residual >= INTEGER_TOL || rounded < 0.0 {
        return Err(Error::NumericConsistency(format!(
            "S-matrix path produced {:.9} + {:.9}i, not a nonnegative integer",
            value.re, value.im
        )));
    }
    BigUint::from_f64(rounded).ok_or_else(|| {
        Error::NumericConsistency(format!("S-matrix value {rounded} not representable"))
    })
}

/// The S-matrix cross-check for [`genus_dim`].
pub fn genus_dim_verlinde(
    c: &Arc<ModularData>,
    genus: u32,
    insertions: &[ObjectVector],
) -> Result<BigUint> {
    round_verlinde(verlinde_value(c, genus, insertions)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::catalog_get;

    fn obj(cat: &str, label: &str) -> ObjectVector {
        ObjectVector::from_label(catalog_get(cat).unwrap(), label).unwrap()
    }

    fn counts(v: &ObjectVector) -> Vec<u64> {
        v.mult().iter().map(|m| m.to_u64().unwrap()).collect()
    }

    #[test]
    fn fusion_examples() {
        let tau = obj("fib", "tau");
        assert_eq!(counts(&fuse(&tau, &tau).unwrap()), vec![1, 1]);
        let em = fuse(&obj("toric_code", "e"), &obj("toric_code", "m")).unwrap();
        assert_eq!(em, obj("toric_code", "f"));
        let ttt = fuse(&tau, &fuse(&tau, &tau).unwrap()).unwrap();
        assert_eq!(counts(&ttt), vec![1, 2]);
        assert_eq!(unit_multiplicity(&ttt), BigUint::one());
        let ee = fuse(&obj("toric_code", "e"), &obj("toric_code", "e")).unwrap();
        assert_eq!(unit_multiplicity(&ee), BigUint::one());
    }

    #[test]
    fn fusing_across_categories_fails() {
        let err = fuse(&obj("fib", "tau"), &obj("toric_code", "e")).unwrap_err();
        assert!(matches!(err, Error::CategoryMismatch(_)));
    }

    #[test]
    fn duals() {
        let e = obj("toric_code", "e");
        assert_eq!(dual_object(&e), e);
        let z3 = catalog_get("zn_toric_3").unwrap();
        let x = ObjectVector::from_counts(z3.clone(), &[1, 2, 0, 3, 0, 0, 0, 1, 0]);
        assert_ne!(dual_object(&x), x);
        assert_eq!(dual_object(&dual_object(&x)), x);
        let u = ObjectVector::unit(z3);
        assert_eq!(dual_object(&u), u);
    }

    #[test]
    fn handle_objects() {
        assert_eq!(counts(&handle_object(&catalog_get("toric_code").unwrap())), vec![4, 0, 0, 0]);
        assert_eq!(counts(&handle_object(&catalog_get("fib").unwrap())), vec![2, 1]);
        assert_eq!(counts(&handle_object(&catalog_get("trivial").unwrap())), vec![1]);
    }

    #[test]
    fn genus_dims() {
        let tc = catalog_get("toric_code").unwrap();
        let fib = catalog_get("fib").unwrap();
        assert_eq!(genus_dim(&tc, 1, &[]).unwrap(), BigUint::from(4u32));
        assert_eq!(genus_dim(&fib, 1, &[]).unwrap(), BigUint::from(2u32));
        assert_eq!(genus_dim(&fib, 2, &[]).unwrap(), BigUint::from(5u32));
        assert_eq!(genus_dim(&tc, 0, &[]).unwrap(), BigUint::one());
        let rough = obj("toric_code", "1").add(&obj("toric_code", "e")).unwrap();
        assert_eq!(genus_dim(&tc, 0, &[rough.clone(), rough]).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn verlinde_cross_check() {
        let fib = catalog_get("fib").unwrap();
        let v = verlinde_value(&fib, 2, &[]).unwrap();
        assert!((v.re - 5.0).abs() < 1e-9 && v.im.abs() < 1e-9, "{v}");
        assert_eq!(genus_dim_verlinde(&fib, 2, &[]).unwrap(), BigUint::from(5u32));
        let tc = catalog_get("toric_code").unwrap();
        assert_eq!(genus_dim_verlinde(&tc, 3, &[]).unwrap(), BigUint::from(64u32));
        let triv = catalog_get("trivial").unwrap();
        for g in 0..6 {
            assert_eq!(genus_dim_verlinde(&triv, g, &[]).unwrap(), BigUint::one());
        }
    }

    #[test]
    fn large_genus_does_not_overflow() {
        let tc = catalog_get("toric_code").unwrap();
        assert_eq!(genus_dim(&tc, 40, &[]).unwrap(), BigUint::from(4u32).pow(40));
    }

    #[test]
    fn corrupt_s_is_reported() {
        assert!(round_verlinde(Complex64::new(2.4, 0.0)).is_err());
        assert!(round_verlinde(Complex64::new(-1.0, 0.0)).is_err());
        assert!(round_verlinde(Complex64::new(3.0, 1e-3)).is_err());
        assert_eq!(round_verlinde(Complex64::new(3.0 + 1e-10, 0.0)).unwrap(), BigUint::from(3u32));
    }
}
