//! Gapped boundaries (Lagrangian algebras) and domain walls (W-matrices).
//!
//! A wall between `C` and `D` is recorded by its tunneling matrix `W`, where
//! `W[i][j]` is the multiplicity of `i ⊠ j*` in the algebra the wall induces
//! in `C̄ ⊠ D`. Only necessary conditions for Lagrangian-ness are checkable
//! from `(N, S, θ)`; algebra structures are never constructed.

use std::sync::Arc;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fusion::modular::deligne_product_unchecked;
use crate::fusion::{conjugate, trivial_category, ModularData, EPS, INTEGER_TOL};
use crate::report::{IssueKind, ValidationReport};
use crate::verlinde::ObjectVector;

#[derive(Debug, Clone, PartialEq)]
pub struct LagrangianAlgebra {
    name: String,
    object: ObjectVector,
}

impl LagrangianAlgebra {
    /// Wraps a multiplicity vector. Use [`validate_lagrangian`] to check it.
    pub fn new(name: impl Into<String>, object: ObjectVector) -> Self {
        Self {
            name: name.into(),
            object,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object(&self) -> &ObjectVector {
        &self.object
    }

    pub fn category(&self) -> &Arc<ModularData> {
        self.object.category()
    }
}

/// Checks connectedness, `dim A = D`, trivial twists on the support and
/// `S n = n`.
pub fn validate_lagrangian(c: &ModularData, n: &ObjectVector) -> ValidationReport {
    let mut report = ValidationReport::new();
    if !n.category().same_as(c) {
        report.push(
            IssueKind::CategoryMismatch,
            format!("object over {} checked against {}", n.category().name(), c.name()),
        );
        return report;
    }
    let u = c.unit();
    if !n.get(u).is_one() {
        report.push(
            IssueKind::Connectedness,
            format!("unit multiplicity is {}, expected 1", n.get(u)),
        );
    }
    let dim = n.dimension();
    if (dim - c.total_dim()).abs() > EPS * c.total_dim().max(1.0) {
        report.push(
            IssueKind::Dimension,
            format!("dim A = {dim:.9}, expected D = {:.9}", c.total_dim()),
        );
    }
    for i in n.support() {
        if (c.theta(i) - Complex64::new(1.0, 0.0)).norm() > EPS {
            report.push(
                IssueKind::Twist,
                format!(
                    "{} has twist {:.6} + {:.6}i != 1 but occurs in A",
                    c.label(i),
                    c.theta(i).re,
                    c.theta(i).im
                ),
            );
        }
    }
    let counts: Vec<f64> = n.mult().iter().map(|m| m.to_f64().unwrap_or(f64::INFINITY)).collect();
    for i in 0..c.rank() {
        let sn: Complex64 = (0..c.rank()).map(|j| c.s(i, j) * counts[j]).sum();
        if (sn - Complex64::new(counts[i], 0.0)).norm() > INTEGER_TOL {
            report.push(
                IssueKind::ModularInvariance,
                format!("(S n)_{} = {:.6}, expected {}", c.label(i), sn.re, counts[i]),
            );
        }
    }
    report
}

/// Tunneling matrix of a wall from `C` (rows) to `D` (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct WallMatrix {
    name: String,
    from: Arc<ModularData>,
    to: Arc<ModularData>,
    w: Vec<Vec<u64>>,
}

impl WallMatrix {
    pub fn new(
        name: impl Into<String>,
        from: Arc<ModularData>,
        to: Arc<ModularData>,
        w: Vec<Vec<u64>>,
    ) -> Result<Self> {
        let name = name.into();
        if w.len() != from.rank() || w.iter().any(|row| row.len() != to.rank()) {
            return Err(Error::Structure(format!(
                "wall `{name}` must be {}x{} ({} -> {})",
                from.rank(),
                to.rank(),
                from.name(),
                to.name()
            )));
        }
        Ok(Self { name, from, to, w })
    }

    pub fn identity(c: Arc<ModularData>) -> Self {
        let r = c.rank();
        let w = (0..r)
            .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
            .collect();
        Self {
            name: format!("id_{}", c.name()),
            from: c.clone(),
            to: c,
            w,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn from_cat(&self) -> &Arc<ModularData> {
        &self.from
    }

    pub fn to_cat(&self) -> &Arc<ModularData> {
        &self.to
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.w
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.w[i][j]
    }

    pub fn rows(&self) -> usize {
        self.w.len()
    }

    pub fn cols(&self) -> usize {
        self.to.rank()
    }
}

/// `W[unit][unit] = 1`, `S^C W = W S^D` and `T^C W = W T^D`.
pub fn validate_wall(w: &WallMatrix) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (c, d) = (w.from_cat(), w.to_cat());
    if w.get(c.unit(), d.unit()) != 1 {
        report.push(
            IssueKind::WallUnit,
            format!("W[unit][unit] = {}, expected 1", w.get(c.unit(), d.unit())),
        );
    }
    let (rc, rd) = (c.rank(), d.rank());
    let mut s_res = 0.0f64;
    let mut t_res = 0.0f64;
    for i in 0..rc {
        for j in 0..rd {
            let sw: Complex64 = (0..rc).map(|k| c.s(i, k) * w.get(k, j) as f64).sum();
            let ws: Complex64 = (0..rd).map(|k| d.s(k, j) * w.get(i, k) as f64).sum();
            s_res = s_res.max((sw - ws).norm());
            let wij = w.get(i, j) as f64;
            t_res = t_res.max(((c.theta(i) - d.theta(j)) * wij).norm());
        }
    }
    if s_res > INTEGER_TOL {
        report.push(
            IssueKind::SCommutation,
            format!("S^C W != W S^D (max residual {s_res:.3e})"),
        );
    }
    if t_res > INTEGER_TOL {
        report.push(
            IssueKind::TCommutation,
            format!("T^C W != W T^D (max residual {t_res:.3e})"),
        );
    }
    report
}

/// The object `⊕ W[i][j] · i ⊠ j*` over `C̄ ⊠ D`.
pub fn wall_to_lagrangian(w: &WallMatrix) -> ObjectVector {
    let (c, d) = (w.from_cat(), w.to_cat());
    let product = Arc::new(deligne_product_unchecked(&conjugate(c), d));
    let rd = d.rank();
    let mut mult = vec![BigUint::zero(); c.rank() * rd];
    for i in 0..c.rank() {
        for j in 0..rd {
            mult[i * rd + d.dual(j)] = BigUint::from(w.get(i, j));
        }
    }
    ObjectVector::from_mult(product, mult).expect("product rank matches")
}

/// A wall is anomaly-free iff its associated object is Lagrangian in `C̄ ⊠ D`.
pub fn check_wall_anomaly_free(w: &WallMatrix) -> ValidationReport {
    let object = wall_to_lagrangian(w);
    let inner = validate_lagrangian(object.category(), &object);
    let mut report = ValidationReport::new();
    if !inner.is_valid() {
        report.push(
            IssueKind::AnomalyFree,
            format!("wall `{}` does not induce a Lagrangian algebra", w.name()),
        );
        report.extend_with_context(w.name(), inner);
    }
    report
}

fn checked_product(a: &WallMatrix, b: &WallMatrix) -> Result<Vec<Vec<u64>>> {
    let mut out = vec![vec![0u64; b.cols()]; a.rows()];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut acc = 0u64;
            for k in 0..a.cols() {
                acc = a
                    .get(i, k)
                    .checked_mul(b.get(k, j))
                    .and_then(|p| acc.checked_add(p))
                    .ok_or_else(|| Error::Structure("wall product overflows u64".into()))?;
            }
            *cell = acc;
        }
    }
    Ok(out)
}

/// Fusion of parallel walls: `W1 · W2`.
pub fn compose_walls(w1: &WallMatrix, w2: &WallMatrix) -> Result<WallMatrix> {
    if !w1.to_cat().same_as(w2.from_cat()) {
        return Err(Error::CategoryMismatch(format!(
            "cannot compose `{}` ({} -> {}) with `{}` ({} -> {})",
            w1.name(),
            w1.from_cat().name(),
            w1.to_cat().name(),
            w2.name(),
            w2.from_cat().name(),
            w2.to_cat().name()
        )));
    }
    Ok(WallMatrix {
        name: format!("{}.{}", w1.name(), w2.name()),
        from: w1.from.clone(),
        to: w2.to.clone(),
        w: checked_product(w1, w2)?,
    })
}

/// Orientation flip: `W'[j][i] = W[dual(i)][dual(j)]`.
pub fn reverse_wall(w: &WallMatrix) -> WallMatrix {
    let (c, d) = (w.from_cat(), w.to_cat());
    let mut out = vec![vec![0u64; c.rank()]; d.rank()];
    for (j, row) in out.iter_mut().enumerate() {
        for (i, cell) in row.iter_mut().enumerate() {
            *cell = w.get(c.dual(i), d.dual(j));
        }
    }
    let name = match w.name().strip_suffix("~") {
        Some(base) => base.to_string(),
        None => format!("{}~", w.name()),
    };
    WallMatrix {
        name,
        from: w.to.clone(),
        to: w.from.clone(),
        w: out,
    }
}

/// A gapped boundary as a wall to the trivial category: `W[i][unit] = n_i`.
pub fn boundary_wall_from_lagrangian(a: &LagrangianAlgebra) -> Result<WallMatrix> {
    let trivial = trivial_category();
    let w = a
        .object()
        .mult()
        .iter()
        .map(|m| {
            m.to_u64()
                .map(|v| vec![v])
                .ok_or_else(|| Error::Structure("multiplicity exceeds u64".into()))
        })
        .collect::<Result<_>>()?;
    WallMatrix::new(format!("{}_wall", a.name()), a.category().clone(), trivial, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{catalog_get, Catalog};

    fn tc() -> Arc<ModularData> {
        catalog_get("toric_code").unwrap()
    }

    fn tc_object(counts: [u64; 4]) -> ObjectVector {
        ObjectVector::from_counts(tc(), &counts)
    }

    fn wall(m: Vec<Vec<u64>>) -> WallMatrix {
        WallMatrix::new("w", tc(), tc(), m).unwrap()
    }

    fn swap() -> WallMatrix {
        Catalog::builtin().wall("em_swap").unwrap().as_ref().clone()
    }

    #[test]
    fn toric_boundaries() {
        assert!(validate_lagrangian(&tc(), &tc_object([1, 1, 0, 0])).is_valid());
        assert!(validate_lagrangian(&tc(), &tc_object([1, 0, 1, 0])).is_valid());
        let f = validate_lagrangian(&tc(), &tc_object([1, 0, 0, 1]));
        assert!(f.has(IssueKind::Twist), "{f}");
        let lonely = validate_lagrangian(&tc(), &tc_object([1, 0, 0, 0]));
        assert!(lonely.has(IssueKind::Dimension));
        assert!(lonely.has(IssueKind::ModularInvariance));
        let two = validate_lagrangian(&tc(), &tc_object([2, 0, 0, 0]));
        assert!(two.has(IssueKind::Connectedness));
    }

    #[test]
    fn z3_boundaries() {
        let cat = Catalog::builtin();
        for name in ["z3_electric", "z3_magnetic"] {
            let a = cat.algebra(name).unwrap();
            let report = validate_lagrangian(a.category(), a.object());
            assert!(report.is_valid(), "{name}: {report}");
        }
    }

    #[test]
    fn wall_validation() {
        assert!(validate_wall(&WallMatrix::identity(tc())).is_valid());
        assert!(validate_wall(&swap()).is_valid());
        let ones = validate_wall(&wall(vec![vec![1; 4]; 4]));
        assert!(!ones.has(IssueKind::WallUnit));
        assert!(ones.has(IssueKind::SCommutation));
        let e_to_f = validate_wall(&wall(vec![
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
            vec![0, 1, 0, 0],
        ]));
        assert!(e_to_f.has(IssueKind::TCommutation));
    }

    #[test]
    fn wall_objects() {
        let id = wall_to_lagrangian(&WallMatrix::identity(tc()));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(id.get(i * 4 + j).to_u64().unwrap(), u64::from(i == j));
            }
        }
        let s = wall_to_lagrangian(&swap());
        let support: Vec<_> = s.support().map(|k| s.category().label(k).to_string()).collect();
        assert_eq!(support, ["1.1", "e.m", "m.e", "f.f"]);

        let rough = Catalog::builtin().wall("rough_wall").unwrap();
        let r = wall_to_lagrangian(&rough);
        assert_eq!(r.mult().iter().map(|m| m.to_u64().unwrap()).collect::<Vec<_>>(), [1, 1, 0, 0]);
    }

    #[test]
    fn anomaly_free_walls() {
        assert!(check_wall_anomaly_free(&swap()).is_valid());
        let fib = catalog_get("fib").unwrap();
        assert!(check_wall_anomaly_free(&WallMatrix::identity(fib)).is_valid());
        let z3 = catalog_get("zn_toric_3").unwrap();
        assert!(check_wall_anomaly_free(&WallMatrix::identity(z3)).is_valid());
        let diag = check_wall_anomaly_free(&wall(vec![
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 0],
        ]));
        assert!(diag.has(IssueKind::AnomalyFree));
        assert!(diag.has(IssueKind::Dimension));
    }

    #[test]
    fn composition() {
        let id = WallMatrix::identity(tc());
        let s = swap();
        assert_eq!(compose_walls(&id, &s).unwrap().matrix(), s.matrix());
        assert_eq!(compose_walls(&s, &s).unwrap().matrix(), id.matrix());
        let rough = Catalog::builtin().wall("rough_wall").unwrap();
        let outer = compose_walls(&rough, &reverse_wall(&rough)).unwrap();
        let v = [1u64, 1, 0, 0];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(outer.get(i, j), v[i] * v[j]);
            }
        }
        assert!(validate_wall(&outer).is_valid());
        let fib = catalog_get("fib").unwrap();
        assert!(matches!(
            compose_walls(&s, &WallMatrix::identity(fib)),
            Err(Error::CategoryMismatch(_))
        ));
    }

    #[test]
    fn reversal() {
        let id = WallMatrix::identity(tc());
        assert_eq!(reverse_wall(&id).matrix(), id.matrix());
        let s = swap();
        assert_eq!(reverse_wall(&s).matrix(), s.matrix());
        assert_eq!(reverse_wall(&reverse_wall(&s)), s);
        let rough = Catalog::builtin().wall("rough_wall").unwrap();
        let rev = reverse_wall(&rough);
        assert_eq!(rev.matrix(), &[vec![1, 1, 0, 0]]);
        assert!(validate_wall(&rev).is_valid());
    }

    #[test]
    fn boundary_walls() {
        let cat = Catalog::builtin();
        let rough = boundary_wall_from_lagrangian(&cat.algebra("rough").unwrap()).unwrap();
        assert_eq!(rough.matrix(), &[vec![1], vec![1], vec![0], vec![0]]);
        let smooth = boundary_wall_from_lagrangian(&cat.algebra("smooth").unwrap()).unwrap();
        assert_eq!(smooth.matrix(), &[vec![1], vec![0], vec![1], vec![0]]);
        let vac = boundary_wall_from_lagrangian(&cat.algebra("vacuum").unwrap()).unwrap();
        assert_eq!(vac.matrix(), &[vec![1]]);
        assert!(check_wall_anomaly_free(&rough).is_valid());
    }
}
