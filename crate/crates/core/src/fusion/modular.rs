use num_complex::Complex64;

use super::ring::{validate_fusion_ring, FusionRing};
use crate::error::{Error, Result};
use crate::report::{IssueKind, ValidationReport};

/// Tolerance for axiom checks on floating-point modular data.
pub const EPS: f64 = 1e-9;
/// Tolerance for checks that compare against integers (Verlinde, S-eigenvectors).
pub const INTEGER_TOL: f64 = 1e-6;

/// Numerical shadow of a unitary modular tensor category.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularData {
    name: String,
    ring: FusionRing,
    s: Vec<Complex64>,
    theta: Vec<Complex64>,
    qdim: Vec<f64>,
    total_dim: f64,
}

impl ModularData {
    /// Assembles modular data, checking shapes only. When `qdim` is absent it
    /// is recomputed as `S[unit][i] / S[unit][unit]`.
    pub fn new(
        name: impl Into<String>,
        ring: FusionRing,
        s: Vec<Vec<Complex64>>,
        theta: Vec<Complex64>,
        qdim: Option<Vec<f64>>,
    ) -> Result<Self> {
        let r = ring.rank();
        if s.len() != r || s.iter().any(|row| row.len() != r) {
            return Err(Error::Structure(format!("S must be {r}x{r}")));
        }
        if theta.len() != r {
            return Err(Error::Structure(format!("theta must have {r} entries")));
        }
        let s: Vec<Complex64> = s.into_iter().flatten().collect();
        let u = ring.unit();
        let qdim = match qdim {
            Some(q) if q.len() != r => {
                return Err(Error::Structure(format!("qdim must have {r} entries")))
            }
            Some(q) => q,
            None => {
                let s00 = s[u * r + u].re;
                (0..r).map(|i| s[u * r + i].re / s00).collect()
            }
        };
        let total_dim = qdim.iter().map(|d| d * d).sum::<f64>().sqrt();
        Ok(Self {
            name: name.into(),
            ring,
            s,
            theta,
            qdim,
            total_dim,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn unit(&self) -> usize {
        self.ring.unit()
    }

    pub fn dual(&self, i: usize) -> usize {
        self.ring.dual(i)
    }

    pub fn label(&self, i: usize) -> &str {
        self.ring.label(i)
    }

    pub fn labels(&self) -> &[String] {
        self.ring.labels()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.ring.index_of(label)
    }

    #[inline]
    pub fn s(&self, i: usize, j: usize) -> Complex64 {
        self.s[i * self.rank() + j]
    }

    pub fn s_matrix(&self) -> Vec<Vec<Complex64>> {
        self.s.chunks(self.rank()).map(<[_]>::to_vec).collect()
    }

    pub fn theta(&self, i: usize) -> Complex64 {
        self.theta[i]
    }

    pub fn thetas(&self) -> &[Complex64] {
        &self.theta
    }

    pub fn qdim(&self, i: usize) -> f64 {
        self.qdim[i]
    }

    pub fn qdims(&self) -> &[f64] {
        &self.qdim
    }

    pub fn total_dim(&self) -> f64 {
        self.total_dim
    }

    /// Whether `self` and `other` describe the same category (same name and data).
    pub fn same_as(&self, other: &ModularData) -> bool {
        std::ptr::eq(self, other) || self == other
    }
}

/// Checks unitarity and symmetry of S, the first row, twist axioms and
/// Verlinde consistency against the fusion rules. Compatibility between
/// twists and S (`(ST)^3 ∝ S^2`) is not checked.
pub fn validate_modular_data(md: &ModularData) -> ValidationReport {
    let mut report = ValidationReport::new();
    let r = md.rank();
    let u = md.unit();
    let d_total = md.total_dim();

    let mut unitarity = 0.0f64;
    let mut symmetry = 0.0f64;
    for i in 0..r {
        for j in 0..r {
            let dot: Complex64 = (0..r).map(|a| md.s(i, a) * md.s(j, a).conj()).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            unitarity = unitarity.max((dot - target).norm());
            symmetry = symmetry.max((md.s(i, j) - md.s(j, i)).norm());
        }
    }
    if unitarity > EPS {
        report.push(
            IssueKind::Unitarity,
            format!("S is not unitary (max residual {unitarity:.3e})"),
        );
    }
    if symmetry > EPS {
        report.push(
            IssueKind::Symmetry,
            format!("S is not symmetric (max residual {symmetry:.3e})"),
        );
    }

    let dsq: f64 = md.qdims().iter().map(|d| d * d).sum();
    if (dsq.sqrt() - d_total).abs() > EPS {
        report.push(IssueKind::QuantumDimension, "D^2 != sum of d_i^2");
    }
    for i in 0..r {
        let s0i = md.s(u, i);
        let expected = md.qdim(i) / d_total;
        if md.qdim(i).is_nan() || md.qdim(i) <= 0.0 || s0i.re <= EPS || s0i.im.abs() > EPS || (s0i.re - expected).abs() > EPS {
            report.push(
                IssueKind::FirstRow,
                format!(
                    "S[unit][{}] = {:.6} + {:.6}i, expected d/D = {:.6} > 0",
                    md.label(i),
                    s0i.re,
                    s0i.im,
                    expected
                ),
            );
        }
    }

    if (md.theta(u) - Complex64::new(1.0, 0.0)).norm() > EPS {
        report.push(IssueKind::Twist, "twist of the unit is not 1");
    }
    for i in 0..r {
        if (md.theta(i).norm() - 1.0).abs() > EPS {
            report.push(
                IssueKind::Twist,
                format!("twist of {} is not unit-modulus", md.label(i)),
            );
        }
        if (md.theta(i) - md.theta(md.dual(i))).norm() > EPS {
            report.push(
                IssueKind::Twist,
                format!("twist of {} differs from its dual", md.label(i)),
            );
        }
    }

    // Verlinde: N_ij^k = sum_a S_ia S_ja conj(S_ka) / S_0a. Skipped when the
    // first row has zeros, which is already reported above.
    if (0..r).all(|a| md.s(u, a).norm() > EPS) {
        let mut worst = 0.0f64;
        let mut first_bad = None;
        for i in 0..r {
            for j in 0..r {
                let sij: Vec<Complex64> = (0..r).map(|a| md.s(i, a) * md.s(j, a) / md.s(u, a)).collect();
                for k in 0..r {
                    let v: Complex64 = (0..r).map(|a| sij[a] * md.s(k, a).conj()).sum();
                    let res = (v - Complex64::new(f64::from(md.ring().n(i, j, k)), 0.0)).norm();
                    if res > worst {
                        worst = res;
                    }
                    if res >= INTEGER_TOL && first_bad.is_none() {
                        first_bad = Some((i, j, k, v));
                    }
                }
            }
        }
        if let Some((i, j, k, v)) = first_bad {
            report.push(
                IssueKind::Verlinde,
                format!(
                    "Verlinde formula gives {:.6} for N[{}][{}][{}] = {} (max residual {worst:.3e})",
                    v.re,
                    md.label(i),
                    md.label(j),
                    md.label(k),
                    md.ring().n(i, j, k)
                ),
            );
        }
    }
    report
}

/// Fusion-ring and modular checks together.
pub fn validate_category(md: &ModularData) -> ValidationReport {
    let mut report = validate_fusion_ring(md.ring());
    let modular = validate_modular_data(md);
    report.extend_with_context(md.name(), modular);
    report
}

fn require_valid(md: &ModularData) -> Result<()> {
    let report = validate_category(md);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Invalid(report))
    }
}

/// Deligne product `C ⊠ D`: labels are pairs `c.d`, fusion multiplies
/// pointwise, S is the Kronecker product and twists multiply.
pub fn deligne_product(c: &ModularData, d: &ModularData) -> Result<ModularData> {
    require_valid(c)?;
    require_valid(d)?;
    Ok(deligne_product_unchecked(c, d))
}

pub(crate) fn deligne_product_unchecked(c: &ModularData, d: &ModularData) -> ModularData {
    let ring = c.ring().product(d.ring());
    let (r1, r2) = (c.rank(), d.rank());
    let r = r1 * r2;
    let mut s = vec![Complex64::default(); r * r];
    for i1 in 0..r1 {
        for i2 in 0..r2 {
            for j1 in 0..r1 {
                for j2 in 0..r2 {
                    s[(i1 * r2 + i2) * r + j1 * r2 + j2] = c.s(i1, j1) * d.s(i2, j2);
                }
            }
        }
    }
    let theta = (0..r1)
        .flat_map(|i| (0..r2).map(move |j| (i, j)))
        .map(|(i, j)| c.theta(i) * d.theta(j))
        .collect();
    let qdim: Vec<f64> = (0..r1)
        .flat_map(|i| (0..r2).map(move |j| (i, j)))
        .map(|(i, j)| c.qdim(i) * d.qdim(j))
        .collect();
    let total_dim = c.total_dim() * d.total_dim();
    ModularData {
        name: format!("{}.{}", c.name(), d.name()),
        ring,
        s,
        theta,
        qdim,
        total_dim,
    }
}

/// The reversed-braiding category: S and twists conjugated, fusion unchanged.
pub fn conjugate(c: &ModularData) -> ModularData {
    let name = match c.name().strip_suffix("_bar") {
        Some(base) => base.to_string(),
        None => format!("{}_bar", c.name()),
    };
    ModularData {
        name,
        ring: c.ring.clone(),
        s: c.s.iter().map(Complex64::conj).collect(),
        theta: c.theta.iter().map(Complex64::conj).collect(),
        qdim: c.qdim.clone(),
        total_dim: c.total_dim,
    }
}
