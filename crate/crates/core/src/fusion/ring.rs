use crate::error::{Error, Result};
use crate::report::{IssueKind, ValidationReport};

/// Fusion rules of a rigid semisimple category: labels, unit, duality and
/// the multiplicity tensor `N[i][j][k]` (number of copies of `k` in `i ⊗ j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    fusion: Vec<u32>,
}

impl FusionRing {
    /// Builds a ring, checking only shapes and index ranges. Axioms are
    /// checked separately by [`validate_fusion_ring`].
    pub fn new(
        labels: Vec<String>,
        unit: usize,
        dual: Vec<usize>,
        fusion: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self> {
        let rank = labels.len();
        if rank == 0 {
            return Err(Error::Structure("a fusion ring needs at least one label".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Structure(format!("duplicate label `{l}`")));
            }
        }
        if unit >= rank {
            return Err(Error::Structure(format!("unit index {unit} out of range")));
        }
        if dual.len() != rank || dual.iter().any(|&d| d >= rank) {
            return Err(Error::Structure(format!(
                "dual map must have {rank} entries in range"
            )));
        }
        if fusion.len() != rank
            || fusion
                .iter()
                .any(|m| m.len() != rank || m.iter().any(|row| row.len() != rank))
        {
            return Err(Error::Structure(format!(
                "fusion tensor must be {rank}x{rank}x{rank}"
            )));
        }
        let flat = fusion.into_iter().flatten().flatten().collect();
        Ok(Self {
            labels,
            unit,
            dual,
            fusion: flat,
        })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    #[inline]
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        let r = self.rank();
        self.fusion[(i * r + j) * r + k]
    }

    /// Left multiplication matrix `N_i` with entries `[j][k] = N[i][j][k]`.
    pub fn fusion_matrix(&self, i: usize) -> Vec<Vec<u32>> {
        let r = self.rank();
        (0..r)
            .map(|j| (0..r).map(|k| self.n(i, j, k)).collect())
            .collect()
    }

    /// Pointwise product of the fusion tensors of two rings; labels are
    /// pairs `(i, j)` flattened as `i * other.rank() + j`.
    pub fn product(&self, other: &FusionRing) -> FusionRing {
        let (r1, r2) = (self.rank(), other.rank());
        let idx = |a: usize, b: usize| a * r2 + b;
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}.{b}")))
            .collect();
        let mut dual = vec![0; r1 * r2];
        for a in 0..r1 {
            for b in 0..r2 {
                dual[idx(a, b)] = idx(self.dual(a), other.dual(b));
            }
        }
        let r = r1 * r2;
        let mut fusion = vec![0; r * r * r];
        for (i1, i2, j1, j2, k1, k2) in sextuples(r1, r2) {
            let v = self.n(i1, j1, k1) * other.n(i2, j2, k2);
            fusion[(idx(i1, i2) * r + idx(j1, j2)) * r + idx(k1, k2)] = v;
        }
        FusionRing {
            labels,
            unit: idx(self.unit, other.unit),
            dual,
            fusion,
        }
    }
}

fn sextuples(r1: usize, r2: usize) -> impl Iterator<Item = (usize, usize, usize, usize, usize, usize)> {
    (0..r1 * r2 * r1 * r2 * r1 * r2).map(move |mut n| {
        let k2 = n % r2;
        n /= r2;
        let k1 = n % r1;
        n /= r1;
        let j2 = n % r2;
        n /= r2;
        let j1 = n % r1;
        n /= r1;
        let i2 = n % r2;
        let i1 = n / r2;
        (i1, i2, j1, j2, k1, k2)
    })
}

/// Checks unit law, associativity, commutativity and rigidity. Each failed
/// instance is reported with its indices.
pub fn validate_fusion_ring(ring: &FusionRing) -> ValidationReport {
    let mut report = ValidationReport::new();
    let r = ring.rank();
    let u = ring.unit();
    let name = |i: usize| ring.label(i);

    for j in 0..r {
        for k in 0..r {
            let delta = u32::from(j == k);
            if ring.n(u, j, k) != delta || ring.n(j, u, k) != delta {
                report.push(
                    IssueKind::UnitLaw,
                    format!("unit law fails at ({}, {})", name(j), name(k)),
                );
            }
        }
    }

    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                if ring.n(i, j, k) != ring.n(j, i, k) {
                    report.push(
                        IssueKind::Commutativity,
                        format!("N[{}][{}][{}] != N[{}][{}][{}]", name(i), name(j), name(k), name(j), name(i), name(k)),
                    );
                }
                for l in 0..r {
                    let left: u64 = (0..r)
                        .map(|m| u64::from(ring.n(i, j, m)) * u64::from(ring.n(m, k, l)))
                        .sum();
                    let right: u64 = (0..r)
                        .map(|m| u64::from(ring.n(j, k, m)) * u64::from(ring.n(i, m, l)))
                        .sum();
                    if left != right {
                        report.push(
                            IssueKind::Associativity,
                            format!(
                                "({0} x {1}) x {2} and {0} x ({1} x {2}) differ at {3}: {4} vs {5}",
                                name(i), name(j), name(k), name(l), left, right
                            ),
                        );
                    }
                }
            }
        }
    }

    if ring.dual(u) != u {
        report.push(IssueKind::DualInvolution, "dual of the unit is not the unit");
    }
    for i in 0..r {
        if ring.dual(ring.dual(i)) != i {
            report.push(
                IssueKind::DualInvolution,
                format!("dual is not an involution at {}", name(i)),
            );
        }
        for j in 0..r {
            let expected = u32::from(j == ring.dual(i));
            if ring.n(i, j, u) != expected {
                report.push(
                    IssueKind::Rigidity,
                    format!(
                        "N[{}][{}][unit] = {}, expected {}",
                        name(i), name(j), ring.n(i, j, u), expected
                    ),
                );
            }
        }
    }
    report
}
