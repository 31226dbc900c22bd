//! Validation reports shared by every validator in the crate.

use std::fmt;

/// Which invariant an issue violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IssueKind {
    UnitLaw,
    Associativity,
    Rigidity,
    DualInvolution,
    Commutativity,
    Unitarity,
    Symmetry,
    FirstRow,
    QuantumDimension,
    Verlinde,
    Twist,
    Connectedness,
    Dimension,
    ModularInvariance,
    WallUnit,
    SCommutation,
    TCommutation,
    AnomalyFree,
    Connectivity,
    CategoryMismatch,
    DanglingReference,
    DuplicateId,
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub kind: IssueKind,
    pub message: String,
}

/// A list of violated invariants. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, kind: IssueKind, message: impl Into<String>) {
        self.issues.push(Issue {
            kind,
            message: message.into(),
        });
    }

    /// Appends every issue of `other`, prefixing messages with `context`.
    pub fn extend_with_context(&mut self, context: &str, other: ValidationReport) {
        for issue in other.issues {
            self.issues.push(Issue {
                kind: issue.kind,
                message: format!("{context}: {}", issue.message),
            });
        }
    }

    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn issues(&self) -> &[Issue] {
        &self.issues
    }

    pub fn has(&self, kind: IssueKind) -> bool {
        self.issues.iter().any(|i| i.kind == kind)
    }

    pub fn len(&self) -> usize {
        self.issues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "valid");
        }
        for (n, issue) in self.issues.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            write!(f, "[{:?}] {}", issue.kind, issue.message)?;
        }
        Ok(())
    }
}
