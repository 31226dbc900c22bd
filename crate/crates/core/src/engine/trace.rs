use std::fmt;

/// What kind of excision step a trace entry records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// A handle replaced by the insertion `H = ⊕ i ⊗ i*`.
    GenusCut,
    /// A gapped boundary circle capped by a disk, leaving its algebra as an insertion.
    CapBoundary,
    /// Local multiplicity table of a region with holes at its wall ends.
    Region,
    /// Gluing across a wall end: summing over the simple label on that end.
    Excision,
    /// Two parallel walls fused through a bare annulus.
    WallFusion,
    Result,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub kind: StepKind,
    pub description: String,
    /// Summary of the contraction state after the step.
    pub state: String,
}

/// Ordered log of the steps taken while reducing a surface.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub(crate) fn record(&mut self, kind: StepKind, description: impl Into<String>, state: impl Into<String>) {
        self.steps.push(TraceStep {
            kind,
            description: description.into(),
            state: state.into(),
        });
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StepKind::GenusCut => "genus cut",
            StepKind::CapBoundary => "cap boundary",
            StepKind::Region => "region",
            StepKind::Excision => "excision",
            StepKind::WallFusion => "wall fusion",
            StepKind::Result => "result",
        };
        f.write_str(s)
    }
}

impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, step) in self.steps.iter().enumerate() {
            writeln!(f, "{:>3}. [{}] {}", n + 1, step.kind, step.description)?;
            if !step.state.is_empty() {
                writeln!(f, "     {}", step.state)?;
            }
        }
        Ok(())
    }
}
