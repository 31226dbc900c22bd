use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;
use std::sync::Arc;

use crate::defects::{check_wall_anomaly_free, validate_lagrangian, validate_wall, LagrangianAlgebra, WallMatrix};
use crate::error::{Error, Result};
use crate::fusion::{validate_category, ModularData};
use crate::report::{IssueKind, ValidationReport};
use crate::verlinde::ObjectVector;

/// A named point insertion (0-cell label) inside a region.
#[derive(Debug, Clone, PartialEq)]
pub struct Insertion {
    pub name: String,
    pub object: ObjectVector,
}

impl Insertion {
    pub fn new(name: impl Into<String>, object: ObjectVector) -> Self {
        Self {
            name: name.into(),
            object,
        }
    }
}

/// A maximal 2-dimensional region: a genus-`genus` surface with one hole per
/// incident wall end, point insertions, and gapped boundary circles.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionSpec {
    pub id: String,
    pub category: Arc<ModularData>,
    pub genus: u32,
    pub anyons: Vec<Insertion>,
    pub boundaries: Vec<Arc<LagrangianAlgebra>>,
}

impl RegionSpec {
    pub fn new(id: impl Into<String>, category: Arc<ModularData>, genus: u32) -> Self {
        Self {
            id: id.into(),
            category,
            genus,
            anyons: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    pub fn with_anyon(mut self, insertion: Insertion) -> Self {
        self.anyons.push(insertion);
        self
    }

    pub fn with_boundary(mut self, algebra: Arc<LagrangianAlgebra>) -> Self {
        self.boundaries.push(algebra);
        self
    }

    /// Anyons followed by boundary algebras, as point insertions.
    pub fn insertion_objects(&self) -> Vec<ObjectVector> {
        self.anyons
            .iter()
            .map(|a| a.object.clone())
            .chain(self.boundaries.iter().map(|b| b.object().clone()))
            .collect()
    }
}

/// A wall loop separating `from` (category `C`) and `to` (category `D`).
/// `from == to` is a non-separating loop.
#[derive(Debug, Clone, PartialEq)]
pub struct WallEdge {
    pub id: String,
    pub from: String,
    pub to: String,
    pub wall: Arc<WallMatrix>,
}

impl WallEdge {
    pub fn new(id: impl Into<String>, from: impl Into<String>, to: impl Into<String>, wall: Arc<WallMatrix>) -> Self {
        Self {
            id: id.into(),
            from: from.into(),
            to: to.into(),
            wall,
        }
    }
}

/// One end of a wall edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeEnd {
    From,
    To,
}

/// Region graph of a closed stratified surface.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SurfaceSpec {
    pub regions: Vec<RegionSpec>,
    pub walls: Vec<WallEdge>,
}

impl SurfaceSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_region(mut self, region: RegionSpec) -> Self {
        self.regions.push(region);
        self
    }

    pub fn with_wall(mut self, wall: WallEdge) -> Self {
        self.walls.push(wall);
        self
    }

    pub fn region_index(&self, id: &str) -> Option<usize> {
        self.regions.iter().position(|r| r.id == id)
    }

    pub fn region(&self, id: &str) -> Option<&RegionSpec> {
        self.regions.iter().find(|r| r.id == id)
    }

    pub fn wall_index(&self, id: &str) -> Option<usize> {
        self.walls.iter().position(|w| w.id == id)
    }

    /// Incident wall ends of a region, in wall order (`From` before `To` for a self-loop).
    pub fn incident_ends(&self, region: &str) -> Vec<(usize, EdgeEnd)> {
        let mut ends = Vec::new();
        for (k, w) in self.walls.iter().enumerate() {
            if w.from == region {
                ends.push((k, EdgeEnd::From));
            }
            if w.to == region {
                ends.push((k, EdgeEnd::To));
            }
        }
        ends
    }

    /// `#walls - #regions + 1`, the first Betti number of a connected region graph.
    pub fn cycle_rank(&self) -> Result<u64> {
        (self.walls.len() as u64 + 1)
            .checked_sub(self.regions.len() as u64)
            .ok_or_else(|| Error::Structure("region graph is disconnected".into()))
    }

    pub fn is_connected(&self) -> bool {
        if self.regions.is_empty() {
            return false;
        }
        let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for w in &self.walls {
            adj.entry(&w.from).or_default().push(&w.to);
            adj.entry(&w.to).or_default().push(&w.from);
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.regions[0].id.as_str()];
        while let Some(r) = stack.pop() {
            if seen.insert(r) {
                stack.extend(adj.get(r).into_iter().flatten().copied());
            }
        }
        self.regions.iter().all(|r| seen.contains(r.id.as_str()))
    }

    /// Emits the DSL text for this spec, one declaration per line. Re-parses
    /// to an equal spec whenever every wall, label and algebra name resolves
    /// in the catalog used for parsing.
    pub fn to_canonical_text(&self) -> String {
        let mut out = String::new();
        for r in &self.regions {
            write!(out, "region {} : {} genus={}", r.id, r.category.name(), r.genus).unwrap();
            if !r.anyons.is_empty() {
                let names: Vec<_> = r.anyons.iter().map(|a| a.name.as_str()).collect();
                write!(out, " anyons=[{}]", names.join(",")).unwrap();
            }
            if !r.boundaries.is_empty() {
                let names: Vec<_> = r.boundaries.iter().map(|b| b.name()).collect();
                write!(out, " boundaries=[{}]", names.join(",")).unwrap();
            }
            out.push('\n');
        }
        for w in &self.walls {
            writeln!(out, "wall {} : {} -> {} matrix={}", w.id, w.from, w.to, w.wall.name()).unwrap();
        }
        out
    }
}

/// Genus of the closed surface: `Σ genus_r + (#walls - #regions + 1)`.
pub fn total_genus(spec: &SurfaceSpec) -> Result<u64> {
    if !spec.is_connected() {
        return Err(Error::Structure("region graph is disconnected".into()));
    }
    let g: u64 = spec.regions.iter().map(|r| u64::from(r.genus)).sum();
    Ok(g + spec.cycle_rank()?)
}

/// Checks the anomaly-free conditions on every label plus graph consistency.
pub fn validate_surface(spec: &SurfaceSpec) -> ValidationReport {
    let mut report = ValidationReport::new();
    if spec.regions.is_empty() {
        report.push(IssueKind::Empty, "surface has no regions");
        return report;
    }

    let mut ids = BTreeSet::new();
    for id in spec.regions.iter().map(|r| &r.id).chain(spec.walls.iter().map(|w| &w.id)) {
        if !ids.insert(id.as_str()) {
            report.push(IssueKind::DuplicateId, format!("duplicate id `{id}`"));
        }
    }

    let mut checked: Vec<&ModularData> = Vec::new();
    for r in &spec.regions {
        if !checked.iter().any(|c| c.same_as(&r.category)) {
            checked.push(&r.category);
            let cat_report = validate_category(&r.category);
            report.extend_with_context(&format!("region `{}`", r.id), cat_report);
        }
        for a in &r.anyons {
            if !a.object.category().same_as(&r.category) {
                report.push(
                    IssueKind::CategoryMismatch,
                    format!("region `{}`: anyon `{}` is not over {}", r.id, a.name, r.category.name()),
                );
            }
        }
        for b in &r.boundaries {
            let lag = validate_lagrangian(&r.category, b.object());
            report.extend_with_context(&format!("region `{}` boundary `{}`", r.id, b.name()), lag);
        }
    }

    for w in &spec.walls {
        let ctx = format!("wall `{}`", w.id);
        let (from, to) = (spec.region(&w.from), spec.region(&w.to));
        for (end, region) in [(&w.from, from), (&w.to, to)] {
            if region.is_none() {
                report.push(IssueKind::DanglingReference, format!("{ctx}: no region `{end}`"));
            }
        }
        if let (Some(f), Some(t)) = (from, to) {
            if !w.wall.from_cat().same_as(&f.category) || !w.wall.to_cat().same_as(&t.category) {
                report.push(
                    IssueKind::CategoryMismatch,
                    format!(
                        "{ctx}: matrix `{}` is {} -> {} but regions are {} -> {}",
                        w.wall.name(),
                        w.wall.from_cat().name(),
                        w.wall.to_cat().name(),
                        f.category.name(),
                        t.category.name()
                    ),
                );
                continue;
            }
        }
        report.extend_with_context(&ctx, validate_wall(&w.wall));
        report.extend_with_context(&ctx, check_wall_anomaly_free(&w.wall));
    }

    if !spec.is_connected() {
        report.push(IssueKind::Connectivity, "region graph is not connected");
    }
    report
}
