//! Local rewrites of a region graph. Each move leaves the ground-state
//! degeneracy unchanged.

use std::sync::Arc;

use thiserror::Error;

use crate::defects::{compose_walls, reverse_wall, WallMatrix};
use crate::surface::{EdgeEnd, Insertion, RegionSpec, SurfaceSpec, WallEdge};
use crate::verlinde::{fuse, handle_object};

/// How [`Move::SplitRegionTransparent`] distributes a region. Listed items
/// move to the new region; everything else stays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub new_region: String,
    pub new_wall: String,
    pub genus: u32,
    pub anyons: Vec<usize>,
    pub boundaries: Vec<usize>,
    /// Wall ends (wall id, end) re-attached to the new region.
    pub ends: Vec<(String, EdgeEnd)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// Replace two insertions of a region by their fusion product.
    FuseAnyons { region: String, first: usize, second: usize },
    /// Replace `wall – bare annulus – wall` by the composite wall.
    ComposeParallelWalls { first: String, middle: String, second: String },
    /// Split a region in two, joined by a transparent (identity) wall.
    SplitRegionTransparent { region: String, partition: Partition },
    /// Trade one handle of a region for an insertion of `⊕ i ⊗ i*`.
    CutHandle { region: String },
    /// Cap a gapped boundary circle, leaving its algebra as an insertion.
    CapBoundary { region: String, boundary: usize },
    /// Flip a wall's orientation, replacing its matrix by the reversed wall.
    ReverseEdge { edge: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("FuseAnyons not applicable: {0}")]
    FuseAnyons(String),
    #[error("ComposeParallelWalls not applicable: {0}")]
    ComposeParallelWalls(String),
    #[error("SplitRegionTransparent not applicable: {0}")]
    SplitRegionTransparent(String),
    #[error("CutHandle not applicable: {0}")]
    CutHandle(String),
    #[error("CapBoundary not applicable: {0}")]
    CapBoundary(String),
    #[error("ReverseEdge not applicable: {0}")]
    ReverseEdge(String),
}

fn region_mut<'a>(
    spec: &'a mut SurfaceSpec,
    id: &str,
    err: fn(String) -> MoveError,
) -> Result<&'a mut RegionSpec, MoveError> {
    spec.regions
        .iter_mut()
        .find(|r| r.id == id)
        .ok_or_else(|| err(format!("no region `{id}`")))
}

fn reverse_edge(edge: &mut WallEdge) {
    std::mem::swap(&mut edge.from, &mut edge.to);
    edge.wall = Arc::new(reverse_wall(&edge.wall));
}

fn id_taken(spec: &SurfaceSpec, id: &str) -> bool {
    spec.regions.iter().any(|r| r.id == id) || spec.walls.iter().any(|w| w.id == id)
}

/// Applies `mv`, returning the rewritten spec.
pub fn apply_move(spec: &SurfaceSpec, mv: &Move) -> Result<SurfaceSpec, MoveError> {
    let mut out = spec.clone();
    match mv {
        Move::FuseAnyons { region, first, second } => {
            let r = region_mut(&mut out, region, MoveError::FuseAnyons)?;
            let n = r.anyons.len();
            if *first >= n || *second >= n {
                return Err(MoveError::FuseAnyons(format!(
                    "region `{region}` has {n} anyons, indices {first} and {second} given"
                )));
            }
            if first == second {
                return Err(MoveError::FuseAnyons("cannot fuse an anyon with itself".into()));
            }
            let (lo, hi) = (*first.min(second), *first.max(second));
            let b = r.anyons.remove(hi);
            let a = &r.anyons[lo];
            let object = fuse(&a.object, &b.object).map_err(|e| MoveError::FuseAnyons(e.to_string()))?;
            r.anyons[lo] = Insertion::new(format!("({}⊗{})", a.name, b.name), object);
        }

        Move::ComposeParallelWalls { first, middle, second } => {
            let err = MoveError::ComposeParallelWalls;
            if first == second {
                return Err(err("the two walls must differ".into()));
            }
            let mid = out.region(middle).ok_or_else(|| err(format!("no region `{middle}`")))?;
            if mid.genus != 0 || !mid.anyons.is_empty() || !mid.boundaries.is_empty() {
                return Err(err(format!("region `{middle}` is not a bare annulus")));
            }
            let ends = out.incident_ends(middle);
            let k1 = out.wall_index(first).ok_or_else(|| err(format!("no wall `{first}`")))?;
            let k2 = out.wall_index(second).ok_or_else(|| err(format!("no wall `{second}`")))?;
            let mut touched: Vec<usize> = ends.iter().map(|(k, _)| *k).collect();
            touched.sort_unstable();
            let mut expected = vec![k1, k2];
            expected.sort_unstable();
            if touched != expected {
                return Err(err(format!(
                    "region `{middle}` must have exactly the two wall ends `{first}` and `{second}`"
                )));
            }
            // orient as  R1 --first--> middle --second--> R2
            if out.walls[k1].to != *middle {
                reverse_edge(&mut out.walls[k1]);
            }
            if out.walls[k2].from != *middle {
                reverse_edge(&mut out.walls[k2]);
            }
            let composite = compose_walls(&out.walls[k1].wall, &out.walls[k2].wall).map_err(|e| err(e.to_string()))?;
            let target = out.walls[k2].to.clone();
            out.walls[k1].to = target;
            out.walls[k1].wall = Arc::new(composite);
            out.walls.remove(k2);
            out.regions.retain(|r| r.id != *middle);
        }

        Move::SplitRegionTransparent { region, partition } => {
            let err = MoveError::SplitRegionTransparent;
            let p = partition;
            if id_taken(&out, &p.new_region) || id_taken(&out, &p.new_wall) || p.new_region == p.new_wall {
                return Err(err("new region and wall ids must be fresh and distinct".into()));
            }
            let r = region_mut(&mut out, region, err)?;
            if p.genus > r.genus {
                return Err(err(format!("cannot move genus {} out of genus {}", p.genus, r.genus)));
            }
            let check = |idx: &[usize], len: usize, what: &str| -> Result<(), MoveError> {
                let mut sorted = idx.to_vec();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != idx.len() || sorted.iter().any(|&i| i >= len) {
                    return Err(err(format!("invalid {what} indices {idx:?}")));
                }
                Ok(())
            };
            check(&p.anyons, r.anyons.len(), "anyon")?;
            check(&p.boundaries, r.boundaries.len(), "boundary")?;

            let mut new = RegionSpec::new(p.new_region.clone(), r.category.clone(), p.genus);
            r.genus -= p.genus;
            let mut keep = Vec::new();
            for (i, a) in std::mem::take(&mut r.anyons).into_iter().enumerate() {
                if p.anyons.contains(&i) { new.anyons.push(a) } else { keep.push(a) }
            }
            r.anyons = keep;
            let mut keep = Vec::new();
            for (i, b) in std::mem::take(&mut r.boundaries).into_iter().enumerate() {
                if p.boundaries.contains(&i) { new.boundaries.push(b) } else { keep.push(b) }
            }
            r.boundaries = keep;
            let category = r.category.clone();

            for (wall_id, end) in &p.ends {
                let w = out
                    .walls
                    .iter_mut()
                    .find(|w| w.id == *wall_id)
                    .ok_or_else(|| err(format!("no wall `{wall_id}`")))?;
                let slot = match end {
                    EdgeEnd::From => &mut w.from,
                    EdgeEnd::To => &mut w.to,
                };
                if slot != region {
                    return Err(err(format!("wall `{wall_id}` {end:?} end is not on `{region}`")));
                }
                *slot = p.new_region.clone();
            }
            let identity = WallMatrix::identity(category);
            out.walls.push(WallEdge::new(p.new_wall.clone(), region.clone(), p.new_region.clone(), Arc::new(identity)));
            out.regions.push(new);
        }

        Move::CutHandle { region } => {
            let r = region_mut(&mut out, region, MoveError::CutHandle)?;
            if r.genus == 0 {
                return Err(MoveError::CutHandle(format!("region `{region}` has genus 0")));
            }
            r.genus -= 1;
            let h = handle_object(&r.category);
            r.anyons.push(Insertion::new("H", h));
        }

        Move::CapBoundary { region, boundary } => {
            let r = region_mut(&mut out, region, MoveError::CapBoundary)?;
            if *boundary >= r.boundaries.len() {
                return Err(MoveError::CapBoundary(format!(
                    "region `{region}` has {} boundaries, index {boundary} given",
                    r.boundaries.len()
                )));
            }
            let b = r.boundaries.remove(*boundary);
            r.anyons.push(Insertion::new(b.name(), b.object().clone()));
        }

        Move::ReverseEdge { edge } => {
            let w = out
                .walls
                .iter_mut()
                .find(|w| w.id == *edge)
                .ok_or_else(|| MoveError::ReverseEdge(format!("no wall `{edge}`")))?;
            reverse_edge(w);
        }
    }
    Ok(out)
}
