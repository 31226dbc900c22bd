#![allow(dead_code)]

pub mod fuzz;

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use strata_core::defects::{compose_walls, reverse_wall, WallMatrix};
use strata_core::engine::{Move, Partition};
use strata_core::surface::{Insertion, RegionSpec, SurfaceSpec, WallEdge};
use strata_core::verlinde::{genus_dim, ObjectVector};
use strata_core::{BigUint, Catalog, ModularData};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Definitional sum over every labeling of wall ends, evaluated naively.
pub fn brute_force_gsd(spec: &SurfaceSpec) -> BigUint {
    let dims: Vec<(usize, usize)> = spec
        .walls
        .iter()
        .map(|w| (w.wall.from_cat().rank(), w.wall.to_cat().rank()))
        .collect();
    let mut labels = vec![(0usize, 0usize); spec.walls.len()];
    let mut total = BigUint::from(0u32);
    loop {
        let weight: u64 = spec
            .walls
            .iter()
            .zip(&labels)
            .map(|(w, &(i, j))| w.wall.get(i, j))
            .product();
        if weight != 0 {
            let mut term = BigUint::from(weight);
            for r in &spec.regions {
                let mut xs = r.insertion_objects();
                for (w, &(i, j)) in spec.walls.iter().zip(&labels) {
                    if w.from == r.id {
                        xs.push(ObjectVector::simple(r.category.clone(), i));
                    }
                    if w.to == r.id {
                        xs.push(ObjectVector::simple(r.category.clone(), r.category.dual(j)));
                    }
                }
                term *= genus_dim(&r.category, r.genus, &xs).unwrap();
            }
            total += term;
        }
        // next labeling
        let mut k = 0;
        loop {
            if k == labels.len() {
                return total;
            }
            labels[k].1 += 1;
            if labels[k].1 < dims[k].1 {
                break;
            }
            labels[k].1 = 0;
            labels[k].0 += 1;
            if labels[k].0 < dims[k].0 {
                break;
            }
            labels[k].0 = 0;
            k += 1;
        }
    }
}

/// Category families that random specs are drawn from.
#[derive(Debug, Clone, Copy)]
pub enum Family {
    Toric,
    Fib,
    Ising,
    Semion,
    Z3,
}

pub const FAMILIES: [Family; 5] = [Family::Toric, Family::Fib, Family::Ising, Family::Semion, Family::Z3];

pub fn wall_between(cat: &Catalog, rng: &mut ChaCha8Rng, from: &Arc<ModularData>, to: &Arc<ModularData>) -> Arc<WallMatrix> {
    let name = |c: &Arc<ModularData>| c.name().to_string();
    let w = match (name(from).as_str(), name(to).as_str()) {
        ("toric_code", "toric_code") => {
            let rough = cat.wall("rough_wall").unwrap();
            let options = [
                cat.wall("em_swap").unwrap().as_ref().clone(),
                cat.wall("tc_identity").unwrap().as_ref().clone(),
                compose_walls(&rough, &reverse_wall(&cat.wall("smooth_wall").unwrap())).unwrap(),
            ];
            options.choose(rng).unwrap().clone()
        }
        ("toric_code", "trivial") => {
            let options = ["rough_wall", "smooth_wall"];
            cat.wall(options.choose(rng).unwrap()).unwrap().as_ref().clone()
        }
        ("trivial", "toric_code") => {
            let options = ["rough_wall", "smooth_wall"];
            reverse_wall(&cat.wall(options.choose(rng).unwrap()).unwrap())
        }
        _ => WallMatrix::identity(from.clone()),
    };
    Arc::new(w)
}

pub fn family_categories(cat: &Catalog, family: Family) -> Vec<Arc<ModularData>> {
    match family {
        Family::Toric => vec![cat.category("toric_code").unwrap(), cat.category("trivial").unwrap()],
        Family::Fib => vec![cat.category("fib").unwrap()],
        Family::Ising => vec![cat.category("ising").unwrap()],
        Family::Semion => vec![cat.category("semion").unwrap()],
        Family::Z3 => vec![cat.category("zn_toric_3").unwrap()],
    }
}

fn boundary_algebras(cat: &Catalog, c: &ModularData) -> Vec<String> {
    cat.algebras()
        .filter(|a| a.category().same_as(c))
        .map(|a| a.name().to_string())
        .collect()
}

/// A random valid surface: a connected region graph with a few extra cycles,
/// random genera, anyons and boundaries, and (sometimes) bare annuli between
/// parallel walls.
pub fn random_spec(rng: &mut ChaCha8Rng, max_regions: usize) -> SurfaceSpec {
    let cat = Catalog::builtin();
    let family = *FAMILIES.choose(rng).unwrap();
    let cats = family_categories(&cat, family);
    let n = rng.gen_range(1..=max_regions);
    let mut spec = SurfaceSpec::new();
    for k in 0..n {
        // toric family: mostly toric code, occasionally a trivial region
        let c = if cats.len() > 1 && k > 0 && rng.gen_bool(0.25) { cats[1].clone() } else { cats[0].clone() };
        let genus = if c.rank() > 4 { rng.gen_range(0..=1) } else { rng.gen_range(0..=2) };
        let mut region = RegionSpec::new(format!("r{k}"), c.clone(), genus);
        for _ in 0..rng.gen_range(0..=2) {
            let i = rng.gen_range(0..c.rank());
            region.anyons.push(Insertion::new(c.label(i), ObjectVector::simple(c.clone(), i)));
        }
        let algebras = boundary_algebras(&cat, &c);
        if !algebras.is_empty() && c.rank() > 1 {
            for _ in 0..rng.gen_range(0..=2) {
                region.boundaries.push(cat.algebra(algebras.choose(rng).unwrap()).unwrap());
            }
        }
        spec.regions.push(region);
    }
    // spanning tree, then up to two extra edges
    let mut edges: Vec<(usize, usize)> = (1..n).map(|k| (rng.gen_range(0..k), k)).collect();
    for _ in 0..rng.gen_range(0..=if n == 1 { 1 } else { 2 }) {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let mut wall_no = 0;
    for (a, b) in edges {
        let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        let (ca, cb) = (spec.regions[a].category.clone(), spec.regions[b].category.clone());
        let wall = wall_between(&cat, rng, &ca, &cb);
        spec.walls.push(WallEdge::new(format!("w{wall_no}"), format!("r{a}"), format!("r{b}"), wall));
        wall_no += 1;
    }
    // subdivide one wall through a bare annulus
    if !spec.walls.is_empty() && rng.gen_bool(0.5) {
        let k = rng.gen_range(0..spec.walls.len());
        let old = spec.walls[k].clone();
        let to_cat = spec.region(&old.to).unwrap().category.clone();
        let mid = format!("m{k}");
        spec.regions.push(RegionSpec::new(mid.clone(), to_cat.clone(), 0));
        spec.walls[k].to = mid.clone();
        let second = Arc::new(WallMatrix::identity(to_cat));
        let mut tail = WallEdge::new(format!("w{wall_no}"), mid, old.to.clone(), second);
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut tail.from, &mut tail.to);
            tail.wall = Arc::new(reverse_wall(&tail.wall));
        }
        spec.walls.push(tail);
    }
    spec
}

/// Every move kind that applies to `spec`, with random parameters.
pub fn random_moves(rng: &mut ChaCha8Rng, spec: &SurfaceSpec) -> Vec<Move> {
    let mut moves = Vec::new();
    for r in &spec.regions {
        if r.anyons.len() >= 2 {
            let first = rng.gen_range(0..r.anyons.len());
            let mut second = rng.gen_range(0..r.anyons.len() - 1);
            if second >= first {
                second += 1;
            }
            moves.push(Move::FuseAnyons { region: r.id.clone(), first, second });
        }
        if r.genus > 0 {
            moves.push(Move::CutHandle { region: r.id.clone() });
        }
        if !r.boundaries.is_empty() {
            moves.push(Move::CapBoundary { region: r.id.clone(), boundary: rng.gen_range(0..r.boundaries.len()) });
        }
        if r.genus == 0 && r.anyons.is_empty() && r.boundaries.is_empty() {
            let ends = spec.incident_ends(&r.id);
            if ends.len() == 2 && ends[0].0 != ends[1].0 {
                let (a, b) = (spec.walls[ends[0].0].id.clone(), spec.walls[ends[1].0].id.clone());
                let (first, second) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
                moves.push(Move::ComposeParallelWalls { first, middle: r.id.clone(), second });
            }
        }
        let partition = Partition {
            new_region: format!("{}_split", r.id),
            new_wall: format!("{}_glue", r.id),
            genus: rng.gen_range(0..=r.genus),
            anyons: (0..r.anyons.len()).filter(|_| rng.gen_bool(0.5)).collect(),
            boundaries: (0..r.boundaries.len()).filter(|_| rng.gen_bool(0.5)).collect(),
            ends: spec
                .incident_ends(&r.id)
                .into_iter()
                .filter(|_| rng.gen_bool(0.5))
                .map(|(k, e)| (spec.walls[k].id.clone(), e))
                .collect(),
        };
        moves.push(Move::SplitRegionTransparent { region: r.id.clone(), partition });
    }
    for w in &spec.walls {
        moves.push(Move::ReverseEdge { edge: w.id.clone() });
    }
    moves
}

pub fn move_kind(mv: &Move) -> &'static str {
    match mv {
        Move::FuseAnyons { .. } => "FuseAnyons",
        Move::ComposeParallelWalls { .. } => "ComposeParallelWalls",
        Move::SplitRegionTransparent { .. } => "SplitRegionTransparent",
        Move::CutHandle { .. } => "CutHandle",
        Move::CapBoundary { .. } => "CapBoundary",
        Move::ReverseEdge { .. } => "ReverseEdge",
    }
}


#[derive(Debug, Default)]
pub struct MoveStats {
    pub specs: usize,
    pub applied: std::collections::BTreeMap<&'static str, usize>,
    pub failures: Vec<String>,
}

/// Checks gsd invariance under every applicable move and under order change.
pub fn move_soundness(seed: u64, specs: usize) -> MoveStats {
    use strata_core::engine::{apply_move, gsd, GsdOptions, Order};
    let mut rng = rng(seed);
    let mut stats = MoveStats::default();
    let opts = |order| GsdOptions { order, ..GsdOptions::default() };
    while stats.specs < specs {
        let spec = random_spec(&mut rng, 4);
        let base = gsd(&spec, &opts(Order::Greedy)).unwrap().value;
        let input = gsd(&spec, &opts(Order::Input)).unwrap().value;
        *stats.applied.entry("OrderChange").or_default() += 1;
        if input != base {
            stats.failures.push(format!("order change: {input} vs {base}\n{}", spec.to_canonical_text()));
        }
        for mv in random_moves(&mut rng, &spec) {
            let kind = move_kind(&mv);
            let moved = match apply_move(&spec, &mv) {
                Ok(s) => s,
                Err(e) => {
                    stats.failures.push(format!("{kind} rejected: {e}\n{}", spec.to_canonical_text()));
                    continue;
                }
            };
            *stats.applied.entry(kind).or_default() += 1;
            match gsd(&moved, &opts(Order::Greedy)) {
                Ok(out) if out.value == base => {}
                Ok(out) => stats.failures.push(format!(
                    "{kind}: {} vs {base}\n{}\n=>\n{}",
                    out.value,
                    spec.to_canonical_text(),
                    moved.to_canonical_text()
                )),
                Err(e) => stats.failures.push(format!("{kind}: gsd failed: {e}")),
            }
        }
        stats.specs += 1;
    }
    stats
}

/// A random chain of walls, and the same chain as a general surface: a cycle
/// of genus-0 regions when closed, a path when open.
pub fn random_chain(rng: &mut ChaCha8Rng) -> (Vec<Arc<ModularData>>, Vec<WallMatrix>, bool, SurfaceSpec) {
    let cat = Catalog::builtin();
    let family = *FAMILIES.choose(rng).unwrap();
    let cats = family_categories(&cat, family);
    let closed = rng.gen_bool(0.5);
    let n = rng.gen_range(1..=4);
    let regions = if closed { n } else { n + 1 };
    let region_cats: Vec<Arc<ModularData>> = (0..regions)
        .map(|k| if cats.len() > 1 && k > 0 && rng.gen_bool(0.3) { cats[1].clone() } else { cats[0].clone() })
        .collect();
    let mut walls = Vec::new();
    let mut spec = SurfaceSpec::new();
    for (k, c) in region_cats.iter().enumerate() {
        spec.regions.push(RegionSpec::new(format!("r{k}"), c.clone(), 0));
    }
    for k in 0..n {
        let next = (k + 1) % regions;
        let w = wall_between(&cat, rng, &region_cats[k], &region_cats[next]);
        spec.walls.push(WallEdge::new(format!("w{k}"), format!("r{k}"), format!("r{next}"), w.clone()));
        walls.push(w.as_ref().clone());
    }
    (region_cats, walls, closed, spec)
}
