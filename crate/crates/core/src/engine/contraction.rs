//! Region-graph contraction.
//!
//! Every wall edge `e: C -> D` carries two label variables, `i_e` on its
//! `from` end and `j_e` on its `to` end, coupled by the weight `W[i_e][j_e]`.
//! The from-region sees the simple `i_e`, the to-region sees `dual(j_e)`.
//! Each region contributes the table `genus_dim(C_r, g_r, insertions ++ end labels)`,
//! and the ground-state degeneracy is the full contraction of this network.
//! Variables are eliminated one at a time, either in input order or greedily
//! by smallest intermediate table.

use std::sync::Arc;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::trace::{ReductionTrace, StepKind};
use crate::error::{Error, Result};
use crate::fusion::ModularData;
use crate::surface::{validate_surface, EdgeEnd, RegionSpec, SurfaceSpec};
use crate::verlinde::{fused_insertions, round_verlinde, s_eigenvalues, ObjectVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Order {
    Input,
    #[default]
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Exact,
    Verlinde,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GsdOptions {
    pub order: Order,
    pub method: Method,
    pub trace: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsdOutput {
    pub value: BigUint,
    pub trace: ReductionTrace,
}

/// Dense table over a list of variables, row-major in `vars` order.
#[derive(Debug, Clone)]
struct Factor {
    vars: Vec<usize>,
    data: Vec<BigUint>,
}

struct Network {
    dims: Vec<usize>,
    names: Vec<String>,
    factors: Vec<Factor>,
}

fn var_index(edge: usize, end: EdgeEnd) -> usize {
    2 * edge + usize::from(end == EdgeEnd::To)
}

fn end_label(c: &ModularData, end: EdgeEnd, value: usize) -> usize {
    match end {
        EdgeEnd::From => value,
        EdgeEnd::To => c.dual(value),
    }
}

/// `table[assignment] = unit multiplicity of base ⊗ s_1 ⊗ … ⊗ s_d`.
fn exact_region_table(base: &ObjectVector, ends: &[EdgeEnd]) -> Vec<BigUint> {
    fn walk(v: &ObjectVector, ends: &[EdgeEnd], out: &mut Vec<BigUint>) {
        let c = v.category();
        match ends {
            [] => out.push(v.get(c.unit()).clone()),
            // hom(1, x ⊗ s) is the multiplicity of s* in x
            [last] => {
                for a in 0..c.rank() {
                    let s = end_label(c, *last, a);
                    out.push(v.get(c.dual(s)).clone());
                }
            }
            [first, rest @ ..] => {
                for a in 0..c.rank() {
                    let s = ObjectVector::simple(c.clone(), end_label(c, *first, a));
                    let next = crate::verlinde::fuse(v, &s).expect("same category");
                    walk(&next, rest, out);
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(base, ends, &mut out);
    out
}

/// Same table from the S-matrix: `Σ_a t_a Π_k S[s_k][a] / S[unit][a]`.
fn verlinde_region_table(region: &RegionSpec, ends: &[EdgeEnd]) -> Result<Vec<BigUint>> {
    let c = &region.category;
    let u = c.unit();
    let r = c.rank();
    let mut base: Vec<Complex64> = (0..r)
        .map(|a| Complex64::new(c.s(u, a).re.powf(2.0 - 2.0 * f64::from(region.genus)), 0.0))
        .collect();
    for x in region.insertion_objects() {
        for (t, l) in base.iter_mut().zip(s_eigenvalues(&x)) {
            *t *= l;
        }
    }
    fn walk(c: &Arc<ModularData>, terms: &[Complex64], ends: &[EdgeEnd], out: &mut Vec<BigUint>) -> Result<()> {
        match ends {
            [] => out.push(round_verlinde(terms.iter().sum())?),
            [first, rest @ ..] => {
                let u = c.unit();
                for value in 0..c.rank() {
                    let s = end_label(c, *first, value);
                    let next: Vec<Complex64> = terms
                        .iter()
                        .enumerate()
                        .map(|(a, t)| t * c.s(s, a) / c.s(u, a))
                        .collect();
                    walk(c, &next, rest, out)?;
                }
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(c, &base, ends, &mut out)?;
    Ok(out)
}

fn describe_region(region: &RegionSpec, degree: usize, trace: &mut ReductionTrace) {
    if region.genus > 0 {
        trace.record(
            StepKind::GenusCut,
            format!(
                "region `{}`: {} handle(s) replaced by insertions of H = ⊕ i⊗i* over {}",
                region.id,
                region.genus,
                region.category.name()
            ),
            "",
        );
    }
    for b in &region.boundaries {
        trace.record(
            StepKind::CapBoundary,
            format!("region `{}`: boundary `{}` capped, inserting {}", region.id, b.name(), b.object()),
            "",
        );
    }
    trace.record(
        StepKind::Region,
        format!(
            "region `{}` ({}, genus {}, {} insertion(s)) with {} wall end(s)",
            region.id,
            region.category.name(),
            region.genus,
            region.anyons.len() + region.boundaries.len(),
            degree
        ),
        format!("table of {} entries", region.category.rank().pow(degree as u32)),
    );
}

fn build_network(spec: &SurfaceSpec, exact: bool, trace: Option<&mut ReductionTrace>) -> Result<Network> {
    let mut dims = Vec::with_capacity(2 * spec.walls.len());
    let mut names = Vec::with_capacity(2 * spec.walls.len());
    for w in &spec.walls {
        dims.push(w.wall.from_cat().rank());
        dims.push(w.wall.to_cat().rank());
        names.push(format!("{}.from", w.id));
        names.push(format!("{}.to", w.id));
    }
    let mut factors = Vec::new();
    let mut trace = trace;
    for region in &spec.regions {
        let incident = spec.incident_ends(&region.id);
        let ends: Vec<EdgeEnd> = incident.iter().map(|(_, e)| *e).collect();
        if let Some(t) = trace.as_deref_mut() {
            describe_region(region, ends.len(), t);
        }
        let data = if exact {
            let base = fused_insertions(&region.category, region.genus, &region.insertion_objects())?;
            exact_region_table(&base, &ends)
        } else {
            verlinde_region_table(region, &ends)?
        };
        factors.push(Factor {
            vars: incident.iter().map(|&(k, e)| var_index(k, e)).collect(),
            data,
        });
    }
    for (k, w) in spec.walls.iter().enumerate() {
        let data = w
            .wall
            .matrix()
            .iter()
            .flatten()
            .map(|&x| BigUint::from(x))
            .collect();
        factors.push(Factor {
            vars: vec![var_index(k, EdgeEnd::From), var_index(k, EdgeEnd::To)],
            data,
        });
    }
    Ok(Network { dims, names, factors })
}

impl Network {
    fn result_size(&self, var: usize) -> Option<u128> {
        let mut vars: Vec<usize> = Vec::new();
        let mut touched = false;
        for f in &self.factors {
            if f.vars.contains(&var) {
                touched = true;
                for &v in &f.vars {
                    if v != var && !vars.contains(&v) {
                        vars.push(v);
                    }
                }
            }
        }
        touched.then(|| vars.iter().map(|&v| self.dims[v] as u128).product())
    }

    fn live_vars(&self) -> Vec<usize> {
        let mut vars: Vec<usize> = self.factors.iter().flat_map(|f| f.vars.iter().copied()).collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// Multiplies every factor mentioning `var` and sums `var` out.
    fn eliminate(&mut self, var: usize) -> usize {
        let (touching, rest): (Vec<Factor>, Vec<Factor>) =
            std::mem::take(&mut self.factors).into_iter().partition(|f| f.vars.contains(&var));
        self.factors = rest;
        let merged = touching.len();

        let mut out_vars: Vec<usize> = Vec::new();
        for f in &touching {
            for &v in &f.vars {
                if v != var && !out_vars.contains(&v) {
                    out_vars.push(v);
                }
            }
        }
        // Union order: output vars, then the summed var last.
        let mut union = out_vars.clone();
        union.push(var);
        let dims: Vec<usize> = union.iter().map(|&v| self.dims[v]).collect();
        let strides: Vec<Vec<usize>> = touching
            .iter()
            .map(|f| {
                let mut local = vec![0usize; union.len()];
                let mut stride = 1;
                for &v in f.vars.iter().rev() {
                    let pos = union.iter().position(|&u| u == v).unwrap();
                    local[pos] += stride;
                    stride *= self.dims[v];
                }
                local
            })
            .collect();

        let out_size: usize = dims[..dims.len() - 1].iter().product();
        let inner = *dims.last().unwrap();
        let mut data = vec![BigUint::zero(); out_size];
        let mut counter = vec![0usize; union.len()];
        let mut offsets = vec![0usize; touching.len()];
        for cell in data.iter_mut() {
            // offsets at inner index 0 for the current outer assignment
            for (o, s) in offsets.iter_mut().zip(&strides) {
                *o = counter.iter().zip(s).map(|(c, s)| c * s).sum();
            }
            let mut acc = BigUint::zero();
            'inner: for x in 0..inner {
                let mut prod = BigUint::one();
                for (f, (o, s)) in touching.iter().zip(offsets.iter().zip(&strides)) {
                    let value = &f.data[o + x * s[union.len() - 1]];
                    if value.is_zero() {
                        continue 'inner;
                    }
                    if !value.is_one() {
                        prod *= value;
                    }
                }
                acc += prod;
            }
            *cell = acc;
            // advance the outer mixed-radix counter (last output var fastest)
            for pos in (0..out_vars.len()).rev() {
                counter[pos] += 1;
                if counter[pos] < dims[pos] {
                    break;
                }
                counter[pos] = 0;
            }
        }
        self.factors.push(Factor { vars: out_vars, data });
        merged
    }

    fn pick(&self, order: Order) -> Option<usize> {
        let live = self.live_vars();
        match order {
            Order::Input => live.first().copied(),
            Order::Greedy => live
                .into_iter()
                .filter_map(|v| self.result_size(v).map(|s| (s, v)))
                .min()
                .map(|(_, v)| v),
        }
    }

    fn contract(mut self, order: Order, mut trace: Option<&mut ReductionTrace>) -> BigUint {
        while let Some(var) = self.pick(order) {
            let merged = self.eliminate(var);
            if let Some(t) = trace.as_deref_mut() {
                let size = self.factors.last().map_or(0, |f| f.data.len());
                t.record(
                    StepKind::Excision,
                    format!(
                        "glue along wall end `{}`: sum over {} labels, {} factor(s) merged",
                        self.names[var], self.dims[var], merged
                    ),
                    format!("{} factor(s) live, new table of {} entries", self.factors.len(), size),
                );
            }
        }
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, f| acc * &f.data[0])
    }
}

fn run(spec: &SurfaceSpec, exact: bool, order: Order, trace: Option<&mut ReductionTrace>) -> Result<BigUint> {
    let mut trace = trace;
    let network = build_network(spec, exact, trace.as_deref_mut())?;
    Ok(network.contract(order, trace))
}

/// Ground-state degeneracy of a closed decorated surface.
pub fn gsd(spec: &SurfaceSpec, options: &GsdOptions) -> Result<GsdOutput> {
    let report = validate_surface(spec);
    if !report.is_valid() {
        return Err(Error::Invalid(report));
    }
    gsd_unchecked(spec, options)
}

/// [`gsd`] without re-validating the labels. The spec must still be
/// structurally consistent (walls refer to existing regions of matching category).
pub fn gsd_unchecked(spec: &SurfaceSpec, options: &GsdOptions) -> Result<GsdOutput> {
    let mut trace = ReductionTrace::default();
    let t = options.trace.then_some(&mut trace);
    let value = match options.method {
        Method::Exact => run(spec, true, options.order, t)?,
        Method::Verlinde => run(spec, false, options.order, t)?,
        Method::Both => {
            let exact = run(spec, true, options.order, t)?;
            let verlinde = run(spec, false, options.order, None)?;
            if exact != verlinde {
                return Err(Error::PathDisagreement { exact, verlinde });
            }
            exact
        }
    };
    if options.trace {
        trace.record(StepKind::Result, format!("dim u = {value}"), "");
    }
    Ok(GsdOutput { value, trace })
}
