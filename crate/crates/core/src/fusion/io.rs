//! JSON schemas for category, wall and algebra data files.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::modular::ModularData;
use super::ring::FusionRing;
use crate::defects::{LagrangianAlgebra, WallMatrix};
use crate::error::{Error, Result};
use crate::verlinde::ObjectVector;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub name: String,
    pub labels: Vec<String>,
    pub unit: String,
    pub dual: BTreeMap<String, String>,
    /// Sparse entries `[i, j, k, N_ij^k]`; omitted entries are zero.
    pub fusion: Vec<(String, String, String, u32)>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<[f64; 2]>>,
    pub theta: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qdim: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallFile {
    pub name: String,
    pub from: String,
    pub to: String,
    #[serde(rename = "W")]
    pub w: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub category: String,
    pub n: BTreeMap<String, u64>,
}

/// Any of the three data-file kinds, distinguished by their keys.
#[derive(Debug, Clone)]
pub enum DataFile {
    Category(CategoryFile),
    Wall(WallFile),
    Algebra(AlgebraFile),
}

impl DataFile {
    /// Parses a data file, choosing the schema by its distinguishing key
    /// (`S` for categories, `W` for walls, `n` for algebras).
    pub fn parse(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let has = |k: &str| value.get(k).is_some();
        // Re-parse from text so that schema errors keep their line/column.
        if has("S") {
            Ok(DataFile::Category(serde_json::from_str(text)?))
        } else if has("W") {
            Ok(DataFile::Wall(serde_json::from_str(text)?))
        } else if has("n") {
            Ok(DataFile::Algebra(serde_json::from_str(text)?))
        } else {
            Err(Error::Structure(
                "data file is neither a category (S), a wall (W) nor an algebra (n)".into(),
            ))
        }
    }

    pub fn name(&self) -> &str {
        match self {
            DataFile::Category(c) => &c.name,
            DataFile::Wall(w) => &w.name,
            DataFile::Algebra(a) => &a.name,
        }
    }
}

fn index(labels: &[String], l: &str, what: &str) -> Result<usize> {
    labels
        .iter()
        .position(|x| x == l)
        .ok_or_else(|| Error::Structure(format!("unknown label `{l}` in {what}")))
}

impl CategoryFile {
    pub fn into_modular_data(self) -> Result<ModularData> {
        let r = self.labels.len();
        let unit = index(&self.labels, &self.unit, "unit")?;
        let mut dual = vec![usize::MAX; r];
        for (a, b) in &self.dual {
            let i = index(&self.labels, a, "dual")?;
            dual[i] = index(&self.labels, b, "dual")?;
        }
        if let Some(i) = dual.iter().position(|&d| d == usize::MAX) {
            return Err(Error::Structure(format!(
                "dual of `{}` not given",
                self.labels[i]
            )));
        }
        let mut fusion = vec![vec![vec![0u32; r]; r]; r];
        for (a, b, c, m) in &self.fusion {
            let (i, j, k) = (
                index(&self.labels, a, "fusion")?,
                index(&self.labels, b, "fusion")?,
                index(&self.labels, c, "fusion")?,
            );
            fusion[i][j][k] = *m;
        }
        let ring = FusionRing::new(self.labels, unit, dual, fusion)?;
        let s = self
            .s
            .into_iter()
            .map(|row| row.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect();
        let theta = self
            .theta
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        ModularData::new(self.name, ring, s, theta, self.qdim)
    }

    pub fn from_modular_data(md: &ModularData) -> Self {
        let r = md.rank();
        let labels = md.labels().to_vec();
        let mut fusion = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let n = md.ring().n(i, j, k);
                    if n > 0 {
                        fusion.push((labels[i].clone(), labels[j].clone(), labels[k].clone(), n));
                    }
                }
            }
        }
        CategoryFile {
            name: md.name().to_string(),
            unit: labels[md.unit()].clone(),
            dual: (0..r)
                .map(|i| (labels[i].clone(), labels[md.dual(i)].clone()))
                .collect(),
            fusion,
            s: md
                .s_matrix()
                .into_iter()
                .map(|row| row.into_iter().map(|z| [z.re, z.im]).collect())
                .collect(),
            theta: md.thetas().iter().map(|z| [z.re, z.im]).collect(),
            qdim: Some(md.qdims().to_vec()),
            labels,
        }
    }
}

impl WallFile {
    pub fn into_wall(
        self,
        lookup: impl Fn(&str) -> Result<Arc<ModularData>>,
    ) -> Result<WallMatrix> {
        let from = lookup(&self.from)?;
        let to = lookup(&self.to)?;
        WallMatrix::new(self.name, from, to, self.w)
    }
}

impl AlgebraFile {
    pub fn into_algebra(
        self,
        lookup: impl Fn(&str) -> Result<Arc<ModularData>>,
    ) -> Result<LagrangianAlgebra> {
        let category = lookup(&self.category)?;
        let mut mult = vec![0u64; category.rank()];
        for (label, m) in &self.n {
            let i = category.index_of(label).ok_or_else(|| {
                Error::Structure(format!(
                    "algebra `{}`: unknown label `{label}` in {}",
                    self.name,
                    category.name()
                ))
            })?;
            mult[i] = *m;
        }
        let object = ObjectVector::from_counts(category, &mult);
        Ok(LagrangianAlgebra::new(self.name, object))
    }
}
