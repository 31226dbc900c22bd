use std::collections::BTreeMap;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use super::io::DataFile;
use super::modular::ModularData;
use crate::defects::{LagrangianAlgebra, WallMatrix};
use crate::error::{Error, Result};

const CATEGORIES: &[&str] = &[
    include_str!("../../data/categories/trivial.json"),
    include_str!("../../data/categories/toric_code.json"),
    include_str!("../../data/categories/fib.json"),
    include_str!("../../data/categories/ising.json"),
    include_str!("../../data/categories/semion.json"),
    include_str!("../../data/categories/zn_toric_2.json"),
    include_str!("../../data/categories/zn_toric_3.json"),
    include_str!("../../data/categories/zn_toric_4.json"),
    include_str!("../../data/categories/zn_toric_5.json"),
];

const WALLS: &[&str] = &[
    include_str!("../../data/walls/em_swap.json"),
    include_str!("../../data/walls/tc_identity.json"),
    include_str!("../../data/walls/fib_identity.json"),
    include_str!("../../data/walls/rough_wall.json"),
    include_str!("../../data/walls/smooth_wall.json"),
];

const ALGEBRAS: &[&str] = &[
    include_str!("../../data/algebras/rough.json"),
    include_str!("../../data/algebras/smooth.json"),
    include_str!("../../data/algebras/vacuum.json"),
    include_str!("../../data/algebras/z3_electric.json"),
    include_str!("../../data/algebras/z3_magnetic.json"),
];

/// Named categories, walls and Lagrangian algebras. Surfaces are resolved
/// against a catalog.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    categories: BTreeMap<String, Arc<ModularData>>,
    walls: BTreeMap<String, Arc<WallMatrix>>,
    algebras: BTreeMap<String, Arc<LagrangianAlgebra>>,
}

/// What a call to [`Catalog::load_str`] added.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataKind {
    Category,
    Wall,
    Algebra,
}

impl Catalog {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The built-in catalog, parsed once from the embedded fixture files.
    pub fn builtin() -> Self {
        static BUILTIN: OnceLock<Catalog> = OnceLock::new();
        BUILTIN
            .get_or_init(|| {
                let mut cat = Catalog::empty();
                for text in CATEGORIES.iter().chain(WALLS).chain(ALGEBRAS) {
                    cat.load_str(text).expect("embedded fixture must load");
                }
                cat
            })
            .clone()
    }

    /// Loads one JSON data file. Walls and algebras must refer to categories
    /// already present. Later entries replace earlier ones with the same name.
    pub fn load_str(&mut self, text: &str) -> Result<(DataKind, String)> {
        let file = DataFile::parse(text)?;
        let name = file.name().to_string();
        let lookup = |n: &str| self.category(n);
        let kind = match file {
            DataFile::Category(c) => {
                let md = c.into_modular_data()?;
                self.insert_category(md);
                DataKind::Category
            }
            DataFile::Wall(w) => {
                let wall = w.into_wall(lookup)?;
                self.insert_wall(wall);
                DataKind::Wall
            }
            DataFile::Algebra(a) => {
                let alg = a.into_algebra(lookup)?;
                self.insert_algebra(alg);
                DataKind::Algebra
            }
        };
        Ok((kind, name))
    }

    pub fn load_file(&mut self, path: impl AsRef<Path>) -> Result<(DataKind, String)> {
        let text = std::fs::read_to_string(path)?;
        self.load_str(&text)
    }

    pub fn insert_category(&mut self, md: ModularData) -> Arc<ModularData> {
        let md = Arc::new(md);
        self.categories.insert(md.name().to_string(), md.clone());
        md
    }

    pub fn insert_wall(&mut self, wall: WallMatrix) -> Arc<WallMatrix> {
        let wall = Arc::new(wall);
        self.walls.insert(wall.name().to_string(), wall.clone());
        wall
    }

    pub fn insert_algebra(&mut self, alg: LagrangianAlgebra) -> Arc<LagrangianAlgebra> {
        let alg = Arc::new(alg);
        self.algebras.insert(alg.name().to_string(), alg.clone());
        alg
    }

    pub fn category(&self, name: &str) -> Result<Arc<ModularData>> {
        lookup(&self.categories, "category", name)
    }

    pub fn wall(&self, name: &str) -> Result<Arc<WallMatrix>> {
        lookup(&self.walls, "wall", name)
    }

    pub fn algebra(&self, name: &str) -> Result<Arc<LagrangianAlgebra>> {
        lookup(&self.algebras, "algebra", name)
    }

    /// The Z_n toric code (quantum double of Z_n), available for 2 <= n <= 5.
    pub fn zn_toric(&self, n: usize) -> Result<Arc<ModularData>> {
        self.category(&format!("zn_toric_{n}"))
    }

    pub fn categories(&self) -> impl Iterator<Item = &Arc<ModularData>> {
        self.categories.values()
    }

    pub fn walls(&self) -> impl Iterator<Item = &Arc<WallMatrix>> {
        self.walls.values()
    }

    pub fn algebras(&self) -> impl Iterator<Item = &Arc<LagrangianAlgebra>> {
        self.algebras.values()
    }
}

fn lookup<T>(map: &BTreeMap<String, Arc<T>>, kind: &'static str, name: &str) -> Result<Arc<T>> {
    map.get(name).cloned().ok_or_else(|| Error::Lookup {
        kind,
        name: name.to_string(),
        available: map.keys().cloned().collect::<Vec<_>>().join(", "),
    })
}

/// The one-simple category `Vect`, from the built-in catalog.
pub fn trivial_category() -> Arc<ModularData> {
    Catalog::builtin()
        .category("trivial")
        .expect("trivial category is built in")
}

/// Looks up a built-in category by name.
pub fn catalog_get(name: &str) -> Result<Arc<ModularData>> {
    Catalog::builtin().category(name)
}
