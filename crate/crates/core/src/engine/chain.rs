use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::defects::WallMatrix;
use crate::error::{Error, Result};
use crate::fusion::ModularData;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainResult {
    /// `W_1 W_2 … W_n`.
    pub product: Vec<Vec<BigUint>>,
    /// Trace of the product when closed; the `(unit, unit)` entry otherwise.
    pub value: BigUint,
}

/// Walls in a row around a cylinder. `categories` lists the regions between
/// consecutive walls: `n` entries when closed (the torus), `n + 1` when
/// open, or a single entry shared by every region.
pub fn gsd_chain(categories: &[Arc<ModularData>], walls: &[WallMatrix], closed: bool) -> Result<ChainResult> {
    if walls.is_empty() {
        return Err(Error::Structure("a wall chain needs at least one wall".into()));
    }
    let n = walls.len();
    let expected = if closed { n } else { n + 1 };
    let region = |k: usize| -> Result<&Arc<ModularData>> {
        match categories.len() {
            1 => Ok(&categories[0]),
            len if len == expected => Ok(&categories[if closed { k % n } else { k }]),
            len => Err(Error::Structure(format!(
                "{} chain of {n} walls needs 1 or {expected} categories, got {len}",
                if closed { "closed" } else { "open" }
            ))),
        }
    };
    for (k, w) in walls.iter().enumerate() {
        let (left, right) = (region(k)?, region(k + 1)?);
        if !w.from_cat().same_as(left) || !w.to_cat().same_as(right) {
            return Err(Error::CategoryMismatch(format!(
                "wall {k} (`{}`) is {} -> {}, chain expects {} -> {}",
                w.name(),
                w.from_cat().name(),
                w.to_cat().name(),
                left.name(),
                right.name()
            )));
        }
    }

    let mut product: Vec<Vec<BigUint>> = walls[0]
        .matrix()
        .iter()
        .map(|row| row.iter().map(|&x| BigUint::from(x)).collect())
        .collect();
    for w in &walls[1..] {
        product = product
            .iter()
            .map(|row| {
                (0..w.cols())
                    .map(|j| {
                        row.iter()
                            .enumerate()
                            .filter(|(_, a)| !a.is_zero())
                            .map(|(k, a)| a * w.get(k, j))
                            .sum()
                    })
                    .collect()
            })
            .collect();
    }
    let value = if closed {
        (0..product.len()).map(|i| product[i][i].clone()).sum()
    } else {
        let (u0, un) = (walls[0].from_cat().unit(), walls[n - 1].to_cat().unit());
        product[u0][un].clone()
    };
    Ok(ChainResult { product, value })
}
