//! Ground states of the Z_n toric code on a closed cellulated surface,
//! counted as `|H^1(Σ; Z_n)|` from integer Smith normal forms. Independent
//! of the category engine; used to cross-check it.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A 2-dimensional cell complex given by signed incidence matrices:
/// `d1` has one row per edge over vertices (head minus tail), `d2` one row
/// per face over edges. The chain condition is `d2 · d1 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplex {
    pub vertices: usize,
    pub d1: Vec<Vec<i64>>,
    pub d2: Vec<Vec<i64>>,
}

impl CellComplex {
    pub fn new(vertices: usize, d1: Vec<Vec<i64>>, d2: Vec<Vec<i64>>) -> Result<Self> {
        let complex = Self { vertices, d1, d2 };
        complex.check()?;
        Ok(complex)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: CellComplex = serde_json::from_str(text)?;
        c.check()?;
        Ok(c)
    }

    pub fn edges(&self) -> usize {
        self.d1.len()
    }

    pub fn faces(&self) -> usize {
        self.d2.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges() as i64 + self.faces() as i64
    }

    fn check(&self) -> Result<()> {
        if self.d1.iter().any(|r| r.len() != self.vertices) {
            return Err(Error::Structure("every d1 row needs one entry per vertex".into()));
        }
        if self.d2.iter().any(|r| r.len() != self.edges()) {
            return Err(Error::Structure("every d2 row needs one entry per edge".into()));
        }
        for (f, face) in self.d2.iter().enumerate() {
            for v in 0..self.vertices {
                let s: i64 = face.iter().zip(&self.d1).map(|(a, row)| a * row[v]).sum();
                if s != 0 {
                    return Err(Error::Structure(format!(
                        "chain condition fails: boundary of face {f} has nonzero boundary at vertex {v}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Minimal cellulations: `sphere` (1 vertex, 1 face), `torus` (square with
/// sides identified), `genus2` (octagon `a b a⁻¹ b⁻¹ c d c⁻¹ d⁻¹`).
pub fn fixture(name: &str) -> Result<CellComplex> {
    match name {
        "sphere" => CellComplex::new(1, vec![], vec![vec![]]),
        "torus" => CellComplex::new(1, vec![vec![0], vec![0]], vec![vec![0, 0]]),
        "genus2" => CellComplex::new(1, vec![vec![0]; 4], vec![vec![0; 4]]),
        "tetrahedron" => tetrahedron(),
        _ => Err(Error::Lookup {
            kind: "cell complex fixture",
            name: name.to_string(),
            available: "sphere, torus, genus2, tetrahedron".into(),
        }),
    }
}

/// Boundary of a tetrahedron: a sphere with 4 vertices, 6 edges and 4 faces.
fn tetrahedron() -> Result<CellComplex> {
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let d1 = edges
        .iter()
        .map(|&(a, b)| {
            let mut row = vec![0; 4];
            row[a] = -1;
            row[b] = 1;
            row
        })
        .collect();
    let edge = |a: usize, b: usize| edges.iter().position(|&e| e == (a, b)).unwrap();
    let faces = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
    let d2 = faces
        .iter()
        .map(|&(a, b, c)| {
            // oriented boundary a->b->c->a
            let mut row = vec![0; 6];
            row[edge(a, b)] += 1;
            row[edge(b, c)] += 1;
            row[edge(a, c)] -= 1;
            row
        })
        .collect();
    CellComplex::new(4, d1, d2)
}

/// An `m × m` square grid on the torus.
pub fn torus_grid(m: usize) -> Result<CellComplex> {
    if m == 0 {
        return Err(Error::Structure("grid size must be positive".into()));
    }
    let v = |i: usize, j: usize| (i % m) * m + (j % m);
    let h = |i: usize, j: usize| 2 * v(i, j);
    let vert = |i: usize, j: usize| 2 * v(i, j) + 1;
    let mut d1 = vec![vec![0i64; m * m]; 2 * m * m];
    for i in 0..m {
        for j in 0..m {
            d1[h(i, j)][v(i, j)] -= 1;
            d1[h(i, j)][v(i + 1, j)] += 1;
            d1[vert(i, j)][v(i, j)] -= 1;
            d1[vert(i, j)][v(i, j + 1)] += 1;
        }
    }
    let mut d2 = vec![vec![0i64; 2 * m * m]; m * m];
    for i in 0..m {
        for j in 0..m {
            let f = &mut d2[v(i, j)];
            f[h(i, j)] += 1;
            f[vert(i + 1, j)] += 1;
            f[h(i, j + 1)] -= 1;
            f[vert(i, j)] -= 1;
        }
    }
    CellComplex::new(m * m, d1, d2)
}

/// Nonzero elementary divisors of an integer matrix (Smith normal form diagonal).
#[allow(clippy::needless_range_loop)]
pub fn elementary_divisors(matrix: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let sub = &q * &a[t][j];
                        a[i][j] -= sub;
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..rows {
                        let sub = &q * &a[i][t];
                        a[i][j] -= sub;
                    }
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                // the pivot must divide the remaining block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let add = a[i][j].clone();
                            a[t][j] += add;
                        }
                    }
                }
            } else {
                // move the smallest remaining entry of row/column t to the pivot
                let (mut bi, mut bj) = (t, t);
                for i in t..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[bi][bj].abs() {
                        (bi, bj) = (i, t);
                    }
                }
                for j in t..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[bi][bj].abs() {
                        (bi, bj) = (t, j);
                    }
                }
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
            }
        }
        divisors.push(a[t][t].abs());
        t += 1;
    }
    divisors
}

/// `|ker(A : Z_n^cols -> Z_n^rows)| = n^(cols - rank) · Π gcd(n, d_i)`.
fn kernel_order(matrix: &[Vec<i64>], cols: usize, n: &BigInt) -> BigUint {
    let divisors = elementary_divisors(matrix);
    let mut order = n.pow((cols - divisors.len()) as u32);
    for d in &divisors {
        order *= d.gcd(n);
    }
    order.to_biguint().expect("positive")
}

/// `|H^1(Σ; Z_n)|`, the ground-state degeneracy of the Z_n toric code on
/// the cellulated surface.
pub fn homology_order(complex: &CellComplex, n: u64) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::Structure("coefficient modulus must be at least 2".into()));
    }
    complex.check()?;
    let n_big = BigInt::from(n);
    // cochains C^0 -> C^1 -> C^2 with coboundaries given by d1 and d2
    let ker_d2 = kernel_order(&complex.d2, complex.edges(), &n_big);
    let ker_d1 = kernel_order(&complex.d1, complex.vertices, &n_big);
    // |H^1| = |ker δ1| / |im δ0| and |im δ0| = n^V / |ker δ0|
    let image = BigUint::from(n).pow(complex.vertices as u32) / ker_d1;
    Ok(ker_d2 / image)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_expected_shape() {
        let t = fixture("torus").unwrap();
        assert_eq!((t.vertices, t.edges(), t.faces()), (1, 2, 1));
        assert_eq!(t.euler_characteristic(), 0);
        assert_eq!(fixture("sphere").unwrap().euler_characteristic(), 2);
        let g2 = fixture("genus2").unwrap();
        assert_eq!((g2.vertices, g2.edges(), g2.faces()), (1, 4, 1));
        assert_eq!(g2.euler_characteristic(), -2);
        assert_eq!(fixture("tetrahedron").unwrap().euler_characteristic(), 2);
        assert!(fixture("klein").is_err());
    }

    #[test]
    fn homology_orders() {
        assert_eq!(homology_order(&fixture("torus").unwrap(), 2).unwrap(), 4u32.into());
        for n in [2, 3, 5] {
            assert_eq!(homology_order(&fixture("sphere").unwrap(), n).unwrap(), 1u32.into());
            assert_eq!(homology_order(&fixture("tetrahedron").unwrap(), n).unwrap(), 1u32.into());
        }
        assert_eq!(homology_order(&fixture("genus2").unwrap(), 3).unwrap(), 81u32.into());
    }

    #[test]
    fn subdivision_invariance() {
        for m in 1..=4 {
            let grid = torus_grid(m).unwrap();
            assert_eq!(grid.euler_characteristic(), 0);
            for n in [2, 3, 4] {
                assert_eq!(homology_order(&grid, n).unwrap(), BigUint::from(n * n));
            }
        }
    }

    #[test]
    fn snf_of_known_matrix() {
        // diag(2, 6) after unimodular mixing
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let d: Vec<i64> = elementary_divisors(&m).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn chain_condition_is_enforced() {
        // a face whose boundary is a single non-loop edge
        let err = CellComplex::new(2, vec![vec![-1, 1]], vec![vec![1]]).unwrap_err();
        assert!(matches!(err, Error::Structure(_)));
        let json = r#"{"vertices": 1, "d1": [[0],[0]], "d2": [[0,0]]}"#;
        assert_eq!(CellComplex::from_json(json).unwrap(), fixture("torus").unwrap());
    }
}
