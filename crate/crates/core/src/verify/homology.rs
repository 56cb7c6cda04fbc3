//! Simplicial boundary operators and rational Betti numbers.
//!
//! Ranks are computed by fraction-free column reduction over the integers:
//! a column is cleared against an existing pivot by cross-multiplying, then
//! divided by the gcd of its entries. Every step multiplies by a nonzero
//! integer, so the rank over the rationals is preserved exactly.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};

/// A sparse integer matrix stored by columns. Row and column labels are the
/// faces the matrix maps between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub row_faces: Vec<Face>,
    pub col_faces: Vec<Face>,
    /// For each column, `(row, value)` pairs sorted by row.
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    pub fn num_rows(&self) -> usize {
        self.row_faces.len()
    }

    pub fn num_cols(&self) -> usize {
        self.col_faces.len()
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.columns[col]
            .iter()
            .find(|&&(r, _)| r == row)
            .map_or(0, |&(_, v)| v)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut dense = vec![vec![0; self.num_cols()]; self.num_rows()];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                dense[r][c] = v;
            }
        }
        dense
    }

    pub fn rank(&self) -> Result<usize> {
        rank_of_columns(&self.columns)
    }
}

/// `∂_d` from `d`-faces to `(d-1)`-faces. The face obtained by deleting the
/// vertex in sorted position `i` gets coefficient `(-1)^i`. `∂_0` is the
/// zero map onto the zero space.
pub fn boundary_matrix(c: &Complex, d: usize) -> BoundaryMatrix {
    let col_faces = c.faces_of_size(d + 1);
    if d == 0 {
        return BoundaryMatrix {
            row_faces: Vec::new(),
            columns: vec![Vec::new(); col_faces.len()],
            col_faces,
        };
    }
    let row_faces = c.faces_of_size(d);
    let index: HashMap<&Face, usize> = row_faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let columns = col_faces
        .iter()
        .map(|face| {
            let mut col: Vec<(usize, i64)> = (0..face.len())
                .map(|skip| {
                    let sub: Face = face
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    (index[&sub], if skip % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    BoundaryMatrix {
        row_faces,
        col_faces,
        columns,
    }
}

fn rank_of_columns(columns: &[Vec<(usize, i64)>]) -> Result<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, i128)>> = HashMap::new();
    for col in columns {
        let mut col: Vec<(usize, i128)> = col.iter().map(|&(r, v)| (r, v as i128)).collect();
        while let Some(&(lead, a)) = col.first() {
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, col);
                    break;
                }
                Some(pivot) => {
                    let b = pivot[0].1;
                    col = combine(b, &col, a, pivot)?;
                    normalize(&mut col);
                }
            }
        }
    }
    Ok(pivots.len())
}

/// `x * u - y * w` for sparse sorted vectors, dropping zeros.
fn combine(
    x: i128,
    u: &[(usize, i128)],
    y: i128,
    w: &[(usize, i128)],
) -> Result<Vec<(usize, i128)>> {
    let overflow = || Error::Overflow("boundary rank");
    let mut out = Vec::with_capacity(u.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < u.len() || j < w.len() {
        let (row, value) = match (u.get(i), w.get(j)) {
            (Some(&(ru, vu)), Some(&(rw, _))) if ru < rw => {
                i += 1;
                (ru, x.checked_mul(vu).ok_or_else(overflow)?)
            }
            (Some(&(ru, _)), Some(&(rw, vw))) if rw < ru => {
                j += 1;
                (rw, y.checked_mul(vw).and_then(i128::checked_neg).ok_or_else(overflow)?)
            }
            (Some(&(ru, vu)), Some(&(_, vw))) => {
                i += 1;
                j += 1;
                let lhs = x.checked_mul(vu).ok_or_else(overflow)?;
                let rhs = y.checked_mul(vw).ok_or_else(overflow)?;
                (ru, lhs.checked_sub(rhs).ok_or_else(overflow)?)
            }
            (Some(&(ru, vu)), None) => {
                i += 1;
                (ru, x.checked_mul(vu).ok_or_else(overflow)?)
            }
            (None, Some(&(rw, vw))) => {
                j += 1;
                (rw, y.checked_mul(vw).and_then(i128::checked_neg).ok_or_else(overflow)?)
            }
            (None, None) => unreachable!(),
        };
        if value != 0 {
            out.push((row, value));
        }
    }
    Ok(out)
}

fn normalize(col: &mut [(usize, i128)]) {
    let g = col.iter().fold(0i128, |g, &(_, v)| gcd(g, v.abs()));
    if g > 1 {
        for entry in col.iter_mut() {
            entry.1 /= g;
        }
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Ranks of rational homology, `β_0 .. β_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn betti_numbers(c: &Complex) -> Result<BettiVector> {
    let n = c.n();
    let mut ranks = vec![0usize; n + 1];
    let mut sizes = vec![0usize; n];
    for d in 0..n {
        let m = boundary_matrix(c, d);
        sizes[d] = m.num_cols();
        if d > 0 {
            ranks[d] = m.rank()?;
        }
    }
    Ok(BettiVector(
        (0..n).map(|d| sizes[d] - ranks[d] - ranks[d + 1]).collect(),
    ))
}
