//! Independent reference implementations shared by the integration tests
//! and the acceptance runner. Nothing here calls into the library's own
//! face enumeration, homology or distance code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use bundletri::{Complex, Vertex};

/// Every nonempty face, by cardinality, from bitmask enumeration of facets.
pub fn brute_faces(c: &Complex) -> Vec<BTreeSet<Vec<Vertex>>> {
    let n = c.n();
    let mut out = vec![BTreeSet::new(); n + 1];
    for f in c.facets() {
        for mask in 1u32..(1 << n) {
            let face: Vec<Vertex> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
            out[face.len()].insert(face);
        }
    }
    out
}

/// `f_{-1}, f_0, ..., f_{n-1}`.
pub fn brute_f_vector(c: &Complex) -> Vec<i64> {
    let faces = brute_faces(c);
    let mut f = vec![1i64];
    f.extend(faces[1..].iter().map(|s| s.len() as i64));
    f
}

pub fn choose(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// `h_i` straight from the defining sum.
pub fn h_from_f_direct(f: &[i64]) -> Vec<i64> {
    let n = f.len() as i64 - 1;
    (0..=n)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                    sign * choose(n - j, i - j) * f[j as usize]
                })
                .sum()
        })
        .collect()
}

/// Rank over the rationals by Bareiss elimination on a dense BigInt matrix.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][col] != BigInt::from(0)) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for c2 in col + 1..cols {
                let v = (&m[rank][col] * &m[r][c2] - &m[r][col] * &m[rank][c2]) / &prev;
                m[r][c2] = v;
            }
            m[r][col] = BigInt::from(0);
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Dense boundary matrix from `k`-faces to `(k-1)`-faces (by cardinality).
pub fn dense_boundary(faces: &[BTreeSet<Vec<Vertex>>], k: usize) -> Vec<Vec<BigInt>> {
    let rows: BTreeMap<&Vec<Vertex>, usize> = faces[k - 1].iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut m = vec![vec![BigInt::from(0); faces[k].len()]; rows.len()];
    for (j, face) in faces[k].iter().enumerate() {
        for skip in 0..face.len() {
            let sub: Vec<Vertex> = face.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            m[rows[&sub]][j] = BigInt::from(if skip % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// Rational Betti numbers `beta_0 .. beta_{n-1}` via reduced ranks.
pub fn oracle_betti(c: &Complex) -> Vec<usize> {
    let n = c.n();
    let mut faces = brute_faces(c);
    faces[0].insert(Vec::new());
    // rank of the boundary from size-k faces to size-(k-1) faces, k = 2..=n
    let mut ranks = vec![0usize; n + 2];
    for k in 2..=n {
        ranks[k] = bareiss_rank(dense_boundary(&faces, k));
    }
    (1..=n)
        .map(|k| faces[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}

/// All-pairs shortest paths on the 1-skeleton by Floyd–Warshall.
pub fn floyd(c: &Complex) -> BTreeMap<(Vertex, Vertex), usize> {
    let vs = c.vertices();
    let idx: BTreeMap<Vertex, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let m = vs.len();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; m]; m];
    for i in 0..m {
        d[i][i] = 0;
    }
    for f in c.facets() {
        for &a in f {
            for &b in f {
                if a != b {
                    d[idx[&a]][idx[&b]] = 1;
                }
            }
        }
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for i in 0..m {
        for j in 0..m {
            out.insert((vs[i], vs[j]), d[i][j]);
        }
    }
    out
}

/// A copy of `c` under a random bijection onto `offset+1 ..= offset+m`.
pub fn random_relabel<R: Rng + ?Sized>(c: &Complex, offset: Vertex, rng: &mut R) -> (Complex, BTreeMap<Vertex, Vertex>) {
    let mut targets: Vec<Vertex> = (1..=c.num_vertices() as Vertex).map(|v| v + offset).collect();
    targets.shuffle(rng);
    let map: BTreeMap<Vertex, Vertex> = c.vertices().iter().copied().zip(targets).collect();
    let out = Complex::from_facets(c.facets().iter().map(|f| f.iter().map(|v| map[v]).collect::<Vec<_>>())).unwrap();
    (out, map)
}

/// Six-vertex real projective plane.
pub fn rp2() -> Complex {
    Complex::from_facets(vec![
        vec![1, 2, 3], vec![1, 3, 4], vec![1, 4, 5], vec![1, 5, 6], vec![1, 2, 6],
        vec![2, 3, 5], vec![3, 4, 6], vec![2, 4, 5], vec![3, 5, 6], vec![2, 4, 6],
    ])
    .unwrap()
}
