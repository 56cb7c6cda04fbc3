use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};

/// Which of the two sphere bundles over the circle a complex realizes, or
/// more generally whether a pseudomanifold is orientable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleType {
    Orientable,
    Nonorientable,
}

impl BundleType {
    pub fn is_orientable(self) -> bool {
        self == BundleType::Orientable
    }

    pub fn flipped(self) -> BundleType {
        match self {
            BundleType::Orientable => BundleType::Nonorientable,
            BundleType::Nonorientable => BundleType::Orientable,
        }
    }
}

impl fmt::Display for BundleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BundleType::Orientable => "orientable",
            BundleType::Nonorientable => "nonorientable",
        })
    }
}

/// Propagates `±1` facet signs along a spanning tree of the ridge graph.
///
/// Facet `F` with sign `s` induces sign `s * (-1)^i` on the ridge obtained by
/// deleting its `i`-th vertex; neighbors across a ridge must induce opposite
/// signs. Returns `None` when some ridge sees a conflict.
pub fn orientation_signs(c: &Complex) -> Result<Option<Vec<i8>>> {
    let report = c.pseudomanifold_report();
    if let Some(failure) = report.failure {
        return Err(Error::NotPseudomanifold(failure.to_string()));
    }
    // (neighbor, induced sign on the shared ridge from self, from neighbor)
    let mut adj: Vec<Vec<(usize, i8, i8)>> = vec![Vec::new(); c.num_facets()];
    for (ridge, owners) in c.ridge_incidence() {
        let [f, g] = [owners[0], owners[1]];
        let sf = ridge_sign(&c.facets()[f], &ridge);
        let sg = ridge_sign(&c.facets()[g], &ridge);
        adj[f].push((g, sf, sg));
        adj[g].push((f, sg, sf));
    }
    let mut sign = vec![0i8; c.num_facets()];
    sign[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        for &(g, sf, sg) in &adj[f] {
            let wanted = -(sign[f] * sf) * sg;
            if sign[g] == 0 {
                sign[g] = wanted;
                queue.push_back(g);
            } else if sign[g] != wanted {
                return Ok(None);
            }
        }
    }
    Ok(Some(sign))
}

pub(crate) fn ridge_sign(facet: &[u32], ridge: &[u32]) -> i8 {
    let missing = facet
        .iter()
        .position(|v| ridge.binary_search(v).is_err())
        .expect("ridge is a proper subset of facet");
    if missing % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn orientability(c: &Complex) -> Result<BundleType> {
    Ok(match orientation_signs(c)? {
        Some(_) => BundleType::Orientable,
        None => BundleType::Nonorientable,
    })
}
