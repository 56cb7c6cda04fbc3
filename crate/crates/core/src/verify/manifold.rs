use serde::Serialize;

use crate::complex::{Complex, PseudomanifoldReport, Vertex};
use crate::error::Result;
use crate::verify::homology::betti_numbers;
use crate::verify::orient::orientation_signs;

/// Per-vertex link check: rational homology of a sphere of dimension
/// `n - 2`, and orientability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkEvidence {
    pub vertex: Vertex,
    pub betti: Vec<usize>,
    pub sphere_homology: bool,
    pub orientable: bool,
}

impl LinkEvidence {
    pub fn passed(&self) -> bool {
        self.sphere_homology && self.orientable
    }
}

/// Necessary conditions for a closed manifold. This is evidence, not a
/// proof: links are only checked up to rational homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifoldEvidence {
    pub pseudomanifold: PseudomanifoldReport,
    pub links: Vec<LinkEvidence>,
}

impl ManifoldEvidence {
    pub fn passed(&self) -> bool {
        self.pseudomanifold.passed() && self.links.iter().all(LinkEvidence::passed)
    }

    pub fn failed_links(&self) -> impl Iterator<Item = &LinkEvidence> {
        self.links.iter().filter(|l| !l.passed())
    }
}

pub fn manifold_evidence(c: &Complex) -> Result<ManifoldEvidence> {
    let sphere_dim = c.n() as isize - 2;
    let mut links = Vec::with_capacity(c.num_vertices());
    for &v in c.vertices() {
        let lk = c.link(&[v])?;
        let betti = betti_numbers(&lk)?.0;
        let expected: Vec<usize> = match sphere_dim {
            d if d < 0 => Vec::new(),
            0 => vec![2],
            d => (0..=d).map(|i| usize::from(i == 0 || i == d)).collect(),
        };
        let orientable = lk.n() == 0
            || (lk.is_pseudomanifold() && matches!(orientation_signs(&lk), Ok(Some(_))));
        links.push(LinkEvidence {
            vertex: v,
            sphere_homology: betti == expected,
            betti,
            orientable,
        });
    }
    Ok(ManifoldEvidence {
        pseudomanifold: c.pseudomanifold_report(),
        links,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stacked::boundary_of_simplex;

    #[test]
    fn simplex_boundary_passes() {
        for n in 3..6 {
            assert!(manifold_evidence(&boundary_of_simplex(n).unwrap()).unwrap().passed());
        }
    }

    #[test]
    fn wedge_of_spheres_fails_at_the_pinch() {
        let a = boundary_of_simplex(4).unwrap();
        let b = a.map_vertices(|v| v + 4).unwrap();
        let wedge = Complex::from_facets(a.facets().iter().chain(b.facets()).cloned()).unwrap();
        let evidence = manifold_evidence(&wedge).unwrap();
        assert!(!evidence.passed());
        let bad: Vec<Vertex> = evidence.failed_links().map(|l| l.vertex).collect();
        assert_eq!(bad, vec![5]);
        let pinch = evidence.links.iter().find(|l| l.vertex == 5).unwrap();
        assert_eq!(pinch.betti, vec![2, 0, 2]);
    }
}
