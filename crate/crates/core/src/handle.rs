//! Handle addition on stacked spheres.
//!
//! Two facets of a sphere are glued by a vertex bijection and then removed,
//! giving a triangulation of a sphere bundle over the circle. Built on top:
//! the cyclic description of the minimal triangulations, the minimal and
//! non-minimal identified stacked spheres for both bundle types, the
//! reduction of a two-stack sphere to a one-stack sphere, and the
//! orientation double cover.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::complex::{binomial, Complex, Face, Vertex};
use crate::error::{Error, Result};
use crate::stacked::{build_delta, stack_decomposition, subdivide_facet, SubdivisionStep, SubdivisionTrace};
use crate::verify::{orientability, orientation_signs, ridge_sign, BundleType};

/// Vertex pairs `(u_i, w_i)`; `w_i` is glued onto `u_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pairing {
    pairs: Vec<(Vertex, Vertex)>,
}

impl Pairing {
    pub fn new(pairs: Vec<(Vertex, Vertex)>) -> Result<Self> {
        let mut us: Vec<Vertex> = pairs.iter().map(|p| p.0).collect();
        let mut ws: Vec<Vertex> = pairs.iter().map(|p| p.1).collect();
        us.sort_unstable();
        us.dedup();
        ws.sort_unstable();
        ws.dedup();
        if pairs.is_empty() || us.len() != pairs.len() || ws.len() != pairs.len() {
            return Err(Error::InvalidPairing(format!("{pairs:?} is not a bijection")));
        }
        Ok(Pairing { pairs })
    }

    /// `(i, f0 + i)` for `i = 1..=n`.
    pub fn standard(n: usize, f0: usize) -> Self {
        let pairs = (1..=n).map(|i| (i as Vertex, (f0 + i) as Vertex)).collect();
        Pairing { pairs }
    }

    /// The standard pairing with the partners of `n - 1` and `n` exchanged.
    pub fn swapped(n: usize, f0: usize) -> Self {
        let mut p = Pairing::standard(n, f0);
        let len = p.pairs.len();
        let (a, b) = (p.pairs[len - 2].1, p.pairs[len - 1].1);
        p.pairs[len - 2].1 = b;
        p.pairs[len - 1].1 = a;
        p
    }

    pub fn for_variant(variant: PairingVariant, n: usize, f0: usize) -> Self {
        match variant {
            PairingVariant::Standard => Pairing::standard(n, f0),
            PairingVariant::Swapped => Pairing::swapped(n, f0),
        }
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    /// The facet that survives the gluing, sorted.
    pub fn kept_facet(&self) -> Face {
        let mut f: Face = self.pairs.iter().map(|p| p.0).collect();
        f.sort_unstable();
        f
    }

    /// The facet glued onto [`Pairing::kept_facet`], sorted.
    pub fn glued_facet(&self) -> Face {
        let mut f: Face = self.pairs.iter().map(|p| p.1).collect();
        f.sort_unstable();
        f
    }

    /// Where `v` lands after gluing: `w_i` becomes `u_i`, others are fixed.
    pub fn glued_image(&self, v: Vertex) -> Vertex {
        self.pairs
            .iter()
            .find(|p| p.1 == v)
            .map_or(v, |p| p.0)
    }
}

/// Which of the two fixed pairings on `Δ_{f0}` is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairingVariant {
    Standard,
    Swapped,
}

impl fmt::Display for PairingVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairingVariant::Standard => "standard",
            PairingVariant::Swapped => "swapped",
        })
    }
}

impl FromStr for PairingVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(PairingVariant::Standard),
            "swapped" => Ok(PairingVariant::Swapped),
            other => Err(Error::InvalidPairing(format!("unknown variant {other:?}"))),
        }
    }
}

/// A pair `(u, w)` drawn from different matched pairs that sits closer than
/// distance three. Reported, not rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossPairWarning {
    pub u: Vertex,
    pub w: Vertex,
    pub distance: usize,
}

impl fmt::Display for CrossPairWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unmatched vertices {} and {} of the glued facets are at distance {}",
            self.u, self.w, self.distance
        )
    }
}

pub fn cross_pair_warnings(sphere: &Complex, pairing: &Pairing) -> Result<Vec<CrossPairWarning>> {
    let mut out = Vec::new();
    for (i, &(u, _)) in pairing.pairs.iter().enumerate() {
        let dist = sphere.distances_from(u)?;
        for (j, &(_, w)) in pairing.pairs.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = *dist.get(&w).ok_or(Error::Disconnected(u, w))?;
            if d < 3 {
                out.push(CrossPairWarning { u, w, distance: d });
            }
        }
    }
    Ok(out)
}

/// Glues the facet `{w_i}` onto `{u_i}` and removes the glued facet.
///
/// Every matched pair must be at distance at least three in the sphere.
/// The gluing map must also be injective on all faces other than the
/// subfaces of the two identified facets, and the quotient must be a
/// pseudomanifold.
pub fn handle_addition(sphere: &Complex, pairing: &Pairing) -> Result<Complex> {
    let n = sphere.n();
    if pairing.pairs.len() != n {
        return Err(Error::InvalidPairing(format!(
            "{} pairs for facets of size {n}",
            pairing.pairs.len()
        )));
    }
    let kept = pairing.kept_facet();
    let glued = pairing.glued_facet();
    for f in [&kept, &glued] {
        if !sphere.has_facet(f) {
            return Err(Error::NotAFacet(f.clone()));
        }
    }
    for &(u, w) in &pairing.pairs {
        let d = sphere.graph_distance(u, w)?;
        if d < 3 {
            return Err(Error::DistanceViolation { u, w, distance: d });
        }
    }

    let mut seen: HashMap<Face, Face> = HashMap::new();
    for face in sphere.faces_by_size().into_iter().flatten() {
        let mut image: Face = face.iter().map(|&v| pairing.glued_image(v)).collect();
        image.sort_unstable();
        image.dedup();
        if image.len() != face.len() {
            return Err(Error::NonSimplicialQuotient(face));
        }
        if let Some(prev) = seen.get(&image) {
            let inside = |f: &Face, side: &Face| f.iter().all(|v| side.binary_search(v).is_ok());
            let glued_pair = (inside(prev, &kept) && inside(&face, &glued))
                || (inside(prev, &glued) && inside(&face, &kept));
            if !glued_pair {
                return Err(Error::NonSimplicialQuotient(face));
            }
        } else {
            seen.insert(image, face);
        }
    }

    let facets: Vec<Face> = sphere
        .facets()
        .iter()
        .filter(|f| **f != kept && **f != glued)
        .map(|f| {
            let mut image: Face = f.iter().map(|&v| pairing.glued_image(v)).collect();
            image.sort_unstable();
            image
        })
        .collect();
    let quotient = Complex::from_canonical(n, facets);

    if let Some(failure) = quotient.pseudomanifold_report().failure {
        return Err(Error::NotPseudomanifold(failure.to_string()));
    }
    let expected_edges = sphere.num_edges() as i64 - binomial(n as u64, 2)?;
    if quotient.num_vertices() + n != sphere.num_vertices()
        || quotient.num_facets() + 2 != sphere.num_facets()
        || quotient.num_edges() as i64 != expected_edges
    {
        return Err(Error::Invariant(format!(
            "handle addition changed (vertices, facets, edges) from ({}, {}, {}) to ({}, {}, {})",
            sphere.num_vertices(),
            sphere.num_facets(),
            sphere.num_edges(),
            quotient.num_vertices(),
            quotient.num_facets(),
            quotient.num_edges()
        )));
    }
    Ok(quotient)
}

/// The cyclic `(2n+1)`-vertex complex: all `n`-subsets of the windows
/// `{t, ..., t+n}` (mod `2n+1`) except the two consecutive ones.
pub fn kuhnel_mn(n: usize) -> Result<Complex> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    let m = 2 * n + 1;
    let mut facets = Vec::with_capacity((n - 1) * m);
    for t in 0..m {
        let window: Vec<Vertex> = (0..=n).map(|k| ((t + k) % m) as Vertex + 1).collect();
        for skip in 1..n {
            let mut f: Face = window
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            f.sort_unstable();
            facets.push(f);
        }
    }
    Ok(Complex::from_canonical(n, facets))
}

/// The minimal identified stacked sphere: `Δ_{2n+1}` with `i` glued to
/// `2n+1+i`.
pub fn build_miss(n: usize) -> Result<Complex> {
    let f0 = 2 * n + 1;
    let (sphere, _) = build_delta(n, f0)?;
    handle_addition(&sphere, &Pairing::standard(n, f0))
}

/// Fewest vertices of a triangulation of the requested bundle with facets
/// of size `n`.
pub fn minimum_vertices(n: usize, bundle: BundleType) -> usize {
    let odd = n % 2 == 1;
    if odd == bundle.is_orientable() {
        2 * n + 1
    } else {
        2 * n + 2
    }
}

/// An identified stacked sphere together with how it was glued.
#[derive(Clone, Debug)]
pub struct Iss {
    pub complex: Complex,
    pub variant: PairingVariant,
    pub pairing: Pairing,
    pub bundle: BundleType,
    pub warnings: Vec<CrossPairWarning>,
}

/// Glues `Δ_{f0}` with the given pairing variant. The bundle type is
/// computed from the result.
pub fn build_iss_with_variant(n: usize, f0: usize, variant: PairingVariant) -> Result<Iss> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    let min = match variant {
        PairingVariant::Standard => 2 * n + 1,
        PairingVariant::Swapped => 2 * n + 2,
    };
    if f0 < min {
        return Err(Error::InfeasibleVertexCount { n, f0 });
    }
    let (sphere, _) = build_delta(n, f0)?;
    let pairing = Pairing::for_variant(variant, n, f0);
    let complex = handle_addition(&sphere, &pairing)?;
    let warnings = cross_pair_warnings(&sphere, &pairing)?;
    let bundle = orientability(&complex)?;
    Ok(Iss {
        complex,
        variant,
        pairing,
        bundle,
        warnings,
    })
}

/// An identified stacked sphere with `f0` vertices and `n * f0` edges
/// triangulating the requested bundle.
pub fn build_iss(n: usize, f0: usize, bundle: BundleType) -> Result<Iss> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    if f0 < minimum_vertices(n, bundle) {
        return Err(Error::InfeasibleVertexCount { n, f0 });
    }
    let standard = build_iss_with_variant(n, f0, PairingVariant::Standard)?;
    if standard.bundle == bundle {
        return Ok(standard);
    }
    if f0 < 2 * n + 2 {
        return Err(Error::InfeasibleVertexCount { n, f0 });
    }
    let swapped = build_iss_with_variant(n, f0, PairingVariant::Swapped)?;
    if swapped.bundle != bundle {
        return Err(Error::OrientationMismatch);
    }
    Ok(swapped)
}

/// Moves the subdivisions of one stack onto the other until a single stack
/// remains, keeping the glued quotient unchanged up to isomorphism.
///
/// Each round takes the top vertex `t` of the stack holding the kept facet,
/// undoes the subdivision that created it (restoring facet `F`), and
/// subdivides the glued facet with a new vertex that reuses the label `t`.
/// The pair `(t, w)` becomes `(x, t)` where `x` is the vertex of `F`
/// outside the kept facet.
pub fn two_stack_reduction(
    sphere: &Complex,
    trace: &SubdivisionTrace,
    pairing: &Pairing,
) -> Result<(Complex, SubdivisionTrace, Pairing)> {
    if &trace.replay()? != sphere {
        return Err(Error::InvalidTrace("trace does not reproduce the sphere".into()));
    }
    let stacks = stack_decomposition(trace)?;
    if stacks.len() != 2 {
        return Err(Error::NotTwoStacks(stacks.len()));
    }
    let mut sphere = sphere.clone();
    let mut trace = trace.clone();
    let mut pairing = pairing.clone();
    loop {
        let stacks = stack_decomposition(&trace)?;
        if stacks.len() < 2 {
            break;
        }
        let kept = pairing.kept_facet();
        let glued = pairing.glued_facet();
        let (Some(sk), Some(sg)) = (stacks.stack_with_top(&kept), stacks.stack_with_top(&glued)) else {
            return Err(Error::PairingNotOnTops);
        };
        if sk == sg || stacks.len() != 2 {
            return Err(Error::PairingNotOnTops);
        }
        let stack = &stacks.stacks[sk];
        let leaf = *stack.steps.last().expect("stacks are nonempty");
        let top = stack.top_vertex;
        let restored = trace.steps[leaf].facet.clone();
        let outside = *restored
            .iter()
            .find(|v| kept.binary_search(v).is_err())
            .expect("restored facet differs from the kept facet");
        if !pairing.pairs.iter().any(|p| p.0 == top) {
            return Err(Error::PairingNotOnTops);
        }

        trace.steps.remove(leaf);
        let mut facets: Vec<Face> = sphere
            .facets()
            .iter()
            .filter(|f| f.binary_search(&top).is_err())
            .cloned()
            .collect();
        facets.push(restored);
        let undone = Complex::from_canonical(sphere.n(), facets);
        sphere = subdivide_facet(&undone, &glued, top)?;
        trace.steps.push(SubdivisionStep {
            facet: glued,
            new_vertex: top,
        });
        pairing = Pairing::new(
            pairing
                .pairs
                .iter()
                .map(|&(u, w)| if u == top { (outside, top) } else { (u, w) })
                .collect(),
        )?;
        debug_assert_eq!(trace.replay().as_ref(), Ok(&sphere));
    }
    for &(u, w) in &pairing.pairs {
        let d = sphere.graph_distance(u, w)?;
        if d < 3 {
            return Err(Error::DistanceViolation { u, w, distance: d });
        }
    }
    Ok((sphere, trace, pairing))
}

/// The two-sheeted cover on which facet orientations become consistent.
///
/// Sheets are oriented facets `(F, ±1)`. Oriented facets sharing a ridge are
/// adjacent when they induce opposite orientations on it. A vertex `v` lifts
/// to one cover vertex per class of oriented facets around `v` connected
/// through ridges containing `v`. Lifts of vertex `v` get labels
/// `index(v) + 1`, then `index(v) + 1 + m`, and so on.
pub fn orientation_double_cover(c: &Complex) -> Result<Complex> {
    if orientation_signs(c)?.is_some() {
        return Err(Error::AlreadyOrientable);
    }
    let facets = c.facets();
    let node = |f: usize, positive: bool| 2 * f + usize::from(!positive);
    let mut adjacency: Vec<Vec<(usize, Face)>> = vec![Vec::new(); 2 * facets.len()];
    for (ridge, owners) in c.ridge_incidence() {
        let [f, g] = [owners[0], owners[1]];
        let product = ridge_sign(&facets[f], &ridge) * ridge_sign(&facets[g], &ridge);
        for positive in [true, false] {
            // eps_g = -eps_f * s_f * s_g
            let g_positive = if product > 0 { !positive } else { positive };
            adjacency[node(f, positive)].push((node(g, g_positive), ridge.clone()));
            adjacency[node(g, g_positive)].push((node(f, positive), ridge.clone()));
        }
    }

    // Union-find over (vertex, oriented facet) incidences.
    let mut slot: HashMap<(Vertex, usize), usize> = HashMap::new();
    for (f, facet) in facets.iter().enumerate() {
        for positive in [true, false] {
            for &v in facet {
                let next = slot.len();
                slot.insert((v, node(f, positive)), next);
            }
        }
    }
    let mut parent: Vec<usize> = (0..slot.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, neighbors) in adjacency.iter().enumerate() {
        for (b, ridge) in neighbors {
            for &v in ridge {
                let (x, y) = (slot[&(v, a)], slot[&(v, *b)]);
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                parent[rx] = ry;
            }
        }
    }

    let index: HashMap<Vertex, usize> = c.vertices().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let m = c.num_vertices();
    // For each vertex, its classes ordered by the smallest oriented facet.
    let mut classes: BTreeMap<Vertex, Vec<(usize, usize)>> = BTreeMap::new();
    let mut keys: Vec<(&(Vertex, usize), &usize)> = slot.iter().collect();
    keys.sort_unstable();
    for (&(v, nd), &s) in keys {
        let root = find(&mut parent, s);
        let list = classes.entry(v).or_default();
        if !list.iter().any(|&(r, _)| r == root) {
            list.push((root, nd));
        }
    }
    let mut label: HashMap<usize, Vertex> = HashMap::new();
    for (v, list) in &classes {
        let mut list = list.clone();
        list.sort_by_key(|&(_, nd)| nd);
        for (rank, (root, _)) in list.into_iter().enumerate() {
            label.insert(root, (rank * m + index[v] + 1) as Vertex);
        }
    }

    let mut cover = Vec::with_capacity(2 * facets.len());
    for (f, facet) in facets.iter().enumerate() {
        for positive in [true, false] {
            let mut lifted: Face = facet
                .iter()
                .map(|&v| label[&find(&mut parent, slot[&(v, node(f, positive))])])
                .collect();
            lifted.sort_unstable();
            lifted.dedup();
            if lifted.len() != c.n() {
                return Err(Error::Invariant(format!("facet {facet:?} collapses in the cover")));
            }
            cover.push(lifted);
        }
    }
    let cover = Complex::from_canonical(c.n(), cover);
    if cover.num_facets() != 2 * facets.len() {
        return Err(Error::Invariant("oriented facets merged in the cover".into()));
    }
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kuhnel_facets() {
        let m4 = kuhnel_mn(4).unwrap();
        assert!(m4.has_facet(&[1, 2, 3, 5]));
        assert!(!m4.has_facet(&[1, 2, 3, 4]));
        assert_eq!(m4.num_facets(), 27);
        let csaszar = kuhnel_mn(3).unwrap();
        assert_eq!(csaszar.f_vector().face_counts(), &[7, 21, 14]);
    }

    #[test]
    fn miss_from_schedule() {
        let m4 = build_miss(4).unwrap();
        assert_eq!((m4.num_vertices(), m4.num_facets(), m4.num_edges()), (9, 27, 36));
    }

    #[test]
    fn close_pairs_are_rejected() {
        let (d2, _) = build_delta(4, 2).unwrap();
        let p = Pairing::new(vec![(1, 6), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(
            handle_addition(&d2, &p),
            Err(Error::DistanceViolation { u: 1, w: 6, distance: 2 })
        );
        assert!(Pairing::new(vec![(1, 6), (2, 6)]).is_err());
    }

    #[test]
    fn iss_feasibility() {
        let m5 = build_iss(5, 11, BundleType::Orientable).unwrap();
        assert_eq!(m5.complex.num_edges(), 55);
        assert_eq!(
            build_iss(5, 11, BundleType::Nonorientable).unwrap_err(),
            Error::InfeasibleVertexCount { n: 5, f0: 11 }
        );
        let twisted = build_iss(5, 12, BundleType::Nonorientable).unwrap();
        assert_eq!(twisted.complex.num_vertices(), 12);
        assert_eq!(twisted.complex.num_edges(), 60);
        assert_eq!(orientability(&twisted.complex).unwrap(), BundleType::Nonorientable);
    }

    #[test]
    fn cover_refuses_orientable_input() {
        assert_eq!(
            orientation_double_cover(&build_miss(5).unwrap()),
            Err(Error::AlreadyOrientable)
        );
    }

    #[test]
    fn reduction_needs_two_stacks() {
        let (sphere, trace) = build_delta(4, 9).unwrap();
        assert_eq!(
            two_stack_reduction(&sphere, &trace, &Pairing::standard(4, 9)),
            Err(Error::NotTwoStacks(1))
        );
    }

    #[test]
    fn variant_names() {
        assert_eq!("swapped".parse::<PairingVariant>().unwrap(), PairingVariant::Swapped);
        assert!("other".parse::<PairingVariant>().is_err());
        assert_eq!(Pairing::swapped(5, 12).pairs()[3..], [(4, 17), (5, 16)]);
    }
}
