//! Pure simplicial complexes stored as canonical facet lists.
//!
//! A [`Complex`] is immutable once built: its facets are sorted vertex lists,
//! the facet list itself is sorted lexicographically and free of duplicates,
//! and every facet has the same cardinality `n` (so the complex has
//! dimension `n - 1`). Vertex labels are arbitrary positive integers and need
//! not be contiguous.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Vertex = u32;

/// A sorted, duplicate-free vertex list.
pub type Face = Vec<Vertex>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex {
    n: usize,
    vertices: Vec<Vertex>,
    facets: Vec<Face>,
}

impl Complex {
    /// Builds a canonical complex from raw facets.
    ///
    /// Facets are sorted and deduplicated; coincident facets merge silently.
    pub fn from_facets<I, F, T>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = T>,
        T: Into<i64>,
    {
        let mut n = None;
        let mut out = Vec::new();
        for raw in facets {
            let raw: Vec<i64> = raw.into_iter().map(Into::into).collect();
            let mut face = Vec::with_capacity(raw.len());
            for &label in &raw {
                if label <= 0 {
                    return Err(Error::NonPositiveLabel(label));
                }
                let label = Vertex::try_from(label).map_err(|_| Error::Overflow("vertex label"))?;
                face.push(label);
            }
            face.sort_unstable();
            face.dedup();
            if face.len() != raw.len() {
                return Err(Error::RepeatedVertex(raw));
            }
            match n {
                None => n = Some(face.len()),
                Some(expected) if expected != face.len() => {
                    return Err(Error::MixedCardinality {
                        found: face.len(),
                        facet: raw,
                        expected,
                        line: None,
                    })
                }
                Some(_) => {}
            }
            out.push(face);
        }
        let n = n.ok_or(Error::EmptyInput)?;
        Ok(Self::from_canonical(n, out))
    }

    /// Builds a complex from facets that are already sorted, of cardinality
    /// `n`, with positive labels. Only list order and duplicates are fixed up.
    pub(crate) fn from_canonical(n: usize, mut facets: Vec<Face>) -> Self {
        debug_assert!(facets.iter().all(|f| f.len() == n && f.windows(2).all(|w| w[0] < w[1])));
        facets.sort_unstable();
        facets.dedup();
        let vertices: BTreeSet<Vertex> = facets.iter().flatten().copied().collect();
        Complex {
            n,
            vertices: vertices.into_iter().collect(),
            facets,
        }
    }

    /// Facet cardinality; the complex has dimension `n - 1`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> isize {
        self.n as isize - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// `face` must be sorted.
    pub fn has_facet(&self, face: &[Vertex]) -> bool {
        self.facets
            .binary_search_by(|f| f.as_slice().cmp(face))
            .is_ok()
    }

    /// True if `face` (any order) is contained in some facet. The empty set
    /// is a face of every complex.
    pub fn is_face(&self, face: &[Vertex]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// Applies a vertex map to every facet. Faces that collapse (a facet
    /// losing a vertex) are rejected; coincident images merge.
    pub fn map_vertices(&self, mut map: impl FnMut(Vertex) -> Vertex) -> Result<Complex> {
        let mut out = Vec::with_capacity(self.facets.len());
        for facet in &self.facets {
            let mut image: Face = facet.iter().map(|&v| map(v)).collect();
            image.sort_unstable();
            image.dedup();
            if image.len() != self.n {
                return Err(Error::NonSimplicialQuotient(facet.clone()));
            }
            if image.first() == Some(&0) {
                return Err(Error::NonPositiveLabel(0));
            }
            out.push(image);
        }
        Ok(Complex::from_canonical(self.n, out))
    }

    /// Relabels vertices to `1..=m` in increasing label order.
    pub fn canonical_relabel(&self) -> Complex {
        let index: HashMap<Vertex, Vertex> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as Vertex + 1))
            .collect();
        self.map_vertices(|v| index[&v])
            .expect("a bijective relabeling keeps facets intact")
    }

    /// All nonempty faces, grouped by cardinality: entry `k` holds the faces
    /// with `k + 1` vertices.
    pub fn faces_by_size(&self) -> Vec<BTreeSet<Face>> {
        let mut levels = vec![BTreeSet::new(); self.n];
        for facet in &self.facets {
            for_each_nonempty_subset(facet, |sub| {
                levels[sub.len() - 1].insert(sub.to_vec());
            });
        }
        levels
    }

    /// Faces of a given cardinality, sorted lexicographically.
    pub fn faces_of_size(&self, k: usize) -> Vec<Face> {
        if k == 0 {
            return vec![Vec::new()];
        }
        if k > self.n {
            return Vec::new();
        }
        let mut set = BTreeSet::new();
        for facet in &self.facets {
            for_each_subset_of_size(facet, k, |sub| {
                set.insert(sub.to_vec());
            });
        }
        set.into_iter().collect()
    }

    pub fn edges(&self) -> BTreeSet<(Vertex, Vertex)> {
        let mut edges = BTreeSet::new();
        for facet in &self.facets {
            for (i, &a) in facet.iter().enumerate() {
                for &b in &facet[i + 1..] {
                    edges.insert((a, b));
                }
            }
        }
        edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges().len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.facets
            .iter()
            .any(|f| f.binary_search(&a).is_ok() && f.binary_search(&b).is_ok())
    }

    /// Neighbors of every vertex in the 1-skeleton.
    pub fn adjacency(&self) -> BTreeMap<Vertex, BTreeSet<Vertex>> {
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> =
            self.vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
        for (a, b) in self.edges() {
            adj.get_mut(&a).unwrap().insert(b);
            adj.get_mut(&b).unwrap().insert(a);
        }
        adj
    }

    /// Facets containing `v`.
    pub fn star_facets(&self, v: Vertex) -> Vec<&Face> {
        self.facets
            .iter()
            .filter(|f| f.binary_search(&v).is_ok())
            .collect()
    }

    pub fn f_vector(&self) -> FVector {
        let mut entries = vec![1i64];
        entries.extend(self.faces_by_size().iter().map(|s| s.len() as i64));
        FVector(entries)
    }

    pub fn h_vector(&self) -> Result<HVector> {
        h_from_f(&self.f_vector(), self.n)
    }

    pub fn g_vector(&self) -> Result<GVector> {
        Ok(g_vector(&self.h_vector()?))
    }

    /// Alternating sum `f_0 - f_1 + f_2 - ...`.
    pub fn euler_characteristic(&self) -> i64 {
        euler_of(&self.f_vector())
    }

    /// `h_{n-i} - h_i - (-1)^i C(n,i) (chi - chi(S^{n-1}))` for `i = 0..=n`.
    /// All zero exactly when the Dehn-Sommerville relations of a closed
    /// manifold hold.
    pub fn klee_residual(&self) -> Result<Vec<i64>> {
        let f = self.f_vector();
        let h = h_from_f(&f, self.n)?;
        let n = self.n;
        let chi = euler_of(&f);
        let sphere_chi = if (n as i64 - 1) % 2 == 0 { 2 } else { 0 };
        let excess = chi - sphere_chi;
        (0..=n)
            .map(|i| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let term = binomial(n as u64, i as u64)?
                    .checked_mul(excess)
                    .and_then(|t| t.checked_mul(sign))
                    .ok_or(Error::Overflow("Klee residual"))?;
                h.0[n - i]
                    .checked_sub(h.0[i])
                    .and_then(|d| d.checked_sub(term))
                    .ok_or(Error::Overflow("Klee residual"))
            })
            .collect()
    }

    /// The link of `face`: all `G` disjoint from `face` with `G ∪ face` a face.
    ///
    /// The link of a facet is the complex whose only face is the empty set
    /// (`n() == 0`, one empty facet, no vertices).
    pub fn link(&self, face: &[Vertex]) -> Result<Complex> {
        let mut face = face.to_vec();
        face.sort_unstable();
        face.dedup();
        let facets: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| is_subset(&face, f))
            .map(|f| f.iter().copied().filter(|v| face.binary_search(v).is_err()).collect())
            .collect();
        if facets.is_empty() {
            return Err(Error::NotAFace(face));
        }
        Ok(Complex::from_canonical(self.n - face.len(), facets))
    }

    /// All nonempty faces whose vertices lie in `subset`, ordered by size and
    /// then lexicographically. Labels outside the complex contribute nothing.
    pub fn induced_subcomplex(&self, subset: &[Vertex]) -> Vec<Face> {
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        let mut faces = BTreeSet::new();
        for facet in &self.facets {
            let restricted: Face = facet
                .iter()
                .copied()
                .filter(|v| subset.binary_search(v).is_ok())
                .collect();
            for_each_nonempty_subset(&restricted, |sub| {
                faces.insert(sub.to_vec());
            });
        }
        let mut faces: Vec<Face> = faces.into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        faces
    }

    /// BFS distances from `source` to every reachable vertex.
    pub fn distances_from(&self, source: Vertex) -> Result<BTreeMap<Vertex, usize>> {
        if !self.has_vertex(source) {
            return Err(Error::UnknownVertex(source));
        }
        Ok(bfs(&self.adjacency(), source))
    }

    /// Length of a shortest edge path between `u` and `v`.
    pub fn graph_distance(&self, u: Vertex, v: Vertex) -> Result<usize> {
        if !self.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        self.distances_from(u)?
            .get(&v)
            .copied()
            .ok_or(Error::Disconnected(u, v))
    }

    /// Ridges (faces of cardinality `n - 1`) with the indices of the facets
    /// containing them.
    pub(crate) fn ridge_incidence(&self) -> BTreeMap<Face, Vec<usize>> {
        let mut ridges: BTreeMap<Face, Vec<usize>> = BTreeMap::new();
        for (idx, facet) in self.facets.iter().enumerate() {
            for skip in 0..facet.len() {
                let ridge: Face = facet
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                ridges.entry(ridge).or_default().push(idx);
            }
        }
        ridges
    }

    /// Checks that every ridge lies in exactly two facets and that facets
    /// are connected through shared ridges. Purity holds by construction.
    pub fn pseudomanifold_report(&self) -> PseudomanifoldReport {
        let ridges = self.ridge_incidence();
        if let Some((ridge, owners)) = ridges.iter().find(|(_, o)| o.len() != 2) {
            return PseudomanifoldReport {
                failure: Some(PseudomanifoldFailure::RidgeDegree {
                    ridge: ridge.clone(),
                    facets: owners.len(),
                }),
            };
        }
        let mut neighbors = vec![Vec::new(); self.facets.len()];
        for owners in ridges.values() {
            neighbors[owners[0]].push(owners[1]);
            neighbors[owners[1]].push(owners[0]);
        }
        let mut seen = vec![false; self.facets.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for &j in &neighbors[i] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        let failure = seen
            .iter()
            .position(|s| !s)
            .map(|i| PseudomanifoldFailure::Disconnected {
                unreachable_facet: self.facets[i].clone(),
            });
        PseudomanifoldReport { failure }
    }

    pub fn is_pseudomanifold(&self) -> bool {
        self.pseudomanifold_report().passed()
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for facet in &self.facets {
            let line: Vec<String> = facet.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudomanifoldReport {
    pub failure: Option<PseudomanifoldFailure>,
}

impl PseudomanifoldReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PseudomanifoldFailure {
    /// A ridge lies in a number of facets other than two.
    RidgeDegree { ridge: Face, facets: usize },
    /// The facet-adjacency graph is disconnected.
    Disconnected { unreachable_facet: Face },
}

impl fmt::Display for PseudomanifoldFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PseudomanifoldFailure::RidgeDegree { ridge, facets } => {
                write!(f, "ridge {ridge:?} lies in {facets} facets")
            }
            PseudomanifoldFailure::Disconnected { unreachable_facet } => {
                write!(f, "facet {unreachable_facet:?} is not reachable through ridges")
            }
        }
    }
}

/// Face numbers `f_{-1}, f_0, ..., f_{n-1}` with `f_{-1} = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FVector(Vec<i64>);

impl FVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        match entries.first() {
            None => Err(Error::LengthMismatch {
                expected: 1,
                found: 0,
            }),
            Some(&1) => Ok(FVector(entries)),
            Some(&other) => Err(Error::BadEmptyFaceCount(other)),
        }
    }

    /// Entries starting at `f_{-1}`.
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// `f_0, f_1, ...` without the empty face.
    pub fn face_counts(&self) -> &[i64] {
        &self.0[1..]
    }

    /// Number of faces of dimension `dim` (`-1` for the empty face).
    pub fn count(&self, dim: isize) -> i64 {
        self.0.get((dim + 1) as usize).copied().unwrap_or(0)
    }
}

/// `h_0, ..., h_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct HVector(Vec<i64>);

impl HVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        match entries.first() {
            None => Err(Error::LengthMismatch {
                expected: 1,
                found: 0,
            }),
            Some(&1) => Ok(HVector(entries)),
            Some(&other) => Err(Error::BadEmptyFaceCount(other)),
        }
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

/// `g_0, ..., g_{max(floor(n/2), 2)}` with `g_i = h_i - h_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct GVector(Vec<i64>);

impl GVector {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn g2(&self) -> Option<i64> {
        self.0.get(2).copied()
    }
}

macro_rules! impl_tuple_display {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    )*};
}

impl_tuple_display!(FVector, HVector, GVector);

/// `h_i = sum_{j=0}^{i} (-1)^{i-j} C(n-j, n-i) f_{j-1}`.
pub fn h_from_f(f: &FVector, n: usize) -> Result<HVector> {
    if f.0.len() != n + 1 {
        return Err(Error::LengthMismatch {
            expected: n + 1,
            found: f.0.len(),
        });
    }
    let mut h = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc: i64 = 0;
        for j in 0..=i {
            let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
            let term = binomial((n - j) as u64, (n - i) as u64)?
                .checked_mul(f.0[j])
                .and_then(|t| t.checked_mul(sign))
                .ok_or(Error::Overflow("h-vector"))?;
            acc = acc.checked_add(term).ok_or(Error::Overflow("h-vector"))?;
        }
        h.push(acc);
    }
    Ok(HVector(h))
}

/// `f_{i-1} = sum_{j=0}^{i} C(n-j, n-i) h_j`.
pub fn f_from_h(h: &HVector, n: usize) -> Result<FVector> {
    if h.0.len() != n + 1 {
        return Err(Error::LengthMismatch {
            expected: n + 1,
            found: h.0.len(),
        });
    }
    let mut f = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc: i64 = 0;
        for j in 0..=i {
            let term = binomial((n - j) as u64, (n - i) as u64)?
                .checked_mul(h.0[j])
                .ok_or(Error::Overflow("f-vector"))?;
            acc = acc.checked_add(term).ok_or(Error::Overflow("f-vector"))?;
        }
        f.push(acc);
    }
    Ok(FVector(f))
}

/// `g_i = h_i - h_{i-1}` for `i` up to `floor(n/2)`, and always up to
/// `g_2` when `n >= 2`.
pub fn g_vector(h: &HVector) -> GVector {
    let n = h.0.len() - 1;
    let top = (n / 2).max(2).min(n);
    let mut g = vec![h.0[0]];
    g.extend((1..=top).map(|i| h.0[i] - h.0[i - 1]));
    GVector(g)
}

fn euler_of(f: &FVector) -> i64 {
    f.face_counts()
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { c } else { -c })
        .sum()
}

/// Checked binomial coefficient.
pub fn binomial(n: u64, k: u64) -> Result<i64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
        if acc > i64::MAX as i128 {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as i64)
}

/// Both slices sorted.
pub(crate) fn is_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    let mut it = big.iter();
    small.iter().all(|v| it.any(|w| w == v))
}

pub(crate) fn bfs(
    adj: &BTreeMap<Vertex, BTreeSet<Vertex>>,
    source: Vertex,
) -> BTreeMap<Vertex, usize> {
    let mut dist = BTreeMap::from([(source, 0usize)]);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for &w in &adj[&v] {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

fn for_each_nonempty_subset(set: &[Vertex], mut visit: impl FnMut(&[Vertex])) {
    let k = set.len();
    let mut buf = Vec::with_capacity(k);
    for mask in 1u64..(1u64 << k) {
        buf.clear();
        buf.extend((0..k).filter(|i| mask & (1 << i) != 0).map(|i| set[i]));
        visit(&buf);
    }
}

fn for_each_subset_of_size(set: &[Vertex], size: usize, mut visit: impl FnMut(&[Vertex])) {
    fn rec(
        set: &[Vertex],
        start: usize,
        size: usize,
        buf: &mut Vec<Vertex>,
        visit: &mut dyn FnMut(&[Vertex]),
    ) {
        if buf.len() == size {
            visit(buf);
            return;
        }
        for i in start..set.len() {
            if set.len() - i < size - buf.len() {
                break;
            }
            buf.push(set[i]);
            rec(set, i + 1, size, buf, visit);
            buf.pop();
        }
    }
    rec(set, 0, size, &mut Vec::with_capacity(size), &mut visit);
}
