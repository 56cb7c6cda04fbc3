//! Stacked spheres: the subdivision schedule, distance vectors, recognition,
//! and decomposition into stacks.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use rand::Rng;

use crate::complex::{Complex, Face, Vertex};
use crate::error::{Error, Result};

/// One facet subdivision: `facet` is replaced by the cone from `new_vertex`
/// over its boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubdivisionStep {
    pub facet: Face,
    pub new_vertex: Vertex,
}

/// A witness that a complex is a stacked sphere: start from the boundary of
/// the simplex on `base` and apply `steps` in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubdivisionTrace {
    pub base: Face,
    pub steps: Vec<SubdivisionStep>,
}

impl SubdivisionTrace {
    pub fn n(&self) -> usize {
        self.base.len() - 1
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn replay(&self) -> Result<Complex> {
        let mut c = boundary_of_simplex_on(&self.base)?;
        for step in &self.steps {
            c = subdivide_facet(&c, &step.facet, step.new_vertex)?;
        }
        Ok(c)
    }

    /// Order in which each vertex entered the construction: base vertices
    /// are 0, the vertex of step `k` is `k + 1`.
    fn birth_times(&self) -> BTreeMap<Vertex, usize> {
        let mut birth: BTreeMap<Vertex, usize> = self.base.iter().map(|&v| (v, 0)).collect();
        for (k, step) in self.steps.iter().enumerate() {
            birth.insert(step.new_vertex, k + 1);
        }
        birth
    }
}

/// Text form: a `base:` line followed by one `subdivide:` line per step.
impl fmt::Display for SubdivisionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "base: {}", join(&self.base))?;
        for step in &self.steps {
            writeln!(f, "subdivide: {} -> {}", join(&step.facet), step.new_vertex)?;
        }
        Ok(())
    }
}

fn join(face: &[Vertex]) -> String {
    face.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// All `n`-subsets of `{1, ..., n+1}`.
pub fn boundary_of_simplex(n: usize) -> Result<Complex> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    let verts: Vec<Vertex> = (1..=n as Vertex + 1).collect();
    boundary_of_simplex_on(&verts)
}

pub(crate) fn boundary_of_simplex_on(verts: &[Vertex]) -> Result<Complex> {
    if verts.len() < 2 {
        return Err(Error::InvalidDimension(verts.len().saturating_sub(1)));
    }
    let mut verts = verts.to_vec();
    verts.sort_unstable();
    verts.dedup();
    let facets = (0..verts.len()).map(|skip| {
        verts
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v as i64)
            .collect::<Vec<_>>()
    });
    Complex::from_facets(facets)
}

/// Replaces `facet` by the `n` facets `(facet - {u}) + {v}`.
pub fn subdivide_facet(c: &Complex, facet: &[Vertex], v: Vertex) -> Result<Complex> {
    let mut facet = facet.to_vec();
    facet.sort_unstable();
    if !c.has_facet(&facet) {
        return Err(Error::NotAFacet(facet));
    }
    if c.has_vertex(v) {
        return Err(Error::VertexInUse(v));
    }
    if v == 0 {
        return Err(Error::NonPositiveLabel(0));
    }
    let mut facets: Vec<Face> = c.facets().iter().filter(|f| **f != facet).cloned().collect();
    for skip in 0..facet.len() {
        let mut child: Face = facet
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &u)| u)
            .collect();
        child.push(v);
        child.sort_unstable();
        facets.push(child);
    }
    Ok(Complex::from_canonical(c.n(), facets))
}

/// The stacked sphere after `i - 1` scheduled subdivisions: step `t` puts
/// vertex `n + t + 1` into the facet `{t+1, ..., n+t}`.
pub fn build_delta(n: usize, i: usize) -> Result<(Complex, SubdivisionTrace)> {
    if i == 0 {
        return Err(Error::InvalidTrace("schedule index starts at 1".into()));
    }
    let mut c = boundary_of_simplex(n)?;
    let mut trace = SubdivisionTrace {
        base: (1..=n as Vertex + 1).collect(),
        steps: Vec::with_capacity(i - 1),
    };
    for t in 1..i {
        let facet: Face = (t + 1..=n + t).map(|v| v as Vertex).collect();
        let v = (n + t + 1) as Vertex;
        c = subdivide_facet(&c, &facet, v)?;
        trace.steps.push(SubdivisionStep { facet, new_vertex: v });
    }
    Ok((c, trace))
}

/// Distances from every vertex of a scheduled stacked sphere to the first
/// `n` vertices. `column(v)[j - 1]` is `d(v, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    columns: Vec<Vec<usize>>,
}

impl DistanceTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    /// Column of vertex `v` (1-based).
    pub fn column(&self, v: Vertex) -> &[usize] {
        &self.columns[v as usize - 1]
    }

    /// `d(v, row)` for `row` in `1..=n`.
    pub fn entry(&self, row: usize, v: Vertex) -> usize {
        self.columns[v as usize - 1][row - 1]
    }
}

/// Fills the distance table by the min-plus-one recursion: the vertex that
/// subdivides `{t+1, ..., t+n}` is one step further than the nearest of
/// those `n` vertices.
pub fn distance_table(n: usize, i: usize) -> Result<DistanceTable> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    if i == 0 {
        return Err(Error::InvalidTrace("schedule index starts at 1".into()));
    }
    let mut columns: Vec<Vec<usize>> = (1..=n)
        .map(|v| (1..=n).map(|row| usize::from(row != v)).collect())
        .collect();
    columns.push(vec![1; n]);
    for t in 1..i {
        let window = &columns[t..t + n];
        let next: Vec<usize> = (0..n)
            .map(|row| window.iter().map(|col| col[row]).min().unwrap() + 1)
            .collect();
        columns.push(next);
    }
    Ok(DistanceTable { n, columns })
}

/// Tries to undo subdivisions until the boundary of a simplex remains.
///
/// A vertex lying in exactly `n` facets whose opposite vertices span a
/// missing `n`-set is a candidate for reversal. Candidates are explored in
/// label order with backtracking; failed intermediate states are memoized.
pub fn recognize_stacked(c: &Complex) -> Option<SubdivisionTrace> {
    let n = c.n();
    if n < 2 || c.num_vertices() < n + 1 {
        return None;
    }
    let facets: BTreeSet<Face> = c.facets().iter().cloned().collect();
    let mut failed = HashSet::new();
    let mut reversed = Vec::new();
    if !unstack(facets, n, &mut failed, &mut reversed) {
        return None;
    }
    let mut remaining: BTreeSet<Face> = c.facets().iter().cloned().collect();
    for step in &reversed {
        remaining.retain(|f| f.binary_search(&step.new_vertex).is_err());
        remaining.insert(step.facet.clone());
    }
    let base: BTreeSet<Vertex> = remaining.iter().flatten().copied().collect();
    reversed.reverse();
    Some(SubdivisionTrace {
        base: base.into_iter().collect(),
        steps: reversed,
    })
}

fn unstack(
    facets: BTreeSet<Face>,
    n: usize,
    failed: &mut HashSet<BTreeSet<Face>>,
    reversed: &mut Vec<SubdivisionStep>,
) -> bool {
    let verts: BTreeSet<Vertex> = facets.iter().flatten().copied().collect();
    if verts.len() == n + 1 {
        return facets.len() == n + 1;
    }
    if verts.len() < n + 1 || failed.contains(&facets) {
        return false;
    }
    let mut star_count: BTreeMap<Vertex, usize> = BTreeMap::new();
    for f in &facets {
        for &v in f {
            *star_count.entry(v).or_default() += 1;
        }
    }
    for (&v, _) in star_count.iter().filter(|&(_, &k)| k == n) {
        let star: Vec<&Face> = facets.iter().filter(|f| f.binary_search(&v).is_ok()).collect();
        let opposite: BTreeSet<Vertex> = star.iter().flat_map(|f| f.iter().copied()).filter(|&u| u != v).collect();
        if opposite.len() != n {
            continue;
        }
        let restored: Face = opposite.into_iter().collect();
        if facets.contains(&restored) {
            continue;
        }
        let mut next: BTreeSet<Face> = facets
            .iter()
            .filter(|f| f.binary_search(&v).is_err())
            .cloned()
            .collect();
        next.insert(restored.clone());
        reversed.push(SubdivisionStep {
            facet: restored,
            new_vertex: v,
        });
        if unstack(next, n, failed, reversed) {
            return true;
        }
        reversed.pop();
    }
    failed.insert(facets);
    false
}

/// A maximal chain of subdivisions, each splitting a facet created by the
/// one before it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stack {
    /// Indices into the trace's steps, in construction order.
    pub steps: Vec<usize>,
    pub top_vertex: Vertex,
    /// The `n` facets created by the last subdivision.
    pub top_facets: Vec<Face>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackDecomposition {
    pub stacks: Vec<Stack>,
}

impl StackDecomposition {
    pub fn len(&self) -> usize {
        self.stacks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stacks.is_empty()
    }

    /// Index of the stack whose top contains `facet`.
    pub fn stack_with_top(&self, facet: &[Vertex]) -> Option<usize> {
        self.stacks
            .iter()
            .position(|s| s.top_facets.iter().any(|f| f.as_slice() == facet))
    }
}

/// Splits a trace into stacks.
///
/// Each step's parent is the step that created the facet it subdivides (the
/// youngest vertex of that facet), so the steps form a forest. A stack is a
/// root-to-leaf path; stacks sharing a common prefix share those steps.
pub fn stack_decomposition(trace: &SubdivisionTrace) -> Result<StackDecomposition> {
    let birth = trace.birth_times();
    let mut parent: Vec<Option<usize>> = Vec::with_capacity(trace.steps.len());
    let mut has_child = vec![false; trace.steps.len()];
    for (k, step) in trace.steps.iter().enumerate() {
        let mut youngest = 0;
        for v in &step.facet {
            let b = *birth
                .get(v)
                .ok_or_else(|| Error::InvalidTrace(format!("step {k} uses unknown vertex {v}")))?;
            if b > k {
                return Err(Error::InvalidTrace(format!(
                    "step {k} uses vertex {v} before it exists"
                )));
            }
            youngest = youngest.max(b);
        }
        let p = youngest.checked_sub(1);
        if let Some(p) = p {
            has_child[p] = true;
        }
        parent.push(p);
    }
    let stacks = (0..trace.steps.len())
        .filter(|&k| !has_child[k])
        .map(|leaf| {
            let mut steps = vec![leaf];
            let mut cur = leaf;
            while let Some(p) = parent[cur] {
                steps.push(p);
                cur = p;
            }
            steps.reverse();
            let step = &trace.steps[leaf];
            let top_facets = (0..step.facet.len())
                .map(|skip| {
                    let mut f: Face = step
                        .facet
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &u)| u)
                        .collect();
                    f.push(step.new_vertex);
                    f.sort_unstable();
                    f
                })
                .collect();
            Stack {
                steps,
                top_vertex: step.new_vertex,
                top_facets,
            }
        })
        .collect();
    Ok(StackDecomposition { stacks })
}

/// A stacked sphere grown by subdividing uniformly random facets. Vertices
/// are `1..=n+1` for the base and `n+2, n+3, ...` for the new ones.
pub fn random_stacked<R: Rng + ?Sized>(
    n: usize,
    steps: usize,
    rng: &mut R,
) -> Result<(Complex, SubdivisionTrace)> {
    let mut c = boundary_of_simplex(n)?;
    let mut trace = SubdivisionTrace {
        base: c.vertices().to_vec(),
        steps: Vec::with_capacity(steps),
    };
    for t in 0..steps {
        let facet = c.facets()[rng.gen_range(0..c.num_facets())].clone();
        let v = (n + 2 + t) as Vertex;
        c = subdivide_facet(&c, &facet, v)?;
        trace.steps.push(SubdivisionStep { facet, new_vertex: v });
    }
    Ok((c, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_boundaries() {
        let c = boundary_of_simplex(4).unwrap();
        assert_eq!(c.num_facets(), 5);
        assert_eq!(c.f_vector().as_slice(), &[1, 5, 10, 10, 5]);
        assert_eq!(boundary_of_simplex(3).unwrap().num_facets(), 4);
        assert_eq!(boundary_of_simplex(2), Err(Error::InvalidDimension(2)));
    }

    #[test]
    fn subdivide_counts_and_errors() {
        let c = boundary_of_simplex(4).unwrap();
        let d2 = subdivide_facet(&c, &[2, 3, 4, 5], 6).unwrap();
        assert_eq!((d2.num_vertices(), d2.num_facets(), d2.num_edges()), (6, 8, 14));
        assert_eq!(
            subdivide_facet(&c, &[2, 3, 4, 5], 3),
            Err(Error::VertexInUse(3))
        );
        assert_eq!(
            subdivide_facet(&d2, &[2, 3, 4, 5], 7),
            Err(Error::NotAFacet(vec![2, 3, 4, 5]))
        );
    }

    #[test]
    fn delta_schedule_sizes() {
        let (d1, t1) = build_delta(4, 1).unwrap();
        assert_eq!(d1, boundary_of_simplex(4).unwrap());
        assert!(t1.is_empty());
        let (d9, t9) = build_delta(4, 9).unwrap();
        assert_eq!((d9.num_vertices(), d9.num_facets(), d9.num_edges()), (13, 29, 42));
        assert_eq!(t9.replay().unwrap(), d9);
        assert_eq!(build_delta(5, 12).unwrap().0.num_vertices(), 17);
    }

    #[test]
    fn table_matches_printed_columns() {
        let t = distance_table(4, 9).unwrap();
        assert_eq!(t.column(5), &[1, 1, 1, 1]);
        assert_eq!(t.column(11), &[3, 3, 2, 2]);
        assert_eq!(t.entry(1, 10), 3);
        assert_eq!(t.entry(4, 13), 3);
    }

    #[test]
    fn recognition() {
        let (d5, _) = build_delta(4, 5).unwrap();
        let trace = recognize_stacked(&d5).unwrap();
        assert_eq!(trace.len(), 4);
        assert_eq!(trace.replay().unwrap(), d5);
        let simplex = boundary_of_simplex(5).unwrap();
        assert!(recognize_stacked(&simplex).unwrap().is_empty());
    }

    #[test]
    fn stacks_of_schedule() {
        let (_, trace) = build_delta(5, 7).unwrap();
        let stacks = stack_decomposition(&trace).unwrap();
        assert_eq!(stacks.len(), 1);
        assert_eq!(stacks.stacks[0].top_vertex, 12);
        assert_eq!(stacks.stacks[0].steps, (0..6).collect::<Vec<_>>());

        let (_, single) = build_delta(4, 2).unwrap();
        let stacks = stack_decomposition(&single).unwrap();
        assert_eq!(stacks.len(), 1);
        assert_eq!(stacks.stacks[0].top_facets.len(), 4);
        assert!(stacks.stacks[0].top_facets.iter().all(|f| f.contains(&6)));
    }

    #[test]
    fn two_branches_make_two_stacks() {
        // Two original facets subdivided, then one child of each.
        let trace = SubdivisionTrace {
            base: vec![1, 2, 3, 4, 5],
            steps: vec![
                SubdivisionStep { facet: vec![1, 2, 3, 4], new_vertex: 6 },
                SubdivisionStep { facet: vec![2, 3, 4, 5], new_vertex: 7 },
                SubdivisionStep { facet: vec![1, 2, 3, 6], new_vertex: 8 },
                SubdivisionStep { facet: vec![2, 3, 5, 7], new_vertex: 9 },
            ],
        };
        trace.replay().unwrap();
        let stacks = stack_decomposition(&trace).unwrap();
        assert_eq!(stacks.len(), 2);
        assert_eq!(stacks.stacks[0].steps, vec![0, 2]);
        assert_eq!(stacks.stacks[1].steps, vec![1, 3]);
        assert_eq!(stacks.stacks[1].top_vertex, 9);
    }

    #[test]
    fn shared_prefix_stacks() {
        // One subdivision followed by two of its children: two stacks that
        // share the first step.
        let trace = SubdivisionTrace {
            base: vec![1, 2, 3, 4, 5],
            steps: vec![
                SubdivisionStep { facet: vec![1, 2, 3, 4], new_vertex: 6 },
                SubdivisionStep { facet: vec![1, 2, 3, 6], new_vertex: 7 },
                SubdivisionStep { facet: vec![2, 3, 4, 6], new_vertex: 8 },
                SubdivisionStep { facet: vec![2, 3, 4, 8], new_vertex: 9 },
            ],
        };
        let stacks = stack_decomposition(&trace).unwrap();
        let paths: Vec<_> = stacks.stacks.iter().map(|s| s.steps.clone()).collect();
        assert_eq!(paths, vec![vec![0, 1], vec![0, 2, 3]]);
    }

    #[test]
    fn trace_text() {
        let (_, t) = build_delta(3, 2).unwrap();
        assert_eq!(t.to_string(), "base: 1 2 3 4\nsubdivide: 2 3 4 -> 5\n");
    }
}
