//! Bistellar moves that add a single edge, and the schedule that fills in
//! every missing edge of an identified stacked sphere.
//!
//! A move is given by a non-edge `A = {a1, a2}` and an `(n-1)`-face `B` such
//! that both `a1 * B` and `a2 * B` are facets. The ball formed by those two
//! facets is replaced by `A * ∂B`: two facets out, `n - 1` in, one new edge.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::complex::{binomial, Complex, Face, Vertex};
use crate::error::{Error, Result};
use crate::handle::{minimum_vertices, Pairing, PairingVariant};
use crate::verify::BundleType;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoveSpec {
    a: [Vertex; 2],
    b: Face,
}

impl MoveSpec {
    pub fn new(a: [Vertex; 2], b: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut a = a;
        a.sort_unstable();
        let mut b: Face = b.into_iter().collect();
        let raw = b.len();
        b.sort_unstable();
        b.dedup();
        if a[0] == a[1] {
            return Err(Error::InvalidMove(format!("A = {a:?} needs two distinct vertices")));
        }
        if b.len() != raw || b.is_empty() {
            return Err(Error::InvalidMove(format!("B = {b:?} must be a nonempty set")));
        }
        if a.iter().any(|v| b.binary_search(v).is_ok()) {
            return Err(Error::InvalidMove(format!("A = {a:?} and B = {b:?} overlap")));
        }
        if a[0] == 0 || b[0] == 0 {
            return Err(Error::NonPositiveLabel(0));
        }
        Ok(MoveSpec { a, b })
    }

    pub fn a(&self) -> [Vertex; 2] {
        self.a
    }

    pub fn b(&self) -> &[Vertex] {
        &self.b
    }

    fn cone(&self, apex: Vertex) -> Face {
        let mut f = self.b.clone();
        f.push(apex);
        f.sort_unstable();
        f
    }
}

/// `A: a1 a2 | B: b1 ... b(n-1)`
impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.b.iter().map(|v| v.to_string()).collect();
        write!(f, "A: {} {} | B: {}", self.a[0], self.a[1], b.join(" "))
    }
}

impl FromStr for MoveSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidMove(format!("cannot parse {s:?}"));
        let (a, b) = s.split_once('|').ok_or_else(bad)?;
        let a = a.trim().strip_prefix("A:").ok_or_else(bad)?;
        let b = b.trim().strip_prefix("B:").ok_or_else(bad)?;
        let parse = |t: &str| -> Result<Vec<Vertex>> {
            t.split_whitespace()
                .map(|x| x.parse::<Vertex>().map_err(|_| bad()))
                .collect()
        };
        let a = parse(a)?;
        let a: [Vertex; 2] = a.try_into().map_err(|_| bad())?;
        MoveSpec::new(a, parse(b)?)
    }
}

/// True when the induced subcomplex on `A ∪ B` is exactly the suspension of
/// `B`: both cones over `B` are facets and `A` is not an edge.
pub fn is_flippable(c: &Complex, mv: &MoveSpec) -> bool {
    mv.b.len() + 1 == c.n()
        && c.has_facet(&mv.cone(mv.a[0]))
        && c.has_facet(&mv.cone(mv.a[1]))
        && !c.has_edge(mv.a[0], mv.a[1])
}

/// Replaces `{a1} ∪ B` and `{a2} ∪ B` by `A ∪ (B - {b})` for each `b`.
pub fn apply_move(c: &Complex, mv: &MoveSpec) -> Result<Complex> {
    if c.n() < 4 {
        return Err(Error::InvalidDimension(c.n()));
    }
    if !is_flippable(c, mv) {
        return Err(Error::NotFlippable {
            a: mv.a,
            b: mv.b.clone(),
        });
    }
    let removed = [mv.cone(mv.a[0]), mv.cone(mv.a[1])];
    let mut facets: Vec<Face> = c
        .facets()
        .iter()
        .filter(|f| !removed.contains(f))
        .cloned()
        .collect();
    for skip in 0..mv.b.len() {
        let mut f: Face = mv
            .b
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect();
        f.extend(mv.a);
        f.sort_unstable();
        facets.push(f);
    }
    Ok(Complex::from_canonical(c.n(), facets))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduledMove {
    pub spec: MoveSpec,
    /// `j - i - n` for the pair `{i, j}`; `None` for the exceptional move of
    /// the swapped pairing.
    pub group: Option<usize>,
}

/// Moves that add the missing edges of an identified stacked sphere one at
/// a time, in an order where each move is flippable when reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillSchedule {
    pub n: usize,
    pub f0: usize,
    pub variant: PairingVariant,
    pub moves: Vec<ScheduledMove>,
}

impl FillSchedule {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Smallest reachable edge count, `n * f0`.
    pub fn base_edges(&self) -> u64 {
        (self.n * self.f0) as u64
    }
}

/// One move per line.
impl fmt::Display for FillSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for mv in &self.moves {
            writeln!(f, "{}", mv.spec)?;
        }
        Ok(())
    }
}

/// Builds and dry-runs the edge-filling schedule for the identified
/// stacked sphere `c` on vertices `1..=f0`.
///
/// Missing edges `{i, j}` (`i < j`) are grouped by `j - i` from `n + 1`
/// upward, ascending in `i` within a group. The move for `{i, j}` uses
/// `B = {i+1, i+2}` plus the `n - 3` vertices just below `j`, and relies on
/// the move for `{i+1, j}` from the previous group. For the swapped pairing
/// the pair `{n-1, f0-1}` has no such predecessor and is filled last with
/// `B = {f0, f0+1, f0+3, ..., f0+n-2, f0+n-1}` read through the gluing.
pub fn build_fill_schedule(
    c: &Complex,
    n: usize,
    f0: usize,
    variant: PairingVariant,
) -> Result<FillSchedule> {
    if n < 4 || c.n() != n {
        return Err(Error::InvalidDimension(c.n()));
    }
    let expected: Vec<Vertex> = (1..=f0 as Vertex).collect();
    if c.vertices() != expected.as_slice() {
        return Err(Error::InfeasibleVertexCount { n, f0 });
    }
    let edges = c.edges();
    let missing = |i: usize, j: usize| !edges.contains(&(i as Vertex, j as Vertex));
    let mut moves = Vec::new();
    for gap in n + 1..f0.saturating_sub(n) {
        for i in 1..=f0 - gap {
            let j = i + gap;
            if !missing(i, j) {
                continue;
            }
            let b = [i + 1, i + 2]
                .into_iter()
                .chain(j + 3 - n..j)
                .map(|v| v as Vertex);
            moves.push(ScheduledMove {
                spec: MoveSpec::new([i as Vertex, j as Vertex], b)?,
                group: Some(gap - n),
            });
        }
    }
    if variant == PairingVariant::Swapped && missing(n - 1, f0 - 1) {
        let gluing = Pairing::for_variant(variant, n, f0);
        let b = [f0, f0 + 1]
            .into_iter()
            .chain(f0 + 3..=f0 + n - 1)
            .map(|v| gluing.glued_image(v as Vertex));
        moves.push(ScheduledMove {
            spec: MoveSpec::new([(n - 1) as Vertex, (f0 - 1) as Vertex], b)?,
            group: None,
        });
    }

    let all_pairs = binomial(f0 as u64, 2)? as usize;
    let targets: BTreeSet<[Vertex; 2]> = moves.iter().map(|m| m.spec.a).collect();
    let nonedges = all_pairs - edges.len();
    if targets.len() != moves.len() || moves.len() != nonedges {
        return Err(Error::ScheduleIncomplete(nonedges.abs_diff(targets.len())));
    }

    let schedule = FillSchedule {
        n,
        f0,
        variant,
        moves,
    };
    replay(c, &schedule, schedule.len(), |_, _| Ok(()))?;
    Ok(schedule)
}

/// Applies the first `count` moves, checking each one before it is made,
/// and calls `visit` on every state after the initial one.
pub fn replay(
    c: &Complex,
    schedule: &FillSchedule,
    count: usize,
    mut visit: impl FnMut(usize, &Complex) -> Result<()>,
) -> Result<Complex> {
    let mut state = c.clone();
    for (idx, mv) in schedule.moves.iter().take(count).enumerate() {
        if !is_flippable(&state, &mv.spec) {
            return Err(Error::ScheduleInvalid(idx));
        }
        state = apply_move(&state, &mv.spec)?;
        visit(idx, &state)?;
    }
    Ok(state)
}

/// Runs the schedule until the complex has exactly `target_f1` edges.
pub fn fill_to(c: &Complex, schedule: &FillSchedule, target_f1: u64) -> Result<Complex> {
    let min = schedule.base_edges();
    let max = binomial(schedule.f0 as u64, 2)? as u64;
    if target_f1 < min || target_f1 > max {
        return Err(Error::TargetOutOfRange {
            target: target_f1,
            min,
            max,
        });
    }
    let steps = (target_f1 - min) as usize;
    if steps > schedule.len() {
        return Err(Error::ScheduleIncomplete(steps - schedule.len()));
    }
    let out = replay(c, schedule, steps, |_, _| Ok(()))?;
    if out.num_edges() as u64 != target_f1 {
        return Err(Error::Invariant(format!(
            "expected {target_f1} edges after filling, found {}",
            out.num_edges()
        )));
    }
    Ok(out)
}

/// The closed interval of edge counts realizable with `f0` vertices on the
/// `S^k`-bundle of the given type, or `None` when `f0` is too small.
pub fn feasible_region(k: usize, f0: usize, bundle: BundleType) -> Result<Option<(u64, u64)>> {
    if k < 2 {
        return Err(Error::InvalidDimension(k + 2));
    }
    let n = k + 2;
    if f0 < minimum_vertices(n, bundle) {
        return Ok(None);
    }
    let max = binomial(f0 as u64, 2)? as u64;
    Ok(Some(((n * f0) as u64, max)))
}
