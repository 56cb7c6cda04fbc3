//! Combinatorial isomorphism of pure complexes by backtracking.
//!
//! Vertices are first colored by a joint refinement over both complexes
//! (star size, degree, link f-vector, then the colors seen around each
//! facet). A candidate image must share the color, and every partial map is
//! checked in both directions: the mapped part of each incident facet has to
//! be a face on the other side.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::complex::{Complex, Vertex};
use crate::error::{Error, Result};

/// A vertex bijection carrying the facets of one complex onto the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    map: BTreeMap<Vertex, Vertex>,
}

impl IsoWitness {
    pub fn new(map: BTreeMap<Vertex, Vertex>) -> Self {
        IsoWitness { map }
    }

    pub fn map(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.map
    }

    pub fn image(&self, v: Vertex) -> Option<Vertex> {
        self.map.get(&v).copied()
    }

    pub fn inverse(&self) -> IsoWitness {
        IsoWitness {
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    pub fn apply(&self, c: &Complex) -> Result<Complex> {
        if let Some(&v) = c.vertices().iter().find(|v| !self.map.contains_key(v)) {
            return Err(Error::UnknownVertex(v));
        }
        c.map_vertices(|v| self.map[&v])
    }

    /// True if the map is a bijection taking `a`'s facets exactly onto `b`'s.
    pub fn verifies(&self, a: &Complex, b: &Complex) -> bool {
        let injective = self.map.values().collect::<HashSet<_>>().len() == self.map.len();
        injective && self.map.len() == a.num_vertices() && self.apply(a).is_ok_and(|img| &img == b)
    }
}

struct Indexed {
    labels: Vec<Vertex>,
    facets: Vec<Vec<usize>>,
    star: Vec<Vec<usize>>,
    faces: HashSet<Vec<usize>>,
}

impl Indexed {
    fn new(c: &Complex) -> Self {
        let labels = c.vertices().to_vec();
        let index: HashMap<Vertex, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let facets: Vec<Vec<usize>> = c
            .facets()
            .iter()
            .map(|f| f.iter().map(|v| index[v]).collect())
            .collect();
        let mut star = vec![Vec::new(); labels.len()];
        for (fi, f) in facets.iter().enumerate() {
            for &v in f {
                star[v].push(fi);
            }
        }
        let faces = c
            .faces_by_size()
            .into_iter()
            .flatten()
            .map(|f| f.iter().map(|v| index[v]).collect())
            .collect();
        Indexed {
            labels,
            facets,
            star,
            faces,
        }
    }
}

fn initial_signatures(c: &Complex) -> Vec<Vec<i64>> {
    let adjacency = c.adjacency();
    c.vertices()
        .iter()
        .map(|&v| {
            let mut sig = vec![c.star_facets(v).len() as i64, adjacency[&v].len() as i64];
            let link = c.link(&[v]).expect("vertex is a face");
            sig.extend(link.f_vector().as_slice());
            sig
        })
        .collect()
}

/// Assigns shared color ids to signatures from both sides.
fn recolor<K: Ord + Clone>(a: &[K], b: &[K]) -> (Vec<usize>, Vec<usize>, usize) {
    let mut ids: BTreeMap<K, usize> = a.iter().chain(b).map(|k| (k.clone(), 0)).collect();
    for (i, id) in ids.values_mut().enumerate() {
        *id = i;
    }
    let count = ids.len();
    (
        a.iter().map(|k| ids[k]).collect(),
        b.iter().map(|k| ids[k]).collect(),
        count,
    )
}

fn refine(c: &Indexed, colors: &[usize]) -> Vec<(usize, Vec<Vec<usize>>)> {
    (0..c.labels.len())
        .map(|v| {
            let mut around: Vec<Vec<usize>> = c.star[v]
                .iter()
                .map(|&fi| {
                    let mut cs: Vec<usize> =
                        c.facets[fi].iter().filter(|&&u| u != v).map(|&u| colors[u]).collect();
                    cs.sort_unstable();
                    cs
                })
                .collect();
            around.sort_unstable();
            (colors[v], around)
        })
        .collect()
}

fn histogram(colors: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

pub fn are_isomorphic(a: &Complex, b: &Complex) -> Option<IsoWitness> {
    if a.n() != b.n()
        || a.num_vertices() != b.num_vertices()
        || a.num_facets() != b.num_facets()
        || a.f_vector() != b.f_vector()
    {
        return None;
    }
    let (mut ca, mut cb, mut classes) = recolor(&initial_signatures(a), &initial_signatures(b));
    let ia = Indexed::new(a);
    let ib = Indexed::new(b);
    loop {
        if histogram(&ca) != histogram(&cb) {
            return None;
        }
        let (na, nb, count) = recolor(&refine(&ia, &ca), &refine(&ib, &cb));
        ca = na;
        cb = nb;
        if count == classes {
            break;
        }
        classes = count;
    }
    if histogram(&ca) != histogram(&cb) {
        return None;
    }

    let order = search_order(&ia, &ca);
    let mut state = Search {
        a: &ia,
        b: &ib,
        ca: &ca,
        cb: &cb,
        order: &order,
        forward: vec![None; ia.labels.len()],
        backward: vec![None; ib.labels.len()],
    };
    if !state.extend(0) {
        return None;
    }
    let map = state
        .forward
        .iter()
        .enumerate()
        .map(|(v, w)| (ia.labels[v], ib.labels[w.expect("complete map")]))
        .collect();
    let witness = IsoWitness { map };
    debug_assert!(witness.verifies(a, b));
    Some(witness)
}

/// Rarest color first, then always the vertex most entangled with those
/// already placed.
fn search_order(c: &Indexed, colors: &[usize]) -> Vec<usize> {
    let m = c.labels.len();
    let sizes = histogram(colors);
    let mut placed = vec![false; m];
    let mut weight = vec![0usize; m];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let next = (0..m)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(weight[v]), sizes[&colors[v]], v))
            .unwrap();
        placed[next] = true;
        order.push(next);
        for &fi in &c.star[next] {
            for &u in &c.facets[fi] {
                if !placed[u] {
                    weight[u] += 1;
                }
            }
        }
    }
    order
}

struct Search<'a> {
    a: &'a Indexed,
    b: &'a Indexed,
    ca: &'a [usize],
    cb: &'a [usize],
    order: &'a [usize],
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return self.complete();
        }
        let v = self.order[depth];
        for w in 0..self.b.labels.len() {
            if self.backward[w].is_some() || self.cb[w] != self.ca[v] {
                continue;
            }
            self.forward[v] = Some(w);
            self.backward[w] = Some(v);
            if self.consistent(v, w) && self.extend(depth + 1) {
                return true;
            }
            self.forward[v] = None;
            self.backward[w] = None;
        }
        false
    }

    fn consistent(&self, v: usize, w: usize) -> bool {
        let images_ok = self.a.star[v].iter().all(|&fi| {
            let mut img: Vec<usize> = self.a.facets[fi].iter().filter_map(|&u| self.forward[u]).collect();
            img.sort_unstable();
            self.b.faces.contains(&img)
        });
        images_ok
            && self.b.star[w].iter().all(|&gi| {
                let mut pre: Vec<usize> = self.b.facets[gi].iter().filter_map(|&x| self.backward[x]).collect();
                pre.sort_unstable();
                self.a.faces.contains(&pre)
            })
    }

    fn complete(&self) -> bool {
        let target: HashSet<&Vec<usize>> = self.b.facets.iter().collect();
        self.a.facets.iter().all(|f| {
            let mut img: Vec<usize> = f.iter().map(|&u| self.forward[u].unwrap()).collect();
            img.sort_unstable();
            target.contains(&img)
        })
    }
}
