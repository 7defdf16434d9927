//! Finite normal crystals stored as flat arrays.
//!
//! Vertex ids are dense `u32`s in generation order. For vertex `v` and color
//! `i`, slot `v * rank + i` holds `f_i(v)`, `e_i(v)` and coordinate `i` of
//! `wt(v)`. String lengths `ε_i`, `φ_i` are derived from the `e`/`f` chains
//! once, at construction.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lspath::LsPath;
use crate::par;
use crate::roots::{DynkinDiagram, Weight};

const NONE: u32 = u32::MAX;

/// Debug/export payload carried by a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label {
    Plain,
    Path(LsPath),
    /// Vertex `(a, b)` of a tensor product, by factor ids.
    Pair(u32, u32),
    /// Vertex `v` of an explicit sl2 chain.
    Sl2(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// `f_i` or `e_i` points outside the vertex set.
    Dangling { target: u32 },
    /// `f_i(a) = b` but `e_i(b) ≠ a`, or the mirrored statement.
    NotInverse { target: u32 },
    /// The weight does not change by the simple root along an edge.
    WeightStep { target: u32 },
    /// The `i`-string through the vertex is a cycle.
    InfiniteString,
    /// `wt(a)_i ≠ φ_i(a) − ε_i(a)`.
    Normality { weight: i64, phi: i64, epsilon: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub vertex: u32,
    pub color: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (v, i) = (self.vertex, self.color);
        match &self.kind {
            ViolationKind::Dangling { target } => {
                write!(f, "vertex {v}, color {i}: edge to unknown vertex {target}")
            }
            ViolationKind::NotInverse { target } => {
                write!(f, "vertex {v}, color {i}: e/f not mutually inverse at {target}")
            }
            ViolationKind::WeightStep { target } => write!(
                f,
                "vertex {v}, color {i}: weight does not shift by the simple root towards {target}"
            ),
            ViolationKind::InfiniteString => write!(f, "vertex {v}, color {i}: string is a cycle"),
            ViolationKind::Normality {
                weight,
                phi,
                epsilon,
            } => write!(
                f,
                "vertex {v}, color {i}: normality fails, wt_i = {weight} but phi - epsilon = {phi} - {epsilon}"
            ),
        }
    }
}

/// Which inequality pair decides the factor acted on in a tensor product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TensorRule {
    /// `e` acts on the left iff `φ(a) ≥ ε(b)`; `f` acts on the left iff `φ(a) > ε(b)`.
    #[default]
    Standard,
    /// The two inequalities swapped. Not a crystal structure; exists so the
    /// self-test can demonstrate that the axiom checker notices.
    SignFlipped,
}

#[derive(Clone, Debug)]
pub struct CrystalGraph {
    diagram: Arc<DynkinDiagram>,
    rank: usize,
    weights: Vec<i64>,
    f: Vec<u32>,
    e: Vec<u32>,
    eps: Vec<u32>,
    phi: Vec<u32>,
    labels: Vec<Label>,
}

/// Single-writer construction of a crystal.
#[derive(Debug)]
pub struct CrystalBuilder {
    diagram: Arc<DynkinDiagram>,
    rank: usize,
    weights: Vec<i64>,
    f: Vec<u32>,
    e: Vec<u32>,
    labels: Vec<Label>,
}

impl CrystalBuilder {
    pub fn new(diagram: Arc<DynkinDiagram>) -> Self {
        let rank = diagram.rank();
        CrystalBuilder {
            diagram,
            rank,
            weights: Vec::new(),
            f: Vec::new(),
            e: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn add_vertex(&mut self, wt: &[i64], label: Label) -> Result<u32> {
        if wt.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: wt.len(),
            });
        }
        let id = self.labels.len() as u32;
        self.weights.extend_from_slice(wt);
        self.f.extend(std::iter::repeat_n(NONE, self.rank));
        self.e.extend(std::iter::repeat_n(NONE, self.rank));
        self.labels.push(label);
        Ok(id)
    }

    /// Record `f_i(from) = to` together with `e_i(to) = from`.
    pub fn link(&mut self, i: usize, from: u32, to: u32) -> Result<()> {
        self.diagram.check_vertex(i)?;
        let n = self.labels.len() as u32;
        for v in [from, to] {
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
        }
        let fs = from as usize * self.rank + i;
        let es = to as usize * self.rank + i;
        if self.f[fs] != NONE || self.e[es] != NONE {
            return Err(Error::Inconsistent(format!(
                "color {i} edge {from} -> {to} conflicts with an existing edge"
            )));
        }
        self.f[fs] = to;
        self.e[es] = from;
        Ok(())
    }

    /// Overwrite a stored weight. Used to build deliberately broken fixtures.
    pub fn set_weight(&mut self, v: u32, wt: &[i64]) -> Result<()> {
        if v as usize >= self.labels.len() {
            return Err(Error::UnknownVertex(v));
        }
        if wt.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: wt.len(),
            });
        }
        let s = v as usize * self.rank;
        self.weights[s..s + self.rank].copy_from_slice(wt);
        Ok(())
    }

    pub fn build(self) -> CrystalGraph {
        CrystalGraph::assemble(self.diagram, self.weights, self.f, self.e, self.labels)
    }
}

impl CrystalGraph {
    fn assemble(
        diagram: Arc<DynkinDiagram>,
        weights: Vec<i64>,
        f: Vec<u32>,
        e: Vec<u32>,
        labels: Vec<Label>,
    ) -> Self {
        let rank = diagram.rank();
        let (eps, phi) = string_lengths(rank, labels.len(), &f, &e);
        CrystalGraph {
            diagram,
            rank,
            weights,
            f,
            e,
            eps,
            phi,
            labels,
        }
    }

    /// Assemble from raw tables without validation; `f`/`e` use `None` for
    /// undefined. Run [`verify_axioms`](Self::verify_axioms) afterwards.
    pub fn from_raw_parts(
        diagram: Arc<DynkinDiagram>,
        weights: Vec<Weight>,
        f: Vec<Vec<Option<u32>>>,
        e: Vec<Vec<Option<u32>>>,
    ) -> Result<Self> {
        let rank = diagram.rank();
        let n = weights.len();
        if f.len() != n || e.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "{n} weights but {} f-rows and {} e-rows",
                f.len(),
                e.len()
            )));
        }
        let mut flat_w = Vec::with_capacity(n * rank);
        for w in &weights {
            diagram.check_weight(w)?;
            flat_w.extend_from_slice(w.as_slice());
        }
        let flatten = |rows: Vec<Vec<Option<u32>>>| -> Result<Vec<u32>> {
            let mut out = Vec::with_capacity(n * rank);
            for row in rows {
                if row.len() != rank {
                    return Err(Error::RankMismatch {
                        expected: rank,
                        found: row.len(),
                    });
                }
                out.extend(row.into_iter().map(|x| x.unwrap_or(NONE)));
            }
            Ok(out)
        };
        let f = flatten(f)?;
        let e = flatten(e)?;
        Ok(Self::assemble(diagram, flat_w, f, e, vec![Label::Plain; n]))
    }

    /// An empty crystal over `diagram`.
    pub fn empty(diagram: Arc<DynkinDiagram>) -> Self {
        CrystalBuilder::new(diagram).build()
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn diagram_arc(&self) -> &Arc<DynkinDiagram> {
        &self.diagram
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cardinality(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        0..self.labels.len() as u32
    }

    fn check(&self, v: u32) -> Result<usize> {
        if (v as usize) < self.labels.len() {
            Ok(v as usize)
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn contains(&self, v: u32) -> bool {
        (v as usize) < self.labels.len()
    }

    pub fn weight(&self, v: u32) -> Weight {
        Weight(self.weight_slice(v).to_vec())
    }

    pub fn weight_slice(&self, v: u32) -> &[i64] {
        let s = v as usize * self.rank;
        &self.weights[s..s + self.rank]
    }

    pub fn label(&self, v: u32) -> &Label {
        &self.labels[v as usize]
    }

    /// `f_i(v)`, or `None` when undefined.
    pub fn f(&self, i: usize, v: u32) -> Option<u32> {
        let t = self.f[v as usize * self.rank + i];
        (t != NONE).then_some(t)
    }

    /// `e_i(v)`, or `None` when undefined.
    pub fn e(&self, i: usize, v: u32) -> Option<u32> {
        let t = self.e[v as usize * self.rank + i];
        (t != NONE).then_some(t)
    }

    pub fn epsilon(&self, v: u32, i: usize) -> Result<i64> {
        let v = self.check(v)?;
        self.diagram.check_vertex(i)?;
        finite(self.eps[v * self.rank + i], v, i)
    }

    pub fn phi(&self, v: u32, i: usize) -> Result<i64> {
        let v = self.check(v)?;
        self.diagram.check_vertex(i)?;
        finite(self.phi[v * self.rank + i], v, i)
    }

    /// `ε_i` without bounds or finiteness checks. Infinite strings read as `u32::MAX`.
    #[inline]
    pub(crate) fn eps_raw(&self, v: u32, i: usize) -> u32 {
        self.eps[v as usize * self.rank + i]
    }

    #[inline]
    pub(crate) fn phi_raw(&self, v: u32, i: usize) -> u32 {
        self.phi[v as usize * self.rank + i]
    }

    /// Vertices on which every `e_i` is undefined.
    pub fn highest_vertices(&self) -> Vec<u32> {
        self.vertices().filter(|&v| self.is_highest(v)).collect()
    }

    pub fn is_highest(&self, v: u32) -> bool {
        let s = v as usize * self.rank;
        self.e[s..s + self.rank].iter().all(|&t| t == NONE)
    }

    pub fn verify_axioms(&self) -> Vec<Violation> {
        let n = self.labels.len() as u32;
        let rank = self.rank;
        let roots: Vec<Vec<i64>> = (0..rank).map(|i| self.diagram.cartan().column(i)).collect();
        let per_vertex = par::map_range(n as usize, |v| {
            let v = v as u32;
            let mut out = Vec::new();
            for (i, root) in roots.iter().enumerate() {
                let mut push = |kind| {
                    out.push(Violation {
                        vertex: v,
                        color: i,
                        kind,
                    })
                };
                if let Some(t) = self.f(i, v) {
                    if t >= n {
                        push(ViolationKind::Dangling { target: t });
                    } else {
                        if self.e(i, t) != Some(v) {
                            push(ViolationKind::NotInverse { target: t });
                        }
                        let ok = (0..rank)
                            .all(|j| self.weight_slice(t)[j] == self.weight_slice(v)[j] - root[j]);
                        if !ok {
                            push(ViolationKind::WeightStep { target: t });
                        }
                    }
                }
                if let Some(t) = self.e(i, v) {
                    if t >= n {
                        push(ViolationKind::Dangling { target: t });
                    } else {
                        if self.f(i, t) != Some(v) {
                            push(ViolationKind::NotInverse { target: t });
                        }
                        let ok = (0..rank)
                            .all(|j| self.weight_slice(t)[j] == self.weight_slice(v)[j] + root[j]);
                        if !ok {
                            push(ViolationKind::WeightStep { target: t });
                        }
                    }
                }
                let (ep, ph) = (self.eps_raw(v, i), self.phi_raw(v, i));
                if ep == NONE || ph == NONE {
                    push(ViolationKind::InfiniteString);
                } else {
                    let w = self.weight_slice(v)[i];
                    if w != ph as i64 - ep as i64 {
                        push(ViolationKind::Normality {
                            weight: w,
                            phi: ph as i64,
                            epsilon: ep as i64,
                        });
                    }
                }
            }
            out
        });
        per_vertex.into_iter().flatten().collect()
    }

    /// Multiset of vertex weights.
    pub fn character(&self) -> BTreeMap<Weight, usize> {
        let mut ch = BTreeMap::new();
        for v in self.vertices() {
            *ch.entry(self.weight(v)).or_insert(0) += 1;
        }
        ch
    }

    /// Connected components (edge colors and directions ignored). Components
    /// are ordered by their smallest vertex; each lists its vertices in BFS
    /// order from that vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let n = self.labels.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start as u32);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for i in 0..self.rank {
                    for t in [self.f(i, v), self.e(i, v)].into_iter().flatten() {
                        if (t as usize) < n && !seen[t as usize] {
                            seen[t as usize] = true;
                            queue.push_back(t);
                        }
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Tensor product `self ⊗ other`; vertex `(a, b)` gets id `a * |other| + b`.
    pub fn tensor(&self, other: &CrystalGraph) -> Result<CrystalGraph> {
        self.tensor_with_rule(other, TensorRule::Standard)
    }

    pub fn tensor_with_rule(&self, other: &CrystalGraph, rule: TensorRule) -> Result<CrystalGraph> {
        if self.diagram != other.diagram {
            return Err(Error::DiagramMismatch {
                left: self.diagram.name().to_string(),
                right: other.diagram.name().to_string(),
            });
        }
        let (na, nb, rank) = (self.cardinality(), other.cardinality(), self.rank);
        let total = na
            .checked_mul(nb)
            .filter(|&t| t < NONE as usize)
            .ok_or(Error::VertexCapExceeded { cap: NONE as usize - 1 })?;
        let rows = par::map_range(na, |a| {
            let a = a as u32;
            let mut w = Vec::with_capacity(nb * rank);
            let mut fs = Vec::with_capacity(nb * rank);
            let mut es = Vec::with_capacity(nb * rank);
            for b in 0..nb as u32 {
                let (wa, wb) = (self.weight_slice(a), other.weight_slice(b));
                w.extend(wa.iter().zip(wb).map(|(x, y)| x + y));
                for i in 0..rank {
                    let phi_a = self.phi_raw(a, i);
                    let eps_b = other.eps_raw(b, i);
                    let (e_left, f_left) = match rule {
                        TensorRule::Standard => (phi_a >= eps_b, phi_a > eps_b),
                        TensorRule::SignFlipped => (phi_a > eps_b, phi_a >= eps_b),
                    };
                    let id = |x: u32, y: u32| x as usize * nb + y as usize;
                    let ev = if e_left {
                        self.e(i, a).map(|x| id(x, b))
                    } else {
                        other.e(i, b).map(|y| id(a, y))
                    };
                    let fv = if f_left {
                        self.f(i, a).map(|x| id(x, b))
                    } else {
                        other.f(i, b).map(|y| id(a, y))
                    };
                    es.push(ev.map_or(NONE, |x| x as u32));
                    fs.push(fv.map_or(NONE, |x| x as u32));
                }
            }
            (w, fs, es)
        });
        let mut weights = Vec::with_capacity(total * rank);
        let mut f = Vec::with_capacity(total * rank);
        let mut e = Vec::with_capacity(total * rank);
        for (w, fs, es) in rows {
            weights.extend(w);
            f.extend(fs);
            e.extend(es);
        }
        let labels = (0..na as u32)
            .flat_map(|a| (0..nb as u32).map(move |b| Label::Pair(a, b)))
            .collect();
        Ok(Self::assemble(self.diagram.clone(), weights, f, e, labels))
    }

    /// The full subgraph on `vertices`, renumbered in the given order. Edges
    /// leaving the set are dropped.
    pub fn induced(&self, vertices: &[u32]) -> CrystalGraph {
        let mut index = std::collections::HashMap::with_capacity(vertices.len());
        for (k, &v) in vertices.iter().enumerate() {
            index.insert(v, k as u32);
        }
        let rank = self.rank;
        let mut weights = Vec::with_capacity(vertices.len() * rank);
        let mut f = Vec::with_capacity(vertices.len() * rank);
        let mut e = Vec::with_capacity(vertices.len() * rank);
        for &v in vertices {
            weights.extend_from_slice(self.weight_slice(v));
            for i in 0..rank {
                f.push(self.f(i, v).and_then(|t| index.get(&t).copied()).unwrap_or(NONE));
                e.push(self.e(i, v).and_then(|t| index.get(&t).copied()).unwrap_or(NONE));
            }
        }
        let labels = vertices.iter().map(|&v| self.labels[v as usize].clone()).collect();
        Self::assemble(self.diagram.clone(), weights, f, e, labels)
    }

    /// Forget colors outside `subset` and restrict weights to those
    /// coordinates, giving a crystal over `sub` (the matching subdiagram).
    pub fn restrict(&self, subset: &[usize], sub: Arc<DynkinDiagram>) -> CrystalGraph {
        let r = subset.len();
        let n = self.cardinality();
        let mut weights = Vec::with_capacity(n * r);
        let mut f = Vec::with_capacity(n * r);
        let mut e = Vec::with_capacity(n * r);
        for v in self.vertices() {
            let w = self.weight_slice(v);
            weights.extend(subset.iter().map(|&i| w[i]));
            f.extend(subset.iter().map(|&i| self.f[v as usize * self.rank + i]));
            e.extend(subset.iter().map(|&i| self.e[v as usize * self.rank + i]));
        }
        Self::assemble(sub, weights, f, e, self.labels.clone())
    }

    /// Try to extend `self_root ↦ other_root` to an isomorphism between the
    /// components containing them, by a paired BFS through `f_i` and `e_i`.
    /// Returns the vertex pairs in BFS order.
    pub fn match_from(
        &self,
        self_root: u32,
        other: &CrystalGraph,
        other_root: u32,
    ) -> Option<Vec<(u32, u32)>> {
        if self.rank != other.rank || !self.contains(self_root) || !other.contains(other_root) {
            return None;
        }
        let mut fwd = std::collections::HashMap::new();
        let mut bwd = std::collections::HashMap::new();
        let mut pairs = Vec::new();
        let mut queue = VecDeque::new();
        fwd.insert(self_root, other_root);
        bwd.insert(other_root, self_root);
        queue.push_back((self_root, other_root));
        while let Some((a, b)) = queue.pop_front() {
            if self.weight_slice(a) != other.weight_slice(b) {
                return None;
            }
            pairs.push((a, b));
            for i in 0..self.rank {
                for (ta, tb) in [(self.f(i, a), other.f(i, b)), (self.e(i, a), other.e(i, b))] {
                    match (ta, tb) {
                        (None, None) => {}
                        (Some(x), Some(y)) => match (fwd.get(&x), bwd.get(&y)) {
                            (None, None) => {
                                fwd.insert(x, y);
                                bwd.insert(y, x);
                                queue.push_back((x, y));
                            }
                            (Some(&y2), Some(&x2)) if y2 == y && x2 == x => {}
                            _ => return None,
                        },
                        _ => return None,
                    }
                }
            }
        }
        Some(pairs)
    }

    /// An isomorphism `self → other` as a vertex map, if one exists.
    ///
    /// Every component of both crystals must have exactly one source (a vertex
    /// with all `e_i` undefined); otherwise an error is returned. Components
    /// are matched greedily in order.
    pub fn is_isomorphic(&self, other: &CrystalGraph) -> Result<Option<Vec<u32>>> {
        if self.diagram != other.diagram || self.cardinality() != other.cardinality() {
            return Ok(None);
        }
        let rooted = |c: &CrystalGraph| -> Result<Vec<(u32, usize)>> {
            c.components()
                .iter()
                .enumerate()
                .map(|(k, comp)| {
                    let sources: Vec<u32> =
                        comp.iter().copied().filter(|&v| c.is_highest(v)).collect();
                    if sources.len() != 1 {
                        return Err(Error::SourceCount {
                            component: k,
                            sources: sources.len(),
                        });
                    }
                    Ok((sources[0], comp.len()))
                })
                .collect()
        };
        let mine = rooted(self)?;
        let theirs = rooted(other)?;
        if mine.len() != theirs.len() {
            return Ok(None);
        }
        let mut used = vec![false; theirs.len()];
        let mut map = vec![NONE; self.cardinality()];
        for &(root, size) in &mine {
            let found = theirs.iter().enumerate().find_map(|(k, &(r2, s2))| {
                if used[k] || s2 != size || self.weight_slice(root) != other.weight_slice(r2) {
                    return None;
                }
                self.match_from(root, other, r2).map(|pairs| (k, pairs))
            });
            let Some((k, pairs)) = found else {
                return Ok(None);
            };
            used[k] = true;
            for (a, b) in pairs {
                map[a as usize] = b;
            }
        }
        Ok(Some(map))
    }
}

fn finite(x: u32, v: usize, i: usize) -> Result<i64> {
    if x == NONE {
        Err(Error::Inconsistent(format!(
            "the color-{i} string through vertex {v} is infinite"
        )))
    } else {
        Ok(x as i64)
    }
}

/// `(ε, φ)` tables from the chains; vertices on cyclic or corrupted strings get `NONE`.
fn string_lengths(rank: usize, n: usize, f: &[u32], e: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let mut eps = vec![NONE; n * rank];
    let mut phi = vec![NONE; n * rank];
    let mut chain = Vec::new();
    for i in 0..rank {
        for head in 0..n {
            if e[head * rank + i] != NONE {
                continue;
            }
            chain.clear();
            let mut cur = head;
            loop {
                chain.push(cur);
                let next = f[cur * rank + i];
                if next == NONE || next as usize >= n || chain.len() > n {
                    break;
                }
                cur = next as usize;
            }
            if chain.len() > n {
                continue;
            }
            let len = chain.len() as u32;
            for (pos, &v) in chain.iter().enumerate() {
                let slot = v * rank + i;
                // a vertex reachable from two heads means e/f disagree; leave it for verify_axioms
                if eps[slot] == NONE {
                    eps[slot] = pos as u32;
                    phi[slot] = len - 1 - pos as u32;
                }
            }
        }
    }
    (eps, phi)
}

/// Disjoint union; vertex ids of later parts are shifted by earlier sizes.
pub fn direct_sum(diagram: Arc<DynkinDiagram>, parts: &[&CrystalGraph]) -> Result<CrystalGraph> {
    let rank = diagram.rank();
    let mut weights = Vec::new();
    let mut f = Vec::new();
    let mut e = Vec::new();
    let mut labels = Vec::new();
    let mut offset = 0u32;
    for part in parts {
        if *part.diagram != *diagram {
            return Err(Error::DiagramMismatch {
                left: diagram.name().to_string(),
                right: part.diagram.name().to_string(),
            });
        }
        let shift = |t: &u32| if *t == NONE { NONE } else { t + offset };
        weights.extend_from_slice(&part.weights);
        f.extend(part.f.iter().map(shift));
        e.extend(part.e.iter().map(shift));
        labels.extend(part.labels.iter().cloned());
        offset += part.cardinality() as u32;
    }
    debug_assert_eq!(weights.len(), labels.len() * rank);
    Ok(CrystalGraph::assemble(diagram, weights, f, e, labels))
}

/// `n` isolated vertices of weight zero.
pub fn trivial_crystal(diagram: Arc<DynkinDiagram>, n: usize) -> CrystalGraph {
    let rank = diagram.rank();
    let mut b = CrystalBuilder::new(diagram);
    let zero = vec![0; rank];
    for _ in 0..n {
        b.add_vertex(&zero, Label::Plain).expect("rank matches");
    }
    b.build()
}

/// Left-nested tensor product of a non-empty list of crystals.
pub fn tensor_all(parts: &[&CrystalGraph]) -> Result<CrystalGraph> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::Inconsistent("tensor of an empty list".into()))?;
    let mut acc = (*first).clone();
    for p in rest {
        acc = acc.tensor(p)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> Arc<DynkinDiagram> {
        Arc::new("A1".parse().unwrap())
    }

    /// A1 chain with weights m, m−2, …, −m.
    fn chain(m: i64) -> CrystalGraph {
        let mut b = CrystalBuilder::new(a1());
        let ids: Vec<u32> = (0..=m)
            .map(|k| b.add_vertex(&[m - 2 * k], Label::Plain).unwrap())
            .collect();
        for w in ids.windows(2) {
            b.link(0, w[0], w[1]).unwrap();
        }
        b.build()
    }

    #[test]
    fn trivial_crystal_is_normal() {
        let t = trivial_crystal(Arc::new("A2".parse().unwrap()), 3);
        assert!(t.verify_axioms().is_empty());
        for v in t.vertices() {
            assert_eq!(t.epsilon(v, 0).unwrap(), 0);
            assert_eq!(t.phi(v, 1).unwrap(), 0);
        }
        assert_eq!(t.highest_vertices().len(), 3);
    }

    #[test]
    fn chain_strings() {
        let c = chain(2);
        assert!(c.verify_axioms().is_empty());
        assert_eq!((c.epsilon(0, 0).unwrap(), c.phi(0, 0).unwrap()), (0, 2));
        assert_eq!((c.epsilon(1, 0).unwrap(), c.phi(1, 0).unwrap()), (1, 1));
        assert!(c.epsilon(7, 0).is_err());
    }

    #[test]
    fn corrupted_weight_is_reported() {
        let mut b = CrystalBuilder::new(a1());
        for w in [2, 0, -2] {
            b.add_vertex(&[w], Label::Plain).unwrap();
        }
        b.link(0, 0, 1).unwrap();
        b.link(0, 1, 2).unwrap();
        b.set_weight(1, &[1]).unwrap();
        let report = b.build().verify_axioms();
        assert!(!report.is_empty());
        assert!(report.iter().any(|v| v.vertex == 1
            && matches!(v.kind, ViolationKind::Normality { weight: 1, .. })));
    }

    #[test]
    fn cycle_is_reported_as_infinite() {
        let c = CrystalGraph::from_raw_parts(
            a1(),
            vec![Weight(vec![0]), Weight(vec![0])],
            vec![vec![Some(1)], vec![Some(0)]],
            vec![vec![Some(1)], vec![Some(0)]],
        )
        .unwrap();
        let report = c.verify_axioms();
        assert!(report.iter().any(|v| v.kind == ViolationKind::InfiniteString));
        assert!(c.epsilon(0, 0).is_err());
    }

    #[test]
    fn b1_tensor_b1_by_hand() {
        let b1 = chain(1);
        let t = b1.tensor(&b1).unwrap();
        // ids: (h,h)=0 (h,l)=1 (l,h)=2 (l,l)=3
        assert!(t.verify_axioms().is_empty());
        assert_eq!(t.e(0, 2), Some(0));
        assert_eq!(t.e(0, 1), None);
        assert_eq!(t.highest_vertices(), vec![0, 1]);
        assert_eq!(t.weight(1), Weight(vec![0]));
    }

    #[test]
    fn sign_flip_breaks_axioms() {
        let b1 = chain(1);
        let t = b1.tensor_with_rule(&b1, TensorRule::SignFlipped).unwrap();
        assert!(!t.verify_axioms().is_empty());
    }

    #[test]
    fn tensor_string_lengths_match_closed_form() {
        let (a, b) = (chain(2), chain(3));
        let t = a.tensor(&b).unwrap();
        for x in a.vertices() {
            for y in b.vertices() {
                let v = x * b.cardinality() as u32 + y;
                let (ea, pa) = (a.epsilon(x, 0).unwrap(), a.phi(x, 0).unwrap());
                let (eb, pb) = (b.epsilon(y, 0).unwrap(), b.phi(y, 0).unwrap());
                assert_eq!(t.epsilon(v, 0).unwrap(), ea.max(ea + eb - pa));
                assert_eq!(t.phi(v, 0).unwrap(), pb.max(pa + pb - eb));
            }
        }
    }

    #[test]
    fn direct_sums_and_isomorphism() {
        let d = a1();
        let empty = direct_sum(d.clone(), &[]).unwrap();
        assert!(empty.is_empty());
        let (b2, b0) = (chain(2), chain(0));
        let s = direct_sum(d.clone(), &[&b2, &b0]).unwrap();
        assert_eq!(s.cardinality(), 4);
        assert!(s.verify_axioms().is_empty());
        let t = trivial_crystal(d.clone(), 2).tensor(&b2).unwrap();
        let two = direct_sum(d, &[&b2, &b2]).unwrap();
        assert!(t.is_isomorphic(&two).unwrap().is_some());
        assert!(chain(2).is_isomorphic(&chain(1)).unwrap().is_none());
        assert!(b2.is_isomorphic(&chain(2)).unwrap().is_some());
    }

    #[test]
    fn tensor_with_singleton_is_identity() {
        let b3 = chain(3);
        let one = trivial_crystal(a1(), 1);
        assert!(b3.tensor(&one).unwrap().is_isomorphic(&b3).unwrap().is_some());
        assert!(one.tensor(&b3).unwrap().is_isomorphic(&b3).unwrap().is_some());
    }

    #[test]
    fn multi_source_component_rejected() {
        // a weight-0 vertex with dangling e-links: two sources in one component
        let b1 = chain(1);
        let t = b1.tensor(&b1).unwrap();
        let broken = t.induced(&[0, 2, 3, 1]);
        // induced keeps all edges here, so it is still fine
        assert!(broken.is_isomorphic(&t).unwrap().is_some());
        let bad = CrystalGraph::from_raw_parts(
            a1(),
            vec![Weight(vec![1]), Weight(vec![-1]), Weight(vec![1])],
            vec![vec![Some(1)], vec![None], vec![None]],
            vec![vec![None], vec![Some(0)], vec![None]],
        )
        .unwrap();
        // vertex 2 is its own component; fine. Now glue a second source.
        assert!(bad.is_isomorphic(&bad).unwrap().is_some());
        let glued = CrystalGraph::from_raw_parts(
            a1(),
            vec![Weight(vec![0]), Weight(vec![0])],
            vec![vec![Some(1)], vec![None]],
            vec![vec![None], vec![None]],
        )
        .unwrap();
        assert!(matches!(
            glued.is_isomorphic(&glued),
            Err(Error::SourceCount { sources: 2, .. })
        ));
    }

    #[test]
    fn character_and_components() {
        let t = chain(1).tensor(&chain(1)).unwrap();
        let ch = t.character();
        assert_eq!(ch[&Weight(vec![0])], 2);
        assert_eq!(t.components().len(), 2);
        assert_eq!(t.components()[0], vec![0, 2, 3]);
    }
}
