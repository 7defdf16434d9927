//! Piecewise-linear paths in rational weight space and Littelmann root
//! operators on them. `B(λ)` is the closure of the straight path to `λ`
//! under the lowering operators.
//!
//! A path is kept as its list of segment displacement vectors; parameter
//! lengths never matter for the operators, so they are not stored. Canonical
//! form drops zero segments and merges consecutive segments pointing the same
//! way, which makes equal paths structurally equal.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::crystal::{CrystalBuilder, CrystalGraph, Label};
use crate::error::{Error, Result};
use crate::roots::{DynkinDiagram, Weight};

pub const DEFAULT_VERTEX_CAP: usize = 200_000;

type Seg = Vec<Rational64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LsPath {
    segments: Vec<Seg>,
}

impl LsPath {
    /// Build from segments and canonicalize.
    pub fn from_segments(segments: Vec<Vec<Rational64>>) -> Self {
        let mut p = LsPath { segments };
        p.canonicalize();
        p
    }

    pub fn segments(&self) -> &[Vec<Rational64>] {
        &self.segments
    }

    pub fn rank(&self) -> usize {
        self.segments.first().map_or(0, Vec::len)
    }

    /// Sum of all segments as an integer weight. Panics if it is not integral,
    /// which would mean the path did not come from the operators.
    pub fn endpoint(&self, rank: usize) -> Weight {
        let mut sum = vec![Rational64::zero(); rank];
        for s in &self.segments {
            for (acc, x) in sum.iter_mut().zip(s) {
                *acc += x;
            }
        }
        Weight(
            sum.into_iter()
                .map(|x| {
                    assert!(x.is_integer(), "path endpoint is not integral");
                    x.to_integer()
                })
                .collect(),
        )
    }

    fn canonicalize(&mut self) {
        let mut out: Vec<Seg> = Vec::with_capacity(self.segments.len());
        for s in self.segments.drain(..) {
            if s.iter().all(Zero::is_zero) {
                continue;
            }
            if let Some(last) = out.last_mut() {
                if same_direction(last, &s) {
                    for (a, b) in last.iter_mut().zip(&s) {
                        *a += b;
                    }
                    continue;
                }
            }
            out.push(s);
        }
        self.segments = out;
    }

    /// Heights `h_i` at the breakpoints, starting with `h_i(0) = 0`.
    fn heights(&self, i: usize) -> Vec<Rational64> {
        let mut h = Vec::with_capacity(self.segments.len() + 1);
        let mut acc = Rational64::zero();
        h.push(acc);
        for s in &self.segments {
            acc += s[i];
            h.push(acc);
        }
        h
    }
}

fn same_direction(a: &[Rational64], b: &[Rational64]) -> bool {
    let Some(k) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let c = b[k] / a[k];
    c.is_positive() && a.iter().zip(b).all(|(x, y)| *x * c == *y)
}

fn reflect(seg: &Seg, i: usize, root: &[i64]) -> Seg {
    let c = seg[i];
    seg.iter()
        .zip(root)
        .map(|(x, &r)| *x - c * Rational64::from_integer(r))
        .collect()
}

fn split(seg: &Seg, frac: Rational64) -> (Seg, Seg) {
    let a: Seg = seg.iter().map(|x| *x * frac).collect();
    let b: Seg = seg.iter().zip(&a).map(|(x, y)| *x - *y).collect();
    (a, b)
}

fn minimum(h: &[Rational64]) -> Rational64 {
    let m = *h.iter().min().expect("heights are never empty");
    assert!(m.is_integer(), "non-integral minimum {m} of a path height function");
    m
}

/// The straight path from 0 to a dominant `λ`.
pub fn highest_path(diagram: &DynkinDiagram, lambda: &Weight) -> Result<LsPath> {
    diagram.check_weight(lambda)?;
    if !lambda.is_nonnegative() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    Ok(LsPath::from_segments(vec![lambda
        .0
        .iter()
        .map(|&c| Rational64::from_integer(c))
        .collect()]))
}

/// Lowering operator `f_i`.
pub fn path_f(diagram: &DynkinDiagram, i: usize, path: &LsPath) -> Option<LsPath> {
    let root = diagram.cartan().column(i);
    let h = path.heights(i);
    let m = minimum(&h);
    let end = *h.last().expect("heights are never empty");
    if end - m < Rational64::one() {
        return None;
    }
    let target = m + Rational64::one();
    // last breakpoint at the minimum; every later breakpoint is strictly above it
    let j0 = h.iter().rposition(|x| *x == m).expect("minimum is attained");
    // first segment after j0 reaching m + 1
    let j = (j0 + 1..h.len())
        .find(|&j| h[j] >= target)
        .expect("end is at least m + 1");
    let seg = &path.segments[j - 1];
    let frac = (target - h[j - 1]) / seg[i];
    let mut out: Vec<Seg> = Vec::with_capacity(path.segments.len() + 1);
    out.extend(path.segments[..j0].iter().cloned());
    for s in &path.segments[j0..j - 1] {
        out.push(reflect(s, i, &root));
    }
    let (first, second) = split(seg, frac);
    out.push(reflect(&first, i, &root));
    out.push(second);
    out.extend(path.segments[j..].iter().cloned());
    Some(LsPath::from_segments(out))
}

/// Raising operator `e_i`.
pub fn path_e(diagram: &DynkinDiagram, i: usize, path: &LsPath) -> Option<LsPath> {
    let root = diagram.cartan().column(i);
    let h = path.heights(i);
    let m = minimum(&h);
    if -m < Rational64::one() {
        return None;
    }
    let target = m + Rational64::one();
    // first breakpoint at the minimum
    let j1 = h.iter().position(|x| *x == m).expect("minimum is attained");
    // last breakpoint before j1 at or above m + 1; the crossing lies in the next segment
    let j = (0..j1)
        .rev()
        .find(|&j| h[j] >= target)
        .expect("path starts at 0 ≥ m + 1");
    let seg = &path.segments[j];
    let frac = (target - h[j]) / seg[i];
    let mut out: Vec<Seg> = Vec::with_capacity(path.segments.len() + 1);
    out.extend(path.segments[..j].iter().cloned());
    let (first, second) = split(seg, frac);
    out.push(first);
    out.push(reflect(&second, i, &root));
    for s in &path.segments[j + 1..j1] {
        out.push(reflect(s, i, &root));
    }
    out.extend(path.segments[j1..].iter().cloned());
    Some(LsPath::from_segments(out))
}

/// `B(λ)` with the default vertex cap.
pub fn build_crystal(diagram: Arc<DynkinDiagram>, lambda: &Weight) -> Result<CrystalGraph> {
    build_crystal_capped(diagram, lambda, DEFAULT_VERTEX_CAP)
}

/// `B(λ)` as the breadth-first closure of the highest path under all `f_i`.
/// Vertex 0 is the highest path.
pub fn build_crystal_capped(
    diagram: Arc<DynkinDiagram>,
    lambda: &Weight,
    cap: usize,
) -> Result<CrystalGraph> {
    let start = highest_path(&diagram, lambda)?;
    let rank = diagram.rank();
    let mut builder = CrystalBuilder::new(diagram.clone());
    let mut index: HashMap<LsPath, u32> = HashMap::new();
    let mut paths: Vec<LsPath> = Vec::new();
    let mut queue = VecDeque::new();

    let mut intern = |p: LsPath,
                      builder: &mut CrystalBuilder,
                      paths: &mut Vec<LsPath>,
                      queue: &mut VecDeque<u32>|
     -> Result<u32> {
        match index.entry(p) {
            Entry::Occupied(o) => Ok(*o.get()),
            Entry::Vacant(slot) => {
                if paths.len() >= cap {
                    return Err(Error::VertexCapExceeded { cap });
                }
                let p = slot.key().clone();
                let wt = p.endpoint(rank);
                let id = builder.add_vertex(wt.as_slice(), Label::Path(p.clone()))?;
                paths.push(p);
                queue.push_back(id);
                slot.insert(id);
                Ok(id)
            }
        }
    };

    intern(start, &mut builder, &mut paths, &mut queue)?;
    while let Some(v) = queue.pop_front() {
        for i in 0..rank {
            if let Some(next) = path_f(&diagram, i, &paths[v as usize]) {
                let t = intern(next, &mut builder, &mut paths, &mut queue)?;
                builder.link(i, v, t)?;
            }
        }
    }
    Ok(builder.build())
}

/// Memo of `B(λ)` keyed by highest weight, for one diagram.
#[derive(Debug)]
pub struct HighestWeightCache {
    diagram: Arc<DynkinDiagram>,
    cap: usize,
    built: HashMap<Weight, Arc<CrystalGraph>>,
}

impl HighestWeightCache {
    pub fn new(diagram: Arc<DynkinDiagram>) -> Self {
        Self::with_cap(diagram, DEFAULT_VERTEX_CAP)
    }

    pub fn with_cap(diagram: Arc<DynkinDiagram>, cap: usize) -> Self {
        HighestWeightCache {
            diagram,
            cap,
            built: HashMap::new(),
        }
    }

    pub fn diagram(&self) -> &Arc<DynkinDiagram> {
        &self.diagram
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn get(&mut self, lambda: &Weight) -> Result<Arc<CrystalGraph>> {
        if let Some(c) = self.built.get(lambda) {
            return Ok(c.clone());
        }
        let c = Arc::new(build_crystal_capped(self.diagram.clone(), lambda, self.cap)?);
        self.built.insert(lambda.clone(), c.clone());
        Ok(c)
    }

    /// Build every missing weight in `lambdas`, in parallel when enabled.
    pub fn prefetch(&mut self, lambdas: &[Weight]) -> Result<()> {
        let mut missing: Vec<Weight> = lambdas
            .iter()
            .filter(|l| !self.built.contains_key(*l))
            .cloned()
            .collect();
        missing.sort();
        missing.dedup();
        let (diagram, cap) = (self.diagram.clone(), self.cap);
        let built = crate::par::map_slice(&missing, |l| {
            build_crystal_capped(diagram.clone(), l, cap).map(Arc::new)
        });
        for (l, c) in missing.into_iter().zip(built) {
            self.built.insert(l, c?);
        }
        Ok(())
    }
}
