//! The one-vertex quiver: explicit chains `M(d, v₀)` and the closed-form
//! decomposition of their tensor products.
//!
//! Labels are raw triples `(d, v₀, v)`; the weight of vertex `v` is `d − 2v`
//! and the chain `M(d, v₀)` has highest weight `d − 2v₀`.

use std::sync::Arc;

use crate::crystal::{CrystalBuilder, CrystalGraph, Label};
use crate::error::{Error, Result};
use crate::roots::{dynkin, DynkinDiagram, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2Component {
    pub d: i64,
    pub v0: i64,
    pub v: i64,
}

impl Sl2Component {
    pub fn is_nonempty(&self) -> bool {
        self.v0 <= self.v && self.v <= self.d - self.v0
    }

    pub fn weight(&self) -> i64 {
        self.d - 2 * self.v
    }

    pub fn epsilon(&self) -> i64 {
        self.v - self.v0
    }

    pub fn phi(&self) -> i64 {
        self.d - self.v - self.v0
    }
}

pub fn a1() -> Arc<DynkinDiagram> {
    Arc::new(dynkin(Family::A, 1).expect("A1 is valid"))
}

/// The chain on `v = v₀, …, d − v₀`; empty unless `0 ≤ 2v₀ ≤ d`.
/// Vertex `k` carries `v = v₀ + k`; `f` increases `v`.
pub fn sl2_crystal(d: i64, v0: i64) -> CrystalGraph {
    let mut b = CrystalBuilder::new(a1());
    if v0 < 0 || 2 * v0 > d {
        return b.build();
    }
    let mut prev = None;
    for v in v0..=d - v0 {
        let id = b
            .add_vertex(&[d - 2 * v], Label::Sl2(v))
            .expect("rank 1 weight");
        if let Some(p) = prev {
            b.link(0, p, id).expect("fresh chain edge");
        }
        prev = Some(id);
    }
    b.build()
}

fn check_pair(d: i64, v: i64, which: &str) -> Result<()> {
    if v < 0 || 2 * v > d {
        return Err(Error::InvalidLabel(format!(
            "{which}: need 0 <= 2v <= d, got d={d}, v={v}"
        )));
    }
    Ok(())
}

fn check_triple(d: i64, v: i64, u: i64, which: &str) -> Result<()> {
    check_pair(d, v, which)?;
    if u < v || u > d - v {
        return Err(Error::InvalidLabel(format!(
            "{which}: need v <= u <= d - v, got d={d}, v={v}, u={u}"
        )));
    }
    Ok(())
}

/// Image label `(v₀, u)` of the pair of components `(d¹, v¹, u¹)`, `(d², v², u²)`:
/// `v₀ = min(u² + v¹, d¹ − u¹ + v²)` and `u = u¹ + u²`.
pub fn sl2_tau2(d1: i64, v1: i64, u1: i64, d2: i64, v2: i64, u2: i64) -> Result<(i64, i64)> {
    check_triple(d1, v1, u1, "first factor")?;
    check_triple(d2, v2, u2, "second factor")?;
    Ok(((u2 + v1).min(d1 - u1 + v2), u1 + u2))
}

/// All `v₀` with `M(d¹ + d², v₀)` occurring in `M(d¹, v¹) ⊗ M(d², v²)`:
/// `v¹ + v² ≤ v₀ ≤ min(d² − v² + v¹, d¹ − v¹ + v²)`.
pub fn sl2_mult_range(d1: i64, v1: i64, d2: i64, v2: i64) -> Result<Vec<i64>> {
    check_pair(d1, v1, "first factor")?;
    check_pair(d2, v2, "second factor")?;
    let hi = (d2 - v2 + v1).min(d1 - v1 + v2);
    Ok((v1 + v2..=hi).collect())
}

/// Whether the multiplicity set for `v` is non-empty.
pub fn sl2_s_nonempty(d1: i64, v1: i64, d2: i64, v2: i64, v: i64) -> bool {
    !(v < v1 + v2 || v > d2 - v2 + v1 || v > d1 - v1 + v2)
}
