//! Closed-form dimensions, emptiness predicates and weight dictionaries for
//! quiver varieties and their tensor-product strata.
//!
//! Every quantity with a `½` is computed as a doubled integer and halved with
//! a parity check; an odd numerator is reported as [`Error::OddNumerator`].

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::{pairing, DynkinDiagram, GPrimeWeight, Weight};

fn half(quantity: &'static str, numerator: i64) -> Result<i64> {
    if numerator % 2 != 0 {
        return Err(Error::OddNumerator {
            quantity,
            numerator,
        });
    }
    Ok(numerator / 2)
}

/// `⟨Xv, u⟩`.
fn xpair(diagram: &DynkinDiagram, v: &Weight, u: &Weight) -> Result<i64> {
    pairing(&diagram.apply_x(v)?, u)
}

fn sum_of(rank: usize, ws: &[Weight]) -> Weight {
    ws.iter().fold(Weight::zero(rank), |acc, w| &acc + w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BasicDims {
    /// `½⟨Xv, v⟩`.
    pub dim_lambda: i64,
    /// `⟨Xv, v⟩ + 2⟨d, v⟩ − ⟨v, v⟩`, shared by the stable, ∗-stable and
    /// bistable loci.
    pub dim_lambda_s: i64,
    pub dim_lambda_ast_s: i64,
    pub dim_lambda_ss: i64,
    /// `⟨Xv, v⟩ + 2⟨d, v⟩ − 2⟨v, v⟩`.
    pub dim_ms: i64,
    pub dim_mss: i64,
    /// `½ dim M^s(d, v) + ½ dim M^{s,∗s}(d, v₀)`.
    pub dim_ms3: i64,
    /// `d − 2v + Xv ≥ 0`.
    pub ss_nonempty: bool,
    /// `d − 2v + Xv`.
    pub delta_vec: Weight,
}

fn dim_m(diagram: &DynkinDiagram, d: &Weight, v: &Weight) -> Result<i64> {
    Ok(xpair(diagram, v, v)? + 2 * pairing(d, v)? - 2 * pairing(v, v)?)
}

/// `d − 2v + Xv`.
pub fn delta_vec(diagram: &DynkinDiagram, d: &Weight, v: &Weight) -> Result<Weight> {
    diagram.check_weight(d)?;
    let xv = diagram.apply_x(v)?;
    Ok(&(d - &v.scale(2)) + &xv)
}

pub fn basic_dims(diagram: &DynkinDiagram, d: &Weight, v: &Weight, v0: &Weight) -> Result<BasicDims> {
    for w in [d, v, v0] {
        diagram.check_weight(w)?;
    }
    let xvv = xpair(diagram, v, v)?;
    let dv = pairing(d, v)?;
    let vv = pairing(v, v)?;
    let dim_lambda_s = xvv + 2 * dv - vv;
    let dim_ms = dim_m(diagram, d, v)?;
    let dim_mss_v0 = dim_m(diagram, d, v0)?;
    let delta = delta_vec(diagram, d, v)?;
    Ok(BasicDims {
        dim_lambda: half("dim Lambda", xvv)?,
        dim_lambda_s,
        dim_lambda_ast_s: dim_lambda_s,
        dim_lambda_ss: dim_lambda_s,
        dim_ms,
        dim_mss: dim_ms,
        dim_ms3: half("dim M^s(d,v0,v)", dim_ms + dim_mss_v0)?,
        ss_nonempty: delta.is_nonnegative(),
        delta_vec: delta,
    })
}

/// Parameters of an `n`-step stratum: a graded flag in `D` with successive
/// quotient dimensions `d_tuple`, and stratum data `v_tuple` (and optionally
/// `vt_tuple`).
#[derive(Clone, Debug)]
pub struct QuiverParams {
    pub diagram: Arc<DynkinDiagram>,
    pub d: Weight,
    pub v: Weight,
    pub v0: Weight,
    pub d_tuple: Vec<Weight>,
    pub v_tuple: Vec<Weight>,
    pub vt_tuple: Option<Vec<Weight>>,
}

impl QuiverParams {
    /// Validates ranks, tuple lengths, `Σ d_tuple = d` and, when `vt_tuple`
    /// is given, `Σ v_tuple + Σ vt_tuple = v`.
    pub fn new(
        diagram: Arc<DynkinDiagram>,
        d: Weight,
        v: Weight,
        v0: Weight,
        d_tuple: Vec<Weight>,
        v_tuple: Vec<Weight>,
        vt_tuple: Option<Vec<Weight>>,
    ) -> Result<Self> {
        let rank = diagram.rank();
        for w in [&d, &v, &v0]
            .into_iter()
            .chain(&d_tuple)
            .chain(&v_tuple)
            .chain(vt_tuple.iter().flatten())
        {
            diagram.check_weight(w)?;
        }
        let n = d_tuple.len();
        if n == 0 {
            return Err(Error::Inconsistent("tuples must have length at least 1".into()));
        }
        if v_tuple.len() != n || vt_tuple.as_ref().is_some_and(|t| t.len() != n) {
            return Err(Error::Inconsistent("tuples must share one length".into()));
        }
        if sum_of(rank, &d_tuple) != d {
            return Err(Error::Inconsistent(format!(
                "the d-tuple sums to {}, not d = {d}",
                sum_of(rank, &d_tuple)
            )));
        }
        if let Some(vt) = &vt_tuple {
            let total = &sum_of(rank, &v_tuple) + &sum_of(rank, vt);
            if total != v {
                return Err(Error::Inconsistent(format!(
                    "the v- and vt-tuples sum to {total}, not v = {v}"
                )));
            }
        }
        Ok(QuiverParams {
            diagram,
            d,
            v,
            v0,
            d_tuple,
            v_tuple,
            vt_tuple,
        })
    }

    pub fn n(&self) -> usize {
        self.d_tuple.len()
    }

    /// `Σ_s (½⟨X𝐯ˢ,𝐯ˢ⟩ + ⟨𝐝ˢ,𝐯ˢ⟩ − ⟨𝐯ˢ,𝐯ˢ⟩)`, doubled.
    fn tail_doubled(&self) -> Result<i64> {
        let mut acc = 0;
        for (ds, vs) in self.d_tuple.iter().zip(&self.v_tuple) {
            acc += xpair(&self.diagram, vs, vs)? + 2 * pairing(ds, vs)? - 2 * pairing(vs, vs)?;
        }
        Ok(acc)
    }

    /// `dim V^k = Σ_{s ≤ k} (𝐯ˢ + 𝐯̃ˢ)`; needs `vt_tuple`.
    pub fn flag_dim(&self, k: usize) -> Result<Weight> {
        let vt = self
            .vt_tuple
            .as_ref()
            .ok_or_else(|| Error::Inconsistent("vt-tuple required".into()))?;
        let rank = self.diagram.rank();
        let mut acc = Weight::zero(rank);
        for (vs, vts) in self.v_tuple.iter().zip(vt).take(k) {
            acc = &(&acc + vs) + vts;
        }
        Ok(acc)
    }

    /// `Σ_{s ≤ k} 𝐝ˢ`.
    pub fn d_partial(&self, k: usize) -> Weight {
        sum_of(self.diagram.rank(), &self.d_tuple[..k.min(self.n())])
    }

    pub fn strat_dims(&self) -> Result<StratDims> {
        let g = &*self.diagram;
        let (d, v) = (&self.d, &self.v);
        let xvv = xpair(g, v, v)?;
        let dv = pairing(d, v)?;
        let vv = pairing(v, v)?;
        let tail = self.tail_doubled()?;

        let pi_v = half("dim Pi(d,v)", xvv + 2 * dv + tail)?;
        let t = half("dim T", xvv + 2 * dv - 2 * vv + tail)?;
        let mut mss_sum = 0;
        for (ds, vs) in self.d_tuple.iter().zip(&self.v_tuple) {
            mss_sum += dim_m(g, ds, vs)?;
        }
        let dim_ms = dim_m(g, d, v)?;
        let t_closed = half("dim T (closed form)", dim_ms + mss_sum)?;
        let s_closed = half("dim S (closed form)", dim_ms + mss_sum)?;

        let (pi_flag, flag_variety) = match &self.vt_tuple {
            Some(vt) => {
                let mut flag_tail = 0;
                let mut squares = 0;
                for ((ds, vs), vts) in self.d_tuple.iter().zip(&self.v_tuple).zip(vt) {
                    flag_tail += xpair(g, vs, vs)? + 2 * pairing(ds, vs)? - pairing(vs, vs)?
                        + pairing(vts, vts)?;
                    squares += pairing(vs, vs)? + pairing(vts, vts)?;
                }
                (
                    Some(half("dim Pi(flag)", xvv + 2 * dv - vv + flag_tail)?),
                    Some(half("dim flag variety", vv - squares)?),
                )
            }
            None => (None, None),
        };

        Ok(StratDims {
            dim_pi_flag: pi_flag,
            dim_flag_variety: flag_variety,
            dim_pi_vvt: self.vt_tuple.as_ref().map(|_| pi_v),
            dim_pi_v: pi_v,
            dim_pi_ss: pi_v,
            dim_t: t,
            dim_t_closed: t_closed,
            dim_s: t,
            dim_s_closed: s_closed,
        })
    }

    /// Fiber dimension of `ρ₂` at step `k` (`1 ≤ k < n`): `U = V / V^k`,
    /// `C = D / D^k`.
    pub fn rho2_fiber_at(&self, k: usize) -> Result<i64> {
        if k == 0 || k >= self.n() {
            return Err(Error::Inconsistent(format!(
                "split step {k} must satisfy 1 <= k < n = {}",
                self.n()
            )));
        }
        let vk = self.flag_dim(k)?;
        let u = &self.v - &vk;
        let c = &self.d - &self.d_partial(k);
        rho2_fiber(&self.diagram, &self.d, &c, &self.v, &u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StratDims {
    /// Stratum with a fixed flag in `V` (needs the `vt` tuple).
    pub dim_pi_flag: Option<i64>,
    /// Graded flag variety of type `(𝐯¹, 𝐯̃¹, …)` in `V`.
    pub dim_flag_variety: Option<i64>,
    pub dim_pi_vvt: Option<i64>,
    pub dim_pi_v: i64,
    pub dim_pi_ss: i64,
    /// Tensor product variety, first closed form.
    pub dim_t: i64,
    /// `½(dim M^s(d,v) + Σ dim M^{s,∗s}(𝐝ˢ,𝐯ˢ))`.
    pub dim_t_closed: i64,
    /// Multiplicity variety, first closed form.
    pub dim_s: i64,
    /// `½(dim M^{s,∗s}(d,v) + Σ dim M^{s,∗s}(𝐝ˢ,𝐯ˢ))`.
    pub dim_s_closed: i64,
}

/// Fiber of `γ`: `⟨d, u⟩ + ⟨Xt, u⟩ − ⟨t, u⟩`.
pub fn gamma_fiber(diagram: &DynkinDiagram, d: &Weight, u: &Weight, t: &Weight) -> Result<i64> {
    diagram.check_weight(d)?;
    Ok(pairing(d, u)? + xpair(diagram, t, u)? - pairing(t, u)?)
}

/// Fiber of `ρ₂`: `⟨Xu, v−u⟩ + ⟨c, v−u⟩ + ⟨d−c, u⟩ − ⟨u, v−u⟩`.
pub fn rho2_fiber(diagram: &DynkinDiagram, d: &Weight, c: &Weight, v: &Weight, u: &Weight) -> Result<i64> {
    for w in [d, c, v, u] {
        diagram.check_weight(w)?;
    }
    let vu = v - u;
    Ok(xpair(diagram, u, &vu)? + pairing(c, &vu)? + pairing(&(d - c), u)? - pairing(u, &vu)?)
}

/// Fiber of `σ₂` for `D = D¹ ⊕ D²`, `V = V¹ ⊕ U ⊕ V²`.
pub fn sigma2_fiber(
    diagram: &DynkinDiagram,
    d1: &Weight,
    v1: &Weight,
    u: &Weight,
    d2: &Weight,
    v2: &Weight,
) -> Result<i64> {
    for w in [d1, v1, u, d2, v2] {
        diagram.check_weight(w)?;
    }
    let v = &(v1 + u) + v2;
    let d = d1 + d2;
    let xs = xpair(diagram, &v, &v)?
        - xpair(diagram, v1, v1)?
        - xpair(diagram, u, u)?
        - xpair(diagram, v2, v2)?;
    let squares = pairing(&v, &v)? - pairing(v1, v1)? - pairing(u, u)? - pairing(v2, v2)?;
    let linear = pairing(&d, u)? - pairing(d1, v1)? - pairing(d2, v2)?;
    Ok(half("sigma2 fiber", xs + squares)? + linear)
}

/// `dim Gr_w(V) = ⟨w, v − w⟩`.
pub fn grassmannian_dim(w: &Weight, v: &Weight) -> Result<i64> {
    pairing(w, &(v - w))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WeightDicts {
    pub hw_weight: Weight,
    pub v_from_weight: Option<Weight>,
    pub gprime_weight: GPrimeWeight,
    pub gprime_integrable: bool,
}

/// `d − 2v₀ + Xv₀`.
pub fn hw_weight(diagram: &DynkinDiagram, d: &Weight, v0: &Weight) -> Result<Weight> {
    delta_vec(diagram, d, v0)
}

/// `A⁻¹(d − μ)` when it is a non-negative integer vector.
pub fn v_from_weight(diagram: &DynkinDiagram, d: &Weight, mu: &Weight) -> Result<Option<Weight>> {
    diagram.check_weight(d)?;
    diagram.check_weight(mu)?;
    Ok(diagram
        .solve_cartan(&(d - mu))?
        .filter(Weight::is_nonnegative))
}

/// `(d − v + Xv, v)`.
pub fn gprime_weight(diagram: &DynkinDiagram, d: &Weight, v: &Weight) -> Result<GPrimeWeight> {
    diagram.check_weight(d)?;
    let xv = diagram.apply_x(v)?;
    Ok(GPrimeWeight {
        first: &(d - v) + &xv,
        second: v.clone(),
    })
}

pub fn weight_dicts(diagram: &DynkinDiagram, d: &Weight, v: &Weight) -> Result<WeightDicts> {
    let hw = hw_weight(diagram, d, v)?;
    let back = v_from_weight(diagram, d, &hw)?;
    let g = gprime_weight(diagram, d, v)?;
    Ok(WeightDicts {
        hw_weight: hw,
        v_from_weight: back,
        gprime_integrable: g.is_integrable(),
        gprime_weight: g,
    })
}
