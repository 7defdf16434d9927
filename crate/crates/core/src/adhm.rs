//! Explicit ADHM data `(x, p, q)` over the rationals: the preprojective
//! equation, closures and cores of graded subspaces, stability, nilpotency and
//! membership in the tensor-product strata cut out by a flag in `D`.
//!
//! Conventions: `x_h : V_{tail(h)} → V_{head(h)}`, `p_i : D_i → V_i`,
//! `q_i : V_i → D_i`, `ε(h) = ±1` as in [`DynkinDiagram::orientation_sign`].
//! The equation at vertex `i` is `Σ_{head(h)=i} ε(h) x_h x_h̄ − p_i q_i = 0`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{q, Matrix, Subspace, Q};
use crate::roots::{DynkinDiagram, Weight};

/// One subspace of each `V_i` (or `D_i`).
pub type GradedSubspace = Vec<Subspace>;

pub fn graded_dims(s: &GradedSubspace) -> Weight {
    Weight(s.iter().map(|x| x.dim() as i64).collect())
}

fn graded_contains(big: &GradedSubspace, small: &GradedSubspace) -> bool {
    big.iter().zip(small).all(|(b, s)| b.contains(s))
}

fn graded_intersection(a: &GradedSubspace, b: &GradedSubspace) -> GradedSubspace {
    a.iter().zip(b).map(|(x, y)| x.intersection(y)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdhmDatum {
    diagram: Arc<DynkinDiagram>,
    d: Weight,
    v: Weight,
    x: Vec<Matrix>,
    p: Vec<Matrix>,
    q: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct PreprojectiveReport {
    pub holds: bool,
    /// Left-hand side of the equation at each vertex.
    pub residuals: Vec<Matrix>,
}

/// Increasing chain `𝐃¹ ⊂ … ⊂ 𝐃ⁿ = D` of graded subspaces (`𝐃⁰ = 0` is implicit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFlag {
    steps: Vec<GradedSubspace>,
}

impl GradedFlag {
    pub fn new(d: &Weight, steps: Vec<GradedSubspace>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::ShapeMismatch("a flag needs at least one step".into()));
        }
        for (k, step) in steps.iter().enumerate() {
            if step.len() != d.len() {
                return Err(Error::RankMismatch {
                    expected: d.len(),
                    found: step.len(),
                });
            }
            for (i, s) in step.iter().enumerate() {
                if s.ambient() as i64 != d[i] {
                    return Err(Error::NotContained(format!(
                        "flag step {} at vertex {i} lives in dimension {}, but D_{i} has dimension {}",
                        k + 1,
                        s.ambient(),
                        d[i]
                    )));
                }
            }
            if k > 0 && !graded_contains(step, &steps[k - 1]) {
                return Err(Error::NotContained(format!(
                    "flag step {k} is not contained in step {}",
                    k + 1
                )));
            }
        }
        if !steps.last().expect("non-empty").iter().all(Subspace::is_full) {
            return Err(Error::Inconsistent("the last flag step must be all of D".into()));
        }
        Ok(GradedFlag { steps })
    }

    /// The one-step flag `0 ⊂ D`.
    pub fn trivial(d: &Weight) -> Self {
        GradedFlag {
            steps: vec![d.0.iter().map(|&n| Subspace::full(n as usize)).collect()],
        }
    }

    pub fn steps(&self) -> &[GradedSubspace] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Stratum data: per step, `𝐯ᵏ` and `𝐯̃ᵏ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumData {
    pub v: Vec<Weight>,
    pub vt: Vec<Weight>,
}

impl AdhmDatum {
    /// Validates every matrix shape against `d`, `v` and the arrows.
    pub fn new(
        diagram: Arc<DynkinDiagram>,
        d: Weight,
        v: Weight,
        x: Vec<Matrix>,
        p: Vec<Matrix>,
        q: Vec<Matrix>,
    ) -> Result<Self> {
        diagram.check_weight(&d)?;
        diagram.check_weight(&v)?;
        if !d.is_nonnegative() || !v.is_nonnegative() {
            return Err(Error::ShapeMismatch("dimension vectors must be non-negative".into()));
        }
        let arrows = diagram.arrows();
        if x.len() != arrows.len() || p.len() != diagram.rank() || q.len() != diagram.rank() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} arrow maps and {} p/q maps, got {}, {}, {}",
                arrows.len(),
                diagram.rank(),
                x.len(),
                p.len(),
                q.len()
            )));
        }
        let dim = |w: &Weight, i: usize| w[i] as usize;
        for (h, (a, m)) in arrows.iter().zip(&x).enumerate() {
            if (m.rows(), m.cols()) != (dim(&v, a.head), dim(&v, a.tail)) {
                return Err(Error::ShapeMismatch(format!(
                    "x for arrow {h} ({} -> {}) must be {}x{}, got {}x{}",
                    a.tail,
                    a.head,
                    dim(&v, a.head),
                    dim(&v, a.tail),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for i in 0..diagram.rank() {
            if (p[i].rows(), p[i].cols()) != (dim(&v, i), dim(&d, i)) {
                return Err(Error::ShapeMismatch(format!(
                    "p_{i} must be {}x{}, got {}x{}",
                    dim(&v, i),
                    dim(&d, i),
                    p[i].rows(),
                    p[i].cols()
                )));
            }
            if (q[i].rows(), q[i].cols()) != (dim(&d, i), dim(&v, i)) {
                return Err(Error::ShapeMismatch(format!(
                    "q_{i} must be {}x{}, got {}x{}",
                    dim(&d, i),
                    dim(&v, i),
                    q[i].rows(),
                    q[i].cols()
                )));
            }
        }
        Ok(AdhmDatum {
            diagram,
            d,
            v,
            x,
            p,
            q,
        })
    }

    /// All maps zero.
    pub fn zero(diagram: Arc<DynkinDiagram>, d: Weight, v: Weight) -> Result<Self> {
        let x = diagram
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(v[a.head] as usize, v[a.tail] as usize))
            .collect();
        let n = diagram.rank();
        let p = (0..n).map(|i| Matrix::zeros(v[i] as usize, d[i] as usize)).collect();
        let q = (0..n).map(|i| Matrix::zeros(d[i] as usize, v[i] as usize)).collect();
        Self::new(diagram, d, v, x, p, q)
    }

    pub fn diagram(&self) -> &Arc<DynkinDiagram> {
        &self.diagram
    }

    pub fn d(&self) -> &Weight {
        &self.d
    }

    pub fn v(&self) -> &Weight {
        &self.v
    }

    pub fn x(&self, h: usize) -> &Matrix {
        &self.x[h]
    }

    pub fn p(&self, i: usize) -> &Matrix {
        &self.p[i]
    }

    pub fn q(&self, i: usize) -> &Matrix {
        &self.q[i]
    }

    fn vdim(&self, i: usize) -> usize {
        self.v[i] as usize
    }

    pub fn check_preprojective(&self) -> PreprojectiveReport {
        let g = &self.diagram;
        let residuals: Vec<Matrix> = (0..g.rank())
            .map(|i| {
                let mut acc = self.p[i].mul(&self.q[i]).scale(&q(-1));
                for (h, a) in g.arrows().iter().enumerate() {
                    if a.head == i {
                        let term = self.x[h].mul(&self.x[g.reverse(h)]);
                        acc = acc.add(&term.scale(&q(g.orientation_sign(h))));
                    }
                }
                acc
            })
            .collect();
        PreprojectiveReport {
            holds: residuals.iter().all(Matrix::is_zero),
            residuals,
        }
    }

    fn check_graded(&self, e: &GradedSubspace) -> Result<()> {
        if e.len() != self.diagram.rank() {
            return Err(Error::RankMismatch {
                expected: self.diagram.rank(),
                found: e.len(),
            });
        }
        for (i, s) in e.iter().enumerate() {
            if s.ambient() != self.vdim(i) {
                return Err(Error::NotContained(format!(
                    "subspace at vertex {i} lives in dimension {}, but V_{i} has dimension {}",
                    s.ambient(),
                    self.vdim(i)
                )));
            }
        }
        Ok(())
    }

    pub fn full_v(&self) -> GradedSubspace {
        (0..self.diagram.rank()).map(|i| Subspace::full(self.vdim(i))).collect()
    }

    pub fn zero_v(&self) -> GradedSubspace {
        (0..self.diagram.rank()).map(|i| Subspace::zero(self.vdim(i))).collect()
    }

    /// Smallest `x`-invariant graded subspace containing `e`.
    pub fn closure(&self, e: &GradedSubspace) -> Result<GradedSubspace> {
        self.check_graded(e)?;
        let mut cur = e.clone();
        loop {
            let mut next = cur.clone();
            for (h, a) in self.diagram.arrows().iter().enumerate() {
                next[a.head] = next[a.head].sum(&cur[a.tail].image(&self.x[h]));
            }
            if graded_dims(&next) == graded_dims(&cur) {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Largest `x`-invariant graded subspace contained in `e`.
    pub fn core(&self, e: &GradedSubspace) -> Result<GradedSubspace> {
        self.check_graded(e)?;
        let mut cur = e.clone();
        loop {
            let mut next = cur.clone();
            for (h, a) in self.diagram.arrows().iter().enumerate() {
                let pre = Subspace::preimage(&self.x[h], &cur[a.head]);
                next[a.tail] = next[a.tail].intersection(&pre);
            }
            if graded_dims(&next) == graded_dims(&cur) {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `p(F)` for a graded subspace `F` of `D`.
    pub fn p_image(&self, f: &GradedSubspace) -> GradedSubspace {
        f.iter().zip(&self.p).map(|(s, m)| s.image(m)).collect()
    }

    /// `q⁻¹(F)` for a graded subspace `F` of `D`.
    pub fn q_preimage(&self, f: &GradedSubspace) -> GradedSubspace {
        f.iter().zip(&self.q).map(|(s, m)| Subspace::preimage(m, s)).collect()
    }

    fn full_d(&self) -> GradedSubspace {
        self.d.0.iter().map(|&n| Subspace::full(n as usize)).collect()
    }

    fn zero_d(&self) -> GradedSubspace {
        self.d.0.iter().map(|&n| Subspace::zero(n as usize)).collect()
    }

    /// The closure of `im p` is all of `V`.
    pub fn is_stable(&self) -> bool {
        let c = self.closure(&self.p_image(&self.full_d())).expect("shapes are valid");
        c.iter().all(Subspace::is_full)
    }

    /// The core of `ker q` is zero.
    pub fn is_ast_stable(&self) -> bool {
        let c = self.core(&self.q_preimage(&self.zero_d())).expect("shapes are valid");
        c.iter().all(Subspace::is_zero)
    }

    /// Every path of length `|dim V|` acts by zero. Computed by applying the
    /// "sum of images along all arrows" operator to `V` repeatedly.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.v.sum_coords() as usize;
        let mut cur = self.full_v();
        for _ in 0..n {
            if cur.iter().all(Subspace::is_zero) {
                return true;
            }
            let mut next = self.zero_v();
            for (h, a) in self.diagram.arrows().iter().enumerate() {
                next[a.head] = next[a.head].sum(&cur[a.tail].image(&self.x[h]));
            }
            cur = next;
        }
        cur.iter().all(Subspace::is_zero)
    }

    /// Stratum data of the datum with respect to `flag`, or `None` if some
    /// closure `p(𝐃ᵏ)‾` is not contained in the core of `q⁻¹(𝐃ᵏ)`.
    pub fn stratum_membership(&self, flag: &GradedFlag) -> Result<Option<StratumData>> {
        if flag.steps.first().map(|s| graded_dims(s).len()) != Some(self.diagram.rank()) {
            return Err(Error::RankMismatch {
                expected: self.diagram.rank(),
                found: flag.steps.first().map_or(0, Vec::len),
            });
        }
        for step in &flag.steps {
            for (i, s) in step.iter().enumerate() {
                if s.ambient() as i64 != self.d[i] {
                    return Err(Error::NotContained(format!(
                        "flag lives in dimension {} at vertex {i}, but D_{i} has dimension {}",
                        s.ambient(),
                        self.d[i]
                    )));
                }
            }
        }
        if !self.is_stable() {
            return Err(Error::Unstable);
        }
        let mut closures = Vec::with_capacity(flag.len() + 1);
        let mut cores = Vec::with_capacity(flag.len() + 1);
        closures.push(self.zero_v());
        cores.push(self.core(&self.q_preimage(&self.zero_d()))?);
        for step in &flag.steps {
            let cl = self.closure(&self.p_image(step))?;
            let co = self.core(&self.q_preimage(step))?;
            if !graded_contains(&co, &cl) {
                return Ok(None);
            }
            closures.push(cl);
            cores.push(co);
        }
        let mut v = Vec::with_capacity(flag.len());
        let mut vt = Vec::with_capacity(flag.len());
        for k in 1..=flag.len() {
            let cap = graded_intersection(&closures[k], &cores[k - 1]);
            v.push(&graded_dims(&closures[k]) - &graded_dims(&cap));
            vt.push(&graded_dims(&cap) - &graded_dims(&closures[k - 1]));
        }
        Ok(Some(StratumData { v, vt }))
    }
}

fn small_entry<R: Rng + ?Sized>(rng: &mut R) -> Q {
    q([-1, 0, 0, 1][rng.gen_range(0..4)])
}

fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| small_entry(rng))
}

/// A random solution of the preprojective equation with the given dimension
/// vectors: `x` on arrows `lower → higher` and `q` are drawn at random with
/// entries in `{−1, 0, 1}`; the reversed `x` and `p` are then a random
/// integer combination of a basis of the (linear) solution space.
pub fn random_preprojective<R: Rng + ?Sized>(
    diagram: Arc<DynkinDiagram>,
    d: Weight,
    v: Weight,
    rng: &mut R,
) -> Result<AdhmDatum> {
    diagram.check_weight(&d)?;
    diagram.check_weight(&v)?;
    let arrows = diagram.arrows().to_vec();
    let n = diagram.rank();
    let vd = |i: usize| v[i] as usize;
    let dd = |i: usize| d[i] as usize;

    let mut x: Vec<Matrix> = arrows
        .iter()
        .enumerate()
        .map(|(h, a)| {
            if h % 2 == 0 {
                random_matrix(rng, vd(a.head), vd(a.tail))
            } else {
                Matrix::zeros(vd(a.head), vd(a.tail))
            }
        })
        .collect();
    let qs: Vec<Matrix> = (0..n).map(|i| random_matrix(rng, dd(i), vd(i))).collect();

    // unknown layout: entries of x_h for odd h, then entries of p_i
    let mut offset_x = vec![0usize; arrows.len()];
    let mut next = 0;
    for (h, a) in arrows.iter().enumerate() {
        if h % 2 == 1 {
            offset_x[h] = next;
            next += vd(a.head) * vd(a.tail);
        }
    }
    let mut offset_p = vec![0usize; n];
    for (i, off) in offset_p.iter_mut().enumerate() {
        *off = next;
        next += vd(i) * dd(i);
    }
    let unknowns = next;

    let mut rows: Vec<Vec<Q>> = Vec::new();
    for i in 0..n {
        for r in 0..vd(i) {
            for c in 0..vd(i) {
                let mut eq = vec![Q::zero(); unknowns];
                for (h, a) in arrows.iter().enumerate() {
                    if a.head != i {
                        continue;
                    }
                    let sign = q(diagram.orientation_sign(h));
                    let hb = diagram.reverse(h);
                    let mid = vd(a.tail);
                    if h % 2 == 0 {
                        // x_h known (V_tail → V_i), x_hb unknown (V_i → V_tail)
                        for k in 0..mid {
                            let coeff = x[h].get(r, k) * &sign;
                            eq[offset_x[hb] + k * vd(i) + c] += coeff;
                        }
                    } else {
                        // x_h unknown (V_tail → V_i), x_hb known (V_i → V_tail)
                        for k in 0..mid {
                            let coeff = x[hb].get(k, c) * &sign;
                            eq[offset_x[h] + r * mid + k] += coeff;
                        }
                    }
                }
                for k in 0..dd(i) {
                    eq[offset_p[i] + r * dd(i) + k] -= qs[i].get(k, c);
                }
                rows.push(eq);
            }
        }
    }

    let solution: Vec<Q> = if unknowns == 0 {
        Vec::new()
    } else if rows.is_empty() {
        (0..unknowns).map(|_| small_entry(rng)).collect()
    } else {
        let kernel = Matrix::from_rows(unknowns, &rows).kernel();
        let mut sol = vec![Q::zero(); unknowns];
        for b in &kernel {
            let c = q(rng.gen_range(-2..=2));
            for (s, e) in sol.iter_mut().zip(b) {
                *s += &c * e;
            }
        }
        sol
    };

    for (h, a) in arrows.iter().enumerate() {
        if h % 2 == 1 {
            let cols = vd(a.tail);
            x[h] = Matrix::from_fn(vd(a.head), cols, |r, c| solution[offset_x[h] + r * cols + c].clone());
        }
    }
    let ps: Vec<Matrix> = (0..n)
        .map(|i| Matrix::from_fn(vd(i), dd(i), |r, c| solution[offset_p[i] + r * dd(i) + c].clone()))
        .collect();
    AdhmDatum::new(diagram, d, v, x, ps, qs)
}

// ---- JSON ----

/// A rational as `[numerator, denominator]`.
pub type RationalJson = [i64; 2];
pub type MatrixJson = Vec<Vec<RationalJson>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowMapJson {
    pub tail: usize,
    pub head: usize,
    pub matrix: MatrixJson,
}

/// File format for `adhm check|stratum`. `flag[k][i]` lists spanning vectors
/// of step `k + 1` at vertex `i`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdhmJson {
    #[serde(default)]
    pub schema: Option<String>,
    pub diagram: String,
    pub d: Vec<i64>,
    pub v: Vec<i64>,
    pub x: Vec<ArrowMapJson>,
    pub p: Vec<MatrixJson>,
    pub q: Vec<MatrixJson>,
    #[serde(default)]
    pub flag: Option<Vec<Vec<MatrixJson>>>,
}

fn rat_from_json(r: RationalJson) -> Result<Q> {
    if r[1] == 0 {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Q::new(BigInt::from(r[0]), BigInt::from(r[1])))
}

fn rat_to_json(x: &Q) -> Result<RationalJson> {
    match (x.numer().to_i64(), x.denom().to_i64()) {
        (Some(n), Some(d)) => Ok([n, d]),
        _ => Err(Error::Parse(format!("rational {x} does not fit in 64 bits"))),
    }
}

fn matrix_from_json(m: &MatrixJson, rows: usize, cols: usize, what: &str) -> Result<Matrix> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::ShapeMismatch(format!("{what} must be {rows}x{cols}")));
    }
    let data: Vec<Vec<Q>> = m
        .iter()
        .map(|r| r.iter().map(|&e| rat_from_json(e)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    Ok(Matrix::from_rows(cols, &data))
}

fn matrix_to_json(m: &Matrix) -> Result<MatrixJson> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(rat_to_json).collect())
        .collect()
}

impl AdhmJson {
    pub fn to_datum(&self) -> Result<(AdhmDatum, Option<GradedFlag>)> {
        let diagram: Arc<DynkinDiagram> = Arc::new(self.diagram.parse()?);
        let d = Weight(self.d.clone());
        let v = Weight(self.v.clone());
        diagram.check_weight(&d)?;
        diagram.check_weight(&v)?;
        if !d.is_nonnegative() || !v.is_nonnegative() {
            return Err(Error::ShapeMismatch("dimension vectors must be non-negative".into()));
        }
        let arrows = diagram.arrows();
        if self.x.len() != arrows.len() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} arrow maps, got {}",
                arrows.len(),
                self.x.len()
            )));
        }
        let mut x = Vec::with_capacity(arrows.len());
        for (h, (a, m)) in arrows.iter().zip(&self.x).enumerate() {
            if (m.tail, m.head) != (a.tail, a.head) {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {h} must be {} -> {}, got {} -> {}",
                    a.tail, a.head, m.tail, m.head
                )));
            }
            x.push(matrix_from_json(
                &m.matrix,
                v[a.head] as usize,
                v[a.tail] as usize,
                &format!("x for arrow {h}"),
            )?);
        }
        let n = diagram.rank();
        if self.p.len() != n || self.q.len() != n {
            return Err(Error::ShapeMismatch(format!("expected {n} p and q maps")));
        }
        let p = (0..n)
            .map(|i| matrix_from_json(&self.p[i], v[i] as usize, d[i] as usize, &format!("p_{i}")))
            .collect::<Result<Vec<_>>>()?;
        let qm = (0..n)
            .map(|i| matrix_from_json(&self.q[i], d[i] as usize, v[i] as usize, &format!("q_{i}")))
            .collect::<Result<Vec<_>>>()?;
        let flag = match &self.flag {
            None => None,
            Some(steps) => {
                let mut out = Vec::with_capacity(steps.len());
                for (k, step) in steps.iter().enumerate() {
                    if step.len() != n {
                        return Err(Error::ShapeMismatch(format!(
                            "flag step {} must list {n} vertices",
                            k + 1
                        )));
                    }
                    let mut graded = Vec::with_capacity(n);
                    for (i, vecs) in step.iter().enumerate() {
                        let dim = d[i] as usize;
                        let m = matrix_from_json(vecs, vecs.len(), dim, &format!("flag step {} vertex {i}", k + 1))?;
                        graded.push(Subspace::span(dim, m.row_vecs()));
                    }
                    out.push(graded);
                }
                Some(GradedFlag::new(&d, out)?)
            }
        };
        let datum = AdhmDatum::new(diagram, d, v, x, p, qm)?;
        Ok((datum, flag))
    }

    pub fn from_datum(datum: &AdhmDatum, flag: Option<&GradedFlag>) -> Result<Self> {
        let g = datum.diagram();
        let x = g
            .arrows()
            .iter()
            .enumerate()
            .map(|(h, a)| {
                Ok(ArrowMapJson {
                    tail: a.tail,
                    head: a.head,
                    matrix: matrix_to_json(datum.x(h))?,
                })
            })
            .collect::<Result<_>>()?;
        let p = (0..g.rank()).map(|i| matrix_to_json(datum.p(i))).collect::<Result<_>>()?;
        let qm = (0..g.rank()).map(|i| matrix_to_json(datum.q(i))).collect::<Result<_>>()?;
        let flag = match flag {
            None => None,
            Some(f) => Some(
                f.steps()
                    .iter()
                    .map(|step| {
                        step.iter()
                            .map(|s| s.basis().iter().map(|b| b.iter().map(rat_to_json).collect()).collect())
                            .collect()
                    })
                    .collect::<Result<_>>()?,
            ),
        };
        Ok(AdhmJson {
            schema: Some(crate::SCHEMA.to_string()),
            diagram: g.name().to_string(),
            d: datum.d().0.clone(),
            v: datum.v().0.clone(),
            x,
            p,
            q: qm,
            flag,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(name: &str) -> Arc<DynkinDiagram> {
        Arc::new(name.parse().unwrap())
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    /// One vertex, `D = Q²`, `V = Q`, `p = [0 1]`, `q = (1, 0)ᵀ`.
    fn one_vertex() -> AdhmDatum {
        AdhmDatum::new(
            g("A1"),
            w(&[2]),
            w(&[1]),
            vec![],
            vec![Matrix::from_i64(&[&[0, 1]])],
            vec![Matrix::from_i64(&[&[1], &[0]])],
        )
        .unwrap()
    }

    fn span(dim: usize, vecs: &[&[i64]]) -> Subspace {
        Subspace::span(dim, vecs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn one_vertex_preprojective() {
        let ok = one_vertex();
        assert!(ok.check_preprojective().holds);
        assert!(ok.is_stable());
        assert!(ok.is_ast_stable());
        let bad = AdhmDatum::new(
            g("A1"),
            w(&[2]),
            w(&[1]),
            vec![],
            vec![Matrix::from_i64(&[&[1, 0]])],
            vec![Matrix::from_i64(&[&[1], &[0]])],
        )
        .unwrap();
        let report = bad.check_preprojective();
        assert!(!report.holds);
        assert_eq!(report.residuals[0], Matrix::from_i64(&[&[-1]]));
        let zero = AdhmDatum::zero(g("A3"), w(&[1, 0, 2]), w(&[1, 1, 1])).unwrap();
        assert!(zero.check_preprojective().holds);
        assert!(!zero.is_stable());
        assert!(!zero.is_ast_stable());
        assert!(zero.is_nilpotent());
    }

    #[test]
    fn stratum_one_vertex() {
        let datum = one_vertex();
        let d = w(&[2]);
        let flag1 = GradedFlag::new(&d, vec![vec![span(2, &[&[1, 0]])], vec![Subspace::full(2)]]).unwrap();
        let s = datum.stratum_membership(&flag1).unwrap().unwrap();
        assert_eq!(s.v, vec![w(&[0]), w(&[0])]);
        assert_eq!(s.vt, vec![w(&[0]), w(&[1])]);
        let flag2 = GradedFlag::new(&d, vec![vec![span(2, &[&[0, 1]])], vec![Subspace::full(2)]]).unwrap();
        assert_eq!(datum.stratum_membership(&flag2).unwrap(), None);
        let triv = datum.stratum_membership(&GradedFlag::trivial(&d)).unwrap().unwrap();
        assert_eq!(triv.v, vec![w(&[1])]);
        assert_eq!(triv.vt, vec![w(&[0])]);
    }

    #[test]
    fn closure_and_core_on_a2() {
        let a2 = g("A2");
        let mut datum = AdhmDatum::zero(a2.clone(), w(&[0, 0]), w(&[1, 1])).unwrap();
        let source = vec![Subspace::full(1), Subspace::zero(1)];
        assert_eq!(datum.closure(&source).unwrap(), source);
        assert_eq!(datum.core(&source).unwrap(), source);
        datum.x[0] = Matrix::from_i64(&[&[1]]);
        assert!(datum.closure(&source).unwrap().iter().all(Subspace::is_full));
        assert!(datum.core(&source).unwrap().iter().all(Subspace::is_zero));
        assert_eq!(datum.closure(&datum.full_v()).unwrap(), datum.full_v());
        assert_eq!(datum.core(&datum.zero_v()).unwrap(), datum.zero_v());
        let wrong = vec![Subspace::full(2), Subspace::zero(1)];
        assert!(matches!(datum.closure(&wrong), Err(Error::NotContained(_))));
    }

    #[test]
    fn two_cycle_is_not_nilpotent() {
        let mut datum = AdhmDatum::zero(g("A2"), w(&[0, 0]), w(&[1, 1])).unwrap();
        datum.x[0] = Matrix::from_i64(&[&[1]]);
        datum.x[1] = Matrix::from_i64(&[&[1]]);
        assert!(!datum.is_nilpotent());
        datum.x[1] = Matrix::from_i64(&[&[0]]);
        assert!(datum.is_nilpotent());
    }

    /// With a non-zero framing the preprojective relation alone does not force
    /// nilpotency: here every relation holds but `x_h x_h̄ = 1`.
    #[test]
    fn framed_solution_need_not_be_nilpotent() {
        let datum = AdhmDatum::new(
            g("A2"),
            w(&[1, 1]),
            w(&[1, 1]),
            vec![Matrix::from_i64(&[&[1]]), Matrix::from_i64(&[&[1]])],
            vec![Matrix::from_i64(&[&[1]]), Matrix::from_i64(&[&[1]])],
            vec![Matrix::from_i64(&[&[-1]]), Matrix::from_i64(&[&[1]])],
        )
        .unwrap();
        assert!(datum.check_preprojective().holds);
        assert!(!datum.is_nilpotent());
    }

    #[test]
    fn random_solutions_satisfy_the_equation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for name in ["A2", "A3", "D4"] {
            for _ in 0..10 {
                let diagram = g(name);
                let r = diagram.rank();
                let v = Weight((0..r).map(|_| rng.gen_range(0..=2)).collect());
                let d = Weight((0..r).map(|_| rng.gen_range(0..=1)).collect());
                let datum = random_preprojective(diagram, d, v, &mut rng).unwrap();
                assert!(datum.check_preprojective().holds);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let datum = one_vertex();
        let flag = GradedFlag::new(&w(&[2]), vec![vec![span(2, &[&[1, 0]])], vec![Subspace::full(2)]]).unwrap();
        let json = AdhmJson::from_datum(&datum, Some(&flag)).unwrap();
        let text = serde_json::to_string(&json).unwrap();
        let back: AdhmJson = serde_json::from_str(&text).unwrap();
        let (d2, f2) = back.to_datum().unwrap();
        assert_eq!(d2, datum);
        assert_eq!(f2.unwrap(), flag);
    }

    #[test]
    fn bad_flags_rejected() {
        let d = w(&[2]);
        assert!(GradedFlag::new(&d, vec![vec![span(2, &[&[1, 0]])]]).is_err());
        assert!(GradedFlag::new(&d, vec![vec![Subspace::full(2)], vec![span(2, &[&[1, 0]])]]).is_err());
        assert!(GradedFlag::new(&d, vec![]).is_err());
    }
}
