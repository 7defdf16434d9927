//! The ten acceptance criteria as a deterministic, machine-readable report.
//!
//! Criteria run in order and share a context: tensors formed in criteria 1–4
//! are re-checked by criterion 5, and the highest-weight crystals built in
//! criterion 5 feed criteria 7 and 9.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adhm::{random_preprojective, AdhmDatum, GradedFlag};
use crate::crystal::{CrystalGraph, Label, TensorRule};
use crate::decompose::{
    branch, decompose, highest_weight_multiset, levi_dicts, multiplicity, tensor_of_highest,
};
use crate::error::{Error, Result};
use crate::linalg::{q, Matrix, Subspace};
use crate::lspath::{build_crystal, HighestWeightCache};
use crate::par;
use crate::quiver::{gamma_fiber, gprime_weight, hw_weight, v_from_weight, QuiverParams};
use crate::roots::{pairing, DynkinDiagram, Weight};
use crate::sl2::{a1, sl2_crystal, sl2_mult_range, sl2_tau2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestOptions {
    pub seed: u64,
    /// Build every tensor product of criteria 1–4 with the inequalities swapped.
    pub inject_tensor_fault: bool,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            seed: 0x5eed,
            inject_tensor_fault: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub schema: &'static str,
    pub seed: u64,
    pub parallel: bool,
    pub criteria: Vec<CriterionResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

pub const CRITERIA: [&str; 10] = [
    "sl2 Clebsch-Gordan",
    "tau2 formula",
    "A2 multiplicity table",
    "Cartan component uniqueness",
    "tensor axioms",
    "associativity and commutativity",
    "Levi identities",
    "dimension formula consistency",
    "g' positivity",
    "ADHM suite",
];

type Outcome = std::result::Result<String, String>;

#[derive(Default)]
struct Context {
    /// `(description, violation count)` for every tensor formed in criteria 1–4.
    tensors: Vec<(String, usize)>,
    /// Highest-weight crystals checked in criterion 5.
    crystals: Vec<Arc<CrystalGraph>>,
}

impl Context {
    fn record(&mut self, what: String, t: &CrystalGraph) {
        self.tensors.push((what, t.verify_axioms().len()));
    }
}

fn rule(opts: &SelftestOptions) -> TensorRule {
    if opts.inject_tensor_fault {
        TensorRule::SignFlipped
    } else {
        TensorRule::Standard
    }
}

fn rng_for(opts: &SelftestOptions, id: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed ^ (u64::from(id) << 32))
}

fn diagram(name: &str) -> Arc<DynkinDiagram> {
    Arc::new(name.parse().expect("built-in diagram name"))
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Run all ten criteria in order.
pub fn run(opts: &SelftestOptions) -> SelftestReport {
    let mut ctx = Context::default();
    let mut criteria = Vec::with_capacity(10);
    for id in 1..=10u32 {
        let start = Instant::now();
        let outcome = match id {
            1 => c1_clebsch_gordan(opts, &mut ctx),
            2 => c2_tau2(opts, &mut ctx),
            3 => c3_a2_table(opts, &mut ctx),
            4 => c4_cartan_component(opts, &mut ctx),
            5 => c5_axioms(opts, &mut ctx),
            6 => c6_associativity(opts),
            7 => c7_levi(opts, &ctx),
            8 => c8_dimensions(opts),
            9 => c9_positivity(&ctx),
            _ => c10_adhm(opts),
        };
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        criteria.push(CriterionResult {
            id,
            name: CRITERIA[id as usize - 1],
            passed,
            detail,
            millis: start.elapsed().as_millis(),
        });
    }
    SelftestReport {
        schema: crate::SCHEMA,
        seed: opts.seed,
        parallel: par::is_parallel(),
        criteria,
    }
}

/// All `(d, v)` with `0 ≤ 2v ≤ d ≤ 8`.
fn sl2_grid() -> Vec<(i64, i64)> {
    (0..=8).flat_map(|d| (0..=d / 2).map(move |v| (d, v))).collect()
}

fn c1_clebsch_gordan(opts: &SelftestOptions, ctx: &mut Context) -> Outcome {
    let g = a1();
    let mut cache = HighestWeightCache::new(g.clone());
    let weights: Vec<Weight> = (0..=8).map(|m| Weight(vec![m])).collect();
    cache.prefetch(&weights).map_err(err)?;
    let b: Vec<Arc<CrystalGraph>> = weights.iter().map(|w| cache.get(w)).collect::<Result<_>>().map_err(err)?;
    let grid = sl2_grid();
    let pairs: Vec<((i64, i64), (i64, i64))> =
        grid.iter().flat_map(|&a| grid.iter().map(move |&c| (a, c))).collect();
    let r = rule(opts);
    let results = par::map_slice(&pairs, |&((d1, v1), (d2, v2))| -> std::result::Result<usize, String> {
        let left = &b[(d1 - 2 * v1) as usize];
        let right = &b[(d2 - 2 * v2) as usize];
        let t = left.tensor_with_rule(right, r).map_err(err)?;
        let violations = t.verify_axioms().len();
        let dec = decompose(&t).map_err(|e| format!("({d1},{v1})x({d2},{v2}): {e}"))?;
        let d = d1 + d2;
        let expect: BTreeMap<Weight, usize> = sl2_mult_range(d1, v1, d2, v2)
            .map_err(err)?
            .into_iter()
            .map(|v0| (Weight(vec![d - 2 * v0]), 1))
            .collect();
        if dec.summands != expect {
            return Err(format!(
                "({d1},{v1})x({d2},{v2}): decomposition {:?} differs from range {:?}",
                dec.summands, expect
            ));
        }
        Ok(violations)
    });
    for (k, res) in results.into_iter().enumerate() {
        let violations = res?;
        ctx.tensors.push((format!("criterion 1 pair {k}"), violations));
    }
    Ok(format!("{} tensor products over A1 match the closed-form range", pairs.len()))
}

fn c2_tau2(opts: &SelftestOptions, ctx: &mut Context) -> Outcome {
    let grid = sl2_grid();
    let pairs: Vec<((i64, i64), (i64, i64))> =
        grid.iter().flat_map(|&a| grid.iter().map(move |&c| (a, c))).collect();
    let r = rule(opts);
    let results = par::map_slice(&pairs, |&((d1, v1), (d2, v2))| -> std::result::Result<(usize, usize), String> {
        let m1 = sl2_crystal(d1, v1);
        let m2 = sl2_crystal(d2, v2);
        let t = m1.tensor_with_rule(&m2, r).map_err(err)?;
        let violations = t.verify_axioms().len();
        let dec = decompose(&t).map_err(|e| format!("({d1},{v1})x({d2},{v2}): {e}"))?;
        let d = d1 + d2;
        for x in t.vertices() {
            let Label::Pair(a, c) = *t.label(x) else {
                return Err("tensor vertex without pair label".into());
            };
            let (Label::Sl2(u1), Label::Sl2(u2)) = (m1.label(a), m2.label(c)) else {
                return Err("sl2 vertex without label".into());
            };
            let (v0, u) = sl2_tau2(d1, v1, *u1, d2, v2, *u2).map_err(err)?;
            let inst = &dec.instances[dec.assignment[x as usize] as usize];
            let mu = inst.weight[0];
            if (d - mu) % 2 != 0 || (d - mu) / 2 != v0 || t.weight_slice(x)[0] != d - 2 * u {
                return Err(format!(
                    "({d1},{v1},{u1})x({d2},{v2},{u2}): component of weight {mu} but formula gives v0={v0}, u={u}"
                ));
            }
        }
        Ok((violations, t.cardinality()))
    });
    let mut checked = 0;
    for (k, res) in results.into_iter().enumerate() {
        let (violations, n) = res?;
        checked += n;
        ctx.tensors.push((format!("criterion 2 pair {k}"), violations));
    }
    Ok(format!("{checked} tensor vertices agree with the tau2 formula"))
}

/// Peel highest weights off a character: repeatedly take a weight of maximal
/// height (which is dominant) and subtract the character of `B(λ)`.
pub fn character_peel(
    cache: &mut HighestWeightCache,
    character: &BTreeMap<Weight, usize>,
) -> Result<BTreeMap<Weight, usize>> {
    let g = cache.diagram().clone();
    let r = g.rank();
    let mut rest: BTreeMap<Weight, i64> = character.iter().map(|(w, &m)| (w.clone(), m as i64)).collect();
    let mut out = BTreeMap::new();
    loop {
        rest.retain(|_, m| *m != 0);
        // a weight with no support above it in any simple direction is the
        // highest weight of some remaining component
        let Some(top) = rest
            .keys()
            .find(|w| {
                (0..r).all(|i| match g.simple_root(i) {
                    Ok(a) => !rest.contains_key(&(*w + &a)),
                    Err(_) => false,
                })
            })
            .cloned()
        else {
            break;
        };
        if !top.is_nonnegative() {
            return Err(Error::Inconsistent(format!("maximal weight {top} is not dominant")));
        }
        let mult = rest[&top];
        if mult < 0 {
            return Err(Error::Inconsistent(format!("negative multiplicity at {top}")));
        }
        let b = cache.get(&top)?;
        for (w, m) in b.character() {
            *rest.entry(w).or_insert(0) -= mult * m as i64;
        }
        out.insert(top, mult as usize);
    }
    if !rest.is_empty() {
        return Err(Error::Inconsistent("character did not peel to zero".into()));
    }
    Ok(out)
}

fn c3_a2_table(opts: &SelftestOptions, ctx: &mut Context) -> Outcome {
    let g = diagram("A2");
    let w = |a: i64, b: i64| Weight(vec![a, b]);
    let mut cache = HighestWeightCache::new(g);
    let b = cache.get(&w(1, 1)).map_err(err)?;
    let t = b.tensor_with_rule(&b, rule(opts)).map_err(err)?;
    ctx.record("criterion 3 B(1,1)xB(1,1)".into(), &t);
    if t.cardinality() != 64 {
        return Err(format!("tensor has {} vertices, expected 64", t.cardinality()));
    }
    let expect = BTreeMap::from([(w(2, 2), 1), (w(3, 0), 1), (w(0, 3), 1), (w(1, 1), 2), (w(0, 0), 1)]);
    let mut scan: BTreeMap<Weight, usize> = BTreeMap::new();
    for v in t.highest_vertices() {
        *scan.entry(t.weight(v)).or_insert(0) += 1;
    }
    if scan != expect {
        return Err(format!("highest-vertex scan gives {scan:?}"));
    }
    let dec = decompose(&t).map_err(err)?;
    if dec.summands != expect {
        return Err(format!("decompose gives {:?}", dec.summands));
    }
    let peeled = character_peel(&mut cache, &t.character()).map_err(err)?;
    if peeled != expect {
        return Err(format!("character subtraction gives {peeled:?}"));
    }
    let m = multiplicity(&mut cache, &w(1, 1), &[w(1, 1), w(1, 1)]).map_err(err)?;
    if m != 2 {
        return Err(format!("multiplicity((1,1);(1,1),(1,1)) = {m}"));
    }
    Ok("decomposition, scan, character subtraction and multiplicity agree".into())
}

fn random_dominant<R: Rng>(rng: &mut R, g: &DynkinDiagram, max_dim: u64, max_coord: i64) -> Weight {
    loop {
        let w = Weight((0..g.rank()).map(|_| rng.gen_range(0..=max_coord)).collect());
        if let Ok(Some(dim)) = g.weyl_dimension(&w) {
            if dim <= max_dim {
                return w;
            }
        }
    }
}

fn c4_cartan_component(opts: &SelftestOptions, ctx: &mut Context) -> Outcome {
    let mut rng = rng_for(opts, 4);
    let names = ["A2", "A3", "D4"];
    let mut caches: BTreeMap<&str, HighestWeightCache> =
        names.iter().map(|&n| (n, HighestWeightCache::new(diagram(n)))).collect();
    let mut cross_checked = 0;
    for case in 0..50 {
        let name = names[case % names.len()];
        let cache = caches.get_mut(name).expect("cache per diagram");
        let g = cache.diagram().clone();
        let n = rng.gen_range(2..=3);
        let factors: Vec<Weight> = (0..n).map(|_| random_dominant(&mut rng, &g, 100, 3)).collect();
        let total = factors.iter().fold(Weight::zero(g.rank()), |a, f| &a + f);
        let m = multiplicity(cache, &total, &factors).map_err(err)?;
        if m != 1 {
            return Err(format!("{name} {factors:?}: multiplicity of the sum is {m}"));
        }
        let size: u64 = factors
            .iter()
            .map(|f| g.weyl_dimension(f).ok().flatten().unwrap_or(u64::MAX))
            .product();
        if size <= 20_000 {
            let parts: Vec<Arc<CrystalGraph>> = factors.iter().map(|f| cache.get(f)).collect::<Result<_>>().map_err(err)?;
            let mut t = (*parts[0]).clone();
            for p in &parts[1..] {
                t = t.tensor_with_rule(p, rule(opts)).map_err(err)?;
            }
            ctx.record(format!("criterion 4 {name} {factors:?}"), &t);
            let count = t
                .highest_vertices()
                .into_iter()
                .filter(|&v| t.weight_slice(v) == total.as_slice())
                .count();
            if count != 1 {
                return Err(format!("{name} {factors:?}: full tensor has {count} highest vertices of the sum"));
            }
            cross_checked += 1;
        }
    }
    Ok(format!("50 tuples, {cross_checked} cross-checked on the full tensor"))
}

/// Small dominant weights (coordinate sum ≤ 2) and seeded random ones with
/// `|B(λ)| ≤ 5000`, per diagram.
fn c5_weights(opts: &SelftestOptions) -> Vec<(Arc<DynkinDiagram>, Weight)> {
    let mut rng = rng_for(opts, 5);
    let mut out = Vec::new();
    for name in ["A1", "A2", "A3", "A4", "D4"] {
        let g = diagram(name);
        let r = g.rank();
        let mut chosen: Vec<Weight> = Vec::new();
        let mut stack = vec![Weight::zero(r)];
        while let Some(w) = stack.pop() {
            if chosen.contains(&w) {
                continue;
            }
            chosen.push(w.clone());
            if w.sum_coords() < 2 {
                for i in 0..r {
                    stack.push(&w + &Weight::unit(r, i));
                }
            }
        }
        if r == 1 {
            chosen.extend([3, 7, 20, 100].iter().map(|&m| Weight(vec![m])));
        }
        for _ in 0..6 {
            let w = random_dominant(&mut rng, &g, 5000, 4);
            if !chosen.contains(&w) {
                chosen.push(w);
            }
        }
        chosen.sort();
        out.extend(chosen.into_iter().map(|w| (g.clone(), w)));
    }
    out
}

fn c5_axioms(opts: &SelftestOptions, ctx: &mut Context) -> Outcome {
    let weights = c5_weights(opts);
    let built = par::map_slice(&weights, |(g, w)| -> std::result::Result<CrystalGraph, String> {
        let c = build_crystal(g.clone(), w).map_err(err)?;
        let violations = c.verify_axioms();
        if let Some(v) = violations.first() {
            return Err(format!("B{w} over {g}: {v}"));
        }
        let hv = c.highest_vertices();
        if hv != [0] || c.weight(0) != *w {
            return Err(format!("B{w} over {g}: sources {hv:?}"));
        }
        let dim = g.weyl_dimension(w).map_err(err)?;
        if dim != Some(c.cardinality() as u64) {
            return Err(format!("B{w} over {g}: {} vertices, Weyl dimension {dim:?}", c.cardinality()));
        }
        Ok(c)
    });
    ctx.crystals.clear();
    for c in built {
        ctx.crystals.push(Arc::new(c?));
    }
    let bad: Vec<&(String, usize)> = ctx.tensors.iter().filter(|(_, n)| *n > 0).collect();
    if let Some((what, n)) = bad.first() {
        return Err(format!(
            "{} of {} tensors violate the axioms; first: {what} with {n} violations",
            bad.len(),
            ctx.tensors.len()
        ));
    }
    Ok(format!(
        "{} highest-weight crystals and {} tensor products satisfy the axioms",
        ctx.crystals.len(),
        ctx.tensors.len()
    ))
}

fn c6_associativity(opts: &SelftestOptions) -> Outcome {
    let mut rng = rng_for(opts, 6);
    let mut checked = 0;
    for name in ["A2", "D4"] {
        let g = diagram(name);
        let mut cache = HighestWeightCache::new(g.clone());
        for _ in 0..20 {
            let ws: Vec<Weight> = (0..3).map(|_| random_dominant(&mut rng, &g, 28, 2)).collect();
            let b: Vec<Arc<CrystalGraph>> = ws.iter().map(|w| cache.get(w)).collect::<Result<_>>().map_err(err)?;
            let left = b[0].tensor(&b[1]).and_then(|ab| ab.tensor(&b[2])).map_err(err)?;
            let right = b[1].tensor(&b[2]).and_then(|bc| b[0].tensor(&bc)).map_err(err)?;
            let dl = crate::decompose::decompose_with_cache(&left, &mut cache).map_err(err)?;
            let dr = crate::decompose::decompose_with_cache(&right, &mut cache).map_err(err)?;
            if dl.summands != dr.summands {
                return Err(format!("{name} {ws:?}: nesting changes the decomposition"));
            }
            let ab = b[0].tensor(&b[1]).map_err(err)?;
            let ba = b[1].tensor(&b[0]).map_err(err)?;
            let dab = crate::decompose::decompose_with_cache(&ab, &mut cache).map_err(err)?;
            let dba = crate::decompose::decompose_with_cache(&ba, &mut cache).map_err(err)?;
            if dab.summands != dba.summands {
                return Err(format!("{name} {:?}: swapping factors changes the decomposition", &ws[..2]));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} triples and pairs agree"))
}

fn c7_levi(opts: &SelftestOptions, ctx: &Context) -> Outcome {
    let mut rng = rng_for(opts, 7);
    let names = ["A3", "D4", "E6"];
    for case in 0..200 {
        let g = diagram(names[case % 3]);
        let r = g.rank();
        let d = Weight((0..r).map(|_| rng.gen_range(0..=4)).collect());
        let v = Weight((0..r).map(|_| rng.gen_range(0..=4)).collect());
        let subset: Vec<usize> = (0..r).filter(|_| rng.gen_bool(0.5)).collect();
        let sub = g.subdiagram(&subset).map_err(err)?;
        let (delta, rho) = levi_dicts(&g, &d, &v, &subset).map_err(err)?;
        let lhs = crate::quiver::delta_vec(&g, &d, &v).map_err(err)?.restrict(&subset);
        let rhs = &(&delta - &rho.scale(2)) + &sub.apply_x(&rho).map_err(err)?;
        if lhs != rhs {
            return Err(format!("{g} d={d} v={v} subset={subset:?}: {lhs} != {rhs}"));
        }
    }
    let jobs: Vec<(usize, Vec<usize>)> = ctx
        .crystals
        .iter()
        .enumerate()
        .flat_map(|(k, c)| {
            let r = c.rank();
            let mut subsets = vec![(0..r).collect::<Vec<_>>(), Vec::new()];
            for i in 0..r {
                subsets.push((0..r).filter(|&j| j != i).collect());
            }
            subsets.into_iter().map(move |s| (k, s))
        })
        .collect();
    let results = par::map_slice(&jobs, |(k, subset)| -> std::result::Result<(), String> {
        let c = &ctx.crystals[*k];
        let dec = branch(c, subset).map_err(err)?;
        let mut total = 0;
        for inst in &dec.instances {
            total += inst.embedding.len();
        }
        let sub = dec.diagram.clone();
        let mut sizes = 0;
        for (w, m) in &dec.summands {
            let dim = sub.weyl_dimension(w).map_err(err)?.unwrap_or(0) as usize;
            sizes += dim * m;
        }
        if total != c.cardinality() || sizes != c.cardinality() {
            return Err(format!(
                "branching B{} over {} to {subset:?}: {total} / {sizes} vertices vs {}",
                c.weight(0),
                c.diagram(),
                c.cardinality()
            ));
        }
        Ok(())
    });
    for r in results {
        r?;
    }
    Ok(format!("200 Levi identities and {} branchings conserve cardinality", jobs.len()))
}

fn random_vec<R: Rng>(rng: &mut R, r: usize, hi: i64) -> Weight {
    Weight((0..r).map(|_| rng.gen_range(0..=hi)).collect())
}

fn c8_dimensions(opts: &SelftestOptions) -> Outcome {
    let mut rng = rng_for(opts, 8);
    let names = ["A2", "A3", "D4"];
    for case in 0..500 {
        let g = diagram(names[case % 3]);
        let r = g.rank();
        let n = rng.gen_range(1..=3);
        let dt: Vec<Weight> = (0..n).map(|_| random_vec(&mut rng, r, 2)).collect();
        let vt_v: Vec<Weight> = (0..n).map(|_| random_vec(&mut rng, r, 2)).collect();
        let vt: Vec<Weight> = (0..n).map(|_| random_vec(&mut rng, r, 2)).collect();
        let sum = |ws: &[Weight]| ws.iter().fold(Weight::zero(r), |a, w| &a + w);
        let d = sum(&dt);
        let v = &sum(&vt_v) + &sum(&vt);
        let v0 = random_vec(&mut rng, r, 2);
        let ctx = format!("{g} case {case}");
        let p = QuiverParams::new(g.clone(), d.clone(), v.clone(), v0, dt.clone(), vt_v.clone(), Some(vt.clone()))
            .map_err(|e| format!("{ctx}: {e}"))?;
        let s = p.strat_dims().map_err(|e| format!("{ctx}: {e}"))?;
        if s.dim_t != s.dim_t_closed || s.dim_s != s.dim_s_closed {
            return Err(format!("{ctx}: tensor/multiplicity closed forms disagree"));
        }
        let pi_flag = s.dim_pi_flag.expect("vt given");
        if s.dim_pi_vvt != Some(pi_flag + s.dim_flag_variety.expect("vt given")) {
            return Err(format!("{ctx}: fixed-flag stratum plus flag variety != stratum"));
        }
        // move the vt mass around while keeping its total
        let mut shuffled: Vec<Weight> = vec![Weight::zero(r); n];
        let total_vt = sum(&vt);
        for i in 0..r {
            for _ in 0..total_vt[i] {
                let k = rng.gen_range(0..n);
                shuffled[k].0[i] += 1;
            }
        }
        let p2 = QuiverParams::new(g.clone(), d.clone(), v.clone(), p.v0.clone(), dt.clone(), vt_v.clone(), Some(shuffled))
            .map_err(|e| format!("{ctx}: {e}"))?;
        if p2.strat_dims().map_err(|e| format!("{ctx}: {e}"))?.dim_pi_vvt != s.dim_pi_vvt {
            return Err(format!("{ctx}: stratum dimension depends on vt"));
        }
        // gamma bookkeeping
        let u = Weight(v.0.iter().map(|&x| rng.gen_range(0..=x)).collect());
        let t = &v - &u;
        let xuu = pairing(&g.apply_x(&u).map_err(err)?, &u).map_err(err)?;
        if xuu % 2 != 0 {
            return Err(format!("{ctx}: odd <Xu,u>"));
        }
        let pss = QuiverParams::new(g.clone(), d.clone(), t.clone(), t.clone(), dt.clone(), vt_v.clone(), None)
            .map_err(|e| format!("{ctx}: {e}"))?
            .strat_dims()
            .map_err(|e| format!("{ctx}: {e}"))?
            .dim_pi_ss;
        let lhs = s.dim_pi_v - pairing(&u, &t).map_err(err)?;
        let rhs = xuu / 2 + pss + gamma_fiber(&g, &d, &u, &t).map_err(err)?;
        if lhs != rhs {
            return Err(format!("{ctx}: gamma bookkeeping {lhs} != {rhs}"));
        }
        if n >= 2 {
            p.rho2_fiber_at(1).map_err(|e| format!("{ctx}: {e}"))?;
        }
    }
    Ok("500 parameter sets: closed forms, vt-independence, gamma bookkeeping, parity".into())
}

fn c9_positivity(ctx: &Context) -> Outcome {
    if ctx.crystals.is_empty() {
        return Err("no crystals from criterion 5".into());
    }
    let results = par::map_slice(&ctx.crystals, |c| -> std::result::Result<usize, String> {
        let g = c.diagram();
        let r = g.rank();
        let lambda = c.weight(0);
        let mut choices = Vec::new();
        for mask in 0..(1u32 << r) {
            let v0 = Weight((0..r).map(|i| i64::from((mask >> i) & 1)).collect());
            let d = &lambda + &g.apply_cartan(&v0).map_err(err)?;
            if d.is_nonnegative() {
                choices.push((d, v0));
            }
        }
        let mut checked = 0;
        for (d, v0) in &choices {
            if hw_weight(g, d, v0).map_err(err)? != lambda {
                return Err(format!("hw weight of ({d},{v0}) is not {lambda}"));
            }
            let top = gprime_weight(g, d, v0).map_err(err)?;
            if !top.is_integrable() {
                continue;
            }
            for x in c.vertices() {
                let wt = c.weight(x);
                let v = v_from_weight(g, d, &wt)
                    .map_err(err)?
                    .ok_or_else(|| format!("no v for weight {wt} with d={d} in B{lambda}"))?;
                let gp = gprime_weight(g, d, &v).map_err(err)?;
                if !gp.is_nonnegative() {
                    return Err(format!("B{lambda} over {g}, d={d}: g' weight ({}, {}) has a negative entry", gp.first, gp.second));
                }
                checked += 1;
            }
        }
        Ok(checked)
    });
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("{total} vertex/framing pairs have non-negative g' weights"))
}

fn span(dim: usize, vecs: &[&[i64]]) -> Subspace {
    Subspace::span(dim, vecs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect())
}

fn adhm_examples() -> std::result::Result<(), String> {
    let a1 = a1();
    let w = |v: &[i64]| Weight(v.to_vec());
    let datum = |pm: &[&[i64]], qm: &[&[i64]]| {
        AdhmDatum::new(a1.clone(), w(&[2]), w(&[1]), vec![], vec![Matrix::from_i64(pm)], vec![Matrix::from_i64(qm)])
            .map_err(err)
    };
    let good = datum(&[&[0, 1]], &[&[1], &[0]])?;
    if !good.check_preprojective().holds {
        return Err("p=[0 1], q=(1,0)^T should satisfy the equation".into());
    }
    if !(good.is_stable() && good.is_ast_stable()) {
        return Err("p=[0 1], q=(1,0)^T should be stable and *-stable".into());
    }
    let bad = datum(&[&[1, 0]], &[&[1], &[0]])?;
    let report = bad.check_preprojective();
    if report.holds || report.residuals[0] != Matrix::from_i64(&[&[-1]]) {
        return Err("p=[1 0], q=(1,0)^T should leave residual -1".into());
    }
    let zero = AdhmDatum::zero(diagram("A2"), w(&[1, 1]), w(&[1, 1])).map_err(err)?;
    if !zero.check_preprojective().holds || zero.is_stable() || zero.is_ast_stable() || !zero.is_nilpotent() {
        return Err("zero datum: expected preprojective, unstable, not *-stable, nilpotent".into());
    }
    let d = w(&[2]);
    let f1 = GradedFlag::new(&d, vec![vec![span(2, &[&[1, 0]])], vec![Subspace::full(2)]]).map_err(err)?;
    let s = good.stratum_membership(&f1).map_err(err)?;
    let expect = Some((vec![w(&[0]), w(&[0])], vec![w(&[0]), w(&[1])]));
    if s.as_ref().map(|s| (s.v.clone(), s.vt.clone())) != expect {
        return Err(format!("flag span(e1): got {s:?}"));
    }
    let f2 = GradedFlag::new(&d, vec![vec![span(2, &[&[0, 1]])], vec![Subspace::full(2)]]).map_err(err)?;
    if good.stratum_membership(&f2).map_err(err)?.is_some() {
        return Err("flag span(e2): membership should fail".into());
    }
    let triv = good.stratum_membership(&GradedFlag::trivial(&d)).map_err(err)?;
    if triv.map(|s| (s.v, s.vt)) != Some((vec![w(&[1])], vec![w(&[0])])) {
        return Err("trivial flag: expected v=(1), vt=(0)".into());
    }
    // a nonzero 2-cycle on A2 is not nilpotent
    let two_cycle = AdhmDatum::new(
        diagram("A2"),
        w(&[0, 0]),
        w(&[1, 1]),
        vec![Matrix::from_i64(&[&[1]]), Matrix::from_i64(&[&[1]])],
        vec![Matrix::zeros(1, 0), Matrix::zeros(1, 0)],
        vec![Matrix::zeros(0, 1), Matrix::zeros(0, 1)],
    )
    .map_err(err)?;
    if two_cycle.is_nilpotent() {
        return Err("2-cycle reported nilpotent".into());
    }
    // one-vertex dictionary: rank(qp) = dim V for stable, *-stable data
    let t = good.q(0).mul(good.p(0));
    if t.rank() != 1 || !t.mul(&t).is_zero() {
        return Err("t = qp should have rank 1 and square zero".into());
    }
    Ok(())
}

fn c10_adhm(opts: &SelftestOptions) -> Outcome {
    adhm_examples()?;
    let mut rng = rng_for(opts, 10);
    let mut nontrivial = 0;
    for case in 0..100 {
        let g = diagram(if case % 2 == 0 { "A2" } else { "A3" });
        let r = g.rank();
        let v = random_vec(&mut rng, r, 2);
        let datum = random_preprojective(g.clone(), Weight::zero(r), v.clone(), &mut rng).map_err(err)?;
        if !datum.check_preprojective().holds {
            return Err(format!("case {case}: generated datum violates the equation"));
        }
        if !datum.is_nilpotent() {
            return Err(format!("case {case}: preprojective datum on {g} with v={v} is not nilpotent"));
        }
        if (0..g.arrows().len()).any(|h| !datum.x(h).is_zero()) {
            nontrivial += 1;
        }
        // framed data: the equation and the stratum telescoping
        let d = random_vec(&mut rng, r, 2);
        let framed = random_preprojective(g.clone(), d.clone(), v.clone(), &mut rng).map_err(err)?;
        if !framed.check_preprojective().holds {
            return Err(format!("case {case}: framed datum violates the equation"));
        }
        if framed.is_stable() {
            if let Some(s) = framed.stratum_membership(&GradedFlag::trivial(&d)).map_err(err)? {
                let total = s.v.iter().chain(&s.vt).fold(Weight::zero(r), |a, w| &a + w);
                if total != v {
                    return Err(format!("case {case}: stratum dimensions sum to {total}, not {v}"));
                }
            }
        }
    }
    Ok(format!("examples reproduced; 100 random data nilpotent ({nontrivial} with x != 0)"))
}

/// Highest weights of a left-nested tensor product, two ways: by the
/// highest-weight recursion and by scanning the built product.
pub fn cross_check_multiset(cache: &mut HighestWeightCache, factors: &[Weight]) -> Result<bool> {
    let fast = highest_weight_multiset(cache, factors)?;
    let t = tensor_of_highest(cache, factors)?;
    let mut slow: BTreeMap<Weight, u64> = BTreeMap::new();
    for v in t.highest_vertices() {
        *slow.entry(t.weight(v)).or_insert(0) += 1;
    }
    Ok(fast == slow)
}
