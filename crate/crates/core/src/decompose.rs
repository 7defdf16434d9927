//! Splitting normal crystals into highest-weight summands, tensor
//! multiplicities, and restriction to Levi subdiagrams.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::crystal::CrystalGraph;
use crate::error::{Error, Result};
use crate::lspath::HighestWeightCache;
use crate::par;
use crate::roots::{validate_subset, DynkinDiagram, Weight};

/// One connected summand of a decomposed crystal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandInstance {
    pub weight: Weight,
    /// The unique source vertex of the component.
    pub source: u32,
    /// `(vertex of the input, vertex of B(weight))` pairs covering the component.
    pub embedding: Vec<(u32, u32)>,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub diagram: Arc<DynkinDiagram>,
    /// Highest weight ↦ multiplicity.
    pub summands: BTreeMap<Weight, usize>,
    /// Vertex ↦ instance id.
    pub assignment: Vec<u32>,
    /// Instances in order of their smallest vertex id.
    pub instances: Vec<SummandInstance>,
}

impl Decomposition {
    pub fn total_multiplicity(&self) -> usize {
        self.summands.values().sum()
    }
}

/// Vertices with every `e_i` undefined.
pub fn highest_vertices(c: &CrystalGraph) -> Vec<u32> {
    c.highest_vertices()
}

pub fn decompose(c: &CrystalGraph) -> Result<Decomposition> {
    let mut cache = HighestWeightCache::new(c.diagram_arc().clone());
    decompose_with_cache(c, &mut cache)
}

/// Decompose, reusing highest-weight crystals from `cache` (which must be for
/// the same diagram).
pub fn decompose_with_cache(
    c: &CrystalGraph,
    cache: &mut HighestWeightCache,
) -> Result<Decomposition> {
    if **cache.diagram() != *c.diagram() {
        return Err(Error::DiagramMismatch {
            left: c.diagram().name().to_string(),
            right: cache.diagram().name().to_string(),
        });
    }
    let comps = c.components();
    let mut roots = Vec::with_capacity(comps.len());
    for (k, comp) in comps.iter().enumerate() {
        let sources: Vec<u32> = comp.iter().copied().filter(|&v| c.is_highest(v)).collect();
        if sources.len() != 1 {
            return Err(Error::SourceCount {
                component: k,
                sources: sources.len(),
            });
        }
        let w = c.weight(sources[0]);
        if !w.is_nonnegative() {
            return Err(Error::NotHighestWeight {
                component: k,
                weight: w,
            });
        }
        roots.push((sources[0], w));
    }
    let weights: Vec<Weight> = roots.iter().map(|(_, w)| w.clone()).collect();
    cache.prefetch(&weights)?;
    let targets: Vec<Arc<CrystalGraph>> = weights
        .iter()
        .map(|w| cache.get(w))
        .collect::<Result<_>>()?;

    let jobs: Vec<usize> = (0..comps.len()).collect();
    let matched = par::map_slice(&jobs, |&k| {
        let (root, _) = &roots[k];
        let b = &targets[k];
        c.match_from(*root, b, 0)
            .filter(|pairs| pairs.len() == comps[k].len() && pairs.len() == b.cardinality())
    });

    let mut assignment = vec![u32::MAX; c.cardinality()];
    let mut instances = Vec::with_capacity(comps.len());
    let mut summands = BTreeMap::new();
    for (k, m) in matched.into_iter().enumerate() {
        let (root, w) = &roots[k];
        let pairs = m.ok_or_else(|| Error::NotHighestWeight {
            component: k,
            weight: w.clone(),
        })?;
        for &(v, _) in &pairs {
            assignment[v as usize] = k as u32;
        }
        *summands.entry(w.clone()).or_insert(0) += 1;
        instances.push(SummandInstance {
            weight: w.clone(),
            source: *root,
            embedding: pairs,
        });
    }
    Ok(Decomposition {
        diagram: c.diagram_arc().clone(),
        summands,
        assignment,
        instances,
    })
}

fn check_dominant(diagram: &DynkinDiagram, w: &Weight) -> Result<()> {
    diagram.check_weight(w)?;
    if !w.is_nonnegative() {
        return Err(Error::NotDominant(w.clone()));
    }
    Ok(())
}

/// Highest weights (with multiplicity) of the left-nested tensor product
/// `B(μ¹) ⊗ … ⊗ B(μⁿ)`, without building the product.
///
/// A vertex `(x, c)` of `X ⊗ B` is highest iff `x` is highest in `X` and
/// `ε_i(c) ≤ wt(x)_i` for every `i`, so only the multiset of highest weights
/// of `X` has to be carried along.
pub fn highest_weight_multiset(
    cache: &mut HighestWeightCache,
    factors: &[Weight],
) -> Result<BTreeMap<Weight, u64>> {
    let diagram = cache.diagram().clone();
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::Inconsistent("at least one tensor factor is required".into()))?;
    for f in factors {
        check_dominant(&diagram, f)?;
    }
    cache.prefetch(factors)?;
    let rank = diagram.rank();
    let mut current: BTreeMap<Weight, u64> = BTreeMap::new();
    current.insert(first.clone(), 1);
    for mu in rest {
        let b = cache.get(mu)?;
        let entries: Vec<(Weight, u64)> = current.into_iter().collect();
        let partial = par::map_slice(&entries, |(lambda, mult)| {
            let mut out: Vec<(Weight, u64)> = Vec::new();
            for v in b.vertices() {
                if (0..rank).all(|i| i64::from(b.eps_raw(v, i)) <= lambda[i]) {
                    let w: Vec<i64> = lambda
                        .as_slice()
                        .iter()
                        .zip(b.weight_slice(v))
                        .map(|(x, y)| x + y)
                        .collect();
                    out.push((Weight(w), *mult));
                }
            }
            out
        });
        current = BTreeMap::new();
        for (w, m) in partial.into_iter().flatten() {
            *current.entry(w).or_insert(0) += m;
        }
    }
    Ok(current)
}

/// Number of highest vertices of weight `target` in `B(μ¹) ⊗ … ⊗ B(μⁿ)`.
pub fn multiplicity(
    cache: &mut HighestWeightCache,
    target: &Weight,
    factors: &[Weight],
) -> Result<u64> {
    check_dominant(cache.diagram(), target)?;
    let hw = highest_weight_multiset(cache, factors)?;
    Ok(hw.get(target).copied().unwrap_or(0))
}

/// Same count, obtained by building the full tensor product and scanning it.
pub fn multiplicity_by_tensor(
    cache: &mut HighestWeightCache,
    target: &Weight,
    factors: &[Weight],
) -> Result<u64> {
    check_dominant(cache.diagram(), target)?;
    let product = tensor_of_highest(cache, factors)?;
    Ok(product
        .highest_vertices()
        .into_iter()
        .filter(|&v| product.weight_slice(v) == target.as_slice())
        .count() as u64)
}

/// Left-nested `B(μ¹) ⊗ … ⊗ B(μⁿ)`.
pub fn tensor_of_highest(cache: &mut HighestWeightCache, factors: &[Weight]) -> Result<CrystalGraph> {
    if factors.is_empty() {
        return Err(Error::Inconsistent("at least one tensor factor is required".into()));
    }
    for f in factors {
        check_dominant(cache.diagram(), f)?;
    }
    cache.prefetch(factors)?;
    let parts: Vec<Arc<CrystalGraph>> = factors.iter().map(|f| cache.get(f)).collect::<Result<_>>()?;
    let cap = cache.cap();
    let size = parts
        .iter()
        .try_fold(1usize, |acc, p| acc.checked_mul(p.cardinality()));
    if size.is_none_or(|s| s > cap) {
        return Err(Error::VertexCapExceeded { cap });
    }
    let mut acc = (*parts[0]).clone();
    for p in &parts[1..] {
        acc = acc.tensor(p)?;
    }
    Ok(acc)
}

/// Restrict to the colors in `subset` (strictly increasing vertex list) and
/// decompose over the induced subdiagram.
pub fn branch(c: &CrystalGraph, subset: &[usize]) -> Result<Decomposition> {
    validate_subset(c.rank(), subset)?;
    let sub = Arc::new(c.diagram().subdiagram(subset)?);
    let restricted = c.restrict(subset, sub);
    decompose(&restricted)
}

/// `(δ(d, v), ρ(v))` for the Levi subdiagram on `subset`:
/// `δ_i = d_i + Σ v_{In(h)}` over arrows `h` with `Out(h) = i ∈ subset` and
/// `In(h) ∉ subset`; `ρ` restricts coordinates.
pub fn levi_dicts(
    diagram: &DynkinDiagram,
    d: &Weight,
    v: &Weight,
    subset: &[usize],
) -> Result<(Weight, Weight)> {
    diagram.check_weight(d)?;
    diagram.check_weight(v)?;
    validate_subset(diagram.rank(), subset)?;
    let inside = |x: usize| subset.binary_search(&x).is_ok();
    let mut delta = d.restrict(subset);
    for a in diagram.arrows() {
        if inside(a.tail) && !inside(a.head) {
            let k = subset.binary_search(&a.tail).expect("tail is inside");
            delta.0[k] += v[a.head];
        }
    }
    Ok((delta, v.restrict(subset)))
}
