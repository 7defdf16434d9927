//! Simply-laced Dynkin diagrams, weights in fundamental-weight coordinates,
//! the Cartan matrix `A`, the symmetric matrix `X = 2·Id − A`, and the
//! doubled (oriented) edge set used by the quiver modules.
//!
//! Node numbering:
//! * `A_n`: path `0 - 1 - … - (n−1)`.
//! * `D_n`: path `0 - … - (n−3)`, with `n−2` and `n−1` both attached to `n−3`.
//! * `E_n`: Bourbaki layout. Chain `0 - 2 - 3 - … - (n−1)` with `1` attached to `3`.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

/// An integer vector indexed by diagram vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i] = 1;
        Weight(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    /// Coordinates at the given positions, in order.
    pub fn restrict(&self, positions: &[usize]) -> Weight {
        Weight(positions.iter().map(|&p| self.0[p]).collect())
    }

    pub fn sum_coords(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl From<&[i64]> for Weight {
    fn from(v: &[i64]) -> Self {
        Weight(v.to_vec())
    }
}

impl Index<usize> for Weight {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.len(), rhs.len(), "weight length mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.len(), rhs.len(), "weight length mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated integers, e.g. `1,0,-2`. The empty string is the rank-0 weight.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Weight(Vec::new()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad weight coordinate {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

/// A weight of the extended algebra: the pair `(v, u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GPrimeWeight {
    pub first: Weight,
    pub second: Weight,
}

impl GPrimeWeight {
    /// `u ≥ 0` and `v − u ≥ 0` coordinatewise.
    pub fn is_integrable(&self) -> bool {
        self.second.is_nonnegative() && (&self.first - &self.second).is_nonnegative()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first.is_nonnegative() && self.second.is_nonnegative()
    }
}

/// One orientation of an edge: a map from `V_tail` to `V_head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    /// `Out(h)`.
    pub tail: usize,
    /// `In(h)`.
    pub head: usize,
}

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// A simply-laced Dynkin diagram (possibly disconnected, possibly empty when
/// produced as a Levi subdiagram).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinDiagram {
    name: String,
    family: Option<Family>,
    rank: usize,
    edges: Vec<(usize, usize)>,
    arrows: Vec<Arrow>,
    cartan: IntMatrix,
    x: IntMatrix,
}

/// Standard diagram of the given family and rank.
pub fn dynkin(family: Family, rank: usize) -> Result<DynkinDiagram> {
    let edges: Vec<(usize, usize)> = match family {
        Family::A if rank >= 1 => (0..rank - 1).map(|i| (i, i + 1)).collect(),
        Family::D if rank >= 4 => {
            let mut e: Vec<_> = (0..rank - 2).map(|i| (i, i + 1)).collect();
            e.push((rank - 3, rank - 1));
            e
        }
        Family::E if (6..=8).contains(&rank) => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..rank - 1).map(|i| (i, i + 1)));
            e
        }
        _ => {
            return Err(Error::InvalidDiagram(format!(
                "{family:?}{rank} is not a valid ADE diagram"
            )))
        }
    };
    let mut d = DynkinDiagram::from_edges(rank, &edges)?;
    d.family = Some(family);
    d.name = format!("{family:?}{rank}");
    Ok(d)
}

impl FromStr for DynkinDiagram {
    type Err = Error;

    /// Parses names like `A3`, `D5`, `E8`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::InvalidDiagram(format!("unknown diagram {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidDiagram(format!("unknown diagram {s:?}")))?;
        dynkin(family, rank)
    }
}

impl DynkinDiagram {
    /// Diagram on `rank` vertices with the given unordered edges.
    pub fn from_edges(rank: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= rank || b >= rank || a == b {
                return Err(Error::InvalidDiagram(format!("bad edge ({a},{b})")));
            }
            let e = (a.min(b), a.max(b));
            if norm.contains(&e) {
                return Err(Error::InvalidDiagram(format!("duplicate edge ({a},{b})")));
            }
            norm.push(e);
        }
        norm.sort_unstable();
        let mut cartan = IntMatrix::zeros(rank);
        let mut x = IntMatrix::zeros(rank);
        for i in 0..rank {
            cartan.set(i, i, 2);
        }
        let mut arrows = Vec::with_capacity(2 * norm.len());
        for &(a, b) in &norm {
            cartan.set(a, b, -1);
            cartan.set(b, a, -1);
            x.set(a, b, 1);
            x.set(b, a, 1);
            arrows.push(Arrow { tail: a, head: b });
            arrows.push(Arrow { tail: b, head: a });
        }
        Ok(DynkinDiagram {
            name: format!("Q{rank}{norm:?}"),
            family: None,
            rank,
            edges: norm,
            arrows,
            cartan,
            x,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The doubled edge set `H`. Arrow `2k` runs from the lower to the higher
    /// endpoint of edge `k`; arrow `2k+1` is its reverse.
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Index of the reversed arrow `h̄`.
    pub fn reverse(&self, h: usize) -> usize {
        h ^ 1
    }

    /// `ε(h)`: `+1` on arrows from lower to higher index, `−1` on the reverse.
    pub fn orientation_sign(&self, h: usize) -> i64 {
        if h.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn x_matrix(&self) -> &IntMatrix {
        &self.x
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == i || b == i).count()
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: w.len(),
            });
        }
        Ok(())
    }

    pub fn check_vertex(&self, i: usize) -> Result<()> {
        if i >= self.rank {
            return Err(Error::VertexOutOfRange {
                vertex: i,
                rank: self.rank,
            });
        }
        Ok(())
    }

    /// Column `i` of `A`: the simple root in fundamental-weight coordinates.
    pub fn simple_root(&self, i: usize) -> Result<Weight> {
        self.check_vertex(i)?;
        Ok(Weight(self.cartan.column(i)))
    }

    /// `s_i λ = λ − λ_i · (A i)`.
    pub fn weyl_reflect(&self, i: usize, w: &Weight) -> Result<Weight> {
        self.check_vertex(i)?;
        self.check_weight(w)?;
        let li = w[i];
        Ok(Weight(
            (0..self.rank)
                .map(|j| w[j] - li * self.cartan.get(j, i))
                .collect(),
        ))
    }

    pub fn apply_x(&self, v: &Weight) -> Result<Weight> {
        self.check_weight(v)?;
        Ok(Weight(self.x.mul_vec(&v.0)))
    }

    pub fn apply_cartan(&self, v: &Weight) -> Result<Weight> {
        self.check_weight(v)?;
        Ok(Weight(self.cartan.mul_vec(&v.0)))
    }

    /// Solve `A v = rhs` exactly; `None` if the solution is not integral.
    pub fn solve_cartan(&self, rhs: &Weight) -> Result<Option<Weight>> {
        self.check_weight(rhs)?;
        if self.rank == 0 {
            return Ok(Some(Weight(Vec::new())));
        }
        let a = Matrix::from_fn(self.rank, self.rank, |i, j| {
            BigRational::from_integer(self.cartan.get(i, j).into())
        });
        let b: Vec<BigRational> = rhs
            .0
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        let sol = a
            .solve(&b)
            .ok_or_else(|| Error::InvalidDiagram("singular Cartan matrix".into()))?;
        let mut out = Vec::with_capacity(self.rank);
        for s in sol {
            if !s.is_integer() {
                return Ok(None);
            }
            match s.to_integer().to_i64() {
                Some(v) => out.push(v),
                None => return Ok(None),
            }
        }
        Ok(Some(Weight(out)))
    }

    /// Full subdiagram on `subset` (sorted ascending, no duplicates). Vertex `k`
    /// of the result corresponds to `subset[k]`.
    pub fn subdiagram(&self, subset: &[usize]) -> Result<DynkinDiagram> {
        validate_subset(self.rank, subset)?;
        let pos = |v: usize| subset.iter().position(|&s| s == v);
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| Some((pos(a)?, pos(b)?)))
            .collect();
        let mut d = DynkinDiagram::from_edges(subset.len(), &edges)?;
        d.name = format!("{}|{:?}", self.name, subset);
        Ok(d)
    }

    /// Positive roots in simple-root coordinates.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut roots: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        let mut k = 0;
        while k < roots.len() {
            let beta = roots[k].clone();
            let pairing = self.cartan.mul_vec(&beta);
            for i in 0..n {
                let mut r = beta.clone();
                r[i] -= pairing[i];
                if r.iter().all(|&c| c >= 0) && r.iter().any(|&c| c > 0) && !roots.contains(&r) {
                    roots.push(r);
                }
            }
            k += 1;
        }
        roots
    }

    /// `dim L(λ)` by the Weyl dimension formula; `None` if it overflows `u64`.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<Option<u64>> {
        self.check_weight(lambda)?;
        if !lambda.is_nonnegative() {
            return Err(Error::NotDominant(lambda.clone()));
        }
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for beta in self.positive_roots() {
            let top: i64 = beta.iter().zip(&lambda.0).map(|(b, l)| b * (l + 1)).sum();
            let bottom: i64 = beta.iter().sum();
            num *= BigUint::from(top as u64);
            den *= BigUint::from(bottom as u64);
        }
        debug_assert!((&num % &den).is_zero());
        Ok((num / den).to_u64())
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

pub(crate) fn validate_subset(rank: usize, subset: &[usize]) -> Result<()> {
    for w in subset.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidSubset(format!(
                "{subset:?} must be strictly increasing"
            )));
        }
    }
    if let Some(&bad) = subset.iter().find(|&&s| s >= rank) {
        return Err(Error::InvalidSubset(format!(
            "vertex {bad} out of range for rank {rank}"
        )));
    }
    Ok(())
}

/// `⟨v, u⟩ = Σ v_i u_i`.
pub fn pairing(v: &Weight, u: &Weight) -> Result<i64> {
    if v.len() != u.len() {
        return Err(Error::RankMismatch {
            expected: v.len(),
            found: u.len(),
        });
    }
    Ok(v.0.iter().zip(&u.0).map(|(a, b)| a * b).sum())
}

/// All coordinates non-negative.
pub fn is_dominant(w: &Weight) -> bool {
    w.is_nonnegative()
}
