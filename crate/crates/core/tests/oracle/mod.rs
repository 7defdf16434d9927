//! Test-side oracles that share no code with the library: Cartan data from a
//! hand-written edge list, positive roots by root strings, the Weyl dimension
//! formula, and explicit sl2 chain walks.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;

/// Edge list with the library's node numbering: `A` is a path, `D` attaches
/// the last node to node `n − 3`, `E` attaches node 1 to node 3.
pub fn edges(name: &str) -> (usize, Vec<(usize, usize)>) {
    let n: usize = name[1..].parse().unwrap();
    let e = match &name[..1] {
        "A" => (1..n).map(|i| (i - 1, i)).collect(),
        "D" => {
            let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
            e.push((n - 3, n - 1));
            e
        }
        "E" => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((3..n).map(|i| (i - 1, i)));
            e
        }
        _ => panic!("unknown family in {name}"),
    };
    (n, e)
}

pub fn adjacency(name: &str) -> Vec<Vec<i64>> {
    let (n, e) = edges(name);
    let mut x = vec![vec![0; n]; n];
    for (a, b) in e {
        x[a][b] += 1;
        x[b][a] += 1;
    }
    x
}

pub fn cartan(name: &str) -> Vec<Vec<i64>> {
    let mut c = adjacency(name);
    for (i, row) in c.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = if i == j { 2 } else { -*x };
        }
    }
    c
}

/// Positive roots in simple-root coordinates: in a simply-laced system,
/// `β + αᵢ` is a root exactly when `⟨β, αᵢ⟩ = −1`.
pub fn positive_roots(name: &str) -> Vec<Vec<i64>> {
    let c = cartan(name);
    let n = c.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut frontier = roots.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for b in &frontier {
            for i in 0..n {
                let pair: i64 = (0..n).map(|j| c[i][j] * b[j]).sum();
                if pair == -1 {
                    let mut up = b.clone();
                    up[i] += 1;
                    if !roots.contains(&up) {
                        roots.push(up.clone());
                        next.push(up);
                    }
                }
            }
        }
        frontier = next;
    }
    roots
}

/// `∏_β ⟨λ + ρ, β⟩ / ⟨ρ, β⟩` over positive roots `β = Σ cᵢ αᵢ`.
pub fn weyl_dim(name: &str, lambda: &[i64]) -> u64 {
    let mut acc = BigRational::from_integer(BigInt::from(1));
    for b in positive_roots(name) {
        let num: i64 = b.iter().zip(lambda).map(|(c, l)| c * (l + 1)).sum();
        let den: i64 = b.iter().sum();
        acc *= BigRational::new(BigInt::from(num), BigInt::from(den));
    }
    assert!(acc.is_integer());
    acc.to_integer().try_into().unwrap()
}

/// Highest weights of `B(m) ⊗ B(n)` over A1: `m + n − 2k`, `0 ≤ k ≤ min(m, n)`.
pub fn clebsch_gordan(m: i64, n: i64) -> Vec<i64> {
    (0..=m.min(n)).map(|k| m + n - 2 * k).collect()
}

/// Highest weight of the component of `(i, j)` in `B(m) ⊗ B(n)`, where `i`, `j`
/// count applications of `f` from the top of each chain. Walks `e` up the
/// tensor: it acts on the left factor iff `φ₁ ≥ ε₂`.
pub fn chain_component(m: i64, n: i64, mut i: i64, mut j: i64) -> i64 {
    loop {
        let (phi1, eps2) = (m - i, j);
        if phi1 >= eps2 {
            if i == 0 {
                return m + n - 2 * i - 2 * j;
            }
            i -= 1;
        } else {
            j -= 1;
        }
    }
}

/// `d − 2v + Xv` restricted to `subset`, computed from the adjacency matrix.
pub fn levi_lhs(name: &str, d: &[i64], v: &[i64], subset: &[usize]) -> Vec<i64> {
    let x = adjacency(name);
    subset
        .iter()
        .map(|&i| d[i] - 2 * v[i] + (0..d.len()).map(|j| x[i][j] * v[j]).sum::<i64>())
        .collect()
}

/// `δ − 2ρ + X′ρ` with `δᵢ = dᵢ + Σ_{j ∉ I′} xᵢⱼ vⱼ` and `ρ = v|_{I′}`.
pub fn levi_rhs(name: &str, d: &[i64], v: &[i64], subset: &[usize]) -> Vec<i64> {
    let x = adjacency(name);
    let outside: Vec<usize> = (0..d.len()).filter(|j| !subset.contains(j)).collect();
    subset
        .iter()
        .map(|&i| {
            let delta = d[i] + outside.iter().map(|&j| x[i][j] * v[j]).sum::<i64>();
            let xr: i64 = subset.iter().map(|&j| x[i][j] * v[j]).sum();
            delta - 2 * v[i] + xr
        })
        .collect()
}
