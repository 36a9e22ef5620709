//! Explicit hypergraph families: extremal examples, tight examples for the
//! girth bound, and forbidden configurations.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("{kind}: {reason}")]
    Precondition { kind: &'static str, reason: String },
    #[error("{kind}: missing parameter --{name}")]
    MissingParameter { kind: &'static str, name: &'static str },
}

fn precondition(
    kind: &'static str,
    ok: bool,
    reason: impl FnOnce() -> String,
) -> Result<(), ConstructionError> {
    if ok {
        Ok(())
    } else {
        Err(ConstructionError::Precondition { kind, reason: reason() })
    }
}

/// `ceil(log2 x)` for `x >= 1`.
pub fn ceil_log2(x: u64) -> u32 {
    assert!(x >= 1);
    u64::BITS - (x - 1).leading_zeros()
}

/// `K_{floor(n/2), ceil(n/2)}` with parts `0..n/2` and `n/2..n`.
pub fn complete_bipartite(n: usize) -> Result<Hypergraph, ConstructionError> {
    precondition("complete-bipartite", n >= 2, || format!("n must be at least 2, got {n}"))?;
    let half = (n / 2) as u32;
    let edges = (0..half).flat_map(|a| (half..n as u32).map(move |b| vec![a, b])).collect();
    Ok(Hypergraph::new(n, 2, edges).expect("valid by construction"))
}

/// Part sizes `floor((n + i - 1) / r)` for `i = 1..=r`.
pub fn balanced_part_sizes(n: usize, r: usize) -> Vec<usize> {
    (1..=r).map(|i| (n + i - 1) / r).collect()
}

/// Complete `r`-partite `r`-uniform hypergraph on contiguous, balanced parts.
/// Edges are all transversals, in lexicographic order.
pub fn balanced_multipartite(n: usize, r: usize) -> Result<Hypergraph, ConstructionError> {
    const KIND: &str = "balanced-multipartite";
    precondition(KIND, r >= 2, || format!("r must be at least 2, got {r}"))?;
    precondition(KIND, n >= r, || format!("n = {n} is smaller than r = {r}"))?;
    let sizes = balanced_part_sizes(n, r);
    let mut starts = Vec::with_capacity(r);
    let mut acc = 0u32;
    for &s in &sizes {
        starts.push(acc);
        acc += s as u32;
    }
    let total: usize = sizes.iter().product();
    let mut edges = Vec::with_capacity(total);
    let mut digits = vec![0usize; r];
    loop {
        edges.push(digits.iter().zip(&starts).map(|(&d, &s)| s + d as u32).collect());
        // Odometer, last part fastest.
        let mut pos = r;
        loop {
            if pos == 0 {
                return Ok(Hypergraph::new(n, r, edges).expect("valid by construction"));
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < sizes[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Two hubs (vertices 0 and 1) joined by three internally disjoint paths of
/// length `k / 3`: `k` edges on `k - 1` vertices with girth `2k / 3`.
pub fn theta_graph(k: usize) -> Result<Hypergraph, ConstructionError> {
    precondition("theta", k >= 6 && k % 3 == 0, || {
        format!("k must be a multiple of 3 and at least 6, got {k}")
    })?;
    let len = k / 3;
    let mut edges = Vec::with_capacity(k);
    let mut next = 2u32;
    for _ in 0..3 {
        let mut prev = 0u32;
        for _ in 0..len - 1 {
            edges.push(sorted_pair(prev, next));
            prev = next;
            next += 1;
        }
        edges.push(sorted_pair(prev, 1));
    }
    Ok(Hypergraph::new(k - 1, 2, edges).expect("valid by construction"))
}

fn sorted_pair(a: u32, b: u32) -> Vec<u32> {
    if a < b {
        vec![a, b]
    } else {
        vec![b, a]
    }
}

pub fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Canonical representatives of the 1-dimensional subspaces of `GF(q)^3`:
/// the first nonzero coordinate is 1. Listed in lexicographic order.
pub fn projective_points(q: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::with_capacity((q * q + q + 1) as usize);
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Point-line incidence graph of the projective plane over `GF(q)`, `q` prime.
///
/// Points are vertices `0..N`, lines `N..2N` with `N = q^2 + q + 1`; a line
/// is the kernel of the functional with the same representative, so point
/// `p` lies on line `l` when their dot product vanishes mod `q`.
pub fn pg2_incidence(q: u64) -> Result<Hypergraph, ConstructionError> {
    // TODO: prime powers need GF(p^e) arithmetic; only prime fields are built.
    precondition("pg2-incidence", is_prime(q), || format!("q must be prime, got {q}"))?;
    let points = projective_points(q);
    let count = points.len() as u32;
    let mut edges = Vec::with_capacity(points.len() * (q as usize + 1));
    for (pi, p) in points.iter().enumerate() {
        for (li, l) in points.iter().enumerate() {
            let dot = (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q;
            if dot == 0 {
                edges.push(vec![pi as u32, count + li as u32]);
            }
        }
    }
    Ok(Hypergraph::new(2 * count as usize, 2, edges).expect("valid by construction"))
}

/// Vertex and edge bookkeeping for [`erdos_witness`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessShape {
    /// `ceil(log2 u)`, the number of free coordinates.
    pub free: usize,
    /// `u - v - 2 ceil(log2 u)`, the number of fixed coordinates.
    pub fixed: usize,
    /// Uniformity `u - v - ceil(log2 u)`.
    pub r: usize,
    pub vertices: usize,
    pub edges: usize,
}

pub fn witness_shape(u: usize, v: usize) -> Result<WitnessShape, ConstructionError> {
    const KIND: &str = "erdos-witness";
    precondition(KIND, u >= 7, || format!("u must be at least 7, got {u}"))?;
    let free = ceil_log2(u as u64) as usize;
    precondition(KIND, v >= 1 && v + 2 * free <= u, || {
        format!("v must lie in [1, {}], got {v}", u - 2 * free)
    })?;
    let fixed = u - v - 2 * free;
    Ok(WitnessShape { free, fixed, r: fixed + free, vertices: u - v, edges: 1 << free })
}

/// The sub-hypergraph of the complete `r`-partite hypergraph with parts
/// `{x_i, y_i}` that keeps `x_1..x_a` fixed and lets the last `ceil(log2 u)`
/// coordinates range over both vertices, with `r = u - v - ceil(log2 u)` and
/// `a = u - v - 2 ceil(log2 u)`.
///
/// Vertex `i` is `x_{i+1}` for `i < r`; vertex `r + j` is `y_{a+j+1}`. It has
/// `u - v` vertices and `2^ceil(log2 u) >= u` edges, so it violates the batch
/// condition for every `k >= u`.
pub fn erdos_witness(u: usize, v: usize) -> Result<Hypergraph, ConstructionError> {
    let shape = witness_shape(u, v)?;
    let mut edges = Vec::with_capacity(shape.edges);
    for mask in 0..shape.edges {
        let mut edge: Vec<u32> = (0..shape.fixed as u32).collect();
        let mut ys = Vec::new();
        for j in 0..shape.free {
            // Most significant bit is the first free coordinate.
            if mask >> (shape.free - 1 - j) & 1 == 1 {
                ys.push((shape.r + j) as u32);
            } else {
                edge.push((shape.fixed + j) as u32);
            }
        }
        edge.extend(ys);
        edges.push(edge);
    }
    Ok(Hypergraph::new(shape.vertices, shape.r, edges).expect("valid by construction"))
}

fn for_each_subset(n: u32, r: usize, start: u32, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if cur.len() == r {
        f(cur);
        return;
    }
    for v in start..n {
        if (n - v) as usize + cur.len() < r {
            break;
        }
        cur.push(v);
        for_each_subset(n, r, v + 1, cur, f);
        cur.pop();
    }
}

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn r_subsets(n: usize, r: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for_each_subset(n as u32, r, 0, &mut Vec::with_capacity(r), &mut |s| out.push(s.to_vec()));
    out
}

/// Complete `r`-uniform hypergraph on `n` vertices with every edge repeated
/// `copies` times (copies adjacent).
pub fn complete_uniform_multicopy(
    n: usize,
    r: usize,
    copies: usize,
) -> Result<Hypergraph, ConstructionError> {
    const KIND: &str = "complete-uniform-multicopy";
    precondition(KIND, r >= 1 && n > r, || format!("need n > r >= 1, got n = {n}, r = {r}"))?;
    precondition(KIND, copies >= 1, || "copies must be at least 1".into())?;
    let edges = r_subsets(n, r).into_iter().flat_map(|e| std::iter::repeat_n(e, copies)).collect();
    Ok(Hypergraph::new(n, r, edges).expect("valid by construction"))
}

/// Largest product of `r` positive integers summing to `k - 1`, by
/// enumerating every composition.
pub fn max_profile_product(k: usize, r: usize) -> Result<u64, ConstructionError> {
    const KIND: &str = "max-profile-product";
    precondition(KIND, k >= 4, || format!("k must be at least 4, got {k}"))?;
    precondition(KIND, r >= 2, || format!("r must be at least 2, got {r}"))?;
    precondition(KIND, r < k, || format!("r = {r} must be smaller than k = {k}"))?;
    fn best(remaining: usize, parts: usize) -> u64 {
        if parts == 1 {
            return remaining as u64;
        }
        (1..=remaining - (parts - 1))
            .map(|first| first as u64 * best(remaining - first, parts - 1))
            .max()
            .unwrap_or(0)
    }
    Ok(best(k - 1, r))
}

/// Which family a [`ConstructionSpec`] names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionKind {
    CompleteBipartite,
    BalancedMultipartite,
    Theta,
    Pg2Incidence,
    ErdosWitness,
    CompleteUniformMulticopy,
}

impl ConstructionKind {
    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::CompleteBipartite => "complete-bipartite",
            ConstructionKind::BalancedMultipartite => "balanced-multipartite",
            ConstructionKind::Theta => "theta",
            ConstructionKind::Pg2Incidence => "pg2-incidence",
            ConstructionKind::ErdosWitness => "erdos-witness",
            ConstructionKind::CompleteUniformMulticopy => "complete-uniform-multicopy",
        }
    }
}

/// A construction name plus its integer parameters (`n`, `r`, `k`, `q`, `u`,
/// `v`, `copies`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub kind: ConstructionKind,
    pub params: BTreeMap<&'static str, u64>,
}

impl ConstructionSpec {
    pub fn new(kind: ConstructionKind) -> Self {
        ConstructionSpec { kind, params: BTreeMap::new() }
    }

    pub fn with(mut self, name: &'static str, value: u64) -> Self {
        self.params.insert(name, value);
        self
    }

    fn get(&self, name: &'static str) -> Result<usize, ConstructionError> {
        self.params
            .get(name)
            .map(|&v| v as usize)
            .ok_or(ConstructionError::MissingParameter { kind: self.kind.name(), name })
    }

    pub fn build(&self) -> Result<Hypergraph, ConstructionError> {
        match self.kind {
            ConstructionKind::CompleteBipartite => complete_bipartite(self.get("n")?),
            ConstructionKind::BalancedMultipartite => balanced_multipartite(self.get("n")?, self.get("r")?),
            ConstructionKind::Theta => theta_graph(self.get("k")?),
            ConstructionKind::Pg2Incidence => pg2_incidence(self.get("q")? as u64),
            ConstructionKind::ErdosWitness => erdos_witness(self.get("u")?, self.get("v")?),
            ConstructionKind::CompleteUniformMulticopy => {
                complete_uniform_multicopy(self.get("n")?, self.get("r")?, self.get("copies")?)
            }
        }
    }
}
