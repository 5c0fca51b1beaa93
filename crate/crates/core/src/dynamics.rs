//! French-DeGroot opinion dynamics with susceptibilities.
//!
//! Each individual mixes its own opinion with the opinions of others:
//! `y(k+1) = W y(k)` with `W = [γ] C + I - [γ]`, where `C` is a row-stochastic
//! relative-interaction matrix with zero diagonal and `γ_i ∈ (0, 1]` is
//! individual `i`'s susceptibility. For irreducible `C` the opinions reach
//! consensus on `ω^T y(0)`, so the left dominant eigenvector `ω` of `W` is the
//! social power allocation. It satisfies `ω_i ∝ c_i / γ_i`, where `c` is the
//! left dominant eigenvector (centrality) of `C`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::{Error, Result};
use crate::orderings::{ordering_sufficiency, permutation_condition, PermutationOrdering};
use crate::profile::{check_dim, Allocation, VarianceProfile, DEFAULT_TOL, SUM_TOL};

/// Largest column spread of `M^(2^k)` accepted as converged.
pub const POWER_TOL: f64 = 1e-12;

/// Number of squarings before giving up, i.e. powers up to `2^64`.
pub const MAX_SQUARINGS: usize = 64;

/// Denominators of the susceptibility estimator at or below this magnitude
/// make the entry unobservable.
pub const OBSERVABILITY_TOL: f64 = 1e-8;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(Error::NotSquare { n, len: data.len() });
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::NotSquare {
                    n,
                    len: rows.iter().map(Vec::len).sum(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::from_row_major(n, data)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_row_major(&self) -> &[f64] {
        &self.data
    }

    /// `M y`.
    pub fn mul_vec(&self, y: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(y).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `x^T M`.
    pub fn left_mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (i, &xi) in x.iter().enumerate() {
            for (o, &m) in out.iter_mut().zip(self.row(i)) {
                *o += xi * m;
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other[(k, j)];
                }
            }
        }
        Matrix { n, data }
    }

    /// `M^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Matrix {
        let mut result = Matrix::identity(self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn column_sums(&self) -> Vec<f64> {
        self.left_mul_vec(&vec![1.0; self.n])
    }

    /// `(1/n) Σ_j M_{ji}` for each column `i`.
    pub fn column_averages(&self) -> Vec<f64> {
        let n = self.n as f64;
        self.column_sums().into_iter().map(|s| s / n).collect()
    }

    fn check_entries(&self) -> Result<()> {
        for i in 0..self.n {
            for j in 0..self.n {
                let value = self[(i, j)];
                if !(value.is_finite() && value >= 0.0) {
                    return Err(Error::InvalidMatrixEntry {
                        row: i,
                        col: j,
                        value,
                    });
                }
            }
        }
        Ok(())
    }

    fn check_row_stochastic(&self) -> Result<()> {
        self.check_entries()?;
        for i in 0..self.n {
            let sum: f64 = self.row(i).iter().sum();
            if (sum - 1.0).abs() > SUM_TOL {
                return Err(Error::NotRowStochastic { row: i, sum });
            }
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

/// Sink strongly connected components of the graph with an edge `i -> j`
/// whenever `M_ij > 0` and `i != j`. Each component is sorted, and the list
/// is sorted by first member. A single component means `M` is irreducible.
pub fn sink_components(m: &Matrix) -> Vec<Vec<usize>> {
    let n = m.dim();
    let mut g = DiGraph::<(), ()>::with_capacity(n, n * n);
    for _ in 0..n {
        g.add_node(());
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && m[(i, j)] > 0.0 {
                g.add_edge(NodeIndex::new(i), NodeIndex::new(j), ());
            }
        }
    }
    let sccs = tarjan_scc(&g);
    let mut comp = vec![0usize; n];
    for (k, scc) in sccs.iter().enumerate() {
        for v in scc {
            comp[v.index()] = k;
        }
    }
    let mut sinks: Vec<Vec<usize>> = sccs
        .iter()
        .enumerate()
        .filter(|(k, scc)| {
            scc.iter().all(|v| {
                let i = v.index();
                (0..n).all(|j| i == j || m[(i, j)] <= 0.0 || comp[j] == *k)
            })
        })
        .map(|(_, scc)| {
            let mut members: Vec<usize> = scc.iter().map(|v| v.index()).collect();
            members.sort_unstable();
            members
        })
        .collect();
    sinks.sort();
    sinks
}

pub fn is_irreducible(m: &Matrix) -> bool {
    let sinks = sink_components(m);
    sinks.len() == 1 && sinks[0].len() == m.dim()
}

fn ensure_irreducible(m: &Matrix) -> Result<()> {
    if is_irreducible(m) {
        Ok(())
    } else {
        Err(Error::Reducible {
            sink_components: sink_components(m),
        })
    }
}

fn check_gamma(gamma: &[f64]) -> Result<()> {
    if let Some((index, &value)) = gamma
        .iter()
        .enumerate()
        .find(|(_, g)| !(g.is_finite() && **g > 0.0 && **g <= 1.0))
    {
        return Err(Error::InvalidSusceptibility { index, value });
    }
    if gamma.iter().all(|&g| g == 1.0) {
        return Err(Error::NoSelfWeight);
    }
    Ok(())
}

/// Relative interaction matrix `C`, susceptibilities `γ` and the influence
/// matrix `W = [γ] C + I - [γ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceNetwork {
    c: Matrix,
    gamma: Vec<f64>,
    w: Matrix,
}

impl InfluenceNetwork {
    /// Validates `C` (row-stochastic, zero diagonal) and `γ` (entries in
    /// `(0, 1]`, not all 1) and builds `W`.
    pub fn new(c: Matrix, gamma: Vec<f64>) -> Result<Self> {
        let n = c.dim();
        if n < 2 {
            return Err(Error::GroupTooSmall(n));
        }
        check_dim(n, gamma.len())?;
        c.check_row_stochastic()?;
        if let Some(i) = (0..n).find(|&i| c[(i, i)] != 0.0) {
            return Err(Error::NonzeroDiagonal(i));
        }
        check_gamma(&gamma)?;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = gamma[i] * c[(i, j)];
            }
            data[i * n + i] = 1.0 - gamma[i];
        }
        let w = Matrix { n, data };
        Ok(Self { c, gamma, w })
    }

    pub fn len(&self) -> usize {
        self.c.dim()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn w(&self) -> &Matrix {
        &self.w
    }

    pub fn is_irreducible(&self) -> bool {
        is_irreducible(&self.c)
    }
}

/// `y(0), y(1), ..., y(k)`.
pub fn simulate(net: &InfluenceNetwork, y0: &[f64], k: usize) -> Result<Vec<Vec<f64>>> {
    check_dim(net.len(), y0.len())?;
    let mut out = Vec::with_capacity(k + 1);
    out.push(y0.to_vec());
    for t in 0..k {
        let next = net.w.mul_vec(&out[t]);
        out.push(next);
    }
    Ok(out)
}

/// Left fixed point of a primitive row-stochastic matrix from the powers
/// `M^(2^k)`. The fixed point is a mixture of the rows of every power, so the
/// spread of each column bounds the error of the row average.
fn stationary_row(m: &Matrix) -> Result<Vec<f64>> {
    let n = m.dim();
    let mut p = m.clone();
    for _ in 0..=MAX_SQUARINGS {
        let spread = (0..n)
            .map(|j| {
                let col = (0..n).map(|i| p[(i, j)]);
                col.clone().fold(f64::MIN, f64::max) - col.fold(f64::MAX, f64::min)
            })
            .fold(0.0, f64::max);
        if spread <= POWER_TOL {
            let mut x = p.column_averages();
            let total: f64 = x.iter().sum();
            x.iter_mut().for_each(|v| *v /= total);
            return Ok(x);
        }
        p = p.mul(&p);
        for i in 0..n {
            let total: f64 = p.row(i).iter().sum();
            p.data[i * n..(i + 1) * n].iter_mut().for_each(|v| *v /= total);
        }
    }
    Err(Error::NoConvergence(MAX_SQUARINGS))
}

/// Social power: the left dominant eigenvector of `W` on the simplex, which
/// is also the limit of the column averages of `W^k`.
pub fn stationary_social_power(net: &InfluenceNetwork) -> Result<Allocation> {
    ensure_irreducible(&net.c)?;
    Allocation::normalized(stationary_row(&net.w)?)
}

/// Social power from centrality and susceptibility, `x_i ∝ c_i / γ_i`.
pub fn social_power_by_ratio(c: &CentralityVector, gamma: &[f64]) -> Result<Allocation> {
    check_dim(c.len(), gamma.len())?;
    check_gamma(gamma)?;
    Allocation::normalized(c.values().iter().zip(gamma).map(|(ci, g)| ci / g).collect())
}

/// Left dominant eigenvector of an irreducible row-stochastic matrix, on the
/// simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityVector {
    c: Vec<f64>,
}

impl CentralityVector {
    /// Accepts a strictly positive vector summing to 1.
    pub fn new(c: Vec<f64>) -> Result<Self> {
        let a = Allocation::new(c)?;
        if !a.is_interior() {
            let index = a.weights().iter().position(|&v| v <= 0.0).unwrap_or(0);
            return Err(Error::NegativeWeight {
                index,
                value: a[index],
            });
        }
        Ok(Self { c: a.into_inner() })
    }

    /// Uniform centrality of a democratic network.
    pub fn uniform(n: usize) -> Self {
        Self {
            c: vec![1.0 / n as f64; n],
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.c
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_uniform(&self, tol: f64) -> bool {
        let n = self.c.len() as f64;
        self.c.iter().all(|v| (v - 1.0 / n).abs() <= tol)
    }

    /// `η = Σ γ_i x_i`, the scale in `[γ] x = η c`.
    pub fn eta(gamma: &[f64], x: &Allocation) -> f64 {
        gamma.iter().zip(x.weights()).map(|(g, w)| g * w).sum()
    }
}

impl Index<usize> for CentralityVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.c[i]
    }
}

/// Centrality of an irreducible row-stochastic `C`. Iterates the lazy matrix
/// `(I + C) / 2`, which has the same fixed point and is aperiodic even when
/// `C` is not.
pub fn centrality(c: &Matrix) -> Result<CentralityVector> {
    c.check_row_stochastic()?;
    ensure_irreducible(c)?;
    let n = c.dim();
    let mut lazy = c.clone();
    lazy.data.iter_mut().for_each(|v| *v *= 0.5);
    for i in 0..n {
        lazy.data[i * n + i] += 0.5;
    }
    Ok(CentralityVector {
        c: stationary_row(&lazy)?,
    })
}

/// Equal-neighbour interaction matrix `C = [M 1]^{-1} M` of a connected
/// undirected graph with 0/1 adjacency matrix `M`.
pub fn equal_neighbor(m: &Matrix) -> Result<Matrix> {
    let n = m.dim();
    if n < 2 {
        return Err(Error::GroupTooSmall(n));
    }
    for i in 0..n {
        if m[(i, i)] != 0.0 {
            return Err(Error::NonzeroDiagonal(i));
        }
        for j in 0..n {
            let v = m[(i, j)];
            if !(v == 0.0 || v == 1.0) || v != m[(j, i)] {
                return Err(Error::InvalidAdjacency { row: i, col: j });
            }
        }
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if m[(i, j)] == 1.0 && !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    if seen.contains(&false) {
        return Err(Error::Disconnected);
    }
    let mut data = m.data.clone();
    for i in 0..n {
        let degree: f64 = m.row(i).iter().sum();
        data[i * n..(i + 1) * n].iter_mut().for_each(|v| *v /= degree);
    }
    Ok(Matrix { n, data })
}

/// One entry of the susceptibility estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SusceptibilityEstimate {
    Observed(f64),
    /// The opinion already equals its neighbourhood average, so the step
    /// carries no information about `γ_i`.
    Unobservable,
}

impl SusceptibilityEstimate {
    pub fn value(self) -> Option<f64> {
        match self {
            Self::Observed(v) => Some(v),
            Self::Unobservable => None,
        }
    }
}

/// `γ_i = (y_i(k+1) - y_i(k)) / (Σ_j C_ij y_j(k) - y_i(k))`.
pub fn estimate_susceptibility(c: &Matrix, y_k: &[f64], y_k1: &[f64]) -> Result<Vec<SusceptibilityEstimate>> {
    check_dim(c.dim(), y_k.len())?;
    check_dim(c.dim(), y_k1.len())?;
    let neighbourhood = c.mul_vec(y_k);
    Ok((0..c.dim())
        .map(|i| {
            let den = neighbourhood[i] - y_k[i];
            if den.abs() <= OBSERVABILITY_TOL {
                SusceptibilityEstimate::Unobservable
            } else {
                SusceptibilityEstimate::Observed((y_k1[i] - y_k[i]) / den)
            }
        })
        .collect())
}

/// Individuals with variances and susceptibilities.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    sigma2: VarianceProfile,
    gamma: Vec<f64>,
}

impl Population {
    pub fn new(sigma2: VarianceProfile, gamma: Vec<f64>) -> Result<Self> {
        check_dim(sigma2.len(), gamma.len())?;
        check_gamma(&gamma)?;
        Ok(Self { sigma2, gamma })
    }

    pub fn sigma2(&self) -> &VarianceProfile {
        &self.sigma2
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// How well susceptibility tracks inaccuracy, from weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PapGrade {
    NotPap,
    /// Less accurate individuals are at least as susceptible, and
    /// susceptibilities are uniform only if variances are.
    Pap,
    /// PAP, and `γ_j σ²_i >= γ_i σ²_j` whenever `σ²_i >= σ²_j`.
    StrongPap,
    /// `γ_i / γ_j = σ²_i / σ²_j` for all pairs.
    MaximalPap,
}

fn scale(a: f64, b: f64) -> f64 {
    a.abs().max(b.abs())
}

fn le(a: f64, b: f64) -> bool {
    a <= b + DEFAULT_TOL * scale(a, b)
}

fn lt(a: f64, b: f64) -> bool {
    a < b - DEFAULT_TOL * scale(a, b)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= DEFAULT_TOL * scale(a, b)
}

/// Ordered pairs `(i, j)`, `i != j`, with `σ²_i >= σ²_j`.
fn accuracy_pairs(s: &VarianceProfile) -> impl Iterator<Item = (usize, usize)> + '_ {
    let n = s.len();
    (0..n)
        .flat_map(move |i| (0..n).map(move |j| (i, j)))
        .filter(move |&(i, j)| i != j && s[i] >= s[j])
}

pub fn classify_pap(p: &Population) -> PapGrade {
    let s = &p.sigma2;
    let g = &p.gamma;
    let gamma_uniform = g.iter().all(|&v| close(v, g[0]));
    if gamma_uniform && !s.is_uniform() {
        return PapGrade::NotPap;
    }
    if !accuracy_pairs(s).all(|(i, j)| le(g[j], g[i])) {
        return PapGrade::NotPap;
    }
    if !accuracy_pairs(s).all(|(i, j)| le(g[i] * s[j], g[j] * s[i])) {
        return PapGrade::Pap;
    }
    let n = p.len();
    let maximal = (0..n).all(|i| (0..n).all(|j| close(g[i] * s[j], g[j] * s[i])));
    if maximal {
        PapGrade::MaximalPap
    } else {
        PapGrade::StrongPap
    }
}

/// Verdict of the improving/optimizing test in an irreducible network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Corollary1Verdict {
    /// Centrality ratios sit between the susceptibility ratio and that ratio
    /// scaled by the variance ratio, so social power is gap-consistent.
    ImprovesByGap,
    /// Maximal PAP population in a democratic network: social power is the
    /// optimal allocation.
    OptimalDemocraticMaxPap,
    /// Social power lies in the cell of an ordering that satisfies the
    /// prefix condition.
    ImprovesByOrdering(PermutationOrdering),
    NoConclusion,
}

/// Gap clause: for every `σ²_i >= σ²_j`,
/// `(σ²_j / σ²_i)(γ_i / γ_j) <= c_i / c_j <= γ_i / γ_j`, the right one strict
/// at least once.
fn gap_clause(s: &VarianceProfile, gamma: &[f64], c: &[f64]) -> bool {
    if s.is_uniform() {
        return false;
    }
    let mut strict = false;
    for (i, j) in accuracy_pairs(s) {
        if !le(s[j] * gamma[i] * c[j], s[i] * gamma[j] * c[i]) {
            return false;
        }
        let (lhs, rhs) = (c[i] * gamma[j], c[j] * gamma[i]);
        if !le(lhs, rhs) {
            return false;
        }
        strict |= lt(lhs, rhs);
    }
    strict
}

/// Orders individuals by social power `c_i / γ_i`, descending when
/// `descending` is set, with near-ties broken by ascending variance. Putting
/// the more accurate member of a tie first minimises every prefix sum, so no
/// other admissible ordering satisfies the prefix condition when this one
/// fails.
fn power_ordering(s: &VarianceProfile, gamma: &[f64], c: &[f64], descending: bool) -> PermutationOrdering {
    let n = s.len();
    let power: Vec<f64> = c.iter().zip(gamma).map(|(ci, g)| ci / g).collect();
    let mut idx: Vec<usize> = (0..n).collect();
    if descending {
        idx.sort_by(|&a, &b| power[b].total_cmp(&power[a]));
    } else {
        idx.sort_by(|&a, &b| power[a].total_cmp(&power[b]));
    }
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && close(power[idx[end - 1]], power[idx[end]]) {
            end += 1;
        }
        idx[start..end].sort_by(|&a, &b| s[a].total_cmp(&s[b]).then(a.cmp(&b)));
        start = end;
    }
    PermutationOrdering::from_zero_based(idx).expect("sorted indices form a permutation")
}

/// Ratio chain along `τ`: `c_{τ_i} / c_{τ_{i+1}} >= γ_{τ_i} / γ_{τ_{i+1}}`
/// (or `<=` when `reversed`), at least one strict.
fn chain_clause(tau: &PermutationOrdering, gamma: &[f64], c: &[f64], reversed: bool) -> bool {
    let mut strict = false;
    for w in tau.as_slice().windows(2) {
        let (a, b) = (w[0], w[1]);
        let (mut lhs, mut rhs) = (c[b] * gamma[a], c[a] * gamma[b]);
        if reversed {
            core::mem::swap(&mut lhs, &mut rhs);
        }
        if !le(lhs, rhs) {
            return false;
        }
        strict |= lt(lhs, rhs);
    }
    strict
}

/// Sufficient conditions for the FD dynamics to improve or optimize the
/// wisdom, given the centrality of an irreducible `C`. Clauses are tried in
/// the order optimal, gap, ordering.
pub fn corollary1_check(p: &Population, c: &CentralityVector) -> Result<Corollary1Verdict> {
    check_dim(p.len(), c.len())?;
    let (s, gamma, cv) = (&p.sigma2, &p.gamma[..], c.values());
    if c.is_uniform(DEFAULT_TOL) && classify_pap(p) == PapGrade::MaximalPap {
        return Ok(Corollary1Verdict::OptimalDemocraticMaxPap);
    }
    if gap_clause(s, gamma, cv) {
        return Ok(Corollary1Verdict::ImprovesByGap);
    }
    let tau = power_ordering(s, gamma, cv, true);
    if chain_clause(&tau, gamma, cv, false) && permutation_condition(s, &tau)? {
        return Ok(Corollary1Verdict::ImprovesByOrdering(tau));
    }
    Ok(Corollary1Verdict::NoConclusion)
}

/// Topology declared for the democratic/autocratic test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetworkKind {
    /// Doubly stochastic `C`.
    Democratic,
    /// Star: every non-centre row of `C` is `e_center`, and the centre
    /// weights every other node.
    Autocratic { center: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corollary2Verdict {
    Optimal,
    Improves,
    NoConclusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corollary2Report {
    pub verdict: Corollary2Verdict,
    pub pap: PapGrade,
    /// In a democratic network with a PAP population: whether the ascending
    /// profile satisfies the prefix condition, which decides whether every
    /// PAP population improves. `None` otherwise.
    pub pap_sufficient: Option<bool>,
}

fn check_kind(c: &Matrix, kind: NetworkKind) -> Result<()> {
    let n = c.dim();
    match kind {
        NetworkKind::Democratic => {
            let tol = SUM_TOL * n as f64;
            for (col, sum) in c.column_sums().into_iter().enumerate() {
                if (sum - 1.0).abs() > tol {
                    return Err(Error::NotDemocratic { col, sum });
                }
            }
        }
        NetworkKind::Autocratic { center } => {
            if center >= n {
                return Err(Error::NotStar {
                    center,
                    reason: "centre index out of range",
                });
            }
            for i in (0..n).filter(|&i| i != center) {
                if c[(i, center)] != 1.0 {
                    return Err(Error::NotStar {
                        center,
                        reason: "a non-centre row is not the centre's unit vector",
                    });
                }
                if !(c[(center, i)] > 0.0) {
                    return Err(Error::NotStar {
                        center,
                        reason: "the centre must weight every other node",
                    });
                }
            }
        }
    }
    Ok(())
}

/// Improving/optimizing test for democratic and autocratic networks.
///
/// In a star with centre `l` the centrality is `c_l = 1/2` and
/// `c_i = C_li / 2`, so ratio conditions on the centre row are read with
/// `C_ll` replaced by 1.
pub fn corollary2_check(
    p: &Population,
    net: &InfluenceNetwork,
    kind: NetworkKind,
) -> Result<Corollary2Report> {
    check_dim(p.len(), net.len())?;
    check_kind(&net.c, kind)?;
    let s = &p.sigma2;
    let gamma = &p.gamma[..];
    let pap = classify_pap(p);
    match kind {
        NetworkKind::Democratic => {
            let pap_sufficient = if pap >= PapGrade::Pap {
                Some(ordering_sufficiency(&s.sorted_ascending().0)?)
            } else {
                None
            };
            let verdict = if pap == PapGrade::MaximalPap {
                Corollary2Verdict::Optimal
            } else if (pap == PapGrade::StrongPap && !s.is_uniform()) || pap_sufficient == Some(true) {
                Corollary2Verdict::Improves
            } else {
                Corollary2Verdict::NoConclusion
            };
            Ok(Corollary2Report {
                verdict,
                pap,
                pap_sufficient,
            })
        }
        NetworkKind::Autocratic { center } => {
            let mut row = net.c.row(center).to_vec();
            row[center] = 1.0;
            let optimal = (0..p.len())
                .filter(|&i| i != center)
                .all(|i| close(gamma[i] * s[center], row[i] * s[i] * gamma[center]));
            let verdict = if optimal {
                Corollary2Verdict::Optimal
            } else if gap_clause(s, gamma, &row) {
                Corollary2Verdict::Improves
            } else {
                Corollary2Verdict::NoConclusion
            };
            Ok(Corollary2Report {
                verdict,
                pap,
                pap_sufficient: None,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Corollary3Verdict {
    /// More accurate individuals get weakly less social power, strictly
    /// less at least once.
    Undermines,
    /// Social power lies in the reverse of a cell that satisfies the prefix
    /// condition.
    UnderminesByReversedOrdering(PermutationOrdering),
    NoConclusion,
}

/// Sufficient conditions for the FD dynamics to undermine the wisdom.
pub fn corollary3_check(p: &Population, c: &CentralityVector) -> Result<Corollary3Verdict> {
    check_dim(p.len(), c.len())?;
    let (s, gamma, cv) = (&p.sigma2, &p.gamma[..], c.values());
    let mut strict = false;
    let mut holds = true;
    for (i, j) in accuracy_pairs(s) {
        let (lhs, rhs) = (cv[j] * gamma[i], cv[i] * gamma[j]);
        if !le(lhs, rhs) {
            holds = false;
            break;
        }
        strict |= lt(lhs, rhs);
    }
    if holds && strict {
        return Ok(Corollary3Verdict::Undermines);
    }
    let tau = power_ordering(s, gamma, cv, false);
    if chain_clause(&tau, gamma, cv, true) && permutation_condition(s, &tau)? {
        return Ok(Corollary3Verdict::UnderminesByReversedOrdering(tau));
    }
    Ok(Corollary3Verdict::NoConclusion)
}
