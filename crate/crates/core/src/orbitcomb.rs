//! Orbit statistics: the defect `D_λ` and its short/long parts, short-root
//! pair counts, and the components `J` that parameterize orbits of sums of
//! two orthogonal short roots.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{LatticeVector, RootSystem};
use crate::weyl::{self, Orbit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DStats {
    /// `D_λ = ht(λ₊) - ht(λ) - ℓ(w_λ)`
    pub d_total: i64,
    pub d_short: i64,
    pub d_long: i64,
    /// 0 when `ht(λ) >= 0`, 1 otherwise.
    pub height_sign: u8,
}

/// `D_λ` straight from its definition.
pub fn definitional_d(plus: &LatticeVector, lambda: &LatticeVector, length: usize) -> i64 {
    (plus.height() - lambda.height()) as i64 - length as i64
}

fn stats_from_word(
    rs: &RootSystem,
    plus: &LatticeVector,
    lambda: &LatticeVector,
    word: &[usize],
) -> Result<DStats> {
    let mut d_short = 0i64;
    let mut d_long = 0i64;
    for alpha in weyl::inversion_set(rs, word)? {
        let k = rs.root_index(&alpha).expect("inversions are roots");
        let term = rs.copairing_index(plus, k) - 1;
        if rs.is_short_index(k) {
            d_short += term;
        } else {
            d_long += term;
        }
    }
    Ok(DStats {
        d_total: definitional_d(plus, lambda, word.len()),
        d_short,
        d_long,
        height_sign: u8::from(lambda.height() < 0),
    })
}

/// Statistics of `λ` inside a precomputed orbit.
///
/// `D_s` and `D_ℓ` are summed over the inversion set of `w_λ`; `D` itself
/// comes from the height formula, so callers can compare the two.
pub fn d_stats(rs: &RootSystem, orbit: &Orbit, lambda: &LatticeVector) -> Result<DStats> {
    let elem = orbit.get(lambda).ok_or(Error::NotInOrbit {
        vector: *lambda,
        dominant: orbit.dominant(),
    })?;
    stats_from_word(rs, &orbit.dominant(), lambda, &elem.word)
}

/// Statistics of an arbitrary lattice vector, via its dominant representative.
pub fn d_stats_of(rs: &RootSystem, lambda: &LatticeVector) -> Result<DStats> {
    let (plus, word) = weyl::dominant_rep(rs, lambda);
    stats_from_word(rs, &plus, lambda, &word)
}

/// Unordered pairs of short roots summing to a given vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCount {
    pub pairs: Vec<(LatticeVector, LatticeVector)>,
    /// Number of negative roots appearing over all pairs.
    pub negatives: usize,
}

impl PairCount {
    pub fn count(&self) -> usize {
        self.pairs.len()
    }
}

fn short_pairs(rs: &RootSystem, gamma: &LatticeVector, orthogonal: bool) -> PairCount {
    let mut pairs = Vec::new();
    let mut negatives = 0;
    for alpha in rs.short_roots() {
        let beta = *gamma - *alpha;
        if beta <= *alpha || rs.is_short_root(&beta) != Some(true) {
            continue;
        }
        if orthogonal && rs.scaled_pairing(alpha, &beta) != 0 {
            continue;
        }
        negatives += usize::from(!alpha.is_nonnegative()) + usize::from(!beta.is_nonnegative());
        pairs.push((*alpha, beta));
    }
    PairCount { pairs, negatives }
}

/// `n(γ)` and `n⁻(γ)`: pairs of orthogonal short roots summing to `γ`.
pub fn pair_count(rs: &RootSystem, gamma: &LatticeVector) -> PairCount {
    short_pairs(rs, gamma, true)
}

/// Pairs of short roots (orthogonal or not) summing to `γ`; used for long roots.
pub fn short_root_pair_count(rs: &RootSystem, gamma: &LatticeVector) -> PairCount {
    short_pairs(rs, gamma, false)
}

/// A connected component of the Dynkin diagram with the nodes attached to
/// `θ_s` removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JComponent {
    /// 0-based simple-root indices.
    pub nodes: Vec<usize>,
    /// Highest short root of the component's root subsystem.
    pub theta_sj: LatticeVector,
    /// Number of unordered orthogonal short-root pairs summing to `θ_s + θ_{s,j}`.
    pub n_j: usize,
    /// True when `θ_s + θ_{s,j}` is the highest long root.
    pub is_theta_l: bool,
}

impl JComponent {
    /// `θ_s + θ_{s,j}`
    pub fn dominant(&self, rs: &RootSystem) -> LatticeVector {
        rs.theta_s() + self.theta_sj
    }

    /// Positive short roots of the component's subsystem.
    pub fn num_positive_short(&self, rs: &RootSystem) -> usize {
        rs.subsystem_positive_roots(&self.nodes)
            .filter(|(k, _)| rs.is_short_index(*k))
            .count()
    }
}

/// `A = {α ∈ R_s⁺ : (θ_s, α^∨) = (θ_{s,j}, α^∨) = 1}`
pub fn set_a(rs: &RootSystem, theta_sj: &LatticeVector) -> Vec<LatticeVector> {
    let ts = rs.theta_s();
    rs.positive_roots()
        .iter()
        .enumerate()
        .filter(|&(k, _)| {
            rs.is_short_index(k)
                && rs.copairing_index(&ts, k) == 1
                && rs.copairing_index(theta_sj, k) == 1
        })
        .map(|(_, v)| *v)
        .collect()
}

/// Components of the Dynkin diagram after deleting the nodes not orthogonal
/// to `θ_s`, keeping those that contain a short simple root.
pub fn j_components(rs: &RootSystem) -> Vec<JComponent> {
    let n = rs.rank();
    let ts = rs.theta_s();
    let kept: Vec<bool> = (0..n).map(|i| rs.simple_copairing(&ts, i) == 0).collect();
    let mut visited = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if !kept[start] || visited[start] {
            continue;
        }
        let mut nodes = vec![];
        let mut stack = vec![start];
        visited[start] = true;
        while let Some(i) = stack.pop() {
            nodes.push(i);
            for j in 0..n {
                if kept[j] && !visited[j] && rs.dynkin_adjacent(i, j) {
                    visited[j] = true;
                    stack.push(j);
                }
            }
        }
        nodes.sort_unstable();
        if !nodes.iter().any(|&i| rs.simple_root_is_short(i)) {
            continue;
        }
        let theta_sj = rs
            .subsystem_positive_roots(&nodes)
            .filter(|(k, _)| rs.is_short_index(*k))
            .map(|(_, v)| *v)
            .max_by_key(|v| (v.height(), *v))
            .expect("component has a short simple root");
        let dominant = ts + theta_sj;
        let is_theta_l = rs.theta_l() == Some(dominant);
        let n_j = pair_count(rs, &dominant).count();
        if !is_theta_l {
            let a = set_a(rs, &theta_sj);
            assert_eq!(a.len() % 2, 0, "|A| must be even");
            assert_eq!(n_j, 1 + a.len() / 2, "n(j) disagrees with 1 + |A|/2");
        }
        out.push(JComponent {
            nodes,
            theta_sj,
            n_j,
            is_theta_l,
        });
    }
    out
}

/// Components whose dominant sum is not `θ_ℓ`; these index the pair orbits.
pub fn pair_components(rs: &RootSystem) -> Vec<JComponent> {
    j_components(rs)
        .into_iter()
        .filter(|j| !j.is_theta_l)
        .collect()
}

/// Enumerates the orbit of `θ_s + θ_{s,j}` and checks its size against
/// `2·N(R_s)·N(R_{s,j})/n(j)`.
pub fn pair_orbit_size_check(rs: &RootSystem, j: &JComponent) -> Result<usize> {
    if j.is_theta_l {
        return Err(Error::Unsupported(
            "orbit size formula excludes the component giving θ_ℓ".into(),
        ));
    }
    let size = weyl::orbit_vectors(rs, &j.dominant(rs)).len();
    let n_rs = rs.positive_short_roots().count();
    let n_rsj = j.num_positive_short(rs);
    let predicted = 2 * n_rs * n_rsj / j.n_j;
    if predicted * j.n_j != 2 * n_rs * n_rsj || predicted != size {
        return Err(Error::Verification(format!(
            "orbit of {} has {size} elements, formula gives 2·{n_rs}·{n_rsj}/{}",
            j.dominant(rs),
            j.n_j
        )));
    }
    Ok(size)
}

/// The set `S` of sums of two orthogonal short roots, by brute force.
pub fn pair_sum_set(rs: &RootSystem) -> Vec<LatticeVector> {
    let shorts: Vec<_> = rs.short_roots().copied().collect();
    let mut out = std::collections::BTreeSet::new();
    for (a, alpha) in shorts.iter().enumerate() {
        for beta in &shorts[a + 1..] {
            if rs.scaled_pairing(alpha, beta) == 0 {
                out.insert(*alpha + *beta);
            }
        }
    }
    out.into_iter().collect()
}
