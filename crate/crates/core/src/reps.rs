//! Weight systems of irreducible representations with highest weight in the
//! root lattice, and the height histograms that feed the exponent formula.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::orbitcomb::JComponent;
use crate::rootsys::{LatticeVector, RootSystem};
use crate::weyl;

#[derive(Debug, Clone)]
pub struct WeightSystem {
    highest: LatticeVector,
    /// Dominant weights in decreasing height, with multiplicity and orbit size.
    dominant: Vec<(LatticeVector, u64, usize)>,
    total_dim: u64,
}

impl WeightSystem {
    pub fn highest(&self) -> LatticeVector {
        self.highest
    }

    /// `(μ, m(μ))` for the dominant weights, highest first.
    pub fn dominant_weights(&self) -> impl Iterator<Item = (LatticeVector, u64)> + '_ {
        self.dominant.iter().map(|&(v, m, _)| (v, m))
    }

    pub fn orbit_size(&self, mu: &LatticeVector) -> Option<usize> {
        self.dominant
            .iter()
            .find(|(v, _, _)| v == mu)
            .map(|&(_, _, s)| s)
    }

    pub fn total_dim(&self) -> u64 {
        self.total_dim
    }

    /// Multiplicity of an arbitrary weight.
    pub fn multiplicity(&self, rs: &RootSystem, mu: &LatticeVector) -> u64 {
        let (plus, _) = weyl::dominant_rep(rs, mu);
        self.dominant
            .iter()
            .find(|(v, _, _)| *v == plus)
            .map_or(0, |&(_, m, _)| m)
    }

    /// `v_λ`, the multiplicity of the zero weight.
    pub fn zero_weight_multiplicity(&self) -> u64 {
        self.dominant
            .iter()
            .find(|(v, _, _)| v.is_zero())
            .map_or(0, |&(_, m, _)| m)
    }

    /// Every weight with its multiplicity.
    pub fn weights(&self, rs: &RootSystem) -> Vec<(LatticeVector, u64)> {
        self.dominant
            .iter()
            .flat_map(|&(v, m, _)| weyl::orbit_vectors(rs, &v).into_iter().map(move |w| (w, m)))
            .collect()
    }

    /// Number of weights (with multiplicity) at each height.
    pub fn height_histogram(&self, rs: &RootSystem) -> BTreeMap<i32, u64> {
        let mut out = BTreeMap::new();
        for (w, m) in self.weights(rs) {
            *out.entry(w.height()).or_insert(0) += m;
        }
        out
    }
}

/// `2ρ`, the sum of the positive roots.
fn two_rho(rs: &RootSystem) -> LatticeVector {
    rs.positive_roots()
        .iter()
        .fold(rs.zero(), |acc, a| acc + *a)
}

/// Dimension of `V_λ` by the Weyl dimension formula.
pub fn weyl_dimension(rs: &RootSystem, lambda: &LatticeVector) -> Result<u64> {
    let rho2 = two_rho(rs);
    let top = *lambda + *lambda + rho2;
    let mut prod = BigRational::one();
    for alpha in rs.positive_roots() {
        prod *= BigRational::new(
            BigInt::from(rs.scaled_pairing(&top, alpha)),
            BigInt::from(rs.scaled_pairing(&rho2, alpha)),
        );
    }
    if !prod.is_integer() {
        return Err(Error::Verification(format!(
            "Weyl dimension of {lambda} is not an integer: {prod}"
        )));
    }
    prod.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Unsupported(format!("dimension of {lambda} overflows u64")))
}

/// Dominant weights of `V_λ`, closed under root strings.
fn dominant_weights(rs: &RootSystem, lambda: &LatticeVector) -> BTreeSet<LatticeVector> {
    let mut found = BTreeSet::from([*lambda]);
    let mut stack = vec![*lambda];
    while let Some(mu) = stack.pop() {
        for alpha in rs.positive_roots() {
            let k = rs.copairing(&mu, alpha).expect("positive roots are roots");
            for j in 1..=k {
                let (plus, _) = weyl::dominant_rep(rs, &mu.sub_scaled(j as i32, alpha));
                if found.insert(plus) {
                    stack.push(plus);
                }
            }
        }
    }
    found
}

/// Weight system of `V_λ` by Freudenthal's formula on dominant weights.
///
/// In the integer form used here, with `sp = r·( , )` and
/// `F(v) = sp(2v + 2ρ, 2v + 2ρ)`,
/// `m(μ) = 8 Σ_{α>0} Σ_{k≥1} m(μ+kα)·sp(μ+kα, α) / (F(λ) - F(μ))`.
pub fn weight_system(rs: &RootSystem, lambda: &LatticeVector) -> Result<WeightSystem> {
    rs.check_rank(lambda)?;
    if !rs.is_dominant(lambda) {
        return Err(Error::NotDominant(*lambda));
    }
    let rho2 = two_rho(rs);
    let f = |v: &LatticeVector| {
        let w = *v + *v + rho2;
        rs.scaled_pairing(&w, &w)
    };
    let f_top = f(lambda);

    let mut order: Vec<LatticeVector> = dominant_weights(rs, lambda).into_iter().collect();
    order.sort_by_key(|v| (-v.height(), *v));
    let mut mult: BTreeMap<LatticeVector, u64> = BTreeMap::new();
    for mu in &order {
        if mu == lambda {
            mult.insert(*mu, 1);
            continue;
        }
        let mut acc: i64 = 0;
        for alpha in rs.positive_roots() {
            let mut k = 1;
            loop {
                let nu = mu.sub_scaled(-k, alpha);
                let (plus, _) = weyl::dominant_rep(rs, &nu);
                let Some(&m) = mult.get(&plus) else { break };
                acc += m as i64 * rs.scaled_pairing(&nu, alpha);
                k += 1;
            }
        }
        let den = f_top - f(mu);
        if den <= 0 || (8 * acc) % den != 0 {
            return Err(Error::Verification(format!(
                "Freudenthal step at {mu}: 8·{acc}/{den} is not a nonnegative integer"
            )));
        }
        mult.insert(*mu, (8 * acc / den) as u64);
    }

    let mut dominant = Vec::with_capacity(order.len());
    let mut total = 0u64;
    for mu in order {
        let m = mult[&mu];
        if m == 0 {
            continue;
        }
        let size = weyl::orbit_vectors(rs, &mu).len();
        total += m * size as u64;
        dominant.push((mu, m, size));
    }
    let expected = weyl_dimension(rs, lambda)?;
    if total != expected {
        return Err(Error::Verification(format!(
            "weights of V_{lambda} add up to {total}, Weyl dimension is {expected}"
        )));
    }
    Ok(WeightSystem {
        highest: *lambda,
        dominant,
        total_dim: total,
    })
}

/// `h′`, `h″` and `h` for a dominant root or `θ_s + θ_{s,j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightHistograms {
    /// Weights of positive height `i`, with multiplicity.
    pub h_prime: BTreeMap<i32, u64>,
    /// Pair-orbit elements `γ` with `ht(γ) + D_γ - n(j) = i`, `i ≥ 1`; empty for roots.
    pub h_dprime: BTreeMap<i32, u64>,
    /// `h′ - h″` on `1 ..= ht(λ)`.
    pub h: BTreeMap<i32, i64>,
    /// Zero-weight multiplicity.
    pub v: u64,
}

/// Histograms of `λ`. With `j` given, `λ` must be `θ_s + θ_{s,j}`; otherwise
/// it must be a dominant root.
pub fn histograms(
    rs: &RootSystem,
    lambda: &LatticeVector,
    j: Option<&JComponent>,
) -> Result<HeightHistograms> {
    match j {
        Some(j) if j.is_theta_l || j.dominant(rs) != *lambda => {
            return Err(Error::Unsupported(format!(
                "{lambda} is not the dominant sum of a pair component"
            )))
        }
        None if !(rs.is_root(lambda) && rs.is_dominant(lambda)) => {
            return Err(Error::Unsupported(format!(
                "{lambda} is neither a dominant root nor a pair sum"
            )))
        }
        _ => {}
    }
    let ws = weight_system(rs, lambda)?;
    let h_prime: BTreeMap<i32, u64> = ws
        .height_histogram(rs)
        .into_iter()
        .filter(|&(i, _)| i > 0)
        .collect();

    let mut h_dprime = BTreeMap::new();
    if let Some(j) = j {
        let orbit = weyl::orbit(rs, lambda)?;
        for e in orbit.elements() {
            let d = crate::orbitcomb::definitional_d(lambda, &e.vector, e.length);
            let i = e.vector.height() + d as i32 - j.n_j as i32;
            if i >= 1 {
                *h_dprime.entry(i).or_insert(0) += 1;
            }
        }
    }

    let top = lambda.height();
    let h = (1..=top)
        .map(|i| {
            let a = h_prime.get(&i).copied().unwrap_or(0) as i64;
            let b = h_dprime.get(&i).copied().unwrap_or(0) as i64;
            (i, a - b)
        })
        .collect();
    Ok(HeightHistograms {
        h_prime,
        h_dprime,
        h,
        v: ws.zero_weight_multiplicity(),
    })
}
