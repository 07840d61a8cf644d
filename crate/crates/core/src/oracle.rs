//! Brute-force oracle for generalized exponents.
//!
//! `E(V_λ) = Σ_{w ∈ W} (-1)^{ℓ(w)} P_t(w(λ+ρ) - ρ)`, where `P_t(μ)` counts
//! multisets of positive roots summing to `μ`, weighted by `t^{size}`. It
//! shares nothing with the kernel computations beyond the root system.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::exponents::ExponentPoly;
use crate::rootsys::{LatticeVector, RootSystem};

/// Memoized `q`-analogue of Kostant's partition function.
#[derive(Debug, Clone)]
pub struct QKostantTable {
    bound: i32,
    positive: Vec<LatticeVector>,
    memo: HashMap<(LatticeVector, usize), Vec<u64>>,
}

fn add_shifted(acc: &mut Vec<u64>, p: &[u64], shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += c;
    }
}

impl QKostantTable {
    /// Table answering queries of height at most `bound`.
    pub fn new(rs: &RootSystem, bound: i32) -> Self {
        QKostantTable {
            bound,
            positive: rs.positive_roots().to_vec(),
            memo: HashMap::new(),
        }
    }

    pub fn bound(&self) -> i32 {
        self.bound
    }

    /// `P_t(μ)` as coefficients of `t^0, t^1, …`.
    pub fn get(&mut self, mu: &LatticeVector) -> Result<Vec<u64>> {
        if mu.height() > self.bound {
            return Err(Error::BudgetExceeded(format!(
                "partition function at {mu}: height {} over bound {}",
                mu.height(),
                self.bound
            )));
        }
        Ok(self.count(*mu, self.positive.len()))
    }

    /// Multisets drawn from the first `k` positive roots.
    fn count(&mut self, mu: LatticeVector, k: usize) -> Vec<u64> {
        if !mu.is_nonnegative() {
            return Vec::new();
        }
        if k == 0 {
            return if mu.is_zero() { vec![1] } else { Vec::new() };
        }
        if let Some(v) = self.memo.get(&(mu, k)) {
            return v.clone();
        }
        let beta = self.positive[k - 1];
        let mut acc = Vec::new();
        let mut rest = mu;
        let mut m = 0;
        while rest.is_nonnegative() {
            let p = self.count(rest, k - 1);
            add_shifted(&mut acc, &p, m);
            rest -= beta;
            m += 1;
        }
        self.memo.insert((mu, k), acc.clone());
        acc
    }
}

/// `P_t(μ)` without a reusable table.
pub fn q_kostant(rs: &RootSystem, mu: &LatticeVector, bound: i32) -> Result<ExponentPoly> {
    rs.check_rank(mu)?;
    let coeffs = QKostantTable::new(rs, bound).get(mu)?;
    let mut p = ExponentPoly::new();
    for (e, c) in coeffs.into_iter().enumerate() {
        p.add(e as i32, c);
    }
    Ok(p)
}

/// Default cap on the number of Weyl group elements visited.
pub const DEFAULT_WEYL_LIMIT: usize = 60_000;

/// The alternating sum over `W`, enumerated as the regular dot-orbit of `λ`.
pub fn lusztig_e(rs: &RootSystem, lambda: &LatticeVector, limit: usize) -> Result<ExponentPoly> {
    rs.check_rank(lambda)?;
    if !rs.is_dominant(lambda) {
        return Err(Error::NotDominant(*lambda));
    }
    let mut table = QKostantTable::new(rs, lambda.height());
    let mut total: Vec<i64> = Vec::new();
    let mut seen = HashSet::from([*lambda]);
    let mut level = vec![*lambda];
    let mut sign = 1i64;
    while !level.is_empty() {
        for mu in &level {
            if mu.is_nonnegative() {
                let p = table.get(mu)?;
                if total.len() < p.len() {
                    total.resize(p.len(), 0);
                }
                for (i, c) in p.into_iter().enumerate() {
                    total[i] += sign * c as i64;
                }
            }
        }
        let mut next = Vec::new();
        for mu in &level {
            for i in 0..rs.rank() {
                // s_i · μ = μ - ((μ, α_i^∨) + 1) α_i
                let k = rs.simple_copairing(mu, i) + 1;
                let image = mu.sub_scaled(k, &rs.simple_root(i));
                if seen.insert(image) {
                    if seen.len() > limit {
                        return Err(Error::BudgetExceeded(format!(
                            "Weyl group has more than {limit} elements"
                        )));
                    }
                    next.push(image);
                }
            }
        }
        level = next;
        sign = -sign;
    }
    ExponentPoly::from_signed(total.into_iter().enumerate().map(|(e, c)| (e as i32, c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbitcomb;
    use crate::rootsys::Family;

    #[test]
    fn partition_function_examples() {
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(q_kostant(&a2, &a2.zero(), 5).unwrap().to_string(), "1");
        assert_eq!(
            q_kostant(&a2, &a2.theta(), 5).unwrap().to_string(),
            "t + t^2"
        );
        let a1 = LatticeVector::from_coords(&[1, 0]);
        assert_eq!(q_kostant(&a2, &a1, 5).unwrap().to_string(), "t");
        assert_eq!(q_kostant(&a2, &-a1, 5).unwrap().to_string(), "0");
        assert!(matches!(
            q_kostant(&a2, &a2.theta(), 1),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn alternating_sums() {
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(
            lusztig_e(&a2, &a2.theta(), 100).unwrap().to_string(),
            "t + t^2"
        );
        let b2 = RootSystem::new(Family::B, 2).unwrap();
        assert_eq!(
            lusztig_e(&b2, &b2.theta_s(), 100).unwrap().to_string(),
            "t^2"
        );
        let a3 = RootSystem::new(Family::A, 3).unwrap();
        let j = orbitcomb::pair_components(&a3).remove(0);
        assert_eq!(
            lusztig_e(&a3, &j.dominant(&a3), 100).unwrap().to_string(),
            "t^2 + t^4"
        );
        assert_eq!(lusztig_e(&a3, &a3.zero(), 100).unwrap().to_string(), "1");
        assert!(matches!(
            lusztig_e(&a3, &a3.theta(), 10),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
