//! Self-check suites run by `cherednik verify`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cherednik::{Kernel, Strategy};
use crate::error::{Error, Result};
use crate::exponents::{self, ExponentPoly};
use crate::oracle;
use crate::orbitcomb::{self, JComponent};
use crate::reps;
use crate::rootsys::{Family, LatticeVector, RootSystem};
use crate::weyl;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Rank ≤ 3 spot checks; a few seconds.
    Small,
    /// Every mandated family and rank except the E7/E8 pair tables.
    Full,
    /// `Full` plus the E7/E8 pair tables.
    Long,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Suite::Small),
            "full" => Ok(Suite::Full),
            "long" => Ok(Suite::Long),
            other => Err(Error::Unsupported(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Failure description; empty on success.
    pub detail: String,
    /// True when the check stopped on a budget limit.
    pub budget: bool,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name
        )?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

type Outcome = std::result::Result<(), String>;

fn check(name: String, body: impl FnOnce() -> Result<Outcome>) -> CheckResult {
    let (passed, detail, budget) = match body() {
        Ok(Ok(())) => (true, String::new(), false),
        Ok(Err(msg)) => (false, msg, false),
        Err(e) => (false, e.to_string(), matches!(e, Error::BudgetExceeded(_))),
    };
    CheckResult {
        name,
        passed,
        detail,
        budget,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn label(rs: &RootSystem) -> String {
    let s = rs.spec();
    format!("{}{}", s.family.letter(), s.rank)
}

fn systems(list: &[(Family, std::ops::RangeInclusive<usize>)]) -> Vec<RootSystem> {
    list.iter()
        .flat_map(|(f, ranks)| ranks.clone().map(move |n| (*f, n)))
        .map(|(f, n)| RootSystem::new(f, n).expect("admissible"))
        .collect()
}

/// Classical exponents agree with the coefficient sum for `θ` and satisfy
/// Chevalley's symmetry.
pub fn check_classical(rs: &RootSystem) -> CheckResult {
    check(format!("classical exponents {}", label(rs)), || {
        let classical = ExponentPoly::from_exponents(rs.classical_exponents());
        let mut k = Kernel::new(rs);
        let sp = exponents::exponents_scalar_product(&mut k, &rs.theta())?;
        if sp != classical {
            return Ok(Err(format!(
                "histogram gives {classical}, coefficients give {sp}"
            )));
        }
        let sym = exponents::symmetry_check(&sp, exponents::chevalley_target(rs));
        Ok(ensure(sym.holds(), || {
            format!("symmetry violations {:?}", sym.violations)
        }))
    })
}

/// Dual partition against the per-type table, for every pair component.
pub fn check_golden(rs: &RootSystem) -> Vec<CheckResult> {
    orbitcomb::pair_components(rs)
        .into_iter()
        .enumerate()
        .map(|(k, j)| {
            check(format!("pair table {} j{}", label(rs), k + 1), || {
                let lam = j.dominant(rs);
                let dual = exponents::exponents_dual_partition(rs, &lam, Some(&j))?;
                let table = exponents::pair_table(rs, &j)?;
                Ok(ensure(dual == table, || {
                    format!("computed {dual}, table {table}")
                }))
            })
        })
        .collect()
}

/// Dominant elements of the orbits with closed forms.
fn closed_orbits(rs: &RootSystem) -> Vec<(LatticeVector, Option<JComponent>)> {
    let mut out = vec![(rs.theta_s(), None)];
    if let Some(tl) = rs.theta_l() {
        out.push((tl, None));
    }
    out.extend(
        orbitcomb::pair_components(rs)
            .into_iter()
            .map(|j| (j.dominant(rs), Some(j))),
    );
    out
}

/// Solver values equal the closed forms on every closed-form orbit.
pub fn check_solver(rs: &RootSystem) -> CheckResult {
    check(format!("solver = closed forms {}", label(rs)), || {
        let mut k = Kernel::new(rs);
        for (dom, _) in closed_orbits(rs) {
            for v in weyl::orbit_vectors(rs, &dom) {
                let solved = k.coeff(&v, Strategy::Solver)?;
                let closed = k.coeff(&v, Strategy::Closed)?;
                if solved != closed {
                    return Ok(Err(format!("at {v}: solver {solved}, closed {closed}")));
                }
            }
        }
        Ok(Ok(()))
    })
}

/// `c_λ(q⁻¹, t⁻¹) = c_{-λ}(q, t)` on all roots, solver path.
pub fn check_inversion(rs: &RootSystem) -> CheckResult {
    check(format!("inversion symmetry {}", label(rs)), || {
        let mut k = Kernel::new(rs);
        for v in rs.roots().to_vec() {
            let lhs = k.coeff(&v, Strategy::Solver)?.subst_inverse();
            let rhs = k.coeff(&-v, Strategy::Solver)?;
            if lhs != rhs {
                return Ok(Err(format!("at {v}: {lhs} vs {rhs}")));
            }
        }
        Ok(Ok(()))
    })
}

/// Representations with a closed exponent description.
pub fn closed_reps(rs: &RootSystem) -> Vec<(String, LatticeVector, Option<JComponent>)> {
    let mut out = vec![("theta".to_string(), rs.theta(), None)];
    if !rs.is_simply_laced() {
        out.push(("theta_s".to_string(), rs.theta_s(), None));
    }
    for (k, j) in orbitcomb::pair_components(rs).into_iter().enumerate() {
        out.push((format!("pair:{}", k + 1), j.dominant(rs), Some(j)));
    }
    out
}

/// Oracle, dual partition and scalar product agree; also the structural
/// requirements on every polynomial produced.
pub fn check_oracle(rs: &RootSystem) -> Vec<CheckResult> {
    closed_reps(rs)
        .into_iter()
        .map(|(name, lam, j)| {
            check(format!("oracle {} {name}", label(rs)), || {
                let lus = oracle::lusztig_e(rs, &lam, oracle::DEFAULT_WEYL_LIMIT)?;
                let dual = exponents::exponents_dual_partition(rs, &lam, j.as_ref())?;
                let mut k = Kernel::new(rs);
                let sp = exponents::exponents_scalar_product(&mut k, &lam)?;
                if lus != dual || lus != sp {
                    return Ok(Err(format!("oracle {lus}, dual {dual}, scalar {sp}")));
                }
                let v = reps::weight_system(rs, &lam)?.zero_weight_multiplicity();
                Ok(ensure(lus.num_terms() == v, || {
                    format!("{} exponents but v = {v}", lus.num_terms())
                }))
            })
        })
        .collect()
}

/// The weighted `θ` sum equals its closed form and vanishes at `q = t`.
pub fn check_theta_sum(rs: &RootSystem) -> CheckResult {
    check(format!("theta scalar product {}", label(rs)), || {
        let mut k = Kernel::new(rs);
        let sum = exponents::theta_weighted_sum(&mut k)?;
        let closed = exponents::theta_closed_form(rs);
        if sum != closed {
            return Ok(Err(format!("sum {sum}, closed form {closed}")));
        }
        let at_t = sum.subst_q_to_t()?;
        Ok(ensure(at_t.is_zero(), || format!("q = t gives {at_t}")))
    })
}

/// Inversion sets, defect statistics and pair-orbit lemmas.
pub fn check_lemmas(rs: &RootSystem, exhaustive_s: bool) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (dom, j) in closed_orbits(rs) {
        let tag = match &j {
            Some(_) => format!("{} orbit {dom} (pair)", label(rs)),
            None => format!("{} orbit {dom}", label(rs)),
        };
        out.push(check(format!("inversion lemmas {tag}"), || {
            Ok(inversion_lemmas(rs, &dom))
        }));
        out.push(check(format!("defect statistics {tag}"), || {
            defect_lemmas(rs, &dom, j.as_ref())
        }));
    }
    for j in orbitcomb::pair_components(rs) {
        out.push(check(
            format!("component lemmas {} {:?}", label(rs), j.nodes),
            || component_lemmas(rs, &j),
        ));
    }
    if exhaustive_s {
        out.push(check(format!("pair sums conjugate {}", label(rs)), || {
            let doms: BTreeSet<_> = orbitcomb::j_components(rs)
                .iter()
                .map(|j| j.dominant(rs))
                .collect();
            for s in orbitcomb::pair_sum_set(rs) {
                let (plus, _) = weyl::dominant_rep(rs, &s);
                if !doms.contains(&plus) {
                    return Ok(Err(format!("{s} has dominant form {plus}")));
                }
            }
            Ok(Ok(()))
        }));
    }
    out
}

fn inversion_lemmas(rs: &RootSystem, dom: &LatticeVector) -> Outcome {
    let orbit = weyl::orbit(rs, dom).map_err(|e| e.to_string())?;
    for e in orbit.elements() {
        let inv: BTreeSet<_> = weyl::inversion_set(rs, &weyl::inverse_word(&e.word))
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        let neg: BTreeSet<_> = rs
            .positive_roots()
            .iter()
            .filter(|a| rs.scaled_pairing(&e.vector, a) < 0)
            .copied()
            .collect();
        ensure(inv == neg, || format!("Π(w⁻¹) mismatch at {}", e.vector))?;

        let here: BTreeSet<_> = weyl::inversion_set(rs, &e.word)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        for i in 0..rs.rank() {
            if rs.simple_copairing(&e.vector, i) <= 0 {
                continue;
            }
            let up = orbit
                .get(&rs.simple_reflect(i, &e.vector))
                .expect("orbit closed");
            let grown: BTreeSet<_> = weyl::inversion_set(rs, &up.word)
                .map_err(|e| e.to_string())?
                .into_iter()
                .collect();
            let new_root = weyl::apply_word(rs, &weyl::inverse_word(&e.word), &rs.simple_root(i));
            let mut expected = here.clone();
            expected.insert(new_root);
            ensure(grown == expected, || {
                format!("inversion growth fails at {} via s_{}", e.vector, i + 1)
            })?;
        }
    }
    Ok(())
}

fn defect_lemmas(rs: &RootSystem, dom: &LatticeVector, j: Option<&JComponent>) -> Result<Outcome> {
    let orbit = weyl::orbit(rs, dom)?;
    let r = rs.lacing() as i64;
    for e in orbit.elements() {
        let v = e.vector;
        let st = orbitcomb::d_stats(rs, &orbit, &v)?;
        if st.d_total != st.d_short + st.d_long {
            return Ok(Err(format!("D ≠ D_s + D_ℓ at {v}")));
        }
        let neg = i64::from(!v.is_nonnegative());
        match (j, rs.is_short_root(&v)) {
            (None, Some(true)) => {
                if st.d_total != neg {
                    return Ok(Err(format!("short root {v} has D = {}", st.d_total)));
                }
            }
            (None, Some(false)) => {
                let n = orbitcomb::short_root_pair_count(rs, &v).negatives as i64;
                if st.d_long != neg || st.d_short != (r - 1) * n {
                    return Ok(Err(format!(
                        "long root {v}: D_ℓ = {}, D_s = {}, n = {n}",
                        st.d_long, st.d_short
                    )));
                }
            }
            (Some(_), _) => {
                let n = orbitcomb::pair_count(rs, &v).negatives as i64;
                if st.d_total != n || st.d_long != 0 {
                    return Ok(Err(format!(
                        "pair element {v}: D = {}, n = {n}",
                        st.d_total
                    )));
                }
            }
            (None, None) => unreachable!("root orbits contain roots"),
        }
    }
    Ok(Ok(()))
}

fn component_lemmas(rs: &RootSystem, j: &JComponent) -> Result<Outcome> {
    let dom = j.dominant(rs);
    let a = orbitcomb::set_a(rs, &j.theta_sj);
    let a_set: BTreeSet<_> = a.iter().copied().collect();
    for alpha in &a {
        let image = dom - *alpha;
        if image == *alpha || !a_set.contains(&image) {
            return Ok(Err(format!("φ misbehaves at {alpha}")));
        }
    }
    if !a.len().is_multiple_of(2) || j.n_j != 1 + a.len() / 2 {
        return Ok(Err(format!("n(j) = {}, |A| = {}", j.n_j, a.len())));
    }
    if orbitcomb::pair_count(rs, &dom).count() != j.n_j {
        return Ok(Err(
            "pair count at the dominant element differs from n(j)".into()
        ));
    }
    orbitcomb::pair_orbit_size_check(rs, j)?;

    let orbit = weyl::orbit(rs, &dom)?;
    for e in orbit.elements().iter().filter(|e| e.vector.height() == 0) {
        let st = orbitcomb::d_stats(rs, &orbit, &e.vector)?;
        let n = orbitcomb::pair_count(rs, &e.vector).negatives;
        if st.d_total != j.n_j as i64 || n != j.n_j {
            return Ok(Err(format!(
                "height-zero element {}: D = {}",
                e.vector, st.d_total
            )));
        }
    }
    let k = rs.copairing(&dom, &rs.theta())?;
    let mu = dom.sub_scaled(k as i32, &rs.theta());
    let st = orbitcomb::d_stats(rs, &orbit, &mu)?;
    let expected = if rs.is_simply_laced() {
        2 * j.n_j as i64 - 1
    } else {
        j.n_j as i64
    };
    Ok(ensure(st.d_total == expected, || {
        format!("s_θ image {mu}: D = {}, expected {expected}", st.d_total)
    }))
}

/// Every exponent polynomial has nonnegative integer coefficients summing to
/// `v_λ`, and the `q = 0` coefficient sum is a polynomial.
pub fn check_structure(rs: &RootSystem) -> CheckResult {
    check(format!("structure {}", label(rs)), || {
        let mut k = Kernel::new(rs);
        for (name, lam, j) in closed_reps(rs) {
            let raw = exponents::scalar_product_q0(&mut k, &lam)?;
            let sp = match ExponentPoly::from_rat_t(&raw) {
                Ok(p) => p,
                Err(e) => return Ok(Err(format!("{name}: {e}"))),
            };
            let dual = exponents::exponents_dual_partition(rs, &lam, j.as_ref())?;
            let v = reps::weight_system(rs, &lam)?.zero_weight_multiplicity();
            if sp.num_terms() != v || dual.num_terms() != v {
                return Ok(Err(format!("{name}: v = {v}, E = {sp}")));
            }
        }
        Ok(Ok(()))
    })
}

/// Runs a suite; results come back in a fixed order.
pub fn run_suite(suite: Suite) -> Vec<CheckResult> {
    use Family::*;
    let small = suite == Suite::Small;
    let mut out = Vec::new();

    let classical = if small {
        systems(&[(A, 1..=3), (B, 2..=3), (C, 3..=3), (G, 2..=2)])
    } else {
        systems(&[
            (A, 1..=8),
            (B, 2..=8),
            (C, 3..=8),
            (D, 4..=8),
            (E, 6..=8),
            (F, 4..=4),
            (G, 2..=2),
        ])
    };
    out.extend(classical.iter().map(check_classical));

    let golden = if small {
        systems(&[(A, 3..=3), (D, 4..=4)])
    } else {
        let mut g = systems(&[(A, 3..=6), (C, 4..=6), (D, 4..=6), (E, 6..=6)]);
        if suite == Suite::Long {
            g.extend(systems(&[(E, 7..=8)]));
        }
        g
    };
    for rs in &golden {
        out.extend(check_golden(rs));
    }

    let solver = if small {
        systems(&[(A, 2..=3), (B, 2..=2), (G, 2..=2)])
    } else {
        systems(&[(A, 2..=3), (B, 2..=3), (C, 3..=3), (D, 4..=4), (G, 2..=2)])
    };
    out.extend(solver.iter().map(check_solver));

    let inversion = if small {
        systems(&[(A, 2..=2), (B, 2..=2)])
    } else {
        systems(&[(A, 2..=3), (B, 2..=2), (G, 2..=2)])
    };
    out.extend(inversion.iter().map(check_inversion));

    let rank4 = if small {
        systems(&[(A, 2..=3), (B, 2..=2), (G, 2..=2)])
    } else {
        systems(&[
            (A, 2..=4),
            (B, 2..=4),
            (C, 3..=4),
            (D, 4..=4),
            (F, 4..=4),
            (G, 2..=2),
        ])
    };
    for rs in &rank4 {
        out.extend(check_oracle(rs));
    }

    let theta = if small {
        systems(&[(A, 1..=2), (B, 2..=2), (G, 2..=2)])
    } else {
        systems(&[
            (A, 1..=4),
            (B, 2..=4),
            (C, 3..=4),
            (D, 4..=4),
            (F, 4..=4),
            (G, 2..=2),
        ])
    };
    out.extend(theta.iter().map(check_theta_sum));

    for rs in &rank4 {
        out.extend(check_lemmas(rs, true));
    }
    if !small {
        for rs in systems(&[(D, 5..=5), (E, 6..=6)]) {
            out.extend(check_lemmas(&rs, false));
        }
    }

    out.extend(rank4.iter().chain(&golden).map(check_structure));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        assert_eq!("small".parse::<Suite>().unwrap(), Suite::Small);
        assert!("huge".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suite_passes() {
        let results = run_suite(Suite::Small);
        assert!(results.len() > 20);
        for r in &results {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn golden_check_reports_mismatch_detail() {
        let rs = RootSystem::new(Family::A, 4).unwrap();
        let r = check_golden(&rs);
        assert_eq!(r.len(), 1);
        assert!(!r[0].passed);
        assert!(r[0].detail.contains("table t^2 + t^4 + t^6"));
    }
}
