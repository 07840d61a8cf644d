//! Generalized exponents `E(V_λ)`.
//!
//! Three routes: the dual partition of the height histogram `h`, the sum
//! `Σ m_{λγ} c_γ(0,t)` over the weights of `V_λ`, and the per-type closed
//! tables for `λ = θ_s + θ_{s,j}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::cherednik::{Kernel, Strategy};
use crate::error::{Error, Result};
use crate::orbitcomb::{self, JComponent};
use crate::qtfield::{LaurentQT, RatQT, RatT};
use crate::reps;
use crate::rootsys::{Family, LatticeVector, RootSystem};

/// A polynomial in `t` with nonnegative integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ExponentPoly {
    coeffs: BTreeMap<i32, u64>,
}

impl ExponentPoly {
    pub fn new() -> Self {
        Self::default()
    }

    /// Each exponent of the multiset contributes `t^e`.
    pub fn from_exponents<I: IntoIterator<Item = i32>>(exps: I) -> Self {
        let mut p = Self::new();
        for e in exps {
            p.add(e, 1);
        }
        p
    }

    /// Builds from signed coefficients, rejecting negative ones.
    pub fn from_signed<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Result<Self> {
        let mut acc: BTreeMap<i32, i64> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_insert(0) += c;
        }
        let mut p = Self::new();
        for (e, c) in acc {
            if c < 0 {
                return Err(Error::NonPolynomial(format!("coefficient {c} at t^{e}")));
            }
            p.add(e, c as u64);
        }
        Ok(p)
    }

    pub fn add(&mut self, exponent: i32, count: u64) {
        if count > 0 {
            *self.coeffs.entry(exponent).or_insert(0) += count;
        }
    }

    pub fn coeff(&self, exponent: i32) -> u64 {
        self.coeffs.get(&exponent).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &BTreeMap<i32, u64> {
        &self.coeffs
    }

    /// Value at `t = 1`, i.e. the number of exponents.
    pub fn num_terms(&self) -> u64 {
        self.coeffs.values().sum()
    }

    /// Exponents in ascending order, repeated by multiplicity.
    pub fn exponents(&self) -> Vec<i32> {
        self.coeffs
            .iter()
            .flat_map(|(&e, &c)| std::iter::repeat_n(e, c as usize))
            .collect()
    }

    /// Reads a specialized coefficient sum back as a polynomial.
    pub fn from_rat_t(v: &RatT) -> Result<Self> {
        let poly = v
            .as_polynomial()
            .ok_or_else(|| Error::NonPolynomial(format!("denominator survives in {v}")))?;
        let mut out = Self::new();
        for (e, c) in poly {
            if !c.is_integer() || c.is_negative() {
                return Err(Error::NonPolynomial(format!(
                    "coefficient {c} at t^{e} in {v}"
                )));
            }
            let c = c
                .to_integer()
                .to_u64()
                .ok_or_else(|| Error::NonPolynomial(format!("coefficient {c} too large")))?;
            out.add(e, c);
        }
        Ok(out)
    }

    pub fn to_ratqt(&self) -> RatQT {
        RatQT::from_laurent(LaurentQT::from_terms(self.coeffs.iter().map(|(&e, &c)| {
            (
                (0, e),
                num_rational::BigRational::from_integer((c as i64).into()),
            )
        })))
    }
}

/// Ascending powers: `t^2 + t^4 + 2*t^6`.
impl fmt::Display for ExponentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&e, &c) in &self.coeffs {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            match (c, mono.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{mono}")?,
                _ => write!(f, "{c}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// `{"exponent": coefficient}` with string keys.
impl Serialize for ExponentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.coeffs.iter().map(|(e, c)| (e.to_string(), c)))
    }
}

/// Which representation to look at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rep {
    Theta,
    ThetaS,
    /// 1-based index into the pair components.
    Pair(usize),
    Lambda(LatticeVector),
}

impl FromStr for Rep {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Unsupported(format!("unknown representation {s:?}"));
        match s {
            "theta" => Ok(Rep::Theta),
            "theta_s" => Ok(Rep::ThetaS),
            _ => {
                if let Some(k) = s.strip_prefix("pair:") {
                    k.parse().map(Rep::Pair).map_err(|_| bad())
                } else if let Some(v) = s.strip_prefix("lambda:") {
                    v.parse().map(Rep::Lambda).map_err(|_| bad())
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl Rep {
    /// Highest weight and, for pair representations, the component.
    pub fn resolve(&self, rs: &RootSystem) -> Result<(LatticeVector, Option<JComponent>)> {
        match self {
            Rep::Theta => Ok((rs.theta(), None)),
            Rep::ThetaS => Ok((rs.theta_s(), None)),
            Rep::Pair(k) => {
                let comps = orbitcomb::pair_components(rs);
                let j = k.checked_sub(1).and_then(|i| comps.get(i)).ok_or_else(|| {
                    Error::Unsupported(format!(
                        "pair:{k} out of range; {} pair component(s) here",
                        comps.len()
                    ))
                })?;
                Ok((j.dominant(rs), Some(j.clone())))
            }
            Rep::Lambda(v) => {
                rs.check_rank(v)?;
                if !rs.is_dominant(v) {
                    return Err(Error::NotDominant(*v));
                }
                let j = orbitcomb::pair_components(rs)
                    .into_iter()
                    .find(|j| j.dominant(rs) == *v);
                Ok((*v, j))
            }
        }
    }
}

/// Multiplicity of `t^i` is `h(i) - h(i+1)`.
pub fn exponents_dual_partition(
    rs: &RootSystem,
    lambda: &LatticeVector,
    j: Option<&JComponent>,
) -> Result<ExponentPoly> {
    let hist = reps::histograms(rs, lambda, j)?;
    let h = |i: i32| hist.h.get(&i).copied().unwrap_or(0);
    ExponentPoly::from_signed((1..=lambda.height()).map(|i| (i, h(i) - h(i + 1))))
}

/// `Σ_{γ ∈ wt(λ)} m_{λγ} c_γ(0,t)` before it is read back as a polynomial.
pub fn scalar_product_q0(kernel: &mut Kernel<'_>, lambda: &LatticeVector) -> Result<RatT> {
    let rs = kernel.root_system().clone();
    let ws = reps::weight_system(&rs, lambda)?;
    let mut total = RatT::zero();
    for (gamma, m) in ws.weights(&rs) {
        let c = kernel.coeff(&gamma, Strategy::Auto)?.subst_q0()?;
        total = &total + &(&c * m as i64);
    }
    Ok(total)
}

/// `E(V_λ)` from the `q = 0` coefficients; any `λ` within the solver budget.
pub fn exponents_scalar_product(
    kernel: &mut Kernel<'_>,
    lambda: &LatticeVector,
) -> Result<ExponentPoly> {
    ExponentPoly::from_rat_t(&scalar_product_q0(kernel, lambda)?)
}

fn poly(terms: &[(i32, i64)]) -> ExponentPoly {
    ExponentPoly::from_signed(terms.iter().copied()).expect("table coefficients are nonnegative")
}

#[rustfmt::skip]
const E6_TABLE: &[(i32, i64)] = &[
    (2, 1), (3, 1), (4, 1), (5, 1), (6, 2), (7, 1), (8, 2), (9, 2),
    (10, 2), (11, 1), (12, 2), (13, 1), (14, 1), (15, 1), (16, 1),
];

#[rustfmt::skip]
const E7_TABLE: &[(i32, i64)] = &[
    (2, 1), (4, 1), (6, 2), (8, 2), (10, 3), (12, 3), (14, 3),
    (16, 3), (18, 3), (20, 2), (22, 2), (24, 1), (26, 1),
];

#[rustfmt::skip]
const E8_TABLE: &[(i32, i64)] = &[
    (2, 1), (6, 1), (8, 1), (10, 1), (12, 2), (14, 2), (16, 1), (18, 3),
    (20, 2), (22, 2), (24, 3), (26, 2), (28, 2), (30, 3), (32, 1), (34, 2),
    (36, 2), (38, 1), (40, 1), (42, 1), (46, 1),
];

/// Per-type closed expression for `E(V_{θ_s + θ_{s,j}})`.
pub fn pair_table(rs: &RootSystem, j: &JComponent) -> Result<ExponentPoly> {
    let spec = rs.spec();
    let n = spec.rank as i32;
    let none = || {
        Err(Error::Unsupported(format!(
            "no pair table for {}{n}",
            spec.family.letter()
        )))
    };
    if j.is_theta_l {
        return none();
    }
    let mut t: Vec<(i32, i64)> = Vec::new();
    match spec.family {
        Family::A if n >= 3 => {
            for i in (1..).take_while(|i| 2 * i < n) {
                t.push((2 * i, i as i64));
                t.push((2 * n - 2 * i, i as i64));
            }
            for i in (1..).take_while(|i| 2 * i < n - 2) {
                t.push((2 * i + 1, i as i64));
                t.push((2 * n - 2 * i - 1, i as i64));
            }
            t.push((n, ((n - 2) / 2) as i64));
        }
        Family::C if n >= 4 => {
            for i in (1..).take_while(|i| 2 * i < n - 1) {
                t.push((4 * i, i as i64));
                t.push((4 * n - 4 * i - 4, i as i64));
            }
            for i in (1..).take_while(|i| 2 * i < n - 2) {
                t.push((4 * i + 2, i as i64));
                t.push((4 * n - 4 * i - 6, i as i64));
            }
            t.push((2 * n - 2, ((n - 3) / 2) as i64));
        }
        Family::D if n == 4 => t.extend([(2, 1), (4, 1), (6, 1)]),
        Family::D if j.n_j as i32 == n - 1 => t.extend((1..n).map(|i| (2 * i, 1))),
        Family::D if j.n_j == 3 && n % 2 == 0 => {
            let half = (n / 2) as i64;
            for i in 1..=n / 2 - 2 {
                let fl = ((i + 1) / 2) as i64;
                t.push((2 * i, fl));
                t.push((4 * n - 2 * i - 8, fl));
                t.push((2 * n - 2 * i - 6, half - fl));
                t.push((2 * n + 2 * i - 2, half - fl));
            }
            t.extend([(2 * n - 6, half), (2 * n - 4, half), (2 * n - 2, half)]);
        }
        Family::D if j.n_j == 3 => {
            for i in 1..=n - 3 {
                let fl = ((i + 1) / 2) as i64;
                t.push((2 * i, fl));
                t.push((4 * n - 2 * i - 8, fl));
            }
            for i in (n - 3) / 2..=n - 3 {
                t.push((2 * i + 1, 1));
                t.push((4 * n - 2 * i - 9, 1));
            }
            t.push((2 * n - 4, ((n - 1) / 2) as i64));
        }
        Family::E if n == 6 => t.extend_from_slice(E6_TABLE),
        Family::E if n == 7 => t.extend_from_slice(E7_TABLE),
        Family::E if n == 8 => t.extend_from_slice(E8_TABLE),
        _ => return none(),
    }
    Ok(poly(&t))
}

/// Outcome of pairing `e_i` with `e_{v+1-i}` in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub target: i32,
    /// `(e_i, e_{v+1-i})` for each `i ≤ (v+1)/2` whose sum misses the target.
    pub violations: Vec<(i32, i32)>,
}

impl SymmetryReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn symmetry_check(exps: &ExponentPoly, target: i32) -> SymmetryReport {
    let e = exps.exponents();
    let v = e.len();
    let violations = (0..v.div_ceil(2))
        .filter(|&i| e[i] + e[v - 1 - i] != target)
        .map(|i| (e[i], e[v - 1 - i]))
        .collect();
    SymmetryReport { target, violations }
}

/// Expected sum for `λ = θ` (and for `θ_s` when not simply laced).
pub fn chevalley_target(rs: &RootSystem) -> i32 {
    rs.theta().height() + 1
}

/// Expected sum for `λ = θ_s + θ_{s,j}`.
pub fn pair_target(rs: &RootSystem, j: &JComponent) -> i32 {
    rs.theta_s().height() + j.theta_sj.height() + 2
}

/// `Σ_{γ ∈ wt(θ)} m_{θγ} c_γ(q,t)`.
pub fn theta_weighted_sum(kernel: &mut Kernel<'_>) -> Result<RatQT> {
    let rs = kernel.root_system().clone();
    let ws = reps::weight_system(&rs, &rs.theta())?;
    let mut total = RatQT::zero();
    for (gamma, m) in ws.weights(&rs) {
        total = &total + &kernel.coeff(&gamma, Strategy::Auto)?.scale(m as i64);
    }
    Ok(total)
}

/// `[(Σ t^{e_i}) - q t^{ht θ} (Σ t^{-e_i})] / (1 - q t^{ht θ})`
pub fn theta_closed_form(rs: &RootSystem) -> RatQT {
    let h = rs.theta().height();
    let mut num = LaurentQT::zero();
    for e in rs.classical_exponents() {
        num = &num + &LaurentQT::term(1, 0, e);
        num = &num - &LaurentQT::term(1, 1, h - e);
    }
    RatQT::new(num, &LaurentQT::one() - &LaurentQT::term(1, 1, h)).expect("nonzero denominator")
}
