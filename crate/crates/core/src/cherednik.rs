//! Fourier coefficients `c_λ(q,t)` of the Cherednik kernel.
//!
//! Two independent routes are provided. [`Kernel::solve_orbit`] runs the
//! inductive procedure: the Demazure–Lusztig relations
//!
//! ```text
//! t·c_{s_i λ} - c_λ       = (1-t)(c_{λ-α_i} + … + c_{λ-(k-1)α_i}),   k = (λ, α_i^∨) > 0
//! t·q^k·c_λ - c_{s_θ λ}   = (1-t)(q^{k-1} c_{λ-θ} + … + q c_{λ-(k-1)θ}), k = (λ, θ^∨) > 0
//! ```
//!
//! together with `c_0 = 1` determine every coefficient. The closed forms
//! cover the orbits of short roots, long roots and `θ_s + θ_{s,j}`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbitcomb::{self, JComponent};
use crate::qtfield::{LaurentQT, RatQT};
use crate::rootsys::{LatticeVector, RootSystem};
use crate::weyl;

/// How [`Kernel::coeff`] obtains a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Closed form when one applies, otherwise the solver.
    #[default]
    Auto,
    Solver,
    Closed,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "solver" => Ok(Strategy::Solver),
            "closed" => Ok(Strategy::Closed),
            other => Err(Error::Unsupported(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Solver,
    ClosedForm,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Solver => "solver",
            Source::ClosedForm => "closed_form",
        })
    }
}

/// `a·X + b`, with `X` the coefficient at the dominant element of the orbit
/// being solved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineExpr {
    pub a: RatQT,
    pub b: RatQT,
}

impl AffineExpr {
    pub fn unknown() -> Self {
        AffineExpr {
            a: RatQT::one(),
            b: RatQT::zero(),
        }
    }

    pub fn eval(&self, x: &RatQT) -> RatQT {
        &(&self.a * x) + &self.b
    }
}

/// Computed coefficients, filled one orbit at a time.
#[derive(Debug, Clone, Default)]
pub struct CoeffTable {
    entries: HashMap<LatticeVector, (RatQT, Source)>,
}

impl CoeffTable {
    pub fn get(&self, v: &LatticeVector) -> Option<&RatQT> {
        self.entries.get(v).map(|(c, _)| c)
    }

    pub fn source(&self, v: &LatticeVector) -> Option<Source> {
        self.entries.get(v).map(|(_, s)| *s)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticeVector, &RatQT)> {
        self.entries.iter().map(|(v, (c, _))| (v, c))
    }
}

/// Limits on the orbits the solver is allowed to touch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Upper bound on `r·(λ₊, λ₊)` (an integer; long roots have value `2r`).
    pub max_norm: i64,
    pub max_orbit: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_norm: 64,
            max_orbit: 50_000,
        }
    }
}

/// `X_{θ_s} = (1 - t⁻¹)/(1 - q t^{ht θ})`
pub fn x_theta_s(rs: &RootSystem) -> RatQT {
    RatQT::new(
        &LaurentQT::one() - &LaurentQT::t_pow(-1),
        &LaurentQT::one() - &LaurentQT::term(1, 1, rs.theta().height()),
    )
    .expect("nonzero denominator")
}

/// `X_j = (1 - t^{-n(j)})/(1 - q t^{ht θ - n(j) + 1})`
pub fn x_j(rs: &RootSystem, j: &JComponent) -> RatQT {
    let n = j.n_j as i32;
    RatQT::new(
        &LaurentQT::one() - &LaurentQT::t_pow(-n),
        &LaurentQT::one() - &LaurentQT::term(1, 1, rs.theta().height() - n + 1),
    )
    .expect("nonzero denominator")
}

fn tp(k: i64) -> RatQT {
    RatQT::t_pow(k as i32)
}

fn root_form(ht: i64, d: i64, x: &RatQT) -> RatQT {
    &(&tp(ht + d) * x) + &(&tp(ht) - &tp(ht + d))
}

/// `c_λ = t^{ht λ + D_λ} X_{θ_s} + t^{ht λ} - t^{ht λ + D_λ}` for a short root.
pub fn closed_form_short(rs: &RootSystem, lambda: &LatticeVector) -> Result<RatQT> {
    rs.check_rank(lambda)?;
    if rs.is_short_root(lambda) != Some(true) {
        return Err(Error::Unsupported(format!("{lambda} is not a short root")));
    }
    let stats = orbitcomb::d_stats_of(rs, lambda)?;
    Ok(root_form(
        lambda.height() as i64,
        stats.d_total,
        &x_theta_s(rs),
    ))
}

fn check_long(rs: &RootSystem, lambda: &LatticeVector) -> Result<()> {
    rs.check_rank(lambda)?;
    if rs.is_simply_laced() {
        return Err(Error::Unsupported(
            "long-root formula needs a non-simply-laced system".into(),
        ));
    }
    if !rs.is_long_root(lambda) {
        return Err(Error::Unsupported(format!("{lambda} is not a long root")));
    }
    Ok(())
}

/// `c_λ = t^{ht λ + D_λ(ℓ)} X_{θ_s} + t^{ht λ} - t^{ht λ + D_λ(ℓ)}` for a long root.
pub fn closed_form_long(rs: &RootSystem, lambda: &LatticeVector) -> Result<RatQT> {
    check_long(rs, lambda)?;
    let stats = orbitcomb::d_stats_of(rs, lambda)?;
    Ok(root_form(
        lambda.height() as i64,
        stats.d_long,
        &x_theta_s(rs),
    ))
}

/// The long-root formula before identifying `X_θ` with `X_{θ_s}`:
/// `t^{ht+D} X_θ + (t^{ht+D(ℓ)} - t^{ht+D}) X_{θ_s} + t^{ht} - t^{ht+D(ℓ)}`.
pub fn closed_form_long_general(
    rs: &RootSystem,
    lambda: &LatticeVector,
    x_theta: &RatQT,
) -> Result<RatQT> {
    check_long(rs, lambda)?;
    let stats = orbitcomb::d_stats_of(rs, lambda)?;
    let ht = lambda.height() as i64;
    let (d, dl) = (stats.d_total, stats.d_long);
    let xs = x_theta_s(rs);
    Ok(
        &(&(&tp(ht + d) * x_theta) + &(&(&tp(ht + dl) - &tp(ht + d)) * &xs))
            + &(&tp(ht) - &tp(ht + dl)),
    )
}

/// `a_λ(t)` and `b_λ(t)` of the pair-orbit formula.
pub fn pair_ab(ht: i64, d_total: i64, d_sign: i64, n_j: i64) -> (RatQT, RatQT) {
    let h = tp(ht);
    let a =
        &h * &(&(&(&tp(d_sign) + &tp(d_total - n_j)) - &tp(d_total)) - &tp(d_sign + d_total - n_j));
    let b = &h
        * &(&(&(&RatQT::one() + &tp(d_sign + d_total - n_j)) - &tp(d_sign)) - &tp(d_total - n_j));
    (a, b)
}

/// `c_λ = t^{ht λ + D_λ} X_j X_{θ_s} + a_λ X_{θ_s} + b_λ` on the orbit of
/// `θ_s + θ_{s,j}`.
pub fn closed_form_pair(rs: &RootSystem, j: &JComponent, lambda: &LatticeVector) -> Result<RatQT> {
    rs.check_rank(lambda)?;
    if j.is_theta_l {
        return Err(Error::Unsupported(
            "pair formula excludes the component giving θ_ℓ".into(),
        ));
    }
    let dominant = j.dominant(rs);
    let (plus, _) = weyl::dominant_rep(rs, lambda);
    if plus != dominant {
        return Err(Error::NotInOrbit {
            vector: *lambda,
            dominant,
        });
    }
    let stats = orbitcomb::d_stats_of(rs, lambda)?;
    let ht = lambda.height() as i64;
    let xs = x_theta_s(rs);
    let (a, b) = pair_ab(ht, stats.d_total, stats.height_sign as i64, j.n_j as i64);
    Ok(&(&(&(&tp(ht + stats.d_total) * &x_j(rs, j)) * &xs) + &(&a * &xs)) + &b)
}

/// Closed form for `λ` if one applies: `0`, roots, and pair orbits.
pub fn closed_form(
    rs: &RootSystem,
    components: &[JComponent],
    lambda: &LatticeVector,
) -> Option<Result<RatQT>> {
    if lambda.is_zero() {
        return Some(Ok(RatQT::one()));
    }
    match rs.is_short_root(lambda) {
        Some(true) => return Some(closed_form_short(rs, lambda)),
        Some(false) => return Some(closed_form_long(rs, lambda)),
        None => {}
    }
    let (plus, _) = weyl::dominant_rep(rs, lambda);
    components
        .iter()
        .find(|j| !j.is_theta_l && j.dominant(rs) == plus)
        .map(|j| closed_form_pair(rs, j, lambda))
}

/// Coefficient engine for one root system, memoizing every solved orbit.
#[derive(Debug, Clone)]
pub struct Kernel<'a> {
    rs: &'a RootSystem,
    components: Vec<JComponent>,
    table: CoeffTable,
    budget: Budget,
}

impl<'a> Kernel<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        Self::with_budget(rs, Budget::default())
    }

    pub fn with_budget(rs: &'a RootSystem, budget: Budget) -> Self {
        let mut table = CoeffTable::default();
        table
            .entries
            .insert(rs.zero(), (RatQT::one(), Source::Solver));
        Kernel {
            rs,
            components: orbitcomb::pair_components(rs),
            table,
            budget,
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    pub fn table(&self) -> &CoeffTable {
        &self.table
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// Pair components (those whose dominant sum is not `θ_ℓ`).
    pub fn components(&self) -> &[JComponent] {
        &self.components
    }

    /// `c_λ` by the requested strategy.
    pub fn coeff(&mut self, lambda: &LatticeVector, strategy: Strategy) -> Result<RatQT> {
        self.rs.check_rank(lambda)?;
        match strategy {
            Strategy::Solver => self.solved(lambda),
            Strategy::Closed => {
                closed_form(self.rs, &self.components, lambda).unwrap_or_else(|| {
                    Err(Error::Unsupported(format!(
                        "no closed form for {lambda}: not a root or a pair-orbit element"
                    )))
                })
            }
            Strategy::Auto => {
                if let Some(c) = self.table.get(lambda) {
                    return Ok(c.clone());
                }
                match closed_form(self.rs, &self.components, lambda) {
                    Some(c) => {
                        let c = c?;
                        self.table
                            .entries
                            .entry(*lambda)
                            .or_insert((c.clone(), Source::ClosedForm));
                        Ok(c)
                    }
                    None => self.solved(lambda),
                }
            }
        }
    }

    /// `c_λ` via the solver, solving the orbit of `λ` first if needed.
    pub fn solved(&mut self, lambda: &LatticeVector) -> Result<RatQT> {
        if let Some((c, Source::Solver)) = self.table.entries.get(lambda) {
            return Ok(c.clone());
        }
        let (plus, _) = weyl::dominant_rep(self.rs, lambda);
        self.solve_orbit(&plus)?;
        Ok(self.table.entries[lambda].0.clone())
    }

    fn check_budget(&self, plus: &LatticeVector) -> Result<()> {
        let norm = self.rs.scaled_pairing(plus, plus);
        if norm > self.budget.max_norm {
            return Err(Error::BudgetExceeded(format!(
                "orbit of {plus} has norm {norm} > {}",
                self.budget.max_norm
            )));
        }
        Ok(())
    }

    /// Fills the table with the solver values on the orbit of `plus`.
    ///
    /// Returns the affine expressions found before the closing equation was
    /// solved, keyed by orbit element.
    pub fn solve_orbit(
        &mut self,
        plus: &LatticeVector,
    ) -> Result<Vec<(LatticeVector, AffineExpr)>> {
        let rs = self.rs;
        if !rs.is_dominant(plus) {
            return Err(Error::NotDominant(*plus));
        }
        if plus.is_zero() {
            return Ok(vec![(
                *plus,
                AffineExpr {
                    a: RatQT::zero(),
                    b: RatQT::one(),
                },
            )]);
        }
        if matches!(self.table.source(plus), Some(Source::Solver)) {
            let orbit = weyl::orbit_vectors(rs, plus);
            return Ok(orbit
                .into_iter()
                .map(|v| {
                    let c = self.table.entries[&v].0.clone();
                    (
                        v,
                        AffineExpr {
                            a: RatQT::zero(),
                            b: c,
                        },
                    )
                })
                .collect());
        }
        self.check_budget(plus)?;
        let orbit = weyl::orbit_bounded(rs, plus, self.budget.max_orbit)?;
        let one_minus_t = &RatQT::one() - &RatQT::t();
        let t_inv = RatQT::t_pow(-1);

        let mut exprs: Vec<Option<AffineExpr>> = vec![None; orbit.len()];
        exprs[0] = Some(AffineExpr::unknown());
        for (pos, elem) in orbit.elements().iter().enumerate() {
            let lambda = elem.vector;
            let here = exprs[pos].clone().ok_or_else(|| {
                Error::Verification(format!("orbit element {lambda} was never reached"))
            })?;
            for i in 0..rs.rank() {
                let k = rs.simple_copairing(&lambda, i);
                if k <= 0 {
                    continue;
                }
                let alpha = rs.simple_root(i);
                let mut interior = RatQT::zero();
                for m in 1..k {
                    interior = &interior + &self.solved(&lambda.sub_scaled(m, &alpha))?;
                }
                // c_{s_i λ} = t⁻¹ (c_λ + (1-t)·interior)
                let next = AffineExpr {
                    a: &t_inv * &here.a,
                    b: &t_inv * &(&here.b + &(&one_minus_t * &interior)),
                };
                let target = rs.simple_reflect(i, &lambda);
                let idx = orbit.index_of(&target).expect("orbit closed under s_i");
                match &exprs[idx] {
                    Some(prev) if *prev != next => {
                        return Err(Error::Verification(format!(
                            "path dependence at {target}: {} X + {} vs {} X + {}",
                            prev.a, prev.b, next.a, next.b
                        )));
                    }
                    Some(_) => {}
                    None => exprs[idx] = Some(next),
                }
            }
        }
        let exprs: Vec<AffineExpr> = exprs.into_iter().map(|e| e.expect("reached")).collect();

        // Closing relation at λ₊.
        let theta = rs.theta();
        let k = rs.copairing(plus, &theta)?;
        debug_assert!(k > 0);
        let mu = plus.sub_scaled(k as i32, &theta);
        let mu_expr = &exprs[orbit.index_of(&mu).expect("s_θ maps the orbit to itself")];
        let mut rhs = RatQT::zero();
        for m in 1..k {
            let c = self.solved(&plus.sub_scaled(m as i32, &theta))?;
            rhs = &rhs + &(&RatQT::monomial(1, (k - m) as i32, 0) * &c);
        }
        rhs = &one_minus_t * &rhs;
        let lhs_coeff = &RatQT::monomial(1, k as i32, 1) - &mu_expr.a;
        if lhs_coeff.is_zero() {
            return Err(Error::DegenerateClosing(*plus));
        }
        let x = (&mu_expr.b + &rhs).checked_div(&lhs_coeff)?;

        let mut out = Vec::with_capacity(orbit.len());
        for (elem, e) in orbit.elements().iter().zip(exprs) {
            self.table
                .entries
                .insert(elem.vector, (e.eval(&x), Source::Solver));
            out.push((elem.vector, e));
        }
        Ok(out)
    }
}
