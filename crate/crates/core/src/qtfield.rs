//! Exact arithmetic in `ℚ(q,t)`.
//!
//! [`LaurentQT`] is a sparse Laurent polynomial in `q` and `t` with
//! arbitrary-precision rational coefficients. [`RatQT`] is a fraction whose
//! denominator is kept as a product of normalized polynomial factors: every
//! factor is primitive over `ℤ`, not divisible by `q` or `t`, and has a
//! positive coefficient on its lowest term. Monomials and scalars are always
//! absorbed into the numerator. There is no multivariate GCD; after each
//! operation the numerator is divided by each denominator factor for as long
//! as the division is exact. Equality is decided by cross-multiplication.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent pair `(q-exponent, t-exponent)`.
pub type Exponent = (i32, i32);

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparse Laurent polynomial in `q, t`. Terms are kept in `(q, t)` order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentQT {
    terms: BTreeMap<Exponent, BigRational>,
}

impl LaurentQT {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: BigRational, q_exp: i32, t_exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((q_exp, t_exp), c);
        }
        LaurentQT { terms }
    }

    /// `c·q^a·t^b` with an integer coefficient.
    pub fn term(c: i64, q_exp: i32, t_exp: i32) -> Self {
        Self::monomial(rat(c), q_exp, t_exp)
    }

    pub fn q() -> Self {
        Self::term(1, 1, 0)
    }

    pub fn t() -> Self {
        Self::term(1, 0, 1)
    }

    /// `t^k`
    pub fn t_pow(k: i32) -> Self {
        Self::term(1, 0, k)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, BigRational)>>(iter: I) -> Self {
        let mut p = LaurentQT::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// True when no term involves `q`.
    pub fn is_univariate_t(&self) -> bool {
        self.terms.keys().all(|&(a, _)| a == 0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical `(q, t)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, q_exp: i32, t_exp: i32) -> BigRational {
        self.terms
            .get(&(q_exp, t_exp))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn min_exponents(&self) -> Option<Exponent> {
        let a = self.terms.keys().map(|e| e.0).min()?;
        let b = self.terms.keys().map(|e| e.1).min()?;
        Some((a, b))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentQT {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, q_exp: i32, t_exp: i32) -> Self {
        LaurentQT {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| ((e.0 + q_exp, e.1 + t_exp), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Applies `(a, b) ↦ f(a, b)` to every exponent.
    fn map_exponents(&self, f: impl Fn(Exponent) -> Exponent) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (f(*e), c.clone())))
    }

    /// `q ↦ q⁻¹, t ↦ t⁻¹`
    pub fn subst_inverse(&self) -> Self {
        self.map_exponents(|(a, b)| (-a, -b))
    }

    /// `q ↦ t`
    pub fn subst_q_to_t(&self) -> Self {
        self.map_exponents(|(a, b)| (0, a + b))
    }

    /// Value at `q = 0`; `None` if some term carries a negative power of `q`.
    pub fn subst_q0(&self) -> Option<Self> {
        if self.terms.keys().any(|e| e.0 < 0) {
            return None;
        }
        Some(LaurentQT {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0 == 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        })
    }

    /// Writes `self = scalar · q^a t^b · f` with `f` a primitive integer
    /// polynomial, not divisible by `q` or `t`, whose lowest term is positive.
    fn split_content(&self) -> (BigRational, Exponent, LaurentQT) {
        let (a, b) = self.min_exponents().expect("nonzero");
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(&(c.numer() * (&l / c.denom())));
        }
        let mut scalar = BigRational::new(g, l);
        let first_negative = self.terms.values().next().expect("nonzero").is_negative();
        if first_negative {
            scalar = -scalar;
        }
        let inv = scalar.recip();
        let f = LaurentQT {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((e.0 - a, e.1 - b), c * &inv))
                .collect(),
        };
        (scalar, (a, b), f)
    }

    /// Exact division by a polynomial `f` that has no monomial factor.
    /// Returns `None` when `f` does not divide `self`.
    fn divide_exact(&self, f: &LaurentQT) -> Option<LaurentQT> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a, b) = self.min_exponents()?;
        let mut r = self.mul_monomial(-a, -b);
        let (&lead_f, lead_fc) = f.terms.iter().next_back()?;
        let mut quotient = LaurentQT::zero();
        while let Some((&lead_r, lead_rc)) = r.terms.iter().next_back() {
            if lead_r.0 < lead_f.0 || lead_r.1 < lead_f.1 {
                return None;
            }
            let e = (lead_r.0 - lead_f.0, lead_r.1 - lead_f.1);
            let c = lead_rc / lead_fc;
            r = &r - &f.mul_monomial(e.0, e.1).scale(&c);
            quotient.add_term(e, c);
        }
        Some(quotient.mul_monomial(a, b))
    }

    fn fmt_terms<'a>(
        f: &mut fmt::Formatter<'_>,
        terms: impl Iterator<Item = (&'a Exponent, &'a BigRational)>,
    ) -> fmt::Result {
        let mut first = true;
        for (&(a, b), c) in terms {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let abs = c.abs();
            let mono = format_monomial(a, b);
            match (abs.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (true, false) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `Φ_n` as a polynomial in `t`.
fn cyclotomic(n: u32) -> LaurentQT {
    let mut p = &LaurentQT::t_pow(n as i32) - &LaurentQT::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.divide_exact(&cyclotomic(d)).expect("Φ_d divides t^n - 1");
        }
    }
    p
}

/// Splits a normalized binomial `1 ± m^g` into its cyclotomic factors
/// `Φ_d(m)`, each of which is irreducible. Other factors are returned as is.
fn split_factor(f: LaurentQT) -> Vec<LaurentQT> {
    if f.len() != 2 {
        return vec![f];
    }
    let mut it = f.terms.iter();
    let (e1, c1) = it.next().expect("two terms");
    let (e2, c2) = it.next().expect("two terms");
    let c = c2 / c1;
    let plus = c.is_one();
    if !plus && !(-c).is_one() {
        return vec![f];
    }
    let (a, b) = (e2.0 - e1.0, e2.1 - e1.1);
    let g = a.unsigned_abs().gcd(&b.unsigned_abs());
    if g == 1 {
        return vec![f];
    }
    let (ma, mb) = (a / g as i32, b / g as i32);
    let orders: Vec<u32> = if plus {
        (1..=2 * g)
            .filter(|d| (2 * g) % d == 0 && g % d != 0)
            .collect()
    } else {
        (1..=g).filter(|d| g % d == 0).collect()
    };
    let parts: Vec<LaurentQT> = orders
        .into_iter()
        .map(|d| {
            let phi = cyclotomic(d).map_exponents(|(_, e)| (e * ma, e * mb));
            phi.split_content().2
        })
        .collect();
    debug_assert_eq!(
        parts.iter().fold(LaurentQT::one(), |acc, p| &acc * p),
        f,
        "cyclotomic split must reproduce the factor"
    );
    parts
}

fn format_monomial(a: i32, b: i32) -> String {
    let var = |name: char, e: i32| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    [var('q', a), var('t', b)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for LaurentQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Self::fmt_terms(f, self.terms.iter())
    }
}

impl fmt::Debug for LaurentQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &LaurentQT {
    type Output = LaurentQT;
    fn add(self, rhs: &LaurentQT) -> LaurentQT {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentQT {
    type Output = LaurentQT;
    fn sub(self, rhs: &LaurentQT) -> LaurentQT {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentQT {
    type Output = LaurentQT;
    fn mul(self, rhs: &LaurentQT) -> LaurentQT {
        let mut out = LaurentQT::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term((e1.0 + e2.0, e1.1 + e2.1), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentQT {
    type Output = LaurentQT;
    fn neg(self) -> LaurentQT {
        LaurentQT {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(LaurentQT, Add add, Sub sub, Mul mul);

impl Neg for LaurentQT {
    type Output = LaurentQT;
    fn neg(self) -> LaurentQT {
        -&self
    }
}

/// An element of `ℚ(q,t)`.
#[derive(Clone)]
pub struct RatQT {
    num: LaurentQT,
    /// Normalized, non-constant polynomial factors with multiplicities.
    den: BTreeMap<LaurentQT, u32>,
}

impl RatQT {
    pub fn zero() -> Self {
        Self::from_laurent(LaurentQT::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentQT::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(LaurentQT::term(c, 0, 0))
    }

    pub fn q() -> Self {
        Self::from_laurent(LaurentQT::q())
    }

    pub fn t() -> Self {
        Self::from_laurent(LaurentQT::t())
    }

    /// `t^k`
    pub fn t_pow(k: i32) -> Self {
        Self::from_laurent(LaurentQT::t_pow(k))
    }

    /// `c·q^a·t^b`
    pub fn monomial(c: i64, q_exp: i32, t_exp: i32) -> Self {
        Self::from_laurent(LaurentQT::term(c, q_exp, t_exp))
    }

    pub fn from_laurent(num: LaurentQT) -> Self {
        RatQT {
            num,
            den: BTreeMap::new(),
        }
    }

    /// `num / den`; fails when `den` is zero.
    pub fn new(num: LaurentQT, den: LaurentQT) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (scalar, (a, b), f) = den.split_content();
        let mut out = RatQT {
            num: num.mul_monomial(-a, -b).scale(&scalar.recip()),
            den: BTreeMap::new(),
        };
        out.insert_factor(f);
        out.reduce();
        Ok(out)
    }

    pub fn numerator(&self) -> &LaurentQT {
        &self.num
    }

    /// The denominator as a product of normalized factors.
    pub fn denominator_factors(&self) -> impl Iterator<Item = (&LaurentQT, u32)> {
        self.den.iter().map(|(f, e)| (f, *e))
    }

    /// The expanded denominator polynomial.
    pub fn denominator(&self) -> LaurentQT {
        self.den
            .iter()
            .fold(LaurentQT::one(), |acc, (f, e)| &acc * &f.pow(*e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the value is a Laurent polynomial (no denominator left).
    pub fn is_laurent(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_laurent(&self) -> Option<&LaurentQT> {
        self.is_laurent().then_some(&self.num)
    }

    fn insert_factor(&mut self, f: LaurentQT) {
        if f.is_one() {
            return;
        }
        for part in split_factor(f) {
            *self.den.entry(part).or_insert(0) += 1;
        }
    }

    /// Cancels denominator factors that divide the numerator exactly.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<LaurentQT> = self.den.keys().cloned().collect();
        for f in factors {
            let e = self.den.get_mut(&f).expect("present");
            while *e > 0 {
                match self.num.divide_exact(&f) {
                    Some(quot) => {
                        self.num = quot;
                        *e -= 1;
                    }
                    None => break,
                }
            }
            if *e == 0 {
                self.den.remove(&f);
            }
        }
    }

    /// Common denominator of two values, with the cofactors that bring each
    /// numerator over it.
    fn common_den(&self, other: &RatQT) -> (BTreeMap<LaurentQT, u32>, LaurentQT, LaurentQT) {
        let mut lcm = self.den.clone();
        for (f, &e) in &other.den {
            let slot = lcm.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        let cofactor = |den: &BTreeMap<LaurentQT, u32>| {
            lcm.iter().fold(LaurentQT::one(), |acc, (f, &e)| {
                let have = den.get(f).copied().unwrap_or(0);
                if e > have {
                    &acc * &f.pow(e - have)
                } else {
                    acc
                }
            })
        };
        let ca = cofactor(&self.den);
        let cb = cofactor(&other.den);
        (lcm, ca, cb)
    }

    fn combine(&self, other: &RatQT, negate: bool) -> RatQT {
        if self.den == other.den {
            let num = if negate {
                &self.num - &other.num
            } else {
                &self.num + &other.num
            };
            let mut out = RatQT {
                num,
                den: self.den.clone(),
            };
            out.reduce();
            return out;
        }
        let (den, ca, cb) = self.common_den(other);
        let a = &self.num * &ca;
        let b = &other.num * &cb;
        let mut out = RatQT {
            num: if negate { &a - &b } else { &a + &b },
            den,
        };
        out.reduce();
        out
    }

    pub fn inv(&self) -> Result<RatQT> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (scalar, (a, b), f) = self.num.split_content();
        let mut out = RatQT {
            num: self
                .denominator()
                .mul_monomial(-a, -b)
                .scale(&scalar.recip()),
            den: BTreeMap::new(),
        };
        out.insert_factor(f);
        out.reduce();
        Ok(out)
    }

    pub fn checked_div(&self, other: &RatQT) -> Result<RatQT> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: u32) -> RatQT {
        let mut out = RatQT::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: i64) -> RatQT {
        let mut out = RatQT {
            num: self.num.scale(&rat(c)),
            den: self.den.clone(),
        };
        out.reduce();
        out
    }

    /// Applies a ring map to numerator and every denominator factor.
    fn map_ring(
        &self,
        what: &str,
        map_num: impl Fn(&LaurentQT) -> Option<LaurentQT>,
        map_factor: impl Fn(&LaurentQT) -> LaurentQT,
    ) -> Result<RatQT> {
        let num = map_num(&self.num)
            .ok_or_else(|| Error::SingularSubstitution(format!("{what}: numerator has a pole")))?;
        let mut out = RatQT::from_laurent(num);
        for (f, &e) in &self.den {
            let g = map_factor(f);
            if g.is_zero() {
                return Err(Error::SingularSubstitution(format!(
                    "{what}: denominator factor {f} vanishes"
                )));
            }
            out = out.checked_div(&RatQT::from_laurent(g).pow(e))?;
        }
        Ok(out)
    }

    /// `q ↦ q⁻¹, t ↦ t⁻¹`
    pub fn subst_inverse(&self) -> RatQT {
        self.map_ring(
            "inverse",
            |p| Some(p.subst_inverse()),
            LaurentQT::subst_inverse,
        )
        .expect("inversion never degenerates")
    }

    /// Specialization at `q = 0`.
    pub fn subst_q0(&self) -> Result<RatT> {
        self.map_ring("q = 0", LaurentQT::subst_q0, |f| {
            f.subst_q0().expect("factors have no negative exponents")
        })
        .map(RatT)
    }

    /// Specialization `q = t`.
    pub fn subst_q_to_t(&self) -> Result<RatT> {
        self.map_ring("q = t", |p| Some(p.subst_q_to_t()), LaurentQT::subst_q_to_t)
            .map(RatT)
    }

    /// Numerator and denominator with integer coefficients, coprime contents
    /// and a positive lowest denominator term.
    pub fn integer_form(&self) -> (LaurentQT, LaurentQT) {
        let den = self.denominator();
        if self.num.is_zero() {
            return (LaurentQT::zero(), LaurentQT::one());
        }
        let mut l = BigInt::one();
        for c in self.num.terms.values() {
            l = l.lcm(c.denom());
        }
        let mut g = l.clone();
        for c in self.num.terms.values() {
            g = g.gcd(&(c.numer() * (&l / c.denom())));
        }
        let factor = BigRational::new(l, g);
        (self.num.scale(&factor), den.scale(&factor))
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, descending: bool) -> fmt::Result {
        let (num, den) = self.integer_form();
        let write_poly = |f: &mut fmt::Formatter<'_>, p: &LaurentQT| {
            if descending {
                LaurentQT::fmt_terms(f, p.terms.iter().rev())
            } else {
                LaurentQT::fmt_terms(f, p.terms.iter())
            }
        };
        if den.is_one() {
            write_poly(f, &num)
        } else {
            write!(f, "(")?;
            write_poly(f, &num)?;
            write!(f, ")/(")?;
            write_poly(f, &den)?;
            write!(f, ")")
        }
    }
}

impl From<LaurentQT> for RatQT {
    fn from(p: LaurentQT) -> Self {
        RatQT::from_laurent(p)
    }
}

impl PartialEq for RatQT {
    fn eq(&self, other: &RatQT) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let (_, ca, cb) = self.common_den(other);
        &self.num * &ca == &other.num * &cb
    }
}

impl Eq for RatQT {}

impl Add for &RatQT {
    type Output = RatQT;
    fn add(self, rhs: &RatQT) -> RatQT {
        self.combine(rhs, false)
    }
}

impl Sub for &RatQT {
    type Output = RatQT;
    fn sub(self, rhs: &RatQT) -> RatQT {
        self.combine(rhs, true)
    }
}

impl Mul for &RatQT {
    type Output = RatQT;
    fn mul(self, rhs: &RatQT) -> RatQT {
        let mut den = self.den.clone();
        for (f, &e) in &rhs.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        let mut out = RatQT {
            num: &self.num * &rhs.num,
            den,
        };
        out.reduce();
        out
    }
}

impl Neg for &RatQT {
    type Output = RatQT;
    fn neg(self) -> RatQT {
        RatQT {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_owned!(RatQT, Add add, Sub sub, Mul mul);

impl Neg for RatQT {
    type Output = RatQT;
    fn neg(self) -> RatQT {
        -&self
    }
}

/// Canonical string: terms in ascending `(q, t)` order, `(num)/(den)`.
impl fmt::Display for RatQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

impl fmt::Debug for RatQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatQT({self})")
    }
}

impl FromStr for RatQT {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).parse_rational()
    }
}

/// A rational function of `t` alone, as produced by specializing `q`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatT(RatQT);

impl RatT {
    pub fn zero() -> Self {
        RatT(RatQT::zero())
    }

    pub fn inner(&self) -> &RatQT {
        &self.0
    }

    pub fn into_inner(self) -> RatQT {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `exponent ↦ coefficient` when the value is a Laurent polynomial in `t`.
    pub fn as_polynomial(&self) -> Option<BTreeMap<i32, BigRational>> {
        self.0
            .as_laurent()
            .map(|p| p.terms().map(|(e, c)| (e.1, c.clone())).collect())
    }
}

impl Add for &RatT {
    type Output = RatT;
    fn add(self, rhs: &RatT) -> RatT {
        RatT(&self.0 + &rhs.0)
    }
}

impl Mul<i64> for &RatT {
    type Output = RatT;
    fn mul(self, rhs: i64) -> RatT {
        RatT(self.0.scale(rhs))
    }
}

/// Ordinary univariate convention: descending powers of `t`.
impl fmt::Display for RatT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(f, true)
    }
}

impl fmt::Debug for RatT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatT({self})")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits"))
    }

    fn small_integer(&mut self) -> Result<i32> {
        let neg = self.eat(b'-');
        let start = self.pos;
        let v = self.integer()?;
        let v: i32 = match i32::try_from(v) {
            Ok(v) => v,
            Err(_) => {
                self.pos = start;
                return self.err("exponent out of range");
            }
        };
        Ok(if neg { -v } else { v })
    }

    fn parse_rational(mut self) -> Result<RatQT> {
        let num = self.group()?;
        let out = if self.eat(b'/') {
            let den_pos = self.pos;
            let den = self.group()?;
            if den.is_zero() {
                self.pos = den_pos;
                return self.err("zero denominator");
            }
            RatQT::new(num, den)?
        } else {
            RatQT::from_laurent(num)
        };
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(out)
    }

    fn group(&mut self) -> Result<LaurentQT> {
        if self.eat(b'(') {
            let p = self.polynomial()?;
            self.expect(b')')?;
            Ok(p)
        } else {
            self.polynomial()
        }
    }

    fn polynomial(&mut self) -> Result<LaurentQT> {
        let mut p = LaurentQT::zero();
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let (e, c) = self.term()?;
            p.add_term(e, if negative { -c } else { c });
            if self.eat(b'+') {
                negative = false;
            } else if self.eat(b'-') {
                negative = true;
            } else {
                break;
            }
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Exponent, BigRational)> {
        let mut coeff = BigRational::one();
        let mut exps = (0, 0);
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = BigRational::from_integer(self.integer()?);
                if !self.eat(b'*') {
                    return Ok((exps, coeff));
                }
            }
            Some(b'q') | Some(b't') => {}
            _ => return self.err("expected a term"),
        }
        loop {
            let var = match self.peek() {
                Some(b'q') => 0,
                Some(b't') => 1,
                _ => return self.err("expected 'q' or 't'"),
            };
            self.pos += 1;
            let e = if self.eat(b'^') {
                self.small_integer()?
            } else {
                1
            };
            if var == 0 {
                exps.0 += e;
            } else {
                exps.1 += e;
            }
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((exps, coeff))
    }
}
