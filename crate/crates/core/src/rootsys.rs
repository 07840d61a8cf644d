//! Finite irreducible root systems in the simple-root basis.
//!
//! Everything is stored as integer coordinates over the simple roots
//! `α_1..α_n` (Bourbaki numbering). Metric data lives in the symmetrized
//! Cartan matrix `B = r·G`, where `G` is the Gram matrix normalized so that
//! long roots have `(α,α) = 2` and short roots `(α,α) = 2/r`. In simply laced
//! types every root counts as short and `r = 1`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Largest rank representable by [`LatticeVector`].
pub const MAX_RANK: usize = 8;

/// An element of the root lattice, written in the simple-root basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    rank: u8,
    coords: [i32; MAX_RANK],
}

impl LatticeVector {
    pub fn zero(rank: usize) -> Self {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds MAX_RANK");
        LatticeVector {
            rank: rank as u8,
            coords: [0; MAX_RANK],
        }
    }

    pub fn from_coords(coords: &[i32]) -> Self {
        let mut v = Self::zero(coords.len());
        v.coords[..coords.len()].copy_from_slice(coords);
        v
    }

    /// The simple root `α_i` (0-based index).
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.coords[i] = 1;
        v
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords[..self.rank as usize]
    }

    pub fn coord(&self, i: usize) -> i32 {
        self.coords[i]
    }

    pub fn set_coord(&mut self, i: usize, value: i32) {
        assert!(i < self.rank as usize);
        self.coords[i] = value;
    }

    /// Height: the sum of the simple-root coordinates.
    pub fn height(&self) -> i32 {
        self.coords().iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// True when every coordinate is `>= 0` (the cone `Q⁺`).
    pub fn is_nonnegative(&self) -> bool {
        self.coords().iter().all(|&c| c >= 0)
    }

    pub fn is_nonpositive(&self) -> bool {
        self.coords().iter().all(|&c| c <= 0)
    }

    /// `self - k·other`
    pub fn sub_scaled(&self, k: i32, other: &LatticeVector) -> LatticeVector {
        let mut out = *self;
        for i in 0..self.rank as usize {
            out.coords[i] -= k * other.coords[i];
        }
        out
    }

    fn dot(&self, row: &[i32; MAX_RANK]) -> i64 {
        self.coords()
            .iter()
            .zip(row.iter())
            .map(|(&a, &b)| a as i64 * b as i64)
            .sum()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rank()))?;
        for c in self.coords() {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

/// Parses comma separated coordinates such as `1,2,1`.
impl FromStr for LatticeVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let mut coords = Vec::new();
        let mut pos = 0;
        for part in s.split(',') {
            let value = part.trim().parse::<i32>().map_err(|e| Error::Parse {
                pos,
                msg: format!("bad coordinate {part:?}: {e}"),
            })?;
            coords.push(value);
            pos += part.len() + 1;
        }
        if coords.len() > MAX_RANK {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("at most {MAX_RANK} coordinates supported"),
            });
        }
        Ok(LatticeVector::from_coords(&coords))
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(mut self, rhs: LatticeVector) -> LatticeVector {
        self += rhs;
        self
    }
}

impl AddAssign for LatticeVector {
    fn add_assign(&mut self, rhs: LatticeVector) {
        debug_assert_eq!(self.rank, rhs.rank);
        for i in 0..MAX_RANK {
            self.coords[i] += rhs.coords[i];
        }
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(mut self, rhs: LatticeVector) -> LatticeVector {
        self -= rhs;
        self
    }
}

impl SubAssign for LatticeVector {
    fn sub_assign(&mut self, rhs: LatticeVector) {
        debug_assert_eq!(self.rank, rhs.rank);
        for i in 0..MAX_RANK {
            self.coords[i] -= rhs.coords[i];
        }
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(mut self) -> LatticeVector {
        for c in self.coords.iter_mut() {
            *c = -*c;
        }
        self
    }
}

impl Mul<LatticeVector> for i32 {
    type Output = LatticeVector;
    fn mul(self, mut rhs: LatticeVector) -> LatticeVector {
        for c in rhs.coords.iter_mut() {
            *c *= self;
        }
        rhs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown root system family {other:?}"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootSystemSpec {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Self {
        RootSystemSpec { family, rank }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self.family {
            Family::A => self.rank >= 1,
            Family::B => self.rank >= 2,
            Family::C => self.rank >= 3,
            Family::D => self.rank >= 4,
            Family::E => (6..=8).contains(&self.rank),
            Family::F => self.rank == 4,
            Family::G => self.rank == 2,
        };
        if !ok {
            return Err(Error::Inadmissible {
                family: self.family.letter(),
                rank: self.rank,
                reason: "rank not admissible for this family".into(),
            });
        }
        if self.rank > MAX_RANK {
            return Err(Error::Inadmissible {
                family: self.family.letter(),
                rank: self.rank,
                reason: format!("ranks above {MAX_RANK} are not supported"),
            });
        }
        Ok(())
    }

    /// Number of positive roots, from the classification.
    pub fn expected_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Edges of the Dynkin diagram (0-based, Bourbaki numbering).
    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A | Family::B | Family::C | Family::F | Family::G => {
                (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
            }
            Family::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// Which simple roots are long (all of them when simply laced).
    fn long_nodes(&self) -> Vec<bool> {
        let n = self.rank;
        (0..n)
            .map(|i| match self.family {
                Family::B => i + 1 < n,
                Family::C => i + 1 == n,
                Family::F => i < 2,
                Family::G => i == 1,
                _ => true,
            })
            .collect()
    }

    fn lacing(&self) -> u32 {
        match self.family {
            Family::B | Family::C | Family::F => 2,
            Family::G => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Immutable root system data.
#[derive(Debug, Clone)]
pub struct RootSystem {
    spec: RootSystemSpec,
    /// `cartan[i][j] = (α_i, α_j^∨)`
    cartan: Vec<Vec<i32>>,
    /// `r·(α_i, α_j)`, an integer matrix.
    sym: Vec<Vec<i64>>,
    r: u32,
    /// Positive roots (sorted by height, then coordinates) followed by their negatives.
    roots: Vec<LatticeVector>,
    n_pos: usize,
    index: HashMap<LatticeVector, usize>,
    short: Vec<bool>,
    /// `coroot_rows[k][i] = (α_i, β_k^∨)` for root `β_k`.
    coroot_rows: Vec<[i32; MAX_RANK]>,
    simple_short: Vec<bool>,
    theta: LatticeVector,
    theta_s: LatticeVector,
    theta_l: Option<LatticeVector>,
}

/// Builds the root system of the given type by closing the simple roots
/// under simple reflections.
pub fn build_root_system(spec: RootSystemSpec) -> Result<RootSystem> {
    spec.validate()?;
    let n = spec.rank;
    let r = spec.lacing();
    let long = spec.long_nodes();

    let mut cartan = vec![vec![0i32; n]; n];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in spec.edges() {
        for (i, j) in [(a, b), (b, a)] {
            cartan[i][j] = if r > 1 && long[i] && !long[j] {
                -(r as i32)
            } else {
                -1
            };
        }
    }
    // (α_i, α_j) = a_ij (α_j, α_j) / 2 and r(α_j, α_j)/2 is r for long, 1 for short.
    let sym: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| cartan[i][j] as i64 * if long[j] { r as i64 } else { 1 })
                .collect()
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            debug_assert_eq!(sym[i][j], sym[j][i]);
        }
    }

    // Breadth-first closure from the simple roots.
    let mut seen: HashMap<LatticeVector, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let a = LatticeVector::simple(n, i);
        seen.insert(a, ());
        queue.push_back(a);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let k: i32 = (0..n).map(|j| beta.coords[j] * cartan[j][i]).sum();
            let image = beta.sub_scaled(k, &LatticeVector::simple(n, i));
            if seen.insert(image, ()).is_none() {
                queue.push_back(image);
            }
        }
    }

    let mut positive: Vec<LatticeVector> = seen
        .keys()
        .copied()
        .filter(|v| v.is_nonnegative())
        .collect();
    positive.sort_by_key(|v| (v.height(), *v));
    if positive.len() != spec.expected_positive_roots() || seen.len() != 2 * positive.len() {
        return Err(Error::Verification(format!(
            "{spec}: generated {} positive roots out of {} total, expected {}",
            positive.len(),
            seen.len(),
            spec.expected_positive_roots()
        )));
    }
    let n_pos = positive.len();
    let mut roots = positive.clone();
    roots.extend(positive.iter().map(|v| -*v));
    let index: HashMap<_, _> = roots.iter().enumerate().map(|(k, v)| (*v, k)).collect();

    let sp = |v: &LatticeVector, w: &LatticeVector| -> i64 {
        let mut s = 0i64;
        for i in 0..n {
            if v.coords[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += v.coords[i] as i64 * sym[i][j] * w.coords[j] as i64;
            }
        }
        s
    };

    let mut short = Vec::with_capacity(roots.len());
    let mut coroot_rows = Vec::with_capacity(roots.len());
    for beta in &roots {
        let norm = sp(beta, beta);
        short.push(r == 1 || norm == 2);
        let mut row = [0i32; MAX_RANK];
        for (i, slot) in row.iter_mut().enumerate().take(n) {
            let num = 2 * sp(&LatticeVector::simple(n, i), beta);
            debug_assert_eq!(num % norm, 0);
            *slot = (num / norm) as i32;
        }
        coroot_rows.push(row);
    }

    let simple_short = (0..n).map(|i| r == 1 || !long[i]).collect();
    let theta = *positive.last().expect("nonempty");
    let theta_s = (0..n_pos)
        .rev()
        .find(|&k| short[k])
        .map(|k| roots[k])
        .expect("every root system has short roots");
    let theta_l = if r > 1 { Some(theta) } else { None };

    Ok(RootSystem {
        spec,
        cartan,
        sym,
        r,
        roots,
        n_pos,
        index,
        short,
        coroot_rows,
        simple_short,
        theta,
        theta_s,
        theta_l,
    })
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        build_root_system(RootSystemSpec::new(family, rank))
    }

    pub fn spec(&self) -> RootSystemSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    /// Lacing number `r`: 1, 2 or 3.
    pub fn lacing(&self) -> u32 {
        self.r
    }

    pub fn is_simply_laced(&self) -> bool {
        self.r == 1
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// `(α_i, α_j)`
    pub fn gram(&self, i: usize, j: usize) -> Ratio<i64> {
        Ratio::new(self.sym[i][j], self.r as i64)
    }

    pub fn gram_matrix(&self) -> Vec<Vec<Ratio<i64>>> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.gram(i, j)).collect())
            .collect()
    }

    pub fn zero(&self) -> LatticeVector {
        LatticeVector::zero(self.rank())
    }

    pub fn simple_root(&self, i: usize) -> LatticeVector {
        LatticeVector::simple(self.rank(), i)
    }

    pub fn check_rank(&self, v: &LatticeVector) -> Result<()> {
        if v.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: v.rank(),
            });
        }
        Ok(())
    }

    /// All roots: positive ones first (by height), then their negatives.
    pub fn roots(&self) -> &[LatticeVector] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[LatticeVector] {
        &self.roots[..self.n_pos]
    }

    pub fn num_positive_roots(&self) -> usize {
        self.n_pos
    }

    pub fn root_index(&self, v: &LatticeVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_root(&self, v: &LatticeVector) -> bool {
        self.index.contains_key(v)
    }

    /// Short/long marker of the root at `idx` (all roots are short when simply laced).
    pub fn is_short_index(&self, idx: usize) -> bool {
        self.short[idx]
    }

    /// `Some(true)` for short roots, `Some(false)` for long roots, `None` otherwise.
    pub fn is_short_root(&self, v: &LatticeVector) -> Option<bool> {
        self.root_index(v).map(|k| self.short[k])
    }

    pub fn is_long_root(&self, v: &LatticeVector) -> bool {
        self.is_short_root(v) == Some(false)
    }

    pub fn short_flags(&self) -> &[bool] {
        &self.short
    }

    pub fn positive_short_roots(&self) -> impl Iterator<Item = &LatticeVector> + '_ {
        self.positive_roots()
            .iter()
            .enumerate()
            .filter(|(k, _)| self.short[*k])
            .map(|(_, v)| v)
    }

    pub fn short_roots(&self) -> impl Iterator<Item = &LatticeVector> + '_ {
        self.roots
            .iter()
            .enumerate()
            .filter(|(k, _)| self.short[*k])
            .map(|(_, v)| v)
    }

    pub fn simple_root_is_short(&self, i: usize) -> bool {
        self.simple_short[i]
    }

    pub fn theta(&self) -> LatticeVector {
        self.theta
    }

    pub fn theta_s(&self) -> LatticeVector {
        self.theta_s
    }

    pub fn theta_l(&self) -> Option<LatticeVector> {
        self.theta_l
    }

    pub fn dynkin_adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    /// `r·(v, w)`, always an integer.
    pub fn scaled_pairing(&self, v: &LatticeVector, w: &LatticeVector) -> i64 {
        let n = self.rank();
        let mut s = 0i64;
        for i in 0..n {
            let vi = v.coords[i] as i64;
            if vi == 0 {
                continue;
            }
            let row = &self.sym[i];
            for j in 0..n {
                s += vi * row[j] * w.coords[j] as i64;
            }
        }
        s
    }

    /// The invariant form `(v, w)`.
    pub fn pairing(&self, v: &LatticeVector, w: &LatticeVector) -> Ratio<i64> {
        Ratio::new(self.scaled_pairing(v, w), self.r as i64)
    }

    pub fn norm2(&self, v: &LatticeVector) -> Ratio<i64> {
        self.pairing(v, v)
    }

    /// `(v, α^∨)` for a root `α`.
    pub fn copairing(&self, v: &LatticeVector, alpha: &LatticeVector) -> Result<i64> {
        let k = self.root_index(alpha).ok_or(Error::NotARoot(*alpha))?;
        Ok(self.copairing_index(v, k))
    }

    /// `(v, β^∨)` for the root with index `k`.
    pub fn copairing_index(&self, v: &LatticeVector, k: usize) -> i64 {
        v.dot(&self.coroot_rows[k])
    }

    /// `(v, α_i^∨)` for the simple root `α_i`.
    pub fn simple_copairing(&self, v: &LatticeVector, i: usize) -> i32 {
        (0..self.rank())
            .map(|j| v.coords[j] * self.cartan[j][i])
            .sum()
    }

    /// `s_α(v) = v - (v, α^∨) α`.
    pub fn reflect(&self, alpha: &LatticeVector, v: &LatticeVector) -> Result<LatticeVector> {
        let k = self.copairing(v, alpha)?;
        Ok(v.sub_scaled(k as i32, alpha))
    }

    pub fn simple_reflect(&self, i: usize, v: &LatticeVector) -> LatticeVector {
        let k = self.simple_copairing(v, i);
        let mut out = *v;
        out.coords[i] -= k;
        out
    }

    pub fn is_dominant(&self, v: &LatticeVector) -> bool {
        (0..self.rank()).all(|i| self.simple_copairing(v, i) >= 0)
    }

    /// `k ↦ h(k)`, the number of positive roots of height `k`.
    pub fn height_histogram(&self) -> BTreeMap<i32, usize> {
        let mut h = BTreeMap::new();
        for v in self.positive_roots() {
            *h.entry(v.height()).or_insert(0) += 1;
        }
        h
    }

    /// Exponents by the height-histogram rule: `k` occurs `h(k) - h(k+1)` times.
    pub fn classical_exponents(&self) -> Vec<i32> {
        let h = self.height_histogram();
        let get = |k: i32| *h.get(&k).unwrap_or(&0) as i64;
        let max = *h.keys().next_back().unwrap_or(&0);
        let mut out = Vec::new();
        for k in 1..=max {
            let m = get(k) - get(k + 1);
            assert!(m >= 0, "height histogram must be non-increasing");
            out.extend(std::iter::repeat_n(k, m as usize));
        }
        out
    }

    /// Root subsystem spanned by a subset of simple roots: the roots of `R`
    /// whose support lies in `nodes`.
    pub fn subsystem_positive_roots<'a>(
        &'a self,
        nodes: &'a [usize],
    ) -> impl Iterator<Item = (usize, &'a LatticeVector)> + 'a {
        self.positive_roots()
            .iter()
            .enumerate()
            .filter(move |(_, v)| {
                v.coords()
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || nodes.contains(&i))
            })
    }
}
