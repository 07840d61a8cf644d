//! Weyl group orbits on the root lattice.
//!
//! Words are written as products read left to right: `[i_1, .., i_p]` stands
//! for `w = s_{i_1} ⋯ s_{i_p}`, so it acts on a vector starting from the last
//! letter. Indices are 0-based.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::rootsys::{LatticeVector, RootSystem};

/// One element `λ` of an orbit together with its minimal coset data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitElement {
    pub vector: LatticeVector,
    /// `ℓ(w_λ)`
    pub length: usize,
    /// A reduced word for `w_λ`.
    pub word: Vec<usize>,
    /// Indices (into the orbit) of the elements one step lower in the orbit order.
    pub parents: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Orbit {
    dominant: LatticeVector,
    elements: Vec<OrbitElement>,
    index: HashMap<LatticeVector, usize>,
}

impl Orbit {
    pub fn dominant(&self) -> LatticeVector {
        self.dominant
    }

    /// Elements sorted by `(length, coordinates)`.
    pub fn elements(&self) -> &[OrbitElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, v: &LatticeVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn get(&self, v: &LatticeVector) -> Option<&OrbitElement> {
        self.index_of(v).map(|k| &self.elements[k])
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.index.contains_key(v)
    }

    pub fn vectors(&self) -> impl Iterator<Item = &LatticeVector> + '_ {
        self.elements.iter().map(|e| &e.vector)
    }
}

/// Enumerates the orbit of a dominant vector.
pub fn orbit(rs: &RootSystem, dominant: &LatticeVector) -> Result<Orbit> {
    orbit_bounded(rs, dominant, usize::MAX)
}

/// Like [`orbit`] but gives up once more than `limit` elements are found.
///
/// The search descends from the dominant element: `s_i(λ)` lies above `λ`
/// exactly when `(λ, α_i^∨) > 0`, and then `w_{s_i(λ)} = s_i w_λ`. Breadth
/// first levels therefore coincide with `ℓ(w_λ)`; rediscovering a vector at
/// a different level is reported as an error.
pub fn orbit_bounded(rs: &RootSystem, dominant: &LatticeVector, limit: usize) -> Result<Orbit> {
    rs.check_rank(dominant)?;
    if !rs.is_dominant(dominant) {
        return Err(Error::NotDominant(*dominant));
    }
    let n = rs.rank();
    let mut elements = vec![OrbitElement {
        vector: *dominant,
        length: 0,
        word: Vec::new(),
        parents: Vec::new(),
    }];
    let mut index = HashMap::from([(*dominant, 0usize)]);
    let mut level_start = 0;
    while level_start < elements.len() {
        let level_end = elements.len();
        for k in level_start..level_end {
            let lambda = elements[k].vector;
            let length = elements[k].length;
            for i in 0..n {
                if rs.simple_copairing(&lambda, i) <= 0 {
                    continue;
                }
                let image = rs.simple_reflect(i, &lambda);
                match index.get(&image) {
                    Some(&m) => {
                        if elements[m].length != length + 1 {
                            return Err(Error::Verification(format!(
                                "orbit of {dominant}: {image} reached at lengths {} and {}",
                                elements[m].length,
                                length + 1
                            )));
                        }
                        elements[m].parents.push(k);
                    }
                    None => {
                        if elements.len() >= limit {
                            return Err(Error::BudgetExceeded(format!(
                                "orbit of {dominant} has more than {limit} elements"
                            )));
                        }
                        let mut word = Vec::with_capacity(elements[k].word.len() + 1);
                        word.push(i);
                        word.extend_from_slice(&elements[k].word);
                        index.insert(image, elements.len());
                        elements.push(OrbitElement {
                            vector: image,
                            length: length + 1,
                            word,
                            parents: vec![k],
                        });
                    }
                }
            }
        }
        level_start = level_end;
    }

    // Re-sort by (length, coordinates) and remap parent indices.
    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_by_key(|&k| (elements[k].length, elements[k].vector));
    let mut new_pos = vec![0; elements.len()];
    for (pos, &k) in order.iter().enumerate() {
        new_pos[k] = pos;
    }
    let mut sorted: Vec<OrbitElement> = order.iter().map(|&k| elements[k].clone()).collect();
    for e in sorted.iter_mut() {
        for p in e.parents.iter_mut() {
            *p = new_pos[*p];
        }
        e.parents.sort_unstable();
    }
    let index = sorted
        .iter()
        .enumerate()
        .map(|(k, e)| (e.vector, k))
        .collect();
    Ok(Orbit {
        dominant: *dominant,
        elements: sorted,
        index,
    })
}

/// The orbit as a plain set of vectors, without words.
pub fn orbit_vectors(rs: &RootSystem, dominant: &LatticeVector) -> Vec<LatticeVector> {
    let mut seen = HashSet::from([*dominant]);
    let mut out = vec![*dominant];
    let mut queue = VecDeque::from([*dominant]);
    while let Some(v) = queue.pop_front() {
        for i in 0..rs.rank() {
            if rs.simple_copairing(&v, i) > 0 {
                let image = rs.simple_reflect(i, &v);
                if seen.insert(image) {
                    out.push(image);
                    queue.push_back(image);
                }
            }
        }
    }
    out
}

/// Returns `(λ₊, word for w_λ)`.
///
/// Repeatedly applies the lowest-index `s_i` with `(λ, α_i^∨) < 0`; each step
/// raises the height, and the letters collected form a reduced word.
pub fn dominant_rep(rs: &RootSystem, lambda: &LatticeVector) -> (LatticeVector, Vec<usize>) {
    let mut v = *lambda;
    let mut word = Vec::new();
    'outer: loop {
        for i in 0..rs.rank() {
            if rs.simple_copairing(&v, i) < 0 {
                v = rs.simple_reflect(i, &v);
                word.push(i);
                continue 'outer;
            }
        }
        break;
    }
    (v, word)
}

/// Applies `w = s_{word[0]} ⋯ s_{word[p-1]}` to `v`.
pub fn apply_word(rs: &RootSystem, word: &[usize], v: &LatticeVector) -> LatticeVector {
    word.iter()
        .rev()
        .fold(*v, |acc, &i| rs.simple_reflect(i, &acc))
}

/// Word of the inverse element.
pub fn inverse_word(word: &[usize]) -> Vec<usize> {
    word.iter().rev().copied().collect()
}

/// Inversion set `Π(w) = {α > 0 : w(α) < 0}` of a reduced word.
///
/// With `w = s_{j_p} ⋯ s_{j_1}` the inversions are
/// `s_{j_1} ⋯ s_{j_{i-1}}(α_{j_i})`; they come back in that order.
pub fn inversion_set(rs: &RootSystem, word: &[usize]) -> Result<Vec<LatticeVector>> {
    let p = word.len();
    let mut out = Vec::with_capacity(p);
    let mut seen = HashSet::with_capacity(p);
    for k in (0..p).rev() {
        let mut beta = rs.simple_root(word[k]);
        for &m in &word[k + 1..] {
            beta = rs.simple_reflect(m, &beta);
        }
        if !beta.is_nonnegative() || !seen.insert(beta) {
            return Err(Error::NonReducedWord(word.to_vec()));
        }
        out.push(beta);
    }
    Ok(out)
}
