//! Occupation multi-indices and the graded-lex basis enumeration.
//!
//! A `MultiIndex` lists the occupation number of each mode; indices are
//! ordered by total degree first and, within a degree, with the earlier
//! modes dominant (so for two modes: (0,0), (1,0), (0,1), (2,0), (1,1),
//! (0,2), ...). Every dense matrix in the crate is laid out in this order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::combin::binomial;

/// Occupation-number vector over the modes; indexes the normalized
/// occupation basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex {
    exps: Vec<u32>,
}

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        assert!(!exps.is_empty(), "multi-index needs at least one mode");
        MultiIndex { exps }
    }

    /// The all-zero index on `modes` modes.
    pub fn vacuum(modes: usize) -> Self {
        MultiIndex::new(vec![0; modes])
    }

    /// Single particle in mode `k`.
    pub fn unit(modes: usize, k: usize) -> Self {
        let mut exps = vec![0; modes];
        exps[k] = 1;
        MultiIndex::new(exps)
    }

    pub fn modes(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn exponent(&self, k: usize) -> u32 {
        self.exps[k]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_vacuum(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Index with one more particle in mode `k`.
    pub fn raised(&self, k: usize) -> MultiIndex {
        let mut exps = self.exps.clone();
        exps[k] += 1;
        MultiIndex { exps }
    }

    /// Index with one particle removed from mode `k`; `None` if empty there.
    pub fn lowered(&self, k: usize) -> Option<MultiIndex> {
        if self.exps[k] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[k] -= 1;
        Some(MultiIndex { exps })
    }

    /// Entrywise sum.
    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.modes(), other.modes());
        MultiIndex {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        // degree first; within a degree the lexicographically larger
        // exponent vector (earlier modes dominant) enumerates first
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Number of multi-indices on `modes` modes with degree <= cap,
/// i.e. C(modes + cap, cap).
pub fn basis_dim(modes: usize, cap: usize) -> usize {
    binomial(modes + cap, cap).round() as usize
}

/// All multi-indices of degree <= cap in graded-lex order.
pub fn enumerate_basis(modes: usize, cap: usize) -> Vec<MultiIndex> {
    assert!(modes >= 1, "need at least one mode");
    let mut out = Vec::with_capacity(basis_dim(modes, cap));
    let mut current = vec![0u32; modes];
    for degree in 0..=cap {
        push_compositions(degree as u32, 0, &mut current, &mut out);
    }
    out
}

fn push_compositions(
    remaining: u32,
    mode: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<MultiIndex>,
) {
    let modes = current.len();
    if mode == modes - 1 {
        current[mode] = remaining;
        out.push(MultiIndex::new(current.clone()));
        current[mode] = 0;
        return;
    }
    for first in (0..=remaining).rev() {
        current[mode] = first;
        push_compositions(remaining - first, mode + 1, current, out);
    }
    current[mode] = 0;
}

/// Enumerated basis with position lookup; fixes matrix layouts.
#[derive(Clone, Debug)]
pub struct Basis {
    modes: usize,
    cap: usize,
    indices: Vec<MultiIndex>,
    positions: HashMap<MultiIndex, usize>,
}

impl Basis {
    pub fn new(modes: usize, cap: usize) -> Self {
        let indices = enumerate_basis(modes, cap);
        let positions = indices
            .iter()
            .enumerate()
            .map(|(i, idx)| (idx.clone(), i))
            .collect();
        Basis {
            modes,
            cap,
            indices,
            positions,
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn position(&self, idx: &MultiIndex) -> Option<usize> {
        self.positions.get(idx).copied()
    }

    /// Positions 0..n of all indices with degree <= d (a prefix, since the
    /// enumeration is graded).
    pub fn block_dim(&self, d: usize) -> usize {
        basis_dim(self.modes, d.min(self.cap))
    }
}

impl std::ops::Index<usize> for Basis {
    type Output = MultiIndex;

    fn index(&self, i: usize) -> &MultiIndex {
        &self.indices[i]
    }
}
