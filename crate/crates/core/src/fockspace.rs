//! The Fock basis of `W_p`.
//!
//! A basis vector is labelled by an occupation vector `(r_1, …, r_{n+m})`
//! with `r_i ≥ 0` for the `n` even (bosonic) slots, `r_i ∈ {0, 1}` for the
//! `m` odd (fermionic) slots and `Σ r_i ≤ p`. Indices are 1-based throughout
//! the public API, matching the labelling of the creation and annihilation
//! operators; the distinguished index 0 never carries an occupation number.

use std::collections::HashMap;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default upper bound on the number of basis states [`FockBasis::enumerate`] will build.
pub const DEFAULT_STATE_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error("invalid signature: n + m must be at least 1 (got n = {n}, m = {m})")]
    EmptySignature { n: usize, m: usize },
    #[error("index {index} out of range [1; {rank}]")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("Fock space has {count} states, above the cap of {cap}")]
    CapExceeded { count: u128, cap: usize },
    #[error("occupation vector {0:?} is not admissible")]
    Inadmissible(Vec<u32>),
}

/// Z₂ degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn as_u8(self) -> u8 {
        self as u8
    }

    /// `(-1)^{self}` as an integer.
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    /// Product in Z₂ (i.e. `a·b mod 2`).
    pub fn times(self, other: Parity) -> Parity {
        if self.is_odd() && other.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl From<bool> for Parity {
    fn from(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl Serialize for Parity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.as_u8())
    }
}

/// `(n, m, p)`: `sl(n+1|m)` and the order of statistics `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub n: usize,
    pub m: usize,
    pub p: u32,
}

impl Signature {
    pub fn new(n: usize, m: usize, p: u32) -> Result<Self, FockError> {
        if n + m == 0 {
            return Err(FockError::EmptySignature { n, m });
        }
        Ok(Self { n, m, p })
    }

    /// Number of creation operators, `n + m`.
    pub fn rank(&self) -> usize {
        self.n + self.m
    }

    pub fn check_index(&self, i: usize) -> Result<(), FockError> {
        if i == 0 || i > self.rank() {
            return Err(FockError::IndexOutOfRange { index: i, rank: self.rank() });
        }
        Ok(())
    }

    /// Grading `θ_i`: even for `i ≤ n`, odd for `i > n`.
    pub fn theta(&self, i: usize) -> Result<Parity, FockError> {
        self.check_index(i)?;
        Ok(self.theta_ext(i))
    }

    /// Grading on the extended range `[0; n+m]`, with `θ_0` even.
    pub fn theta_ext(&self, i: usize) -> Parity {
        Parity::from(i > self.n)
    }

    /// Closed-form count of admissible occupation vectors,
    /// `Σ_f C(m, f) · C(n + p - f, n)` over `0 ≤ f ≤ min(m, p)`.
    pub fn dimension(&self) -> u128 {
        let p = self.p as u128;
        let (n, m) = (self.n as u128, self.m as u128);
        (0..=m.min(p)).map(|f| binomial(m, f) * binomial(n + p - f, n)).sum()
    }

    pub fn is_admissible(&self, r: &[u32]) -> bool {
        r.len() == self.rank()
            && r[self.n..].iter().all(|&x| x <= 1)
            && r.iter().map(|&x| x as u64).sum::<u64>() <= self.p as u64
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, m={}, p={})", self.n, self.m, self.p)
    }
}

pub fn theta(sig: &Signature, i: usize) -> Result<Parity, FockError> {
    sig.theta(i)
}

pub fn dimension(sig: &Signature) -> u128 {
    sig.dimension()
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// Occupation numbers `(r_1, …, r_{n+m})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OccupationVector(pub Vec<u32>);

impl OccupationVector {
    pub fn vacuum(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    /// `r_i` for 1-based `i`.
    pub fn get(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Sum of `r_l` over `l < i`.
    pub fn total_before(&self, i: usize) -> u32 {
        self.0[..i - 1].iter().sum()
    }

    /// Copy with `r_i` shifted by `delta`; `None` if it would go negative.
    pub fn shifted(&self, i: usize, delta: i32) -> Option<Self> {
        let v = self.0[i - 1] as i64 + delta as i64;
        if v < 0 {
            return None;
        }
        let mut out = self.clone();
        out.0[i - 1] = v as u32;
        Some(out)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

/// Ordered basis of `W_p` with a reverse index.
#[derive(Debug, Clone)]
pub struct FockBasis {
    signature: Signature,
    states: Vec<OccupationVector>,
    index: HashMap<OccupationVector, usize>,
}

impl FockBasis {
    pub fn enumerate(sig: Signature) -> Result<Self, FockError> {
        Self::enumerate_with_cap(sig, DEFAULT_STATE_CAP)
    }

    /// Enumerates all admissible vectors in ascending lexicographic order.
    pub fn enumerate_with_cap(sig: Signature, cap: usize) -> Result<Self, FockError> {
        let count = sig.dimension();
        if count > cap as u128 {
            return Err(FockError::CapExceeded { count, cap });
        }
        let mut states = Vec::with_capacity(count as usize);
        let mut current = vec![0u32; sig.rank()];
        fill(&sig, 0, sig.p, &mut current, &mut states);
        let index = states.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        Ok(Self { signature: sig, states, index })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[OccupationVector] {
        &self.states
    }

    pub fn state(&self, k: usize) -> &OccupationVector {
        &self.states[k]
    }

    pub fn index_of(&self, r: &OccupationVector) -> Option<usize> {
        self.index.get(r).copied()
    }

    /// Position of the vacuum; always 0 in lexicographic order.
    pub fn vacuum_index(&self) -> usize {
        0
    }

    /// Eigenvalue of `H_i` on `|p; r)`: `p - (-1)^{θ_i} r_i - Σ_j r_j`.
    pub fn h_eigenvalue(&self, i: usize, r: &OccupationVector) -> Result<i64, FockError> {
        h_eigenvalue(&self.signature, i, r)
    }

    /// Number of states with `Σ r = N`, for `N = 0..=p`.
    pub fn count_by_total(&self) -> Vec<usize> {
        let mut hist = vec![0; self.signature.p as usize + 1];
        for s in &self.states {
            hist[s.total() as usize] += 1;
        }
        hist
    }
}

fn fill(sig: &Signature, slot: usize, budget: u32, current: &mut Vec<u32>, out: &mut Vec<OccupationVector>) {
    if slot == current.len() {
        out.push(OccupationVector(current.clone()));
        return;
    }
    let max = if slot < sig.n { budget } else { budget.min(1) };
    for r in 0..=max {
        current[slot] = r;
        fill(sig, slot + 1, budget - r, current, out);
    }
    current[slot] = 0;
}

pub fn enumerate(sig: Signature) -> Result<FockBasis, FockError> {
    FockBasis::enumerate(sig)
}

pub fn h_eigenvalue(sig: &Signature, i: usize, r: &OccupationVector) -> Result<i64, FockError> {
    let theta = sig.theta(i)?;
    if !sig.is_admissible(r.as_slice()) {
        return Err(FockError::Inadmissible(r.0.clone()));
    }
    Ok(sig.p as i64 - theta.sign() * r.get(i) as i64 - r.total() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n: usize, m: usize, p: u32) -> Signature {
        Signature::new(n, m, p).unwrap()
    }

    fn occ(v: &[u32]) -> OccupationVector {
        OccupationVector(v.to_vec())
    }

    #[test]
    fn theta_values() {
        assert_eq!(sig(2, 1, 0).theta(2), Ok(Parity::Even));
        assert_eq!(sig(2, 1, 0).theta(3), Ok(Parity::Odd));
        assert_eq!(sig(0, 1, 0).theta(1), Ok(Parity::Odd));
        assert!(sig(2, 1, 0).theta(0).is_err());
        assert!(sig(2, 1, 0).theta(4).is_err());
    }

    #[test]
    fn empty_signature_rejected() {
        assert_eq!(Signature::new(0, 0, 1), Err(FockError::EmptySignature { n: 0, m: 0 }));
    }

    #[test]
    fn enumerate_small() {
        let b = FockBasis::enumerate(sig(1, 1, 1)).unwrap();
        assert_eq!(b.states(), &[occ(&[0, 0]), occ(&[0, 1]), occ(&[1, 0])]);
        assert_eq!(FockBasis::enumerate(sig(3, 2, 0)).unwrap().dim(), 1);
        assert_eq!(FockBasis::enumerate(sig(2, 0, 2)).unwrap().dim(), 6);
        let b = FockBasis::enumerate(sig(0, 2, 1)).unwrap();
        assert_eq!(b.states(), &[occ(&[0, 0]), occ(&[0, 1]), occ(&[1, 0])]);
    }

    #[test]
    fn dimension_values() {
        assert_eq!(sig(1, 1, 1).dimension(), 3);
        assert_eq!(sig(0, 2, 1).dimension(), 3);
        assert_eq!(sig(4, 3, 0).dimension(), 1);
        // m > p: fermionic slots cannot all be filled.
        assert_eq!(sig(0, 5, 2).dimension(), 1 + 5 + 10);
    }

    #[test]
    fn cap_guard() {
        let err = FockBasis::enumerate_with_cap(sig(4, 0, 4), 10).unwrap_err();
        assert_eq!(err, FockError::CapExceeded { count: 70, cap: 10 });
    }

    #[test]
    fn h_eigenvalue_examples() {
        let s = sig(1, 1, 2);
        assert_eq!(h_eigenvalue(&s, 1, &occ(&[0, 0])), Ok(2));
        assert_eq!(h_eigenvalue(&s, 1, &occ(&[1, 0])), Ok(0));
        assert_eq!(h_eigenvalue(&s, 2, &occ(&[0, 1])), Ok(2));
        assert!(h_eigenvalue(&s, 3, &occ(&[0, 0])).is_err());
        assert!(h_eigenvalue(&s, 1, &occ(&[0, 2])).is_err());
    }

    #[test]
    fn histogram() {
        assert_eq!(FockBasis::enumerate(sig(1, 1, 1)).unwrap().count_by_total(), vec![1, 2]);
        assert_eq!(FockBasis::enumerate(sig(2, 0, 2)).unwrap().count_by_total(), vec![1, 2, 3]);
    }

    #[test]
    fn parity_arithmetic() {
        use Parity::*;
        assert_eq!(Odd + Odd, Even);
        assert_eq!(Odd + Even, Odd);
        assert_eq!(Odd.times(Odd), Odd);
        assert_eq!(Odd.times(Even), Even);
        assert_eq!(Odd.sign(), -1);
    }
}
