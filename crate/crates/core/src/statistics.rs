//! Exclusion statistics on `W_p` for the case `n = m`.
//!
//! The first `n` creation operators create "b" particles and the last `n`
//! create "f" particles, both indexed by an orbital `1..=n`. An orbital holds
//! any number of b particles and at most one f particle, and the whole system
//! holds at most `p` particles.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::FromPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::fockspace::{FockBasis, FockError, OccupationVector, Signature};
use crate::matrix::{bracket, commutator, GradedMatrix};
use crate::operators::{classical_operators, ClassicalQ, FockOperators, OperatorError};
use crate::relations::{Checker, InstanceList, RelationId, RelationReport, Signs};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatisticsError {
    #[error("negative particle count {count} in orbital {orbital}")]
    NegativeCount { orbital: usize, count: i64 },
    #[error("the b/f split needs n = m (got n = {n}, m = {m})")]
    Unbalanced { n: usize, m: usize },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("configuration is forbidden: {0}")]
    Forbidden(ForbiddenReason),
    #[error("energy level {0} is not finite")]
    NonFiniteLevel(f64),
    #[error("malformed box string: {0}")]
    MalformedBoxes(String),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// Occupation of one orbital.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Orbital {
    pub b: u32,
    pub f: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitalConfig {
    pub p: u32,
    pub orbitals: Vec<Orbital>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ForbiddenReason {
    /// More than `p` particles in total.
    TotalExceedsOrder { total: u64, p: u32 },
    /// Two or more f particles on one orbital (1-based).
    FermiExclusion { orbital: usize, count: u32 },
}

impl fmt::Display for ForbiddenReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForbiddenReason::TotalExceedsOrder { total, p } => {
                write!(f, "{total} particles exceed the order of statistics p = {p}")
            }
            ForbiddenReason::FermiExclusion { orbital, count } => {
                write!(f, "{count} f-particles on orbital {orbital}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    Valid { saturated: bool },
    Forbidden { reason: ForbiddenReason },
}

impl OrbitalConfig {
    /// Builds a configuration from `(b_count, f_count)` pairs.
    pub fn new(p: u32, counts: &[(i64, i64)]) -> Result<Self, StatisticsError> {
        let orbitals = counts
            .iter()
            .enumerate()
            .map(|(k, &(b, f))| {
                for c in [b, f] {
                    if c < 0 {
                        return Err(StatisticsError::NegativeCount { orbital: k + 1, count: c });
                    }
                }
                Ok(Orbital { b: b as u32, f: f as u32 })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { p, orbitals })
    }

    /// Reads an occupation vector `(b_1..b_n, f_1..f_n)`.
    pub fn from_occupation(sig: &Signature, r: &OccupationVector) -> Result<Self, StatisticsError> {
        require_balanced(sig)?;
        if r.as_slice().len() != sig.rank() {
            return Err(StatisticsError::LengthMismatch { expected: sig.rank(), got: r.as_slice().len() });
        }
        let n = sig.n;
        let orbitals = (1..=n).map(|i| Orbital { b: r.get(i), f: r.get(i + n) }).collect();
        Ok(Self { p: sig.p, orbitals })
    }

    /// The occupation vector `(b_1..b_n, f_1..f_n)` and its `n = m` signature.
    pub fn to_occupation(&self) -> (Signature, OccupationVector) {
        let n = self.orbitals.len();
        let r = self.orbitals.iter().map(|o| o.b).chain(self.orbitals.iter().map(|o| o.f)).collect();
        (Signature { n, m: n, p: self.p }, OccupationVector(r))
    }

    pub fn total(&self) -> u64 {
        self.orbitals.iter().map(|o| o.b as u64 + o.f as u64).sum()
    }

    pub fn validate(&self) -> Verdict {
        let total = self.total();
        if total > self.p as u64 {
            return Verdict::Forbidden { reason: ForbiddenReason::TotalExceedsOrder { total, p: self.p } };
        }
        if let Some((k, o)) = self.orbitals.iter().enumerate().find(|(_, o)| o.f > 1) {
            return Verdict::Forbidden { reason: ForbiddenReason::FermiExclusion { orbital: k + 1, count: o.f } };
        }
        Verdict::Valid { saturated: total == self.p as u64 }
    }

    /// Per orbital, whether one more b and one more f particle could be added.
    pub fn allowed_additions(&self) -> Result<Vec<(bool, bool)>, StatisticsError> {
        match self.validate() {
            Verdict::Forbidden { reason } => Err(StatisticsError::Forbidden(reason)),
            Verdict::Valid { saturated: true } => Ok(vec![(false, false); self.orbitals.len()]),
            Verdict::Valid { saturated: false } => Ok(self.orbitals.iter().map(|o| (true, o.f == 0)).collect()),
        }
    }
}

pub fn validate_config(config: &OrbitalConfig) -> Verdict {
    config.validate()
}

pub fn allowed_additions(config: &OrbitalConfig) -> Result<Vec<(bool, bool)>, StatisticsError> {
    config.allowed_additions()
}

/// Parses a box diagram: orbitals separated by `|`, each a run of particle
/// tokens (`•` or `b` for a b particle, `◦`/`∘`/`○` or `f` for an f particle)
/// optionally prefixed by a count, as in `2b1f`. Whitespace is ignored and an
/// empty segment is an empty orbital. A leading and trailing `|` framing the
/// whole diagram is dropped.
pub fn parse_boxes(s: &str) -> Result<Vec<(i64, i64)>, StatisticsError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut body = compact.as_str();
    if body.len() > 1 && body.starts_with('|') && body.ends_with('|') {
        body = &body[1..body.len() - 1];
    }
    body.split('|').map(parse_orbital).collect()
}

fn parse_orbital(seg: &str) -> Result<(i64, i64), StatisticsError> {
    let (mut b, mut f) = (0i64, 0i64);
    let mut digits = String::new();
    for c in seg.chars() {
        if c.is_ascii_digit() {
            digits.push(c);
            continue;
        }
        let count = if digits.is_empty() {
            1
        } else {
            digits.parse::<i64>().map_err(|_| StatisticsError::MalformedBoxes(seg.to_string()))?
        };
        digits.clear();
        match c {
            '•' | 'b' | 'B' => b += count,
            '◦' | '∘' | '○' | 'f' | 'F' => f += count,
            _ => return Err(StatisticsError::MalformedBoxes(format!("unexpected {c:?} in {seg:?}"))),
        }
    }
    if !digits.is_empty() {
        return Err(StatisticsError::MalformedBoxes(format!("dangling count in {seg:?}")));
    }
    Ok((b, f))
}

fn require_balanced(sig: &Signature) -> Result<(), StatisticsError> {
    if sig.n != sig.m {
        return Err(StatisticsError::Unbalanced { n: sig.n, m: sig.m });
    }
    Ok(())
}

/// Orbital energies `ε_1..ε_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyLevels {
    epsilon: Vec<f64>,
}

impl EnergyLevels {
    pub fn new(epsilon: Vec<f64>) -> Result<Self, StatisticsError> {
        if let Some(&bad) = epsilon.iter().find(|e| !e.is_finite()) {
            return Err(StatisticsError::NonFiniteLevel(bad));
        }
        Ok(Self { epsilon })
    }

    pub fn len(&self) -> usize {
        self.epsilon.len()
    }

    pub fn is_empty(&self) -> bool {
        self.epsilon.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.epsilon
    }

    /// Exact rational value of each level (every finite float is a rational).
    pub fn to_rational(&self) -> Vec<BigRational> {
        self.epsilon.iter().map(|&e| BigRational::from_f64(e).expect("finite")).collect()
    }
}

/// `Σ_i ε_i (r_i + r_{i+n})`.
pub fn energy(r: &OccupationVector, levels: &EnergyLevels) -> Result<f64, StatisticsError> {
    let n = levels.len();
    let slots = r.as_slice();
    if slots.len() != 2 * n {
        return Err(StatisticsError::LengthMismatch { expected: 2 * n, got: slots.len() });
    }
    Ok((0..n).map(|i| levels.values()[i] * (slots[i] + slots[i + n]) as f64).sum())
}

/// Which form of the free Hamiltonian to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianForm {
    /// `Σ ε_i (⟦b_i^+, b_i^-⟧ + ⟦f_i^+, f_i^-⟧)`.
    Bracket,
    /// `Σ ε_i (H_i + H_{i+n})`.
    CartanSum,
}

/// The free Hamiltonian as a matrix at q = 1.
pub fn hamiltonian(
    ops: &FockOperators<ClassicalQ>,
    levels: &[BigRational],
    form: HamiltonianForm,
) -> Result<GradedMatrix<BigRational>, StatisticsError> {
    let sig = ops.signature();
    require_balanced(sig)?;
    if levels.len() != sig.n {
        return Err(StatisticsError::LengthMismatch { expected: sig.n, got: levels.len() });
    }
    let n = sig.n;
    let mut out = GradedMatrix::zeros(ops.dim(), Default::default());
    for (i, eps) in (1..=n).zip(levels) {
        let pair = match form {
            HamiltonianForm::Bracket => bracket(ops.a_plus(i), ops.a_minus(i))
                .and_then(|b| b.try_add(&bracket(ops.a_plus(i + n), ops.a_minus(i + n))?))
                .map_err(OperatorError::from)?,
            HamiltonianForm::CartanSum => ops.h(i).try_add(ops.h(i + n)).map_err(OperatorError::from)?,
        };
        out = out.try_add(&pair.scale(eps)).map_err(OperatorError::from)?;
    }
    Ok(out)
}

/// Checks `[H, b_i^±] = ±ε_i b_i^±` and `[H, f_i^±] = ±ε_i f_i^±` exactly at
/// q = 1 with `H` built in the given form.
pub fn verify_ladder_with_form(
    sig: Signature,
    levels: &[BigRational],
    form: HamiltonianForm,
) -> Result<Vec<RelationReport>, StatisticsError> {
    require_balanced(&sig)?;
    let ops = classical_operators(sig)?;
    let h = hamiltonian(&ops, levels, form)?;
    let n = sig.n;
    let (ops, h) = (&ops, &h);
    let mut list = InstanceList::new();
    for i in 1..=n {
        let eps = &levels[i - 1];
        for (label, slot) in [("[H,b_i]", i), ("[H,f_i]", i + n)] {
            for s in [1i8, -1] {
                list.check(RelationId::R33, label, vec![i], Signs::xi(s), move || {
                    let a = ops.a(s, slot);
                    let rhs = a.scale(&(eps * rational(s as i64)));
                    Ok((commutator(h, a)?, rhs))
                });
            }
        }
    }
    Ok(list.run(Checker::Exact)?)
}

/// Ladder identities for the bracket-form Hamiltonian.
pub fn verify_ladder_commutators(
    sig: Signature,
    levels: &EnergyLevels,
) -> Result<Vec<RelationReport>, StatisticsError> {
    verify_ladder_with_form(sig, &levels.to_rational(), HamiltonianForm::Bracket)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionFunction {
    pub beta: f64,
    pub z: f64,
    /// `⟨r_i + r_{i+n}⟩` for each orbital.
    pub mean_occupations: Vec<f64>,
}

/// Canonical partition function `Z = Σ_r exp(-β E(r))` and mean orbital
/// occupations, summed over the basis in enumeration order.
pub fn partition_function(
    basis: &FockBasis,
    levels: &EnergyLevels,
    beta: f64,
) -> Result<PartitionFunction, StatisticsError> {
    let sig = basis.signature();
    require_balanced(sig)?;
    if levels.len() != sig.n {
        return Err(StatisticsError::LengthMismatch { expected: sig.n, got: levels.len() });
    }
    let n = sig.n;
    let mut z = 0.0;
    let mut occ = vec![0.0; n];
    for r in basis.states() {
        let w = (-beta * energy(r, levels)?).exp();
        z += w;
        for (i, o) in occ.iter_mut().enumerate() {
            *o += (r.get(i + 1) + r.get(i + 1 + n)) as f64 * w;
        }
    }
    for o in &mut occ {
        *o /= z;
    }
    Ok(PartitionFunction { beta, z, mean_occupations: occ })
}

/// Number of basis states for each total particle number `N = 0..=p`.
pub fn state_count_by_total(basis: &FockBasis) -> Vec<usize> {
    basis.count_by_total()
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
