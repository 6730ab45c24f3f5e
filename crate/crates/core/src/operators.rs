//! Representation matrices of `a_i^±`, `H_i`, `L_i`, `L̄_i` on `W_p`.
//!
//! Two basis conventions are supported:
//!
//! * [`BasisConvention::Orthonormal`]: the normalized basis `|p; r)`. Matrix
//!   elements contain square roots of q-integers, so this convention needs a
//!   numeric scalar.
//! * [`BasisConvention::Unnormalized`]: the vectors
//!   `(a_1^+)^{r_1} … (a_{n+m}^+)^{r_{n+m}} |0⟩` without the normalization
//!   factor. Every matrix element is a Laurent polynomial with integer
//!   coefficients, which is what makes exact verification possible.
//!
//! The two are related by the diagonal map `D_r = √([p]! Π[r_l]! / [p-Σr]!)`:
//! `A_orth = D · A_unnorm · D⁻¹`. See [`change_of_basis_check`].
//!
//! The scalar ring is chosen by a [`Deformation`]: generic q over the Laurent
//! ring ([`ExactQ`]), the classical point q = 1 over the rationals
//! ([`ClassicalQ`]), or a numeric complex q ([`NumericQ`]).

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::fockspace::{FockBasis, FockError, OccupationVector, Parity, Signature};
use crate::matrix::{bracket, GradedMatrix, MatrixError};
use crate::qarith::{self, is_generic_q, LaurentPoly, QArithError, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperatorError {
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Arith(#[from] QArithError),
    #[error("the orthonormal convention needs square roots; use a numeric mode")]
    SqrtUnavailable,
    #[error("this construction is only defined at q = 1")]
    DeformedMode,
    #[error("division by q - q^-1 is undefined at q = 1")]
    ClassicalDivision,
    #[error("change of basis check needs a real q > 0, got {0}")]
    NonPositiveQ(f64),
}

/// Which basis the matrices are written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisConvention {
    Orthonormal,
    Unnormalized,
}

/// The scalar ring and the value of q.
pub trait Deformation: Send + Sync {
    type Scalar: Scalar;

    fn q_pow(&self, k: i64) -> Self::Scalar;

    fn qint(&self, x: i64) -> Self::Scalar;

    /// Principal square root, if the ring has one.
    fn sqrt(&self, x: &Self::Scalar) -> Option<Self::Scalar>;

    /// `x / (q - q⁻¹)`.
    fn div_q_minus_qbar(&self, x: &Self::Scalar) -> Result<Self::Scalar, OperatorError>;

    /// True at q = 1.
    fn is_classical(&self) -> bool;

    /// True when scalar equality is exact (no rounding).
    fn is_exact(&self) -> bool;

    fn int(&self, v: i64) -> Self::Scalar {
        Self::Scalar::from_int(v)
    }
}

/// Generic q, exact Laurent polynomial scalars.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactQ;

impl Deformation for ExactQ {
    type Scalar = LaurentPoly;

    fn q_pow(&self, k: i64) -> LaurentPoly {
        LaurentPoly::q_pow(k)
    }
    fn qint(&self, x: i64) -> LaurentPoly {
        qarith::qint(x)
    }
    fn sqrt(&self, _: &LaurentPoly) -> Option<LaurentPoly> {
        None
    }
    fn div_q_minus_qbar(&self, x: &LaurentPoly) -> Result<LaurentPoly, OperatorError> {
        Ok(x.divide_exact(&qarith::q_minus_qbar())?)
    }
    fn is_classical(&self) -> bool {
        false
    }
    fn is_exact(&self) -> bool {
        true
    }
}

/// q = 1 with rational scalars; every value is the exact Laurent result
/// evaluated at q = 1.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClassicalQ;

impl Deformation for ClassicalQ {
    type Scalar = BigRational;

    fn q_pow(&self, k: i64) -> BigRational {
        LaurentPoly::q_pow(k).at_one()
    }
    fn qint(&self, x: i64) -> BigRational {
        qarith::qint(x).at_one()
    }
    fn sqrt(&self, _: &BigRational) -> Option<BigRational> {
        None
    }
    fn div_q_minus_qbar(&self, _: &BigRational) -> Result<BigRational, OperatorError> {
        Err(OperatorError::ClassicalDivision)
    }
    fn is_classical(&self) -> bool {
        true
    }
    fn is_exact(&self) -> bool {
        true
    }
}

/// Numeric complex q.
#[derive(Debug, Clone, Copy)]
pub struct NumericQ {
    q: Complex64,
}

impl NumericQ {
    /// Generic numeric q; rejects 0, 1 and -1.
    pub fn new(q: Complex64) -> Result<Self, QArithError> {
        if !is_generic_q(q) {
            return Err(QArithError::ForbiddenQ(q));
        }
        Ok(Self { q })
    }

    pub fn real(q: f64) -> Result<Self, QArithError> {
        Self::new(Complex64::new(q, 0.0))
    }

    /// q = 1 in floating point, for the classical orthonormal matrices.
    /// Constructions that divide by `q - q⁻¹` are refused.
    pub fn classical() -> Self {
        Self { q: Complex64::one() }
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }
}

impl Deformation for NumericQ {
    type Scalar = Complex64;

    fn q_pow(&self, k: i64) -> Complex64 {
        self.q.powi(k as i32)
    }
    fn qint(&self, x: i64) -> Complex64 {
        qarith::qint(x).evaluate(self.q).expect("q is nonzero")
    }
    fn sqrt(&self, x: &Complex64) -> Option<Complex64> {
        Some(x.sqrt())
    }
    fn div_q_minus_qbar(&self, x: &Complex64) -> Result<Complex64, OperatorError> {
        if self.is_classical() {
            return Err(OperatorError::ClassicalDivision);
        }
        Ok(x / (self.q - self.q.inv()))
    }
    fn is_classical(&self) -> bool {
        self.q == Complex64::one()
    }
    fn is_exact(&self) -> bool {
        false
    }
}

/// `(-1)^{θ_i (θ_1 r_1 + … + θ_{i-1} r_{i-1})}`; only odd slots before `i` count.
fn phase_sign(sig: &Signature, i: usize, r: &OccupationVector) -> i64 {
    if !sig.theta_ext(i).is_odd() {
        return 1;
    }
    let odd_before: u32 = (sig.n + 1..i).map(|l| r.get(l)).sum();
    if odd_before.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn check_convention<D: Deformation>(def: &D, convention: BasisConvention) -> Result<(), OperatorError> {
    if convention == BasisConvention::Orthonormal && def.sqrt(&def.int(1)).is_none() {
        return Err(OperatorError::SqrtUnavailable);
    }
    Ok(())
}

/// Matrix of the creation operator `a_i^+`.
pub fn build_a_plus<D: Deformation>(
    basis: &FockBasis,
    i: usize,
    def: &D,
    convention: BasisConvention,
) -> Result<GradedMatrix<D::Scalar>, OperatorError> {
    let sig = basis.signature();
    let theta = sig.theta(i)?;
    check_convention(def, convention)?;
    let mut out = GradedMatrix::zeros(basis.dim(), theta);
    for (col, r) in basis.states().iter().enumerate() {
        let ri = r.get(i);
        if theta.is_odd() && ri == 1 {
            continue;
        }
        let Some(target) = r.shifted(i, 1).and_then(|t| basis.index_of(&t)) else {
            continue;
        };
        let base = def.q_pow(-(r.total_before(i) as i64)).times(&def.int(phase_sign(sig, i, r)));
        let value = match convention {
            BasisConvention::Unnormalized => base,
            BasisConvention::Orthonormal => {
                let rad = def.qint(ri as i64 + 1).times(&def.qint(sig.p as i64 - r.total() as i64));
                base.times(&def.sqrt(&rad).ok_or(OperatorError::SqrtUnavailable)?)
            }
        };
        out.set(target, col, value);
    }
    Ok(out)
}

/// Matrix of the annihilation operator `a_i^-`.
pub fn build_a_minus<D: Deformation>(
    basis: &FockBasis,
    i: usize,
    def: &D,
    convention: BasisConvention,
) -> Result<GradedMatrix<D::Scalar>, OperatorError> {
    let sig = basis.signature();
    let theta = sig.theta(i)?;
    check_convention(def, convention)?;
    let mut out = GradedMatrix::zeros(basis.dim(), theta);
    for (col, r) in basis.states().iter().enumerate() {
        let ri = r.get(i);
        let Some(target) = r.shifted(i, -1).and_then(|t| basis.index_of(&t)) else {
            continue;
        };
        let base = def.q_pow(r.total_before(i) as i64).times(&def.int(phase_sign(sig, i, r)));
        let rad = def.qint(ri as i64).times(&def.qint(sig.p as i64 - r.total() as i64 + 1));
        let value = match convention {
            BasisConvention::Unnormalized => base.times(&rad),
            BasisConvention::Orthonormal => base.times(&def.sqrt(&rad).ok_or(OperatorError::SqrtUnavailable)?),
        };
        out.set(target, col, value);
    }
    Ok(out)
}

fn h_diagonal(basis: &FockBasis, i: usize) -> Result<Vec<i64>, OperatorError> {
    basis.states().iter().map(|r| basis.h_eigenvalue(i, r).map_err(OperatorError::from)).collect()
}

/// Diagonal Cartan generator `H_i`.
pub fn build_h<D: Deformation>(basis: &FockBasis, i: usize, def: &D) -> Result<GradedMatrix<D::Scalar>, OperatorError> {
    Ok(GradedMatrix::diagonal(h_diagonal(basis, i)?.into_iter().map(|h| def.int(h))))
}

/// `L_i = q^{H_i}`.
pub fn build_l<D: Deformation>(basis: &FockBasis, i: usize, def: &D) -> Result<GradedMatrix<D::Scalar>, OperatorError> {
    Ok(GradedMatrix::diagonal(h_diagonal(basis, i)?.into_iter().map(|h| def.q_pow(h))))
}

/// `L̄_i = q^{-H_i}`.
pub fn build_lbar<D: Deformation>(
    basis: &FockBasis,
    i: usize,
    def: &D,
) -> Result<GradedMatrix<D::Scalar>, OperatorError> {
    Ok(GradedMatrix::diagonal(h_diagonal(basis, i)?.into_iter().map(|h| def.q_pow(-h))))
}

/// All generators of one representation, built once and shared by the
/// relation checks. Families are indexed 1-based through the accessors.
#[derive(Debug, Clone)]
pub struct FockOperators<D: Deformation> {
    basis: FockBasis,
    deformation: D,
    convention: BasisConvention,
    a_plus: Vec<GradedMatrix<D::Scalar>>,
    a_minus: Vec<GradedMatrix<D::Scalar>>,
    h: Vec<GradedMatrix<D::Scalar>>,
    l: Vec<GradedMatrix<D::Scalar>>,
    lbar: Vec<GradedMatrix<D::Scalar>>,
}

impl<D: Deformation> FockOperators<D> {
    pub fn new(basis: FockBasis, deformation: D, convention: BasisConvention) -> Result<Self, OperatorError> {
        let rank = basis.signature().rank();
        let family = |f: &dyn Fn(usize) -> Result<GradedMatrix<D::Scalar>, OperatorError>| {
            (1..=rank).map(f).collect::<Result<Vec<_>, _>>()
        };
        let a_plus = family(&|i| build_a_plus(&basis, i, &deformation, convention))?;
        let a_minus = family(&|i| build_a_minus(&basis, i, &deformation, convention))?;
        let h = family(&|i| build_h(&basis, i, &deformation))?;
        let l = family(&|i| build_l(&basis, i, &deformation))?;
        let lbar = family(&|i| build_lbar(&basis, i, &deformation))?;
        Ok(Self { basis, deformation, convention, a_plus, a_minus, h, l, lbar })
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn signature(&self) -> &Signature {
        self.basis.signature()
    }

    pub fn rank(&self) -> usize {
        self.signature().rank()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn deformation(&self) -> &D {
        &self.deformation
    }

    pub fn convention(&self) -> BasisConvention {
        self.convention
    }

    pub fn theta(&self, i: usize) -> Parity {
        self.signature().theta_ext(i)
    }

    pub fn a_plus(&self, i: usize) -> &GradedMatrix<D::Scalar> {
        &self.a_plus[i - 1]
    }

    pub fn a_minus(&self, i: usize) -> &GradedMatrix<D::Scalar> {
        &self.a_minus[i - 1]
    }

    /// `a_i^η` for `η = ±1`.
    pub fn a(&self, eta: i8, i: usize) -> &GradedMatrix<D::Scalar> {
        if eta > 0 {
            self.a_plus(i)
        } else {
            self.a_minus(i)
        }
    }

    pub fn h(&self, i: usize) -> &GradedMatrix<D::Scalar> {
        &self.h[i - 1]
    }

    pub fn l(&self, i: usize) -> &GradedMatrix<D::Scalar> {
        &self.l[i - 1]
    }

    pub fn lbar(&self, i: usize) -> &GradedMatrix<D::Scalar> {
        &self.lbar[i - 1]
    }

    /// `L_i^k` for `k = ±1`.
    pub fn l_pow(&self, i: usize, k: i8) -> &GradedMatrix<D::Scalar> {
        if k > 0 {
            self.l(i)
        } else {
            self.lbar(i)
        }
    }

    /// Largest entry magnitude over all `a_i^±`, `L_i` and `L̄_i`.
    pub fn generator_scale(&self) -> f64 {
        self.a_plus
            .iter()
            .chain(&self.a_minus)
            .chain(&self.l)
            .chain(&self.lbar)
            .map(GradedMatrix::max_magnitude)
            .fold(0.0, f64::max)
    }

    pub fn identity(&self) -> GradedMatrix<D::Scalar> {
        GradedMatrix::identity(self.dim())
    }

    /// Replaces one creation operator. Used to plant defects in detector tests.
    pub fn replace_a_plus(&mut self, i: usize, m: GradedMatrix<D::Scalar>) {
        self.a_plus[i - 1] = m;
    }

    fn require_classical(&self) -> Result<(), OperatorError> {
        if !self.deformation.is_classical() {
            return Err(OperatorError::DeformedMode);
        }
        Ok(())
    }

    /// `E_{00} = diag(p - Σ r)`.
    pub fn e00(&self) -> Result<GradedMatrix<D::Scalar>, OperatorError> {
        self.require_classical()?;
        let p = self.signature().p as i64;
        Ok(GradedMatrix::diagonal(self.basis.states().iter().map(|r| self.deformation.int(p - r.total() as i64))))
    }

    /// The `gl(n+1|m)` generator `E_{ij}`, `i, j ∈ [0; n+m]`, reconstructed
    /// from the creation and annihilation operators at q = 1.
    pub fn gl_generator(&self, i: usize, j: usize) -> Result<GradedMatrix<D::Scalar>, OperatorError> {
        self.require_classical()?;
        let rank = self.rank();
        for idx in [i, j] {
            if idx > rank {
                return Err(FockError::IndexOutOfRange { index: idx, rank }.into());
            }
        }
        match (i, j) {
            (0, 0) => self.e00(),
            (i, 0) => Ok(self.a_plus(i).clone()),
            (0, j) => Ok(self.a_minus(j).clone()),
            (i, j) => {
                let b = bracket(self.a_plus(i), self.a_minus(j))?;
                if i != j {
                    return Ok(b);
                }
                let e00 = self.e00()?.scale(&self.deformation.int(self.theta(i).sign()));
                Ok(b.try_add(&e00)?.with_degree(Parity::Even))
            }
        }
    }

    /// Chevalley generators and Cartan matrix, at q = 1.
    pub fn chevalley(&self) -> Result<ChevalleySet<D::Scalar>, OperatorError> {
        self.require_classical()?;
        let rank = self.rank();
        let mut e_hat = Vec::with_capacity(rank);
        let mut f_hat = Vec::with_capacity(rank);
        let mut h_hat = Vec::with_capacity(rank);
        for i in 1..=rank {
            let (e, f) = if i == 1 {
                (self.a_minus(1).clone(), self.a_plus(1).clone())
            } else {
                (bracket(self.a_plus(i - 1), self.a_minus(i))?, bracket(self.a_plus(i), self.a_minus(i - 1))?)
            };
            h_hat.push(bracket(&e, &f)?);
            e_hat.push(e);
            f_hat.push(f);
        }
        Ok(ChevalleySet { e_hat, f_hat, h_hat, cartan: cartan_matrix(self.signature()) })
    }
}

/// Chevalley generators `ê_i, f̂_i, ĥ_i` (1-based accessors) and the Cartan matrix.
#[derive(Debug, Clone)]
pub struct ChevalleySet<S> {
    e_hat: Vec<GradedMatrix<S>>,
    f_hat: Vec<GradedMatrix<S>>,
    h_hat: Vec<GradedMatrix<S>>,
    cartan: Vec<Vec<i64>>,
}

impl<S> ChevalleySet<S> {
    pub fn e(&self, i: usize) -> &GradedMatrix<S> {
        &self.e_hat[i - 1]
    }
    pub fn f(&self, i: usize) -> &GradedMatrix<S> {
        &self.f_hat[i - 1]
    }
    pub fn h(&self, i: usize) -> &GradedMatrix<S> {
        &self.h_hat[i - 1]
    }
    /// `α_{ij}`, 1-based.
    pub fn alpha(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }
}

/// `α_{ij} = (1 + s_i) δ_{ij} - s_i δ_{i,j-1} - δ_{i-1,j}` with `s_i = (-1)^{θ_{i-1} + θ_i}`.
pub fn cartan_matrix(sig: &Signature) -> Vec<Vec<i64>> {
    let rank = sig.rank();
    (1..=rank)
        .map(|i| {
            let s = (sig.theta_ext(i - 1) + sig.theta_ext(i)).sign();
            (1..=rank)
                .map(|j| {
                    let mut a = 0;
                    if i == j {
                        a += 1 + s;
                    }
                    if i + 1 == j {
                        a -= s;
                    }
                    if i == j + 1 {
                        a -= 1;
                    }
                    a
                })
                .collect()
        })
        .collect()
}

/// Maximum entrywise deviation between the orthonormal matrices and the
/// conjugated unnormalized ones, `|D · A_unnorm · D⁻¹ - A_orth|`, over all
/// `a_i^±`, with `D_r = √([p]! Π[r_l]! / [p - Σr]!)` at the real point `q`.
pub fn change_of_basis_check(sig: Signature, q: f64) -> Result<f64, OperatorError> {
    if q.is_nan() || q <= 0.0 {
        return Err(OperatorError::NonPositiveQ(q));
    }
    let basis = FockBasis::enumerate(sig)?;
    let def = if q == 1.0 { NumericQ::classical() } else { NumericQ::real(q)? };
    let qc = Complex64::new(q, 0.0);
    let fact = |x: u32| -> Result<f64, OperatorError> { Ok(qarith::qfactorial(x as i64)?.evaluate(qc)?.re) };
    let d = basis
        .states()
        .iter()
        .map(|r| {
            let mut num = fact(sig.p)?;
            for &x in r.as_slice() {
                num *= fact(x)?;
            }
            Ok((num / fact(sig.p - r.total())?).sqrt())
        })
        .collect::<Result<Vec<f64>, OperatorError>>()?;

    let mut worst = 0.0f64;
    for i in 1..=sig.rank() {
        type Builder =
            fn(&FockBasis, usize, &NumericQ, BasisConvention) -> Result<GradedMatrix<Complex64>, OperatorError>;
        for build in [build_a_plus as Builder, build_a_minus as Builder] {
            let unnorm = build(&basis, i, &def, BasisConvention::Unnormalized)?;
            let orth = build(&basis, i, &def, BasisConvention::Orthonormal)?;
            let mut conj = GradedMatrix::zeros(basis.dim(), unnorm.degree());
            for (r, c, v) in unnorm.entries() {
                conj.set(r, c, v * (d[r] / d[c]));
            }
            worst = worst.max(conj.try_sub(&orth)?.max_magnitude());
        }
    }
    Ok(worst)
}

/// Exact unnormalized matrices specialized to q = 1.
pub fn classical_operators(sig: Signature) -> Result<FockOperators<ClassicalQ>, OperatorError> {
    FockOperators::new(FockBasis::enumerate(sig)?, ClassicalQ, BasisConvention::Unnormalized)
}

#[cfg(test)]
fn int_rational(v: i64) -> BigRational {
    <BigRational as Scalar>::from_int(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::qint;

    fn basis(n: usize, m: usize, p: u32) -> FockBasis {
        FockBasis::enumerate(Signature::new(n, m, p).unwrap()).unwrap()
    }

    fn occ(v: &[u32]) -> OccupationVector {
        OccupationVector(v.to_vec())
    }

    fn cnum(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn vacuum_column_of_a_plus() {
        let b = basis(2, 1, 3);
        let vac = b.vacuum_index();
        let q = NumericQ::real(0.7).unwrap();
        for i in 1..=3 {
            let target = b.index_of(&OccupationVector::vacuum(3).shifted(i, 1).unwrap()).unwrap();
            let orth = build_a_plus(&b, i, &q, BasisConvention::Orthonormal).unwrap();
            let expected = q.qint(3).sqrt();
            assert!((orth.get(target, vac).unwrap() - expected).norm() < 1e-14);
            let exact = build_a_plus(&b, i, &ExactQ, BasisConvention::Unnormalized).unwrap();
            assert!(exact.get(target, vac).unwrap().is_one());
            assert_eq!(exact.column(vac).len(), 1);
        }
    }

    #[test]
    fn occupied_fermionic_slot_blocks_a_plus() {
        let b = basis(1, 2, 3);
        let a = build_a_plus(&b, 2, &ExactQ, BasisConvention::Unnormalized).unwrap();
        for (col, r) in b.states().iter().enumerate() {
            if r.get(2) == 1 {
                assert!(a.column(col).is_empty(), "state {r:?}");
            }
        }
    }

    #[test]
    fn a_minus_kills_vacuum() {
        let b = basis(2, 2, 2);
        for i in 1..=4 {
            let a = build_a_minus(&b, i, &ExactQ, BasisConvention::Unnormalized).unwrap();
            assert!(a.column(b.vacuum_index()).is_empty());
        }
    }

    #[test]
    fn lowering_matrix_single_boson() {
        let b = basis(1, 0, 1);
        let a = build_a_minus(&b, 1, &NumericQ::classical(), BasisConvention::Orthonormal).unwrap();
        assert_eq!(a.nnz(), 1);
        assert_eq!(a.get(0, 1), Some(&cnum(1.0)));
    }

    #[test]
    fn unnormalized_a_minus_entry() {
        // (1,1,2), i = 2, r = (1,1): q^1 · [1] · [2 - 2 + 1] = q
        let b = basis(1, 1, 2);
        let a = build_a_minus(&b, 2, &ExactQ, BasisConvention::Unnormalized).unwrap();
        let col = b.index_of(&occ(&[1, 1])).unwrap();
        let row = b.index_of(&occ(&[1, 0])).unwrap();
        assert_eq!(a.get(row, col), Some(&LaurentPoly::q_pow(1)));
    }

    #[test]
    fn exact_orthonormal_is_rejected() {
        let b = basis(1, 1, 1);
        assert_eq!(build_a_plus(&b, 1, &ExactQ, BasisConvention::Orthonormal), Err(OperatorError::SqrtUnavailable));
        assert_eq!(
            build_a_minus(&b, 1, &ClassicalQ, BasisConvention::Orthonormal),
            Err(OperatorError::SqrtUnavailable)
        );
        assert!(build_a_plus(&b, 3, &ExactQ, BasisConvention::Unnormalized).is_err());
    }

    #[test]
    fn cartan_diagonals() {
        let b = basis(1, 1, 2);
        let vac = b.vacuum_index();
        for i in 1..=2 {
            let h = build_h(&b, i, &ExactQ).unwrap();
            assert_eq!(h.get(vac, vac), Some(&LaurentPoly::from_int(2)));
            let l = build_l(&b, i, &ExactQ).unwrap();
            let lbar = build_lbar(&b, i, &ExactQ).unwrap();
            assert_eq!(&l * &lbar, GradedMatrix::identity(b.dim()));
        }
        let k = b.index_of(&occ(&[1, 0])).unwrap();
        assert_eq!(build_h(&b, 1, &ExactQ).unwrap().get(k, k), None);
        assert!(build_l(&b, 1, &ExactQ).unwrap().get(k, k).unwrap().is_one());
    }

    #[test]
    fn cartan_matrix_sl_2_1() {
        let sig = Signature::new(1, 1, 0).unwrap();
        assert_eq!(cartan_matrix(&sig), vec![vec![2, -1], vec![-1, 0]]);
    }

    #[test]
    fn cartan_matrix_sl_3_2() {
        // Rows: α_1 even, α_2 even, α_3 odd (θ_{2,3}), α_4 even (θ_{3,4} = 0).
        let sig = Signature::new(2, 2, 0).unwrap();
        assert_eq!(
            cartan_matrix(&sig),
            vec![vec![2, -1, 0, 0], vec![-1, 2, -1, 0], vec![0, -1, 0, 1], vec![0, 0, -1, 2]]
        );
    }

    #[test]
    fn chevalley_degrees() {
        let ops = classical_operators(Signature::new(2, 2, 2).unwrap()).unwrap();
        let ch = ops.chevalley().unwrap();
        for i in 1..=4 {
            let odd = i == 3;
            assert_eq!(ch.e(i).degree().is_odd(), odd, "e_{i}");
            assert_eq!(ch.f(i).degree().is_odd(), odd, "f_{i}");
            assert!(!ch.h(i).degree().is_odd());
        }
    }

    #[test]
    fn chevalley_and_gl_need_q_one() {
        let b = basis(1, 1, 1);
        let ops = FockOperators::new(b, ExactQ, BasisConvention::Unnormalized).unwrap();
        assert_eq!(ops.chevalley().err(), Some(OperatorError::DeformedMode));
        assert_eq!(ops.gl_generator(0, 0).err(), Some(OperatorError::DeformedMode));
    }

    #[test]
    fn gl_diagonal_counts_occupation() {
        let ops = classical_operators(Signature::new(2, 1, 3).unwrap()).unwrap();
        for i in 1..=3 {
            let e = ops.gl_generator(i, i).unwrap();
            let expected = GradedMatrix::diagonal(ops.basis().states().iter().map(|r| int_rational(r.get(i) as i64)));
            assert_eq!(e, expected, "E_{i}{i}");
        }
        let p0 = classical_operators(Signature::new(1, 1, 0).unwrap()).unwrap();
        assert!(p0.gl_generator(0, 0).unwrap().is_zero());
    }

    #[test]
    fn gl_bracket_e01_e10() {
        let ops = classical_operators(Signature::new(1, 1, 2).unwrap()).unwrap();
        let lhs = bracket(&ops.gl_generator(0, 1).unwrap(), &ops.gl_generator(1, 0).unwrap()).unwrap();
        let rhs = &ops.gl_generator(0, 0).unwrap() - &ops.gl_generator(1, 1).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn change_of_basis_examples() {
        let d = change_of_basis_check(Signature::new(1, 1, 2).unwrap(), 1.0).unwrap();
        assert!(d < 1e-12, "{d}");
        let d = change_of_basis_check(Signature::new(2, 1, 3).unwrap(), 0.7).unwrap();
        assert!(d < 1e-9, "{d}");
        assert_eq!(change_of_basis_check(Signature::new(2, 1, 0).unwrap(), 0.7).unwrap(), 0.0);
        assert!(change_of_basis_check(Signature::new(1, 0, 1).unwrap(), -0.5).is_err());
        assert!(change_of_basis_check(Signature::new(1, 0, 1).unwrap(), 0.0).is_err());
    }

    #[test]
    fn numeric_qint_matches_exact() {
        let q = NumericQ::real(1.3).unwrap();
        for x in -4..=4 {
            assert!((q.qint(x) - qint(x).evaluate(cnum(1.3)).unwrap()).norm() < 1e-15);
        }
        assert_eq!(NumericQ::classical().qint(4), cnum(4.0));
    }
}
