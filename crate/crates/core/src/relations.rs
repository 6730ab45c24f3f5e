//! Exhaustive verification of the defining and derived relations on `W_p`.
//!
//! Every relation is instantiated over all admissible index tuples and checked
//! as a matrix identity `LHS = RHS`. In exact modes (Laurent polynomials or
//! rationals at q = 1) an instance passes iff `LHS - RHS` has no stored
//! entries. In numeric mode the residual `max|LHS - RHS|` is divided by the
//! largest entry of `LHS` and `RHS` and compared with a tolerance.
//!
//! Instances are evaluated in parallel; reports always come back in the order
//! the instances were enumerated (ascending indices, then signs).

use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::matrix::{anticommutator, bracket, commutator, q_bracket, GradedMatrix};
use crate::operators::{Deformation, FockOperators, OperatorError};
use crate::qarith::Scalar;

/// Default relative tolerance for numeric mode.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Relation families, tagged by the equation they come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RelationId {
    R19a,
    R19b,
    R19c,
    R19d,
    R19e,
    R21,
    R24,
    R25,
    R26a,
    R26b,
    /// The two forms of the Cartan–Weyl triple relation agree.
    R26ab,
    R15,
    R16,
    R7,
    R11,
    R12a,
    R12b,
    R12c,
    R12d,
    R12e,
    R20,
    R33,
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Sign parameters `ξ`, `η` of an instance, when the relation has them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Signs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<i8>,
}

impl Signs {
    pub const NONE: Signs = Signs { xi: None, eta: None };

    pub fn xi(xi: i8) -> Self {
        Signs { xi: Some(xi), eta: None }
    }

    pub fn eta(eta: i8) -> Self {
        Signs { xi: None, eta: Some(eta) }
    }

    pub fn both(xi: i8, eta: i8) -> Self {
        Signs { xi: Some(xi), eta: Some(eta) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    /// Residual is structurally zero (exact modes only).
    ExactZero,
    /// Numeric residual within tolerance.
    Residual(f64),
    /// Nonzero exact residual, or numeric residual above tolerance.
    Failed(f64),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub relation: RelationId,
    /// Which member of the family, e.g. `"[H_i,a_j^+]"`.
    pub label: &'static str,
    pub indices: Vec<usize>,
    pub signs: Signs,
    pub status: Status,
}

impl RelationReport {
    /// `Some(true)` on pass, `Some(false)` on failure, `None` when skipped.
    pub fn passed(&self) -> Option<bool> {
        match self.status {
            Status::ExactZero | Status::Residual(_) => Some(true),
            Status::Failed(_) => Some(false),
            Status::Skipped(_) => None,
        }
    }

    pub fn residual(&self) -> Option<f64> {
        match self.status {
            Status::ExactZero => Some(0.0),
            Status::Residual(r) | Status::Failed(r) => Some(r),
            Status::Skipped(_) => None,
        }
    }
}

impl Serialize for RelationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (status, note) = match &self.status {
            Status::ExactZero => ("exact_zero", None),
            Status::Residual(_) => ("residual", None),
            Status::Failed(_) => ("failed", None),
            Status::Skipped(reason) => ("skipped", Some(reason.as_str())),
        };
        let mut s = serializer.serialize_struct("RelationReport", 7)?;
        s.serialize_field("relation", &self.relation)?;
        s.serialize_field("label", self.label)?;
        s.serialize_field("indices", &self.indices)?;
        s.serialize_field("signs", &self.signs)?;
        s.serialize_field("status", status)?;
        s.serialize_field("residual", &self.residual())?;
        if let Some(note) = note {
            s.serialize_field("reason", note)?;
        } else {
            s.skip_field("reason")?;
        }
        s.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(reports: &[RelationReport]) -> Self {
        let mut out = Summary::default();
        for r in reports {
            match r.passed() {
                Some(true) => out.passed += 1,
                Some(false) => out.failed += 1,
                None => out.skipped += 1,
            }
        }
        out
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Worst residual per relation family, in `RelationId` order.
pub fn worst_by_relation(reports: &[RelationReport]) -> Vec<(RelationId, Summary, f64)> {
    let mut out: std::collections::BTreeMap<RelationId, (Summary, f64)> = Default::default();
    for r in reports {
        let e = out.entry(r.relation).or_default();
        match r.passed() {
            Some(true) => e.0.passed += 1,
            Some(false) => e.0.failed += 1,
            None => e.0.skipped += 1,
        }
        if let Some(res) = r.residual() {
            e.1 = e.1.max(res);
        }
    }
    out.into_iter().map(|(k, (s, w))| (k, s, w)).collect()
}

/// Decides whether `LHS = RHS`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Checker {
    Exact,
    Numeric { tolerance: f64 },
}

impl Checker {
    pub fn for_deformation<D: Deformation>(def: &D, tolerance: f64) -> Self {
        if def.is_exact() {
            Checker::Exact
        } else {
            Checker::Numeric { tolerance }
        }
    }

    pub fn compare<S: Scalar>(&self, lhs: &GradedMatrix<S>, rhs: &GradedMatrix<S>) -> Status {
        self.compare_with_floor(lhs, rhs, 0.0)
    }

    /// Like [`Checker::compare`], but the numeric residual is divided by at
    /// least `floor`, so that two sides which both vanish up to rounding are
    /// measured against the size of the matrices they were built from.
    pub fn compare_with_floor<S: Scalar>(&self, lhs: &GradedMatrix<S>, rhs: &GradedMatrix<S>, floor: f64) -> Status {
        let diff = match lhs.try_sub(rhs) {
            Ok(d) => d,
            Err(_) => return Status::Failed(f64::INFINITY),
        };
        let scale = lhs.max_magnitude().max(rhs.max_magnitude()).max(floor);
        let residual = if diff.is_zero() {
            0.0
        } else if scale > 0.0 {
            diff.max_magnitude() / scale
        } else {
            diff.max_magnitude()
        };
        match self {
            Checker::Exact if diff.is_zero() => Status::ExactZero,
            Checker::Exact => Status::Failed(residual),
            Checker::Numeric { tolerance } if residual <= *tolerance => Status::Residual(residual),
            Checker::Numeric { .. } => Status::Failed(residual),
        }
    }
}

type Pair<S> = (GradedMatrix<S>, GradedMatrix<S>);
type Eval<'a, S> = Box<dyn Fn() -> Result<Pair<S>, OperatorError> + Send + Sync + 'a>;

enum Job<'a, S> {
    Check(Eval<'a, S>),
    Skip(String),
}

struct Instance<'a, S> {
    relation: RelationId,
    label: &'static str,
    indices: Vec<usize>,
    signs: Signs,
    job: Job<'a, S>,
}

/// Ordered list of relation instances awaiting evaluation.
pub(crate) struct InstanceList<'a, S> {
    items: Vec<Instance<'a, S>>,
    floor: f64,
}

impl<'a, S: Scalar> InstanceList<'a, S> {
    pub(crate) fn new() -> Self {
        Self { items: Vec::new(), floor: 0.0 }
    }

    pub(crate) fn with_floor(floor: f64) -> Self {
        Self { items: Vec::new(), floor }
    }

    pub(crate) fn check<F>(
        &mut self,
        relation: RelationId,
        label: &'static str,
        indices: Vec<usize>,
        signs: Signs,
        f: F,
    ) where
        F: Fn() -> Result<Pair<S>, OperatorError> + Send + Sync + 'a,
    {
        self.items.push(Instance { relation, label, indices, signs, job: Job::Check(Box::new(f)) });
    }

    pub(crate) fn skip(&mut self, relation: RelationId, label: &'static str, reason: impl Into<String>) {
        self.items.push(Instance {
            relation,
            label,
            indices: Vec::new(),
            signs: Signs::NONE,
            job: Job::Skip(reason.into()),
        });
    }

    pub(crate) fn run(self, checker: Checker) -> Result<Vec<RelationReport>, OperatorError> {
        let floor = self.floor;
        self.items
            .into_par_iter()
            .map(|inst| {
                let status = match &inst.job {
                    Job::Check(f) => {
                        let (lhs, rhs) = f()?;
                        checker.compare_with_floor(&lhs, &rhs, floor)
                    }
                    Job::Skip(reason) => Status::Skipped(reason.clone()),
                };
                Ok(RelationReport {
                    relation: inst.relation,
                    label: inst.label,
                    indices: inst.indices,
                    signs: inst.signs,
                    status,
                })
            })
            .collect()
    }
}

/// `ε(j,k,i)`: 1 if `j > k > i`, -1 if `j < k < i`, 0 otherwise.
pub fn order_sign(j: usize, k: usize, i: usize) -> i64 {
    if j > k && k > i {
        1
    } else if j < k && k < i {
        -1
    } else {
        0
    }
}

fn delta(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

const SIGNS: [i8; 2] = [1, -1];

struct Ctx<'a, D: Deformation> {
    ops: &'a FockOperators<D>,
}

impl<'a, D: Deformation> Ctx<'a, D> {
    fn int(&self, v: i64) -> D::Scalar {
        self.ops.deformation().int(v)
    }

    fn q(&self, k: i64) -> D::Scalar {
        self.ops.deformation().q_pow(k)
    }

    fn zero(&self) -> GradedMatrix<D::Scalar> {
        GradedMatrix::zeros(self.ops.dim(), crate::fockspace::Parity::Even)
    }

    fn theta_sign(&self, i: usize) -> i64 {
        self.ops.theta(i).sign()
    }

    /// `(L - L̄) / (q - q⁻¹)` on the diagonal.
    fn l_quotient(&self, i: usize) -> Result<GradedMatrix<D::Scalar>, OperatorError> {
        let diff = self.ops.l(i).try_sub(self.ops.lbar(i))?;
        let mut out = GradedMatrix::zeros(self.ops.dim(), diff.degree());
        for (r, c, v) in diff.entries() {
            out.set(r, c, self.ops.deformation().div_q_minus_qbar(v)?);
        }
        Ok(out)
    }

    /// `(q - q⁻¹)`.
    fn q_minus_qbar(&self) -> D::Scalar {
        self.q(1).minus(&self.q(-1))
    }
}

fn require_generic_q<D: Deformation>(ops: &FockOperators<D>) -> Result<(), OperatorError> {
    if ops.deformation().is_classical() {
        return Err(OperatorError::ClassicalDivision);
    }
    Ok(())
}

fn require_classical<D: Deformation>(ops: &FockOperators<D>) -> Result<(), OperatorError> {
    if !ops.deformation().is_classical() {
        return Err(OperatorError::DeformedMode);
    }
    Ok(())
}

fn push_cartan_diagonal_relations<'a, D: Deformation>(list: &mut InstanceList<'a, D::Scalar>, cx: &'a Ctx<'a, D>) {
    let rank = cx.ops.rank();
    for i in 1..=rank {
        for j in 1..=rank {
            list.check(RelationId::R19a, "[H_i,H_j]=0", vec![i, j], Signs::NONE, move || {
                Ok((commutator(cx.ops.h(i), cx.ops.h(j))?, cx.zero()))
            });
        }
    }
    for i in 1..=rank {
        for j in 1..=rank {
            for s in SIGNS {
                let label = if s > 0 { "[H_i,a_j^+]" } else { "[H_i,a_j^-]" };
                list.check(RelationId::R19b, label, vec![i, j], Signs::xi(s), move || {
                    let a = cx.ops.a(s, j);
                    let c = -(s as i64) * (1 + cx.theta_sign(i) * delta(i, j));
                    Ok((commutator(cx.ops.h(i), a)?, a.scale(&cx.int(c))))
                });
            }
        }
    }
}

fn push_anticommutator_cartan<'a, D: Deformation>(
    list: &mut InstanceList<'a, D::Scalar>,
    cx: &'a Ctx<'a, D>,
    relation: RelationId,
) {
    for i in 1..=cx.ops.rank() {
        list.check(relation, "[[a_i^-,a_i^+]]=(L_i-Lbar_i)/(q-qbar)", vec![i], Signs::NONE, move || {
            Ok((bracket(cx.ops.a_minus(i), cx.ops.a_plus(i))?, cx.l_quotient(i)?))
        });
    }
}

fn push_q_supercommutation<'a, D: Deformation>(
    list: &mut InstanceList<'a, D::Scalar>,
    cx: &'a Ctx<'a, D>,
    relation: RelationId,
) {
    let rank = cx.ops.rank();
    if rank < 2 {
        list.skip(relation, "[[a_i,a_j]]_q=0", "needs n+m >= 2");
        return;
    }
    for i in 1..=rank {
        for j in i + 1..=rank {
            for eta in SIGNS {
                list.check(relation, "[[a_i,a_j]]_q=0", vec![i, j], Signs::eta(eta), move || {
                    Ok((q_bracket(cx.ops.a(eta, i), cx.ops.a(eta, j), &cx.q(1))?, cx.zero()))
                });
            }
        }
    }
}

/// Left side of the triple relation,
/// `⟦⟦a_i^η, a_j^{-η}⟧, a_k^η⟧_{q^{ξ(1 + (-1)^{θ_i} δ_{ik})}}`.
fn triple_lhs<D: Deformation>(
    cx: &Ctx<'_, D>,
    i: usize,
    j: usize,
    k: usize,
    xi: i8,
    eta: i8,
) -> Result<GradedMatrix<D::Scalar>, OperatorError> {
    let inner = bracket(cx.ops.a(eta, i), cx.ops.a(-eta, j))?;
    let exp = xi as i64 * (1 + cx.theta_sign(i) * delta(i, k));
    Ok(q_bracket(&inner, cx.ops.a(eta, k), &cx.q(exp))?)
}

/// `η^{θ_j} δ_{jk} L_k^{-ξη} a_i^η`.
fn triple_diagonal_term<D: Deformation>(
    cx: &Ctx<'_, D>,
    i: usize,
    j: usize,
    k: usize,
    xi: i8,
    eta: i8,
) -> Result<GradedMatrix<D::Scalar>, OperatorError> {
    if j != k {
        return Ok(cx.zero());
    }
    let sign = if cx.ops.theta(j).is_odd() { eta as i64 } else { 1 };
    let m = cx.ops.l_pow(k, -xi * eta).try_mul(cx.ops.a(eta, i))?;
    Ok(m.scale(&cx.int(sign)))
}

/// Checks the defining relations of the deformed algebra in terms of
/// creation and annihilation operators, together with the q-supercommutation
/// of equal-type operators.
pub fn verify_deformed_defining<D: Deformation>(
    ops: &FockOperators<D>,
    tolerance: f64,
) -> Result<Vec<RelationReport>, OperatorError> {
    require_generic_q(ops)?;
    let cx = Ctx { ops };
    let rank = ops.rank();
    let mut list = InstanceList::with_floor(ops.generator_scale());

    push_cartan_diagonal_relations(&mut list, &cx);
    push_anticommutator_cartan(&mut list, &cx, RelationId::R19c);

    for i in 1..=rank {
        for xi in SIGNS {
            let Some(j) = i.checked_add_signed(xi as isize).filter(|&j| (1..=rank).contains(&j)) else {
                continue;
            };
            for k in 1..=rank {
                for eta in SIGNS {
                    let cx = &cx;
                    list.check(
                        RelationId::R19d,
                        "[[[a_i,a_(i+xi)]],a_k]]_q",
                        vec![i, j, k],
                        Signs::both(xi, eta),
                        move || Ok((triple_lhs(cx, i, j, k, xi, eta)?, triple_diagonal_term(cx, i, j, k, xi, eta)?)),
                    );
                }
            }
        }
    }
    if rank < 2 {
        list.skip(RelationId::R19e, "[[a_1,a_2]]_q=0", "needs n+m >= 2");
    }
    for xi in SIGNS {
        let cx = &cx;
        if rank >= 2 {
            list.check(RelationId::R19e, "[[a_1,a_2]]_q=0", vec![1, 2], Signs::xi(xi), move || {
                Ok((q_bracket(cx.ops.a(xi, 1), cx.ops.a(xi, 2), &cx.q(1))?, cx.zero()))
            });
        }
        list.check(RelationId::R19e, "[[a_1,a_1]]=0", vec![1, 1], Signs::xi(xi), move || {
            Ok((bracket(cx.ops.a(xi, 1), cx.ops.a(xi, 1))?, cx.zero()))
        });
    }
    push_q_supercommutation(&mut list, &cx, RelationId::R21);

    list.run(Checker::for_deformation(ops.deformation(), tolerance))
}

/// Checks the `L`-relations, the Cartan relation with the q-supercommutation
/// rule, and both forms of the Cartan–Weyl triple relation for all
/// `i ≠ j` (with `ξ = sign(j - i)`), all `k` and both `η`.
pub fn verify_cartan_weyl<D: Deformation>(
    ops: &FockOperators<D>,
    tolerance: f64,
) -> Result<Vec<RelationReport>, OperatorError> {
    require_generic_q(ops)?;
    let cx = Ctx { ops };
    let rank = ops.rank();
    let mut list = InstanceList::with_floor(ops.generator_scale());
    let cx_ref = &cx;

    for i in 1..=rank {
        list.check(RelationId::R24, "L_i*Lbar_i=1", vec![i], Signs::NONE, move || {
            Ok((cx_ref.ops.l(i).try_mul(cx_ref.ops.lbar(i))?, cx_ref.ops.identity()))
        });
        list.check(RelationId::R24, "Lbar_i*L_i=1", vec![i], Signs::NONE, move || {
            Ok((cx_ref.ops.lbar(i).try_mul(cx_ref.ops.l(i))?, cx_ref.ops.identity()))
        });
    }
    for i in 1..=rank {
        for j in 1..=rank {
            list.check(RelationId::R24, "L_i*L_j=L_j*L_i", vec![i, j], Signs::NONE, move || {
                Ok((cx_ref.ops.l(i).try_mul(cx_ref.ops.l(j))?, cx_ref.ops.l(j).try_mul(cx_ref.ops.l(i))?))
            });
            for s in SIGNS {
                let label = if s > 0 { "L_i*a_j^+" } else { "L_i*a_j^-" };
                list.check(RelationId::R24, label, vec![i, j], Signs::xi(s), move || {
                    let a = cx_ref.ops.a(s, j);
                    let exp = -(s as i64) * (1 + cx_ref.theta_sign(i) * delta(i, j));
                    let rhs = a.try_mul(cx_ref.ops.l(i))?.scale(&cx_ref.q(exp));
                    Ok((cx_ref.ops.l(i).try_mul(a)?, rhs))
                });
            }
        }
    }
    push_anticommutator_cartan(&mut list, &cx, RelationId::R25);
    push_q_supercommutation(&mut list, &cx, RelationId::R25);

    for i in 1..=rank {
        for j in 1..=rank {
            if i == j {
                continue;
            }
            let xi: i8 = if j > i { 1 } else { -1 };
            for k in 1..=rank {
                let eps = order_sign(j, k, i);
                for eta in SIGNS {
                    let forms = move || -> Result<[GradedMatrix<D::Scalar>; 3], OperatorError> {
                        let cx = cx_ref;
                        let lhs = triple_lhs(cx, i, j, k, xi, eta)?;
                        let diag = triple_diagonal_term(cx, i, j, k, xi, eta)?;
                        if eps == 0 {
                            return Ok([lhs, diag.clone(), diag]);
                        }
                        let inner = bracket(cx.ops.a(eta, k), cx.ops.a(-eta, j))?;
                        let a_i = cx.ops.a(eta, i);
                        let qq = cx.q_minus_qbar();
                        let ca = cx.int(cx.theta_sign(k) * eps).times(&qq);
                        let odd_kj = cx.ops.theta(k).times(cx.ops.theta(j)).sign();
                        let cb = cx.int(odd_kj * eps).times(&cx.q(xi as i64)).times(&qq);
                        let form_a = diag.try_add(&inner.try_mul(a_i)?.scale(&ca))?;
                        let form_b = diag.try_add(&a_i.try_mul(&inner)?.scale(&cb))?;
                        Ok([lhs, form_a, form_b])
                    };
                    let signs = Signs::both(xi, eta);
                    let idx = vec![i, j, k];
                    list.check(RelationId::R26a, "lhs=diag+eps*[[a_k,a_j]]a_i", idx.clone(), signs, move || {
                        let [lhs, a, _] = forms()?;
                        Ok((lhs, a))
                    });
                    list.check(RelationId::R26b, "lhs=diag+eps*a_i[[a_k,a_j]]", idx.clone(), signs, move || {
                        let [lhs, _, b] = forms()?;
                        Ok((lhs, b))
                    });
                    list.check(RelationId::R26ab, "form_a=form_b", idx, signs, move || {
                        let [_, a, b] = forms()?;
                        Ok((a, b))
                    });
                }
            }
        }
    }

    list.run(Checker::for_deformation(ops.deformation(), tolerance))
}

/// Checks the undeformed triple relations for all `i, j, k` and the
/// supercommutation of equal-type operators. Instances with `|i - j| ≤ 1`
/// (and the `a_1, a_2` supercommutators) are repeated under the restricted
/// family tag [`RelationId::R16`].
pub fn verify_classical<D: Deformation>(
    ops: &FockOperators<D>,
    tolerance: f64,
) -> Result<Vec<RelationReport>, OperatorError> {
    require_classical(ops)?;
    let cx = Ctx { ops };
    let cx_ref = &cx;
    let rank = ops.rank();
    let mut list = InstanceList::with_floor(ops.generator_scale());

    for i in 1..=rank {
        for j in 1..=rank {
            for xi in SIGNS {
                list.check(RelationId::R15, "[[a_i,a_j]]=0", vec![i, j], Signs::xi(xi), move || {
                    Ok((bracket(cx_ref.ops.a(xi, i), cx_ref.ops.a(xi, j))?, cx_ref.zero()))
                });
            }
        }
    }
    for i in 1..=rank {
        for j in 1..=rank {
            for k in 1..=rank {
                list.check(RelationId::R15, "[[[a_i^+,a_j^-]],a_k^-]]", vec![i, j, k], Signs::NONE, move || {
                    let cx = cx_ref;
                    let inner = bracket(cx.ops.a_plus(i), cx.ops.a_minus(j))?;
                    let lhs = bracket(&inner, cx.ops.a_minus(k))?;
                    let theta_ij = cx.ops.theta(i) + cx.ops.theta(j);
                    let c1 = -theta_ij.times(cx.ops.theta(k)).sign() * delta(i, k);
                    let c2 = -cx.theta_sign(i) * delta(i, j);
                    let rhs = cx.ops.a_minus(j).scale(&cx.int(c1)).try_add(&cx.ops.a_minus(k).scale(&cx.int(c2)))?;
                    Ok((lhs, rhs))
                });
                list.check(RelationId::R15, "[[[a_i^+,a_j^-]],a_k^+]]", vec![i, j, k], Signs::NONE, move || {
                    let cx = cx_ref;
                    let inner = bracket(cx.ops.a_plus(i), cx.ops.a_minus(j))?;
                    let lhs = bracket(&inner, cx.ops.a_plus(k))?;
                    let c1 = delta(j, k);
                    let c2 = cx.theta_sign(i) * delta(i, j);
                    let rhs = cx.ops.a_plus(i).scale(&cx.int(c1)).try_add(&cx.ops.a_plus(k).scale(&cx.int(c2)))?;
                    Ok((lhs, rhs))
                });
            }
        }
    }

    let full = list.run(Checker::for_deformation(ops.deformation(), tolerance))?;
    let restricted: Vec<RelationReport> = full
        .iter()
        .filter(|r| match r.indices.as_slice() {
            [i, j] => *i == 1 && (*j == 1 || *j == 2),
            [i, j, _] => i.abs_diff(*j) <= 1,
            _ => false,
        })
        .map(|r| RelationReport { relation: RelationId::R16, ..r.clone() })
        .collect();
    Ok(full.into_iter().chain(restricted).collect())
}

/// Builds the Chevalley generators at q = 1 and checks the Cartan–Kac
/// relations and the Serre relations wherever their index windows exist.
pub fn verify_serre<D: Deformation>(
    ops: &FockOperators<D>,
    tolerance: f64,
) -> Result<Vec<RelationReport>, OperatorError> {
    require_classical(ops)?;
    let ch = ops.chevalley()?;
    let cx = Ctx { ops };
    let (ch, cx) = (&ch, &cx);
    let rank = ops.rank();
    let n = ops.signature().n;
    let m = ops.signature().m;
    let mut list = InstanceList::with_floor(ops.generator_scale());

    for i in 1..=rank {
        for j in 1..=rank {
            list.check(RelationId::R11, "[h_i,h_j]=0", vec![i, j], Signs::NONE, move || {
                Ok((commutator(ch.h(i), ch.h(j))?, cx.zero()))
            });
            list.check(RelationId::R11, "[h_i,e_j]=a_ij*e_j", vec![i, j], Signs::NONE, move || {
                Ok((commutator(ch.h(i), ch.e(j))?, ch.e(j).scale(&cx.int(ch.alpha(i, j)))))
            });
            list.check(RelationId::R11, "[h_i,f_j]=-a_ij*f_j", vec![i, j], Signs::NONE, move || {
                Ok((commutator(ch.h(i), ch.f(j))?, ch.f(j).scale(&cx.int(-ch.alpha(i, j)))))
            });
            list.check(RelationId::R11, "[[e_i,f_j]]=d_ij*h_i", vec![i, j], Signs::NONE, move || {
                let rhs = if i == j { ch.h(i).clone() } else { cx.zero() };
                Ok((bracket(ch.e(i), ch.f(j))?, rhs))
            });
        }
    }
    for i in 1..=rank {
        for j in 1..=rank {
            if i.abs_diff(j) == 1 {
                continue;
            }
            list.check(RelationId::R12a, "[e_i,e_j]=0", vec![i, j], Signs::NONE, move || {
                Ok((commutator(ch.e(i), ch.e(j))?, cx.zero()))
            });
            list.check(RelationId::R12a, "[f_i,f_j]=0", vec![i, j], Signs::NONE, move || {
                Ok((commutator(ch.f(i), ch.f(j))?, cx.zero()))
            });
        }
    }

    if m >= 1 {
        let odd = n + 1;
        list.check(RelationId::R12b, "e_(n+1)^2=0", vec![odd], Signs::NONE, move || {
            Ok((ch.e(odd).try_mul(ch.e(odd))?, cx.zero()))
        });
        list.check(RelationId::R12b, "f_(n+1)^2=0", vec![odd], Signs::NONE, move || {
            Ok((ch.f(odd).try_mul(ch.f(odd))?, cx.zero()))
        });
    } else {
        list.skip(RelationId::R12b, "e_(n+1)^2=0", "needs m >= 1");
    }

    let window_c: Vec<usize> = (1..rank).filter(|&i| i != n + 1).collect();
    if window_c.is_empty() {
        list.skip(RelationId::R12c, "[e_i,[e_i,e_(i+1)]]=0", "no i in [1; n+m-1] with i != n+1");
    }
    for i in window_c {
        list.check(RelationId::R12c, "[e_i,[e_i,e_(i+1)]]=0", vec![i], Signs::NONE, move || {
            Ok((commutator(ch.e(i), &commutator(ch.e(i), ch.e(i + 1))?)?, cx.zero()))
        });
        list.check(RelationId::R12c, "[f_i,[f_i,f_(i+1)]]=0", vec![i], Signs::NONE, move || {
            Ok((commutator(ch.f(i), &commutator(ch.f(i), ch.f(i + 1))?)?, cx.zero()))
        });
    }

    let window_d: Vec<usize> = (1..rank).filter(|&i| i != n).collect();
    if window_d.is_empty() {
        list.skip(RelationId::R12d, "[e_(i+1),[e_(i+1),e_i]]=0", "no i in [1; n+m-1] with i != n");
    }
    for i in window_d {
        list.check(RelationId::R12d, "[e_(i+1),[e_(i+1),e_i]]=0", vec![i], Signs::NONE, move || {
            Ok((commutator(ch.e(i + 1), &commutator(ch.e(i + 1), ch.e(i))?)?, cx.zero()))
        });
        list.check(RelationId::R12d, "[f_(i+1),[f_(i+1),f_i]]=0", vec![i], Signs::NONE, move || {
            Ok((commutator(ch.f(i + 1), &commutator(ch.f(i + 1), ch.f(i))?)?, cx.zero()))
        });
    }

    if n >= 1 && n + 2 <= rank {
        let idx = vec![n, n + 1, n + 2];
        list.check(RelationId::R12e, "{[e_(n+1),e_n],[e_(n+1),e_(n+2)]}=0", idx.clone(), Signs::NONE, move || {
            let a = commutator(ch.e(n + 1), ch.e(n))?;
            let b = commutator(ch.e(n + 1), ch.e(n + 2))?;
            Ok((anticommutator(&a, &b)?, cx.zero()))
        });
        list.check(RelationId::R12e, "{[f_(n+1),f_n],[f_(n+1),f_(n+2)]}=0", idx, Signs::NONE, move || {
            let a = commutator(ch.f(n + 1), ch.f(n))?;
            let b = commutator(ch.f(n + 1), ch.f(n + 2))?;
            Ok((anticommutator(&a, &b)?, cx.zero()))
        });
    } else {
        list.skip(RelationId::R12e, "{[e_(n+1),e_n],[e_(n+1),e_(n+2)]}=0", "needs n >= 1 and m >= 2");
    }

    list.run(Checker::for_deformation(ops.deformation(), tolerance))
}

/// Checks `⟦E_ij, E_kl⟧ = δ_jk E_il - (-1)^{θ_ij θ_kl} δ_il E_kj` for all
/// `i, j, k, l ∈ [0; n+m]` on the reconstructed `gl(n+1|m)` generators.
pub fn verify_gl<D: Deformation>(ops: &FockOperators<D>, tolerance: f64) -> Result<Vec<RelationReport>, OperatorError> {
    require_classical(ops)?;
    let size = ops.rank() + 1;
    let gens = (0..size)
        .map(|i| (0..size).map(|j| ops.gl_generator(i, j)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let cx = Ctx { ops };
    let (gens, cx) = (&gens, &cx);
    let sig = *ops.signature();
    let mut list = InstanceList::with_floor(ops.generator_scale());
    for i in 0..size {
        for j in 0..size {
            for k in 0..size {
                for l in 0..size {
                    list.check(RelationId::R7, "[[E_ij,E_kl]]", vec![i, j, k, l], Signs::NONE, move || {
                        let lhs = bracket(&gens[i][j], &gens[k][l])?;
                        let mut rhs = cx.zero();
                        if j == k {
                            rhs = rhs.try_add(&gens[i][l])?;
                        }
                        if i == l {
                            let t_ij = sig.theta_ext(i) + sig.theta_ext(j);
                            let t_kl = sig.theta_ext(k) + sig.theta_ext(l);
                            let c = -t_ij.times(t_kl).sign();
                            rhs = rhs.try_add(&gens[k][j].scale(&cx.int(c)))?;
                        }
                        Ok((lhs, rhs))
                    });
                }
            }
        }
    }
    list.run(Checker::for_deformation(ops.deformation(), tolerance))
}

/// Checks the vacuum conditions on the first basis vector: `a_i^-|0⟩ = 0`,
/// `⟦a_i^-, a_j^+⟧|0⟩ = 0` for `i ≠ j`, and `H_i|0⟩ = p|0⟩`.
pub fn verify_vacuum<D: Deformation>(
    ops: &FockOperators<D>,
    tolerance: f64,
) -> Result<Vec<RelationReport>, OperatorError> {
    let vac = ops.basis().vacuum_index();
    let proj: GradedMatrix<D::Scalar> = GradedMatrix::unit(ops.dim(), vac, vac);
    let cx = Ctx { ops };
    let (proj, cx) = (&proj, &cx);
    let rank = ops.rank();
    let p = ops.signature().p as i64;
    let mut list = InstanceList::with_floor(ops.generator_scale());
    for i in 1..=rank {
        list.check(RelationId::R20, "a_i^-|0>=0", vec![i], Signs::NONE, move || {
            Ok((cx.ops.a_minus(i).try_mul(proj)?, cx.zero()))
        });
    }
    for i in 1..=rank {
        for j in 1..=rank {
            if i == j {
                continue;
            }
            list.check(RelationId::R20, "[[a_i^-,a_j^+]]|0>=0", vec![i, j], Signs::NONE, move || {
                Ok((bracket(cx.ops.a_minus(i), cx.ops.a_plus(j))?.try_mul(proj)?, cx.zero()))
            });
        }
    }
    for i in 1..=rank {
        list.check(RelationId::R20, "H_i|0>=p|0>", vec![i], Signs::NONE, move || {
            Ok((cx.ops.h(i).try_mul(proj)?, proj.scale(&cx.int(p))))
        });
    }
    list.run(Checker::for_deformation(ops.deformation(), tolerance))
}
