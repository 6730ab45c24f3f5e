//! Acceptance checks. Prints one line per criterion and exits nonzero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use num_rational::BigRational;
use slfock::fockspace::{dimension, enumerate};
use slfock::operators::{change_of_basis_check, classical_operators};
use slfock::relations::{
    verify_cartan_weyl, verify_classical, verify_deformed_defining, verify_gl, verify_serre, verify_vacuum,
};
use slfock::statistics::{
    parse_boxes, partition_function, verify_ladder_commutators, verify_ladder_with_form, EnergyLevels, ForbiddenReason,
    HamiltonianForm, OrbitalConfig, Verdict,
};
use slfock::{
    BasisConvention, ExactQ, FockBasis, FockOperators, NumericQ, RelationId, RelationReport, Signature, Status, Summary,
};

const NUMERIC_TOL: f64 = 1e-9;
const BASIS_TOL: f64 = 1e-9;
const Z_TOL: f64 = 1e-12;

fn grid(max_p: u32) -> Vec<Signature> {
    let mut out = Vec::new();
    for n in 0..=4 {
        for m in 0..=4 - n {
            if n + m == 0 {
                continue;
            }
            for p in 0..=max_p {
                out.push(Signature::new(n, m, p).unwrap());
            }
        }
    }
    out
}

fn sig_str(s: &Signature) -> String {
    format!("({},{},{})", s.n, s.m, s.p)
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn tally(reports: &[RelationReport], exact: bool, checked: &mut usize, skipped: &mut usize) -> Result<f64, String> {
    let mut worst = 0.0f64;
    for r in reports {
        match &r.status {
            Status::Skipped(_) => *skipped += 1,
            Status::ExactZero => *checked += 1,
            Status::Residual(x) if !exact => {
                *checked += 1;
                worst = worst.max(*x);
            }
            other => return Err(format!("{:?} {:?} {:?}: {:?}", r.relation, r.indices, r.signs, other)),
        }
    }
    Ok(worst)
}

fn criterion_1() -> Outcome {
    let (mut checked, mut skipped) = (0, 0);
    for sig in grid(4) {
        let ops =
            FockOperators::new(FockBasis::enumerate(sig).unwrap(), ExactQ, BasisConvention::Unnormalized).unwrap();
        let mut reports = verify_deformed_defining(&ops, 0.0).unwrap();
        reports.extend(verify_cartan_weyl(&ops, 0.0).unwrap());
        if let Err(e) = tally(&reports, true, &mut checked, &mut skipped) {
            return Outcome { pass: false, detail: format!("{} {}", sig_str(&sig), e) };
        }
    }
    Outcome { pass: true, detail: format!("{checked} instances exact zero, {skipped} skipped, 70 signatures") }
}

fn criterion_2() -> Outcome {
    let (mut checked, mut skipped) = (0, 0);
    let mut r12e_seen = Vec::new();
    for sig in grid(4) {
        let ops = classical_operators(sig).unwrap();
        let mut reports = verify_classical(&ops, 0.0).unwrap();
        reports.extend(verify_gl(&ops, 0.0).unwrap());
        let serre = verify_serre(&ops, 0.0).unwrap();
        if [(1, 2), (2, 2)].contains(&(sig.n, sig.m))
            && serre.iter().any(|r| r.relation == RelationId::R12e && r.status == Status::ExactZero)
        {
            r12e_seen.push((sig.n, sig.m, sig.p));
        }
        reports.extend(serre);
        reports.extend(verify_vacuum(&ops, 0.0).unwrap());
        if let Err(e) = tally(&reports, true, &mut checked, &mut skipped) {
            return Outcome { pass: false, detail: format!("{} {}", sig_str(&sig), e) };
        }
    }
    let pairs_ok = [(1, 2), (2, 2)].iter().all(|&(n, m)| r12e_seen.iter().any(|&(a, b, _)| (a, b) == (n, m)));
    if !pairs_ok {
        return Outcome { pass: false, detail: format!("R12e not exercised at (1,2) and (2,2): {r12e_seen:?}") };
    }
    Outcome {
        pass: true,
        detail: format!(
            "{checked} instances exact zero, {skipped} skipped, R12e checked at {} signatures",
            r12e_seen.len()
        ),
    }
}

fn criterion_3() -> Outcome {
    let qs = [Complex64::new(0.7, 0.0), Complex64::new(1.3, 0.0), Complex64::new(0.5, 0.75)];
    let (mut checked, mut skipped) = (0, 0);
    let mut worst = 0.0f64;
    for q in qs {
        for sig in grid(4) {
            let ops = FockOperators::new(
                FockBasis::enumerate(sig).unwrap(),
                NumericQ::new(q).unwrap(),
                BasisConvention::Orthonormal,
            )
            .unwrap();
            let mut reports = verify_deformed_defining(&ops, NUMERIC_TOL).unwrap();
            reports.extend(verify_cartan_weyl(&ops, NUMERIC_TOL).unwrap());
            reports.extend(verify_vacuum(&ops, NUMERIC_TOL).unwrap());
            match tally(&reports, false, &mut checked, &mut skipped) {
                Ok(w) => worst = worst.max(w),
                Err(e) => return Outcome { pass: false, detail: format!("q={q} {} {}", sig_str(&sig), e) },
            }
        }
    }
    let mut basis_worst = 0.0f64;
    for q in [0.7, 1.3] {
        for sig in grid(4) {
            basis_worst = basis_worst.max(change_of_basis_check(sig, q).unwrap());
        }
    }
    let pass = worst < NUMERIC_TOL && basis_worst < BASIS_TOL;
    Outcome {
        pass,
        detail: format!(
            "{checked} instances, max relative residual {worst:.3e} (tol {NUMERIC_TOL:e}), change of basis {basis_worst:.3e} (tol {BASIS_TOL:e})"
        ),
    }
}

fn criterion_4() -> Outcome {
    for sig in grid(8) {
        let enumerated = enumerate(sig).unwrap().dim() as u128;
        if dimension(&sig) != enumerated {
            return Outcome {
                pass: false,
                detail: format!("{}: formula {} vs enumeration {}", sig_str(&sig), dimension(&sig), enumerated),
            };
        }
    }
    for ((n, m, p), want) in [((1, 1, 1), 3u128), ((2, 0, 2), 6), ((0, 2, 1), 3)] {
        let got = dimension(&Signature::new(n, m, p).unwrap());
        if got != want {
            return Outcome { pass: false, detail: format!("({n},{m},{p}): {got} != {want}") };
        }
    }
    Outcome { pass: true, detail: "126 signatures agree, spot values 3, 6, 3".into() }
}

fn criterion_5() -> Outcome {
    let verdict = |s: &str| OrbitalConfig::new(5, &parse_boxes(s).unwrap()).unwrap();
    let c1 = verdict("•••|••◦||||");
    let c2 = verdict("••◦|•◦||||");
    let c3 = verdict("••◦|◦◦||||");
    let c4 = verdict("••◦|•||||");
    let mut f_blocked_first = vec![(true, true); 6];
    f_blocked_first[0] = (true, false);
    let checks = [
        (
            "1",
            matches!(
                c1.validate(),
                Verdict::Forbidden { reason: ForbiddenReason::TotalExceedsOrder { total: 6, p: 5 } }
            ),
        ),
        (
            "2",
            c2.validate() == Verdict::Valid { saturated: true }
                && c2.allowed_additions().unwrap() == vec![(false, false); 6],
        ),
        (
            "3",
            matches!(c3.validate(), Verdict::Forbidden { reason: ForbiddenReason::FermiExclusion { orbital: 2, .. } }),
        ),
        (
            "4",
            c4.validate() == Verdict::Valid { saturated: false } && c4.allowed_additions().unwrap() == f_blocked_first,
        ),
    ];
    let failed: Vec<_> = checks.iter().filter(|(_, ok)| !ok).map(|(k, _)| *k).collect();
    Outcome {
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            "examples 1-4 reproduce the expected verdicts".into()
        } else {
            format!("examples {failed:?} disagree")
        },
    }
}

fn criterion_6() -> Outcome {
    let rational = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let mut checked = 0;
    let mut control_failures = 0;
    let mut control_total = 0;
    for sig in grid(4).into_iter().filter(|s| s.n == s.m) {
        let float_levels = EnergyLevels::new((1..=sig.n).map(|k| k as f64 * 0.75).collect()).unwrap();
        let exact_levels: Vec<BigRational> = (1..=sig.n as i64).map(|k| rational(2 * k, 3 + 4 * k)).collect();
        let mut reports = verify_ladder_commutators(sig, &float_levels).unwrap();
        reports.extend(verify_ladder_with_form(sig, &exact_levels, HamiltonianForm::Bracket).unwrap());
        if let Some(bad) = reports.iter().find(|r| r.status != Status::ExactZero) {
            return Outcome { pass: false, detail: format!("{} {:?}", sig_str(&sig), bad) };
        }
        checked += reports.len();
        if sig.p >= 1 {
            control_total += 1;
            let control = verify_ladder_with_form(sig, &exact_levels, HamiltonianForm::CartanSum).unwrap();
            if Summary::of(&control).failed > 0 {
                control_failures += 1;
            }
        }
    }
    let pass = checked > 0 && control_failures == control_total;
    Outcome {
        pass,
        detail: format!(
            "{checked} ladder identities exact zero; negative control failed at {control_failures}/{control_total} signatures"
        ),
    }
}

fn criterion_7() -> Outcome {
    let basis = FockBasis::enumerate(Signature::new(1, 1, 1).unwrap()).unwrap();
    let levels = EnergyLevels::new(vec![1.0]).unwrap();
    let mut worst = 0.0f64;
    for beta in [0.0, 0.5, 1.0, 2.0] {
        let z = partition_function(&basis, &levels, beta).unwrap().z;
        worst = worst.max((z - (1.0 + 2.0 * (-beta).exp())).abs());
    }
    let mut count = 0;
    for sig in grid(4).into_iter().filter(|s| s.n == s.m) {
        let basis = FockBasis::enumerate(sig).unwrap();
        let levels = EnergyLevels::new((1..=sig.n).map(|k| k as f64).collect()).unwrap();
        let z0 = partition_function(&basis, &levels, 0.0).unwrap().z;
        if z0 != basis.dim() as f64 || basis.dim() as u128 != dimension(&sig) {
            return Outcome { pass: false, detail: format!("{}: Z(0) = {z0}", sig_str(&sig)) };
        }
        count += 1;
    }
    Outcome {
        pass: worst < Z_TOL,
        detail: format!("max |Z - (1 + 2e^-b)| = {worst:.3e} (tol {Z_TOL:e}); Z(0) = dim at {count} signatures"),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("exact deformed and Cartan-Weyl relations over the grid", criterion_1),
        ("classical, gl, Serre and vacuum relations at q = 1", criterion_2),
        ("numeric orthonormal matrices at q = 7/10, 13/10, 1/2+3i/4", criterion_3),
        ("dimension formula against enumeration, p <= 8", criterion_4),
        ("box-diagram examples at p = 5, n = m = 6", criterion_5),
        ("ladder identities with the bracket-form Hamiltonian", criterion_6),
        ("partition function sanity", criterion_7),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        all &= out.pass;
        println!(
            "criterion {} [PRIMARY] {}: {} ({}; {:.1}s)",
            k + 1,
            name,
            if out.pass { "PASS" } else { "FAIL" },
            out.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
