//! Cross-checks of every closed form against its independent route.

use std::collections::HashSet;

use serde::Serialize;

use crate::counting::{
    bad_count_formula, count_coprime_bruteforce, count_coprime_formula, count_reduced_bruteforce,
    count_reduced_formula, sublattice_count,
};
use crate::enumeration::enumerate_solutions;
use crate::error::Result;
use crate::exec::Execution;
use crate::gaussian::{evaluate, even_identity_solution, odd_identity_solution, GaussInt};
use crate::lattice::{enumerate_sublattices, Sublattice2};
use crate::sail::{
    classify_sublattices, compute_sail, enumerate_bad, sailbasis_to_solution, solution_to_sailbasis,
};

pub type CountFn = fn(u64) -> Result<u64>;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub n_max: u64,
    /// Closed form for the number of reduced matrices. Replaceable so that
    /// a deliberately wrong formula can be used as a negative control.
    pub reduced_formula: CountFn,
    pub exec: Execution,
}

impl VerifyOptions {
    pub fn new(n_max: u64) -> Self {
        VerifyOptions {
            n_max,
            reduced_formula: count_reduced_formula,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Outcome of one check over a range: `Ok(None)` when every n passed,
/// `Ok(Some(msg))` for the first failure.
type Outcome = Result<Option<String>>;

fn first_failure(exec: Execution, n_max: u64, f: impl Fn(u64) -> Outcome + Sync + Send) -> Outcome {
    let results = exec.try_map(1..=n_max, f)?;
    Ok(results.into_iter().flatten().next())
}

fn finish(name: &'static str, n_max: u64, outcome: Outcome) -> CheckResult {
    let (passed, detail) = match outcome {
        Ok(None) => (true, format!("n = 1..={n_max}")),
        Ok(Some(msg)) => (false, msg),
        Err(e) => (false, format!("error: {e}")),
    };
    CheckResult {
        name,
        passed,
        detail,
    }
}

/// `u, v` generate Λ iff both lie in Λ and `|det(u, v)|` equals the index.
pub fn generates(
    lattice: &Sublattice2,
    u: &crate::lattice::Vec2,
    v: &crate::lattice::Vec2,
) -> bool {
    lattice.contains(u) && lattice.contains(v) && u.cross(v).unsigned_abs() == lattice.index()
}

/// Adjacent sail points generate the lattice and non-adjacent ones do not.
pub fn consecutive_points_generate(lattice: &Sublattice2) -> Result<bool> {
    let pts = compute_sail(lattice)?.points;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if generates(lattice, &pts[i], &pts[j]) != (j == i + 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn check_formula_vs_bruteforce(opts: &VerifyOptions) -> CheckResult {
    let f = opts.reduced_formula;
    let outcome = first_failure(opts.exec, opts.n_max, |n| {
        let (formula, brute) = (f(n)?, count_reduced_bruteforce(n)?);
        Ok((formula != brute).then(|| format!("n = {n}: formula {formula}, brute force {brute}")))
    });
    finish("reduced count: formula = brute force", opts.n_max, outcome)
}

pub fn check_coprime_vs_bruteforce(opts: &VerifyOptions) -> CheckResult {
    let outcome = first_failure(opts.exec, opts.n_max, |n| {
        let (formula, brute) = (count_coprime_formula(n)?, count_coprime_bruteforce(n)?);
        Ok((formula != brute).then(|| format!("n = {n}: formula {formula}, brute force {brute}")))
    });
    finish(
        "coprime count: Moebius inversion = brute force",
        opts.n_max,
        outcome,
    )
}

pub fn check_partition(opts: &VerifyOptions) -> CheckResult {
    let f = opts.reduced_formula;
    let outcome = first_failure(opts.exec, opts.n_max, |n| {
        let sigma = sublattice_count(n)?;
        let (bad, reduced) = (bad_count_formula(n)?, f(n)?);
        if bad.checked_add(reduced) != Some(sigma) {
            return Ok(Some(format!(
                "n = {n}: sigma {sigma} != bad {bad} + reduced {reduced}"
            )));
        }
        let classes = classify_sublattices(n, Execution::Sequential)?;
        let central = classes.iter().filter(|(_, c)| c.is_some()).count() as u64;
        let sail_bad: HashSet<_> = classes
            .iter()
            .filter(|(_, c)| c.is_none())
            .map(|(l, _)| *l)
            .collect();
        let param: HashSet<_> = enumerate_bad(n)?.into_iter().collect();
        if central != reduced || sail_bad != param {
            return Ok(Some(format!(
                "n = {n}: sails give {central} central / {} bad, formulas {reduced} / {bad}",
                sail_bad.len()
            )));
        }
        Ok(None)
    });
    finish(
        "sublattices = bad + central (sails and formulas)",
        opts.n_max,
        outcome,
    )
}

pub fn check_bijection(opts: &VerifyOptions) -> CheckResult {
    let outcome = first_failure(opts.exec, opts.n_max, |n| {
        let mut lattices = HashSet::new();
        for s in enumerate_solutions(n)? {
            let sb = match solution_to_sailbasis(&s) {
                Ok(sb) => sb,
                Err(e) => return Ok(Some(format!("n = {n}: {e}"))),
            };
            if sailbasis_to_solution(&sb)? != s {
                return Ok(Some(format!("n = {n}: {s} does not round-trip")));
            }
            if !lattices.insert(sb.lattice) {
                return Ok(Some(format!("n = {n}: two solutions share {}", sb.lattice)));
            }
        }
        Ok(None)
    });
    finish(
        "solution <-> central sailbasis round trip",
        opts.n_max,
        outcome,
    )
}

pub fn check_consecutive_generate(opts: &VerifyOptions) -> CheckResult {
    let outcome = first_failure(opts.exec, opts.n_max, |n| {
        for l in enumerate_sublattices(n)? {
            if !consecutive_points_generate(&l)? {
                return Ok(Some(format!("lattice {l}")));
            }
        }
        Ok(None)
    });
    finish("sail points generate iff consecutive", opts.n_max, outcome)
}

pub fn check_gaussian_identities(opts: &VerifyOptions) -> CheckResult {
    let n_max = opts.n_max as i64;
    let outcome = gaussian_families_outcome(n_max, n_max, opts.exec);
    finish("Gaussian identity families", opts.n_max, outcome)
}

fn gaussian_families_outcome(m_max: i64, n_max: i64, exec: Execution) -> Outcome {
    if m_max < 0 || n_max < 1 {
        return Ok(None);
    }
    first_failure(exec, n_max as u64, |n| {
        let n = n as i64;
        for m in 0..=m_max {
            if let Err(e) = odd_identity_solution(m, n) {
                return Ok(Some(format!("odd identity m = {m}, n = {n}: {e}")));
            }
            if m >= 1 {
                if let Err(e) = even_identity_solution(m, n) {
                    return Ok(Some(format!("even identity m = {m}, n = {n}: {e}")));
                }
            }
        }
        Ok(None)
    })
}

/// Both identity families over `0 ≤ m ≤ m_max`, `1 ≤ n ≤ n_max`, and the
/// corrected `2+3i` example.
pub fn check_gaussian_families(m_max: i64, n_max: i64, exec: Execution) -> Vec<CheckResult> {
    let range = format!("m = 0..={m_max}, n = 1..={n_max}");
    let families = match gaussian_families_outcome(m_max, n_max, exec) {
        Ok(None) => (true, range),
        Ok(Some(msg)) => (false, msg),
        Err(e) => (false, format!("error: {e}")),
    };
    let c = GaussInt::new(18, 7);
    let (a, b) = (GaussInt::new(3, 19), GaussInt::new(-15, 12));
    let example = match evaluate(&a, &b, &c, &c) {
        Ok(z) if z == GaussInt::new(2, 3) => (true, format!("({a})({b}) + ({c})({c}) = {z}")),
        Ok(z) => (false, format!("evaluates to {z}")),
        Err(e) => (false, format!("error: {e}")),
    };
    vec![
        CheckResult {
            name: "odd and even identity families",
            passed: families.0,
            detail: families.1,
        },
        CheckResult {
            name: "corrected 2+3i example",
            passed: example.0,
            detail: example.1,
        },
    ]
}

pub fn run(opts: &VerifyOptions) -> Report {
    Report {
        checks: vec![
            check_formula_vs_bruteforce(opts),
            check_coprime_vs_bruteforce(opts),
            check_partition(opts),
            check_bijection(opts),
            check_consecutive_generate(opts),
            check_gaussian_identities(opts),
        ],
    }
}
