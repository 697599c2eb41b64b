//! Per-instance property checks, grouped into suites.
//!
//! Each check counts the cases it examined and the cases that failed.
//! `in_scope` says whether the instance meets the hypotheses the finite form
//! of the statement needs; failures outside that scope are reported but do
//! not count against the instance.

use std::fmt::Debug;

use serde::Serialize;

use crate::central;
use crate::dynamics::{self, PartialDynSystem};
use crate::error::{Error, Limits, Result};
use crate::largeness::{self, Notion, Reading};
use crate::semigroup::PartialSemigroup;
use crate::structure;
use crate::subset::SubsetMask;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Core,
    Structure,
    Largeness,
    Dynamics,
    Central,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["core", "structure", "largeness", "dynamics", "central", "all"];

    pub fn parse(name: &str) -> Option<Suite> {
        Some(match name {
            "core" => Suite::Core,
            "structure" => Suite::Structure,
            "largeness" => Suite::Largeness,
            "dynamics" => Suite::Dynamics,
            "central" => Suite::Central,
            "all" => Suite::All,
            _ => return None,
        })
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub in_scope: bool,
    pub cases: usize,
    pub failures: usize,
    /// The first failing case, rendered for humans.
    pub example: Option<String>,
}

impl Check {
    fn new(name: &'static str, in_scope: bool) -> Self {
        Check {
            name,
            in_scope,
            cases: 0,
            failures: 0,
            example: None,
        }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(case());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    /// No in-scope check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.in_scope || c.passed())
    }
}

fn show<T: Debug>(v: T) -> String {
    format!("{v:?}")
}

pub fn weak_associativity(s: &PartialSemigroup) -> Check {
    let mut c = Check::new("weak-associativity", true);
    let report = s.validate();
    c.cases = s.size().pow(3);
    c.failures = report.violations.len();
    c.example = report.violations.first().map(show);
    c
}

/// `b⁻¹(a⁻¹A) = (a∙b)⁻¹A` for every `a`, `b ∈ R(a)` and `A ⊆ S`.
pub fn quotient_composition(s: &PartialSemigroup, limits: &Limits) -> Result<Check> {
    limits.check_subsets("quotient composition sweep", s.size())?;
    let mut c = Check::new("quotient-composition", true);
    for a_set in SubsetMask::all(s.size()) {
        for a in 0..s.size() {
            let inner = s.quotient_set(a, &a_set);
            for b in s.right_set(a).iter() {
                let ab = s.product(a, b).unwrap();
                let lhs = s.quotient_set(b, &inner);
                let rhs = s.quotient_set(ab, &a_set);
                c.record(lhs == rhs, || format!("a={a} b={b} A={a_set}: {lhs} vs {rhs}"));
            }
        }
    }
    Ok(c)
}

pub fn partial_group_clauses(s: &PartialSemigroup) -> Check {
    let mut c = Check::new("partial-group-clauses", true);
    let r = structure::partial_group_equivalence(s);
    c.record(r.agreement, || show(&r));
    c
}

/// Runs the decomposition when its hypothesis holds; no cases otherwise.
pub fn decomposition(s: &PartialSemigroup) -> Result<Check> {
    let mut c = Check::new("decomposition", true);
    match structure::decompose(s) {
        Ok(d) => {
            let verdict = structure::verify_decomposition(s, &d);
            c.record(verdict.is_ok(), || verdict.unwrap_err());
        }
        Err(Error::Hypothesis(_)) => {}
        Err(Error::Verification(msg)) => c.record(false, || msg),
        Err(e) => return Err(e),
    }
    Ok(c)
}

/// When minimal left ideals exist, their union is present as `K(S)`, is an
/// ideal, and lies in every ideal.
pub fn kernel(s: &PartialSemigroup, limits: &Limits) -> Result<Check> {
    let mut c = Check::new("kernel", s.has_compact_kernel_structure());
    let mins = s.minimal_left_ideals();
    if mins.is_empty() {
        return Ok(c);
    }
    let union = mins.iter().fold(s.empty_set(), |acc, m| acc.union(m));
    let ideals = s.all_ideals(limits)?;
    let k = s.smallest_ideal();
    let ok = k.as_ref() == Some(&union)
        && s.is_ideal(&union)?
        && ideals.iter().all(|i| union.is_subset(i));
    c.record(ok, || {
        let outside: Vec<String> = ideals
            .iter()
            .filter(|i| !union.is_subset(i))
            .map(|i| i.to_string())
            .collect();
        format!("union {union}, K {k:?}, ideals missing the union: {}", outside.join(" "))
    });
    Ok(c)
}

pub fn factorization(s: &PartialSemigroup) -> Check {
    let mut c = Check::new("minimal-left-ideal-factorization", true);
    for f in structure::left_ideal_factorizations(s) {
        c.record(f.holds(), || show(&f));
    }
    c
}

/// `L∙a` is a minimal left ideal for every minimal `L` and admissible `a`,
/// and every minimal left ideal meeting the admissible range arises so.
pub fn ideal_translation(s: &PartialSemigroup) -> Result<Check> {
    let mut c = Check::new("minimal-left-ideal-translation", true);
    for l in s.minimal_left_ideals() {
        for a in s.right_set_family(&l)?.iter() {
            let r = structure::translate_minimal_left_ideal(s, &l, a);
            c.record(r.is_ok(), || format!("L={l} a={a}: {r:?}"));
        }
    }
    for f in structure::translation_converse_failures(s) {
        c.record(false, || show(&f));
    }
    Ok(c)
}

pub fn duality(s: &PartialSemigroup, limits: &Limits) -> Result<Check> {
    limits.check_subsets("duality sweep", s.size())?;
    let mut c = Check::new("thick-syndetic-duality", true);
    for a in SubsetMask::all(s.size()) {
        let r = largeness::classify(s, &a);
        c.record(
            r.duality.thick_vs_complement_syndetic && r.duality.syndetic_vs_complement_thick,
            || format!("A={a}: {:?}", r.duality),
        );
    }
    Ok(c)
}

/// Partially thick iff `L(p)∙p ⊆ A` for some `p`.
pub fn thick_characterization(s: &PartialSemigroup, limits: &Limits) -> Result<Check> {
    limits.check_subsets("thick characterization sweep", s.size())?;
    let mut c = Check::new("thick-characterization", s.has_compact_kernel_structure());
    for a in SubsetMask::all(s.size()) {
        let thick = largeness::is_partially_thick(s, &a);
        let orbit = largeness::left_orbit_inside(s, &a);
        c.record(thick.holds == orbit.is_some(), || {
            format!("A={a}: thick={} ({:?}), orbit witness {orbit:?}", thick.holds, thick.witness)
        });
    }
    Ok(c)
}

pub fn piecewise_characterization(s: &PartialSemigroup, reading: Reading, limits: &Limits) -> Result<Check> {
    limits.check_subsets("piecewise characterization sweep", s.size())?;
    let name = match reading {
        Reading::Left => "piecewise-characterization-left",
        Reading::Right => "piecewise-characterization-right",
    };
    let mut c = Check::new(name, s.has_compact_kernel_structure());
    for a in SubsetMask::all(s.size()) {
        let pps = largeness::is_partially_piecewise_syndetic(s, &a);
        let rhs = largeness::quotient_thick_everywhere(s, &a, reading);
        c.record(pps.holds == rhs, || {
            format!("A={a}: piecewise={} quotients thick={rhs}", pps.holds)
        });
    }
    Ok(c)
}

/// For each `u ∈ δ_R S`: membership in `K(S)`, syndetic return sets and
/// the regeneration clause agree.
pub fn kernel_criterion(s: &PartialSemigroup) -> Check {
    let mut c = Check::new("kernel-criterion", s.has_compact_kernel_structure());
    for u in s.delta_r().iter() {
        let k = largeness::kernel_criterion(s, u);
        c.record(k.agree() && k.in_kernel == k.regenerates, || show(&k));
    }
    c
}

pub fn witness_replay(s: &PartialSemigroup, limits: &Limits) -> Result<Check> {
    limits.check_subsets("witness replay sweep", s.size())?;
    let mut c = Check::new("witness-replay", true);
    for a in SubsetMask::all(s.size()) {
        for n in Notion::ALL {
            let v = largeness::verdict(s, &a, n);
            c.record(largeness::replay(s, &a, &v), || format!("A={a}: {v:?}"));
        }
    }
    Ok(c)
}

pub fn system_axioms(d: &PartialDynSystem) -> Check {
    let mut c = Check::new("system-axioms", true);
    let r = d.validate();
    c.cases = d.semigroup().size().pow(2) * d.points();
    c.failures = r.violations.len();
    c.example = r.violations.first().map(show);
    c
}

pub fn recurrence(d: &PartialDynSystem) -> Check {
    let s = d.semigroup();
    let mut c = Check::new("recurrence", s.has_compact_kernel_structure());
    if s.minimal_left_ideals().is_empty() {
        return c;
    }
    let r = dynamics::recurrence_check(d).expect("minimal left ideals exist");
    for clause in &r.clauses {
        c.record(clause.agree(), || show(clause));
    }
    c
}

pub fn minimal_idempotent_pairs(d: &PartialDynSystem) -> Check {
    let s = d.semigroup();
    let mut c = Check::new("minimal-idempotent-pairs", s.has_compact_kernel_structure());
    if s.minimal_left_ideals().is_empty() {
        return c;
    }
    for v in dynamics::minimal_idempotent_pairs(d) {
        c.record(v.agree(), || show(&v));
    }
    c
}

/// The enveloping closure is composition-closed, has an idempotent, and
/// each of its minimal left ideals has one.
pub fn enveloping(d: &PartialDynSystem, limits: &Limits) -> Result<Check> {
    let mut c = Check::new("enveloping", true);
    let env = d.enveloping(limits)?;
    c.record(env.is_composition_closed(), || "closure is not composition-closed".into());
    let idem = env.idempotents();
    c.record(!idem.is_empty(), || "no idempotent".into());
    let t = env.to_semigroup();
    for l in t.minimal_left_ideals() {
        c.record(idem.iter().any(|&e| l.contains(e)), || {
            format!("minimal left ideal {l} has no idempotent")
        });
    }
    Ok(c)
}

/// Invariant sets are the left ideals and minimal subsystems the minimal
/// left ideals; translation systems only.
pub fn translation_correspondence(d: &PartialDynSystem, limits: &Limits) -> Result<Check> {
    let mut c = Check::new("translation-correspondence", true);
    if d.is_translation_system() {
        let r = dynamics::left_ideal_correspondence(d, limits)?;
        c.record(r.holds(), || show(&r));
    }
    Ok(c)
}

/// Central sets get verified witnesses; non-central sets admit none.
pub fn central_sets(s: &PartialSemigroup, limits: &Limits) -> Result<Check> {
    let mut c = Check::new("central-sets", true);
    if s.minimal_idempotents().is_empty() {
        return Ok(c);
    }
    let r = central::central_set_check(s, limits)?;
    for v in &r.verdicts {
        c.record(v.consistent(), || show(v));
    }
    Ok(c)
}

pub fn evaluation_identity(s: &PartialSemigroup, limits: &Limits) -> Result<Check> {
    let mut c = Check::new("omega-evaluation-identity", true);
    let failures = central::evaluation_identity_failures(s, limits)?;
    c.cases = s.size() * s.size();
    c.failures = failures.len();
    c.example = failures.first().map(show);
    Ok(c)
}

fn semigroup_checks(suite: Suite, s: &PartialSemigroup, limits: &Limits) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    if suite.includes(Suite::Core) {
        out.push(weak_associativity(s));
        out.push(quotient_composition(s, limits)?);
    }
    if suite.includes(Suite::Structure) {
        out.push(partial_group_clauses(s));
        out.push(decomposition(s)?);
        out.push(kernel(s, limits)?);
        out.push(factorization(s));
        out.push(ideal_translation(s)?);
    }
    if suite.includes(Suite::Largeness) {
        out.push(duality(s, limits)?);
        out.push(thick_characterization(s, limits)?);
        out.push(piecewise_characterization(s, Reading::Left, limits)?);
        out.push(piecewise_characterization(s, Reading::Right, limits)?);
        out.push(kernel_criterion(s));
        out.push(witness_replay(s, limits)?);
    }
    if suite.includes(Suite::Central) {
        out.push(central_sets(s, limits)?);
        out.push(evaluation_identity(s, limits)?);
    }
    Ok(out)
}

fn system_checks(d: &PartialDynSystem, limits: &Limits) -> Result<Vec<Check>> {
    Ok(vec![
        system_axioms(d),
        recurrence(d),
        minimal_idempotent_pairs(d),
        enveloping(d, limits)?,
        translation_correspondence(d, limits)?,
    ])
}

/// Runs a suite on a semigroup; the dynamics suite uses its translation
/// system.
pub fn run_semigroup(suite: Suite, s: &PartialSemigroup, limits: &Limits) -> Result<SuiteReport> {
    let mut checks = semigroup_checks(suite, s, limits)?;
    if suite.includes(Suite::Dynamics) {
        checks.extend(system_checks(&PartialDynSystem::translation(s), limits)?);
    }
    Ok(SuiteReport { suite, checks })
}

/// Runs a suite on a system; the algebraic suites use its semigroup.
pub fn run_system(suite: Suite, d: &PartialDynSystem, limits: &Limits) -> Result<SuiteReport> {
    let mut checks = semigroup_checks(suite, d.semigroup(), limits)?;
    if suite.includes(Suite::Dynamics) {
        checks.extend(system_checks(d, limits)?);
    }
    Ok(SuiteReport { suite, checks })
}
