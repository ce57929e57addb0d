//! Independent oracles and the campaigns that compare the library against
//! them on every context of a small universe or on seeded samples.
//!
//! Contexts are checked in parallel; the first failing context in universe
//! order is kept, so reports do not depend on scheduling. A failing context
//! is shrunk by repeatedly moving to a failing `delete_pair` child until no
//! child fails (best effort, not a global minimum).

pub mod extremal;
pub mod oracle;
pub mod properties;
pub mod universe;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::context::FormalContext;
use crate::cxt::write_cxt;
use crate::error::{Error, Result};

pub use extremal::{albano_bound, check_albano_bound, extremal_search, ExtremalReport};
pub use oracle::{oracle_concept_count, oracle_contrast};
pub use properties::{property, Check, Property, PROPERTIES};
pub use universe::{enumerate_contexts, random_context, Scope};

/// Outcome of one property over one universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub property: String,
    pub universe: String,
    pub seed: Option<u64>,
    /// Contexts checked before the verdict.
    pub contexts_checked: usize,
    pub passed: bool,
    pub message: Option<String>,
    /// Failing context in `.cxt` form, shrunk where possible.
    pub counterexample: Option<String>,
}

impl VerificationReport {
    pub fn pass(property: String, universe: String, seed: Option<u64>, checked: usize) -> Self {
        VerificationReport {
            property,
            universe,
            seed,
            contexts_checked: checked,
            passed: true,
            message: None,
            counterexample: None,
        }
    }

    pub fn fail(
        property: String,
        universe: String,
        seed: Option<u64>,
        checked: usize,
        message: String,
        counterexample: &FormalContext,
    ) -> Self {
        VerificationReport {
            property,
            universe,
            seed,
            contexts_checked: checked,
            passed: false,
            message: Some(message),
            counterexample: Some(write_cxt(counterexample)),
        }
    }
}

/// Moves to a failing `delete_pair` child as long as one exists.
pub fn shrink(check: Check, mut context: FormalContext) -> (FormalContext, String) {
    let mut reason = match check(&context) {
        Err(reason) => reason,
        Ok(()) => return (context, String::new()),
    };
    'outer: loop {
        if context.num_objects() == 0 || context.num_attributes() == 0 {
            break;
        }
        for g in 0..context.num_objects() {
            for m in 0..context.num_attributes() {
                let child = context.delete_pair(g, m).expect("both sides are non-empty");
                if let Err(r) = check(&child) {
                    context = child;
                    reason = r;
                    continue 'outer;
                }
            }
        }
        break;
    }
    (context, reason)
}

/// Runs one property over a scope.
pub fn run_property(property: &Property, scope: &Scope) -> VerificationReport {
    let points = scope.points();
    let failure = points.par_iter().enumerate().find_map_first(|(i, &p)| {
        let k = scope.context(p);
        (property.check)(&k).err().map(|_| (i, k))
    });
    let name = property.name.to_string();
    match failure {
        None => VerificationReport::pass(name, scope.describe(), scope.seed(), points.len()),
        Some((i, k)) => {
            let (small, reason) = shrink(property.check, k);
            VerificationReport::fail(name, scope.describe(), scope.seed(), i + 1, reason, &small)
        }
    }
}

/// One report per property of the standard campaign, ordered by name.
pub fn run_property_suite(scope: &Scope) -> Vec<VerificationReport> {
    PROPERTIES.iter().map(|p| run_property(p, scope)).collect()
}

/// Runs the named properties; unknown names are a domain error.
pub fn run_named(scope: &Scope, names: &[&str]) -> Result<Vec<VerificationReport>> {
    let mut selected = names
        .iter()
        .map(|n| property(n).ok_or_else(|| Error::domain(format!("unknown property {n:?}"))))
        .collect::<Result<Vec<_>>>()?;
    selected.sort_by_key(|p| p.name);
    selected.dedup_by_key(|p| p.name);
    Ok(selected.iter().map(|p| run_property(p, scope)).collect())
}

/// The resistant context keeps exactly 22 concepts under every op.
pub fn resistance_report() -> VerificationReport {
    let k = crate::samples::resistant_context();
    let pairs = k.non_incident_pairs().len();
    let property = "fig7-resistance".to_string();
    let universe = "resistant 5x6 context, every non-incident pair".to_string();
    match properties::resistance_holds() {
        Ok(()) => VerificationReport::pass(property, universe, None, pairs),
        Err(message) => VerificationReport::fail(property, universe, None, pairs, message, &k),
    }
}

/// One JSON object per line.
pub fn to_json_lines(reports: &[VerificationReport]) -> String {
    reports
        .iter()
        .map(|r| serde_json::to_string(r).expect("reports serialize") + "\n")
        .collect()
}

/// Fixed-width table with one row per report.
pub fn summary_table(reports: &[VerificationReport]) -> String {
    let width = reports.iter().map(|r| r.property.len()).max().unwrap_or(8).max(8);
    let mut out = format!("{:<width$}  {:<6}  {:>9}  universe\n", "property", "result", "contexts");
    for r in reports {
        out += &format!(
            "{:<width$}  {:<6}  {:>9}  {}\n",
            r.property,
            if r.passed { "pass" } else { "FAIL" },
            r.contexts_checked,
            r.universe
        );
        if let Some(m) = &r.message {
            out += &format!("  reason: {m}\n");
        }
        if let Some(c) = &r.counterexample {
            for line in c.lines() {
                out += &format!("  | {line}\n");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn never_two_objects(k: &FormalContext) -> properties::Outcome {
        if k.num_objects() >= 2 && k.has_non_incidence() {
            Err("two objects and a gap".into())
        } else {
            Ok(())
        }
    }

    #[test]
    fn shrinking_reaches_a_local_minimum() {
        let (small, reason) = shrink(never_two_objects, FormalContext::empty(4, 4));
        assert_eq!((small.num_objects(), small.num_attributes()), (2, 2));
        assert_eq!(reason, "two objects and a gap");
    }

    #[test]
    fn failing_report_is_replayable() {
        let p = Property { name: "toy", check: never_two_objects };
        let report = run_property(&p, &Scope::exhaustive(3, 3).unwrap());
        assert!(!report.passed);
        let k = crate::cxt::read_cxt(report.counterexample.as_deref().unwrap()).unwrap();
        assert!(never_two_objects(&k).is_err());
        let line = to_json_lines(std::slice::from_ref(&report));
        let back: VerificationReport = serde_json::from_str(line.trim()).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn small_exhaustive_campaign_passes() {
        let scope = Scope::exhaustive(3, 3).unwrap();
        for report in run_property_suite(&scope) {
            assert!(report.passed, "{report:?}");
            assert_eq!(report.contexts_checked, scope.len());
        }
    }

    #[test]
    fn named_runs() {
        let scope = Scope::exhaustive(2, 2).unwrap();
        let reports = run_named(&scope, &["doubling", "chi", "doubling"]).unwrap();
        let names: Vec<&str> = reports.iter().map(|r| r.property.as_str()).collect();
        assert_eq!(names, vec!["chi", "doubling"]);
        assert!(run_named(&scope, &["nope"]).is_err());
    }

    #[test]
    fn resistant_context_report_passes() {
        let r = resistance_report();
        assert!(r.passed, "{r:?}");
    }
}
