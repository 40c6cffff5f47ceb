//! The built-in property suite run by `mjvote check` without ballots.
//!
//! Each claim is checked on its reference instance and reported as holding
//! or violated, with a short description of what was found.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fixtures;
use crate::properties::{
    check_consistency, consistency_sweep, exhaustive_equivalence, exhaustive_no_show,
    polarization_sweep, search_no_show_removal,
};
use crate::ranking::Method;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub profiles: u64,
    /// Largest ballot count for the partition sweep.
    pub partition_limit: usize,
    /// Largest electorate for the exhaustive no-show sweep.
    pub no_show_limit: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            profiles: 1000,
            partition_limit: crate::properties::DEFAULT_PARTITION_LIMIT,
            no_show_limit: crate::properties::DEFAULT_NO_SHOW_LIMIT as u64,
        }
    }
}

fn outcome(name: &str, holds: bool, detail: String) -> ClaimOutcome {
    ClaimOutcome {
        name: name.to_owned(),
        holds,
        detail,
    }
}

pub fn run_suite(opts: SuiteOptions) -> Result<Vec<ClaimOutcome>> {
    let mut out = Vec::new();

    let outing = fixtures::school_outing();
    let found = search_no_show_removal(&outing, Method::Mj)?;
    let hit = found.iter().find(|c| c.favoured.as_str() == "H");
    out.push(outcome(
        "four-grade MJ shows the no-show paradox on the school outing",
        hit.is_some(),
        match hit {
            Some(c) => format!(
                "{} voters casting {:?} push {} past {}",
                c.voters.len(),
                c.ballot,
                c.overtaken_by,
                c.favoured
            ),
            None => "no counterexample found".into(),
        },
    ));

    let (cases, found) = exhaustive_no_show(Method::Mj3, opts.no_show_limit)?;
    out.push(outcome(
        "three-grade MJ has no no-show paradox",
        found.is_empty(),
        format!(
            "{cases} profile/ballot cases up to {} voters, {} counterexamples",
            opts.no_show_limit,
            found.len()
        ),
    ));

    let mut premise = 0;
    let mut violations = 0;
    let subsamples = fixtures::school_outing_subsamples(8);
    for e in &subsamples {
        let r = check_consistency(e, 8)?;
        premise += r.n_premise_satisfied;
        violations += r.violations.len();
    }
    out.push(outcome(
        "consistency on 8-ballot samples of the school outing",
        violations == 0,
        format!(
            "{} samples, {premise} splits meeting the premise, {violations} violations",
            subsamples.len()
        ),
    ));

    let sweep = consistency_sweep(opts.seed, opts.profiles, opts.partition_limit)?;
    out.push(outcome(
        "consistency on random three-grade profiles",
        sweep.failing_profiles.is_empty(),
        format!(
            "seed {}, {} profiles of 1..={} ballots, {} splits meeting the premise, {} violations in {} profiles",
            sweep.seed,
            sweep.profiles,
            opts.partition_limit,
            sweep.totals.n_premise_satisfied,
            sweep.totals.violations.len(),
            sweep.failing_profiles.len()
        ),
    ));

    let (checked, mismatches) = exhaustive_equivalence(4, 3)?;
    out.push(outcome(
        "score ranking equals iterated median removal",
        mismatches.is_empty(),
        format!("{checked} profiles, {} mismatches", mismatches.len()),
    ));

    let failures = polarization_sweep(opts.seed, 10_000)?;
    out.push(outcome(
        "polarization keeps the raw score",
        failures == 0,
        format!("10000 random shifts, {failures} failures"),
    ));

    Ok(out)
}
