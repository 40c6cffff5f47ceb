//! Three-grade Majority Judgement in raw-score form.
//!
//! With grades positive / neutral / negative the iterated majority grade
//! ordering collapses to two integers per candidate: the score `s`, which is
//! the positive count when positives outnumber negatives and minus the
//! negative count otherwise, and the tie-break `t`, which takes the other
//! count with the opposite sign convention. Candidates are ordered by `(s, t)`
//! descending.

use std::cmp::Ordering;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mj::majority_grade;
use crate::model::ElectionProfile;
use crate::ranking::{assemble, EntryDetail, Method, RankedResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tally3 {
    pub positive: u64,
    pub neutral: u64,
    pub negative: u64,
}

impl Tally3 {
    pub fn new(positive: u64, neutral: u64, negative: u64) -> Self {
        Self {
            positive,
            neutral,
            negative,
        }
    }

    /// Reads a best-first three-entry count vector.
    pub fn from_counts(counts: &[u64]) -> Self {
        assert_eq!(counts.len(), 3, "three-grade tally needs exactly 3 counts");
        Self::new(counts[0], counts[1], counts[2])
    }

    pub fn total(&self) -> u64 {
        self.positive + self.neutral + self.negative
    }
}

/// Raw score and tie-break score. Field order gives the ranking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ScorePair {
    pub s: i64,
    pub t: i64,
}

pub fn score3(tally: Tally3) -> ScorePair {
    let pos = tally.positive as i64;
    let neg = tally.negative as i64;
    if pos > neg {
        ScorePair { s: pos, t: -neg }
    } else {
        ScorePair { s: -neg, t: pos }
    }
}

/// Relative tie-break scores. `None` where the denominator is zero.
/// Diagnostic only; ranking never uses them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AltScores {
    /// (pos - neg) / total
    pub d: Option<Ratio<i64>>,
    /// (pos - neg) / (pos + neg)
    pub s_rel: Option<Ratio<i64>>,
    /// (pos - neg) / neutral
    pub n_norm: Option<Ratio<i64>>,
}

pub fn alt_scores(tally: Tally3) -> AltScores {
    let diff = tally.positive as i64 - tally.negative as i64;
    let over = |den: u64| (den > 0).then(|| Ratio::new(diff, den as i64));
    AltScores {
        d: over(tally.total()),
        s_rel: over(tally.positive + tally.negative),
        n_norm: over(tally.neutral),
    }
}

/// Compare two alternative scores; undefined values are incomparable.
pub fn compare_alt(a: Option<Ratio<i64>>, b: Option<Ratio<i64>>) -> Option<Ordering> {
    Some(a?.cmp(&b?))
}

pub fn mj3_rank(election: &ElectionProfile) -> Result<RankedResult> {
    if election.scale.len() != 3 {
        return Err(Error::Config(format!(
            "mj3 needs a 3-grade scale, got {} grades",
            election.scale.len()
        )));
    }
    if election.n_voters == 0 {
        return Err(Error::NoBallots);
    }
    let tallies: Vec<Tally3> = election
        .profiles
        .iter()
        .map(|p| Tally3::from_counts(&p.counts))
        .collect();
    let scores: Vec<ScorePair> = tallies.iter().copied().map(score3).collect();
    let grades = election
        .profiles
        .iter()
        .map(|p| majority_grade(p, &election.scale))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(
        Method::Mj3,
        election,
        |a, b| scores[b].cmp(&scores[a]),
        |i| EntryDetail::Mj3 {
            majority_grade: grades[i].clone(),
            score: scores[i],
            alt: alt_scores(tallies[i]),
        },
    ))
}
