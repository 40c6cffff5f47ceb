use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::approval::{ApprovalTally, Block};
use crate::error::Error;
use crate::mj::MajorityGrade;
use crate::mj3::{AltScores, ScorePair};
use crate::model::{CandidateId, ElectionProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Majority Judgement on any ordinal scale, iterated median removal.
    Mj,
    /// Three-grade Majority Judgement via the raw score and its tie-break score.
    Mj3,
    /// Strong / weak / no explicit approval with rejection and block ranking.
    Approval3,
    /// Ballot acceptance followed by recursive halving.
    Bracket,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Mj => "mj",
            Method::Mj3 => "mj3",
            Method::Approval3 => "approval3",
            Method::Bracket => "bracket",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "mj" => Ok(Method::Mj),
            "mj3" => Ok(Method::Mj3),
            "approval3" => Ok(Method::Approval3),
            "bracket" => Ok(Method::Bracket),
            other => Err(Error::Config(format!("unknown method {other:?}"))),
        }
    }
}

/// Per-method figures attached to a ranked candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EntryDetail {
    Mj {
        majority_grade: MajorityGrade,
    },
    Mj3 {
        majority_grade: MajorityGrade,
        score: ScorePair,
        alt: AltScores,
    },
    Approval {
        tally: ApprovalTally,
        block: Block,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedEntry {
    /// Competition rank: tied candidates share a rank, the next rank skips.
    pub rank: usize,
    pub candidate: CandidateId,
    pub display_name: String,
    pub counts: Vec<u64>,
    pub detail: EntryDetail,
}

impl RankedEntry {
    pub fn block(&self) -> Option<Block> {
        match &self.detail {
            EntryDetail::Approval { block, .. } => Some(*block),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedResult {
    pub method: Method,
    pub grade_labels: Vec<String>,
    pub n_voters: u64,
    pub rejected: bool,
    pub entries: Vec<RankedEntry>,
    pub tie_groups: Vec<Vec<CandidateId>>,
    /// Candidates whose any-approval is exactly half the electorate.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub borderline: Vec<CandidateId>,
}

impl RankedResult {
    /// The sole rank-1 candidate, if the ballot was accepted and rank 1 is not shared.
    pub fn winner(&self) -> Option<&CandidateId> {
        if self.rejected {
            return None;
        }
        match self.entries.as_slice() {
            [first, second, ..] if second.rank == first.rank => None,
            [first, ..] => Some(&first.candidate),
            [] => None,
        }
    }

    pub fn order(&self) -> Vec<&CandidateId> {
        self.entries.iter().map(|e| &e.candidate).collect()
    }

    pub fn entry(&self, id: &CandidateId) -> Option<&RankedEntry> {
        self.entries.iter().find(|e| &e.candidate == id)
    }
}

/// Sort candidates best-first with `cmp` (`Less` = better) and number them.
///
/// The sort is stable, so tied candidates stay in registration order.
pub(crate) fn assemble<C, D>(
    method: Method,
    election: &ElectionProfile,
    cmp: C,
    detail: D,
) -> RankedResult
where
    C: Fn(usize, usize) -> Ordering,
    D: Fn(usize) -> EntryDetail,
{
    let mut order: Vec<usize> = (0..election.candidates.len()).collect();
    order.sort_by(|&a, &b| cmp(a, b));

    let mut entries = Vec::with_capacity(order.len());
    let mut tie_groups: Vec<Vec<CandidateId>> = Vec::new();
    let mut current_group: Vec<CandidateId> = Vec::new();
    let mut rank = 0;
    for (pos, &idx) in order.iter().enumerate() {
        let tied_with_prev = pos > 0 && cmp(order[pos - 1], idx) == Ordering::Equal;
        if !tied_with_prev {
            rank = pos + 1;
            if current_group.len() > 1 {
                tie_groups.push(std::mem::take(&mut current_group));
            }
            current_group.clear();
        }
        let candidate = &election.candidates[idx];
        current_group.push(candidate.id.clone());
        entries.push(RankedEntry {
            rank,
            candidate: candidate.id.clone(),
            display_name: candidate.display_name.clone(),
            counts: election.profiles[idx].counts.clone(),
            detail: detail(idx),
        });
    }
    if current_group.len() > 1 {
        tie_groups.push(current_group);
    }

    RankedResult {
        method,
        grade_labels: election.scale.labels().to_vec(),
        n_voters: election.n_voters,
        rejected: false,
        entries,
        tie_groups,
        borderline: Vec::new(),
    }
}

/// Head-to-head order of two tallies under a grade-based method (`Less` = `a` better).
///
/// All three grade methods judge each candidate on its own tally, so this is
/// the same relation the full ranking induces on the pair.
pub fn compare_candidates(method: Method, a: &[u64], b: &[u64]) -> crate::Result<Ordering> {
    if matches!(method, Method::Mj3 | Method::Approval3) && (a.len() != 3 || b.len() != 3) {
        return Err(Error::Config(format!("{method} needs a 3-grade scale")));
    }
    match method {
        Method::Mj => Ok(crate::mj::compare_counts(a, b)),
        Method::Mj3 => {
            let (sa, sb) = (
                crate::mj3::score3(crate::mj3::Tally3::from_counts(a)),
                crate::mj3::score3(crate::mj3::Tally3::from_counts(b)),
            );
            Ok(sb.cmp(&sa))
        }
        Method::Approval3 => Ok(crate::approval::compare_tallies(
            ApprovalTally::from_counts(a),
            ApprovalTally::from_counts(b),
        )),
        Method::Bracket => Err(Error::Config("bracket has no grade comparison".into())),
    }
}

/// Rank with one of the grade-based methods.
pub fn rank(method: Method, election: &ElectionProfile) -> crate::Result<RankedResult> {
    match method {
        Method::Mj => crate::mj::mj_rank(election),
        Method::Mj3 => crate::mj3::mj3_rank(election),
        Method::Approval3 => crate::approval::approval_rank(election),
        Method::Bracket => Err(Error::Config(
            "bracket elections take bracket ballots, not grades".into(),
        )),
    }
}
