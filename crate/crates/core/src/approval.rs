//! Election by strong / weak / no explicit approval.
//!
//! Each candidate gets two non-negative scores: strong approvals and any
//! approval (strong plus weak). The ballot is rejected when nobody reaches
//! any-approval from a strict majority of the ballots cast. Otherwise
//! candidates with more strong approvals than non-approvals come first,
//! ordered by strong approvals; everyone else follows, ordered by any
//! approval. The second group splits into candidates a majority would accept
//! and candidates nobody would elect even running alone.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ElectionProfile;
use crate::ranking::{assemble, EntryDetail, Method, RankedResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ApprovalTally {
    pub strong: u64,
    pub weak: u64,
    pub none: u64,
}

impl ApprovalTally {
    pub fn new(strong: u64, weak: u64, none: u64) -> Self {
        Self { strong, weak, none }
    }

    pub fn from_counts(counts: &[u64]) -> Self {
        assert_eq!(counts.len(), 3, "approval tally needs exactly 3 counts");
        Self::new(counts[0], counts[1], counts[2])
    }

    pub fn any(&self) -> u64 {
        self.strong + self.weak
    }

    pub fn total(&self) -> u64 {
        self.strong + self.weak + self.none
    }

    /// Any-approval from strictly more than half the electorate.
    pub fn has_majority(&self) -> bool {
        2 * self.any() > self.total()
    }

    /// Any-approval from exactly half the electorate.
    pub fn is_borderline(&self) -> bool {
        self.total() > 0 && 2 * self.any() == self.total()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Block {
    StrongMajority,
    Electable,
    Unelectable,
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Block::StrongMajority => "strong_majority",
            Block::Electable => "electable",
            Block::Unelectable => "unelectable",
        })
    }
}

pub fn classify_block(tally: ApprovalTally) -> Block {
    if tally.strong > tally.none {
        Block::StrongMajority
    } else if tally.has_majority() {
        Block::Electable
    } else {
        Block::Unelectable
    }
}

/// Best-first ordering between two approval tallies of the same electorate.
pub fn compare_tallies(a: ApprovalTally, b: ApprovalTally) -> Ordering {
    let strong_a = classify_block(a) == Block::StrongMajority;
    let strong_b = classify_block(b) == Block::StrongMajority;
    match (strong_a, strong_b) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (true, true) => (b.strong, b.any()).cmp(&(a.strong, a.any())),
        (false, false) => (b.any(), b.strong).cmp(&(a.any(), a.strong)),
    }
}

pub fn approval_rank(election: &ElectionProfile) -> Result<RankedResult> {
    if election.scale.len() != 3 {
        return Err(Error::Config(format!(
            "approval3 needs the strong/weak/none scale, got {} grades",
            election.scale.len()
        )));
    }
    if election.n_voters == 0 {
        return Err(Error::NoBallots);
    }
    let tallies: Vec<ApprovalTally> = election
        .profiles
        .iter()
        .map(|p| ApprovalTally::from_counts(&p.counts))
        .collect();
    let mut result = assemble(
        Method::Approval3,
        election,
        |a, b| compare_tallies(tallies[a], tallies[b]),
        |i| EntryDetail::Approval {
            tally: tallies[i],
            block: classify_block(tallies[i]),
        },
    );
    result.rejected = !tallies.iter().any(ApprovalTally::has_majority);
    result.borderline = election
        .candidates
        .iter()
        .zip(&tallies)
        .filter(|(_, t)| t.is_borderline())
        .map(|(c, _)| c.id.clone())
        .collect();
    Ok(result)
}
