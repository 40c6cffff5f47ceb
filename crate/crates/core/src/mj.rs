//! Majority Judgement over an arbitrary ordinal scale.
//!
//! The majority grade is the lower middlemost grade: with `n` grades sorted
//! best first it is the one at 0-based position `n / 2`. For odd `n` this is
//! the median; for even `n` it is the worse of the two middle grades.
//! Candidates sharing a majority grade are separated by removing one vote at
//! that grade from each and recomputing, until the grades differ or the
//! profiles run out.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ElectionProfile, GradeProfile, GradeScale};
use crate::ranking::{assemble, EntryDetail, Method, RankedResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorityGrade {
    pub grade_index: usize,
    pub grade_label: String,
}

/// Index of the lower middlemost grade, or `None` for an empty tally.
pub fn majority_grade_index(counts: &[u64]) -> Option<usize> {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return None;
    }
    let mut at_or_better = 0;
    for (g, &c) in counts.iter().enumerate() {
        at_or_better += c;
        if 2 * at_or_better > total {
            return Some(g);
        }
    }
    unreachable!("cumulative count reaches the total")
}

pub fn majority_grade(profile: &GradeProfile, scale: &GradeScale) -> Result<MajorityGrade> {
    let grade_index = majority_grade_index(&profile.counts).ok_or(Error::NoBallots)?;
    Ok(MajorityGrade {
        grade_index,
        grade_label: scale.label(grade_index).to_owned(),
    })
}

/// Compare two tallies of the same electorate by iterated majority grade.
/// `Less` means `a` ranks above `b`; `Equal` only for identical tallies.
pub fn compare_counts(a: &[u64], b: &[u64]) -> Ordering {
    debug_assert_eq!(a.iter().sum::<u64>(), b.iter().sum::<u64>());
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    loop {
        let (ga, gb) = match (majority_grade_index(&a), majority_grade_index(&b)) {
            (Some(ga), Some(gb)) => (ga, gb),
            _ => return Ordering::Equal,
        };
        if ga != gb {
            return ga.cmp(&gb);
        }
        a[ga] -= 1;
        b[gb] -= 1;
    }
}

pub fn mj_rank(election: &ElectionProfile) -> Result<RankedResult> {
    if election.n_voters == 0 {
        return Err(Error::NoBallots);
    }
    let grades = election
        .profiles
        .iter()
        .map(|p| majority_grade(p, &election.scale))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(
        Method::Mj,
        election,
        |a, b| compare_counts(&election.profiles[a].counts, &election.profiles[b].counts),
        |i| EntryDetail::Mj {
            majority_grade: grades[i].clone(),
        },
    ))
}
