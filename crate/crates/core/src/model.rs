//! Ballots, grade scales and per-candidate grade tallies shared by every method.
//!
//! A ballot only records the grades a voter actually gave. Completion of
//! missing entries to the worst grade happens when profiles are built, so the
//! raw ballot stays available for auditing.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered grade labels, best grade first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct GradeScale {
    labels: Vec<String>,
}

impl GradeScale {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(Error::InvalidScale(format!(
                "need at least 2 grades, got {}",
                labels.len()
            )));
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if label.trim().is_empty() {
                return Err(Error::InvalidScale("empty grade label".into()));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidScale(format!("duplicate grade label {label:?}")));
            }
        }
        Ok(Self { labels })
    }

    /// `strong`, `weak`, `none`: the approval ballot scale.
    pub fn approval() -> Self {
        Self::new(["strong", "weak", "none"]).expect("static scale")
    }

    /// `positive`, `neutral`, `negative`.
    pub fn three_grade() -> Self {
        Self::new(["positive", "neutral", "negative"]).expect("static scale")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn worst(&self) -> usize {
        self.labels.len() - 1
    }
}

impl TryFrom<Vec<String>> for GradeScale {
    type Error = Error;

    fn try_from(labels: Vec<String>) -> Result<Self> {
        GradeScale::new(labels)
    }
}

impl From<GradeScale> for Vec<String> {
    fn from(scale: GradeScale) -> Self {
        scale.labels
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CandidateId(pub String);

impl CandidateId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for CandidateId {
    fn from(s: &str) -> Self {
        CandidateId(s.to_owned())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub id: CandidateId,
    #[serde(alias = "name")]
    pub display_name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub party: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profession: Option<String>,
}

impl Candidate {
    pub fn new(id: impl Into<String>, display_name: impl Into<String>) -> Self {
        Self {
            id: CandidateId(id.into()),
            display_name: display_name.into(),
            party: None,
            profession: None,
        }
    }
}

/// One voter's grades. Candidates without an entry count at the worst grade.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ballot {
    pub voter_id: String,
    #[serde(default)]
    pub grades: BTreeMap<CandidateId, String>,
}

impl Ballot {
    pub fn new(voter_id: impl Into<String>) -> Self {
        Self {
            voter_id: voter_id.into(),
            grades: BTreeMap::new(),
        }
    }

    pub fn grade(mut self, candidate: &str, label: &str) -> Self {
        self.grades.insert(CandidateId::from(candidate), label.to_owned());
        self
    }

    pub fn is_blank(&self) -> bool {
        self.grades.is_empty()
    }
}

/// Tally of one candidate's grades, indexed by scale position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeProfile {
    pub candidate: CandidateId,
    pub counts: Vec<u64>,
}

impl GradeProfile {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElectionProfile {
    pub scale: GradeScale,
    pub candidates: Vec<Candidate>,
    pub profiles: Vec<GradeProfile>,
    pub n_voters: u64,
}

impl ElectionProfile {
    /// Assemble a profile straight from per-candidate counts, in candidate order.
    pub fn from_counts(
        scale: GradeScale,
        candidates: Vec<Candidate>,
        counts: Vec<Vec<u64>>,
    ) -> Result<Self> {
        check_unique_candidates(&candidates)?;
        if counts.len() != candidates.len() {
            return Err(Error::Config(format!(
                "{} candidates but {} count vectors",
                candidates.len(),
                counts.len()
            )));
        }
        let mut n_voters = None;
        for (c, row) in candidates.iter().zip(&counts) {
            if row.len() != scale.len() {
                return Err(Error::Config(format!(
                    "candidate {}: {} counts for a {}-grade scale",
                    c.id,
                    row.len(),
                    scale.len()
                )));
            }
            let total: u64 = row.iter().sum();
            match n_voters {
                None => n_voters = Some(total),
                Some(n) if n != total => {
                    return Err(Error::Config(format!(
                        "candidate {}: {total} grades, expected {n}",
                        c.id
                    )))
                }
                _ => {}
            }
        }
        let profiles = candidates
            .iter()
            .zip(counts)
            .map(|(c, counts)| GradeProfile {
                candidate: c.id.clone(),
                counts,
            })
            .collect();
        Ok(Self {
            scale,
            candidates,
            profiles,
            n_voters: n_voters.unwrap_or(0),
        })
    }

    pub fn position(&self, id: &CandidateId) -> Option<usize> {
        self.candidates.iter().position(|c| &c.id == id)
    }

    pub fn profile(&self, id: &CandidateId) -> Option<&GradeProfile> {
        self.profiles.iter().find(|p| &p.candidate == id)
    }

    /// Add one completed ballot given as a grade index per candidate.
    pub fn add_graded(&mut self, grades: &[usize]) {
        debug_assert_eq!(grades.len(), self.profiles.len());
        for (profile, &g) in self.profiles.iter_mut().zip(grades) {
            profile.counts[g] += 1;
        }
        self.n_voters += 1;
    }

    /// Remove one completed ballot. Panics if that ballot was never counted.
    pub fn remove_graded(&mut self, grades: &[usize]) {
        debug_assert_eq!(grades.len(), self.profiles.len());
        for (profile, &g) in self.profiles.iter_mut().zip(grades) {
            profile.counts[g] = profile.counts[g]
                .checked_sub(1)
                .expect("removing a grade that was never counted");
        }
        self.n_voters -= 1;
    }

    /// Drop a candidate, keeping the others in registration order.
    pub fn without_candidate(&self, id: &CandidateId) -> Self {
        let keep = |c: &CandidateId| c != id;
        Self {
            scale: self.scale.clone(),
            candidates: self.candidates.iter().filter(|c| keep(&c.id)).cloned().collect(),
            profiles: self.profiles.iter().filter(|p| keep(&p.candidate)).cloned().collect(),
            n_voters: self.n_voters,
        }
    }
}

/// Scale, candidates and raw ballots: everything needed to reproduce a tally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Election {
    pub scale: GradeScale,
    pub candidates: Vec<Candidate>,
    pub ballots: Vec<Ballot>,
}

impl Election {
    pub fn profile(&self) -> Result<ElectionProfile> {
        build_profiles(&self.scale, &self.candidates, &self.ballots)
    }

    /// Completed grade indices, one row per ballot, one column per candidate.
    pub fn grade_matrix(&self) -> Result<Vec<Vec<usize>>> {
        validate_ballots(&self.scale, &self.candidates, &self.ballots)?;
        Ok(self
            .ballots
            .iter()
            .map(|b| complete_ballot(&self.scale, &self.candidates, b))
            .collect())
    }
}

fn check_unique_candidates(candidates: &[Candidate]) -> Result<()> {
    let mut seen = HashSet::new();
    for c in candidates {
        if !seen.insert(&c.id) {
            return Err(Error::DuplicateCandidate(c.id.0.clone()));
        }
    }
    Ok(())
}

pub(crate) fn validate_ballots(
    scale: &GradeScale,
    candidates: &[Candidate],
    ballots: &[Ballot],
) -> Result<()> {
    check_unique_candidates(candidates)?;
    let known: HashSet<&CandidateId> = candidates.iter().map(|c| &c.id).collect();
    let mut voters = HashSet::new();
    for ballot in ballots {
        if !voters.insert(ballot.voter_id.as_str()) {
            return Err(Error::DuplicateVoter(ballot.voter_id.clone()));
        }
        for (candidate, label) in &ballot.grades {
            if !known.contains(candidate) {
                return Err(Error::UnknownCandidate {
                    voter: ballot.voter_id.clone(),
                    candidate: candidate.0.clone(),
                });
            }
            if scale.index_of(label).is_none() {
                return Err(Error::UnknownGrade {
                    voter: ballot.voter_id.clone(),
                    label: label.clone(),
                });
            }
        }
    }
    Ok(())
}

/// Grade index per candidate, missing entries at the worst grade.
/// Assumes the ballot has been validated.
pub(crate) fn complete_ballot(
    scale: &GradeScale,
    candidates: &[Candidate],
    ballot: &Ballot,
) -> Vec<usize> {
    candidates
        .iter()
        .map(|c| {
            ballot
                .grades
                .get(&c.id)
                .and_then(|label| scale.index_of(label))
                .unwrap_or_else(|| scale.worst())
        })
        .collect()
}

/// Tally ballots into one grade profile per candidate, in registration order.
pub fn build_profiles(
    scale: &GradeScale,
    candidates: &[Candidate],
    ballots: &[Ballot],
) -> Result<ElectionProfile> {
    validate_ballots(scale, candidates, ballots)?;
    let mut counts = vec![vec![0u64; scale.len()]; candidates.len()];
    for ballot in ballots {
        for (row, g) in counts
            .iter_mut()
            .zip(complete_ballot(scale, candidates, ballot))
        {
            row[g] += 1;
        }
    }
    let mut profile = ElectionProfile::from_counts(scale.clone(), candidates.to_vec(), counts)?;
    profile.n_voters = ballots.len() as u64;
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outing_scale() -> GradeScale {
        GradeScale::new(["Cool!", "Nice", "Ok", "Help-no"]).unwrap()
    }

    #[test]
    fn scale_validation() {
        assert!(GradeScale::new(["only"]).is_err());
        assert!(GradeScale::new(["a", "a"]).is_err());
        assert!(GradeScale::new(["a", " "]).is_err());
        let s = outing_scale();
        assert_eq!(s.worst(), 3);
        assert_eq!(s.index_of("Nice"), Some(1));
        let parsed: std::result::Result<GradeScale, _> = serde_json::from_str(r#"["x"]"#);
        assert!(parsed.is_err());
    }

    #[test]
    fn school_outing_high_ropes_profile() {
        let scale = outing_scale();
        let candidates = vec![Candidate::new("H", "High ropes course")];
        let mut ballots = Vec::new();
        for i in 0..10 {
            ballots.push(Ballot::new(format!("e{i}")).grade("H", "Cool!"));
        }
        for i in 0..11 {
            ballots.push(Ballot::new(format!("o{i}")).grade("H", "Ok"));
        }
        let p = build_profiles(&scale, &candidates, &ballots).unwrap();
        assert_eq!(p.profiles[0].counts, vec![10, 0, 11, 0]);
        assert_eq!(p.n_voters, 21);
    }

    #[test]
    fn empty_election_is_all_zero() {
        let scale = outing_scale();
        let candidates = vec![Candidate::new("a", "A"), Candidate::new("b", "B")];
        let p = build_profiles(&scale, &candidates, &[]).unwrap();
        assert_eq!(p.n_voters, 0);
        assert!(p.profiles.iter().all(|g| g.counts == vec![0; 4]));
    }

    #[test]
    fn missing_grade_counts_as_worst() {
        // hand tally: X gets positive from v1, nothing from v2, neutral from v3
        let scale = GradeScale::three_grade();
        let candidates = vec![Candidate::new("X", "X"), Candidate::new("Y", "Y")];
        let ballots = vec![
            Ballot::new("v1").grade("X", "positive").grade("Y", "negative"),
            Ballot::new("v2").grade("Y", "positive"),
            Ballot::new("v3").grade("X", "neutral").grade("Y", "neutral"),
        ];
        let p = build_profiles(&scale, &candidates, &ballots).unwrap();
        assert_eq!(p.profiles[0].counts, vec![1, 1, 1]);
        assert_eq!(p.profiles[1].counts, vec![1, 1, 1]);
        // raw ballot untouched
        assert!(!ballots[1].grades.contains_key(&CandidateId::from("X")));
    }

    #[test]
    fn validation_errors() {
        let scale = GradeScale::three_grade();
        let candidates = vec![Candidate::new("X", "X")];
        let bad_grade = vec![Ballot::new("v1").grade("X", "great")];
        match build_profiles(&scale, &candidates, &bad_grade) {
            Err(Error::UnknownGrade { voter, label }) => {
                assert_eq!(voter, "v1");
                assert_eq!(label, "great");
            }
            other => panic!("unexpected {other:?}"),
        }
        let bad_cand = vec![Ballot::new("v1").grade("Q", "positive")];
        assert!(matches!(
            build_profiles(&scale, &candidates, &bad_cand),
            Err(Error::UnknownCandidate { .. })
        ));
        let dup = vec![Ballot::new("v1"), Ballot::new("v1")];
        assert!(matches!(
            build_profiles(&scale, &candidates, &dup),
            Err(Error::DuplicateVoter(_))
        ));
        let dup_cand = vec![Candidate::new("X", "X"), Candidate::new("X", "X2")];
        assert!(matches!(
            build_profiles(&scale, &dup_cand, &[]),
            Err(Error::DuplicateCandidate(_))
        ));
    }

    #[test]
    fn blank_ballot_grades_everyone_worst() {
        let scale = GradeScale::approval();
        let candidates = vec![Candidate::new("a", "A"), Candidate::new("b", "B")];
        let ballots = vec![Ballot::new("v1")];
        let p = build_profiles(&scale, &candidates, &ballots).unwrap();
        assert!(ballots[0].is_blank());
        assert_eq!(p.profiles[0].counts, vec![0, 0, 1]);
        assert_eq!(p.profiles[1].counts, vec![0, 0, 1]);
    }

    #[test]
    fn from_counts_rejects_mismatched_totals() {
        let scale = GradeScale::three_grade();
        let candidates = vec![Candidate::new("a", "A"), Candidate::new("b", "B")];
        assert!(ElectionProfile::from_counts(
            scale.clone(),
            candidates.clone(),
            vec![vec![1, 0, 0], vec![1, 1, 0]]
        )
        .is_err());
        let mut p =
            ElectionProfile::from_counts(scale, candidates, vec![vec![1, 0, 0], vec![0, 1, 0]])
                .unwrap();
        p.add_graded(&[2, 0]);
        assert_eq!(p.profiles[0].counts, vec![1, 0, 1]);
        assert_eq!(p.n_voters, 2);
        p.remove_graded(&[2, 0]);
        assert_eq!(p.profiles[1].counts, vec![0, 1, 0]);
    }
}
