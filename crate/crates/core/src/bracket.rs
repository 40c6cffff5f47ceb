//! Binary-decision baseline: accept or reject the whole ballot, then keep
//! halving the candidate list by majority until one name is left.
//!
//! All marks are collected on one ballot. A list of `k` names is split into
//! the first `ceil(k/2)` (upper) and the remaining `floor(k/2)` (lower), and
//! every internal node of the resulting tree gets one mark, so a ballot for
//! `k` candidates carries `k - 1` half choices plus the acceptance mark.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Candidate, CandidateId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Half {
    Upper,
    Lower,
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Half::Upper => "upper",
            Half::Lower => "lower",
        })
    }
}

/// A split point in the bracket tree, covering `candidates[start..start + len]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BracketNode {
    pub index: usize,
    pub start: usize,
    pub len: usize,
}

impl BracketNode {
    pub fn upper_len(&self) -> usize {
        self.len.div_ceil(2)
    }

    pub fn upper(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.upper_len()
    }

    pub fn lower(&self) -> std::ops::Range<usize> {
        self.start + self.upper_len()..self.start + self.len
    }
}

/// Internal nodes of the bracket for `k` candidates, in preorder
/// (node, then its upper subtree, then its lower subtree).
pub fn bracket_nodes(k: usize) -> Vec<BracketNode> {
    fn build(start: usize, len: usize, out: &mut Vec<BracketNode>) {
        if len < 2 {
            return;
        }
        let node = BracketNode {
            index: out.len(),
            start,
            len,
        };
        out.push(node);
        build(start, node.upper_len(), out);
        build(start + node.upper_len(), len - node.upper_len(), out);
    }
    let mut out = Vec::new();
    build(0, k, &mut out);
    out
}

/// Marks a voter places for `k` candidates: acceptance plus one per node.
pub fn marks_per_ballot(k: usize) -> usize {
    1 + bracket_nodes(k).len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketBallot {
    pub voter_id: String,
    pub accept: bool,
    /// One choice per bracket node, in preorder.
    pub choices: Vec<Half>,
}

impl BracketBallot {
    /// Parse a mark string such as `"ULLU"` (one letter per node, preorder).
    pub fn from_marks(voter_id: impl Into<String>, accept: bool, marks: &str) -> Result<Self> {
        let voter_id = voter_id.into();
        let choices = marks
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'U' => Ok(Half::Upper),
                'L' => Ok(Half::Lower),
                other => Err(Error::MalformedBracketBallot {
                    voter: voter_id.clone(),
                    reason: format!("mark {other:?} is neither U nor L"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            voter_id,
            accept,
            choices,
        })
    }

    /// Sincere marks for a voter with a strict ranking (candidate indices,
    /// best first): at every node pick the half holding the voter's
    /// favourite among that node's candidates.
    pub fn from_ranking(
        voter_id: impl Into<String>,
        accept: bool,
        ranking: &[usize],
        k: usize,
    ) -> Self {
        let choices = bracket_nodes(k)
            .iter()
            .map(|node| {
                let span = node.start..node.start + node.len;
                let favourite = ranking
                    .iter()
                    .copied()
                    .find(|c| span.contains(c))
                    .expect("ranking covers every candidate");
                if node.upper().contains(&favourite) {
                    Half::Upper
                } else {
                    Half::Lower
                }
            })
            .collect();
        Self {
            voter_id: voter_id.into(),
            accept,
            choices,
        }
    }

    pub fn marks(&self) -> String {
        self.choices
            .iter()
            .map(|h| match h {
                Half::Upper => 'U',
                Half::Lower => 'L',
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketStep {
    pub node: usize,
    pub candidates: Vec<CandidateId>,
    pub votes_upper: u64,
    pub votes_lower: u64,
    pub chosen: Half,
    /// Equal votes; the upper half was kept.
    pub tie: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketResult {
    pub ballot_accepted: bool,
    pub votes_accept: u64,
    pub votes_reject: u64,
    pub trace: Vec<BracketStep>,
    pub winner: Option<CandidateId>,
}

pub fn bracket_elect(candidates: &[Candidate], ballots: &[BracketBallot]) -> Result<BracketResult> {
    if candidates.is_empty() {
        return Err(Error::Config("bracket needs at least one candidate".into()));
    }
    if ballots.is_empty() {
        return Err(Error::NoBallots);
    }
    let nodes = bracket_nodes(candidates.len());
    let mut voters = HashSet::new();
    for b in ballots {
        if !voters.insert(b.voter_id.as_str()) {
            return Err(Error::DuplicateVoter(b.voter_id.clone()));
        }
        if b.choices.len() != nodes.len() {
            return Err(Error::MalformedBracketBallot {
                voter: b.voter_id.clone(),
                reason: format!(
                    "{} half choices for {} candidates, expected {}",
                    b.choices.len(),
                    candidates.len(),
                    nodes.len()
                ),
            });
        }
    }

    let votes_accept = ballots.iter().filter(|b| b.accept).count() as u64;
    let votes_reject = ballots.len() as u64 - votes_accept;
    if votes_accept <= votes_reject {
        return Ok(BracketResult {
            ballot_accepted: false,
            votes_accept,
            votes_reject,
            trace: Vec::new(),
            winner: None,
        });
    }

    // preorder index of the node covering exactly start..start+len
    let node_at = |start: usize, len: usize| {
        nodes
            .iter()
            .find(|n| n.start == start && n.len == len)
            .copied()
            .expect("range is a bracket node")
    };

    let mut trace = Vec::new();
    let (mut start, mut len) = (0, candidates.len());
    while len > 1 {
        let node = node_at(start, len);
        let votes_upper = ballots
            .iter()
            .filter(|b| b.choices[node.index] == Half::Upper)
            .count() as u64;
        let votes_lower = ballots.len() as u64 - votes_upper;
        let chosen = if votes_lower > votes_upper {
            Half::Lower
        } else {
            Half::Upper
        };
        trace.push(BracketStep {
            node: node.index,
            candidates: candidates[start..start + len]
                .iter()
                .map(|c| c.id.clone())
                .collect(),
            votes_upper,
            votes_lower,
            chosen,
            tie: votes_upper == votes_lower,
        });
        let next = match chosen {
            Half::Upper => node.upper(),
            Half::Lower => node.lower(),
        };
        start = next.start;
        len = next.len();
    }

    Ok(BracketResult {
        ballot_accepted: true,
        votes_accept,
        votes_reject,
        trace,
        winner: Some(candidates[start].id.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seven() -> Vec<Candidate> {
        (1..=7).map(|i| Candidate::new(format!("c{i}"), format!("Candidate {i}"))).collect()
    }

    #[test]
    fn seven_names_take_seven_marks() {
        assert_eq!(marks_per_ballot(7), 7);
        let nodes = bracket_nodes(7);
        let spans: Vec<_> = nodes.iter().map(|n| (n.start, n.len)).collect();
        assert_eq!(spans, [(0, 7), (0, 4), (0, 2), (2, 2), (4, 3), (4, 2)]);
        assert_eq!(nodes[0].upper(), 0..4);
        assert_eq!(nodes[0].lower(), 4..7);
        assert_eq!(marks_per_ballot(1), 1);
        for k in 1..40 {
            assert_eq!(marks_per_ballot(k), k);
        }
    }

    #[test]
    fn unanimous_upper_elects_first() {
        let ballots: Vec<_> = (0..3)
            .map(|i| BracketBallot::from_marks(format!("v{i}"), true, "UUUUUU").unwrap())
            .collect();
        let r = bracket_elect(&seven(), &ballots).unwrap();
        assert_eq!(r.winner.unwrap().as_str(), "c1");
        assert_eq!(r.trace.len(), 3);
        assert!(r.trace.iter().all(|s| s.chosen == Half::Upper && !s.tie));
    }

    #[test]
    fn rejected_ballot_has_no_winner() {
        let ballots = vec![
            BracketBallot::from_marks("a", false, "UUUUUU").unwrap(),
            BracketBallot::from_marks("b", false, "UUUUUU").unwrap(),
            BracketBallot::from_marks("c", true, "UUUUUU").unwrap(),
        ];
        let r = bracket_elect(&seven(), &ballots).unwrap();
        assert!(!r.ballot_accepted);
        assert_eq!(r.winner, None);
        assert!(r.trace.is_empty());
        // an even split is not a majority either
        let even = vec![
            BracketBallot::from_marks("a", false, "UUUUUU").unwrap(),
            BracketBallot::from_marks("b", true, "UUUUUU").unwrap(),
        ];
        assert!(!bracket_elect(&seven(), &even).unwrap().ballot_accepted);
    }

    #[test]
    fn mixed_marks_replay() {
        // node order: [1-7], [1-4], [1-2], [3-4], [5-7], [5-6]
        let ballots = vec![
            BracketBallot::from_marks("v1", true, "LUULUU").unwrap(),
            BracketBallot::from_marks("v2", true, "LLLLLL").unwrap(),
            BracketBallot::from_marks("v3", false, "UUUUUU").unwrap(),
            BracketBallot::from_marks("v4", true, "LULUUL").unwrap(),
            BracketBallot::from_marks("v5", true, "ULUULU").unwrap(),
        ];
        let r = bracket_elect(&seven(), &ballots).unwrap();
        assert_eq!((r.votes_accept, r.votes_reject), (4, 1));
        let steps: Vec<_> = r
            .trace
            .iter()
            .map(|s| (s.node, s.votes_upper, s.votes_lower, s.chosen))
            .collect();
        assert_eq!(
            steps,
            [(0, 2, 3, Half::Lower), (4, 3, 2, Half::Upper), (5, 3, 2, Half::Upper)]
        );
        assert_eq!(r.winner.unwrap().as_str(), "c5");
    }

    #[test]
    fn node_tie_keeps_upper_and_flags() {
        let cands = seven()[..2].to_vec();
        let ballots = vec![
            BracketBallot::from_marks("a", true, "U").unwrap(),
            BracketBallot::from_marks("b", true, "L").unwrap(),
            BracketBallot::from_marks("c", false, "L").unwrap(),
            BracketBallot::from_marks("d", true, "U").unwrap(),
        ];
        let r = bracket_elect(&cands, &ballots).unwrap();
        assert!(r.trace[0].tie);
        assert_eq!(r.winner.unwrap().as_str(), "c1");
    }

    #[test]
    fn malformed_and_empty() {
        let short = vec![BracketBallot::from_marks("a", true, "UUU").unwrap()];
        assert!(matches!(
            bracket_elect(&seven(), &short),
            Err(Error::MalformedBracketBallot { .. })
        ));
        assert!(BracketBallot::from_marks("a", true, "UXU").is_err());
        assert!(matches!(bracket_elect(&seven(), &[]), Err(Error::NoBallots)));
        let dup = vec![
            BracketBallot::from_marks("a", true, "UUUUUU").unwrap(),
            BracketBallot::from_marks("a", true, "UUUUUU").unwrap(),
        ];
        assert!(matches!(bracket_elect(&seven(), &dup), Err(Error::DuplicateVoter(_))));
    }

    #[test]
    fn single_candidate_needs_only_acceptance() {
        let cands = seven()[..1].to_vec();
        let r = bracket_elect(&cands, &[BracketBallot::from_marks("a", true, "").unwrap()]).unwrap();
        assert_eq!(r.winner.unwrap().as_str(), "c1");
        assert!(r.trace.is_empty());
    }

    #[test]
    fn winning_path_depth() {
        for k in 1..=33usize {
            let ceil_log = (k as f64).log2().ceil() as usize;
            let floor_log = (k as f64).log2().floor() as usize;
            let cands: Vec<_> = (0..k).map(|i| Candidate::new(format!("c{i}"), "")).collect();
            for target in 0..k {
                let mut ranking = vec![target];
                ranking.extend((0..k).filter(|&c| c != target));
                let b = BracketBallot::from_ranking("v", true, &ranking, k);
                assert_eq!(b.marks().len(), k - 1);
                let r = bracket_elect(&cands, &[b]).unwrap();
                assert_eq!(r.winner.as_ref().unwrap(), &cands[target].id);
                assert!(r.trace.len() >= floor_log && r.trace.len() <= ceil_log);
                if target == 0 {
                    assert_eq!(r.trace.len(), ceil_log);
                }
            }
        }
    }
}
