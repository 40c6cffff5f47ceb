//! Brute-force checks of the behavioural claims made for three-grade
//! Majority Judgement and the approval procedure built on it.
//!
//! Everything here enumerates exhaustively on small instances: 2-partitions
//! of a ballot set, every possible extra ballot, every alternative ballot of
//! one voter. Limits keep the enumeration in the millisecond range.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::approval::ApprovalTally;
use crate::error::{Error, Result};
use crate::mj3::{score3, ScorePair, Tally3};
use crate::model::{Ballot, Candidate, CandidateId, Election, ElectionProfile, GradeScale};
use crate::ranking::{compare_candidates, rank, Method};

/// Largest ballot count for 2-partition enumeration (2^7 - 1 splits).
pub const DEFAULT_PARTITION_LIMIT: usize = 8;
/// Largest electorate for the exhaustive no-show sweep.
pub const DEFAULT_NO_SHOW_LIMIT: usize = 5;
/// Cap on the number of distinct ballots a search may enumerate.
pub const BALLOT_SPACE_LIMIT: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyViolation {
    /// Bit `i` set means ballot `i` is in the first part.
    pub partition: u64,
    pub candidate: CandidateId,
    pub score_part1: i64,
    pub score_part2: i64,
    pub overall_winner: Option<CandidateId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCheckReport {
    pub n_partitions_checked: u64,
    pub n_premise_satisfied: u64,
    pub violations: Vec<ConsistencyViolation>,
}

impl PartitionCheckReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    fn absorb(&mut self, other: PartitionCheckReport) {
        self.n_partitions_checked += other.n_partitions_checked;
        self.n_premise_satisfied += other.n_premise_satisfied;
        self.violations.extend(other.violations);
    }
}

/// Unique top candidate by `(s, t)`; `None` when the top is shared.
fn unique_winner(scores: &[ScorePair]) -> Option<usize> {
    let best = scores.iter().max()?;
    let mut tops = scores.iter().enumerate().filter(|(_, s)| *s == best);
    let (idx, _) = tops.next()?;
    tops.next().is_none().then_some(idx)
}

fn tallies_of(rows: &[&Vec<usize>], k: usize) -> Vec<Tally3> {
    let mut out = vec![Tally3::default(); k];
    for row in rows {
        for (t, &g) in out.iter_mut().zip(row.iter()) {
            match g {
                0 => t.positive += 1,
                1 => t.neutral += 1,
                _ => t.negative += 1,
            }
        }
    }
    out
}

/// Check weak consistency of three-grade MJ on every split of the ballots
/// into two non-empty parts.
///
/// A split satisfies the premise for candidate A when A is the unique winner
/// of both parts and A's scores in the parts are both positive, both
/// negative, or both zero. A violation is such a split where A is not the
/// unique winner of the whole ballot set.
pub fn check_consistency(election: &Election, limit: usize) -> Result<PartitionCheckReport> {
    if election.scale.len() != 3 {
        return Err(Error::Config("consistency check needs a 3-grade scale".into()));
    }
    let n = election.ballots.len();
    if n > limit || n > 63 {
        return Err(Error::LimitExceeded { size: n, limit });
    }
    let matrix = election.grade_matrix()?;
    let k = election.candidates.len();
    let mut report = PartitionCheckReport::default();
    if n < 2 || k == 0 {
        return Ok(report);
    }

    let all: Vec<&Vec<usize>> = matrix.iter().collect();
    let overall: Vec<ScorePair> = tallies_of(&all, k).into_iter().map(score3).collect();
    let overall_winner = unique_winner(&overall);

    // the last ballot always sits in part 2, so each unordered split is seen once
    for mask in 1u64..(1u64 << (n - 1)) {
        report.n_partitions_checked += 1;
        let (p1, p2): (Vec<_>, Vec<_>) =
            matrix.iter().enumerate().partition(|(i, _)| mask >> i & 1 == 1);
        let p1: Vec<&Vec<usize>> = p1.into_iter().map(|(_, r)| r).collect();
        let p2: Vec<&Vec<usize>> = p2.into_iter().map(|(_, r)| r).collect();
        let s1: Vec<ScorePair> = tallies_of(&p1, k).into_iter().map(score3).collect();
        let s2: Vec<ScorePair> = tallies_of(&p2, k).into_iter().map(score3).collect();
        let (Some(w1), Some(w2)) = (unique_winner(&s1), unique_winner(&s2)) else {
            continue;
        };
        if w1 != w2 {
            continue;
        }
        let (a1, a2) = (s1[w1].s, s2[w1].s);
        let same_sign = a1 * a2 > 0 || (a1 == 0 && a2 == 0);
        if !same_sign {
            continue;
        }
        report.n_premise_satisfied += 1;
        if overall_winner != Some(w1) {
            report.violations.push(ConsistencyViolation {
                partition: mask,
                candidate: election.candidates[w1].id.clone(),
                score_part1: a1,
                score_part2: a2,
                overall_winner: overall_winner.map(|w| election.candidates[w].id.clone()),
            });
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoShowMode {
    /// The ballot was added to the profile.
    Addition,
    /// The ballot was taken out of the election.
    Removal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoShowCounterexample {
    pub mode: NoShowMode,
    /// Grade label per candidate, in registration order.
    pub ballot: Vec<String>,
    /// Voters who cast this ballot (removal mode only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub voters: Vec<String>,
    /// Graded higher by the ballot, yet overtaken once the ballot counts.
    pub favoured: CandidateId,
    pub overtaken_by: CandidateId,
}

/// Pairs `(x, y)` where `ballot` grades x above y, y is not above x in
/// `base`, and y is strictly above x once `ballot` is added.
fn flips(method: Method, base: &ElectionProfile, ballot: &[usize]) -> Result<Vec<(usize, usize)>> {
    let mut with = base.clone();
    with.add_graded(ballot);
    let mut out = Vec::new();
    for x in 0..ballot.len() {
        for y in 0..ballot.len() {
            if ballot[x] >= ballot[y] {
                continue;
            }
            let cmp = |p: &ElectionProfile| {
                compare_candidates(method, &p.profiles[x].counts, &p.profiles[y].counts)
            };
            if cmp(base)? != Ordering::Greater && cmp(&with)? == Ordering::Greater {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

fn ballot_space(scale: &GradeScale, k: usize) -> Result<usize> {
    let size = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(scale.len()));
    match size {
        Some(s) if s <= BALLOT_SPACE_LIMIT => Ok(s),
        _ => Err(Error::LimitExceeded {
            size: size.unwrap_or(usize::MAX),
            limit: BALLOT_SPACE_LIMIT,
        }),
    }
}

/// Decode ballot number `code` into one grade index per candidate.
fn decode_ballot(mut code: usize, grades: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let g = code % grades;
            code /= grades;
            g
        })
        .collect()
}

fn labels(scale: &GradeScale, ballot: &[usize]) -> Vec<String> {
    ballot.iter().map(|&g| scale.label(g).to_owned()).collect()
}

/// Try every possible extra ballot and report those that hurt a candidate
/// the ballot ranks higher.
pub fn search_no_show(election: &ElectionProfile, method: Method) -> Result<Vec<NoShowCounterexample>> {
    let k = election.candidates.len();
    if k < 2 {
        return Ok(Vec::new());
    }
    let grades = election.scale.len();
    let space = ballot_space(&election.scale, k)?;
    let mut out = Vec::new();
    for code in 0..space {
        let ballot = decode_ballot(code, grades, k);
        for (x, y) in flips(method, election, &ballot)? {
            out.push(NoShowCounterexample {
                mode: NoShowMode::Addition,
                ballot: labels(&election.scale, &ballot),
                voters: Vec::new(),
                favoured: election.candidates[x].id.clone(),
                overtaken_by: election.candidates[y].id.clone(),
            });
        }
    }
    Ok(out)
}

/// Take each distinct cast ballot out again and report those whose voter
/// would have done better by staying home.
pub fn search_no_show_removal(election: &Election, method: Method) -> Result<Vec<NoShowCounterexample>> {
    let k = election.candidates.len();
    if k < 2 {
        return Ok(Vec::new());
    }
    let full = election.profile()?;
    let matrix = election.grade_matrix()?;
    let mut distinct: BTreeMap<Vec<usize>, Vec<String>> = BTreeMap::new();
    for (row, ballot) in matrix.into_iter().zip(&election.ballots) {
        distinct.entry(row).or_default().push(ballot.voter_id.clone());
    }
    let mut out = Vec::new();
    for (row, voters) in distinct {
        let mut base = full.clone();
        base.remove_graded(&row);
        for (x, y) in flips(method, &base, &row)? {
            out.push(NoShowCounterexample {
                mode: NoShowMode::Removal,
                ballot: labels(&election.scale, &row),
                voters: voters.clone(),
                favoured: election.candidates[x].id.clone(),
                overtaken_by: election.candidates[y].id.clone(),
            });
        }
    }
    Ok(out)
}

/// Number of (profile, extra ballot) cases checked and counterexamples found
/// over every two-candidate three-grade profile with at most `max_voters`.
pub fn exhaustive_no_show(method: Method, max_voters: u64) -> Result<(u64, Vec<NoShowCounterexample>)> {
    let scale = GradeScale::three_grade();
    let candidates = vec![Candidate::new("A", "A"), Candidate::new("B", "B")];
    let mut cases = 0;
    let mut found = Vec::new();
    for n in 0..=max_voters {
        let tallies: Vec<Vec<u64>> = (0..=n)
            .flat_map(|p| (0..=n - p).map(move |m| vec![p, n - p - m, m]))
            .collect();
        for a in &tallies {
            for b in &tallies {
                let profile = ElectionProfile::from_counts(
                    scale.clone(),
                    candidates.clone(),
                    vec![a.clone(), b.clone()],
                )?;
                cases += 9;
                found.extend(search_no_show(&profile, method)?);
            }
        }
    }
    Ok((cases, found))
}

/// Compare the score-based three-grade ranking with iterated median removal
/// on every profile of up to `max_candidates` candidates and `max_voters`
/// ballots. Returns the number of profiles checked and those where the two
/// rankings differ, as count vectors.
pub fn exhaustive_equivalence(max_voters: u64, max_candidates: usize) -> Result<(u64, Vec<Vec<Vec<u64>>>)> {
    let scale = GradeScale::three_grade();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for n in 1..=max_voters {
        let tallies: Vec<Vec<u64>> = (0..=n)
            .flat_map(|p| (0..=n - p).map(move |m| vec![p, n - p - m, m]))
            .collect();
        for k in 1..=max_candidates {
            let candidates: Vec<Candidate> = (0..k)
                .map(|i| Candidate::new(format!("c{i}"), format!("c{i}")))
                .collect();
            let mut pick = vec![0usize; k];
            loop {
                let counts: Vec<Vec<u64>> = pick.iter().map(|&i| tallies[i].clone()).collect();
                let profile = ElectionProfile::from_counts(scale.clone(), candidates.clone(), counts.clone())?;
                let by_score = rank(Method::Mj3, &profile)?;
                let by_median = rank(Method::Mj, &profile)?;
                let key = |r: &crate::ranking::RankedResult| {
                    r.entries
                        .iter()
                        .map(|e| (e.rank, e.candidate.clone()))
                        .collect::<Vec<_>>()
                };
                checked += 1;
                if key(&by_score) != key(&by_median) {
                    mismatches.push(counts);
                }
                // odometer over tally choices
                let mut i = 0;
                while i < k {
                    pick[i] += 1;
                    if pick[i] < tallies.len() {
                        break;
                    }
                    pick[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        }
    }
    Ok((checked, mismatches))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationShift {
    pub shift: u64,
    pub before: ApprovalTally,
    pub after: ApprovalTally,
}

/// Move `shift` weak approvals to strong approval and `shift` more to no
/// approval.
pub fn polarize(tally: ApprovalTally, shift: u64) -> Result<PolarizationShift> {
    let needed = shift
        .checked_mul(2)
        .filter(|&n| n <= tally.weak)
        .ok_or(Error::InsufficientWeakApproval {
            shift,
            needed: shift.saturating_mul(2),
            available: tally.weak,
        })?;
    Ok(PolarizationShift {
        shift,
        before: tally,
        after: ApprovalTally::new(tally.strong + shift, tally.weak - needed, tally.none + shift),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deviation {
    pub ballot: Vec<String>,
    pub winner: Option<CandidateId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManipulationReport {
    pub voter: String,
    pub honest_winner: Option<CandidateId>,
    pub deviations_checked: u64,
    pub improving: Vec<Deviation>,
}

/// Enumerate every ballot `voter` could have cast instead and list those
/// that elect someone the voter honestly grades higher than the honest
/// winner. No winner (tie or rejection) is valued like the worst grade.
pub fn manipulation_probe(election: &Election, voter: &str, method: Method) -> Result<ManipulationReport> {
    let pos = election
        .ballots
        .iter()
        .position(|b| b.voter_id == voter)
        .ok_or_else(|| Error::Config(format!("no ballot from voter {voter:?}")))?;
    let matrix = election.grade_matrix()?;
    let honest = matrix[pos].clone();
    let k = election.candidates.len();
    let grades = election.scale.len();
    let space = ballot_space(&election.scale, k)?;

    let mut base = election.profile()?;
    base.remove_graded(&honest);
    let outcome = |ballot: &[usize]| -> Result<Option<usize>> {
        let mut p = base.clone();
        p.add_graded(ballot);
        let r = rank(method, &p)?;
        Ok(r.winner().and_then(|w| p.position(w)))
    };
    let value = |w: Option<usize>| w.map_or(election.scale.worst(), |w| honest[w]);

    let honest_winner = outcome(&honest)?;
    let mut improving = Vec::new();
    for code in 0..space {
        let ballot = decode_ballot(code, grades, k);
        if ballot == honest {
            continue;
        }
        let w = outcome(&ballot)?;
        if value(w) < value(honest_winner) {
            improving.push(Deviation {
                ballot: labels(&election.scale, &ballot),
                winner: w.map(|w| election.candidates[w].id.clone()),
            });
        }
    }
    Ok(ManipulationReport {
        voter: voter.to_owned(),
        honest_winner: honest_winner.map(|w| election.candidates[w].id.clone()),
        deviations_checked: space as u64 - 1,
        improving,
    })
}

/// A random three-grade election: 2 or 3 candidates, a ballot count drawn
/// from `voters`, every grade drawn uniformly.
pub fn random_three_grade_election(rng: &mut impl Rng, voters: RangeInclusive<usize>) -> Election {
    let scale = GradeScale::three_grade();
    let k = rng.gen_range(2..=3);
    let n = rng.gen_range(voters);
    let candidates: Vec<Candidate> = (0..k)
        .map(|i| Candidate::new(format!("c{i}"), format!("Candidate {i}")))
        .collect();
    let ballots = (0..n)
        .map(|v| {
            let mut b = Ballot::new(format!("v{v}"));
            for c in &candidates {
                let g = rng.gen_range(0..3);
                b.grades.insert(c.id.clone(), scale.label(g).to_owned());
            }
            b
        })
        .collect();
    Election {
        scale,
        candidates,
        ballots,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub seed: u64,
    pub profiles: u64,
    pub totals: PartitionCheckReport,
    /// Index of each profile with at least one violation.
    pub failing_profiles: Vec<u64>,
}

/// Run [`check_consistency`] on `profiles` random elections drawn from one
/// seeded stream.
pub fn consistency_sweep(seed: u64, profiles: u64, max_voters: usize) -> Result<SweepReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SweepReport {
        seed,
        profiles,
        ..SweepReport::default()
    };
    for i in 0..profiles {
        let election = random_three_grade_election(&mut rng, 1..=max_voters);
        let r = check_consistency(&election, max_voters)?;
        if !r.holds() {
            report.failing_profiles.push(i);
        }
        report.totals.absorb(r);
    }
    Ok(report)
}

/// Random `(tally, shift)` pairs with a valid shift.
pub fn polarization_sweep(seed: u64, cases: u64) -> Result<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..cases {
        let tally = ApprovalTally::new(
            rng.gen_range(0..1000),
            rng.gen_range(0..1000),
            rng.gen_range(0..1000),
        );
        let shift = rng.gen_range(0..=tally.weak / 2);
        let p = polarize(tally, shift)?;
        let ok = p.after.strong == p.before.strong + shift
            && p.after.weak + 2 * shift == p.before.weak
            && p.after.none == p.before.none + shift
            && p.after.strong as i64 - p.after.none as i64
                == p.before.strong as i64 - p.before.none as i64
            && p.after.total() == p.before.total();
        if !ok {
            failures += 1;
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approval::{classify_block, Block};
    use crate::fixtures;

    fn three_grade(ballots: &[(&str, [&str; 2])]) -> Election {
        Election {
            scale: GradeScale::three_grade(),
            candidates: vec![Candidate::new("A", "A"), Candidate::new("B", "B")],
            ballots: ballots
                .iter()
                .map(|(v, [a, b])| Ballot::new(*v).grade("A", a).grade("B", b))
                .collect(),
        }
    }

    #[test]
    fn two_identical_ballots_are_consistent() {
        let e = three_grade(&[("v1", ["positive", "neutral"]), ("v2", ["positive", "neutral"])]);
        let r = check_consistency(&e, 8).unwrap();
        assert_eq!(r.n_partitions_checked, 1);
        assert_eq!(r.n_premise_satisfied, 1);
        assert!(r.holds());
    }

    #[test]
    fn partition_limit_enforced() {
        let ballots: Vec<_> = (0..9).map(|i| (format!("v{i}"), ["positive", "neutral"])).collect();
        let refs: Vec<_> = ballots.iter().map(|(v, g)| (v.as_str(), *g)).collect();
        let e = three_grade(&refs);
        assert!(matches!(
            check_consistency(&e, 8),
            Err(Error::LimitExceeded { size: 9, limit: 8 })
        ));
        assert!(check_consistency(&e, 9).is_ok());
    }

    #[test]
    fn six_ballot_profiles_are_consistent() {
        // no counterexample exists below seven ballots
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..1000 {
            let e = random_three_grade_election(&mut rng, 6..=6);
            assert!(check_consistency(&e, 8).unwrap().holds());
        }
    }

    #[test]
    fn seven_ballot_counterexample_is_detected() {
        let e = fixtures::consistency_counterexample();
        let r = check_consistency(&e, 8).unwrap();
        assert!(!r.holds());
        let v = r
            .violations
            .iter()
            .find(|v| v.partition == 0b111)
            .expect("the constructed split is reported");
        assert_eq!(v.candidate.as_str(), "A");
        assert_eq!((v.score_part1, v.score_part2), (2, 1));
        assert_eq!(v.overall_winner.as_ref().unwrap().as_str(), "B");
    }

    #[test]
    fn school_outing_removal_counterexample() {
        let e = fixtures::school_outing();
        let found = search_no_show_removal(&e, Method::Mj).unwrap();
        let enthusiastic = found
            .iter()
            .find(|c| c.ballot == ["Cool!", "Nice"])
            .expect("enthusiastic voter is a no-show counterexample");
        assert_eq!(enthusiastic.favoured.as_str(), "H");
        assert_eq!(enthusiastic.overtaken_by.as_str(), "Z");
        assert_eq!(enthusiastic.voters.len(), 10);
        // no such voter under the three-grade score
        assert!(search_no_show_removal(&fixtures::school_outing_three_grade(), Method::Mj3)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn three_grade_two_candidate_profiles_have_no_counterexample() {
        for method in [Method::Mj3, Method::Mj, Method::Approval3] {
            let (cases, found) = exhaustive_no_show(method, DEFAULT_NO_SHOW_LIMIT as u64).unwrap();
            assert!(cases > 0);
            assert!(found.is_empty(), "{method}: {found:?}");
        }
    }

    #[test]
    fn single_candidate_has_nothing_to_flip() {
        let e = ElectionProfile::from_counts(
            GradeScale::three_grade(),
            vec![Candidate::new("A", "A")],
            vec![vec![1, 1, 1]],
        )
        .unwrap();
        assert!(search_no_show(&e, Method::Mj3).unwrap().is_empty());
    }

    #[test]
    fn favourable_ballot_moves_scores_the_right_way() {
        // S_A never drops and S_B never rises when the ballot grades A above B
        for p in 0..4u64 {
            for u in 0..4u64 {
                for m in 0..4u64 {
                    let t = Tally3::new(p, u, m);
                    let base = score3(t);
                    let up = |g: usize| {
                        let mut t = t;
                        match g {
                            0 => t.positive += 1,
                            1 => t.neutral += 1,
                            _ => t.negative += 1,
                        }
                        score3(t)
                    };
                    for (ga, gb) in [(0, 1), (0, 2), (1, 2)] {
                        assert!(up(ga).s >= base.s);
                        assert!(up(gb).s <= base.s);
                    }
                }
            }
        }
    }

    #[test]
    fn polarization_examples() {
        let p = polarize(ApprovalTally::new(7, 8, 5), 2).unwrap();
        assert_eq!(p.after, ApprovalTally::new(9, 4, 7));
        let id = polarize(ApprovalTally::new(7, 8, 5), 0).unwrap();
        assert_eq!(id.after, id.before);
        let p = polarize(ApprovalTally::new(10, 10, 0), 5).unwrap();
        assert_eq!(p.after, ApprovalTally::new(15, 0, 5));
        assert_eq!(p.after.strong - p.after.none, 10);
        assert!(matches!(
            polarize(ApprovalTally::new(1, 3, 1), 2),
            Err(Error::InsufficientWeakApproval { .. })
        ));
        assert_eq!(polarization_sweep(1, 2000).unwrap(), 0);
    }

    #[test]
    fn polarization_helps_popular_and_hurts_unpopular() {
        for s in 0..12u64 {
            for w in 2..12u64 {
                for n in 0..12u64 {
                    let before = ApprovalTally::new(s, w, n);
                    let after = polarize(before, 1).unwrap().after;
                    if classify_block(before) == Block::StrongMajority {
                        assert_eq!(classify_block(after), Block::StrongMajority);
                        assert!(after.strong > before.strong);
                    } else {
                        assert!(after.none > before.none);
                        assert!(after.any() < before.any());
                    }
                }
            }
        }
    }

    #[test]
    fn manipulation_probe_cases() {
        // voter already elects their favourite
        let e = three_grade(&[
            ("v1", ["positive", "negative"]),
            ("v2", ["positive", "neutral"]),
            ("v3", ["neutral", "positive"]),
        ]);
        let r = manipulation_probe(&e, "v1", Method::Mj3).unwrap();
        assert_eq!(r.honest_winner.as_ref().unwrap().as_str(), "A");
        assert!(r.improving.is_empty());
        assert_eq!(r.deviations_checked, 8);

        let solo = Election {
            scale: GradeScale::three_grade(),
            candidates: vec![Candidate::new("A", "A")],
            ballots: vec![Ballot::new("v1").grade("A", "negative")],
        };
        assert!(manipulation_probe(&solo, "v1", Method::Mj3).unwrap().improving.is_empty());
        assert!(manipulation_probe(&solo, "nobody", Method::Mj3).is_err());
    }

    /// Full deviation enumeration written out independently of the probe.
    fn brute_force_improving(e: &Election, voter: usize) -> usize {
        let honest = e.grade_matrix().unwrap()[voter].clone();
        let winner = |ballots: &[Vec<usize>]| {
            let mut t = [Tally3::default(); 2];
            for b in ballots {
                for c in 0..2 {
                    match b[c] {
                        0 => t[c].positive += 1,
                        1 => t[c].neutral += 1,
                        _ => t[c].negative += 1,
                    }
                }
            }
            match score3(t[0]).cmp(&score3(t[1])) {
                Ordering::Greater => Some(0),
                Ordering::Less => Some(1),
                Ordering::Equal => None,
            }
        };
        let value = |w: Option<usize>| w.map_or(2, |w| honest[w]);
        let mut rows = e.grade_matrix().unwrap();
        let honest_value = value(winner(&rows));
        let mut count = 0;
        for ga in 0..3 {
            for gb in 0..3 {
                if [ga, gb] == honest[..] {
                    continue;
                }
                rows[voter] = vec![ga, gb];
                if value(winner(&rows)) < honest_value {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn manipulation_probe_matches_enumeration() {
        let g = ["positive", "neutral", "negative"];
        // every 3-voter, 2-candidate election
        for code in 0..729usize {
            let mut c = code;
            let mut ballots = Vec::new();
            for v in 0..3 {
                let a = g[c % 3];
                c /= 3;
                let b = g[c % 3];
                c /= 3;
                ballots.push((format!("v{v}"), [a, b]));
            }
            let refs: Vec<_> = ballots.iter().map(|(v, gs)| (v.as_str(), *gs)).collect();
            let e = three_grade(&refs);
            for voter in 0..3 {
                let r = manipulation_probe(&e, &format!("v{voter}"), Method::Mj3).unwrap();
                assert_eq!(r.improving.len(), brute_force_improving(&e, voter), "code {code}");
            }
        }
    }
}
