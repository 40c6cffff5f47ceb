//! Reference elections used by the demo command, the harness and the tests.

use crate::bracket::BracketBallot;
use crate::model::{Ballot, Candidate, Election, GradeScale};

/// Mayoral election over 100 voters with tallies (strong, weak, none):
/// Cathy (50,20,30), Jenny (45,35,20), Elsa (25,60,15), Belinda (10,80,10),
/// Ines (44,10,46), Uma (16,1,83). Non-approval is expressed by leaving the
/// candidate off the ballot.
pub fn greater_smalltown() -> Election {
    let rows: [(&str, &str, u64, u64); 6] = [
        ("belinda", "Belinda Boring", 10, 80),
        ("cathy", "Cathy Competent", 50, 20),
        ("elsa", "Elsa Everywhere", 25, 60),
        ("ines", "Ines Important", 44, 10),
        ("jenny", "Jenny Jackofalltrades", 45, 35),
        ("uma", "Uma Unknown", 16, 1),
    ];
    let candidates = rows
        .iter()
        .map(|(id, name, _, _)| Candidate::new(*id, *name))
        .collect();
    let ballots = (0..100u64)
        .map(|v| {
            let mut b = Ballot::new(format!("voter{v:03}"));
            for (id, _, strong, weak) in &rows {
                if v < *strong {
                    b = b.grade(id, "strong");
                } else if v < strong + weak {
                    b = b.grade(id, "weak");
                }
            }
            b
        })
        .collect();
    Election {
        scale: GradeScale::approval(),
        candidates,
        ballots,
    }
}

/// 21 pupils choosing between the high ropes course (H) and the zoo (Z) on
/// four grades: ten enthusiasts (H Cool!, Z Nice), one neutral pupil
/// (H Ok, Z Nice) and ten unmotivated ones (H Ok, Z Help-no).
pub fn school_outing() -> Election {
    let mut ballots = Vec::new();
    for i in 0..10 {
        ballots.push(Ballot::new(format!("eager{i}")).grade("H", "Cool!").grade("Z", "Nice"));
    }
    ballots.push(Ballot::new("neutral").grade("H", "Ok").grade("Z", "Nice"));
    for i in 0..10 {
        ballots.push(Ballot::new(format!("unmotivated{i}")).grade("H", "Ok").grade("Z", "Help-no"));
    }
    Election {
        scale: GradeScale::new(["Cool!", "Nice", "Ok", "Help-no"]).expect("static scale"),
        candidates: outing_candidates(),
        ballots,
    }
}

/// The outing on three grades, with the swing pupil voting H negative and
/// Z positive: H (10,10,1), Z (1,10,10).
pub fn school_outing_three_grade() -> Election {
    let mut ballots = Vec::new();
    for i in 0..10 {
        ballots.push(
            Ballot::new(format!("eager{i}"))
                .grade("H", "positive")
                .grade("Z", "neutral"),
        );
    }
    ballots.push(Ballot::new("strange").grade("H", "negative").grade("Z", "positive"));
    for i in 0..10 {
        ballots.push(
            Ballot::new(format!("unmotivated{i}"))
                .grade("H", "neutral")
                .grade("Z", "negative"),
        );
    }
    Election {
        scale: GradeScale::three_grade(),
        candidates: outing_candidates(),
        ballots,
    }
}

/// Every 8-ballot sub-sample of the three-grade outing, one per mix of
/// eager, strange and unmotivated pupils.
pub fn school_outing_subsamples(size: usize) -> Vec<Election> {
    let full = school_outing_three_grade();
    let eager = &full.ballots[..10];
    let strange = &full.ballots[10..11];
    let unmotivated = &full.ballots[11..];
    let mut out = Vec::new();
    for e in 0..=size.min(eager.len()) {
        for s in 0..=strange.len() {
            let Some(m) = size.checked_sub(e + s) else { continue };
            if m > unmotivated.len() {
                continue;
            }
            let ballots = eager[..e]
                .iter()
                .chain(&strange[..s])
                .chain(&unmotivated[..m])
                .cloned()
                .collect();
            out.push(Election {
                ballots,
                ..full.clone()
            });
        }
    }
    out
}

fn outing_candidates() -> Vec<Candidate> {
    vec![
        Candidate::new("H", "High ropes course"),
        Candidate::new("Z", "Zoo"),
    ]
}

/// Seven ballots on which A wins both halves (first three ballots, last
/// four) with a positive score each time, yet B wins the whole:
/// A (2,1,0) vs B (2,0,1), then A (1,3,0) vs B (2,0,2).
pub fn consistency_counterexample() -> Election {
    let rows = [
        ("p1a", "positive", "positive"),
        ("p1b", "positive", "negative"),
        ("p1c", "neutral", "positive"),
        ("p2a", "positive", "positive"),
        ("p2b", "neutral", "positive"),
        ("p2c", "neutral", "negative"),
        ("p2d", "neutral", "negative"),
    ];
    Election {
        scale: GradeScale::three_grade(),
        candidates: vec![Candidate::new("A", "A"), Candidate::new("B", "B")],
        ballots: rows
            .iter()
            .map(|(v, a, b)| Ballot::new(*v).grade("A", a).grade("B", b))
            .collect(),
    }
}

pub fn seven_candidates() -> Vec<Candidate> {
    (1..=7)
        .map(|i| Candidate::new(format!("c{i}"), format!("Candidate {i}")))
        .collect()
}

/// Five voters with mixed marks; candidate 5 wins after a 3-2 lower-half
/// decision at the root.
pub fn bracket_mixed() -> (Vec<Candidate>, Vec<BracketBallot>) {
    let rows = [
        ("v1", true, "LUULUU"),
        ("v2", true, "LLLLLL"),
        ("v3", false, "UUUUUU"),
        ("v4", true, "LULUUL"),
        ("v5", true, "ULUULU"),
    ];
    let ballots = rows
        .iter()
        .map(|(v, a, m)| BracketBallot::from_marks(*v, *a, m).expect("static marks"))
        .collect();
    (seven_candidates(), ballots)
}

/// Sincere voters whose pairwise favourite, candidate 5, sits in the
/// smaller lower half and is eliminated at the first split.
/// Returns candidates, ballots and the rankings (indices, best first).
pub fn bracket_bias() -> (Vec<Candidate>, Vec<BracketBallot>, Vec<Vec<usize>>) {
    let favourites: [&[usize]; 5] = [&[0, 4], &[1, 4], &[2, 4], &[4], &[5, 4]];
    let rankings: Vec<Vec<usize>> = favourites
        .iter()
        .map(|top| {
            let mut r = top.to_vec();
            r.extend((0..7).filter(|c| !top.contains(c)));
            r
        })
        .collect();
    let ballots = rankings
        .iter()
        .enumerate()
        .map(|(i, r)| BracketBallot::from_ranking(format!("v{}", i + 1), true, r, 7))
        .collect();
    (seven_candidates(), ballots, rankings)
}
