//! Majority Judgement tallying on arbitrary ordinal scales, its three-grade
//! score form, the strong/weak/no approval procedure with block ranking,
//! bracket elections, and a brute-force harness for the behavioural
//! properties of these rules.
//!
//! ```
//! use mjvote::{fixtures, rank, Method};
//!
//! let election = fixtures::greater_smalltown();
//! let result = rank(Method::Approval3, &election.profile().unwrap()).unwrap();
//! assert_eq!(result.winner().unwrap().as_str(), "cathy");
//! ```

pub mod approval;
pub mod bracket;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod mj;
pub mod mj3;
pub mod model;
pub mod properties;
pub mod ranking;
pub mod suite;

pub use approval::{approval_rank, ApprovalTally, Block};
pub use bracket::{bracket_elect, BracketBallot, BracketResult, Half};
pub use error::{Error, Result};
pub use mj::{mj_rank, MajorityGrade};
pub use mj3::{mj3_rank, score3, ScorePair, Tally3};
pub use model::{Ballot, Candidate, CandidateId, Election, ElectionProfile, GradeProfile, GradeScale};
pub use ranking::{compare_candidates, rank, Method, RankedEntry, RankedResult};
