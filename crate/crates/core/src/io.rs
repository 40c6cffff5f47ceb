//! Election configuration, ballot files and result rendering.
//!
//! Grade ballots are long-format CSV, one grade per row:
//!
//! ```text
//! voter_id,candidate,grade
//! v1,cathy,strong
//! v1,jenny,weak
//! v2,,
//! ```
//!
//! A row with an empty candidate and grade records a ballot that grades
//! nobody. The same ballots may be given as a JSON array of
//! `{"voter_id": .., "grades": {candidate: grade}}` objects.
//!
//! Bracket ballots are CSV with header `voter_id,accept,marks`, where `marks`
//! holds one `U` (upper half) or `L` (lower half) per bracket node.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::approval::Block;
use crate::bracket::{bracket_nodes, BracketBallot, BracketResult};
use crate::error::{Error, Result};
use crate::model::{Ballot, Candidate, CandidateId, GradeScale};
use crate::properties::{DEFAULT_NO_SHOW_LIMIT, DEFAULT_PARTITION_LIMIT};
use crate::ranking::{EntryDetail, Method, RankedResult};

const BALLOT_HEADER: [&str; 3] = ["voter_id", "candidate", "grade"];
const BRACKET_HEADER: [&str; 3] = ["voter_id", "accept", "marks"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigOptions {
    #[serde(default = "default_partition_limit")]
    pub partition_limit: usize,
    #[serde(default = "default_no_show_limit")]
    pub no_show_limit: usize,
    /// List tied groups under the result table.
    #[serde(default = "default_true")]
    pub report_ties: bool,
}

fn default_partition_limit() -> usize {
    DEFAULT_PARTITION_LIMIT
}

fn default_no_show_limit() -> usize {
    DEFAULT_NO_SHOW_LIMIT
}

fn default_true() -> bool {
    true
}

impl Default for ConfigOptions {
    fn default() -> Self {
        Self {
            partition_limit: DEFAULT_PARTITION_LIMIT,
            no_show_limit: DEFAULT_NO_SHOW_LIMIT,
            report_ties: true,
        }
    }
}

/// One JSON document that fully determines a tally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElectionConfig {
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<GradeScale>,
    pub candidates: Vec<Candidate>,
    #[serde(default)]
    pub options: ConfigOptions,
}

impl ElectionConfig {
    pub fn new(method: Method, scale: Option<GradeScale>, candidates: Vec<Candidate>) -> Self {
        Self {
            method,
            scale,
            candidates,
            options: ConfigOptions::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("election config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// The configured scale, or the method's default.
    ///
    /// `approval3` labels are read positionally as strong, weak, none.
    pub fn scale(&self) -> Result<GradeScale> {
        let scale = match (&self.scale, self.method) {
            (Some(s), _) => s.clone(),
            (None, Method::Mj3) => GradeScale::three_grade(),
            (None, Method::Approval3) => GradeScale::approval(),
            (None, Method::Mj | Method::Bracket) => GradeScale::new([
                "excellent",
                "very good",
                "good",
                "acceptable",
                "poor",
                "reject",
            ])?,
        };
        if matches!(self.method, Method::Mj3 | Method::Approval3) && scale.len() != 3 {
            return Err(Error::Config(format!(
                "{} needs exactly 3 grades, config gives {}",
                self.method,
                scale.len()
            )));
        }
        Ok(scale)
    }

    pub fn validate(&self) -> Result<()> {
        if self.candidates.is_empty() {
            return Err(Error::Config("no candidates".into()));
        }
        let mut seen = HashSet::new();
        for c in &self.candidates {
            if c.id.as_str().trim().is_empty() {
                return Err(Error::Config("empty candidate id".into()));
            }
            if !seen.insert(&c.id) {
                return Err(Error::DuplicateCandidate(c.id.0.clone()));
            }
        }
        self.scale().map(|_| ())
    }

    /// Same config with a different method; the scale is re-validated.
    pub fn with_method(&self, method: Method) -> Result<Self> {
        let mut out = self.clone();
        out.method = method;
        out.validate()?;
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowIssue {
    /// 1-based line in the input (CSV) or 1-based array position (JSON).
    pub line: u64,
    pub voter: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub rows_read: u64,
    pub ballots_accepted: u64,
    pub empty_input: bool,
    pub errors: Vec<RowIssue>,
    /// Voters whose whole ballot was refused because of a bad row.
    pub rejected_voters: Vec<String>,
    pub warnings: Vec<RowIssue>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        if self.empty_input {
            let _ = writeln!(out, "empty input: no ballots");
        }
        let _ = writeln!(
            out,
            "{} rows read, {} ballots accepted, {} errors, {} warnings",
            self.rows_read,
            self.ballots_accepted,
            self.errors.len(),
            self.warnings.len()
        );
        for e in &self.errors {
            let _ = writeln!(out, "error: line {} (voter {:?}): {}", e.line, e.voter, e.reason);
        }
        for v in &self.rejected_voters {
            let _ = writeln!(out, "rejected ballot: voter {v:?}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: line {} (voter {:?}): {}", w.line, w.voter, w.reason);
        }
        out
    }
}

/// Collects ballots row by row, refusing a voter's whole ballot on any bad row.
struct BallotCollector<'a> {
    scale: GradeScale,
    known: HashSet<&'a CandidateId>,
    order: Vec<String>,
    ballots: HashMap<String, (u64, Ballot)>,
    bad_voters: HashSet<String>,
    report: ValidationReport,
}

impl<'a> BallotCollector<'a> {
    fn new(config: &'a ElectionConfig) -> Result<Self> {
        Ok(Self {
            scale: config.scale()?,
            known: config.candidates.iter().map(|c| &c.id).collect(),
            order: Vec::new(),
            ballots: HashMap::new(),
            bad_voters: HashSet::new(),
            report: ValidationReport::default(),
        })
    }

    fn error(&mut self, line: u64, voter: &str, reason: String) {
        self.report.errors.push(RowIssue {
            line,
            voter: voter.to_owned(),
            reason,
        });
        if !voter.is_empty() {
            self.bad_voters.insert(voter.to_owned());
        }
    }

    fn ballot(&mut self, line: u64, voter: &str) -> &mut Ballot {
        if !self.ballots.contains_key(voter) {
            self.order.push(voter.to_owned());
        }
        &mut self
            .ballots
            .entry(voter.to_owned())
            .or_insert_with(|| (line, Ballot::new(voter)))
            .1
    }

    fn grade(&mut self, line: u64, voter: &str, candidate: &str, grade: &str) {
        if voter.is_empty() {
            return self.error(line, voter, "empty voter id".into());
        }
        if candidate.is_empty() && grade.is_empty() {
            self.ballot(line, voter);
            return;
        }
        let id = CandidateId::from(candidate);
        if !self.known.contains(&id) {
            return self.error(line, voter, format!("unknown candidate {candidate:?}"));
        }
        if self.scale.index_of(grade).is_none() {
            return self.error(line, voter, format!("unknown grade label {grade:?}"));
        }
        let ballot = self.ballot(line, voter);
        if ballot.grades.contains_key(&id) {
            return self.error(line, voter, format!("candidate {candidate:?} graded twice"));
        }
        ballot.grades.insert(id, grade.to_owned());
    }

    fn finish(mut self) -> (Vec<Ballot>, ValidationReport) {
        let mut out = Vec::new();
        let mut rejected = Vec::new();
        for voter in &self.order {
            if self.bad_voters.contains(voter) {
                rejected.push(voter.clone());
                continue;
            }
            let (line, ballot) = self.ballots.remove(voter).expect("collected voter");
            if ballot.is_blank() {
                self.report.warnings.push(RowIssue {
                    line,
                    voter: voter.clone(),
                    reason: "ballot grades no candidate; everyone gets the worst grade".into(),
                });
            }
            out.push(ballot);
        }
        // voters with only bad rows never made it into `order`
        let mut only_bad: Vec<_> = self
            .bad_voters
            .iter()
            .filter(|v| !self.order.contains(v))
            .cloned()
            .collect();
        only_bad.sort();
        rejected.extend(only_bad);
        self.report.rejected_voters = rejected;
        self.report.ballots_accepted = out.len() as u64;
        (out, self.report)
    }
}

fn check_header(headers: &csv::StringRecord, expected: [&str; 3]) -> Result<()> {
    let got: Vec<&str> = headers.iter().collect();
    if got != expected {
        return Err(Error::Input(format!(
            "malformed header {:?}, expected {}",
            got.join(","),
            expected.join(",")
        )));
    }
    Ok(())
}

/// Parse long-format CSV grade ballots.
pub fn parse_ballots_csv<R: Read>(reader: R, config: &ElectionConfig) -> Result<(Vec<Ballot>, ValidationReport)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut collector = BallotCollector::new(config)?;
    let headers = rdr.headers()?.clone();
    if headers.is_empty() {
        collector.report.empty_input = true;
        return Ok(collector.finish());
    }
    check_header(&headers, BALLOT_HEADER)?;
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        collector.report.rows_read += 1;
        if record.len() != 3 {
            let voter = record.get(0).unwrap_or_default().to_owned();
            collector.error(line, &voter, format!("expected 3 fields, got {}", record.len()));
            continue;
        }
        collector.grade(line, &record[0], &record[1], &record[2]);
    }
    if collector.report.rows_read == 0 {
        collector.report.empty_input = true;
    }
    Ok(collector.finish())
}

/// Parse grade ballots from a JSON array.
pub fn parse_ballots_json<R: Read>(reader: R, config: &ElectionConfig) -> Result<(Vec<Ballot>, ValidationReport)> {
    let mut text = String::new();
    let mut reader = reader;
    reader.read_to_string(&mut text)?;
    let mut collector = BallotCollector::new(config)?;
    if text.trim().is_empty() {
        collector.report.empty_input = true;
        return Ok(collector.finish());
    }
    let raw: Vec<Ballot> = serde_json::from_str(&text)
        .map_err(|e| Error::Input(format!("ballot JSON: {e}")))?;
    if raw.is_empty() {
        collector.report.empty_input = true;
    }
    let mut seen = HashSet::new();
    for (i, ballot) in raw.iter().enumerate() {
        let line = i as u64 + 1;
        collector.report.rows_read += 1;
        if !seen.insert(ballot.voter_id.clone()) {
            collector.error(line, &ballot.voter_id, "duplicate voter id".into());
            continue;
        }
        collector.grade(line, &ballot.voter_id, "", "");
        for (candidate, grade) in &ballot.grades {
            collector.grade(line, &ballot.voter_id, candidate.as_str(), grade);
        }
    }
    Ok(collector.finish())
}

/// Parse a grade ballot file; `.json` files are read as JSON, anything else as CSV.
pub fn parse_ballots(path: &Path, config: &ElectionConfig) -> Result<(Vec<Ballot>, ValidationReport)> {
    let file = fs::File::open(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => parse_ballots_json(file, config),
        _ => parse_ballots_csv(file, config),
    }
}

fn parse_bool(s: &str) -> Option<bool> {
    match s.to_ascii_lowercase().as_str() {
        "true" | "yes" | "y" | "1" | "accept" => Some(true),
        "false" | "no" | "n" | "0" | "reject" => Some(false),
        _ => None,
    }
}

/// Parse bracket ballots (`voter_id,accept,marks`).
pub fn parse_bracket_ballots<R: Read>(
    reader: R,
    config: &ElectionConfig,
) -> Result<(Vec<BracketBallot>, ValidationReport)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut report = ValidationReport::default();
    let headers = rdr.headers()?.clone();
    if headers.is_empty() {
        report.empty_input = true;
        return Ok((Vec::new(), report));
    }
    check_header(&headers, BRACKET_HEADER)?;
    let expected = bracket_nodes(config.candidates.len()).len();
    let mut ballots = Vec::new();
    let mut seen = HashSet::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        report.rows_read += 1;
        let voter = record.get(0).unwrap_or_default().to_owned();
        let mut fail = |reason: String| {
            report.errors.push(RowIssue {
                line,
                voter: voter.clone(),
                reason,
            })
        };
        if record.len() != 3 {
            fail(format!("expected 3 fields, got {}", record.len()));
            continue;
        }
        if voter.is_empty() {
            fail("empty voter id".into());
            continue;
        }
        if !seen.insert(voter.clone()) {
            fail("duplicate voter id".into());
            continue;
        }
        let Some(accept) = parse_bool(&record[1]) else {
            fail(format!("accept must be true or false, got {:?}", &record[1]));
            continue;
        };
        match BracketBallot::from_marks(voter.clone(), accept, &record[2]) {
            Ok(b) if b.choices.len() == expected => ballots.push(b),
            Ok(b) => fail(format!(
                "{} marks for {} candidates, expected {expected}",
                b.choices.len(),
                config.candidates.len()
            )),
            Err(e) => fail(e.to_string()),
        }
    }
    if report.rows_read == 0 {
        report.empty_input = true;
    }
    report.ballots_accepted = ballots.len() as u64;
    Ok((ballots, report))
}

pub fn ballots_to_csv(ballots: &[Ballot], candidates: &[Candidate]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BALLOT_HEADER)?;
    for b in ballots {
        if b.is_blank() {
            w.write_record([b.voter_id.as_str(), "", ""])?;
        }
        // registration order keeps files readable
        for c in candidates {
            if let Some(g) = b.grades.get(&c.id) {
                w.write_record([b.voter_id.as_str(), c.id.as_str(), g.as_str()])?;
            }
        }
    }
    into_string(w)
}

pub fn bracket_ballots_to_csv(ballots: &[BracketBallot]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BRACKET_HEADER)?;
    for b in ballots {
        w.write_record([b.voter_id.as_str(), if b.accept { "true" } else { "false" }, &b.marks()])?;
    }
    into_string(w)
}

fn into_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Input(e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Config(format!("unknown output format {other:?}"))),
        }
    }
}

/// `count / total` as a whole percentage, halves rounded up.
pub fn percent_half_up(count: u64, total: u64) -> u64 {
    if total == 0 {
        return 0;
    }
    (200 * count + total) / (2 * total)
}

pub const REJECTION_BANNER: &str = "ballot rejected: no candidate reached majority approval";

pub fn render_result(result: &RankedResult, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => Ok(serde_json::to_string_pretty(result)? + "\n"),
        OutputFormat::Csv => render_csv(result),
        OutputFormat::Table => Ok(render_table(result)),
    }
}

fn extra_columns(result: &RankedResult) -> Vec<&'static str> {
    match result.method {
        Method::Mj => vec!["Majority grade"],
        Method::Mj3 => vec!["Majority grade", "S", "T"],
        _ => Vec::new(),
    }
}

fn extra_cells(detail: &EntryDetail) -> Vec<String> {
    match detail {
        EntryDetail::Mj { majority_grade } => vec![majority_grade.grade_label.clone()],
        EntryDetail::Mj3 {
            majority_grade,
            score,
            ..
        } => vec![
            majority_grade.grade_label.clone(),
            score.s.to_string(),
            score.t.to_string(),
        ],
        EntryDetail::Approval { .. } => Vec::new(),
    }
}

fn render_table(result: &RankedResult) -> String {
    let mut header: Vec<String> = vec!["Rank".into(), "Candidate".into()];
    header.extend(result.grade_labels.iter().cloned());
    header.extend(extra_columns(result).into_iter().map(String::from));

    let rows: Vec<Vec<String>> = result
        .entries
        .iter()
        .map(|e| {
            let mut row = vec![e.rank.to_string(), e.display_name.clone()];
            if row[1].is_empty() {
                row[1] = e.candidate.to_string();
            }
            row.extend(e.counts.iter().map(|&c| percent_half_up(c, result.n_voters).to_string()));
            row.extend(extra_cells(&e.detail));
            row
        })
        .collect();

    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            rows.iter()
                .map(|r| r[i].chars().count())
                .chain([header[i].chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let format_row = |cells: &[String]| {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == 1 {
                    format!(" {:<w$} ", c, w = widths[i])
                } else {
                    format!(" {:>w$} ", c, w = widths[i])
                }
            })
            .collect::<Vec<_>>()
            .join("|")
    };
    let rule = |ch: char| {
        widths
            .iter()
            .map(|w| ch.to_string().repeat(w + 2))
            .collect::<Vec<_>>()
            .join("+")
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} result, {} ballots; grade columns in percent",
        result.method, result.n_voters
    );
    if result.rejected {
        let _ = writeln!(out, "{REJECTION_BANNER}");
    }
    let _ = writeln!(out, "{}", format_row(&header));
    let _ = writeln!(out, "{}", rule('='));
    for (i, row) in rows.iter().enumerate() {
        let _ = writeln!(out, "{}", format_row(row));
        let this_block = result.entries[i].block();
        let boundary = result
            .entries
            .get(i + 1)
            .is_some_and(|next| next.block() != this_block);
        let _ = writeln!(out, "{}", rule(if boundary { '=' } else { '-' }));
    }
    for group in &result.tie_groups {
        let ids: Vec<&str> = group.iter().map(CandidateId::as_str).collect();
        let _ = writeln!(out, "tie: {}", ids.join(", "));
    }
    if !result.borderline.is_empty() {
        let ids: Vec<&str> = result.borderline.iter().map(CandidateId::as_str).collect();
        let _ = writeln!(out, "borderline (approved by exactly half): {}", ids.join(", "));
    }
    match result.winner() {
        Some(w) => {
            let _ = writeln!(out, "winner: {w}");
        }
        None if !result.rejected => {
            let _ = writeln!(out, "no unique winner");
        }
        None => {}
    }
    out
}

fn render_csv(result: &RankedResult) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["rank".to_owned(), "candidate".into(), "display_name".into()];
    header.extend(result.grade_labels.iter().cloned());
    header.extend(["block", "majority_grade", "s", "t"].map(String::from));
    w.write_record(&header)?;
    for e in &result.entries {
        let mut row = vec![e.rank.to_string(), e.candidate.to_string(), e.display_name.clone()];
        row.extend(e.counts.iter().map(u64::to_string));
        let (block, grade, s, t) = match &e.detail {
            EntryDetail::Mj { majority_grade } => {
                (String::new(), majority_grade.grade_label.clone(), String::new(), String::new())
            }
            EntryDetail::Mj3 {
                majority_grade,
                score,
                ..
            } => (
                String::new(),
                majority_grade.grade_label.clone(),
                score.s.to_string(),
                score.t.to_string(),
            ),
            EntryDetail::Approval { block, .. } => {
                (block.to_string(), String::new(), String::new(), String::new())
            }
        };
        row.extend([block, grade, s, t]);
        w.write_record(&row)?;
    }
    into_string(w)
}

pub fn render_bracket(result: &BracketResult, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => Ok(serde_json::to_string_pretty(result)? + "\n"),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["node", "candidates", "votes_upper", "votes_lower", "chosen", "tie"])?;
            for s in &result.trace {
                let ids: Vec<&str> = s.candidates.iter().map(CandidateId::as_str).collect();
                w.write_record([
                    s.node.to_string(),
                    ids.join(" "),
                    s.votes_upper.to_string(),
                    s.votes_lower.to_string(),
                    s.chosen.to_string(),
                    s.tie.to_string(),
                ])?;
            }
            into_string(w)
        }
        OutputFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "ballot {}: {} accept, {} reject",
                if result.ballot_accepted { "accepted" } else { "rejected" },
                result.votes_accept,
                result.votes_reject
            );
            for s in &result.trace {
                let ids: Vec<&str> = s.candidates.iter().map(CandidateId::as_str).collect();
                let _ = writeln!(
                    out,
                    "node {:>2} [{}]: upper {} / lower {} -> {}{}",
                    s.node,
                    ids.join(" "),
                    s.votes_upper,
                    s.votes_lower,
                    s.chosen,
                    if s.tie { " (tie, upper kept)" } else { "" }
                );
            }
            match &result.winner {
                Some(w) => {
                    let _ = writeln!(out, "winner: {w}");
                }
                None => {
                    let _ = writeln!(out, "no winner: search for new candidates");
                }
            }
            Ok(out)
        }
    }
}

/// Block of each candidate, for quick inspection in tests and tools.
pub fn blocks_of(result: &RankedResult) -> BTreeMap<CandidateId, Block> {
    result
        .entries
        .iter()
        .filter_map(|e| e.block().map(|b| (e.candidate.clone(), b)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approval::approval_rank;
    use crate::fixtures;
    use crate::model::build_profiles;

    fn smalltown_config() -> ElectionConfig {
        let e = fixtures::greater_smalltown();
        ElectionConfig::new(Method::Approval3, None, e.candidates)
    }

    #[test]
    fn missing_rows_complete_to_none() {
        let config = ElectionConfig::new(
            Method::Approval3,
            None,
            vec![
                Candidate::new("cathy", "Cathy"),
                Candidate::new("jenny", "Jenny"),
                Candidate::new("uma", "Uma"),
            ],
        );
        let csv = "voter_id,candidate,grade\nv1,cathy,strong\nv1,jenny,weak\n";
        let (ballots, report) = parse_ballots_csv(csv.as_bytes(), &config).unwrap();
        assert!(report.is_ok());
        assert_eq!(ballots.len(), 1);
        let p = build_profiles(&config.scale().unwrap(), &config.candidates, &ballots).unwrap();
        assert_eq!(p.profiles[2].counts, vec![0, 0, 1]);
    }

    #[test]
    fn empty_file_means_no_ballots() {
        let (ballots, report) = parse_ballots_csv("".as_bytes(), &smalltown_config()).unwrap();
        assert!(ballots.is_empty());
        assert!(report.empty_input);
        assert!(report.summary().contains("empty input"));
        let (ballots, report) =
            parse_ballots_csv("voter_id,candidate,grade\n".as_bytes(), &smalltown_config()).unwrap();
        assert!(ballots.is_empty() && report.empty_input);
    }

    #[test]
    fn bad_header_is_an_error() {
        let err = parse_ballots_csv("voter,cand,grade\nv1,cathy,strong\n".as_bytes(), &smalltown_config())
            .unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn bad_rows_are_reported_never_dropped_silently() {
        let csv = "voter_id,candidate,grade\n\
                   v1,cathy,strong\n\
                   v2,cathy,great\n\
                   v2,jenny,weak\n\
                   v3,zelda,weak\n\
                   v4,cathy,weak\n\
                   v4,cathy,strong\n\
                   v5,,\n\
                   v6,cathy\n";
        let (ballots, report) = parse_ballots_csv(csv.as_bytes(), &smalltown_config()).unwrap();
        let voters: Vec<_> = ballots.iter().map(|b| b.voter_id.as_str()).collect();
        assert_eq!(voters, ["v1", "v5"]);
        assert_eq!(report.errors.len(), 4);
        assert_eq!(report.errors[0].line, 3);
        assert!(report.errors[0].reason.contains("great"));
        assert!(report.errors[1].reason.contains("zelda"));
        assert!(report.errors[2].reason.contains("twice"));
        assert_eq!(report.rejected_voters, ["v2", "v4", "v3", "v6"]);
        assert_eq!(report.warnings.len(), 1);
        assert_eq!(report.warnings[0].voter, "v5");
        assert_eq!(report.rows_read, 8);
    }

    #[test]
    fn json_ballots() {
        let config = smalltown_config();
        let text = r#"[
            {"voter_id": "a", "grades": {"cathy": "strong", "uma": "weak"}},
            {"voter_id": "b", "grades": {}},
            {"voter_id": "a", "grades": {"cathy": "weak"}}
        ]"#;
        let (ballots, report) = parse_ballots_json(text.as_bytes(), &config).unwrap();
        assert_eq!(ballots.len(), 1);
        assert_eq!(ballots[0].voter_id, "b");
        assert_eq!(report.rejected_voters, ["a"]);
        assert_eq!(report.warnings.len(), 1);
    }

    #[test]
    fn smalltown_csv_round_trip() {
        let e = fixtures::greater_smalltown();
        let csv = ballots_to_csv(&e.ballots, &e.candidates).unwrap();
        let (ballots, report) = parse_ballots_csv(csv.as_bytes(), &smalltown_config()).unwrap();
        assert!(report.is_ok());
        assert_eq!(ballots.len(), 100);
        let p = build_profiles(&GradeScale::approval(), &e.candidates, &ballots).unwrap();
        let get = |id: &str| p.profile(&id.into()).unwrap().counts.clone();
        assert_eq!(get("cathy"), [50, 20, 30]);
        assert_eq!(get("jenny"), [45, 35, 20]);
        assert_eq!(get("elsa"), [25, 60, 15]);
        assert_eq!(get("belinda"), [10, 80, 10]);
        assert_eq!(get("ines"), [44, 10, 46]);
        assert_eq!(get("uma"), [16, 1, 83]);
    }

    #[test]
    fn config_scale_rules() {
        let c = ElectionConfig::from_json(
            r#"{"method": "approval3", "scale": ["Good", "OK", "None"],
                "candidates": [{"id": "a", "name": "A", "party": "P", "profession": "mayor"}]}"#,
        )
        .unwrap();
        assert_eq!(c.scale().unwrap().label(1), "OK");
        assert_eq!(c.candidates[0].party.as_deref(), Some("P"));
        assert_eq!(c.options.partition_limit, 8);
        let err = ElectionConfig::from_json(
            r#"{"method": "mj3", "scale": ["a","b","c","d"], "candidates": [{"id": "a", "name": "A"}]}"#,
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(ElectionConfig::from_json(r#"{"method": "mj", "candidates": []}"#).is_err());
        assert!(ElectionConfig::from_json(r#"{"method": "borda", "candidates": [{"id":"a","name":"A"}]}"#).is_err());
        let mj = ElectionConfig::from_json(r#"{"method": "mj", "candidates": [{"id":"a","name":"A"}]}"#).unwrap();
        assert_eq!(mj.scale().unwrap().len(), 6);
    }

    #[test]
    fn percentages_round_half_up() {
        assert_eq!(percent_half_up(50, 100), 50);
        assert_eq!(percent_half_up(1, 8), 13); // 12.5
        assert_eq!(percent_half_up(1, 3), 33);
        assert_eq!(percent_half_up(2, 3), 67);
        assert_eq!(percent_half_up(0, 0), 0);
    }

    #[test]
    fn smalltown_table_layout() {
        let result = approval_rank(&fixtures::greater_smalltown().profile().unwrap()).unwrap();
        let table = render_result(&result, OutputFormat::Table).unwrap();
        let lines: Vec<&str> = table.lines().collect();
        let row_idx = |name: &str| lines.iter().position(|l| l.contains(name)).unwrap();
        let is_double = |i: usize| lines[i].starts_with('=');
        let is_single = |i: usize| lines[i].starts_with('-');
        assert!(is_single(row_idx("Cathy") + 1));
        assert!(is_single(row_idx("Jenny") + 1));
        assert!(is_double(row_idx("Elsa") + 1));
        assert!(is_single(row_idx("Belinda") + 1));
        assert!(is_double(row_idx("Ines") + 1));
        assert!(is_single(row_idx("Uma") + 1));
        let cathy: Vec<&str> = lines[row_idx("Cathy")].split('|').map(str::trim).collect();
        assert_eq!(cathy, ["1", "Cathy Competent", "50", "20", "30"]);
        assert!(!table.contains(REJECTION_BANNER));
        assert!(table.contains("winner: cathy"));
    }

    #[test]
    fn rejected_table_has_banner() {
        let e = crate::model::ElectionProfile::from_counts(
            GradeScale::approval(),
            vec![Candidate::new("a", "A")],
            vec![vec![1, 0, 3]],
        )
        .unwrap();
        let table = render_result(&approval_rank(&e).unwrap(), OutputFormat::Table).unwrap();
        assert!(table.contains(REJECTION_BANNER));
        let row: Vec<&str> = table.lines().find(|l| l.contains(" A ")).unwrap().split('|').map(str::trim).collect();
        assert_eq!(row, ["1", "A", "25", "0", "75"]);
    }

    #[test]
    fn json_round_trip() {
        let result = approval_rank(&fixtures::greater_smalltown().profile().unwrap()).unwrap();
        let json = render_result(&result, OutputFormat::Json).unwrap();
        let back: RankedResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, result);

        let mj3 = crate::mj3::mj3_rank(&fixtures::school_outing_three_grade().profile().unwrap()).unwrap();
        let back: RankedResult =
            serde_json::from_str(&render_result(&mj3, OutputFormat::Json).unwrap()).unwrap();
        assert_eq!(back, mj3);
    }

    #[test]
    fn csv_result_keeps_order_and_counts() {
        let result = approval_rank(&fixtures::greater_smalltown().profile().unwrap()).unwrap();
        let csv = render_result(&result, OutputFormat::Csv).unwrap();
        let mut rdr = csv::Reader::from_reader(csv.as_bytes());
        let ids: Vec<String> = rdr.records().map(|r| r.unwrap()[1].to_owned()).collect();
        assert_eq!(ids, ["cathy", "jenny", "elsa", "belinda", "ines", "uma"]);
        assert!(csv.lines().nth(1).unwrap().ends_with("50,20,30,strong_majority,,,"));
    }

    #[test]
    fn bracket_ballot_file() {
        let config = ElectionConfig::new(Method::Bracket, None, fixtures::seven_candidates());
        let text = "voter_id,accept,marks\nv1,true,UUUUUU\nv2,no,LLLLLL\nv3,maybe,UUUUUU\nv4,true,UU\nv1,true,UUUUUU\n";
        let (ballots, report) = parse_bracket_ballots(text.as_bytes(), &config).unwrap();
        assert_eq!(ballots.len(), 2);
        assert!(!ballots[1].accept);
        assert_eq!(report.errors.len(), 3);
        let (_, ballots) = fixtures::bracket_mixed();
        let csv = bracket_ballots_to_csv(&ballots).unwrap();
        let (back, report) = parse_bracket_ballots(csv.as_bytes(), &config).unwrap();
        assert!(report.is_ok());
        assert_eq!(back, ballots);
    }
}
