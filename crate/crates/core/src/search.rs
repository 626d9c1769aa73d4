use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use itertools::Itertools;

use crate::dimension::dimension;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::realizers::Construction;
use crate::rep::{Interval, IntervalRepresentation, LengthConstraint};

/// A finite space of representations: n elements, lengths from the
/// constraint, endpoints on the grid of multiples of 1/q inside a window
/// wide enough that no representation is lost to truncation.
#[derive(Debug, Clone)]
pub struct SearchSpace {
    n: usize,
    constraint: LengthConstraint,
    q: i64,
}

impl SearchSpace {
    pub fn new(n: usize, constraint: LengthConstraint, q: i64) -> Result<SearchSpace> {
        if n == 0 {
            return Err(Error::InvalidConstraint(
                "search space needs at least one element".into(),
            ));
        }
        if q < 1 {
            return Err(Error::InvalidConstraint(
                "grid resolution must be at least one".into(),
            ));
        }
        Ok(SearchSpace { n, constraint, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn constraint(&self) -> &LengthConstraint {
        &self.constraint
    }

    /// Upper bound on endpoint values: n such intervals laid end to end
    /// with a one-step gap each fit below it, and gap compression shrinks
    /// every representation into that shape.
    pub fn window(&self) -> Rational {
        let max_len = self.constraint.max_length();
        &Rational::from_int(self.n as i64) * &(max_len + &Rational::one())
    }

    pub fn description(&self) -> String {
        format!("n={} q={} lengths={}", self.n, self.q, self.constraint)
    }

    /// Allowed interval lengths in grid units, ascending.
    fn grid_lengths(&self) -> Vec<i64> {
        let q = Rational::from_int(self.q);
        match &self.constraint {
            LengthConstraint::FiniteSet(set) => {
                set.iter().filter_map(|s| (s * &q).to_i64()).collect()
            }
            LengthConstraint::Range { lo, hi } => {
                let lo = (lo * &q).ceil_i64().unwrap_or(0).max(0);
                let hi = (hi * &q).floor_i64().unwrap_or(-1);
                (lo..=hi).collect()
            }
        }
    }
}

/// The relative position of all endpoints, written as per-element rank
/// pairs. Two representations with equal keys induce the same poset.
fn rank_key(pattern: &[(i64, i64)]) -> Vec<(usize, usize)> {
    let mut values: Vec<i64> = pattern.iter().flat_map(|&(l, r)| [l, r]).collect();
    values.sort_unstable();
    values.dedup();
    pattern
        .iter()
        .map(|&(l, r)| {
            (
                values.binary_search(&l).unwrap(),
                values.binary_search(&r).unwrap(),
            )
        })
        .collect()
}

fn enumerate_patterns(space: &SearchSpace) -> Vec<Vec<(i64, i64)>> {
    let lengths = space.grid_lengths();
    if lengths.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut cur: Vec<(i64, i64)> = Vec::new();
    let mut used: Vec<i64> = Vec::new();
    fn rec(
        n: usize,
        lengths: &[i64],
        cur: &mut Vec<(i64, i64)>,
        used: &mut Vec<i64>,
        seen: &mut HashSet<Vec<(usize, usize)>>,
        out: &mut Vec<Vec<(i64, i64)>>,
    ) {
        if cur.len() == n {
            if seen.insert(rank_key(cur)) {
                out.push(cur.clone());
            }
            return;
        }
        // First interval starts at zero. Every later left endpoint moves
        // strictly right of the previous one but at most one step past the
        // rightmost endpoint so far; any larger gap compresses to that.
        let (lo, hi) = match cur.last() {
            None => (0, 0),
            Some(&(prev_l, _)) => {
                let max_used = *used.iter().max().unwrap();
                (prev_l + 1, max_used + 1)
            }
        };
        for v in lo..=hi {
            if used.contains(&v) {
                continue;
            }
            for &d in lengths {
                let r = v + d;
                if d > 0 && used.contains(&r) {
                    continue;
                }
                cur.push((v, r));
                used.push(v);
                if d > 0 {
                    used.push(r);
                }
                rec(n, lengths, cur, used, seen, out);
                if d > 0 {
                    used.pop();
                }
                used.pop();
                cur.pop();
            }
        }
    }
    rec(space.n, &lengths, &mut cur, &mut used, &mut seen, &mut out);
    out
}

fn materialize(space: &SearchSpace, pattern: &[(i64, i64)]) -> IntervalRepresentation {
    let pairs: Vec<(String, Interval)> = pattern
        .iter()
        .enumerate()
        .map(|(i, &(l, r))| {
            (
                format!("e{}", i + 1),
                Interval::new(
                    Rational::new(l, space.q).unwrap(),
                    Rational::new(r, space.q).unwrap(),
                )
                .unwrap(),
            )
        })
        .collect();
    IntervalRepresentation::new(pairs).unwrap()
}

/// All distinguishing representations of the space, one per relative
/// endpoint arrangement, in a fixed deterministic order. Elements are named
/// e1..en in order of left endpoint.
pub fn enumerate_space(space: &SearchSpace) -> Vec<IntervalRepresentation> {
    enumerate_patterns(space)
        .iter()
        .map(|p| materialize(space, p))
        .collect()
}

#[derive(Debug, Clone)]
pub struct SurveyOptions {
    pub block_size: usize,
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many blocks, counting replayed ones; used to split a
    /// long survey across runs.
    pub stop_after_blocks: Option<usize>,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            block_size: 32,
            checkpoint: None,
            stop_after_blocks: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ReportMode {
    Survey,
    Verify,
}

/// Outcome of a survey or a bound verification over a space. The stable
/// text rendering is deterministic: equal inputs give byte-equal reports,
/// whether or not a checkpoint was replayed.
#[derive(Debug, Clone)]
pub struct SearchReport {
    mode: ReportMode,
    pub space: String,
    pub patterns: usize,
    pub labeled: usize,
    pub distinct: usize,
    pub dim_counts: BTreeMap<usize, usize>,
    /// Posets whose dimension exceeded the cap: (cap, how many).
    pub over_cap: (usize, usize),
    pub max_dim: Option<usize>,
    pub witness: Option<String>,
    pub candidates: Vec<String>,
    pub checked: usize,
    pub skipped: usize,
    pub violations: Vec<String>,
    pub blocks_done: usize,
    pub blocks_total: usize,
    pub resumed_blocks: usize,
}

impl SearchReport {
    fn new(mode: ReportMode, space: &SearchSpace) -> SearchReport {
        SearchReport {
            mode,
            space: space.description(),
            patterns: 0,
            labeled: 0,
            distinct: 0,
            dim_counts: BTreeMap::new(),
            over_cap: (0, 0),
            max_dim: None,
            witness: None,
            candidates: Vec::new(),
            checked: 0,
            skipped: 0,
            violations: Vec::new(),
            blocks_done: 0,
            blocks_total: 0,
            resumed_blocks: 0,
        }
    }

    /// Deterministic report text. Wall-clock and checkpoint lineage stay
    /// out so resumed and fresh runs render identically.
    pub fn stable_text(&self) -> String {
        let mut s = String::new();
        s.push_str("search v1\n");
        s.push_str(&format!("space {}\n", self.space));
        s.push_str(&format!("patterns {}\n", self.patterns));
        match self.mode {
            ReportMode::Survey => {
                s.push_str(&format!(
                    "blocks {}/{}\n",
                    self.blocks_done, self.blocks_total
                ));
                s.push_str(&format!("labeled {}\n", self.labeled));
                s.push_str(&format!("distinct {}\n", self.distinct));
                for (k, m) in &self.dim_counts {
                    s.push_str(&format!("dim {} count {}\n", k, m));
                }
                if self.over_cap.1 > 0 {
                    s.push_str(&format!(
                        "dim >{} count {}\n",
                        self.over_cap.0, self.over_cap.1
                    ));
                }
                match self.max_dim {
                    Some(k) => s.push_str(&format!("max {}\n", k)),
                    None => s.push_str("max none\n"),
                }
                if let Some(w) = &self.witness {
                    s.push_str("witness\n");
                    for line in w.lines() {
                        s.push_str(&format!("  {}\n", line));
                    }
                }
                s.push_str(&format!("candidates {}\n", self.candidates.len()));
                for c in &self.candidates {
                    s.push_str("candidate\n");
                    for line in c.lines() {
                        s.push_str(&format!("  {}\n", line));
                    }
                }
            }
            ReportMode::Verify => {
                s.push_str(&format!("checked {}\n", self.checked));
                s.push_str(&format!("skipped {}\n", self.skipped));
                s.push_str(&format!("violations {}\n", self.violations.len()));
                for v in &self.violations {
                    s.push_str(&format!("violation {}\n", v));
                }
            }
        }
        s
    }
}

const CKPT_HEADER: &str = "ordim-ckpt v1";

fn ckpt_space_line(space: &SearchSpace, max_k: usize, block_size: usize) -> String {
    format!(
        "space {} max_k={} block={}",
        space.description(),
        max_k,
        block_size
    )
}

fn read_checkpoint(path: &Path, space_line: &str) -> Result<Vec<Vec<usize>>> {
    let corrupt = |msg: &str| Error::CheckpointCorrupt(msg.to_string());
    let text = fs::read_to_string(path)
        .map_err(|e| Error::CheckpointCorrupt(format!("unreadable: {}", e)))?;
    let mut lines = text.lines();
    if lines.next() != Some(CKPT_HEADER) {
        return Err(corrupt("missing header"));
    }
    if lines.next() != Some(space_line) {
        return Err(corrupt("checkpoint belongs to a different search"));
    }
    let mut blocks = Vec::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        if parts.next() != Some("done") {
            return Err(corrupt("unexpected line"));
        }
        let idx: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| corrupt("bad block index"))?;
        if idx != blocks.len() {
            return Err(corrupt("block indices out of order"));
        }
        let csv = parts.next().ok_or_else(|| corrupt("missing tally"))?;
        if parts.next().is_some() {
            return Err(corrupt("trailing tokens"));
        }
        let dims: Vec<usize> = if csv == "-" {
            Vec::new()
        } else {
            csv.split(',')
                .map(|t| t.parse().map_err(|_| corrupt("bad tally entry")))
                .collect::<Result<_>>()?
        };
        blocks.push(dims);
    }
    Ok(blocks)
}

fn append_checkpoint_line(path: &Path, idx: usize, dims: &[usize]) -> Result<()> {
    let csv = if dims.is_empty() {
        "-".to_string()
    } else {
        dims.iter().map(|d| d.to_string()).join(",")
    };
    let mut f = fs::OpenOptions::new()
        .append(true)
        .open(path)
        .map_err(|e| Error::CheckpointCorrupt(format!("unwritable: {}", e)))?;
    writeln!(f, "done {} {}", idx, csv)
        .map_err(|e| Error::CheckpointCorrupt(format!("write failed: {}", e)))?;
    Ok(())
}

/// Exact dimension of every distinct labeled poset induced by the space.
/// Each relative arrangement is crossed with all assignments of element
/// names to its intervals; distinct posets are counted once, against the
/// oracle capped at max_k. A checkpoint, when given, records finished
/// blocks so an interrupted survey resumes without repeating oracle work
/// and renders a byte-identical report.
pub fn dimension_survey(
    space: &SearchSpace,
    max_k: usize,
    options: &SurveyOptions,
) -> Result<SearchReport> {
    if max_k < 1 {
        return Err(Error::InvalidConstraint(
            "dimension cap must be at least one".into(),
        ));
    }
    if options.block_size < 1 {
        return Err(Error::InvalidConstraint(
            "block size must be at least one".into(),
        ));
    }
    let patterns = enumerate_patterns(space);
    let mut report = SearchReport::new(ReportMode::Survey, space);
    report.patterns = patterns.len();
    report.blocks_total = patterns.len().div_ceil(options.block_size);

    let space_line = ckpt_space_line(space, max_k, options.block_size);
    let mut replay: Vec<Vec<usize>> = Vec::new();
    if let Some(path) = &options.checkpoint {
        if path.exists() {
            replay = read_checkpoint(path, &space_line)?;
            if replay.len() > report.blocks_total {
                return Err(Error::CheckpointCorrupt(
                    "more blocks than the space holds".into(),
                ));
            }
        } else {
            fs::write(path, format!("{}\n{}\n", CKPT_HEADER, space_line))
                .map_err(|e| Error::CheckpointCorrupt(format!("unwritable: {}", e)))?;
        }
    }
    report.resumed_blocks = replay.len();

    let perms: Vec<Vec<usize>> = (0..space.n).permutations(space.n).collect();
    let mut seen: HashSet<String> = HashSet::new();
    let mut best: Option<(usize, String)> = None;

    for (block_idx, block) in patterns.chunks(options.block_size).enumerate() {
        if let Some(limit) = options.stop_after_blocks {
            if block_idx >= limit {
                return Ok(report);
            }
        }
        let replayed = block_idx < replay.len();
        let mut fresh_dims: Vec<usize> = Vec::new();
        let mut replay_iter = if replayed {
            Some(replay[block_idx].iter())
        } else {
            None
        };
        for pattern in block {
            for perm in &perms {
                report.labeled += 1;
                let relabeled: Vec<(i64, i64)> = perm.iter().map(|&i| pattern[i]).collect();
                let rep = materialize(space, &relabeled);
                let p = rep.poset_of();
                let key = p.to_text();
                if !seen.insert(key) {
                    continue;
                }
                let dim = match &mut replay_iter {
                    Some(it) => *it.next().ok_or_else(|| {
                        Error::CheckpointCorrupt("tally shorter than the block".into())
                    })?,
                    None => match dimension(&p, max_k) {
                        Ok(d) => d,
                        Err(Error::ExceedsCap { .. }) => max_k + 1,
                        Err(e) => return Err(e),
                    },
                };
                if !replayed {
                    fresh_dims.push(dim);
                }
                if dim > max_k {
                    report.over_cap = (max_k, report.over_cap.1 + 1);
                } else {
                    *report.dim_counts.entry(dim).or_insert(0) += 1;
                }
                if best.as_ref().is_none_or(|(b, _)| dim > *b) {
                    best = Some((dim, rep.to_text()));
                }
                if dim >= 4 && report.candidates.len() < 8 {
                    report.candidates.push(rep.to_text());
                }
            }
        }
        if let Some(it) = &mut replay_iter {
            if it.next().is_some() {
                return Err(Error::CheckpointCorrupt(
                    "tally longer than the block".into(),
                ));
            }
        }
        if !replayed {
            if let Some(path) = &options.checkpoint {
                append_checkpoint_line(path, block_idx, &fresh_dims)?;
            }
        }
        report.blocks_done = block_idx + 1;
    }
    report.distinct = seen.len();
    if let Some((dim, text)) = best {
        report.max_dim = Some(dim);
        report.witness = Some(text);
    }
    Ok(report)
}

/// Applies a construction to every representation of the space, verifying
/// success and the size guarantee. Representations outside the
/// construction's length class are counted and skipped; everything else
/// must succeed, and any failure lands in the report verbatim.
pub fn verify_bound(space: &SearchSpace, construction: &Construction) -> Result<SearchReport> {
    let mut report = SearchReport::new(ReportMode::Verify, space);
    for rep in enumerate_space(space) {
        report.patterns += 1;
        match construction.apply(&rep) {
            Ok(r) => {
                report.checked += 1;
                let bound = construction.bound(&rep);
                if r.extensions().len() > bound {
                    report.violations.push(format!(
                        "{} extensions, bound {}, on {}",
                        r.extensions().len(),
                        bound,
                        one_line(&rep)
                    ));
                }
            }
            Err(Error::LengthsOutOfClass(_)) | Err(Error::ZeroLengthPresent) => {
                report.skipped += 1;
            }
            Err(e) => {
                report
                    .violations
                    .push(format!("{} on {}", e, one_line(&rep)));
            }
        }
    }
    Ok(report)
}

fn one_line(rep: &IntervalRepresentation) -> String {
    rep.to_text().trim_end().replace('\n', "; ")
}
