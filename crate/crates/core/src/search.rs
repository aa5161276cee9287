//! Height-ordered search over the parameter plane.
//!
//! Points are enumerated lexicographically: `b` ascending over the reduced
//! fractions of bounded height, then `c` ascending. The stream is cut into
//! fixed-size blocks that workers grade in parallel. A single committer
//! writes finished blocks strictly in block order, so the output files are
//! always a prefix of the uninterrupted run and the checkpoint cursor is the
//! end of that prefix. On resume, the output files are truncated back to the
//! byte lengths recorded in the checkpoint before work continues.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::coefficients::{E21Form, Params};
use crate::rational::{serde_frac, to_fraction_string, Rational};
use crate::verifier::{grade, Reason, Verdict};

pub const CHECKPOINT_VERSION: u32 = 1;
pub const DEFAULT_BLOCK_SIZE: u64 = 64;
const CHECKPOINT_INTERVAL: Duration = Duration::from_millis(250);

/// Closed interval with optional ends.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RationalRange {
    pub min: Option<Rational>,
    pub max: Option<Rational>,
}

impl RationalRange {
    pub fn new(min: Option<Rational>, max: Option<Rational>) -> Self {
        Self { min, max }
    }

    pub fn contains(&self, r: &Rational) -> bool {
        self.min.as_ref().is_none_or(|m| r >= m) && self.max.as_ref().is_none_or(|m| r <= m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpace {
    pub height: u64,
    pub b_range: RationalRange,
    pub c_range: RationalRange,
    pub e21_form: E21Form,
}

impl SearchSpace {
    pub fn new(height: u64) -> Self {
        Self {
            height,
            b_range: RationalRange::default(),
            c_range: RationalRange::default(),
            e21_form: E21Form::default(),
        }
    }

    pub fn with_form(mut self, form: E21Form) -> Self {
        self.e21_form = form;
        self
    }

    /// Canonical text describing the space, hashed into the checkpoint digest.
    fn config_text(&self, block_size: u64) -> String {
        let end = |r: &Option<Rational>| r.as_ref().map_or("-".to_string(), to_fraction_string);
        format!(
            "version={CHECKPOINT_VERSION}\nheight={}\nb_min={}\nb_max={}\nc_min={}\nc_max={}\ne21_form={}\nblock_size={block_size}\n",
            self.height,
            end(&self.b_range.min),
            end(&self.b_range.max),
            end(&self.c_range.min),
            end(&self.c_range.max),
            self.e21_form,
        )
    }

    pub fn digest(&self, block_size: u64) -> String {
        let hash = Sha256::digest(self.config_text(block_size).as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Reduced fractions `p/q` with `|p| ≤ h` and `1 ≤ q ≤ h`, ascending.
pub fn fractions_of_height(h: u64) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(BigInt::from(0))];
    for q in 1..=h {
        for p in 1..=h {
            if p.gcd(&q) == 1 {
                let r = Rational::new(BigInt::from(p), BigInt::from(q));
                out.push(-r.clone());
                out.push(r);
            }
        }
    }
    out.sort();
    out
}

/// The ordered point set of a [`SearchSpace`], addressable by index.
#[derive(Debug, Clone)]
pub struct Enumeration {
    b_values: Vec<Rational>,
    c_values: Vec<Rational>,
}

impl Enumeration {
    pub fn new(space: &SearchSpace) -> Self {
        let all = fractions_of_height(space.height);
        let pick = |range: &RationalRange| -> Vec<Rational> {
            all.iter().filter(|r| range.contains(r)).cloned().collect()
        };
        Self {
            b_values: pick(&space.b_range),
            c_values: pick(&space.c_range),
        }
    }

    pub fn len(&self) -> u64 {
        (self.b_values.len() * self.c_values.len()) as u64
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, index: u64) -> Params {
        let n = self.c_values.len() as u64;
        let (i, j) = ((index / n) as usize, (index % n) as usize);
        Params::new(self.b_values[i].clone(), self.c_values[j].clone())
    }

    pub fn iter(&self) -> impl Iterator<Item = Params> + '_ {
        self.b_values.iter().flat_map(move |b| {
            self.c_values
                .iter()
                .map(move |c| Params::new(b.clone(), c.clone()))
        })
    }
}

/// Deterministic lexicographic stream of every point in `space`.
pub fn enumerate(space: &SearchSpace) -> impl Iterator<Item = Params> {
    let e = Enumeration::new(space);
    (0..e.len()).map(move |i| e.point(i))
}

/// One line of the JSONL output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    #[serde(with = "serde_frac")]
    pub b: Rational,
    #[serde(with = "serde_frac")]
    pub c: Rational,
    pub level: u8,
    pub reason: String,
    #[serde(with = "serde_frac::vec")]
    pub residuals: Vec<Rational>,
    pub e21_form: E21Form,
    pub ts: String,
}

impl SearchRecord {
    pub fn from_verdict(v: &Verdict, ts: String) -> Self {
        Self {
            b: v.params.b.clone(),
            c: v.params.c.clone(),
            level: v.level,
            reason: v.reason.code().to_string(),
            residuals: v.residuals.clone(),
            e21_form: v.e21_form,
            ts,
        }
    }

    pub fn params(&self) -> Params {
        Params::new(self.b.clone(), self.c.clone())
    }
}

fn now_iso8601() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

/// Points graded so far, by level. `singular` is the part of level 0 that
/// was skipped by classification.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LevelCounts {
    pub singular: u64,
    pub levels: [u64; 7],
}

impl LevelCounts {
    pub fn graded(&self) -> u64 {
        self.levels.iter().sum()
    }

    /// Nonsingular points rejected by the discriminant prefilter.
    pub fn prefilter_rejections(&self) -> u64 {
        self.levels[0] - self.singular
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub digest: String,
    pub config: String,
    pub cursor: u64,
    pub total: u64,
    pub output_bytes: u64,
    pub hits_bytes: u64,
    pub counts: LevelCounts,
}

impl Checkpoint {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str("# cuboid search checkpoint\n");
        s.push_str(&format!("version = {CHECKPOINT_VERSION}\n"));
        s.push_str(&format!("digest = {}\n", self.digest));
        for line in self.config.lines() {
            if let Some((k, v)) = line.split_once('=') {
                if k != "version" {
                    s.push_str(&format!("config.{k} = {v}\n"));
                }
            }
        }
        s.push_str(&format!("cursor = {}\n", self.cursor));
        s.push_str(&format!("total = {}\n", self.total));
        s.push_str(&format!("output_bytes = {}\n", self.output_bytes));
        s.push_str(&format!("hits_bytes = {}\n", self.hits_bytes));
        s.push_str(&format!("singular = {}\n", self.counts.singular));
        for (i, n) in self.counts.levels.iter().enumerate() {
            s.push_str(&format!("level{i} = {n}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Checkpoint, SearchError> {
        let bad = |m: String| SearchError::CorruptCheckpoint(m);
        let mut kv = HashMap::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("malformed line `{line}`")))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get = |k: &str| kv.get(k).ok_or_else(|| bad(format!("missing key `{k}`")));
        let num = |k: &str| -> Result<u64, SearchError> {
            get(k)?
                .parse()
                .map_err(|_| bad(format!("key `{k}` is not an integer")))
        };
        let version = num("version")?;
        if version != CHECKPOINT_VERSION as u64 {
            return Err(bad(format!("unsupported checkpoint version {version}")));
        }
        let mut levels = [0u64; 7];
        for (i, slot) in levels.iter_mut().enumerate() {
            *slot = num(&format!("level{i}"))?;
        }
        let mut config_keys: Vec<_> = kv
            .iter()
            .filter_map(|(k, v)| {
                k.strip_prefix("config.")
                    .map(|k| (k.to_string(), v.clone()))
            })
            .collect();
        config_keys.sort();
        let config = config_keys
            .into_iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect();
        Ok(Checkpoint {
            digest: get("digest")?.clone(),
            config,
            cursor: num("cursor")?,
            total: num("total")?,
            output_bytes: num("output_bytes")?,
            hits_bytes: num("hits_bytes")?,
            counts: LevelCounts {
                singular: num("singular")?,
                levels,
            },
        })
    }

    pub fn load(path: &Path) -> Result<Checkpoint, SearchError> {
        Checkpoint::parse(&fs::read_to_string(path)?)
    }

    /// Writes via a temporary file and rename.
    pub fn save(&self, path: &Path) -> Result<(), SearchError> {
        let tmp = path.with_extension("tmp");
        {
            let mut f = File::create(&tmp)?;
            f.write_all(self.to_text().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("checkpoint was written for a different search configuration (expected digest {expected}, found {found})")]
    CheckpointMismatch { expected: String, found: String },
    #[error("corrupt checkpoint: {0}")]
    CorruptCheckpoint(String),
    #[error("invalid search space: {0}")]
    InvalidSpace(String),
    #[error("malformed record: {0}")]
    MalformedRecord(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub jobs: usize,
    pub checkpoint: PathBuf,
    pub output: PathBuf,
    pub hits: PathBuf,
    pub stop_on_hit: bool,
    pub block_size: u64,
    /// Commit at most this many blocks in this invocation, then stop as if
    /// interrupted.
    pub max_blocks: Option<u64>,
}

impl RunOptions {
    /// Options with the hit file placed next to the output.
    pub fn new(jobs: usize, checkpoint: impl Into<PathBuf>, output: impl Into<PathBuf>) -> Self {
        let output = output.into();
        Self {
            jobs,
            checkpoint: checkpoint.into(),
            hits: default_hits_path(&output),
            output,
            stop_on_hit: false,
            block_size: DEFAULT_BLOCK_SIZE,
            max_blocks: None,
        }
    }
}

/// `out.jsonl` → `out.hits.jsonl`.
pub fn default_hits_path(output: &Path) -> PathBuf {
    let stem = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "search".to_string());
    output.with_file_name(format!("{stem}.hits.jsonl"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub e21_form: E21Form,
    pub total: u64,
    pub cursor: u64,
    pub complete: bool,
    pub stopped_on_hit: bool,
    pub counts: LevelCounts,
    pub hits: Vec<Params>,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "e21 form:  {}", self.e21_form)?;
        writeln!(f, "points:    {} of {}", self.cursor, self.total)?;
        writeln!(f, "singular:  {}", self.counts.singular)?;
        for (i, n) in self.counts.levels.iter().enumerate() {
            writeln!(f, "level {i}:   {n}")?;
        }
        if self.stopped_on_hit {
            writeln!(f, "stopped on perfect-cuboid hit")?;
        } else if !self.complete {
            writeln!(f, "interrupted; resume with the same checkpoint")?;
        }
        for h in &self.hits {
            writeln!(f, "PERFECT CUBOID at {h}")?;
        }
        Ok(())
    }
}

struct PointOutcome {
    level: u8,
    singular: bool,
    line: Option<String>,
}

fn grade_block(
    enumeration: &Enumeration,
    form: E21Form,
    range: std::ops::Range<u64>,
) -> Vec<PointOutcome> {
    range
        .map(|i| {
            let v = grade(&enumeration.point(i), form);
            let line = (v.level >= 1).then(|| {
                let rec = SearchRecord::from_verdict(&v, now_iso8601());
                serde_json::to_string(&rec).expect("record serializes")
            });
            PointOutcome {
                level: v.level,
                singular: v.reason == Reason::Singular,
                line,
            }
        })
        .collect()
}

/// Opens `path` for appending after truncating it to `len` bytes.
fn open_truncated(path: &Path, len: u64) -> Result<File, SearchError> {
    let mut f = OpenOptions::new()
        .create(true)
        .truncate(false)
        .read(true)
        .write(true)
        .open(path)?;
    let actual = f.metadata()?.len();
    if actual < len {
        return Err(SearchError::CorruptCheckpoint(format!(
            "{} holds {actual} bytes but the checkpoint expects at least {len}",
            path.display()
        )));
    }
    f.set_len(len)?;
    f.seek(SeekFrom::Start(len))?;
    Ok(f)
}

struct Sink {
    out: BufWriter<File>,
    hits: BufWriter<File>,
}

impl Sink {
    fn flush(&mut self) -> io::Result<()> {
        self.out.flush()?;
        self.hits.flush()?;
        self.out.get_ref().sync_data()?;
        self.hits.get_ref().sync_data()
    }
}

/// Grades every point of `space`, resuming from `opts.checkpoint` when it
/// exists.
pub fn run(space: &SearchSpace, opts: &RunOptions) -> Result<Summary, SearchError> {
    if space.height == 0 {
        return Err(SearchError::InvalidSpace(
            "height must be at least 1".into(),
        ));
    }
    if opts.jobs == 0 || opts.block_size == 0 {
        return Err(SearchError::InvalidSpace(
            "jobs and block size must be positive".into(),
        ));
    }
    let enumeration = Enumeration::new(space);
    let total = enumeration.len();
    let digest = space.digest(opts.block_size);

    let mut cp = if opts.checkpoint.exists() {
        let cp = Checkpoint::load(&opts.checkpoint)?;
        if cp.digest != digest {
            return Err(SearchError::CheckpointMismatch {
                expected: digest,
                found: cp.digest,
            });
        }
        if cp.total != total || cp.cursor > total {
            return Err(SearchError::CorruptCheckpoint(
                "cursor outside the enumeration".into(),
            ));
        }
        cp
    } else {
        Checkpoint {
            digest,
            config: space.config_text(opts.block_size),
            cursor: 0,
            total,
            output_bytes: 0,
            hits_bytes: 0,
            counts: LevelCounts::default(),
        }
    };

    let mut sink = Sink {
        out: BufWriter::new(open_truncated(&opts.output, cp.output_bytes)?),
        hits: BufWriter::new(open_truncated(&opts.hits, cp.hits_bytes)?),
    };
    let mut hits = read_hits(&opts.hits)?;
    let mut stopped_on_hit = false;

    let block_size = opts.block_size;
    let n_blocks = total.div_ceil(block_size);
    let first_block = if cp.cursor == total {
        n_blocks
    } else {
        cp.cursor / block_size
    };
    let next_block = AtomicU64::new(first_block);
    let stop = AtomicBool::new(false);

    let commit_result: Result<(), SearchError> = thread::scope(|scope| {
        let (tx, rx) = mpsc::sync_channel::<(u64, Vec<PointOutcome>)>(opts.jobs * 2);
        for _ in 0..opts.jobs {
            let tx = tx.clone();
            let (enumeration, next_block, stop) = (&enumeration, &next_block, &stop);
            scope.spawn(move || {
                while !stop.load(Ordering::Relaxed) {
                    let blk = next_block.fetch_add(1, Ordering::Relaxed);
                    if blk >= n_blocks {
                        break;
                    }
                    let range = blk * block_size..((blk + 1) * block_size).min(total);
                    let outcomes = grade_block(enumeration, space.e21_form, range);
                    if tx.send((blk, outcomes)).is_err() {
                        break;
                    }
                }
            });
        }
        drop(tx);

        let mut pending = BTreeMap::new();
        let mut expected = first_block;
        let mut committed = 0u64;
        let mut last_save = Instant::now();
        'recv: for (blk, outcomes) in rx.iter() {
            pending.insert(blk, outcomes);
            while let Some(outcomes) = pending.remove(&expected) {
                let mut hit_in_block = false;
                for o in outcomes {
                    cp.counts.levels[o.level as usize] += 1;
                    if o.singular {
                        cp.counts.singular += 1;
                    }
                    if let Some(line) = o.line {
                        sink.out.write_all(line.as_bytes())?;
                        sink.out.write_all(b"\n")?;
                        cp.output_bytes += line.len() as u64 + 1;
                        if o.level == 6 {
                            sink.hits.write_all(line.as_bytes())?;
                            sink.hits.write_all(b"\n")?;
                            cp.hits_bytes += line.len() as u64 + 1;
                            let rec: SearchRecord =
                                serde_json::from_str(&line).expect("freshly written record parses");
                            hits.push(rec.params());
                            hit_in_block = true;
                        }
                    }
                }
                cp.cursor = ((expected + 1) * block_size).min(total);
                expected += 1;
                committed += 1;
                if last_save.elapsed() >= CHECKPOINT_INTERVAL {
                    sink.flush()?;
                    cp.save(&opts.checkpoint)?;
                    last_save = Instant::now();
                }
                let out_of_budget = opts.max_blocks.is_some_and(|m| committed >= m);
                if (hit_in_block && opts.stop_on_hit) || out_of_budget {
                    stopped_on_hit = hit_in_block && opts.stop_on_hit;
                    stop.store(true, Ordering::Relaxed);
                    break 'recv;
                }
            }
        }
        drop(rx);
        Ok(())
    });
    commit_result?;

    sink.flush()?;
    cp.save(&opts.checkpoint)?;
    Ok(Summary {
        e21_form: space.e21_form,
        total,
        cursor: cp.cursor,
        complete: cp.cursor == total,
        stopped_on_hit,
        counts: cp.counts.clone(),
        hits,
    })
}

fn read_hits(path: &Path) -> Result<Vec<Params>, SearchError> {
    Ok(read_records(path)?
        .iter()
        .map(SearchRecord::params)
        .collect())
}

/// Reads every record of a JSONL file.
pub fn read_records(path: &Path) -> Result<Vec<SearchRecord>, SearchError> {
    let f = File::open(path)?;
    let mut out = Vec::new();
    for line in BufReader::new(f).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line).map_err(|e| SearchError::MalformedRecord(e.to_string()))?,
        );
    }
    Ok(out)
}

/// Record lines with timestamps removed, keys sorted, lines sorted. Two runs
/// over the same space produce identical canonical output.
pub fn canonical_lines(path: &Path) -> Result<Vec<String>, SearchError> {
    let text = fs::read_to_string(path)?;
    let mut lines = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let mut v: serde_json::Value =
            serde_json::from_str(line).map_err(|e| SearchError::MalformedRecord(e.to_string()))?;
        if let Some(obj) = v.as_object_mut() {
            obj.remove("ts");
        }
        lines.push(serde_json::to_string(&v).expect("value serializes"));
    }
    lines.sort();
    Ok(lines)
}

/// A point graded differently under the two `E₂₁` forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormDiscrepancy {
    pub params: Params,
    pub printed: (u8, String),
    pub common: (u8, String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FormAudit {
    pub printed_records: usize,
    pub common_records: usize,
    pub discrepancies: Vec<FormDiscrepancy>,
}

impl FormAudit {
    /// Discrepancies where either side reached level 5 or more.
    pub fn high_level(&self) -> impl Iterator<Item = &FormDiscrepancy> {
        self.discrepancies
            .iter()
            .filter(|d| d.printed.0 >= 5 || d.common.0 >= 5)
    }
}

impl fmt::Display for FormAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "records: printed {}, common {}",
            self.printed_records, self.common_records
        )?;
        writeln!(f, "points graded differently: {}", self.discrepancies.len())?;
        let high: Vec<_> = self.high_level().collect();
        writeln!(f, "of which at level >= 5: {}", high.len())?;
        for d in &self.discrepancies {
            writeln!(
                f,
                "  {}: printed level {} ({}), common level {} ({})",
                d.params, d.printed.0, d.printed.1, d.common.0, d.common.1
            )?;
        }
        Ok(())
    }
}

/// Compares the records of two runs that differ only in `E₂₁` form. A point
/// missing from one side is level 0 there.
pub fn compare_forms(printed: &[SearchRecord], common: &[SearchRecord]) -> FormAudit {
    let key = |r: &SearchRecord| r.params();
    let pm: BTreeMap<Params, &SearchRecord> = printed.iter().map(|r| (key(r), r)).collect();
    let cm: BTreeMap<Params, &SearchRecord> = common.iter().map(|r| (key(r), r)).collect();
    let missing = || (0u8, "absent".to_string());
    let mut keys: Vec<&Params> = pm.keys().chain(cm.keys()).collect();
    keys.sort();
    keys.dedup();
    let discrepancies = keys
        .into_iter()
        .filter_map(|k| {
            let p = pm
                .get(k)
                .map_or_else(missing, |r| (r.level, r.reason.clone()));
            let c = cm
                .get(k)
                .map_or_else(missing, |r| (r.level, r.reason.clone()));
            (p != c).then(|| FormDiscrepancy {
                params: k.clone(),
                printed: p,
                common: c,
            })
        })
        .collect();
    FormAudit {
        printed_records: printed.len(),
        common_records: common.len(),
        discrepancies,
    }
}
