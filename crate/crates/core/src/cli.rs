//! Command-line front end.
//!
//! Exit codes: `0` normal completion, `2` a perfect cuboid was found with
//! `--stop-on-hit`, and values above 2 for errors (see the `EXIT_*`
//! constants).

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::coefficients::{edge_cubic, E21Form, Evaluator, Params};
use crate::cubic::{rational_roots, CubicPoly};
use crate::identities::{self, IdentityReport};
use crate::rational::{parse_rational, to_fraction_string, Frac, Rational};
use crate::search::{self, RationalRange, RunOptions, SearchError, SearchSpace};
use crate::singularity::{classify, factor_values};
use crate::verifier::{grade, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_HIT: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_IDENTITY_FAILURE: i32 = 4;
pub const EXIT_IO: i32 = 5;
pub const EXIT_CHECKPOINT_MISMATCH: i32 = 6;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Exact-arithmetic tools for the perfect cuboid inverse problems.
///
/// Rational arguments are written `p` or `p/q`; decimals are rejected.
#[derive(Debug, Parser)]
#[command(name = "cuboid", version)]
pub struct Cli {
    /// Output format for every subcommand.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output_format: OutputFormat,

    /// Suppress notices and the search summary.
    #[arg(long, short, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    /// Parameter b, as p or p/q.
    #[arg(allow_hyphen_values = true)]
    pub b: String,
    /// Parameter c, as p or p/q.
    #[arg(allow_hyphen_values = true)]
    pub c: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Re-prove the polynomial identities of the singular-locus analysis.
    Identities,
    /// Classify a point against the three singular factors.
    Classify(PointArgs),
    /// Print the nine coefficients at a point as key=value lines.
    Coeffs {
        #[command(flatten)]
        point: PointArgs,
        /// Denominator used for E21.
        #[arg(long, alias = "e21-denominator", default_value = "printed")]
        e21_form: E21Form,
    },
    /// Solve the edge and diagonal cubics at a point over the rationals.
    Solve(PointArgs),
    /// Run the full graded pipeline at a point.
    Verify {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, alias = "e21-denominator", default_value = "printed")]
        e21_form: E21Form,
    },
    /// Search all points up to a height, with checkpoint and resume.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Largest |numerator| and denominator of b and c.
    #[arg(long)]
    pub height: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub b_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b_max: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c_max: Option<String>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Checkpoint file; resumed from when it exists.
    #[arg(long)]
    pub checkpoint: PathBuf,
    /// JSONL file receiving every record of level 1 or more.
    #[arg(long)]
    pub output: PathBuf,
    /// JSONL file receiving level-6 records [default: <output stem>.hits.jsonl].
    #[arg(long)]
    pub hits: Option<PathBuf>,
    /// Stop after the block containing the first perfect cuboid and exit with 2.
    #[arg(long)]
    pub stop_on_hit: bool,
    #[arg(long, alias = "e21-denominator", default_value = "printed")]
    pub e21_form: E21Form,
    #[arg(long, hide = true, default_value_t = search::DEFAULT_BLOCK_SIZE)]
    pub block_size: u64,
    /// Stop after committing this many blocks (simulated interruption).
    #[arg(long, hide = true)]
    pub max_blocks: Option<u64>,
}

struct Ctx<'a> {
    format: OutputFormat,
    quiet: bool,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let code = match e {
            SearchError::CheckpointMismatch { .. } => EXIT_CHECKPOINT_MISMATCH,
            SearchError::Io(_) | SearchError::CorruptCheckpoint(_) => EXIT_IO,
            SearchError::InvalidSpace(_) | SearchError::MalformedRecord(_) => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

impl Ctx<'_> {
    fn rational(&mut self, what: &str, s: &str) -> Result<Rational, Failure> {
        let parsed = parse_rational(s).map_err(|e| Failure::usage(format!("{what}: {e}")))?;
        if parsed.reduced && !self.quiet {
            writeln!(
                self.err,
                "note: {what} = {s} reduced to {}",
                to_fraction_string(&parsed.value)
            )?;
        }
        Ok(parsed.value)
    }

    fn point(&mut self, args: &PointArgs) -> Result<Params, Failure> {
        let b = self.rational("b", &args.b)?;
        let c = self.rational("c", &args.c)?;
        Ok(Params::new(b, c))
    }

    fn optional(&mut self, what: &str, s: &Option<String>) -> Result<Option<Rational>, Failure> {
        s.as_deref().map(|s| self.rational(what, s)).transpose()
    }

    fn json(&mut self, v: &impl serde::Serialize) -> std::io::Result<()> {
        writeln!(
            self.out,
            "{}",
            serde_json::to_string(v).expect("serializable")
        )
    }
}

/// Writes one PASS/FAIL line per identity; returns whether all passed.
pub fn render_identities(
    reports: &[IdentityReport],
    format: OutputFormat,
    out: &mut dyn Write,
) -> std::io::Result<bool> {
    for r in reports {
        match format {
            OutputFormat::Json => {
                writeln!(out, "{}", serde_json::to_string(r).expect("serializable"))?
            }
            OutputFormat::Text => {
                let tag = if r.pass { "PASS" } else { "FAIL" };
                writeln!(out, "{tag} {}: {}", r.identity, r.statement)?;
                if !r.pass {
                    writeln!(out, "     lhs - rhs = {}", r.difference)?;
                }
            }
        }
    }
    Ok(reports.iter().all(|r| r.pass))
}

fn cmd_identities(ctx: &mut Ctx) -> CmdResult {
    let ok = render_identities(&identities::check_all(), ctx.format, ctx.out)?;
    Ok(if ok { EXIT_OK } else { EXIT_IDENTITY_FAILURE })
}

fn cmd_classify(ctx: &mut Ctx, args: &PointArgs) -> CmdResult {
    let p = ctx.point(args)?;
    let class = classify(&p);
    let [f1, f2, q] = factor_values(&p);
    match ctx.format {
        OutputFormat::Json => ctx.json(&json!({
            "b": to_fraction_string(&p.b),
            "c": to_fraction_string(&p.c),
            "class": class,
            "factors": {
                "first_curve": to_fraction_string(&f1),
                "second_curve": to_fraction_string(&f2),
                "quartic": to_fraction_string(&q),
            },
        }))?,
        OutputFormat::Text => {
            writeln!(ctx.out, "point: {p}")?;
            writeln!(ctx.out, "class: {class}")?;
            writeln!(ctx.out, "bc-1-b = {}", Frac(&f1))?;
            writeln!(ctx.out, "bc-c-2b = {}", Frac(&f2))?;
            writeln!(ctx.out, "quartic = {}", Frac(&q))?;
        }
    }
    Ok(EXIT_OK)
}

fn report_singular(ctx: &mut Ctx, p: &Params) -> Result<bool, Failure> {
    let class = classify(p);
    if class.is_empty() {
        return Ok(false);
    }
    match ctx.format {
        OutputFormat::Json => ctx.json(&json!({
            "b": to_fraction_string(&p.b),
            "c": to_fraction_string(&p.c),
            "singular": class,
        }))?,
        OutputFormat::Text => writeln!(ctx.out, "singular: {class}")?,
    }
    Ok(true)
}

fn cmd_coeffs(ctx: &mut Ctx, args: &PointArgs, form: E21Form) -> CmdResult {
    let p = ctx.point(args)?;
    if report_singular(ctx, &p)? {
        return Ok(EXIT_OK);
    }
    let ev = Evaluator::new(&p);
    let e21 = ev.e21(form).ok();
    let entries: [(&str, Option<Rational>); 9] = [
        ("e10", Some(ev.e10())),
        ("e20", Some(ev.e20())),
        ("e30", Some(ev.e30())),
        ("e01", Some(ev.e01())),
        ("e02", Some(ev.e02())),
        ("e03", Some(ev.e03())),
        ("e21", e21),
        ("e11", Some(ev.e11())),
        ("e12", Some(ev.e12())),
    ];
    let show = |v: &Option<Rational>| v.as_ref().map_or("pole".to_string(), to_fraction_string);
    match ctx.format {
        OutputFormat::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("b".into(), to_fraction_string(&p.b).into());
            obj.insert("c".into(), to_fraction_string(&p.c).into());
            obj.insert("e21_form".into(), form.as_str().into());
            for (k, v) in &entries {
                obj.insert((*k).into(), show(v).into());
            }
            ctx.json(&obj)?;
        }
        OutputFormat::Text => {
            for (k, v) in &entries {
                writeln!(ctx.out, "{k}={}", show(v))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_solve(ctx: &mut Ctx, args: &PointArgs) -> CmdResult {
    let p = ctx.point(args)?;
    if report_singular(ctx, &p)? {
        return Ok(EXIT_OK);
    }
    let ev = Evaluator::new(&p);
    let cubics: [(&str, CubicPoly); 2] = [
        ("edge", edge_cubic(&ev.e10(), &ev.e20(), &ev.e30())),
        ("diagonal", edge_cubic(&ev.e01(), &ev.e02(), &ev.e03())),
    ];
    let mut json_out = serde_json::Map::new();
    for (name, q) in &cubics {
        let roots = rational_roots(q);
        match ctx.format {
            OutputFormat::Json => {
                json_out.insert(
                    (*name).into(),
                    json!({
                        "cubic": [to_fraction_string(&q.c2), to_fraction_string(&q.c1), to_fraction_string(&q.c0)],
                        "roots": roots,
                    }),
                );
            }
            OutputFormat::Text => {
                writeln!(ctx.out, "{name} cubic: {q}")?;
                match &roots {
                    Some(r) => writeln!(ctx.out, "  roots: {r}")?,
                    None => writeln!(ctx.out, "  no full rational splitting")?,
                }
            }
        }
    }
    if ctx.format == OutputFormat::Json {
        ctx.json(&json_out)?;
    }
    Ok(EXIT_OK)
}

/// Text rendering of a verdict.
pub fn render_verdict(v: &Verdict, out: &mut dyn Write) -> std::io::Result<()> {
    if !v.singular.is_empty() {
        return writeln!(out, "singular: {}", v.singular);
    }
    writeln!(out, "point: {}", v.params)?;
    writeln!(out, "e21 form: {}", v.e21_form)?;
    writeln!(out, "level: {}", v.level)?;
    writeln!(out, "reason: {}", v.reason)?;
    if let Some(e) = &v.edges {
        writeln!(out, "edges: {e}")?;
    }
    if let Some(d) = &v.diagonals {
        writeln!(out, "diagonals: {d}")?;
    }
    if let Some(p) = &v.pairing {
        writeln!(out, "pairing: {p}")?;
    }
    if !v.residuals.is_empty() {
        let r: Vec<String> = v.residuals.iter().map(to_fraction_string).collect();
        writeln!(out, "residuals: {}", r.join(" "))?;
    }
    if v.is_perfect_cuboid() {
        writeln!(out, "PERFECT CUBOID FOUND")?;
    }
    Ok(())
}

fn cmd_verify(ctx: &mut Ctx, args: &PointArgs, form: E21Form) -> CmdResult {
    let p = ctx.point(args)?;
    let v = grade(&p, form);
    match ctx.format {
        OutputFormat::Json => ctx.json(&v)?,
        OutputFormat::Text => render_verdict(&v, ctx.out)?,
    }
    Ok(EXIT_OK)
}

fn cmd_search(ctx: &mut Ctx, a: &SearchArgs) -> CmdResult {
    let space = SearchSpace {
        height: a.height,
        b_range: RationalRange::new(
            ctx.optional("b-min", &a.b_min)?,
            ctx.optional("b-max", &a.b_max)?,
        ),
        c_range: RationalRange::new(
            ctx.optional("c-min", &a.c_min)?,
            ctx.optional("c-max", &a.c_max)?,
        ),
        e21_form: a.e21_form,
    };
    let mut opts = RunOptions::new(a.jobs, &a.checkpoint, &a.output);
    if let Some(h) = &a.hits {
        opts.hits = h.clone();
    }
    opts.stop_on_hit = a.stop_on_hit;
    opts.block_size = a.block_size;
    opts.max_blocks = a.max_blocks;
    let summary = search::run(&space, &opts)?;
    if !ctx.quiet {
        match ctx.format {
            OutputFormat::Json => ctx.json(&summary)?,
            OutputFormat::Text => write!(ctx.out, "{summary}")?,
        }
    }
    Ok(if summary.stopped_on_hit {
        EXIT_HIT
    } else {
        EXIT_OK
    })
}

/// Runs a parsed command, writing to the given streams. Returns the exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut ctx = Ctx {
        format: cli.output_format,
        quiet: cli.quiet,
        out,
        err,
    };
    let result = match &cli.command {
        Command::Identities => cmd_identities(&mut ctx),
        Command::Classify(p) => cmd_classify(&mut ctx, p),
        Command::Coeffs { point, e21_form } => cmd_coeffs(&mut ctx, point, *e21_form),
        Command::Solve(p) => cmd_solve(&mut ctx, p),
        Command::Verify { point, e21_form } => cmd_verify(&mut ctx, point, *e21_form),
        Command::Search(a) => cmd_search(&mut ctx, a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(ctx.err, "error: {}", f.message);
            f.code
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, out, err),
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["cuboid"];
        full.extend_from_slice(args);
        let code = main_with_args(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn identities_pass() {
        let (code, out, _) = run(&["identities"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().filter(|l| l.starts_with("PASS ")).count(), 4);
    }

    #[test]
    fn identities_json_lines() {
        let (code, out, _) = run(&["identities", "--output-format", "json"]);
        assert_eq!(code, EXIT_OK);
        for line in out.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["pass"], true);
            assert!(v["identity"].is_string());
        }
    }

    #[test]
    fn corrupted_identity_fails_with_difference() {
        let mut ids = identities::all();
        ids[2].rhs = &ids[2].rhs + &crate::bipoly::IntPoly2::monomial(3, 0, 1);
        let reports: Vec<_> = ids.iter().map(|i| i.check()).collect();
        let mut out = Vec::new();
        let ok = render_identities(&reports, OutputFormat::Text, &mut out).unwrap();
        assert!(!ok);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("FAIL quartic-discriminant"));
        assert!(text.contains("lhs - rhs = -3*c"));
    }

    #[test]
    fn verify_singular_point() {
        let (code, out, _) = run(&["verify", "1/2", "3"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.trim(), "singular: FirstCurve");
    }

    #[test]
    fn malformed_rationals_are_usage_errors() {
        let (code, _, err) = run(&["verify", "1/0", "3"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("zero denominator"));
        let (code, _, err) = run(&["classify", "0.5", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("1/2"));
    }

    #[test]
    fn negative_arguments_and_reduction_notice() {
        let (code, out, err) = run(&["classify", "-2/4", "-1"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("point: (-1/2, -1/1)"));
        assert!(err.contains("reduced to -1/2"));
        let (_, _, err) = run(&["--quiet", "classify", "-2/4", "-1"]);
        assert!(err.is_empty());
    }

    #[test]
    fn coeffs_key_value_lines() {
        let (code, out, _) = run(&["coeffs", "1", "1"]);
        assert_eq!(code, EXIT_OK);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[0], "e10=1/2");
        assert_eq!(lines[1], "e20=-3/8");
        assert_eq!(lines[3], "e01=-1/2");
        assert_eq!(lines[7], "e11=1/2");
    }

    #[test]
    fn coeffs_printed_pole() {
        let (_, out, _) = run(&["coeffs", "2/3", "1/2"]);
        assert!(out.contains("e21=pole"));
        let (_, out, _) = run(&["coeffs", "2/3", "1/2", "--e21-denominator", "common"]);
        assert!(!out.contains("pole"));
    }

    #[test]
    fn usage_errors_do_not_collide_with_hit_code() {
        let (code, _, _) = run(&["frobnicate"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("identities"));
    }
}
