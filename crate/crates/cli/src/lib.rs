//! Command dispatch for the `vnreg` binary.
//!
//! Every verb produces a [`Report`]; the same report is rendered either as
//! text or as JSON, so both outputs carry identical exact values.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use vnreg::golden::{run_block, Block, Fixtures};
use vnreg::lab::{make_ring_with_limit, verify_with, RingSpec, VerifyOptions, DEFAULT_MAX_RING};
use vnreg::{
    anderson_trapp, common_one_inverse, core_matrix, direct_sum_leq, format_matrix, group_inverse,
    hartwig_split_inverse, idempotent_leq, is_maximal, loewner_leq, max_from_strong, minus_leq,
    moore_penrose, one_inverse, parse_matrix, permutation_equivalent, rank, shorted_psd,
    weighted_mp, ExactMatrix, Frame, Strategy,
};

/// Caps the ring size accepted by `lab`.
pub const MAX_RING_ENV: &str = "VNREG_LAB_MAX_RING";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "vnreg", version, about = "Exact generalized inverses, matrix orders and shorted operators")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Mp,
    Group,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank of a matrix.
    Rank { a: String },
    /// Moore-Penrose inverse.
    Pinv { a: String },
    /// Group inverse, when it exists.
    Ginv { a: String },
    /// Weighted Moore-Penrose inverse of B with PSD weight W.
    Winv {
        b: String,
        #[arg(long)]
        weight: String,
    },
    /// A {1}-inverse and the annihilators parametrizing all of them.
    Oneinv { a: String },
    /// Decide a partial order between A and B.
    Order(OrderArgs),
    /// A common {1}-inverse of A and B.
    CommonInv { a: String, b: String },
    /// A {1}-inverse x of A with x·C = 0 = C·x.
    Hartwig { a: String, c: String },
    /// Shorted operator (PSD) or maximal corner element (general).
    Short(ShortArgs),
    /// Block formula a11 − a12·a22†·a21 padded with zeros.
    AndersonTrapp {
        a: String,
        #[arg(long)]
        k: usize,
    },
    /// A permutation P with P·X·Pᵀ = Y.
    PermEquiv { x: String, y: String },
    /// Check a claim on every tuple of a finite ring.
    Lab(LabArgs),
    /// Run the reference suite.
    VerifyPaper(VerifyArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("relation").required(true).args(["minus", "dsum", "loewner", "idem"])))]
pub struct OrderArgs {
    #[arg(long)]
    pub minus: bool,
    #[arg(long)]
    pub dsum: bool,
    #[arg(long)]
    pub loewner: bool,
    #[arg(long)]
    pub idem: bool,
    pub a: String,
    pub b: String,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["psd", "general"])))]
pub struct ShortArgs {
    /// `A E`: PSD A, idempotent E, frame (E, E*).
    #[arg(long)]
    pub psd: bool,
    /// `A E F [A1]`: general frame (E, F).
    #[arg(long)]
    pub general: bool,
    #[arg(required = true, num_args = 2..=4)]
    pub matrices: Vec<String>,
    /// {1}-inverse of A for the general path; defaults to A†.
    #[arg(long)]
    pub a1: Option<String>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Mp)]
    pub strategy: StrategyArg,
}

#[derive(Debug, Args)]
pub struct LabArgs {
    /// Ring such as `Z/30`, `M_2(GF(2))` or `Z/2 x Z/3`.
    #[arg(long)]
    pub ring: String,
    #[arg(long)]
    pub claim: String,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Iterate tuples and witnesses in reverse.
    #[arg(long)]
    pub reverse: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only these blocks.
    #[arg(long)]
    pub only: Vec<String>,
    /// Replace a fixture, `NAME=MATRIX`.
    #[arg(long = "set")]
    pub set: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Input {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub anchor: String,
    pub expected: Option<String>,
    pub actual: String,
    pub pass: bool,
    /// Rendered with `format_matrix` in text output.
    #[serde(skip)]
    pub matrices: Option<(Option<ExactMatrix>, ExactMatrix)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<Input>,
    pub entries: Vec<Entry>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Vec::new(),
            entries: Vec::new(),
        }
    }

    fn input(&mut self, name: &str, value: impl Into<String>) {
        self.inputs.push(Input {
            name: name.to_string(),
            value: value.into(),
        });
    }

    fn value(&mut self, anchor: &str, actual: impl ToString) {
        self.entries.push(Entry {
            anchor: anchor.to_string(),
            expected: None,
            actual: actual.to_string(),
            pass: true,
            matrices: None,
        });
    }

    fn matrix(&mut self, anchor: &str, m: &ExactMatrix) {
        self.entries.push(Entry {
            anchor: anchor.to_string(),
            expected: None,
            actual: m.to_inline(),
            pass: true,
            matrices: Some((None, m.clone())),
        });
    }

    /// A demanded verdict; a false one fails the command.
    fn verdict(&mut self, anchor: &str, holds: bool) {
        self.entries.push(Entry {
            anchor: anchor.to_string(),
            expected: Some("true".into()),
            actual: holds.to_string(),
            pass: holds,
            matrices: None,
        });
    }

    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match &e.matrices {
                Some((None, m)) => {
                    out.push_str(&format!("{}:\n", e.anchor));
                    out.push_str(&indent(&format_matrix(m)));
                }
                Some((Some(expected), actual)) if !e.pass => {
                    out.push_str(&format!("FAIL {}\n", e.anchor));
                    out.push_str(&side_by_side(expected, actual));
                }
                _ if e.expected.is_some() && self.command == "verify-paper" => {
                    let tag = if e.pass { "PASS" } else { "FAIL" };
                    out.push_str(&format!("{tag} {}", e.anchor));
                    if !e.pass {
                        out.push_str(&format!(
                            ": expected {}, got {}",
                            e.expected.as_deref().unwrap_or(""),
                            e.actual
                        ));
                    }
                    out.push('\n');
                }
                _ => out.push_str(&format!("{}: {}\n", e.anchor, e.actual)),
            }
        }
        out
    }
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

/// Expected and actual matrices in two columns.
fn side_by_side(expected: &ExactMatrix, actual: &ExactMatrix) -> String {
    let left: Vec<String> = format_matrix(expected).lines().map(str::to_string).collect();
    let right: Vec<String> = format_matrix(actual).lines().map(str::to_string).collect();
    let width = left.iter().map(|l| l.chars().count()).max().unwrap_or(0).max("expected".len());
    let mut out = format!("  {:<width$}  |  {}\n", "expected", "actual");
    for i in 0..left.len().max(right.len()) {
        let l = left.get(i).map_or("", String::as_str);
        let r = right.get(i).map_or("", String::as_str);
        out.push_str(&format!("  {l:<width$}  |  {r}\n"));
    }
    out
}

/// Failure that ends a command before a report exists.
#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<Report, Failure>;

/// A file path when one exists, otherwise inline matrix text.
pub fn read_matrix(arg: &str) -> std::result::Result<ExactMatrix, String> {
    let path = Path::new(arg);
    let (text, origin) = if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
        (text, arg.to_string())
    } else {
        (arg.to_string(), "inline matrix".to_string())
    };
    parse_matrix(&text).map_err(|e| format!("{origin}: {e}"))
}

fn load(report: &mut Report, name: &str, arg: &str) -> std::result::Result<ExactMatrix, Failure> {
    let m = read_matrix(arg).map_err(Failure)?;
    report.input(name, m.to_inline());
    Ok(m)
}

fn lab_limit() -> std::result::Result<usize, Failure> {
    match std::env::var(MAX_RING_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure(format!("{MAX_RING_ENV} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_RING),
    }
}

/// Runs one parsed command.
pub fn dispatch(cmd: &Command) -> std::result::Result<Report, String> {
    execute(cmd).map_err(|f| f.0)
}

fn execute(cmd: &Command) -> Outcome {
    match cmd {
        Command::Rank { a } => {
            let mut r = Report::new("rank");
            let a = load(&mut r, "a", a)?;
            r.value("rank", rank(&a));
            Ok(r)
        }
        Command::Pinv { a } => {
            let mut r = Report::new("pinv");
            let a = load(&mut r, "a", a)?;
            r.matrix("pinv", &moore_penrose(&a));
            Ok(r)
        }
        Command::Ginv { a } => {
            let mut r = Report::new("ginv");
            let a = load(&mut r, "a", a)?;
            match group_inverse(&a)? {
                Some(g) => r.matrix("group_inverse", &g),
                None => r.verdict("group_inverse exists", false),
            }
            Ok(r)
        }
        Command::Winv { b, weight } => {
            let mut r = Report::new("winv");
            let b = load(&mut r, "b", b)?;
            let w = load(&mut r, "weight", weight)?;
            let res = weighted_mp(&b, &w)?;
            r.matrix("weighted_pinv", &res.solution);
            r.value("solution_set_dim", res.solution_set_dim);
            Ok(r)
        }
        Command::Oneinv { a } => {
            let mut r = Report::new("oneinv");
            let a = load(&mut r, "a", a)?;
            let fam = one_inverse(&a);
            r.matrix("one_inverse", &fam.base);
            r.matrix("left_annihilator", &fam.left_annihilator);
            r.matrix("right_annihilator", &fam.right_annihilator);
            Ok(r)
        }
        Command::Order(o) => order(o),
        Command::CommonInv { a, b } => {
            let mut r = Report::new("common-inv");
            let a = load(&mut r, "a", a)?;
            let b = load(&mut r, "b", b)?;
            match common_one_inverse(&a, &b)? {
                Some(x) => r.matrix("common_one_inverse", &x),
                None => r.verdict("common_one_inverse exists", false),
            }
            Ok(r)
        }
        Command::Hartwig { a, c } => {
            let mut r = Report::new("hartwig");
            let a = load(&mut r, "a", a)?;
            let c = load(&mut r, "c", c)?;
            r.matrix("split_inverse", &hartwig_split_inverse(&a, &c)?);
            Ok(r)
        }
        Command::Short(s) => short(s),
        Command::AndersonTrapp { a, k } => {
            let mut r = Report::new("anderson-trapp");
            let a = load(&mut r, "a", a)?;
            r.input("k", k.to_string());
            r.matrix("a_s", &anderson_trapp(&a, *k)?);
            Ok(r)
        }
        Command::PermEquiv { x, y } => {
            let mut r = Report::new("perm-equiv");
            let x = load(&mut r, "x", x)?;
            let y = load(&mut r, "y", y)?;
            match permutation_equivalent(&x, &y)? {
                Some(p) => r.matrix("p", &p),
                None => r.verdict("permutation exists", false),
            }
            Ok(r)
        }
        Command::Lab(l) => lab(l),
        Command::VerifyPaper(v) => verify_paper(v),
    }
}

fn order(o: &OrderArgs) -> Outcome {
    let mut r = Report::new("order");
    let a = load(&mut r, "a", &o.a)?;
    let b = load(&mut r, "b", &o.b)?;
    if o.minus {
        let cert = minus_leq(&a, &b)?;
        r.verdict("minus", cert.verdict);
        r.value("rank_a", cert.rank_data.rank_a);
        r.value("rank_b", cert.rank_data.rank_b);
        r.value("rank_diff", cert.rank_data.rank_diff);
        if let Some(w) = &cert.witness {
            r.matrix("witness", w);
        }
        if let Some(v) = cert.violated {
            r.value("violated", v);
        }
    } else if o.dsum {
        r.verdict("direct_sum", direct_sum_leq(&a, &b)?);
    } else if o.loewner {
        r.verdict("loewner", loewner_leq(&a, &b)?);
    } else {
        r.verdict("idempotent", idempotent_leq(&a, &b)?);
    }
    Ok(r)
}

fn short(s: &ShortArgs) -> Outcome {
    let count = s.matrices.len();
    if s.psd {
        if count != 2 || s.a1.is_some() {
            return Err(Failure("short --psd takes exactly A E".into()));
        }
        let mut r = Report::new("short");
        let a = load(&mut r, "a", &s.matrices[0])?;
        let e = load(&mut r, "e", &s.matrices[1])?;
        let res = shorted_psd(&a, &e)?;
        r.matrix("shorted", &res.value);
        if let Some(v) = &res.via_weighted {
            r.matrix("via_weighted", v);
        }
        if let Some(v) = &res.via_core {
            r.matrix("via_core", v);
        }
        r.value("rank_drop", res.rank_drop);
        return Ok(r);
    }
    if count < 3 || (count == 4 && s.a1.is_some()) {
        return Err(Failure("short --general takes A E F and an optional A1 (positional or --a1)".into()));
    }
    let mut r = Report::new("short");
    let a = load(&mut r, "a", &s.matrices[0])?;
    let e = load(&mut r, "e", &s.matrices[1])?;
    let f = load(&mut r, "f", &s.matrices[2])?;
    let a1 = match s.matrices.get(3).or(s.a1.as_ref()) {
        Some(arg) => load(&mut r, "a1", arg)?,
        None => moore_penrose(&a),
    };
    r.input(
        "strategy",
        match s.strategy {
            StrategyArg::Mp => "mp",
            StrategyArg::Group => "group",
        },
    );
    let frame = Frame::new(e, f)?;
    let core = core_matrix(&a, &frame, &a1)?;
    let strategy = match s.strategy {
        StrategyArg::Mp => Strategy::MoorePenrose,
        StrategyArg::Group => Strategy::Group,
    };
    let d = max_from_strong(&a, &frame, &a1, &strategy)?;
    r.matrix("core", &core.core);
    r.value("core_invariant_under_choice", core.invariant_under_choice);
    r.matrix("maximal", &d);
    r.verdict("is_maximal", is_maximal(&d, &a, &frame, &a1)?);
    Ok(r)
}

fn lab(l: &LabArgs) -> Outcome {
    let mut r = Report::new("lab");
    let spec: RingSpec = l.ring.parse()?;
    r.input("ring", spec.to_string());
    r.input("claim", l.claim.clone());
    let ring = make_ring_with_limit(&spec, lab_limit()?)?;
    let opts = VerifyOptions {
        reverse: l.reverse,
        workers: l.workers,
    };
    let rep = verify_with(&ring, &l.claim, opts)?;
    r.value("ring_size", ring.size());
    r.value("universe_size", rep.universe_size);
    r.value("counterexamples", rep.counterexamples.len());
    for c in &rep.counterexamples {
        r.value("counterexample", format!("({}): {}", c.rendered.join(", "), c.detail));
    }
    r.verdict("holds", rep.holds());
    Ok(r)
}

fn verify_paper(v: &VerifyArgs) -> Outcome {
    let mut r = Report::new("verify-paper");
    let mut blocks = Vec::new();
    for name in &v.only {
        let b: Block = name.parse().map_err(Failure)?;
        if !blocks.contains(&b) {
            blocks.push(b);
        }
    }
    if blocks.is_empty() {
        blocks = Block::ALL.to_vec();
    }
    blocks.sort();
    let mut fixtures = Fixtures::reference();
    for item in &v.set {
        let (name, text) = item
            .split_once('=')
            .ok_or_else(|| Failure(format!("--set expects NAME=MATRIX, got `{item}`")))?;
        let m = read_matrix(text).map_err(Failure)?;
        fixtures.set(name, m.clone())?;
        r.input(name, m.to_inline());
    }
    for b in &blocks {
        r.input("block", b.name());
    }
    for b in blocks {
        for c in run_block(b, &fixtures).checks {
            r.entries.push(Entry {
                anchor: c.anchor,
                expected: Some(c.expected),
                actual: c.actual,
                pass: c.pass,
                matrices: c.matrices.map(|(e, a)| (Some(e), a)),
            });
        }
    }
    Ok(r)
}

/// Parses `args` (including the program name), runs the command and writes
/// the report. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.format).as_bytes());
            if report.pass() {
                EXIT_OK
            } else {
                EXIT_FALSE
            }
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}
