//! Subcommand bodies and output rendering for the `quartic-pell` binary.
//!
//! Every command produces a [`Report`]: metadata, a list of
//! [`OutputRecord`]s and an exit code. Rendering is separate, so the same
//! report can be printed as a table, CSV or JSON. All integers are rendered
//! as exact decimal strings.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::eqparse::{parse_equation, unparse, ParseError};
use crate::general_pell::{family_unit, reduce_spec, solve_general, SolveOptions};
use crate::pell_core::{
    agreement_suite, closed_form, eigen_check, solution_at, Branch, PellIter, PellPair, Recurrence,
};
use crate::power_filter::{search_quartic_with, SearchOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Rows wider than this get long numbers elided in table output.
pub const TABLE_WIDTH: usize = 120;
const ELIDE_MIN: usize = 24;
const ELIDE_KEEP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (expected table, csv or json)")),
        }
    }
}

/// Which seed branches a command covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpsChoice {
    Plus,
    Minus,
    Both,
}

impl EpsChoice {
    pub fn branches(self) -> &'static [Branch] {
        match self {
            EpsChoice::Plus => &[Branch::Plus],
            EpsChoice::Minus => &[Branch::Minus],
            EpsChoice::Both => &Branch::BOTH,
        }
    }
}

impl std::str::FromStr for EpsChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "+1" | "1" => Ok(EpsChoice::Plus),
            "-1" => Ok(EpsChoice::Minus),
            "both" => Ok(EpsChoice::Both),
            other => Err(format!("unknown branch '{other}' (expected +1, -1 or both)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordKind {
    PellPair,
    QuarticSolution,
    GeneralSolution,
    CheckReport,
    BenchSample,
}

impl RecordKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RecordKind::PellPair => "pell_pair",
            RecordKind::QuarticSolution => "quartic_solution",
            RecordKind::GeneralSolution => "general_solution",
            RecordKind::CheckReport => "check_report",
            RecordKind::BenchSample => "bench_sample",
        }
    }
}

impl fmt::Display for RecordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One output row. Payload values are already rendered strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputRecord {
    pub kind: RecordKind,
    pub payload: Vec<(String, String)>,
}

impl OutputRecord {
    fn new(kind: RecordKind) -> Self {
        OutputRecord { kind, payload: Vec::new() }
    }

    fn field(mut self, key: &str, value: impl ToString) -> Self {
        self.payload.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.payload.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub bounds: Vec<(String, String)>,
    pub notes: Vec<String>,
    pub records: Vec<OutputRecord>,
    pub exit_code: i32,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            bounds: Vec::new(),
            notes: Vec::new(),
            records: Vec::new(),
            exit_code: EXIT_OK,
        }
    }

    fn bound(mut self, key: &str, value: impl ToString) -> Self {
        self.bounds.push((key.to_string(), value.to_string()));
        self
    }
}

fn pell_record(p: &PellPair<BigInt>) -> OutputRecord {
    OutputRecord::new(RecordKind::PellPair)
        .field("n", p.n)
        .field("eps", p.eps)
        .field("x", &p.x)
        .field("t", &p.t)
}

fn check_record(name: &str, passed: bool, detail: &str) -> OutputRecord {
    OutputRecord::new(RecordKind::CheckReport)
        .field("name", name)
        .field("status", if passed { "pass" } else { "fail" })
        .field("detail", detail)
}

/// Pell pairs for indices `0..=max_n` by matrix power; with `verify`, each is
/// compared against the recurrence.
pub fn cmd_generate(max_n: u64, eps: EpsChoice, verify: bool) -> Report {
    let mut report = Report::new("generate").bound("max-index", max_n);
    for &branch in eps.branches() {
        let mut recurrence = PellIter::<BigInt>::new(branch);
        for n in 0..=max_n {
            let p = solution_at::<BigInt>(n, branch);
            let mut rec = pell_record(&p);
            if verify {
                let expected = recurrence.next().expect("infinite iterator");
                let ok = expected == p && p.satisfies_norm();
                if !ok && report.exit_code == EXIT_OK {
                    report.exit_code = EXIT_CHECK_FAILED;
                    report.notes.push(format!("verification failed at n={n} eps={branch}"));
                }
                rec = rec.field("verified", ok);
            }
            report.records.push(rec);
        }
    }
    report
}

/// Flags consumed by [`cmd_solve`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveArgs {
    pub max_index: u64,
    pub v_bound: u64,
    pub family_steps: u64,
    pub allow_zero: bool,
    pub prefilter: bool,
}

impl Default for SolveArgs {
    fn default() -> Self {
        let g = SolveOptions::default();
        SolveArgs {
            max_index: 64,
            v_bound: g.v_bound,
            family_steps: g.family_count,
            allow_zero: false,
            prefilter: false,
        }
    }
}

/// Parses `equation`; `x² = 2y⁴ − 1` goes to the Pell square filter, anything
/// else to the generalized solver.
pub fn cmd_solve(equation: &str, args: &SolveArgs) -> Result<Report, ParseError> {
    let spec = parse_equation(equation)?;
    let mut report = Report::new("solve");
    report.notes.push(format!("equation: {}", unparse(&spec)));
    if spec.is_title_quartic() {
        report = report.bound("max-index", args.max_index).bound(
            "prefilter",
            if args.prefilter { "on" } else { "off" },
        );
        let found = search_quartic_with(args.max_index, SearchOptions { prefilter: args.prefilter });
        report.records = found
            .iter()
            .map(|s| {
                OutputRecord::new(RecordKind::QuarticSolution)
                    .field("x", &s.x)
                    .field("y", &s.y)
                    .field("n", s.n)
                    .field("eps", s.eps)
            })
            .collect();
        report
            .notes
            .push(format!("solutions found within bounds: Pell indices 0..={} on both branches", args.max_index));
    } else {
        let opts = SolveOptions {
            v_bound: args.v_bound,
            family_count: args.family_steps,
            allow_zero: args.allow_zero,
        };
        report = report
            .bound("v-bound", opts.v_bound)
            .bound("family-steps", opts.family_count)
            .bound("allow-zero", opts.allow_zero);
        let conic = reduce_spec(&spec);
        match family_unit(&conic) {
            Some((p, q)) => report.notes.push(format!("conic {conic}; unit ({p}, {q})")),
            None => report.notes.push(format!("conic {conic}; degenerate, bounded scan only")),
        }
        report.records = solve_general(&spec, &opts)
            .iter()
            .map(|(x, y)| OutputRecord::new(RecordKind::GeneralSolution).field("x", x).field("y", y))
            .collect();
        report.notes.push(format!(
            "solutions found within bounds: V <= {}, {} unit steps per base",
            opts.v_bound, opts.family_count
        ));
    }
    Ok(report)
}

/// Eigen-decomposition check plus the four-way agreement suite on `0..=max_n`.
pub fn cmd_check(max_n: u64) -> Report {
    check_with_rule(max_n, &Recurrence::standard())
}

/// [`cmd_check`] with a substitute recurrence, for fault injection.
pub fn check_with_rule(max_n: u64, rule: &Recurrence<BigInt>) -> Report {
    let mut report = Report::new("check").bound("max-index", max_n);
    let eig = eigen_check();
    for c in &eig.checks {
        report.records.push(check_record(&c.name, c.passed, &c.detail));
    }
    let agree = agreement_suite(max_n, rule);
    let detail = match &agree.first_failure {
        None => format!("{} (n, eps) pairs agree across recurrence, matrix power, closed form, binomial sum", agree.indices_checked),
        Some(f) => format!("first failing index n={} eps={}: {}", f.n, f.eps, f.reason),
    };
    report.records.push(check_record("four-way agreement", agree.passed(), &detail));
    if !(eig.all_passed() && agree.passed()) {
        report.exit_code = EXIT_CHECK_FAILED;
    }
    report
}

/// `10, 100, 1000, …` below `max_n`, then `max_n` itself.
pub fn bench_ladder(max_n: u64) -> Vec<u64> {
    let mut rungs: Vec<u64> = std::iter::successors(Some(10u64), |r| r.checked_mul(10))
        .take_while(|&r| r < max_n)
        .collect();
    rungs.push(max_n);
    rungs
}

fn recurrence_to(n: u64) -> PellPair<BigInt> {
    PellIter::new(Branch::Plus).nth(n as usize).expect("infinite iterator")
}

fn time_runs<R>(reps: usize, mut f: impl FnMut() -> R) -> (R, Vec<Duration>) {
    // Warm-up run, discarded.
    let mut out = f();
    let mut samples = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        out = f();
        samples.push(start.elapsed());
    }
    (out, samples)
}

/// Wall-clock comparison of the recurrence, the matrix power and the Q(√2)
/// closed form over [`bench_ladder`]. Results are checked equal first.
pub fn cmd_bench(max_n: u64, repetitions: usize) -> Report {
    let reps = repetitions.max(1);
    let mut report = Report::new("bench").bound("max-index", max_n).bound("repetitions", reps);
    for n in bench_ladder(max_n) {
        let (rec, rec_t) = time_runs(reps, || recurrence_to(n));
        let (mat, mat_t) = time_runs(reps, || solution_at::<BigInt>(n, Branch::Plus));
        let (cf, cf_t) = time_runs(reps, || closed_form::<BigInt>(n, Branch::Plus));
        let agree = matches!(&cf, Ok(c) if *c == mat) && rec == mat;
        if !agree {
            report.exit_code = EXIT_CHECK_FAILED;
            report.notes.push(format!("methods disagree at n={n}; timings withheld"));
            break;
        }
        let digits = mat.t.to_string().len();
        for (method, samples) in [("recurrence", rec_t), ("matrix_power", mat_t), ("closed_form", cf_t)] {
            let mut ns: Vec<u128> = samples.iter().map(Duration::as_nanos).collect();
            ns.sort_unstable();
            report.records.push(
                OutputRecord::new(RecordKind::BenchSample)
                    .field("n", n)
                    .field("method", method)
                    .field("repetitions", reps)
                    .field("min_ns", ns[0])
                    .field("median_ns", ns[ns.len() / 2])
                    .field("digits", digits),
            );
        }
    }
    report
}

/// Renders a report in the requested format. Output ends with a newline.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Table => render_table(report),
        Format::Csv => render_csv(report),
        Format::Json => render_json(report),
    }
}

fn header(report: &Report) -> Vec<String> {
    report
        .records
        .first()
        .map(|r| r.payload.iter().map(|(k, _)| k.clone()).collect())
        .unwrap_or_default()
}

fn elide(cell: &str) -> String {
    let len = cell.chars().count();
    if len <= ELIDE_MIN {
        return cell.to_string();
    }
    let (sign, digits) = match cell.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", cell),
    };
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return cell.to_string();
    }
    let n = digits.len();
    format!(
        "{sign}{}…({n} digits)…{}",
        &digits[..ELIDE_KEEP],
        &digits[n - ELIDE_KEEP..]
    )
}

fn render_table(report: &Report) -> String {
    let mut out = String::new();
    let bounds: Vec<String> = report.bounds.iter().map(|(k, v)| format!("{k}={v}")).collect();
    out.push_str(&format!("# {} ({})\n", report.command, bounds.join(", ")));
    let cols = header(report);
    if !cols.is_empty() {
        let mut rows: Vec<Vec<String>> = vec![cols.clone()];
        for r in &report.records {
            let cells: Vec<String> = r.payload.iter().map(|(_, v)| v.clone()).collect();
            let width: usize = cells.iter().map(|c| c.chars().count() + 2).sum();
            rows.push(if width > TABLE_WIDTH {
                cells.iter().map(|c| elide(c)).collect()
            } else {
                cells
            });
        }
        let mut widths = vec![0; cols.len()];
        for row in &rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        // Numeric columns are right-aligned, text columns left-aligned.
        let numeric: Vec<bool> = (0..cols.len())
            .map(|i| {
                rows[1..].iter().all(|r| {
                    r[i].trim_start_matches('-').chars().next().is_some_and(|c| c.is_ascii_digit())
                })
            })
            .collect();
        for row in &rows {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .zip(&numeric)
                .map(|((c, &w), &num)| if num { format!("{c:>w$}") } else { format!("{c:<w$}") })
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
    } else {
        out.push_str("(no records)\n");
    }
    for note in &report.notes {
        out.push_str(&format!("# {note}\n"));
    }
    out
}

fn render_csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let cols = header(report);
    let mut head = vec!["kind".to_string()];
    head.extend(cols);
    w.write_record(&head).expect("in-memory write");
    for r in &report.records {
        let mut row = vec![r.kind.as_str().to_string()];
        row.extend(r.payload.iter().map(|(_, v)| v.clone()));
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

fn string_map(pairs: &[(String, String)]) -> Value {
    Value::Object(pairs.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect())
}

/// The JSON document as a value. Object keys are kept sorted, so rendering,
/// re-parsing and re-rendering is byte-stable.
pub fn to_json(report: &Report) -> Value {
    let mut meta = Map::new();
    meta.insert("command".into(), Value::String(report.command.clone()));
    meta.insert("bounds".into(), string_map(&report.bounds));
    meta.insert("version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
    meta.insert("notes".into(), Value::Array(report.notes.iter().cloned().map(Value::String).collect()));
    meta.insert("exit_code".into(), Value::String(report.exit_code.to_string()));
    let records = report
        .records
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert("kind".into(), Value::String(r.kind.as_str().into()));
            m.insert("payload".into(), string_map(&r.payload));
            Value::Object(m)
        })
        .collect();
    let mut root = Map::new();
    root.insert("meta".into(), Value::Object(meta));
    root.insert("records".into(), Value::Array(records));
    Value::Object(root)
}

/// Canonical pretty rendering of a JSON value, newline-terminated.
pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn render_json(report: &Report) -> String {
    json_text(&to_json(report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_rows() {
        let r = cmd_generate(3, EpsChoice::Plus, false);
        let xt: Vec<(&str, &str)> = r
            .records
            .iter()
            .map(|rec| (rec.get("x").unwrap(), rec.get("t").unwrap()))
            .collect();
        assert_eq!(xt, vec![("1", "1"), ("7", "5"), ("41", "29"), ("239", "169")]);

        let r = cmd_generate(0, EpsChoice::Both, false);
        let xt: Vec<(&str, &str)> = r
            .records
            .iter()
            .map(|rec| (rec.get("x").unwrap(), rec.get("t").unwrap()))
            .collect();
        assert_eq!(xt, vec![("1", "1"), ("1", "-1")]);

        let r = cmd_generate(3, EpsChoice::Both, true);
        assert_eq!(r.exit_code, EXIT_OK);
        assert!(r.records.iter().all(|rec| rec.get("verified") == Some("true")));
    }

    #[test]
    fn solve_dispatch() {
        let r = cmd_solve("x^2 = 2y^4 - 1", &SolveArgs::default()).unwrap();
        assert!(r.records.iter().all(|rec| rec.kind == RecordKind::QuarticSolution));
        let xy: Vec<_> = r.records.iter().map(|rec| (rec.get("x").unwrap(), rec.get("y").unwrap())).collect();
        assert_eq!(xy, vec![("1", "1"), ("239", "13")]);

        let args = SolveArgs { v_bound: 1_000_000, ..SolveArgs::default() };
        let r = cmd_solve("x^2 = 5y^4 + 1", &args).unwrap();
        let xy: Vec<_> = r.records.iter().map(|rec| (rec.get("x").unwrap(), rec.get("y").unwrap())).collect();
        assert_eq!(xy, vec![("9", "2")]);
        let r = cmd_solve("x^2 = 5y^4 + 1", &SolveArgs { allow_zero: true, ..args }).unwrap();
        assert_eq!(r.records.len(), 2);

        let err = cmd_solve("x^3 = 2y^4 - 1", &args).unwrap_err();
        assert_eq!(err.to_string(), "odd exponent at position 2");
    }

    #[test]
    fn check_passes_and_detects_faults() {
        assert_eq!(cmd_check(0).exit_code, EXIT_OK);
        assert_eq!(cmd_check(30).exit_code, EXIT_OK);
        let mut bad = Recurrence::standard();
        bad.tt = BigInt::from(4);
        let r = check_with_rule(30, &bad);
        assert_eq!(r.exit_code, EXIT_CHECK_FAILED);
        let last = r.records.last().unwrap();
        assert_eq!(last.get("status"), Some("fail"));
        assert!(last.get("detail").unwrap().starts_with("first failing index n=1 eps=1"));
    }

    #[test]
    fn bench_ladder_shape() {
        assert_eq!(bench_ladder(10_000), vec![10, 100, 1000, 10_000]);
        assert_eq!(bench_ladder(5), vec![5]);
        assert_eq!(bench_ladder(250), vec![10, 100, 250]);
        let r = cmd_bench(200, 3);
        assert_eq!(r.exit_code, EXIT_OK);
        assert_eq!(r.records.len(), 9);
        assert!(r.records.iter().all(|rec| rec.get("repetitions") == Some("3")));
    }

    #[test]
    fn elision_only_for_wide_rows() {
        let r = cmd_generate(300, EpsChoice::Plus, false);
        let table = render(&r, Format::Table);
        assert!(table.contains("digits)…"));
        let csv = render(&r, Format::Csv);
        assert!(!csv.contains('…'));
        assert!(csv.starts_with("kind,n,eps,x,t\n"));
        let small = render(&cmd_generate(3, EpsChoice::Plus, false), Format::Table);
        assert!(!small.contains('…'));
        assert_eq!(elide("-123456789012345678901234567890"), "-12345678…(30 digits)…34567890");
    }

    #[test]
    fn json_is_byte_stable() {
        let r = cmd_check(5);
        let text = render(&r, Format::Json);
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json_text(&reparsed), text);
    }
}
