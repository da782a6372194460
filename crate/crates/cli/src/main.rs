use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use polyaxis::families::{
    applicable_closed_forms, closed_form_power_of_two, count_m_symmetric, enumerate_representatives, pairs_for_u,
    admissible_u_values, ClosedForm,
};
use polyaxis::oracle::{self, classify, cross_check, DEFAULT_MAX_N, MAX_N};
use polyaxis::report::{
    compare_sequence, emit_table, fixture_path, is_known_anomaly, m_symmetric_index, m_symmetric_sequence, Check,
    CheckStatus,
};
use polyaxis::validity::{alternating_word, induces_polygon, is_valid_edge_word, AlternatingPair};
use polyaxis::{
    count_equivalence_classes, count_similarity_classes, render_svg, CensusReport, EdgeWord, Relation,
    RenderOptions, SequenceFile, TableFormat,
};

/// Fixture directory override.
const FIXTURES_ENV: &str = "POLYAXIS_FIXTURES";

#[derive(Parser)]
#[command(name = "polyaxis", version, about = "Count, enumerate, verify and draw n-polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of equivalence classes of n-polygons with n/2 axes
    Count {
        #[arg(long)]
        n: u32,
    },
    /// Allowed (a, b) pairs grouped by revolution count u
    Pairs {
        #[arg(long)]
        n: u32,
    },
    /// One alternating representative per class with n/2 axes
    Reps {
        #[arg(long)]
        n: u32,
        /// Write one SVG per representative into this directory
        #[arg(long, value_name = "DIR")]
        render: Option<PathBuf>,
        #[arg(long, default_value_t = 400.0)]
        size: f64,
    },
    /// Class totals under rotation and under rotation or reflection
    Census {
        #[arg(long)]
        n: u32,
    },
    /// Brute-force classification of every n-polygon
    Oracle {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "equivalent")]
        relation: Relation,
        /// Also list every class with its representative
        #[arg(long)]
        classes: bool,
        #[command(flatten)]
        run: OracleRun,
    },
    /// Cross-check formulas, brute force and reference fixtures
    Verify {
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: u32,
        /// Directory holding the reference b-files
        #[arg(long, value_name = "DIR")]
        fixtures: Option<PathBuf>,
        #[command(flatten)]
        run: OracleRun,
    },
    /// Draw one polygon as SVG
    Render {
        /// Edge word, e.g. 1,2,1,4,3,1
        #[arg(long, conflicts_with_all = ["n", "pair"])]
        word: Option<String>,
        #[arg(long, requires = "pair")]
        n: Option<u32>,
        /// Alternating pair a,b (needs --n)
        #[arg(long, requires = "n")]
        pair: Option<String>,
        #[arg(long)]
        axes: bool,
        #[arg(long)]
        labels: bool,
        #[arg(long, default_value_t = 400.0)]
        size: f64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// The table of |P_m(n)| for even n
    Table {
        #[arg(long, default_value_t = 4)]
        from: u32,
        #[arg(long, default_value_t = 90)]
        to: u32,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Attach brute-force counts for n up to this value
        #[arg(long, default_value_t = 8)]
        oracle_max: u32,
        #[command(flatten)]
        run: OracleRun,
    },
}

#[derive(Args, Clone, Copy)]
struct OracleRun {
    /// Worker threads for the brute-force oracle
    #[arg(long)]
    threads: Option<usize>,
    /// Permit oracle runs above n = 12 (up to 14; hours of CPU time)
    #[arg(long)]
    allow_big: bool,
}

impl OracleRun {
    fn check(&self, n: u32) -> Result<(), CliError> {
        if n > DEFAULT_MAX_N && n <= MAX_N && !self.allow_big {
            return Err(CliError::Usage(format!(
                "oracle runs above n = {DEFAULT_MAX_N} need --allow-big (n = {n})"
            )));
        }
        Ok(())
    }

    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
        match self.threads {
            None => Ok(f()),
            Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .context("building the thread pool")?;
                Ok(pool.install(f))
            }
        }
    }
}

enum CliError {
    Usage(String),
    Failed(anyhow::Error),
}

impl From<polyaxis::Error> for CliError {
    fn from(e: polyaxis::Error) -> Self {
        match e {
            polyaxis::Error::InexactDivision(_) | polyaxis::Error::Json(_) => CliError::Failed(e.into()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Failed(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failed(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Count { n } => count(&mut out, n)?,
        Command::Pairs { n } => pairs(&mut out, n)?,
        Command::Reps { n, render, size } => reps(&mut out, n, render.as_deref(), size)?,
        Command::Census { n } => {
            writeln!(out, "n = {n}")?;
            writeln!(out, "equivalent: {}", count_equivalence_classes(n)?)?;
            writeln!(out, "similar: {}", count_similarity_classes(n)?)?;
        }
        Command::Oracle {
            n,
            relation,
            classes,
            run,
        } => oracle_cmd(&mut out, n, relation, classes, run)?,
        Command::Verify { max_n, fixtures, run } => return verify(&mut out, max_n, fixtures, run),
        Command::Render {
            word,
            n,
            pair,
            axes,
            labels,
            size,
            out: file,
        } => {
            let word = match (word, n, pair) {
                (Some(word), _, _) => parse_word(&word)?,
                (None, Some(n), Some(pair)) => {
                    let (a, b) = parse_pair(&pair)?;
                    alternating_word(&AlternatingPair::new(n, a, b)?).into_edge_word()?
                }
                _ => return Err(CliError::Usage("render needs --word, or --n together with --pair".into())),
            };
            let opts = RenderOptions::new(size)?.with_axes(axes).with_labels(labels);
            let svg = render_svg(&word.vertex_cycle(), &opts);
            emit(&mut out, file.as_deref(), &svg)?;
        }
        Command::Table {
            from,
            to,
            format,
            out: file,
            oracle_max,
            run,
        } => table(&mut out, from, to, &format, file.as_deref(), oracle_max, run)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn emit(out: &mut impl Write, file: Option<&Path>, text: &str) -> Result<(), CliError> {
    match file {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn parse_word(text: &str) -> Result<EdgeWord, CliError> {
    let steps = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("bad edge word `{text}`: {e}")))?;
    Ok(EdgeWord::new(steps.len() as u32, steps)?)
}

fn parse_pair(text: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Usage(format!("bad pair `{text}` (expected a,b)"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn count(out: &mut impl Write, n: u32) -> Result<(), CliError> {
    let value = count_m_symmetric(n)?;
    writeln!(out, "{value}")?;
    for form in applicable_closed_forms(u64::from(n)) {
        let label = match form {
            ClosedForm::PowerOfTwo { k } => {
                let row = closed_form_power_of_two(k)?;
                let perfect = if row.perfect { ", a perfect number" } else { "" };
                format!("closed form n = 2^{k}: 2^{}·(2^{} − 1) = {}{perfect}", k - 3, k - 2, row.count)
            }
            ClosedForm::TwicePrime { p } => format!("closed form n = 2p, p = {p}: ((p − 1)/2)² = {}", form.evaluate()?),
            ClosedForm::PowerOfTwoTimesPrime { k, p } => {
                format!("closed form n = 2^{k}·{p}: (n − 4)(n − 2^{k})/32 = {}", form.evaluate()?)
            }
        };
        writeln!(out, "{label}")?;
    }
    if n == 4 {
        eprintln!("warning: the formula gives 0 for n = 4, but the crossed square (1 2 3 2) forms one 2-axis class");
    }
    Ok(())
}

fn pairs(out: &mut impl Write, n: u32) -> Result<(), CliError> {
    count_m_symmetric(n)?;
    let m = n / 2;
    writeln!(out, "n = {n}, m = {m}")?;
    let mut total = 0;
    for u in admissible_u_values(m) {
        let list = pairs_for_u(n, u)?;
        total += list.len();
        let shown = if list.is_empty() {
            "-".to_owned()
        } else {
            list.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(" ")
        };
        writeln!(out, "u = {u:>3}  [{}]  {shown}", list.len())?;
    }
    writeln!(out, "total: {total}")?;
    Ok(())
}

fn reps(out: &mut impl Write, n: u32, render: Option<&Path>, size: f64) -> Result<(), CliError> {
    let family = enumerate_representatives(n)?;
    let opts = RenderOptions::new(size)?.with_axes(true);
    if let Some(dir) = render {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    writeln!(out, "u\ta\tb\tkey")?;
    for (i, rep) in family.entries.iter().enumerate() {
        writeln!(out, "{}\t{}\t{}\t{}", rep.u, rep.a, rep.b, rep.key)?;
        if let Some(dir) = render {
            let name = format!("{n}_{}_{:02}_u{}_a{}_b{}.svg", family.m, i + 1, rep.u, rep.a, rep.b);
            let path = dir.join(name);
            fs::write(&path, render_svg(&rep.word.vertex_cycle(), &opts))
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    if render.is_some() {
        eprintln!("wrote {} drawings", family.len());
    }
    Ok(())
}

fn oracle_cmd(out: &mut impl Write, n: u32, relation: Relation, list: bool, run: OracleRun) -> Result<(), CliError> {
    run.check(n)?;
    let classification = run.install(|| classify(n, relation))??;
    writeln!(
        out,
        "n = {n}, relation = {relation}, labelled cycles = {}",
        classification.labelled_cycles
    )?;
    writeln!(out, "axes\tclasses")?;
    for (axes, count) in classification.histogram.counts.iter().rev() {
        writeln!(out, "{axes}\t{count}")?;
    }
    writeln!(out, "total\t{}", classification.histogram.total)?;
    if list {
        writeln!(out)?;
        writeln!(out, "key\trepresentative\taxes\trotations\tmultiplicity")?;
        for class in &classification.classes {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                class.key, class.representative, class.profile.axes, class.profile.rotation_order, class.multiplicity
            )?;
        }
    }
    Ok(())
}

fn fixture_dir(flag: Option<PathBuf>) -> PathBuf {
    if let Some(dir) = flag {
        return dir;
    }
    if let Some(dir) = std::env::var_os(FIXTURES_ENV) {
        return dir.into();
    }
    let local = PathBuf::from("fixtures");
    if local.is_dir() {
        return local;
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

struct Tally {
    pass: usize,
    warn: usize,
    fail: usize,
}

impl Tally {
    fn report(&mut self, out: &mut impl Write, scope: &str, check: &Check) -> io::Result<()> {
        match check.status {
            CheckStatus::Pass => self.pass += 1,
            CheckStatus::Warn => self.warn += 1,
            CheckStatus::Fail => self.fail += 1,
        }
        writeln!(out, "{} [{scope}] {}: {}", check.status, check.name, check.detail)
    }
}

fn status(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

fn check(name: &str, ok: bool, detail: String) -> Check {
    Check {
        name: name.to_owned(),
        status: status(ok),
        detail,
    }
}

fn verify(out: &mut impl Write, max_n: u32, fixtures: Option<PathBuf>, run: OracleRun) -> Result<ExitCode, CliError> {
    if !(3..=MAX_N).contains(&max_n) {
        return Err(CliError::Usage(format!("--max-n must lie in [3, {MAX_N}]")));
    }
    run.check(max_n)?;
    let mut tally = Tally { pass: 0, warn: 0, fail: 0 };

    let mut oracle_m4 = None;
    for n in 3..=max_n {
        let report: CensusReport = run.install(|| cross_check(n))??;
        if n == 4 {
            oracle_m4 = report.oracle.as_ref().and_then(|o| o.m_symmetric);
        }
        for c in &report.checks {
            tally.report(out, &format!("n={n}"), c)?;
        }
    }

    let dir = fixture_dir(fixtures);
    let table1 = SequenceFile::read(&fixture_path(&dir, "table1_m_symmetric"))
        .with_context(|| format!("reading the m-symmetric fixture from {}", dir.display()))?;
    let computed = m_symmetric_sequence(6, 90)?;
    let diff = compare_sequence(&computed, &table1)?;
    let detail = if diff.is_empty() {
        "44-entry table, n = 6..90 agree with the formula".to_owned()
    } else {
        diff.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
    };
    tally.report(out, "fixture", &check("m-symmetric table", diff.is_empty(), detail))?;
    if let (Some(counted), Some(reference)) = (oracle_m4, table1.get(m_symmetric_index(4))) {
        let formula = count_m_symmetric(4)?;
        let ok = reference == &counted.into();
        let note = if is_known_anomaly(4, formula, counted) { " (formula gives 0)" } else { "" };
        tally.report(
            out,
            "fixture",
            &check("m-symmetric table n = 4", ok, format!("oracle {counted}, table {reference}{note}")),
        )?;
    }

    let table3 = SequenceFile::read(&fixture_path(&dir, "table3_power_of_two"))
        .with_context(|| format!("reading the power-of-two fixture from {}", dir.display()))?;
    let mut bad = Vec::new();
    for k in table3.indices() {
        let k = u32::try_from(k).map_err(|_| anyhow::anyhow!("bad exponent {k} in fixture"))?;
        let row = closed_form_power_of_two(k)?;
        let direct = count_m_symmetric(1 << k)?;
        if table3.get(i64::from(k)) != Some(&row.count.into()) || direct != row.count {
            bad.push(format!("k = {k}: closed form {}, formula {direct}", row.count));
        }
    }
    let detail = if bad.is_empty() { format!("k = {:?}", table3.indices()) } else { bad.join("; ") };
    tally.report(out, "fixture", &check("power-of-two table", bad.is_empty(), detail))?;

    let mut mismatches = 0;
    let mut checked = 0;
    for n in (4..=1024u32).step_by(2) {
        let direct = count_m_symmetric(n)?;
        for form in applicable_closed_forms(u64::from(n)) {
            checked += 1;
            if form.evaluate()? != direct {
                mismatches += 1;
            }
        }
    }
    tally.report(
        out,
        "formulas",
        &check("closed forms up to n = 1024", mismatches == 0, format!("{checked} cases, {mismatches} mismatches")),
    )?;

    let mut disagreements = 0;
    let mut cases = 0;
    for n in (6..=200u32).step_by(2) {
        for a in 1..n {
            for b in a + 1..n {
                let pair = AlternatingPair::new(n, a, b)?;
                cases += 1;
                if induces_polygon(&pair) != is_valid_edge_word(&alternating_word(&pair)) {
                    disagreements += 1;
                }
            }
        }
    }
    tally.report(
        out,
        "theorems",
        &check(
            "gcd/parity predicate vs partial sums, n = 6..200",
            disagreements == 0,
            format!("{cases} cases, {disagreements} disagreements"),
        ),
    )?;

    writeln!(
        out,
        "verify: {} passed, {} warnings, {} failed",
        tally.pass, tally.warn, tally.fail
    )?;
    Ok(if tally.fail == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn table(
    out: &mut impl Write,
    from: u32,
    to: u32,
    format: &str,
    file: Option<&Path>,
    oracle_max: u32,
    run: OracleRun,
) -> Result<(), CliError> {
    let format: TableFormat = format.parse()?;
    let from = from.max(4);
    if from > to {
        return Err(CliError::Usage(format!("empty range {from}..={to}")));
    }
    let oracle_max = oracle_max.min(DEFAULT_MAX_N);
    let mut reports = Vec::new();
    for n in (from + from % 2..=to).step_by(2) {
        let report = if n <= oracle_max {
            run.install(|| oracle::cross_check(n))??
        } else {
            CensusReport::from_formulas(n)?
        };
        for c in report.checks.iter().filter(|c| c.status != CheckStatus::Pass) {
            eprintln!("{} [n={n}] {}: {}", c.status, c.name, c.detail);
        }
        reports.push(report);
    }
    let text = emit_table(&reports, format)?;
    emit(out, file, &text)
}
