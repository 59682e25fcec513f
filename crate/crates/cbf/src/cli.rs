//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use cbf_core::{
    build_expanded, build_s, build_s_classic, build_u, build_v, count_u_closed, count_u_enumerate,
    cross_bifix_witness, greedy_saturate, is_bifix_free, is_non_expandable, reproduce_tables,
    Bipartition, Branch, Code, ConstructionKind, CountReport, ExpansionParams, OverlapWitness,
    ScanLimit, UCache, DEFAULT_GUARD,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::codefile::{self, CodeExport};
use crate::error::{exit, CliError, Result};
use crate::render::{self, CheckOutcome};

#[derive(Debug, Parser)]
#[command(
    name = "cbf",
    version,
    about = "Generate, verify and count cross-bifix-free codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and write its words
    Gen(GenArgs),
    /// Run checks on a code file
    Verify(VerifyArgs),
    /// Count |U(n)| by closed form and/or enumeration
    Count(CountArgs),
    /// Rebuild the |S| and |S ∪ U| tables
    Table(TableArgs),
    /// Greedily add words to a code until it is non-expandable
    Saturate(SaturateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Enumerate,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Check {
    Bifix,
    Cross,
    Nonexpandable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symbols(pub Vec<u8>);

fn parse_symbols(s: &str) -> std::result::Result<Symbols, String> {
    codefile::parse_symbols(s).map(Symbols)
}

#[derive(Debug, Args)]
pub struct Alphabet {
    /// Alphabet size
    #[arg(long, default_value_t = 2)]
    pub q: u8,
    /// Symbols of the class I, comma separated
    #[arg(long = "I", value_name = "SYMBOLS", default_value = "0", value_parser = parse_symbols)]
    pub i: Symbols,
}

impl Alphabet {
    fn bipartition(&self) -> Result<Bipartition> {
        Ok(Bipartition::new(self.q, &self.i.0)?)
    }
}

#[derive(Debug, Args)]
pub struct Common {
    /// Cap on q^n for exhaustive scans and generated shapes
    #[arg(long, env = "CBF_GUARD", default_value_t = DEFAULT_GUARD)]
    pub guard: u128,
    /// Write data here instead of standard output
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

impl Common {
    fn limit(&self) -> ScanLimit {
        ScanLimit::new(self.guard)
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub alphabet: Alphabet,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value = "s", value_parser = |s: &str| s.parse::<ConstructionKind>().map_err(|e| e.to_string()))]
    pub construction: ConstructionKind,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Checks reported on standard error
    #[arg(long, value_enum, value_delimiter = ',', default_value = "cross")]
    pub checks: Vec<Check>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Code file; `-` reads standard input
    pub input: PathBuf,
    /// Alphabet size for files without a header
    #[arg(long)]
    pub q: Option<u8>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "bifix,cross")]
    pub checks: Vec<Check>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub alphabet: Alphabet,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub alphabet: Alphabet,
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SaturateArgs {
    /// Code file; `-` reads standard input
    pub input: PathBuf,
    /// Alphabet size for files without a header
    #[arg(long)]
    pub q: Option<u8>,
    /// Class I reported in JSON output when the file header has none
    #[arg(long = "I", value_name = "SYMBOLS", value_parser = parse_symbols)]
    pub i: Option<Symbols>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

/// Parses `args` and runs the selected subcommand. Returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{e}");
            return u8::try_from(e.exit_code()).unwrap_or(exit::USAGE);
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if let CliError::Core(cbf_core::Error::GuardExceeded { .. }) = e {
                let _ = writeln!(stderr, "raise the limit with --guard or CBF_GUARD");
            }
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8> {
    match cmd {
        Command::Gen(a) => gen(a, stdout, stderr),
        Command::Verify(a) => verify(a, stdout),
        Command::Count(a) => count(a, stdout, stderr),
        Command::Table(a) => table(a, stdout),
        Command::Saturate(a) => saturate(a, stdout, stderr),
    }
}

fn emit(data: &[u8], out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => fs::write(path, data)?,
        None => stdout.write_all(data)?,
    }
    Ok(())
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        return Ok(std::io::read_to_string(std::io::stdin())?);
    }
    Ok(fs::read_to_string(path)?)
}

fn unsupported(format: Format, cmd: &str) -> CliError {
    let name = format
        .to_possible_value()
        .map(|v| v.get_name().to_owned())
        .unwrap_or_default();
    CliError::Usage(format!("format {name} is not available for {cmd}"))
}

fn describe_overlap(w: &OverlapWitness, q: u8) -> String {
    use cbf_core::Direction::*;
    let (pre, suf) = match w.direction {
        PrefixOfXIsSuffixOfV => (&w.x, &w.v),
        PrefixOfVIsSuffixOfX => (&w.v, &w.x),
    };
    format!(
        "prefix of {} is a suffix of {}",
        pre.to_text(q),
        suf.to_text(q)
    )
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_code(
    code: &Code,
    export: impl FnOnce() -> CodeExport,
    format: Format,
    cmd: &str,
) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    match format {
        Format::Text => codefile::write_words(code, &mut buf)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, &export())?;
            buf.push(b'\n');
        }
        other => return Err(unsupported(other, cmd)),
    }
    Ok(buf)
}

fn gen(a: GenArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8> {
    if matches!(a.format, Format::Csv | Format::Markdown) {
        return Err(unsupported(a.format, "gen"));
    }
    let limit = a.common.limit();
    let (n, k) = (a.n, a.k);
    let bip = match a.construction {
        ConstructionKind::SClassic => Bipartition::classic(a.alphabet.q)?,
        _ => a.alphabet.bipartition()?,
    };
    let mut cache = UCache::new();
    let code = match a.construction {
        ConstructionKind::S => build_s(&bip, n, k, limit)?,
        ConstructionKind::SClassic => build_s_classic(bip.q(), n, k, limit)?,
        ConstructionKind::V => build_v(&ExpansionParams::new(n, k)?, &bip, n, limit)?,
        ConstructionKind::U => build_u(&ExpansionParams::new(n, k)?, &bip, n, &mut cache, limit)?,
        ConstructionKind::Expanded => build_expanded(&bip, n, k, &mut cache, limit)?,
    };
    write!(
        stderr,
        "{} {bip} n={n} k={k}: {} words",
        a.construction,
        code.len()
    )?;
    let mut verified = false;
    let mut non_expandable = None;
    if !code.is_empty() && n >= 2 {
        let witness = cross_bifix_witness(&code)?;
        verified = witness.is_none();
        if a.checks.contains(&Check::Cross) {
            write!(stderr, ", cross-bifix-free {}", yes_no(verified))?;
        }
        if a.checks.contains(&Check::Bifix) {
            let all = code
                .iter()
                .map(|w| is_bifix_free(w))
                .collect::<cbf_core::Result<Vec<_>>>()?;
            write!(stderr, ", bifix-free {}", yes_no(all.iter().all(|&b| b)))?;
        }
        if a.checks.contains(&Check::Nonexpandable) && verified {
            let ne = is_non_expandable(&code, limit)?.non_expandable;
            non_expandable = Some(ne);
            write!(stderr, ", non-expandable {}", yes_no(ne))?;
        }
    }
    writeln!(stderr)?;
    let data = write_code(
        &code,
        || CodeExport::new(&code, &bip, verified, non_expandable),
        a.format,
        "gen",
    )?;
    emit(&data, a.common.out.as_deref(), stdout)?;
    Ok(exit::OK)
}

fn border(w: &[u8]) -> Option<usize> {
    let n = w.len();
    (1..n).find(|&j| w[..j] == w[n - j..])
}

fn run_checks(code: &Code, checks: &[Check], limit: ScanLimit) -> Result<Vec<CheckOutcome>> {
    let q = code.q();
    let mut checks = checks.to_vec();
    checks.sort();
    checks.dedup();
    let mut outcomes = Vec::new();
    for check in checks {
        let outcome = match check {
            Check::Bifix => {
                let bad = code.iter().find_map(|w| border(w).map(|j| (w, j)));
                CheckOutcome {
                    check: "bifix",
                    pass: bad.is_none(),
                    witness: bad.map(|(w, _)| w.to_text(q)),
                    detail: bad.map(|(w, j)| {
                        format!("border {}", cbf_core::Word::from(&w[..j]).to_text(q))
                    }),
                }
            }
            Check::Cross => {
                let wit = cross_bifix_witness(code)?;
                CheckOutcome {
                    check: "cross",
                    pass: wit.is_none(),
                    witness: wit
                        .as_ref()
                        .map(|w| cbf_core::Word::from(w.overlap()).to_text(q)),
                    detail: wit.as_ref().map(|w| describe_overlap(w, q)),
                }
            }
            Check::Nonexpandable => {
                limit.check_space(q, code.n())?;
                if let Some(w) = cross_bifix_witness(code)? {
                    CheckOutcome {
                        check: "nonexpandable",
                        pass: false,
                        witness: None,
                        detail: Some(format!("not cross-bifix-free: {}", describe_overlap(&w, q))),
                    }
                } else {
                    let v = is_non_expandable(code, limit)?;
                    CheckOutcome {
                        check: "nonexpandable",
                        pass: v.non_expandable,
                        witness: v.witness.map(|w| w.to_text(q)),
                        detail: (!v.non_expandable).then(|| "can be added".to_string()),
                    }
                }
            }
        };
        outcomes.push(outcome);
    }
    Ok(outcomes)
}

fn verify(a: VerifyArgs, stdout: &mut dyn Write) -> Result<u8> {
    let file = codefile::parse(&read_input(&a.input)?, a.q)?;
    let outcomes = run_checks(&file.code, &a.checks, a.common.limit())?;
    let mut buf = Vec::new();
    match a.format {
        Format::Text => render::checks_text(&outcomes, &mut buf)?,
        Format::Csv => render::checks_csv(&outcomes, &mut buf)?,
        Format::Json => render::checks_json(&outcomes, &mut buf)?,
        Format::Markdown => return Err(unsupported(a.format, "verify")),
    }
    emit(&buf, a.common.out.as_deref(), stdout)?;
    Ok(if outcomes.iter().all(|o| o.pass) {
        exit::OK
    } else {
        exit::CHECK_FAILED
    })
}

fn count(a: CountArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8> {
    if a.format == Format::Markdown {
        return Err(unsupported(a.format, "count"));
    }
    let bip = a.alphabet.bipartition()?;
    let (n, k) = (a.n, a.k);
    let limit = a.common.limit();
    let mut cache = UCache::new();
    let closed = count_u_closed(&bip, n, k, &mut cache, limit);
    if let Err(cbf_core::Error::NotApplicable(_)) = &closed {
        if n >= 2 && k >= 1 && (k + 1 == n || 2 * k < n) {
            writeln!(
                stderr,
                "S is already non-expandable for n={n} k={k}; there is no U to count"
            )?;
        }
    }
    let report = match a.method {
        Method::Closed => closed?,
        Method::Enumerate => {
            closed.map(|_| ())?;
            let enumerated = count_u_enumerate(&bip, n, k, &mut cache, limit)?;
            CountReport {
                n,
                k,
                q: bip.q(),
                size_i: bip.size_i(),
                size_j: bip.size_j(),
                closed_form: None,
                enumerated: Some(enumerated),
                branch: Branch::select(n, k),
                agree: None,
            }
        }
        Method::Both => {
            let enumerated = count_u_enumerate(&bip, n, k, &mut cache, limit)?;
            closed?.with_enumerated(enumerated)
        }
    };
    let mut buf = Vec::new();
    match a.format {
        Format::Csv => render::count_csv(&report, &mut buf)?,
        Format::Json => render::count_json(&report, &mut buf)?,
        _ => render::count_text(&report, &mut buf)?,
    }
    emit(&buf, a.common.out.as_deref(), stdout)?;
    Ok(if report.agree == Some(false) {
        exit::CHECK_FAILED
    } else {
        exit::OK
    })
}

fn table(a: TableArgs, stdout: &mut dyn Write) -> Result<u8> {
    let bip = a.alphabet.bipartition()?;
    let mut cache = UCache::new();
    let tables = reproduce_tables(&bip, &mut cache, a.common.limit())?;
    let mut buf = Vec::new();
    match a.format {
        Format::Csv => render::tables_csv(&tables, &mut buf)?,
        Format::Json => render::tables_json(&tables, &mut buf)?,
        _ => render::tables_markdown(&tables, &bip.to_string(), &mut buf)?,
    }
    emit(&buf, a.common.out.as_deref(), stdout)?;
    Ok(if tables.all_accepted() {
        exit::OK
    } else {
        exit::CHECK_FAILED
    })
}

fn saturate(a: SaturateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8> {
    let file = codefile::parse(&read_input(&a.input)?, a.q)?;
    let code = &file.code;
    let limit = a.common.limit();
    limit.check_space(code.q(), code.n())?;
    if let Some(w) = cross_bifix_witness(code)? {
        writeln!(
            stderr,
            "input is not cross-bifix-free: {}",
            describe_overlap(&w, code.q())
        )?;
        return Ok(exit::CHECK_FAILED);
    }
    let bip = match (a.i, file.bipartition()?) {
        (Some(Symbols(i)), _) => Bipartition::new(code.q(), &i)?,
        (None, Some(b)) => b,
        (None, None) => Bipartition::classic(code.q())?,
    };
    let sat = greedy_saturate(code, limit)?;
    writeln!(stderr, "added {} words", sat.len() - code.len())?;
    writeln!(stderr, "{} words, non-expandable yes", sat.len())?;
    let data = write_code(
        &sat,
        || CodeExport::new(&sat, &bip, true, Some(true)),
        a.format,
        "saturate",
    )?;
    emit(&data, a.common.out.as_deref(), stdout)?;
    Ok(exit::OK)
}
