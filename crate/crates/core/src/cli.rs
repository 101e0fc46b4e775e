//! Command-line front end. [`run`] does all the work and returns the exit
//! status with the text for stdout and stderr, so it can be tested without
//! spawning a process.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cohomotopy::{pi_s0_connected_sum, resolution_json};
use crate::error::{Error, Result};
use crate::extension::{
    brute_force_middle_terms, resolve, Resolution, ShortExactSequence, SplittingFilter,
};
use crate::fgab::FgAbGroup;
use crate::ktheory::{complex_k0, complex_k_minus1, ko_group, verify_sandwich, KResult};
use crate::surgery::{
    f_over_o, f_over_pl, image_c_star_generators, kernel_f_star_rank, pl_over_o, structure_set,
    surgery_sequence_report,
};
use crate::tables::Tables;
use crate::verify::{run_suite, Suite, VerifyOptions, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_AMBIGUOUS: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "cpsum", version, about = "Invariants of connected sums of complex projective spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute one invariant of #_k CP^n.
    Compute(ComputeArgs),
    /// List the middle terms of 0 -> SUB -> G -> QUOT -> 0.
    ClassifyExtension(ExtensionArgs),
    /// Print an exact sequence with its groups filled in.
    Report(ReportArgs),
    /// Run self-check suites.
    Verify(VerifyArgs),
    /// Print the input tables.
    Tables(TablesArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Invariant {
    PiS0,
    Ko,
    K0,
    #[value(name = "k-1")]
    KMinus1,
    #[value(name = "f-o")]
    FO,
    FPl,
    PlO,
    StructureSet,
    KernelFStar,
    ImageCStar,
}

#[derive(Args, Debug)]
struct Common {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Exit with status 3 when the answer is not unique.
    #[arg(long)]
    require_unique: bool,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[arg(long)]
    invariant: Invariant,
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    /// Degree for KO^{-s}; reduced mod 8.
    #[arg(long, allow_negative_numbers = true)]
    s: Option<i64>,
    /// Include the citations of the inputs used.
    #[arg(long)]
    citations: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ExtensionArgs {
    /// Subgroup, e.g. "Z_2 + Z_4".
    #[arg(long)]
    sub: FgAbGroup,
    /// Quotient, e.g. "Z + Z_3".
    #[arg(long)]
    quot: FgAbGroup,
    /// Discard middle terms with an element of this order.
    #[arg(long, value_name = "N")]
    no_element_of_order: Vec<u64>,
    /// Keep middle terms with this localization, as P=GROUP.
    #[arg(long, value_name = "P=GROUP")]
    localization: Vec<String>,
    /// Keep middle terms with this torsion subgroup.
    #[arg(long, value_name = "GROUP")]
    torsion: Option<FgAbGroup>,
    /// Keep middle terms with this free rank.
    #[arg(long, value_name = "R")]
    free_rank: Option<usize>,
    /// Use the brute-force search instead of the partition solver.
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SequenceKind {
    Surgery,
    Cohomotopy,
    KoSandwich,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long)]
    sequence: SequenceKind,
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, allow_negative_numbers = true)]
    s: Option<i64>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    All,
    Oracle,
    Snf,
    Cohomotopy,
    Ko,
    Surgery,
    Tables,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: SuiteArg,
    /// Bound on |A|*|B| for the oracle suite.
    #[arg(long, default_value_t = 64)]
    max_order: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random matrices in the SNF suite.
    #[arg(long, default_value_t = 1000)]
    cases: usize,
    /// Largest number of summands in the table suites.
    #[arg(long, default_value_t = 8)]
    max_k: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct TablesArgs {
    /// Only records of this kind.
    #[arg(long)]
    kind: Option<String>,
    /// Emit JSON lines.
    #[arg(long)]
    json: bool,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self::with_status(EXIT_OK, stdout)
    }

    fn with_status(status: i32, mut stdout: String) -> Self {
        if !stdout.ends_with('\n') {
            stdout.push('\n');
        }
        Self {
            status,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(status: i32, message: String) -> Self {
        Self {
            status,
            stdout: String::new(),
            stderr: message + "\n",
        }
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let status = match e {
        Error::OutOfRange { .. } | Error::InvalidGroup(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    };
    Outcome::error(status, format!("error: {e}"))
}

/// Parses `argv` (including the program name) and runs the command. Table
/// data comes from `FGAB_TABLES` when set.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::error(EXIT_USAGE, text.trim_end().to_string())
            } else {
                Outcome::ok(text)
            };
        }
    };
    let tables = match Tables::from_env() {
        Ok(t) => t,
        Err(e) => return error_outcome(&e),
    };
    let result = match cli.command {
        Command::Compute(a) => compute(&tables, &a),
        Command::ClassifyExtension(a) => classify(&a),
        Command::Report(a) => report(&tables, &a),
        Command::Verify(a) => Ok(verify(&tables, &a)),
        Command::Tables(a) => Ok(list_tables(&tables, &a)),
    };
    result.unwrap_or_else(|e| error_outcome(&e))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

fn resolution_outcome(r: &Resolution, common: &Common, citations: Option<&[String]>) -> Outcome {
    let status = if common.require_unique && r.unique().is_none() {
        EXIT_AMBIGUOUS
    } else {
        EXIT_OK
    };
    let text = if common.json {
        match citations {
            Some(c) => pretty(&json!({ "group": resolution_json(r), "citations": c })),
            None => pretty(&resolution_json(r)),
        }
    } else {
        let mut t = match r {
            Resolution::Unique(g) => g.to_string(),
            Resolution::Ambiguous(a) => {
                let mut t = "ambiguous:".to_string();
                for g in &a.candidates {
                    t.push_str(&format!("\n  {g}"));
                }
                t
            }
        };
        for c in citations.unwrap_or_default() {
            t.push_str(&format!("\n[{c}]"));
        }
        t
    };
    Outcome::with_status(status, text)
}

fn k_result_text(r: &KResult, json: bool, citations: bool) -> String {
    if json {
        let mut v = json!({
            "group": r.group,
            "basis": r.basis_names(),
            "relations": r.relations(),
        });
        if citations {
            v["citations"] = json!(r.citations);
        }
        pretty(&v)
    } else {
        let mut t = r.to_string();
        if citations {
            for c in &r.citations {
                t.push_str(&format!("\n[{c}]"));
            }
        }
        t
    }
}

fn with_citations(text: String, citations: &[String], show: bool) -> String {
    if !show {
        return text;
    }
    citations.iter().fold(text, |t, c| format!("{t}\n[{c}]"))
}

fn compute(tables: &Tables, a: &ComputeArgs) -> Result<Outcome> {
    let (k, n, json) = (a.k, a.n, a.common.json);
    let text = match a.invariant {
        Invariant::PiS0 => {
            let r = pi_s0_connected_sum(tables, k, n)?;
            let cites = a.citations.then_some(r.citations.as_slice());
            return Ok(resolution_outcome(&r.group, &a.common, cites));
        }
        Invariant::Ko => {
            let s = a
                .s
                .ok_or_else(|| Error::InvalidGroup("--s is required for ko".into()))?;
            k_result_text(&ko_group(s.rem_euclid(8), k, n)?, json, a.citations)
        }
        Invariant::K0 => k_result_text(&complex_k0(k, n)?, json, a.citations),
        Invariant::KMinus1 => k_result_text(&complex_k_minus1(k, n)?, json, a.citations),
        Invariant::FO | Invariant::FPl | Invariant::PlO => {
            let r = match a.invariant {
                Invariant::FO => f_over_o(tables, k, n),
                Invariant::FPl => f_over_pl(k, n),
                _ => pl_over_o(tables, k, n),
            };
            let r = match r {
                Err(Error::AmbiguousUpstream(m)) if a.common.require_unique => {
                    return Ok(Outcome::error(EXIT_AMBIGUOUS, format!("ambiguous: {m}")))
                }
                other => other?,
            };
            if json {
                pretty(&serde_json::to_value(&r).expect("results serialize"))
            } else {
                let body = format!("{}\ntorsion: {}\nfree: {}", r.group, r.torsion_source, r.free_source);
                with_citations(body, &r.citations, a.citations)
            }
        }
        Invariant::StructureSet => {
            let r = structure_set(tables, k, n)?;
            if json {
                pretty(&serde_json::to_value(&r).expect("results serialize"))
            } else {
                let count = r
                    .exotic_count
                    .as_ref()
                    .map_or("out of domain".to_string(), ToString::to_string);
                let body = format!(
                    "structure set: {}\nnormal invariants: {}\nPL/O: {}\nexotic count: {count} ({})\n{}",
                    r.image_of_eta, r.normal_invariants, r.pl_group, r.derivation, r.obstruction
                );
                with_citations(body, &r.citations, a.citations)
            }
        }
        Invariant::KernelFStar => {
            let rank = kernel_f_star_rank(k, n)?;
            if json {
                pretty(&json!({ "rank": rank }))
            } else {
                format!("Z^{rank}")
            }
        }
        Invariant::ImageCStar => {
            let gens = image_c_star_generators(k, n)?;
            if json {
                pretty(&serde_json::to_value(&gens).expect("generators serialize"))
            } else {
                gens.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
            }
        }
    };
    Ok(Outcome::ok(text))
}

fn classify(a: &ExtensionArgs) -> Result<Outcome> {
    let mut filters: Vec<SplittingFilter> = a
        .no_element_of_order
        .iter()
        .map(|&n| SplittingFilter::NoElementOfOrder { n })
        .collect();
    for spec in &a.localization {
        let (p, g) = spec
            .split_once('=')
            .ok_or_else(|| Error::InvalidGroup(format!("expected P=GROUP, got {spec}")))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::InvalidGroup(format!("bad prime {p}")))?;
        filters.push(SplittingFilter::LocalizationEquals { p, group: g.parse()? });
    }
    if let Some(t) = &a.torsion {
        filters.push(SplittingFilter::TorsionEquals { group: t.clone() });
    }
    if let Some(rank) = a.free_rank {
        filters.push(SplittingFilter::FreeRankEquals { rank });
    }
    let seq = ShortExactSequence::new(a.sub.clone(), a.quot.clone(), "command line");
    let resolution = if a.oracle {
        let all = brute_force_middle_terms(&a.sub, &a.quot)?;
        let kept: Vec<FgAbGroup> = all
            .iter()
            .filter(|g| filters.iter().all(|f| f.accepts(g)))
            .cloned()
            .collect();
        match kept.len() {
            0 => {
                return Err(Error::EmptyAfterFiltering {
                    candidates: all.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
                })
            }
            1 => Resolution::Unique(kept[0].clone()),
            _ => Resolution::Ambiguous(crate::extension::AmbiguousResult { candidates: kept }),
        }
    } else {
        resolve(&seq, &filters)?
    };
    Ok(resolution_outcome(&resolution, &a.common, None))
}

fn report(tables: &Tables, a: &ReportArgs) -> Result<Outcome> {
    match a.sequence {
        SequenceKind::Surgery => {
            let r = surgery_sequence_report(tables, a.k, a.n)?;
            Ok(Outcome::ok(if a.json {
                pretty(&serde_json::to_value(&r).expect("reports serialize"))
            } else {
                r.to_string()
            }))
        }
        SequenceKind::Cohomotopy => {
            let r = pi_s0_connected_sum(tables, a.k, a.n)?;
            let seq = &r.sequence;
            if a.json {
                return Ok(Outcome::ok(pretty(&json!({
                    "sub": seq.sub,
                    "quot": seq.quot,
                    "provenance": seq.provenance,
                    "filters": r.filters,
                    "group": resolution_json(&r.group),
                    "citations": r.citations,
                }))));
            }
            let mut t = format!(
                "0 -> {} -> pi_s^0(#_{}CP^{}) -> {} -> 0\n{}",
                seq.sub, r.k, r.n, seq.quot, seq.provenance
            );
            for f in &r.filters {
                t.push_str(&format!("\nfilter: {f}"));
            }
            t.push_str(&format!("\nresult: {}", r.group));
            Ok(Outcome::ok(t))
        }
        SequenceKind::KoSandwich => {
            let s = a
                .s
                .ok_or_else(|| Error::InvalidGroup("--s is required for ko-sandwich".into()))?;
            let r = verify_sandwich(tables, s.rem_euclid(8), a.k, a.n)?;
            let status = if r.passed() { EXIT_OK } else { EXIT_FAILURE };
            Ok(Outcome::with_status(
                status,
                if a.json {
                    pretty(&serde_json::to_value(&r).expect("reports serialize"))
                } else {
                    r.to_string()
                },
            ))
        }
    }
}

fn verify(tables: &Tables, a: &VerifyArgs) -> Outcome {
    let suites: Vec<Suite> = match a.suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Oracle => vec![Suite::Oracle],
        SuiteArg::Snf => vec![Suite::Snf],
        SuiteArg::Cohomotopy => vec![Suite::Cohomotopy],
        SuiteArg::Ko => vec![Suite::Ko],
        SuiteArg::Surgery => vec![Suite::Surgery],
        SuiteArg::Tables => vec![Suite::Tables],
    };
    let opts = VerifyOptions {
        max_order: a.max_order,
        seed: a.seed,
        cases: a.cases,
        max_k: a.max_k,
    };
    let reports: Vec<_> = suites.iter().map(|&s| run_suite(s, tables, &opts)).collect();
    let status = if reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    let text = if a.json {
        pretty(&serde_json::to_value(&reports).expect("reports serialize"))
    } else {
        reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
    };
    Outcome::with_status(status, text)
}

fn list_tables(tables: &Tables, a: &TablesArgs) -> Outcome {
    let entries: Vec<_> = tables
        .entries()
        .iter()
        .filter(|e| a.kind.as_deref().is_none_or(|k| e.kind == k))
        .collect();
    if a.json {
        let text: String = entries.iter().map(|e| e.to_json_line() + "\n").collect();
        return Outcome::ok(text);
    }
    let rows: Vec<[String; 4]> = entries
        .iter()
        .map(|e| {
            let params = e
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(",");
            let flag = if e.external { " (external)" } else { "" };
            [e.kind.clone(), params, e.group.to_string(), format!("{}{flag}", e.citation)]
        })
        .collect();
    let header = ["kind", "params", "group", "citation"].map(String::from);
    let mut widths = [0usize; 3];
    for r in std::iter::once(&header).chain(&rows) {
        for i in 0..3 {
            widths[i] = widths[i].max(r[i].chars().count());
        }
    }
    let line = |r: &[String; 4]| {
        format!(
            "{:w0$}  {:w1$}  {:w2$}  {}",
            r[0],
            r[1],
            r[2],
            r[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2]
        )
    };
    let text = std::iter::once(&header)
        .chain(&rows)
        .map(line)
        .collect::<Vec<_>>()
        .join("\n");
    Outcome::ok(text)
}
