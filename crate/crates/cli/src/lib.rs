//! `rainbow`: command-line front end for `rainbow-core`.
//!
//! Every subcommand produces a [`CertificateDocument`]: the inputs, a
//! command-specific result and a list of named checks. The document is
//! printed as JSON with `--json` and as a plain table otherwise.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage
//! errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use rainbow_core::gadget::{div4_chain, even_chain, ChainStage, GadgetError};
use rainbow_core::search::{
    backtrack_search_with_progress, construct_div4, construct_even, div4_multiset, even_multiset,
    parse_compact, parse_vertex_cycle, verify_cycle, ConstraintFamily, CycleCertificate,
    SearchError, SearchOptions, SearchOutcome, DEFAULT_NODE_BUDGET,
};
use rainbow_core::semigroup::NumericalSemigroup;
use rainbow_core::spectrum::{implied_members, main_theorem_bound, verify_progression};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub schema_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub result: Value,
    pub checks: Vec<Check>,
}

impl CertificateDocument {
    fn new(command: &str) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs: BTreeMap::new(),
            result: Value::Null,
            checks: Vec::new(),
        }
    }

    fn input(&mut self, key: &str, value: impl Serialize) {
        self.inputs.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable input"),
        );
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "rainbow",
    version,
    about = "Rainbow-cycle spectra: semigroups, chord-color derivations and witness cycles"
)]
struct Cli {
    /// Print the certificate document as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Numerical semigroup arithmetic.
    Semigroup {
        /// Comma-separated generators.
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
        /// Report the period.
        #[arg(long)]
        period: bool,
        /// Least start of a progression with this step inside the semigroup.
        #[arg(long)]
        conductor_step: Option<u64>,
        /// List members up to this bound.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Spectrum members implied by a single member n.
    Spectrum {
        #[arg(long)]
        n: u64,
        /// Largest member to derive (default: n + 100, or 4N with --verify-main).
        #[arg(long)]
        limit: Option<u64>,
        /// Check the guaranteed progression from the main bound up to the limit.
        #[arg(long)]
        verify_main: bool,
    },
    /// Run a chord-color derivation.
    Lemmas {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        case: Case,
        #[arg(long, value_enum, default_value = "short")]
        stage: Stage,
    },
    /// Build a witness cycle deterministically.
    Construct {
        #[arg(long, value_enum)]
        case: Case,
        #[command(flatten)]
        size: Size,
    },
    /// Backtracking search for a witness cycle.
    Search {
        #[arg(long, value_enum)]
        case: Case,
        #[command(flatten)]
        size: Size,
        /// Run to completion, ignoring the budget.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Step lengths in the order they are tried (default: 1, then chords by length).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        ordering: Option<Vec<i64>>,
    },
    /// Verify a witness cycle.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        case: Option<Case>,
        #[command(flatten)]
        size: Size,
    },
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct Size {
    /// Cycle length.
    #[arg(long)]
    n: Option<u32>,
    /// For the doubly-even case, n = 4k.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// A certificate document written by `--json`.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Compact notation, e.g. "0 →87 87 →^13 1 100 ...".
    #[arg(long)]
    compact: Option<String>,
    /// Vertex sequence, e.g. "0→1→2→3→16→...→0".
    #[arg(long)]
    vertices: Option<String>,
    /// Comma-separated signed steps from vertex 0.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    steps: Option<Vec<i64>>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Case {
    Even,
    Div4,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Stage {
    Long,
    Offset,
    Short,
}

impl From<Stage> for ChainStage {
    fn from(s: Stage) -> Self {
        match s {
            Stage::Long => ChainStage::LongChords,
            Stage::Offset => ChainStage::OffsetChords,
            Stage::Short => ChainStage::ShortChords,
        }
    }
}

/// Bad input, reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl From<SearchError> for Usage {
    fn from(e: SearchError) -> Self {
        Usage(e.to_string())
    }
}

fn cycle_length(case: Case, size: &Size) -> Result<u32, Usage> {
    match (case, size.n, size.k) {
        (_, Some(n), None) => Ok(n),
        (Case::Div4, None, Some(k)) => Ok(4 * k),
        (Case::Even, None, Some(_)) => Err(Usage("--k applies to the div4 case; use --n".into())),
        _ => Err(Usage(
            "give the cycle length with --n (or --k for div4)".into(),
        )),
    }
}

fn family(case: Case, n: u32) -> Result<ConstraintFamily, Usage> {
    Ok(match case {
        Case::Even => ConstraintFamily::even_chain(n)?,
        Case::Div4 => ConstraintFamily::div4_chain(n)?,
    })
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable result")
}

fn certificate_checks(doc: &mut CertificateDocument, cert: &CycleCertificate) {
    let pick = |ok: bool, pass: &str, fail: &str| if ok { pass } else { fail }.to_string();
    let flags = [
        (
            "modulus",
            cert.modulus_ok,
            pick(
                cert.modulus_ok,
                &format!("ring has {} vertices", cert.modulus),
                &format!("{} does not match the family ring", cert.modulus),
            ),
        ),
        (
            "multiset",
            cert.multiset_ok,
            pick(
                cert.multiset_ok,
                "step lengths match the prescribed multiset",
                "step lengths differ from the prescribed multiset",
            ),
        ),
        (
            "closed",
            cert.closed_ok,
            pick(
                cert.closed_ok,
                "steps sum to a multiple of M",
                "steps do not sum to a multiple of M",
            ),
        ),
        (
            "distinct",
            cert.distinct_ok,
            pick(cert.distinct_ok, "no vertex repeats", "a vertex repeats"),
        ),
        (
            "forced-rainbow",
            cert.forced_rainbow_ok,
            match cert.witness {
                Some(w) => format!("edges {} and {} may share a color", w.first, w.second),
                None if cert.forced_rainbow_ok => {
                    "allowed color sets are pairwise disjoint".to_string()
                }
                None => "not checked: the walk is not a cycle".to_string(),
            },
        ),
    ];
    for (name, ok, detail) in flags {
        doc.check(name, ok, detail);
    }
}

fn semigroup(
    doc: &mut CertificateDocument,
    gens: &[u64],
    period: bool,
    step: Option<u64>,
    bound: Option<u64>,
) -> Result<(), Usage> {
    doc.input("gens", gens);
    let a = NumericalSemigroup::semigroup(gens).map_err(|e| Usage(e.to_string()))?;
    let mut result = serde_json::Map::new();
    result.insert("generators".into(), to_value(a.generators()));
    if period || (step.is_none() && bound.is_none()) {
        result.insert("period".into(), json!(a.period()));
    }
    if let Some(step) = step {
        doc.input("conductor_step", step);
        match a.progression_conductor(step) {
            Ok(start) => {
                result.insert("conductor".into(), json!(start));
                doc.check(
                    "conductor",
                    true,
                    format!("{{{start} + {step}k}} lies in the semigroup"),
                );
            }
            Err(e) => doc.check("conductor", false, e.to_string()),
        }
    }
    if let Some(bound) = bound {
        doc.input("bound", bound);
        result.insert("members".into(), to_value(a.members_up_to(bound)));
    }
    doc.result = Value::Object(result);
    Ok(())
}

fn spectrum(
    doc: &mut CertificateDocument,
    n: u64,
    limit: Option<u64>,
    verify_main: bool,
) -> Result<(), Usage> {
    if n < 3 {
        return Err(Usage(format!("n must be at least 3, got {n}")));
    }
    doc.input("n", n);
    let (p, start) = main_theorem_bound(n);
    let limit = limit.unwrap_or(if verify_main {
        4 * start.max(n)
    } else {
        n + 100
    });
    if limit < n {
        return Err(Usage(format!("limit {limit} is below n = {n}")));
    }
    doc.input("limit", limit);
    let facts = implied_members(n, limit);
    let mut result = json!({
        "period": p,
        "bound": start,
        "derived_count": facts.derived.len(),
    });
    if verify_main {
        doc.input("verify_main", true);
        if limit < start {
            return Err(Usage(format!("limit {limit} is below the bound {start}")));
        }
        let check = verify_progression(n, p, start, limit);
        result["progression"] = to_value(&check);
        let detail = match check.counterexample {
            Some(m) => format!("{m} is not derived"),
            None => format!("{{{start} + {p}k}} derived up to {limit}"),
        };
        doc.check("progression", check.holds, detail);
    } else {
        result["derived"] = to_value(&facts.derived);
    }
    doc.result = result;
    Ok(())
}

fn lemmas(doc: &mut CertificateDocument, n: u32, case: Case, stage: Stage) -> Result<(), Usage> {
    doc.input("n", n);
    doc.input("case", format!("{case:?}").to_lowercase());
    let run = match case {
        Case::Even => even_chain(n, stage.into()),
        Case::Div4 => div4_chain(n, stage.into()),
    };
    match run {
        Ok(chain) => {
            doc.result = json!({
                "modulus": chain.ring.modulus(),
                "stage": chain.stage,
                "families": chain.families,
                "collisions": chain.collisions,
                "notes": chain.notes,
                "steps_checked": chain.steps.len(),
            });
            for f in chain.effective_families() {
                doc.check(
                    &format!("length-{}", f.length),
                    true,
                    format!(
                        "(i, i+{}) allows {{i+{}, ...}} of width {} for every i",
                        f.length, f.offset, f.width
                    ),
                );
            }
            Ok(())
        }
        Err(GadgetError::ChainPrecondition(msg)) => Err(Usage(msg)),
        Err(e) => {
            doc.result = json!({ "error": e.to_string() });
            doc.check("derivation", false, e.to_string());
            Ok(())
        }
    }
}

fn construct(doc: &mut CertificateDocument, case: Case, size: &Size) -> Result<(), Usage> {
    let n = cycle_length(case, size)?;
    doc.input("case", format!("{case:?}").to_lowercase());
    doc.input("n", n);
    if case == Case::Div4 && n % 4 != 0 {
        return Err(Usage(format!("div4 needs n divisible by 4, got {n}")));
    }
    let built = match case {
        Case::Even => construct_even(n),
        Case::Div4 => construct_div4(n / 4),
    };
    match built {
        Ok((trace, steps)) => {
            let fam = family(case, n)?;
            let cert = verify_cycle(fam.modulus(), &steps, n, &fam);
            certificate_checks(doc, &cert);
            doc.result = json!({ "trace": trace, "certificate": cert });
            Ok(())
        }
        Err(e @ (SearchError::InequalityFailed(_) | SearchError::ConstructionInvariant(_))) => {
            doc.result = json!({ "error": e.to_string() });
            doc.check("construction", false, e.to_string());
            Ok(())
        }
        Err(e) => Err(e.into()),
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    doc: &mut CertificateDocument,
    case: Case,
    size: &Size,
    exhaustive: bool,
    budget: u64,
    ordering: Option<Vec<i64>>,
    err: &mut dyn Write,
) -> Result<(), Usage> {
    let n = cycle_length(case, size)?;
    let fam = family(case, n)?;
    let ms = match case {
        Case::Even => even_multiset(n)?,
        Case::Div4 => div4_multiset(n / 4)?,
    };
    let ordering = ordering.unwrap_or_else(|| fam.default_ordering());
    doc.input("case", format!("{case:?}").to_lowercase());
    doc.input("n", n);
    doc.input("exhaustive", exhaustive);
    if !exhaustive {
        doc.input("budget", budget);
    }
    doc.input("ordering", &ordering);
    let options = SearchOptions {
        ordering,
        exhaustive,
        node_budget: budget,
    };
    let mut progress = |nodes: u64| {
        let _ = writeln!(err, "search: {nodes} nodes");
    };
    let report =
        backtrack_search_with_progress(fam.modulus(), &ms, &fam, &options, Some(&mut progress));
    match &report.outcome {
        SearchOutcome::Found(steps) => {
            let cert = verify_cycle(fam.modulus(), steps, n, &fam);
            certificate_checks(doc, &cert);
            doc.result = json!({ "outcome": "found", "nodes": report.nodes, "certificate": cert });
        }
        SearchOutcome::None => {
            doc.check(
                "complete",
                true,
                format!("no witness exists; {} nodes explored", report.nodes),
            );
            doc.result = json!({ "outcome": "none", "nodes": report.nodes });
        }
        SearchOutcome::BudgetExhausted => {
            doc.check("complete", false, format!("node budget {budget} exhausted"));
            doc.result = json!({ "outcome": "budget-exhausted", "nodes": report.nodes });
        }
    }
    Ok(())
}

fn verify(
    doc: &mut CertificateDocument,
    source: &Source,
    case: Option<Case>,
    size: &Size,
) -> Result<(), Usage> {
    if let Some(path) = &source.file {
        doc.input("file", path.display().to_string());
        let text =
            std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
        let stored: CertificateDocument =
            serde_json::from_str(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
        if stored.schema_version != SCHEMA_VERSION {
            return Err(Usage(format!(
                "unsupported schema version {:?}",
                stored.schema_version
            )));
        }
        // construct and search nest the certificate; verify stores it directly
        let cert_value = stored
            .result
            .get("certificate")
            .cloned()
            .unwrap_or(stored.result.clone());
        let claimed: CycleCertificate = serde_json::from_value(cert_value)
            .map_err(|e| Usage(format!("result is not a cycle certificate: {e}")))?;
        let fam = ConstraintFamily::from_id(&claimed.constraint_family)?;
        let cert = verify_cycle(claimed.modulus, &claimed.steps, claimed.n, &fam);
        certificate_checks(doc, &cert);
        doc.check(
            "matches-document",
            cert == claimed,
            if cert == claimed {
                "recomputed certificate equals the stored one".to_string()
            } else {
                "stored certificate differs from the recomputed one".to_string()
            },
        );
        doc.result = to_value(&cert);
        return Ok(());
    }
    let case = case.ok_or_else(|| Usage("--case is required unless --file is given".into()))?;
    let n = cycle_length(case, size)?;
    let fam = family(case, n)?;
    let m = fam.modulus();
    doc.input("case", format!("{case:?}").to_lowercase());
    doc.input("n", n);
    let steps = if let Some(text) = &source.compact {
        doc.input("compact", text);
        parse_compact(text, m)
    } else if let Some(text) = &source.vertices {
        doc.input("vertices", text);
        parse_vertex_cycle(text, m)
    } else {
        let steps = source.steps.clone().unwrap_or_default();
        doc.input("steps", &steps);
        Ok(steps)
    };
    let steps = match steps {
        Ok(steps) => steps,
        Err(e @ SearchError::VertexMismatch { .. }) => {
            doc.check("parse", false, e.to_string());
            doc.result = json!({ "error": e.to_string() });
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let cert = verify_cycle(m, &steps, n, &fam);
    certificate_checks(doc, &cert);
    doc.result = to_value(&cert);
    Ok(())
}

fn write_table(out: &mut dyn Write, doc: &CertificateDocument) -> std::io::Result<()> {
    writeln!(out, "command: {}", doc.command)?;
    for (k, v) in &doc.inputs {
        writeln!(out, "  {k} = {v}")?;
    }
    writeln!(out, "result:")?;
    match &doc.result {
        Value::Object(map) => {
            for (k, v) in map {
                writeln!(out, "  {k}: {v}")?;
            }
        }
        other => writeln!(out, "  {other}")?,
    }
    if !doc.checks.is_empty() {
        writeln!(out, "checks:")?;
        for c in &doc.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            writeln!(out, "  {mark}  {:<16} {}", c.name, c.detail)?;
        }
    }
    Ok(())
}

/// Parse `args` (including the program name), run the command and return
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    let mut doc;
    let outcome = match &cli.command {
        Command::Semigroup {
            gens,
            period,
            conductor_step,
            bound,
        } => {
            doc = CertificateDocument::new("semigroup");
            semigroup(&mut doc, gens, *period, *conductor_step, *bound)
        }
        Command::Spectrum {
            n,
            limit,
            verify_main,
        } => {
            doc = CertificateDocument::new("spectrum");
            spectrum(&mut doc, *n, *limit, *verify_main)
        }
        Command::Lemmas { n, case, stage } => {
            doc = CertificateDocument::new("lemmas");
            lemmas(&mut doc, *n, *case, *stage)
        }
        Command::Construct { case, size } => {
            doc = CertificateDocument::new("construct");
            construct(&mut doc, *case, size)
        }
        Command::Search {
            case,
            size,
            exhaustive,
            budget,
            ordering,
        } => {
            doc = CertificateDocument::new("search");
            search(
                &mut doc,
                *case,
                size,
                *exhaustive,
                *budget,
                ordering.clone(),
                err,
            )
        }
        Command::Verify { source, case, size } => {
            doc = CertificateDocument::new("verify");
            verify(&mut doc, source, *case, size)
        }
    };
    if let Err(Usage(msg)) = outcome {
        let _ = writeln!(err, "error: {msg}");
        return 2;
    }
    let written = if cli.json {
        serde_json::to_string_pretty(&doc)
            .map_err(std::io::Error::other)
            .and_then(|s| writeln!(out, "{s}"))
    } else {
        write_table(out, &doc)
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    if doc.passed() {
        0
    } else {
        1
    }
}
