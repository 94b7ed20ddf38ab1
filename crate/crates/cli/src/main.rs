//! `slodowy`: certify reduction by stages for pairs of nilpotent data.
//!
//! Exit codes: 0 when every certified pair passes, 1 when one fails, 2 when
//! the input was rejected before any certification ran.

mod job;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use slodowy_core::catalog::{
    hook_datum, instantiate, run_catalog, search_sl_n, CatalogError, FamilySpec, FamilyTag, Report,
};
use slodowy_core::gradings::GradingElement;
use slodowy_core::stagecert::{certify, render_text, Certificate, Status};
use slodowy_core::triples::NilpotentDatum;

use job::{parse_pair, read_job, Job};

#[derive(Parser)]
#[command(name = "slodowy", version, about = "Exact certificates for reduction by stages of Slodowy slices")]
struct Cli {
    /// Worker threads for concurrent certification.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct FamilyArgs {
    /// hookA, sl4_min_rect, B_subreg_reg or C_small_reg
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    l1: Option<usize>,
    #[arg(long)]
    l2: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct Output {
    /// Emit JSON instead of a text table.
    #[arg(long)]
    json: bool,
    /// Write to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Certify one pair, given by a family or a job file.
    Certify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, conflicts_with_all = ["family", "n", "l1", "l2", "r"])]
        job: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Certify every built-in family at its default parameters.
    Catalog {
        #[command(flatten)]
        output: Output,
    },
    /// Enumerate good type A pyramids of sl_n and certify all ordered pairs.
    Search {
        #[arg(long)]
        n: usize,
        /// Largest absolute column; defaults to n.
        #[arg(long)]
        bound: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Print the data of a hook pyramid, a family pair or a pair job.
    Show {
        #[command(flatten)]
        family: FamilyArgs,
        /// Hook length, for a single hookA datum.
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, conflicts_with_all = ["family", "n", "l1", "l2", "r", "l"])]
        job: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}

/// An error that means no certification ran.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool, InputError> {
    match command {
        Command::Certify { family, job, output } => {
            let cert = match job {
                Some(path) => certify_job(&path, &output)?,
                None => {
                    let spec = family_spec(&family)?;
                    spec.validate()?;
                    certify_family(&spec)
                }
            };
            let Some(cert) = cert else { return Ok(true) };
            emit(&output, &cert, render_text(&cert))?;
            Ok(cert.verdict == Status::Pass)
        }
        Command::Catalog { output } => {
            let report = run_catalog();
            emit(&output, &report, report.render_text())?;
            Ok(report.all_pass())
        }
        Command::Search { n, bound, output } => {
            let report = search(n, bound)?;
            emit(&output, &report, report.render_text())?;
            Ok(true)
        }
        Command::Show { family, l, job, output } => {
            let dumps = show(&family, l, job.as_deref())?;
            let text: String = dumps.iter().map(DatumDump::render).collect::<Vec<_>>().join("\n");
            if dumps.len() == 1 {
                emit(&output, &dumps[0], text)?;
            } else {
                emit(&output, &dumps, text)?;
            }
            Ok(true)
        }
    }
}

fn family_spec(args: &FamilyArgs) -> Result<FamilySpec> {
    let name = args
        .family
        .as_deref()
        .ok_or_else(|| anyhow!("give either --family or --job"))?;
    let tag = FamilyTag::parse(name).ok_or_else(|| {
        anyhow!("unknown family `{name}`; expected hookA, sl4_min_rect, B_subreg_reg or C_small_reg")
    })?;
    Ok(FamilySpec {
        family: Some(tag),
        n: args.n,
        l1: args.l1,
        l2: args.l2,
        r: args.r,
        ..Default::default()
    })
}

fn certify_family(spec: &FamilySpec) -> Option<Certificate> {
    let description = spec.validate().unwrap_or_default();
    Some(match instantiate(spec) {
        Ok(pair) => certify(&pair),
        Err(e) => Certificate::construction_failure(description, e.to_string()),
    })
}

/// Runs a job. A search job prints its own report and returns `None`.
fn certify_job(path: &Path, output: &Output) -> Result<Option<Certificate>, InputError> {
    let (job, base) = read_job(path)?;
    match job {
        Job::Family(spec) => {
            spec.validate()?;
            Ok(certify_family(&spec))
        }
        Job::Pair(p) => {
            let parsed = parse_pair(&p, &base)?;
            let description = parsed.description.clone();
            Ok(Some(match parsed.build() {
                Ok(pair) => certify(&pair),
                Err(e) => Certificate::construction_failure(description, format!("{e:#}")),
            }))
        }
        Job::Search(s) => {
            let report = search(s.n, s.bound)?;
            emit(output, &report, report.render_text())?;
            Ok(None)
        }
    }
}

fn search(n: usize, bound: Option<usize>) -> Result<Report> {
    match search_sl_n(n, bound.unwrap_or(n)) {
        Ok(r) => Ok(r),
        Err(e @ (CatalogError::BoundExceeded(_) | CatalogError::InvalidParameters(_))) => Err(e.into()),
        Err(e) => Err(anyhow!("search failed: {e}")),
    }
}

fn emit<T: Serialize>(output: &Output, value: &T, text: String) -> Result<()> {
    let body = if output.json {
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        s
    } else {
        text
    };
    match &output.out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct DatumDump {
    name: String,
    algebra: String,
    f: String,
    q: String,
    e: String,
    h: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    partition: Option<String>,
    grading: BTreeMap<i64, usize>,
    lagrangian: Vec<String>,
    m: Vec<String>,
    dimensions: BTreeMap<String, usize>,
}

impl DatumDump {
    fn new(name: String, d: &NilpotentDatum) -> Result<Self> {
        let g = &d.algebra;
        let basis = |u: &slodowy_core::exactlin::Subspace| u.basis().iter().map(|v| g.describe(v)).collect();
        let q = match d.grading.q() {
            GradingElement::Inner(x) => g.describe(x.coords()),
            other => other.describe(),
        };
        let kernel = d.slice_kernel()?;
        let mut dimensions = BTreeMap::new();
        dimensions.insert("g".into(), g.dim());
        dimensions.insert("m".into(), d.m.dim());
        dimensions.insert("g_1".into(), d.grading.piece(1).dim());
        dimensions.insert("ker_ad_e".into(), kernel.dim());
        dimensions.insert("orbit".into(), d.orbit_dimension());
        Ok(DatumDump {
            name,
            algebra: g.name().to_string(),
            f: g.describe(d.f.coords()),
            q,
            e: g.describe(d.e.coords()),
            h: g.describe(d.h.coords()),
            partition: d.partition.as_ref().map(|p| p.to_string()),
            grading: d.grading.dims(),
            lagrangian: basis(&d.lagrangian),
            m: basis(&d.m),
            dimensions,
        })
    }

    fn render(&self) -> String {
        let mut out = format!("{} in {}\n", self.name, self.algebra);
        if let Some(p) = &self.partition {
            out.push_str(&format!("  partition   {p}\n"));
        }
        for (k, v) in [("f", &self.f), ("q", &self.q), ("e", &self.e), ("h", &self.h)] {
            out.push_str(&format!("  {k:11} {v}\n"));
        }
        let degrees: Vec<String> = self.grading.iter().map(|(j, d)| format!("{j}:{d}")).collect();
        out.push_str(&format!("  grading     {}\n", degrees.join(" ")));
        out.push_str(&format!("  lagrangian  {{{}}}\n", self.lagrangian.join(", ")));
        out.push_str(&format!("  m basis     {{{}}}\n", self.m.join(", ")));
        let dims: Vec<String> = self.dimensions.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("  dimensions  {}\n", dims.join(" ")));
        out
    }
}

fn show(family: &FamilyArgs, l: Option<usize>, job: Option<&Path>) -> Result<Vec<DatumDump>> {
    if let Some(path) = job {
        let (job, base) = read_job(path)?;
        let pair = match job {
            Job::Pair(p) => parse_pair(&p, &base)?.build()?,
            Job::Family(spec) => instantiate(&spec)?,
            Job::Search(_) => bail!("show does not take a search job"),
        };
        return Ok(vec![
            DatumDump::new(format!("{} (first)", pair.description), &pair.first)?,
            DatumDump::new(format!("{} (second)", pair.description), &pair.second)?,
        ]);
    }
    let spec = family_spec(family)?;
    if let (Some(FamilyTag::HookA), Some(l)) = (spec.family, l) {
        if family.l1.is_some() || family.l2.is_some() {
            bail!("give either --l or --l1/--l2");
        }
        let n = family.n.ok_or_else(|| anyhow!("missing --n"))?;
        return Ok(vec![DatumDump::new(format!("hookA(n={n}, l={l})"), &hook_datum(n, l)?)?]);
    }
    if l.is_some() {
        bail!("--l applies to --family hookA only");
    }
    let pair = instantiate(&spec)?;
    Ok(vec![
        DatumDump::new(format!("{} (first)", pair.description), &pair.first)?,
        DatumDump::new(format!("{} (second)", pair.description), &pair.second)?,
    ])
}
