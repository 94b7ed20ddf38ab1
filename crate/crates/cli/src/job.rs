//! Job files: exactly one of `[family]`, `[pair]` or `[search]`.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use slodowy_core::catalog::{classical, FamilySpec};
use slodowy_core::exactlin::{parse_ratio, Ratio, Subspace};
use slodowy_core::expr::parse_element;
use slodowy_core::gradings::{Grading, GradingElement};
use slodowy_core::liecore::{Element, Kind, LieAlgebra};
use slodowy_core::stagecert::StagePair;
use slodowy_core::triples::{build_datum, NilpotentDatum};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub family: Option<FamilySpec>,
    pub pair: Option<PairJob>,
    pub search: Option<SearchJob>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchJob {
    pub n: usize,
    pub bound: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJob {
    pub description: Option<String>,
    pub algebra: AlgebraSource,
    pub first: StageJob,
    pub second: StageJob,
    pub m0: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSource {
    pub kind: Option<Kind>,
    pub rank: Option<usize>,
    pub file: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Terms {
    One(String),
    Many(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum GradingSpec {
    Diagonal(Vec<Scalar>),
    Element(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageJob {
    pub f: Terms,
    pub q: GradingSpec,
    pub lagrangian: Option<Vec<String>>,
}

pub enum Job {
    Family(FamilySpec),
    Pair(PairJob),
    Search(SearchJob),
}

/// A pair job with every expression parsed; building the data may still
/// fail, which is a certification outcome rather than an input error.
pub struct ParsedPair {
    pub description: String,
    pub algebra: Arc<LieAlgebra>,
    pub first: ParsedStage,
    pub second: ParsedStage,
    pub m0: Option<Subspace>,
}

pub struct ParsedStage {
    pub f: Element,
    pub grading: Grading,
    pub lagrangian: Option<Subspace>,
}

pub fn read_job(path: &Path) -> Result<(Job, PathBuf)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: JobFile = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let job = match (file.family, file.pair, file.search) {
        (Some(f), None, None) => Job::Family(f),
        (None, Some(p), None) => Job::Pair(p),
        (None, None, Some(s)) => Job::Search(s),
        _ => bail!("a job file needs exactly one of [family], [pair] or [search]"),
    };
    Ok((job, base))
}

fn load_algebra(src: &AlgebraSource, base: &Path) -> Result<Arc<LieAlgebra>> {
    match (src.kind, src.rank, &src.file) {
        (Some(kind), Some(rank), None) if kind != Kind::Generic => Ok(classical(kind, rank)?),
        (None, None, Some(file)) => {
            let path = base.join(file);
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            Ok(Arc::new(LieAlgebra::load_structure_constants(&text)?))
        }
        _ => bail!("[pair.algebra] needs either `kind` (A, B or C) with `rank`, or `file`"),
    }
}

fn span(g: &LieAlgebra, exprs: &[String]) -> Result<Subspace> {
    let vecs = exprs
        .iter()
        .map(|e| parse_element(g, e).map(|x| x.0).with_context(|| format!("in `{e}`")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Subspace::span(g.dim(), vecs)?)
}

fn scalar(s: &Scalar) -> Result<Ratio> {
    match s {
        Scalar::Int(v) => Ok(Ratio::from_integer((*v).into())),
        Scalar::Text(t) => parse_ratio(t).ok_or_else(|| anyhow!("`{t}` is not a rational number")),
    }
}

fn parse_stage(g: &LieAlgebra, stage: &StageJob, which: &str) -> Result<ParsedStage> {
    let terms: Vec<&str> = match &stage.f {
        Terms::One(t) => vec![t.as_str()],
        Terms::Many(ts) => ts.iter().map(String::as_str).collect(),
    };
    let joined = if terms.is_empty() {
        None
    } else {
        Some(terms.iter().map(|t| format!("({t})")).collect::<Vec<_>>().join(" + "))
    };
    let f = match joined {
        Some(text) => parse_element(g, &text).with_context(|| format!("[pair.{which}] f"))?,
        None => g.zero(),
    };
    let q = match &stage.q {
        GradingSpec::Diagonal(entries) => {
            GradingElement::Diagonal(entries.iter().map(scalar).collect::<Result<Vec<_>>>()?)
        }
        GradingSpec::Element(text) => {
            GradingElement::Inner(parse_element(g, text).with_context(|| format!("[pair.{which}] q"))?)
        }
    };
    let grading = Grading::from_semisimple(g, q).with_context(|| format!("[pair.{which}] q"))?;
    let lagrangian = stage
        .lagrangian
        .as_ref()
        .map(|l| span(g, l).with_context(|| format!("[pair.{which}] lagrangian")))
        .transpose()?;
    Ok(ParsedStage { f, grading, lagrangian })
}

pub fn parse_pair(job: &PairJob, base: &Path) -> Result<ParsedPair> {
    let algebra = load_algebra(&job.algebra, base)?;
    let first = parse_stage(&algebra, &job.first, "first")?;
    let second = parse_stage(&algebra, &job.second, "second")?;
    let m0 = job.m0.as_ref().map(|l| span(&algebra, l).context("[pair] m0")).transpose()?;
    Ok(ParsedPair {
        description: job.description.clone().unwrap_or_else(|| format!("custom pair in {}", algebra.name())),
        algebra,
        first,
        second,
        m0,
    })
}

pub fn stage_datum(g: &Arc<LieAlgebra>, stage: ParsedStage) -> Result<NilpotentDatum> {
    Ok(build_datum(g.clone(), stage.f, stage.grading, stage.lagrangian)?)
}

impl ParsedPair {
    pub fn build(self) -> Result<StagePair> {
        let d1 = stage_datum(&self.algebra, self.first).context("first datum")?;
        let d2 = stage_datum(&self.algebra, self.second).context("second datum")?;
        Ok(StagePair::new(self.description, d1, d2, self.m0)?)
    }
}
