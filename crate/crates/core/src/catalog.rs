//! Built-in families of stage pairs, hook enumeration and a brute-force
//! search over type A pyramids.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{frac, Ratio, Subspace};
use crate::expr::{parse_element, ExprError};
use crate::gradings::{is_good_for, GradingError, Partition, Pyramid};
use crate::liecore::{Kind, LieAlgebra, LieError};
use crate::stagecert::{certify, Certificate, StageError, StagePair, Status};
use crate::triples::{build_datum, check_lagrangian, NilpotentDatum, TripleError};

pub const HOOK_BOUND: usize = 6;
pub const SEARCH_BOUND: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Stage(#[from] StageError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

type AlgebraCache = Mutex<HashMap<(Kind, usize), Arc<LieAlgebra>>>;

/// Shared read-only classical algebras.
pub fn classical(kind: Kind, rank: usize) -> Result<Arc<LieAlgebra>, LieError> {
    static CACHE: OnceLock<AlgebraCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(g) = cache.lock().expect("cache poisoned").get(&(kind, rank)) {
        return Ok(g.clone());
    }
    let g = Arc::new(LieAlgebra::classical(kind, rank)?);
    Ok(cache
        .lock()
        .expect("cache poisoned")
        .entry((kind, rank))
        .or_insert(g)
        .clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyTag {
    #[serde(rename = "hookA")]
    HookA,
    #[serde(rename = "sl4_min_rect")]
    Sl4MinRect,
    #[serde(rename = "B_subreg_reg")]
    BSubregReg,
    #[serde(rename = "C_small_reg")]
    CSmallReg,
}

impl FamilyTag {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "hookA" => Some(FamilyTag::HookA),
            "sl4_min_rect" => Some(FamilyTag::Sl4MinRect),
            "B_subreg_reg" => Some(FamilyTag::BSubregReg),
            "C_small_reg" => Some(FamilyTag::CSmallReg),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyTag::HookA => "hookA",
            FamilyTag::Sl4MinRect => "sl4_min_rect",
            FamilyTag::BSubregReg => "B_subreg_reg",
            FamilyTag::CSmallReg => "C_small_reg",
        })
    }
}

/// A built-in family with its parameters. Overrides are element expressions
/// spanning the subspace; they are validated, never trusted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub family: Option<FamilyTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l2: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lagrangian1: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lagrangian2: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m0: Option<Vec<String>>,
}

impl FamilySpec {
    pub fn hook(n: usize, l1: usize, l2: usize) -> Self {
        FamilySpec {
            family: Some(FamilyTag::HookA),
            n: Some(n),
            l1: Some(l1),
            l2: Some(l2),
            ..Default::default()
        }
    }

    pub fn sl4() -> Self {
        FamilySpec {
            family: Some(FamilyTag::Sl4MinRect),
            ..Default::default()
        }
    }

    pub fn type_b(r: usize) -> Self {
        FamilySpec {
            family: Some(FamilyTag::BSubregReg),
            r: Some(r),
            ..Default::default()
        }
    }

    pub fn type_c(r: usize) -> Self {
        FamilySpec {
            family: Some(FamilyTag::CSmallReg),
            r: Some(r),
            ..Default::default()
        }
    }

    fn need(&self, name: &str, v: Option<usize>) -> Result<usize, CatalogError> {
        v.ok_or_else(|| CatalogError::InvalidParameters(format!("missing `{name}`")))
    }

    /// Checks the parameter ranges and returns a short description.
    pub fn validate(&self) -> Result<String, CatalogError> {
        let family = self
            .family
            .ok_or_else(|| CatalogError::InvalidParameters("missing `family`".into()))?;
        let bad = |msg: String| CatalogError::InvalidParameters(msg);
        let unused = |names: &[(&str, Option<usize>)]| -> Result<(), CatalogError> {
            match names.iter().find(|(_, v)| v.is_some()) {
                Some((name, _)) => Err(bad(format!("`{name}` does not apply to {family}"))),
                None => Ok(()),
            }
        };
        match family {
            FamilyTag::HookA => {
                unused(&[("r", self.r)])?;
                let (n, l1, l2) = (
                    self.need("n", self.n)?,
                    self.need("l1", self.l1)?,
                    self.need("l2", self.l2)?,
                );
                if !(1 <= l1 && l1 < l2 && l2 <= n) {
                    return Err(bad(format!("hookA needs 1 <= l1 < l2 <= n, got n={n}, l1={l1}, l2={l2}")));
                }
                Ok(format!("hookA(n={n}, l1={l1}, l2={l2})"))
            }
            FamilyTag::Sl4MinRect => {
                unused(&[("n", self.n), ("l1", self.l1), ("l2", self.l2), ("r", self.r)])?;
                Ok("sl4_min_rect".into())
            }
            FamilyTag::BSubregReg | FamilyTag::CSmallReg => {
                unused(&[("n", self.n), ("l1", self.l1), ("l2", self.l2)])?;
                let r = self.need("r", self.r)?;
                let min = if family == FamilyTag::BSubregReg { 2 } else { 3 };
                if r < min {
                    return Err(bad(format!("{family} needs r >= {min}, got r={r}")));
                }
                Ok(format!("{family}(r={r})"))
            }
        }
    }
}

fn span_of_exprs(g: &LieAlgebra, exprs: &[String]) -> Result<Subspace, CatalogError> {
    let vecs = exprs
        .iter()
        .map(|e| parse_element(g, e).map(|x| x.0))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subspace::span(g.dim(), vecs).map_err(LieError::from)?)
}

fn datum_from_pyramid(
    g: &Arc<LieAlgebra>,
    pyramid: &Pyramid,
    lagrangian: Option<Subspace>,
) -> Result<NilpotentDatum, CatalogError> {
    let (f, grading) = pyramid.to_datum(g)?;
    Ok(build_datum(g.clone(), f, grading, lagrangian)?)
}

/// Builds the stage pair of a family.
pub fn instantiate(spec: &FamilySpec) -> Result<StagePair, CatalogError> {
    let description = spec.validate()?;
    let (g, first, second) = match spec.family.expect("validated") {
        FamilyTag::HookA => {
            let n = spec.n.expect("validated");
            (
                classical(Kind::A, n - 1)?,
                Pyramid::hook(n, spec.l1.expect("validated"))?,
                Pyramid::hook(n, spec.l2.expect("validated"))?,
            )
        }
        FamilyTag::Sl4MinRect => {
            let g = classical(Kind::A, 3)?;
            let first = Pyramid::type_a(vec![vec![1, 2], vec![3], vec![4]], half_columns(&[1, -1, 0, 0]))?;
            let second = Pyramid::type_a(vec![vec![1, 2], vec![3, 4]], half_columns(&[1, -1, 1, -1]))?;
            (g, first, second)
        }
        FamilyTag::BSubregReg => {
            let r = spec.r.expect("validated");
            (
                classical(Kind::B, r)?,
                Pyramid::orthogonal_subregular(r),
                Pyramid::orthogonal_regular(r),
            )
        }
        FamilyTag::CSmallReg => {
            let r = spec.r.expect("validated");
            (
                classical(Kind::C, r)?,
                Pyramid::symplectic_overminimal(r),
                Pyramid::symplectic_regular(r),
            )
        }
    };
    let mut l1 = spec.lagrangian1.as_ref().map(|l| span_of_exprs(&g, l)).transpose()?;
    if l1.is_none() && spec.family == Some(FamilyTag::Sl4MinRect) {
        l1 = Some(g.span_of_labels(&["E[1,4]", "E[3,2]"])?);
    }
    let l2 = spec.lagrangian2.as_ref().map(|l| span_of_exprs(&g, l)).transpose()?;
    let m0 = spec.m0.as_ref().map(|l| span_of_exprs(&g, l)).transpose()?;
    let d1 = datum_from_pyramid(&g, &first, l1)?;
    let d2 = datum_from_pyramid(&g, &second, l2)?;
    Ok(StagePair::new(description, d1, d2, m0)?)
}

/// Columns `c_b = q_b / 2` for boxes `1..=n`.
fn half_columns(q: &[i64]) -> BTreeMap<i64, Ratio> {
    q.iter()
        .enumerate()
        .map(|(i, &x)| (i as i64 + 1, frac(x, 2)))
        .collect()
}

/// All hook pairs `1 <= l1 < l2 <= n`.
pub fn enumerate_hook_pairs(n: usize) -> Result<Vec<FamilySpec>, CatalogError> {
    if !(2..=HOOK_BOUND).contains(&n) {
        return Err(CatalogError::BoundExceeded(format!(
            "hook enumeration needs 2 <= n <= {HOOK_BOUND}, got {n}"
        )));
    }
    let mut out = Vec::new();
    for l1 in 1..n {
        for l2 in l1 + 1..=n {
            out.push(FamilySpec::hook(n, l1, l2));
        }
    }
    Ok(out)
}

/// Every built-in family at its default parameters.
pub fn default_catalog() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for n in 2..=HOOK_BOUND {
        out.extend(enumerate_hook_pairs(n).expect("within bound"));
    }
    out.push(FamilySpec::sl4());
    out.extend((2..=4).map(FamilySpec::type_b));
    out.extend((3..=4).map(FamilySpec::type_c));
    out
}

/// Reversed hook pair `hook(n, l1) -> hook(n, l2)` with `l1 > l2`, a
/// negative control.
pub fn reversed_hook(n: usize, l1: usize, l2: usize) -> Result<StagePair, CatalogError> {
    let g = classical(Kind::A, n - 1)?;
    let d1 = datum_from_pyramid(&g, &Pyramid::hook(n, l1)?, None)?;
    let d2 = datum_from_pyramid(&g, &Pyramid::hook(n, l2)?, None)?;
    Ok(StagePair::new(format!("reversed hookA(n={n}, l1={l1}, l2={l2})"), d1, d2, None)?)
}

/// Regular to minimal in `sl3`, a negative control.
pub fn sl3_regular_minimal() -> Result<StagePair, CatalogError> {
    let mut pair = reversed_hook(3, 3, 2)?;
    pair.description = "sl3 regular -> minimal".into();
    Ok(pair)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    /// Number of skipped checks over all pairs.
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub pairs: Vec<Certificate>,
    pub summary: Summary,
}

impl Report {
    pub fn new(pairs: Vec<Certificate>) -> Self {
        let mut summary = Summary::default();
        for c in &pairs {
            match c.verdict {
                Status::Pass => summary.pass += 1,
                _ => summary.fail += 1,
            }
            summary.skipped += c.checks.iter().filter(|k| k.status == Status::Skipped).count();
        }
        Report { pairs, summary }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    /// One line per pair with its verdict and first failing check.
    pub fn render_text(&self) -> String {
        let width = self.pairs.iter().map(|c| c.pair.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.pairs {
            out.push_str(&format!("{:width$}  {}", c.pair, c.verdict));
            if let Some(bad) = c.first_failure() {
                out.push_str(&format!("  {}", bad.name));
                if let Some(w) = &bad.witness {
                    out.push_str(&format!(": {w}"));
                }
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "pass: {}, fail: {}, skipped checks: {}\n",
            self.summary.pass, self.summary.fail, self.summary.skipped
        ));
        out
    }
}

fn certify_spec(spec: &FamilySpec) -> Certificate {
    match instantiate(spec) {
        Ok(pair) => certify(&pair),
        Err(e) => Certificate::construction_failure(
            spec.validate().unwrap_or_else(|_| format!("{spec:?}")),
            e.to_string(),
        ),
    }
}

/// Certifies the given family instances concurrently, keeping their order.
pub fn run_specs(specs: &[FamilySpec]) -> Report {
    Report::new(specs.par_iter().map(certify_spec).collect())
}

pub fn run_catalog() -> Report {
    run_specs(&default_catalog())
}

/// A type A pyramid found by the search, with its datum.
#[derive(Debug, Clone)]
pub struct SearchDatum {
    pub pyramid: Pyramid,
    pub datum: NilpotentDatum,
}

impl SearchDatum {
    pub fn describe(&self) -> String {
        let cols: Vec<String> = self.pyramid.columns().values().map(|c| c.to_string()).collect();
        format!("{}[{}]", self.pyramid.partition(), cols.join(","))
    }
}

/// Rows of a partition labelled consecutively, longest row first; each row
/// lists its boxes right to left.
fn labelled_rows(p: &Partition) -> Vec<Vec<i64>> {
    let mut next = 1;
    p.parts()
        .iter()
        .map(|&len| {
            let row: Vec<i64> = (next..next + len as i64).collect();
            next += len as i64;
            row
        })
        .collect()
}

/// Left ends (doubled) of each row. The longest row is centred at 0 and
/// every later row sits inside the one before it, shifted by a multiple of
/// 1/2. Rows of equal length then coincide.
fn nested_placements(parts: &[usize], bound: usize) -> Vec<Vec<i64>> {
    let first = -(parts[0] as i64 - 1);
    if first.abs() > 2 * bound as i64 {
        return Vec::new();
    }
    let mut out = vec![vec![first]];
    for k in 1..parts.len() {
        let mut next = Vec::new();
        for prefix in &out {
            let below_left = prefix[k - 1];
            let below_right = below_left + 2 * (parts[k - 1] as i64 - 1);
            let width = 2 * (parts[k] as i64 - 1);
            for s in below_left..=below_right - width {
                let mut p = prefix.clone();
                p.push(s);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Good type A pyramids of `sl_n` with every column in `[-bound, bound]`,
/// in a fixed order: partitions in reverse lexicographic order, then doubled
/// column vectors lexicographically.
pub fn search_data(n: usize, bound: usize) -> Result<Vec<SearchDatum>, CatalogError> {
    if !(2..=SEARCH_BOUND).contains(&n) {
        return Err(CatalogError::BoundExceeded(format!(
            "search needs 2 <= n <= {SEARCH_BOUND}, got {n}"
        )));
    }
    let g = classical(Kind::A, n - 1)?;
    let mut candidates = Vec::new();
    for (rank, p) in Partition::all(n).into_iter().enumerate() {
        let rows = labelled_rows(&p);
        for lefts in nested_placements(p.parts(), bound) {
            let mut doubled = BTreeMap::new();
            for (row, left) in rows.iter().zip(&lefts) {
                // the last box of a row is its leftmost
                for (k, &b) in row.iter().rev().enumerate() {
                    doubled.insert(b, left + 2 * k as i64);
                }
            }
            if doubled.values().any(|c| c.unsigned_abs() > 2 * bound as u64) {
                continue;
            }
            let key: Vec<i64> = doubled.values().copied().collect();
            let columns = doubled.iter().map(|(&b, &c)| (b, frac(c, 2))).collect();
            candidates.push((rank, key, Pyramid::type_a(rows.clone(), columns)?));
        }
    }
    candidates.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let found: Vec<Option<SearchDatum>> = candidates
        .into_par_iter()
        .map(|(_, _, pyramid)| -> Result<Option<SearchDatum>, CatalogError> {
            let (f, grading) = match pyramid.to_datum(&g) {
                Ok(x) => x,
                Err(GradingError::GoodnessFailed(_)) => return Ok(None),
                Err(e) => return Err(e.into()),
            };
            debug_assert!(is_good_for(&g, &grading, &f)?.is_none());
            let datum = build_datum(g.clone(), f, grading, None)?;
            Ok(Some(SearchDatum { pyramid, datum }))
        })
        .collect::<Result<_, _>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Pair of search data. When the first grading is odd and `g¹_1 ∩ m2` is a
/// Lagrangian subspace, it replaces the default Lagrangian of the first
/// datum so that `m1 ⊆ m2` has a chance to hold.
pub fn search_pair(first: &SearchDatum, second: &SearchDatum) -> Result<StagePair, CatalogError> {
    let g = &first.datum.algebra;
    let mut d1 = first.datum.clone();
    let g1 = d1.grading.piece(1);
    if !g1.is_zero() {
        let adapted = g1.intersect(&second.datum.m).map_err(LieError::from)?;
        if adapted != d1.lagrangian && check_lagrangian(g, &d1.grading, &d1.f, &adapted).is_ok() {
            d1 = build_datum(g.clone(), d1.f.clone(), d1.grading.clone(), Some(adapted))?;
        }
    }
    Ok(StagePair::new(
        format!("{} -> {}", first.describe(), second.describe()),
        d1,
        second.datum.clone(),
        None,
    )?)
}

/// Certifies every ordered pair of distinct search data.
pub fn search_sl_n(n: usize, bound: usize) -> Result<Report, CatalogError> {
    let data = search_data(n, bound)?;
    let mut index = Vec::new();
    for i in 0..data.len() {
        for j in 0..data.len() {
            if i != j {
                index.push((i, j));
            }
        }
    }
    let certs = index
        .into_par_iter()
        .map(|(i, j)| match search_pair(&data[i], &data[j]) {
            Ok(pair) => certify(&pair),
            Err(e) => Certificate::construction_failure(
                format!("{} -> {}", data[i].describe(), data[j].describe()),
                e.to_string(),
            ),
        })
        .collect();
    Ok(Report::new(certs))
}

/// The datum of a single hook pyramid.
pub fn hook_datum(n: usize, l: usize) -> Result<NilpotentDatum, CatalogError> {
    if n < 2 || !(1..=n).contains(&l) {
        return Err(CatalogError::InvalidParameters(format!(
            "hook needs 1 <= l <= n and n >= 2, got n={n}, l={l}"
        )));
    }
    let g = classical(Kind::A, n - 1)?;
    datum_from_pyramid(&g, &Pyramid::hook(n, l)?, None)
}
