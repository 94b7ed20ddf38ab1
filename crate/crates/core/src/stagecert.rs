//! Certification of reduction by stages for a pair of nilpotent data.
//!
//! Linear forms are represented inside `g` through the invariant form, so a
//! condition such as `χ(m) = 0` is checked as `(f | y) = 0` on a basis of `m`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{is_direct_sum, pairing_rank, vector, LinAlgError, Matrix, Ratio, Subspace};
use crate::gradings::Grading;
use crate::liecore::{Element, LieAlgebra, LieError};
use crate::triples::{complete_bigraded_triple, NilpotentDatum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StageError {
    #[error("the data live in different algebras")]
    AlgebraMismatch,
    #[error("grading elements do not commute")]
    NotCommuting,
    #[error("no bihomogeneous complement of m1 in m2")]
    NoHomogeneousComplement { witness: Witness },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Two nilpotent data over the same algebra.
#[derive(Debug, Clone)]
pub struct StagePair {
    pub description: String,
    pub first: NilpotentDatum,
    pub second: NilpotentDatum,
    /// A complement of `m1` in `m2` supplied by the caller. It is checked,
    /// not trusted.
    pub m0: Option<Subspace>,
}

impl StagePair {
    pub fn new(
        description: impl Into<String>,
        first: NilpotentDatum,
        second: NilpotentDatum,
        m0: Option<Subspace>,
    ) -> Result<Self, StageError> {
        if first.algebra.name() != second.algebra.name() || first.algebra.dim() != second.algebra.dim() {
            return Err(StageError::AlgebraMismatch);
        }
        let a = first.grading.ad_q();
        let b = second.grading.ad_q();
        if a.mul(b)? != b.mul(a)? {
            return Err(StageError::NotCommuting);
        }
        Ok(StagePair {
            description: description.into(),
            first,
            second,
            m0,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.first.algebra
    }

    /// `f0 = f2 - f1`
    pub fn f0(&self) -> Element {
        self.second.f.sub(&self.first.f)
    }

    /// Matrix of `ad(q0)` with `q0 = q2 - q1`.
    pub fn ad_q0(&self) -> Matrix {
        self.second
            .grading
            .ad_q()
            .sub(self.first.grading.ad_q())
            .expect("same algebra")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED")]
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Vector { element: String },
    Subspace { basis: Vec<String> },
    Dimensions { values: BTreeMap<String, usize> },
    Degrees { values: Vec<i64> },
    Note { text: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Vector { element } => write!(f, "{element}"),
            Witness::Subspace { basis } => write!(f, "span{{{}}}", basis.join(", ")),
            Witness::Dimensions { values } => {
                let parts: Vec<String> = values.iter().map(|(k, v)| format!("{k}={v}")).collect();
                write!(f, "{}", parts.join(" "))
            }
            Witness::Degrees { values } => {
                let parts: Vec<String> = values.iter().map(|d| d.to_string()).collect();
                write!(f, "degrees [{}]", parts.join(", "))
            }
            Witness::Note { text } => write!(f, "{text}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub pair: String,
    pub checks: Vec<Check>,
    pub verdict: Status,
}

impl Certificate {
    pub fn from_checks(pair: impl Into<String>, checks: Vec<Check>) -> Self {
        let verdict = if checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
        Certificate {
            pair: pair.into(),
            checks,
            verdict,
        }
    }

    /// Certificate for a pair that could not be built.
    pub fn construction_failure(pair: impl Into<String>, message: impl Into<String>) -> Self {
        Self::from_checks(
            pair,
            vec![Check {
                name: "construction".into(),
                status: Status::Fail,
                witness: Some(Witness::Note { text: message.into() }),
            }],
        )
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }
}

pub fn vector_witness(g: &LieAlgebra, v: &[Ratio]) -> Witness {
    Witness::Vector {
        element: g.describe(v),
    }
}

pub fn subspace_witness(g: &LieAlgebra, u: &Subspace) -> Witness {
    Witness::Subspace {
        basis: u.basis().iter().map(|v| g.describe(v)).collect(),
    }
}

fn dims(pairs: &[(&str, usize)]) -> Witness {
    Witness::Dimensions {
        values: pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    }
}

fn note(text: impl Into<String>) -> Witness {
    Witness::Note { text: text.into() }
}

fn pass(name: &str, witness: Option<Witness>) -> Check {
    Check {
        name: name.into(),
        status: Status::Pass,
        witness,
    }
}

fn fail(name: &str, witness: Witness) -> Check {
    Check {
        name: name.into(),
        status: Status::Fail,
        witness: Some(witness),
    }
}

fn skipped(name: &str, reason: &str) -> Check {
    Check {
        name: name.into(),
        status: Status::Skipped,
        witness: Some(note(reason)),
    }
}

pub type Bigraded = Vec<((i64, i64), Subspace)>;

/// Nonzero pieces `u ∩ g¹_i ∩ g²_j`, ordered by `(i, j)`.
pub fn bigraded_pieces(u: &Subspace, first: &Grading, second: &Grading) -> Result<Bigraded, LinAlgError> {
    let mut out = Vec::new();
    for (i, p) in first.pieces() {
        let a = u.intersect(p)?;
        if a.is_zero() {
            continue;
        }
        for (j, q) in second.pieces() {
            let b = a.intersect(q)?;
            if !b.is_zero() {
                out.push(((*i, *j), b));
            }
        }
    }
    Ok(out)
}

/// Greedy bihomogeneous complement of `inner` in `outer`: basis vectors of
/// the bigraded pieces of `outer` that are not already spanned, together
/// with the `(first, second)` degree of each chosen vector.
fn bihomogeneous_complement(
    inner: &Subspace,
    outer: &Subspace,
    first: &Grading,
    second: &Grading,
) -> Result<(Subspace, Vec<(i64, i64)>), LinAlgError> {
    let mut running = inner.clone();
    let mut chosen = Vec::new();
    let mut degrees = Vec::new();
    for (deg, piece) in bigraded_pieces(outer, first, second)? {
        for v in piece.basis() {
            if !running.contains(v) {
                running = running.sum(&Subspace::span(outer.ambient_dim(), vec![v.clone()])?)?;
                chosen.push(v.clone());
                degrees.push(deg);
            }
        }
    }
    Ok((Subspace::span(outer.ambient_dim(), chosen)?, degrees))
}

/// The bihomogeneous complement `m0` of `m1` in `m2`.
pub fn derive_m0(pair: &StagePair) -> Result<Subspace, StageError> {
    let g = pair.algebra();
    let (m1, m2) = (&pair.first.m, &pair.second.m);
    if let Some(w) = m2.first_outside(m1) {
        return Err(StageError::NoHomogeneousComplement {
            witness: vector_witness(g, w),
        });
    }
    let (m0, _) = bihomogeneous_complement(m1, m2, &pair.first.grading, &pair.second.grading)?;
    if !is_direct_sum(&[m1, &m0], m2)? {
        return Err(StageError::NoHomogeneousComplement {
            witness: dims(&[("m0", m0.dim()), ("m1", m1.dim()), ("m2", m2.dim())]),
        });
    }
    Ok(m0)
}

/// First basis vector of `u` moved outside `u` by one of the operators.
fn first_unstable(u: &Subspace, ops: &[Matrix]) -> Result<Option<Vec<Ratio>>, LinAlgError> {
    for op in ops {
        for b in u.basis() {
            let image = op.mul_vec(b)?;
            if !u.contains(&image) {
                return Ok(Some(image));
            }
        }
    }
    Ok(None)
}

/// Result of the hypothesis stage, with the complement it used.
pub struct Hypotheses {
    pub checks: Vec<Check>,
    pub m0: Option<Subspace>,
}

impl Hypotheses {
    pub fn all_pass(&self) -> bool {
        self.m0.is_some() && self.checks.iter().all(|c| c.status == Status::Pass)
    }
}

pub fn check_hypotheses(pair: &StagePair) -> Result<Hypotheses, StageError> {
    let g = pair.algebra();
    let (m1, m2) = (&pair.first.m, &pair.second.m);
    let (gr1, gr2) = (&pair.first.grading, &pair.second.grading);
    let mut checks = Vec::new();

    let m0 = match &pair.m0 {
        Some(supplied) => {
            if is_direct_sum(&[m1, supplied], m2)? {
                checks.push(pass("H1a", Some(dims(&[("m0", supplied.dim()), ("m1", m1.dim()), ("m2", m2.dim())]))));
                Some(supplied.clone())
            } else {
                let w = m2
                    .first_outside(m1)
                    .or_else(|| m2.first_outside(supplied))
                    .map(|v| vector_witness(g, v))
                    .unwrap_or_else(|| dims(&[("m0", supplied.dim()), ("m1", m1.dim()), ("m2", m2.dim())]));
                checks.push(fail("H1a", w));
                None
            }
        }
        None => match derive_m0(pair) {
            Ok(m0) => {
                checks.push(pass("H1a", Some(subspace_witness(g, &m0))));
                Some(m0)
            }
            Err(StageError::NoHomogeneousComplement { witness }) => {
                checks.push(fail("H1a", witness));
                None
            }
            Err(e) => return Err(e),
        },
    };

    match &m0 {
        Some(m0) => {
            let br = g.bracket_span(m0, m0)?;
            checks.push(match m0.first_outside(&br) {
                None => pass("H1b", None),
                Some(w) => fail("H1b", vector_witness(g, w)),
            });
        }
        None => checks.push(skipped("H1b", "no complement m0")),
    }

    let br = g.bracket_span(m2, m1)?;
    checks.push(if let Some(w) = m2.first_outside(m1) {
        fail("H1c", vector_witness(g, w))
    } else if let Some(w) = m1.first_outside(&br) {
        fail("H1c", vector_witness(g, w))
    } else {
        pass("H1c", None)
    });

    match &m0 {
        Some(m0) => {
            let mut ops = vec![gr1.ad_q().clone(), gr2.ad_q().clone()];
            for &c in g.cartan() {
                ops.push(g.ad_matrix_coords(&vector::unit(g.dim(), c)));
            }
            checks.push(match first_unstable(m0, &ops)? {
                None => pass("H1d", None),
                Some(w) => fail("H1d", vector_witness(g, &w)),
            });
        }
        None => checks.push(skipped("H1d", "no complement m0")),
    }

    let f0 = pair.f0();
    checks.push(if gr1.piece(0).contains(f0.coords()) {
        pass("H2a", None)
    } else {
        fail("H2a", vector_witness(g, f0.coords()))
    });

    match &m0 {
        Some(m0) => checks.push(match gr1.piece(0).first_outside(m0) {
            None => pass("H2b", None),
            Some(w) => fail("H2b", vector_witness(g, w)),
        }),
        None => checks.push(skipped("H2b", "no complement m0")),
    }

    let q0f1 = pair.ad_q0().mul_vec(pair.first.f.coords())?;
    checks.push(if vector::is_zero(&q0f1) {
        pass("H3", None)
    } else {
        fail("H3", vector_witness(g, &q0f1))
    });

    Ok(Hypotheses { checks, m0 })
}

const GEOMETRIC: [&str; 9] = ["G1", "G2", "G3", "G4.bracket", "G4.closure", "G5", "G6", "G7", "G8"];
const QUANTUM: [&str; 3] = ["Q1", "Q2", "Q3"];

/// First basis vector `y` of `u` with `(x | y) != 0`.
fn pairs_nonzero<'a>(g: &LieAlgebra, x: &[Ratio], u: &'a Subspace) -> Option<&'a Vec<Ratio>> {
    u.basis().iter().find(|y| !g.form_coords(x, y).is_zero())
}

pub fn check_geometric_consequences(pair: &StagePair, m0: &Subspace) -> Result<Vec<Check>, StageError> {
    let g = pair.algebra();
    let (d1, d2) = (&pair.first, &pair.second);
    let (m1, m2) = (&d1.m, &d2.m);
    let f0 = pair.f0();
    let mut checks = Vec::new();

    checks.push(match pairs_nonzero(g, f0.coords(), m1) {
        None => pass("G1", None),
        Some(w) => fail("G1", vector_witness(g, w)),
    });

    let m0f1 = g.bracket_with(m0, &d1.f)?;
    checks.push(if m0f1.is_zero() {
        pass("G2", None)
    } else {
        fail("G2", vector_witness(g, &m0f1.basis()[0]))
    });

    let e1 = match complete_bigraded_triple(g, &d1.f, &d1.grading, &d2.grading) {
        Ok((e1, h1)) => {
            let text = format!("e1 = {}, h1 = {}", g.describe(e1.coords()), g.describe(h1.coords()));
            checks.push(pass("G3", Some(note(text))));
            e1
        }
        Err(e) => {
            checks.push(fail("G3", note(e.to_string())));
            for name in &GEOMETRIC[3..] {
                checks.push(skipped(name, "no bigraded triple"));
            }
            return Ok(checks);
        }
    };

    let f0e1 = g.bracket_coords(f0.coords(), e1.coords());
    checks.push(if vector::is_zero(&f0e1) {
        pass("G4.bracket", None)
    } else {
        fail("G4.bracket", vector_witness(g, &f0e1))
    });
    checks.push(match (&d1.partition, &d2.partition) {
        (Some(p1), Some(p2)) => {
            let text = format!("{p1} <= {p2}");
            match p1.dominance_leq(p2) {
                Ok(true) => pass("G4.closure", Some(note(text))),
                Ok(false) => fail("G4.closure", note(format!("{p1} is not dominated by {p2}"))),
                Err(e) => fail("G4.closure", note(e.to_string())),
            }
        }
        _ => skipped("G4.closure", "no partition label for this algebra"),
    });

    let kernel = g.centralizer(&e1)?;
    let m0_perp = m0.orth_complement(g.form())?;
    let slice_part = kernel.intersect(&m0_perp)?;

    // {y in Ker ad(e1) : (y | z) = (f0 | z) for z in m0}
    let rows: Vec<Vec<Ratio>> = m0
        .basis()
        .iter()
        .map(|z| kernel.basis().iter().map(|k| g.form_coords(k, z)).collect())
        .collect();
    let rhs: Vec<Ratio> = m0.basis().iter().map(|z| g.form_coords(f0.coords(), z)).collect();
    let g5 = match Matrix::from_rows(rows, kernel.dim())?.solve_affine(&rhs) {
        Ok(sol) => {
            let lifted: Vec<Vec<Ratio>> = sol
                .homogeneous
                .basis()
                .iter()
                .map(|c| {
                    let mut v = vector::zeros(g.dim());
                    for (a, k) in c.iter().zip(kernel.basis()) {
                        vector::axpy(&mut v, a, k);
                    }
                    v
                })
                .collect();
            let fiber = Subspace::span(g.dim(), lifted)?;
            let d = dims(&[
                ("ker_e1", kernel.dim()),
                ("ker_e1_cap_m0_perp", slice_part.dim()),
                ("m0", m0.dim()),
            ]);
            if fiber == slice_part && kernel.dim() - slice_part.dim() == m0.dim() {
                pass("G5", Some(d))
            } else {
                fail("G5", d)
            }
        }
        Err(LinAlgError::Infeasible) => fail("G5", note("moment fiber is empty")),
        Err(e) => return Err(e.into()),
    };
    checks.push(g5);

    let rank = pairing_rank(&kernel, m0, g.form())?;
    checks.push(if rank == m0.dim() {
        pass("G6", Some(dims(&[("rank", rank), ("m0", m0.dim())])))
    } else {
        fail("G6", dims(&[("rank", rank), ("m0", m0.dim())]))
    });

    let m1f2 = g.bracket_with(m1, &d2.f)?;
    let m2_perp = m2.orth_complement(g.form())?;
    let direct = is_direct_sum(&[&m1f2, &slice_part], &m2_perp)?;
    let dim_identity = m1f2.dim() + slice_part.dim() == g.dim() - m2.dim();
    let d = dims(&[
        ("m1_f2", m1f2.dim()),
        ("ker_e1_cap_m0_perp", slice_part.dim()),
        ("m2_perp", m2_perp.dim()),
    ]);
    checks.push(if direct && dim_identity {
        pass("G7", Some(d))
    } else {
        let witness = m1f2
            .intersect(&slice_part)?
            .basis()
            .first()
            .map(|v| vector_witness(g, v))
            .unwrap_or(d);
        fail("G7", witness)
    });

    let d = dims(&[
        ("g", g.dim()),
        ("ker_e1", kernel.dim()),
        ("m1", m1.dim()),
        ("ker_e1_cap_m0_perp", slice_part.dim()),
        ("m0", m0.dim()),
    ]);
    checks.push(
        if g.dim() - kernel.dim() == 2 * m1.dim() && kernel.dim() == slice_part.dim() + m0.dim() {
            pass("G8", Some(d))
        } else {
            fail("G8", d)
        },
    );
    Ok(checks)
}

/// Bihomogeneous complement `b` of `m0` in `Ker ad(f1)` with the second
/// Kazhdan degree `2 - k` of each basis vector.
pub fn kazhdan_complement(pair: &StagePair, m0: &Subspace) -> Result<(Subspace, Vec<i64>), StageError> {
    let g = pair.algebra();
    let centralizer = g.centralizer(&pair.first.f)?;
    let (b, degrees) = bihomogeneous_complement(m0, &centralizer, &pair.first.grading, &pair.second.grading)?;
    let mut kazhdan: Vec<i64> = degrees.iter().map(|(_, k)| 2 - k).collect();
    kazhdan.sort_unstable();
    Ok((b, kazhdan))
}

pub fn check_quantum_consequences(pair: &StagePair, m0: &Subspace) -> Result<Vec<Check>, StageError> {
    let g = pair.algebra();
    let f1 = &pair.first.f;
    let mut checks = Vec::new();

    let br = g.bracket_span(&pair.first.m, m0)?;
    checks.push(match pairs_nonzero(g, f1.coords(), &br) {
        None => pass("Q1", None),
        Some(w) => fail("Q1", vector_witness(g, w)),
    });

    // [y, q0] = -ad(q0) y
    let ad_q0 = pair.ad_q0();
    let mut q2 = pass("Q2", None);
    for y in m0.basis() {
        let v = vector::scale(&ad_q0.mul_vec(y)?, &Ratio::from_integer((-1).into()));
        if !g.form_coords(f1.coords(), &v).is_zero() {
            q2 = fail("Q2", vector_witness(g, y));
            break;
        }
    }
    checks.push(q2);

    let (b, kazhdan) = kazhdan_complement(pair, m0)?;
    let centralizer_dim = g.centralizer(f1)?.dim();
    checks.push(if b.dim() + m0.dim() != centralizer_dim {
        fail(
            "Q3",
            dims(&[("b", b.dim()), ("m0", m0.dim()), ("ker_f1", centralizer_dim)]),
        )
    } else if kazhdan.iter().all(|&d| d >= 1) {
        pass("Q3", Some(Witness::Degrees { values: kazhdan }))
    } else {
        let bad = b
            .basis()
            .iter()
            .find(|v| pair.second.grading.degree_of(v).is_some_and(|k| 2 - k < 1))
            .map(|v| vector_witness(g, v))
            .unwrap_or(Witness::Degrees { values: kazhdan });
        fail("Q3", bad)
    });
    Ok(checks)
}

/// Runs every check in a fixed order. Consequences are skipped unless all
/// hypotheses pass.
pub fn certify(pair: &StagePair) -> Certificate {
    match certify_inner(pair) {
        Ok(checks) => Certificate::from_checks(pair.description.clone(), checks),
        Err(e) => Certificate::construction_failure(pair.description.clone(), e.to_string()),
    }
}

fn certify_inner(pair: &StagePair) -> Result<Vec<Check>, StageError> {
    let hyp = check_hypotheses(pair)?;
    let mut checks = hyp.checks.clone();
    match (&hyp.m0, hyp.all_pass()) {
        (Some(m0), true) => {
            checks.extend(check_geometric_consequences(pair, m0)?);
            checks.extend(check_quantum_consequences(pair, m0)?);
        }
        _ => {
            for name in GEOMETRIC.iter().chain(&QUANTUM) {
                checks.push(skipped(name, "hypotheses failed"));
            }
        }
    }
    Ok(checks)
}

/// Plain-text table of a certificate.
pub fn render_text(cert: &Certificate) -> String {
    let mut out = format!("pair: {}\n", cert.pair);
    let width = cert.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &cert.checks {
        out.push_str(&format!("  {:width$}  ", c.name));
        match &c.witness {
            Some(w) => out.push_str(&format!("{:7}  {w}", c.status.to_string())),
            None => out.push_str(&c.status.to_string()),
        }
        out.push('\n');
    }
    out.push_str(&format!("verdict: {}\n", cert.verdict));
    out
}
