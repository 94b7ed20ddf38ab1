//! Lie algebras given by structure constants and an invariant form.
//!
//! The classical algebras keep their defining matrix realization so that
//! elementary-matrix expressions can be turned into coordinates. For types B
//! and C the rows of the defining representation are indexed by the
//! symmetric set `-r..=r` (without 0 for type C), in increasing order.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{int, parse_ratio, vector, LinAlgError, Matrix, Ratio, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
    C,
    #[serde(rename = "generic")]
    Generic,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::A => "A",
            Kind::B => "B",
            Kind::C => "C",
            Kind::Generic => "generic",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("rank {rank} is below the minimum {min} for type {kind}")]
    RankTooSmall { kind: Kind, rank: usize, min: usize },
    #[error("cannot construct a classical algebra of generic kind")]
    NotClassical,
    #[error("element has {actual} coordinates, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("matrix does not lie in the algebra")]
    NotInAlgebra,
    #[error("algebra has no matrix realization")]
    NoRealization,
    #[error("unknown basis label or index `{0}`")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structure constants are not antisymmetric at ({0}, {1})")]
    AntisymmetryViolation(usize, usize),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),
    #[error("form is not invariant on basis triple ({0}, {1}, {2})")]
    FormNotInvariant(usize, usize, usize),
    #[error("form is degenerate")]
    FormDegenerate,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Coordinates of an element in the basis of some algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element(pub Vec<Ratio>);

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element(vector::zeros(dim))
    }

    pub fn coords(&self) -> &[Ratio] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.0)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element(vector::add(&self.0, &other.0))
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element(vector::sub(&self.0, &other.0))
    }

    pub fn scale(&self, c: &Ratio) -> Element {
        Element(vector::scale(&self.0, c))
    }
}

type Sparse = Vec<(usize, Ratio)>;
type SparseMatrix = Vec<(usize, usize, Ratio)>;

/// Faithful matrix realization of a classical algebra.
#[derive(Debug, Clone)]
pub struct Realization {
    size: usize,
    positions: Vec<i64>,
    basis: Vec<SparseMatrix>,
    pivots: Vec<(usize, usize)>,
    pivot_inverse: Matrix,
}

impl Realization {
    fn new(positions: Vec<i64>, basis: Vec<SparseMatrix>) -> Self {
        let size = positions.len();
        let rows: Vec<Vec<Ratio>> = basis
            .iter()
            .map(|b| {
                let mut flat = vector::zeros(size * size);
                for (r, c, x) in b {
                    flat[r * size + c] = x.clone();
                }
                flat
            })
            .collect();
        let flat = Matrix::from_rows(rows, size * size).expect("flattened basis");
        let (_, pivot_cols) = flat.rref();
        assert_eq!(pivot_cols.len(), basis.len(), "realization basis is dependent");
        let mut square = Matrix::zeros(basis.len(), basis.len());
        for i in 0..basis.len() {
            for (k, &p) in pivot_cols.iter().enumerate() {
                square.set(i, k, flat.get(i, p).clone());
            }
        }
        let pivot_inverse = square.inverse().expect("pivot block is invertible");
        Realization {
            size,
            pivots: pivot_cols.iter().map(|&p| (p / size, p % size)).collect(),
            positions,
            basis,
            pivot_inverse,
        }
    }

    /// Size of the defining representation.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Index labels of the rows, in order.
    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    pub fn row_of(&self, position: i64) -> Option<usize> {
        self.positions.iter().position(|&p| p == position)
    }

    pub fn basis_matrix(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.size, self.size);
        for (r, c, x) in &self.basis[i] {
            m.set(*r, *c, x.clone());
        }
        m
    }

    /// Elementary matrix `e_{i,j}` indexed by row positions.
    pub fn elementary(&self, i: i64, j: i64) -> Option<Matrix> {
        let (r, c) = (self.row_of(i)?, self.row_of(j)?);
        let mut m = Matrix::zeros(self.size, self.size);
        m.set(r, c, Ratio::one());
        Some(m)
    }

    /// Coordinates of `m`, or `None` when `m` is not in the span.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Ratio>> {
        if m.rows() != self.size || m.cols() != self.size {
            return None;
        }
        let w: Vec<Ratio> = self.pivots.iter().map(|&(r, c)| m.get(r, c).clone()).collect();
        let coords = self.pivot_inverse.transpose().mul_vec(&w).ok()?;
        let rebuilt = self.to_matrix(&coords);
        (rebuilt == *m).then_some(coords)
    }

    pub fn to_matrix(&self, coords: &[Ratio]) -> Matrix {
        let mut m = Matrix::zeros(self.size, self.size);
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, col, x) in b {
                let v = m.get(*r, *col) + c * x;
                m.set(*r, *col, v);
            }
        }
        m
    }
}

/// Finite-dimensional Lie algebra with a symmetric invariant form.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    name: String,
    kind: Kind,
    rank: Option<usize>,
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    structure: Vec<Sparse>,
    form: Matrix,
    cartan: Vec<usize>,
    realization: Option<Realization>,
}

fn eps_c(a: i64) -> i64 {
    if a < 0 {
        1
    } else {
        -1
    }
}

impl LieAlgebra {
    /// `sl_{rank+1}`, `so_{2 rank + 1}` or `sp_{2 rank}` in the defining
    /// representation, with the trace form.
    pub fn classical(kind: Kind, rank: usize) -> Result<Self, LieError> {
        let min = match kind {
            Kind::A => 1,
            Kind::B => 2,
            Kind::C => 3,
            Kind::Generic => return Err(LieError::NotClassical),
        };
        if rank < min {
            return Err(LieError::RankTooSmall { kind, rank, min });
        }
        let (name, positions, labels, basis, cartan) = match kind {
            Kind::A => type_a_basis(rank + 1),
            Kind::B => type_bc_basis(rank, false),
            Kind::C => type_bc_basis(rank, true),
            Kind::Generic => unreachable!(),
        };
        let realization = Realization::new(positions, basis);
        let dim = labels.len();
        let mut structure = vec![Vec::new(); dim * dim];
        let mats: Vec<Matrix> = (0..dim).map(|i| realization.basis_matrix(i)).collect();
        for i in 0..dim {
            for j in i + 1..dim {
                let comm = mats[i]
                    .mul(&mats[j])
                    .and_then(|a| a.sub(&mats[j].mul(&mats[i])?))?;
                let coords = realization
                    .coordinates(&comm)
                    .expect("classical algebra is closed under brackets");
                let sparse: Sparse = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                structure[j * dim + i] = sparse.iter().map(|(k, c)| (*k, -c.clone())).collect();
                structure[i * dim + j] = sparse;
            }
        }
        let mut form = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let t = mats[i].mul(&mats[j])?.trace();
                form.set(i, j, t.clone());
                form.set(j, i, t);
            }
        }
        Ok(Self::assemble(
            name,
            kind,
            Some(rank),
            labels,
            structure,
            form,
            cartan,
            Some(realization),
        ))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        name: String,
        kind: Kind,
        rank: Option<usize>,
        labels: Vec<String>,
        structure: Vec<Sparse>,
        form: Matrix,
        cartan: Vec<usize>,
        realization: Option<Realization>,
    ) -> Self {
        let label_index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        LieAlgebra {
            name,
            kind,
            rank,
            labels,
            label_index,
            structure,
            form,
            cartan,
            realization,
        }
    }

    /// Reads a structure-constant document and validates antisymmetry, the
    /// Jacobi identity and invariance and nondegeneracy of the form.
    pub fn load_structure_constants(text: &str) -> Result<Self, LieError> {
        let doc: CatalogDocument = toml::from_str(text).map_err(|e| LieError::Parse(e.to_string()))?;
        let dim = doc.dim;
        if doc.basis.len() != dim {
            return Err(LieError::Parse(format!(
                "basis lists {} labels for dimension {}",
                doc.basis.len(),
                dim
            )));
        }
        let mut seen_labels = HashMap::new();
        for (i, l) in doc.basis.iter().enumerate() {
            if seen_labels.insert(l.clone(), i).is_some() {
                return Err(LieError::Parse(format!("duplicate basis label `{l}`")));
            }
        }
        let coefficient = |text: &str| {
            parse_ratio(text).ok_or_else(|| LieError::Parse(format!("bad coefficient `{text}`")))
        };
        let check_index = |i: usize| {
            if i < dim {
                Ok(i)
            } else {
                Err(LieError::Parse(format!("index {i} out of range for dimension {dim}")))
            }
        };

        let mut given: HashMap<(usize, usize, usize), Ratio> = HashMap::new();
        for (i, j, k, c) in &doc.structure {
            let key = (check_index(*i)?, check_index(*j)?, check_index(*k)?);
            if given.insert(key, coefficient(c)?).is_some() {
                return Err(LieError::Parse(format!("duplicate structure entry {key:?}")));
            }
        }
        let pairs: std::collections::BTreeSet<(usize, usize)> =
            given.keys().map(|&(i, j, _)| (i, j)).collect();
        let mut dense: HashMap<(usize, usize, usize), Ratio> = HashMap::new();
        for &(i, j) in &pairs {
            for k in 0..dim {
                let c = given.get(&(i, j, k)).cloned().unwrap_or_else(Ratio::zero);
                if i == j {
                    if !c.is_zero() {
                        return Err(LieError::AntisymmetryViolation(i, j));
                    }
                    continue;
                }
                // a partner given in the other order must agree; a missing one is inferred
                if pairs.contains(&(j, i)) {
                    let other = given.get(&(j, i, k)).cloned().unwrap_or_else(Ratio::zero);
                    if other != -c.clone() {
                        return Err(LieError::AntisymmetryViolation(i.min(j), i.max(j)));
                    }
                }
                if !c.is_zero() {
                    dense.insert((j, i, k), -c.clone());
                    dense.insert((i, j, k), c);
                }
            }
        }
        let mut structure = vec![Vec::new(); dim * dim];
        let mut keys: Vec<_> = dense.keys().copied().collect();
        keys.sort_unstable();
        for (i, j, k) in keys {
            let c = dense[&(i, j, k)].clone();
            if !c.is_zero() {
                structure[i * dim + j].push((k, c));
            }
        }

        let mut form = Matrix::zeros(dim, dim);
        let mut form_given: HashMap<(usize, usize), Ratio> = HashMap::new();
        for (i, j, c) in &doc.form {
            let key = (check_index(*i)?, check_index(*j)?);
            if form_given.insert(key, coefficient(c)?).is_some() {
                return Err(LieError::Parse(format!("duplicate form entry {key:?}")));
            }
        }
        for (&(i, j), c) in &form_given {
            if let Some(other) = form_given.get(&(j, i)) {
                if other != c {
                    return Err(LieError::Parse(format!("form is not symmetric at ({i}, {j})")));
                }
            }
            form.set(i, j, c.clone());
            form.set(j, i, c.clone());
        }

        let cartan = doc
            .cartan
            .iter()
            .map(|&i| check_index(i))
            .collect::<Result<Vec<_>, _>>()?;
        let algebra = Self::assemble(
            doc.name,
            doc.kind,
            None,
            doc.basis,
            structure,
            form,
            cartan,
            None,
        );
        algebra.check_jacobi()?;
        algebra.check_form_invariance()?;
        algebra.check_form_nondegenerate()?;
        Ok(algebra)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> Option<usize> {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    /// Writes coordinates as a sum of labelled basis elements, e.g.
    /// `E[1,2] - 2*(E[1,0]-E[0,-1])`. The output parses back with
    /// [`crate::expr::parse_element`].
    pub fn describe(&self, v: &[Ratio]) -> String {
        let mut out = String::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = &self.labels[i];
            let atom = if label.contains(['+', '-', ' ', '*']) && !label.starts_with('(') {
                format!("({label})")
            } else {
                label.clone()
            };
            let negative = c < &Ratio::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if mag.is_one() {
                out.push_str(&atom);
            } else {
                out.push_str(&format!("{mag}*{atom}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    /// Basis indices of the stored Cartan elements.
    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element(vector::unit(self.dim(), i))
    }

    pub fn element(&self, coords: Vec<Ratio>) -> Result<Element, LieError> {
        self.check_len(&coords)?;
        Ok(Element(coords))
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.dim())
    }

    fn check_len(&self, v: &[Ratio]) -> Result<(), LieError> {
        if v.len() != self.dim() {
            return Err(LieError::DimensionMismatch {
                expected: self.dim(),
                actual: v.len(),
            });
        }
        Ok(())
    }

    /// Structure constants `[b_i, b_j] = sum_k c_k b_k` as a sparse list.
    pub fn structure_entry(&self, i: usize, j: usize) -> &[(usize, Ratio)] {
        &self.structure[i * self.dim() + j]
    }

    /// Bracket on raw coordinate vectors. Lengths are assumed to match.
    pub fn bracket_coords(&self, x: &[Ratio], y: &[Ratio]) -> Vec<Ratio> {
        let dim = self.dim();
        let mut out = vector::zeros(dim);
        let ys: Vec<(usize, &Ratio)> = y.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for &(j, yj) in &ys {
                let entry = &self.structure[i * dim + j];
                if entry.is_empty() {
                    continue;
                }
                let coeff = xi * yj;
                for (k, c) in entry {
                    out[*k] += &coeff * c;
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element, LieError> {
        self.check_len(&x.0)?;
        self.check_len(&y.0)?;
        Ok(Element(self.bracket_coords(&x.0, &y.0)))
    }

    /// Matrix of `ad(x)`: column `j` holds the coordinates of `[x, b_j]`.
    pub fn ad_matrix_coords(&self, x: &[Ratio]) -> Matrix {
        let dim = self.dim();
        let mut m = Matrix::zeros(dim, dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..dim {
                for (k, c) in &self.structure[i * dim + j] {
                    let v = m.get(*k, j) + xi * c;
                    m.set(*k, j, v);
                }
            }
        }
        m
    }

    pub fn ad_matrix(&self, x: &Element) -> Result<Matrix, LieError> {
        self.check_len(&x.0)?;
        Ok(self.ad_matrix_coords(&x.0))
    }

    pub fn form_coords(&self, x: &[Ratio], y: &[Ratio]) -> Ratio {
        let fy = self.form.mul_vec(y).expect("form matches dimension");
        vector::dot(x, &fy)
    }

    pub fn form_value(&self, x: &Element, y: &Element) -> Result<Ratio, LieError> {
        self.check_len(&x.0)?;
        self.check_len(&y.0)?;
        Ok(self.form_coords(&x.0, &y.0))
    }

    pub fn centralizer(&self, x: &Element) -> Result<Subspace, LieError> {
        Ok(self.ad_matrix(x)?.nullspace())
    }

    fn check_subspace(&self, u: &Subspace) -> Result<(), LieError> {
        if u.ambient_dim() != self.dim() {
            return Err(LinAlgError::AmbientMismatch {
                left: self.dim(),
                right: u.ambient_dim(),
            }
            .into());
        }
        Ok(())
    }

    /// `span{[x, y] : x in basis(u), y in basis(v)}`
    pub fn bracket_span(&self, u: &Subspace, v: &Subspace) -> Result<Subspace, LieError> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        let mut vectors = Vec::with_capacity(u.dim() * v.dim());
        for x in u.basis() {
            for y in v.basis() {
                let z = self.bracket_coords(x, y);
                if !vector::is_zero(&z) {
                    vectors.push(z);
                }
            }
        }
        Ok(Subspace::span(self.dim(), vectors)?)
    }

    /// `span{[x, y] : x in basis(u)}` for a single element `y`.
    pub fn bracket_with(&self, u: &Subspace, y: &Element) -> Result<Subspace, LieError> {
        self.check_subspace(u)?;
        self.check_len(&y.0)?;
        let vectors = u.basis().iter().map(|x| self.bracket_coords(x, &y.0)).collect();
        Ok(Subspace::span(self.dim(), vectors)?)
    }

    pub fn is_subalgebra(&self, u: &Subspace) -> Result<bool, LieError> {
        Ok(u.contains_subspace(&self.bracket_span(u, u)?))
    }

    /// `u ⊆ v` and `[v, u] ⊆ u`.
    pub fn is_ideal_in(&self, u: &Subspace, v: &Subspace) -> Result<bool, LieError> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        if !v.contains_subspace(u) {
            return Ok(false);
        }
        Ok(u.contains_subspace(&self.bracket_span(v, u)?))
    }

    pub fn span_of_labels(&self, labels: &[&str]) -> Result<Subspace, LieError> {
        let idx = labels
            .iter()
            .map(|l| self.index_of(l).ok_or_else(|| LieError::UnknownLabel(l.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Subspace::from_unit_vectors(self.dim(), idx))
    }

    pub fn element_from_matrix(&self, m: &Matrix) -> Result<Element, LieError> {
        let real = self.realization.as_ref().ok_or(LieError::NoRealization)?;
        real.coordinates(m).map(Element).ok_or(LieError::NotInAlgebra)
    }

    pub fn matrix_of(&self, x: &Element) -> Result<Matrix, LieError> {
        self.check_len(&x.0)?;
        let real = self.realization.as_ref().ok_or(LieError::NoRealization)?;
        Ok(real.to_matrix(&x.0))
    }

    /// Elementary matrix `e_{i,j}` of the defining representation, when it
    /// lies in the algebra.
    pub fn elementary(&self, i: i64, j: i64) -> Result<Element, LieError> {
        let real = self.realization.as_ref().ok_or(LieError::NoRealization)?;
        let m = real
            .elementary(i, j)
            .ok_or_else(|| LieError::UnknownLabel(format!("E[{i},{j}]")))?;
        self.element_from_matrix(&m)
    }

    /// Element given as a linear combination `sum c * e_{i,j}` of elementary
    /// matrices; only the sum needs to lie in the algebra.
    pub fn element_from_terms(&self, terms: &[(Ratio, i64, i64)]) -> Result<Element, LieError> {
        let real = self.realization.as_ref().ok_or(LieError::NoRealization)?;
        let mut m = Matrix::zeros(real.size(), real.size());
        for (c, i, j) in terms {
            let (r, col) = real
                .row_of(*i)
                .zip(real.row_of(*j))
                .ok_or_else(|| LieError::UnknownLabel(format!("E[{i},{j}]")))?;
            let v = m.get(r, col) + c;
            m.set(r, col, v);
        }
        self.element_from_matrix(&m)
    }

    /// Matrix of `ad(g)` on the algebra for a matrix `g` of the defining
    /// representation normalizing it (for example a non-traceless diagonal
    /// matrix).
    pub fn ad_of_matrix(&self, g: &Matrix) -> Result<Matrix, LieError> {
        let real = self.realization.as_ref().ok_or(LieError::NoRealization)?;
        let dim = self.dim();
        let mut columns = Vec::with_capacity(dim);
        for j in 0..dim {
            let b = real.basis_matrix(j);
            let comm = g.mul(&b)?.sub(&b.mul(g)?)?;
            columns.push(real.coordinates(&comm).ok_or(LieError::NotInAlgebra)?);
        }
        Ok(Matrix::from_columns(&columns, dim)?)
    }

    pub fn check_jacobi(&self) -> Result<(), LieError> {
        let dim = self.dim();
        for i in 0..dim {
            let bi = vector::unit(dim, i);
            for j in i + 1..dim {
                let bj = vector::unit(dim, j);
                let bij = self.bracket_coords(&bi, &bj);
                for k in j + 1..dim {
                    let bk = vector::unit(dim, k);
                    let a = self.bracket_coords(&bij, &bk);
                    let b = self.bracket_coords(&self.bracket_coords(&bj, &bk), &bi);
                    let c = self.bracket_coords(&self.bracket_coords(&bk, &bi), &bj);
                    if !vector::is_zero(&vector::add(&vector::add(&a, &b), &c)) {
                        return Err(LieError::JacobiViolation(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_form_invariance(&self) -> Result<(), LieError> {
        if !self.form.is_symmetric() {
            return Err(LinAlgError::Asymmetric.into());
        }
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let bij = &self.structure[i * dim + j];
                for k in 0..dim {
                    let left: Ratio = bij.iter().map(|(l, c)| c * self.form.get(*l, k)).sum();
                    let right: Ratio = self.structure[j * dim + k]
                        .iter()
                        .map(|(l, c)| c * self.form.get(i, *l))
                        .sum();
                    if left != right {
                        return Err(LieError::FormNotInvariant(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_form_nondegenerate(&self) -> Result<(), LieError> {
        if self.form.rank() != self.dim() {
            return Err(LieError::FormDegenerate);
        }
        Ok(())
    }
}

type Basis = (String, Vec<i64>, Vec<String>, Vec<SparseMatrix>, Vec<usize>);

fn type_a_basis(n: usize) -> Basis {
    let positions: Vec<i64> = (1..=n as i64).collect();
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                labels.push(format!("E[{},{}]", i + 1, j + 1));
                basis.push(vec![(i, j, Ratio::one())]);
            }
        }
    }
    let mut cartan = Vec::new();
    for k in 0..n - 1 {
        cartan.push(basis.len());
        labels.push(format!("H[{}]", k + 1));
        basis.push(vec![(k, k, Ratio::one()), (k + 1, k + 1, -Ratio::one())]);
    }
    (format!("sl{n}"), positions, labels, basis, cartan)
}

/// Unified B/C basis `X_{i,j} = e_{i,j} - eps(i) eps(j) e_{-j,-i}`, one
/// representative per pair with `i + j > 0`, plus for type C the elements
/// `e_{i,-i}`. Diagonal elements `X_{a,a}` (a > 0) come last and span the
/// Cartan subalgebra.
fn type_bc_basis(r: usize, symplectic: bool) -> Basis {
    let r = r as i64;
    let positions: Vec<i64> = (-r..=r).filter(|&a| !(symplectic && a == 0)).collect();
    let row = |a: i64| positions.iter().position(|&p| p == a).expect("position");
    let eps = |a: i64| if symplectic { eps_c(a) } else { 1 };
    let mut labels = Vec::new();
    let mut basis: Vec<SparseMatrix> = Vec::new();
    for &i in &positions {
        for &j in &positions {
            if i == j {
                continue;
            }
            if i + j > 0 {
                let sign = -eps(i) * eps(j);
                let op = if sign < 0 { '-' } else { '+' };
                labels.push(format!("E[{i},{j}]{op}E[{},{}]", -j, -i));
                basis.push(vec![(row(i), row(j), int(1)), (row(-j), row(-i), int(sign))]);
            } else if i + j == 0 && symplectic {
                labels.push(format!("E[{i},{j}]"));
                basis.push(vec![(row(i), row(j), int(1))]);
            }
        }
    }
    let mut cartan = Vec::new();
    for a in 1..=r {
        cartan.push(basis.len());
        labels.push(format!("E[{a},{a}]-E[{},{}]", -a, -a));
        basis.push(vec![(row(a), row(a), int(1)), (row(-a), row(-a), int(-1))]);
    }
    let name = if symplectic {
        format!("sp{}", 2 * r)
    } else {
        format!("so{}", 2 * r + 1)
    };
    (name, positions, labels, basis, cartan)
}

/// Matrix of the bilinear form preserved by the classical algebra: the
/// antidiagonal `K` for type B and `J` with `J_{a,-a} = +1` for `a < 0` and
/// `-1` for `a > 0` for type C.
pub fn preserved_form(kind: Kind, rank: usize) -> Option<Matrix> {
    let r = rank as i64;
    let (positions, symplectic): (Vec<i64>, bool) = match kind {
        Kind::B => ((-r..=r).collect(), false),
        Kind::C => ((-r..=r).filter(|&a| a != 0).collect(), true),
        _ => return None,
    };
    let n = positions.len();
    let mut m = Matrix::zeros(n, n);
    for (ra, &a) in positions.iter().enumerate() {
        let rb = positions.iter().position(|&p| p == -a).expect("mirror");
        let v = if symplectic { eps_c(a) } else { 1 };
        m.set(ra, rb, int(v));
    }
    Some(m)
}

/// On-disk structure-constant document.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogDocument {
    name: String,
    dim: usize,
    kind: Kind,
    basis: Vec<String>,
    #[serde(default)]
    structure: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    form: Vec<(usize, usize, String)>,
    #[serde(default)]
    cartan: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::frac;

    fn sl(n: usize) -> LieAlgebra {
        LieAlgebra::classical(Kind::A, n - 1).unwrap()
    }

    #[test]
    fn sl2_relations() {
        let g = sl(2);
        assert_eq!(g.dim(), 3);
        let e = g.elementary(1, 2).unwrap();
        let f = g.elementary(2, 1).unwrap();
        let h = g.bracket(&e, &f).unwrap();
        assert_eq!(h, g.basis_element(g.index_of("H[1]").unwrap()));
        assert_eq!(g.bracket(&h, &e).unwrap(), e.scale(&int(2)));
        assert_eq!(g.form_value(&e, &f).unwrap(), int(1));
        assert_eq!(g.form_value(&e, &e).unwrap(), int(0));
    }

    #[test]
    fn sl4_brackets() {
        let g = sl(4);
        let x = g.bracket(&g.elementary(1, 2).unwrap(), &g.elementary(2, 1).unwrap()).unwrap();
        let mut d = Matrix::zeros(4, 4);
        d.set(0, 0, int(1));
        d.set(1, 1, int(-1));
        assert_eq!(x, g.element_from_matrix(&d).unwrap());
        let z = g.bracket(&g.elementary(3, 4).unwrap(), &g.elementary(1, 4).unwrap()).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn centralizer_examples() {
        let g = sl(4);
        assert_eq!(g.centralizer(&g.zero()).unwrap(), Subspace::full(15));
        assert_eq!(g.centralizer(&g.elementary(2, 1).unwrap()).unwrap().dim(), 9);
        let h = sl(3);
        let f = h.elementary(2, 1).unwrap().add(&h.elementary(3, 2).unwrap());
        assert_eq!(h.centralizer(&f).unwrap().dim(), 2);
    }

    #[test]
    fn rank_minimums() {
        assert!(matches!(
            LieAlgebra::classical(Kind::A, 0),
            Err(LieError::RankTooSmall { .. })
        ));
        assert!(LieAlgebra::classical(Kind::B, 1).is_err());
        assert!(LieAlgebra::classical(Kind::C, 2).is_err());
        assert_eq!(LieAlgebra::classical(Kind::B, 2).unwrap().dim(), 10);
        assert_eq!(LieAlgebra::classical(Kind::C, 3).unwrap().dim(), 21);
    }

    #[test]
    fn bc_basis_preserves_form() {
        for (kind, rank) in [(Kind::B, 2), (Kind::B, 3), (Kind::C, 3), (Kind::C, 4)] {
            let g = LieAlgebra::classical(kind, rank).unwrap();
            let k = preserved_form(kind, rank).unwrap();
            let real = g.realization().unwrap();
            for i in 0..g.dim() {
                let x = real.basis_matrix(i);
                let lhs = x.transpose().mul(&k).unwrap();
                let rhs = k.mul(&x).unwrap();
                let mut sum = lhs.clone();
                for r in 0..sum.rows() {
                    for c in 0..sum.cols() {
                        sum.set(r, c, lhs.get(r, c) + rhs.get(r, c));
                    }
                }
                assert!(sum.is_zero(), "{} fails on {}", g.name(), g.label(i));
            }
        }
    }

    #[test]
    fn position_labels() {
        let c = LieAlgebra::classical(Kind::C, 3).unwrap();
        let f1 = c
            .element_from_terms(&[(int(1), 3, 2), (int(-1), -2, -3)])
            .unwrap();
        assert_eq!(f1, c.basis_element(c.index_of("E[3,2]-E[-2,-3]").unwrap()));
        assert!(c.index_of("E[1,-1]").is_some());
        assert!(c.elementary(3, 2).is_err());
        let b = LieAlgebra::classical(Kind::B, 2).unwrap();
        assert!(b.index_of("E[1,0]-E[0,-1]").is_some());
        assert!(b.index_of("E[1,-1]").is_none());
    }

    #[test]
    fn non_traceless_diagonal_acts() {
        let g = sl(3);
        let mut d = Matrix::zeros(3, 3);
        d.set(0, 0, int(2));
        let ad = g.ad_of_matrix(&d).unwrap();
        let e12 = g.index_of("E[1,2]").unwrap();
        assert_eq!(ad.get(e12, e12), &int(2));
        let half = g.ad_of_matrix(&Matrix::identity(3)).unwrap();
        assert!(half.is_zero());
        let _ = frac(1, 2);
    }

    const SL2_TABLE: &str = r#"
name = "sl2-hand"
dim = 3
kind = "generic"
basis = ["x", "y", "z"]
structure = [[0, 1, 2, "1"], [2, 0, 0, "2"], [2, 1, 1, "-2"]]
form = [[0, 1, "1"], [2, 2, "2"]]
cartan = [2]
"#;

    #[test]
    fn loader_matches_sl2() {
        let hand = LieAlgebra::load_structure_constants(SL2_TABLE).unwrap();
        let g = sl(2);
        // x -> E[1,2], y -> E[2,1], z -> H[1]
        let map = [
            g.index_of("E[1,2]").unwrap(),
            g.index_of("E[2,1]").unwrap(),
            g.index_of("H[1]").unwrap(),
        ];
        for i in 0..3 {
            for j in 0..3 {
                let mut mapped = vector::zeros(3);
                for (k, c) in hand.structure_entry(i, j) {
                    mapped[map[*k]] = c.clone();
                }
                let expected =
                    g.bracket_coords(&vector::unit(3, map[i]), &vector::unit(3, map[j]));
                assert_eq!(mapped, expected);
                assert_eq!(hand.form().get(i, j), g.form().get(map[i], map[j]));
            }
        }
    }

    #[test]
    fn loader_rejects_bad_tables() {
        let anti = SL2_TABLE.replace(
            "[2, 1, 1, \"-2\"]]",
            "[2, 1, 1, \"-2\"], [1, 0, 2, \"1\"]]",
        );
        assert!(matches!(
            LieAlgebra::load_structure_constants(&anti),
            Err(LieError::AntisymmetryViolation(..))
        ));
        let jacobi = r#"
name = "broken"
dim = 3
kind = "generic"
basis = ["a", "b", "c"]
structure = [[0, 1, 0, "1"], [1, 2, 1, "1"]]
form = [[0, 0, "1"], [1, 1, "1"], [2, 2, "1"]]
"#;
        assert!(matches!(
            LieAlgebra::load_structure_constants(jacobi),
            Err(LieError::JacobiViolation(..))
        ));
        let unknown = SL2_TABLE.replace("cartan", "torus");
        assert!(matches!(
            LieAlgebra::load_structure_constants(&unknown),
            Err(LieError::Parse(_))
        ));
        let degenerate = SL2_TABLE.replace("form = [[0, 1, \"1\"], [2, 2, \"2\"]]", "form = []");
        assert_eq!(
            LieAlgebra::load_structure_constants(&degenerate).unwrap_err(),
            LieError::FormDegenerate
        );
        let bad_form = SL2_TABLE.replace("[0, 1, \"1\"]", "[0, 1, \"2\"]");
        assert!(matches!(
            LieAlgebra::load_structure_constants(&bad_form),
            Err(LieError::FormNotInvariant(..))
        ));
    }

    #[test]
    fn subalgebra_and_ideal() {
        let g = sl(2);
        let e = g.span_of_labels(&["E[1,2]"]).unwrap();
        assert!(g.is_subalgebra(&e).unwrap());
        assert!(!g.is_ideal_in(&e, &Subspace::full(3)).unwrap());
    }
}
