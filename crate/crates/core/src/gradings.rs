//! Integer gradings from semisimple elements, good gradings, partitions and
//! pyramids.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{frac, infinity_norm_ceil, int, to_i64, vector, LinAlgError, Matrix, Ratio, Subspace};
use crate::liecore::{Element, Kind, LieAlgebra, LieError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("ad(q) has a non-integer eigenvalue{0}")]
    NonIntegerEigenvalue(String),
    #[error("ad(q) is not diagonalizable")]
    NotDiagonalizable,
    #[error("element is not homogeneous for the grading")]
    NotHomogeneous,
    #[error("partitions have different totals {left} and {right}")]
    TotalMismatch { left: usize, right: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("unsupported pyramid: {0}")]
    UnsupportedPyramid(String),
    #[error("pyramid grading is not good: {0}")]
    GoodnessFailed(String),
    #[error("diagonal grading element has {actual} entries, expected {expected}")]
    DiagonalLength { expected: usize, actual: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A semisimple element acting on the algebra through `ad`. Diagonal
/// matrices of the defining representation need not be traceless.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradingElement {
    Diagonal(Vec<Ratio>),
    Inner(Element),
}

impl GradingElement {
    pub fn ad_matrix(&self, g: &LieAlgebra) -> Result<Matrix, GradingError> {
        match self {
            GradingElement::Inner(x) => Ok(g.ad_matrix(x)?),
            GradingElement::Diagonal(d) => {
                let real = g.realization().ok_or(LieError::NoRealization)?;
                if d.len() != real.size() {
                    return Err(GradingError::DiagonalLength {
                        expected: real.size(),
                        actual: d.len(),
                    });
                }
                let mut m = Matrix::zeros(d.len(), d.len());
                for (i, x) in d.iter().enumerate() {
                    m.set(i, i, x.clone());
                }
                Ok(g.ad_of_matrix(&m)?)
            }
        }
    }

    /// Text form used in reports: the diagonal list or the coordinates.
    pub fn describe(&self) -> String {
        let list = |v: &[Ratio]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        match self {
            GradingElement::Diagonal(d) => format!("diag({})", list(d)),
            GradingElement::Inner(x) => format!("[{}]", list(x.coords())),
        }
    }
}

/// Eigenspace decomposition `g = ⊕ g_j` of `ad(q)`.
#[derive(Debug, Clone)]
pub struct Grading {
    q: GradingElement,
    ad_q: Matrix,
    pieces: BTreeMap<i64, Subspace>,
    dim: usize,
}

impl Grading {
    pub fn from_semisimple(g: &LieAlgebra, q: GradingElement) -> Result<Grading, GradingError> {
        let ad_q = q.ad_matrix(g)?;
        let pieces = eigenspaces(&ad_q)?;
        Ok(Grading {
            q,
            ad_q,
            pieces,
            dim: g.dim(),
        })
    }

    pub fn from_diagonal(g: &LieAlgebra, diag: &[i64]) -> Result<Grading, GradingError> {
        Self::from_semisimple(g, GradingElement::Diagonal(diag.iter().map(|&x| int(x)).collect()))
    }

    pub fn q(&self) -> &GradingElement {
        &self.q
    }

    pub fn ad_q(&self) -> &Matrix {
        &self.ad_q
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Occupied degrees with their pieces, in increasing degree.
    pub fn pieces(&self) -> &BTreeMap<i64, Subspace> {
        &self.pieces
    }

    pub fn piece(&self, j: i64) -> Subspace {
        self.pieces.get(&j).cloned().unwrap_or_else(|| Subspace::zero(self.dim))
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.pieces.iter().map(|(j, p)| (*j, p.dim())).collect()
    }

    /// `⊕_{i ≥ j} g_i`
    pub fn at_least(&self, j: i64) -> Subspace {
        Subspace::sum_all(self.dim, self.pieces.range(j..).map(|(_, p)| p))
            .expect("pieces share the ambient space")
    }

    pub fn is_even(&self) -> bool {
        self.pieces.keys().all(|j| j % 2 == 0)
    }

    /// Degree of a nonzero homogeneous vector.
    pub fn degree_of(&self, x: &[Ratio]) -> Option<i64> {
        if vector::is_zero(x) || x.len() != self.dim {
            return None;
        }
        self.pieces
            .iter()
            .find(|(_, p)| p.contains(x))
            .map(|(j, _)| *j)
    }

    /// Kazhdan degree `2 - j` of a homogeneous element of degree `j`.
    pub fn kazhdan_degree(&self, x: &Element) -> Result<i64, GradingError> {
        self.degree_of(x.coords())
            .map(|j| 2 - j)
            .ok_or(GradingError::NotHomogeneous)
    }

    /// Checks `[g_i, g_j] ⊆ g_{i+j}` on all occupied pairs, returning the
    /// first offending pair.
    pub fn check_compatibility(&self, g: &LieAlgebra) -> Result<Option<(i64, i64)>, GradingError> {
        for (i, pi) in &self.pieces {
            for (j, pj) in &self.pieces {
                let br = g.bracket_span(pi, pj)?;
                if !self.piece(i + j).contains_subspace(&br) {
                    return Ok(Some((*i, *j)));
                }
            }
        }
        Ok(None)
    }
}

fn eigenspaces(ad: &Matrix) -> Result<BTreeMap<i64, Subspace>, GradingError> {
    let n = ad.rows();
    let mut pieces: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    if ad.is_diagonal() {
        for i in 0..n {
            let value = ad.get(i, i);
            let j = to_i64(value).ok_or_else(|| GradingError::NonIntegerEigenvalue(format!(" {value}")))?;
            pieces.entry(j).or_default().push(i);
        }
        return Ok(pieces
            .into_iter()
            .map(|(j, idx)| (j, Subspace::from_unit_vectors(n, idx)))
            .collect());
    }
    let bound = to_i64(&Ratio::from_integer(infinity_norm_ceil(ad))).unwrap_or(i64::MAX / 4);
    let mut out = BTreeMap::new();
    let mut total = 0;
    for lambda in -bound..=bound {
        let shifted = ad.sub(&scalar(n, lambda))?;
        let kernel = shifted.nullspace();
        if !kernel.is_zero() {
            total += kernel.dim();
            out.insert(lambda, kernel);
        }
    }
    if total == n {
        return Ok(out);
    }
    // integer spectrum but a defect, or eigenvalues outside the integers
    let mut generalized = 0;
    for lambda in out.keys() {
        let shifted = ad.sub(&scalar(n, *lambda))?;
        let mut power = shifted.clone();
        for _ in 1..n {
            power = power.mul(&shifted)?;
        }
        generalized += power.nullspace().dim();
    }
    if generalized == n {
        Err(GradingError::NotDiagonalizable)
    } else {
        Err(GradingError::NonIntegerEigenvalue(String::new()))
    }
}

fn scalar(n: usize, lambda: i64) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, int(lambda));
    }
    m
}

/// Why a grading fails to be good for `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoodnessFailure {
    /// `f` is not in `g_{-2}`.
    NotInDegreeMinusTwo,
    /// `ad f: g_j -> g_{j-2}` kills the witness.
    NotInjective { degree: i64, witness: Vec<Ratio> },
    /// The witness in `g_{j-2}` is not in `[f, g_j]`.
    NotSurjective { degree: i64, witness: Vec<Ratio> },
}

impl fmt::Display for GoodnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoodnessFailure::NotInDegreeMinusTwo => write!(f, "f not in degree -2"),
            GoodnessFailure::NotInjective { degree, .. } => {
                write!(f, "ad(f) not injective on degree {degree}")
            }
            GoodnessFailure::NotSurjective { degree, .. } => {
                write!(f, "ad(f) not surjective from degree {degree}")
            }
        }
    }
}

/// Checks the good-grading axioms: injectivity of `ad f: g_j -> g_{j-2}`
/// for `j >= 1` first (ascending), then surjectivity for `j <= 1`.
pub fn is_good_for(g: &LieAlgebra, grading: &Grading, f: &Element) -> Result<Option<GoodnessFailure>, GradingError> {
    if !f.is_zero() && !grading.piece(-2).contains(f.coords()) {
        return Ok(Some(GoodnessFailure::NotInDegreeMinusTwo));
    }
    let ad_f = g.ad_matrix(f)?;
    for (&j, piece) in grading.pieces.range(1..) {
        let images: Vec<Vec<Ratio>> = piece
            .basis()
            .iter()
            .map(|b| ad_f.mul_vec(b))
            .collect::<Result<_, _>>()?;
        let m = Matrix::from_columns(&images, g.dim())?;
        let kernel = m.nullspace();
        if let Some(c) = kernel.basis().first() {
            let mut witness = vector::zeros(g.dim());
            for (coef, b) in c.iter().zip(piece.basis()) {
                vector::axpy(&mut witness, coef, b);
            }
            return Ok(Some(GoodnessFailure::NotInjective { degree: j, witness }));
        }
    }
    let lowest = grading.pieces.keys().next().copied().unwrap_or(0);
    for j in (lowest..=1).rev() {
        let target = grading.piece(j - 2);
        if target.is_zero() {
            continue;
        }
        let image = Subspace::span(
            g.dim(),
            grading
                .piece(j)
                .basis()
                .iter()
                .map(|b| ad_f.mul_vec(b))
                .collect::<Result<_, _>>()?,
        )?;
        if let Some(w) = image.first_outside(&target) {
            return Ok(Some(GoodnessFailure::NotSurjective {
                degree: j,
                witness: w.clone(),
            }));
        }
    }
    Ok(None)
}

/// `dim g - dim centralizer(f)`
pub fn orbit_dimension(g: &LieAlgebra, f: &Element) -> Result<usize, GradingError> {
    Ok(g.dim() - g.centralizer(f)?.dim())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts descending; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, GradingError> {
        if parts.contains(&0) {
            return Err(GradingError::InvalidPartition("zero part".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Dominance order by partial sums.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool, GradingError> {
        if self.total() != other.total() {
            return Err(GradingError::TotalMismatch {
                left: self.total(),
                right: other.total(),
            });
        }
        let (mut a, mut b) = (0, 0);
        for k in 0..self.0.len().max(other.0.len()) {
            a += self.0.get(k).copied().unwrap_or(0);
            b += other.0.get(k).copied().unwrap_or(0);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Parts of the transposed Young diagram.
    pub fn dual(&self) -> Partition {
        let longest = self.0.first().copied().unwrap_or(0);
        Partition((1..=longest).map(|k| self.0.iter().filter(|&&p| p >= k).count()).collect())
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                prefix.push(p);
                go(n - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Jordan type of a nilpotent element in the defining representation, or
/// `None` when the element is not nilpotent.
pub fn jordan_type(g: &LieAlgebra, f: &Element) -> Result<Option<Partition>, GradingError> {
    let m = g.matrix_of(f)?;
    let n = m.rows();
    let mut ranks = vec![n];
    let mut power = Matrix::identity(n);
    for _ in 0..n {
        power = power.mul(&m)?;
        ranks.push(power.rank());
    }
    if ranks[n] != 0 {
        return Ok(None);
    }
    // blocks of size >= k number rank(f^{k-1}) - rank(f^k)
    let at_least: Vec<usize> = (1..=n).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut parts = Vec::new();
    for k in 1..=n {
        let next = at_least.get(k).copied().unwrap_or(0);
        for _ in 0..at_least[k - 1] - next {
            parts.push(k);
        }
    }
    Ok(Some(Partition::new(parts)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    TypeA,
    Orthogonal,
    Symplectic,
}

/// Boxes of a Young diagram placed at (half-)integer columns. Each row lists
/// its box labels from right to left, so `f` sends every box to its left
/// neighbour. Box labels are the row indices of the defining representation
/// (`1..=n` in type A, the symmetric set otherwise); the grading element is
/// `diag(2 * column)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pyramid {
    flavor: Flavor,
    rank: usize,
    rows: Vec<Vec<i64>>,
    columns: BTreeMap<i64, Ratio>,
}

impl Pyramid {
    /// Type A pyramid with explicit rows and columns.
    pub fn type_a(rows: Vec<Vec<i64>>, columns: BTreeMap<i64, Ratio>) -> Result<Self, GradingError> {
        let n = columns.len();
        let mut boxes: Vec<i64> = rows.iter().flatten().copied().collect();
        boxes.sort_unstable();
        if boxes != (1..=n as i64).collect::<Vec<_>>() || !columns.keys().copied().eq(1..=n as i64) {
            return Err(GradingError::UnsupportedPyramid(
                "type A boxes must be numbered 1..n exactly once".into(),
            ));
        }
        for row in &rows {
            for w in row.windows(2) {
                if &columns[&w[0]] - &columns[&w[1]] != int(1) {
                    return Err(GradingError::UnsupportedPyramid(format!(
                        "boxes {} and {} are not adjacent columns",
                        w[0], w[1]
                    )));
                }
            }
        }
        Ok(Pyramid {
            flavor: Flavor::TypeA,
            rank: n - 1,
            rows,
            columns,
        })
    }

    /// Left-aligned hook pyramid of shape `(l, 1^{n-l})`.
    pub fn hook(n: usize, l: usize) -> Result<Self, GradingError> {
        if l == 0 || l > n || n < 2 {
            return Err(GradingError::UnsupportedPyramid(format!(
                "hook needs 1 <= l <= n and n >= 2, got n={n}, l={l}"
            )));
        }
        let mut rows = vec![(1..=l as i64).collect::<Vec<_>>()];
        rows.extend((l as i64 + 1..=n as i64).map(|b| vec![b]));
        let columns = (1..=n as i64)
            .map(|b| (b, int(if b <= l as i64 { l as i64 - b } else { 0 })))
            .collect();
        Self::type_a(rows, columns)
    }

    /// Regular nilpotent in `so_{2r+1}`: one row, Dynkin grading.
    pub fn orthogonal_regular(r: usize) -> Self {
        let r = r as i64;
        let row: Vec<i64> = (-r..=r).collect();
        let columns = row.iter().map(|&a| (a, int(-a))).collect();
        Pyramid {
            flavor: Flavor::Orthogonal,
            rank: r as usize,
            rows: vec![row],
            columns,
        }
    }

    /// Subregular `(2r-1, 1^2)` in `so_{2r+1}`.
    pub fn orthogonal_subregular(r: usize) -> Self {
        let r = r as i64;
        let row: Vec<i64> = (1 - r..=r - 1).collect();
        let mut columns: BTreeMap<i64, Ratio> = row.iter().map(|&a| (a, int(-a))).collect();
        columns.insert(r, int(1 - r));
        columns.insert(-r, int(r - 1));
        Pyramid {
            flavor: Flavor::Orthogonal,
            rank: r as usize,
            rows: vec![row, vec![-r], vec![r]],
            columns,
        }
    }

    /// Regular nilpotent in `sp_{2r}`: one row at half-integer columns.
    pub fn symplectic_regular(r: usize) -> Self {
        let r = r as i64;
        let row: Vec<i64> = (-r..=r).filter(|&a| a != 0).collect();
        let columns = row
            .iter()
            .map(|&a| (a, int(-a) + frac(a.signum(), 2)))
            .collect();
        Pyramid {
            flavor: Flavor::Symplectic,
            rank: r as usize,
            rows: vec![row],
            columns,
        }
    }

    /// `(2^2, 1^{2r-4})` in `sp_{2r}`.
    pub fn symplectic_overminimal(r: usize) -> Self {
        let r = r as i64;
        let mut rows = vec![vec![-r, 1 - r], vec![r - 1, r]];
        let mut columns: BTreeMap<i64, Ratio> = BTreeMap::new();
        columns.insert(-r, int(1));
        columns.insert(r, int(-1));
        for a in (2 - r..=r - 2).filter(|&a| a != 0) {
            rows.push(vec![a]);
        }
        for a in (1 - r..=r - 1).filter(|&a| a != 0) {
            columns.insert(a, int(0));
        }
        Pyramid {
            flavor: Flavor::Symplectic,
            rank: r as usize,
            rows,
            columns,
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn columns(&self) -> &BTreeMap<i64, Ratio> {
        &self.columns
    }

    pub fn partition(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("rows are nonempty")
    }

    fn kind(&self) -> Kind {
        match self.flavor {
            Flavor::TypeA => Kind::A,
            Flavor::Orthogonal => Kind::B,
            Flavor::Symplectic => Kind::C,
        }
    }

    fn is_builtin_family(&self) -> bool {
        match self.flavor {
            Flavor::TypeA => true,
            Flavor::Orthogonal => {
                *self == Self::orthogonal_regular(self.rank)
                    || *self == Self::orthogonal_subregular(self.rank)
            }
            Flavor::Symplectic => {
                *self == Self::symplectic_regular(self.rank)
                    || *self == Self::symplectic_overminimal(self.rank)
            }
        }
    }

    /// The nilpotent element `f` and grading of the pyramid, checked to be
    /// good.
    pub fn to_datum(&self, g: &LieAlgebra) -> Result<(Element, Grading), GradingError> {
        if !self.is_builtin_family() {
            return Err(GradingError::UnsupportedPyramid(
                "orthogonal and symplectic pyramids are limited to the built-in families".into(),
            ));
        }
        if g.kind() != self.kind() || g.rank() != Some(self.rank) {
            return Err(GradingError::UnsupportedPyramid(format!(
                "pyramid does not fit {}",
                g.name()
            )));
        }
        let real = g.realization().ok_or(LieError::NoRealization)?;
        let mut terms = Vec::new();
        for row in &self.rows {
            for w in row.windows(2) {
                let (a, b) = (w[0], w[1]);
                match self.flavor {
                    Flavor::TypeA => terms.push((int(1), b, a)),
                    _ if a + b > 0 => {
                        let sign = match self.flavor {
                            Flavor::Symplectic => -c_eps(a) * c_eps(b),
                            _ => -1,
                        };
                        terms.push((int(1), b, a));
                        terms.push((int(sign), -a, -b));
                    }
                    _ if a + b == 0 => terms.push((int(1), b, a)),
                    _ => {}
                }
            }
        }
        let f = g.element_from_terms(&terms)?;
        let diag: Vec<Ratio> = real
            .positions()
            .iter()
            .map(|p| int(2) * &self.columns[p])
            .collect();
        let grading = Grading::from_semisimple(g, GradingElement::Diagonal(diag))?;
        if let Some(failure) = is_good_for(g, &grading, &f)? {
            return Err(GradingError::GoodnessFailed(failure.to_string()));
        }
        Ok((f, grading))
    }
}

fn c_eps(a: i64) -> i64 {
    if a < 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(n: usize) -> LieAlgebra {
        LieAlgebra::classical(Kind::A, n - 1).unwrap()
    }

    #[test]
    fn sl2_dynkin_grading() {
        let g = sl(2);
        let gr = Grading::from_diagonal(&g, &[1, -1]).unwrap();
        assert_eq!(gr.dims(), BTreeMap::from([(-2, 1), (0, 1), (2, 1)]));
        let e = g.elementary(1, 2).unwrap();
        let f = g.elementary(2, 1).unwrap();
        let h = g.bracket(&e, &f).unwrap();
        assert_eq!(gr.kazhdan_degree(&e).unwrap(), 0);
        assert_eq!(gr.kazhdan_degree(&f).unwrap(), 4);
        assert_eq!(gr.kazhdan_degree(&h).unwrap(), 2);
        assert_eq!(
            gr.kazhdan_degree(&e.add(&f)),
            Err(GradingError::NotHomogeneous)
        );
    }

    #[test]
    fn non_integer_and_inner_gradings() {
        let g = sl(3);
        let q = GradingElement::Diagonal(vec![frac(1, 2), int(0), frac(-1, 2)]);
        assert!(matches!(
            Grading::from_semisimple(&g, q),
            Err(GradingError::NonIntegerEigenvalue(_))
        ));
        let h = g.basis_element(g.index_of("H[1]").unwrap());
        let gr = Grading::from_semisimple(&g, GradingElement::Inner(h)).unwrap();
        assert_eq!(gr.piece(2).dim() + gr.piece(-2).dim() + gr.piece(0).dim() + gr.piece(1).dim() + gr.piece(-1).dim(), 8);
        let nil = g.elementary(1, 2).unwrap();
        assert_eq!(
            Grading::from_semisimple(&g, GradingElement::Inner(nil)).unwrap_err(),
            GradingError::NotDiagonalizable
        );
    }

    #[test]
    fn goodness_examples() {
        let g = sl(4);
        let f = g.elementary(2, 1).unwrap();
        let h1 = Grading::from_diagonal(&g, &[1, -1, 0, 0]).unwrap();
        assert_eq!(is_good_for(&g, &h1, &f).unwrap(), None);
        let h2 = Grading::from_diagonal(&g, &[1, -1, 1, -1]).unwrap();
        let e34 = g.elementary(3, 4).unwrap();
        assert_eq!(
            is_good_for(&g, &h2, &f).unwrap(),
            Some(GoodnessFailure::NotInjective {
                degree: 2,
                witness: e34.0
            })
        );
        let wrong = Grading::from_diagonal(&g, &[0, 0, 0, 0]).unwrap();
        assert_eq!(
            is_good_for(&g, &wrong, &f).unwrap(),
            Some(GoodnessFailure::NotInDegreeMinusTwo)
        );
    }

    #[test]
    fn dominance_examples() {
        let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
        assert!(p(&[2, 1, 1]).dominance_leq(&p(&[2, 2])).unwrap());
        assert!(p(&[2, 2]).dominance_leq(&p(&[3, 1])).unwrap());
        assert!(!p(&[3, 1]).dominance_leq(&p(&[2, 2])).unwrap());
        assert!(p(&[3]).dominance_leq(&p(&[2, 1, 1])).is_err());
        assert_eq!(p(&[3, 1]).dual(), p(&[2, 1, 1]));
        assert_eq!(Partition::all(4).len(), 5);
    }

    #[test]
    fn orbit_dimensions() {
        let g = sl(4);
        let f = g.elementary(2, 1).unwrap();
        assert_eq!(orbit_dimension(&g, &f).unwrap(), 6);
        let f2 = f.add(&g.elementary(4, 3).unwrap());
        assert_eq!(orbit_dimension(&g, &f2).unwrap(), 8);
        assert_eq!(orbit_dimension(&g, &g.zero()).unwrap(), 0);
        assert_eq!(jordan_type(&g, &f2).unwrap().unwrap().parts(), &[2, 2]);
    }

    #[test]
    fn hook_pyramid() {
        let g = sl(4);
        let p = Pyramid::hook(4, 2).unwrap();
        let (f, gr) = p.to_datum(&g).unwrap();
        assert_eq!(f, g.elementary(2, 1).unwrap());
        assert_eq!(gr.q(), &GradingElement::Diagonal(vec![int(2), int(0), int(0), int(0)]));
        assert!(gr.is_even());
        assert_eq!(p.partition().parts(), &[2, 1, 1]);
    }

    #[test]
    fn orthogonal_pyramids() {
        let g = LieAlgebra::classical(Kind::B, 2).unwrap();
        let (f1, gr1) = Pyramid::orthogonal_subregular(2).to_datum(&g).unwrap();
        let expected = g.element_from_terms(&[(int(1), 1, 0), (int(-1), 0, -1)]).unwrap();
        assert_eq!(f1, expected);
        assert_eq!(
            gr1.q(),
            &GradingElement::Diagonal([2, 2, 0, -2, -2].iter().map(|&x| int(x)).collect())
        );
        assert_eq!(jordan_type(&g, &f1).unwrap().unwrap().parts(), &[3, 1, 1]);
    }

    #[test]
    fn symplectic_pyramids() {
        let g = LieAlgebra::classical(Kind::C, 3).unwrap();
        let (f1, gr1) = Pyramid::symplectic_overminimal(3).to_datum(&g).unwrap();
        let expected = g.element_from_terms(&[(int(1), 3, 2), (int(-1), -2, -3)]).unwrap();
        assert_eq!(f1, expected);
        assert_eq!(
            gr1.q(),
            &GradingElement::Diagonal([2, 0, 0, 0, 0, -2].iter().map(|&x| int(x)).collect())
        );
        let (f2, gr2) = Pyramid::symplectic_regular(3).to_datum(&g).unwrap();
        assert_eq!(jordan_type(&g, &f2).unwrap().unwrap().parts(), &[6]);
        assert_eq!(
            gr2.q(),
            &GradingElement::Diagonal([5, 3, 1, -1, -3, -5].iter().map(|&x| int(x)).collect())
        );
    }

    #[test]
    fn unsupported_pyramids() {
        let mut p = Pyramid::orthogonal_regular(2);
        p.columns.insert(0, int(1));
        let g = LieAlgebra::classical(Kind::B, 2).unwrap();
        assert!(matches!(p.to_datum(&g), Err(GradingError::UnsupportedPyramid(_))));
    }
}
