//! Exact linear algebra over the rationals.
//!
//! Everything here is dense and eliminates with Gauss-Jordan over
//! [`Ratio`]. A [`Subspace`] always stores its basis in reduced row-echelon
//! form, so two subspaces are equal exactly when their basis lists are equal.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational scalar, always kept in lowest terms with a
/// positive denominator.
pub type Ratio = BigRational;

/// Integer-valued [`Ratio`].
pub fn int(n: i64) -> Ratio {
    Ratio::from_integer(BigInt::from(n))
}

/// `num / den` as a [`Ratio`]. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Ratio {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_ratio(text: &str) -> Option<Ratio> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Ratio::new(num, den))
        }
        None => text.parse::<BigInt>().ok().map(Ratio::from_integer),
    }
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn to_i64(value: &Ratio) -> Option<i64> {
    if value.is_integer() {
        i64::try_from(value.to_integer()).ok()
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("vector length {actual} does not match expected {expected}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("incompatible matrix shapes {left:?} and {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("bilinear form is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("bilinear form is not symmetric")]
    Asymmetric,
    #[error("linear system is infeasible")]
    Infeasible,
}

/// Small helpers on coordinate vectors.
pub mod vector {
    use super::Ratio;
    use num_traits::Zero;

    pub fn zeros(len: usize) -> Vec<Ratio> {
        vec![Ratio::zero(); len]
    }

    pub fn unit(len: usize, index: usize) -> Vec<Ratio> {
        let mut v = zeros(len);
        v[index] = super::int(1);
        v
    }

    pub fn is_zero(v: &[Ratio]) -> bool {
        v.iter().all(Zero::is_zero)
    }

    pub fn add(a: &[Ratio], b: &[Ratio]) -> Vec<Ratio> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Ratio], b: &[Ratio]) -> Vec<Ratio> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(a: &[Ratio], c: &Ratio) -> Vec<Ratio> {
        a.iter().map(|x| x * c).collect()
    }

    pub fn dot(a: &[Ratio], b: &[Ratio]) -> Ratio {
        debug_assert_eq!(a.len(), b.len());
        let mut acc = Ratio::zero();
        for (x, y) in a.iter().zip(b) {
            if !x.is_zero() && !y.is_zero() {
                acc += x * y;
            }
        }
        acc
    }

    /// `target += c * source`
    pub fn axpy(target: &mut [Ratio], c: &Ratio, source: &[Ratio]) {
        if c.is_zero() {
            return;
        }
        for (t, s) in target.iter_mut().zip(source) {
            if !s.is_zero() {
                *t += c * s;
            }
        }
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Ratio>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Ratio::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Ratio::one());
        }
        m
    }

    /// Builds a matrix from equal-length rows. `cols` is only consulted when
    /// `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Ratio>>, cols: usize) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(cols, Vec::len);
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinAlgError::LengthMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(data, cols).expect("ragged integer rows")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Ratio>], rows: usize) -> Result<Self, LinAlgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinAlgError::LengthMismatch {
                    expected: rows,
                    actual: col.len(),
                });
            }
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Ratio {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Ratio) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Ratio] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Ratio> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Ratio>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn trace(&self) -> Ratio {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Ratio]) -> Result<Vec<Ratio>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::LengthMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| vector::dot(self.row(r), v)).collect())
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinAlgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: vector::sub(&self.entries, &other.entries),
        })
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Ratio>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend(vector::unit(n, r));
                row
            })
            .collect();
        let pivots = rref_in_place(&mut rows, 2 * n);
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let inv = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Matrix::from_rows(inv, n).expect("square inverse"))
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_in_place(&mut rows, self.cols);
        let reduced = Matrix::from_rows(rows, self.cols).expect("rref preserves shape");
        (reduced, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        rref_in_place(&mut rows, self.cols).len()
    }

    /// Right kernel `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let mut rows = self.to_rows();
        let pivots = rref_in_place(&mut rows, self.cols);
        kernel_from_rref(&rows, &pivots, self.cols)
    }

    /// Solves `self * x = rhs`, returning the particular solution with all
    /// free variables set to zero together with the homogeneous solutions.
    pub fn solve_affine(&self, rhs: &[Ratio]) -> Result<AffineSolution, LinAlgError> {
        if rhs.len() != self.rows {
            return Err(LinAlgError::LengthMismatch {
                expected: self.rows,
                actual: rhs.len(),
            });
        }
        let mut rows: Vec<Vec<Ratio>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(rhs[r].clone());
                row
            })
            .collect();
        let pivots = rref_in_place(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Err(LinAlgError::Infeasible);
        }
        let mut particular = vector::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            particular[p] = rows[i][self.cols].clone();
        }
        let coefficient_rows: Vec<Vec<Ratio>> = rows
            .iter()
            .map(|r| r[..self.cols].to_vec())
            .collect();
        let homogeneous = kernel_from_rref(&coefficient_rows, &pivots, self.cols);
        Ok(AffineSolution {
            particular,
            homogeneous,
        })
    }
}

/// Solution set `particular + homogeneous` of a consistent linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Ratio>,
    pub homogeneous: Subspace,
}

/// Gauss-Jordan elimination in place, choosing the first nonzero entry as
/// pivot. Returns the pivot columns; rows past the rank end up zero.
fn rref_in_place(rows: &mut [Vec<Ratio>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].recip();
        if !inv.is_one() {
            for x in rows[next][col..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let (before, rest) = rows.split_at_mut(next);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
        for row in before.iter_mut().chain(after.iter_mut()) {
            let factor = row[col].clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..cols {
                if !pivot_row[c].is_zero() {
                    let delta = &factor * &pivot_row[c];
                    row[c] -= delta;
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

fn kernel_from_rref(rows: &[Vec<Ratio>], pivots: &[usize], cols: usize) -> Subspace {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<Ratio>> = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vector::unit(cols, free);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rows[i][free].clone();
            }
            v
        })
        .collect();
    Subspace::span_unchecked(cols, vectors)
}

/// A linear subspace of `Q^n`, stored as a basis in reduced row-echelon
/// form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Ratio>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient)?;
        f.debug_list()
            .entries(
                self.basis
                    .iter()
                    .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            )
            .finish()
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_unit_vectors(ambient, 0..ambient)
    }

    /// Span of the given coordinate axes.
    pub fn from_unit_vectors(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        Subspace {
            ambient,
            basis: idx.iter().map(|&i| vector::unit(ambient, i)).collect(),
            pivots: idx,
        }
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Ratio>>) -> Result<Self, LinAlgError> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(LinAlgError::LengthMismatch {
                expected: ambient,
                actual: bad.len(),
            });
        }
        Ok(Self::span_unchecked(ambient, vectors))
    }

    fn span_unchecked(ambient: usize, mut vectors: Vec<Vec<Ratio>>) -> Self {
        let pivots = rref_in_place(&mut vectors, ambient);
        vectors.truncate(pivots.len());
        Subspace {
            ambient,
            basis: vectors,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Ratio>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Rows are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.basis.clone(), self.ambient).expect("basis rows share a length")
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[Ratio]) -> Vec<Ratio> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = -out[p].clone();
            vector::axpy(&mut out, &c, row);
        }
        out
    }

    pub fn contains(&self, v: &[Ratio]) -> bool {
        v.len() == self.ambient && vector::is_zero(&self.reduce(v))
    }

    /// Coordinates of `v` with respect to [`Self::basis`], when `v` lies in
    /// the subspace.
    pub fn coordinates(&self, v: &[Ratio]) -> Option<Vec<Ratio>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// First basis vector of `other` that is not contained in `self`.
    pub fn first_outside<'a>(&self, other: &'a Subspace) -> Option<&'a Vec<Ratio>> {
        other.basis.iter().find(|v| !self.contains(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.first_outside(other).is_none()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Ok(Self::span_unchecked(self.ambient, vectors))
    }

    pub fn sum_all<'a>(
        ambient: usize,
        parts: impl IntoIterator<Item = &'a Subspace>,
    ) -> Result<Subspace, LinAlgError> {
        let mut vectors = Vec::new();
        for part in parts {
            if part.ambient != ambient {
                return Err(LinAlgError::AmbientMismatch {
                    left: ambient,
                    right: part.ambient,
                });
            }
            vectors.extend(part.basis.iter().cloned());
        }
        Ok(Self::span_unchecked(ambient, vectors))
    }

    /// `{x : u . x = 0 for all u in self}` under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        self.basis_matrix().nullspace()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other)?;
        if self.contains_subspace(other) {
            return Ok(other.clone());
        }
        if other.contains_subspace(self) {
            return Ok(self.clone());
        }
        let mut constraints = self.annihilator().basis;
        constraints.extend(other.annihilator().basis);
        if constraints.is_empty() {
            return Ok(Subspace::full(self.ambient));
        }
        Ok(Matrix::from_rows(constraints, self.ambient)
            .expect("annihilator rows share a length")
            .nullspace())
    }

    /// `{x : form(x, y) = 0 for all y in self}`.
    pub fn orth_complement(&self, form: &Matrix) -> Result<Subspace, LinAlgError> {
        if !form.is_square() {
            return Err(LinAlgError::NotSquare {
                rows: form.rows(),
                cols: form.cols(),
            });
        }
        if form.rows() != self.ambient {
            return Err(LinAlgError::AmbientMismatch {
                left: self.ambient,
                right: form.rows(),
            });
        }
        if !form.is_symmetric() {
            return Err(LinAlgError::Asymmetric);
        }
        if self.basis.is_empty() {
            return Ok(Subspace::full(self.ambient));
        }
        let paired = self.basis_matrix().mul(form)?;
        Ok(paired.nullspace())
    }

    /// Extends a basis of `self ∩ whole` greedily by basis vectors of
    /// `whole`, returning the span of the added vectors.
    pub fn complement_in(&self, whole: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(whole)?;
        let mut running = self.clone();
        let mut chosen = Vec::new();
        for v in &whole.basis {
            if !running.contains(v) {
                chosen.push(v.clone());
                running = running.sum(&Subspace::span_unchecked(self.ambient, vec![v.clone()]))?;
            }
        }
        Ok(Self::span_unchecked(self.ambient, chosen))
    }
}

/// True iff the parts are independent and together span `whole`.
pub fn is_direct_sum(parts: &[&Subspace], whole: &Subspace) -> Result<bool, LinAlgError> {
    let total: usize = parts.iter().map(|p| p.dim()).sum();
    if total != whole.dim() {
        for p in parts {
            p.check_ambient(whole)?;
        }
        return Ok(false);
    }
    let sum = Subspace::sum_all(whole.ambient, parts.iter().copied())?;
    Ok(sum == *whole)
}

/// Rank of the pairing matrix `(u_i | v_j)` between two subspaces.
pub fn pairing_rank(u: &Subspace, v: &Subspace, form: &Matrix) -> Result<usize, LinAlgError> {
    u.check_ambient(v)?;
    if u.is_zero() || v.is_zero() {
        return Ok(0);
    }
    let left = u.basis_matrix().mul(form)?;
    let pairing = left.mul(&v.basis_matrix().transpose())?;
    Ok(pairing.rank())
}

/// Absolute value bound used by eigenvalue scans: the maximum absolute row
/// sum, rounded up.
pub fn infinity_norm_ceil(m: &Matrix) -> BigInt {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(Signed::abs).sum::<Ratio>().ceil().to_integer())
        .max()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Ratio> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn e(n: usize, i: usize) -> Vec<Ratio> {
        vector::unit(n, i)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zeros(2, 2).rank(), 0);
        assert_eq!(Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Matrix::identity(2).nullspace(), Subspace::zero(2));
        assert_eq!(Matrix::zeros(2, 3).nullspace(), Subspace::full(3));
        let ns = Matrix::from_i64_rows(&[&[1, 1]]).nullspace();
        assert_eq!(ns, Subspace::span(2, vec![v(&[1, -1])]).unwrap());
    }

    #[test]
    fn solve_affine_examples() {
        let sol = Matrix::identity(2).solve_affine(&v(&[3, 5])).unwrap();
        assert_eq!(sol.particular, v(&[3, 5]));
        assert!(sol.homogeneous.is_zero());

        let sol = Matrix::from_i64_rows(&[&[1, 1]]).solve_affine(&v(&[2])).unwrap();
        assert_eq!(sol.particular, v(&[2, 0]));
        assert_eq!(sol.homogeneous, Subspace::span(2, vec![v(&[1, -1])]).unwrap());

        let err = Matrix::from_i64_rows(&[&[0, 0]]).solve_affine(&v(&[1]));
        assert_eq!(err, Err(LinAlgError::Infeasible));
    }

    #[test]
    fn sum_and_intersection_examples() {
        let e1 = Subspace::span(3, vec![e(3, 0)]).unwrap();
        let e2 = Subspace::span(3, vec![e(3, 1)]).unwrap();
        let e12 = Subspace::from_unit_vectors(3, [0, 1]);
        let e23 = Subspace::from_unit_vectors(3, [1, 2]);
        assert_eq!(e1.sum(&e2).unwrap(), e12);
        assert_eq!(e12.intersect(&e23).unwrap(), Subspace::from_unit_vectors(3, [1]));
        assert_eq!(e23.intersect(&e23).unwrap(), e23);
        assert!(matches!(
            e1.sum(&Subspace::zero(2)),
            Err(LinAlgError::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn direct_sum_examples() {
        let e1 = Subspace::from_unit_vectors(2, [0]);
        let e2 = Subspace::from_unit_vectors(2, [1]);
        assert!(is_direct_sum(&[&e1, &e2], &Subspace::full(2)).unwrap());
        assert!(!is_direct_sum(&[&e1, &e1], &e1).unwrap());
    }

    #[test]
    fn orth_complement_examples() {
        let form = Matrix::identity(3);
        assert_eq!(Subspace::zero(3).orth_complement(&form).unwrap(), Subspace::full(3));
        assert_eq!(Subspace::full(3).orth_complement(&form).unwrap(), Subspace::zero(3));
        let bad = Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(
            Subspace::zero(2).orth_complement(&bad),
            Err(LinAlgError::Asymmetric)
        );
        let rect = Matrix::zeros(2, 3);
        assert!(matches!(
            Subspace::zero(2).orth_complement(&rect),
            Err(LinAlgError::NotSquare { .. })
        ));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(Matrix::zeros(0, 0).inverse(), Some(Matrix::zeros(0, 0)));
    }

    #[test]
    fn subspace_equality_is_canonical() {
        let a = Subspace::span(2, vec![v(&[2, 4]), v(&[1, 1])]).unwrap();
        let b = Subspace::span(2, vec![v(&[0, 3]), v(&[5, 0])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, Subspace::full(2));
    }

    #[test]
    fn parse_ratio_forms() {
        assert_eq!(parse_ratio("3"), Some(int(3)));
        assert_eq!(parse_ratio("-2/4"), Some(frac(-1, 2)));
        assert_eq!(parse_ratio("1/0"), None);
        assert_eq!(parse_ratio("x"), None);
        assert_eq!(frac(0, 5), int(0));
        assert!(frac(0, 5).denom().is_one());
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..4, 1i64..3), r * c).prop_map(move |xs| {
                let rows = xs
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&(n, d)| frac(n, d)).collect())
                    .collect();
                Matrix::from_rows(rows, c).unwrap()
            })
        })
    }

    fn subspace_of(n: usize) -> impl Strategy<Value = Subspace> {
        proptest::collection::vec(proptest::collection::vec(-2i64..3, n), 0..n + 1)
            .prop_map(move |vs| Subspace::span(n, vs.iter().map(|x| v(x)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            prop_assert_eq!(m.rank() + m.nullspace().dim(), m.cols());
            for b in m.nullspace().basis() {
                prop_assert!(vector::is_zero(&m.mul_vec(b).unwrap()));
            }
        }

        #[test]
        fn solve_affine_substitutes(m in small_matrix(), seed in proptest::collection::vec(-3i64..4, 6)) {
            let x: Vec<Ratio> = (0..m.cols()).map(|i| int(seed[i % seed.len()])).collect();
            let b = m.mul_vec(&x).unwrap();
            let sol = m.solve_affine(&b).unwrap();
            prop_assert_eq!(m.mul_vec(&sol.particular).unwrap(), b);
            prop_assert_eq!(sol.homogeneous, m.nullspace());
        }

        #[test]
        fn lattice_ops_are_canonical(a in subspace_of(4), b in subspace_of(4)) {
            prop_assert_eq!(a.sum(&b).unwrap(), b.sum(&a).unwrap());
            prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
            prop_assert_eq!(a.sum(&a).unwrap(), a.clone());
            prop_assert_eq!(a.intersect(&a).unwrap(), a.clone());
            let meet = a.intersect(&b).unwrap();
            prop_assert_eq!(a.dim() + b.dim(), a.sum(&b).unwrap().dim() + meet.dim());
        }

        #[test]
        fn double_complement(a in subspace_of(4)) {
            // diag(1, -1, 2, 1) is symmetric and nondegenerate
            let mut form = Matrix::identity(4);
            form.set(1, 1, int(-1));
            form.set(2, 2, int(2));
            let perp = a.orth_complement(&form).unwrap();
            prop_assert_eq!(perp.dim(), 4 - a.dim());
            prop_assert_eq!(perp.orth_complement(&form).unwrap(), a);
        }
    }
}
