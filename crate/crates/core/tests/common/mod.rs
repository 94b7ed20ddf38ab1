//! Oracles computed from first principles, shared by the integration tests.
#![allow(dead_code)]

use slodowy_core::exactlin::{int, Matrix, Ratio, Subspace};
use slodowy_core::liecore::LieAlgebra;

/// `e_{a,b}` in `gl_n`, 1-based.
pub fn unit_matrix(n: usize, a: usize, b: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m.set(a - 1, b - 1, int(1));
    m
}

pub fn commutator(x: &Matrix, y: &Matrix) -> Matrix {
    x.mul(y).unwrap().sub(&y.mul(x).unwrap()).unwrap()
}

/// `[e_ab, e_cd] = δ_bc e_ad - δ_da e_cb`
pub fn elementary_commutator(n: usize, (a, b): (usize, usize), (c, d): (usize, usize)) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    if b == c {
        m.set(a - 1, d - 1, int(1));
    }
    if d == a {
        let v = m.get(c - 1, b - 1) - int(1);
        m.set(c - 1, b - 1, v);
    }
    m
}

/// Dimension of `{x in sl_n : x^T B + B x = 0}` from the nullspace of the
/// linear conditions on the `n^2` entries.
pub fn preserving_dimension(b: &Matrix) -> usize {
    let n = b.rows();
    let mut rows = Vec::new();
    for r in 0..n {
        for c in 0..n {
            // (x^T B + B x)_{rc} = sum_k x_{kr} B_{kc} + B_{rk} x_{kc}
            let mut row = vec![int(0); n * n];
            for k in 0..n {
                row[k * n + r] += b.get(k, c);
                row[k * n + c] += b.get(r, k);
            }
            rows.push(row);
        }
    }
    let mut trace = vec![int(0); n * n];
    for i in 0..n {
        trace[i * n + i] = int(1);
    }
    rows.push(trace);
    n * n - Matrix::from_rows(rows, n * n).unwrap().rank()
}

/// Antidiagonal ones.
pub fn k_matrix(n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m.set(i, n - 1 - i, int(1));
    }
    m
}

/// Ones on the upper half of the antidiagonal, minus ones below it.
pub fn j_matrix(n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m.set(i, n - 1 - i, int(if i < n / 2 { 1 } else { -1 }));
    }
    m
}

/// `Σ (dual parts)^2 - 1`, the centralizer dimension in `sl_n`.
pub fn sl_centralizer_dim(parts: &[usize]) -> usize {
    let longest = parts.iter().copied().max().unwrap_or(0);
    (1..=longest)
        .map(|k| parts.iter().filter(|&&p| p >= k).count().pow(2))
        .sum::<usize>()
        - 1
}

/// Span of elementary matrices of `sl_n`.
pub fn span_pairs(g: &LieAlgebra, pairs: &[(usize, usize)]) -> Subspace {
    let vecs = pairs
        .iter()
        .map(|&(a, b)| g.elementary(a as i64, b as i64).unwrap().0)
        .collect();
    Subspace::span(g.dim(), vecs).unwrap()
}

/// Index pairs of the hook good algebra: `e_ij` with `i < l` and `i < j`.
pub fn hook_m_pairs(n: usize, l: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..l {
        for j in i + 1..=n {
            out.push((i, j));
        }
    }
    out
}

/// Intersection of a span of signed-index elementary matrices with the
/// algebra, computed in the matrix realization.
pub fn span_in_algebra(g: &LieAlgebra, pairs: &[(i64, i64)]) -> Subspace {
    let real = g.realization().unwrap();
    let size = real.size();
    // coordinates of basis elements in gl, then keep those in the span
    let allowed: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(a, b)| (real.row_of(a).unwrap(), real.row_of(b).unwrap()))
        .collect();
    // x in g lies in the span iff its entries outside `allowed` vanish
    let mut rows = Vec::new();
    for r in 0..size {
        for c in 0..size {
            if allowed.contains(&(r, c)) {
                continue;
            }
            rows.push((0..g.dim()).map(|i| real.basis_matrix(i).get(r, c).clone()).collect::<Vec<Ratio>>());
        }
    }
    Matrix::from_rows(rows, g.dim()).unwrap().nullspace()
}
