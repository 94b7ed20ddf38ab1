//! sl2-triples adapted to gradings, Lagrangian subspaces of `g_1` and the
//! good algebra `m` of a nilpotent element.

use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::exactlin::{int, vector, LinAlgError, Matrix, Ratio, Subspace};
use crate::gradings::{is_good_for, jordan_type, orbit_dimension, Grading, GradingError, Partition};
use crate::liecore::{Element, LieAlgebra, LieError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no sl2-triple found in the prescribed degrees")]
    NoTriple,
    #[error("the form (f|[x,y]) is degenerate on g_1")]
    DegenerateForm,
    #[error("not a Lagrangian subspace of g_1: {0}")]
    NotLagrangian(String),
    #[error("grading is not good for f: {0}")]
    NotGood(String),
    #[error("invariant `{name}` failed")]
    InvariantFailed { name: String, witness: Vec<Ratio> },
    #[error("containment chain failed")]
    ContainmentFailed { witness: Vec<Ratio> },
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Completes `f` to an sl2-triple with `e ∈ g_2` and `h ∈ g_0`.
pub fn complete_sl2_triple(
    g: &LieAlgebra,
    f: &Element,
    grading: &Grading,
) -> Result<(Element, Element), TripleError> {
    if let Some(failure) = is_good_for(g, grading, f)? {
        return Err(TripleError::PreconditionFailed(failure.to_string()));
    }
    solve_triple(g, f, &grading.piece(2))
}

/// Completes `f1` to a triple with `e1 ∈ g¹_2 ∩ g²_2` and `h1 ∈ g¹_0 ∩ g²_0`.
pub fn complete_bigraded_triple(
    g: &LieAlgebra,
    f1: &Element,
    first: &Grading,
    second: &Grading,
) -> Result<(Element, Element), TripleError> {
    let ad_q0 = second.ad_q().sub(first.ad_q())?;
    if !vector::is_zero(&ad_q0.mul_vec(f1.coords())?) {
        return Err(TripleError::PreconditionFailed("[q0, f1] != 0".into()));
    }
    if let Some(failure) = is_good_for(g, first, f1)? {
        return Err(TripleError::PreconditionFailed(failure.to_string()));
    }
    let v2 = first.piece(2).intersect(&second.piece(2))?;
    solve_triple(g, f1, &v2)
}

/// Two linear solves: first `z ∈ v2` with `[[z,f],f] = -2f` giving
/// `h = [z,f]`, then `e ∈ v2` with `[e,f] = h` and `[h,e] = 2e`.
fn solve_triple(g: &LieAlgebra, f: &Element, v2: &Subspace) -> Result<(Element, Element), TripleError> {
    let dim = g.dim();
    if f.is_zero() {
        return Ok((g.zero(), g.zero()));
    }
    let ad_f = g.ad_matrix(f)?;
    // images [b, f] = -ad_f(b) for the basis of v2
    let with_f: Vec<Vec<Ratio>> = v2
        .basis()
        .iter()
        .map(|b| ad_f.mul_vec(b).map(|v| vector::scale(&v, &int(-1))))
        .collect::<Result<_, _>>()?;
    let twice: Vec<Vec<Ratio>> = with_f
        .iter()
        .map(|v| g.bracket_coords(v, f.coords()))
        .collect();
    let a = Matrix::from_columns(&twice, dim)?;
    let target = vector::scale(f.coords(), &int(-2));
    let first = match a.solve_affine(&target) {
        Ok(sol) => sol,
        Err(LinAlgError::Infeasible) => return Err(TripleError::NoTriple),
        Err(e) => return Err(e.into()),
    };
    let combine = |coeffs: &[Ratio], vectors: &[Vec<Ratio>]| {
        let mut out = vector::zeros(dim);
        for (c, v) in coeffs.iter().zip(vectors) {
            vector::axpy(&mut out, c, v);
        }
        out
    };
    // candidates: the particular solution, then small shifts along the kernel
    let mut candidates = vec![first.particular.clone()];
    for k in first.homogeneous.basis() {
        for s in [1, -1] {
            candidates.push(vector::add(&first.particular, &vector::scale(k, &int(s))));
        }
    }
    for c in candidates {
        let h = combine(&c, &with_f);
        if let Some(e) = solve_e(g, f, v2, &with_f, &h)? {
            return Ok((Element(e), Element(h)));
        }
    }
    Err(TripleError::NoTriple)
}

fn solve_e(
    g: &LieAlgebra,
    f: &Element,
    v2: &Subspace,
    with_f: &[Vec<Ratio>],
    h: &[Ratio],
) -> Result<Option<Vec<Ratio>>, TripleError> {
    let dim = g.dim();
    let ad_h = g.ad_matrix_coords(h);
    let k = v2.dim();
    let mut rows = Vec::with_capacity(2 * dim);
    let mut rhs = Vec::with_capacity(2 * dim);
    for r in 0..dim {
        rows.push((0..k).map(|c| with_f[c][r].clone()).collect::<Vec<_>>());
        rhs.push(h[r].clone());
    }
    let eigen: Vec<Vec<Ratio>> = v2
        .basis()
        .iter()
        .map(|b| {
            let hb = ad_h.mul_vec(b).expect("dimension");
            vector::sub(&hb, &vector::scale(b, &int(2)))
        })
        .collect();
    for r in 0..dim {
        rows.push(eigen.iter().map(|col| col[r].clone()).collect());
        rhs.push(Ratio::zero());
    }
    let system = Matrix::from_rows(rows, k)?;
    let sol = match system.solve_affine(&rhs) {
        Ok(sol) => sol,
        Err(LinAlgError::Infeasible) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut e = vector::zeros(dim);
    for (c, b) in sol.particular.iter().zip(v2.basis()) {
        vector::axpy(&mut e, c, b);
    }
    let triple_ok = triple_residuals(g, &Element(e.clone()), &Element(h.to_vec()), f)
        .iter()
        .all(|r| vector::is_zero(r));
    Ok(triple_ok.then_some(e))
}

/// Residual vectors `[e,f] - h`, `[h,e] - 2e`, `[h,f] + 2f`.
pub fn triple_residuals(g: &LieAlgebra, e: &Element, h: &Element, f: &Element) -> [Vec<Ratio>; 3] {
    let ef = g.bracket_coords(e.coords(), f.coords());
    let he = g.bracket_coords(h.coords(), e.coords());
    let hf = g.bracket_coords(h.coords(), f.coords());
    [
        vector::sub(&ef, h.coords()),
        vector::sub(&he, &vector::scale(e.coords(), &int(2))),
        vector::add(&hf, &vector::scale(f.coords(), &int(2))),
    ]
}

/// `ω(x, y) = (f | [x, y])`
pub fn omega(g: &LieAlgebra, f: &Element, x: &[Ratio], y: &[Ratio]) -> Ratio {
    g.form_coords(f.coords(), &g.bracket_coords(x, y))
}

/// Deterministic Lagrangian subspace of `(g_1, ω)` from a symplectic
/// Gram-Schmidt pass over the basis of `g_1` in order.
pub fn select_lagrangian(g: &LieAlgebra, grading: &Grading, f: &Element) -> Result<Subspace, TripleError> {
    let mut work: Vec<Vec<Ratio>> = grading.piece(1).basis().to_vec();
    let mut chosen = Vec::new();
    while !work.is_empty() {
        let u = work.remove(0);
        let partner = work
            .iter()
            .position(|w| !omega(g, f, &u, w).is_zero())
            .ok_or(TripleError::DegenerateForm)?;
        let v = work.remove(partner);
        let c = omega(g, f, &u, &v);
        for w in work.iter_mut() {
            let a = omega(g, f, w, &v) / &c;
            let b = omega(g, f, w, &u) / &c;
            vector::axpy(w, &-a, &u);
            vector::axpy(w, &b, &v);
        }
        chosen.push(u);
    }
    Ok(Subspace::span(g.dim(), chosen)?)
}

/// Checks that `l` is a Lagrangian subspace of `(g_1, ω)`.
pub fn check_lagrangian(g: &LieAlgebra, grading: &Grading, f: &Element, l: &Subspace) -> Result<(), TripleError> {
    let g1 = grading.piece(1);
    if !g1.contains_subspace(l) {
        return Err(TripleError::NotLagrangian("not contained in g_1".into()));
    }
    if 2 * l.dim() != g1.dim() {
        return Err(TripleError::NotLagrangian(format!(
            "dimension {} is not half of {}",
            l.dim(),
            g1.dim()
        )));
    }
    for x in l.basis() {
        for y in l.basis() {
            if !omega(g, f, x, y).is_zero() {
                return Err(TripleError::NotLagrangian("form does not vanish".into()));
            }
        }
    }
    Ok(())
}

/// A nilpotent element with a good grading, a Γ-triple, a Lagrangian and
/// the resulting good algebra.
#[derive(Debug, Clone)]
pub struct NilpotentDatum {
    pub algebra: Arc<LieAlgebra>,
    pub f: Element,
    pub grading: Grading,
    pub e: Element,
    pub h: Element,
    pub lagrangian: Subspace,
    pub m: Subspace,
    pub partition: Option<Partition>,
}

/// Assembles and verifies a datum. An override must be Lagrangian.
pub fn build_datum(
    g: Arc<LieAlgebra>,
    f: Element,
    grading: Grading,
    lagrangian_override: Option<Subspace>,
) -> Result<NilpotentDatum, TripleError> {
    if let Some(failure) = is_good_for(&g, &grading, &f)? {
        return Err(TripleError::NotGood(failure.to_string()));
    }
    let (e, h) = solve_triple(&g, &f, &grading.piece(2))?;
    let lagrangian = match lagrangian_override {
        Some(l) => {
            check_lagrangian(&g, &grading, &f, &l)?;
            l
        }
        None => select_lagrangian(&g, &grading, &f)?,
    };
    let m = lagrangian.sum(&grading.at_least(2))?;
    let partition = match g.realization() {
        Some(_) => jordan_type(&g, &f)?,
        None => None,
    };
    let datum = NilpotentDatum {
        algebra: g,
        f,
        grading,
        e,
        h,
        lagrangian,
        m,
        partition,
    };
    datum.verify()?;
    Ok(datum)
}

fn fail(name: &str, witness: Vec<Ratio>) -> TripleError {
    TripleError::InvariantFailed {
        name: name.into(),
        witness,
    }
}

impl NilpotentDatum {
    /// Rechecks every invariant of the datum.
    pub fn verify(&self) -> Result<(), TripleError> {
        let g = &self.algebra;
        let dim = g.dim();
        for r in triple_residuals(g, &self.e, &self.h, &self.f) {
            if !vector::is_zero(&r) {
                return Err(fail("triple", r));
            }
        }
        if !self.grading.piece(2).contains(self.e.coords()) {
            return Err(fail("e in g_2", self.e.0.clone()));
        }
        if !self.grading.piece(0).contains(self.h.coords()) {
            return Err(fail("h in g_0", self.h.0.clone()));
        }
        let mm = g.bracket_span(&self.m, &self.m)?;
        if let Some(w) = self.m.first_outside(&mm) {
            return Err(fail("m subalgebra", w.clone()));
        }
        if let Some(w) = mm.basis().iter().find(|x| !g.form_coords(self.f.coords(), x).is_zero()) {
            return Err(fail("character", w.clone()));
        }
        let orbit = orbit_dimension(g, &self.f)?;
        if 2 * self.m.dim() != orbit {
            return Err(fail("half dimension", vec![int(self.m.dim() as i64), int(orbit as i64)]));
        }
        let mf = g.bracket_with(&self.m, &self.f)?;
        if mf.dim() != self.m.dim() {
            return Err(fail("ad f injective on m", vec![int(mf.dim() as i64), int(self.m.dim() as i64)]));
        }
        let kernel = g.centralizer(&self.e)?;
        let perp = self.m.orth_complement(g.form())?;
        let sum = mf.sum(&kernel)?;
        if mf.dim() + kernel.dim() != sum.dim() {
            return Err(fail("transversality", mf.intersect(&kernel)?.basis()[0].clone()));
        }
        if sum != perp {
            let w = perp
                .first_outside(&sum)
                .or_else(|| sum.first_outside(&perp))
                .cloned()
                .unwrap_or_else(|| vector::zeros(dim));
            return Err(fail("transversality", w));
        }
        self.containment_chain()?;
        Ok(())
    }

    /// `Ker ad(e) ⊆ g_{≥0} ⊆ m^⊥`
    fn containment_chain(&self) -> Result<Subspace, TripleError> {
        let g = &self.algebra;
        let kernel = g.centralizer(&self.e)?;
        let nonneg = self.grading.at_least(0);
        if let Some(w) = nonneg.first_outside(&kernel) {
            return Err(TripleError::ContainmentFailed { witness: w.clone() });
        }
        let perp = self.m.orth_complement(g.form())?;
        if let Some(w) = perp.first_outside(&nonneg) {
            return Err(TripleError::ContainmentFailed { witness: w.clone() });
        }
        Ok(kernel)
    }

    /// The linear part `Ker ad(e)` of the Slodowy slice, after checking the
    /// containment chain.
    pub fn slice_kernel(&self) -> Result<Subspace, TripleError> {
        self.containment_chain()
    }

    pub fn orbit_dimension(&self) -> usize {
        orbit_dimension(&self.algebra, &self.f).expect("f belongs to the algebra")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradings::Pyramid;
    use crate::liecore::Kind;

    fn sl(n: usize) -> Arc<LieAlgebra> {
        Arc::new(LieAlgebra::classical(Kind::A, n - 1).unwrap())
    }

    #[test]
    fn sl2_triple() {
        let g = sl(2);
        let f = g.elementary(2, 1).unwrap();
        let gr = Grading::from_diagonal(&g, &[1, -1]).unwrap();
        let (e, h) = complete_sl2_triple(&g, &f, &gr).unwrap();
        assert_eq!(e, g.elementary(1, 2).unwrap());
        assert_eq!(h, g.basis_element(g.index_of("H[1]").unwrap()));
    }

    #[test]
    fn sl4_rectangular_triple() {
        let g = sl(4);
        let f2 = g.elementary(2, 1).unwrap().add(&g.elementary(4, 3).unwrap());
        let gr = Grading::from_diagonal(&g, &[1, -1, 1, -1]).unwrap();
        let (e, h) = complete_sl2_triple(&g, &f2, &gr).unwrap();
        assert_eq!(e, g.elementary(1, 2).unwrap().add(&g.elementary(3, 4).unwrap()));
        let mut d = Matrix::zeros(4, 4);
        for (i, x) in [1, -1, 1, -1].iter().enumerate() {
            d.set(i, i, int(*x));
        }
        assert_eq!(h, g.element_from_matrix(&d).unwrap());
    }

    #[test]
    fn bigraded_precondition() {
        let g = sl(3);
        let f1 = g.elementary(2, 1).unwrap();
        let first = Grading::from_diagonal(&g, &[1, -1, 0]).unwrap();
        let second = Grading::from_diagonal(&g, &[3, 0, 0]).unwrap();
        assert!(matches!(
            complete_bigraded_triple(&g, &f1, &first, &second),
            Err(TripleError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn sl4_lagrangians() {
        let g = sl(4);
        let f = g.elementary(2, 1).unwrap();
        let gr = Grading::from_diagonal(&g, &[1, -1, 0, 0]).unwrap();
        let l = select_lagrangian(&g, &gr, &f).unwrap();
        assert_eq!(l, g.span_of_labels(&["E[1,3]", "E[1,4]"]).unwrap());
        let over = g.span_of_labels(&["E[1,4]", "E[3,2]"]).unwrap();
        let d = build_datum(g.clone(), f, gr, Some(over)).unwrap();
        assert_eq!(d.m, g.span_of_labels(&["E[1,2]", "E[1,4]", "E[3,2]"]).unwrap());
        let bad = g.span_of_labels(&["E[1,3]", "E[3,2]"]).unwrap();
        let gr = Grading::from_diagonal(&g, &[1, -1, 0, 0]).unwrap();
        assert!(matches!(
            build_datum(g.clone(), d.f.clone(), gr, Some(bad)),
            Err(TripleError::NotLagrangian(_))
        ));
    }

    #[test]
    fn hook_datum() {
        let g = sl(4);
        let (f, gr) = Pyramid::hook(4, 2).unwrap().to_datum(&g).unwrap();
        let d = build_datum(g.clone(), f, gr, None).unwrap();
        assert!(d.lagrangian.is_zero());
        assert_eq!(d.m, g.span_of_labels(&["E[1,2]", "E[1,3]", "E[1,4]"]).unwrap());
        assert_eq!(d.orbit_dimension(), 6);
    }

    #[test]
    fn slice_kernels() {
        let g = sl(2);
        let f = g.elementary(2, 1).unwrap();
        let gr = Grading::from_diagonal(&g, &[1, -1]).unwrap();
        let d = build_datum(g.clone(), f, gr, None).unwrap();
        assert_eq!(d.slice_kernel().unwrap(), g.span_of_labels(&["E[1,2]"]).unwrap());
    }

    #[test]
    fn so5_regular_datum() {
        let g = Arc::new(LieAlgebra::classical(Kind::B, 2).unwrap());
        let (f, gr) = Pyramid::orthogonal_regular(2).to_datum(&g).unwrap();
        let d = build_datum(g.clone(), f, gr, None).unwrap();
        assert_eq!(d.m.dim(), 4);
        let real = g.realization().unwrap();
        for b in d.m.basis() {
            let m = real.to_matrix(b);
            for r in 0..m.rows() {
                for c in 0..=r {
                    assert!(m.get(r, c).is_zero());
                }
            }
        }
    }
}
