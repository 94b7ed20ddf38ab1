//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use slodowy_core::catalog::*;
use slodowy_core::exactlin::{frac, int, is_direct_sum, vector, Matrix, Ratio, Subspace};
use slodowy_core::gradings::is_good_for;
use slodowy_core::liecore::{Kind, LieAlgebra};
use slodowy_core::stagecert::*;
use slodowy_core::triples::{complete_bigraded_triple, triple_residuals, NilpotentDatum};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pass_all(specs: &[FamilySpec]) -> Result<Vec<StagePair>, String> {
    let mut pairs = Vec::new();
    for spec in specs {
        let pair = instantiate(spec).map_err(|e| format!("{spec:?}: {e}"))?;
        let cert = certify(&pair);
        ensure(cert.verdict == Status::Pass, || render_text(&cert))?;
        pairs.push(pair);
    }
    Ok(pairs)
}

fn hook_coverage() -> Outcome {
    let mut specs = Vec::new();
    for n in 2..=6 {
        specs.extend(enumerate_hook_pairs(n).map_err(|e| e.to_string())?);
    }
    ensure(specs.len() == 35, || format!("{} hook pairs", specs.len()))?;
    let report = run_specs(&specs);
    ensure(report.summary.pass == 35, || report.render_text())?;
    Ok("35/35 hook pairs PASS".into())
}

fn sl4_pair() -> Outcome {
    let pair = pass_all(&[FamilySpec::sl4()])?.remove(0);
    let g = pair.algebra();
    let m1 = span_pairs(g, &[(1, 2), (1, 4), (3, 2)]);
    let m2 = span_pairs(g, &[(1, 2), (1, 4), (3, 2), (3, 4)]);
    ensure(pair.first.m == m1, || "m1 differs from the displayed pattern".into())?;
    ensure(pair.second.m == m2, || "m2 differs from the displayed pattern".into())?;
    let m0 = derive_m0(&pair).map_err(|e| e.to_string())?;
    ensure(m0 == span_pairs(g, &[(3, 4)]), || "m0 is not span{E[3,4]}".into())?;
    Ok("PASS, m0 = span{E[3,4]}, m1 star pattern exact".into())
}

fn type_b() -> Outcome {
    let pairs = pass_all(&(2..=4).map(FamilySpec::type_b).collect::<Vec<_>>())?;
    for (pair, r) in pairs.iter().zip(2..) {
        let g = pair.algebra();
        ensure(2 * pair.second.m.dim() == g.dim() - r, || format!("r={r}: dim m2 = {}", pair.second.m.dim()))?;
    }
    Ok("r = 2, 3, 4 PASS with dim m2 = (dim g - r)/2".into())
}

fn type_c() -> Outcome {
    pass_all(&[FamilySpec::type_c(3), FamilySpec::type_c(4)])?;
    Ok("r = 3, 4 PASS".into())
}

fn check_datum(d: &NilpotentDatum) -> Result<(), String> {
    let g = &d.algebra;
    let err = |e: &dyn std::fmt::Display| e.to_string();
    ensure(is_good_for(g, &d.grading, &d.f).map_err(|e| err(&e))?.is_none(), || "grading not good".into())?;
    let mm = g.bracket_span(&d.m, &d.m).map_err(|e| err(&e))?;
    for y in mm.basis() {
        ensure(g.form_coords(d.f.coords(), y) == int(0), || "(f|[m,m]) != 0".into())?;
    }
    let centralizer = g.centralizer(&d.f).map_err(|e| err(&e))?;
    ensure(2 * d.m.dim() == g.dim() - centralizer.dim(), || "half-dimension".into())?;
    let kernel = g.centralizer(&d.e).map_err(|e| err(&e))?;
    let nonneg = d.grading.at_least(0);
    let m_perp = d.m.orth_complement(g.form()).map_err(|e| err(&e))?;
    ensure(nonneg.contains_subspace(&kernel), || "Ker ad e not in g_{>=0}".into())?;
    ensure(m_perp.contains_subspace(&nonneg), || "g_{>=0} not in m-perp".into())?;
    let mf = g.bracket_with(&d.m, &d.f).map_err(|e| err(&e))?;
    ensure(is_direct_sum(&[&mf, &kernel], &m_perp).map_err(|e| err(&e))?, || "transversality".into())?;
    Ok(())
}

fn single_datum_invariants() -> Outcome {
    let mut count = 0;
    for spec in default_catalog() {
        let pair = instantiate(&spec).map_err(|e| e.to_string())?;
        for d in [&pair.first, &pair.second] {
            check_datum(d).map_err(|e| format!("{}: {e}", pair.description))?;
            count += 1;
        }
    }
    Ok(format!("{count} catalog data satisfy all invariants"))
}

fn passing_pairs() -> Result<Vec<StagePair>, String> {
    let mut out = Vec::new();
    for spec in default_catalog() {
        let pair = instantiate(&spec).map_err(|e| e.to_string())?;
        if certify(&pair).verdict == Status::Pass {
            out.push(pair);
        }
    }
    Ok(out)
}

fn decomposition() -> Outcome {
    let pairs = passing_pairs()?;
    for pair in &pairs {
        let g = pair.algebra();
        let m0 = derive_m0(pair).map_err(|e| e.to_string())?;
        let (e1, _) = complete_bigraded_triple(g, &pair.first.f, &pair.first.grading, &pair.second.grading)
            .map_err(|e| e.to_string())?;
        let kernel = g.centralizer(&e1).map_err(|e| e.to_string())?;
        let slice = kernel.intersect(&m0.orth_complement(g.form()).unwrap()).unwrap();
        let m1f2 = g.bracket_with(&pair.first.m, &pair.second.f).unwrap();
        let m2_perp = pair.second.m.orth_complement(g.form()).unwrap();
        ensure(is_direct_sum(&[&m1f2, &slice], &m2_perp).unwrap(), || pair.description.clone())?;
    }
    Ok(format!("exact on all {} passing pairs", pairs.len()))
}

fn kazhdan() -> Outcome {
    let pairs = passing_pairs()?;
    for pair in &pairs {
        let m0 = derive_m0(pair).map_err(|e| e.to_string())?;
        let (b, degrees) = kazhdan_complement(pair, &m0).map_err(|e| e.to_string())?;
        let centralizer = pair.algebra().centralizer(&pair.first.f).unwrap();
        ensure(b.dim() + m0.dim() == centralizer.dim(), || pair.description.clone())?;
        ensure(degrees.iter().all(|&d| d >= 1), || format!("{}: {degrees:?}", pair.description))?;
    }
    // sl4: centralizer of e_21 by commuting elementary matrices, minus e_34
    let n = 4;
    let f = unit_matrix(n, 2, 1);
    let h2 = [1i64, -1, 1, -1];
    let mut oracle = vec![2, 2];
    for a in 1..=n {
        for b in 1..=n {
            if a != b && (a, b) != (3, 4) && commutator(&unit_matrix(n, a, b), &f).is_zero() {
                oracle.push(2 - (h2[a - 1] - h2[b - 1]));
            }
        }
    }
    oracle.sort_unstable();
    let pair = instantiate(&FamilySpec::sl4()).unwrap();
    let (_, degrees) = kazhdan_complement(&pair, &derive_m0(&pair).unwrap()).unwrap();
    ensure(degrees == oracle, || format!("{degrees:?} vs {oracle:?}"))?;
    Ok(format!("{} passing pairs, sl4 degrees {degrees:?}", pairs.len()))
}

fn negative_controls() -> Outcome {
    for pair in [
        reversed_hook(4, 3, 2).map_err(|e| e.to_string())?,
        sl3_regular_minimal().map_err(|e| e.to_string())?,
    ] {
        let cert = certify(&pair);
        ensure(cert.verdict == Status::Fail, || format!("{} passed", pair.description))?;
        let first = cert.first_failure().unwrap();
        ensure(first.name.starts_with('H') && first.witness.is_some(), || first.name.clone())?;
        for c in &cert.checks {
            let consequence = c.name.starts_with('G') || c.name.starts_with('Q');
            ensure(!(consequence && c.status == Status::Pass), || c.name.clone())?;
        }
    }
    Ok("both FAIL on H1a with a vector witness".into())
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Matrix {
    let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
    let rational = |rng: &mut ChaCha8Rng| frac(rng.gen_range(-4..=4), rng.gen_range(1..=3));
    if rng.gen_bool(0.5) {
        let rows = (0..r).map(|_| (0..c).map(|_| rational(rng)).collect()).collect();
        return Matrix::from_rows(rows, c).unwrap();
    }
    // a product of thin factors has low rank
    let k = rng.gen_range(0..=r.min(c));
    let a = Matrix::from_rows((0..r).map(|_| (0..k).map(|_| rational(rng)).collect()).collect(), k).unwrap();
    let b = Matrix::from_rows((0..k).map(|_| (0..c).map(|_| rational(rng)).collect()).collect(), c).unwrap();
    a.mul(&b).unwrap()
}

fn infrastructure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    for i in 0..200 {
        let m = random_matrix(&mut rng);
        let kernel = m.nullspace();
        ensure(m.rank() + kernel.dim() == m.cols(), || format!("rank-nullity on matrix {i}"))?;
        for v in kernel.basis() {
            ensure(vector::is_zero(&m.mul_vec(v).unwrap()), || format!("kernel of matrix {i}"))?;
        }
    }
    let mut algebras = Vec::new();
    for n in 2..=7 {
        algebras.push(LieAlgebra::classical(Kind::A, n - 1).unwrap());
    }
    for r in 2..=4 {
        algebras.push(LieAlgebra::classical(Kind::B, r).unwrap());
    }
    for r in 3..=4 {
        algebras.push(LieAlgebra::classical(Kind::C, r).unwrap());
    }
    for g in &algebras {
        g.check_jacobi().map_err(|e| format!("{}: {e}", g.name()))?;
        g.check_form_invariance().map_err(|e| format!("{}: {e}", g.name()))?;
        g.check_form_nondegenerate().map_err(|e| format!("{}: {e}", g.name()))?;
    }
    for g in algebras.iter().filter(|g| g.dim() <= 21) {
        for _ in 0..10 {
            let k = rng.gen_range(0..=g.dim());
            let vecs: Vec<Vec<Ratio>> = (0..k)
                .map(|_| (0..g.dim()).map(|_| int(rng.gen_range(-2..=2))).collect())
                .collect();
            let u = Subspace::span(g.dim(), vecs).unwrap();
            let back = u.orth_complement(g.form()).unwrap().orth_complement(g.form()).unwrap();
            ensure(back == u, || format!("double complement in {}", g.name()))?;
        }
    }
    let mut triples = 0;
    let mut check = |d: &NilpotentDatum| -> Result<(), String> {
        for r in triple_residuals(&d.algebra, &d.e, &d.h, &d.f) {
            ensure(vector::is_zero(&r), || "nonzero residual".into())?;
        }
        triples += 1;
        Ok(())
    };
    for spec in default_catalog() {
        let pair = instantiate(&spec).unwrap();
        for d in [&pair.first, &pair.second] {
            check(d)?;
        }
        let g = pair.algebra();
        if let Ok((e1, h1)) = complete_bigraded_triple(g, &pair.first.f, &pair.first.grading, &pair.second.grading) {
            for r in triple_residuals(g, &e1, &h1, &pair.first.f) {
                ensure(vector::is_zero(&r), || "nonzero bigraded residual".into())?;
            }
        }
    }
    for d in search_data(4, 4).map_err(|e| e.to_string())? {
        check(&d.datum)?;
    }
    Ok(format!(
        "200 matrices, {} algebras up to sl7/so9/sp8, {triples} triples exact",
        algebras.len()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("hook coverage", hook_coverage),
        ("sl4 rectangular/minimal pair", sl4_pair),
        ("type B subregular -> regular", type_b),
        ("type C (2^2,1^(2r-4)) -> regular", type_c),
        ("single-datum invariants", single_datum_invariants),
        ("decomposition of m2-perp", decomposition),
        ("Kazhdan non-negativity", kazhdan),
        ("negative controls", negative_controls),
        ("infrastructure properties", infrastructure),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
