//! Worked examples through the public API.

use formanifold::localforms::{
    constant_rank_check, kernel_surjectivity_certificate, local_section, morphism_to_jetmap,
    rank_normal_form, standardize, JetMap, Verdict,
};
use formanifold::morphism::{Morphism, RankTriple};
use formanifold::series::Fps;
use formanifold::submanifold::{level_set, make_slice, SliceSpec};
use formanifold::{rat, Matrix, Poly, Rational};

fn u(n: usize, k: usize, i: usize) -> Fps {
    Fps::smooth_var(n, k, 5, i).unwrap()
}
fn z(n: usize, k: usize, j: usize) -> Fps {
    Fps::formal_var(n, k, 5, j).unwrap()
}
fn pt(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x, 1)).collect()
}

fn immersion_not_constant() -> Morphism {
    Morphism::new(
        (1, 2),
        (2, 2),
        vec![u(1, 2, 0), z(1, 2, 0)],
        vec![u(1, 2, 0).try_mul(&z(1, 2, 0)).unwrap(), z(1, 2, 1)],
    )
    .unwrap()
}

fn submersion_not_constant() -> Morphism {
    let x2 = u(2, 2, 0)
        .try_mul(&u(2, 2, 1))
        .unwrap()
        .try_add(&z(2, 2, 0))
        .unwrap();
    Morphism::new((2, 2), (2, 1), vec![u(2, 2, 0), x2], vec![z(2, 2, 1)]).unwrap()
}

#[test]
fn taylor_expansion_along_a_slice() {
    let m = Morphism::new((1, 1), (2, 0), vec![u(1, 1, 0), z(1, 1, 0)], vec![]).unwrap();
    let f = Fps::smooth_var(2, 0, 5, 0)
        .unwrap()
        .try_mul(&Fps::smooth_var(2, 0, 5, 1).unwrap().pow(2))
        .unwrap();
    assert_eq!(
        m.pullback(&f).unwrap(),
        u(1, 1, 0).try_mul(&z(1, 1, 0).pow(2)).unwrap()
    );
    assert_eq!(
        m.rank_at(&pt(&[3])).unwrap(),
        RankTriple {
            total: 2,
            reduced: 1,
            formal: 0
        }
    );
    assert!(m.classify_at(&pt(&[3])).unwrap().bijective_differential);
}

#[test]
fn immersion_without_constant_rank() {
    let m = immersion_not_constant();
    let jac = m.jacobian();
    let c = |v: i64| Poly::constant(1, rat(v, 1));
    assert_eq!(jac.f, Matrix::from_rows(vec![vec![c(1)], vec![c(0)]], 1));
    assert_eq!(
        jac.g,
        Matrix::from_rows(vec![vec![c(0), c(0)], vec![c(1), c(0)]], 2)
    );
    assert_eq!(
        jac.h,
        Matrix::from_rows(
            vec![vec![Poly::var(1, 0).unwrap(), c(0)], vec![c(0), c(1)]],
            2
        )
    );
    assert_eq!(
        m.rank_at(&pt(&[0])).unwrap(),
        RankTriple {
            total: 3,
            reduced: 1,
            formal: 1
        }
    );
    assert_eq!(
        m.rank_at(&pt(&[2])).unwrap(),
        RankTriple {
            total: 3,
            reduced: 1,
            formal: 2
        }
    );
    let d = m.differential_at(&pt(&[0])).unwrap().entries;
    let expected = Matrix::from_rows(
        vec![
            pt(&[1, 0, 0]),
            pt(&[0, 1, 0]),
            pt(&[0, 0, 0]),
            pt(&[0, 0, 1]),
        ],
        3,
    );
    assert_eq!(d, expected);
    let cl = m.classify_at(&pt(&[0])).unwrap();
    assert!(cl.immersion && !cl.regular);
    assert!(!constant_rank_check(&m, &pt(&[0])).unwrap().constant);
}

#[test]
fn submersion_without_constant_rank() {
    let m = submersion_not_constant();
    for c in [0, 1] {
        let b = pt(&[0, c]);
        assert_eq!(m.underlying_point(&b).unwrap(), pt(&[0, 0]));
        let cl = m.classify_at(&b).unwrap();
        assert!(cl.submersion && !cl.regular);
        assert!(!constant_rank_check(&m, &b).unwrap().constant);
    }
    let j = morphism_to_jetmap(&m, &pt(&[0, 0]), 3).unwrap();
    assert_eq!(
        j.render_lines(),
        vec!["x1 = u1", "x2 = z1 + u1*u2", "y1 = z2"]
    );
}

#[test]
fn slice_is_constant_rank_and_certified() {
    let s = make_slice(SliceSpec::new(2, 1, 1, 0, 1).unwrap(), 4).unwrap();
    let r = constant_rank_check(&s, &pt(&[0])).unwrap();
    assert!(r.constant);
    assert_eq!(
        r.triple,
        RankTriple {
            total: 2,
            reduced: 1,
            formal: 0
        }
    );
    let cert = kernel_surjectivity_certificate(&s, &pt(&[0]), 4).unwrap();
    assert_eq!(cert.verdict, Verdict::SurjectiveAtOrder(4));
    let nf = rank_normal_form(&s, &pt(&[0]), 4).unwrap();
    let id_src = JetMap::identity((1, 1), pt(&[0, 0]), 4).unwrap();
    assert_eq!(nf.theta_src, id_src);
}

#[test]
fn parabola_pipeline() {
    let m = Morphism::new(
        (1, 1),
        (2, 1),
        vec![u(1, 1, 0), u(1, 1, 0).pow(2)],
        vec![z(1, 1, 0)],
    )
    .unwrap();
    let s = standardize(&m, &pt(&[0]), 4).unwrap();
    assert_eq!(
        s.triple,
        RankTriple {
            total: 2,
            reduced: 1,
            formal: 1
        }
    );
    assert_eq!(
        s.standardized.render_lines(),
        vec!["x1 = u1", "x2 = 0", "y1 = z1"]
    );
    let ls = level_set(&m, &pt(&[0, 0]), &pt(&[0]), 4).unwrap();
    assert_eq!(ls.dims, (0, 0));
}

#[test]
fn section_of_a_curved_submersion() {
    let x1 = u(2, 2, 0).try_add(&u(2, 2, 1).pow(2)).unwrap();
    let y1 = z(2, 2, 0).try_add(&z(2, 2, 1)).unwrap();
    let m = Morphism::new((2, 2), (1, 1), vec![x1], vec![y1]).unwrap();
    let b = pt(&[0, 0]);
    let psi = local_section(&m, &b, 4).unwrap();
    let phi = morphism_to_jetmap(&m, &b, 4).unwrap();
    let id = JetMap::identity((1, 1), pt(&[0, 0]), 4).unwrap();
    assert_eq!(JetMap::compose(&phi, &psi).unwrap(), id);
}

#[test]
fn graph_of_a_square_standardizes() -> formanifold::Result<()> {
    let u = Fps::smooth_var(1, 1, 6, 0)?;
    let z = Fps::formal_var(1, 1, 6, 0)?;
    let m = Morphism::new((1, 1), (2, 1), vec![u.clone(), u.pow(2)], vec![z])?;
    let s = standardize(&m, &[rat(0, 1)], 4)?;
    assert_eq!(s.standardized.render_lines(), ["x1 = u1", "x2 = 0", "y1 = z1"]);
    Ok(())
}
