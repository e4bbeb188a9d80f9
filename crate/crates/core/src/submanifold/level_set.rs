use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{pq_string, Poly, Rational};
use crate::localforms::{
    jet_invert, morphism_to_jetmap, standardize, JetMap, StandardizationResult,
};
use crate::morphism::Morphism;
use crate::series::Jet;

#[derive(Debug, Clone, PartialEq)]
pub struct LevelSetResult {
    /// Smooth and formal dimensions of the fiber.
    pub dims: (usize, usize),
    /// Jet of the fiber inclusion, from the fiber chart origin to `(b, 0)`.
    pub embedding: JetMap,
    /// Pullbacks of `x_i - a_i` and `y_j`, as jets at `(b, 0)`.
    pub ideal_generators: Vec<Jet>,
    pub standardization: StandardizationResult,
}

/// The fiber of `m` over `a` near the source point `b`. In standard
/// coordinates the fiber is the slice where `u_1..u_r1` and
/// `z_1..z_{r2+r3}` vanish; the embedding is that slice pulled back
/// through the source chart change.
pub fn level_set(
    m: &Morphism,
    a: &[Rational],
    b: &[Rational],
    order: usize,
) -> Result<LevelSetResult> {
    let image = m.underlying_point(b)?;
    if image.as_slice() != a {
        return Err(Error::FiberMismatch {
            image: point_string(&image),
            value: point_string(a),
        });
    }
    let s = standardize(m, b, order)?;
    let order = s.standardized.order();
    let (r1, r2, r3) = (s.r1(), s.r2(), s.r3());
    let (n_src, k_src) = m.src();
    let dims = (n_src - r1, k_src - r2 - r3);
    let arity = dims.0 + dims.1;

    let mut comps = Vec::with_capacity(n_src + k_src);
    comps.extend((0..r1).map(|_| Ok(Poly::zero(arity))));
    comps.extend((0..dims.0).map(|i| Poly::var(arity, i)));
    comps.extend((0..r2 + r3).map(|_| Ok(Poly::zero(arity))));
    comps.extend((0..dims.1).map(|j| Poly::var(arity, dims.0 + j)));
    let comps = comps.into_iter().collect::<Result<Vec<_>>>()?;
    let zeta = JetMap::from_shifted(dims, m.src(), vec![Rational::zero(); arity], comps, order)?;
    let embedding = JetMap::compose(&jet_invert(&s.theta_src, order)?, &zeta)?;

    let phi = morphism_to_jetmap(m, b, order)?;
    let ideal_generators = phi.components().iter().map(Jet::centered).collect();
    Ok(LevelSetResult {
        dims,
        embedding,
        ideal_generators,
        standardization: s,
    })
}

fn point_string(p: &[Rational]) -> String {
    p.iter().map(pq_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::series::Fps;

    fn u(n: usize, k: usize, i: usize) -> Fps {
        Fps::smooth_var(n, k, 6, i).unwrap()
    }
    fn z(n: usize, k: usize, j: usize) -> Fps {
        Fps::formal_var(n, k, 6, j).unwrap()
    }
    fn zeros(n: usize) -> Vec<Rational> {
        vec![rat(0, 1); n]
    }

    fn fiber_is_constant(m: &Morphism, ls: &LevelSetResult, a: &[Rational], order: usize) -> bool {
        let phi = morphism_to_jetmap(m, ls.embedding.tgt_base().get(..m.src().0).unwrap(), order)
            .unwrap();
        let comp = JetMap::compose(&phi, &ls.embedding).unwrap();
        comp.components()
            .iter()
            .zip(a.iter().chain(std::iter::repeat(&rat(0, 1))))
            .all(|(c, v)| c.shifted().degree().unwrap_or(0) == 0 && &c.value() == v)
    }

    #[test]
    fn projection_fiber() {
        let m = Morphism::new((2, 2), (1, 1), vec![u(2, 2, 0)], vec![z(2, 2, 0)]).unwrap();
        let ls = level_set(&m, &zeros(1), &zeros(2), 4).unwrap();
        assert_eq!(ls.dims, (1, 1));
        assert_eq!(
            ls.embedding.render_lines(),
            vec!["x1 = 0", "x2 = u1", "y1 = 0", "y2 = z1"]
        );
        assert!(fiber_is_constant(&m, &ls, &zeros(1), 4));
        assert_eq!(ls.ideal_generators.len(), 2);
    }

    #[test]
    fn identity_fiber_is_a_point() {
        let m = Morphism::identity(2, 1, 4);
        let a = vec![rat(1, 2), rat(-3, 1)];
        let ls = level_set(&m, &a, &a, 4).unwrap();
        assert_eq!(ls.dims, (0, 0));
        assert!(fiber_is_constant(&m, &ls, &a, 4));
    }

    #[test]
    fn parabola_fiber_is_a_point() {
        let m = Morphism::new(
            (1, 1),
            (2, 1),
            vec![u(1, 1, 0), u(1, 1, 0).pow(2)],
            vec![z(1, 1, 0)],
        )
        .unwrap();
        let ls = level_set(&m, &zeros(2), &zeros(1), 4).unwrap();
        assert_eq!(
            (
                ls.standardization.r1(),
                ls.standardization.r2(),
                ls.standardization.r3()
            ),
            (1, 0, 1)
        );
        assert_eq!(ls.dims, (0, 0));
    }

    #[test]
    fn curved_fiber() {
        // x1 = u1 + u2^2 near (1, 1): the fiber over 2 is a curve
        let x1 = u(2, 1, 0).try_add(&u(2, 1, 1).pow(2)).unwrap();
        let m = Morphism::new((2, 1), (1, 0), vec![x1], vec![]).unwrap();
        let a = vec![rat(2, 1)];
        let ls = level_set(&m, &a, &[rat(1, 1), rat(1, 1)], 5).unwrap();
        assert_eq!(ls.dims, (1, 1));
        assert!(fiber_is_constant(&m, &ls, &a, 5));
        assert_eq!(ls.embedding.linear_part().rank(), 2);
    }

    #[test]
    fn wrong_fiber() {
        let m = Morphism::identity(1, 0, 4);
        let err = level_set(&m, &[rat(1, 1)], &[rat(0, 1)], 4).unwrap_err();
        assert_eq!(
            err,
            Error::FiberMismatch {
                image: "0/1".into(),
                value: "1/1".into()
            }
        );
    }
}
