use crate::error::{Error, Result};
use crate::exactalg::Poly;
use crate::morphism::Morphism;
use crate::series::Fps;

/// The map `m^r/m^(r+1) -> m'^r/m'^(r+1)` induced by `m`: each term
/// `f_J y^J` goes to `phi*(f_J) H(z)^J`, where `phi*` is the reduced
/// pullback and `H(z_j) = sum_l h_{jl} z_l` uses the linear formal block.
/// `f` must be homogeneous of formal degree `r`.
pub fn graded_component_map(m: &Morphism, r: usize, f: &Fps) -> Result<Fps> {
    if (f.n_smooth(), f.k_formal()) != m.tgt() {
        return Err(Error::ShapeMismatch(format!(
            "element over ({}, {}) for a morphism into ({}, {})",
            f.n_smooth(),
            f.k_formal(),
            m.tgt().0,
            m.tgt().1
        )));
    }
    if let Some((j, _)) = f.coeffs().find(|(j, _)| j.degree() != r) {
        return Err(Error::GradeMismatch {
            expected: r,
            found: j.degree(),
        });
    }
    let (n1, k1) = m.src();
    let reduced: Vec<Poly> = m.cx().iter().map(Fps::constant_part).collect();
    let h = m.jacobian().h;
    let hz: Vec<Fps> = (0..m.tgt().1)
        .map(|j| {
            let mut acc = Fps::zero(n1, k1, r);
            for l in 0..k1 {
                let term = Fps::from_poly(h.get(j, l).clone(), k1, r)
                    .try_mul(&Fps::formal_var(n1, k1, r, l)?)?;
                acc = acc.try_add(&term)?;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut out = Fps::zero(n1, k1, r);
    for (jm, coeff) in f.coeffs() {
        let pulled = if reduced.is_empty() {
            Poly::constant(n1, coeff.constant_term())
        } else {
            coeff.subst(&reduced)?
        };
        let mut term = Fps::from_poly(pulled, k1, r);
        for (j, &e) in jm.exps().iter().enumerate() {
            term = term.try_mul(&hz[j].pow(e))?;
        }
        out = out.try_add(&term)?;
    }
    Ok(out.formal_component(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(j: usize) -> Fps {
        Fps::formal_var(1, 2, 4, j).unwrap()
    }

    #[test]
    fn product_of_linear_forms() {
        let m = Morphism::new(
            (1, 2),
            (0, 2),
            vec![],
            vec![z(0), z(0).try_add(&z(1)).unwrap()],
        )
        .unwrap();
        let f = Fps::formal_var(0, 2, 4, 0)
            .unwrap()
            .try_mul(&Fps::formal_var(0, 2, 4, 1).unwrap())
            .unwrap();
        let out = graded_component_map(&m, 2, &f).unwrap();
        assert_eq!(
            out,
            z(0).pow(2)
                .try_add(&z(0).try_mul(&z(1)).unwrap())
                .unwrap()
                .truncate(2)
        );
    }

    #[test]
    fn identity_and_degree_zero() {
        let id = Morphism::identity(1, 2, 4);
        let f = Fps::smooth_var(1, 2, 4, 0)
            .unwrap()
            .try_mul(&Fps::formal_var(1, 2, 4, 1).unwrap())
            .unwrap();
        assert_eq!(graded_component_map(&id, 1, &f).unwrap(), f.truncate(1));
        let u = Fps::smooth_var(1, 0, 4, 0).unwrap();
        let m = Morphism::new((1, 0), (1, 0), vec![u.pow(2)], vec![]).unwrap();
        let out = graded_component_map(&m, 0, &u.pow(3)).unwrap();
        assert_eq!(out.constant_part(), Poly::var(1, 0).unwrap().pow(6));
    }

    #[test]
    fn mixed_degrees_are_rejected() {
        let id = Morphism::identity(0, 1, 3);
        let y = Fps::formal_var(0, 1, 3, 0).unwrap();
        let f = y.try_add(&y.pow(2)).unwrap();
        assert_eq!(
            graded_component_map(&id, 1, &f),
            Err(Error::GradeMismatch {
                expected: 1,
                found: 2
            })
        );
    }
}
