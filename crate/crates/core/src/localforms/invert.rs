use crate::error::{Error, Result};
use crate::exactalg::{Poly, Rational};
use crate::series::Jet;

use super::JetMap;

/// Inverse of a jet map with invertible linear part, correct modulo
/// degree `order + 1`.
///
/// Writing the centered map as `P(s) = A s + ...`, the inverse `Q(w)`
/// starts at `A^{-1} w`; at degree `d` the error `E_d` of `P(Q)` is removed
/// by `Q_d = -A^{-1} E_d`.
pub fn jet_invert(j: &JetMap, order: usize) -> Result<JetMap> {
    let m = j.src_arity();
    if m != j.tgt_arity() {
        return Err(Error::ShapeMismatch(format!(
            "cannot invert a map from {} to {} variables",
            m,
            j.tgt_arity()
        )));
    }
    let order = order.min(j.order());
    let a_inv = j
        .linear_part()
        .inverse()
        .ok_or(Error::SingularDifferential)?;
    let zero_base = vec![Rational::from_integer(0.into()); m];
    let centered: Vec<Jet> = j
        .centered_polys()
        .into_iter()
        .map(|p| Jet::from_shifted(zero_base.clone(), order, p))
        .collect::<Result<_>>()?;

    let w: Vec<Poly> = (0..m).map(|i| Poly::var(m, i)).collect::<Result<_>>()?;
    let mut q: Vec<Poly> = (0..m).map(|i| combine(&a_inv, i, &w)).collect();
    for d in 2..=order {
        let args: Vec<Jet> = q
            .iter()
            .map(|p| Jet::from_shifted(zero_base.clone(), d, p.clone()))
            .collect::<Result<_>>()?;
        let err: Vec<Poly> = centered
            .iter()
            .map(|c| {
                c.truncate(d)
                    .subst_at(&args, &zero_base, d)
                    .map(|r| r.homogeneous(d))
            })
            .collect::<Result<_>>()?;
        for (i, qi) in q.iter_mut().enumerate() {
            *qi = &*qi - &combine(&a_inv, i, &err);
        }
    }
    let comps: Vec<Poly> = q
        .into_iter()
        .zip(j.src_base())
        .map(|(p, b)| &p + &Poly::constant(m, b.clone()))
        .collect();
    JetMap::from_shifted(j.tgt(), j.src(), j.tgt_base().to_vec(), comps, order)
}

/// Row `i` of `mat` applied to a vector of polynomials.
fn combine(mat: &crate::exactalg::Matrix<Rational>, i: usize, v: &[Poly]) -> Poly {
    let arity = v.first().map(Poly::arity).unwrap_or(0);
    let mut acc = Poly::zero(arity);
    for (c, p) in mat.row(i).iter().zip(v) {
        acc = &acc + &p.scale(c);
    }
    acc
}
