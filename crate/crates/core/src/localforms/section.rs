use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{Poly, Rational};
use crate::morphism::Morphism;

use super::{jet_invert, rank_normal_form, JetMap};

/// A jet `psi` at `a = phi(b)` with `phi_b . psi = id` modulo degree
/// `order + 1`, for a regular submersion at `b`. In normal coordinates the
/// morphism is a coordinate projection and the section pads with zeros.
pub fn local_section(m: &Morphism, b: &[Rational], order: usize) -> Result<JetMap> {
    let c = m.classify_at(b)?;
    if !(c.regular && c.submersion) {
        return Err(Error::NotRegularSubmersion);
    }
    let nf = rank_normal_form(m, b, order)?;
    let order = nf.conjugated.order();
    let (n1, k1) = m.src();
    let (n, k) = m.tgt();
    let mt = n + k;
    let mut comps = Vec::with_capacity(n1 + k1);
    for i in 0..n1 {
        comps.push(if i < n {
            Poly::var(mt, i)?
        } else {
            Poly::zero(mt)
        });
    }
    for j in 0..k1 {
        comps.push(if j < k {
            Poly::var(mt, n + j)?
        } else {
            Poly::zero(mt)
        });
    }
    let pad = JetMap::from_shifted(m.tgt(), m.src(), vec![Rational::zero(); mt], comps, order)?;
    let back = jet_invert(&nf.theta_src, order)?;
    JetMap::compose(&back, &JetMap::compose(&pad, &nf.theta_tgt)?)
}
