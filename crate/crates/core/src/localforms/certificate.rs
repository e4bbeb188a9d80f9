use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{monomial_images, render_terms, Matrix, Monomial, Poly, Rational};
use crate::morphism::{component_names, Morphism};
use crate::series::Jet;

use super::{morphism_to_jetmap, JetMap};

/// Largest allowed side of the truncated pullback matrix.
pub const DEFAULT_MATRIX_CAP: usize = 5000;

#[derive(Debug, Clone, PartialEq)]
pub enum Lift {
    /// An element of the truncated kernel whose linear part is the vector.
    Lifted(Jet),
    /// No element of the truncated kernel has this linear part. Since true
    /// kernel elements truncate into the truncated kernel, this is a proof.
    NotLiftable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelVector {
    /// Coefficients on `x1..xn, y1..yk`.
    pub coeffs: Vec<Rational>,
    /// The linear form, e.g. `y1 - 2*x1`.
    pub label: String,
    pub lift: Lift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Every degree-2 kernel vector lifts at this order. Evidence only.
    SurjectiveAtOrder(usize),
    /// Some vector does not lift. Conclusive.
    NotSurjective,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelCertificate {
    pub order: usize,
    /// Dimension of the kernel of the induced map `m/m^2 -> m'/m'^2`.
    pub dim_ker_deg2: usize,
    /// Dimension of the kernel of the truncated pullback.
    pub dim_truncated_kernel: usize,
    pub vectors: Vec<KernelVector>,
    pub verdict: Verdict,
}

impl KernelCertificate {
    /// First vector without a lift.
    pub fn witness(&self) -> Option<&KernelVector> {
        self.vectors.iter().find(|v| v.lift == Lift::NotLiftable)
    }
}

/// Matrix of the pullback `m_a/m_a^(s+1) -> m_b/m_b^(s+1)` on monomial
/// bases (degrees `1..=s`, graded order), together with both bases.
pub fn truncated_pullback_matrix(
    j: &JetMap,
    s: usize,
    cap: usize,
) -> Result<(Matrix<Rational>, Vec<Monomial>, Vec<Monomial>)> {
    let (mt, ms) = (j.tgt_arity(), j.src_arity());
    if s > j.order() {
        return Err(Error::OrderTooSmall {
            order: j.order(),
            min: s,
        });
    }
    let dom_len = binomial(mt + s, s) - 1;
    let cod_len = binomial(ms + s, s) - 1;
    if dom_len > cap || cod_len > cap {
        return Err(Error::LimitExceeded(format!(
            "truncated pullback would be {cod_len} x {dom_len}, above the cap {cap}"
        )));
    }
    let dom = Monomial::all_in_degrees(mt, 1, s);
    let cod = Monomial::all_in_degrees(ms, 1, s);
    let zero_base = vec![Rational::zero(); ms];
    let args: Vec<Jet> = j
        .centered_polys()
        .into_iter()
        .map(|p| Jet::from_shifted(zero_base.clone(), s, p))
        .collect::<Result<_>>()?;
    let proto = Jet::zero(zero_base, s);
    let images = monomial_images(&dom, &args, &proto);
    let index: std::collections::HashMap<&Monomial, usize> =
        cod.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = Matrix::zeros(cod.len(), dom.len());
    for (col, img) in images.iter().enumerate() {
        for (mono, c) in img.shifted().terms() {
            if let Some(&row) = index.get(mono) {
                mat.set(row, col, c.clone());
            }
        }
    }
    Ok((mat, dom, cod))
}

/// Whether the degree-`s` truncated pullback at `b` is onto.
pub fn truncated_pullback_surjective(m: &Morphism, b: &[Rational], s: usize) -> Result<bool> {
    let j = morphism_to_jetmap(m, b, s)?;
    let (mat, _, cod) = truncated_pullback_matrix(&j, s, DEFAULT_MATRIX_CAP)?;
    Ok(mat.rank() == cod.len())
}

pub fn kernel_surjectivity_certificate(
    m: &Morphism,
    b: &[Rational],
    order: usize,
) -> Result<KernelCertificate> {
    kernel_surjectivity_certificate_with_cap(m, b, order, DEFAULT_MATRIX_CAP)
}

/// Tries to lift every basis vector of the degree-2 kernel to the kernel
/// of the pullback truncated at `order`.
pub fn kernel_surjectivity_certificate_with_cap(
    m: &Morphism,
    b: &[Rational],
    order: usize,
    cap: usize,
) -> Result<KernelCertificate> {
    if order < 2 {
        return Err(Error::OrderTooSmall { order, min: 2 });
    }
    let j = morphism_to_jetmap(m, b, order)?;
    let order = j.order();
    if order < 2 {
        return Err(Error::OrderTooSmall { order, min: 2 });
    }
    let mt = j.tgt_arity();
    let (mat, dom, _) = truncated_pullback_matrix(&j, order, cap)?;
    let kernel = mat.nullspace();
    // linear parts of the kernel basis; the first mt domain monomials are
    // the coordinates in order
    let proj = Matrix::from_fn(mt, kernel.len(), |i, c| kernel[c][i].clone());
    let deg2 = j.linear_part().transpose().nullspace();
    let names = component_names(m.tgt());
    let mut vectors = Vec::with_capacity(deg2.len());
    for v in &deg2 {
        let label = render_terms(
            v.iter()
                .zip(&names)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, n)| (Some(n.clone()), c)),
        );
        let lift = match proj.solve(v) {
            None => Lift::NotLiftable,
            Some(coef) => {
                let mut poly = Poly::zero(mt);
                for (c, kv) in coef.iter().zip(&kernel) {
                    if c.is_zero() {
                        continue;
                    }
                    for (mono, x) in dom.iter().zip(kv) {
                        if !x.is_zero() {
                            poly = &poly + &Poly::monomial(mono.clone(), c * x);
                        }
                    }
                }
                Lift::Lifted(Jet::from_shifted(j.tgt_base().to_vec(), order, poly)?)
            }
        };
        vectors.push(KernelVector {
            coeffs: v.clone(),
            label,
            lift,
        });
    }
    let verdict = if vectors.iter().any(|v| v.lift == Lift::NotLiftable) {
        Verdict::NotSurjective
    } else {
        Verdict::SurjectiveAtOrder(order)
    };
    Ok(KernelCertificate {
        order,
        dim_ker_deg2: deg2.len(),
        dim_truncated_kernel: kernel.len(),
        vectors,
        verdict,
    })
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
