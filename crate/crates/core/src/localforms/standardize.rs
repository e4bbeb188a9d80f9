use num_traits::Zero;

use crate::error::{Error, Obstruction, Result};
use crate::exactalg::{Poly, Rational};
use crate::morphism::{Morphism, RankTriple};

use super::{
    constant_rank_check, kernel_surjectivity_certificate, rank_normal_form, JetMap,
    KernelCertificate, Verdict,
};

#[derive(Debug, Clone, PartialEq)]
pub struct StandardizationResult {
    pub triple: RankTriple,
    /// Target chart change, from `(a, 0)` to the origin.
    pub theta_tgt: JetMap,
    /// Source chart change, from `(b, 0)` to the origin.
    pub theta_src: JetMap,
    /// `theta_tgt . phi_b . theta_src^{-1}`.
    pub standardized: JetMap,
    /// Largest degree up to which `standardized` matches the standard form.
    pub residual: usize,
    pub certificate: KernelCertificate,
}

impl StandardizationResult {
    pub fn r1(&self) -> usize {
        self.triple.reduced
    }
    pub fn r2(&self) -> usize {
        self.triple.mixed()
    }
    pub fn r3(&self) -> usize {
        self.triple.formal
    }
}

/// The standard form `(u_1..u_r1, 0, z_1..z_r2; z_{r2+1}..z_{r2+r3}, 0)` at
/// the origin.
pub fn standard_form(
    src: (usize, usize),
    tgt: (usize, usize),
    r: (usize, usize, usize),
    order: usize,
) -> Result<JetMap> {
    let (n1, k1) = src;
    let (n, k) = tgt;
    let (r1, r2, r3) = r;
    if r1 > n1 || r1 + r2 > n || r2 + r3 > k1 || r3 > k {
        return Err(Error::ShapeMismatch(format!(
            "ranks ({r1}, {r2}, {r3}) do not fit the dimensions"
        )));
    }
    let ms = n1 + k1;
    let var = |i| Poly::var(ms, i);
    let mut comps = Vec::with_capacity(n + k);
    for l in 0..r1 {
        comps.push(var(l)?);
    }
    for _ in r1..n - r2 {
        comps.push(Poly::zero(ms));
    }
    for m in 0..r2 {
        comps.push(var(n1 + m)?);
    }
    for m in 0..r3 {
        comps.push(var(n1 + r2 + m)?);
    }
    for _ in r3..k {
        comps.push(Poly::zero(ms));
    }
    JetMap::from_shifted(src, tgt, vec![Rational::zero(); ms], comps, order)
}

/// Chart changes at `b` bringing `m` to the standard form modulo degree
/// `order + 1`.
///
/// Requires constant rank and a kernel certificate without refutation.
/// After the normal form, each `g_i` and `h_j` must be a function of the
/// coordinates `u_1..u_r1, z_1..z_{r2+r3}` that are themselves images of
/// target coordinates; renaming those gives correction terms that are
/// subtracted in the target.
pub fn standardize(m: &Morphism, b: &[Rational], order: usize) -> Result<StandardizationResult> {
    let report = constant_rank_check(m, b)?;
    if !report.constant {
        return Err(Error::NotConstantRank(report.witness.unwrap_or_default()));
    }
    let certificate = kernel_surjectivity_certificate(m, b, order)?;
    if certificate.verdict == Verdict::NotSurjective {
        let w = certificate
            .witness()
            .expect("refuted certificate has a witness");
        return Err(Error::NotStandardizable(Box::new(
            Obstruction::KernelNotSurjective {
                witness: w.coeffs.clone(),
                label: w.label.clone(),
            },
        )));
    }
    let nf = rank_normal_form(m, b, order)?;
    let order = nf.conjugated.order();
    let (r1, r2, r3) = (nf.r1(), nf.r2(), nf.r3());
    let (n1, k1) = m.src();
    let (n, k) = m.tgt();
    let (ms, mt) = (n1 + k1, n + k);

    // source variable -> target variable it is the image of
    let mut rename = vec![usize::MAX; ms];
    for (l, slot) in rename.iter_mut().enumerate().take(r1) {
        *slot = l;
    }
    for mm in 0..r2 {
        rename[n1 + mm] = n - r2 + mm;
    }
    for mm in 0..r3 {
        rename[n1 + r2 + mm] = n + mm;
    }
    let allowed: Vec<usize> = (0..ms).filter(|&v| rename[v] != usize::MAX).collect();
    let to_target = |p: &Poly, name: String| -> Result<Poly> {
        if !p.only_uses(&allowed) {
            return Err(Error::NotStandardizable(Box::new(
                Obstruction::OutsideImage { component: name },
            )));
        }
        let map: Vec<usize> = rename
            .iter()
            .map(|&v| if v == usize::MAX { 0 } else { v })
            .collect();
        Ok(p.rename(mt, &map))
    };

    let polys = nf.conjugated.centered_polys();
    let mut theta2 = (0..mt)
        .map(|i| Poly::var(mt, i))
        .collect::<Result<Vec<_>>>()?;
    for i in r1..n - r2 {
        let g = to_target(&polys[i], format!("x{}", i + 1))?;
        theta2[i] = &theta2[i] - &g;
    }
    for j in r3..k {
        let name = format!("y{}", j + 1);
        let h = to_target(&polys[n + j], name.clone())?;
        let formal = h
            .terms()
            .all(|(mono, _)| mono.exps()[n..].iter().any(|&e| e > 0));
        if !formal {
            return Err(Error::NotStandardizable(Box::new(
                Obstruction::NonFormalCorrection { component: name },
            )));
        }
        theta2[n + j] = &theta2[n + j] - &h;
    }
    let zt = vec![Rational::zero(); mt];
    let theta2 = JetMap::from_shifted(m.tgt(), m.tgt(), zt, theta2, order)?;
    let standardized = JetMap::compose(&theta2, &nf.conjugated)?;
    let theta_tgt = JetMap::compose(&theta2, &nf.theta_tgt)?;
    let target = standard_form(m.src(), m.tgt(), (r1, r2, r3), order)?;
    let residual = standardized.agreement(&target).unwrap_or(0);
    Ok(StandardizationResult {
        triple: nf.triple,
        theta_tgt,
        theta_src: nf.theta_src,
        standardized,
        residual,
        certificate,
    })
}
