use crate::error::{Error, Result};
use num_traits::One;

use crate::exactalg::{Monomial, Poly, Rational};
use crate::morphism::{Morphism, RankTriple};
use crate::series::Fps;

/// The slice `(N')^(k') -> N^(k)`: `x_1..x_n'` restrict to `u`, the middle
/// smooth coordinates vanish, the last `r` smooth coordinates become
/// `z_1..z_r`, and `y_1..y_{k'-r}` become `z_{r+1}..z_k'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SliceSpec {
    pub n: usize,
    pub n_src: usize,
    pub r: usize,
    pub k: usize,
    pub k_src: usize,
}

impl SliceSpec {
    pub fn new(n: usize, n_src: usize, r: usize, k: usize, k_src: usize) -> Result<Self> {
        let spec = SliceSpec {
            n,
            n_src,
            r,
            k,
            k_src,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let SliceSpec {
            n,
            n_src,
            r,
            k,
            k_src,
        } = *self;
        if n_src > n || r > n - n_src {
            return Err(Error::ConstraintViolation(format!(
                "r = {r} exceeds n - n' = {n} - {n_src}"
            )));
        }
        if r > k_src {
            return Err(Error::ConstraintViolation(format!(
                "r = {r} exceeds k' = {k_src}"
            )));
        }
        if k_src - r > k {
            return Err(Error::ConstraintViolation(format!(
                "k' - r = {} exceeds k = {k}",
                k_src - r
            )));
        }
        Ok(())
    }

    pub fn src(&self) -> (usize, usize) {
        (self.n_src, self.k_src)
    }

    pub fn tgt(&self) -> (usize, usize) {
        (self.n, self.k)
    }

    pub fn triple(&self) -> RankTriple {
        RankTriple {
            total: self.n_src + self.k_src,
            reduced: self.n_src,
            formal: self.k_src - self.r,
        }
    }

    fn check_target(&self, f: &Fps) -> Result<()> {
        if (f.n_smooth(), f.k_formal()) != self.tgt() {
            return Err(Error::ShapeMismatch(format!(
                "function over ({}, {}) on a slice target ({}, {})",
                f.n_smooth(),
                f.k_formal(),
                self.n,
                self.k
            )));
        }
        Ok(())
    }
}

pub fn make_slice(spec: SliceSpec, order: usize) -> Result<Morphism> {
    spec.validate()?;
    let SliceSpec {
        n,
        n_src,
        r,
        k,
        k_src,
    } = spec;
    let u = |i| Fps::smooth_var(n_src, k_src, order, i);
    let z = |j| Fps::formal_var(n_src, k_src, order, j);
    let zero = || Fps::zero(n_src, k_src, order);
    let mut cx = Vec::with_capacity(n);
    for i in 0..n_src {
        cx.push(u(i)?);
    }
    cx.extend((n_src..n - r).map(|_| zero()));
    for j in 0..r {
        cx.push(z(j)?);
    }
    let mut cy = Vec::with_capacity(k);
    for j in r..k_src {
        cy.push(z(j)?);
    }
    cy.extend((k_src - r..k).map(|_| zero()));
    Morphism::new(spec.src(), spec.tgt(), cx, cy)
}

/// Pullback along the slice by Taylor expansion in the last `r` smooth
/// coordinates: `f_J` contributes `(1/I!) d^I f_J (u, 0, 0) z^(I, J)`.
pub fn slice_pullback(spec: SliceSpec, f: &Fps) -> Result<Fps> {
    spec.validate()?;
    spec.check_target(f)?;
    let SliceSpec {
        n, n_src, r, k_src, ..
    } = spec;
    let order = f.valid_order().ok_or(Error::PrecisionExhausted)?;
    let mut out = Vec::new();
    for (jm, p) in f.coeffs() {
        let jx = jm.exps();
        // formal variables past k' - r go to zero
        if jx[k_src - r..].iter().any(|&e| e > 0) || jm.degree() > order {
            continue;
        }
        let mut multis: Vec<Vec<u32>> =
            p.terms().map(|(m, _)| m.exps()[n - r..].to_vec()).collect();
        multis.sort();
        multis.dedup();
        for multi in multis {
            let deg: u32 = multi.iter().sum();
            if jm.degree() + deg as usize > order {
                continue;
            }
            let mut full = vec![0u32; n];
            full[n - r..].copy_from_slice(&multi);
            let t = p.taylor_coeff(&full)?;
            let restricted = restrict_to_front(&t, n_src);
            if restricted.is_zero() {
                continue;
            }
            let mut zexp = multi;
            zexp.extend_from_slice(&jx[..k_src - r]);
            out.push((Monomial::from_exps(zexp), restricted));
        }
    }
    Fps::from_coeffs(n_src, k_src, order, out)
}

/// Sets every variable from `keep` on to zero and drops them.
fn restrict_to_front(p: &Poly, keep: usize) -> Poly {
    Poly::from_terms(
        keep,
        p.terms()
            .filter(|(m, _)| m.exps()[keep..].iter().all(|&e| e == 0))
            .map(|(m, c)| (Monomial::from_exps(m.exps()[..keep].to_vec()), c.clone())),
    )
}

/// A function on the target whose slice pullback is `g` up to `order`:
/// each `z^(I, J)` coefficient `p(u)` becomes `p(x_1..x_n') x_tail^I y^J`.
pub fn borel_preimage(spec: SliceSpec, g: &Fps, order: usize) -> Result<Fps> {
    spec.validate()?;
    let SliceSpec {
        n,
        n_src,
        r,
        k,
        k_src,
    } = spec;
    if (g.n_smooth(), g.k_formal()) != spec.src() {
        return Err(Error::ShapeMismatch(format!(
            "function over ({}, {}) on a slice source ({n_src}, {k_src})",
            g.n_smooth(),
            g.k_formal()
        )));
    }
    let order = order.min(g.valid_order().ok_or(Error::PrecisionExhausted)?);
    let front: Vec<usize> = (0..n_src).collect();
    let mut out = Vec::new();
    for (zm, p) in g.coeffs() {
        if zm.degree() > order {
            continue;
        }
        let (tail, formal) = zm.split_at(r);
        let mut xexp = vec![0u32; n];
        xexp[n - r..].copy_from_slice(tail.exps());
        let lifted = p
            .rename(n, &front)
            .try_mul(&Poly::monomial(Monomial::from_exps(xexp), Rational::one()))?;
        let mut yexp = formal.exps().to_vec();
        yexp.resize(k, 0);
        out.push((Monomial::from_exps(yexp), lifted));
    }
    Fps::from_coeffs(n, k, order, out)
}

/// Whether `f` lies in the kernel of the slice pullback, up to its order.
pub fn ideal_membership(spec: SliceSpec, f: &Fps) -> Result<bool> {
    Ok(slice_pullback(spec, f)?.is_zero())
}
