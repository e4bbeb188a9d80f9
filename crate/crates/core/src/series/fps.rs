use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{var_names, Jet};
use crate::error::{Error, Result};
use crate::exactalg::{eval_with_powers, Algebra, Monomial, Poly, Rational};

/// Power series in `k` formal variables with coefficients in the
/// polynomials in `n` smooth variables, truncated above formal degree
/// `order`.
///
/// `lost` counts top degrees whose coefficients are not reliable, which
/// happens after formal differentiation. Equality compares coefficients up
/// to the smaller reliable order of the two operands.
#[derive(Debug, Clone)]
pub struct Fps {
    n: usize,
    k: usize,
    order: usize,
    lost: usize,
    coeffs: BTreeMap<Monomial, Poly>,
}

impl Fps {
    pub fn zero(n: usize, k: usize, order: usize) -> Self {
        Fps {
            n,
            k,
            order,
            lost: 0,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, k: usize, order: usize) -> Self {
        Fps::from_poly(Poly::one(n), k, order)
    }

    pub fn constant(n: usize, k: usize, order: usize, c: Rational) -> Self {
        Fps::from_poly(Poly::constant(n, c), k, order)
    }

    /// A function of the smooth variables only.
    pub fn from_poly(p: Poly, k: usize, order: usize) -> Self {
        let mut f = Fps::zero(p.arity(), k, order);
        f.add_coeff(Monomial::one(k), p);
        f
    }

    pub fn smooth_var(n: usize, k: usize, order: usize, i: usize) -> Result<Self> {
        Ok(Fps::from_poly(Poly::var(n, i)?, k, order))
    }

    pub fn formal_var(n: usize, k: usize, order: usize, j: usize) -> Result<Self> {
        if j >= k {
            return Err(Error::IndexOutOfRange { index: j, len: k });
        }
        let mut f = Fps::zero(n, k, order);
        f.add_coeff(Monomial::var(k, j), Poly::one(n));
        Ok(f)
    }

    /// Builds from `(J, f_J)` pairs, dropping `|J| > order`.
    pub fn from_coeffs(
        n: usize,
        k: usize,
        order: usize,
        coeffs: impl IntoIterator<Item = (Monomial, Poly)>,
    ) -> Result<Self> {
        let mut f = Fps::zero(n, k, order);
        for (j, p) in coeffs {
            if j.arity() != k {
                return Err(Error::ArityMismatch {
                    expected: k,
                    found: j.arity(),
                });
            }
            if p.arity() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: p.arity(),
                });
            }
            f.add_coeff(j, p);
        }
        Ok(f)
    }

    fn add_coeff(&mut self, j: Monomial, p: Poly) {
        if p.is_zero() || j.degree() > self.order {
            return;
        }
        let sum = match self.coeffs.remove(&j) {
            Some(q) => &q + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.coeffs.insert(j, sum);
        }
    }

    pub fn n_smooth(&self) -> usize {
        self.n
    }

    pub fn k_formal(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Highest formal degree whose coefficients are exact, `None` if none is.
    pub fn valid_order(&self) -> Option<usize> {
        self.order.checked_sub(self.lost)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Monomial, &Poly)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, j: &Monomial) -> Poly {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.n))
    }

    /// The coefficient of `y^0`, i.e. the reduction.
    pub fn constant_part(&self) -> Poly {
        self.coeff(&Monomial::one(self.k))
    }

    /// Coefficient of the linear term in formal variable `j`.
    pub fn linear_coeff(&self, j: usize) -> Poly {
        self.coeff(&Monomial::var(self.k, j))
    }

    pub fn is_zero(&self) -> bool {
        match self.valid_order() {
            None => true,
            Some(v) => self.coeffs.keys().all(|j| j.degree() > v),
        }
    }

    /// Least formal degree of a nonzero reliable coefficient; `None` is
    /// infinity.
    pub fn formal_order(&self) -> Option<usize> {
        let v = self.valid_order()?;
        self.coeffs.keys().map(Monomial::degree).find(|&d| d <= v)
    }

    /// Terms of formal degree exactly `d`.
    pub fn formal_component(&self, d: usize) -> Fps {
        let mut out = Fps::zero(self.n, self.k, self.order);
        out.lost = self.lost;
        for (j, p) in &self.coeffs {
            if j.degree() == d {
                out.coeffs.insert(j.clone(), p.clone());
            }
        }
        out
    }

    /// Lowers the truncation order.
    pub fn truncate(&self, order: usize) -> Fps {
        let order = order.min(self.order);
        let valid = self.valid_order();
        let mut out = Fps::zero(self.n, self.k, order);
        out.lost = match valid {
            Some(v) => order.saturating_sub(v),
            None => order + 1,
        };
        out.coeffs = self
            .coeffs
            .iter()
            .filter(|(j, _)| j.degree() <= order)
            .map(|(j, p)| (j.clone(), p.clone()))
            .collect();
        out
    }

    fn check_shape(&self, other: &Fps) -> Result<()> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::ShapeMismatch(format!(
                "series over ({}, {}) and ({}, {})",
                self.n, self.k, other.n, other.k
            )));
        }
        Ok(())
    }

    fn combined_valid(&self, other: &Fps, order: usize) -> usize {
        match (self.valid_order(), other.valid_order()) {
            (Some(a), Some(b)) => order - a.min(b).min(order),
            _ => order + 1,
        }
    }

    pub fn try_add(&self, other: &Fps) -> Result<Fps> {
        self.check_shape(other)?;
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        out.lost = self.combined_valid(other, order);
        for (j, p) in &other.coeffs {
            out.add_coeff(j.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Fps) -> Result<Fps> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Fps) -> Result<Fps> {
        self.check_shape(other)?;
        let order = self.order.min(other.order);
        let mut out = Fps::zero(self.n, self.k, order);
        out.lost = self.combined_valid(other, order);
        for (j1, p1) in &self.coeffs {
            let d1 = j1.degree();
            if d1 > order {
                break;
            }
            for (j2, p2) in &other.coeffs {
                if d1 + j2.degree() > order {
                    break;
                }
                out.add_coeff(j1.mul(j2), p1 * p2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Fps {
        let mut out = self.clone();
        for p in out.coeffs.values_mut() {
            *p = -&*p;
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Fps {
        let mut out = self.clone();
        if c.is_zero() {
            out.coeffs.clear();
            return out;
        }
        for p in out.coeffs.values_mut() {
            *p = p.scale(c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Fps {
        let mut acc = Fps::one(self.n, self.k, self.order);
        for _ in 0..e {
            acc = acc.try_mul(self).expect("same shape");
        }
        acc
    }

    /// Coefficientwise derivative in smooth variable `i` (0-based).
    pub fn diff_smooth(&self, i: usize) -> Result<Fps> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.n,
            });
        }
        let mut out = Fps::zero(self.n, self.k, self.order);
        out.lost = self.lost;
        for (j, p) in &self.coeffs {
            out.add_coeff(j.clone(), p.diff(i)?);
        }
        Ok(out)
    }

    /// Derivative in formal variable `j` (0-based). The nominal order is
    /// kept; the top reliable degree drops by one.
    pub fn diff_formal(&self, j: usize) -> Result<Fps> {
        if j >= self.k {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.k,
            });
        }
        let mut out = Fps::zero(self.n, self.k, self.order);
        out.lost = self.lost + 1;
        for (m, p) in &self.coeffs {
            let e = m.exps()[j];
            if e == 0 {
                continue;
            }
            let mut ex = m.exps().to_vec();
            ex[j] -= 1;
            out.add_coeff(
                Monomial::from_exps(ex),
                p.scale(&Rational::from_integer(e.into())),
            );
        }
        Ok(out)
    }

    /// Value at a point of the reduction: the formal variables contribute 0.
    pub fn value(&self, a: &[Rational]) -> Result<Rational> {
        self.constant_part().eval(a)
    }

    /// Taylor expansion at `a` in the variables `(x - a, y)`, truncated at
    /// total degree `min(degree, valid order)`.
    pub fn to_jet(&self, a: &[Rational], degree: usize) -> Result<Jet> {
        if a.len() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "point of length {} for {} smooth variables",
                a.len(),
                self.n
            )));
        }
        let order = degree.min(self.valid_order().ok_or(Error::PrecisionExhausted)?);
        let m = self.n + self.k;
        let mut acc = Poly::zero(m);
        for (j, p) in &self.coeffs {
            let dj = j.degree();
            if dj > order {
                break;
            }
            let shifted = p.shift(a)?.truncate(order - dj);
            for (mx, c) in shifted.terms() {
                acc.add_term(mx.concat(j), c.clone());
            }
        }
        let mut base = a.to_vec();
        base.resize(m, Rational::zero());
        Jet::from_shifted(base, order, acc)
    }

    /// The whole series as one polynomial in `(x, y)`.
    pub(crate) fn as_poly(&self) -> Poly {
        let mut acc = Poly::zero(self.n + self.k);
        for (j, p) in &self.coeffs {
            for (mx, c) in p.terms() {
                acc.add_term(mx.concat(j), c.clone());
            }
        }
        acc
    }

    /// Substitutes `x_i -> sx[i]`, `y_j -> sy[j]`. Every `sy[j]` must lie in
    /// the formal ideal. The result is truncated at the smaller of the
    /// orders of `self` and the arguments.
    pub fn subst(&self, sx: &[Fps], sy: &[Fps]) -> Result<Fps> {
        if sx.len() != self.n || sy.len() != self.k {
            return Err(Error::ShapeMismatch(format!(
                "substitution of {} + {} series into a series over ({}, {})",
                sx.len(),
                sy.len(),
                self.n,
                self.k
            )));
        }
        let proto = match sx.iter().chain(sy).next() {
            Some(p) => p,
            None => {
                // constant series in no variables; nothing to substitute
                return Ok(self.clone());
            }
        };
        for a in sx.iter().chain(sy) {
            proto.check_shape(a)?;
        }
        for (j, a) in sy.iter().enumerate() {
            if a.formal_order() == Some(0) {
                return Err(Error::FormalOrderViolation { index: j });
            }
        }
        let arg_order = sx.iter().chain(sy).map(|a| a.order).min().unwrap();
        let order = self.order.min(arg_order);
        let mut valid = self.valid_order();
        for a in sx.iter().chain(sy) {
            valid = match (valid, a.valid_order()) {
                (Some(x), Some(y)) => Some(x.min(y)),
                _ => None,
            };
        }
        let args: Vec<Fps> = sx.iter().chain(sy).map(|a| a.truncate(order)).collect();
        let n = self.n;
        let poly = self.as_poly();
        let terms = poly
            .terms()
            .filter(|(m, _)| m.exps()[n..].iter().sum::<u32>() as usize <= order);
        let zero = Fps::zero(proto.n, proto.k, order);
        let mut out = eval_with_powers(terms, &args, &zero);
        out.order = order;
        out.lost = match valid {
            Some(v) => order - v.min(order),
            None => order + 1,
        };
        Ok(out)
    }

    pub fn render(&self, smooth: &[String], formal: &[String]) -> String {
        let mut names = smooth.to_vec();
        names.extend_from_slice(formal);
        let poly = self.as_poly();
        let mut terms: Vec<(Monomial, Rational)> =
            poly.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        // group by formal degree first, then by the full monomial
        let n = self.n;
        terms.sort_by(|(a, _), (b, _)| {
            let (sa, fa) = a.split_at(n);
            let (sb, fb) = b.split_at(n);
            fa.cmp(&fb).then_with(|| sa.cmp(&sb))
        });
        crate::exactalg::render_terms(terms.iter().map(|(m, c)| (m.render(&names), c)))
    }
}

impl PartialEq for Fps {
    fn eq(&self, other: &Fps) -> bool {
        if self.n != other.n || self.k != other.k {
            return false;
        }
        let v = match (self.valid_order(), other.valid_order()) {
            (Some(a), Some(b)) => a.min(b),
            _ => return true,
        };
        let lhs = self.coeffs.iter().filter(|(j, _)| j.degree() <= v);
        let rhs = other.coeffs.iter().filter(|(j, _)| j.degree() <= v);
        lhs.eq(rhs)
    }
}

impl fmt::Display for Fps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&var_names("x", self.n), &var_names("y", self.k)))
    }
}

impl Algebra for Fps {
    fn zero_like(&self) -> Self {
        Fps::zero(self.n, self.k, self.order)
    }
    fn one_like(&self) -> Self {
        Fps::one(self.n, self.k, self.order)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.try_add(other).expect("series add: shape mismatch")
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.try_mul(other).expect("series mul: shape mismatch")
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}
