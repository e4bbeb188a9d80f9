use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::factorial;
use super::{eval_with_powers, Algebra, Monomial, Rational};
use crate::error::{Error, Result};

/// Polynomial with rational coefficients in `arity` variables. Zero
/// coefficients are never stored, so structural equality is equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(arity: usize) -> Self {
        Poly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Poly::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        let mut p = Poly::zero(arity);
        p.add_term(Monomial::one(arity), c);
        p
    }

    /// The coordinate function of variable `i` (0-based).
    pub fn var(arity: usize, i: usize) -> Result<Self> {
        if i >= arity {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: arity,
            });
        }
        let mut p = Poly::zero(arity);
        p.add_term(Monomial::var(arity, i), Rational::one());
        Ok(p)
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero(m.arity());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(arity);
        for (m, c) in terms {
            assert_eq!(m.arity(), arity, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.arity))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Least total degree of a nonzero term.
    pub fn low_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exps()[i]).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.mul_bounded(other, None))
    }

    /// Product keeping only terms of total degree at most `max_deg`.
    pub(crate) fn mul_bounded(&self, other: &Poly, max_deg: Option<usize>) -> Poly {
        let mut out = Poly::zero(self.arity);
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            if max_deg.is_some_and(|d| d1 > d) {
                break;
            }
            for (m2, c2) in &other.terms {
                if max_deg.is_some_and(|d| d1 + m2.degree() > d) {
                    break;
                }
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.arity);
        }
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.arity);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Terms of total degree at most `d`.
    pub fn truncate(&self, d: usize) -> Poly {
        Poly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous(&self, d: usize) -> Poly {
        Poly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Partial derivative in variable `i` (0-based).
    pub fn diff(&self, i: usize) -> Result<Poly> {
        if i >= self.arity {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.arity,
            });
        }
        let mut out = Poly::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exps().to_vec();
            ex[i] -= 1;
            out.add_term(
                Monomial::from_exps(ex),
                c * Rational::from_integer(e.into()),
            );
        }
        Ok(out)
    }

    /// `(1/I!) d^I p`, the Taylor coefficient operator.
    pub fn taylor_coeff(&self, multi: &[u32]) -> Result<Poly> {
        if multi.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: multi.len(),
            });
        }
        let mut out = Poly::zero(self.arity);
        for (m, c) in &self.terms {
            if m.exps().iter().zip(multi).any(|(e, k)| e < k) {
                continue;
            }
            let mut coef = c.clone();
            let mut ex = m.exps().to_vec();
            for (e, k) in ex.iter_mut().zip(multi) {
                // e!/(k!(e-k)!) = binomial(e, k)
                coef = coef * factorial(*e) / (factorial(*k) * factorial(*e - *k));
                *e -= k;
            }
            out.add_term(Monomial::from_exps(ex), coef);
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Rewrites `p` in the shifted variables `x - a`: the coefficient of
    /// `m` in the result is the Taylor coefficient of `p` at `a`.
    pub fn shift(&self, a: &[Rational]) -> Result<Poly> {
        if a.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: a.len(),
            });
        }
        if a.iter().all(Zero::is_zero) {
            return Ok(self.clone());
        }
        let args: Vec<Poly> = (0..self.arity)
            .map(|i| {
                let mut v = Poly::var(self.arity, i).unwrap();
                v.add_term(Monomial::one(self.arity), a[i].clone());
                v
            })
            .collect();
        self.subst(&args)
    }

    /// Composition `p(args)`.
    pub fn subst(&self, args: &[Poly]) -> Result<Poly> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        let target = args.first().map(Poly::arity).unwrap_or(0);
        if let Some(bad) = args.iter().find(|a| a.arity != target) {
            return Err(Error::ArityMismatch {
                expected: target,
                found: bad.arity,
            });
        }
        Ok(eval_with_powers(
            self.terms.iter(),
            args,
            &Poly::zero(target),
        ))
    }

    /// Evaluates into any algebra, `proto` fixing the target shape.
    pub fn eval_in<A: Algebra>(&self, args: &[A], proto: &A) -> Result<A> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        Ok(eval_with_powers(self.terms.iter(), args, proto))
    }

    /// Re-embeds into `new_arity` variables, sending variable `i` to `map[i]`.
    pub fn rename(&self, new_arity: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.arity);
        let mut out = Poly::zero(new_arity);
        for (m, c) in &self.terms {
            let mut ex = vec![0u32; new_arity];
            for (i, &e) in m.exps().iter().enumerate() {
                ex[map[i]] += e;
            }
            out.add_term(Monomial::from_exps(ex), c.clone());
        }
        out
    }

    /// True if only the listed variables occur.
    pub fn only_uses(&self, allowed: &[usize]) -> bool {
        self.terms.keys().all(|m| {
            m.exps()
                .iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || allowed.contains(&i))
        })
    }

    /// Human-readable rendering with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        render_terms(self.terms.iter().map(|(m, c)| (m.render(names), c)))
    }
}

/// Joins `coefficient * monomial` pairs into `a - b + 1/2*c` style text.
pub(crate) fn render_terms<'a>(
    terms: impl Iterator<Item = (Option<String>, &'a Rational)>,
) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        let neg = c < &Rational::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match mono {
            None => out.push_str(&abs.to_string()),
            Some(m) if abs.is_one() => out.push_str(&m),
            Some(m) => {
                out.push_str(&abs.to_string());
                out.push('*');
                out.push_str(&m);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.arity).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

impl Algebra for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.arity)
    }
    fn one_like(&self) -> Self {
        Poly::one(self.arity)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("poly add: arity mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("poly sub: arity mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("poly mul: arity mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}
