use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::Zero;

use super::var_names;
use crate::error::{Error, Result};
use crate::exactalg::{monomial_images, render_terms, Algebra, Monomial, Poly, Rational};

/// Truncated Taylor expansion at `base`, stored as a polynomial in the
/// shifted variables `t = x - base` of total degree at most `order`.
#[derive(Debug, Clone)]
pub struct Jet {
    base: Vec<Rational>,
    order: usize,
    poly: Poly,
}

impl Jet {
    /// `poly` is read in shifted variables and truncated at `order`.
    pub fn from_shifted(base: Vec<Rational>, order: usize, poly: Poly) -> Result<Self> {
        if poly.arity() != base.len() {
            return Err(Error::ArityMismatch {
                expected: base.len(),
                found: poly.arity(),
            });
        }
        Ok(Jet {
            poly: poly.truncate(order),
            base,
            order,
        })
    }

    /// Taylor expansion at `base` of a polynomial in unshifted variables.
    pub fn from_poly_at(p: &Poly, base: Vec<Rational>, order: usize) -> Result<Self> {
        let shifted = p.shift(&base)?;
        Jet::from_shifted(base, order, shifted)
    }

    pub fn constant(base: Vec<Rational>, order: usize, c: Rational) -> Self {
        let m = base.len();
        Jet {
            base,
            order,
            poly: Poly::constant(m, c),
        }
    }

    pub fn zero(base: Vec<Rational>, order: usize) -> Self {
        let m = base.len();
        Jet {
            base,
            order,
            poly: Poly::zero(m),
        }
    }

    /// The coordinate function `x_i = base_i + t_i`.
    pub fn coordinate(base: Vec<Rational>, order: usize, i: usize) -> Result<Self> {
        let m = base.len();
        let mut p = Poly::var(m, i)?;
        if order == 0 {
            p = Poly::zero(m);
        }
        p = &p + &Poly::constant(m, base[i].clone());
        Ok(Jet {
            base,
            order,
            poly: p,
        })
    }

    pub fn arity(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &[Rational] {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn shifted(&self) -> &Poly {
        &self.poly
    }

    /// Value at the basepoint.
    pub fn value(&self) -> Rational {
        self.poly.constant_term()
    }

    /// Least total degree of a nonzero term, `None` if the jet vanishes to
    /// its order.
    pub fn jet_order(&self) -> Option<usize> {
        self.poly.low_degree()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Homogeneous part of degree `d` in the shifted variables.
    pub fn homogeneous(&self, d: usize) -> Poly {
        self.poly.homogeneous(d)
    }

    /// Coefficients of the linear part.
    pub fn linear_coeffs(&self) -> Vec<Rational> {
        (0..self.arity())
            .map(|i| self.poly.coeff(&Monomial::var(self.arity(), i)))
            .collect()
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let order = order.min(self.order);
        Jet {
            base: self.base.clone(),
            order,
            poly: self.poly.truncate(order),
        }
    }

    /// The same jet minus its value, so that it lies in the maximal ideal.
    pub fn centered(&self) -> Jet {
        let c = Poly::constant(self.arity(), self.value());
        Jet {
            base: self.base.clone(),
            order: self.order,
            poly: &self.poly - &c,
        }
    }

    fn check(&self, other: &Jet) -> Result<()> {
        if self.base.len() != other.base.len() {
            return Err(Error::ArityMismatch {
                expected: self.base.len(),
                found: other.base.len(),
            });
        }
        if self.base != other.base {
            return Err(Error::BasepointMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Jet) -> Result<Jet> {
        self.check(other)?;
        let order = self.order.min(other.order);
        Ok(Jet {
            base: self.base.clone(),
            order,
            poly: (&self.poly + &other.poly).truncate(order),
        })
    }

    pub fn try_sub(&self, other: &Jet) -> Result<Jet> {
        self.try_add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn try_mul(&self, other: &Jet) -> Result<Jet> {
        self.check(other)?;
        let order = self.order.min(other.order);
        Ok(Jet {
            base: self.base.clone(),
            order,
            poly: self.poly.mul_bounded(&other.poly, Some(order)),
        })
    }

    pub fn scale(&self, c: &Rational) -> Jet {
        Jet {
            base: self.base.clone(),
            order: self.order,
            poly: self.poly.scale(c),
        }
    }

    pub fn add_constant(&self, c: &Rational) -> Jet {
        let k = Poly::constant(self.arity(), c.clone());
        Jet {
            base: self.base.clone(),
            order: self.order,
            poly: &self.poly + &k,
        }
    }

    /// Composition `self(args)`. Each `args[i]` must take the value
    /// `base[i]` at its own basepoint, so the maximal ideal maps into the
    /// maximal ideal.
    pub fn subst(&self, args: &[Jet]) -> Result<Jet> {
        let Some(first) = args.first() else {
            return Err(Error::ShapeMismatch(
                "substitution needs at least one argument".into(),
            ));
        };
        self.subst_at(
            args,
            first.base(),
            args.iter().map(Jet::order).min().unwrap(),
        )
    }

    /// As [`Jet::subst`], with the result basepoint and order given
    /// explicitly so that an empty argument list is allowed.
    pub fn subst_at(&self, args: &[Jet], base: &[Rational], order: usize) -> Result<Jet> {
        let mut out = Jet::subst_all(std::slice::from_ref(self), args, base, order)?;
        Ok(out.pop().expect("one input, one output"))
    }

    /// [`Jet::subst_at`] for several jets at one basepoint, computing the
    /// image of each shared monomial once.
    pub fn subst_all(
        fs: &[Jet],
        args: &[Jet],
        base: &[Rational],
        order: usize,
    ) -> Result<Vec<Jet>> {
        let Some(first) = fs.first() else {
            return Ok(Vec::new());
        };
        for f in fs {
            if f.arity() != args.len() {
                return Err(Error::ArityMismatch {
                    expected: f.arity(),
                    found: args.len(),
                });
            }
            if f.base != first.base {
                return Err(Error::BasepointMismatch);
            }
        }
        let top = fs.iter().map(|f| f.order).max().unwrap_or(0).min(order);
        let mut centered = Vec::with_capacity(args.len());
        for (i, a) in args.iter().enumerate() {
            if a.base() != base {
                return Err(Error::BasepointMismatch);
            }
            if a.value() != first.base[i] {
                return Err(Error::NotLocal { index: i });
            }
            let c = a.centered();
            centered.push(Jet {
                base: c.base,
                order: c.order.min(top),
                poly: c.poly.truncate(top),
            });
        }
        let monos: BTreeSet<Monomial> = fs
            .iter()
            .flat_map(|f| f.poly.terms().map(|(m, _)| m.clone()))
            .collect();
        let monos: Vec<Monomial> = monos.into_iter().collect();
        let proto = Jet::zero(base.to_vec(), top);
        let images: HashMap<&Monomial, Jet> = monos
            .iter()
            .zip(monomial_images(&monos, &centered, &proto))
            .collect();
        Ok(fs
            .iter()
            .map(|f| {
                let order = f.order.min(order);
                let mut poly = Poly::zero(base.len());
                for (m, c) in f.poly.terms() {
                    for (mi, ci) in images[m].poly.terms() {
                        if mi.degree() <= order {
                            poly.add_term(mi.clone(), c * ci);
                        }
                    }
                }
                Jet {
                    base: base.to_vec(),
                    order,
                    poly,
                }
            })
            .collect())
    }

    /// Renders in the named variables, writing `(x1 - 2)` for shifted ones.
    pub fn render(&self, names: &[String]) -> String {
        let shifted: Vec<String> = names
            .iter()
            .zip(&self.base)
            .map(|(n, b)| {
                if b.is_zero() {
                    n.clone()
                } else if b < &Rational::zero() {
                    format!("({n} + {})", -b.clone())
                } else {
                    format!("({n} - {b})")
                }
            })
            .collect();
        render_terms(self.poly.terms().map(|(m, c)| (m.render(&shifted), c)))
    }
}

/// Same basepoint and equal up to the smaller order.
impl PartialEq for Jet {
    fn eq(&self, other: &Jet) -> bool {
        if self.base != other.base {
            return false;
        }
        let d = self.order.min(other.order);
        self.poly.truncate(d) == other.poly.truncate(d)
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&var_names("x", self.arity())))
    }
}

impl Algebra for Jet {
    fn zero_like(&self) -> Self {
        Jet::zero(self.base.clone(), self.order)
    }
    fn one_like(&self) -> Self {
        Jet::constant(
            self.base.clone(),
            self.order,
            Rational::from_integer(1.into()),
        )
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.try_add(other).expect("jet add: basepoint mismatch")
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.try_mul(other).expect("jet mul: basepoint mismatch")
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use proptest::prelude::*;

    fn t(d: usize) -> Jet {
        Jet::coordinate(vec![rat(0, 1)], d, 0).unwrap()
    }
    fn one(d: usize) -> Jet {
        Jet::constant(vec![rat(0, 1)], d, rat(1, 1))
    }

    #[test]
    fn products() {
        let p = one(2)
            .try_add(&t(2))
            .unwrap()
            .try_mul(&one(2).try_sub(&t(2)).unwrap())
            .unwrap();
        assert_eq!(p, one(2).try_sub(&t(2).try_mul(&t(2)).unwrap()).unwrap());
        let other = Jet::coordinate(vec![rat(1, 1)], 2, 0).unwrap();
        assert_eq!(t(2).try_mul(&other), Err(Error::BasepointMismatch));
    }

    #[test]
    fn substitution() {
        let t4 = t(4);
        let f = t4.try_mul(&t4).unwrap();
        let arg = t4.try_add(&f).unwrap();
        let out = f.subst(&[arg]).unwrap();
        let t2 = Poly::var(1, 0).unwrap();
        let expect = &(&t2.pow(2) + &t2.pow(3).scale(&rat(2, 1))) + &t2.pow(4);
        assert_eq!(out.shifted(), &expect);
        assert_eq!(f.subst(std::slice::from_ref(&t4)).unwrap(), f);
        let off = t4.add_constant(&rat(1, 1));
        assert_eq!(f.subst(&[off]), Err(Error::NotLocal { index: 0 }));
    }

    #[test]
    fn substitution_across_basepoints() {
        // f = x^2 at x = 1, composed with x = 1 + s at s = 0
        let fpoly = Poly::var(1, 0).unwrap().pow(2);
        let f = Jet::from_poly_at(&fpoly, vec![rat(1, 1)], 3).unwrap();
        let arg = t(3).add_constant(&rat(1, 1));
        let out = f.subst(&[arg]).unwrap();
        let s = Poly::var(1, 0).unwrap();
        let expect = (&s + &Poly::one(1)).pow(2);
        assert_eq!(out.shifted(), &expect);
    }

    #[test]
    fn rendering() {
        let j = Jet::coordinate(vec![rat(2, 1), rat(-1, 2)], 2, 0).unwrap();
        let k = Jet::coordinate(vec![rat(2, 1), rat(-1, 2)], 2, 1).unwrap();
        let p = j.try_mul(&k).unwrap();
        let names = var_names("u", 2);
        assert_eq!(
            p.render(&names),
            "-1 - 1/2*(u1 - 2) + 2*(u2 + 1/2) + (u1 - 2)*(u2 + 1/2)"
        );
    }

    proptest! {
        #[test]
        fn subst_is_associative(c1 in prop::collection::vec(-2i64..=2, 4), c2 in prop::collection::vec(-2i64..=2, 4)) {
            let d = 4;
            let mk = |cs: &[i64]| {
                let mut acc = Jet::zero(vec![rat(0, 1)], d);
                let mut pw = t(d);
                for &c in cs {
                    acc = acc.try_add(&pw.scale(&rat(c, 1))).unwrap();
                    pw = pw.try_mul(&t(d)).unwrap();
                }
                acc
            };
            let (f, g) = (mk(&c1), mk(&c2));
            let h = t(d).try_add(&t(d).try_mul(&t(d)).unwrap()).unwrap();
            let lhs = f.subst(&[g.subst(std::slice::from_ref(&h)).unwrap()]).unwrap();
            let rhs = f.subst(std::slice::from_ref(&g)).unwrap().subst(&[h]).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
