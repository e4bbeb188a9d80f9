use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{Matrix, Poly, Rational};
use crate::morphism::{component_names, Morphism};
use crate::series::{var_names, Jet};

/// Truncated map of formal stalks, given by the jets of the target
/// coordinates `x1..xn, y1..yk` at a source basepoint. Source and target
/// basepoints list smooth coordinates then formal ones (always zero).
#[derive(Debug, Clone)]
pub struct JetMap {
    src: (usize, usize),
    tgt: (usize, usize),
    src_base: Vec<Rational>,
    tgt_base: Vec<Rational>,
    components: Vec<Jet>,
    order: usize,
}

impl JetMap {
    pub fn new(
        src: (usize, usize),
        tgt: (usize, usize),
        src_base: Vec<Rational>,
        components: Vec<Jet>,
        order: usize,
    ) -> Result<Self> {
        let ms = src.0 + src.1;
        if src_base.len() != ms || components.len() != tgt.0 + tgt.1 {
            return Err(Error::ShapeMismatch(format!(
                "jet map ({}, {}) -> ({}, {}) with base of length {} and {} components",
                src.0,
                src.1,
                tgt.0,
                tgt.1,
                src_base.len(),
                components.len()
            )));
        }
        if src_base[src.0..].iter().any(|x| !x.is_zero()) {
            return Err(Error::ShapeMismatch(
                "formal coordinates of a basepoint must be zero".into(),
            ));
        }
        for c in &components {
            if c.base() != src_base.as_slice() {
                return Err(Error::BasepointMismatch);
            }
        }
        for (i, c) in components.iter().enumerate().skip(tgt.0) {
            if !c.value().is_zero() {
                return Err(Error::NotLocal { index: i });
            }
        }
        let order = components.iter().map(Jet::order).fold(order, usize::min);
        let components: Vec<Jet> = components.into_iter().map(|c| c.truncate(order)).collect();
        let tgt_base = components.iter().map(Jet::value).collect();
        Ok(JetMap {
            src,
            tgt,
            src_base,
            tgt_base,
            components,
            order,
        })
    }

    /// Builds from polynomials in the shifted source variables.
    pub fn from_shifted(
        src: (usize, usize),
        tgt: (usize, usize),
        src_base: Vec<Rational>,
        polys: Vec<Poly>,
        order: usize,
    ) -> Result<Self> {
        let comps = polys
            .into_iter()
            .map(|p| Jet::from_shifted(src_base.clone(), order, p))
            .collect::<Result<Vec<_>>>()?;
        JetMap::new(src, tgt, src_base, comps, order)
    }

    pub fn identity(dims: (usize, usize), base: Vec<Rational>, order: usize) -> Result<Self> {
        let m = dims.0 + dims.1;
        let comps = (0..m)
            .map(|i| Jet::coordinate(base.clone(), order, i))
            .collect::<Result<Vec<_>>>()?;
        JetMap::new(dims, dims, base, comps, order)
    }

    /// Translation from `base` to the origin.
    pub fn centering(dims: (usize, usize), base: Vec<Rational>, order: usize) -> Result<Self> {
        let m = dims.0 + dims.1;
        let polys = (0..m)
            .map(|i| Poly::var(m, i))
            .collect::<Result<Vec<_>>>()?;
        JetMap::from_shifted(dims, dims, base, polys, order)
    }

    pub fn src(&self) -> (usize, usize) {
        self.src
    }

    pub fn tgt(&self) -> (usize, usize) {
        self.tgt
    }

    pub fn src_base(&self) -> &[Rational] {
        &self.src_base
    }

    pub fn tgt_base(&self) -> &[Rational] {
        &self.tgt_base
    }

    pub fn components(&self) -> &[Jet] {
        &self.components
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn src_arity(&self) -> usize {
        self.src.0 + self.src.1
    }

    pub fn tgt_arity(&self) -> usize {
        self.tgt.0 + self.tgt.1
    }

    /// Components minus their values, as polynomials in the shifted
    /// source variables.
    pub fn centered_polys(&self) -> Vec<Poly> {
        self.components
            .iter()
            .map(|c| c.centered().shifted().clone())
            .collect()
    }

    /// The linear part: rows are target coordinates, columns source ones.
    pub fn linear_part(&self) -> Matrix<Rational> {
        let rows: Vec<Vec<Rational>> = self.components.iter().map(Jet::linear_coeffs).collect();
        Matrix::from_rows(rows, self.src_arity())
    }

    /// `outer . inner`, substituting the components of `inner` into those
    /// of `outer`.
    pub fn compose(outer: &JetMap, inner: &JetMap) -> Result<JetMap> {
        if inner.tgt != outer.src {
            return Err(Error::ShapeMismatch(format!(
                "inner target ({}, {}) differs from outer source ({}, {})",
                inner.tgt.0, inner.tgt.1, outer.src.0, outer.src.1
            )));
        }
        if inner.tgt_base != outer.src_base {
            return Err(Error::BasepointMismatch);
        }
        let order = outer.order.min(inner.order);
        let comps = Jet::subst_all(&outer.components, &inner.components, &inner.src_base, order)?;
        JetMap::new(inner.src, outer.tgt, inner.src_base.clone(), comps, order)
    }

    pub fn truncate(&self, order: usize) -> JetMap {
        let order = order.min(self.order);
        JetMap {
            components: self.components.iter().map(|c| c.truncate(order)).collect(),
            order,
            ..self.clone()
        }
    }

    /// Largest `d <= order` with `self == other` modulo degree `d + 1`,
    /// `None` if even the values differ.
    pub fn agreement(&self, other: &JetMap) -> Option<usize> {
        if self.src != other.src || self.tgt != other.tgt || self.src_base != other.src_base {
            return None;
        }
        let order = self.order.min(other.order);
        let mut best = None;
        for d in 0..=order {
            let same = self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.homogeneous(d) == b.homogeneous(d));
            if !same {
                break;
            }
            best = Some(d);
        }
        best
    }

    /// Component lines `x1 = ...` with source variables `u`, `z`.
    pub fn render_lines(&self) -> Vec<String> {
        self.render_lines_with("u", "z")
    }

    pub fn render_lines_with(&self, smooth: &str, formal: &str) -> Vec<String> {
        let mut names = var_names(smooth, self.src.0);
        names.extend(var_names(formal, self.src.1));
        component_names(self.tgt)
            .into_iter()
            .zip(&self.components)
            .map(|(n, c)| format!("{n} = {}", c.render(&names)))
            .collect()
    }
}

impl PartialEq for JetMap {
    fn eq(&self, other: &JetMap) -> bool {
        self.src == other.src
            && self.tgt == other.tgt
            && self.src_base == other.src_base
            && self.components == other.components
    }
}

/// Jets at `(b, 0)` of the components of `m`, truncated at total degree
/// `order`.
pub fn morphism_to_jetmap(m: &Morphism, b: &[Rational], order: usize) -> Result<JetMap> {
    let (n1, k1) = m.src();
    if b.len() != n1 {
        return Err(Error::ShapeMismatch(format!(
            "point of length {} for {} smooth variables",
            b.len(),
            n1
        )));
    }
    let comps = m
        .components()
        .map(|f| f.to_jet(b, order))
        .collect::<Result<Vec<_>>>()?;
    let mut base = b.to_vec();
    base.resize(n1 + k1, Rational::zero());
    JetMap::new(m.src(), m.tgt(), base, comps, order.min(m.order()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::series::Fps;

    #[test]
    fn identity_morphism_gives_identity_jets() {
        let b = vec![rat(1, 2), rat(-1, 1)];
        let j = morphism_to_jetmap(&Morphism::identity(2, 1, 4), &b, 4).unwrap();
        let mut base = b.clone();
        base.push(rat(0, 1));
        assert_eq!(j, JetMap::identity((2, 1), base, 4).unwrap());
    }

    #[test]
    fn polynomial_components_are_their_own_jets_at_zero() {
        let u = |i| Fps::smooth_var(2, 2, 3, i).unwrap();
        let z = |j| Fps::formal_var(2, 2, 3, j).unwrap();
        let x2 = u(0).try_mul(&u(1)).unwrap().try_add(&z(0)).unwrap();
        let m = Morphism::new((2, 2), (2, 1), vec![u(0), x2.clone()], vec![z(1)]).unwrap();
        let j = morphism_to_jetmap(&m, &[rat(0, 1), rat(0, 1)], 3).unwrap();
        assert_eq!(j.components()[1].shifted(), &x2.as_poly());
        assert_eq!(j.tgt_base(), &[rat(0, 1), rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn taylor_shift_component() {
        let u1 = Fps::smooth_var(1, 0, 2, 0).unwrap();
        let m = Morphism::new((1, 0), (1, 0), vec![u1.pow(2)], vec![]).unwrap();
        let j = morphism_to_jetmap(&m, &[rat(1, 1)], 2).unwrap();
        assert_eq!(
            j.render_lines(),
            vec!["x1 = 1 + 2*(u1 - 1) + (u1 - 1)^2".to_string()]
        );
    }

    #[test]
    fn composition_checks_basepoints() {
        let a = JetMap::identity((1, 0), vec![rat(1, 1)], 3).unwrap();
        let b = JetMap::identity((1, 0), vec![rat(2, 1)], 3).unwrap();
        assert_eq!(JetMap::compose(&a, &b), Err(Error::BasepointMismatch));
        assert_eq!(JetMap::compose(&a, &a).unwrap(), a);
    }

    #[test]
    fn formal_components_must_vanish() {
        let base = vec![rat(0, 1)];
        let c = Jet::constant(base.clone(), 2, rat(1, 1));
        assert_eq!(
            JetMap::new((0, 1), (0, 1), base, vec![c], 2),
            Err(Error::NotLocal { index: 0 })
        );
    }
}
