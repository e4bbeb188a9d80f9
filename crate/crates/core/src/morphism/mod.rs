//! Morphisms `(N')^(k') -> N^(k)` given by the images of the target
//! coordinates, with Jacobians, ranks and pointwise classification.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{Matrix, Poly, Rational};
use crate::series::{var_names, Fps};

/// A morphism of chart models, stored as the pullbacks `cx[i] = phi*(x_i)`
/// and `cy[j] = phi*(y_j)`, all series over the source variables `(u, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism {
    src: (usize, usize),
    tgt: (usize, usize),
    cx: Vec<Fps>,
    cy: Vec<Fps>,
    order: usize,
}

/// Blocks of the Jacobian `[[F, G], [0, H]]` as polynomial matrices in the
/// source smooth variables.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianBlocks {
    pub f: Matrix<Poly>,
    pub g: Matrix<Poly>,
    pub h: Matrix<Poly>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RankTriple {
    pub total: usize,
    pub reduced: usize,
    pub formal: usize,
}

impl RankTriple {
    /// Rank contributed by the mixed block, `total - reduced - formal`.
    pub fn mixed(&self) -> usize {
        self.total - self.reduced - self.formal
    }
}

impl fmt::Display for RankTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.total, self.reduced, self.formal)
    }
}

/// The differential at a point in the bases `d/du_1..d/du_n', d/dz_1..`
/// (source) and `d/dx_1..d/dx_n, d/dy_1..` (target).
#[derive(Debug, Clone, PartialEq)]
pub struct DifferentialMatrix {
    pub entries: Matrix<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub immersion: bool,
    pub submersion: bool,
    pub regular: bool,
    pub bijective_differential: bool,
}

impl Morphism {
    /// Validates shapes and the formal-ideal condition on `cy`. The order
    /// is the smallest component order.
    pub fn new(
        src: (usize, usize),
        tgt: (usize, usize),
        cx: Vec<Fps>,
        cy: Vec<Fps>,
    ) -> Result<Self> {
        if cx.len() != tgt.0 || cy.len() != tgt.1 {
            return Err(Error::ShapeMismatch(format!(
                "{} + {} components for a target of dimension ({}, {})",
                cx.len(),
                cy.len(),
                tgt.0,
                tgt.1
            )));
        }
        for (name, f) in component_names(tgt).iter().zip(cx.iter().chain(&cy)) {
            if (f.n_smooth(), f.k_formal()) != src {
                return Err(Error::IllFormedMorphism {
                    component: name.clone(),
                    reason: format!(
                        "series over ({}, {}) instead of ({}, {})",
                        f.n_smooth(),
                        f.k_formal(),
                        src.0,
                        src.1
                    ),
                });
            }
        }
        let order = cx
            .iter()
            .chain(&cy)
            .map(Fps::order)
            .min()
            .unwrap_or(crate::series::DEFAULT_ORDER);
        let m = Morphism {
            src,
            tgt,
            cx: cx.iter().map(|f| f.truncate(order)).collect(),
            cy: cy.iter().map(|f| f.truncate(order)).collect(),
            order,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        for (j, f) in self.cy.iter().enumerate() {
            if !f.constant_part().is_zero() {
                return Err(Error::IllFormedMorphism {
                    component: format!("y{}", j + 1),
                    reason: "nonzero part free of formal variables".into(),
                });
            }
        }
        Ok(())
    }

    pub fn identity(n: usize, k: usize, order: usize) -> Self {
        let cx = (0..n)
            .map(|i| Fps::smooth_var(n, k, order, i).unwrap())
            .collect();
        let cy = (0..k)
            .map(|j| Fps::formal_var(n, k, order, j).unwrap())
            .collect();
        Morphism {
            src: (n, k),
            tgt: (n, k),
            cx,
            cy,
            order,
        }
    }

    pub fn src(&self) -> (usize, usize) {
        self.src
    }

    pub fn tgt(&self) -> (usize, usize) {
        self.tgt
    }

    pub fn cx(&self) -> &[Fps] {
        &self.cx
    }

    pub fn cy(&self) -> &[Fps] {
        &self.cy
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// All components, x first.
    pub fn components(&self) -> impl Iterator<Item = &Fps> {
        self.cx.iter().chain(&self.cy)
    }

    pub fn pullback(&self, f: &Fps) -> Result<Fps> {
        if (f.n_smooth(), f.k_formal()) != self.tgt {
            return Err(Error::ShapeMismatch(format!(
                "function over ({}, {}) pulled back along a morphism into ({}, {})",
                f.n_smooth(),
                f.k_formal(),
                self.tgt.0,
                self.tgt.1
            )));
        }
        if self.cx.is_empty() && self.cy.is_empty() {
            // the target is a point: only the constant survives
            let c = f.constant_part().constant_term();
            return Ok(Fps::constant(
                self.src.0,
                self.src.1,
                f.order().min(self.order),
                c,
            ));
        }
        f.subst(&self.cx, &self.cy)
    }

    /// `outer . inner`; the pullback is `inner* . outer*`.
    pub fn compose(outer: &Morphism, inner: &Morphism) -> Result<Morphism> {
        if inner.tgt != outer.src {
            return Err(Error::ShapeMismatch(format!(
                "inner target ({}, {}) differs from outer source ({}, {})",
                inner.tgt.0, inner.tgt.1, outer.src.0, outer.src.1
            )));
        }
        let order = outer.order.min(inner.order);
        let pb = |f: &Fps| inner.pullback(f).map(|g| g.truncate(order));
        let cx = outer.cx.iter().map(pb).collect::<Result<Vec<_>>>()?;
        let cy = outer.cy.iter().map(pb).collect::<Result<Vec<_>>>()?;
        Morphism::new(inner.src, outer.tgt, cx, cy).map(|mut m| {
            m.order = order;
            m
        })
    }

    fn check_point(&self, b: &[Rational]) -> Result<()> {
        if b.len() != self.src.0 {
            return Err(Error::ShapeMismatch(format!(
                "point of length {} in a source with {} smooth variables",
                b.len(),
                self.src.0
            )));
        }
        Ok(())
    }

    /// Image of `b` under the reduced map.
    pub fn underlying_point(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        self.check_point(b)?;
        self.cx.iter().map(|f| f.value(b)).collect()
    }

    pub fn jacobian(&self) -> JacobianBlocks {
        let (n1, k1) = self.src;
        let (n, k) = self.tgt;
        let f = Matrix::from_fn(n, n1, |i, l| self.cx[i].constant_part().diff(l).unwrap());
        let g = Matrix::from_fn(n, k1, |i, j| self.cx[i].linear_coeff(j));
        let h = Matrix::from_fn(k, k1, |j, l| self.cy[j].linear_coeff(l));
        JacobianBlocks { f, g, h }
    }

    pub fn differential_at(&self, b: &[Rational]) -> Result<DifferentialMatrix> {
        self.check_point(b)?;
        Ok(DifferentialMatrix {
            entries: self.jacobian().assemble(self.src.0).eval(b)?,
        })
    }

    pub fn rank_at(&self, b: &[Rational]) -> Result<RankTriple> {
        self.check_point(b)?;
        let jb = self.jacobian();
        Ok(RankTriple {
            total: jb.assemble(self.src.0).eval(b)?.rank(),
            reduced: jb.f.eval(b)?.rank(),
            formal: jb.h.eval(b)?.rank(),
        })
    }

    pub fn classify_at(&self, b: &[Rational]) -> Result<Classification> {
        let r = self.rank_at(b)?;
        let immersion = r.total == self.src.0 + self.src.1;
        let submersion = r.total == self.tgt.0 + self.tgt.1;
        Ok(Classification {
            immersion,
            submersion,
            regular: r.total == r.reduced + r.formal,
            bijective_differential: immersion && submersion,
        })
    }

    /// One `x<i> = ...` / `y<j> = ...` line per component.
    pub fn render_lines(&self) -> Vec<String> {
        let su = var_names("u", self.src.0);
        let sz = var_names("z", self.src.1);
        component_names(self.tgt)
            .into_iter()
            .zip(self.components())
            .map(|(name, f)| format!("{name} = {}", f.render(&su, &sz)))
            .collect()
    }
}

/// `x1..xn, y1..yk`.
pub fn component_names(tgt: (usize, usize)) -> Vec<String> {
    let mut v = var_names("x", tgt.0);
    v.extend(var_names("y", tgt.1));
    v
}

impl JacobianBlocks {
    /// The full matrix `[[F, G], [0, H]]`; `arity` is the number of source
    /// smooth variables.
    pub fn assemble(&self, arity: usize) -> Matrix<Poly> {
        let zero = Matrix::zero_poly(self.h.rows(), self.f.cols(), arity);
        Matrix::block(&self.f, &self.g, &zero, &self.h)
    }
}
