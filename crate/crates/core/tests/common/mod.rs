//! Seeded random generators for morphisms, points and jets.
#![allow(dead_code)]

use formanifold::localforms::JetMap;
use formanifold::morphism::Morphism;
use formanifold::series::{Fps, Jet};
use formanifold::{rat, Matrix, Monomial, Poly, Rational};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coeff<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.random_range(-2..=2), 1)
}

pub fn nonzero_coeff<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let c = coeff(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn point<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| rat(rng.random_range(-2..=2), rng.random_range(1..=2)))
        .collect()
}

fn exps<R: Rng>(rng: &mut R, arity: usize, deg: usize) -> Vec<u32> {
    let mut e = vec![0u32; arity];
    if arity > 0 {
        for _ in 0..deg {
            e[rng.random_range(0..arity)] += 1;
        }
    }
    e
}

/// A few terms `c u^a z^b` with `|a| <= 2` and `min_formal <= |b| <= 2`.
pub fn fps<R: Rng>(
    rng: &mut R,
    n: usize,
    k: usize,
    order: usize,
    min_formal: usize,
    terms: usize,
) -> Fps {
    let mut out = Fps::zero(n, k, order);
    if k == 0 && min_formal > 0 {
        return out;
    }
    for _ in 0..terms {
        let deg = rng.random_range(0..=2);
        let a = exps(rng, n, deg);
        let fdeg = if k == 0 {
            0
        } else {
            rng.random_range(min_formal..=2)
        };
        let b = exps(rng, k, fdeg);
        let p = Poly::monomial(Monomial::from_exps(a), coeff(rng));
        let f = Fps::from_coeffs(n, k, order, [(Monomial::from_exps(b), p)]).unwrap();
        out = out.try_add(&f).unwrap();
    }
    out
}

/// Random morphism whose components also carry random linear terms, so
/// that differentials of every rank show up.
pub fn morphism<R: Rng>(
    rng: &mut R,
    src: (usize, usize),
    tgt: (usize, usize),
    order: usize,
) -> Morphism {
    let (n1, k1) = src;
    let linear = |rng: &mut R, smooth: bool| {
        let mut acc = Fps::zero(n1, k1, order);
        if smooth {
            for i in 0..n1 {
                if rng.random_bool(0.6) {
                    acc = acc
                        .try_add(
                            &Fps::smooth_var(n1, k1, order, i)
                                .unwrap()
                                .scale(&coeff(rng)),
                        )
                        .unwrap();
                }
            }
        }
        for j in 0..k1 {
            if rng.random_bool(0.6) {
                acc = acc
                    .try_add(
                        &Fps::formal_var(n1, k1, order, j)
                            .unwrap()
                            .scale(&coeff(rng)),
                    )
                    .unwrap();
            }
        }
        acc
    };
    let cx = (0..tgt.0)
        .map(|_| {
            let l = linear(rng, true);
            let t = rng.random_range(0..=3);
            l.try_add(&fps(rng, n1, k1, order, 0, t)).unwrap()
        })
        .collect();
    let cy = (0..tgt.1)
        .map(|_| {
            let l = linear(rng, false);
            let t = rng.random_range(0..=3);
            l.try_add(&fps(rng, n1, k1, order, 1, t)).unwrap()
        })
        .collect();
    Morphism::new(src, tgt, cx, cy).unwrap()
}

pub fn dims<R: Rng>(rng: &mut R, max: usize) -> (usize, usize) {
    loop {
        let d = (rng.random_range(0..=max), rng.random_range(0..=max));
        if d.0 + d.1 > 0 {
            return d;
        }
    }
}

fn invertible<R: Rng>(rng: &mut R, m: usize) -> Matrix<Rational> {
    loop {
        let a = Matrix::from_fn(m, m, |_, _| coeff(rng));
        if !a.det().is_zero() {
            return a;
        }
    }
}

/// A jet map `(n, k) -> (n, k)` at a random base with invertible linear
/// part and random terms of degrees 2 and 3.
pub fn invertible_jetmap<R: Rng>(rng: &mut R, d: (usize, usize), order: usize) -> JetMap {
    let m = d.0 + d.1;
    let mut base = point(rng, d.0);
    base.resize(m, Rational::zero());
    let a = invertible(rng, m);
    let comps = (0..m)
        .map(|i| {
            let mut p = if i < d.0 {
                Poly::constant(m, coeff(rng))
            } else {
                Poly::zero(m)
            };
            for l in 0..m {
                p = &p + &Poly::var(m, l).unwrap().scale(a.get(i, l));
            }
            for _ in 0..rng.random_range(0..=3) {
                let deg = rng.random_range(2..=3);
                p = &p + &Poly::monomial(Monomial::from_exps(exps(rng, m, deg)), coeff(rng));
            }
            Jet::from_shifted(base.clone(), order, p).unwrap()
        })
        .collect();
    JetMap::new(d, d, base, comps, order).unwrap()
}

/// A source or target chart change: `c + A (u, z) + quadratic terms`
/// with `A` block triangular and invertible.
pub fn chart_change<R: Rng>(rng: &mut R, d: (usize, usize), order: usize, shift: bool) -> Morphism {
    let (n, k) = d;
    let a = invertible(rng, n);
    let c = invertible(rng, k);
    let u = |i| Fps::smooth_var(n, k, order, i).unwrap();
    let z = |j| Fps::formal_var(n, k, order, j).unwrap();
    let cx = (0..n)
        .map(|i| {
            let mut f = if shift {
                Fps::constant(n, k, order, coeff(rng))
            } else {
                Fps::zero(n, k, order)
            };
            for l in 0..n {
                f = f.try_add(&u(l).scale(a.get(i, l))).unwrap();
            }
            for j in 0..k {
                f = f.try_add(&z(j).scale(&coeff(rng))).unwrap();
            }
            let q = quadratic(rng, n, k, order, 0);
            f.try_add(&q).unwrap()
        })
        .collect();
    let cy = (0..k)
        .map(|i| {
            let mut f = Fps::zero(n, k, order);
            for j in 0..k {
                f = f.try_add(&z(j).scale(c.get(i, j))).unwrap();
            }
            let q = quadratic(rng, n, k, order, 1);
            f.try_add(&q).unwrap()
        })
        .collect();
    Morphism::new(d, d, cx, cy).unwrap()
}

/// Terms of total degree 2 in `(u, z)` with formal degree at least `min_formal`.
fn quadratic<R: Rng>(rng: &mut R, n: usize, k: usize, order: usize, min_formal: usize) -> Fps {
    let mut out = Fps::zero(n, k, order);
    for _ in 0..rng.random_range(0..=2) {
        let e = exps(rng, n + k, 2);
        let (a, b) = e.split_at(n);
        if b.iter().sum::<u32>() < min_formal as u32 {
            continue;
        }
        let p = Poly::monomial(Monomial::from_exps(a.to_vec()), coeff(rng));
        out = out
            .try_add(
                &Fps::from_coeffs(n, k, order, [(Monomial::from_exps(b.to_vec()), p)]).unwrap(),
            )
            .unwrap();
    }
    out
}

/// `(u_1..u_r1, 0, z_1..z_r2; z_{r2+1}..z_{r2+r3}, 0)` as a morphism.
pub fn standard_morphism(
    src: (usize, usize),
    tgt: (usize, usize),
    r: (usize, usize, usize),
    order: usize,
) -> Morphism {
    let (n1, k1) = src;
    let (n, k) = tgt;
    let (r1, r2, r3) = r;
    let u = |i| Fps::smooth_var(n1, k1, order, i).unwrap();
    let z = |j| Fps::formal_var(n1, k1, order, j).unwrap();
    let zero = || Fps::zero(n1, k1, order);
    let mut cx: Vec<Fps> = (0..r1).map(u).collect();
    cx.extend((r1..n - r2).map(|_| zero()));
    cx.extend((0..r2).map(z));
    let mut cy: Vec<Fps> = (r2..r2 + r3).map(z).collect();
    cy.extend((r3..k).map(|_| zero()));
    Morphism::new(src, tgt, cx, cy).unwrap()
}

/// Precomposes with `u -> u - b`, moving behavior at the origin to `b`.
pub fn recenter(m: &Morphism, b: &[Rational]) -> Morphism {
    let (n, k) = m.src();
    let order = m.order();
    let sx: Vec<Fps> = (0..n)
        .map(|i| {
            Fps::smooth_var(n, k, order, i)
                .unwrap()
                .try_sub(&Fps::constant(n, k, order, b[i].clone()))
                .unwrap()
        })
        .collect();
    let sy: Vec<Fps> = (0..k)
        .map(|j| Fps::formal_var(n, k, order, j).unwrap())
        .collect();
    let shift = Morphism::new((n, k), (n, k), sx, sy).unwrap();
    Morphism::compose(m, &shift).unwrap()
}
