//! Fixed inputs for the benchmarks under `benches/`.

use formanifold::localforms::JetMap;
use formanifold::morphism::Morphism;
use formanifold::series::{Fps, Jet};
use formanifold::{rat, Poly, Rational};

/// `(u1 + z1^2, u2 + u1 z2, z1 + z2^2 + u2 z1, z2 - z1 z2)`, a local
/// diffeomorphism of `(R^2)^(2)` at the origin.
pub fn curved_diffeo(order: usize) -> Morphism {
    let u = |i| Fps::smooth_var(2, 2, order, i).unwrap();
    let z = |j| Fps::formal_var(2, 2, order, j).unwrap();
    let add = |a: Fps, b: Fps| a.try_add(&b).unwrap();
    let mul = |a: Fps, b: Fps| a.try_mul(&b).unwrap();
    let cx = vec![add(u(0), z(0).pow(2)), add(u(1), mul(u(0), z(1)))];
    let cy = vec![
        add(add(z(0), z(1).pow(2)), mul(u(1), z(0))),
        add(z(1), mul(z(0), z(1)).neg()),
    ];
    Morphism::new((2, 2), (2, 2), cx, cy).unwrap()
}

/// `(w, w^2, z1 + u1 z2)` with `w = u1 + u2^2`, from `(R^2)^(2)` to
/// `(R^2)^(1)`; constant rank `(2, 1, 1)`.
pub fn folded_map(order: usize) -> Morphism {
    let u = |i| Fps::smooth_var(2, 2, order, i).unwrap();
    let z = |j| Fps::formal_var(2, 2, order, j).unwrap();
    let w = u(0).try_add(&u(1).pow(2)).unwrap();
    let cx = vec![w.clone(), w.pow(2)];
    let cy = vec![z(0).try_add(&u(0).try_mul(&z(1)).unwrap()).unwrap()];
    Morphism::new((2, 2), (2, 1), cx, cy).unwrap()
}

/// Dense polynomial `(1 + x1 + ... + xn)^d`.
pub fn dense_poly(n: usize, d: u32) -> Poly {
    let mut p = Poly::one(n);
    for i in 0..n {
        p = &p + &Poly::var(n, i).unwrap();
    }
    p.pow(d)
}

/// A jet map of `(R^1)^(1)` at `1/2` with cubic terms.
pub fn cubic_jetmap(order: usize) -> JetMap {
    let base = vec![rat(1, 2), Rational::from_integer(0.into())];
    let x = Poly::var(2, 0).unwrap();
    let y = Poly::var(2, 1).unwrap();
    let c0 = &(&Poly::constant(2, rat(3, 1)) + &x) + &(&y.pow(2) + &x.pow(3));
    let c1 = &(&y + &(&x * &y)) + &y.pow(3).scale(&rat(-1, 3));
    let comps = [c0, c1]
        .into_iter()
        .map(|p| Jet::from_shifted(base.clone(), order, p).unwrap())
        .collect();
    JetMap::new((1, 1), (1, 1), base, comps, order).unwrap()
}
