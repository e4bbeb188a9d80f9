use std::collections::HashMap;

use super::{Monomial, Rational};

/// Minimal commutative-algebra interface shared by polynomials, series and
/// jets, so that polynomial evaluation can target any of them.
pub trait Algebra: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
}

/// Evaluates `sum c_m * args^m`. Monomial images are memoized, each one
/// built from a predecessor with a single multiplication. `proto` supplies
/// zero and one when `args` is empty.
pub fn eval_with_powers<'a, A, I>(terms: I, args: &[A], proto: &A) -> A
where
    A: Algebra,
    I: IntoIterator<Item = (&'a Monomial, &'a Rational)>,
{
    let mut cache: HashMap<Vec<u32>, A> = HashMap::new();
    let mut acc = proto.zero_like();
    for (m, c) in terms {
        let img = image(m.exps().to_vec(), args, proto, &mut cache);
        acc = acc.add_ref(&img.scaled(c));
    }
    acc
}

/// Images of several monomials under `x_i -> args[i]`, sharing one cache.
pub fn monomial_images<A: Algebra>(monos: &[Monomial], args: &[A], proto: &A) -> Vec<A> {
    let mut cache: HashMap<Vec<u32>, A> = HashMap::new();
    monos
        .iter()
        .map(|m| image(m.exps().to_vec(), args, proto, &mut cache))
        .collect()
}

fn image<A: Algebra>(exps: Vec<u32>, args: &[A], proto: &A, cache: &mut HashMap<Vec<u32>, A>) -> A {
    if let Some(v) = cache.get(&exps) {
        return v.clone();
    }
    let out = match exps.iter().position(|&e| e > 0) {
        None => proto.one_like(),
        Some(i) => {
            let mut prev = exps.clone();
            prev[i] -= 1;
            if prev.iter().all(|&e| e == 0) {
                args[i].clone()
            } else {
                image(prev, args, proto, cache).mul_ref(&args[i])
            }
        }
    };
    cache.insert(exps, out.clone());
    out
}
