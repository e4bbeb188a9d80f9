use std::cmp::Ordering;
use std::fmt;

/// Exponent vector. Ordered by total degree, then lexicographically with
/// larger powers of earlier variables first, so that `1 < x1 < x2 < x1^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Concatenation, used to glue smooth and formal exponents.
    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        Monomial(e)
    }

    pub fn split_at(&self, mid: usize) -> (Monomial, Monomial) {
        (
            Monomial(self.0[..mid].to_vec()),
            Monomial(self.0[mid..].to_vec()),
        )
    }

    /// Every monomial in `arity` variables of total degree exactly `d`,
    /// in ascending order.
    pub fn all_of_degree(arity: usize, d: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; arity];
        fn rec(i: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left as u32;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u32;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if arity == 0 {
            if d == 0 {
                out.push(Monomial(vec![]));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }

    /// Monomials of total degree in `lo..=hi`, ascending.
    pub fn all_in_degrees(arity: usize, lo: usize, hi: usize) -> Vec<Monomial> {
        (lo..=hi)
            .flat_map(|d| Monomial::all_of_degree(arity, d))
            .collect()
    }

    /// Writes the monomial with the given variable names, `None` for 1.
    pub fn render(&self, names: &[String]) -> Option<String> {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, n)| {
                if e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            None
        } else {
            Some(parts.join("*"))
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let one = Monomial::one(2);
        let x1 = Monomial::var(2, 0);
        let x2 = Monomial::var(2, 1);
        let x1sq = Monomial::from_exps(vec![2, 0]);
        let x1x2 = Monomial::from_exps(vec![1, 1]);
        let mut v = vec![
            x1x2.clone(),
            x2.clone(),
            x1sq.clone(),
            one.clone(),
            x1.clone(),
        ];
        v.sort();
        assert_eq!(v, vec![one, x1, x2, x1sq, x1x2]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_in_degrees(2, 1, 3).len(), 9);
        assert_eq!(Monomial::all_of_degree(0, 0).len(), 1);
        assert!(Monomial::all_of_degree(0, 1).is_empty());
        let d2 = Monomial::all_of_degree(2, 2);
        let mut sorted = d2.clone();
        sorted.sort();
        assert_eq!(d2, sorted);
    }

    #[test]
    fn render_names() {
        let names: Vec<String> = vec!["u1".into(), "u2".into()];
        assert_eq!(
            Monomial::from_exps(vec![2, 1]).render(&names).unwrap(),
            "u1^2*u2"
        );
        assert!(Monomial::one(2).render(&names).is_none());
    }
}
