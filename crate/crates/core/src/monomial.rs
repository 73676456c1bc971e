use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial, one entry per ambient variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: SmallVec<[u32; 4]>,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Self {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        Some(Self {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        })
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect(),
        }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn pow(&self, k: u32) -> Self {
        Self {
            exps: self.exps.iter().map(|&e| e * k).collect(),
        }
    }

    /// Variables occurring with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// If this is a pure power `x_i^k` with `k > 0`, returns `i`.
    pub fn pure_power_variable(&self) -> Option<usize> {
        let mut it = self.support();
        match (it.next(), it.next()) {
            (Some(i), None) => Some(i),
            _ => None,
        }
    }

    pub(crate) fn exps_mut(&mut self) -> &mut [u32] {
        &mut self.exps
    }
}

/// A monomial order on exponent vectors in declaration order of the variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
    /// Elimination order for the first `k` variables: grevlex on the first
    /// block, ties broken by grevlex on the remaining variables.
    Elimination(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Elimination(k) => {
                let k = k.min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }

    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::GrevLex)
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Elimination(k) => format!("elim{k}"),
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "grevlex" => Ok(MonomialOrder::GrevLex),
            _ => s
                .strip_prefix("elim")
                .and_then(|k| k.parse().ok())
                .map(MonomialOrder::Elimination)
                .ok_or_else(|| format!("unknown monomial order `{s}` (expected lex, grevlex or elimK)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::GrevLex;
        // xy > z^2 in grevlex with x > y > z
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[0, 0, 2])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[2, 0, 0])), Ordering::Greater);
        // x^2 z vs x y^2: last variable z present on the left, so left is smaller
        assert_eq!(o.cmp(&m(&[2, 0, 1]), &m(&[1, 2, 0])), Ordering::Less);
    }

    #[test]
    fn elimination_prefers_first_block() {
        let o = MonomialOrder::Elimination(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn parse_order_names() {
        assert_eq!("grevlex".parse::<MonomialOrder>().unwrap(), MonomialOrder::GrevLex);
        assert_eq!("elim2".parse::<MonomialOrder>().unwrap(), MonomialOrder::Elimination(2));
        assert!("revlex".parse::<MonomialOrder>().is_err());
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::GrevLex),
            (0usize..4).prop_map(MonomialOrder::Elimination),
        ]
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..6, 3).prop_map(|v| m(&v))
    }

    proptest! {
        #[test]
        fn orders_are_total_and_multiplicative(o in orders(), a in mono(), b in mono(), c in mono()) {
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(o.cmp(&c.mul(&a), &c.mul(&b)), ab);
            prop_assert_ne!(o.cmp(&a, &Monomial::one(3)), Ordering::Less);
        }

        #[test]
        fn orders_are_transitive(o in orders(), a in mono(), b in mono(), c in mono()) {
            if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
            }
        }
    }
}
