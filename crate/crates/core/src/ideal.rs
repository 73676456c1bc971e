//! Ideals of `F_p[x_1..x_n]` and the operations built on Groebner bases.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::artinian::ArtinianBasis;
use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, DEFAULT_PAIR_LIMIT};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{check_ring, Poly, PolyRing};

/// Default term budget for intermediate powers.
pub const DEFAULT_TERM_BUDGET: usize = 2_000_000;

/// An ideal given by generators, with reduced Groebner bases cached per order.
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Poly>,
    cache: RwLock<BTreeMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Poly>) -> Result<Self> {
        for g in &gens {
            check_ring(ring, g.ring())?;
        }
        Ok(Self {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: RwLock::new(BTreeMap::new()),
        })
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing>, exprs: &[S]) -> Result<Self> {
        let gens = exprs.iter().map(|e| ring.parse(e.as_ref())).collect::<Result<_>>()?;
        Self::new(ring, gens)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, Vec::new()).expect("same ring")
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, vec![ring.one()]).expect("same ring")
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, (0..ring.nvars()).map(|i| ring.var(i)).collect()).expect("same ring")
    }

    /// An ideal whose reduced basis for `gb.order()` is already known.
    pub(crate) fn from_basis(gb: GroebnerBasis) -> Self {
        let ring = gb.ring().clone();
        let order = gb.order();
        let ideal = Self {
            ring,
            gens: gb.polys(),
            cache: RwLock::new(BTreeMap::new()),
        };
        ideal.cache.write().expect("cache lock").insert(order, Arc::new(gb));
        ideal
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// The reduced Groebner basis for `order`, computed once and cached.
    pub fn groebner(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.read().expect("cache lock").get(&order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(GroebnerBasis::compute(&self.ring, order, &self.gens, DEFAULT_PAIR_LIMIT)?);
        // racing writers compute identical bases; keep whichever landed first
        let mut cache = self.cache.write().expect("cache lock");
        Ok(cache.entry(order).or_insert(gb).clone())
    }

    pub fn normal_form(&self, f: &Poly, order: MonomialOrder) -> Result<Poly> {
        check_ring(&self.ring, f.ring())?;
        Ok(self.groebner(order)?.normal_form(f))
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner(MonomialOrder::GrevLex)?.is_unit())
    }

    pub fn member(&self, f: &Poly) -> Result<bool> {
        check_ring(&self.ring, f.ring())?;
        Ok(self.groebner(MonomialOrder::GrevLex)?.contains(f))
    }

    /// `J ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        check_ring(&self.ring, &other.ring)?;
        let gb = self.groebner(MonomialOrder::GrevLex)?;
        Ok(other.gens.iter().all(|g| gb.contains(g)))
    }

    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        check_ring(&self.ring, &other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn add_generators(&self, extra: impl IntoIterator<Item = Poly>) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }

    /// `I^[q]`, generated by the `q`-th powers of the generators.
    pub fn bracket_power(&self, q: u64) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.frobenius_power(q)).collect::<Result<_>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// Zero-dimensional means every variable has a pure power among the leading terms.
    pub fn is_zero_dimensional(&self) -> Result<bool> {
        let gb = self.groebner(MonomialOrder::GrevLex)?;
        if gb.is_unit() {
            return Ok(true);
        }
        let mut seen = vec![false; self.ring.nvars()];
        for m in gb.leading_monomials() {
            if let Some(i) = m.pure_power_variable() {
                seen[i] = true;
            }
        }
        Ok(seen.into_iter().all(|s| s))
    }

    /// Krull dimension of `S/I`, read off the leading-term ideal; `-1` for the unit ideal.
    pub fn krull_dim(&self) -> Result<i64> {
        let gb = self.groebner(MonomialOrder::GrevLex)?;
        if gb.is_unit() {
            return Ok(-1);
        }
        let n = self.ring.nvars();
        if n > 24 {
            return Err(Error::Usage(format!("dimension search over {n} variables is not supported")));
        }
        let supports: Vec<u32> = gb
            .leading_monomials()
            .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
            .collect();
        let best = (0u32..(1 << n))
            .filter(|&set| supports.iter().all(|&s| s & !set != 0))
            .map(|set| set.count_ones())
            .max()
            .unwrap_or(0);
        Ok(best as i64)
    }

    /// `I ∩ J` by eliminating `w` from `wI + (1-w)J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        check_ring(&self.ring, &other.ring)?;
        let big = self.ring.with_leading_variables(1);
        let w = big.var(0);
        let one_minus_w = &big.one() - &w;
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| &g.shift_into(&big, 1) * &w).collect();
        gens.extend(other.gens.iter().map(|g| &g.shift_into(&big, 1) * &one_minus_w));
        let elim = Ideal::new(&big, gens)?;
        let gb = elim.groebner(MonomialOrder::Elimination(1))?;
        let kept: Vec<Poly> = gb
            .polys()
            .into_iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
            .map(|g| g.unshift_into(&self.ring, 1))
            .collect();
        Ideal::new(&self.ring, kept)
    }

    /// `(I : f) = { r : r f ∈ I }`.
    pub fn colon(&self, f: &Poly) -> Result<Ideal> {
        self.colon_by_factors(std::slice::from_ref(f))
    }

    /// `(I : g_1 ⋯ g_k)` without forming the product.
    pub fn colon_by_factors(&self, factors: &[Poly]) -> Result<Ideal> {
        for f in factors {
            check_ring(&self.ring, f.ring())?;
            if f.is_zero() {
                return Err(Error::Usage("colon by the zero polynomial".into()));
            }
        }
        if self.is_unit()? {
            return Ok(Ideal::unit(&self.ring));
        }
        if self.is_zero_dimensional()? {
            let basis = ArtinianBasis::of_ideal(self, MonomialOrder::GrevLex)?;
            return Ok(basis.colon(factors)?.to_ideal());
        }
        let mut acc = self.clone();
        for f in factors {
            acc = acc.colon_general(f)?;
        }
        Ok(acc)
    }

    /// The elimination route: `(I : f) = (I ∩ (f)) / f`.
    pub(crate) fn colon_general(&self, f: &Poly) -> Result<Ideal> {
        let principal = Ideal::new(&self.ring, vec![f.clone()])?;
        let inter = self.intersect(&principal)?;
        let gens = inter
            .gens
            .iter()
            .map(|g| exact_quotient(g, f))
            .collect::<Result<_>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `(I : J)`, the intersection of `(I : g)` over generators `g` of `J`.
    pub fn colon_ideal(&self, other: &Ideal) -> Result<Ideal> {
        check_ring(&self.ring, &other.ring)?;
        let mut acc = Ideal::unit(&self.ring);
        for g in &other.gens {
            let c = self.colon(g)?;
            acc = if acc.is_unit()? { c } else { acc.intersect(&c)? };
        }
        Ok(acc)
    }

    /// `(I : f^n)`, using the base-`p` expansion `n = Σ d_i p^i` so that
    /// `f^n = Π (f^{d_i})^{[p^i]}` and each factor stays small.
    pub fn colon_by_factored_power(&self, f: &Poly, n: u64, term_budget: usize) -> Result<Ideal> {
        check_ring(&self.ring, f.ring())?;
        if n == 0 {
            return Ok(self.clone());
        }
        let factors = factored_power(f, n, term_budget)?;
        self.colon_by_factors(&factors)
    }
}

/// Factors of `f^n` along the base-`p` digits of `n`.
pub fn factored_power(f: &Poly, n: u64, term_budget: usize) -> Result<Vec<Poly>> {
    let p = f.ring().characteristic() as u64;
    let mut factors = Vec::new();
    let (mut rest, mut q) = (n, 1u64);
    while rest > 0 {
        let digit = rest % p;
        if digit > 0 {
            factors.push(f.pow(digit, term_budget)?.frobenius_power(q)?);
        }
        rest /= p;
        if rest > 0 {
            q = q
                .checked_mul(p)
                .ok_or_else(|| Error::Usage(format!("exponent {n} too large")))?;
        }
    }
    Ok(factors)
}

/// `g / f` for `f` dividing `g` exactly.
fn exact_quotient(g: &Poly, f: &Poly) -> Result<Poly> {
    let order = MonomialOrder::GrevLex;
    let field = f.ring().field();
    let ft = f.terms_in(order);
    let (lm, lc) = (ft[0].0.clone(), ft[0].1);
    let inv = field.inv_nonzero(lc);
    let mut rem = g.terms_in(order);
    let mut quot: Vec<(Monomial, u32)> = Vec::new();
    while let Some((m, c)) = rem.first().cloned() {
        let q = m
            .div(&lm)
            .ok_or_else(|| Error::Usage("division is not exact".into()))?;
        let qc = field.mul(c, inv);
        rem = crate::poly::sub_scaled(field, order, &rem, qc, &q, &ft);
        quot.push((q, qc));
    }
    Ok(Poly::from_order_terms(g.ring(), quot, order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3(p: u32) -> Arc<PolyRing> {
        PolyRing::new(p, &["x", "y", "z"]).unwrap()
    }

    fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
        Ideal::parse(r, gens).unwrap()
    }

    #[test]
    fn groebner_examples() {
        let r = PolyRing::new(5, &["x", "y"]).unwrap();
        let i = ideal(&r, &["x^2", "x*y"]);
        let gb = i.groebner(MonomialOrder::Lex).unwrap();
        assert_eq!(gb.polys(), vec![r.parse("x*y").unwrap(), r.parse("x^2").unwrap()]);

        let r3 = ring3(3);
        let j = ideal(&r3, &["x*y - z^2", "x^3", "y^3", "z^3"]);
        let gb = j.groebner(MonomialOrder::GrevLex).unwrap();
        let polys = gb.polys();
        for want in ["x^2*z^2", "y^2*z^2"] {
            let w = r3.parse(want).unwrap();
            assert!(gb.contains(&w));
            assert!(polys.iter().any(|g| *g.leading_term(MonomialOrder::GrevLex).unwrap().0 == w.terms()[0].0), "{want} missing from {polys:?}");
        }

        let u = Ideal::unit(&r3);
        assert_eq!(u.groebner(MonomialOrder::Lex).unwrap().polys(), vec![r3.one()]);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring3(3);
        let i = ideal(&r, &["x^2"]);
        assert!(i.normal_form(&r.parse("x^3").unwrap(), MonomialOrder::GrevLex).unwrap().is_zero());
        let j = ideal(&r, &["x*y - z^2"]);
        let nf = j.normal_form(&r.parse("x*y").unwrap(), MonomialOrder::GrevLex).unwrap();
        assert_eq!(nf, r.parse("z^2").unwrap());
    }

    #[test]
    fn membership_and_containment() {
        let r = ring3(5);
        assert!(ideal(&r, &["x*y - z^2", "x*y"]).member(&r.parse("z^2").unwrap()).unwrap());
        let xy = ideal(&r, &["x", "y"]);
        let x = ideal(&r, &["x"]);
        assert!(xy.contains(&x).unwrap());
        assert!(!x.contains(&xy).unwrap());
        let cube = ideal(&r, &["x^3", "y^3", "z^3"]);
        assert!(!cube.member(&r.parse("x^2*y^2*z").unwrap()).unwrap());
    }

    #[test]
    fn bracket_powers() {
        let r = PolyRing::new(3, &["x", "y"]).unwrap();
        let m = ideal(&r, &["x", "y"]);
        assert!(m.bracket_power(3).unwrap().same_ideal(&ideal(&r, &["x^3", "y^3"])).unwrap());
        let s = ideal(&r, &["x + y"]);
        assert_eq!(s.bracket_power(3).unwrap().generators(), &[r.parse("x^3 + y^3").unwrap()]);
        let other = ideal(&r, &["x", "x + y"]);
        for q in [3, 9, 27] {
            assert!(m.bracket_power(q).unwrap().same_ideal(&other.bracket_power(q).unwrap()).unwrap());
        }
        assert!(m.bracket_power(6).is_err());
    }

    #[test]
    fn colon_examples() {
        for p in [2u32, 3, 5] {
            let r = PolyRing::new(p, &["x", "y"]).unwrap();
            let q = p as u64;
            let i = ideal(&r, &[&format!("x^{q}"), &format!("y^{q}")]);
            let f = r.parse(&format!("x^{}*y^{}", q - 1, q - 1)).unwrap();
            assert!(i.colon(&f).unwrap().same_ideal(&ideal(&r, &["x", "y"])).unwrap());
        }
        let r = ring3(3);
        let i = ideal(&r, &["x*y - z^2", "x^3"]);
        assert!(i.colon(&r.one()).unwrap().same_ideal(&i).unwrap());
        assert!(matches!(i.colon(&r.zero()), Err(Error::Usage(_))));
    }

    #[test]
    fn colon_by_squared_quadric() {
        let r = ring3(3);
        let cube = ideal(&r, &["x^3", "y^3", "z^3"]);
        let f = r.parse("x*y - z^2").unwrap();
        let direct = cube.colon(&f.pow(2, 100).unwrap()).unwrap();
        let stepwise = cube.colon(&f).unwrap().colon(&f).unwrap();
        let factored = cube.colon_by_factored_power(&f, 2, 100).unwrap();
        assert!(direct.same_ideal(&stepwise).unwrap());
        assert!(direct.same_ideal(&factored).unwrap());
        assert!(direct.member(&r.parse("z^2 - x*y").unwrap()).unwrap());
        assert!(!direct.member(&r.parse("z^2").unwrap()).unwrap());
        assert!(cube.colon_by_factored_power(&f, 0, 100).unwrap().same_ideal(&cube).unwrap());

        let nine = ideal(&r, &["x^9", "y^9", "z^9"]);
        let a = nine.colon_by_factored_power(&f, 8, 10_000).unwrap();
        let b = nine.colon(&f.pow(8, 10_000).unwrap()).unwrap();
        assert!(a.same_ideal(&b).unwrap());
    }

    #[test]
    fn general_colon_path_matches_artinian_path() {
        let r = ring3(3);
        let i = ideal(&r, &["x*y - z^2", "x^3", "y^3", "z^3"]);
        let f = r.parse("z").unwrap();
        let fast = i.colon(&f).unwrap();
        let slow = i.colon_general(&f).unwrap();
        assert!(fast.same_ideal(&slow).unwrap());

        // non-zero-dimensional: (x*y) : x = (y)
        let j = ideal(&r, &["x*y"]);
        assert!(j.colon(&r.parse("x").unwrap()).unwrap().same_ideal(&ideal(&r, &["y"])).unwrap());
        // (x^2*y, x*y^2) : (x, y) = (x*y)
        let k = ideal(&r, &["x^2*y", "x*y^2"]);
        let m = ideal(&r, &["x", "y"]);
        assert!(k.colon_ideal(&m).unwrap().same_ideal(&ideal(&r, &["x*y"])).unwrap());
    }

    #[test]
    fn intersection_of_monomial_ideals() {
        let r = ring3(5);
        let a = ideal(&r, &["x", "y"]);
        let b = ideal(&r, &["y", "z"]);
        assert!(a.intersect(&b).unwrap().same_ideal(&ideal(&r, &["y", "x*z"])).unwrap());
    }

    #[test]
    fn krull_dimensions() {
        let r = ring3(3);
        assert_eq!(ideal(&r, &["x*y - z^2"]).krull_dim().unwrap(), 2);
        assert_eq!(Ideal::zero(&r).krull_dim().unwrap(), 3);
        assert_eq!(Ideal::unit(&r).krull_dim().unwrap(), -1);
        let r2 = PolyRing::new(3, &["x", "y"]).unwrap();
        assert_eq!(ideal(&r2, &["x*y"]).krull_dim().unwrap(), 1);
        assert_eq!(ideal(&r2, &["x^2", "y^5"]).krull_dim().unwrap(), 0);
    }

    #[test]
    fn mixed_rings_are_rejected() {
        let a = ideal(&ring3(3), &["x"]);
        let b = ideal(&ring3(5), &["x"]);
        assert!(matches!(a.contains(&b), Err(Error::RingMismatch(_))));
        assert!(matches!(a.member(&ring3(7).parse("x").unwrap()), Err(Error::RingMismatch(_))));
    }
}
