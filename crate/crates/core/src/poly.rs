//! Sparse multivariate polynomials over `F_p`.
//!
//! A [`Poly`] stores its nonzero terms sorted in descending grevlex order,
//! which is also the order used when printing. Algorithms that need a
//! different monomial order work on [`Terms`] sorted by that order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};

/// Term vector sorted strictly descending in some monomial order, no zero coefficients.
pub(crate) type Terms = Vec<(Monomial, u32)>;

/// The ambient polynomial ring `F_p[x_1, ..., x_n]`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.field, self.vars.join(","))
    }
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(p: u32, vars: &[S]) -> Result<Arc<Self>> {
        let field = PrimeField::new(p)?;
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Self { field, vars }))
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(self: &Arc<Self>) -> Poly {
        Poly {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> Poly {
        self.constant(1)
    }

    pub fn constant(self: &Arc<Self>, c: i64) -> Poly {
        self.monomial(Monomial::one(self.nvars()), c)
    }

    pub fn var(self: &Arc<Self>, index: usize) -> Poly {
        self.monomial(Monomial::variable(self.nvars(), index), 1)
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial, c: i64) -> Poly {
        assert_eq!(m.nvars(), self.nvars(), "monomial arity mismatch");
        let c = self.field.reduce(c);
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Poly {
            ring: self.clone(),
            terms,
        }
    }

    /// Parses an expression in this ring's variables; see [`crate::parse`].
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Poly> {
        crate::parse::parse_poly(self, text)
    }

    /// The ring with `extra` fresh variables prepended (named `_w0`, `_w1`, ...).
    pub(crate) fn with_leading_variables(&self, extra: usize) -> Arc<Self> {
        let mut vars: Vec<String> = (0..extra).map(|i| format!("_w{i}")).collect();
        vars.extend(self.vars.iter().cloned());
        Arc::new(Self {
            field: self.field.clone(),
            vars,
        })
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!("{a:?} vs {b:?}")))
    }
}

/// A polynomial in a [`PolyRing`].
#[derive(Clone)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: Terms,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub(crate) fn sort_terms(terms: &mut Terms, order: MonomialOrder) {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
}

/// Collects terms, merging equal monomials and dropping zeros, sorted for `order`.
pub(crate) fn collect_terms(
    field: &PrimeField,
    it: impl IntoIterator<Item = (Monomial, u32)>,
    order: MonomialOrder,
) -> Terms {
    let mut acc: HashMap<Monomial, u32> = HashMap::new();
    for (m, c) in it {
        let e = acc.entry(m).or_insert(0);
        *e = field.add(*e, c);
    }
    let mut terms: Terms = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    sort_terms(&mut terms, order);
    terms
}

/// `f - c * m * g`, all sorted for `order`.
pub(crate) fn sub_scaled(
    field: &PrimeField,
    order: MonomialOrder,
    f: &[(Monomial, u32)],
    c: u32,
    m: &Monomial,
    g: &[(Monomial, u32)],
) -> Terms {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut gm: Option<(Monomial, u32)> = g.first().map(|(gm, gc)| (gm.mul(m), field.mul(*gc, c)));
    while let Some((ref gmon, gcoef)) = gm {
        if i < f.len() {
            match order.cmp(&f[i].0, gmon) {
                Ordering::Greater => {
                    out.push(f[i].clone());
                    i += 1;
                    continue;
                }
                Ordering::Equal => {
                    let v = field.sub(f[i].1, gcoef);
                    if v != 0 {
                        out.push((f[i].0.clone(), v));
                    }
                    i += 1;
                }
                Ordering::Less => out.push((gmon.clone(), field.neg(gcoef))),
            }
        } else {
            out.push((gmon.clone(), field.neg(gcoef)));
        }
        j += 1;
        gm = g.get(j).map(|(gm, gc)| (gm.mul(m), field.mul(*gc, c)));
    }
    out.extend_from_slice(&f[i..]);
    out
}

pub(crate) fn mul_terms(
    field: &PrimeField,
    order: MonomialOrder,
    f: &[(Monomial, u32)],
    g: &[(Monomial, u32)],
) -> Terms {
    if f.len() == 1 || g.len() == 1 {
        // order is multiplicative, so the sort survives
        let (single, other) = if f.len() == 1 { (&f[0], g) } else { (&g[0], f) };
        return other
            .iter()
            .map(|(m, c)| (m.mul(&single.0), field.mul(*c, single.1)))
            .collect();
    }
    let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(f.len() * g.len());
    for (m1, c1) in f {
        for (m2, c2) in g {
            let e = acc.entry(m1.mul(m2)).or_insert(0);
            *e = field.add(*e, field.mul(*c1, *c2));
        }
    }
    let mut terms: Terms = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    sort_terms(&mut terms, order);
    terms
}

impl Poly {
    pub(crate) fn from_sorted_terms(ring: Arc<PolyRing>, terms: Terms) -> Self {
        debug_assert!(terms.windows(2).all(|w| MonomialOrder::GrevLex.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        Self { ring, terms }
    }

    /// Builds a polynomial from arbitrary terms with coefficients given as integers.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let field = ring.field().clone();
        let terms = collect_terms(
            &field,
            terms.into_iter().map(|(m, c)| {
                assert_eq!(m.nvars(), ring.nvars(), "monomial arity mismatch");
                (m, field.reduce(c))
            }),
            MonomialOrder::GrevLex,
        );
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    /// Re-sorts terms from `order` into the canonical grevlex order.
    pub(crate) fn from_order_terms(ring: &Arc<PolyRing>, mut terms: Terms, order: MonomialOrder) -> Self {
        if order != MonomialOrder::GrevLex {
            sort_terms(&mut terms, MonomialOrder::GrevLex);
        }
        Self::from_sorted_terms(ring.clone(), terms)
    }

    /// Terms sorted descending in `order`.
    pub(crate) fn terms_in(&self, order: MonomialOrder) -> Terms {
        let mut t = self.terms.clone();
        if order != MonomialOrder::GrevLex {
            sort_terms(&mut t, order);
        }
        t
    }

    #[inline]
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Nonzero terms in descending grevlex order.
    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, u32)> {
        let best = self
            .terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))?;
        Some((&best.0, best.1))
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map_or(0, |(_, c)| *c)
    }

    /// True if every term has the same weighted degree.
    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.weighted_degree(weights));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        check_ring(&self.ring, &other.ring)?;
        let f = self.ring.field();
        let terms = collect_terms(
            f,
            self.terms.iter().chain(&other.terms).cloned(),
            MonomialOrder::GrevLex,
        );
        Ok(Poly::from_sorted_terms(self.ring.clone(), terms))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        check_ring(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ring.zero());
        }
        let terms = mul_terms(self.ring.field(), MonomialOrder::GrevLex, &self.terms, &other.terms);
        Ok(Poly::from_sorted_terms(self.ring.clone(), terms))
    }

    fn neg_ref(&self) -> Poly {
        let f = self.ring.field();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), *c)).collect(),
        }
    }

    /// Scales so that the grevlex-leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.ring.field().inv_nonzero(*c)),
        }
    }

    /// `f^q` for `q` a power of the characteristic, computed term-wise.
    ///
    /// Coefficients lie in `F_p`, so `c^q = c` and `(sum c_m m)^q = sum c_m m^q`.
    pub fn frobenius_power(&self, q: u64) -> Result<Poly> {
        let field = self.ring.field();
        if field.log_q(q).is_none() {
            return Err(Error::Usage(format!(
                "{q} is not a power of the characteristic {}",
                field.characteristic()
            )));
        }
        let q = u32::try_from(q).map_err(|_| Error::Usage(format!("exponent {q} too large")))?;
        Ok(Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.pow(q), *c)).collect(),
        })
    }

    /// `f^n` by binary exponentiation, failing once any intermediate result
    /// exceeds `term_budget` terms.
    pub fn pow(&self, n: u64, term_budget: usize) -> Result<Poly> {
        let guard = |p: &Poly, step: &str| -> Result<()> {
            if p.num_terms() > term_budget {
                Err(Error::Resource {
                    what: format!("term budget in power computation ({step}, exponent {n})"),
                    limit: term_budget,
                    reached: p.num_terms(),
                })
            } else {
                Ok(())
            }
        };
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
                guard(&acc, "accumulator")?;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
                guard(&base, "square")?;
            }
        }
        Ok(acc)
    }

    /// Maps variable `i` to variable `i + offset` of `target`.
    pub(crate) fn shift_into(&self, target: &Arc<PolyRing>, offset: usize) -> Poly {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                e[offset..offset + m.nvars()].copy_from_slice(m.exponents());
                (Monomial::from_exponents(&e), *c)
            })
            .collect();
        Poly::from_order_terms(target, terms, MonomialOrder::Lex)
    }

    /// Drops the first `offset` variables, which must not occur.
    pub(crate) fn unshift_into(&self, target: &Arc<PolyRing>, offset: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                debug_assert!(m.exponents()[..offset].iter().all(|&e| e == 0));
                (Monomial::from_exponents(&m.exponents()[offset..]), *c)
            })
            .collect();
        Poly::from_sorted_terms(target.clone(), terms)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.try_add(rhs).expect("polynomials from different rings")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.try_sub(rhs).expect("polynomials from different rings")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.try_mul(rhs).expect("polynomials from different rings")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

impl fmt::Display for Poly {
    /// Prints terms in descending grevlex order, coefficients in the
    /// symmetric range `(-p/2, p/2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let p = self.ring.characteristic();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = if *c > p / 2 { (true, p - c) } else { (false, *c) };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if abs != 1 || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in self.ring.variables().iter().zip(m.exponents()) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
