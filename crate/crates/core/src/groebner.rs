//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller installation of Buchberger's product and chain criteria.
//!
//! All bases returned are reduced, monic and sorted by ascending leading
//! monomial, so equal ideals give identical bases.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{sub_scaled, Poly, PolyRing, Terms};

/// Default cap on the number of pending critical pairs.
pub const DEFAULT_PAIR_LIMIT: usize = 2_000_000;

#[derive(Clone)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    order: MonomialOrder,
    elems: Vec<Terms>,
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.polys()).finish()
    }
}

fn make_monic(field: &PrimeField, t: &mut Terms) {
    if let Some(&(_, c)) = t.first() {
        if c != 1 {
            let inv = field.inv_nonzero(c);
            for (_, a) in t.iter_mut() {
                *a = field.mul(*a, inv);
            }
        }
    }
}

/// Normal form of `f` with respect to monic `basis` elements.
/// With `full == false` only the leading term is reduced.
pub(crate) fn reduce_terms<'a>(
    field: &PrimeField,
    order: MonomialOrder,
    f: Terms,
    basis: impl Fn() -> Box<dyn Iterator<Item = &'a Terms> + 'a>,
    full: bool,
) -> Terms {
    let mut rem: Terms = Vec::new();
    let mut work = f;
    let mut start = 0;
    while start < work.len() {
        let (m, c) = (&work[start].0, work[start].1);
        let divisor = basis().find(|g| g[0].0.divides(m));
        match divisor {
            Some(g) => {
                let q = m.div(&g[0].0).expect("divisibility checked");
                work = sub_scaled(field, order, &work[start..], c, &q, g);
                start = 0;
            }
            None => {
                if !full {
                    rem.extend(work.drain(start..));
                    return rem;
                }
                rem.push(work[start].clone());
                start += 1;
            }
        }
    }
    rem
}

fn s_polynomial(field: &PrimeField, order: MonomialOrder, f: &Terms, g: &Terms) -> Terms {
    let lcm = f[0].0.lcm(&g[0].0);
    let mf = lcm.div(&f[0].0).expect("lcm");
    let mg = lcm.div(&g[0].0).expect("lcm");
    let fm: Terms = f[1..].iter().map(|(m, c)| (m.mul(&mf), *c)).collect();
    let gm: Terms = g[1..].to_vec();
    sub_scaled(field, order, &fm, 1, &mg, &gm)
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Builder {
    order: MonomialOrder,
    polys: Vec<Terms>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    pair_limit: usize,
}

impl Builder {
    fn reducers<'s>(&'s self) -> impl Fn() -> Box<dyn Iterator<Item = &'s Terms> + 's> + 's {
        move || Box::new(self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p))
    }

    fn update(&mut self, h: Terms) -> Result<()> {
        let hl = h[0].0.clone();
        let k = self.polys.len();
        let active: Vec<usize> = (0..k).filter(|&i| self.active[i]).collect();

        // Candidate new pairs, pruned by the chain criterion among themselves.
        let cand: Vec<Pair> = active
            .iter()
            .map(|&i| Pair {
                i,
                j: k,
                lcm: self.polys[i][0].0.lcm(&hl),
            })
            .collect();
        let mut keep: Vec<Pair> = Vec::new();
        for (idx, p) in cand.iter().enumerate() {
            let coprime = self.polys[p.i][0].0.is_coprime(&hl);
            let dominated = cand[idx + 1..].iter().chain(keep.iter()).any(|o| o.lcm.divides(&p.lcm));
            if coprime || !dominated {
                keep.push(p.clone());
            }
        }
        let new_pairs: Vec<Pair> = keep
            .into_iter()
            .filter(|p| !self.polys[p.i][0].0.is_coprime(&hl))
            .collect();

        // Old pairs made redundant by h.
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(hl.divides(&p.lcm)
                && polys[p.i][0].0.lcm(&hl) != p.lcm
                && polys[p.j][0].0.lcm(&hl) != p.lcm)
        });
        self.pairs.extend(new_pairs);

        for &i in &active {
            if hl.divides(&self.polys[i][0].0) {
                self.active[i] = false;
            }
        }
        self.polys.push(h);
        self.active.push(true);

        if self.pairs.len() > self.pair_limit {
            return Err(Error::Resource {
                what: "critical pair queue in Groebner basis computation".into(),
                limit: self.pair_limit,
                reached: self.pairs.len(),
            });
        }
        Ok(())
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                order
                    .cmp(&a.lcm, &b.lcm)
                    .then(a.j.cmp(&b.j))
                    .then(a.i.cmp(&b.i))
            })
            .map(|(idx, _)| idx)?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Computes the reduced Groebner basis of the ideal generated by `gens`.
pub(crate) fn buchberger(
    field: &PrimeField,
    order: MonomialOrder,
    gens: Vec<Terms>,
    pair_limit: usize,
) -> Result<Vec<Terms>> {
    let mut gens: Vec<Terms> = gens.into_iter().filter(|g| !g.is_empty()).collect();
    for g in gens.iter_mut() {
        make_monic(field, g);
    }
    if let Some(unit) = gens.iter().find(|g| g[0].0.is_one()) {
        return Ok(vec![unit[..1].to_vec()]);
    }
    gens.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0).then(a.len().cmp(&b.len())));

    let mut b = Builder {
        order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        pair_limit,
    };
    for g in gens {
        let mut h = reduce_terms(field, order, g, b.reducers(), true);
        if h.is_empty() {
            continue;
        }
        make_monic(field, &mut h);
        if h[0].0.is_one() {
            return Ok(vec![h]);
        }
        b.update(h)?;
    }
    while let Some(pair) = b.select() {
        let s = s_polynomial(field, order, &b.polys[pair.i], &b.polys[pair.j]);
        let mut h = reduce_terms(field, order, s, b.reducers(), true);
        if h.is_empty() {
            continue;
        }
        make_monic(field, &mut h);
        if h[0].0.is_one() {
            return Ok(vec![h]);
        }
        b.update(h)?;
    }

    // Active elements form a minimal basis; interreduce tails.
    let minimal: Vec<Terms> = b
        .polys
        .into_iter()
        .zip(b.active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others = || -> Box<dyn Iterator<Item = &Terms> + '_> {
            Box::new(minimal.iter().enumerate().filter(move |(j, _)| *j != i).map(|(_, p)| p))
        };
        let tail = reduce_terms(field, order, g[1..].to_vec(), others, true);
        let mut r = Vec::with_capacity(tail.len() + 1);
        r.push(g[0].clone());
        r.extend(tail);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    Ok(reduced)
}

impl GroebnerBasis {
    pub(crate) fn compute(ring: &Arc<PolyRing>, order: MonomialOrder, gens: &[Poly], pair_limit: usize) -> Result<Self> {
        let terms = gens.iter().map(|g| g.terms_in(order)).collect();
        let elems = buchberger(ring.field(), order, terms, pair_limit)?;
        Ok(Self {
            ring: ring.clone(),
            order,
            elems,
        })
    }

    /// Wraps terms already known to form a reduced, monic, sorted basis.
    pub(crate) fn from_reduced(ring: &Arc<PolyRing>, order: MonomialOrder, elems: Vec<Terms>) -> Self {
        Self {
            ring: ring.clone(),
            order,
            elems,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0][0].0.is_one()
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.elems
            .iter()
            .map(|t| Poly::from_order_terms(&self.ring, t.clone(), self.order))
            .collect()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elems.iter().map(|t| &t[0].0)
    }

    pub(crate) fn reduce(&self, f: Terms) -> Terms {
        let elems = &self.elems;
        reduce_terms(
            self.ring.field(),
            self.order,
            f,
            || Box::new(elems.iter()),
            true,
        )
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        let r = self.reduce(f.terms_in(self.order));
        Poly::from_order_terms(&self.ring, r, self.order)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f.terms_in(self.order)).is_empty()
    }

    /// True if some leading monomial divides `m`.
    pub fn is_leading_multiple(&self, m: &Monomial) -> bool {
        self.elems.iter().any(|g| g[0].0.divides(m))
    }
}
