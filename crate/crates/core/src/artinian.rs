//! Finite-length quotients `S/J`: standard-monomial bases, lengths, colons
//! by linear algebra, and socles.
//!
//! When `J` and the multipliers are homogeneous for some positive weight
//! vector, every linear map here preserves the grading and is solved one
//! degree block at a time (in parallel); otherwise the whole basis is one block.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideal::Ideal;
use crate::invariants::RingPresentation;
use crate::linalg::{kernel_block, SparseVec, Subspace};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{mul_terms, Poly, PolyRing, Terms};

/// Largest weight tried when searching for a grading.
const MAX_WEIGHT: u32 = 8;

#[derive(Debug, Clone)]
struct Grading {
    weights: Vec<u32>,
    degrees: Vec<u64>,
    max: u64,
}

/// Finds positive weights making every polynomial homogeneous, trying the
/// standard grading first. The search is exhaustive for up to four variables.
pub fn find_grading<'a>(polys: impl IntoIterator<Item = &'a Poly> + Clone, nvars: usize) -> Option<Vec<u32>> {
    let works = |w: &[u32]| polys.clone().into_iter().all(|p| p.is_homogeneous(w));
    let ones = vec![1; nvars];
    if works(&ones) {
        return Some(ones);
    }
    if nvars > 4 {
        return None;
    }
    let mut w = vec![1u32; nvars];
    loop {
        if works(&w) {
            return Some(w);
        }
        let mut i = 0;
        loop {
            if i == nvars {
                return None;
            }
            if w[i] < MAX_WEIGHT {
                w[i] += 1;
                break;
            }
            w[i] = 1;
            i += 1;
        }
    }
}

/// The monomials outside the leading-term ideal of a zero-dimensional ideal.
#[derive(Debug, Clone)]
pub struct ArtinianBasis {
    ring: Arc<PolyRing>,
    gb: Arc<GroebnerBasis>,
    /// ascending in the basis order
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    grading: Option<Grading>,
}

/// Standard monomials of `S/I` for `order`.
pub fn standard_monomials(ideal: &Ideal, order: MonomialOrder) -> Result<ArtinianBasis> {
    ArtinianBasis::of_ideal(ideal, order)
}

impl ArtinianBasis {
    pub fn of_ideal(ideal: &Ideal, order: MonomialOrder) -> Result<Self> {
        let gb = ideal.groebner(order)?;
        let ring = ideal.ring().clone();
        let n = ring.nvars();
        let mut monomials = Vec::new();
        if !gb.is_unit() {
            let mut bound = vec![None; n];
            for m in gb.leading_monomials() {
                if let Some(i) = m.pure_power_variable() {
                    bound[i] = Some(m.exponents()[i]);
                }
            }
            if let Some(i) = bound.iter().position(Option::is_none) {
                return Err(Error::NotZeroDimensional {
                    variable: ring.variables()[i].clone(),
                });
            }
            let mut cur = Monomial::one(n);
            enumerate_staircase(&gb, 0, &mut cur, &mut monomials);
            monomials.sort_by(|a, b| order.cmp(a, b));
        }
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let grading = find_grading(ideal.generators(), n).map(|weights| {
            let degrees: Vec<u64> = monomials.iter().map(|m| m.weighted_degree(&weights)).collect();
            let max = degrees.iter().copied().max().unwrap_or(0);
            Grading { weights, degrees, max }
        });
        Ok(Self {
            ring,
            gb,
            monomials,
            index,
            grading,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.gb.order()
    }

    pub fn groebner_basis(&self) -> &Arc<GroebnerBasis> {
        &self.gb
    }

    /// Standard monomials, ascending in the basis order.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// The length `λ(S/J)`.
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.index.contains_key(m)
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.grading.as_ref().map(|g| g.weights.as_slice())
    }

    /// Coordinates of the normal form of `terms` (sorted for the basis order).
    fn coords(&self, terms: Terms) -> SparseVec {
        self.gb
            .reduce(terms)
            .into_iter()
            .map(|(m, c)| (self.index[&m], c))
            .collect()
    }

    fn poly_of(&self, v: &SparseVec) -> Poly {
        let terms = v.iter().map(|&(i, c)| (self.monomials[i].clone(), c)).collect();
        Poly::from_order_terms(&self.ring, terms, self.order())
    }

    /// Splits basis indices into blocks closed under a map of the given
    /// degree shift; a single block when there is no usable grading.
    fn blocks(&self, graded: bool) -> Vec<Vec<usize>> {
        match (&self.grading, graded) {
            (Some(g), true) => {
                let mut by_deg: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
                for (i, &d) in g.degrees.iter().enumerate() {
                    by_deg.entry(d).or_default().push(i);
                }
                by_deg.into_values().collect()
            }
            _ => vec![(0..self.len()).collect()],
        }
    }

    /// Solves kernel problems block by block and assembles the result.
    fn kernel(&self, graded: bool, image: impl Fn(usize) -> SparseVec + Sync) -> (usize, Subspace) {
        let field = self.ring.field();
        let blocks = self.blocks(graded);
        let parts: Vec<_> = blocks
            .par_iter()
            .map(|b| kernel_block(field, b, &image))
            .collect();
        let rank = parts.iter().map(|p| p.rank).sum();
        let rows = parts.into_iter().flat_map(|p| p.kernel).collect();
        (rank, Subspace::from_echelon(field, rows))
    }

    /// The colon `(J : g_1 ⋯ g_k)` as a subspace of `S/J`.
    pub fn colon(&self, factors: &[Poly]) -> Result<ColonQuotient> {
        let order = self.order();
        for f in factors {
            crate::poly::check_ring(&self.ring, f.ring())?;
        }
        let field = self.ring.field();
        let terms: Vec<Terms> = factors.iter().map(|f| f.terms_in(order)).collect();
        let shift = self.grading.as_ref().and_then(|g| {
            factors
                .iter()
                .all(|f| f.is_homogeneous(&g.weights))
                .then(|| {
                    factors
                        .iter()
                        .map(|f| f.terms().first().map_or(0, |(m, _)| m.weighted_degree(&g.weights)))
                        .sum::<u64>()
                })
        });
        let image = |i: usize| -> SparseVec {
            if let (Some(s), Some(g)) = (shift, &self.grading) {
                if g.degrees[i] + s > g.max {
                    return Vec::new();
                }
            }
            let mut v: Terms = vec![(self.monomials[i].clone(), 1)];
            for t in &terms {
                v = self.gb.reduce(mul_terms(field, order, &v, t));
                if v.is_empty() {
                    break;
                }
            }
            v.into_iter().map(|(m, c)| (self.index[&m], c)).collect()
        };
        let (rank, kernel) = self.kernel(shift.is_some(), image);
        debug_assert_eq!(rank + kernel.dim(), self.len());
        Ok(ColonQuotient { base: self.clone(), kernel })
    }

    /// Basis of the socle `(J : m)/J`, as normal forms sorted by descending
    /// leading monomial.
    pub fn socle(&self) -> Vec<Poly> {
        let n = self.ring.nvars();
        let order = self.order();
        let len = self.len();
        let field = self.ring.field();
        let min_weight = self.grading.as_ref().map(|g| g.weights.iter().copied().min().unwrap_or(1) as u64);
        let image = |i: usize| -> SparseVec {
            if let (Some(w), Some(g)) = (min_weight, &self.grading) {
                if g.degrees[i] + w > g.max {
                    return Vec::new();
                }
            }
            let mut cols: SparseVec = Vec::new();
            for v in 0..n {
                let prod = mul_terms(field, order, &[(self.monomials[i].clone(), 1)], &[(Monomial::variable(n, v), 1)]);
                cols.extend(self.coords(prod).into_iter().map(|(j, c)| (v * len + j, c)));
            }
            cols.sort_unstable_by_key(|c| std::cmp::Reverse(c.0));
            cols
        };
        let (_, kernel) = self.kernel(true, image);
        kernel
            .pivots()
            .into_iter()
            .rev()
            .map(|p| self.poly_of(kernel.row(p).expect("pivot")))
            .collect()
    }

    /// Normal form of `f` modulo `J`.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        self.gb.normal_form(f)
    }
}

fn enumerate_staircase(gb: &GroebnerBasis, var: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
    let n = cur.nvars();
    if var == n {
        out.push(cur.clone());
        return;
    }
    loop {
        if gb.is_leading_multiple(cur) {
            break;
        }
        enumerate_staircase(gb, var + 1, cur, out);
        cur.exps_mut()[var] += 1;
    }
    cur.exps_mut()[var] = 0;
}

/// `(J : g)` represented by `S/J` together with the kernel subspace `(J : g)/J`.
#[derive(Debug, Clone)]
pub struct ColonQuotient {
    base: ArtinianBasis,
    kernel: Subspace,
}

impl ColonQuotient {
    /// `λ(S/(J : g))`.
    pub fn length(&self) -> usize {
        self.base.len() - self.kernel.dim()
    }

    /// Standard monomials of `(J : g)`, ascending.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        (0..self.base.len())
            .filter(|&i| !self.kernel.is_pivot(i))
            .map(|i| self.base.monomials[i].clone())
            .collect()
    }

    /// The reduced Groebner basis of `(J : g)`, read off its staircase: one
    /// element `m - NF(m)` per minimal non-standard monomial `m`.
    pub fn groebner_basis(&self) -> GroebnerBasis {
        let order = self.base.order();
        let ring = &self.base.ring;
        let n = ring.nvars();
        let field = ring.field();
        let standard: HashSet<Monomial> = self.standard_monomials().into_iter().collect();
        if standard.is_empty() {
            let one = vec![(Monomial::one(n), 1)];
            return GroebnerBasis::from_reduced(ring, order, vec![one]);
        }
        let mut corners: Vec<Monomial> = Vec::new();
        let mut seen: HashSet<Monomial> = HashSet::new();
        for s in &standard {
            for v in 0..n {
                let m = s.mul(&Monomial::variable(n, v));
                if standard.contains(&m) || !seen.insert(m.clone()) {
                    continue;
                }
                let minimal = m.support().all(|j| {
                    let d = m.div(&Monomial::variable(n, j)).expect("in support");
                    standard.contains(&d)
                });
                if minimal {
                    corners.push(m);
                }
            }
        }
        corners.sort_by(|a, b| order.cmp(a, b));
        let elems = corners
            .into_iter()
            .map(|m| {
                let nf = self.kernel.reduce(field, self.base.coords(vec![(m.clone(), 1)]));
                let mut t: Terms = vec![(m, 1)];
                t.extend(
                    nf.into_iter()
                        .map(|(i, c)| (self.base.monomials[i].clone(), field.neg(c))),
                );
                t
            })
            .collect();
        GroebnerBasis::from_reduced(ring, order, elems)
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal::from_basis(self.groebner_basis())
    }

    /// Basis of `(J : g)/J` as polynomials in normal form modulo `J`.
    pub fn kernel_polys(&self) -> Vec<Poly> {
        self.kernel
            .pivots()
            .into_iter()
            .map(|p| self.base.poly_of(self.kernel.row(p).expect("pivot")))
            .collect()
    }
}

/// `λ(R/JR)`, the number of standard monomials of `relations + J`.
pub fn length(ring: &RingPresentation, j: &Ideal) -> Result<usize> {
    Ok(ArtinianBasis::of_ideal(&ring.lift(j)?, MonomialOrder::GrevLex)?.len())
}

/// Socle representatives of `R/JR` in normal form.
pub fn socle(ring: &RingPresentation, j: &Ideal) -> Result<Vec<Poly>> {
    Ok(ArtinianBasis::of_ideal(&ring.lift(j)?, MonomialOrder::GrevLex)?.socle())
}

/// The socle generator of `R/(sop)`, made monic; fails unless the socle is
/// one-dimensional.
pub fn socle_generator(ring: &RingPresentation, sop_ideal: &Ideal) -> Result<Poly> {
    let basis = socle(ring, sop_ideal)?;
    if basis.len() != 1 {
        return Err(Error::NotGorenstein { socle_dim: basis.len() });
    }
    Ok(basis[0].monic())
}
