//! Brute-force reference computations on `S/m^[q]` with explicit monomial
//! coordinates. Nothing here goes through Groebner bases or the parser.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

pub type Exps = Vec<u32>;

/// Polynomial over `F_p` as a map from exponent vectors to residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dense {
    pub p: u64,
    pub n: usize,
    pub terms: BTreeMap<Exps, u64>,
}

impl Dense {
    pub fn new(p: u64, n: usize, terms: &[(Exps, i64)]) -> Self {
        let mut out = Dense {
            p,
            n,
            terms: BTreeMap::new(),
        };
        for (e, c) in terms {
            assert_eq!(e.len(), n);
            out.add_term(e.clone(), c.rem_euclid(p as i64) as u64);
        }
        out
    }

    pub fn one(p: u64, n: usize) -> Self {
        Self::new(p, n, &[(vec![0; n], 1)])
    }

    fn add_term(&mut self, e: Exps, c: u64) {
        let slot = self.terms.entry(e).or_insert(0);
        *slot = (*slot + c) % self.p;
        self.terms.retain(|_, v| *v != 0);
    }

    /// Product, dropping every monomial with an exponent `>= q`.
    pub fn mul_trunc(&self, other: &Dense, q: u64) -> Dense {
        let mut acc: HashMap<Exps, u64> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Exps = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if e.iter().any(|&x| x as u64 >= q) {
                    continue;
                }
                let slot = acc.entry(e).or_insert(0);
                *slot = (*slot + ca * cb) % self.p;
            }
        }
        Dense {
            p: self.p,
            n: self.n,
            terms: acc.into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }

    /// `self^k mod m^[q]` by repeated multiplication.
    pub fn pow_trunc(&self, k: u64, q: u64) -> Dense {
        let mut acc = Dense::one(self.p, self.n);
        for _ in 0..k {
            acc = acc.mul_trunc(self, q);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn weighted_degrees(&self, w: &[u32]) -> Vec<u64> {
        let mut d: Vec<u64> = self
            .terms
            .keys()
            .map(|e| e.iter().zip(w).map(|(a, b)| (*a as u64) * (*b as u64)).sum())
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

fn inv(a: u64, p: u64) -> u64 {
    (1..p).find(|b| a * b % p == 1).expect("nonzero residue")
}

/// All exponent vectors with entries `< q`.
pub fn box_monomials(n: usize, q: u64) -> Vec<Exps> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|e: Exps| {
                (0..q as u32).map(move |a| {
                    let mut e = e.clone();
                    e.push(a);
                    e
                })
            })
            .collect();
    }
    out
}

/// Rank over `F_p` of a list of sparse rows, by elimination on a copy.
fn rank(rows: Vec<BTreeMap<usize, u64>>, p: u64) -> usize {
    let mut pivots: HashMap<usize, BTreeMap<usize, u64>> = HashMap::new();
    for mut row in rows {
        while let Some((&col, &c)) = row.iter().next() {
            match pivots.get(&col) {
                Some(prow) => {
                    for (&k, &v) in prow {
                        let slot = row.entry(k).or_insert(0);
                        *slot = (*slot + p - c * v % p) % p;
                        if *slot == 0 {
                            row.remove(&k);
                        }
                    }
                }
                None => {
                    let ic = inv(c, p);
                    for v in row.values_mut() {
                        *v = *v * ic % p;
                    }
                    pivots.insert(col, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Rank of `b ↦ b·g` on `S/m^[q]`. With `weights` making `g` homogeneous
/// the map is split by degree of `b`.
pub fn multiplication_rank(g: &Dense, q: u64, weights: Option<&[u32]>) -> usize {
    if g.is_zero() {
        return 0;
    }
    let n = g.n;
    let sources = box_monomials(n, q);
    let deg = |e: &Exps, w: &[u32]| -> u64 { e.iter().zip(w).map(|(a, b)| (*a as u64) * (*b as u64)).sum() };
    let mut blocks: BTreeMap<u64, Vec<Exps>> = BTreeMap::new();
    match weights {
        Some(w) if g.weighted_degrees(w).len() == 1 => {
            let shift = g.weighted_degrees(w)[0];
            let top: u64 = w.iter().map(|&x| x as u64 * (q - 1)).sum();
            for s in sources {
                let d = deg(&s, w);
                if d + shift <= top {
                    blocks.entry(d).or_default().push(s);
                }
            }
        }
        _ => {
            blocks.insert(0, sources);
        }
    }
    let mut total = 0;
    for block in blocks.into_values() {
        let mut cols: HashMap<Exps, usize> = HashMap::new();
        let rows = block
            .iter()
            .map(|b| {
                let mono = Dense {
                    p: g.p,
                    n,
                    terms: [(b.clone(), 1)].into_iter().collect(),
                };
                let img = mono.mul_trunc(g, q);
                img.terms
                    .into_iter()
                    .map(|(e, c)| {
                        let next = cols.len();
                        (*cols.entry(e).or_insert(next), c)
                    })
                    .collect::<BTreeMap<usize, u64>>()
            })
            .collect();
        total += rank(rows, g.p);
    }
    total
}

/// `a_q(S/(f)) = λ(S/(m^[q] : f^{q-1}))`, the rank of multiplication by `f^{q-1}`.
pub fn splitting_number(f: &Dense, q: u64, weights: Option<&[u32]>) -> u64 {
    let g = f.pow_trunc(q - 1, q);
    multiplication_rank(&g, q, weights) as u64
}

/// `λ(S/((f) + m^[q]))`.
pub fn hk_length(f: &Dense, q: u64, weights: Option<&[u32]>) -> u64 {
    q.pow(f.n as u32) - multiplication_rank(f, q, weights) as u64
}

/// `f^{p-1} ∉ m^[p]`.
pub fn fedder_fpure(f: &Dense) -> bool {
    !f.pow_trunc(f.p - 1, f.p).is_zero()
}

/// `c f^{q-1} ∉ m^[q]`.
pub fn glassbrenner_witness(f: &Dense, c: &Dense, q: u64) -> bool {
    !c.mul_trunc(&f.pow_trunc(q - 1, q), q).is_zero()
}

/// The dimension of `S/J` for a monomial ideal `J`, counting monomials
/// with entries `< bound` outside `J`.
pub fn monomial_colength(gens: &[Exps], n: usize, bound: u64) -> u64 {
    box_monomials(n, bound)
        .into_iter()
        .filter(|m| !gens.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b)))
        .count() as u64
}
