//! Sparse linear algebra over `F_p` for maps between monomial bases.
//!
//! Vectors are lists of `(index, coefficient)` sorted by strictly decreasing
//! index with no zero entries; the first entry is the pivot.

use std::collections::HashMap;

use crate::field::PrimeField;

pub(crate) type SparseVec = Vec<(usize, u32)>;

/// `a - c * b`.
pub(crate) fn axpy(field: &PrimeField, a: &[(usize, u32)], c: u32, b: &[(usize, u32)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ia, ca) = a[i];
        let (ib, cb) = b[j];
        if ia > ib {
            out.push((ia, ca));
            i += 1;
        } else if ib > ia {
            out.push((ib, field.neg(field.mul(c, cb))));
            j += 1;
        } else {
            let v = field.sub(ca, field.mul(c, cb));
            if v != 0 {
                out.push((ia, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|&(ib, cb)| (ib, field.neg(field.mul(c, cb)))));
    out
}

fn scale_in_place(field: &PrimeField, v: &mut SparseVec, c: u32) {
    for (_, a) in v.iter_mut() {
        *a = field.mul(*a, c);
    }
}

/// Rank and kernel of a linear map, restricted to the given source indices.
pub(crate) struct KernelBlock {
    pub rank: usize,
    /// Monic kernel vectors over source indices; the pivot of each is its own
    /// source index, so pivots are distinct.
    pub kernel: Vec<SparseVec>,
}

/// Gaussian elimination on the images of `sources` (which must be ascending),
/// tracking the source combinations that reach zero.
pub(crate) fn kernel_block(
    field: &PrimeField,
    sources: &[usize],
    image: impl Fn(usize) -> SparseVec,
) -> KernelBlock {
    debug_assert!(sources.windows(2).all(|w| w[0] < w[1]));
    let mut pivots: HashMap<usize, usize> = HashMap::new();
    let mut rows: Vec<(SparseVec, SparseVec)> = Vec::new();
    let mut kernel = Vec::new();
    for &src in sources {
        let mut img = image(src);
        let mut combo: SparseVec = vec![(src, 1)];
        loop {
            let Some(&(lead, c)) = img.first() else {
                kernel.push(combo);
                break;
            };
            match pivots.get(&lead) {
                Some(&r) => {
                    let (pimg, pcombo) = &rows[r];
                    img = axpy(field, &img, c, pimg);
                    combo = axpy(field, &combo, c, pcombo);
                }
                None => {
                    let inv = field.inv_nonzero(c);
                    scale_in_place(field, &mut img, inv);
                    scale_in_place(field, &mut combo, inv);
                    pivots.insert(lead, rows.len());
                    rows.push((img, combo));
                    break;
                }
            }
        }
    }
    KernelBlock {
        rank: rows.len(),
        kernel,
    }
}

/// A subspace in fully reduced row echelon form: every row is monic at its
/// pivot and has no entries in other rows' pivot columns.
#[derive(Debug, Clone, Default)]
pub(crate) struct Subspace {
    rows: HashMap<usize, SparseVec>,
}

impl Subspace {
    /// Builds the reduced form from monic rows with distinct pivots.
    pub(crate) fn from_echelon(field: &PrimeField, mut rows: Vec<SparseVec>) -> Self {
        rows.sort_by_key(|r| r[0].0);
        let mut reduced: HashMap<usize, SparseVec> = HashMap::with_capacity(rows.len());
        for mut v in rows {
            debug_assert_eq!(v[0].1, 1);
            let mut pos = 1;
            while pos < v.len() {
                let (col, c) = v[pos];
                match reduced.get(&col) {
                    Some(r) => v = axpy(field, &v, c, r),
                    None => pos += 1,
                }
            }
            reduced.insert(v[0].0, v);
        }
        Self { rows: reduced }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub(crate) fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    /// Pivots in ascending order.
    pub(crate) fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Reduces `v` to its unique representative with no pivot entries.
    pub(crate) fn reduce(&self, field: &PrimeField, mut v: SparseVec) -> SparseVec {
        let mut pos = 0;
        while pos < v.len() {
            let (col, c) = v[pos];
            match self.rows.get(&col) {
                Some(r) => v = axpy(field, &v, c, r),
                None => pos += 1,
            }
        }
        v
    }
}
