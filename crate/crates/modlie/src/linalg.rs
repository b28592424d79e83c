//! Sparse exact linear algebra over GF(p) and GF(p)(t).
//!
//! Everything downstream (structure constant solving, cocycle/coboundary
//! spaces, quotient representatives) reduces to row echelon computations.
//! Pivoting is deterministic — leftmost nonzero column, first available row —
//! so bases and representatives are reproducible across runs.
//!
//! The [`oracle`] submodule holds an independent dense, fraction-free
//! elimination used by the test suite to cross-check ranks computed here.

use crate::scalar::{K, Poly};
use std::collections::BTreeSet;

/// Sparse row vector: sorted by column, no explicit zeros.
pub type SparseVec = Vec<(usize, K)>;

pub fn vec_is_zero(v: &SparseVec) -> bool {
    v.is_empty()
}

/// a + c*b, keeping entries sorted and dropping zeros.
pub fn vec_add_scaled(a: &SparseVec, b: &SparseVec, c: &K) -> SparseVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let s = va.add(&vb.mul(c));
                if !s.is_zero() {
                    out.push((*ca, s));
                }
                i += 1;
                j += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (Some(_), Some((cb, vb))) => {
                let s = vb.mul(c);
                if !s.is_zero() {
                    out.push((*cb, s));
                }
                j += 1;
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (None, Some((cb, vb))) => {
                let s = vb.mul(c);
                if !s.is_zero() {
                    out.push((*cb, s));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn vec_scale(a: &SparseVec, c: &K) -> SparseVec {
    if c.is_zero() {
        return vec![];
    }
    a.iter().map(|(i, v)| (*i, v.mul(c))).collect()
}

pub fn vec_get(a: &SparseVec, col: usize) -> Option<&K> {
    a.binary_search_by_key(&col, |(i, _)| *i)
        .ok()
        .map(|idx| &a[idx].1)
}

pub fn vec_from_dense(row: &[K]) -> SparseVec {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Sparse matrix as a list of sparse rows.
#[derive(Clone, Debug)]
pub struct SparseMat {
    pub p: u32,
    pub cols: usize,
    pub rows: Vec<SparseVec>,
}

impl SparseMat {
    pub fn new(p: u32, cols: usize) -> Self {
        SparseMat {
            p,
            cols,
            rows: vec![],
        }
    }

    pub fn push_row(&mut self, row: SparseVec) {
        debug_assert!(row.iter().all(|(c, v)| *c < self.cols && !v.is_zero()));
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn transpose(&self) -> SparseMat {
        let mut out = SparseMat::new(self.p, self.rows.len());
        out.rows = vec![vec![]; self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                out.rows[*c].push((r, v.clone()));
            }
        }
        out
    }
}

/// Result of reduced row echelon elimination.
pub struct Rref {
    pub p: u32,
    pub cols: usize,
    /// Reduced rows, one per pivot, sorted by pivot column; pivot entries are 1.
    pub rows: Vec<SparseVec>,
    /// Pivot column of each reduced row.
    pub pivots: Vec<usize>,
    /// Parameter specializations t = x at which a chosen pivot vanishes or an
    /// entry is undefined; the echelon form (hence any rank/kernel derived from
    /// it) is only guaranteed away from these values.
    pub bad_specializations: BTreeSet<u64>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the echelon rows; the result has no support on pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        // Rows are sorted by pivot column, and reduction only introduces
        // support to the right of the eliminated pivot, so one pass suffices.
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = vec_get(&v, piv) {
                let c = c.neg();
                v = vec_add_scaled(&v, row, &c);
            }
        }
        v
    }

    /// Coefficients expressing `v` over the echelon rows, or None if v is outside the row space.
    pub fn express(&self, v: &SparseVec) -> Option<Vec<K>> {
        let mut coeffs = vec![K::zero(self.p); self.rows.len()];
        let mut v = v.clone();
        for (idx, (row, &piv)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if let Some(c) = vec_get(&v, piv) {
                coeffs[idx] = c.clone();
                let c = c.neg();
                v = vec_add_scaled(&v, row, &c);
            }
        }
        if vec_is_zero(&v) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    /// Insert one more row, keeping the reduced form.  Returns true if the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let red = self.reduce(v);
        if vec_is_zero(&red) {
            return false;
        }
        let (piv, lead) = red[0].clone();
        for x in lead.bad_specializations() {
            self.bad_specializations.insert(x);
        }
        let newrow = vec_scale(&red, &lead.inv());
        // clear the new pivot column from existing rows
        for row in self.rows.iter_mut() {
            if let Some(c) = vec_get(row, piv) {
                let c = c.neg();
                *row = vec_add_scaled(row, &newrow, &c);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < piv);
        self.pivots.insert(pos, piv);
        self.rows.insert(pos, newrow);
        true
    }
}

/// Reduced row echelon form with deterministic pivoting.
pub fn rref(mat: &SparseMat) -> Rref {
    let mut out = Rref {
        p: mat.p,
        cols: mat.cols,
        rows: vec![],
        pivots: vec![],
        bad_specializations: BTreeSet::new(),
    };
    for row in &mat.rows {
        out.insert(row);
    }
    out
}

/// Basis of the right kernel {x : M x = 0}, one vector per free column,
/// ordered by free column index.  Deterministic given the matrix.
pub fn kernel_basis(mat: &SparseMat) -> Vec<SparseVec> {
    let r = rref(mat);
    kernel_from_rref(&r)
}

pub fn kernel_from_rref(r: &Rref) -> Vec<SparseVec> {
    let pivot_set: BTreeSet<usize> = r.pivots.iter().copied().collect();
    let mut out = vec![];
    for free in 0..r.cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v: SparseVec = vec![];
        for (row, &piv) in r.rows.iter().zip(&r.pivots) {
            if let Some(c) = vec_get(row, free) {
                v.push((piv, c.neg()));
            }
        }
        v.push((free, K::one(r.p)));
        v.sort_by_key(|(i, _)| *i);
        out.push(v);
    }
    out
}

/// Representatives of `space / sub`: vectors from `space`'s basis reduced
/// against `sub` (which must be contained in `space`) and against each other.
/// Deterministic; each representative is normalized to leading coefficient 1.
pub fn quotient_representatives(space: &[SparseVec], sub: &[SparseVec], p: u32, cols: usize) -> Vec<SparseVec> {
    let mut acc = rref(&SparseMat {
        p,
        cols,
        rows: sub.to_vec(),
    });
    let mut reps = vec![];
    for v in space {
        let red = acc.reduce(v);
        if !vec_is_zero(&red) {
            let lead = red[0].1.clone();
            reps.push(vec_scale(&red, &lead.inv()));
            acc.insert(&red);
        }
    }
    reps
}

/// A growing row space that remembers how each echelon row was formed, so a
/// vector in the span can be expressed over the *original* inserted rows.
pub struct Span {
    pub rref: Rref,
    /// trace[r] = combination of original rows equal to rref.rows[r]
    trace: Vec<SparseVec>,
    n_inserted: usize,
}

impl Span {
    pub fn new(p: u32, cols: usize) -> Self {
        Span {
            rref: Rref {
                p,
                cols,
                rows: vec![],
                pivots: vec![],
                bad_specializations: BTreeSet::new(),
            },
            trace: vec![],
            n_inserted: 0,
        }
    }

    /// Insert a row; returns true if the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let idx = self.n_inserted;
        self.n_inserted += 1;
        let mut red = v.clone();
        let mut tr: SparseVec = vec![(idx, K::one(self.rref.p))];
        for (r, (row, &piv)) in self.rref.rows.iter().zip(&self.rref.pivots).enumerate() {
            if let Some(c) = vec_get(&red, piv) {
                let c = c.neg();
                red = vec_add_scaled(&red, row, &c);
                tr = vec_add_scaled(&tr, &self.trace[r], &c);
            }
        }
        if vec_is_zero(&red) {
            return false;
        }
        let (piv, lead) = red[0].clone();
        for x in lead.bad_specializations() {
            self.rref.bad_specializations.insert(x);
        }
        let inv = lead.inv();
        let newrow = vec_scale(&red, &inv);
        let newtr = vec_scale(&tr, &inv);
        for (r, row) in self.rref.rows.iter_mut().enumerate() {
            if let Some(c) = vec_get(row, piv) {
                let c = c.neg();
                *row = vec_add_scaled(row, &newrow, &c);
                self.trace[r] = vec_add_scaled(&self.trace[r], &newtr, &c);
            }
        }
        let pos = self.rref.pivots.partition_point(|&q| q < piv);
        self.rref.pivots.insert(pos, piv);
        self.rref.rows.insert(pos, newrow);
        self.trace.insert(pos, newtr);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.rref.contains(v)
    }

    pub fn rank(&self) -> usize {
        self.rref.rank()
    }

    /// Express v as a combination of the original inserted rows, if it lies in the span.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let coeffs = self.rref.express(v)?;
        let mut out: SparseVec = vec![];
        for (r, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = vec_add_scaled(&out, &self.trace[r], c);
            }
        }
        Some(out)
    }
}

/// Independent dense, fraction-free rank computation used as a cross-check.
///
/// Rational entries are cleared to polynomials row by row, then a Bareiss-style
/// elimination runs in GF(p)[t] with exact divisions only.  Over GF(p) this
/// degenerates to ordinary integer-free elimination.  Slow but with no
/// normalization subtleties shared with the sparse engine above.
pub mod oracle {
    use super::*;

    /// Rank of the matrix, together with the specializations excluded by the
    /// pivots chosen along the way (roots of pivot polynomials).
    pub fn rank_dense(mat: &SparseMat) -> (usize, BTreeSet<u64>) {
        let p = mat.p;
        let one = Poly::constant(p, 1);
        // clear denominators per row
        let mut dense: Vec<Vec<Poly>> = mat
            .rows
            .iter()
            .map(|row| {
                let mut lcm = one.clone();
                for (_, v) in row {
                    if let K::Rat { den, .. } = v {
                        let g = lcm.gcd(den);
                        lcm = lcm.mul(&den.divrem(&g).0);
                    }
                }
                let mut out = vec![Poly::zero(p); mat.cols];
                for (c, v) in row {
                    let (n, d) = match v {
                        K::Fp { v, .. } => (Poly::constant(p, *v), one.clone()),
                        K::Rat { num, den } => (num.clone(), den.clone()),
                    };
                    let (q, r) = lcm.divrem(&d);
                    debug_assert!(r.is_zero());
                    out[*c] = n.mul(&q);
                }
                out
            })
            .collect();
        let mut bad = BTreeSet::new();
        let mut rank = 0;
        let mut prev = one;
        for col in 0..mat.cols {
            // find pivot: first row at or below `rank` with nonzero in col
            let Some(pr) = (rank..dense.len()).find(|&r| !dense[r][col].is_zero()) else {
                continue;
            };
            dense.swap(rank, pr);
            let pivot = dense[rank][col].clone();
            for x in pivot.roots() {
                bad.insert(x);
            }
            for r in rank + 1..dense.len() {
                for c in col + 1..mat.cols {
                    // Bareiss: (pivot*a - lead*b) / prev is exact
                    let num = pivot
                        .mul(&dense[r][c])
                        .sub(&dense[r][col].mul(&dense[rank][c]));
                    let (q, rem) = num.divrem(&prev);
                    debug_assert!(rem.is_zero(), "fraction-free division not exact");
                    dense[r][c] = q;
                }
                dense[r][col] = Poly::zero(p);
            }
            prev = pivot;
            rank += 1;
            if rank == dense.len() {
                break;
            }
        }
        (rank, bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(p: u32, rows: &[&[i64]]) -> SparseMat {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMat::new(p, cols);
        for r in rows {
            m.push_row(vec_from_dense(
                &r.iter().map(|&v| K::fp(v, p)).collect::<Vec<_>>(),
            ));
        }
        m
    }

    #[test]
    fn rref_rank_kernel() {
        let m = mat(5, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let r = rref(&m);
        assert_eq!(r.rank(), 2);
        assert_eq!(r.pivots, vec![0, 1]);
        let ker = kernel_basis(&m);
        assert_eq!(ker.len(), 1);
        // check M k = 0
        for row in &m.rows {
            let mut acc = K::zero(5);
            for (c, v) in row {
                if let Some(x) = vec_get(&ker[0], *c) {
                    acc = acc.add(&v.mul(x));
                }
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn express_and_quotient() {
        let p = 3;
        let m = mat(p, &[&[1, 0, 1], &[0, 1, 1]]);
        let r = rref(&m);
        let v = vec_from_dense(&[K::fp(2, p), K::fp(1, p), K::fp(0, p)]);
        let coeffs = r.express(&v).unwrap();
        assert_eq!(coeffs, vec![K::fp(2, p), K::fp(1, p)]);
        let outside = vec_from_dense(&[K::zero(p), K::zero(p), K::fp(1, p)]);
        assert!(r.express(&outside).is_none());

        let space = vec![
            vec_from_dense(&[K::one(p), K::zero(p), K::zero(p)]),
            vec_from_dense(&[K::zero(p), K::one(p), K::zero(p)]),
        ];
        let sub = vec![vec_from_dense(&[K::one(p), K::one(p), K::zero(p)])];
        let reps = quotient_representatives(&space, &sub, p, 3);
        assert_eq!(reps.len(), 1);
    }

    #[test]
    fn symbolic_rank_and_exclusions() {
        let p = 2;
        let t = K::t(p);
        // [[t, 1], [1, t]] has rank 2 unless t^2 = 1
        let mut m = SparseMat::new(p, 2);
        m.push_row(vec![(0, t.clone()), (1, K::one(p))]);
        m.push_row(vec![(0, K::one(p)), (1, t.clone())]);
        let r = rref(&m);
        assert_eq!(r.rank(), 2);
        assert!(r.bad_specializations.contains(&1));
        let (orank, obad) = oracle::rank_dense(&m);
        assert_eq!(orank, 2);
        assert!(obad.contains(&1));
    }

    #[test]
    fn oracle_agrees_on_gfp() {
        let m = mat(3, &[&[1, 2, 0, 1], &[2, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 1, 2]]);
        let (orank, _) = oracle::rank_dense(&m);
        assert_eq!(orank, rref(&m).rank());
    }
}
