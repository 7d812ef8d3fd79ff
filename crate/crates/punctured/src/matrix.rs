//! Sparse matrices over an exact field, with rank / kernel / image via
//! Gaussian elimination.
//!
//! Pivot rule everywhere: columns are processed left to right, and within a
//! column the pivot is the nonzero entry with the smallest row index among
//! rows not yet used as pivots. This makes every basis this module produces
//! deterministic, which the golden tests rely on.
//!
//! Over GF(2) there is a packed-bit elimination path; it follows the same
//! pivot rule and therefore produces identical output to the generic path
//! (tested against it).

use crate::error::KitError;
use crate::field::{Field, Scalar};

/// Sparse matrix: `rows x cols`, entries sorted by (col, row), no duplicates,
/// no explicit zeros. Acts on column vectors: an `m x n` matrix maps F^n -> F^m.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<(u32, u32, Scalar)>, // (row, col, value)
}

/// Result of elimination: rank plus deterministic kernel / image bases.
#[derive(Clone, Debug)]
pub struct RankKernelImage {
    pub rank: usize,
    /// Vectors v (length = cols) with M v = 0.
    pub kernel_basis: Vec<Vec<Scalar>>,
    /// Column vectors (length = rows) spanning the image.
    pub image_basis: Vec<Vec<Scalar>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let entries = (0..n as u32).map(|i| (i, i, field.one())).collect();
        SparseMatrix { rows: n, cols: n, entries }
    }

    /// Build from triplets; merges duplicates, drops zeros.
    pub fn from_triplets(
        field: &Field,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self, KitError> {
        let mut map: std::collections::BTreeMap<(u32, u32), Scalar> = Default::default();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(KitError::Shape(format!(
                    "entry ({r},{c}) outside {rows}x{cols}"
                )));
            }
            let slot = map.entry((c as u32, r as u32)).or_insert_with(|| field.zero());
            *slot = field.add(slot, &v);
        }
        let entries = map
            .into_iter()
            .filter(|(_, v)| !field.is_zero(v))
            .map(|((c, r), v)| (r, c, v))
            .collect();
        Ok(SparseMatrix { rows, cols, entries })
    }

    pub fn entries(&self) -> &[(u32, u32, Scalar)] {
        &self.entries
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut entries: Vec<(u32, u32, Scalar)> =
            self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect();
        entries.sort_by_key(|(r, c, _)| (*c, *r));
        SparseMatrix { rows: self.cols, cols: self.rows, entries }
    }

    /// Dense column-major copy.
    pub fn to_dense(&self, field: &Field) -> Vec<Vec<Scalar>> {
        let mut cols = vec![vec![field.zero(); self.rows]; self.cols];
        for (r, c, v) in &self.entries {
            cols[*c as usize][*r as usize] = v.clone();
        }
        cols
    }

    /// Matrix product self * other (shapes: (m x n) * (n x k)).
    pub fn mul(&self, field: &Field, other: &SparseMatrix) -> Result<SparseMatrix, KitError> {
        if self.cols != other.rows {
            return Err(KitError::Shape(format!(
                "product {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // rows of self indexed by column of other
        let mut by_col: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); other.cols];
        for (r, c, v) in &other.entries {
            by_col[*c as usize].push((*r, v.clone()));
        }
        let mut by_self_col: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in &self.entries {
            by_self_col[*c as usize].push((*r, v.clone()));
        }
        let mut triplets = Vec::new();
        for c in 0..other.cols {
            let mut acc: std::collections::BTreeMap<u32, Scalar> = Default::default();
            for (mid, w) in &by_col[c] {
                for (r, v) in &by_self_col[*mid as usize] {
                    let slot = acc.entry(*r).or_insert_with(|| field.zero());
                    *slot = field.add(slot, &field.mul(v, w));
                }
            }
            for (r, v) in acc {
                if !field.is_zero(&v) {
                    triplets.push((r as usize, c, v));
                }
            }
        }
        SparseMatrix::from_triplets(field, self.rows, other.cols, triplets)
    }

    /// Apply to a dense vector.
    pub fn apply(&self, field: &Field, v: &[Scalar]) -> Result<Vec<Scalar>, KitError> {
        if v.len() != self.cols {
            return Err(KitError::Shape("vector length".into()));
        }
        let mut out = vec![field.zero(); self.rows];
        for (r, c, a) in &self.entries {
            let term = field.mul(a, &v[*c as usize]);
            out[*r as usize] = field.add(&out[*r as usize], &term);
        }
        Ok(out)
    }

    pub fn add(&self, field: &Field, other: &SparseMatrix) -> Result<SparseMatrix, KitError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(KitError::Shape("sum of different shapes".into()));
        }
        let triplets = self
            .entries
            .iter()
            .chain(other.entries.iter())
            .map(|(r, c, v)| (*r as usize, *c as usize, v.clone()));
        SparseMatrix::from_triplets(field, self.rows, self.cols, triplets)
    }

    pub fn scale(&self, field: &Field, s: &Scalar) -> SparseMatrix {
        let entries = self
            .entries
            .iter()
            .map(|(r, c, v)| (*r, *c, field.mul(v, s)))
            .filter(|(_, _, v)| !field.is_zero(v))
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, entries }
    }

    /// Rank, kernel basis and image basis. Deterministic for the fixed pivot rule.
    pub fn rank_kernel_image(&self, field: &Field) -> RankKernelImage {
        if field.is_gf2() {
            self.rki_gf2()
        } else {
            self.rki_generic(field)
        }
    }

    /// Generic-path elimination (used for every field; also the reference the
    /// GF(2) fast path is tested against).
    pub fn rki_generic(&self, field: &Field) -> RankKernelImage {
        // Column reduction with tracking: work on columns of M, remember the
        // combination of original columns forming each reduced column.
        let mut cols = self.to_dense(field);
        let n = self.cols;
        let mut track: Vec<Vec<Scalar>> = (0..n)
            .map(|j| {
                let mut t = vec![field.zero(); n];
                t[j] = field.one();
                t
            })
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col-index in reduced list)
        let mut kernel = Vec::new();
        let mut image = Vec::new();
        for j in 0..n {
            // reduce column j against established pivots
            for &(prow, pcol) in &pivots {
                let coeff = cols[j][prow].clone();
                if field.is_zero(&coeff) {
                    continue;
                }
                // col_j -= coeff * col_pcol (pivot normalized to 1)
                let (head, tail) = if pcol < j {
                    let (a, b) = cols.split_at_mut(j);
                    (&a[pcol], &mut b[0])
                } else {
                    unreachable!("pivot columns precede j")
                };
                for r in 0..self.rows {
                    let t = field.mul(&coeff, &head[r]);
                    tail[r] = field.sub(&tail[r], &t);
                }
                let (head_t, tail_t) = {
                    let (a, b) = track.split_at_mut(j);
                    (&a[pcol], &mut b[0])
                };
                for r in 0..n {
                    let t = field.mul(&coeff, &head_t[r]);
                    tail_t[r] = field.sub(&tail_t[r], &t);
                }
            }
            // find pivot: smallest row index with nonzero entry
            let prow = (0..self.rows).find(|r| !field.is_zero(&cols[j][*r]));
            match prow {
                Some(prow) => {
                    // normalize
                    let inv = field
                        .inv(&cols[j][prow])
                        .expect("nonzero entry invertible");
                    for r in 0..self.rows {
                        cols[j][r] = field.mul(&cols[j][r], &inv);
                    }
                    for r in 0..n {
                        track[j][r] = field.mul(&track[j][r], &inv);
                    }
                    pivots.push((prow, j));
                    image.push(cols[j].clone());
                }
                None => kernel.push(track[j].clone()),
            }
        }
        RankKernelImage { rank: pivots.len(), kernel_basis: kernel, image_basis: image }
    }

    /// GF(2) packed-bit path: same column algorithm on u64-word bitsets.
    fn rki_gf2(&self) -> RankKernelImage {
        let field = Field::GF2;
        let n = self.cols;
        let rw = self.rows.div_ceil(64);
        let tw = n.div_ceil(64);
        let mut cols: Vec<Vec<u64>> = vec![vec![0u64; rw]; n];
        for (r, c, _) in &self.entries {
            cols[*c as usize][*r as usize / 64] ^= 1u64 << (*r % 64);
        }
        let mut track: Vec<Vec<u64>> = (0..n)
            .map(|j| {
                let mut t = vec![0u64; tw];
                t[j / 64] |= 1u64 << (j % 64);
                t
            })
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut kernel = Vec::new();
        let mut image = Vec::new();
        for j in 0..n {
            for &(prow, pcol) in &pivots {
                if cols[j][prow / 64] >> (prow % 64) & 1 == 1 {
                    let (a, b) = cols.split_at_mut(j);
                    for (w, src) in b[0].iter_mut().zip(a[pcol].iter()) {
                        *w ^= *src;
                    }
                    let (a, b) = track.split_at_mut(j);
                    for (w, src) in b[0].iter_mut().zip(a[pcol].iter()) {
                        *w ^= *src;
                    }
                }
            }
            let prow = (0..self.rows).find(|r| cols[j][r / 64] >> (r % 64) & 1 == 1);
            match prow {
                Some(prow) => {
                    pivots.push((prow, j));
                    image.push(unpack_bits(&cols[j], self.rows, &field));
                }
                None => kernel.push(unpack_bits(&track[j], n, &field)),
            }
        }
        RankKernelImage { rank: pivots.len(), kernel_basis: kernel, image_basis: image }
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.rank_kernel_image(field).rank
    }
}

fn unpack_bits(words: &[u64], len: usize, field: &Field) -> Vec<Scalar> {
    (0..len)
        .map(|i| {
            if words[i / 64] >> (i % 64) & 1 == 1 {
                field.one()
            } else {
                field.zero()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::GF2
    }

    #[test]
    fn empty_matrix_rank_zero() {
        let m = SparseMatrix::zero(0, 0);
        let r = m.rank_kernel_image(&gf2());
        assert_eq!(r.rank, 0);
        assert!(r.kernel_basis.is_empty());
    }

    #[test]
    fn identity_rank_full_kernel_empty() {
        let f = gf2();
        let m = SparseMatrix::identity(&f, 3);
        let r = m.rank_kernel_image(&f);
        assert_eq!(r.rank, 3);
        assert!(r.kernel_basis.is_empty());
        assert_eq!(r.image_basis.len(), 3);
    }

    #[test]
    fn kernel_vectors_are_killed() {
        let f = gf2();
        // 2x3: [[1,1,0],[0,1,1]] -> kernel = span{(1,1,1)}
        let m = SparseMatrix::from_triplets(
            &f,
            2,
            3,
            vec![
                (0, 0, f.one()),
                (0, 1, f.one()),
                (1, 1, f.one()),
                (1, 2, f.one()),
            ],
        )
        .unwrap();
        let r = m.rank_kernel_image(&f);
        assert_eq!(r.rank, 2);
        assert_eq!(r.kernel_basis.len(), 1);
        for v in &r.kernel_basis {
            let out = m.apply(&f, v).unwrap();
            assert!(out.iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn rank_nullity_holds_over_q() {
        let f = Field::QQ;
        let m = SparseMatrix::from_triplets(
            &f,
            3,
            4,
            vec![
                (0, 0, f.from_i64(2)),
                (0, 1, f.from_i64(4)),
                (1, 2, f.from_i64(1)),
                (2, 2, f.from_i64(-3)),
                (0, 3, f.from_i64(2)),
            ],
        )
        .unwrap();
        let r = m.rank_kernel_image(&f);
        assert_eq!(r.rank + r.kernel_basis.len(), 4);
        for v in &r.kernel_basis {
            let out = m.apply(&f, v).unwrap();
            assert!(out.iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn gf2_path_matches_generic_path() {
        let f = gf2();
        // deterministic pseudo-random fill
        let mut state = 0x12345678u64;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..50 {
            let rows = (rnd() % 12) as usize;
            let cols = (rnd() % 12) as usize;
            let mut trip = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if rnd() % 3 == 0 {
                        trip.push((r, c, f.one()));
                    }
                }
            }
            let m = SparseMatrix::from_triplets(&f, rows, cols, trip).unwrap();
            let a = m.rki_generic(&f);
            let b = m.rank_kernel_image(&f);
            assert_eq!(a.rank, b.rank);
            assert_eq!(a.kernel_basis, b.kernel_basis);
            assert_eq!(a.image_basis, b.image_basis);
        }
    }
}
