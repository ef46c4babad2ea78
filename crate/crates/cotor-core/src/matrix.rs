//! Dense exact matrices over `F_p`, reduced row echelon form, and the
//! kernel/image/solve primitives every other engine is built on.
//!
//! Basis-dependent outputs (kernel bases, image bases, subquotient
//! representatives) are always reduced-echelon normalized so that results are
//! canonical and reproducible bit for bit.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Prime;

/// Row-major dense matrix with entries reduced mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Matrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: Prime, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % p.get());
            }
        }
        m
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p.get();
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: u32) {
        let cur = self.get(i, j);
        self.data[i * self.cols + j] = self.p.add(cur, v % self.p.get());
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let p = self.p.get() as u64;
        // Accumulate in u64 and reduce lazily; safe while the running sum
        // stays below u64::MAX - (p-1)².
        let threshold = u64::MAX - (p - 1) * (p - 1);
        let mut out = Matrix::zeros(self.p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (j, &b) in row.iter().enumerate() {
                    let cell = &mut acc[j];
                    *cell += a * b as u64;
                    if *cell >= threshold {
                        *cell %= p;
                    }
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (v % p) as u32;
            }
        }
        out
    }

    /// `self * v` for a column vector given as a slice.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "apply shape mismatch");
        let p = self.p.get() as u64;
        let mut out = vec![0u32; self.rows];
        for (k, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u64;
            for i in 0..self.rows {
                let a = self.get(i, k) as u64;
                if a != 0 {
                    out[i] = ((out[i] as u64 + a * x) % p) as u32;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] = self.p.sub(self.data[i], other.data[i]);
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Keeps only the selected rows, in the given order.
    pub fn select_rows(&self, sel: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.p, sel.len(), self.cols);
        for (i, &r) in sel.iter().enumerate() {
            for j in 0..self.cols {
                out.set(i, j, self.get(r, j));
            }
        }
        out
    }

    /// Keeps only the selected columns, in the given order.
    pub fn select_cols(&self, sel: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.rows, sel.len());
        for i in 0..self.rows {
            for (j, &c) in sel.iter().enumerate() {
                out.set(i, j, self.get(i, c));
            }
        }
        out
    }

    /// In-place reduced row echelon form. Returns the pivot column of each
    /// nonzero row, in increasing order.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.data.swap_range(pr * self.cols, row * self.cols, self.cols);
            let inv = p.inv(self.get(row, col));
            if inv != 1 {
                for j in col..self.cols {
                    let v = self.get(row, j);
                    self.set(row, j, p.mul(v, inv));
                }
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in col..self.cols {
                    let v = p.sub(self.get(r, j), p.mul(factor, self.get(row, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().len()
    }

    /// Canonical (reduced-echelon) basis of `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[f] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                if c < f {
                    v[c] = p.neg(m.get(r, f));
                }
            }
            basis.push(v);
        }
        // The free-column construction is already echelon up to column order;
        // re-reduce so the output is canonical RREF regardless.
        canonical_span(p, self.cols, basis)
    }

    /// Canonical basis of the column space, as vectors in the target.
    pub fn image_basis(&self) -> Vec<Vec<u32>> {
        let rows: Vec<Vec<u32>> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).collect())
            .collect();
        canonical_span(self.p, self.rows, rows)
    }

    /// `(rank, kernel_basis, image_basis)` in one call.
    pub fn rank_kernel_image(&self) -> (usize, Vec<Vec<u32>>, Vec<Vec<u32>>) {
        let kernel = self.kernel_basis();
        let image = self.image_basis();
        (image.len(), kernel, image)
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(self.p, n));
        let pivots = aug.row_reduce();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = Matrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Deterministic particular solution of `self * x = b`: the reduced-echelon
    /// solution with all free variables zero. Errors when `b` is outside the image.
    pub fn solve(&self, b: &[u32]) -> Result<Vec<u32>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch { what: "solve" });
        }
        let mut aug = Matrix::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i] % self.p.get());
        }
        let pivots = aug.row_reduce();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![0u32; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Ok(x)
    }
}

trait SwapRange {
    fn swap_range(&mut self, a: usize, b: usize, len: usize);
}

impl SwapRange for Vec<u32> {
    fn swap_range(&mut self, a: usize, b: usize, len: usize) {
        if a == b {
            return;
        }
        for k in 0..len {
            self.swap(a + k, b + k);
        }
    }
}

/// Reduced-echelon basis of the span of the given vectors.
pub fn canonical_span(p: Prime, ambient: usize, vectors: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(p, ambient, &vectors);
    let pivots = m.row_reduce();
    (0..pivots.len()).map(|i| m.row(i).to_vec()).collect()
}

/// A subspace of `F_p^ambient`, stored as a reduced-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    p: Prime,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(p: Prime, ambient: usize, vectors: Vec<Vec<u32>>) -> Self {
        let basis = canonical_span(p, ambient, vectors);
        let pivots = basis
            .iter()
            .map(|v| v.iter().position(|&x| x != 0).expect("nonzero echelon row"))
            .collect();
        Subspace {
            p,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(p: Prime, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: Prime, ambient: usize) -> Self {
        Subspace::new(p, ambient, (0..ambient).map(|i| unit(ambient, i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical residue of `v` modulo this subspace.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            for j in 0..self.ambient {
                out[j] = self.p.sub(out[j], self.p.mul(c, row[j]));
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in this basis; errors if `v` is outside the span.
    pub fn coordinates(&self, v: &[u32]) -> Result<Vec<u32>> {
        let mut out = v.to_vec();
        let mut coords = vec![0u32; self.basis.len()];
        for (i, (row, &pc)) in self.basis.iter().zip(&self.pivots).enumerate() {
            let c = out[pc];
            coords[i] = c;
            if c == 0 {
                continue;
            }
            for j in 0..self.ambient {
                out[j] = self.p.sub(out[j], self.p.mul(c, row[j]));
            }
        }
        if out.iter().any(|&x| x != 0) {
            return Err(Error::Inconsistent);
        }
        Ok(coords)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::new(self.p, self.ambient, vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.p, self.ambient);
        }
        // x = a·A = b·B. Solve [Aᵀ | -Bᵀ] (a,b)ᵀ = 0 and read off a·A.
        let na = self.dim();
        let nb = other.dim();
        let mut m = Matrix::zeros(self.p, self.ambient, na + nb);
        for (k, row) in self.basis.iter().enumerate() {
            for j in 0..self.ambient {
                m.set(j, k, row[j]);
            }
        }
        for (k, row) in other.basis.iter().enumerate() {
            for j in 0..self.ambient {
                m.set(j, na + k, self.p.neg(row[j]));
            }
        }
        let combos = m.kernel_basis();
        let vectors = combos
            .iter()
            .map(|ab| {
                let mut v = vec![0u32; self.ambient];
                for (k, row) in self.basis.iter().enumerate() {
                    let c = ab[k];
                    if c == 0 {
                        continue;
                    }
                    for j in 0..self.ambient {
                        v[j] = self.p.add(v[j], self.p.mul(c, row[j]));
                    }
                }
                v
            })
            .collect();
        Subspace::new(self.p, self.ambient, vectors)
    }
}

/// A subquotient `Z/B` of `F_p^ambient` with canonical representatives:
/// each representative is a cycle reduced modulo the boundaries, and the set
/// of representatives is reduced-echelon.
#[derive(Debug, Clone)]
pub struct Subquotient {
    p: Prime,
    ambient: usize,
    cycles: Subspace,
    boundaries: Subspace,
    reps: Subspace,
}

impl Subquotient {
    /// `boundaries` must be contained in `cycles`.
    pub fn new(cycles: Subspace, boundaries: Subspace) -> Self {
        assert_eq!(cycles.ambient(), boundaries.ambient());
        debug_assert!(
            cycles.contains_space(&boundaries),
            "boundaries not inside cycles"
        );
        let p = cycles.p;
        let ambient = cycles.ambient();
        let residues: Vec<Vec<u32>> = cycles
            .basis()
            .iter()
            .map(|v| boundaries.reduce(v))
            .collect();
        let reps = Subspace::new(p, ambient, residues);
        Subquotient {
            p,
            ambient,
            cycles,
            boundaries,
            reps,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn cycles(&self) -> &Subspace {
        &self.cycles
    }

    pub fn boundaries(&self) -> &Subspace {
        &self.boundaries
    }

    /// Canonical representative vectors, one per quotient basis class.
    pub fn reps(&self) -> &[Vec<u32>] {
        self.reps.basis()
    }

    /// Class of an ambient vector, in the representative basis.
    /// Errors when the vector is not a cycle.
    pub fn class_of(&self, v: &[u32]) -> Result<Vec<u32>> {
        if !self.cycles.contains(v) {
            return Err(Error::Inconsistent);
        }
        let residue = self.boundaries.reduce(v);
        self.reps.coordinates(&residue)
    }
}

pub fn unit(len: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0u32; len];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn rank_kernel_of_dependent_columns() {
        // Over F_5, [[1,2],[2,4]]: second column twice the first.
        let m = Matrix::from_rows(p(5), 2, &[vec![1, 2], vec![2, 4]]);
        let (rank, kernel, image) = m.rank_kernel_image();
        assert_eq!(rank, 1);
        assert_eq!(kernel.len(), 1);
        // Kernel spanned by (2, -1) up to scale; canonical form has leading 1.
        let k = &kernel[0];
        assert_eq!(m.apply(k), vec![0, 0]);
        assert_eq!(k[0], 1);
        assert_eq!(image.len(), 1);
    }

    #[test]
    fn zero_and_identity() {
        let z = Matrix::zeros(p(7), 3, 3);
        let (rank, kernel, _) = z.rank_kernel_image();
        assert_eq!(rank, 0);
        assert_eq!(kernel.len(), 3);

        let id = Matrix::identity(p(2), 4);
        let (rank, kernel, image) = id.rank_kernel_image();
        assert_eq!(rank, 4);
        assert!(kernel.is_empty());
        assert_eq!(image.len(), 4);
    }

    #[test]
    fn zero_sized_matrices() {
        let m = Matrix::zeros(p(3), 0, 4);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 4);
        let m = Matrix::zeros(p(3), 4, 0);
        assert_eq!(m.rank(), 0);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn solve_examples() {
        // m = [[1,1]], b = 0 over F_2 -> x = (0,0)
        let m = Matrix::from_rows(p(2), 2, &[vec![1, 1]]);
        assert_eq!(m.solve(&[0]).unwrap(), vec![0, 0]);
        // m = [[2]], b = 1 over F_5 -> x = 3
        let m = Matrix::from_rows(p(5), 1, &[vec![2]]);
        assert_eq!(m.solve(&[1]).unwrap(), vec![3]);
        // m = [[0]], b = 1 -> inconsistent
        let m = Matrix::from_rows(p(5), 1, &[vec![0]]);
        assert_eq!(m.solve(&[1]), Err(Error::Inconsistent));
    }

    #[test]
    fn solve_is_reduced_echelon_particular() {
        // Underdetermined: free variables pinned to zero.
        let m = Matrix::from_rows(p(5), 3, &[vec![1, 2, 3]]);
        let x = m.solve(&[4]).unwrap();
        assert_eq!(x, vec![4, 0, 0]);
    }

    #[test]
    fn kernel_vectors_annihilate_and_image_solvable() {
        let m = Matrix::from_rows(
            p(3),
            4,
            &[vec![1, 2, 0, 1], vec![0, 1, 1, 2], vec![1, 0, 1, 0]],
        );
        let (rank, kernel, image) = m.rank_kernel_image();
        assert_eq!(rank + kernel.len(), 4);
        for k in &kernel {
            assert!(m.apply(k).iter().all(|&v| v == 0));
        }
        for b in &image {
            assert!(m.solve(b).is_ok());
        }
    }

    #[test]
    fn subspace_intersection() {
        let pr = p(5);
        let a = Subspace::new(pr, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::new(pr, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[0, 1, 0]));
    }

    #[test]
    fn subquotient_classes() {
        let pr = p(5);
        let cycles = Subspace::new(pr, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let boundaries = Subspace::new(pr, 3, vec![vec![1, 1, 0]]);
        let q = Subquotient::new(cycles, boundaries);
        assert_eq!(q.dim(), 1);
        let c1 = q.class_of(&[1, 0, 0]).unwrap();
        let c2 = q.class_of(&[0, 4, 0]).unwrap(); // -e2 = e1 mod boundary
        assert_eq!(c1, c2);
        assert!(q.class_of(&[0, 0, 1]).is_err());
    }
}
