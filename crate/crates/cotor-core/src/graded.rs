//! Finite-type graded vector spaces with named bases and degreewise linear
//! maps between them.
//!
//! Windows are load-bearing: a [`GradedSpace`] is certified on its window
//! `[min, max]`. Degrees below `min` are genuinely zero (everything in this
//! crate is bounded below), degrees inside the window without basis elements
//! are certified zero, and degrees above `max` are *unknown* — truncation of
//! an infinite-type object. Operations intersect windows; they never zero-fill
//! past the cap.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::Matrix;

/// Inclusive degree range `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeWindow {
    pub min: i32,
    pub max: i32,
}

impl DegreeWindow {
    pub fn new(min: i32, max: i32) -> Self {
        assert!(min <= max, "empty degree window");
        DegreeWindow { min, max }
    }

    pub fn contains(&self, d: i32) -> bool {
        self.min <= d && d <= self.max
    }

    pub fn iter(&self) -> impl Iterator<Item = i32> {
        self.min..=self.max
    }

    pub fn width(&self) -> i32 {
        self.max - self.min
    }

    pub fn intersect(&self, other: &DegreeWindow) -> Option<DegreeWindow> {
        let min = self.min.max(other.min);
        let max = self.max.min(other.max);
        (min <= max).then_some(DegreeWindow { min, max })
    }

    pub fn shift(&self, n: i32) -> DegreeWindow {
        DegreeWindow {
            min: self.min + n,
            max: self.max + n,
        }
    }
}

/// A graded vector space with an ordered, labelled basis per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    window: DegreeWindow,
    basis: BTreeMap<i32, Vec<String>>,
}

impl GradedSpace {
    pub fn new(window: DegreeWindow, basis: BTreeMap<i32, Vec<String>>) -> Result<Self> {
        for (&d, labels) in &basis {
            if !window.contains(d) {
                return Err(Error::WindowTooSmall {
                    what: "basis element outside window",
                    needed: d,
                    certified: window.max,
                });
            }
            for (i, l) in labels.iter().enumerate() {
                if labels[..i].contains(l) {
                    return Err(Error::DuplicateLabel {
                        degree: d,
                        label: l.clone(),
                    });
                }
            }
        }
        Ok(GradedSpace { window, basis })
    }

    pub fn empty(window: DegreeWindow) -> Self {
        GradedSpace {
            window,
            basis: BTreeMap::new(),
        }
    }

    /// The ground field: one basis element `1` in degree zero.
    pub fn ground(cap: i32) -> Self {
        let mut basis = BTreeMap::new();
        basis.insert(0, alloc::vec![String::from("1")]);
        GradedSpace {
            window: DegreeWindow::new(0, cap),
            basis,
        }
    }

    pub fn window(&self) -> DegreeWindow {
        self.window
    }

    pub fn dim(&self, d: i32) -> usize {
        self.basis.get(&d).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// `(degree, dim)` for every degree with nonzero dimension.
    pub fn dims(&self) -> Vec<(i32, usize)> {
        self.basis
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(&d, v)| (d, v.len()))
            .collect()
    }

    pub fn labels(&self, d: i32) -> &[String] {
        self.basis.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn label(&self, d: i32, i: usize) -> &str {
        &self.labels(d)[i]
    }

    pub fn index_of(&self, d: i32, label: &str) -> Option<usize> {
        self.labels(d).iter().position(|l| l == label)
    }

    /// Looks a label up across all degrees.
    pub fn find_label(&self, label: &str) -> Option<(i32, usize)> {
        self.basis.iter().find_map(|(&d, ls)| {
            ls.iter().position(|l| l == label).map(|i| (d, i))
        })
    }

    /// Restricts the certification cap.
    pub fn truncate(&self, cap: i32) -> GradedSpace {
        let window = DegreeWindow::new(self.window.min.min(cap), cap.min(self.window.max));
        let basis = self
            .basis
            .iter()
            .filter(|(&d, _)| window.contains(d))
            .map(|(&d, v)| (d, v.clone()))
            .collect();
        GradedSpace { window, basis }
    }

    /// Tensor product. Degree-`d` basis vectors are the pairs
    /// `(left in degree i, right in degree d-i)` in lexicographic order:
    /// left degree ascending, then left index, then right index.
    ///
    /// The output window is the range on which the product is certified:
    /// `[lmin + rmin, min(lmax + rmin, lmin + rmax)]`.
    pub fn tensor(&self, other: &GradedSpace) -> GradedSpace {
        let window = DegreeWindow::new(
            self.window.min + other.window.min,
            (self.window.max + other.window.min).min(self.window.min + other.window.max),
        );
        let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        for (&di, left) in &self.basis {
            for (&dj, right) in &other.basis {
                let d = di + dj;
                if !window.contains(d) {
                    continue;
                }
                let entry = basis.entry(d).or_default();
                for l in left {
                    for r in right {
                        entry.push(format!("{l}(x){r}"));
                    }
                }
            }
        }
        // Pair enumeration above walks left degrees in ascending order per
        // total degree, which is exactly the lexicographic convention.
        GradedSpace { window, basis }
    }

    /// Enumerates the degree-`d` tensor basis as index pairs, in the same
    /// order as [`GradedSpace::tensor`] lists its labels.
    pub fn tensor_pairs(&self, other: &GradedSpace, d: i32) -> Vec<(i32, usize, i32, usize)> {
        let mut out = Vec::new();
        for (&di, left) in &self.basis {
            let dj = d - di;
            let rdim = other.dim(dj);
            if rdim == 0 {
                continue;
            }
            for i in 0..left.len() {
                for j in 0..rdim {
                    out.push((di, i, dj, j));
                }
            }
        }
        out
    }

    /// Flat index of the pair `(d1, i) ⊗ (d2, j)` inside degree `d1 + d2` of
    /// the tensor product, matching the [`GradedSpace::tensor`] ordering.
    pub fn pair_index(&self, other: &GradedSpace, d1: i32, i: usize, d2: i32, j: usize) -> usize {
        let d = d1 + d2;
        let mut offset = 0usize;
        for (&di, left) in &self.basis {
            if di >= d1 {
                break;
            }
            offset += left.len() * other.dim(d - di);
        }
        offset + i * other.dim(d2) + j
    }

    /// Shifts every degree up by `n`.
    pub fn suspend(&self, n: i32) -> GradedSpace {
        GradedSpace {
            window: self.window.shift(n),
            basis: self.basis.iter().map(|(&d, v)| (d + n, v.clone())).collect(),
        }
    }

    /// Direct sum with a tag prefixed to each summand's labels.
    pub fn direct_sum(parts: &[(&str, &GradedSpace)]) -> GradedSpace {
        assert!(!parts.is_empty(), "direct sum of zero spaces needs a window");
        let mut window = parts[0].1.window;
        for (_, s) in &parts[1..] {
            window.min = window.min.min(s.window.min);
            window.max = window.max.min(s.window.max);
        }
        let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        for (tag, space) in parts {
            for (&d, labels) in &space.basis {
                if !window.contains(d) {
                    continue;
                }
                let entry = basis.entry(d).or_default();
                for l in labels {
                    entry.push(format!("{tag}.{l}"));
                }
            }
        }
        GradedSpace { window, basis }
    }

    /// Offset of each summand's basis inside the direct sum, per degree.
    pub fn direct_sum_offsets(parts: &[&GradedSpace], d: i32) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for s in parts {
            offsets.push(acc);
            acc += s.dim(d);
        }
        offsets
    }

    /// Renames every label via the given function; degrees are untouched.
    pub fn relabel(&self, f: impl Fn(i32, usize, &str) -> String) -> GradedSpace {
        GradedSpace {
            window: self.window,
            basis: self
                .basis
                .iter()
                .map(|(&d, ls)| {
                    (
                        d,
                        ls.iter()
                            .enumerate()
                            .map(|(i, l)| f(d, i, l))
                            .collect(),
                    )
                })
                .collect(),
        }
    }
}

/// A degreewise linear map `source -> target` of degree `shift`.
///
/// A block is stored exactly for the source degrees on which the map is
/// certified; asking for a block outside that set returns `None` rather than
/// a fabricated zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    p: Prime,
    source: GradedSpace,
    target: GradedSpace,
    shift: i32,
    blocks: BTreeMap<i32, Matrix>,
}

impl GradedMap {
    /// A zero map, certified on every source degree whose image degree lies
    /// in the target window.
    pub fn zero(p: Prime, source: GradedSpace, target: GradedSpace, shift: i32) -> Self {
        let mut blocks = BTreeMap::new();
        for d in source.window().iter() {
            if target.window().contains(d + shift) {
                blocks.insert(d, Matrix::zeros(p, target.dim(d + shift), source.dim(d)));
            }
        }
        GradedMap {
            p,
            source,
            target,
            shift,
            blocks,
        }
    }

    pub fn identity(p: Prime, space: &GradedSpace) -> Self {
        let mut m = GradedMap::zero(p, space.clone(), space.clone(), 0);
        for d in space.window().iter() {
            let n = space.dim(d);
            m.blocks.insert(d, Matrix::identity(p, n));
        }
        m
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn block(&self, d: i32) -> Option<&Matrix> {
        self.blocks.get(&d)
    }

    pub fn block_mut(&mut self, d: i32) -> Option<&mut Matrix> {
        self.blocks.get_mut(&d)
    }

    pub fn set_block(&mut self, d: i32, m: Matrix) {
        assert_eq!(m.rows(), self.target.dim(d + self.shift), "block rows");
        assert_eq!(m.cols(), self.source.dim(d), "block cols");
        self.blocks.insert(d, m);
    }

    /// Applies the map to a degree-`d` vector.
    pub fn apply(&self, d: i32, v: &[u32]) -> Result<Vec<u32>> {
        let block = self.blocks.get(&d).ok_or(Error::WindowTooSmall {
            what: "graded map block",
            needed: d,
            certified: self.source.window().max,
        })?;
        Ok(block.apply(v))
    }

    pub fn compose(&self, inner: &GradedMap) -> GradedMap {
        assert_eq!(self.p, inner.p);
        let shift = self.shift + inner.shift;
        let mut blocks = BTreeMap::new();
        for (&d, b_in) in &inner.blocks {
            if let Some(b_out) = self.blocks.get(&(d + inner.shift)) {
                blocks.insert(d, b_out.matmul(b_in));
            }
        }
        GradedMap {
            p: self.p,
            source: inner.source.clone(),
            target: self.target.clone(),
            shift,
            blocks,
        }
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(self.shift, other.shift);
        let mut blocks = BTreeMap::new();
        for (&d, b) in &self.blocks {
            if let Some(o) = other.blocks.get(&d) {
                blocks.insert(d, b.sub(o));
            }
        }
        GradedMap {
            p: self.p,
            source: self.source.clone(),
            target: self.target.clone(),
            shift: self.shift,
            blocks,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }

    /// First degree and basis index at which the map is nonzero on a basis
    /// vector, for witness reporting.
    pub fn first_nonzero(&self) -> Option<(i32, usize)> {
        for (&d, b) in &self.blocks {
            for j in 0..b.cols() {
                if (0..b.rows()).any(|i| b.get(i, j) != 0) {
                    return Some((d, j));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn space(window: (i32, i32), dims: &[(i32, usize)]) -> GradedSpace {
        let mut basis = BTreeMap::new();
        for &(d, n) in dims {
            basis.insert(d, (0..n).map(|i| format!("e{d}_{i}")).collect());
        }
        GradedSpace::new(DegreeWindow::new(window.0, window.1), basis).unwrap()
    }

    #[test]
    fn tensor_dims_convolve() {
        // dims (1,1) ⊗ dims (1,1) → dims (1,2,1)
        let u = space((0, 4), &[(0, 1), (1, 1)]);
        let t = u.tensor(&u);
        assert_eq!(t.dims(), vec![(0, 1), (1, 2), (2, 1)]);

        // Γ⊗Γ for Γ = k[ξ]/ξ^5, |ξ|=1 → (1,2,3,4,5,4,3,2,1)
        let g = space((0, 8), &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]);
        let gg = g.tensor(&g);
        assert_eq!(
            gg.dims(),
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 4),
                (6, 3),
                (7, 2),
                (8, 1)
            ]
        );
    }

    #[test]
    fn tensor_with_ground_relabels() {
        let u = space((0, 5), &[(0, 1), (2, 2)]);
        let g = GradedSpace::ground(5);
        let t = u.tensor(&g);
        assert_eq!(t.dims(), u.dims());
        assert_eq!(t.label(2, 0), "e2_0(x)1");
    }

    #[test]
    fn tensor_window_is_intersected() {
        let u = space((0, 3), &[(0, 1), (3, 1)]);
        let v = space((1, 10), &[(1, 1)]);
        let t = u.tensor(&v);
        // Certified max = min(3+1, 0+10) = 4.
        assert_eq!(t.window(), DegreeWindow::new(1, 4));
        assert_eq!(t.dims(), vec![(1, 1), (4, 1)]);
    }

    #[test]
    fn suspension_shifts_and_inverts() {
        let u = space((0, 4), &[(0, 1), (1, 1)]);
        let s = u.suspend(2);
        assert_eq!(s.dims(), vec![(2, 1), (3, 1)]);
        assert_eq!(s.window(), DegreeWindow::new(2, 6));
        assert_eq!(s.suspend(-2), u);
        assert_eq!(u.suspend(0), u);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let mut basis = BTreeMap::new();
        basis.insert(0, vec!["a".to_string(), "a".to_string()]);
        assert!(matches!(
            GradedSpace::new(DegreeWindow::new(0, 1), basis),
            Err(Error::DuplicateLabel { .. })
        ));
    }

    #[test]
    fn graded_map_blocks_absent_outside_window() {
        let p = Prime::new(5).unwrap();
        let u = space((0, 4), &[(0, 1), (4, 1)]);
        let v = space((0, 2), &[(0, 1), (2, 1)]);
        let m = GradedMap::zero(p, u, v, 0);
        assert!(m.block(0).is_some());
        // Target window tops out at 2: degrees 3, 4 are not certified.
        assert!(m.block(3).is_none());
        assert!(m.block(4).is_none());
        assert!(m.apply(4, &[1]).is_err());
    }
}
