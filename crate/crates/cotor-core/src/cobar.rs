//! Reduced cobar complexes and `Cotor^{s,d}_Γ(L, M)`.
//!
//! The complex is `C^s = L ⊗ Γ̄^{⊗s} ⊗ M` with `Γ̄ = ker ε` the unit coideal.
//! Connectedness puts every bar factor in positive degree, so `C^s` vanishes
//! in internal degrees below `s` and each `(s, d)` slot is a finite exact
//! computation. The differential is the alternating sum of the two reduced
//! coaction faces and the reduced comultiplications,
//!
//! ```text
//! d = Σ_{i=0}^{s+1} (-1)^{i+1} d_i ,
//! ```
//!
//! with `d_0` the (right-form) coaction of `L`, `d_i` the reduced `Δ` on the
//! i-th bar factor, and `d_{s+1}` the coaction of `M`. No Koszul signs enter
//! the differential. With this normalization a primitive `ξ` in coefficient
//! position satisfies `d(ξ) = ξ⊗1` and
//! `d([ξ]ξ^{p-1}) = -Σ C(p-1,i) [ξ|ξ^i] ξ^{p-1-i}`.
//!
//! `d∘d = 0` is verified on every built complex, exactly.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::bialgebra::BialgebraPresentation;
use crate::comodule::Comodule;
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::graded::DegreeWindow;
use crate::matrix::{Matrix, Subquotient, Subspace};

/// One basis element `l [γ_1 | … | γ_s] m`, everything as (degree, index).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CobarElem {
    pub l: (i32, usize),
    pub bars: Vec<(i32, usize)>,
    pub m: (i32, usize),
}

impl CobarElem {
    pub fn internal_degree(&self) -> i32 {
        self.l.0 + self.bars.iter().map(|b| b.0).sum::<i32>() + self.m.0
    }
}

#[derive(Debug, Default, Clone)]
pub struct CobarBasis {
    pub elems: Vec<CobarElem>,
    index: BTreeMap<CobarElem, usize>,
}

impl CobarBasis {
    fn push(&mut self, e: CobarElem) {
        self.index.insert(e.clone(), self.elems.len());
        self.elems.push(e);
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, e: &CobarElem) -> usize {
        self.index[e]
    }
}

/// The reduced cobar complex of a pair `(L, M)` up to cohomological degree
/// `s_max` (terms to `s_max + 1` so that `H^{s_max}` is computable).
pub struct CobarComplex {
    p: Prime,
    gamma: Arc<BialgebraPresentation>,
    window: DegreeWindow,
    s_max: usize,
    /// `terms[s][d]`, for `s = 0 ..= s_max + 1`.
    terms: Vec<BTreeMap<i32, CobarBasis>>,
    /// `diffs[s][d] : C^s_d → C^{s+1}_d`, for `s = 0 ..= s_max`.
    diffs: Vec<BTreeMap<i32, Matrix>>,
}

impl CobarComplex {
    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn gamma(&self) -> &Arc<BialgebraPresentation> {
        &self.gamma
    }

    pub fn window(&self) -> DegreeWindow {
        self.window
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    pub fn dim(&self, s: usize, d: i32) -> usize {
        self.terms
            .get(s)
            .and_then(|by_d| by_d.get(&d))
            .map_or(0, CobarBasis::len)
    }

    pub fn basis(&self, s: usize, d: i32) -> Option<&CobarBasis> {
        self.terms.get(s).and_then(|by_d| by_d.get(&d))
    }

    /// The block `C^s_d → C^{s+1}_d`; `None` when the source is empty.
    pub fn diff(&self, s: usize, d: i32) -> Option<&Matrix> {
        self.diffs.get(s).and_then(|by_d| by_d.get(&d))
    }

    /// Applies the differential to a vector in `C^s_d` coordinates.
    pub fn apply_diff(&self, s: usize, d: i32, v: &[u32]) -> Vec<u32> {
        match self.diff(s, d) {
            Some(m) => m.apply(v),
            None => vec![0; self.dim(s + 1, d)],
        }
    }

    /// `H^{s,d}` as a subquotient of `C^s_d` with canonical representatives.
    pub fn cohomology(&self, s: usize, d: i32) -> Subquotient {
        let n = self.dim(s, d);
        let cycles = match self.diff(s, d) {
            Some(m) => Subspace::new(self.p, n, m.kernel_basis()),
            None => Subspace::full(self.p, n),
        };
        let boundaries = if s == 0 {
            Subspace::zero(self.p, n)
        } else {
            match self.diff(s - 1, d) {
                Some(m) => Subspace::new(self.p, n, m.image_basis()),
                None => Subspace::zero(self.p, n),
            }
        };
        Subquotient::new(cycles, boundaries)
    }

    /// `d² = 0`, exactly, in every degree — an engine invariant, not a test.
    /// Exploits the sparsity of the differential columns.
    fn verify_d_squared(&self) -> Result<()> {
        let p = self.p.get() as u64;
        for s in 0..self.s_max {
            for (&d, first) in &self.diffs[s] {
                let Some(second) = self.diffs[s + 1].get(&d) else {
                    continue;
                };
                if second.rows() == 0 || first.cols() == 0 || first.rows() == 0 {
                    continue;
                }
                let threshold = u64::MAX - (p - 1) * (p - 1);
                let mut acc = vec![0u64; second.rows()];
                for col in 0..first.cols() {
                    acc.iter_mut().for_each(|x| *x = 0);
                    for mid in 0..first.rows() {
                        let c = first.get(mid, col) as u64;
                        if c == 0 {
                            continue;
                        }
                        for row in 0..second.rows() {
                            let v = second.get(row, mid) as u64;
                            if v != 0 {
                                let cell = &mut acc[row];
                                *cell += c * v;
                                if *cell >= threshold {
                                    *cell %= p;
                                }
                            }
                        }
                    }
                    if acc.iter().any(|&x| x % p != 0) {
                        return Err(Error::ShapeMismatch {
                            what: "cobar d² ≠ 0",
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds the reduced cobar complex. `l` enters as a right comodule through
/// the signed swap; trivial coefficients zero out the corresponding face.
pub fn build_cobar(l: &Comodule, m: &Comodule, s_max: usize) -> Result<CobarComplex> {
    let p = l.prime();
    if p != m.prime() {
        return Err(Error::PrimeMismatch {
            left: p.get(),
            right: m.prime().get(),
        });
    }
    let gamma = Arc::clone(l.gamma());
    let signs = gamma.signs();
    let window = DegreeWindow::new(
        l.space().window().min + m.space().window().min,
        gamma
            .cap()
            .min(l.space().window().max + m.space().window().min)
            .min(l.space().window().min + m.space().window().max),
    );

    // Positive Γ̄ degrees with their dimensions.
    let bar_degrees: Vec<(i32, usize)> = gamma
        .space()
        .dims()
        .into_iter()
        .filter(|&(d, _)| d > 0)
        .collect();

    let mut terms: Vec<BTreeMap<i32, CobarBasis>> = Vec::with_capacity(s_max + 2);
    for s in 0..=s_max + 1 {
        let mut by_d: BTreeMap<i32, Vec<CobarElem>> = BTreeMap::new();
        for (dl, nl) in l.space().dims() {
            for (dm, nm) in m.space().dims() {
                let remaining = window.max - dl - dm;
                if remaining < 0 {
                    continue;
                }
                // Enumerate bar tuples of length s with total degree ≤ remaining.
                let mut stack: Vec<(Vec<(i32, usize)>, i32)> = vec![(Vec::new(), 0)];
                for _ in 0..s {
                    let mut next = Vec::new();
                    for (tuple, total) in stack {
                        for &(bd, bn) in &bar_degrees {
                            if total + bd > remaining {
                                continue;
                            }
                            for bi in 0..bn {
                                let mut t = tuple.clone();
                                t.push((bd, bi));
                                next.push((t, total + bd));
                            }
                        }
                    }
                    stack = next;
                }
                for (bars, total) in stack {
                    let d = dl + dm + total;
                    if !window.contains(d) {
                        continue;
                    }
                    let entry = by_d.entry(d).or_default();
                    for il in 0..nl {
                        for im in 0..nm {
                            entry.push(CobarElem {
                                l: (dl, il),
                                bars: bars.clone(),
                                m: (dm, im),
                            });
                        }
                    }
                }
            }
        }
        // Canonical element order, so bases are reproducible bit for bit.
        let mut level: BTreeMap<i32, CobarBasis> = BTreeMap::new();
        for (d, mut elems) in by_d {
            elems.sort();
            let mut basis = CobarBasis::default();
            for e in elems {
                basis.push(e);
            }
            level.insert(d, basis);
        }
        terms.push(level);
    }

    let mut diffs: Vec<BTreeMap<i32, Matrix>> = Vec::with_capacity(s_max + 1);
    for s in 0..=s_max {
        let mut by_d: BTreeMap<i32, Matrix> = BTreeMap::new();
        for (&d, basis) in &terms[s] {
            let target = terms[s + 1].get(&d);
            let rows = target.map_or(0, CobarBasis::len);
            let mut mat = Matrix::zeros(p, rows, basis.len());
            if let Some(target) = target {
                for (col, e) in basis.elems.iter().enumerate() {
                    // Face 0: reduced right coaction of L, sign (-1)^{0+1}.
                    for ((dg, ig), (dl2, il2), c) in l.reduced_coaction_terms(e.l.0, e.l.1) {
                        let sign = signs.swap_sign(p, dg, dl2);
                        let mut bars = Vec::with_capacity(e.bars.len() + 1);
                        bars.push((dg, ig));
                        bars.extend_from_slice(&e.bars);
                        let out = CobarElem {
                            l: (dl2, il2),
                            bars,
                            m: e.m,
                        };
                        let row = target.index_of(&out);
                        mat.add_to(row, col, p.neg(p.mul(c, sign)));
                    }
                    // Faces 1..=s: reduced Δ on each bar factor, sign (-1)^{i+1}.
                    for (k, &(bd, bi)) in e.bars.iter().enumerate() {
                        let face_sign = p.sign(k as i64 + 2);
                        for ((d1, i1), (d2, i2), c) in gamma.reduced_comult_terms(bd, bi) {
                            let mut bars = e.bars.clone();
                            bars[k] = (d1, i1);
                            bars.insert(k + 1, (d2, i2));
                            let out = CobarElem {
                                l: e.l,
                                bars,
                                m: e.m,
                            };
                            let row = target.index_of(&out);
                            mat.add_to(row, col, p.mul(face_sign, c));
                        }
                    }
                    // Face s+1: reduced coaction of M, sign (-1)^{s+2}.
                    let face_sign = p.sign(s as i64 + 2);
                    for ((dg, ig), (dm2, im2), c) in m.reduced_coaction_terms(e.m.0, e.m.1) {
                        let mut bars = e.bars.clone();
                        bars.push((dg, ig));
                        let out = CobarElem {
                            l: e.l,
                            bars,
                            m: (dm2, im2),
                        };
                        let row = target.index_of(&out);
                        mat.add_to(row, col, p.mul(face_sign, c));
                    }
                }
            }
            by_d.insert(d, mat);
        }
        diffs.push(by_d);
    }

    let complex = CobarComplex {
        p,
        gamma,
        window,
        s_max,
        terms,
        diffs,
    };
    complex.verify_d_squared()?;
    Ok(complex)
}

/// The chain map `C^•(L, K₀) → C^•(L, K)` induced by a degree-0 comodule
/// map on coefficients, as one block per `(s, internal degree)`.
pub fn coefficient_chain_map(
    source: &CobarComplex,
    target: &CobarComplex,
    f: &crate::graded::GradedMap,
) -> Result<BTreeMap<(usize, i32), Matrix>> {
    if f.shift() != 0 {
        return Err(Error::ShapeMismatch {
            what: "coefficient map must preserve degree",
        });
    }
    let p = source.prime();
    let mut out = BTreeMap::new();
    for s in 0..=source.s_max().min(target.s_max()) + 1 {
        for d in source.window().iter() {
            let Some(src_basis) = source.basis(s, d) else { continue };
            if src_basis.is_empty() {
                continue;
            }
            let tgt_dim = target.dim(s, d);
            let mut mat = Matrix::zeros(p, tgt_dim, src_basis.len());
            if let Some(tgt_basis) = target.basis(s, d) {
                for (col, e) in src_basis.elems.iter().enumerate() {
                    let (dk, ik) = e.m;
                    let mut unit = vec![0u32; f.source().dim(dk)];
                    unit[ik] = 1;
                    let img = f.apply(dk, &unit)?;
                    for (jk, &c) in img.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        let elem = CobarElem {
                            l: e.l,
                            bars: e.bars.clone(),
                            m: (dk, jk),
                        };
                        mat.add_to(tgt_basis.index_of(&elem), col, c);
                    }
                }
            }
            out.insert((s, d), mat);
        }
    }
    Ok(out)
}

/// Dimensions and canonical representatives of `Cotor^{s,d}`.
pub struct CotorTable {
    pub s_max: usize,
    pub window: DegreeWindow,
    entries: BTreeMap<(usize, i32), Subquotient>,
}

impl CotorTable {
    pub fn dim(&self, s: usize, d: i32) -> usize {
        self.entries.get(&(s, d)).map_or(0, Subquotient::dim)
    }

    pub fn entry(&self, s: usize, d: i32) -> Option<&Subquotient> {
        self.entries.get(&(s, d))
    }

    /// Total dimension of `Cotor^s` across the window.
    pub fn total_dim(&self, s: usize) -> usize {
        self.entries
            .iter()
            .filter(|((es, _), _)| *es == s)
            .map(|(_, q)| q.dim())
            .sum()
    }

    pub fn dims_of_s(&self, s: usize) -> Vec<(i32, usize)> {
        self.entries
            .iter()
            .filter(|((es, _), q)| *es == s && q.dim() > 0)
            .map(|((_, d), q)| (*d, q.dim()))
            .collect()
    }
}

/// `Cotor^{s,d}_Γ(L, M)` for `s ≤ s_max`, all internal degrees on the window.
pub fn cotor(l: &Comodule, m: &Comodule, s_max: usize) -> Result<CotorTable> {
    let complex = build_cobar(l, m, s_max)?;
    Ok(cotor_from_complex(&complex))
}

pub fn cotor_from_complex(complex: &CobarComplex) -> CotorTable {
    let mut entries = BTreeMap::new();
    for s in 0..=complex.s_max() {
        for d in complex.window().iter() {
            if complex.dim(s, d) == 0 {
                continue;
            }
            entries.insert((s, d), complex.cohomology(s, d));
        }
    }
    CotorTable {
        s_max: complex.s_max(),
        window: complex.window(),
        entries,
    }
}

/// The transpotent 2-cocycle `Tξ = Σ_{i=1}^{p-1} (1/p) C(p,i) ξ^{p-i} ⊗ ξ^i`
/// for a truncated polynomial bialgebra of height p on a primitive
/// generator. Returns the internal degree and the cochain in the `C²(k,k)`
/// coordinates of the reduced cobar complex, after verifying the shape of Γ,
/// the cocycle condition, and that the class generates `Cotor^{2, p·|ξ|}`.
pub fn transpotent(gamma: &Arc<BialgebraPresentation>) -> Result<(i32, Vec<u32>)> {
    let p = gamma.prime();
    let pv = p.get() as i32;
    let dims = gamma.space().dims();
    if dims.len() != pv as usize {
        return Err(Error::WrongShape {
            expected: "k[ξ]/ξ^p with all p powers on the window",
        });
    }
    let g = dims[1].0;
    let expected: Vec<(i32, usize)> = (0..pv).map(|i| (i * g, 1usize)).collect();
    if dims != expected || g < 1 {
        return Err(Error::WrongShape {
            expected: "k[ξ]/ξ^p on one generator",
        });
    }
    if pv * g > gamma.cap() {
        return Err(Error::WindowTooSmall {
            what: "transpotent",
            needed: pv * g,
            certified: gamma.cap(),
        });
    }
    if !gamma.reduced_comult_terms(g, 0).is_empty() {
        return Err(Error::WrongShape {
            expected: "a primitive generator",
        });
    }
    for a in 1..pv {
        for b in 1..pv - a {
            if gamma.mult_pair(a * g, 0, b * g, 0) != vec![1] {
                return Err(Error::WrongShape {
                    expected: "power-basis multiplication",
                });
            }
        }
    }

    let ground = crate::comodule::ground_comodule(gamma);
    let complex = build_cobar(&ground, &ground, 3)?;
    let d = pv * g;
    let basis = complex.basis(2, d).ok_or(Error::WindowTooSmall {
        what: "transpotent bidegree",
        needed: d,
        certified: gamma.cap(),
    })?;
    let mut cochain = vec![0u32; basis.len()];
    for i in 1..pv {
        let c = binomial_over_p(p, i as u64);
        let elem = CobarElem {
            l: (0, 0),
            bars: vec![((pv - i) * g, 0), (i * g, 0)],
            m: (0, 0),
        };
        cochain[basis.index_of(&elem)] = c;
    }
    if complex.apply_diff(2, d, &cochain).iter().any(|&c| c != 0) {
        return Err(Error::ShapeMismatch {
            what: "transpotent cocycle condition",
        });
    }
    let h = complex.cohomology(2, d);
    let class = h.class_of(&cochain).map_err(|_| Error::ShapeMismatch {
        what: "transpotent class",
    })?;
    if h.dim() != 1 || class.iter().all(|&c| c == 0) {
        return Err(Error::ShapeMismatch {
            what: "transpotent does not generate Cotor^2",
        });
    }
    Ok((d, cochain))
}

/// `C(p, i) / p mod p` for `0 < i < p`: the numerator
/// `(p-1)(p-2)…(p-i+1) = (-1)^{i-1}(i-1)! mod p` over `i!` leaves
/// `(-1)^{i-1} / i mod p`.
fn binomial_over_p(p: Prime, i: u64) -> u32 {
    let sign = p.sign(i as i64 - 1);
    p.mul(sign, p.inv((i % p.get() as u64) as u32))
}
