//! Presentations of connected finite-type graded bialgebras `(k, Γ)` over
//! `F_p` by degreewise structure constants, axiom verification, and builders
//! for the standard families.
//!
//! Everything is stored against the fixed basis ordering of
//! [`crate::graded`]: the comultiplication is a [`GradedMap`] `Γ → Γ⊗Γ` and
//! the multiplication a [`GradedMap`] `Γ⊗Γ → Γ`, both certified on the
//! presentation window. No symbolic algebra is involved; every axiom check is
//! a degreewise matrix identity.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::graded::{DegreeWindow, GradedMap, GradedSpace};
use crate::matrix::{Matrix, Subspace};
use crate::milnor;

/// Which symmetry the ambient graded category uses.
///
/// `Koszul` inserts `(-1)^{|a||b|}` when two factors move past each other;
/// `Plain` never inserts signs. The two agree at p = 2. The §-style
/// truncated-polynomial families on a generator of arbitrary degree need
/// `Plain` (their binomial coproduct is only multiplicative in the unsigned
/// category), while odd-p exterior generators and the dual Steenrod algebra
/// need `Koszul`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignConvention {
    Plain,
    Koszul,
}

impl SignConvention {
    /// The sign picked up when a degree-`a` element moves past a degree-`b` one.
    pub fn swap_sign(self, p: Prime, a: i32, b: i32) -> u32 {
        match self {
            SignConvention::Plain => 1,
            SignConvention::Koszul => {
                if a % 2 != 0 && b % 2 != 0 {
                    p.neg(1)
                } else {
                    1
                }
            }
        }
    }
}

/// One structure-constant term `((d1, i1), (d2, i2), coefficient)` of a
/// map into a tensor square.
pub type TensorTerm = ((i32, usize), (i32, usize), u32);

/// A connected graded bialgebra given by structure constants on a window.
#[derive(Debug, Clone)]
pub struct BialgebraPresentation {
    p: Prime,
    space: GradedSpace,
    mult: GradedMap,
    comult: GradedMap,
    unit_label: String,
    signs: SignConvention,
    /// Distinguished elements by name (e.g. Milnor conjugates `zetaN`).
    named: BTreeMap<String, (i32, Vec<u32>)>,
}

impl BialgebraPresentation {
    pub fn new(
        p: Prime,
        space: GradedSpace,
        mult: GradedMap,
        comult: GradedMap,
        unit_label: String,
        signs: SignConvention,
    ) -> Result<Self> {
        if space.index_of(0, &unit_label).is_none() {
            return Err(Error::UnknownLabel { label: unit_label });
        }
        Ok(BialgebraPresentation {
            p,
            space,
            mult,
            comult,
            unit_label,
            signs,
            named: BTreeMap::new(),
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn mult(&self) -> &GradedMap {
        &self.mult
    }

    pub fn comult(&self) -> &GradedMap {
        &self.comult
    }

    pub fn unit_label(&self) -> &str {
        &self.unit_label
    }

    pub fn unit_index(&self) -> usize {
        self.space.index_of(0, &self.unit_label).expect("unit exists")
    }

    pub fn signs(&self) -> SignConvention {
        self.signs
    }

    pub fn cap(&self) -> i32 {
        self.space.window().max
    }

    pub fn named_elements(&self) -> &BTreeMap<String, (i32, Vec<u32>)> {
        &self.named
    }

    pub fn named_element(&self, name: &str) -> Option<&(i32, Vec<u32>)> {
        self.named.get(name)
    }

    /// The counit: projection onto the coefficient of the unit in degree 0.
    pub fn counit(&self) -> GradedMap {
        let ground = GradedSpace::ground(self.cap());
        let mut eps = GradedMap::zero(self.p, self.space.clone(), ground, 0);
        let unit = self.unit_index();
        if let Some(b) = eps.block_mut(0) {
            b.set(0, unit, 1);
        }
        eps
    }

    /// Terms of `Δ(γ)` for the `i`-th basis element of degree `d`, as
    /// `((d1, i1), (d2, i2), coefficient)` triples.
    pub fn comult_terms(&self, d: i32, i: usize) -> Vec<TensorTerm> {
        let block = self.comult.block(d).expect("comult block inside window");
        let pairs = self.space.tensor_pairs(&self.space, d);
        let mut out = Vec::new();
        for (row, &(d1, i1, d2, i2)) in pairs.iter().enumerate() {
            let c = block.get(row, i);
            if c != 0 {
                out.push(((d1, i1), (d2, i2), c));
            }
        }
        out
    }

    /// `γ_{d1,i1} · γ_{d2,i2}` as a vector in degree `d1 + d2`.
    pub fn mult_pair(&self, d1: i32, i1: usize, d2: i32, i2: usize) -> Vec<u32> {
        let d = d1 + d2;
        let block = self.mult.block(d).expect("mult block inside window");
        let col = self.space.pair_index(&self.space, d1, i1, d2, i2);
        (0..block.rows()).map(|r| block.get(r, col)).collect()
    }

    /// Multiplies two homogeneous elements.
    pub fn mult_vectors(&self, d1: i32, v1: &[u32], d2: i32, v2: &[u32]) -> Vec<u32> {
        let d = d1 + d2;
        let mut out = vec![0u32; self.space.dim(d)];
        for (i1, &c1) in v1.iter().enumerate() {
            if c1 == 0 {
                continue;
            }
            for (i2, &c2) in v2.iter().enumerate() {
                if c2 == 0 {
                    continue;
                }
                let prod = self.mult_pair(d1, i1, d2, i2);
                let c = self.p.mul(c1, c2);
                for (r, &x) in prod.iter().enumerate() {
                    out[r] = self.p.add(out[r], self.p.mul(c, x));
                }
            }
        }
        out
    }

    /// The antipode, which exists uniquely because the presentation is
    /// connected: `χ(1) = 1` and `χ(γ) = −γ − Σ χ(γ') γ''` over the reduced
    /// coproduct, solved degree by degree.
    pub fn antipode(&self) -> GradedMap {
        let p = self.p;
        let mut chi = GradedMap::zero(p, self.space.clone(), self.space.clone(), 0);
        if let Some(b) = chi.block_mut(0) {
            b.set(self.unit_index(), self.unit_index(), 1);
        }
        for d in 1..=self.space.window().max {
            let n = self.space.dim(d);
            if n == 0 {
                continue;
            }
            let mut cols: Vec<Vec<u32>> = Vec::with_capacity(n);
            for i in 0..n {
                let mut out = vec![0u32; n];
                out[i] = p.neg(1);
                for ((d1, i1), (d2, i2), c) in self.reduced_comult_terms(d, i) {
                    // χ(γ') is already known: d1 < d.
                    let mut e1 = vec![0u32; self.space.dim(d1)];
                    e1[i1] = 1;
                    let chi_g1 = chi.apply(d1, &e1).expect("previous degree solved");
                    for (j1, &cc) in chi_g1.iter().enumerate() {
                        if cc == 0 {
                            continue;
                        }
                        let prod = self.mult_pair(d1, j1, d2, i2);
                        let coef = p.mul(c, cc);
                        for (r, &x) in prod.iter().enumerate() {
                            out[r] = p.sub(out[r], p.mul(coef, x));
                        }
                    }
                }
                cols.push(out);
            }
            let block = chi.block_mut(d).expect("inside window");
            for (col, v) in cols.iter().enumerate() {
                for (row, &c) in v.iter().enumerate() {
                    block.set(row, col, c);
                }
            }
        }
        chi
    }

    /// The unit coideal `ker ε`: all positive-degree basis elements.
    pub fn unit_coideal(&self) -> GradedSpace {
        let mut basis = BTreeMap::new();
        for d in self.space.window().iter() {
            if d <= 0 {
                continue;
            }
            let labels = self.space.labels(d);
            if !labels.is_empty() {
                basis.insert(d, labels.to_vec());
            }
        }
        GradedSpace::new(self.space.window(), basis).expect("labels stay unique")
    }

    /// Reduced comultiplication of a positive-degree basis element:
    /// `Δ(γ) − γ⊗1 − 1⊗γ`, indexed by pairs of positive degrees.
    pub fn reduced_comult_terms(&self, d: i32, i: usize) -> Vec<TensorTerm> {
        self.comult_terms(d, i)
            .into_iter()
            .filter(|&((d1, _), (d2, _), _)| d1 > 0 && d2 > 0)
            .collect()
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let mut report = AxiomReport { axioms: Vec::new() };
        report.axioms.push(("connected", self.check_connected()));
        report.axioms.push(("counit", self.check_counit()));
        report
            .axioms
            .push(("coassociative", self.check_coassociative()));
        report.axioms.push(("associative", self.check_associative()));
        report.axioms.push(("unital", self.check_unital()));
        report.axioms.push((
            "comultiplication is an algebra map",
            self.check_comult_multiplicative(),
        ));
        report
            .axioms
            .push(("counit is an algebra map", self.check_counit_multiplicative()));
        report
    }

    fn check_connected(&self) -> AxiomVerdict {
        if self.space.window().min != 0 {
            return AxiomVerdict::Fail {
                degree: self.space.window().min,
                witness: "nonzero content below degree 0".to_string(),
            };
        }
        if self.space.dim(0) != 1 {
            return AxiomVerdict::Fail {
                degree: 0,
                witness: format!("degree 0 has dimension {}", self.space.dim(0)),
            };
        }
        AxiomVerdict::Pass
    }

    fn check_counit(&self) -> AxiomVerdict {
        let unit = self.unit_index();
        for d in self.space.window().iter() {
            let n = self.space.dim(d);
            if n == 0 {
                continue;
            }
            if self.comult.block(d).is_none() {
                return AxiomVerdict::WindowTooSmall { needed: d };
            }
            for i in 0..n {
                let mut left = vec![0u32; n];
                let mut right = vec![0u32; n];
                for ((d1, i1), (d2, i2), c) in self.comult_terms(d, i) {
                    if d1 == 0 && i1 == unit {
                        left[i2] = self.p.add(left[i2], c);
                        debug_assert_eq!(d2, d);
                    }
                    if d2 == 0 && i2 == unit {
                        right[i1] = self.p.add(right[i1], c);
                    }
                }
                let expect: Vec<u32> = (0..n).map(|k| u32::from(k == i)).collect();
                if left != expect || right != expect {
                    return AxiomVerdict::Fail {
                        degree: d,
                        witness: self.space.label(d, i).to_string(),
                    };
                }
            }
        }
        AxiomVerdict::Pass
    }

    fn check_coassociative(&self) -> AxiomVerdict {
        for d in self.space.window().iter() {
            let n = self.space.dim(d);
            if n == 0 {
                continue;
            }
            let triple = TripleIndex::new(&self.space, d);
            for i in 0..n {
                let mut lhs = vec![0u32; triple.len()];
                let mut rhs = vec![0u32; triple.len()];
                for ((d1, i1), (d2, i2), c) in self.comult_terms(d, i) {
                    // (Δ ⊗ id) Δ: expand the left factor.
                    for ((e1, j1), (e2, j2), c2) in self.comult_terms(d1, i1) {
                        let idx = triple.index(e1, j1, e2, j2, d2, i2);
                        lhs[idx] = self.p.add(lhs[idx], self.p.mul(c, c2));
                    }
                    // (id ⊗ Δ) Δ: expand the right factor.
                    for ((e1, j1), (e2, j2), c2) in self.comult_terms(d2, i2) {
                        let idx = triple.index(d1, i1, e1, j1, e2, j2);
                        rhs[idx] = self.p.add(rhs[idx], self.p.mul(c, c2));
                    }
                }
                if lhs != rhs {
                    return AxiomVerdict::Fail {
                        degree: d,
                        witness: self.space.label(d, i).to_string(),
                    };
                }
            }
        }
        AxiomVerdict::Pass
    }

    fn check_associative(&self) -> AxiomVerdict {
        for d in self.space.window().iter() {
            let triple = TripleIndex::new(&self.space, d);
            for &(d1, i1, d2, i2, d3, i3) in triple.entries() {
                let ab = self.mult_pair(d1, i1, d2, i2);
                let mut lhs = vec![0u32; self.space.dim(d)];
                for (k, &c) in ab.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (r, &x) in self.mult_pair(d1 + d2, k, d3, i3).iter().enumerate() {
                        lhs[r] = self.p.add(lhs[r], self.p.mul(c, x));
                    }
                }
                let bc = self.mult_pair(d2, i2, d3, i3);
                let mut rhs = vec![0u32; self.space.dim(d)];
                for (k, &c) in bc.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (r, &x) in self.mult_pair(d1, i1, d2 + d3, k).iter().enumerate() {
                        rhs[r] = self.p.add(rhs[r], self.p.mul(c, x));
                    }
                }
                if lhs != rhs {
                    return AxiomVerdict::Fail {
                        degree: d,
                        witness: format!(
                            "({})·({})·({})",
                            self.space.label(d1, i1),
                            self.space.label(d2, i2),
                            self.space.label(d3, i3)
                        ),
                    };
                }
            }
        }
        AxiomVerdict::Pass
    }

    fn check_unital(&self) -> AxiomVerdict {
        let unit = self.unit_index();
        for d in self.space.window().iter() {
            let n = self.space.dim(d);
            for i in 0..n {
                let expect: Vec<u32> = (0..n).map(|k| u32::from(k == i)).collect();
                if self.mult_pair(0, unit, d, i) != expect
                    || self.mult_pair(d, i, 0, unit) != expect
                {
                    return AxiomVerdict::Fail {
                        degree: d,
                        witness: self.space.label(d, i).to_string(),
                    };
                }
            }
        }
        AxiomVerdict::Pass
    }

    fn check_comult_multiplicative(&self) -> AxiomVerdict {
        for d in self.space.window().iter() {
            let pairs = self.space.tensor_pairs(&self.space, d);
            let out_dim = pairs.len();
            for &(d1, i1, d2, i2) in &pairs {
                // Δ(x·y)
                let xy = self.mult_pair(d1, i1, d2, i2);
                let mut lhs = vec![0u32; out_dim];
                for (k, &c) in xy.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for ((e1, j1), (e2, j2), c2) in self.comult_terms(d, k) {
                        let idx = self.space.pair_index(&self.space, e1, j1, e2, j2);
                        lhs[idx] = self.p.add(lhs[idx], self.p.mul(c, c2));
                    }
                }
                // Δ(x)·Δ(y) with the signed middle swap.
                let mut rhs = vec![0u32; out_dim];
                for (a1, a2, cx) in self.comult_terms(d1, i1) {
                    for (b1, b2, cy) in self.comult_terms(d2, i2) {
                        let sign = self.signs.swap_sign(self.p, a2.0, b1.0);
                        let left = self.mult_pair(a1.0, a1.1, b1.0, b1.1);
                        let right = self.mult_pair(a2.0, a2.1, b2.0, b2.1);
                        let c = self.p.mul(self.p.mul(cx, cy), sign);
                        for (r1, &v1) in left.iter().enumerate() {
                            if v1 == 0 {
                                continue;
                            }
                            for (r2, &v2) in right.iter().enumerate() {
                                if v2 == 0 {
                                    continue;
                                }
                                let idx = self.space.pair_index(
                                    &self.space,
                                    a1.0 + b1.0,
                                    r1,
                                    a2.0 + b2.0,
                                    r2,
                                );
                                let cc = self.p.mul(c, self.p.mul(v1, v2));
                                rhs[idx] = self.p.add(rhs[idx], cc);
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return AxiomVerdict::Fail {
                        degree: d,
                        witness: format!(
                            "Δ(({})·({}))",
                            self.space.label(d1, i1),
                            self.space.label(d2, i2)
                        ),
                    };
                }
            }
        }
        AxiomVerdict::Pass
    }

    fn check_counit_multiplicative(&self) -> AxiomVerdict {
        // ε kills positive degrees, so the only content is in degree 0.
        let unit = self.unit_index();
        let prod = self.mult_pair(0, unit, 0, unit);
        if prod.get(unit) != Some(&1) || prod.iter().enumerate().any(|(k, &c)| k != unit && c != 0)
        {
            return AxiomVerdict::Fail {
                degree: 0,
                witness: self.unit_label.clone(),
            };
        }
        AxiomVerdict::Pass
    }
}

/// Where the comult-terms of a basis element are decoded repeatedly, this
/// caches them per degree. Small helper for hot loops.
struct TripleIndex {
    entries: Vec<(i32, usize, i32, usize, i32, usize)>,
    index: BTreeMap<(i32, usize, i32, usize, usize), usize>,
}

impl TripleIndex {
    fn new(space: &GradedSpace, d: i32) -> Self {
        let mut entries = Vec::new();
        let mut index = BTreeMap::new();
        let w = space.window();
        for d1 in w.min..=d - 2 * w.min {
            let n1 = space.dim(d1);
            if n1 == 0 {
                continue;
            }
            for d2 in w.min..=d - d1 - w.min {
                let d3 = d - d1 - d2;
                let (n2, n3) = (space.dim(d2), space.dim(d3));
                if n2 == 0 || n3 == 0 {
                    continue;
                }
                for i1 in 0..n1 {
                    for i2 in 0..n2 {
                        for i3 in 0..n3 {
                            index.insert((d1, i1, d2, i2, i3), entries.len());
                            entries.push((d1, i1, d2, i2, d3, i3));
                        }
                    }
                }
            }
        }
        TripleIndex { entries, index }
    }

    fn len(&self) -> usize {
        self.entries.len()
    }

    fn entries(&self) -> &[(i32, usize, i32, usize, i32, usize)] {
        &self.entries
    }

    fn index(&self, d1: i32, i1: usize, d2: i32, i2: usize, _d3: i32, i3: usize) -> usize {
        self.index[&(d1, i1, d2, i2, i3)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomVerdict {
    Pass,
    Fail { degree: i32, witness: String },
    WindowTooSmall { needed: i32 },
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub axioms: Vec<(&'static str, AxiomVerdict)>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|(_, v)| *v == AxiomVerdict::Pass)
    }

    pub fn failures(&self) -> Vec<(&'static str, &AxiomVerdict)> {
        self.axioms
            .iter()
            .filter(|(_, v)| *v != AxiomVerdict::Pass)
            .map(|(n, v)| (*n, v))
            .collect()
    }
}

fn power_label(gen: &str, i: u32) -> String {
    match i {
        0 => "1".to_string(),
        1 => gen.to_string(),
        _ => format!("{gen}^{i}"),
    }
}

/// `k[x]/x^height` on a primitive generator, `height` a power of p.
/// The coproduct is binomial: `Δ(x^i) = Σ_j C(i,j) x^j ⊗ x^{i-j}`.
pub fn build_truncated_polynomial(
    p: Prime,
    gen_degree: i32,
    height: u32,
    cap: i32,
) -> Result<BialgebraPresentation> {
    if gen_degree < 1 {
        return Err(Error::WrongShape {
            expected: "a positive generator degree",
        });
    }
    let mut h = height;
    while h > 1 && h.is_multiple_of(p.get()) {
        h /= p.get();
    }
    if h != 1 || height < 2 {
        return Err(Error::WrongShape {
            expected: "height a power of p",
        });
    }
    build_pow_series(p, gen_degree, Some(height), cap, "xi")
}

/// The polynomial bialgebra `k[x]` on a primitive generator, truncated by the
/// window only.
pub fn build_polynomial(p: Prime, gen_degree: i32, cap: i32) -> Result<BialgebraPresentation> {
    if gen_degree < 1 {
        return Err(Error::WrongShape {
            expected: "a positive generator degree",
        });
    }
    build_pow_series(p, gen_degree, None, cap, "x")
}

fn build_pow_series(
    p: Prime,
    gen_degree: i32,
    height: Option<u32>,
    cap: i32,
    gen: &str,
) -> Result<BialgebraPresentation> {
    let top = match height {
        Some(h) => (h - 1).min((cap / gen_degree) as u32),
        None => (cap / gen_degree) as u32,
    };
    let mut basis = BTreeMap::new();
    for i in 0..=top {
        basis.insert(i as i32 * gen_degree, vec![power_label(gen, i)]);
    }
    let window = DegreeWindow::new(0, cap);
    let space = GradedSpace::new(window, basis)?;
    let power_of = |d: i32| -> Option<u32> {
        (d % gen_degree == 0 && d >= 0 && (d / gen_degree) as u32 <= top)
            .then_some((d / gen_degree) as u32)
    };

    let tensor = space.tensor(&space);
    let mut mult = GradedMap::zero(p, tensor.clone(), space.clone(), 0);
    let mut comult = GradedMap::zero(p, space.clone(), tensor, 0);
    for d in window.iter() {
        let pairs = space.tensor_pairs(&space, d);
        if let Some(block) = mult.block_mut(d) {
            for (col, &(d1, _, d2, _)) in pairs.iter().enumerate() {
                let i = power_of(d1).unwrap() + power_of(d2).unwrap();
                let in_range = match height {
                    Some(h) => i < h,
                    None => true,
                };
                if in_range && i <= top {
                    block.set(0, col, 1);
                }
            }
        }
        if let Some(i) = power_of(d) {
            if let Some(block) = comult.block_mut(d) {
                for (row, &(d1, _, d2, _)) in space.tensor_pairs(&space, d).iter().enumerate() {
                    let j = power_of(d1).unwrap();
                    debug_assert_eq!(power_of(d2).unwrap(), i - j);
                    block.set(row, 0, p.binomial(i as u64, j as u64));
                }
            }
        }
    }
    BialgebraPresentation::new(p, space, mult, comult, "1".to_string(), SignConvention::Plain)
}

/// The exterior bialgebra `Λ(tau)` on one primitive generator. At odd p the
/// generator degree must be odd, otherwise the coproduct fails to be an
/// algebra map in the Koszul-signed category.
pub fn build_exterior(p: Prime, gen_degree: i32, cap: i32) -> Result<BialgebraPresentation> {
    if gen_degree < 1 || (p.get() != 2 && gen_degree % 2 == 0) {
        return Err(Error::WrongShape {
            expected: "an odd generator degree at odd p",
        });
    }
    let window = DegreeWindow::new(0, cap);
    let mut basis = BTreeMap::new();
    basis.insert(0, vec!["1".to_string()]);
    if gen_degree <= cap {
        basis.insert(gen_degree, vec!["tau".to_string()]);
    }
    let space = GradedSpace::new(window, basis)?;
    let tensor = space.tensor(&space);
    let mut mult = GradedMap::zero(p, tensor.clone(), space.clone(), 0);
    let mut comult = GradedMap::zero(p, space.clone(), tensor, 0);
    for d in window.iter() {
        let pairs = space.tensor_pairs(&space, d);
        if let Some(block) = mult.block_mut(d) {
            for (col, &(d1, _, d2, _)) in pairs.iter().enumerate() {
                // tau·tau = 0; products with 1 are identities.
                if d1 == 0 || d2 == 0 {
                    block.set(0, col, 1);
                }
            }
        }
    }
    if let Some(block) = comult.block_mut(0) {
        block.set(0, 0, 1);
    }
    if gen_degree <= cap {
        if let Some(block) = comult.block_mut(gen_degree) {
            let row1 = space.pair_index(&space, gen_degree, 0, 0, 0);
            let row2 = space.pair_index(&space, 0, 0, gen_degree, 0);
            block.set(row1, 0, 1);
            block.set(row2, 0, 1);
        }
    }
    BialgebraPresentation::new(p, space, mult, comult, "1".to_string(), SignConvention::Koszul)
}

/// The mod-p dual Steenrod algebra truncated to the window, with Milnor
/// monomial basis and conjugates `zetaN` exposed as named elements.
pub fn build_dual_steenrod(p: Prime, cap: i32) -> Result<BialgebraPresentation> {
    let monos = milnor::monomials_up_to(p, cap);
    let window = DegreeWindow::new(0, cap);
    let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    let mut index: BTreeMap<milnor::Mono, (i32, usize)> = BTreeMap::new();
    for m in &monos {
        let d = m.degree(p) as i32;
        let entry = basis.entry(d).or_default();
        index.insert(m.clone(), (d, entry.len()));
        entry.push(m.label());
    }
    let space = GradedSpace::new(window, basis)?;
    let tensor = space.tensor(&space);
    let mut mult = GradedMap::zero(p, tensor.clone(), space.clone(), 0);
    let mut comult = GradedMap::zero(p, space.clone(), tensor, 0);

    // Per-degree monomial lists in basis order.
    let mut by_degree: BTreeMap<i32, Vec<milnor::Mono>> = BTreeMap::new();
    for m in &monos {
        by_degree.entry(m.degree(p) as i32).or_default().push(m.clone());
    }

    for d in window.iter() {
        let pairs = space.tensor_pairs(&space, d);
        if let Some(block) = mult.block_mut(d) {
            for (col, &(d1, i1, d2, i2)) in pairs.iter().enumerate() {
                let a = &by_degree[&d1][i1];
                let b = &by_degree[&d2][i2];
                if let Some((prod, sign)) = milnor::mul_mono(p, a, b) {
                    let (_, row) = index[&prod];
                    block.set(row, col, sign);
                }
            }
        }
        let Some(list) = by_degree.get(&d) else { continue };
        for (i, m) in list.iter().enumerate() {
            let cop = milnor::coproduct_mono(p, m);
            if let Some(block) = comult.block_mut(d) {
                for ((l, r), c) in cop {
                    let (dl, il) = index[&l];
                    let (dr, ir) = index[&r];
                    let row = space.pair_index(&space, dl, il, dr, ir);
                    block.set(row, i, c);
                }
            }
        }
    }

    let signs = if p.get() == 2 {
        SignConvention::Plain
    } else {
        SignConvention::Koszul
    };
    let mut out = BialgebraPresentation::new(p, space, mult, comult, "1".to_string(), signs)?;

    // Name the generators and their conjugates.
    let mut max_n = 0;
    while milnor::xi_degree(p, max_n + 1) <= cap as i64 {
        max_n += 1;
    }
    for n in 1..=max_n {
        let m = milnor::Mono::xi_power(n, 1);
        let (d, i) = index[&m];
        let mut v = vec![0u32; out.space.dim(d)];
        v[i] = 1;
        out.named.insert(format!("xi{n}"), (d, v));
    }
    if p.get() != 2 {
        let mut k = 0;
        while milnor::tau_degree(p, k) <= cap as i64 {
            let m = milnor::Mono::tau_gen(k);
            let (d, i) = index[&m];
            let mut v = vec![0u32; out.space.dim(d)];
            v[i] = 1;
            out.named.insert(format!("tau{k}"), (d, v));
            k += 1;
        }
    }
    for (n, zeta) in milnor::conjugates(p, max_n).iter().enumerate() {
        let d = milnor::xi_degree(p, n + 1) as i32;
        let mut v = vec![0u32; out.space.dim(d)];
        for (mono, &c) in zeta {
            let (dm, im) = index[&mono.clone()];
            debug_assert_eq!(dm, d);
            v[im] = c;
        }
        out.named.insert(format!("zeta{}", n + 1), (d, v));
    }
    Ok(out)
}

/// The sub-bialgebra generated by the given homogeneous elements, together
/// with its degreewise inclusion into the ambient `Γ`.
///
/// The span is closed under multiplication by construction; closure under the
/// comultiplication is checked and failure reported with a witness.
pub fn build_sub_bialgebra_by_generators(
    b: &BialgebraPresentation,
    generators: &[(i32, Vec<u32>)],
) -> Result<(BialgebraPresentation, GradedMap)> {
    let p = b.prime();
    let window = b.space().window();
    // Degreewise spans, seeded with the unit and the generators, closed
    // under products.
    let mut spans: BTreeMap<i32, Subspace> = BTreeMap::new();
    let mut unit_vec = vec![0u32; b.space().dim(0)];
    unit_vec[b.unit_index()] = 1;
    spans.insert(0, Subspace::new(p, b.space().dim(0), vec![unit_vec]));
    for (d, v) in generators {
        if *d < window.min || *d > window.max {
            continue;
        }
        if v.len() != b.space().dim(*d) {
            return Err(Error::ShapeMismatch {
                what: "generator vector",
            });
        }
        let existing = spans
            .entry(*d)
            .or_insert_with(|| Subspace::zero(p, b.space().dim(*d)));
        *existing = existing.sum(&Subspace::new(p, b.space().dim(*d), vec![v.clone()]));
    }
    loop {
        let mut grew = false;
        let degrees: Vec<i32> = spans.keys().copied().collect();
        for &d1 in &degrees {
            for &d2 in &degrees {
                let d = d1 + d2;
                if d > window.max || d1 == 0 || d2 == 0 {
                    continue;
                }
                let mut products = Vec::new();
                for v1 in spans[&d1].basis() {
                    for v2 in spans[&d2].basis() {
                        products.push(b.mult_vectors(d1, v1, d2, v2));
                    }
                }
                let target = spans
                    .entry(d)
                    .or_insert_with(|| Subspace::zero(p, b.space().dim(d)));
                let candidate = target.sum(&Subspace::new(p, b.space().dim(d), products));
                if candidate.dim() > target.dim() {
                    *target = candidate;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }

    // Basis labels for the sub, echelon order per degree.
    let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    for (&d, span) in &spans {
        if span.dim() == 0 {
            continue;
        }
        basis.insert(
            d,
            (0..span.dim())
                .map(|i| if d == 0 { "1".to_string() } else { format!("g{d}_{i}") })
                .collect(),
        );
    }
    let sub_space = GradedSpace::new(window, basis)?;

    // Check Δ(S) ⊆ S⊗S and collect induced structure constants.
    let sub_tensor = sub_space.tensor(&sub_space);
    let mut comult = GradedMap::zero(p, sub_space.clone(), sub_tensor.clone(), 0);
    let mut mult = GradedMap::zero(p, sub_tensor, sub_space.clone(), 0);
    let mut inclusion = GradedMap::zero(p, sub_space.clone(), b.space().clone(), 0);
    for (&d, span) in &spans {
        if let Some(block) = inclusion.block_mut(d) {
            for (i, v) in span.basis().iter().enumerate() {
                for (r, &c) in v.iter().enumerate() {
                    block.set(r, i, c);
                }
            }
        }
    }
    for (&d, span) in &spans {
        let sub_pairs = sub_space.tensor_pairs(&sub_space, d);
        let ambient_pairs = b.space().tensor_pairs(b.space(), d);
        // Columns of the inclusion's tensor square, for re-expressing
        // coproducts in the sub-basis.
        let mut pair_cols = Matrix::zeros(p, ambient_pairs.len(), sub_pairs.len());
        for (col, &(da, ia, db, ib)) in sub_pairs.iter().enumerate() {
            let va = &spans[&da].basis()[ia];
            let vb = &spans[&db].basis()[ib];
            for (ja, &ca) in va.iter().enumerate() {
                if ca == 0 {
                    continue;
                }
                for (jb, &cb) in vb.iter().enumerate() {
                    if cb == 0 {
                        continue;
                    }
                    let idx = b.space().pair_index(b.space(), da, ja, db, jb);
                    pair_cols.add_to(idx, col, p.mul(ca, cb));
                }
            }
        }
        for (i, v) in span.basis().iter().enumerate() {
            let block = b.comult().block(d).expect("comult inside window");
            let img = block.apply(v);
            let coords = match pair_cols.solve(&img) {
                Ok(x) => x,
                Err(_) => {
                    return Err(Error::NotASubcoalgebra {
                        degree: d,
                        witness: sub_space.label(d, i).to_string(),
                    })
                }
            };
            if let Some(block) = comult.block_mut(d) {
                for (row, &c) in coords.iter().enumerate() {
                    block.set(row, i, c);
                }
            }
        }
        // Induced multiplication: products of sub-basis vectors, expressed in
        // the sub-basis of the target degree.
        if let Some(block) = mult.block_mut(d) {
            for (col, &(da, ia, db, ib)) in sub_pairs.iter().enumerate() {
                let va = &spans[&da].basis()[ia];
                let vb = &spans[&db].basis()[ib];
                let prod = b.mult_vectors(da, va, db, vb);
                let coords = span
                    .coordinates(&prod)
                    .expect("span closed under products");
                for (row, &c) in coords.iter().enumerate() {
                    block.set(row, col, c);
                }
            }
        }
    }
    let sub = BialgebraPresentation::new(p, sub_space, mult, comult, "1".to_string(), b.signs())?;
    Ok((sub, inclusion))
}
