//! The classical comodules `H_*(X; F_p)` over truncations of the dual
//! Steenrod algebra for `X ∈ {S⁰, BP, BP⟨n⟩, ku, ko, tmf}`, the Adams 0-line
//! `e(X)`, and the smash-product Künneth verdicts.
//!
//! Each comodule is presented on the monomial basis of its generator list,
//! embedded in `A_*` (or, for `ku` at odd primes, in `⊕_{i=0}^{p-2} Σ^{2i}
//! A_*`), with the coaction restricted from the Milnor coproducts. The
//! embedding is machine-verified to be an injective comodule map.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::bialgebra::{build_dual_steenrod, BialgebraPresentation};
use crate::comodule::{
    direct_sum, gamma_comodule, suspend_comodule, Comodule, ComoduleMap, SubComodule,
};
use crate::cotensor::{primitives, CotensorResult};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::graded::{GradedMap, GradedSpace};
use crate::kunneth::{
    kunneth_check, kunneth_check_graded, suspended_gamma_ambient, KunnethReport,
};
use crate::matrix::{Matrix, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalName {
    Sphere,
    Bp,
    BpN(u32),
    Ku,
    Ko,
    Tmf,
}

impl ClassicalName {
    pub fn parse(s: &str, n: Option<u32>) -> Option<Self> {
        match s {
            "sphere" => Some(ClassicalName::Sphere),
            "bp" => Some(ClassicalName::Bp),
            "bp_n" => Some(ClassicalName::BpN(n?)),
            "ku" => Some(ClassicalName::Ku),
            "ko" => Some(ClassicalName::Ko),
            "tmf" => Some(ClassicalName::Tmf),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            ClassicalName::Sphere => "sphere".to_string(),
            ClassicalName::Bp => "bp".to_string(),
            ClassicalName::BpN(n) => format!("bp_n({n})"),
            ClassicalName::Ku => "ku".to_string(),
            ClassicalName::Ko => "ko".to_string(),
            ClassicalName::Tmf => "tmf".to_string(),
        }
    }
}

/// One generator of a classical homology ring: a named power of a Milnor
/// element, with its image in `A_*`.
struct Generator {
    /// Base letter, e.g. `zeta2`.
    letter: String,
    /// Power of the letter this generator is, e.g. 2 for `ζ₂²`.
    letter_exp: u32,
    degree: i32,
    element: Vec<u32>,
    exterior: bool,
}

/// How the comodule sits over the (suspended copies of the) dual Steenrod
/// algebra.
pub enum Embedding {
    /// A subcomodule of `A_*` itself.
    SubOfGamma(SubComodule),
    /// A subcomodule of `⊕_c Σ^{n_c} A_*`.
    Graded { iota: ComoduleMap, copies: Vec<i32> },
}

pub struct ClassicalComodule {
    pub name: ClassicalName,
    pub prime: Prime,
    pub gamma: Arc<BialgebraPresentation>,
    pub comodule: Comodule,
    pub embedding: Embedding,
}

/// Degrees of the generator list of a family, smallest first, ignoring the
/// window. Used for the default window choice.
fn generator_degrees(name: ClassicalName, p: Prime, how_many: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let pv = p.get() as i64;
    let xi_deg = |n: u32| -> i64 {
        let pn = pv.saturating_pow(n);
        if pv == 2 { pn - 1 } else { 2 * (pn - 1) }
    };
    let tau_deg = |n: u32| -> i64 { 2 * pv.saturating_pow(n) - 1 };
    match (name, p.get()) {
        (ClassicalName::Sphere, _) => {}
        (ClassicalName::Bp, 2) => {
            for i in 1..=how_many as u32 {
                out.push(2 * xi_deg(i));
            }
        }
        (ClassicalName::Bp, _) => {
            for i in 1..=how_many as u32 {
                out.push(xi_deg(i));
            }
        }
        (ClassicalName::BpN(n), 2) => {
            for i in 1..=how_many as u32 {
                out.push(if i <= n { 2 * xi_deg(i) } else { xi_deg(i) });
            }
        }
        (ClassicalName::BpN(n), _) => {
            for i in 1..=how_many as u32 {
                out.push(xi_deg(i));
            }
            for i in n..n + how_many as u32 {
                out.push(tau_deg(i));
            }
        }
        (ClassicalName::Ku, 2) => return generator_degrees(ClassicalName::BpN(1), p, how_many),
        (ClassicalName::Ku, _) => {
            for i in 1..=how_many as u32 {
                out.push(xi_deg(i));
            }
            for i in 2..2 + how_many as u32 {
                out.push(tau_deg(i));
            }
        }
        (ClassicalName::Ko, 2) => {
            out.push(4 * xi_deg(1));
            out.push(2 * xi_deg(2));
            for i in 3..3 + how_many as u32 {
                out.push(xi_deg(i));
            }
        }
        (ClassicalName::Tmf, 2) => {
            out.push(8 * xi_deg(1));
            out.push(4 * xi_deg(2));
            out.push(2 * xi_deg(3));
            for i in 4..4 + how_many as u32 {
                out.push(xi_deg(i));
            }
        }
        _ => {}
    }
    out.sort_unstable();
    out.truncate(how_many);
    out
}

/// The smallest window cap that shows at least two non-unit generators of
/// the family (degree 4 for the sphere, which has none).
pub fn default_cap(name: ClassicalName, p: Prime) -> i32 {
    let degs = generator_degrees(name, p, 2);
    match degs.last() {
        Some(&d) if d <= i64::from(i32::MAX) => d as i32,
        _ => 4,
    }
}

fn named_power(
    gamma: &BialgebraPresentation,
    letter: &str,
    exp: u32,
) -> Option<(i32, Vec<u32>)> {
    let conjugated;
    let (d, v): (&i32, &Vec<u32>) = if let Some(base) = letter.strip_prefix("taubar") {
        let (d, v) = gamma.named_element(&format!("tau{base}"))?;
        let chi = gamma.antipode();
        conjugated = (*d, chi.apply(*d, v).ok()?);
        (&conjugated.0, &conjugated.1)
    } else {
        let (d, v) = gamma.named_element(letter)?;
        (d, v)
    };
    let mut acc_d = 0i32;
    let mut acc: Vec<u32> = {
        let mut unit = vec![0u32; gamma.space().dim(0)];
        unit[gamma.unit_index()] = 1;
        unit
    };
    for _ in 0..exp {
        if acc_d + d > gamma.cap() {
            return None;
        }
        acc = gamma.mult_vectors(acc_d, &acc, *d, v);
        acc_d += d;
    }
    Some((acc_d, acc))
}

/// Generator list with images in the truncated `A_*`; generators above the
/// window are silently absent (the window certifies what it certifies).
fn generator_list(
    name: ClassicalName,
    gamma: &BialgebraPresentation,
) -> Result<Vec<Generator>> {
    let p = gamma.prime();
    let cap = gamma.cap() as i64;
    // (letter, exponent, exterior, conjugate): exterior generators at odd p
    // must be the antipode conjugates — their coproducts' right tensor
    // factors then stay inside the span, which is what makes the monomial
    // span a left subcomodule. The p = 2 lists already use conjugates.
    let mut gens: Vec<(String, u32, bool)> = Vec::new();
    let push_zeta_powers = |gens: &mut Vec<(String, u32, bool)>, powers: &[(u32, u32)]| {
        // (index, exponent) pairs, then all higher zetas to the window.
        for &(i, e) in powers {
            gens.push((format!("zeta{i}"), e, false));
        }
        let start = powers.last().map_or(1, |&(i, _)| i + 1);
        let mut i = start;
        while crate::milnor::xi_degree(p, i as usize) <= cap {
            gens.push((format!("zeta{i}"), 1, false));
            i += 1;
        }
    };
    match (name, p.get()) {
        (ClassicalName::Sphere, _) => {}
        (ClassicalName::Bp, 2) => {
            let mut i = 1;
            while 2 * crate::milnor::xi_degree(p, i as usize) <= cap {
                gens.push((format!("zeta{i}"), 2, false));
                i += 1;
            }
        }
        (ClassicalName::Bp, _) => {
            let mut i = 1;
            while crate::milnor::xi_degree(p, i as usize) <= cap {
                gens.push((format!("xi{i}"), 1, false));
                i += 1;
            }
        }
        (ClassicalName::BpN(n), 2) => {
            let squares: Vec<(u32, u32)> = (1..=n).map(|i| (i, 2)).collect();
            push_zeta_powers(&mut gens, &squares);
        }
        (ClassicalName::BpN(n), _) => {
            let mut i = 1;
            while crate::milnor::xi_degree(p, i as usize) <= cap {
                gens.push((format!("xi{i}"), 1, false));
                i += 1;
            }
            let mut k = n;
            while crate::milnor::tau_degree(p, k as usize) <= cap {
                gens.push((format!("taubar{k}"), 1, true));
                k += 1;
            }
        }
        (ClassicalName::Ku, 2) => {
            push_zeta_powers(&mut gens, &[(1, 2)]);
        }
        (ClassicalName::Ko, 2) => {
            push_zeta_powers(&mut gens, &[(1, 4), (2, 2)]);
        }
        (ClassicalName::Tmf, 2) => {
            push_zeta_powers(&mut gens, &[(1, 8), (2, 4), (3, 2)]);
        }
        (ClassicalName::Ku, _) => {
            // The single wedge summand P(ξ₁, …) ⊗ E(τ̄₂, τ̄₃, …).
            let mut i = 1;
            while crate::milnor::xi_degree(p, i as usize) <= cap {
                gens.push((format!("xi{i}"), 1, false));
                i += 1;
            }
            let mut k = 2;
            while crate::milnor::tau_degree(p, k as usize) <= cap {
                gens.push((format!("taubar{k}"), 1, true));
                k += 1;
            }
        }
        (ClassicalName::Ko, _) | (ClassicalName::Tmf, _) => {
            return Err(Error::UnsupportedPair {
                name: name.label(),
                prime: p.get(),
            });
        }
    }
    let mut out = Vec::new();
    for (letter, exp, exterior) in gens {
        if let Some((d, element)) = named_power(gamma, &letter, exp) {
            if d <= gamma.cap() {
                out.push(Generator {
                    letter,
                    letter_exp: exp,
                    degree: d,
                    element,
                    exterior,
                });
            }
        }
    }
    Ok(out)
}

/// Monomials in the generators up to the window cap: exponent vectors with
/// exterior generators at most once, with their images in `A_*` and
/// human-readable labels like `zeta1^4*zeta3`.
fn monomial_basis(
    gamma: &BialgebraPresentation,
    gens: &[Generator],
) -> Vec<(i32, String, Vec<u32>)> {
    let cap = gamma.cap();
    let mut out: Vec<(i32, String, Vec<u32>)> = Vec::new();
    let mut unit = vec![0u32; gamma.space().dim(0)];
    unit[gamma.unit_index()] = 1;
    // Depth-first over exponent vectors.
    fn rec(
        gamma: &BialgebraPresentation,
        gens: &[Generator],
        idx: usize,
        degree: i32,
        element: Vec<u32>,
        exps: &mut Vec<u32>,
        out: &mut Vec<(i32, String, Vec<u32>)>,
        cap: i32,
    ) {
        if idx == gens.len() {
            let label = {
                let mut parts = Vec::new();
                for (g, &e) in gens.iter().zip(exps.iter()) {
                    if e == 0 {
                        continue;
                    }
                    let total = g.letter_exp * e;
                    if total == 1 {
                        parts.push(g.letter.clone());
                    } else {
                        parts.push(format!("{}^{}", g.letter, total));
                    }
                }
                if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join("*")
                }
            };
            out.push((degree, label, element));
            return;
        }
        let g = &gens[idx];
        let max_e = if g.exterior {
            u32::from(degree + g.degree <= cap)
        } else {
            ((cap - degree) / g.degree).max(0) as u32
        };
        let mut cur = element.clone();
        let mut cur_d = degree;
        for e in 0..=max_e {
            exps.push(e);
            rec(gamma, gens, idx + 1, cur_d, cur.clone(), exps, out, cap);
            exps.pop();
            if e < max_e {
                cur = gamma.mult_vectors(cur_d, &cur, g.degree, &g.element);
                cur_d += g.degree;
                if cur_d > cap {
                    break;
                }
            }
        }
    }
    let mut exps = Vec::new();
    rec(gamma, gens, 0, 0, unit, &mut exps, &mut out, cap);
    // Degree-major, then label order: stable presentation.
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    out
}

/// A labelled subcomodule of `Γ` from explicit independent vectors: the
/// comodule keeps the given basis and labels, the coaction is solved from
/// `Δ` restricted to the span.
fn labelled_subcomodule(
    gamma: &Arc<BialgebraPresentation>,
    vectors: &[(i32, String, Vec<u32>)],
) -> Result<SubComodule> {
    let p = gamma.prime();
    let window = gamma.space().window();
    let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    let mut cols: BTreeMap<i32, Vec<Vec<u32>>> = BTreeMap::new();
    for (d, label, v) in vectors {
        basis.entry(*d).or_default().push(label.clone());
        cols.entry(*d).or_default().push(v.clone());
    }
    let space = GradedSpace::new(window, basis)?;
    let mut spans: BTreeMap<i32, Subspace> = BTreeMap::new();
    let mut incl_mats: BTreeMap<i32, Matrix> = BTreeMap::new();
    for (&d, vs) in &cols {
        let ambient = gamma.space().dim(d);
        let mut mat = Matrix::zeros(p, ambient, vs.len());
        for (j, v) in vs.iter().enumerate() {
            for (i, &c) in v.iter().enumerate() {
                mat.set(i, j, c);
            }
        }
        if mat.rank() != vs.len() {
            return Err(Error::ShapeMismatch {
                what: "classical monomials are not independent",
            });
        }
        spans.insert(d, Subspace::new(p, ambient, vs.clone()));
        incl_mats.insert(d, mat);
    }

    let target = gamma.space().tensor(&space);
    let mut coaction = GradedMap::zero(p, space.clone(), target, 0);
    let mut inclusion = GradedMap::zero(p, space.clone(), gamma.space().clone(), 0);
    for (&d, vs) in &cols {
        if let Some(block) = inclusion.block_mut(d) {
            for (j, v) in vs.iter().enumerate() {
                for (i, &c) in v.iter().enumerate() {
                    block.set(i, j, c);
                }
            }
        }
        let gamma_pairs = gamma.space().tensor_pairs(gamma.space(), d);
        for (j, v) in vs.iter().enumerate() {
            let img = gamma.comult().block(d).expect("inside window").apply(v);
            // Split per left-Γ component, solve in the sub-basis.
            let mut by_gamma: BTreeMap<(i32, usize), Vec<u32>> = BTreeMap::new();
            for (row, &(dg, ig, dm, _)) in gamma_pairs.iter().enumerate() {
                if img[row] != 0 {
                    by_gamma
                        .entry((dg, ig))
                        .or_insert_with(|| vec![0u32; gamma.space().dim(dm)])
                        [gamma_pairs[row].3] = img[row];
                }
            }
            let mut entries = Vec::new();
            for ((dg, ig), comp) in by_gamma {
                let dm = d - dg;
                let Some(mat) = incl_mats.get(&dm) else {
                    return Err(Error::NotASubcomodule {
                        degree: d,
                        witness: space.label(d, j).to_string(),
                    });
                };
                let Ok(coords) = mat.solve(&comp) else {
                    return Err(Error::NotASubcomodule {
                        degree: d,
                        witness: space.label(d, j).to_string(),
                    });
                };
                for (jm, &c) in coords.iter().enumerate() {
                    if c != 0 {
                        let row = gamma.space().pair_index(&space, dg, ig, dm, jm);
                        entries.push((row, j, c));
                    }
                }
            }
            if let Some(block) = coaction.block_mut(d) {
                for (row, col, c) in entries {
                    block.add_to(row, col, c);
                }
            }
        }
    }
    let comodule = Comodule::new(
        Arc::clone(gamma),
        crate::comodule::Side::Left,
        space,
        coaction,
    );
    Ok(SubComodule {
        comodule,
        inclusion,
        spans,
    })
}

/// Builds the named classical comodule over the `A_*` truncation on
/// `[0, cap]`, with its embedding verified as an injective comodule map.
pub fn classical(name: ClassicalName, p: Prime, cap: i32) -> Result<ClassicalComodule> {
    let gamma = Arc::new(build_dual_steenrod(p, cap)?);
    match (name, p.get()) {
        (ClassicalName::Ku, q) if q != 2 => {
            // ⊕_{i=0}^{p-2} Σ^{2i} of the subalgebra P(ξ)⊗E(τ_{≥2}).
            let gens = generator_list(name, &gamma)?;
            let monos = monomial_basis(&gamma, &gens);
            let summand = labelled_subcomodule(&gamma, &monos)?;
            let copies: Vec<i32> = (0..p.get() as i32 - 1).map(|i| 2 * i).collect();
            let suspended: Vec<Comodule> = copies
                .iter()
                .map(|&c| suspend_comodule(&summand.comodule, c))
                .collect();
            let refs: Vec<&Comodule> = suspended.iter().collect();
            let m = direct_sum(&gamma, &refs);
            let ambient = suspended_gamma_ambient(&gamma, &copies);
            // Block-diagonal ι from the summand inclusions.
            let mut map = GradedMap::zero(p, m.space().clone(), ambient.space().clone(), 0);
            for d in m.space().window().iter() {
                if map.block(d).is_none() {
                    continue;
                }
                let sum_spaces: Vec<&GradedSpace> =
                    suspended.iter().map(|c| c.space()).collect();
                let src_offsets = GradedSpace::direct_sum_offsets(&sum_spaces, d);
                let tgt_offset = |c: usize| -> usize {
                    (0..c).map(|k| gamma.space().dim(d - copies[k])).sum()
                };
                let mut entries = Vec::new();
                for (c, &shift) in copies.iter().enumerate() {
                    let dm = d - shift;
                    let dim = summand.comodule.space().dim(dm);
                    for j in 0..dim {
                        let mut v = vec![0u32; dim];
                        v[j] = 1;
                        let img = summand.inclusion.apply(dm, &v)?;
                        for (i, &cc) in img.iter().enumerate() {
                            if cc != 0 {
                                entries.push((tgt_offset(c) + i, src_offsets[c] + j, cc));
                            }
                        }
                    }
                }
                let block = map.block_mut(d).unwrap();
                for (r, cidx, c) in entries {
                    block.set(r, cidx, c);
                }
            }
            let iota = ComoduleMap {
                source: m.clone(),
                target: ambient,
                map,
            };
            iota.verify()?;
            if !iota.is_injective() {
                return Err(Error::NotAComoduleMap {
                    degree: 0,
                    detail: "classical embedding not injective",
                });
            }
            Ok(ClassicalComodule {
                name,
                prime: p,
                gamma,
                comodule: m,
                embedding: Embedding::Graded { iota, copies },
            })
        }
        _ => {
            let gens = generator_list(name, &gamma)?;
            let monos = monomial_basis(&gamma, &gens);
            let sub = labelled_subcomodule(&gamma, &monos)?;
            let map = ComoduleMap {
                source: sub.comodule.clone(),
                target: gamma_comodule(&gamma),
                map: sub.inclusion.clone(),
            };
            map.verify()?;
            if !map.is_injective() {
                return Err(Error::NotAComoduleMap {
                    degree: 0,
                    detail: "classical embedding not injective",
                });
            }
            Ok(ClassicalComodule {
                name,
                prime: p,
                gamma,
                comodule: sub.comodule.clone(),
                embedding: Embedding::SubOfGamma(sub),
            })
        }
    }
}

/// The Adams 0-line `e(X) = Cotor⁰_{A_*}(F_p, H_*(X))`: the comodule
/// primitives.
pub fn zero_line(c: &Comodule) -> CotensorResult {
    primitives(c)
}

/// The smash-product criterion: is `e(X)⊗e(Y) → e(X∧Y)` an isomorphism?
/// Dispatches on the embedding of `X`; the witness, when present, is a
/// homogeneous element of `Y`'s homology.
pub fn smash_kunneth_verdict(x: &ClassicalComodule, y: &Comodule) -> Result<KunnethReport> {
    match &x.embedding {
        Embedding::SubOfGamma(sub) => kunneth_check(sub, y),
        Embedding::Graded { iota, copies } => kunneth_check_graded(iota, copies, y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    /// Monomial-count oracle: dimensions per degree of a free commutative
    /// algebra on generators of the given degrees (exterior flags), by
    /// direct enumeration of exponent vectors.
    fn monomial_count_oracle(gens: &[(i32, bool)], cap: i32) -> Vec<usize> {
        let mut dims = vec![0usize; cap as usize + 1];
        fn rec(gens: &[(i32, bool)], idx: usize, degree: i32, cap: i32, dims: &mut [usize]) {
            if idx == gens.len() {
                dims[degree as usize] += 1;
                return;
            }
            let (d, exterior) = gens[idx];
            let max_e = if exterior { 1 } else { (cap - degree) / d };
            for e in 0..=max_e {
                rec(gens, idx + 1, degree + e * d, cap, dims);
            }
        }
        rec(gens, 0, 0, cap, &mut dims);
        dims
    }

    #[test]
    fn bp_at_2_generators_and_dims() {
        let c = classical(ClassicalName::Bp, p(2), 6).unwrap();
        // Generators ζ_1² (degree 2), ζ_2² (degree 6).
        let oracle = monomial_count_oracle(&[(2, false), (6, false)], 6);
        for d in 0..=6 {
            assert_eq!(c.comodule.space().dim(d), oracle[d as usize], "degree {d}");
        }
        assert!(c.comodule.check_comodule().all_pass());
    }

    #[test]
    fn ko_at_2_dims_up_to_8() {
        // Generators ζ_1⁴ (4), ζ_2² (6), ζ_3 (7), …: monomial dims in
        // degrees 0..8 are (1,0,0,0,1,0,1,1,1).
        let c = classical(ClassicalName::Ko, p(2), 8).unwrap();
        let oracle = monomial_count_oracle(&[(4, false), (6, false), (7, false)], 8);
        assert_eq!(oracle, vec![1, 0, 0, 0, 1, 0, 1, 1, 1]);
        for d in 0..=8 {
            assert_eq!(c.comodule.space().dim(d), oracle[d as usize], "degree {d}");
        }
        assert!(c.comodule.check_comodule().all_pass());
    }

    #[test]
    fn tmf_at_2_and_unsupported_pairs() {
        let c = classical(ClassicalName::Tmf, p(2), 12).unwrap();
        // ζ_1⁸ in degree 8, ζ_2⁴ in degree 12, nothing in between.
        assert_eq!(c.comodule.space().dim(8), 1);
        assert_eq!(c.comodule.space().dim(12), 1);
        for d in 9..=11 {
            assert_eq!(c.comodule.space().dim(d), 0);
        }
        assert!(matches!(
            classical(ClassicalName::Ko, p(3), 8),
            Err(Error::UnsupportedPair { .. })
        ));
        assert!(matches!(
            classical(ClassicalName::Tmf, p(5), 8),
            Err(Error::UnsupportedPair { .. })
        ));
    }

    #[test]
    fn bp_n_at_odd_p_includes_tau_n() {
        // BP⟨1⟩ at p=3: P(ξ_1, …) ⊗ E(τ_1, τ_2, …); window 6 sees ξ_1 (4)
        // and τ_1 (5).
        let c = classical(ClassicalName::BpN(1), p(3), 6).unwrap();
        assert_eq!(c.comodule.space().dim(4), 1);
        assert_eq!(c.comodule.space().dim(5), 1);
        assert_eq!(c.comodule.space().dim(1), 0, "τ_0 is excluded");
        assert!(c.comodule.check_comodule().all_pass());
    }

    #[test]
    fn sphere_zero_line_is_unit() {
        for q in [2u64, 3] {
            let c = classical(ClassicalName::Sphere, p(q), 6).unwrap();
            let e = zero_line(&c.comodule);
            assert_eq!(e.dim(0), 1);
            let total: usize = c
                .comodule
                .space()
                .dims()
                .iter()
                .map(|&(d, _)| e.dim(d))
                .sum();
            assert_eq!(total, 1);
        }
    }

    #[test]
    fn bp_primitives_are_unit_only_to_degree_6() {
        let c = classical(ClassicalName::Bp, p(2), 6).unwrap();
        let e = zero_line(&c.comodule);
        assert_eq!(e.dim(0), 1);
        for d in 1..=6 {
            assert_eq!(e.dim(d), 0, "degree {d}");
        }
    }

    #[test]
    fn smash_bp_bp_fails_with_zeta1_squared() {
        let x = classical(ClassicalName::Bp, p(2), 6).unwrap();
        let report = smash_kunneth_verdict(&x, &x.comodule).unwrap();
        assert!(!report.holds());
        let w = report.witness.unwrap();
        assert_eq!(w.degree, 2);
        assert_eq!(w.printable, "zeta1^2");
    }

    #[test]
    fn smash_anything_with_sphere_passes() {
        let sphere = classical(ClassicalName::Sphere, p(2), 6).unwrap();
        for name in [ClassicalName::Bp, ClassicalName::Ko, ClassicalName::BpN(2)] {
            let x = classical(name, p(2), 6).unwrap();
            let report = smash_kunneth_verdict(&x, &sphere.comodule).unwrap();
            assert!(report.holds(), "{:?} ∧ sphere", name);
        }
        // ku at p=3 exercises the graded path.
        let ku = classical(ClassicalName::Ku, p(3), 6).unwrap();
        let sphere3 = classical(ClassicalName::Sphere, p(3), 6).unwrap();
        let report = smash_kunneth_verdict(&ku, &sphere3.comodule).unwrap();
        assert!(report.holds());
        assert!(matches!(ku.embedding, Embedding::Graded { .. }));
    }

    #[test]
    fn default_caps_show_two_generators() {
        assert_eq!(default_cap(ClassicalName::Bp, p(2)), 6);
        assert_eq!(default_cap(ClassicalName::Ko, p(2)), 6);
        assert_eq!(default_cap(ClassicalName::Tmf, p(2)), 12);
        assert_eq!(default_cap(ClassicalName::Bp, p(3)), 16);
        assert_eq!(default_cap(ClassicalName::Ku, p(3)), 16);
    }
}
