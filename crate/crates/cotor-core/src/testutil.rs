//! Deterministic random instances for the property and acceptance suites.
//!
//! Samples bialgebras from the families the computations target — truncated
//! polynomial, exterior, and small dual-Steenrod truncations — and comodules
//! from trivial/extended/Γ building blocks mixed by suspension, direct sum,
//! generated subcomodules and quotients. Everything is driven by a seeded
//! ChaCha stream so failures replay exactly.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bialgebra::{
    build_dual_steenrod, build_exterior, build_truncated_polynomial, BialgebraPresentation,
};
use crate::comodule::{
    direct_sum, extended_comodule, gamma_comodule, quotient_comodule, sub_comodule_from_spans,
    suspend_comodule, tensor_comodule, trivial_comodule, Comodule, SubComodule,
};
use crate::field::Prime;
use crate::graded::{DegreeWindow, GradedSpace};
use crate::matrix::Subspace;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One of the standard bialgebra families, on the given window cap.
pub fn random_gamma(rng: &mut ChaCha8Rng, cap: i32) -> Arc<BialgebraPresentation> {
    let pick = rng.gen_range(0..6u32);
    let b = match pick {
        0 => build_truncated_polynomial(Prime::new(2).unwrap(), 1, 2, cap).unwrap(),
        1 => build_truncated_polynomial(Prime::new(3).unwrap(), 1, 3, cap).unwrap(),
        2 => build_truncated_polynomial(Prime::new(5).unwrap(), 1, 5, cap).unwrap(),
        3 => build_exterior(Prime::new(2).unwrap(), 1, cap).unwrap(),
        4 => build_dual_steenrod(Prime::new(2).unwrap(), cap).unwrap(),
        _ => build_dual_steenrod(Prime::new(3).unwrap(), cap).unwrap(),
    };
    Arc::new(b)
}

/// A random graded space with a few basis elements below the cap.
pub fn random_space(rng: &mut ChaCha8Rng, cap: i32, tag: &str) -> GradedSpace {
    let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    let count = rng.gen_range(1..=3usize);
    for k in 0..count {
        let d = rng.gen_range(0..=cap.min(4));
        basis
            .entry(d)
            .or_default()
            .push(format!("{tag}{k}_{d}"));
    }
    GradedSpace::new(DegreeWindow::new(0, cap), basis).unwrap()
}

/// The smallest subcomodule containing a set of homogeneous vectors:
/// closure under adding the comodule components of the coaction.
pub fn generated_subcomodule(
    m: &Comodule,
    seeds: &[(i32, Vec<u32>)],
) -> crate::error::Result<SubComodule> {
    let p = m.prime();
    let mut spans: BTreeMap<i32, Subspace> = BTreeMap::new();
    for (d, v) in seeds {
        let dim = m.space().dim(*d);
        if dim == 0 || v.iter().all(|&c| c == 0) {
            continue;
        }
        let entry = spans
            .entry(*d)
            .or_insert_with(|| Subspace::zero(p, dim));
        *entry = entry.sum(&Subspace::new(p, dim, vec![v.clone()]));
    }
    loop {
        let mut grew = false;
        let degrees: Vec<i32> = spans.keys().copied().collect();
        for d in degrees {
            let basis: Vec<Vec<u32>> = spans[&d].basis().to_vec();
            for v in basis {
                let img = m.coaction().apply(d, &v)?;
                let pairs = m.gamma().space().tensor_pairs(m.space(), d);
                // Comodule component per Γ basis element of the coaction.
                let mut comps: BTreeMap<(i32, usize), Vec<u32>> = BTreeMap::new();
                for (row, &(dg, ig, dm, jm)) in pairs.iter().enumerate() {
                    if img[row] != 0 {
                        comps
                            .entry((dg, ig))
                            .or_insert_with(|| vec![0u32; m.space().dim(dm)])[jm] = img[row];
                    }
                }
                for ((dg, _), comp) in comps {
                    let dm = d - dg;
                    let dim = m.space().dim(dm);
                    let entry = spans
                        .entry(dm)
                        .or_insert_with(|| Subspace::zero(p, dim));
                    let candidate = entry.sum(&Subspace::new(p, dim, vec![comp]));
                    if candidate.dim() > entry.dim() {
                        *entry = candidate;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    spans.retain(|_, s| s.dim() > 0);
    sub_comodule_from_spans(m, spans)
}

fn random_vector(rng: &mut ChaCha8Rng, p: Prime, len: usize) -> Vec<u32> {
    (0..len).map(|_| rng.gen_range(0..p.get())).collect()
}

/// A random comodule over `gamma`: a building block, possibly suspended or
/// summed, then cut down to a generated subcomodule or a quotient.
pub fn random_comodule(rng: &mut ChaCha8Rng, gamma: &Arc<BialgebraPresentation>) -> Comodule {
    let cap = gamma.cap();
    let base = match rng.gen_range(0..4u32) {
        0 => trivial_comodule(gamma, random_space(rng, cap, "t")),
        1 => gamma_comodule(gamma),
        2 => extended_comodule(gamma, &random_space(rng, cap.min(3), "e")),
        _ => {
            let a = gamma_comodule(gamma);
            let b = suspend_comodule(&a, rng.gen_range(0..=2));
            direct_sum(gamma, &[&a, &b])
        }
    };
    match rng.gen_range(0..3u32) {
        0 => base,
        1 => {
            // Generated subcomodule from one or two random seeds.
            let seeds: Vec<(i32, Vec<u32>)> = (0..rng.gen_range(1..=2usize))
                .filter_map(|_| {
                    let dims = base.space().dims();
                    if dims.is_empty() {
                        return None;
                    }
                    let (d, n) = dims[rng.gen_range(0..dims.len())];
                    Some((d, random_vector(rng, base.prime(), n)))
                })
                .collect();
            match generated_subcomodule(&base, &seeds) {
                Ok(sub) => sub.comodule,
                Err(_) => base,
            }
        }
        _ => {
            let seeds: Vec<(i32, Vec<u32>)> = (0..1usize)
                .filter_map(|_| {
                    let dims = base.space().dims();
                    if dims.is_empty() {
                        return None;
                    }
                    let (d, n) = dims[rng.gen_range(0..dims.len())];
                    Some((d, random_vector(rng, base.prime(), n)))
                })
                .collect();
            match generated_subcomodule(&base, &seeds) {
                Ok(sub) => quotient_comodule(&base, &sub).0,
                Err(_) => base,
            }
        }
    }
}

/// A random subcomodule of `Γ` itself, for the Künneth criteria.
pub fn random_sub_of_gamma(
    rng: &mut ChaCha8Rng,
    gamma: &Arc<BialgebraPresentation>,
) -> SubComodule {
    let g = gamma_comodule(gamma);
    let dims = g.space().dims();
    let mut seeds: Vec<(i32, Vec<u32>)> = vec![(0, {
        let mut v = vec![0u32; gamma.space().dim(0)];
        v[gamma.unit_index()] = 1;
        v
    })];
    for _ in 0..rng.gen_range(0..=2usize) {
        let (d, n) = dims[rng.gen_range(0..dims.len())];
        seeds.push((d, random_vector(rng, gamma.prime(), n)));
    }
    generated_subcomodule(&g, &seeds).expect("generated closure is a subcomodule")
}

/// A random trivial comodule.
pub fn random_trivial(rng: &mut ChaCha8Rng, gamma: &Arc<BialgebraPresentation>) -> Comodule {
    trivial_comodule(gamma, random_space(rng, gamma.cap(), "w"))
}

/// Tensor helper re-exported for suites that mix instances.
pub fn tensor(m: &Comodule, n: &Comodule) -> Comodule {
    tensor_comodule(m, n)
}
