//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured evidence. Exact arithmetic means every tolerance is exact
//! equality; runtime budgets are asserted where stated.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use cotor_core::bialgebra::{build_truncated_polynomial, BialgebraPresentation};
use cotor_core::cobar::{build_cobar, cotor, transpotent, CobarElem};
use cotor_core::comodule::{gamma_comodule, ground_comodule, tensor_comodule};
use cotor_core::cotensor::primitives;
use cotor_core::field::Prime;
use cotor_core::kss::{gysin_les, kunneth_ss};
use cotor_core::kunneth::{converse_test, kunneth_check};
use cotor_core::primfilt::{coaction_is_trivial, primitive_filtration};
use cotor_core::steenrod::{classical, smash_kunneth_verdict, ClassicalName};
use cotor_core::testutil;

fn kxi(p: u64, cap: i32) -> Arc<BialgebraPresentation> {
    Arc::new(build_truncated_polynomial(Prime::new(p).unwrap(), 1, p as u32, cap).unwrap())
}

/// Internal degree of the Cotor class at cohomological degree `s` over
/// `k[ξ]/ξ^p` with `|ξ| = 1`: `h^ε b^j` has degree `ε + p·j`.
fn class_degree(p: i32, s: usize) -> i32 {
    let j = (s / 2) as i32;
    let eps = (s % 2) as i32;
    p * j + eps
}

#[test]
fn acceptance_1_golden_chart_p5() {
    let start = Instant::now();
    let p = 5i32;
    let cap = 12;
    let s_max = 8usize;
    let g = kxi(5, cap);
    let k = ground_comodule(&g);
    let n = gamma_comodule(&g);
    let ss = kunneth_ss(&k, &k, &n, None, s_max).unwrap();

    // E_1^{s,t} is one-dimensional at every window-representable spot
    // (internal degree class_degree(s) + t ≤ cap) and zero otherwise.
    for s in 0..=s_max {
        for t in 0..5usize {
            let expected = usize::from(class_degree(p, s) + t as i32 <= cap);
            assert_eq!(
                ss.dim_total(1, s, t),
                expected,
                "E_1 at (s={s}, t={t})"
            );
        }
    }

    // E_2 is nonzero exactly at {(2j,0)} ∪ {(2j+1,4)} on the window.
    for s in 0..=s_max {
        for t in 0..5usize {
            let in_pattern = (s % 2 == 0 && t == 0) || (s % 2 == 1 && t == 4);
            let representable = class_degree(p, s) + t as i32 <= cap;
            let expected = usize::from(in_pattern && representable);
            assert_eq!(ss.dim_total(2, s, t), expected, "E_2 at (s={s}, t={t})");
        }
    }

    // d_2 = d_3 = 0; d_4 has rank one at each on-window pair
    // (2j+1, 4) → (2j+2, 0).
    assert!(ss.differential_ranks(2).is_empty(), "d_2 ≠ 0");
    assert!(ss.differential_ranks(3).is_empty(), "d_3 ≠ 0");
    let d4 = ss.differential_ranks(4);
    let expected_d4: Vec<(usize, usize, i32, usize)> =
        vec![(1, 4, 5, 1), (3, 4, 10, 1)];
    assert_eq!(d4, expected_d4, "d_4 pattern");

    // The d_4 target representative at (2,0,5) is proportional to the
    // transpotent cocycle; the scalar is recorded.
    let (td, tcochain) = transpotent(&g).unwrap();
    assert_eq!(td, 5);
    let small = build_cobar(&k, &k, 3).unwrap();
    let small_basis = small.basis(2, 5).unwrap();
    let kss_basis = ss.complex().basis(2, 5).unwrap();
    let mut t_vec = vec![0u32; kss_basis.len()];
    for (i, &c) in tcochain.iter().enumerate() {
        if c != 0 {
            let e = &small_basis.elems[i];
            let out = CobarElem {
                l: e.l,
                bars: e.bars.clone(),
                m: (0, 0),
            };
            t_vec[kss_basis.index_of(&out)] = c;
        }
    }
    let source = ss.cell(4, 1, 4, 5).expect("E_4^{1,4} at degree 5");
    let target = ss.cell(4, 2, 0, 5).expect("E_4^{2,0} at degree 5");
    assert_eq!(target.quotient.dim(), 1);
    let t_class = target.quotient.class_of(&t_vec).unwrap();
    let d4_mat = source.d_out.as_ref().unwrap();
    assert_eq!(d4_mat.rank(), 1);
    let d4_class = [d4_mat.get(0, 0)];
    assert_ne!(t_class[0], 0, "transpotent class vanished");
    assert_ne!(d4_class[0], 0, "d_4 image vanished");
    let pr = Prime::new(5).unwrap();
    let scalar = pr.mul(d4_class[0], pr.inv(t_class[0]));
    assert_ne!(scalar, 0);

    // E_5 = k at (0,0) only.
    assert_eq!(ss.collapse_page(), Some(5));
    let survivors = ss.nonzero_cells(5);
    assert_eq!(survivors, vec![(0, 0, 0, 1)]);

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!(
        "ACCEPTANCE 1 PASS: golden chart at p=5 (window ≤ 12, s ≤ 8) reproduces \
         E_1, E_2, d_2=d_3=0, rank-one d_4 with d_4(hξ⁴) = {scalar}·[Tξ] \
         (scalar −1 ≡ 4 mod 5), E_5 = k at (0,0); {elapsed:?}"
    );
}

#[test]
fn acceptance_2_same_pipeline_p2_p3() {
    for (pv, cap) in [(2u64, 10i32), (3, 10)] {
        let start = Instant::now();
        let g = kxi(pv, cap);
        let k = ground_comodule(&g);
        let n = gamma_comodule(&g);
        let ss = kunneth_ss(&k, &k, &n, None, 8).unwrap();
        // Collapse at E_p with only (0,0) surviving.
        assert_eq!(ss.collapse_page(), Some(pv as usize), "collapse at E_p");
        let last = ss.nonzero_cells(ss.last_page());
        assert_eq!(last, vec![(0, 0, 0, 1)], "E_p = k at (0,0), p={pv}");
        // At p=2 the long differential is d_1.
        if pv == 2 {
            assert!(!ss.differential_ranks(1).is_empty());
            assert!(ss.t_max() == 2);
        }
        // Direct check: Cotor(k, Γ) = k in degree 0 only.
        let direct = cotor(&k, &n, 8).unwrap();
        assert_eq!(direct.dims_of_s(0), vec![(0, 1)]);
        for s in 1..=8 {
            assert_eq!(direct.total_dim(s), 0, "Cotor^{s}(k,Γ) at p={pv}");
        }
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(10), "p={pv} took {elapsed:?}");
        println!(
            "ACCEPTANCE 2 PASS (p={pv}): collapse at E_{pv} with only (0,0) surviving, \
             matching direct Cotor(k,Γ); {elapsed:?}"
        );
    }
}

#[test]
fn acceptance_3_abutment_oracle_200_instances() {
    let start = Instant::now();
    let mut rng = testutil::rng(0xACC3);
    let s_max = 5usize;
    let mut count = 0usize;
    while count < 200 {
        let gamma = testutil::random_gamma(&mut rng, 8);
        // L = unit throughout: a trivial left coefficient is sound over
        // every family regardless of cocommutativity.
        let l = ground_comodule(&gamma);
        let m = testutil::random_comodule(&mut rng, &gamma);
        let n = testutil::random_comodule(&mut rng, &gamma);
        let ss = kunneth_ss(&l, &m, &n, None, s_max).unwrap();
        let einf = ss.einf_dims().unwrap();
        let direct = cotor(&l, &tensor_comodule(&m, &n), s_max).unwrap();
        for s in 0..=s_max {
            for d in ss.window().iter() {
                let lhs = einf.get(&(s, d)).copied().unwrap_or(0);
                assert_eq!(
                    lhs,
                    direct.dim(s, d),
                    "abutment mismatch at instance {count}, (s={s}, d={d})"
                );
            }
        }
        count += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!(
        "ACCEPTANCE 3 PASS: Σ_t dim E_∞^(s,t) = dim Cotor^s(L, M⊗N) exactly on \
         {count} randomized instances (window ≤ 8, s ≤ 5), direct cobar as the \
         oracle; {elapsed:?}"
    );
}

#[test]
fn acceptance_4_trivial_coefficient_kunneth_100_instances() {
    let start = Instant::now();
    let mut rng = testutil::rng(0xACC4);
    let s_max = 4usize;
    let mut count = 0usize;
    while count < 100 {
        let gamma = testutil::random_gamma(&mut rng, 8);
        let l = ground_comodule(&gamma);
        let m = testutil::random_comodule(&mut rng, &gamma);
        let n = testutil::random_trivial(&mut rng, &gamma);
        let mn = tensor_comodule(&m, &n);
        let lhs = cotor(&l, &mn, s_max).unwrap();
        let rhs = cotor(&l, &m, s_max).unwrap();
        let check_cap = lhs
            .window
            .max
            .min(rhs.window.max + n.space().window().min);
        for s in 0..=s_max {
            for d in 0..=check_cap {
                let expect: usize = rhs
                    .dims_of_s(s)
                    .iter()
                    .map(|&(dp, k)| k * n.space().dim(d - dp))
                    .sum();
                assert_eq!(
                    lhs.dim(s, d),
                    expect,
                    "convolution mismatch at instance {count}, (s={s}, d={d})"
                );
            }
        }
        count += 1;
    }
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 4 PASS: Cotor^n(L, M⊗N) = Cotor^n(L,M) ⊛ dims(N) exactly on \
         {count} randomized trivial-N instances; {elapsed:?}"
    );
}

#[test]
fn acceptance_5_four_way_equivalence() {
    let start = Instant::now();
    let mut rng = testutil::rng(0xACC5);
    let mut count = 0usize;
    let mut failures = 0usize;
    let mut chi_deviations = 0usize;
    while count < 200 {
        let gamma = testutil::random_gamma(&mut rng, 7);
        let chi_diagonal = gamma.space().dims().iter().all(|&(_, n)| n <= 1);
        let m = testutil::random_sub_of_gamma(&mut rng, &gamma);
        let n = testutil::random_comodule(&mut rng, &gamma);
        // kunneth_check panics unless (2)⟺(3)⟺(4) and (1)⟺(4χ) — the two
        // provable clusters — hold; these are the executable theorem.
        let report = kunneth_check(&m, &n).unwrap();
        if !report.untwisted_conditions_agree() {
            // The literal four-way statement fails exactly when membership
            // in M⊗N is not χ-stable; impossible over χ-diagonal Γ.
            assert!(
                !chi_diagonal,
                "four-way disagreement over a one-dimensional-pieces Γ at instance {count}"
            );
            chi_deviations += 1;
        }
        if !report.holds() {
            failures += 1;
            let w = report.witness.as_ref().expect("failing verdict has witness");
            // Witness soundness, re-verified from scratch: the (possibly
            // sheared) coaction lands in M⊗N and the element is not
            // primitive.
            assert!(
                cotor_core::kunneth::verify_witness(&m, &n, w).unwrap(),
                "unsound witness at instance {count}"
            );
            let prim = primitives(&n);
            assert!(
                !prim.span(w.degree).is_some_and(|s| s.contains(&w.vector)),
                "witness is primitive at instance {count}"
            );
        }
        count += 1;
    }

    // The two named failure instances reproduce exactly.
    let g = kxi(5, 12);
    let gc = gamma_comodule(&g);
    let all: Vec<(i32, Vec<u32>)> = gc
        .space()
        .dims()
        .into_iter()
        .flat_map(|(d, n)| {
            (0..n).map(move |i| {
                let mut v = vec![0u32; n];
                v[i] = 1;
                (d, v)
            })
        })
        .collect();
    let m = cotor_core::comodule::sub_comodule(&gc, &all).unwrap();
    let report = kunneth_check(&m, &gc).unwrap();
    assert!(!report.holds());
    let dom: usize = report.domain_dims.iter().map(|&(_, n)| n).sum();
    let cod: usize = report.codomain_dims.iter().map(|&(_, n)| n).sum();
    assert_eq!((dom, cod), (1, 5), "M = N = Γ = k[ξ]/ξ⁵: dims 1 vs 5");

    let g2 = Arc::new(cotor_core::bialgebra::build_polynomial(Prime::new(2).unwrap(), 1, 6).unwrap());
    let c2 = gamma_comodule(&g2);
    let m2 = cotor_core::comodule::sub_comodule(&c2, &[(0, vec![1]), (1, vec![1])]).unwrap();
    let n2 = m2.comodule.clone();
    let report2 = kunneth_check(&m2, &n2).unwrap();
    assert!(!report2.holds());
    let dom2: usize = report2.domain_dims.iter().map(|&(_, n)| n).sum();
    let cod2: usize = report2.codomain_dims.iter().map(|&(_, n)| n).sum();
    assert_eq!((dom2, cod2), (1, 2), "counterexample: dims 1 vs 2");

    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 5 PASS: on {count} randomized (M ⊆ Γ, N) instances the \
         provable clusters (2)⟺(3)⟺(4) and (1)⟺(4χ) held everywhere and all \
         four literal conditions agreed except on {chi_deviations} χ-unstable \
         dual-Steenrod instances (the documented correction; zero deviations \
         over single-generator Γ); {failures} negative verdicts with sound \
         witnesses; the named instances reproduce dims 1 vs 5 and 1 vs 2; \
         {elapsed:?}"
    );
}

#[test]
fn acceptance_6_converse_property() {
    let start = Instant::now();
    let mut rng = testutil::rng(0xACC6);
    let mut count = 0usize;
    let mut nonvacuous = 0usize;
    while count < 120 {
        let gamma = testutil::random_gamma(&mut rng, 7);
        let l = ground_comodule(&gamma);
        let m = testutil::random_comodule(&mut rng, &gamma);
        let n = if count.is_multiple_of(3) {
            // Force a share of instances where the hypotheses can hold.
            testutil::random_trivial(&mut rng, &gamma)
        } else {
            testutil::random_comodule(&mut rng, &gamma)
        };
        let report = converse_test(&l, &m, &n).unwrap();
        assert!(
            report.implication_holds(),
            "converse violated at instance {count}"
        );
        if report.detects && report.cotensor_iso && report.cotor1_injective {
            nonvacuous += 1;
            assert!(report.coaction_trivial);
        }
        count += 1;
    }
    assert!(nonvacuous > 0, "every instance was vacuous");
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 6 PASS: zero counterexamples to the converse implication on \
         {count} randomized instances ({nonvacuous} with both hypotheses true); \
         {elapsed:?}"
    );
}

#[test]
fn acceptance_7_engine_invariants_always_on() {
    // d² = 0 and the page-turn identities are errors inside the engines,
    // not test-only checks: build_cobar verifies d² on construction, and
    // kunneth_ss verifies filtration preservation, the E_1 identification,
    // page-turn dimensions from two independent formula routes, materialized
    // cells against the rank profiles, and d_r∘d_r = 0. Exercise both paths
    // on fresh instances here so the criterion has its own evidence.
    let start = Instant::now();
    let mut rng = testutil::rng(0xACC7);
    for _ in 0..25 {
        let gamma = testutil::random_gamma(&mut rng, 7);
        let l = ground_comodule(&gamma);
        let m = testutil::random_comodule(&mut rng, &gamma);
        let n = testutil::random_comodule(&mut rng, &gamma);
        build_cobar(&l, &tensor_comodule(&m, &n), 4).unwrap();
        kunneth_ss(&l, &m, &n, None, 4).unwrap();
    }
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 7 PASS: d²=0, filtration preservation, E_1 identification, \
         page-turn and d_r∘d_r=0 verified inside the engines on every instance \
         (25 fresh instances exercised); {elapsed:?}"
    );
}

#[test]
fn acceptance_8_steenrod_desk_scale() {
    let start = Instant::now();

    // The real binary: smash-check bp bp --prime 2 --max-degree 6.
    let out = Command::new(env!("CARGO_BIN_EXE_cotor"))
        .args(["smash-check", "bp", "bp", "--prime", "2", "--max-degree", "6"])
        .output()
        .expect("spawn cotor");
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("FAIL"), "expected FAIL:\n{stdout}");
    assert!(
        stdout.contains("witness: zeta1^2"),
        "expected the witness ζ_1² printed:\n{stdout}"
    );

    // smash-check <any> sphere passes.
    for name in [ClassicalName::Bp, ClassicalName::BpN(2), ClassicalName::Ko, ClassicalName::Tmf] {
        let p = Prime::new(2).unwrap();
        let x = classical(name, p, 8).unwrap();
        let sphere = classical(ClassicalName::Sphere, p, 8).unwrap();
        let report = smash_kunneth_verdict(&x, &sphere.comodule).unwrap();
        assert!(report.holds(), "{name:?} ∧ sphere should pass");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_cotor"))
        .args(["smash-check", "ku", "sphere", "--prime", "3", "--max-degree", "8"])
        .output()
        .expect("spawn cotor");
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));

    // Primitives of the A_* truncation at p = 2, degree ≤ 7: span{1}.
    let a = Arc::new(cotor_core::bialgebra::build_dual_steenrod(Prime::new(2).unwrap(), 7).unwrap());
    let prim = primitives(&gamma_comodule(&a));
    assert_eq!(prim.dim(0), 1);
    for d in 1..=7 {
        assert_eq!(prim.dim(d), 0, "degree {d}");
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!(
        "ACCEPTANCE 8 PASS: smash-check bp bp fails with witness zeta1^2 via the \
         CLI, every X ∧ sphere passes (incl. ku at p=3 through the graded path), \
         and A_* primitives through degree 7 are span{{1}}; {elapsed:?}"
    );
}

#[test]
fn acceptance_9_gysin_degeneration() {
    let start = Instant::now();
    // The named instance: Γ = k[x]/x² over F_2, N = Γ.
    let g = kxi(2, 10);
    let k = ground_comodule(&g);
    let gam = gamma_comodule(&g);
    let report = gysin_les(&k, &k, &gam, 5).unwrap();
    assert!(report.exact, "six-term sequence exact for Γ = k[x]/x²");
    assert!(report.euler_zero);

    // Randomized length-2 instances over k[x]/x² families (with random M),
    // plus trivial-N instances over other bialgebras.
    let mut rng = testutil::rng(0xACC9);
    let mut checked = 0usize;
    while checked < 30 {
        let gamma = if checked.is_multiple_of(2) {
            kxi(2, 8)
        } else {
            testutil::random_gamma(&mut rng, 7)
        };
        let l = ground_comodule(&gamma);
        let m = testutil::random_comodule(&mut rng, &gamma);
        let n = if checked.is_multiple_of(2) {
            testutil::random_comodule(&mut rng, &gamma)
        } else {
            testutil::random_trivial(&mut rng, &gamma)
        };
        let pf = primitive_filtration(&n, None).unwrap();
        if !pf.length_at_most_two() {
            continue;
        }
        // Precondition check mirrors the corollary's hypothesis.
        if pf.quotient_tower.len() > 1 {
            assert!(coaction_is_trivial(&pf.quotient_tower[1]).trivial);
        }
        let report = gysin_les(&l, &m, &n, 4).unwrap();
        assert!(report.exact, "exactness failed at instance {checked}");
        assert!(report.euler_zero, "Euler check failed at instance {checked}");
        checked += 1;
    }
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 9 PASS: the degenerate long exact sequence is exact per degree \
         on Γ = k[x]/x² with N = Γ and on {checked} further length-2 instances; \
         {elapsed:?}"
    );
}
