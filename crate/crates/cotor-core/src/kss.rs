//! The Künneth spectral sequence
//! `E_1^{s,t} = Cotor^s_Γ(L,M) ⊗ N^t ⇒ Cotor^s_Γ(L, M⊗N)`.
//!
//! Built by filtering the cobar complex of `(L, M⊗N)` by the primitive
//! filtration of `N`: the basis of `N` is changed to one adapted to
//! `N_0 ⊆ N_1 ⊆ …`, so every filtration level is a coordinate subspace and
//! the pages are plain kernel/image linear algebra over the relative cycles
//!
//! ```text
//! Z_r^{s,t} = { x ∈ F_t C^s : dx ∈ F_{t-r} C^{s+1} }
//! E_r^{s,t} = Z_r^{s,t} / (Z_{r-1}^{s,t-1} + d Z_{r-1}^{s-1,t+r-1})
//! d_r : E_r^{s,t} → E_r^{s+1,t-r}  (induced by d).
//! ```
//!
//! Dimensions come from the closed formulas
//!
//! ```text
//! dim E_r^{s,t}  = A_r(s,t) − A_{r-1}(s,t-1) − A_{r-1}(s-1,t+r-1) + A_r(s-1,t+r-1)
//! rank d_r^{s,t} = A_r(s,t) − A_{r+1}(s,t) − A_{r-1}(s,t-1) + A_r(s,t-1)
//! ```
//!
//! with `A_r(s,t) = dim Z_r^{s,t}`, and every `A_r(s,t)` of a slot `(s,d)`
//! is read off one weight-sorted rank-profile elimination of its
//! differential. Representatives and differential matrices are materialized
//! at each nonzero spot and cross-checked against the formulas, so the page
//! data is computed twice by independent routes.
//!
//! Internal degree is carried as a third index throughout. Invariants
//! enforced on every instance as errors, not tests: the differential
//! preserves the filtration, `dim E_1^{s,t}` matches the independently
//! computed `Cotor^s(L,M) ⊗ N^t`, page turns satisfy
//! `dim E_{r+1} = dim ker d_r − dim im d_r` exactly, materialized cells
//! agree with the formulas, and `d_r ∘ d_r = 0` on materialized blocks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::cobar::{build_cobar, cotor, CobarComplex};
use crate::comodule::{
    quotient_comodule, sub_comodule_from_spans, tensor_comodule, Comodule,
};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::graded::{DegreeWindow, GradedMap, GradedSpace};
use crate::matrix::{Matrix, Subquotient, Subspace};
use crate::primfilt::{primitive_filtration, FiltrationVerdict, PrimitiveFiltration};

/// A materialized spot `E_r^{s,t,d}` with canonical representatives and its
/// outgoing differential block.
pub struct Cell {
    pub quotient: Subquotient,
    /// `d_r` into `(s+1, t-r, d)`; `None` when the target leaves the first
    /// quadrant or carries no chains.
    pub d_out: Option<Matrix>,
}

/// Rank-profile data of one slot `(s, d)`: the weight of every column of
/// `d : C^s_d → C^{s+1}_d` and the pivot weights of its staircase echelon.
struct SlotProfile {
    /// `cols_leq[t]` = number of basis elements of weight ≤ t.
    cols_leq: Vec<usize>,
    /// `(row weight, column weight)` per pivot of the rank-profile
    /// elimination (rows sorted by weight descending, columns ascending).
    pivots: Vec<(usize, usize)>,
}

impl SlotProfile {
    /// Rank of the submatrix on rows of weight > θ and columns of weight ≤ t.
    fn rank(&self, theta: i32, t: i32) -> usize {
        self.pivots
            .iter()
            .filter(|&&(rw, cw)| rw as i32 > theta && cw as i32 <= t)
            .count()
    }

    fn cols(&self, t: i32) -> usize {
        if t < 0 {
            0
        } else {
            let idx = (t as usize).min(self.cols_leq.len().saturating_sub(1));
            self.cols_leq.get(idx).copied().unwrap_or(0)
        }
    }

    /// `A_r(t) = dim Z_r = dim F_t − rank(rows > t−r, cols ≤ t)`.
    fn a(&self, r: usize, t: i32) -> usize {
        if t < 0 {
            return 0;
        }
        self.cols(t) - self.rank(t - r as i32, t)
    }
}

pub struct SpectralSequence {
    p: Prime,
    window: DegreeWindow,
    s_max: usize,
    /// Number of filtration stages; pages settle at `E_{t_max}` (or `E_1`
    /// when there are fewer than two stages).
    t_max: usize,
    certified_infinity: bool,
    collapse_page: Option<usize>,
    complex: CobarComplex,
    /// `N^t` dimensions per internal degree.
    piece_dims: Vec<BTreeMap<i32, usize>>,
    /// Formula dimensions: `dims[r-1][(s,t,d)]`, nonzero entries only.
    page_dims: Vec<BTreeMap<(usize, usize, i32), usize>>,
    /// Formula differential ranks, same indexing.
    page_ranks: Vec<BTreeMap<(usize, usize, i32), usize>>,
    /// Materialized nonzero cells: `(r, s, t, d)`.
    cells: BTreeMap<(usize, usize, usize, i32), Cell>,
}

impl SpectralSequence {
    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn window(&self) -> DegreeWindow {
        self.window
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    pub fn complex(&self) -> &CobarComplex {
        &self.complex
    }

    pub fn piece_dim(&self, t: usize, d: i32) -> usize {
        self.piece_dims
            .get(t)
            .map_or(0, |m| m.get(&d).copied().unwrap_or(0))
    }

    /// Page indices run `1 ..= last_page`.
    pub fn last_page(&self) -> usize {
        self.page_dims.len()
    }

    pub fn cell(&self, r: usize, s: usize, t: usize, d: i32) -> Option<&Cell> {
        self.cells.get(&(r, s, t, d))
    }

    pub fn dim(&self, r: usize, s: usize, t: usize, d: i32) -> usize {
        self.page_dims
            .get(r - 1)
            .and_then(|m| m.get(&(s, t, d)))
            .copied()
            .unwrap_or(0)
    }

    /// Total dimension at `(s, t)` across internal degrees.
    pub fn dim_total(&self, r: usize, s: usize, t: usize) -> usize {
        self.page_dims.get(r - 1).map_or(0, |m| {
            m.iter()
                .filter(|((cs, ct, _), _)| *cs == s && *ct == t)
                .map(|(_, &dim)| dim)
                .sum()
        })
    }

    /// `(s, t, d, dim)` for every nonzero spot of page `r` with `s ≤ s_max`.
    pub fn nonzero_cells(&self, r: usize) -> Vec<(usize, usize, i32, usize)> {
        self.page_dims.get(r - 1).map_or_else(Vec::new, |m| {
            m.iter()
                .filter(|((s, _, _), _)| *s <= self.s_max)
                .map(|(&(s, t, d), &dim)| (s, t, d, dim))
                .collect()
        })
    }

    /// `(s, t, d, rank)` of every nonzero `d_r` with `s ≤ s_max`.
    pub fn differential_ranks(&self, r: usize) -> Vec<(usize, usize, i32, usize)> {
        self.page_ranks.get(r - 1).map_or_else(Vec::new, |m| {
            m.iter()
                .filter(|((s, _, _), _)| *s <= self.s_max)
                .map(|(&(s, t, d), &rank)| (s, t, d, rank))
                .collect()
        })
    }

    /// True once every differential on and after the last computed page is
    /// certifiably zero on the window.
    pub fn certified_infinity(&self) -> bool {
        self.certified_infinity
    }

    /// Least page from which all later differentials vanish.
    pub fn collapse_page(&self) -> Option<usize> {
        self.collapse_page
    }

    /// `Σ_t dim E_∞^{s,t}` per `(s, internal degree)`.
    pub fn einf_dims(&self) -> Result<BTreeMap<(usize, i32), usize>> {
        if !self.certified_infinity {
            return Err(Error::NotCollapsed {
                r_max: self.last_page(),
            });
        }
        let last = self.page_dims.last().expect("at least one page");
        let mut out = BTreeMap::new();
        for (&(s, _, d), &dim) in last {
            if s > self.s_max || dim == 0 {
                continue;
            }
            *out.entry((s, d)).or_insert(0) += dim;
        }
        Ok(out)
    }

    /// Dimensions of the surviving `s = 0` column per `(t, d)`, i.e. the
    /// associated graded of `L□(M⊗N)` inside `(L□M)⊗N`.
    pub fn zero_column_survivors(&self) -> Result<BTreeMap<(usize, i32), usize>> {
        if !self.certified_infinity {
            return Err(Error::NotCollapsed {
                r_max: self.last_page(),
            });
        }
        let last = self.page_dims.last().expect("at least one page");
        let mut out = BTreeMap::new();
        for (&(s, t, d), &dim) in last {
            if s == 0 && dim > 0 {
                out.insert((t, d), dim);
            }
        }
        Ok(out)
    }
}

/// The coefficient comodule `M ⊗ N'` with `N'` rebased so every filtration
/// level of the primitive filtration is a coordinate subspace, plus the
/// weight of each `N'` basis vector.
struct AdaptedCoefficients {
    k: Comodule,
    n_adapted: Comodule,
    n_weights: BTreeMap<i32, Vec<usize>>,
    piece_dims: Vec<BTreeMap<i32, usize>>,
    stage_count: usize,
}

fn adapt_coefficients(
    m: &Comodule,
    n: &Comodule,
    pf: &PrimitiveFiltration,
) -> Result<AdaptedCoefficients> {
    if pf.verdict == FiltrationVerdict::NotExhaustiveOnWindow {
        return Err(Error::FiltrationTooLong {
            length: pf.stage_count(),
            required: usize::MAX,
        });
    }
    let p = n.prime();
    let gamma = n.gamma();
    let window = n.space().window();

    let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    let mut weights: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    let mut change: BTreeMap<i32, Matrix> = BTreeMap::new();
    let mut change_inv: BTreeMap<i32, Matrix> = BTreeMap::new();
    for (&d, vs) in &pf.adapted {
        let dim = n.space().dim(d);
        let mut t_mat = Matrix::zeros(p, dim, vs.len());
        for (j, (v, _)) in vs.iter().enumerate() {
            for (i, &c) in v.iter().enumerate() {
                t_mat.set(i, j, c);
            }
        }
        let inv = t_mat.inverse().ok_or(Error::ShapeMismatch {
            what: "adapted basis is not a basis",
        })?;
        change.insert(d, t_mat);
        change_inv.insert(d, inv);
        basis.insert(d, (0..vs.len()).map(|j| format!("a{d}_{j}")).collect());
        weights.insert(d, vs.iter().map(|(_, w)| *w).collect());
    }
    let space = GradedSpace::new(window, basis)?;
    let target = gamma.space().tensor(&space);
    let mut coaction = GradedMap::zero(p, space.clone(), target, 0);
    for (&d, t_mat) in &change {
        if coaction.block(d).is_none() {
            continue;
        }
        let mut entries: Vec<(usize, usize, u32)> = Vec::new();
        for j in 0..t_mat.cols() {
            let col: Vec<u32> = (0..t_mat.rows()).map(|i| t_mat.get(i, j)).collect();
            let img = n.coaction().apply(d, &col)?;
            let pairs = gamma.space().tensor_pairs(n.space(), d);
            let mut by_gamma: BTreeMap<(i32, usize), Vec<u32>> = BTreeMap::new();
            for (row, &(dg, ig, dm, _)) in pairs.iter().enumerate() {
                if img[row] != 0 {
                    by_gamma
                        .entry((dg, ig))
                        .or_insert_with(|| vec![0u32; n.space().dim(dm)])[pairs[row].3] =
                        img[row];
                }
            }
            for ((dg, ig), comp) in by_gamma {
                let dm = d - dg;
                let inv = change_inv.get(&dm).ok_or(Error::ShapeMismatch {
                    what: "coaction escapes the adapted window",
                })?;
                let converted = inv.apply(&comp);
                for (im, &c) in converted.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let row = gamma.space().pair_index(&space, dg, ig, dm, im);
                    entries.push((row, j, c));
                }
            }
        }
        let block = coaction.block_mut(d).unwrap();
        for (row, col, c) in entries {
            block.add_to(row, col, c);
        }
    }
    let n_adapted = Comodule::new(Arc::clone(gamma), n.side(), space, coaction);

    let stage_count = pf.stage_count();
    let mut piece_dims: Vec<BTreeMap<i32, usize>> = vec![BTreeMap::new(); stage_count];
    for (&d, ws) in &weights {
        for &w in ws {
            if w < stage_count {
                *piece_dims[w].entry(d).or_insert(0) += 1;
            }
        }
    }

    let k = tensor_comodule(m, &n_adapted);
    Ok(AdaptedCoefficients {
        k,
        n_adapted,
        n_weights: weights,
        piece_dims,
        stage_count,
    })
}

/// Weight of every cobar basis element: the filtration weight of the
/// `N'`-part of its coefficient index.
fn elem_weights(
    complex: &CobarComplex,
    m: &Comodule,
    n_adapted: &Comodule,
    n_weights: &BTreeMap<i32, Vec<usize>>,
    s_top: usize,
) -> Vec<BTreeMap<i32, Vec<usize>>> {
    let mut out = Vec::with_capacity(s_top + 1);
    for s in 0..=s_top {
        let mut by_d: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for d in complex.window().iter() {
            let Some(basis) = complex.basis(s, d) else { continue };
            if basis.is_empty() {
                continue;
            }
            let mut ws = Vec::with_capacity(basis.len());
            let mut pair_cache: BTreeMap<i32, Vec<(i32, usize, i32, usize)>> = BTreeMap::new();
            for e in &basis.elems {
                let (dk, ik) = e.m;
                let pairs = pair_cache
                    .entry(dk)
                    .or_insert_with(|| m.space().tensor_pairs(n_adapted.space(), dk));
                let (_, _, dn, jn) = pairs[ik];
                ws.push(n_weights[&dn][jn]);
            }
            by_d.insert(d, ws);
        }
        out.push(by_d);
    }
    out
}

/// Rank-profile elimination of one slot: rows sorted by weight descending,
/// columns ascending, pivots chosen row by row at the leading column. The
/// pivot set determines the rank of every `rows (weight > θ) × cols
/// (weight ≤ t)` staircase submatrix.
fn slot_profile(
    p: Prime,
    diff: Option<&Matrix>,
    col_weights: &[usize],
    row_weights: Option<&Vec<usize>>,
    t_max: usize,
) -> SlotProfile {
    let mut cols_leq = vec![0usize; t_max.max(1)];
    for &w in col_weights {
        for (t, slot) in cols_leq.iter_mut().enumerate() {
            if w <= t {
                *slot += 1;
            }
        }
    }
    let Some(diff) = diff else {
        return SlotProfile {
            cols_leq,
            pivots: Vec::new(),
        };
    };
    if diff.rows() == 0 || diff.cols() == 0 {
        return SlotProfile {
            cols_leq,
            pivots: Vec::new(),
        };
    }
    let default_rows;
    let row_weights = match row_weights {
        Some(ws) => ws,
        None => {
            default_rows = vec![0usize; diff.rows()];
            &default_rows
        }
    };
    // Stable sorts keep ties in basis order, so profiles are reproducible.
    let mut col_order: Vec<usize> = (0..diff.cols()).collect();
    col_order.sort_by_key(|&j| (col_weights[j], j));
    let mut row_order: Vec<usize> = (0..diff.rows()).collect();
    row_order.sort_by_key(|&i| (usize::MAX - row_weights[i], i));

    // Row-insertion echelon over the permuted matrix.
    let mut basis_rows: Vec<(usize, Vec<u32>)> = Vec::new(); // (leading col position, row)
    let mut pivots = Vec::new();
    let ncols = diff.cols();
    for &orig_row in &row_order {
        let mut row: Vec<u32> = col_order
            .iter()
            .map(|&j| diff.get(orig_row, j))
            .collect();
        for (lead, basis) in &basis_rows {
            let c = row[*lead];
            if c == 0 {
                continue;
            }
            for k in *lead..ncols {
                row[k] = p.sub(row[k], p.mul(c, basis[k]));
            }
        }
        if let Some(lead) = row.iter().position(|&c| c != 0) {
            let inv = p.inv(row[lead]);
            if inv != 1 {
                for c in row.iter_mut() {
                    *c = p.mul(*c, inv);
                }
            }
            pivots.push((row_weights[orig_row], col_weights[col_order[lead]]));
            basis_rows.push((lead, row));
            basis_rows.sort_by_key(|&(l, _)| l);
        }
    }
    SlotProfile { cols_leq, pivots }
}

/// `Z_r^{s,t,d}` as a subspace of `C^s_d`, for cell materialization.
fn z_space(
    complex: &CobarComplex,
    weights: &[BTreeMap<i32, Vec<usize>>],
    s: usize,
    t: i32,
    d: i32,
    r: usize,
) -> Subspace {
    let p = complex.prime();
    let n = complex.dim(s, d);
    if n == 0 || t < 0 {
        return Subspace::zero(p, n);
    }
    let ws = &weights[s][&d];
    let cols: Vec<usize> = (0..n).filter(|&i| ws[i] as i32 <= t).collect();
    if cols.is_empty() {
        return Subspace::zero(p, n);
    }
    let Some(diff) = complex.diff(s, d) else {
        let vectors = cols.iter().map(|&i| crate::matrix::unit(n, i)).collect();
        return Subspace::new(p, n, vectors);
    };
    let target_ws = weights.get(s + 1).and_then(|m| m.get(&d));
    let rows: Vec<usize> = match target_ws {
        Some(tw) => (0..diff.rows())
            .filter(|&i| tw[i] as i32 > t - r as i32)
            .collect(),
        None => (0..diff.rows()).collect(),
    };
    let sub = diff.select_rows(&rows).select_cols(&cols);
    let kernel = sub.kernel_basis();
    let vectors: Vec<Vec<u32>> = kernel
        .iter()
        .map(|k| {
            let mut v = vec![0u32; n];
            for (j, &c) in k.iter().enumerate() {
                v[cols[j]] = c;
            }
            v
        })
        .collect();
    Subspace::new(p, n, vectors)
}

/// Runs the spectral sequence. `r_max = None` computes through the page
/// where no later differential can be nonzero on the window; a smaller
/// explicit `r_max` leaves the sequence uncertified at infinity.
pub fn kunneth_ss(
    l: &Comodule,
    m: &Comodule,
    n: &Comodule,
    r_max: Option<usize>,
    s_max: usize,
) -> Result<SpectralSequence> {
    let p = l.prime();
    let pf = primitive_filtration(n, None)?;
    let coeffs = adapt_coefficients(m, n, &pf)?;
    // One extra cohomological level so every exposed spot has a certified
    // differential target.
    let s_top = s_max + 1;
    let complex = build_cobar(l, &coeffs.k, s_top)?;
    let weights = elem_weights(&complex, m, &coeffs.n_adapted, &coeffs.n_weights, s_top + 1);

    // The differential must preserve the filtration.
    for s in 0..=s_top {
        for d in complex.window().iter() {
            let Some(diff) = complex.diff(s, d) else { continue };
            let (Some(src), Some(tgt)) = (weights[s].get(&d), weights[s + 1].get(&d)) else {
                continue;
            };
            for col in 0..diff.cols() {
                for row in 0..diff.rows() {
                    if diff.get(row, col) != 0 && tgt[row] > src[col] {
                        return Err(Error::ShapeMismatch {
                            what: "differential raises filtration weight",
                        });
                    }
                }
            }
        }
    }

    let t_max = coeffs.stage_count.max(1);
    let r_requested = r_max.unwrap_or(t_max);
    let r_last = r_requested.max(1).min(t_max);
    let certified_infinity = r_last >= t_max;

    // One rank-profile elimination per slot.
    let mut profiles: BTreeMap<(usize, i32), SlotProfile> = BTreeMap::new();
    for s in 0..=s_top {
        for d in complex.window().iter() {
            if complex.dim(s, d) == 0 {
                continue;
            }
            let profile = slot_profile(
                p,
                complex.diff(s, d),
                &weights[s][&d],
                weights.get(s + 1).and_then(|m| m.get(&d)),
                t_max,
            );
            profiles.insert((s, d), profile);
        }
    }
    let a_num = |r: usize, s: i32, t: i32, d: i32| -> usize {
        if s < 0 || t < 0 {
            return 0;
        }
        profiles
            .get(&(s as usize, d))
            .map_or(0, |prof| prof.a(r, t))
    };

    // Formula dims and ranks per page.
    let mut page_dims: Vec<BTreeMap<(usize, usize, i32), usize>> = Vec::with_capacity(r_last);
    let mut page_ranks: Vec<BTreeMap<(usize, usize, i32), usize>> = Vec::with_capacity(r_last);
    for r in 1..=r_last {
        let mut dims = BTreeMap::new();
        let mut ranks = BTreeMap::new();
        for s in 0..=s_top {
            for t in 0..t_max {
                for d in complex.window().iter() {
                    let (si, ti, ri) = (s as i32, t as i32, r as i32);
                    let dim = a_num(r, si, ti, d) + a_num(r, si - 1, ti + ri - 1, d);
                    let neg = a_num(r - 1, si, ti - 1, d) + a_num(r - 1, si - 1, ti + ri - 1, d);
                    debug_assert!(dim >= neg);
                    let dim = dim - neg;
                    if dim > 0 {
                        dims.insert((s, t, d), dim);
                    }
                    if t >= r {
                        let rank = a_num(r, si, ti, d) + a_num(r, si, ti - 1, d)
                            - a_num(r + 1, si, ti, d)
                            - a_num(r - 1, si, ti - 1, d);
                        if rank > 0 {
                            ranks.insert((s, t, d), rank);
                        }
                    }
                }
            }
        }
        page_dims.push(dims);
        page_ranks.push(ranks);
    }

    // Page-turn invariant, from the two independent formula families.
    for r in 1..r_last {
        for (&(s, t, d), &dim) in &page_dims[r - 1] {
            let out_rank = page_ranks[r - 1].get(&(s, t, d)).copied().unwrap_or(0);
            let in_rank = if s > 0 {
                page_ranks[r - 1]
                    .get(&(s - 1, t + r, d))
                    .copied()
                    .unwrap_or(0)
            } else {
                0
            };
            let next = page_dims[r].get(&(s, t, d)).copied().unwrap_or(0);
            if next != dim - out_rank - in_rank {
                return Err(Error::ShapeMismatch {
                    what: "page-turn dimension mismatch",
                });
            }
        }
        // Spots absent on page r must stay absent on page r+1.
        for (&key, &next) in &page_dims[r] {
            if next > 0 && !page_dims[r - 1].contains_key(&key) {
                return Err(Error::ShapeMismatch {
                    what: "page gained a spot",
                });
            }
        }
    }

    // Materialize every nonzero spot: canonical representatives plus d_r
    // blocks, cross-checked against the formulas.
    let mut cells: BTreeMap<(usize, usize, usize, i32), Cell> = BTreeMap::new();
    for r in 1..=r_last {
        let keys: Vec<(usize, usize, i32)> = page_dims[r - 1].keys().copied().collect();
        for (s, t, d) in keys {
            let z = z_space(&complex, &weights, s, t as i32, d, r);
            let w1 = z_space(&complex, &weights, s, t as i32 - 1, d, r - 1);
            let w2 = if s == 0 {
                Subspace::zero(p, complex.dim(s, d))
            } else {
                let zprev = z_space(&complex, &weights, s - 1, t as i32 + r as i32 - 1, d, r - 1);
                let images: Vec<Vec<u32>> = zprev
                    .basis()
                    .iter()
                    .map(|v| complex.apply_diff(s - 1, d, v))
                    .collect();
                Subspace::new(p, complex.dim(s, d), images)
            };
            let quotient = Subquotient::new(z, w1.sum(&w2));
            if quotient.dim() != page_dims[r - 1][&(s, t, d)] {
                return Err(Error::ShapeMismatch {
                    what: "materialized cell disagrees with rank profile",
                });
            }
            cells.insert((r, s, t, d), Cell { quotient, d_out: None });
        }
        // Differential blocks between materialized spots.
        let keys: Vec<(usize, usize, i32)> = page_dims[r - 1].keys().copied().collect();
        for (s, t, d) in keys {
            if s + 1 > s_top || t < r {
                continue;
            }
            let target_key = (r, s + 1, t - r, d);
            if !cells.contains_key(&target_key) {
                // Formula rank must agree with the zero target.
                if page_ranks[r - 1].get(&(s, t, d)).copied().unwrap_or(0) != 0 {
                    return Err(Error::ShapeMismatch {
                        what: "nonzero d_r into an empty spot",
                    });
                }
                continue;
            }
            let reps: Vec<Vec<u32>> = cells[&(r, s, t, d)].quotient.reps().to_vec();
            let target = &cells[&target_key].quotient;
            let mut mat = Matrix::zeros(p, target.dim(), reps.len());
            for (col, x) in reps.iter().enumerate() {
                let y = complex.apply_diff(s, d, x);
                let class = target.class_of(&y).map_err(|_| Error::ShapeMismatch {
                    what: "d_r image is not a relative cycle",
                })?;
                for (row, &c) in class.iter().enumerate() {
                    mat.set(row, col, c);
                }
            }
            if mat.rank() != page_ranks[r - 1].get(&(s, t, d)).copied().unwrap_or(0) {
                return Err(Error::ShapeMismatch {
                    what: "materialized d_r rank disagrees with rank profile",
                });
            }
            cells.get_mut(&(r, s, t, d)).unwrap().d_out = Some(mat);
        }
        // d_r ∘ d_r = 0 on materialized blocks.
        for (&(cr, s, t, d), cell) in &cells {
            if cr != r {
                continue;
            }
            let Some(out) = &cell.d_out else { continue };
            if t < 2 * r {
                continue;
            }
            if let Some(next) = cells
                .get(&(r, s + 1, t - r, d))
                .and_then(|c| c.d_out.as_ref())
            {
                if !next.matmul(out).is_zero() {
                    return Err(Error::ShapeMismatch {
                        what: "d_r ∘ d_r ≠ 0",
                    });
                }
            }
        }
    }

    // E_1 identification against Cotor^s(L,M) ⊗ N^t, independently computed.
    let cotor_lm = cotor(l, m, s_max)?;
    let check_cap = complex
        .window()
        .max
        .min(cotor_lm.window.max + n.space().window().min);
    for s in 0..=s_max {
        for t in 0..t_max {
            for d in complex.window().min..=check_cap {
                let lhs = page_dims[0].get(&(s, t, d)).copied().unwrap_or(0);
                let rhs: usize = cotor_lm
                    .dims_of_s(s)
                    .iter()
                    .map(|&(dprime, dim)| {
                        dim * coeffs
                            .piece_dims
                            .get(t)
                            .map_or(0, |m| m.get(&(d - dprime)).copied().unwrap_or(0))
                    })
                    .sum();
                if lhs != rhs {
                    return Err(Error::ShapeMismatch {
                        what: "E_1 does not match Cotor(L,M) ⊗ N^t",
                    });
                }
            }
        }
    }

    // Collapse page: least r with all differentials from r on zero.
    let collapse_page = certified_infinity.then(|| {
        let mut collapse = 1;
        for (idx, ranks) in page_ranks.iter().enumerate() {
            if ranks.values().any(|&rk| rk > 0) {
                collapse = idx + 2;
            }
        }
        collapse
    });

    Ok(SpectralSequence {
        p,
        window: complex.window(),
        s_max,
        t_max,
        certified_infinity,
        collapse_page,
        complex,
        piece_dims: coeffs.piece_dims,
        page_dims,
        page_ranks,
        cells,
    })
}

/// Exactness report for the degenerate length-2 case: the six-term long
/// exact sequence
/// `… → Cotor^s(L,M)⊗N⁰ → Cotor^s(L,M⊗N) → Cotor^s(L,M)⊗N¹ → Cotor^{s+1}(L,M)⊗N⁰ → …`
/// assembled from the short exact sequence of cobar complexes for
/// `N_0 ↪ N ↠ N/N_0`.
pub struct GysinReport {
    pub s_max: usize,
    pub window: DegreeWindow,
    /// Per `(s, d)`: dims of `Cotor^s(L, M⊗N_0)`, `Cotor^s(L, M⊗N)`,
    /// `Cotor^s(L, M⊗N/N_0)`.
    pub dims: BTreeMap<(usize, i32), (usize, usize, usize)>,
    /// Exactness held at every checkable node.
    pub exact: bool,
    /// Euler characteristic of each fully-on-window segment vanished.
    pub euler_zero: bool,
}

pub fn gysin_les(l: &Comodule, m: &Comodule, n: &Comodule, s_max: usize) -> Result<GysinReport> {
    let p = l.prime();
    let pf = primitive_filtration(n, None)?;
    if !pf.length_at_most_two() {
        return Err(Error::FiltrationTooLong {
            length: pf.stage_count(),
            required: 2,
        });
    }
    let coeffs = adapt_coefficients(m, n, &pf)?;
    let n_adapted = &coeffs.n_adapted;

    // N_0 = weight-0 coordinates; N'' = the quotient by them.
    let mut spans: BTreeMap<i32, Subspace> = BTreeMap::new();
    for (&d, ws) in &coeffs.n_weights {
        let dim = n_adapted.space().dim(d);
        let vectors: Vec<Vec<u32>> = ws
            .iter()
            .enumerate()
            .filter(|(_, &w)| w == 0)
            .map(|(i, _)| crate::matrix::unit(dim, i))
            .collect();
        if !vectors.is_empty() {
            spans.insert(d, Subspace::new(p, dim, vectors));
        }
    }
    let sub = sub_comodule_from_spans(n_adapted, spans)?;
    let (quot, _) = quotient_comodule(n_adapted, &sub);
    debug_assert!(crate::primfilt::coaction_is_trivial(&quot).trivial);

    let k_mid = tensor_comodule(m, n_adapted);
    let k_sub = tensor_comodule(m, &sub.comodule);
    let k_quot = tensor_comodule(m, &quot);
    let c_sub = build_cobar(l, &k_sub, s_max + 1)?;
    let c_mid = build_cobar(l, &k_mid, s_max + 1)?;
    let c_quot = build_cobar(l, &k_quot, s_max + 1)?;

    // Coordinate translation on coefficient indices. Weight-0 vectors come
    // first in the adapted order, so the sub keeps indices and the quotient
    // shifts by the weight-0 count.
    let w0 = |d: i32| -> usize {
        coeffs
            .n_weights
            .get(&d)
            .map_or(0, |ws| ws.iter().filter(|&&w| w == 0).count())
    };
    let sub_to_mid = |dk: i32, ik: usize| -> usize {
        let pairs = m.space().tensor_pairs(sub.comodule.space(), dk);
        let (dm, im, dn, jn) = pairs[ik];
        m.space().pair_index(n_adapted.space(), dm, im, dn, jn)
    };
    let mid_to_quot = |dk: i32, ik: usize| -> Option<usize> {
        let pairs = m.space().tensor_pairs(n_adapted.space(), dk);
        let (dm, im, dn, jn) = pairs[ik];
        let w0d = w0(dn);
        (jn >= w0d).then(|| {
            m.space()
                .pair_index(quot.space(), dm, im, dn, jn - w0d)
        })
    };
    let quot_to_mid = |dk: i32, ik: usize| -> usize {
        let pairs = m.space().tensor_pairs(quot.space(), dk);
        let (dm, im, dn, jn) = pairs[ik];
        m.space()
            .pair_index(n_adapted.space(), dm, im, dn, jn + w0(dn))
    };

    let mut dims = BTreeMap::new();
    let mut exact = true;
    let mut euler_zero = true;

    for d in c_mid.window().iter() {
        // Cohomologies for s = 0..=s_max+1 (one extra for the final map).
        let h_sub: Vec<Subquotient> = (0..=s_max + 1).map(|s| c_sub.cohomology(s, d)).collect();
        let h_mid: Vec<Subquotient> = (0..=s_max + 1).map(|s| c_mid.cohomology(s, d)).collect();
        let h_quot: Vec<Subquotient> = (0..=s_max + 1).map(|s| c_quot.cohomology(s, d)).collect();
        for s in 0..=s_max {
            if h_sub[s].dim() + h_mid[s].dim() + h_quot[s].dim() > 0 {
                dims.insert((s, d), (h_sub[s].dim(), h_mid[s].dim(), h_quot[s].dim()));
            }
        }

        // α_s: include; β_s: project; ∂_s: snake.
        let alpha = |s: usize| -> Matrix {
            let mut mat = Matrix::zeros(p, h_mid[s].dim(), h_sub[s].dim());
            for (col, rep) in h_sub[s].reps().iter().enumerate() {
                let basis = c_sub.basis(s, d).expect("nonempty cohomology");
                let target = c_mid.basis(s, d).expect("mid basis");
                let mut v = vec![0u32; c_mid.dim(s, d)];
                for (i, &c) in rep.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let e = &basis.elems[i];
                    let out = crate::cobar::CobarElem {
                        l: e.l,
                        bars: e.bars.clone(),
                        m: (e.m.0, sub_to_mid(e.m.0, e.m.1)),
                    };
                    v[target.index_of(&out)] = c;
                }
                let class = h_mid[s].class_of(&v).expect("image of cycle is cycle");
                for (row, &c) in class.iter().enumerate() {
                    mat.set(row, col, c);
                }
            }
            mat
        };
        let beta = |s: usize| -> Matrix {
            let mut mat = Matrix::zeros(p, h_quot[s].dim(), h_mid[s].dim());
            for (col, rep) in h_mid[s].reps().iter().enumerate() {
                let basis = c_mid.basis(s, d).expect("nonempty cohomology");
                let mut v = vec![0u32; c_quot.dim(s, d)];
                if let Some(target) = c_quot.basis(s, d) {
                    for (i, &c) in rep.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        let e = &basis.elems[i];
                        if let Some(ik) = mid_to_quot(e.m.0, e.m.1) {
                            let out = crate::cobar::CobarElem {
                                l: e.l,
                                bars: e.bars.clone(),
                                m: (e.m.0, ik),
                            };
                            v[target.index_of(&out)] = c;
                        }
                    }
                }
                let class = h_quot[s].class_of(&v).expect("projection of cycle");
                for (row, &c) in class.iter().enumerate() {
                    mat.set(row, col, c);
                }
            }
            mat
        };
        let connecting = |s: usize| -> Matrix {
            let mut mat = Matrix::zeros(p, h_sub[s + 1].dim(), h_quot[s].dim());
            for (col, rep) in h_quot[s].reps().iter().enumerate() {
                let basis = c_quot.basis(s, d).expect("nonempty cohomology");
                // Coordinate section into the middle complex.
                let mut lift = vec![0u32; c_mid.dim(s, d)];
                let mid_basis = c_mid.basis(s, d).expect("mid basis");
                for (i, &c) in rep.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let e = &basis.elems[i];
                    let out = crate::cobar::CobarElem {
                        l: e.l,
                        bars: e.bars.clone(),
                        m: (e.m.0, quot_to_mid(e.m.0, e.m.1)),
                    };
                    lift[mid_basis.index_of(&out)] = c;
                }
                let dy = c_mid.apply_diff(s, d, &lift);
                // dy is supported on the sub-complex; pull back.
                let mut x = vec![0u32; c_sub.dim(s + 1, d)];
                if let (Some(mid_b), Some(sub_b)) =
                    (c_mid.basis(s + 1, d), c_sub.basis(s + 1, d))
                {
                    for (i, &c) in dy.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        let e = &mid_b.elems[i];
                        // Invert sub_to_mid: the element must have a weight-0
                        // coefficient part.
                        let pairs = m.space().tensor_pairs(n_adapted.space(), e.m.0);
                        let (dm, im, dn, jn) = pairs[e.m.1];
                        assert!(jn < w0(dn), "snake image escaped the sub-complex");
                        let ik = m
                            .space()
                            .pair_index(sub.comodule.space(), dm, im, dn, jn);
                        let out = crate::cobar::CobarElem {
                            l: e.l,
                            bars: e.bars.clone(),
                            m: (e.m.0, ik),
                        };
                        x[sub_b.index_of(&out)] = c;
                    }
                }
                let class = h_sub[s + 1].class_of(&x).expect("snake class");
                for (row, &c) in class.iter().enumerate() {
                    mat.set(row, col, c);
                }
            }
            mat
        };

        // Exactness: at H^s(sub) for s ≥ 1: im ∂_{s-1} = ker α_s;
        // at H^s(mid): im α_s = ker β_s; at H^s(quot): im β_s = ker ∂_s.
        let mut alphas = Vec::new();
        let mut betas = Vec::new();
        let mut dels = Vec::new();
        for s in 0..=s_max {
            alphas.push(alpha(s));
            betas.push(beta(s));
            dels.push(connecting(s));
        }
        for s in 0..=s_max {
            let a = &alphas[s];
            let b = &betas[s];
            let del = &dels[s];
            // ker α_0 = 0 starts the sequence.
            if s == 0 && a.rank() != h_sub[0].dim() {
                exact = false;
            }
            if s > 0 {
                let prev_del = &dels[s - 1];
                if !a.matmul(prev_del).is_zero()
                    || prev_del.rank() + a.rank() != h_sub[s].dim()
                {
                    exact = false;
                }
            }
            if !b.matmul(a).is_zero() || a.rank() + b.rank() != h_mid[s].dim() {
                exact = false;
            }
            if !del.matmul(b).is_zero() || b.rank() + del.rank() != h_quot[s].dim() {
                exact = false;
            }
        }
        // Euler characteristic of the alternating segment vanishes when the
        // segment closes up on the window (it always does: the complexes
        // vanish for s > d).
        if (s_max as i32) >= d {
            let mut alt = 0i64;
            for s in 0..=s_max {
                let sgn = if s % 2 == 0 { 1 } else { -1 };
                alt += sgn
                    * ((h_sub[s].dim() as i64) - (h_mid[s].dim() as i64)
                        + (h_quot[s].dim() as i64));
            }
            if alt != 0 {
                euler_zero = false;
            }
        }
    }

    Ok(GysinReport {
        s_max,
        window: c_mid.window(),
        dims,
        exact,
        euler_zero,
    })
}
