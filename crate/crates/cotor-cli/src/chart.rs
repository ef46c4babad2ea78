//! Chart rendering for spectral sequence pages: fixed-width text grids and
//! deterministic SVG, plus the TSV tables.
//!
//! Axes follow the usual convention for this spectral sequence: `s` runs
//! horizontally, `t` vertically. Differential arrows are drawn from `(s, t)`
//! to `(s+1, t-r)` and colored per page — red for `d_1`, orange for `d_2`,
//! blue for `d_3`, cycling afterwards. Output depends only on the input, so
//! files are byte-identical across runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use cotor_core::kss::SpectralSequence;

const COLORS: [&str; 3] = ["red", "orange", "blue"];

pub fn page_color(r: usize) -> &'static str {
    COLORS[(r - 1) % COLORS.len()]
}

/// Aggregated page data: total dimension per `(s, t)` cell.
fn cell_dims(ss: &SpectralSequence, r: usize) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for (s, t, _, dim) in ss.nonzero_cells(r) {
        *out.entry((s, t)).or_insert(0) += dim;
    }
    out
}

/// Aggregated arrows: total rank per `(s, t) → (s+1, t-r)`. Arrows whose
/// target falls outside the plotted `s` range are dropped.
fn arrows(ss: &SpectralSequence, r: usize) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for (s, t, _, rank) in ss.differential_ranks(r) {
        if s < ss.s_max() {
            *out.entry((s, t)).or_insert(0) += rank;
        }
    }
    out
}

/// Fixed-width text grid of one page, rows `t` descending.
pub fn render_text(ss: &SpectralSequence, r: usize) -> String {
    let dims = cell_dims(ss, r);
    let arrs = arrows(ss, r);
    let mut out = String::new();
    let _ = writeln!(out, "E_{r} page (s horizontal, t vertical):");
    let s_max = ss.s_max();
    let t_max = ss.t_max();
    for t in (0..t_max).rev() {
        let _ = write!(out, "t={t:<3}|");
        for s in 0..=s_max {
            let d = dims.get(&(s, t)).copied().unwrap_or(0);
            if d == 0 {
                let _ = write!(out, "   .");
            } else {
                let _ = write!(out, "{d:>4}");
            }
        }
        let _ = writeln!(out);
    }
    let _ = write!(out, "     +");
    for _ in 0..=s_max {
        let _ = write!(out, "----");
    }
    let _ = writeln!(out);
    let _ = write!(out, "      ");
    for s in 0..=s_max {
        let _ = write!(out, "{s:>4}");
    }
    let _ = writeln!(out);
    if arrs.is_empty() {
        let _ = writeln!(out, "no d_{r} differentials");
    } else {
        for (&(s, t), &rank) in &arrs {
            let _ = writeln!(
                out,
                "d_{r}: ({s},{t}) -> ({},{}) rank {rank}",
                s + 1,
                t as i32 - r as i32
            );
        }
    }
    out
}

/// SVG rendering of one page. Integer coordinates only.
pub fn render_svg(ss: &SpectralSequence, r: usize) -> String {
    let dims = cell_dims(ss, r);
    let arrs = arrows(ss, r);
    let s_max = ss.s_max();
    let t_max = ss.t_max();
    let cell = 48i64;
    let margin = 56i64;
    let width = margin + cell * (s_max as i64 + 1) + 16;
    let height = margin + cell * (t_max as i64) + 16;
    // Cell (s, t) center in SVG coordinates (y axis flipped).
    let cx = |s: usize| margin + cell * s as i64 + cell / 2;
    let cy = |t: usize| height - (margin + cell * t as i64 + cell / 2);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(
        out,
        "  <text x=\"8\" y=\"16\" font-family=\"monospace\" font-size=\"14\">E_{r}</text>"
    );
    // Axes.
    let x0 = margin - 8;
    let y0 = height - margin + 8;
    let _ = writeln!(
        out,
        "  <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{}\" y2=\"{y0}\" stroke=\"black\"/>",
        width - 8
    );
    let _ = writeln!(
        out,
        "  <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"8\" stroke=\"black\"/>"
    );
    for s in 0..=s_max {
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" \
             text-anchor=\"middle\">s={s}</text>",
            cx(s),
            height - margin / 2
        );
    }
    for t in 0..t_max {
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" \
             text-anchor=\"middle\">t={t}</text>",
            margin / 2,
            cy(t) + 4
        );
    }
    // Cells: a box with the total dimension, only where nonzero.
    for (&(s, t), &dim) in &dims {
        let x = cx(s) - 16;
        let y = cy(t) - 16;
        let _ = writeln!(
            out,
            "  <rect x=\"{x}\" y=\"{y}\" width=\"32\" height=\"32\" fill=\"none\" \
             stroke=\"gray\"/>"
        );
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"13\" \
             text-anchor=\"middle\">{dim}</text>",
            cx(s),
            cy(t) + 5
        );
    }
    // Arrows only between nonzero cells; the shape is forced by the page:
    // one column right, r rows down.
    let color = page_color(r);
    for (&(s, t), &rank) in &arrs {
        let target = (s + 1, t - r);
        debug_assert!(dims.contains_key(&(s, t)) && dims.contains_key(&target));
        let (x1, y1) = (cx(s) + 16, cy(t) + 12);
        let (x2, y2) = (cx(target.0) - 16, cy(target.1) - 12);
        let _ = writeln!(
            out,
            "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>"
        );
        let _ = writeln!(
            out,
            "  <circle cx=\"{x2}\" cy=\"{y2}\" r=\"3\" fill=\"{color}\"/>"
        );
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"10\" \
             fill=\"{color}\">{rank}</text>",
            (x1 + x2) / 2,
            (y1 + y2) / 2 - 4
        );
    }
    let _ = writeln!(out, "</svg>");
    out
}

/// TSV page table: `page s t degree dim`, one row per nonzero spot.
pub fn pages_tsv(ss: &SpectralSequence) -> String {
    let mut out = String::from("page\ts\tt\tdegree\tdim\n");
    for r in 1..=ss.last_page() {
        for (s, t, d, dim) in ss.nonzero_cells(r) {
            let _ = writeln!(out, "{r}\t{s}\t{t}\t{d}\t{dim}");
        }
    }
    out
}

/// TSV differential table: `r s t degree rank`, one row per nonzero block.
pub fn differentials_tsv(ss: &SpectralSequence) -> String {
    let mut out = String::from("r\ts\tt\tdegree\trank\n");
    for r in 1..=ss.last_page() {
        for (s, t, d, rank) in ss.differential_ranks(r) {
            let _ = writeln!(out, "{r}\t{s}\t{t}\t{d}\t{rank}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cotor_core::bialgebra::build_truncated_polynomial;
    use cotor_core::comodule::{gamma_comodule, ground_comodule};
    use cotor_core::field::Prime;
    use cotor_core::kss::kunneth_ss;
    use std::sync::Arc;

    fn golden_ss() -> SpectralSequence {
        let p = Prime::new(2).unwrap();
        let g = Arc::new(build_truncated_polynomial(p, 1, 2, 6).unwrap());
        let k = ground_comodule(&g);
        kunneth_ss(&k, &k, &gamma_comodule(&g), None, 4).unwrap()
    }

    #[test]
    fn svg_is_deterministic_and_well_formed() {
        let ss = golden_ss();
        let a = render_svg(&ss, 1);
        let b = render_svg(&ss, 1);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert!(a.contains("stroke=\"red\""));
        // Page 2 has no differentials: no arrows drawn.
        let e2 = render_svg(&ss, 2);
        assert!(!e2.contains("stroke=\"orange\""));
    }

    #[test]
    fn arrows_match_nonzero_blocks() {
        let ss = golden_ss();
        let tsv = differentials_tsv(&ss);
        // d_1 rank rows exist, all with r=1.
        let rows: Vec<&str> = tsv.lines().skip(1).collect();
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.starts_with("1\t")));
        let text = render_text(&ss, 1);
        assert!(text.contains("d_1:"));
    }

    #[test]
    fn empty_page_renders_dots() {
        let ss = golden_ss();
        // E_2 of the k[x]/x² chart has only (0,0).
        let text = render_text(&ss, 2);
        assert!(text.contains("no d_2 differentials"));
        assert!(text.contains("   1"));
    }

    #[test]
    fn color_cycle() {
        assert_eq!(page_color(1), "red");
        assert_eq!(page_color(2), "orange");
        assert_eq!(page_color(3), "blue");
        assert_eq!(page_color(4), "red");
    }
}
