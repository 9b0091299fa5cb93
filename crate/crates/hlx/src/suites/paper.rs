//! The two-point example: `W(1,a) ⊗ W(1,b)` against the lattice through
//! the tensor of top vectors, symbolically in `a, b` and at sample values.

use hlx_core::exactnum::{Dvr, MPoly};
use hlx_core::lattice::paper_example;
use hlx_core::linalg::Matrix;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericRow {
    pub p: u64,
    pub a: String,
    pub b: String,
    pub residues_distinct: bool,
    pub lattices_equal: bool,
    pub divisor_valuations: Vec<i64>,
    pub total_valuation: i64,
    /// `4 val(a − b)`.
    pub expected_total: i64,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperReport {
    pub config: RunConfig,
    pub xs_relation: bool,
    pub xs_range: (i64, i64),
    pub x1x0_relation: bool,
    pub product_relation: bool,
    pub matrix_plus: Vec<Vec<String>>,
    pub matrix_minus: Vec<Vec<String>>,
    pub det_plus: String,
    pub det_minus: String,
    pub expected_det: String,
    pub matrices_match: bool,
    pub top_relation: bool,
    pub numeric: Vec<NumericRow>,
    pub pass: bool,
}

fn show(x: &MPoly) -> String {
    x.render_with(&|v| if v == 0 { "a".into() } else { "b".into() })
}

fn show_matrix(m: &Matrix<MPoly>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(show).collect()).collect()
}

impl PaperReport {
    pub fn summary(&self) -> String {
        let yes = |b: bool| if b { "ok" } else { "FAIL" };
        let mut s = vec![
            format!("x⁻_s v₀ relation for s in {:?}: {}", self.xs_range, yes(self.xs_relation)),
            format!("x⁻₁x⁻₀v₀ = 2a (x⁻₀)^(2) v₀: {}", yes(self.x1x0_relation)),
            format!("products of two lowering operators: {}", yes(self.product_relation)),
            format!("matrix (weight 0): {:?}", self.matrix_plus),
            format!("matrix (weight −2): {:?}", self.matrix_minus),
            format!("determinants {} and {}, expected {}", self.det_plus, self.det_minus, self.expected_det),
            format!("(x⁻₀)^(3)(v₀⊗w₀) = v₂⊗w₁: {}", yes(self.top_relation)),
        ];
        for n in &self.numeric {
            s.push(format!(
                "p={} a={} b={}: L {} L' (valuations {:?}, total {}, expected {}) {}",
                n.p,
                n.a,
                n.b,
                if n.lattices_equal { "=" } else { "⊊" },
                n.divisor_valuations,
                n.total_valuation,
                n.expected_total,
                yes(n.consistent)
            ));
        }
        s.push(format!("paper-example: {}", if self.pass { "pass" } else { "FAIL" }));
        s.join("\n")
    }
}

pub fn paper_report(numeric: &[(u64, i64, i64)], cfg: &RunConfig) -> Result<PaperReport> {
    let ex = paper_example(numeric)?;
    let rows = ex
        .numeric
        .iter()
        .map(|n| {
            let v = Dvr::new(n.p).map(|d| d.val(&(&n.a - &n.b)).finite().unwrap_or(0))?;
            Ok(NumericRow {
                p: n.p,
                a: n.a.to_string(),
                b: n.b.to_string(),
                residues_distinct: n.residues_distinct,
                lattices_equal: n.divisors.equal(),
                divisor_valuations: n.divisors.valuations.clone(),
                total_valuation: n.divisors.total(),
                expected_total: 4 * v,
                consistent: n.consistent(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PaperReport {
        config: cfg.clone(),
        xs_relation: ex.xs_relation,
        xs_range: ex.xs_range,
        x1x0_relation: ex.x1x0_relation,
        product_relation: ex.product_relation,
        matrix_plus: show_matrix(&ex.middle_plus),
        matrix_minus: show_matrix(&ex.middle_minus),
        det_plus: show(&ex.det_plus),
        det_minus: show(&ex.det_minus),
        expected_det: show(&ex.expected_det),
        matrices_match: ex.matrices_match,
        top_relation: ex.top_relation,
        pass: ex.all_pass(),
        numeric: rows,
    })
}
