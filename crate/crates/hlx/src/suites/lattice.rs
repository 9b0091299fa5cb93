//! Lattice through a vector of a module over `Z_(p)`.

use hlx_core::exactnum::{Dvr, Rational};
use hlx_core::lattice::{compare_lattices, lattice_closure, verify_invariance, ClosureWindows, LatticeBasis};
use hlx_core::modrep::LoopModule;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{HlxError, Result};
use crate::field::{FieldIo, RingSpec};
use crate::recipe::{build, top_vector, RecipeDoc};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub config: RunConfig,
    pub ambient: String,
    pub p: u64,
    pub rank: usize,
    /// Canonical basis, one row per vector.
    pub basis: Vec<Vec<String>>,
    pub weights: Vec<i64>,
    /// Valuations of the elementary divisors against the coordinate lattice.
    pub elementary_divisors: Option<Vec<i64>>,
    pub stable_window: Option<i64>,
    pub invariant: bool,
}

impl LatticeReport {
    pub fn summary(&self) -> String {
        let mut s = vec![format!("lattice in {} over Z_({}): rank {}", self.ambient, self.p, self.rank)];
        for (v, w) in self.basis.iter().zip(&self.weights) {
            s.push(format!("  [{}]  weight {w}", v.join(", ")));
        }
        s.push(format!("elementary divisors (valuations) {:?}", self.elementary_divisors));
        s.push(format!("stable window {:?}, invariant {}", self.stable_window, self.invariant));
        s.join("\n")
    }
}

pub fn lattice_report(doc: &RecipeDoc, cfg: &RunConfig) -> Result<LatticeReport> {
    let RingSpec::Dvr { p } = doc.ring else {
        return Err(HlxError::usage("lattice needs a DVR ring"));
    };
    let dvr = Dvr::new(p).map_err(|e| HlxError::usage(e.to_string()))?;
    let amb = build(&dvr, &doc.build)?;
    let v = match &doc.generator {
        Some(vs) => {
            if vs.len() != amb.dim() {
                return Err(HlxError::usage(format!("generator has length {}, module has dimension {}", vs.len(), amb.dim())));
            }
            vs.iter().map(|x| dvr.parse(x)).collect::<Result<Vec<_>>>()?
        }
        None => top_vector(&amb)?,
    };
    let windows = ClosureWindows { max: cfg.rwindow.unwrap_or(ClosureWindows::default().max), ..ClosureWindows::default() };
    let l = lattice_closure(&amb, &v, windows)?;
    let invariant = verify_invariance(&l, l.stable_window().unwrap_or(windows.max)).is_ok();
    Ok(LatticeReport {
        config: cfg.clone(),
        ambient: amb.label().to_string(),
        p,
        rank: l.rank(),
        basis: l.vectors().iter().map(|v| v.iter().map(Rational::to_string).collect()).collect(),
        weights: l.weights(),
        elementary_divisors: coordinate_divisors(&amb, &l),
        stable_window: l.stable_window(),
        invariant,
    })
}

fn coordinate_divisors(amb: &LoopModule<Dvr>, l: &LatticeBasis) -> Option<Vec<i64>> {
    let n = amb.dim();
    let unit = (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    let std = LatticeBasis::span(amb, unit);
    compare_lattices(l, &std).ok().map(|d| d.valuations)
}
