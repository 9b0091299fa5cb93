//! Exact checks of the loop identities over a parameter grid.

use std::collections::BTreeMap;

use hlx_core::looppbw::{
    basicrel_sides, check_ev_lambda, check_ht_structure, check_koslem, lambda_element, z_form_member, HyperElement,
    IdentityCheck, Sign,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

/// Both sides of the Garland relation for `(k, l, s, sign)`.
pub type GarlandSides = fn(u32, u32, i64, Sign) -> (HyperElement, HyperElement);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityGrid {
    /// Garland relation for `1 ≤ l ≤ k ≤ kmax`.
    pub kmax: u32,
    /// and `|s| ≤ smax`.
    pub smax: i64,
    /// Kostant's commutation for `k, l ≤ koslem_max`.
    pub koslem_max: u32,
    /// Evaluation of `Λ_r` and its integrality for `|r| ≤ rmax`.
    pub rmax: i64,
    /// Structure of the twisted `Λ_{±s;k}` for `sk ≤ skmax`.
    pub skmax: u32,
}

impl IdentityGrid {
    pub fn from_kmax(kmax: u32, smax: Option<i64>) -> Self {
        IdentityGrid { kmax, smax: smax.unwrap_or(2), koslem_max: kmax + 1, rmax: 2 * kmax as i64, skmax: 2 * kmax }
    }
}

impl Default for IdentityGrid {
    fn default() -> Self {
        IdentityGrid::from_kmax(3, None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub identity: String,
    pub params: String,
    pub residual: String,
    pub pass: bool,
}

impl From<IdentityCheck> for Instance {
    fn from(c: IdentityCheck) -> Self {
        Instance { identity: c.identity, params: c.params, residual: c.residual, pass: c.pass }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub config: RunConfig,
    pub grid: IdentityGrid,
    /// Instances checked per identity.
    pub checked: BTreeMap<String, usize>,
    pub failures: Vec<Instance>,
    pub pass: bool,
}

impl IdentityReport {
    pub fn summary(&self) -> String {
        let mut s: Vec<String> = self.checked.iter().map(|(k, n)| format!("{k}: {n} instances")).collect();
        for f in &self.failures {
            s.push(format!("FAIL {} [{}]: residual {}", f.identity, f.params, f.residual));
        }
        s.push(format!("identities: {}", if self.pass { "pass" } else { "FAIL" }));
        s.join("\n")
    }
}

enum Job {
    Garland(u32, u32, i64, Sign),
    Koslem(u32, u32),
    EvLambda(i64),
    Integral(i64),
    Ht(u32, u32, Sign),
}

fn garland(sides: GarlandSides, k: u32, l: u32, s: i64, sign: Sign) -> Instance {
    let (lhs, rhs) = sides(k, l, s, sign);
    let r = lhs.sub(&rhs).filter(|m| m.raise.is_empty());
    Instance { identity: "basicrel".into(), params: format!("k={k},l={l},s={s},sign={sign:?}"), residual: r.to_string(), pass: r.is_zero() }
}

/// Run the grid with the given Garland relation (the shipped one, or a mutant).
pub fn verify_identities_with(grid: &IdentityGrid, cfg: &RunConfig, sides: GarlandSides) -> IdentityReport {
    let signs = [Sign::Plus, Sign::Minus];
    let mut jobs = Vec::new();
    for k in 1..=grid.kmax {
        for l in 1..=k {
            for s in -grid.smax..=grid.smax {
                jobs.extend(signs.map(|e| Job::Garland(k, l, s, e)));
            }
        }
    }
    for k in 0..=grid.koslem_max {
        jobs.extend((0..=grid.koslem_max).map(|l| Job::Koslem(k, l)));
    }
    for r in -grid.rmax..=grid.rmax {
        jobs.push(Job::EvLambda(r));
        jobs.push(Job::Integral(r));
    }
    for s in 1..=grid.skmax {
        for k in 1..=grid.skmax / s {
            jobs.extend(signs.map(|e| Job::Ht(s, k, e)));
        }
    }
    let results: Vec<Instance> = jobs
        .par_iter()
        .map(|j| match *j {
            Job::Garland(k, l, s, e) => garland(sides, k, l, s, e),
            Job::Koslem(k, l) => check_koslem(k, l).into(),
            Job::EvLambda(r) => check_ev_lambda(r).into(),
            Job::Integral(r) => {
                let ok = z_form_member(&lambda_element(r));
                Instance { identity: "lambda_integral".into(), params: format!("r={r}"), residual: if ok { "0".into() } else { lambda_element(r).to_string() }, pass: ok }
            }
            Job::Ht(s, k, e) => check_ht_structure(s, k, e).into(),
        })
        .collect();
    let mut checked = BTreeMap::new();
    for r in &results {
        *checked.entry(r.identity.clone()).or_insert(0) += 1;
    }
    let failures: Vec<Instance> = results.into_iter().filter(|r| !r.pass).collect();
    IdentityReport { config: cfg.clone(), grid: grid.clone(), checked, pass: failures.is_empty(), failures }
}

pub fn verify_identities(grid: &IdentityGrid, cfg: &RunConfig) -> IdentityReport {
    verify_identities_with(grid, cfg, basicrel_sides)
}

/// Negative control: the right-hand side picks up a stray `(x⁻_0)^{(k)}`.
pub fn mutant_sides(k: u32, l: u32, s: i64, sign: Sign) -> (HyperElement, HyperElement) {
    let (lhs, rhs) = basicrel_sides(k, l, s, sign);
    (lhs, rhs.add(&HyperElement::lower(0, k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_grid_passes() {
        let r = verify_identities(&IdentityGrid::from_kmax(1, Some(1)), &RunConfig::default());
        assert!(r.pass, "{}", r.summary());
        assert_eq!(r.checked["basicrel"], 6);
    }

    #[test]
    fn mutant_is_caught() {
        let r = verify_identities_with(&IdentityGrid::from_kmax(1, Some(0)), &RunConfig::default(), mutant_sides);
        assert!(!r.pass);
        assert!(r.failures.iter().all(|f| f.identity == "basicrel" && f.residual != "0"));
    }
}
