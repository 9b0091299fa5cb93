//! Irreducibility of `⊗_j V(λ_j, a_j)^{[l_j]}` for restricted `λ_j`:
//! expected exactly when the parameters at each Frobenius level are distinct.

use hlx_core::drinfeld::EllWeight;
use hlx_core::exactnum::PrimeField;
use hlx_core::meataxe::irreducibility;
use hlx_core::modrep::LoopModule;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::{check_blocks, check_irreducible, omega_of, BlockCheck, IrreducibleCheck};
use crate::config::RunConfig;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorSpec {
    pub lambda: u32,
    pub level: u32,
    pub a: u64,
}

impl FactorSpec {
    pub fn build(&self, f: &PrimeField) -> Result<LoopModule<PrimeField>> {
        Ok(LoopModule::frobenius(&LoopModule::eval_weyl(f, self.lambda, self.a)?, self.level)?)
    }

    fn exponent(&self, p: u64) -> u32 {
        self.lambda * (p as u32).pow(self.level)
    }
}

pub fn expected_irreducible(fs: &[FactorSpec]) -> bool {
    fs.iter().enumerate().all(|(i, x)| fs[..i].iter().all(|y| x.level != y.level || x.a != y.a))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TpdRow {
    pub factors: Vec<FactorSpec>,
    pub dim: usize,
    pub expected_irreducible: bool,
    pub irreducible: Option<bool>,
    /// Drinfeld and duality checks, for irreducible instances.
    pub check: Option<IrreducibleCheck>,
    pub blocks: BlockCheck,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TpdReport {
    pub config: RunConfig,
    pub p: u64,
    pub instances: usize,
    pub verdicts_agree: usize,
    pub rows: Vec<TpdRow>,
    pub pass: bool,
}

impl TpdReport {
    pub fn summary(&self) -> String {
        let mut s = Vec::new();
        for r in self.rows.iter().filter(|r| !r.pass) {
            s.push(format!("FAIL {:?}: expected irreducible {}, got {:?}", r.factors, r.expected_irreducible, r.irreducible));
        }
        s.push(format!(
            "tpd-grid p={}: {}/{} verdicts agree; {}",
            self.p,
            self.verdicts_agree,
            self.instances,
            if self.pass { "pass" } else { "FAIL" }
        ));
        s.join("\n")
    }
}

/// All factors with `1 ≤ λ ≤ p − 1`, level 0 or 1 and `a ∈ F_p^×`.
pub fn factor_choices(p: u64) -> Vec<FactorSpec> {
    let mut out = Vec::new();
    for lambda in 1..p as u32 {
        for level in 0..=1 {
            out.extend((1..p).map(|a| FactorSpec { lambda, level, a }));
        }
    }
    out
}

/// One and two factor products, each unordered pair once.
pub fn grid(p: u64) -> Vec<Vec<FactorSpec>> {
    let fs = factor_choices(p);
    let mut out: Vec<Vec<FactorSpec>> = fs.iter().map(|x| vec![*x]).collect();
    for i in 0..fs.len() {
        out.extend(fs[i..].iter().map(|y| vec![fs[i], *y]));
    }
    out
}

pub fn tpd_row(f: &PrimeField, fs: &[FactorSpec], cfg: &RunConfig, salt: u64) -> Result<TpdRow> {
    let p = f.p();
    let parts = fs.iter().map(|x| x.build(f)).collect::<Result<Vec<_>>>()?;
    let m = LoopModule::tensor_all(&parts)?;
    let expected = expected_irreducible(fs);
    let irreducible = irreducibility(&m, &cfg.meataxe(salt))?.is_irreducible();
    let exps: Vec<(u64, u32)> = fs.iter().map(|x| (x.a, x.exponent(p))).collect();
    let check = if irreducible == Some(true) {
        Some(check_irreducible(&m, &omega_of(f, &exps), cfg.rwindow)?)
    } else {
        None
    };
    let parent = EllWeight::from_exponents(exps.iter().map(|(a, e)| (*a, *e as i64)));
    let blocks = check_blocks(&m, &parent, cfg, salt)?;
    let pass = irreducible == Some(expected) && check.as_ref().map_or(true, |c| c.pass()) && blocks.consistent;
    Ok(TpdRow { factors: fs.to_vec(), dim: m.dim(), expected_irreducible: expected, irreducible, check, blocks, pass })
}

pub fn tpd_grid(p: u64, cfg: &RunConfig) -> Result<TpdReport> {
    let f = PrimeField::new(p)?;
    let rows = grid(p)
        .par_iter()
        .enumerate()
        .map(|(i, fs)| tpd_row(&f, fs, cfg, i as u64))
        .collect::<Result<Vec<_>>>()?;
    let verdicts_agree = rows.iter().filter(|r| r.irreducible == Some(r.expected_irreducible)).count();
    Ok(TpdReport { config: cfg.clone(), p, instances: rows.len(), verdicts_agree, pass: rows.iter().all(|r| r.pass), rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        assert_eq!(factor_choices(3).len(), 8);
        assert_eq!(grid(3).len(), 8 + 36);
    }

    #[test]
    fn rule() {
        let x = |lambda, level, a| FactorSpec { lambda, level, a };
        assert!(expected_irreducible(&[x(1, 0, 1), x(1, 1, 1)]));
        assert!(expected_irreducible(&[x(1, 0, 1), x(2, 0, 2)]));
        assert!(!expected_irreducible(&[x(1, 0, 1), x(2, 0, 1)]));
    }

    #[test]
    fn characteristic_two() {
        let r = tpd_grid(2, &RunConfig::default()).unwrap();
        assert!(r.pass, "{}", r.summary());
        assert_eq!(r.instances, 5);
    }
}
