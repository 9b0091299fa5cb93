//! `V(λ) ≅ ⊗_k V(λ_k)^{[k]}`: dimensions, certified irreducibility, and
//! reducibility of same-level products.

use hlx_core::meataxe::{brute_force, irreducibility, GeneratorSet, Irreducibility, Method};
use hlx_core::modrep::LoopModule;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::{check_irreducible, omega_of, IrreducibleCheck};
use crate::config::RunConfig;
use crate::error::Result;
use crate::field::{FieldIo, RingSpec};

pub fn base_p_digits(mut n: u32, p: u64) -> Vec<u32> {
    let mut out = Vec::new();
    while n > 0 {
        out.push((n as u64 % p) as u32);
        n = (n as u64 / p) as u32;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinbergRow {
    pub lambda: u32,
    pub digits: Vec<u32>,
    pub dim: usize,
    pub expected_dim: usize,
    pub irreducible: Option<bool>,
    pub method: Option<String>,
    /// Exhaustive verdict when `|F|^dim` is within the brute-force bound.
    pub brute_force: Option<bool>,
    pub check: IrreducibleCheck,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SameLevelRow {
    pub lambda: u32,
    pub mu: u32,
    pub level: u32,
    pub irreducible: Option<bool>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinbergReport {
    pub config: RunConfig,
    pub ring: RingSpec,
    pub a: String,
    pub rows: Vec<SteinbergRow>,
    pub same_level: Vec<SameLevelRow>,
    pub pass: bool,
}

impl SteinbergReport {
    pub fn dims(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.dim).collect()
    }

    pub fn summary(&self) -> String {
        let mut s = vec![format!("{:?}, a = {}", self.ring, self.a)];
        for r in &self.rows {
            s.push(format!(
                "λ={:<3} digits {:?} dim {} (expected {}) irreducible {:?}{}{}",
                r.lambda,
                r.digits,
                r.dim,
                r.expected_dim,
                r.irreducible,
                r.brute_force.map_or(String::new(), |b| format!(" brute force {b}")),
                if r.pass { "" } else { "  FAIL" }
            ));
        }
        for r in &self.same_level {
            s.push(format!(
                "V({})^[{}] ⊗ V({})^[{}] irreducible {:?}{}",
                r.lambda,
                r.level,
                r.mu,
                r.level,
                r.irreducible,
                if r.pass { "" } else { "  FAIL" }
            ));
        }
        s.push(format!("steinberg: {}", if self.pass { "pass" } else { "FAIL" }));
        s.join("\n")
    }
}

fn verdict<E>(i: &Irreducibility<E>) -> (Option<bool>, Option<String>) {
    match i {
        Irreducibility::Irreducible(m) | Irreducibility::Reducible { method: m, .. } => {
            (i.is_irreducible(), Some(if *m == Method::Norton { "norton" } else { "brute_force" }.to_string()))
        }
        Irreducibility::Undecided => (None, None),
    }
}

/// Exhaustive verdict if `|F|^dim ≤ bound`.
pub fn brute_oracle<F: FieldIo>(m: &LoopModule<F>, cfg: &RunConfig) -> Result<Option<bool>> {
    let q = m.field().order().unwrap_or(u64::MAX) as f64;
    if q.powi(m.dim() as i32) > cfg.brute_bound as f64 {
        return Ok(None);
    }
    let gens = GeneratorSet::new(m, cfg.rwindow)?;
    Ok(brute_force(m, &gens, cfg.brute_bound as u128)?.is_irreducible())
}

fn row<F: FieldIo>(f: &F, a: &F::Elem, lambda: u32, cfg: &RunConfig) -> Result<SteinbergRow> {
    let p = f.characteristic();
    let m = LoopModule::irreducible(f, lambda, a.clone())?;
    let digits = base_p_digits(lambda, p);
    let expected_dim = digits.iter().map(|d| *d as usize + 1).product();
    let (irreducible, method) = verdict(&irreducibility(&m, &cfg.meataxe(lambda as u64))?);
    let brute = brute_oracle(&m, cfg)?;
    let check = check_irreducible(&m, &omega_of(f, &[(a.clone(), lambda)]), cfg.rwindow)?;
    let pass = m.dim() == expected_dim
        && irreducible == Some(true)
        && brute.map_or(true, |b| Some(b) == irreducible)
        && check.pass();
    Ok(SteinbergRow { lambda, digits, dim: m.dim(), expected_dim, irreducible, method, brute_force: brute, check, pass })
}

/// `V(λ)^{[k]} ⊗ V(μ)^{[k]}` at one parameter is reducible for restricted `λ, μ ≥ 1`.
fn same_level<F: FieldIo>(f: &F, a: &F::Elem, lambda: u32, mu: u32, level: u32, cfg: &RunConfig) -> Result<SameLevelRow> {
    let tw = |l| LoopModule::frobenius(&LoopModule::eval_weyl(f, l, a.clone())?, level);
    let m = LoopModule::tensor(&tw(lambda)?, &tw(mu)?);
    let (irreducible, _) = verdict(&irreducibility(&m, &cfg.meataxe(1000 + lambda as u64 * 31 + mu as u64))?);
    Ok(SameLevelRow { lambda, mu, level, irreducible, pass: irreducible == Some(false) })
}

pub fn steinberg<F: FieldIo>(f: &F, ring: &RingSpec, a: &F::Elem, lambda_max: u32, cfg: &RunConfig) -> Result<SteinbergReport> {
    let p = f.characteristic() as u32;
    let rows = (0..=lambda_max).into_par_iter().map(|l| row(f, a, l, cfg)).collect::<Result<Vec<_>>>()?;
    let mut jobs = Vec::new();
    for level in 0..=1 {
        for lambda in 1..p {
            jobs.extend((lambda..p).map(|mu| (lambda, mu, level)));
        }
    }
    let same_level = jobs
        .into_par_iter()
        .map(|(l, m, k)| same_level(f, a, l, m, k, cfg))
        .collect::<Result<Vec<_>>>()?;
    let pass = rows.iter().all(|r| r.pass) && same_level.iter().all(|r| r.pass);
    Ok(SteinbergReport { config: cfg.clone(), ring: ring.clone(), a: f.show(a), rows, same_level, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hlx_core::exactnum::PrimeField;

    #[test]
    fn digits() {
        assert_eq!(base_p_digits(5, 3), [2, 1]);
        assert!(base_p_digits(0, 2).is_empty());
    }

    #[test]
    fn binary_table() {
        let f = PrimeField::new(2).unwrap();
        let r = steinberg(&f, &RingSpec::Fp { p: 2 }, &1, 8, &RunConfig::default()).unwrap();
        assert!(r.pass, "{}", r.summary());
        assert_eq!(r.dims(), [1, 2, 2, 4, 2, 4, 4, 8, 2]);
    }
}
