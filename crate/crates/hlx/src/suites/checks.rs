//! Per-module checks shared by the grids.

use hlx_core::cartan::CartanData;
use hlx_core::drinfeld::{factor, minus_involution, spectral_character, star, EllWeight};
use hlx_core::exactnum::{Field, Poly};
use hlx_core::meataxe::{chop, GeneratorSet};
use hlx_core::modrep::{drinfeld_polynomial, ell_hw_vectors, Gen, LoopModule};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::Result;
use crate::field::FieldIo;
use crate::report::{character_json, poly_json, CharacterJson};

/// `Π (1 − a u)^m`.
pub fn omega_of<F: Field>(f: &F, parts: &[(F::Elem, u32)]) -> Poly<F::Elem> {
    parts.iter().fold(Poly::one(f), |acc, (a, m)| {
        acc.mul(f, &Poly::from_coeffs(f, vec![f.one(), f.neg(a)]).pow(f, *m))
    })
}

fn padded<F: Field>(f: &F, p: &Poly<F::Elem>, len: usize) -> Vec<F::Elem> {
    (0..len).map(|i| p.coeff(f, i)).collect()
}

/// Drinfeld data and duality of a module expected to be irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleCheck {
    pub omega: Option<Vec<String>>,
    pub expected_omega: Vec<String>,
    /// One ℓ-highest weight line; `Λ⁺ = ω` and `Λ⁻ = ω⁻` to precision `2 deg + 2`.
    pub lambda_series_ok: bool,
    pub dual_omega: Option<Vec<String>>,
    pub dual_omega_ok: bool,
    pub double_dual_ok: bool,
}

impl IrreducibleCheck {
    pub fn pass(&self) -> bool {
        self.omega.as_ref() == Some(&self.expected_omega)
            && self.lambda_series_ok
            && self.dual_omega_ok
            && self.double_dual_ok
    }
}

fn series_check<F: FieldIo>(m: &LoopModule<F>, radius: Option<i64>) -> Result<(Option<Poly<F::Elem>>, bool)> {
    let f = m.field();
    let hw = ell_hw_vectors(m, radius)?;
    if hw.len() != 1 {
        return Ok((None, false));
    }
    let Ok(rep) = drinfeld_polynomial(m, &hw[0]) else {
        return Ok((None, false));
    };
    let len = rep.precision + 1;
    let ok = rep.plus == padded(f, &rep.omega, len)
        && minus_involution(f, &rep.omega).is_ok_and(|mi| rep.minus == padded(f, &mi, len))
        && rep.consistent();
    Ok((Some(rep.omega), ok))
}

pub fn check_irreducible<F: FieldIo>(
    m: &LoopModule<F>,
    expected: &Poly<F::Elem>,
    radius: Option<i64>,
) -> Result<IrreducibleCheck> {
    let f = m.field();
    let (omega, lambda_series_ok) = series_check(m, radius)?;
    let d = LoopModule::dual(m);
    let (dual_omega, dual_series_ok) = series_check(&d, radius)?;
    let cd = CartanData::sl2();
    let star_omega = factor(f, expected).ok().and_then(|w| star(&w, &cd).to_poly(f).ok());
    let dual_omega_ok = dual_series_ok && dual_omega.is_some() && dual_omega == star_omega;

    let dd = LoopModule::dual(&d);
    let mut gens: Vec<Gen> = GeneratorSet::new(m, radius)?.gens.into_iter().map(|g| g.0).collect();
    let span = m.weight_span() as i64;
    gens.extend((-span..=span).map(|r| Gen::Lambda { r }));
    let mut double_dual_ok = dd.weights() == m.weights();
    for g in gens {
        double_dual_ok &= dd.op(g)? == m.op(g)?;
    }
    Ok(IrreducibleCheck {
        omega: omega.map(|o| poly_json(f, &o)),
        expected_omega: poly_json(f, expected),
        lambda_series_ok,
        dual_omega: dual_omega.map(|o| poly_json(f, &o)),
        dual_omega_ok,
        double_dual_ok,
    })
}

/// Composition factors against the parent's spectral character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCheck {
    pub parent: CharacterJson,
    pub factor_dims: Vec<usize>,
    pub factors: Vec<Option<CharacterJson>>,
    pub undecided: bool,
    pub consistent: bool,
}

pub fn check_blocks<F: FieldIo>(
    m: &LoopModule<F>,
    parent: &EllWeight<F::Elem>,
    cfg: &RunConfig,
    salt: u64,
) -> Result<BlockCheck> {
    let f = m.field();
    let cd = CartanData::sl2();
    let chi = spectral_character(parent, &cd);
    let s = chop(m, &cfg.meataxe(salt))?;
    let consistent = !s.undecided && s.factors.iter().all(|c| c.spectral.as_ref() == Some(&chi));
    Ok(BlockCheck {
        parent: character_json(f, &chi),
        factor_dims: s.dims(),
        factors: s.factors.iter().map(|c| c.spectral.as_ref().map(|x| character_json(f, x))).collect(),
        undecided: s.undecided,
        consistent,
    })
}
