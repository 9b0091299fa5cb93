//! Canonical JSON module reports.

use std::collections::BTreeMap;

use hlx_core::cartan::CartanData;
use hlx_core::drinfeld::{spectral_character, EllWeight, LWeight, SpectralCharacter};
use hlx_core::exactnum::{Field, Poly};
use hlx_core::meataxe::{chop, irreducibility, Irreducibility, Method};
use hlx_core::modrep::{drinfeld_polynomial, ell_hw_vectors, ell_weight_decomposition, LoopModule};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::Result;
use crate::field::{FieldIo, RingSpec};
use crate::recipe::Recipe;

/// Spectral character as `{"a": class-vector}`.
pub type CharacterJson = BTreeMap<String, Vec<i64>>;

pub fn poly_json<F: FieldIo>(f: &F, p: &Poly<F::Elem>) -> Vec<String> {
    p.coeffs().iter().map(|c| f.show(c)).collect()
}

pub fn vec_json<F: FieldIo>(f: &F, v: &[F::Elem]) -> Vec<String> {
    v.iter().map(|c| f.show(c)).collect()
}

pub fn character_json<F: FieldIo>(f: &F, c: &SpectralCharacter<F::Elem>) -> CharacterJson {
    c.values().iter().map(|(a, cl)| (f.show(a), cl.0.clone())).collect()
}

/// sl₂ exponents `{a: m}` of `Π (1 − a u)^{m}`.
pub fn ell_weight_json<F: FieldIo>(f: &F, w: &EllWeight<F::Elem>) -> BTreeMap<String, i64> {
    w.parts().iter().map(|(a, mu)| (f.show(a), mu.0[0])).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllHwReport {
    pub weight: i64,
    pub vector: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambda_plus: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambda_minus: Vec<String>,
    pub consistent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllWeightReport {
    pub weight: i64,
    pub dim: usize,
    /// `None` for ℓ-weights that do not factor over the field.
    pub factored: Option<BTreeMap<String, i64>>,
    pub series: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub label: String,
    pub dim: usize,
    pub character: Vec<(i64, usize)>,
    pub omega: Vec<String>,
    pub spectral_character: Option<CharacterJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleReport {
    pub label: String,
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<Recipe>,
    pub config: RunConfig,
    pub dim: usize,
    /// `(weight, multiplicity)`, increasing weight.
    pub character: Vec<(i64, usize)>,
    pub ell_hw: Vec<EllHwReport>,
    #[serde(default)]
    pub ell_weights: Option<Vec<EllWeightReport>>,
    #[serde(default)]
    pub spectral_character: Option<CharacterJson>,
    #[serde(default)]
    pub irreducible: Option<bool>,
    #[serde(default)]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub composition_factors: Option<Vec<FactorReport>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ModuleReport {
    pub fn summary(&self) -> String {
        let mut s = format!("{}: dim {}", self.label, self.dim);
        if let Some(i) = self.irreducible {
            s += if i { ", irreducible" } else { ", reducible" };
        }
        for h in &self.ell_hw {
            if let Some(o) = &h.omega {
                s += &format!("\n  ℓ-hw vector of weight {}: ω = [{}]", h.weight, o.join(", "));
            }
        }
        if let Some(c) = &self.spectral_character {
            s += &format!("\n  spectral character {}", serde_json::to_string(c).unwrap());
        }
        if let Some(fs) = &self.composition_factors {
            s += &format!("\n  composition factors: {}", fs.len());
            for c in fs {
                s += &format!("\n    dim {} ω = [{}]", c.dim, c.omega.join(", "));
            }
        }
        for w in &self.warnings {
            s += &format!("\n  warning: {w}");
        }
        s
    }
}

/// Character of the factored ℓ-weights, whether they all agree, and the opaque count.
pub fn module_character<F: Field>(
    ws: impl IntoIterator<Item = LWeight<F::Elem>>,
) -> (Option<SpectralCharacter<F::Elem>>, bool, usize) {
    let cd = CartanData::sl2();
    let mut found: Option<SpectralCharacter<F::Elem>> = None;
    let mut consistent = true;
    let mut opaque = 0;
    for w in ws {
        match w {
            LWeight::Factored(w) => {
                let c = spectral_character(&w, &cd);
                match &found {
                    None => found = Some(c),
                    Some(prev) => consistent &= *prev == c,
                }
            }
            LWeight::Opaque(_) => opaque += 1,
        }
    }
    (found, consistent, opaque)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Norton => "norton",
        Method::BruteForce => "brute_force",
    }
}

/// Full report: character, ℓ-highest weight data, ℓ-weights (finite fields),
/// MeatAxe verdict and optionally the composition factors.
pub fn module_report<F: FieldIo>(
    m: &LoopModule<F>,
    ring: &RingSpec,
    recipe: Option<&Recipe>,
    cfg: &RunConfig,
    with_factors: bool,
) -> Result<ModuleReport> {
    let f = m.field();
    let mut warnings = Vec::new();
    let mut ell_hw = Vec::new();
    for v in ell_hw_vectors(m, cfg.rwindow)? {
        let weight = m.vector_weight(&v).unwrap_or(i64::MIN);
        let mut r = EllHwReport {
            weight,
            vector: vec_json(f, &v),
            omega: None,
            lambda_plus: Vec::new(),
            lambda_minus: Vec::new(),
            consistent: false,
            error: None,
        };
        match drinfeld_polynomial(m, &v) {
            Ok(d) => {
                r.consistent = d.consistent();
                r.omega = Some(poly_json(f, &d.omega));
                r.lambda_plus = vec_json(f, &d.plus);
                r.lambda_minus = vec_json(f, &d.minus);
            }
            Err(e) => r.error = Some(e.to_string()),
        }
        ell_hw.push(r);
    }

    let (ell_weights, spectral) = if f.order().is_some() {
        let blocks = ell_weight_decomposition(m)?;
        let rep = blocks
            .iter()
            .map(|b| EllWeightReport {
                weight: b.weight,
                dim: b.dim,
                factored: match &b.lweight {
                    LWeight::Factored(w) => Some(ell_weight_json(f, w)),
                    LWeight::Opaque(_) => None,
                },
                series: vec_json(f, &b.series),
            })
            .collect();
        let (c, consistent, opaque) = module_character::<F>(blocks.into_iter().map(|b| b.lweight));
        if opaque > 0 {
            warnings.push(format!("{opaque} ℓ-weight(s) do not factor over {}; excluded from the character", f.describe()));
        }
        if !consistent {
            warnings.push("ℓ-weights carry different spectral characters".into());
        }
        (Some(rep), if consistent { c.map(|c| character_json(f, &c)) } else { None })
    } else {
        (None, None)
    };

    let (irreducible, method) = if f.order().is_some() {
        match irreducibility(m, &cfg.meataxe(0))? {
            Irreducibility::Irreducible(me) => (Some(true), Some(method_name(me).to_string())),
            Irreducibility::Reducible { method, .. } => (Some(false), Some(method_name(method).to_string())),
            Irreducibility::Undecided => {
                warnings.push("irreducibility undecided within the brute-force bound".into());
                (None, None)
            }
        }
    } else {
        (None, None)
    };

    let composition_factors = if with_factors && f.order().is_some() {
        let s = chop(m, &cfg.meataxe(0))?;
        if s.undecided {
            warnings.push("some composition factors are undecided".into());
        }
        Some(
            s.factors
                .iter()
                .map(|c| FactorReport {
                    label: c.module.label().to_string(),
                    dim: c.dim,
                    character: c.character.iter().map(|(a, b)| (*a, *b)).collect(),
                    omega: poly_json(f, &c.omega),
                    spectral_character: c.spectral.as_ref().map(|s| character_json(f, s)),
                })
                .collect(),
        )
    } else {
        None
    };

    Ok(ModuleReport {
        label: m.label().to_string(),
        ring: ring.clone(),
        recipe: recipe.cloned(),
        config: cfg.clone(),
        dim: m.dim(),
        character: m.character().into_iter().collect(),
        ell_hw,
        ell_weights,
        spectral_character: spectral,
        irreducible,
        method,
        composition_factors,
        warnings,
    })
}
