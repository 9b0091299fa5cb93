//! Spectral characters of module reports: block partition, tensor
//! additivity and dual negation.

use std::collections::BTreeMap;

use hlx_core::cartan::{CartanData, WeightClass};
use hlx_core::drinfeld::{block_partition, BlockInput, EllWeight, LWeight, SpectralCharacter};
use hlx_core::modrep::{ell_weight_decomposition, LoopModule};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{HlxError, Result};
use crate::field::{FieldIo, FieldTask};
use crate::recipe::{build, Recipe};
use crate::report::{character_json, module_character, CharacterJson, ModuleReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub character: CharacterJson,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub left: String,
    pub right: String,
    pub expected: Option<CharacterJson>,
    pub tensor: Option<CharacterJson>,
    pub additive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCheck {
    pub label: String,
    pub character: Option<CharacterJson>,
    pub dual: Option<CharacterJson>,
    pub negated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlocksReport {
    pub config: RunConfig,
    pub groups: Vec<Group>,
    pub inconsistent: Vec<String>,
    pub opaque: Vec<String>,
    pub pairs: Vec<PairCheck>,
    pub duals: Vec<DualCheck>,
    /// Reports without a rebuildable recipe over a finite field.
    pub skipped: Vec<String>,
    pub pass: bool,
}

impl BlocksReport {
    pub fn summary(&self) -> String {
        let mut s = Vec::new();
        for g in &self.groups {
            s.push(format!("block {}: {}", serde_json::to_string(&g.character).unwrap(), g.members.join(", ")));
        }
        for m in &self.inconsistent {
            s.push(format!("FAIL {m}: ℓ-weights with different characters"));
        }
        for m in &self.opaque {
            s.push(format!("warning: {m} has ℓ-weights that do not factor; excluded"));
        }
        let add = self.pairs.iter().filter(|p| p.additive).count();
        let neg = self.duals.iter().filter(|d| d.negated).count();
        s.push(format!("tensor additivity {add}/{}, dual negation {neg}/{}", self.pairs.len(), self.duals.len()));
        s.push(format!("blocks: {}", if self.pass { "pass" } else { "FAIL" }));
        s.join("\n")
    }
}

fn lweights(r: &ModuleReport) -> Result<Vec<LWeight<String>>> {
    let ws = r
        .ell_weights
        .as_ref()
        .ok_or_else(|| HlxError::usage(format!("report {} carries no ℓ-weights", r.label)))?;
    Ok(ws
        .iter()
        .map(|w| match &w.factored {
            Some(m) => LWeight::Factored(EllWeight::from_exponents(m.iter().map(|(a, e)| (a.clone(), *e)))),
            None => LWeight::Opaque(w.series.clone()),
        })
        .collect())
}

fn render_class(c: &SpectralCharacter<String>) -> CharacterJson {
    c.values().iter().map(|(a, WeightClass(v))| (a.clone(), v.clone())).collect()
}

/// Character of a module from its ℓ-weights; `None` if opaque or inconsistent.
pub fn character_of<F: FieldIo>(m: &LoopModule<F>) -> Result<Option<SpectralCharacter<F::Elem>>> {
    let (c, consistent, opaque) = module_character::<F>(ell_weight_decomposition(m)?.into_iter().map(|b| b.lweight));
    Ok(c.filter(|_| consistent && opaque == 0))
}

struct Additivity<'a> {
    left: &'a Recipe,
    right: &'a Recipe,
}

impl FieldTask for Additivity<'_> {
    type Out = Result<(Option<CharacterJson>, Option<CharacterJson>, bool)>;

    fn run<F: FieldIo>(self, f: &F) -> Self::Out {
        let cd = CartanData::sl2();
        let m = build(f, self.left)?;
        let n = build(f, self.right)?;
        let (cm, cn) = (character_of(&m)?, character_of(&n)?);
        let ct = character_of(&LoopModule::tensor(&m, &n))?;
        let expected = cm.zip(cn).map(|(a, b)| a.add(&b, &cd));
        let ok = expected.is_some() && expected == ct;
        Ok((expected.map(|c| character_json(f, &c)), ct.map(|c| character_json(f, &c)), ok))
    }
}

struct Negation<'a>(&'a Recipe);

impl FieldTask for Negation<'_> {
    type Out = Result<(Option<CharacterJson>, Option<CharacterJson>, bool)>;

    fn run<F: FieldIo>(self, f: &F) -> Self::Out {
        let cd = CartanData::sl2();
        let m = build(f, self.0)?;
        let c = character_of(&m)?;
        let d = character_of(&LoopModule::dual(&m))?;
        let ok = c.is_some() && c.as_ref().map(|c| c.neg(&cd)) == d;
        Ok((c.map(|c| character_json(f, &c)), d.map(|c| character_json(f, &c)), ok))
    }
}

/// Deterministic sample of at most `cap` index pairs `i < j`.
pub fn sample_pairs(n: usize, cap: usize, seed: u64) -> Vec<(usize, usize)> {
    let all: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    if all.len() <= cap {
        return all;
    }
    let step = all.len() as f64 / cap as f64;
    let off = (seed % all.len() as u64) as usize;
    let mut out: Vec<(usize, usize)> = (0..cap).map(|k| all[(off + (k as f64 * step) as usize) % all.len()]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub const PAIR_CAP: usize = 64;

pub fn blocks_report(reports: &[ModuleReport], cfg: &RunConfig) -> Result<BlocksReport> {
    let cd = CartanData::sl2();
    let inputs = reports
        .iter()
        .map(|r| Ok(BlockInput { label: r.label.clone(), ell_weights: lweights(r)? }))
        .collect::<Result<Vec<_>>>()?;
    let part = block_partition(&inputs, &cd);
    let groups = part.groups.iter().map(|g| Group { character: render_class(&g.character), members: g.members.clone() }).collect();

    let mut usable = Vec::new();
    let mut skipped = Vec::new();
    for r in reports {
        match &r.recipe {
            Some(rc) if r.ring.is_finite() => usable.push((r, rc)),
            _ => skipped.push(r.label.clone()),
        }
    }
    let mut pairs = Vec::new();
    for (i, j) in sample_pairs(usable.len(), PAIR_CAP, cfg.seed) {
        let ((l, lr), (r, rr)) = (usable[i], usable[j]);
        if l.ring != r.ring {
            continue;
        }
        let (expected, tensor, additive) = l.ring.dispatch(Additivity { left: lr, right: rr })??;
        pairs.push(PairCheck { left: l.label.clone(), right: r.label.clone(), expected, tensor, additive });
    }
    let mut duals = Vec::new();
    for (r, rc) in &usable {
        let (character, dual, negated) = r.ring.dispatch(Negation(rc))??;
        duals.push(DualCheck { label: r.label.clone(), character, dual, negated });
    }
    let pass = part.inconsistent.is_empty() && pairs.iter().all(|p| p.additive) && duals.iter().all(|d| d.negated);
    Ok(BlocksReport {
        config: cfg.clone(),
        groups,
        inconsistent: part.inconsistent,
        opaque: part.opaque,
        pairs,
        duals,
        skipped,
        pass,
    })
}

/// Group counts by character, for quick comparisons in tests.
pub fn group_sizes(r: &BlocksReport) -> BTreeMap<String, usize> {
    r.groups.iter().map(|g| (serde_json::to_string(&g.character).unwrap(), g.members.len())).collect()
}
