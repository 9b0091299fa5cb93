//! JSON construction recipes.
//!
//! ```json
//! {"ring":{"kind":"Fp","p":3},
//!  "build":{"tensor":[{"eval_weyl":{"lambda":1,"a":"1"}},{"eval_weyl":{"lambda":1,"a":"2"}}]}}
//! ```

use hlx_core::modrep::LoopModule;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{HlxError, Result};
use crate::field::{FieldIo, RingSpec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Recipe {
    Trivial,
    EvalWeyl { lambda: u32, a: Value },
    Irreducible { lambda: u32, a: Value },
    Tensor(Vec<Recipe>),
    Dual(Box<Recipe>),
    /// Pull-back along the `m`-fold Frobenius.
    FrobeniusTwist { inner: Box<Recipe>, m: u32 },
    /// Loop rescaling `t ↦ a t`.
    PsiTwist { inner: Box<Recipe>, a: Value },
    /// Reduction of the lattice through the top vector of a module over `Z_(p)`,
    /// `p` being the characteristic of the enclosing `Fp` ring.
    FromLattice { ambient: Box<Recipe> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipeDoc {
    pub ring: RingSpec,
    pub build: Recipe,
    /// Generating vector for lattice closure; defaults to the top vector.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<Value>>,
}

impl RecipeDoc {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| HlxError::usage(format!("malformed recipe: {e}")))
    }
}

pub fn eval_weyl(lambda: u32, a: impl Into<Value>) -> Recipe {
    Recipe::EvalWeyl { lambda, a: a.into() }
}

pub fn irreducible(lambda: u32, a: impl Into<Value>) -> Recipe {
    Recipe::Irreducible { lambda, a: a.into() }
}

pub fn build<F: FieldIo>(f: &F, r: &Recipe) -> Result<LoopModule<F>> {
    Ok(match r {
        Recipe::Trivial => LoopModule::trivial(f),
        Recipe::EvalWeyl { lambda, a } => LoopModule::eval_weyl(f, *lambda, f.parse(a)?)?,
        Recipe::Irreducible { lambda, a } => LoopModule::irreducible(f, *lambda, f.parse(a)?)?,
        Recipe::Tensor(parts) => {
            if parts.is_empty() {
                return Err(HlxError::usage("empty tensor product"));
            }
            let ms = parts.iter().map(|p| build(f, p)).collect::<Result<Vec<_>>>()?;
            LoopModule::tensor_all(&ms)?
        }
        Recipe::Dual(inner) => LoopModule::dual(&build(f, inner)?),
        Recipe::FrobeniusTwist { inner, m } => LoopModule::frobenius(&build(f, inner)?, *m)?,
        Recipe::PsiTwist { inner, a } => LoopModule::psi(&build(f, inner)?, f.parse(a)?)?,
        Recipe::FromLattice { ambient } => f.from_lattice(ambient)?,
    })
}

/// The unit vector spanning the top weight space, which must be a line.
pub fn top_vector<F: FieldIo>(m: &LoopModule<F>) -> Result<Vec<F::Elem>> {
    let f = m.field();
    let top = m.max_weight();
    let idx: Vec<usize> = (0..m.dim()).filter(|&i| m.weights()[i] == top).collect();
    if idx.len() != 1 {
        return Err(HlxError::usage(format!("top weight space of {} is not a line", m.label())));
    }
    let mut v = vec![f.zero(); m.dim()];
    v[idx[0]] = f.one();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hlx_core::exactnum::PrimeField;
    use serde_json::json;

    #[test]
    fn parses_the_documented_form() {
        let doc = RecipeDoc::parse(
            r#"{"ring":{"kind":"Fp","p":3},"build":{"tensor":[{"eval_weyl":{"lambda":1,"a":"1"}},{"eval_weyl":{"lambda":1,"a":"2"}}]}}"#,
        )
        .unwrap();
        assert_eq!(doc.ring, RingSpec::Fp { p: 3 });
        assert_eq!(doc.build, Recipe::Tensor(vec![eval_weyl(1, "1"), eval_weyl(1, "2")]));
        let m = build(&PrimeField::new(3).unwrap(), &doc.build).unwrap();
        assert_eq!(m.dim(), 4);
    }

    #[test]
    fn nested_twists() {
        let r: Recipe = serde_json::from_value(json!({"dual":{"frobenius_twist":{"inner":{"psi_twist":{"inner":{"eval_weyl":{"lambda":2,"a":1}},"a":"2"}},"m":1}}}))
            .unwrap();
        let m = build(&PrimeField::new(3).unwrap(), &r).unwrap();
        assert_eq!(m.weights().iter().max(), Some(&6));
    }

    #[test]
    fn malformed_recipes_are_usage_errors() {
        for bad in [r#"{"ring":{"kind":"Fp","p":3}}"#, r#"{"ring":{"kind":"Fp","p":3},"build":{"eval_weil":{"lambda":1,"a":1}}}"#, "[1,2"] {
            assert!(matches!(RecipeDoc::parse(bad), Err(HlxError::Usage(_))));
        }
        let f = PrimeField::new(3).unwrap();
        assert!(matches!(build(&f, &eval_weyl(1, "1/3")), Err(HlxError::Usage(_))));
        assert!(matches!(build(&f, &Recipe::Tensor(vec![])), Err(HlxError::Usage(_))));
    }

    #[test]
    fn lattice_reduction_recipe() {
        let r = Recipe::FromLattice { ambient: Box::new(Recipe::Tensor(vec![eval_weyl(1, 1), eval_weyl(1, 4)])) };
        let m = build(&PrimeField::new(3).unwrap(), &r).unwrap();
        assert_eq!(m.dim(), 4);
        assert!(build(&hlx_core::exactnum::RationalField, &r).is_err());
    }
}
