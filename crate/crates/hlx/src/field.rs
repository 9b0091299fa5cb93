//! Working fields as JSON ring specs, element parsing and dispatch.

use hlx_core::exactnum::{Dvr, Field, FiniteField, PrimeField, Rational, RationalField, Ring};
use hlx_core::lattice::{lattice_closure, reduce_mod_p, ClosureWindows};
use hlx_core::modrep::LoopModule;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{HlxError, Result};
use crate::recipe::{build, top_vector, Recipe};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum RingSpec {
    Fp {
        p: u64,
    },
    Fq {
        p: u64,
        d: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u64>>,
    },
    Q,
    #[serde(rename = "DVR")]
    Dvr {
        p: u64,
    },
}

impl RingSpec {
    /// `F_p` for `d = 1`, otherwise `F_{p^d}` with the default modulus.
    pub fn finite(p: u64, d: u32) -> Self {
        if d == 1 {
            RingSpec::Fp { p }
        } else {
            RingSpec::Fq { p, d, modulus: None }
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RingSpec::Fp { .. } | RingSpec::Fq { .. })
    }

    /// Run `task` with the concrete field.
    pub fn dispatch<T: FieldTask>(&self, task: T) -> Result<T::Out> {
        let bad = |e: hlx_core::Error| HlxError::usage(format!("invalid ring: {e}"));
        Ok(match self {
            RingSpec::Fp { p } => task.run(&PrimeField::new(*p).map_err(bad)?),
            RingSpec::Fq { p, d, modulus } => {
                if !(1..=4).contains(d) {
                    return Err(HlxError::usage("extension degree must lie in 1..=4"));
                }
                let f = match modulus {
                    Some(m) => FiniteField::with_modulus(*p, m.clone()),
                    None => FiniteField::new(*p, *d),
                }
                .map_err(bad)?;
                if f.degree() != *d {
                    return Err(HlxError::usage("modulus degree does not match d"));
                }
                task.run(&f)
            }
            RingSpec::Q => task.run(&RationalField),
            RingSpec::Dvr { p } => task.run(&Dvr::new(*p).map_err(bad)?),
        })
    }
}

/// A computation generic over the working field.
pub trait FieldTask {
    type Out;
    fn run<F: FieldIo>(self, f: &F) -> Self::Out;
}

fn value_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Rational::from)
            .ok_or_else(|| HlxError::usage(format!("expected an integer, got {n}"))),
        Value::String(s) => s.trim().parse().map_err(|e| HlxError::usage(format!("{e}"))),
        _ => Err(HlxError::usage(format!("expected a number or string, got {v}"))),
    }
}

/// Field elements in and out of JSON.
pub trait FieldIo: Field<Elem: Send + Sync> + Send + Sync {
    fn parse(&self, v: &Value) -> Result<Self::Elem> {
        let q = value_rational(v)?;
        self.from_rational(&q)
            .ok_or_else(|| HlxError::usage(format!("{q} is not defined in {}", self.describe())))
    }

    fn show(&self, e: &Self::Elem) -> String {
        self.render(e)
    }

    /// `L/pL` for the lattice through the top vector of a module over `Z_(p)`.
    fn from_lattice(&self, _ambient: &Recipe) -> Result<LoopModule<Self>> {
        Err(HlxError::usage("from_lattice needs an Fp ring"))
    }
}

impl FieldIo for PrimeField {
    fn parse(&self, v: &Value) -> Result<u64> {
        if let Value::String(s) = v {
            if let Some((x, q)) = s.split_once("mod") {
                if q.trim().parse::<u64>().ok() != Some(self.p()) {
                    return Err(HlxError::usage(format!("{s:?} is not an element of F_{}", self.p())));
                }
                return self.parse(&Value::String(x.trim().to_string()));
            }
        }
        let q = value_rational(v)?;
        self.from_rational(&q).ok_or_else(|| HlxError::usage(format!("{q} is not defined in F_{}", self.p())))
    }

    fn from_lattice(&self, ambient: &Recipe) -> Result<LoopModule<Self>> {
        let dvr = Dvr::new(self.p())?;
        let amb = build(&dvr, ambient)?;
        let v = top_vector(&amb)?;
        let l = lattice_closure(&amb, &v, ClosureWindows::default())?;
        Ok(reduce_mod_p(&l)?.with_label(format!("L/pL[{}]", amb.label())))
    }
}

impl FieldIo for FiniteField {
    /// Coefficient lists `[c0, c1, …]` in the generator, or prime-field values.
    fn parse(&self, v: &Value) -> Result<u64> {
        if let Value::Array(cs) = v {
            let c = cs
                .iter()
                .map(|x| x.as_u64().filter(|&c| c < self.p()))
                .collect::<Option<Vec<u64>>>()
                .ok_or_else(|| HlxError::usage(format!("bad coefficient list {v}")))?;
            if c.len() > self.degree() as usize {
                return Err(HlxError::usage(format!("too many coefficients in {v}")));
            }
            return Ok(self.from_coeffs(&c));
        }
        let q = value_rational(v)?;
        self.from_rational(&q).ok_or_else(|| HlxError::usage(format!("{q} is not defined in {}", self.describe())))
    }
}

impl FieldIo for RationalField {}

impl FieldIo for Dvr {}
