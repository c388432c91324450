//! JSON construction specs: one document describes one family instance.
//!
//! ```json
//! { "family": "KasamiSubfield", "n": 6, "mod": "0x43", "lambda": "0x1",
//!   "u": ["0x1", "0xe"], "F": "X1*X2" }
//! ```
//!
//! Bivariate families take `n = 2m` with `mod` the degree-`m` modulus and
//! `u` a list of pairs. `pi` is a row-major list of 0/1 rows.

use serde::{Deserialize, Serialize};

use crate::constructions::{
    gold_lambda, gold_like, kasami_antiselfdual, kasami_general, kasami_idempotent,
    kasami_subfield, mm_linear, mm_monomial, niho_family, niho_idempotent, quad_family,
    quad_idempotent_family, ConstructedPair, Family, KasamiOptions,
};
use crate::error::{Error, Result};
use crate::gf2n::{parse_hex, FieldElem, FieldSpec};
use crate::linalg::BitMatrix;
use crate::multipoly::ReducedPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub name: Option<String>,
    pub family: Family,
    /// The field of definition; for bivariate families this is `F_(2^m)`.
    pub field: FieldSpec,
    pub lambda: Option<FieldElem>,
    pub c: Option<Vec<bool>>,
    pub eps: Option<bool>,
    pub k: Option<u32>,
    pub s: Option<u32>,
    pub pi: Option<BitMatrix>,
    pub b: Option<FieldElem>,
    pub u: Vec<FieldElem>,
    pub pairs: Vec<(FieldElem, FieldElem)>,
    /// Niho only: expand the single `u` into its Frobenius orbit over `F_(2^m)`.
    pub orbit: bool,
    pub poly: ReducedPoly,
    /// Check the literal absolute-trace form of the Kasami pairwise condition too.
    pub strict: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum WireU {
    Single(String),
    Pair([String; 2]),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    family: String,
    n: u32,
    #[serde(rename = "mod", default, skip_serializing_if = "Option::is_none")]
    modulus: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eps: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pi: Option<Vec<Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    u: Vec<WireU>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    orbit: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    strict: bool,
    #[serde(rename = "F")]
    poly: String,
}

fn hex(e: FieldElem) -> String {
    format!("{:#x}", e.index())
}

fn bit(v: u8, what: &str) -> Result<bool> {
    match v {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(Error::Parse(format!(
            "`{what}` entries must be 0 or 1, got {v}"
        ))),
    }
}

fn elem(field: &FieldSpec, s: &str) -> Result<FieldElem> {
    let v = parse_hex(s).ok_or_else(|| Error::Parse(format!("bad hex element `{s}`")))?;
    field.elem(v)
}

fn require<T>(v: Option<T>, what: &str, family: Family) -> Result<T> {
    v.ok_or_else(|| Error::Parse(format!("{family} spec needs `{what}`")))
}

impl ConstructionSpec {
    /// A spec with only the family, field and polynomial set.
    pub fn new(family: Family, field: FieldSpec, poly: ReducedPoly) -> Self {
        ConstructionSpec {
            name: None,
            family,
            field,
            lambda: None,
            c: None,
            eps: None,
            k: None,
            s: None,
            pi: None,
            b: None,
            u: Vec::new(),
            pairs: Vec::new(),
            orbit: false,
            poly,
            strict: false,
        }
    }

    /// Total number of Boolean variables of the constructed function.
    pub fn num_vars(&self) -> u32 {
        if self.family.is_bivariate() {
            2 * self.field.n()
        } else {
            self.field.n()
        }
    }

    /// Number of variables `F` must have, given the family and the u-list.
    fn arity(family: Family, n: u32, u_len: usize, orbit: bool) -> u32 {
        let m = n / 2;
        match family {
            Family::KasamiIdempotent | Family::QuadIdem => m,
            Family::Niho if orbit => m,
            Family::KasamiAntiSelfDual => m.saturating_sub(1),
            _ => u_len as u32,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: Wire = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let family: Family = wire.family.parse()?;
        let modulus = match &wire.modulus {
            Some(s) => {
                Some(parse_hex(s).ok_or_else(|| Error::Parse(format!("bad modulus `{s}`")))?)
            }
            None => None,
        };
        let field = if family.is_bivariate() {
            if !wire.n.is_multiple_of(2) {
                return Err(Error::OddDimension(wire.n));
            }
            FieldSpec::new(wire.n / 2, modulus)?
        } else {
            FieldSpec::new(wire.n, modulus)?
        };
        let mut u = Vec::new();
        let mut pairs = Vec::new();
        for entry in &wire.u {
            match (entry, family.is_bivariate()) {
                (WireU::Single(s), false) => u.push(elem(&field, s)?),
                (WireU::Pair([a, b]), true) => pairs.push((elem(&field, a)?, elem(&field, b)?)),
                (WireU::Single(_), true) => {
                    return Err(Error::Parse(format!(
                        "{family} expects `u` as a list of pairs"
                    )))
                }
                (WireU::Pair(_), false) => {
                    return Err(Error::Parse(format!(
                        "{family} expects `u` as a list of elements"
                    )))
                }
            }
        }
        let tau = Self::arity(family, wire.n, wire.u.len(), wire.orbit);
        let poly = ReducedPoly::parse(&wire.poly, tau)?;
        let c = match wire.c {
            Some(v) => Some(v.into_iter().map(|b| bit(b, "c")).collect::<Result<_>>()?),
            None => None,
        };
        let pi = match wire.pi {
            Some(rows) => {
                let mut packed = Vec::with_capacity(rows.len());
                for row in rows {
                    if row.len() != field.n() as usize {
                        return Err(Error::BadDimension(format!(
                            "`pi` rows must have {} entries",
                            field.n()
                        )));
                    }
                    let mut r = 0u64;
                    for (j, v) in row.into_iter().enumerate() {
                        r |= (bit(v, "pi")? as u64) << j;
                    }
                    packed.push(r);
                }
                Some(BitMatrix::from_rows(packed))
            }
            None => None,
        };
        Ok(ConstructionSpec {
            name: wire.name,
            family,
            field,
            lambda: wire.lambda.map(|s| elem(&field, &s)).transpose()?,
            c,
            eps: wire.eps.map(|v| bit(v, "eps")).transpose()?,
            k: wire.k,
            s: wire.s,
            pi,
            b: wire.b.map(|s| elem(&field, &s)).transpose()?,
            u,
            pairs,
            orbit: wire.orbit,
            poly,
            strict: wire.strict,
        })
    }

    pub fn to_json(&self) -> String {
        let mut u: Vec<WireU> = self.u.iter().map(|&e| WireU::Single(hex(e))).collect();
        u.extend(
            self.pairs
                .iter()
                .map(|&(a, b)| WireU::Pair([hex(a), hex(b)])),
        );
        let wire = Wire {
            name: self.name.clone(),
            family: self.family.to_string(),
            n: self.num_vars(),
            modulus: Some(format!("{:#x}", self.field.modulus())),
            lambda: self.lambda.map(hex),
            c: self
                .c
                .as_ref()
                .map(|c| c.iter().map(|&b| b as u8).collect()),
            eps: self.eps.map(|b| b as u8),
            k: self.k,
            s: self.s,
            pi: self.pi.as_ref().map(|p| {
                (0..p.dim())
                    .map(|r| (0..p.dim()).map(|c| p.get(r, c) as u8).collect())
                    .collect()
            }),
            b: self.b.map(hex),
            u,
            orbit: self.orbit,
            strict: self.strict,
            poly: self.poly.to_string(),
        };
        serde_json::to_string_pretty(&wire).expect("spec serializes")
    }

    pub fn build(&self) -> Result<ConstructedPair> {
        let (family, field, poly) = (self.family, self.field, &self.poly);
        let single_u = || -> Result<FieldElem> {
            match self.u.as_slice() {
                [u] => Ok(*u),
                _ => Err(Error::Parse(format!(
                    "{family} spec needs exactly one `u` (a normal element)"
                ))),
            }
        };
        let c = || require(self.c.as_deref(), "c", family);
        let eps = self.eps.unwrap_or(false);
        match family {
            Family::KasamiGeneral => kasami_general(
                field,
                require(self.lambda, "lambda", family)?,
                &self.u,
                poly,
                KasamiOptions {
                    strict_literal: self.strict,
                },
            ),
            Family::KasamiSubfield => {
                kasami_subfield(field, self.lambda.unwrap_or(FieldElem::ONE), &self.u, poly)
            }
            Family::KasamiIdempotent => kasami_idempotent(field, single_u()?, poly),
            Family::KasamiAntiSelfDual => kasami_antiselfdual(field, poly),
            Family::QuadIdem => quad_idempotent_family(field, c()?, eps, single_u()?, poly),
            Family::QuadFamily => quad_family(field, c()?, eps, &self.u, poly),
            Family::GoldLike => {
                let lambda = match self.lambda {
                    Some(l) => l,
                    None => gold_lambda(field)?,
                };
                gold_like(field, lambda, &self.u, poly)
            }
            Family::Niho => {
                let k = require(self.k, "k", family)?;
                if self.orbit {
                    niho_idempotent(field, k, single_u()?, poly)
                } else {
                    niho_family(field, k, &self.u, poly)
                }
            }
            Family::MMLinear => mm_linear(
                field,
                require(self.pi.as_ref(), "pi", family)?,
                self.b.unwrap_or(FieldElem::ZERO),
                &self.pairs,
                poly,
            ),
            Family::MMMonomial => {
                mm_monomial(field, require(self.s, "s", family)?, &self.pairs, poly)
            }
        }
    }
}
