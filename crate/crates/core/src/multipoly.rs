//! Reduced polynomials `F(X_1, ..., X_tau)` over F_2 and their Fourier coefficients.
//!
//! A monomial is a `tau`-bit mask, bit `i` standing for `X_(i+1)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::boolfun::{fwht, Domain, TruthTable};
use crate::error::{Error, Result};
use crate::gf2n::{FieldElem, FieldSpec};

/// Largest supported variable count.
pub const MAX_TAU: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedPoly {
    tau: u32,
    monomials: BTreeSet<u32>,
}

fn check_tau(tau: u32) -> Result<()> {
    if tau == 0 || tau > MAX_TAU {
        return Err(Error::BadDimension(format!(
            "variable count must be in 1..={MAX_TAU}, got {tau}"
        )));
    }
    Ok(())
}

impl ReducedPoly {
    pub fn zero(tau: u32) -> Result<Self> {
        check_tau(tau)?;
        Ok(ReducedPoly {
            tau,
            monomials: BTreeSet::new(),
        })
    }

    /// Builds a polynomial from monomial masks; repeated masks cancel.
    pub fn new(tau: u32, monomials: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut p = ReducedPoly::zero(tau)?;
        for mask in monomials {
            if mask >> tau != 0 {
                return Err(Error::Parse(format!(
                    "monomial mask {mask:#b} uses more than {tau} variables"
                )));
            }
            p.toggle(mask);
        }
        Ok(p)
    }

    /// Single variable `X_(i+1)`.
    pub fn variable(tau: u32, i: u32) -> Result<Self> {
        ReducedPoly::new(tau, [1 << i])
    }

    fn toggle(&mut self, mask: u32) {
        if !self.monomials.remove(&mask) {
            self.monomials.insert(mask);
        }
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn monomials(&self) -> impl Iterator<Item = u32> + '_ {
        self.monomials.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Maximum monomial weight; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.monomials
            .iter()
            .map(|m| m.count_ones())
            .max()
            .unwrap_or(0)
    }

    /// Sum of two polynomials over the same variables.
    pub fn add(&self, other: &ReducedPoly) -> Result<ReducedPoly> {
        if self.tau != other.tau {
            return Err(Error::ArityMismatch {
                expected: self.tau,
                got: other.tau as usize,
            });
        }
        Ok(ReducedPoly {
            tau: self.tau,
            monomials: self
                .monomials
                .symmetric_difference(&other.monomials)
                .copied()
                .collect(),
        })
    }

    /// `F(X)` with `X` given as a `tau`-bit vector.
    pub fn eval(&self, x: u32) -> bool {
        self.monomials.iter().filter(|&&m| x & m == m).count() % 2 == 1
    }

    /// Value table over all `2^tau` inputs, computed by the Möbius transform.
    pub fn value_table(&self) -> Vec<bool> {
        let mut table = vec![false; 1 << self.tau];
        for &m in &self.monomials {
            table[m as usize] = true;
        }
        let len = table.len();
        let mut half = 1;
        while half < len {
            for block in (0..len).step_by(2 * half) {
                for i in block..block + half {
                    table[i + half] ^= table[i];
                }
            }
            half *= 2;
        }
        table
    }

    /// Scaled Fourier coefficients `2^tau * c_w`.
    pub fn fourier(&self) -> FourierCoeffs {
        let mut chat: Vec<i64> = self
            .value_table()
            .into_iter()
            .map(|b| if b { -1 } else { 1 })
            .collect();
        fwht(&mut chat);
        FourierCoeffs {
            tau: self.tau,
            chat,
        }
    }

    fn rotate(&self, mask: u32) -> u32 {
        let full = (1u32 << self.tau) - 1;
        ((mask << 1) | (mask >> (self.tau - 1))) & full
    }

    /// Invariance under `X_i -> X_(i+1)` (indices cyclic).
    pub fn is_rotation_symmetric(&self) -> bool {
        self.monomials
            .iter()
            .all(|&m| self.monomials.contains(&self.rotate(m)))
    }

    /// `e_d(X_1, ..., X_tau)`: all monomials of weight `d`.
    pub fn elementary_symmetric(tau: u32, d: u32) -> Result<Self> {
        check_tau(tau)?;
        if d == 0 || d > tau {
            return Err(Error::DegreeOutOfRange { degree: d, tau });
        }
        ReducedPoly::new(tau, (0u32..1 << tau).filter(|m| m.count_ones() == d))
    }

    /// Sum of the distinct cyclic shifts of one monomial.
    pub fn rotation_closure(mask: u32, tau: u32) -> Result<Self> {
        check_tau(tau)?;
        if mask == 0 {
            return Err(Error::ZeroMask);
        }
        let mut p = ReducedPoly::zero(tau)?;
        let mut cur = mask & ((1 << tau) - 1);
        if cur != mask {
            return Err(Error::Parse(format!(
                "monomial mask {mask:#b} uses more than {tau} variables"
            )));
        }
        while p.monomials.insert(cur) {
            cur = p.rotate(cur);
        }
        Ok(p)
    }

    /// Parses `X1*X3+X2`, `0` or `1` into a polynomial over exactly `tau` variables.
    pub fn parse(s: &str, tau: u32) -> Result<Self> {
        let mut p = ReducedPoly::zero(tau)?;
        for mask in parse_terms(s)? {
            if mask >> tau != 0 {
                return Err(Error::Parse(format!("`{s}` uses variables beyond X{tau}")));
            }
            p.toggle(mask);
        }
        Ok(p)
    }
}

fn parse_terms(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = Vec::new();
    for term in s.split('+') {
        let term = term.trim();
        match term {
            "0" => continue,
            "1" => out.push(0),
            _ => {
                let mut mask = 0u32;
                for factor in term.split('*') {
                    let idx: u32 = factor
                        .trim()
                        .strip_prefix('X')
                        .and_then(|v| v.parse().ok())
                        .filter(|&i| (1..=MAX_TAU).contains(&i))
                        .ok_or_else(|| Error::Parse(format!("bad monomial `{term}`")))?;
                    mask |= 1 << (idx - 1);
                }
                out.push(mask);
            }
        }
    }
    Ok(out)
}

impl FromStr for ReducedPoly {
    type Err = Error;

    /// Infers the variable count from the largest index used (at least 1).
    fn from_str(s: &str) -> Result<Self> {
        let terms = parse_terms(s)?;
        let tau = terms
            .iter()
            .map(|m| 32 - m.leading_zeros())
            .max()
            .unwrap_or(0)
            .max(1);
        ReducedPoly::new(tau, terms)
    }
}

impl fmt::Display for ReducedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .monomials
            .iter()
            .map(|&m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    (0..self.tau)
                        .filter(|i| m >> i & 1 == 1)
                        .map(|i| format!("X{}", i + 1))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

/// `chat[w] = sum_X (-1)^(F(X) + w.X)`, i.e. `2^tau` times the Fourier coefficient `c_w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierCoeffs {
    tau: u32,
    chat: Vec<i64>,
}

impl FourierCoeffs {
    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn scaled(&self) -> &[i64] {
        &self.chat
    }

    /// `sum_w chat[w] (-1)^(w.X)`, which equals `2^tau (-1)^F(X)`.
    pub fn reconstruct(&self, x: u32) -> i64 {
        self.chat
            .iter()
            .enumerate()
            .map(|(w, &c)| {
                if (w as u32 & x).count_ones() % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .sum()
    }
}

/// `x -> F(lin_1(x), ..., lin_tau(x))` where `lin_i(x)` is the parity of `x & masks[i]`.
pub fn compose_linear(domain: Domain, poly: &ReducedPoly, masks: &[u32]) -> Result<TruthTable> {
    if masks.len() != poly.tau() as usize {
        return Err(Error::ArityMismatch {
            expected: poly.tau(),
            got: masks.len(),
        });
    }
    let values = poly.value_table();
    Ok(TruthTable::from_fn(domain, |x| {
        let args = masks.iter().enumerate().fold(0usize, |acc, (i, &mask)| {
            acc | (((x & mask).count_ones() & 1) as usize) << i
        });
        values[args]
    }))
}

/// `x -> F(Tr(u_1 x), ..., Tr(u_tau x))` over the field.
pub fn compose_traces(field: FieldSpec, poly: &ReducedPoly, u: &[FieldElem]) -> Result<TruthTable> {
    if let Some(i) = u.iter().position(|e| e.is_zero()) {
        return Err(Error::ZeroCoefficient(i + 1));
    }
    let masks: Vec<u32> = u.iter().map(|&e| field.pairing_image(e)).collect();
    compose_linear(Domain::Field(field), poly, &masks)
}
