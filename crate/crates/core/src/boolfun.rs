//! Boolean functions on the index space of a field (or of the bivariate grid
//! `F_(2^m) x F_(2^m)`), with the exact Walsh–Hadamard and Möbius transforms.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2n::{parse_hex, FieldElem, FieldSpec};

/// Input space of a Boolean function together with its trace pairing.
///
/// `Field(k)` is `F_(2^n)` paired by `Tr_1^n(beta x)`. `Grid(k)` is
/// `F_(2^m) x F_(2^m)` (with `k` of degree `m`) paired by
/// `Tr_1^m(beta_1 x + beta_2 y)`; a point `(x, y)` has index `idx(x) * 2^m + idx(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Field(FieldSpec),
    Grid(FieldSpec),
}

impl Domain {
    pub fn field(&self) -> &FieldSpec {
        match self {
            Domain::Field(k) | Domain::Grid(k) => k,
        }
    }

    pub fn num_vars(&self) -> u32 {
        match self {
            Domain::Field(k) => k.n(),
            Domain::Grid(k) => 2 * k.n(),
        }
    }

    pub fn size(&self) -> usize {
        1usize << self.num_vars()
    }

    /// Mask `v` such that the pairing of `beta` with `x` is the parity of `x & v`.
    pub fn pairing_image(&self, beta: u32) -> u32 {
        match self {
            Domain::Field(k) => k.pairing_image(FieldElem::from_index(beta)),
            Domain::Grid(k) => {
                let m = k.n();
                let lo = beta & ((1 << m) - 1);
                let hi = beta >> m;
                k.pairing_image(FieldElem::from_index(hi)) << m
                    | k.pairing_image(FieldElem::from_index(lo))
            }
        }
    }

    /// `pairing_image` for every index, built incrementally from the basis columns.
    fn pairing_table(&self) -> Vec<u32> {
        let cols: Vec<u32> = (0..self.num_vars())
            .map(|i| self.pairing_image(1 << i))
            .collect();
        let mut table = vec![0u32; self.size()];
        for beta in 1..self.size() {
            let low = beta.trailing_zeros() as usize;
            table[beta] = table[beta & (beta - 1)] ^ cols[low];
        }
        table
    }

    /// Index of the Frobenius image (`x^2`, or `(x^2, y^2)` on the grid).
    pub fn square_index(&self, i: u32) -> u32 {
        match self {
            Domain::Field(k) => k.square(FieldElem::from_index(i)).index(),
            Domain::Grid(k) => {
                let m = k.n();
                let lo = FieldElem::from_index(i & ((1 << m) - 1));
                let hi = FieldElem::from_index(i >> m);
                k.square(hi).index() << m | k.square(lo).index()
            }
        }
    }

    fn header(&self) -> String {
        match self {
            Domain::Field(k) => format!("BF n={} mod=0x{:x}", k.n(), k.modulus()),
            Domain::Grid(k) => format!("BF n={} mod=0x{:x} grid", 2 * k.n(), k.modulus()),
        }
    }

    fn parse_header(line: &str) -> Result<Domain> {
        let bad = || Error::Parse(format!("bad truth-table header `{line}`"));
        let mut parts = line.split_whitespace();
        if parts.next() != Some("BF") {
            return Err(bad());
        }
        let n: u32 = parts
            .next()
            .and_then(|p| p.strip_prefix("n="))
            .and_then(|v| v.parse().ok())
            .ok_or_else(bad)?;
        let modulus = parts
            .next()
            .and_then(|p| p.strip_prefix("mod="))
            .and_then(parse_hex)
            .ok_or_else(bad)?;
        match parts.next() {
            None => Ok(Domain::Field(FieldSpec::new(n, Some(modulus))?)),
            Some("grid") if n.is_multiple_of(2) && parts.next().is_none() => {
                Ok(Domain::Grid(FieldSpec::new(n / 2, Some(modulus))?))
            }
            _ => Err(bad()),
        }
    }
}

/// A packed truth table of `2^n` bits; bit `i` is `f(element i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    domain: Domain,
    words: Vec<u64>,
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruthTable")
            .field("domain", &self.domain)
            .field("weight", &self.weight())
            .finish()
    }
}

fn word_count(size: usize) -> usize {
    size.div_ceil(64)
}

/// Mask of the valid bits in the last word.
fn tail_mask(size: usize) -> u64 {
    match size % 64 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

impl TruthTable {
    pub fn zero(domain: Domain) -> Self {
        TruthTable {
            domain,
            words: vec![0; word_count(domain.size())],
        }
    }

    pub fn from_fn(domain: Domain, f: impl Fn(u32) -> bool) -> Self {
        let mut t = TruthTable::zero(domain);
        for i in 0..domain.size() {
            if f(i as u32) {
                t.words[i / 64] |= 1 << (i % 64);
            }
        }
        t
    }

    /// Univariate table over a field, evaluated element by element.
    pub fn from_field_fn(field: FieldSpec, f: impl Fn(FieldElem) -> bool) -> Self {
        TruthTable::from_fn(Domain::Field(field), |i| f(FieldElem::from_index(i)))
    }

    pub fn from_bits(domain: Domain, bits: &[bool]) -> Result<Self> {
        if bits.len() != domain.size() {
            return Err(Error::Parse(format!(
                "expected {} bits, got {}",
                domain.size(),
                bits.len()
            )));
        }
        Ok(TruthTable::from_fn(domain, |i| bits[i as usize]))
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn num_vars(&self) -> u32 {
        self.domain.num_vars()
    }

    pub fn len(&self) -> usize {
        self.domain.size()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: u32) -> bool {
        let i = i as usize;
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len() as u32).map(|i| self.get(i))
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    fn check_same_domain(&self, other: &TruthTable) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Pointwise XOR.
    pub fn add(&self, other: &TruthTable) -> Result<TruthTable> {
        self.check_same_domain(other)?;
        Ok(TruthTable {
            domain: self.domain,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// Adds the constant `bit` to every value.
    pub fn add_const(&self, bit: bool) -> TruthTable {
        if !bit {
            return self.clone();
        }
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(self.len());
        }
        TruthTable {
            domain: self.domain,
            words,
        }
    }

    /// First index where the tables differ.
    pub fn first_difference(&self, other: &TruthTable) -> Result<Option<u32>> {
        self.check_same_domain(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map(|(j, (a, b))| (j * 64) as u32 + (a ^ b).trailing_zeros()))
    }

    /// Serializes to the two-line `BF` text format.
    pub fn to_file_string(&self) -> String {
        let bytes = (self.len() / 8).max(1);
        let mut hex = String::with_capacity(2 * bytes);
        for j in 0..bytes {
            let byte = (self.words[j / 8] >> (8 * (j % 8))) & 0xff;
            hex.push_str(&format!("{byte:02x}"));
        }
        format!("{}\n{}\n", self.domain.header(), hex)
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty truth-table file".into()))?;
        let domain = Domain::parse_header(header.trim())?;
        let hex = lines.next().unwrap_or("").trim();
        let bytes = (domain.size() / 8).max(1);
        if hex.len() != 2 * bytes || !hex.is_ascii() {
            return Err(Error::Parse(format!(
                "expected {} hex digits, got {}",
                2 * bytes,
                hex.len()
            )));
        }
        let mut t = TruthTable::zero(domain);
        for j in 0..bytes {
            let byte = u64::from_str_radix(&hex[2 * j..2 * j + 2], 16)
                .map_err(|e| Error::Parse(format!("bad hex byte: {e}")))?;
            t.words[j / 8] |= byte << (8 * (j % 8));
        }
        if t.words
            .last()
            .is_some_and(|&w| w & !tail_mask(domain.size()) != 0)
        {
            return Err(Error::Parse("non-zero padding bits".into()));
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing data after truth table".into()));
        }
        Ok(t)
    }
}

/// In-place unnormalized Walsh–Hadamard butterfly over the index bits:
/// `a[v] <- sum_x a[x] (-1)^(v . x)`.
pub fn fwht(a: &mut [i64]) {
    let len = a.len();
    assert!(len.is_power_of_two(), "length must be a power of two");
    let mut half = 1;
    while half < len {
        for block in (0..len).step_by(2 * half) {
            for i in block..block + half {
                let (x, y) = (a[i], a[i + half]);
                a[i] = x + y;
                a[i + half] = x - y;
            }
        }
        half *= 2;
    }
}

/// Walsh spectrum `W_f(beta) = sum_x (-1)^(f(x) + <beta, x>)`, indexed by `beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    domain: Domain,
    values: Vec<i64>,
}

impl WalshSpectrum {
    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, beta: u32) -> i64 {
        self.values[beta as usize]
    }

    pub fn max_abs(&self) -> u64 {
        self.values
            .iter()
            .map(|v| v.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    pub fn min_abs(&self) -> u64 {
        self.values
            .iter()
            .map(|v| v.unsigned_abs())
            .min()
            .unwrap_or(0)
    }

    /// `sum_beta W(beta)^2`.
    pub fn parseval_sum(&self) -> i128 {
        self.values.iter().map(|&v| (v as i128) * (v as i128)).sum()
    }

    /// First `beta` with `|W(beta)| != 2^(n/2)`, if any.
    pub fn bent_violation(&self) -> Result<Option<u32>> {
        let n = self.domain.num_vars();
        if !n.is_multiple_of(2) {
            return Err(Error::OddDimension(n));
        }
        let target = 1u64 << (n / 2);
        Ok(self
            .values
            .iter()
            .position(|v| v.unsigned_abs() != target)
            .map(|b| b as u32))
    }

    pub fn is_bent(&self) -> Result<bool> {
        Ok(self.bent_violation()?.is_none())
    }

    /// The dual `f~` with `W_f(beta) = 2^(n/2) (-1)^f~(beta)`.
    pub fn dual(&self) -> Result<TruthTable> {
        if let Some(beta) = self.bent_violation()? {
            return Err(Error::NotBent {
                beta,
                value: self.get(beta),
            });
        }
        Ok(TruthTable::from_fn(self.domain, |b| {
            self.values[b as usize] < 0
        }))
    }
}

/// Fast Walsh transform: butterfly on the sign vector, then re-indexed through the trace pairing.
pub fn walsh(f: &TruthTable) -> WalshSpectrum {
    let mut hat: Vec<i64> = f.bits().map(|b| if b { -1 } else { 1 }).collect();
    fwht(&mut hat);
    let pairing = f.domain.pairing_table();
    WalshSpectrum {
        domain: f.domain,
        values: pairing.iter().map(|&v| hat[v as usize]).collect(),
    }
}

/// Bent-function duality relation between `f` and a candidate dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DualityClass {
    SelfDual,
    AntiSelfDual,
    Neither,
}

impl fmt::Display for DualityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DualityClass::SelfDual => "self-dual",
            DualityClass::AntiSelfDual => "anti-self-dual",
            DualityClass::Neither => "neither",
        })
    }
}

pub fn duality_class(f: &TruthTable, fdual: &TruthTable) -> Result<DualityClass> {
    let diff = f.add(fdual)?;
    Ok(match diff.weight() {
        0 => DualityClass::SelfDual,
        w if w == f.len() as u64 => DualityClass::AntiSelfDual,
        _ => DualityClass::Neither,
    })
}

const IN_WORD_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Binary Möbius transform (truth table <-> ANF coefficients). It is an involution.
pub fn moebius(f: &TruthTable) -> TruthTable {
    let n = f.num_vars() as usize;
    let mut words = f.words.clone();
    for (s, &mask) in IN_WORD_MASKS.iter().enumerate().take(n.min(6)) {
        let shift = 1 << s;
        for w in words.iter_mut() {
            *w ^= (*w & mask) << shift;
        }
    }
    let mut stride = 1;
    while stride < words.len() {
        for block in (0..words.len()).step_by(2 * stride) {
            for j in block..block + stride {
                words[j + stride] ^= words[j];
            }
        }
        stride *= 2;
    }
    TruthTable {
        domain: f.domain,
        words,
    }
}

/// Algebraic normal form: the set of monomials (as variable masks) with coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnfPoly {
    num_vars: u32,
    monomials: Vec<u32>,
}

impl AnfPoly {
    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn monomials(&self) -> &[u32] {
        &self.monomials
    }

    /// Maximum monomial weight; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.monomials
            .iter()
            .map(|m| m.count_ones())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for AnfPoly {
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
                    (0..self.num_vars)
                        .filter(|i| m >> i & 1 == 1)
                        .map(|i| format!("x{i}"))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

pub fn anf(f: &TruthTable) -> AnfPoly {
    let coeffs = moebius(f);
    AnfPoly {
        num_vars: f.num_vars(),
        monomials: (0..f.len() as u32).filter(|&i| coeffs.get(i)).collect(),
    }
}

/// Algebraic degree; the zero function has degree 0.
pub fn degree(f: &TruthTable) -> u32 {
    let coeffs = moebius(f);
    (0..f.len() as u32)
        .filter(|&i| coeffs.get(i))
        .map(|i| i.count_ones())
        .max()
        .unwrap_or(0)
}

/// `f(x^2) = f(x)` for every `x`.
pub fn is_idempotent(f: &TruthTable) -> bool {
    (0..f.len() as u32).all(|i| f.get(f.domain.square_index(i)) == f.get(i))
}
