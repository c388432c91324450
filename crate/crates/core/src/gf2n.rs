//! Arithmetic in GF(2^n) over a polynomial basis.
//!
//! Elements are `n`-bit masks: bit `i` is the coefficient of `z^i`, where `z`
//! is a root of the field modulus. The same mask doubles as the element's index
//! in truth tables and spectra.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{self, XorBasis};

pub const MAX_DEGREE: u32 = 28;

/// Lexicographically smallest irreducible polynomial of each degree 1..=28.
const DEFAULT_MODULI: [u64; MAX_DEGREE as usize] = [
    0x2, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021,
    0x8003, 0x1002b, 0x20009, 0x40009, 0x80027, 0x100009, 0x200005, 0x400003, 0x800021, 0x100001b,
    0x2000009, 0x400001b, 0x8000027, 0x10000003,
];

/// An element of GF(2^n), stored by its coordinate mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Wraps a raw coordinate mask. The caller guarantees it fits the field.
    pub const fn from_index(index: u32) -> Self {
        FieldElem(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        FieldElem(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl std::ops::AddAssign for FieldElem {
    fn add_assign(&mut self, rhs: FieldElem) {
        self.0 ^= rhs.0;
    }
}

impl fmt::LowerHex for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// GF(2^n) with a fixed irreducible modulus.
///
/// Besides the modulus it caches the trace pairing
/// `pairing[i] = { j : Tr(z^(i+j)) = 1 }`, so that `Tr(a x)` is the parity of
/// `x & pairing_image(a)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    n: u32,
    modulus: u64,
    pairing: [u32; MAX_DEGREE as usize],
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self})")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={},mod=0x{:x}", self.n, self.modulus)
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected `n=<int>,mod=0x<hex>`, got `{s}`"));
        let (n_part, mod_part) = s.trim().split_once(',').ok_or_else(bad)?;
        let n = n_part
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.parse::<u32>().ok())
            .ok_or_else(bad)?;
        let modulus = mod_part
            .trim()
            .strip_prefix("mod=")
            .and_then(parse_hex)
            .ok_or_else(bad)?;
        FieldSpec::new(n, Some(modulus))
    }
}

pub(crate) fn parse_hex(s: &str) -> Option<u64> {
    let s = s.trim();
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X"))?;
    u64::from_str_radix(digits, 16).ok()
}

fn poly_degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

fn poly_mod(mut a: u64, m: u64) -> u64 {
    let dm = poly_degree(m).expect("non-zero modulus");
    while let Some(da) = poly_degree(a) {
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

pub(crate) fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test: `f` of degree `d` is irreducible iff
/// `gcd(x^(2^i) - x, f) = 1` for every `1 <= i <= d/2`.
pub fn is_irreducible(f: u64) -> bool {
    let Some(d) = poly_degree(f) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let mut h = 0b10u64; // x
    for _ in 0..d / 2 {
        h = poly_mod(clmul(h, h), f);
        if poly_gcd(f, h ^ 0b10) != 1 {
            return false;
        }
    }
    true
}

impl FieldSpec {
    /// Builds GF(2^n); `None` selects the built-in default modulus.
    pub fn new(n: u32, modulus: Option<u64>) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(n));
        }
        let modulus = modulus.unwrap_or(DEFAULT_MODULI[n as usize - 1]);
        if poly_degree(modulus) != Some(n) {
            return Err(Error::ModulusDegree { modulus, degree: n });
        }
        if !is_irreducible(modulus) {
            return Err(Error::ReducibleModulus { modulus });
        }
        let mut field = FieldSpec {
            n,
            modulus,
            pairing: [0; MAX_DEGREE as usize],
        };
        // Tr(z^k) for k < 2n - 1, then the symmetric pairing masks.
        let z = field.generator();
        let mut power = FieldElem::ONE;
        let mut traces = Vec::with_capacity(2 * n as usize);
        for _ in 0..2 * n - 1 {
            traces.push(field.trace_by_definition(power));
            power = field.mul(power, z);
        }
        for i in 0..n as usize {
            field.pairing[i] = (0..n as usize)
                .filter(|&j| traces[i + j])
                .fold(0, |acc, j| acc | 1 << j);
        }
        Ok(field)
    }

    /// The default field of degree `n`.
    pub fn default_for(n: u32) -> Result<Self> {
        FieldSpec::new(n, None)
    }

    pub fn default_modulus(n: u32) -> Option<u64> {
        (1..=MAX_DEGREE)
            .contains(&n)
            .then(|| DEFAULT_MODULI[n as usize - 1])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `n / 2` for even `n`.
    pub fn m(&self) -> Option<u32> {
        self.n.is_multiple_of(2).then_some(self.n / 2)
    }

    /// Number of elements, `2^n`.
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    /// Multiplicative group order `2^n - 1`.
    pub fn group_order(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn elem(&self, index: u64) -> Result<FieldElem> {
        if index >> self.n != 0 {
            return Err(Error::Parse(format!(
                "element 0x{index:x} does not fit in {} bits",
                self.n
            )));
        }
        Ok(FieldElem(index as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.size() as u32).map(FieldElem)
    }

    /// The polynomial-basis generator `z` (the root of the modulus).
    pub fn generator(&self) -> FieldElem {
        FieldElem::from_index(if self.n == 1 { 0 } else { 0b10 })
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(poly_mod(clmul(a.0 as u64, b.0 as u64), self.modulus) as u32)
    }

    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    /// `a^e`; exponents are reduced modulo `2^n - 1` for non-zero `a`, and `0^0 = 1`.
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if a.is_zero() {
            return if e == 0 {
                FieldElem::ONE
            } else {
                FieldElem::ZERO
            };
        }
        let mut e = e % self.group_order();
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// `a^(2^j)`, with `j` taken modulo `n`.
    pub fn frobenius(&self, a: FieldElem, j: u32) -> FieldElem {
        (0..j % self.n).fold(a, |acc, _| self.square(acc))
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.group_order() - 1))
    }

    pub fn sqrt(&self, a: FieldElem) -> FieldElem {
        self.frobenius(a, self.n - 1)
    }

    /// The linear-functional mask of `x -> Tr(a x)`.
    pub fn pairing_image(&self, a: FieldElem) -> u32 {
        let mut acc = 0u32;
        let mut bits = a.0;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc ^= self.pairing[i];
            bits &= bits - 1;
        }
        acc
    }

    /// Absolute trace `Tr_1^n(x)`.
    pub fn trace_abs(&self, x: FieldElem) -> bool {
        (x.0 & self.pairing[0]).count_ones() & 1 == 1
    }

    /// `Tr_1^n(a x)` without forming the product.
    pub fn trace_product(&self, a_image: u32, x: FieldElem) -> bool {
        (x.0 & a_image).count_ones() & 1 == 1
    }

    fn trace_by_definition(&self, x: FieldElem) -> bool {
        let mut acc = FieldElem::ZERO;
        let mut y = x;
        for _ in 0..self.n {
            acc += y;
            y = self.square(y);
        }
        debug_assert!(acc.0 <= 1);
        acc.0 == 1
    }

    /// Relative trace `Tr_k^n(x) = x + x^(2^k) + ... + x^(2^(n-k))`.
    pub fn trace_rel(&self, x: FieldElem, k: u32) -> Result<FieldElem> {
        if k == 0 || !self.n.is_multiple_of(k) {
            return Err(Error::NotADivisor { k, n: self.n });
        }
        let mut acc = FieldElem::ZERO;
        let mut y = x;
        for _ in 0..self.n / k {
            acc += y;
            y = self.frobenius(y, k);
        }
        Ok(acc)
    }

    /// Partial trace `x + x^2 + ... + x^(2^(k-1))` with no membership check.
    pub(crate) fn partial_trace(&self, x: FieldElem, k: u32) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        let mut y = x;
        for _ in 0..k {
            acc += y;
            y = self.square(y);
        }
        acc
    }

    pub fn in_subfield(&self, y: FieldElem, k: u32) -> bool {
        k != 0 && self.n.is_multiple_of(k) && self.frobenius(y, k) == y
    }

    /// Absolute trace of `y` viewed in the subfield of degree `m`.
    pub fn trace_sub(&self, y: FieldElem, m: u32) -> Result<bool> {
        if !self.in_subfield(y, m) {
            return Err(Error::NotInSubfield {
                elem: y.0,
                degree: m,
            });
        }
        let t = self.partial_trace(y, m);
        debug_assert!(t.0 <= 1);
        Ok(t.0 == 1)
    }

    /// True iff the elements are linearly independent over F_2.
    pub fn lin_indep(&self, elems: &[FieldElem]) -> bool {
        let vecs: Vec<u64> = elems.iter().map(|e| e.0 as u64).collect();
        linalg::is_independent(&vecs)
    }

    /// Frobenius orbit `u, u^2, ..., u^(2^(d-1))`.
    pub fn orbit(&self, u: FieldElem, d: u32) -> Vec<FieldElem> {
        let mut out = Vec::with_capacity(d as usize);
        let mut y = u;
        for _ in 0..d {
            out.push(y);
            y = self.square(y);
        }
        out
    }

    /// Normality of `u` in the subfield of degree `d` (with `d = n` for the whole field).
    pub fn is_normal(&self, u: FieldElem, d: u32) -> Result<bool> {
        if u.is_zero() {
            return Err(Error::ZeroElement);
        }
        if !self.in_subfield(u, d) {
            return Err(Error::NotInSubfield {
                elem: u.0,
                degree: d,
            });
        }
        Ok(self.lin_indep(&self.orbit(u, d)))
    }

    /// Basis of `T_0 = { y in F_(2^m) : Tr_1^m(y) = 0 }` for `n = 2m`.
    pub fn trace_zero_basis(&self, m: u32) -> Result<Vec<FieldElem>> {
        if m < 2 {
            return Err(Error::DimensionTooSmall(format!(
                "trace-zero hyperplane needs m >= 2, got {m}"
            )));
        }
        if self.n != 2 * m {
            return Err(Error::NotADivisor { k: m, n: self.n });
        }
        let sub = SubfieldView::new(*self, m)?;
        let mut basis = XorBasis::new();
        let mut out = Vec::with_capacity(m as usize - 1);
        for &y in sub.members() {
            if y.is_zero() || self.trace_sub(y, m)? {
                continue;
            }
            if basis.insert(y.0 as u64, 0).is_none() {
                out.push(y);
                if out.len() == m as usize - 1 {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Solves `lambda + lambda^(2^e) = target`, returning the smallest-index solution.
    pub fn solve_semilinear(&self, e: u32, target: FieldElem) -> Result<FieldElem> {
        let columns: Vec<u64> = (0..self.n)
            .map(|i| {
                let b = FieldElem(1 << i);
                (b + self.frobenius(b, e)).0 as u64
            })
            .collect();
        linalg::solve_min(&columns, target.0 as u64)
            .map(|x| FieldElem(x as u32))
            .ok_or(Error::NoSolution)
    }
}

/// The subfield of degree `degree` inside a parent field, with members listed in index order.
#[derive(Debug, Clone)]
pub struct SubfieldView {
    parent: FieldSpec,
    degree: u32,
    basis: Vec<FieldElem>,
    members: Vec<FieldElem>,
}

impl SubfieldView {
    pub fn new(parent: FieldSpec, degree: u32) -> Result<Self> {
        if degree == 0 || !parent.n().is_multiple_of(degree) {
            return Err(Error::NotADivisor {
                k: degree,
                n: parent.n(),
            });
        }
        // kernel of y -> y^(2^degree) + y
        let mut image = XorBasis::new();
        let mut kernel = Vec::new();
        for i in 0..parent.n() {
            let b = FieldElem(1 << i);
            let c = (b + parent.frobenius(b, degree)).0 as u64;
            if let Some(dep) = image.insert(c, 1 << i) {
                kernel.push(dep);
            }
        }
        let mut echelon = XorBasis::new();
        let basis: Vec<FieldElem> = kernel
            .into_iter()
            .filter(|&k| echelon.insert(k, 0).is_none())
            .map(|k| FieldElem(k as u32))
            .collect();
        debug_assert_eq!(basis.len(), degree as usize);
        let mut members: Vec<FieldElem> = (0u32..1 << degree)
            .map(|combo| {
                basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| combo >> i & 1 == 1)
                    .fold(FieldElem::ZERO, |acc, (_, &b)| acc + b)
            })
            .collect();
        members.sort_unstable();
        Ok(SubfieldView {
            parent,
            degree,
            basis,
            members,
        })
    }

    /// The half-degree subfield `F_(2^m)` of `F_(2^(2m))`.
    pub fn half(parent: FieldSpec) -> Result<Self> {
        let m = parent.m().ok_or_else(|| {
            Error::BadDimension(format!("n = {} is odd, no half subfield", parent.n()))
        })?;
        SubfieldView::new(parent, m)
    }

    pub fn parent(&self) -> &FieldSpec {
        &self.parent
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn members(&self) -> &[FieldElem] {
        &self.members
    }

    pub fn basis(&self) -> &[FieldElem] {
        &self.basis
    }

    pub fn contains(&self, y: FieldElem) -> bool {
        self.members.binary_search(&y).is_ok()
    }

    /// Absolute trace of a member.
    pub fn trace(&self, y: FieldElem) -> Result<bool> {
        self.parent.trace_sub(y, self.degree)
    }

    pub fn is_normal(&self, u: FieldElem) -> Result<bool> {
        self.parent.is_normal(u, self.degree)
    }

    /// First normal member at or after position `seed` (cyclically, in index order).
    pub fn find_normal(&self, seed: u64) -> FieldElem {
        let len = self.members.len();
        let start = (seed % len as u64) as usize;
        (0..len)
            .map(|i| self.members[(start + i) % len])
            .find(|&u| !u.is_zero() && self.is_normal(u).unwrap_or(false))
            .expect("every finite field has a normal element")
    }
}

/// Extended Euclid: inverse of `a` modulo `modulus`, if it exists.
pub fn mod_inverse(a: u64, modulus: u64) -> Option<u64> {
    if modulus == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % modulus as i128, modulus as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(modulus as i128) as u64)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
