//! Bent functions of the form `g(x) + F(Tr(u_1 x), ..., Tr(u_tau x))` for the
//! Kasami, quadratic-idempotent, Gold-like, Niho and Maiorana–McFarland bases,
//! each with its precondition check and, where a closed form exists, the
//! predicted dual built pointwise from that closed form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::boolfun::{Domain, TruthTable};
use crate::error::{Error, Result};
use crate::gf2n::{gcd, mod_inverse, poly_gcd, FieldElem, FieldSpec};
use crate::linalg::BitMatrix;
use crate::multipoly::{compose_linear, compose_traces, ReducedPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    KasamiGeneral,
    KasamiSubfield,
    KasamiIdempotent,
    KasamiAntiSelfDual,
    QuadIdem,
    QuadFamily,
    GoldLike,
    Niho,
    MMLinear,
    MMMonomial,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::KasamiGeneral,
        Family::KasamiSubfield,
        Family::KasamiIdempotent,
        Family::KasamiAntiSelfDual,
        Family::QuadIdem,
        Family::QuadFamily,
        Family::GoldLike,
        Family::Niho,
        Family::MMLinear,
        Family::MMMonomial,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::KasamiGeneral => "KasamiGeneral",
            Family::KasamiSubfield => "KasamiSubfield",
            Family::KasamiIdempotent => "KasamiIdempotent",
            Family::KasamiAntiSelfDual => "KasamiAntiSelfDual",
            Family::QuadIdem => "QuadIdem",
            Family::QuadFamily => "QuadFamily",
            Family::GoldLike => "GoldLike",
            Family::Niho => "Niho",
            Family::MMLinear => "MMLinear",
            Family::MMMonomial => "MMMonomial",
        }
    }

    /// Whether the function lives on the bivariate grid rather than on the field.
    pub fn is_bivariate(&self) -> bool {
        matches!(self, Family::MMLinear | Family::MMMonomial)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

/// The base bent function and the shift vectors `u_i`, so that
/// `f = base + F(<u_1, .>, ..., <u_tau, .>)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub base: TruthTable,
    pub shifts: Vec<u32>,
    pub poly: ReducedPoly,
}

#[derive(Debug, Clone)]
pub struct ConstructedPair {
    pub family: Family,
    pub f: TruthTable,
    pub predicted_dual: Option<TruthTable>,
    pub decomposition: Decomposition,
    pub notes: String,
}

fn half_degree(field: &FieldSpec, min_m: u32) -> Result<u32> {
    match field.m() {
        Some(m) if m >= min_m => Ok(m),
        _ => Err(Error::BadDimension(format!(
            "need n = 2m with m >= {min_m}, got n = {}",
            field.n()
        ))),
    }
}

fn check_arity(poly: &ReducedPoly, got: usize, max_tau: u32) -> Result<()> {
    if poly.tau() as usize != got {
        return Err(Error::ArityMismatch {
            expected: poly.tau(),
            got,
        });
    }
    if poly.tau() > max_tau {
        return Err(Error::PreconditionViolated(format!(
            "tau = {} exceeds the bound {max_tau}",
            poly.tau()
        )));
    }
    Ok(())
}

fn check_nonzero(u: &[FieldElem]) -> Result<()> {
    match u.iter().position(|e| e.is_zero()) {
        Some(i) => Err(Error::ZeroCoefficient(i + 1)),
        None => Ok(()),
    }
}

fn check_in_subfield(field: &FieldSpec, u: &[FieldElem], degree: u32) -> Result<()> {
    match u.iter().find(|&&e| !field.in_subfield(e, degree)) {
        Some(e) => Err(Error::NotInSubfield {
            elem: e.index(),
            degree,
        }),
        None => Ok(()),
    }
}

fn check_fits(field: &FieldSpec, elems: &[FieldElem]) -> Result<()> {
    match elems.iter().find(|e| e.index() as usize >= field.size()) {
        Some(e) => Err(Error::Parse(format!(
            "element {e:#x} does not fit in {} bits",
            field.n()
        ))),
        None => Ok(()),
    }
}

fn bit_of(values: impl Iterator<Item = bool>) -> u32 {
    values
        .enumerate()
        .fold(0, |acc, (i, b)| acc | (b as u32) << i)
}

fn shifts_of(u: &[FieldElem]) -> Vec<u32> {
    u.iter().map(|e| e.index()).collect()
}

/// `x^(2^m + 1)`, the norm to the half subfield.
fn norm(field: &FieldSpec, m: u32, x: FieldElem) -> FieldElem {
    field.mul(field.frobenius(x, m), x)
}

/// Options for [`kasami_general`].
#[derive(Debug, Clone, Copy, Default)]
pub struct KasamiOptions {
    /// Also require the literal `Tr_1^n(lambda^-1 u_i^(2^m) u_j) = 0` for every pair.
    pub strict_literal: bool,
}

/// `Tr_1^m(lambda x^(2^m+1)) + F(Tr(u_1 x), ..., Tr(u_tau x))` with `u_i` anywhere in `F_(2^n)`.
///
/// Requires `Tr_1^m(lambda^-1 (u_i^(2^m) u_j + u_i u_j^(2^m))) = 0` for all `i < j`.
/// The predicted dual is
/// `Tr_1^m(lambda^-1 x^(2^m+1)) + F(X_1, ..., X_tau) + 1` with
/// `X_i = Tr_1^m(lambda^-1 (x^(2^m) u_i + x u_i^(2^m) + u_i^(2^m+1)))`.
pub fn kasami_general(
    field: FieldSpec,
    lambda: FieldElem,
    u: &[FieldElem],
    poly: &ReducedPoly,
    options: KasamiOptions,
) -> Result<ConstructedPair> {
    let m = half_degree(&field, 2)?;
    if lambda.is_zero() || !field.in_subfield(lambda, m) {
        return Err(Error::BadLambda);
    }
    check_fits(&field, u)?;
    check_arity(poly, u.len(), m)?;
    check_nonzero(u)?;
    let lambda_inv = field.inv(lambda)?;
    let conj: Vec<FieldElem> = u.iter().map(|&e| field.frobenius(e, m)).collect();
    for j in 0..u.len() {
        for i in 0..j {
            let sym = field.mul(conj[i], u[j]) + field.mul(u[i], conj[j]);
            if field.trace_sub(field.mul(lambda_inv, sym), m)? {
                return Err(Error::PreconditionViolated(format!(
                    "Tr_1^m(lambda^-1 (u_{0}^(2^m) u_{1} + u_{0} u_{1}^(2^m))) = 1 for pair ({0}, {1})",
                    i + 1,
                    j + 1
                )));
            }
            if options.strict_literal
                && field.trace_abs(field.mul(lambda_inv, field.mul(conj[i], u[j])))
            {
                return Err(Error::PreconditionViolated(format!(
                    "Tr_1^n(lambda^-1 u_{0}^(2^m) u_{1}) = 1 for pair ({0}, {1})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }

    let base = TruthTable::from_field_fn(field, |x| {
        field
            .trace_sub(field.mul(lambda, norm(&field, m, x)), m)
            .expect("norm lies in the subfield")
    });
    let f = base.add(&compose_traces(field, poly, u)?)?;

    let u_norms: Vec<FieldElem> = u.iter().map(|&e| norm(&field, m, e)).collect();
    let values = poly.value_table();
    let sub_trace = |y: FieldElem| {
        field
            .trace_sub(field.mul(lambda_inv, y), m)
            .expect("argument lies in the subfield")
    };
    let predicted = TruthTable::from_field_fn(field, |x| {
        let xc = field.frobenius(x, m);
        let args = bit_of(
            (0..u.len())
                .map(|i| sub_trace(field.mul(xc, u[i]) + field.mul(x, conj[i]) + u_norms[i])),
        );
        sub_trace(norm(&field, m, x)) ^ values[args as usize] ^ true
    });

    Ok(ConstructedPair {
        family: Family::KasamiGeneral,
        f,
        predicted_dual: Some(predicted),
        decomposition: Decomposition {
            base,
            shifts: shifts_of(u),
            poly: poly.clone(),
        },
        notes: "Kasami base Tr_1^m(lambda x^(2^m+1)) plus F of absolute traces".into(),
    })
}

/// Kasami base with linearly independent `u_i` in the half subfield; the
/// pairwise condition then holds automatically.
///
/// Predicted dual: `Tr_1^m(lambda^-1 x^(2^m+1)) + F(..., Tr_1^n(lambda^-1 u_i x) + Tr_1^m(lambda^-1 u_i^2), ...) + 1`.
pub fn kasami_subfield(
    field: FieldSpec,
    lambda: FieldElem,
    u: &[FieldElem],
    poly: &ReducedPoly,
) -> Result<ConstructedPair> {
    let m = half_degree(&field, 2)?;
    check_fits(&field, u)?;
    check_nonzero(u)?;
    check_in_subfield(&field, u, m)?;
    if !field.lin_indep(u) {
        return Err(Error::NotIndependent);
    }
    let mut pair = kasami_general(field, lambda, u, poly, KasamiOptions::default())?;
    let lambda_inv = field.inv(lambda)?;
    let scaled: Vec<u32> = u
        .iter()
        .map(|&e| field.pairing_image(field.mul(lambda_inv, e)))
        .collect();
    let offsets: Vec<bool> = u
        .iter()
        .map(|&e| field.trace_sub(field.mul(lambda_inv, field.square(e)), m))
        .collect::<Result<_>>()?;
    let values = poly.value_table();
    let predicted = TruthTable::from_field_fn(field, |x| {
        let args = bit_of(
            scaled
                .iter()
                .zip(&offsets)
                .map(|(&mask, &off)| field.trace_product(mask, x) ^ off),
        );
        let q = field
            .trace_sub(field.mul(lambda_inv, norm(&field, m, x)), m)
            .expect("norm lies in the subfield");
        q ^ values[args as usize] ^ true
    });
    pair.family = Family::KasamiSubfield;
    pair.predicted_dual = Some(predicted);
    pair.notes = "Kasami base with independent subfield coefficients".into();
    Ok(pair)
}

fn check_normal_rotation(
    field: &FieldSpec,
    m: u32,
    u: FieldElem,
    poly: &ReducedPoly,
) -> Result<()> {
    if poly.tau() != m {
        return Err(Error::ArityMismatch {
            expected: poly.tau(),
            got: m as usize,
        });
    }
    check_fits(field, &[u])?;
    if !field.is_normal(u, m)? {
        return Err(Error::NotNormal(u.index()));
    }
    if !poly.is_rotation_symmetric() {
        return Err(Error::NotRotationSymmetric);
    }
    Ok(())
}

/// `Tr_1^m(x^(2^m+1)) + F(Tr(u x), Tr(u^2 x), ..., Tr(u^(2^(m-1)) x))` for `u` normal in
/// `F_(2^m)` and rotation-symmetric `F`: a bent idempotent.
///
/// Predicted dual: the same expression with every argument complemented, plus 1.
pub fn kasami_idempotent(
    field: FieldSpec,
    u: FieldElem,
    poly: &ReducedPoly,
) -> Result<ConstructedPair> {
    let m = half_degree(&field, 2)?;
    check_normal_rotation(&field, m, u, poly)?;
    let orbit = field.orbit(u, m);
    let mut pair = kasami_general(
        field,
        FieldElem::ONE,
        &orbit,
        poly,
        KasamiOptions::default(),
    )?;
    let masks: Vec<u32> = orbit.iter().map(|&e| field.pairing_image(e)).collect();
    let values = poly.value_table();
    let predicted = TruthTable::from_field_fn(field, |x| {
        let args = bit_of(masks.iter().map(|&mask| !field.trace_product(mask, x)));
        let q = field
            .trace_sub(norm(&field, m, x), m)
            .expect("norm lies in the subfield");
        q ^ values[args as usize] ^ true
    });
    pair.family = Family::KasamiIdempotent;
    pair.predicted_dual = Some(predicted);
    pair.notes = "Kasami bent idempotent over a normal-element orbit".into();
    Ok(pair)
}

/// `Tr_1^m(x^(2^m+1)) + F(Tr(u_1 x), ..., Tr(u_(m-1) x))` with `u_i` a basis of the
/// trace-zero hyperplane of `F_(2^m)`: anti-self-dual bent, dual `f + 1`.
pub fn kasami_antiselfdual(field: FieldSpec, poly: &ReducedPoly) -> Result<ConstructedPair> {
    let Some(m) = field.m() else {
        return Err(Error::BadDimension(format!("n = {} is odd", field.n())));
    };
    let basis = field.trace_zero_basis(m)?;
    if poly.tau() as usize != basis.len() {
        return Err(Error::ArityMismatch {
            expected: poly.tau(),
            got: basis.len(),
        });
    }
    let mut pair = kasami_subfield(field, FieldElem::ONE, &basis, poly)?;
    pair.predicted_dual = Some(pair.f.add_const(true));
    pair.family = Family::KasamiAntiSelfDual;
    pair.notes = "Kasami base over a trace-zero basis (anti-self-dual)".into();
    Ok(pair)
}

/// Quadratic idempotent
/// `g(x) = sum_(i<m) c_i Tr_1^n(x^(2^i+1)) + c_m Tr_1^m(x^(2^m+1)) + eps`, with `c = (c_0, ..., c_m)`.
pub fn quad_idempotent_g(field: FieldSpec, c: &[bool], eps: bool) -> Result<TruthTable> {
    let m = half_degree(&field, 1)?;
    if c.len() != m as usize + 1 {
        return Err(Error::BadDimension(format!(
            "expected {} coefficients c_0..c_m, got {}",
            m + 1,
            c.len()
        )));
    }
    Ok(TruthTable::from_field_fn(field, |x| {
        let mut acc = eps;
        for (i, &ci) in c[..m as usize].iter().enumerate() {
            if ci {
                acc ^= field.trace_abs(field.mul(field.frobenius(x, i as u32), x));
            }
        }
        if c[m as usize] {
            acc ^= field
                .trace_sub(norm(&field, m, x), m)
                .expect("norm lies in the subfield");
        }
        acc
    }))
}

/// Bentness of the quadratic idempotent with coefficients `c = (c_0, ..., c_m)`:
/// `gcd(sum_(i=1)^(m-1) c_i (X^i + X^(n-i)) + c_m X^m, X^n + 1) = 1` over F_2.
///
/// `c_0` only contributes the linear term `Tr(x)`, so it does not enter the test.
pub fn is_quad_bent_gcd(c: &[bool]) -> bool {
    if c.len() < 2 || c.len() > 32 {
        return false;
    }
    let m = c.len() - 1;
    let n = 2 * m;
    let mut p = 0u64;
    for (i, &ci) in c.iter().enumerate().take(m).skip(1) {
        if ci {
            p ^= 1 << i | 1 << (n - i);
        }
    }
    if c[m] {
        p ^= 1 << m;
    }
    p != 0 && poly_gcd(1 << n | 1, p) == 1
}

/// `g(x) + F(Tr(u_1 x), ..., Tr(u_tau x))` with `g` a bent quadratic idempotent and `u_i`
/// non-zero in `F_(2^m)`. No closed-form dual is emitted.
pub fn quad_family(
    field: FieldSpec,
    c: &[bool],
    eps: bool,
    u: &[FieldElem],
    poly: &ReducedPoly,
) -> Result<ConstructedPair> {
    let m = half_degree(&field, 1)?;
    let base = quad_idempotent_g(field, c, eps)?;
    if !is_quad_bent_gcd(c) {
        return Err(Error::BaseNotBent);
    }
    check_fits(&field, u)?;
    check_arity(poly, u.len(), m)?;
    check_nonzero(u)?;
    check_in_subfield(&field, u, m)?;
    let f = base.add(&compose_traces(field, poly, u)?)?;
    Ok(ConstructedPair {
        family: Family::QuadFamily,
        f,
        predicted_dual: None,
        decomposition: Decomposition {
            base,
            shifts: shifts_of(u),
            poly: poly.clone(),
        },
        notes: "quadratic idempotent bent base plus F of subfield traces".into(),
    })
}

/// Quadratic idempotent base with the Frobenius orbit of a normal `u` and a
/// rotation-symmetric `F` in `m` variables: a bent idempotent.
pub fn quad_idempotent_family(
    field: FieldSpec,
    c: &[bool],
    eps: bool,
    u: FieldElem,
    poly: &ReducedPoly,
) -> Result<ConstructedPair> {
    let m = half_degree(&field, 1)?;
    if !is_quad_bent_gcd(c) {
        return Err(Error::BaseNotBent);
    }
    check_normal_rotation(&field, m, u, poly)?;
    let mut pair = quad_family(field, c, eps, &field.orbit(u, m), poly)?;
    pair.family = Family::QuadIdem;
    pair.notes = "quadratic bent idempotent over a normal-element orbit".into();
    Ok(pair)
}

/// A solution of `lambda + lambda^(2^(3k)) = 1` in `F_(2^(4k))` (smallest index).
pub fn gold_lambda(field: FieldSpec) -> Result<FieldElem> {
    let k = gold_k(&field)?;
    field.solve_semilinear(3 * k, FieldElem::ONE)
}

fn gold_k(field: &FieldSpec) -> Result<u32> {
    if !field.n().is_multiple_of(4) {
        return Err(Error::BadDimension(format!(
            "Gold-like construction needs n = 4k, got n = {}",
            field.n()
        )));
    }
    Ok(field.n() / 4)
}

/// `Tr_1^(4k)(lambda x^(2^k+1)) + F(Tr(u_1 x), ...)` with `lambda + lambda^(2^(3k)) = 1`.
///
/// The base is self-dual; the predicted dual is `Tr(lambda x^(2^k+1)) + F(X_1, ...)` with
/// `X_i = Tr(lambda (x^(2^k) u_i + x u_i^(2^k) + u_i^(2^k+1)))`.
pub fn gold_like(
    field: FieldSpec,
    lambda: FieldElem,
    u: &[FieldElem],
    poly: &ReducedPoly,
) -> Result<ConstructedPair> {
    let k = gold_k(&field)?;
    check_fits(&field, &[lambda])?;
    if lambda + field.frobenius(lambda, 3 * k) != FieldElem::ONE {
        return Err(Error::LambdaConstraintViolated);
    }
    check_fits(&field, u)?;
    check_arity(poly, u.len(), 2 * k)?;
    check_nonzero(u)?;
    let conj: Vec<FieldElem> = u.iter().map(|&e| field.frobenius(e, k)).collect();
    for j in 0..u.len() {
        for i in 0..j {
            let sym = field.mul(conj[i], u[j]) + field.mul(u[i], conj[j]);
            if field.trace_abs(field.mul(lambda, sym)) {
                return Err(Error::PreconditionViolated(format!(
                    "Tr(lambda (u_{0}^(2^k) u_{1} + u_{0} u_{1}^(2^k))) = 1 for pair ({0}, {1})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let quad =
        |x: FieldElem| field.trace_abs(field.mul(lambda, field.mul(field.frobenius(x, k), x)));
    let base = TruthTable::from_field_fn(field, quad);
    let f = base.add(&compose_traces(field, poly, u)?)?;
    let offsets: Vec<FieldElem> = u
        .iter()
        .zip(&conj)
        .map(|(&e, &c)| field.mul(c, e))
        .collect();
    let values = poly.value_table();
    let predicted = TruthTable::from_field_fn(field, |x| {
        let xk = field.frobenius(x, k);
        let args = bit_of((0..u.len()).map(|i| {
            let y = field.mul(xk, u[i]) + field.mul(x, conj[i]) + offsets[i];
            field.trace_abs(field.mul(lambda, y))
        }));
        quad(x) ^ values[args as usize]
    });
    Ok(ConstructedPair {
        family: Family::GoldLike,
        f,
        predicted_dual: Some(predicted),
        decomposition: Decomposition {
            base,
            shifts: shifts_of(u),
            poly: poly.clone(),
        },
        notes: "self-dual Gold-like base plus F of absolute traces".into(),
    })
}

fn niho_params(field: &FieldSpec, k: u32) -> Result<u32> {
    let m = half_degree(field, 1)?;
    if k == 0 || gcd(k as u64, m as u64) != 1 {
        return Err(Error::GcdViolated { k, m });
    }
    Ok(m)
}

/// Exponents `(2^m - 1) i / 2^k + 1 (mod 2^n - 1)` for `i = 1, ..., 2^(k-1) - 1`,
/// where `/ 2^k` is multiplication by the inverse of `2^k` modulo `2^n - 1`.
pub fn niho_exponents(m: u32, k: u32) -> Vec<u64> {
    let n = 2 * m;
    let order = (1u64 << n) - 1;
    let inv = 1u64 << ((n - k % n) % n);
    let count = (1u64 << (k - 1)) - 1;
    (1..=count)
        .map(|i| {
            let e = ((1u128 << m) - 1) * i as u128 % order as u128 * inv as u128 % order as u128;
            (e as u64 + 1) % order
        })
        .collect()
}

/// The Niho bent function `Tr_1^m(x^(2^m+1)) + Tr_1^n(sum_i x^(e_i))`.
pub fn niho_g(field: FieldSpec, k: u32) -> Result<TruthTable> {
    let m = niho_params(&field, k)?;
    let exps = niho_exponents(m, k);
    Ok(TruthTable::from_field_fn(field, |x| {
        let mut acc = field
            .trace_sub(norm(&field, m, x), m)
            .expect("norm lies in the subfield");
        for &e in &exps {
            acc ^= field.trace_abs(field.pow(x, e));
        }
        acc
    }))
}

/// `A^(1/(2^k-1))` for `A = 1 + x + x^(2^m)`, the root taken in `F_(2^m)`.
fn niho_root(field: &FieldSpec, m: u32, k: u32, x: FieldElem) -> FieldElem {
    let a = FieldElem::ONE + x + field.frobenius(x, m);
    let e = mod_inverse((1u64 << k) - 1, (1u64 << m) - 1).expect("gcd(k, m) = 1");
    field.pow(a, e)
}

struct NihoDual {
    field: FieldSpec,
    m: u32,
    k: u32,
    alpha: FieldElem,
    alpha_shift: FieldElem,
}

impl NihoDual {
    fn new(field: FieldSpec, k: u32) -> Result<Self> {
        let m = niho_params(&field, k)?;
        let alpha = field.solve_semilinear(m, FieldElem::ONE)?;
        let n = field.n();
        let alpha_shift = field.frobenius(alpha, (n - k % n) % n);
        Ok(NihoDual {
            field,
            m,
            k,
            alpha,
            alpha_shift,
        })
    }

    /// `Tr_1^m((alpha A + x^(2^m) + alpha^(2^(n-k))) A^(1/2^(k-1)))` and the root itself.
    fn eval(&self, x: FieldElem) -> Result<(bool, FieldElem)> {
        let k = &self.field;
        let a = FieldElem::ONE + x + k.frobenius(x, self.m);
        let root = niho_root(k, self.m, self.k, x);
        let inner = k.mul(self.alpha, a) + k.frobenius(x, self.m) + self.alpha_shift;
        Ok((k.trace_sub(k.mul(inner, root), self.m)?, root))
    }
}

/// Dual of the Niho bent function, from its closed form with `A = 1 + x + x^(2^m)`.
pub fn niho_dual_g(field: FieldSpec, k: u32) -> Result<TruthTable> {
    let dual = NihoDual::new(field, k)?;
    let values: Vec<bool> = field
        .elements()
        .map(|x| dual.eval(x).map(|(v, _)| v))
        .collect::<Result<_>>()?;
    TruthTable::from_bits(Domain::Field(field), &values)
}

/// Niho base plus `F(Tr(u_1 x), ...)` with non-zero `u_i` in `F_(2^m)`.
///
/// Predicted dual: `g~(x) + F(Tr_1^m(u_1 A^(1/2^(k-1))), ...)`.
pub fn niho_family(
    field: FieldSpec,
    k: u32,
    u: &[FieldElem],
    poly: &ReducedPoly,
) -> Result<ConstructedPair> {
    let m = niho_params(&field, k)?;
    check_fits(&field, u)?;
    check_arity(poly, u.len(), m)?;
    check_nonzero(u)?;
    check_in_subfield(&field, u, m)?;
    let base = niho_g(field, k)?;
    let f = base.add(&compose_traces(field, poly, u)?)?;
    let dual = NihoDual::new(field, k)?;
    let values = poly.value_table();
    let mut bits = Vec::with_capacity(field.size());
    for x in field.elements() {
        let (g_dual, root) = dual.eval(x)?;
        let args = bit_of(
            u.iter()
                .map(|&ui| field.trace_sub(field.mul(ui, root), m))
                .collect::<Result<Vec<_>>>()?
                .into_iter(),
        );
        bits.push(g_dual ^ values[args as usize]);
    }
    let predicted = TruthTable::from_bits(Domain::Field(field), &bits)?;
    Ok(ConstructedPair {
        family: Family::Niho,
        f,
        predicted_dual: Some(predicted),
        decomposition: Decomposition {
            base,
            shifts: shifts_of(u),
            poly: poly.clone(),
        },
        notes: format!("Niho bent base (k = {k}) plus F of subfield traces"),
    })
}

/// Niho base over the orbit of a normal `u` with rotation-symmetric `F`: a bent idempotent.
pub fn niho_idempotent(
    field: FieldSpec,
    k: u32,
    u: FieldElem,
    poly: &ReducedPoly,
) -> Result<ConstructedPair> {
    let m = niho_params(&field, k)?;
    check_normal_rotation(&field, m, u, poly)?;
    let mut pair = niho_family(field, k, &field.orbit(u, m), poly)?;
    pair.notes = format!("Niho bent idempotent (k = {k}) over a normal-element orbit");
    Ok(pair)
}

/// Index of `(x, y)` on the grid `F_(2^m) x F_(2^m)`.
pub fn bivariate_index(m: u32, x: FieldElem, y: FieldElem) -> u32 {
    x.index() << m | y.index()
}

pub fn bivariate_split(m: u32, index: u32) -> (FieldElem, FieldElem) {
    (
        FieldElem::from_index(index >> m),
        FieldElem::from_index(index & ((1 << m) - 1)),
    )
}

fn check_pairs(
    field: &FieldSpec,
    pairs: &[(FieldElem, FieldElem)],
    poly: &ReducedPoly,
) -> Result<Vec<u32>> {
    let m = field.n();
    for &(a, b) in pairs {
        check_fits(field, &[a, b])?;
    }
    check_arity(poly, pairs.len(), m)?;
    let shifts: Vec<u32> = pairs
        .iter()
        .map(|&(a, b)| bivariate_index(m, a, b))
        .collect();
    let vecs: Vec<u64> = shifts.iter().map(|&s| s as u64).collect();
    if !crate::linalg::is_independent(&vecs) {
        return Err(Error::NotIndependent);
    }
    Ok(shifts)
}

fn grid_field(field: &FieldSpec) -> Result<u32> {
    if field.n() < 2 {
        return Err(Error::BadDimension(format!(
            "bivariate constructions need m >= 2, got m = {}",
            field.n()
        )));
    }
    Ok(field.n())
}

/// Maiorana–McFarland with an F_2-linear permutation `pi` and `h(y) = Tr_1^m(b y)`:
/// `Tr_1^m(x pi(y)) + Tr_1^m(b y) + F(Tr_1^m(u_1' x + u_1'' y), ...)` on the grid.
///
/// `field` is `F_(2^m)`. The predicted dual is
/// `Tr(y pi^-1(x)) + Tr(b pi^-1(x)) + F(X_1, ...)` with
/// `X_i = Tr((y + b) pi^-1(u_i') + u_i'' pi^-1(x) + u_i'' pi^-1(u_i'))`.
pub fn mm_linear(
    field: FieldSpec,
    pi: &BitMatrix,
    b: FieldElem,
    pairs: &[(FieldElem, FieldElem)],
    poly: &ReducedPoly,
) -> Result<ConstructedPair> {
    let m = grid_field(&field)?;
    if pi.dim() != m as usize {
        return Err(Error::BadDimension(format!(
            "permutation matrix must be {m} x {m}, got {}",
            pi.dim()
        )));
    }
    let pi_inv = pi.inverse().ok_or(Error::SingularPermutation)?;
    check_fits(&field, &[b])?;
    let shifts = check_pairs(&field, pairs, poly)?;
    let apply =
        |mat: &BitMatrix, v: FieldElem| FieldElem::from_index(mat.apply(v.index() as u64) as u32);
    let tr = |v: FieldElem| field.trace_abs(v);
    for j in 0..pairs.len() {
        for i in 0..j {
            let v = field.mul(pairs[i].1, apply(&pi_inv, pairs[j].0))
                + field.mul(pairs[j].1, apply(&pi_inv, pairs[i].0));
            if tr(v) {
                return Err(Error::PreconditionViolated(format!(
                    "Tr(u_{0}'' pi^-1(u_{1}') + u_{1}'' pi^-1(u_{0}')) = 1 for pair ({0}, {1})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let domain = Domain::Grid(field);
    let base = TruthTable::from_fn(domain, |idx| {
        let (x, y) = bivariate_split(m, idx);
        tr(field.mul(x, apply(pi, y))) ^ tr(field.mul(b, y))
    });
    let masks: Vec<u32> = shifts.iter().map(|&s| domain.pairing_image(s)).collect();
    let f = base.add(&compose_linear(domain, poly, &masks)?)?;

    let pre: Vec<FieldElem> = pairs.iter().map(|&(a, _)| apply(&pi_inv, a)).collect();
    let values = poly.value_table();
    let predicted = TruthTable::from_fn(domain, |idx| {
        let (x, y) = bivariate_split(m, idx);
        let px = apply(&pi_inv, x);
        let args =
            bit_of(pairs.iter().zip(&pre).map(|(&(_, c), &pa)| {
                tr(field.mul(y + b, pa) + field.mul(c, px) + field.mul(c, pa))
            }));
        tr(field.mul(y, px)) ^ tr(field.mul(b, px)) ^ values[args as usize]
    });
    Ok(ConstructedPair {
        family: Family::MMLinear,
        f,
        predicted_dual: Some(predicted),
        decomposition: Decomposition {
            base,
            shifts,
            poly: poly.clone(),
        },
        notes: "Maiorana-McFarland base with a linear permutation".into(),
    })
}

/// `d` with `d (2^s + 1) = 1 (mod 2^m - 1)`, for `s | m` and `m / s` odd.
pub fn mm_monomial_exponent(m: u32, s: u32) -> Result<u64> {
    if s == 0 || !m.is_multiple_of(s) || (m / s).is_multiple_of(2) {
        return Err(Error::BadDivisor { s, m });
    }
    let value = (1u64 << s) + 1;
    let modulus = (1u64 << m) - 1;
    mod_inverse(value, modulus).ok_or(Error::NoModularInverse { value, modulus })
}

/// `Tr_1^m(x y^d) + F(Tr_1^m(u_1' x + u_1'' y), ...)` with `u_i', u_i''` in `F_(2^s)`.
pub fn mm_monomial(
    field: FieldSpec,
    s: u32,
    pairs: &[(FieldElem, FieldElem)],
    poly: &ReducedPoly,
) -> Result<ConstructedPair> {
    let m = grid_field(&field)?;
    let d = mm_monomial_exponent(m, s)?;
    for &(a, b) in pairs {
        check_fits(&field, &[a, b])?;
        check_in_subfield(&field, &[a, b], s)?;
    }
    let shifts = check_pairs(&field, pairs, poly)?;
    for j in 0..pairs.len() {
        for i in 0..j {
            let ((a1, a2), (b1, b2)) = (pairs[i], pairs[j]);
            if field.mul(a1, b2) + field.mul(b1, a2) != FieldElem::ZERO {
                return Err(Error::PreconditionViolated(format!(
                    "u_{0}' u_{1}'' + u_{1}' u_{0}'' != 0 for pair ({0}, {1})",
                    i + 1,
                    j + 1
                )));
            }
            let t = field.mul(field.square(a1), b2) + field.mul(a2, field.square(b1));
            if field.trace_abs(t) {
                return Err(Error::PreconditionViolated(format!(
                    "Tr((u_{0}')^2 u_{1}'' + u_{0}'' (u_{1}')^2) = 1 for pair ({0}, {1})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let domain = Domain::Grid(field);
    let base = TruthTable::from_fn(domain, |idx| {
        let (x, y) = bivariate_split(m, idx);
        field.trace_abs(field.mul(x, field.pow(y, d)))
    });
    let masks: Vec<u32> = shifts.iter().map(|&s| domain.pairing_image(s)).collect();
    let f = base.add(&compose_linear(domain, poly, &masks)?)?;
    Ok(ConstructedPair {
        family: Family::MMMonomial,
        f,
        predicted_dual: None,
        decomposition: Decomposition {
            base,
            shifts,
            poly: poly.clone(),
        },
        notes: format!("Maiorana-McFarland base with pi(y) = y^{d}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::{degree, duality_class, is_idempotent, walsh, DualityClass};
    use crate::gf2n::SubfieldView;

    fn field(n: u32) -> FieldSpec {
        FieldSpec::default_for(n).unwrap()
    }

    fn poly(s: &str, tau: u32) -> ReducedPoly {
        ReducedPoly::parse(s, tau).unwrap()
    }

    fn spectral_dual(t: &TruthTable) -> TruthTable {
        walsh(t).dual().expect("bent")
    }

    fn check_pair(pair: &ConstructedPair) {
        let dual = spectral_dual(&pair.f);
        if let Some(p) = &pair.predicted_dual {
            assert_eq!(&dual, p, "{}", pair.notes);
        }
    }

    #[test]
    fn kasami_single_linear_term() {
        let k = field(6);
        for u in [1u32, 5, 17, 63] {
            let pair = kasami_general(
                k,
                FieldElem::ONE,
                &[FieldElem::from_index(u)],
                &poly("X1", 1),
                KasamiOptions::default(),
            )
            .unwrap();
            check_pair(&pair);
        }
    }

    #[test]
    fn kasami_zero_poly_reduces_to_base() {
        let k = field(6);
        let sub = SubfieldView::half(k).unwrap();
        for &lambda in &sub.members()[1..] {
            let pair = kasami_general(
                k,
                lambda,
                &[FieldElem::ONE],
                &ReducedPoly::zero(1).unwrap(),
                KasamiOptions::default(),
            )
            .unwrap();
            let lambda_inv = k.inv(lambda).unwrap();
            let expected = TruthTable::from_field_fn(k, |x| {
                !k.trace_sub(k.mul(lambda_inv, k.pow(x, 9)), 3).unwrap()
            });
            assert_eq!(spectral_dual(&pair.f), expected);
            check_pair(&pair);
        }
    }

    #[test]
    fn kasami_subfield_m2_pair() {
        let k = field(4);
        let sub = SubfieldView::half(k).unwrap();
        let pair = kasami_subfield(k, FieldElem::ONE, sub.basis(), &poly("X1*X2", 2)).unwrap();
        assert!(walsh(&pair.f).values().iter().all(|v| v.abs() == 4));
        assert_eq!(degree(&pair.f), 2);
        check_pair(&pair);
    }

    #[test]
    fn kasami_subfield_degree_three() {
        let k = field(6);
        let sub = SubfieldView::half(k).unwrap();
        let pair = kasami_subfield(k, FieldElem::ONE, sub.basis(), &poly("X1*X2*X3", 3)).unwrap();
        assert_eq!(degree(&pair.f), 3);
        check_pair(&pair);
        let lin = kasami_subfield(k, sub.members()[3], &sub.basis()[..1], &poly("X1", 1)).unwrap();
        assert_eq!(degree(&lin.f), 2);
        check_pair(&lin);
    }

    #[test]
    fn kasami_errors() {
        let k = field(6);
        let one = [FieldElem::ONE];
        let x1 = poly("X1", 1);
        assert_eq!(
            kasami_general(
                k,
                FieldElem::from_index(2),
                &one,
                &x1,
                KasamiOptions::default()
            )
            .unwrap_err(),
            Error::BadLambda
        );
        assert_eq!(
            kasami_general(k, FieldElem::ZERO, &one, &x1, KasamiOptions::default()).unwrap_err(),
            Error::BadLambda
        );
        assert_eq!(
            kasami_general(
                k,
                FieldElem::ONE,
                &[FieldElem::ZERO],
                &x1,
                KasamiOptions::default()
            )
            .unwrap_err(),
            Error::ZeroCoefficient(1)
        );
        assert!(matches!(
            kasami_subfield(k, FieldElem::ONE, &[FieldElem::from_index(2)], &x1),
            Err(Error::NotInSubfield { .. })
        ));
        assert_eq!(
            kasami_subfield(
                k,
                FieldElem::ONE,
                &[FieldElem::ONE, FieldElem::ONE],
                &poly("X1*X2", 2)
            )
            .unwrap_err(),
            Error::NotIndependent
        );
        assert!(matches!(
            kasami_general(
                field(5),
                FieldElem::ONE,
                &one,
                &x1,
                KasamiOptions::default()
            ),
            Err(Error::BadDimension(_))
        ));
        // find a violating pair in the full field
        let bad = (1..64u32)
            .flat_map(|a| (1..64u32).map(move |b| (a, b)))
            .map(|(a, b)| [FieldElem::from_index(a), FieldElem::from_index(b)])
            .find(|u| {
                matches!(
                    kasami_general(
                        k,
                        FieldElem::ONE,
                        u,
                        &poly("X1*X2", 2),
                        KasamiOptions::default()
                    ),
                    Err(Error::PreconditionViolated(_))
                )
            });
        assert!(bad.is_some());
    }

    #[test]
    fn kasami_literal_and_symmetric_conditions_agree() {
        let k = field(6);
        let sub = SubfieldView::half(k).unwrap();
        let f2 = poly("X1*X2", 2);
        for &lambda in &sub.members()[1..] {
            for a in (1..64u32).step_by(5) {
                for b in (1..64u32).step_by(7) {
                    let u = [FieldElem::from_index(a), FieldElem::from_index(b)];
                    let loose =
                        kasami_general(k, lambda, &u, &f2, KasamiOptions::default()).is_ok();
                    let strict = kasami_general(
                        k,
                        lambda,
                        &u,
                        &f2,
                        KasamiOptions {
                            strict_literal: true,
                        },
                    )
                    .is_ok();
                    assert_eq!(loose, strict);
                }
            }
        }
    }

    #[test]
    fn kasami_general_pairs_are_bent_with_matching_dual() {
        let k = field(6);
        let f2 = poly("X1*X2+X1", 2);
        let lambda = FieldElem::from_index(SubfieldView::half(k).unwrap().members()[5].index());
        let mut tested = 0;
        for a in (1..64u32).step_by(3) {
            for b in (1..64u32).step_by(11) {
                let u = [FieldElem::from_index(a), FieldElem::from_index(b)];
                if let Ok(pair) = kasami_general(k, lambda, &u, &f2, KasamiOptions::default()) {
                    check_pair(&pair);
                    tested += 1;
                }
            }
        }
        assert!(tested > 20);
    }

    #[test]
    fn kasami_idempotent_instances() {
        for m in 2..=4u32 {
            let k = field(2 * m);
            let u = SubfieldView::half(k).unwrap().find_normal(0);
            for d in 2..=m {
                let pair =
                    kasami_idempotent(k, u, &ReducedPoly::elementary_symmetric(m, d).unwrap())
                        .unwrap();
                assert!(is_idempotent(&pair.f));
                assert_eq!(degree(&pair.f), d);
                check_pair(&pair);
                assert!(is_idempotent(pair.predicted_dual.as_ref().unwrap()));
            }
        }
        let k = field(6);
        assert_eq!(
            kasami_idempotent(
                k,
                FieldElem::ONE,
                &ReducedPoly::elementary_symmetric(3, 2).unwrap()
            )
            .unwrap_err(),
            Error::NotNormal(1)
        );
        let u = SubfieldView::half(k).unwrap().find_normal(0);
        assert_eq!(
            kasami_idempotent(k, u, &poly("X1*X2", 3)).unwrap_err(),
            Error::NotRotationSymmetric
        );
    }

    #[test]
    fn antiselfdual_instances() {
        let k = field(6);
        for s in ["X1*X2", "0", "X1", "X1*X2+X2"] {
            let pair = kasami_antiselfdual(k, &poly(s, 2)).unwrap();
            let dual = spectral_dual(&pair.f);
            assert_eq!(
                duality_class(&pair.f, &dual).unwrap(),
                DualityClass::AntiSelfDual
            );
            check_pair(&pair);
        }
        assert!(matches!(
            kasami_antiselfdual(field(2), &poly("X1", 1)),
            Err(Error::DimensionTooSmall(_))
        ));
        assert!(matches!(
            kasami_antiselfdual(k, &poly("X1", 1)),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn quad_g_examples() {
        let k = field(6);
        let kasami = TruthTable::from_field_fn(k, |x| k.trace_sub(k.pow(x, 9), 3).unwrap());
        assert_eq!(
            quad_idempotent_g(k, &[false, false, false, true], false).unwrap(),
            kasami
        );
        let one = quad_idempotent_g(k, &[false; 4], true).unwrap();
        assert_eq!(one.weight(), 64);
        assert!(!walsh(&one).is_bent().unwrap());
        for bits in 0u32..16 {
            let c: Vec<bool> = (0..4).map(|i| bits >> i & 1 == 1).collect();
            assert!(is_idempotent(
                &quad_idempotent_g(k, &c, bits % 3 == 0).unwrap()
            ));
        }
    }

    #[test]
    fn gcd_criterion_examples() {
        // m = 2: gcd(X^2, X^4 + 1) = 1
        assert!(is_quad_bent_gcd(&[false, false, true]));
        assert!(!is_quad_bent_gcd(&[true, true, false]));
        // n = 8: bent iff c_m = 1
        for bits in 0u32..32 {
            let c: Vec<bool> = (0..5).map(|i| bits >> i & 1 == 1).collect();
            assert_eq!(is_quad_bent_gcd(&c), c[4]);
        }
    }

    #[test]
    fn quad_family_examples() {
        let k = field(6);
        let sub = SubfieldView::half(k).unwrap();
        let u = &sub.basis()[..2];
        let c = [false, true, true, true];
        assert!(is_quad_bent_gcd(&c));
        let pair = quad_family(k, &c, false, u, &poly("X1*X2", 2)).unwrap();
        assert!(walsh(&pair.f).is_bent().unwrap());
        // Kasami coefficient vector agrees with the Kasami constructor
        let q = quad_family(k, &[false, false, false, true], false, u, &poly("X1*X2", 2)).unwrap();
        let kas = kasami_subfield(k, FieldElem::ONE, u, &poly("X1*X2", 2)).unwrap();
        assert_eq!(q.f, kas.f);
        assert_eq!(
            quad_family(k, &[true, false, false, false], false, u, &poly("X1*X2", 2)).unwrap_err(),
            Error::BaseNotBent
        );
    }

    #[test]
    fn quad_idempotent_family_m4() {
        let k = field(8);
        let u = SubfieldView::half(k).unwrap().find_normal(1);
        for bits in 0u32..8 {
            let c = [bits & 1 == 1, bits & 2 == 2, bits & 4 == 4, false, true];
            for d in 2..=4 {
                let f = ReducedPoly::elementary_symmetric(4, d).unwrap();
                let pair = quad_idempotent_family(k, &c, false, u, &f).unwrap();
                assert!(walsh(&pair.f).is_bent().unwrap());
                assert!(is_idempotent(&pair.f));
                assert_eq!(degree(&pair.f), d);
            }
        }
    }

    #[test]
    fn gold_like_k1() {
        let k = field(4);
        let lambda = gold_lambda(k).unwrap();
        let base = gold_like(k, lambda, &[FieldElem::ONE], &ReducedPoly::zero(1).unwrap()).unwrap();
        let dual = spectral_dual(&base.f);
        assert_eq!(dual, base.f);
        for u in 1..16u32 {
            let pair = gold_like(k, lambda, &[FieldElem::from_index(u)], &poly("X1", 1)).unwrap();
            check_pair(&pair);
        }
        assert_eq!(
            gold_like(k, FieldElem::ONE, &[FieldElem::ONE], &poly("X1", 1)).unwrap_err(),
            Error::LambdaConstraintViolated
        );
        assert!(matches!(
            gold_like(field(6), lambda, &[FieldElem::ONE], &poly("X1", 1)),
            Err(Error::BadDimension(_))
        ));
    }

    #[test]
    fn gold_like_k2_pair() {
        let k = field(8);
        let lambda = gold_lambda(k).unwrap();
        let mut found = 0;
        'outer: for a in 1..256u32 {
            for b in (a + 1)..256 {
                let u = [FieldElem::from_index(a), FieldElem::from_index(b)];
                if let Ok(pair) = gold_like(k, lambda, &u, &poly("X1*X2", 2)) {
                    check_pair(&pair);
                    found += 1;
                    if found == 3 {
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(found, 3);
    }

    #[test]
    fn niho_exponent_examples() {
        assert!(niho_exponents(3, 1).is_empty());
        assert_eq!(niho_exponents(3, 2), vec![50]);
    }

    #[test]
    fn niho_k1_is_kasami() {
        let k = field(6);
        let g = niho_g(k, 1).unwrap();
        let kasami = TruthTable::from_field_fn(k, |x| k.trace_sub(k.pow(x, 9), 3).unwrap());
        assert_eq!(g, kasami);
        assert_eq!(spectral_dual(&g), niho_dual_g(k, 1).unwrap());
    }

    #[test]
    fn niho_m3_k2_dual_matches_spectrum() {
        let k = field(6);
        let g = niho_g(k, 2).unwrap();
        assert!(walsh(&g).is_bent().unwrap());
        assert_eq!(spectral_dual(&g), niho_dual_g(k, 2).unwrap());
        let sub = SubfieldView::half(k).unwrap();
        let pair = niho_family(k, 2, &sub.basis()[..2], &poly("X1*X2", 2)).unwrap();
        check_pair(&pair);
        let zero = niho_family(k, 2, &sub.basis()[..1], &ReducedPoly::zero(1).unwrap()).unwrap();
        assert_eq!(zero.f, g);
        assert_eq!(
            niho_g(field(8), 2).unwrap_err(),
            Error::GcdViolated { k: 2, m: 4 }
        );
    }

    #[test]
    fn niho_idempotent_instance() {
        let k = field(10);
        let u = SubfieldView::half(k).unwrap().find_normal(0);
        let pair =
            niho_idempotent(k, 2, u, &ReducedPoly::rotation_closure(0b00101, 5).unwrap()).unwrap();
        assert!(is_idempotent(&pair.f));
        check_pair(&pair);
    }

    #[test]
    fn bivariate_indexing() {
        let m = 3;
        assert_eq!(bivariate_index(m, FieldElem::ZERO, FieldElem::ZERO), 0);
        for idx in 0..64 {
            let (x, y) = bivariate_split(m, idx);
            assert_eq!(bivariate_index(m, x, y), idx);
        }
    }

    #[test]
    fn mm_linear_examples() {
        let k = field(2);
        let id = BitMatrix::identity(2);
        let pair = mm_linear(
            k,
            &id,
            FieldElem::ZERO,
            &[(FieldElem::ONE, FieldElem::ZERO)],
            &poly("X1", 1),
        )
        .unwrap();
        check_pair(&pair);
        let base = mm_linear(
            k,
            &id,
            FieldElem::from_index(3),
            &[(FieldElem::ONE, FieldElem::ONE)],
            &ReducedPoly::zero(1).unwrap(),
        )
        .unwrap();
        // Tr(xy) + Tr(by) has dual Tr(yx) + Tr(bx)
        let expected = TruthTable::from_fn(Domain::Grid(k), |idx| {
            let (x, y) = bivariate_split(2, idx);
            k.trace_abs(k.mul(x, y)) ^ k.trace_abs(k.mul(FieldElem::from_index(3), x))
        });
        assert_eq!(spectral_dual(&base.f), expected);
        let singular = BitMatrix::from_rows(vec![0b11, 0b11]);
        assert_eq!(
            mm_linear(
                k,
                &singular,
                FieldElem::ZERO,
                &[(FieldElem::ONE, FieldElem::ZERO)],
                &poly("X1", 1)
            )
            .unwrap_err(),
            Error::SingularPermutation
        );
        let dup = [
            (FieldElem::ONE, FieldElem::ZERO),
            (FieldElem::ONE, FieldElem::ZERO),
        ];
        assert_eq!(
            mm_linear(k, &id, FieldElem::ZERO, &dup, &poly("X1*X2", 2)).unwrap_err(),
            Error::NotIndependent
        );
    }

    #[test]
    fn mm_linear_m3_random_permutation() {
        let k = field(3);
        let pi = BitMatrix::from_rows(vec![0b011, 0b110, 0b100]);
        assert!(pi.is_invertible());
        let mut tested = 0;
        for a in 1..64u32 {
            for b in (a + 1)..64 {
                let pairs = [bivariate_split(3, a), bivariate_split(3, b)];
                if let Ok(pair) = mm_linear(
                    k,
                    &pi,
                    FieldElem::from_index(5),
                    &pairs,
                    &poly("X1*X2+X2", 2),
                ) {
                    check_pair(&pair);
                    tested += 1;
                }
            }
        }
        assert!(tested > 50);
    }

    #[test]
    fn mm_monomial_examples() {
        assert_eq!(mm_monomial_exponent(3, 1), Ok(5));
        assert_eq!(mm_monomial_exponent(2, 2), Ok(2));
        assert_eq!(
            mm_monomial_exponent(4, 1),
            Err(Error::BadDivisor { s: 1, m: 4 })
        );
        assert_eq!(
            mm_monomial_exponent(4, 3),
            Err(Error::BadDivisor { s: 3, m: 4 })
        );
        let k = field(3);
        for idx in 1..4u32 {
            let p = bivariate_split(1, idx);
            let pair = mm_monomial(k, 1, &[p], &poly("X1", 1)).unwrap();
            assert!(walsh(&pair.f).is_bent().unwrap());
        }
        assert!(matches!(
            mm_monomial(
                k,
                1,
                &[(FieldElem::from_index(2), FieldElem::ONE)],
                &poly("X1", 1)
            ),
            Err(Error::NotInSubfield { .. })
        ));
    }

    #[test]
    fn family_names_roundtrip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("Bogus".parse::<Family>().is_err());
    }
}
