//! Seeded samplers of valid construction parameters, one per family.
//!
//! Rejection predicates (what a candidate must pass before it is kept):
//!
//! | family | size | predicate |
//! |---|---|---|
//! | KasamiGeneral | m | u_j != 0 and the pairwise subfield-trace condition with every earlier u_i |
//! | KasamiSubfield | m | u_j in F_(2^m), outside the span of earlier u_i |
//! | KasamiIdempotent | m | u normal in F_(2^m); F a union of rotation orbits |
//! | KasamiAntiSelfDual | m | none (any F in m-1 variables) |
//! | QuadIdem | m | gcd criterion on c; u normal; F a union of rotation orbits |
//! | QuadFamily | m | gcd criterion on c; u_j non-zero in F_(2^m) |
//! | GoldLike | k | lambda = lambda_0 + t, t in F_(2^k); pairwise Gold trace condition |
//! | Niho | m | k uniform among 1..=m coprime to m; u_j non-zero in F_(2^m) |
//! | MMLinear | m | pi invertible; pairs independent and meeting the pairwise pi^-1 condition |
//! | MMMonomial | m | s a divisor with m/s odd; pairs in F_(2^s)^2, independent, both pairwise conditions |
//!
//! The u-list is grown greedily up to a random target length; after a bounded
//! number of failed draws it stops, and `F` gets as many variables as were kept.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::constructions::{gold_lambda, is_quad_bent_gcd, mm_monomial_exponent, Family};
use crate::error::{Error, Result};
use crate::gf2n::{gcd, FieldElem, FieldSpec, SubfieldView};
use crate::linalg::{is_independent, BitMatrix};
use crate::multipoly::ReducedPoly;
use crate::specfile::ConstructionSpec;

const ATTEMPTS: usize = 256;

/// Reduced polynomial with each of the `2^tau` monomials present with probability 1/2.
pub fn random_poly<R: Rng>(rng: &mut R, tau: u32) -> ReducedPoly {
    let monomials: Vec<u32> = (0..1u32 << tau).filter(|_| rng.gen()).collect();
    ReducedPoly::new(tau, monomials).expect("tau within bounds")
}

/// Rotation-symmetric polynomial: a random union of rotation orbits of monomials.
pub fn random_rotation_symmetric<R: Rng>(rng: &mut R, tau: u32) -> ReducedPoly {
    let mut acc = ReducedPoly::zero(tau).expect("tau within bounds");
    let mut seen = std::collections::BTreeSet::new();
    if rng.gen() {
        acc = ReducedPoly::new(tau, [0]).expect("tau within bounds");
    }
    for mask in 1..1u32 << tau {
        let orbit = ReducedPoly::rotation_closure(mask, tau).expect("tau within bounds");
        let lead = orbit.monomials().next();
        if lead.is_none_or(|l| !seen.insert(l)) {
            continue;
        }
        if rng.gen() {
            acc = acc.add(&orbit).expect("same arity");
        }
    }
    acc
}

fn random_nonzero<R: Rng>(rng: &mut R, members: &[FieldElem]) -> FieldElem {
    members[rng.gen_range(1..members.len())]
}

/// Grows a list up to `target` entries with `draw`, keeping a candidate when `accept` holds.
fn grow<T: Copy, R: Rng>(
    rng: &mut R,
    target: usize,
    mut draw: impl FnMut(&mut R) -> T,
    accept: impl Fn(&[T], T) -> bool,
) -> Vec<T> {
    let mut out = Vec::with_capacity(target);
    let mut misses = 0;
    while out.len() < target && misses < ATTEMPTS {
        let cand = draw(rng);
        if accept(&out, cand) {
            out.push(cand);
            misses = 0;
        } else {
            misses += 1;
        }
    }
    out
}

fn random_normal<R: Rng>(rng: &mut R, sub: &SubfieldView) -> Result<FieldElem> {
    let normals: Vec<FieldElem> = sub
        .members()
        .iter()
        .copied()
        .filter(|&u| sub.is_normal(u).unwrap_or(false))
        .collect();
    normals.choose(rng).copied().ok_or(Error::NoSolution)
}

fn random_gcd_coefficients<R: Rng>(rng: &mut R, m: u32) -> Result<Vec<bool>> {
    for _ in 0..ATTEMPTS {
        let c: Vec<bool> = (0..=m).map(|_| rng.gen()).collect();
        if is_quad_bent_gcd(&c) {
            return Ok(c);
        }
    }
    Err(Error::NoSolution)
}

fn random_invertible<R: Rng>(rng: &mut R, m: u32) -> BitMatrix {
    loop {
        let rows: Vec<u64> = (0..m).map(|_| rng.gen_range(0..1u64 << m)).collect();
        if is_independent(&rows) {
            return BitMatrix::from_rows(rows);
        }
    }
}

/// Draws one valid spec for `family` at size `size` (m, or k for GoldLike).
pub fn sample_spec<R: Rng>(family: Family, size: u32, rng: &mut R) -> Result<ConstructionSpec> {
    let n = match family {
        Family::GoldLike => 4 * size,
        Family::MMLinear | Family::MMMonomial => size,
        _ => 2 * size,
    };
    let field = FieldSpec::default_for(n)?;
    let empty = ReducedPoly::zero(1)?;
    let mut spec = ConstructionSpec::new(family, field, empty);
    match family {
        Family::KasamiGeneral | Family::KasamiSubfield => {
            let m = size;
            let sub = SubfieldView::half(field)?;
            let lambda = random_nonzero(rng, sub.members());
            let lambda_inv = field.inv(lambda)?;
            let target = rng.gen_range(1..=m as usize);
            spec.lambda = Some(lambda);
            spec.u = if family == Family::KasamiGeneral {
                let all: Vec<FieldElem> = field.elements().collect();
                grow(
                    rng,
                    target,
                    |r| random_nonzero(r, &all),
                    |prev, c| {
                        let cc = field.frobenius(c, m);
                        prev.iter().all(|&p| {
                            let sym = field.mul(field.frobenius(p, m), c) + field.mul(p, cc);
                            !field
                                .trace_sub(field.mul(lambda_inv, sym), m)
                                .unwrap_or(true)
                        })
                    },
                )
            } else {
                grow(
                    rng,
                    target,
                    |r| random_nonzero(r, sub.members()),
                    |prev, c| {
                        let mut all = prev.to_vec();
                        all.push(c);
                        field.lin_indep(&all)
                    },
                )
            };
            spec.poly = random_poly(rng, spec.u.len() as u32);
        }
        Family::KasamiIdempotent | Family::QuadIdem => {
            let sub = SubfieldView::half(field)?;
            spec.u = vec![random_normal(rng, &sub)?];
            if family == Family::QuadIdem {
                spec.c = Some(random_gcd_coefficients(rng, size)?);
                spec.eps = Some(rng.gen());
            }
            spec.poly = random_rotation_symmetric(rng, size);
        }
        Family::KasamiAntiSelfDual => {
            if size < 2 {
                return Err(Error::DimensionTooSmall(format!("m = {size}")));
            }
            spec.poly = random_poly(rng, size - 1);
        }
        Family::QuadFamily | Family::Niho => {
            let sub = SubfieldView::half(field)?;
            let target = rng.gen_range(1..=size as usize);
            spec.u = (0..target)
                .map(|_| random_nonzero(rng, sub.members()))
                .collect();
            if family == Family::QuadFamily {
                spec.c = Some(random_gcd_coefficients(rng, size)?);
                spec.eps = Some(rng.gen());
            } else {
                let ks: Vec<u32> = (1..=size)
                    .filter(|&k| gcd(k as u64, size as u64) == 1)
                    .collect();
                spec.k = Some(*ks.choose(rng).expect("k = 1 is always coprime"));
            }
            spec.poly = random_poly(rng, target as u32);
        }
        Family::GoldLike => {
            let k = size;
            let inner = SubfieldView::new(field, k)?;
            let lambda = gold_lambda(field)? + *inner.members().choose(rng).expect("non-empty");
            spec.lambda = Some(lambda);
            let all: Vec<FieldElem> = field.elements().collect();
            let target = rng.gen_range(1..=(2 * k).min(4) as usize);
            spec.u = grow(
                rng,
                target,
                |r| random_nonzero(r, &all),
                |prev, c| {
                    let ck = field.frobenius(c, k);
                    prev.iter().all(|&p| {
                        let sym = field.mul(field.frobenius(p, k), c) + field.mul(p, ck);
                        !field.trace_abs(field.mul(lambda, sym))
                    })
                },
            );
            spec.poly = random_poly(rng, spec.u.len() as u32);
        }
        Family::MMLinear => {
            let m = size;
            let pi = random_invertible(rng, m);
            let pi_inv = pi.inverse().expect("invertible");
            let apply = |v: FieldElem| FieldElem::from_index(pi_inv.apply(v.index() as u64) as u32);
            spec.b = Some(FieldElem::from_index(rng.gen_range(0..1u32 << m)));
            let target = rng.gen_range(1..=m as usize);
            spec.pairs = grow(
                rng,
                target,
                |r| {
                    let idx = r.gen_range(1..1u32 << (2 * m));
                    crate::constructions::bivariate_split(m, idx)
                },
                |prev, (c1, c2)| {
                    let mut vecs: Vec<u64> = prev
                        .iter()
                        .map(|&(a, b)| ((a.index() << m) | b.index()) as u64)
                        .collect();
                    vecs.push(((c1.index() << m) | c2.index()) as u64);
                    is_independent(&vecs)
                        && prev.iter().all(|&(a1, a2)| {
                            !field.trace_abs(field.mul(a2, apply(c1)) + field.mul(c2, apply(a1)))
                        })
                },
            );
            spec.pi = Some(pi);
            spec.poly = random_poly(rng, spec.pairs.len() as u32);
        }
        Family::MMMonomial => {
            let m = size;
            let divisors: Vec<u32> = (1..=m)
                .filter(|&s| mm_monomial_exponent(m, s).is_ok())
                .collect();
            let s = *divisors.choose(rng).ok_or(Error::BadDivisor { s: 0, m })?;
            let sub = SubfieldView::new(field, s)?;
            let target = rng.gen_range(1..=m as usize);
            spec.s = Some(s);
            spec.pairs = grow(
                rng,
                target,
                |r| loop {
                    let a = *sub.members().choose(r).expect("non-empty");
                    let b = *sub.members().choose(r).expect("non-empty");
                    if !(a.is_zero() && b.is_zero()) {
                        break (a, b);
                    }
                },
                |prev, (c1, c2)| {
                    let mut vecs: Vec<u64> = prev
                        .iter()
                        .map(|&(a, b)| ((a.index() << m) | b.index()) as u64)
                        .collect();
                    vecs.push(((c1.index() << m) | c2.index()) as u64);
                    is_independent(&vecs)
                        && prev.iter().all(|&(a1, a2)| {
                            field.mul(a1, c2) == field.mul(c1, a2)
                                && !field.trace_abs(
                                    field.mul(field.square(a1), c2)
                                        + field.mul(a2, field.square(c1)),
                                )
                        })
                },
            );
            spec.poly = random_poly(rng, spec.pairs.len() as u32);
        }
    }
    Ok(spec)
}
