//! Exhaustive verification of constructed functions against their claimed
//! properties, plus the two demonstrators and seeded sweeps.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolfun::{degree, duality_class, is_idempotent, walsh, DualityClass, TruthTable};
use crate::constructions::{kasami_antiselfdual, kasami_idempotent, ConstructedPair, Family};
use crate::error::{Error, Result};
use crate::gf2n::{FieldSpec, SubfieldView};
use crate::linalg::is_independent;
use crate::multipoly::ReducedPoly;
use crate::sampling::sample_spec;
use crate::specfile::ConstructionSpec;

/// Claims to check. `bent = false` means bentness is not claimed (not that it is denied).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expectation {
    pub bent: bool,
    pub degree: Option<u32>,
    pub idempotent: Option<bool>,
    pub duality: Option<DualityClass>,
    pub dual_idempotent: Option<bool>,
    pub dual_table: Option<TruthTable>,
}

impl Expectation {
    pub fn bent() -> Self {
        Expectation {
            bent: true,
            ..Default::default()
        }
    }
}

/// Parses a comma-separated claim list such as `bent,degree=3,idempotent,anti-self-dual`.
impl FromStr for Expectation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut exp = Expectation::default();
        for token in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match token {
                "bent" => exp.bent = true,
                "idempotent" => exp.idempotent = Some(true),
                "not-idempotent" => exp.idempotent = Some(false),
                "dual-idempotent" => exp.dual_idempotent = Some(true),
                "self-dual" => exp.duality = Some(DualityClass::SelfDual),
                "anti-self-dual" => exp.duality = Some(DualityClass::AntiSelfDual),
                "neither" => exp.duality = Some(DualityClass::Neither),
                _ => match token.strip_prefix("degree=") {
                    Some(d) => {
                        exp.degree = Some(
                            d.parse()
                                .map_err(|_| Error::Parse(format!("bad degree in `{token}`")))?,
                        )
                    }
                    None => return Err(Error::Parse(format!("unknown claim `{token}`"))),
                },
            }
        }
        Ok(exp)
    }
}

/// One claim that did not hold, with a witness index where one exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimFailure {
    pub claim: String,
    pub expected: String,
    pub actual: String,
    pub beta: Option<u32>,
}

impl fmt::Display for ClaimFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: expected {}, got {}",
            self.claim, self.expected, self.actual
        )?;
        if let Some(b) = self.beta {
            write!(f, " at {b:#x}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub num_vars: u32,
    pub is_bent: bool,
    pub walsh_min_abs: u64,
    pub walsh_max_abs: u64,
    pub degree: u32,
    pub idempotent: bool,
    /// Relation between `f` and its spectral dual; absent when `f` is not bent.
    pub duality: Option<DualityClass>,
    pub dual_idempotent: Option<bool>,
    pub dual_match: Option<bool>,
    pub elapsed_ms: f64,
    pub all_claims_met: bool,
    pub failures: Vec<ClaimFailure>,
    #[serde(skip)]
    pub dual: Option<TruthTable>,
}

impl VerificationReport {
    /// One-line summary: `PASS bent |W|=8..8 deg=3 ...`.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} bent={} |W|={}..{} deg={} idempotent={}",
            if self.all_claims_met { "PASS" } else { "FAIL" },
            self.is_bent,
            self.walsh_min_abs,
            self.walsh_max_abs,
            self.degree,
            self.idempotent
        );
        if let Some(d) = self.duality {
            s.push_str(&format!(" duality={d}"));
        }
        if let Some(m) = self.dual_match {
            s.push_str(&format!(" dual_match={m}"));
        }
        for f in &self.failures {
            s.push_str(&format!("; {f}"));
        }
        s
    }
}

/// Runs the full pipeline on `f`. `predicted_dual` takes precedence over `exp.dual_table`.
pub fn verify(
    f: &TruthTable,
    exp: &Expectation,
    predicted_dual: Option<&TruthTable>,
) -> VerificationReport {
    let start = Instant::now();
    let spectrum = walsh(f);
    let violation = spectrum.bent_violation();
    let is_bent = matches!(violation, Ok(None));
    let dual = if is_bent { spectrum.dual().ok() } else { None };
    let deg = degree(f);
    let idem_witness = (0..f.len() as u32).find(|&i| f.get(f.domain().square_index(i)) != f.get(i));
    let duality = dual.as_ref().and_then(|d| duality_class(f, d).ok());
    let dual_idempotent = dual.as_ref().map(is_idempotent);
    let predicted = predicted_dual.or(exp.dual_table.as_ref());
    let mut failures = Vec::new();
    let mut dual_match = None;
    if let Some(p) = predicted {
        let diff = match &dual {
            Some(d) => d.first_difference(p).unwrap_or(Some(0)),
            None => Some(0),
        };
        dual_match = Some(diff.is_none());
        if let Some(beta) = diff {
            failures.push(ClaimFailure {
                claim: "dual".into(),
                expected: "predicted dual table".into(),
                actual: if dual.is_some() {
                    "different spectral dual".into()
                } else {
                    "no dual (not bent)".into()
                },
                beta: dual.as_ref().map(|_| beta),
            });
        }
    }
    if exp.bent && !is_bent {
        failures.push(ClaimFailure {
            claim: "bent".into(),
            expected: match f.num_vars() {
                n if n % 2 == 0 => format!("|W| = {} everywhere", 1u64 << (n / 2)),
                _ => "an even number of variables".into(),
            },
            actual: format!("|W| in {}..{}", spectrum.min_abs(), spectrum.max_abs()),
            beta: violation.ok().flatten(),
        });
    }
    if let Some(d) = exp.degree {
        if d != deg {
            failures.push(ClaimFailure {
                claim: "degree".into(),
                expected: d.to_string(),
                actual: deg.to_string(),
                beta: None,
            });
        }
    }
    if let Some(want) = exp.idempotent {
        if want != idem_witness.is_none() {
            failures.push(ClaimFailure {
                claim: "idempotent".into(),
                expected: want.to_string(),
                actual: (!want).to_string(),
                beta: idem_witness,
            });
        }
    }
    if let Some(want) = exp.duality {
        if duality != Some(want) {
            failures.push(ClaimFailure {
                claim: "duality".into(),
                expected: want.to_string(),
                actual: duality.map_or("undefined (not bent)".into(), |d| d.to_string()),
                beta: None,
            });
        }
    }
    if let Some(want) = exp.dual_idempotent {
        if dual_idempotent != Some(want) {
            failures.push(ClaimFailure {
                claim: "dual idempotent".into(),
                expected: want.to_string(),
                actual: dual_idempotent.map_or("undefined (not bent)".into(), |d| d.to_string()),
                beta: None,
            });
        }
    }
    VerificationReport {
        num_vars: f.num_vars(),
        is_bent,
        walsh_min_abs: spectrum.min_abs(),
        walsh_max_abs: spectrum.max_abs(),
        degree: deg,
        idempotent: idem_witness.is_none(),
        duality,
        dual_idempotent,
        dual_match,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        all_claims_met: failures.is_empty(),
        failures,
        dual,
    }
}

/// Claims a family instance must satisfy.
///
/// Degree is claimed as `max(deg F, 2)` for quadratic bases whose shift vectors
/// are linearly independent; idempotence for the normal-orbit families;
/// anti-self-duality for the trace-zero family and self-duality for the bare Gold-like base.
pub fn expectation_for(spec: &ConstructionSpec, pair: &ConstructedPair) -> Expectation {
    let shifts: Vec<u64> = pair
        .decomposition
        .shifts
        .iter()
        .map(|&s| s as u64)
        .collect();
    let quadratic_base = !matches!(spec.family, Family::Niho | Family::MMMonomial);
    let degree = (quadratic_base && is_independent(&shifts)).then(|| spec.poly.degree().max(2));
    let idempotent = match spec.family {
        Family::KasamiIdempotent | Family::QuadIdem => Some(true),
        Family::Niho if spec.orbit => Some(true),
        _ => None,
    };
    let duality = match spec.family {
        Family::KasamiAntiSelfDual => Some(DualityClass::AntiSelfDual),
        Family::GoldLike if spec.poly.is_zero() => Some(DualityClass::SelfDual),
        _ => None,
    };
    Expectation {
        bent: true,
        degree,
        idempotent,
        duality,
        dual_idempotent: idempotent,
        dual_table: pair.predicted_dual.clone(),
    }
}

/// Builds and verifies a spec against its family claims.
pub fn verify_spec(spec: &ConstructionSpec) -> Result<(ConstructedPair, VerificationReport)> {
    let pair = spec.build()?;
    let exp = expectation_for(spec, &pair);
    let report = verify(&pair.f, &exp, None);
    Ok((pair, report))
}

/// Checks `W_f(b) * 2^tau = 2^(n/2) sum_w chat[w] (-1)^(g~(b + sum_i w_i u_i))` at every `b`,
/// with `g~` the spectral dual of the base. Returns the first failing `b`.
pub fn check_master_identity(pair: &ConstructedPair) -> Result<Option<u32>> {
    let dec = &pair.decomposition;
    let base_dual = walsh(&dec.base).dual()?;
    let w = walsh(&pair.f);
    let fourier = dec.poly.fourier();
    let chat = fourier.scaled();
    let tau = dec.poly.tau();
    let half = pair.f.num_vars() / 2;
    let offsets: Vec<u32> = (0..chat.len() as u32)
        .map(|mask| {
            dec.shifts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0, |acc, (_, &s)| acc ^ s)
        })
        .collect();
    for beta in 0..pair.f.len() as u32 {
        let sum: i128 = chat
            .iter()
            .zip(&offsets)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, &off)| {
                if base_dual.get(beta ^ off) {
                    -(c as i128)
                } else {
                    c as i128
                }
            })
            .sum();
        if (w.get(beta) as i128) << tau != sum << half {
            return Ok(Some(beta));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub struct CarletInstance {
    pub d: u32,
    pub pair: ConstructedPair,
    pub report: VerificationReport,
}

/// Bent idempotents of every degree `d = 2..=m` at `n = 2m`, from the elementary
/// symmetric polynomials over a normal-element orbit. `seed` selects the normal element.
pub fn demo_carlet(m: u32, seed: u64) -> Result<Vec<CarletInstance>> {
    if m < 2 {
        return Err(Error::DimensionTooSmall(format!("m = {m}, need m >= 2")));
    }
    let field = FieldSpec::default_for(2 * m)?;
    let u = SubfieldView::half(field)?.find_normal(seed);
    (2..=m)
        .map(|d| {
            let poly = ReducedPoly::elementary_symmetric(m, d)?;
            let pair = kasami_idempotent(field, u, &poly)?;
            let exp = Expectation {
                bent: true,
                degree: Some(d),
                idempotent: Some(true),
                dual_idempotent: Some(true),
                ..Default::default()
            };
            let report = verify(&pair.f, &exp, pair.predicted_dual.as_ref());
            Ok(CarletInstance { d, pair, report })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct MesnagerEntry {
    pub label: String,
    pub poly: String,
    pub report: VerificationReport,
    #[serde(skip)]
    pub table: TruthTable,
}

#[derive(Debug, Clone, Serialize)]
pub struct MesnagerReport {
    pub m: u32,
    pub entries: Vec<MesnagerEntry>,
    /// The XOR of the three tables equals the instance built from `F1 + F2 + F3`.
    pub sum_matches_direct: bool,
    pub all_claims_met: bool,
}

/// Three anti-self-dual bent functions and their sum, which is again anti-self-dual bent.
pub fn demo_mesnager(m: u32, polys: [&ReducedPoly; 3]) -> Result<MesnagerReport> {
    if m < 3 {
        return Err(Error::DimensionTooSmall(format!("m = {m}, need m >= 3")));
    }
    let field = FieldSpec::default_for(2 * m)?;
    let exp = Expectation {
        bent: true,
        duality: Some(DualityClass::AntiSelfDual),
        ..Default::default()
    };
    let mut entries = Vec::with_capacity(4);
    let mut sum: Option<TruthTable> = None;
    for (i, poly) in polys.iter().enumerate() {
        let pair = kasami_antiselfdual(field, poly)?;
        let report = verify(&pair.f, &exp, pair.predicted_dual.as_ref());
        sum = Some(match sum {
            Some(s) => s.add(&pair.f)?,
            None => pair.f.clone(),
        });
        entries.push(MesnagerEntry {
            label: format!("f{}", i + 1),
            poly: poly.to_string(),
            report,
            table: pair.f,
        });
    }
    let sum = sum.expect("three instances");
    let poly_sum = polys[0].add(polys[1])?.add(polys[2])?;
    let direct = kasami_antiselfdual(field, &poly_sum)?;
    let sum_matches_direct = direct.f == sum;
    let report = verify(&sum, &exp, None);
    entries.push(MesnagerEntry {
        label: "f1+f2+f3".into(),
        poly: poly_sum.to_string(),
        report,
        table: sum,
    });
    let all_claims_met = sum_matches_direct && entries.iter().all(|e| e.report.all_claims_met);
    Ok(MesnagerReport {
        m,
        entries,
        sum_matches_direct,
        all_claims_met,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SweepRow {
    /// m, or k for GoldLike.
    pub size: u32,
    pub trials: u32,
    pub sample_errors: u32,
    pub bent: u32,
    pub dual_checked: u32,
    pub dual_match: u32,
    pub claims_met: u32,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepFailure {
    pub size: u32,
    pub trial: u32,
    pub spec: String,
    pub failures: Vec<ClaimFailure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub family: Family,
    pub seed: u64,
    pub rows: Vec<SweepRow>,
    pub failures: Vec<SweepFailure>,
    pub all_claims_met: bool,
}

impl SweepReport {
    pub fn total(&self) -> SweepRow {
        self.rows.iter().fold(SweepRow::default(), |mut acc, r| {
            acc.trials += r.trials;
            acc.sample_errors += r.sample_errors;
            acc.bent += r.bent;
            acc.dual_checked += r.dual_checked;
            acc.dual_match += r.dual_match;
            acc.claims_met += r.claims_met;
            acc.elapsed_ms += r.elapsed_ms;
            acc
        })
    }
}

/// Random generator for `(family, size)` under `seed`; independent streams per size.
pub fn sweep_rng(family: Family, size: u32, seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fam = Family::ALL.iter().position(|&f| f == family).unwrap_or(0) as u64;
    rng.set_stream(fam << 32 | size as u64);
    rng
}

/// Seeded sweep; `on_instance` sees every successfully built instance.
pub fn sweep_with(
    family: Family,
    sizes: RangeInclusive<u32>,
    trials: u32,
    seed: u64,
    mut on_instance: impl FnMut(u32, u32, &ConstructionSpec, &ConstructedPair, &VerificationReport),
) -> SweepReport {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    if trials > 0 {
        for size in sizes {
            let start = Instant::now();
            let mut rng = sweep_rng(family, size, seed);
            let mut row = SweepRow {
                size,
                trials,
                ..Default::default()
            };
            for trial in 0..trials {
                let spec = match sample_spec(family, size, &mut rng) {
                    Ok(s) => s,
                    Err(e) => {
                        row.sample_errors += 1;
                        failures.push(SweepFailure {
                            size,
                            trial,
                            spec: String::new(),
                            failures: vec![ClaimFailure {
                                claim: "sample".into(),
                                expected: "valid parameters".into(),
                                actual: e.to_string(),
                                beta: None,
                            }],
                        });
                        continue;
                    }
                };
                match verify_spec(&spec) {
                    Ok((pair, report)) => {
                        row.bent += report.is_bent as u32;
                        if let Some(m) = report.dual_match {
                            row.dual_checked += 1;
                            row.dual_match += m as u32;
                        }
                        row.claims_met += report.all_claims_met as u32;
                        if !report.all_claims_met {
                            failures.push(SweepFailure {
                                size,
                                trial,
                                spec: spec.to_json(),
                                failures: report.failures.clone(),
                            });
                        }
                        on_instance(size, trial, &spec, &pair, &report);
                    }
                    Err(e) => {
                        row.sample_errors += 1;
                        failures.push(SweepFailure {
                            size,
                            trial,
                            spec: spec.to_json(),
                            failures: vec![ClaimFailure {
                                claim: "build".into(),
                                expected: "preconditions hold".into(),
                                actual: e.to_string(),
                                beta: None,
                            }],
                        });
                    }
                }
            }
            row.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            rows.push(row);
        }
    }
    let all_claims_met = failures.is_empty();
    SweepReport {
        family,
        seed,
        rows,
        failures,
        all_claims_met,
    }
}

pub fn sweep(family: Family, sizes: RangeInclusive<u32>, trials: u32, seed: u64) -> SweepReport {
    sweep_with(family, sizes, trials, seed, |_, _, _, _, _| {})
}
