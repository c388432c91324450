//! `bent`: construct, transform and verify bent functions.
//!
//! Exit codes: 0 when every claim holds, 1 when a claim fails (the report is
//! still printed), 2 for usage or input errors.

use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bent_core::boolfun::{anf, walsh};
use bent_core::sampling::random_poly;
use bent_core::verify::{
    demo_carlet, demo_mesnager, sweep_with, verify, verify_spec, Expectation, VerificationReport,
};
use bent_core::{ConstructionSpec, Error, Family, FieldSpec, ReducedPoly, TruthTable};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "bent",
    version,
    about = "Bent functions over GF(2^n): construct, transform, verify"
)]
struct Cli {
    /// Emit JSON instead of human-readable lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a function from a JSON spec, write `<name>.tt` (and `<name>.dual.tt`), verify it.
    Construct {
        specfile: PathBuf,
        /// Directory for the truth-table files.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Verify a truth-table file against a list of claims.
    Verify {
        ttfile: PathBuf,
        /// Comma-separated claims: bent, degree=<d>, idempotent, not-idempotent,
        /// dual-idempotent, self-dual, anti-self-dual, neither.
        #[arg(long, default_value = "")]
        expect: String,
        /// Truth-table file the spectral dual must equal.
        #[arg(long)]
        dual: Option<PathBuf>,
    },
    /// Print the Walsh spectrum, one `beta value` pair per line.
    Walsh { ttfile: PathBuf },
    /// Print the algebraic normal form and degree.
    Anf { ttfile: PathBuf },
    /// Write the dual of a bent function to stdout (or `--out`).
    Dual {
        ttfile: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a demonstrator.
    #[command(subcommand)]
    Demo(Demo),
    /// Seeded sweep of random valid parameters for one family.
    Sweep {
        #[arg(long)]
        family: Family,
        /// Size range such as `2..4` (inclusive) or `3`; k for GoldLike, m otherwise.
        #[arg(long, value_parser = parse_range)]
        m: RangeInclusive<u32>,
        #[arg(long)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        emit: Emit,
    },
    /// Describe a field: modulus, irreducibility, generator.
    Field {
        #[arg(long)]
        n: u32,
        /// Modulus in hex, e.g. 0x13; defaults to the smallest irreducible.
        #[arg(long = "mod")]
        modulus: Option<String>,
    },
}

#[derive(Subcommand)]
enum Demo {
    /// Bent idempotents of every degree 2..=m at n = 2m.
    Carlet {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        emit: Emit,
    },
    /// Three anti-self-dual bent functions whose sum is again anti-self-dual.
    Mesnager {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        f1: Option<String>,
        #[arg(long)]
        f2: Option<String>,
        #[arg(long)]
        f3: Option<String>,
        /// Seed for polynomials not given explicitly.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        emit: Emit,
    },
}

#[derive(Args)]
struct Emit {
    /// Write every truth table into this directory.
    #[arg(long)]
    emit_tt: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("bad range `{s}`"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(lo..=hi)
}

enum Failure {
    Claims,
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let dbg = format!("{e:?}");
        let kind = dbg
            .split(|c: char| !c.is_alphanumeric())
            .next()
            .unwrap_or("");
        Failure::Input(format!("{kind}: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_table(path: &Path) -> Result<TruthTable, Failure> {
    Ok(read(path)?.parse::<TruthTable>()?)
}

fn emit_dir(emit: &Emit) -> Result<Option<&Path>, Failure> {
    if let Some(dir) = &emit.emit_tt {
        fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    }
    Ok(emit.emit_tt.as_deref())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn verdict(ok: bool) -> CmdResult {
    if ok {
        Ok(())
    } else {
        Err(Failure::Claims)
    }
}

fn construct(json: bool, specfile: &Path, out_dir: &Path) -> CmdResult {
    let spec = ConstructionSpec::from_json(&read(specfile)?)?;
    let name = spec.name.clone().unwrap_or_else(|| {
        specfile
            .file_stem()
            .map_or("out".into(), |s| s.to_string_lossy().into_owned())
    });
    let (pair, report) = verify_spec(&spec)?;
    fs::create_dir_all(out_dir)
        .map_err(|e| Failure::Input(format!("{}: {e}", out_dir.display())))?;
    let tt = out_dir.join(format!("{name}.tt"));
    write(&tt, &pair.f.to_file_string())?;
    let mut files = vec![tt.display().to_string()];
    if let Some(d) = &pair.predicted_dual {
        let path = out_dir.join(format!("{name}.dual.tt"));
        write(&path, &d.to_file_string())?;
        files.push(path.display().to_string());
    }
    if json {
        println!(
            "{}",
            to_json(&serde_json::json!({
                "family": spec.family,
                "notes": pair.notes,
                "files": files,
                "report": report,
            }))
        );
    } else {
        println!("{} ({})", spec.family, pair.notes);
        for f in &files {
            println!("wrote {f}");
        }
        println!("{}", report.summary());
    }
    verdict(report.all_claims_met)
}

fn print_report(json: bool, label: &str, report: &VerificationReport) {
    if json {
        println!("{}", to_json(report));
    } else if label.is_empty() {
        println!("{}", report.summary());
    } else {
        println!("{label}: {}", report.summary());
    }
}

fn run(cli: Cli) -> CmdResult {
    let json = cli.json;
    match cli.command {
        Command::Construct { specfile, out_dir } => construct(json, &specfile, &out_dir),
        Command::Verify {
            ttfile,
            expect,
            dual,
        } => {
            let f = read_table(&ttfile)?;
            let exp: Expectation = expect.parse()?;
            let dual = dual.map(|p| read_table(&p)).transpose()?;
            let report = verify(&f, &exp, dual.as_ref());
            print_report(json, "", &report);
            verdict(report.all_claims_met)
        }
        Command::Walsh { ttfile } => {
            let w = walsh(&read_table(&ttfile)?);
            if json {
                println!("{}", to_json(&serde_json::json!({ "values": w.values() })));
            } else {
                for (beta, v) in w.values().iter().enumerate() {
                    println!("{beta:#x} {v}");
                }
            }
            Ok(())
        }
        Command::Anf { ttfile } => {
            let a = anf(&read_table(&ttfile)?);
            if json {
                println!(
                    "{}",
                    to_json(
                        &serde_json::json!({ "degree": a.degree(), "monomials": a.monomials() })
                    )
                );
            } else {
                println!("{a}");
                println!("degree {}", a.degree());
            }
            Ok(())
        }
        Command::Dual { ttfile, out } => {
            let d = walsh(&read_table(&ttfile)?).dual()?;
            match out {
                Some(p) => write(&p, &d.to_file_string()),
                None => {
                    print!("{}", d.to_file_string());
                    Ok(())
                }
            }
        }
        Command::Demo(Demo::Carlet { m, seed, emit }) => {
            let dir = emit_dir(&emit)?;
            let demo = demo_carlet(m, seed)?;
            let mut ok = true;
            for inst in &demo {
                ok &= inst.report.all_claims_met;
                if let Some(dir) = dir {
                    write(
                        &dir.join(format!("carlet_m{m}_d{}.tt", inst.d)),
                        &inst.pair.f.to_file_string(),
                    )?;
                }
                print_report(json, &format!("m={m} d={}", inst.d), &inst.report);
            }
            verdict(ok)
        }
        Command::Demo(Demo::Mesnager {
            m,
            f1,
            f2,
            f3,
            seed,
            emit,
        }) => {
            let dir = emit_dir(&emit)?;
            if m < 3 {
                return Err(Error::DimensionTooSmall(format!("m = {m}, need m >= 3")).into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut polys = Vec::with_capacity(3);
            for given in [f1, f2, f3] {
                polys.push(match given {
                    Some(s) => ReducedPoly::parse(&s, m - 1)?,
                    None => random_poly(&mut rng, m - 1),
                });
            }
            let r = demo_mesnager(m, [&polys[0], &polys[1], &polys[2]])?;
            if let Some(dir) = dir {
                for e in &r.entries {
                    let label = e.label.replace('+', "_");
                    write(
                        &dir.join(format!("mesnager_m{m}_{label}.tt")),
                        &e.table.to_file_string(),
                    )?;
                }
            }
            if json {
                println!("{}", to_json(&r));
            } else {
                for e in &r.entries {
                    println!("{} (F = {}): {}", e.label, e.poly, e.report.summary());
                }
                println!("sum equals direct construction: {}", r.sum_matches_direct);
            }
            verdict(r.all_claims_met)
        }
        Command::Sweep {
            family,
            m,
            trials,
            seed,
            emit,
        } => {
            let dir = emit_dir(&emit)?;
            let mut io_error = None;
            let report = sweep_with(family, m, trials, seed, |size, trial, _, pair, _| {
                if let Some(dir) = dir {
                    let path = dir.join(format!("{family}_s{size}_t{trial}.tt"));
                    if let Err(e) = fs::write(&path, pair.f.to_file_string()) {
                        io_error.get_or_insert(format!("{}: {e}", path.display()));
                    }
                }
            });
            if let Some(e) = io_error {
                return Err(Failure::Input(e));
            }
            if json {
                println!("{}", to_json(&report));
            } else {
                for r in &report.rows {
                    println!(
                        "{} size={} trials={} bent={} dual_match={}/{} claims_met={} sample_errors={} {:.1}ms",
                        if r.claims_met == r.trials { "PASS" } else { "FAIL" },
                        r.size,
                        r.trials,
                        r.bent,
                        r.dual_match,
                        r.dual_checked,
                        r.claims_met,
                        r.sample_errors,
                        r.elapsed_ms
                    );
                }
                for f in &report.failures {
                    let what: Vec<String> = f.failures.iter().map(|c| c.to_string()).collect();
                    println!(
                        "failure size={} trial={}: {}",
                        f.size,
                        f.trial,
                        what.join("; ")
                    );
                    if !f.spec.is_empty() {
                        println!("{}", f.spec);
                    }
                }
            }
            verdict(report.all_claims_met)
        }
        Command::Field { n, modulus } => {
            let modulus = match modulus {
                Some(s) => {
                    let t = s.trim_start_matches("0x").trim_start_matches("0X");
                    Some(
                        u64::from_str_radix(t, 16)
                            .map_err(|_| Failure::Input(format!("--mod: bad hex `{s}`")))?,
                    )
                }
                None => None,
            };
            let k = FieldSpec::new(n, modulus)?;
            if json {
                println!(
                    "{}",
                    to_json(&serde_json::json!({
                        "n": k.n(),
                        "mod": format!("{:#x}", k.modulus()),
                        "irreducible": true,
                        "generator": format!("{:#x}", k.generator().index()),
                        "size": k.size(),
                    }))
                );
            } else {
                println!("{k}");
                println!("irreducible: true");
                println!("generator: {:#x}", k.generator().index());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claims) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
