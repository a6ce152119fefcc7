//! Command-line driver. Human-readable summaries go to stdout, JSON reports
//! to the file named by `--json`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gauss::GaussStore;
use crate::hecke::HeckeModel;
use crate::report::{c2, VerifyReport};
use crate::ring::{primes_up_to, CycInt, RingTag};
use crate::series::{
    cancellation_check, euler_compare, local_euler_report, n4_support_report, required_bound, series_report,
    SeriesParams,
};
use crate::suite::{prime_of_norm, run_suite, Stores};
use crate::symbols::{kubota_gamma, kubota_sl2, residue_symbol};
use crate::tau::{check_ring, tau};
use crate::unfold::{coset_count_check, dims_report, unfold_verify};

/// Directory holding the Gauss sum caches (`gauss-eis.cache`,
/// `gauss-gau.cache`) when `--cache` is not given.
pub const CACHE_ENV: &str = "METATHETA_GAUSS_CACHE";

#[derive(Parser, Debug)]
#[command(name = "metatheta", version, about = "Metaplectic theta coefficients and Shalika Dirichlet series checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// Write the JSON report here.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Gauss sum cache directory (default: $METATHETA_GAUSS_CACHE, else in memory).
    #[arg(long, value_name = "DIR")]
    cache: Option<PathBuf>,
    /// Override the report tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug, Clone)]
struct ModelArgs {
    /// Model JSON file; without it a random canonical model is drawn.
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,
    /// Seed for the random model.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Norm bound for the primes of the random model (default: the series
    /// bound, or 13 for the Euler checks).
    #[arg(long)]
    model_primes: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Power residue symbol (a/m)^t.
    Symbol {
        #[arg(long, default_value = "eis")]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        t: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Gauss sum g_t(d).
    Gauss {
        #[arg(long, default_value = "eis")]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        t: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Whittaker coefficient tau(m, 1) of the theta representation.
    Tau {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        /// Needed for n = 2 when m has no ring suffix.
        #[arg(long)]
        ring: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Kubota symbol of [[a,b],[c,d]], or of gamma_1 gamma_2 from (c1,d1,c2,d2).
    Kubota {
        #[arg(long, default_value = "eis")]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        d1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        d2: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Truncated Dirichlet series D(s).
    Series {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        bound: u128,
        /// Ring for n = 2 (default eis).
        #[arg(long)]
        ring: Option<String>,
        /// Sum only over elements supported on the model primes.
        #[arg(long)]
        restrict: bool,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Local Euler identity at each prime of the model.
    LocalEuler {
        #[arg(long = "K", default_value_t = 8)]
        k: usize,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Assembled cubic series against the Euler product.
    EulerCheck {
        #[arg(long = "K", default_value_t = 4)]
        k: usize,
        #[arg(long, default_value = "0.6+0.3j", allow_hyphen_values = true)]
        s: String,
        /// Defaults to prod N(p)^(3K).
        #[arg(long)]
        bound: Option<u128>,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Cancellation of the (d,p)_S term at a pair of model primes.
    CancelCheck {
        #[arg(long = "K", default_value_t = 5)]
        k: usize,
        /// Index of p among the model primes.
        #[arg(long, default_value_t = 0)]
        p: usize,
        /// Index of the second prime.
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Support and gbar provenance of the quartic series.
    N4Report {
        #[arg(long, default_value_t = 50)]
        bound: u128,
        #[arg(long, default_value = "0.6+0.3j", allow_hyphen_values = true)]
        s: String,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Exact matrix identities of the unfolding on random tuples.
    UnfoldVerify {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Coset counts, direct against parametrized.
    CosetCount {
        #[arg(long, default_value_t = 50)]
        bound: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Orbit dimension equation for 2 <= r <= rmax.
    Dims {
        #[arg(long, default_value_t = 10)]
        rmax: u32,
        #[command(flatten)]
        common: Common,
    },
    /// The full acceptance suite.
    VerifyAll {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

/// Parse `"0.6+0.3j"`, `"1.5"`, `"-2j"`; `i` works in place of `j`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || Error::Parse(s.to_string(), "expected a complex number like 0.6+0.3j".into());
    let num = |x: &str| x.parse::<f64>().map_err(|_| err());
    let Some(body) = t.strip_suffix('j').or_else(|| t.strip_suffix('i')) else {
        return Ok(Complex64::new(num(&t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |x: &str| match x {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => num(x),
    };
    match split {
        Some(k) => Ok(Complex64::new(num(&body[..k])?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

fn ring_arg(s: &str) -> Result<RingTag> {
    RingTag::from_short_name(s)
}

fn cache_dir(common: &Common) -> Option<PathBuf> {
    common.cache.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}

fn open_store(common: &Common, ring: RingTag) -> Result<GaussStore> {
    match cache_dir(common) {
        None => Ok(GaussStore::in_memory(ring)),
        Some(dir) => {
            std::fs::create_dir_all(&dir)?;
            GaussStore::open(dir.join(format!("gauss-{}.cache", ring.short_name())), ring)
        }
    }
}

/// Random-model prime sets used when neither `--model` nor `--model-primes`
/// is given.
enum DefaultPrimes {
    UpTo(u64),
    /// One prime of each norm 7 and 13.
    Pair,
}

fn load_model(args: &ModelArgs, ring: RingTag, store: &GaussStore, default: DefaultPrimes) -> Result<HeckeModel> {
    match &args.model {
        Some(path) => {
            let m = HeckeModel::load(path, store)?;
            if m.ring() != ring {
                return Err(Error::RingMismatch(format!("{} model where {ring} is needed", m.ring())));
            }
            Ok(m)
        }
        None => HeckeModel::random(
            ring,
            &match (args.model_primes, default) {
                (Some(b), _) | (None, DefaultPrimes::UpTo(b)) => primes_up_to(ring, b),
                (None, DefaultPrimes::Pair) => vec![prime_of_norm(ring, 7), prime_of_norm(ring, 13)],
            },
            &mut ChaCha8Rng::seed_from_u64(args.seed),
            store,
        ),
    }
}

/// The ring of a model file, read before the matching store is opened.
fn model_ring(args: &ModelArgs, default: RingTag) -> Result<RingTag> {
    match &args.model {
        None => Ok(default),
        Some(p) => {
            let v: Value = serde_json::from_str(&std::fs::read_to_string(p)?)
                .map_err(|e| Error::InvalidModel(e.to_string()))?;
            let r = v
                .get("ring")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::InvalidModel("missing \"ring\"".into()))?;
            RingTag::from_short_name(r)
        }
    }
}

fn write_json(path: &Option<PathBuf>, text: &str) -> Result<()> {
    if let Some(p) = path {
        write_file(p, text)?;
    }
    Ok(())
}

fn write_file(p: &Path, text: &str) -> Result<()> {
    let mut f = std::fs::File::create(p)?;
    f.write_all(text.as_bytes())?;
    f.write_all(b"\n")?;
    Ok(())
}

enum Outcome {
    Ok,
    Failed,
}

fn emit_report(mut rep: VerifyReport, common: &Common) -> Result<Outcome> {
    if let Some(t) = common.tol {
        rep.tolerance = t;
        rep = rep.finish();
    }
    let verdict = if rep.passed { "PASS" } else { "FAIL" };
    match rep.value {
        Some(v) => println!(
            "{}: value = {:.12e}{:+.12e}i, max residual {:.3e} (tol {:.1e}) {verdict}",
            rep.command, v.re, v.im, rep.max_abs_residual, rep.tolerance
        ),
        None => println!(
            "{}: {} residuals, max {:.3e} (tol {:.1e}) {verdict}",
            rep.command,
            rep.residuals.len(),
            rep.max_abs_residual,
            rep.tolerance
        ),
    }
    for d in &rep.detected_conditions {
        println!("  {d}");
    }
    if !rep.passed {
        for r in rep.residuals.iter().filter(|r| r.abs > rep.tolerance).take(10) {
            println!("  {}: {:.3e}", r.label, r.abs);
        }
    }
    write_json(&common.json, &rep.to_json())?;
    Ok(if rep.passed { Outcome::Ok } else { Outcome::Failed })
}

fn emit_value(summary: String, value: Value, common: &Common) -> Result<Outcome> {
    println!("{summary}");
    write_json(&common.json, &serde_json::to_string_pretty(&value).expect("serializes"))?;
    Ok(Outcome::Ok)
}

fn execute(cmd: Cmd) -> Result<Outcome> {
    match cmd {
        Cmd::Symbol { ring, a, m, t, common } => {
            let ring = ring_arg(&ring)?;
            let (a, m) = (CycInt::parse(ring, &a)?, CycInt::parse(ring, &m)?);
            let mu = residue_symbol(&a, &m, t)?;
            emit_value(
                format!("({a}/{m})^{t} = zeta_{}^{}", ring.n(), mu.exponent()),
                json!({ "a": a.to_string(), "m": m.to_string(), "t": t, "exponent": mu.exponent(),
                        "n": ring.n(), "value": c2(mu.to_complex()) }),
                &common,
            )
        }
        Cmd::Gauss { ring, d, t, common } => {
            let ring = ring_arg(&ring)?;
            let d = CycInt::parse(ring, &d)?;
            let store = open_store(&common, ring)?;
            let g = store.get(&d, t)?;
            emit_value(
                format!("g_{t}({d}) = {:.15e}{:+.15e}i, |g|^2 = {:.12}", g.value.re, g.value.im, g.value.norm_sqr()),
                json!({ "ring": ring.short_name(), "d": d.to_string(), "t": g.t, "value": c2(g.value),
                        "abs_squared": g.value.norm_sqr(), "norm": d.norm().to_string(),
                        "error_bound": g.error_bound }),
                &common,
            )
        }
        Cmd::Tau { n, m, ring, common } => {
            let m = match (&ring, n) {
                (Some(r), _) => CycInt::parse(ring_arg(r)?, &m)?,
                (None, 3) => CycInt::parse(RingTag::Eisenstein, &m)?,
                (None, 4) => CycInt::parse(RingTag::Gaussian, &m)?,
                (None, _) => CycInt::parse_infer(&m)?,
            };
            check_ring(n, m.ring())?;
            let store = open_store(&common, m.ring())?;
            let t = tau(n, &m, &store)?;
            emit_value(
                format!("tau_{n}({m}) = {:.15e}{:+.15e}i (support: {})", t.value.re, t.value.im, t.support),
                json!({ "n": n, "m": m.to_string(), "value": c2(t.value), "support": t.support,
                        "provenance": t.provenance }),
                &common,
            )
        }
        Cmd::Kubota { ring, a, b, c, d, c1, d1, c2: cc2, d2, common } => {
            let ring = ring_arg(&ring)?;
            let p = |s: &String| CycInt::parse(ring, s);
            let (mu, params) = match (a, b, c, d, c1, d1, cc2, d2) {
                (Some(a), Some(b), Some(c), Some(d), None, None, None, None) => (
                    kubota_sl2(&p(&a)?, &p(&b)?, &p(&c)?, &p(&d)?)?,
                    json!({ "form": "sl2", "a": a, "b": b, "c": c, "d": d }),
                ),
                (None, None, None, None, Some(c1), Some(d1), Some(c2), Some(d2)) => (
                    kubota_gamma(&p(&c1)?, &p(&d1)?, &p(&c2)?, &p(&d2)?)?,
                    json!({ "form": "gamma", "c1": c1, "d1": d1, "c2": c2, "d2": d2 }),
                ),
                _ => {
                    return Err(Error::Parse(
                        "kubota".into(),
                        "give either --a --b --c --d or --c1 --d1 --c2 --d2".into(),
                    ))
                }
            };
            let mut v = params;
            v["exponent"] = json!(mu.exponent());
            v["n"] = json!(ring.n());
            v["value"] = json!(c2(mu.to_complex()));
            emit_value(format!("kappa = zeta_{}^{}", ring.n(), mu.exponent()), v, &common)
        }
        Cmd::Series { n, s, bound, ring, restrict, model, common } => {
            let ring = match (n, ring) {
                (_, Some(r)) => ring_arg(&r)?,
                (4, None) => RingTag::Gaussian,
                _ => RingTag::Eisenstein,
            };
            check_ring(n, ring)?;
            let ring = model_ring(&model, ring)?;
            check_ring(n, ring)?;
            let store = open_store(&common, ring)?;
            let m = load_model(&model, ring, &store, DefaultPrimes::UpTo(u64::try_from(bound).unwrap_or(u64::MAX)))?;
            let mut params = SeriesParams::new(n, parse_complex(&s)?, bound);
            if restrict {
                params = params.with_primes(m.primes());
            }
            let rep = series_report(&params, &m, &store)?;
            emit_report(rep, &common)
        }
        Cmd::LocalEuler { k, model, common } => {
            let ring = model_ring(&model, RingTag::Eisenstein)?;
            let store = open_store(&common, ring)?;
            let m = load_model(&model, ring, &store, DefaultPrimes::UpTo(13))?;
            emit_report(local_euler_report(&m, k)?, &common)
        }
        Cmd::EulerCheck { k, s, bound, model, common } => {
            let ring = model_ring(&model, RingTag::Eisenstein)?;
            let store = open_store(&common, ring)?;
            let m = load_model(&model, ring, &store, DefaultPrimes::Pair)?;
            let bound = match bound {
                Some(b) => b,
                None => required_bound(&m.primes(), k)
                    .ok_or_else(|| Error::TruncationBox("prod N(p)^(3K) overflows; lower --K".into()))?,
            };
            let params = SeriesParams::new(3, parse_complex(&s)?, bound).with_primes(m.primes());
            emit_report(euler_compare(&params, &m, &store, k)?, &common)
        }
        Cmd::CancelCheck { k, p, q, model, common } => {
            let ring = model_ring(&model, RingTag::Eisenstein)?;
            let store = open_store(&common, ring)?;
            let m = load_model(&model, ring, &store, DefaultPrimes::Pair)?;
            let count = m.locals().len();
            if p >= count || q >= count || p == q {
                return Err(Error::InvalidModel(format!("need distinct prime indices below {count}")));
            }
            emit_report(cancellation_check(&m, p, q, k)?, &common)
        }
        Cmd::N4Report { bound, s, model, common } => {
            let ring = model_ring(&model, RingTag::Gaussian)?;
            let store = open_store(&common, ring)?;
            let m = load_model(&model, ring, &store, DefaultPrimes::UpTo(u64::try_from(bound).unwrap_or(u64::MAX)))?;
            let rep = n4_support_report(&SeriesParams::new(4, parse_complex(&s)?, bound), &m, &store)?;
            emit_report(rep, &common)
        }
        Cmd::UnfoldVerify { samples, seed, common } => emit_report(unfold_verify(samples, seed)?, &common),
        Cmd::CosetCount { bound, common } => emit_report(coset_count_check(RingTag::Eisenstein, bound)?, &common),
        Cmd::Dims { rmax, common } => emit_report(dims_report(rmax)?, &common),
        Cmd::VerifyAll { seed, common } => {
            let stores = Stores {
                eis: open_store(&common, RingTag::Eisenstein)?,
                gau: open_store(&common, RingTag::Gaussian)?,
            };
            let start = Instant::now();
            let suite = run_suite(seed, &stores)?;
            for c in &suite.criteria {
                println!("{} criterion {:>2}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.name);
            }
            println!("elapsed {:.2}s", start.elapsed().as_secs_f64());
            write_json(&common.json, &suite.to_json())?;
            Ok(if suite.passed { Outcome::Ok } else { Outcome::Failed })
        }
    }
}

/// Parse `argv` (without the program name) and run; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = std::iter::once(OsString::from("metatheta")).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.cmd) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_grammar() {
        assert_eq!(parse_complex("0.6+0.3j").unwrap(), Complex64::new(0.6, 0.3));
        assert_eq!(parse_complex(" -1.5 ").unwrap(), Complex64::new(-1.5, 0.0));
        assert_eq!(parse_complex("-2j").unwrap(), Complex64::new(0.0, -2.0));
        assert_eq!(parse_complex("1e-3-1e+2i").unwrap(), Complex64::new(1e-3, -100.0));
        assert_eq!(parse_complex("2-j").unwrap(), Complex64::new(2.0, -1.0));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["dims", "--rmax", "10"]), 0);
        assert_eq!(run(["badcmd"]), 2);
        assert_eq!(run(["dims", "--bogus"]), 2);
        assert_eq!(run(["tau", "--n", "5", "--m", "2"]), 2);
    }
}
