//! The additive character `psi(x) = exp(2 pi i Tr(x / delta))` and the Gauss
//! sums `g_t(d) = sum_{c mod^x d} (c/d)^t psi(c/d)`, with a persistent cache.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rat::CycRat;
use crate::ring::{factorize, primary_associate, residues_coprime, CycInt, RingTag};
use crate::symbols::{residue_symbol, symbol_at_prime};

pub const CACHE_VERSION: &str = "GSCACHE v1";

/// A rational number modulo 1, stored as a reduced fraction in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PsiExponent {
    num: BigInt,
    den: BigInt,
}

impl PsiExponent {
    pub fn new(num: BigInt, den: BigInt) -> PsiExponent {
        assert!(!den.is_zero());
        let (num, den) = if den < BigInt::zero() { (-num, -den) } else { (num, den) };
        let num = num.mod_floor(&den);
        let g = num.gcd(&den);
        PsiExponent {
            num: num / &g,
            den: den / g,
        }
    }

    pub fn zero() -> PsiExponent {
        PsiExponent::new(BigInt::zero(), BigInt::from(1))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn add(&self, o: &PsiExponent) -> PsiExponent {
        PsiExponent::new(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num.to_f64().unwrap() / self.den.to_f64().unwrap()
    }
}

/// `Tr(x / delta) mod 1`. With `delta = 1 + 2w` this is the `w`-coordinate of
/// `x`; with `delta = 2` it is the real coordinate.
pub fn psi_exponent(x: &CycRat) -> PsiExponent {
    let coord = match x.ring() {
        RingTag::Eisenstein => x.num().b(),
        RingTag::Gaussian => x.num().a(),
    };
    PsiExponent::new(coord.clone(), x.den().clone())
}

/// A Gauss sum value with the inputs that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussValue {
    pub ring: RingTag,
    pub d: CycInt,
    /// `t mod n`.
    pub t: u32,
    pub value: Complex64,
    /// Floating-point error bound `N(d) * 1e-15`.
    pub error_bound: f64,
}

fn check_modulus(d: &CycInt) -> Result<()> {
    if d.is_zero() {
        return Err(Error::ZeroModulus);
    }
    if !d.is_coprime_to_lambda() {
        return Err(Error::RamifiedModulus(d.to_string()));
    }
    Ok(())
}

/// Direct summation over `residues_coprime(d)` in sorted order.
pub fn gauss_sum(d: &CycInt, t: i64) -> Result<GaussValue> {
    check_modulus(d)?;
    let ring = d.ring();
    let n = ring.n() as i64;
    let t_mod = t.rem_euclid(n);

    // Character tables at each prime of d: (c/d) = prod (c/p)^e.
    let f = factorize(d)?;
    let mut tables = Vec::with_capacity(f.factors.len());
    for (p, e) in &f.factors {
        let mut table = HashMap::new();
        for r in residues_coprime(&p.pi)? {
            let k = symbol_at_prime(&r, p)?.exponent();
            table.insert(r, k as i64);
        }
        tables.push((p.pi.clone(), *e as i64, table));
    }

    let nd = d.norm();
    let nd_i = nd.to_i128().expect("modulus too large");
    let dconj = d.conj();
    let full = (n as i128) * nd_i;
    let mut sum = Complex64::new(0.0, 0.0);
    for c in residues_coprime(d)? {
        let mut k = 0i64;
        for (pi, e, table) in &tables {
            k += e * table[&c.rem(pi)];
        }
        let k = (k * t_mod).rem_euclid(n) as i128;
        let x = &c * &dconj;
        let coord = match ring {
            RingTag::Eisenstein => x.b(),
            RingTag::Gaussian => x.a(),
        };
        let psi_num = coord.mod_floor(&nd).to_i128().unwrap();
        let phase = (k * nd_i + psi_num * n as i128).rem_euclid(full);
        let angle = 2.0 * std::f64::consts::PI * (phase as f64) / (full as f64);
        sum += Complex64::from_polar(1.0, angle);
    }
    Ok(GaussValue {
        ring,
        d: d.clone(),
        t: t_mod as u32,
        value: sum,
        error_bound: nd.to_f64().unwrap() * 1e-15,
    })
}

/// Gauss sum values keyed by `(canonical d, t mod n)`, optionally persisted
/// to a line-oriented file. Readers share a lock; appends are serialized.
pub struct GaussStore {
    ring: RingTag,
    path: Option<PathBuf>,
    map: RwLock<BTreeMap<(String, u32), Complex64>>,
    writer: Mutex<()>,
}

impl GaussStore {
    pub fn in_memory(ring: RingTag) -> GaussStore {
        GaussStore {
            ring,
            path: None,
            map: RwLock::new(BTreeMap::new()),
            writer: Mutex::new(()),
        }
    }

    /// Open (or create) a cache file. A malformed record is an error; the
    /// store is never rebuilt silently.
    pub fn open(path: impl AsRef<Path>, ring: RingTag) -> Result<GaussStore> {
        let path = path.as_ref().to_path_buf();
        let header = format!("{CACHE_VERSION} {}", ring.short_name());
        let mut map = BTreeMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            let mut lines = reader.lines();
            match lines.next() {
                Some(Ok(h)) if h.trim() == header => {}
                Some(Ok(h)) => return Err(Error::CacheHeader(format!("expected {header:?}, found {h:?}"))),
                Some(Err(e)) => return Err(e.into()),
                None => return Err(Error::CacheHeader("empty file".into())),
            }
            for (i, line) in lines.enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let corrupt = || Error::CorruptCache {
                    line: i + 2,
                    record: line.clone(),
                };
                let (key, value) = parse_record(ring, &line).ok_or_else(corrupt)?;
                map.insert(key, value);
            }
        } else {
            let mut f = File::create(&path)?;
            writeln!(f, "{header}")?;
        }
        Ok(GaussStore {
            ring,
            path: Some(path),
            map: RwLock::new(map),
            writer: Mutex::new(()),
        })
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn insert(&self, key: (String, u32), value: Complex64) -> Result<()> {
        let _guard = self.writer.lock().unwrap();
        if self.map.read().unwrap().contains_key(&key) {
            return Ok(());
        }
        if let Some(path) = &self.path {
            let mut f = OpenOptions::new().append(true).open(path)?;
            writeln!(f, "{},{},{:.16e},{:.16e}", key.0, key.1, value.re, value.im)?;
        }
        self.map.write().unwrap().insert(key, value);
        Ok(())
    }

    /// `g_t(d)`, served from the record of the primary associate of `d` and
    /// corrected by the unit factor `(u/d)^t` when `d` itself is not primary.
    pub fn get(&self, d: &CycInt, t: i64) -> Result<GaussValue> {
        if d.ring() != self.ring {
            return Err(Error::RingMismatch(format!("{d} in a {} store", self.ring)));
        }
        check_modulus(d)?;
        let n = self.ring.n() as i64;
        let t_mod = t.rem_euclid(n) as u32;
        let (canon, u) = primary_associate(d)?;
        let key = (canon.to_string(), t_mod);
        let cached = self.map.read().unwrap().get(&key).copied();
        let base = match cached {
            Some(v) => v,
            None => {
                let v = gauss_sum(&canon, t_mod as i64)?.value;
                self.insert(key, v)?;
                v
            }
        };
        let value = if u.is_one() {
            base
        } else {
            // d = u^-1 * canon, and g_t(v x) = (v/x)^t g_t(x) for a unit v.
            let u_inv = self.ring.units().into_iter().find(|v| (v * &u).is_one()).unwrap();
            base * residue_symbol(&u_inv, &canon, t_mod as i64)?.to_complex()
        };
        Ok(GaussValue {
            ring: self.ring,
            d: d.clone(),
            t: t_mod,
            value,
            error_bound: d.norm().to_f64().unwrap() * 1e-15,
        })
    }
}

fn parse_record(ring: RingTag, line: &str) -> Option<((String, u32), Complex64)> {
    let parts: Vec<&str> = line.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return None;
    }
    let d = CycInt::parse(ring, parts[0]).ok()?;
    if d.is_zero() || !d.is_coprime_to_lambda() || d.canonical_associate() != d {
        return None;
    }
    let t: u32 = parts[1].parse().ok()?;
    if t >= ring.n() {
        return None;
    }
    let re: f64 = parts[2].parse().ok()?;
    let im: f64 = parts[3].parse().ok()?;
    if !re.is_finite() || !im.is_finite() {
        return None;
    }
    Some(((d.to_string(), t), Complex64::new(re, im)))
}

pub fn cached_gauss(d: &CycInt, t: i64, store: &GaussStore) -> Result<GaussValue> {
    store.get(d, t)
}
