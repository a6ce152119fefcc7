//! Whittaker coefficients `tau(m, 1)` of the theta representation on the
//! `n`-fold cover of GL(3), normalized by `tau(1, 1) = 1`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauss::GaussStore;
use crate::ring::{factorize, CycInt, PrimeElt, RingTag};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TauValue {
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub value: Complex64,
    /// Whether `m` lies in the documented support.
    pub support: bool,
    pub provenance: Vec<String>,
}

impl TauValue {
    fn zero(note: String) -> TauValue {
        TauValue {
            value: Complex64::new(0.0, 0.0),
            support: false,
            provenance: vec![note],
        }
    }
}

pub const TAU4_PLAIN: &str = "tau(4, m) extended by plain multiplicativity over prime powers (residue twist set to 1)";

pub fn check_cover(n: u32) -> Result<()> {
    if (2..=4).contains(&n) {
        Ok(())
    } else {
        Err(Error::NoUniqueWhittakerModel(n))
    }
}

/// Ring carrying the `n`-th roots of unity for cover `n`; `n = 2` may use either.
pub fn check_ring(n: u32, ring: RingTag) -> Result<()> {
    check_cover(n)?;
    if n != 2 && ring.n() != n {
        return Err(Error::RingMismatch(format!("cover {n} over {ring}")));
    }
    Ok(())
}

/// Support predicate on the prime valuations of `m`.
pub fn in_support(n: u32, exps: &[u32]) -> bool {
    match n {
        3 => exps.iter().all(|e| e % 3 == 0),
        4 => exps.iter().all(|e| e % 4 <= 1),
        _ => false,
    }
}

pub fn tau(n: u32, m: &CycInt, store: &GaussStore) -> Result<TauValue> {
    check_ring(n, m.ring())?;
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    if !m.is_coprime_to_lambda() {
        return Err(Error::RamifiedModulus(m.to_string()));
    }
    if n == 2 {
        return Ok(TauValue::zero("n=2: all Whittaker coefficients vanish".into()));
    }
    let f = factorize(m)?;
    let primes: Vec<PrimeElt> = f.factors.iter().map(|(p, _)| p.clone()).collect();
    let exps: Vec<u32> = f.factors.iter().map(|(_, e)| *e).collect();
    tau_exps(n, &primes, &exps, store)
}

/// `tau(n, prod p_i^{e_i})` from an exponent vector over distinct primes.
pub fn tau_exps(n: u32, primes: &[PrimeElt], exps: &[u32], store: &GaussStore) -> Result<TauValue> {
    check_cover(n)?;
    if n == 2 {
        return Ok(TauValue::zero("n=2: all Whittaker coefficients vanish".into()));
    }
    if !in_support(n, exps) {
        return Ok(TauValue::zero(format!("exponents {exps:?} outside the n={n} support")));
    }
    let mut value = Complex64::new(1.0, 0.0);
    let mut provenance = Vec::new();
    let active: Vec<(&PrimeElt, u32)> = primes.iter().zip(exps.iter().copied()).filter(|(_, e)| *e > 0).collect();
    match n {
        3 => {
            for (p, e) in &active {
                value *= (p.norm as f64).powi((*e / 3) as i32);
            }
            provenance.push(format!("cube class: tau = N(c) = {}", value.re));
        }
        _ => {
            for (p, e) in &active {
                let k = (*e / 4) as i32;
                let nf = p.norm as f64;
                if e % 4 == 0 {
                    value *= nf.powi(k);
                    provenance.push(format!("tau(({})^{e}) = N^{k}", p.pi));
                } else {
                    let g = store.get(&p.pi, 1)?.value;
                    value *= nf.powf(k as f64 - 0.5) * g.conj();
                    provenance.push(format!("tau(({})^{e}) = N^({k}-1/2)*gbar({})", p.pi, p.pi));
                }
            }
            if active.len() > 1 {
                provenance.push(TAU4_PLAIN.into());
            }
        }
    }
    Ok(TauValue {
        value,
        support: true,
        provenance,
    })
}
