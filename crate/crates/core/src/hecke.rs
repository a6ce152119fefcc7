//! Synthetic Hecke eigenform coefficients `b(m)` in a scalar Whittaker model.
//!
//! Each prime carries a local model: the eigenvalue `lambda`, the seed
//! `beta = b(p)`, the scalars `xi1 = X^[p^-1]`, `xi2 = X^[p^-2]`, the
//! self-pairing `eta_p` and the Gauss sums `g(p)`, `gbar(p)`. Over `Z[w]` the
//! prime-power coefficients follow the two cubic Hecke relations; over `Z[i]`
//! they follow a plain three-term recursion.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::GaussStore;
use crate::report::{self, Residual, VerifyReport};
use crate::ring::{CycInt, PrimeElt, RingTag};
use crate::symbols::{residue_symbol, Mu};

type C = Complex64;

/// Coefficient depth: local sequences are generated for `j <= 3 * DEPTH + 1`.
pub const DEPTH: usize = 50;

const UNIT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct LocalModel {
    pub prime: PrimeElt,
    pub lambda: C,
    pub beta: C,
    pub xi1: C,
    pub xi2: C,
    pub eta: Mu,
    pub g: C,
    pub gbar: C,
    pub side_condition: bool,
}

impl LocalModel {
    /// Canonical side condition: `xi2 = xi1^-1`, `gbar = conj(g)`, `eta = 1`,
    /// with `g = g_1(p)` computed from the store.
    pub fn canonical(prime: PrimeElt, lambda: C, beta: C, xi1_arg: f64, store: &GaussStore) -> Result<LocalModel> {
        let g = store.get(&prime.pi, 1)?.value;
        let xi1 = C::from_polar(1.0, xi1_arg);
        let ring = prime.ring();
        Ok(LocalModel {
            prime,
            lambda,
            beta,
            xi1,
            xi2: xi1.conj(),
            eta: Mu::one(ring),
            g,
            gbar: g.conj(),
            side_condition: true,
        })
    }

    /// Replace `xi2`, dropping the side condition.
    pub fn with_xi2(mut self, xi2_arg: f64) -> LocalModel {
        self.xi2 = C::from_polar(1.0, xi2_arg);
        self.side_condition = false;
        self
    }

    pub fn norm(&self) -> f64 {
        self.prime.norm as f64
    }

    /// `xi1`, `xi2` unimodular; under the side condition also
    /// `xi1 * xi2 * eta = X^[p^-3] = 1` and `gbar = conj(g)`.
    pub fn validate(&self) -> Result<()> {
        let p = &self.prime.pi;
        if (self.xi1.norm() - 1.0).abs() > UNIT_TOL || (self.xi2.norm() - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidModel(format!("X-scalars at {p} are not unimodular")));
        }
        if self.side_condition {
            if (self.xi1 * self.xi2 * self.eta.to_complex() - 1.0).norm() > UNIT_TOL {
                return Err(Error::InvalidModel(format!("xi1*xi2*eta != X^[p^-3] = 1 at {p}")));
            }
            if (self.gbar - self.g.conj()).norm() > UNIT_TOL {
                return Err(Error::InvalidModel(format!("gbar != conj(g) at {p}")));
            }
        }
        Ok(())
    }
}

/// `b(p^j)` for `j <= 3K + 1`.
pub fn generate_local(m: &LocalModel, k: usize) -> Vec<C> {
    let len = 3 * k + 2;
    let mut b = vec![C::new(0.0, 0.0); len.max(2)];
    b[0] = C::new(1.0, 0.0);
    b[1] = m.beta;
    match m.prime.ring() {
        RingTag::Eisenstein => {
            let n = m.norm();
            if len > 3 {
                b[3] = m.lambda - m.g * m.xi1 * m.beta / n;
            }
            if len > 4 {
                b[4] = m.lambda * m.beta - m.gbar * m.xi2 / n;
            }
            for j in 5..len {
                if j % 3 != 2 {
                    b[j] = m.lambda * b[j - 3] - b[j - 6];
                }
            }
        }
        RingTag::Gaussian => {
            for j in 2..len {
                b[j] = m.lambda * b[j - 1] - b[j - 2];
            }
        }
    }
    b.truncate(len);
    b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossPrimeRule {
    /// `b(prod p^e) = prod b_p(p^e)`.
    Plain,
    /// The plain product times `(p/q)` for every pair `p < q` with both
    /// exponents `= 1 (mod 3)`. Cubic only.
    ResidueTwisted,
}

impl CrossPrimeRule {
    pub fn describe(self) -> &'static str {
        match self {
            CrossPrimeRule::Plain => "synthetic cross-prime model: plain product of local coefficients",
            CrossPrimeRule::ResidueTwisted => {
                "synthetic cross-prime model: local product twisted by (p/q) for exponent pairs = 1 mod 3"
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct HeckeModel {
    ring: RingTag,
    locals: Vec<LocalModel>,
    rule: CrossPrimeRule,
    seqs: Vec<Vec<C>>,
    /// `pair[i][j] = (p_i / p_j)`.
    pair: Vec<Vec<Mu>>,
}

impl HeckeModel {
    pub fn new(ring: RingTag, mut locals: Vec<LocalModel>, rule: CrossPrimeRule) -> Result<HeckeModel> {
        locals.sort_by(|a, b| a.prime.cmp(&b.prime));
        for w in locals.windows(2) {
            if w[0].prime == w[1].prime {
                return Err(Error::InvalidModel(format!("prime {} listed twice", w[0].prime)));
            }
        }
        for l in &locals {
            if l.prime.ring() != ring {
                return Err(Error::RingMismatch(format!("prime {} in a {ring} model", l.prime)));
            }
            l.validate()?;
        }
        if rule == CrossPrimeRule::ResidueTwisted && ring != RingTag::Eisenstein {
            return Err(Error::InvalidModel("residue-twisted rule is defined for the cubic ring only".into()));
        }
        let seqs = locals.iter().map(|l| generate_local(l, DEPTH)).collect();
        let mut pair = Vec::with_capacity(locals.len());
        for a in &locals {
            let mut row = Vec::with_capacity(locals.len());
            for b in &locals {
                row.push(if a.prime == b.prime {
                    Mu::one(ring)
                } else {
                    residue_symbol(&a.prime.pi, &b.prime.pi, 1)?
                });
            }
            pair.push(row);
        }
        Ok(HeckeModel {
            ring,
            locals,
            rule,
            seqs,
            pair,
        })
    }

    /// Default rule for the ring: residue-twisted over `Z[w]`, plain over `Z[i]`.
    pub fn default_rule(ring: RingTag) -> CrossPrimeRule {
        match ring {
            RingTag::Eisenstein => CrossPrimeRule::ResidueTwisted,
            RingTag::Gaussian => CrossPrimeRule::Plain,
        }
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn rule(&self) -> CrossPrimeRule {
        self.rule
    }

    pub fn locals(&self) -> &[LocalModel] {
        &self.locals
    }

    pub fn primes(&self) -> Vec<PrimeElt> {
        self.locals.iter().map(|l| l.prime.clone()).collect()
    }

    pub fn index_of(&self, p: &PrimeElt) -> Option<usize> {
        self.locals.iter().position(|l| &l.prime == p)
    }

    pub fn side_condition(&self) -> bool {
        self.locals.iter().all(|l| l.side_condition)
    }

    /// `(p_i / p_j)`.
    pub fn pair_symbol(&self, i: usize, j: usize) -> Mu {
        self.pair[i][j]
    }

    /// `(p_i / M)` for an exponent vector `M` with `M[i] = 0`.
    pub fn symbol_p_over(&self, i: usize, m: &[u32]) -> Mu {
        m.iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(Mu::one(self.ring), |acc, (j, &e)| acc * self.pair[i][j].pow(e as i64))
    }

    /// Cross-prime twist of the synthetic rule at `exps`.
    pub fn twist(&self, exps: &[u32]) -> Mu {
        let mut t = Mu::one(self.ring);
        if self.rule == CrossPrimeRule::ResidueTwisted {
            for i in 0..exps.len() {
                for j in i + 1..exps.len() {
                    if exps[i] % 3 == 1 && exps[j] % 3 == 1 {
                        t = t * self.pair[i][j];
                    }
                }
            }
        }
        t
    }

    /// `b(prod p_i^{e_i})` over the model's primes.
    pub fn coeff(&self, exps: &[u32]) -> Result<C> {
        if exps.len() != self.locals.len() {
            return Err(Error::ModelGap(format!(
                "exponent vector of length {} for a {}-prime model",
                exps.len(),
                self.locals.len()
            )));
        }
        let mut v = C::new(1.0, 0.0);
        for (i, &e) in exps.iter().enumerate() {
            let b = self.seqs[i].get(e as usize).ok_or_else(|| {
                Error::ModelGap(format!("exponent {e} at {} beyond generated depth", self.locals[i].prime))
            })?;
            v *= b;
        }
        Ok(v * self.twist(exps).to_complex())
    }

    pub fn local_seq(&self, i: usize) -> &[C] {
        &self.seqs[i]
    }

    pub fn assumptions(&self) -> Vec<&'static str> {
        let mut a = vec![report::SCALAR_MODEL, self.rule.describe()];
        if self.ring == RingTag::Eisenstein {
            a.push(report::CHI_TRIVIAL);
            a.push(report::B_ZERO);
        }
        if self.locals.iter().any(|l| (l.gbar - l.g.conj()).norm() <= UNIT_TOL) {
            a.push(report::GBAR_CONJ);
        }
        if self.locals.iter().any(|l| l.eta.is_one()) {
            a.push(report::ETA_ONE);
        }
        a
    }

    /// Random canonical model: `lambda` real in `[-2, 2]`, `|beta| <= 2`,
    /// uniform `xi1` argument.
    pub fn random(ring: RingTag, primes: &[PrimeElt], rng: &mut impl Rng, store: &GaussStore) -> Result<HeckeModel> {
        let mut locals = Vec::new();
        for p in primes {
            let lambda = C::new(rng.random_range(-2.0..=2.0), 0.0);
            let beta = C::from_polar(rng.random_range(0.0..=2.0), rng.random_range(0.0..std::f64::consts::TAU));
            let arg = rng.random_range(0.0..std::f64::consts::TAU);
            locals.push(LocalModel::canonical(p.clone(), lambda, beta, arg, store)?);
        }
        HeckeModel::new(ring, locals, Self::default_rule(ring))
    }

    pub fn from_json(s: &str, store: &GaussStore) -> Result<HeckeModel> {
        let file: ModelFile = serde_json::from_str(s).map_err(|e| Error::InvalidModel(e.to_string()))?;
        let ring = RingTag::from_short_name(&file.ring)?;
        if ring != store.ring() {
            return Err(Error::RingMismatch(format!("{ring} model with a {} gauss store", store.ring())));
        }
        let mut locals = Vec::new();
        for r in &file.primes {
            let x = CycInt::parse(ring, &r.p)?;
            let prime = PrimeElt::from_element(&x)?;
            let mut l = LocalModel::canonical(
                prime,
                C::new(r.lambda[0], r.lambda[1]),
                C::new(r.beta[0], r.beta[1]),
                r.xi1_arg,
                store,
            )?;
            l.eta = Mu::new(ring, r.eta_exponent);
            if !r.side_condition {
                l.side_condition = false;
                if let Some(a) = r.xi2_arg {
                    l.xi2 = C::from_polar(1.0, a);
                }
                if let Some(gb) = r.gbar {
                    l.gbar = C::new(gb[0], gb[1]);
                }
            } else if r.xi2_arg.is_some() || r.gbar.is_some() {
                return Err(Error::InvalidModel(format!(
                    "{}: xi2_arg/gbar overrides require side_condition = false",
                    r.p
                )));
            }
            locals.push(l);
        }
        let rule = file.cross_prime.unwrap_or(Self::default_rule(ring));
        HeckeModel::new(ring, locals, rule)
    }

    pub fn load(path: impl AsRef<Path>, store: &GaussStore) -> Result<HeckeModel> {
        let s = std::fs::read_to_string(path)?;
        Self::from_json(&s, store)
    }

    pub fn to_json(&self) -> String {
        let primes = self
            .locals
            .iter()
            .map(|l| PrimeRecord {
                p: l.prime.pi.to_string(),
                lambda: report::c2(l.lambda),
                beta: report::c2(l.beta),
                xi1_arg: l.xi1.arg(),
                side_condition: l.side_condition,
                eta_exponent: l.eta.exponent() as i64,
                xi2_arg: (!l.side_condition).then(|| l.xi2.arg()),
                gbar: (!l.side_condition).then(|| report::c2(l.gbar)),
            })
            .collect();
        let file = ModelFile {
            ring: self.ring.short_name().into(),
            cross_prime: Some(self.rule),
            primes,
        };
        serde_json::to_string_pretty(&file).expect("model serializes")
    }
}

/// On-disk model description.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelFile {
    pub ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_prime: Option<CrossPrimeRule>,
    pub primes: Vec<PrimeRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrimeRecord {
    pub p: String,
    pub lambda: [f64; 2],
    pub beta: [f64; 2],
    pub xi1_arg: f64,
    #[serde(default = "yes")]
    pub side_condition: bool,
    #[serde(default)]
    pub eta_exponent: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi2_arg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gbar: Option<[f64; 2]>,
}

fn yes() -> bool {
    true
}

/// Coefficients keyed by exponent vectors over the model's primes.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable {
    pub entries: BTreeMap<Vec<u32>, C>,
}

impl CoeffTable {
    /// Every exponent vector with `e_i <= caps[i]`.
    pub fn from_model(model: &HeckeModel, caps: &[u32]) -> Result<CoeffTable> {
        let mut entries = BTreeMap::new();
        let mut cur = vec![0u32; caps.len()];
        loop {
            entries.insert(cur.clone(), model.coeff(&cur)?);
            let mut i = 0;
            loop {
                if i == caps.len() {
                    return Ok(CoeffTable { entries });
                }
                if cur[i] < caps[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    pub fn get(&self, k: &[u32]) -> Option<C> {
        self.entries.get(k).copied()
    }
}

pub fn relation_label(p: &PrimeElt, m: &[u32], k: u32) -> String {
    format!("p={p} M={m:?} k={k}")
}

/// Residuals of every Hecke relation instantiable inside the table:
/// `lambda b(p^k M) = b(p^(k-3) M) + b(p^(k+3) M)
///   + [k <= 1] N^-1 (p/M)^(-k-1) g_(k+1) X^[p^(-k-1)] b(p^(1-k) M)`
/// for `M` coprime to `p` (three-term `b(p^(k-1)M) + b(p^(k+1)M)` over `Z[i]`).
pub fn verify_hecke(table: &CoeffTable, model: &HeckeModel) -> Result<VerifyReport> {
    let nprimes = model.locals().len();
    let cubic = model.ring() == RingTag::Eisenstein;
    let step: u32 = if cubic { 3 } else { 1 };
    let mut rep = VerifyReport::new(
        "verify-hecke",
        serde_json::json!({ "primes": model.primes().iter().map(|p| p.to_string()).collect::<Vec<_>>(), "entries": table.entries.len() }),
        1e-12,
    );
    for a in model.assumptions() {
        rep.assume(a);
    }
    let mut missing: Vec<Vec<u32>> = Vec::new();
    for i in 0..nprimes {
        let l = &model.locals()[i];
        let n = l.norm();
        let mut any = false;
        for (key, _) in table.entries.iter().filter(|(k, _)| k.len() == nprimes && k[i] == 0) {
            let at = |e: u32| {
                let mut v = key.clone();
                v[i] = e;
                v
            };
            let kmax = table
                .entries
                .keys()
                .filter(|k| k.iter().enumerate().all(|(j, &e)| j == i || e == key[j]))
                .map(|k| k[i])
                .max()
                .unwrap_or(0);
            if kmax < step {
                continue;
            }
            any = true;
            let ps = model.symbol_p_over(i, key);
            for k in 0..=kmax - step {
                let mut need = vec![at(k), at(k + step)];
                if k >= step {
                    need.push(at(k - step));
                }
                if cubic && k <= 1 {
                    need.push(at(1 - k));
                }
                let absent: Vec<Vec<u32>> = need.iter().filter(|v| !table.entries.contains_key(*v)).cloned().collect();
                if !absent.is_empty() {
                    missing.extend(absent);
                    continue;
                }
                let b = |e: u32| table.entries[&at(e)];
                let mut r = l.lambda * b(k) - b(k + step);
                if k >= step {
                    r -= b(k - step);
                }
                if cubic && k <= 1 {
                    let (gk, xk) = if k == 0 { (l.g, l.xi1) } else { (l.gbar, l.xi2) };
                    let sym = ps.pow(-(k as i64) - 1).to_complex();
                    r -= sym * gk * xk * b(1 - k) / n;
                }
                rep.push(Residual::new(relation_label(&l.prime, key, k), r));
            }
        }
        if !any {
            let mut v = vec![0u32; nprimes];
            v[i] = step;
            missing.push(v);
        }
    }
    if !missing.is_empty() {
        missing.sort();
        missing.dedup();
        return Err(Error::MissingKeys(missing));
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::primes_up_to;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn store() -> GaussStore {
        GaussStore::in_memory(RingTag::Eisenstein)
    }

    fn prime(norm: u64) -> PrimeElt {
        primes_up_to(RingTag::Eisenstein, norm)
            .into_iter()
            .find(|p| p.norm == norm)
            .unwrap()
    }

    #[test]
    fn zero_seed_examples() {
        let s = store();
        let l = LocalModel::canonical(prime(7), C::new(0.0, 0.0), C::new(0.0, 0.0), 0.3, &s).unwrap();
        let b = generate_local(&l, 3);
        assert_eq!(b.len(), 11);
        assert_eq!(b[3], C::new(0.0, 0.0));
        assert!((b[4] + l.gbar * l.xi2 / 7.0).norm() < 1e-15);
        assert_eq!(b[2], C::new(0.0, 0.0));
    }

    #[test]
    fn first_relation_and_three_term_branch() {
        let s = store();
        let l = LocalModel::canonical(prime(13), C::new(0.7, 0.0), C::new(0.2, -1.1), 1.9, &s).unwrap();
        let b = generate_local(&l, 4);
        assert!((b[3] - (l.lambda - l.g * l.xi1 * b[1] / 13.0)).norm() < 1e-14);
        assert!((b[9] - (l.lambda * b[6] - b[3])).norm() < 1e-14);
        assert!((b[10] - (l.lambda * b[7] - b[4])).norm() < 1e-14);
    }

    #[test]
    fn coefficients_over_several_primes() {
        let s = store();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let primes = vec![prime(7), prime(13)];
        let m = HeckeModel::random(RingTag::Eisenstein, &primes, &mut rng, &s).unwrap();
        assert_eq!(m.coeff(&[0, 0]).unwrap(), C::new(1.0, 0.0));
        assert_eq!(m.coeff(&[3, 0]).unwrap(), m.local_seq(0)[3]);
        let plain = m.local_seq(0)[3] * m.local_seq(1)[4];
        assert!((m.coeff(&[3, 4]).unwrap() - plain).norm() < 1e-14);
        let twisted = m.local_seq(0)[1] * m.local_seq(1)[4] * m.pair_symbol(0, 1).to_complex();
        assert!((m.coeff(&[1, 4]).unwrap() - twisted).norm() < 1e-14);
        assert!(matches!(m.coeff(&[200, 0]), Err(Error::ModelGap(_))));
    }

    #[test]
    fn generated_tables_satisfy_both_relations() {
        let s = store();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let primes = vec![prime(7), prime(13)];
        for _ in 0..20 {
            let m = HeckeModel::random(RingTag::Eisenstein, &primes, &mut rng, &s).unwrap();
            let t = CoeffTable::from_model(&m, &[10, 7]).unwrap();
            let rep = verify_hecke(&t, &m).unwrap();
            assert!(rep.passed, "{}", rep.max_abs_residual);
            assert!(!rep.residuals.is_empty());
        }
    }

    #[test]
    fn plain_cross_prime_product_breaks_the_relations() {
        let s = store();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let primes = vec![prime(7), prime(13)];
        let m = HeckeModel::random(RingTag::Eisenstein, &primes, &mut rng, &s).unwrap();
        let plain = HeckeModel::new(RingTag::Eisenstein, m.locals().to_vec(), CrossPrimeRule::Plain).unwrap();
        if !m.pair_symbol(0, 1).is_one() {
            let t = CoeffTable::from_model(&plain, &[4, 4]).unwrap();
            assert!(!verify_hecke(&t, &plain).unwrap().passed);
        }
    }

    #[test]
    fn perturbation_is_localized() {
        let s = store();
        let p = prime(7);
        let l = LocalModel::canonical(p.clone(), C::new(1.3, 0.0), C::new(0.5, 0.5), 0.4, &s).unwrap();
        let m = HeckeModel::new(RingTag::Eisenstein, vec![l], CrossPrimeRule::ResidueTwisted).unwrap();
        let mut t = CoeffTable::from_model(&m, &[13]).unwrap();
        *t.entries.get_mut(&vec![6]).unwrap() += C::new(1e-3, 0.0);
        let rep = verify_hecke(&t, &m).unwrap();
        let bad: Vec<&str> = rep.residuals.iter().filter(|r| r.abs > 1e-12).map(|r| r.label.as_str()).collect();
        // b(p^6) enters the relations at k = 3 (both sides), 6 and 9.
        let expect: Vec<String> = [3, 6, 9].iter().map(|&k| relation_label(&p, &[0], k)).collect();
        assert_eq!(bad, expect.iter().map(|s| s.as_str()).collect::<Vec<_>>());
    }

    #[test]
    fn chebyshev_closed_form() {
        let s = store();
        let p = prime(19);
        let theta: f64 = 0.83;
        let l = LocalModel::canonical(p, C::new(2.0 * theta.cos(), 0.0), C::new(0.0, 0.0), 2.2, &s).unwrap();
        let m = HeckeModel::new(RingTag::Eisenstein, vec![l.clone()], CrossPrimeRule::ResidueTwisted).unwrap();
        let u = |k: i32| C::new(((k + 1) as f64 * theta).sin() / theta.sin(), 0.0);
        let mut entries = BTreeMap::new();
        for k in 0..5 {
            entries.insert(vec![3 * k as u32], u(k));
            let b1 = if k == 0 { C::new(0.0, 0.0) } else { -l.gbar * l.xi2 / 19.0 * u(k - 1) };
            entries.insert(vec![3 * k as u32 + 1], b1);
            entries.insert(vec![3 * k as u32 + 2], C::new(0.0, 0.0));
        }
        let rep = verify_hecke(&CoeffTable { entries }, &m).unwrap();
        assert!(rep.max_abs_residual < 1e-12, "{}", rep.max_abs_residual);
    }

    #[test]
    fn missing_range_is_reported() {
        let s = store();
        let l = LocalModel::canonical(prime(7), C::new(1.0, 0.0), C::new(0.0, 0.0), 0.0, &s).unwrap();
        let m = HeckeModel::new(RingTag::Eisenstein, vec![l], CrossPrimeRule::ResidueTwisted).unwrap();
        let t = CoeffTable::from_model(&m, &[2]).unwrap();
        assert_eq!(verify_hecke(&t, &m), Err(Error::MissingKeys(vec![vec![3]])));
    }

    #[test]
    fn bounded_growth_for_real_eigenvalues() {
        let s = store();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in primes_up_to(RingTag::Eisenstein, 40) {
            let m = HeckeModel::random(RingTag::Eisenstein, &[p], &mut rng, &s).unwrap();
            for (j, b) in m.local_seq(0).iter().enumerate() {
                assert!(b.norm() <= 10.0 * (j as f64 + 1.0).powi(2), "{j}: {b}");
            }
        }
    }

    #[test]
    fn model_json_round_trip_and_side_condition_check() {
        let s = store();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = HeckeModel::random(RingTag::Eisenstein, &[prime(7), prime(13)], &mut rng, &s).unwrap();
        let back = HeckeModel::from_json(&m.to_json(), &s).unwrap();
        for (a, b) in m.locals().iter().zip(back.locals()) {
            assert_eq!(a.prime, b.prime);
            assert!((a.xi1 - b.xi1).norm() < 1e-15);
            assert_eq!(a.lambda, b.lambda);
        }
        let mut bad = m.locals()[0].clone();
        bad.xi2 = C::from_polar(1.0, 0.1);
        assert!(bad.validate().is_err());
        assert!(bad.clone().with_xi2(0.1).validate().is_ok());
    }
}
