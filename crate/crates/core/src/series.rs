//! Assembly of the Dirichlet series
//! `D(s) = sum_{d, m} X^[d^-1] g(d) (m,d)_S b(md) tau(m,1) N(m)^(1/2-2s) N(d)^(3/2-6s)`
//! over elements coprime to the ramified prime, and the checks of its Euler
//! product for the cubic cover.
//!
//! For `n = 3`, writing `m = c^3` and `x_p = N(p)^(-s1)` with `s1 = 6s - 5/2`,
//! each term is a monomial `x^(c + d)` times the formal coefficient
//! `X^[d^-1] g(d) b(c^3 d) / N(d)`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::gauss::GaussStore;
use crate::hecke::{generate_local, HeckeModel, LocalModel};
use crate::poly::{chebyshev_u, Series};
use crate::report::{self, ser_complex, Residual, VerifyReport};
use crate::ring::{element_of_exponents, exponent_vectors, norm_of_exponents, primes_up_to, PrimeElt, RingTag};
use crate::symbols::Mu;
use crate::tau::{check_cover, check_ring, tau_exps, TAU4_PLAIN};

type C = Complex64;

/// Composite Gauss sums up to this norm are summed directly; larger ones use
/// twisted multiplicativity over the prime factors.
pub const DIRECT_GAUSS_LIMIT: u128 = 2000;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesParams {
    pub n: u32,
    pub s: C,
    /// Box `N(m) <= bound`, `N(d) <= bound`.
    pub bound: u128,
    /// Primes to enumerate over; all primes of norm `<= bound` when absent.
    pub primes: Option<Vec<PrimeElt>>,
}

impl SeriesParams {
    pub fn new(n: u32, s: C, bound: u128) -> SeriesParams {
        SeriesParams {
            n,
            s,
            bound,
            primes: None,
        }
    }

    pub fn with_primes(mut self, primes: Vec<PrimeElt>) -> SeriesParams {
        self.primes = Some(primes);
        self
    }

    pub fn s1(&self) -> C {
        self.s * 6.0 - 2.5
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "s": report::c2(self.s),
            "s1": report::c2(self.s1()),
            "bound": self.bound.to_string(),
            "h": 1,
            "primes": self.primes.as_ref().map(|ps| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermRecord {
    pub d: String,
    pub m: String,
    pub d_exps: Vec<u32>,
    pub m_exps: Vec<u32>,
    #[serde(serialize_with = "ser_complex")]
    pub value: C,
    #[serde(serialize_with = "ser_complex")]
    pub xi: C,
    #[serde(serialize_with = "ser_complex")]
    pub g: C,
    /// Exponent of `(m,d)_S` as a root of unity.
    pub twist: u32,
    #[serde(serialize_with = "ser_complex")]
    pub b: C,
    #[serde(serialize_with = "ser_complex")]
    pub tau: C,
    #[serde(serialize_with = "ser_complex")]
    pub norm_factor: C,
    /// `x`-monomial exponents `c + d` (cubic cover only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monomial: Option<Vec<u32>>,
    /// Coefficient of that monomial (cubic cover only).
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "report::ser_opt_complex")]
    pub formal: Option<C>,
    pub provenance: Vec<String>,
}

impl TermRecord {
    pub fn factor_product(&self, ring: RingTag) -> C {
        let tw = Mu::new(ring, self.twist as i64).to_complex();
        self.xi * self.g * tw * self.b * self.tau * self.norm_factor
    }
}

/// `N^z` for real `N > 0`.
fn npow(n: f64, z: C) -> C {
    (z * n.ln()).exp()
}

struct Ctx<'a> {
    model: &'a HeckeModel,
    store: &'a GaussStore,
    primes: Vec<PrimeElt>,
    /// `primes[i]` is `model.locals()[idx[i]]`.
    idx: Vec<usize>,
}

impl<'a> Ctx<'a> {
    fn new(model: &'a HeckeModel, store: &'a GaussStore, primes: Vec<PrimeElt>) -> Result<Ctx<'a>> {
        let mut idx = Vec::with_capacity(primes.len());
        for p in &primes {
            idx.push(
                model
                    .index_of(p)
                    .ok_or_else(|| Error::ModelGap(format!("model has no local data at {p}")))?,
            );
        }
        Ok(Ctx {
            model,
            store,
            primes,
            idx,
        })
    }

    fn local(&self, i: usize) -> &LocalModel {
        &self.model.locals()[self.idx[i]]
    }

    /// `(p_i / p_j)`.
    fn sym(&self, i: usize, j: usize) -> Mu {
        self.model.pair_symbol(self.idx[i], self.idx[j])
    }

    /// `(p_i, p_j)_S = (p_j / p_i) (p_i / p_j)^-1`.
    fn hilbert(&self, i: usize, j: usize) -> Mu {
        self.sym(j, i) * self.sym(i, j).inv()
    }

    fn to_model(&self, exps: &[u32]) -> Vec<u32> {
        let mut v = vec![0u32; self.model.locals().len()];
        for (i, &e) in exps.iter().enumerate() {
            v[self.idx[i]] += e;
        }
        v
    }

    /// `X^[d^-1]` for squarefree `d`, built prime by prime with the cocycle
    /// `X^[ab] = (b,a)_S X^[a] X^[b]`.
    fn xi(&self, d: &[u32]) -> C {
        let support: Vec<usize> = (0..d.len()).filter(|&i| d[i] == 1).collect();
        let mut v = c(1.0);
        let mut mu = Mu::one(self.model.ring());
        for (k, &i) in support.iter().enumerate() {
            v *= self.local(i).xi1;
            for &j in &support[..k] {
                mu = mu * self.hilbert(i, j);
            }
        }
        v * mu.to_complex()
    }

    /// `g(d)` for squarefree `d` and a note on how it was obtained.
    fn gauss(&self, d: &[u32]) -> Result<(C, Option<String>)> {
        let ring = self.model.ring();
        let nd = norm_of_exponents(&self.primes, d);
        let support: Vec<usize> = (0..d.len()).filter(|&i| d[i] == 1).collect();
        if support.len() <= 1 || nd <= DIRECT_GAUSS_LIMIT {
            let el = element_of_exponents(ring, &self.primes, d);
            return Ok((self.store.get(&el, 1)?.value, None));
        }
        let mut v = c(1.0);
        let mut mu = Mu::one(ring);
        for (k, &i) in support.iter().enumerate() {
            v *= self.store.get(&self.primes[i].pi, 1)?.value;
            for &j in &support[..k] {
                mu = mu * self.sym(i, j) * self.sym(j, i);
            }
        }
        Ok((v * mu.to_complex(), Some("g(d) by twisted multiplicativity".into())))
    }

    /// `(m, d)_S` by bimultiplicativity; same-prime pairings use `eta_p`.
    fn twist(&self, m: &[u32], d: &[u32]) -> Mu {
        let mut mu = Mu::one(self.model.ring());
        for i in 0..m.len() {
            if m[i] == 0 {
                continue;
            }
            for j in 0..d.len() {
                if d[j] == 0 {
                    continue;
                }
                let e = (m[i] * d[j]) as i64;
                mu = mu * if i == j { self.local(i).eta.pow(e) } else { self.hilbert(i, j).pow(e) };
            }
        }
        mu
    }
}

fn check_model(params: &SeriesParams, model: &HeckeModel) -> Result<()> {
    check_cover(params.n)?;
    check_ring(params.n, model.ring())
}

fn series_primes(params: &SeriesParams, ring: RingTag) -> Result<Vec<PrimeElt>> {
    let mut ps = match &params.primes {
        Some(ps) => ps.clone(),
        None => {
            let b = u64::try_from(params.bound)
                .map_err(|_| Error::OutsideDomain("bound too large without an explicit prime list".into()))?;
            primes_up_to(ring, b)
        }
    };
    ps.sort();
    ps.dedup();
    Ok(ps)
}

/// Every term of the truncated series in the order (N(d), N(m), d, m), and
/// their sum.
pub fn assemble_d(params: &SeriesParams, model: &HeckeModel, store: &GaussStore) -> Result<(C, Vec<TermRecord>)> {
    check_model(params, model)?;
    let ring = model.ring();
    let primes = series_primes(params, ring)?;
    let ctx = Ctx::new(model, store, primes)?;
    let ps = &ctx.primes;
    let ds = exponent_vectors(ps, params.bound, true);
    let ms = exponent_vectors(ps, params.bound, false);

    let mut keyed: Vec<((u128, u128, Vec<u32>, Vec<u32>), TermRecord)> = Vec::with_capacity(ds.len() * ms.len());
    let s = params.s;
    for d in &ds {
        let nd = norm_of_exponents(ps, d);
        let xi = ctx.xi(d);
        let mut g_cache: Option<(C, Option<String>)> = None;
        for m in &ms {
            let nm = norm_of_exponents(ps, m);
            let t = tau_exps(params.n, ps, m, store)?;
            let mut rec = TermRecord {
                d: element_of_exponents(ring, ps, d).to_string(),
                m: element_of_exponents(ring, ps, m).to_string(),
                d_exps: d.clone(),
                m_exps: m.clone(),
                value: c(0.0),
                xi,
                g: c(0.0),
                twist: 0,
                b: c(0.0),
                tau: t.value,
                norm_factor: npow(nm as f64, -s * 2.0 + 0.5) * npow(nd as f64, -s * 6.0 + 1.5),
                monomial: None,
                formal: None,
                provenance: t.provenance.clone(),
            };
            if t.support {
                if g_cache.is_none() {
                    g_cache = Some(ctx.gauss(d)?);
                }
                let (g, note) = g_cache.clone().unwrap();
                rec.g = g;
                if let Some(note) = note {
                    rec.provenance.push(note);
                }
                let tw = ctx.twist(m, d);
                if params.n == 3 && !tw.is_one() {
                    return Err(Error::Invariant(format!("(m,d)_S = {tw} for cube m = {}", rec.m)));
                }
                rec.twist = tw.exponent();
                let md: Vec<u32> = m.iter().zip(d).map(|(a, b)| a + b).collect();
                rec.b = model.coeff(&ctx.to_model(&md))?;
                let core = xi * g * tw.to_complex() * rec.b * t.value;
                rec.value = core * rec.norm_factor;
                if params.n == 3 {
                    let nc = (nm as f64).cbrt().round();
                    rec.monomial = Some(m.iter().map(|e| e / 3).zip(d).map(|(a, b)| a + b).collect());
                    rec.formal = Some(core / (nc * nd as f64));
                }
                if params.n == 4 {
                    rec.provenance.push(format!("g(d) quartic Gauss sum at d = {}", rec.d));
                }
            }
            keyed.push(((nd, nm, d.clone(), m.clone()), rec));
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let terms: Vec<TermRecord> = keyed.into_iter().map(|(_, r)| r).collect();
    let value = terms.iter().fold(c(0.0), |acc, t| acc + t.value);
    Ok((value, terms))
}

fn base_assumptions(rep: &mut VerifyReport, model: &HeckeModel, n: u32) {
    for a in model.assumptions() {
        rep.assume(a);
    }
    rep.assume(report::SQUAREFREE_D);
    if n == 4 {
        rep.assume(TAU4_PLAIN);
    }
}

/// `series` report: the value, all terms, and internal consistency residuals
/// (factor products, summation order).
pub fn series_report(params: &SeriesParams, model: &HeckeModel, store: &GaussStore) -> Result<VerifyReport> {
    let (value, terms) = assemble_d(params, model, store)?;
    let mut rep = VerifyReport::new("series", params.to_json(), 1e-12);
    base_assumptions(&mut rep, model, params.n);
    let mut worst = 0.0f64;
    for t in &terms {
        let prod = if t.tau == c(0.0) { c(0.0) } else { t.factor_product(model.ring()) };
        worst = worst.max((prod - t.value).norm());
    }
    rep.push(Residual::real("factor product vs term value", worst));
    let reversed = terms.iter().rev().fold(c(0.0), |acc, t| acc + t.value);
    rep.push(Residual::new("summation order", reversed - value));
    if params.n == 3 {
        let off = terms.iter().filter(|t| t.value != c(0.0) && t.m_exps.iter().any(|e| e % 3 != 0)).count();
        rep.push(Residual::real("nonzero terms off the cube support", off as f64));
        let tw = terms.iter().filter(|t| t.twist != 0).count();
        rep.push(Residual::real("terms with (m,d)_S != 1", tw as f64));
    }
    rep.value = Some(value);
    rep.terms = terms.iter().map(|t| serde_json::to_value(t).unwrap()).collect();
    Ok(rep.finish())
}

/// `prod (1 - N(p)^-w)^-1` over the given primes.
pub fn zeta_s_primes(w: C, primes: &[PrimeElt]) -> C {
    primes.iter().fold(c(1.0), |acc, p| acc / (c(1.0) - npow(p.norm as f64, -w)))
}

/// The S-restricted Dedekind zeta over primes of norm `<= bound`, excluding
/// the ramified prime. `None` asks for the full product, which is only
/// available as a statement about convergence.
pub fn zeta_s_truncated(ring: RingTag, w: C, bound: Option<u64>) -> Result<C> {
    match bound {
        Some(b) if b < 2 => Ok(c(1.0)),
        Some(b) => Ok(zeta_s_primes(w, &primes_up_to(ring, b))),
        None if w.re <= 1.0 => Err(Error::Divergent(format!("{w}"))),
        None => Err(Error::OutsideDomain("the untruncated product is not evaluated".into())),
    }
}

/// Coefficients of `D_p(x) = sum b(p^3k) x^k + xi1 g N^-1 x sum b(p^(3k+1)) x^k`
/// through `x^K`.
pub fn local_series(m: &LocalModel, k: usize) -> Vec<C> {
    let b = generate_local(m, k);
    let n = m.norm();
    (0..=k)
        .map(|j| {
            let mut v = b[3 * j];
            if j >= 1 {
                v += m.xi1 * m.g / n * b[3 * (j - 1) + 1];
            }
            v
        })
        .collect()
}

fn condition_notes(xi1xi2: C, ggbar_over_n: C, tol: f64) -> Vec<String> {
    let mut out = Vec::new();
    let ok = |v: C| (v - 1.0).norm() <= tol;
    out.push(format!(
        "required: xi1*xi2 = 1 ({}; observed {:.12}{:+.12}i)",
        if ok(xi1xi2) { "holds" } else { "violated" },
        xi1xi2.re,
        xi1xi2.im
    ));
    out.push(format!(
        "required: g*gbar = N(p) ({}; observed g*gbar/N(p) = {:.12}{:+.12}i)",
        if ok(ggbar_over_n) { "holds" } else { "violated" },
        ggbar_over_n.re,
        ggbar_over_n.im
    ));
    out
}

fn local_assumptions(rep: &mut VerifyReport, m: &LocalModel) {
    rep.assume(report::SCALAR_MODEL);
    rep.assume(report::CHI_TRIVIAL);
    rep.assume(report::B_ZERO);
    if (m.gbar - m.g.conj()).norm() <= 1e-12 {
        rep.assume(report::GBAR_CONJ);
    }
}

/// Residuals `(1 - x^2/N) - D_p(x)(1 - lambda x + x^2)` through `x^K`.
pub fn local_identity_check(m: &LocalModel, k: usize) -> VerifyReport {
    let tol = 1e-8;
    let mut rep = VerifyReport::new(
        "local-euler",
        json!({ "p": m.prime.to_string(), "norm": m.prime.norm, "K": k, "side_condition": m.side_condition }),
        tol,
    );
    local_assumptions(&mut rep, m);
    let d = local_series(m, k);
    let n = m.norm();
    let q = [c(1.0), -m.lambda, c(1.0)];
    for j in 0..=k {
        let mut prod = c(0.0);
        for (i, qi) in q.iter().enumerate() {
            if j >= i {
                prod += qi * d[j - i];
            }
        }
        let target = match j {
            0 => c(1.0),
            2 => c(-1.0 / n),
            _ => c(0.0),
        };
        rep.push(Residual::new(format!("p={} x^{j}", m.prime), target - prod));
    }
    if k >= 2 && rep.residuals[2].abs > 1e-10 {
        rep.detected_conditions = condition_notes(m.xi1 * m.xi2, m.g * m.gbar / n, 1e-10);
    }
    rep.finish()
}

/// `local_identity_check` at every prime of the model, merged.
pub fn local_euler_report(model: &HeckeModel, k: usize) -> Result<VerifyReport> {
    if model.ring() != RingTag::Eisenstein {
        return Err(Error::RingMismatch("the local Euler identity is for the cubic cover".into()));
    }
    let mut rep = VerifyReport::new(
        "local-euler",
        json!({ "primes": model.primes().iter().map(|p| p.to_string()).collect::<Vec<_>>(), "K": k }),
        1e-8,
    );
    for a in model.assumptions() {
        rep.assume(a);
    }
    for l in model.locals() {
        let r = local_identity_check(l, k);
        for x in r.residuals {
            rep.push(x);
        }
        for d in r.detected_conditions {
            rep.detected_conditions.push(format!("p={}: {d}", l.prime));
        }
    }
    Ok(rep.finish())
}

/// Both truncated sides of the two displayed identities obtained by applying
/// the Hecke relations at `p` to the terms with `(d, p) = 1` and with
/// `ord_p(d) = 1`, in a model restricted to the primes `p = primes[i]` and
/// `q = primes[j]`; the cancellation of the subtracted `b(p m^3 d)` term of
/// the first against the `(d,p)_S` term of the second; and the combined
/// identity `(1 - x^2/N(p)) D^(p) = (1 - lambda x + x^2) D`.
pub fn cancellation_check(model: &HeckeModel, i: usize, j: usize, k: usize) -> Result<VerifyReport> {
    if model.ring() != RingTag::Eisenstein {
        return Err(Error::RingMismatch("the cancellation identity is for the cubic cover".into()));
    }
    if i == j || i >= model.locals().len() || j >= model.locals().len() {
        return Err(Error::ModelGap("cancel-check needs two distinct primes of the model".into()));
    }
    let tol = 1e-8;
    let nloc = model.locals().len();
    let (lp, lq) = (&model.locals()[i], &model.locals()[j]);
    let (np, nq) = (lp.norm(), lq.norm());
    let mut rep = VerifyReport::new(
        "cancel-check",
        json!({ "p": lp.prime.to_string(), "q": lq.prime.to_string(), "K": k }),
        tol,
    );
    for a in model.assumptions() {
        rep.assume(a);
    }
    rep.assume(report::SQUAREFREE_D);
    let ku = k as u32;
    let caps = [ku, ku];
    // Exponent vector over the model with p^a q^b.
    let vec_pq = |a: u32, b: u32| {
        let mut v = vec![0u32; nloc];
        v[i] = a;
        v[j] = b;
        v
    };
    let b = |a: u32, bq: u32| model.coeff(&vec_pq(a, bq));
    let s_pq = model.pair_symbol(i, j).to_complex(); // (p/q)
    let s_qp = model.pair_symbol(j, i).to_complex(); // (q/p)
    let hil = |x: usize, y: usize| model.pair_symbol(y, x) * model.pair_symbol(x, y).inv();
    // Data for d in {1, q}, and for dp.
    struct DData {
        dq: u32,
        xi: C,
        g: C,
        nd: f64,
        p_over_d: C,
        d_over_p: C,
        dp_hilbert: C,
    }
    let dd = [
        DData {
            dq: 0,
            xi: c(1.0),
            g: c(1.0),
            nd: 1.0,
            p_over_d: c(1.0),
            d_over_p: c(1.0),
            dp_hilbert: c(1.0),
        },
        DData {
            dq: 1,
            xi: lq.xi1,
            g: lq.g,
            nd: nq,
            p_over_d: s_pq,
            d_over_p: s_qp,
            dp_hilbert: hil(j, i).to_complex(),
        },
    ];
    let lam = Series::univariate(&caps, 0, &[c(1.0), -lp.lambda, c(1.0)]);

    // D over d coprime to p, and over d = d'p.
    let mut d_first = Series::zero(&caps);
    let mut d_second = Series::zero(&caps);
    let mut d_pfree = Series::zero(&caps);
    for d in &dd {
        for a in 0..=ku {
            for bq in 0..=ku {
                let v = d.xi * d.g / d.nd * b(3 * a, 3 * bq + d.dq)?;
                d_first.add_term(&[a, bq + d.dq], v);
                if a == 0 {
                    d_pfree.add_term(&[0, bq + d.dq], v);
                }
                // d p: X^[(dp)^-1] = (d,p)_S X^[p^-1] X^[d^-1], g(dp) = (p/d)(d/p) g(d) g(p).
                let xi_dp = d.dp_hilbert * lp.xi1 * d.xi;
                let g_dp = d.p_over_d * d.d_over_p * d.g * lp.g;
                let v = xi_dp * g_dp / (d.nd * np) * b(3 * a + 1, 3 * bq + d.dq)?;
                d_second.add_term(&[a + 1, bq + d.dq], v);
            }
        }
    }
    let mut first_rhs = Series::zero(&caps);
    let mut second_rhs = Series::zero(&caps);
    let mut cancel = Series::zero(&caps);
    for d in &dd {
        for bq in 0..=ku {
            let y = bq + d.dq;
            let base = d.xi * d.g / d.nd;
            let b0 = b(0, 3 * bq + d.dq)?;
            let b1 = b(1, 3 * bq + d.dq)?;
            first_rhs.add_term(&[0, y], base * b0);
            let f1 = base * d.p_over_d.inv() * lp.g * lp.xi1 * b1 / np;
            first_rhs.add_term(&[1, y], -f1);
            let pre = base * lp.g * d.p_over_d * d.d_over_p;
            let f2 = pre * d.dp_hilbert * lp.xi1 * b1 / np;
            second_rhs.add_term(&[1, y], f2);
            second_rhs.add_term(&[2, y], -pre * d.p_over_d * lp.gbar * b0 / (np * np));
            cancel.add_term(&[1, y], f2 - f1);
        }
    }
    let first_lhs = lam.mul(&d_first);
    let second_lhs = lam.mul(&d_second);
    let mut total = d_first.clone();
    for (mono, v) in d_second.terms() {
        total.add_term(mono, *v);
    }
    let combined = Series::univariate(&caps, 0, &[c(1.0), c(0.0), c(-1.0 / np)])
        .mul(&d_pfree)
        .sub(&lam.mul(&total));
    let diff1 = first_rhs.sub(&first_lhs);
    let diff2 = second_rhs.sub(&second_lhs);
    for mono in diff1.box_monomials() {
        rep.push(Residual::new(format!("first_term x^{} y^{}", mono[0], mono[1]), diff1.coeff(&mono)));
    }
    for mono in diff2.box_monomials() {
        rep.push(Residual::new(format!("second_term x^{} y^{}", mono[0], mono[1]), diff2.coeff(&mono)));
    }
    for mono in cancel.box_monomials() {
        rep.push(Residual::new(format!("cancellation x^{} y^{}", mono[0], mono[1]), cancel.coeff(&mono)));
    }
    for mono in combined.box_monomials() {
        rep.push(Residual::new(format!("combined x^{} y^{}", mono[0], mono[1]), combined.coeff(&mono)));
    }
    let mut rep = rep.finish();
    if rep.max_abs_residual > tol {
        rep.detected_conditions = condition_notes(lp.xi1 * lp.xi2, lp.g * lp.gbar / np, 1e-10);
    }
    Ok(rep)
}

/// Expansion of `prod_p (1 - x_p^2/N(p)) / (1 - lambda_p x_p + x_p^2)` in the
/// box with per-prime cap `K`.
pub fn euler_product_series(locals: &[&LocalModel], k: usize) -> Series {
    let caps = vec![k as u32; locals.len()];
    let mut out = Series::one(&caps);
    for (i, l) in locals.iter().enumerate() {
        let u = Series::univariate(&caps, i, &chebyshev_u(l.lambda, k));
        let z = Series::univariate(&caps, i, &[c(1.0), c(0.0), c(-1.0 / l.norm())]);
        out = out.mul(&u).mul(&z);
    }
    out
}

/// The bound that places every term with per-prime `x`-degree `<= K` in the
/// series box: `prod N(p)^(3K)`.
pub fn required_bound(primes: &[PrimeElt], k: usize) -> Option<u128> {
    primes
        .iter()
        .try_fold(1u128, |acc, p| acc.checked_mul((p.norm as u128).checked_pow(3 * k as u32)?))
}

/// Monomial-by-monomial comparison of the assembled cubic series with the
/// Euler product.
pub fn euler_compare(params: &SeriesParams, model: &HeckeModel, store: &GaussStore, k: usize) -> Result<VerifyReport> {
    if params.n != 3 {
        return Err(Error::OutsideDomain("euler-check compares the cubic series".into()));
    }
    check_model(params, model)?;
    let primes = series_primes(params, model.ring())?;
    let need = required_bound(&primes, k).ok_or_else(|| Error::TruncationBox("bound overflows".into()))?;
    if params.bound < need {
        return Err(Error::TruncationBox(format!(
            "bound {} below prod N(p)^(3K) = {need}",
            params.bound
        )));
    }
    let params = SeriesParams {
        primes: Some(primes.clone()),
        ..params.clone()
    };
    let (_, terms) = assemble_d(&params, model, store)?;
    let ctx = Ctx::new(model, store, primes.clone())?;
    let locals: Vec<&LocalModel> = (0..primes.len()).map(|i| ctx.local(i)).collect();
    let expected = euler_product_series(&locals, k);
    let mut got = Series::zero(expected.caps());
    for t in &terms {
        if let (Some(mono), Some(f)) = (&t.monomial, t.formal) {
            got.add_term(mono, f);
        }
    }
    let mut rep = VerifyReport::new("euler-check", params.to_json(), 1e-8);
    base_assumptions(&mut rep, model, 3);
    if !model.side_condition() {
        rep.detected_conditions.push("canonical side condition disabled in the model".into());
    }
    for mono in expected.box_monomials() {
        rep.push(Residual::new(format!("x^{mono:?}"), got.coeff(&mono) - expected.coeff(&mono)));
    }
    Ok(rep.finish())
}

/// The quartic series: every nonzero term must have `m` with valuations
/// `= 0, 1 (mod 4)`, and every `m` with a valuation `4k+1`, `k >= 1`, must
/// carry the factor `N(p)^(k-1/2) gbar(p)` in its provenance.
pub fn n4_support_report(params: &SeriesParams, model: &HeckeModel, store: &GaussStore) -> Result<VerifyReport> {
    if model.ring() != RingTag::Gaussian || params.n != 4 {
        return Err(Error::RingMismatch("n4-report needs n = 4 over the Gaussian integers".into()));
    }
    let (value, terms) = assemble_d(params, model, store)?;
    let mut rep = VerifyReport::new("n4-report", params.to_json(), 0.0);
    base_assumptions(&mut rep, model, 4);
    let violations = terms
        .iter()
        .filter(|t| t.value != c(0.0) && t.m_exps.iter().any(|e| e % 4 > 1))
        .count();
    rep.push(Residual::real("nonzero terms outside the support", violations as f64));
    let mut high = 0usize;
    let mut missing = 0usize;
    for t in &terms {
        if t.m_exps.iter().any(|e| e % 4 == 1 && *e >= 5) {
            high += 1;
            if !t.provenance.iter().any(|p| p.contains("-1/2)*gbar")) {
                missing += 1;
            }
        }
    }
    rep.push(Residual::real("m with valuation 4k+1 (k >= 1) lacking the gbar factor", missing as f64));
    let mut factors: BTreeMap<String, usize> = BTreeMap::new();
    for t in &terms {
        for p in &t.provenance {
            if p.contains("gbar") || p.contains("quartic") {
                *factors.entry(p.clone()).or_default() += 1;
            }
        }
    }
    rep.detected_conditions = factors.into_iter().map(|(k, v)| format!("{k} [{v} terms]")).collect();
    rep.params["terms_with_high_valuation"] = json!(high);
    rep.value = Some(value);
    rep.terms = terms.iter().map(|t| serde_json::to_value(t).unwrap()).collect();
    Ok(rep.finish())
}
