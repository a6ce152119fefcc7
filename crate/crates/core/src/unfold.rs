//! Exact 4x4 matrix identities behind the unfolding: elementary matrices,
//! the Bruhat factorization of `gamma = gamma_1 gamma_2`, the Steinberg
//! commutation, the torus and Weyl-element bookkeeping, coset counts, and
//! unipotent orbit dimensions.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::rat::CycRat;
use crate::report::{self, Residual, VerifyReport};
use crate::ring::{elements_up_to, factorize, residues, CycInt, RingTag};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatF {
    e: [[CycRat; 4]; 4],
}

impl MatF {
    pub fn identity(ring: RingTag) -> MatF {
        MatF {
            e: std::array::from_fn(|i| {
                std::array::from_fn(|j| if i == j { CycRat::one(ring) } else { CycRat::zero(ring) })
            }),
        }
    }

    pub fn diag(d: [CycRat; 4]) -> MatF {
        let ring = d[0].ring();
        let mut m = MatF::identity(ring);
        for (i, x) in d.into_iter().enumerate() {
            m.e[i][i] = x;
        }
        m
    }

    pub fn ring(&self) -> RingTag {
        self.e[0][0].ring()
    }

    /// Entry at 1-based position `(i, j)`.
    pub fn at(&self, i: usize, j: usize) -> &CycRat {
        &self.e[i - 1][j - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycRat) {
        self.e[i - 1][j - 1] = x;
    }

    pub fn scale(&self, c: &CycRat) -> MatF {
        MatF {
            e: std::array::from_fn(|i| std::array::from_fn(|j| &self.e[i][j] * c)),
        }
    }

    pub fn transpose(&self) -> MatF {
        MatF {
            e: std::array::from_fn(|i| std::array::from_fn(|j| self.e[j][i].clone())),
        }
    }

    /// Nonzero entries of `self - other` as `((i, j), difference)`, 1-based.
    pub fn residual(&self, other: &MatF) -> Vec<((usize, usize), CycRat)> {
        let mut out = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                let d = &self.e[i][j] - &other.e[i][j];
                if !d.is_zero() {
                    out.push(((i + 1, j + 1), d));
                }
            }
        }
        out
    }
}

impl Mul for &MatF {
    type Output = MatF;
    fn mul(self, o: &MatF) -> MatF {
        let ring = self.ring();
        MatF {
            e: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..4).fold(CycRat::zero(ring), |acc, k| &acc + &(&self.e[i][k] * &o.e[k][j]))
                })
            }),
        }
    }
}

impl fmt::Display for MatF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.e {
            let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// Index sets of positive roots `alpha_J = sum_{j in J} alpha_j` of GL(4),
/// written as digit strings: 1, 2, 3, 12, 23, 123.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexSet {
    lo: usize,
    hi: usize,
}

impl IndexSet {
    pub fn parse(j: u32) -> Result<IndexSet> {
        let (lo, hi) = match j {
            1 => (1, 1),
            2 => (2, 2),
            3 => (3, 3),
            12 => (1, 2),
            23 => (2, 3),
            123 => (1, 3),
            _ => return Err(Error::InvalidIndexSet(j.to_string())),
        };
        Ok(IndexSet { lo, hi })
    }

    /// 1-based matrix position of the root: `(min J, max J + 1)`.
    pub fn position(self) -> (usize, usize) {
        (self.lo, self.hi + 1)
    }

    pub fn is_simple(self) -> bool {
        self.lo == self.hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    U,
    UMinus,
    H,
    W,
}

pub fn build_element(kind: ElementKind, j: u32, t: &CycRat) -> Result<MatF> {
    let set = IndexSet::parse(j)?;
    let ring = t.ring();
    let (r, c) = set.position();
    let mut m = MatF::identity(ring);
    match kind {
        ElementKind::U => m.set(r, c, t.clone()),
        ElementKind::UMinus => m.set(c, r, t.clone()),
        ElementKind::H => {
            m.set(r, r, t.clone());
            m.set(c, c, t.inv()?);
        }
        ElementKind::W => {
            if !set.is_simple() {
                return Err(Error::InvalidIndexSet(format!("w_{j} needs a simple root")));
            }
            m.set(r, r, CycRat::zero(ring));
            m.set(c, c, CycRat::zero(ring));
            m.set(r, c, CycRat::one(ring));
            m.set(c, r, -&CycRat::one(ring));
        }
    }
    Ok(m)
}

fn el(kind: ElementKind, j: u32, t: &CycRat) -> MatF {
    build_element(kind, j, t).expect("fixed index set")
}

fn wj(j: u32, ring: RingTag) -> MatF {
    el(ElementKind::W, j, &CycRat::one(ring))
}

/// `w_0 = w_21 w_32 w_13 = w_2 w_1 w_3 w_2 w_1 w_3`.
pub fn w0(ring: RingTag) -> MatF {
    [2, 1, 3, 2, 1, 3]
        .iter()
        .fold(MatF::identity(ring), |acc, &j| &acc * &wj(j, ring))
}

fn product(ms: &[MatF]) -> MatF {
    let ring = ms[0].ring();
    ms.iter().fold(MatF::identity(ring), |acc, m| &acc * m)
}

fn push_matrix_residual(rep: &mut VerifyReport, label: &str, lhs: &MatF, rhs: &MatF) {
    let diffs = lhs.residual(rhs);
    if diffs.is_empty() {
        rep.push(Residual::real(label, 0.0));
    }
    for ((i, j), d) in diffs {
        rep.push(Residual::real(format!("{label} ({i},{j})"), d.abs_f64()));
    }
}

/// Bruhat factors of `gamma_1 gamma_2` (with `a_i = (1 + b_i c_i)/d_i`):
/// `u_23(b1/d1) h_23(1/d1) u-_23(c1/d1) u_123(b2/d2) h_123(1/d2) u-_123(c2/d2)`.
/// Both sides are multiplied by `w_0` afterwards; residual positions refer to
/// `gamma`.
#[allow(clippy::too_many_arguments)]
pub fn check_bruhat_gamma(
    b1: &CycRat,
    c1: &CycRat,
    d1: &CycRat,
    b2: &CycRat,
    c2: &CycRat,
    d2: &CycRat,
) -> Result<VerifyReport> {
    let mut rep = VerifyReport::new(
        "bruhat",
        json!({ "b1": b1.to_string(), "c1": c1.to_string(), "d1": d1.to_string(),
                "b2": b2.to_string(), "c2": c2.to_string(), "d2": d2.to_string() }),
        0.0,
    );
    bruhat_into(&mut rep, "bruhat", [b1, c1, d1, b2, c2, d2], c1)?;
    Ok(rep.finish())
}

/// As `check_bruhat_gamma`, but the factorization side is built with
/// `c1_rhs` in place of `c1`.
fn bruhat_into(rep: &mut VerifyReport, label: &str, v: [&CycRat; 6], c1_rhs: &CycRat) -> Result<()> {
    let [b1, c1, d1, b2, c2, d2] = v;
    if d1.is_zero() || d2.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let ring = d1.ring();
    let one = CycRat::one(ring);
    let a1 = (&one + &(b1 * c1)).div(d1)?;
    let a2 = (&one + &(b2 * c2)).div(d2)?;
    let mut g1 = MatF::identity(ring);
    g1.set(2, 2, a1);
    g1.set(2, 4, b1.clone());
    g1.set(4, 2, c1.clone());
    g1.set(4, 4, d1.clone());
    let mut g2 = MatF::identity(ring);
    g2.set(1, 1, a2);
    g2.set(1, 4, b2.clone());
    g2.set(4, 1, c2.clone());
    g2.set(4, 4, d2.clone());
    let gamma = &g1 * &g2;
    use ElementKind::*;
    let rhs = product(&[
        el(U, 23, &b1.div(d1)?),
        el(H, 23, &d1.inv()?),
        el(UMinus, 23, &c1_rhs.div(d1)?),
        el(U, 123, &b2.div(d2)?),
        el(H, 123, &d2.inv()?),
        el(UMinus, 123, &c2.div(d2)?),
    ]);
    push_matrix_residual(rep, label, &gamma, &rhs);
    let w = w0(ring);
    if !(&gamma * &w).residual(&(&rhs * &w)).is_empty() && gamma.residual(&rhs).is_empty() {
        return Err(Error::Invariant("right multiplication by w0 broke an equality".into()));
    }
    Ok(())
}

/// The display with the sign of `c1` flipped on the factorization side, for
/// checking that the comparison detects a wrong entry.
pub fn check_bruhat_perturbed(v: [&CycRat; 6]) -> Result<VerifyReport> {
    let mut rep = VerifyReport::new("bruhat-perturbed", json!({}), 0.0);
    let neg = -v[1];
    bruhat_into(&mut rep, "bruhat", v, &neg)?;
    Ok(rep.finish())
}

/// `u-_23(c1/d1) u_123(b2/d2) = u_123(b2/d2) u_1(-b2 c1/(d2 d1)) u-_23(c1/d1)`.
pub fn check_steinberg(c1: &CycRat, d1: &CycRat, b2: &CycRat, d2: &CycRat) -> Result<VerifyReport> {
    let mut rep = VerifyReport::new(
        "steinberg",
        json!({ "c1": c1.to_string(), "d1": d1.to_string(), "b2": b2.to_string(), "d2": d2.to_string() }),
        0.0,
    );
    steinberg_into(&mut rep, "steinberg", c1, d1, b2, d2)?;
    Ok(rep.finish())
}

fn steinberg_into(rep: &mut VerifyReport, label: &str, c1: &CycRat, d1: &CycRat, b2: &CycRat, d2: &CycRat) -> Result<()> {
    if d1.is_zero() || d2.is_zero() {
        return Err(Error::DivisionByZero);
    }
    use ElementKind::*;
    let x = c1.div(d1)?;
    let y = b2.div(d2)?;
    let z = -&(b2 * c1).div(&(d2 * d1))?;
    let lhs = &el(UMinus, 23, &x) * &el(U, 123, &y);
    let rhs = product(&[el(U, 123, &y), el(U, 1, &z), el(UMinus, 23, &x)]);
    push_matrix_residual(rep, label, &lhs, &rhs);
    Ok(())
}

/// `h_23(1/d1) h_123(1/d2) = diag(d1^-1 d2^-2, d1^-2 d2^-1, d1^-1 d2^-1, 1) * (d1 d2)`.
fn torus_into(rep: &mut VerifyReport, d1: &CycRat, d2: &CycRat) -> Result<()> {
    use ElementKind::*;
    let lhs = &el(H, 23, &d1.inv()?) * &el(H, 123, &d2.inv()?);
    let (i1, i2) = (d1.inv()?, d2.inv()?);
    let t = MatF::diag([
        &i1 * &(&i2 * &i2),
        &(&i1 * &i1) * &i2,
        &i1 * &i2,
        CycRat::one(d1.ring()),
    ]);
    push_matrix_residual(rep, "torus", &lhs, &t.scale(&(d1 * d2)));
    // Pulling w_21 out of T w_0 leaves w_21^-1 T w_21 in front of w_32 w_13.
    let ring = d1.ring();
    let w21 = &wj(2, ring) * &wj(1, ring);
    // Signed permutation matrices are orthogonal.
    let w21_inv = w21.transpose();
    let moved = product(&[w21_inv, t, w21]);
    let expect = MatF::diag([&i1 * &i2, &i1 * &(&i2 * &i2), &(&i1 * &i1) * &i2, CycRat::one(ring)]);
    push_matrix_residual(rep, "torus after w_21", &moved, &expect);
    Ok(())
}

/// Sign `s` with `u-_123(t) w0 = w0 u_123(s t)`; the displayed identity
/// has `s = 1`.
pub fn w_conjugation_sign(ring: RingTag) -> Result<i64> {
    use ElementKind::*;
    let t = CycRat::from_integer(ring, 1);
    let w = w0(ring);
    let lhs = &el(UMinus, 123, &t) * &w;
    for s in [1i64, -1] {
        let rhs = &w * &el(U, 123, &CycRat::from_integer(ring, s));
        if lhs.residual(&rhs).is_empty() {
            return Ok(s);
        }
    }
    Err(Error::Invariant("u-_123 w0 is not w0 u_123(+-t)".into()))
}

fn random_rat(rng: &mut ChaCha8Rng, ring: RingTag, nonzero: bool) -> CycRat {
    loop {
        let num = CycInt::new(ring, rng.random_range(-9i64..=9), rng.random_range(-9i64..=9));
        if nonzero && num.is_zero() {
            continue;
        }
        let den = BigInt::from(rng.random_range(1i64..=6));
        return CycRat::new(num, den).unwrap();
    }
}

/// Random exact checks of the Bruhat display, the Steinberg relation, the
/// torus bookkeeping and the Weyl-element facts.
pub fn unfold_verify(samples: usize, seed: u64) -> Result<VerifyReport> {
    let ring = RingTag::Eisenstein;
    let mut rep = VerifyReport::new("unfold-verify", json!({ "samples": samples, "seed": seed }), 0.0);
    rep.assume(report::COCYCLE_TRIVIAL);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut bruhat_bad, mut stein_bad, mut torus_bad) = (0usize, 0usize, 0usize);
    for _ in 0..samples {
        let b1 = random_rat(&mut rng, ring, false);
        let c1 = random_rat(&mut rng, ring, false);
        let d1 = random_rat(&mut rng, ring, true);
        let b2 = random_rat(&mut rng, ring, false);
        let c2 = random_rat(&mut rng, ring, false);
        let d2 = random_rat(&mut rng, ring, true);
        let mut sub = VerifyReport::new("", json!({}), 0.0);
        bruhat_into(&mut sub, "bruhat", [&b1, &c1, &d1, &b2, &c2, &d2], &c1)?;
        bruhat_bad += (sub.max_abs_residual > 0.0) as usize;
        let mut sub = VerifyReport::new("", json!({}), 0.0);
        steinberg_into(&mut sub, "steinberg", &c1, &d1, &b2, &d2)?;
        stein_bad += (sub.max_abs_residual > 0.0) as usize;
        let mut sub = VerifyReport::new("", json!({}), 0.0);
        torus_into(&mut sub, &d1, &d2)?;
        torus_bad += (sub.max_abs_residual > 0.0) as usize;
    }
    rep.push(Residual::real("bruhat: samples with nonzero residual", bruhat_bad as f64));
    rep.push(Residual::real("steinberg: samples with nonzero residual", stein_bad as f64));
    rep.push(Residual::real("torus: samples with nonzero residual", torus_bad as f64));

    let w = w0(ring);
    let anti = (1..=4).all(|i| (1..=4).all(|j| (i + j == 5) != w.at(i, j).is_zero()));
    rep.push(Residual::real("w0 is an anti-diagonal signed permutation", if anti { 0.0 } else { 1.0 }));
    let sq = &w * &w;
    let id = MatF::identity(ring);
    let sign = if sq.residual(&id).is_empty() {
        1
    } else if sq.residual(&id.scale(&CycRat::from_integer(ring, -1))).is_empty() {
        -1
    } else {
        0
    };
    rep.push(Residual::real("w0^2 = +-I", if sign == 0 { 1.0 } else { 0.0 }));
    rep.detected_conditions.push(format!("w0^2 = {}I", if sign < 0 { "-" } else { "" }));
    let anti_signs: Vec<String> = (1..=4).map(|i| w.at(i, 5 - i).to_string()).collect();
    rep.detected_conditions.push(format!("w0 anti-diagonal entries: [{}]", anti_signs.join(", ")));
    let s = w_conjugation_sign(ring)?;
    rep.detected_conditions.push(if s == 1 {
        "u-_123(t) w0 = w0 u_123(t) holds as displayed".into()
    } else {
        "sign convention: u-_123(t) w0 = w0 u_123(-t) (the display omits the sign)".into()
    });
    // w_21 lies in the (3,1) parabolic, w_13 in the Shalika subgroup.
    let w21 = &wj(2, ring) * &wj(1, ring);
    let in_p = (1..=3).all(|j| w21.at(4, j).is_zero());
    rep.push(Residual::real("w_21 in P", if in_p { 0.0 } else { 1.0 }));
    let w13 = &wj(1, ring) * &wj(3, ring);
    let in_r = (1..=2).all(|i| (1..=2).all(|j| w13.at(i, j) == w13.at(i + 2, j + 2) && w13.at(i + 2, j).is_zero()));
    rep.push(Residual::real("w_13 in R", if in_r { 0.0 } else { 1.0 }));
    Ok(rep.finish())
}

/// Number of pairs `(D1, D2) mod D4` with `gcd(D1, D2, D4) = 1`, by brute force.
pub fn direct_pair_count(d4: &CycInt) -> Result<u64> {
    let f = factorize(d4)?;
    let res = residues(d4)?;
    let mut count = 0u64;
    for x in &res {
        for y in &res {
            if f.factors.iter().all(|(p, _)| !(p.pi.divides(x) && p.pi.divides(y))) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `sum_{D4 = d1 d2} #{c1 mod d1 d2 : (c1, d1) = 1} * #{c2 mod^x d2}`, each
/// count by enumeration.
pub fn parametrized_count(d4: &CycInt) -> Result<u64> {
    let f = factorize(d4)?;
    let ring = d4.ring();
    let mut total = 0u64;
    let mut exps = vec![0u32; f.factors.len()];
    loop {
        let d1 = f
            .factors
            .iter()
            .zip(&exps)
            .fold(CycInt::one(ring), |acc, ((p, _), &e)| &acc * &p.pi.pow(e));
        let d2 = d4.exact_div(&d1).expect("divisor");
        let f1 = factorize(&d1)?;
        let c1 = residues(d4)?
            .into_iter()
            .filter(|c| f1.factors.iter().all(|(p, _)| !p.pi.divides(c)))
            .count() as u64;
        let f2 = factorize(&d2)?;
        let c2 = residues(&d2)?
            .into_iter()
            .filter(|c| f2.factors.iter().all(|(p, _)| !p.pi.divides(c)))
            .count() as u64;
        total += c1 * c2;
        let mut i = 0;
        loop {
            if i == exps.len() {
                return Ok(total);
            }
            if exps[i] < f.factors[i].1 {
                exps[i] += 1;
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

pub fn coset_count_check(ring: RingTag, bound: u64) -> Result<VerifyReport> {
    let mut rep = VerifyReport::new("coset-count", json!({ "ring": ring.short_name(), "bound": bound }), 0.0);
    for d4 in elements_up_to(ring, bound) {
        let direct = direct_pair_count(&d4)?;
        let param = parametrized_count(&d4)?;
        rep.push(Residual::real(
            format!("D4={d4} N={} direct={direct} parametrized={param}", d4.norm()),
            (direct as f64 - param as f64).abs(),
        ));
    }
    Ok(rep.finish())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Drops zero parts first.
    pub fn from_parts(parts: &[i64]) -> Result<Partition> {
        if parts.iter().any(|&p| p < 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a negative part")));
        }
        Partition::new(parts.iter().filter(|&&p| p > 0).map(|&p| p as u32).collect())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn transpose(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32).collect())
    }
}

/// Dimension of the unipotent orbit of Jordan type `lambda` in gl(N):
/// `N^2 - sum lambda'_i^2`.
pub fn orbit_dim(p: &Partition) -> u64 {
    let n = p.size() as u64;
    n * n - p.transpose().0.iter().map(|&x| (x as u64).pow(2)).sum::<u64>()
}

/// `3 + dim(r,r)/2 = 1 + dim(r+2, r-2)/2`, compared after doubling.
pub fn dimension_equation(r: u32) -> Result<(u64, u64)> {
    if r < 2 {
        return Err(Error::InvalidPartition(format!("r = {r} < 2")));
    }
    let lhs = 6 + orbit_dim(&Partition::new(vec![r, r])?);
    let rhs = 2 + orbit_dim(&Partition::from_parts(&[r as i64 + 2, r as i64 - 2])?);
    Ok((lhs, rhs))
}

pub fn dims_report(rmax: u32) -> Result<VerifyReport> {
    let mut rep = VerifyReport::new("dims", json!({ "rmax": rmax }), 0.0);
    for r in 2..=rmax {
        let (l, h) = dimension_equation(r)?;
        rep.push(Residual::real(
            format!("r={r}: 3+dim/2 = {}, 1+dim/2 = {}", l / 2, h / 2),
            (l as f64 - h as f64).abs(),
        ));
    }
    Ok(rep.finish())
}

/// Exact count `N(D)^2 prod (1 - N(p)^-2)`, for cross-checking.
pub fn jordan_totient2(d: &CycInt) -> Result<u64> {
    let f = factorize(d)?;
    let n = d.norm().to_u64().unwrap();
    Ok(f.factors.iter().fold(n * n, |acc, (p, _)| acc / (p.norm * p.norm) * (p.norm * p.norm - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64, den: i64) -> CycRat {
        CycRat::new(CycInt::new(RingTag::Eisenstein, a, b), BigInt::from(den)).unwrap()
    }

    #[test]
    fn elementary_matrices() {
        use ElementKind::*;
        let ring = RingTag::Eisenstein;
        assert_eq!(build_element(U, 23, &CycRat::zero(ring)).unwrap(), MatF::identity(ring));
        let t = r(2, 1, 3);
        let h = build_element(H, 23, &t).unwrap();
        assert_eq!(h.at(2, 2).div(h.at(4, 4)).unwrap(), &t * &t);
        let h123 = build_element(H, 123, &t).unwrap();
        assert_eq!(h123.at(1, 1), &t);
        assert_eq!(h123.at(4, 4), &t.inv().unwrap());
        let (x, y) = (r(1, 2, 5), r(-3, 1, 2));
        let lhs = &build_element(U, 123, &x).unwrap() * &build_element(U, 123, &y).unwrap();
        assert_eq!(lhs, build_element(U, 123, &(&x + &y)).unwrap());
        assert_eq!(build_element(U, 23, &x).unwrap().at(2, 4), &x);
        assert_eq!(build_element(UMinus, 23, &x).unwrap().at(4, 2), &x);
        assert!(matches!(build_element(U, 13, &x), Err(Error::InvalidIndexSet(_))));
        assert!(build_element(W, 12, &x).is_err());
        assert!(build_element(H, 1, &CycRat::zero(ring)).is_err());
    }

    #[test]
    fn bruhat_trivial_and_perturbed() {
        let zero = r(0, 0, 1);
        let one = r(1, 0, 1);
        let b = r(3, -1, 2);
        let rep = check_bruhat_gamma(&b, &zero, &one, &b, &zero, &one).unwrap();
        assert!(rep.passed);
        let (c1, d1) = (r(1, 1, 1), r(2, 0, 3));
        let rep = check_bruhat_gamma(&b, &c1, &d1, &b, &c1, &d1).unwrap();
        assert!(rep.passed);
        let bad = check_bruhat_perturbed([&b, &c1, &d1, &b, &c1, &d1]).unwrap();
        assert!(!bad.passed);
        assert!(bad.residuals.iter().any(|x| x.label.ends_with("(4,2)")));
        assert!(check_bruhat_gamma(&b, &c1, &zero, &b, &c1, &d1).is_err());
    }

    #[test]
    fn steinberg_examples() {
        let one = r(1, 0, 1);
        assert!(check_steinberg(&one, &one, &one, &one).unwrap().passed);
        let zero = r(0, 0, 1);
        assert!(check_steinberg(&r(2, 3, 5), &one, &zero, &r(7, 0, 1)).unwrap().passed);
        // The middle factor is u_1(-b2 c1 / d2 d1); any other value fails.
        let lhs = &el(ElementKind::UMinus, 23, &one) * &el(ElementKind::U, 123, &one);
        let wrong = product(&[
            el(ElementKind::U, 123, &one),
            el(ElementKind::U, 1, &one),
            el(ElementKind::UMinus, 23, &one),
        ]);
        assert!(!lhs.residual(&wrong).is_empty());
    }

    #[test]
    fn random_unfolding_suite() {
        let rep = unfold_verify(100, 9).unwrap();
        assert!(rep.passed, "{:?}", rep.residuals);
    }

    #[test]
    fn w0_shape() {
        let w = w0(RingTag::Eisenstein);
        let sq = &w * &w;
        let id = MatF::identity(RingTag::Eisenstein);
        let neg = id.scale(&CycRat::from_integer(RingTag::Eisenstein, -1));
        assert!(sq == id || sq == neg);
        for i in 1..=4 {
            assert!(!w.at(i, 5 - i).is_zero());
        }
    }

    #[test]
    fn coset_counts() {
        let one = CycInt::one(RingTag::Eisenstein);
        assert_eq!(direct_pair_count(&one).unwrap(), 1);
        assert_eq!(parametrized_count(&one).unwrap(), 1);
        let p7 = CycInt::new(RingTag::Eisenstein, 3, 1);
        assert_eq!(direct_pair_count(&p7).unwrap(), 48);
        assert_eq!(parametrized_count(&p7).unwrap(), 48);
        let rep = coset_count_check(RingTag::Eisenstein, 50).unwrap();
        assert!(rep.passed);
        for d in elements_up_to(RingTag::Eisenstein, 30) {
            assert_eq!(direct_pair_count(&d).unwrap(), jordan_totient2(&d).unwrap());
        }
    }

    /// Centralizer dimension `sum (2i - 1) lambda_i`.
    fn centralizer(p: &Partition) -> u64 {
        p.parts().iter().enumerate().map(|(i, &l)| (2 * i as u64 + 1) * l as u64).sum()
    }

    #[test]
    fn orbit_dimensions() {
        let ones = Partition::new(vec![1; 5]).unwrap();
        assert_eq!(orbit_dim(&ones), 0);
        let p22 = Partition::new(vec![2, 2]).unwrap();
        assert_eq!(orbit_dim(&p22), 8);
        assert_eq!(16 - centralizer(&p22), 8);
        let p4 = Partition::new(vec![4]).unwrap();
        assert_eq!(orbit_dim(&p4), 12);
        for parts in [vec![5, 3, 3, 1], vec![6, 2], vec![3, 3, 2, 2, 1]] {
            let p = Partition::new(parts).unwrap();
            let n = p.size() as u64;
            assert_eq!(orbit_dim(&p), n * n - centralizer(&p));
            assert_eq!(p.transpose().transpose(), p);
        }
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn dimension_equation_range() {
        assert_eq!(dimension_equation(2).unwrap(), (14, 14));
        for r in 2..=10 {
            let (l, h) = dimension_equation(r).unwrap();
            assert_eq!(l, h);
        }
        assert!(dims_report(10).unwrap().passed);
    }
}
