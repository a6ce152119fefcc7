//! Exact arithmetic in the Eisenstein integers `Z[w]` (`w^2 + w + 1 = 0`) and
//! the Gaussian integers `Z[i]`.
//!
//! Both rings are norm-Euclidean with class number one, so every ideal has a
//! generator and we work with elements throughout. Elements coprime to the
//! ramified prime are normalized to their *primary* associate:
//!
//! * Eisenstein: `x = 2 (mod 3)`, the convention under which cubic
//!   reciprocity reads `(a/b) = (b/a)`;
//! * Gaussian: `x = 1 (mod (1+i)^3)`.
//!
//! Elements divisible by the ramified prime use the lexicographically largest
//! associate instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingTag {
    Eisenstein,
    Gaussian,
}

impl RingTag {
    /// Order of the root of unity group used for residue symbols: 3 or 4.
    pub fn n(self) -> u32 {
        match self {
            RingTag::Eisenstein => 3,
            RingTag::Gaussian => 4,
        }
    }

    /// The rational prime that ramifies (3 resp. 2).
    pub fn ramified_prime(self) -> u64 {
        match self {
            RingTag::Eisenstein => 3,
            RingTag::Gaussian => 2,
        }
    }

    pub fn disc_abs(self) -> u64 {
        match self {
            RingTag::Eisenstein => 3,
            RingTag::Gaussian => 4,
        }
    }

    /// The ramified prime element: `1 - w` resp. `1 + i`.
    pub fn lambda(self) -> CycInt {
        match self {
            RingTag::Eisenstein => CycInt::new(self, 1, -1),
            RingTag::Gaussian => CycInt::new(self, 1, 1),
        }
    }

    /// Fixed generator of the different: `1 + 2w` resp. `2`.
    pub fn different(self) -> CycInt {
        match self {
            RingTag::Eisenstein => CycInt::new(self, 1, 2),
            RingTag::Gaussian => CycInt::new(self, 2, 0),
        }
    }

    /// The primitive n-th root of unity `w` resp. `i`.
    pub fn zeta(self) -> CycInt {
        CycInt::new(self, 0, 1)
    }

    /// All units, as successive powers of a generator of the unit group.
    pub fn units(self) -> Vec<CycInt> {
        let gen = match self {
            RingTag::Eisenstein => -self.zeta(),
            RingTag::Gaussian => self.zeta(),
        };
        let count = match self {
            RingTag::Eisenstein => 6,
            RingTag::Gaussian => 4,
        };
        let mut out = Vec::with_capacity(count);
        let mut u = CycInt::one(self);
        for _ in 0..count {
            out.push(u.clone());
            u = &u * &gen;
        }
        out
    }

    pub fn short_name(self) -> &'static str {
        match self {
            RingTag::Eisenstein => "eis",
            RingTag::Gaussian => "gau",
        }
    }

    pub fn suffix(self) -> char {
        match self {
            RingTag::Eisenstein => 'w',
            RingTag::Gaussian => 'i',
        }
    }

    pub fn from_short_name(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "eis" | "eisenstein" => Ok(RingTag::Eisenstein),
            "gau" | "gaussian" => Ok(RingTag::Gaussian),
            other => Err(Error::Parse(other.to_string(), "unknown ring".into())),
        }
    }

    fn splits(self, p: u64) -> PrimeKind {
        if p == self.ramified_prime() {
            return PrimeKind::Ramified;
        }
        let split = match self {
            RingTag::Eisenstein => p % 3 == 1,
            RingTag::Gaussian => p % 4 == 1,
        };
        if split {
            PrimeKind::Split
        } else {
            PrimeKind::Inert
        }
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// An element `a + b*w` (Eisenstein) or `a + b*i` (Gaussian).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    ring: RingTag,
    a: BigInt,
    b: BigInt,
}

impl PartialOrd for CycInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycInt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ring, &self.a, &self.b).cmp(&(other.ring, &other.a, &other.b))
    }
}

impl CycInt {
    pub fn new(ring: RingTag, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        CycInt {
            ring,
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero(ring: RingTag) -> Self {
        CycInt::new(ring, 0, 0)
    }

    pub fn one(ring: RingTag) -> Self {
        CycInt::new(ring, 1, 0)
    }

    pub fn from_int(ring: RingTag, a: impl Into<BigInt>) -> Self {
        CycInt::new(ring, a, 0)
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        match self.ring {
            RingTag::Eisenstein => &self.a * &self.a - &self.a * &self.b + &self.b * &self.b,
            RingTag::Gaussian => &self.a * &self.a + &self.b * &self.b,
        }
    }

    pub fn norm_u64(&self) -> Option<u64> {
        self.norm().to_u64()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn conj(&self) -> CycInt {
        match self.ring {
            RingTag::Eisenstein => CycInt::new(self.ring, &self.a - &self.b, -&self.b),
            RingTag::Gaussian => CycInt::new(self.ring, self.a.clone(), -&self.b),
        }
    }

    /// Trace to `Q`: `2a - b` resp. `2a`.
    pub fn trace(&self) -> BigInt {
        match self.ring {
            RingTag::Eisenstein => BigInt::from(2) * &self.a - &self.b,
            RingTag::Gaussian => BigInt::from(2) * &self.a,
        }
    }

    pub fn scale(&self, k: &BigInt) -> CycInt {
        CycInt::new(self.ring, &self.a * k, &self.b * k)
    }

    pub fn pow(&self, mut e: u32) -> CycInt {
        let mut base = self.clone();
        let mut acc = CycInt::one(self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self^e mod m`, each step reduced to the canonical remainder.
    pub fn pow_mod(&self, e: &BigInt, m: &CycInt) -> CycInt {
        let mut base = self.rem(m);
        let mut acc = CycInt::one(self.ring).rem(m);
        let mut e = e.clone();
        let two = BigInt::from(2);
        while e.is_positive() {
            if e.is_odd() {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e /= &two;
        }
        acc
    }

    /// Euclidean division with quotient coordinates rounded to the nearest
    /// integer (ties toward +infinity). The remainder is a function of the
    /// residue class of `self` alone and satisfies `N(r) < N(d)`.
    pub fn div_rem(&self, d: &CycInt) -> (CycInt, CycInt) {
        assert!(!d.is_zero(), "division by zero element");
        let num = self * &d.conj();
        let n = d.norm();
        let two_n = &n * 2;
        let round = |t: &BigInt| { let s: BigInt = t * 2 + &n; s.div_floor(&two_n) };
        let q = CycInt::new(self.ring, round(&num.a), round(&num.b));
        let r = self - &(&q * d);
        (q, r)
    }

    pub fn rem(&self, d: &CycInt) -> CycInt {
        self.div_rem(d).1
    }

    /// `Some(self / d)` when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &CycInt) -> Option<CycInt> {
        if d.is_zero() {
            return None;
        }
        let num = self * &d.conj();
        let n = d.norm();
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        if ra.is_zero() && rb.is_zero() {
            Some(CycInt::new(self.ring, qa, qb))
        } else {
            None
        }
    }

    pub fn divides(&self, x: &CycInt) -> bool {
        x.exact_div(self).is_some()
    }

    pub fn is_coprime_to_lambda(&self) -> bool {
        let p = BigInt::from(self.ring.ramified_prime());
        !(self.norm() % p).is_zero()
    }

    pub fn is_primary(&self) -> bool {
        let m = |x: &BigInt, k: i64| x.mod_floor(&BigInt::from(k)).to_i64().unwrap();
        match self.ring {
            RingTag::Eisenstein => m(&self.a, 3) == 2 && m(&self.b, 3) == 0,
            RingTag::Gaussian => {
                let (a, b) = (m(&self.a, 4), m(&self.b, 4));
                (a == 1 && b == 0) || (a == 3 && b == 2)
            }
        }
    }

    pub fn associates(&self) -> Vec<CycInt> {
        self.ring.units().iter().map(|u| u * self).collect()
    }

    /// Canonical representative of the ideal `(self)`.
    pub fn canonical_associate(&self) -> CycInt {
        if self.is_zero() {
            return self.clone();
        }
        if self.is_coprime_to_lambda() {
            return primary_associate(self).expect("coprime to lambda").0;
        }
        self.associates()
            .into_iter()
            .max_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)))
            .unwrap()
    }

    /// Parse the CLI/JSON grammar: signed integers with an optional `w` or
    /// `i` suffix, e.g. `"3+1w"`, `"-1+2i"`, `"w"`, `"7"`. Whitespace is
    /// ignored.
    pub fn parse(ring: RingTag, s: &str) -> Result<CycInt> {
        let (parsed_ring, x) = parse_terms(s, Some(ring))?;
        debug_assert!(parsed_ring.is_none() || parsed_ring == Some(ring));
        Ok(CycInt::new(ring, x.0, x.1))
    }

    /// Parse an element whose ring is inferred from its suffix.
    pub fn parse_infer(s: &str) -> Result<CycInt> {
        let (ring, x) = parse_terms(s, None)?;
        let ring = ring.ok_or_else(|| {
            Error::Parse(s.to_string(), "no 'w' or 'i' suffix to infer the ring".into())
        })?;
        Ok(CycInt::new(ring, x.0, x.1))
    }
}

fn parse_terms(s: &str, ring: Option<RingTag>) -> Result<(Option<RingTag>, (BigInt, BigInt))> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |m: &str| Error::Parse(s.to_string(), m.to_string());
    if compact.is_empty() {
        return Err(err("empty"));
    }
    let mut seen: Option<RingTag> = None;
    let (mut a, mut b) = (BigInt::zero(), BigInt::zero());
    let chars: Vec<char> = compact.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let mut sign = 1;
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -1;
            }
            i += 1;
        } else if i > 0 {
            return Err(err("expected '+' or '-' between terms"));
        }
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let digits: String = chars[start..i].iter().collect();
        let suffix = chars.get(i).copied().filter(|c| c.is_ascii_alphabetic());
        if suffix.is_some() {
            i += 1;
        }
        if digits.is_empty() && suffix.is_none() {
            return Err(err("dangling sign"));
        }
        let mag: BigInt = if digits.is_empty() {
            BigInt::one()
        } else {
            digits.parse().map_err(|_| err("bad integer"))?
        };
        let val = mag * sign;
        match suffix {
            None => a += val,
            Some(c) => {
                let r = match c {
                    'w' => RingTag::Eisenstein,
                    'i' | 'j' => RingTag::Gaussian,
                    _ => return Err(err("unknown suffix")),
                };
                if let Some(expected) = ring {
                    if expected != r {
                        return Err(err("suffix does not match ring"));
                    }
                }
                if seen.is_some_and(|x| x != r) {
                    return Err(err("mixed suffixes"));
                }
                seen = Some(r);
                b += val;
            }
        }
    }
    Ok((seen.or(ring), (a, b)))
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}{}", self.a, sign, self.b.abs(), self.ring.suffix())
    }
}

impl Add<&CycInt> for &CycInt {
    type Output = CycInt;
    fn add(self, o: &CycInt) -> CycInt {
        debug_assert_eq!(self.ring, o.ring);
        CycInt::new(self.ring, &self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub<&CycInt> for &CycInt {
    type Output = CycInt;
    fn sub(self, o: &CycInt) -> CycInt {
        debug_assert_eq!(self.ring, o.ring);
        CycInt::new(self.ring, &self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul<&CycInt> for &CycInt {
    type Output = CycInt;
    fn mul(self, o: &CycInt) -> CycInt {
        debug_assert_eq!(self.ring, o.ring);
        let ac = &self.a * &o.a;
        let bd = &self.b * &o.b;
        let cross = &self.a * &o.b + &self.b * &o.a;
        match self.ring {
            RingTag::Eisenstein => CycInt::new(self.ring, &ac - &bd, cross - &bd),
            RingTag::Gaussian => CycInt::new(self.ring, ac - bd, cross),
        }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt::new(self.ring, -&self.a, -&self.b)
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycInt> for CycInt {
            type Output = CycInt;
            fn $m(self, o: CycInt) -> CycInt {
                (&self).$m(&o)
            }
        }
        impl $tr<&CycInt> for CycInt {
            type Output = CycInt;
            fn $m(self, o: &CycInt) -> CycInt {
                (&self).$m(o)
            }
        }
        impl $tr<CycInt> for &CycInt {
            type Output = CycInt;
            fn $m(self, o: CycInt) -> CycInt {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// The unique primary associate `u*a` together with the unit `u`.
pub fn primary_associate(a: &CycInt) -> Result<(CycInt, CycInt)> {
    if a.is_zero() || !a.is_coprime_to_lambda() {
        return Err(Error::NoPrimaryAssociate(a.to_string()));
    }
    for u in a.ring.units() {
        let x = &u * a;
        if x.is_primary() {
            return Ok((x, u));
        }
    }
    unreachable!("every element coprime to lambda has a primary associate")
}

/// Greatest common divisor, normalized by [`CycInt::canonical_associate`].
pub fn euclid_gcd(a: &CycInt, b: &CycInt) -> Result<CycInt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdUndefined);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y);
        x = y;
        y = r;
    }
    if x.is_unit() {
        return Ok(CycInt::one(x.ring()));
    }
    Ok(x.canonical_associate())
}

pub fn are_coprime(a: &CycInt, b: &CycInt) -> bool {
    euclid_gcd(a, b).map(|g| g.is_unit()).unwrap_or(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeKind {
    Split,
    Inert,
    Ramified,
}

/// A prime element in normal form: primary, or the canonical associate of
/// the ramified prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeElt {
    pub pi: CycInt,
    pub norm: u64,
    pub kind: PrimeKind,
    /// The rational prime below `pi`.
    pub rational: u64,
}

impl PrimeElt {
    pub fn ring(&self) -> RingTag {
        self.pi.ring()
    }

    /// Build from any associate of a prime element; errors if `x` is not prime.
    pub fn from_element(x: &CycInt) -> Result<PrimeElt> {
        let f = factorize(x)?;
        match f.factors.as_slice() {
            [(p, 1)] => Ok(p.clone()),
            _ => Err(Error::InvalidModel(format!("{x} is not a prime element"))),
        }
    }
}

impl PartialOrd for PrimeElt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeElt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.norm, &self.pi).cmp(&(other.norm, &other.pi))
    }
}

impl fmt::Display for PrimeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.pi.fmt(f)
    }
}

fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// An element of norm `p`, for `p` splitting in `ring`.
fn element_of_norm(ring: RingTag, p: u64) -> Option<CycInt> {
    match ring {
        RingTag::Gaussian => {
            let mut b = 0u64;
            while b * b <= p {
                let rest = p - b * b;
                let a = rest.sqrt();
                if a * a == rest {
                    return Some(CycInt::new(ring, a, b));
                }
                b += 1;
            }
            None
        }
        RingTag::Eisenstein => {
            // (2a - b)^2 + 3b^2 = 4p
            let four_p = 4 * p as u128;
            let mut b = 0u128;
            while 3 * b * b <= four_p {
                let rest = four_p - 3 * b * b;
                let s = rest.sqrt();
                if s * s == rest && (s + b).is_multiple_of(2) {
                    let a = (s + b) / 2;
                    return Some(CycInt::new(ring, a as u64, b as u64));
                }
                b += 1;
            }
            None
        }
    }
}

/// The primes of `ring` above the rational prime `p`, sorted.
pub fn primes_above(ring: RingTag, p: u64) -> Vec<PrimeElt> {
    match ring.splits(p) {
        PrimeKind::Ramified => vec![PrimeElt {
            pi: ring.lambda().canonical_associate(),
            norm: p,
            kind: PrimeKind::Ramified,
            rational: p,
        }],
        PrimeKind::Inert => vec![PrimeElt {
            pi: CycInt::from_int(ring, p).canonical_associate(),
            norm: p * p,
            kind: PrimeKind::Inert,
            rational: p,
        }],
        PrimeKind::Split => {
            let x = element_of_norm(ring, p).expect("split prime has an element of norm p");
            let pi = primary_associate(&x).unwrap().0;
            let pi2 = primary_associate(&x.conj()).unwrap().0;
            let mut out: Vec<PrimeElt> = [pi, pi2]
                .into_iter()
                .map(|pi| PrimeElt {
                    pi,
                    norm: p,
                    kind: PrimeKind::Split,
                    rational: p,
                })
                .collect();
            out.sort();
            out
        }
    }
}

/// All primes of norm at most `bound`, excluding the ramified prime, sorted
/// by norm and then coordinates.
pub fn primes_up_to(ring: RingTag, bound: u64) -> Vec<PrimeElt> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= bound {
        if is_prime_u64(p) && p != ring.ramified_prime() {
            for q in primes_above(ring, p) {
                if q.norm <= bound {
                    out.push(q);
                }
            }
        }
        p += 1;
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: CycInt,
    pub factors: Vec<(PrimeElt, u32)>,
}

impl Factorization {
    pub fn product(&self) -> CycInt {
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, (p, e)| &acc * &p.pi.pow(*e))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e <= 1)
    }
}

/// `a = unit * prod pi^e` with primary primes (canonical associate for the
/// ramified prime), sorted by norm then coordinates.
pub fn factorize(a: &CycInt) -> Result<Factorization> {
    if a.is_zero() {
        return Err(Error::FactorZero);
    }
    let ring = a.ring();
    let n = a
        .norm()
        .to_u64()
        .ok_or_else(|| Error::NormTooLarge(a.to_string()))?;
    let mut rational = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            rational.push(p);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        rational.push(rest);
    }
    let mut cur = a.clone();
    let mut factors = Vec::new();
    for p in rational {
        for prime in primes_above(ring, p) {
            let mut e = 0;
            while let Some(q) = cur.exact_div(&prime.pi) {
                cur = q;
                e += 1;
            }
            if e > 0 {
                factors.push((prime, e));
            }
        }
    }
    debug_assert!(cur.is_unit());
    factors.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(Factorization { unit: cur, factors })
}

/// A complete residue system mod `d`, each element its canonical Euclidean
/// remainder, sorted.
pub fn residues(d: &CycInt) -> Result<Vec<CycInt>> {
    if d.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let ring = d.ring();
    // Lattice dO in (1, zeta) coordinates, reduced to a basis (e, 0), (f, h).
    let dz = d * &ring.zeta();
    let (y1, y2) = (d.b().clone(), dz.b().clone());
    let eg = y1.extended_gcd(&y2);
    let h = eg.gcd.abs();
    let e = ((&y2 / &eg.gcd) * d.a() - (&y1 / &eg.gcd) * dz.a()).abs();
    debug_assert_eq!(&e * &h, d.norm());
    let e = e.to_u64().expect("modulus too large to enumerate");
    let h = h.to_u64().expect("modulus too large to enumerate");
    let mut out = Vec::with_capacity((e * h) as usize);
    for y in 0..h {
        for x in 0..e {
            out.push(CycInt::new(ring, x, y).rem(d));
        }
    }
    out.sort();
    Ok(out)
}

/// Representatives of `(O/(d))^x` as canonical remainders, sorted.
pub fn residues_coprime(d: &CycInt) -> Result<Vec<CycInt>> {
    let all = residues(d)?;
    let f = factorize(d)?;
    Ok(all
        .into_iter()
        .filter(|r| f.factors.iter().all(|(p, _)| !p.pi.divides(r)))
        .collect())
}

/// Euler phi of the ideal `(d)`: `N(d) * prod (1 - 1/N(p))`.
pub fn euler_phi(d: &CycInt) -> Result<BigInt> {
    let f = factorize(d)?;
    let mut acc = d.norm();
    for (p, _) in &f.factors {
        acc = acc / BigInt::from(p.norm) * BigInt::from(p.norm - 1);
    }
    Ok(acc)
}

/// Elements built as products of the given primes, as exponent vectors with
/// total norm at most `bound`. Includes the empty product.
pub fn exponent_vectors(primes: &[PrimeElt], bound: u128, squarefree: bool) -> Vec<Vec<u32>> {
    fn rec(
        primes: &[PrimeElt],
        i: usize,
        norm: u128,
        bound: u128,
        squarefree: bool,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == primes.len() {
            out.push(cur.clone());
            return;
        }
        let mut nrm = norm;
        let mut e = 0;
        loop {
            cur.push(e);
            rec(primes, i + 1, nrm, bound, squarefree, cur, out);
            cur.pop();
            if squarefree && e == 1 {
                break;
            }
            match nrm.checked_mul(primes[i].norm as u128) {
                Some(x) if x <= bound => {
                    nrm = x;
                    e += 1;
                }
                _ => break,
            }
        }
    }
    let mut out = Vec::new();
    if bound >= 1 {
        rec(primes, 0, 1, bound, squarefree, &mut Vec::new(), &mut out);
    }
    out
}

pub fn norm_of_exponents(primes: &[PrimeElt], exps: &[u32]) -> u128 {
    primes
        .iter()
        .zip(exps)
        .map(|(p, &e)| (p.norm as u128).pow(e))
        .product()
}

/// The canonical element `prod p^e` for an exponent vector.
pub fn element_of_exponents(ring: RingTag, primes: &[PrimeElt], exps: &[u32]) -> CycInt {
    primes
        .iter()
        .zip(exps)
        .fold(CycInt::one(ring), |acc, (p, &e)| &acc * &p.pi.pow(e))
        .canonical_associate()
}

/// All canonical elements coprime to the ramified prime with norm at most
/// `bound` (one per ideal), sorted by norm then coordinates.
pub fn elements_up_to(ring: RingTag, bound: u64) -> Vec<CycInt> {
    let primes = primes_up_to(ring, bound);
    let mut out: Vec<CycInt> = exponent_vectors(&primes, bound as u128, false)
        .iter()
        .map(|e| element_of_exponents(ring, &primes, e))
        .collect();
    out.sort_by(|x, y| (x.norm(), x).cmp(&(y.norm(), y)));
    out
}
