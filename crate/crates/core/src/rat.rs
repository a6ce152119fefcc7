//! Fraction field elements `num / den` with `den > 0` and the gcd of all three
//! integer coordinates equal to one, so equal values compare equal.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{CycInt, RingTag};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycRat {
    num: CycInt,
    den: BigInt,
}

impl CycRat {
    pub fn new(num: CycInt, den: BigInt) -> Result<CycRat> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: CycInt, den: BigInt) -> CycRat {
        let ring = num.ring();
        let mut g = num.a().gcd(num.b()).gcd(&den);
        if den.is_negative() {
            g = -g;
        }
        if g.is_one() {
            return CycRat { num, den };
        }
        CycRat {
            num: CycInt::new(ring, num.a() / &g, num.b() / &g),
            den: den / g,
        }
    }

    pub fn from_int(x: CycInt) -> CycRat {
        CycRat {
            num: x,
            den: BigInt::one(),
        }
    }

    pub fn from_integer(ring: RingTag, k: i64) -> CycRat {
        Self::from_int(CycInt::from_int(ring, k))
    }

    pub fn zero(ring: RingTag) -> CycRat {
        Self::from_int(CycInt::zero(ring))
    }

    pub fn one(ring: RingTag) -> CycRat {
        Self::from_int(CycInt::one(ring))
    }

    /// `x / y` for integral `x`, `y`.
    pub fn frac(x: &CycInt, y: &CycInt) -> Result<CycRat> {
        Self::from_int(x.clone()).div(&Self::from_int(y.clone()))
    }

    pub fn ring(&self) -> RingTag {
        self.num.ring()
    }

    pub fn num(&self) -> &CycInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<CycRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.num.norm();
        Ok(Self::reduced(self.num.conj().scale(&self.den), n))
    }

    pub fn div(&self, o: &CycRat) -> Result<CycRat> {
        Ok(self * &o.inv()?)
    }

    /// Trace to `Q` as a reduced fraction `(numerator, denominator)`.
    pub fn trace(&self) -> (BigInt, BigInt) {
        let t = self.num.trace();
        let g = t.gcd(&self.den);
        (t / &g, &self.den / g)
    }

    /// Complex absolute value, for reporting residual magnitudes.
    pub fn abs_f64(&self) -> f64 {
        let n = self.num.norm().to_f64().unwrap_or(f64::INFINITY);
        n.sqrt() / self.den.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl Add<&CycRat> for &CycRat {
    type Output = CycRat;
    fn add(self, o: &CycRat) -> CycRat {
        let num = self.num.scale(&o.den) + o.num.scale(&self.den);
        CycRat::reduced(num, &self.den * &o.den)
    }
}

impl Sub<&CycRat> for &CycRat {
    type Output = CycRat;
    fn sub(self, o: &CycRat) -> CycRat {
        self + &(-o)
    }
}

impl Mul<&CycRat> for &CycRat {
    type Output = CycRat;
    fn mul(self, o: &CycRat) -> CycRat {
        CycRat::reduced(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &CycRat {
    type Output = CycRat;
    fn neg(self) -> CycRat {
        CycRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
