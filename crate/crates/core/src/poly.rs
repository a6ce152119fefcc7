//! Truncated formal power series in several variables with complex
//! coefficients. Monomials are exponent vectors; everything above the
//! per-variable caps is discarded.

use std::collections::BTreeMap;

use num_complex::Complex64;

type C = Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    caps: Vec<u32>,
    coeffs: BTreeMap<Vec<u32>, C>,
}

impl Series {
    pub fn zero(caps: &[u32]) -> Series {
        Series {
            caps: caps.to_vec(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(caps: &[u32]) -> Series {
        let mut s = Self::zero(caps);
        s.add_term(&vec![0; caps.len()], C::new(1.0, 0.0));
        s
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn in_box(&self, m: &[u32]) -> bool {
        m.iter().zip(&self.caps).all(|(e, c)| e <= c)
    }

    /// Add `c * x^m`, ignored outside the box.
    pub fn add_term(&mut self, m: &[u32], c: C) {
        if self.in_box(m) {
            *self.coeffs.entry(m.to_vec()).or_insert(C::new(0.0, 0.0)) += c;
        }
    }

    pub fn coeff(&self, m: &[u32]) -> C {
        self.coeffs.get(m).copied().unwrap_or(C::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.coeffs.iter()
    }

    /// `1 + a x_i + b x_i^2`-style univariate factor in variable `i`.
    pub fn univariate(caps: &[u32], i: usize, coeffs: &[C]) -> Series {
        let mut s = Self::zero(caps);
        for (k, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; caps.len()];
            m[i] = k as u32;
            s.add_term(&m, *c);
        }
        s
    }

    pub fn mul(&self, o: &Series) -> Series {
        let mut out = Series::zero(&self.caps);
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &o.coeffs {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(&m, ca * cb);
            }
        }
        out
    }

    pub fn sub(&self, o: &Series) -> Series {
        let mut out = self.clone();
        for (m, c) in &o.coeffs {
            out.add_term(m, -c);
        }
        out
    }

    pub fn scale(&self, c: C) -> Series {
        Series {
            caps: self.caps.clone(),
            coeffs: self.coeffs.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Every monomial in the box, in lexicographic order.
    pub fn box_monomials(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.caps.len()];
        loop {
            out.push(cur.clone());
            let mut i = 0;
            loop {
                if i == self.caps.len() {
                    out.sort();
                    return out;
                }
                if cur[i] < self.caps[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }
}

/// `1 / (1 - lambda x + x^2) = sum U_k x^k` up to `x^cap`.
pub fn chebyshev_u(lambda: C, cap: usize) -> Vec<C> {
    let mut u = vec![C::new(0.0, 0.0); cap + 1];
    u[0] = C::new(1.0, 0.0);
    if cap >= 1 {
        u[1] = lambda;
    }
    for k in 2..=cap {
        u[k] = lambda * u[k - 1] - u[k - 2];
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_product() {
        let caps = [2, 1];
        let a = Series::univariate(&caps, 0, &[C::new(1.0, 0.0), C::new(1.0, 0.0)]);
        let b = Series::univariate(&caps, 1, &[C::new(1.0, 0.0), C::new(2.0, 0.0)]);
        let p = a.mul(&a).mul(&a).mul(&b);
        assert_eq!(p.coeff(&[2, 1]), C::new(6.0, 0.0));
        assert_eq!(p.coeff(&[3, 0]), C::new(0.0, 0.0));
        assert_eq!(p.box_monomials().len(), 6);
    }

    #[test]
    fn chebyshev_inverts_the_quadratic() {
        let lam = C::new(0.4, 0.3);
        let u = Series::univariate(&[10], 0, &chebyshev_u(lam, 10));
        let q = Series::univariate(&[10], 0, &[C::new(1.0, 0.0), -lam, C::new(1.0, 0.0)]);
        let one = u.mul(&q);
        for k in 1..=10 {
            assert!(one.coeff(&[k]).norm() < 1e-12);
        }
        assert!((one.coeff(&[0]) - 1.0).norm() < 1e-15);
    }
}
