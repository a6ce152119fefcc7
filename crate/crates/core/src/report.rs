//! JSON report shape shared by every verification: complex numbers are
//! serialized as `[re, im]`.

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use serde_json::Value;

pub fn ser_complex<S: Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [c.re, c.im].serialize(s)
}

pub fn ser_opt_complex<S: Serializer>(c: &Option<Complex64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    c.map(|c| [c.re, c.im]).serialize(s)
}

pub fn c2(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

pub const GBAR_CONJ: &str = "gbar(p) = complex conjugate of g(p)";
pub const CHI_TRIVIAL: &str = "chi(p) = 1 (trivial central character)";
pub const ETA_ONE: &str = "eta_p = 1 (Hilbert self-pairing)";
pub const SCALAR_MODEL: &str = "scalar Whittaker model: X^[f] are unimodular scalars";
pub const B_ZERO: &str = "b(p^(3k+2)) = 0";
pub const SQUAREFREE_D: &str = "only squarefree d enumerated (g(d) = 0 otherwise)";
pub const COCYCLE_TRIVIAL: &str = "metaplectic cocycle factors taken trivial in matrix manipulations";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub label: String,
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    pub abs: f64,
}

impl Residual {
    pub fn new(label: impl Into<String>, value: Complex64) -> Residual {
        Residual {
            label: label.into(),
            value,
            abs: value.norm(),
        }
    }

    pub fn real(label: impl Into<String>, value: f64) -> Residual {
        Self::new(label, Complex64::new(value, 0.0))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub command: String,
    pub params: Value,
    #[serde(serialize_with = "ser_opt_complex")]
    pub value: Option<Complex64>,
    pub terms: Vec<Value>,
    pub residuals: Vec<Residual>,
    pub max_abs_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub assumptions: Vec<String>,
    pub detected_conditions: Vec<String>,
}

impl VerifyReport {
    pub fn new(command: &str, params: Value, tolerance: f64) -> VerifyReport {
        VerifyReport {
            command: command.into(),
            params,
            value: None,
            terms: Vec::new(),
            residuals: Vec::new(),
            max_abs_residual: 0.0,
            tolerance,
            passed: true,
            assumptions: Vec::new(),
            detected_conditions: Vec::new(),
        }
    }

    pub fn push(&mut self, r: Residual) {
        if r.abs > self.max_abs_residual || r.abs.is_nan() {
            self.max_abs_residual = r.abs;
        }
        self.residuals.push(r);
    }

    pub fn assume(&mut self, a: &str) {
        if !self.assumptions.iter().any(|x| x == a) {
            self.assumptions.push(a.to_string());
        }
    }

    /// Set `passed` from the residuals; extra failures can be folded in by
    /// the caller afterwards.
    pub fn finish(mut self) -> VerifyReport {
        self.passed = self.max_abs_residual <= self.tolerance && !self.max_abs_residual.is_nan();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
