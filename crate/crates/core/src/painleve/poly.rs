use rug::Float;
use serde::{Deserialize, Serialize};

/// Real polynomial, coefficients by increasing degree.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly(pub Vec<f64>);

impl Poly {
    pub fn new(c: &[f64]) -> Self {
        let mut v = c.to_vec();
        while v.last() == Some(&0.0) {
            v.pop();
        }
        Poly(v)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() { None } else { Some(self.0.len() - 1) }
    }

    pub fn derivative(&self) -> Poly {
        Poly(self.0.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect())
    }

    pub fn eval(&self, x: &Float) -> Float {
        let mut acc = Float::with_val(x.prec(), 0);
        for c in self.0.iter().rev() {
            acc *= x;
            acc += *c;
        }
        acc
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly(self.0.iter().map(|c| c * s).collect())
    }

    /// P, P', P'', P''' at x.
    pub fn jet(&self, x: &Float) -> [Float; 4] {
        let d1 = self.derivative();
        let d2 = d1.derivative();
        let d3 = d2.derivative();
        [self.eval(x), d1.eval(x), d2.eval(x), d3.eval(x)]
    }
}
