//! Truncated Laurent series around a finite point or around infinity.

use super::{ExactError, Scalar};

/// Expansion point. At infinity the local parameter is `u = 1/z`, at a finite
/// point `a` it is `u = z - a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Center<S> {
    Infinity,
    At(S),
}

/// `coeffs[i]` is the coefficient of `u^(valuation + i)`; everything from
/// `u^(valuation + coeffs.len())` on is unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries<S> {
    pub center: Center<S>,
    pub valuation: i64,
    pub coeffs: Vec<S>,
}

impl<S: Scalar> TruncSeries<S> {
    pub fn new(center: Center<S>, valuation: i64, coeffs: Vec<S>) -> Self {
        TruncSeries { center, valuation, coeffs }
    }

    /// Number of known coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// First power past the known range.
    pub fn precision(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64
    }

    /// Coefficient of `u^power`, `None` when it lies beyond the precision.
    pub fn coeff(&self, power: i64) -> Option<S> {
        if power >= self.precision() {
            None
        } else if power < self.valuation {
            Some(S::zero())
        } else {
            Some(self.coeffs[(power - self.valuation) as usize].clone())
        }
    }

    fn same_center(&self, other: &Self) -> Result<(), ExactError> {
        if self.center != other.center {
            return Err(ExactError::CenterMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_center(other)?;
        let start = self.valuation.min(other.valuation);
        let end = self.precision().min(other.precision());
        let coeffs = (start..end.max(start))
            .map(|p| self.coeff(p).unwrap() + other.coeff(p).unwrap())
            .collect();
        Ok(TruncSeries::new(self.center.clone(), start, coeffs))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_center(other)?;
        let n = self.order().min(other.order());
        let mut coeffs = vec![S::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b;
            }
        }
        Ok(TruncSeries::new(self.center.clone(), self.valuation + other.valuation, coeffs))
    }

    /// Drops leading zeros, shifting the valuation.
    pub fn normalized(&self) -> Self {
        let lead = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len());
        TruncSeries::new(
            self.center.clone(),
            self.valuation + lead as i64,
            self.coeffs[lead..].to_vec(),
        )
    }

    /// Multiplicative inverse; the leading known coefficient must be a unit.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        let s = self.normalized();
        if s.coeffs.is_empty() {
            return Err(ExactError::DivisionByZero);
        }
        let inv0 = s.coeffs[0].inv()?;
        let mut out: Vec<S> = Vec::with_capacity(s.order());
        out.push(inv0.clone());
        for n in 1..s.order() {
            let mut acc = S::zero();
            for k in 1..=n {
                acc = acc + s.coeffs[k].clone() * &out[n - k];
            }
            out.push(-(acc * &inv0));
        }
        Ok(TruncSeries::new(s.center, -s.valuation, out))
    }

    /// Keeps at most `k` coefficients.
    pub fn truncate(mut self, k: usize) -> Self {
        self.coeffs.truncate(k);
        self
    }
}
