//! Univariate rational functions kept in fully factored form
//! `constant * prod (z - root)^exponent`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::series::{Center, TruncSeries};
use super::{ExactError, Rational, Scalar};

/// Sign convention for the residue at infinity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InfinityConvention {
    /// `Res_{z=inf} F = -[z^-1] F`, so finite residues and this one sum to zero.
    #[default]
    Standard,
    /// `+[z^-1] F`.
    Flipped,
}

/// Factored rational function in the spectral variable `z`.
///
/// Roots are kept sorted and pairwise distinct, exponents nonzero. The zero
/// function has a zero constant and no factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinForm<S> {
    constant: S,
    factors: Vec<(S, i32)>,
}

impl<S: Scalar> LinForm<S> {
    pub fn new(constant: S, factors: impl IntoIterator<Item = (S, i32)>) -> Self {
        let mut form = LinForm { constant, factors: Vec::new() };
        if form.constant.is_zero() {
            return form;
        }
        let mut all: Vec<(S, i32)> = factors.into_iter().collect();
        all.sort_by(|a, b| a.0.cmp(&b.0));
        for (root, e) in all {
            match form.factors.last_mut() {
                Some(last) if last.0 == root => last.1 += e,
                _ => form.factors.push((root, e)),
            }
        }
        form.factors.retain(|f| f.1 != 0);
        form
    }

    pub fn constant(c: S) -> Self {
        LinForm::new(c, [])
    }

    pub fn one() -> Self {
        LinForm::constant(S::one())
    }

    pub fn zero() -> Self {
        LinForm::constant(S::zero())
    }

    /// `(z - root)^exponent`.
    pub fn linear(root: S, exponent: i32) -> Self {
        LinForm::new(S::one(), [(root, exponent)])
    }

    /// `z^power`.
    pub fn monomial(power: i32) -> Self {
        LinForm::linear(S::zero(), power)
    }

    pub fn lead(&self) -> &S {
        &self.constant
    }

    pub fn factors(&self) -> &[(S, i32)] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero()
    }

    /// Exponent of `(z - root)`, zero when absent.
    pub fn exponent_at(&self, root: &S) -> i32 {
        self.factors
            .binary_search_by(|f| f.0.cmp(root))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Numerator degree minus denominator degree. `None` for the zero function.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.factors.iter().map(|f| f.1 as i64).sum())
        }
    }

    /// Poles with their orders, in root order.
    pub fn poles(&self) -> Vec<(S, u32)> {
        self.factors
            .iter()
            .filter(|f| f.1 < 0)
            .map(|f| (f.0.clone(), f.1.unsigned_abs()))
            .collect()
    }

    pub fn zeros(&self) -> Vec<(S, u32)> {
        self.factors
            .iter()
            .filter(|f| f.1 > 0)
            .map(|f| (f.0.clone(), f.1 as u32))
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        LinForm::new(
            self.constant.clone() * &other.constant,
            self.factors.iter().chain(other.factors.iter()).cloned(),
        )
    }

    pub fn scale(&self, c: &S) -> Self {
        LinForm::new(self.constant.clone() * c, self.factors.iter().cloned())
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        Ok(LinForm::new(
            self.constant.inv()?,
            self.factors.iter().map(|(r, e)| (r.clone(), -e)),
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn powi(&self, e: i32) -> Result<Self, ExactError> {
        let c = self.constant.powi(e as i64)?;
        Ok(LinForm::new(c, self.factors.iter().map(|(r, k)| (r.clone(), k * e))))
    }

    pub fn eval(&self, z0: &S) -> Result<S, ExactError> {
        let mut acc = self.constant.clone();
        for (root, e) in &self.factors {
            let d = z0.clone() - root;
            if d.is_zero() {
                if *e < 0 {
                    return Err(ExactError::PoleAtPoint);
                }
                return Ok(S::zero());
            }
            acc = acc * &d.powi(*e as i64)?;
        }
        Ok(acc)
    }

    /// Laurent expansion in `u = z - a` starting at the true valuation, with
    /// `terms` coefficients.
    pub fn laurent_at(&self, a: &S, terms: usize) -> Result<TruncSeries<S>, ExactError> {
        let mut coeffs = vec![S::zero(); terms];
        if terms > 0 {
            coeffs[0] = self.constant.clone();
        }
        let mut valuation = 0i64;
        for (root, e) in &self.factors {
            if root == a {
                valuation += *e as i64;
                continue;
            }
            // (a - r + u)^e = (a - r)^e * sum_k C(e, k) (u / (a - r))^k
            let d = a.clone() - root;
            let d_inv = d.inv()?;
            let mut bin = vec![S::zero(); terms];
            if terms > 0 {
                bin[0] = d.powi(*e as i64)?;
            }
            for k in 1..terms {
                let num = S::from_i64(*e as i64 - k as i64 + 1);
                let den = S::from_i64(k as i64).inv()?;
                bin[k] = bin[k - 1].clone() * &num * &den * &d_inv;
            }
            coeffs = mul_trunc(&coeffs, &bin);
        }
        Ok(TruncSeries::new(Center::At(a.clone()), valuation, coeffs))
    }

    /// Laurent expansion in `u = 1/z` starting at `u^(-degree)`.
    pub fn laurent_at_infinity(&self, terms: usize) -> TruncSeries<S> {
        let mut coeffs = vec![S::zero(); terms];
        if terms > 0 {
            coeffs[0] = self.constant.clone();
        }
        for (root, e) in &self.factors {
            // (1 - r u)^e = sum_k C(e, k) (-r)^k u^k
            let minus_r = -root.clone();
            let mut bin = vec![S::zero(); terms];
            if terms > 0 {
                bin[0] = S::one();
            }
            for k in 1..terms {
                let num = S::from_i64(*e as i64 - k as i64 + 1);
                let den = S::from_i64(k as i64)
                    .inv()
                    .expect("small integers are units");
                bin[k] = bin[k - 1].clone() * &num * &den * &minus_r;
            }
            coeffs = mul_trunc(&coeffs, &bin);
        }
        let valuation = -self.degree().unwrap_or(0);
        TruncSeries::new(Center::Infinity, valuation, coeffs)
    }

    /// Coefficients of `z^-1 .. z^-k` at infinity, or of
    /// `(z-a)^(-pole_order) .. (z-a)^(k-1-pole_order)` at a finite point.
    pub fn expand(
        &self,
        center: &Center<S>,
        k: usize,
        pole_order: u32,
    ) -> Result<TruncSeries<S>, ExactError> {
        match center {
            Center::Infinity => {
                let deg = self.degree().unwrap_or(0);
                // coefficient of u^n sits at index n + deg of the Laurent series
                let needed = (k as i64 + deg + 1).max(0) as usize;
                let full = self.laurent_at_infinity(needed);
                let coeffs = (1..=k as i64)
                    .map(|n| full.coeff(n).unwrap_or_else(S::zero))
                    .collect();
                Ok(TruncSeries::new(Center::Infinity, 1, coeffs))
            }
            Center::At(a) => {
                let start = -(pole_order as i64);
                let m = self.exponent_at(a) as i64;
                if !self.is_zero() && m < start {
                    return Err(ExactError::NotRegular);
                }
                let needed = (start + k as i64 - m).max(0) as usize;
                let full = self.laurent_at(a, needed)?;
                let coeffs = (start..start + k as i64)
                    .map(|p| full.coeff(p).unwrap_or_else(S::zero))
                    .collect();
                Ok(TruncSeries::new(Center::At(a.clone()), start, coeffs))
            }
        }
    }

    /// `Res_{z=a} z^power F(z)`; zero when `a` is not a pole.
    pub fn residue_at(&self, a: &S, power: u32) -> Result<S, ExactError> {
        let g = self.mul(&LinForm::monomial(power as i32));
        let m = g.exponent_at(a);
        if m >= 0 || g.is_zero() {
            return Ok(S::zero());
        }
        let order = m.unsigned_abs() as usize;
        let local = g.laurent_at(a, order)?;
        Ok(local.coeff(-1).expect("pole order covers u^-1"))
    }

    /// Residue at infinity of `z^power F(z)` under the given convention.
    pub fn residue_at_infinity_with(&self, power: u32, conv: InfinityConvention) -> S {
        let g = self.mul(&LinForm::monomial(power as i32));
        let Some(deg) = g.degree() else {
            return S::zero();
        };
        if deg + 1 < 0 {
            return S::zero();
        }
        let terms = (deg + 2) as usize;
        let c = g.laurent_at_infinity(terms).coeff(1).expect("enough terms");
        match conv {
            InfinityConvention::Standard => -c,
            InfinityConvention::Flipped => c,
        }
    }

    pub fn residue_at_infinity(&self, power: u32) -> S {
        self.residue_at_infinity_with(power, InfinityConvention::Standard)
    }

    /// Maps every scalar through `f`, e.g. reduction to the prime field.
    pub fn try_map<T: Scalar>(
        &self,
        mut f: impl FnMut(&S) -> Result<T, ExactError>,
    ) -> Result<LinForm<T>, ExactError> {
        let c = f(&self.constant)?;
        let mut fs = Vec::with_capacity(self.factors.len());
        for (r, e) in &self.factors {
            fs.push((f(r)?, *e));
        }
        Ok(LinForm::new(c, fs))
    }

    pub fn to_wire(&self) -> LinFormWire {
        LinFormWire {
            constant: self.constant.to_wire(),
            factors: self.factors.iter().map(|(r, e)| (r.to_wire(), *e)).collect(),
        }
    }
}

impl LinForm<Rational> {
    pub fn from_wire(w: &LinFormWire) -> Result<Self, ExactError> {
        let c: Rational = w.constant.parse()?;
        let mut fs = Vec::with_capacity(w.factors.len());
        for (r, e) in &w.factors {
            fs.push((r.parse()?, *e));
        }
        Ok(LinForm::new(c, fs))
    }
}

fn mul_trunc<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let n = a.len();
    let mut out = vec![S::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().take(n - i).enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y;
        }
    }
    out
}

impl<S: Scalar> fmt::Display for LinForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (r, e) in &self.factors {
            let r = r.to_string();
            match r.strip_prefix('-') {
                Some(neg) => write!(f, "·(z+{neg})^{e}")?,
                None => write!(f, "·(z-{r})^{e}")?,
            }
        }
        Ok(())
    }
}

/// Serialized form: `{ "const": "p/q", "factors": [["root", exponent], ...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinFormWire {
    #[serde(rename = "const")]
    pub constant: String,
    pub factors: Vec<(String, i32)>,
}
