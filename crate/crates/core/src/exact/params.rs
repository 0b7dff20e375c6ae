use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ExactError, Rational, Scalar};

/// Default bound `R` of the genericity predicate: no `a*h1 + b*h2 = 0` with
/// `|a|, |b| <= R`.
pub const DEFAULT_RESONANCE_BOUND: i64 = 64;

/// A rational specialization of the equivariant parameters. `h3 = -h1 - h2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalParams {
    pub h1: Rational,
    pub h2: Rational,
    pub chi: Rational,
}

impl RationalParams {
    pub fn new(h1: Rational, h2: Rational, chi: Rational) -> Self {
        RationalParams { h1, h2, chi }
    }

    pub fn parse(h1: &str, h2: &str, chi: &str) -> Result<Self, ExactError> {
        Ok(RationalParams::new(h1.parse()?, h2.parse()?, chi.parse()?))
    }

    pub fn h3(&self) -> Rational {
        -(self.h1.clone() + &self.h2)
    }

    /// Finds an integer relation `a*h1 + b*h2 = 0` with `|a|, |b| <= bound`.
    pub fn resonance(&self, bound: i64) -> Option<(i64, i64)> {
        if self.h1.is_zero() {
            return Some((1, 0));
        }
        if self.h2.is_zero() {
            return Some((0, 1));
        }
        // h1/h2 = -b/a must be a fraction with small numerator and denominator
        let ratio = self.h1.clone() * &self.h2.inv().expect("h2 nonzero");
        let n = ratio.numer().clone();
        let d = ratio.denom().clone();
        let nb = num_bigint::BigInt::from(bound);
        if num_traits::Signed::abs(&n) <= nb && d <= nb {
            let n: i64 = n.try_into().expect("bounded");
            let d: i64 = d.try_into().expect("bounded");
            // h1 * d = n * h2  ->  d*h1 - n*h2 = 0
            return Some((d, -n));
        }
        None
    }

    pub fn check_generic(&self, bound: i64) -> Result<(), ExactError> {
        match self.resonance(bound) {
            Some((a, b)) => Err(ExactError::Resonant(format!(
                "{a}*h1 + {b}*h2 = 0 for h1={}, h2={}",
                self.h1, self.h2
            ))),
            None => Ok(()),
        }
    }

    /// Uniform numerators in `[-999, 999] \ {0}` and denominators in
    /// `[1, 999]`, rejected until generic. `chi` may be zero.
    pub fn random<R: Rng>(rng: &mut R, bound: i64) -> Self {
        let mut draw = |allow_zero: bool| loop {
            let p: i64 = rng.gen_range(-999..=999);
            let q: i64 = rng.gen_range(1..=999);
            if allow_zero || p != 0 {
                return Rational::new(p, q).expect("q > 0");
            }
        };
        loop {
            let cand = RationalParams::new(draw(false), draw(false), draw(true));
            if cand.check_generic(bound).is_ok() {
                return cand;
            }
        }
    }
}

/// Parameters reduced into the working field.
///
/// `h1, h2, h3` double as the conifold weights `t, q, h`.
/// `k` generic specializations drawn from a seeded ChaCha8 stream.
pub fn random_params(seed: u64, k: usize, bound: i64) -> Vec<RationalParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| RationalParams::random(&mut rng, bound)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params<S> {
    pub h1: S,
    pub h2: S,
    pub h3: S,
    pub chi: S,
    pub source: RationalParams,
}

impl<S: Scalar> Params<S> {
    /// Reduces a rational specialization, enforcing genericity in the target
    /// field as well (a relation may appear only modulo the prime).
    pub fn from_rational(p: &RationalParams, bound: i64) -> Result<Self, ExactError> {
        p.check_generic(bound)?;
        let h1 = S::from_rational(&p.h1)?;
        let h2 = S::from_rational(&p.h2)?;
        let chi = S::from_rational(&p.chi)?;
        let h3 = -(h1.clone() + &h2);
        for a in -bound..=bound {
            for b in -bound..=bound {
                if (a, b) == (0, 0) {
                    continue;
                }
                let v = S::from_i64(a) * &h1 + S::from_i64(b) * &h2;
                if v.is_zero() {
                    return Err(ExactError::Resonant(format!(
                        "{a}*h1 + {b}*h2 vanishes in the working field"
                    )));
                }
            }
        }
        Ok(Params { h1, h2, h3, chi, source: p.clone() })
    }

    pub fn hbar(&self) -> [S; 3] {
        [self.h1.clone(), self.h2.clone(), self.h3.clone()]
    }

    pub fn t(&self) -> &S {
        &self.h1
    }
    pub fn q(&self) -> &S {
        &self.h2
    }
    pub fn h(&self) -> &S {
        &self.h3
    }

    pub fn sigma2(&self) -> S {
        self.h1.clone() * &self.h2 + self.h1.clone() * &self.h3 + self.h2.clone() * &self.h3
    }

    pub fn sigma3(&self) -> S {
        self.h1.clone() * &self.h2 * &self.h3
    }
}
