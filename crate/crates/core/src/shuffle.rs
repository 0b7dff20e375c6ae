//! Single-vertex shuffle algebra: symmetric polynomials multiplied through a
//! two-variable kernel `fac(x|y) = prod_a (x - y + w_a) / (x - y)^d`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{LinForm, Params, Rational, Scalar};
use crate::relations::{Outcome, QuadraticSigns};

/// Polynomial in `v` variables keyed by full exponent vectors; stored
/// coefficients are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<S> {
    v: usize,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(v: usize) -> Self {
        Poly { v, terms: BTreeMap::new() }
    }

    pub fn constant(v: usize, c: S) -> Self {
        let mut p = Poly::zero(v);
        p.add_term(vec![0; v], c);
        p
    }

    /// `x_i - x_j + c`.
    pub fn difference(v: usize, i: usize, j: usize, c: S) -> Self {
        let mut p = Poly::constant(v, c);
        let mut e = vec![0; v];
        e[i] = 1;
        p.add_term(e.clone(), S::one());
        e[i] = 0;
        e[j] = 1;
        p.add_term(e, -S::one());
        p
    }

    pub fn vars(&self) -> usize {
        self.v
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &S)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, e: &[u32]) -> S {
        self.terms.get(e).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: S) {
        assert_eq!(e.len(), self.v, "exponent length");
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Poly<S>) -> Poly<S> {
        self.axpy(&S::one(), other)
    }

    pub fn sub(&self, other: &Poly<S>) -> Poly<S> {
        self.axpy(&-S::one(), other)
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: &S, other: &Poly<S>) -> Poly<S> {
        assert_eq!(self.v, other.v, "variable count");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone() * s);
        }
        out
    }

    pub fn scaled(&self, s: &S) -> Poly<S> {
        Poly::zero(self.v).axpy(s, self)
    }

    pub fn mul(&self, other: &Poly<S>) -> Poly<S> {
        assert_eq!(self.v, other.v, "variable count");
        let mut out = Poly::zero(self.v);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, x.clone() * y);
            }
        }
        out
    }

    /// Moves variable `k` to position `slots[k]` of a polynomial in `v`
    /// variables.
    pub fn embed(&self, v: usize, slots: &[usize]) -> Poly<S> {
        assert_eq!(slots.len(), self.v, "one slot per variable");
        let mut out = Poly::zero(v);
        for (e, c) in &self.terms {
            let mut f = vec![0; v];
            for (k, &s) in slots.iter().enumerate() {
                f[s] = e[k];
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Exchanges variables `i` and `j`.
    pub fn swapped(&self, i: usize, j: usize) -> Poly<S> {
        let mut out = Poly::zero(self.v);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.swap(i, j);
            out.add_term(f, c.clone());
        }
        out
    }

    /// Invariant under every adjacent transposition, hence under all of
    /// `S_v`.
    pub fn is_symmetric(&self) -> bool {
        (1..self.v).all(|i| self.swapped(i - 1, i) == *self)
    }

    /// Exact quotient by `x_i - x_j`, or `None` when it leaves a remainder.
    pub fn div_difference(&self, i: usize, j: usize) -> Option<Poly<S>> {
        // Synthetic division in x_i with root x_j, one coefficient
        // polynomial (in the other variables) per power of x_i.
        let mut by_power: BTreeMap<u32, Poly<S>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let d = std::mem::take(&mut rest[i]);
            by_power.entry(d).or_insert_with(|| Poly::zero(self.v)).add_term(rest, c.clone());
        }
        let Some(&top) = by_power.keys().next_back() else {
            return Some(Poly::zero(self.v));
        };
        let shift_j = |p: &Poly<S>| {
            let mut out = Poly::zero(p.v);
            for (e, c) in &p.terms {
                let mut f = e.clone();
                f[j] += 1;
                out.add_term(f, c.clone());
            }
            out
        };
        let mut quotient = Poly::zero(self.v);
        let mut carry = Poly::zero(self.v);
        for d in (0..=top).rev() {
            let coeff = by_power.remove(&d).unwrap_or_else(|| Poly::zero(self.v)).add(&carry);
            if d == 0 {
                return coeff.is_zero().then_some(quotient);
            }
            for (e, c) in &coeff.terms {
                let mut f = e.clone();
                f[i] = d - 1;
                quotient.add_term(f, c.clone());
            }
            carry = shift_j(&coeff);
        }
        unreachable!("loop returns at d = 0")
    }

    /// Reads an exponent-coefficient map without checking symmetry.
    pub fn from_wire(w: &SymPolyWire) -> Result<Self, Error> {
        let mut p = Poly::zero(w.v);
        for (k, c) in &w.terms {
            let e: Vec<u32> = if k.is_empty() {
                vec![]
            } else {
                k.split(',')
                    .map(|t| t.trim().parse().map_err(|_| Error::Format(format!("bad exponent key {k:?}"))))
                    .collect::<Result<_, _>>()?
            };
            if e.len() != w.v {
                return Err(Error::Format(format!("key {k:?} has {} exponents, expected {}", e.len(), w.v)));
            }
            let q: Rational = c.parse()?;
            p.add_term(e, S::from_rational(&q)?);
        }
        Ok(p)
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let c = c.to_string();
            let (sign, mag) = match c.strip_prefix('-') {
                Some(m) => ("-", m.to_string()),
                None => (if n == 0 { "" } else { "+" }, c),
            };
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, d)| **d > 0)
                .map(|(k, d)| if *d == 1 { format!("x{}", k + 1) } else { format!("x{}^{d}", k + 1) })
                .collect();
            match (mag.as_str(), mono.is_empty()) {
                (m, true) => write!(f, "{sign}{m}")?,
                ("1", false) => write!(f, "{sign}{}", mono.join("*"))?,
                (m, false) => write!(f, "{sign}{m}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// A symmetric polynomial: an element of the `v`-variable graded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly<S>(Poly<S>);

impl<S: Scalar> SymPoly<S> {
    pub fn new(p: Poly<S>) -> Result<Self, Error> {
        if !p.is_symmetric() {
            return Err(Error::NotSymmetric(p.to_string()));
        }
        Ok(SymPoly(p))
    }

    /// The unit: the constant 1 in zero variables.
    pub fn unit() -> Self {
        SymPoly(Poly::constant(0, S::one()))
    }

    /// `x^r` in one variable.
    pub fn power(r: u32) -> Self {
        let mut p = Poly::zero(1);
        p.add_term(vec![r], S::one());
        SymPoly(p)
    }

    /// Sum of the distinct permutations of `x^exps`.
    pub fn monomial_symmetric(exps: &[u32]) -> Self {
        let mut sorted = exps.to_vec();
        sorted.sort_unstable();
        let mut p = Poly::zero(exps.len());
        let mut perm = sorted.clone();
        loop {
            p.add_term(perm.clone(), S::one());
            if !next_permutation(&mut perm) {
                break;
            }
        }
        SymPoly(p)
    }

    pub fn vars(&self) -> usize {
        self.0.v
    }

    pub fn poly(&self) -> &Poly<S> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Exponent-coefficient map keyed by comma-joined exponents.
    pub fn to_wire(&self) -> SymPolyWire {
        SymPolyWire {
            v: self.0.v,
            terms: self.0.terms.iter().map(|(e, c)| (join_exps(e), c.to_wire())).collect(),
        }
    }

    pub fn from_wire(w: &SymPolyWire) -> Result<Self, Error> {
        SymPoly::new(Poly::from_wire(w)?)
    }
}

impl<S: Scalar> fmt::Display for SymPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn join_exps(e: &[u32]) -> String {
    e.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// `{ "v": 2, "terms": { "2,0": "1", "0,2": "1" } }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymPolyWire {
    pub v: usize,
    pub terms: BTreeMap<String, String>,
}

fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// `fac(x|y) = prod_a (x - y + w_a) * (x - y)^(-d)` with `d` in {0, 1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel<S> {
    pub weights: Vec<S>,
    pub denominator: u32,
}

impl<S: Scalar> Kernel<S> {
    pub fn new(weights: Vec<S>, denominator: u32) -> Result<Self, Error> {
        if denominator > 1 {
            return Err(Error::Format("kernel denominator exponent must be 0 or 1".into()));
        }
        Ok(Kernel { weights, denominator })
    }

    /// `1 / (x - y)`.
    pub fn a1() -> Self {
        Kernel { weights: vec![], denominator: 1 }
    }

    /// `(x - y + c) / (x - y)`.
    pub fn jordan(c: S) -> Self {
        Kernel { weights: vec![c], denominator: 1 }
    }

    /// `prod_i (x - y + hbar_i) / (x - y)`.
    pub fn c3(p: &Params<S>) -> Self {
        Kernel { weights: p.hbar().to_vec(), denominator: 1 }
    }

    /// `fac(z|x)` as a function of `z` for fixed `x`.
    pub fn fac_left(&self, x: &S) -> LinForm<S> {
        let mut fs: Vec<(S, i32)> = self.weights.iter().map(|w| (x.clone() - w, 1)).collect();
        fs.push((x.clone(), -(self.denominator as i32)));
        LinForm::new(S::one(), fs)
    }

    /// `fac(x|z)` as a function of `z` for fixed `x`.
    pub fn fac_right(&self, x: &S) -> LinForm<S> {
        // (x - z + w) = -(z - x - w), (x - z)^-1 = -(z - x)^-1
        let flips = self.weights.len() as i64 - self.denominator as i64;
        let c = if flips.rem_euclid(2) == 1 { -S::one() } else { S::one() };
        let mut fs: Vec<(S, i32)> = self.weights.iter().map(|w| (x.clone() + w, 1)).collect();
        fs.push((x.clone(), -(self.denominator as i32)));
        LinForm::new(c, fs)
    }

    /// `fac(z|x) / fac(x|z)`, the factor by which `psi(z)` conjugates a
    /// one-variable element.
    pub fn conjugation_ratio(&self, x: &S) -> Result<LinForm<S>, Error> {
        Ok(self.fac_left(x).div(&self.fac_right(x))?)
    }

    fn numerator(&self, v: usize, a: usize, b: usize) -> Poly<S> {
        self.weights
            .iter()
            .fold(Poly::constant(v, S::one()), |acc, w| acc.mul(&Poly::difference(v, a, b, w.clone())))
    }
}

/// All increasing `k`-subsets of `0..n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Shuffle product `f * g`: the sum over `(v1, v2)`-shuffles of
/// `f(x_S) g(x_T) prod_{a in S, b in T} fac(x_a|x_b)`.
///
/// With a denominator the terms are brought over the Vandermonde product,
/// summed, and divided back exactly; a remainder is an error.
pub fn shuffle_mul<S: Scalar>(f: &SymPoly<S>, g: &SymPoly<S>, kernel: &Kernel<S>) -> Result<SymPoly<S>, Error> {
    let (v1, v2) = (f.vars(), g.vars());
    let v = v1 + v2;
    let terms: Vec<Poly<S>> = subsets(v, v1)
        .into_par_iter()
        .map(|s| {
            let t: Vec<usize> = (0..v).filter(|i| !s.contains(i)).collect();
            let mut term = f.0.embed(v, &s).mul(&g.0.embed(v, &t));
            let mut odd = false;
            for &a in &s {
                for &b in &t {
                    term = term.mul(&kernel.numerator(v, a, b));
                    odd ^= a > b;
                }
            }
            if kernel.denominator == 1 {
                for part in [&s, &t] {
                    for (x, &i) in part.iter().enumerate() {
                        for &j in &part[x + 1..] {
                            term = term.mul(&Poly::difference(v, i, j, S::zero()));
                        }
                    }
                }
                if odd {
                    term = term.scaled(&-S::one());
                }
            }
            term
        })
        .collect();
    let mut total = terms.iter().fold(Poly::zero(v), |acc, t| acc.add(t));
    if kernel.denominator == 1 {
        for i in 0..v {
            for j in i + 1..v {
                total = total.div_difference(i, j).ok_or_else(|| {
                    Error::DenominatorNotCancelled(format!("x{} - x{} does not divide the numerator", i + 1, j + 1))
                })?;
            }
        }
    }
    SymPoly::new(total)
}

/// Inputs must be symmetric before they are multiplied.
pub fn shuffle_mul_checked<S: Scalar>(f: &Poly<S>, g: &Poly<S>, kernel: &Kernel<S>) -> Result<SymPoly<S>, Error> {
    shuffle_mul(&SymPoly::new(f.clone())?, &SymPoly::new(g.clone())?, kernel)
}

fn commutator<S: Scalar>(a: &SymPoly<S>, b: &SymPoly<S>, k: &Kernel<S>) -> Result<Poly<S>, Error> {
    Ok(shuffle_mul(a, b, k)?.0.sub(&shuffle_mul(b, a, k)?.0))
}

fn anticommutator<S: Scalar>(a: &SymPoly<S>, b: &SymPoly<S>, k: &Kernel<S>) -> Result<Poly<S>, Error> {
    Ok(shuffle_mul(a, b, k)?.0.add(&shuffle_mul(b, a, k)?.0))
}

fn record_poly<S: Scalar>(out: &mut Outcome<S>, p: &Poly<S>, what: impl Fn() -> String) {
    out.domain += 1;
    for (e, c) in p.terms() {
        out.record(c.clone(), || format!("{} coefficient of [{}]", what(), join_exps(e)));
    }
}

/// `x^r1 * x^r2 + x^r2 * x^r1 = 0` under the A1 kernel.
pub fn check_a1_anticomm<S: Scalar>(rmax: u32) -> Result<Outcome<S>, Error> {
    let k = Kernel::a1();
    let mut out = Outcome::new();
    for r1 in 0..=rmax {
        for r2 in 0..=rmax {
            let p = anticommutator(&SymPoly::power(r1), &SymPoly::power(r2), &k)?;
            record_poly(&mut out, &p, || format!("{{x^{r1}, x^{r2}}}"));
        }
    }
    Ok(out)
}

/// The quadratic raising relation with `e_m = x^m`, evaluated with the
/// shuffle product of the C3 kernel, for all `m, n <= imax`.
pub fn check_c3_ee<S: Scalar>(p: &Params<S>, imax: u32, signs: QuadraticSigns) -> Result<Outcome<S>, Error> {
    let k = Kernel::c3(p);
    let e = |i: u32| SymPoly::<S>::power(i);
    let s2 = S::from_i64(signs.sigma2) * &p.sigma2();
    let s3 = S::from_i64(signs.sigma3) * &p.sigma3();
    let mut out = Outcome::new();
    for m in 0..=imax {
        for n in 0..=imax {
            let mut acc = Poly::zero(2);
            acc = acc.axpy(&S::from_i64(3), &commutator(&e(m + 2), &e(n + 1), &k)?);
            acc = acc.axpy(&S::from_i64(-3), &commutator(&e(m + 1), &e(n + 2), &k)?);
            acc = acc.axpy(&S::from_i64(-1), &commutator(&e(m + 3), &e(n), &k)?);
            acc = acc.add(&commutator(&e(m), &e(n + 3), &k)?);
            acc = acc.axpy(&s2, &commutator(&e(m + 1), &e(n), &k)?);
            acc = acc.axpy(&-s2.clone(), &commutator(&e(m), &e(n + 1), &k)?);
            acc = acc.axpy(&s3, &anticommutator(&e(m), &e(n), &k)?);
            record_poly(&mut out, &acc, || format!("ee m={m} n={n}"));
        }
    }
    Ok(out)
}

/// `[x^(p+1), x^q] - [x^p, x^(q+1)] = kappa {x^p, x^q}` under `kernel`.
pub fn check_jordan_ee<S: Scalar>(kernel: &Kernel<S>, kappa: &S, pmax: u32) -> Result<Outcome<S>, Error> {
    let e = |i: u32| SymPoly::<S>::power(i);
    let mut out = Outcome::new();
    for p in 0..=pmax {
        for q in 0..=pmax {
            let lhs = commutator(&e(p + 1), &e(q), kernel)?.sub(&commutator(&e(p), &e(q + 1), kernel)?);
            let acc = lhs.axpy(&-kappa.clone(), &anticommutator(&e(p), &e(q), kernel)?);
            record_poly(&mut out, &acc, || format!("EE p={p} q={q}"));
        }
    }
    Ok(out)
}

fn random_input<S: Scalar, R: Rng>(rng: &mut R, v: usize) -> SymPoly<S> {
    let exps: Vec<u32> = (0..v).map(|_| rng.gen_range(0..=2)).collect();
    SymPoly::monomial_symmetric(&exps)
}

/// `(f * g) * h = f * (g * h)` on random symmetrized monomials with at most
/// four variables in total.
pub fn check_assoc<S: Scalar, R: Rng>(kernel: &Kernel<S>, trials: usize, rng: &mut R) -> Result<Outcome<S>, Error> {
    let mut out = Outcome::new();
    for trial in 0..trials {
        let v1 = rng.gen_range(0..=2);
        let v2 = rng.gen_range(0..=(4 - v1).min(2));
        let v3 = rng.gen_range(0..=(4 - v1 - v2));
        let (f, g, h) = (random_input(rng, v1), random_input(rng, v2), random_input(rng, v3));
        let left = shuffle_mul(&shuffle_mul(&f, &g, kernel)?, &h, kernel)?;
        let right = shuffle_mul(&f, &shuffle_mul(&g, &h, kernel)?, kernel)?;
        record_poly(&mut out, &left.0.sub(&right.0), || format!("trial {trial} ({f}) ({g}) ({h})"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Fp, RationalParams};
    use crate::relations::Status;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;

    fn params() -> Params<Q> {
        Params::from_rational(&RationalParams::parse("3/7", "-11/5", "2/13").unwrap(), 64).unwrap()
    }

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn divides_differences() {
        // (x1 - x2)(x1 + 2 x2) / (x1 - x2)
        let a = Poly::difference(2, 0, 1, q(0));
        let mut b = Poly::zero(2);
        b.add_term(vec![1, 0], q(1));
        b.add_term(vec![0, 1], q(2));
        assert_eq!(a.mul(&b).div_difference(0, 1), Some(b.clone()));
        assert_eq!(b.div_difference(0, 1), None);
        assert_eq!(Poly::<Q>::zero(3).div_difference(0, 2), Some(Poly::zero(3)));
    }

    #[test]
    fn a1_examples() {
        let k = Kernel::a1();
        let prod = shuffle_mul(&SymPoly::<Q>::power(0), &SymPoly::power(1), &k).unwrap();
        assert_eq!(prod.poly(), &Poly::constant(2, q(-1)));
        let sq = shuffle_mul(&SymPoly::<Q>::power(0), &SymPoly::power(0), &k).unwrap();
        assert!(sq.is_zero());
        assert_eq!(check_a1_anticomm::<Q>(5).unwrap().status(), Status::Pass);
    }

    #[test]
    fn c3_one_times_one() {
        let p = params();
        let prod = shuffle_mul(&SymPoly::power(0), &SymPoly::power(0), &Kernel::c3(&p)).unwrap();
        // 2 (x1 - x2)^2 + 2 sigma2
        let d = Poly::difference(2, 0, 1, q(0));
        let expect = d.mul(&d).scaled(&q(2)).add(&Poly::constant(2, q(2) * &p.sigma2()));
        assert_eq!(prod.poly(), &expect);
    }

    #[test]
    fn unit_is_neutral() {
        let p = params();
        let f = SymPoly::<Q>::monomial_symmetric(&[2, 0]);
        for k in [Kernel::a1(), Kernel::jordan(q(3)), Kernel::c3(&p)] {
            assert_eq!(shuffle_mul(&SymPoly::unit(), &f, &k).unwrap(), f);
            assert_eq!(shuffle_mul(&f, &SymPoly::unit(), &k).unwrap(), f);
        }
    }

    #[test]
    fn asymmetric_input_rejected() {
        let mut f = Poly::<Q>::zero(2);
        f.add_term(vec![1, 0], q(1));
        let g = Poly::constant(1, q(1));
        assert!(matches!(shuffle_mul_checked(&f, &g, &Kernel::a1()), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn c3_quadratic_relation() {
        let p = params();
        assert_eq!(check_c3_ee(&p, 2, QuadraticSigns::EE).unwrap().status(), Status::Pass);
        let flipped = QuadraticSigns { sigma3: -QuadraticSigns::EE.sigma3, ..QuadraticSigns::EE };
        assert_eq!(check_c3_ee(&p, 1, flipped).unwrap().status(), Status::Fail);
        assert_eq!(check_c3_ee(&p, 1, QuadraticSigns::EE_PRINTED).unwrap().status(), Status::Fail);
    }

    #[test]
    fn jordan_relation_sign() {
        let c = Q::new(5, 3).unwrap();
        let k = Kernel::jordan(c.clone());
        assert_eq!(check_jordan_ee(&k, &c, 2).unwrap().status(), Status::Pass);
        assert_eq!(check_jordan_ee(&k, &-c.clone(), 1).unwrap().status(), Status::Fail);
    }

    #[test]
    fn associativity() {
        let p = params();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in [Kernel::a1(), Kernel::jordan(q(2)), Kernel::c3(&p)] {
            assert_eq!(check_assoc(&k, 10, &mut rng).unwrap().status(), Status::Pass);
        }
    }

    #[test]
    fn conjugation_ratios() {
        let p = params();
        let x = Q::new(4, 9).unwrap();
        let a1 = Kernel::<Q>::a1().conjugation_ratio(&x).unwrap();
        assert_eq!(a1, LinForm::constant(q(-1)));
        let c3 = Kernel::c3(&p).conjugation_ratio(&x).unwrap();
        let mut fs = Vec::new();
        for h in p.hbar() {
            fs.push((x.clone() - &h, 1));
            fs.push((x.clone() + &h, -1));
        }
        assert_eq!(c3, LinForm::new(q(1), fs));
    }

    #[test]
    fn wire_roundtrip() {
        let f = SymPoly::<Q>::monomial_symmetric(&[0, 2]);
        let w = f.to_wire();
        assert_eq!(w.terms.keys().cloned().collect::<Vec<_>>(), vec!["0,2", "2,0"]);
        assert_eq!(SymPoly::<Q>::from_wire(&w).unwrap(), f);
        let fp = SymPoly::<Fp>::from_wire(&w).unwrap();
        assert_eq!(fp.vars(), 2);
    }
}
