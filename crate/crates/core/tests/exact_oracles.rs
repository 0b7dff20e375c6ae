//! Residues and expansions of factored forms against independent oracles.

use proptest::prelude::*;
use yangian_core::exact::{Center, Fp, LinForm, Rational, Scalar};

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn form(c: i64, factors: &[(i64, i32)]) -> LinForm<Rational> {
    LinForm::new(q(c), factors.iter().map(|&(r, e)| (q(r), e)))
}

/// Solves `a x = b` over the rationals by Gaussian elimination.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Vec<Rational> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("nonsingular system");
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].inv().unwrap();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() * &inv;
            let pivot_row = a[col].clone();
            for (x, p) in a[r].iter_mut().zip(pivot_row).skip(col) {
                *x = x.clone() - &(p * &f);
            }
            let v = b[col].clone() * &f;
            b[r] = b[r].clone() - &v;
        }
    }
    (0..n).map(|i| b[i].clone() * &a[i][i].inv().unwrap()).collect()
}

/// Partial-fraction coefficient of `(z - a)^-1` in `z^power F`, found by
/// matching `N(z) = P(z) D(z) + sum c_{b,j} D(z) / (z - b)^j` at sample points.
fn residue_by_partial_fractions(f: &LinForm<Rational>, a: &Rational, power: u32) -> Rational {
    let g = f.mul(&LinForm::monomial(power as i32));
    if g.is_zero() {
        return q(0);
    }
    let poles = g.poles();
    let deg_d: i64 = poles.iter().map(|(_, m)| *m as i64).sum();
    let deg_n: i64 = g.factors().iter().filter(|f| f.1 > 0).map(|f| f.1 as i64).sum();
    let poly_terms = (deg_n - deg_d + 1).max(0) as usize;
    let mut unknowns: Vec<(Option<usize>, u32)> = (0..poly_terms).map(|k| (None, k as u32)).collect();
    for (i, (_, m)) in poles.iter().enumerate() {
        for j in 1..=*m {
            unknowns.push((Some(i), j));
        }
    }
    let n = unknowns.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut z0 = 100i64;
    while rows.len() < n {
        z0 += 1;
        let z = q(z0);
        if poles.iter().any(|(b, _)| *b == z) {
            continue;
        }
        let d_at = |skip: Option<(usize, u32)>| -> Rational {
            let mut acc = q(1);
            for (i, (b, m)) in poles.iter().enumerate() {
                let e = match skip {
                    Some((k, j)) if k == i => *m - j,
                    _ => *m,
                };
                acc = acc * &(z.clone() - b).pow(e as u64);
            }
            acc
        };
        let mut numer = g.lead().clone();
        for (r, e) in g.factors() {
            if *e > 0 {
                numer = numer * &(z.clone() - r).pow(*e as u64);
            }
        }
        let row = unknowns
            .iter()
            .map(|(pole, j)| match pole {
                None => z.pow(*j as u64) * &d_at(None),
                Some(i) => d_at(Some((*i, *j))),
            })
            .collect();
        rows.push(row);
        rhs.push(numer);
    }
    let sol = solve(rows, rhs);
    unknowns
        .iter()
        .zip(sol)
        .find(|((pole, j), _)| *j == 1 && pole.is_some_and(|i| poles[i].0 == *a))
        .map(|(_, c)| c)
        .unwrap_or_else(|| q(0))
}

#[test]
fn double_pole_matches_partial_fractions() {
    let f = form(1, &[(0, 1), (2, -2), (1, -1)]);
    let oracle = residue_by_partial_fractions(&f, &q(2), 0);
    assert_eq!(oracle, q(-1));
    assert_eq!(f.residue_at(&q(2), 0).unwrap(), oracle);
}

#[test]
fn infinity_residue_is_minus_the_finite_sum() {
    let f = form(1, &[(1, -1), (2, -1), (-1, 1)]);
    let finite: Rational = f.poles().iter().map(|(a, _)| f.residue_at(a, 0).unwrap()).fold(q(0), |s, r| s + &r);
    assert_eq!(f.residue_at_infinity(0), -finite.clone());
    assert_eq!(finite, q(1));
}

#[test]
fn expansion_at_infinity_is_a_product_of_geometric_series() {
    let f = form(1, &[(1, -1), (2, -1)]);
    let s = f.expand(&Center::Infinity, 3, 0).unwrap();
    // 1/((z-1)(z-2)) = sum_n (2^(n-1) - 1) z^-n for n >= 1
    let oracle: Vec<Rational> = (1..=3).map(|n| q((1 << (n - 1)) - 1)).collect();
    assert_eq!(s.coeffs, oracle);
}

fn arb_form() -> impl Strategy<Value = LinForm<Rational>> {
    (
        (-5i64..=5).prop_filter("nonzero", |c| *c != 0),
        1i64..=4,
        prop::collection::vec((-6i64..=6, -3i32..=3), 0..5),
    )
        .prop_map(|(n, d, fs)| {
            LinForm::new(Rational::new(n, d).unwrap(), fs.into_iter().map(|(r, e)| (q(r), e)))
        })
}

fn to_fp(f: &LinForm<Rational>) -> LinForm<Fp> {
    f.try_map(Fp::from_rational).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn residue_theorem(f in arb_form(), k in 0u32..=4) {
        let mut total = f.residue_at_infinity(k);
        for (a, _) in f.poles() {
            total = total + &f.residue_at(&a, k).unwrap();
        }
        prop_assert!(total.is_zero());
    }

    #[test]
    fn residues_match_partial_fractions(f in arb_form(), k in 0u32..=2) {
        for (a, _) in f.poles() {
            prop_assert_eq!(f.residue_at(&a, k).unwrap(), residue_by_partial_fractions(&f, &a, k));
        }
    }

    #[test]
    fn simple_pole_residue_is_evaluation_of_the_rest(f in arb_form(), k in 0u32..=3) {
        for (a, m) in f.poles() {
            if m != 1 {
                continue;
            }
            let rest = f.mul(&LinForm::linear(a.clone(), 1)).mul(&LinForm::monomial(k as i32));
            prop_assert_eq!(f.residue_at(&a, k).unwrap(), rest.eval(&a).unwrap());
        }
    }

    #[test]
    fn expansion_of_a_product_is_the_product_of_expansions(
        f in arb_form(),
        g in arb_form(),
        at in 7i64..=12,
    ) {
        let k = 5;
        let c = Center::At(q(at));
        let fg = f.mul(&g).expand(&c, k, 0).unwrap();
        let prod = f.expand(&c, k, 0).unwrap().mul(&g.expand(&c, k, 0).unwrap()).unwrap();
        prop_assert_eq!(&fg.coeffs, &prod.coeffs);

        let fg = f.mul(&g).laurent_at_infinity(k);
        let prod = f.laurent_at_infinity(k).mul(&g.laurent_at_infinity(k)).unwrap();
        prop_assert_eq!(fg.valuation, prod.valuation);
        prop_assert_eq!(&fg.coeffs, &prod.coeffs);
    }

    #[test]
    fn prime_field_agrees_with_rationals(f in arb_form(), k in 0u32..=4) {
        let fp = to_fp(&f);
        prop_assert_eq!(Fp::from_rational(&f.residue_at_infinity(k)).unwrap(), fp.residue_at_infinity(k));
        for (a, _) in f.poles() {
            let r = f.residue_at(&a, k).unwrap();
            let r_fp = fp.residue_at(&Fp::from_rational(&a).unwrap(), k).unwrap();
            prop_assert_eq!(Fp::from_rational(&r).unwrap(), r_fp);
        }
        let s = f.expand(&Center::Infinity, 4, 0).unwrap();
        let s_fp = fp.expand(&Center::Infinity, 4, 0).unwrap();
        let mapped: Vec<Fp> = s.coeffs.iter().map(|c| Fp::from_rational(c).unwrap()).collect();
        prop_assert_eq!(mapped, s_fp.coeffs);
    }
}
