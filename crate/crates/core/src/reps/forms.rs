//! The rational functions attached to a fixed point: the raising integrand,
//! the lowering product, the diagonal series `h(z)` and its `psi` part.

use crate::exact::{LinForm, Params, Scalar};
use crate::partitions3d::Partition3D;
use crate::pyramid::PyramidPartition;

use super::basis::{FixedPointBasis, Label, Site};

fn sign<S: Scalar>(odd: bool) -> S {
    if odd {
        -S::one()
    } else {
        S::one()
    }
}

fn box_weights<S: Scalar>(l: &Partition3D, p: &Params<S>) -> Vec<S> {
    l.boxes().iter().map(|b| b.weight(p)).collect()
}

/// `(z - chi - (i-1) t)` for `i = 1..=count`.
fn framing_roots<S: Scalar>(p: &Params<S>, count: u32) -> impl Iterator<Item = S> + '_ {
    (0..count).map(move |i| p.chi.clone() + S::from_i64(i as i64) * p.t())
}

fn c3_integrand<S: Scalar>(l: &Partition3D, p: &Params<S>) -> LinForm<S> {
    let mut fs = vec![(p.chi.clone(), -1)];
    for x in box_weights(l, p) {
        fs.push((x.clone(), 1));
        for hb in p.hbar() {
            fs.push((x.clone() + &hb, -1));
        }
    }
    LinForm::new(S::one(), fs)
}

fn conifold_integrand<S: Scalar>(pi: &PyramidPartition, p: &Params<S>) -> LinForm<S> {
    let mut fs = Vec::new();
    for b in pi.blacks() {
        let x = b.weight(p);
        fs.push((x.clone() + p.t(), -1));
        fs.push((x, 1));
    }
    for w in pi.whites() {
        let x = w.weight(p);
        fs.push((x.clone() + p.q(), -1));
        fs.push((x + p.h(), -1));
    }
    fs.extend(framing_roots(p, pi.m).map(|r| (r, -1)));
    LinForm::new(sign(pi.black_only_count() % 2 == 1), fs)
}

/// The integrand whose residue at an addible site gives `<l| e_i |l + site>`
/// (before the factor `z^i`).
pub fn integrand_e<S: Scalar>(label: &Label, p: &Params<S>) -> LinForm<S> {
    match label {
        Label::Plane(l) => c3_integrand(l, p),
        Label::Pyramid(pi) => conifold_integrand(pi, p),
    }
}

fn c3_lowering<S: Scalar>(l: &Partition3D, p: &Params<S>) -> LinForm<S> {
    let mut fs = Vec::new();
    for x in box_weights(l, p) {
        for hb in p.hbar() {
            fs.push((x.clone() - &hb, 1));
        }
        fs.push((x, -1));
    }
    LinForm::new(S::one(), fs)
}

fn conifold_lowering<S: Scalar>(pi: &PyramidPartition, p: &Params<S>) -> LinForm<S> {
    let mut fs = Vec::new();
    for b in pi.blacks() {
        let x = b.weight(p);
        fs.push((x.clone() - p.q(), 1));
        fs.push((x - p.h(), 1));
    }
    for w in pi.whites() {
        let x = w.weight(p);
        fs.push((x.clone() - p.t(), 1));
        fs.push((x, -1));
    }
    // prod_{i=1}^{m+1} (-z + chi + (i-1) t)
    fs.extend(framing_roots(p, pi.m + 1).map(|r| (r, 1)));
    LinForm::new(sign(pi.m.is_multiple_of(2)), fs)
}

/// The product whose value at a site gives `<l + site| f_j |l>` (before the
/// factor `z^j`); `label` is the smaller configuration.
pub fn lowering_product<S: Scalar>(label: &Label, p: &Params<S>) -> LinForm<S> {
    match label {
        Label::Plane(l) => c3_lowering(l, p),
        Label::Pyramid(pi) => conifold_lowering(pi, p),
    }
}

/// `prod_{hbar} (z - x + hbar) / (z - x - hbar)` over all three weights.
fn six_factor<S: Scalar>(x: &S, shifts: &[S; 3], fs: &mut Vec<(S, i32)>) {
    for s in shifts {
        fs.push((x.clone() - s, 1));
        fs.push((x.clone() + s, -1));
    }
}

/// Eigenvalue of `psi(z)`: the product over boxes of the six-factor ratio,
/// or for pyramids the product over stones left after splitting off the
/// framing factor and the global sign of `h(z)`.
pub fn psi_rat<S: Scalar>(label: &Label, p: &Params<S>) -> LinForm<S> {
    let hb = p.hbar();
    let mut fs = Vec::new();
    match label {
        Label::Plane(l) => {
            for x in box_weights(l, p) {
                six_factor(&x, &hb, &mut fs);
            }
        }
        Label::Pyramid(pi) => {
            for b in pi.blacks() {
                let x = b.weight(p);
                let paired = b.partner(pi.m).is_some_and(|w| pi.contains(&w));
                if paired {
                    six_factor(&x, &hb, &mut fs);
                } else {
                    fs.push((x.clone(), 1));
                    fs.push((x.clone() - p.q(), 1));
                    fs.push((x.clone() - p.h(), 1));
                    fs.push((x + p.t(), -1));
                }
            }
        }
    }
    LinForm::new(S::one(), fs)
}

/// The factor `h(z) / psi(z)`: `1/(z - chi)` for plane partitions and
/// `(-1)^(black only) (-1)^(m+1) (z - chi - m t)` for pyramids.
pub fn framing_factor<S: Scalar>(label: &Label, p: &Params<S>) -> LinForm<S> {
    match label {
        Label::Plane(_) => LinForm::linear(p.chi.clone(), -1),
        Label::Pyramid(pi) => {
            let root = p.chi.clone() + S::from_i64(pi.m as i64) * p.t();
            let odd = (pi.black_only_count() + pi.m as usize + 1) % 2 == 1;
            LinForm::new(sign(odd), [(root, 1)])
        }
    }
}

/// The eigenvalue rational function `h(z)` on a fixed point.
pub fn h_rat<S: Scalar>(label: &Label, p: &Params<S>) -> LinForm<S> {
    framing_factor(label, p).mul(&psi_rat(label, p))
}

/// `h(z)` as the product of the raising integrand and the lowering product,
/// stone by stone; equal to [`h_rat`] as a rational function.
pub fn h_product<S: Scalar>(label: &Label, p: &Params<S>) -> LinForm<S> {
    integrand_e(label, p).mul(&lowering_product(label, p))
}

/// `<label| e_i |label + site>`.
pub fn matcoef_e<S: Scalar>(
    basis: &FixedPointBasis,
    label: &Label,
    site: &Site,
    i: u32,
    p: &Params<S>,
) -> Result<S, crate::Error> {
    debug_assert!(basis.addible(label).contains(site));
    Ok(integrand_e(label, p).residue_at(&site.weight(p), i)?)
}

/// `<label + site| f_j |label>`.
pub fn matcoef_f<S: Scalar>(
    basis: &FixedPointBasis,
    label: &Label,
    site: &Site,
    j: u32,
    p: &Params<S>,
) -> Result<S, crate::Error> {
    debug_assert!(basis.addible(label).contains(site));
    let w = site.weight(p);
    Ok(lowering_product(label, p).eval(&w)? * &w.pow(j as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Rational, RationalParams};
    use crate::partitions3d::Box3;
    use crate::pyramid::Stone;

    fn params() -> Params<Rational> {
        Params::from_rational(&RationalParams::parse("3/7", "-11/5", "2/13").unwrap(), 64).unwrap()
    }

    fn plane(boxes: &[[u32; 3]]) -> Label {
        Label::Plane(Partition3D::from_boxes(boxes.iter().map(|b| Box3::from(*b))).unwrap())
    }

    #[test]
    fn c3_integrand_examples() {
        let p = params();
        assert_eq!(integrand_e(&plane(&[]), &p), LinForm::linear(p.chi.clone(), -1));
        let one = integrand_e(&plane(&[[0, 0, 0]]), &p);
        let expect = LinForm::new(
            Rational::one(),
            p.hbar().into_iter().map(|h| (p.chi.clone() + &h, -1)),
        );
        assert_eq!(one, expect);
    }

    #[test]
    fn c3_coefficients() {
        let p = params();
        let b = FixedPointBasis::c3(2).unwrap();
        let empty = plane(&[]);
        let corner = Site::Box(Box3::new(0, 0, 0));
        for i in 0..4 {
            assert_eq!(matcoef_e(&b, &empty, &corner, i, &p).unwrap(), p.chi.pow(i as u64));
        }
        assert_eq!(matcoef_f(&b, &empty, &corner, 0, &p).unwrap(), Rational::one());
        let one = plane(&[[0, 0, 0]]);
        let site = Site::Box(Box3::new(1, 0, 0));
        let [h1, h2, h3] = p.hbar();
        let e = matcoef_e(&b, &one, &site, 0, &p).unwrap();
        let expect = ((h1.clone() - &h2) * &(h1.clone() - &h3)).inv().unwrap();
        assert_eq!(e, expect);
        let f = matcoef_f(&b, &one, &site, 0, &p).unwrap();
        assert_eq!(f, Rational::from_i64(2) * &h2 * &h3);
    }

    #[test]
    fn conifold_integrand_example() {
        let p = params();
        let pi = Label::Pyramid(
            crate::pyramid::build_erc(2, 5).unwrap().partition([Stone::black(0, 0, 0)]).unwrap(),
        );
        let chi = p.chi.clone();
        let ct = chi.clone() + p.t();
        // -(z - chi)/(z - chi - t) * 1/((z - chi)(z - chi - t))
        let expect = LinForm::new(-Rational::one(), [(chi.clone(), 1), (ct.clone(), -1), (chi, -1), (ct, -1)]);
        assert_eq!(integrand_e(&pi, &p), expect);
    }

    #[test]
    fn h_forms_agree() {
        let p = params();
        let b = FixedPointBasis::c3(4).unwrap();
        for l in b.labels() {
            assert_eq!(h_rat(l, &p), h_product(l, &p));
        }
        for m in 1..=3 {
            let b = FixedPointBasis::conifold(m, 1, 8).unwrap();
            for l in b.labels() {
                assert_eq!(h_rat(l, &p), h_product(l, &p), "{l:?}");
            }
        }
    }

    #[test]
    fn conifold_m1_vacuum() {
        let p = params();
        let empty = Label::Pyramid(PyramidPartition::empty(1));
        assert_eq!(h_rat(&empty, &p), LinForm::linear(p.chi.clone() + p.t(), 1));
    }
}
