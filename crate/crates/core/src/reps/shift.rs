use std::collections::BTreeSet;

use crate::error::Error;
use crate::exact::{LinForm, Params, Scalar};

use super::basis::{FixedPointBasis, Label};
use super::forms::{h_product, psi_rat};

/// Shift `l` and shift point `z1` of the Yangian acting on a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftReport<S> {
    pub l: i64,
    pub z1: Option<S>,
    /// Degrees of `h(z)` itself over the basis; they differ from `l` when
    /// `psi(z)` does not tend to a constant at infinity.
    pub raw_degrees: BTreeSet<i64>,
}

/// `h(z) / psi(z)` on one fixed point, with `h` taken as the product of the
/// raising integrand and the lowering product.
pub fn residual_factor<S: Scalar>(label: &Label, p: &Params<S>) -> Result<LinForm<S>, Error> {
    Ok(h_product(label, p).div(&psi_rat(label, p))?)
}

fn split<S: Scalar>(r: &LinForm<S>) -> Option<(i64, Option<S>)> {
    match r.factors() {
        [] => Some((0, None)),
        [(root, e)] if e.abs() == 1 => Some((*e as i64, Some(root.clone()))),
        _ => None,
    }
}

pub fn detect_shift<S: Scalar>(basis: &FixedPointBasis, p: &Params<S>) -> Result<ShiftReport<S>, Error> {
    let mut found: Option<(i64, Option<S>)> = None;
    let mut raw_degrees = BTreeSet::new();
    for lab in basis.labels() {
        let h = h_product(lab, p);
        raw_degrees.insert(h.degree().unwrap_or(i64::MIN));
        let r = residual_factor(lab, p)?;
        let here = split(&r)
            .ok_or_else(|| Error::InconsistentShift(format!("h/psi = {r} is not a single linear factor on {lab:?}")))?;
        match &found {
            None => found = Some(here),
            Some(prev) if *prev == here => {}
            Some(prev) => {
                return Err(Error::InconsistentShift(format!(
                    "l = {} on one element and {} on {lab:?}",
                    prev.0, here.0
                )))
            }
        }
    }
    let (l, z1) = found.ok_or_else(|| Error::InvalidLabel("empty basis".into()))?;
    Ok(ShiftReport { l, z1, raw_degrees })
}
