//! Fixed-point representations: the bases, the raising and lowering
//! operators, the diagonal eigenvalue functions and shift detection.

mod basis;
mod forms;
mod operator;
mod shift;

use rayon::prelude::*;

pub use basis::{FixedPointBasis, Geometry, Label, Site};
pub use forms::{
    framing_factor, h_product, h_rat, integrand_e, lowering_product, matcoef_e, matcoef_f, psi_rat,
};
pub use operator::{word_block, Block, OperatorFile, OperatorLevel, SparseOperator};
pub use shift::{detect_shift, residual_factor, ShiftReport};

use crate::error::Error;
use crate::exact::{Params, Scalar};

fn level_sizes(basis: &FixedPointBasis) -> Vec<usize> {
    basis.levels().iter().map(Vec::len).collect()
}

type Column<S> = Vec<(usize, usize, Vec<S>)>;

/// Assembles one operator per index `0..=max_index` in a single pass over the
/// basis. `coef` returns the coefficients for all indices of one transition.
fn assemble<S, F>(
    basis: &FixedPointBasis,
    shift: i32,
    max_index: u32,
    transitions: impl Fn(&Label) -> Vec<Site> + Sync,
    coef: F,
) -> Result<Vec<SparseOperator<S>>, Error>
where
    S: Scalar,
    F: Fn(&Label, &Site) -> Result<Vec<S>, Error> + Sync,
{
    let sizes = level_sizes(basis);
    let mut ops: Vec<SparseOperator<S>> =
        (0..=max_index).map(|_| SparseOperator::zero(shift, &sizes)).collect();
    for (n, level) in basis.levels().iter().enumerate() {
        let target = n as i64 + shift as i64;
        if target < 0 || target as usize >= sizes.len() {
            continue;
        }
        let columns: Vec<Column<S>> = level
            .par_iter()
            .enumerate()
            .map(|(s, lab)| {
                transitions(lab)
                    .into_iter()
                    .map(|site| {
                        let other = if shift > 0 { basis.add(lab, &site) } else { basis.remove(lab, &site) };
                        let (lv, t) = basis
                            .position(&other)
                            .ok_or_else(|| Error::InvalidLabel(format!("{other:?} missing from basis")))?;
                        debug_assert_eq!(lv as i64, target);
                        Ok((t, s, coef(lab, &site)?))
                    })
                    .collect::<Result<Column<S>, Error>>()
            })
            .collect::<Result<_, Error>>()?;
        for (t, s, vals) in columns.into_iter().flatten() {
            for (i, v) in vals.into_iter().enumerate() {
                ops[i].block_mut(n).expect("target in range").add_at(t, s, v);
            }
        }
    }
    Ok(ops)
}

/// `e_0, ..., e_imax`, each raising the level by one.
pub fn build_e_family<S: Scalar>(
    basis: &FixedPointBasis,
    p: &Params<S>,
    imax: u32,
) -> Result<Vec<SparseOperator<S>>, Error> {
    for lab in basis.labels() {
        basis.check_distinct_weights(lab, p)?;
    }
    assemble(basis, 1, imax, |l| basis.addible(l), |lab, site| {
        let form = integrand_e(lab, p);
        let w = site.weight(p);
        (0..=imax).map(|i| Ok(form.residue_at(&w, i)?)).collect()
    })
}

/// `f_0, ..., f_jmax`, each lowering the level by one.
pub fn build_f_family<S: Scalar>(
    basis: &FixedPointBasis,
    p: &Params<S>,
    jmax: u32,
) -> Result<Vec<SparseOperator<S>>, Error> {
    for lab in basis.labels() {
        basis.check_distinct_weights(lab, p)?;
    }
    assemble(basis, -1, jmax, |l| basis.removable(l), |lab, site| {
        let smaller = basis.remove(lab, site);
        let w = site.weight(p);
        let base = lowering_product(&smaller, p).eval(&w)?;
        Ok((0..=jmax).map(|j| base.clone() * &w.pow(j as u64)).collect())
    })
}

pub fn build_e<S: Scalar>(basis: &FixedPointBasis, p: &Params<S>, i: u32) -> Result<SparseOperator<S>, Error> {
    Ok(build_e_family(basis, p, i)?.pop().expect("nonempty family"))
}

pub fn build_f<S: Scalar>(basis: &FixedPointBasis, p: &Params<S>, j: u32) -> Result<SparseOperator<S>, Error> {
    Ok(build_f_family(basis, p, j)?.pop().expect("nonempty family"))
}

/// Raising and lowering operators of one basis under one specialization.
#[derive(Clone, Debug)]
pub struct Representation<S> {
    pub params: Params<S>,
    pub e: Vec<SparseOperator<S>>,
    pub f: Vec<SparseOperator<S>>,
    pub sizes: Vec<usize>,
}

impl<S: Scalar> Representation<S> {
    pub fn build(basis: &FixedPointBasis, p: &Params<S>, max_index: u32) -> Result<Self, Error> {
        Ok(Representation {
            params: p.clone(),
            e: build_e_family(basis, p, max_index)?,
            f: build_f_family(basis, p, max_index)?,
            sizes: level_sizes(basis),
        })
    }

    pub fn max_index(&self) -> u32 {
        self.e.len() as u32 - 1
    }
}
