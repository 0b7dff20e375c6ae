//! Entry-by-entry verification of the shifted Yangian relations on a
//! truncated fixed-point representation.
//!
//! Truncation: a relation is checked on source level `n` only when every
//! intermediate level of every word stays at or below the top level, and at
//! least one word stays at or above level 0. Words that pass through negative
//! levels are exactly zero; a level on which all words vanish that way
//! carries no content and is outside the domain.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{InfinityConvention, LinForm, Params, RationalParams, Scalar};
use crate::reps::{
    detect_shift, h_rat, psi_rat, word_block, Block, FixedPointBasis, Geometry, Label, Representation,
    Site, SparseOperator,
};

const MAX_DIAGNOSTICS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    EmptyDomain,
}

/// Raw outcome of one check under one specialization.
#[derive(Clone, Debug)]
pub struct Outcome<S> {
    pub domain: usize,
    pub worst: S,
    pub failures: usize,
    pub diagnostics: Vec<String>,
    pub epsilon: Option<i64>,
}

impl<S: Scalar> Outcome<S> {
    pub fn new() -> Self {
        Outcome { domain: 0, worst: S::zero(), failures: 0, diagnostics: vec![], epsilon: None }
    }

    pub fn status(&self) -> Status {
        if self.domain == 0 {
            Status::EmptyDomain
        } else if self.failures == 0 {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Records `value` as a discrepancy unless it is zero.
    pub fn record(&mut self, value: S, what: impl FnOnce() -> String) {
        if value.is_zero() {
            return;
        }
        self.failures += 1;
        if value.dominates(&self.worst) {
            self.worst = value.clone();
        }
        if self.diagnostics.len() < MAX_DIAGNOSTICS {
            self.diagnostics.push(format!("{}: {}", what(), value));
        }
    }

    /// Records every nonzero entry of a block that should vanish.
    fn expect_zero(&mut self, b: &Block<S>, what: impl Fn() -> String) {
        self.domain += 1;
        for (r, c, v) in b.entries() {
            self.record(v.clone(), || format!("{} entry ({r}, {c})", what()));
        }
    }
}

impl<S: Scalar> Default for Outcome<S> {
    fn default() -> Self {
        Outcome::new()
    }
}

/// Signs in front of the `sigma2` and `sigma3` terms of the quadratic
/// relation among raising (or lowering) operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSigns {
    pub sigma2: i64,
    pub sigma3: i64,
}

impl QuadraticSigns {
    /// The relation as derived from the cubic exchange
    /// `prod (u - hbar_i) e(z) e(w) = prod (u + hbar_i) e(w) e(z)`.
    pub const EE: QuadraticSigns = QuadraticSigns { sigma2: -1, sigma3: 1 };
    pub const FF: QuadraticSigns = QuadraticSigns { sigma2: -1, sigma3: -1 };
    /// The signs as printed in the defining relations, kept as a control.
    pub const EE_PRINTED: QuadraticSigns = QuadraticSigns { sigma2: 1, sigma3: 1 };
    pub const FF_PRINTED: QuadraticSigns = QuadraticSigns { sigma2: 1, sigma3: -1 };
}

/// Direction of the one-box `psi` recursion that is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PsiDirection {
    /// `psi(l + x) = psi(l) * prod (z - x + hbar)/(z - x - hbar)`, the
    /// direction implied by the closed-form eigenvalue.
    Eigenvalue,
    /// The inverse factor, as printed with the raising relation.
    Printed,
}

/// One representation under one specialization, ready for checking.
pub struct Checker<'a, S> {
    pub basis: &'a FixedPointBasis,
    pub rep: &'a Representation<S>,
    pub convention: InfinityConvention,
}

type Term<'a, S> = (S, Vec<&'a SparseOperator<S>>);

impl<'a, S: Scalar> Checker<'a, S> {
    pub fn new(basis: &'a FixedPointBasis, rep: &'a Representation<S>) -> Self {
        Checker { basis, rep, convention: InfinityConvention::Standard }
    }

    fn p(&self) -> &Params<S> {
        &self.rep.params
    }

    fn e(&self, i: u32) -> &'a SparseOperator<S> {
        &self.rep.e[i as usize]
    }

    fn f(&self, i: u32) -> &'a SparseOperator<S> {
        &self.rep.f[i as usize]
    }

    fn require(&self, index: u32) {
        assert!(index <= self.rep.max_index(), "operators built only up to index {}", self.rep.max_index());
    }

    /// Linear combination of words on source level `n`, or `None` outside
    /// the truncation.
    fn combo(&self, terms: &[Term<'a, S>], n: usize) -> Option<Block<S>> {
        let stays_nonnegative = |word: &[&SparseOperator<S>]| {
            let mut level = n as i64;
            word.iter().rev().all(|op| {
                level += op.shift as i64;
                level >= 0
            })
        };
        if !terms.iter().any(|(_, w)| stays_nonnegative(w)) {
            return None;
        }
        let mut acc: Option<Block<S>> = None;
        for (c, word) in terms {
            let b = word_block(word, n, &self.rep.sizes)?;
            acc = Some(match acc {
                None => b.scaled(c),
                Some(a) => a.axpy(c, &b),
            });
        }
        acc
    }

    fn commutator(a: &'a SparseOperator<S>, b: &'a SparseOperator<S>, c: S) -> [Term<'a, S>; 2] {
        [(c.clone(), vec![a, b]), (-c, vec![b, a])]
    }

    fn levels(&self) -> std::ops::Range<usize> {
        0..self.rep.sizes.len()
    }

    /// `[e_i, f_j]` on level `n`.
    pub fn ef_block(&self, i: u32, j: u32, n: usize) -> Option<Block<S>> {
        self.combo(&Self::commutator(self.e(i), self.f(j), S::one()), n)
    }

    /// `[e_i, f_j]` is diagonal and depends only on `i + j`.
    pub fn check_ef_diag(&self, imax: u32) -> Outcome<S> {
        self.require(2 * imax);
        let mut out = Outcome::new();
        for i in 0..=imax {
            for j in 0..=imax {
                for n in self.levels() {
                    let Some(c) = self.ef_block(i, j, n) else { continue };
                    out.domain += 1;
                    for (r, col, v) in c.off_diagonal() {
                        out.record(v.clone(), || format!("[e_{i}, f_{j}] level {n} off-diagonal ({r}, {col})"));
                    }
                    let reference = self.ef_block(0, i + j, n).expect("same levels");
                    for (k, (a, b)) in c.diagonal().into_iter().zip(reference.diagonal()).enumerate() {
                        out.record(a - &b, || {
                            format!("[e_{i}, f_{j}] - [e_0, f_{}] level {n} diagonal {k}", i + j)
                        });
                    }
                }
            }
        }
        out
    }

    /// The eigenvalue of `[e_0, f_n]` on every fixed point equals
    /// `eps * Res_{z=inf} z^n h(z)` for one global sign `eps` fixed on the
    /// lowest level.
    pub fn check_ef_matches_h(&self, nmax: u32) -> Result<Outcome<S>, Error> {
        self.require(nmax);
        let mut out = Outcome::new();
        let mut eps: Option<S> = None;
        let mut agree_other_sign = 0usize;
        for n in self.levels() {
            for k in 0..=nmax {
                let Some(c) = self.ef_block(0, k, n) else { continue };
                out.domain += 1;
                for (idx, lab) in self.basis.level(n).iter().enumerate() {
                    let lhs = c.get(idx, idx);
                    let rhs = h_rat(lab, self.p()).residue_at_infinity_with(k, self.convention);
                    if eps.is_none() && !rhs.is_zero() {
                        let e = lhs.div(&rhs)?;
                        if !(e.is_one() || (-e.clone()).is_one()) {
                            return Err(Error::SignInconsistent(format!(
                                "ratio {e} on {lab:?} at n = {k} is not a sign"
                            )));
                        }
                        eps = Some(e);
                    }
                    let Some(e) = &eps else { continue };
                    let diff = lhs.clone() - &(e.clone() * &rhs);
                    if !diff.is_zero() && (lhs.clone() + &(e.clone() * &rhs)).is_zero() {
                        agree_other_sign += 1;
                    }
                    out.record(diff, || format!("[e_0, f_{k}] on {lab:?}"));
                }
            }
        }
        if out.failures > 0 && agree_other_sign == out.failures {
            return Err(Error::SignInconsistent(format!(
                "{agree_other_sign} eigenvalues match only with the opposite sign"
            )));
        }
        out.epsilon = eps.map(|e| if e.is_one() { 1 } else { -1 });
        Ok(out)
    }

    fn quadratic(&self, ops: &'a [SparseOperator<S>], m: u32, k: u32, signs: QuadraticSigns, n: usize) -> Option<Block<S>> {
        let p = self.p();
        let s2 = S::from_i64(signs.sigma2) * &p.sigma2();
        let s3 = S::from_i64(signs.sigma3) * &p.sigma3();
        let o = |i: u32| &ops[i as usize];
        let mut terms: Vec<Term<'a, S>> = Vec::new();
        terms.extend(Self::commutator(o(m + 2), o(k + 1), S::from_i64(3)));
        terms.extend(Self::commutator(o(m + 1), o(k + 2), S::from_i64(-3)));
        terms.extend(Self::commutator(o(m + 3), o(k), S::from_i64(-1)));
        terms.extend(Self::commutator(o(m), o(k + 3), S::one()));
        terms.extend(Self::commutator(o(m + 1), o(k), s2.clone()));
        terms.extend(Self::commutator(o(m), o(k + 1), -s2));
        terms.push((s3.clone(), vec![o(m), o(k)]));
        terms.push((s3, vec![o(k), o(m)]));
        self.combo(&terms, n)
    }

    fn check_quadratic(&self, raising: bool, imax: u32, signs: QuadraticSigns) -> Outcome<S> {
        self.require(imax + 3);
        let (ops, name) = if raising { (&self.rep.e, "e") } else { (&self.rep.f, "f") };
        let mut out = Outcome::new();
        for m in 0..=imax {
            for k in 0..=imax {
                for n in self.levels() {
                    if let Some(b) = self.quadratic(ops, m, k, signs, n) {
                        out.expect_zero(&b, || format!("{name}{name} relation m={m} n={k} level {n}"));
                    }
                }
            }
        }
        out
    }

    pub fn check_ee(&self, imax: u32, signs: QuadraticSigns) -> Outcome<S> {
        self.check_quadratic(true, imax, signs)
    }

    pub fn check_ff(&self, imax: u32, signs: QuadraticSigns) -> Outcome<S> {
        self.check_quadratic(false, imax, signs)
    }

    fn check_serre(&self, raising: bool, imax: u32) -> Outcome<S> {
        self.require(imax + 1);
        let (ops, name) = if raising { (&self.rep.e, "e") } else { (&self.rep.f, "f") };
        let o = |i: u32| &ops[i as usize];
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = Outcome::new();
        for i1 in 0..=imax {
            for i2 in 0..=imax {
                for i3 in 0..=imax {
                    let idx = [i1, i2, i3];
                    let mut terms: Vec<Term<'a, S>> = Vec::new();
                    for p in PERMS {
                        let (a, b, c) = (o(idx[p[0]]), o(idx[p[1]]), o(idx[p[2]] + 1));
                        // [a, [b, c]] = abc - acb - bca + cba
                        terms.push((S::one(), vec![a, b, c]));
                        terms.push((-S::one(), vec![a, c, b]));
                        terms.push((-S::one(), vec![b, c, a]));
                        terms.push((S::one(), vec![c, b, a]));
                    }
                    for n in self.levels() {
                        if let Some(b) = self.combo(&terms, n) {
                            out.expect_zero(&b, || format!("{name} cubic ({i1}, {i2}, {i3}) level {n}"));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn check_serre_e(&self, imax: u32) -> Outcome<S> {
        self.check_serre(true, imax)
    }

    pub fn check_serre_f(&self, imax: u32) -> Outcome<S> {
        self.check_serre(false, imax)
    }

    /// For every nonzero raising entry `<l| e_i |l + x>`, `psi(l + x)` equals
    /// `psi(l)` times the one-site factor, as rational functions.
    pub fn check_psi_e_compat(&self, direction: PsiDirection) -> Outcome<S> {
        let p = self.p();
        let mut out = Outcome::new();
        for (n, level) in self.basis.levels().iter().enumerate() {
            let Some(blocks) = self.rep.e.iter().map(|e| e.block(n)).collect::<Option<Vec<_>>>() else {
                continue;
            };
            for (s, lab) in level.iter().enumerate() {
                for site in self.basis.addible(lab) {
                    let bigger = self.basis.add(lab, &site);
                    let (_, t) = self.basis.position(&bigger).expect("in basis");
                    if blocks.iter().all(|b| b.get(t, s).is_zero()) {
                        continue;
                    }
                    out.domain += 1;
                    let factor = site_factor(&site.weight(p), p, direction);
                    let lhs = psi_rat(&bigger, p);
                    let rhs = psi_rat(lab, p).mul(&factor);
                    if lhs != rhs {
                        let diff = lhs.div(&rhs).map(|q| q.to_string()).unwrap_or_default();
                        out.failures += 1;
                        out.worst = S::one();
                        if out.diagnostics.len() < MAX_DIAGNOSTICS {
                            out.diagnostics.push(format!("{lab:?} + {site:?}: ratio {diff}"));
                        }
                    }
                }
            }
        }
        out
    }
}

/// `prod (z - x + hbar)/(z - x - hbar)` or its inverse.
pub fn site_factor<S: Scalar>(x: &S, p: &Params<S>, direction: PsiDirection) -> LinForm<S> {
    let sgn = match direction {
        PsiDirection::Eigenvalue => 1,
        PsiDirection::Printed => -1,
    };
    let mut fs = Vec::new();
    for hb in p.hbar() {
        fs.push((x.clone() - &hb, sgn));
        fs.push((x.clone() + &hb, -sgn));
    }
    LinForm::new(S::one(), fs)
}

/// Poles of `h(z)` on each fixed point are exactly the weights of its
/// addible and removable sites.
pub fn check_pole_support<S: Scalar>(basis: &FixedPointBasis, p: &Params<S>) -> Outcome<S> {
    let mut out = Outcome::new();
    for lab in basis.labels() {
        out.domain += 1;
        let mut poles: Vec<S> = h_rat(lab, p).poles().into_iter().map(|(r, _)| r).collect();
        poles.sort();
        let mut sites: Vec<S> = basis
            .addible(lab)
            .iter()
            .chain(basis.removable(lab).iter())
            .map(|s: &Site| s.weight(p))
            .collect();
        sites.sort();
        sites.dedup();
        if poles != sites {
            out.failures += 1;
            out.worst = S::from_i64(out.failures as i64);
            if out.diagnostics.len() < MAX_DIAGNOSTICS {
                let extra: Vec<String> = poles.iter().filter(|x| !sites.contains(x)).map(|x| x.to_string()).collect();
                let missing: Vec<String> = sites.iter().filter(|x| !poles.contains(x)).map(|x| x.to_string()).collect();
                out.diagnostics.push(format!(
                    "{lab:?}: poles not at sites {extra:?}, sites without poles {missing:?}"
                ));
            }
        }
    }
    out
}

/// Residue theorem on `h(z)`: finite residues and the residue at infinity
/// of `z^k h(z)` sum to zero.
pub fn check_residue_closure<S: Scalar>(labels: &[&Label], p: &Params<S>, kmax: u32) -> Result<Outcome<S>, Error> {
    let mut out = Outcome::new();
    for lab in labels {
        let h = h_rat(lab, p);
        for k in 0..=kmax {
            out.domain += 1;
            let mut total = h.residue_at_infinity(k);
            for (a, _) in h.poles() {
                total = total + h.residue_at(&a, k)?;
            }
            out.record(total, || format!("{lab:?} k={k}"));
        }
    }
    Ok(out)
}

/// Which relations a suite runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationSet {
    All,
    Ef,
    Ee,
    Serre,
    Psi,
    Poles,
    Shift,
}

impl std::str::FromStr for RelationSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "all" => RelationSet::All,
            "ef" => RelationSet::Ef,
            "ee" => RelationSet::Ee,
            "serre" => RelationSet::Serre,
            "psi" => RelationSet::Psi,
            "poles" => RelationSet::Poles,
            "shift" => RelationSet::Shift,
            _ => return Err(Error::Format(format!("unknown relation set {s:?}"))),
        })
    }
}

impl RelationSet {
    fn includes(self, other: RelationSet) -> bool {
        self == RelationSet::All || self == other
    }
}

/// Verdict on one relation, merged over all specializations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationEntry {
    pub id: String,
    pub status: Status,
    /// `false` for controls: deliberately wrong variants, reported but not
    /// part of the aggregate verdict.
    pub expected: bool,
    pub domain: usize,
    pub discrepancy: String,
    pub per_specialization: Vec<Status>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl RelationEntry {
    /// Whether the entry counts toward the aggregate verdict. Controls never
    /// do: on small representations they can pass for lack of nonzero data.
    pub fn ok(&self) -> bool {
        !self.expected || self.status == Status::Pass
    }

    /// Entry for a check run under a single specialization.
    pub fn from_outcome<S: Scalar>(id: &str, expected: bool, o: &Outcome<S>) -> Self {
        RelationEntry {
            id: id.to_string(),
            status: o.status(),
            expected,
            domain: o.domain,
            discrepancy: o.worst.to_wire(),
            per_specialization: vec![o.status()],
            epsilon: o.epsilon,
            diagnostics: o.diagnostics.clone(),
            wall_ms: None,
        }
    }

    /// For a control, whether it was detected as failing.
    pub fn discriminates(&self) -> bool {
        !self.expected && self.status == Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftSummary {
    pub l: i64,
    /// `z1` written in terms of `chi` and the equivariant weights.
    pub z1: Option<String>,
    pub z1_values: Vec<Option<String>>,
    pub raw_degrees: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub geometry: Geometry,
    pub sector: Option<i64>,
    pub top_level: usize,
    pub imax: u32,
    pub mode: crate::exact::Mode,
    pub params: Vec<RationalParams>,
    pub relations: Vec<RelationEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<ShiftSummary>,
}

impl SuiteReport {
    /// Every non-control relation passes on a nonempty domain.
    pub fn all_ok(&self) -> bool {
        self.relations.iter().all(RelationEntry::ok)
    }

    /// Ids of the non-control relations that did not pass.
    pub fn failing(&self) -> Vec<&str> {
        self.relations.iter().filter(|r| !r.ok()).map(|r| r.id.as_str()).collect()
    }

    pub fn entry(&self, id: &str) -> Option<&RelationEntry> {
        self.relations.iter().find(|r| r.id == id)
    }
}

/// Options of a suite run.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub imax: u32,
    pub relations: RelationSet,
    pub convention: InfinityConvention,
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { imax: 2, relations: RelationSet::All, convention: InfinityConvention::Standard, timings: false }
    }
}

/// Writes `z1 - chi` as `a*t + b*q` (equivalently `a*h1 + b*h2`) when small
/// integers fit.
fn describe_z1<S: Scalar>(z1: &S, p: &Params<S>) -> String {
    let d = z1.clone() - &p.chi;
    for a in -8i64..=8 {
        for b in -8i64..=8 {
            if (S::from_i64(a) * &p.h1 + S::from_i64(b) * &p.h2) == d {
                let mut s = String::from("chi");
                for (c, name) in [(a, "t"), (b, "q")] {
                    match c {
                        0 => {}
                        1 => s.push_str(&format!("+{name}")),
                        -1 => s.push_str(&format!("-{name}")),
                        c if c > 0 => s.push_str(&format!("+{c}{name}")),
                        c => s.push_str(&format!("{c}{name}")),
                    }
                }
                return s;
            }
        }
    }
    "unrecognized".into()
}

struct Partial<S> {
    id: &'static str,
    expected: bool,
    outcome: Outcome<S>,
    wall_ms: u64,
}

fn timed<S: Scalar>(id: &'static str, expected: bool, f: impl FnOnce() -> Result<Outcome<S>, Error>) -> Result<Partial<S>, Error> {
    let t = Instant::now();
    let outcome = f()?;
    Ok(Partial { id, expected, outcome, wall_ms: t.elapsed().as_millis() as u64 })
}

fn needs_operators(rs: RelationSet) -> bool {
    [RelationSet::Ef, RelationSet::Ee, RelationSet::Serre, RelationSet::Psi]
        .iter()
        .any(|r| rs.includes(*r))
}

type SingleRun<S> = (Vec<Partial<S>>, Option<crate::reps::ShiftReport<S>>);

/// Runs the chosen relations and shift detection under one specialization,
/// on the given operators.
fn run_on<S: Scalar>(
    basis: &FixedPointBasis,
    rep: Option<&Representation<S>>,
    p: &Params<S>,
    opts: &SuiteOptions,
) -> Result<SingleRun<S>, Error> {
    let imax = opts.imax;
    let rs = opts.relations;
    let mut parts = Vec::new();
    if let Some(rep) = rep {
        let mut ck = Checker::new(basis, rep);
        ck.convention = opts.convention;
        if rs.includes(RelationSet::Ef) {
            parts.push(timed("ef-diag", true, || Ok(ck.check_ef_diag(imax)))?);
            parts.push(timed("ef-h", true, || match ck.check_ef_matches_h(2 * imax) {
                Err(Error::SignInconsistent(msg)) => {
                    let mut o = Outcome::new();
                    o.domain = 1;
                    o.failures = 1;
                    o.worst = S::one();
                    o.diagnostics.push(format!("no global sign: {msg}"));
                    Ok(o)
                }
                other => other,
            })?);
        }
        if rs.includes(RelationSet::Ee) {
            parts.push(timed("ee", true, || Ok(ck.check_ee(imax, QuadraticSigns::EE)))?);
            parts.push(timed("ff", true, || Ok(ck.check_ff(imax, QuadraticSigns::FF)))?);
            parts.push(timed("ee-printed-signs", false, || Ok(ck.check_ee(imax, QuadraticSigns::EE_PRINTED)))?);
            parts.push(timed("ff-printed-signs", false, || Ok(ck.check_ff(imax, QuadraticSigns::FF_PRINTED)))?);
        }
        if rs.includes(RelationSet::Serre) {
            parts.push(timed("serre-e", true, || Ok(ck.check_serre_e(imax)))?);
            parts.push(timed("serre-f", true, || Ok(ck.check_serre_f(imax)))?);
        }
        if rs.includes(RelationSet::Psi) {
            parts.push(timed("psi", true, || Ok(ck.check_psi_e_compat(PsiDirection::Eigenvalue)))?);
            parts.push(timed("psi-printed-direction", false, || Ok(ck.check_psi_e_compat(PsiDirection::Printed)))?);
        }
    }
    if rs.includes(RelationSet::Poles) {
        parts.push(timed("poles", true, || Ok(check_pole_support(basis, p)))?);
    }
    let shift = if rs.includes(RelationSet::Shift) { Some(detect_shift(basis, p)?) } else { None };
    Ok((parts, shift))
}

/// Highest operator index the chosen relations use at the given `imax`.
pub fn required_index(relations: RelationSet, imax: u32) -> u32 {
    let mut need = 0;
    if relations.includes(RelationSet::Ef) {
        need = need.max(2 * imax);
    }
    if relations.includes(RelationSet::Ee) {
        need = need.max(imax + 3);
    }
    if relations.includes(RelationSet::Serre) {
        need = need.max(imax + 1);
    }
    need
}

fn specialize<S: Scalar>(rp: &RationalParams, bound: i64) -> Result<Params<S>, Error> {
    Params::<S>::from_rational(rp, bound).map_err(|e| Error::Resonance(e.to_string()))
}

/// Runs the suite under every specialization and merges the verdicts; a
/// relation passes only when it passes under all of them.
pub fn full_suite<S: Scalar>(
    basis: &FixedPointBasis,
    specializations: &[RationalParams],
    bound: i64,
    opts: &SuiteOptions,
) -> Result<SuiteReport, Error> {
    let mut runs = Vec::new();
    for rp in specializations {
        let p = specialize::<S>(rp, bound)?;
        let rep = if needs_operators(opts.relations) {
            Some(Representation::build(basis, &p, required_index(opts.relations, opts.imax))?)
        } else {
            None
        };
        runs.push((run_on(basis, rep.as_ref(), &p, opts)?, p));
    }
    merge(basis, specializations, runs, opts)
}

/// Runs the suite on operators supplied by the caller, for example loaded
/// from files, under the single specialization they were built with.
pub fn suite_on<S: Scalar>(
    basis: &FixedPointBasis,
    rep: &Representation<S>,
    params: &RationalParams,
    opts: &SuiteOptions,
) -> Result<SuiteReport, Error> {
    let need = required_index(opts.relations, opts.imax);
    if rep.max_index() < need || rep.f.len() != rep.e.len() {
        return Err(Error::Format(format!(
            "operators go up to index {}, the chosen relations need {need}",
            rep.max_index()
        )));
    }
    let run = run_on(basis, Some(rep), &rep.params, opts)?;
    merge(basis, std::slice::from_ref(params), vec![(run, rep.params.clone())], opts)
}

fn merge<S: Scalar>(
    basis: &FixedPointBasis,
    specializations: &[RationalParams],
    runs: Vec<(SingleRun<S>, Params<S>)>,
    opts: &SuiteOptions,
) -> Result<SuiteReport, Error> {
    let mut merged: Vec<RelationEntry> = Vec::new();
    let mut shift: Option<ShiftSummary> = None;
    for ((parts, sh), p) in runs {
        for part in parts {
            let o = &part.outcome;
            let entry = match merged.iter_mut().find(|e| e.id == part.id) {
                Some(e) => e,
                None => {
                    merged.push(RelationEntry {
                        id: part.id.to_string(),
                        status: Status::EmptyDomain,
                        expected: part.expected,
                        domain: 0,
                        discrepancy: S::zero().to_wire(),
                        per_specialization: vec![],
                        epsilon: None,
                        diagnostics: vec![],
                        wall_ms: opts.timings.then_some(0),
                    });
                    merged.last_mut().expect("just pushed")
                }
            };
            entry.per_specialization.push(o.status());
            entry.domain += o.domain;
            if !o.worst.is_zero() && entry.discrepancy == S::zero().to_wire() {
                entry.discrepancy = o.worst.to_wire();
            }
            if let Some(eps) = o.epsilon {
                if entry.epsilon.is_some_and(|prev| prev != eps) {
                    return Err(Error::SignInconsistent(format!("{} differs across specializations", part.id)));
                }
                entry.epsilon = Some(eps);
            }
            if entry.diagnostics.len() < MAX_DIAGNOSTICS {
                entry.diagnostics.extend(o.diagnostics.iter().take(MAX_DIAGNOSTICS - entry.diagnostics.len()).cloned());
            }
            if let Some(w) = entry.wall_ms.as_mut() {
                *w += part.wall_ms;
            }
        }
        if let Some(sh) = sh {
            let z1 = sh.z1.as_ref().map(|z| describe_z1(z, &p));
            let value = sh.z1.as_ref().map(|z| z.to_wire());
            match &mut shift {
                None => {
                    shift = Some(ShiftSummary {
                        l: sh.l,
                        z1,
                        z1_values: vec![value],
                        raw_degrees: sh.raw_degrees.iter().copied().collect(),
                    })
                }
                Some(prev) => {
                    if prev.l != sh.l || prev.z1 != z1 {
                        return Err(Error::InconsistentShift("shift differs across specializations".into()));
                    }
                    prev.z1_values.push(value);
                }
            }
        }
    }
    for e in &mut merged {
        e.status = if e.per_specialization.contains(&Status::Fail) {
            Status::Fail
        } else if e.per_specialization.iter().all(|s| *s == Status::Pass) {
            Status::Pass
        } else {
            Status::EmptyDomain
        };
    }
    if let Some(sh) = &shift {
        merged.push(RelationEntry {
            id: "shift".into(),
            status: Status::Pass,
            expected: true,
            domain: basis.dim() * specializations.len(),
            discrepancy: S::zero().to_wire(),
            per_specialization: vec![Status::Pass; specializations.len()],
            epsilon: None,
            diagnostics: vec![format!("l = {}, z1 = {}", sh.l, sh.z1.clone().unwrap_or_default())],
            wall_ms: None,
        });
    }
    let sector = match basis.geometry() {
        Geometry::C3 => None,
        Geometry::Conifold { .. } => Some(basis.sector()),
    };
    Ok(SuiteReport {
        geometry: basis.geometry(),
        sector,
        top_level: basis.top(),
        imax: opts.imax,
        mode: S::MODE,
        params: specializations.to_vec(),
        relations: merged,
        shift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Fp, Rational};

    fn rp() -> RationalParams {
        RationalParams::parse("3/7", "-11/5", "2/13").unwrap()
    }

    fn params<S: Scalar>() -> Params<S> {
        Params::from_rational(&rp(), 64).unwrap()
    }

    #[test]
    fn c3_vacuum_commutator() {
        let p = params::<Rational>();
        let b = FixedPointBasis::c3(1).unwrap();
        let rep = Representation::build(&b, &p, 3).unwrap();
        let ck = Checker::new(&b, &rep);
        for k in 0..=3 {
            let c = ck.ef_block(0, k, 0).unwrap();
            assert_eq!(c.get(0, 0), -p.chi.pow(k as u64));
        }
        let o = ck.check_ef_matches_h(3).unwrap();
        assert_eq!((o.status(), o.epsilon), (Status::Pass, Some(1)));
    }

    #[test]
    fn flipped_convention_flips_sign() {
        let p = params::<Rational>();
        let b = FixedPointBasis::c3(1).unwrap();
        let rep = Representation::build(&b, &p, 2).unwrap();
        let mut ck = Checker::new(&b, &rep);
        ck.convention = InfinityConvention::Flipped;
        assert_eq!(ck.check_ef_matches_h(2).unwrap().epsilon, Some(-1));
    }

    #[test]
    fn c3_small_levels() {
        let p = params::<Rational>();
        let b = FixedPointBasis::c3(2).unwrap();
        let rep = Representation::build(&b, &p, 4).unwrap();
        let ck = Checker::new(&b, &rep);
        assert_eq!(ck.check_ef_diag(1).status(), Status::Pass);
        assert_eq!(ck.check_ef_matches_h(2).unwrap().status(), Status::Pass);
        assert_eq!(ck.check_serre_e(1).status(), Status::EmptyDomain);
        assert_eq!(ck.check_serre_f(1).status(), Status::EmptyDomain);
        assert_eq!(ck.check_psi_e_compat(PsiDirection::Eigenvalue).status(), Status::Pass);
        assert_eq!(ck.check_psi_e_compat(PsiDirection::Printed).status(), Status::Fail);
    }

    #[test]
    fn c3_lowering_relations() {
        let p = params::<Rational>();
        let b = FixedPointBasis::c3(4).unwrap();
        let rep = Representation::build(&b, &p, 4).unwrap();
        let ck = Checker::new(&b, &rep);
        assert_eq!(ck.check_ff(1, QuadraticSigns::FF).status(), Status::Pass);
        assert_eq!(ck.check_ff(1, QuadraticSigns::FF_PRINTED).status(), Status::Fail);
        assert_eq!(ck.check_serre_f(1).status(), Status::Pass);
    }

    #[test]
    fn conifold_length_one_is_empty() {
        let b = FixedPointBasis::conifold(1, 1, 8).unwrap();
        let report = full_suite::<Rational>(&b, &[rp()], 64, &SuiteOptions::default()).unwrap();
        for id in ["ef-diag", "ef-h", "ee", "ff", "serre-e", "serre-f", "psi"] {
            assert_eq!(report.entry(id).unwrap().status, Status::EmptyDomain, "{id}");
        }
        let sh = report.shift.unwrap();
        assert_eq!((sh.l, sh.z1.as_deref()), (1, Some("chi+t")));
    }

    #[test]
    fn pole_support_and_closure() {
        let p = params::<Rational>();
        let b = FixedPointBasis::c3(4).unwrap();
        assert_eq!(check_pole_support(&b, &p).status(), Status::Pass);
        let labels: Vec<&Label> = b.labels().collect();
        assert_eq!(check_residue_closure(&labels, &p, 3).unwrap().status(), Status::Pass);
        let b = FixedPointBasis::conifold(2, 1, 8).unwrap();
        assert_eq!(check_pole_support(&b, &p).status(), Status::Pass);
    }

    #[test]
    fn prime_field_agrees() {
        let b = FixedPointBasis::c3(3).unwrap();
        let opts = SuiteOptions { imax: 1, ..SuiteOptions::default() };
        let q = full_suite::<Rational>(&b, &[rp()], 64, &opts).unwrap();
        let f = full_suite::<Fp>(&b, &[rp()], 64, &opts).unwrap();
        let verdicts = |r: &SuiteReport| r.relations.iter().map(|e| (e.id.clone(), e.status)).collect::<Vec<_>>();
        assert_eq!(verdicts(&q), verdicts(&f));
        assert_eq!(q.shift.unwrap().z1, f.shift.unwrap().z1);
    }

    #[test]
    fn controls_do_not_decide() {
        let mut e = RelationEntry {
            id: "x".into(),
            status: Status::Pass,
            expected: false,
            domain: 1,
            discrepancy: "0".into(),
            per_specialization: vec![Status::Pass],
            epsilon: None,
            diagnostics: vec![],
            wall_ms: None,
        };
        assert!(e.ok() && !e.discriminates());
        e.expected = true;
        e.status = Status::EmptyDomain;
        assert!(!e.ok());
    }
}
