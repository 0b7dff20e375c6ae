//! Acceptance run: one PASS/FAIL line per criterion, exact verdicts, pinned
//! time limits. Exits nonzero when any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use yangian_core::error::Error;
use yangian_core::exact::{random_params, Fp, Params, Rational, RationalParams, Scalar, DEFAULT_RESONANCE_BOUND};
use yangian_core::partitions3d::enumerate_plane_partitions;
use yangian_core::pyramid::{build_erc, enumerate_pyramids, Stone, DEFAULT_LENGTH_CAP};
use yangian_core::relations::{
    check_residue_closure, full_suite, QuadraticSigns, RelationEntry, RelationSet, Status, SuiteOptions, SuiteReport,
};
use yangian_core::reps::{FixedPointBasis, Label};
use yangian_core::shuffle::{
    check_a1_anticomm, check_assoc, check_c3_ee, shuffle_mul, Kernel, Poly, SymPoly,
};

const SEED: u64 = 20240601;
const K: usize = 3;
const BOUND: i64 = DEFAULT_RESONANCE_BOUND;

const LIMIT_PP: Duration = Duration::from_secs(5);
const LIMIT_PYRAMID: Duration = Duration::from_secs(30);
const LIMIT_POLES: Duration = Duration::from_secs(120);
const LIMIT_C3_SUITE: Duration = Duration::from_secs(300);
const LIMIT_C3_SHIFT: Duration = Duration::from_secs(10);
const LIMIT_CONIFOLD_SUITE: Duration = Duration::from_secs(600);
const LIMIT_CONIFOLD_SHIFT: Duration = Duration::from_secs(10);
const LIMIT_CLOSURE: Duration = Duration::from_secs(60);
const LIMIT_SHUFFLE: Duration = Duration::from_secs(120);
/// Prime-field rerun of criteria 3 to 7 relative to the rational run.
const MAX_CROSS_CHECK_RATIO: f64 = 2.0;

/// Relations that must pass, on a nonempty domain, in criteria 4 and 6.
const SUITE_IDS: [&str; 7] = ["ef-diag", "ef-h", "ee", "ff", "serre-e", "serre-f", "psi"];

const C3_LEVEL: usize = 5;
const MAX_STONES: usize = 8;
/// Large enough that the sampling pool exceeds 200 elements.
const CLOSURE_C3_LEVEL: usize = 8;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

/// Runs one criterion, failing it when the time limit is exceeded.
fn timed(limit: Duration, f: impl FnOnce() -> Result<Verdict, Error>) -> (Verdict, Duration) {
    let t = Instant::now();
    let v = f().unwrap_or_else(|e| verdict(false, format!("error: {e}")));
    let el = t.elapsed();
    if el > limit {
        return (verdict(false, format!("{}; over the time limit", v.detail)), el);
    }
    (v, el)
}

fn c1_plane_partitions() -> Result<Verdict, Error> {
    let levels = enumerate_plane_partitions(6, 10)?;
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    let mut ok = counts == [1, 1, 3, 6, 13, 24, 48];
    for (n, level) in levels.iter().enumerate() {
        let ours: BTreeSet<BTreeSet<[u32; 3]>> =
            level.iter().map(|p| p.boxes().iter().map(|b| [b.i, b.j, b.k]).collect()).collect();
        ok &= ours.len() == level.len() && ours == common::plane_partition_oracle(n);
    }
    Ok(verdict(ok, format!("counts {counts:?}")))
}

fn c2_pyramids() -> Result<Verdict, Error> {
    let mut ok = true;
    let mut totals = vec![];
    for m in 1..=3 {
        let erc = build_erc(m, DEFAULT_LENGTH_CAP)?;
        let max = erc.len().min(MAX_STONES);
        let found: Vec<BTreeSet<Stone>> = enumerate_pyramids(&erc, max, None)?
            .into_iter()
            .flat_map(|g| g.partitions)
            .map(|p| p.stones().iter().copied().collect())
            .collect();
        let set: BTreeSet<BTreeSet<Stone>> = found.iter().cloned().collect();
        ok &= set.len() == found.len() && set == common::pyramid_oracle(m, max);
        totals.push(found.len());
    }
    Ok(verdict(ok, format!("partitions for m=1,2,3: {totals:?}")))
}

/// The suite under `specs` in the given scalar mode.
fn suite<S: Scalar>(basis: &FixedPointBasis, specs: &[RationalParams], rel: RelationSet) -> Result<SuiteReport, Error> {
    let opts = SuiteOptions { relations: rel, ..SuiteOptions::default() };
    full_suite::<S>(basis, specs, BOUND, &opts)
}

/// Every nonempty sector of the conifold basis with at most `MAX_STONES`
/// stones.
fn conifold_bases(m: u32) -> Result<Vec<FixedPointBasis>, Error> {
    let max = build_erc(m, DEFAULT_LENGTH_CAP)?.len().min(MAX_STONES);
    let mut out = vec![];
    for d in 0..=max as i64 {
        let b = FixedPointBasis::conifold(m, d, max)?;
        if b.dim() > 0 {
            out.push(b);
        }
    }
    Ok(out)
}

/// Reports produced by criteria 3 to 7, kept for the mode cross-check.
#[derive(Default)]
struct Reports(Vec<(String, SuiteReport)>);

fn c3_poles<S: Scalar>(specs: &[RationalParams], out: &mut Reports) -> Result<Verdict, Error> {
    let mut elements = 0;
    let mut bad = vec![];
    let mut bases = vec![("c3".to_string(), FixedPointBasis::c3(6)?)];
    for m in 1..=3 {
        for b in conifold_bases(m)? {
            bases.push((format!("conifold:{m} sector {}", b.sector()), b));
        }
    }
    for (name, b) in bases {
        let r = suite::<S>(&b, specs, RelationSet::Poles)?;
        let e = r.entry("poles").expect("poles entry");
        elements += b.dim();
        if e.status != Status::Pass {
            bad.push(name.clone());
        }
        out.0.push((format!("poles {name}"), r));
    }
    Ok(verdict(bad.is_empty(), format!("{elements} elements; failing bases {bad:?}")))
}

fn describe(e: &RelationEntry) -> String {
    match e.status {
        Status::Pass => format!("{} pass", e.id),
        Status::EmptyDomain => format!("{} empty-domain", e.id),
        Status::Fail => format!("{} FAIL (worst {})", e.id, e.discrepancy),
    }
}

fn c4_c3_suite<S: Scalar>(specs: &[RationalParams], out: &mut Reports) -> Result<Verdict, Error> {
    let b = FixedPointBasis::c3(C3_LEVEL)?;
    let r = suite::<S>(&b, specs, RelationSet::All)?;
    let mut ok = true;
    let mut parts = vec![];
    for id in SUITE_IDS {
        let e = r.entry(id).expect("suite entry");
        ok &= e.status == Status::Pass;
        parts.push(describe(e));
    }
    let eps = r.entry("ef-h").and_then(|e| e.epsilon);
    ok &= eps.is_some();
    out.0.push(("c3 suite".into(), r));
    Ok(verdict(ok, format!("{}; epsilon {eps:?}", parts.join(", "))))
}

fn c5_c3_shift<S: Scalar>(specs: &[RationalParams], out: &mut Reports) -> Result<Verdict, Error> {
    let b = FixedPointBasis::c3(C3_LEVEL)?;
    let r = suite::<S>(&b, specs, RelationSet::Shift)?;
    let s = r.shift.clone().expect("shift summary");
    let chis: Vec<Option<String>> = specs.iter().map(|p| Some(p.chi.to_wire())).collect();
    let ok = s.l == -1 && s.z1.as_deref() == Some("chi") && s.z1_values == chis;
    out.0.push(("c3 shift".into(), r));
    Ok(verdict(ok, format!("l = {}, z1 = {}", s.l, s.z1.unwrap_or_default())))
}

fn c6_conifold_suite<S: Scalar>(specs: &[RationalParams], out: &mut Reports) -> Result<Verdict, Error> {
    let mut failed: BTreeSet<&str> = BTreeSet::new();
    let mut verified: BTreeSet<&str> = BTreeSet::new();
    let mut parts = vec![];
    for m in [2, 3] {
        let max = build_erc(m, DEFAULT_LENGTH_CAP)?.len().min(MAX_STONES);
        let b = FixedPointBasis::conifold(m, 1, max)?;
        let r = suite::<S>(&b, specs, RelationSet::All)?;
        let mut line = vec![];
        for id in SUITE_IDS {
            let e = r.entry(id).expect("suite entry");
            match e.status {
                Status::Pass => {
                    verified.insert(id);
                }
                Status::Fail => {
                    failed.insert(id);
                }
                Status::EmptyDomain => {}
            }
            line.push(describe(e));
        }
        parts.push(format!("m={m}: {}", line.join(", ")));
        out.0.push((format!("conifold:{m} suite"), r));
    }
    // a relation counts when it fails nowhere and is exercised somewhere
    let unverified: Vec<&str> =
        SUITE_IDS.iter().copied().filter(|id| !verified.contains(id) && !failed.contains(id)).collect();
    let ok = failed.is_empty() && unverified.is_empty();
    Ok(verdict(ok, format!("{}; never exercised {unverified:?}", parts.join("; "))))
}

fn c7_conifold_shift<S: Scalar>(specs: &[RationalParams], out: &mut Reports) -> Result<Verdict, Error> {
    let mut ok = true;
    let mut parts = vec![];
    for m in 1..=3u32 {
        let max = build_erc(m, DEFAULT_LENGTH_CAP)?.len().min(MAX_STONES);
        let b = FixedPointBasis::conifold(m, 1, max)?;
        let r = suite::<S>(&b, specs, RelationSet::Shift)?;
        let s = r.shift.clone().expect("shift summary");
        let expect_name = if m == 1 { "chi+t".to_string() } else { format!("chi+{m}t") };
        let expect_values: Vec<Option<String>> = specs
            .iter()
            .map(|p| Some((p.chi.clone() + Rational::from_integer(m) * &p.h1).to_wire()))
            .collect();
        ok &= s.l == 1 && s.z1.as_deref() == Some(expect_name.as_str()) && s.z1_values == expect_values;
        parts.push(format!("m={m}: l = {}, z1 = {}", s.l, s.z1.unwrap_or_default()));
        out.0.push((format!("conifold:{m} shift"), r));
    }
    Ok(verdict(ok, parts.join("; ")))
}

fn c8_closure(specs: &[RationalParams]) -> Result<Verdict, Error> {
    let mut bases = vec![FixedPointBasis::c3(CLOSURE_C3_LEVEL)?];
    for m in 2..=4 {
        bases.extend(conifold_bases(m)?);
    }
    let pool: Vec<&Label> = bases.iter().flat_map(|b| b.labels()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let chosen: Vec<&Label> = pool.choose_multiple(&mut rng, 200).copied().collect();
    let mut checks = 0;
    let mut failures = 0;
    for rp in specs {
        let p = Params::<Rational>::from_rational(rp, BOUND)?;
        let o = check_residue_closure(&chosen, &p, 3)?;
        checks += o.domain;
        failures += o.failures;
    }
    Ok(verdict(
        chosen.len() == 200 && failures == 0,
        format!("{} of {} elements, {checks} sums, {failures} nonzero", chosen.len(), pool.len()),
    ))
}

fn c9_shuffle(specs: &[RationalParams]) -> Result<Verdict, Error> {
    let mut parts = vec![];
    let a1 = check_a1_anticomm::<Rational>(5)?;
    parts.push(format!("a1 anticommute {:?}", a1.status()));
    let mut ok = a1.status() == Status::Pass;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for rp in specs {
        let p = Params::<Rational>::from_rational(rp, BOUND)?;
        let k = Kernel::c3(&p);
        let one = SymPoly::power(0);
        let prod = shuffle_mul(&one, &one, &k)?;
        let (h1, h2, h3) = (&p.h1, &p.h2, &p.h3);
        let s2 = h1.clone() * h2 + h2.clone() * h3 + h3.clone() * h1;
        let mut expect = Poly::zero(2);
        expect.add_term(vec![2, 0], Rational::from_integer(2));
        expect.add_term(vec![1, 1], Rational::from_integer(-4));
        expect.add_term(vec![0, 2], Rational::from_integer(2));
        expect.add_term(vec![0, 0], Rational::from_integer(2) * &s2);
        let unit_ok = prod.poly().sub(&expect).is_zero();
        let ee = check_c3_ee(&p, 2, QuadraticSigns::EE)?;
        let assoc = check_assoc(&k, 50, &mut rng)?;
        ok &= unit_ok && ee.status() == Status::Pass && assoc.status() == Status::Pass;
        parts.push(format!(
            "1*1 {}, c3 ee {:?}, associativity {:?} on {} triples",
            if unit_ok { "matches" } else { "DIFFERS" },
            ee.status(),
            assoc.status(),
            assoc.domain
        ));
    }
    Ok(verdict(ok, parts.join("; ")))
}

/// Verdicts of a report: per relation, the merged and per-specialization
/// statuses, plus the shift.
fn verdicts(r: &SuiteReport) -> Vec<String> {
    let mut v: Vec<String> = r
        .relations
        .iter()
        .map(|e| format!("{}:{:?}:{:?}", e.id, e.status, e.per_specialization))
        .collect();
    if let Some(s) = &r.shift {
        v.push(format!("shift:{}:{:?}", s.l, s.z1));
    }
    v
}

fn spec_uniform(r: &SuiteReport) -> bool {
    r.relations.iter().all(|e| e.per_specialization.iter().all(|s| *s == e.status))
}

type Runs = Vec<(usize, &'static str, Duration, fn(&[RationalParams], &mut Reports) -> Result<Verdict, Error>)>;

fn main() {
    let specs = random_params(SEED, K, BOUND);
    println!("acceptance: seed {SEED}, {K} specializations, exact arithmetic");
    for (i, p) in specs.iter().enumerate() {
        println!("  specialization {i}: h1 = {}, h2 = {}, chi = {}", p.h1, p.h2, p.chi);
    }

    let mut results: Vec<(usize, &str, Verdict, Duration, Duration)> = vec![];
    let (v, t) = timed(LIMIT_PP, c1_plane_partitions);
    results.push((1, "plane-partition enumeration", v, t, LIMIT_PP));
    let (v, t) = timed(LIMIT_PYRAMID, c2_pyramids);
    results.push((2, "pyramid enumeration", v, t, LIMIT_PYRAMID));

    let runs: Runs = vec![
        (3, "pole support", LIMIT_POLES, c3_poles::<Rational>),
        (4, "C3 relation suite", LIMIT_C3_SUITE, c4_c3_suite::<Rational>),
        (5, "C3 shift", LIMIT_C3_SHIFT, c5_c3_shift::<Rational>),
        (6, "conifold relation suite", LIMIT_CONIFOLD_SUITE, c6_conifold_suite::<Rational>),
        (7, "conifold shift", LIMIT_CONIFOLD_SHIFT, c7_conifold_shift::<Rational>),
    ];
    let prime: Runs = vec![
        (3, "", LIMIT_POLES, c3_poles::<Fp>),
        (4, "", LIMIT_C3_SUITE, c4_c3_suite::<Fp>),
        (5, "", LIMIT_C3_SHIFT, c5_c3_shift::<Fp>),
        (6, "", LIMIT_CONIFOLD_SUITE, c6_conifold_suite::<Fp>),
        (7, "", LIMIT_CONIFOLD_SHIFT, c7_conifold_shift::<Fp>),
    ];
    let mut rational_reports = Reports::default();
    let mut rational_time = Duration::ZERO;
    for (n, name, limit, f) in runs {
        let (v, t) = timed(limit, || f(&specs, &mut rational_reports));
        rational_time += t;
        results.push((n, name, v, t, limit));
    }
    let (v, t) = timed(LIMIT_CLOSURE, || c8_closure(&specs));
    results.push((8, "residue closure", v, t, LIMIT_CLOSURE));
    let (v, t) = timed(LIMIT_SHUFFLE, || c9_shuffle(&specs));
    results.push((9, "shuffle algebra", v, t, LIMIT_SHUFFLE));

    let mut prime_reports = Reports::default();
    let start = Instant::now();
    let mut prime_errors = vec![];
    for (n, _, _, f) in prime {
        if let Err(e) = f(&specs, &mut prime_reports) {
            prime_errors.push(format!("criterion {n}: {e}"));
        }
    }
    let prime_time = start.elapsed();
    let same = rational_reports.0.len() == prime_reports.0.len()
        && rational_reports
            .0
            .iter()
            .zip(&prime_reports.0)
            .all(|((a, ra), (b, rb))| a == b && verdicts(ra) == verdicts(rb));
    let uniform = rational_reports.0.iter().chain(&prime_reports.0).all(|(_, r)| spec_uniform(r));
    let ratio = prime_time.as_secs_f64() / rational_time.as_secs_f64().max(1e-9);
    let ok = prime_errors.is_empty() && same && uniform && ratio < MAX_CROSS_CHECK_RATIO;
    let detail = format!(
        "{} reports; prime-field verdicts {}; specializations {}; prime/rational time {ratio:.2}{}",
        rational_reports.0.len(),
        if same { "identical" } else { "DIFFER" },
        if uniform { "unanimous" } else { "DISAGREE" },
        if prime_errors.is_empty() { String::new() } else { format!("; errors {prime_errors:?}") }
    );
    results.push((10, "mode cross-check", verdict(ok, detail), prime_time, rational_time.mul_f64(MAX_CROSS_CHECK_RATIO)));

    results.sort_by_key(|r| r.0);
    let mut failed = 0;
    for (n, name, v, t, limit) in &results {
        if !v.ok {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {}: {name} ({:.2} s, limit {:.0} s): {}",
            if v.ok { "PASS" } else { "FAIL" },
            t.as_secs_f64(),
            limit.as_secs_f64(),
            v.detail
        );
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
