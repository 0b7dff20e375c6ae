//! Command-line interface of the `yangian` binary.
//!
//! Exit codes: 0 success, 1 relation failure, 2 usage, 3 cap exceeded,
//! 4 resonant parameters, 5 shuffle kernel error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{random_params, ExactError, Fp, InfinityConvention, Mode, Params, Rational, RationalParams, Scalar};
use crate::partitions3d::{enumerate_plane_partitions, DEFAULT_BOX_CAP};
use crate::pyramid::{build_erc, enumerate_pyramids, DEFAULT_LENGTH_CAP};
use crate::relations::{full_suite, suite_on, RelationEntry, RelationSet, QuadraticSigns, SuiteOptions, SuiteReport};
use crate::reps::{
    build_e_family, build_f_family, FixedPointBasis, Geometry, Label, OperatorFile, Representation,
    SparseOperator,
};
use crate::shuffle::{
    check_a1_anticomm, check_assoc, check_c3_ee, check_jordan_ee, shuffle_mul_checked, Kernel, Poly, SymPolyWire,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RELATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_RESONANCE: i32 = 4;
pub const EXIT_KERNEL: i32 = 5;

/// Environment variable read for the worker count.
pub const THREADS_ENV: &str = "YANGIAN_THREADS";

#[derive(Parser, Debug)]
#[command(name = "yangian", version, about = "Exact fixed-point representations of shifted affine Yangians")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate plane or pyramid partitions.
    #[command(subcommand)]
    Enum(EnumCmd),
    /// Build or check a fixed-point representation.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Shuffle algebra products and relation checks.
    #[command(subcommand)]
    Shuffle(ShuffleCmd),
    /// Detect the shift of the acting Yangian.
    Shift {
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum EnumCmd {
    /// Plane partitions by number of boxes.
    Pp {
        #[arg(long)]
        max_boxes: usize,
        #[arg(long, default_value_t = DEFAULT_BOX_CAP)]
        cap: usize,
        /// Print only the counts.
        #[arg(long)]
        counts_only: bool,
    },
    /// Pyramid partitions of a finite empty room configuration.
    Pyramid {
        #[arg(long)]
        length: u32,
        #[arg(long)]
        max_stones: usize,
        /// Restrict to `#black - #white = sector`; levels are then indexed by
        /// the number of white stones.
        #[arg(long, allow_hyphen_values = true)]
        sector: Option<i64>,
        #[arg(long)]
        counts_only: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum RepCmd {
    /// Write the basis and the operators `e_0..e_I`, `f_0..f_I` as JSON.
    Build {
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1)]
        imax: u32,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the relation suite and print a JSON report.
    Check {
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 2)]
        imax: u32,
        #[arg(long, value_enum, default_value_t = RelationArg::All)]
        relations: RelationArg,
        /// Check operators previously written by `rep build` instead of
        /// building them.
        #[arg(long)]
        from: Option<PathBuf>,
        /// Use `Res_{z=inf} F = +[z^-1] F`.
        #[arg(long)]
        flip_infinity: bool,
        /// Include wall times (makes the output nondeterministic).
        #[arg(long)]
        timings: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ShuffleCmd {
    /// Print the product of two symmetric polynomials.
    Mul {
        #[arg(long)]
        kernel: String,
        #[command(flatten)]
        params: ParamArgs,
        /// A polynomial in `x` such as `3x^2-1/2`, `unit`, or a JSON map
        /// `{"v":2,"terms":{"1,0":"1","0,1":"1"}}`.
        left: String,
        right: String,
    },
    /// Run the relation checks of a kernel.
    Check {
        #[arg(long)]
        kernel: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 5)]
        rmax: u32,
        #[arg(long, default_value_t = 2)]
        imax: u32,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RelationArg {
    All,
    Ef,
    Ee,
    Serre,
    Psi,
    Poles,
    Shift,
}

impl From<RelationArg> for RelationSet {
    fn from(r: RelationArg) -> Self {
        match r {
            RelationArg::All => RelationSet::All,
            RelationArg::Ef => RelationSet::Ef,
            RelationArg::Ee => RelationSet::Ee,
            RelationArg::Serre => RelationSet::Serre,
            RelationArg::Psi => RelationSet::Psi,
            RelationArg::Poles => RelationSet::Poles,
            RelationArg::Shift => RelationSet::Shift,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Rational,
    PrimeField,
}

#[derive(Args, Debug, Clone)]
pub struct BasisArgs {
    /// `c3` or `conifold:m`.
    #[arg(long, default_value = "c3")]
    pub geometry: Geometry,
    /// Maximal number of boxes (`c3`).
    #[arg(long)]
    pub level: Option<usize>,
    /// Maximal number of stones (`conifold:m`).
    #[arg(long)]
    pub max_stones: Option<usize>,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub sector: i64,
}

pub const DEFAULT_LEVEL: usize = 5;
pub const DEFAULT_MAX_STONES: usize = 8;

/// How a basis was truncated; stored with built operators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSpec {
    pub geometry: Geometry,
    pub level: Option<usize>,
    pub max_stones: Option<usize>,
    pub sector: Option<i64>,
}

impl BasisArgs {
    fn spec(&self) -> Result<BasisSpec, Error> {
        Ok(match self.geometry {
            Geometry::C3 => {
                if self.max_stones.is_some() {
                    return Err(Error::Format("--max-stones applies to conifold geometries".into()));
                }
                BasisSpec {
                    geometry: Geometry::C3,
                    level: Some(self.level.unwrap_or(DEFAULT_LEVEL)),
                    max_stones: None,
                    sector: None,
                }
            }
            g @ Geometry::Conifold { .. } => {
                if self.level.is_some() {
                    return Err(Error::Format("conifold bases are truncated with --max-stones".into()));
                }
                BasisSpec {
                    geometry: g,
                    level: None,
                    max_stones: Some(self.max_stones.unwrap_or(DEFAULT_MAX_STONES)),
                    sector: Some(self.sector),
                }
            }
        })
    }
}

impl BasisSpec {
    pub fn build(&self) -> Result<FixedPointBasis, Error> {
        match self.geometry {
            Geometry::C3 => FixedPointBasis::c3(self.level.unwrap_or(DEFAULT_LEVEL)),
            Geometry::Conifold { m } => FixedPointBasis::conifold(
                m,
                self.sector.unwrap_or(1),
                self.max_stones.unwrap_or(DEFAULT_MAX_STONES),
            ),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Rational)]
    pub mode: ModeArg,
    /// `h1,h2,chi` as rationals; repeat for several specializations.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "random")]
    pub params: Vec<String>,
    /// Draw random generic specializations (the default without --params).
    #[arg(long)]
    pub random: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random specializations.
    #[arg(short = 'k', long = "specializations", default_value_t = 3)]
    pub k: usize,
    /// Genericity bound: `a h1 + b h2` must not vanish for `|a|, |b| <= bound`.
    #[arg(long, default_value_t = crate::exact::DEFAULT_RESONANCE_BOUND)]
    pub bound: i64,
}

impl ParamArgs {
    /// The specializations, validated against the genericity predicate.
    pub fn specializations(&self) -> Result<Vec<RationalParams>, Error> {
        if self.params.is_empty() {
            if self.k == 0 {
                return Err(Error::Format("need at least one specialization".into()));
            }
            return Ok(random_params(self.seed, self.k, self.bound));
        }
        self.params
            .iter()
            .map(|s| {
                let parts: Vec<&str> = s.split(',').map(str::trim).collect();
                let [h1, h2, chi] = parts[..] else {
                    return Err(Error::Format(format!("expected h1,h2,chi, got {s:?}")));
                };
                let rp = RationalParams::parse(h1, h2, chi)?;
                rp.check_generic(self.bound).map_err(|e| Error::Resonance(e.to_string()))?;
                Ok(rp)
            })
            .collect()
    }
}

/// Maps an error to the process exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Resonance(_)
        | Error::Exact(ExactError::Resonant(_))
        | Error::Exact(ExactError::ModularDivisionByZero) => EXIT_RESONANCE,
        Error::DenominatorNotCancelled(_) | Error::NotSymmetric(_) => EXIT_KERNEL,
        Error::SignInconsistent(_) | Error::InconsistentShift(_) => EXIT_RELATION,
        _ => EXIT_USAGE,
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Format(format!("writing {}: {e}", path.display())))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Format(format!("reading {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("parsing {}: {e}", path.display())))
}

#[derive(Serialize)]
struct PpOutput {
    max_boxes: usize,
    counts: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    levels: Option<Vec<Vec<crate::partitions3d::Partition3D>>>,
}

#[derive(Serialize)]
struct PyramidGroupOut {
    blacks: usize,
    whites: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    partitions: Option<Vec<crate::pyramid::PyramidPartition>>,
    count: usize,
}

#[derive(Serialize)]
struct PyramidOutput {
    length: u32,
    max_stones: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    sector: Option<i64>,
    /// Counts by number of stones, or by number of white stones within a
    /// sector.
    counts: Vec<usize>,
    groups: Vec<PyramidGroupOut>,
}

fn cmd_enum(cmd: &EnumCmd) -> Result<(String, i32), Error> {
    match cmd {
        EnumCmd::Pp { max_boxes, cap, counts_only } => {
            let levels = enumerate_plane_partitions(*max_boxes, *cap)?;
            let counts = levels.iter().map(Vec::len).collect();
            let out = PpOutput { max_boxes: *max_boxes, counts, levels: (!counts_only).then_some(levels) };
            Ok((to_json(&out), EXIT_OK))
        }
        EnumCmd::Pyramid { length, max_stones, sector, counts_only } => {
            let erc = build_erc(*length, DEFAULT_LENGTH_CAP)?;
            let groups = enumerate_pyramids(&erc, *max_stones, *sector)?;
            let mut counts = Vec::new();
            for g in &groups {
                let idx = if sector.is_some() { g.whites } else { g.blacks + g.whites };
                if counts.len() <= idx {
                    counts.resize(idx + 1, 0);
                }
                counts[idx] += g.partitions.len();
            }
            let groups = groups
                .into_iter()
                .map(|g| PyramidGroupOut {
                    blacks: g.blacks,
                    whites: g.whites,
                    count: g.partitions.len(),
                    partitions: (!counts_only).then_some(g.partitions),
                })
                .collect();
            let out = PyramidOutput { length: *length, max_stones: *max_stones, sector: *sector, counts, groups };
            Ok((to_json(&out), EXIT_OK))
        }
    }
}

/// `basis.json` written by `rep build`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisFile {
    pub basis: BasisSpec,
    pub mode: ModeArg,
    pub params: RationalParams,
    pub imax: u32,
    pub sizes: Vec<usize>,
    pub levels: Vec<Vec<Label>>,
}

fn operator_path(dir: &Path, name: &str, i: u32) -> PathBuf {
    dir.join(format!("{name}_{i}.json"))
}

fn build_files<S: Scalar>(
    spec: &BasisSpec,
    basis: &FixedPointBasis,
    rp: &RationalParams,
    bound: i64,
    mode: ModeArg,
    imax: u32,
    out: &Path,
) -> Result<Vec<String>, Error> {
    let p = Params::<S>::from_rational(rp, bound).map_err(|e| Error::Resonance(e.to_string()))?;
    let e = build_e_family(basis, &p, imax)?;
    let f = build_f_family(basis, &p, imax)?;
    fs::create_dir_all(out).map_err(|err| Error::Format(format!("creating {}: {err}", out.display())))?;
    let file = BasisFile {
        basis: spec.clone(),
        mode,
        params: rp.clone(),
        imax,
        sizes: basis.levels().iter().map(Vec::len).collect(),
        levels: basis.levels().to_vec(),
    };
    let mut written = vec!["basis.json".to_string()];
    write_file(&out.join("basis.json"), &to_json(&file))?;
    let params_json = serde_json::to_value(rp).expect("serializable");
    let geometry = spec.geometry.to_string();
    for (name, family) in [("e", &e), ("f", &f)] {
        for (i, op) in family.iter().enumerate() {
            let label = format!("{name}_{i}");
            let path = operator_path(out, name, i as u32);
            write_file(&path, &to_json(&op.to_file(&label, &geometry, params_json.clone())))?;
            written.push(format!("{label}.json"));
        }
    }
    Ok(written)
}

fn load_rep<S: Scalar>(dir: &Path, file: &BasisFile, basis: &FixedPointBasis, bound: i64) -> Result<Representation<S>, Error> {
    let p = Params::<S>::from_rational(&file.params, bound).map_err(|e| Error::Resonance(e.to_string()))?;
    let sizes: Vec<usize> = basis.levels().iter().map(Vec::len).collect();
    let load = |name: &str, shift: i32| -> Result<Vec<SparseOperator<S>>, Error> {
        (0..=file.imax)
            .map(|i| {
                let of: OperatorFile = read_json(&operator_path(dir, name, i))?;
                if serde_json::from_value::<RationalParams>(of.params.clone()).ok().as_ref() != Some(&file.params) {
                    return Err(Error::Format(format!("{name}_{i}.json was built with other parameters")));
                }
                let op = SparseOperator::<S>::from_file(&of)?;
                let expect = SparseOperator::<S>::zero(shift, &sizes);
                let shape_ok = op.shift == shift
                    && op.num_levels() == sizes.len()
                    && (0..sizes.len()).all(|n| match (op.block(n), expect.block(n)) {
                        (Some(a), Some(b)) => (a.rows, a.cols) == (b.rows, b.cols),
                        (None, None) => true,
                        _ => false,
                    });
                if !shape_ok {
                    return Err(Error::Format(format!("{name}_{i}.json does not match the basis")));
                }
                Ok(op)
            })
            .collect()
    };
    Ok(Representation { params: p, e: load("e", 1)?, f: load("f", -1)?, sizes })
}

fn report_exit(report: &SuiteReport) -> i32 {
    if report.all_ok() {
        EXIT_OK
    } else {
        EXIT_RELATION
    }
}

fn failing_note(report: &SuiteReport) -> Option<String> {
    let failing = report.failing();
    (!failing.is_empty()).then(|| format!("relations not passing: {}", failing.join(", ")))
}

fn suite<S: Scalar>(
    basis: &FixedPointBasis,
    specs: &[RationalParams],
    bound: i64,
    opts: &SuiteOptions,
) -> Result<SuiteReport, Error> {
    full_suite::<S>(basis, specs, bound, opts)
}

struct Output {
    stdout: String,
    stderr: Option<String>,
    code: i32,
}

fn cmd_rep(cmd: &RepCmd) -> Result<Output, Error> {
    match cmd {
        RepCmd::Build { basis, params, imax, out } => {
            let spec = basis.spec()?;
            let rp = params.specializations()?.remove(0);
            let b = spec.build()?;
            let written = match params.mode {
                ModeArg::Rational => build_files::<Rational>(&spec, &b, &rp, params.bound, params.mode, *imax, out)?,
                ModeArg::PrimeField => build_files::<Fp>(&spec, &b, &rp, params.bound, params.mode, *imax, out)?,
            };
            Ok(Output { stdout: to_json(&written), stderr: None, code: EXIT_OK })
        }
        RepCmd::Check { basis, params, imax, relations, from, flip_infinity, timings, out } => {
            let opts = SuiteOptions {
                imax: *imax,
                relations: (*relations).into(),
                convention: if *flip_infinity { InfinityConvention::Flipped } else { InfinityConvention::Standard },
                timings: *timings,
            };
            let report = match from {
                Some(dir) => {
                    let file: BasisFile = read_json(&dir.join("basis.json"))?;
                    let b = file.basis.build()?;
                    if b.levels() != file.levels.as_slice() {
                        return Err(Error::Format("basis.json does not match the rebuilt basis".into()));
                    }
                    match file.mode {
                        ModeArg::Rational => {
                            suite_on(&b, &load_rep::<Rational>(dir, &file, &b, params.bound)?, &file.params, &opts)?
                        }
                        ModeArg::PrimeField => {
                            suite_on(&b, &load_rep::<Fp>(dir, &file, &b, params.bound)?, &file.params, &opts)?
                        }
                    }
                }
                None => {
                    let b = basis.spec()?.build()?;
                    let specs = params.specializations()?;
                    match params.mode {
                        ModeArg::Rational => suite::<Rational>(&b, &specs, params.bound, &opts)?,
                        ModeArg::PrimeField => suite::<Fp>(&b, &specs, params.bound, &opts)?,
                    }
                }
            };
            let text = to_json(&report);
            let stdout = match out {
                Some(path) => {
                    write_file(path, &text)?;
                    String::new()
                }
                None => text,
            };
            Ok(Output { stdout, stderr: failing_note(&report), code: report_exit(&report) })
        }
    }
}

fn cmd_shift(basis: &BasisArgs, params: &ParamArgs) -> Result<Output, Error> {
    let b = basis.spec()?.build()?;
    let specs = params.specializations()?;
    let opts = SuiteOptions { relations: RelationSet::Shift, ..SuiteOptions::default() };
    let report = match params.mode {
        ModeArg::Rational => suite::<Rational>(&b, &specs, params.bound, &opts)?,
        ModeArg::PrimeField => suite::<Fp>(&b, &specs, params.bound, &opts)?,
    };
    Ok(Output { stdout: to_json(&report.shift), stderr: None, code: EXIT_OK })
}

/// A shuffle kernel preset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelSpec {
    A1,
    Jordan(Rational),
    C3,
}

impl std::str::FromStr for KernelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "a1" => Ok(KernelSpec::A1),
            "c3" => Ok(KernelSpec::C3),
            _ => match s.strip_prefix("jordan:") {
                Some(c) => Ok(KernelSpec::Jordan(c.parse()?)),
                None => Err(Error::Format(format!("unknown kernel {s:?}; use a1, jordan:c or c3"))),
            },
        }
    }
}

impl KernelSpec {
    pub fn kernel<S: Scalar>(&self, p: &Params<S>) -> Result<Kernel<S>, Error> {
        Ok(match self {
            KernelSpec::A1 => Kernel::a1(),
            KernelSpec::Jordan(c) => Kernel::jordan(S::from_rational(c)?),
            KernelSpec::C3 => Kernel::c3(p),
        })
    }
}

/// Parses `unit`, a polynomial in `x` such as `2x^3-x+1/2`, or a JSON map.
pub fn parse_sympoly<S: Scalar>(text: &str) -> Result<Poly<S>, Error> {
    let t = text.trim();
    if t == "unit" {
        return Ok(Poly::constant(0, S::one()));
    }
    if t.starts_with('{') {
        let w: SymPolyWire =
            serde_json::from_str(t).map_err(|e| Error::Format(format!("polynomial JSON {t:?}: {e}")))?;
        return Poly::from_wire(&w);
    }
    let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Format("empty polynomial".into()));
    }
    let mut poly = Poly::zero(1);
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
            let (e, c) = parse_term::<S>(&compact[start..i])?;
            poly.add_term(vec![e], c);
            start = i;
        }
    }
    Ok(poly)
}

fn parse_term<S: Scalar>(term: &str) -> Result<(u32, S), Error> {
    let bad = || Error::Format(format!("cannot parse term {term:?}"));
    let (neg, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    let (coef, exp) = match body.find('x') {
        None => (body, 0),
        Some(pos) => {
            let exp = match &body[pos + 1..] {
                "" => 1,
                rest => rest.strip_prefix('^').and_then(|e| e.parse().ok()).ok_or_else(bad)?,
            };
            (body[..pos].trim_end_matches('*'), exp)
        }
    };
    let c: Rational = if coef.is_empty() { Rational::from_i64(1) } else { coef.parse().map_err(|_| bad())? };
    let c = S::from_rational(&c)?;
    Ok((exp, if neg { -c } else { c }))
}

#[derive(Serialize)]
struct ProductOutput {
    kernel: String,
    product: SymPolyWire,
    display: String,
}

fn shuffle_mul_cmd<S: Scalar>(kernel: &str, rp: &RationalParams, bound: i64, left: &str, right: &str) -> Result<Output, Error> {
    let spec: KernelSpec = kernel.parse()?;
    let p = Params::<S>::from_rational(rp, bound).map_err(|e| Error::Resonance(e.to_string()))?;
    let k = spec.kernel(&p)?;
    let prod = shuffle_mul_checked(&parse_sympoly::<S>(left)?, &parse_sympoly::<S>(right)?, &k)?;
    let out = ProductOutput { kernel: kernel.to_string(), product: prod.to_wire(), display: prod.to_string() };
    Ok(Output { stdout: to_json(&out), stderr: None, code: EXIT_OK })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShuffleReport {
    pub kernel: String,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<RationalParams>,
    pub relations: Vec<RelationEntry>,
    /// For `jordan:c`: the normalization `kappa` in
    /// `[x^(p+1), x^q] - [x^p, x^(q+1)] = kappa {x^p, x^q}` that holds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

impl ShuffleReport {
    pub fn all_ok(&self) -> bool {
        self.relations.iter().all(RelationEntry::ok) && self.convention.as_deref() != Some("none")
    }
}

/// Relation checks of one kernel; `seed` drives the associativity trials.
pub fn shuffle_checks<S: Scalar>(
    spec: &KernelSpec,
    rp: &RationalParams,
    bound: i64,
    rmax: u32,
    imax: u32,
    trials: usize,
    seed: u64,
) -> Result<ShuffleReport, Error> {
    let p = Params::<S>::from_rational(rp, bound).map_err(|e| Error::Resonance(e.to_string()))?;
    let k = spec.kernel(&p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut relations = Vec::new();
    let mut convention = None;
    let name = match spec {
        KernelSpec::A1 => {
            relations.push(RelationEntry::from_outcome("a1-anticommute", true, &check_a1_anticomm::<S>(rmax)?));
            "a1".to_string()
        }
        KernelSpec::C3 => {
            relations.push(RelationEntry::from_outcome("c3-ee", true, &check_c3_ee(&p, imax, QuadraticSigns::EE)?));
            let flipped = QuadraticSigns { sigma3: -QuadraticSigns::EE.sigma3, ..QuadraticSigns::EE };
            relations.push(RelationEntry::from_outcome("c3-ee-sigma3-flipped", false, &check_c3_ee(&p, imax, flipped)?));
            relations.push(RelationEntry::from_outcome(
                "c3-ee-printed-signs",
                false,
                &check_c3_ee(&p, imax, QuadraticSigns::EE_PRINTED)?,
            ));
            "c3".to_string()
        }
        KernelSpec::Jordan(c) => {
            let c = S::from_rational(c)?;
            let plus = check_jordan_ee(&k, &c, imax)?;
            let minus = check_jordan_ee(&k, &-c.clone(), imax)?;
            convention = Some(
                match (plus.failures == 0, minus.failures == 0) {
                    (true, false) => "kappa=+c",
                    (false, true) => "kappa=-c",
                    (true, true) => "both",
                    (false, false) => "none",
                }
                .to_string(),
            );
            relations.push(RelationEntry::from_outcome("jordan-ee-kappa=+c", false, &plus));
            relations.push(RelationEntry::from_outcome("jordan-ee-kappa=-c", false, &minus));
            format!("jordan:{c}")
        }
    };
    relations.push(RelationEntry::from_outcome("associativity", true, &check_assoc(&k, trials, &mut rng)?));
    let params = matches!(spec, KernelSpec::C3).then(|| rp.clone());
    Ok(ShuffleReport { kernel: name, mode: S::MODE, params, relations, convention })
}

fn cmd_shuffle(cmd: &ShuffleCmd) -> Result<Output, Error> {
    match cmd {
        ShuffleCmd::Mul { kernel, params, left, right } => {
            let rp = params.specializations()?.remove(0);
            match params.mode {
                ModeArg::Rational => shuffle_mul_cmd::<Rational>(kernel, &rp, params.bound, left, right),
                ModeArg::PrimeField => shuffle_mul_cmd::<Fp>(kernel, &rp, params.bound, left, right),
            }
        }
        ShuffleCmd::Check { kernel, params, rmax, imax, trials } => {
            let spec: KernelSpec = kernel.parse()?;
            let rp = params.specializations()?.remove(0);
            let report = match params.mode {
                ModeArg::Rational => shuffle_checks::<Rational>(&spec, &rp, params.bound, *rmax, *imax, *trials, params.seed)?,
                ModeArg::PrimeField => shuffle_checks::<Fp>(&spec, &rp, params.bound, *rmax, *imax, *trials, params.seed)?,
            };
            let code = if report.all_ok() { EXIT_OK } else { EXIT_RELATION };
            Ok(Output { stdout: to_json(&report), stderr: None, code })
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Enum(cmd) => cmd_enum(cmd).map(|(stdout, code)| Output { stdout, stderr: None, code }),
        Command::Rep(cmd) => cmd_rep(cmd),
        Command::Shuffle(cmd) => cmd_shuffle(cmd),
        Command::Shift { basis, params } => cmd_shift(basis, params),
    }
}

/// Parses `args` (including the program name), runs the command, writes its
/// output, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // fails only if the global pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match dispatch(&cli) {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            if let Some(note) = out.stderr {
                let _ = writeln!(stderr, "{note}");
            }
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
