//! C ABI over `yangian-core`.
//!
//! Objects are opaque handles created by `yg_*_new`/`yg_*_build` style calls
//! and released with the matching `yg_*_free`. Every fallible call returns a
//! [`YgStatus`]; on failure `yg_last_error` describes the cause. Strings
//! returned through `char **` outputs are owned by the caller and released
//! with `yg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use yangian_core::cli::{parse_sympoly, KernelSpec};
use yangian_core::exact::{random_params, Fp, Params, Rational, RationalParams, Scalar, DEFAULT_RESONANCE_BOUND};
use yangian_core::relations::{full_suite, RelationSet, SuiteOptions, SuiteReport};
use yangian_core::reps::{FixedPointBasis, Representation};
use yangian_core::shuffle::shuffle_mul_checked;
use yangian_core::Error;

/// Status codes; the nonzero values match the exit codes of the `yangian`
/// binary where they overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YgStatus {
    Ok = 0,
    RelationFailed = 1,
    InvalidArgument = 2,
    CapExceeded = 3,
    Resonance = 4,
    KernelError = 5,
    NullPointer = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YgOperatorKind {
    Raising = 0,
    Lowering = 1,
}

/// A fixed-point basis.
pub struct YgBasis(FixedPointBasis);

/// One generic specialization of `(h1, h2, chi)`.
pub struct YgParams(RationalParams);

/// Raising and lowering operators over the rationals.
pub struct YgRep {
    geometry: String,
    params: RationalParams,
    rep: Representation<Rational>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> YgStatus {
    match yangian_core::cli::exit_code(e) {
        1 => YgStatus::RelationFailed,
        3 => YgStatus::CapExceeded,
        4 => YgStatus::Resonance,
        5 => YgStatus::KernelError,
        _ => YgStatus::InvalidArgument,
    }
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<YgStatus, Failure>) -> YgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure::Null(what))) => {
            set_error(&format!("{what} is null"));
            YgStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            YgStatus::Panic
        }
    }
}

unsafe fn arg<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Core(Error::Format(format!("{what} is not UTF-8"))))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<YgStatus, Failure> {
    if out.is_null() {
        return Err(Failure::Null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(YgStatus::Ok)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("output pointer"));
    }
    *out = CString::new(s).map_err(|_| Failure::Core(Error::Format("string contains NUL".into())))?.into_raw();
    Ok(())
}

fn specialize<S: Scalar>(rp: &RationalParams) -> Result<Params<S>, Error> {
    Params::from_rational(rp, DEFAULT_RESONANCE_BOUND).map_err(|e| Error::Resonance(e.to_string()))
}

/// Message describing the last failure on this thread; valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn yg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn yg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Plane partitions with at most `max_boxes` boxes.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn yg_basis_c3(max_boxes: usize, out: *mut *mut YgBasis) -> YgStatus {
    guard(|| put(out, YgBasis(FixedPointBasis::c3(max_boxes)?)))
}

/// Pyramid partitions of length `m` in one sector with at most `max_stones`
/// stones.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn yg_basis_conifold(m: u32, sector: i64, max_stones: usize, out: *mut *mut YgBasis) -> YgStatus {
    guard(|| put(out, YgBasis(FixedPointBasis::conifold(m, sector, max_stones)?)))
}

/// # Safety
/// `b` must be null or a live basis handle.
#[no_mangle]
pub unsafe extern "C" fn yg_basis_dim(b: *const YgBasis) -> usize {
    b.as_ref().map_or(0, |b| b.0.dim())
}

/// # Safety
/// `b` must be null or a live basis handle.
#[no_mangle]
pub unsafe extern "C" fn yg_basis_num_levels(b: *const YgBasis) -> usize {
    b.as_ref().map_or(0, |b| b.0.levels().len())
}

/// Number of fixed points on level `n`, zero beyond the top.
///
/// # Safety
/// `b` must be null or a live basis handle.
#[no_mangle]
pub unsafe extern "C" fn yg_basis_level_size(b: *const YgBasis, n: usize) -> usize {
    b.as_ref().and_then(|b| b.0.levels().get(n)).map_or(0, Vec::len)
}

/// The labels of all levels as JSON.
///
/// # Safety
/// `b` must be a live basis handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn yg_basis_labels_json(b: *const YgBasis, out: *mut *mut c_char) -> YgStatus {
    guard(|| {
        let b = arg(b, "basis")?;
        put_string(out, serde_json::to_string(b.0.levels()).expect("serializable"))?;
        Ok(YgStatus::Ok)
    })
}

/// # Safety
/// `b` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn yg_basis_free(b: *mut YgBasis) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Parameters from rational strings such as `"3/7"`; rejects resonant
/// values.
///
/// # Safety
/// The strings must be valid C strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn yg_params_new(
    h1: *const c_char,
    h2: *const c_char,
    chi: *const c_char,
    out: *mut *mut YgParams,
) -> YgStatus {
    guard(|| {
        let rp = RationalParams::parse(text(h1, "h1")?, text(h2, "h2")?, text(chi, "chi")?).map_err(Error::from)?;
        rp.check_generic(DEFAULT_RESONANCE_BOUND).map_err(|e| Error::Resonance(e.to_string()))?;
        put(out, YgParams(rp))
    })
}

/// Random generic parameters from a seed.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn yg_params_random(seed: u64, out: *mut *mut YgParams) -> YgStatus {
    guard(|| put(out, YgParams(random_params(seed, 1, DEFAULT_RESONANCE_BOUND).remove(0))))
}

/// # Safety
/// `p` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn yg_params_free(p: *mut YgParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Builds `e_0..e_max_index` and `f_0..f_max_index` over the rationals.
///
/// # Safety
/// Handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn yg_rep_build(
    b: *const YgBasis,
    p: *const YgParams,
    max_index: u32,
    out: *mut *mut YgRep,
) -> YgStatus {
    guard(|| {
        let (b, p) = (arg(b, "basis")?, arg(p, "params")?);
        let rep = Representation::build(&b.0, &specialize::<Rational>(&p.0)?, max_index)?;
        put(out, YgRep { geometry: b.0.geometry().to_string(), params: p.0.clone(), rep })
    })
}

fn operator(r: &YgRep, kind: YgOperatorKind, index: u32) -> Result<&yangian_core::reps::SparseOperator<Rational>, Failure> {
    let family = match kind {
        YgOperatorKind::Raising => &r.rep.e,
        YgOperatorKind::Lowering => &r.rep.f,
    };
    family
        .get(index as usize)
        .ok_or_else(|| Failure::Core(Error::Format(format!("operator index {index} was not built"))))
}

/// Entry `(row, col)` of the block of an operator on source level `level`,
/// written as `"p/q"`.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn yg_rep_entry(
    r: *const YgRep,
    kind: YgOperatorKind,
    index: u32,
    level: usize,
    row: usize,
    col: usize,
    out: *mut *mut c_char,
) -> YgStatus {
    guard(|| {
        let op = operator(arg(r, "representation")?, kind, index)?;
        let block = op
            .block(level)
            .ok_or_else(|| Failure::Core(Error::Format(format!("no block on level {level}"))))?;
        if row >= block.rows || col >= block.cols {
            return Err(Failure::Core(Error::Format(format!("entry ({row}, {col}) out of range"))));
        }
        put_string(out, block.get(row, col).to_wire())?;
        Ok(YgStatus::Ok)
    })
}

/// One operator in the JSON format written by `yangian rep build`.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn yg_rep_operator_json(
    r: *const YgRep,
    kind: YgOperatorKind,
    index: u32,
    out: *mut *mut c_char,
) -> YgStatus {
    guard(|| {
        let r = arg(r, "representation")?;
        let op = operator(r, kind, index)?;
        let name = match kind {
            YgOperatorKind::Raising => format!("e_{index}"),
            YgOperatorKind::Lowering => format!("f_{index}"),
        };
        let params = serde_json::to_value(&r.params).expect("serializable");
        put_string(out, serde_json::to_string(&op.to_file(&name, &r.geometry, params)).expect("serializable"))?;
        Ok(YgStatus::Ok)
    })
}

/// # Safety
/// `r` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn yg_rep_free(r: *mut YgRep) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Runs the relation suite (`relations` is one of `all`, `ef`, `ee`,
/// `serre`, `psi`, `poles`, `shift`) under `count` specializations and
/// writes the JSON report to `report`. Returns `YG_STATUS_RELATION_FAILED`
/// when a relation does not pass; the report is written in that case too.
///
/// # Safety
/// `params` must point to `count` live handles; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn yg_check(
    b: *const YgBasis,
    params: *const *const YgParams,
    count: usize,
    imax: u32,
    relations: *const c_char,
    prime_field: bool,
    report: *mut *mut c_char,
) -> YgStatus {
    guard(|| {
        let b = arg(b, "basis")?;
        if params.is_null() || count == 0 {
            return Err(Failure::Null("params"));
        }
        let specs = (0..count)
            .map(|i| arg(*params.add(i), "params").map(|p| p.0.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let relations: RelationSet = text(relations, "relations")?.parse()?;
        let opts = SuiteOptions { imax, relations, ..SuiteOptions::default() };
        let r: SuiteReport = if prime_field {
            full_suite::<Fp>(&b.0, &specs, DEFAULT_RESONANCE_BOUND, &opts)?
        } else {
            full_suite::<Rational>(&b.0, &specs, DEFAULT_RESONANCE_BOUND, &opts)?
        };
        if !report.is_null() {
            put_string(report, serde_json::to_string(&r).expect("serializable"))?;
        }
        Ok(if r.all_ok() { YgStatus::Ok } else { YgStatus::RelationFailed })
    })
}

/// Shift `l` and the shift point written in terms of `chi`, `t` and `q`.
///
/// # Safety
/// Handles must be live; `l` and `z1` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn yg_shift(b: *const YgBasis, p: *const YgParams, l: *mut i64, z1: *mut *mut c_char) -> YgStatus {
    guard(|| {
        let (b, p) = (arg(b, "basis")?, arg(p, "params")?);
        if l.is_null() {
            return Err(Failure::Null("l"));
        }
        let opts = SuiteOptions { relations: RelationSet::Shift, ..SuiteOptions::default() };
        let r = full_suite::<Rational>(&b.0, std::slice::from_ref(&p.0), DEFAULT_RESONANCE_BOUND, &opts)?;
        let sh = r.shift.expect("shift requested");
        *l = sh.l;
        put_string(z1, sh.z1.unwrap_or_default())?;
        Ok(YgStatus::Ok)
    })
}

/// Shuffle product under `kernel` (`a1`, `jordan:c` or `c3`); `params` is
/// only read by `c3` and may be null otherwise. Inputs use the syntax of
/// `yangian shuffle mul`; the product is written as a JSON
/// exponent-coefficient map.
///
/// # Safety
/// Strings must be valid C strings; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn yg_shuffle_mul(
    kernel: *const c_char,
    params: *const YgParams,
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut c_char,
) -> YgStatus {
    guard(|| {
        let spec: KernelSpec = text(kernel, "kernel")?.parse()?;
        let rp = match (params.as_ref(), &spec) {
            (Some(p), _) => p.0.clone(),
            (None, KernelSpec::C3) => return Err(Failure::Null("params")),
            // any generic value; a1 and jordan kernels do not read it
            (None, _) => RationalParams::parse("3/7", "-11/5", "2/13").map_err(Error::from)?,
        };
        let p = specialize::<Rational>(&rp)?;
        let k = spec.kernel(&p)?;
        let prod = shuffle_mul_checked(
            &parse_sympoly::<Rational>(text(left, "left")?)?,
            &parse_sympoly::<Rational>(text(right, "right")?)?,
            &k,
        )?;
        put_string(out, serde_json::to_string(&prod.to_wire()).expect("serializable"))?;
        Ok(YgStatus::Ok)
    })
}
