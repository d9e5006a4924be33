//! C ABI over the `qnwv` library.
//!
//! Problems and search results are opaque handles owned by the caller and
//! released with their `_free` function. Fallible entry points return a
//! [`QnwvStatus`]; on failure a description is available from
//! [`qnwv_last_error_message`] on the same thread. Panics never cross the
//! boundary.
//!
//! Bit strings are passed as integers: bit `i` of the value is position `i`
//! of the input register, so `"10"` in the JSON report is the value 2.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use qnwv::classical::{brute_force, evaluate};
use qnwv::grover::{bbht_search, find_all_with, search, GroverPlan, InitSpec};
use qnwv::oracle::{compile, Backend, ExclusionSet, OracleOptions};
use qnwv::resources::{controlplane_qubits, dataplane_qubits, ControlPlaneParams, DataPlaneParams};
use qnwv::{Bits, Error, Mode, Problem};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QnwvStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed or inconsistent network/property documents.
    InvalidInput = 2,
    InvalidArgument = 3,
    ResourceLimit = 4,
    Unsupported = 5,
    /// The output buffer was too small; the required length was still written.
    BufferTooSmall = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QnwvMode {
    Dataplane = 0,
    Controlplane = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QnwvBackend {
    Diagonal = 0,
    Gate = 1,
}

/// Opaque parsed problem.
pub struct QnwvProblem {
    inner: Arc<Problem>,
}

/// Opaque search outcome.
pub struct QnwvResult {
    confirmed: Vec<u64>,
    exact_success: f64,
    success_fraction: f64,
    iterates: u64,
    rounds: u32,
    json: CString,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QnwvSearchOptions {
    /// A `QnwvBackend` value.
    pub backend: u32,
    pub midcircuit_reset: bool,
    /// Probability that each qubit starts as 0 (biased start); 0 selects the
    /// uniform start.
    pub bias: f64,
    /// Grover iterates; negative picks the default for the true solution count.
    pub iterates: i64,
    pub shots: u64,
    pub seed: u64,
    pub bbht: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QnwvDataPlaneParams {
    pub headers: u64,
    pub routers: u64,
    pub rules_per_router: u64,
    pub wildcards: u64,
    pub ports: u64,
    pub max_hops: u64,
    pub iterates: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QnwvControlPlaneParams {
    pub routers: u64,
    pub edges: u64,
    pub diameter: u64,
    pub iterates: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(QnwvStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Io { .. }
            | Error::Json(_)
            | Error::InvalidNetwork(_)
            | Error::UnknownRouter(_)
            | Error::InvalidPattern(_)
            | Error::InvalidProperty(_) => QnwvStatus::InvalidInput,
            Error::WidthMismatch { .. }
            | Error::InvalidProbability(_)
            | Error::SolutionCount { .. }
            | Error::InvalidArgument(_) => QnwvStatus::InvalidArgument,
            Error::ResourceLimit { .. } => QnwvStatus::ResourceLimit,
            Error::Unsupported(_) => QnwvStatus::Unsupported,
            _ => QnwvStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QnwvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QnwvStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            QnwvStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(QnwvStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(QnwvStatus::InvalidArgument, msg.into())
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not valid UTF-8")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn problem<'a>(p: *const QnwvProblem) -> Result<&'a Arc<Problem>, Failure> {
    p.as_ref().map(|p| &p.inner).ok_or_else(|| null("problem"))
}

/// Copies `values` into a caller buffer of `capacity` entries and stores the
/// full length in `len`. `buf` may be null when `capacity` is 0.
unsafe fn fill(values: &[u64], buf: *mut u64, capacity: usize, len: *mut usize) -> Result<(), Failure> {
    *out(len, "length output")? = values.len();
    if values.len() > capacity {
        return Err(Failure(
            QnwvStatus::BufferTooSmall,
            format!("buffer holds {capacity} values, {} needed", values.len()),
        ));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null("output buffer"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

fn parse_mode(raw: u32) -> Result<Mode, Failure> {
    match raw {
        0 => Ok(Mode::Dataplane),
        1 => Ok(Mode::Controlplane),
        _ => Err(invalid(format!("unknown mode {raw}"))),
    }
}

fn parse_backend(raw: u32) -> Result<Backend, Failure> {
    match raw {
        0 => Ok(Backend::Diagonal),
        1 => Ok(Backend::GateLevel),
        _ => Err(invalid(format!("unknown backend {raw}"))),
    }
}

fn values(set: &BTreeSet<Bits>) -> Vec<u64> {
    set.iter().map(Bits::value).collect()
}

fn json_string(s: serde_json::Result<String>) -> Result<CString, Failure> {
    let s = s.map_err(|e| Failure(QnwvStatus::Internal, e.to_string()))?;
    CString::new(s).map_err(|e| Failure(QnwvStatus::Internal, e.to_string()))
}

/// Message for the most recent failure on this thread, or an empty string.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qnwv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn qnwv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a network and a property document. `mode` is a `QnwvMode` value.
///
/// # Safety
/// `network` and `property` must be NUL-terminated strings; `out_problem` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qnwv_problem_from_json(
    mode: u32,
    network: *const c_char,
    property: *const c_char,
    out_problem: *mut *mut QnwvProblem,
) -> QnwvStatus {
    guard(|| {
        let slot = out(out_problem, "problem output")?;
        *slot = ptr::null_mut();
        let m = parse_mode(mode)?;
        let p = Problem::from_documents(m, text(network, "network")?, text(property, "property")?)?;
        *slot = Box::into_raw(Box::new(QnwvProblem { inner: Arc::new(p) }));
        Ok(())
    })
}

/// # Safety
/// `p` must come from [`qnwv_problem_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qnwv_problem_free(p: *mut QnwvProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of input bits: header bits for the data plane, edges for the
/// control plane.
///
/// # Safety
/// `p` must be a live problem handle and `width` writable.
#[no_mangle]
pub unsafe extern "C" fn qnwv_problem_width(p: *const QnwvProblem, width: *mut usize) -> QnwvStatus {
    guard(|| {
        *out(width, "width output")? = problem(p)?.width();
        Ok(())
    })
}

/// Classical check of one input.
///
/// # Safety
/// `p` must be a live problem handle and `holds` writable.
#[no_mangle]
pub unsafe extern "C" fn qnwv_problem_evaluate(p: *const QnwvProblem, input: u64, holds: *mut bool) -> QnwvStatus {
    guard(|| {
        let problem = problem(p)?;
        let x = problem.instance(input)?;
        *out(holds, "result output")? = evaluate(problem, x)?;
        Ok(())
    })
}

/// Every input that satisfies the property, in increasing order. On
/// `QNWV_STATUS_BUFFER_TOO_SMALL` the required length is still stored in `len`.
///
/// # Safety
/// `p` must be a live problem handle, `len` writable and `buf` valid for
/// `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn qnwv_bruteforce(
    p: *const QnwvProblem,
    buf: *mut u64,
    capacity: usize,
    len: *mut usize,
) -> QnwvStatus {
    guard(|| {
        let found: Vec<u64> = brute_force(problem(p)?)?.iter().map(Bits::value).collect();
        fill(&found, buf, capacity, len)
    })
}

/// Defaults: diagonal backend, reset mode, uniform start, default iterates,
/// 10000 shots, seed 0.
#[no_mangle]
pub extern "C" fn qnwv_search_options_default() -> QnwvSearchOptions {
    QnwvSearchOptions {
        backend: QnwvBackend::Diagonal as u32,
        midcircuit_reset: true,
        bias: 0.0,
        iterates: -1,
        shots: 10_000,
        seed: 0,
        bbht: false,
    }
}

/// One Grover search.
///
/// # Safety
/// `p` must be a live problem handle, `options` readable and `out_result`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qnwv_search(
    p: *const QnwvProblem,
    options: *const QnwvSearchOptions,
    out_result: *mut *mut QnwvResult,
) -> QnwvStatus {
    guard(|| {
        let slot = out(out_result, "result output")?;
        *slot = ptr::null_mut();
        let problem = problem(p)?;
        let o = options.as_ref().ok_or_else(|| null("options"))?;
        let init = if o.bias == 0.0 {
            InitSpec::Uniform
        } else {
            InitSpec::Biased { p: o.bias }
        };
        let oracle = compile(
            problem.clone(),
            parse_backend(o.backend)?,
            OracleOptions {
                midcircuit_reset: o.midcircuit_reset,
            },
            &ExclusionSet::new(),
        )?;
        let mut plan = GroverPlan::new(Arc::new(oracle), init, o.shots, o.seed)?;
        if o.iterates >= 0 {
            if o.bbht {
                return Err(invalid("iterates cannot be fixed for the BBHT search"));
            }
            plan = plan.with_iterates(o.iterates as u64);
        }
        let r = if o.bbht { bbht_search(&plan)? } else { search(&plan)? };
        *slot = Box::into_raw(Box::new(QnwvResult {
            confirmed: values(&r.confirmed),
            exact_success: r.exact_success,
            success_fraction: r.success_fraction,
            iterates: r.iterates,
            rounds: 1,
            json: json_string(serde_json::to_string(&r))?,
        }));
        Ok(())
    })
}

/// Repeated searches with found solutions excluded, for at most `budget`
/// rounds. Round `i` uses seed `seed + i`.
///
/// # Safety
/// `p` must be a live problem handle and `out_result` writable.
#[no_mangle]
pub unsafe extern "C" fn qnwv_find_all(
    p: *const QnwvProblem,
    backend: u32,
    budget: u32,
    shots: u64,
    seed: u64,
    out_result: *mut *mut QnwvResult,
) -> QnwvStatus {
    guard(|| {
        let slot = out(out_result, "result output")?;
        *slot = ptr::null_mut();
        let problem = problem(p)?;
        let r = find_all_with(
            problem.clone(),
            budget,
            shots,
            seed,
            parse_backend(backend)?,
            OracleOptions::default(),
        )?;
        let first = r.history.first();
        *slot = Box::into_raw(Box::new(QnwvResult {
            confirmed: values(&r.solutions),
            exact_success: first.map_or(0.0, |h| h.exact_success),
            success_fraction: first.map_or(0.0, |h| h.success_fraction),
            iterates: first.map_or(0, |h| h.iterates),
            rounds: r.rounds,
            json: json_string(serde_json::to_string(&r))?,
        }));
        Ok(())
    })
}

/// # Safety
/// `r` must come from a search function and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qnwv_result_free(r: *mut QnwvResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Confirmed solutions in increasing order; same buffer contract as
/// [`qnwv_bruteforce`].
///
/// # Safety
/// `r` must be a live result handle, `len` writable and `buf` valid for
/// `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn qnwv_result_confirmed(
    r: *const QnwvResult,
    buf: *mut u64,
    capacity: usize,
    len: *mut usize,
) -> QnwvStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("result"))?;
        fill(&r.confirmed, buf, capacity, len)
    })
}

/// Marked probability of the final state (first round for `find_all`).
///
/// # Safety
/// `r` must be a live result handle or null (which yields NaN).
#[no_mangle]
pub unsafe extern "C" fn qnwv_result_exact_success(r: *const QnwvResult) -> f64 {
    r.as_ref().map_or(f64::NAN, |r| r.exact_success)
}

/// Fraction of shots that landed on a confirmed solution.
///
/// # Safety
/// `r` must be a live result handle or null (which yields NaN).
#[no_mangle]
pub unsafe extern "C" fn qnwv_result_success_fraction(r: *const QnwvResult) -> f64 {
    r.as_ref().map_or(f64::NAN, |r| r.success_fraction)
}

/// # Safety
/// `r` must be a live result handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn qnwv_result_iterates(r: *const QnwvResult) -> u64 {
    r.as_ref().map_or(0, |r| r.iterates)
}

/// # Safety
/// `r` must be a live result handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn qnwv_result_rounds(r: *const QnwvResult) -> u32 {
    r.as_ref().map_or(0, |r| r.rounds)
}

/// Full result as JSON, owned by the handle.
///
/// # Safety
/// `r` must be a live result handle or null (which yields null).
#[no_mangle]
pub unsafe extern "C" fn qnwv_result_json(r: *const QnwvResult) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// Closed-form data-plane qubit count.
///
/// # Safety
/// `params` must be readable and `qubits` writable.
#[no_mangle]
pub unsafe extern "C" fn qnwv_estimate_dataplane(
    params: *const QnwvDataPlaneParams,
    midcircuit_reset: bool,
    qubits: *mut u64,
) -> QnwvStatus {
    guard(|| {
        let p = params.as_ref().ok_or_else(|| null("parameters"))?;
        let params = DataPlaneParams {
            headers: p.headers,
            routers: p.routers,
            rules_per_router: p.rules_per_router,
            wildcards: p.wildcards,
            ports: p.ports,
            max_hops: p.max_hops,
            iterates: p.iterates,
        };
        *out(qubits, "qubit output")? = dataplane_qubits(&params, midcircuit_reset)?;
        Ok(())
    })
}

/// Closed-form control-plane qubit count.
///
/// # Safety
/// `params` must be readable and `qubits` writable.
#[no_mangle]
pub unsafe extern "C" fn qnwv_estimate_controlplane(
    params: *const QnwvControlPlaneParams,
    midcircuit_reset: bool,
    qubits: *mut u64,
) -> QnwvStatus {
    guard(|| {
        let p = params.as_ref().ok_or_else(|| null("parameters"))?;
        let params = ControlPlaneParams {
            routers: p.routers,
            edges: p.edges,
            diameter: p.diameter,
            iterates: p.iterates,
        };
        *out(qubits, "qubit output")? = controlplane_qubits(&params, midcircuit_reset)?;
        Ok(())
    })
}
