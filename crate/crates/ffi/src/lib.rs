//! C ABI over `persilat`.
//!
//! Diagrams cross the boundary as opaque `PersilatDiagram` handles created
//! by [`persilat_diagram_parse`] and released by [`persilat_diagram_free`].
//! Every fallible call returns a [`PersilatStatus`]; on failure the message
//! is available from [`persilat_last_error`] on the same thread until the
//! next call. Strings returned to the caller are owned by the caller and
//! must be released with [`persilat_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use persilat::diagram::Shape;
use persilat::io::{emit_dot, parse_str, IoError, LoadOptions};
use persilat::lattice::{FreeLattice, LatticeError};
use persilat::realize::{largest_injective, rank_invariant, RealizeError};
use persilat::zigzag::{ZigZag, ZigZagError};
use persilat::Diagram;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PersilatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or a file that does not match the format.
    ParseError = 3,
    /// Well-formed file describing an invalid diagram.
    InvalidDiagram = 4,
    /// Unknown node, wrong shape or another domain error.
    DomainError = 5,
    BudgetExceeded = 6,
    /// A Rust panic was caught at the boundary.
    Internal = 7,
}

/// Opaque diagram handle.
pub struct PersilatDiagram {
    inner: Diagram,
}

/// Outcome of a pairwise rank computation.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PersilatRankReport {
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_meet: usize,
    pub dim_join: usize,
    pub rank: usize,
    pub leg_agreement: bool,
    pub ses_ok: bool,
    pub iterations: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(text).expect("NULs removed")));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(PersilatStatus, String);

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let status = match e {
            IoError::Diagram(_) => PersilatStatus::InvalidDiagram,
            _ => PersilatStatus::ParseError,
        };
        Failure(status, e.to_string())
    }
}

impl From<RealizeError> for Failure {
    fn from(e: RealizeError) -> Self {
        Failure(PersilatStatus::DomainError, e.to_string())
    }
}

impl From<ZigZagError> for Failure {
    fn from(e: ZigZagError) -> Self {
        Failure(PersilatStatus::DomainError, e.to_string())
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        let status = match e {
            LatticeError::BudgetExceeded { .. } => PersilatStatus::BudgetExceeded,
            _ => PersilatStatus::DomainError,
        };
        Failure(status, e.to_string())
    }
}

/// Run `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PersilatStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PersilatStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error: panic caught at the C boundary");
            PersilatStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(PersilatStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(PersilatStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(d: *const PersilatDiagram) -> Result<&'a Diagram, Failure> {
    d.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Failure(PersilatStatus::NullPointer, "diagram handle is NULL".into()))
}

fn null_out(what: &str) -> Failure {
    Failure(PersilatStatus::NullPointer, format!("{what} is NULL"))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw()
}

/// Parse a JSON diagram. On success `*out` owns a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn persilat_diagram_parse(
    json: *const c_char,
    field_check: bool,
    out: *mut *mut PersilatDiagram,
) -> PersilatStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        *out = ptr::null_mut();
        let json = text(json, "json")?;
        let loaded = parse_str(json, LoadOptions { field_check })?;
        *out = Box::into_raw(Box::new(PersilatDiagram { inner: loaded.diagram }));
        Ok(())
    })
}

/// Release a handle. NULL is ignored.
///
/// # Safety
/// `d` must come from [`persilat_diagram_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn persilat_diagram_free(d: *mut PersilatDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of nodes, or 0 for NULL.
///
/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn persilat_diagram_node_count(d: *const PersilatDiagram) -> usize {
    d.as_ref().map_or(0, |h| h.inner.len())
}

/// Pairwise rank invariant of nodes `a` and `b`.
///
/// # Safety
/// `d` must be a live handle, `a` and `b` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn persilat_rank(
    d: *const PersilatDiagram,
    a: *const c_char,
    b: *const c_char,
    out: *mut PersilatRankReport,
) -> PersilatStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null_out("out"))?;
        let d = handle(d)?;
        let (a, b) = (text(a, "a")?, text(b, "b")?);
        let (a, b) = (node(d, a)?, node(d, b)?);
        let r = rank_invariant(d, a, b)?;
        *out = PersilatRankReport {
            dim_a: r.dim_a,
            dim_b: r.dim_b,
            dim_meet: r.dim_meet,
            dim_join: r.dim_join,
            rank: r.rank,
            leg_agreement: r.leg_agreement,
            ses_ok: r.ses_ok,
            iterations: r.iterations,
        };
        Ok(())
    })
}

fn node(d: &Diagram, id: &str) -> Result<persilat::NodeIx, Failure> {
    d.node(id).map_err(|e| Failure(PersilatStatus::DomainError, e.to_string()))
}

/// Rank of the largest injective persistence map of the whole diagram.
///
/// # Safety
/// `d` must be a live handle and `rank` writable.
#[no_mangle]
pub unsafe extern "C" fn persilat_largest_injective(d: *const PersilatDiagram, rank: *mut usize) -> PersilatStatus {
    guard(|| {
        let rank = rank.as_mut().ok_or_else(|| null_out("rank"))?;
        *rank = largest_injective(handle(d)?)?.rank;
        Ok(())
    })
}

/// Zig-zag rank between nodes `a` and `b` of a zig-zag-tagged diagram.
/// Both must sit at source positions of the normalized zig-zag.
///
/// # Safety
/// `d` must be a live handle, `a` and `b` NUL-terminated, `rank` writable.
#[no_mangle]
pub unsafe extern "C" fn persilat_zigzag_rank(
    d: *const PersilatDiagram,
    a: *const c_char,
    b: *const c_char,
    rank: *mut usize,
) -> PersilatStatus {
    guard(|| {
        let rank = rank.as_mut().ok_or_else(|| null_out("rank"))?;
        let d = handle(d)?;
        let (a, b) = (node(d, text(a, "a")?)?, node(d, text(b, "b")?)?);
        let (z, positions) = ZigZag::from_diagram(d)?;
        let Shape::ZigZag { order } = d.shape() else {
            unreachable!("from_diagram checked the shape");
        };
        let at = |v| positions[order.iter().position(|&w| w == v).expect("order lists every node")];
        *rank = z.zz_rank(at(a), at(b))?;
        Ok(())
    })
}

/// Heyting implication `a ⇒ b` as a normal-form string.
///
/// # Safety
/// `d` must be a live handle, `a` and `b` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn persilat_implies(
    d: *const PersilatDiagram,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> PersilatStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        *out = ptr::null_mut();
        let l = FreeLattice::from_diagram(handle(d)?);
        let (a, b) = (l.generator(text(a, "a")?)?, l.generator(text(b, "b")?)?);
        *out = owned_string(l.display(&l.implies(&a, &b)));
        Ok(())
    })
}

/// Hasse diagram of the generated lattice as DOT text, enumerating at most
/// `budget` elements.
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn persilat_hasse_dot(
    d: *const PersilatDiagram,
    budget: usize,
    out: *mut *mut c_char,
) -> PersilatStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        *out = ptr::null_mut();
        let d = handle(d)?;
        let dot = if d.is_empty() {
            emit_dot(&[], &[])
        } else {
            let l = FreeLattice::from_diagram(d);
            let e = l.enumerate_elements(budget);
            if !e.complete {
                return Err(LatticeError::BudgetExceeded { budget }.into());
            }
            let labels: Vec<String> = e.elements.iter().map(|t| l.display(t)).collect();
            emit_dot(&labels, &l.hasse_edges(&e.elements))
        };
        *out = owned_string(dot);
        Ok(())
    })
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn persilat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn persilat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn persilat_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}
