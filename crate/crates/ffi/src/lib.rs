//! C ABI over `zfthrottle`.
//!
//! Graphs are opaque `ZftGraph` handles owned by the caller and released
//! with `zft_graph_free`. Every fallible call returns a `ZftStatus`; on
//! failure `zft_last_error_message` describes the error on the calling
//! thread. Strings handed out (`char **out`) must be released with
//! `zft_string_free`. Vertex sets cross the boundary as `uint32_t` bitmasks.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use zfthrottle::catalog::{classify_th_eq_n, classify_thplus, contains_gk_member, ThPlusClass};
use zfthrottle::extension::{characterization_certificate, Flavor};
use zfthrottle::forcing::{min_propagation_floor, propagate_deterministic, Rule};
use zfthrottle::graph::{emit_graph6, parse_graph6};
use zfthrottle::harness::spectral_radius;
use zfthrottle::throttle::throttling_number;
use zfthrottle::{Error, Graph, VertexSet};

/// Opaque graph handle.
pub struct ZftGraph(Graph);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZftStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidEdge = 4,
    Capacity = 5,
    Domain = 6,
    Usage = 7,
    Script = 8,
    Internal = 9,
    Io = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZftRule {
    Z = 0,
    ZFloor = 1,
    ZPlus = 2,
    ZPlusFloor = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZftFlavor {
    Psd = 0,
    PsdFloor = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZftThPlusClass {
    EqualsN = 0,
    EqualsNMinus1 = 1,
    Below = 2,
}

impl From<ZftRule> for Rule {
    fn from(r: ZftRule) -> Rule {
        match r {
            ZftRule::Z => Rule::Z,
            ZftRule::ZFloor => Rule::ZFloor,
            ZftRule::ZPlus => Rule::ZPlus,
            ZftRule::ZPlusFloor => Rule::ZPlusFloor,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ZftStatus {
    match e {
        Error::Parse { .. } => ZftStatus::Parse,
        Error::InvalidEdge { .. } => ZftStatus::InvalidEdge,
        Error::Capacity { .. } => ZftStatus::Capacity,
        Error::Domain(_) => ZftStatus::Domain,
        Error::Usage(_) => ZftStatus::Usage,
        Error::Script(_) => ZftStatus::Script,
        Error::Internal(_) => ZftStatus::Internal,
        Error::Io(_) => ZftStatus::Io,
    }
}

enum Failure {
    Status(ZftStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

fn null() -> Failure {
    Failure::Status(ZftStatus::NullPointer, "unexpected null pointer".into())
}

/// Runs `body`, turning errors and panics into a status plus message.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ZftStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ZftStatus::Ok
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Status(s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("panic inside zfthrottle".into());
            ZftStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const ZftGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.0).ok_or_else(null)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::Status(ZftStatus::Internal, "string with interior nul".into()))?;
    write_out(out, c.into_raw())
}

fn mask_set(g: &Graph, mask: u32) -> Result<VertexSet, Failure> {
    let set = VertexSet(mask);
    if !set.is_subset(g.vertices()) {
        return Err(Failure::Status(ZftStatus::Usage, format!("mask {mask:#x} names vertices outside the graph")));
    }
    Ok(set)
}

/// Message for the last failed call on this thread, or null after a
/// success. Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn zft_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn zft_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph6 string into a new handle.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn zft_graph_from_graph6(text: *const c_char, out: *mut *mut ZftGraph) -> ZftStatus {
    guard(|| {
        if text.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure::Status(ZftStatus::InvalidUtf8, e.to_string()))?;
        let g = parse_graph6(s.trim())?;
        write_out(out, Box::into_raw(Box::new(ZftGraph(g))))
    })
}

/// Builds a graph from `edge_count` pairs stored flat in `endpoints`.
///
/// # Safety
/// `endpoints` must hold `2 * edge_count` values (it may be null when
/// `edge_count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zft_graph_from_edges(
    n: usize,
    endpoints: *const usize,
    edge_count: usize,
    out: *mut *mut ZftGraph,
) -> ZftStatus {
    guard(|| {
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else if endpoints.is_null() {
            return Err(null());
        } else {
            std::slice::from_raw_parts(endpoints, 2 * edge_count)
        };
        let edges: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let g = Graph::from_edges(n, &edges)?;
        write_out(out, Box::into_raw(Box::new(ZftGraph(g))))
    })
}

/// # Safety
/// `g` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn zft_graph_free(g: *mut ZftGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zft_graph_order(g: *const ZftGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.n())
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zft_graph_edge_count(g: *const ZftGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.edge_count())
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zft_graph_to_graph6(g: *const ZftGraph, out: *mut *mut c_char) -> ZftStatus {
    guard(|| write_string(out, emit_graph6(graph_ref(g)?)))
}

/// Throttling number with an optimal initial set (as a bitmask) and its
/// propagation time. Any of the output pointers may be null.
///
/// # Safety
/// `g` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn zft_throttling_number(
    g: *const ZftGraph,
    rule: ZftRule,
    th: *mut usize,
    initial: *mut u32,
    pt: *mut usize,
) -> ZftStatus {
    guard(|| {
        let cert = throttling_number(rule.into(), graph_ref(g)?)?;
        if !th.is_null() {
            th.write(cert.th);
        }
        if !initial.is_null() {
            initial.write(cert.schedule.initial.bits());
        }
        if !pt.is_null() {
            pt.write(cert.pt);
        }
        Ok(())
    })
}

/// The full throttling certificate as JSON.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zft_throttling_certificate_json(
    g: *const ZftGraph,
    rule: ZftRule,
    out: *mut *mut c_char,
) -> ZftStatus {
    guard(|| {
        let cert = throttling_number(rule.into(), graph_ref(g)?)?;
        write_string(out, serde_json::to_string(&cert).expect("certificate serializes"))
    })
}

/// Propagation time of `initial`. `*forces_all` is set to false (and `*pt`
/// left untouched) when the set does not color the whole graph.
///
/// # Safety
/// `g` must be a live handle; `pt` and `forces_all` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zft_propagation_time(
    g: *const ZftGraph,
    rule: ZftRule,
    initial: u32,
    pt: *mut usize,
    forces_all: *mut bool,
) -> ZftStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let blue = mask_set(g, initial)?;
        let rule: Rule = rule.into();
        let schedule = if rule.is_floor() {
            min_propagation_floor(rule, g, blue)?
        } else {
            propagate_deterministic(rule, g, blue)?.into_complete()
        };
        match schedule {
            Some(s) => {
                write_out(pt, s.pt())?;
                write_out(forces_all, true)
            }
            None => write_out(forces_all, false),
        }
    })
}

/// Whether a connected graph has `th = n`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zft_classify_th_eq_n(g: *const ZftGraph, out: *mut bool) -> ZftStatus {
    guard(|| write_out(out, classify_th_eq_n(graph_ref(g)?)?))
}

/// Where `th+` sits relative to `n` for a connected graph.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zft_classify_thplus(g: *const ZftGraph, out: *mut ZftThPlusClass) -> ZftStatus {
    guard(|| {
        let class = match classify_thplus(graph_ref(g)?)? {
            ThPlusClass::EqualsN => ZftThPlusClass::EqualsN,
            ThPlusClass::EqualsNMinus1 => ZftThPlusClass::EqualsNMinus1,
            ThPlusClass::Below => ZftThPlusClass::Below,
        };
        write_out(out, class)
    })
}

/// Whether `g` contains an induced member of the forbidden family for `k`
/// (`-1 <= k <= 2`).
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zft_contains_forbidden_member(g: *const ZftGraph, k: i64, out: *mut bool) -> ZftStatus {
    guard(|| write_out(out, contains_gk_member(graph_ref(g)?, k)?.is_some()))
}

/// Contraction/deletion script certifying throttling at most `t`, as JSON,
/// or the string `null` when none exists.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zft_characterization_certificate_json(
    g: *const ZftGraph,
    t: usize,
    flavor: ZftFlavor,
    out: *mut *mut c_char,
) -> ZftStatus {
    guard(|| {
        let flavor = match flavor {
            ZftFlavor::Psd => Flavor::Psd,
            ZftFlavor::PsdFloor => Flavor::PsdFloor,
        };
        let script = characterization_certificate(graph_ref(g)?, t, flavor)?;
        write_string(out, serde_json::to_string(&script).expect("script serializes"))
    })
}

/// Largest adjacency eigenvalue.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zft_spectral_radius(g: *const ZftGraph, out: *mut f64) -> ZftStatus {
    guard(|| write_out(out, spectral_radius(graph_ref(g)?)))
}
