//! C ABI for the quivalg library.
//!
//! Graphs travel as opaque handles, results as JSON strings or plain
//! integers, failures as status codes with a per-thread error message.
//! Every returned string is owned by the caller and must be released
//! with [`qg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use quivalg::chars::ball_dimension;
use quivalg::dot::graph_to_dot;
use quivalg::fock::{build_truncated_rep, verify_relations};
use quivalg::graph::DirectedGraph;
use quivalg::nestrep::edge_count_via_radical;
use quivalg::reconstruct::{reconstruct_graph, verify_roundtrip};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ComputeError = 4,
}

/// Opaque graph handle.
pub struct QgGraph {
    inner: DirectedGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn to_owned_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .unwrap_or_default()
        .into_raw()
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, QgStatus> {
    if ptr.is_null() {
        set_error("null pointer argument");
        return Err(QgStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        QgStatus::InvalidUtf8
    })
}

unsafe fn graph_ref<'a>(g: *const QgGraph) -> Result<&'a DirectedGraph, QgStatus> {
    if g.is_null() {
        set_error("null graph handle");
        return Err(QgStatus::NullArgument);
    }
    Ok(&(*g).inner)
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn qg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread; valid until the
/// next failing call from the same thread. Do not free.
#[no_mangle]
pub extern "C" fn qg_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned by a `qg_*` function that
/// documents string ownership, or null.
#[no_mangle]
pub unsafe extern "C" fn qg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the JSON document form of a graph into a fresh handle.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid
/// location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_parse_json(
    json: *const c_char,
    out: *mut *mut QgGraph,
) -> QgStatus {
    if out.is_null() {
        set_error("null output pointer");
        return QgStatus::NullArgument;
    }
    let text = match read_str(json) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match DirectedGraph::parse_json(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(QgGraph { inner }));
            QgStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            QgStatus::ParseError
        }
    }
}

/// Releases a graph handle.
///
/// # Safety
/// `g` must come from `qg_graph_parse_json` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_free(g: *mut QgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_vertex_count(g: *const QgGraph) -> usize {
    graph_ref(g).map(|g| g.vertex_count()).unwrap_or(0)
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_edge_count(g: *const QgGraph) -> usize {
    graph_ref(g).map(|g| g.edge_count()).unwrap_or(0)
}

/// DOT rendering of the graph. The caller owns the string.
///
/// # Safety
/// `g` must be a live graph handle; `out` must hold one pointer.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_to_dot(g: *const QgGraph, out: *mut *mut c_char) -> QgStatus {
    if out.is_null() {
        set_error("null output pointer");
        return QgStatus::NullArgument;
    }
    match graph_ref(g) {
        Ok(graph) => {
            *out = to_owned_c_string(graph_to_dot(graph));
            QgStatus::Ok
        }
        Err(status) => status,
    }
}

/// Number of loop edges at a vertex (the character-ball dimension).
///
/// # Safety
/// `g` live handle, `vertex` NUL-terminated, `out` valid for one value.
#[no_mangle]
pub unsafe extern "C" fn qg_ball_dimension(
    g: *const QgGraph,
    vertex: *const c_char,
    out: *mut usize,
) -> QgStatus {
    if out.is_null() {
        set_error("null output pointer");
        return QgStatus::NullArgument;
    }
    let graph = match graph_ref(g) {
        Ok(gr) => gr,
        Err(status) => return status,
    };
    let vertex = match read_str(vertex) {
        Ok(v) => v,
        Err(status) => return status,
    };
    match ball_dimension(graph, vertex) {
        Ok(dim) => {
            *out = dim;
            QgStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            QgStatus::ComputeError
        }
    }
}

/// Edge count from `from` to `to`, recovered through the radical probe.
///
/// # Safety
/// `g` live handle; `from`/`to` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qg_edge_count_via_radical(
    g: *const QgGraph,
    from: *const c_char,
    to: *const c_char,
    seed: u64,
    out: *mut usize,
) -> QgStatus {
    if out.is_null() {
        set_error("null output pointer");
        return QgStatus::NullArgument;
    }
    let graph = match graph_ref(g) {
        Ok(gr) => gr,
        Err(status) => return status,
    };
    let (from, to) = match (read_str(from), read_str(to)) {
        (Ok(f), Ok(t)) => (f, t),
        (Err(status), _) | (_, Err(status)) => return status,
    };
    match edge_count_via_radical(graph, from, to, seed) {
        Ok(count) => {
            *out = count;
            QgStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            QgStatus::ComputeError
        }
    }
}

/// JSON relation report for the truncated representation at `level`.
/// The caller owns the string.
///
/// # Safety
/// `g` live handle; `out` valid for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qg_relations_json(
    g: *const QgGraph,
    level: usize,
    out: *mut *mut c_char,
) -> QgStatus {
    if out.is_null() {
        set_error("null output pointer");
        return QgStatus::NullArgument;
    }
    let graph = match graph_ref(g) {
        Ok(gr) => gr,
        Err(status) => return status,
    };
    match build_truncated_rep(graph, level) {
        Ok(fock) => {
            let report = verify_relations(graph, &fock);
            let json = serde_json::to_string(&report).unwrap_or_default();
            *out = to_owned_c_string(json);
            QgStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            QgStatus::ComputeError
        }
    }
}

/// JSON reconstruction result (ball dimensions, pair counts,
/// provenance). The caller owns the string.
///
/// # Safety
/// `g` live handle; `out` valid for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qg_reconstruct_json(
    g: *const QgGraph,
    seed: u64,
    out: *mut *mut c_char,
) -> QgStatus {
    if out.is_null() {
        set_error("null output pointer");
        return QgStatus::NullArgument;
    }
    let graph = match graph_ref(g) {
        Ok(gr) => gr,
        Err(status) => return status,
    };
    match reconstruct_graph(graph, seed) {
        Ok(r) => {
            let json = serde_json::to_string(&r).unwrap_or_default();
            *out = to_owned_c_string(json);
            QgStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            QgStatus::ComputeError
        }
    }
}

/// Runs the reconstruction round trip with three scrambles; writes 1 for
/// pass, 0 for fail.
///
/// # Safety
/// `g` live handle; `out_pass` valid for one value.
#[no_mangle]
pub unsafe extern "C" fn qg_verify_roundtrip(
    g: *const QgGraph,
    seed: u64,
    out_pass: *mut i32,
) -> QgStatus {
    if out_pass.is_null() {
        set_error("null output pointer");
        return QgStatus::NullArgument;
    }
    let graph = match graph_ref(g) {
        Ok(gr) => gr,
        Err(status) => return status,
    };
    match verify_roundtrip(graph, seed, &[1, 2, 3]) {
        Ok(report) => {
            *out_pass = i32::from(report.pass);
            QgStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            QgStatus::ComputeError
        }
    }
}
