//! C interface to `mesonet`.
//!
//! Every object crosses the boundary as an opaque pointer created by a
//! `*_new`/`*_read`/`mesonet_generate` call and released with the matching
//! `*_free`. Fallible functions return a [`MesonetStatus`]; on failure the
//! message is kept per thread and can be read with
//! [`mesonet_last_error_message`]. Panics never unwind into C: they are
//! caught and reported as `MESONET_STATUS_PANIC`.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use mesonet::decomposition::{k_shell, s_shell, ShellMap};
use mesonet::metrics::{fit_quantity, Quantity};
use mesonet::{corecheck, generate, io, Error, LabeledGraph, ModelParams, NodeType};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MesonetStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidParams = 2,
    /// Self-loop, unknown node or bad edge weight.
    InvalidGraph = 3,
    /// Not enough nodes, edges or samples for the requested analysis.
    InsufficientData = 4,
    Io = 5,
    /// Malformed input file or JSON.
    Format = 6,
    /// The caller's buffer is too small; the required length was written.
    BufferTooSmall = 7,
    Panic = 8,
}

/// Growth-model parameters.
pub struct MesonetParams(ModelParams);

/// Labeled, weighted, undirected graph.
pub struct MesonetGraph(LabeledGraph);

/// Shell index of every node of a graph.
pub struct MesonetShells(ShellMap);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> MesonetStatus {
    match e {
        Error::InvalidParams(_) => MesonetStatus::InvalidParams,
        Error::SelfLoop(_) | Error::UnknownNode(_) | Error::InvalidWeight(_) => MesonetStatus::InvalidGraph,
        Error::EmptyGraph
        | Error::NoEdges
        | Error::InsufficientSamples { .. }
        | Error::IsolatedNode(_)
        | Error::EmptyMarkedCore => MesonetStatus::InsufficientData,
        Error::Io(_) => MesonetStatus::Io,
        Error::Parse { .. } | Error::Format(_) | Error::Json(_) => MesonetStatus::Format,
    }
}

/// Runs `f`, records any error or panic, and converts the outcome to a status.
fn guard(f: impl FnOnce() -> Result<(), (MesonetStatus, String)>) -> MesonetStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MesonetStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            MesonetStatus::Panic
        }
    }
}

type Fallible<T> = Result<T, (MesonetStatus, String)>;

fn lib<T>(r: mesonet::Result<T>) -> Fallible<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (MesonetStatus, String) {
    (MesonetStatus::NullArgument, format!("{what} is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Fallible<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn borrow_mut<'a, T>(p: *mut T, what: &str) -> Fallible<&'a mut T> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn out<T>(p: *mut T, value: T, what: &str) -> Fallible<()> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(value);
    Ok(())
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Fallible<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (MesonetStatus::Format, format!("{what} is not valid UTF-8")))
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next `mesonet_*` call on the same thread.
#[no_mangle]
pub extern "C" fn mesonet_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static, NUL-terminated name of a status code.
#[no_mangle]
pub extern "C" fn mesonet_status_name(status: MesonetStatus) -> *const c_char {
    let s: &'static CStr = match status {
        MesonetStatus::Ok => c"ok",
        MesonetStatus::NullArgument => c"null argument",
        MesonetStatus::InvalidParams => c"invalid parameters",
        MesonetStatus::InvalidGraph => c"invalid graph",
        MesonetStatus::InsufficientData => c"insufficient data",
        MesonetStatus::Io => c"i/o error",
        MesonetStatus::Format => c"format error",
        MesonetStatus::BufferTooSmall => c"buffer too small",
        MesonetStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn mesonet_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains a nul"),
    };
    VERSION.as_ptr()
}

// ---- parameters ----

/// Default parameters for model A (`weighted == false`) or model B.
#[no_mangle]
pub extern "C" fn mesonet_params_new(weighted: bool) -> *mut MesonetParams {
    let p = if weighted { ModelParams::model_b() } else { ModelParams::model_a() };
    Box::into_raw(Box::new(MesonetParams(p)))
}

/// Parses a JSON parameter document; missing fields take their defaults.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mesonet_params_from_json(json: *const c_char, out_params: *mut *mut MesonetParams) -> MesonetStatus {
    guard(|| {
        let text = c_str(json, "json")?;
        let p: ModelParams = serde_json::from_str(text).map_err(|e| (MesonetStatus::Format, e.to_string()))?;
        lib(p.validate())?;
        out(out_params, Box::into_raw(Box::new(MesonetParams(p))), "out_params")
    })
}

/// Sets one numeric parameter by name: `c`, `n0`, `p`, `m`, `f`, `q`, `r`,
/// `w0`, `delta`, `steps`, `nodes` (final node count) or `seed`. Integer
/// parameters reject fractional or negative values.
///
/// # Safety
/// `params` must come from this library; `name` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn mesonet_params_set(params: *mut MesonetParams, name: *const c_char, value: f64) -> MesonetStatus {
    guard(|| {
        let p = &mut borrow_mut(params, "params")?.0;
        let name = c_str(name, "name")?;
        let bad = |msg: String| (MesonetStatus::InvalidParams, msg);
        let int = |v: f64| -> Fallible<u64> {
            if v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 {
                Ok(v as u64)
            } else {
                Err(bad(format!("{name} must be a nonnegative integer, got {v}")))
            }
        };
        let small = |v: f64| -> Fallible<u32> {
            u32::try_from(int(v)?).map_err(|_| bad(format!("{name} is out of range: {v}")))
        };
        match name {
            "c" => p.c = small(value)?,
            "n0" => p.n0 = small(value)?,
            "m" => p.m = small(value)?,
            "p" => p.p = value,
            "f" => p.f = value,
            "q" => p.q = value,
            "r" => p.r = value,
            "w0" => p.w0 = value,
            "delta" => p.delta = value,
            "steps" => p.steps = int(value)?,
            "seed" => p.seed = int(value)?,
            "nodes" => *p = lib(p.clone().with_nodes(int(value)?))?,
            other => return Err(bad(format!("unknown parameter `{other}`"))),
        }
        Ok(())
    })
}

/// # Safety
/// `params` must come from this library (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mesonet_params_free(params: *mut MesonetParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

// ---- graphs ----

/// Runs the growth model.
///
/// # Safety
/// `params` must come from this library and `out_graph` be writable.
#[no_mangle]
pub unsafe extern "C" fn mesonet_generate(params: *const MesonetParams, out_graph: *mut *mut MesonetGraph) -> MesonetStatus {
    guard(|| {
        let p = borrow(params, "params")?;
        let g = lib(generate(&p.0))?;
        out(out_graph, Box::into_raw(Box::new(MesonetGraph(g))), "out_graph")
    })
}

#[no_mangle]
pub extern "C" fn mesonet_graph_new() -> *mut MesonetGraph {
    Box::into_raw(Box::new(MesonetGraph(LabeledGraph::new())))
}

/// Appends a node and writes its id.
///
/// # Safety
/// `graph` must come from this library; `out_id` may be null.
#[no_mangle]
pub unsafe extern "C" fn mesonet_graph_add_node(
    graph: *mut MesonetGraph,
    community: u32,
    is_core: bool,
    out_id: *mut u32,
) -> MesonetStatus {
    guard(|| {
        let g = &mut borrow_mut(graph, "graph")?.0;
        let kind = if is_core { NodeType::Core } else { NodeType::Periphery };
        let id = g.add_node(community, kind);
        if !out_id.is_null() {
            out_id.write(id);
        }
        Ok(())
    })
}

/// Adds weight `w` to the edge `u-v`, creating it if needed.
///
/// # Safety
/// `graph` must come from this library.
#[no_mangle]
pub unsafe extern "C" fn mesonet_graph_add_edge(graph: *mut MesonetGraph, u: u32, v: u32, w: f64) -> MesonetStatus {
    guard(|| {
        let g = &mut borrow_mut(graph, "graph")?.0;
        lib(g.add_edge(u, v, w).map(|_| ()))
    })
}

/// Reads an edge list and, when `labels_path` is not null, its JSON label
/// sidecar.
///
/// # Safety
/// Paths must be NUL-terminated; `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mesonet_graph_read(
    edges_path: *const c_char,
    labels_path: *const c_char,
    out_graph: *mut *mut MesonetGraph,
) -> MesonetStatus {
    guard(|| {
        let edges = c_str(edges_path, "edges_path")?;
        let labels = if labels_path.is_null() { None } else { Some(c_str(labels_path, "labels_path")?) };
        let g = lib(io::read_graph(Path::new(edges), labels.map(Path::new)))?;
        out(out_graph, Box::into_raw(Box::new(MesonetGraph(g))), "out_graph")
    })
}

/// Writes the graph as a `u<TAB>v<TAB>w` edge list, replacing the file
/// atomically.
///
/// # Safety
/// `graph` must come from this library and `path` be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn mesonet_graph_write_edges(graph: *const MesonetGraph, path: *const c_char) -> MesonetStatus {
    guard(|| {
        let g = &borrow(graph, "graph")?.0;
        let path = c_str(path, "path")?;
        lib(io::write_atomic(Path::new(path), io::edge_list_string(g).as_bytes()))
    })
}

/// Node count; 0 for a null graph.
///
/// # Safety
/// `graph` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn mesonet_graph_node_count(graph: *const MesonetGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.node_count())
}

/// Edge count; 0 for a null graph.
///
/// # Safety
/// `graph` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn mesonet_graph_edge_count(graph: *const MesonetGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

unsafe fn with_node<T>(
    graph: *const MesonetGraph,
    node: u32,
    out_value: *mut T,
    f: impl FnOnce(&LabeledGraph) -> T,
) -> MesonetStatus {
    guard(|| {
        let g = &borrow(graph, "graph")?.0;
        if node as usize >= g.node_count() {
            return Err((MesonetStatus::InvalidGraph, format!("unknown node {node}")));
        }
        let v = f(g);
        out(out_value, v, "out_value")
    })
}

/// # Safety
/// `graph` must come from this library and `out_degree` be writable.
#[no_mangle]
pub unsafe extern "C" fn mesonet_graph_degree(graph: *const MesonetGraph, node: u32, out_degree: *mut usize) -> MesonetStatus {
    with_node(graph, node, out_degree, |g| g.degree(node))
}

/// # Safety
/// `graph` must come from this library and `out_strength` be writable.
#[no_mangle]
pub unsafe extern "C" fn mesonet_graph_strength(graph: *const MesonetGraph, node: u32, out_strength: *mut f64) -> MesonetStatus {
    with_node(graph, node, out_strength, |g| g.strength(node))
}

/// # Safety
/// `graph` must come from this library and `out_is_core` be writable.
#[no_mangle]
pub unsafe extern "C" fn mesonet_graph_is_core(graph: *const MesonetGraph, node: u32, out_is_core: *mut bool) -> MesonetStatus {
    with_node(graph, node, out_is_core, |g| g.node_type(node) == NodeType::Core)
}

/// Copies every edge (`u < v`) into the three caller-provided arrays of
/// length `capacity` and writes the edge count to `out_len`. When
/// `capacity` is too small nothing is copied, `out_len` still receives the
/// required length, and `MESONET_STATUS_BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// Each non-null array must have room for `capacity` elements.
#[no_mangle]
pub unsafe extern "C" fn mesonet_graph_edges(
    graph: *const MesonetGraph,
    us: *mut u32,
    vs: *mut u32,
    ws: *mut f64,
    capacity: usize,
    out_len: *mut usize,
) -> MesonetStatus {
    guard(|| {
        let g = &borrow(graph, "graph")?.0;
        let n = g.edge_count();
        out(out_len, n, "out_len")?;
        if capacity < n {
            return Err((MesonetStatus::BufferTooSmall, format!("need room for {n} edges, got {capacity}")));
        }
        if n > 0 && (us.is_null() || vs.is_null() || ws.is_null()) {
            return Err(null("edge buffer"));
        }
        for (i, (u, v, w)) in g.edges().enumerate() {
            us.add(i).write(u);
            vs.add(i).write(v);
            ws.add(i).write(w);
        }
        Ok(())
    })
}

/// # Safety
/// `graph` must come from this library (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mesonet_graph_free(graph: *mut MesonetGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

// ---- analyses ----

/// K-shell decomposition, or S-shell when `weighted` is true.
///
/// # Safety
/// `graph` must come from this library and `out_shells` be writable.
#[no_mangle]
pub unsafe extern "C" fn mesonet_decompose(
    graph: *const MesonetGraph,
    weighted: bool,
    out_shells: *mut *mut MesonetShells,
) -> MesonetStatus {
    guard(|| {
        let g = &borrow(graph, "graph")?.0;
        let map = lib(if weighted { s_shell(g) } else { k_shell(g) })?;
        out(out_shells, Box::into_raw(Box::new(MesonetShells(map))), "out_shells")
    })
}

/// Number of nodes covered; 0 for null.
///
/// # Safety
/// `shells` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn mesonet_shells_len(shells: *const MesonetShells) -> usize {
    shells.as_ref().map_or(0, |s| s.0.len())
}

/// Highest shell index; 0 for null or empty.
///
/// # Safety
/// `shells` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn mesonet_shells_max(shells: *const MesonetShells) -> u32 {
    shells.as_ref().map_or(0, |s| s.0.k_max())
}

/// # Safety
/// `shells` must come from this library and `out_shell` be writable.
#[no_mangle]
pub unsafe extern "C" fn mesonet_shells_get(shells: *const MesonetShells, node: u32, out_shell: *mut u32) -> MesonetStatus {
    guard(|| {
        let s = &borrow(shells, "shells")?.0;
        if node as usize >= s.len() {
            return Err((MesonetStatus::InvalidGraph, format!("unknown node {node}")));
        }
        out(out_shell, s.shell(node), "out_shell")
    })
}

/// # Safety
/// `shells` must come from this library (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mesonet_shells_free(shells: *mut MesonetShells) {
    if !shells.is_null() {
        drop(Box::from_raw(shells));
    }
}

/// Core-detection score: whole shells are taken from the innermost outward
/// until they hold `fraction` of the nodes, then compared with the nodes
/// labeled core. Any of the output pointers may be null.
///
/// # Safety
/// `graph` must come from this library; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn mesonet_core_efficiency(
    graph: *const MesonetGraph,
    weighted: bool,
    fraction: f64,
    out_efficiency_pct: *mut f64,
    out_detected: *mut usize,
    out_marked: *mut usize,
) -> MesonetStatus {
    guard(|| {
        let g = &borrow(graph, "graph")?.0;
        let map = lib(if weighted { s_shell(g) } else { k_shell(g) })?;
        let marked: BTreeSet<_> = g.core_nodes().into_iter().collect();
        let report = lib(corecheck::validate(&map, &marked, fraction))?;
        if !out_efficiency_pct.is_null() {
            out_efficiency_pct.write(report.efficiency_pct);
        }
        if !out_detected.is_null() {
            out_detected.write(report.detected_core.len());
        }
        if !out_marked.is_null() {
            out_marked.write(report.marked_core.len());
        }
        Ok(())
    })
}

/// Quantity selector for [`mesonet_fit_exponent`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MesonetQuantity {
    Degree = 0,
    Strength = 1,
    EdgeWeight = 2,
}

/// Maximum-likelihood power-law exponent of a degree, strength or edge
/// weight distribution over values at or above `x_min`.
///
/// # Safety
/// `graph` must come from this library and `out_gamma` be writable.
#[no_mangle]
pub unsafe extern "C" fn mesonet_fit_exponent(
    graph: *const MesonetGraph,
    quantity: MesonetQuantity,
    x_min: f64,
    out_gamma: *mut f64,
) -> MesonetStatus {
    guard(|| {
        let g = &borrow(graph, "graph")?.0;
        let q = match quantity {
            MesonetQuantity::Degree => Quantity::Degree,
            MesonetQuantity::Strength => Quantity::Strength,
            MesonetQuantity::EdgeWeight => Quantity::EdgeWeight,
        };
        let fit = lib(fit_quantity(g, q, x_min))?;
        out(out_gamma, fit.gamma, "out_gamma")
    })
}
