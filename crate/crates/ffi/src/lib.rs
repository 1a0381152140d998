//! C ABI over `cluster_scatter`.
//!
//! Objects are opaque heap handles released with their `*_free` function.
//! Every call returns a [`CsStatus`]; on failure a message is available from
//! [`cs_last_error_message`] on the same thread. Strings returned through
//! `char **` are owned by the caller and released with [`cs_string_free`].
//! Mutation directions are 1-based wherever they appear in JSON.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cluster_scatter::exchange::{certify_acyclic, enumerate_graph, ExchangeError, FixedData, OrientedExchangeGraph};
use cluster_scatter::group::{AlgebraError, StructureAlgebra};
use cluster_scatter::io::{graph_to_dot, graph_to_json, parse_fixed_data, CrossingSequenceJson, IoError};
use cluster_scatter::rational::Rational;
use cluster_scatter::scattering::{self, ScatteringDiagram, ScatteringError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsStatus {
    Ok = 0,
    /// Null pointer, invalid UTF-8 or a zero budget.
    InvalidArgument = 1,
    /// Unparseable or ill-formed JSON document.
    InvalidInput = 2,
    NotSkewSymmetrizable = 3,
    BadDecomposition = 4,
    /// Enumeration stopped early; the partial graph is still returned.
    BudgetExceeded = 5,
    CycleFound = 6,
    RootNotSource = 7,
    SignIncoherent = 8,
    Inconsistent = 9,
    NotAllGreen = 10,
    NotRankTwo = 11,
    DefectNotParallel = 12,
    /// Truncation level outside the supported range, or another algebra
    /// error.
    AlgebraError = 13,
    /// A panic was caught at the boundary.
    Internal = 99,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(CsStatus, String);

impl From<ExchangeError> for Failure {
    fn from(e: ExchangeError) -> Self {
        let status = match e {
            ExchangeError::InvalidInput(_) | ExchangeError::DirectionOutOfRange { .. } => CsStatus::InvalidInput,
            ExchangeError::NotSkewSymmetrizable => CsStatus::NotSkewSymmetrizable,
            ExchangeError::BadDecomposition => CsStatus::BadDecomposition,
            ExchangeError::SignIncoherent { .. } => CsStatus::SignIncoherent,
            ExchangeError::BudgetExceeded(_) => CsStatus::BudgetExceeded,
            ExchangeError::CycleFound(_) => CsStatus::CycleFound,
            ExchangeError::RootNotSource => CsStatus::RootNotSource,
        };
        Failure(status, e.to_string())
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure(CsStatus::AlgebraError, e.to_string())
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Exchange(x) => x.into(),
            other => Failure(CsStatus::InvalidInput, other.to_string()),
        }
    }
}

impl From<ScatteringError> for Failure {
    fn from(e: ScatteringError) -> Self {
        let msg = e.to_string();
        let status = match e {
            ScatteringError::Exchange(x) => return x.into(),
            ScatteringError::Algebra(_) => CsStatus::AlgebraError,
            ScatteringError::SignIncoherent { .. } => CsStatus::SignIncoherent,
            ScatteringError::InconsistencyFound { .. } | ScatteringError::NotOrthogonal { .. } => CsStatus::Inconsistent,
            ScatteringError::NotAllGreen { .. } => CsStatus::NotAllGreen,
            ScatteringError::NotRankTwo => CsStatus::NotRankTwo,
            ScatteringError::DefectNotParallel { .. } => CsStatus::DefectNotParallel,
            _ => CsStatus::InvalidInput,
        };
        Failure(status, msg)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CsStatus::Internal
        }
    }
}

fn invalid(msg: &str) -> Failure {
    Failure(CsStatus::InvalidArgument, msg.into())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(invalid("null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| invalid("string is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(invalid("null output pointer"));
    }
    let c = CString::new(s).map_err(|_| Failure(CsStatus::Internal, "interior NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| invalid("null handle"))
}

/// Validated `B`, `Δ`, `Ω` and skew-symmetrizer.
pub struct CsFixedData {
    data: FixedData,
}

/// An oriented exchange graph together with the data it was built from.
pub struct CsGraph {
    data: FixedData,
    graph: OrientedExchangeGraph,
}

/// A truncated scattering diagram with its structure algebra.
pub struct CsDiagram {
    data: FixedData,
    algebra: StructureAlgebra,
    diagram: ScatteringDiagram,
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next call into the library from this thread.
#[no_mangle]
pub extern "C" fn cs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"B": [[...]], "delta": [...], "D": [...]}` (`D` optional).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_fixed_data_from_json(json: *const c_char, out: *mut *mut CsFixedData) -> CsStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("null output pointer"));
        }
        let data = parse_fixed_data(read_str(json)?)?;
        *out = Box::into_raw(Box::new(CsFixedData { data }));
        Ok(())
    })
}

/// # Safety
/// `fd` must be NULL or a handle from [`cs_fixed_data_from_json`].
#[no_mangle]
pub unsafe extern "C" fn cs_fixed_data_free(fd: *mut CsFixedData) {
    if !fd.is_null() {
        drop(Box::from_raw(fd));
    }
}

/// Rank of the data, 0 for a NULL handle.
///
/// # Safety
/// `fd` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_fixed_data_rank(fd: *const CsFixedData) -> usize {
    fd.as_ref().map_or(0, |f| f.data.rank())
}

/// Breadth-first enumeration. On `CS_STATUS_BUDGET_EXCEEDED` the partial
/// graph is still stored in `out` and must be freed.
///
/// # Safety
/// `fd` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_enumerate_graph(
    fd: *const CsFixedData,
    max_vertices: usize,
    max_depth: usize,
    out: *mut *mut CsGraph,
) -> CsStatus {
    guard(|| {
        let fd = handle(fd)?;
        if out.is_null() {
            return Err(invalid("null output pointer"));
        }
        if max_vertices == 0 {
            return Err(invalid("max_vertices must be positive"));
        }
        let (graph, truncated) = match enumerate_graph(&fd.data, max_vertices, max_depth) {
            Ok(g) => (g, None),
            Err(ExchangeError::BudgetExceeded(g)) => {
                let n = g.vertex_count();
                (*g, Some(n))
            }
            Err(e) => return Err(e.into()),
        };
        *out = Box::into_raw(Box::new(CsGraph { data: fd.data.clone(), graph }));
        match truncated {
            Some(n) => Err(Failure(CsStatus::BudgetExceeded, format!("budget exceeded after {n} vertices"))),
            None => Ok(()),
        }
    })
}

/// # Safety
/// `g` must be NULL or a handle from [`cs_enumerate_graph`].
#[no_mangle]
pub unsafe extern "C" fn cs_graph_free(g: *mut CsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_graph_vertex_count(g: *const CsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.vertex_count())
}

/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_graph_edge_count(g: *const CsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_graph_is_complete(g: *const CsGraph) -> bool {
    g.as_ref().is_some_and(|g| g.graph.is_complete())
}

/// Graph JSON, with the topological order when the graph is acyclic.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_graph_to_json(g: *const CsGraph, out: *mut *mut c_char) -> CsStatus {
    guard(|| {
        let g = handle(g)?;
        let cert = certify_acyclic(&g.graph).ok();
        let json = graph_to_json(&g.graph, Some(&g.data), cert.as_ref());
        write_string(out, serde_json::to_string(&json).expect("serializable"))
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_graph_to_dot(g: *const CsGraph, out: *mut *mut c_char) -> CsStatus {
    guard(|| write_string(out, graph_to_dot(&handle(g)?.graph)))
}

/// Writes a topological order (vertex indices, root first) into `order`,
/// which must hold `capacity` entries; `len` receives the vertex count. If
/// `capacity` is too small nothing is written and `CS_STATUS_INVALID_ARGUMENT`
/// is returned with `len` set.
///
/// # Safety
/// `g` must be a live handle; `order` must point to `capacity` writable
/// entries (or be NULL when `capacity` is 0); `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_certify_acyclic(
    g: *const CsGraph,
    order: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> CsStatus {
    guard(|| {
        let g = handle(g)?;
        if len.is_null() {
            return Err(invalid("null length pointer"));
        }
        let cert = certify_acyclic(&g.graph)?;
        *len = cert.order.len();
        if capacity < cert.order.len() || order.is_null() {
            return Err(invalid("order buffer too small"));
        }
        ptr::copy_nonoverlapping(cert.order.as_ptr(), order, cert.order.len());
        Ok(())
    })
}

/// Path-ordered products around a cycle basis of the graph, checked in
/// `G^{≤level}`. `loops` receives the number of loops verified.
///
/// # Safety
/// `g` must be a live handle; `loops` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn cs_verify_loop_consistency(g: *const CsGraph, level: u32, loops: *mut usize) -> CsStatus {
    guard(|| {
        let g = handle(g)?;
        let alg = StructureAlgebra::for_data(&g.data, level)?;
        let report = scattering::verify_loop_consistency(&g.data, &alg, &g.graph, level)?;
        if !loops.is_null() {
            *loops = report.loops.len();
        }
        Ok(())
    })
}

/// Consistent completion of a rank-2 diagram up to `level`, re-verified
/// before returning.
///
/// # Safety
/// `fd` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_complete_rank2(fd: *const CsFixedData, level: u32, out: *mut *mut CsDiagram) -> CsStatus {
    guard(|| {
        let fd = handle(fd)?;
        if out.is_null() {
            return Err(invalid("null output pointer"));
        }
        let algebra = StructureAlgebra::for_data(&fd.data, level)?;
        let diagram = scattering::complete_rank2(&fd.data, &algebra, level)?;
        scattering::verify_rank2(&algebra, fd.data.delta(), &diagram)?;
        *out = Box::into_raw(Box::new(CsDiagram { data: fd.data.clone(), algebra, diagram }));
        Ok(())
    })
}

/// # Safety
/// `d` must be NULL or a handle from [`cs_complete_rank2`].
#[no_mangle]
pub unsafe extern "C" fn cs_diagram_free(d: *mut CsDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of walls, including the initial ones.
///
/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_diagram_wall_count(d: *const CsDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.diagram.walls.len())
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_diagram_to_json(d: *const CsDiagram, out: *mut *mut c_char) -> CsStatus {
    guard(|| {
        let d = handle(d)?;
        let json = d.diagram.to_json(&d.algebra)?;
        write_string(out, serde_json::to_string(&json).expect("serializable"))
    })
}

/// Recomputes the loop product around the origin; `CS_STATUS_INCONSISTENT`
/// if it is not the identity.
///
/// # Safety
/// `d` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_diagram_verify(d: *const CsDiagram) -> CsStatus {
    guard(|| {
        let d = handle(d)?;
        scattering::verify_rank2(&d.algebra, d.data.delta(), &d.diagram)?;
        Ok(())
    })
}

/// Lowest-degree witness for an all-green crossing sequence given as
/// `{"delta": [...], "crossings": [{"normal": [...], "sign": 1}]}`. The
/// result is `{"level": l, "witness": "..."}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cs_obstruct(json: *const c_char, out: *mut *mut c_char) -> CsStatus {
    guard(|| {
        let cj: CrossingSequenceJson =
            serde_json::from_str(read_str(json)?).map_err(|e| Failure(CsStatus::InvalidInput, e.to_string()))?;
        let (rank, _, seq) = cj.resolve()?;
        let level = seq.crossings.iter().map(|c| c.normal.degree()).min().unwrap_or(1).max(1);
        // Only commuting generators survive at the lowest degree.
        let alg = StructureAlgebra::new(vec![vec![Rational::ZERO; rank]; rank], level)?;
        let w = scattering::minimal_degree_obstruction(&alg, &seq)?;
        let body = serde_json::json!({"level": w.level, "witness": alg.display(&w.witness)});
        write_string(out, body.to_string())
    })
}
