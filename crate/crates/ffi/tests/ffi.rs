use std::ffi::{CStr, CString};
use std::ptr;

use cluster_scatter_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    cs_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = cs_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn data(json: &str) -> *mut CsFixedData {
    let mut fd = ptr::null_mut();
    assert_eq!(cs_fixed_data_from_json(c(json).as_ptr(), &mut fd), CsStatus::Ok);
    fd
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(cs_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn graph_lifecycle() {
    unsafe {
        let fd = data(r#"{"B": [[0,1],[-3,0]], "delta": [1,3]}"#);
        assert_eq!(cs_fixed_data_rank(fd), 2);
        let mut g = ptr::null_mut();
        assert_eq!(cs_enumerate_graph(fd, 1000, 20, &mut g), CsStatus::Ok);
        assert_eq!(cs_graph_vertex_count(g), 8);
        assert_eq!(cs_graph_edge_count(g), 8);
        assert!(cs_graph_is_complete(g));

        let mut order = [usize::MAX; 8];
        let mut len = 0;
        assert_eq!(cs_certify_acyclic(g, order.as_mut_ptr(), order.len(), &mut len), CsStatus::Ok);
        assert_eq!(len, 8);
        assert_eq!(order[0], 0);
        let mut small = [0usize; 2];
        assert_eq!(cs_certify_acyclic(g, small.as_mut_ptr(), 2, &mut len), CsStatus::InvalidArgument);
        assert_eq!(len, 8);

        let mut loops = 0;
        assert_eq!(cs_verify_loop_consistency(g, 6, &mut loops), CsStatus::Ok);
        assert_eq!(loops, 1);

        let mut s = ptr::null_mut();
        assert_eq!(cs_graph_to_json(g, &mut s), CsStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(json["status"], "complete");
        assert_eq!(json["topological_order"][0], 0);
        assert_eq!(cs_graph_to_dot(g, &mut s), CsStatus::Ok);
        assert!(take(s).starts_with("digraph"));

        cs_graph_free(g);
        cs_fixed_data_free(fd);
    }
}

#[test]
fn truncated_graph_is_returned() {
    unsafe {
        let fd = data(r#"{"B": [[0,2],[-2,0]], "delta": [1,1]}"#);
        let mut g = ptr::null_mut();
        assert_eq!(cs_enumerate_graph(fd, 1000, 6, &mut g), CsStatus::BudgetExceeded);
        assert!(!g.is_null());
        assert!(!cs_graph_is_complete(g));
        assert_eq!(cs_graph_vertex_count(g), 13);
        assert!(last_error().contains("budget"));
        cs_graph_free(g);
        cs_fixed_data_free(fd);
    }
}

#[test]
fn rank2_diagram() {
    unsafe {
        let fd = data(r#"{"B": [[0,1],[-2,0]], "delta": [1,2]}"#);
        let mut d = ptr::null_mut();
        assert_eq!(cs_complete_rank2(fd, 6, &mut d), CsStatus::Ok);
        assert_eq!(cs_diagram_wall_count(d), 4);
        assert_eq!(cs_diagram_verify(d), CsStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(cs_diagram_to_json(d, &mut s), CsStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(json["walls"].as_array().unwrap().len(), 4);
        cs_diagram_free(d);
        cs_fixed_data_free(fd);

        let fd = data(r#"{"B": [[0,1,0],[-1,0,1],[0,-1,0]], "delta": [1,1,1]}"#);
        assert_eq!(cs_complete_rank2(fd, 4, &mut d), CsStatus::NotRankTwo);
        cs_fixed_data_free(fd);
    }
}

#[test]
fn obstruction_witness() {
    unsafe {
        let mut s = ptr::null_mut();
        let input = c(r#"{"crossings": [{"normal": [1,0], "sign": 1}, {"normal": [0,1], "sign": 1}]}"#);
        assert_eq!(cs_obstruct(input.as_ptr(), &mut s), CsStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(json["level"], 1);
        assert_eq!(json["witness"], "1·X_{e1} + 1·X_{e2}");
        let red = c(r#"{"crossings": [{"normal": [1,0], "sign": -1}]}"#);
        assert_eq!(cs_obstruct(red.as_ptr(), &mut s), CsStatus::NotAllGreen);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut fd = ptr::null_mut();
        assert_eq!(cs_fixed_data_from_json(ptr::null(), &mut fd), CsStatus::InvalidArgument);
        assert_eq!(cs_fixed_data_from_json(c("{").as_ptr(), &mut fd), CsStatus::InvalidInput);
        assert_eq!(
            cs_fixed_data_from_json(c(r#"{"B": [[0,1],[1,0]], "delta": [1,1]}"#).as_ptr(), &mut fd),
            CsStatus::NotSkewSymmetrizable
        );
        assert!(last_error().contains("skew-symmetrizer"));
        assert_eq!(
            cs_fixed_data_from_json(c(r#"{"B": [[0,1],[-2,0]], "delta": [1,1]}"#).as_ptr(), &mut fd),
            CsStatus::BadDecomposition
        );
        assert!(fd.is_null());
        let mut g = ptr::null_mut();
        assert_eq!(cs_enumerate_graph(ptr::null(), 10, 10, &mut g), CsStatus::InvalidArgument);
        let ok = data(r#"{"B": [[0]], "delta": [1]}"#);
        assert_eq!(cs_enumerate_graph(ok, 0, 10, &mut g), CsStatus::InvalidArgument);
        let mut d = ptr::null_mut();
        assert_eq!(cs_complete_rank2(ok, 4, &mut d), CsStatus::NotRankTwo);
        cs_fixed_data_free(ok);
        cs_string_free(ptr::null_mut());
        cs_graph_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/cluster_scatter.h");
    for name in [
        "cs_fixed_data_from_json",
        "cs_enumerate_graph",
        "cs_certify_acyclic",
        "cs_verify_loop_consistency",
        "cs_complete_rank2",
        "cs_obstruct",
        "cs_string_free",
        "typedef struct CsGraph CsGraph;",
        "CS_STATUS_BUDGET_EXCEEDED = 5",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

/// Compiles and runs `tests/c/smoke.c` against the static library when a C
/// compiler is available.
#[test]
fn c_program_links_and_runs() {
    use std::path::PathBuf;
    use std::process::Command;

    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libcluster_scatter_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let out = std::env::temp_dir().join(format!("cluster_scatter_smoke_{}", std::process::id()));
    let status = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
