use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use persilat_ffi::*;

const CHAIN: &str = r#"{"field": 2, "shape": {"kind": "filtration"},
  "nodes": [{"id": "X0", "dim": 1}, {"id": "X1", "dim": 1}, {"id": "X2", "dim": 1}],
  "edges": [{"from": "X0", "to": "X1", "matrix": [[1]]}, {"from": "X1", "to": "X2", "matrix": [[1]]}]}"#;

const ZIGZAG: &str = r#"{"field": 2, "shape": {"kind": "zigzag"},
  "nodes": [{"id": "A", "dim": 1}, {"id": "B", "dim": 1}, {"id": "C", "dim": 1}],
  "edges": [{"from": "A", "to": "B", "matrix": [[1]]}, {"from": "C", "to": "B", "matrix": [[1]]}]}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn parse(json: &str) -> (PersilatStatus, *mut PersilatDiagram) {
    let mut d = ptr::null_mut();
    let s = unsafe { persilat_diagram_parse(c(json).as_ptr(), false, &mut d) };
    (s, d)
}

fn last_error() -> String {
    let p = persilat_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    persilat_string_free(s);
    out
}

#[test]
fn rank_through_the_handle() {
    let (s, d) = parse(CHAIN);
    assert_eq!(s, PersilatStatus::Ok);
    assert!(persilat_last_error().is_null());
    unsafe {
        assert_eq!(persilat_diagram_node_count(d), 3);
        let mut r = PersilatRankReport::default();
        assert_eq!(persilat_rank(d, c("X0").as_ptr(), c("X2").as_ptr(), &mut r), PersilatStatus::Ok);
        assert_eq!((r.rank, r.dim_meet, r.dim_join, r.ses_ok), (1, 1, 1, true));
        let mut rank = 9;
        assert_eq!(persilat_largest_injective(d, &mut rank), PersilatStatus::Ok);
        assert_eq!(rank, 1);
        persilat_diagram_free(d);
    }
}

#[test]
fn strings_cross_the_boundary() {
    let (_, d) = parse(CHAIN);
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(persilat_implies(d, c("X0").as_ptr(), c("X2").as_ptr(), &mut out), PersilatStatus::Ok);
        assert_eq!(take(out), "⊤");
        assert_eq!(persilat_hasse_dot(d, 100, &mut out), PersilatStatus::Ok);
        let dot = take(out);
        assert!(dot.starts_with("digraph hasse {") && dot.matches(" -> ").count() == 4);
        assert_eq!(persilat_hasse_dot(d, 2, &mut out), PersilatStatus::BudgetExceeded);
        assert!(out.is_null());
        assert!(last_error().contains("budget"));
        persilat_diagram_free(d);
    }
}

#[test]
fn zigzag_rank_by_node() {
    let (s, d) = parse(ZIGZAG);
    assert_eq!(s, PersilatStatus::Ok);
    unsafe {
        let mut rank = 0;
        assert_eq!(persilat_zigzag_rank(d, c("A").as_ptr(), c("C").as_ptr(), &mut rank), PersilatStatus::Ok);
        assert_eq!(rank, 1);
        assert_eq!(persilat_zigzag_rank(d, c("A").as_ptr(), c("B").as_ptr(), &mut rank), PersilatStatus::DomainError);
        persilat_diagram_free(d);
    }
}

#[test]
fn failures_carry_status_and_message() {
    let (s, d) = parse("{\"field\": 2,");
    assert_eq!((s, d.is_null()), (PersilatStatus::ParseError, true));
    assert!(last_error().contains("JSON"));

    let square = r#"{"field": 2, "nodes": [{"id":"A","dim":1},{"id":"B","dim":1},{"id":"C","dim":1},{"id":"D","dim":1}],
      "edges": [{"from":"A","to":"B","matrix":[[1]]},{"from":"A","to":"C","matrix":[[1]]},
                {"from":"B","to":"D","matrix":[[1]]},{"from":"C","to":"D","matrix":[[0]]}]}"#;
    assert_eq!(parse(square).0, PersilatStatus::InvalidDiagram);
    assert!(last_error().contains("commute"));

    let (_, d) = parse(CHAIN);
    unsafe {
        let mut r = PersilatRankReport::default();
        assert_eq!(persilat_rank(d, c("X0").as_ptr(), c("Q").as_ptr(), &mut r), PersilatStatus::DomainError);
        assert_eq!(persilat_rank(d, ptr::null(), c("X0").as_ptr(), &mut r), PersilatStatus::NullPointer);
        assert_eq!(persilat_rank(ptr::null(), c("X0").as_ptr(), c("X0").as_ptr(), &mut r), PersilatStatus::NullPointer);
        assert_eq!(persilat_largest_injective(d, ptr::null_mut()), PersilatStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(persilat_rank(d, bad.as_ptr().cast(), c("X0").as_ptr(), &mut r), PersilatStatus::InvalidUtf8);
        persilat_diagram_free(d);
        persilat_diagram_free(ptr::null_mut());
        persilat_string_free(ptr::null_mut());
    }
}

#[test]
fn version_matches_the_package() {
    let v = unsafe { CStr::from_ptr(persilat_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let header = format!("{include}/persilat.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["persilat_diagram_parse", "persilat_rank", "persilat_last_error", "PERSILAT_STATUS_BUDGET_EXCEEDED"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = std::env::temp_dir().join(format!("persilat-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        "#include \"persilat.h\"\nint main(void) {\n  PersilatDiagram *d = 0;\n  PersilatRankReport r;\n  \
         PersilatStatus s = persilat_diagram_parse(\"{}\", false, &d);\n  \
         (void)r; return s == PERSILAT_STATUS_OK ? 0 : 1;\n}\n",
    )
    .unwrap();
    for (compiler, extra) in [("cc", "-std=c99"), ("c++", "-xc++")] {
        let Ok(out) = Command::new(compiler).args([extra, "-fsyntax-only", "-Wall", "-Werror", "-I", include]).arg(&src).output()
        else {
            eprintln!("{compiler} not available; skipping");
            continue;
        };
        assert!(out.status.success(), "{compiler}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

/// Link the example program against the static library and run it.
#[test]
fn c_program_links_and_runs() {
    // target/<profile>/deps/abi-* -> target/<profile>/libpersilat_ffi.a
    let exe = std::env::current_exe().unwrap();
    let lib = exe.parent().and_then(|deps| deps.parent()).unwrap().join("libpersilat_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let manifest = env!("CARGO_MANIFEST_DIR");
    let bin = std::env::temp_dir().join(format!("persilat-rank-{}", std::process::id()));
    let Ok(out) = Command::new("cc")
        .args(["-std=c99", "-I", &format!("{manifest}/include"), &format!("{manifest}/examples/rank.c")])
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
    else {
        eprintln!("cc not available; skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success());
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(stdout.contains("rank 1 meet 1 join 1"), "{stdout}");
    assert!(stdout.contains("error: unknown node id `missing`"), "{stdout}");
    assert!(stdout.starts_with("digraph hasse {"));
}
