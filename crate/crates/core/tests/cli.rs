use std::path::PathBuf;

use rescat::cli::{run, EXIT_DATA, EXIT_NO_INPUT, EXIT_USAGE};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("rescat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn rescat(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rescat").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn decide_equal_prints_derivation() {
    let (code, out, _) = rescat(&["decide", &data("z2.cat"), "a * a * a", "a"]);
    assert_eq!(code, 0);
    assert_eq!(out, "equal\nderivation\nstart: a * a * a\nstep 1: at 0 apply r0 ltr -> a\n");
}

#[test]
fn decide_distinct_prints_witness() {
    let (code, out, _) = rescat(&["decide", &data("z2.cat"), "a", "id(v)"]);
    assert_eq!(code, 1);
    let expected = "distinct\nwitness\ncategory n=1 m=2\ndom 0 0\ncod 0 0\nid 0\ncomp\n0 1\n1 0\n\
                    functor\nobject v -> 0\nedge a -> 1\nimages 1 0\n";
    assert_eq!(out, expected);
}

#[test]
fn decide_unknown_and_not_parallel() {
    let (code, out, _) = rescat(&["decide", &data("z2.cat"), "a", "id(v)", "--max-morphisms", "1"]);
    assert_eq!((code, out.as_str()), (2, "unknown\nbudget max-stage=8 max-objects=2 max-morphisms=1\n"));
    let file = scratch("arrow.cat", "vertex v\nvertex w\nedge f : v -> w\n");
    let (code, out, _) = rescat(&["decide", &file, "f", "id(v)"]);
    assert_eq!(code, 3);
    assert!(out.starts_with("not-parallel\nwitness\n"));
}

#[test]
fn enumerate_counts_monoids() {
    let (code, out, _) = rescat(&["enumerate", "--objects", "1", "--morphisms", "3", "--up-to-iso", "--count-only"]);
    assert_eq!((code, out.as_str()), (0, "7\n"));
    let (code, out, _) = rescat(&["enumerate", "--objects", "1", "--morphisms", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("category n=1 m=2").count(), 4);
}

#[test]
fn json_verdicts_verify_and_tampering_is_rejected() {
    let z2 = data("z2.cat");
    for (p, q) in [("a * a * a", "a"), ("a", "id(v)"), ("a * a", "id(v)")] {
        let (_, json, _) = rescat(&["decide", &z2, p, q, "--json"]);
        let cert = scratch("cert.json", &json);
        let (code, out, _) = rescat(&["verify", &z2, &cert]);
        assert_eq!(code, 0, "{out}");
        assert!(out.starts_with("verified"));
    }
    let (_, json, _) = rescat(&["decide", &z2, "a", "id(v)", "--json"]);
    let forged = json.replacen("\"morphism\": 1", "\"morphism\": 0", 1);
    assert_ne!(forged, json);
    let cert = scratch("forged.json", &forged);
    let (code, out, _) = rescat(&["verify", &z2, &cert]);
    assert_eq!(code, 1);
    assert!(out.starts_with("rejected"));
}

#[test]
fn validate_reports_dumps_and_presentations() {
    let (code, out, _) = rescat(&["validate", &data("z2.cat")]);
    assert_eq!((code, out.as_str()), (0, "valid presentation vertices=1 edges=1 relations=1\n"));
    let (_, dump, _) = rescat(&["build", "poset"]);
    let file = scratch("poset.txt", &dump);
    let (code, out, _) = rescat(&["validate", &file]);
    assert_eq!(code, 0);
    assert!(out.starts_with("valid category n=3 m=6"));
    let broken = scratch("idempotent.txt", "category n=1 m=2\ndom 0 0\ncod 0 0\nid 0\ncomp\n0 1\n1 1\n");
    let (code, out, _) = rescat(&["validate", &broken]);
    assert_eq!(code, 0, "{out}");
    let broken = scratch("broken2.txt", "category n=1 m=2\ndom 0 0\ncod 0 0\nid 0\ncomp\n0 1\n0 -\n");
    let (code, out, _) = rescat(&["validate", &broken]);
    assert_eq!(code, 1);
    assert!(out.starts_with("invalid category"));
}

#[test]
fn separate_uses_constructive_families() {
    let file = scratch("two.cat", "vertex v\nvertex w\nedge f : v -> w\nedge g : v -> w\nedge h : v -> v\n");
    let (code, out, _) = rescat(&["separate", &file, "h * f", "g"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("family free\nwitness\n"));
    let (code, out, _) = rescat(&["separate", &file, "f", "h"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("family endpoint\nwitness\n"));
    let (code, out, _) = rescat(&["separate", &data("z2.cat"), "a", "id(v)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("family search\ndistinct\n"));
    let (code, out, _) = rescat(&["separate", "--matrix", "[[2]]", "[[5]]"]);
    assert_eq!((code, out.as_str()), (0, "family matrix\nprime 2\nrank 1\nreduced [[0]] [[1]]\nimages 3 4\n"));
}

#[test]
fn errors_map_to_exit_codes() {
    assert_eq!(rescat(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(rescat(&["decide", &data("z2.cat")]).0, EXIT_USAGE);
    assert_eq!(rescat(&["enumerate", "--objects", "2", "--morphisms", "1"]).0, EXIT_USAGE);
    let (code, _, err) = rescat(&["decide", "/nonexistent/z.cat", "a", "a"]);
    assert_eq!(code, EXIT_NO_INPUT);
    assert!(err.starts_with("error: cannot read"));
    let (code, _, err) = rescat(&["decide", &data("z2.cat"), "b", "a"]);
    assert_eq!(code, EXIT_DATA);
    assert!(err.contains("unknown name `b`"));
    let bad = scratch("bad.cat", "vertex v\nedge a : v -> w\n");
    let (code, _, err) = rescat(&["validate", &bad]);
    assert_eq!(code, EXIT_DATA);
    assert!(err.contains("line 2: unknown name `w`"));
    let (code, out, _) = rescat(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}

#[test]
fn seed_is_accepted_and_ignored() {
    let plain = rescat(&["decide", &data("z2.cat"), "a", "id(v)"]);
    let seeded = rescat(&["--seed", "42", "decide", &data("z2.cat"), "a", "id(v)"]);
    assert_eq!(plain, seeded);
}
