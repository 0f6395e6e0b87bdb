use std::process::{Command, Output};

fn fsg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsg")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = fsg(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8")
}

const G: &str = "[b(I,I)|id|a(I,I)]";

#[test]
fn eval_generator() {
    // 1100·0̄ in normal form
    assert_eq!(stdout(&["eval", "--n", "3", G, "1 10(0)"]), "11(0)\n");
    assert_eq!(stdout(&["eval", "--n", "3", G, "0(1)"]), "00(1)\n");
}

#[test]
fn abelianize_generator() {
    assert_eq!(stdout(&["abelianize", "--n", "3", G]), "1 (mod 3)\n");
    assert_eq!(stdout(&["abelianize", "--n", "5", G]), "1 (mod 5)\n");
}

#[test]
fn skein_relation_is_identity() {
    let e = "[a(a(I,I),a(I,I))|id|b(I,b(I,b(I,I)))]";
    assert_eq!(stdout(&["identity", "--n", "3", e]), "true\n");
    assert_eq!(stdout(&["identity", "--n", "3", G]), "false\n");
    assert_eq!(stdout(&["equal", "--n", "3", e, "[I|id|I]"]), "true\n");
}

#[test]
fn mul_and_inverse() {
    let inv = stdout(&["inv", "--n", "3", G]);
    assert_eq!(inv, "[a(I,I)|id|b(I,I)]\n");
    let prod = stdout(&["mul", "--n", "3", G, inv.trim()]);
    assert_eq!(stdout(&["identity", "--n", "3", prod.trim()]), "true\n");
}

#[test]
fn germ_quotients() {
    let sigma_b = "[b(I,b(I,I))|id|b(b(I,I),I)]";
    assert_eq!(stdout(&["cbar", "--n", "3", sigma_b]), "c+ = b\nc- = -2\n");
    assert_eq!(stdout(&["germ", "--n", "3", sigma_b]), "(b, -2)\n");
    assert_eq!(stdout(&["germ", "--n", "3", sigma_b, "--at", "(0)"]), "Γ⁺×Γ⁻ (fixed)\n");
    assert_eq!(stdout(&["germ", "--n", "3", sigma_b, "--at", "(01)"]), "Z (moved)\n");
}

#[test]
fn graph_csv_exact() {
    let csv = stdout(&["graph", "--n", "3", "--depth", "4", G]);
    let want = "x0,x1,y0,y1,slope_log2\n\
                0/1,1/2,0/1,1/4,-1\n\
                1/2,5/8,1/4,1/2,1\n\
                5/8,3/4,1/2,3/4,1\n\
                3/4,7/8,3/4,13/16,-1\n\
                #singular,7/8,15/16\n\
                #singular,15/16,1/1\n";
    assert_eq!(csv, want);
}

#[test]
fn graph_writes_files() {
    let dir = std::env::temp_dir().join(format!("fsg-graph-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let base = dir.join("g");
    stdout(&["graph", "--n", "3", "--format", "both", "--out", base.to_str().unwrap(), G]);
    assert!(std::fs::read_to_string(base.with_extension("csv")).unwrap().starts_with("x0,x1,y0,y1,slope_log2\n"));
    assert!(std::fs::read_to_string(base.with_extension("svg")).unwrap().contains("<svg"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn element_from_file() {
    let path = std::env::temp_dir().join(format!("fsg-elem-{}.txt", std::process::id()));
    std::fs::write(&path, G).unwrap();
    assert_eq!(stdout(&["abelianize", "--n", "3", "--file", path.to_str().unwrap()]), "1 (mod 3)\n");
    assert_eq!(stdout(&["eval", "--n", "3", "--file", path.to_str().unwrap(), "0(1)"]), "00(1)\n");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn rewriting_commands() {
    let out = stdout(&["grow-a", "--n", "3", "b(I,I)"]);
    assert_eq!(out.lines().next(), Some("a(a(I,I),a(I,I))"));
    assert!(out.contains("flip - rho2tau"));
    let out = stdout(&["seminormal", "--n", "3", G]);
    assert!(out.contains("# numerator") && out.contains("# denominator"));
}

#[test]
fn free_words_have_no_identity() {
    assert_eq!(stdout(&["free-words", "--n", "3", "--len", "2"]), "16 words, 0 identity hits\n");
}

#[test]
fn exit_codes() {
    assert_eq!(fsg(&["eval", "--n", "3", "[b(I,I|id|a(I,I)]", "1(0)"]).status.code(), Some(2));
    assert_eq!(fsg(&["eval", "--n", "3", G, "1(0"]).status.code(), Some(2));
    assert_eq!(fsg(&["identity", "--n", "3", "[b(I,I)|id|a(I,a(I,I))]"]).status.code(), Some(3));
    assert_eq!(fsg(&["abelianize", "--n", "3", "--type", "F", "[b(I,I)|rot(1)|a(I,I)]"]).status.code(), Some(3));
    assert_eq!(fsg(&["abelianize", "--n", "3", "[a(a(I,I),I)|perm(2 1 3)|a(a(I,I),I)]"]).status.code(), Some(3));
    assert_eq!(fsg(&["cbar", "--n", "3", "[b(I,I)|rot(1)|a(I,I)]"]).status.code(), Some(3));
    assert_eq!(fsg(&["identity", "--n", "2", G]).status.code(), Some(3));
    assert_ne!(fsg(&["identity", G]).status.code(), Some(0));
}
