use std::process::Command;

use perfcert_cli::{execute, Invocation, PicSpec, ThickPrimes};
use perfcert_core::certificate::{check, Document};

fn perfcert(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_perfcert"))
        .args(args)
        .output()
        .unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("perfcert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn malformed_input_exits_3_without_a_document() {
    for args in [
        &["classgroup", "--d", "-4"][..],
        &["classgroup", "--d", "7"],
        &["classgroup", "--d", "x"],
        &["factor-prime", "--d", "-21", "--p", "4"],
        &["verify-thick", "--d", "-21"],
        &["verify-thick", "--d", "-21", "--auto", "--p", "2"],
        &["verify-thick", "--d", "-21", "--p", "13", "--q", "2"],
        &["verify-thick", "--d", "-1", "--auto"],
        &["verify-glued", "--pic", "q", "--p", "1"],
        &["verify-glued", "--pic", "curve:5,1,1", "--p", "1,1"],
        &["verify-nodal", "--curve", "4,1,1", "--point", "0,1"],
        &["verify-nodal", "--curve", "5,0,0", "--point", "0,0"],
        &["snf", "/nonexistent/matrix.txt"],
        &["nonsense"],
    ] {
        let (stdout, stderr, code) = perfcert(args);
        assert_eq!(code, 3, "{args:?}");
        assert!(stdout.is_empty(), "{args:?} printed a document");
        assert!(!stderr.is_empty(), "{args:?} printed no diagnostic");
    }
}

#[test]
fn out_flag_writes_the_document() {
    let path = scratch("classgroup.txt");
    let (stdout, _, code) = perfcert(&["classgroup", "--d", "-5", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let doc = Document::parse(&text).unwrap();
    assert_eq!(
        doc.section("class_group").unwrap().get("invariant_factors"),
        Some("[2]")
    );
    assert!(check(&doc).is_ok());
}

#[test]
fn snf_reads_a_matrix_file() {
    let path = scratch("m.txt");
    std::fs::write(&path, "2 3\n2 4 4\n-6 6 12\n").unwrap();
    let (stdout, _, code) = perfcert(&["snf", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let doc = Document::parse(&stdout).unwrap();
    assert_eq!(
        doc.section("result").unwrap().get("invariant_factors"),
        Some("[2, 6]")
    );
    assert!(check(&doc).is_ok());

    std::fs::write(&path, "2 2\n1 2\n3\n").unwrap();
    assert_eq!(perfcert(&["snf", path.to_str().unwrap()]).2, 3);
}

#[test]
fn factor_prime_examples() {
    let (out, _, code) = perfcert(&["factor-prime", "--d", "-21", "--p", "13"]);
    assert_eq!(code, 0);
    let doc = Document::parse(&out).unwrap();
    assert_eq!(
        doc.section("factor").unwrap().get("splitting"),
        Some("inert")
    );
    let (out, _, _) = perfcert(&["factor-prime", "--d", "-21", "--p", "2"]);
    let doc = Document::parse(&out).unwrap();
    let f = doc.section("factor").unwrap();
    assert_eq!(f.get("splitting"), Some("ramified"));
    assert_eq!(f.get("b"), Some("1"));
    assert_eq!(f.get("reduced_form"), Some("(2, 2, 11)"));
}

#[test]
fn failing_hypotheses_exit_1() {
    // 2 and 3 lie in different classes when nothing is removed.
    let (out, _, code) = perfcert(&["verify-thick", "--d", "-21", "--p", "2", "--q", "3"]);
    assert_eq!(code, 1);
    let doc = Document::parse(&out).unwrap();
    assert_eq!(doc.verdict(), Some("hypotheses_failed"));
    assert!(check(&doc).is_ok());

    let (out, _, code) = perfcert(&["verify-glued", "--pic", "z", "--p", "0"]);
    assert_eq!(code, 1);
    assert!(check(&Document::parse(&out).unwrap()).is_ok());
}

#[test]
fn in_process_matches_binary() {
    let args = ["verify-nodal", "--curve", "7,3,2", "--point", "2,3"];
    let (outcome, _) = execute(std::iter::once("perfcert").chain(args));
    let (stdout, _, code) = perfcert(&args);
    if outcome.exit_code == 3 {
        assert_eq!(code, 3);
    } else {
        assert_eq!(outcome.document.as_deref(), Some(stdout.as_str()));
        assert_eq!(outcome.exit_code, code);
    }
}

#[test]
fn every_point_of_a_curve_audits_consistently() {
    for point in ["0,1", "0,4", "2,1", "2,4", "3,1", "3,4", "4,2", "4,3"] {
        let (out, _, code) = perfcert(&["verify-nodal", "--curve", "5,1,1", "--point", point]);
        let doc = Document::parse(&out).unwrap();
        assert!(check(&doc).is_ok(), "{point}");
        assert_eq!(doc.exit_code(), code);
        assert_eq!(code, 2, "{point}");
    }
}

#[test]
fn invocation_validation() {
    use clap::Parser;
    let cli = perfcert_cli::Cli::try_parse_from([
        "perfcert",
        "verify-glued",
        "--pic",
        "curve:5,1,1",
        "--p",
        "(0,1)",
    ])
    .unwrap();
    let inv = Invocation::try_from(cli.command).unwrap();
    assert!(matches!(
        inv,
        Invocation::VerifyGlued {
            pic: PicSpec::Elliptic { .. },
            ..
        }
    ));
    let cli = perfcert_cli::Cli::try_parse_from([
        "perfcert",
        "verify-thick",
        "--d",
        "-21",
        "--p",
        "2",
        "--q",
        "3",
    ])
    .unwrap();
    let inv = Invocation::try_from(cli.command).unwrap();
    assert!(matches!(
        inv,
        Invocation::VerifyThick {
            primes: ThickPrimes::Explicit { remove: None, .. },
            ..
        }
    ));
    assert_eq!(inv.subcommand(), "verify-thick");
}

#[test]
fn help_exits_0() {
    let (stdout, _, code) = perfcert(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verify-nodal"));
}
