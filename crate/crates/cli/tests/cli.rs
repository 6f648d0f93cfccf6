use std::process::{Command, Output};

fn ternary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ternary"))
        .args(args)
        .env_remove("TERNARY_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn documented_examples() {
    let out = ternary(&["disc", "1,1,1,0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "{\"disc\":4}\n");
    assert_eq!(stdout(&ternary(&["auts", "31,5,11,1,-14,6"])), "{\"order\":2}\n");
    assert_eq!(stdout(&ternary(&["count", "1,1,1,0,0,0", "9"])), "{\"n\":9,\"count\":30}\n");
    assert_eq!(
        stdout(&ternary(&["density", "1,1,1,0,0,0", "3", "2"])),
        "{\"value\":\"1/1\",\"t\":5,\"stabilized\":true}\n"
    );
    assert_eq!(
        stdout(&ternary(&["lambda", "-1,0,0,1,0,0", "--m", "4"])),
        "{\"coeffs\":[-1,0,0,4,0,0],\"modulus\":4,\"basis\":[[2,0,0],[0,4,0],[0,0,4]],\"index\":32}\n"
    );
    assert_eq!(stdout(&ternary(&["mass", "73"])), "{\"p\":73,\"tg1\":\"3/2\",\"tg2\":\"3/2\",\"closed_form\":\"3/2\",\"pass\":true}\n");
}

#[test]
fn phi_round_trip() {
    let image = stdout(&ternary(&["phi", "7,11,21,11,2,4"]));
    let coeffs: serde_json::Value = serde_json::from_str(&image).unwrap();
    let text = coeffs["coeffs"].as_array().unwrap().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
    let equiv = stdout(&ternary(&["equiv", &text, "7,44,84,44,4,8"]));
    assert!(equiv.starts_with("{\"equivalent\":true"), "{equiv}");
    let back = stdout(&ternary(&["phi-inv", &text]));
    let reduced = stdout(&ternary(&["reduce", "7,11,21,11,2,4"]));
    assert!(reduced.starts_with(back.trim().trim_end_matches('}')), "{back} vs {reduced}");
}

#[test]
fn tsv_output() {
    let out = ternary(&["theta", "1,1,1,0,0,0", "3", "--format", "tsv"]);
    assert_eq!(stdout(&out), "n\tcount\n0\t1\n1\t6\n2\t12\n3\t8\n");
    let out = ternary(&["genus", "3", "--format", "tsv"]);
    assert_eq!(stdout(&out), "label\tp\tcoeffs\taut\nTG1\t3\t1,1,3,0,0,1\t24\n");
}

#[test]
fn usage_errors_exit_2() {
    let out = ternary(&["disc", "1,1,x,0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("field c"), "{}", stderr(&out));
    let out = ternary(&["disc", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(ternary(&["genus", "15"]).status.code(), Some(2));
    assert_eq!(ternary(&["verify", "thm1.3"]).status.code(), Some(2));
    assert_eq!(ternary(&["nonsense"]).status.code(), Some(2));
    assert_eq!(ternary(&["count", "1,-1,1,0,0,0", "3"]).status.code(), Some(2));
}

#[test]
fn work_limit_exits_3() {
    let out = ternary(&["density", "1,1,1,0,0,0", "5", "11", "--work-limit", "100"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn identity_report() {
    let out = ternary(&["verify", "thm1.1", "--n-max", "50"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "{\"identity\":\"thm1.1\",\"p\":3,\"n_max\":50,\"failures\":[],\"pass\":true}\n");
}

#[test]
fn help_for_every_subcommand() {
    for sub in [
        "disc", "reduce", "count", "theta", "auts", "equiv", "genus", "mass", "phi", "phi-inv", "lambda", "density", "verify",
    ] {
        let out = ternary(&[sub, "--help"]);
        assert_eq!(out.status.code(), Some(0), "{sub}");
        let text = stdout(&out);
        for flag in ["--cache", "--threads", "--format", "--work-limit"] {
            assert!(text.contains(flag), "{sub} help lacks {flag}");
        }
    }
    assert!(stdout(&ternary(&["--help"])).contains("TERNARY_CACHE"));
}

#[test]
fn cache_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ternary"))
        .args(["genus", "11"])
        .env("TERNARY_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("TG1_11.json").exists());
    assert!(dir.path().join("TG2_11.json").exists());
    let again = Command::new(env!("CARGO_BIN_EXE_ternary"))
        .args(["genus", "11"])
        .env("TERNARY_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(again.stdout, out.stdout);
}

#[test]
fn large_coefficients_use_big_integers() {
    let out = ternary(&["disc", "3000000000,3000000000,3000000000,0,0,0"]);
    assert_eq!(stdout(&out), "{\"disc\":108000000000000000000000000000}\n");
}
