use std::process::{Command, Output};

fn prodreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prodreg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn betti_of_j() {
    let o = prodreg(&["betti", "--ideal", "ideal(a^2*b, c*d^2)", "--cap", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("reg(I) = 5"), "{out}");
    assert!(out.contains("certified"), "{out}");
}

#[test]
fn square_has_no_order() {
    let o = prodreg(&[
        "quotients",
        "search",
        "--ideal",
        "ideal(a*b*c, b*c*d, c*d*e, a*d*e, a*b*e)",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let square = prodreg::fixtures::example_five_generators().power(2).to_text();
    let o = prodreg(&["quotients", "search", "--ideal", &square]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no order exists"));
}

#[test]
fn hankel_certify() {
    let o = prodreg(&["hankel", "certify", "--n", "5", "--t", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reg = 4"));
}

#[test]
fn fixtures_pass_and_filters() {
    let o = prodreg(&["fixtures"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));

    let o = prodreg(&["fixtures", "--only", "hankel"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).all(|l| l.contains("hankel/")));

    let o = prodreg(&["fixtures", "--only", "no-such-fixture"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn linforms_rejects_positive_characteristic() {
    let o = prodreg(&["linforms", "check", "--random", "3,2", "--char", "7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn linforms_random_family() {
    let o = prodreg(&["linforms", "check", "--random", "3,3", "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("seed: 11\n"));

    let o = prodreg(&["linforms", "check", "--random", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn linforms_assoc_uses_one_based_subsets() {
    let family = "linforms([[1,0,0,0],[0,0,0,1]], [[0,1,0,0],[0,0,0,1]], [[0,0,1,0],[0,0,0,1]])";
    let o = prodreg(&["linforms", "assoc", "--family", family, "--subset", "1,3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("(a, c, d)"));

    let o = prodreg(&["linforms", "assoc", "--family", family, "--subset", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn structured_output_is_deterministic() {
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            prodreg(&["linforms", "check", "--random", "3,2", "--seed", "4", "--format", "structured"]).stdout
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let doc: serde_json::Value = serde_json::from_slice(&runs[0]).unwrap();
    assert_eq!(doc["seed"], 4);
    assert_eq!(doc["verdict"], true);

    let a = prodreg(&["betti", "--ideal", "ideal(a^2, a*b, b^3)", "--format", "structured"]).stdout;
    let b = prodreg(&["betti", "--ideal", "ideal(a^2, a*b, b^3)", "--format", "structured"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["reg", "--ideal", "ideal(a + b^2)"][..],
        &["reg", "--ideal", "ideal(ab)"],
        &["reg"],
        &["reg", "--file", "/nonexistent/input.txt"],
        &["hankel", "omega", "--n", "4", "--t", "3"],
        &["reg", "--ideal", "ideal(a)", "--char", "6"],
    ] {
        let o = prodreg(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reads_files_and_characteristic() {
    let dir = std::env::temp_dir().join(format!("prodreg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rp2.txt");
    std::fs::write(&path, prodreg::fixtures::projective_plane_ideal().to_text() + "\n").unwrap();
    let p = path.to_str().unwrap();
    let qq = stdout(&prodreg(&["reg", "--file", p]));
    let gf2 = stdout(&prodreg(&["reg", "--file", p, "--char", "2"]));
    std::fs::remove_dir_all(&dir).ok();
    assert!(qq.contains("reg(I) = 3"), "{qq}");
    assert!(gf2.contains("reg(I) = 4"), "{gf2}");
}

#[test]
fn polymatroid_commands() {
    let o = prodreg(&["polymatroid", "check", "--ideal", "ideal(a^2*b, c*d^2)"]);
    assert_eq!(o.status.code(), Some(1));
    let o = prodreg(&["polymatroid", "transversal", "--sets", "a,b; b,c; c,d"]);
    assert_eq!(o.status.code(), Some(0));
    let o = prodreg(&["polymatroid", "product", "--ideal", "ideal(a, b)", "--other", "ideal(b, c)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reg = 2"));
}
