use std::path::PathBuf;
use std::process::{Command, Output};

const NAMES: [&str; 5] = ["tetra", "target", "s2xs1", "lens31", "heisenberg"];

fn twistfp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistfp")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = twistfp(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("twistfp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn h1_of_target() {
    assert_eq!(stdout(&["h1", "example:target", "--mul", "4,1,1"]), "Z/4 (both routes agree)\n");
}

#[test]
fn cylinders_of_target() {
    assert_eq!(
        stdout(&["cylinders", "example:target", "--mul", "4,1,1"]),
        "(1,4) (2,2) (2,2), integral, multipliers 4,1,1\n"
    );
}

#[test]
fn roundtrip_of_tetra() {
    assert_eq!(
        stdout(&["roundtrip", "example:tetra", "--mul", "1,1,3"]),
        "PASS (diagram isomorphic after recover+retwist)\n"
    );
}

#[test]
fn cycles_in_arrow_notation() {
    let out = stdout(&["cycles", "example:tetra"]);
    assert!(out.contains("BC -ε₁-> BD -ε₂⁻¹-> AD -ε₁⁻¹-> AC -ε₂-> BC"), "{out}");
}

#[test]
fn full_pipeline_on_every_example() {
    for name in NAMES {
        let ex = format!("example:{name}");
        for cmd in ["validate", "cycles", "twist", "heegaard", "cylinders", "link", "h1", "roundtrip"] {
            let o = twistfp(&[cmd, &ex]);
            assert!(o.status.success(), "{cmd} {name}: {}", String::from_utf8_lossy(&o.stderr));
        }
    }
}

#[test]
fn example_materializes_a_parseable_document() {
    let doc = stdout(&["example", "s2xs1"]);
    let path = tmp("s2xs1.txt");
    std::fs::write(&path, &doc).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["validate", p]), "valid\n");
    assert_eq!(stdout(&["h1", p, "--mul", "3"]), "Z (both routes agree)\n");
}

#[test]
fn diagram_files_invert_and_recover() {
    let d = tmp("lens.hd");
    std::fs::write(&d, stdout(&["heegaard", "example:lens31"])).unwrap();
    let dp = d.to_str().unwrap();
    let model = stdout(&["recover", dp]);
    assert!(model.contains("pair L0 R0 offset 2"), "{model}");
    let m = tmp("lens-model.txt");
    std::fs::write(&m, &model).unwrap();
    assert_eq!(stdout(&["h1", m.to_str().unwrap()]), "Z/9 (both routes agree)\n");
    let inv = stdout(&["invert", dp]);
    assert!(inv.starts_with("ball lens31\n"));
    assert_eq!(stdout(&["roundtrip", dp]), "PASS (diagram isomorphic after recover+retwist)\n");
}

#[test]
fn non_integral_diagram_fails_recover() {
    let dual = [
        "heegaard d",
        "vcurve 0 : c0- c1- c2-",
        "dcurve 0 : c0- c1- c2-",
        "crossing 0 : v0:0> d0:0> v0:0< d0:0<",
        "crossing 1 : v0:1> d0:1> v0:1< d0:1<",
        "crossing 2 : v0:2> d0:2> v0:2< d0:2<",
    ];
    let path = tmp("dual.hd");
    std::fs::write(&path, dual.join("\n")).unwrap();
    let p = path.to_str().unwrap();
    let o = twistfp(&["recover", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not integral"));
    assert_eq!(stdout(&["cylinders", p]), "(3,1), not integral\n");
}

#[test]
fn exit_codes() {
    let bad = tmp("bad.txt");
    std::fs::write(&bad, "ball x\nvertex A\nedge e A B\n").unwrap();
    assert_eq!(twistfp(&["validate", bad.to_str().unwrap()]).status.code(), Some(2));
    let conflict = tmp("conflict.txt");
    let mut doc = stdout(&["example", "tetra"]);
    doc.push_str("mul edge=AB 2\nmul edge=AB 3\n");
    std::fs::write(&conflict, doc).unwrap();
    let o = twistfp(&["h1", conflict.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("conflicting"));
    let torus = tmp("torus.txt");
    std::fs::write(
        &torus,
        "ball t\nvertex A\nedge a A A\nedge b A A\nface F +a +b -a -b\nface G +a\npair F G offset 0\n",
    )
    .unwrap();
    assert_eq!(twistfp(&["validate", torus.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(twistfp(&["h1", "example:nope"]).status.code(), Some(2));
}

#[test]
fn grid_runs_and_agrees() {
    let out = stdout(&["h1", "example:tetra", "--grid", "1..2"]);
    assert_eq!(out.lines().count(), 8);
    assert!(out.lines().all(|l| l.ends_with(" agree")));
    assert!(out.contains("1,1,2: Z/2 / Z/2 agree"));
}

#[test]
fn json_reports() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["cylinders", "example:target", "--mul", "4,1,1", "--format", "json"])).unwrap();
    assert_eq!(v["integral"], true);
    assert_eq!(v["multipliers"], serde_json::json!([4, 1, 1]));
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["link", "example:s2xs1", "--mul", "2", "--format", "json"])).unwrap();
    assert_eq!(v["framings"], serde_json::json!(["0", "1/2"]));
}

#[test]
fn svg_outputs() {
    let svg = tmp("tetra.svg");
    stdout(&["link", "example:tetra", "--svg", svg.to_str().unwrap()]);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"strand\"").count(), 5);
    assert_eq!(text.matches("class=\"framing\"").count(), 3);
    let d = stdout(&["render", "example:lens31"]);
    assert!(d.starts_with("<svg") && d.contains("class=\"vertical\"") && d.contains("class=\"diagonal\""));
}

/// Reports for every registry entry at multipliers 1 are pinned; set UPDATE_GOLDEN=1 to rewrite.
#[test]
fn golden_reports() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for name in NAMES {
        let got = stdout(&["h1", &format!("example:{name}"), "--format", "json"])
            + &stdout(&["link", &format!("example:{name}")]);
        let path = dir.join(format!("{name}.txt"));
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::write(&path, &got).unwrap();
        }
        let want = std::fs::read_to_string(&path).unwrap_or_default();
        assert_eq!(got, want, "golden {name} differs");
    }
}
