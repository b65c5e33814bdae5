use std::path::PathBuf;
use std::process::{Command as Process, Output};

use linfty::algebra::ParamSpace;
use linfty::superspace::GradedSpace;
use linfty::text::parse_cochain;
use linfty_cli::report::relations_text;
use linfty_cli::{load_document, run_command, CodifferentialDocument, Command, Format, Options, Report};

fn path(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(rel)
        .display()
        .to_string()
}

fn linfty(args: &[&str]) -> Output {
    Process::new(env!("CARGO_BIN_EXE_linfty")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn table_rows(out: &str) -> Vec<&str> {
    out.lines().filter(|l| l.starts_with("D(")).collect()
}

#[test]
fn tables_match_golden_files() {
    for name in ["d2", "d1"] {
        let o = linfty(&["tables", "--input", &path(&format!("data/{name}.json"))]);
        assert_eq!(o.status.code(), Some(0));
        let out = stdout(&o);
        let golden = std::fs::read_to_string(path(&format!("golden/{name}.txt"))).unwrap();
        let rows = table_rows(&out);
        assert_eq!(rows.len(), 21);
        assert_eq!(rows[..18].join("\n") + "\n", golden, "{name}");
        assert!(rows[18..].iter().all(|r| r.ends_with(" = 0")));
    }
}

#[test]
fn symbolic_table_at_sample_points() {
    let golden = std::fs::read_to_string(path("golden/dlambda.txt")).unwrap();
    for l in ["7", "-1", "2/3"] {
        let o = linfty(&["tables", "--input", &path("data/dlambda.json"), "--lambda", l]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let out = stdout(&o);
        let lambda = linfty::text::parse_scalar(l).unwrap();
        for (row, expected) in table_rows(&out).iter().zip(golden.lines()) {
            let (lhs, got) = row.split_once(" = ").unwrap();
            let (elhs, want) = expected.split_once(" = ").unwrap();
            assert_eq!(lhs, elhs);
            let parse = |t: &str, l| parse_cochain(t, GradedSpace::odd(3), ParamSpace::default(), l).unwrap();
            assert_eq!(parse(got, None), parse(want, Some(&lambda)), "{row} at lambda = {l}");
        }
    }
}

#[test]
fn printed_row_appears_in_text_output() {
    let o = linfty(&["tables", "--cochain", "phi[101]_1 + phi[101]_2 + phi[011]_2"]);
    assert!(stdout(&o).contains("D(phi[001]_3) = -phi[101]_1 - phi[101]_2 - phi[011]_2\n"));
}

#[test]
fn classify_reports_tags() {
    let o = linfty(&["classify", "--input", &path("data/d3.json")]);
    assert!(stdout(&o).contains("class: d3\n"));
    let o = linfty(&["classify", "--cochain", "phi[101]_1 + 2*phi[011]_2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["result"]["label"],
        serde_json::json!({"tag": "d_family", "j": "9/2", "lambda": ["2", "1/2"]})
    );
    let o = linfty(&["classify", "--input", &path("data/dlambda.json"), "--lambda", "1/2"]);
    assert!(
        stdout(&o).contains("class: d_family j=9/2 lambda={2, 1/2}\n"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn cohomology_of_the_nilpotent_algebra() {
    let o = linfty(&["cohomology", "--input", &path("data/d1.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("h = (6,5,2)\n"));
    assert!(out.contains("H^2: phi[110]_2 - phi[101]_3\n"));
}

#[test]
fn deform_reports_relations() {
    let o = linfty(&["deform", "--input", &path("data/dminus1.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("terminated: yes, at order 2\n"));
    assert!(out.contains("verified: yes\n"));
    let line = out.lines().find(|l| l.starts_with("relations: ")).unwrap();
    for r in ["theta1*theta3", "theta2*theta4", "t2*theta3*theta4"] {
        assert!(line.contains(r), "{line}");
    }
    let o = linfty(&["deform", "--cochain", "0", "--space", "0|1"]);
    assert!(stdout(&o).contains("relations: (0)\n"));
    assert_eq!(relations_text(&[]), "(0)");
}

#[test]
fn exit_codes() {
    // non-termination
    let o = linfty(&["deform", "--input", &path("data/d2.json"), "--max-order", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("terminated: no\n"));
    // semantic errors
    let o = linfty(&["classify", "--cochain", "phi[110]_2 + phi[011]_3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[cochain.not_codifferential]"));
    let o = linfty(&[
        "cohomology",
        "--input",
        &path("data/d2.json"),
        "--basis-override",
        &path("data/d2_printed_h2.json"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[cohomology.invalid_override]"));
    let o = linfty(&["tables", "--cochain", "phi[100]_1"]);
    assert_eq!(o.status.code(), Some(2));
    // usage and parse errors
    assert_eq!(linfty(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(linfty(&["verify"]).status.code(), Some(1));
    let o = linfty(&["verify", "--cochain", "phi[101]_1 +* phi[011]_2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("error[parse.syntax]: --cochain: parse error at column"));
    let o = linfty(&["verify", "--input", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[cli.io]"));
    let o = linfty(&["tables", "--cochain", "lambda*phi[101]_1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_errors_carry_line_and_column() {
    let dir = std::env::temp_dir().join(format!("linfty-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("bad.json");
    std::fs::write(&file, "{\n  \"space\": \"0|3\",\n  \"terms\": [1]\n}\n").unwrap();
    let o = linfty(&["verify", "--input", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3, column"), "{}", stderr(&o));
    std::fs::write(
        &file,
        r#"{"space": "0|3", "terms": [{"word": "f1f4", "target": 1, "coefficient": "1"}]}"#,
    )
    .unwrap();
    let o = linfty(&["verify", "--input", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("terms[0].word"), "{}", stderr(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_lists_violated_equations() {
    let o = linfty(&["verify", "--cochain", "phi[110]_2 + phi[011]_3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("codifferential: no\n"));
    assert!(out.contains("[d,d] = 2*phi[111]_3\n"));
    assert!(
        out.contains("violated equations:\n  a9*a2 - a3*a8 + a6*a1 - a3*a4 = 1\n"),
        "{out}"
    );
    let o = linfty(&["verify", "--input", &path("data/d3.json")]);
    let out = stdout(&o);
    assert!(out.contains("codifferential: yes\n") && !out.contains("violated"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["deform", "--input", "data/d1.json"],
        vec!["cohomology", "--input", "data/d0.json", "--format", "json"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.ends_with(".json") { path(a) } else { a.to_string() })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(linfty(&args).stdout, linfty(&args).stdout);
    }
}

#[test]
fn reports_round_trip_through_json() {
    let options = Options::default();
    for (command, name) in [
        (Command::Deform, "d3"),
        (Command::Cohomology, "d1"),
        (Command::Classify, "d2"),
        (Command::Tables, "d2"),
        (Command::Verify, "d0"),
        (Command::Bracket, "d2"),
    ] {
        let doc = load_document(std::path::Path::new(&path(&format!("data/{name}.json")))).unwrap();
        let report = run_command(command, &[doc], &options).unwrap();
        let json = report.render(Format::Json);
        assert_eq!(Report::from_json(&json).unwrap(), report);
        assert_eq!(Report::from_json(&json).unwrap().render(Format::Json), json);
    }
}

#[test]
fn documents_round_trip() {
    let params = ParamSpace::new(1, 2).unwrap();
    let c = parse_cochain(
        "(1/2 + t1)*phi[101]_1 - i*phi[011]_2 + theta1*theta2*phi[110]_3 + theta2*phi[100]_2",
        GradedSpace::odd(3),
        params,
        None,
    )
    .unwrap();
    let doc = CodifferentialDocument::from_cochain(&c);
    let json = doc.to_json();
    let back = CodifferentialDocument::from_json(&json, "memory").unwrap();
    assert_eq!(back, doc);
    assert_eq!(back.to_json(), json);
    assert_eq!(back.cochain(None).unwrap(), c);

    let doc = load_document(std::path::Path::new(&path("data/dminus1.json"))).unwrap();
    let back = CodifferentialDocument::from_json(&doc.to_json(), "memory").unwrap();
    assert_eq!(back, doc);
}

#[test]
fn bracket_takes_two_inputs() {
    let o = linfty(&[
        "bracket",
        "--cochain",
        "phi[010]_3 + phi[001]_2",
        "--cochain",
        "phi[100]_3 - phi[001]_1",
    ]);
    assert!(stdout(&o).contains("bracket = phi[100]_2 + phi[010]_1\n"));
    let o = linfty(&["bracket", "--cochain", "phi[110]_2 + phi[011]_3"]);
    assert!(stdout(&o).contains("bracket = 2*phi[111]_3\n"));
    let o = linfty(&["classify", "--cochain", "0", "--cochain", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn mixed_space_documents() {
    let o = linfty(&["verify", "--cochain", "phi[110]_1", "--space", "1|2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("codifferential: yes\n"));
}
