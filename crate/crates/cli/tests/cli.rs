use std::path::PathBuf;
use std::process::{Command, Output};

fn instances() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances")
}

fn inst(name: &str) -> String {
    instances().join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ofmonad")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn verify_all_on_the_flagship_instance() {
    let o = run(&["verify", "all", "--frame", "chain:2", "--space", "sierpinski"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("== degeneration"));
}

#[test]
fn non_distributive_frame_exits_one_with_witness() {
    let m3 = format!("covers:{}", inst("m3.txt"));
    let o = run(&["verify", "frame", "--frame", &m3, "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let e = &v["entries"][0];
    assert_eq!(e["verdict"], "fail");
    assert_eq!(e["law"], "heyting.infinite_distributive");
    assert!(e["witness"].as_str().unwrap().contains("a="));
}

#[test]
fn seeded_json_reports_are_byte_identical() {
    let args = ["verify", "monad", "--frame", "chain:3", "--space", "sierpinski", "--sample", "200", "--seed", "7", "--format", "json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let all = ["verify", "all", "--seed", "3", "--format", "json"];
    assert_eq!(run(&all).stdout, run(&all).stdout);
}

#[test]
fn json_and_text_agree_on_verdicts() {
    let json = run(&["verify", "filter", "--frame", "chain:3", "--format", "json"]);
    let text = run(&["verify", "filter", "--frame", "chain:3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    let mut from_json: Vec<String> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| format!("{} {}", e["verdict"].as_str().unwrap().to_uppercase(), e["law"].as_str().unwrap()))
        .collect();
    let mut from_text: Vec<String> = stdout(&text)
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL") || l.starts_with("SKIP"))
        .map(|l| {
            let mut w = l.split_whitespace();
            let verdict = match w.next().unwrap() {
                "SKIP" => "SKIPPED",
                other => other,
            };
            format!("{verdict} {}", w.next().unwrap())
        })
        .collect();
    from_json.sort();
    from_text.sort();
    assert_eq!(from_json, from_text);
}

#[test]
fn resource_cap_exits_two() {
    let o = run(&["verify", "filter", "--frame", "chain:5"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("resource limit"));
    let o = run(&["verify", "filter", "--frame", "chain:3", "--caps", &inst("small.caps.toml")]);
    assert_eq!(code(&o), 0);
    let o = run(&["verify", "filter", "--frame", "chain:4", "--caps", &inst("small.caps.toml")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn config_errors_exit_three_with_locations() {
    let o = run(&["verify", "frame", "--frame", "chain:"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("1:7"), "{}", stderr(&o));

    let dir = std::env::temp_dir().join(format!("ofmonad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.inst");
    std::fs::write(&bad, "space {\n  points: [x];\n  generators: [{q: 1}];\n}\n").unwrap();
    let o = run(&["verify", "topology", "--space", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("3:17"), "{}", stderr(&o));

    let caps = dir.join("caps.toml");
    std::fs::write(&caps, "no_such_cap = 1\n").unwrap();
    assert_eq!(code(&run(&["verify", "frame", "--caps", caps.to_str().unwrap()])), 3);
    assert_eq!(code(&run(&["verify", "everything"])), 3);
}

#[test]
fn witness_files_are_checked() {
    let o = run(&["verify", "algebra", "--witness", &inst("sierpinski.witness")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let dir = std::env::temp_dir().join(format!("ofmonad-cli-w-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = std::fs::read_to_string(instances().join("sierpinski.witness")).unwrap();
    let swapped = dir.join("swapped.witness");
    std::fs::write(&swapped, text.replace("r: [x, y, y];", "r: [y, x, y];")).unwrap();
    let o = run(&["verify", "algebra", "--witness", swapped.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness:"));
}

#[test]
fn enumerate_filters_of_the_sierpinski_space() {
    let o = run(&["enumerate", "filters", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["filters"].as_array().unwrap().len(), 3);
    let o = run(&["enumerate", "filters", "--frame", "chain:3", "--space", &inst("graded.inst")]);
    assert!(stdout(&o).lines().next().unwrap().ends_with("open filters"));
}

#[test]
fn dumps() {
    let o = run(&["dump", "waybelow", "--frame", "chain:3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["waybelow"][0], serde_json::json!(["1", "0", "0"]));
    assert_eq!(v["waybelow"][2], serde_json::json!(["1", "1", "1"]));
    let o = run(&["dump", "scott", "--order", &inst("selfL3.inst")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("6 Scott opens"));
}
