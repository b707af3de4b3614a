use std::fs;
use std::io::{BufReader, BufWriter};
use std::net::{TcpListener, TcpStream};
use std::path::Path;
use std::process::{Command, Output};
use std::thread;
use std::time::Duration;

use pct_agent::harness::{serve, sim_preset, SimEnv};
use pct_agent::sim::Game;

fn pctagent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pctagent"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("failed to start pctagent")
}

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("run.toml");
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn run_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "[run]\nepisodes = 3\nmax_steps = 300\n[hierarchy]\nintegrator_limit = 3\n",
    );
    let out = dir.path().join("out");
    let o = pctagent(&[
        "run",
        "--config",
        &cfg,
        "--seed",
        "9",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("mean"), "{stdout}");
    assert!(stdout.contains('#'), "no histogram in {stdout}");

    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["seed"], 9);
    assert_eq!(summary["episodes_requested"], 3);
    assert_eq!(summary["policy"], "pct");
    assert_eq!(summary["mode"]["frameskip"], 4);
    let episodes = fs::read_to_string(out.join("episodes.csv")).unwrap();
    assert_eq!(episodes.lines().count(), 4);
    assert!(fs::read_to_string(out.join("histogram.csv"))
        .unwrap()
        .starts_with("bin_start,bin_end,count"));
}

#[test]
fn same_seed_gives_identical_summaries() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = pctagent(&[
            "run",
            "--episodes",
            "4",
            "--env",
            "sim_pong",
            "--seed",
            "5",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        (
            fs::read(out.join("summary.json")).unwrap(),
            fs::read(out.join("episodes.csv")).unwrap(),
        )
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn random_policy_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r");
    let o = pctagent(&[
        "run",
        "--episodes",
        "2",
        "--policy",
        "random",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let summary = fs::read_to_string(out.join("summary.json")).unwrap();
    assert!(summary.contains("\"policy\": \"random\""), "{summary}");
}

#[test]
fn invalid_config_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[hierarchy]\nintegrator_limit = 0\n");
    let o = pctagent(&["run", "--config", &cfg]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("hierarchy.integrator_limit"));

    let cfg = write_config(dir.path(), "[sim]\npaddle_sped = 2.0\n");
    let o = pctagent(&["run", "--config", &cfg]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("paddle_sped"));

    let o = pctagent(&["run", "--episodes", "0"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("run.episodes"));

    let o = pctagent(&["run", "--env", "remote"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("run.listen"));

    let o = pctagent(&["run", "--policy", "clever"]);
    assert!(!o.status.success());
}

#[test]
fn dump_frames_writes_graymaps() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[run]\nepisodes = 2\nmax_steps = 5\n");
    let frames = dir.path().join("frames");
    let o = pctagent(&[
        "run",
        "--config",
        &cfg,
        "--dump-frames",
        frames.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut files: Vec<_> = fs::read_dir(&frames)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    // first episode only: the reset frame plus five steps
    assert_eq!(files.len(), 6);
    let pgm = fs::read(&files[0]).unwrap();
    assert!(pgm.starts_with(b"P5\n160 210\n255\n"));
    assert_eq!(pgm.len(), b"P5\n160 210\n255\n".len() + 160 * 210);
}

#[test]
fn listens_for_a_remote_bridge() {
    let addr = {
        let l = TcpListener::bind("127.0.0.1:0").unwrap();
        l.local_addr().unwrap().to_string()
    };
    let bridge_addr = addr.clone();
    let bridge = thread::spawn(move || {
        let stream = (0..500)
            .find_map(|_| {
                TcpStream::connect(&bridge_addr)
                    .map_err(|_| thread::sleep(Duration::from_millis(10)))
                    .ok()
            })
            .expect("pctagent never listened");
        let mut env = SimEnv::new(sim_preset(Game::Breakout).0).unwrap();
        serve(
            &mut env,
            2,
            BufReader::new(stream.try_clone().unwrap()),
            BufWriter::new(stream),
        )
        .unwrap()
    });

    let dir = tempfile::tempdir().unwrap();
    // the simulator's frames need the simulator's crop
    let cfg = write_config(
        dir.path(),
        "[run]\nepisodes = 2\nmax_steps = 50\n[crop]\ntop_row = 96\nleft_col = 14\n[layout]\npaddle_zone = { top = 86, bottom = 99, left = 0, right = 131 }\n",
    );
    let out = dir.path().join("out");
    let o = pctagent(&[
        "run",
        "--config",
        &cfg,
        "--env",
        "remote",
        "--listen",
        &addr,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(bridge.join().unwrap(), 2);
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["env"], "remote");
    assert_eq!(summary["episodes_completed"], 2);
}
