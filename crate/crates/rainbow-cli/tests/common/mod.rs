//! Helpers shared by the CLI integration tests: spawn the real binary,
//! capture its streams, and shuttle text files through a temp dir.
#![allow(dead_code)] // each test target uses its own subset

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rainbow"))
}

/// Run the binary with `args`, optionally feeding `stdin_data` to it.
pub fn run_with_stdin(args: &[&str], stdin_data: Option<&str>) -> Run {
    let mut cmd = bin();
    cmd.args(args)
        .stdin(if stdin_data.is_some() {
            Stdio::piped()
        } else {
            Stdio::null()
        })
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn rainbow binary");
    if let Some(data) = stdin_data {
        child
            .stdin
            .take()
            .expect("stdin handle")
            .write_all(data.as_bytes())
            .expect("write stdin");
    }
    let out = child.wait_with_output().expect("wait for rainbow binary");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf8 stderr"),
    }
}

pub fn run(args: &[&str]) -> Run {
    run_with_stdin(args, None)
}

/// Run and insist on exit code 0, returning stdout.
pub fn run_ok(args: &[&str]) -> String {
    let r = run(args);
    assert_eq!(
        r.code, 0,
        "expected success from {args:?}\nstdout: {}\nstderr: {}",
        r.stdout, r.stderr
    );
    r.stdout
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("write test file");
    path
}

pub fn read_file(path: &Path) -> String {
    std::fs::read_to_string(path).expect("read test file")
}

/// Extract the value of a `key value` line from plain-text output.
pub fn field<'a>(output: &'a str, key: &str) -> Option<&'a str> {
    output
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|rest| rest.strip_prefix(' ')))
}
