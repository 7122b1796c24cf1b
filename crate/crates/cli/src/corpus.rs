//! Golden-report checks over a directory of `.sess` files.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::run::{render, Options};

/// Text a session file renders to, parse failures included.
pub fn report_for(text: &str, opts: Options) -> String {
    match render(text, opts, false) {
        Ok((out, _)) => out,
        Err(d) => format!("parse error: {d}\n"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    MissingGolden,
    Blessed,
}

/// Session files in name order.
pub fn sessions(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut out: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "sess"))
        .collect();
    out.sort();
    Ok(out)
}

/// Compare (or with `bless`, rewrite) the golden `.out` next to every session.
pub fn check_dir(dir: &Path, opts: Options, bless: bool) -> io::Result<Vec<(PathBuf, Status)>> {
    let mut results = Vec::new();
    for sess in sessions(dir)? {
        let text = fs::read_to_string(&sess)?;
        let got = report_for(&text, opts);
        let golden = sess.with_extension("out");
        let status = if bless {
            fs::write(&golden, &got)?;
            Status::Blessed
        } else {
            match fs::read_to_string(&golden) {
                Ok(want) if want.replace("\r\n", "\n") == got => Status::Match,
                Ok(_) => Status::Mismatch,
                Err(_) => Status::MissingGolden,
            }
        };
        results.push((sess, status));
    }
    Ok(results)
}
