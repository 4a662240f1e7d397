use std::fmt::Debug;

use clap::ValueEnum;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

/// Report sink carrying the provenance of the run.
pub struct Out {
    pub format: Format,
    seed: u64,
    config_hash: String,
}

impl Out {
    /// The config hash covers the whole parsed command line.
    pub fn new(config: &impl Debug, seed: u64, format: Format) -> Self {
        let digest = Sha256::digest(format!("{config:?}").as_bytes());
        Out {
            format,
            seed,
            config_hash: hex::encode(digest),
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Out {
            format: self.format,
            seed,
            config_hash: self.config_hash.clone(),
        }
    }

    pub fn provenance(&self) -> String {
        format!(
            "vwspace {} seed {} config sha256:{}",
            env!("CARGO_PKG_VERSION"),
            self.seed,
            self.config_hash
        )
    }

    /// Provenance as comment lines with the given marker.
    pub fn comment_header(&self, marker: &str) -> String {
        format!("{marker} {}\n", self.provenance())
    }

    pub fn print_text(&self, body: &str) {
        print!("{}{body}", self.comment_header("#"));
    }

    pub fn print_csv<S: AsRef<str>>(&self, header: &[S], rows: &[Vec<String>]) {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        w.write_record(header.iter().map(AsRef::as_ref)).expect("in-memory write");
        for r in rows {
            w.write_record(r).expect("in-memory write");
        }
        let bytes = w.into_inner().expect("in-memory write");
        print!("{}{}", self.comment_header("#"), String::from_utf8_lossy(&bytes));
    }
}
