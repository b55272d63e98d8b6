use serde_json::{json, Value};

use crate::{Format, Global};

/// An input or computation error; exit status 2.
#[derive(Debug)]
pub struct Failure(pub String);

impl From<prodreg::Error> for Failure {
    fn from(e: prodreg::Error) -> Self {
        Failure(e.to_string())
    }
}

pub struct Report {
    pub command: String,
    pub text: String,
    pub data: Value,
    pub verdict: bool,
    /// Seed actually used, when the run was randomized.
    pub seed: Option<u64>,
}

impl Report {
    pub fn new(command: &str, text: String, data: Value, verdict: bool) -> Self {
        Self {
            command: command.to_string(),
            text,
            data,
            verdict,
            seed: None,
        }
    }

    pub fn print(&self, global: &Global) {
        match global.format {
            Format::Text => {
                if let Some(seed) = self.seed {
                    println!("seed: {seed}");
                }
                print!("{}", self.text);
                if !self.text.ends_with('\n') {
                    println!();
                }
            }
            Format::Structured => {
                let doc = json!({
                    "command": self.command,
                    "characteristic": global.characteristic,
                    "cap": global.cap,
                    "seed": self.seed,
                    "verdict": self.verdict,
                    "result": self.data,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            }
        }
    }
}
