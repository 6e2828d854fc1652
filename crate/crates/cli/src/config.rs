//! TOML experiment files for `phivar run`.
//!
//! ```toml
//! command = "ff-variance"
//! emit = "csv"
//! out = "var.csv"
//!
//! [params]
//! q = 3
//! n = 5
//! h = 0
//! formula_check = true
//! ```

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::commands::{AssumptionArgs, CharsumArgs, FfVarianceArgs, IntLemmasArgs, IntVarianceArgs, RhArgs};
use crate::output::Emit;
use crate::ConfigError;

#[derive(Debug, Clone)]
pub enum ConfigCommand {
    IntVariance(IntVarianceArgs),
    IntLemmas(IntLemmasArgs),
    AssumptionTest(AssumptionArgs),
    FfVariance(FfVarianceArgs),
    FfCharsumCheck(CharsumArgs),
    FfRhCheck(RhArgs),
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub command: ConfigCommand,
    pub emit: Emit,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum CommandName {
    IntVariance,
    IntLemmas,
    AssumptionTest,
    FfVariance,
    FfCharsumCheck,
    FfRhCheck,
}

#[derive(Deserialize)]
struct Head {
    command: CommandName,
}

// Parsed with the concrete parameter type so that TOML errors keep their spans.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Typed<A> {
    #[allow(dead_code)]
    command: String,
    #[serde(default)]
    emit: Emit,
    out: Option<PathBuf>,
    params: A,
}

fn typed<A: DeserializeOwned>(text: &str, wrap: fn(A) -> ConfigCommand) -> std::result::Result<ExperimentConfig, toml::de::Error> {
    let t: Typed<A> = toml::from_str(text)?;
    Ok(ExperimentConfig {
        command: wrap(t.params),
        emit: t.emit,
        out: t.out,
    })
}

pub fn parse(text: &str) -> std::result::Result<ExperimentConfig, toml::de::Error> {
    let head: Head = toml::from_str(text)?;
    match head.command {
        CommandName::IntVariance => typed(text, ConfigCommand::IntVariance),
        CommandName::IntLemmas => typed(text, ConfigCommand::IntLemmas),
        CommandName::AssumptionTest => typed(text, ConfigCommand::AssumptionTest),
        CommandName::FfVariance => typed(text, ConfigCommand::FfVariance),
        CommandName::FfCharsumCheck => typed(text, ConfigCommand::FfCharsumCheck),
        CommandName::FfRhCheck => typed(text, ConfigCommand::FfRhCheck),
    }
}

pub fn load(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_config() {
        let cfg = parse("command = \"ff-rh-check\"\nemit = \"json\"\nout = \"rh.json\"\n[params]\nq = 3\nm = 5\n").unwrap();
        assert!(matches!(cfg.command, ConfigCommand::FfRhCheck(RhArgs { q: 3, m: 5 })));
        assert_eq!(cfg.emit, Emit::Json);
        assert_eq!(cfg.out.as_deref(), Some(Path::new("rh.json")));
    }

    #[test]
    fn errors_point_at_the_offending_line() {
        let e = parse("command = \"ff-variance\"\n[params]\nq = 3\nn = 5\nhh = 0\n").unwrap_err().to_string();
        assert!(e.contains("line 5") && e.contains("hh"), "{e}");
        let e = parse("command = \"int-lemmas\"\n[params]\ncheck = \"nope\"\ncutoff = 3\n").unwrap_err().to_string();
        assert!(e.contains("line 3"), "{e}");
        let e = parse("command = \"x\"\n").unwrap_err().to_string();
        assert!(e.contains("unknown variant"), "{e}");
    }
}
