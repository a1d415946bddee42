use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use crate::config::Settings;
use crate::error::{CliError, Result};

/// Record of one CLI run. The body is the resolved configuration in
/// `key = value` form; metadata lines are comments, so the manifest can be
/// passed back through `--config` to repeat the run.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub settings: Settings,
    pub artifacts: Vec<PathBuf>,
    pub tool_version: &'static str,
    pub wall_clock: Duration,
}

impl RunManifest {
    pub fn new(settings: Settings) -> Self {
        RunManifest {
            settings,
            artifacts: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION"),
            wall_clock: Duration::ZERO,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# intrans run manifest");
        let _ = writeln!(out, "# tool_version: {}", self.tool_version);
        let _ = writeln!(out, "# command: {}", self.settings.experiment);
        let _ = writeln!(out, "# seed: {}", self.settings.game.rng_seed);
        let _ = writeln!(
            out,
            "# wall_clock_seconds: {:.3}",
            self.wall_clock.as_secs_f64()
        );
        for a in &self.artifacts {
            let _ = writeln!(out, "# artifact: {}", a.display());
        }
        out.push_str(&self.settings.to_config_text());
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render()).map_err(CliError::io(path))
    }
}
