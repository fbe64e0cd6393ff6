use std::path::{Path, PathBuf};

use serde::Deserialize;

use coset_core::clifford::GeneratorSet;
use coset_core::graphs::export::Format;
use coset_core::group::EnumeratedGroup;
use coset_core::states::PureState;

use crate::CliError;

/// Largest accepted `--tol`.
pub const MAX_TOL: f64 = 1e-3;

#[derive(Clone, Debug)]
pub enum GensChoice {
    Named(String),
    File(PathBuf),
}

/// Everything a command needs, validated once up front.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: String,
    pub state: Option<String>,
    pub gens: GensChoice,
    pub tol: f64,
    pub cap: usize,
    pub out: Option<PathBuf>,
    pub cache_dir: PathBuf,
    pub jobs: usize,
    pub format: Format,
    pub extended: bool,
    pub keep_loops: bool,
    pub directed_edges: bool,
}

/// On-disk custom generator set.
#[derive(Debug, Deserialize)]
struct GenFile {
    name: String,
    #[serde(default = "two")]
    qubits: usize,
    generators: Vec<String>,
    #[serde(default)]
    local: Vec<String>,
}

fn two() -> usize {
    2
}

pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os("COSET_CACHE_DIR") {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("coset-graphs");
    }
    match std::env::var_os("HOME") {
        Some(home) => PathBuf::from(home).join(".cache").join("coset-graphs"),
        None => PathBuf::from(".coset-cache"),
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.cap == 0 {
            return Err(CliError::Usage("--cap must be positive".into()));
        }
        if !(self.tol > 0.0 && self.tol <= MAX_TOL) {
            return Err(CliError::Usage(format!("--tol must lie in (0, {MAX_TOL:e}]")));
        }
        if self.jobs == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        Ok(())
    }

    pub fn generator_set(&self) -> Result<GeneratorSet, CliError> {
        match &self.gens {
            GensChoice::Named(name) => Ok(GeneratorSet::by_name(name).map_err(|e| CliError::Usage(e.to_string()))?),
            GensChoice::File(path) => {
                let text = std::fs::read_to_string(path)?;
                let spec: GenFile = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                let gens: Vec<&str> = spec.generators.iter().map(String::as_str).collect();
                let local: Vec<&str> = spec.local.iter().map(String::as_str).collect();
                GeneratorSet::from_words(&spec.name, spec.qubits, &gens, &local).map_err(|e| CliError::Usage(e.to_string()))
            }
        }
    }

    pub fn state(&self) -> Result<PureState, CliError> {
        let spec = self
            .state
            .as_deref()
            .ok_or_else(|| CliError::Usage(format!("`{}` needs --state", self.command)))?;
        PureState::parse_spec(spec).map_err(|e| CliError::Usage(format!("--state {spec}: {e}")))
    }

    fn cache_path(&self, set: &GeneratorSet) -> PathBuf {
        self.cache_dir.join(format!("group-{}.json", set.name))
    }

    /// Loads the enumerated group from the cache if present, otherwise
    /// enumerates and stores it. Returns the group and whether it was cached.
    pub fn group(&self, set: &GeneratorSet) -> Result<(EnumeratedGroup, bool), CliError> {
        let path = self.cache_path(set);
        if path.exists() {
            if let Ok(g) = EnumeratedGroup::load(&path) {
                if g.generator_labels() == set.generator_labels() {
                    return Ok((g, true));
                }
            }
        }
        let g = EnumeratedGroup::from_generator_set(set, self.cap)?;
        if std::fs::create_dir_all(&self.cache_dir).is_ok() {
            // a read-only cache location is not an error
            let _ = g.save(&path);
        }
        Ok((g, false))
    }

    /// Writes `contents` to `name` under `--out`, if given.
    pub fn write_output(&self, name: &str, contents: &str) -> Result<Option<PathBuf>, CliError> {
        let Some(dir) = &self.out else {
            return Ok(None);
        };
        std::fs::create_dir_all(dir)?;
        let path = dir.join(name);
        std::fs::write(&path, contents)?;
        Ok(Some(path))
    }
}

pub fn display(p: &Path) -> String {
    p.display().to_string()
}
