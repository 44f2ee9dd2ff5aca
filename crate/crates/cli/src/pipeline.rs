use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use bikei::diagram::parse_gauss_code;
use bikei::engine::{complete, format_trace};
use bikei::presentation::{parse_presentation, to_short_form};
use bikei::{BikeiTable, EngineConfig, PresentationMatrix, ShortForm};

use crate::cache::Cache;

pub enum Completed {
    Finite(BikeiTable),
    Exceeded { bound: usize },
}

/// Engine settings shared by every command that completes something.
#[derive(Clone)]
pub struct Runner {
    pub cfg: EngineConfig,
    pub cache: Option<Cache>,
    pub trace: Option<PathBuf>,
}

impl Runner {
    pub fn run(&self, input: &ShortForm) -> Result<Completed> {
        let key = self
            .cache
            .as_ref()
            .map(|_| Cache::key(&input.matrix, &input.merges, &self.cfg));
        // a cached table has no trace to write, so a trace request always runs the engine
        if let (Some(cache), Some(key), None) = (&self.cache, &key, &self.trace) {
            if let Some(t) = cache.get(key) {
                return Ok(Completed::Finite(t));
            }
        }
        let cfg = EngineConfig {
            trace: self.trace.is_some(),
            ..self.cfg.clone()
        };
        let out = complete(&input.matrix, &input.merges, &cfg)?;
        if let (Some(path), Some(events)) = (&self.trace, &out.trace) {
            fs::write(path, format_trace(events))
                .with_context(|| format!("writing trace {}", path.display()))?;
        }
        match out.table {
            Some(t) => {
                if let (Some(cache), Some(key)) = (&self.cache, &key) {
                    cache
                        .put(key, &t)
                        .with_context(|| format!("writing cache entry {key}"))?;
                }
                Ok(Completed::Finite(t))
            }
            None => Ok(Completed::Exceeded { bound: out.bound }),
        }
    }
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// A presentation file holds either a matrix or `gens` relations.
pub fn parse_matrix_input(text: &str) -> Result<ShortForm> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.starts_with("gens") {
        return Ok(to_short_form(&parse_presentation(text)?));
    }
    Ok(ShortForm {
        matrix: PresentationMatrix::parse(text)?,
        merges: Vec::new(),
    })
}

/// Accepts a code directly, or the path of a file whose first non-comment
/// line is the code.
pub fn parse_code_arg(arg: &str) -> Result<ShortForm> {
    let path = Path::new(arg);
    let code = if !arg.is_empty() && path.is_file() {
        let text = read(path)?;
        text.lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .unwrap_or("")
            .to_string()
    } else {
        arg.to_string()
    };
    Ok(parse_gauss_code(&code)?.to_presentation())
}

/// Table text with the `n=<k>` cardinality line in place of the bare size.
pub fn render(t: &BikeiTable) -> String {
    let text = t.to_text();
    let rows = text.split_once('\n').map_or("", |(_, rest)| rest);
    format!("n={}\n{rows}", t.size())
}
