use std::fs;
use std::io;
use std::path::PathBuf;

use nmtau::algebra::PolyXY;
use nmtau::permcore::Pattern;

use crate::{CliError, CliResult};

/// One JSON polynomial per `(pattern, n, cycle)`.
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    pub fn path(&self, tau: &Pattern, n: usize, cycle: bool) -> PathBuf {
        let kind = if cycle { "ncm" } else { "nm" };
        let key = tau.canonical_string().replace(',', "-");
        self.dir.join(format!("{kind}_{key}_n{n}.json"))
    }

    /// Reads the cached entry, or computes and stores it. With `recompute`
    /// the value is always computed and must agree with any cached entry.
    pub fn get_or_compute(
        &self,
        tau: &Pattern,
        n: usize,
        cycle: bool,
        recompute: bool,
        compute: impl FnOnce() -> PolyXY,
    ) -> CliResult<PolyXY> {
        let path = self.path(tau, n, cycle);
        let cached = match fs::read_to_string(&path) {
            Ok(text) => Some(PolyXY::from_json(&text).map_err(|e| {
                CliError::Io(format!("corrupt cache entry {}: {e}", path.display()))
            })?),
            Err(e) if e.kind() == io::ErrorKind::NotFound => None,
            Err(e) => return Err(io_error(&path, e)),
        };
        if let (Some(poly), false) = (&cached, recompute) {
            return Ok(poly.clone());
        }
        let fresh = compute();
        if let Some(old) = cached {
            if old != fresh {
                return Err(CliError::Verification(format!(
                    "cache entry {} disagrees with recomputation",
                    path.display()
                )));
            }
            return Ok(fresh);
        }
        fs::create_dir_all(&self.dir).map_err(|e| io_error(&self.dir, e))?;
        fs::write(&path, fresh.to_json()).map_err(|e| io_error(&path, e))?;
        Ok(fresh)
    }
}

fn io_error(path: &std::path::Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}
