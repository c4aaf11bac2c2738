use pwt_core::manifest::RunManifest;
use std::fs;
use std::path::{Path, PathBuf};

use crate::Failure;

/// Files written by one command. Every file's digest goes into the
/// manifest, which is written last.
pub struct Output {
    dir: Option<PathBuf>,
    pub manifest: RunManifest,
}

impl Output {
    pub fn new(dir: Option<&Path>, command: &str, config: serde_json::Value) -> Result<Self, Failure> {
        if let Some(d) = dir {
            fs::create_dir_all(d).map_err(|e| Failure::io(d, e))?;
        }
        Ok(Self {
            dir: dir.map(Path::to_path_buf),
            manifest: RunManifest::new(command, config),
        })
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<(), Failure> {
        if let Some(d) = &self.dir {
            let path = d.join(name);
            fs::write(&path, bytes).map_err(|e| Failure::io(&path, e))?;
            self.manifest.record_output(name, bytes);
        }
        Ok(())
    }

    pub fn finish(self) -> Result<(), Failure> {
        if let Some(d) = &self.dir {
            let path = d.join("manifest.json");
            fs::write(&path, self.manifest.to_json() + "\n").map_err(|e| Failure::io(&path, e))?;
        }
        Ok(())
    }
}
