//! On-disk search checkpoints: JSON with a SHA-256 digest over every field
//! that precedes it.

use std::fs;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{SearchState, StageResult};
use crate::error::{Error, Result};

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterSettings {
    pub prune_filters: bool,
    pub mirror_prune: bool,
    pub deterministic: bool,
}

/// Field order is the on-disk order and feeds the digest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub n: usize,
    pub l: u32,
    pub next_index: u64,
    pub stages: Vec<StageResult>,
    pub filters: FilterSettings,
    pub stage_examined: u64,
    pub stage_elapsed_ns: u64,
}

#[derive(Serialize, Deserialize)]
struct CheckpointFile {
    #[serde(flatten)]
    body: Checkpoint,
    digest: String,
}

fn digest_of(body: &Checkpoint) -> String {
    let bytes = serde_json::to_vec(body).expect("checkpoint serializes");
    hex::encode(Sha256::digest(bytes))
}

impl Checkpoint {
    pub(crate) fn from_state(state: &SearchState, filters: FilterSettings) -> Self {
        Checkpoint {
            version: CHECKPOINT_VERSION,
            n: state.n,
            l: state.l,
            next_index: state.next_index,
            stages: state.stages.clone(),
            filters,
            stage_examined: state.stage_examined,
            stage_elapsed_ns: u64::try_from(state.stage_elapsed.as_nanos()).unwrap_or(u64::MAX),
        }
    }

    pub(crate) fn into_state(self) -> SearchState {
        SearchState {
            n: self.n,
            l: self.l,
            next_index: self.next_index,
            stages: self.stages,
            stage_examined: self.stage_examined,
            stage_elapsed: Duration::from_nanos(self.stage_elapsed_ns),
        }
    }

    pub fn to_json(&self) -> String {
        let file = CheckpointFile {
            digest: digest_of(self),
            body: self.clone(),
        };
        serde_json::to_string(&file).expect("checkpoint serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::CorruptCheckpoint(e.to_string()))?;
        match raw.get("version").and_then(|v| v.as_u64()) {
            Some(v) if v == u64::from(CHECKPOINT_VERSION) => {}
            other => {
                return Err(Error::CorruptCheckpoint(format!(
                    "unsupported version {other:?}"
                )));
            }
        }
        let file: CheckpointFile =
            serde_json::from_value(raw).map_err(|e| Error::CorruptCheckpoint(e.to_string()))?;
        if digest_of(&file.body) != file.digest {
            return Err(Error::CorruptCheckpoint("digest mismatch".into()));
        }
        Ok(file.body)
    }

    /// Writes through a temporary file so a crash never leaves a torn
    /// checkpoint behind.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, self.to_json())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Checkpoint::from_json(&fs::read_to_string(path)?)
    }
}
