//! JSON snapshot of a finished run: the map, the actors it was built with and
//! the window size. Loading a dump reproduces the map exactly.

use std::path::Path;

use mindmap_core::mindmap::MindMap;
use mindmap_core::thesaurus::Thesaurus;
use serde::{Deserialize, Serialize};

use crate::error::AppError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDump {
    pub format: u32,
    pub window_capacity: usize,
    pub actors: Thesaurus,
    pub map: MindMap,
}

impl StateDump {
    pub fn new(map: MindMap, actors: Thesaurus, window_capacity: usize) -> Self {
        Self { format: FORMAT_VERSION, window_capacity, actors, map }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("state is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let dump: StateDump = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if dump.format != FORMAT_VERSION {
            return Err(format!("unsupported state format {}, expected {FORMAT_VERSION}", dump.format));
        }
        Ok(dump)
    }

    pub fn load(path: &Path) -> Result<Self, AppError> {
        let text = crate::formats::read_text(path)?;
        Self::from_json(&text).map_err(|e| AppError::Input(format!("{}: {e}", path.display())))
    }
}
