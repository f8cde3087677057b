//! Surface documents.
//!
//! A surface is described by a JSON object:
//!
//! ```json
//! {"core_genus": 0, "boundary": 0, "punctures": ["p"], "arms": ["e1", "e2"]}
//! ```
//!
//! `core_genus` and `arms` are required, `boundary` and `punctures` default to
//! zero and empty. The order of `arms` is the basis order. Unknown keys are
//! rejected.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::SurfaceSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDocument {
    pub core_genus: u32,
    #[serde(default)]
    pub boundary: u32,
    #[serde(default)]
    pub punctures: Vec<String>,
    pub arms: Vec<String>,
}

impl SurfaceDocument {
    pub fn parse(text: &str) -> Result<SurfaceDocument> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            position: byte_offset(text, e.line(), e.column()),
            expected: "surface document".into(),
            found: e.to_string(),
        })
    }

    pub fn to_surface(&self) -> Result<SurfaceSpec> {
        SurfaceSpec::new(
            self.core_genus,
            self.boundary,
            self.punctures.iter().cloned(),
            self.arms.iter().cloned(),
        )
    }
}

impl From<&SurfaceSpec> for SurfaceDocument {
    fn from(s: &SurfaceSpec) -> Self {
        SurfaceDocument {
            core_genus: s.core_genus(),
            boundary: s.boundary_count(),
            punctures: s.puncture_ids().to_vec(),
            arms: s.arm_ids().to_vec(),
        }
    }
}

pub fn parse_surface(text: &str) -> Result<SurfaceSpec> {
    SurfaceDocument::parse(text)?.to_surface()
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let line_start: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    line_start + column.saturating_sub(1)
}
