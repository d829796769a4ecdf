//! Run configuration: what the command line parses into, and what `qdouble run` reads from JSON.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

/// Environment variable that overrides the configured seed.
pub const SEED_ENV: &str = "QDOUBLE_SEED";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandSpec,
    #[serde(default)]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub action: ActionSpec,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", deny_unknown_fields)]
pub enum GroupSpec {
    /// `trivial`, `Z<n>`, `D<n>`, `S<n>`, `Q8`, products like `Z2xS3`.
    Builtin { name: String },
    /// Cayley-table JSON file.
    File { path: PathBuf },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", deny_unknown_fields)]
pub enum ActionSpec {
    #[default]
    Conjugation,
    /// Action-table JSON file.
    File { path: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "camelCase")]
pub enum Suite {
    All,
    Hopf,
    Quasitriangular,
    Star,
    Dpr,
    Tga,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "camelCase", deny_unknown_fields)]
pub enum CommandSpec {
    Irreps {
        #[serde(default)]
        matrices: bool,
    },
    Verify {
        suite: Suite,
    },
    Tensor {
        left: String,
        right: String,
    },
    #[serde(rename = "su2-verify")]
    Su2Verify {
        n: i32,
        /// Spin cutoff as a half-integer string, e.g. `"3/2"`.
        l: String,
        order: usize,
    },
    #[serde(rename = "sl2r-classify")]
    Sl2rClassify {
        matrix: [f64; 4],
    },
}

/// Overrides of the default tolerances and sample counts.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Tolerances {
    /// Identities exact on integer basis data (default 1e-12).
    #[serde(default)]
    pub exact: Option<f64>,
    /// Quadrature-based SU(2) identities (default 1e-8).
    #[serde(default)]
    pub quadrature: Option<f64>,
    /// Random algebra elements per check (default 100).
    #[serde(default)]
    pub samples: Option<usize>,
}

impl RunConfig {
    /// Applies the `QDOUBLE_SEED` override, if set.
    pub fn with_env_seed(mut self) -> Result<Self, String> {
        if let Ok(s) = std::env::var(SEED_ENV) {
            self.seed = s
                .trim()
                .parse()
                .map_err(|_| format!("{SEED_ENV}={s:?} is not an unsigned integer"))?;
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_and_rejects_unknown_fields() {
        let cfg = RunConfig {
            command: CommandSpec::Verify { suite: Suite::Hopf },
            group: Some(GroupSpec::Builtin { name: "S3".into() }),
            action: ActionSpec::Conjugation,
            seed: 7,
            output: None,
            tolerances: Tolerances::default(),
        };
        let s = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&s).unwrap(), cfg);

        let bad = s.replacen("\"seed\"", "\"sead\"", 1);
        assert!(serde_json::from_str::<RunConfig>(&bad).is_err());
        let bad = r#"{"command":{"name":"irreps","matrices":false,"extra":1}}"#;
        assert!(serde_json::from_str::<RunConfig>(bad).is_err());
        let bad = r#"{"command":{"name":"irreps"},"group":{"kind":"builtin","name":"S3","x":0}}"#;
        assert!(serde_json::from_str::<RunConfig>(bad).is_err());
        let ok = r#"{"command":{"name":"sl2r-classify","matrix":[1,1,0,1]}}"#;
        assert!(serde_json::from_str::<RunConfig>(ok).is_ok());
    }
}
