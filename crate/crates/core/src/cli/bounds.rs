use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use super::CliError;
use crate::group::DEFAULT_INDEX_BOUND;

pub const BOUNDS_ENV: &str = "INERTIA_LAB_BOUNDS";

/// Search bounds. Defaults, then the config file, then `INERTIA_LAB_BOUNDS`;
/// command flags override all three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bounds {
    /// largest subgroup index searched for decomposition groups over `Q`
    pub index_bound: usize,
    /// largest auxiliary prime sampled for surjectivity
    pub ell_bound: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { index_bound: DEFAULT_INDEX_BOUND, ell_bound: 500 }
    }
}

fn merge(base: &mut Value, over: Value) {
    if let (Some(b), Value::Object(o)) = (base.as_object_mut(), over) {
        b.extend(o);
    }
}

impl Bounds {
    pub fn load(config: Option<&Path>) -> Result<Bounds, CliError> {
        let env = std::env::var(BOUNDS_ENV).ok();
        Self::from_sources(config, env.as_deref())
    }

    pub fn from_sources(config: Option<&Path>, env: Option<&str>) -> Result<Bounds, CliError> {
        let mut v = serde_json::json!({});
        if let Some(path) = config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            merge(&mut v, serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config: {e}")))?);
        }
        if let Some(text) = env {
            merge(&mut v, serde_json::from_str(text).map_err(|e| CliError::Usage(format!("{BOUNDS_ENV}: {e}")))?);
        }
        serde_json::from_value(v).map_err(|e| CliError::Usage(format!("bounds: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_overrides_defaults() {
        let b = Bounds::from_sources(None, Some(r#"{"ell_bound": 100}"#)).unwrap();
        assert_eq!(b, Bounds { ell_bound: 100, ..Bounds::default() });
        assert!(Bounds::from_sources(None, Some(r#"{"bogus": 1}"#)).is_err());
        assert_eq!(Bounds::from_sources(None, None).unwrap(), Bounds::default());
    }
}
