use std::path::Path;

use edgelighter::experiments::ExperimentConfig;

use crate::CliError;

/// Loads a TOML config. A top-level `preset = "name"` key starts from that
/// preset; every other key overrides it (the `solver` table key by key).
pub fn load_config(path: &Path) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, String> {
    let mut table: toml::Table = text.parse().map_err(|e: toml::de::Error| e.to_string())?;
    let base = match table.remove("preset") {
        Some(toml::Value::String(name)) => ExperimentConfig::preset(&name).map_err(|e| e.to_string())?,
        Some(other) => return Err(format!("preset must be a string, got {other}")),
        None => ExperimentConfig::default(),
    };
    let mut merged = toml::Table::try_from(&base).map_err(|e| e.to_string())?;
    for (key, value) in table {
        match (merged.get_mut(&key), value) {
            (Some(toml::Value::Table(old)), toml::Value::Table(new)) => old.extend(new),
            (_, value) => {
                merged.insert(key, value);
            }
        }
    }
    let config: ExperimentConfig = toml::Value::Table(merged).try_into().map_err(|e: toml::de::Error| e.to_string())?;
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_overlay() {
        let c = parse_config("preset = \"er-ci\"\nreplicates = 2\n[solver]\nmax_iterations = 7\n").unwrap();
        assert_eq!(c.name, "er-ci");
        assert_eq!(c.replicates, 2);
        assert_eq!(c.solver.max_iterations, 7);
        assert_eq!(c.solver.init, edgelighter::matching::Init::Barycenter);
        assert!(parse_config("replicates = 0\n").is_err());
        assert!(parse_config("nonsense = 1\n").is_err());
    }
}
