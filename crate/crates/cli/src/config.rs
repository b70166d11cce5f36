//! Optional TOML configuration: series and oracle defaults overridable
//! per run. Flags beat the file, the file beats built-in defaults.

use casimir_core::model::SeriesControl;
use casimir_core::oracle::{OracleControl, Regulator};
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Default, Deserialize)]
pub struct FileConfig {
    #[serde(default)]
    pub series: SeriesPatch,
    #[serde(default)]
    pub oracle: OraclePatch,
}

#[derive(Debug, Default, Deserialize)]
pub struct SeriesPatch {
    pub k_max: Option<u32>,
    pub m_max: Option<u32>,
    pub tol: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
pub struct OraclePatch {
    pub lambda0_factor: Option<f64>,
    pub levels: Option<u32>,
    pub ratio: Option<f64>,
    pub regulator: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }

    pub fn series(&self, base: SeriesControl) -> SeriesControl {
        SeriesControl {
            k_max: self.series.k_max.unwrap_or(base.k_max),
            m_max: self.series.m_max.unwrap_or(base.m_max),
            tol: self.series.tol.unwrap_or(base.tol),
        }
    }

    pub fn oracle(&self, base: OracleControl) -> Result<OracleControl, String> {
        let regulator = match self.oracle.regulator.as_deref() {
            None => base.regulator,
            Some("abel") => Regulator::Abel,
            Some("gauss") => Regulator::Gauss,
            Some(other) => return Err(format!("unknown regulator `{other}`")),
        };
        Ok(OracleControl {
            lambda0_factor: self.oracle.lambda0_factor.unwrap_or(base.lambda0_factor),
            levels: self.oracle.levels.unwrap_or(base.levels),
            ratio: self.oracle.ratio.unwrap_or(base.ratio),
            regulator,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_config() {
        let cfg: FileConfig = toml::from_str(
            "[series]\nk_max = 500\n\n[oracle]\nregulator = \"gauss\"\nlevels = 5\n",
        )
        .unwrap();
        let s = cfg.series(SeriesControl::default());
        assert_eq!(s.k_max, 500);
        assert_eq!(s.m_max, SeriesControl::default().m_max);
        let o = cfg.oracle(OracleControl::default()).unwrap();
        assert_eq!(o.levels, 5);
        assert_eq!(o.regulator, Regulator::Gauss);
    }

    #[test]
    fn rejects_unknown_regulator() {
        let cfg: FileConfig = toml::from_str("[oracle]\nregulator = \"zeta\"\n").unwrap();
        assert!(cfg.oracle(OracleControl::default()).is_err());
    }
}
