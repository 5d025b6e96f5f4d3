//! `key = value` overrides for [`QuadratureConfig`].

use std::path::Path;

use crate::quadrature::QuadratureConfig;

/// Overrides read from a config file; unset keys keep their defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub excision_radii: Option<Vec<f64>>,
    pub truncation_radius: Option<f64>,
    pub segment_tolerance: Option<f64>,
    pub tail_periods: Option<usize>,
}

impl ConfigOverrides {
    /// Parses lines of `key = value`; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut out = Self::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let number = |v: &str| v.parse::<f64>().map_err(|e| format!("line {}: {key}: {e}", n + 1));
            match key {
                "excision_radii" => {
                    out.excision_radii = Some(
                        value
                            .split(',')
                            .map(|v| number(v.trim()))
                            .collect::<Result<_, _>>()?,
                    )
                }
                "truncation_radius" => out.truncation_radius = Some(number(value)?),
                "segment_tolerance" => out.segment_tolerance = Some(number(value)?),
                "tail_periods" => {
                    out.tail_periods = Some(value.parse().map_err(|e| format!("line {}: {key}: {e}", n + 1))?)
                }
                other => return Err(format!("line {}: unknown key {other:?}", n + 1)),
            }
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn apply(&self, cfg: &mut QuadratureConfig) {
        if let Some(r) = &self.excision_radii {
            cfg.excision_radii = r.clone();
        }
        if let Some(r) = self.truncation_radius {
            cfg.truncation_radius = r;
        }
        if let Some(t) = self.segment_tolerance {
            cfg.segment_tolerance = t;
        }
        if let Some(p) = self.tail_periods {
            cfg.tail_periods = p;
        }
    }
}
