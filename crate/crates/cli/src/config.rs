//! Flat key-value run configuration.
//!
//! The file format is one `key = value` pair per line with dotted section
//! keys (`ligo.mass_kg = 40`), `#` comments, and blank lines. Every Table-I
//! and disk default is built in, so all keys are optional and `exclusion`
//! runs with no config file at all.

use collapse_core::bounds::{
    DetectorSpec, DiskSpec, ExclusionInputs, RadiationBoundSpec, ScenarioScales,
};
use collapse_core::montecarlo::NoiseGridConfig;
use collapse_core::QuadratureConfig;
use std::path::Path;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub alphas: Vec<f64>,
    pub grid_min: f64,
    pub grid_max: f64,
    pub grid_points: usize,
    pub lower_enabled: bool,
    pub radiation_enabled: bool,
    pub ligo_enabled: bool,
    pub lisa_enabled: bool,
    pub disk: DiskSpec,
    pub radiation: RadiationBoundSpec,
    pub ligo: DetectorSpec,
    pub lisa: DetectorSpec,
    pub scales: ScenarioScales,
    pub montecarlo: NoiseGridConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            alphas: vec![0.5, 1.0, 1.5, 2.0],
            grid_min: 1e-9,
            grid_max: 1e-2,
            grid_points: 240,
            lower_enabled: true,
            radiation_enabled: true,
            ligo_enabled: true,
            lisa_enabled: true,
            disk: DiskSpec::default(),
            radiation: RadiationBoundSpec::default(),
            ligo: DetectorSpec::ligo(),
            lisa: DetectorSpec::lisa(),
            scales: ScenarioScales::default(),
            montecarlo: NoiseGridConfig::default(),
        }
    }
}

/// Parse failure with its location.
#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "config parse error at line {}: {}",
            self.line, self.message
        )
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| e.to_string())
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut cfg = RunConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ParseError {
                    line: line_no,
                    message: format!("expected `key = value`, got `{line}`"),
                });
            };
            let key = key.trim();
            let value = value.trim();
            cfg.apply(key, value).map_err(|message| ParseError {
                line: line_no,
                message: format!("field `{key}`: {message}"),
            })?;
        }
        cfg.validate()
            .map_err(|message| ParseError { line: 0, message })?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.alphas.is_empty() {
            return Err("alphas must not be empty".into());
        }
        if !(self.grid_min > 0.0 && self.grid_min < self.grid_max) {
            return Err(format!(
                "grid requires 0 < min < max, got ({:e}, {:e})",
                self.grid_min, self.grid_max
            ));
        }
        if self.grid_points < 2 {
            return Err("grid.points must be at least 2".into());
        }
        if !(self.lower_enabled || self.radiation_enabled || self.ligo_enabled || self.lisa_enabled)
        {
            return Err("at least one bound must be enabled".into());
        }
        Ok(())
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn f(v: &str) -> Result<f64, String> {
            v.parse::<f64>()
                .map_err(|e| format!("invalid number `{v}`: {e}"))
        }
        fn u(v: &str) -> Result<usize, String> {
            v.parse::<usize>()
                .map_err(|e| format!("invalid integer `{v}`: {e}"))
        }
        fn b(v: &str) -> Result<bool, String> {
            match v {
                "true" | "1" | "yes" | "on" => Ok(true),
                "false" | "0" | "no" | "off" => Ok(false),
                _ => Err(format!("invalid boolean `{v}`")),
            }
        }
        fn detector(det: &mut DetectorSpec, field: &str, value: &str) -> Result<(), String> {
            match field {
                "mass_kg" => det.mass = f(value)?,
                "separation_m" => det.separation = f(value)?,
                "length_m" => det.length = f(value)?,
                // setting the radius keeps the cross-section consistent for
                // cylinders; an explicit cross_section_m2 afterwards wins
                "radius_m" => {
                    let r = f(value)?;
                    det.radius = Some(r);
                    det.cross_section = std::f64::consts::PI * r * r;
                }
                "cross_section_m2" => det.cross_section = f(value)?,
                "s_exp" => det.s_exp = f(value)?,
                "divisor" => det.spectrum_divisor = f(value)?,
                _ => return Err(format!("unknown detector field `{field}`")),
            }
            Ok(())
        }

        match key {
            "alphas" => {
                let mut parsed = Vec::new();
                for part in value.split(',') {
                    parsed.push(f(part.trim())?);
                }
                self.alphas = parsed;
            }
            "grid.min_m" => self.grid_min = f(value)?,
            "grid.max_m" => self.grid_max = f(value)?,
            "grid.points" => self.grid_points = u(value)?,
            "bounds.lower" => self.lower_enabled = b(value)?,
            "bounds.radiation" => self.radiation_enabled = b(value)?,
            "bounds.ligo" => self.ligo_enabled = b(value)?,
            "bounds.lisa" => self.lisa_enabled = b(value)?,
            "disk.r_d_m" => self.disk.r_d = f(value)?,
            "disk.r_a_m" => self.disk.r_a = f(value)?,
            "disk.m_a_kg" => self.disk.m_a = f(value)?,
            "disk.n_a" => self.disk.n_a = f(value)?,
            "disk.tau_d_s" => self.disk.tau_d = f(value)?,
            "disk.displacement_m" => self.disk.displacement = f(value)?,
            "radiation.coefficient" => self.radiation.reference_coefficient = f(value)?,
            "radiation.density_kg_m3" => self.radiation.density = f(value)?,
            "radiation.mass_kg" => self.radiation.mass = f(value)?,
            "radiation.lattice_m" => self.radiation.lattice_constant = f(value)?,
            "radiation.dimension_m" => self.radiation.dimension_override = Some(f(value)?),
            "scale.radiation" => self.scales.radiation = f(value)?,
            "scale.ligo" => self.scales.ligo = f(value)?,
            "scale.lisa" => self.scales.lisa = f(value)?,
            "montecarlo.seed" => {
                self.montecarlo.rng_seed = value
                    .parse::<u64>()
                    .map_err(|e| format!("invalid seed `{value}`: {e}"))?
            }
            "montecarlo.trajectories" => self.montecarlo.n_trajectories = u(value)?,
            "montecarlo.steps" => self.montecarlo.n_steps = u(value)?,
            "montecarlo.dt_s" => self.montecarlo.dt = f(value)?,
            "montecarlo.spacing_rc" => self.montecarlo.spacing = f(value)?,
            "montecarlo.half_width_rc" => self.montecarlo.half_width = f(value)?,
            _ => {
                if let Some(field) = key.strip_prefix("ligo.") {
                    return detector(&mut self.ligo, field, value);
                }
                if let Some(field) = key.strip_prefix("lisa.") {
                    return detector(&mut self.lisa, field, value);
                }
                return Err("unknown key".into());
            }
        }
        Ok(())
    }

    pub fn to_inputs(&self) -> ExclusionInputs {
        ExclusionInputs {
            disk: self.lower_enabled.then_some(self.disk),
            radiation: self.radiation_enabled.then_some(self.radiation),
            ligo: self.ligo_enabled.then(|| self.ligo.clone()),
            lisa: self.lisa_enabled.then(|| self.lisa.clone()),
            quad: QuadratureConfig::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert!(RunConfig::default().validate().is_ok());
    }

    #[test]
    fn parses_dotted_keys_and_comments() {
        let cfg = RunConfig::parse(
            "# comment\nalphas = 2\nligo.mass_kg = 41  # trailing\ngrid.points = 12\n",
        )
        .unwrap();
        assert_eq!(cfg.alphas, vec![2.0]);
        assert_eq!(cfg.ligo.mass, 41.0);
        assert_eq!(cfg.grid_points, 12);
    }

    #[test]
    fn reports_line_and_field() {
        let err = RunConfig::parse("alphas = 1\nbogus.key = 3\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("bogus.key"));
        let err = RunConfig::parse("grid.points = x\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("grid.points"));
    }

    #[test]
    fn rejects_inconsistent_grid() {
        assert!(RunConfig::parse("grid.min_m = 1e-2\ngrid.max_m = 1e-9\n").is_err());
        assert!(RunConfig::parse(
            "bounds.lower = false\nbounds.radiation = false\nbounds.ligo = false\nbounds.lisa = false\n"
        )
        .is_err());
    }

    #[test]
    fn radius_updates_cross_section() {
        let cfg = RunConfig::parse("ligo.radius_m = 0.2\n").unwrap();
        assert!((cfg.ligo.cross_section - std::f64::consts::PI * 0.04).abs() < 1e-15);
    }
}
