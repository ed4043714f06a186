use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::Failure;

/// Settings read from `--config`. Every field is optional; flags win.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub heads: Option<Vec<String>>,
    pub depth: Option<usize>,
    pub periods: Option<Vec<usize>>,
    pub a_range: Option<(f64, f64)>,
    pub b_range: Option<(f64, f64)>,
    pub res: Option<(usize, usize)>,
    pub period_min: Option<usize>,
    pub period_max: Option<usize>,
    pub transient: Option<usize>,
    pub escape_radius: Option<f64>,
    pub tol_period: Option<f64>,
    pub tol_meet: Option<f64>,
    pub initial_step: Option<f64>,
    pub min_step: Option<f64>,
    pub max_step: Option<f64>,
    pub b_max: Option<f64>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

pub fn positive(name: &str, value: f64) -> Result<f64, Failure> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Failure::Input(format!("{name} must be positive, got {value}")))
    }
}

/// `lo,hi` with `lo < hi`.
pub fn parse_range(text: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = text.split_once(',').ok_or_else(|| format!("expected lo,hi, got `{text}`"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("{lo}: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("{hi}: {e}"))?;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(format!("empty or non-finite range {lo},{hi}"));
    }
    Ok((lo, hi))
}

/// `NxM`.
pub fn parse_res(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text.split_once(['x', 'X']).ok_or_else(|| format!("expected AxB, got `{text}`"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    if a < 2 || b < 2 {
        return Err("resolution must be at least 2 per axis".into());
    }
    Ok((a, b))
}

/// `p` or `lo..hi` (inclusive).
pub fn parse_periods(text: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (text, text),
    };
    let lo: usize = lo.trim().parse().map_err(|e| format!("{lo}: {e}"))?;
    let hi: usize = hi.trim().parse().map_err(|e| format!("{hi}: {e}"))?;
    if lo == 0 || lo > hi {
        return Err(format!("bad period range {text}"));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsers() {
        assert_eq!(parse_range("1.75, 2").unwrap(), (1.75, 2.0));
        assert!(parse_range("2,1").is_err());
        assert_eq!(parse_res("400x200").unwrap(), (400, 200));
        assert!(parse_res("1x5").is_err());
        assert_eq!(parse_periods("8").unwrap(), (8, 8));
        assert_eq!(parse_periods("8..11").unwrap(), (8, 11));
        assert!(parse_periods("0").is_err());
    }

    #[test]
    fn toml_fields() {
        let c: FileConfig = toml::from_str("depth = 2\na_range = [1.8, 1.9]\nheads = [\"1001C\"]").unwrap();
        assert_eq!(c.depth, Some(2));
        assert_eq!(c.a_range, Some((1.8, 1.9)));
        assert!(toml::from_str::<FileConfig>("nonsense = 1").is_err());
    }
}
