//! `key = value` configuration files.
//!
//! `#` starts a comment, blank lines are skipped, unknown keys are errors.
//! Values set here are overridden by CLI flags.

use std::path::Path;

use thiserror::Error;

use crate::backend::RenderStyle;
use crate::layout::EngineConfig;
use crate::metrics::{MetricsConfig, MetricsMode};

/// A config-file failure with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("config line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl ConfigError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Everything configurable from a file: engine limits, metrics model,
/// render style, and the vertical gap between stacked trees.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub engine: EngineConfig,
    pub metrics: MetricsConfig,
    pub style: RenderStyle,
    pub tree_gap: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            engine: EngineConfig::default(),
            metrics: MetricsConfig::default(),
            style: RenderStyle::default(),
            tree_gap: 12.0,
        }
    }
}

fn parse_f64(lineno: usize, key: &str, value: &str) -> Result<f64, ConfigError> {
    value
        .parse::<f64>()
        .map_err(|_| ConfigError::new(lineno, format!("invalid number for `{key}`: `{value}`")))
}

fn parse_positive(lineno: usize, key: &str, value: &str) -> Result<f64, ConfigError> {
    let v = parse_f64(lineno, key, value)?;
    if !(v.is_finite() && v > 0.0) {
        return Err(ConfigError::new(
            lineno,
            format!("`{key}` must be positive, got `{value}`"),
        ));
    }
    Ok(v)
}

fn parse_bool(lineno: usize, key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(ConfigError::new(
            lineno,
            format!("invalid boolean for `{key}`: `{value}` (use true or false)"),
        )),
    }
}

/// Apply config text to existing settings.
pub fn apply_config(settings: &mut Settings, text: &str) -> Result<(), ConfigError> {
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError::new(lineno, "expected `key = value`"))?;
        let key = key.trim();
        let value = value.trim();
        if let Some(ch) = key.strip_prefix("width.") {
            let mut chars = ch.chars();
            let c = chars.next().ok_or_else(|| {
                ConfigError::new(lineno, "width table key needs a character, e.g. `width.A`")
            })?;
            if chars.next().is_some() {
                return Err(ConfigError::new(
                    lineno,
                    format!("width table key must name a single character, got `{ch}`"),
                ));
            }
            let factor = parse_positive(lineno, key, value)?;
            settings.metrics.width_table.insert(c, factor);
            settings.metrics.mode = MetricsMode::WidthTable;
            continue;
        }
        match key {
            "font_size" => settings.metrics.font_size = parse_positive(lineno, key, value)?,
            "char_width_factor" => {
                settings.metrics.char_width_factor = parse_positive(lineno, key, value)?
            }
            "line_height_factor" => {
                settings.metrics.line_height_factor = parse_positive(lineno, key, value)?
            }
            "ex_pt" => settings.metrics.ex_pt = parse_positive(lineno, key, value)?,
            "metrics_mode" => {
                settings.metrics.mode = match value {
                    "mono" => MetricsMode::Mono,
                    "width-table" => MetricsMode::WidthTable,
                    _ => {
                        return Err(ConfigError::new(
                            lineno,
                            format!("invalid metrics_mode `{value}` (use mono or width-table)"),
                        ))
                    }
                }
            }
            "strict" => settings.engine.strict = parse_bool(lineno, key, value)?,
            "allow_partial" => settings.engine.allow_partial = parse_bool(lineno, key, value)?,
            "min_branch_width" => {
                settings.engine.min_branch_width = parse_positive(lineno, key, value)?
            }
            "epsilon" => settings.engine.epsilon = parse_positive(lineno, key, value)?,
            "pt_per_px" => settings.style.pt_per_px = parse_positive(lineno, key, value)?,
            "ascii_col_width_pt" => {
                settings.style.ascii_col_width_pt = parse_positive(lineno, key, value)?
            }
            "ascii_row_height_pt" => {
                settings.style.ascii_row_height_pt = parse_positive(lineno, key, value)?
            }
            "json_precision" => {
                let v: usize = value.parse().map_err(|_| {
                    ConfigError::new(lineno, format!("invalid integer for `{key}`: `{value}`"))
                })?;
                if v == 0 {
                    return Err(ConfigError::new(
                        lineno,
                        "`json_precision` must be positive",
                    ));
                }
                settings.style.json_precision = v;
            }
            "tree_gap" => {
                let v = parse_f64(lineno, key, value)?;
                if v < 0.0 {
                    return Err(ConfigError::new(lineno, "`tree_gap` must not be negative"));
                }
                settings.tree_gap = v;
            }
            _ => return Err(ConfigError::new(lineno, format!("unknown key `{key}`"))),
        }
    }
    Ok(())
}

/// Parse config text into settings on top of the defaults.
pub fn parse_config(text: &str) -> Result<Settings, ConfigError> {
    let mut settings = Settings::default();
    apply_config(&mut settings, text)?;
    Ok(settings)
}

/// Read and parse a config file. I/O failures are reported as a line-0
/// error with the path in the message.
pub fn load_config(path: &Path) -> Result<Settings, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::new(0, format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn font_size_key() {
        let s = parse_config("font_size = 12").unwrap();
        assert_eq!(s.metrics.font_size, 12.0);
    }

    #[test]
    fn ex_pt_key() {
        let s = parse_config("ex_pt = 5.0").unwrap();
        assert_eq!(s.metrics.ex_pt, 5.0);
    }

    #[test]
    fn unknown_key_is_an_error_with_line() {
        let err = parse_config("font_size = 12\nbogus = 1").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("bogus"));
    }

    #[test]
    fn width_table_entries_switch_mode() {
        let s = parse_config("width.A = 2.0\nwidth.B = 1.0").unwrap();
        assert_eq!(s.metrics.mode, MetricsMode::WidthTable);
        assert_eq!(s.metrics.width_table.get(&'A'), Some(&2.0));
        assert_eq!(s.metrics.width_table.get(&'B'), Some(&1.0));
    }

    #[test]
    fn comments_and_blanks_are_skipped() {
        let s = parse_config("# config\n\nstrict = false # lift limits\n").unwrap();
        assert!(!s.engine.strict);
    }

    #[test]
    fn bad_number_reports_line() {
        let err = parse_config("font_size = big").unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn nonpositive_sizes_are_rejected() {
        assert!(parse_config("font_size = 0").is_err());
        assert!(parse_config("pt_per_px = -1").is_err());
        assert!(parse_config("json_precision = 0").is_err());
    }

    #[test]
    fn missing_equals_is_an_error() {
        let err = parse_config("font_size 12").unwrap_err();
        assert!(err.message.contains("key = value"));
    }
}
