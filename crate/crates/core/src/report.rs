//! Deterministic report emission: JSON and CSV files under the configured
//! output directory, byte-identical for identical inputs and seed.

use crate::tiling::{EdgeProfile, CLASS_NAMES};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot write {path}: {err}")]
    Write { path: String, err: String },
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), ReportError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| ReportError::Write {
                path: path.display().to_string(),
                err: e.to_string(),
            })?;
        }
    }
    let mut f = std::fs::File::create(path).map_err(|e| ReportError::Write {
        path: path.display().to_string(),
        err: e.to_string(),
    })?;
    f.write_all(bytes).map_err(|e| ReportError::Write {
        path: path.display().to_string(),
        err: e.to_string(),
    })
}

/// Pretty JSON with a trailing newline; struct field order fixes key order.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), ReportError> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    write_bytes(path, text.as_bytes())
}

pub fn write_text(path: &Path, text: &str) -> Result<(), ReportError> {
    write_bytes(path, text.as_bytes())
}

/// Edge profile as a CSV matrix: within-class counts on the diagonal, the
/// derived quantities as trailing rows.
pub fn profile_csv(profile: &EdgeProfile) -> String {
    let mut out = String::new();
    out.push_str("class");
    for name in CLASS_NAMES {
        out.push(',');
        out.push_str(name);
    }
    out.push_str(",size\n");
    for (i, name) in CLASS_NAMES.iter().enumerate() {
        out.push_str(name);
        for j in 0..6 {
            out.push_str(&format!(",{}", profile.matrix[i][j]));
        }
        out.push_str(&format!(",{}\n", profile.class_sizes[i]));
    }
    out.push_str(&format!("H_prime_edges,{}\n", profile.h_prime_edges));
    out.push_str(&format!("V_dprime_edges,{}\n", profile.v_dprime_edges));
    out.push_str(&format!("V_dprime_to_V_prime,{}\n", profile.v_dprime_to_v_prime));
    out.push_str(&format!("V_dprime_to_M,{}\n", profile.v_dprime_to_matching));
    out
}

/// Output directory resolution: explicit flag, else the environment
/// override, else the config default.
pub fn resolve_output_dir(flag: Option<PathBuf>, config_default: &Path) -> PathBuf {
    if let Some(p) = flag {
        return p;
    }
    if let Ok(env) = std::env::var("RAINBOW_CH_OUT") {
        if !env.is_empty() {
            return PathBuf::from(env);
        }
    }
    config_default.to_path_buf()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.json");
        let b = dir.path().join("b.json");
        let v = json!({"z": 1, "a": [1, 2, 3]});
        write_json(&a, &v).unwrap();
        write_json(&b, &v).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }

    #[test]
    fn csv_has_matrix_shape() {
        let profile = EdgeProfile {
            class_sizes: [3, 0, 0, 0, 4, 0],
            matrix: [[0; 6]; 6],
            h_prime_edges: 0,
            v_dprime_edges: 0,
            v_dprime_to_v_prime: 0,
            v_dprime_to_matching: 0,
        };
        let csv = profile_csv(&profile);
        assert_eq!(csv.lines().count(), 11);
        assert!(csv.starts_with("class,T1,T2,T3,T4,M,I,size"));
    }
}
