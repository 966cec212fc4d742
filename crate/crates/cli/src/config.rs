//! Run configuration: command-line flags layered over an optional JSON file.

use std::path::Path;

use gfcoh::algebra::{Variety, VarietyKind};
use gfcoh::coefficients::LPlusModule;
use gfcoh::linalg::SparseMatrix;
use gfcoh::{QMatrix, Rational};
use serde::{Deserialize, Serialize};

use crate::ProblemArgs;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn bad<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// A gl_n-module given by explicit matrices `rho[i][j] = ρ(E_ij)`, entries
/// written as rational strings.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MatrixModule {
    #[serde(default)]
    pub label: Option<String>,
    pub rho: Vec<Vec<Vec<Vec<String>>>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum ModuleSpec {
    Named(String),
    Matrices(MatrixModule),
}

/// Contents of a `--config` file. Every field is optional; flags win.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub variety: Option<String>,
    pub n: Option<usize>,
    pub punctures: Option<Vec<String>>,
    pub module: Option<ModuleSpec>,
    pub k_max: Option<usize>,
    pub p_max: Option<u32>,
    pub truncation: Option<u32>,
    pub lplus_truncation: Option<u32>,
    pub weight: Option<Vec<String>>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))
    }
}

/// The fully resolved parameters of a run, echoed in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub variety: String,
    pub n: usize,
    pub punctures: Vec<String>,
    pub module: ModuleSpec,
    pub k_max: usize,
    pub p_max: u32,
    pub truncation: u32,
    pub lplus_truncation: u32,
    pub weight: Option<Vec<String>>,
    pub samples: usize,
    pub seed: u64,
}

pub struct Defaults {
    pub k_max: usize,
}

pub fn parse_rational(s: &str) -> Result<Rational, ConfigError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| ConfigError(format!("not a rational number: {s:?}")))
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

impl RunConfig {
    pub fn resolve(args: &ProblemArgs, file: &FileConfig, seed: Option<u64>, defaults: Defaults) -> Result<Self, ConfigError> {
        let variety = args
            .variety
            .clone()
            .or_else(|| file.variety.clone())
            .unwrap_or_else(|| "affine".into());
        let punctures = args
            .punctures
            .as_deref()
            .map(split_list)
            .or_else(|| file.punctures.clone())
            .unwrap_or_default();
        let module = match &args.module {
            Some(m) => ModuleSpec::Named(m.clone()),
            None => file.module.clone().unwrap_or_else(|| ModuleSpec::Named("trivial".into())),
        };
        let cfg = RunConfig {
            n: args.n.or(file.n).unwrap_or(1),
            variety,
            punctures,
            module,
            k_max: args.kmax.or(file.k_max).unwrap_or(defaults.k_max),
            p_max: args.pmax.or(file.p_max).unwrap_or(6),
            truncation: args.truncation.or(file.truncation).unwrap_or(2),
            lplus_truncation: args.lplus_truncation.or(file.lplus_truncation).unwrap_or(3),
            weight: args.weight.as_deref().map(split_list).or_else(|| file.weight.clone()),
            samples: args.samples.or(file.samples).unwrap_or(100),
            seed: seed.or(file.seed).unwrap_or(0),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.n == 0 || self.n > 4 {
            return bad(format!("n must be between 1 and 4, got {}", self.n));
        }
        if self.p_max < 2 {
            return bad("p_max must be at least 2");
        }
        if self.truncation < 1 {
            return bad("truncation must be at least 1");
        }
        if self.lplus_truncation < 1 {
            return bad("lplus truncation must be at least 1");
        }
        if self.samples == 0 {
            return bad("samples must be at least 1");
        }
        Ok(())
    }

    pub fn variety(&self) -> Result<Variety, ConfigError> {
        let v = match self.variety.as_str() {
            "affine" => VarietyKind::affine(self.n),
            "torus" => VarietyKind::torus(self.n),
            "sphere" => {
                if self.n != 1 {
                    return bad("punctured spheres have n = 1");
                }
                let ps = self.punctures.iter().map(|p| parse_rational(p)).collect::<Result<Vec<_>, _>>()?;
                VarietyKind::punctured_sphere(ps)
            }
            other => return bad(format!("unknown variety {other:?} (expected affine, torus or sphere)")),
        };
        v.map_err(|e| ConfigError(e.to_string()))
    }

    pub fn module(&self) -> Result<LPlusModule, ConfigError> {
        build_module(&self.module, self.n)
    }

    pub fn weight(&self, n: usize) -> Result<Vec<Rational>, ConfigError> {
        match &self.weight {
            None => Ok(vec![Rational::from_integer(0.into()); n]),
            Some(w) if w.len() == n => w.iter().map(|x| parse_rational(x)).collect(),
            Some(w) => bad(format!("weight needs {n} components, got {}", w.len())),
        }
    }
}

/// `trivial`, `weight:λ`, `standard` or `adjoint:d`.
pub fn build_module(spec: &ModuleSpec, n: usize) -> Result<LPlusModule, ConfigError> {
    let named = match spec {
        ModuleSpec::Named(s) => s.trim(),
        ModuleSpec::Matrices(m) => return matrix_module(m, n),
    };
    let (head, arg) = match named.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (named, None),
    };
    match (head, arg) {
        ("trivial", None) => Ok(LPlusModule::trivial(n)),
        ("standard", None) => Ok(LPlusModule::standard(n)),
        ("weight", Some(l)) => {
            if n != 1 {
                return bad("weight:λ modules are one-dimensional gl_1-modules; use n = 1");
            }
            Ok(LPlusModule::weight(parse_rational(l)?))
        }
        ("adjoint", Some(d)) => {
            let d: u32 = d.trim().parse().map_err(|_| ConfigError(format!("bad adjoint degree {d:?}")))?;
            LPlusModule::truncated_adjoint(n, d).map_err(|e| ConfigError(e.to_string()))
        }
        _ => bad(format!(
            "unknown module {named:?} (expected trivial, weight:λ, standard, adjoint:d or a matrix object)"
        )),
    }
}

fn matrix_module(m: &MatrixModule, n: usize) -> Result<LPlusModule, ConfigError> {
    let rho: Vec<Vec<QMatrix>> = m
        .rho
        .iter()
        .map(|row| {
            row.iter()
                .map(|mat| {
                    let dense = mat
                        .iter()
                        .map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(SparseMatrix::from_dense(&dense))
                })
                .collect::<Result<Vec<_>, ConfigError>>()
        })
        .collect::<Result<_, _>>()?;
    let label = m.label.clone().unwrap_or_else(|| "matrices".into());
    LPlusModule::from_gl_matrices(label, n, &rho).map_err(|e| ConfigError(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_specs() {
        assert_eq!(build_module(&ModuleSpec::Named("trivial".into()), 2).unwrap().dim(), 1);
        assert_eq!(build_module(&ModuleSpec::Named("standard".into()), 2).unwrap().dim(), 2);
        assert_eq!(build_module(&ModuleSpec::Named("adjoint:2".into()), 1).unwrap().dim(), 2);
        let w = build_module(&ModuleSpec::Named("weight:-1/2".into()), 1).unwrap();
        assert_eq!(w.total_weight(0), parse_rational("-1/2").unwrap());
        assert!(build_module(&ModuleSpec::Named("weight:1".into()), 2).is_err());
        assert!(build_module(&ModuleSpec::Named("weight:x".into()), 1).is_err());
        assert!(build_module(&ModuleSpec::Named("bogus".into()), 1).is_err());
    }

    #[test]
    fn matrix_modules() {
        let one = |v: &str| vec![vec![v.to_string()]];
        let m = MatrixModule {
            label: Some("det".into()),
            rho: vec![vec![one("1"), one("0")], vec![one("0"), one("1")]],
        };
        let w = build_module(&ModuleSpec::Matrices(m), 2).unwrap();
        assert_eq!(w.label(), "det");
        let broken = MatrixModule {
            label: None,
            rho: vec![vec![one("1"), one("1")], vec![one("0"), one("1")]],
        };
        assert!(build_module(&ModuleSpec::Matrices(broken), 2).is_err());
    }

    #[test]
    fn file_config_parses() {
        let f: FileConfig = serde_json::from_str(
            r#"{"variety": "sphere", "punctures": ["0", "1/2"], "module": {"rho": [[[["2"]]]]}, "k_max": 2}"#,
        )
        .unwrap();
        assert_eq!(f.punctures.unwrap().len(), 2);
        assert!(matches!(f.module, Some(ModuleSpec::Matrices(_))));
        assert!(serde_json::from_str::<FileConfig>(r#"{"kmax": 2}"#).is_err());
    }
}
