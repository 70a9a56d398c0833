//! JSON file formats for modules, ideals and module maps. Scalars are
//! strings (`"3"`, `"-1/2"`) so that rationals survive exactly.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ext::{BetaDomain, BetaMap, ExtError};
use crate::field::{FieldError, FieldSpec, Scalar};
use crate::matrix::{DenseMatrix, MatrixError, Vector};
use crate::module::{cyclic_quotient, FdModule, ModuleError, QuotientRing};
use crate::poly::{IdealGens, PolyError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse {}", path.display())]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Ext(#[from] ExtError),
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IoError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn scalars_to_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn parse_vector(field: FieldSpec, v: &[String]) -> Result<Vector, FieldError> {
    v.iter().map(|s| field.parse_scalar(s)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub field: FieldSpec,
    pub nvars: usize,
    pub dim: usize,
    /// One row-major matrix per variable.
    pub actions: Vec<Vec<Vec<String>>>,
}

impl ModuleFile {
    pub fn from_module(m: &FdModule) -> Self {
        ModuleFile {
            field: m.field(),
            nvars: m.nvars(),
            dim: m.dim(),
            actions: m
                .actions()
                .iter()
                .map(|a| (0..a.rows()).map(|r| scalars_to_strings(a.row(r))).collect())
                .collect(),
        }
    }

    pub fn to_module(&self) -> Result<FdModule, IoError> {
        if self.actions.len() != self.nvars {
            return Err(IoError::Shape(format!(
                "{} action matrices for {} variables",
                self.actions.len(),
                self.nvars
            )));
        }
        let mut mats = Vec::with_capacity(self.nvars);
        for (i, a) in self.actions.iter().enumerate() {
            if a.len() != self.dim || a.iter().any(|r| r.len() != self.dim) {
                return Err(IoError::Shape(format!(
                    "action {i} is not {0}x{0}",
                    self.dim
                )));
            }
            let rows = a
                .iter()
                .map(|r| parse_vector(self.field, r))
                .collect::<Result<Vec<_>, _>>()?;
            mats.push(if self.dim == 0 {
                DenseMatrix::zeros(self.field, 0, 0)
            } else {
                DenseMatrix::from_rows(self.field, rows)?
            });
        }
        Ok(FdModule::new(self.field, self.nvars, self.dim, mats)?)
    }

    pub fn read(path: &Path) -> Result<Self, IoError> {
        read_json(path)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFile {
    pub field: FieldSpec,
    pub nvars: usize,
    pub gens: Vec<String>,
}

impl IdealFile {
    pub fn from_ideal(i: &IdealGens) -> Self {
        IdealFile {
            field: i.field(),
            nvars: i.nvars(),
            gens: i.gens().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn to_ideal(&self) -> Result<IdealGens, IoError> {
        let gens: Vec<&str> = self.gens.iter().map(String::as_str).collect();
        Ok(IdealGens::parse(self.field, self.nvars, &gens)?)
    }

    pub fn read(path: &Path) -> Result<Self, IoError> {
        read_json(path)
    }
}

/// Either kind of module description: explicit matrices, or an ideal `I`
/// standing for `S/I` on its standard monomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleSpec {
    Module(ModuleFile),
    Ideal(IdealFile),
}

/// A module with the ideal it was built from, when there is one.
#[derive(Debug, Clone)]
pub struct LoadedModule {
    pub module: FdModule,
    pub ring: Option<QuotientRing>,
}

impl ModuleSpec {
    pub fn read(path: &Path) -> Result<Self, IoError> {
        read_json(path)
    }

    pub fn load(&self, degree_cap: u32) -> Result<LoadedModule, IoError> {
        match self {
            ModuleSpec::Module(m) => Ok(LoadedModule {
                module: m.to_module()?,
                ring: None,
            }),
            ModuleSpec::Ideal(i) => {
                let ring = cyclic_quotient(&i.to_ideal()?, degree_cap)?;
                Ok(LoadedModule {
                    module: ring.module().clone(),
                    ring: Some(ring),
                })
            }
        }
    }
}

/// The target of a map file: inline, or a path relative to the map file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleSource {
    Path(PathBuf),
    Inline(ModuleSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainFile {
    #[serde(rename = "m")]
    Maximal,
    #[serde(rename = "ideal")]
    Ideal(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaFile {
    pub module: ModuleSource,
    pub domain: DomainFile,
    pub images: Vec<Vec<String>>,
}

/// A map file after resolving and parsing everything.
#[derive(Debug, Clone)]
pub struct LoadedBeta {
    pub beta: BetaMap,
    pub ring: Option<QuotientRing>,
}

impl BetaFile {
    /// A self-contained file with the target inline.
    pub fn from_beta(beta: &BetaMap, ideal: Option<&IdealGens>) -> Self {
        let module = match ideal {
            Some(i) => ModuleSpec::Ideal(IdealFile::from_ideal(i)),
            None => ModuleSpec::Module(ModuleFile::from_module(beta.target())),
        };
        BetaFile {
            module: ModuleSource::Inline(module),
            domain: match beta.domain() {
                BetaDomain::Maximal => DomainFile::Maximal,
                BetaDomain::Ideal(j) => DomainFile::Ideal(j.gens().iter().map(ToString::to_string).collect()),
            },
            images: beta.images().iter().map(|v| scalars_to_strings(v)).collect(),
        }
    }

    pub fn read(path: &Path) -> Result<Self, IoError> {
        read_json(path)
    }

    /// `base` is the directory relative paths are resolved against.
    pub fn load(&self, base: &Path, degree_cap: u32) -> Result<LoadedBeta, IoError> {
        let spec = match &self.module {
            ModuleSource::Path(p) => ModuleSpec::read(&base.join(p))?,
            ModuleSource::Inline(s) => s.clone(),
        };
        let LoadedModule { module, ring } = spec.load(degree_cap)?;
        let field = module.field();
        let images = self
            .images
            .iter()
            .map(|v| parse_vector(field, v))
            .collect::<Result<Vec<_>, _>>()?;
        let beta = match &self.domain {
            DomainFile::Maximal => BetaMap::on_maximal(module, images)?,
            DomainFile::Ideal(gens) => {
                let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
                let j = IdealGens::parse(field, module.nvars(), &gens)?;
                BetaMap::on_ideal(module, j, images)?
            }
        };
        Ok(LoadedBeta { beta, ring })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::DEFAULT_DEGREE_CAP;

    #[test]
    fn module_round_trip() {
        let q = FieldSpec::rational();
        let m = crate::module::tests::e_matrices(q).translate(&[
            q.parse_scalar("1/2").unwrap(),
            q.zero(),
            q.from_i64(-3),
            q.zero(),
        ]);
        let file = ModuleFile::from_module(&m);
        let text = serde_json::to_string(&file).unwrap();
        assert!(text.contains("\"rational\""));
        let back: ModuleFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_module().unwrap(), m);
    }

    #[test]
    fn spec_formats() {
        let text = r#"{"field": {"prime": 101}, "nvars": 3, "gens": ["x", "y^2", "z"]}"#;
        let spec: ModuleSpec = serde_json::from_str(text).unwrap();
        let loaded = spec.load(DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(loaded.module.dim(), 2);
        let beta = format!(r#"{{"module": {text}, "domain": "m", "images": [["0", "1"], ["0", "0"], ["0", "0"]]}}"#);
        let file: BetaFile = serde_json::from_str(&beta).unwrap();
        let b = file.load(Path::new("."), DEFAULT_DEGREE_CAP).unwrap();
        assert!(b.ring.is_some());
        assert!(b.beta.validate().is_ok());
        let again = BetaFile::from_beta(&b.beta, Some(b.ring.as_ref().unwrap().ideal()));
        assert_eq!(again, file);

        let on_ideal = r#"{"module": "elsewhere.json", "domain": {"ideal": ["x", "y"]}, "images": []}"#;
        let file: BetaFile = serde_json::from_str(on_ideal).unwrap();
        assert_eq!(file.module, ModuleSource::Path("elsewhere.json".into()));
        assert_eq!(file.domain, DomainFile::Ideal(vec!["x".into(), "y".into()]));
    }

    #[test]
    fn bad_shapes() {
        let f = FieldSpec::prime(5).unwrap();
        let file = ModuleFile {
            field: f,
            nvars: 1,
            dim: 2,
            actions: vec![vec![vec!["1".into(), "0".into()]]],
        };
        assert!(matches!(file.to_module(), Err(IoError::Shape(_))));
        let file = ModuleFile {
            field: f,
            nvars: 2,
            dim: 1,
            actions: vec![vec![vec!["1".into()]], vec![vec!["x".into()]]],
        };
        assert!(matches!(file.to_module(), Err(IoError::Field(_))));
    }
}
