//! Session files: an algebra, named modules and options, as JSON with exact
//! rationals written as `"p/q"` strings.
//!
//! Matrices are row-major arrays of rows. Lie module actions are listed per
//! basis element of `g` and must factor through `g_Lie`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebras::{check_leibniz, AlgebraError, LeibnizAlgebra};
use crate::exactla::{Matrix, Q};
use crate::gmodules::{
    check_axioms, dual_sharp, LeibModule, LieLeftModule, LieRightModule, ModuleError,
};
use crate::lpcomplexes::DEFAULT_MAX_DEGREE;

pub type DenseMatrix = Vec<Vec<Q>>;

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed session: {0}")]
    Parse(String),
    #[error("invalid algebra: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("invalid module {name}: {source}")]
    Module { name: String, source: ModuleError },
    #[error("invalid module {name}: {what}")]
    Shape { name: String, what: String },
    #[error("module name {0} is reserved for a built-in module")]
    Reserved(String),
    #[error("no {kind} module named {name}")]
    Unknown { name: String, kind: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionFile {
    pub name: String,
    pub algebra: AlgebraSpec,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub basis: Vec<String>,
    /// `structure_constants[i][j][k]`: coefficient of `b_k` in `b_i b_j`.
    pub structure_constants: Vec<Vec<Vec<Q>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModuleSpec {
    Leibniz {
        dim: usize,
        left: Vec<DenseMatrix>,
        right: Vec<DenseMatrix>,
    },
    LieRight {
        dim: usize,
        right: Vec<DenseMatrix>,
    },
    LieLeft {
        dim: usize,
        left: Vec<DenseMatrix>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_degree")]
    pub max_degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub memory_cap: Option<usize>,
}

fn default_degree() -> usize {
    DEFAULT_MAX_DEGREE
}

impl Default for Options {
    fn default() -> Options {
        Options {
            max_degree: DEFAULT_MAX_DEGREE,
            memory_cap: None,
        }
    }
}

pub const BUILTIN_LEIBNIZ: [&str; 3] = ["trivial", "adjoint", "adjoint-dual"];
pub const BUILTIN_LIE: [&str; 3] = ["k", "gdown", "gdown-dual"];

/// A validated session with every module constructed.
#[derive(Debug, Clone)]
pub struct Session {
    pub file: SessionFile,
    pub algebra: Arc<LeibnizAlgebra>,
    pub leibniz: BTreeMap<String, LeibModule>,
    pub lie_right: BTreeMap<String, LieRightModule>,
    pub lie_left: BTreeMap<String, LieLeftModule>,
}

fn to_matrix(name: &str, dim: usize, m: &DenseMatrix) -> Result<Matrix, SessionError> {
    if m.len() != dim || m.iter().any(|r| r.len() != dim) {
        return Err(SessionError::Shape {
            name: name.into(),
            what: format!("expected {dim}x{dim} matrices"),
        });
    }
    let flat: Vec<Q> = m.iter().flatten().cloned().collect();
    Ok(Matrix::from_dense(dim, dim, &flat))
}

fn to_matrices(
    name: &str,
    dim: usize,
    count: usize,
    ms: &[DenseMatrix],
) -> Result<Vec<Matrix>, SessionError> {
    if ms.len() != count {
        return Err(SessionError::Shape {
            name: name.into(),
            what: format!("expected {count} matrices, got {}", ms.len()),
        });
    }
    ms.iter().map(|m| to_matrix(name, dim, m)).collect()
}

pub fn dense(m: &Matrix) -> DenseMatrix {
    m.to_dense()
}

impl SessionFile {
    pub fn from_json(text: &str) -> Result<SessionFile, SessionError> {
        serde_json::from_str(text).map_err(|e| SessionError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("session serializes") + "\n"
    }

    /// A session holding only an algebra.
    pub fn for_algebra(name: &str, g: &LeibnizAlgebra) -> SessionFile {
        SessionFile {
            name: name.into(),
            algebra: AlgebraSpec {
                basis: g.names().to_vec(),
                structure_constants: g.structure_constants().clone(),
            },
            modules: BTreeMap::new(),
            options: Options::default(),
        }
    }
}

/// Reads and validates a session file.
pub fn parse_session(path: &Path) -> Result<Session, SessionError> {
    let text = std::fs::read_to_string(path).map_err(|source| SessionError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Session::new(SessionFile::from_json(&text)?)
}

impl Session {
    pub fn new(file: SessionFile) -> Result<Session, SessionError> {
        let a = &file.algebra;
        let g = Arc::new(check_leibniz(
            a.basis.clone(),
            a.structure_constants.clone(),
        )?);
        let mut leibniz = BTreeMap::new();
        let mut lie_right = BTreeMap::new();
        let mut lie_left = BTreeMap::new();
        leibniz.insert("trivial".to_string(), LeibModule::trivial(&g));
        leibniz.insert("adjoint".to_string(), LeibModule::adjoint(&g));
        leibniz.insert(
            "adjoint-dual".to_string(),
            dual_sharp(&LeibModule::adjoint(&g)),
        );
        lie_right.insert("k".to_string(), LieRightModule::trivial(&g));
        lie_right.insert("gdown".to_string(), LieRightModule::gdown(&g));
        lie_right.insert("gdown-dual".to_string(), LieRightModule::gdown(&g).dual());
        for (name, spec) in &file.modules {
            if BUILTIN_LEIBNIZ.contains(&name.as_str()) || BUILTIN_LIE.contains(&name.as_str()) {
                return Err(SessionError::Reserved(name.clone()));
            }
            let wrap = |source| SessionError::Module {
                name: name.clone(),
                source,
            };
            match spec {
                ModuleSpec::Leibniz { dim, left, right } => {
                    let left = to_matrices(name, *dim, g.dim(), left)?;
                    let right = to_matrices(name, *dim, g.dim(), right)?;
                    leibniz.insert(
                        name.clone(),
                        check_axioms(&g, *dim, left, right).map_err(wrap)?,
                    );
                }
                ModuleSpec::LieRight { dim, right } => {
                    let right = to_matrices(name, *dim, g.dim(), right)?;
                    lie_right.insert(
                        name.clone(),
                        LieRightModule::from_g_actions(&g, *dim, right).map_err(wrap)?,
                    );
                }
                ModuleSpec::LieLeft { dim, left } => {
                    let neg = to_matrices(name, *dim, g.dim(), left)?
                        .iter()
                        .map(Matrix::neg)
                        .collect();
                    let m = LieRightModule::from_g_actions(&g, *dim, neg).map_err(wrap)?;
                    lie_left.insert(name.clone(), m.to_left());
                }
            }
        }
        Ok(Session {
            file,
            algebra: g,
            leibniz,
            lie_right,
            lie_left,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.file.options.max_degree
    }

    pub fn leibniz_module(&self, name: &str) -> Result<&LeibModule, SessionError> {
        self.leibniz.get(name).ok_or_else(|| SessionError::Unknown {
            name: name.into(),
            kind: "g-module",
        })
    }

    pub fn lie_module(&self, name: &str) -> Result<&LieRightModule, SessionError> {
        self.lie_right
            .get(name)
            .ok_or_else(|| SessionError::Unknown {
                name: name.into(),
                kind: "right g_Lie-module",
            })
    }

    /// A left module by name; right modules are converted through the antipode.
    pub fn lie_left_module(&self, name: &str) -> Result<LieLeftModule, SessionError> {
        if let Some(m) = self.lie_left.get(name) {
            return Ok(m.clone());
        }
        self.lie_right
            .get(name)
            .map(LieRightModule::to_left)
            .ok_or_else(|| SessionError::Unknown {
                name: name.into(),
                kind: "g_Lie-module",
            })
    }
}

/// The bundled example sessions, sorted by name.
pub fn corpus() -> Vec<(&'static str, &'static str)> {
    vec![
        ("abelian1", include_str!("../examples/abelian1.json")),
        ("e_algebra", include_str!("../examples/e_algebra.json")),
        ("e_sheared", include_str!("../examples/e_sheared.json")),
        (
            "lie2_abelian",
            include_str!("../examples/lie2_abelian.json"),
        ),
        (
            "lie2_solvable",
            include_str!("../examples/lie2_solvable.json"),
        ),
        ("nilpotent2", include_str!("../examples/nilpotent2.json")),
        ("nilpotent3", include_str!("../examples/nilpotent3.json")),
    ]
}

pub fn corpus_session(name: &str) -> Option<Session> {
    corpus()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| {
            Session::new(SessionFile::from_json(text).expect("bundled session parses"))
                .expect("bundled session is valid")
        })
}

pub fn corpus_sessions() -> Vec<Session> {
    corpus()
        .into_iter()
        .map(|(n, _)| corpus_session(n).expect("listed"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmodules::Representation;

    #[test]
    fn corpus_parses_and_round_trips() {
        for (name, text) in corpus() {
            let f = SessionFile::from_json(text).unwrap();
            assert_eq!(f.name, name);
            assert_eq!(SessionFile::from_json(&f.to_json()).unwrap(), f);
            Session::new(f).unwrap();
        }
    }

    #[test]
    fn explicit_adjoint_matches_builtin() {
        let s = corpus_session("e_algebra").unwrap();
        assert_eq!(s.leibniz["adjoint-explicit"], s.leibniz["adjoint"]);
        assert_eq!(s.lie_right["weight1"].dim(), 1);
    }

    #[test]
    fn corrupted_product_names_the_triple() {
        let mut f = SessionFile::from_json(corpus()[0].1).unwrap();
        f.algebra.structure_constants[0][0][0] = Q::one();
        match Session::new(f) {
            Err(SessionError::Algebra(AlgebraError::Violation { i, j, k, .. })) => {
                assert_eq!((i, j, k), (0, 0, 0))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reserved_and_malformed_inputs_are_rejected() {
        let mut f = SessionFile::from_json(corpus()[0].1).unwrap();
        f.modules.insert(
            "k".into(),
            ModuleSpec::LieRight {
                dim: 1,
                right: vec![vec![vec![Q::zero()]]],
            },
        );
        assert!(matches!(Session::new(f), Err(SessionError::Reserved(_))));
        assert!(matches!(
            SessionFile::from_json("{\"name\": 3}"),
            Err(SessionError::Parse(_))
        ));
    }
}
