//! The project file: named groups, complexes, actions, families, profiles,
//! double complexes and homotopies in one JSON document.

use std::collections::BTreeMap;
use std::path::Path;

use qss_core::exactla::{parse_rational, Rational};
use qss_core::groupaction::{standard_embedding, Mq3Maps, Mq3Variant, DEFAULT_GROUP_CAP};
use qss_core::quillen::{QuillenFamily, StabilityProfile};
use qss_core::{ChainHomotopy, DoubleComplex, FiniteGroup, GroupAction, RationalMatrix, SemiSimplicialComplex};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectFile {
    pub version: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complexes: BTreeMap<String, ComplexSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, ActionSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub families: BTreeMap<String, FamilySpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub profiles: BTreeMap<String, StabilityProfile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub double_complexes: BTreeMap<String, DoubleComplexSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub homotopies: BTreeMap<String, HomotopySpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    /// `table[a][b]` is the id of `a·b`.
    Table { table: Vec<Vec<usize>> },
    /// Generated by permutations of `0..degree` in image notation.
    Permutations { degree: usize, generators: Vec<Vec<usize>> },
    Symmetric { n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexRecord {
    pub id: usize,
    /// `δ_0 … δ_k` as ids one level down; empty at level 0.
    pub faces: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub levels: Vec<Vec<SimplexRecord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub group: String,
    pub complex: String,
    /// Act on vertex labels letter by letter (permutation groups only).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub letterwise: bool,
    /// Element ids of the generators; defaults to the listed generators of a
    /// permutation group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
    /// `images[k][level]`: permutation of level ids induced by generator `k`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub images: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EmbeddingSpec {
    /// `"standard"`: permutations of fewer letters fix the extra ones.
    Named(String),
    Explicit(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    /// Action names for `r = 0..=R`.
    pub members: Vec<String>,
    pub embeddings: EmbeddingSpec,
    pub variant: Mq3Variant,
    pub q0: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maps: Option<Vec<Mq3Maps>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalLit {
    Int(i64),
    Text(String),
}

impl RationalLit {
    fn parse(&self) -> Result<Rational, CliError> {
        match self {
            RationalLit::Int(v) => Ok(Rational::from_integer((*v).into())),
            RationalLit::Text(s) => parse_rational(s).ok_or_else(|| CliError::invalid(format!("bad rational {s:?}"))),
        }
    }
}

/// `[row, col, "num/den"]`.
pub type Triplet = (usize, usize, RationalLit);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleComplexSpec {
    /// `dims[p][q]`.
    pub dims: Vec<Vec<usize>>,
    /// `horiz[p][q]`: `d_H` out of `(p, q)` for `p + 1 < cols`.
    pub horiz: Vec<Vec<Vec<Triplet>>>,
    /// `vert[p][q]`: `d_V` out of `(p, q)` for `q + 1 < rows`.
    pub vert: Vec<Vec<Vec<Triplet>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopySpec {
    pub complex: String,
    /// `h_{−1}, h_0, …` as triplets.
    pub maps: Vec<Vec<Triplet>>,
    /// `C_{−1}, C_0, …`.
    pub bounds: Vec<RationalLit>,
}

pub fn matrix_triplets(m: &RationalMatrix) -> Vec<Triplet> {
    m.entries()
        .map(|(i, j, v)| {
            let lit = if v.is_integer() {
                i64::try_from(v.to_integer()).map_or_else(|_| RationalLit::Text(v.to_string()), RationalLit::Int)
            } else {
                RationalLit::Text(v.to_string())
            };
            (i, j, lit)
        })
        .collect()
}

fn matrix(rows: usize, cols: usize, t: &[Triplet]) -> Result<RationalMatrix, CliError> {
    let entries = t.iter().map(|(i, j, v)| Ok((*i, *j, v.parse()?))).collect::<Result<Vec<_>, CliError>>()?;
    RationalMatrix::from_triplets(rows, cols, entries).map_err(|e| CliError::invalid(e.to_string()))
}

impl ComplexSpec {
    pub fn from_complex(x: &SemiSimplicialComplex) -> Self {
        let levels = (0..x.num_levels())
            .map(|k| {
                (0..x.level_size(k))
                    .map(|s| SimplexRecord {
                        id: s,
                        faces: if k == 0 { Vec::new() } else { x.faces_of(k, s).to_vec() },
                        label: x.label(k, s).map(<[usize]>::to_vec),
                    })
                    .collect()
            })
            .collect();
        ComplexSpec { levels }
    }

    /// Builds the complex without checking the face identity.
    pub fn build(&self) -> Result<SemiSimplicialComplex, CliError> {
        let mut sizes = Vec::new();
        let mut faces = Vec::new();
        let mut labels = Vec::new();
        for (k, level) in self.levels.iter().enumerate() {
            let mut sorted: Vec<&SimplexRecord> = level.iter().collect();
            sorted.sort_by_key(|r| r.id);
            if sorted.iter().enumerate().any(|(i, r)| r.id != i) {
                return Err(CliError::invalid(format!("simplex ids at level {k} are not 0..{}", level.len())));
            }
            sizes.push(level.len());
            if k > 0 {
                faces.push(sorted.iter().map(|r| r.faces.clone()).collect());
            } else if sorted.iter().any(|r| !r.faces.is_empty()) {
                return Err(CliError::invalid("vertices have no faces".into()));
            }
            labels.push(sorted.iter().map(|r| r.label.clone()).collect::<Option<Vec<_>>>());
        }
        let x = SemiSimplicialComplex::from_faces(sizes, faces);
        if labels.iter().all(Option::is_some) {
            let labels = labels.into_iter().map(Option::unwrap).collect();
            return x.with_labels(labels).map_err(|e| CliError::invalid(e.to_string()));
        }
        Ok(x)
    }
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, CliError> {
        let g = match self {
            GroupSpec::Table { table } => FiniteGroup::from_table(table.clone()),
            GroupSpec::Permutations { degree, generators } => {
                FiniteGroup::from_permutations(*degree, generators, DEFAULT_GROUP_CAP)
            }
            GroupSpec::Symmetric { n } => FiniteGroup::symmetric(*n),
        };
        g.map_err(|e| CliError::invalid(e.to_string()))
    }
}

impl DoubleComplexSpec {
    pub fn from_double_complex(dc: &DoubleComplex) -> Self {
        let (cols, rows) = dc.shape();
        DoubleComplexSpec {
            dims: dc.dims().to_vec(),
            horiz: (0..cols.saturating_sub(1))
                .map(|p| (0..rows).map(|q| matrix_triplets(dc.horizontal(p, q).expect("in grid"))).collect())
                .collect(),
            vert: (0..cols)
                .map(|p| (0..rows.saturating_sub(1)).map(|q| matrix_triplets(dc.vertical(p, q).expect("in grid"))).collect())
                .collect(),
        }
    }

    pub fn build(&self) -> Result<DoubleComplex, CliError> {
        let cols = self.dims.len();
        let rows = self.dims.first().map_or(0, Vec::len);
        let dim = |p: usize, q: usize| self.dims.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0);
        let shape_err = || CliError::invalid("double complex maps do not cover the grid".into());
        if self.horiz.len() != cols.saturating_sub(1) || self.vert.len() != cols {
            return Err(shape_err());
        }
        let horiz = self
            .horiz
            .iter()
            .enumerate()
            .map(|(p, col)| {
                if col.len() != rows {
                    return Err(shape_err());
                }
                col.iter().enumerate().map(|(q, t)| matrix(dim(p + 1, q), dim(p, q), t)).collect()
            })
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        let vert = self
            .vert
            .iter()
            .enumerate()
            .map(|(p, col)| {
                if col.len() != rows.saturating_sub(1) {
                    return Err(shape_err());
                }
                col.iter().enumerate().map(|(q, t)| matrix(dim(p, q + 1), dim(p, q), t)).collect()
            })
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        DoubleComplex::new(self.dims.clone(), horiz, vert).map_err(|e| CliError::invalid(e.to_string()))
    }
}

/// A parsed project with name resolution.
#[derive(Debug, Clone)]
pub struct Project {
    pub file: ProjectFile,
}

impl Project {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: ProjectFile = serde_json::from_str(text)
            .map_err(|e| {
                let text = e.to_string();
                let message = text.rsplit_once(" at line ").map_or(text.as_str(), |(m, _)| m).to_string();
                CliError::Parse { line: e.line(), column: e.column(), message }
            })?;
        if file.version != SCHEMA_VERSION {
            return Err(CliError::Parse {
                line: 1,
                column: 1,
                message: format!("schema version {:?} is not supported; expected {SCHEMA_VERSION:?}", file.version),
            });
        }
        Ok(Project { file })
    }

    fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &'static str, name: &str) -> Result<&'a T, CliError> {
        map.get(name).ok_or_else(|| CliError::NameNotFound { kind, name: name.to_string() })
    }

    pub fn group(&self, name: &str) -> Result<FiniteGroup, CliError> {
        Self::lookup(&self.file.groups, "group", name)?.build()
    }

    pub fn complex(&self, name: &str) -> Result<SemiSimplicialComplex, CliError> {
        Self::lookup(&self.file.complexes, "complex", name)?.build()
    }

    /// The complex, rejected unless it passes validation.
    pub fn valid_complex(&self, name: &str) -> Result<SemiSimplicialComplex, CliError> {
        let x = self.complex(name)?;
        let report = x.validate();
        if !report.passed {
            return Err(CliError::invalid(format!("complex {name} fails validation: {:?}", report.issues[0])));
        }
        Ok(x)
    }

    pub fn action(&self, name: &str) -> Result<GroupAction, CliError> {
        let spec = Self::lookup(&self.file.actions, "action", name)?;
        let g = self.group(&spec.group)?;
        let x = self.valid_complex(&spec.complex)?;
        let a = if spec.letterwise {
            GroupAction::on_vertex_labels(g, x)
        } else {
            let gens = match &spec.generators {
                Some(ids) => ids.clone(),
                None => match self.file.groups.get(&spec.group) {
                    Some(GroupSpec::Permutations { generators, .. }) => generators
                        .iter()
                        .map(|p| g.find_permutation(p).expect("generator is an element"))
                        .collect(),
                    _ => return Err(CliError::invalid(format!("action {name} needs explicit generator ids"))),
                },
            };
            if gens.iter().any(|&e| e >= g.order()) {
                return Err(CliError::invalid(format!("action {name} names a generator outside the group")));
            }
            GroupAction::from_generator_images(g, x, &gens, &spec.images)
        };
        a.map_err(|e| CliError::invalid(format!("action {name}: {e}")))
    }

    pub fn has_action(&self, name: &str) -> bool {
        self.file.actions.contains_key(name)
    }

    pub fn profile(&self, name: &str) -> Result<StabilityProfile, CliError> {
        Self::lookup(&self.file.profiles, "profile", name).cloned()
    }

    pub fn has_profile(&self, name: &str) -> bool {
        self.file.profiles.contains_key(name)
    }

    pub fn family(&self, name: &str) -> Result<QuillenFamily, CliError> {
        let spec = Self::lookup(&self.file.families, "family", name)?;
        let members = spec.members.iter().map(|m| self.action(m)).collect::<Result<Vec<_>, _>>()?;
        let embeddings = match &spec.embeddings {
            EmbeddingSpec::Named(n) if n == "standard" => (1..members.len())
                .map(|r| {
                    standard_embedding(members[r - 1].group(), members[r].group())
                        .ok_or_else(|| CliError::invalid(format!("no standard embedding G_{} → G_{r}", r - 1)))
                })
                .collect::<Result<Vec<_>, _>>()?,
            EmbeddingSpec::Named(n) => return Err(CliError::invalid(format!("unknown embedding scheme {n:?}"))),
            EmbeddingSpec::Explicit(e) => e.clone(),
        };
        let mut fam = QuillenFamily::new(members, embeddings, spec.variant, spec.q0)
            .map_err(|e| CliError::invalid(format!("family {name}: {e}")))?;
        if let Some(maps) = &spec.maps {
            fam = fam.with_maps(maps.clone()).map_err(|e| CliError::invalid(format!("family {name}: {e}")))?;
        }
        if let Some(p) = &spec.profile {
            fam = fam.with_profile(self.profile(p)?);
        }
        Ok(fam)
    }

    pub fn double_complex(&self, name: &str) -> Result<DoubleComplex, CliError> {
        Self::lookup(&self.file.double_complexes, "double complex", name)?.build()
    }

    pub fn has_double_complex(&self, name: &str) -> bool {
        self.file.double_complexes.contains_key(name)
    }

    /// The complex a homotopy lives on, and the homotopy itself.
    pub fn homotopy(&self, name: &str) -> Result<(SemiSimplicialComplex, ChainHomotopy), CliError> {
        let spec = Self::lookup(&self.file.homotopies, "homotopy", name)?;
        let x = self.valid_complex(&spec.complex)?;
        let dim = |k: usize| if k == 0 { 1 } else { x.level_size(k - 1) };
        let maps = spec
            .maps
            .iter()
            .enumerate()
            .map(|(k, t)| matrix(dim(k + 1), dim(k), t))
            .collect::<Result<Vec<_>, _>>()?;
        let bounds = spec.bounds.iter().map(RationalLit::parse).collect::<Result<Vec<_>, _>>()?;
        let h = ChainHomotopy::new(maps, bounds).map_err(|e| CliError::invalid(e.to_string()))?;
        Ok((x, h))
    }

    pub fn has_homotopy(&self, name: &str) -> bool {
        self.file.homotopies.contains_key(name)
    }
}
