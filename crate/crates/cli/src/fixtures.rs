//! The shipped example projects, built from library constructors. The files
//! under `fixtures/` are these values serialized.

use std::collections::BTreeMap;

use qss_core::exactla::Rational;
use qss_core::extint::ExtInt::{self, Finite, NegInf, PosInf};
use qss_core::groupaction::Mq3Variant;
use qss_core::quillen::{ExtensionRule, StabilityProfile};
use qss_core::semisimplicial::{boundary_simplex, coning_homotopy, injective_words_complex, product_complex};
use qss_core::spectral::{build_group_double_complex, DEFAULT_CELL_BUDGET};
use qss_core::{DoubleComplex, FiniteGroup, GroupAction, RationalMatrix, SemiSimplicialComplex};

use crate::project::{
    matrix_triplets, ActionSpec, ComplexSpec, DoubleComplexSpec, EmbeddingSpec, FamilySpec, GroupSpec, HomotopySpec,
    ProjectFile, RationalLit, SimplexRecord, SCHEMA_VERSION,
};

fn empty() -> ProjectFile {
    ProjectFile {
        version: SCHEMA_VERSION.into(),
        groups: BTreeMap::new(),
        complexes: BTreeMap::new(),
        actions: BTreeMap::new(),
        families: BTreeMap::new(),
        profiles: BTreeMap::new(),
        double_complexes: BTreeMap::new(),
        homotopies: BTreeMap::new(),
    }
}

fn letterwise(group: &str, complex: &str) -> ActionSpec {
    ActionSpec { group: group.into(), complex: complex.into(), letterwise: true, generators: None, images: Vec::new() }
}

fn fixed(group: &str, complex: &str) -> ActionSpec {
    ActionSpec { group: group.into(), complex: complex.into(), letterwise: false, generators: Some(Vec::new()), images: Vec::new() }
}

fn trivial_table() -> GroupSpec {
    GroupSpec::Table { table: vec![vec![0]] }
}

/// `S_3` on injective words, the trivial group on `∂Δ²` and on a point.
pub fn s3_injwords() -> ProjectFile {
    let mut f = empty();
    f.groups.insert("s3".into(), GroupSpec::Symmetric { n: 3 });
    f.groups.insert("trivial".into(), trivial_table());
    f.complexes.insert("words3".into(), ComplexSpec::from_complex(&injective_words_complex(3)));
    f.complexes.insert("circle".into(), ComplexSpec::from_complex(&boundary_simplex(2)));
    f.complexes.insert("point".into(), ComplexSpec::from_complex(&injective_words_complex(1)));
    f.actions.insert("s3_words".into(), letterwise("s3", "words3"));
    f.actions.insert("trivial_circle".into(), fixed("trivial", "circle"));
    f.actions.insert("trivial_point".into(), fixed("trivial", "point"));
    f.double_complexes.insert("point_cell".into(), DoubleComplexSpec::from_double_complex(&point_cell()));
    f
}

/// One copy of ℚ at the origin and nothing else.
pub fn point_cell() -> DoubleComplex {
    DoubleComplex::new(vec![vec![1]], Vec::new(), vec![Vec::new()]).expect("one cell")
}

/// `ℚ` at `(0,1)`, `(1,0)`, `(1,1)`, `(2,0)` joined by identities, so the
/// column filtration needs a `d_2`.
pub fn zigzag() -> DoubleComplex {
    let one = || RationalMatrix::identity(1);
    let z = |r, c| RationalMatrix::zeros(r, c);
    DoubleComplex::new(
        vec![vec![0, 1], vec![1, 1], vec![1, 0]],
        vec![vec![z(1, 0), one()], vec![one(), z(0, 1)]],
        vec![vec![z(1, 0)], vec![one()], vec![z(0, 1)]],
    )
    .expect("zigzag commutes")
}

pub fn gl_profile() -> StabilityProfile {
    StabilityProfile::with_rules(
        PosInf,
        2,
        vec![PosInf],
        vec![Finite(0)],
        ExtensionRule::Infinity,
        ExtensionRule::Affine { slope: 1, offset: 0 },
    )
    .expect("valid")
}

/// `τ(r) = r` for `r < R`, `τ(R) = R − 1`, `γ ≡ ∞`, `q₀ = 2`.
pub fn sl_profile(big_r: usize) -> StabilityProfile {
    let mut tau: Vec<ExtInt> = (0..big_r as i64).map(Finite).collect();
    tau.push(Finite(big_r as i64 - 1));
    StabilityProfile::new(big_r, 2, vec![PosInf; big_r + 1], tau).expect("valid")
}

pub fn void_profile() -> StabilityProfile {
    StabilityProfile::with_rules(PosInf, 1, vec![NegInf], vec![PosInf], ExtensionRule::Constant, ExtensionRule::Constant)
        .expect("valid")
}

pub fn profiles() -> ProjectFile {
    let mut f = empty();
    f.profiles.insert("gl".into(), gl_profile());
    f.profiles.insert("sl6".into(), sl_profile(6));
    f.profiles.insert("sl8".into(), sl_profile(8));
    f.profiles.insert("void".into(), void_profile());
    f
}

/// `S_0 ⊂ … ⊂ S_R` on injective words with the standard embeddings.
pub fn symmetric_family(big_r: usize) -> ProjectFile {
    let mut f = empty();
    let mut members = Vec::new();
    for r in 0..=big_r {
        f.groups.insert(format!("s{r}"), GroupSpec::Symmetric { n: r });
        f.complexes.insert(format!("words{r}"), ComplexSpec::from_complex(&injective_words_complex(r)));
        f.actions.insert(format!("s{r}_words"), letterwise(&format!("s{r}"), &format!("words{r}")));
        members.push(format!("s{r}_words"));
    }
    f.families.insert(
        format!("sym{big_r}"),
        FamilySpec {
            members,
            embeddings: EmbeddingSpec::Named("standard".into()),
            variant: Mq3Variant::A,
            q0: 1,
            profile: None,
            maps: None,
        },
    );
    f
}

/// `∂Δ²` filled with one triangle whose faces are miswired.
pub fn broken_faces() -> ProjectFile {
    let mut f = empty();
    let mut spec = ComplexSpec::from_complex(&boundary_simplex(2));
    for level in &mut spec.levels {
        for s in level {
            s.label = None;
        }
    }
    // Edges are 01, 02, 12; the correct faces of 012 are [12, 02, 01] = [2, 1, 0].
    spec.levels.push(vec![SimplexRecord { id: 0, faces: vec![2, 0, 1], label: None }]);
    f.complexes.insert("broken".into(), spec);
    f.complexes.insert("circle".into(), ComplexSpec::from_complex(&boundary_simplex(2)));
    f
}

pub fn double_complexes() -> ProjectFile {
    let mut f = empty();
    f.double_complexes.insert("zigzag".into(), DoubleComplexSpec::from_double_complex(&zigzag()));
    f.double_complexes.insert("point_cell".into(), DoubleComplexSpec::from_double_complex(&point_cell()));
    let s2 = GroupAction::on_vertex_labels(FiniteGroup::symmetric(2).expect("S_2"), injective_words_complex(2)).expect("action");
    let dc = build_group_double_complex(&s2, 3, 2, DEFAULT_CELL_BUDGET).expect("small");
    f.double_complexes.insert("s2_words".into(), DoubleComplexSpec::from_double_complex(&dc));
    f
}

fn homotopy_spec(complex: &str, x: &SemiSimplicialComplex, vertex: usize) -> HomotopySpec {
    let h = coning_homotopy(x, vertex).expect("labelled cone");
    HomotopySpec {
        complex: complex.into(),
        maps: h.maps().iter().map(matrix_triplets).collect(),
        bounds: h.bounds().iter().map(|b: &Rational| RationalLit::Text(b.to_string())).collect(),
    }
}

/// Product complex on two vertices with its coning homotopy.
pub fn cone() -> ProjectFile {
    let mut f = empty();
    let x = product_complex(2, 3).expect("two vertices");
    f.complexes.insert("prod2".into(), ComplexSpec::from_complex(&x));
    f.homotopies.insert("cone_at_0".into(), homotopy_spec("prod2", &x, 0));
    f
}

/// `(file name, contents)` of every shipped fixture.
pub fn all() -> Vec<(&'static str, ProjectFile)> {
    vec![
        ("s3_injwords.json", s3_injwords()),
        ("profiles.json", profiles()),
        ("symmetric_family.json", symmetric_family(3)),
        ("broken_faces.json", broken_faces()),
        ("double_complex.json", double_complexes()),
        ("cone.json", cone()),
    ]
}
