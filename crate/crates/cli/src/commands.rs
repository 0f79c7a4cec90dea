//! One function per subcommand. Each returns a report; the binary decides
//! how to print it and which exit code to use.

use qss_core::groupaction::generic_flag;
use qss_core::quillen::{stability_table, verify_family, VerifyOptions};
use qss_core::semisimplicial::{coning_homotopy, ValidationIssue};
use qss_core::spectral::{spectral_sequence, verify_theorem_a, Filtration, SpectralError, DEFAULT_CELL_BUDGET};
use qss_core::exactla::verify_l1_homotopy;
use qss_core::{ExtInt, GroupAction};

use crate::error::CliError;
use crate::project::Project;
use crate::report::{
    AnalyzeReport, BottomRowMap, HomotopyCheckReport, MapClass, SpectralReport, StabilityReport, StabilitySource,
    ValidateEntry, ValidateReport,
};

pub const BUDGET_VAR: &str = "QSS_BUDGET";

/// The cell budget, from `QSS_BUDGET` when set.
pub fn cell_budget() -> Result<usize, CliError> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{BUDGET_VAR}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_CELL_BUDGET),
    }
}

pub fn describe_issue(issue: &ValidationIssue) -> String {
    match issue {
        ValidationIssue::EmptyLevelBelowNonempty { level } => format!("level {level} is empty below a nonempty level"),
        ValidationIssue::MissingFaces { level } => format!("level {level}: face table does not match the level sizes"),
        ValidationIssue::WrongArity { level, simplex, expected, found } => {
            format!("simplex {simplex} at level {level}: {found} faces, expected {expected}")
        }
        ValidationIssue::FaceOutOfRange { level, simplex, face, id } => {
            format!("simplex {simplex} at level {level}: face δ_{face} = {id} is not a simplex one level down")
        }
        ValidationIssue::FaceIdentity { level, simplex, i, j } => format!(
            "simplex {simplex} at level {level}: δ_{i} δ_{j} ≠ δ_{} δ_{i}",
            j - 1
        ),
    }
}

fn entry(section: &str, name: &str, issues: Vec<String>) -> ValidateEntry {
    ValidateEntry { section: section.into(), name: name.into(), passed: issues.is_empty(), issues }
}

fn as_issues<T>(r: Result<T, CliError>) -> Vec<String> {
    match r {
        Ok(_) => Vec::new(),
        Err(e) => vec![e.to_string()],
    }
}

pub fn validate(project: &Project) -> ValidateReport {
    let f = &project.file;
    let mut entries = Vec::new();
    for name in f.groups.keys() {
        entries.push(entry("group", name, as_issues(project.group(name))));
    }
    for name in f.complexes.keys() {
        let issues = match project.complex(name) {
            Ok(x) => x.validate().issues.iter().map(describe_issue).collect(),
            Err(e) => vec![e.to_string()],
        };
        entries.push(entry("complex", name, issues));
    }
    for name in f.actions.keys() {
        let issues = match project.action(name) {
            Ok(a) => a.validate().issues.iter().map(|i| format!("{i:?}")).collect(),
            Err(e) => vec![e.to_string()],
        };
        entries.push(entry("action", name, issues));
    }
    for name in f.families.keys() {
        entries.push(entry("family", name, as_issues(project.family(name))));
    }
    for name in f.profiles.keys() {
        entries.push(entry("profile", name, Vec::new()));
    }
    for name in f.double_complexes.keys() {
        entries.push(entry("double complex", name, as_issues(project.double_complex(name))));
    }
    for name in f.homotopies.keys() {
        entries.push(entry("homotopy", name, as_issues(project.homotopy(name))));
    }
    let passed = entries.iter().all(|e| e.passed);
    ValidateReport { entries, passed }
}

/// `γ₀`, the top cochain degree and the augmented cohomology of the complex.
fn acyclicity(action: &GroupAction) -> Result<(ExtInt, i64, Vec<usize>), CliError> {
    let c = action.complex().augmented_cochain_complex().map_err(|e| CliError::invalid(e.to_string()))?;
    Ok((c.acyclicity_degree(), c.top_degree(), c.cohomology_dims()))
}

fn stabilizer_orders(action: &GroupAction, tau0: ExtInt) -> Result<Vec<usize>, CliError> {
    let depth = match tau0 {
        ExtInt::Finite(t) if t >= 0 => t as usize,
        ExtInt::PosInf => action.complex().top_level().unwrap_or(0),
        _ => return Ok(Vec::new()),
    };
    let flag = generic_flag(action, depth).map_err(|e| CliError::invalid(e.to_string()))?;
    Ok(flag.stabilizer_orders())
}

pub fn analyze(project: &Project, name: &str) -> Result<AnalyzeReport, CliError> {
    let action = project.action(name)?;
    let (gamma0, checked_through, cohomology_dims) = acyclicity(&action)?;
    let tau0 = action.transitivity_degree();
    let x = action.complex();
    Ok(AnalyzeReport {
        action: name.into(),
        group_order: action.group().order(),
        level_sizes: x.level_sizes().to_vec(),
        gamma0,
        checked_through,
        tau0,
        orbit_counts: (0..x.num_levels()).map(|k| action.orbits(k).len()).collect(),
        stabilizer_orders: stabilizer_orders(&action, tau0)?,
        cohomology_dims,
    })
}

pub fn stability(project: &Project, name: &str, q_max: usize) -> Result<StabilityReport, CliError> {
    if project.has_profile(name) {
        let profile = project.profile(name)?;
        let table = stability_table(&profile, q_max);
        return Ok(StabilityReport { name: name.into(), source: StabilitySource::Profile, profile, table, family: None, passed: true });
    }
    let fam = project.family(name)?;
    let report = verify_family(&fam, VerifyOptions { q_max, theorem_a_budget: None });
    let profile = fam.declared_profile().cloned().unwrap_or_else(|| report.computed_profile.clone());
    let table = stability_table(&profile, q_max);
    Ok(StabilityReport {
        name: name.into(),
        source: StabilitySource::Family,
        profile,
        table,
        passed: report.passed,
        family: Some(report),
    })
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SpectralOptions {
    pub max_p: Option<usize>,
    pub max_q: Option<usize>,
    /// Pages to print; `None` prints all.
    pub pages: Option<usize>,
}

fn spectral_error(e: SpectralError) -> CliError {
    match e {
        SpectralError::BudgetExceeded { .. } => {
            CliError::Budget(format!("{e}; raise {BUDGET_VAR} or pass a smaller --max-p/--max-q"))
        }
        other => CliError::invalid(other.to_string()),
    }
}

pub fn spectral(project: &Project, name: &str, opts: SpectralOptions) -> Result<SpectralReport, CliError> {
    if project.has_double_complex(name) {
        let dc = project.double_complex(name)?;
        let v = spectral_sequence(&dc, Filtration::Vertical, None).summary();
        let h = spectral_sequence(&dc, Filtration::Horizontal, None).summary();
        let sum = |grid: &[Vec<usize>]| {
            let mut t = vec![0; grid.len() + grid.first().map_or(0, Vec::len)];
            for (s, row) in grid.iter().enumerate() {
                for (u, d) in row.iter().enumerate() {
                    t[s + u] += d;
                }
            }
            t.truncate(v.total_cohomology.len());
            t
        };
        let totals_agree = v.total_cohomology == h.total_cohomology
            && sum(&v.infinity) == v.total_cohomology
            && sum(&h.infinity) == h.total_cohomology;
        let passed = totals_agree && v.issues.is_empty() && h.issues.is_empty();
        let pages_shown = opts.pages.unwrap_or(v.pages.len().max(h.pages.len()));
        return Ok(SpectralReport::DoubleComplex { name: name.into(), vertical: v, horizontal: h, totals_agree, pages_shown, passed });
    }
    let action = project.action(name)?;
    let (gamma0, _, _) = acyclicity(&action)?;
    let tau0 = action.transitivity_degree();
    let grid = match (opts.max_p, opts.max_q) {
        (None, None) => None,
        (p, q) => {
            let (dp, dq) = qss_core::spectral::default_grid(&action, gamma0, tau0);
            Some((p.unwrap_or(dp), q.unwrap_or(dq)))
        }
    };
    let report = verify_theorem_a(&action, gamma0, tau0, grid, cell_budget()?).map_err(spectral_error)?;
    let ranks = report.summary.pages.iter().find(|p| p.r == 1).map(|p| p.ranks.clone()).unwrap_or_default();
    let bottom_row_d1 = (0..report.e1.len().saturating_sub(1))
        .map(|p| {
            let source = report.e1[p].first().copied().unwrap_or(0);
            let target = report.e1[p + 1].first().copied().unwrap_or(0);
            let rank = ranks.iter().find(|&&(s, t, _)| (s, t) == (p, 0)).map_or(0, |&(_, _, k)| k);
            BottomRowMap { p, source, target, rank, class: MapClass::of(rank, source, target) }
        })
        .collect();
    let pages_shown = opts.pages.unwrap_or(report.summary.pages.len());
    Ok(SpectralReport::Action { name: name.into(), theorem_a: Box::new(report), bottom_row_d1, pages_shown })
}

/// Checks a named homotopy, or with `cone` the coning homotopy of a named
/// complex at that vertex.
pub fn homotopy_check(
    project: &Project,
    name: &str,
    cone: Option<usize>,
    up_to: Option<i64>,
) -> Result<HomotopyCheckReport, CliError> {
    let (x, h) = match cone {
        Some(v) => {
            let x = project.valid_complex(name)?;
            if v >= x.level_size(0) {
                return Err(CliError::Usage(format!("complex {name} has no vertex {v}")));
            }
            let h = coning_homotopy(&x, v).map_err(|e| CliError::invalid(e.to_string()))?;
            (x, h)
        }
        None => project.homotopy(name)?,
    };
    let up_to = up_to.unwrap_or_else(|| x.top_level().map_or(-1, |t| t as i64 - 1));
    let c = x.augmented_cochain_complex().map_err(|e| CliError::invalid(e.to_string()))?;
    let homotopy = verify_l1_homotopy(&c, &h, up_to).map_err(|e| CliError::invalid(e.to_string()))?;
    Ok(HomotopyCheckReport { name: name.into(), homotopy, acyclicity_degree: c.acyclicity_degree() })
}
