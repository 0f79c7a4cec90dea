//! Report types emitted by the commands, with their human renderings.

use std::fmt::Write as _;

use qss_core::exactla::HomotopyReport;
use qss_core::quillen::{FamilyReport, StabilityProfile, StabilityTable};
use qss_core::spectral::{SpectralSummary, TheoremAReport};
use qss_core::ExtInt;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateEntry {
    pub section: String,
    pub name: String,
    pub passed: bool,
    pub issues: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub entries: Vec<ValidateEntry>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub action: String,
    pub group_order: usize,
    pub level_sizes: Vec<usize>,
    pub gamma0: ExtInt,
    /// Highest cochain degree inspected for `γ₀`.
    pub checked_through: i64,
    pub tau0: ExtInt,
    pub orbit_counts: Vec<usize>,
    pub stabilizer_orders: Vec<usize>,
    /// Cohomology of the augmented complex in degrees `0, 1, …`.
    pub cohomology_dims: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilitySource {
    Profile,
    Family,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub name: String,
    pub source: StabilitySource,
    pub profile: StabilityProfile,
    pub table: StabilityTable,
    pub family: Option<FamilyReport>,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapClass {
    Zero,
    Isomorphism,
    Injective,
    Surjective,
    Neither,
}

impl MapClass {
    pub fn of(rank: usize, source: usize, target: usize) -> Self {
        match (rank == source, rank == target) {
            (true, true) => MapClass::Isomorphism,
            _ if rank == 0 => MapClass::Zero,
            (true, false) => MapClass::Injective,
            (false, true) => MapClass::Surjective,
            (false, false) => MapClass::Neither,
        }
    }
}

/// `d_1: E_1^{p,0} → E_1^{p+1,0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BottomRowMap {
    pub p: usize,
    pub source: usize,
    pub target: usize,
    pub rank: usize,
    pub class: MapClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectralReport {
    Action { name: String, theorem_a: Box<TheoremAReport>, bottom_row_d1: Vec<BottomRowMap>, pages_shown: usize },
    DoubleComplex {
        name: String,
        vertical: SpectralSummary,
        horizontal: SpectralSummary,
        totals_agree: bool,
        pages_shown: usize,
        passed: bool,
    },
}

impl SpectralReport {
    pub fn passed(&self) -> bool {
        match self {
            SpectralReport::Action { theorem_a, .. } => theorem_a.passed,
            SpectralReport::DoubleComplex { passed, .. } => *passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyCheckReport {
    pub name: String,
    pub homotopy: HomotopyReport,
    /// Acyclicity degree of the augmented cochain complex.
    pub acyclicity_degree: ExtInt,
}

fn ext(v: ExtInt) -> String {
    match v {
        ExtInt::PosInf => "+∞".into(),
        other => other.to_string(),
    }
}

fn list<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// `grid[p][q]` drawn with `p` to the right and `q` upwards.
pub fn render_grid(title: &str, grid: &[Vec<usize>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let rows = grid.iter().map(Vec::len).max().unwrap_or(0);
    let width = grid.iter().flatten().map(|d| d.to_string().len()).max().unwrap_or(1).max(2);
    for q in (0..rows).rev() {
        let _ = write!(out, "  q={q:<2}|");
        for col in grid {
            let d = col.get(q).copied().unwrap_or(0);
            let cell = if d == 0 { ".".to_string() } else { d.to_string() };
            let _ = write!(out, " {cell:>width$}");
        }
        out.push('\n');
    }
    let _ = write!(out, "      +");
    for _ in grid {
        let _ = write!(out, "{}", "-".repeat(width + 1));
    }
    let _ = write!(out, "\n       ");
    for p in 0..grid.len() {
        let _ = write!(out, " {:>width$}", format!("p{p}"));
    }
    out.push('\n');
    out
}

/// A page grid reoriented to `[p][q]`.
fn oriented(dims: &[Vec<usize>], transpose: bool) -> Vec<Vec<usize>> {
    if !transpose {
        return dims.to_vec();
    }
    let cols = dims.first().map_or(0, Vec::len);
    (0..cols).map(|p| dims.iter().map(|row| row[p]).collect()).collect()
}

impl ValidateReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let mark = if e.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "{mark} {} {}", e.section, e.name);
            for i in &e.issues {
                let _ = writeln!(out, "       {i}");
            }
        }
        let _ = writeln!(out, "{}", if self.passed { "all checks passed" } else { "validation failed" });
        out
    }
}

impl AnalyzeReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "action {}", self.action);
        let _ = writeln!(out, "  |G|               = {}", self.group_order);
        let _ = writeln!(out, "  level sizes       = {}", list(&self.level_sizes));
        let capped = if self.gamma0 == ExtInt::PosInf {
            format!(" (exact through degree {})", self.checked_through)
        } else {
            String::new()
        };
        let _ = writeln!(out, "  γ₀                = {}{capped}", ext(self.gamma0));
        let _ = writeln!(out, "  τ₀                = {}", ext(self.tau0));
        let _ = writeln!(out, "  orbits per level  = {}", list(&self.orbit_counts));
        let _ = writeln!(out, "  stabilizer orders = {}", list(&self.stabilizer_orders));
        let _ = writeln!(out, "  cohomology from degree 0 = {}", list(&self.cohomology_dims));
        out
    }
}

impl StabilityReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let p = &self.profile;
        let _ = writeln!(out, "{} {:?}: R = {}, q₀ = {}", match self.source {
            StabilitySource::Profile => "profile",
            StabilitySource::Family => "family",
        }, self.name, ext(p.length()), p.q0());
        if let Some(fam) = &self.family {
            for m in &fam.members {
                let _ = writeln!(out, "  r={:<2} |G|={:<5} γ={:<4} τ={:<4} levels={}", m.r, m.group_order, ext(m.gamma), ext(m.tau), list(&m.level_sizes));
            }
            for f in &fam.failures {
                let _ = writeln!(out, "  failure: {}", serde_json::to_string(f).unwrap_or_default());
            }
        }
        let Some(horizon) = self.table.horizon else {
            let _ = writeln!(out, "  no verdicts: the profile is undefined past its tables");
            return out;
        };
        let _ = write!(out, "\n  q\\r |");
        for r in 0..=horizon {
            let _ = write!(out, "{r:>3}");
        }
        let _ = writeln!(out, " | r(q)");
        for row in self.table.rows.iter().rev() {
            let _ = write!(out, "  {:<4}|", row.q);
            for v in &row.verdicts {
                let _ = write!(out, "{:>3}", v.symbol());
            }
            let rq = row.first_isomorphism.map_or("-".to_string(), |r| r.to_string());
            let _ = writeln!(out, " | {rq}");
        }
        let _ = writeln!(out, "\n  ≅ isomorphism   ↪ injection   ? no conclusion");
        out
    }
}

impl SpectralReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        match self {
            SpectralReport::Action { name, theorem_a: t, bottom_row_d1, pages_shown } => {
                let _ = writeln!(
                    out,
                    "action {name}: γ₀ = {}, τ₀ = {}, group degrees q < {}, levels X_{{−1}} … X_{{{}}}",
                    ext(t.gamma0),
                    ext(t.tau0),
                    t.max_p,
                    t.max_q as i64 - 1
                );
                let shown = match t.reliable_total_degree {
                    ExtInt::Finite(d) if d >= 0 => (d as usize + 1).min(t.total_cohomology.len()),
                    ExtInt::PosInf => t.total_cohomology.len(),
                    _ => 0,
                };
                let _ = writeln!(
                    out,
                    "total cohomology through degree {} = {}\n",
                    ext(t.reliable_total_degree),
                    list(&t.total_cohomology[..shown])
                );
                let cut = |g: &[Vec<usize>]| -> Vec<Vec<usize>> {
                    g.iter().map(|col| col.iter().copied().take(t.max_p).collect()).collect()
                };
                for page in t.summary.pages.iter().take(*pages_shown) {
                    out.push_str(&render_grid(&format!("E_{}", page.r), &cut(&page.dims)));
                    out.push('\n');
                }
                out.push_str(&render_grid("E_∞", &cut(&t.e_infinity)));
                let _ = writeln!(out, "(row q = {} is cut off by the truncation and not shown)", t.max_p);
                let _ = writeln!(out, "\nbottom-row d_1:");
                for m in bottom_row_d1 {
                    let _ = writeln!(out, "  p={} → {}: {} → {} rank {} ({:?})", m.p, m.p + 1, m.source, m.target, m.rank, m.class);
                }
                let _ = writeln!(out, "\nchecks:");
                for c in &t.checks {
                    let state = match (c.applicable, c.passed) {
                        (false, _) => "n/a ",
                        (true, true) => "ok  ",
                        (true, false) => "FAIL",
                    };
                    let _ = writeln!(out, "  {state} {:?} over {}", c.claim, c.range);
                    for f in &c.failures {
                        let _ = writeln!(out, "       {f}");
                    }
                }
                for n in &t.notes {
                    let _ = writeln!(out, "  note: {n}");
                }
                for i in &t.issues {
                    let _ = writeln!(out, "  issue: {i:?}");
                }
            }
            SpectralReport::DoubleComplex { name, vertical, horizontal, totals_agree, pages_shown, .. } => {
                let _ = writeln!(out, "double complex {name}");
                for (label, s, transpose) in [("vertical filtration", vertical, false), ("horizontal filtration", horizontal, true)] {
                    let _ = writeln!(out, "\n{label}, stable from page {}", s.stable_page);
                    for page in s.pages.iter().take(*pages_shown) {
                        out.push_str(&render_grid(&format!("E_{}", page.r), &oriented(&page.dims, transpose)));
                    }
                    out.push_str(&render_grid("E_∞", &oriented(&s.infinity, transpose)));
                    for i in &s.issues {
                        let _ = writeln!(out, "  issue: {i:?}");
                    }
                }
                let _ = writeln!(out, "\ntotal cohomology: vertical {} horizontal {}", list(&vertical.total_cohomology), list(&horizontal.total_cohomology));
                let _ = writeln!(out, "totals agree: {totals_agree}");
            }
        }
        let _ = writeln!(out, "{}", if self.passed() { "passed" } else { "FAILED" });
        out
    }
}

impl HomotopyCheckReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "homotopy {} through degree {}", self.name, self.homotopy.up_to);
        for d in &self.homotopy.degrees {
            let _ = writeln!(out, "  k={:<3} identity {:<5} bound {:<5} max column ℓ¹ = {}", d.degree, d.identity_holds, d.bound_holds, d.max_column_norm);
            if let Some(v) = &d.violation {
                let _ = writeln!(out, "        simplex {} has norm {} > {}", v.simplex, v.norm, v.bound);
            }
        }
        let _ = writeln!(out, "  acyclicity degree of the cochain complex = {}", ext(self.acyclicity_degree));
        let _ = writeln!(out, "{}", if self.homotopy.passed { "passed" } else { "FAILED" });
        out
    }
}
