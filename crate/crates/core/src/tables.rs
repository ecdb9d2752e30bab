//! Row recipes for the published code tables and a harness that rebuilds
//! each row and compares it with the expected parameters.
//!
//! Table 2 is generated from Paley matrices alone. The other tables need
//! matrices, designs or automorphism groups that are not constructible
//! here; their rows name the files they need and report SKIPPED when
//! those files are absent.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::build::{build_hermitian, build_orbit, build_plain, build_skew_hadamard, BuildResult, DesignInput};
use crate::code::{FsdMode, FsdStatus, LinearCode};
use crate::construct::{infer_design, paley_conference, paley_type_one, validate_weighing};
use crate::distance::{Distance, DistanceAlgorithm, EnumerationPolicy};
use crate::error::{Error, Result};
use crate::format::{read_group, read_matrix};
use crate::matq::{FqMatrix, Matrix};
use crate::orbit::orbit_structure;

/// Design incidence shared by all Table 1 rows (30 points, 36 blocks).
pub const TABLE1_DESIGN_FILE: &str = "table1_B.mat";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableId(u8);

impl TableId {
    pub const ALL: [TableId; 5] = [TableId(1), TableId(2), TableId(3), TableId(4), TableId(5)];

    pub fn new(id: u8) -> Result<Self> {
        if (1..=5).contains(&id) {
            Ok(TableId(id))
        } else {
            Err(Error::InvalidArgument(format!("unknown table id {id} (expected 1 to 5)")))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::str::FromStr for TableId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let id = s
            .trim()
            .parse::<u8>()
            .map_err(|_| Error::InvalidArgument(format!("unknown table id {s:?}")))?;
        TableId::new(id)
    }
}

/// Expected code parameters `[n, k, d]_q`; `d` is missing where the table
/// leaves it blank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub q: u32,
}

impl CodeParams {
    pub const fn new(n: usize, k: usize, d: usize, q: u32) -> Self {
        CodeParams { n, k, d: Some(d), q }
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            Some(d) => write!(f, "[{},{},{}]_{}", self.n, self.k, d, self.q),
            None => write!(f, "[{},{}]_{}", self.n, self.k, self.q),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    /// `[H + αI | I]` with `H = P₁(π)`.
    SkewHadamard { pi: u32, alpha: u8 },
    /// `[W_t | B_t]`: a Paley type I or conference matrix of order `t`
    /// next to the first `t` rows of the Table 1 design.
    PaleyDesign { t: usize, pi: u32, conference: bool },
    /// `[R | I]` for the row orbit matrix of a weighing matrix file under a
    /// group file (no group means the trivial group, `R = W`).
    Orbit { matrix: String, group: Option<String> },
    /// `[W | I]` for an `F_q`-weighing matrix file, Hermitian inner product.
    Hermitian { matrix: String },
}

impl Recipe {
    /// Files the row needs from the data directory.
    pub fn required_files(&self) -> Vec<&str> {
        match self {
            Recipe::SkewHadamard { .. } => vec![],
            Recipe::PaleyDesign { .. } => vec![TABLE1_DESIGN_FILE],
            Recipe::Orbit { matrix, group } => {
                let mut files = vec![matrix.as_str()];
                files.extend(group.as_deref());
                files
            }
            Recipe::Hermitian { matrix } => vec![matrix.as_str()],
        }
    }

    pub fn is_generated(&self) -> bool {
        self.required_files().is_empty()
    }

    fn describe(&self) -> String {
        match self {
            Recipe::SkewHadamard { pi, alpha } => format!("P1({pi})+{alpha}I|I"),
            Recipe::PaleyDesign { t, pi, conference } => {
                let kind = if *conference { "conf" } else { "P1" };
                format!("{kind}({pi})|B_{t}")
            }
            Recipe::Orbit { matrix, group } => match group {
                Some(g) => format!("{matrix}/{g}|I"),
                None => format!("{matrix}|I"),
            },
            Recipe::Hermitian { matrix } => format!("{matrix}|I herm"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpec {
    pub table: TableId,
    pub index: usize,
    pub recipe: Recipe,
    pub expected: CodeParams,
    /// Expected parameters of the (Hermitian) dual where the table lists them.
    pub expected_dual: Option<CodeParams>,
}

impl RowSpec {
    pub fn q(&self) -> u32 {
        self.expected.q
    }

    fn hermitian(&self) -> bool {
        matches!(self.recipe, Recipe::Hermitian { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RowStatus {
    Pass,
    Skipped(String),
    Partial(String),
    Fail(String),
}

impl RowStatus {
    pub fn is_fail(&self) -> bool {
        matches!(self, RowStatus::Fail(_))
    }

    fn merge(self, other: RowStatus) -> RowStatus {
        self.max(other)
    }
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowStatus::Pass => f.write_str("PASS"),
            RowStatus::Partial(why) => write!(f, "PARTIAL ({why})"),
            RowStatus::Skipped(why) => write!(f, "SKIPPED ({why})"),
            RowStatus::Fail(why) => write!(f, "FAIL ({why})"),
        }
    }
}

/// Parameters actually obtained for a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measured {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub distance: Distance,
    pub lcd: bool,
}

impl fmt::Display for Measured {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.distance.exact() {
            Some(d) => write!(f, "[{},{},{}]_{}[EXACT]", self.n, self.k, d, self.q),
            None => write!(
                f,
                "[{},{},{}..{}]_{}[LOWER_BOUND]",
                self.n, self.k, self.distance.lower, self.distance.upper, self.q
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReport {
    pub spec: RowSpec,
    pub status: RowStatus,
    pub code: Option<Measured>,
    pub dual: Option<Measured>,
    pub fsd: Option<FsdStatus>,
    pub verdict: Option<String>,
}

impl fmt::Display for RowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "table {} row {:2}: {} expect {}",
            self.spec.table,
            self.spec.index,
            self.spec.recipe.describe(),
            self.spec.expected
        )?;
        if let Some(d) = &self.spec.expected_dual {
            write!(f, " dual {d}")?;
        }
        if let Some(c) = &self.code {
            write!(f, " got {c} lcd={}", if c.lcd { "yes" } else { "no" })?;
        }
        if let Some(c) = &self.dual {
            write!(f, " dual {c}")?;
        }
        if let Some(fsd) = &self.fsd {
            write!(f, " fsd={fsd}")?;
        }
        if let Some(v) = &self.verdict {
            write!(f, " predicted={v}")?;
        }
        write!(f, " {}", self.status)
    }
}

/// Limits for the harness.
#[derive(Clone, Copy, Debug)]
pub struct HarnessOptions {
    pub policy: EnumerationPolicy,
    /// Cap for exact formal self-duality (weight distribution enumeration).
    pub fsd_cap: u64,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        let policy = EnumerationPolicy::default();
        HarnessOptions {
            policy,
            fsd_cap: policy.cap,
        }
    }
}

const TABLE2: [(usize, u8, u32, Option<usize>); 32] = [
    (4, 0, 2, Some(2)),
    (4, 2, 3, Some(3)),
    (4, 0, 3, Some(4)),
    (4, 1, 5, Some(4)),
    (8, 0, 2, Some(2)),
    (8, 2, 3, Some(6)),
    (8, 0, 5, Some(6)),
    (8, 1, 5, Some(7)),
    (12, 0, 2, Some(2)),
    (12, 0, 3, Some(6)),
    (12, 1, 5, Some(6)),
    (12, 0, 5, Some(8)),
    (12, 4, 5, Some(9)),
    (20, 0, 2, Some(2)),
    (20, 2, 3, Some(10)),
    (20, 0, 5, Some(8)),
    (20, 1, 5, Some(13)),
    (24, 0, 2, Some(2)),
    (24, 0, 3, Some(9)),
    (24, 1, 5, Some(15)),
    (28, 0, 2, Some(2)),
    (28, 2, 3, Some(6)),
    (28, 0, 3, Some(12)),
    (28, 1, 5, Some(12)),
    (28, 0, 5, Some(15)),
    (32, 0, 2, Some(2)),
    (32, 2, 3, Some(14)),
    (32, 2, 5, Some(10)),
    (32, 0, 5, Some(18)),
    (48, 0, 2, Some(2)),
    (48, 0, 3, Some(15)),
    (48, 0, 5, None),
];

/// `(t, q, d, dual d)`; the dual always has dimension 36.
const TABLE1: [(usize, u32, usize, usize); 15] = [
    (6, 3, 20, 2),
    (10, 5, 22, 3),
    (14, 3, 14, 5),
    (14, 5, 18, 6),
    (18, 3, 9, 6),
    (18, 5, 18, 6),
    (26, 3, 6, 6),
    (30, 3, 5, 6),
    (8, 3, 20, 3),
    (12, 2, 8, 2),
    (12, 5, 18, 4),
    (20, 2, 6, 2),
    (20, 3, 8, 6),
    (20, 5, 16, 7),
    (24, 2, 4, 2),
];

/// `(matrix, group, n, k, d, q)`.
type OrbitRow = (&'static str, Option<&'static str>, usize, usize, usize, u32);

const TABLE3: [OrbitRow; 21] = [
    ("h36.mat", None, 72, 36, 2, 2),
    ("h36.mat", None, 72, 36, 6, 3),
    ("h36.mat", None, 72, 36, 12, 5),
    ("h36.mat", None, 72, 36, 12, 7),
    ("h36.mat", None, 72, 36, 6, 9),
    ("h36.mat", None, 72, 36, 12, 11),
    ("h36.mat", None, 72, 36, 12, 25),
    ("h36.mat", Some("h36_z3.grp"), 24, 12, 2, 2),
    ("h36.mat", Some("h36_z3.grp"), 24, 12, 3, 3),
    ("h36.mat", Some("h36_z3.grp"), 24, 12, 8, 5),
    ("h36.mat", Some("h36_z3.grp"), 24, 12, 8, 7),
    ("h36.mat", Some("h36_z3.grp"), 24, 12, 3, 9),
    ("h36.mat", Some("h36_z3.grp"), 24, 12, 8, 11),
    ("h36.mat", Some("h36_z3.grp"), 24, 12, 8, 25),
    ("h100.mat", Some("h100_z5.grp"), 40, 20, 2, 2),
    ("h100.mat", Some("h100_z5.grp"), 40, 20, 4, 3),
    ("h100.mat", Some("h100_z5.grp"), 40, 20, 2, 5),
    ("h100.mat", Some("h100_z5.grp"), 40, 20, 4, 7),
    ("h100.mat", Some("h100_z5.grp"), 40, 20, 4, 9),
    ("h100.mat", Some("h100_z5.grp"), 40, 20, 4, 11),
    ("h100.mat", Some("h100_z5.grp"), 40, 20, 2, 25),
];

const TABLE4: [OrbitRow; 36] = [
    ("w72_36.mat", None, 144, 72, 12, 5),
    ("w72_36.mat", None, 144, 72, 12, 7),
    ("w72_36.mat", None, 144, 72, 12, 11),
    ("w72_36.mat", None, 144, 72, 12, 25),
    ("w72_36.mat", Some("w72_36_z2.grp"), 72, 36, 6, 5),
    ("w72_36.mat", Some("w72_36_z2.grp"), 72, 36, 6, 7),
    ("w72_36.mat", Some("w72_36_z2.grp"), 72, 36, 6, 11),
    ("w72_36.mat", Some("w72_36_z2.grp"), 72, 36, 6, 25),
    ("w72_36.mat", Some("w72_36_z3.grp"), 48, 24, 4, 5),
    ("w72_36.mat", Some("w72_36_z3.grp"), 48, 24, 4, 7),
    ("w72_36.mat", Some("w72_36_z3.grp"), 48, 24, 4, 11),
    ("w72_36.mat", Some("w72_36_z3.grp"), 48, 24, 4, 25),
    ("w72_36.mat", Some("w72_36_z4.grp"), 36, 18, 6, 5),
    ("w72_36.mat", Some("w72_36_z4.grp"), 36, 18, 6, 7),
    ("w72_36.mat", Some("w72_36_z4.grp"), 36, 18, 6, 11),
    ("w72_36.mat", Some("w72_36_z4.grp"), 36, 18, 6, 25),
    ("w42_26.mat", Some("w42_26_z3.grp"), 28, 14, 4, 2),
    ("w42_26.mat", Some("w42_26_z3.grp"), 28, 14, 8, 5),
    ("w42_26.mat", Some("w42_26_z3.grp"), 28, 14, 8, 7),
    ("w42_26.mat", Some("w42_26_z3.grp"), 28, 14, 10, 11),
    ("w42_26.mat", Some("w42_26_z3.grp"), 28, 14, 8, 25),
    ("w56_29.mat", Some("w56_29_z4.grp"), 28, 14, 9, 7),
    ("w56_29.mat", Some("w56_29_z4.grp"), 28, 14, 10, 11),
    ("w50_29.mat", Some("w50_29_z5.grp"), 20, 10, 6, 7),
    ("w50_29.mat", Some("w50_29_z5.grp"), 20, 10, 6, 11),
    ("w56_29.mat", Some("w56_29_z7.grp"), 16, 8, 6, 7),
    ("w56_29.mat", Some("w56_29_z7.grp"), 16, 8, 6, 11),
    ("w72_36.mat", Some("w72_36_z9.grp"), 16, 8, 4, 5),
    ("w72_36.mat", Some("w72_36_z9.grp"), 16, 8, 4, 7),
    ("w72_36.mat", Some("w72_36_z9.grp"), 16, 8, 4, 11),
    ("w72_36.mat", Some("w72_36_z9.grp"), 16, 8, 4, 25),
    ("w42_26.mat", Some("w42_26_z7.grp"), 12, 6, 2, 2),
    ("w42_26.mat", Some("w42_26_z7.grp"), 12, 6, 4, 5),
    ("w42_26.mat", Some("w42_26_z7.grp"), 12, 6, 6, 7),
    ("w42_26.mat", Some("w42_26_z7.grp"), 12, 6, 6, 11),
    ("w42_26.mat", Some("w42_26_z7.grp"), 12, 6, 4, 25),
];

const TABLE5: [(&str, usize, usize); 3] = [("w6_6_f4.mat", 6, 4), ("w8_8_f4.mat", 8, 4), ("w12_12_f4.mat", 12, 4)];

/// Row recipes of a table, in table order.
pub fn table_spec(table: TableId) -> Vec<RowSpec> {
    let row = |index, recipe, expected, expected_dual| RowSpec {
        table,
        index,
        recipe,
        expected,
        expected_dual,
    };
    let orbit_rows = |rows: &[OrbitRow]| -> Vec<RowSpec> {
        rows.iter()
            .enumerate()
            .map(|(i, &(m, g, n, k, d, q))| {
                let recipe = Recipe::Orbit {
                    matrix: m.to_string(),
                    group: g.map(str::to_string),
                };
                row(i + 1, recipe, CodeParams::new(n, k, d, q), None)
            })
            .collect()
    };
    match table.get() {
        1 => TABLE1
            .iter()
            .enumerate()
            .map(|(i, &(t, q, d, dd))| {
                let recipe = Recipe::PaleyDesign {
                    t,
                    pi: t as u32 - 1,
                    conference: t % 4 == 2,
                };
                row(i + 1, recipe, CodeParams::new(t + 36, t, d, q), Some(CodeParams::new(t + 36, 36, dd, q)))
            })
            .collect(),
        2 => TABLE2
            .iter()
            .enumerate()
            .map(|(i, &(n, alpha, q, d))| {
                let recipe = Recipe::SkewHadamard {
                    pi: n as u32 - 1,
                    alpha,
                };
                row(i + 1, recipe, CodeParams { n: 2 * n, k: n, d, q }, None)
            })
            .collect(),
        3 => orbit_rows(&TABLE3),
        4 => orbit_rows(&TABLE4),
        _ => TABLE5
            .iter()
            .enumerate()
            .map(|(i, &(file, n, d))| {
                let p = CodeParams::new(2 * n, n, d, 4);
                row(i + 1, Recipe::Hermitian { matrix: file.to_string() }, p, Some(p))
            })
            .collect(),
    }
}

fn int_matrix(path: &Path) -> Result<crate::matq::IntMatrix> {
    match read_matrix(path)? {
        Matrix::Int(m) => Ok(m),
        Matrix::Fq(_) => Err(Error::Validation(format!("{} must be an integer matrix", path.display()))),
    }
}

fn fq_matrix(path: &Path) -> Result<FqMatrix> {
    match read_matrix(path)? {
        Matrix::Fq(m) => Ok(m),
        Matrix::Int(_) => Err(Error::Validation(format!("{} must be a matrix over a finite field", path.display()))),
    }
}

/// Builds the generator of a row, reading any files from `dir`.
pub fn build_row(spec: &RowSpec, dir: &Path) -> Result<BuildResult> {
    let q = spec.q();
    match &spec.recipe {
        Recipe::SkewHadamard { pi, alpha } => {
            build_skew_hadamard(&paley_type_one(*pi)?, &DesignInput::Identity, *alpha, q)
        }
        Recipe::PaleyDesign { t, pi, conference } => {
            let w = if *conference {
                paley_conference(*pi)?
            } else {
                paley_type_one(*pi)?
            };
            let design = infer_design(&int_matrix(&dir.join(TABLE1_DESIGN_FILE))?)?.row_subset(*t)?;
            build_plain(&w, &DesignInput::Design(design), q)
        }
        Recipe::Orbit { matrix, group } => {
            let w = validate_weighing(&int_matrix(&dir.join(matrix))?, None)?;
            let r = match group {
                Some(g) => {
                    let gens = read_group(&dir.join(g))?;
                    let s = orbit_structure(w.matrix(), &gens)?;
                    if !s.has_equal_orbit_lengths() {
                        return Err(Error::Validation(format!("{g} does not act with orbits of equal length")));
                    }
                    s.row_matrix().clone()
                }
                None => w.into_matrix(),
            };
            build_orbit(&r, &DesignInput::Identity, q)
        }
        Recipe::Hermitian { matrix } => {
            let w = fq_matrix(&dir.join(matrix))?;
            if w.field().order() != q {
                return Err(Error::Validation(format!("{matrix} is not over GF({q})")));
            }
            build_hermitian(&w, &DesignInput::Identity)
        }
    }
}

fn measure(code: &LinearCode, hermitian: bool, policy: &EnumerationPolicy) -> Result<Measured> {
    Ok(Measured {
        n: code.length(),
        k: code.dimension(),
        q: code.field().order(),
        distance: code.min_distance(policy, DistanceAlgorithm::Auto)?,
        lcd: code.hull_dimension(hermitian)? == 0,
    })
}

fn compare(what: &str, got: &Measured, want: &CodeParams) -> RowStatus {
    if (got.n, got.k, got.q) != (want.n, want.k, want.q) {
        return RowStatus::Fail(format!("{what} is [{},{}]_{}", got.n, got.k, got.q));
    }
    let Some(d) = want.d else {
        return RowStatus::Pass;
    };
    match got.distance.exact() {
        Some(e) if e == d => RowStatus::Pass,
        Some(e) => RowStatus::Fail(format!("{what} has d={e}")),
        None if got.distance.upper < d => {
            RowStatus::Fail(format!("{what} has a codeword of weight {}", got.distance.upper))
        }
        None => RowStatus::Partial(format!("{what} d in {}..={}", got.distance.lower, got.distance.upper)),
    }
}

/// Rebuilds one row. Missing input files give SKIPPED.
pub fn reproduce_row(spec: &RowSpec, data_dir: Option<&Path>, opts: &HarnessOptions) -> RowReport {
    let mut report = RowReport {
        spec: spec.clone(),
        status: RowStatus::Pass,
        code: None,
        dual: None,
        fsd: None,
        verdict: None,
    };
    let missing: Vec<&str> = match data_dir {
        None => spec.recipe.required_files(),
        Some(dir) => spec
            .recipe
            .required_files()
            .into_iter()
            .filter(|f| !dir.join(f).is_file())
            .collect(),
    };
    if !missing.is_empty() {
        report.status = RowStatus::Skipped(format!("missing {}", missing.join(", ")));
        return report;
    }
    let dir = data_dir.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
    if let Err(e) = fill_row(&mut report, &dir, opts) {
        report.status = RowStatus::Fail(e.to_string());
    }
    report
}

fn fill_row(report: &mut RowReport, dir: &Path, opts: &HarnessOptions) -> Result<()> {
    let spec = report.spec.clone();
    let hermitian = spec.hermitian();
    let built = build_row(&spec, dir)?;
    report.verdict = Some(built.predicted.to_string());
    let code = LinearCode::from_generator(&built.generator)?;
    let measured = measure(&code, hermitian, &opts.policy)?;
    let mut status = compare("code", &measured, &spec.expected);
    if !measured.lcd {
        status = status.merge(RowStatus::Fail("code is not LCD".into()));
    } else if built.predicted != crate::build::Predicted::Lcd {
        status = status.merge(RowStatus::Fail(format!("build predicted {}", built.predicted)));
    }
    report.code = Some(measured);

    if let Some(want) = &spec.expected_dual {
        let dual = if hermitian { code.hermitian_dual()? } else { code.dual() };
        let measured = measure(&dual, hermitian, &opts.policy)?;
        status = status.merge(compare("dual", &measured, want));
        report.dual = Some(measured);
    }

    if 2 * code.dimension() == code.length() && !hermitian {
        let fsd = match code.formally_self_dual(&built.generator, FsdMode::Exact, opts.fsd_cap) {
            Ok(s) => s,
            Err(Error::CapExceeded { .. }) => code.formally_self_dual(&built.generator, FsdMode::Structural, 0)?,
            Err(e) => return Err(e),
        };
        if fsd.holds() == Some(false) {
            status = status.merge(RowStatus::Fail("not formally self-dual".into()));
        }
        report.fsd = Some(fsd);
    }
    report.status = status;
    Ok(())
}

/// Rebuilds every row of a table in row order.
pub fn reproduce(table: TableId, data_dir: Option<&Path>, opts: &HarnessOptions) -> Vec<RowReport> {
    table_spec(table).iter().map(|row| reproduce_row(row, data_dir, opts)).collect()
}
