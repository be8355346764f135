//! Per-k orchestration: admissibility, the parity filters, conductor
//! screening, dispatch of the six Mordell triples, and a brute-force oracle.

use std::fmt;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::antipell::{eliminate_triple, EliminationVerdict, Outcome};
use crate::arith::{self, integer_sqrt, is_odd_prime_power};
use crate::error::{Error, Result};
use crate::frey::{self, conductor_rn, CurveFixture, FixtureOutcome, CREMONA_CONDUCTOR_LIMIT};
use crate::mordell::{self, build_curve, point_to_solution, verify_point, SPoint};
use crate::qform::selected_convention;
use crate::serde_big;

pub const REPORT_VERSION: &str = "1";
pub const DEFAULT_WINDOW: SearchWindow = SearchWindow { y_max: 11, z_max: 11 };
pub const DEFAULT_MAX_A: u32 = 2;
pub const DEFAULT_MAX_NUM: u64 = 10_000_000;

/// The six `(i, j)` pairs, in report order.
pub const TRIPLE_PAIRS: [(u32, u32); 6] = [(3, 0), (3, 1), (3, 2), (5, 0), (5, 1), (5, 2)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchWindow {
    pub y_max: u32,
    pub z_max: u32,
}

impl SearchWindow {
    pub fn new(y_max: u32, z_max: u32) -> Result<Self> {
        if y_max < 2 || z_max < 2 {
            return Err(Error::InvalidArgument(format!(
                "window ({y_max}, {z_max}) must have both bounds >= 2"
            )));
        }
        Ok(SearchWindow { y_max, z_max })
    }
}

/// Every `k` with `lo < k < hi`, `4 | k` and `2k - 1` an odd prime power.
pub fn enumerate_admissible(lo: u64, hi: u64) -> Vec<u64> {
    (lo.saturating_add(1)..hi)
        .filter(|k| k % 4 == 0 && is_admissible(*k))
        .collect()
}

pub fn is_admissible(k: u64) -> bool {
    k % 4 == 0
        && k > 0
        && matches!(is_odd_prime_power(&BigUint::from(2 * k - 1)), Ok(Some(_)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterVerdict {
    Accepted,
    /// `x^2 + 1 = 0 (mod 4)` would follow.
    RejectedEvenY,
    RejectedZNotAboveY,
    RejectedEvenZ,
}

/// Parity and size constraints on a hypothetical non-trivial solution.
pub fn lemma_filter(_k: u64, y: u32, z: u32) -> FilterVerdict {
    if y % 2 == 0 {
        FilterVerdict::RejectedEvenY
    } else if z <= y {
        FilterVerdict::RejectedZNotAboveY
    } else if z % 2 == 0 {
        FilterVerdict::RejectedEvenZ
    } else {
        FilterVerdict::Accepted
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    ExcludedPowerOfTwo,
    ExcludedSquare,
    ConductorScreened,
    /// Screening left a compatible fixture; only the triples decide.
    TripleDispatch,
    /// Conductor beyond the fixture table.
    Uncovered,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::ExcludedPowerOfTwo => "excluded_power_of_two",
            Status::ExcludedSquare => "excluded_square",
            Status::ConductorScreened => "conductor_screened",
            Status::TripleDispatch => "triple_dispatch",
            Status::Uncovered => "uncovered",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub k: u64,
    pub status: Status,
    pub conductor: Option<u64>,
}

pub fn classify_k(k: u64) -> Result<Classification> {
    if !is_admissible(k) {
        return Err(Error::InvalidArgument(format!("k = {k} is not admissible")));
    }
    let (status, conductor) = if k.is_power_of_two() {
        (Status::ExcludedPowerOfTwo, None)
    } else if arith::is_square(&BigUint::from(k)) {
        (Status::ExcludedSquare, None)
    } else {
        let n = conductor_rn(k)?;
        let status = if n > CREMONA_CONDUCTOR_LIMIT {
            Status::Uncovered
        } else {
            Status::ConductorScreened
        };
        (status, Some(n))
    };
    Ok(Classification { k, status, conductor })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma34Step {
    pub y: u32,
    /// `((2k-1)^y + 1) / 2k`.
    #[serde(with = "serde_big::uint")]
    pub quotient: BigUint,
    pub odd: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma34Trace {
    pub k: u64,
    pub ell: u64,
    pub steps: Vec<Lemma34Step>,
    /// Every sampled quotient is odd, so `ord2(2 l^z) = 1` and `z = 2`.
    pub z_forced_to_two: bool,
}

/// For `k = l^2`, `2 l^z = (2k-1)^y + 1` with the quotient by `2k` odd
/// forces `z = 2`; checked for the odd `y` in `ys`.
pub fn lemma34_audit(k: u64, ys: &[u32]) -> Result<Lemma34Trace> {
    let (ell, exact) = integer_sqrt(&BigUint::from(k));
    if !exact {
        return Err(Error::InvalidArgument(format!("k = {k} is not a square")));
    }
    let ell = ell.to_u64().expect("at most k");
    if ell % 2 != 0 {
        return Err(Error::InvalidArgument(format!("sqrt(k) = {ell} is odd")));
    }
    if is_odd_prime_power(&BigUint::from(2 * k - 1))?.is_none() {
        return Err(Error::InvalidArgument(format!("2k - 1 = {} is not an odd prime power", 2 * k - 1)));
    }
    let d = BigUint::from(2 * k - 1);
    let two_k = BigUint::from(2 * k);
    let mut steps = Vec::with_capacity(ys.len());
    for &y in ys {
        if y % 2 == 0 {
            return Err(Error::InvalidArgument(format!("y = {y} must be odd")));
        }
        let num = Pow::pow(&d, y) + 1u32;
        let quotient = &num / &two_k;
        debug_assert!((&quotient * &two_k) == num);
        let odd = quotient.bit(0);
        steps.push(Lemma34Step { y, quotient, odd });
    }
    let z_forced_to_two = steps.iter().all(|s| s.odd);
    Ok(Lemma34Trace { k, ell, steps, z_forced_to_two })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Solution {
    #[serde(with = "serde_big::uint")]
    pub x: BigUint,
    pub y: u32,
    pub z: u32,
}

impl Solution {
    pub fn trivial(k: u64) -> Self {
        Solution { x: BigUint::from(k - 1), y: 1, z: 2 }
    }

    pub fn holds(&self, k: u64) -> bool {
        &self.x * &self.x + Pow::pow(BigUint::from(2 * k - 1), self.y) == Pow::pow(BigUint::from(k), self.z)
    }
}

/// All `(x, y, z)` with `x >= 1`, `y <= y_max`, `z <= z_max` solving
/// `x^2 + (2k-1)^y = k^z`.
pub fn brute_force(k: u64, window: SearchWindow) -> Vec<Solution> {
    let d = BigUint::from(2 * k - 1);
    let kb = BigUint::from(k);
    let mut out = Vec::new();
    let mut dy = BigUint::one();
    for y in 1..=window.y_max {
        dy *= &d;
        let mut kz = BigUint::one();
        for z in 1..=window.z_max {
            kz *= &kb;
            if kz <= dy {
                continue;
            }
            let (x, exact) = integer_sqrt(&(&kz - &dy));
            if exact {
                out.push(Solution { x, y, z });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportedPoint {
    pub i: u32,
    pub j: u32,
    pub k: u64,
    pub u: String,
    pub v: String,
    /// What the point was reported as, e.g. `"s_integral"` or `"generator"`.
    pub role: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnresolvedTriple {
    pub i: u32,
    pub j: u32,
    pub k: u64,
    pub d: u64,
    pub cofactor: u64,
}

/// The exceptional triples and the data attached to them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalTable {
    pub exceptional: Vec<(u32, u32, u64)>,
    pub rank_zero: Vec<(u32, u32, u64)>,
    pub reported_points: Vec<ReportedPoint>,
    pub unresolved: Vec<UnresolvedTriple>,
}

const EXCEPTIONAL: [(u32, u32, u64); 67] = [
    (5, 2, 96), (5, 1, 120), (5, 2, 156), (5, 2, 180), (5, 2, 192), (5, 2, 220), (3, 1, 232),
    (5, 0, 232), (5, 2, 232), (5, 0, 240), (5, 2, 240), (5, 2, 244), (5, 0, 304), (5, 1, 304),
    (5, 2, 304), (3, 2, 316), (5, 0, 316), (5, 2, 316), (5, 2, 324), (5, 0, 360), (5, 1, 364),
    (5, 2, 364), (3, 2, 372), (5, 1, 372), (5, 2, 372), (5, 2, 376), (3, 1, 412), (3, 2, 412),
    (5, 0, 412), (5, 0, 420), (5, 0, 432), (5, 1, 432), (3, 2, 444), (5, 1, 444), (5, 2, 444),
    (5, 0, 456), (5, 1, 456), (5, 2, 460), (5, 1, 492), (5, 1, 516), (5, 2, 516), (3, 1, 520),
    (5, 0, 520), (5, 2, 520), (5, 2, 532), (5, 1, 544), (5, 2, 552), (3, 2, 612), (5, 0, 612),
    (5, 1, 612), (5, 2, 612), (5, 1, 616), (5, 0, 640), (5, 2, 640), (3, 2, 652), (5, 2, 652),
    (5, 2, 660), (3, 2, 664), (5, 0, 664), (5, 2, 664), (5, 1, 684), (5, 0, 700), (5, 1, 700),
    (5, 2, 700), (5, 0, 712), (5, 0, 720), (5, 1, 720),
];

const RANK_ZERO: [(u32, u32, u64); 8] = [
    (5, 1, 364), (5, 1, 456), (5, 1, 492), (5, 2, 552),
    (5, 1, 616), (3, 2, 652), (5, 1, 684), (5, 1, 720),
];

const UNRESOLVED_K: [u64; 7] = [316, 372, 376, 516, 652, 660, 664];

impl ExceptionalTable {
    pub fn builtin() -> Self {
        let point = |u: &str, v: &str, role: &str| ReportedPoint {
            i: 3,
            j: 2,
            k: 664,
            u: u.into(),
            v: v.into(),
            role: role.into(),
        };
        ExceptionalTable {
            exceptional: EXCEPTIONAL.to_vec(),
            rank_zero: RANK_ZERO.to_vec(),
            reported_points: vec![
                point("6435758912", "516297057335360", "s_integral"),
                point("402234932", "8067141520865", "generator"),
            ],
            unresolved: UNRESOLVED_K
                .iter()
                .map(|&k| {
                    let (d, cofactor) = if k == 316 { (79, 2) } else { (k, 1) };
                    UnresolvedTriple { i: 5, j: 2, k, d, cofactor }
                })
                .collect(),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
    }

    fn category(&self, i: u32, j: u32, k: u64) -> TripleCategory {
        if self.unresolved.iter().any(|t| (t.i, t.j, t.k) == (i, j, k)) {
            TripleCategory::Unresolved
        } else if self.rank_zero.contains(&(i, j, k)) {
            TripleCategory::RankZero
        } else if self.exceptional.contains(&(i, j, k)) {
            TripleCategory::Exceptional
        } else {
            TripleCategory::NonExceptional
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleCategory {
    NonExceptional,
    Exceptional,
    RankZero,
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleVerdict {
    /// No point in the search box inverts to a solution.
    BoundedNoSolution,
    NoLeastSolution,
    CongruenceContradiction,
    Unresolved,
    /// A point in the box inverts to a solution.
    SolutionFound,
    /// Points found on a curve reported to have none.
    Inconsistent,
    Error,
}

impl From<Outcome> for TripleVerdict {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::NoLeastSolution => TripleVerdict::NoLeastSolution,
            Outcome::CongruenceContradiction => TripleVerdict::CongruenceContradiction,
            Outcome::Unresolved => TripleVerdict::Unresolved,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointCheck {
    pub role: String,
    #[serde(with = "serde_big::rational")]
    pub u: BigRational,
    #[serde(with = "serde_big::rational")]
    pub v: BigRational,
    pub verified: bool,
    /// `V^2 - U^3 - coeff`; zero when on the curve.
    #[serde(with = "serde_big::rational")]
    pub residual: BigRational,
    pub solution: Option<Solution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedSummary {
    pub max_a: u32,
    pub max_num: u64,
    pub points: Vec<SPoint>,
    pub solutions: Vec<Solution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    pub i: u32,
    pub j: u32,
    pub verdict: TripleVerdict,
    pub category: TripleCategory,
    pub bounded: Option<BoundedSummary>,
    pub reported_points: Vec<PointCheck>,
    pub elimination: Option<EliminationVerdict>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteForce {
    pub y_max: u32,
    pub z_max: u32,
    pub solutions: Vec<Solution>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoteFlag {
    Convention,
    BoundedSearch,
    UncoveredExponent,
    Fixture,
    Lemma34,
    Erratum,
    Unresolved,
    Inconsistent,
    Error,
}

impl NoteFlag {
    /// Whether the note keeps the audit from being fully consistent.
    pub fn is_blocking(self) -> bool {
        matches!(self, NoteFlag::Erratum | NoteFlag::Unresolved | NoteFlag::Inconsistent | NoteFlag::Error)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Note {
    pub flag: NoteFlag,
    pub message: String,
}

impl Note {
    fn new(flag: NoteFlag, message: impl Into<String>) -> Self {
        Note { flag, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub k: u64,
    pub d: u64,
    pub status: Status,
    pub conductor: Option<u64>,
    pub triples: Vec<TripleReport>,
    pub brute_force: BruteForce,
    pub notes: Vec<Note>,
}

impl CaseReport {
    pub fn is_consistent(&self) -> bool {
        !self.notes.iter().any(|n| n.flag.is_blocking())
    }

    pub fn triple(&self, i: u32, j: u32) -> Option<&TripleReport> {
        self.triples.iter().find(|t| (t.i, t.j) == (i, j))
    }
}

#[derive(Debug, Clone)]
pub struct AuditConfig {
    pub window: SearchWindow,
    pub fixtures: Vec<CurveFixture>,
    pub table: ExceptionalTable,
    pub max_a: u32,
    pub max_num: u64,
}

impl AuditConfig {
    pub fn new(window: SearchWindow, fixtures: Vec<CurveFixture>) -> Self {
        AuditConfig {
            window,
            fixtures,
            table: ExceptionalTable::builtin(),
            max_a: DEFAULT_MAX_A,
            max_num: DEFAULT_MAX_NUM,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub lo: u64,
    pub hi: u64,
    pub y_max: u32,
    pub z_max: u32,
    pub max_a: u32,
    pub max_num: u64,
    pub fixtures: Vec<String>,
    pub convention: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub version: String,
    pub parameters: Parameters,
    pub reports: Vec<CaseReport>,
}

impl AuditReport {
    pub fn is_consistent(&self) -> bool {
        self.reports.iter().all(CaseReport::is_consistent)
    }
}

pub fn run_audit(lo: u64, hi: u64, window: SearchWindow, fixtures: &[CurveFixture]) -> Result<Vec<CaseReport>> {
    Ok(run_audit_with(lo, hi, &AuditConfig::new(window, fixtures.to_vec()))?.reports)
}

pub fn run_audit_with(lo: u64, hi: u64, config: &AuditConfig) -> Result<AuditReport> {
    if lo >= hi {
        return Err(Error::InvalidArgument(format!("range ({lo}, {hi}) is empty")));
    }
    // Resolve the convention once before fanning out.
    let convention = selected_convention();
    let reports: Vec<CaseReport> = enumerate_admissible(lo, hi)
        .into_par_iter()
        .map(|k| audit_k(k, config))
        .collect();
    Ok(AuditReport {
        version: REPORT_VERSION.into(),
        parameters: Parameters {
            lo,
            hi,
            y_max: config.window.y_max,
            z_max: config.window.z_max,
            max_a: config.max_a,
            max_num: config.max_num,
            fixtures: config.fixtures.iter().map(|f| f.label.clone()).collect(),
            convention: convention.to_string(),
        },
        reports,
    })
}

/// Report for a single admissible `k`.
pub fn audit_k(k: u64, config: &AuditConfig) -> CaseReport {
    let d = 2 * k - 1;
    let mut notes = Vec::new();
    let solutions = brute_force(k, config.window);
    for s in &solutions {
        if *s != Solution::trivial(k) {
            notes.push(Note::new(
                NoteFlag::Inconsistent,
                format!("brute force found non-trivial solution ({}, {}, {})", s.x, s.y, s.z),
            ));
        }
    }
    let brute = BruteForce {
        y_max: config.window.y_max,
        z_max: config.window.z_max,
        solutions,
    };

    let class = match classify_k(k) {
        Ok(c) => c,
        Err(e) => {
            notes.push(Note::new(NoteFlag::Error, e.to_string()));
            return CaseReport { k, d, status: Status::Uncovered, conductor: None, triples: Vec::new(), brute_force: brute, notes };
        }
    };
    let mut status = class.status;

    match status {
        Status::ExcludedPowerOfTwo => {}
        Status::ExcludedSquare => {
            let ys: Vec<u32> = (1..=config.window.y_max).step_by(2).collect();
            match lemma34_audit(k, &ys) {
                Ok(t) if t.z_forced_to_two => notes.push(Note::new(
                    NoteFlag::Lemma34,
                    format!("((2k-1)^y + 1) / 2k odd for y in {ys:?}; z = 2 forced"),
                )),
                Ok(t) => notes.push(Note::new(
                    NoteFlag::Inconsistent,
                    format!("even quotient for y in {:?}", t.steps.iter().filter(|s| !s.odd).map(|s| s.y).collect::<Vec<_>>()),
                )),
                Err(e) => notes.push(Note::new(NoteFlag::Error, e.to_string())),
            }
        }
        Status::ConductorScreened | Status::TripleDispatch | Status::Uncovered => {
            let n = class.conductor.expect("set for screened k");
            if status == Status::Uncovered {
                notes.push(Note::new(
                    NoteFlag::Unresolved,
                    format!("conductor {n} exceeds the fixture table limit {CREMONA_CONDUCTOR_LIMIT}"),
                ));
            }
            for outcome in frey::match_fixture(n, &config.fixtures, k) {
                match outcome {
                    FixtureOutcome::Incompatible { label, reason } => {
                        notes.push(Note::new(NoteFlag::Fixture, format!("{label} incompatible: {reason}")));
                    }
                    FixtureOutcome::Compatible { label, x, z } => {
                        status = Status::TripleDispatch;
                        notes.push(Note::new(
                            NoteFlag::Unresolved,
                            format!("{label} compatible with x = {x}, z = {z}"),
                        ));
                    }
                }
            }
            let uncovered: Vec<u32> = (1..=config.window.y_max).filter(|&y| is_uncovered_exponent(y)).collect();
            notes.push(Note::new(
                NoteFlag::UncoveredExponent,
                format!(
                    "y = 1 mod 6 with no prime factor >= 7 falls outside both reductions (25 is the first beyond y = 1); \
                     brute force covers y in {uncovered:?} within the window only"
                ),
            ));
        }
    }

    let mut triples = Vec::new();
    if !matches!(status, Status::ExcludedPowerOfTwo | Status::ExcludedSquare) {
        triples = TRIPLE_PAIRS.iter().map(|&(i, j)| audit_triple(i, j, k, config, &mut notes)).collect();
        notes.push(Note::new(
            NoteFlag::BoundedSearch,
            format!(
                "S-integral points searched only for denominators dividing p^{} and numerators up to {}",
                config.max_a, config.max_num
            ),
        ));
        if triples.iter().any(|t| t.elimination.is_some()) {
            notes.push(Note::new(
                NoteFlag::Convention,
                format!("class counts use the {} convention", selected_convention()),
            ));
        }
    }

    CaseReport {
        k,
        d,
        status,
        conductor: class.conductor,
        triples,
        brute_force: brute,
        notes,
    }
}

/// Re-runs the audit of `report.k` and re-checks every recorded witness and
/// brute-force solution.
pub fn reverify(report: &CaseReport, config: &AuditConfig) -> bool {
    report.brute_force.solutions.iter().all(|s| s.holds(report.k))
        && report
            .triples
            .iter()
            .filter_map(|t| t.elimination.as_ref())
            .all(EliminationVerdict::reverify)
        && audit_k(report.k, config) == *report
}

/// Odd, `1 (mod 6)`, and without a prime factor `>= 7`.
pub fn is_uncovered_exponent(y: u32) -> bool {
    if y % 6 != 1 {
        return false;
    }
    let mut m = y;
    while m % 5 == 0 {
        m /= 5;
    }
    // 2 and 3 cannot divide y here.
    m == 1
}

fn audit_triple(i: u32, j: u32, k: u64, config: &AuditConfig, notes: &mut Vec<Note>) -> TripleReport {
    let category = config.table.category(i, j, k);
    let mut report = TripleReport {
        i,
        j,
        verdict: TripleVerdict::BoundedNoSolution,
        category,
        bounded: None,
        reported_points: Vec::new(),
        elimination: None,
        error: None,
    };
    let fail = |mut r: TripleReport, notes: &mut Vec<Note>, e: Error| {
        notes.push(Note::new(NoteFlag::Error, format!("({i}, {j}, {k}): {e}")));
        r.verdict = TripleVerdict::Error;
        r.error = Some(e.to_string());
        r
    };
    let curve = match build_curve(i, j, k) {
        Ok(c) => c,
        Err(e) => return fail(report, notes, e),
    };

    let search = mordell::bounded_s_point_search(&curve, config.max_a, config.max_num);
    let mut found = Vec::new();
    for p in &search.points {
        if let Some((x, y, z)) = point_to_solution(&curve, p) {
            found.push(Solution { x, y, z });
        }
    }
    if !found.is_empty() {
        report.verdict = TripleVerdict::SolutionFound;
        notes.push(Note::new(NoteFlag::Inconsistent, format!("({i}, {j}, {k}) has a solution in the search box")));
    } else if category == TripleCategory::RankZero && !search.points.is_empty() {
        report.verdict = TripleVerdict::Inconsistent;
        notes.push(Note::new(
            NoteFlag::Inconsistent,
            format!("({i}, {j}, {k}) reported rank 0 but {} points were found", search.points.len()),
        ));
    }
    report.bounded = Some(BoundedSummary {
        max_a: config.max_a,
        max_num: config.max_num,
        points: search.points,
        solutions: found,
    });

    for rp in config.table.reported_points.iter().filter(|p| (p.i, p.j, p.k) == (i, j, k)) {
        match check_reported_point(&curve, rp) {
            Ok(check) => {
                if !check.verified {
                    notes.push(Note::new(
                        NoteFlag::Erratum,
                        format!("reported {} ({}, {}) is not on ({i}, {j}, {k}); residual {}", rp.role, rp.u, rp.v, check.residual),
                    ));
                }
                if check.solution.is_some() {
                    report.verdict = TripleVerdict::SolutionFound;
                    notes.push(Note::new(NoteFlag::Inconsistent, format!("reported point ({}, {}) gives a solution", rp.u, rp.v)));
                }
                report.reported_points.push(check);
            }
            Err(e) => return fail(report, notes, e),
        }
    }

    if let Some(t) = config.table.unresolved.iter().find(|t| (t.i, t.j, t.k) == (i, j, k)) {
        match eliminate_triple(i, j, k, t.d, t.cofactor) {
            Ok(v) => {
                if report.verdict == TripleVerdict::BoundedNoSolution {
                    report.verdict = v.outcome.into();
                }
                if v.outcome == Outcome::Unresolved {
                    notes.push(Note::new(
                        NoteFlag::Unresolved,
                        format!(
                            "({i}, {j}, {k}) with D = {}: least solution exists and no prime dividing gcd(v1, k) gives a contradiction",
                            t.d
                        ),
                    ));
                }
                report.elimination = Some(v);
            }
            Err(e) => return fail(report, notes, e),
        }
    }
    report
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("cannot parse rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Parses `NUM` or `NUM/DEN`.
pub fn rational_from_str(s: &str) -> Result<BigRational> {
    parse_rational(s)
}

fn check_reported_point(curve: &mordell::MordellCurve, rp: &ReportedPoint) -> Result<PointCheck> {
    let u = parse_rational(&rp.u)?;
    let v = parse_rational(&rp.v)?;
    let verified = verify_point(curve, &u, &v);
    let residual = curve.residual(&u, &v);
    let solution = if verified {
        point_to_solution(curve, &SPoint::new(u.clone(), v.clone())).map(|(x, y, z)| Solution { x, y, z })
    } else {
        None
    };
    Ok(PointCheck {
        role: rp.role.clone(),
        u,
        v,
        verified,
        residual,
        solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_examples() {
        let ks = enumerate_admissible(30, 724);
        assert!(ks.contains(&36) && ks.contains(&192) && ks.contains(&640));
        assert!(!ks.contains(&32) && !ks.contains(&34));
        assert!(ks.windows(2).all(|w| w[0] < w[1]));
        // 2k - 1 = 343 = 7^3
        assert!(ks.contains(&172));
        assert!(!ks.contains(&724) && ks.contains(&720));
    }

    #[test]
    fn filters() {
        assert_eq!(lemma_filter(40, 2, 5), FilterVerdict::RejectedEvenY);
        assert_eq!(lemma_filter(40, 3, 3), FilterVerdict::RejectedZNotAboveY);
        assert_eq!(lemma_filter(40, 3, 4), FilterVerdict::RejectedEvenZ);
        assert_eq!(lemma_filter(40, 3, 5), FilterVerdict::Accepted);
    }

    #[test]
    fn classification() {
        assert_eq!(classify_k(64).unwrap().status, Status::ExcludedPowerOfTwo);
        assert_eq!(classify_k(36).unwrap().status, Status::ExcludedSquare);
        let c = classify_k(192).unwrap();
        assert_eq!((c.status, c.conductor), (Status::ConductorScreened, Some(2298)));
        assert_eq!(classify_k(724).unwrap().status, Status::Uncovered);
        assert!(classify_k(32).is_err());
    }

    #[test]
    fn excluded_set() {
        let excluded: Vec<u64> = enumerate_admissible(30, 724)
            .into_iter()
            .filter(|&k| classify_k(k).unwrap().status != Status::ConductorScreened)
            .collect();
        assert_eq!(excluded, vec![36, 64, 100, 324, 484, 576]);
    }

    #[test]
    fn lemma34_examples() {
        let t = lemma34_audit(36, &[1, 3]).unwrap();
        assert_eq!(t.ell, 6);
        assert_eq!(t.steps[0].quotient, BigUint::one());
        assert_eq!(t.steps[1].quotient, BigUint::from(4971u32));
        assert!(t.z_forced_to_two);
        assert!(lemma34_audit(100, &[5]).unwrap().z_forced_to_two);
        assert!(lemma34_audit(40, &[1]).is_err());
        assert!(lemma34_audit(36, &[2]).is_err());
    }

    #[test]
    fn brute_force_examples() {
        // 4 + 5 = 9
        let w = SearchWindow::new(5, 5).unwrap();
        assert!(brute_force(3, w).contains(&Solution { x: BigUint::from(2u32), y: 1, z: 2 }));
        assert_eq!(brute_force(40, SearchWindow::new(9, 9).unwrap()), vec![Solution::trivial(40)]);
        assert!(SearchWindow::new(1, 5).is_err());
    }

    #[test]
    fn uncovered_exponents() {
        let ys: Vec<u32> = (1..200).filter(|&y| is_uncovered_exponent(y)).collect();
        assert_eq!(ys, vec![1, 25]);
    }

    #[test]
    fn builtin_table_shape() {
        let t = ExceptionalTable::builtin();
        assert_eq!(t.exceptional.len(), 67);
        assert!(t.rank_zero.iter().all(|r| t.exceptional.contains(r)));
        assert!(t.unresolved.iter().all(|u| t.exceptional.contains(&(u.i, u.j, u.k))));
        assert!(t.unresolved.iter().all(|u| u.cofactor * u.cofactor * u.d == u.k));
        let back: ExceptionalTable = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(rational_from_str("6/4").unwrap(), BigRational::new(BigInt::from(3), BigInt::from(2)));
        assert_eq!(rational_from_str("-7").unwrap(), BigRational::from_integer(BigInt::from(-7)));
        assert!(rational_from_str("1/0").is_err());
        assert!(rational_from_str("x").is_err());
    }

    fn small_config() -> AuditConfig {
        let mut c = AuditConfig::new(DEFAULT_WINDOW, frey::embedded_fixtures());
        c.max_a = 1;
        c.max_num = 100_000;
        c
    }

    #[test]
    fn report_for_316() {
        let r = audit_k(316, &small_config());
        let t = r.triple(5, 2).unwrap();
        assert_eq!(t.verdict, TripleVerdict::NoLeastSolution);
        assert_eq!(t.category, TripleCategory::Unresolved);
        assert_eq!(r.triple(3, 2).unwrap().category, TripleCategory::Exceptional);
        assert_eq!(r.brute_force.solutions, vec![Solution::trivial(316)]);
        assert!(r.is_consistent());
        assert!(reverify(&r, &small_config()));
    }

    #[test]
    fn report_for_excluded_and_screened() {
        let r = audit_k(64, &small_config());
        assert_eq!(r.status, Status::ExcludedPowerOfTwo);
        assert!(r.triples.is_empty());

        let r = audit_k(192, &small_config());
        assert_eq!(r.conductor, Some(2298));
        assert!(r
            .notes
            .iter()
            .any(|n| n.flag == NoteFlag::Fixture && n.message.starts_with("2298h1 incompatible")));
    }

    #[test]
    fn report_for_664_records_erratum() {
        let r = audit_k(664, &small_config());
        let t = r.triple(3, 2).unwrap();
        assert_eq!(t.reported_points.len(), 2);
        assert!(t.reported_points[0].verified && t.reported_points[0].solution.is_none());
        assert!(!t.reported_points[1].verified);
        assert!(r.notes.iter().any(|n| n.flag == NoteFlag::Erratum));
        assert_eq!(r.triple(5, 2).unwrap().verdict, TripleVerdict::Unresolved);
        assert!(reverify(&r, &small_config()));
    }
}
