use std::path::{Path, PathBuf};

use ordlab::ball::{Ball, BallDump};
use ordlab::certificate::{check_with_backend, CertificateError, CheckFailure, Rejection};
use ordlab::cones::ConeOracle;
use ordlab::solver::{find, verify, Violation};
use ordlab::space::{LevelDiagram, SpaceError};
use ordlab::{
    Mode, Presentation, RefutationCertificate, SearchOutcome, SignAssignment, Verdict, WordBackend,
};
use serde::Serialize;

use crate::args::{Common, Constraint, ModeArg, RadiusRange};
use crate::error::CliError;

/// A finished command: the report, files to write, and the exit code.
pub struct Outcome {
    pub report: serde_json::Value,
    pub files: Vec<(PathBuf, String)>,
    pub code: i32,
}

impl Outcome {
    fn new(report: impl Serialize, code: i32) -> Outcome {
        Outcome {
            report: serde_json::to_value(report).expect("reports serialize"),
            files: Vec::new(),
            code,
        }
    }
}

fn mode_name(m: ModeArg) -> &'static str {
    match m {
        ModeArg::Lo => "lo",
        ModeArg::Bo => "bo",
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn load_presentation(common: &Common) -> Result<Presentation, CliError> {
    let path = common
        .presentation
        .as_ref()
        .ok_or_else(|| CliError::Usage("--presentation is required".to_string()))?;
    Presentation::parse(&read(path)?).map_err(|source| CliError::Presentation {
        path: path.display().to_string(),
        source,
    })
}

fn radius(common: &Common) -> Result<RadiusRange, CliError> {
    common
        .radius
        .ok_or_else(|| CliError::Usage("-k is required".to_string()))
}

fn load_backend(common: &Common) -> Result<WordBackend, CliError> {
    let p = load_presentation(common)?;
    Ok(WordBackend::build(&p, common.budgets())?)
}

fn build_ball(backend: &WordBackend, k: usize, common: &Common) -> Result<Ball, CliError> {
    Ok(Ball::build(backend, k, common.ball_cap)?)
}

pub fn ball(common: &Common) -> Result<Outcome, CliError> {
    let range = radius(common)?;
    let backend = load_backend(common)?;
    let ball = build_ball(&backend, range.end, common)?;
    let dump: BallDump = ball.dump(&backend);
    Ok(Outcome::new(dump, 0))
}

#[derive(Serialize)]
struct RadiusResult {
    k: usize,
    ball_size: usize,
    involutions: usize,
    result: &'static str,
    nodes: u64,
    propagations: u64,
}

#[derive(Serialize)]
struct CertificateSummary {
    path: String,
    kind: &'static str,
    leaves: usize,
    depth: usize,
}

#[derive(Serialize)]
struct TestReport {
    mode: &'static str,
    backend: &'static str,
    radii: Vec<RadiusResult>,
    verdict: &'static str,
    first_unsat: Option<usize>,
    certificate: Option<CertificateSummary>,
}

pub fn test(common: &Common, mode: ModeArg) -> Result<Outcome, CliError> {
    let range = radius(common)?;
    let backend = load_backend(common)?;
    let mut report = TestReport {
        mode: mode_name(mode),
        backend: backend.kind(),
        radii: Vec::new(),
        verdict: "sat",
        first_unsat: None,
        certificate: None,
    };
    let mut files = Vec::new();
    for k in range.iter() {
        let ball = build_ball(&backend, k, common)?;
        let result = find(&backend, &ball, mode.into(), common.node_cap);
        let mut entry = RadiusResult {
            k,
            ball_size: ball.len(),
            involutions: ball.involutions().len(),
            result: "sat",
            nodes: result.stats.nodes,
            propagations: result.stats.propagations,
        };
        match result.outcome {
            SearchOutcome::Sat(_) => report.radii.push(entry),
            SearchOutcome::Undecided { node_cap } => {
                return Err(CliError::NodeCap {
                    radius: k,
                    node_cap,
                })
            }
            SearchOutcome::Unsat(cert) => {
                entry.result = "unsat";
                report.radii.push(entry);
                report.verdict = "unsat";
                report.first_unsat = Some(k);
                report.certificate = Some(CertificateSummary {
                    path: common.cert.display().to_string(),
                    kind: cert.kind.as_str(),
                    leaves: cert.tree.leaf_count(),
                    depth: cert.tree.depth(),
                });
                files.push((common.cert.clone(), cert.to_json()));
                break;
            }
        }
    }
    let code = if report.first_unsat.is_some() { 1 } else { 0 };
    let mut outcome = Outcome::new(report, code);
    outcome.files = files;
    Ok(outcome)
}

#[derive(Serialize)]
struct CheckReport {
    verdict: &'static str,
    kind: &'static str,
    radius: usize,
    leaves: usize,
    depth: usize,
    group: &'static str,
    reason: Option<String>,
}

fn describe_rejection(r: &Rejection) -> String {
    match r {
        Rejection::BadDecision(pair) => format!("pair {pair} is decided twice or is not a pair"),
        Rejection::EmptyWitness => "a leaf has no witness terms".to_string(),
        Rejection::NotPositive(base) => format!("witness base {base} is not positive on its path"),
        Rejection::ConjugateNotAllowed => "conjugated term in a preorder certificate".to_string(),
        Rejection::BadInvolution => {
            "involution certificate is not a single leaf (g)(g) with g = g^-1".to_string()
        }
        Rejection::NonTrivialProduct(terms) => {
            let shown: Vec<String> = terms
                .iter()
                .map(|t| match &t.conj {
                    Some(q) => format!("({} conj {q})", t.base),
                    None => format!("({})", t.base),
                })
                .collect();
            format!("leaf product {} is not the identity", shown.join(""))
        }
    }
}

pub fn check_cert(common: &Common) -> Result<Outcome, CliError> {
    let text = read(&common.cert)?;
    let cert = RefutationCertificate::from_json(&text).map_err(CliError::Certificate)?;
    let (presentation, group) = match &common.presentation {
        Some(_) => (load_presentation(common)?, "presentation"),
        None => (
            Presentation::parse(&cert.group).map_err(|source| CliError::Presentation {
                path: format!("{} (embedded group)", common.cert.display()),
                source,
            })?,
            "embedded",
        ),
    };
    let backend = WordBackend::build(&presentation, common.budgets())?;
    let reason = match check_with_backend(&backend, &cert, common.ball_cap) {
        Ok(Verdict::Accepted) => None,
        Ok(Verdict::Rejected(r)) => Some(describe_rejection(&r)),
        Err(CheckFailure::Ball(e)) => return Err(e.into()),
        Err(CheckFailure::Certificate(e @ CertificateError::Json(_))) => {
            return Err(CliError::Certificate(e))
        }
        Err(CheckFailure::Certificate(e)) => Some(e.to_string()),
    };
    let report = CheckReport {
        verdict: if reason.is_none() {
            "accepted"
        } else {
            "rejected"
        },
        kind: cert.kind.as_str(),
        radius: cert.radius,
        leaves: cert.tree.leaf_count(),
        depth: cert.tree.depth(),
        group,
        reason,
    };
    let code = if report.reason.is_none() { 0 } else { 1 };
    Ok(Outcome::new(report, code))
}

#[derive(Serialize)]
struct LevelReport {
    k: usize,
    ball_size: usize,
    total: usize,
    count: usize,
    truncated: bool,
    /// Assignments with no extension to the next radius.
    dead_ends: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    assignments: Option<Vec<Vec<String>>>,
}

#[derive(Serialize)]
struct EnumerateReport {
    mode: &'static str,
    backend: &'static str,
    limit: usize,
    constraints: Vec<String>,
    levels: Vec<LevelReport>,
    restriction_failures: usize,
}

fn positive_names(backend: &WordBackend, ball: &Ball, a: &SignAssignment) -> Vec<String> {
    a.positive()
        .map(|id| backend.presentation().format_word(&ball.element(id).nf))
        .collect()
}

pub fn enumerate(
    common: &Common,
    mode: ModeArg,
    constraints: &[Constraint],
    limit: usize,
    list: bool,
) -> Result<Outcome, CliError> {
    let range = radius(common)?;
    let backend = load_backend(common)?;
    let words = constraints
        .iter()
        .map(|c| {
            let w = backend
                .presentation()
                .parse_word(&c.word)
                .map_err(|source| CliError::Word {
                    word: c.word.clone(),
                    source,
                })?;
            Ok((w, if c.positive { 1 } else { -1 }))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let diagram = LevelDiagram::build(&backend, range.end, mode.into(), limit, common.ball_cap)
        .map_err(|e| match e {
            SpaceError::Ball(b) => CliError::Ball(b),
            other => CliError::Usage(other.to_string()),
        })?;
    let fibers = diagram.extension_report();
    let mut levels = Vec::new();
    for k in range.iter() {
        let level = diagram
            .level(k)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let matching = diagram
            .neighborhood_query(&backend, k, &words)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let dead_ends = fibers
            .get(k - 1)
            .filter(|_| !level.truncated && !diagram.level(k + 1).is_ok_and(|l| l.truncated))
            .map(|f| f.iter().filter(|&&n| n == 0).count());
        let ball = diagram.ball().restrict(k);
        let assignments = list.then(|| {
            matching
                .iter()
                .map(|&i| positive_names(&backend, &ball, &level.assignments[i]))
                .collect()
        });
        levels.push(LevelReport {
            k,
            ball_size: level.ball_size,
            total: level.count(),
            count: matching.len(),
            truncated: level.truncated,
            dead_ends,
            assignments,
        });
    }
    let report = EnumerateReport {
        mode: mode_name(mode),
        backend: backend.kind(),
        limit,
        constraints: constraints.iter().map(|c| c.to_string()).collect(),
        levels,
        restriction_failures: diagram.restriction_failures(),
    };
    Ok(Outcome::new(report, 0))
}

#[derive(Serialize)]
struct ConeRadius {
    k: usize,
    ball_size: usize,
    positive: usize,
    valid: bool,
    violation: Option<String>,
}

#[derive(Serialize)]
struct ConeReport {
    cone: String,
    mode: &'static str,
    backend: &'static str,
    radii: Vec<ConeRadius>,
    verdict: &'static str,
}

fn describe_violation(backend: &WordBackend, ball: &Ball, v: &Violation) -> String {
    let name = |id: usize| backend.presentation().format_word(&ball.element(id).nf);
    match *v {
        Violation::WrongLength { expected, found } => {
            format!("assignment has {found} signs for {expected} elements")
        }
        Violation::IdentitySign(s) => format!("identity has sign {s}"),
        Violation::Unsigned(g) => format!("{} has no sign", name(g)),
        Violation::InversePairing(g) => format!("{} and its inverse have equal signs", name(g)),
        Violation::Product { g, h, f } => format!(
            "{} and {} are positive but their product {} is not",
            name(g),
            name(h),
            name(f)
        ),
        Violation::Conjugation { g, q, c } => format!(
            "{} is positive but its conjugate {} by {} is not",
            name(q),
            name(c),
            name(g)
        ),
    }
}

pub fn verify_cone(common: &Common, cone: &str, mode: ModeArg) -> Result<Outcome, CliError> {
    let oracle: ConeOracle = cone.parse()?;
    let range = radius(common)?;
    let backend = load_backend(common)?;
    oracle.check_group(&backend)?;
    let mut radii = Vec::new();
    for k in range.iter() {
        let ball = build_ball(&backend, k, common)?;
        let a = oracle.restrict_to_ball(&backend, &ball)?;
        let violation = verify(&ball, &a, Mode::from(mode))
            .err()
            .map(|v| describe_violation(&backend, &ball, &v));
        radii.push(ConeRadius {
            k,
            ball_size: ball.len(),
            positive: a.positive().count(),
            valid: violation.is_none(),
            violation,
        });
    }
    let valid = radii.iter().all(|r| r.valid);
    let report = ConeReport {
        cone: oracle.to_string(),
        mode: mode_name(mode),
        backend: backend.kind(),
        radii,
        verdict: if valid { "valid" } else { "invalid" },
    };
    Ok(Outcome::new(report, if valid { 0 } else { 1 }))
}
