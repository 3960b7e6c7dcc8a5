//! Commands behind the `qfano` binary. Every command returns a serializable
//! report plus a verdict that decides the exit code.

use std::fmt::Write as _;
use std::path::Path;

use qfano_core::exclusion::{exclusion_suite, ExclusionReport};
use qfano_core::family::{
    build_x1, build_xprime, default_primes, find_symmetry_heuristic, member_qsm_outside, sample_triplet, singularity_inventory, verify_condition,
    verify_symmetry_witness, CheckMode, CheckOptions, ConditionReport, SampleMode, SingularPoint, Triplet, TripletRecord, WitnessSummary,
};
use qfano_core::groebner::GroebnerConfig;
use qfano_core::links::{verify_link_suite, FlopVerdict, LinkReport, LinkVerdict};
use qfano_core::poly::{parse_poly, Field, Polynomial, WeightedRing};
use qfano_core::wps::{
    anticanonical_degree, anticanonical_degree_of, coordinate_point_quotient_type, general_member_report, is_terminal_quotient, is_well_formed,
    monomials_of_degree, CriterionVerdict, MonomialSet, StratumIndex, VarietySpec,
};
use qfano_core::Verdict;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Points per locus in the exclusion suite.
pub const EXCLUSION_POINTS: usize = 5;

/// Draws allowed when sampling a triplet.
pub const DEFAULT_RETRIES: usize = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed JSON in {path}: {message}")]
    Json { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qfano_core::Error),
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILED: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const INCONCLUSIVE: i32 = 3;
}

pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Verified => exit::OK,
        Verdict::Failed => exit::FAILED,
        Verdict::Inconclusive => exit::INCONCLUSIVE,
    }
}

/// Options shared by the checking commands.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub exact: bool,
    pub primes: Option<Vec<u64>>,
    pub budget: Option<usize>,
    /// Self-check every Gröbner basis built by the member checks.
    pub self_check: bool,
}

impl RunOptions {
    pub fn check_options(&self) -> Result<CheckOptions, CliError> {
        let mut groebner = match self.budget {
            Some(b) => GroebnerConfig::with_budget(b),
            None => GroebnerConfig::default(),
        };
        groebner.self_check = self.self_check;
        let mode = match (&self.primes, self.exact) {
            (Some(_), true) => return Err(CliError::Usage("--exact and --primes are exclusive".into())),
            (_, true) => CheckMode::Exact,
            (Some(ps), false) => {
                for &p in ps {
                    Field::prime(p)?;
                }
                CheckMode::Primes(ps.clone())
            }
            (None, false) => CheckMode::Primes(default_primes()),
        };
        Ok(CheckOptions { mode, groebner })
    }

    fn describe(&self, opts: &CheckOptions) -> String {
        match &opts.mode {
            CheckMode::Exact => "exact".into(),
            CheckMode::Primes(ps) => format!("primes {}", ps.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| CliError::Json { path: path.display().to_string(), message: e.to_string() })
}

/// SHA-256 of the canonical JSON of `value`.
pub fn digest<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("serializable");
    hex::encode(Sha256::digest(bytes))
}

// ---------------------------------------------------------------- wps-info

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinatePoint {
    pub variable: String,
    pub weight: u32,
    /// The point lies on the general member.
    pub on_general_member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terminal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WpsInfo {
    pub weights: Vec<u32>,
    pub degrees: Vec<u32>,
    pub well_formed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anticanonical_degree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fano_index: Option<i64>,
    pub coordinate_points: Vec<CoordinatePoint>,
    pub verdict: Verdict,
}

/// Member with every monomial of the right degree; enough for support-based
/// questions about the general member.
fn general_member(weights: &[u32], degrees: &[u32]) -> Result<VarietySpec, CliError> {
    let names: Vec<String> = (0..weights.len()).map(|i| format!("x{i}")).collect();
    let r = WeightedRing::new(names, weights, Field::Rational)?;
    let all: Vec<usize> = (0..weights.len()).collect();
    let one = Field::Rational.one();
    let eqs = degrees
        .iter()
        .map(|&d| Polynomial::from_terms(&r, monomials_of_degree(&r, &all, d).iter().map(|m| (m.clone(), one.clone()))))
        .collect();
    Ok(VarietySpec::new(&r, eqs)?)
}

pub fn cmd_wps_info(weights: &[u32], degrees: &[u32]) -> Result<WpsInfo, CliError> {
    if weights.is_empty() || degrees.is_empty() || weights.contains(&0) || degrees.contains(&0) {
        return Err(CliError::Usage("weights and degrees must be nonempty lists of positive integers".into()));
    }
    let well_formed = is_well_formed(weights);
    // degree and point types only make sense for threefolds
    let threefold = weights.len() == 4 + degrees.len();
    let (a3, index) = match threefold {
        true => {
            let (a3, i) = anticanonical_degree_of(weights, degrees)?;
            (Some(a3.to_string()), Some(i))
        }
        false => (None, None),
    };
    let v = general_member(weights, degrees)?;
    let mut coordinate_points = Vec::new();
    for (i, &w) in weights.iter().enumerate() {
        if w == 1 {
            continue;
        }
        let variable = v.ring().name(i).to_string();
        let on = !degrees.iter().any(|d| d % w == 0);
        let (kind, terminal) = if on && threefold {
            match coordinate_point_quotient_type(&v, i)? {
                Some(q) => (Some(q.to_string()), is_terminal_quotient(&q).ok()),
                None => (Some("not-determined".to_string()), None),
            }
        } else {
            (None, None)
        };
        coordinate_points.push(CoordinatePoint { variable, weight: w, on_general_member: on, kind, terminal });
    }
    let verdict = if well_formed { Verdict::Verified } else { Verdict::Failed };
    Ok(WpsInfo { weights: weights.to_vec(), degrees: degrees.to_vec(), well_formed, anticanonical_degree: a3, fano_index: index, coordinate_points, verdict })
}

pub fn render_wps_info(r: &WpsInfo) -> String {
    let mut s = String::new();
    let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    let _ = writeln!(s, "P({}) degrees ({})", join(&r.weights), join(&r.degrees));
    let _ = writeln!(s, "well-formed: {}", r.well_formed);
    if let (Some(a3), Some(i)) = (&r.anticanonical_degree, r.fano_index) {
        let _ = writeln!(s, "A^3 = {a3}");
        let _ = writeln!(s, "Fano index: {i}");
    }
    for p in &r.coordinate_points {
        match (&p.kind, p.terminal) {
            (Some(k), Some(t)) => {
                let _ = writeln!(s, "  point {} (weight {}): {k}, terminal {t}", p.variable, p.weight);
            }
            (Some(k), None) => {
                let _ = writeln!(s, "  point {} (weight {}): {k}", p.variable, p.weight);
            }
            _ if p.on_general_member => {
                let _ = writeln!(s, "  point {} (weight {}): on the general member", p.variable, p.weight);
            }
            _ => {
                let _ = writeln!(s, "  point {} (weight {}): not on the general member", p.variable, p.weight);
            }
        }
    }
    let _ = writeln!(s, "verdict: {}", r.verdict);
    s
}

// ----------------------------------------------------------------- qsmooth

/// On-disk variety: `{weights, variables, equations, field?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyFile {
    pub weights: Vec<u32>,
    pub variables: Vec<String>,
    pub equations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

impl VarietyFile {
    pub fn build(&self) -> Result<VarietySpec, CliError> {
        let field: Field = match &self.field {
            Some(f) => f.parse()?,
            None => Field::Rational,
        };
        let r = WeightedRing::new(self.variables.iter().cloned(), &self.weights, field)?;
        let eqs = self.equations.iter().map(|e| parse_poly(e, &r)).collect::<Result<Vec<_>, _>>()?;
        Ok(VarietySpec::new(&r, eqs)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QsmoothMode {
    General,
    Member,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRow {
    pub stratum: String,
    /// `pass`, `fail`, `allowed` in general mode; a member verdict otherwise.
    pub result: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<u8>,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub evidence: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QsmoothReport {
    pub tool_version: String,
    pub input_digest: String,
    pub mode: QsmoothMode,
    pub allowed: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fields: Option<Vec<String>>,
    pub linear_cone: bool,
    pub strata: Vec<StratumRow>,
    pub passed: usize,
    pub failed: usize,
    pub verdict: Verdict,
}

fn resolve_allowed(ring: &WeightedRing, names: &[String]) -> Result<Vec<usize>, CliError> {
    names
        .iter()
        .map(|n| ring.var_index(n).ok_or_else(|| CliError::Usage(format!("unknown variable {n:?} in --allow"))))
        .collect()
}

pub fn cmd_qsmooth(file: &VarietyFile, mode: QsmoothMode, allow: &[String], run: &RunOptions) -> Result<QsmoothReport, CliError> {
    let v = file.build()?;
    let allowed = resolve_allowed(v.ring(), allow)?;
    let n = v.ring().arity();
    let allowed_strata: Vec<StratumIndex> = allowed.iter().map(|&i| StratumIndex::new(vec![i], n)).collect::<Result<_, _>>()?;
    let input_digest = digest(&(file, mode, allow));
    match mode {
        QsmoothMode::General => {
            let sets = v.equations().iter().map(MonomialSet::support_of).collect::<Result<Vec<_>, _>>()?;
            let rep = general_member_report(&sets)?;
            let mut strata = Vec::new();
            let (mut passed, mut failed) = (0, 0);
            for (s, c) in &rep.strata {
                let label = s.label(v.ring());
                let row = match c {
                    CriterionVerdict::Pass(rule) => {
                        passed += 1;
                        StratumRow { stratum: label, result: "pass".into(), rule: Some(*rule), evidence: String::new() }
                    }
                    CriterionVerdict::Fail if allowed_strata.contains(s) => {
                        StratumRow { stratum: label, result: "allowed".into(), rule: None, evidence: "no criterion applies; excluded by --allow".into() }
                    }
                    CriterionVerdict::Fail => {
                        failed += 1;
                        StratumRow { stratum: label, result: "fail".into(), rule: None, evidence: "no criterion applies".into() }
                    }
                };
                strata.push(row);
            }
            let verdict = if rep.linear_cone || failed > 0 { Verdict::Failed } else { Verdict::Verified };
            Ok(QsmoothReport {
                tool_version: TOOL_VERSION.into(),
                input_digest,
                mode,
                allowed: allow.to_vec(),
                fields: None,
                linear_cone: rep.linear_cone,
                strata,
                passed,
                failed,
                verdict,
            })
        }
        QsmoothMode::Member => {
            let opts = run.check_options()?;
            let rep = member_qsm_outside(&v, &allowed, &opts)?;
            let strata: Vec<StratumRow> = rep
                .strata
                .iter()
                .map(|s| StratumRow {
                    stratum: s.stratum.clone(),
                    result: s.verdict.map_or("allowed".to_string(), |v| v.to_string()),
                    rule: None,
                    evidence: s.evidence.clone(),
                })
                .collect();
            let passed = rep.strata.iter().filter(|s| s.verdict == Some(Verdict::Verified)).count();
            let failed = rep.strata.iter().filter(|s| s.verdict == Some(Verdict::Failed)).count();
            Ok(QsmoothReport {
                tool_version: TOOL_VERSION.into(),
                input_digest,
                mode,
                allowed: allow.to_vec(),
                fields: Some(rep.fields.clone()),
                linear_cone: false,
                strata,
                passed,
                failed,
                verdict: rep.verdict,
            })
        }
    }
}

pub fn render_qsmooth(r: &QsmoothReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "mode: {:?}", r.mode);
    if let Some(f) = &r.fields {
        let _ = writeln!(s, "fields: {}", f.join(" "));
    }
    if r.linear_cone {
        let _ = writeln!(s, "general member is a linear cone");
    }
    for row in &r.strata {
        let rule = row.rule.map(|k| format!(" (rule {k})")).unwrap_or_default();
        let ev = if row.evidence.is_empty() { String::new() } else { format!("  [{}]", row.evidence) };
        let _ = writeln!(s, "{:<24} {}{rule}{ev}", row.stratum, row.result);
    }
    let _ = writeln!(s, "{} pass / {} fail", r.passed, r.failed);
    let _ = writeln!(s, "verdict: {}", r.verdict);
    s
}

// --------------------------------------------------------------- replicate

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "lowercase")]
pub enum ReplicateInput {
    File { triplet: TripletRecord },
    Sample { seed: u64, symmetric: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub source: ReplicateInput,
    pub triplet: TripletRecord,
    /// Draws used by the sampler.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attempts: Option<usize>,
    pub checks: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section<T> {
    pub verdict: Verdict,
    pub detail: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ambient {
    pub variety: String,
    pub weights: Vec<u32>,
    pub degrees: Vec<u32>,
    pub well_formed: bool,
    pub anticanonical_degree: String,
    pub fano_index: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralStrata {
    pub variety: String,
    pub passed: usize,
    pub failing: Vec<String>,
    pub expected_failing: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryDetail {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessSummary>,
    pub witness_verified: bool,
    /// `b6` is a constant multiple of `a6`.
    pub proportional_sextics: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkSection {
    pub per_field: Vec<(String, LinkReport)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sections {
    pub wellformed: Section<Vec<Ambient>>,
    pub degrees: Section<Vec<Ambient>>,
    pub general_member: Section<Vec<GeneralStrata>>,
    pub condition: Section<ConditionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singularity_inventory: Option<Section<Vec<SingularPoint>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<Section<SymmetryDetail>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub link_suite: Option<Section<LinkSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exclusion_suite: Option<Section<ExclusionReport>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    /// `replicated`, `not replicated` or `inconclusive`.
    pub status: String,
    pub verdict: Verdict,
    /// Count of birational Mori fiber structures the evidence points to.
    pub structure_count_evidence: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub input_digest: String,
    pub input: InputSummary,
    pub sections: Sections,
    pub summary: Summary,
    pub discrepancies: Vec<String>,
}

const NOTES: [&str; 4] = [
    "isolation bound read as l <= 4/(A^3), giving 6 on X' and 8 on X1, X2",
    "isolating generators use xi0*x1 - xi1*x0 for the x-coordinates and the coordinate z in the cubic generator",
    "curve degrees on X' are restricted to 1/2 Z as a stated constraint, not re-derived",
    "the cAx/2 points of X1, X2 are certified through their identification with the points of X', reusing the sextic test",
];

fn ambient(name: &str, v: &VarietySpec) -> Result<Ambient, CliError> {
    let (a3, index) = anticanonical_degree(v)?;
    Ok(Ambient {
        variety: name.into(),
        weights: v.ring().weights().to_vec(),
        degrees: v.degrees().to_vec(),
        well_formed: is_well_formed(v.ring().weights()),
        anticanonical_degree: a3.to_string(),
        fano_index: index,
    })
}

fn general_section(t: &Triplet) -> Result<Section<Vec<GeneralStrata>>, CliError> {
    // supports of the full forms, so the criterion sees the whole family
    let full = |d: u32| {
        let r = t.ring();
        let one = Field::Rational.one();
        let r = r.with_field(Field::Rational);
        Polynomial::from_terms(&r, monomials_of_degree(&r, &[0, 1, 2], d).iter().map(|m| (m.clone(), one.clone())))
    };
    let gt = Triplet::new(full(6), full(6), full(8))?;
    let mut out = Vec::new();
    for (name, v, expected) in [("X'", build_xprime(&gt), vec!["{y0}", "{y1}"]), ("X1", build_x1(&gt), vec!["{y}"])] {
        let sets = v.equations().iter().map(MonomialSet::support_of).collect::<Result<Vec<_>, _>>()?;
        let rep = general_member_report(&sets)?;
        out.push(GeneralStrata {
            variety: name.into(),
            passed: rep.pass_count(),
            failing: rep.failing().iter().map(|s| s.label(v.ring())).collect(),
            expected_failing: expected.into_iter().map(String::from).collect(),
        });
    }
    let ok = out.iter().all(|g| g.failing == g.expected_failing);
    Ok(Section { verdict: if ok { Verdict::Verified } else { Verdict::Failed }, detail: out })
}

fn link_verdict(v: LinkVerdict) -> Verdict {
    match v {
        LinkVerdict::Certified => Verdict::Verified,
        LinkVerdict::Failed => Verdict::Failed,
        LinkVerdict::Inconclusive => Verdict::Inconclusive,
    }
}

/// The full pipeline on one triplet.
pub fn replicate_triplet(t: &Triplet, source: ReplicateInput, attempts: Option<usize>, run: &RunOptions) -> Result<ReportDocument, CliError> {
    let opts = run.check_options()?;
    let record = t.to_record();
    let input = InputSummary { source, triplet: record.clone(), attempts, checks: run.describe(&opts) };
    let input_digest = digest(&(&record, &input.checks, run.budget));

    let xp = build_xprime(t);
    let x1 = build_x1(t);
    let ambients = vec![ambient("X'", &xp)?, ambient("X1", &x1)?];
    let wf_ok = ambients.iter().all(|a| a.well_formed);
    let wellformed = Section { verdict: if wf_ok { Verdict::Verified } else { Verdict::Failed }, detail: ambients.clone() };
    let deg_ok = ambients.iter().all(|a| a.fano_index == 1);
    let degrees = Section { verdict: if deg_ok { Verdict::Verified } else { Verdict::Failed }, detail: ambients };
    let general_member = general_section(t)?;

    let report = verify_condition(t, &opts);
    let condition = Section { verdict: report.verdict(), detail: report };

    let mut sections = Sections {
        wellformed,
        degrees,
        general_member,
        condition,
        singularity_inventory: None,
        symmetry: None,
        link_suite: None,
        exclusion_suite: None,
    };

    // later stages presuppose the genericity condition
    if sections.condition.verdict.is_verified() {
        let inv = singularity_inventory(t)?;
        let inv_ok = inv.iter().all(|p| p.terminal == Some(true) || p.sextic_certified == Some(true));
        sections.singularity_inventory = Some(Section { verdict: if inv_ok { Verdict::Verified } else { Verdict::Failed }, detail: inv });

        let fields = opts.fields_for(t.field())?;
        let mut per_field = Vec::new();
        let mut lv = Verdict::Verified;
        for f in &fields {
            let tf = t.change_field(*f)?;
            match verify_link_suite(&tf, &opts.groebner) {
                Ok(rep) => {
                    lv = lv.and(link_verdict(rep.verdict));
                    per_field.push((f.to_string(), rep));
                }
                Err(e) => return Err(e.into()),
            }
        }
        let proportional = per_field.first().is_some_and(|(_, r)| r.flop == FlopVerdict::NoMaximalCenter);
        sections.link_suite = Some(Section { verdict: lv, detail: LinkSection { per_field } });

        let witness = find_symmetry_heuristic(t);
        let witness_verified = match &witness {
            Some(w) => verify_symmetry_witness(t, w)?,
            None => false,
        };
        let sym_verdict = if witness.is_some() && !witness_verified { Verdict::Failed } else { Verdict::Verified };
        sections.symmetry = Some(Section {
            verdict: sym_verdict,
            detail: SymmetryDetail { witness: witness.map(|w| w.summary(t.field())), witness_verified, proportional_sextics: proportional },
        });

        let prime = match fields.first() {
            Some(Field::Prime(p)) => *p,
            _ => default_primes()[0],
        };
        let tp = t.change_field(Field::prime(prime)?)?;
        let ex = exclusion_suite(&tp, 0x5eed, EXCLUSION_POINTS, &opts.groebner)?;
        sections.exclusion_suite = Some(Section { verdict: if ex.passed { Verdict::Verified } else { Verdict::Failed }, detail: ex });
    }

    let mut verdicts = vec![sections.wellformed.verdict, sections.degrees.verdict, sections.general_member.verdict, sections.condition.verdict];
    let later = [
        sections.singularity_inventory.as_ref().map(|s| s.verdict),
        sections.symmetry.as_ref().map(|s| s.verdict),
        sections.link_suite.as_ref().map(|s| s.verdict),
        sections.exclusion_suite.as_ref().map(|s| s.verdict),
    ];
    verdicts.extend(later.iter().flatten());
    let verdict = Verdict::all(verdicts);
    let status = match verdict {
        Verdict::Verified => "replicated",
        Verdict::Failed => "not replicated",
        Verdict::Inconclusive => "inconclusive",
    };
    let structure_count_evidence = match &sections.symmetry {
        Some(s) if s.detail.witness_verified => "2 (witness verified)".to_string(),
        Some(_) if verdict.is_verified() => "3 (no symmetry witness found)".to_string(),
        _ => "undetermined".to_string(),
    };
    Ok(ReportDocument {
        tool_version: TOOL_VERSION.into(),
        input_digest,
        input,
        sections,
        summary: Summary { status: status.into(), verdict, structure_count_evidence },
        discrepancies: NOTES.iter().map(|s| s.to_string()).collect(),
    })
}

pub fn cmd_replicate_file(record: &TripletRecord, run: &RunOptions) -> Result<ReportDocument, CliError> {
    let t = Triplet::from_record(record)?;
    replicate_triplet(&t, ReplicateInput::File { triplet: record.clone() }, None, run)
}

/// Samples over ℚ with the given seed; the sampler retries at most
/// `retries` times.
pub fn cmd_replicate_sample(seed: u64, symmetric: bool, retries: usize, run: &RunOptions) -> Result<ReportDocument, CliError> {
    let opts = run.check_options()?;
    let mode = if symmetric { SampleMode::Symmetric } else { SampleMode::General };
    let s = sample_triplet(seed, mode, Field::Rational, &opts, retries)?;
    replicate_triplet(&s.triplet, ReplicateInput::Sample { seed, symmetric }, Some(s.attempts), run)
}

fn item_line(s: &mut String, name: &str, v: Verdict, ev: &str) {
    let _ = writeln!(s, "  {name}: {v}  [{ev}]");
}

pub fn render_report(r: &ReportDocument) -> String {
    let mut s = String::new();
    let t = &r.input.triplet;
    let _ = writeln!(s, "qfano {}  input {}", r.tool_version, &r.input_digest[..16]);
    let _ = writeln!(s, "triplet over {}: a6 = {}; b6 = {}; c8 = {}", t.field, t.a6, t.b6, t.c8);
    if let Some(a) = r.input.attempts {
        let _ = writeln!(s, "sampled in {a} draw(s)");
    }
    let _ = writeln!(s, "checks: {}", r.input.checks);
    let sec = &r.sections;
    let _ = writeln!(s, "wellformed: {}", sec.wellformed.verdict);
    let _ = writeln!(s, "degrees: {}", sec.degrees.verdict);
    for a in &sec.degrees.detail {
        let _ = writeln!(s, "  {}: A^3 = {}, index {}", a.variety, a.anticanonical_degree, a.fano_index);
    }
    let _ = writeln!(s, "general member: {}", sec.general_member.verdict);
    for g in &sec.general_member.detail {
        let _ = writeln!(s, "  {}: {} pass, failing {}", g.variety, g.passed, g.failing.join(" "));
    }
    let c = &sec.condition.detail;
    let _ = writeln!(s, "condition: {}", sec.condition.verdict);
    item_line(&mut s, "item1", c.item1.verdict, &c.item1.evidence);
    item_line(&mut s, "item2", c.item2.verdict, &c.item2.evidence);
    item_line(&mut s, "item3", c.item3.verdict, &c.item3.evidence);
    item_line(&mut s, "item4", c.item4.verdict, &c.item4.evidence);
    if let Some(inv) = &sec.singularity_inventory {
        let _ = writeln!(s, "singularity inventory: {}", inv.verdict);
        for p in &inv.detail {
            let extra = match (p.terminal, p.sextic_certified) {
                (Some(t), _) => format!("terminal {t}"),
                (None, Some(c)) => format!("sextic certified {c}"),
                _ => String::new(),
            };
            let _ = writeln!(s, "  {} {}: {} {extra}", p.variety, p.point, p.kind);
        }
    }
    if let Some(sym) = &sec.symmetry {
        let _ = writeln!(s, "symmetry: {}", sym.verdict);
        match &sym.detail.witness {
            Some(w) => {
                let _ = writeln!(s, "  witness {} alpha={} beta={} gamma={} verified {}", w.tau, w.alpha, w.beta, w.gamma, sym.detail.witness_verified);
            }
            None => {
                let _ = writeln!(s, "  no witness found by the heuristic search");
            }
        }
    }
    if let Some(l) = &sec.link_suite {
        let _ = writeln!(s, "link suite: {}", l.verdict);
        for (f, rep) in &l.detail.per_field {
            let names: Vec<String> = rep.maps.iter().map(|m| format!("{}={:?}", m.name, m.verdict).to_lowercase()).collect();
            let _ = writeln!(s, "  {f}: {}; involution identity {}; flop {:?}", names.join(" "), rep.involution_identity, rep.flop);
        }
    }
    if let Some(e) = &sec.exclusion_suite {
        let _ = writeln!(s, "exclusion suite: {}  (over {})", e.verdict, e.detail.field);
        for case in &e.detail.cases {
            let ok = case.checks.iter().filter(|c| c.passes()).count();
            let bound = case.checks.first().map_or("?", |c| c.bound.as_str());
            let _ = writeln!(s, "  {} {:?}: {}/{} pass, l = {} <= {}", case.variety, case.locus, ok, case.checks.len(), case.expected_l, bound);
        }
        let _ = writeln!(s, "  gamma chain contradiction on grid: {}", e.detail.gamma_grid_contradiction);
    }
    let _ = writeln!(s, "summary: {} ({})", r.summary.status, r.summary.verdict);
    let _ = writeln!(s, "structure-count evidence: {}", r.summary.structure_count_evidence);
    for n in &r.discrepancies {
        let _ = writeln!(s, "note: {n}");
    }
    s
}
