//! Runs the obstruction battery on a group or a homomorphism and assembles
//! a deterministic report.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::extensions::{
    abelianization_class_pipeline, class_and_torsion, recognize_extension, section_scan, ClassVerdict, PipelineVerdict,
};
use crate::homology::{betti1, h1, h1_parity_check};
use crate::lieranks::{commutator_image_check, formality_test, strictness_check, Budget, LieError};
use crate::presentation::{verify_hom, Document, GroupHom, HomError, Presentation, Verification, WordProblem};
use crate::surface::{base_projection, splitting_obstruction_pipeline, SplittingVerdict};

pub(crate) mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NotKahler,
    NotKahlerHom,
    Consistent,
    Inconclusive,
    Caveat,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NotKahler => "not_kahler",
            Verdict::NotKahlerHom => "not_kahler_hom",
            Verdict::Consistent => "consistent",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Caveat => "caveat",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputInfo {
    pub file: String,
    pub sha256: String,
    pub subject: String,
    pub seed: u64,
    pub max_degree: usize,
    pub dim_budget: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestRecord {
    pub name: String,
    /// The obstruction the test implements.
    pub anchor: String,
    pub verdict: Verdict,
    pub witness: Value,
    pub caveats: Vec<String>,
}

impl TestRecord {
    fn new(name: &str, anchor: &str, verdict: Verdict, witness: Value) -> Self {
        TestRecord {
            name: name.to_string(),
            anchor: anchor.to_string(),
            verdict,
            witness,
            caveats: Vec::new(),
        }
    }

    fn with_caveat(mut self, c: impl Into<String>) -> Self {
        self.caveats.push(c.into());
        self
    }

    pub fn fired(&self) -> bool {
        matches!(self.verdict, Verdict::NotKahler | Verdict::NotKahlerHom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub input: InputInfo,
    pub tests: Vec<TestRecord>,
    pub overall: Verdict,
}

impl ObstructionReport {
    pub fn new(input: InputInfo, tests: Vec<TestRecord>) -> Self {
        let overall = overall_verdict(&tests);
        ObstructionReport { input, tests, overall }
    }

    pub fn test(&self, name: &str) -> Option<&TestRecord> {
        self.tests.iter().find(|t| t.name == name)
    }

    pub fn fired(&self) -> Vec<&TestRecord> {
        self.tests.iter().filter(|t| t.fired()).collect()
    }
}

fn overall_verdict(tests: &[TestRecord]) -> Verdict {
    if tests.iter().any(|t| t.verdict == Verdict::NotKahler) {
        Verdict::NotKahler
    } else if tests.iter().any(|t| t.verdict == Verdict::NotKahlerHom) {
        Verdict::NotKahlerHom
    } else if !tests.is_empty() && tests.iter().all(|t| t.verdict == Verdict::Consistent) {
        Verdict::Consistent
    } else {
        Verdict::Inconclusive
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub max_degree: usize,
    pub dim_budget: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_degree: 3,
            dim_budget: 5000,
            seed: 0,
        }
    }
}

impl Options {
    fn budget(&self) -> Budget {
        Budget::new(self.dim_budget)
    }
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{0}")]
    Parse(#[from] crate::presentation::ParseError),
    #[error("no group named `{0}`")]
    UnknownGroup(String),
    #[error("no homomorphism named `{0}`")]
    UnknownHom(String),
    #[error("the file declares no groups")]
    NoGroups,
    #[error("the file declares no homomorphisms")]
    NoHoms,
    #[error("homomorphism is not valid: {0}")]
    Verification(HomError),
    #[error("{0}")]
    Extension(#[from] crate::extensions::ExtensionError),
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn input_info(file: &str, text: &str, subject: &str, opts: &Options) -> InputInfo {
    InputInfo {
        file: file.to_string(),
        sha256: sha256_hex(text.as_bytes()),
        subject: subject.to_string(),
        seed: opts.seed,
        max_degree: opts.max_degree,
        dim_budget: opts.dim_budget,
    }
}

fn error_record(name: &str, anchor: &str, err: impl std::fmt::Display) -> TestRecord {
    TestRecord::new(name, anchor, Verdict::Inconclusive, Value::Null).with_caveat(err.to_string())
}

const PARITY_ANCHOR: &str = "first Betti number of a Kahler group is even";
const FORMALITY_ANCHOR: &str = "Malcev Lie algebra of a Kahler group is quadratically presented";
const CLASS2_ANCHOR: &str =
    "abelianization extension class is torsion when b1 = 2, or b1 = 4 with injective cup product";
const SPLITTING_ANCHOR: &str = "maximal surjection onto a surface group has torsion splitting obstruction";
const IMAGE_PARITY_ANCHOR: &str = "image, kernel and cokernel of a Kahler homomorphism on H1 have even rank";
const STRICTNESS_ANCHOR: &str = "Kahler homomorphisms strictly preserve the lower central series";
const COMMUTATOR_ANCHOR: &str =
    "a Kahler homomorphism with image in the commutator subgroup induces the zero Malcev map";

/// Picks the group to analyze: by name, or the first declared.
pub fn select_group<'a>(doc: &'a Document, name: Option<&str>) -> Result<&'a crate::presentation::GroupDecl, InputError> {
    match name {
        Some(n) => doc.group(n).ok_or_else(|| InputError::UnknownGroup(n.to_string())),
        None => doc.groups.first().ok_or(InputError::NoGroups),
    }
}

/// Full battery on one presented group. `central` names kernel generators
/// of a central extension when the extension tests should run.
pub fn analyze(file: &str, text: &str, p: &Presentation, central: &[String], opts: &Options) -> ObstructionReport {
    let budget = opts.budget();
    let mut tests = Vec::new();

    let b1 = betti1(p);
    let parity = if b1 % 2 == 1 {
        Verdict::NotKahler
    } else {
        Verdict::Consistent
    };
    tests.push(TestRecord::new(
        "h1_parity",
        PARITY_ANCHOR,
        parity,
        json!({ "h1": h1(p).to_string(), "b1": b1 }),
    ));

    tests.push(match formality_test(p, opts.max_degree, budget) {
        Ok(f) => {
            let verdict = if f.not_quadratic() {
                Verdict::NotKahler
            } else {
                Verdict::Consistent
            };
            TestRecord::new(
                "formality",
                FORMALITY_ANCHOR,
                verdict,
                json!({
                    "lcs_ranks": f.lcs.ranks,
                    "holonomy_ranks": f.holonomy.ranks,
                    "witness_degree": f.witness_degree,
                }),
            )
        }
        Err(e) => error_record("formality", FORMALITY_ANCHOR, e),
    });

    tests.push(match abelianization_class_pipeline(p, budget) {
        Ok(r) => {
            let verdict = match r.verdict {
                PipelineVerdict::NotKahler => Verdict::NotKahler,
                _ => Verdict::Inconclusive,
            };
            let mut rec = TestRecord::new(
                "abelianization_class",
                CLASS2_ANCHOR,
                verdict,
                serde_json::to_value(&r).expect("report serializes"),
            );
            if let Some(c) = &r.class {
                rec.caveats.extend(c.caveats.iter().cloned());
            }
            rec
        }
        Err(e) => error_record("abelianization_class", CLASS2_ANCHOR, e),
    });

    if !central.is_empty() {
        tests.push(splitting_record(p, central));
    }

    ObstructionReport::new(input_info(file, text, p.name(), opts), tests)
}

fn splitting_record(p: &Presentation, central: &[String]) -> TestRecord {
    let ext = match recognize_extension(p, central) {
        Ok(e) => e,
        Err(e) => return error_record("splitting_obstruction", SPLITTING_ANCHOR, e),
    };
    let class = class_and_torsion(&ext);
    let a = ext.base_exponent_matrix();
    let a_rows: Vec<Vec<String>> = (0..a.rows())
        .map(|i| a.row(i).iter().map(ToString::to_string).collect())
        .collect();
    let mut witness = json!({
        "central": central,
        "base": ext.base().to_text(),
        "base_exponent_matrix": a_rows,
        "base_generators": ext.base().ngens(),
        "class": class,
        "kernel_hypothesis": ext.kernel_hypothesis(),
    });
    let genus = match WordProblem::detect(ext.base()) {
        Some(WordProblem::Surface { genus }) => Some(genus),
        _ => None,
    };
    let Some(genus) = genus else {
        let verdict = match class.verdict {
            ClassVerdict::NonTorsion => Verdict::Inconclusive,
            _ => Verdict::Consistent,
        };
        return TestRecord::new("splitting_obstruction", SPLITTING_ANCHOR, verdict, witness)
            .with_caveat("base is not a surface group of genus at least 2; the class alone is not an obstruction");
    };

    let maximal = betti1(p) == 2 * genus;
    let proj = match base_projection(p, central, ext.base()) {
        Ok(h) => h,
        Err(e) => return error_record("splitting_obstruction", SPLITTING_ANCHOR, e),
    };
    match splitting_obstruction_pipeline(&proj, maximal) {
        Ok(r) => {
            witness["genus"] = json!(genus);
            witness["maximality_asserted"] = json!(maximal);
            witness["verification"] = json!(r.verification.to_string());
            let verdict = match r.verdict {
                SplittingVerdict::NotKahler => Verdict::NotKahler,
                SplittingVerdict::Conditional => Verdict::Inconclusive,
                SplittingVerdict::Consistent => Verdict::Consistent,
            };
            let mut rec = TestRecord::new("splitting_obstruction", SPLITTING_ANCHOR, verdict, witness);
            if maximal {
                rec.caveats.push(format!(
                    "maximality follows from b1 = {} = 2g: the map cannot factor through a surface group of larger genus",
                    2 * genus
                ));
            } else {
                rec.caveats.push("maximality of the projection is not established".into());
            }
            rec.caveats.push("surjectivity checked on H1 only".into());
            rec.caveats.extend(r.class.caveats.iter().cloned());
            rec
        }
        Err(e) => error_record("splitting_obstruction", SPLITTING_ANCHOR, e),
    }
}

/// Verifies `h` as strongly as possible: exactly when the target has a
/// word-problem algorithm, otherwise in the nilpotent quotient of class `d`.
pub fn verify_strongest(h: &GroupHom, d: usize, budget: Budget) -> Result<GroupHom, HomError> {
    match verify_hom(h, Verification::Exact) {
        Ok(v) => Ok(v),
        Err(HomError::ExactUnsupported(_)) => {
            crate::presentation::verify_hom_with_budget(h, Verification::NilpotentQuotient(d), budget)
        }
        Err(e) => Err(e),
    }
}

pub fn select_hom<'a>(doc: &'a Document, name: Option<&str>) -> Result<&'a GroupHom, InputError> {
    match name {
        Some(n) => doc.hom(n).ok_or_else(|| InputError::UnknownHom(n.to_string())),
        None => doc.homs.last().ok_or(InputError::NoHoms),
    }
}

/// Battery of homomorphism obstructions.
pub fn analyze_hom(file: &str, text: &str, h: &GroupHom, opts: &Options) -> Result<ObstructionReport, InputError> {
    let budget = opts.budget();
    let d = opts.max_degree;
    let h = match verify_strongest(h, d, budget) {
        Ok(h) => h,
        Err(HomError::Budget(b)) => {
            let rec = error_record("verification", "homomorphism must be well defined", b);
            return Ok(ObstructionReport::new(input_info(file, text, h.name(), opts), vec![rec]));
        }
        Err(e) => return Err(InputError::Verification(e)),
    };
    let mut tests = Vec::new();

    let parity = h1_parity_check(&h).map_err(InputError::Verification)?;
    let verdict = if parity.fires() {
        Verdict::NotKahlerHom
    } else {
        Verdict::Consistent
    };
    tests.push(TestRecord::new(
        "h1_image_parity",
        IMAGE_PARITY_ANCHOR,
        verdict,
        json!({
            "rank_image": parity.rank_image,
            "rank_kernel": parity.rank_kernel,
            "rank_cokernel": parity.rank_cokernel,
            "odd": parity.odd(),
        }),
    ));

    tests.push(match strictness_check(&h, d, budget) {
        Ok(s) => {
            let verdict = if s.is_strict() {
                Verdict::Consistent
            } else {
                Verdict::NotKahlerHom
            };
            TestRecord::new(
                "malcev_strictness",
                STRICTNESS_ANCHOR,
                verdict,
                json!({ "levels": s.levels, "first_failure": s.first_failure() }),
            )
        }
        Err(e) => lie_error_record("malcev_strictness", STRICTNESS_ANCHOR, e),
    });

    tests.push(match commutator_image_check(&h, d, budget) {
        Ok(c) => {
            let verdict = if c.fires {
                Verdict::NotKahlerHom
            } else {
                Verdict::Consistent
            };
            TestRecord::new(
                "commutator_image",
                COMMUTATOR_ANCHOR,
                verdict,
                serde_json::to_value(&c).expect("report serializes"),
            )
        }
        Err(e) => lie_error_record("commutator_image", COMMUTATOR_ANCHOR, e),
    });

    for t in &mut tests {
        t.caveats.push(format!("homomorphism {}", h.verification()));
    }
    Ok(ObstructionReport::new(input_info(file, text, h.name(), opts), tests))
}

fn lie_error_record(name: &str, anchor: &str, e: LieError) -> TestRecord {
    error_record(name, anchor, e)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub input: InputInfo,
    pub central: Vec<String>,
    pub base: String,
    pub lift_vectors: Vec<Vec<String>>,
    pub base_exponent_matrix: Vec<Vec<String>>,
    pub kernel_hypothesis: bool,
    pub class: crate::extensions::ExtensionClass,
    pub scan_limit: u64,
    /// Smallest `n ≤ scan_limit` with a section of `H^(n) → G`.
    pub section_n: Option<u64>,
    pub section_exponents: Option<Vec<Vec<String>>>,
    /// Section scan and class order agree.
    pub agreement: bool,
}

pub fn extension_report(
    file: &str,
    text: &str,
    p: &Presentation,
    central: &[String],
    scan_limit: u64,
    opts: &Options,
) -> Result<ExtensionReport, InputError> {
    let ext = recognize_extension(p, central)?;
    let class = class_and_torsion(&ext);
    let section = section_scan(&ext, scan_limit)?;
    let expected = class.order().and_then(|o| u64::try_from(o).ok()).filter(|&o| o <= scan_limit);
    let agreement = section.as_ref().map(|s| s.n) == expected;
    let strings = |rows: &[Vec<num_bigint::BigInt>]| -> Vec<Vec<String>> {
        rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    };
    let a = ext.base_exponent_matrix();
    let a_rows: Vec<Vec<_>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    Ok(ExtensionReport {
        input: input_info(file, text, p.name(), opts),
        central: ext.central_names(),
        base: ext.base().to_text(),
        lift_vectors: strings(ext.lift_vectors()),
        base_exponent_matrix: strings(&a_rows),
        kernel_hypothesis: ext.kernel_hypothesis(),
        class,
        scan_limit,
        section_n: section.as_ref().map(|s| s.n),
        section_exponents: section.as_ref().map(|s| strings(&s.exponents)),
        agreement,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn emit_report(r: &ObstructionReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{} ({})", r.input.subject, r.input.file);
            let _ = writeln!(s, "sha256 {}", r.input.sha256);
            for t in &r.tests {
                let _ = writeln!(s, "  {:<22} {:<15} {}", t.name, t.verdict.as_str(), t.anchor);
                if t.fired() {
                    let _ = writeln!(s, "    witness: {}", t.witness);
                }
                for c in &t.caveats {
                    let _ = writeln!(s, "    note: {c}");
                }
            }
            let _ = writeln!(s, "overall: {}", r.overall.as_str());
            s
        }
    }
}
