//! Instances described by a small spec, suite runs, and window export.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::GradedLieAlgebra;
use crate::axioms::{check_d, check_t, nullity, props_check, serre_check, tameness_check, AxiomReport, Verdict};
use crate::constructions::{affinize, build_extension_by_cocycle, ClassicalMatrixAlgebra, ExtensionSpec};
use crate::decomp::{decompose_window, RootSystemWindow};
use crate::ears::{check_ears_axioms, support_sets, RootSet};
use crate::error::{Error, Result};
use crate::finroot::RootType;
use crate::matlie::{QuantumTorusAlgebra, SkewVariant};
use crate::quantum_torus::SignMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    QuantumTorus,
    Affinized,
    SpClassical,
    SqrtExtension,
    CocycleExtension,
}

impl Construction {
    pub const ALL: [Construction; 5] = [
        Construction::QuantumTorus,
        Construction::Affinized,
        Construction::SpClassical,
        Construction::SqrtExtension,
        Construction::CocycleExtension,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::QuantumTorus => "quantum-torus",
            Construction::Affinized => "affinized",
            Construction::SpClassical => "sp-classical",
            Construction::SqrtExtension => "sqrt-extension",
            Construction::CocycleExtension => "cocycle-extension",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Construction::QuantumTorus => "skew elements of gl_2l over a quantum torus with signs q (derived algebra by default)",
            Construction::Affinized => "the quantum torus algebra plus nu central elements and nu degree derivations",
            Construction::SpClassical => "split classical algebra of type --type (default C) and rank --rank over Q",
            Construction::SqrtExtension => "split classical algebra over Q(sqrt p) for the primes in --primes",
            Construction::CocycleExtension => "classical algebra plus a two dimensional central complement outside the core",
        }
    }

    /// Suite run when none is requested.
    pub fn default_suites(self) -> Vec<Suite> {
        match self {
            Construction::QuantumTorus => vec![Suite::D],
            _ => vec![Suite::T],
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown construction {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Suite {
    T,
    D,
    Ears,
    Serre,
    Tame,
    Props,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::T => "T",
            Suite::D => "D",
            Suite::Ears => "EARS",
            Suite::Serre => "SERRE",
            Suite::Tame => "TAME",
            Suite::Props => "PROPS",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "T" => Ok(Suite::T),
            "D" => Ok(Suite::D),
            "EARS" => Ok(Suite::Ears),
            "SERRE" => Ok(Suite::Serre),
            "TAME" => Ok(Suite::Tame),
            "PROPS" => Ok(Suite::Props),
            other => Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        }
    }
}

/// Comma separated suite names.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    let mut out: Vec<Suite> = s.split(',').filter(|p| !p.trim().is_empty()).map(Suite::from_str).collect::<Result<_>>()?;
    out.dedup();
    Ok(out)
}

/// Comma separated integers.
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<T>().map_err(|_| Error::InvalidArgument(format!("not a number: {p:?}"))))
        .collect()
}

fn default_ell() -> usize {
    2
}
fn default_window() -> i64 {
    2
}
fn default_type() -> RootType {
    RootType::C
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub construction: Construction,
    #[serde(default = "default_ell")]
    pub ell: usize,
    #[serde(default)]
    pub nu: usize,
    /// Strict upper triangle of the sign matrix, row-major.
    #[serde(default)]
    pub q: Vec<i64>,
    #[serde(default = "default_window")]
    pub window: i64,
    #[serde(default = "default_ell")]
    pub rank: usize,
    #[serde(rename = "type", default = "default_type")]
    pub root_type: RootType,
    #[serde(default)]
    pub primes: Vec<u64>,
    #[serde(default)]
    pub seed: u64,
    /// Use all skew elements instead of the derived algebra.
    #[serde(default)]
    pub full_skew: bool,
}

impl InstanceSpec {
    pub fn new(construction: Construction) -> Self {
        Self {
            construction,
            ell: 2,
            nu: 0,
            q: Vec::new(),
            window: 2,
            rank: 2,
            root_type: RootType::C,
            primes: Vec::new(),
            seed: 0,
            full_skew: false,
        }
    }

    pub fn quantum_torus(ell: usize, nu: usize, q: &[i64], window: i64) -> Self {
        Self { ell, nu, q: q.to_vec(), window, ..Self::new(Construction::QuantumTorus) }
    }

    pub fn affinized(ell: usize, nu: usize, q: &[i64], window: i64) -> Self {
        Self { construction: Construction::Affinized, ..Self::quantum_torus(ell, nu, q, window) }
    }

    pub fn classical(t: RootType, rank: usize) -> Self {
        Self { root_type: t, rank, window: 0, ..Self::new(Construction::SpClassical) }
    }

    fn sign_matrix(&self) -> Result<SignMatrix> {
        if self.q.is_empty() {
            return Ok(SignMatrix::trivial(self.nu));
        }
        SignMatrix::from_upper(self.nu, &self.q)
    }

    /// Checks parameters without building anything.
    pub fn validate(&self) -> Result<()> {
        if self.window < 0 {
            return Err(Error::InvalidArgument("window must be non-negative".into()));
        }
        match self.construction {
            Construction::QuantumTorus | Construction::Affinized => {
                if self.ell < 2 {
                    return Err(Error::InvalidArgument("ell must be at least 2".into()));
                }
                if self.nu > 4 {
                    return Err(Error::InvalidArgument("nu must be at most 4".into()));
                }
                self.sign_matrix()?;
                if !self.primes.is_empty() {
                    return Err(Error::InvalidArgument("--primes only applies to sqrt-extension".into()));
                }
            }
            _ => {
                if self.nu != 0 {
                    return Err(Error::InvalidArgument(format!("{} has nullity zero; use --nu 0", self.construction)));
                }
                if !self.q.is_empty() {
                    return Err(Error::InvalidArgument("--q only applies to quantum-torus constructions".into()));
                }
                if !matches!(self.root_type, RootType::B | RootType::C | RootType::D) {
                    return Err(Error::InvalidArgument(format!("type {} has no matrix realisation here", self.root_type)));
                }
                if !self.root_type.rank_is_valid(self.rank) {
                    return Err(Error::InvalidArgument(format!("rank {} is invalid for type {}", self.rank, self.root_type)));
                }
                if self.construction != Construction::SqrtExtension && !self.primes.is_empty() {
                    return Err(Error::InvalidArgument("--primes only applies to sqrt-extension".into()));
                }
            }
        }
        Ok(())
    }
}

/// A built algebra together with the spec it came from.
pub struct Instance {
    pub spec: InstanceSpec,
    pub algebra: Arc<dyn GradedLieAlgebra>,
    /// The algebra before affinization, when there is one.
    pub base: Option<Arc<dyn GradedLieAlgebra>>,
}

pub fn build_instance(spec: &InstanceSpec) -> Result<Instance> {
    spec.validate()?;
    let variant = if spec.full_skew { SkewVariant::Full } else { SkewVariant::Derived };
    let classical = || -> Result<Arc<dyn GradedLieAlgebra>> {
        Ok(Arc::new(ClassicalMatrixAlgebra::new(spec.root_type, spec.rank, &spec.primes)?))
    };
    let (algebra, base): (Arc<dyn GradedLieAlgebra>, Option<Arc<dyn GradedLieAlgebra>>) = match spec.construction {
        Construction::QuantumTorus => (Arc::new(QuantumTorusAlgebra::new(spec.ell, spec.sign_matrix()?, variant)?), None),
        Construction::Affinized => {
            let g: Arc<dyn GradedLieAlgebra> = Arc::new(QuantumTorusAlgebra::new(spec.ell, spec.sign_matrix()?, variant)?);
            (Arc::new(affinize(g.clone())), Some(g))
        }
        Construction::SpClassical | Construction::SqrtExtension => (classical()?, None),
        Construction::CocycleExtension => {
            let base = classical()?;
            let ext = build_extension_by_cocycle(ExtensionSpec::central(base.clone(), 2), 0)?;
            (Arc::new(ext), Some(base))
        }
    };
    Ok(Instance { spec: spec.clone(), algebra, base })
}

impl Instance {
    pub fn window(&self) -> Result<RootSystemWindow> {
        decompose_window(self.algebra.as_ref(), self.spec.window)
    }

    pub fn describe(&self, window: &RootSystemWindow) -> Value {
        let (t, r) = window.root_type;
        json!({
            "spec": self.spec,
            "label": self.algebra.label(),
            "type": t.to_string(),
            "rank": r,
            "roots": window.len(),
            "nullity": nullity(window),
        })
    }
}

fn report_json(rep: &AxiomReport) -> Value {
    serde_json::to_value(rep).expect("report serializes")
}

/// Outcome of a verification run.
pub struct Verification {
    pub report: Value,
    pub passed: bool,
}

fn push_witnesses(witnesses: &mut Vec<Value>, suite: &str, rep: &AxiomReport) {
    for r in rep.failures() {
        if let Verdict::Fail { witness } = &r.verdict {
            witnesses.push(json!({ "suite": suite, "axiom": r.axiom, "witness": witness }));
        }
    }
}

/// Build the instance, run each suite and collect a JSON report with keys
/// `instance`, `suite_results` and `witnesses`.
pub fn run_verification(spec: &InstanceSpec, suites: &[Suite]) -> Result<Verification> {
    let inst = build_instance(spec)?;
    let suites = if suites.is_empty() { spec.construction.default_suites() } else { suites.to_vec() };
    let window = inst.window()?;
    let alg = inst.algebra.as_ref();
    let mut results = BTreeMap::new();
    let mut witnesses = Vec::new();
    let mut passed = true;
    for suite in suites {
        let (value, ok) = match suite {
            Suite::T => {
                let rep = check_t(alg, &window, spec.seed);
                push_witnesses(&mut witnesses, "T", &rep);
                (report_json(&rep), rep.passed())
            }
            Suite::D => {
                // graded axioms concern the algebra before affinization
                let (g, gw) = match (&inst.base, spec.construction) {
                    (Some(b), Construction::Affinized) => (b.clone(), decompose_window(b.as_ref(), spec.window)?),
                    _ => (inst.algebra.clone(), window.clone()),
                };
                let rep = check_d(g.as_ref(), &gw, spec.seed);
                push_witnesses(&mut witnesses, "D", &rep);
                (report_json(&rep), rep.passed())
            }
            Suite::Ears => {
                let set = RootSet::from_window(&window);
                let rep = check_ears_axioms(&set);
                let sets = support_sets(&set);
                for r in &rep.results {
                    if let Verdict::Fail { witness } = &r.verdict {
                        witnesses.push(json!({ "suite": "EARS", "axiom": r.axiom, "witness": witness }));
                    }
                }
                let ok = rep.passed() && sets.partition && sets.containment && sets.span_identity;
                (json!({ "axioms": rep, "support": sets }), ok)
            }
            Suite::Serre => {
                let rep = serre_check(alg, &window)?;
                if let Verdict::Fail { witness } = rep.verdict() {
                    witnesses.push(json!({ "suite": "SERRE", "axiom": "relations", "witness": witness }));
                }
                (json!({ "verdict": rep.verdict(), "report": rep }), rep.passed())
            }
            Suite::Tame => {
                let rep = tameness_check(alg, &window)?;
                if let Verdict::Fail { witness } = &rep.verdict {
                    witnesses.push(json!({ "suite": "TAME", "axiom": "centralizer", "witness": witness }));
                }
                (serde_json::to_value(&rep).expect("report serializes"), rep.tame())
            }
            Suite::Props => {
                let rep = props_check(alg, &window, spec.seed, 200);
                push_witnesses(&mut witnesses, "PROPS", &rep);
                (report_json(&rep), rep.passed())
            }
        };
        passed &= ok;
        results.insert(suite.name().to_string(), json!({ "passed": ok, "result": value }));
    }
    let report = json!({
        "instance": inst.describe(&window),
        "suite_results": results,
        "witnesses": witnesses,
    });
    Ok(Verification { report, passed })
}

/// Root records sorted by finite then lattice part, one JSON object per
/// line, followed by a footer line.
pub fn export_string(spec: &InstanceSpec) -> Result<String> {
    let inst = build_instance(spec)?;
    let window = inst.window()?;
    Ok(export_window_string(&window))
}

pub fn export_window_string(window: &RootSystemWindow) -> String {
    let mut out = String::new();
    for r in window.roots() {
        out.push_str(&window.export_record(r).to_string());
        out.push('\n');
    }
    let (t, rank) = window.root_type;
    let footer = json!({ "nullity": nullity(window), "type": t.to_string(), "rank": rank, "window": window.window });
    out.push_str(&footer.to_string());
    out.push('\n');
    out
}

pub fn export_window(spec: &InstanceSpec, path: &std::path::Path) -> Result<()> {
    let s = export_string(spec)?;
    std::fs::write(path, s)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_parse() {
        assert_eq!(parse_suites("T,ears").unwrap(), vec![Suite::T, Suite::Ears]);
        assert!(parse_suites("X").is_err());
    }

    #[test]
    fn invalid_q_rejected() {
        let spec = InstanceSpec::affinized(2, 2, &[5], 1);
        let err = build_instance(&spec).err().unwrap();
        assert!(err.to_string().contains("q entries must be ±1"), "{err}");
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = InstanceSpec::affinized(2, 2, &[-1], 2);
        let s = serde_json::to_string(&spec).unwrap();
        assert!(s.contains("\"construction\":\"affinized\""));
        let back: InstanceSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, spec);
        let minimal: InstanceSpec = serde_json::from_str(r#"{"construction":"sp-classical"}"#).unwrap();
        assert_eq!(minimal.rank, 2);
    }

    #[test]
    fn nu_zero_export_has_nine_records() {
        let s = export_string(&InstanceSpec::classical(RootType::C, 2)).unwrap();
        assert_eq!(s.lines().count(), 10);
        assert!(s.lines().last().unwrap().contains("\"nullity\":0"));
    }
}
