//! JSON scenarios: parsing, validation and the assembled run context.

use std::path::Path;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::action::ActionTable;
use crate::approx::{approximate_constant, covering_number, thickness_number, CoverWitness, SolveMode, ThicknessWitness};
use crate::certificate::{ChainCertificate, DescentCertificate, QuotientModel};
use crate::descent::{basic_descent, extract_model, recursive_chain, DescentParams, DEFAULT_CHAIN_DEPTH};
use crate::error::{Error, Result};
use crate::group::{build_group, GroupFamily, GroupTable};
use crate::measure::{check_mean_axioms, parse_rational, AxiomReport, GroupMean, SpaceMean};
use crate::subset::{ESet, GSet};
use crate::systems::{mu_thickness_bound_check, MuThicknessReport, MwSystem, SystemKind};
use crate::verify::VerifyContext;

/// An element given by index or by generator label (`"r"`, `"x"`, `"1.0"`, ...).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRef {
    Index(usize),
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    /// `{-r, ..., r}` in a cyclic group.
    Interval(i64),
    /// `(S ∪ S⁻¹ ∪ {e})^radius`.
    Ball { generators: Vec<ElemRef>, radius: usize },
    /// `{g_1^{c_1} ⋯ g_d^{c_d} : |c_i| ≤ r_i}`.
    Progression { generators: Vec<ElemRef>, radii: Vec<usize> },
    Elements(Vec<ElemRef>),
    /// Subgroup generated by the listed elements.
    Subgroup(Vec<ElemRef>),
    /// `X^exponent`.
    Power { set: Box<SetSpec>, exponent: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionSpec {
    Regular,
    DihedralVertices,
    /// Left multiplication on the cosets of the subgroup generated by these.
    Cosets { generators: Vec<ElemRef> },
    Table(Vec<Vec<usize>>),
    Union(Vec<ActionSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Points(Vec<usize>),
    All(AllPoints),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AllPoints {
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasureSpec {
    Counting,
    Weights(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub system: SystemKind,
    #[serde(default = "default_depth_budget")]
    pub depth_budget: usize,
}

fn default_depth_budget() -> usize {
    4
}

impl Default for SystemSpec {
    fn default() -> Self {
        SystemSpec { system: SystemKind::Thick, depth_budget: default_depth_budget() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    #[serde(default = "default_depth")]
    pub depth: usize,
    #[serde(default = "default_candidates")]
    pub candidates: usize,
    #[serde(default = "default_chain_depth")]
    pub chain_depth: usize,
}

fn default_depth() -> usize {
    crate::descent::DEFAULT_MAX_DEPTH
}

fn default_candidates() -> usize {
    crate::descent::DEFAULT_MAX_CANDIDATES
}

fn default_chain_depth() -> usize {
    DEFAULT_CHAIN_DEPTH
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { depth: default_depth(), candidates: default_candidates(), chain_depth: default_chain_depth() }
    }
}

fn default_measure() -> MeasureSpec {
    MeasureSpec::Counting
}

fn default_action() -> ActionSpec {
    ActionSpec::Regular
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub group: GroupFamily,
    #[serde(default = "default_action")]
    pub action: ActionSpec,
    pub lambda: SetSpec,
    #[serde(default)]
    pub gamma: Option<SetSpec>,
    #[serde(default)]
    pub a: Option<SetSpec>,
    #[serde(default)]
    pub c: Option<SetSpec>,
    pub b: PointSpec,
    #[serde(default)]
    pub w: Option<SetSpec>,
    #[serde(default = "default_measure")]
    pub group_measure: MeasureSpec,
    #[serde(default = "default_measure")]
    pub space_measure: MeasureSpec,
    #[serde(default)]
    pub system: SystemSpec,
    pub n: usize,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default)]
    pub seed: u64,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

fn invalid(field: &str, message: impl Into<String>) -> Error {
    Error::Validation { field: field.into(), message: message.into() }
}

fn resolve(group: &GroupTable, field: &str, r: &ElemRef) -> Result<usize> {
    match r {
        ElemRef::Index(i) if *i < group.order() => Ok(*i),
        ElemRef::Index(i) => Err(invalid(field, format!("element {i} out of range for order {}", group.order()))),
        ElemRef::Label(l) if l == "e" => Ok(group.identity()),
        ElemRef::Label(l) => group.label(l).ok_or_else(|| invalid(field, format!("unknown generator label `{l}`"))),
    }
}

fn power_of(group: &GroupTable, g: usize, c: i64) -> usize {
    let base = if c < 0 { group.inverse(g) } else { g };
    (0..c.unsigned_abs()).fold(group.identity(), |acc, _| group.mul(acc, base))
}

fn build_set(group: &GroupTable, field: &str, spec: &SetSpec) -> Result<GSet> {
    let refs = |rs: &[ElemRef]| rs.iter().map(|r| resolve(group, field, r)).collect::<Result<Vec<_>>>();
    match spec {
        SetSpec::Interval(r) => {
            if !matches!(group.family(), GroupFamily::Cyclic(_)) {
                return Err(invalid(field, "interval needs a cyclic group"));
            }
            if *r < 0 {
                return Err(invalid(field, "interval radius must be nonnegative"));
            }
            let n = group.order() as i64;
            Ok(GSet::from_elements(group.order(), (-r..=*r).map(|x| x.rem_euclid(n) as usize)))
        }
        SetSpec::Ball { generators, radius } => {
            if *radius == 0 {
                return Ok(group.identity_set());
            }
            let gens = group.symmetrize(&group.set_of(refs(generators)?)?);
            group.power_set(&gens, *radius)
        }
        SetSpec::Progression { generators, radii } => {
            if generators.len() != radii.len() {
                return Err(invalid(field, "progression needs one radius per generator"));
            }
            let gens = refs(generators)?;
            let mut acc = group.identity_set();
            for (&g, &r) in gens.iter().zip(radii) {
                let r = r as i64;
                let line = group.set_of((-r..=r).map(|c| power_of(group, g, c)))?;
                acc = group.product_set(&acc, &line)?;
            }
            Ok(acc)
        }
        SetSpec::Elements(xs) => group.set_of(refs(xs)?),
        SetSpec::Subgroup(xs) => {
            let gens = group.set_of(refs(xs)?)?;
            if gens.is_empty() {
                return Ok(group.identity_set());
            }
            group.generated_subgroup(&gens)
        }
        SetSpec::Power { set, exponent } => {
            if *exponent == 0 {
                return Err(invalid(field, "exponent must be positive"));
            }
            group.power_set(&build_set(group, field, set)?, *exponent)
        }
    }
}

fn build_action(group: &Arc<GroupTable>, spec: &ActionSpec) -> Result<ActionTable> {
    match spec {
        ActionSpec::Regular => Ok(ActionTable::regular(Arc::clone(group))),
        ActionSpec::DihedralVertices => ActionTable::dihedral_vertices(Arc::clone(group)),
        ActionSpec::Cosets { generators } => {
            let gens = generators.iter().map(|r| resolve(group, "action", r)).collect::<Result<Vec<_>>>()?;
            let h = if gens.is_empty() { group.identity_set() } else { group.generated_subgroup(&group.set_of(gens)?)? };
            ActionTable::cosets(Arc::clone(group), &h)
        }
        ActionSpec::Table(rows) => ActionTable::from_table(Arc::clone(group), rows.clone()),
        ActionSpec::Union(parts) => {
            let parts = parts.iter().map(|p| build_action(group, p)).collect::<Result<Vec<_>>>()?;
            ActionTable::disjoint_union(&parts)
        }
    }
}

fn weights(field: &str, spec: &MeasureSpec, size: usize) -> Result<Vec<BigRational>> {
    match spec {
        MeasureSpec::Counting => Ok(vec![BigRational::from_integer(1.into()); size]),
        MeasureSpec::Weights(ws) => {
            if ws.len() != size {
                return Err(invalid(field, format!("expected {size} weights, found {}", ws.len())));
            }
            ws.iter().map(|w| parse_rational(w).map_err(|e| invalid(field, e.to_string()))).collect()
        }
    }
}

/// Command-line overrides applied on top of a scenario.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub budget_depth: Option<usize>,
    pub budget_candidates: Option<usize>,
    pub seed: Option<u64>,
    pub exact_only: bool,
}

/// A validated scenario with every object built.
#[derive(Debug)]
pub struct Context {
    pub scenario: Scenario,
    pub group: Arc<GroupTable>,
    pub action: Arc<ActionTable>,
    pub group_mean: Arc<GroupMean>,
    pub space_mean: Arc<SpaceMean>,
    pub lambda: GSet,
    pub gamma: GSet,
    pub a: GSet,
    pub c: GSet,
    pub b: ESet,
    pub w: GSet,
    pub system: MwSystem,
    pub params: DescentParams,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomsReport {
    pub group_order: usize,
    pub associative: bool,
    pub identity_and_inverses: bool,
    pub action_axioms: bool,
    pub group_measure: AxiomReport,
    pub space_measure: AxiomReport,
    pub errors: Vec<String>,
}

impl AxiomsReport {
    pub fn all_pass(&self) -> bool {
        self.associative
            && self.identity_and_inverses
            && self.action_axioms
            && self.group_measure.all_pass()
            && self.space_measure.all_pass()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverRow {
    pub covered: String,
    pub by: String,
    pub exact: CoverWitness,
    pub greedy_k: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThicknessRow {
    pub set: String,
    pub within: String,
    pub exact: ThicknessWitness,
    pub greedy_k: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstantsReport {
    pub approximate_constant: CoverWitness,
    pub covers: Vec<CoverRow>,
    pub thickness: Vec<ThicknessRow>,
    pub mu_thickness: Option<MuThicknessReport>,
    pub mu_thickness_error: Option<String>,
}

impl ConstantsReport {
    pub fn all_pass(&self) -> bool {
        self.covers.iter().all(|r| r.greedy_k >= r.exact.k)
            && self.thickness.iter().all(|r| r.greedy_k <= r.exact.k || !r.exact.exact)
            && self.mu_thickness.as_ref().is_none_or(|m| m.passed())
            && self.mu_thickness_error.is_none()
    }

    pub fn all_exact(&self) -> bool {
        self.approximate_constant.exact
            && self.covers.iter().all(|r| r.exact.exact)
            && self.thickness.iter().all(|r| r.exact.exact)
    }
}

impl Context {
    pub fn from_json(text: &str) -> Result<Self> {
        Self::build(Scenario::from_json(text)?, &Overrides::default())
    }

    pub fn from_path(path: &Path, overrides: &Overrides) -> Result<Self> {
        Self::build(Scenario::from_path(path)?, overrides)
    }

    pub fn build(mut scenario: Scenario, overrides: &Overrides) -> Result<Self> {
        if let Some(d) = overrides.budget_depth {
            scenario.budgets.depth = d;
        }
        if let Some(c) = overrides.budget_candidates {
            scenario.budgets.candidates = c;
        }
        if let Some(s) = overrides.seed {
            scenario.seed = s;
        }
        if scenario.n == 0 {
            return Err(invalid("n", "must be positive"));
        }
        let mut warnings = Vec::new();
        let group = Arc::new(build_group(&scenario.group).map_err(|e| invalid("group", e.to_string()))?);
        let action = Arc::new(build_action(&group, &scenario.action).map_err(|e| match e {
            Error::Validation { .. } => e,
            other => invalid("action", other.to_string()),
        })?);

        let mut lambda = build_set(&group, "lambda", &scenario.lambda)?;
        if lambda.is_empty() {
            return Err(invalid("lambda", "Λ is empty"));
        }
        if !group.is_symmetric(&lambda) || !lambda.contains(group.identity()) {
            lambda = group.symmetrize(&lambda);
            warnings.push("lambda was not symmetric with identity; symmetrized".into());
        }
        let gamma = match &scenario.gamma {
            Some(spec) => build_set(&group, "gamma", spec)?,
            None => group.generated_subgroup(&lambda)?,
        };
        let a = match &scenario.a {
            Some(spec) => build_set(&group, "a", spec)?,
            None => lambda.clone(),
        };
        if a.is_empty() {
            return Err(invalid("a", "A is empty"));
        }
        let c = match &scenario.c {
            Some(spec) => build_set(&group, "c", spec)?,
            None => group.product_set(&lambda, &a)?,
        };
        let b = match &scenario.b {
            PointSpec::Points(ps) => action.set_of(ps.iter().copied()).map_err(|e| invalid("b", e.to_string()))?,
            PointSpec::All(_) => action.full_set(),
        };
        if b.is_empty() {
            return Err(invalid("b", "B is empty"));
        }
        let w = match &scenario.w {
            Some(spec) => build_set(&group, "w", spec)?,
            None => a.clone(),
        };

        let gw = weights("group_measure", &scenario.group_measure, group.order())?;
        let group_mean = Arc::new(
            GroupMean::weighted_on_group(Arc::clone(&group), gw).map_err(|e| invalid("group_measure", e.to_string()))?,
        );
        let sw = weights("space_measure", &scenario.space_measure, action.space_size())?;
        let space_mean = Arc::new(
            SpaceMean::weighted_on_space(Arc::clone(&action), sw).map_err(|e| invalid("space_measure", e.to_string()))?,
        );
        if let Some((g, x)) = group_mean.invariance_witness() {
            warnings.push(format!("group measure is not left-invariant: weight({g}·{x}) differs"));
        }
        if let Some((g, x)) = space_mean.invariance_witness() {
            return Err(invalid("space_measure", format!("weights are not invariant: point {x} moved by {g}")));
        }

        let depth = scenario.system.depth_budget;
        let system = match scenario.system.system {
            SystemKind::Mu => MwSystem::mu_system(Arc::clone(&group_mean), lambda.clone(), gamma.clone(), depth),
            SystemKind::Thick => MwSystem::thick_system(Arc::clone(&group), lambda.clone(), gamma.clone(), depth),
            SystemKind::Generic => MwSystem::generic_system(Arc::clone(&group), lambda.clone(), gamma.clone(), depth),
        }
        .map_err(|e| invalid("system", e.to_string()))?;
        let params = DescentParams::with_budget(scenario.n, scenario.budgets.depth, scenario.budgets.candidates)
            .map_err(|e| invalid("budgets", e.to_string()))?
            .exact_only(overrides.exact_only);

        Ok(Context {
            scenario,
            group,
            action,
            group_mean,
            space_mean,
            lambda,
            gamma,
            a,
            c,
            b,
            w,
            system,
            params,
            warnings,
        })
    }

    pub fn axioms(&self, samples: usize) -> AxiomsReport {
        let mut errors = Vec::new();
        let mut record = |r: Result<()>| match r {
            Ok(()) => true,
            Err(e) => {
                errors.push(e.to_string());
                false
            }
        };
        let associative = record(self.group.check_associativity(self.scenario.seed));
        let identity_and_inverses = record(self.group.check_identity_and_inverses());
        let action_axioms = record(self.action.check_axioms());
        AxiomsReport {
            group_order: self.group.order(),
            associative,
            identity_and_inverses,
            action_axioms,
            group_measure: check_mean_axioms(&self.group_mean, samples, self.scenario.seed),
            space_measure: check_mean_axioms(&self.space_mean, samples, self.scenario.seed.wrapping_add(1)),
            errors,
        }
    }

    pub fn constants(&self) -> Result<ConstantsReport> {
        let g = &self.group;
        let lambda2 = g.product_set(&self.lambda, &self.lambda)?;
        let pairs: [(&str, &GSet, &str, &GSet); 4] = [
            ("lambda^2", &lambda2, "lambda", &self.lambda),
            ("c", &self.c, "a", &self.a),
            ("a", &self.a, "lambda", &self.lambda),
            ("lambda", &self.lambda, "a", &self.a),
        ];
        let mut covers = Vec::new();
        for (covered_name, covered, by_name, by) in pairs {
            let exact = covering_number(g, by, covered, SolveMode::Exact)?;
            let greedy = covering_number(g, by, covered, SolveMode::Greedy)?;
            covers.push(CoverRow { covered: covered_name.into(), by: by_name.into(), exact, greedy_k: greedy.k });
        }
        let mut thickness = Vec::new();
        for (set_name, set, within_name, within) in
            [("lambda", &self.lambda, "lambda^2", &lambda2), ("a", &self.a, "c", &self.c)]
        {
            let exact = thickness_number(g, set, within, SolveMode::Exact)?;
            let greedy = thickness_number(g, set, within, SolveMode::Greedy)?;
            thickness.push(ThicknessRow { set: set_name.into(), within: within_name.into(), exact, greedy_k: greedy.k });
        }
        let (mu_thickness, mu_thickness_error) =
            match mu_thickness_bound_check(&self.lambda, &self.a, &self.c, &self.group_mean, &self.w, None) {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e.to_string())),
            };
        Ok(ConstantsReport {
            approximate_constant: approximate_constant(g, &self.lambda)?,
            covers,
            thickness,
            mu_thickness,
            mu_thickness_error,
        })
    }

    pub fn descent(&self) -> Result<DescentCertificate> {
        basic_descent(&self.lambda, &self.gamma, &self.a, &self.b, &self.space_mean, &self.system, &self.params)
    }

    pub fn chain(&self) -> Result<ChainCertificate> {
        recursive_chain(
            &self.lambda,
            &self.a,
            &self.b,
            &self.space_mean,
            &self.system,
            self.scenario.n,
            self.scenario.budgets.chain_depth,
            &self.params,
        )
    }

    pub fn model(&self) -> Result<QuotientModel> {
        let chain = self.chain()?;
        extract_model(&self.group, &chain, &self.lambda, self.scenario.n)
    }

    pub fn verify_context(&self) -> VerifyContext {
        VerifyContext {
            group: Arc::clone(&self.group),
            action: Arc::clone(&self.action),
            space_weights: self.space_mean.weights().to_vec(),
            group_weights: Some(self.group_mean.weights().to_vec()),
            system: self.scenario.system.system,
            lambda: self.lambda.clone(),
            gamma: self.gamma.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            n: self.scenario.n,
            max_depth: self.scenario.budgets.depth,
            max_candidates: self.scenario.budgets.candidates,
            chain_depth: self.scenario.budgets.chain_depth,
        }
    }
}
