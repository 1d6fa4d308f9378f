//! The report every subcommand fills a part of.

use serde::{Deserialize, Serialize};
use tricl_core::classgroup::{
    class_group, isolated_singularity_report, n_tilde, predicates, ClassGroupReport, IsolatedSingularityReport,
    Predicates,
};
use tricl_core::coxring::{duval_diagram, is_hyperplatonic, iterate_cox_rings, total_coordinate_space, DuValDiagram};
use tricl_core::type1::{adjust_type1, class_group_type1, lift_to_type2, Type1Case, Type1Variety};
use tricl_core::variety::AdjustmentRecord;
use tricl_core::{
    ClassGroup, CoxConstruction, Error, IterationChain, Method, PlatonicTriple, RationalityClass, TrinomialVariety,
};

use crate::error::CliError;
use crate::spec::VarietySpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Adjust,
    Invariants,
    ClassGroup(Method),
    CoxRing,
    Iterate,
    DuVal,
    Type1ClassGroup,
    Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsSection {
    pub frak_l: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<u64>>,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_tilde: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Type1Section {
    pub case: Type1Case,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_group: Option<ClassGroup>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift: Option<TrinomialVariety>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift_class_group: Option<ClassGroup>,
}

/// Sections absent from the JSON were not requested or do not apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: VarietySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_is_adjusted: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjusted: Option<VarietySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjustment: Option<AdjustmentRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rationality: Option<RationalityClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_group: Option<ClassGroupReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicates: Option<Predicates>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isolated_singularity: Option<IsolatedSingularityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperplatonic: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bpt: Option<PlatonicTriple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cox_ring: Option<CoxConstruction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<IterationChain>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duval: Option<DuValDiagram>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type1: Option<Type1Section>,
    /// Why optional sections were left out of a full report.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    fn new(input: &VarietySpec) -> Self {
        Report {
            input: input.clone(),
            input_is_adjusted: None,
            adjusted: None,
            adjustment: None,
            relations: None,
            invariants: None,
            rationality: None,
            class_group: None,
            predicates: None,
            isolated_singularity: None,
            hyperplatonic: None,
            bpt: None,
            cox_ring: None,
            chain: None,
            duval: None,
            type1: None,
            notes: Vec::new(),
        }
    }
}

fn trinomial_invariants(v: &TrinomialVariety) -> Result<InvariantsSection, CliError> {
    let inv = v.invariants();
    let n = match v.rationality_class()? {
        RationalityClass::NonRational => None,
        _ => Some(n_tilde(v)?),
    };
    Ok(InvariantsSection {
        frak_l: inv.frak_l,
        c: inv.c,
        dimension: v.dimension(),
        n_tilde: n,
    })
}

fn type1_invariants(v: &Type1Variety) -> InvariantsSection {
    InvariantsSection {
        frak_l: v.frak_l(),
        c: Some(v.c_values()),
        dimension: v.dimension(),
        n_tilde: Some(v.n_tilde()),
    }
}

/// Keeps hard failures, turns a precondition failure into a note.
fn optional<T>(notes: &mut Vec<String>, what: &str, r: Result<T, Error>) -> Result<Option<T>, CliError> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(e @ Error::InternalConsistency(_)) => Err(e.into()),
        Err(e) => {
            notes.push(format!("{what}: {e}"));
            Ok(None)
        }
    }
}

pub fn run_command(cmd: Command, spec: &VarietySpec) -> Result<Report, CliError> {
    match spec {
        VarietySpec::Trinomial(v) => run_trinomial(cmd, spec, v),
        VarietySpec::Type1(v) => run_type1(cmd, spec, v),
    }
}

fn run_trinomial(cmd: Command, spec: &VarietySpec, input: &TrinomialVariety) -> Result<Report, CliError> {
    let mut report = Report::new(spec);
    report.input_is_adjusted = Some(input.is_adjusted());
    let adjustment = input.adjust();
    let v = adjustment.variety.clone();
    if cmd != Command::Validate {
        report.adjusted = Some(VarietySpec::Trinomial(v.clone()));
        report.relations = Some(v.render_relations());
    }
    let class = v.rationality_class()?;
    match cmd {
        Command::Validate => {
            report.relations = Some(input.render_relations());
        }
        Command::Adjust => report.adjustment = Some(adjustment.record),
        Command::Invariants => {
            report.invariants = Some(trinomial_invariants(&v)?);
            report.rationality = Some(class);
        }
        Command::ClassGroup(method) => {
            report.rationality = Some(class);
            let cg = class_group(&v, method)?;
            if cg.group == ClassGroup::NotFinitelyGenerated {
                return Err(CliError::NotFinitelyGenerated);
            }
            report.class_group = Some(cg);
        }
        Command::CoxRing => {
            if !class.is_rational() {
                return Err(Error::NotRational.into());
            }
            report.rationality = Some(class);
            report.cox_ring = Some(total_coordinate_space(&v)?);
        }
        Command::Iterate => {
            report.chain = Some(iterate_cox_rings(&v)?);
        }
        Command::DuVal => {
            if !class.is_rational() {
                return Err(Error::NotRational.into());
            }
            let d = duval_diagram(&v)?;
            report.hyperplatonic = Some(true);
            report.bpt = Some(d.x_triple);
            report.duval = Some(d);
        }
        Command::Type1ClassGroup => {
            return Err(CliError::WrongKind { expected: "type1", actual: "trinomial" });
        }
        Command::Report => {
            report.adjustment = Some(adjustment.record);
            report.invariants = Some(trinomial_invariants(&v)?);
            report.rationality = Some(class);
            report.class_group = Some(class_group(&v, Method::Both)?);
            report.predicates = Some(predicates(&v)?);
            let notes = &mut report.notes;
            report.isolated_singularity =
                optional(notes, "isolated singularity", isolated_singularity_report(&v))?;
            let bpt = is_hyperplatonic(&v)?;
            report.hyperplatonic = Some(bpt.is_some());
            report.bpt = bpt;
            if class.is_rational() {
                report.cox_ring = Some(total_coordinate_space(&v)?);
                report.chain = optional(notes, "iteration", iterate_cox_rings(&v))?;
                if bpt.is_some() {
                    report.duval = optional(notes, "Du Val diagram", duval_diagram(&v))?;
                }
            } else {
                notes.push("not rational: no Cox ring data".into());
            }
        }
    }
    Ok(report)
}

fn run_type1(cmd: Command, spec: &VarietySpec, input: &Type1Variety) -> Result<Report, CliError> {
    let mut report = Report::new(spec);
    report.input_is_adjusted = Some(input.is_adjusted());
    let v = adjust_type1(input);
    if cmd != Command::Validate {
        report.adjusted = Some(VarietySpec::Type1(v.clone()));
    }
    match cmd {
        Command::Validate | Command::Adjust => {}
        Command::Invariants => {
            report.invariants = Some(type1_invariants(&v));
            report.type1 = Some(Type1Section {
                case: v.case()?,
                class_group: None,
                lift: None,
                lift_class_group: None,
            });
        }
        Command::Type1ClassGroup | Command::Report => {
            let group = class_group_type1(&v)?;
            if cmd == Command::Type1ClassGroup && group == ClassGroup::NotFinitelyGenerated {
                return Err(CliError::NotFinitelyGenerated);
            }
            let lift = lift_to_type2(&v)?;
            let lift_group = tricl_core::classgroup::class_group_formula(&lift.adjust().variety)?;
            report.invariants = Some(type1_invariants(&v));
            report.type1 = Some(Type1Section {
                case: v.case()?,
                class_group: Some(group),
                lift: Some(lift),
                lift_class_group: Some(lift_group),
            });
        }
        _ => return Err(CliError::WrongKind { expected: "trinomial", actual: "type1" }),
    }
    Ok(report)
}
