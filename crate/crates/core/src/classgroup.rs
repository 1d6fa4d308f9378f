//! Divisor class groups: closed formulas, the Smith-form cokernel of the
//! Cox ring grading, compulsory torsion, order checks and the derived
//! predicates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coxring::{total_coordinate_space, CoxConstruction};
use crate::error::{Error, Result};
use crate::linalg::{canonical_group, cokernel, matrix_a, AbelianGroup, Cokernel, Matrix};
use crate::variety::{RationalityClass, TrinomialVariety};
use crate::{FgAbelianGroup, Int, IntMatrix};

/// A class group, which may fail to be finitely generated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "group", rename_all = "snake_case")]
pub enum ClassGroup {
    Group(FgAbelianGroup),
    NotFinitelyGenerated,
}

impl ClassGroup {
    pub fn as_group(&self) -> Option<&FgAbelianGroup> {
        match self {
            ClassGroup::Group(g) => Some(g),
            ClassGroup::NotFinitelyGenerated => None,
        }
    }
}

impl fmt::Display for ClassGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassGroup::Group(g) => write!(f, "{g}"),
            ClassGroup::NotFinitelyGenerated => write!(f, "not finitely generated"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Formula,
    Snf,
    Both,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formula" => Ok(Method::Formula),
            "snf" => Ok(Method::Snf),
            "both" => Ok(Method::Both),
            _ => Err(Error::InvalidInput(format!("unknown method {s:?}"))),
        }
    }
}

fn big(x: u64) -> Int {
    BigInt::from(x)
}

/// Rational, non-factorial, at least three blocks; returns the class.
fn require_graded(v: &TrinomialVariety) -> Result<RationalityClass> {
    match v.rationality_class()? {
        RationalityClass::NonRational => Err(Error::NotRational),
        RationalityClass::Factorial => Err(Error::Factorial),
        class => Ok(class),
    }
}

fn n_tilde_from(c: &[u64], sizes: &[usize]) -> usize {
    let total: u128 = c
        .iter()
        .zip(sizes)
        .map(|(&c, &n)| (c as u128 - 1) * (n as u128 - 1))
        .sum();
    usize::try_from(total).expect("rank exceeds the address space")
}

/// `sum_i ((c(i) - 1) n_i - c(i) + 1)` for adjusted rational data; 0 for
/// factorial data.
pub fn n_tilde(v: &TrinomialVariety) -> Result<usize> {
    match v.rationality_class()? {
        RationalityClass::NonRational => Err(Error::NotRational),
        RationalityClass::Factorial => Ok(0),
        _ => {
            let c = v.invariants().c.expect("rational data has c values");
            Ok(n_tilde_from(&c, &v.block_sizes()))
        }
    }
}

/// The class group from the closed formulas.
pub fn class_group_formula(v: &TrinomialVariety) -> Result<ClassGroup> {
    let class = v.rationality_class()?;
    let l = v.frak_l();
    let group = match class {
        RationalityClass::Factorial => AbelianGroup::trivial(),
        RationalityClass::NonRational => return Ok(ClassGroup::NotFinitelyGenerated),
        RationalityClass::CaseII { c } => {
            let factors: Vec<Int> = l[2..]
                .iter()
                .flat_map(|&x| std::iter::repeat_n(big(x), c as usize - 1))
                .collect();
            canonical_group(&factors, n_tilde(v)?)
        }
        RationalityClass::CaseIII => {
            let mut factors = vec![big(l[0]) * big(l[1]) * big(l[2]) / big(4)];
            for &x in &l[3..] {
                factors.extend(std::iter::repeat_n(big(x), 3));
            }
            canonical_group(&factors, n_tilde(v)?)
        }
    };
    Ok(ClassGroup::Group(group))
}

/// Rank of the class group as `n~`, checked against
/// `dim(TCS) - dim(X)`.
pub fn rank_formula(v: &TrinomialVariety) -> Result<usize> {
    require_graded(v)?;
    let formula = n_tilde(v)?;
    let cox = total_coordinate_space(v)?;
    let difference = cox.tcs.dimension() - v.dimension();
    if formula != difference {
        return Err(Error::InternalConsistency(format!(
            "rank formula {formula} differs from dimension difference {difference} for {v}"
        )));
    }
    Ok(formula)
}

fn ctors_closed_form(v: &TrinomialVariety, class: RationalityClass) -> FgAbelianGroup {
    let l = v.frak_l();
    let factors: Vec<Int> = match class {
        RationalityClass::CaseII { c } => l[2..]
            .iter()
            .flat_map(|&x| std::iter::repeat_n(big(x), c as usize - 1))
            .collect(),
        RationalityClass::CaseIII => {
            let mut f = vec![big(l[0] / 2), big(l[1] / 2), big(l[2] / 2)];
            for &x in &l[3..] {
                f.extend(std::iter::repeat_n(big(x), 3));
            }
            f
        }
        _ => unreachable!("compulsory torsion needs a graded variety"),
    };
    canonical_group(&factors, 0)
}

/// `P_0'` of the total coordinate space without the free columns: row `k`
/// is `-l'_0` on the first block and `l'_k` on block `k`.
pub fn tcs_exponent_matrix(cox: &CoxConstruction) -> IntMatrix {
    let blocks = &cox.tcs_blocks;
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for b in blocks {
        offsets.push(acc);
        acc += b.len();
    }
    let mut p = Matrix::zeros(blocks.len() - 1, acc);
    for k in 1..blocks.len() {
        for (j, &x) in blocks[0].iter().enumerate() {
            p[(k - 1, j)] = -big(x);
        }
        for (j, &x) in blocks[k].iter().enumerate() {
            p[(k - 1, offsets[k] + j)] = big(x);
        }
    }
    p
}

/// Compulsory torsion, computed in closed form and as the torsion of the
/// cokernel of `P_0'`; the two must agree.
pub fn compulsory_torsion(v: &TrinomialVariety) -> Result<FgAbelianGroup> {
    let class = require_graded(v)?;
    let closed = ctors_closed_form(v, class);
    let cox = total_coordinate_space(v)?;
    let matrix = tcs_exponent_matrix(&cox);
    let snf = cokernel(&matrix).torsion();
    if closed != snf {
        return Err(Error::InternalConsistency(format!(
            "compulsory torsion {closed} (closed form) != {snf} (Smith form) for {v}; P0' = {matrix}"
        )));
    }
    Ok(closed)
}

/// Column `(block, copy, variable)` of a grading matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradingColumn {
    pub block: usize,
    pub copy: usize,
    pub var: usize,
}

/// The matrix `P` whose cokernel is the class group, together with the
/// Cox construction it is built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingMatrix {
    pub class: RationalityClass,
    pub matrix: IntMatrix,
    pub columns: Vec<GradingColumn>,
    pub cox: CoxConstruction,
}

impl GradingMatrix {
    /// Index of the column for `(block, copy, var)`.
    pub fn column(&self, block: usize, copy: usize, var: usize) -> usize {
        let wanted = GradingColumn { block, copy, var };
        self.columns
            .iter()
            .position(|c| *c == wanted)
            .expect("no such grading column")
    }

    /// `sum_j coefficients[j] e_{0j,1}`.
    fn first_block_vector(&self, coefficients: impl Iterator<Item = Int>) -> Vec<Int> {
        let mut w = vec![Int::zero(); self.matrix.cols()];
        for (j, x) in coefficients.enumerate() {
            w[self.column(0, 0, j)] = x;
        }
        w
    }
}

/// Columns are ordered by block, copy, then variable.
pub fn grading_matrix(v: &TrinomialVariety) -> Result<GradingMatrix> {
    let class = require_graded(v)?;
    let cox = total_coordinate_space(v)?;
    let sizes = v.block_sizes();
    let mut columns = Vec::new();
    let mut offsets = Vec::new();
    for (i, &n) in sizes.iter().enumerate() {
        offsets.push(columns.len());
        for t in 0..cox.c[i] as usize {
            for j in 0..n {
                columns.push(GradingColumn { block: i, copy: t, var: j });
            }
        }
    }
    let width = columns.len();
    let exponents: Vec<Vec<Int>> = cox
        .tcs_exponents
        .iter()
        .map(|l| l.iter().map(|&x| big(x)).collect())
        .collect();

    let matrix = match class {
        RationalityClass::CaseII { .. } => {
            let blocks: Vec<IntMatrix> = exponents
                .iter()
                .enumerate()
                .map(|(i, l)| matrix_a(cox.c[i] as usize, l))
                .collect();
            Matrix::block_diagonal(&blocks)
        }
        RationalityClass::CaseIII => {
            let mut m = Matrix::zeros(0, width);
            for (i, &n) in sizes.iter().enumerate() {
                for j in 0..n {
                    let mut row = vec![Int::zero(); width];
                    for t in 0..cox.c[i] as usize {
                        row[offsets[i] + t * n + j] = Int::one();
                    }
                    m.push_row(row);
                }
            }
            for (i, &n) in sizes.iter().enumerate() {
                for t in 0..cox.c[i] as usize {
                    if (i, t) == (0, 0) {
                        continue;
                    }
                    let mut row = vec![Int::zero(); width];
                    for (j, x) in exponents[0].iter().enumerate() {
                        row[offsets[0] + j] -= x;
                    }
                    for (j, x) in exponents[i].iter().enumerate() {
                        row[offsets[i] + t * n + j] += x;
                    }
                    m.push_row(row);
                }
            }
            m
        }
        _ => unreachable!("require_graded admits only cases II and III"),
    };
    debug_assert_eq!(matrix.cols(), width);
    Ok(GradingMatrix {
        class,
        matrix,
        columns,
        cox,
    })
}

/// The class group as the cokernel of the grading matrix. Free variables
/// have degree zero and do not appear.
pub fn class_group_snf(v: &TrinomialVariety) -> Result<FgAbelianGroup> {
    Ok(cokernel(&grading_matrix(v)?.matrix))
}

/// Order of the degree of the relations, `sum_j l_{0j,1} e_{0j,1}`, in the
/// class group. 1 in case II, 2 in case III.
pub fn relation_degree_order(v: &TrinomialVariety) -> Result<Int> {
    let p = grading_matrix(v)?;
    let w = p.first_block_vector(p.cox.tcs_exponents[0].iter().map(|&x| big(x)));
    Cokernel::new(&p.matrix).order_of(&w).ok_or_else(|| {
        Error::InternalConsistency(format!("relation degree of {v} has infinite order"))
    })
}

/// Order of the class of `D_y = sum_j (l_{0j} / y) e_{0j,1}`; case III only.
pub fn cyclic_subgroup_order(v: &TrinomialVariety, y: u64) -> Result<Int> {
    let class = require_graded(v)?;
    if class != RationalityClass::CaseIII {
        return Err(Error::WrongCase {
            expected: "case III",
            actual: class.to_string(),
        });
    }
    let l0 = v.frak_l()[0];
    if y == 0 || !l0.is_multiple_of(y) {
        return Err(Error::NotADivisor {
            divisor: y.to_string(),
            of: l0.to_string(),
        });
    }
    let p = grading_matrix(v)?;
    let w = p.first_block_vector(v.blocks()[0].iter().map(|&x| big(x / y)));
    Cokernel::new(&p.matrix).order_of(&w).ok_or_else(|| {
        Error::InternalConsistency(format!("D_{y} of {v} has infinite order"))
    })
}

/// A predicate evaluated from its combinatorial criterion and from the
/// computed group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateCheck {
    pub criterion: bool,
    pub computed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    pub free_abelian: PredicateCheck,
    /// Criterion: factorial, or `n_i = 1` for every block with `c(i) > 1`.
    pub finite: PredicateCheck,
    /// Factorial or all `n_i = 1`. Sufficient for finiteness, not necessary.
    pub finite_all_blocks_single: bool,
    /// The group predicted to be nontrivial finite cyclic, if any.
    pub cyclic: Option<FgAbelianGroup>,
    pub cyclic_computed: bool,
    /// `r = 2`, all `n_i = 1` and `(l_0, l_1, l_2)` of the form `(2x, 2y, z)`
    /// with `x, y, z` pairwise coprime and `z >= 3` odd, or with all pair
    /// gcds equal to 2. Sufficient for cyclicity, not necessary.
    pub cyclic_hypersurface_form: bool,
    /// Criterion: the quadric `V(T01^2 + T11^2 + T21^2)`, possibly times a plane.
    pub half_factorial: PredicateCheck,
}

fn cyclic_hypersurface_form(v: &TrinomialVariety) -> bool {
    if v.num_blocks() != 3 || v.block_sizes().iter().any(|&n| n != 1) {
        return false;
    }
    let l: Vec<u64> = v.blocks().iter().map(|b| b[0]).collect();
    let g = |a: u64, b: u64| num_integer::gcd(a, b);
    let first = l[0].is_multiple_of(2) && l[1].is_multiple_of(2) && {
        let (x, y, z) = (l[0] / 2, l[1] / 2, l[2]);
        g(x, y) == 1 && g(x, z) == 1 && g(y, z) == 1 && z >= 3 && z % 2 == 1
    };
    let second = g(l[0], l[1]) == 2 && g(l[1], l[2]) == 2 && g(l[0], l[2]) == 2;
    first || second
}

pub fn predicates(v: &TrinomialVariety) -> Result<Predicates> {
    let class = v.rationality_class()?;
    let group = class_group_formula(v)?;
    let g = group.as_group();
    let l = v.frak_l();
    let sizes = v.block_sizes();
    let rational = class.is_rational();
    let factorial = class == RationalityClass::Factorial;

    let mut sorted = l.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let free_criterion = factorial || (rational && sorted.iter().skip(2).all(|&x| x == 1));

    let c = v.invariants().c;
    let finite_criterion = factorial
        || (rational
            && c.as_ref()
                .is_some_and(|c| c.iter().zip(&sizes).all(|(&c, &n)| c == 1 || n == 1)));
    let all_single = sizes.iter().all(|&n| n == 1);

    let cyclic = match class {
        RationalityClass::CaseII { c } => {
            let product = l[2..].iter().fold(Int::one(), |acc, &x| acc * big(x));
            (n_tilde(v)? == 0 && c == 2 && product > Int::one())
                .then(|| AbelianGroup::cyclic(product))
        }
        RationalityClass::CaseIII => (v.num_blocks() == 3 && all_single)
            .then(|| AbelianGroup::cyclic(big(l[0]) * big(l[1]) * big(l[2]) / big(4))),
        _ => None,
    };

    let quadric = v.blocks() == [vec![2], vec![2], vec![2]];
    let out = Predicates {
        free_abelian: PredicateCheck {
            criterion: free_criterion,
            computed: g.is_some_and(AbelianGroup::is_free),
        },
        finite: PredicateCheck {
            criterion: finite_criterion,
            computed: g.is_some_and(AbelianGroup::is_finite),
        },
        finite_all_blocks_single: factorial || (rational && all_single),
        cyclic_computed: g.is_some_and(AbelianGroup::is_nontrivial_finite_cyclic),
        cyclic,
        cyclic_hypersurface_form: rational && cyclic_hypersurface_form(v),
        half_factorial: PredicateCheck {
            criterion: quadric,
            computed: g.is_some_and(|g| g.order() == Some(big(2))),
        },
    };

    let checks = [
        ("free abelian", out.free_abelian),
        ("finite", out.finite),
        ("half-factorial", out.half_factorial),
    ];
    for (name, check) in checks {
        if check.criterion != check.computed {
            return Err(Error::InternalConsistency(format!(
                "{name} criterion {} but group {group} for {v}",
                check.criterion
            )));
        }
    }
    let cyclic_agrees = match &out.cyclic {
        Some(predicted) => g == Some(predicted),
        None => !out.cyclic_computed,
    };
    if !cyclic_agrees {
        return Err(Error::InternalConsistency(format!(
            "cyclic criterion {:?} but group {group} for {v}",
            out.cyclic
        )));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityCase {
    /// Surface; if rational, the class group is torsion.
    Dim2Torsion,
    /// Threefold hypersurface with free abelian class group.
    Dim3Free,
    /// Hypersurface of dimension 4 or 5, factorial.
    Dim45Factorial,
    NotIsolated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatedSingularityReport {
    pub isolated: bool,
    pub case: SingularityCase,
    pub dimension: usize,
    /// Whether the computed class group has the property the case predicts;
    /// absent when nothing is predicted.
    pub conclusion_holds: Option<bool>,
}

/// Isolated singularity at the origin, decided from block shapes.
pub fn isolated_singularity_report(v: &TrinomialVariety) -> Result<IsolatedSingularityReport> {
    let class = v.rationality_class()?;
    if v.m() > 0 {
        return Err(Error::FreeVariablesPresent(v.m()));
    }
    let dimension = v.dimension();
    let sizes = v.block_sizes();
    let case = if v.is_degenerate() {
        SingularityCase::NotIsolated
    } else if sizes.iter().all(|&n| n == 1) {
        SingularityCase::Dim2Torsion
    } else {
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        let shape = v.num_blocks() == 3 && sorted[2] == 2;
        let unit = v
            .blocks()
            .iter()
            .all(|b| b.len() != 2 || b.iter().all(|&x| x == 1));
        match (shape && unit, sorted[1]) {
            (false, _) => SingularityCase::NotIsolated,
            (true, 1) => SingularityCase::Dim3Free,
            (true, _) => SingularityCase::Dim45Factorial,
        }
    };
    let group = class_group_formula(v)?;
    let g = group.as_group();
    let conclusion_holds = match case {
        SingularityCase::Dim2Torsion => class.is_rational().then(|| g.is_some_and(AbelianGroup::is_finite)),
        SingularityCase::Dim3Free => Some(g.is_some_and(AbelianGroup::is_free)),
        SingularityCase::Dim45Factorial => Some(class == RationalityClass::Factorial),
        SingularityCase::NotIsolated => None,
    };
    Ok(IsolatedSingularityReport {
        isolated: case != SingularityCase::NotIsolated,
        case,
        dimension,
        conclusion_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroupReport {
    pub group: ClassGroup,
    pub method: Method,
    pub formula: Option<ClassGroup>,
    /// Absent when the group is not computed by the Smith route, and always
    /// for factorial or non-rational data, which have no grading matrix.
    pub snf: Option<FgAbelianGroup>,
    /// Formula and Smith route agree; set only when both ran.
    pub agreement: Option<bool>,
    pub n_tilde: Option<usize>,
    /// `(n~, dim(TCS) - dim(X))`.
    pub rank_check: Option<(usize, usize)>,
    pub ctors: Option<FgAbelianGroup>,
}

/// Computes the class group by the requested route(s). With
/// [`Method::Both`] a disagreement is an internal consistency error.
pub fn class_group(v: &TrinomialVariety, method: Method) -> Result<ClassGroupReport> {
    let class = v.rationality_class()?;
    let want_formula = method != Method::Snf;
    let want_snf = method != Method::Formula;
    let formula = class_group_formula(v)?;
    let graded = matches!(class, RationalityClass::CaseII { .. } | RationalityClass::CaseIII);

    let mut report = ClassGroupReport {
        group: formula.clone(),
        method,
        formula: want_formula.then(|| formula.clone()),
        snf: None,
        agreement: None,
        n_tilde: None,
        rank_check: None,
        ctors: None,
    };
    if class == RationalityClass::Factorial {
        report.n_tilde = Some(0);
    }
    if !graded {
        return Ok(report);
    }

    let n = n_tilde(v)?;
    let p = grading_matrix(v)?;
    let difference = p.cox.tcs.dimension() - v.dimension();
    report.n_tilde = Some(n);
    report.rank_check = Some((n, difference));
    if n != difference {
        return Err(Error::InternalConsistency(format!(
            "rank formula {n} differs from dimension difference {difference} for {v}"
        )));
    }
    report.ctors = Some(compulsory_torsion(v)?);
    if want_snf {
        let snf = cokernel(&p.matrix);
        if want_formula {
            let agree = formula.as_group() == Some(&snf);
            if !agree {
                return Err(Error::InternalConsistency(format!(
                    "formula {formula} != Smith form {snf} for {v}; grading matrix {}",
                    p.matrix
                )));
            }
            report.agreement = Some(agree);
        }
        report.group = ClassGroup::Group(snf.clone());
        report.snf = Some(snf);
    }
    Ok(report)
}
