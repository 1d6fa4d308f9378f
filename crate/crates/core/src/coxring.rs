//! Total coordinate spaces, basic platonic triples, iteration of Cox rings
//! and the Du Val surface correspondence.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::classgroup::{class_group_formula, ClassGroup};
use crate::error::{Error, Result};
use crate::linalg::{is_saturated_sublattice, matrix_a, matrix_b, Matrix};
use crate::variety::{c_values, render_monomial, Adjustment, Coefficient, RationalityClass, TrinomialVariety};
use crate::{FgAbelianGroup, IntMatrix};

/// Exponent data of the total coordinate space of an adjusted rational
/// variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxConstruction {
    pub source: TrinomialVariety,
    pub p1: IntMatrix,
    pub c: Vec<u64>,
    /// `l_{i,1}`: the exponent vector shared by all copies of block `i`.
    pub tcs_exponents: Vec<Vec<u64>>,
    /// Block `i` repeated `c(i)` times, blocks in source order.
    pub tcs_blocks: Vec<Vec<u64>>,
    /// Owning source block of each entry of `tcs_blocks`.
    pub tcs_origin: Vec<usize>,
    pub tcs: TrinomialVariety,
    pub tcs_adjusted: Adjustment,
    pub n_prime: usize,
    pub r_prime: usize,
}

/// Column offsets of the blocks inside `Z^(n + m)`.
fn block_offsets(sizes: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for s in sizes {
        offsets.push(acc);
        acc += s;
    }
    offsets
}

/// The `r x (n + m)` matrix whose column gcds give the Cox ring exponents.
/// Needs at least three blocks.
fn build_p1(v: &TrinomialVariety) -> IntMatrix {
    let l = v.frak_l();
    let g01 = l[0].gcd(&l[1]);
    let g02 = l[0].gcd(&l[2]);
    let sizes = v.block_sizes();
    let offsets = block_offsets(&sizes);
    let cols = v.n() + v.m();
    let mut p = Matrix::zeros(v.r(), cols);
    for row in 0..v.r() {
        let i = row + 1;
        let divisor = match i {
            1 => g01,
            2 => g02,
            _ => 1,
        };
        for (j, &x) in v.blocks()[0].iter().enumerate() {
            p[(row, offsets[0] + j)] = -BigInt::from(x / divisor);
        }
        for (j, &x) in v.blocks()[i].iter().enumerate() {
            p[(row, offsets[i] + j)] = BigInt::from(x / divisor);
        }
    }
    p
}

/// `P_1` of an adjusted rational non-factorial variety.
pub fn p1_matrix(v: &TrinomialVariety) -> Result<IntMatrix> {
    match v.rationality_class()? {
        RationalityClass::NonRational => Err(Error::NotRational),
        RationalityClass::Factorial => Err(Error::Factorial),
        _ => Ok(build_p1(v)),
    }
}

fn generic_theta(blocks: usize) -> Option<Vec<Coefficient>> {
    (blocks >= 3).then(|| vec![Coefficient::Generic; blocks - 3])
}

/// Total coordinate space data. Factorial input (including affine spaces)
/// is its own total coordinate space.
pub fn total_coordinate_space(v: &TrinomialVariety) -> Result<CoxConstruction> {
    let class = v.rationality_class()?;
    if class == RationalityClass::NonRational {
        return Err(Error::NotRational);
    }
    let sizes = v.block_sizes();
    let (p1, c, tcs_exponents) = if v.is_degenerate() {
        (
            Matrix::zeros(0, v.n() + v.m()),
            vec![1; v.num_blocks()],
            v.blocks().to_vec(),
        )
    } else {
        let p1 = build_p1(v);
        let offsets = block_offsets(&sizes);
        let exponents: Vec<Vec<u64>> = sizes
            .iter()
            .enumerate()
            .map(|(i, &n)| {
                (0..n)
                    .map(|j| {
                        let col = offsets[i] + j;
                        let g = (0..p1.rows()).fold(BigInt::from(0), |acc, row| acc.gcd(&p1[(row, col)]));
                        g.to_u64().expect("column gcd bounded by an exponent")
                    })
                    .collect()
            })
            .collect();
        (p1, c_values(&v.frak_l()), exponents)
    };

    let mut tcs_blocks = Vec::new();
    let mut tcs_origin = Vec::new();
    for (i, l) in tcs_exponents.iter().enumerate() {
        for _ in 0..c[i] {
            tcs_blocks.push(l.clone());
            tcs_origin.push(i);
        }
    }
    for (k, block) in tcs_blocks.iter().enumerate() {
        let first = tcs_origin.iter().position(|&o| o == tcs_origin[k]).unwrap();
        if *block != tcs_blocks[first] {
            return Err(Error::InternalConsistency(format!(
                "copies of block {} differ in the total coordinate space of {v}",
                tcs_origin[k]
            )));
        }
    }
    let n_prime = tcs_blocks.iter().map(Vec::len).sum();
    let r_prime = tcs_blocks.len() - 1;
    let theta = generic_theta(tcs_blocks.len());
    let tcs = TrinomialVariety::new(tcs_blocks.clone(), v.m(), theta)?;
    let tcs_adjusted = tcs.adjust();
    Ok(CoxConstruction {
        source: v.clone(),
        p1,
        c,
        tcs_exponents,
        tcs_blocks,
        tcs_origin,
        tcs,
        tcs_adjusted,
        n_prime,
        r_prime,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DuValLabel {
    /// `A_n`, from triples `(n + 1, 2, 2)`.
    A { n: u64 },
    D4,
    E6,
    E8,
    /// `(x, y, 1)`: the surface is the plane.
    Smooth,
}

impl fmt::Display for DuValLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DuValLabel::A { n } => write!(f, "A{n}"),
            DuValLabel::D4 => write!(f, "D4"),
            DuValLabel::E6 => write!(f, "E6"),
            DuValLabel::E8 => write!(f, "E8"),
            DuValLabel::Smooth => write!(f, "smooth"),
        }
    }
}

/// A platonic triple `a >= b >= c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TripleRepr", into = "TripleRepr")]
pub struct PlatonicTriple {
    a: u64,
    b: u64,
    c: u64,
    label: DuValLabel,
}

impl PlatonicTriple {
    /// Sorts the entries decreasingly and checks the triple is platonic.
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        let mut t = [a, b, c];
        t.sort_unstable_by(|x, y| y.cmp(x));
        let [a, b, c] = t;
        let label = match (a, b, c) {
            (0, _, _) | (_, 0, _) | (_, _, 0) => return Err(Error::NotPlatonic { a, b, c }),
            (_, _, 1) => DuValLabel::Smooth,
            (x, 2, 2) => DuValLabel::A { n: x - 1 },
            (3, 3, 2) => DuValLabel::D4,
            (4, 3, 2) => DuValLabel::E6,
            (5, 3, 2) => DuValLabel::E8,
            _ => return Err(Error::NotPlatonic { a, b, c }),
        };
        Ok(Self { a, b, c, label })
    }

    pub fn entries(&self) -> (u64, u64, u64) {
        (self.a, self.b, self.c)
    }

    pub fn label(&self) -> DuValLabel {
        self.label
    }

    /// `(x, y, 1)` triples all describe the plane; identify them.
    pub fn up_to_isomorphism(&self) -> (u64, u64, u64) {
        if self.c == 1 {
            (1, 1, 1)
        } else {
            self.entries()
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TripleRepr {
    triple: [u64; 3],
    label: String,
}

impl TryFrom<TripleRepr> for PlatonicTriple {
    type Error = Error;

    fn try_from(repr: TripleRepr) -> Result<Self> {
        let [a, b, c] = repr.triple;
        let t = Self::new(a, b, c)?;
        if t.label.to_string() != repr.label {
            return Err(Error::InvalidInput(format!("label {} does not match triple {t}", repr.label)));
        }
        Ok(t)
    }
}

impl From<PlatonicTriple> for TripleRepr {
    fn from(t: PlatonicTriple) -> Self {
        TripleRepr {
            triple: [t.a, t.b, t.c],
            label: t.label.to_string(),
        }
    }
}

impl fmt::Display for PlatonicTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Top three block gcds in decreasing order, padded with 1s.
fn top_three(frak_l: &[u64]) -> (u64, u64, u64) {
    let mut l = frak_l.to_vec();
    l.sort_unstable_by(|x, y| y.cmp(x));
    l.resize(l.len().max(3), 1);
    (l[0], l[1], l[2])
}

/// Basic platonic triple when `sum 1/l_i > r - 1`, evaluated exactly.
pub fn is_hyperplatonic(v: &TrinomialVariety) -> Result<Option<PlatonicTriple>> {
    v.require_adjusted()?;
    let frak_l = v.frak_l();
    let sum = frak_l
        .iter()
        .fold(BigRational::from_integer(0.into()), |acc, &l| {
            acc + BigRational::new(BigInt::one(), BigInt::from(l))
        });
    let bound = BigRational::from_integer(BigInt::from(v.r() as i64 - 1));
    if sum <= bound {
        return Ok(None);
    }
    let (a, b, c) = top_three(&frak_l);
    let mut sorted = frak_l.clone();
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    if sorted.iter().skip(3).any(|&l| l != 1) {
        return Err(Error::InternalConsistency(format!(
            "hyperplatonic {v} has more than three nontrivial block gcds"
        )));
    }
    PlatonicTriple::new(a, b, c)
        .map(Some)
        .map_err(|e| Error::InternalConsistency(format!("basic triple of hyperplatonic {v}: {e}")))
}

/// Which of the four known shapes a Cox ring step between basic platonic
/// triples has. Named after the chains they belong to, read from the
/// factorial end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainPattern {
    /// `(1,1,1) -> (2,2,2) -> (3,3,2) -> (4,3,2)`
    Platonic,
    /// `(1,1,1) -> (x,x,1) -> (2x,2,2)`
    EvenA,
    /// `(x,x,1) -> (x,2,2)` with `x` odd
    OddA,
    /// `(l_0/g, l_1/g, 1) -> (l_0, l_1, 1)` with `g = gcd(l_0, l_1) > 1`
    Torus,
}

impl fmt::Display for ChainPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChainPattern::Platonic => "(i)",
            ChainPattern::EvenA => "(ii)",
            ChainPattern::OddA => "(iii)",
            ChainPattern::Torus => "(iv)",
        };
        write!(f, "{s}")
    }
}

/// Pattern of the step from `x` to the triple of its total coordinate
/// space, decided by the shape of `x`; `None` when `next` is not the triple
/// that shape predicts.
pub fn chain_pattern(x: &PlatonicTriple, next: &PlatonicTriple) -> Option<ChainPattern> {
    let (a, b, c) = x.entries();
    let expect = |t: (u64, u64, u64), p: ChainPattern| (next.entries() == t).then_some(p);
    match (a, b, c) {
        (a, b, 1) => {
            let g = a.gcd(&b);
            if g == 1 {
                return None;
            }
            let t = PlatonicTriple::new(a / g, b / g, 1).ok()?;
            expect(t.entries(), ChainPattern::Torus)
        }
        (4, 3, 2) => expect((3, 3, 2), ChainPattern::Platonic),
        (3, 3, 2) => expect((2, 2, 2), ChainPattern::Platonic),
        (2, 2, 2) => expect((1, 1, 1), ChainPattern::Platonic),
        (y, 2, 2) if y % 2 == 0 => expect((y / 2, y / 2, 1), ChainPattern::EvenA),
        (y, 2, 2) => expect((y, y, 1), ChainPattern::OddA),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub variety: TrinomialVariety,
    pub class_group: FgAbelianGroup,
    pub bpt: Option<PlatonicTriple>,
}

/// Steps from the input up to a factorial variety; `patterns[k]` describes
/// the passage from step `k` to step `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationChain {
    pub steps: Vec<ChainStep>,
    pub patterns: Vec<Option<ChainPattern>>,
}

impl IterationChain {
    pub fn triples(&self) -> Vec<Option<PlatonicTriple>> {
        self.steps.iter().map(|s| s.bpt).collect()
    }
}

/// More steps than this means something is wrong with the data.
const MAX_CHAIN_STEPS: usize = 64;

fn finitely_generated(v: &TrinomialVariety) -> Result<FgAbelianGroup> {
    match class_group_formula(v)? {
        ClassGroup::Group(g) => Ok(g),
        ClassGroup::NotFinitelyGenerated => Err(Error::IterationNotAdmitted(format!(
            "{v} is not rational"
        ))),
    }
}

/// Repeatedly passes to the adjusted total coordinate space until it is
/// factorial. Every non-factorial step must have a total coordinate space
/// that is factorial or hyperplatonic.
pub fn iterate_cox_rings(v: &TrinomialVariety) -> Result<IterationChain> {
    if !v.rationality_class()?.is_rational() {
        return Err(Error::NotRational);
    }
    let mut steps = vec![ChainStep {
        variety: v.clone(),
        class_group: finitely_generated(v)?,
        bpt: is_hyperplatonic(v)?,
    }];
    loop {
        let current = &steps.last().unwrap().variety;
        if current.rationality_class()? == RationalityClass::Factorial {
            break;
        }
        if steps.len() >= MAX_CHAIN_STEPS {
            return Err(Error::IterationNotAdmitted(format!(
                "no factorial variety within {MAX_CHAIN_STEPS} steps"
            )));
        }
        let next = total_coordinate_space(current)?.tcs_adjusted.variety;
        let bpt = is_hyperplatonic(&next)?;
        let factorial = next.rationality_class()? == RationalityClass::Factorial;
        if !factorial && bpt.is_none() {
            return Err(Error::IterationNotAdmitted(format!(
                "total coordinate space {next} of {current} is neither factorial nor hyperplatonic"
            )));
        }
        steps.push(ChainStep {
            class_group: finitely_generated(&next)?,
            variety: next,
            bpt,
        });
    }
    let patterns = steps
        .windows(2)
        .map(|w| match (&w[0].bpt, &w[1].bpt) {
            (Some(x), Some(y)) => chain_pattern(x, y),
            _ => None,
        })
        .collect();
    Ok(IterationChain { steps, patterns })
}

/// `Y(a, b, c) = V(T1^a + T2^b + T3^c)`.
pub fn duval_surface(t: &PlatonicTriple) -> TrinomialVariety {
    let (a, b, c) = t.entries();
    TrinomialVariety::from_blocks(vec![vec![a], vec![b], vec![c]], 0).expect("platonic entries are positive")
}

/// The lattice condition for one block: `B(c(i), l_{i,1})` lies saturated
/// in `A(c(i), l_{i,1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSaturation {
    pub block: usize,
    pub copies: u64,
    pub exponents: Vec<u64>,
    pub gcd: u64,
    pub saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DuValDiagram {
    pub x: TrinomialVariety,
    pub x_triple: PlatonicTriple,
    /// Adjusted total coordinate space of `x`.
    pub xprime: TrinomialVariety,
    pub xprime_triple: PlatonicTriple,
    pub y: TrinomialVariety,
    pub yprime: TrinomialVariety,
    /// Triple of the adjusted total coordinate space of `y`.
    pub y_tcs_triple: PlatonicTriple,
    /// `y_tcs_triple == xprime_triple` literally.
    pub triples_equal: bool,
    /// Block-diagonal matrix with rows `l_i / gcd(l_i)`.
    pub p_tilde: IntMatrix,
    /// Degree-zero generators `T_i^(l_i / gcd(l_i))`.
    pub veronese: Vec<String>,
    pub saturation: Vec<BlockSaturation>,
    /// Triples agree up to isomorphism and every lattice check holds.
    pub verified: bool,
}

fn triple_of(v: &TrinomialVariety) -> Result<PlatonicTriple> {
    is_hyperplatonic(v)?
        .ok_or_else(|| Error::InternalConsistency(format!("{v} was expected to be hyperplatonic")))
}

pub fn duval_diagram(v: &TrinomialVariety) -> Result<DuValDiagram> {
    let x_triple = is_hyperplatonic(v)?.ok_or(Error::NotHyperplatonic)?;
    let cox = total_coordinate_space(v)?;
    let xprime = cox.tcs_adjusted.variety.clone();
    let xprime_triple = triple_of(&xprime)?;

    let y = duval_surface(&x_triple);
    let yprime = duval_surface(&xprime_triple);
    let y_adjusted = y.adjust().variety;
    let y_tcs = total_coordinate_space(&y_adjusted)?.tcs_adjusted.variety;
    let y_tcs_triple = triple_of(&y_tcs)?;

    let frak_l = v.frak_l();
    let rows: Vec<IntMatrix> = v
        .blocks()
        .iter()
        .zip(&frak_l)
        .map(|(b, &g)| Matrix::from_rows(b.len(), vec![b.iter().map(|&x| BigInt::from(x / g)).collect()]))
        .collect();
    let p_tilde = Matrix::block_diagonal(&rows);
    let veronese = v
        .blocks()
        .iter()
        .zip(&frak_l)
        .enumerate()
        .map(|(i, (b, &g))| render_monomial(i, &b.iter().map(|x| x / g).collect::<Vec<_>>()))
        .collect();

    let mut saturation = Vec::new();
    for (i, l) in cox.tcs_exponents.iter().enumerate() {
        let gcd = l.iter().fold(0, |acc, x| acc.gcd(x));
        let big: Vec<BigInt> = l.iter().map(|&x| BigInt::from(x)).collect();
        let k = cox.c[i] as usize;
        let b = matrix_b(k, &big, &BigInt::from(gcd))?;
        let a = matrix_a(k, &big);
        saturation.push(BlockSaturation {
            block: i,
            copies: cox.c[i],
            exponents: l.clone(),
            gcd,
            saturated: is_saturated_sublattice(&b, &a),
        });
    }

    let triples_equal = y_tcs_triple == xprime_triple;
    let verified = y_tcs_triple.up_to_isomorphism() == xprime_triple.up_to_isomorphism()
        && saturation.iter().all(|s| s.saturated);
    Ok(DuValDiagram {
        x: v.clone(),
        x_triple,
        xprime,
        xprime_triple,
        y,
        yprime,
        y_tcs_triple,
        triples_equal,
        p_tilde,
        veronese,
        saturation,
        verified,
    })
}
