//! Exponent data of trinomial varieties: validation, the adjusted form,
//! gcd invariants and the rationality classification.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A relation coefficient `theta_i`.
///
/// Class groups depend on exponent data only, so coefficients are just
/// carried along. `Generic` stands for an unspecified value distinct from
/// every other coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Exact(BigRational),
    Generic,
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Exact(q) => write!(f, "{q}"),
            Coefficient::Generic => write!(f, "generic"),
        }
    }
}

impl FromStr for Coefficient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "generic" {
            return Ok(Coefficient::Generic);
        }
        s.parse::<BigRational>()
            .map(Coefficient::Exact)
            .map_err(|_| Error::InvalidTheta(format!("cannot parse coefficient {s:?}")))
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        // integers may be written bare, rationals and "generic" as strings
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(x) => Ok(Coefficient::Exact(BigRational::from_integer(x.into()))),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Exponent blocks `l_0, ..., l_r`, the number `m` of free variables and
/// optional coefficients `theta_1, ..., theta_{r-2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawVariety")]
pub struct TrinomialVariety {
    blocks: Vec<Vec<u64>>,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<Vec<Coefficient>>,
}

#[derive(Deserialize)]
struct RawVariety {
    blocks: Vec<Vec<u64>>,
    #[serde(default)]
    m: usize,
    #[serde(default)]
    theta: Option<Vec<Coefficient>>,
}

impl TryFrom<RawVariety> for TrinomialVariety {
    type Error = Error;

    fn try_from(raw: RawVariety) -> Result<Self> {
        Self::new(raw.blocks, raw.m, raw.theta)
    }
}

/// gcd data of the blocks in their given order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockInvariants {
    pub frak_l: Vec<u64>,
    pub pairwise_gcd: Vec<Vec<u64>>,
    /// `gcd(l_0, l_1, l_2)`; absent with fewer than three blocks.
    pub frak_l_small: Option<u64>,
    /// `c(0), ..., c(r)`; only set when the given order classifies as rational.
    pub c: Option<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum RationalityClass {
    /// All pairwise gcds are 1 (this includes the degenerate affine spaces).
    Factorial,
    /// `c = gcd(l_0, l_1) > 1`, all other pairs coprime.
    #[serde(rename = "case_ii")]
    CaseII { c: u64 },
    /// `gcd(l_0, l_1) = gcd(l_0, l_2) = gcd(l_1, l_2) = 2`, all pairs involving
    /// a block beyond the third coprime.
    #[serde(rename = "case_iii")]
    CaseIII,
    NonRational,
}

impl RationalityClass {
    pub fn is_rational(self) -> bool {
        self != RationalityClass::NonRational
    }
}

impl fmt::Display for RationalityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalityClass::Factorial => write!(f, "factorial"),
            RationalityClass::CaseII { c } => write!(f, "case II (c = {c})"),
            RationalityClass::CaseIII => write!(f, "case III"),
            RationalityClass::NonRational => write!(f, "non-rational"),
        }
    }
}

/// What [`TrinomialVariety::adjust`] did. Indices refer to the input blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjustmentRecord {
    /// Surviving blocks, listed in their adjusted order.
    pub kept: Vec<usize>,
    /// Eliminated linear blocks in elimination order.
    pub eliminated: Vec<usize>,
    /// Fewer than three blocks remain: the variety is an affine space.
    pub degenerate: bool,
    /// Coefficients were replaced by generic placeholders because the
    /// relations had to be re-derived.
    pub theta_reset: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Adjustment {
    pub variety: TrinomialVariety,
    pub record: AdjustmentRecord,
}

pub(crate) fn pair_gcd_table(frak_l: &[u64]) -> Vec<Vec<u64>> {
    frak_l
        .iter()
        .map(|a| frak_l.iter().map(|b| a.gcd(b)).collect())
        .collect()
}

/// Classification of `frak_l` taken in the given order.
pub(crate) fn classify(frak_l: &[u64]) -> RationalityClass {
    if frak_l.len() < 3 {
        return RationalityClass::Factorial;
    }
    let g = |i: usize, j: usize| frak_l[i].gcd(&frak_l[j]);
    let pairs = || {
        (0..frak_l.len()).flat_map(move |j| (0..j).map(move |i| (i, j)))
    };
    if pairs().all(|(i, j)| g(i, j) == 1) {
        return RationalityClass::Factorial;
    }
    let g01 = g(0, 1);
    if g01 > 1 && pairs().filter(|&(_, j)| j >= 2).all(|(i, j)| g(i, j) == 1) {
        return RationalityClass::CaseII { c: g01 };
    }
    if g01 == 2
        && g(0, 2) == 2
        && g(1, 2) == 2
        && pairs().filter(|&(_, j)| j >= 3).all(|(i, j)| g(i, j) == 1)
    {
        return RationalityClass::CaseIII;
    }
    RationalityClass::NonRational
}

/// `c(0), ..., c(r)` for at least three blocks.
///
/// Panics if the value for blocks beyond the third is not integral or does
/// not fit a machine word; neither happens for rational data.
pub(crate) fn c_values(frak_l: &[u64]) -> Vec<u64> {
    assert!(frak_l.len() >= 3, "c(i) needs at least three blocks");
    let g01 = frak_l[0].gcd(&frak_l[1]);
    let g02 = frak_l[0].gcd(&frak_l[2]);
    let g12 = frak_l[1].gcd(&frak_l[2]);
    let small = g01.gcd(&frak_l[2]);
    let product = BigInt::from(g01) * BigInt::from(g02) * BigInt::from(g12);
    let (q, rem) = product.div_rem(&BigInt::from(small));
    assert!(rem.is_zero(), "c(i) for i >= 3 is not integral");
    let tail = q.to_u64().expect("c(i) exceeds 64 bits");
    let mut c = vec![g12, g02, g01];
    c.resize(frak_l.len(), tail);
    c
}

/// Whether `frak_l` meets the ordering constraints of the adjusted form.
pub(crate) fn satisfies_order(frak_l: &[u64]) -> bool {
    if frak_l.len() < 3 {
        return true;
    }
    let g01 = frak_l[0].gcd(&frak_l[1]);
    let max_pair = (0..frak_l.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .map(|(i, j)| frak_l[i].gcd(&frak_l[j]))
        .max()
        .unwrap_or(1);
    let from_zero: Vec<u64> = frak_l[1..].iter().map(|x| frak_l[0].gcd(x)).collect();
    g01 == max_pair && from_zero.windows(2).all(|w| w[0] >= w[1])
}

/// Block order of the adjusted form: the lexicographically smallest key
/// sequence `(-l_i, -n_i, i)` among all orders meeting the constraints.
fn adjusted_order(frak_l: &[u64], sizes: &[usize]) -> Vec<usize> {
    let k = frak_l.len();
    let key = |i: usize| (Reverse(frak_l[i]), Reverse(sizes[i]), i);
    let mut by_key: Vec<usize> = (0..k).collect();
    by_key.sort_by_key(|&i| key(i));
    if k < 3 {
        return by_key;
    }
    let max_pair = (0..k)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .map(|(i, j)| frak_l[i].gcd(&frak_l[j]))
        .max()
        .unwrap_or(1);
    let mut best: Option<Vec<usize>> = None;
    for &a in &by_key {
        for &b in &by_key {
            if a == b || frak_l[a].gcd(&frak_l[b]) != max_pair {
                continue;
            }
            let mut order = vec![a, b];
            let mut rest: Vec<usize> = by_key.iter().copied().filter(|&j| j != a && j != b).collect();
            rest.sort_by_key(|&j| (Reverse(frak_l[a].gcd(&frak_l[j])), key(j)));
            order.extend(rest);
            let better = best.as_ref().is_none_or(|cur| {
                order.iter().map(|&i| key(i)).lt(cur.iter().map(|&i| key(i)))
            });
            if better {
                best = Some(order);
            }
        }
    }
    best.expect("a pair realising the maximal gcd exists")
}

fn is_linear(block: &[u64]) -> bool {
    block == [1]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == used.len() {
            out.push(current.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                current.push(i);
                go(current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl TrinomialVariety {
    /// Validated construction.
    pub fn new(blocks: Vec<Vec<u64>>, m: usize, theta: Option<Vec<Coefficient>>) -> Result<Self> {
        let v = Self { blocks, m, theta };
        v.validate()?;
        Ok(v)
    }

    /// Shorthand for data without coefficients.
    pub fn from_blocks(blocks: Vec<Vec<u64>>, m: usize) -> Result<Self> {
        Self::new(blocks, m, None)
    }

    fn validate(&self) -> Result<()> {
        if self.blocks.is_empty() {
            return Err(Error::NoBlocks);
        }
        for (i, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::EmptyBlock { block: i });
            }
            if let Some(j) = block.iter().position(|&x| x == 0) {
                return Err(Error::NonPositiveExponent { block: i, var: j, value: 0 });
            }
        }
        if let Some(theta) = &self.theta {
            let expected = self.blocks.len().saturating_sub(3);
            if theta.len() != expected {
                return Err(Error::InvalidTheta(format!(
                    "expected {expected} coefficients for {} blocks, got {}",
                    self.blocks.len(),
                    theta.len()
                )));
            }
            for (i, t) in theta.iter().enumerate() {
                if let Coefficient::Exact(q) = t {
                    if q.is_zero() {
                        return Err(Error::InvalidTheta(format!("theta{} is zero", i + 1)));
                    }
                    if let Some(j) = theta[..i].iter().position(|s| s == t) {
                        return Err(Error::DuplicateTheta { first: j + 1, second: i + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.blocks
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn theta(&self) -> Option<&[Coefficient]> {
        self.theta.as_deref()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the last block; the data has `r - 1` relations.
    pub fn r(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// `n = n_0 + ... + n_r`.
    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Fewer than three blocks: no relation, an affine space.
    pub fn is_degenerate(&self) -> bool {
        self.blocks.len() < 3
    }

    /// `l_i = gcd(l_i1, ..., l_in_i)` for every block.
    pub fn frak_l(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .map(|b| b.iter().fold(0, |acc, x| acc.gcd(x)))
            .collect()
    }

    pub fn invariants(&self) -> BlockInvariants {
        let frak_l = self.frak_l();
        let pairwise_gcd = pair_gcd_table(&frak_l);
        let (frak_l_small, c) = if frak_l.len() >= 3 {
            let small = frak_l[0].gcd(&frak_l[1]).gcd(&frak_l[2]);
            let c = classify(&frak_l).is_rational().then(|| c_values(&frak_l));
            (Some(small), c)
        } else {
            (None, None)
        };
        BlockInvariants {
            frak_l,
            pairwise_gcd,
            frak_l_small,
            c,
        }
    }

    /// Eliminates linear blocks leftmost first while a relation remains,
    /// returning the surviving original indices and the eliminated ones.
    fn eliminate(&self) -> (Vec<usize>, Vec<usize>) {
        let mut kept: Vec<usize> = (0..self.blocks.len()).collect();
        let mut eliminated = Vec::new();
        while kept.len() >= 3 {
            match kept.iter().position(|&i| is_linear(&self.blocks[i])) {
                Some(p) => eliminated.push(kept.remove(p)),
                None => break,
            }
        }
        (kept, eliminated)
    }

    fn with_blocks(&self, order: &[usize], reset_theta: bool) -> TrinomialVariety {
        let blocks: Vec<Vec<u64>> = order.iter().map(|&i| self.blocks[i].clone()).collect();
        let theta = match (&self.theta, reset_theta) {
            (Some(_), true) => Some(vec![Coefficient::Generic; blocks.len().saturating_sub(3)]),
            (theta, _) => theta.clone(),
        };
        TrinomialVariety {
            blocks,
            m: self.m,
            theta,
        }
    }

    /// The adjusted form together with a record of what changed.
    pub fn adjust(&self) -> Adjustment {
        let (survivors, eliminated) = self.eliminate();
        let frak_l: Vec<u64> = self.frak_l();
        let sub_l: Vec<u64> = survivors.iter().map(|&i| frak_l[i]).collect();
        let sub_n: Vec<usize> = survivors.iter().map(|&i| self.blocks[i].len()).collect();
        let kept: Vec<usize> = adjusted_order(&sub_l, &sub_n)
            .into_iter()
            .map(|p| survivors[p])
            .collect();
        let changed = !eliminated.is_empty() || kept.iter().enumerate().any(|(p, &i)| p != i);
        let theta_reset = changed && self.theta.is_some();
        let variety = self.with_blocks(&kept, theta_reset);
        Adjustment {
            record: AdjustmentRecord {
                kept,
                eliminated,
                degenerate: variety.is_degenerate(),
                theta_reset,
            },
            variety,
        }
    }

    /// No linear block is left to eliminate and the ordering constraints
    /// hold. Any order meeting the constraints counts, not only the
    /// tie-broken one chosen by [`Self::adjust`].
    pub fn is_adjusted(&self) -> bool {
        let linear_left = self.blocks.len() >= 3 && self.blocks.iter().any(|b| is_linear(b));
        !linear_left && satisfies_order(&self.frak_l())
    }

    /// Every block order of the eliminated data meeting the ordering
    /// constraints. Brute force; meant for tie-invariance checks.
    ///
    /// Panics for more than eight surviving blocks.
    pub fn all_adjusted_orderings(&self) -> Vec<TrinomialVariety> {
        let (survivors, _) = self.eliminate();
        assert!(survivors.len() <= 8, "too many blocks to enumerate orderings");
        let frak_l = self.frak_l();
        let mut out: Vec<TrinomialVariety> = Vec::new();
        for perm in permutations(survivors.len()) {
            let order: Vec<usize> = perm.iter().map(|&p| survivors[p]).collect();
            let l: Vec<u64> = order.iter().map(|&i| frak_l[i]).collect();
            if satisfies_order(&l) {
                let v = self.with_blocks(&order, self.theta.is_some());
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn rationality_class(&self) -> Result<RationalityClass> {
        self.require_adjusted()?;
        Ok(classify(&self.frak_l()))
    }

    pub(crate) fn require_adjusted(&self) -> Result<()> {
        if self.is_adjusted() {
            Ok(())
        } else {
            Err(Error::NotAdjusted(format!("{self}")))
        }
    }

    /// `n + m - (r - 1)`; `n + m` for degenerate data.
    pub fn dimension(&self) -> usize {
        if self.is_degenerate() {
            self.n() + self.m
        } else {
            self.n() + self.m + 1 - self.r()
        }
    }

    /// The relations as text, one per trinomial, separated by `", "`.
    /// Degenerate data has no relations and renders as the empty string.
    pub fn render_relations(&self) -> String {
        if self.is_degenerate() {
            return String::new();
        }
        let mono = |i: usize| self.render_monomial(i);
        let mut relations = vec![format!("{} + {} + {}", mono(0), mono(1), mono(2))];
        for i in 1..self.r() - 1 {
            let coefficient = match self.theta.as_ref().map(|t| &t[i - 1]) {
                Some(Coefficient::Exact(q)) if q.is_integer() => format!("{q}"),
                Some(Coefficient::Exact(q)) => format!("({q})"),
                _ => format!("theta{i}"),
            };
            relations.push(format!("{coefficient}*{} + {} + {}", mono(i), mono(i + 1), mono(i + 2)));
        }
        relations.join(", ")
    }

    /// `T_i^{l_i}` as a product of powers, e.g. `T21^3*T22^2`.
    pub fn render_monomial(&self, i: usize) -> String {
        render_monomial(i, &self.blocks[i])
    }
}

pub(crate) fn variable_name(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("T{i}{j}")
    } else {
        format!("T{i}_{j}")
    }
}

pub(crate) fn render_monomial(i: usize, exponents: &[u64]) -> String {
    exponents
        .iter()
        .enumerate()
        .map(|(j, &e)| {
            let name = variable_name(i, j + 1);
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for TrinomialVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "blocks {:?}, m = {}", self.blocks, self.m)
    }
}
