//! Varieties of Type 1: zero loci of `T_1^l_1 - T_2^l_2 - theta_1, ...,
//! T_(r-1)^l_(r-1) - T_r^l_r - theta_(r-1)` with `theta_1 = 1`.

use std::cmp::Reverse;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::classgroup::ClassGroup;
use crate::error::{Error, Result};
use crate::linalg::AbelianGroup;
use crate::variety::{Coefficient, TrinomialVariety};

/// Blocks are numbered from 1 in the mathematics and from 0 here.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawType1")]
pub struct Type1Variety {
    blocks: Vec<Vec<u64>>,
    #[serde(default)]
    m: usize,
    /// `theta_1, ..., theta_(r-1)`; `theta_1` is always 1.
    theta: Vec<Coefficient>,
}

#[derive(Deserialize)]
struct RawType1 {
    blocks: Vec<Vec<u64>>,
    #[serde(default)]
    m: usize,
    #[serde(default)]
    theta: Option<Vec<Coefficient>>,
}

impl TryFrom<RawType1> for Type1Variety {
    type Error = Error;

    fn try_from(raw: RawType1) -> Result<Self> {
        Type1Variety::new(raw.blocks, raw.m, raw.theta)
    }
}

fn default_theta(blocks: usize) -> Vec<Coefficient> {
    let mut theta = vec![Coefficient::Generic; blocks.saturating_sub(1)];
    if let Some(first) = theta.first_mut() {
        *first = Coefficient::Exact(BigRational::one());
    }
    theta
}

/// Which statement of the classification applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Type1Case {
    /// All `l_i = 1`, or at most one block left.
    AllUnit,
    /// `V(T_1^2 + T_2^2 + 1)`.
    Quadric,
    /// `l_1 > 1`, all other `l_i = 1`.
    OneNonUnit,
    /// `l_1 = l_2 = 2`, all other `l_i = 1`.
    TwoTwos,
    NotFinitelyGenerated,
}

impl Type1Variety {
    /// `theta = None` means `theta_1 = 1` with the remaining coefficients
    /// generic.
    pub fn new(blocks: Vec<Vec<u64>>, m: usize, theta: Option<Vec<Coefficient>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::NoBlocks);
        }
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::EmptyBlock { block: i });
            }
            if let Some(j) = block.iter().position(|&x| x == 0) {
                return Err(Error::NonPositiveExponent { block: i, var: j, value: 0 });
            }
        }
        let theta = match theta {
            None => default_theta(blocks.len()),
            Some(theta) => {
                let expected = blocks.len() - 1;
                if theta.len() != expected {
                    return Err(Error::InvalidTheta(format!(
                        "expected {expected} coefficients for {} blocks, got {}",
                        blocks.len(),
                        theta.len()
                    )));
                }
                if let Some(first) = theta.first() {
                    if *first != Coefficient::Exact(BigRational::one()) {
                        return Err(Error::InvalidTheta(format!("theta1 must be 1, got {first}")));
                    }
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
                theta
            }
        };
        Ok(Self { blocks, m, theta })
    }

    pub fn from_blocks(blocks: Vec<Vec<u64>>, m: usize) -> Result<Self> {
        Self::new(blocks, m, None)
    }

    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.blocks
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn theta(&self) -> &[Coefficient] {
        &self.theta
    }

    pub fn r(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// `n + m - (r - 1)`: one equation per consecutive pair of blocks.
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum::<usize>() + self.m + 1 - self.blocks.len()
    }

    /// At most one block: no relation left.
    pub fn is_degenerate(&self) -> bool {
        self.blocks.len() < 2
    }

    pub fn frak_l(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .map(|b| b.iter().fold(0, |acc, x| acc.gcd(x)))
            .collect()
    }

    /// `l_1 >= ... >= l_r` and `n_i l_ij > 1` everywhere.
    pub fn is_adjusted(&self) -> bool {
        let l = self.frak_l();
        let sorted = l.windows(2).all(|w| w[0] >= w[1]);
        let linear = self.blocks.len() >= 2 && self.blocks.iter().any(|b| b == &[1]);
        sorted && !linear
    }

    /// `c(1) = l_2`, `c(2) = l_1`, `c(i) = l_1 l_2` beyond.
    pub fn c_values(&self) -> Vec<u64> {
        let l = self.frak_l();
        if l.len() < 2 {
            return vec![1; l.len()];
        }
        let mut c = vec![l[1], l[0]];
        c.resize(l.len(), l[0] * l[1]);
        c
    }

    pub fn n_tilde(&self) -> usize {
        self.c_values()
            .iter()
            .zip(self.block_sizes())
            .map(|(&c, n)| (c as usize - 1) * (n - 1))
            .sum()
    }

    pub fn case(&self) -> Result<Type1Case> {
        if !self.is_adjusted() {
            return Err(Error::NotAdjusted(self.to_string()));
        }
        let l = self.frak_l();
        let tail_unit = |from: usize| l.iter().skip(from).all(|&x| x == 1);
        Ok(if self.is_degenerate() || tail_unit(0) {
            Type1Case::AllUnit
        } else if self.blocks == [vec![2], vec![2]] {
            Type1Case::Quadric
        } else if tail_unit(1) {
            Type1Case::OneNonUnit
        } else if l[0] == 2 && l[1] == 2 && tail_unit(2) {
            Type1Case::TwoTwos
        } else {
            Type1Case::NotFinitelyGenerated
        })
    }
}

impl fmt::Display for Type1Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type 1 blocks {:?}, m = {}", self.blocks, self.m)
    }
}

/// Sorts by `l_i` descending (ties by `n_i` descending, then position) and
/// eliminates blocks `[1]` leftmost first while a relation remains.
/// Coefficients are reset to the default when anything moves.
pub fn adjust_type1(v: &Type1Variety) -> Type1Variety {
    let l = v.frak_l();
    let mut order: Vec<usize> = (0..v.blocks.len()).collect();
    order.sort_by_key(|&i| (Reverse(l[i]), Reverse(v.blocks[i].len()), i));
    while order.len() >= 2 {
        match order.iter().position(|&i| v.blocks[i] == [1]) {
            Some(p) => {
                order.remove(p);
            }
            None => break,
        }
    }
    let unchanged = order.iter().copied().eq(0..v.blocks.len());
    let blocks: Vec<Vec<u64>> = order.iter().map(|&i| v.blocks[i].clone()).collect();
    let theta = if unchanged {
        v.theta.clone()
    } else {
        default_theta(blocks.len())
    };
    Type1Variety {
        blocks,
        m: v.m,
        theta,
    }
}

pub fn class_group_type1(v: &Type1Variety) -> Result<ClassGroup> {
    Ok(match v.case()? {
        Type1Case::AllUnit | Type1Case::Quadric => ClassGroup::Group(AbelianGroup::trivial()),
        Type1Case::OneNonUnit | Type1Case::TwoTwos => {
            ClassGroup::Group(AbelianGroup::free(v.n_tilde()))
        }
        Type1Case::NotFinitelyGenerated => ClassGroup::NotFinitelyGenerated,
    })
}

/// The trinomial variety `X~` with leading block `[lcm(l_1, ..., l_r)]`
/// followed by the blocks of `v`, and generic coefficients.
pub fn lift_to_type2(v: &Type1Variety) -> Result<TrinomialVariety> {
    if !v.is_adjusted() {
        return Err(Error::NotAdjusted(v.to_string()));
    }
    let ell = v.frak_l().into_iter().fold(1u64, |acc, x| acc.lcm(&x));
    let mut blocks = vec![vec![ell]];
    blocks.extend(v.blocks.iter().cloned());
    let theta = vec![Coefficient::Generic; blocks.len().saturating_sub(3)];
    TrinomialVariety::new(blocks, v.m, Some(theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classgroup::class_group_formula;

    fn t(blocks: &[&[u64]]) -> Type1Variety {
        Type1Variety::from_blocks(blocks.iter().map(|b| b.to_vec()).collect(), 0).unwrap()
    }

    fn group(text: &str) -> ClassGroup {
        ClassGroup::Group(text.parse().unwrap())
    }

    #[test]
    fn validation() {
        assert_eq!(t(&[&[2], &[2]]).theta(), &[Coefficient::Exact(BigRational::one())]);
        let two: Coefficient = "2".parse().unwrap();
        let bad = Type1Variety::new(vec![vec![2], vec![2]], 0, Some(vec![two.clone()]));
        assert!(matches!(bad, Err(Error::InvalidTheta(_))));
        let one: Coefficient = "1".parse().unwrap();
        let dup = Type1Variety::new(vec![vec![2], vec![2], vec![3]], 0, Some(vec![one.clone(), one]));
        assert!(matches!(dup, Err(Error::DuplicateTheta { first: 1, second: 2 })));
        assert!(matches!(
            Type1Variety::from_blocks(vec![vec![2], vec![0]], 0),
            Err(Error::NonPositiveExponent { block: 1, var: 0, value: 0 })
        ));
    }

    #[test]
    fn adjusting() {
        assert_eq!(adjust_type1(&t(&[&[2], &[4]])).blocks(), &[vec![4], vec![2]]);
        let d = adjust_type1(&t(&[&[2], &[1]]));
        assert_eq!(d.blocks(), &[vec![2]]);
        assert!(d.is_degenerate());
        let same = t(&[&[2], &[1, 1]]);
        assert!(same.is_adjusted());
        assert_eq!(adjust_type1(&same), same);
        assert!(!t(&[&[2], &[4]]).is_adjusted());
    }

    #[test]
    fn class_groups() {
        assert_eq!(class_group_type1(&t(&[&[2], &[2]])).unwrap(), group("0"));
        assert_eq!(class_group_type1(&t(&[&[2], &[1, 1]])).unwrap(), group("Z"));
        assert_eq!(class_group_type1(&t(&[&[3], &[3]])).unwrap(), ClassGroup::NotFinitelyGenerated);
        assert_eq!(class_group_type1(&t(&[&[1, 1], &[1, 1]])).unwrap(), group("0"));
        assert_eq!(class_group_type1(&t(&[&[2, 2], &[2]])).unwrap(), group("Z"));
        assert_eq!(adjust_type1(&t(&[&[2], &[1]])).case().unwrap(), Type1Case::AllUnit);
        assert!(matches!(class_group_type1(&t(&[&[2], &[4]])), Err(Error::NotAdjusted(_))));
    }

    #[test]
    fn lifts() {
        let blocks = |v: &TrinomialVariety| v.blocks().to_vec();
        assert_eq!(blocks(&lift_to_type2(&t(&[&[2], &[2]])).unwrap()), vec![vec![2], vec![2], vec![2]]);
        assert_eq!(blocks(&lift_to_type2(&t(&[&[4], &[1, 1]])).unwrap()), vec![vec![4], vec![4], vec![1, 1]]);
        assert_eq!(blocks(&lift_to_type2(&t(&[&[2], &[1, 1]])).unwrap()), vec![vec![2], vec![2], vec![1, 1]]);
        let quadric = lift_to_type2(&t(&[&[2], &[2]])).unwrap();
        assert_eq!(class_group_formula(&quadric).unwrap(), group("Z/2"));
        let lifted = lift_to_type2(&t(&[&[2], &[1, 1]])).unwrap();
        assert_eq!(class_group_formula(&lifted).unwrap(), group("Z"));
    }
}
