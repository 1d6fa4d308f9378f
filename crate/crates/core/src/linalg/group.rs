//! Finitely generated abelian groups in invariant-factor form, and
//! cokernels of integer matrices.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::Matrix;
use super::scalar::IntScalar;
use super::smith::{decompose, SmithDecomposition};

/// `Z^rank x Z/d1 x ... x Z/dk` with every `d >= 2` and `d1 | d2 | ... | dk`.
///
/// The representation is canonical, so structural equality is isomorphism.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup<T> {
    rank: usize,
    invariant_factors: Vec<T>,
}

impl<T: IntScalar> AbelianGroup<T> {
    pub fn trivial() -> Self {
        Self {
            rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(order: T) -> Self {
        canonical_group(&[order], 0)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[T] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Finite, nontrivial and generated by one element.
    pub fn is_nontrivial_finite_cyclic(&self) -> bool {
        self.rank == 0 && self.invariant_factors.len() == 1
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> T {
        self.invariant_factors
            .iter()
            .fold(T::one(), |acc, d| acc * d.clone())
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<T> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn torsion(&self) -> Self {
        Self {
            rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    /// Direct sum, re-canonicalised.
    pub fn product(&self, other: &Self) -> Self {
        let mut factors = self.invariant_factors.clone();
        factors.extend(other.invariant_factors.iter().cloned());
        canonical_group(&factors, self.rank + other.rank)
    }
}

/// Canonical form of `Z/f1 x ... x Z/fk x Z^rank`.
///
/// Factors equal to 1 are dropped; a factor 0 stands for `Z/0 = Z` and
/// adds to the rank. Signs are ignored.
pub fn canonical_group<T: IntScalar>(factors: &[T], rank: usize) -> AbelianGroup<T> {
    let mut extra_rank = 0;
    let torsion: Vec<T> = factors
        .iter()
        .filter_map(|f| {
            if f.is_zero() {
                extra_rank += 1;
                None
            } else {
                Some(f.abs())
            }
        })
        .filter(|f| !f.is_one())
        .collect();
    let smith = decompose(&Matrix::diagonal(&torsion));
    AbelianGroup {
        rank: rank + extra_rank,
        invariant_factors: smith.diagonal.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// `Z^cols / rowlattice(m)`.
pub fn cokernel<T: IntScalar>(m: &Matrix<T>) -> AbelianGroup<T> {
    Cokernel::new(m).group().clone()
}

/// A cokernel together with the coordinates needed to locate vectors in it.
#[derive(Clone)]
pub struct Cokernel<T> {
    decomposition: SmithDecomposition<T>,
    group: AbelianGroup<T>,
    cols: usize,
}

impl<T: IntScalar> Cokernel<T> {
    pub fn new(m: &Matrix<T>) -> Self {
        let decomposition = decompose(m);
        let rank = m.cols() - decomposition.diagonal.len();
        let group = AbelianGroup {
            rank,
            invariant_factors: decomposition
                .diagonal
                .iter()
                .filter(|d| !d.is_one())
                .cloned()
                .collect(),
        };
        Self {
            decomposition,
            group,
            cols: m.cols(),
        }
    }

    pub fn group(&self) -> &AbelianGroup<T> {
        &self.group
    }

    /// Invariant factors including units (one per pivot).
    pub(crate) fn diagonal(&self) -> &[T] {
        &self.decomposition.diagonal
    }

    /// Coordinates of `v` after the unimodular change of basis: the image
    /// of `v` lives in `Z/d1 x ... x Z/dk x Z^(cols-k)` on these coordinates.
    pub(crate) fn coordinates(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length does not match cokernel ambient rank");
        self.decomposition.col_transform.left_mul_vector(v)
    }

    /// Order of the image of `v`; `None` if the image has infinite order.
    pub fn order_of(&self, v: &[T]) -> Option<T> {
        let w = self.coordinates(v);
        let k = self.decomposition.diagonal.len();
        if w[k..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(
            self.decomposition
                .diagonal
                .iter()
                .zip(&w)
                .fold(T::one(), |acc, (d, x)| acc.lcm(&(d.clone() / d.gcd(x)))),
        )
    }

    /// Whether `v` lies in the row lattice.
    pub fn contains(&self, v: &[T]) -> bool {
        self.order_of(v).is_some_and(|o| o.is_one())
    }
}

impl<T: fmt::Display> fmt::Display for AbelianGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

impl<T: fmt::Display> fmt::Debug for Cokernel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cokernel(Z^{} -> {})", self.cols, self.group)
    }
}

impl<T: fmt::Display> fmt::Debug for AbelianGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({self})")
    }
}

#[derive(Debug, thiserror::Error)]
#[error("cannot parse abelian group from {0:?}")]
pub struct ParseGroupError(String);

impl<T: IntScalar> FromStr for AbelianGroup<T> {
    type Err = ParseGroupError;

    /// Parses the rendering produced by `Display`, e.g. `Z/2 x Z/4 x Z^3`.
    /// Any order and non-canonical factors are accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGroupError(s.to_string());
        let s = s.trim();
        if s == "0" {
            return Ok(Self::trivial());
        }
        let mut rank = 0;
        let mut factors = Vec::new();
        for part in s.split('x').map(str::trim) {
            if part == "Z" {
                rank += 1;
            } else if let Some(exp) = part.strip_prefix("Z^") {
                rank += exp.parse::<usize>().map_err(|_| err())?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d: T = d.parse().map_err(|_| err())?;
                if !d.is_positive() {
                    return Err(err());
                }
                factors.push(d);
            } else {
                return Err(err());
            }
        }
        Ok(canonical_group(&factors, rank))
    }
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    rank: usize,
    invariant_factors: Vec<String>,
    text: String,
}

impl<T: IntScalar> Serialize for AbelianGroup<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GroupRepr {
            rank: self.rank,
            invariant_factors: self.invariant_factors.iter().map(|d| d.to_string()).collect(),
            text: self.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de, T: IntScalar> Deserialize<'de> for AbelianGroup<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GroupRepr::deserialize(deserializer)?;
        let factors = repr
            .invariant_factors
            .iter()
            .map(|s| s.parse::<T>().map_err(|_| D::Error::custom(format!("bad factor {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let group = canonical_group(&factors, repr.rank);
        if group.invariant_factors != factors || group.rank != repr.rank {
            return Err(D::Error::custom("invariant factors are not in canonical form"));
        }
        Ok(group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type G = AbelianGroup<BigInt>;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_group(&big(&[2, 3]), 0).invariant_factors(), &big(&[6])[..]);
        let g = canonical_group(&big(&[2, 2]), 1);
        assert_eq!((g.rank(), g.invariant_factors()), (1, &big(&[2, 2])[..]));
        assert!(canonical_group(&big(&[1, 1]), 0).is_trivial());
        assert_eq!(canonical_group(&big(&[4, 6]), 0).invariant_factors(), &big(&[2, 12])[..]);
        assert_eq!(canonical_group(&big(&[0, 5]), 2).rank(), 3);
    }

    #[test]
    fn cokernel_examples() {
        let id = Matrix::<BigInt>::identity(2);
        assert!(cokernel(&id).is_trivial());
        let two = Matrix::<BigInt>::from_i64_rows(&[&[2]]);
        assert_eq!(cokernel(&two), G::cyclic(BigInt::from(2)));
        // 0 x n matrix: Z^n
        assert_eq!(cokernel(&Matrix::<BigInt>::zeros(0, 3)), G::free(3));
    }

    #[test]
    fn element_orders() {
        // Z^2 / <(2,0), (0,3)> = Z/6
        let m = Matrix::<BigInt>::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let c = Cokernel::new(&m);
        assert_eq!(c.order_of(&big(&[1, 0])), Some(BigInt::from(2)));
        assert_eq!(c.order_of(&big(&[0, 1])), Some(BigInt::from(3)));
        assert_eq!(c.order_of(&big(&[1, 1])), Some(BigInt::from(6)));
        assert!(c.contains(&big(&[4, -3])));
        // Z^2 / <(1,1)> = Z, every nonzero class has infinite order
        let c = Cokernel::new(&Matrix::<BigInt>::from_i64_rows(&[&[1, 1]]));
        assert_eq!(c.order_of(&big(&[1, 0])), None);
        assert_eq!(c.order_of(&big(&[1, -1])), None);
        assert_eq!(c.order_of(&big(&[2, 2])), Some(BigInt::from(1)));
    }

    #[test]
    fn rendering_and_parsing() {
        let g = canonical_group(&big(&[2]), 2);
        assert_eq!(g.to_string(), "Z/2 x Z^2");
        assert_eq!(G::free(1).to_string(), "Z");
        assert_eq!(G::trivial().to_string(), "0");
        assert_eq!("Z/2 x Z^2".parse::<G>().unwrap(), g);
        assert_eq!("Z^2 x Z/3 x Z/2".parse::<G>().unwrap(), canonical_group(&big(&[6]), 2));
        assert!("Z/x".parse::<G>().is_err());
    }
}
