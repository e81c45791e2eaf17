//! Young diagrams, conjugation, the row-doubling λ ⊔ λ and Frobenius coordinates.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest `n` accepted by [`enumerate_partitions`] unless a cap is passed explicitly.
pub const DEFAULT_ENUMERATION_CAP: u32 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotDecreasing(Vec<u32>),
    #[error("Frobenius coordinates must be strictly decreasing sequences of equal length")]
    InvalidFrobenius,
    #[error("enumeration of partitions of {n} exceeds the cap {cap}")]
    CapExceeded { n: u32, cap: u32 },
}

/// A partition λ₁ ≥ λ₂ ≥ … > 0, identified with its Young diagram.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition(parts))
        } else {
            Err(PartitionError::NotDecreasing(parts))
        }
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonempty rows.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row `i` (0-based), zero beyond the last row.
    pub fn row(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.row(0);
        let cols = (0..width)
            .map(|j| self.0.iter().take_while(|&&r| r > j).count() as u32)
            .collect();
        Partition(cols)
    }

    /// λ ⊔ λ = (λ₁, λ₁, λ₂, λ₂, …).
    pub fn double_union(&self) -> Partition {
        Partition(self.0.iter().flat_map(|&r| [r, r]).collect())
    }

    /// Boxes `(i, j)`, 0-based row and column.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &r)| (0..r as usize).map(move |j| (i, j)))
    }

    /// Length of the main diagonal.
    pub fn diagonal(&self) -> usize {
        self.0.iter().enumerate().take_while(|&(i, &r)| r as usize > i).count()
    }

    pub fn to_frobenius(&self) -> FrobeniusCoords {
        let d = self.diagonal();
        let conj = self.conjugate();
        let p = (0..d).map(|i| self.row(i) - i as u32 - 1).collect();
        let q = (0..d).map(|i| conj.row(i) - i as u32 - 1).collect();
        FrobeniusCoords { p, q }
    }

    pub fn from_frobenius(f: &FrobeniusCoords) -> Partition {
        let d = f.p.len();
        // rows inside the diagonal come from P; the remaining rows are read off the columns
        let cols: Vec<u32> = f.q.iter().enumerate().map(|(j, &q)| q + j as u32 + 1).collect();
        let mut rows: Vec<u32> = f.p.iter().enumerate().map(|(i, &p)| p + i as u32 + 1).collect();
        let height = cols.first().copied().unwrap_or(0) as usize;
        for i in d..height {
            rows.push(cols.iter().filter(|&&c| c as usize > i).count() as u32);
        }
        Partition(rows)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = PartitionError;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Frobenius coordinates `(P₁,…,P_D | Q₁,…,Q_D)`: arm and leg lengths of the diagonal boxes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrobeniusCoords {
    #[serde(rename = "P")]
    p: Vec<u32>,
    #[serde(rename = "Q")]
    q: Vec<u32>,
}

impl FrobeniusCoords {
    pub fn new(p: Vec<u32>, q: Vec<u32>) -> Result<Self, PartitionError> {
        let strict = |v: &[u32]| v.windows(2).all(|w| w[0] > w[1]);
        if p.len() == q.len() && strict(&p) && strict(&q) {
            Ok(Self { p, q })
        } else {
            Err(PartitionError::InvalidFrobenius)
        }
    }

    pub fn p(&self) -> &[u32] {
        &self.p
    }

    pub fn q(&self) -> &[u32] {
        &self.q
    }

    pub fn depth(&self) -> usize {
        self.p.len()
    }

    /// Σ (Pᵢ + Qᵢ + 1), the number of boxes.
    pub fn weight(&self) -> u32 {
        self.p.iter().zip(&self.q).map(|(a, b)| a + b + 1).sum()
    }
}

/// All partitions of `n` in lexicographically decreasing order, capped at
/// [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_partitions(n: u32) -> Result<Vec<Partition>, PartitionError> {
    enumerate_partitions_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_partitions_capped(n: u32, cap: u32) -> Result<Vec<Partition>, PartitionError> {
    if n > cap {
        return Err(PartitionError::CapExceeded { n, cap });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fill(n, n, &mut prefix, &mut out);
    Ok(out)
}

fn fill(rest: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(prefix.clone()));
        return;
    }
    for k in (1..=rest.min(max_part)).rev() {
        prefix.push(k);
        fill(rest - k, k, prefix, out);
        prefix.pop();
    }
}

/// Every partition with at most `max_size` boxes, grouped by size.
pub fn partitions_up_to(max_size: u32) -> Result<Vec<Partition>, PartitionError> {
    let mut all = Vec::new();
    for n in 0..=max_size {
        all.extend(enumerate_partitions(n)?);
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[2]).conjugate(), p(&[1, 1]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }

    #[test]
    fn double_union_examples() {
        assert_eq!(Partition::empty().double_union(), Partition::empty());
        assert_eq!(p(&[1]).double_union(), p(&[1, 1]));
        assert_eq!(p(&[2, 1]).double_union(), p(&[2, 2, 1, 1]));
    }

    #[test]
    fn frobenius_examples() {
        let f = Partition::empty().to_frobenius();
        assert_eq!((f.p(), f.q()), (&[][..], &[][..]));
        let f = p(&[2, 2]).to_frobenius();
        assert_eq!((f.p(), f.q()), (&[1, 0][..], &[1, 0][..]));
        let f = p(&[1, 1]).to_frobenius();
        assert_eq!((f.p(), f.q()), (&[0][..], &[1][..]));
    }

    #[test]
    fn from_frobenius_rejects_non_decreasing() {
        assert_eq!(FrobeniusCoords::new(vec![0, 1], vec![1, 0]), Err(PartitionError::InvalidFrobenius));
        assert_eq!(FrobeniusCoords::new(vec![1, 1], vec![1, 0]), Err(PartitionError::InvalidFrobenius));
        assert_eq!(FrobeniusCoords::new(vec![1], vec![]), Err(PartitionError::InvalidFrobenius));
    }

    #[test]
    fn frobenius_json() {
        let f = p(&[3, 1]).to_frobenius();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"P":[2],"Q":[1]}"#);
        assert_eq!(serde_json::to_string(&p(&[3, 1])).unwrap(), "[3,1]");
    }

    #[test]
    fn enumeration_order_and_counts() {
        assert_eq!(enumerate_partitions(0).unwrap(), vec![Partition::empty()]);
        let four = enumerate_partitions(4).unwrap();
        assert_eq!(four, vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]);
        assert_eq!(enumerate_partitions(10).unwrap().len(), 42);
        assert_eq!(
            enumerate_partitions(41),
            Err(PartitionError::CapExceeded { n: 41, cap: DEFAULT_ENUMERATION_CAP })
        );
    }

    #[test]
    fn doubled_frobenius_pairs_arms() {
        // P_{2i-1} = P_{2i} + 1 for all diagonal pairs of λ ⊔ λ
        for n in 0..=10 {
            for lam in enumerate_partitions(n).unwrap() {
                let f = lam.double_union().to_frobenius();
                for pair in f.p().chunks_exact(2) {
                    assert_eq!(pair[0], pair[1] + 1, "{lam}");
                }
                if f.depth() % 2 == 1 {
                    assert_eq!(*f.p().last().unwrap(), 0, "{lam}");
                }
            }
        }
    }
}
