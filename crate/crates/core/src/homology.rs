//! The separating homology lattice of the filled surface `Ŝ`.
//!
//! With `n` arm ends `e_1, ..., e_n`, the class `v_i` is represented by an
//! oriented curve whose positive side holds exactly the end `e_i`. The classes
//! `v_1, ..., v_{n-1}` form a basis and `v_n = -(v_1 + ... + v_{n-1})`, so a
//! [`SeparatingClass`] is stored as its integer coordinate vector of length
//! `n - 1`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::surface::{EndRef, SurfaceSpec};

/// Element of `H_1^sep(Ŝ; Z)` in end-partition coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeparatingClass {
    ends: usize,
    coords: Vec<i64>,
}

/// Positive side `v⁺` of a separating curve, as a set of arm indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct EndPartition {
    positive: BTreeSet<usize>,
}

impl EndPartition {
    pub fn new(positive: impl IntoIterator<Item = usize>) -> Self {
        EndPartition {
            positive: positive.into_iter().collect(),
        }
    }

    /// Resolve end identifiers against `surface` and push the result into `Ŝ`:
    /// punctures are forgotten, arms are kept.
    pub fn from_ids<'s>(surface: &SurfaceSpec, ids: impl IntoIterator<Item = &'s str>) -> Result<Self> {
        let mut positive = BTreeSet::new();
        for id in ids {
            match surface.resolve_end(id)? {
                EndRef::Arm(i) => {
                    positive.insert(i);
                }
                EndRef::Puncture(_) => {}
            }
        }
        Ok(EndPartition { positive })
    }

    pub fn positive(&self) -> &BTreeSet<usize> {
        &self.positive
    }

    pub fn contains(&self, arm: usize) -> bool {
        self.positive.contains(&arm)
    }

    pub fn complement(&self, ends: usize) -> EndPartition {
        EndPartition {
            positive: (0..ends).filter(|i| !self.positive.contains(i)).collect(),
        }
    }
}

impl SeparatingClass {
    /// Build a class on a surface with `ends` arm ends.
    pub fn new(ends: usize, coords: Vec<i64>) -> Result<Self> {
        let expected = ends.saturating_sub(1);
        if coords.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coords.len(),
            });
        }
        Ok(SeparatingClass { ends, coords })
    }

    pub fn zero(ends: usize) -> Self {
        SeparatingClass {
            ends,
            coords: vec![0; ends.saturating_sub(1)],
        }
    }

    /// Basis class `v_{i+1}` (0-based `i < ends - 1`).
    pub fn basis(ends: usize, i: usize) -> Self {
        let mut v = SeparatingClass::zero(ends);
        v.coords[i] = 1;
        v
    }

    pub fn ends(&self) -> usize {
        self.ends
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check_same_lattice(&self, other: &SeparatingClass) {
        assert_eq!(self.ends, other.ends, "classes live on different surfaces");
    }
}

impl fmt::Display for SeparatingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Neg for SeparatingClass {
    type Output = SeparatingClass;
    fn neg(mut self) -> SeparatingClass {
        self.coords.iter_mut().for_each(|c| *c = -*c);
        self
    }
}

impl Neg for &SeparatingClass {
    type Output = SeparatingClass;
    fn neg(self) -> SeparatingClass {
        -self.clone()
    }
}

impl Add for &SeparatingClass {
    type Output = SeparatingClass;
    fn add(self, rhs: &SeparatingClass) -> SeparatingClass {
        self.check_same_lattice(rhs);
        SeparatingClass {
            ends: self.ends,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &SeparatingClass {
    type Output = SeparatingClass;
    fn sub(self, rhs: &SeparatingClass) -> SeparatingClass {
        self + &(-rhs)
    }
}

impl Mul<&SeparatingClass> for i64 {
    type Output = SeparatingClass;
    fn mul(self, rhs: &SeparatingClass) -> SeparatingClass {
        SeparatingClass {
            ends: rhs.ends,
            coords: rhs.coords.iter().map(|c| self * c).collect(),
        }
    }
}

/// `Σ_{i ∈ A} v_i`, with `v_n` rewritten as `-(v_1 + ... + v_{n-1})`.
pub fn class_of_partition(surface: &SurfaceSpec, partition: &EndPartition) -> Result<SeparatingClass> {
    let n = surface.arm_count();
    if let Some(&bad) = partition.positive.iter().find(|&&i| i >= n) {
        return Err(Error::UnknownEnd(format!("arm #{}", bad + 1)));
    }
    Ok(partition_coords(n, partition))
}

pub(crate) fn partition_coords(n: usize, partition: &EndPartition) -> SeparatingClass {
    let mut v = SeparatingClass::zero(n);
    if n == 0 {
        return v;
    }
    let last_in = partition.contains(n - 1);
    for (i, c) in v.coords.iter_mut().enumerate() {
        *c = i64::from(partition.contains(i)) - i64::from(last_in);
    }
    v
}

/// Returns `Some(P)` with `v = class_of_partition(P)` when `v` is simple.
///
/// The class of `P` has coordinates `1_P(i) - 1_P(n)`, so a class is simple
/// iff its coordinates lie in `{0, 1}` (then `e_n ∉ P`) or in `{-1, 0}` (then
/// `e_n ∈ P`). The zero class yields the empty positive side.
pub fn is_simple(v: &SeparatingClass) -> Option<EndPartition> {
    let n = v.ends;
    if v.coords.iter().all(|&c| c == 0 || c == 1) {
        Some(EndPartition::new(
            v.coords.iter().enumerate().filter(|(_, &c)| c == 1).map(|(i, _)| i),
        ))
    } else if v.coords.iter().all(|&c| c == 0 || c == -1) {
        Some(EndPartition::new(
            v.coords
                .iter()
                .enumerate()
                .filter(|(_, &c)| c == 0)
                .map(|(i, _)| i)
                .chain(std::iter::once(n - 1)),
        ))
    } else {
        None
    }
}

/// Positive side of a simple nonzero class.
pub fn simple_partition(v: &SeparatingClass) -> Result<EndPartition> {
    if v.is_zero() {
        return Err(Error::ZeroClass);
    }
    is_simple(v).ok_or(Error::NotSimple)
}

/// Expansion `v = Σ a_k v_k` as `(a_k, k)` pairs with 0-based `k`, zero terms omitted.
pub fn decompose(v: &SeparatingClass) -> Vec<(i64, usize)> {
    v.coords
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (c, k))
        .collect()
}

pub fn recombine(ends: usize, terms: &[(i64, usize)]) -> SeparatingClass {
    terms.iter().fold(SeparatingClass::zero(ends), |acc, &(a, k)| {
        &acc + &(a * &SeparatingClass::basis(ends, k))
    })
}

/// Rank of `H_1^sep(Ŝ; Z)`.
pub fn sep_rank(surface: &SurfaceSpec) -> usize {
    surface.arm_count().saturating_sub(1)
}

/// Whether `v` separates the repelling end `from` from the attracting end `to`.
pub fn cuts(v: &SeparatingClass, from: usize, to: usize) -> Result<bool> {
    let p = simple_partition(v)?;
    for end in [from, to] {
        if end >= v.ends {
            return Err(Error::UnknownEnd(format!("arm #{}", end + 1)));
        }
    }
    Ok(p.contains(from) != p.contains(to))
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev_pivot: i128 = 1;
    for col in 0..cols {
        let Some(pivot_row) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col];
        let (top, below) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below {
            let factor = row[col];
            for (x, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (pivot * *x - factor * p) / prev_pivot;
            }
        }
        prev_pivot = pivot;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(coords: &[i64]) -> SeparatingClass {
        SeparatingClass::new(coords.len() + 1, coords.to_vec()).unwrap()
    }

    /// All `2^n` partitions of the arm ends with their classes.
    fn all_partitions(n: usize) -> Vec<(EndPartition, SeparatingClass)> {
        (0u32..1 << n)
            .map(|mask| {
                let p = EndPartition::new((0..n).filter(|i| mask >> i & 1 == 1));
                let v = partition_coords(n, &p);
                (p, v)
            })
            .collect()
    }

    fn simple_by_enumeration(v: &SeparatingClass) -> bool {
        all_partitions(v.ends()).iter().any(|(_, w)| w == v)
    }

    #[test]
    fn partition_examples() {
        let s = SurfaceSpec::with_arms(0, 3);
        let c = |ids: &[usize]| class_of_partition(&s, &EndPartition::new(ids.iter().copied())).unwrap();
        assert_eq!(c(&[0]).coords(), &[1, 0]);
        assert_eq!(c(&[1, 2]).coords(), &[-1, 0]);
        let ladder = SurfaceSpec::ladder();
        assert!(class_of_partition(&ladder, &EndPartition::new([0, 1]))
            .unwrap()
            .is_zero());
        assert!(matches!(
            class_of_partition(&ladder, &EndPartition::new([5])),
            Err(Error::UnknownEnd(_))
        ));
    }

    #[test]
    fn partition_from_ids_forgets_punctures() {
        let s = SurfaceSpec::new(0, 1, ["p"], ["a", "b", "c"]).unwrap();
        let p = EndPartition::from_ids(&s, ["a", "p"]).unwrap();
        assert_eq!(p, EndPartition::new([0]));
        assert_eq!(EndPartition::from_ids(&s, ["zz"]), Err(Error::UnknownEnd("zz".into())));
    }

    #[test]
    fn simplicity_examples() {
        assert_eq!(is_simple(&class(&[1, 1])), Some(EndPartition::new([0, 1])));
        assert_eq!(is_simple(&class(&[2, 0])), None);
        assert_eq!(is_simple(&class(&[0, 0])), Some(EndPartition::default()));
        assert_eq!(is_simple(&class(&[-1, 0])), Some(EndPartition::new([1, 2])));
    }

    #[test]
    fn simplicity_matches_enumeration() {
        for n in 1..=5 {
            let rank = n - 1;
            let mut coords = vec![-2i64; rank];
            loop {
                let v = SeparatingClass::new(n, coords.clone()).unwrap();
                let got = is_simple(&v);
                assert_eq!(got.is_some(), simple_by_enumeration(&v), "{v}");
                if let Some(p) = got {
                    assert_eq!(partition_coords(n, &p), v);
                }
                // odometer over {-2..=2}^rank
                let mut k = 0;
                while k < rank && coords[k] == 2 {
                    coords[k] = -2;
                    k += 1;
                }
                if k == rank {
                    break;
                }
                coords[k] += 1;
            }
        }
    }

    #[test]
    fn complement_negates_and_recovers() {
        for n in 1..=6 {
            for (p, v) in all_partitions(n) {
                let comp = partition_coords(n, &p.complement(n));
                assert_eq!(comp, -&v);
                let back = is_simple(&v).unwrap();
                assert!(back == p || back == p.complement(n) || v.is_zero());
            }
        }
    }

    #[test]
    fn partition_classes_span_full_rank() {
        for n in 1..=6 {
            let rows: Vec<Vec<i64>> = all_partitions(n).into_iter().map(|(_, v)| v.coords).collect();
            assert_eq!(integer_rank(&rows), sep_rank(&SurfaceSpec::with_arms(0, n)));
        }
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&class(&[2, -1])), vec![(2, 0), (-1, 1)]);
        assert!(decompose(&SeparatingClass::zero(3)).is_empty());
        let last = partition_coords(3, &EndPartition::new([2]));
        assert_eq!(decompose(&last), vec![(-1, 0), (-1, 1)]);
    }

    #[test]
    fn ranks() {
        assert_eq!(sep_rank(&SurfaceSpec::z_n(2)), 0);
        assert_eq!(sep_rank(&SurfaceSpec::with_arms(0, 5)), 4);
        assert_eq!(sep_rank(&SurfaceSpec::with_arms(3, 0)), 0);
    }

    #[test]
    fn cut_examples() {
        let v1 = SeparatingClass::basis(2, 0);
        assert_eq!(cuts(&v1, 1, 0), Ok(true));
        let both = partition_coords(3, &EndPartition::new([0, 1]));
        assert_eq!(cuts(&both, 0, 1), Ok(false));
        assert_eq!(cuts(&SeparatingClass::basis(3, 0), 1, 2), Ok(false));
        assert_eq!(cuts(&class(&[2, 0]), 0, 1), Err(Error::NotSimple));
        assert_eq!(cuts(&SeparatingClass::zero(3), 0, 1), Err(Error::ZeroClass));
    }

    #[test]
    fn integer_rank_basics() {
        assert_eq!(integer_rank(&[vec![2, 4], vec![1, 2]]), 1);
        assert_eq!(integer_rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(integer_rank(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), 3);
        assert_eq!(integer_rank(&[]), 0);
    }

    #[test]
    fn dimension_checked() {
        assert_eq!(
            SeparatingClass::new(3, vec![1]),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
        assert!(SeparatingClass::new(0, vec![]).unwrap().is_zero());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn decompose_recombine_identity(coords in proptest::collection::vec(-20i64..20, 0..6)) {
                let n = coords.len() + 1;
                let v = SeparatingClass::new(n, coords).unwrap();
                prop_assert_eq!(recombine(n, &decompose(&v)), v);
            }

            #[test]
            fn negation_flips_coords(coords in proptest::collection::vec(-20i64..20, 0..6)) {
                let n = coords.len() + 1;
                let v = SeparatingClass::new(n, coords.clone()).unwrap();
                let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
                let negated = -&v;
                prop_assert_eq!(negated.coords(), neg.as_slice());
            }
        }
    }
}
