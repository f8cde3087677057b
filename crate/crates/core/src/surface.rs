//! Finite descriptions of infinite-type surfaces.
//!
//! A [`SurfaceSpec`] is a compact core of finite genus carrying punctures and
//! boundary circles, with finitely many *arms* attached. Each arm is a
//! one-ended ray of handles, one handle at every level `1, 2, 3, ...`, so every
//! arm contributes exactly one end accumulated by genus. Arms are ordered; the
//! order fixes the homology basis used elsewhere in the crate.
//!
//! Arm levels: a cut at level `l` crosses the arm between handle `l` and
//! handle `l + 1`, and level 0 sits at the root of the arm.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Finite description of a surface: core, punctures, boundary and genus arms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceSpec {
    core_genus: u32,
    boundary_count: u32,
    puncture_ids: Vec<String>,
    arm_ids: Vec<String>,
}

/// Genus of a surface, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Genus {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Genus::Finite(g) => write!(f, "{g}"),
            Genus::Infinite => f.write_str("inf"),
        }
    }
}

/// The homeomorphism invariant `(genus, boundary, |ends|, |ends accumulated by genus|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassificationQuadruple {
    pub genus: Genus,
    pub boundary_count: u32,
    pub end_count: usize,
    pub genus_end_count: usize,
}

/// Which kind of end an identifier names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndRef {
    Arm(usize),
    Puncture(usize),
}

impl SurfaceSpec {
    pub fn new<P, A>(core_genus: u32, boundary_count: u32, puncture_ids: P, arm_ids: A) -> Result<Self>
    where
        P: IntoIterator,
        P::Item: Into<String>,
        A: IntoIterator,
        A::Item: Into<String>,
    {
        let puncture_ids: Vec<String> = puncture_ids.into_iter().map(Into::into).collect();
        let arm_ids: Vec<String> = arm_ids.into_iter().map(Into::into).collect();

        let mut seen = BTreeSet::new();
        for id in puncture_ids.iter().chain(arm_ids.iter()) {
            if id.is_empty() {
                return Err(Error::InvalidSurface("empty end identifier".into()));
            }
            if !seen.insert(id.as_str()) {
                return Err(Error::InvalidSurface(format!(
                    "end identifier `{id}` used more than once"
                )));
            }
        }

        Ok(SurfaceSpec {
            core_genus,
            boundary_count,
            puncture_ids,
            arm_ids,
        })
    }

    /// The surface with `arms` genus arms named `e1, e2, ...` and nothing else.
    pub fn with_arms(core_genus: u32, arms: usize) -> Self {
        SurfaceSpec::new(core_genus, 0, Vec::<String>::new(), (1..=arms).map(|i| format!("e{i}")))
            .expect("generated identifiers are distinct")
    }

    /// The ladder surface: two ends, both accumulated by genus.
    pub fn ladder() -> Self {
        SurfaceSpec::with_arms(0, 2)
    }

    /// `Z_n`: one end accumulated by genus and `n` boundary circles.
    pub fn z_n(boundary: u32) -> Self {
        SurfaceSpec::new(0, boundary, Vec::<String>::new(), ["e1"]).expect("single identifier")
    }

    pub fn core_genus(&self) -> u32 {
        self.core_genus
    }

    pub fn boundary_count(&self) -> u32 {
        self.boundary_count
    }

    pub fn puncture_ids(&self) -> &[String] {
        &self.puncture_ids
    }

    pub fn arm_ids(&self) -> &[String] {
        &self.arm_ids
    }

    pub fn arm_count(&self) -> usize {
        self.arm_ids.len()
    }

    pub fn puncture_count(&self) -> usize {
        self.puncture_ids.len()
    }

    pub fn end_count(&self) -> usize {
        self.arm_ids.len() + self.puncture_ids.len()
    }

    pub fn has_infinite_genus(&self) -> bool {
        !self.arm_ids.is_empty()
    }

    pub fn genus(&self) -> Genus {
        if self.has_infinite_genus() {
            Genus::Infinite
        } else {
            Genus::Finite(self.core_genus)
        }
    }

    pub fn arm_index(&self, id: &str) -> Option<usize> {
        self.arm_ids.iter().position(|a| a == id)
    }

    pub fn puncture_index(&self, id: &str) -> Option<usize> {
        self.puncture_ids.iter().position(|p| p == id)
    }

    /// Resolve an end identifier to an arm or a puncture.
    pub fn resolve_end(&self, id: &str) -> Result<EndRef> {
        if let Some(i) = self.arm_index(id) {
            Ok(EndRef::Arm(i))
        } else if let Some(i) = self.puncture_index(id) {
            Ok(EndRef::Puncture(i))
        } else {
            Err(Error::UnknownEnd(id.to_string()))
        }
    }

    /// Resolve an arm given either by name or by 1-based position. Names win.
    pub fn resolve_arm(&self, token: &str) -> Result<usize> {
        if let Some(i) = self.arm_index(token) {
            return Ok(i);
        }
        match token.parse::<usize>() {
            Ok(k) if k >= 1 && k <= self.arm_count() => Ok(k - 1),
            _ => Err(Error::UnknownEnd(token.to_string())),
        }
    }

    /// Shortest token that [`SurfaceSpec::resolve_arm`] maps back to `arm`:
    /// the 1-based index unless another arm is literally named that way.
    pub fn arm_token(&self, arm: usize) -> String {
        let index = (arm + 1).to_string();
        if self.resolve_arm(&index) == Ok(arm) {
            index
        } else {
            self.arm_ids[arm].clone()
        }
    }

    pub fn classify(&self) -> ClassificationQuadruple {
        ClassificationQuadruple {
            genus: self.genus(),
            boundary_count: self.boundary_count,
            end_count: self.end_count(),
            genus_end_count: self.arm_count(),
        }
    }

    /// `Ŝ`: planar ends filled in and boundary capped off.
    pub fn fill_and_cap(&self) -> SurfaceSpec {
        SurfaceSpec {
            core_genus: self.core_genus,
            boundary_count: 0,
            puncture_ids: Vec::new(),
            arm_ids: self.arm_ids.clone(),
        }
    }

    pub fn is_filled(&self) -> bool {
        self.boundary_count == 0 && self.puncture_ids.is_empty()
    }

    /// The finite-type subsurface `K_m` of a principal exhaustion.
    pub fn truncation(&self, depth: u64) -> Result<Truncation<'_>> {
        if self.arm_ids.is_empty() {
            return Err(Error::FiniteType);
        }
        Ok(Truncation { base: self, depth })
    }
}

pub fn same_topological_type(a: &SurfaceSpec, b: &SurfaceSpec) -> bool {
    a.classify() == b.classify()
}

/// `K_m`: the core with all punctures and boundary, plus handles `1..=m` of every arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation<'a> {
    base: &'a SurfaceSpec,
    depth: u64,
}

/// One component of `S \ K_m`: the tail of an arm beyond level `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArmTail {
    pub arm: usize,
    pub first_level: u64,
    pub genus: Genus,
}

impl<'a> Truncation<'a> {
    pub fn base(&self) -> &'a SurfaceSpec {
        self.base
    }

    pub fn depth(&self) -> u64 {
        self.depth
    }

    pub fn genus(&self) -> u64 {
        u64::from(self.base.core_genus) + self.depth * self.base.arm_count() as u64
    }

    /// Handle levels of `arm` lying inside this truncation.
    pub fn arm_levels(&self, arm: usize) -> std::ops::RangeInclusive<u64> {
        debug_assert!(arm < self.base.arm_count());
        1..=self.depth
    }

    /// Number of boundary circles of `K_m` that are not boundary of the surface.
    pub fn cut_boundary_count(&self) -> usize {
        self.base.arm_count()
    }

    pub fn complement_components(&self) -> Vec<ArmTail> {
        (0..self.base.arm_count())
            .map(|arm| ArmTail {
                arm,
                first_level: self.depth + 1,
                genus: Genus::Infinite,
            })
            .collect()
    }

    /// Exhaustion nesting: every handle of `self` is a handle of `other`.
    pub fn is_contained_in(&self, other: &Truncation<'_>) -> bool {
        self.base == other.base
            && (0..self.base.arm_count()).all(|arm| {
                let inner = self.arm_levels(arm);
                let outer = other.arm_levels(arm);
                inner.is_empty() || (outer.contains(inner.start()) && outer.contains(inner.end()))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(core: u32, b: u32, p: &[&str], a: &[&str]) -> SurfaceSpec {
        SurfaceSpec::new(core, b, p.iter().copied(), a.iter().copied()).unwrap()
    }

    #[test]
    fn classify_examples() {
        let q = SurfaceSpec::ladder().classify();
        assert_eq!(
            q,
            ClassificationQuadruple {
                genus: Genus::Infinite,
                boundary_count: 0,
                end_count: 2,
                genus_end_count: 2
            }
        );
        let z = SurfaceSpec::z_n(4).classify();
        assert_eq!(
            (z.genus, z.boundary_count, z.end_count, z.genus_end_count),
            (Genus::Infinite, 4, 1, 1)
        );
        let f = spec(3, 0, &["p"], &[]).classify();
        assert_eq!(
            (f.genus, f.boundary_count, f.end_count, f.genus_end_count),
            (Genus::Finite(3), 0, 1, 0)
        );
    }

    #[test]
    fn topological_type() {
        let z3 = SurfaceSpec::z_n(3);
        let renamed = spec(0, 3, &[], &["tail"]);
        assert!(same_topological_type(&z3, &renamed));
        assert!(same_topological_type(
            &SurfaceSpec::ladder(),
            &spec(5, 0, &[], &["a", "b"])
        ));
        assert!(!same_topological_type(
            &SurfaceSpec::ladder(),
            &spec(0, 0, &["p"], &["a", "b"])
        ));
    }

    #[test]
    fn rejects_duplicate_ids() {
        assert!(matches!(
            SurfaceSpec::new(0, 0, ["x"], ["x"]),
            Err(Error::InvalidSurface(_))
        ));
        assert!(SurfaceSpec::new(0, 0, Vec::<String>::new(), ["a", "a"]).is_err());
    }

    #[test]
    fn fill_and_cap_drops_planar_data() {
        let s = spec(1, 2, &["p"], &["a", "b"]);
        let hat = s.fill_and_cap();
        assert_eq!(hat, spec(1, 0, &[], &["a", "b"]));
        assert_eq!(hat.fill_and_cap(), hat);
        assert_eq!(spec(4, 3, &["p", "q"], &[]).fill_and_cap(), spec(4, 0, &[], &[]));

        let q = hat.classify();
        assert_eq!(q.end_count, q.genus_end_count);
        assert_eq!(q.boundary_count, 0);
        assert_eq!(q.genus, s.genus());
    }

    #[test]
    fn truncation_genus_and_nesting() {
        let ladder = SurfaceSpec::ladder();
        assert_eq!(ladder.truncation(3).unwrap().genus(), 6);
        assert_eq!(SurfaceSpec::z_n(4).truncation(2).unwrap().genus(), 2);
        let s = spec(7, 1, &["p"], &["a", "b", "c"]);
        assert_eq!(s.truncation(0).unwrap().genus(), 7);

        let k2 = s.truncation(2).unwrap();
        let k5 = s.truncation(5).unwrap();
        assert!(k2.is_contained_in(&k5));
        assert!(!k5.is_contained_in(&k2));

        let tails = k2.complement_components();
        assert_eq!(tails.len(), 3);
        assert!(tails.iter().all(|t| t.genus == Genus::Infinite && t.first_level == 3));
    }

    #[test]
    fn truncation_requires_arms() {
        assert_eq!(spec(2, 0, &["p"], &[]).truncation(1), Err(Error::FiniteType));
    }

    #[test]
    fn arm_tokens() {
        let s = spec(0, 0, &[], &["2", "x"]);
        // "2" is a name, so it wins over the index
        assert_eq!(s.resolve_arm("2"), Ok(0));
        assert_eq!(s.resolve_arm("1"), Ok(0));
        assert_eq!(s.arm_token(0), "1");
        assert_eq!(s.arm_token(1), "x");
        assert_eq!(s.resolve_arm("3"), Err(Error::UnknownEnd("3".into())));
    }
}
