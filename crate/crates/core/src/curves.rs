//! Canonical separating curves, the genus ledger and the coloring of `C_v`.
//!
//! A [`CurveShadow`] records only what the genus ledger can see of a separating
//! curve: which arms lie on its `P`-side and where it crosses each of them,
//! how many core handles it encloses (an initial segment of a fixed handle
//! order), and which punctures and boundary circles sit on the `P`-side.
//!
//! Inside a truncation `K` of depth `m`, the `P`-side of a shadow holds
//! `Σ_{i ∈ P} (m - level_i)` arm handles and `core_handles` core handles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::homology::{partition_coords, simple_partition, EndPartition, SeparatingClass};
use crate::surface::{SurfaceSpec, Truncation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// The `P`-side is `v⁺`.
    Positive,
    /// The `P`-side is `v⁻`.
    Negative,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

/// Bookkeeping profile of a canonical separating curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveShadow {
    levels: BTreeMap<usize, u64>,
    core_handles: u32,
    punctures: BTreeSet<usize>,
    boundary: BTreeSet<usize>,
    orientation: Orientation,
}

impl CurveShadow {
    pub fn new(
        surface: &SurfaceSpec,
        levels: BTreeMap<usize, u64>,
        core_handles: u32,
        punctures: BTreeSet<usize>,
        boundary: BTreeSet<usize>,
        orientation: Orientation,
    ) -> Result<Self> {
        if let Some(&arm) = levels.keys().find(|&&a| a >= surface.arm_count()) {
            return Err(Error::InvalidCurve(format!("no arm #{}", arm + 1)));
        }
        if core_handles > surface.core_genus() {
            return Err(Error::InvalidCurve(format!(
                "encloses {core_handles} core handles but the core has genus {}",
                surface.core_genus()
            )));
        }
        if let Some(&p) = punctures.iter().find(|&&p| p >= surface.puncture_count()) {
            return Err(Error::InvalidCurve(format!("no puncture #{}", p + 1)));
        }
        if let Some(&b) = boundary.iter().find(|&&b| b >= surface.boundary_count() as usize) {
            return Err(Error::InvalidCurve(format!("no boundary circle #{}", b + 1)));
        }
        Ok(CurveShadow {
            levels,
            core_handles,
            punctures,
            boundary,
            orientation,
        })
    }

    /// Shadow with arms `P` cut at the given levels and nothing else enclosed.
    pub fn arms(surface: &SurfaceSpec, levels: impl IntoIterator<Item = (usize, u64)>) -> Result<Self> {
        CurveShadow::new(
            surface,
            levels.into_iter().collect(),
            0,
            BTreeSet::new(),
            BTreeSet::new(),
            Orientation::Positive,
        )
    }

    pub fn with_core_handles(mut self, surface: &SurfaceSpec, h: u32) -> Result<Self> {
        if h > surface.core_genus() {
            return Err(Error::InvalidCurve(format!(
                "encloses {h} core handles but the core has genus {}",
                surface.core_genus()
            )));
        }
        self.core_handles = h;
        Ok(self)
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn levels(&self) -> &BTreeMap<usize, u64> {
        &self.levels
    }

    pub fn level(&self, arm: usize) -> Option<u64> {
        self.levels.get(&arm).copied()
    }

    pub(crate) fn levels_mut(&mut self) -> &mut BTreeMap<usize, u64> {
        &mut self.levels
    }

    pub fn core_handles(&self) -> u32 {
        self.core_handles
    }

    pub fn punctures(&self) -> &BTreeSet<usize> {
        &self.punctures
    }

    pub fn boundary(&self) -> &BTreeSet<usize> {
        &self.boundary
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn arm_side(&self) -> EndPartition {
        EndPartition::new(self.levels.keys().copied())
    }

    pub fn in_arm_side(&self, arm: usize) -> bool {
        self.levels.contains_key(&arm)
    }

    pub fn max_level(&self) -> u64 {
        self.levels.values().copied().max().unwrap_or(0)
    }

    /// `v⁺` of the class this shadow represents.
    pub fn positive_side(&self, ends: usize) -> EndPartition {
        match self.orientation {
            Orientation::Positive => self.arm_side(),
            Orientation::Negative => self.arm_side().complement(ends),
        }
    }

    /// Homology class in `Ŝ`; depends only on the arm side and the orientation.
    pub fn class(&self, ends: usize) -> SeparatingClass {
        partition_coords(ends, &self.positive_side(ends))
    }

    /// Essential and non-peripheral, up to the degenerate profiles bounding a
    /// disc or a once-punctured disc.
    pub fn is_essential(&self) -> bool {
        !(self.levels.is_empty() && self.core_handles == 0 && self.punctures.len() + self.boundary.len() <= 1)
    }

    fn p_side_genus(&self, depth: u64) -> u64 {
        self.levels.values().map(|&l| depth - l).sum::<u64>() + u64::from(self.core_handles)
    }

    /// Whether the `P`-side of `self` contains the `P`-side of `other`.
    fn p_side_contains(&self, other: &CurveShadow) -> bool {
        self.levels
            .iter()
            .zip(other.levels.iter())
            .all(|((_, a), (_, b))| a <= b)
            && self.core_handles >= other.core_handles
            && self.punctures.is_superset(&other.punctures)
            && self.boundary.is_superset(&other.boundary)
    }

    /// Compact profile string, e.g. `P={e1};l=3;h=0`.
    pub fn profile(&self, surface: &SurfaceSpec) -> String {
        let mut out = String::from("P={");
        let names: Vec<&str> = self.levels.keys().map(|&a| surface.arm_ids()[a].as_str()).collect();
        out.push_str(&names.join(","));
        out.push_str("};l=");
        let levels: Vec<String> = self.levels.values().map(u64::to_string).collect();
        out.push_str(&levels.join(","));
        let _ = write!(out, ";h={}", self.core_handles);
        if !self.punctures.is_empty() {
            let q: Vec<&str> = self
                .punctures
                .iter()
                .map(|&p| surface.puncture_ids()[p].as_str())
                .collect();
            let _ = write!(out, ";Q={{{}}}", q.join(","));
        }
        if !self.boundary.is_empty() {
            let b: Vec<String> = self.boundary.iter().map(|b| (b + 1).to_string()).collect();
            let _ = write!(out, ";B={{{}}}", b.join(","));
        }
        if self.orientation == Orientation::Negative {
            out.push_str(";-");
        }
        out
    }
}

/// Disjointness within the canonical family: the `P`-sides are nested.
pub fn are_disjoint(a: &CurveShadow, b: &CurveShadow) -> Result<bool> {
    if a.arm_side() != b.arm_side() {
        return Err(Error::DifferentPartitions);
    }
    Ok(a.p_side_contains(b) || b.p_side_contains(a))
}

/// Genus of the region between two nested shadows, `None` if they are not nested.
pub fn cobounded_genus(a: &CurveShadow, b: &CurveShadow) -> Option<u64> {
    if a.arm_side() != b.arm_side() {
        return None;
    }
    let (outer, inner) = if a.p_side_contains(b) {
        (a, b)
    } else if b.p_side_contains(a) {
        (b, a)
    } else {
        return None;
    };
    let arm_handles: u64 = inner
        .levels
        .values()
        .zip(outer.levels.values())
        .map(|(i, o)| i - o)
        .sum();
    Some(arm_handles + u64::from(outer.core_handles - inner.core_handles))
}

/// `𝔤_K(c)`: genus of the component of `K \ c` facing the basepoint end `e_v`.
///
/// When `e_v` lies off the arm side of `c` this is the genus of `K` minus the
/// handles on the `P`-side; when `e_v` lies in `P` it is the `P`-side itself.
pub fn genus_on_basepoint_side(c: &CurveShadow, truncation: &Truncation<'_>, basepoint: usize) -> Result<u64> {
    let depth = truncation.depth();
    if basepoint >= truncation.base().arm_count() {
        return Err(Error::UnknownEnd(format!("arm #{}", basepoint + 1)));
    }
    if let Some((&arm, &level)) = c.levels.iter().find(|(_, &l)| l > depth) {
        return Err(Error::CurveExceedsTruncation { arm, level, depth });
    }
    let p_side = c.p_side_genus(depth);
    if c.in_arm_side(basepoint) {
        Ok(p_side)
    } else {
        Ok(truncation.genus() - p_side)
    }
}

/// Lowest-ordered arm end on the negative side of `c`'s class.
pub fn default_basepoint(c: &CurveShadow, ends: usize) -> Result<usize> {
    let positive = c.positive_side(ends);
    (0..ends).find(|&e| !positive.contains(e)).ok_or(Error::ZeroClass)
}

fn check_same_class(a: &CurveShadow, b: &CurveShadow) -> Result<()> {
    if a.arm_side() != b.arm_side() {
        return Err(Error::DifferentPartitions);
    }
    if a.orientation != b.orientation {
        return Err(Error::InvalidCurve("curves carry opposite orientations".into()));
    }
    Ok(())
}

fn check_basepoint(c: &CurveShadow, ends: usize, basepoint: usize) -> Result<()> {
    if basepoint >= ends {
        return Err(Error::UnknownEnd(format!("arm #{}", basepoint + 1)));
    }
    if c.positive_side(ends).contains(basepoint) {
        return Err(Error::BasepointSide(basepoint));
    }
    Ok(())
}

/// `φ_γ(c) = 𝔤_K(c) - 𝔤_K(γ)` in a fixed truncation `K` containing both curves.
pub fn color_in(gamma: &CurveShadow, c: &CurveShadow, basepoint: usize, truncation: &Truncation<'_>) -> Result<i64> {
    check_same_class(gamma, c)?;
    check_basepoint(gamma, truncation.base().arm_count(), basepoint)?;
    let gc = genus_on_basepoint_side(c, truncation, basepoint)?;
    let gg = genus_on_basepoint_side(gamma, truncation, basepoint)?;
    Ok(gc as i64 - gg as i64)
}

/// `φ_γ(c)`, evaluated in the shallowest truncation containing both curves
/// and checked against the next one.
pub fn color(surface: &SurfaceSpec, gamma: &CurveShadow, c: &CurveShadow, basepoint: usize) -> Result<i64> {
    let depth = gamma.max_level().max(c.max_level());
    let shallow = color_in(gamma, c, basepoint, &surface.truncation(depth)?)?;
    let deep = color_in(gamma, c, basepoint, &surface.truncation(depth + 1)?)?;
    if shallow != deep {
        return Err(Error::InternalCheck(format!(
            "color depends on truncation depth: {shallow} at {depth}, {deep} at {}",
            depth + 1
        )));
    }
    Ok(shallow)
}

/// `|φ_γ(a) - φ_γ(b)|`, a pseudo-distance on shadows of one class.
pub fn color_distance(
    surface: &SurfaceSpec,
    a: &CurveShadow,
    b: &CurveShadow,
    gamma: &CurveShadow,
    basepoint: usize,
) -> Result<u64> {
    let ca = color(surface, gamma, a, basepoint)?;
    let cb = color(surface, gamma, b, basepoint)?;
    Ok(ca.abs_diff(cb))
}

/// Finite slice of the colored graph `C_v`: canonical shadows with levels `≤ m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredSlice {
    pub class: SeparatingClass,
    pub depth: u64,
    pub reference: CurveShadow,
    pub basepoint: usize,
    pub vertices: Vec<CurveShadow>,
    pub edges: Vec<(usize, usize)>,
    pub colors: Vec<i64>,
}

/// Enumerate the slice of `C_v` supported in `K_m`, colored relative to `gamma`.
///
/// Vertices range over every level vector in `{0..=m}^P` and every core-handle
/// count `0..=core_genus`; punctures and boundary circles are those of `gamma`,
/// since they are part of the class in `S`.
pub fn build_slice(surface: &SurfaceSpec, v: &SeparatingClass, m: u64, gamma: &CurveShadow) -> Result<ColoredSlice> {
    let ends = surface.arm_count();
    if v.ends() != ends {
        return Err(Error::DimensionMismatch {
            expected: ends.saturating_sub(1),
            found: v.rank(),
        });
    }
    let positive = simple_partition(v)?;
    if gamma.class(ends) != *v {
        return Err(Error::InvalidCurve("reference curve is not in the class".into()));
    }
    let basepoint = default_basepoint(gamma, ends)?;
    let arms: Vec<usize> = gamma.levels.keys().copied().collect();
    debug_assert!(gamma.positive_side(ends) == positive);

    let mut vertices = Vec::new();
    let mut levels = vec![0u64; arms.len()];
    loop {
        for h in 0..=surface.core_genus() {
            vertices.push(CurveShadow {
                levels: arms.iter().copied().zip(levels.iter().copied()).collect(),
                core_handles: h,
                punctures: gamma.punctures.clone(),
                boundary: gamma.boundary.clone(),
                orientation: gamma.orientation,
            });
        }
        let mut k = 0;
        while k < levels.len() && levels[k] == m {
            levels[k] = 0;
            k += 1;
        }
        if k == levels.len() {
            break;
        }
        levels[k] += 1;
    }
    vertices.sort();

    let colors = vertices
        .iter()
        .map(|c| color(surface, gamma, c, basepoint))
        .collect::<Result<Vec<_>>>()?;

    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if are_disjoint(&vertices[i], &vertices[j])? {
                edges.push((i, j));
            }
        }
    }

    Ok(ColoredSlice {
        class: v.clone(),
        depth: m,
        reference: gamma.clone(),
        basepoint,
        vertices,
        edges,
        colors,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    SameColor,
    GapMismatch { gap: u64, genus: Option<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub edge: (usize, usize),
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringReport {
    pub proper: bool,
    pub violations: Vec<Violation>,
}

/// Check that every edge joins distinct colors whose gap is the genus of the
/// subsurface the two curves cobound.
pub fn verify_proper_coloring(slice: &ColoredSlice) -> ColoringReport {
    let mut violations = Vec::new();
    for &(i, j) in &slice.edges {
        let gap = slice.colors[i].abs_diff(slice.colors[j]);
        if gap == 0 {
            violations.push(Violation {
                edge: (i, j),
                kind: ViolationKind::SameColor,
            });
            continue;
        }
        let genus = cobounded_genus(&slice.vertices[i], &slice.vertices[j]);
        if genus != Some(gap) {
            violations.push(Violation {
                edge: (i, j),
                kind: ViolationKind::GapMismatch { gap, genus },
            });
        }
    }
    ColoringReport {
        proper: violations.is_empty(),
        violations,
    }
}

/// Plain-text graph export of a slice.
///
/// ```text
/// slice v=(1) m=3
/// v 0 profile=P={e1};l=0;h=0 color=0
/// e 0 1
/// ```
pub struct SliceGraph<'a> {
    pub slice: &'a ColoredSlice,
    pub surface: &'a SurfaceSpec,
}

impl fmt::Display for SliceGraph<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "slice v={} m={}", self.slice.class, self.slice.depth)?;
        for (i, (c, color)) in self.slice.vertices.iter().zip(&self.slice.colors).enumerate() {
            writeln!(f, "v {i} profile={} color={color}", c.profile(self.surface))?;
        }
        for (i, j) in &self.slice.edges {
            writeln!(f, "e {i} {j}")?;
        }
        Ok(())
    }
}
