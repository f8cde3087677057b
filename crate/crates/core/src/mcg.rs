//! Formal words over Dehn twists and handle shifts.
//!
//! Words compose like functions: in `u * w` the right factor `w` acts first.
//! A word is never reduced beyond cancelling an adjacent pair of identical
//! generators with opposite exponents.

use std::collections::BTreeSet;

use crate::curves::CurveShadow;
use crate::error::{Error, Result};
use crate::surface::SurfaceSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Dehn twist about a canonical curve.
    Twist(CurveShadow),
    /// Handle shift with repelling end `from` and attracting end `to`.
    Shift { from: usize, to: usize },
}

impl Generator {
    pub fn shift(from: usize, to: usize) -> Result<Generator> {
        if from == to {
            return Err(Error::InvalidGenerator(format!(
                "handle shift needs two distinct ends, got arm #{} twice",
                from + 1
            )));
        }
        Ok(Generator::Shift { from, to })
    }

    pub fn is_shift(&self) -> bool {
        matches!(self, Generator::Shift { .. })
    }

    fn validate(&self, surface: &SurfaceSpec) -> Result<()> {
        match self {
            Generator::Shift { from, to } => {
                for &arm in [from, to] {
                    if arm >= surface.arm_count() {
                        return Err(Error::UnknownEnd(format!("arm #{}", arm + 1)));
                    }
                }
                if from == to {
                    return Err(Error::InvalidGenerator("degenerate handle shift".into()));
                }
                Ok(())
            }
            Generator::Twist(c) => CurveShadow::new(
                surface,
                c.levels().clone(),
                c.core_handles(),
                c.punctures().clone(),
                c.boundary().clone(),
                c.orientation(),
            )
            .map(drop),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: i64,
}

/// Element of `PMap(S)` as a formal product; the last letter acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MappingWord {
    letters: Vec<Letter>,
}

impl MappingWord {
    pub fn identity() -> Self {
        MappingWord::default()
    }

    pub fn letter(generator: Generator, exponent: i64) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::InvalidGenerator("exponent must be nonzero".into()));
        }
        Ok(MappingWord {
            letters: vec![Letter { generator, exponent }],
        })
    }

    pub fn shift(from: usize, to: usize, exponent: i64) -> Result<Self> {
        MappingWord::letter(Generator::shift(from, to)?, exponent)
    }

    pub fn twist(curve: CurveShadow, exponent: i64) -> Result<Self> {
        MappingWord::letter(Generator::Twist(curve), exponent)
    }

    pub fn from_letters(letters: Vec<Letter>) -> Result<Self> {
        if letters.iter().any(|l| l.exponent == 0) {
            return Err(Error::InvalidGenerator("exponent must be nonzero".into()));
        }
        Ok(MappingWord { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Check every generator against `surface`.
    pub fn validate(&self, surface: &SurfaceSpec) -> Result<()> {
        self.letters.iter().try_for_each(|l| l.generator.validate(surface))
    }

    /// `self * rhs`: `rhs` acts first.
    pub fn compose(&self, rhs: &MappingWord) -> MappingWord {
        let mut letters = self.letters.clone();
        letters.extend(rhs.letters.iter().cloned());
        MappingWord { letters }
    }

    pub fn invert(&self) -> MappingWord {
        MappingWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    generator: l.generator.clone(),
                    exponent: -l.exponent,
                })
                .collect(),
        }
    }

    /// Cancel adjacent identical generators with opposite exponents, repeatedly.
    pub fn reduce(&self) -> MappingWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match out.last() {
                Some(top) if top.generator == l.generator && top.exponent == -l.exponent => {
                    out.pop();
                }
                _ => out.push(l.clone()),
            }
        }
        MappingWord { letters: out }
    }

    /// `Σ |exponent|`: an upper bound on how far any arm level can drift.
    pub fn weight(&self) -> u64 {
        self.letters.iter().map(|l| l.exponent.unsigned_abs()).sum()
    }

    pub fn is_twist_only(&self) -> bool {
        !self.letters.iter().any(|l| l.generator.is_shift())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportDepth {
    Finite(u64),
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportProfile {
    pub compact: bool,
    pub arms_touched: BTreeSet<usize>,
    pub depth: SupportDepth,
}

/// Where a word is supported: twist-only words live in a truncation, shifts do not.
pub fn support_profile(w: &MappingWord) -> SupportProfile {
    let mut arms_touched = BTreeSet::new();
    let mut depth = 0;
    let mut compact = true;
    for l in &w.letters {
        match &l.generator {
            Generator::Twist(c) => {
                arms_touched.extend(c.levels().iter().filter(|(_, &lv)| lv > 0).map(|(&a, _)| a));
                depth = depth.max(c.max_level());
            }
            Generator::Shift { from, to } => {
                compact = false;
                arms_touched.insert(*from);
                arms_touched.insert(*to);
            }
        }
    }
    SupportProfile {
        compact,
        arms_touched,
        depth: if compact {
            SupportDepth::Finite(depth)
        } else {
            SupportDepth::Unbounded
        },
    }
}

/// Apply `w` to a shadow, rightmost letter first.
///
/// Twists leave the profile unchanged. `Shift(i→j)^k` moves a curve on arm
/// `i` down by `k` levels and a curve on arm `j` up by `k` levels.
pub fn act(w: &MappingWord, c: &CurveShadow) -> Result<CurveShadow> {
    let mut out = c.clone();
    for l in w.letters.iter().rev() {
        let Generator::Shift { from, to } = l.generator else {
            continue;
        };
        for (arm, delta) in [(from, -l.exponent), (to, l.exponent)] {
            if let Some(level) = out.levels_mut().get_mut(&arm) {
                let moved = *level as i64 + delta;
                if moved < 0 {
                    return Err(Error::GeneralPosition { arm, level: moved });
                }
                *level = moved as u64;
            }
        }
    }
    Ok(out)
}
