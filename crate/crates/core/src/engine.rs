//! Flux homomorphisms `φ_v : PMap(S) → Z`, the dual handle-shift basis and
//! the splitting of a word into a `κ`-part and a flux-free residual.
//!
//! `φ_v` on a simple class is evaluated geometrically: pick a representative
//! `γ` deep enough that the word never pushes it off its arms, act on it, and
//! read off the color `φ_γ(f(γ))` in a truncation containing both curves.
//! General classes are handled by linearity over the basis `v_1, ..., v_{n-1}`.
//!
//! Sign convention: `v_i` has `v⁺ = {e_i}`, the basepoint end is chosen in
//! `v⁻`, and `Shift(e_n → e_i)` then has `φ_{v_i} = +1`.

use std::fmt;

use crate::curves::{color_in, default_basepoint, CurveShadow};
use crate::error::{Error, Result};
use crate::homology::{decompose, is_simple, sep_rank, simple_partition, SeparatingClass};
use crate::mcg::{act, Generator, MappingWord};
use crate::surface::{Genus, SurfaceSpec};

/// Image of a word in `A_S ≅ Z^{n-1}`: entry `i` is `φ_{v_{i+1}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FluxVector {
    values: Vec<i64>,
}

impl FluxVector {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for FluxVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `h_i = Shift(e_n → e_i)` for `i = 1..n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBasis {
    shifts: Vec<Generator>,
}

impl DualBasis {
    pub fn shifts(&self) -> &[Generator] {
        &self.shifts
    }

    pub fn len(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }

    pub fn words(&self) -> Vec<MappingWord> {
        self.shifts
            .iter()
            .map(|g| MappingWord::letter(g.clone(), 1).expect("unit exponent"))
            .collect()
    }

    /// `Π h_i^{x_i}` in basis order, zero exponents skipped.
    pub fn kappa(&self, exponents: &[i64]) -> MappingWord {
        assert_eq!(exponents.len(), self.shifts.len());
        self.shifts
            .iter()
            .zip(exponents)
            .filter(|(_, &x)| x != 0)
            .fold(MappingWord::identity(), |acc, (g, &x)| {
                acc.compose(&MappingWord::letter(g.clone(), x).expect("nonzero exponent"))
            })
    }
}

fn check_class(surface: &SurfaceSpec, v: &SeparatingClass) -> Result<()> {
    if v.ends() != surface.arm_count() {
        return Err(Error::DimensionMismatch {
            expected: sep_rank(surface),
            found: v.rank(),
        });
    }
    Ok(())
}

/// Representative of `v` with every arm level at `weight(w) + 1` and no core handles.
pub fn deep_representative(surface: &SurfaceSpec, v: &SeparatingClass, w: &MappingWord) -> Result<CurveShadow> {
    check_class(surface, v)?;
    let positive = simple_partition(v)?;
    let level = w.weight() + 1;
    CurveShadow::arms(surface, positive.positive().iter().map(|&a| (a, level)))
}

/// Normative evaluation depth for a word: twice its weight plus two.
pub fn evaluation_depth(w: &MappingWord) -> u64 {
    2 * w.weight() + 2
}

/// `φ_v(w) = φ_γ(w(γ))` for a given representative `γ` and truncation depth.
pub fn phi_simple_with(
    surface: &SurfaceSpec,
    v: &SeparatingClass,
    w: &MappingWord,
    gamma: &CurveShadow,
    depth: u64,
) -> Result<i64> {
    check_class(surface, v)?;
    simple_partition(v)?;
    if gamma.class(surface.arm_count()) != *v {
        return Err(Error::InvalidCurve("representative is not in the class".into()));
    }
    w.validate(surface)?;
    let image = act(w, gamma)?;
    let basepoint = default_basepoint(gamma, surface.arm_count())?;
    color_in(gamma, &image, basepoint, &surface.truncation(depth)?)
}

/// `φ_v(w)` for a simple nonzero class, via the shadow action.
pub fn phi_simple(surface: &SurfaceSpec, v: &SeparatingClass, w: &MappingWord) -> Result<i64> {
    let gamma = deep_representative(surface, v, w)?;
    phi_simple_with(surface, v, w, &gamma, evaluation_depth(w))
}

/// `φ_v(w) = Σ a_k φ_{v_k}(w)` over the basis expansion of `v`.
pub fn phi(surface: &SurfaceSpec, v: &SeparatingClass, w: &MappingWord) -> Result<i64> {
    check_class(surface, v)?;
    w.validate(surface)?;
    let n = surface.arm_count();
    decompose(v).into_iter().try_fold(0i64, |acc, (a, k)| {
        Ok(acc + a * phi_simple(surface, &SeparatingClass::basis(n, k), w)?)
    })
}

/// `φ_v(w)` by summing per-letter fluxes: `Shift(i→j)^k` contributes
/// `k·([j ∈ v⁺] - [i ∈ v⁺])` on a simple class, twists contribute nothing.
/// Shares no code with the shadow-action route.
pub fn letter_flux(surface: &SurfaceSpec, v: &SeparatingClass, w: &MappingWord) -> Result<i64> {
    check_class(surface, v)?;
    w.validate(surface)?;
    let simple_flux = |positive: &dyn Fn(usize) -> bool| -> i64 {
        w.letters()
            .iter()
            .map(|l| match l.generator {
                Generator::Shift { from, to } => l.exponent * (i64::from(positive(to)) - i64::from(positive(from))),
                Generator::Twist(_) => 0,
            })
            .sum()
    };
    if let Some(p) = is_simple(v) {
        return Ok(simple_flux(&|e| p.contains(e)));
    }
    Ok(decompose(v)
        .into_iter()
        .map(|(a, k)| a * simple_flux(&|e| e == k))
        .sum())
}

pub fn dual_basis(surface: &SurfaceSpec) -> Result<DualBasis> {
    let n = surface.arm_count();
    if n < 2 {
        return Err(Error::TooFewGenusEnds);
    }
    Ok(DualBasis {
        shifts: (0..n - 1).map(|i| Generator::Shift { from: n - 1, to: i }).collect(),
    })
}

/// `(i, j) ↦ φ_{classes[i]}(words[j])`.
pub fn pairing_matrix(
    surface: &SurfaceSpec,
    classes: &[SeparatingClass],
    words: &[MappingWord],
) -> Result<Vec<Vec<i64>>> {
    classes
        .iter()
        .map(|v| words.iter().map(|w| phi(surface, v, w)).collect())
        .collect()
}

/// Image of `w` in `A_S`, in the coordinates dual to `v_1, ..., v_{n-1}`.
pub fn project_to_a(surface: &SurfaceSpec, w: &MappingWord) -> Result<FluxVector> {
    w.validate(surface)?;
    let n = surface.arm_count();
    let values = (0..sep_rank(surface))
        .map(|i| phi_simple(surface, &SeparatingClass::basis(n, i), w))
        .collect::<Result<Vec<_>>>()?;
    Ok(FluxVector { values })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub flux: FluxVector,
    pub kappa: MappingWord,
    pub residual: MappingWord,
}

/// `w = residual · kappa` with `kappa` a product of dual-basis shifts carrying
/// all of the flux of `w`, so the residual lies in the closure of the
/// compactly supported subgroup.
pub fn factor(surface: &SurfaceSpec, w: &MappingWord) -> Result<Factorization> {
    let flux = project_to_a(surface, w)?;
    if surface.arm_count() < 2 {
        return Ok(Factorization {
            flux,
            kappa: MappingWord::identity(),
            residual: w.clone(),
        });
    }
    let kappa = dual_basis(surface)?.kappa(flux.values());
    let residual = w.compose(&kappa.invert());
    Ok(Factorization { flux, kappa, residual })
}

/// Whether every flux of `w` vanishes.
pub fn in_closure_test(surface: &SurfaceSpec, w: &MappingWord) -> Result<bool> {
    Ok(project_to_a(surface, w)?.is_zero())
}

/// Rank of `H^1(PMap(S); Z)`; requires genus at least two.
pub fn h1_rank(surface: &SurfaceSpec) -> Result<usize> {
    if let Genus::Finite(g) = surface.genus() {
        if g < 2 {
            return Err(Error::HypothesisViolated(format!(
                "genus {g} < 2; the rank formula needs genus at least 2"
            )));
        }
    }
    Ok(sep_rank(&surface.fill_and_cap()))
}
