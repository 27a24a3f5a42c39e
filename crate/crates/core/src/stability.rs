//! Box-bounded search for destabilizing sub line bundles of an extension
//! `0 -> O(sub) -> V -> I_Z(quot) -> 0`.
//!
//! A line bundle `O(A)` maps into `V` only if it maps into `O(sub)`
//! (branch 1: `sub - A` effective) or into `I_Z(quot)` (branch 2: `quot - A`
//! has a section vanishing on `Z`). `A` destabilizes when
//! `2 A.L >= c1.L`.

use serde::{Deserialize, Serialize};

use crate::error::{mul, sub, Error, Result};
use crate::lattice::{DivisorClass, Effectivity, SurfaceConfig, Verdict, Witness};
use crate::walls::Polarization;

/// `2 (A.L) - c1.L`. Nonnegative exactly when `A` contradicts stability,
/// positive exactly when it contradicts semistability.
pub fn slope_margin(
    surface: &SurfaceConfig,
    a: &DivisorClass,
    c1: &DivisorClass,
    l: &DivisorClass,
) -> Result<i64> {
    sub(mul(2, surface.intersect(a, l)?)?, surface.intersect(c1, l)?)
}

/// Symmetric coefficient bounds `|a| <= a`, `|b| <= b`, `|c_i| <= exc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchBox {
    pub a: i64,
    pub b: i64,
    pub exc: i64,
}

impl SearchBox {
    pub fn square(bound: i64) -> Self {
        SearchBox { a: bound, b: bound, exc: bound }
    }

    /// `max(5, largest |coefficient| of sub and quot + 3)` in every direction.
    pub fn default_for(sub: &DivisorClass, quot: &DivisorClass) -> Self {
        let largest = [sub, quot]
            .iter()
            .flat_map(|d| [d.a, d.b].into_iter().chain(d.exc.iter().copied()))
            .map(|x| x.saturating_abs())
            .max()
            .unwrap_or(0);
        SearchBox::square(largest.saturating_add(3).max(5))
    }

    fn points(&self, m: usize) -> u128 {
        let side = |x: i64| 2 * x.max(0) as u128 + 1;
        (0..m).fold(side(self.a).saturating_mul(side(self.b)), |acc, _| acc.saturating_mul(side(self.exc)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilityStatus {
    StableCertified,
    DestabilizerFound,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    #[serde(rename = "A")]
    pub class: DivisorClass,
    pub branch: u8,
    pub effectivity: Effectivity,
    pub slope_margin: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub verdict: StabilityStatus,
    /// Both branch checks for every `A` in the box with `slope_margin >= 0`.
    pub candidates: Vec<Candidate>,
    #[serde(rename = "box")]
    pub search_box: SearchBox,
}

impl StabilityVerdict {
    pub fn destabilizers(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter().filter(|c| c.effectivity.is_effective())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilityLimits {
    pub max_points: u128,
}

impl Default for StabilityLimits {
    fn default() -> Self {
        StabilityLimits { max_points: 5_000_000 }
    }
}

/// Exhaustive search of the box for sub line bundles violating
/// `L`-stability.
///
/// On Hirzebruch surfaces branch 2 is decided by counting sections: for `Z`
/// general of length `l`, `h0(I_Z(D)) = max(0, h0(D) - l)`. Elsewhere a
/// branch-2 class is only certified when `Z` is empty.
pub fn destabilizer_search(
    surface: &SurfaceConfig,
    sub_class: &DivisorClass,
    quot: &DivisorClass,
    ell_z: i64,
    l: &Polarization,
    search_box: SearchBox,
) -> Result<StabilityVerdict> {
    destabilizer_search_with(surface, sub_class, quot, ell_z, l, search_box, StabilityLimits::default())
}

pub fn destabilizer_search_with(
    surface: &SurfaceConfig,
    sub_class: &DivisorClass,
    quot: &DivisorClass,
    ell_z: i64,
    l: &Polarization,
    search_box: SearchBox,
    limits: StabilityLimits,
) -> Result<StabilityVerdict> {
    surface.check(sub_class)?;
    surface.check(quot)?;
    if ell_z < 0 {
        return Err(Error::InvalidInput(format!("l(Z) = {ell_z} < 0")));
    }
    if search_box.a < 0 || search_box.b < 0 || search_box.exc < 0 {
        return Err(Error::InvalidInput("search box bounds must be >= 0".into()));
    }
    let points = search_box.points(surface.points());
    if points > limits.max_points {
        return Err(Error::BoxTooLarge { points, limit: limits.max_points });
    }
    let c1 = sub_class.checked_add(quot)?;
    let lc = l.class();
    let c1_l = surface.intersect(&c1, lc)?;

    let m = surface.points();
    let mut candidates = Vec::new();
    let mut found = false;
    let mut unknown = false;
    let mut exc = vec![-search_box.exc; m];
    loop {
        for a in -search_box.a..=search_box.a {
            for b in -search_box.b..=search_box.b {
                let class = DivisorClass::new(a, b, exc.clone());
                let margin = sub(mul(2, surface.intersect(&class, lc)?)?, c1_l)?;
                if margin < 0 {
                    continue;
                }
                let first = surface.effectivity(&sub_class.checked_sub(&class)?)?;
                let second = branch_two(surface, &quot.checked_sub(&class)?, ell_z)?;
                for (branch, eff) in [(1u8, first), (2u8, second)] {
                    match eff.verdict {
                        Verdict::Effective => found = true,
                        Verdict::Unknown => unknown = true,
                        Verdict::NotEffective => {}
                    }
                    candidates.push(Candidate {
                        class: class.clone(),
                        branch,
                        effectivity: eff,
                        slope_margin: margin,
                    });
                }
            }
        }
        if !step(&mut exc, search_box.exc) {
            break;
        }
    }
    let verdict = if found {
        StabilityStatus::DestabilizerFound
    } else if unknown {
        StabilityStatus::Inconclusive
    } else {
        StabilityStatus::StableCertified
    };
    Ok(StabilityVerdict { verdict, candidates, search_box })
}

fn step(exc: &mut [i64], bound: i64) -> bool {
    for c in exc.iter_mut() {
        if *c < bound {
            *c += 1;
            return true;
        }
        *c = -bound;
    }
    false
}

/// Does `I_Z(D)` have a section?
fn branch_two(surface: &SurfaceConfig, d: &DivisorClass, ell_z: i64) -> Result<Effectivity> {
    let eff = surface.effectivity(d)?;
    if ell_z == 0 || eff.is_not_effective() {
        return Ok(eff);
    }
    if surface.is_hirzebruch() {
        let sections = surface.h0_hirzebruch(d)?;
        let verdict = if sections > ell_z { Verdict::Effective } else { Verdict::NotEffective };
        return Ok(Effectivity {
            verdict,
            witness: Some(Witness::SectionCount { sections, length: ell_z }),
        });
    }
    Ok(Effectivity::unknown())
}
