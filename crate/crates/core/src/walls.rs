//! Walls of type `(c1, c2)` and `(c1, c2)`-suitable polarizations.
//!
//! A wall is a class `zeta = c1 (mod 2)` with `c1^2 - 4c2 <= zeta^2 < 0`.
//! It separates the fibre class `F` from a polarization `L` when
//! `zeta.F > 0 > zeta.L`. A polarization with no separating wall (and no
//! wall orthogonal to it) lies in a chamber whose closure contains `F`.
//!
//! # Enumeration
//!
//! Write `zeta = a C0 + b F + sum c_i E_i`, `L = p C0 + s F + sum l_i E_i`
//! and `t = zeta.L`. Eliminating `b` through `t` gives
//!
//! ```text
//! p^2 zeta^2 = -a^2 L^2 + 2 a p t - sum_i (p c_i - a l_i)^2
//! ```
//!
//! so `zeta^2 >= -(4c2 - c1^2) = -N` confines `(p c_i - a l_i)` to a ball
//! of squared radius `R(a, t) = -a^2 L^2 + 2 a p t + p^2 N`. `R` is
//! decreasing in `a >= 1` and increasing in `t`, so the search runs over
//! `a = 1, 2, ..` while `R(a, 0) >= 0` and `t = 0, -1, ..` while
//! `R(a, t) >= 0`. For `t <= 0` the bound `zeta^2 < 0` is automatic.

use num_integer::Roots;
use serde::Serialize;

use crate::error::{Error, Result, Warning};
use crate::invariants::{length_from_zeta, ChernData};
use crate::lattice::{DivisorClass, SurfaceConfig};

/// Products of `L` with the classes that must pair positively with an
/// ample class. Passing these is necessary, not sufficient, for ampleness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivityChecks {
    pub square: i64,
    pub fiber: i64,
    pub minimal_section: i64,
    pub exceptional: Vec<i64>,
    pub strict_fibers: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Polarization {
    cls: DivisorClass,
    checks: PositivityChecks,
}

impl Polarization {
    pub fn new(surface: &SurfaceConfig, cls: DivisorClass) -> Result<Self> {
        surface.check(&cls)?;
        let fiber = surface.fiber();
        let mut strict_fibers = Vec::with_capacity(surface.points());
        let mut exceptional = Vec::with_capacity(surface.points());
        for i in 1..=surface.points() {
            let ei = surface.exceptional(i)?;
            exceptional.push(surface.intersect(&cls, &ei)?);
            strict_fibers.push(surface.intersect(&cls, &fiber.checked_sub(&ei)?)?);
        }
        let checks = PositivityChecks {
            square: surface.square(&cls)?,
            fiber: surface.intersect(&cls, &fiber)?,
            minimal_section: surface.intersect(&cls, &surface.c0())?,
            exceptional,
            strict_fibers,
        };
        let fail = |what: String, v: i64| {
            Err(Error::InvalidPolarization(format!("{what} = {v} <= 0 for L = {cls}")))
        };
        if checks.square <= 0 {
            return fail("L^2".into(), checks.square);
        }
        if checks.fiber <= 0 {
            return fail("L.F".into(), checks.fiber);
        }
        if checks.minimal_section <= 0 {
            return fail("L.C0".into(), checks.minimal_section);
        }
        for (i, (&x, &y)) in checks.exceptional.iter().zip(&checks.strict_fibers).enumerate() {
            if x <= 0 {
                return fail(format!("L.E{}", i + 1), x);
            }
            if y <= 0 {
                return fail(format!("L.(F-E{})", i + 1), y);
            }
        }
        Ok(Polarization { cls, checks })
    }

    pub fn class(&self) -> &DivisorClass {
        &self.cls
    }

    pub fn checks(&self) -> &PositivityChecks {
        &self.checks
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct WallClass {
    pub zeta: DivisorClass,
    pub zeta_sq: i64,
    pub ell: i64,
    #[serde(rename = "zF")]
    pub z_f: i64,
    #[serde(rename = "zL")]
    pub z_l: i64,
}

/// Inclusive coordinate bounds of the region the enumerator visited.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchRegion {
    pub a: (i64, i64),
    pub b: (i64, i64),
    pub exc: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WallDiagnostics {
    /// Lattice points examined.
    pub scanned: u64,
    /// Points whose induced length was negative (outside the window).
    pub negative_length: u64,
    /// Points failing the congruence with `c1`.
    pub parity_rejected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallSearch {
    /// Walls with `zeta.F > 0 > zeta.L`, sorted.
    pub walls: Vec<WallClass>,
    /// Walls with `zeta.F > 0` and `zeta.L = 0`, sorted.
    pub boundary: Vec<WallClass>,
    pub region: Option<SearchRegion>,
    pub diagnostics: WallDiagnostics,
}

/// Budget for a single enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WallSearchLimits {
    pub max_points: u128,
}

impl Default for WallSearchLimits {
    fn default() -> Self {
        WallSearchLimits { max_points: 20_000_000 }
    }
}

/// Walls separating `F` from `L`.
pub fn enumerate_separating_walls(
    surface: &SurfaceConfig,
    chern: &ChernData,
    l: &Polarization,
) -> Result<Vec<WallClass>> {
    Ok(search_walls(surface, chern, l, WallSearchLimits::default())?.walls)
}

pub fn search_walls(
    surface: &SurfaceConfig,
    chern: &ChernData,
    l: &Polarization,
    limits: WallSearchLimits,
) -> Result<WallSearch> {
    surface.check(&chern.c1)?;
    surface.check(&l.cls)?;
    let mut out = WallSearch {
        walls: Vec::new(),
        boundary: Vec::new(),
        region: None,
        diagnostics: WallDiagnostics::default(),
    };
    let disc = chern.discriminant(surface)? as i128;
    if disc <= 0 {
        return Ok(out);
    }

    let m = surface.points();
    let e = surface.e() as i128;
    let p = l.cls.a as i128;
    let s = l.cls.b as i128;
    let lam: Vec<i128> = l.cls.exc.iter().map(|&x| x as i128).collect();
    let l_sq = l.checks.square as i128;
    let radius = |a: i128, t: i128| -a * a * l_sq + 2 * a * p * t + p * p * disc;

    let a_max = {
        // Largest a with R(a, 0) >= 0, i.e. a^2 L^2 <= p^2 N.
        let mut a = (p * p * disc / l_sq).sqrt();
        while radius(a + 1, 0) >= 0 {
            a += 1;
        }
        a
    };
    if a_max < 1 {
        return Ok(out);
    }

    // Budget: sum over (a, t) of the size of the c-box.
    let mut budget: u128 = 0;
    for a in 1..=a_max {
        let mut t = 0;
        while radius(a, t) >= 0 {
            let side = 2 * radius(a, t).sqrt() / p + 1;
            budget = budget.saturating_add((side.max(1) as u128).saturating_pow(m as u32));
            t -= 1;
        }
        if budget > limits.max_points {
            return Err(Error::SearchBoundsExceeded {
                bound: "lattice points",
                value: budget,
                limit: limits.max_points,
            });
        }
    }

    let mut region = SearchRegion {
        a: (1, a_max as i64),
        b: (i64::MAX, i64::MIN),
        exc: vec![(i64::MAX, i64::MIN); m],
    };
    let mut c = vec![0i128; m];
    for a in 1..=a_max {
        let mut t: i128 = 0;
        loop {
            let r = radius(a, t);
            if r < 0 {
                break;
            }
            let root = r.sqrt();
            // p c_i in [a l_i - root, a l_i + root].
            let ranges: Vec<(i128, i128)> = lam
                .iter()
                .map(|&li| (ceil_div(a * li - root, p), (a * li + root).div_euclid(p)))
                .collect();
            if ranges.iter().all(|(lo, hi)| lo <= hi) {
                for (i, &(lo, hi)) in ranges.iter().enumerate() {
                    let (rlo, rhi) = &mut region.exc[i];
                    *rlo = (*rlo).min(lo as i64);
                    *rhi = (*rhi).max(hi as i64);
                }
                for (ci, (lo, _)) in c.iter_mut().zip(&ranges) {
                    *ci = *lo;
                }
                loop {
                    visit(
                        surface, chern, a, t, &c, e, p, s, &lam, &mut region, &mut out,
                    )?;
                    if !advance(&mut c, &ranges) {
                        break;
                    }
                }
            }
            t -= 1;
        }
    }
    out.walls.sort();
    out.boundary.sort();
    out.region = Some(region);
    Ok(out)
}

fn ceil_div(x: i128, y: i128) -> i128 {
    -((-x).div_euclid(y))
}

/// Odometer step over the product of inclusive ranges.
fn advance(c: &mut [i128], ranges: &[(i128, i128)]) -> bool {
    for (ci, &(lo, hi)) in c.iter_mut().zip(ranges) {
        if *ci < hi {
            *ci += 1;
            return true;
        }
        *ci = lo;
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn visit(
    surface: &SurfaceConfig,
    chern: &ChernData,
    a: i128,
    t: i128,
    c: &[i128],
    e: i128,
    p: i128,
    s: i128,
    lam: &[i128],
    region: &mut SearchRegion,
    out: &mut WallSearch,
) -> Result<()> {
    out.diagnostics.scanned += 1;
    // b p = t + e a p - a s + sum c_i l_i
    let bp = t + e * a * p - a * s + c.iter().zip(lam).map(|(ci, li)| ci * li).sum::<i128>();
    region.b.0 = region.b.0.min(bp.div_euclid(p) as i64);
    region.b.1 = region.b.1.max(ceil_div(bp, p) as i64);
    if bp.rem_euclid(p) != 0 {
        return Ok(());
    }
    let zeta = DivisorClass::new(
        a as i64,
        (bp / p) as i64,
        c.iter().map(|&x| x as i64).collect(),
    );
    if !zeta.congruent_mod2(&chern.c1) {
        out.diagnostics.parity_rejected += 1;
        return Ok(());
    }
    let ell = length_from_zeta(surface, chern, &zeta)?;
    if !ell.is_feasible() {
        out.diagnostics.negative_length += 1;
        return Ok(());
    }
    let wall = WallClass {
        zeta_sq: surface.square(&zeta)?,
        ell: ell.value,
        z_f: a as i64,
        z_l: t as i64,
        zeta,
    };
    debug_assert!(wall.zeta_sq < 0);
    if t == 0 {
        out.boundary.push(wall);
    } else {
        out.walls.push(wall);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Suitability {
    pub suitable: bool,
    /// First separating wall, or the first boundary wall if there is none.
    pub witness: Option<WallClass>,
    pub boundary: Vec<WallClass>,
    pub warnings: Vec<Warning>,
}

/// `L` is suitable when no wall separates it from `F` and no wall is
/// orthogonal to it.
pub fn is_suitable(surface: &SurfaceConfig, chern: &ChernData, l: &Polarization) -> Result<Suitability> {
    let found = search_walls(surface, chern, l, WallSearchLimits::default())?;
    let warnings = found
        .boundary
        .iter()
        .map(|w| Warning::BoundaryWall { zeta: w.zeta.clone() })
        .collect();
    let witness = found.walls.first().or(found.boundary.first()).cloned();
    Ok(Suitability {
        suitable: witness.is_none(),
        witness,
        boundary: found.boundary,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum DvZeroCertificate {
    /// Every `L`-stable bundle with these Chern classes has `d_V = 0`.
    Certified,
    /// A wall that blocks the argument.
    Wall { wall: WallClass },
}

/// For even fibre degree and a suitable `L`, any `d_V > 0` would produce a
/// wall separating `F` from `L`; hence `d_V = 0`.
pub fn certify_dv_zero(
    surface: &SurfaceConfig,
    chern: &ChernData,
    l: &Polarization,
) -> Result<DvZeroCertificate> {
    if chern.c1.a.rem_euclid(2) != 0 {
        return Err(Error::NotApplicable(format!(
            "c1.F = {} is odd; the fibre splitting is unbalanced",
            chern.c1.a
        )));
    }
    let suit = is_suitable(surface, chern, l)?;
    Ok(match suit.witness {
        None => DvZeroCertificate::Certified,
        Some(wall) => DvZeroCertificate::Wall { wall },
    })
}

/// `xi = (L.F) zeta - (L.zeta) F` and `xi^2`. `xi` is orthogonal to `L`.
pub fn hodge_xi(
    surface: &SurfaceConfig,
    l: &DivisorClass,
    zeta: &DivisorClass,
) -> Result<(DivisorClass, i64)> {
    let lf = surface.intersect(l, &surface.fiber())?;
    let lz = surface.intersect(l, zeta)?;
    let xi = zeta
        .checked_scale(lf)?
        .checked_sub(&surface.fiber().checked_scale(lz)?)?;
    let sq = surface.square(&xi)?;
    Ok((xi, sq))
}
