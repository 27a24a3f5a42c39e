use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use ruled_moduli::families::{c1f1_report, example_family_dim_on, Dominance, EvenRegime};
use ruled_moduli::invariants::{bound_prop_a, length_z, nagata_bound, r0_generic, zeta_class};
use ruled_moduli::stability::{destabilizer_search_with, StabilityLimits};
use ruled_moduli::walls::{search_walls, WallSearchLimits};
use ruled_moduli::{
    certify_dv_zero, classify_structure, ext1_rr, family_dim_c1f0, is_suitable, maximize_family_dim,
    ChernData, DivisorClass, ExtensionDatum, Polarization, SearchBox, SurfaceConfig, Warning,
};

use crate::{Failure, Report, Topic, UsageError};

type Outcome = Result<Report, Failure>;

fn parse<T: DeserializeOwned>(text: &str, topic: Topic) -> Result<T, UsageError> {
    serde_json::from_str(text).map_err(|e| UsageError::new(format!("invalid request: {e}"), Some(topic)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceRequest {
    surface: SurfaceConfig,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorRequest {
    surface: SurfaceConfig,
    divisor: DivisorClass,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairRequest {
    surface: SurfaceConfig,
    x: DivisorClass,
    y: DivisorClass,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChernRequest {
    surface: SurfaceConfig,
    chern: ChernData,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TwistRequest {
    surface: SurfaceConfig,
    chern: ChernData,
    #[serde(default)]
    twist: Option<DivisorClass>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InvariantsRequest {
    surface: SurfaceConfig,
    extension: ExtensionDatum,
    #[serde(default)]
    pushforward_degree: Option<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WallsRequest {
    surface: SurfaceConfig,
    chern: ChernData,
    polarization: DivisorClass,
    #[serde(default)]
    max_points: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StabilityRequest {
    surface: SurfaceConfig,
    sub: DivisorClass,
    quot: DivisorClass,
    ell_z: i64,
    polarization: DivisorClass,
    #[serde(rename = "box", default)]
    search_box: Option<SearchBox>,
    #[serde(default)]
    max_points: Option<u64>,
}

pub fn rr(text: &str, topic: Topic) -> Outcome {
    let req: DivisorRequest = parse(text, topic)?;
    let chi = req.surface.euler_char(&req.divisor)?;
    Ok(Report::new(serde_json::json!({ "chi": chi })))
}

pub fn intersect(text: &str, topic: Topic) -> Outcome {
    let req: PairRequest = parse(text, topic)?;
    let value = req.surface.intersect(&req.x, &req.y)?;
    Ok(Report::new(serde_json::json!({ "value": value })))
}

pub fn canonical(text: &str, topic: Topic) -> Outcome {
    let req: SurfaceRequest = parse(text, topic)?;
    let k = req.surface.canonical_class();
    let square = req.surface.square(&k)?;
    Ok(Report::new(serde_json::json!({ "canonical": k, "square": square })))
}

#[derive(Serialize)]
struct TwistResult {
    twist: DivisorClass,
    chern: ChernData,
    discriminant: i64,
}

pub fn twist(text: &str, topic: Topic) -> Outcome {
    let req: TwistRequest = parse(text, topic)?;
    let t = req.twist.unwrap_or_else(|| req.chern.normalizing_twist());
    let chern = ruled_moduli::chern_twist(&req.surface, &req.chern, &t)?;
    let discriminant = chern.discriminant(&req.surface)?;
    Ok(Report::new(TwistResult { twist: t, chern, discriminant }))
}

#[derive(Serialize)]
struct InvariantsResult {
    zeta: DivisorClass,
    zeta_sq: i64,
    length: i64,
    /// Only for even fibre degree with `d = 0`.
    r0: Option<i64>,
    bound_prop_a: bool,
    nagata_bound: Option<i64>,
    unique: bool,
}

pub fn invariants(text: &str, topic: Topic) -> Outcome {
    let req: InvariantsRequest = parse(text, topic)?;
    let s = &req.surface;
    let ed = &req.extension;
    let chern = ed.chern();
    s.check(&chern.c1)?;
    let zeta = zeta_class(s, ed)?;
    let zeta_sq = s.square(&zeta)?;
    let length = length_z(s, ed)?;
    let r0 = if chern.c1.a == 0 && ed.d() == 0 {
        Some(r0_generic(s.genus(), chern.c1.b, chern.c2)?)
    } else {
        None
    };
    let nagata = req.pushforward_degree.map(|deg| nagata_bound(deg, s.genus())).transpose()?;
    let result = InvariantsResult {
        zeta,
        zeta_sq,
        length: length.value,
        r0,
        bound_prop_a: bound_prop_a(ed.r(), chern.c1.b, s.genus(), chern.c2, ed.q()),
        nagata_bound: nagata,
        unique: ed.is_unique(),
    };
    Ok(Report::new(result).with_warnings(length.warning))
}

fn polarization(surface: &SurfaceConfig, cls: DivisorClass) -> Result<Polarization, Failure> {
    surface.check(&cls)?;
    Ok(Polarization::new(surface, cls)?)
}

fn wall_limits(max_points: Option<u64>) -> WallSearchLimits {
    max_points.map_or_else(WallSearchLimits::default, |p| WallSearchLimits { max_points: p as u128 })
}

pub fn walls(text: &str, topic: Topic) -> Outcome {
    let req: WallsRequest = parse(text, topic)?;
    let l = polarization(&req.surface, req.polarization)?;
    let found = search_walls(&req.surface, &req.chern, &l, wall_limits(req.max_points))?;
    let warnings: Vec<Warning> = found
        .boundary
        .iter()
        .map(|w| Warning::BoundaryWall { zeta: w.zeta.clone() })
        .collect();
    Ok(Report::new(found).with_warnings(warnings))
}

pub fn suitable(text: &str, topic: Topic) -> Outcome {
    let req: WallsRequest = parse(text, topic)?;
    if req.max_points.is_some() {
        return Err(UsageError::new("max_points is only accepted by `walls`", Some(topic)).into());
    }
    let l = polarization(&req.surface, req.polarization)?;
    let mut suit = is_suitable(&req.surface, &req.chern, &l)?;
    let warnings = std::mem::take(&mut suit.warnings);
    Ok(Report::new(serde_json::json!({
        "suitable": suit.suitable,
        "witness": suit.witness,
        "boundary": suit.boundary,
    }))
    .with_warnings(warnings))
}

pub fn certify_dv0(text: &str, topic: Topic) -> Outcome {
    let req: WallsRequest = parse(text, topic)?;
    if req.max_points.is_some() {
        return Err(UsageError::new("max_points is only accepted by `walls`", Some(topic)).into());
    }
    let l = polarization(&req.surface, req.polarization)?;
    Ok(Report::new(certify_dv_zero(&req.surface, &req.chern, &l)?))
}

pub fn moduli_dim(text: &str, topic: Topic) -> Outcome {
    let req: ChernRequest = parse(text, topic)?;
    req.surface.check(&req.chern.c1)?;
    let dim = ruled_moduli::moduli_dim(&req.surface, &req.chern)?;
    Ok(Report::new(serde_json::json!({ "moduli_dim": dim })))
}

pub fn classify(text: &str, topic: Topic) -> Outcome {
    let req: ChernRequest = parse(text, topic)?;
    req.surface.check(&req.chern.c1)?;
    Ok(Report::new(classify_structure(&req.surface, &req.chern)?))
}

pub fn stability(text: &str, topic: Topic) -> Outcome {
    let req: StabilityRequest = parse(text, topic)?;
    let l = polarization(&req.surface, req.polarization)?;
    let bx = req.search_box.unwrap_or_else(|| SearchBox::default_for(&req.sub, &req.quot));
    let limits = req
        .max_points
        .map_or_else(StabilityLimits::default, |p| StabilityLimits { max_points: p as u128 });
    let verdict = destabilizer_search_with(&req.surface, &req.sub, &req.quot, req.ell_z, &l, bx, limits)?;
    Ok(Report::new(verdict))
}

#[derive(Serialize)]
struct C1f0Result {
    family_dim: i64,
    moduli_dim: i64,
    dominance: Dominance,
}

#[allow(clippy::too_many_arguments)]
pub fn family_c1f0(g: i64, eta: i64, m: i64, n: i64, eps: i64, r1: i64, ell: Vec<i64>, h0: i64) -> Outcome {
    if m < 0 {
        return Err(UsageError::new(format!("--m must be >= 0, got {m}"), None).into());
    }
    let ell = if ell.is_empty() { vec![0; m as usize] } else { ell };
    if ell.len() as i64 != m {
        return Err(UsageError::new(format!("--ell has {} entries but --m is {m}", ell.len()), None).into());
    }
    let family_dim = family_dim_c1f0(g, eta, m, n, eps, r1, &ell, h0)?;
    let moduli = EvenRegime { g, eta, m, n, eps }.moduli_dim();
    let dominance = Dominance::compare(family_dim, moduli);
    let warnings = (dominance == Dominance::Exceeds)
        .then_some(Warning::FamilyExceedsModuli { family_dim, moduli_dim: moduli });
    Ok(Report::new(C1f0Result { family_dim, moduli_dim: moduli, dominance }).with_warnings(warnings))
}

pub fn family_c1f1(g: i64, e: i64, beta: i64, rho: usize, c2: i64) -> Outcome {
    let surface = SurfaceConfig::new(g, e, rho)?;
    let (report, ext) = c1f1_report(&surface, beta, c2)?;
    let consistency = report.consistency_warning();
    Ok(Report::new(&report)
        .with_assumptions(ext.assumptions)
        .with_warnings(ext.warnings)
        .with_warnings(consistency))
}

pub fn family_example(n: i64, e: i64) -> Outcome {
    let surface = SurfaceConfig::hirzebruch(e)?;
    let dims = example_family_dim_on(&surface, n)?;
    let ext = ext1_rr(&surface, &DivisorClass::new(0, -n, vec![]), &DivisorClass::new(0, n + 1, vec![]), 2 * n)?;
    Ok(Report::new(dims).with_assumptions(ext.assumptions).with_warnings(ext.warnings))
}

pub fn family_maximize(g: i64, eta: i64, m: i64, n: i64, eps: i64) -> Outcome {
    let best = maximize_family_dim(g, eta, m, n, eps)?;
    let warnings = (best.value > best.moduli_dim).then_some(Warning::FamilyExceedsModuli {
        family_dim: best.value,
        moduli_dim: best.moduli_dim,
    });
    Ok(Report::new(best).with_warnings(warnings))
}
