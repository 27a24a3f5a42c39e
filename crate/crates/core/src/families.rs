//! Dimension counts for moduli spaces and for the extension families that
//! dominate them.

use serde::Serialize;

use crate::error::{add, narrow, Error, Result, Warning};
use crate::invariants::{bound_prop_a, r0_generic, ChernData};
use crate::lattice::{DivisorClass, SurfaceConfig};

/// Expected dimension `4c2 - c1^2 - 3 chi(O_X) + q(X)`.
pub fn moduli_dim(surface: &SurfaceConfig, chern: &ChernData) -> Result<i64> {
    let disc = chern.discriminant(surface)? as i128;
    narrow(disc - 3 * surface.chi_structure_sheaf() as i128 + surface.irregularity() as i128)
}

/// A cohomology vanishing that a dimension count depends on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vanishing {
    /// `h^0` of this class (twisted by `I_Z` when `ideal` is set) is assumed 0.
    pub class: DivisorClass,
    pub ideal: bool,
    /// Outcome of the effectivity screen.
    pub screened: crate::lattice::Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ext1Count {
    pub ext1: i64,
    pub assumptions: Vec<Vanishing>,
    pub warnings: Vec<Warning>,
}

/// `ext^1(I_Z (x) O(B), O(A)) = -chi(O(A - B)) + l(Z)`.
///
/// Valid when `h^0(A - B) = 0` and `h^0(I_Z(K + B - A)) = 0`. Both are
/// screened: a certified effective `A - B` is an error, as is a certified
/// effective `K + B - A` when `Z` is empty. With `l(Z) > 0` an effective
/// `K + B - A` only produces a warning.
pub fn ext1_rr(
    surface: &SurfaceConfig,
    sub: &DivisorClass,
    quot: &DivisorClass,
    ell_z: i64,
) -> Result<Ext1Count> {
    if ell_z < 0 {
        return Err(Error::InvalidInput(format!("l(Z) = {ell_z} < 0")));
    }
    let diff = sub.checked_sub(quot)?;
    let dual = surface.canonical_class().checked_sub(&diff)?;

    let mut warnings = Vec::new();
    let first = surface.effectivity(&diff)?;
    if first.is_effective() {
        return Err(Error::AssumptionViolated { class: diff });
    }
    let second = surface.effectivity(&dual)?;
    if second.is_effective() {
        if ell_z == 0 {
            return Err(Error::AssumptionViolated { class: dual });
        }
        warnings.push(Warning::UnscreenedVanishing { class: dual.clone() });
    }
    let ext1 = add(-surface.euler_char(&diff)?, ell_z)?;
    Ok(Ext1Count {
        ext1,
        assumptions: vec![
            Vanishing { class: diff, ideal: false, screened: first.verdict },
            Vanishing { class: dual, ideal: true, screened: second.verdict },
        ],
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dominance {
    Equal,
    Less,
    Exceeds,
}

impl Dominance {
    pub fn compare(family_dim: i64, moduli_dim: i64) -> Self {
        match family_dim.cmp(&moduli_dim) {
            std::cmp::Ordering::Equal => Dominance::Equal,
            std::cmp::Ordering::Less => Dominance::Less,
            std::cmp::Ordering::Greater => Dominance::Exceeds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family_dim: i64,
    pub moduli_dim: i64,
    pub ext1: i64,
    pub assumptions: Vec<DivisorClass>,
    pub dominance: Dominance,
}

impl FamilyReport {
    pub fn new(family_dim: i64, moduli_dim: i64, ext1: i64, assumptions: Vec<DivisorClass>) -> Self {
        FamilyReport {
            family_dim,
            moduli_dim,
            ext1,
            assumptions,
            dominance: Dominance::compare(family_dim, moduli_dim),
        }
    }

    /// A family never has larger dimension than the moduli space it maps to.
    pub fn consistency_warning(&self) -> Option<Warning> {
        (self.dominance == Dominance::Exceeds).then_some(Warning::FamilyExceedsModuli {
            family_dim: self.family_dim,
            moduli_dim: self.moduli_dim,
        })
    }
}

/// Parameters of the even fibre degree regime: `c1 = eta F + sum E_i` on a
/// surface with `m` points and `c2 = 2n + eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EvenRegime {
    pub g: i64,
    pub eta: i64,
    pub m: i64,
    pub n: i64,
    pub eps: i64,
}

impl EvenRegime {
    pub fn c2(&self) -> i64 {
        2 * self.n + self.eps
    }

    /// `2 r0 - (eta - c2 - g)`, either 0 or 1.
    pub fn parity_defect(&self) -> Result<i64> {
        let r0 = r0_generic(self.g, self.eta, self.c2())?;
        narrow(2 * r0 as i128 - (self.eta as i128 - self.c2() as i128 - self.g as i128))
    }

    /// `4c2 + 4g - 3 + m`.
    pub fn moduli_dim(&self) -> i64 {
        4 * self.c2() + 4 * self.g - 3 + self.m
    }
}

/// `-2 r1 + (eta + 3g - 1) + (m - sum l_i^2) + 3(2n + eps) - h0`.
#[allow(clippy::too_many_arguments)]
pub fn family_dim_c1f0(
    g: i64,
    eta: i64,
    m: i64,
    n: i64,
    eps: i64,
    r1: i64,
    ell: &[i64],
    h0: i64,
) -> Result<i64> {
    if ell.iter().any(|&l| l < 0) {
        return Err(Error::InvalidInput("exceptional multiplicities must be >= 0".into()));
    }
    if h0 < 1 {
        return Err(Error::InvalidInput(format!("h0 = {h0} < 1")));
    }
    let (g, eta, m, n, eps, r1, h0) =
        (g as i128, eta as i128, m as i128, n as i128, eps as i128, r1 as i128, h0 as i128);
    let squares: i128 = ell.iter().map(|&l| (l as i128) * (l as i128)).sum();
    narrow(-2 * r1 + (eta + 3 * g - 1) + (m - squares) + 3 * (2 * n + eps) - h0)
}

/// `4c2 - 2beta + rho + 4g - 3 + e`.
pub fn family_dim_c1f1(g: i64, e: i64, beta: i64, rho: i64, c2: i64) -> Result<i64> {
    let (g, e, beta, rho, c2) = (g as i128, e as i128, beta as i128, rho as i128, c2 as i128);
    narrow(4 * c2 - 2 * beta + rho + 4 * g - 3 + e)
}

/// The odd fibre degree extension `0 -> O(C0 - (c2 - beta)F) -> V -> O(c2 F + sum E_i) -> 0`
/// on `surface`, counted via Riemann-Roch.
pub fn c1f1_report(surface: &SurfaceConfig, beta: i64, c2: i64) -> Result<(FamilyReport, Ext1Count)> {
    let m = surface.points();
    let sub = DivisorClass::new(1, beta - c2, vec![0; m]);
    let quot = DivisorClass::new(0, c2, vec![1; m]);
    let ext = ext1_rr(surface, &sub, &quot, 0)?;
    let family = add(ext.ext1, 2 * surface.genus() - 1)?;
    let chern = ChernData::new(sub.checked_add(&quot)?, c2);
    let moduli = moduli_dim(surface, &chern)?;
    let report = FamilyReport::new(
        family,
        moduli,
        ext.ext1,
        ext.assumptions.iter().map(|v| v.class.clone()).collect(),
    );
    Ok((report, ext))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleDims {
    pub dim: i64,
    pub ext1: i64,
    #[serde(rename = "h0VD")]
    pub h0_vd: i64,
}

/// Family of extensions `0 -> O(-nF) -> V -> I_Z((n+1)F) -> 0` on `F_1`
/// with `Z` general of length `2n`.
pub fn example_family_dim(n: i64) -> Result<ExampleDims> {
    example_family_dim_on(&SurfaceConfig::hirzebruch(1)?, n)
}

/// As [`example_family_dim`] on any Hirzebruch surface.
pub fn example_family_dim_on(surface: &SurfaceConfig, n: i64) -> Result<ExampleDims> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("n = {n} < 1")));
    }
    if !surface.is_hirzebruch() {
        return Err(Error::UnsupportedSurface(
            "the example family lives on a Hirzebruch surface".into(),
        ));
    }
    let ell = 2 * n;
    let sub = DivisorClass::new(0, -n, vec![]);
    let quot = DivisorClass::new(0, n + 1, vec![]);
    let ext = ext1_rr(surface, &sub, &quot, ell)?.ext1;
    // h0(V(nF)) = h0(O) + h0(I_Z((2n+1)F)), the latter with Z general.
    let twisted = quot.checked_sub(&sub)?;
    let h0_vd = 1 + (surface.h0_hirzebruch(&twisted)? - ell).max(0);
    let dim = 2 * ell + ext - h0_vd;
    Ok(ExampleDims { dim, ext1: ext, h0_vd })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Maximizer {
    pub r1: i64,
    pub ell: Vec<i64>,
    pub h0: i64,
    pub value: i64,
    /// `2 r0 - (eta - c2 - g)`.
    pub parity_defect: i64,
    pub moduli_dim: i64,
}

/// Maximizes [`family_dim_c1f0`] over `r1` admissible for the lower bound
/// `2 r1 >= eta - c2 - g + sum_{l_i >= 2} (1 - l_i)^2`, `l_i >= 0` and
/// `h0 >= 1`.
///
/// The objective is strictly decreasing in `r1`, in each `l_i` and in `h0`,
/// and the constraint on `r1` only tightens as the `l_i` grow, so the
/// optimum is `(r0, 0, 1)`. Uniqueness is re-checked against every
/// neighbouring feasible point.
pub fn maximize_family_dim(g: i64, eta: i64, m: i64, n: i64, eps: i64) -> Result<Maximizer> {
    if m < 0 {
        return Err(Error::InvalidInput(format!("m = {m} < 0")));
    }
    let regime = EvenRegime { g, eta, m, n, eps };
    let c2 = regime.c2();
    let r0 = r0_generic(g, eta, c2)?;
    let ell = vec![0; m as usize];
    let value = family_dim_c1f0(g, eta, m, n, eps, r0, &ell, 1)?;
    debug_assert!(bound_prop_a(r0, eta, g, c2, &ell));

    let feasible = |r: i64, l: &[i64], h0: i64| h0 >= 1 && l.iter().all(|&x| x >= 0) && bound_prop_a(r, eta, g, c2, l);
    let mut neighbours: Vec<(i64, Vec<i64>, i64)> = vec![(r0 - 1, ell.clone(), 1), (r0 + 1, ell.clone(), 1), (r0, ell.clone(), 2)];
    for i in 0..ell.len() {
        for step in [1, 2] {
            let mut l = ell.clone();
            l[i] = step;
            neighbours.push((r0, l.clone(), 1));
            neighbours.push((r0 + 1, l, 1));
        }
    }
    for (r, l, h0) in neighbours {
        if feasible(r, &l, h0) && family_dim_c1f0(g, eta, m, n, eps, r, &l, h0)? >= value {
            return Err(Error::InvalidInput(format!(
                "maximizer is not unique: (r1 = {r}, l = {l:?}, h0 = {h0}) ties"
            )));
        }
    }
    Ok(Maximizer {
        r1: r0,
        ell,
        h0: 1,
        value,
        parity_defect: regime.parity_defect()?,
        moduli_dim: regime.moduli_dim(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureKind {
    /// Odd fibre degree: birational to a projective bundle over
    /// `C^[l] x Pic^0 x Pic^0`.
    OddFiber,
    /// Even fibre degree over the line: stably rational.
    EvenFiberGenusZero,
    /// Even fibre degree over a curve of positive genus: dominated by a
    /// projective bundle over `C^[l] x Pic^0 x Pic^0`.
    EvenFiberPositiveGenus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "kebab-case")]
pub enum HilbertExponent {
    Determined(i64),
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: StructureKind,
    pub rational: bool,
    pub stably_rational: bool,
    pub birational_to_projective_bundle: bool,
    pub hilbert_exponent: HilbertExponent,
}

/// Birational type of a moduli component, decided by `c1.F mod 2` and the
/// genus. The Hilbert scheme exponent is reported in the two regimes where
/// it is known: after twisting `c1` to coefficients in `{0, 1}`, all
/// exceptional coefficients equal to one.
pub fn classify_structure(surface: &SurfaceConfig, chern: &ChernData) -> Result<Classification> {
    let normal = chern.normalized(surface)?;
    let all_exceptional = normal.c1.exc.iter().all(|&c| c == 1);
    let odd = normal.c1.a == 1;
    let g0 = surface.genus() == 0;
    let hilbert_exponent = match (all_exceptional, odd) {
        (true, true) => HilbertExponent::Determined(0),
        (true, false) => HilbertExponent::Determined(normal.c2),
        (false, _) => HilbertExponent::Undetermined,
    };
    let kind = match (odd, g0) {
        (true, _) => StructureKind::OddFiber,
        (false, true) => StructureKind::EvenFiberGenusZero,
        (false, false) => StructureKind::EvenFiberPositiveGenus,
    };
    Ok(Classification {
        kind,
        rational: odd && g0,
        stably_rational: g0,
        birational_to_projective_bundle: odd,
        hilbert_exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dc(a: i64, b: i64, exc: &[i64]) -> DivisorClass {
        DivisorClass::new(a, b, exc.to_vec())
    }

    #[test]
    fn moduli_dims() {
        let s = SurfaceConfig::new(2, 3, 4).unwrap();
        for beta in 0..2 {
            for c2 in 1..8 {
                let chern = ChernData::new(dc(1, beta, &[1; 4]), c2);
                assert_eq!(moduli_dim(&s, &chern).unwrap(), 4 * c2 + 3 - 2 * beta + 4 - 3 + 8);
            }
        }
        let s = SurfaceConfig::new(1, 0, 3).unwrap();
        for eta in 0..2 {
            let chern = ChernData::new(dc(0, eta, &[1; 3]), 7);
            assert_eq!(moduli_dim(&s, &chern).unwrap(), 4 * 7 + 4 - 3 + 3);
        }
        let s = SurfaceConfig::hirzebruch(0).unwrap();
        assert_eq!(moduli_dim(&s, &ChernData::new(s.zero(), 0)).unwrap(), -3);
    }

    #[test]
    fn ext1_example_values() {
        for e in 1..4 {
            let s = SurfaceConfig::hirzebruch(e).unwrap();
            let got = ext1_rr(&s, &dc(0, -3, &[]), &dc(0, 4, &[]), 6).unwrap();
            assert_eq!(got.ext1, 12);
            assert_eq!(got.assumptions.len(), 2);
            assert!(got.warnings.is_empty());
        }
    }

    #[test]
    fn ext1_odd_fiber_values() {
        let (g, e, beta, c2) = (2, 1, 1, 9);
        let s = SurfaceConfig::new(g, e, 3).unwrap();
        let got = ext1_rr(&s, &dc(1, beta - c2, &[0; 3]), &dc(0, c2, &[1; 3]), 0).unwrap();
        assert_eq!(got.ext1, 4 * c2 - 2 * beta + 3 + 2 * g + e - 2);
    }

    #[test]
    fn ext1_degenerate_input() {
        let s = SurfaceConfig::new(1, 0, 0).unwrap();
        let err = ext1_rr(&s, &s.fiber(), &s.fiber(), 0).unwrap_err();
        assert_eq!(err, Error::AssumptionViolated { class: s.zero() });
        assert!(ext1_rr(&s, &s.fiber(), &s.zero(), -1).is_err());
    }

    #[test]
    fn c1f0_formula() {
        assert_eq!(family_dim_c1f0(0, 0, 1, 3, 0, -3, &[0], 1).unwrap(), 23);
        let base = family_dim_c1f0(1, 1, 2, 4, 1, -2, &[0, 0], 1).unwrap();
        assert_eq!(family_dim_c1f0(1, 1, 2, 4, 1, -2, &[1, 0], 1).unwrap(), base - 1);
        assert_eq!(family_dim_c1f0(1, 1, 2, 4, 1, -2, &[0, 0], 2).unwrap(), base - 1);
        assert!(family_dim_c1f0(1, 1, 2, 4, 1, -2, &[0, 0], 0).is_err());
        assert!(family_dim_c1f0(1, 1, 2, 4, 1, -2, &[-1, 0], 1).is_err());
    }

    /// Recount `dim F = ext^1 + 2 g + 2 l(Z) - h0` from Riemann-Roch.
    #[test]
    fn c1f0_formula_matches_riemann_roch() {
        for g in 0..3 {
            for eta in 0..2 {
                for ells in [vec![], vec![0], vec![1], vec![2, 0], vec![1, 3]] {
                    let m = ells.len();
                    let s = SurfaceConfig::new(g, 1, m).unwrap();
                    for (n, eps, r1, h0) in [(3, 0, -3, 1), (5, 1, -4, 2), (2, 1, -1, 1)] {
                        let c2 = 2 * n + eps;
                        let sub = DivisorClass::new(0, r1, ells.clone());
                        let quot = DivisorClass::new(0, eta - r1, ells.iter().map(|l| 1 - l).collect());
                        let diff = sub.checked_sub(&quot).unwrap();
                        let ell_z = c2 + ells.iter().map(|l| l * (1 - l)).sum::<i64>();
                        let ext1 = -s.euler_char(&diff).unwrap() + ell_z;
                        let expected = ext1 + 2 * g + 2 * ell_z - h0;
                        assert_eq!(
                            family_dim_c1f0(g, eta, m as i64, n, eps, r1, &ells, h0).unwrap(),
                            expected
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn c1f1_values() {
        assert_eq!(family_dim_c1f1(0, 1, 0, 2, 10).unwrap(), 40);
        let s = SurfaceConfig::new(0, 1, 2).unwrap();
        let (report, ext) = c1f1_report(&s, 0, 10).unwrap();
        assert_eq!(report.family_dim, 40);
        assert_eq!(report.moduli_dim, 40);
        assert_eq!(report.dominance, Dominance::Equal);
        // family = ext1 + 2g - 1 with g = 0
        assert_eq!(ext.ext1 - 1, 40);
    }

    #[test]
    fn example_values() {
        assert_eq!(example_family_dim(1).unwrap(), ExampleDims { dim: 5, ext1: 4, h0_vd: 3 });
        assert_eq!(example_family_dim(3).unwrap(), ExampleDims { dim: 21, ext1: 12, h0_vd: 3 });
        let s = SurfaceConfig::new(0, 1, 1).unwrap();
        assert!(matches!(example_family_dim_on(&s, 2), Err(Error::UnsupportedSurface(_))));
        assert!(example_family_dim(0).is_err());
    }

    #[test]
    fn example_matches_moduli() {
        let s = SurfaceConfig::hirzebruch(2).unwrap();
        for n in 1..30 {
            let dims = example_family_dim_on(&s, n).unwrap();
            assert_eq!(dims.dim, moduli_dim(&s, &ChernData::new(s.fiber(), 2 * n)).unwrap());
        }
    }

    #[test]
    fn maximizer_location() {
        for n in 1..10 {
            let best = maximize_family_dim(0, 1, 0, n, 0).unwrap();
            assert_eq!(best.r1, 1 - n);
            assert_eq!(best.h0, 1);
        }
        let best = maximize_family_dim(1, 0, 3, 4, 1).unwrap();
        assert_eq!(best.ell, vec![0, 0, 0]);
        let next = family_dim_c1f0(1, 0, 3, 4, 1, best.r1 + 1, &best.ell, 1).unwrap();
        assert_eq!(best.value - next, 2);
    }

    /// The optimum sits exactly `1 - defect` above the expected moduli
    /// dimension.
    #[test]
    fn maximizer_value_against_moduli() {
        for g in 0..3 {
            for eta in 0..2 {
                for m in 0..4 {
                    for n in 1..6 {
                        for eps in 0..2 {
                            let best = maximize_family_dim(g, eta, m, n, eps).unwrap();
                            assert_eq!(best.value, best.moduli_dim + 1 - best.parity_defect);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn classification_examples() {
        let s = SurfaceConfig::hirzebruch(1).unwrap();
        let c = classify_structure(&s, &ChernData::new(dc(1, 1, &[]), 5)).unwrap();
        assert_eq!(c.kind, StructureKind::OddFiber);
        assert!(c.rational);
        assert_eq!(c.hilbert_exponent, HilbertExponent::Determined(0));

        let s = SurfaceConfig::new(0, 1, 1).unwrap();
        let c = classify_structure(&s, &ChernData::new(dc(0, 1, &[1]), 7)).unwrap();
        assert_eq!(c.kind, StructureKind::EvenFiberGenusZero);
        assert!(c.stably_rational);
        assert_eq!(c.hilbert_exponent, HilbertExponent::Determined(7));

        let s = SurfaceConfig::new(2, 0, 0).unwrap();
        let c = classify_structure(&s, &ChernData::new(s.fiber(), 4)).unwrap();
        assert_eq!(c.kind, StructureKind::EvenFiberPositiveGenus);
        assert!(!c.stably_rational && !c.birational_to_projective_bundle);

        let s = SurfaceConfig::new(0, 1, 2).unwrap();
        let c = classify_structure(&s, &ChernData::new(dc(0, 1, &[1, 0]), 4)).unwrap();
        assert_eq!(c.hilbert_exponent, HilbertExponent::Undetermined);
    }
}
