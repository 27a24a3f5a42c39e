//! Numerical shadow of the canonical extension
//!
//! ```text
//! 0 -> O(d C0 + r F + D) (x) M -> V -> I_Z((a - d) C0 + (b - r) F + (G - D)) (x) N -> 0
//! ```
//!
//! attached to a rank-two bundle with `c1 = a C0 + b F + G`. Only the
//! integers `(d, r, D)` and the Chern data are modelled; `M`, `N` and `Z`
//! enter through `dim Pic^0 = g` and the length of `Z`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{add, narrow, Error, Result, Warning};
use crate::lattice::{DivisorClass, SurfaceConfig};

/// Chern classes `(c1, c2)` of a rank-two bundle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChernData {
    pub c1: DivisorClass,
    pub c2: i64,
}

impl ChernData {
    pub fn new(c1: DivisorClass, c2: i64) -> Self {
        ChernData { c1, c2 }
    }

    /// `4 c2 - c1^2`.
    pub fn discriminant(&self, surface: &SurfaceConfig) -> Result<i64> {
        let c1sq = surface.square(&self.c1)? as i128;
        narrow(4 * self.c2 as i128 - c1sq)
    }

    /// Fibre degree `c1.F`.
    pub fn fiber_degree(&self) -> i64 {
        self.c1.a
    }

    /// Chern classes of `V (x) O(T)`: `(c1 + 2T, c2 + c1.T + T^2)`.
    pub fn twist(&self, surface: &SurfaceConfig, t: &DivisorClass) -> Result<ChernData> {
        surface.check(&self.c1)?;
        surface.check(t)?;
        let c1 = self.c1.checked_add(&t.checked_scale(2)?)?;
        let c2 = add(add(self.c2, surface.intersect(&self.c1, t)?)?, surface.square(t)?)?;
        Ok(ChernData { c1, c2 })
    }

    /// The twist taking `c1` to its representative with every coefficient in
    /// `{0, 1}`.
    pub fn normalizing_twist(&self) -> DivisorClass {
        let half = |x: i64| -Integer::div_floor(&x, &2);
        DivisorClass::new(half(self.c1.a), half(self.c1.b), self.c1.exc.iter().map(|&c| half(c)).collect())
    }

    /// Twist-normal form: `c1` with coefficients in `{0, 1}`.
    pub fn normalized(&self, surface: &SurfaceConfig) -> Result<ChernData> {
        self.twist(surface, &self.normalizing_twist())
    }
}

/// `V (x) O(T)`.
pub fn chern_twist(surface: &SurfaceConfig, cd: &ChernData, t: &DivisorClass) -> Result<ChernData> {
    cd.twist(surface, t)
}

/// Integers `(d, r, q)` of an extension with `D = sum q_i E_i`, together
/// with the Chern data of the middle term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawExtension", into = "RawExtension")]
pub struct ExtensionDatum {
    d: i64,
    r: i64,
    q: Vec<i64>,
    chern: ChernData,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExtension {
    d: i64,
    r: i64,
    q: Vec<i64>,
    c1: DivisorClass,
    c2: i64,
}

impl TryFrom<RawExtension> for ExtensionDatum {
    type Error = Error;

    fn try_from(raw: RawExtension) -> Result<Self> {
        ExtensionDatum::new(raw.d, raw.r, raw.q, ChernData::new(raw.c1, raw.c2))
    }
}

impl From<ExtensionDatum> for RawExtension {
    fn from(ed: ExtensionDatum) -> Self {
        RawExtension { d: ed.d, r: ed.r, q: ed.q, c1: ed.chern.c1, c2: ed.chern.c2 }
    }
}

impl ExtensionDatum {
    pub fn new(d: i64, r: i64, q: Vec<i64>, chern: ChernData) -> Result<Self> {
        if let Some(bad) = q.iter().find(|&&x| x < 0) {
            return Err(Error::InvalidInput(format!("multiplicity q_i = {bad} < 0")));
        }
        if q.len() != chern.c1.points() {
            return Err(Error::ConfigMismatch { expected: chern.c1.points(), found: q.len() });
        }
        if (2 * d as i128) < chern.c1.a as i128 {
            return Err(Error::InvalidInput(format!(
                "2d = {} is below c1.F = {}",
                2 * d as i128,
                chern.c1.a
            )));
        }
        Ok(ExtensionDatum { d, r, q, chern })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn q(&self) -> &[i64] {
        &self.q
    }

    pub fn chern(&self) -> &ChernData {
        &self.chern
    }

    /// The sub line bundle class `d C0 + r F + sum q_i E_i`.
    pub fn sub_class(&self) -> DivisorClass {
        DivisorClass::new(self.d, self.r, self.q.clone())
    }

    /// The same extension for `V (x) O(T)`: the sub line bundle is twisted
    /// by `T` and so is the Chern data.
    pub fn twist(&self, surface: &SurfaceConfig, t: &DivisorClass) -> Result<ExtensionDatum> {
        let sub = self.sub_class().checked_add(t)?;
        ExtensionDatum::new(sub.a, sub.b, sub.exc, self.chern.twist(surface, t)?)
    }

    /// `2d > c1.F`: the extension is determined by the bundle.
    pub fn is_unique(&self) -> bool {
        2 * (self.d as i128) > self.chern.c1.a as i128
    }
}

/// `zeta = (2d - a) C0 + (2r - b) F + sum (2 q_i - gamma_i) E_i`.
pub fn zeta_class(surface: &SurfaceConfig, ed: &ExtensionDatum) -> Result<DivisorClass> {
    surface.check(&ed.chern.c1)?;
    ed.sub_class().checked_scale(2)?.checked_sub(&ed.chern.c1)
}

/// Length of `Z` together with a warning when it is negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubschemeLength {
    pub value: i64,
    pub warning: Option<Warning>,
}

impl SubschemeLength {
    pub fn is_feasible(&self) -> bool {
        self.value >= 0
    }
}

/// `l(Z) = c2 + (zeta^2 - c1^2) / 4` for an arbitrary class `zeta`.
pub fn length_from_zeta(
    surface: &SurfaceConfig,
    chern: &ChernData,
    zeta: &DivisorClass,
) -> Result<SubschemeLength> {
    surface.check(zeta)?;
    surface.check(&chern.c1)?;
    if !zeta.congruent_mod2(&chern.c1) {
        return Err(Error::ParityViolation(format!(
            "zeta = {zeta} is not congruent to c1 = {} mod 2",
            chern.c1
        )));
    }
    let diff = surface.square(zeta)? as i128 - surface.square(&chern.c1)? as i128;
    if diff % 4 != 0 {
        return Err(Error::ParityViolation(format!("zeta^2 - c1^2 = {diff} is not divisible by 4")));
    }
    let value = narrow(chern.c2 as i128 + diff / 4)?;
    let warning = (value < 0).then_some(Warning::NegativeLength { length: value });
    Ok(SubschemeLength { value, warning })
}

pub fn length_z(surface: &SurfaceConfig, ed: &ExtensionDatum) -> Result<SubschemeLength> {
    length_from_zeta(surface, &ed.chern, &zeta_class(surface, ed)?)
}

fn ceil_half(x: i128) -> Result<i64> {
    narrow(Integer::div_ceil(&x, &2))
}

/// `r0 = ceil((eta - c2 - g) / 2)`.
pub fn r0_generic(g: i64, eta: i64, c2: i64) -> Result<i64> {
    ceil_half(eta as i128 - c2 as i128 - g as i128)
}

/// Least `r` with `2r >= deg - g`.
pub fn nagata_bound(pushforward_degree: i64, g: i64) -> Result<i64> {
    ceil_half(pushforward_degree as i128 - g as i128)
}

/// `2r >= beta - g - c2 + sum_{q_i >= 2} (1 - q_i)^2`.
pub fn bound_prop_a(r: i64, beta: i64, g: i64, c2: i64, q: &[i64]) -> bool {
    let correction: i128 = q
        .iter()
        .filter(|&&qi| qi >= 2)
        .map(|&qi| {
            let t = 1 - qi as i128;
            t * t
        })
        .sum();
    2 * r as i128 >= beta as i128 - g as i128 - c2 as i128 + correction
}

pub fn is_extension_unique(ed: &ExtensionDatum) -> bool {
    ed.is_unique()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dc(a: i64, b: i64, exc: &[i64]) -> DivisorClass {
        DivisorClass::new(a, b, exc.to_vec())
    }

    #[test]
    fn zeta_for_odd_fiber_degree() {
        let s = SurfaceConfig::new(1, 2, 3).unwrap();
        for beta in 0..2 {
            for c2 in 1..6 {
                let c1 = dc(1, beta, &[1, 1, 1]);
                let ed = ExtensionDatum::new(1, beta - c2, vec![0; 3], ChernData::new(c1, c2)).unwrap();
                assert_eq!(zeta_class(&s, &ed).unwrap(), dc(1, beta - 2 * c2, &[-1, -1, -1]));
                let len = length_z(&s, &ed).unwrap();
                assert_eq!(len.value, 0);
                assert!(len.warning.is_none());
            }
        }
    }

    #[test]
    fn balanced_zeta_vanishes() {
        let s = SurfaceConfig::new(0, 1, 2).unwrap();
        let c1 = dc(2, 4, &[2, 0]);
        let ed = ExtensionDatum::new(1, 2, vec![1, 0], ChernData::new(c1.clone(), 9)).unwrap();
        assert!(zeta_class(&s, &ed).unwrap().is_zero());
        let c1sq = s.square(&c1).unwrap();
        assert_eq!(length_z(&s, &ed).unwrap().value, 9 - c1sq / 4);
    }

    #[test]
    fn zeta_for_even_fiber_degree() {
        let s = SurfaceConfig::new(1, 0, 2).unwrap();
        let ed = ExtensionDatum::new(0, -3, vec![0, 1], ChernData::new(dc(0, 0, &[1, 1]), 6)).unwrap();
        assert_eq!(zeta_class(&s, &ed).unwrap(), dc(0, -6, &[-1, 1]));
        assert_eq!(length_z(&s, &ed).unwrap().value, 6);
    }

    #[test]
    fn negative_length_is_a_warning() {
        let s = SurfaceConfig::hirzebruch(0).unwrap();
        let ed = ExtensionDatum::new(3, 0, vec![], ChernData::new(dc(0, 1, &[]), 1)).unwrap();
        // zeta = 6C0 - F, zeta^2 = -12, l = 1 - 3 = -2.
        let len = length_z(&s, &ed).unwrap();
        assert_eq!(len.value, -2);
        assert_eq!(len.warning, Some(Warning::NegativeLength { length: -2 }));
    }

    #[test]
    fn parity_mismatch_rejected() {
        let s = SurfaceConfig::hirzebruch(1).unwrap();
        let chern = ChernData::new(dc(0, 1, &[]), 2);
        assert!(matches!(
            length_from_zeta(&s, &chern, &dc(2, 0, &[])),
            Err(Error::ParityViolation(_))
        ));
    }

    #[test]
    fn datum_validation() {
        let chern = ChernData::new(dc(1, 0, &[1]), 3);
        assert!(ExtensionDatum::new(0, 0, vec![0], chern.clone()).is_err());
        assert!(ExtensionDatum::new(1, 0, vec![-1], chern.clone()).is_err());
        assert!(ExtensionDatum::new(1, 0, vec![], chern.clone()).is_err());
        assert!(ExtensionDatum::new(1, 0, vec![2], chern).is_ok());
    }

    #[test]
    fn r0_values() {
        for n in 1..20 {
            assert_eq!(r0_generic(0, 1, 2 * n).unwrap(), 1 - n);
        }
        assert_eq!(r0_generic(0, 0, 6).unwrap(), -3);
        for g in 0..7 {
            let r0 = r0_generic(g, 0, 0).unwrap();
            assert!(2 * r0 == -g || 2 * r0 == -g + 1);
        }
    }

    #[test]
    fn nagata_values() {
        assert_eq!(nagata_bound(0, 0).unwrap(), 0);
        assert_eq!(nagata_bound(5, 2).unwrap(), 2);
        assert_eq!(nagata_bound(-7, 1).unwrap(), -4);
        assert_eq!(nagata_bound(i64::MAX, i64::MIN).unwrap_err(), Error::Overflow);
    }

    #[test]
    fn proposition_a_bound() {
        assert!(bound_prop_a(r0_generic(3, 1, 7).unwrap(), 1, 3, 7, &[0, 0]));
        assert!(!bound_prop_a(-1, 0, 0, 4, &[3]));
        assert!(bound_prop_a(-3, 1, 2, 5, &[]));
        assert!(!bound_prop_a(-4, 1, 2, 5, &[]));
    }

    #[test]
    fn twist_example() {
        let s = SurfaceConfig::new(0, 0, 1).unwrap();
        let cd = ChernData::new(dc(0, 1, &[1]), 4);
        let t = s.exceptional(1).unwrap();
        let tw = chern_twist(&s, &cd, &t).unwrap();
        assert_eq!(tw, ChernData::new(dc(0, 1, &[3]), 2));
        assert_eq!(cd.discriminant(&s).unwrap(), 17);
        assert_eq!(tw.discriminant(&s).unwrap(), 17);
        assert_eq!(chern_twist(&s, &cd, &s.zero()).unwrap(), cd);
    }

    #[test]
    fn normal_form_has_binary_coefficients() {
        let s = SurfaceConfig::new(0, 3, 2).unwrap();
        let cd = ChernData::new(dc(-3, 4, &[5, -2]), 11);
        let nf = cd.normalized(&s).unwrap();
        assert_eq!(nf.c1, dc(1, 0, &[1, 0]));
        assert_eq!(nf.discriminant(&s).unwrap(), cd.discriminant(&s).unwrap());
    }

    #[test]
    fn uniqueness() {
        let unique = |d, a| {
            ExtensionDatum::new(d, 0, vec![], ChernData::new(dc(a, 0, &[]), 0)).unwrap().is_unique()
        };
        assert!(unique(1, 1));
        assert!(!unique(0, 0));
        assert!(unique(1, 0));
    }

    #[test]
    fn json_shape() {
        let ed = ExtensionDatum::new(0, -1, vec![0], ChernData::new(dc(0, 1, &[1]), 4)).unwrap();
        let json = serde_json::to_string(&ed).unwrap();
        assert_eq!(json, r#"{"d":0,"r":-1,"q":[0],"c1":{"a":0,"b":1,"exc":[1]},"c2":4}"#);
        let back: ExtensionDatum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ed);
        assert!(serde_json::from_str::<ExtensionDatum>(
            r#"{"d":0,"r":-1,"q":[-1],"c1":{"a":0,"b":1,"exc":[1]},"c2":4}"#
        )
        .is_err());
    }
}
