//! Integer model of the numerical lattice of a ruled surface blown up at
//! general points.
//!
//! The basis is `{C0, F, E1, .., Em}` with `C0^2 = -e`, `C0.F = 1`,
//! `F^2 = 0`, `Ei.Ej = -delta_ij` and all other products zero. The lattice
//! has rank `m + 2` and signature `(1, m + 1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{add, mul, narrow, sub, Error, Result};

/// The triple `(g, e, m)`: genus of the base curve, the invariant `e` of
/// the minimal ruled surface, and the number of blown-up general points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSurface", into = "RawSurface")]
pub struct SurfaceConfig {
    genus: i64,
    e: i64,
    points: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurface {
    genus: i64,
    e: i64,
    points: i64,
}

impl TryFrom<RawSurface> for SurfaceConfig {
    type Error = Error;

    fn try_from(raw: RawSurface) -> Result<Self> {
        let points = usize::try_from(raw.points)
            .map_err(|_| Error::InvalidSurface(format!("points = {} < 0", raw.points)))?;
        SurfaceConfig::new(raw.genus, raw.e, points)
    }
}

impl From<SurfaceConfig> for RawSurface {
    fn from(s: SurfaceConfig) -> Self {
        RawSurface {
            genus: s.genus,
            e: s.e,
            points: s.points as i64,
        }
    }
}

impl SurfaceConfig {
    pub fn new(genus: i64, e: i64, points: usize) -> Result<Self> {
        if genus < 0 {
            return Err(Error::InvalidSurface(format!("genus = {genus} < 0")));
        }
        if genus == 0 && e < 0 {
            return Err(Error::InvalidSurface(format!(
                "a ruled surface over the line has e >= 0, got e = {e}"
            )));
        }
        // Keeps every |exc| length representable as an i64 count.
        if points > i32::MAX as usize {
            return Err(Error::InvalidSurface(format!("points = {points} is too large")));
        }
        Ok(SurfaceConfig { genus, e, points })
    }

    /// Hirzebruch surface `F_e` (genus zero, no blowups).
    pub fn hirzebruch(e: i64) -> Result<Self> {
        Self::new(0, e, 0)
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn rank(&self) -> usize {
        self.points + 2
    }

    /// `chi(O_X) = 1 - g`.
    pub fn chi_structure_sheaf(&self) -> i64 {
        1 - self.genus
    }

    /// `q(X) = h^1(O_X) = g`.
    pub fn irregularity(&self) -> i64 {
        self.genus
    }

    pub fn is_hirzebruch(&self) -> bool {
        self.genus == 0 && self.points == 0
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass::zero(self.points)
    }

    pub fn c0(&self) -> DivisorClass {
        DivisorClass::new(1, 0, vec![0; self.points])
    }

    pub fn fiber(&self) -> DivisorClass {
        DivisorClass::new(0, 1, vec![0; self.points])
    }

    /// `E_i` for `i` in `1..=m`.
    pub fn exceptional(&self, i: usize) -> Result<DivisorClass> {
        if i == 0 || i > self.points {
            return Err(Error::InvalidInput(format!(
                "exceptional curve index {i} outside 1..={}",
                self.points
            )));
        }
        let mut exc = vec![0; self.points];
        exc[i - 1] = 1;
        Ok(DivisorClass::new(0, 0, exc))
    }

    /// `sum_i E_i`.
    pub fn exceptional_sum(&self) -> DivisorClass {
        DivisorClass::new(0, 0, vec![1; self.points])
    }

    pub fn check(&self, d: &DivisorClass) -> Result<()> {
        if d.exc.len() != self.points {
            return Err(Error::ConfigMismatch {
                expected: self.points,
                found: d.exc.len(),
            });
        }
        Ok(())
    }

    /// The intersection pairing.
    pub fn intersect(&self, x: &DivisorClass, y: &DivisorClass) -> Result<i64> {
        self.check(x)?;
        self.check(y)?;
        let mut acc = mul(mul(x.a, y.a)?, -self.e)?;
        acc = add(acc, mul(x.a, y.b)?)?;
        acc = add(acc, mul(x.b, y.a)?)?;
        for (cx, cy) in x.exc.iter().zip(&y.exc) {
            acc = sub(acc, mul(*cx, *cy)?)?;
        }
        Ok(acc)
    }

    pub fn square(&self, x: &DivisorClass) -> Result<i64> {
        self.intersect(x, x)
    }

    /// `K_X = -2 C0 + (2g - 2 - e) F + sum E_i`.
    pub fn canonical_class(&self) -> DivisorClass {
        DivisorClass::new(-2, 2 * self.genus - 2 - self.e, vec![1; self.points])
    }

    /// `chi(O_X(D)) = chi(O_X) + D.(D - K)/2`.
    pub fn euler_char(&self, d: &DivisorClass) -> Result<i64> {
        let k = self.canonical_class();
        let d_minus_k = d.checked_sub(&k)?;
        let twice = self.intersect(d, &d_minus_k)?;
        if twice % 2 != 0 {
            return Err(Error::ParityViolation(format!(
                "D.(D-K) = {twice} is odd for D = {d}"
            )));
        }
        add(self.chi_structure_sheaf(), twice / 2)
    }

    /// Numerical semi-decision of effectivity.
    ///
    /// `Effective` answers come from a decomposition over the generators
    /// `C0, F, E_i, F - E_i`. `NotEffective` answers come from a negative
    /// product with a nef class (`F`, the pullback of a nef class of the
    /// minimal model) or from a class pushed forward to zero with a negative
    /// exceptional coefficient.
    pub fn effectivity(&self, d: &DivisorClass) -> Result<Effectivity> {
        self.check(d)?;
        // a C0 + b F + sum c_i E_i = a C0 + y F + sum u_i E_i + sum v_i (F - E_i)
        // has a nonnegative solution iff a >= 0 and b >= sum max(0, -c_i).
        let mut fibre_budget = d.b;
        for &c in &d.exc {
            if c < 0 {
                fibre_budget = sub(fibre_budget, -c)?;
            }
        }
        if d.a >= 0 && fibre_budget >= 0 {
            let mut parts = Vec::new();
            if d.a > 0 {
                parts.push(GeneratorUse { generator: Generator::MinimalSection, count: d.a });
            }
            if fibre_budget > 0 {
                parts.push(GeneratorUse { generator: Generator::Fiber, count: fibre_budget });
            }
            for (i, &c) in d.exc.iter().enumerate() {
                if c > 0 {
                    parts.push(GeneratorUse { generator: Generator::Exceptional(i + 1), count: c });
                } else if c < 0 {
                    parts.push(GeneratorUse { generator: Generator::StrictFiber(i + 1), count: -c });
                }
            }
            return Ok(Effectivity::effective(Witness::Decomposition { uses: parts }));
        }

        if d.a < 0 {
            return Ok(Effectivity::not_effective("D.F", d.a));
        }
        if self.e >= 0 {
            // C0 + eF is nef, and D.(C0 + eF) = b.
            if d.b < 0 {
                return Ok(Effectivity::not_effective("D.(C0+eF)", d.b));
            }
        } else {
            // 2C0 + eF is nef when e < 0, and D.(2C0 + eF) = 2b - ae.
            let v = sub(mul(2, d.b)?, mul(d.a, self.e)?)?;
            if v < 0 {
                return Ok(Effectivity::not_effective("D.(2C0+eF)", v));
            }
        }
        if d.a == 0 && d.b == 0 {
            // Pushes forward to zero, so it is supported on the E_i.
            if let Some(&c) = d.exc.iter().find(|&&c| c < 0) {
                return Ok(Effectivity::not_effective("exceptional coefficient", c));
            }
        }
        Ok(Effectivity::unknown())
    }

    /// Exact `h^0(O(aC0 + bF))` on a Hirzebruch surface:
    /// `sum_{k=0..a} max(0, b - k e + 1)`.
    pub fn h0_hirzebruch(&self, d: &DivisorClass) -> Result<i64> {
        if !self.is_hirzebruch() {
            return Err(Error::UnsupportedSurface(format!(
                "section counts are exact only for g = 0, m = 0 (got g = {}, m = {})",
                self.genus, self.points
            )));
        }
        self.check(d)?;
        if d.a < 0 || d.b < 0 {
            return Ok(0);
        }
        let (a, b, e) = (d.a as i128, d.b as i128, self.e as i128);
        // Last k with a positive summand.
        let last = if e == 0 { a } else { a.min(b / e) };
        let terms = last + 1;
        let total = terms * (b + 1) - e * last * terms / 2;
        narrow(total)
    }
}

/// Integer vector `(a, b, c_1..c_m)` in the basis `{C0, F, E_1..E_m}`.
///
/// Ordering is lexicographic on `(a, b, exc)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
    pub exc: Vec<i64>,
}

impl DivisorClass {
    pub fn new(a: i64, b: i64, exc: Vec<i64>) -> Self {
        DivisorClass { a, b, exc }
    }

    pub fn zero(points: usize) -> Self {
        DivisorClass::new(0, 0, vec![0; points])
    }

    pub fn points(&self) -> usize {
        self.exc.len()
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.exc.iter().all(|&c| c == 0)
    }

    fn same_shape(&self, other: &DivisorClass) -> Result<()> {
        if self.exc.len() != other.exc.len() {
            return Err(Error::ConfigMismatch {
                expected: self.exc.len(),
                found: other.exc.len(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.same_shape(other)?;
        let exc = self
            .exc
            .iter()
            .zip(&other.exc)
            .map(|(x, y)| add(*x, *y))
            .collect::<Result<_>>()?;
        Ok(DivisorClass::new(add(self.a, other.a)?, add(self.b, other.b)?, exc))
    }

    pub fn checked_sub(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.same_shape(other)?;
        let exc = self
            .exc
            .iter()
            .zip(&other.exc)
            .map(|(x, y)| sub(*x, *y))
            .collect::<Result<_>>()?;
        Ok(DivisorClass::new(sub(self.a, other.a)?, sub(self.b, other.b)?, exc))
    }

    pub fn checked_scale(&self, s: i64) -> Result<DivisorClass> {
        let exc = self.exc.iter().map(|c| mul(*c, s)).collect::<Result<_>>()?;
        Ok(DivisorClass::new(mul(self.a, s)?, mul(self.b, s)?, exc))
    }

    pub fn checked_neg(&self) -> Result<DivisorClass> {
        self.checked_scale(-1)
    }

    /// Componentwise congruence modulo 2.
    pub fn congruent_mod2(&self, other: &DivisorClass) -> bool {
        self.exc.len() == other.exc.len()
            && (self.a - other.a) % 2 == 0
            && (self.b - other.b) % 2 == 0
            && self.exc.iter().zip(&other.exc).all(|(x, y)| (x - y) % 2 == 0)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, String)> = vec![(self.a, "C0".into()), (self.b, "F".into())];
        terms.extend(self.exc.iter().enumerate().map(|(i, &c)| (c, format!("E{}", i + 1))));
        let mut first = true;
        for (c, name) in terms.into_iter().filter(|(c, _)| *c != 0) {
            let sign = if c < 0 { "-" } else { "+" };
            match (first, c.unsigned_abs()) {
                (true, 1) if c < 0 => write!(f, "-{name}")?,
                (true, 1) => write!(f, "{name}")?,
                (true, n) => write!(f, "{}{n}{name}", if c < 0 { "-" } else { "" })?,
                (false, 1) => write!(f, " {sign} {name}")?,
                (false, n) => write!(f, " {sign} {n}{name}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Effective,
    NotEffective,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "curve", content = "index", rename_all = "kebab-case")]
pub enum Generator {
    MinimalSection,
    Fiber,
    Exceptional(usize),
    /// Strict transform `F - E_i` of the fibre through the i-th point.
    StrictFiber(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorUse {
    pub generator: Generator,
    pub count: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    /// Nonnegative combination of generators summing to the class.
    Decomposition { uses: Vec<GeneratorUse> },
    /// A necessary condition for effectivity that fails.
    Violated { condition: String, value: i64 },
    /// Section count against the length of a general subscheme: the twisted
    /// ideal sheaf has sections iff `sections > length`.
    SectionCount { sections: i64, length: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Effectivity {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl Effectivity {
    pub fn effective(witness: Witness) -> Self {
        Effectivity { verdict: Verdict::Effective, witness: Some(witness) }
    }

    pub fn not_effective(condition: &str, value: i64) -> Self {
        Effectivity {
            verdict: Verdict::NotEffective,
            witness: Some(Witness::Violated { condition: condition.to_owned(), value }),
        }
    }

    pub fn unknown() -> Self {
        Effectivity { verdict: Verdict::Unknown, witness: None }
    }

    pub fn is_effective(&self) -> bool {
        self.verdict == Verdict::Effective
    }

    pub fn is_not_effective(&self) -> bool {
        self.verdict == Verdict::NotEffective
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dc(a: i64, b: i64, exc: &[i64]) -> DivisorClass {
        DivisorClass::new(a, b, exc.to_vec())
    }

    #[test]
    fn basic_products() {
        let s = SurfaceConfig::new(0, 2, 0).unwrap();
        assert_eq!(s.intersect(&s.c0(), &s.c0()).unwrap(), -2);
        assert_eq!(s.intersect(&s.fiber(), &s.fiber()).unwrap(), 0);
        assert_eq!(s.intersect(&s.c0(), &s.fiber()).unwrap(), 1);

        let s = SurfaceConfig::new(1, 0, 3).unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                let want = if i == j { -1 } else { 0 };
                let (ei, ej) = (s.exceptional(i).unwrap(), s.exceptional(j).unwrap());
                assert_eq!(s.intersect(&ei, &ej).unwrap(), want);
            }
        }
    }

    #[test]
    fn expanded_square() {
        let s = SurfaceConfig::new(0, 1, 2).unwrap();
        let d = dc(1, -10, &[-1, -1]);
        assert_eq!(s.square(&d).unwrap(), -23);
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let s = SurfaceConfig::new(0, 1, 2).unwrap();
        let err = s.intersect(&dc(1, 0, &[0]), &dc(0, 1, &[0, 0])).unwrap_err();
        assert_eq!(err, Error::ConfigMismatch { expected: 2, found: 1 });
        assert!(dc(0, 0, &[1]).checked_add(&dc(0, 0, &[])).is_err());
    }

    #[test]
    fn overflow_is_an_error() {
        let s = SurfaceConfig::new(0, 3, 0).unwrap();
        let big = dc(i64::MAX / 2, 0, &[]);
        assert_eq!(s.square(&big).unwrap_err(), Error::Overflow);
    }

    #[test]
    fn canonical_class_values() {
        assert_eq!(SurfaceConfig::new(0, 0, 0).unwrap().canonical_class(), dc(-2, -2, &[]));
        let s = SurfaceConfig::new(1, 1, 1).unwrap();
        let k = s.canonical_class();
        assert_eq!(k, dc(-2, -1, &[1]));
        assert_eq!(s.intersect(&k, &s.fiber()).unwrap(), -2);
        assert_eq!(s.intersect(&k, &s.exceptional(1).unwrap()).unwrap(), -1);
    }

    #[test]
    fn euler_characteristics() {
        let s = SurfaceConfig::new(3, 1, 1).unwrap();
        assert_eq!(s.euler_char(&s.zero()).unwrap(), -2);

        // -(2n+1)F with n = 3.
        for e in 0..4 {
            let s = SurfaceConfig::hirzebruch(e).unwrap();
            assert_eq!(s.euler_char(&dc(0, -7, &[])).unwrap(), -6);
        }

        // (2r - eta)F + sum (2l_i - 1)E_i with r = -3, eta = 0, l = (0, 1).
        let s = SurfaceConfig::new(1, 0, 2).unwrap();
        assert_eq!(s.euler_char(&dc(0, -6, &[-1, 1])).unwrap(), -7);
    }

    #[test]
    fn effectivity_examples() {
        let s = SurfaceConfig::hirzebruch(1).unwrap();
        assert!(s.effectivity(&s.zero()).unwrap().is_effective());
        let neg = s.effectivity(&dc(0, -1, &[])).unwrap();
        assert!(neg.is_not_effective());
        assert!(matches!(neg.witness, Some(Witness::Violated { .. })));

        let s = SurfaceConfig::new(0, 1, 1).unwrap();
        let strict = s.effectivity(&dc(0, 1, &[-1])).unwrap();
        assert_eq!(
            strict.witness,
            Some(Witness::Decomposition {
                uses: vec![GeneratorUse { generator: Generator::StrictFiber(1), count: 1 }]
            })
        );
        assert!(s.effectivity(&dc(0, 0, &[-1])).unwrap().is_not_effective());
        assert!(s.effectivity(&dc(-1, 5, &[0])).unwrap().is_not_effective());
        // C0 - 2E1 is neither in the generated monoid nor excluded.
        assert_eq!(s.effectivity(&dc(1, 0, &[-2])).unwrap().verdict, Verdict::Unknown);
    }

    #[test]
    fn effectivity_negative_e() {
        let s = SurfaceConfig::new(1, -1, 0).unwrap();
        // 2b - ae = 2(-1) + 2 = 0: not excluded by the nef test.
        assert_eq!(s.effectivity(&dc(2, -1, &[])).unwrap().verdict, Verdict::Unknown);
        assert!(s.effectivity(&dc(1, -1, &[])).unwrap().is_not_effective());
    }

    fn h0_by_sum(e: i64, a: i64, b: i64) -> i64 {
        if a < 0 {
            return 0;
        }
        (0..=a).map(|k| (b - k * e + 1).max(0)).sum()
    }

    #[test]
    fn h0_hirzebruch_values() {
        let s = SurfaceConfig::hirzebruch(1).unwrap();
        assert_eq!(s.h0_hirzebruch(&s.zero()).unwrap(), 1);
        assert_eq!(s.h0_hirzebruch(&dc(1, 1, &[])).unwrap(), 3);
        for e in 1..5 {
            let s = SurfaceConfig::hirzebruch(e).unwrap();
            assert_eq!(s.h0_hirzebruch(&dc(0, 7, &[])).unwrap() - 6, 2);
        }
        for e in 0..5 {
            let s = SurfaceConfig::hirzebruch(e).unwrap();
            for a in -2..8 {
                for b in -3..15 {
                    assert_eq!(s.h0_hirzebruch(&dc(a, b, &[])).unwrap(), h0_by_sum(e, a, b));
                }
            }
        }
    }

    #[test]
    fn h0_rejects_blowups_and_positive_genus() {
        let s = SurfaceConfig::new(0, 1, 1).unwrap();
        assert!(matches!(s.h0_hirzebruch(&s.zero()), Err(Error::UnsupportedSurface(_))));
        let s = SurfaceConfig::new(1, 1, 0).unwrap();
        assert!(matches!(s.h0_hirzebruch(&s.zero()), Err(Error::UnsupportedSurface(_))));
    }

    #[test]
    fn invalid_surfaces() {
        assert!(SurfaceConfig::new(-1, 0, 0).is_err());
        assert!(SurfaceConfig::new(0, -1, 0).is_err());
        assert!(SurfaceConfig::new(2, -1, 0).is_ok());
    }

    #[test]
    fn display() {
        assert_eq!(dc(2, -1, &[]).to_string(), "2C0 - F");
        assert_eq!(dc(0, 0, &[0, 0]).to_string(), "0");
        assert_eq!(dc(-1, 0, &[0, 3]).to_string(), "-C0 + 3E2");
    }
}
