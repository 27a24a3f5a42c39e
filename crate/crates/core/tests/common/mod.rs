#![allow(dead_code)]

use rand::Rng;
use ruled_moduli::lattice::{DivisorClass, SurfaceConfig};
use ruled_moduli::walls::{Polarization, WallClass};
use ruled_moduli::ChernData;

/// Scan every lattice point in the given per-coordinate inclusive ranges
/// and test the wall inequalities directly.
pub fn brute_force_walls(
    surface: &SurfaceConfig,
    chern: &ChernData,
    l: &DivisorClass,
    ranges: &[(i64, i64)],
) -> Vec<WallClass> {
    let m = surface.points();
    assert_eq!(ranges.len(), m + 2);
    let e = surface.e();
    let c1 = &chern.c1;
    let c1sq = surface.square(c1).unwrap();
    let window_low = c1sq - 4 * chern.c2;
    let even = |x: i64, y: i64| (x - y).rem_euclid(2) == 0;
    let mut out = Vec::new();
    let mut c: Vec<i64> = ranges[2..].iter().map(|r| r.0).collect();
    loop {
        let exc_sq: i64 = c.iter().map(|x| x * x).sum();
        let exc_l: i64 = c.iter().zip(&l.exc).map(|(x, y)| x * y).sum();
        let exc_parity = c.iter().zip(&c1.exc).all(|(&x, &y)| even(x, y));
        for a in ranges[0].0.max(1)..=ranges[0].1 {
            if !exc_parity || !even(a, c1.a) {
                continue;
            }
            for b in ranges[1].0..=ranges[1].1 {
                if !even(b, c1.b) {
                    continue;
                }
                let sq = -e * a * a + 2 * a * b - exc_sq;
                let zl = -e * a * l.a + a * l.b + b * l.a - exc_l;
                if window_low <= sq && sq < 0 && zl < 0 {
                    let zeta = DivisorClass::new(a, b, c.clone());
                    assert_eq!(surface.square(&zeta).unwrap(), sq);
                    let ell = chern.c2 + (sq - c1sq) / 4;
                    assert!(ell >= 0);
                    out.push(WallClass { zeta, zeta_sq: sq, ell, z_f: a, z_l: zl });
                }
            }
        }
        let mut i = 0;
        loop {
            if i == c.len() {
                out.sort();
                return out;
            }
            if c[i] < ranges[i + 2].1 {
                c[i] += 1;
                break;
            }
            c[i] = ranges[i + 2].0;
            i += 1;
        }
    }
}

/// A polarization `p C0 + s F + sum l_i E_i` passing the positivity checks.
pub fn random_polarization<R: Rng>(rng: &mut R, surface: &SurfaceConfig) -> Polarization {
    let m = surface.points();
    loop {
        let p = rng.gen_range(if m > 0 { 2 } else { 1 }..=4);
        let s = surface.e() * p + rng.gen_range(1..=6);
        let exc = (0..m).map(|_| -rng.gen_range(1..p)).collect();
        if let Ok(pol) = Polarization::new(surface, DivisorClass::new(p, s, exc)) {
            return pol;
        }
    }
}

pub fn random_class<R: Rng>(rng: &mut R, m: usize, bound: i64) -> DivisorClass {
    DivisorClass::new(
        rng.gen_range(-bound..=bound),
        rng.gen_range(-bound..=bound),
        (0..m).map(|_| rng.gen_range(-bound..=bound)).collect(),
    )
}

/// `c1 = alpha C0 + beta F + sum gamma_i E_i` with all coefficients in {0, 1}.
pub fn normalized_first_classes(m: usize) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    for bits in 0..(1u32 << (m + 2)) {
        let bit = |i: usize| ((bits >> i) & 1) as i64;
        out.push(DivisorClass::new(bit(0), bit(1), (0..m).map(|i| bit(i + 2)).collect()));
    }
    out
}
