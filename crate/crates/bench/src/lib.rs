//! Fixed inputs shared by the benchmarks.

use ruled_moduli::{ChernData, DivisorClass, Polarization, SurfaceConfig};

/// A wall search on `F_e` blown up at `m` points with `c1 = F + sum E_i`.
pub struct WallCase {
    pub surface: SurfaceConfig,
    pub chern: ChernData,
    pub polarization: Polarization,
}

pub fn wall_case(e: i64, m: usize, c2: i64) -> WallCase {
    let surface = SurfaceConfig::new(0, e, m).expect("valid surface");
    let chern = ChernData::new(DivisorClass::new(0, 1, vec![1; m]), c2);
    let cls = DivisorClass::new(3, 3 * e + 2, vec![-1; m]);
    let polarization = Polarization::new(&surface, cls).expect("positive polarization");
    WallCase { surface, chern, polarization }
}

/// The example extension `0 -> O(-nF) -> V -> I_Z((n+1)F) -> 0` on `F_e`
/// with `L = C0 + wF`.
pub struct ExampleCase {
    pub surface: SurfaceConfig,
    pub sub: DivisorClass,
    pub quot: DivisorClass,
    pub ell_z: i64,
    pub polarization: Polarization,
}

pub fn example_case(e: i64, n: i64) -> ExampleCase {
    let surface = SurfaceConfig::hirzebruch(e).expect("valid surface");
    let w = 2 * n + 2 * e + 3;
    let polarization =
        Polarization::new(&surface, DivisorClass::new(1, w, vec![])).expect("positive polarization");
    ExampleCase {
        surface,
        sub: DivisorClass::new(0, -n, vec![]),
        quot: DivisorClass::new(0, n + 1, vec![]),
        ell_z: 2 * n,
        polarization,
    }
}
