//! Fixed inputs shared by the benchmarks.

use hfree_core::constructions::build_fdk;
use hfree_core::geometry::{build_plane, dual_family};
use hfree_core::{BVector, DVector, Family, Pattern};

/// Dual of the inversive plane of order `q` with its triple pattern.
pub fn dual_plane_case(q: u32) -> (Family, Pattern) {
    let f = dual_family(&build_plane(q).expect("supported order")).expect("dual is simple");
    let b = BVector::new(vec![(q * q - q - 1) as u64, q as u64, 1]).expect("valid b");
    (f, Pattern::Eip(b))
}

/// `F_m^{(1,1,1)}` with the pattern every triple realizes.
pub fn fdk_case(m: usize) -> (Family, Pattern) {
    let f = build_fdk(m, &DVector::new(vec![1, 1, 1]).expect("valid d")).expect("m >= 3");
    let first: Vec<_> = f.edges()[..3].iter().collect();
    let b = match hfree_core::profile::eip_extract(&first).expect("three edges") {
        hfree_core::EipOutcome::Eip(b) => b,
        hfree_core::EipOutcome::Violation(v) => panic!("construction lost equal intersections: {v:?}"),
    };
    (f, Pattern::Eip(b))
}
