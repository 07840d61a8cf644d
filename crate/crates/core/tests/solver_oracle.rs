//! Solver values on orbits without a closed form, checked through the
//! exponent polynomial they produce and through inversion symmetry.

use cherednik_core::exponents;
use cherednik_core::oracle;
use cherednik_core::weyl;
use cherednik_core::{Family, Kernel, LatticeVector, RootSystem, Strategy};

fn check(f: Family, n: usize, coords: &[i32], expected: &str) {
    let rs = RootSystem::new(f, n).unwrap();
    let lam = LatticeVector::from_coords(coords);
    let mut k = Kernel::new(&rs);
    let sp = exponents::exponents_scalar_product(&mut k, &lam).unwrap();
    let lus = oracle::lusztig_e(&rs, &lam, oracle::DEFAULT_WEYL_LIMIT).unwrap();
    assert_eq!(sp, lus, "{f:?}{n} {lam}");
    assert_eq!(sp.to_string(), expected, "{f:?}{n} {lam}");

    for v in weyl::orbit_vectors(&rs, &lam) {
        let c = k.coeff(&v, Strategy::Solver).unwrap();
        let minus = k.coeff(&-v, Strategy::Solver).unwrap();
        assert_eq!(c.subst_inverse(), minus, "{f:?}{n} at {v}");
    }
}

#[test]
fn a2_multiples_of_theta() {
    check(Family::A, 2, &[2, 2], "t^2 + t^3 + t^4");
    check(Family::A, 2, &[3, 3], "t^3 + t^4 + t^5 + t^6");
}

#[test]
fn a3_multiples_of_theta() {
    let rs = RootSystem::new(Family::A, 3).unwrap();
    for coords in [[2, 2, 2], [1, 2, 1]] {
        let lam = LatticeVector::from_coords(&coords);
        let mut k = Kernel::new(&rs);
        let sp = exponents::exponents_scalar_product(&mut k, &lam).unwrap();
        let lus = oracle::lusztig_e(&rs, &lam, oracle::DEFAULT_WEYL_LIMIT).unwrap();
        assert_eq!(sp, lus, "{lam}");
    }
}

#[test]
fn b2_and_g2_orbits() {
    let b2 = RootSystem::new(Family::B, 2).unwrap();
    let g2 = RootSystem::new(Family::G, 2).unwrap();
    for (rs, coords) in [
        (&b2, [2, 4]),
        (&b2, [3, 3]),
        (&b2, [2, 3]),
        (&g2, [6, 4]),
        (&g2, [6, 3]),
        (&g2, [5, 3]),
    ] {
        let lam = LatticeVector::from_coords(&coords);
        let mut k = Kernel::new(rs);
        let sp = exponents::exponents_scalar_product(&mut k, &lam).unwrap();
        let lus = oracle::lusztig_e(rs, &lam, oracle::DEFAULT_WEYL_LIMIT).unwrap();
        assert_eq!(sp, lus, "{}: {lam}", rs.spec());
    }
}

#[test]
fn c3_orbits() {
    let rs = RootSystem::new(Family::C, 3).unwrap();
    for coords in [[4, 4, 2], [3, 4, 2]] {
        let lam = LatticeVector::from_coords(&coords);
        let mut k = Kernel::new(&rs);
        let sp = exponents::exponents_scalar_product(&mut k, &lam).unwrap();
        let lus = oracle::lusztig_e(&rs, &lam, oracle::DEFAULT_WEYL_LIMIT).unwrap();
        assert_eq!(sp, lus, "{lam}");
    }
}

#[test]
fn zero_weight_is_one() {
    let rs = RootSystem::new(Family::B, 3).unwrap();
    let mut k = Kernel::new(&rs);
    assert_eq!(
        k.coeff(&rs.zero(), Strategy::Solver).unwrap(),
        cherednik_core::RatQT::one()
    );
}
