mod common;

use s3cover::covers::{families, BuildingData};
use s3cover::miranda;
use s3cover::s3x;
use s3cover::Rational;

use common::{qring, Action, Expansion};

#[test]
fn u_beta_transform_is_symbolically_valid() {
    let (_, v) = qring(&["omega", "A", "C"]);
    let chi = families::u_beta(&v[0], &v[1], &v[2]);
    let c = s3x::s3_transform(&chi).unwrap();
    c.verify().unwrap();
    let ex = Expansion::new(&chi);
    assert_eq!(c.algebra.mult(), &ex.c_mult());
    assert_eq!(c.r.matrix, ex.action_matrix(Action::R));
    assert_eq!(c.s.matrix, ex.action_matrix(Action::S));
    let inv = s3x::s3_invariants_under_transposition(&c).unwrap();
    let d = miranda::delta_from_beta(&chi.beta).unwrap();
    assert_eq!(inv, miranda::triple_cover_algebra(&d).unwrap());
}

#[test]
fn u_alpha_transform_matches_oracle() {
    let (_, v) = qring(&["m", "a", "b"]);
    let chi = families::u_alpha(&v[0], &v[1], &v[2]);
    let c = s3x::s3_transform(&chi).unwrap();
    c.verify().unwrap();
    let ex = Expansion::new(&chi);
    assert_eq!(c.algebra.mult(), &ex.c_mult());
}

#[test]
fn zero_cover_is_square_zero() {
    let chi = BuildingData::zero(&Rational::zero());
    let c = s3x::s3_transform(&chi).unwrap();
    c.verify().unwrap();
    for i in 1..6 {
        for j in 1..6 {
            assert!(c.algebra.product_of_basis(i, j).iter().all(|x| x == &Rational::zero()));
        }
    }
    let inv = s3x::s3_invariants_under_transposition(&c).unwrap();
    assert_eq!(inv.rank(), 3);
    assert_eq!(inv.discriminant(), Rational::zero());
}

#[test]
fn trivial_torsor_invariants_are_cyclic_cubic() {
    let chi = families::trivial_torsor(&Rational::zero());
    let inv = s3x::s3_invariants_under_transposition(&s3x::s3_transform(&chi).unwrap()).unwrap();
    assert_eq!(inv.discriminant(), Rational::integer(-27));
}
