mod common;

use proptest::prelude::*;
use s3cover::covers::{self, families, BuildingData};
use s3cover::miranda::{self, TripleCoverData};
use s3cover::s3x;
use s3cover::{linalg, Fp, Ring};

use common::f7;

fn elem() -> impl Strategy<Value = Fp> {
    (0i64..7).prop_map(f7)
}

fn nonzero() -> impl Strategy<Value = Fp> {
    (1i64..7).prop_map(f7)
}

fn invertible_matrix() -> impl Strategy<Value = [[Fp; 2]; 2]> {
    prop::array::uniform4(0i64..7)
        .prop_filter("invertible", |[p, q, r, s]| (p * s - q * r).rem_euclid(7) != 0)
        .prop_map(|[p, q, r, s]| [[f7(p), f7(q)], [f7(r), f7(s)]])
}

fn family_point() -> impl Strategy<Value = BuildingData<Fp>> {
    prop_oneof![
        (elem(), elem(), elem()).prop_map(|(m, a, b)| families::u_alpha(&m, &a, &b)),
        (elem(), elem(), elem()).prop_map(|(w, a, c)| families::u_beta(&w, &a, &c)),
        prop::array::uniform4(elem()).prop_map(|[a, b, c, e]| {
            miranda::lambda_to_cover(&TripleCoverData::from_abce(&a, &b, &c, &e)).unwrap()
        }),
        elem().prop_map(|l| families::z2(&l)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn families_satisfy_relations(chi in family_point()) {
        prop_assert!(covers::satisfies_relations(&chi).unwrap());
        let alg = covers::cover_algebra(&chi).unwrap().algebra;
        prop_assert!(alg.check_commutative() && alg.check_associative());
    }

    #[test]
    fn frame_action_transports_covers(chi in family_point(), m in invertible_matrix(), lambda in nonzero()) {
        let moved = covers::frame_action(&chi, &m, &lambda).unwrap();
        prop_assert!(covers::satisfies_relations(&moved).unwrap());
        let src = covers::cover_algebra(&chi).unwrap();
        let dst = covers::cover_algebra(&moved).unwrap();
        let iso = covers::frame_isomorphism(&m, &lambda);
        prop_assert!(iso.check_isomorphism(&src.algebra, &dst.algebra).is_ok());
        prop_assert_eq!(iso.compose(&src.sigma), dst.sigma.compose(&iso));
        let (a, b) = (covers::classify(&chi).unwrap(), covers::classify(&moved).unwrap());
        prop_assert_eq!(a.loci(), b.loci());
        prop_assert_eq!(a.is_torsor, b.is_torsor);
    }

    #[test]
    fn torsor_iff_discriminant_unit(chi in family_point()) {
        let torsor = covers::is_torsor(&chi).unwrap();
        let disc = covers::cover_algebra(&chi).unwrap().algebra.discriminant();
        prop_assert_eq!(torsor, disc.is_unit());
        let c = s3x::s3_transform(&chi).unwrap();
        prop_assert_eq!(torsor, c.algebra.discriminant().is_unit());
        if torsor {
            let det = linalg::determinant(&covers::torsor_matrix(&chi).unwrap());
            prop_assert!(det.is_unit());
            let [tb0, tb1] = chi.trace_beta();
            prop_assert!(chi.trace_alpha().is_zero() && tb0.is_zero() && tb1.is_zero());
        }
    }

    #[test]
    fn discriminant_chi_is_minus_omega_squared_m(chi in family_point()) {
        let dm = covers::derive(&chi).unwrap();
        let expected = chi.omega.mul(&chi.omega).mul(&dm.m).neg();
        prop_assert_eq!(covers::discriminant_chi(&chi).unwrap(), expected);
    }

    #[test]
    fn sigma_invariants_match_triple_cover(chi in family_point()) {
        let [tb0, tb1] = chi.trace_beta();
        prop_assume!(tb0.is_zero() && tb1.is_zero());
        prop_assert!(miranda::compare_sigma_invariants(&chi).unwrap());
    }

    #[test]
    fn lambda_round_trip(d in prop::array::uniform4(elem()), w in nonzero(), m in invertible_matrix()) {
        let d = TripleCoverData::new(d);
        let chi = miranda::lambda_to_cover(&d).unwrap();
        prop_assert_eq!(miranda::cover_to_triple(&chi).unwrap(), d.clone());
        // rescaling ω by a frame change is undone by normalisation
        let one = f7(1);
        let zero = f7(0);
        let scaled = covers::frame_action(&chi, &[[one.clone(), zero.clone()], [zero, one]], &w).unwrap();
        prop_assert_eq!(miranda::normalize_omega(&scaled).unwrap(), chi.clone());
        let moved = covers::frame_action(&chi, &m, &f7(1)).unwrap();
        prop_assert!(miranda::cover_to_triple(&moved).is_ok());
    }

    #[test]
    fn zdata_round_trip(chi in family_point()) {
        let [tb0, tb1] = chi.trace_beta();
        prop_assume!(tb0.is_zero() && tb1.is_zero() && chi.trace_alpha().is_zero());
        let zd = miranda::ZData::from_cover(&chi).unwrap();
        prop_assert_eq!(zd.to_cover(), chi);
        let (c1, c2) = miranda::z_conditions(&zd);
        prop_assert!(c1.iter().chain(c2.iter()).all(|x| x.is_zero()));
    }

    #[test]
    fn s3_trivialization_over_f7(chi in family_point()) {
        let t = s3x::equivariant_trivialization(&chi, &f7(2)).unwrap();
        prop_assert!(t.map.is_invertible());
    }
}

#[test]
fn s3_refuses_characteristic_three() {
    let chi = BuildingData::zero(&Fp::new(0, 3).unwrap());
    assert!(matches!(s3x::s3_transform(&chi), Err(s3x::S3Error::Characteristic(3))));
}
