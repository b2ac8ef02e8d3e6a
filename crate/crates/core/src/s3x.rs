//! The rank-6 `S₃`-algebra `C ⊆ A_χ[x, z]/(x³ − 1, z² + 3)` built from a cover.
//!
//! Basis `(1, ℓz, p(y), p(z), q(y), q(z))` with `p(u) = u₁x + u₂x²` and
//! `q(u) = u₁zx − u₂zx²`. The generators act by `r = (123): x ↦ x(z − 1)/2, z ↦ z`
//! and `s = (12): x ↦ x, z ↦ −z`.

use std::sync::Arc;

use thiserror::Error;

use crate::covers::{self, BuildingData, CoverError};
use crate::exactnum::{Field, Ring};
use crate::linalg;
use crate::poly::PolyError;
use crate::qring::{CoeffRing, RingElem};
use crate::scalg::{self, ActionError, AlgebraError, AlgebraMap, SCAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum S3Error {
    #[error("characteristic {0} is not allowed (needs 2 and 3 invertible)")]
    Characteristic(u64),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("w does not satisfy w² = −3")]
    NotSqrtMinus3,
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub const S3_BASIS: [&str; 6] = ["1", "lz", "p(y)", "p(z)", "q(y)", "q(z)"];

/// Relation words for `S₃ = ⟨r, s⟩` with `r = 0`, `s = 1`: `r³`, `s²`, `(sr)²`.
pub fn s3_relations() -> Vec<Vec<usize>> {
    vec![vec![0, 0, 0], vec![1, 1], vec![1, 0, 1, 0]]
}

#[derive(Clone, Debug)]
pub struct S3Algebra<R> {
    pub algebra: SCAlgebra<R>,
    pub r: AlgebraMap<R>,
    pub s: AlgebraMap<R>,
}

impl<R: Ring> S3Algebra<R> {
    pub fn generators(&self) -> Vec<AlgebraMap<R>> {
        vec![self.r.clone(), self.s.clone()]
    }

    /// Commutative, associative, and `r, s` generate an `S₃`-action.
    pub fn verify(&self) -> Result<(), S3Error> {
        if let Some((i, j)) = self.algebra.commutativity_witness() {
            return Err(S3Error::Verification(format!("not commutative at ({i}, {j})")));
        }
        if let Some((i, j, k)) = self.algebra.associativity_witness() {
            return Err(S3Error::Verification(format!("not associative at ({i}, {j}, {k})")));
        }
        scalg::check_action(&self.algebra, &self.generators(), &s3_relations())?;
        Ok(())
    }
}

fn require_six<R: Ring>(like: &R) -> Result<(), S3Error> {
    if like.from_i64_like(6).is_unit() {
        Ok(())
    } else {
        Err(S3Error::Characteristic(like.characteristic()))
    }
}

const LZ: usize = 1;

fn p_idx(u: usize) -> usize {
    2 + u
}

fn q_idx(u: usize) -> usize {
    4 + u
}

/// Builds `C` from the closed-form products. Requires the relations and `6` invertible.
pub fn s3_transform<R: Ring>(chi: &BuildingData<R>) -> Result<S3Algebra<R>, S3Error> {
    require_six(chi.like())?;
    let res = covers::relation_residuals(chi)?;
    let bad: Vec<usize> = (0..25).filter(|&i| !res[i].is_zero()).collect();
    if !bad.is_empty() {
        return Err(CoverError::RelationsViolated(bad).into());
    }
    let dm = covers::derive(chi)?;
    let like = chi.like();
    let zero = like.zero_like();
    let one = like.one_like();
    let n = |k: i64| like.from_i64_like(k);
    let mut mult = vec![vec![vec![zero.clone(); 6]; 6]; 6];
    let mut set = |i: usize, j: usize, v: Vec<R>| {
        mult[j][i] = v.clone();
        mult[i][j] = v;
    };
    let unit = |k: usize| {
        let mut v = vec![zero.clone(); 6];
        v[k] = one.clone();
        v
    };
    for j in 0..6 {
        set(0, j, unit(j));
    }
    let mut v = vec![zero.clone(); 6];
    v[0] = n(-3).mul(&dm.m);
    set(LZ, LZ, v);
    for u in 0..2 {
        let au = chi.alpha_of(u);
        // ℓz·p(u) = q(α(u)), ℓz·q(u) = −3·p(α(u))
        let mut v = vec![zero.clone(); 6];
        let mut w = vec![zero.clone(); 6];
        for k in 0..2 {
            v[q_idx(k)] = au[k].clone();
            w[p_idx(k)] = n(-3).mul(&au[k]);
        }
        set(LZ, p_idx(u), v);
        set(LZ, q_idx(u), w);
        for t in 0..2 {
            let b = chi.beta_of(u, t);
            let sym = &dm.sym[u][t];
            // p(u)p(t) = 2(u,t) + p(β(ut))
            let mut pp = vec![zero.clone(); 6];
            pp[0] = n(2).mul(sym);
            // q(u)q(t) = 6(u,t) − 3·p(β(ut))
            let mut qq = vec![zero.clone(); 6];
            qq[0] = n(6).mul(sym);
            // p(u)q(t) = −2⟨u,t⟩·ℓz − q(β(ut))
            let mut pq = vec![zero.clone(); 6];
            pq[LZ] = n(-2).mul(&chi.bracket(u, t));
            for k in 0..2 {
                pp[p_idx(k)] = b[k].clone();
                qq[p_idx(k)] = n(-3).mul(&b[k]);
                pq[q_idx(k)] = b[k].neg();
            }
            if u <= t {
                set(p_idx(u), p_idx(t), pp);
                set(q_idx(u), q_idx(t), qq);
            }
            set(p_idx(u), q_idx(t), pq);
        }
    }
    let algebra = SCAlgebra::new(mult, 0, S3_BASIS.iter().map(|s| s.to_string()).collect())?;
    let (r, s) = s3_generators(like)?;
    Ok(S3Algebra { algebra, r, s })
}

/// Matrices of `r = (123)` and `s = (12)` on the basis of `C`.
///
/// `r(p(u)) = −½·p(u) + ½·q(u)`, `r(q(u)) = −³⁄₂·p(u) − ½·q(u)`, and `r`
/// fixes `1` and `ℓz`; `s = diag(1, −1, 1, 1, −1, −1)`.
pub fn s3_generators<R: Ring>(like: &R) -> Result<(AlgebraMap<R>, AlgebraMap<R>), S3Error> {
    require_six(like)?;
    let half = like.one_like().div_int(2).map_err(|_| S3Error::Characteristic(like.characteristic()))?;
    let mut r = linalg::zeros(like, 6, 6);
    r[0][0] = like.one_like();
    r[LZ][LZ] = like.one_like();
    for u in 0..2 {
        r[p_idx(u)][p_idx(u)] = half.neg();
        r[q_idx(u)][p_idx(u)] = half.clone();
        r[p_idx(u)][q_idx(u)] = like.from_i64_like(-3).mul(&half);
        r[q_idx(u)][q_idx(u)] = half.neg();
    }
    let mut s = linalg::identity(like, 6);
    for k in [LZ, q_idx(0), q_idx(1)] {
        s[k][k] = like.one_like().neg();
    }
    Ok((AlgebraMap::new(r), AlgebraMap::new(s)))
}

/// The fixed subalgebra of `s`, on the basis `(1, p(y), p(z))`.
pub fn s3_invariants_under_transposition<R: Ring>(c: &S3Algebra<R>) -> Result<SCAlgebra<R>, S3Error> {
    let alg = &c.algebra;
    let basis = vec![alg.basis_vector(0), alg.basis_vector(p_idx(0)), alg.basis_vector(p_idx(1))];
    for v in &basis {
        if &c.s.apply(v) != v {
            return Err(S3Error::Verification("p(u) is not fixed by s".into()));
        }
    }
    Ok(alg.subalgebra(&basis, ["1", "y", "z"].iter().map(|s| s.to_string()).collect())?)
}

/// The equivariant isomorphism `C → A_χ` given by `x ↦ 1`, `z ↦ w`:
/// `1 ↦ 1`, `ℓz ↦ w·ℓ`, `p(u) ↦ u₁ + u₂`, `q(u) ↦ w·(u₁ − u₂)`.
#[derive(Clone, Debug)]
pub struct Trivialization<R> {
    pub map: AlgebraMap<R>,
    /// Action of `ζ = (w − 1)/2` on `A_χ`: multiplication by `ζ^deg`.
    pub rho: AlgebraMap<R>,
    pub sigma: AlgebraMap<R>,
}

/// Builds and verifies the trivialization; `w` must satisfy `w² = −3`.
pub fn equivariant_trivialization<R: Ring>(chi: &BuildingData<R>, w: &R) -> Result<Trivialization<R>, S3Error> {
    if !w.mul(w).add(&w.from_i64_like(3)).is_zero() {
        return Err(S3Error::NotSqrtMinus3);
    }
    let c = s3_transform(chi)?;
    let cover = covers::cover_algebra(chi)?;
    let like = chi.like();
    let mut m = linalg::zeros(like, 6, 6);
    m[0][0] = like.one_like();
    m[1][LZ] = w.clone();
    for u in 0..2 {
        m[covers::f_index(u, 1)][p_idx(u)] = like.one_like();
        m[covers::f_index(u, 2)][p_idx(u)] = like.one_like();
        m[covers::f_index(u, 1)][q_idx(u)] = w.clone();
        m[covers::f_index(u, 2)][q_idx(u)] = w.neg();
    }
    let map = AlgebraMap::new(m);
    map.check_isomorphism(&c.algebra, &cover.algebra)?;

    let zeta = w.sub(&w.one_like()).div_int(2).map_err(|_| S3Error::Characteristic(w.characteristic()))?;
    let mut rho = linalg::identity(like, 6);
    for (k, deg) in cover.grading.0.iter().enumerate() {
        rho[k][k] = zeta.pow(*deg as u32);
    }
    let rho = AlgebraMap::new(rho);
    if map.compose(&c.r) != rho.compose(&map) {
        return Err(S3Error::Verification("r does not intertwine with zeta".into()));
    }
    if map.compose(&c.s) != cover.sigma.compose(&map) {
        return Err(S3Error::Verification("s does not intertwine with sigma".into()));
    }
    Ok(Trivialization { map, rho, sigma: cover.sigma })
}

/// Base change of `χ` to `R[w]/(w² + 3)`, returning the lifted data and `w`.
pub fn adjoin_sqrt_minus3<K: Field>(
    chi: &BuildingData<RingElem<K>>,
) -> Result<(BuildingData<RingElem<K>>, RingElem<K>), S3Error> {
    let ring: &Arc<CoeffRing<K>> = chi.omega.ring();
    let mut name = String::from("w");
    while ring.ambient().var_index(&name).is_some() {
        name.push('_');
    }
    let relation = format!("{name}^2 + 3");
    let big = ring.adjoin(&[name.as_str()], &[relation.as_str()])?;
    let lifted = chi.map(|x| x.lift_to(&big))?;
    let w = RingElem::gen(&big, &name)?;
    Ok((lifted, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::families;
    use crate::exactnum::{Fp, Rational};

    #[test]
    fn trivial_torsor_transform() {
        let chi = families::trivial_torsor(&Rational::zero());
        let c = s3_transform(&chi).unwrap();
        c.verify().unwrap();
        assert!(c.algebra.discriminant().is_unit());
        let inv = s3_invariants_under_transposition(&c).unwrap();
        let d = crate::miranda::TripleCoverData::new([
            Rational::integer(-1),
            Rational::zero(),
            Rational::zero(),
            Rational::integer(1),
        ]);
        assert_eq!(inv, crate::miranda::triple_cover_algebra(&d).unwrap());
    }

    #[test]
    fn zero_cover_transform() {
        let chi = BuildingData::zero(&Rational::zero());
        let c = s3_transform(&chi).unwrap();
        c.verify().unwrap();
        assert!(c.algebra.discriminant().is_zero());
    }

    #[test]
    fn trivialization_over_f7_and_extension() {
        let p = |v| Fp::new(v, 7).unwrap();
        let chi = families::u_alpha(&p(2), &p(3), &p(1));
        equivariant_trivialization(&chi, &p(2)).unwrap();
        assert_eq!(equivariant_trivialization(&chi, &p(3)).unwrap_err(), S3Error::NotSqrtMinus3);

        let qq = CoeffRing::field(&Rational::zero());
        let chi = families::trivial_torsor(&RingElem::from_i64(&qq, 0));
        let (lifted, w) = adjoin_sqrt_minus3(&chi).unwrap();
        equivariant_trivialization(&lifted, &w).unwrap();
    }

    #[test]
    fn refuses_characteristic_three() {
        let chi = BuildingData::zero(&Fp::new(0, 3).unwrap());
        assert_eq!(s3_transform(&chi).unwrap_err(), S3Error::Characteristic(3));
    }
}
