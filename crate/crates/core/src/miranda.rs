//! Triple covers from cubic forms `δ`, the functor `Λ` into covers with
//! invertible `ω`, and the trace-zero data `(δ, ζ, ω)` of the main component.
//!
//! A cubic form is stored by its values `(δ(y³), δ(y²z), δ(yz²), δ(z³)) = (−b, a, c, e)`,
//! matching the trace-zero `β = [[a, c, e], [b, −a, −c]]`.

use thiserror::Error;

use crate::covers::{self, BuildingData, CoverAlgebra, CoverError};
use crate::exactnum::Ring;
use crate::scalg::{AlgebraError, SCAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MirandaError {
    #[error("trace condition violated: {0} is not zero")]
    Trace(&'static str),
    #[error("omega is not invertible")]
    OmegaNotUnit,
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TripleCoverData<R> {
    pub delta: [R; 4],
}

impl<R: Ring> TripleCoverData<R> {
    pub fn new(delta: [R; 4]) -> Self {
        TripleCoverData { delta }
    }

    /// From the entries `a, b, c, e` of a trace-zero `β`.
    pub fn from_abce(a: &R, b: &R, c: &R, e: &R) -> Self {
        TripleCoverData { delta: [b.neg(), a.clone(), c.clone(), e.clone()] }
    }

    /// `(a, b, c, e)`.
    pub fn abce(&self) -> [R; 4] {
        let [d0, d1, d2, d3] = self.delta.clone();
        [d1, d0.neg(), d2, d3]
    }

    pub fn zero(like: &R) -> Self {
        TripleCoverData { delta: std::array::from_fn(|_| like.zero_like()) }
    }

    fn like(&self) -> &R {
        &self.delta[0]
    }
}

/// `β_δ = [[a, c, e], [b, −a, −c]]`.
pub fn beta_from_delta<R: Ring>(d: &TripleCoverData<R>) -> [[R; 3]; 2] {
    let [a, b, c, e] = d.abce();
    [[a.clone(), c.clone(), e], [b, a.neg(), c.neg()]]
}

/// Inverse of [`beta_from_delta`]; requires `a + d = c + f = 0`.
pub fn delta_from_beta<R: Ring>(beta: &[[R; 3]; 2]) -> Result<TripleCoverData<R>, MirandaError> {
    let (a, c, e) = (&beta[0][0], &beta[0][1], &beta[0][2]);
    let (b, d, f) = (&beta[1][0], &beta[1][1], &beta[1][2]);
    if !a.add(d).is_zero() {
        return Err(MirandaError::Trace("a + d"));
    }
    if !c.add(f).is_zero() {
        return Err(MirandaError::Trace("c + f"));
    }
    Ok(TripleCoverData::from_abce(a, b, c, e))
}

/// `(η(y²), η(yz), η(z²)) = (2(a² + bc), ac + be, 2(c² − ae))`.
pub fn eta_delta<R: Ring>(d: &TripleCoverData<R>) -> [R; 3] {
    let [a, b, c, e] = d.abce();
    let two = a.from_i64_like(2);
    [
        two.mul(&a.mul(&a).add(&b.mul(&c))),
        a.mul(&c).add(&b.mul(&e)),
        two.mul(&c.mul(&c).sub(&a.mul(&e))),
    ]
}

/// `2α_δ(y) = η(yz)·y − η(y²)·z`, `2α_δ(z) = η(z²)·y − η(yz)·z`.
pub fn alpha_delta<R: Ring>(d: &TripleCoverData<R>) -> Result<[[R; 2]; 2], MirandaError> {
    let [yy, yz, zz] = eta_delta(d);
    let h = |x: &R| x.div_int(2).map_err(|_| CoverError::Characteristic(x.characteristic()));
    Ok([[h(&yz)?, h(&zz)?], [h(&yy)?.neg(), h(&yz)?.neg()]])
}

/// `m_δ = −det α_δ`.
pub fn m_delta<R: Ring>(d: &TripleCoverData<R>) -> Result<R, MirandaError> {
    let al = alpha_delta(d)?;
    Ok(al[0][0].mul(&al[1][1]).sub(&al[0][1].mul(&al[1][0])).neg())
}

/// `Λ(δ) = (α_δ, β_δ, ω = 1)`.
pub fn lambda_to_cover<R: Ring>(d: &TripleCoverData<R>) -> Result<BuildingData<R>, MirandaError> {
    Ok(BuildingData::new(alpha_delta(d)?, beta_from_delta(d), d.like().one_like()))
}

/// Rescales a cover with invertible `ω` to `ω = 1` (frame change `M = Id`, `λ = ω⁻¹`).
pub fn normalize_omega<R: Ring>(chi: &BuildingData<R>) -> Result<BuildingData<R>, MirandaError> {
    let inv = chi.omega.try_inverse().ok_or(MirandaError::OmegaNotUnit)?;
    let one = chi.omega.one_like();
    let zero = chi.omega.zero_like();
    Ok(covers::frame_action(chi, &[[one.clone(), zero.clone()], [zero, one]], &inv)?)
}

/// Quasi-inverse of `Λ` on covers with invertible `ω`: normalise `ω` and read off `δ`.
pub fn cover_to_triple<R: Ring>(chi: &BuildingData<R>) -> Result<TripleCoverData<R>, MirandaError> {
    let norm = normalize_omega(chi)?;
    delta_from_beta(&norm.beta)
}

pub const TRIPLE_BASIS: [&str; 3] = ["1", "y", "z"];

/// `O ⊕ F` with `uv = η_δ(uv)·1 + β_δ(uv)`.
pub fn triple_cover_algebra<R: Ring>(d: &TripleCoverData<R>) -> Result<SCAlgebra<R>, MirandaError> {
    d.like().div_int(2).map_err(|_| CoverError::Characteristic(d.like().characteristic()))?;
    let eta = eta_delta(d);
    let beta = beta_from_delta(d);
    let like = d.like();
    let zero = like.zero_like();
    let one = like.one_like();
    let mut mult = vec![vec![vec![zero; 3]; 3]; 3];
    for j in 0..3 {
        mult[0][j][j] = one.clone();
        mult[j][0][j] = one.clone();
    }
    for u in 0..2 {
        for v in 0..2 {
            let k = u + v;
            mult[1 + u][1 + v] = vec![eta[k].clone(), beta[0][k].clone(), beta[1][k].clone()];
        }
    }
    Ok(SCAlgebra::new(mult, 0, TRIPLE_BASIS.iter().map(|s| s.to_string()).collect())?)
}

/// `Δ_Φ = η(y²)·η(z²) − η(yz)²`, the Gram determinant of `η_δ`.
pub fn delta_phi<R: Ring>(d: &TripleCoverData<R>) -> R {
    let [yy, yz, zz] = eta_delta(d);
    yy.mul(&zz).sub(&yz.mul(&yz))
}

/// The `σ`-fixed subalgebra of `A_χ` on the basis `(1, y₁ + y₂, z₁ + z₂)`.
pub fn sigma_invariants<R: Ring>(cover: &CoverAlgebra<R>) -> Result<SCAlgebra<R>, MirandaError> {
    let alg = &cover.algebra;
    let mut y = alg.zero_vector();
    y[2] = y[2].one_like();
    y[4] = y[4].one_like();
    let mut z = alg.zero_vector();
    z[3] = z[3].one_like();
    z[5] = z[5].one_like();
    for v in [&y, &z] {
        debug_assert_eq!(&cover.sigma.apply(v), v);
    }
    let basis = vec![alg.basis_vector(0), y, z];
    Ok(alg.subalgebra(&basis, TRIPLE_BASIS.iter().map(|s| s.to_string()).collect())?)
}

/// Whether the `σ`-invariants of `A_χ` equal the triple cover algebra of `δ_β`.
/// Requires a trace-zero `β`.
pub fn compare_sigma_invariants<R: Ring>(chi: &BuildingData<R>) -> Result<bool, MirandaError> {
    let d = delta_from_beta(&chi.beta)?;
    let inv = sigma_invariants(&covers::cover_algebra(chi)?)?;
    Ok(inv == triple_cover_algebra(&d)?)
}

/// `ζ` coefficients `(B, −2A, −C)` on `(y², yz, z²)` of a trace-zero `α = [[A, B], [C, −A]]`.
pub fn zeta_of_alpha<R: Ring>(alpha: &[[R; 2]; 2]) -> Result<[R; 3], MirandaError> {
    let (aa, bb, cc, dd) = (&alpha[0][0], &alpha[0][1], &alpha[1][0], &alpha[1][1]);
    if !aa.add(dd).is_zero() {
        return Err(MirandaError::Trace("A + D"));
    }
    Ok([bb.clone(), aa.from_i64_like(-2).mul(aa), cc.neg()])
}

/// Inverse of [`zeta_of_alpha`]: `(u, v, w) ↦ [[−v/2, u], [−w, v/2]]`.
pub fn alpha_of_zeta<R: Ring>(zeta: &[R; 3]) -> Result<[[R; 2]; 2], MirandaError> {
    let [u, v, w] = zeta.clone();
    let half = v.div_int(2).map_err(|_| CoverError::Characteristic(v.characteristic()))?;
    Ok([[half.neg(), u], [w.neg(), half]])
}

/// `ζ̌` from `ζ = (u, v, w)`: `(2w, −v, 2u)`, i.e. `(−2C, 2A, 2B)`.
pub fn zeta_check<R: Ring>(zeta: &[R; 3]) -> [R; 3] {
    let [u, v, w] = zeta.clone();
    let two = u.from_i64_like(2);
    [two.mul(&w), v.neg(), two.mul(&u)]
}

/// `ζ̌(ζ) = Σ ζ̌ᵢ ζᵢ`.
pub fn pairing<R: Ring>(check: &[R; 3], zeta: &[R; 3]) -> R {
    check.iter().zip(zeta).fold(zeta[0].zero_like(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// Trace-zero data `(δ, ζ, ω)`, with `ζ` stored through `(A, B, C)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZData<R> {
    pub delta: TripleCoverData<R>,
    /// `(A, B, C)` with `ζ = B·y² − 2A·yz − C·z²`.
    pub zeta: [R; 3],
    pub omega: R,
}

impl<R: Ring> ZData<R> {
    /// Requires `tr α = tr β = 0`.
    pub fn from_cover(chi: &BuildingData<R>) -> Result<Self, MirandaError> {
        let delta = delta_from_beta(&chi.beta)?;
        if !chi.trace_alpha().is_zero() {
            return Err(MirandaError::Trace("A + D"));
        }
        Ok(ZData {
            delta,
            zeta: [chi.big_a().clone(), chi.big_b().clone(), chi.big_c().clone()],
            omega: chi.omega.clone(),
        })
    }

    /// The cover with `d = −a`, `f = −c`, `D = −A`.
    pub fn to_cover(&self) -> BuildingData<R> {
        let [aa, bb, cc] = self.zeta.clone();
        let dd = aa.neg();
        BuildingData::new([[aa, bb], [cc, dd]], beta_from_delta(&self.delta), self.omega.clone())
    }

    /// `ζ` coefficients `(B, −2A, −C)`.
    pub fn zeta_coefficients(&self) -> [R; 3] {
        let [aa, bb, cc] = self.zeta.clone();
        [bb, aa.from_i64_like(-2).mul(&aa), cc.neg()]
    }
}

/// Residuals of the two defining conditions: `β∘ζ = 0` as
/// `(2aA + bB + cC, 2cA + eC − aB)` and `ω·ζ̌ − η_δ` componentwise.
pub fn z_conditions<R: Ring>(zd: &ZData<R>) -> ([R; 2], [R; 3]) {
    let [a, b, c, e] = zd.delta.abce();
    let [aa, bb, cc] = zd.zeta.clone();
    let two = a.from_i64_like(2);
    let cond1 = [
        two.mul(&a).mul(&aa).add(&b.mul(&bb)).add(&c.mul(&cc)),
        two.mul(&c).mul(&aa).add(&e.mul(&cc)).sub(&a.mul(&bb)),
    ];
    let check = zeta_check(&zd.zeta_coefficients());
    let eta = eta_delta(&zd.delta);
    let cond2 = std::array::from_fn(|i| zd.omega.mul(&check[i]).sub(&eta[i]));
    (cond1, cond2)
}
