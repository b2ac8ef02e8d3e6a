//! Finite free algebras given by structure constants.
//!
//! `mult[i][j]` is the coordinate vector of `bᵢ·bⱼ`. Maps between algebras
//! are matrices whose columns are the images of the source basis.

use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::exactnum::Ring;
use crate::linalg::{self, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("structure constants have the wrong shape")]
    Shape,
    #[error("basis element {0} is not a two-sided unit")]
    NotUnit(usize),
    #[error("subalgebra basis has no pivot coordinates")]
    NoPivots,
    #[error("product of subalgebra elements {0} and {1} leaves the span")]
    NotClosed(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("generator {0} does not fix the unit")]
    NotUnital(usize),
    #[error("generator {gen} is not multiplicative on (b{i}, b{j})")]
    NotMultiplicative { gen: usize, i: usize, j: usize },
    #[error("relation {0} does not evaluate to the identity")]
    Relation(usize),
    #[error("generator {0} has the wrong size")]
    Shape(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SCAlgebra<R> {
    rank: usize,
    unit: usize,
    mult: Vec<Vec<Vec<R>>>,
    names: Vec<String>,
}

impl<R: Ring> SCAlgebra<R> {
    /// Checks the shape and the unit law.
    pub fn new(mult: Vec<Vec<Vec<R>>>, unit: usize, names: Vec<String>) -> Result<Self, AlgebraError> {
        let rank = mult.len();
        if rank == 0
            || unit >= rank
            || names.len() != rank
            || mult.iter().any(|row| row.len() != rank || row.iter().any(|v| v.len() != rank))
        {
            return Err(AlgebraError::Shape);
        }
        let alg = SCAlgebra { rank, unit, mult, names };
        for j in 0..rank {
            let e = alg.basis_vector(j);
            if alg.mult[unit][j] != e || alg.mult[j][unit] != e {
                return Err(AlgebraError::NotUnit(unit));
            }
        }
        Ok(alg)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mult(&self) -> &Vec<Vec<Vec<R>>> {
        &self.mult
    }

    /// Coordinates of `bᵢ·bⱼ`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[R] {
        &self.mult[i][j]
    }

    fn like(&self) -> &R {
        &self.mult[0][0][0]
    }

    pub fn zero_vector(&self) -> Vec<R> {
        vec![self.like().zero_like(); self.rank]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<R> {
        let mut v = self.zero_vector();
        v[i] = self.like().one_like();
        v
    }

    pub fn product(&self, u: &[R], v: &[R]) -> Vec<R> {
        let mut out = self.zero_vector();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui.mul(vj);
                for (k, x) in self.mult[i][j].iter().enumerate() {
                    if !x.is_zero() {
                        out[k] = out[k].add(&c.mul(x));
                    }
                }
            }
        }
        out
    }

    /// First pair `(i, j)` (lexicographically) with `bᵢbⱼ ≠ bⱼbᵢ`.
    pub fn commutativity_witness(&self) -> Option<(usize, usize)> {
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                if self.mult[i][j] != self.mult[j][i] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn check_commutative(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    fn assoc_fails(&self, i: usize, j: usize, k: usize) -> bool {
        let left = self.product(&self.mult[i][j], &self.basis_vector(k));
        let right = self.product(&self.basis_vector(i), &self.mult[j][k]);
        left != right
    }

    fn first_in_slice(&self, i: usize) -> Option<(usize, usize, usize)> {
        for j in 0..self.rank {
            for k in 0..self.rank {
                if self.assoc_fails(i, j, k) {
                    return Some((i, j, k));
                }
            }
        }
        None
    }

    /// Lexicographically first triple with `(bᵢbⱼ)bₖ ≠ bᵢ(bⱼbₖ)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        (0..self.rank).find_map(|i| self.first_in_slice(i))
    }

    /// Same answer as [`SCAlgebra::associativity_witness`], scanning the slices in parallel.
    pub fn associativity_witness_par(&self) -> Option<(usize, usize, usize)> {
        let found: Vec<Option<(usize, usize, usize)>> =
            (0..self.rank).into_par_iter().map(|i| self.first_in_slice(i)).collect();
        found.into_iter().flatten().next()
    }

    pub fn check_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// Matrix of multiplication by `x` (columns are `x·bₖ`).
    pub fn left_mult_matrix(&self, x: &[R]) -> Matrix<R> {
        let cols: Vec<Vec<R>> = (0..self.rank).map(|k| self.product(x, &self.basis_vector(k))).collect();
        linalg::transpose(&cols)
    }

    pub fn trace(&self, x: &[R]) -> R {
        let m = self.left_mult_matrix(x);
        (0..self.rank).fold(self.like().zero_like(), |acc, i| acc.add(&m[i][i]))
    }

    /// Gram matrix of `(u, v) ↦ tr(uv)` on the basis.
    pub fn trace_form(&self) -> Matrix<R> {
        let traces: Vec<R> = (0..self.rank)
            .map(|l| (0..self.rank).fold(self.like().zero_like(), |acc, k| acc.add(&self.mult[l][k][k])))
            .collect();
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| {
                        self.mult[i][j]
                            .iter()
                            .zip(&traces)
                            .fold(self.like().zero_like(), |acc, (c, t)| acc.add(&c.mul(t)))
                    })
                    .collect()
            })
            .collect()
    }

    /// Determinant of the trace form in the given basis.
    pub fn discriminant(&self) -> R {
        linalg::determinant(&self.trace_form())
    }

    /// Direct product `self × other`. The basis is `(1,1)`, the non-unit basis of
    /// `self` in the first factor, `(0,1)`, then the non-unit basis of `other`.
    pub fn direct_product(&self, other: &SCAlgebra<R>) -> SCAlgebra<R> {
        let n = self.rank + other.rank;
        let s = self.rank;
        let zero = self.like().zero_like();
        let mut naive = vec![vec![vec![zero.clone(); n]; n]; n];
        for i in 0..s {
            for j in 0..s {
                for k in 0..s {
                    naive[i][j][k] = self.mult[i][j][k].clone();
                }
            }
        }
        for i in 0..other.rank {
            for j in 0..other.rank {
                for k in 0..other.rank {
                    naive[s + i][s + j][s + k] = other.mult[i][j][k].clone();
                }
            }
        }
        let naive_alg = SCAlgebra { rank: n, unit: 0, mult: naive, names: Vec::new() };
        let e = |i: usize| naive_alg.basis_vector(i);
        let mut new_basis = Vec::with_capacity(n);
        let mut names = Vec::with_capacity(n);
        new_basis.push(e(self.unit).into_iter().zip(e(s + other.unit)).map(|(a, b)| a.add(&b)).collect());
        names.push("(1,1)".to_string());
        for i in (0..s).filter(|&i| i != self.unit) {
            new_basis.push(e(i));
            names.push(format!("({},0)", self.names[i]));
        }
        new_basis.push(e(s + other.unit));
        names.push("(0,1)".to_string());
        for i in (0..other.rank).filter(|&i| i != other.unit) {
            new_basis.push(e(s + i));
            names.push(format!("(0,{})", other.names[i]));
        }
        let p = linalg::transpose(&new_basis);
        let p_inv = linalg::inverse(&p).expect("unitriangular change of basis");
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| linalg::mat_vec(&p_inv, &naive_alg.product(&new_basis[i], &new_basis[j])))
                    .collect()
            })
            .collect();
        SCAlgebra::new(mult, 0, names).expect("product of unital algebras is unital")
    }

    /// The subalgebra spanned by `basis` (coordinate vectors). Each vector needs a
    /// pivot coordinate where it is 1 and all the others are 0.
    pub fn subalgebra(&self, basis: &[Vec<R>], names: Vec<String>) -> Result<SCAlgebra<R>, AlgebraError> {
        let pivots: Vec<usize> = basis
            .iter()
            .enumerate()
            .map(|(s, v)| {
                (0..self.rank)
                    .find(|&c| v[c].is_one() && basis.iter().enumerate().all(|(t, w)| t == s || w[c].is_zero()))
                    .ok_or(AlgebraError::NoPivots)
            })
            .collect::<Result<_, _>>()?;
        let n = basis.len();
        let mut mult = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let p = self.product(&basis[i], &basis[j]);
                let coords: Vec<R> = pivots.iter().map(|&c| p[c].clone()).collect();
                let mut back = self.zero_vector();
                for (s, c) in coords.iter().enumerate() {
                    for (k, x) in basis[s].iter().enumerate() {
                        back[k] = back[k].add(&c.mul(x));
                    }
                }
                if back != p {
                    return Err(AlgebraError::NotClosed(i, j));
                }
                row.push(coords);
            }
            mult.push(row);
        }
        let unit_vec = self.basis_vector(self.unit);
        let unit = basis.iter().position(|v| *v == unit_vec).ok_or(AlgebraError::NotUnit(0))?;
        SCAlgebra::new(mult, unit, names)
    }

    /// Applies `f` to every structure constant (base change).
    pub fn map<S: Ring, E>(&self, f: impl Fn(&R) -> Result<S, E>) -> Result<SCAlgebra<S>, E> {
        let mult = self
            .mult
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(&f).collect::<Result<Vec<_>, E>>()).collect())
            .collect::<Result<_, E>>()?;
        Ok(SCAlgebra { rank: self.rank, unit: self.unit, mult, names: self.names.clone() })
    }

    /// `{"rank":n,"unit":u,"basis":[...],"mult":[[[...]]]}` with entries as strings.
    pub fn to_json(&self) -> serde_json::Value {
        let mult: Vec<Vec<Vec<String>>> = self
            .mult
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect())
            .collect();
        json!({ "rank": self.rank, "unit": self.unit, "basis": self.names, "mult": mult })
    }
}

/// A linear map given by the images of the source basis (columns).
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMap<R> {
    pub matrix: Matrix<R>,
}

impl<R: Ring> AlgebraMap<R> {
    pub fn new(matrix: Matrix<R>) -> Self {
        AlgebraMap { matrix }
    }

    pub fn identity(alg: &SCAlgebra<R>) -> Self {
        AlgebraMap { matrix: linalg::identity(alg.like(), alg.rank) }
    }

    /// Builds the matrix from the image vectors of the basis.
    pub fn from_images(images: Vec<Vec<R>>) -> Self {
        AlgebraMap { matrix: linalg::transpose(&images) }
    }

    pub fn apply(&self, v: &[R]) -> Vec<R> {
        linalg::mat_vec(&self.matrix, v)
    }

    pub fn image(&self, i: usize) -> Vec<R> {
        self.matrix.iter().map(|row| row[i].clone()).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraMap<R>) -> AlgebraMap<R> {
        AlgebraMap { matrix: linalg::mat_mul(&self.matrix, &other.matrix) }
    }

    pub fn is_invertible(&self) -> bool {
        linalg::determinant(&self.matrix).is_unit()
    }

    /// First basis pair on which `φ(bᵢbⱼ) ≠ φ(bᵢ)φ(bⱼ)`.
    pub fn multiplicativity_witness(&self, source: &SCAlgebra<R>, target: &SCAlgebra<R>) -> Option<(usize, usize)> {
        let images: Vec<Vec<R>> = (0..source.rank).map(|i| self.image(i)).collect();
        for i in 0..source.rank {
            for j in 0..source.rank {
                let lhs = self.apply(&source.mult[i][j]);
                let rhs = target.product(&images[i], &images[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_unital(&self, source: &SCAlgebra<R>, target: &SCAlgebra<R>) -> bool {
        self.image(source.unit) == target.basis_vector(target.unit)
    }

    /// Unital, multiplicative and invertible.
    pub fn check_isomorphism(&self, source: &SCAlgebra<R>, target: &SCAlgebra<R>) -> Result<(), ActionError> {
        if self.matrix.len() != target.rank || self.matrix.iter().any(|r| r.len() != source.rank) {
            return Err(ActionError::Shape(0));
        }
        if !self.is_unital(source, target) {
            return Err(ActionError::NotUnital(0));
        }
        if let Some((i, j)) = self.multiplicativity_witness(source, target) {
            return Err(ActionError::NotMultiplicative { gen: 0, i, j });
        }
        if !self.is_invertible() {
            return Err(ActionError::NotInvertible(0));
        }
        Ok(())
    }

    /// `Mᵀ·T·M = T` for the trace form `T`.
    pub fn preserves_trace_form(&self, alg: &SCAlgebra<R>) -> bool {
        let t = alg.trace_form();
        let lhs = linalg::mat_mul(&linalg::transpose(&self.matrix), &linalg::mat_mul(&t, &self.matrix));
        lhs == t
    }
}

/// Evaluates a word in the generators: `[g₁, g₂, …] ↦ M_{g₁}·M_{g₂}·…`.
pub fn evaluate_word<R: Ring>(alg: &SCAlgebra<R>, gens: &[AlgebraMap<R>], word: &[usize]) -> Matrix<R> {
    word.iter()
        .fold(linalg::identity(alg.like(), alg.rank), |acc, &g| linalg::mat_mul(&acc, &gens[g].matrix))
}

/// Every generator is an automorphism and every relation word is the identity.
pub fn check_action<R: Ring>(
    alg: &SCAlgebra<R>,
    gens: &[AlgebraMap<R>],
    relations: &[Vec<usize>],
) -> Result<(), ActionError> {
    for (g, m) in gens.iter().enumerate() {
        if m.matrix.len() != alg.rank || m.matrix.iter().any(|r| r.len() != alg.rank) {
            return Err(ActionError::Shape(g));
        }
        m.check_isomorphism(alg, alg).map_err(|e| match e {
            ActionError::NotInvertible(_) => ActionError::NotInvertible(g),
            ActionError::NotUnital(_) => ActionError::NotUnital(g),
            ActionError::NotMultiplicative { i, j, .. } => ActionError::NotMultiplicative { gen: g, i, j },
            ActionError::Shape(_) => ActionError::Shape(g),
            other => other,
        })?;
    }
    for (k, word) in relations.iter().enumerate() {
        if !linalg::is_identity(&evaluate_word(alg, gens, word)) {
            return Err(ActionError::Relation(k));
        }
    }
    Ok(())
}

/// A `ℤ/3`-grading: one degree per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading(pub Vec<u8>);

/// First `(i, j, k)` with `c_{ij}^k ≠ 0` although `deg k ≠ deg i + deg j (mod 3)`.
pub fn grading_witness<R: Ring>(alg: &SCAlgebra<R>, g: &Grading) -> Option<(usize, usize, usize)> {
    assert_eq!(g.0.len(), alg.rank, "grading has the wrong length");
    for i in 0..alg.rank {
        for j in 0..alg.rank {
            for k in 0..alg.rank {
                if (g.0[i] + g.0[j]) % 3 != g.0[k] % 3 && !alg.mult[i][j][k].is_zero() {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

pub fn check_grading<R: Ring>(alg: &SCAlgebra<R>, g: &Grading) -> bool {
    grading_witness(alg, g).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn q(n: i64) -> Rational {
        Rational::integer(n)
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("b{i}")).collect()
    }

    /// 2×2 matrices on (e11, e12, e21, e22); unit e11+e22 is not a basis
    /// element, so use the basis (1, e12, e21, e11).
    pub(crate) fn matrix_algebra() -> SCAlgebra<Rational> {
        // elements as 2x2 matrices
        let basis = [[[1, 0], [0, 1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [0, 0]]];
        let coords = |m: [[i64; 2]; 2]| -> Vec<Rational> {
            // m = x·1 + y·e12 + z·e21 + w·e11 → x = m22, w = m11 − m22
            vec![q(m[1][1]), q(m[0][1]), q(m[1][0]), q(m[0][0] - m[1][1])]
        };
        let mul = |a: [[i64; 2]; 2], b: [[i64; 2]; 2]| {
            let mut c = [[0i64; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        c[i][j] += a[i][k] * b[k][j];
                    }
                }
            }
            c
        };
        let mult = (0..4).map(|i| (0..4).map(|j| coords(mul(basis[i], basis[j]))).collect()).collect();
        SCAlgebra::new(mult, 0, names(4)).unwrap()
    }

    /// ℚ[t]/(t³ − 1) on (1, t, t²).
    pub(crate) fn cyclic3() -> SCAlgebra<Rational> {
        let mult = (0..3)
            .map(|i| (0..3).map(|j| (0..3).map(|k| q(((i + j) % 3 == k) as i64)).collect()).collect())
            .collect();
        SCAlgebra::new(mult, 0, names(3)).unwrap()
    }

    #[test]
    fn matrix_algebra_is_associative_not_commutative() {
        let m = matrix_algebra();
        assert_eq!(m.commutativity_witness(), Some((1, 2)));
        assert!(m.check_associative());
        assert_eq!(m.associativity_witness_par(), None);
    }

    #[test]
    fn cyclic_trace_form_and_discriminant() {
        let c = cyclic3();
        let t = c.trace_form();
        assert_eq!(t[0][0], q(3));
        assert_eq!(c.trace(&c.basis_vector(1)), q(0));
        assert_eq!(c.discriminant(), q(-27));
        let shift = AlgebraMap::from_images(vec![
            c.basis_vector(0),
            c.basis_vector(2),
            c.basis_vector(1),
        ]);
        check_action(&c, &[shift.clone()], &[vec![0, 0]]).unwrap();
        assert!(shift.preserves_trace_form(&c));
        assert!(check_grading(&c, &Grading(vec![0, 1, 2])));
        assert_eq!(grading_witness(&c, &Grading(vec![0, 2, 2])), Some((1, 1, 2)));
    }

    #[test]
    fn square_zero_and_failures() {
        let n = 3;
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![q(0); n];
                        if i == 0 {
                            v[j] = q(1);
                        } else if j == 0 {
                            v[i] = q(1);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let z = SCAlgebra::new(mult, 0, names(3)).unwrap();
        assert!(z.check_commutative() && z.check_associative());
        assert_eq!(z.discriminant(), q(0));
        assert_eq!(linalg::rank(&z.trace_form()), 1);
        let bad = vec![vec![vec![q(2)]]];
        assert_eq!(SCAlgebra::new(bad, 0, names(1)), Err(AlgebraError::NotUnit(0)));
    }

    #[test]
    fn non_invertible_generator_is_rejected() {
        let c = cyclic3();
        let mut m = linalg::identity(&q(0), 3);
        m[1][1] = q(0);
        m[2][2] = q(0);
        assert!(check_action(&c, &[AlgebraMap::new(m)], &[]).is_err());
    }

    #[test]
    fn subalgebra_by_pivots() {
        let c = cyclic3();
        let sub = c.subalgebra(&[c.basis_vector(0)], vec!["1".into()]).unwrap();
        assert_eq!(sub.rank(), 1);
        let sum = vec![q(0), q(1), q(1)];
        assert!(c.subalgebra(&[c.basis_vector(0), c.basis_vector(1)], names(2)).is_err());
        let fixed = c.subalgebra(&[c.basis_vector(0), sum], names(2)).unwrap();
        // (t + t²)² = 2 + t + t²
        assert_eq!(fixed.product_of_basis(1, 1), &[q(2), q(1)]);
    }

    mod props {
        use super::*;
        use crate::exactnum::Field;
        use proptest::prelude::*;

        fn diag(vals: &[i64]) -> SCAlgebra<Rational> {
            // ℚ[x]/(x² − a) for rank 2 on (1, x)
            let a = q(vals[0]);
            let mult = vec![
                vec![vec![q(1), q(0)], vec![q(0), q(1)]],
                vec![vec![q(0), q(1)], vec![a, q(0)]],
            ];
            SCAlgebra::new(mult, 0, names(2)).unwrap()
        }

        proptest! {
            #[test]
            fn discriminant_is_multiplicative(a in -5i64..6, b in -5i64..6) {
                let x = diag(&[a]);
                let y = diag(&[b]);
                let p = x.direct_product(&y);
                prop_assert_eq!(p.discriminant(), x.discriminant().mul(&y.discriminant()));
            }

            #[test]
            fn discriminant_changes_by_det_squared(a in -5i64..6, s in 1i64..5, t in -3i64..4) {
                // basis change (1, x) -> (1, s·x + t)
                let x = diag(&[a]);
                let (s, t) = (q(s), q(t));
                let v = vec![t.clone(), s.clone()];
                let v2 = x.product(&v, &v);
                // v² = v2[0] + v2[1]·x = v2[0] - v2[1]·t/s + (v2[1]/s)·v
                let c1 = v2[1].mul(&s.inv().unwrap());
                let c0 = v2[0].sub(&c1.mul(&t));
                let mult = vec![
                    vec![vec![q(1), q(0)], vec![q(0), q(1)]],
                    vec![vec![q(0), q(1)], vec![c0, c1]],
                ];
                let y = SCAlgebra::new(mult, 0, names(2)).unwrap();
                prop_assert_eq!(y.discriminant(), x.discriminant().mul(&s.mul(&s)));
            }
        }
    }
}
