//! Sparse multivariate polynomials over a [`Field`].
//!
//! A [`PolyRing`] fixes the variable names and the monomial order; every
//! [`Poly`] keeps its terms sorted strictly descending in that order with no
//! zero coefficients.

mod ideal;
mod monomial;
mod parse;

pub use ideal::IdealGens;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_ideal_file, parse_poly, IdealFile};

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactnum::{ArithError, Field, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    AmbientMismatch,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Variable names, a monomial order and a coefficient prototype.
#[derive(Clone, Debug)]
pub struct PolyRing<K> {
    vars: Vec<String>,
    order: MonomialOrder,
    proto: K,
}

impl<K: Field> PolyRing<K> {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder, coeff: &K) -> Arc<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            assert!(!vars[..i].contains(v), "duplicate variable {v}");
        }
        if let MonomialOrder::Block(k) = order {
            assert!(k <= vars.len(), "block split beyond variable count");
        }
        Arc::new(PolyRing { vars, order, proto: coeff.zero_like() })
    }

    pub fn grevlex<S: AsRef<str>>(vars: &[S], coeff: &K) -> Arc<Self> {
        Self::new(vars, MonomialOrder::Grevlex, coeff)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn coeff_zero(&self) -> K {
        self.proto.clone()
    }

    pub fn coeff_one(&self) -> K {
        self.proto.one_like()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn same(&self, other: &PolyRing<K>) -> bool {
        std::ptr::eq(self, other)
            || (self.vars == other.vars && self.order == other.order && self.proto == other.proto)
    }

    /// Same variables and coefficients, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Self::new(&self.vars, order, &self.proto)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }
}

/// A polynomial; see the module docs for the representation invariants.
#[derive(Clone)]
pub struct Poly<K> {
    ring: Arc<PolyRing<K>>,
    terms: Vec<(Monomial, K)>,
}

impl<K: Field> Poly<K> {
    pub fn zero(ring: &Arc<PolyRing<K>>) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing<K>>, c: K) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing<K>>) -> Self {
        Self::constant(ring, ring.coeff_one())
    }

    pub fn from_i64(ring: &Arc<PolyRing<K>>, n: i64) -> Self {
        Self::constant(ring, ring.coeff_one().from_i64_like(n))
    }

    pub fn term(ring: &Arc<PolyRing<K>>, m: Monomial, c: K) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<PolyRing<K>>, name: &str) -> Result<Self, PolyError> {
        let i = ring.var_index(name).ok_or_else(|| PolyError::UnknownVariable(name.into()))?;
        Ok(Self::var_at(ring, i))
    }

    pub fn var_at(ring: &Arc<PolyRing<K>>, index: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), index, 1), ring.coeff_one())
    }

    /// All variables of `ring`, in order.
    pub fn vars_of(ring: &Arc<PolyRing<K>>) -> Vec<Self> {
        (0..ring.nvars()).map(|i| Self::var_at(ring, i)).collect()
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Arc<PolyRing<K>>, mut terms: Vec<(Monomial, K)>) -> Self {
        terms.sort_by(|x, y| ring.cmp(&y.0, &x.0));
        let mut out: Vec<(Monomial, K)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = last.1.add(&c),
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|t| t.1.is_zero()) {
            out.pop();
        }
        Poly { ring: ring.clone(), terms: out }
    }

    /// Trusts the caller that `terms` is strictly descending with non-zero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing<K>>, terms: Vec<(Monomial, K)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Poly { ring: ring.clone(), terms }
    }

    pub(crate) fn drop_leading(mut self) -> Self {
        if !self.terms.is_empty() {
            self.terms.remove(0);
        }
        self
    }

    pub fn ring(&self) -> &Arc<PolyRing<K>> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, K)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Constant coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<K> {
        match self.terms.as_slice() {
            [] => Some(self.ring.coeff_zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&K> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    /// Indices of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                seen[i] = true;
            }
        }
        (0..seen.len()).filter(|&i| seen[i]).collect()
    }

    fn check(&self, rhs: &Self) -> Result<(), PolyError> {
        if self.ring.same(&rhs.ring) {
            Ok(())
        } else {
            Err(PolyError::AmbientMismatch)
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check(rhs)?;
        Ok(self.merge(rhs, |c| c.clone()))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check(rhs)?;
        Ok(self.merge(rhs, |c| c.neg()))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    /// `self + f(rhs)` termwise, where `f` is applied to the coefficients of `rhs`.
    fn merge(&self, rhs: &Self, f: impl Fn(&K) -> K) -> Self {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &rhs.terms[j];
            match ring.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), f(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca.add(&f(cb));
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(rhs.terms[j..].iter().map(|(m, c)| (m.clone(), f(c))));
        Poly { ring: ring.clone(), terms: out }
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return Poly::zero(&self.ring);
        }
        let (short, long) =
            if self.terms.len() <= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut acc = Poly::zero(&self.ring);
        for (m, c) in &short.terms {
            acc = acc.merge(&long.mul_term(m, c), |x| x.clone());
        }
        acc
    }

    /// `c * m * self`. Multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &K) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc.mul(c))).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &K) -> Self {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    /// `self - c * m * g`, the basic reduction step.
    pub fn sub_mul_term(&self, c: &K, m: &Monomial, g: &Self) -> Self {
        self.merge(&g.mul_term(m, c), |x| x.neg())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is non-zero")),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        Ring::pow(self, exp)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[var] > 0)
            .map(|(m, c)| {
                let e = m.exponents()[var];
                let mut exps = m.exponents().to_vec();
                exps[var] -= 1;
                (Monomial::from_exponents(&exps), c.mul(&c.from_i64_like(e as i64)))
            })
            .collect();
        Poly::from_terms(&self.ring, terms)
    }

    /// Evaluates in any ring `T`; `coeff` maps coefficients into `T`.
    pub fn eval_with<T: Ring>(
        &self,
        values: &[T],
        zero: &T,
        coeff: impl Fn(&K) -> Result<T, ArithError>,
    ) -> Result<T, ArithError> {
        assert_eq!(values.len(), self.ring.nvars(), "wrong number of values");
        let mut acc = zero.zero_like();
        for (m, c) in &self.terms {
            let mut t = coeff(c)?;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&values[i].pow(e as u32));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Evaluates at a point with coordinates in the coefficient field.
    pub fn eval(&self, point: &[K]) -> K {
        self.eval_with(point, &self.ring.coeff_zero(), |c| Ok(c.clone()))
            .expect("identity coefficient map")
    }

    /// Substitutes polynomials of another ring (same coefficients) for the variables.
    pub fn substitute(&self, images: &[Poly<K>]) -> Poly<K> {
        assert!(!images.is_empty() || self.ring.nvars() == 0);
        let target = images.first().map(|p| p.ring.clone());
        match target {
            None => self.clone(),
            Some(t) => self
                .eval_with(images, &Poly::zero(&t), |c| Ok(Poly::constant(&t, c.clone())))
                .expect("identity coefficient map"),
        }
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    /// Variables of `target` missing from `self`'s ring are simply unused.
    pub fn to_ring(&self, target: &Arc<PolyRing<K>>) -> Result<Self, PolyError> {
        let map: Vec<usize> = self
            .ring
            .vars
            .iter()
            .map(|v| target.var_index(v).ok_or_else(|| PolyError::UnknownVariable(v.clone())))
            .collect::<Result<_, _>>()?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.remap(&map, target.nvars()), c.clone()))
            .collect();
        Ok(Poly::from_terms(target, terms))
    }

    /// Like [`Poly::to_ring`] but only requires the variables that actually occur.
    pub fn restrict_to_ring(&self, target: &Arc<PolyRing<K>>) -> Result<Self, PolyError> {
        let mut map = vec![usize::MAX; self.ring.nvars()];
        for i in self.variables() {
            let name = &self.ring.vars[i];
            map[i] = target.var_index(name).ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.remap(&map, target.nvars()), c.clone()))
            .collect();
        Ok(Poly::from_terms(target, terms))
    }
}

impl<K: Field> PartialEq for Poly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}

impl<K: Field> Eq for Poly<K> {}

impl<K: Field> std::hash::Hash for Poly<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<K: Field> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prints in the grammar accepted by [`parse_poly`], e.g. `2*a*A + b^2 - 3/2`.
impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || m.is_one() {
                factors.push(mag);
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<K: Field> Ring for Poly<K> {
    fn zero_like(&self) -> Self {
        Poly::zero(&self.ring)
    }
    fn one_like(&self) -> Self {
        Poly::one(&self.ring)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Poly::from_i64(&self.ring, n)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("ring mismatch")
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("ring mismatch")
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("ring mismatch")
    }
    fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        Poly { ring: self.ring.clone(), terms }
    }
    fn try_inverse(&self) -> Option<Self> {
        match self.as_constant() {
            Some(c) if !c.is_zero() => Some(Poly::constant(&self.ring, c.inv().ok()?)),
            _ => None,
        }
    }
    fn characteristic(&self) -> u64 {
        self.ring.proto.characteristic()
    }
    fn is_field(&self) -> bool {
        self.ring.nvars() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn ring() -> Arc<PolyRing<Rational>> {
        PolyRing::grevlex(&["a", "d"], &Rational::zero())
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring();
        let a = Poly::var(&r, "a").unwrap();
        let d = Poly::var(&r, "d").unwrap();
        let s = a.add(&d);
        assert_eq!(s.mul(&a.sub(&d)).to_string(), "a^2 - d^2");
        assert!(s.add(&a.neg().sub(&d)).is_zero());
        assert_eq!(s.pow(3).to_string(), "a^3 + 3*a^2*d + 3*a*d^2 + d^3");
        assert_eq!(Poly::from_i64(&r, 0).to_string(), "0");
    }

    #[test]
    fn cube_against_binomial_oracle() {
        // independent oracle: binomial coefficients by Pascal's rule
        let mut row = vec![1i64];
        for _ in 0..3 {
            let mut next = vec![1i64; row.len() + 1];
            for k in 1..row.len() {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
        }
        let r = ring();
        let s = Poly::var(&r, "a").unwrap().add(&Poly::var(&r, "d").unwrap());
        let cube = s.mul(&s).mul(&s);
        for (k, &binom) in row.iter().enumerate() {
            let m = Monomial::from_exponents(&[(3 - k) as u16, k as u16]);
            let c = cube.terms().iter().find(|t| t.0 == m).map(|t| t.1.clone());
            assert_eq!(c, Some(Rational::integer(binom)));
        }
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let r1 = ring();
        let r2 = PolyRing::grevlex(&["x"], &Rational::zero());
        let a = Poly::var(&r1, "a").unwrap();
        let x = Poly::var(&r2, "x").unwrap();
        assert_eq!(a.try_add(&x), Err(PolyError::AmbientMismatch));
        assert!(Poly::var(&r1, "q").is_err());
    }

    #[test]
    fn derivative_and_eval() {
        let r = ring();
        let p: Poly<Rational> = parse_poly("a^3*d - 2*d + 1/2", &r).unwrap();
        assert_eq!(p.derivative(0).to_string(), "3*a^2*d");
        assert_eq!(p.eval(&[Rational::integer(2), Rational::integer(1)]), "13/2".parse().unwrap());
    }
}
