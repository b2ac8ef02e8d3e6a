//! Coefficient rings `K[x₁..xₙ]/I` with elements kept in normal form, and
//! homomorphisms out of them.
//!
//! With no variables this is just the field `K`; with variables and `I = 0`
//! it is a polynomial ring, which is how parameter families are modelled.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactnum::{ArithError, Field, Rational, Ring};
use crate::groebner::GroebnerBasis;
use crate::poly::{parse_poly, IdealGens, MonomialOrder, Poly, PolyError, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("elements of different coefficient rings")]
    RingMismatch,
    #[error("defining relation {0} does not map to zero")]
    NotAHomomorphism(String),
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub struct CoeffRing<K> {
    ambient: Arc<PolyRing<K>>,
    ideal: IdealGens<K>,
    gb: Arc<GroebnerBasis<K>>,
}

impl<K: Field> fmt::Debug for CoeffRing<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl<K: Field> CoeffRing<K> {
    /// The coefficient field itself.
    pub fn field(coeff: &K) -> Arc<Self> {
        Self::polynomial::<&str>(&[], coeff)
    }

    /// `K[vars]` with no relations.
    pub fn polynomial<S: AsRef<str>>(vars: &[S], coeff: &K) -> Arc<Self> {
        let ring = PolyRing::grevlex(vars, coeff);
        Self::from_ideal(IdealGens::new(&ring, Vec::new()))
    }

    /// `K[vars]/(relations)` with relations given as text.
    pub fn quotient<S: AsRef<str>>(
        vars: &[S],
        relations: &[S],
        coeff: &K,
    ) -> Result<Arc<Self>, PolyError> {
        let ring = PolyRing::grevlex(vars, coeff);
        let gens = relations
            .iter()
            .map(|r| parse_poly(r.as_ref(), &ring))
            .collect::<Result<_, _>>()?;
        Ok(Self::from_ideal(IdealGens::new(&ring, gens)))
    }

    pub fn from_ideal(ideal: IdealGens<K>) -> Arc<Self> {
        let ambient = ideal.ring().clone();
        assert!(
            matches!(ambient.order(), MonomialOrder::Grevlex | MonomialOrder::Lex),
            "coefficient rings use a global order"
        );
        let gb = ideal.basis();
        Arc::new(CoeffRing { ambient, ideal, gb })
    }

    /// Adds variables and relations: `self[new_vars]/(relations)`.
    pub fn adjoin<S: AsRef<str>>(
        &self,
        new_vars: &[S],
        relations: &[S],
    ) -> Result<Arc<Self>, PolyError> {
        let mut vars = self.ambient.vars().to_vec();
        vars.extend(new_vars.iter().map(|v| v.as_ref().to_string()));
        let ring = PolyRing::new(&vars, self.ambient.order(), &self.ambient.coeff_zero());
        let mut gens: Vec<Poly<K>> =
            self.ideal.gens().iter().map(|g| g.to_ring(&ring)).collect::<Result<_, _>>()?;
        for r in relations {
            gens.push(parse_poly(r.as_ref(), &ring)?);
        }
        Ok(Self::from_ideal(IdealGens::new(&ring, gens)))
    }

    pub fn ambient(&self) -> &Arc<PolyRing<K>> {
        &self.ambient
    }

    pub fn ideal(&self) -> &IdealGens<K> {
        &self.ideal
    }

    pub fn basis(&self) -> &GroebnerBasis<K> {
        &self.gb
    }

    pub fn is_field_kind(&self) -> bool {
        self.ambient.nvars() == 0
    }

    pub fn characteristic(&self) -> u64 {
        self.ambient.coeff_zero().characteristic()
    }

    pub fn describe(&self) -> String {
        let base = match self.characteristic() {
            0 => "QQ".to_string(),
            p => format!("GF({p})"),
        };
        if self.ambient.nvars() == 0 {
            return base;
        }
        let mut out = format!("{base}[{}]", self.ambient.vars().join(","));
        if !self.gb.polys().is_empty() {
            let rels: Vec<String> = self.ideal.gens().iter().map(|g| g.to_string()).collect();
            out.push_str(&format!("/({})", rels.join(", ")));
        }
        out
    }

    pub fn same(&self, other: &CoeffRing<K>) -> bool {
        std::ptr::eq(self, other)
            || (self.ambient.same(&other.ambient) && self.gb.polys() == other.gb.polys())
    }

    /// `true` when the defining ideal is the unit ideal (the zero ring).
    pub fn is_zero_ring(&self) -> bool {
        self.gb.is_unit_ideal()
    }

    /// Whether `elems` generate the unit ideal of this ring.
    pub fn generates_unit_ideal(&self, elems: &[Poly<K>]) -> bool {
        if elems.iter().any(|e| e.as_constant().is_some_and(|c| !c.is_zero())) {
            return true;
        }
        let extra: Vec<Poly<K>> = elems.iter().filter(|e| !e.is_zero()).cloned().collect();
        if extra.is_empty() {
            return self.is_zero_ring();
        }
        self.ideal.with(&extra).basis().is_unit_ideal()
    }
}

/// Element of a [`CoeffRing`], always in normal form.
#[derive(Clone)]
pub struct RingElem<K> {
    ring: Arc<CoeffRing<K>>,
    value: Poly<K>,
}

impl<K: Field> RingElem<K> {
    pub fn from_poly(ring: &Arc<CoeffRing<K>>, p: Poly<K>) -> Self {
        let value = if ring.gb.polys().is_empty() { p } else { ring.gb.normal_form(&p) };
        RingElem { ring: ring.clone(), value }
    }

    pub fn constant(ring: &Arc<CoeffRing<K>>, c: K) -> Self {
        RingElem { ring: ring.clone(), value: ring.gb.normal_form(&Poly::constant(&ring.ambient, c)) }
    }

    pub fn from_i64(ring: &Arc<CoeffRing<K>>, n: i64) -> Self {
        Self::constant(ring, ring.ambient.coeff_one().from_i64_like(n))
    }

    pub fn gen(ring: &Arc<CoeffRing<K>>, name: &str) -> Result<Self, PolyError> {
        Ok(Self::from_poly(ring, Poly::var(&ring.ambient, name)?))
    }

    pub fn parse(ring: &Arc<CoeffRing<K>>, text: &str) -> Result<Self, PolyError> {
        Ok(Self::from_poly(ring, parse_poly(text, &ring.ambient)?))
    }

    pub fn ring(&self) -> &Arc<CoeffRing<K>> {
        &self.ring
    }

    pub fn value(&self) -> &Poly<K> {
        &self.value
    }

    pub fn as_constant(&self) -> Option<K> {
        self.value.as_constant()
    }

    fn check(&self, rhs: &Self) -> Result<(), RingError> {
        if self.ring.same(&rhs.ring) {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, RingError> {
        self.check(rhs)?;
        Ok(RingElem { ring: self.ring.clone(), value: self.value.add(&rhs.value) })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, RingError> {
        self.check(rhs)?;
        Ok(RingElem { ring: self.ring.clone(), value: self.value.sub(&rhs.value) })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, RingError> {
        self.check(rhs)?;
        Ok(Self::from_poly(&self.ring, self.value.mul(&rhs.value)))
    }

    /// The same element viewed in a ring with more variables (e.g. after [`CoeffRing::adjoin`]).
    pub fn lift_to(&self, target: &Arc<CoeffRing<K>>) -> Result<Self, PolyError> {
        Ok(Self::from_poly(target, self.value.to_ring(&target.ambient)?))
    }

    /// Inverse via the reduced basis of `I + (t·x − 1)` in an order eliminating `t`;
    /// a unit leaves an element `t − s` in that basis with `s = x⁻¹`.
    fn inverse_by_elimination(&self) -> Option<Self> {
        let ring = &self.ring.ambient;
        let mut t = String::from("_inv");
        while ring.var_index(&t).is_some() {
            t.push('_');
        }
        let mut vars = vec![t.clone()];
        vars.extend(ring.vars().iter().cloned());
        let big = PolyRing::new(&vars, MonomialOrder::Block(1), &ring.coeff_zero());
        let tv = Poly::var(&big, &t).ok()?;
        let mut gens: Vec<Poly<K>> =
            self.ring.ideal.gens().iter().map(|g| g.to_ring(&big).unwrap()).collect();
        gens.push(tv.mul(&self.value.to_ring(&big).unwrap()).sub(&Poly::one(&big)));
        let gb = IdealGens::new(&big, gens).basis();
        if gb.is_unit_ideal() {
            return None;
        }
        for g in gb.polys() {
            let lm = g.leading_monomial()?;
            if lm.degree() == 1 && lm.exponents()[0] == 1 {
                let rest = Poly::from_terms(&big, g.terms()[1..].to_vec());
                if rest.variables().iter().all(|&i| i >= 1) {
                    let s = rest.neg().restrict_to_ring(ring).ok()?;
                    let cand = Self::from_poly(&self.ring, s);
                    if cand.mul(self).is_one() {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }
}

impl<K: Field> PartialEq for RingElem<K> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.value == other.value
    }
}

impl<K: Field> Eq for RingElem<K> {}

impl<K: Field> fmt::Debug for RingElem<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<K: Field> fmt::Display for RingElem<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<K: Field> Ring for RingElem<K> {
    fn zero_like(&self) -> Self {
        RingElem { ring: self.ring.clone(), value: Poly::zero(&self.ring.ambient) }
    }
    fn one_like(&self) -> Self {
        Self::from_i64(&self.ring, 1)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::from_i64(&self.ring, n)
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
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
        RingElem { ring: self.ring.clone(), value: self.value.neg() }
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.ring.is_zero_ring() {
            return Some(self.clone());
        }
        match self.value.as_constant() {
            Some(c) if !c.is_zero() => return Some(Self::constant(&self.ring, c.inv().ok()?)),
            Some(_) => return None,
            None => {}
        }
        self.inverse_by_elimination()
    }
    fn is_unit(&self) -> bool {
        match self.value.as_constant() {
            Some(c) => !c.is_zero() || self.ring.is_zero_ring(),
            None => self.ring.generates_unit_ideal(std::slice::from_ref(&self.value)),
        }
    }
    fn ideal_is_unit(elems: &[Self]) -> bool {
        match elems.first() {
            None => false,
            Some(first) => {
                let polys: Vec<Poly<K>> = elems.iter().map(|e| e.value.clone()).collect();
                first.ring.generates_unit_ideal(&polys)
            }
        }
    }
    fn characteristic(&self) -> u64 {
        self.ring.characteristic()
    }
    fn is_field(&self) -> bool {
        self.ring.is_field_kind()
    }
}

type CoeffMap<K, T> = Arc<dyn Fn(&K) -> Result<T, ArithError> + Send + Sync>;

/// A ring homomorphism out of a [`CoeffRing`], given by the images of its
/// variables and a map on coefficients.
#[derive(Clone)]
pub struct RingHom<K, T> {
    source: Arc<CoeffRing<K>>,
    images: Vec<T>,
    zero: T,
    coeff: CoeffMap<K, T>,
}

impl<K: Field, T: Ring> RingHom<K, T> {
    /// Checks that every defining relation of `source` maps to zero.
    pub fn new(
        source: &Arc<CoeffRing<K>>,
        images: Vec<T>,
        zero: T,
        coeff: impl Fn(&K) -> Result<T, ArithError> + Send + Sync + 'static,
    ) -> Result<Self, RingError> {
        let expected = source.ambient.nvars();
        if images.len() != expected {
            return Err(RingError::ImageCount { expected, got: images.len() });
        }
        let hom = RingHom { source: source.clone(), images, zero: zero.zero_like(), coeff: Arc::new(coeff) };
        for g in source.ideal.gens() {
            if !hom.apply_poly(g)?.is_zero() {
                return Err(RingError::NotAHomomorphism(g.to_string()));
            }
        }
        Ok(hom)
    }

    pub fn source(&self) -> &Arc<CoeffRing<K>> {
        &self.source
    }

    pub fn images(&self) -> &[T] {
        &self.images
    }

    fn apply_poly(&self, p: &Poly<K>) -> Result<T, ArithError> {
        p.eval_with(&self.images, &self.zero, |c| (self.coeff)(c))
    }

    pub fn apply(&self, x: &RingElem<K>) -> Result<T, RingError> {
        if !x.ring.same(&self.source) {
            return Err(RingError::RingMismatch);
        }
        Ok(self.apply_poly(&x.value)?)
    }
}

impl<K: Field> RingHom<K, RingElem<K>> {
    /// Homomorphism between coefficient rings over the same field.
    pub fn between(
        source: &Arc<CoeffRing<K>>,
        target: &Arc<CoeffRing<K>>,
        images: Vec<RingElem<K>>,
    ) -> Result<Self, RingError> {
        let t = target.clone();
        let zero = RingElem::from_i64(target, 0);
        Self::new(source, images, zero, move |c| Ok(RingElem::constant(&t, c.clone())))
    }

    pub fn identity(ring: &Arc<CoeffRing<K>>) -> Self {
        let images = (0..ring.ambient.nvars())
            .map(|i| RingElem::from_poly(ring, Poly::var_at(&ring.ambient, i)))
            .collect();
        Self::between(ring, ring, images).expect("identity respects relations")
    }
}

impl<K: Field> RingHom<K, K> {
    /// Evaluation at a point of the coefficient field.
    pub fn evaluation(source: &Arc<CoeffRing<K>>, point: Vec<K>) -> Result<Self, RingError> {
        let zero = source.ambient.coeff_zero();
        Self::new(source, point, zero, |c| Ok(c.clone()))
    }
}

impl<T: Ring> RingHom<Rational, T> {
    /// Homomorphism out of a rational coefficient ring into any ring where the
    /// needed denominators are invertible (for example a prime field).
    pub fn from_rational(source: &Arc<CoeffRing<Rational>>, images: Vec<T>, zero: T) -> Result<Self, RingError> {
        let z = zero.clone();
        Self::new(source, images, zero, move |c| z.from_ratio_in(c.numer(), c.denom()))
    }
}
