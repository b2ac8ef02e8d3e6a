//! Buchberger's algorithm and the ideal toolbox built on it.

use std::cmp::Ordering;
use std::sync::Arc;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::exactnum::{Field, Ring};
use crate::poly::{IdealGens, Monomial, MonomialOrder, Poly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    #[error("Groebner basis computation exceeded its deadline after {0:?}")]
    Timeout(Duration),
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
}

#[derive(Clone, Debug, Default)]
pub struct GbOptions {
    pub deadline: Option<Instant>,
}

impl GbOptions {
    pub fn with_budget(budget: Duration) -> Self {
        GbOptions { deadline: Some(Instant::now() + budget) }
    }
}

/// A Gröbner basis: monic elements sorted by decreasing leading monomial.
#[derive(Clone)]
pub struct GroebnerBasis<K> {
    ring: Arc<PolyRing<K>>,
    basis: Vec<Poly<K>>,
    reduced: bool,
}

impl<K: Field> std::fmt::Debug for GroebnerBasis<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.basis.iter()).finish()
    }
}

impl<K: Field> GroebnerBasis<K> {
    pub fn ring(&self) -> &Arc<PolyRing<K>> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn polys(&self) -> &[Poly<K>] {
        &self.basis
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().filter_map(|g| g.leading_monomial().cloned()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.iter().any(|g| g.leading_monomial().is_some_and(|m| m.is_one()))
    }

    /// Remainder of `f` on division by the basis (full reduction).
    pub fn normal_form(&self, f: &Poly<K>) -> Poly<K> {
        let f = if f.ring().same(&self.ring) {
            f.clone()
        } else {
            f.to_ring(&self.ring).expect("polynomial outside the basis ring")
        };
        reduce(&f, &self.basis, &self.ring)
    }

    pub fn contains(&self, f: &Poly<K>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Checks the defining property: every S-polynomial reduces to zero.
    pub fn verify(&self) -> bool {
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                if !reduce(&s_poly(&self.basis[i], &self.basis[j]), &self.basis, &self.ring)
                    .is_zero()
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Full reduction of `f` modulo `basis`, whose elements are monic or at least non-zero.
pub(crate) fn reduce<K: Field>(f: &Poly<K>, basis: &[Poly<K>], ring: &Arc<PolyRing<K>>) -> Poly<K> {
    let lms: Vec<&Monomial> = basis.iter().map(|g| g.leading_monomial().expect("non-zero")).collect();
    let mut p = f.clone();
    let mut rest: Vec<(Monomial, K)> = Vec::new();
    while let Some((m, c)) = p.terms().first().cloned() {
        match lms.iter().position(|lm| lm.divides(&m)) {
            Some(k) => {
                let g = &basis[k];
                let lc = g.leading_coeff().expect("non-zero");
                let factor = if lc.is_one() { c } else { c.div(lc).expect("non-zero") };
                p = p.sub_mul_term(&factor, &m.div(lms[k]), g);
            }
            None => {
                rest.push((m, c));
                p = p.drop_leading();
            }
        }
    }
    Poly::from_sorted_terms(ring, rest)
}

fn s_poly<K: Field>(f: &Poly<K>, g: &Poly<K>) -> Poly<K> {
    let (fm, fc) = (f.leading_monomial().unwrap(), f.leading_coeff().unwrap());
    let (gm, gc) = (g.leading_monomial().unwrap(), g.leading_coeff().unwrap());
    let l = fm.lcm(gm);
    let one = fc.one_like();
    let a = f.mul_term(&l.div(fm), &one.div(fc).unwrap());
    a.sub_mul_term(&one.div(gc).unwrap(), &l.div(gm), g)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `gens` (cached per order).
pub fn buchberger<K: Field>(gens: &IdealGens<K>) -> Arc<GroebnerBasis<K>> {
    gens.basis()
}

/// Buchberger's algorithm with the Gebauer–Möller pair update and
/// degree-then-order pair selection. The result is the reduced basis, so it
/// depends only on the ideal and the order.
pub fn buchberger_with<K: Field>(
    gens: &[Poly<K>],
    ring: &Arc<PolyRing<K>>,
    opts: &GbOptions,
) -> Result<GroebnerBasis<K>, GbError> {
    let start = Instant::now();
    let mut input: Vec<Poly<K>> = gens
        .iter()
        .map(|g| if g.ring().same(ring) { g.clone() } else { g.to_ring(ring).expect("same variables") })
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    if input.iter().any(|g| g.is_constant()) {
        return Ok(GroebnerBasis { ring: ring.clone(), basis: vec![Poly::one(ring)], reduced: true });
    }
    // small leading terms first tends to prune more pairs
    input.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let mut polys: Vec<Poly<K>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut pending = input.into_iter();
    loop {
        if let Some(limit) = opts.deadline {
            if Instant::now() > limit {
                return Err(GbError::Timeout(start.elapsed()));
            }
        }
        let next = match pending.next() {
            Some(g) => Some(g),
            None => {
                if pairs.is_empty() {
                    break;
                }
                let k = select_pair(&pairs, ring);
                let pair = pairs.swap_remove(k);
                Some(s_poly(&polys[pair.i], &polys[pair.j]))
            }
        };
        let Some(s) = next else { break };
        let current: Vec<Poly<K>> =
            (0..polys.len()).filter(|&k| active[k]).map(|k| polys[k].clone()).collect();
        let h = reduce(&s, &current, ring);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.is_constant() {
            return Ok(GroebnerBasis { ring: ring.clone(), basis: vec![Poly::one(ring)], reduced: true });
        }
        update(&mut polys, &mut active, &mut pairs, h);
    }

    let basis: Vec<Poly<K>> =
        (0..polys.len()).filter(|&k| active[k]).map(|k| polys[k].clone()).collect();
    Ok(GroebnerBasis { ring: ring.clone(), basis: interreduce(basis, ring), reduced: true })
}

fn select_pair<K: Field>(pairs: &[Pair], ring: &Arc<PolyRing<K>>) -> usize {
    let mut best = 0;
    for k in 1..pairs.len() {
        let (a, b) = (&pairs[k], &pairs[best]);
        let ord = a
            .lcm
            .degree()
            .cmp(&b.lcm.degree())
            .then_with(|| ring.cmp(&a.lcm, &b.lcm))
            .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
        if ord == Ordering::Less {
            best = k;
        }
    }
    best
}

/// Gebauer–Möller installation of a new basis element `h`.
fn update<K: Field>(
    polys: &mut Vec<Poly<K>>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: Poly<K>,
) {
    let hn = polys.len();
    let hm = h.leading_monomial().unwrap().clone();
    let lm = |k: usize, polys: &Vec<Poly<K>>| polys[k].leading_monomial().unwrap().clone();

    let mut candidates: Vec<(usize, Monomial, bool)> = (0..polys.len())
        .filter(|&k| active[k])
        .map(|k| {
            let g = lm(k, polys);
            (k, hm.lcm(&g), hm.is_coprime(&g))
        })
        .collect();

    // chain criterion among the new pairs
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    while !candidates.is_empty() {
        let (k, l, coprime) = candidates.remove(0);
        let dominated = candidates.iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(&l));
        if coprime || !dominated {
            kept.push((k, l, coprime));
        }
    }
    // product criterion
    let fresh: Vec<Pair> = kept
        .into_iter()
        .filter(|(_, _, coprime)| !coprime)
        .map(|(k, l, _)| Pair { i: k, j: hn, lcm: l })
        .collect();

    // old pairs made redundant by h
    pairs.retain(|p| {
        let gi = lm(p.i, polys);
        let gj = lm(p.j, polys);
        !(hm.divides(&p.lcm) && gi.lcm(&hm) != p.lcm && gj.lcm(&hm) != p.lcm)
    });
    pairs.extend(fresh);

    for k in 0..polys.len() {
        if active[k] && hm.divides(polys[k].leading_monomial().unwrap()) {
            active[k] = false;
        }
    }
    polys.push(h);
    active.push(true);
}

/// Turns a minimal basis into the reduced one, sorted by decreasing leading monomial.
fn interreduce<K: Field>(mut basis: Vec<Poly<K>>, ring: &Arc<PolyRing<K>>) -> Vec<Poly<K>> {
    basis.sort_by(|a, b| ring.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    // drop elements whose leading monomial is divisible by another one
    let mut minimal: Vec<Poly<K>> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let m = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(k2, g2)| {
            let m2 = g2.leading_monomial().unwrap();
            k2 != k && m2.divides(m) && (m2 != m || k2 > k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly<K>> =
            minimal.iter().enumerate().filter(|(k2, _)| *k2 != k).map(|(_, g)| g.clone()).collect();
        out.push(reduce(&minimal[k], &others, ring).monic());
    }
    out
}

/// Remainder of multivariate division of `f` by `gb`.
pub fn normal_form<K: Field>(f: &Poly<K>, gb: &GroebnerBasis<K>) -> Poly<K> {
    gb.normal_form(f)
}

pub fn ideal_membership<K: Field>(f: &Poly<K>, gens: &IdealGens<K>) -> bool {
    gens.basis().contains(f)
}

/// Equality of ideals via their reduced bases in the ambient order.
pub fn ideal_equal<K: Field>(lhs: &IdealGens<K>, rhs: &IdealGens<K>) -> bool {
    assert!(lhs.ring().same(rhs.ring()), "ideals in different rings");
    let a = lhs.basis();
    let b = rhs.basis();
    a.polys() == b.polys()
}

/// `lhs ⊆ rhs`.
pub fn ideal_contained<K: Field>(lhs: &IdealGens<K>, rhs: &IdealGens<K>) -> bool {
    let gb = rhs.basis();
    lhs.gens().iter().all(|g| gb.contains(g))
}

fn fresh_name<K: Field>(ring: &PolyRing<K>, base: &str) -> String {
    let mut name = base.to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// Generators of `gens ∩ k[remaining variables]`, computed with a block order
/// that puts the dropped variables first. The result lives in the original ring.
pub fn elimination_ideal<K: Field>(gens: &IdealGens<K>, drop: &[&str]) -> IdealGens<K> {
    let ring = gens.ring();
    for d in drop {
        assert!(ring.var_index(d).is_some(), "unknown variable {d}");
    }
    let mut vars: Vec<String> = drop.iter().map(|s| s.to_string()).collect();
    vars.extend(ring.vars().iter().filter(|v| !drop.contains(&v.as_str())).cloned());
    let elim = PolyRing::new(&vars, MonomialOrder::Block(drop.len()), &ring.coeff_zero());
    let gb = gens.basis_in(&elim);
    let kept = gb
        .polys()
        .iter()
        .filter(|g| g.variables().iter().all(|&i| i >= drop.len()))
        .map(|g| g.to_ring(ring).expect("same variables"))
        .collect();
    IdealGens::new(ring, kept)
}

/// Adds a new variable in front (as the first block) and returns the larger ring.
fn with_front_var<K: Field>(ring: &Arc<PolyRing<K>>, base: &str) -> (Arc<PolyRing<K>>, String) {
    let t = fresh_name(ring, base);
    let mut vars = vec![t.clone()];
    vars.extend(ring.vars().iter().cloned());
    (PolyRing::new(&vars, MonomialOrder::Block(1), &ring.coeff_zero()), t)
}

/// Eliminates the first variable of `big` from `gens` and maps back to `ring`.
fn eliminate_front<K: Field>(
    gens: Vec<Poly<K>>,
    big: &Arc<PolyRing<K>>,
    ring: &Arc<PolyRing<K>>,
) -> IdealGens<K> {
    let gb = buchberger_with(&gens, big, &GbOptions::default()).expect("no deadline");
    let kept = gb
        .polys()
        .iter()
        .filter(|g| g.variables().iter().all(|&i| i >= 1))
        .map(|g| g.restrict_to_ring(ring).expect("only original variables"))
        .collect();
    IdealGens::new(ring, kept)
}

/// `lhs ∩ rhs` as `(t·lhs, (1−t)·rhs) ∩ k[x]`.
pub fn ideal_intersection<K: Field>(lhs: &IdealGens<K>, rhs: &IdealGens<K>) -> IdealGens<K> {
    let ring = lhs.ring();
    assert!(ring.same(rhs.ring()), "ideals in different rings");
    let (big, t) = with_front_var(ring, "_t");
    let tv = Poly::var(&big, &t).unwrap();
    let one_minus_t = Poly::one(&big).sub(&tv);
    let mut gens: Vec<Poly<K>> =
        lhs.gens().iter().map(|g| tv.mul(&g.to_ring(&big).unwrap())).collect();
    gens.extend(rhs.gens().iter().map(|g| one_minus_t.mul(&g.to_ring(&big).unwrap())));
    eliminate_front(gens, &big, ring)
}

/// Rabinowitsch: `f ∈ √I` iff `1 ∈ I + (1 − t·f)`.
pub fn radical_membership<K: Field>(f: &Poly<K>, gens: &IdealGens<K>) -> bool {
    radical_membership_with(f, gens, &GbOptions::default()).expect("no deadline")
}

pub fn radical_membership_with<K: Field>(
    f: &Poly<K>,
    gens: &IdealGens<K>,
    opts: &GbOptions,
) -> Result<bool, GbError> {
    let ring = gens.ring();
    let t = fresh_name(ring, "_t");
    let mut vars = ring.vars().to_vec();
    vars.push(t.clone());
    let big = PolyRing::new(&vars, ring.order(), &ring.coeff_zero());
    let tv = Poly::var(&big, &t).unwrap();
    let mut g: Vec<Poly<K>> = gens.gens().iter().map(|g| g.to_ring(&big).unwrap()).collect();
    g.push(Poly::one(&big).sub(&tv.mul(&f.to_ring(&big).unwrap())));
    Ok(buchberger_with(&g, &big, opts)?.is_unit_ideal())
}

/// Smallest `k ≤ max_power` with `f^k ∈ I`, a direct certificate of radical membership.
pub fn nilpotency_index<K: Field>(f: &Poly<K>, gb: &GroebnerBasis<K>, max_power: u32) -> Option<u32> {
    let mut p = gb.normal_form(f);
    for k in 1..=max_power {
        if p.is_zero() {
            return Some(k);
        }
        p = gb.normal_form(&p.mul(f));
    }
    None
}

/// `I : f^∞`, via `(I, 1 − t·f) ∩ k[x]`.
pub fn saturation<K: Field>(gens: &IdealGens<K>, f: &Poly<K>) -> IdealGens<K> {
    let ring = gens.ring();
    let (big, t) = with_front_var(ring, "_t");
    let tv = Poly::var(&big, &t).unwrap();
    let mut g: Vec<Poly<K>> = gens.gens().iter().map(|g| g.to_ring(&big).unwrap()).collect();
    g.push(Poly::one(&big).sub(&tv.mul(&f.to_ring(&big).unwrap())));
    eliminate_front(g, &big, ring)
}

/// Krull dimension of `k[x]/I`: the largest set of variables no leading
/// monomial of the basis is supported in.
pub fn krull_dimension<K: Field>(gens: &IdealGens<K>) -> Result<usize, GbError> {
    dimension_from_basis(&gens.basis())
}

pub fn dimension_from_basis<K: Field>(gb: &GroebnerBasis<K>) -> Result<usize, GbError> {
    Ok(max_independent_set(gb)?.len())
}

/// A largest set of variables (indices) containing the support of no leading
/// monomial; the first such set in increasing bitmask order.
pub fn max_independent_set<K: Field>(gb: &GroebnerBasis<K>) -> Result<Vec<usize>, GbError> {
    if gb.is_unit_ideal() {
        return Err(GbError::UnitIdeal);
    }
    let n = gb.ring().nvars();
    assert!(n < 26, "too many variables for subset enumeration");
    let masks: Vec<u32> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0u32;
    for s in 0u32..(1 << n) {
        if s.count_ones() > best.count_ones() && masks.iter().all(|&lm| lm & !s != 0) {
            best = s;
        }
    }
    Ok((0..n).filter(|i| best >> i & 1 == 1).collect())
}
