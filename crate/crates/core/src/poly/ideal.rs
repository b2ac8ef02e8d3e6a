use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::{MonomialOrder, Poly, PolyRing};
use crate::exactnum::{Field, Ring};
use crate::groebner::{self, GbError, GbOptions, GroebnerBasis};

type CacheKey = (Vec<String>, MonomialOrder);

/// Generators of an ideal together with a per-order cache of reduced Gröbner bases.
pub struct IdealGens<K> {
    ring: Arc<PolyRing<K>>,
    gens: Vec<Poly<K>>,
    cache: Mutex<HashMap<CacheKey, Arc<GroebnerBasis<K>>>>,
}

impl<K: Field> Clone for IdealGens<K> {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().expect("cache lock").clone();
        IdealGens { ring: self.ring.clone(), gens: self.gens.clone(), cache: Mutex::new(cache) }
    }
}

impl<K: Field> fmt::Debug for IdealGens<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter().map(|g| g.to_string())).finish()
    }
}

impl<K: Field> IdealGens<K> {
    /// Generators are stored as given (zero polynomials included); all must live in `ring`.
    pub fn new(ring: &Arc<PolyRing<K>>, gens: Vec<Poly<K>>) -> Self {
        for g in &gens {
            assert!(g.ring().same(ring), "generator outside the ambient ring");
        }
        IdealGens { ring: ring.clone(), gens, cache: Mutex::new(HashMap::new()) }
    }

    pub fn ring(&self) -> &Arc<PolyRing<K>> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly<K>] {
        &self.gens
    }

    /// Sum of two ideals in the same ring.
    pub fn sum(&self, other: &IdealGens<K>) -> IdealGens<K> {
        assert!(self.ring.same(&other.ring), "ideals in different rings");
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        IdealGens::new(&self.ring, gens)
    }

    pub fn with(&self, extra: &[Poly<K>]) -> IdealGens<K> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        IdealGens::new(&self.ring, gens)
    }

    /// Moves the generators into `target` (matching variables by name).
    pub fn to_ring(&self, target: &Arc<PolyRing<K>>) -> Result<IdealGens<K>, super::PolyError> {
        let gens = self.gens.iter().map(|g| g.to_ring(target)).collect::<Result<_, _>>()?;
        Ok(IdealGens::new(target, gens))
    }

    /// Reduced Gröbner basis in the ring's own order.
    pub fn basis(&self) -> Arc<GroebnerBasis<K>> {
        self.basis_in(&self.ring.clone())
    }

    /// Reduced Gröbner basis in `ring`, which must carry the same variables
    /// (possibly permuted) and may use a different order.
    pub fn basis_in(&self, ring: &Arc<PolyRing<K>>) -> Arc<GroebnerBasis<K>> {
        self.try_basis_in(ring, &GbOptions::default()).expect("no deadline set")
    }

    pub fn try_basis_in(
        &self,
        ring: &Arc<PolyRing<K>>,
        opts: &GbOptions,
    ) -> Result<Arc<GroebnerBasis<K>>, GbError> {
        let key = (ring.vars().to_vec(), ring.order());
        if let Some(gb) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(gb.clone());
        }
        let gens: Vec<Poly<K>> = if ring.same(&self.ring) {
            self.gens.clone()
        } else {
            self.gens.iter().map(|g| g.to_ring(ring).expect("same variables")).collect()
        };
        let gb = Arc::new(groebner::buchberger_with(&gens, ring, opts)?);
        // the cached basis must reduce every generator to zero
        for g in &gens {
            assert!(gb.normal_form(g).is_zero(), "cached basis does not contain a generator");
        }
        self.cache.lock().expect("cache lock").insert(key, gb.clone());
        Ok(gb)
    }

    /// Number of cached bases (for tests of the cache).
    pub fn cached_orders(&self) -> usize {
        self.cache.lock().expect("cache lock").len()
    }
}
