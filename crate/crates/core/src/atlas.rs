//! The 11-variable relation ideal `I_P` and certificates for the structure of
//! its components and of the projective variety cut out by five quadrics.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::covers::{self, families, BuildingData, PARAM_NAMES};
use crate::exactnum::{ArithError, Field, Fp, Rational, Ring};
use crate::groebner::{self, GbError, GbOptions};
use crate::linalg;
use crate::poly::{parse_poly, IdealGens, Poly, PolyError, PolyRing};
use crate::qring::{CoeffRing, RingElem, RingError, RingHom};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasError {
    #[error("characteristic {0} is not supported here")]
    Characteristic(u64),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Skipped,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Verified
        } else {
            Status::Refuted
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub claim: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl CheckRecord {
    fn new(name: &str, claim: &str, status: Status, detail: impl Into<String>) -> Self {
        CheckRecord {
            name: name.to_string(),
            status,
            claim: claim.to_string(),
            detail: detail.into(),
            witness: None,
            runtime_ms: None,
        }
    }

    fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Ideal,
    Surface,
}

impl Suite {
    pub fn all() -> Vec<Suite> {
        vec![Suite::Core, Suite::Ideal, Suite::Surface]
    }
}

#[derive(Clone, Debug)]
pub struct AtlasOptions {
    pub seed: u64,
    pub timings: bool,
    /// Budget for the maximal-minor smoothness Gröbner run.
    pub smoothness_budget: Duration,
    /// Prime used by the surface suite.
    pub surface_prime: u64,
    /// Random tuples with non-zero trace of `β` tested over `𝔽₅`.
    pub trace_samples: usize,
    pub zero_divisor_pairs: usize,
    /// Random cone points for the Jacobian fallback when the prime is too
    /// large for exhaustive enumeration.
    pub fallback_points: usize,
}

impl Default for AtlasOptions {
    fn default() -> Self {
        AtlasOptions {
            seed: 0,
            timings: false,
            smoothness_budget: Duration::from_secs(600),
            surface_prime: 5,
            trace_samples: 100_000,
            zero_divisor_pairs: 500,
            fallback_points: 10_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AtlasReport {
    pub field: String,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
}

impl AtlasReport {
    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(out, "[{:>8}] {}: {}", c.status.as_str(), c.name, c.detail);
            if let Some(w) = &c.witness {
                let _ = write!(out, " (witness: {w})");
            }
            if let Some(ms) = c.runtime_ms {
                let _ = write!(out, " [{ms} ms]");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "summary: {} verified, {} refuted, {} skipped",
            self.count(Status::Verified),
            self.count(Status::Refuted),
            self.count(Status::Skipped)
        );
        out
    }
}

fn timed(timings: bool, f: impl FnOnce() -> Vec<CheckRecord>) -> Vec<CheckRecord> {
    let start = Instant::now();
    let mut out = f();
    if timings {
        let ms = start.elapsed().as_millis() as u64;
        for c in &mut out {
            c.runtime_ms = Some(ms);
        }
    }
    out
}

fn require_odd<K: Field>(coeff: &K) -> Result<(), AtlasError> {
    if coeff.from_i64_like(2).is_unit() {
        Ok(())
    } else {
        Err(AtlasError::Characteristic(coeff.characteristic()))
    }
}

fn parse_all<K: Field>(ring: &std::sync::Arc<PolyRing<K>>, texts: &[&str]) -> Vec<Poly<K>> {
    texts.iter().map(|t| parse_poly(t, ring).expect("built-in polynomial")).collect()
}

/// The ring `k[a, b, c, d, e, f, A, B, C, D, omega]` with grevlex.
pub fn ip_ring<K: Field>(coeff: &K) -> std::sync::Arc<PolyRing<K>> {
    PolyRing::grevlex(&PARAM_NAMES, coeff)
}

/// The 25 relation polynomials, in the order of [`covers::relation_residuals`].
pub fn build_ip<K: Field>(coeff: &K) -> Result<IdealGens<K>, AtlasError> {
    require_odd(coeff)?;
    let ring = ip_ring(coeff);
    let vars = Poly::vars_of(&ring);
    let params: [Poly<K>; 11] = std::array::from_fn(|i| vars[i].clone());
    let chi = BuildingData::from_params(&params);
    let gens = covers::relation_residuals(&chi).map_err(|_| AtlasError::Characteristic(coeff.characteristic()))?;
    Ok(IdealGens::new(&ring, gens))
}

pub const QUADRIC_VARS: [&str; 8] = ["a", "b", "c", "e", "A", "B", "C", "omega"];

pub const QUADRICS: [&str; 5] = [
    "2*a*A + b*B + c*C",
    "2*c*A - a*B + e*C",
    "2*omega*A - (a*c + b*e)",
    "omega*B - (c^2 - a*e)",
    "omega*C + a^2 + b*c",
];

/// The five quadrics in `k[a, b, c, e, A, B, C, omega]`.
pub fn quadric_ideal<K: Field>(coeff: &K) -> IdealGens<K> {
    let ring = PolyRing::grevlex(&QUADRIC_VARS, coeff);
    let gens = parse_all(&ring, &QUADRICS);
    IdealGens::new(&ring, gens)
}

/// `I_P + (a + d, c + f, A + D)`.
pub fn j1<K: Field>(ip: &IdealGens<K>) -> IdealGens<K> {
    ip.with(&parse_all(ip.ring(), &["a + d", "c + f", "A + D"]))
}

/// `(a, b, c, d, e, f, B, C, A − D, omega)`.
pub fn j2<K: Field>(ip: &IdealGens<K>) -> IdealGens<K> {
    IdealGens::new(ip.ring(), parse_all(ip.ring(), &["a", "b", "c", "d", "e", "f", "B", "C", "A - D", "omega"]))
}

fn irrelevant<K: Field>(ip: &IdealGens<K>) -> IdealGens<K> {
    IdealGens::new(ip.ring(), Poly::vars_of(ip.ring()))
}

/// Generator count, degrees, and vanishing on the `β ≠ 0` parametrization.
pub fn ip_checks<K: Field>(ip: &IdealGens<K>) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let n = ip.gens().len();
    out.push(CheckRecord::new(
        "ip.generator_count",
        "I_P has 25 generators",
        Status::from_bool(n == 25),
        format!("{n} generators"),
    ));
    let bad: Vec<usize> = (0..n).filter(|&i| !(ip.gens()[i].is_homogeneous() && ip.gens()[i].total_degree() == Some(2))).collect();
    let mut rec = CheckRecord::new(
        "ip.quadrics",
        "every generator is homogeneous of degree 2",
        Status::from_bool(bad.is_empty()),
        format!("{} of {n} are quadrics", n - bad.len()),
    );
    if let Some(&i) = bad.first() {
        rec = rec.with_witness(format!("g{} = {}", i + 1, ip.gens()[i]));
    }
    out.push(rec);

    let coeff = ip.ring().coeff_zero();
    let r3 = PolyRing::grevlex(&["omega", "A", "C"], &coeff);
    let v = Poly::vars_of(&r3);
    let fam = families::u_beta(&v[0], &v[1], &v[2]).params();
    let nonzero: Vec<usize> = (0..n).filter(|&i| !ip.gens()[i].substitute(&fam).is_zero()).collect();
    let mut rec = CheckRecord::new(
        "ip.u_beta_vanishes",
        "all generators vanish on the U_beta parametrization",
        Status::from_bool(nonzero.is_empty()),
        format!("{} of {n} vanish identically in k[omega, A, C]", n - nonzero.len()),
    );
    if let Some(&i) = nonzero.first() {
        rec = rec.with_witness(format!("g{}", i + 1));
    }
    out.push(rec);
    out
}

/// `(a+d)³, (c+f)³ ∈ I_P`, `a+d, c+f ∉ I_P`, and the status of the squares.
pub fn verify_nilpotents<K: Field>(ip: &IdealGens<K>) -> Vec<CheckRecord> {
    let gb = ip.basis();
    let mut out = Vec::new();
    for t in ["a + d", "c + f"] {
        let x = parse_poly(t, ip.ring()).unwrap();
        let key = t.replace(" + ", "+");
        let cube = gb.contains(&x.pow(3));
        let lin = gb.contains(&x);
        let sq = gb.contains(&x.pow(2));
        out.push(CheckRecord::new(
            &format!("nilpotent.({key})^3"),
            &format!("({key})^3 lies in I_P"),
            Status::from_bool(cube),
            format!("normal form of ({key})^3 is {}", gb.normal_form(&x.pow(3))),
        ));
        let mut rec = CheckRecord::new(
            &format!("nilpotent.({key})_not_in_ip"),
            &format!("{key} does not lie in I_P"),
            Status::from_bool(!lin),
            format!("normal form of {key} is {}", gb.normal_form(&x)),
        );
        if lin {
            rec = rec.with_witness(format!("{key} reduces to 0"));
        }
        out.push(rec);
        out.push(CheckRecord::new(
            &format!("nilpotent.({key})^2_recorded"),
            &format!("membership of ({key})^2 in I_P is recorded"),
            Status::Verified,
            format!("({key})^2 {} I_P; nilpotency index {}", if sq { "lies in" } else { "does not lie in" }, if sq { 2 } else { 3 }),
        ));
    }
    out
}

/// Substitution `d ↦ −a, f ↦ −c, D ↦ −A` out of `k[11 vars]/(a+d, c+f, A+D)`,
/// verified as a ring homomorphism, applied to `I_P`.
pub fn substitute_trace_zero<K: Field>(ip: &IdealGens<K>) -> Result<IdealGens<K>, AtlasError> {
    let coeff = ip.ring().coeff_zero();
    let source = CoeffRing::quotient(&PARAM_NAMES, &["a + d", "c + f", "A + D"], &coeff)?;
    let target = CoeffRing::polynomial(&QUADRIC_VARS, &coeff);
    let images: Vec<RingElem<K>> = ["a", "b", "c", "-a", "e", "-c", "A", "B", "C", "-A", "omega"]
        .iter()
        .map(|t| RingElem::parse(&target, t))
        .collect::<Result<_, _>>()
        .map_err(RingError::from)?;
    let hom = RingHom::between(&source, &target, images)?;
    let gens = ip
        .gens()
        .iter()
        .map(|g| hom.apply(&RingElem::from_poly(&source, g.to_ring(source.ambient()).unwrap())).map(|x| x.value().clone()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IdealGens::new(target.ambient(), gens))
}

fn names_of(ring: &PolyRing<impl Field>, idx: &[usize]) -> String {
    idx.iter().map(|&i| ring.vars()[i].as_str()).collect::<Vec<_>>().join(", ")
}

/// Checks (i)–(vi) on the two components, plus the saturation `I_P : (A+D)^∞ = J₂`.
pub fn verify_components<K: Field>(ip: &IdealGens<K>) -> Result<Vec<CheckRecord>, AtlasError> {
    let ring = ip.ring();
    let j1 = j1(ip);
    let j2 = j2(ip);
    let full = irrelevant(ip);
    let mut out = Vec::new();

    let gb2 = j2.basis();
    let bad: Vec<usize> = (0..ip.gens().len()).filter(|&i| !gb2.contains(&ip.gens()[i])).collect();
    let mut rec = CheckRecord::new(
        "components.(i)_ip_in_j2",
        "I_P is contained in J2",
        Status::from_bool(bad.is_empty()),
        format!("{} of 25 generators reduce to 0 modulo J2", 25 - bad.len()),
    );
    if let Some(&i) = bad.first() {
        rec = rec.with_witness(format!("g{}", i + 1));
    }
    out.push(rec);

    let linear = gb2.polys().iter().all(|g| g.total_degree() == Some(1));
    let free = groebner::max_independent_set(&gb2).unwrap_or_default();
    out.push(CheckRecord::new(
        "components.(ii)_j2_quotient",
        "k[vars]/J2 is a polynomial ring in one variable",
        Status::from_bool(linear && gb2.polys().len() == 10 && free.len() == 1),
        format!("reduced basis has {} linear forms; free variable {}", gb2.polys().len(), names_of(ring, &free)),
    ));

    let sum_ok = groebner::ideal_equal(&j1.sum(&j2), &full);
    out.push(CheckRecord::new(
        "components.(iii)_sum",
        "J1 + J2 is the ideal of all variables",
        Status::from_bool(sum_ok),
        format!("J1 + J2 {} (a, ..., omega)", if sum_ok { "=" } else { "!=" }),
    ));

    let trace = ip.with(&parse_all(ring, &["a + d", "c + f"]));
    let inter = groebner::ideal_intersection(&j1, &j2);
    let inter_ok = groebner::ideal_equal(&inter, &trace);
    out.push(CheckRecord::new(
        "components.(iv)_intersection",
        "J1 ∩ J2 = I_P + (a+d, c+f)",
        Status::from_bool(inter_ok),
        format!("reduced bases of size {} and {}", inter.basis().polys().len(), trace.basis().polys().len()),
    ));

    let image = substitute_trace_zero(ip)?;
    let quad = quadric_ideal(&ring.coeff_zero());
    let image_ok = groebner::ideal_equal(&image, &quad);
    out.push(CheckRecord::new(
        "components.(v)_substitution",
        "J1 under d -> -a, f -> -c, D -> -A equals the five-quadric ideal",
        Status::from_bool(image_ok),
        format!("image {} the five-quadric ideal in k[{}]", if image_ok { "equals" } else { "differs from" }, QUADRIC_VARS.join(", ")),
    ));

    // alternative reading of the first component
    let alt_gens = ["a + c", "d + f", "A + D"];
    let j1_alt = ip.with(&parse_all(ring, &alt_gens));
    let alt_sum = groebner::ideal_equal(&j1_alt.sum(&j2), &full);
    let alt_inter = groebner::ideal_equal(
        &groebner::ideal_intersection(&j1_alt, &j2),
        &ip.with(&parse_all(ring, &["a + c", "d + f"])),
    );
    let quad_pulled: Vec<Poly<K>> = quad.gens().iter().map(|g| g.to_ring(ring).unwrap()).collect();
    let alt_match = groebner::ideal_equal(&j1_alt, &IdealGens::new(ring, quad_pulled.clone()).with(&parse_all(ring, &alt_gens)));
    let main_match = groebner::ideal_equal(&j1, &IdealGens::new(ring, quad_pulled).with(&parse_all(ring, &["a + d", "c + f", "A + D"])));
    let ac = parse_poly("a + c", ring).unwrap();
    let ac_radical = groebner::radical_membership(&ac, ip);
    let fails: Vec<&str> = [("(iii)", alt_sum), ("(iv)", alt_inter), ("(v)", alt_match)]
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| *n)
        .collect();
    let main_ok = sum_ok && inter_ok && image_ok && main_match;
    let mut rec = CheckRecord::new(
        "components.(vi)_alternative_reading",
        "Q1 = (a+d, c+f, A+D) passes (iii)-(v) while (a+c, d+f, A+D) does not",
        Status::from_bool(main_ok && !fails.is_empty()),
        format!(
            "(a+c, d+f, A+D): (iii) {}, (iv) {}, (v) {}; a+c {} in the radical of I_P",
            if alt_sum { "passes" } else { "fails" },
            if alt_inter { "passes" } else { "fails" },
            if alt_match { "passes" } else { "fails" },
            if ac_radical { "lies" } else { "does not lie" },
        ),
    );
    if !fails.is_empty() {
        rec = rec.with_witness(format!("alternative reading fails {}", fails.join(", ")));
    }
    out.push(rec);

    let ad = parse_poly("A + D", ring).unwrap();
    let sat = groebner::saturation(ip, &ad);
    let sat_ok = groebner::ideal_equal(&sat, &j2);
    out.push(CheckRecord::new(
        "components.saturation",
        "I_P : (A+D)^∞ = J2",
        Status::from_bool(sat_ok),
        format!("saturation {} J2", if sat_ok { "equals" } else { "differs from" }),
    ));
    Ok(out)
}

fn random_small_poly<K: Field>(ring: &std::sync::Arc<PolyRing<K>>, rng: &mut ChaCha8Rng) -> Poly<K> {
    let vars = Poly::vars_of(ring);
    let mut p = Poly::zero(ring);
    for _ in 0..4 {
        let c = rng.gen_range(-3i64..=3);
        let i = rng.gen_range(0..vars.len());
        let mut t = Poly::from_i64(ring, c).mul(&vars[i]);
        if rng.gen_bool(0.5) {
            t = t.mul(&vars[rng.gen_range(0..vars.len())]);
        }
        p = p.add(&t);
    }
    p
}

/// Looks for zero-divisors among random products in `k[8 vars]/I`. Finding
/// none is supporting evidence for the domain property, not a proof.
pub fn zero_divisor_sampling<K: Field>(coeff: &K, pairs: usize, seed: u64) -> CheckRecord {
    let quad = quadric_ideal(coeff);
    let gb = quad.basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    let mut witness = None;
    for _ in 0..pairs {
        let f = random_small_poly(quad.ring(), &mut rng);
        let g = random_small_poly(quad.ring(), &mut rng);
        if gb.normal_form(&f).is_zero() || gb.normal_form(&g).is_zero() {
            continue;
        }
        tested += 1;
        if gb.normal_form(&f.mul(&g)).is_zero() {
            witness = Some(format!("({f}) * ({g})"));
            break;
        }
    }
    let rec = CheckRecord::new(
        "ideal.no_zero_divisor_found",
        "no zero-divisor among sampled products in k[a,b,c,e,A,B,C,omega]/I (non-conclusive; primality is not claimed)",
        Status::from_bool(witness.is_none()),
        format!("{tested} products of non-zero classes, seed {seed}; non-conclusive evidence"),
    );
    match witness {
        Some(w) => rec.with_witness(w),
        None => rec,
    }
}

/// Outcome of the exhaustive scan of all `3¹¹` parameter tuples over `𝔽₃`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct F3Scan {
    pub tuples: u64,
    pub solutions: u64,
    pub commutative_associative: u64,
    /// Tuples where "relations hold" and "A_χ commutative and associative" disagree.
    pub mismatches: u64,
    pub first_mismatch: Option<[u8; 11]>,
    pub trace_violations: u64,
    pub first_trace_violation: Option<[u8; 11]>,
    /// Non-zero solutions not in exactly one of `Z_G`, `Z_2`.
    pub decomposition_violations: u64,
    pub nonzero_in_z_g: u64,
    pub nonzero_in_z_2: u64,
}

impl F3Scan {
    fn merge(mut self, o: F3Scan) -> F3Scan {
        self.tuples += o.tuples;
        self.solutions += o.solutions;
        self.commutative_associative += o.commutative_associative;
        self.mismatches += o.mismatches;
        self.first_mismatch = self.first_mismatch.or(o.first_mismatch);
        self.trace_violations += o.trace_violations;
        self.first_trace_violation = self.first_trace_violation.or(o.first_trace_violation);
        self.decomposition_violations += o.decomposition_violations;
        self.nonzero_in_z_g += o.nonzero_in_z_g;
        self.nonzero_in_z_2 += o.nonzero_in_z_2;
        self
    }

    pub fn clean(&self) -> bool {
        self.mismatches == 0 && self.trace_violations == 0 && self.decomposition_violations == 0
    }
}

fn digits(mut n: u32, p: u32) -> [u8; 11] {
    let mut d = [0u8; 11];
    for x in d.iter_mut() {
        *x = (n % p) as u8;
        n /= p;
    }
    d
}

fn scan_one(n: u32) -> F3Scan {
    let d = digits(n, 3);
    let params: [Fp; 11] = std::array::from_fn(|i| Fp::new(d[i] as i64, 3).unwrap());
    let chi = BuildingData::from_params(&params);
    let mut s = F3Scan { tuples: 1, ..Default::default() };
    let sol = covers::residuals_unchecked(&chi).iter().all(|r| r.is_zero());
    let alg = covers::cover_algebra(&chi).expect("2 is invertible mod 3").algebra;
    let ca = alg.check_commutative() && alg.check_associative();
    if sol != ca {
        s.mismatches = 1;
        s.first_mismatch = Some(d);
    }
    if ca {
        s.commutative_associative = 1;
    }
    if sol {
        s.solutions = 1;
        let [tb0, tb1] = chi.trace_beta();
        if !(tb0.is_zero() && tb1.is_zero()) {
            s.trace_violations = 1;
            s.first_trace_violation = Some(d);
        }
        let rep = covers::classify(&chi).expect("odd characteristic");
        if !rep.is_zero_point {
            if rep.in_z_g {
                s.nonzero_in_z_g = 1;
            }
            if rep.in_z_2 {
                s.nonzero_in_z_2 = 1;
            }
            if rep.in_z_g == rep.in_z_2 {
                s.decomposition_violations = 1;
            }
        }
    }
    s
}

/// Exhaustive scan over `𝔽₃¹¹`: relations versus commutativity and
/// associativity of `A_χ`, trace of `β` on solutions, and the component split.
pub fn scan_f3() -> F3Scan {
    (0..3u32.pow(11))
        .into_par_iter()
        .fold(F3Scan::default, |acc, n| acc.merge(scan_one(n)))
        .reduce(F3Scan::default, F3Scan::merge)
}

/// Random `𝔽₅` tuples with non-zero trace of `β`; each must violate a relation.
pub fn sample_trace_f5(samples: usize, seed: u64) -> (usize, Option<[u8; 11]>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexample = None;
    for _ in 0..samples {
        let mut d: [u8; 11] = std::array::from_fn(|_| rng.gen_range(0..5u8));
        if (d[0] + d[3]) % 5 == 0 && (d[2] + d[5]) % 5 == 0 {
            d[3] = (d[3] + 1) % 5;
        }
        let params: [Fp; 11] = std::array::from_fn(|i| Fp::new(d[i] as i64, 5).unwrap());
        let chi = BuildingData::from_params(&params);
        if covers::residuals_unchecked(&chi).iter().all(|r| r.is_zero()) {
            counterexample = Some(d);
            break;
        }
    }
    (samples, counterexample)
}

/// The reduced locus is the trace-zero locus: cube memberships one way,
/// pointwise over `𝔽₃` (exhaustive) and `𝔽₅` (sampled) the other way.
pub fn verify_trace_locus<K: Field>(ip: &IdealGens<K>, opts: &AtlasOptions) -> Vec<CheckRecord> {
    let gb = ip.basis();
    let mut out = Vec::new();
    let cubes: Vec<Option<u32>> = ["a + d", "c + f"]
        .iter()
        .map(|t| groebner::nilpotency_index(&parse_poly(t, ip.ring()).unwrap(), &gb, 3))
        .collect();
    out.push(CheckRecord::new(
        "trace.radical_contains_trace",
        "a+d and c+f lie in the radical of I_P",
        Status::from_bool(cubes.iter().all(|c| c.is_some())),
        format!("nilpotency indices {:?}", cubes),
    ));
    let scan = scan_f3();
    let mut rec = CheckRecord::new(
        "trace.f3_exhaustive",
        "every F3 solution has a+d = c+f = 0",
        Status::from_bool(scan.trace_violations == 0),
        format!("{} tuples, {} solutions, {} with non-zero trace", scan.tuples, scan.solutions, scan.trace_violations),
    );
    if let Some(d) = scan.first_trace_violation {
        rec = rec.with_witness(format!("{d:?}"));
    }
    out.push(rec);
    let (n, bad) = sample_trace_f5(opts.trace_samples, opts.seed);
    let mut rec = CheckRecord::new(
        "trace.f5_sampled",
        "random F5 tuples with non-zero trace of beta violate the relations",
        Status::from_bool(bad.is_none()),
        format!("{n} samples, seed {}", opts.seed),
    );
    if let Some(d) = bad {
        rec = rec.with_witness(format!("{d:?}"));
    }
    out.push(rec);
    out
}

/// The trivial-torsor datum satisfies the relations with `ω = −1/2` and not
/// with `ω = +1/2`.
pub fn omega_sign_finding<K: Field>(coeff: &K) -> Result<CheckRecord, AtlasError> {
    require_odd(coeff)?;
    let half = coeff.one_like().div_int(2)?;
    let failing = |w: K| -> Vec<usize> {
        let chi = families::trivial_torsor_with_omega(coeff, w);
        let res = covers::residuals_unchecked(&chi);
        (0..res.len()).filter(|&i| !res[i].is_zero()).collect()
    };
    let minus = failing(half.neg());
    let plus = failing(half.clone());
    let rec = CheckRecord::new(
        "finding.trivial_torsor_omega",
        "the trivial-torsor datum needs omega = -1/2; omega = +1/2 violates the relations",
        Status::from_bool(minus.is_empty() && !plus.is_empty()),
        format!(
            "omega = -1/2: {} relations fail; omega = +1/2: relations {} fail",
            minus.len(),
            plus.iter().map(|i| format!("g{}", i + 1)).collect::<Vec<_>>().join(", ")
        ),
    );
    Ok(if plus.is_empty() { rec } else { rec.with_witness(format!("g{} at omega = +1/2", plus[0] + 1)) })
}

fn jacobian<K: Field>(gens: &[Poly<K>]) -> Vec<Vec<Poly<K>>> {
    let n = gens.first().map(|g| g.ring().nvars()).unwrap_or(0);
    gens.iter().map(|g| (0..n).map(|i| g.derivative(i)).collect()).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n)).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
}

/// All non-zero `k × k` minors of a polynomial matrix.
pub fn minors<K: Field>(m: &[Vec<Poly<K>>], k: usize) -> Vec<Poly<K>> {
    let rows = subsets(m.len(), k);
    let cols = subsets(m.first().map(|r| r.len()).unwrap_or(0), k);
    let mut out = Vec::new();
    for r in &rows {
        for c in &cols {
            let sub: Vec<Vec<Poly<K>>> = r.iter().map(|&i| c.iter().map(|&j| m[i][j].clone()).collect()).collect();
            let d = linalg::determinant(&sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

#[derive(Debug)]
enum MinorCertificate {
    /// `x^k ∈ I + minors` for every variable; the exponents.
    Nilpotent(Vec<u32>),
    Incomplete(Vec<usize>),
    Timeout(Duration),
}

fn minor_certificate(quad: &IdealGens<Fp>, k: usize, budget: Duration) -> MinorCertificate {
    let mut gens = quad.gens().to_vec();
    gens.extend(minors(&jacobian(quad.gens()), k));
    let ring = quad.ring();
    match groebner::buchberger_with(&gens, ring, &GbOptions::with_budget(budget)) {
        Err(GbError::Timeout(d)) => MinorCertificate::Timeout(d),
        Err(GbError::UnitIdeal) => MinorCertificate::Nilpotent(vec![0; ring.nvars()]),
        Ok(gb) => {
            let idx: Vec<Option<u32>> =
                (0..ring.nvars()).map(|i| groebner::nilpotency_index(&Poly::var_at(ring, i), &gb, 4 * k as u32 + 4)).collect();
            if idx.iter().all(|x| x.is_some()) {
                MinorCertificate::Nilpotent(idx.into_iter().map(|x| x.unwrap()).collect())
            } else {
                MinorCertificate::Incomplete((0..ring.nvars()).filter(|&i| idx[i].is_none()).collect())
            }
        }
    }
}

fn eval_fp(p: &Poly<Fp>, pt: &[u32], modulus: u64) -> Fp {
    let vals: Vec<Fp> = pt.iter().map(|&v| Fp::new(v as i64, modulus).unwrap()).collect();
    p.eval(&vals)
}

/// Non-zero `𝔽_p`-points of the cone `V(I)`: all of them when `p⁸` is small,
/// otherwise `samples` random points of the chart `omega ≠ 0`.
pub fn cone_points(p: u64, samples: usize, seed: u64) -> (Vec<[u32; 8]>, bool) {
    let quad = quadric_ideal(&Fp::new(0, p).unwrap());
    if p.pow(8) <= 6_000_000 {
        let pts: Vec<[u32; 8]> = (1..p.pow(8) as u32)
            .into_par_iter()
            .filter_map(|n| {
                let mut x = n;
                let pt: [u32; 8] = std::array::from_fn(|_| {
                    let v = x % p as u32;
                    x /= p as u32;
                    v
                });
                quad.gens().iter().all(|g| eval_fp(g, &pt, p).is_zero()).then_some(pt)
            })
            .collect();
        return (pts, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = |v: u64| Fp::new(v as i64, p).unwrap();
    let mut pts = Vec::with_capacity(samples);
    while pts.len() < samples {
        let [a, b, c, e] = std::array::from_fn(|_| f(rng.gen_range(0..p)));
        let w = f(rng.gen_range(1..p));
        let wi = w.inv().expect("omega is non-zero");
        let big_a = a.mul(&c).add(&b.mul(&e)).mul(&wi).div_int(2).unwrap();
        let big_b = c.mul(&c).sub(&a.mul(&e)).mul(&wi);
        let big_c = a.mul(&a).add(&b.mul(&c)).neg().mul(&wi);
        pts.push([a, b, c, e, big_a, big_b, big_c, w].map(|x| x.value()));
    }
    (pts, false)
}

fn jacobian_rank_at(jac: &[Vec<Poly<Fp>>], pt: &[u32], p: u64) -> usize {
    let m: Vec<Vec<Fp>> = jac.iter().map(|row| row.iter().map(|q| eval_fp(q, pt, p)).collect()).collect();
    linalg::rank(&m)
}

fn fmt_point(pt: &[u32]) -> String {
    let parts: Vec<String> = QUADRIC_VARS.iter().zip(pt).map(|(n, v)| format!("{n}={v}")).collect();
    parts.join(", ")
}

/// Certificates for the variety `Proj k[a,b,c,e,A,B,C,omega]/I` over `𝔽_p`.
pub fn verify_surface(p: u64, opts: &AtlasOptions) -> Result<Vec<CheckRecord>, AtlasError> {
    if p == 2 || p == 3 {
        return Err(AtlasError::Characteristic(p));
    }
    let k = Fp::new(0, p)?;
    let quad = quadric_ideal(&k);
    let ring = quad.ring().clone();
    let gb = quad.basis();
    let mut out = Vec::new();

    let linear: Vec<&Poly<Fp>> = gb.polys().iter().filter(|g| g.total_degree() == Some(1)).collect();
    let mut rec = CheckRecord::new(
        "surface.(i)_nondegenerate",
        "the reduced basis of I contains no linear form",
        Status::from_bool(linear.is_empty()),
        format!("reduced basis over GF({p}): {} elements, degrees {:?}", gb.polys().len(), gb.polys().iter().map(|g| g.total_degree().unwrap_or(0)).collect::<Vec<_>>()),
    );
    if let Some(l) = linear.first() {
        rec = rec.with_witness(l.to_string());
    }
    out.push(rec);

    let free = groebner::max_independent_set(&gb).expect("I is proper");
    let dim = free.len();
    let (points, exhaustive) = cone_points(p, opts.fallback_points, opts.seed);
    let mut rec = CheckRecord::new(
        "surface.(ii)_cone_dimension",
        "the cone V(I) has Krull dimension 3 (a surface in P^7)",
        Status::from_bool(dim == 3),
        format!(
            "Krull dimension {dim} (projective dimension {}); {} GF({p})-points on the cone{}",
            dim.saturating_sub(1),
            points.len() + 1,
            if exhaustive { " by exhaustive count" } else { "" }
        ),
    );
    if dim != 3 {
        rec = rec.with_witness(format!("{{{}}} is independent modulo the leading terms", names_of(&ring, &free)));
    }
    out.push(rec);

    let jac = jacobian(quad.gens());
    let ranks: Vec<usize> = points.par_iter().map(|pt| jacobian_rank_at(&jac, pt, p)).collect();
    let mut hist = vec![0usize; 6];
    for &r in &ranks {
        hist[r] += 1;
    }
    let codim = ring.nvars() - dim;
    let hist_text = hist
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(r, n)| format!("rank {r}: {n}"))
        .collect::<Vec<_>>()
        .join(", ");
    let first_below = |target: usize| ranks.iter().position(|&r| r < target).map(|i| points[i]);
    let scope = if exhaustive { "all".to_string() } else { format!("{} sampled", points.len()) };

    let cert = minor_certificate(&quad, 5, opts.smoothness_budget);
    let rec = match cert {
        MinorCertificate::Nilpotent(e) => CheckRecord::new(
            "surface.(iii)_smooth_5x5_minors",
            "every variable lies in the radical of I + (5x5 minors of the Jacobian)",
            Status::Verified,
            format!("powers {:?} of the variables lie in the ideal", e),
        ),
        MinorCertificate::Incomplete(vars) => {
            let r = CheckRecord::new(
                "surface.(iii)_smooth_5x5_minors",
                "every variable lies in the radical of I + (5x5 minors of the Jacobian)",
                Status::Refuted,
                format!("basis computed in budget; no power of {} up to the bound lies in the ideal", names_of(&ring, &vars)),
            );
            match first_below(5) {
                Some(pt) => r.with_witness(format!("non-zero point with all 5x5 minors zero: {}", fmt_point(&pt))),
                None => r,
            }
        }
        MinorCertificate::Timeout(d) => CheckRecord::new(
            "surface.(iii)_smooth_5x5_minors",
            "every variable lies in the radical of I + (5x5 minors of the Jacobian)",
            Status::Skipped,
            format!("Groebner basis exceeded its budget after {} s; see the rank-5 fallback", d.as_secs()),
        ),
    };
    out.push(rec);

    let mut rec = CheckRecord::new(
        "surface.fallback_rank5",
        "the Jacobian has rank 5 at every sampled non-zero cone point",
        Status::from_bool(hist[5] == ranks.len() && !ranks.is_empty()),
        format!("{scope} non-zero GF({p})-points of the cone: {hist_text}"),
    );
    if let Some(pt) = first_below(5) {
        rec = rec.with_witness(fmt_point(&pt));
    }
    out.push(rec);

    let cert = minor_certificate(&quad, codim, opts.smoothness_budget);
    let rank_ok = ranks.iter().all(|&r| r == codim);
    let rec = match cert {
        MinorCertificate::Nilpotent(e) => CheckRecord::new(
            "surface.smooth_in_true_codimension",
            "with c = 8 - dim the codimension, every variable lies in the radical of I + (c x c minors)",
            Status::from_bool(rank_ok),
            format!("c = {codim}; powers {:?} of the variables lie in the ideal; Jacobian rank {codim} at {scope} non-zero points", e),
        ),
        MinorCertificate::Incomplete(vars) => CheckRecord::new(
            "surface.smooth_in_true_codimension",
            "with c = 8 - dim the codimension, every variable lies in the radical of I + (c x c minors)",
            Status::Refuted,
            format!("c = {codim}; no power of {} found in the ideal", names_of(&ring, &vars)),
        ),
        MinorCertificate::Timeout(d) => CheckRecord::new(
            "surface.smooth_in_true_codimension",
            "with c = 8 - dim the codimension, every variable lies in the radical of I + (c x c minors)",
            Status::Skipped,
            format!("exceeded its budget after {} s", d.as_secs()),
        ),
    };
    out.push(rec);

    let ip = build_ip(&k)?;
    let zero = vec![k.zero_like(); 11];
    let nonvanishing = jacobian(ip.gens()).iter().flatten().any(|d| !d.eval(&zero).is_zero());
    out.push(CheckRecord::new(
        "surface.(iv)_origin_jacobian",
        "all partial derivatives of the generators of I_P vanish at the origin",
        Status::from_bool(!nonvanishing),
        "every generator is a quadratic form".to_string(),
    ));
    Ok(out)
}

/// Runs the requested suites. Heavy ideal checks run over `coeff`; the surface
/// suite runs over `GF(opts.surface_prime)` unless `coeff` is itself a prime field.
pub fn run_suites<K: Field>(coeff: &K, suites: &[Suite], opts: &AtlasOptions) -> Result<AtlasReport, AtlasError> {
    require_odd(coeff)?;
    let ip = build_ip(coeff)?;
    let t = opts.timings;
    let char_p = coeff.characteristic();
    let surface_p = if char_p != 0 { char_p } else { opts.surface_prime };
    let jobs: Vec<Suite> = Suite::all().into_iter().filter(|s| suites.contains(s)).collect();
    let results: Vec<Result<Vec<CheckRecord>, AtlasError>> = jobs
        .par_iter()
        .map(|suite| -> Result<Vec<CheckRecord>, AtlasError> {
            let mut out = Vec::new();
            match suite {
                Suite::Core => {
                    out.extend(timed(t, || ip_checks(&ip)));
                    out.extend(timed(t, || verify_nilpotents(&ip)));
                    out.extend(timed(t, || verify_trace_locus(&ip, opts)));
                    let rec = omega_sign_finding(coeff)?;
                    out.extend(timed(t, || vec![rec]));
                }
                Suite::Ideal => {
                    if !suites.contains(&Suite::Core) {
                        out.extend(timed(t, || verify_nilpotents(&ip)));
                    }
                    let start = Instant::now();
                    let mut recs = verify_components(&ip)?;
                    if t {
                        let ms = start.elapsed().as_millis() as u64;
                        recs.iter_mut().for_each(|c| c.runtime_ms = Some(ms));
                    }
                    out.extend(recs);
                    out.extend(timed(t, || vec![zero_divisor_sampling(coeff, opts.zero_divisor_pairs, opts.seed)]));
                }
                Suite::Surface => {
                    let start = Instant::now();
                    let mut recs = verify_surface(surface_p, opts)?;
                    if t {
                        let ms = start.elapsed().as_millis() as u64;
                        recs.iter_mut().for_each(|c| c.runtime_ms = Some(ms));
                    }
                    out.extend(recs);
                }
            }
            Ok(out)
        })
        .collect();
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?);
    }
    Ok(AtlasReport { field: describe_field(coeff), suites: jobs, seed: opts.seed, checks })
}

pub fn describe_field<K: Field>(coeff: &K) -> String {
    match coeff.characteristic() {
        0 => "QQ".to_string(),
        p => format!("GF({p})"),
    }
}

/// `I_P` over `ℚ`, for convenience.
pub fn build_ip_rational() -> IdealGens<Rational> {
    build_ip(&Rational::zero()).expect("characteristic 0")
}
