#![allow(dead_code)]

use std::sync::Arc;

use s3cover::covers::{self, BuildingData};
use s3cover::linalg::Matrix;
use s3cover::{Field, Fp, Poly, PolyRing, Rational, Ring};

/// Textbook Buchberger: normal pair selection, only the coprime-leading-term
/// criterion, then minimalization and interreduction.
pub fn naive_reduced_gb<K: Field>(gens: &[Poly<K>], ring: &Arc<PolyRing<K>>) -> Vec<Poly<K>> {
    let mut g: Vec<Poly<K>> = gens.iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while !pairs.is_empty() {
        let lcm_deg = |&(i, j): &(usize, usize)| g[i].leading_monomial().unwrap().lcm(g[j].leading_monomial().unwrap()).degree();
        let k = (0..pairs.len()).min_by_key(|&k| (lcm_deg(&pairs[k]), pairs[k])).unwrap();
        let (i, j) = pairs.swap_remove(k);
        let (li, lj) = (g[i].leading_monomial().unwrap(), g[j].leading_monomial().unwrap());
        if li.lcm(lj).degree() == li.degree() + lj.degree() {
            continue;
        }
        let s = s_poly(&g[i], &g[j]);
        let r = divide(&s, &g);
        if !r.is_zero() {
            g.push(r.monic());
            let n = g.len() - 1;
            pairs.extend((0..n).map(|k| (k, n)));
        }
    }
    // minimalize then reduce
    let mut minimal: Vec<Poly<K>> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let lm = p.leading_monomial().unwrap();
        let redundant = g.iter().enumerate().any(|(l, q)| {
            let lq = q.leading_monomial().unwrap();
            l != k && lq.divides(lm) && (lq != lm || l < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out: Vec<Poly<K>> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Poly<K>> = minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, p)| p.clone()).collect();
            divide(&minimal[k], &others).monic()
        })
        .collect();
    out.sort_by(|a, b| ring.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    out
}

fn s_poly<K: Field>(f: &Poly<K>, g: &Poly<K>) -> Poly<K> {
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lf.lcm(lg);
    let a = f.mul_term(&l.div(lf), &f.leading_coeff().unwrap().inv().unwrap());
    let b = g.mul_term(&l.div(lg), &g.leading_coeff().unwrap().inv().unwrap());
    a.sub(&b)
}

/// Full multivariate division remainder.
pub fn divide<K: Field>(f: &Poly<K>, g: &[Poly<K>]) -> Poly<K> {
    let mut p = f.clone();
    let mut rem = Poly::zero(f.ring());
    while !p.is_zero() {
        let lm = p.leading_monomial().unwrap().clone();
        let lc = p.leading_coeff().unwrap().clone();
        match g.iter().find(|q| q.leading_monomial().unwrap().divides(&lm)) {
            Some(q) => {
                let c = lc.div(q.leading_coeff().unwrap()).unwrap();
                p = p.sub(&q.mul_term(&lm.div(q.leading_monomial().unwrap()), &c));
            }
            None => {
                let t = Poly::term(f.ring(), lm, lc);
                rem = rem.add(&t);
                p = p.sub(&t);
            }
        }
    }
    rem
}

/// All points of `𝔽_p^n` (as value vectors), for small `p^n`.
pub fn all_points(p: u64, n: usize) -> Vec<Vec<Fp>> {
    let total = p.pow(n as u32);
    (0..total)
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let v = k % p;
                    k /= p;
                    Fp::new(v as i64, p).unwrap()
                })
                .collect()
        })
        .collect()
}

/// The rank-36 algebra `A_χ ⊗ R[x, z]/(x³ − 1, z² + 3)`: basis index
/// `6·(3·k + j) + i` for `e_i ⊗ x^j z^k`.
pub struct Expansion<R> {
    pub mult: Vec<Vec<Vec<R>>>,
    pub zero: R,
}

fn idx(i: usize, j: usize, k: usize) -> usize {
    6 * (3 * k + j) + i
}

impl<R: Ring> Expansion<R> {
    pub fn new(chi: &BuildingData<R>) -> Self {
        let a = covers::cover_algebra(chi).unwrap().algebra;
        let zero = chi.like().zero_like();
        let mut mult = vec![vec![vec![zero.clone(); 36]; 36]; 36];
        for i1 in 0..6 {
            for i2 in 0..6 {
                let prod = a.product_of_basis(i1, i2).to_vec();
                for j1 in 0..3 {
                    for j2 in 0..3 {
                        for k1 in 0..2 {
                            for k2 in 0..2 {
                                let j = (j1 + j2) % 3;
                                // z² = −3
                                let (k, scale) = if k1 + k2 == 2 { (0, -3) } else { (k1 + k2, 1) };
                                let out = &mut mult[idx(i1, j1, k1)][idx(i2, j2, k2)];
                                for (i, c) in prod.iter().enumerate() {
                                    out[idx(i, j, k)] = out[idx(i, j, k)].add(&c.mul(&c.from_i64_like(scale)));
                                }
                            }
                        }
                    }
                }
            }
        }
        Expansion { mult, zero }
    }

    pub fn product(&self, u: &[R], v: &[R]) -> Vec<R> {
        let mut out = vec![self.zero.clone(); 36];
        for (i, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in v.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = x.mul(y);
                for (k, m) in self.mult[i][j].iter().enumerate() {
                    if !m.is_zero() {
                        out[k] = out[k].add(&c.mul(m));
                    }
                }
            }
        }
        out
    }

    /// Embedded basis `(1, ℓz, p(y), p(z), q(y), q(z))` with
    /// `p(u) = u₁x + u₂x²`, `q(u) = u₁zx − u₂zx²`.
    pub fn c_basis(&self) -> Vec<Vec<R>> {
        let one = self.zero.one_like();
        let unit = |pairs: &[(usize, R)]| {
            let mut v = vec![self.zero.clone(); 36];
            for (k, c) in pairs {
                v[*k] = c.clone();
            }
            v
        };
        let f = covers::f_index;
        let mut out = vec![unit(&[(idx(0, 0, 0), one.clone())]), unit(&[(idx(1, 0, 1), one.clone())])];
        for u in 0..2 {
            out.push(unit(&[(idx(f(u, 1), 1, 0), one.clone()), (idx(f(u, 2), 2, 0), one.clone())]));
        }
        for u in 0..2 {
            out.push(unit(&[(idx(f(u, 1), 1, 1), one.clone()), (idx(f(u, 2), 2, 1), one.neg())]));
        }
        out
    }

    /// Coordinates in the embedded basis; panics when `v` is outside its span.
    pub fn coords(&self, v: &[R]) -> Vec<R> {
        let f = covers::f_index;
        let c = vec![
            v[idx(0, 0, 0)].clone(),
            v[idx(1, 0, 1)].clone(),
            v[idx(f(0, 1), 1, 0)].clone(),
            v[idx(f(1, 1), 1, 0)].clone(),
            v[idx(f(0, 1), 1, 1)].clone(),
            v[idx(f(1, 1), 1, 1)].clone(),
        ];
        let basis = self.c_basis();
        let mut back = vec![self.zero.clone(); 36];
        for (b, x) in basis.iter().zip(&c) {
            for k in 0..36 {
                back[k] = back[k].add(&b[k].mul(x));
            }
        }
        assert_eq!(back, v, "vector leaves the rank-6 subalgebra");
        c
    }

    /// Structure constants of the subalgebra, `out[i][j]` = coordinates of `c_i c_j`.
    pub fn c_mult(&self) -> Vec<Vec<Vec<R>>> {
        let b = self.c_basis();
        (0..6).map(|i| (0..6).map(|j| self.coords(&self.product(&b[i], &b[j]))).collect()).collect()
    }

    /// Matrix (columns are images) on the embedded basis of the automorphism
    /// `r: x ↦ x(z − 1)/2` or `s: z ↦ −z`.
    pub fn action_matrix(&self, which: Action) -> Matrix<R> {
        let half = self.zero.one_like().div_int(2).unwrap();
        // image of x^j z^k as a vector over (x^j' z^k'), index 3k + j
        let xz_image = |j: usize, k: usize| -> Vec<R> {
            let mut v = vec![self.zero.clone(); 6];
            match which {
                Action::R => {
                    // (x(z − 1)/2)^j z^k
                    let mut poly = vec![self.zero.clone(); 6];
                    poly[3 * k] = self.zero.one_like();
                    let mut step = vec![self.zero.clone(); 6];
                    step[1 + 3] = half.clone();
                    step[1] = half.neg();
                    for _ in 0..j {
                        poly = mul_xz(&poly, &step, &self.zero);
                    }
                    v = poly;
                }
                Action::S => {
                    v[3 * k + j] = if k == 1 { self.zero.one_like().neg() } else { self.zero.one_like() };
                }
            }
            v
        };
        let basis = self.c_basis();
        let mut cols = Vec::new();
        for b in &basis {
            let mut img = vec![self.zero.clone(); 36];
            for i in 0..6 {
                for j in 0..3 {
                    for k in 0..2 {
                        let c = &b[idx(i, j, k)];
                        if c.is_zero() {
                            continue;
                        }
                        let im = xz_image(j, k);
                        for j2 in 0..3 {
                            for k2 in 0..2 {
                                let t = &im[3 * k2 + j2];
                                img[idx(i, j2, k2)] = img[idx(i, j2, k2)].add(&c.mul(t));
                            }
                        }
                    }
                }
            }
            cols.push(self.coords(&img));
        }
        (0..6).map(|r| (0..6).map(|c| cols[c][r].clone()).collect()).collect()
    }
}

#[derive(Clone, Copy)]
pub enum Action {
    R,
    S,
}

/// Product in `R[x, z]/(x³ − 1, z² + 3)` on the basis `x^j z^k` at `3k + j`.
fn mul_xz<R: Ring>(a: &[R], b: &[R], zero: &R) -> Vec<R> {
    let mut out = vec![zero.clone(); 6];
    for k1 in 0..2 {
        for j1 in 0..3 {
            for k2 in 0..2 {
                for j2 in 0..3 {
                    let (x, y) = (&a[3 * k1 + j1], &b[3 * k2 + j2]);
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    let (k, s) = if k1 + k2 == 2 { (0, -3) } else { (k1 + k2, 1) };
                    let t = 3 * k + (j1 + j2) % 3;
                    out[t] = out[t].add(&x.mul(y).mul(&x.from_i64_like(s)));
                }
            }
        }
    }
    out
}

/// `𝔽₇` element.
pub fn f7(v: i64) -> Fp {
    Fp::new(v, 7).unwrap()
}

pub fn q(n: i64) -> Rational {
    Rational::integer(n)
}

/// Polynomial ring over `ℚ` with grevlex and the given variables.
pub fn qring(vars: &[&str]) -> (Arc<PolyRing<Rational>>, Vec<Poly<Rational>>) {
    let r = PolyRing::grevlex(vars, &Rational::zero());
    let v = Poly::vars_of(&r);
    (r, v)
}
