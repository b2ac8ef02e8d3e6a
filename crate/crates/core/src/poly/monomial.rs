use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 12]>;

/// Exponent vector with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps: SmallVec::from_slice(exps), degree }
    }

    pub fn var(nvars: usize, index: usize, power: u16) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[index] = power;
        m.degree = power as u32;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(rhs.exps.iter())
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial { exps, degree: self.degree + rhs.degree }
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.degree <= rhs.degree && self.exps.iter().zip(rhs.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / rhs`, assuming `rhs` divides `self`.
    pub fn div(&self, rhs: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(rhs.exps.iter()).map(|(a, b)| a - b).collect();
        Monomial { exps, degree: self.degree - rhs.degree }
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        let exps: Exponents =
            self.exps.iter().zip(rhs.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, rhs: &Monomial) -> bool {
        self.exps.iter().zip(rhs.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// Re-indexes into a ring with `nvars` variables; `map[i]` is the new index of variable `i`.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                exps[map[i]] += e;
            }
        }
        Monomial { exps, degree: self.degree }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Monomial orders. Variables are compared in the ring's variable order, the
/// first variable being the largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// Grevlex on the first `n` variables, ties broken by grevlex on the rest.
    /// Eliminates the first block.
    Block(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Grevlex => grevlex(&a.exps, a.degree, &b.exps, b.degree),
            MonomialOrder::Block(split) => {
                let (a1, a2) = a.exps.split_at(split);
                let (b1, b2) = b.exps.split_at(split);
                let da: u32 = a1.iter().map(|&e| e as u32).sum();
                let db: u32 = b1.iter().map(|&e| e as u32).sum();
                grevlex(a1, da, b1, db)
                    .then_with(|| grevlex(a2, a.degree - da, b2, b.degree - db))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Block(k) => format!("block({k})"),
        }
    }
}

fn grevlex(a: &[u16], da: u32, b: &[u16], db: u32) -> Ordering {
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}
