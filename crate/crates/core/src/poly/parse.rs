use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{IdealGens, MonomialOrder, Poly, PolyError, PolyRing};
use crate::exactnum::{Field, Ring};

/// Parses `text` in the ring `ring`.
///
/// Grammar: sums and differences of products of factors, where a factor is a
/// variable, an integer or `p/q` literal, a parenthesised expression, or any
/// of these raised to a non-negative integer power with `^`.
pub fn parse_poly<K: Field>(text: &str, ring: &Arc<PolyRing<K>>) -> Result<Poly<K>, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a, K> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing<K>>,
}

impl<K: Field> Parser<'_, K> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly<K>, PolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<K>, PolyError> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly<K>, PolyError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.power()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Poly<K>, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits();
                let mut den = String::from("1");
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    den = self.digits();
                    if den.is_empty() {
                        return Err(self.error("expected denominator"));
                    }
                }
                let n = BigInt::from_str(&num).expect("digits");
                let d = BigInt::from_str(&den).expect("digits");
                let at = self.pos;
                let c = self
                    .ring
                    .coeff_one()
                    .from_ratio_like(&n, &d)
                    .map_err(|e| PolyError::Parse { pos: at, msg: e.to_string() })?;
                Ok(Poly::constant(self.ring, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Poly::var_at(self.ring, i)),
                    None => Err(PolyError::Parse {
                        pos: start,
                        msg: format!("unknown variable {name:?}"),
                    }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Raw contents of an ideal file: the declared variables and one polynomial per entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFile {
    pub vars: Vec<String>,
    pub polys: Vec<String>,
}

impl IdealFile {
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let mut vars = None;
        let mut polys = Vec::new();
        let mut offset = 0;
        for line in text.lines() {
            let trimmed = line.trim();
            if let Some(rest) = trimmed.strip_prefix("vars:") {
                vars = Some(rest.split_whitespace().map(String::from).collect::<Vec<_>>());
            } else if !trimmed.is_empty() && !trimmed.starts_with('#') {
                if vars.is_none() {
                    return Err(PolyError::Parse {
                        pos: offset,
                        msg: "polynomial before the 'vars:' header".into(),
                    });
                }
                polys.push(trimmed.to_string());
            }
            offset += line.len() + 1;
        }
        let vars = vars.ok_or(PolyError::Parse { pos: 0, msg: "missing 'vars:' header".into() })?;
        Ok(IdealFile { vars, polys })
    }

    pub fn to_ideal<K: Field>(
        &self,
        coeff: &K,
        order: MonomialOrder,
    ) -> Result<IdealGens<K>, PolyError> {
        let ring = PolyRing::new(&self.vars, order, coeff);
        let gens = self.polys.iter().map(|p| parse_poly(p, &ring)).collect::<Result<_, _>>()?;
        Ok(IdealGens::new(&ring, gens))
    }
}

/// Convenience wrapper: parse an ideal file straight into generators.
pub fn parse_ideal_file<K: Field>(
    text: &str,
    coeff: &K,
    order: MonomialOrder,
) -> Result<IdealGens<K>, PolyError> {
    IdealFile::parse(text)?.to_ideal(coeff, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{Fp, Rational};

    fn atlas_ring() -> Arc<PolyRing<Rational>> {
        PolyRing::grevlex(
            &["a", "b", "c", "d", "e", "f", "A", "B", "C", "D", "omega"],
            &Rational::zero(),
        )
    }

    #[test]
    fn parses_generator_and_constants() {
        let r = atlas_ring();
        let g = parse_poly("2*a*A + b*B + c*C", &r).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.to_string(), "2*a*A + b*B + c*C");
        assert!(parse_poly("0", &r).unwrap().is_zero());
        let w = PolyRing::grevlex(&["w"], &Rational::zero());
        assert_eq!(parse_poly("w^2+3", &w).unwrap().to_string(), "w^2 + 3");
        assert_eq!(parse_poly("-(a - 3/2*b)^2", &r).unwrap().to_string(), "-a^2 + 3*a*b - 9/4*b^2");
    }

    #[test]
    fn reports_positions() {
        let r = atlas_ring();
        match parse_poly("a + q", &r) {
            Err(PolyError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("a +* b", &r), Err(PolyError::Parse { pos: 3, .. })));
        assert!(parse_poly("a^", &r).is_err());
        assert!(parse_poly("(a", &r).is_err());
        assert!(parse_poly("a b", &r).is_err());
    }

    #[test]
    fn denominators_divisible_by_p_fail() {
        let r = PolyRing::grevlex(&["x"], &Fp::new(0, 7).unwrap());
        assert_eq!(parse_poly("1/2*x", &r).unwrap().to_string(), "4*x");
        assert!(parse_poly("1/7*x", &r).is_err());
    }

    #[test]
    fn ideal_file_format() {
        let text = "# test\nvars: x y\nx^2 - 1\n\n# comment\nx*y - 1\n";
        let ideal = parse_ideal_file(text, &Rational::zero(), MonomialOrder::Lex).unwrap();
        assert_eq!(ideal.gens().len(), 2);
        assert!(parse_ideal_file("x\n", &Rational::zero(), MonomialOrder::Lex).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly_text() -> impl Strategy<Value = String> {
            let term = (-5i64..6, 1i64..4, 0u32..3, 0u32..3).prop_map(|(n, d, i, j)| {
                format!("({n}/{d})*x^{i}*y^{j}")
            });
            proptest::collection::vec(term, 0..5).prop_map(|ts| {
                if ts.is_empty() { "0".to_string() } else { ts.join(" + ") }
            })
        }

        proptest! {
            #[test]
            fn parse_print_parse_identity(text in poly_text()) {
                let r = PolyRing::grevlex(&["x", "y"], &Rational::zero());
                let p = parse_poly(&text, &r).unwrap();
                let q = parse_poly(&p.to_string(), &r).unwrap();
                prop_assert_eq!(p.to_string(), q.to_string());
                prop_assert_eq!(p, q);
            }
        }
    }
}
