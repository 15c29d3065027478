//! Bivariate polynomials with cyclotomic coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::ModuleError;
use crate::arith::{Cyclotomic, Rational};
use crate::groups::LinearElement;
use crate::linalg::{CycMatrix, Matrix};

/// Sparse polynomial in `x, y`; keys are `(deg_x, deg_y)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), Cyclotomic>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Cyclotomic) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Poly { terms }
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Cyclotomic::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Cyclotomic::one())
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Cyclotomic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Cyclotomic {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    /// Degree if every term has the same total degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.keys().all(|(i, j)| i + j == d).then_some(d)
    }

    fn add_term(&mut self, key: (u32, u32), c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Cyclotomic::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&Cyclotomic::from_int(-1))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &other.terms {
                out.add_term((i + k, j + l), a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(Cyclotomic::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Coefficients in the basis `x^e, x^{e-1}y, …, y^e`; `None` if some
    /// term has another degree.
    pub fn to_vector(&self, e: u32) -> Option<Vec<Cyclotomic>> {
        let mut v = vec![Cyclotomic::zero(); e as usize + 1];
        for ((i, j), c) in &self.terms {
            if i + j != e {
                return None;
            }
            v[*j as usize] = c.clone();
        }
        Some(v)
    }

    pub fn from_vector(e: u32, v: &[Cyclotomic]) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in v.iter().enumerate() {
            out.add_term((e - k as u32, k as u32), c.clone());
        }
        out
    }

    /// `Σ c·Xⁱ·Yʲ` for commuting square matrices.
    pub fn evaluate(&self, x: &CycMatrix, y: &CycMatrix) -> CycMatrix {
        let n = x.rows();
        let mut out = Matrix::zeros(n, n);
        let mut xp: Vec<CycMatrix> = vec![Matrix::identity(n)];
        let mut yp: Vec<CycMatrix> = vec![Matrix::identity(n)];
        for ((i, j), c) in &self.terms {
            while xp.len() <= *i as usize {
                let next = xp.last().expect("nonempty").mul(x);
                xp.push(next);
            }
            while yp.len() <= *j as usize {
                let next = yp.last().expect("nonempty").mul(y);
                yp.push(next);
            }
            out = out.add(&xp[*i as usize].mul(&yp[*j as usize]).scale(c));
        }
        out
    }

    pub fn parse(s: &str) -> Result<Poly, ModuleError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

/// Matrix of `f ↦ g·f` on degree-`e` forms, where `(g·f)(v) = f(g⁻¹v)`.
pub fn degree_action(g: &LinearElement, e: u32) -> CycMatrix {
    let m = g.inverse();
    let m = m.matrix();
    // x ↦ a x + b y, y ↦ c x + d y
    let gx = Poly::monomial(1, 0, m.get(0, 0).clone()).add(&Poly::monomial(0, 1, m.get(0, 1).clone()));
    let gy = Poly::monomial(1, 0, m.get(1, 0).clone()).add(&Poly::monomial(0, 1, m.get(1, 1).clone()));
    let n = e as usize + 1;
    let mut out = Matrix::zeros(n, n);
    for k in 0..n {
        let image = gx.pow(e - k as u32).mul(&gy.pow(k as u32));
        let v = image.to_vector(e).expect("homogeneous image");
        for (row, c) in v.into_iter().enumerate() {
            out.set(row, k, c);
        }
    }
    out
}

/// Substitution action of a 2×2 linear element on a polynomial.
pub fn act_on_poly(g: &LinearElement, f: &Poly) -> Poly {
    let mut by_degree: BTreeMap<u32, Poly> = BTreeMap::new();
    for ((i, j), c) in f.terms() {
        by_degree
            .entry(i + j)
            .or_default()
            .add_term((*i, *j), c.clone());
    }
    let mut out = Poly::zero();
    for (e, part) in by_degree {
        let v = part.to_vector(e).expect("homogeneous part");
        let image = degree_action(g, e).mul(&Matrix::column_vector(v));
        out = out.add(&Poly::from_vector(e, &image.column(0)));
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // descending degree, then descending power of x
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (n, key) in keys.into_iter().enumerate() {
            let c = &self.terms[key];
            let mono = match key {
                (0, 0) => String::new(),
                (i, 0) => var("x", *i),
                (0, j) => var("y", *j),
                (i, j) => format!("{}*{}", var("x", *i), var("y", *j)),
            };
            let (neg, mag) = match c.as_rational() {
                Some(q) if q.is_negative() => (true, Cyclotomic::from_rational(-q)),
                _ => (false, c.clone()),
            };
            if n > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let coeff = if mag.as_rational().is_some() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{coeff}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn var(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Grammar: `expr := ['-'] term (('+'|'-') term)*`, `term := power ('*' power)*`,
/// `power := atom ['^' int]`, `atom := int ['/' int] | x | y | u | v | i | w | zN | '(' expr ')'`.
/// `u, v` alias `x, y`; `i = ζ₄`, `w = ζ₃`, `zN = ζ_N`.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ModuleError {
        ModuleError::Parse {
            position: self.pos,
            message: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<Poly, ModuleError> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.term()?.neg()
        } else {
            self.term()?
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

    fn term(&mut self) -> Result<Poly, ModuleError> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly, ModuleError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64, ModuleError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.error("integer out of range"))
    }

    fn atom(&mut self) -> Result<Poly, ModuleError> {
        let one = Cyclotomic::one;
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
                let n = self.integer()?;
                let n = i64::try_from(n).map_err(|_| self.error("integer out of range"))?;
                let mut q = Rational::from_int(n);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    let d = i64::try_from(d).map_err(|_| self.error("integer out of range"))?;
                    q = Rational::new(n, d).map_err(|_| self.error("zero denominator"))?;
                }
                Ok(Poly::constant(Cyclotomic::from_rational(q)))
            }
            Some(b'x') | Some(b'u') => {
                self.pos += 1;
                Ok(Poly::monomial(1, 0, one()))
            }
            Some(b'y') | Some(b'v') => {
                self.pos += 1;
                Ok(Poly::monomial(0, 1, one()))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Poly::constant(Cyclotomic::zeta(4)))
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(Poly::constant(Cyclotomic::zeta(3)))
            }
            Some(b'z') => {
                self.pos += 1;
                let n = self.integer()?;
                let n = u32::try_from(n).ok().filter(|&n| n >= 1).ok_or_else(|| self.error("bad conductor"))?;
                Ok(Poly::constant(Cyclotomic::zeta(n)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g422;

    #[test]
    fn parse_and_display() {
        let p = Poly::parse("x^4+y^4").unwrap();
        assert_eq!(p.to_string(), "x^4 + y^4");
        let q = Poly::parse("(x+y)^4").unwrap();
        assert_eq!(q.coeff(2, 2), Cyclotomic::from_int(6));
        assert_eq!(Poly::parse("x^2*y^2").unwrap().homogeneous_degree(), Some(4));
        assert_eq!(Poly::parse("-x - 1/2*y").unwrap().to_string(), "-x - 1/2*y");
        assert_eq!(Poly::parse("u*v").unwrap(), Poly::parse("x*y").unwrap());
        assert_eq!(Poly::parse("i*x").unwrap().coeff(1, 0), Cyclotomic::zeta(4));
        assert!(Poly::parse("x^").is_err());
        assert!(Poly::parse("x + + y").is_err());
        assert!(Poly::parse("").is_err());
        assert!(matches!(Poly::parse("x ? y"), Err(ModuleError::Parse { position: 2, .. })));
    }

    #[test]
    fn contragredient_action() {
        let f = Poly::parse("x^2 - y^2").unwrap();
        assert_eq!(act_on_poly(&g422::element(1, 1, 0), &f), f.neg());
        let xy = Poly::parse("x*y").unwrap();
        assert_eq!(act_on_poly(&g422::element(0, 0, 1), &xy), xy);
        // (ξ^a, ξ^b) f₁ = ξ^{-a} f₁
        let x = Poly::x();
        assert_eq!(act_on_poly(&g422::element(1, 0, 0), &x), x.scale(&g422::xi_pow(-1)));
        let id = crate::groups::LinearElement::identity(2);
        assert_eq!(act_on_poly(&id, &f), f);
    }

    proptest::proptest! {
        #[test]
        fn action_is_multiplicative(a in 0i64..4, b in 0i64..4, c in 0u8..2, a2 in 0i64..4, b2 in 0i64..4, c2 in 0u8..2) {
            use crate::groups::GroupElement;
            let g = g422::element(a, b, c);
            let h = g422::element(a2, b2, c2);
            let f = Poly::parse("x^3 + 2*x*y^2 - i*y^3").unwrap();
            let gh = g.compose(&h).unwrap();
            proptest::prop_assert_eq!(act_on_poly(&gh, &f), act_on_poly(&g, &act_on_poly(&h, &f)));
        }
    }
}
