//! Exact multivariate polynomials with rational coefficients.
//!
//! Every tensor component in this crate is a [`Poly`]. Parameters are interned
//! once into a process-wide table, and exponent vectors are indexed by that
//! table. The parameters `l1`, `l2`, `l3`, `l4` are always registered first, so
//! they occupy the first four exponent slots in that order. Canonical form
//! (no zero coefficients, trailing zero exponents trimmed) makes equality of
//! polynomials a structural comparison.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Values for the parameters of a polynomial.
pub type Assignment = BTreeMap<Var, Rational>;

static REGISTRY: LazyLock<RwLock<Vec<String>>> =
    LazyLock::new(|| RwLock::new(vec!["l1".into(), "l2".into(), "l3".into(), "l4".into()]));

/// An interned parameter name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Interns `name`, returning the existing handle if it was seen before.
    pub fn new(name: &str) -> Result<Var> {
        if !is_identifier(name) {
            return Err(Error::Parse {
                input: name.to_string(),
                message: "parameter names must be ASCII identifiers".into(),
            });
        }
        if let Some(v) = Var::lookup(name) {
            return Ok(v);
        }
        let mut reg = REGISTRY.write().expect("parameter registry poisoned");
        // another thread may have won the race between the read and write locks
        if let Some(pos) = reg.iter().position(|n| n == name) {
            return Ok(Var(pos as u32));
        }
        reg.push(name.to_string());
        Ok(Var((reg.len() - 1) as u32))
    }

    pub fn lookup(name: &str) -> Option<Var> {
        let reg = REGISTRY.read().expect("parameter registry poisoned");
        reg.iter().position(|n| n == name).map(|p| Var(p as u32))
    }

    /// The family parameter λ_k, `k` in 1..=4.
    pub fn lambda(k: usize) -> Var {
        assert!((1..=4).contains(&k), "lambda index {k} out of range");
        Var(k as u32 - 1)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> String {
        REGISTRY.read().expect("parameter registry poisoned")[self.index()].clone()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector indexed by [`Var::index`], without trailing zeros.
///
/// The ordering is the rendering order: higher total degree first, then
/// lexicographically larger exponent vectors first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, exp: u32) -> Self {
        if exp == 0 {
            return Monomial::one();
        }
        let mut e = vec![0; v.index() + 1];
        e[v.index()] = exp;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.get(v.index()).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Variables with nonzero exponent, in registry order.
    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Var(i as u32), e))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut e = long.0.clone();
        for (a, b) in e.iter_mut().zip(&short.0) {
            *a += b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                let a = self.0.get(i).copied().unwrap_or(0);
                let b = other.0.get(i).copied().unwrap_or(0);
                match b.cmp(&a) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(Rational::from_integer(BigInt::from(n)))
    }

    /// The constant `num/den`. Panics if `den` is zero.
    pub fn frac(num: i64, den: i64) -> Self {
        Poly::constant(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn var(v: Var) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v, 1), Rational::one());
        p
    }

    /// The family parameter λ_k as a polynomial.
    pub fn lambda(k: usize) -> Self {
        Poly::var(Var::lambda(k))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Parameters that occur in some term, in registry order.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().map(|(v, _)| v))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// Coefficient of `m`, zero when absent.
    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(c)` with `self = c · other`, when such a rational exists and
    /// `other` is nonzero.
    pub fn ratio_to(&self, other: &Poly) -> Option<Rational> {
        let (m, c) = other.terms.iter().next()?;
        let r = self.coefficient(m) / c;
        (other.scale(&r) == *self).then_some(r)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at `at`; every parameter occurring in `self` must be assigned.
    pub fn eval(&self, at: &Assignment) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (v, e) in m.factors() {
                let x = at
                    .get(&v)
                    .ok_or_else(|| Error::MissingParameter(v.name()))?;
                value *= num_traits::pow(x.clone(), e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Replaces the assigned parameters by their values, leaving the others symbolic.
    pub fn substitute(&self, at: &Assignment) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Monomial::one();
            for (v, e) in m.factors() {
                match at.get(&v) {
                    Some(x) => coeff *= num_traits::pow(x.clone(), e as usize),
                    None => rest = rest.mul(&Monomial::var(v, e)),
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::int(n)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { (&self).$f(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly { (&self).$f(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { self.$f(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn format_monomial(m: &Monomial) -> String {
    m.factors()
        .map(|(v, e)| {
            if e == 1 {
                v.name()
            } else {
                format!("{}^{}", v.name(), e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Poly {
    /// Renders terms in descending graded order, e.g. `1/4*l1^2 - 1/4*l2*l3 + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&format_monomial(m))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), format_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Parses sums, differences, products, integer powers, parentheses and
    /// division by nonzero constants, e.g. `-1/4*(l1^2 - l4^2)`.
    fn from_str(s: &str) -> Result<Poly> {
        let mut parser = Parser { src: s, pos: 0 };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != s.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let p: Poly = s.parse()?;
    p.as_constant().ok_or_else(|| Error::Parse {
        input: s.to_string(),
        message: "expected a rational constant".into(),
    })
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            input: self.src.to_string(),
            message: format!("{message} at byte {}", self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc += &self.term()?;
            } else if self.eat('-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let divisor = self.power()?;
                match divisor.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    Some(_) => return Err(self.error("division by zero")),
                    None => return Err(self.error("division by a non-constant")),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let digits = self.take_while(|c| c.is_ascii_digit());
            let exp: u32 = digits
                .parse()
                .map_err(|_| self.error("expected a non-negative integer exponent"))?;
            Ok(base.pow(exp))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            // a unary sign inside a product, e.g. `2*-l1`
            Some('-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(Poly::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                Ok(Poly::var(Var::new(&name)?))
            }
            _ => Err(self.error("expected a number, parameter or '('")),
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }
}

/// Whether `p` vanishes over the reals only at the origin of the parameters
/// it mentions: every term is an even power of a single parameter, every
/// coefficient has the same sign, and there is no constant term.
pub fn is_definite_sum_of_squares(p: &Poly) -> bool {
    if p.is_zero() {
        return false;
    }
    let mut sign = None;
    for (m, c) in p.terms() {
        let factors: Vec<_> = m.factors().collect();
        if factors.len() != 1 || factors[0].1 % 2 != 0 {
            return false;
        }
        let s = c.is_positive();
        if *sign.get_or_insert(s) != s {
            return false;
        }
    }
    true
}

/// Converts a small rational to `f64`, for human-facing summaries only.
pub fn approx_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn l(k: usize) -> Poly {
        Poly::lambda(k)
    }

    #[test]
    fn additive_identity_and_like_terms() {
        assert_eq!(&l(1) + &Poly::zero(), l(1));
        let sum = &(&l(1).pow(2) + &l(2).pow(2)) + &l(1).pow(2);
        assert_eq!(sum, p("2*l1^2 + l2^2"));
    }

    #[test]
    fn cancellation_gives_empty_term_map() {
        let z = &l(1) - &l(1);
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
    }

    #[test]
    fn products() {
        assert_eq!(&l(1) * &l(2), p("l1*l2"));
        let d = &(&l(1) + &l(2)) * &(&l(1) - &l(2));
        assert_eq!(d, p("l1^2 - l2^2"));
        let q = p("1/4*(l1^2 + l2^2)").scale(&Rational::from_integer(6.into()));
        assert_eq!(q, p("3/2*l1^2 + 3/2*l2^2"));
    }

    #[test]
    fn evaluation() {
        let at: Assignment = (1..=4)
            .map(|k| {
                (
                    Var::lambda(k),
                    Rational::from_integer([1, 2, 0, 0][k - 1].into()),
                )
            })
            .collect();
        assert_eq!(
            p("l1^2 + l2^2").eval(&at).unwrap(),
            Rational::from_integer(5.into())
        );
        let ones: Assignment = (1..=4).map(|k| (Var::lambda(k), Rational::one())).collect();
        let tau = p("3/2*(l1^2 + l2^2 + l3^2 + l4^2)");
        assert_eq!(tau.eval(&ones).unwrap(), Rational::from_integer(6.into()));
        assert!(Poly::zero().eval(&Assignment::new()).unwrap().is_zero());
    }

    #[test]
    fn eval_reports_missing_parameter() {
        let err = p("l1 + l3")
            .eval(&[(Var::lambda(1), Rational::one())].into())
            .unwrap_err();
        assert!(matches!(err, Error::MissingParameter(ref n) if n == "l3"));
    }

    #[test]
    fn zero_testing() {
        assert!(Poly::zero().is_zero());
        assert!(!p("l1^2 + l4^2 - l2^2 - l3^2").is_zero());
        let e = &(&l(1) + &l(2)).pow(2) - &p("l1^2 + 2*l1*l2 + l2^2");
        assert!(e.is_zero());
    }

    #[test]
    fn rendering_is_sorted_and_stable() {
        assert_eq!(p("1/4*l2^2 + 1/4*l1^2").to_string(), "1/4*l1^2 + 1/4*l2^2");
        assert_eq!(p("-(l1^2+l2^2)/4").to_string(), "-1/4*l1^2 - 1/4*l2^2");
        assert_eq!(p("3 - l1*l2 + l4").to_string(), "-l1*l2 + l4 + 3");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p("-7/3").to_string(), "-7/3");
    }

    #[test]
    fn parser_rejects_garbage() {
        assert!("l1 +".parse::<Poly>().is_err());
        assert!("l1/l2".parse::<Poly>().is_err());
        assert!("1/0".parse::<Poly>().is_err());
        assert!("(l1".parse::<Poly>().is_err());
        assert!("l1 l2".parse::<Poly>().is_err());
    }

    #[test]
    fn registry_interns_names() {
        let a = Var::new("eps_test").unwrap();
        assert_eq!(Var::new("eps_test").unwrap(), a);
        assert_eq!(a.name(), "eps_test");
        assert_eq!(Var::lookup("l3"), Some(Var::lambda(3)));
        assert!(Var::new("1x").is_err());
    }

    #[test]
    fn definite_sums_of_squares() {
        assert!(is_definite_sum_of_squares(&p("-1/4*(l1^2+l2^2+l3^2+l4^2)")));
        assert!(!is_definite_sum_of_squares(&p("l1^2 - l2^2")));
        assert!(!is_definite_sum_of_squares(&p("l1*l2")));
        assert!(!is_definite_sum_of_squares(&p("l1^2 + 1")));
    }
}
