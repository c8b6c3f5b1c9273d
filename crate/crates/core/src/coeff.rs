//! Exact multivariate polynomials over the rationals in the coordinates
//! `w1, ..., w(2n+1)` of the Heisenberg group, i.e. `x1..xn, y1..yn, t`.
//!
//! Every coefficient of every symbolic form in the crate is a [`PolyCoeff`].
//! Arithmetic is exact; terms with zero coefficient are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::error::{check_dim, Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds `num / den` as a [`Rational`].
///
/// Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p`, `p/q` or a finite decimal such as `0.25` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let int_part: BigInt = match int.trim() {
            "" | "-" | "+" => BigInt::zero(),
            other => other.parse().map_err(|_| bad())?,
        };
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = Rational::from_integer(int_part.abs()) + Rational::new(frac_part, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Exponent vector of a monomial, dense over `w1..w(2n+1)`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// `w1`, then `w2`, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, vars))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A point of `H^n` with floating coordinates `(x1..xn, y1..yn, t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "a point of H^n has an odd number of coordinates, got {}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("point coordinates must be finite".into()));
        }
        Ok(Point(coords))
    }

    pub fn n(&self) -> usize {
        (self.0.len() - 1) / 2
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }
}

/// Exact polynomial over the rationals in `2n+1` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyCoeff {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

/// Binary and unary operations accepted by [`PolyCoeff::arith`].
#[derive(Clone, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Scale(Rational),
}

impl PolyCoeff {
    pub fn zero(n: usize) -> Self {
        PolyCoeff { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = PolyCoeff::zero(n);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(2 * n + 1), c);
        }
        p
    }

    pub fn from_int(n: usize, c: i64) -> Self {
        PolyCoeff::constant(n, rat_int(c))
    }

    pub fn one(n: usize) -> Self {
        PolyCoeff::from_int(n, 1)
    }

    /// The coordinate `w_i`, 1-based.
    pub fn var(n: usize, i: usize) -> Result<Self> {
        let vars = 2 * n + 1;
        if i == 0 || i > vars {
            return Err(Error::IndexOutOfRange { index: i, max: vars });
        }
        let mut m = Monomial::one(vars);
        m.0[i - 1] = 1;
        let mut p = PolyCoeff::zero(n);
        p.terms.insert(m, Rational::one());
        Ok(p)
    }

    /// `c * w^exps`; `exps` must have length `2n+1`.
    pub fn monomial(n: usize, exps: &[u32], c: Rational) -> Result<Self> {
        check_dim(2 * n + 1, exps.len()).map_err(|_| Error::PointLength {
            expected: 2 * n + 1,
            found: exps.len(),
        })?;
        let mut p = PolyCoeff::zero(n);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps.iter().copied().collect()), c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> usize {
        2 * self.n + 1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.vars()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Exact ring operation; binary operations require equal ambient `n`.
    pub fn arith(a: &PolyCoeff, b: Option<&PolyCoeff>, op: ArithOp) -> Result<PolyCoeff> {
        match (op, b) {
            (ArithOp::Neg, _) => Ok(-a),
            (ArithOp::Scale(c), _) => Ok(a.scale(&c)),
            (ArithOp::Add, Some(b)) => a.checked_add(b),
            (ArithOp::Sub, Some(b)) => a.checked_sub(b),
            (ArithOp::Mul, Some(b)) => a.checked_mul(b),
            (_, None) => Err(Error::InvalidParameter("binary operation needs two operands".into())),
        }
    }

    pub fn checked_add(&self, other: &PolyCoeff) -> Result<PolyCoeff> {
        check_dim(self.n, other.n)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &PolyCoeff) -> Result<PolyCoeff> {
        check_dim(self.n, other.n)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &PolyCoeff) -> Result<PolyCoeff> {
        check_dim(self.n, other.n)?;
        let mut out = PolyCoeff::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> PolyCoeff {
        if c.is_zero() {
            return PolyCoeff::zero(self.n);
        }
        PolyCoeff {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> PolyCoeff {
        let mut acc = PolyCoeff::one(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `w_i` (1-based).
    pub fn partial_derivative(&self, i: usize) -> Result<PolyCoeff> {
        let vars = self.vars();
        if i == 0 || i > vars {
            return Err(Error::IndexOutOfRange { index: i, max: vars });
        }
        let mut out = PolyCoeff::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.0[i - 1];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i - 1] = e - 1;
            out.add_term(dm, c * rat_int(i64::from(e)));
        }
        Ok(out)
    }

    /// Floating evaluation at `pt`.
    pub fn evaluate_at(&self, pt: &Point) -> Result<f64> {
        let xs = pt.coords();
        if xs.len() != self.vars() {
            return Err(Error::PointLength { expected: self.vars(), found: xs.len() });
        }
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut term = c.to_f64().unwrap_or(f64::NAN);
            for (x, &e) in xs.iter().zip(m.0.iter()) {
                if e > 0 {
                    term *= x.powi(e as i32);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate_exact(&self, pt: &[Rational]) -> Result<Rational> {
        if pt.len() != self.vars() {
            return Err(Error::PointLength { expected: self.vars(), found: pt.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in pt.iter().zip(m.0.iter()) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitutes `w_i := subs[i-1]` for every variable, i.e. computes `p ∘ f`.
    ///
    /// All substituted polynomials must share one ambient `n` (which may differ
    /// from `self.n`); `subs.len()` must equal `2 * self.n + 1`.
    pub fn compose(&self, subs: &[PolyCoeff]) -> Result<PolyCoeff> {
        if subs.len() != self.vars() {
            return Err(Error::PointLength { expected: self.vars(), found: subs.len() });
        }
        let target_n = subs[0].n;
        for s in subs {
            check_dim(target_n, s.n)?;
        }
        // Powers are reused across terms; the cache is keyed by (variable, exponent).
        let mut powers: Vec<Vec<PolyCoeff>> = subs.iter().map(|s| vec![PolyCoeff::one(s.n)]).collect();
        let mut out = PolyCoeff::zero(target_n);
        for (m, c) in &self.terms {
            let mut term = PolyCoeff::constant(target_n, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &subs[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Parses an expression such as `2*w1^2 - 1/2*w3 + (w2 + 1)^3`.
    ///
    /// Variables are `w1..w(2n+1)`, or `x1..xn`, `y1..yn`, `t`; for `n = 1`
    /// the bare names `x` and `y` are accepted as well. `·` is a synonym of `*`.
    pub fn parse(n: usize, src: &str) -> Result<PolyCoeff> {
        let mut parser = ExprParser { n, chars: src.chars().collect(), pos: 0 };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.chars.len() {
            return Err(Error::Parse(format!(
                "unexpected `{}` at offset {} in `{src}`",
                parser.chars[parser.pos], parser.pos
            )));
        }
        Ok(p)
    }
}

/// Canonical text form: terms in descending graded-lex order joined by `" + "`,
/// each written `p/q·w1^a·w3` (exponent 1 omitted); the zero polynomial is `0`.
impl fmt::Display for PolyCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            f.write_str(&format_rational(c))?;
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·w{}", i + 1)?,
                    _ => write!(f, "·w{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl<'a> Neg for &'a PolyCoeff {
    type Output = PolyCoeff;
    fn neg(self) -> PolyCoeff {
        PolyCoeff { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for PolyCoeff {
    type Output = PolyCoeff;
    fn neg(mut self) -> PolyCoeff {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

// The operator impls panic on mismatched ambient dimension; the `checked_*`
// methods report it as an error instead.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, 'b> $tr<&'b PolyCoeff> for &'a PolyCoeff {
            type Output = PolyCoeff;
            fn $method(self, rhs: &'b PolyCoeff) -> PolyCoeff {
                self.$checked(rhs).expect("polynomials over different H^n")
            }
        }
        impl $tr<PolyCoeff> for PolyCoeff {
            type Output = PolyCoeff;
            fn $method(self, rhs: PolyCoeff) -> PolyCoeff {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b PolyCoeff> for PolyCoeff {
            type Output = PolyCoeff;
            fn $method(self, rhs: &'b PolyCoeff) -> PolyCoeff {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&PolyCoeff> for PolyCoeff {
    fn add_assign(&mut self, rhs: &PolyCoeff) {
        assert_eq!(self.n, rhs.n, "polynomials over different H^n");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&PolyCoeff> for PolyCoeff {
    fn sub_assign(&mut self, rhs: &PolyCoeff) {
        assert_eq!(self.n, rhs.n, "polynomials over different H^n");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

struct ExprParser {
    n: usize,
    chars: Vec<char>,
    pos: usize,
}

impl ExprParser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn expr(&mut self) -> Result<PolyCoeff> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyCoeff> {
        let mut acc = self.factor()?;
        while let Some('*' | '·') = self.peek() {
            self.pos += 1;
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolyCoeff> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some('+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if let Some('^') = self.peek() {
                    self.pos += 1;
                    self.skip_ws();
                    let e = self.digits().ok_or_else(|| self.err("expected exponent"))?;
                    let e: u32 = e.parse().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> Result<PolyCoeff> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut text = self.digits().unwrap_or_default();
                if self.chars.get(self.pos) == Some(&'.') {
                    self.pos += 1;
                    text.push('.');
                    text.push_str(&self.digits().ok_or_else(|| self.err("expected digits"))?);
                } else if self.chars.get(self.pos) == Some(&'/') {
                    self.pos += 1;
                    text.push('/');
                    text.push_str(&self.digits().ok_or_else(|| self.err("expected denominator"))?);
                }
                Ok(PolyCoeff::constant(self.n, parse_rational(&text)?))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                let idx = self.digits();
                let name = self.chars[start];
                let n = self.n;
                let index = match (name, idx) {
                    ('w', Some(i)) => i.parse::<usize>().ok(),
                    ('x', Some(i)) => i.parse::<usize>().ok().filter(|&j| j >= 1 && j <= n),
                    ('y', Some(i)) => i.parse::<usize>().ok().filter(|&j| j >= 1 && j <= n).map(|j| n + j),
                    ('x', None) if n == 1 => Some(1),
                    ('y', None) if n == 1 => Some(2),
                    ('t', None) => Some(2 * n + 1),
                    _ => None,
                };
                let index = index.ok_or_else(|| self.err("unknown variable"))?;
                PolyCoeff::var(n, index).map_err(|e| Error::Parse(e.to_string()))
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str) -> PolyCoeff {
        PolyCoeff::parse(1, src).unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(p("x + y") + p("x - y"), p("2*x"));
        assert_eq!(p("x") * p("y"), p("x*y"));
        assert!((p("x*y") * PolyCoeff::zero(1)).is_zero());
    }

    #[test]
    fn square_expands_by_convolution() {
        // (x + t)^2 by direct monomial convolution of exponent vectors
        let base = [([1u32, 0, 0], 1i64), ([0, 0, 1], 1)];
        let mut expected = PolyCoeff::zero(1);
        for (ea, ca) in base {
            for (eb, cb) in base {
                let e: Vec<u32> = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                expected += &PolyCoeff::monomial(1, &e, rat_int(ca * cb)).unwrap();
            }
        }
        assert_eq!(p("(x + t)^2"), expected);
        assert_eq!(expected, p("x^2 + 2*x*t + t^2"));
    }

    #[test]
    fn mismatched_dimensions_are_errors() {
        let a = PolyCoeff::one(1);
        let b = PolyCoeff::one(2);
        assert!(matches!(a.checked_add(&b), Err(Error::DimensionMismatch { .. })));
        assert!(PolyCoeff::arith(&a, Some(&b), ArithOp::Mul).is_err());
        assert!(a.evaluate_at(&Point::new(vec![0.0; 5]).unwrap()).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("w1^2*w2").partial_derivative(1).unwrap(), p("2*w1*w2"));
        assert!(p("w1^2").partial_derivative(3).unwrap().is_zero());
        assert_eq!(p("t^3").partial_derivative(3).unwrap(), p("3*t^2"));
        assert!(matches!(p("x").partial_derivative(4), Err(Error::IndexOutOfRange { .. })));
        assert!(p("x").partial_derivative(0).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let pt = |v: Vec<f64>| Point::new(v).unwrap();
        assert_eq!(p("x^2 + y").evaluate_at(&pt(vec![2.0, 3.0, 0.0])).unwrap(), 7.0);
        assert_eq!(PolyCoeff::zero(1).evaluate_at(&pt(vec![1.5, -2.0, 9.0])).unwrap(), 0.0);
        assert_eq!(p("x*y - t").evaluate_at(&pt(vec![1.0, 1.0, 1.0])).unwrap(), 0.0);
    }

    #[test]
    fn text_round_trip_and_aliases() {
        let q = PolyCoeff::parse(2, "-1/2*x1*y2 + 3*t^2 - 7 + w2").unwrap();
        let text = q.to_string();
        assert_eq!(PolyCoeff::parse(2, &text).unwrap(), q);
        assert_eq!(PolyCoeff::zero(2).to_string(), "0");
        assert_eq!(PolyCoeff::parse(2, "x2").unwrap(), PolyCoeff::var(2, 2).unwrap());
        assert_eq!(PolyCoeff::parse(2, "y1").unwrap(), PolyCoeff::var(2, 3).unwrap());
        assert!(PolyCoeff::parse(2, "x").is_err());
        assert!(PolyCoeff::parse(1, "w4").is_err());
        assert!(PolyCoeff::parse(1, "1 +").is_err());
    }

    #[test]
    fn canonical_text_is_graded_lex_descending() {
        assert_eq!(p("t + x^2 + 1").to_string(), "1/1·w1^2 + 1/1·w3 + 1/1");
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat_int(-3));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn composition_substitutes_components() {
        let f = [p("2*x"), p("y + 1"), p("t")];
        assert_eq!(p("x*y").compose(&f).unwrap(), p("2*x*y + 2*x"));
    }
}
