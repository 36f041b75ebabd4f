//! Multivariate polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] lives in a [`VariableContext`] that fixes variable names
//! and splits them into a front block `x0..xn` and a back block `u1..um`.
//! The same context is reused, positionally, for the dual ring of
//! differential operators: an operator `U^2` is a polynomial `u^2` that is
//! applied with [`apolar_apply`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default coefficient bound for random linear forms.
pub const DEFAULT_COEFF_BOUND: i64 = 50;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableContext {
    names: Vec<String>,
    n_front: usize,
}

impl VariableContext {
    /// The last `m_back` names form the back block.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, m_back: usize) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if m_back > names.len() {
            return Err(Error::InvalidContext(format!(
                "back block of size {m_back} exceeds {} variables",
                names.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidContext(format!("`{name}` is not a valid variable name")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidContext(format!("duplicate variable `{name}`")));
            }
        }
        let n_front = names.len() - m_back;
        Ok(VariableContext { names, n_front })
    }

    /// The context `x0..xn | u,v` (or `u,v,w`, or `u1..um` for larger m).
    pub fn perazzo(n: usize, m: usize) -> Self {
        let mut names: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
        match m {
            2 => names.extend(["u".to_string(), "v".to_string()]),
            3 => names.extend(["u".to_string(), "v".to_string(), "w".to_string()]),
            _ => names.extend((1..=m).map(|i| format!("u{i}"))),
        }
        VariableContext { names, n_front: n + 1 }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn n_front(&self) -> usize {
        self.n_front
    }

    pub fn m_back(&self) -> usize {
        self.names.len() - self.n_front
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_front(&self, index: usize) -> bool {
        index < self.n_front
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector. Ordered graded-lexicographically with the declared
/// variable order, so `x0^2 > x0*x1 > x1^2 > x0` for two variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exponents: vec![0; nvars] }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut exponents = vec![0; nvars];
        exponents[index] = 1;
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other).then(|| Monomial {
            exponents: other.exponents.iter().zip(&self.exponents).map(|(b, a)| b - a).collect(),
        })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect() }
    }

    /// Degree in the variables `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exponents[range].iter().sum()
    }

    pub fn display<'a>(&'a self, ctx: &'a VariableContext) -> impl fmt::Display + 'a {
        MonomialDisplay { mono: self, ctx }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    ctx: &'a VariableContext,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, &e) in self.ctx.names.iter().zip(&self.mono.exponents) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `t` in `nvars` variables, largest first in
/// graded-lex order (`x0^t` leads).
pub fn monomials_of_degree(nvars: usize, t: u32) -> Vec<Monomial> {
    fn fill(prefix: &mut Vec<u32>, nvars: usize, left: u32, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            fill(prefix, nvars, left - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if t == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    fill(&mut Vec::with_capacity(nvars), nvars, t, &mut out);
    out
}

/// Number of monomials of degree `t` in `nvars` variables.
pub fn count_monomials(nvars: usize, t: u32) -> usize {
    if nvars == 0 {
        return usize::from(t == 0);
    }
    // C(nvars - 1 + t, t)
    let (n, k) = (nvars as u128 - 1 + t as u128, t as u128);
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc as usize
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: Arc<VariableContext>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(ctx: &Arc<VariableContext>) -> Self {
        Polynomial { ctx: Arc::clone(ctx), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Arc<VariableContext>, c: BigRational) -> Self {
        Self::from_terms(ctx, [(Monomial::one(ctx.len()), c)])
    }

    pub fn variable(ctx: &Arc<VariableContext>, index: usize) -> Self {
        Self::monomial(ctx, Monomial::variable(ctx.len(), index), BigRational::one())
    }

    pub fn monomial(ctx: &Arc<VariableContext>, mono: Monomial, c: BigRational) -> Self {
        Self::from_terms(ctx, [(mono, c)])
    }

    /// Sums the given terms; zero coefficients are dropped.
    pub fn from_terms(ctx: &Arc<VariableContext>, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.nvars(), ctx.len(), "monomial arity does not match context");
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `sum coeffs[i] * var_i`.
    pub fn linear(ctx: &Arc<VariableContext>, coeffs: &[BigRational]) -> Result<Self> {
        if coeffs.len() != ctx.len() {
            return Err(Error::DimensionMismatch { expected: ctx.len(), got: coeffs.len() });
        }
        Ok(Self::from_terms(
            ctx,
            coeffs.iter().enumerate().map(|(i, c)| (Monomial::variable(ctx.len(), i), c.clone())),
        ))
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Common degree of all terms. The zero polynomial counts as homogeneous
    /// of every degree and yields `None`.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let Some(d) = degrees.next() else {
            return Ok(None);
        };
        if degrees.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    fn same_context(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Polynomial { ctx: Arc::clone(&self.ctx), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_context(other)?;
        let mut out = Self::zero(&self.ctx);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Self::constant(&self.ctx, BigRational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            ctx: Arc::clone(&self.ctx),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// `d/d var_index`.
    pub fn derivative(&self, index: usize) -> Polynomial {
        let mut op = Monomial::one(self.ctx.len());
        op.exponents[index] = 1;
        let mut out = Self::zero(&self.ctx);
        apply_monomial(&op, &BigRational::one(), self, &mut out);
        out
    }

    /// Exact value at `point`.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.ctx.len() {
            return Err(Error::DimensionMismatch { expected: self.ctx.len(), got: point.len() });
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.exponents) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Coefficient vector of a linear form (or of the linear part).
    pub fn linear_coefficients(&self) -> Vec<BigRational> {
        (0..self.ctx.len()).map(|i| self.coefficient(&Monomial::variable(self.ctx.len(), i))).collect()
    }

    pub fn is_linear_form(&self) -> bool {
        !self.is_zero() && self.terms.keys().all(|m| m.degree() == 1)
    }

    /// Reads `text` in the canonical grammar.
    pub fn parse(text: &str, ctx: &Arc<VariableContext>) -> Result<Polynomial> {
        Parser::new(text, ctx).parse()
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: terms largest first, no spaces, `1` coefficients
    /// omitted. Parsing the output gives back the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let abs = c.abs();
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", m.display(&self.ctx))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("context mismatch in addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(&-rhs).expect("context mismatch in subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("context mismatch in multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-BigRational::one())
    }
}

/// `prod b_k! / (b_k - a_k)!`, the constant produced by `d^a/dx^a` on `x^b`.
fn falling_factorial(a: &Monomial, b: &Monomial) -> BigInt {
    let mut acc = BigInt::one();
    for (&ak, &bk) in a.exponents.iter().zip(&b.exponents) {
        for j in 0..ak {
            acc *= bk - j;
        }
    }
    acc
}

fn apply_monomial(op: &Monomial, coeff: &BigRational, f: &Polynomial, out: &mut Polynomial) {
    for (m, c) in &f.terms {
        if let Some(q) = op.quotient_of(m) {
            let factor = BigRational::from_integer(falling_factorial(op, m));
            out.add_term(q, coeff * c * factor);
        }
    }
}

/// The apolarity action `op ∘ f`: every variable of `op` acts as the partial
/// derivative with respect to the variable in the same position, with the
/// usual multiplicities (`d²/du²` sends `u²` to `2`).
pub fn apolar_apply(op: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    op.same_context(f)?;
    let mut out = Polynomial::zero(&f.ctx);
    for (m, c) in &op.terms {
        apply_monomial(m, c, f, &mut out);
    }
    Ok(out)
}

/// Linear form with integer coefficients uniform in `[-bound, bound]`, drawn
/// from `rng` and redrawn until nonzero.
pub fn random_linear_form_with<R: Rng>(rng: &mut R, ctx: &Arc<VariableContext>, bound: i64) -> Polynomial {
    let bound = bound.max(1);
    loop {
        let coeffs: Vec<BigRational> =
            (0..ctx.len()).map(|_| BigRational::from_integer(rng.gen_range(-bound..=bound).into())).collect();
        if coeffs.iter().any(|c| !c.is_zero()) {
            return Polynomial::linear(ctx, &coeffs).expect("length matches context");
        }
    }
}

/// Deterministic for a fixed seed.
pub fn random_linear_form(ctx: &Arc<VariableContext>, rng_seed: u64, coeff_bound: i64) -> Polynomial {
    random_linear_form_with(&mut ChaCha8Rng::seed_from_u64(rng_seed), ctx, coeff_bound)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a Arc<VariableContext>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, ctx: &'a Arc<VariableContext>) -> Self {
        Parser { src: text.as_bytes(), pos: 0, ctx }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
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

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits form an integer"))
    }

    fn identifier(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a variable name");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier"))
    }

    fn parse(mut self) -> Result<Polynomial> {
        let mut poly = Polynomial::zero(self.ctx);
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let (m, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            poly.add_term(m, c);
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return self.error("expected `+`, `-` or end of input"),
            }
            self.pos += 1;
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(Monomial, BigRational)> {
        let mut mono = Monomial::one(self.ctx.len());
        let mut coeff = BigRational::one();
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let numer = self.integer()?;
                let denom = if self.eat(b'/') { self.integer()? } else { BigInt::one() };
                if denom.is_zero() {
                    return self.error("zero denominator");
                }
                coeff = BigRational::new(numer, denom);
                if !self.eat(b'*') {
                    return Ok((mono, coeff));
                }
            }
            Some(_) => {}
            None => return self.error("unexpected end of input"),
        }
        loop {
            self.factor(&mut mono)?;
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((mono, coeff))
    }

    fn factor(&mut self, mono: &mut Monomial) -> Result<()> {
        let name_pos = {
            self.skip_ws();
            self.pos
        };
        let name = self.identifier()?;
        let Some(index) = self.ctx.index_of(name) else {
            if name.as_bytes()[0].is_ascii_digit() {
                self.pos = name_pos;
                return self.error("expected a variable name");
            }
            return Err(Error::UnknownVariable(name.to_string()));
        };
        let exponent = if self.eat(b'^') {
            let e = self.integer()?;
            match u32::try_from(e) {
                Ok(e) if e > 0 => e,
                _ => return self.error("exponent must be a positive integer"),
            }
        } else {
            1
        };
        mono.exponents[index] += exponent;
        Ok(())
    }
}
