//! Exact multivariate Laurent polynomials with integer coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors under graded-lex order,
//! so the representation is canonical and the leading term is the last entry.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};

/// An exponent vector, ordered by total degree and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[i32]>);

impl Monomial {
    pub fn new(exponents: impl Into<Box<[i32]>>) -> Self {
        Monomial(exponents.into())
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into())
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    fn shift(&self, by: &[i32]) -> Monomial {
        Monomial(self.0.iter().zip(by).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c.into());
        p
    }

    /// The variable `x_i`, indexed from 1.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(
            i >= 1 && i <= nvars,
            "variable x{i} out of range 1..={nvars}"
        );
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::term(nvars, e, 1)
    }

    pub fn term(nvars: usize, exponents: Vec<i32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exponents.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::new(exponents), c.into());
        p
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<i32>, BigInt)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch {
                    left: nvars,
                    right: e.len(),
                });
            }
            p.add_term(Monomial::new(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.last_key_value()
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d * c);
        }
        out
    }

    fn shifted(&self, by: &[i32]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shift(by), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut min = vec![i32::MAX; self.nvars];
        for m in self.terms.keys() {
            for (lo, &e) in min.iter_mut().zip(m.exponents()) {
                *lo = (*lo).min(e);
            }
        }
        if self.terms.is_empty() {
            min.fill(0);
        }
        min
    }

    /// Exponents of the monomial denominator: `max(0, -min_exponent)` per variable.
    pub fn denominator(&self) -> Vec<i32> {
        self.min_exponents().iter().map(|&e| (-e).max(0)).collect()
    }

    /// The polynomial obtained by clearing the denominator.
    pub fn numerator(&self) -> LaurentPoly {
        self.shifted(&self.denominator())
    }

    /// Returns `r` with `r * divisor == self`, or [`Error::NotDivisible`].
    ///
    /// Both operands are shifted to genuine polynomials without monomial factors
    /// and divided with graded-lex leading terms; any leading term that the
    /// divisor cannot absorb proves a nonzero remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_arity(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let min_p = self.min_exponents();
        let min_q = divisor.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|e| -e).collect::<Vec<_>>();
        let q = divisor.shifted(&neg(&min_q));
        let mut rem = self.shifted(&neg(&min_p));
        let (lead_m, lead_c) = q
            .leading_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();

        let mut quotient = Self::zero(self.nvars);
        while let Some((m, c)) = rem.terms.last_key_value() {
            let diff: Vec<i32> = m
                .exponents()
                .iter()
                .zip(lead_m.exponents())
                .map(|(a, b)| a - b)
                .collect();
            if diff.iter().any(|&e| e < 0) {
                return Err(Error::NotDivisible);
            }
            let (t, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            let shift = Monomial::new(diff);
            for (qm, qc) in &q.terms {
                rem.add_term(qm.mul(&shift), -(&t * qc));
            }
            quotient.add_term(shift, t);
        }
        let restore: Vec<i32> = min_p.iter().zip(&min_q).map(|(p, q)| p - q).collect();
        Ok(quotient.shifted(&restore))
    }

    /// Exact value at a rational point.
    pub fn specialize(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut value = BigRational::from_integer(c.clone());
            for (i, (&e, x)) in m.exponents().iter().zip(point).enumerate() {
                if e == 0 {
                    continue;
                }
                if x.is_zero() {
                    if e < 0 {
                        return Err(Error::ZeroToNegativePower(i + 1));
                    }
                    value = BigRational::zero();
                    break;
                }
                let base = if e < 0 { x.recip() } else { x.clone() };
                value *= num_traits::pow(base, e.unsigned_abs() as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Substitutes `1` for each listed variable (1-based), keeping the arity.
    pub fn set_to_one(&self, vars: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            for &v in vars {
                e[v - 1] = 0;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }

    /// Parses the text form produced by [`fmt::Display`].
    pub fn parse(nvars: usize, s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero(nvars));
        }
        let mut out = Self::zero(nvars);
        let mut tokens = s.split_whitespace().peekable();
        let mut sign = BigInt::one();
        loop {
            let coeff_tok = tokens.next().ok_or_else(|| bad("missing coefficient"))?;
            let coeff: BigInt = coeff_tok.parse().map_err(|_| bad("bad coefficient"))?;
            let mut e = vec![0i32; nvars];
            if tokens.peek() == Some(&"*") {
                tokens.next();
                while let Some(tok) = tokens.peek() {
                    if *tok == "+" || *tok == "-" {
                        break;
                    }
                    let tok = tokens.next().unwrap();
                    let (var, exp) = tok
                        .strip_prefix('x')
                        .and_then(|r| r.split_once('^'))
                        .ok_or_else(|| bad("bad factor"))?;
                    let idx: usize = var.parse().map_err(|_| bad("bad variable"))?;
                    let exp: i32 = exp.parse().map_err(|_| bad("bad exponent"))?;
                    if idx == 0 || idx > nvars {
                        return Err(bad("variable out of range"));
                    }
                    e[idx - 1] += exp;
                }
            }
            out.add_term(Monomial::new(e), &sign * coeff);
            match tokens.next() {
                None => break,
                Some("+") => sign = BigInt::one(),
                Some("-") => sign = -BigInt::one(),
                Some(_) => return Err(bad("expected + or -")),
            }
        }
        Ok(out)
    }

    /// Human-oriented form `(numerator)/(monomial)` with `x1*x3`-style products.
    pub fn to_fraction_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let den = self.denominator();
        let num = self.numerator();
        let mut s = String::new();
        for (i, (m, c)) in num.terms.iter().rev().enumerate() {
            let factors = compact_monomial(m.exponents());
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            match (factors.is_empty(), mag.is_one()) {
                (true, _) => s.push_str(&mag.to_string()),
                (false, true) => s.push_str(&factors),
                (false, false) => s.push_str(&format!("{mag}*{factors}")),
            }
        }
        let den = compact_monomial(&den);
        if den.is_empty() {
            return s;
        }
        let num = if num.num_terms() == 1 {
            s
        } else {
            format!("({s})")
        };
        if den.contains('*') {
            format!("{num}/({den})")
        } else {
            format!("{num}/{den}")
        }
    }
}

fn compact_monomial(e: &[i32]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{k}", i + 1)),
        }
    }
    parts.join("*")
}

impl fmt::Display for LaurentPoly {
    /// `c * x1^e1 x2^e2 + ...`, leading (largest graded-lex) term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                write!(f, "{c}")?;
            } else if c.is_negative() {
                write!(f, " - {}", c.abs())?;
            } else {
                write!(f, " + {c}")?;
            }
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(v, e)| format!("x{}^{e}", v + 1))
                .collect();
            if !factors.is_empty() {
                write!(f, " * {}", factors.join(" "))?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    /// `[[coeff, [exponents]], ...]` in the same order as the text form.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in self.terms.iter().rev() {
            let coeff = match c.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(c.to_string()),
            };
            seq.serialize_element(&(coeff, m.exponents()))?;
        }
        seq.end()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("arity mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("arity mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("arity mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-BigInt::one())
    }
}
