//! Reduced rational functions num/den over the sparse polynomial ring.
//!
//! The denominator is kept as a multiset of factors, each normalized to
//! coprime integer coefficients with a positive leading coefficient under
//! the global term order (normalization scalars fold into the numerator).
//! Since a product of such primitive factors is again primitive with a
//! positive leading coefficient, the expanded denominator automatically
//! carries the sign convention the crate promises.
//!
//! Keeping factors separate is what makes the iterated-residue pipeline
//! tractable: every denominator that ever appears downstream is a product
//! of forms of degree at most one in each chain variable, so `reduce`
//! only needs exact trial division against known factors, never a general
//! multivariate gcd.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::SparsePoly;
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatFnError {
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("substitution sends denominator factor {factor} to zero")]
    DenominatorVanishes { factor: String },
}

/// Rational function with a factored, sign-normalized denominator.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: SparsePoly,
    den: Vec<(SparsePoly, u32)>,
}

impl RationalFn {
    pub fn zero() -> Self {
        RationalFn { num: SparsePoly::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        RationalFn::from_poly(SparsePoly::one())
    }

    pub fn from_poly(num: SparsePoly) -> Self {
        RationalFn { num, den: Vec::new() }
    }

    pub fn from_scalar(c: Rational) -> Self {
        RationalFn::from_poly(SparsePoly::constant(c))
    }

    pub fn new(num: SparsePoly, den: SparsePoly) -> Result<Self, RatFnError> {
        let mut f = RationalFn::from_poly(num);
        f.push_den_factor(&den, 1)?;
        Ok(f.reduce())
    }

    pub fn num(&self) -> &SparsePoly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(SparsePoly, u32)] {
        &self.den
    }

    /// Expanded denominator (primitive with positive leading coefficient).
    pub fn den(&self) -> SparsePoly {
        let mut acc = SparsePoly::one();
        for (f, m) in &self.den {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&SparsePoly> {
        self.den.is_empty().then_some(&self.num)
    }

    /// Divide by `factor^mult`, folding the factor's content into the
    /// numerator and merging it into the sorted factor list.
    pub fn push_den_factor(&mut self, factor: &SparsePoly, mult: u32) -> Result<(), RatFnError> {
        if factor.is_zero() {
            return Err(RatFnError::ZeroDenominator);
        }
        if mult == 0 {
            return Ok(());
        }
        let (scale, prim) = factor.primitive_parts();
        let inv = Rational::one() / scale;
        let mut adjust = Rational::one();
        for _ in 0..mult {
            adjust *= &inv;
        }
        self.num = self.num.scale(&adjust);
        if prim.is_one() {
            return Ok(());
        }
        if self.num.is_zero() {
            self.den.clear();
            return Ok(());
        }
        match self.den.binary_search_by(|(f, _)| cmp_poly(f, &prim)) {
            Ok(i) => self.den[i].1 += mult,
            Err(i) => self.den.insert(i, (prim, mult)),
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        RationalFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RationalFn::zero();
        }
        RationalFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &SparsePoly) -> Self {
        if p.is_zero() {
            return RationalFn::zero();
        }
        RationalFn { num: &self.num * p, den: self.den.clone() }
    }

    pub fn mul(&self, other: &RationalFn) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return RationalFn::zero();
        }
        let mut den = self.den.clone();
        for (f, m) in &other.den {
            match den.binary_search_by(|(g, _)| cmp_poly(g, f)) {
                Ok(i) => den[i].1 += m,
                Err(i) => den.insert(i, (f.clone(), *m)),
            }
        }
        RationalFn { num: &self.num * &other.num, den }
    }

    pub fn add(&self, other: &RationalFn) -> Self {
        if self.num.is_zero() {
            return other.clone();
        }
        if other.num.is_zero() {
            return self.clone();
        }
        // union denominator with factor-wise maximal multiplicities
        let mut union = self.den.clone();
        for (f, m) in &other.den {
            match union.binary_search_by(|(g, _)| cmp_poly(g, f)) {
                Ok(i) => union[i].1 = union[i].1.max(*m),
                Err(i) => union.insert(i, (f.clone(), *m)),
            }
        }
        let lift = |f: &RationalFn| -> SparsePoly {
            let mut n = f.num.clone();
            for (g, mu) in &union {
                let have = f
                    .den
                    .binary_search_by(|(h, _)| cmp_poly(h, g))
                    .map(|i| f.den[i].1)
                    .unwrap_or(0);
                if *mu > have {
                    n = &n * &g.pow(mu - have);
                }
            }
            n
        };
        let num = &lift(self) + &lift(other);
        RationalFn { num, den: union }.reduce()
    }

    pub fn sub(&self, other: &RationalFn) -> Self {
        self.add(&other.neg())
    }

    /// Cancel denominator factors that exactly divide the numerator.
    pub fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let mut den = Vec::with_capacity(self.den.len());
        for (f, mut m) in std::mem::take(&mut self.den) {
            while m > 0 {
                match self.num.exact_div(&f) {
                    Some(q) => {
                        self.num = q;
                        m -= 1;
                    }
                    None => break,
                }
            }
            if m > 0 {
                den.push((f, m));
            }
        }
        self.den = den;
        self
    }

    /// Substitute a polynomial for a variable in numerator and denominator.
    pub fn substitute(&self, var: &str, value: &SparsePoly) -> Result<Self, RatFnError> {
        let mut out = RationalFn::from_poly(self.num.substitute(var, value));
        for (f, m) in &self.den {
            let g = f.substitute(var, value);
            if g.is_zero() {
                return Err(RatFnError::DenominatorVanishes { factor: f.to_string() });
            }
            out.push_den_factor(&g, *m)?;
        }
        Ok(out)
    }

    /// Evaluate at a full assignment; None if a denominator factor vanishes
    /// or a variable is missing.
    pub fn eval(
        &self,
        assign: &std::collections::BTreeMap<String, Rational>,
    ) -> Option<Rational> {
        let mut v = self.num.eval(assign)?;
        for (f, m) in &self.den {
            let fv = f.eval(assign)?;
            if fv.is_zero() {
                return None;
            }
            for _ in 0..*m {
                v /= &fv;
            }
        }
        Some(v)
    }
}

fn cmp_poly(a: &SparsePoly, b: &SparsePoly) -> std::cmp::Ordering {
    a.vars().cmp(b.vars()).then_with(|| {
        let ta: Vec<_> = a.terms().collect();
        let tb: Vec<_> = b.terms().collect();
        ta.cmp(&tb)
    })
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den() == &other.num * &self.den()
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})", self.num)?;
        for (g, m) in &self.den {
            if *m == 1 {
                write!(f, " / ({})", g)?;
            } else {
                write!(f, " / ({})^{}", g, m)?;
            }
        }
        Ok(())
    }
}
