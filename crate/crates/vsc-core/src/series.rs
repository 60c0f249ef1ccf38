//! Truncated formal power series with polynomial coefficients.
//!
//! A [`PolySeries`] represents `sum_{d=0}^{T} c_d * q^d` where each `c_d` is a
//! [`SparsePoly`] and `q` is an abstract expansion symbol that never appears
//! inside the coefficients.  The same type serves two roles in this crate:
//!
//! * series in `e^x` (the coefficient of `e^{dx}` is a polynomial in formal
//!   seed variables and deformation parameters), where `d/dx` acts on the
//!   degree-`d` coefficient as multiplication by `d`;
//! * ordinary `q`-expansions of mirror-map and coupling data, where the
//!   coefficients are polynomials in deformation parameters.
//!
//! All binary operations truncate to the smaller of the two operand orders,
//! so precision is tracked automatically through a computation.

use crate::poly::SparsePoly;
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::fmt;

/// A polynomial-coefficient power series truncated at degree `trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySeries {
    trunc: u32,
    /// Coefficients for degrees `0..=trunc`; always exactly `trunc + 1` long.
    coeffs: Vec<SparsePoly>,
}

impl PolySeries {
    /// The zero series truncated at degree `trunc`.
    pub fn zero(trunc: u32) -> Self {
        PolySeries {
            trunc,
            coeffs: vec![SparsePoly::zero(); trunc as usize + 1],
        }
    }

    /// The constant series `1`.
    pub fn one(trunc: u32) -> Self {
        Self::constant(SparsePoly::one(), trunc)
    }

    /// A series whose only term is the given degree-zero coefficient.
    pub fn constant(c: SparsePoly, trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = c;
        s
    }

    /// The series `q^d` (zero if `d > trunc`).
    pub fn gen_power(d: u32, trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        if d <= trunc {
            s.coeffs[d as usize] = SparsePoly::one();
        }
        s
    }

    /// Builds a series from explicit coefficients, padding with zeros or
    /// dropping extra entries as needed.
    pub fn from_coeffs(mut coeffs: Vec<SparsePoly>, trunc: u32) -> Self {
        coeffs.truncate(trunc as usize + 1);
        coeffs.resize(trunc as usize + 1, SparsePoly::zero());
        PolySeries { trunc, coeffs }
    }

    /// Truncation order: coefficients are tracked for degrees `0..=trunc()`.
    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// The coefficient of `q^d`.  Panics if `d > trunc()`.
    pub fn coeff(&self, d: u32) -> &SparsePoly {
        &self.coeffs[d as usize]
    }

    /// All coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[SparsePoly] {
        &self.coeffs
    }

    /// Replaces the coefficient of `q^d`.  Panics if `d > trunc()`.
    pub fn set_coeff(&mut self, d: u32, c: SparsePoly) {
        self.coeffs[d as usize] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Re-truncates to a (usually lower) order.
    pub fn truncated(&self, trunc: u32) -> Self {
        Self::from_coeffs(self.coeffs.clone(), trunc)
    }

    /// Applies a function to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&SparsePoly) -> SparsePoly) -> Self {
        PolySeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coeffs(|p| p.scale(c))
    }

    /// Multiplies every coefficient by a fixed polynomial.
    pub fn mul_poly(&self, p: &SparsePoly) -> Self {
        self.map_coeffs(|c| c * p)
    }

    pub fn add(&self, other: &PolySeries) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let coeffs = (0..=trunc as usize)
            .map(|d| &self.coeffs[d] + &other.coeffs[d])
            .collect();
        PolySeries { trunc, coeffs }
    }

    pub fn sub(&self, other: &PolySeries) -> Self {
        self.add(&other.neg())
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &PolySeries) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut coeffs = vec![SparsePoly::zero(); trunc as usize + 1];
        for i in 0..=trunc as usize {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(trunc as usize - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        PolySeries { trunc, coeffs }
    }

    /// Multiplication by `q^j`: shifts every coefficient up, dropping overflow.
    pub fn shift(&self, j: u32) -> Self {
        let mut coeffs = vec![SparsePoly::zero(); self.trunc as usize + 1];
        if j <= self.trunc {
            for d in 0..=(self.trunc - j) {
                coeffs[(d + j) as usize] = self.coeffs[d as usize].clone();
            }
        }
        PolySeries {
            trunc: self.trunc,
            coeffs,
        }
    }

    /// For a series in `e^x`, applies `d/dx`: the degree-`d` coefficient is
    /// multiplied by `d`.
    pub fn derivative_x(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(d, c)| c.scale(&Rational::from_integer((d as i64).into())))
            .collect();
        PolySeries {
            trunc: self.trunc,
            coeffs,
        }
    }

    /// Multiplicative inverse.  Requires the constant coefficient to be a
    /// nonzero rational constant; returns `None` otherwise.
    pub fn inverse(&self) -> Option<Self> {
        let a0 = self.coeffs[0].constant_value()?;
        if a0.is_zero() {
            return None;
        }
        let inv0 = Rational::one() / a0;
        let mut coeffs = vec![SparsePoly::zero(); self.trunc as usize + 1];
        coeffs[0] = SparsePoly::constant(inv0.clone());
        for n in 1..=self.trunc as usize {
            let mut acc = SparsePoly::zero();
            for i in 1..=n {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[i] * &coeffs[n - i]);
            }
            coeffs[n] = acc.scale(&inv0).neg();
        }
        Some(PolySeries {
            trunc: self.trunc,
            coeffs,
        })
    }

    /// Exponential of a series with zero constant term, via the recurrence
    /// `n * e_n = sum_{i=1}^{n} i * s_i * e_{n-i}` obtained from `E' = S' E`.
    ///
    /// Returns `None` if the constant coefficient is nonzero.
    pub fn exp(&self) -> Option<Self> {
        if !self.coeffs[0].is_zero() {
            return None;
        }
        let mut coeffs = vec![SparsePoly::zero(); self.trunc as usize + 1];
        coeffs[0] = SparsePoly::one();
        for n in 1..=self.trunc as usize {
            let mut acc = SparsePoly::zero();
            for i in 1..=n {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                let weighted = self.coeffs[i].scale(&Rational::from_integer((i as i64).into()));
                acc = &acc + &(&weighted * &coeffs[n - i]);
            }
            coeffs[n] = acc.scale(&(Rational::one() / Rational::from_integer((n as i64).into())));
        }
        Some(PolySeries {
            trunc: self.trunc,
            coeffs,
        })
    }

    /// Composition `self(other)` where `other` has zero constant term, by
    /// Horner evaluation.  Returns `None` if `other` has a constant term.
    pub fn compose(&self, other: &PolySeries) -> Option<Self> {
        if !other.coeffs[0].is_zero() {
            return None;
        }
        let trunc = self.trunc.min(other.trunc);
        let mut acc = PolySeries::constant(self.coeffs[self.trunc as usize].clone(), trunc);
        for d in (0..self.trunc as usize).rev() {
            acc = acc
                .mul(&other.truncated(trunc))
                .add(&PolySeries::constant(self.coeffs[d].clone(), trunc));
        }
        Some(acc)
    }

    /// Compositional inverse of a series of the form `q + O(q^2)`: returns
    /// `g` with `self(g(Q)) = Q` up to the truncation order.
    ///
    /// Writing `self = q * U(q)` with `U(0) = 1`, the inverse satisfies the
    /// fixed point `g = Q / U(g)`; each iteration of that map gains one order
    /// of accuracy, so `trunc` rounds starting from `g = Q` suffice.
    ///
    /// Returns `None` unless the constant coefficient is zero and the linear
    /// coefficient is exactly `1`.
    pub fn revert(&self) -> Option<Self> {
        if self.trunc == 0 || !self.coeffs[0].is_zero() || !self.coeffs[1].is_one() {
            return None;
        }
        // U(q) = self / q, one degree shorter.
        let u = PolySeries::from_coeffs(self.coeffs[1..].to_vec(), self.trunc - 1);
        let q = PolySeries::gen_power(1, self.trunc);
        let mut g = q.clone();
        for _ in 0..self.trunc {
            let u_at_g = u.compose(&g.truncated(self.trunc - 1))?;
            let v = u_at_g.inverse()?;
            // g <- Q * V(g), re-padded to full order.
            g = PolySeries::from_coeffs(v.coeffs, self.trunc).shift(1);
            // Restore the exact linear term (shift keeps it, but be explicit
            // about the invariant the iteration relies on).
            debug_assert!(g.coeffs[1].is_one());
        }
        Some(g)
    }
}

impl fmt::Display for PolySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if d == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*q^{d}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc + 1)
    }
}
