//! Sparse multivariate polynomials over exact rationals.
//!
//! Representation and ordering:
//! - variables are identified by name and kept in ascending string order,
//!   which fixes the term order globally without any shared registry;
//! - terms live in a `BTreeMap` keyed by exponent vectors compared
//!   total-degree-first, then lexicographically (deglex), so iteration
//!   order, leading terms, and all derived output are deterministic;
//! - the representation is canonical: no zero coefficients, and variables
//!   that no longer occur are projected away. Structural equality is
//!   therefore semantic equality.
//!
//! Exact division is ordinary deglex long division that fails fast on the
//! first non-divisible leading term; it is the workhorse behind rational
//! function reduction, where denominators are products of low-degree forms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Exponent vector ordered total-degree-first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(other: &Monomial, div: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&div.0).map(|(b, a)| b - a).collect())
    }

    fn product(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        SparsePoly { vars: Vec::new(), terms }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rational::one());
        SparsePoly { vars: vec![name.to_string()], terms }
    }

    /// c0 + sum of coeff * var over `parts`.
    pub fn linear_form(parts: &[(Rational, &str)], constant: Rational) -> Self {
        let mut acc = SparsePoly::constant(constant);
        for (c, v) in parts {
            acc = &acc + &SparsePoly::var(v).scale(c);
        }
        acc
    }

    /// Single term `c * prod v^e`. Repeated names accumulate exponents.
    pub fn monomial(parts: &[(&str, u32)], c: Rational) -> Self {
        let mut acc = SparsePoly::constant(c);
        for (v, e) in parts {
            acc = &acc * &SparsePoly::var(v).pow(*e);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_value().map_or(false, |c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// The value if the polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            None => 0,
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
        }
    }

    fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// Largest term under deglex.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.leading().map(|(_, c)| c)
    }

    fn normalized(vars: Vec<String>, mut terms: BTreeMap<Monomial, Rational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        if terms.is_empty() {
            return SparsePoly::zero();
        }
        let used: Vec<usize> = (0..vars.len())
            .filter(|&i| terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if used.len() == vars.len() {
            return SparsePoly { vars, terms };
        }
        let new_vars: Vec<String> = used.iter().map(|&i| vars[i].clone()).collect();
        let new_terms = terms
            .into_iter()
            .map(|(m, c)| (Monomial(used.iter().map(|&i| m.0[i]).collect()), c))
            .collect();
        SparsePoly { vars: new_vars, terms: new_terms }
    }

    /// Merged variable list plus index maps from each operand into it.
    fn unify(a: &SparsePoly, b: &SparsePoly) -> (Vec<String>, Vec<usize>, Vec<usize>) {
        let mut vars: Vec<String> = a.vars.iter().chain(b.vars.iter()).cloned().collect();
        vars.sort();
        vars.dedup();
        let map = |p: &SparsePoly| -> Vec<usize> {
            p.vars
                .iter()
                .map(|v| vars.binary_search(v).expect("merged list contains operand vars"))
                .collect()
        };
        let (ma, mb) = (map(a), map(b));
        (vars, ma, mb)
    }

    fn remap(m: &Monomial, map: &[usize], arity: usize) -> Monomial {
        let mut e = vec![0u32; arity];
        for (i, &x) in m.0.iter().enumerate() {
            e[map[i]] = x;
        }
        Monomial(e)
    }

    pub fn neg(&self) -> Self {
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = SparsePoly::one();
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

    /// Product keeping only terms with degree in `var` at most `maxdeg`.
    pub fn mul_truncated_in(&self, other: &SparsePoly, var: &str, maxdeg: u32) -> SparsePoly {
        let (vars, ma, mb) = Self::unify(self, other);
        let vi = vars.binary_search(&var.to_string()).ok();
        let arity = vars.len();
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            let m1 = Self::remap(m1, &ma, arity);
            let d1 = vi.map_or(0, |i| m1.0[i]);
            if d1 > maxdeg {
                continue;
            }
            for (m2, c2) in &other.terms {
                let m2 = Self::remap(m2, &mb, arity);
                if let Some(i) = vi {
                    if d1 + m2.0[i] > maxdeg {
                        continue;
                    }
                }
                let m = m1.product(&m2);
                let c = c1 * c2;
                match terms.entry(m) {
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
        }
        Self::normalized(vars, terms)
    }

    /// Exact quotient, or None if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &SparsePoly) -> Option<SparsePoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(SparsePoly::zero());
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&(Rational::one() / c)));
        }
        let (vars, ma, mb) = Self::unify(self, divisor);
        let arity = vars.len();
        let mut rem: BTreeMap<Monomial, Rational> = self
            .terms
            .iter()
            .map(|(m, c)| (Self::remap(m, &ma, arity), c.clone()))
            .collect();
        let div: Vec<(Monomial, Rational)> = divisor
            .terms
            .iter()
            .map(|(m, c)| (Self::remap(m, &mb, arity), c.clone()))
            .collect();
        let (dlt, dlc) = div.last().expect("nonzero divisor").clone();
        let mut quo: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((rlt, rlc)) = rem.last_key_value() {
            if !dlt.divides(rlt) {
                return None;
            }
            let qm = Monomial::quotient(rlt, &dlt);
            let qc = rlc / &dlc;
            for (m, c) in &div {
                let key = m.product(&qm);
                let delta = c * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quo.insert(qm, qc);
        }
        Some(Self::normalized(vars, quo))
    }

    /// Positive gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            Rational::zero()
        } else {
            Rational::new(num_gcd, den_lcm)
        }
    }

    /// Writes `self = scale * primitive` with `primitive` having coprime
    /// integer coefficients and a positive leading coefficient.
    /// The zero polynomial yields `(0, 0)`.
    pub fn primitive_parts(&self) -> (Rational, SparsePoly) {
        if self.is_zero() {
            return (Rational::zero(), SparsePoly::zero());
        }
        let mut scale = self.content();
        if self.leading_coeff().expect("nonzero").is_negative() {
            scale = -scale;
        }
        let inv = Rational::one() / &scale;
        (scale, self.scale(&inv))
    }

    /// True when every term has total degree `degree` in the given subset
    /// of variables. The zero polynomial is homogeneous of every degree.
    pub fn is_homogeneous(&self, vars: &[&str], degree: u64) -> bool {
        let idx: Vec<Option<usize>> = vars.iter().map(|v| self.var_index(v)).collect();
        self.terms.keys().all(|m| {
            let d: u64 = idx.iter().flatten().map(|&i| u64::from(m.0[i])).sum();
            d == degree
        })
    }

    /// Coefficient slices by degree in `var`, with `var` projected out.
    /// Index i holds the coefficient of var^i; length is degree_in(var)+1.
    pub fn by_var_degree(&self, var: &str) -> Vec<SparsePoly> {
        let deg = self.degree_in(var) as usize;
        let mut slices: Vec<BTreeMap<Monomial, Rational>> = vec![BTreeMap::new(); deg + 1];
        match self.var_index(var) {
            None => {
                if !self.is_zero() {
                    slices[0] = self.terms.clone();
                }
                let vars = self.vars.clone();
                slices
                    .into_iter()
                    .map(|t| Self::normalized(vars.clone(), t))
                    .collect()
            }
            Some(vi) => {
                let rest_vars: Vec<String> = self
                    .vars
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != vi)
                    .map(|(_, v)| v.clone())
                    .collect();
                for (m, c) in &self.terms {
                    let d = m.0[vi] as usize;
                    let mut e = m.0.clone();
                    e.remove(vi);
                    slices[d].insert(Monomial(e), c.clone());
                }
                slices
                    .into_iter()
                    .map(|t| Self::normalized(rest_vars.clone(), t))
                    .collect()
            }
        }
    }

    /// Coefficient of var^power, with `var` projected out.
    pub fn coefficient_of(&self, var: &str, power: u32) -> SparsePoly {
        let slices = self.by_var_degree(var);
        slices.into_iter().nth(power as usize).unwrap_or_else(SparsePoly::zero)
    }

    pub fn substitute_zero(&self, var: &str) -> SparsePoly {
        self.coefficient_of(var, 0)
    }

    /// Substitute a polynomial for a variable.
    pub fn substitute(&self, var: &str, value: &SparsePoly) -> SparsePoly {
        if self.var_index(var).is_none() {
            return self.clone();
        }
        let slices = self.by_var_degree(var);
        let mut acc = SparsePoly::zero();
        let mut p = SparsePoly::one();
        for (i, s) in slices.into_iter().enumerate() {
            if i > 0 {
                p = &p * value;
            }
            if !s.is_zero() {
                acc = &acc + &(&s * &p);
            }
        }
        acc
    }

    /// Smallest power of `var` dividing every term, and the cofactor.
    pub fn split_var_power(&self, var: &str) -> (u32, SparsePoly) {
        if self.is_zero() {
            return (0, SparsePoly::zero());
        }
        match self.var_index(var) {
            None => (0, self.clone()),
            Some(vi) => {
                let m = self.terms.keys().map(|m| m.0[vi]).min().unwrap_or(0);
                if m == 0 {
                    return (0, self.clone());
                }
                let terms = self
                    .terms
                    .iter()
                    .map(|(mo, c)| {
                        let mut e = mo.0.clone();
                        e[vi] -= m;
                        (Monomial(e), c.clone())
                    })
                    .collect();
                (m, Self::normalized(self.vars.clone(), terms))
            }
        }
    }

    /// Evaluate with every variable assigned.
    pub fn eval(&self, assign: &BTreeMap<String, Rational>) -> Option<Rational> {
        let vals: Vec<&Rational> = self
            .vars
            .iter()
            .map(|v| assign.get(v))
            .collect::<Option<Vec<_>>>()?;
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= vals[i];
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// Terms as `{"exponents": [...], "coeff": "p/q"}` objects in deglex order.
    pub fn to_json_terms(&self) -> serde_json::Value {
        let arr: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                serde_json::json!({
                    "exponents": m.0,
                    "coeff": c.to_string(),
                })
            })
            .collect();
        serde_json::Value::Array(arr)
    }
}

impl std::ops::Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, other: &SparsePoly) -> SparsePoly {
        let (vars, ma, mb) = SparsePoly::unify(self, other);
        let arity = vars.len();
        let mut terms: BTreeMap<Monomial, Rational> = self
            .terms
            .iter()
            .map(|(m, c)| (SparsePoly::remap(m, &ma, arity), c.clone()))
            .collect();
        for (m, c) in &other.terms {
            let key = SparsePoly::remap(m, &mb, arity);
            match terms.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        SparsePoly::normalized(vars, terms)
    }
}

impl std::ops::Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, other: &SparsePoly) -> SparsePoly {
        self + &other.neg()
    }
}

impl std::ops::Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, other: &SparsePoly) -> SparsePoly {
        if self.is_zero() || other.is_zero() {
            return SparsePoly::zero();
        }
        let (vars, ma, mb) = SparsePoly::unify(self, other);
        let arity = vars.len();
        let a: Vec<(Monomial, &Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| (SparsePoly::remap(m, &ma, arity), c))
            .collect();
        let b: Vec<(Monomial, &Rational)> = other
            .terms
            .iter()
            .map(|(m, c)| (SparsePoly::remap(m, &mb, arity), c))
            .collect();
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &a {
            for (m2, c2) in &b {
                let m = m1.product(m2);
                let c = *c1 * *c2;
                match terms.entry(m) {
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
        }
        SparsePoly::normalized(vars, terms)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.total_degree() == 0 {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn zw(c: i64, ze: u32, we: u32) -> SparsePoly {
        SparsePoly::monomial(&[("z", ze), ("w", we)], rat(c))
    }

    #[test]
    fn difference_of_squares_expands() {
        let z = SparsePoly::var("z");
        let w = SparsePoly::var("w");
        let lhs = &(&z + &w) * &(&z - &w);
        let rhs = &zw(1, 2, 0) - &zw(1, 0, 2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn quadratic_expansion_matches_hand_result() {
        // 3(w+2)(2w+1) = 6w^2 + 15w + 6
        let w = SparsePoly::var("w");
        let p = &(&w + &SparsePoly::constant(rat(2)))
            * &(&w.scale(&rat(2)) + &SparsePoly::one());
        let p = p.scale(&rat(3));
        let expected = &(&SparsePoly::monomial(&[("w", 2)], rat(6))
            + &SparsePoly::monomial(&[("w", 1)], rat(15)))
            + &SparsePoly::constant(rat(6));
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "6*w^2 + 15*w + 6");
    }

    #[test]
    fn deglex_leading_term() {
        // total degree decides first; ties break lexicographically with the
        // alphabetically earliest variable most significant, so w^2 > z^2.
        let p = &(&zw(1, 2, 0) + &zw(5, 1, 0)) + &zw(2, 0, 2);
        let (m, c) = p.leading().unwrap();
        assert_eq!(m.0, vec![2, 0]); // vars are [w, z], so w^2 = (2, 0)
        assert_eq!(c, &rat(2));
        assert_eq!(p.total_degree(), Some(2));
    }

    #[test]
    fn unused_variables_are_projected() {
        let z = SparsePoly::var("z");
        let w = SparsePoly::var("w");
        let p = &(&z + &w) - &w;
        assert_eq!(p, z);
        assert_eq!(p.vars(), &["z".to_string()]);
    }

    #[test]
    fn exact_division_succeeds_and_fails_correctly() {
        let z = SparsePoly::var("z");
        let w = SparsePoly::var("w");
        let num = &zw(1, 2, 0) - &zw(1, 0, 2);
        let q = num.exact_div(&(&z - &w)).unwrap();
        assert_eq!(q, &z + &w);
        assert!(num.exact_div(&(&z + &SparsePoly::one())).is_none());
        // multivariate with rational scalars
        let d = SparsePoly::linear_form(&[(rat(2), "z"), (rat(3), "w")], rat(0));
        let n = &d * &d;
        assert_eq!(n.exact_div(&d).unwrap(), d);
    }

    #[test]
    fn content_and_primitive_parts() {
        // 6z - 9w: content 3, and the leading term under deglex is the w
        // term (w is more significant), so the sign normalizes against -9.
        let p = &zw(6, 1, 0) + &zw(-9, 0, 1);
        assert_eq!(p.content(), rat(3));
        let (s, prim) = p.primitive_parts();
        assert_eq!(s, rat(-3));
        assert_eq!(prim, &zw(-2, 1, 0) + &zw(3, 0, 1));
        let q = p.neg();
        let (s2, prim2) = q.primitive_parts();
        assert_eq!(s2, rat(3));
        assert_eq!(prim2, prim);
        let r = zw(1, 1, 0).scale(&frac(2, 3));
        assert_eq!(r.content(), frac(2, 3));
    }

    #[test]
    fn homogeneity_checks_the_named_subset() {
        let p = &zw(6, 2, 0) + &(&zw(15, 1, 1) + &zw(6, 0, 2));
        assert!(p.is_homogeneous(&["z", "w"], 2));
        assert!(!p.is_homogeneous(&["z"], 2));
        assert!(SparsePoly::zero().is_homogeneous(&["z"], 17));
        let q = &p * &SparsePoly::var("s");
        assert!(q.is_homogeneous(&["z", "w"], 2));
    }

    #[test]
    fn var_degree_slices_and_substitution() {
        let p = &(&zw(2, 2, 1) + &zw(3, 1, 0)) + &zw(7, 0, 2);
        let slices = p.by_var_degree("z");
        assert_eq!(slices.len(), 3);
        assert_eq!(slices[0], SparsePoly::monomial(&[("w", 2)], rat(7)));
        assert_eq!(slices[1], SparsePoly::constant(rat(3)));
        assert_eq!(slices[2], SparsePoly::var("w").scale(&rat(2)));
        assert_eq!(p.substitute_zero("z"), slices[0]);
        // swap z and w via substitution through a temporary
        let swapped = p
            .substitute("z", &SparsePoly::var("tmp"))
            .substitute("w", &SparsePoly::var("z"))
            .substitute("tmp", &SparsePoly::var("w"));
        let expected = &(&zw(2, 1, 2) + &zw(3, 0, 1)) + &zw(7, 2, 0);
        assert_eq!(swapped, expected);
    }

    #[test]
    fn split_var_power_extracts_content() {
        let p = &zw(1, 3, 1) + &zw(2, 2, 2);
        let (m, rest) = p.split_var_power("z");
        assert_eq!(m, 2);
        assert_eq!(rest, &zw(1, 1, 1) + &zw(2, 0, 2));
        let (mw, _) = p.split_var_power("w");
        assert_eq!(mw, 1);
    }

    #[test]
    fn truncated_product_drops_high_degrees() {
        let p = &zw(1, 0, 0) + &zw(1, 1, 0); // 1 + z
        let q = p.pow(3); // 1 + 3z + 3z^2 + z^3
        let t = p.mul_truncated_in(&q, "z", 2);
        let full = &p * &q;
        let mut expect = SparsePoly::zero();
        for (i, s) in full.by_var_degree("z").into_iter().enumerate().take(3) {
            expect = &expect + &(&s * &SparsePoly::var("z").pow(i as u32));
        }
        assert_eq!(t, expect);
    }

    #[test]
    fn eval_agrees_with_expansion() {
        let p = &zw(2, 2, 1) + &zw(-5, 0, 3);
        let mut a = BTreeMap::new();
        a.insert("z".to_string(), frac(1, 2));
        a.insert("w".to_string(), rat(-3));
        // 2*(1/4)*(-3) - 5*(-27) = -3/2 + 135
        assert_eq!(p.eval(&a).unwrap(), frac(267, 2));
    }
}
