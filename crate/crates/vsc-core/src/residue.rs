//! Residues at the origin of one variable of a rational function.
//!
//! `residue_at_zero(f, var)` returns the coefficient of var^{-1} in the
//! Laurent expansion of f around var = 0, as a rational function of the
//! remaining variables. The denominator is split as var^M * Q with
//! Q(0) != 0 along var; 1/Q is expanded factor by factor as a truncated
//! geometric series, so the answer's denominator stays a product of the
//! factors' var = 0 restrictions. That closure property is what lets the
//! iterated chains downstream run entirely inside factored arithmetic.
//!
//! The expansion of a factor g = B + H (B = g at var = 0, every term of H
//! divisible by var), inverted to order T with the overshoot denominator
//! made explicit, is
//!
//!   B^{m+T} / g^m  =  sum_{j=0..T} C(m-1+j, j) (-H)^j B^{T-j}  (mod var^{T+1})
//!
//! which is a polynomial identity, keeping everything exact.
//!
//! `VSC_MAX_TERMS` (environment) caps the term count of intermediate
//! products; exceeding it aborts with `ResidueError::TermBudget` instead
//! of exhausting memory.


use thiserror::Error;

use crate::poly::SparsePoly;
use crate::ratfn::{RatFnError, RationalFn};
use crate::rational::binomial;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResidueError {
    #[error("pole at {var} = 0 is not isolated: factor {factor} vanishes identically at {var} = 0")]
    NonIsolatedPole { var: String, factor: String },
    #[error("intermediate expansion reached {terms} terms, over the VSC_MAX_TERMS cap of {cap}")]
    TermBudget { terms: usize, cap: usize },
    #[error(transparent)]
    RatFn(#[from] RatFnError),
}

fn term_cap() -> Option<usize> {
    std::env::var("VSC_MAX_TERMS").ok().and_then(|s| s.parse().ok())
}

fn check_cap(n: usize, cap: Option<usize>) -> Result<(), ResidueError> {
    match cap {
        Some(c) if n > c => Err(ResidueError::TermBudget { terms: n, cap: c }),
        _ => Ok(()),
    }
}

/// Coefficient of var^{-1} in the Laurent expansion of `f` around var = 0.
/// The intermediate-term cap is read from `VSC_MAX_TERMS`.
pub fn residue_at_zero(f: &RationalFn, var: &str) -> Result<RationalFn, ResidueError> {
    residue_at_zero_with_cap(f, var, term_cap())
}

/// `residue_at_zero` with an explicit intermediate-term cap.
pub fn residue_at_zero_with_cap(
    f: &RationalFn,
    var: &str,
    cap: Option<usize>,
) -> Result<RationalFn, ResidueError> {
    if f.num().is_zero() {
        return Ok(RationalFn::zero());
    }

    // Split the denominator into var^pole_order, factors to expand, and
    // factors not involving var at all.
    let mut pole_order: u32 = 0;
    let mut expand: Vec<(SparsePoly, u32)> = Vec::new();
    let mut rest: Vec<(SparsePoly, u32)> = Vec::new();
    for (g, m) in f.den_factors() {
        if g.degree_in(var) == 0 {
            rest.push((g.clone(), *m));
            continue;
        }
        let (a, h) = g.split_var_power(var);
        pole_order += a * m;
        if h.is_one() {
            continue;
        }
        if h.degree_in(var) == 0 {
            rest.push((h, *m));
        } else {
            if h.substitute_zero(var).is_zero() {
                // unreachable after splitting off the var power; defensive
                return Err(ResidueError::NonIsolatedPole {
                    var: var.to_string(),
                    factor: g.to_string(),
                });
            }
            expand.push((h, *m));
        }
    }

    if pole_order == 0 {
        return Ok(RationalFn::zero());
    }
    let t_order = pole_order - 1;

    // Truncate the numerator to var-degree <= T.
    let mut running = {
        let mut acc = SparsePoly::zero();
        let v = SparsePoly::var(var);
        for (i, slice) in f.num().by_var_degree(var).into_iter().enumerate() {
            if i as u32 > t_order {
                break;
            }
            if !slice.is_zero() {
                acc = &acc + &(&slice * &v.pow(i as u32));
            }
        }
        acc
    };

    // Multiply in each factor's truncated inverse, tracking the overshoot
    // denominators B^{m+T} for the final assembly.
    let mut out_dens: Vec<(SparsePoly, u32)> = rest;
    for (g, m) in &expand {
        let b = g.substitute_zero(var);
        let h = g - &b;
        let mut series = SparsePoly::zero();
        let mut h_pow = SparsePoly::one(); // (-H)^j, truncated
        let neg_h = h.neg();
        for j in 0..=t_order {
            if j > 0 {
                h_pow = h_pow.mul_truncated_in(&neg_h, var, t_order);
                if h_pow.is_zero() {
                    break;
                }
            }
            let c = binomial(u64::from(*m) - 1 + u64::from(j), u64::from(j));
            let term = &h_pow * &b.pow(t_order - j);
            series = &series + &term.scale(&c);
            check_cap(series.num_terms(), cap)?;
        }
        running = running.mul_truncated_in(&series, var, t_order);
        check_cap(running.num_terms(), cap)?;
        if running.is_zero() {
            return Ok(RationalFn::zero());
        }
        out_dens.push((b, m + t_order));
    }

    let res_num = running.coefficient_of(var, t_order);
    let mut out = RationalFn::from_poly(res_num);
    for (b, m) in &out_dens {
        out.push_den_factor(b, *m)?;
    }
    Ok(out.reduce())
}

/// Integral over CP^{n-1} in the hyperplane-class variable `var`:
/// extracts the var^{n-1} coefficient, i.e. the residue of f * var^{-n}.
pub fn projective_integral(
    f: &RationalFn,
    var: &str,
    n: u32,
) -> Result<RationalFn, ResidueError> {
    let mut g = f.clone();
    g.push_den_factor(&SparsePoly::var(var), n)?;
    residue_at_zero(&g, var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn u() -> SparsePoly {
        SparsePoly::var("u")
    }

    #[test]
    fn simple_pole_reads_off_numerator() {
        // res 1/u = 1
        let f = RationalFn::new(SparsePoly::one(), u()).unwrap();
        assert_eq!(residue_at_zero(&f, "u").unwrap(), RationalFn::one());
    }

    #[test]
    fn pole_pair_gives_minus_inverse() {
        // res 1/(u(u-a)) = -1/a
        let a = SparsePoly::var("a");
        let mut f = RationalFn::from_poly(SparsePoly::one());
        f.push_den_factor(&u(), 1).unwrap();
        f.push_den_factor(&(&u() - &a), 1).unwrap();
        let r = residue_at_zero(&f, "u").unwrap();
        let expect = RationalFn::new(SparsePoly::constant(rat(-1)), a).unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn double_pole_picks_linear_coefficient() {
        // res (c0 + c1 u + c2 u^2)/u^2 = c1
        let num = &(&SparsePoly::var("c0")
            + &(&SparsePoly::var("c1") * &u()))
            + &(&SparsePoly::var("c2") * &u().pow(2));
        let mut f = RationalFn::from_poly(num);
        f.push_den_factor(&u(), 2).unwrap();
        let r = residue_at_zero(&f, "u").unwrap();
        assert_eq!(r, RationalFn::from_poly(SparsePoly::var("c1")));
    }

    #[test]
    fn no_pole_means_zero_residue() {
        let f = RationalFn::from_poly(&u().pow(3) + &SparsePoly::one());
        assert_eq!(residue_at_zero(&f, "u").unwrap(), RationalFn::zero());
        let g = RationalFn::new(SparsePoly::one(), &u() - &SparsePoly::var("a")).unwrap();
        assert_eq!(residue_at_zero(&g, "u").unwrap(), RationalFn::zero());
    }

    #[test]
    fn higher_order_pole_with_offset_factor() {
        // res u^{-2}/(u - a) = -1/a^2: expansion 1/(u-a) = -1/a - u/a^2 - ...
        let mut f = RationalFn::from_poly(SparsePoly::one());
        f.push_den_factor(&u(), 2).unwrap();
        f.push_den_factor(&(&u() - &SparsePoly::var("a")), 1).unwrap();
        let r = residue_at_zero(&f, "u").unwrap();
        let mut expect = RationalFn::from_poly(SparsePoly::constant(rat(-1)));
        expect.push_den_factor(&SparsePoly::var("a"), 2).unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn residue_is_a_rational_function_of_spectators() {
        // res_u  1/(u^2 (u - z - w)) = -1/(z+w)^2
        let zw = &SparsePoly::var("z") + &SparsePoly::var("w");
        let mut f = RationalFn::from_poly(SparsePoly::one());
        f.push_den_factor(&u(), 2).unwrap();
        f.push_den_factor(&(&u() - &zw), 1).unwrap();
        let r = residue_at_zero(&f, "u").unwrap();
        let mut expect = RationalFn::from_poly(SparsePoly::constant(rat(-1)));
        expect.push_den_factor(&zw, 2).unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn projective_integral_is_top_coefficient_extraction() {
        // over CP^1: integral of h = 1, integral of 1 or h^2 = 0
        let h = SparsePoly::var("h");
        let int = |p: &SparsePoly| {
            projective_integral(&RationalFn::from_poly(p.clone()), "h", 2).unwrap()
        };
        assert_eq!(int(&h), RationalFn::one());
        assert_eq!(int(&SparsePoly::one()), RationalFn::zero());
        assert_eq!(int(&h.pow(2)), RationalFn::zero());
        // eta-style value: integral over CP^1 of h^0 / ((1+z h)(1-3h)) = 3 - z
        let z = SparsePoly::var("z");
        let one_plus_zh = &SparsePoly::one() + &(&z * &h);
        let one_minus_3h = &SparsePoly::one() - &h.scale(&rat(3));
        let mut f = RationalFn::from_poly(SparsePoly::one());
        f.push_den_factor(&one_plus_zh, 1).unwrap();
        f.push_den_factor(&one_minus_3h, 1).unwrap();
        let r = projective_integral(&f, "h", 2).unwrap();
        let expect = RationalFn::from_poly(&SparsePoly::constant(rat(3)) - &z);
        assert_eq!(r, expect);
    }

    #[test]
    fn term_budget_aborts_large_expansions() {
        let big = &(&SparsePoly::var("a") + &SparsePoly::var("b"))
            + &(&SparsePoly::var("c") * &u());
        let mut f = RationalFn::from_poly(SparsePoly::one());
        f.push_den_factor(&u(), 3).unwrap();
        f.push_den_factor(&(&u() - &big), 2).unwrap();
        let r = residue_at_zero_with_cap(&f, "u", Some(2));
        assert!(matches!(r, Err(ResidueError::TermBudget { .. })));
        assert!(residue_at_zero_with_cap(&f, "u", None).is_ok());
    }

    #[test]
    fn binomial_coefficients_in_multiplicity_expansion() {
        // res u^{-1}/(u-1)^3 = -1 ; res u^{-2}/(u-1)^3 = -3
        let um1 = &u() - &SparsePoly::one();
        let mut f1 = RationalFn::from_poly(SparsePoly::one());
        f1.push_den_factor(&u(), 1).unwrap();
        f1.push_den_factor(&um1, 3).unwrap();
        assert_eq!(
            residue_at_zero(&f1, "u").unwrap(),
            RationalFn::from_scalar(rat(-1))
        );
        let mut f2 = RationalFn::from_poly(SparsePoly::one());
        f2.push_den_factor(&u(), 2).unwrap();
        f2.push_den_factor(&um1, 3).unwrap();
        assert_eq!(
            residue_at_zero(&f2, "u").unwrap(),
            RationalFn::from_scalar(rat(-3))
        );
    }

    #[test]
    fn rational_scalars_survive_the_pipeline() {
        // res (1/2) / (u (2u - 3)) = -1/6
        let mut f = RationalFn::from_poly(SparsePoly::constant(frac(1, 2)));
        f.push_den_factor(&u(), 1).unwrap();
        f.push_den_factor(
            &(&u().scale(&rat(2)) - &SparsePoly::constant(rat(3))),
            1,
        )
        .unwrap();
        assert_eq!(
            residue_at_zero(&f, "u").unwrap(),
            RationalFn::from_scalar(frac(-1, 6))
        );
    }
}
