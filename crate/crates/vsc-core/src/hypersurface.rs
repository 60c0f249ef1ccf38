//! Virtual structure constants of a degree-`k` hypersurface in `CP^{n-1}`.
//!
//! For each map degree `d` the constants form a finite table `L[0..=W]`
//! of rationals, where `W = n - 1 + (k - n) d` (the table is empty when
//! `W < 0`).  Two independent pipelines compute the same table:
//!
//! * [`recursion_tables`] — a combinatorial recursion on lower map degrees,
//!   seeded by the closed-form degree-1 table [`initial_vsc`];
//! * [`residue_table`] — a sum of iterated residues over ordered partitions
//!   of `d`, assembled from the edge factor [`edge_factor`].
//!
//! [`verify_conjecture`] runs both routes and reports exact agreement.

use crate::compositions::{compositions_of, Composition};
use crate::poly::SparsePoly;
use crate::ratfn::RationalFn;
use crate::rational::{rat, Rational};
use crate::residue::{residue_at_zero, ResidueError};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use thiserror::Error;

/// Ambient space `CP^{n-1}` and hypersurface degree `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HypersurfaceParams {
    /// Number of homogeneous coordinates of the ambient projective space
    /// (the base is `CP^{n-1}`); must be at least 2.
    pub n: u32,
    /// Degree of the hypersurface; must be at least 1.
    pub k: u32,
}

#[derive(Debug, Error)]
pub enum VscError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("residue failure at degree {d}, composition {composition}: {source}")]
    Residue {
        d: u32,
        composition: Composition,
        source: ResidueError,
    },
    #[error("residue sum at degree {d} is not a polynomial")]
    NonPolynomial { d: u32 },
    #[error("unexpected result shape at degree {d}: {detail}")]
    UnexpectedShape { d: u32, detail: String },
}

impl HypersurfaceParams {
    pub fn new(n: u32, k: u32) -> Result<Self, VscError> {
        if n < 2 {
            return Err(VscError::InvalidParams(format!(
                "ambient dimension parameter must be >= 2, got {n}"
            )));
        }
        if k < 1 {
            return Err(VscError::InvalidParams(format!(
                "hypersurface degree must be >= 1, got {k}"
            )));
        }
        Ok(HypersurfaceParams { n, k })
    }

    /// Highest index with a possibly nonzero structure constant at map
    /// degree `d`; the table is `L[0..=window]`, empty when negative.
    pub fn window(&self, d: u32) -> i64 {
        i64::from(self.n) - 1 + (i64::from(self.k) - i64::from(self.n)) * i64::from(d)
    }
}

/// One degree's structure constants: `values[m] = L[m]` for
/// `0 <= m <= window(d)`; an empty vector when the window is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VscTable {
    pub d: u32,
    pub values: Vec<Rational>,
}

/// Side of the chain the iterated residues start from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ResidueOrder {
    /// Innermost residue at the highest-index chain variable.
    #[default]
    Descending,
    /// Innermost residue at the lowest-index chain variable.
    Ascending,
}

// ---------------------------------------------------------------------------
// Dense univariate helpers for the recursion route.
//
// Polynomials in the single variable z are kept as little-endian coefficient
// vectors; trailing zeros are harmless.

type Dense = Vec<Rational>;

fn dense_add_into(acc: &mut Dense, b: &Dense) {
    if acc.len() < b.len() {
        acc.resize(b.len(), Rational::zero());
    }
    for (i, c) in b.iter().enumerate() {
        acc[i] += c;
    }
}

/// Multiplies by the linear form `c0 + c1 z`.
fn dense_mul_linear(a: &Dense, c0: &Rational, c1: &Rational) -> Dense {
    let mut out = vec![Rational::zero(); a.len() + 1];
    for (i, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out[i] += c * c0;
        out[i + 1] += c * c1;
    }
    out
}

fn dense_scale(a: &Dense, c: &Rational) -> Dense {
    a.iter().map(|x| x * c).collect()
}

fn dense_is_zero(a: &Dense) -> bool {
    a.iter().all(|c| c.is_zero())
}

// ---------------------------------------------------------------------------
// Degree-1 closed form.

/// The degree-1 table: coefficients of `k * prod_{j=1}^{k-1} (j w + (k - j))`
/// in ascending powers of `w`; always `k` entries and palindromic.
pub fn initial_vsc(p: &HypersurfaceParams) -> Vec<Rational> {
    let k = i64::from(p.k);
    let mut acc: Dense = vec![rat(k)];
    for j in 1..k {
        acc = dense_mul_linear(&acc, &rat(k - j), &rat(j));
    }
    acc
}

// ---------------------------------------------------------------------------
// Edge factor.

/// The edge factor `F_d` in the variables `zprev`, `znext`:
///
/// `k * prod_{j=1}^{d-1} (d / (j zprev + (d-j) znext))^n
///    * prod_{j=1}^{kd-1} ((j zprev + (kd-j) znext) / d)`.
///
/// Symmetric under swapping `zprev` and `znext`; for `d = 1` the first
/// product is empty and the result is the homogenized degree-1 table.
pub fn edge_factor(p: &HypersurfaceParams, d: u32, zprev: &str, znext: &str) -> RationalFn {
    assert!(d >= 1, "edge factor needs d >= 1");
    let kd = p.k * d;
    // Scalar prefactor: k * d^{n(d-1)} / d^{kd-1}.
    let db = BigInt::from(d);
    let scalar = Rational::new(
        BigInt::from(p.k) * db.pow(p.n * (d - 1)),
        db.pow(kd - 1),
    );
    let mut num = SparsePoly::constant(scalar);
    for j in 1..kd {
        num = &num
            * &SparsePoly::linear_form(
                &[(rat(i64::from(j)), zprev), (rat(i64::from(kd - j)), znext)],
                Rational::zero(),
            );
    }
    let mut f = RationalFn::from_poly(num);
    for j in 1..d {
        let form = SparsePoly::linear_form(
            &[(rat(i64::from(j)), zprev), (rat(i64::from(d - j)), znext)],
            Rational::zero(),
        );
        f.push_den_factor(&form, p.n)
            .expect("edge factor denominator is a nonzero linear form");
    }
    f
}

// ---------------------------------------------------------------------------
// Recursion route.

/// Looks up `L[idx]` in a previously computed table, with the convention
/// that out-of-window indices contribute zero.
fn lookup(tables: &[Vec<Rational>], dsub: u32, idx: i64) -> Option<Rational> {
    let table = &tables[dsub as usize];
    if idx < 0 || idx as usize >= table.len() {
        return None;
    }
    let v = &table[idx as usize];
    if v.is_zero() {
        None
    } else {
        Some(v.clone())
    }
}

/// Computes the structure-constant tables for all map degrees `1..=dmax`
/// by the recursion route.
///
/// For `d >= 2` the table is the coefficient list of
///
/// `sum_{l=2}^{d} (-1)^l
///  sum_{0 = i_0 < ... < i_l = d}
///  sum_{0 <= j_1 <= ... <= j_l <= W}
///  prod_{s=1}^{l} ((i_{s-1} + (d - i_{s-1}) z) / d)^{j_s - j_{s-1}}
///                 * L[j_s + (n - k) i_{s-1}]  at degree  i_s - i_{s-1}`
///
/// with `j_0 := 0` and out-of-window lookups contributing zero.  The index
/// chains `0 = i_0 < ... < i_l = d` are exactly the compositions of `d`
/// via their partial sums, and the `j`-chain sum telescopes into a linear
/// scan, so each composition costs `O(l W)` polynomial operations.
pub fn recursion_tables(p: &HypersurfaceParams, dmax: u32) -> Vec<VscTable> {
    // tables[d] is the dense value list for map degree d; index 0 unused.
    let mut tables: Vec<Vec<Rational>> = Vec::with_capacity(dmax as usize + 1);
    tables.push(Vec::new());
    if dmax >= 1 {
        tables.push(initial_vsc(p));
    }
    for d in 2..=dmax {
        let w = p.window(d);
        if w < 0 {
            tables.push(Vec::new());
            continue;
        }
        let wu = w as usize;
        let nk = i64::from(p.n) - i64::from(p.k);
        let mut rhs: Dense = vec![Rational::zero(); wu + 1];
        for comp in compositions_of(d) {
            let parts = comp.parts();
            let l = parts.len();
            if l == 1 {
                continue;
            }
            // f[j] accumulates, over chains with current top index j, the
            // product of linear-form powers and lower-degree lookups.
            let mut f: Vec<Dense> = vec![Vec::new(); wu + 1];
            f[0] = vec![Rational::one()];
            let mut i_prev: u32 = 0;
            for &delta in parts {
                // Linear form (i_prev + (d - i_prev) z) / d.
                let c0 = Rational::new(BigInt::from(i_prev), BigInt::from(d));
                let c1 = Rational::new(BigInt::from(d - i_prev), BigInt::from(d));
                // g[j] = sum_{j' <= j} f[j'] * form^{j - j'}.
                let mut g: Vec<Dense> = Vec::with_capacity(wu + 1);
                for j in 0..=wu {
                    let mut gj = if j == 0 {
                        Vec::new()
                    } else {
                        dense_mul_linear(&g[j - 1], &c0, &c1)
                    };
                    dense_add_into(&mut gj, &f[j]);
                    g.push(gj);
                }
                // Attach this step's structure constant.
                let mut next: Vec<Dense> = vec![Vec::new(); wu + 1];
                for (j, gj) in g.iter().enumerate() {
                    if dense_is_zero(gj) {
                        continue;
                    }
                    let idx = j as i64 + nk * i64::from(i_prev);
                    if let Some(c) = lookup(&tables, delta, idx) {
                        next[j] = dense_scale(gj, &c);
                    }
                }
                f = next;
                i_prev += delta;
            }
            let mut total: Dense = Vec::new();
            for fj in &f {
                dense_add_into(&mut total, fj);
            }
            if l % 2 == 1 {
                total = dense_scale(&total, &rat(-1));
            }
            dense_add_into(&mut rhs, &total);
        }
        debug_assert!(rhs.len() <= wu + 1 || rhs[wu + 1..].iter().all(|c| c.is_zero()));
        rhs.truncate(wu + 1);
        rhs.resize(wu + 1, Rational::zero());
        tables.push(rhs);
    }
    (1..=dmax)
        .map(|d| VscTable {
            d,
            values: std::mem::take(&mut tables[d as usize]),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Residue route.

/// Chain variable names `z, u1, ..., u{l-1}, w` for a length-`l` chain.
fn chain_vars(l: usize) -> Vec<String> {
    (0..=l)
        .map(|j| {
            if j == 0 {
                "z".to_string()
            } else if j == l {
                "w".to_string()
            } else {
                format!("u{j}")
            }
        })
        .collect()
}

/// The contribution of one ordered partition to the residue sum: the
/// iterated residue at `u_{l-1} = ... = u_1 = 0` (or ascending) of
///
/// `(1 / prod d_j) * prod_{j=1}^{l-1} u_j^{1-n} / ((u_j - u_{j-1})/d_j + (u_j - u_{j+1})/d_{j+1})
///                  * prod_{j=1}^{l} F_{d_j}(u_{j-1}, u_j)`
///
/// with `u_0 = z` and `u_l = w`.  Individual contributions are rational
/// functions; only the full sum over partitions is a polynomial.
fn residue_contribution(
    p: &HypersurfaceParams,
    d: u32,
    comp: &Composition,
    order: ResidueOrder,
) -> Result<RationalFn, VscError> {
    let parts = comp.parts();
    let l = parts.len();
    let vars = chain_vars(l);
    let err = |source: ResidueError| VscError::Residue {
        d,
        composition: comp.clone(),
        source,
    };

    // Scalar weight: the 1/prod d_j automorphism factor, together with the
    // d_j d_{j+1} rescaling that clears each smoothing denominator.
    let mut weight = Rational::one();
    for &dj in parts {
        weight /= rat(i64::from(dj));
    }
    for j in 1..l {
        weight *= rat(i64::from(parts[j - 1]) * i64::from(parts[j]));
    }

    let mut f = RationalFn::from_scalar(weight);
    for (j, &dj) in parts.iter().enumerate() {
        f = f.mul(&edge_factor(p, dj, &vars[j], &vars[j + 1]));
    }
    for j in 1..l {
        // u_j^{1-n} contributes a pole of order n-1 at u_j = 0.
        f.push_den_factor(&SparsePoly::var(&vars[j]), p.n - 1)
            .map_err(|e| err(ResidueError::from(e)))?;
        // Smoothing denominator, cleared of its 1/(d_j d_{j+1}) content:
        // d_{j+1} (u_j - u_{j-1}) + d_j (u_j - u_{j+1}).
        let da = i64::from(parts[j - 1]);
        let db = i64::from(parts[j]);
        let form = SparsePoly::linear_form(
            &[
                (rat(da + db), &vars[j]),
                (rat(-db), &vars[j - 1]),
                (rat(-da), &vars[j + 1]),
            ],
            Rational::zero(),
        );
        f.push_den_factor(&form, 1)
            .map_err(|e| err(ResidueError::from(e)))?;
    }

    let indices: Vec<usize> = match order {
        ResidueOrder::Descending => (1..l).rev().collect(),
        ResidueOrder::Ascending => (1..l).collect(),
    };
    for j in indices {
        f = residue_at_zero(&f, &vars[j]).map_err(err)?;
    }
    Ok(f)
}

/// The residue route at map degree `d`: the homogeneous polynomial
/// `sum_m (L[m] / d) z^m w^{W - m}` in the variables `z`, `w`.
pub fn residue_vsc_poly(
    p: &HypersurfaceParams,
    d: u32,
    order: ResidueOrder,
) -> Result<SparsePoly, VscError> {
    if d < 1 {
        return Err(VscError::InvalidParams("map degree must be >= 1".into()));
    }
    let comps = compositions_of(d);
    let contributions: Vec<RationalFn> = comps
        .par_iter()
        .map(|c| residue_contribution(p, d, c, order))
        .collect::<Result<_, _>>()?;
    let mut total = RationalFn::zero();
    for c in &contributions {
        total = total.add(c);
    }
    match total.as_polynomial() {
        Some(poly) => Ok(poly.clone()),
        None => Err(VscError::NonPolynomial { d }),
    }
}

/// Extracts the structure-constant table from the residue route:
/// `L[m] = d * (coefficient of z^m w^{W-m})`.
///
/// Fails with [`VscError::UnexpectedShape`] if the polynomial is not
/// homogeneous of degree `W` in `(z, w)` or has indices outside the window.
pub fn residue_table(
    p: &HypersurfaceParams,
    d: u32,
    order: ResidueOrder,
) -> Result<VscTable, VscError> {
    let poly = residue_vsc_poly(p, d, order)?;
    let w = p.window(d);
    if w < 0 {
        if !poly.is_zero() {
            return Err(VscError::UnexpectedShape {
                d,
                detail: format!("window is empty but residue sum is {poly}"),
            });
        }
        return Ok(VscTable { d, values: Vec::new() });
    }
    let wu = w as u64;
    if !poly.is_zero() && !poly.is_homogeneous(&["z", "w"], wu) {
        return Err(VscError::UnexpectedShape {
            d,
            detail: format!("residue sum {poly} is not homogeneous of degree {wu}"),
        });
    }
    let mut values = vec![Rational::zero(); wu as usize + 1];
    let by_z = poly.by_var_degree("z");
    for (m, coeff) in by_z.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        // Homogeneity already pins the w-power; read off the scalar.
        let scalar = coeff.substitute("w", &SparsePoly::one());
        let c = scalar.constant_value().ok_or_else(|| VscError::UnexpectedShape {
            d,
            detail: format!("coefficient of z^{m} involves variables other than w"),
        })?;
        values[m] = c * rat(i64::from(d));
    }
    Ok(VscTable { d, values })
}

// ---------------------------------------------------------------------------
// Cross-route verification.

#[derive(Clone, Debug)]
pub struct ConjectureRow {
    pub d: u32,
    pub window: i64,
    pub matched: bool,
    pub recursion: Vec<Rational>,
    pub residue: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub n: u32,
    pub k: u32,
    pub dmax: u32,
    pub rows: Vec<ConjectureRow>,
    pub all_match: bool,
}

/// Runs both pipelines for every map degree `<= dmax` and records, per
/// degree, whether the tables agree exactly.  Disagreement is a reported
/// finding, not an error.
pub fn verify_conjecture(
    p: &HypersurfaceParams,
    dmax: u32,
    order: ResidueOrder,
) -> Result<ConjectureReport, VscError> {
    let rec = recursion_tables(p, dmax);
    let rows = (1..=dmax)
        .into_par_iter()
        .map(|d| {
            let res = residue_table(p, d, order)?;
            let recursion = rec[d as usize - 1].values.clone();
            let matched = recursion == res.values;
            Ok(ConjectureRow {
                d,
                window: p.window(d),
                matched,
                recursion,
                residue: res.values,
            })
        })
        .collect::<Result<Vec<_>, VscError>>()?;
    let all_match = rows.iter().all(|r| r.matched);
    Ok(ConjectureReport {
        n: p.n,
        k: p.k,
        dmax,
        rows,
        all_match,
    })
}
