//! Localization fixed-point sums for direct sums of line bundles over
//! `CP^{n-1}`.
//!
//! A degree-`d` instanton chain is labeled by an ordered partition
//! `(d_1, ..., d_l)` of `d`; the fixed-point set contributes one projective
//! factor per chain vertex, with hyperplane classes `h_0, ..., h_l`.  The
//! integrand over such a chain is a product of
//!
//! * per-segment factors: the chosen characteristic class of the bundle's
//!   section or obstruction space on the segment, divided by the Euler
//!   class of the moving tangent directions ([`tangent_factor`]);
//! * per-node factors: the class of each bundle's fiber line at the node
//!   ([`node_factor`]) and the node-smoothing denominator;
//! * endpoint insertions `h_0^m h_l^n` and the `1/prod d_j` automorphism
//!   weight.
//!
//! Integration over each projective factor is residue extraction of the
//! `h^{n-1}` coefficient ([`projective_integral`]), taken innermost-first.
//! Two boundary conventions are supported: *paired* (endpoint classes fixed
//! and integrated, [`chain_integral`]) and *free* (endpoint variables left
//! symbolic, [`chain_integral_free`]); the free hypersurface sum reproduces
//! the residue-route polynomial up to the overall factor `k z w`.

use crate::compositions::{compositions_of, Composition};
use crate::hypersurface::ResidueOrder;
use crate::poly::SparsePoly;
use crate::ratfn::{RatFnError, RationalFn};
use crate::rational::{rat, Rational};
use crate::residue::{projective_integral, ResidueError};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

/// Which characteristic class of a bundle summand enters the integrand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassMode {
    /// Product of Chern roots.
    Euler,
    /// Product of `1 + param * root`; `param = None` means the weight 1.
    TotalChern { param: Option<String> },
}

/// One line-bundle summand `O(degree)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub degree: i64,
    pub mode: ClassMode,
}

/// How the bundle classes are placed in the correlator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeometryKind {
    /// A degree-`k` constraint bundle: its section class multiplies the
    /// integrand (and node lines divide it).
    Hypersurface,
    /// A local geometry `oplus O(k_i) -> CP^{n-1}`: section classes divide
    /// the integrand, obstruction classes multiply it, and node lines
    /// always multiply it.
    LocalBundle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometrySpec {
    /// The base is `CP^{n-1}`.
    pub n: u32,
    pub bundles: Vec<Bundle>,
    pub kind: GeometryKind,
}

#[derive(Debug, Error)]
pub enum LocError {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("residue failure on composition {composition}: {source}")]
    Residue {
        composition: Composition,
        source: ResidueError,
    },
    #[error(transparent)]
    RatFn(#[from] RatFnError),
    #[error("chain integral is not polynomial in the parameters: {0}")]
    NonPolynomial(String),
}

impl GeometrySpec {
    /// The degree-`k` hypersurface geometry in `CP^{n-1}`.
    pub fn hypersurface(n: u32, k: u32) -> Result<Self, LocError> {
        if n < 2 {
            return Err(LocError::InvalidGeometry(format!(
                "base dimension parameter must be >= 2, got {n}"
            )));
        }
        if k < 1 {
            return Err(LocError::InvalidGeometry(
                "hypersurface degree must be >= 1".into(),
            ));
        }
        Ok(GeometrySpec {
            n,
            bundles: vec![Bundle {
                degree: i64::from(k),
                mode: ClassMode::Euler,
            }],
            kind: GeometryKind::Hypersurface,
        })
    }

    /// A local geometry `oplus_i O(k_i) -> CP^{n-1}`.
    pub fn local(n: u32, bundles: Vec<Bundle>) -> Result<Self, LocError> {
        if n < 2 {
            return Err(LocError::InvalidGeometry(format!(
                "base dimension parameter must be >= 2, got {n}"
            )));
        }
        if bundles.is_empty() {
            return Err(LocError::InvalidGeometry(
                "at least one bundle summand is required".into(),
            ));
        }
        let mut seen = std::collections::BTreeSet::new();
        for b in &bundles {
            if b.degree == 0 {
                return Err(LocError::InvalidGeometry(
                    "bundle degree 0 is not supported".into(),
                ));
            }
            if let ClassMode::TotalChern { param: Some(name) } = &b.mode {
                if name.is_empty() {
                    return Err(LocError::InvalidGeometry("empty parameter name".into()));
                }
                let reserved = name.starts_with('h')
                    && name.len() > 1
                    && name[1..].chars().all(|c| c.is_ascii_digit());
                if reserved || name == "q" {
                    return Err(LocError::InvalidGeometry(format!(
                        "parameter name {name} collides with internal variables"
                    )));
                }
                if !seen.insert(name.clone()) {
                    return Err(LocError::InvalidGeometry(format!(
                        "duplicate parameter name {name}"
                    )));
                }
            }
        }
        Ok(GeometrySpec {
            n,
            bundles,
            kind: GeometryKind::LocalBundle,
        })
    }

    fn param_names(&self) -> Vec<&str> {
        self.bundles
            .iter()
            .filter_map(|b| match &b.mode {
                ClassMode::TotalChern { param: Some(p) } => Some(p.as_str()),
                _ => None,
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Class builders.

/// Chern roots of the segment space for `O(degree)` on a degree-`d_j`
/// segment, as integer linear forms paired with the common denominator
/// `d_j`: sections (`degree >= 0`) have roots `(i hprev + (c - i) hnext)/d_j`
/// for `i = 0..=c` with `c = degree * d_j`; obstructions (`degree < 0`) have
/// roots `-(i hprev + (c - i) hnext)/d_j` for `i = 1..c` with
/// `c = -degree * d_j`.
fn segment_roots(degree: i64, d_j: u32, hprev: &str, hnext: &str) -> (Vec<SparsePoly>, bool) {
    let negated = degree < 0;
    let c = degree.unsigned_abs() as u32 * d_j;
    let range = if negated { 1..c } else { 0..c + 1 };
    let forms = range
        .map(|i| {
            SparsePoly::linear_form(
                &[
                    (rat(i64::from(i)), hprev),
                    (rat(i64::from(c - i)), hnext),
                ],
                Rational::zero(),
            )
        })
        .collect();
    (forms, negated)
}

/// The class of one bundle summand on one segment, as a scalar times a list
/// of polynomial factors (`class = scalar * prod factors`).
fn segment_class_parts(
    bundle: &Bundle,
    d_j: u32,
    hprev: &str,
    hnext: &str,
) -> (Rational, Vec<SparsePoly>) {
    let (roots, negated) = segment_roots(bundle.degree, d_j, hprev, hnext);
    let count = roots.len() as u32;
    let dj_big = BigInt::from(d_j);
    match &bundle.mode {
        ClassMode::Euler => {
            // prod (±form / d_j).
            let mut scalar = Rational::new(BigInt::one(), dj_big.pow(count));
            if negated && count % 2 == 1 {
                scalar = -scalar;
            }
            (scalar, roots)
        }
        ClassMode::TotalChern { param } => {
            // prod (1 ± param * form / d_j) = prod (d_j ± param * form) / d_j.
            let weight = match param {
                Some(p) => SparsePoly::var(p),
                None => SparsePoly::one(),
            };
            let scalar = Rational::new(BigInt::one(), dj_big.pow(count));
            let factors = roots
                .iter()
                .map(|r| {
                    let t = &weight * r;
                    let t = if negated { t.neg() } else { t };
                    &SparsePoly::constant(rat(i64::from(d_j))) + &t
                })
                .collect();
            (scalar, factors)
        }
    }
}

/// The chosen class of one bundle summand's section/obstruction space on a
/// degree-`d_j` segment with endpoint classes `hprev`, `hnext`.
pub fn segment_class(bundle: &Bundle, d_j: u32, hprev: &str, hnext: &str) -> RationalFn {
    let (scalar, factors) = segment_class_parts(bundle, d_j, hprev, hnext);
    let mut num = SparsePoly::constant(scalar);
    for f in &factors {
        num = &num * f;
    }
    RationalFn::from_poly(num)
}

/// Euler class of the moving tangent directions along a degree-`d_j`
/// segment of maps to `CP^{n-1}`:
/// `prod_{i=1}^{d_j - 1} ((i hprev + (d_j - i) hnext) / d_j)^n`.
pub fn tangent_factor(n: u32, d_j: u32, hprev: &str, hnext: &str) -> RationalFn {
    let scalar = Rational::new(
        BigInt::one(),
        BigInt::from(d_j).pow(n * (d_j.saturating_sub(1))),
    );
    let mut num = SparsePoly::constant(scalar);
    for i in 1..d_j {
        let form = SparsePoly::linear_form(
            &[
                (rat(i64::from(i)), hprev),
                (rat(i64::from(d_j - i)), hnext),
            ],
            Rational::zero(),
        );
        num = &num * &form.pow(n);
    }
    RationalFn::from_poly(num)
}

/// The class of one bundle summand's fiber line at a node with hyperplane
/// class `h` (Chern root `degree * h`).
fn node_class_poly(bundle: &Bundle, h: &str) -> SparsePoly {
    let root = SparsePoly::var(h).scale(&rat(bundle.degree));
    match &bundle.mode {
        ClassMode::Euler => root,
        ClassMode::TotalChern { param } => {
            let weight = match param {
                Some(p) => SparsePoly::var(p),
                None => SparsePoly::one(),
            };
            &SparsePoly::one() + &(&weight * &root)
        }
    }
}

/// The net node contribution of all bundle summands at one node (smoothing
/// denominator excluded): node lines divide a hypersurface integrand and
/// multiply a local-bundle integrand.
pub fn node_factor(geom: &GeometrySpec, h: &str) -> Result<RationalFn, LocError> {
    let mut f = RationalFn::one();
    for b in &geom.bundles {
        let class = node_class_poly(b, h);
        match geom.kind {
            GeometryKind::Hypersurface => f.push_den_factor(&class, 1)?,
            GeometryKind::LocalBundle => f = f.mul_poly(&class),
        }
    }
    Ok(f)
}

// ---------------------------------------------------------------------------
// Chain integrand and integrals.

fn segment_in_numerator(kind: GeometryKind, degree: i64) -> bool {
    match kind {
        GeometryKind::Hypersurface => true,
        GeometryKind::LocalBundle => degree < 0,
    }
}

/// Builds the full chain integrand over the given vertex variables
/// (`vars.len() = l + 1`), including the automorphism weight but not the
/// endpoint insertions or integration measures.
fn assemble_chain(
    geom: &GeometrySpec,
    comp: &Composition,
    vars: &[String],
) -> Result<RationalFn, LocError> {
    let parts = comp.parts();
    let l = parts.len();
    let mut scalar = Rational::one();
    for &dj in parts {
        scalar /= rat(i64::from(dj));
    }
    let mut f = RationalFn::one();

    for (j, &dj) in parts.iter().enumerate() {
        let (hp, hn) = (vars[j].as_str(), vars[j + 1].as_str());
        // 1 / tangent factor.
        scalar *= Rational::new(BigInt::from(dj).pow(geom.n * (dj - 1)), BigInt::one());
        for i in 1..dj {
            let form = SparsePoly::linear_form(
                &[(rat(i64::from(i)), hp), (rat(i64::from(dj - i)), hn)],
                Rational::zero(),
            );
            f.push_den_factor(&form, geom.n)?;
        }
        // Bundle segment classes.
        for b in &geom.bundles {
            let (s, factors) = segment_class_parts(b, dj, hp, hn);
            if segment_in_numerator(geom.kind, b.degree) {
                scalar *= s;
                for p in &factors {
                    f = f.mul_poly(p);
                }
            } else {
                scalar /= s;
                for p in &factors {
                    f.push_den_factor(p, 1)?;
                }
            }
        }
    }

    for j in 1..l {
        let v = vars[j].as_str();
        // Node smoothing: 1 / ((h_j - h_{j-1})/d_j + (h_j - h_{j+1})/d_{j+1}).
        let da = i64::from(parts[j - 1]);
        let db = i64::from(parts[j]);
        scalar *= rat(da * db);
        let form = SparsePoly::linear_form(
            &[
                (rat(da + db), v),
                (rat(-db), vars[j - 1].as_str()),
                (rat(-da), vars[j + 1].as_str()),
            ],
            Rational::zero(),
        );
        f.push_den_factor(&form, 1)?;
        // Node line classes.
        for b in &geom.bundles {
            let class = node_class_poly(b, v);
            match geom.kind {
                GeometryKind::Hypersurface => f.push_den_factor(&class, 1)?,
                GeometryKind::LocalBundle => f = f.mul_poly(&class),
            }
        }
    }

    Ok(f.scale(&scalar))
}

fn integrate_vertices(
    mut f: RationalFn,
    vars: &[String],
    indices: Vec<usize>,
    n: u32,
    comp: &Composition,
) -> Result<RationalFn, LocError> {
    for j in indices {
        f = projective_integral(&f, &vars[j], n).map_err(|source| LocError::Residue {
            composition: comp.clone(),
            source,
        })?;
    }
    Ok(f)
}

/// Paired-boundary integral of one chain: inserts `h_0^m h_l^n`, then
/// integrates every vertex class out.  Insertion exponents may exceed
/// `n - 1`; negative-bundle obstruction classes can make such correlators
/// nonzero (the rank-two `O(-1)` geometry pairs exponents summing to 2 on a
/// projective line).
pub fn chain_integral(
    geom: &GeometrySpec,
    comp: &Composition,
    insertions: (u32, u32),
    order: ResidueOrder,
) -> Result<SparsePoly, LocError> {
    let l = comp.len();
    let vars: Vec<String> = (0..=l).map(|j| format!("h{j}")).collect();
    let mut f = assemble_chain(geom, comp, &vars)?;
    f = f.mul_poly(&SparsePoly::monomial(
        &[(&vars[0], insertions.0)],
        Rational::one(),
    ));
    f = f.mul_poly(&SparsePoly::monomial(
        &[(&vars[l], insertions.1)],
        Rational::one(),
    ));
    let indices: Vec<usize> = match order {
        ResidueOrder::Descending => (0..=l).rev().collect(),
        ResidueOrder::Ascending => (0..=l).collect(),
    };
    let f = integrate_vertices(f, &vars, indices, geom.n, comp)?;
    match f.as_polynomial() {
        Some(p) => Ok(p.clone()),
        None => Err(LocError::NonPolynomial(format!(
            "composition {comp}, insertions ({}, {})",
            insertions.0, insertions.1
        ))),
    }
}

/// Free-boundary integral of one chain: endpoint classes stay symbolic as
/// `z` and `w`, only interior vertices are integrated, and no insertions
/// are applied.  The result is generally a rational function; summed over
/// all chains of a degree it becomes polynomial for hypersurface geometries.
pub fn chain_integral_free(
    geom: &GeometrySpec,
    comp: &Composition,
    order: ResidueOrder,
) -> Result<RationalFn, LocError> {
    for p in geom.param_names() {
        if p == "z" || p == "w" {
            return Err(LocError::InvalidGeometry(format!(
                "parameter name {p} collides with a free endpoint variable"
            )));
        }
    }
    let l = comp.len();
    let vars: Vec<String> = (0..=l)
        .map(|j| {
            if j == 0 {
                "z".to_string()
            } else if j == l {
                "w".to_string()
            } else {
                format!("h{j}")
            }
        })
        .collect();
    let f = assemble_chain(geom, comp, &vars)?;
    let indices: Vec<usize> = match order {
        ResidueOrder::Descending => (1..l).rev().collect(),
        ResidueOrder::Ascending => (1..l).collect(),
    };
    integrate_vertices(f, &vars, indices, geom.n, comp)
}

/// Sum of [`chain_integral_free`] over all ordered partitions of `d`.
pub fn free_boundary_sum(
    geom: &GeometrySpec,
    d: u32,
    order: ResidueOrder,
) -> Result<RationalFn, LocError> {
    let comps = compositions_of(d);
    let contributions: Vec<RationalFn> = comps
        .par_iter()
        .map(|c| chain_integral_free(geom, c, order))
        .collect::<Result<_, _>>()?;
    let mut total = RationalFn::zero();
    for c in &contributions {
        total = total.add(c);
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Tables.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalEntry {
    pub m: u32,
    pub n: u32,
    pub d: u32,
    pub value: SparsePoly,
}

#[derive(Clone, Debug)]
pub struct LocalVscTable {
    pub geometry: GeometrySpec,
    pub entries: Vec<LocalEntry>,
}

/// Sums [`chain_integral`] over all ordered partitions of each degree
/// `d <= dmax`, for every requested insertion pair (by default the full
/// square `[0, n-1] x [0, n-1]`).  Entries are ordered by `(d, m, n)`.
pub fn local_vsc_table(
    geom: &GeometrySpec,
    dmax: u32,
    pairs: Option<&[(u32, u32)]>,
    order: ResidueOrder,
) -> Result<LocalVscTable, LocError> {
    let default_pairs: Vec<(u32, u32)> = (0..geom.n)
        .flat_map(|m| (0..geom.n).map(move |n| (m, n)))
        .collect();
    let pairs: Vec<(u32, u32)> = match pairs {
        Some(p) => p.to_vec(),
        None => default_pairs,
    };
    let cells: Vec<(u32, u32, u32)> = (1..=dmax)
        .flat_map(|d| pairs.iter().map(move |&(m, n)| (d, m, n)))
        .collect();
    let entries: Vec<LocalEntry> = cells
        .par_iter()
        .map(|&(d, m, n)| {
            let mut total = SparsePoly::zero();
            for comp in compositions_of(d) {
                let v = chain_integral(geom, &comp, (m, n), order)?;
                total = &total + &v;
            }
            Ok(LocalEntry {
                m,
                n,
                d,
                value: total,
            })
        })
        .collect::<Result<_, LocError>>()?;
    Ok(LocalVscTable {
        geometry: geom.clone(),
        entries,
    })
}

/// The two-point metric of a local geometry on `CP^{n-1}`: the integral of
/// `h^{i+j}` divided by the product of the bundles' node-line classes at
/// `h`.
pub fn metric_eta(geom: &GeometrySpec, i: u32, j: u32) -> Result<SparsePoly, LocError> {
    if geom.kind != GeometryKind::LocalBundle {
        return Err(LocError::InvalidGeometry(
            "the metric is defined for local-bundle geometries".into(),
        ));
    }
    let mut f = RationalFn::from_poly(SparsePoly::monomial(&[("h", i + j)], Rational::one()));
    for b in &geom.bundles {
        f.push_den_factor(&node_class_poly(b, "h"), 1)?;
    }
    let out = projective_integral(&f, "h", geom.n).map_err(|source| LocError::Residue {
        composition: Composition::new(vec![1]),
        source,
    })?;
    match out.as_polynomial() {
        Some(p) => Ok(p.clone()),
        None => Err(LocError::NonPolynomial(format!("metric entry ({i}, {j})"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersurface::{residue_vsc_poly, HypersurfaceParams};
    use crate::rational::frac;

    fn euler(degree: i64) -> Bundle {
        Bundle {
            degree,
            mode: ClassMode::Euler,
        }
    }

    fn total(degree: i64, param: Option<&str>) -> Bundle {
        Bundle {
            degree,
            mode: ClassMode::TotalChern {
                param: param.map(str::to_string),
            },
        }
    }

    fn alpha_geometry() -> GeometrySpec {
        GeometrySpec::local(2, vec![euler(-1), euler(-1)]).unwrap()
    }

    fn beta_geometry() -> GeometrySpec {
        GeometrySpec::local(2, vec![total(1, Some("z")), total(-3, None)]).unwrap()
    }

    #[test]
    fn rank_two_negative_segment_cancels_tangent() {
        // The squared obstruction class of O(-1) equals the tangent factor
        // on a projective line, for every segment degree.
        for d in 1..=8u32 {
            let b = euler(-1);
            let seg = segment_class(&b, d, "x", "y");
            let squared = seg.mul(&seg);
            let tangent = tangent_factor(2, d, "x", "y");
            assert_eq!(squared, tangent, "d = {d}");
        }
    }

    #[test]
    fn node_factors_match_known_geometries() {
        let alpha = node_factor(&alpha_geometry(), "h").unwrap();
        let h = SparsePoly::var("h");
        assert_eq!(alpha.as_polynomial().unwrap(), &(&h * &h));

        let beta = node_factor(&beta_geometry(), "h").unwrap();
        let one_plus_zh = &SparsePoly::one() + &(&SparsePoly::var("z") * &h);
        let one_minus_3h = &SparsePoly::one() + &h.scale(&rat(-3));
        assert_eq!(
            beta.as_polynomial().unwrap(),
            &(&one_plus_zh * &one_minus_3h)
        );

        let hyper = GeometrySpec::hypersurface(5, 5).unwrap();
        let nf = node_factor(&hyper, "h").unwrap();
        assert!(nf.num().is_constant());
        assert_eq!(nf.num().constant_value().unwrap(), frac(1, 5));
        assert_eq!(nf.den(), SparsePoly::var("h"));
    }

    #[test]
    fn quintic_section_roots_at_degree_one() {
        // k = 3 section space on a degree-1 segment: roots i*x + (3-i)*y.
        let seg = segment_class(&euler(3), 1, "x", "y");
        let mut expect = SparsePoly::one();
        for i in 0..=3i64 {
            expect = &expect
                * &SparsePoly::linear_form(
                    &[(rat(i), "x"), (rat(3 - i), "y")],
                    Rational::zero(),
                );
        }
        assert_eq!(seg.as_polynomial().unwrap(), &expect);
    }

    #[test]
    fn alpha_interior_chains_vanish() {
        let geom = alpha_geometry();
        for comp in [
            Composition::new(vec![1, 1]),
            Composition::new(vec![2, 1]),
            Composition::new(vec![1, 1, 1]),
            Composition::new(vec![2, 2]),
        ] {
            for ins in [(0u32, 2u32), (1, 1), (2, 0)] {
                let v = chain_integral(&geom, &comp, ins, ResidueOrder::Descending).unwrap();
                assert!(v.is_zero(), "composition {comp}, insertions {ins:?}");
            }
        }
    }

    #[test]
    fn alpha_table_is_delta_over_degree() {
        let geom = alpha_geometry();
        let pairs = [(0u32, 2u32), (1, 1), (2, 0)];
        let table = local_vsc_table(&geom, 5, Some(&pairs), ResidueOrder::Descending).unwrap();
        for e in &table.entries {
            let expect = if e.m == 1 {
                SparsePoly::constant(frac(1, i64::from(e.d)))
            } else {
                SparsePoly::zero()
            };
            assert_eq!(e.value, expect, "alpha entry {:?}", (e.m, e.n, e.d));
        }
    }

    #[test]
    fn beta_degree_one_values() {
        let geom = beta_geometry();
        let one = Composition::new(vec![1]);
        let z = SparsePoly::var("z");

        let b11 = chain_integral(&geom, &one, (1, 1), ResidueOrder::Descending).unwrap();
        assert!(b11.is_one());

        let b10 = chain_integral(&geom, &one, (1, 0), ResidueOrder::Descending).unwrap();
        let expect10 = &SparsePoly::constant(rat(-3)) + &z.neg();
        assert_eq!(b10, expect10);

        let b00 = chain_integral(&geom, &one, (0, 0), ResidueOrder::Descending).unwrap();
        let expect00 = SparsePoly::linear_form(&[(rat(6), "z")], rat(5));
        let expect00 = &expect00 + &z.pow(2);
        assert_eq!(b00, expect00);
    }

    #[test]
    fn metric_entries() {
        let geom = beta_geometry();
        let eta00 = metric_eta(&geom, 0, 0).unwrap();
        assert_eq!(
            eta00,
            &SparsePoly::constant(rat(3)) + &SparsePoly::var("z").neg()
        );
        let eta01 = metric_eta(&geom, 0, 1).unwrap();
        assert!(eta01.is_one());
        let eta11 = metric_eta(&geom, 1, 1).unwrap();
        assert!(eta11.is_zero());
    }

    #[test]
    fn hypersurface_free_boundary_matches_residue_route() {
        let p = HypersurfaceParams::new(5, 5).unwrap();
        let geom = GeometrySpec::hypersurface(5, 5).unwrap();
        for d in 1..=2u32 {
            let loc = free_boundary_sum(&geom, d, ResidueOrder::Descending).unwrap();
            let res = residue_vsc_poly(&p, d, ResidueOrder::Descending).unwrap();
            let kzw = SparsePoly::monomial(&[("z", 1), ("w", 1)], rat(5));
            let expect = RationalFn::from_poly(&kzw * &res);
            assert_eq!(loc, expect, "d = {d}");
        }
    }

    #[test]
    fn geometry_validation() {
        assert!(GeometrySpec::local(2, vec![]).is_err());
        assert!(GeometrySpec::local(2, vec![euler(0)]).is_err());
        assert!(GeometrySpec::local(
            2,
            vec![total(1, Some("a")), total(-3, Some("a"))]
        )
        .is_err());
        assert!(GeometrySpec::local(2, vec![total(1, Some("h1"))]).is_err());
        // Equivariant parameters may shadow the free endpoint names only in
        // paired mode.
        let g = GeometrySpec::local(2, vec![total(1, Some("z")), total(-3, None)]).unwrap();
        let c = Composition::new(vec![1]);
        assert!(chain_integral_free(&g, &c, ResidueOrder::Descending).is_err());
    }
}
