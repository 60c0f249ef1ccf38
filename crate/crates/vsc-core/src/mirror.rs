//! Mirror maps and Yukawa couplings assembled from two-point localization
//! tables of local geometries over a projective line.
//!
//! The flat coordinate is `t = x + beta_00 - eta_00 * beta_10`, where the
//! `beta` series are generating functions of two-point chain integrals in
//! `q = e^x` and `eta_00` is the metric entry of the geometry; with
//! `Q = e^t` the map becomes the unit-series relation `Q = q * exp(t - x)`,
//! which is inverted by formal reversion — no logarithms are ever
//! materialized.  The coupling is the ratio of the two-point functions
//! `L2 / L1` re-expanded in the flat coordinate.
//!
//! The two-series combination above is specific to rank-two geometries over
//! a projective line with insertions drawn from `{1, h}`; the building
//! blocks ([`two_point_series`], [`metric_eta`]) are general.

use crate::hypersurface::ResidueOrder;
use crate::local::{local_vsc_table, metric_eta, GeometryKind, GeometrySpec, LocError};
use crate::poly::SparsePoly;
use crate::series::PolySeries;
use thiserror::Error;

/// Truncated series in `q = e^x` (or `Q = e^t`) with polynomial
/// coefficients in the equivariant parameters.
pub type QSeries = PolySeries;

#[derive(Debug, Error)]
pub enum MirrorError {
    #[error(transparent)]
    Loc(#[from] LocError),
    #[error("series shape violation: {0}")]
    Shape(String),
}

/// Generating series `sum_{d=1}^{dmax} <h^m, h^n>_d q^d` of two-point chain
/// integrals, with zero constant term.
pub fn two_point_series(
    geom: &GeometrySpec,
    dmax: u32,
    pair: (u32, u32),
    order: ResidueOrder,
) -> Result<QSeries, MirrorError> {
    let table = local_vsc_table(geom, dmax, Some(&[pair]), order)?;
    let mut s = QSeries::zero(dmax);
    for e in table.entries {
        s.set_coeff(e.d, e.value);
    }
    Ok(s)
}

/// The change of variable to the flat coordinate and its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorMap {
    /// `t - x` as a series in `q = e^x` with zero constant term.
    pub t_minus_x: QSeries,
    /// `q` as a series in `Q = e^t`: zero constant term, unit linear term.
    pub q_in_flat: QSeries,
}

/// Builds the flat coordinate `t = x + beta_00 - eta_00 * beta_10` and
/// inverts it: `Q = q * exp(t - x)` is reverted as a formal power series.
pub fn build_mirror_map(
    beta00: &QSeries,
    beta10: &QSeries,
    eta00: &SparsePoly,
) -> Result<MirrorMap, MirrorError> {
    let t_minus_x = beta00.sub(&beta10.mul_poly(eta00));
    if !t_minus_x.coeff(0).is_zero() {
        return Err(MirrorError::Shape(
            "the map series must have zero constant term".into(),
        ));
    }
    let exp = t_minus_x
        .exp()
        .expect("exp of a zero-constant series always exists");
    let q_in_flat = exp.shift(1).revert().ok_or_else(|| {
        MirrorError::Shape("q * exp(t - x) must revert as a unit series".into())
    })?;
    Ok(MirrorMap {
        t_minus_x,
        q_in_flat,
    })
}

/// The coupling `L2 / L1` re-expanded in the flat coordinate, where
/// `L1 = 1 + d/dx (t - x)` and `L2 = d/dx beta_11`; the degree-`d`
/// coefficient of the result multiplies `e^{dt}`.
pub fn yukawa(beta11: &QSeries, map: &MirrorMap) -> Result<QSeries, MirrorError> {
    let l1 = QSeries::one(map.t_minus_x.trunc()).add(&map.t_minus_x.derivative_x());
    let l2 = beta11.derivative_x();
    let inv = l1
        .inverse()
        .ok_or_else(|| MirrorError::Shape("L1 must be a unit series".into()))?;
    let ratio = l2.mul(&inv);
    ratio
        .compose(&map.q_in_flat)
        .ok_or_else(|| MirrorError::Shape("flat re-expansion needs a zero-constant inner series".into()))
}

/// Everything the mirror pipeline produces for one geometry.
#[derive(Clone, Debug)]
pub struct MirrorData {
    pub beta00: QSeries,
    pub beta10: QSeries,
    pub beta11: QSeries,
    pub eta00: SparsePoly,
    pub map: MirrorMap,
    pub yukawa: QSeries,
}

/// Runs the full pipeline for a rank-two local geometry over a projective
/// line: two-point tables, metric entry, flat coordinate, and coupling.
pub fn compute_mirror_data(
    geom: &GeometrySpec,
    dmax: u32,
    order: ResidueOrder,
) -> Result<MirrorData, MirrorError> {
    if geom.n != 2 || geom.kind != GeometryKind::LocalBundle {
        return Err(MirrorError::Shape(
            "the mirror pipeline is defined for local geometries over a projective line".into(),
        ));
    }
    let beta00 = two_point_series(geom, dmax, (0, 0), order)?;
    let beta10 = two_point_series(geom, dmax, (1, 0), order)?;
    let beta11 = two_point_series(geom, dmax, (1, 1), order)?;
    let eta00 = metric_eta(geom, 0, 0)?;
    let map = build_mirror_map(&beta00, &beta10, &eta00)?;
    let coupling = yukawa(&beta11, &map)?;
    Ok(MirrorData {
        beta00,
        beta10,
        beta11,
        eta00,
        map,
        yukawa: coupling,
    })
}
