//! Existence curves in the `(μ, Δ)` plane.
//!
//! On the interval `]μ(F) − x_F, μ(F) + x_F[` of an exceptional bundle `F`,
//! with `t = |μ − μ(F)|`:
//!
//! * `δ(μ) = P(−t) − Δ(F)`: stable sheaves with positive-dimensional moduli
//!   exist exactly when `Δ ≥ δ(μ)`;
//! * `δ′(μ) = δ(μ) − (1 − t/x_F)/r(F)²`: below it the generic prioritary
//!   sheaf is rigid. `δ′` is irrational except at `μ(F)`, where it equals
//!   `Δ(F)`.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::arith::{int, qcompare};
use crate::chern::{self, hilbert_p, ChernData, SlopeDisc};
use crate::exceptional::{locate, ExceptionalBundle};
use crate::{Error, QuadValue, Rational, Result};

fn offset_from(f: &ExceptionalBundle, mu: &Rational) -> Rational {
    (mu - &f.slope).abs()
}

/// `δ(μ)`.
pub fn delta(mu: &Rational) -> Result<Rational> {
    let f = locate(mu)?;
    Ok(delta_for(&f, mu))
}

fn delta_for(f: &ExceptionalBundle, mu: &Rational) -> Rational {
    hilbert_p(&-offset_from(f, mu)) - &f.delta
}

/// `δ′(μ)` as an exact element of `Q(√(9r² − 4))`.
pub fn delta_prime(mu: &Rational) -> Result<QuadValue> {
    let f = locate(mu)?;
    Ok(delta_prime_for(&f, mu))
}

fn delta_prime_for(f: &ExceptionalBundle, mu: &Rational) -> QuadValue {
    let t = offset_from(f, mu);
    let r = Rational::from_integer(f.rank.clone());
    let inv_r2 = (&r * &r).recip();
    // δ − 1/r² + (t/r²)·(1/x_F)
    f.inverse_x_width()
        .scale(&(&t * &inv_r2))
        .add_rational(&(delta_for(f, mu) - inv_r2))
}

/// The conic `P(−t) − Δ(F)` evaluated at a quadratic offset `t ≥ 0`, e.g.
/// `t = x_F` for the interval endpoints.
pub fn delta_at_offset(f: &ExceptionalBundle, t: &QuadValue) -> Result<QuadValue> {
    let t2 = t.checked_mul(t)?;
    Ok(t2
        .scale(&(int(1) / int(2)))
        .checked_sub(&t.scale(&(int(3) / int(2))))?
        .add_rational(&(int(1) - &f.delta)))
}

fn prioritary_floor(mu: &Rational) -> Rational {
    mu * (mu + int(1)) / int(2)
}

/// Prioritary sheaves exist at `(μ, Δ)` iff `Δ ≥ μ(μ + 1)/2`, for
/// `−1 ≤ μ ≤ 0`.
pub fn exists_prioritary(s: &SlopeDisc) -> Result<bool> {
    if s.mu < int(-1) || s.mu > int(0) {
        return Err(Error::OutOfRange(format!("slope {} outside [-1, 0]", s.mu)));
    }
    Ok(s.delta >= prioritary_floor(&s.mu))
}

/// Shape of the semistable moduli space `M(r, c1, c2)`.
#[derive(Clone, Debug, PartialEq)]
pub enum SemistableStatus {
    /// `Δ ≥ δ(μ)`.
    PositiveDim,
    /// `(μ, Δ)` is the point of `F` and the sheaf is `F ⊗ C^k`.
    ExceptionalPoint {
        bundle: ExceptionalBundle,
        multiplicity: num_bigint::BigInt,
    },
    /// Neither of the above. Dimension-zero moduli other than exceptional
    /// multiples are not distinguished here.
    Empty,
}

pub fn semistable_status(x: &ChernData) -> Result<SemistableStatus> {
    let s = chern::slope_disc(x)?;
    let f = locate(&s.mu)?;
    if s.delta >= delta_for(&f, &s.mu) {
        return Ok(SemistableStatus::PositiveDim);
    }
    if s.mu == f.slope && s.delta == f.delta {
        let multiplicity = &x.rank / &f.rank;
        debug_assert!((&x.rank % &f.rank).is_zero());
        return Ok(SemistableStatus::ExceptionalPoint {
            bundle: f,
            multiplicity,
        });
    }
    Ok(SemistableStatus::Empty)
}

/// Membership in the region `−1 ≤ μ ≤ 0`, `μ(μ+1)/2 ≤ Δ ≤ δ′(μ)` tiled by
/// triad triangles.
pub fn in_region_s(s: &SlopeDisc) -> Result<bool> {
    if s.mu < int(-1) || s.mu > int(0) || s.delta < prioritary_floor(&s.mu) {
        return Ok(false);
    }
    let dp = delta_prime(&s.mu)?;
    Ok(qcompare(&QuadValue::rational(s.delta.clone()), &dp)? != Ordering::Greater)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveValues {
    pub delta: Rational,
    pub delta_prime: QuadValue,
    pub exceptional_slope: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveRow {
    pub mu: Rational,
    /// `None` when the slope could not be located within the depth budget.
    pub values: Option<CurveValues>,
}

/// `δ` and `δ′` at `steps` equally spaced slopes from `mu_min` to `mu_max`.
pub fn sample_curves(mu_min: &Rational, mu_max: &Rational, steps: usize) -> Result<Vec<CurveRow>> {
    if mu_min >= mu_max {
        return Err(Error::OutOfRange(format!("empty slope range [{mu_min}, {mu_max}]")));
    }
    if steps < 2 {
        return Err(Error::OutOfRange("at least two sample points are needed".into()));
    }
    let width = mu_max - mu_min;
    let last = Rational::from_integer((steps - 1).into());
    (0..steps)
        .map(|i| {
            let mu = mu_min + &width * Rational::from_integer(i.into()) / &last;
            let values = match locate(&mu) {
                Ok(f) => Some(CurveValues {
                    delta: delta_for(&f, &mu),
                    delta_prime: delta_prime_for(&f, &mu),
                    exceptional_slope: f.slope.clone(),
                }),
                Err(e) if e.is_resource_limit() => None,
                Err(e) => return Err(e),
            };
            Ok(CurveRow { mu, values })
        })
        .collect()
}
