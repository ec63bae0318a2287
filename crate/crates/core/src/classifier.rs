//! Structure of the generic prioritary sheaf with given `(r, c1, c2)` when
//! the semistable moduli space is empty.
//!
//! After twisting so that `−1 < μ ≤ 0`:
//!
//! * below `δ′(μ)` the sheaf is rigid, `E^m ⊕ F^n ⊕ G^p` for the triad whose
//!   triangle contains `(μ, Δ)`;
//! * above `δ′(μ)` it is `F^p ⊕ E′` with `F` the exceptional bundle owning `μ`
//!   and `E′` semistable on the conic `χ(F, ·) = 0` (left half) or
//!   `χ(·, F) = 0` (right half);
//! * `(c1, c2) = (0, 1)` gives `O^{r−2} ⊕ V_x`, `V_x` the nontrivial extension
//!   of `I_x` by `O`.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::arith::{int, qcompare};
use crate::boundary::{self, SemistableStatus};
use crate::chern::{self, euler_form, ChernData};
use crate::exceptional::{locate, ExceptionalBundle};
use crate::triads::{self, Triad};
use crate::{BigInt, Error, QuadValue, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Classification {
    NotPrioritary {
        twist: BigInt,
    },
    SemistableExists {
        status: SemistableStatus,
        twist: BigInt,
    },
    Rigid {
        triad: Triad,
        m: BigInt,
        n: BigInt,
        p: BigInt,
        twist: BigInt,
    },
    ExceptionalPlus {
        f: ExceptionalBundle,
        p: BigInt,
        residual: ChernData,
        side: Side,
        /// `μ = μ(F)`, where both halves give the same `p`.
        center: bool,
        twist: BigInt,
    },
    Special01 {
        rank: BigInt,
        twist: BigInt,
    },
    PureExceptional {
        f: ExceptionalBundle,
        k: BigInt,
        twist: BigInt,
    },
}

impl Classification {
    /// Shift from the normalized slope window back to the input.
    pub fn twist(&self) -> &BigInt {
        match self {
            Classification::NotPrioritary { twist }
            | Classification::SemistableExists { twist, .. }
            | Classification::Rigid { twist, .. }
            | Classification::ExceptionalPlus { twist, .. }
            | Classification::Special01 { twist, .. }
            | Classification::PureExceptional { twist, .. } => twist,
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            Classification::NotPrioritary { .. } => "not_prioritary",
            Classification::SemistableExists { .. } => "semistable_exists",
            Classification::Rigid { .. } => "rigid",
            Classification::ExceptionalPlus { .. } => "exceptional_plus",
            Classification::Special01 { .. } => "special01",
            Classification::PureExceptional { .. } => "pure_exceptional",
        }
    }
}

/// `ch(V_x)`: rank 2, `c1 = 0`, `c2 = 1`.
pub fn v_x() -> ChernData {
    ChernData::new(2, 0, 1)
}

pub fn classify(x: &ChernData) -> Result<Classification> {
    let mu = x.mu()?;
    // k with μ + k ∈ ]−1, 0]
    let k = -mu.ceil().to_integer();
    let xn = chern::twist(x, &k);
    let twist = -k;
    let s = chern::slope_disc(&xn)?;

    if !boundary::exists_prioritary(&s)? {
        return Ok(Classification::NotPrioritary { twist });
    }
    let status = boundary::semistable_status(&xn)?;
    if status != SemistableStatus::Empty {
        return Ok(Classification::SemistableExists { status, twist });
    }
    if xn.c1.is_zero() && xn.c2.is_one() && xn.rank >= BigInt::from(2) {
        return Ok(Classification::Special01 {
            rank: xn.rank.clone(),
            twist,
        });
    }

    let f = locate(&s.mu)?;
    let dp = boundary::delta_prime(&s.mu)?;
    match qcompare(&QuadValue::rational(s.delta.clone()), &dp)? {
        Ordering::Equal => {
            debug_assert_eq!(s.mu, f.slope);
            let k = &xn.rank / &f.rank;
            Ok(Classification::PureExceptional { f, k, twist })
        }
        Ordering::Less => {
            let triad = triads::find_triangle(&s)?;
            let (m, n, p) = triad.multiplicities_of(&xn);
            debug_assert!(!m.is_negative() && !n.is_negative() && !p.is_negative());
            Ok(Classification::Rigid {
                triad,
                m,
                n,
                p,
                twist,
            })
        }
        Ordering::Greater => {
            let (side, p) = if s.mu <= f.slope {
                (Side::Left, euler_form(&f.chern, &xn))
            } else {
                (Side::Right, euler_form(&xn, &f.chern))
            };
            let residual = chern::chern_of_complex(&[(xn.clone(), BigInt::one())], &[(f.chern.clone(), p.clone())])?;
            Ok(Classification::ExceptionalPlus {
                center: s.mu == f.slope,
                f,
                p,
                residual,
                side,
                twist,
            })
        }
    }
}

/// Chern data of the asserted direct-sum decomposition, in the input's frame.
pub fn reassemble(c: &Classification) -> Result<ChernData> {
    let one = BigInt::one();
    let normalized = match c {
        Classification::NotPrioritary { .. } | Classification::SemistableExists { .. } => {
            return Err(Error::NotDecomposed)
        }
        Classification::Rigid { triad, m, n, p, .. } => {
            ChernData::from_character(&triad.combine(m, n, p))?
        }
        Classification::ExceptionalPlus { f, p, residual, .. } => {
            chern::chern_of_complex(&[(f.chern.clone(), p.clone()), (residual.clone(), one)], &[])?
        }
        Classification::Special01 { rank, .. } => chern::chern_of_complex(
            &[(ChernData::line_bundle(0), rank - 2), (v_x(), one)],
            &[],
        )?,
        Classification::PureExceptional { f, k, .. } => {
            chern::chern_of_complex(&[(f.chern.clone(), k.clone())], &[])?
        }
    };
    Ok(chern::twist(&normalized, c.twist()))
}

/// `p² + 1 + 3·p·r′·r(F)·(μ(F) − μ′)`, the automorphism-group dimension of
/// `F^p ⊕ E′`.
pub fn aut_dim_exceptional_plus(p: &BigInt, f: &ExceptionalBundle, residual: &ChernData) -> Result<BigInt> {
    let mu_res = residual.mu()?;
    let pr = Rational::from_integer(p.clone());
    let v = &pr * &pr
        + int(1)
        + int(3) * &pr * Rational::from_integer(&residual.rank * &f.rank) * (&f.slope - mu_res);
    if !v.is_integer() {
        return Err(Error::NonIntegral(format!("automorphism dimension {v}")));
    }
    Ok(v.to_integer())
}
