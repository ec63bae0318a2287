//! Chern data of sheaves on the plane and the closed-form Riemann–Roch
//! numerology built on it.
//!
//! Plane constants are fixed: canonical class `−3H`, `χ(O) = 1`.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{int, is_integral};
use crate::{BigInt, Error, Rational, Result};

/// `(rank, c1, c2)` of a coherent sheaf on the plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernData {
    pub rank: BigInt,
    pub c1: BigInt,
    pub c2: BigInt,
}

/// Slope and discriminant `(μ, Δ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlopeDisc {
    pub mu: Rational,
    pub delta: Rational,
}

/// Chern character `(rank, c1, ch2)` with `ch2 = c1²/2 − c2`; additive in
/// exact sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernCharacter {
    pub rank: BigInt,
    pub c1: BigInt,
    pub ch2: Rational,
}

/// `P(X) = X²/2 + 3X/2 + 1`, the Hilbert polynomial of the plane in slope form.
pub fn hilbert_p(x: &Rational) -> Rational {
    x * x / int(2) + x * int(3) / int(2) + int(1)
}

impl ChernData {
    pub fn new(rank: impl Into<BigInt>, c1: impl Into<BigInt>, c2: impl Into<BigInt>) -> Self {
        ChernData {
            rank: rank.into(),
            c1: c1.into(),
            c2: c2.into(),
        }
    }

    /// The line bundle `O(k)`.
    pub fn line_bundle(k: impl Into<BigInt>) -> Self {
        ChernData::new(1, k, 0)
    }

    pub fn zero() -> Self {
        ChernData::new(0, 0, 0)
    }

    pub fn mu(&self) -> Result<Rational> {
        if !self.rank.is_positive() {
            return Err(Error::ZeroRank);
        }
        Ok(Rational::new(self.c1.clone(), self.rank.clone()))
    }

    pub fn character(&self) -> ChernCharacter {
        let c1 = Rational::from_integer(self.c1.clone());
        ChernCharacter {
            rank: self.rank.clone(),
            c1: self.c1.clone(),
            ch2: &c1 * &c1 / int(2) - Rational::from_integer(self.c2.clone()),
        }
    }

    pub fn from_character(ch: &ChernCharacter) -> Result<Self> {
        if ch.rank.is_negative() {
            return Err(Error::NegativeRank);
        }
        let c1 = Rational::from_integer(ch.c1.clone());
        let c2 = &c1 * &c1 / int(2) - &ch.ch2;
        if !is_integral(&c2) {
            return Err(Error::NonIntegral(format!("c2 = {c2}")));
        }
        Ok(ChernData {
            rank: ch.rank.clone(),
            c1: ch.c1.clone(),
            c2: c2.to_integer(),
        })
    }
}

impl fmt::Display for ChernData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.rank, self.c1, self.c2)
    }
}

impl SlopeDisc {
    pub fn new(mu: Rational, delta: Rational) -> Self {
        SlopeDisc { mu, delta }
    }
}

impl fmt::Display for SlopeDisc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(μ = {}, Δ = {})", self.mu, self.delta)
    }
}

impl ChernCharacter {
    pub fn zero() -> Self {
        ChernCharacter {
            rank: BigInt::zero(),
            c1: BigInt::zero(),
            ch2: Rational::zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        ChernCharacter {
            rank: &self.rank + &other.rank,
            c1: &self.c1 + &other.c1,
            ch2: &self.ch2 + &other.ch2,
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        ChernCharacter {
            rank: &self.rank * k,
            c1: &self.c1 * k,
            ch2: &self.ch2 * Rational::from_integer(k.clone()),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }
}

/// `(μ, Δ)` with `Δ = (c2 − (r−1)c1²/(2r)) / r`.
pub fn slope_disc(x: &ChernData) -> Result<SlopeDisc> {
    let mu = x.mu()?;
    let r = Rational::from_integer(x.rank.clone());
    let c1 = Rational::from_integer(x.c1.clone());
    let c2 = Rational::from_integer(x.c2.clone());
    let delta = (c2 - (&r - int(1)) / (int(2) * &r) * &c1 * &c1) / &r;
    Ok(SlopeDisc { mu, delta })
}

/// Inverse of [`slope_disc`] at a fixed rank.
pub fn from_slope_disc(rank: &BigInt, s: &SlopeDisc) -> Result<ChernData> {
    if !rank.is_positive() {
        return Err(Error::ZeroRank);
    }
    let r = Rational::from_integer(rank.clone());
    let c1 = &s.mu * &r;
    if !is_integral(&c1) {
        return Err(Error::NonIntegral(format!("c1 = {c1}")));
    }
    let c2 = &r * &s.delta + (&r - int(1)) / (int(2) * &r) * &c1 * &c1;
    if !is_integral(&c2) {
        return Err(Error::NonIntegral(format!("c2 = {c2}")));
    }
    Ok(ChernData {
        rank: rank.clone(),
        c1: c1.to_integer(),
        c2: c2.to_integer(),
    })
}

/// Chern data of `x ⊗ O(k)`.
pub fn twist(x: &ChernData, k: &BigInt) -> ChernData {
    let ch = x.character();
    let kr = Rational::from_integer(k.clone());
    let rank = Rational::from_integer(x.rank.clone());
    let twisted = ChernCharacter {
        rank: ch.rank.clone(),
        c1: &ch.c1 + k * &ch.rank,
        ch2: &ch.ch2 + &kr * Rational::from_integer(ch.c1.clone()) + rank * &kr * &kr / int(2),
    };
    ChernData::from_character(&twisted).expect("twisting preserves integrality")
}

/// Whitney sum formula.
pub fn direct_sum(a: &ChernData, b: &ChernData) -> ChernData {
    ChernData {
        rank: &a.rank + &b.rank,
        c1: &a.c1 + &b.c1,
        c2: &a.c2 + &b.c2 + &a.c1 * &b.c1,
    }
}

/// Chern data of `Σ plus − Σ minus` in the Grothendieck group.
pub fn chern_of_complex(
    plus: &[(ChernData, BigInt)],
    minus: &[(ChernData, BigInt)],
) -> Result<ChernData> {
    let sum = |terms: &[(ChernData, BigInt)]| {
        terms
            .iter()
            .fold(ChernCharacter::zero(), |acc, (x, k)| acc.add(&x.character().scale(k)))
    };
    let total = sum(plus).sub(&sum(minus));
    if total.rank.is_negative() {
        return Err(Error::NegativeRank);
    }
    let out = ChernData::from_character(&total);
    debug_assert!(out.is_ok(), "integral inputs give integral c2");
    out
}

/// `χ(x) = c1(c1+3)/2 + r − c2`.
pub fn euler_char(x: &ChernData) -> BigInt {
    (&x.c1 * (&x.c1 + BigInt::from(3))).div_floor(&BigInt::from(2)) + &x.rank - &x.c2
}

/// `χ(a, b) = Σ (−1)^i dim Ext^i(a, b)` from the bilinear Riemann–Roch form.
pub fn euler_form(a: &ChernData, b: &ChernData) -> BigInt {
    let (ra, ca, da) = (&a.rank, &a.c1, &a.c2);
    let (rb, cb, db) = (&b.rank, &b.c1, &b.c2);
    let twice_half = BigInt::from(3) * ra * cb - BigInt::from(3) * rb * ca + ra * cb * cb + rb * ca * ca;
    debug_assert!(twice_half.is_even());
    let value: BigInt = -(ca * cb) - ra * db - rb * da + ra * rb + twice_half / BigInt::from(2);
    debug_assert!(
        !(ra.is_positive() && rb.is_positive()) || Rational::from_integer(value.clone()) == euler_form_slope(a, b).unwrap(),
        "bilinear and slope forms disagree"
    );
    value
}

/// `ra·rb·(P(μb − μa) − Δa − Δb)`; defined for positive ranks only.
pub fn euler_form_slope(a: &ChernData, b: &ChernData) -> Result<Rational> {
    let sa = slope_disc(a)?;
    let sb = slope_disc(b)?;
    let rr = Rational::from_integer(&a.rank * &b.rank);
    Ok(rr * (hilbert_p(&(&sb.mu - &sa.mu)) - sa.delta - sb.delta))
}

/// Dimension `1 + r²(2Δ − 1)` of the stable moduli space on the plane.
pub fn dim_stable_p2(x: &ChernData) -> Result<BigInt> {
    let s = slope_disc(x)?;
    let r = Rational::from_integer(x.rank.clone());
    let d = int(1) + &r * &r * (int(2) * s.delta - int(1));
    debug_assert!(is_integral(&d));
    let d = d.to_integer();
    debug_assert_eq!(
        d,
        BigInt::from(2) * &x.rank * &x.c2 - (&x.rank - 1) * &x.c1 * &x.c1 - &x.rank * &x.rank + 1
    );
    Ok(d)
}

/// Dimension `k + r²(2Δ − 2)` of simple sheaves on a K3 surface, where `k`
/// is the dimension of the relevant Picard component.
pub fn dim_simple_k3(k: &BigInt, rank: &BigInt, delta: &Rational) -> Result<BigInt> {
    if !rank.is_positive() {
        return Err(Error::ZeroRank);
    }
    let r = Rational::from_integer(rank.clone());
    let term = &r * &r * (int(2) * delta - int(2));
    if !is_integral(&term) {
        return Err(Error::NonIntegral(format!("r²(2Δ−2) = {term}")));
    }
    Ok(k + term.to_integer())
}

/// Endomorphism dimension of an extension and the cap on its `Ext¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtNumerology {
    pub hom_dim: i64,
    pub ext1_cap: i64,
}

pub fn ext_numerology(p: i64, p_prime: i64, e: i64) -> ExtNumerology {
    ExtNumerology {
        hom_dim: p + p_prime + e,
        ext1_cap: p + p_prime,
    }
}

/// Slope inequality `d'/r' − d/r ≥ g − 1 + deg(F)/2 − 1/(2rr')` on a ruled
/// surface of genus `g`.
pub fn ruled_extension_ok(r: i64, d: i64, r2: i64, d2: i64, g: i64, deg_f: i64) -> Result<bool> {
    if r < 1 || r2 < 1 {
        return Err(Error::ZeroRank);
    }
    let lhs = Rational::new(d2.into(), r2.into()) - Rational::new(d.into(), r.into());
    let rhs = int(g - 1) + Rational::new(deg_f.into(), 2.into())
        - Rational::new(1.into(), (2 * r * r2).into());
    Ok(lhs >= rhs)
}
