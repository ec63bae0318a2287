//! The tree of exceptional bundles on the plane.
//!
//! Exceptional slopes are indexed by dyadic rationals through the map `ε`:
//! `ε(k) = k`, `ε(x + k) = ε(x) + k`, and `ε` of the midpoint of two adjacent
//! dyadics of level `q` is the composition `×` of their images. Each
//! exceptional slope `μ(F)` owns the open interval of half-width `x_F`, the
//! smaller root of `X² − 3X + 1/r² = 0`; these intervals partition the
//! rationals, which is what [`ExceptionalTree::locate`] relies on.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::int;
use crate::chern::{self, euler_form, ChernData, SlopeDisc};
use crate::{BigInt, Error, QuadValue, Rational, Result};

/// Default depth budget for tree descents.
pub const DEFAULT_MAX_DEPTH: u32 = 32;

/// Hard ceiling: dyadic numerators are kept in an `i64`.
pub const DEPTH_CEILING: u32 = 60;

/// The dyadic rational `num / 2^exp`, kept reduced (`num` odd unless `exp = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dyadic {
    pub num: i64,
    pub exp: u32,
}

impl Dyadic {
    pub fn new(mut num: i64, mut exp: u32) -> Self {
        while exp > 0 && num % 2 == 0 {
            num /= 2;
            exp -= 1;
        }
        Dyadic { num, exp }
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(self.num), BigInt::one() << self.exp)
    }

    fn shifted(self, k: &BigInt) -> Option<Dyadic> {
        let k: i64 = k.try_into().ok()?;
        let offset = k.checked_mul(1i64.checked_shl(self.exp)?)?;
        Some(Dyadic::new(self.num.checked_add(offset)?, self.exp))
    }

    /// Parses `p/2^q`, `p/d` with `d` a power of two, or an integer.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a dyadic rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(Dyadic::new(s.parse().map_err(|_| bad())?, 0)),
            Some((p, d)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let d = d.trim();
                let exp = if let Some(e) = d.strip_prefix("2^") {
                    e.parse::<u32>().map_err(|_| bad())?
                } else {
                    let d: u64 = d.parse().map_err(|_| bad())?;
                    if !d.is_power_of_two() {
                        return Err(bad());
                    }
                    d.trailing_zeros()
                };
                if exp > DEPTH_CEILING {
                    return Err(bad());
                }
                Ok(Dyadic::new(p, exp))
            }
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

/// An exceptional bundle, determined by its slope.
#[derive(Clone, Debug)]
pub struct ExceptionalBundle {
    pub slope: Rational,
    pub rank: BigInt,
    pub chern: ChernData,
    pub delta: Rational,
    /// `9r² − 4`, the radicand of `x_F`.
    pub radicand: BigInt,
    /// Dyadic preimage under `ε`, when known.
    pub address: Option<Dyadic>,
}

impl PartialEq for ExceptionalBundle {
    fn eq(&self, other: &Self) -> bool {
        self.slope == other.slope
    }
}

impl Eq for ExceptionalBundle {}

/// `Δ = ½(1 − 1/r²)`.
pub fn exceptional_delta(rank: &BigInt) -> Rational {
    let r = Rational::from_integer(rank.clone());
    (int(1) - (&r * &r).recip()) / int(2)
}

/// Numeric exceptionality: positive rank, `gcd(r, c1) = 1`, `χ(E, E) = 1`.
pub fn is_exceptional_chern(c: &ChernData) -> bool {
    c.rank.is_positive() && c.rank.gcd(&c.c1).is_one() && euler_form(c, c).is_one()
}

impl ExceptionalBundle {
    /// Bundle data for a candidate exceptional slope. Does not check that the
    /// slope is genuinely exceptional beyond integrality of `c2`.
    pub fn from_slope(mu: &Rational) -> Result<Self> {
        let rank = mu.denom().clone();
        let delta = exceptional_delta(&rank);
        let chern = chern::from_slope_disc(&rank, &SlopeDisc::new(mu.clone(), delta.clone()))?;
        Ok(Self::assemble(mu.clone(), chern, delta))
    }

    /// Validates Chern data as exceptional and wraps it.
    pub fn from_chern(c: &ChernData) -> Result<Self> {
        if !is_exceptional_chern(c) {
            return Err(Error::NotExceptional(c.to_string()));
        }
        let s = chern::slope_disc(c)?;
        Ok(Self::assemble(s.mu, c.clone(), s.delta))
    }

    pub fn line_bundle(k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let mut b = Self::assemble(
            Rational::from_integer(k.clone()),
            ChernData::line_bundle(k.clone()),
            Rational::zero(),
        );
        b.address = i64::try_from(&k).ok().map(|k| Dyadic::new(k, 0));
        b
    }

    fn assemble(slope: Rational, chern: ChernData, delta: Rational) -> Self {
        let rank = chern.rank.clone();
        let radicand = BigInt::from(9) * &rank * &rank - 4;
        ExceptionalBundle {
            slope,
            rank,
            chern,
            delta,
            radicand,
            address: None,
        }
    }

    fn with_address(mut self, address: Dyadic) -> Self {
        self.address = Some(address);
        self
    }

    pub fn slope_disc(&self) -> SlopeDisc {
        SlopeDisc::new(self.slope.clone(), self.delta.clone())
    }

    /// `F ⊗ O(k)`.
    pub fn twist(&self, k: &BigInt) -> Self {
        let mut out = Self::assemble(
            &self.slope + Rational::from_integer(k.clone()),
            chern::twist(&self.chern, k),
            self.delta.clone(),
        );
        out.address = self.address.and_then(|a| a.shifted(k));
        out
    }

    /// Half-width `x_F = (3r − √(9r² − 4)) / (2r)` of the interval owned by `F`.
    pub fn x_width(&self) -> QuadValue {
        let r = Rational::from_integer(self.rank.clone());
        QuadValue::new(int(3) / int(2), -(int(2) * r).recip(), self.radicand.clone())
            .expect("radicand is positive")
    }

    /// `1 / x_F = r(3r + √(9r² − 4)) / 2`.
    pub fn inverse_x_width(&self) -> QuadValue {
        let r = Rational::from_integer(self.rank.clone());
        QuadValue::new(int(3) * &r * &r / int(2), r / int(2), self.radicand.clone())
            .expect("radicand is positive")
    }

    /// Whether `mu` lies in `]μ(F) − x_F, μ(F) + x_F[`.
    pub fn interval_contains(&self, mu: &Rational) -> bool {
        let t = (mu - &self.slope).abs();
        let r = Rational::from_integer(self.rank.clone());
        // x_F is the smaller root of X² − 3X + 1/r², and the larger one exceeds 3/2.
        t < int(3) / int(2) && &t * &t - int(3) * &t + (&r * &r).recip() > Rational::zero()
    }

    /// Checks the numeric invariants of an exceptional bundle.
    pub fn is_valid(&self) -> bool {
        is_exceptional_chern(&self.chern)
            && self.rank == self.chern.rank
            && self.slope.denom() == &self.rank
            && self.slope.numer() == &self.chern.c1
            && self.delta == exceptional_delta(&self.rank)
            && self.radicand == BigInt::from(9) * &self.rank * &self.rank - 4
    }
}

impl fmt::Display for ExceptionalBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E[{}] rank {} chern {}", self.slope, self.rank, self.chern)
    }
}

/// `α × β = (α + β)/2 + (Δ_β − Δ_α)/(3 + α − β)`, the slope `γ` with
/// `χ(E_γ, E_α) = χ(E_β, E_γ) = 0`.
pub fn compose(alpha: &Rational, beta: &Rational) -> Result<Rational> {
    let span = int(3) + alpha - beta;
    if span.is_zero() {
        return Err(Error::DegenerateSpan);
    }
    let da = exceptional_delta(alpha.denom());
    let db = exceptional_delta(beta.denom());
    Ok((alpha + beta) / int(2) + (db - da) / span)
}

fn ceil_rational(mu: &Rational) -> BigInt {
    mu.ceil().to_integer()
}

/// Memoized access to the dyadic tree of exceptional bundles.
///
/// Entries are keyed by normalized address `p/2^q` with `−2^q < p < 0`, `p`
/// odd. Reads take a shared lock, inserts an exclusive one.
#[derive(Debug)]
pub struct ExceptionalTree {
    max_depth: u32,
    cache: RwLock<HashMap<Dyadic, ExceptionalBundle>>,
}

impl Default for ExceptionalTree {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_DEPTH)
    }
}

impl ExceptionalTree {
    pub fn new(max_depth: u32) -> Self {
        ExceptionalTree {
            max_depth: max_depth.min(DEPTH_CEILING),
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// Process-wide tree with the default depth budget.
    pub fn global() -> &'static ExceptionalTree {
        static GLOBAL: OnceLock<ExceptionalTree> = OnceLock::new();
        GLOBAL.get_or_init(ExceptionalTree::default)
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    pub fn cached_len(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    /// Bundle at a normalized, reduced address with `exp ≥ 1`.
    fn node(&self, addr: Dyadic) -> Result<ExceptionalBundle> {
        if addr.exp > self.max_depth {
            return Err(Error::DepthExceeded(self.max_depth));
        }
        if let Some(b) = self.cache.read().expect("cache lock").get(&addr) {
            return Ok(b.clone());
        }
        let left = self.at(Dyadic::new((addr.num - 1) / 2, addr.exp - 1))?;
        let right = self.at(Dyadic::new((addr.num + 1) / 2, addr.exp - 1))?;
        let gamma = compose(&left.slope, &right.slope)?;
        let bundle = ExceptionalBundle::from_slope(&gamma)?.with_address(addr);
        debug_assert!(euler_form(&bundle.chern, &left.chern).is_zero());
        debug_assert!(euler_form(&right.chern, &bundle.chern).is_zero());
        self.cache
            .write()
            .expect("cache lock")
            .insert(addr, bundle.clone());
        Ok(bundle)
    }

    /// Bundle at a reduced address in `[−1, 0]`.
    fn at(&self, addr: Dyadic) -> Result<ExceptionalBundle> {
        if addr.exp == 0 {
            Ok(ExceptionalBundle::line_bundle(addr.num))
        } else {
            self.node(addr)
        }
    }

    /// `ε(p / 2^q)`.
    pub fn epsilon(&self, p: i64, q: u32) -> Result<ExceptionalBundle> {
        if q > self.max_depth {
            return Err(Error::DepthExceeded(self.max_depth));
        }
        let addr = Dyadic::new(p, q);
        if addr.exp == 0 {
            return Ok(ExceptionalBundle::line_bundle(addr.num));
        }
        let unit = 1i64 << addr.exp;
        // ceil(p / 2^q); p is odd, so the quotient is never exact.
        let k = addr.num.div_euclid(unit) + 1;
        let local = Dyadic::new(addr.num - k * unit, addr.exp);
        let node = self.node(local)?;
        let mut out = node.twist(&BigInt::from(k));
        out.address = Some(addr);
        Ok(out)
    }

    /// Locates `mu ∈ ]−1, 0[` in the normalized tree.
    fn locate_local(&self, mu: &Rational) -> Result<ExceptionalBundle> {
        for edge in [-1i64, 0] {
            let b = ExceptionalBundle::line_bundle(edge);
            if b.interval_contains(mu) {
                return Ok(b);
            }
        }
        // Bracket [lo/2^q, (lo + 1)/2^q].
        let mut lo: i64 = -1;
        for q in 1..=self.max_depth {
            let mid = Dyadic::new(2 * lo + 1, q);
            let g = self.node(mid)?;
            if g.interval_contains(mu) {
                return Ok(g);
            }
            lo = if *mu < g.slope { 2 * lo } else { 2 * lo + 1 };
        }
        Err(Error::DepthExceeded(self.max_depth))
    }

    /// The unique exceptional bundle whose interval contains `mu`.
    pub fn locate(&self, mu: &Rational) -> Result<ExceptionalBundle> {
        let k = ceil_rational(mu);
        let local = mu - Rational::from_integer(k.clone());
        if local.is_zero() {
            return Ok(ExceptionalBundle::line_bundle(k));
        }
        Ok(self.locate_local(&local)?.twist(&k))
    }

    /// The left exceptional series `(G_n)` of `f`: the triads with `f` as
    /// right term are `(G_n, G_{n+1}, f)`.
    pub fn left_series(&self, f: &ExceptionalBundle, count: usize) -> Result<Vec<ExceptionalBundle>> {
        if count == 0 || count > 64 {
            return Err(Error::OutOfRange(format!("series length {count} not in 1..=64")));
        }
        let k = ceil_rational(&f.slope);
        let local = &f.slope - Rational::from_integer(k.clone());
        let (g0, g1) = if local.is_zero() {
            (
                ExceptionalBundle::line_bundle(-2),
                ExceptionalBundle::line_bundle(-1),
            )
        } else {
            let home = self.locate_local(&local)?;
            if home.slope != local {
                return Err(Error::NotExceptional(f.slope.to_string()));
            }
            let addr = home.address.expect("tree nodes carry addresses");
            // f = E_α × E_β; the triad (E_β(−3), E_α, f) starts the series.
            let alpha = self.at(Dyadic::new((addr.num - 1) / 2, addr.exp - 1))?;
            let beta = self.at(Dyadic::new((addr.num + 1) / 2, addr.exp - 1))?;
            (beta.twist(&BigInt::from(-3)), alpha)
        };
        let mut series = vec![g0, g1];
        while series.len() < count {
            let prev = &series[series.len() - 2];
            let cur = &series[series.len() - 1];
            let h = euler_form(&prev.chern, &cur.chern);
            let next = cur.chern.character().scale(&h).sub(&prev.chern.character());
            let next = ExceptionalBundle::from_chern(&ChernData::from_character(&next)?)?;
            series.push(next);
        }
        series.truncate(count);
        Ok(series.into_iter().map(|g| g.twist(&k)).collect())
    }

    /// Cached nodes ordered by address.
    pub fn export(&self) -> Vec<ExceptionalBundle> {
        let cache = self.cache.read().expect("cache lock");
        let mut out: Vec<_> = cache.values().cloned().collect();
        out.sort_by_key(|b| {
            let a = b.address.expect("cached nodes carry addresses");
            (a.exp, a.num)
        });
        out
    }

    /// Seeds the cache with externally stored nodes. Every entry is
    /// revalidated (numeric exceptionality and the composition law against
    /// its parents); entries that fail are dropped. Returns the number kept.
    pub fn import(&self, entries: impl IntoIterator<Item = ExceptionalBundle>) -> usize {
        let mut pending: Vec<_> = entries
            .into_iter()
            .filter(|b| b.address.is_some())
            .collect();
        pending.sort_by_key(|b| {
            let a = b.address.unwrap();
            (a.exp, a.num)
        });
        let mut kept = 0;
        for b in pending {
            let addr = b.address.unwrap();
            let normalized = addr.exp >= 1
                && addr.exp <= self.max_depth
                && addr.num % 2 != 0
                && addr.num < 0
                && addr.num > -(1i64 << addr.exp);
            if !normalized || !b.is_valid() {
                continue;
            }
            let parent = |num: i64| {
                let p = Dyadic::new(num, addr.exp - 1);
                if p.exp == 0 {
                    Some(Rational::from_integer(p.num.into()))
                } else {
                    self.cache.read().expect("cache lock").get(&p).map(|b| b.slope.clone())
                }
            };
            let (Some(left), Some(right)) = (parent((addr.num - 1) / 2), parent((addr.num + 1) / 2)) else {
                continue;
            };
            if compose(&left, &right).ok().as_ref() != Some(&b.slope) {
                continue;
            }
            self.cache.write().expect("cache lock").insert(addr, b);
            kept += 1;
        }
        kept
    }
}

/// `ε(p / 2^q)` in the global tree.
pub fn epsilon(p: i64, q: u32) -> Result<ExceptionalBundle> {
    ExceptionalTree::global().epsilon(p, q)
}

/// [`ExceptionalTree::locate`] in the global tree.
pub fn locate(mu: &Rational) -> Result<ExceptionalBundle> {
    ExceptionalTree::global().locate(mu)
}

/// [`ExceptionalTree::left_series`] in the global tree.
pub fn left_series(f: &ExceptionalBundle, count: usize) -> Result<Vec<ExceptionalBundle>> {
    ExceptionalTree::global().left_series(f, count)
}

/// All tree nodes with slope in `[−1, 0]` down to `depth`, in slope order.
pub fn tree_nodes(tree: &ExceptionalTree, depth: u32) -> Result<Vec<ExceptionalBundle>> {
    let mut out = Vec::new();
    let unit = 1i64 << depth;
    for num in -unit..=0 {
        let addr = Dyadic::new(num, depth);
        out.push(tree.at(addr)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{qcompare, rat};
    use std::cmp::Ordering;

    fn c(r: i64, c1: i64, c2: i64) -> ChernData {
        ChernData::new(r, c1, c2)
    }

    #[test]
    fn from_slope_examples() {
        let b = ExceptionalBundle::from_slope(&rat(-1, 2)).unwrap();
        assert_eq!(b.chern, c(2, -1, 1));
        assert_eq!(ExceptionalBundle::from_slope(&int(0)).unwrap().chern, c(1, 0, 0));
        // Δ = 12/25 at rank 5 forces c2 = 6.
        assert_eq!(ExceptionalBundle::from_slope(&rat(-3, 5)).unwrap().chern, c(5, -3, 6));
        assert!(matches!(ExceptionalBundle::from_slope(&rat(1, 3)), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&int(-1), &int(0)).unwrap(), rat(-1, 2));
        assert_eq!(compose(&int(-1), &rat(-1, 2)).unwrap(), rat(-3, 5));
        assert_eq!(compose(&rat(-1, 2), &int(0)).unwrap(), rat(-2, 5));
        assert_eq!(compose(&int(-2), &int(-1)).unwrap(), rat(-3, 2));
        assert_eq!(compose(&int(0), &int(3)), Err(Error::DegenerateSpan));
    }

    #[test]
    fn compose_satisfies_orthogonality() {
        for (a, b) in [(int(-1), rat(-1, 2)), (rat(-1, 2), int(0)), (rat(-3, 5), rat(-1, 2))] {
            let g = compose(&a, &b).unwrap();
            let (ea, eb, eg) = (
                ExceptionalBundle::from_slope(&a).unwrap(),
                ExceptionalBundle::from_slope(&b).unwrap(),
                ExceptionalBundle::from_slope(&g).unwrap(),
            );
            assert!(euler_form(&eg.chern, &ea.chern).is_zero());
            assert!(euler_form(&eb.chern, &eg.chern).is_zero());
        }
    }

    #[test]
    fn epsilon_examples() {
        let tree = ExceptionalTree::default();
        let e = tree.epsilon(-1, 1).unwrap();
        assert_eq!((e.slope.clone(), e.rank.clone()), (rat(-1, 2), BigInt::from(2)));
        assert_eq!(tree.epsilon(3, 0).unwrap().slope, int(3));
        assert_eq!(tree.epsilon(-3, 2).unwrap().slope, rat(-3, 5));
        assert_eq!(tree.epsilon(-1, 2).unwrap().slope, rat(-2, 5));
        // ε(x + k) = ε(x) + k
        assert_eq!(tree.epsilon(5, 2).unwrap().slope, rat(7, 5));
        assert_eq!(tree.epsilon(5, 2).unwrap().address, Some(Dyadic::new(5, 2)));
        assert_eq!(tree.epsilon(-2, 2).unwrap().slope, rat(-1, 2));
        let shallow = ExceptionalTree::new(3);
        assert_eq!(shallow.epsilon(1, 4), Err(Error::DepthExceeded(3)));
    }

    #[test]
    fn x_width_examples() {
        let one = ExceptionalBundle::line_bundle(0);
        assert_eq!(one.x_width(), QuadValue::new(rat(3, 2), rat(-1, 2), 5.into()).unwrap());
        let two = ExceptionalBundle::from_slope(&rat(-1, 2)).unwrap();
        assert_eq!(two.x_width(), QuadValue::new(rat(6, 4), rat(-1, 4), 32.into()).unwrap());
        let five = ExceptionalBundle::from_slope(&rat(-2, 5)).unwrap();
        assert_eq!(five.x_width(), QuadValue::new(rat(15, 10), rat(-1, 10), 221.into()).unwrap());
        // x · (1/x) = 1
        assert_eq!(two.x_width().checked_mul(&two.inverse_x_width()).unwrap().as_rational(), Some(int(1)));
    }

    #[test]
    fn interval_examples() {
        let o = ExceptionalBundle::line_bundle(0);
        let two = ExceptionalBundle::from_slope(&rat(-1, 2)).unwrap();
        assert!(o.interval_contains(&rat(-1, 3)));
        assert!(!two.interval_contains(&rat(-1, 3)));
        assert!(two.interval_contains(&rat(-1, 2)));
    }

    #[test]
    fn locate_examples() {
        let tree = ExceptionalTree::default();
        assert_eq!(tree.locate(&rat(-1, 3)).unwrap().slope, int(0));
        assert_eq!(tree.locate(&rat(-1, 2)).unwrap().rank, BigInt::from(2));
        let f = tree.locate(&rat(-59, 100)).unwrap();
        assert_eq!((f.slope, f.rank), (rat(-3, 5), BigInt::from(5)));
        assert_eq!(tree.locate(&rat(41, 100)).unwrap().slope, rat(2, 5));
        assert_eq!(tree.locate(&int(-7)).unwrap().slope, int(-7));
    }

    #[test]
    fn located_interval_brackets_mu() {
        let tree = ExceptionalTree::default();
        for (n, d) in [(-1, 7), (-5, 12), (-13, 31), (-99, 100), (-1, 100), (-29, 50)] {
            let mu = rat(n, d);
            let f = tree.locate(&mu).unwrap();
            let x = f.x_width();
            let lo = x.neg().add_rational(&f.slope);
            let hi = x.add_rational(&f.slope);
            let m = QuadValue::rational(mu.clone());
            assert_eq!(qcompare(&lo, &m).unwrap(), Ordering::Less, "{mu}");
            assert_eq!(qcompare(&m, &hi).unwrap(), Ordering::Less, "{mu}");
        }
    }

    #[test]
    fn left_series_of_trivial_bundle() {
        let tree = ExceptionalTree::default();
        let s = tree.left_series(&ExceptionalBundle::line_bundle(0), 4).unwrap();
        let slopes: Vec<_> = s.iter().map(|g| g.slope.clone()).collect();
        assert_eq!(slopes, vec![int(-2), int(-1), rat(-1, 2), rat(-2, 5)]);
        assert_eq!(s[3].rank, BigInt::from(5));
    }

    #[test]
    fn left_series_of_rank_two() {
        let tree = ExceptionalTree::default();
        let f = tree.locate(&rat(-1, 2)).unwrap();
        let s = tree.left_series(&f, 5).unwrap();
        assert_eq!(s[0].slope, int(-3));
        assert_eq!(s[1].slope, int(-1));
        assert_eq!(s[2].slope, rat(-3, 5));
        for g in &s {
            assert!(euler_form(&f.chern, &g.chern).is_zero());
        }
        let shifted = tree.left_series(&f.twist(&BigInt::from(2)), 5).unwrap();
        assert_eq!(shifted[2].slope, rat(7, 5));
        assert!(tree.left_series(&ExceptionalBundle::from_slope(&rat(-1, 2)).unwrap(), 0).is_err());
    }

    #[test]
    fn left_series_rejects_non_exceptional() {
        let tree = ExceptionalTree::default();
        assert!(matches!(ExceptionalBundle::from_slope(&rat(-1, 4)), Err(Error::NonIntegral(_))));
        let mut fake = ExceptionalBundle::from_slope(&rat(-1, 2)).unwrap();
        fake.slope = rat(-1, 4);
        assert!(matches!(tree.left_series(&fake, 3), Err(Error::NotExceptional(_))));
    }

    #[test]
    fn import_revalidates() {
        let source = ExceptionalTree::default();
        source.locate(&rat(-59, 100)).unwrap();
        let mut entries = source.export();
        assert!(!entries.is_empty());
        let good = entries.len();
        let mut forged = entries[0].clone();
        forged.address = Some(Dyadic::new(-3, 3));
        entries.push(forged);
        let target = ExceptionalTree::default();
        assert_eq!(target.import(entries), good);
        assert_eq!(target.cached_len(), good);
    }

    #[test]
    fn dyadic_parse() {
        assert_eq!(Dyadic::parse("-3/2^2").unwrap(), Dyadic::new(-3, 2));
        assert_eq!(Dyadic::parse("-3/4").unwrap(), Dyadic::new(-3, 2));
        assert_eq!(Dyadic::parse("2/4").unwrap(), Dyadic::new(1, 1));
        assert_eq!(Dyadic::parse("5").unwrap(), Dyadic::new(5, 0));
        assert!(Dyadic::parse("1/3").is_err());
    }
}
