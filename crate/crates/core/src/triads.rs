//! Triads (helix bases) with slopes in `[−1, 0]`, their mutations, and the
//! triangles they cut out of the `(μ, Δ)` plane.
//!
//! A triad `(E, F, G)` has `F = E × G`. Its triangle is bounded by three conic
//! arcs, the zero loci of the multiplicity forms
//!
//! * `m = χ(X, E)`,
//! * `n = −χ(X, H)` with `H` the kernel of `E ⊗ Hom(E, F) → F`,
//! * `p = χ(G, X)`,
//!
//! which return `(1,0,0)`, `(0,1,0)`, `(0,0,1)` on `E`, `F`, `G` and are
//! additive, so `ch(X) = m·ch(E) + n·ch(F) + p·ch(G)` for every `X`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chern::{self, euler_form, hilbert_p, ChernCharacter, ChernData, SlopeDisc};
use crate::exceptional::{compose, Dyadic, ExceptionalBundle, DEFAULT_MAX_DEPTH};
use crate::{boundary, BigInt, Error, Rational, Result};

/// Position `(level, index)` in the enumeration of triads: level `n` holds
/// `2^n` triads ordered by slope.
pub type TriadAddress = (u32, u64);

#[derive(Clone, Debug, PartialEq)]
pub struct Triad {
    pub e: ExceptionalBundle,
    pub f: ExceptionalBundle,
    pub g: ExceptionalBundle,
    /// Kernel of the evaluation map `E ⊗ Hom(E, F) → F`.
    pub h: ExceptionalBundle,
    pub address: TriadAddress,
}

/// `ch = k·ch(a) − ch(b)`, validated as exceptional.
fn mutate(k: &BigInt, a: &ExceptionalBundle, b: &ExceptionalBundle) -> Result<ExceptionalBundle> {
    let ch = a.chern.character().scale(k).sub(&b.chern.character());
    ExceptionalBundle::from_chern(&ChernData::from_character(&ch)?)
}

fn with_address(mut b: ExceptionalBundle, num: i64, exp: u32) -> ExceptionalBundle {
    b.address = Some(Dyadic::new(num, exp));
    b
}

/// The root triad `(O(−1), Q*, O)`.
pub fn base_triad() -> Triad {
    let e = ExceptionalBundle::line_bundle(-1);
    let g = ExceptionalBundle::line_bundle(0);
    let f = with_address(
        ExceptionalBundle::from_chern(&ChernData::new(2, -1, 1)).expect("Q* is exceptional"),
        -1,
        1,
    );
    Triad::assemble(e, f, g, (0, 0)).expect("base triad is valid")
}

impl Triad {
    /// Rebuilds a triad from its outer members, checking `F = E × G`.
    pub fn from_parts(
        e: ExceptionalBundle,
        f: ExceptionalBundle,
        g: ExceptionalBundle,
        address: TriadAddress,
    ) -> Result<Self> {
        if compose(&e.slope, &g.slope)? != f.slope || ![&e, &f, &g].iter().all(|b| b.is_valid()) {
            return Err(Error::NotExceptional(format!("({}, {}, {})", e.slope, f.slope, g.slope)));
        }
        Triad::assemble(e, f, g, address)
    }

    fn assemble(
        e: ExceptionalBundle,
        f: ExceptionalBundle,
        g: ExceptionalBundle,
        address: TriadAddress,
    ) -> Result<Self> {
        let h = mutate(&euler_form(&e.chern, &f.chern), &e, &f)?;
        Ok(Triad { e, f, g, h, address })
    }

    pub fn level(&self) -> u32 {
        self.address.0
    }

    /// Dyadic numerator of `E` at exponent `level`.
    fn left_num(&self) -> i64 {
        let (n, i) = self.address;
        i as i64 - (1i64 << n)
    }

    /// The adjacent triads `(E, H', F)` and `(F, K, G)`.
    pub fn children(&self, max_depth: u32) -> Result<(Triad, Triad)> {
        let (n, i) = self.address;
        if n + 1 > max_depth.min(crate::exceptional::DEPTH_CEILING - 2) {
            return Err(Error::DepthExceeded(max_depth));
        }
        let base = 4 * self.left_num();
        // H' = ker(F ⊗ Hom(F, G) → G), K = coker(E → F ⊗ Hom(E, F)*).
        let left_mid = mutate(&euler_form(&self.f.chern, &self.g.chern), &self.f, &self.g)?;
        let right_mid = mutate(&euler_form(&self.e.chern, &self.f.chern), &self.f, &self.e)?;
        debug_assert_eq!(compose(&self.e.slope, &self.f.slope)?, left_mid.slope);
        debug_assert_eq!(compose(&self.f.slope, &self.g.slope)?, right_mid.slope);
        let left = Triad::assemble(
            self.e.clone(),
            with_address(left_mid, base + 1, n + 2),
            self.f.clone(),
            (n + 1, 2 * i),
        )?;
        let right = Triad::assemble(
            self.f.clone(),
            with_address(right_mid, base + 3, n + 2),
            self.g.clone(),
            (n + 1, 2 * i + 1),
        )?;
        Ok((left, right))
    }

    /// Per-unit-rank multiplicity forms `(m, n, p) / (r · rank)` at `s`.
    pub fn forms(&self, s: &SlopeDisc) -> [Rational; 3] {
        let (mu, delta) = (&s.mu, &s.delta);
        let m = hilbert_p(&(&self.e.slope - mu)) - delta - &self.e.delta;
        let n = delta + &self.h.delta - hilbert_p(&(&self.h.slope - mu));
        let p = hilbert_p(&(mu - &self.g.slope)) - delta - &self.g.delta;
        [m, n, p]
    }

    /// Closed triangle membership.
    pub fn contains(&self, s: &SlopeDisc) -> bool {
        self.forms(s).iter().all(|v| *v >= Rational::from_integer(0.into()))
    }

    /// Open triangle membership.
    pub fn strictly_contains(&self, s: &SlopeDisc) -> bool {
        self.forms(s).iter().all(|v| *v > Rational::from_integer(0.into()))
    }

    /// `(m, n, p)` with `ch(X) = m·ch(E) + n·ch(F) + p·ch(G)`, where `X` is
    /// the Chern data of rank `rank` at `s`.
    pub fn multiplicities(&self, s: &SlopeDisc, rank: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
        let x = chern::from_slope_disc(rank, s)?;
        Ok(self.multiplicities_of(&x))
    }

    pub fn multiplicities_of(&self, x: &ChernData) -> (BigInt, BigInt, BigInt) {
        (
            euler_form(x, &self.e.chern),
            -euler_form(x, &self.h.chern),
            euler_form(&self.g.chern, x),
        )
    }

    /// `m·ch(E) + n·ch(F) + p·ch(G)`.
    pub fn combine(&self, m: &BigInt, n: &BigInt, p: &BigInt) -> ChernCharacter {
        self.e
            .chern
            .character()
            .scale(m)
            .add(&self.f.chern.character().scale(n))
            .add(&self.g.chern.character().scale(p))
    }
}

impl fmt::Display for Triad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "T{:?} ({}, {}, {})",
            self.address, self.e.slope, self.f.slope, self.g.slope
        )
    }
}

pub fn children(t: &Triad) -> Result<(Triad, Triad)> {
    t.children(DEFAULT_MAX_DEPTH)
}

pub fn multiplicities(t: &Triad, s: &SlopeDisc, rank: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    t.multiplicities(s, rank)
}

pub fn triangle_contains(t: &Triad, s: &SlopeDisc) -> bool {
    t.contains(s)
}

/// A triad whose closed triangle contains `s`, with the default depth budget.
pub fn find_triangle(s: &SlopeDisc) -> Result<Triad> {
    find_triangle_within(s, DEFAULT_MAX_DEPTH)
}

/// Descends from the base triad toward `s`; returns the shallowest triad
/// whose closed triangle contains it.
pub fn find_triangle_within(s: &SlopeDisc, max_depth: u32) -> Result<Triad> {
    if !boundary::in_region_s(s)? {
        return Err(Error::NotInRegion);
    }
    let mut t = base_triad();
    loop {
        if t.contains(s) {
            return Ok(t);
        }
        if t.level() >= max_depth {
            return Err(Error::DepthExceeded(max_depth));
        }
        let (left, right) = t.children(max_depth)?;
        t = if s.mu <= t.f.slope { left } else { right };
    }
}

/// Every triad of level at most `depth`, breadth first.
pub fn triads_to_depth(depth: u32) -> Result<Vec<Triad>> {
    let mut all = vec![base_triad()];
    let mut frontier = all.clone();
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for t in &frontier {
            let (l, r) = t.children(depth)?;
            next.push(l);
            next.push(r);
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(all)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TilingViolation {
    pub point: SlopeDisc,
    pub sampled_in: TriadAddress,
    pub also_in: TriadAddress,
}

#[derive(Clone, Debug, Default)]
pub struct TilingReport {
    pub triangles: usize,
    pub samples: usize,
    pub violations: Vec<TilingViolation>,
}

/// Samples points strictly inside triangles of level `≤ depth` and reports
/// any other triangle of that range that also contains one strictly.
///
/// Points are drawn as positive integer combinations of the three vertices'
/// Chern characters, which places them strictly inside.
pub fn tiling_spotcheck(depth: u32, samples: usize, seed: u64) -> Result<TilingReport> {
    if depth > 6 {
        return Err(Error::OutOfRange(format!("tiling depth {depth} exceeds 6")));
    }
    let all = triads_to_depth(depth)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TilingReport {
        triangles: all.len(),
        samples,
        violations: Vec::new(),
    };
    for _ in 0..samples {
        let home = &all[rng.gen_range(0..all.len())];
        let w: [BigInt; 3] = std::array::from_fn(|_| BigInt::from(rng.gen_range(1..=12u32)));
        let x = ChernData::from_character(&home.combine(&w[0], &w[1], &w[2]))?;
        let point = chern::slope_disc(&x)?;
        debug_assert!(home.strictly_contains(&point));
        for other in &all {
            if other.address != home.address && other.strictly_contains(&point) {
                report.violations.push(TilingViolation {
                    point: point.clone(),
                    sampled_in: home.address,
                    also_in: other.address,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use num_traits::Zero;

    fn sd(mu: Rational, delta: Rational) -> SlopeDisc {
        SlopeDisc::new(mu, delta)
    }

    fn b(k: i64) -> BigInt {
        BigInt::from(k)
    }

    #[test]
    fn base_triad_shape() {
        let t = base_triad();
        let slopes = [&t.e.slope, &t.f.slope, &t.g.slope];
        assert_eq!(slopes, [&int(-1), &rat(-1, 2), &int(0)]);
        assert_eq!([&t.e.rank, &t.f.rank, &t.g.rank], [&b(1), &b(2), &b(1)]);
        assert_eq!((t.h.slope.clone(), t.h.rank.clone()), (int(-2), b(1)));
        assert_eq!(t.address, (0, 0));
    }

    #[test]
    fn rebuilt_from_parts() {
        let t = base_triad();
        let again = Triad::from_parts(t.e.clone(), t.f.clone(), t.g.clone(), t.address).unwrap();
        assert_eq!(again, t);
        let wrong = ExceptionalBundle::from_slope(&rat(-2, 5)).unwrap();
        assert!(Triad::from_parts(t.e.clone(), wrong, t.g.clone(), t.address).is_err());
    }

    #[test]
    fn children_of_base() {
        let (l, r) = children(&base_triad()).unwrap();
        assert_eq!(l.e.slope, int(-1));
        assert_eq!((l.f.slope.clone(), l.f.rank.clone()), (rat(-3, 5), b(5)));
        assert_eq!(l.g.slope, rat(-1, 2));
        assert_eq!((r.f.slope.clone(), r.f.rank.clone()), (rat(-2, 5), b(5)));
        assert_eq!(l.f.slope, compose(&int(-1), &rat(-1, 2)).unwrap());
        assert_eq!(l.address, (1, 0));
        assert_eq!(r.address, (1, 1));
        assert_eq!(l.f.address, Some(Dyadic::new(-3, 2)));
        assert_eq!(r.f.address, Some(Dyadic::new(-1, 2)));
        assert!(base_triad().children(0).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let t = base_triad();
        assert_eq!(t.multiplicities(&sd(rat(-1, 2), rat(-1, 8)), &b(2)).unwrap(), (b(1), b(0), b(1)));
        assert_eq!(t.multiplicities(&sd(rat(-1, 2), rat(3, 8)), &b(2)).unwrap(), (b(0), b(1), b(0)));
        assert_eq!(t.multiplicities(&sd(int(-1), int(0)), &b(1)).unwrap(), (b(1), b(0), b(0)));
        assert!(matches!(
            t.multiplicities(&sd(rat(-1, 3), int(0)), &b(2)),
            Err(Error::NonIntegral(_))
        ));
    }

    #[test]
    fn unit_multiplicities_on_vertices() {
        let (l, r) = base_triad().children(4).unwrap();
        for t in [base_triad(), l, r] {
            assert_eq!(t.multiplicities_of(&t.e.chern), (b(1), b(0), b(0)));
            assert_eq!(t.multiplicities_of(&t.f.chern), (b(0), b(1), b(0)));
            assert_eq!(t.multiplicities_of(&t.g.chern), (b(0), b(0), b(1)));
        }
    }

    #[test]
    fn containment_examples() {
        let t = base_triad();
        assert!(triangle_contains(&t, &sd(rat(-1, 2), rat(-1, 8))));
        assert!(triangle_contains(&t, &sd(rat(-1, 2), rat(3, 8))));
        assert!(!triangle_contains(&t, &sd(rat(-1, 2), rat(1, 2))));
        assert!(t.forms(&sd(rat(-1, 2), rat(-1, 8)))[1].is_zero());
    }

    #[test]
    fn lower_edge_is_prioritary_floor() {
        let t = base_triad();
        for k in 0..=20 {
            let mu = rat(-k, 20);
            let floor = &mu * (&mu + int(1)) / int(2);
            assert!(t.forms(&sd(mu, floor))[1].is_zero());
        }
    }

    #[test]
    fn find_triangle_examples() {
        assert_eq!(find_triangle(&sd(rat(-1, 2), rat(-1, 8))).unwrap().address, (0, 0));
        let t = find_triangle(&sd(rat(-2, 5), rat(12, 25))).unwrap();
        assert_eq!(t.address, (1, 1));
        assert_eq!(t.f.slope, rat(-2, 5));
        assert_eq!(find_triangle(&sd(rat(-1, 2), rat(17, 24))), Err(Error::NotInRegion));
    }

    #[test]
    fn tiling_examples() {
        assert!(tiling_spotcheck(0, 10, 1).unwrap().violations.is_empty());
        let r = tiling_spotcheck(2, 100, 2).unwrap();
        assert_eq!(r.triangles, 7);
        assert!(r.violations.is_empty());
        assert!(tiling_spotcheck(7, 1, 0).is_err());
    }

    #[test]
    fn triads_enumerate_in_slope_order() {
        let all = triads_to_depth(3).unwrap();
        assert_eq!(all.len(), 15);
        let level3: Vec<_> = all.iter().filter(|t| t.level() == 3).collect();
        for w in level3.windows(2) {
            assert_eq!(w[0].g, w[1].e);
            assert!(w[0].address.1 + 1 == w[1].address.1);
        }
    }
}
