//! Kronecker modules `L ⊗ C^m → C^n` with `dim L = q ≥ 3`.
//!
//! A module is (semi)stable when every nonzero `M′ ⊂ C^m` whose image
//! `N′ = f(L ⊗ M′)` is not all of `C^n` satisfies `dim N′ / dim M′ ≥ n/m`
//! (strictly, for stability). The quotient `N(q, m, n)` has dimension
//! `qmn − m² − n² + 1`, and when `gcd(m, n) = 1` semistable equals stable.

pub mod field;
mod io;
mod stability;

pub use io::{module_from_json, module_to_json};
pub use stability::{
    check_ff, check_ff_with_budget, image_dim, search_destabilizer_q, subspace_count,
    verify_certificate, Certificate, StabilityStatus, StabilityVerdict, DEFAULT_SUBSPACE_BUDGET,
};

use num_integer::Integer;

use crate::arith::int;
use crate::chern::{self, ChernData};
use crate::{BigInt, Error, QuadValue, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KroneckerShape {
    pub q: usize,
    pub m: usize,
    pub n: usize,
}

impl KroneckerShape {
    pub fn new(q: usize, m: usize, n: usize) -> Result<Self> {
        if q < 3 {
            return Err(Error::OutOfRange(format!("q = {q}, need q ≥ 3")));
        }
        if m == 0 || n == 0 {
            return Err(Error::OutOfRange("m and n must be positive".into()));
        }
        Ok(KroneckerShape { q, m, n })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
}

/// A Kronecker module with `entries[l][i][j]` the coefficient of the `j`-th
/// basis vector of `C^n` in `f(l ⊗ e_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KroneckerModule {
    pub shape: KroneckerShape,
    pub field: FieldKind,
    pub entries: Vec<Vec<Vec<Rational>>>,
}

impl KroneckerModule {
    pub fn new(shape: KroneckerShape, field: FieldKind, entries: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let ok = entries.len() == shape.q
            && entries
                .iter()
                .all(|slice| slice.len() == shape.m && slice.iter().all(|row| row.len() == shape.n));
        if !ok {
            return Err(Error::OutOfRange(format!(
                "entries do not have shape {}×{}×{}",
                shape.q, shape.m, shape.n
            )));
        }
        Ok(KroneckerModule { shape, field, entries })
    }

    pub fn zero(shape: KroneckerShape, field: FieldKind) -> Self {
        let entries = vec![vec![vec![int(0); shape.n]; shape.m]; shape.q];
        KroneckerModule { shape, field, entries }
    }
}

/// `dim N(q, m, n) = qmn − m² − n² + 1`.
pub fn moduli_dim(s: &KroneckerShape) -> i64 {
    let (q, m, n) = (s.q as i64, s.m as i64, s.n as i64);
    q * m * n - m * m - n * n + 1
}

/// `n1/m1 ≥ n/m` (or `>` when `strict`).
pub fn slope_ok(m1: usize, n1: usize, s: &KroneckerShape, strict: bool) -> Result<bool> {
    if m1 < 1 || m1 > s.m || n1 > s.n {
        return Err(Error::OutOfRange(format!("({m1}, {n1}) outside 1..={} × 0..={}", s.m, s.n)));
    }
    let (lhs, rhs) = (n1 * s.m, s.n * m1);
    Ok(if strict { lhs > rhs } else { lhs >= rhs })
}

/// Semistable equals stable when `gcd(m, n) = 1`.
pub fn coprime_fine(s: &KroneckerShape) -> bool {
    s.m.gcd(&s.n) == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `0 → O(−n−1)^n → O(−n)^{n+1} → I_Z → 0`, `Z` of length `n(n+1)/2`.
    IdealLength,
    /// `O(−2)^{n−1} → O(−1)^{2n−3}` with cokernel of rank `n − 2`.
    RankN2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyInvariants {
    pub shape: KroneckerShape,
    pub cokernel: ChernData,
    pub moduli_dim: i64,
    /// Dimension on the sheaf side: `2·length` for the Hilbert scheme,
    /// `1 + r²(2Δ − 1)` otherwise.
    pub sheaf_dim: BigInt,
    pub dim_match: bool,
}

pub fn family_invariants(kind: FamilyKind, n: usize) -> Result<FamilyInvariants> {
    let o = |k: i64| ChernData::line_bundle(k);
    let count = |k: usize| BigInt::from(k);
    let ni = n as i64;
    let (shape, cokernel, sheaf_dim) = match kind {
        FamilyKind::IdealLength => {
            if n < 1 {
                return Err(Error::OutOfRange("ideal family needs n ≥ 1".into()));
            }
            let coker = chern::chern_of_complex(&[(o(-ni), count(n + 1))], &[(o(-ni - 1), count(n))])?;
            let length = coker.c2.clone();
            (KroneckerShape::new(3, n, n + 1)?, coker, length * 2)
        }
        FamilyKind::RankN2 => {
            if n < 4 {
                return Err(Error::OutOfRange("rank n−2 family needs n ≥ 4".into()));
            }
            let coker = chern::chern_of_complex(&[(o(-1), count(2 * n - 3))], &[(o(-2), count(n - 1))])?;
            let dim = chern::dim_stable_p2(&coker)?;
            (KroneckerShape::new(3, n - 1, 2 * n - 3)?, coker, dim)
        }
    };
    let moduli_dim = moduli_dim(&shape);
    Ok(FamilyInvariants {
        shape,
        dim_match: BigInt::from(moduli_dim) == sheaf_dim,
        cokernel,
        moduli_dim,
        sheaf_dim,
    })
}

/// Cokernels of `O(−2)^{n−1} → O(−1)^p` for `2n − 2 ≤ p < (3+√5)/2·(n − 1)`,
/// where stable sheaves and stable Kronecker modules of shape `(3, n−1, p)`
/// correspond.
#[derive(Clone, Debug, PartialEq)]
pub struct MorphismFamily {
    pub shape: KroneckerShape,
    /// Computed from Chern characters.
    pub cokernel: ChernData,
    /// `(p − n, 2n − 2 − p, p(p−1)/2 + n(n+1)/2 − 2(n−1)p)`, the closed forms
    /// as commonly quoted.
    pub quoted: ChernData,
    pub matches_quoted: bool,
    pub dim_match: bool,
}

pub fn morphism_family(n: usize, p: usize) -> Result<MorphismFamily> {
    if n < 2 {
        return Err(Error::OutOfRange("need n ≥ 2".into()));
    }
    let upper = QuadValue::new(int(3) / int(2), int(1) / int(2), BigInt::from(5))?
        .scale(&Rational::from_integer(BigInt::from(n - 1)));
    let below_upper = crate::arith::qsign(&upper.add_rational(&-int(p as i64))) > 0;
    if p < 2 * n - 2 || !below_upper {
        return Err(Error::OutOfRange(format!("p = {p} outside [2n−2, (3+√5)(n−1)/2)")));
    }
    let shape = KroneckerShape::new(3, n - 1, p)?;
    let cokernel = chern::chern_of_complex(
        &[(ChernData::line_bundle(-1), BigInt::from(p))],
        &[(ChernData::line_bundle(-2), BigInt::from(n - 1))],
    )?;
    let (ni, pi) = (n as i64, p as i64);
    let quoted = ChernData::new(
        pi - ni,
        2 * ni - 2 - pi,
        pi * (pi - 1) / 2 + ni * (ni + 1) / 2 - 2 * (ni - 1) * pi,
    );
    let dim_match = BigInt::from(moduli_dim(&shape)) == chern::dim_stable_p2(&cokernel)?;
    Ok(MorphismFamily {
        shape,
        matches_quoted: quoted == cokernel,
        cokernel,
        quoted,
        dim_match,
    })
}

/// A numerical wall candidate for morphisms `O(−3)^m → A^n ⊕ B^p` under the
/// polarization `λ·n + μ·p = 1`, `ρ = λ/μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallCandidate {
    pub triple: (usize, usize, usize),
    pub lambda: Rational,
    pub rho: Rational,
}

/// Subtriples `(m′, n′, p′)` whose slope condition
/// `λ·n′ + μ·p′ = m′/m` has a solution with `ρ > 3`.
///
/// This is a numerical over-approximation: no check is made that a
/// subobject of that type actually occurs.
pub fn candidate_walls(m: usize, n: usize, p: usize) -> Result<Vec<WallCandidate>> {
    if m == 0 || n == 0 || p == 0 {
        return Err(Error::OutOfRange("m, n and p must be positive".into()));
    }
    let (nr, pr, mr) = (int(n as i64), int(p as i64), int(m as i64));
    let mut out = Vec::new();
    for m1 in 1..=m {
        for n1 in 0..=n {
            for p1 in 0..=p {
                if (m1, n1, p1) == (m, n, p) {
                    continue;
                }
                let (n1r, p1r) = (int(n1 as i64), int(p1 as i64));
                // λ·n′ + ((1 − λn)/p)·p′ = m′/m
                let coeff = &n1r - &nr * &p1r / &pr;
                if coeff == int(0) {
                    continue;
                }
                let lambda = (int(m1 as i64) / &mr - &p1r / &pr) / coeff;
                let mu = (int(1) - &lambda * &nr) / &pr;
                if lambda <= int(0) || mu <= int(0) {
                    continue;
                }
                let rho = &lambda / &mu;
                if rho > int(3) {
                    out.push(WallCandidate {
                        triple: (m1, n1, p1),
                        lambda,
                        rho,
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| a.rho.cmp(&b.rho).then(a.triple.cmp(&b.triple)));
    out.dedup();
    Ok(out)
}
