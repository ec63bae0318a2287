//! (Semi)stability checks: exhaustive over prime fields, a certificate search
//! over the rationals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{left_kernel, rank, Field, PrimeField, RationalField};
use super::{FieldKind, KroneckerModule, KroneckerShape};
use crate::arith::int;
use crate::{Error, Rational, Result};

pub const DEFAULT_SUBSPACE_BUDGET: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityStatus {
    Stable,
    Semistable,
    Unstable,
    Unknown,
}

/// A destabilizing subspace `M′`: `dim N′ / dim M′ < n/m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    /// Rows spanning `M′`, in reduced echelon form when found by enumeration.
    pub basis: Vec<Vec<Rational>>,
    pub subspace_dim: usize,
    pub image_dim: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    pub certificate: Option<Certificate>,
    pub note: Option<String>,
}

impl StabilityVerdict {
    fn plain(status: StabilityStatus) -> Self {
        StabilityVerdict { status, certificate: None, note: None }
    }

    fn unstable(cert: Certificate) -> Self {
        StabilityVerdict { status: StabilityStatus::Unstable, certificate: Some(cert), note: None }
    }
}

/// Number of subspaces of `F_p^m` of every dimension `1..=m`, or `None` on
/// overflow.
pub fn subspace_count(p: u64, m: usize) -> Option<u128> {
    let p = p as u128;
    // Gaussian binomials via the recurrence [m, k] = [m−1, k−1] + p^k [m−1, k].
    let mut row: Vec<u128> = vec![1];
    for i in 1..=m {
        let mut next = vec![1u128; i + 1];
        for k in 1..i {
            let pk = p.checked_pow(k as u32)?;
            next[k] = row[k - 1].checked_add(pk.checked_mul(row[k])?)?;
        }
        row = next;
    }
    row[1..].iter().try_fold(0u128, |acc, &x| acc.checked_add(x))
}

fn convert<F: Field>(field: &F, rows: &[Vec<Rational>]) -> Result<Vec<Vec<F::Elem>>> {
    rows.iter()
        .map(|row| row.iter().map(|x| field.embed(x)).collect())
        .collect()
}

fn slices<F: Field>(field: &F, module: &KroneckerModule) -> Result<Vec<Vec<Vec<F::Elem>>>> {
    module.entries.iter().map(|slice| convert(field, slice)).collect()
}

/// `dim f(L ⊗ M′)` for `M′` spanned by `basis`.
fn image_rank<F: Field>(field: &F, slices: &[Vec<Vec<F::Elem>>], n: usize, basis: &[Vec<F::Elem>]) -> usize {
    let mut rows = Vec::with_capacity(basis.len() * slices.len());
    for v in basis {
        for slice in slices {
            let mut w = vec![field.zero(); n];
            for (vi, row) in v.iter().zip(slice) {
                if field.is_zero(vi) {
                    continue;
                }
                for (wj, rj) in w.iter_mut().zip(row) {
                    *wj = field.add(wj, &field.mul(vi, rj));
                }
            }
            rows.push(w);
        }
    }
    rank(field, &rows)
}

/// `dim f(L ⊗ span(basis))`, computed in the module's field.
pub fn image_dim(module: &KroneckerModule, basis: &[Vec<Rational>]) -> Result<usize> {
    if basis.iter().any(|v| v.len() != module.shape.m) {
        return Err(Error::OutOfRange("basis vectors must have length m".into()));
    }
    match module.field {
        FieldKind::Rationals => {
            let f = RationalField;
            Ok(image_rank(&f, &slices(&f, module)?, module.shape.n, &convert(&f, basis)?))
        }
        FieldKind::Prime(p) => {
            let f = PrimeField::new(p)?;
            Ok(image_rank(&f, &slices(&f, module)?, module.shape.n, &convert(&f, basis)?))
        }
    }
}

fn subspace_rank(module: &KroneckerModule, basis: &[Vec<Rational>]) -> Result<usize> {
    match module.field {
        FieldKind::Rationals => Ok(rank(&RationalField, basis)),
        FieldKind::Prime(p) => {
            let f = PrimeField::new(p)?;
            Ok(rank(&f, &convert(&f, basis)?))
        }
    }
}

fn violates(s: &KroneckerShape, sub: usize, image: usize, strict: bool) -> bool {
    let (lhs, rhs) = (image * s.m, s.n * sub);
    if strict {
        lhs <= rhs
    } else {
        lhs < rhs
    }
}

/// Recomputes the image from raw entries and checks `dim N′·m < n·dim M′`.
pub fn verify_certificate(module: &KroneckerModule, cert: &Certificate) -> Result<bool> {
    if cert.basis.is_empty() || subspace_rank(module, &cert.basis)? != cert.subspace_dim {
        return Ok(false);
    }
    let image = image_dim(module, &cert.basis)?;
    Ok(image == cert.image_dim && violates(&module.shape, cert.subspace_dim, image, false))
}

/// Every subspace of `F_p^m` in reduced echelon form: the whole space first,
/// then by dimension ascending, pivot sets and free entries lexicographic.
struct EchelonSubspaces {
    p: u64,
    m: usize,
}

impl EchelonSubspaces {
    fn for_each(&self, mut visit: impl FnMut(&[Vec<u64>]) -> bool) {
        let identity: Vec<Vec<u64>> = (0..self.m)
            .map(|i| (0..self.m).map(|j| u64::from(i == j)).collect())
            .collect();
        if !visit(&identity) {
            return;
        }
        for k in 1..self.m {
            let mut pivots: Vec<usize> = (0..k).collect();
            loop {
                if !self.with_pivots(&pivots, &mut visit) {
                    return;
                }
                if !next_combination(&mut pivots, self.m) {
                    break;
                }
            }
        }
    }

    /// Runs through all free-entry assignments for a pivot set.
    fn with_pivots(&self, pivots: &[usize], visit: &mut impl FnMut(&[Vec<u64>]) -> bool) -> bool {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                ((pc + 1)..self.m)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0u64; free.len()];
        let mut rows = vec![vec![0u64; self.m]; pivots.len()];
        for (r, &pc) in pivots.iter().enumerate() {
            rows[r][pc] = 1;
        }
        loop {
            for (&(r, c), &d) in free.iter().zip(&digits) {
                rows[r][c] = d;
            }
            if !visit(&rows) {
                return false;
            }
            // Odometer, last position fastest.
            let mut i = digits.len();
            loop {
                if i == 0 {
                    return true;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < self.p {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in (i + 1)..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

pub fn check_ff(module: &KroneckerModule) -> Result<StabilityVerdict> {
    check_ff_with_budget(module, DEFAULT_SUBSPACE_BUDGET)
}

/// Exhaustive check over `F_p`: every nonzero `M′ ⊂ F_p^m` with its image
/// `N′`. Fails with `SizeLimit` when there are more than `budget` subspaces.
pub fn check_ff_with_budget(module: &KroneckerModule, budget: u128) -> Result<StabilityVerdict> {
    let FieldKind::Prime(p) = module.field else {
        return Err(Error::OutOfRange("exhaustive check needs a prime field".into()));
    };
    let field = PrimeField::new(p)?;
    let s = module.shape;
    let count = subspace_count(p, s.m).unwrap_or(u128::MAX);
    if count > budget {
        return Err(Error::SizeLimit(count, budget));
    }
    let slices = slices(&field, module)?;
    let mut found: Option<Certificate> = None;
    let mut stable = true;
    EchelonSubspaces { p, m: s.m }.for_each(|basis| {
        let image = image_rank(&field, &slices, s.n, basis);
        let k = basis.len();
        if violates(&s, k, image, false) {
            found = Some(Certificate {
                basis: basis
                    .iter()
                    .map(|row| row.iter().map(|x| field.to_rational(x)).collect())
                    .collect(),
                subspace_dim: k,
                image_dim: image,
            });
            return false;
        }
        if image < s.n && violates(&s, k, image, true) {
            stable = false;
        }
        true
    });
    Ok(match found {
        Some(cert) => StabilityVerdict::unstable(cert),
        None if stable => StabilityVerdict::plain(StabilityStatus::Stable),
        None => StabilityVerdict::plain(StabilityStatus::Semistable),
    })
}

/// Looks for a destabilizing subspace among coordinate subspaces, slice
/// kernels, the joint kernel and `effort` random small-integer subspaces.
/// Never concludes (semi)stability.
pub fn search_destabilizer_q(module: &KroneckerModule, effort: usize, seed: u64) -> Result<StabilityVerdict> {
    let s = module.shape;
    let m = s.m;
    let unit = |i: usize| -> Vec<Rational> { (0..m).map(|j| int(i64::from(i == j))).collect() };
    let whole: Vec<Vec<Rational>> = (0..m).map(unit).collect();

    let try_basis = |basis: Vec<Vec<Rational>>| -> Result<Option<Certificate>> {
        let k = subspace_rank(module, &basis)?;
        if k == 0 {
            return Ok(None);
        }
        let image = image_dim(module, &basis)?;
        Ok(violates(&s, k, image, false).then_some(Certificate { basis, subspace_dim: k, image_dim: image }))
    };

    if let Some(c) = try_basis(whole)? {
        return Ok(StabilityVerdict::unstable(c));
    }
    if m == 1 {
        return Ok(StabilityVerdict {
            note: Some("no proper subspaces".into()),
            ..StabilityVerdict::plain(StabilityStatus::Unknown)
        });
    }

    let mut candidates: Vec<Vec<Vec<Rational>>> = Vec::new();
    if m <= 12 {
        for mask in 1u32..(1 << m) - 1 {
            candidates.push((0..m).filter(|i| mask >> i & 1 == 1).map(unit).collect());
        }
    } else {
        candidates.extend((0..m).map(|i| vec![unit(i)]));
    }
    let kernels = rational_kernels(module)?;
    for kernel in kernels {
        candidates.extend(kernel.iter().map(|v| vec![v.clone()]));
        candidates.push(kernel);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..effort {
        let k = rng.gen_range(1..m);
        candidates.push(
            (0..k)
                .map(|_| (0..m).map(|_| int(rng.gen_range(-2..=2))).collect())
                .collect(),
        );
    }
    for basis in candidates {
        if basis.is_empty() {
            continue;
        }
        if let Some(c) = try_basis(basis)? {
            return Ok(StabilityVerdict::unstable(c));
        }
    }
    Ok(StabilityVerdict {
        note: Some("no destabilizing subspace found".into()),
        ..StabilityVerdict::plain(StabilityStatus::Unknown)
    })
}

/// Kernels of each slice `C^m → C^n` and their common kernel, as rational
/// bases (over a prime field, representatives in `0..p`).
fn rational_kernels(module: &KroneckerModule) -> Result<Vec<Vec<Vec<Rational>>>> {
    fn go<F: Field>(field: &F, module: &KroneckerModule) -> Result<Vec<Vec<Vec<Rational>>>> {
        let sl = slices(field, module)?;
        let back = |vs: Vec<Vec<F::Elem>>| -> Vec<Vec<Rational>> {
            vs.iter().map(|v| v.iter().map(|x| field.to_rational(x)).collect()).collect()
        };
        let mut out: Vec<_> = sl.iter().map(|slice| back(left_kernel(field, slice))).collect();
        let joint: Vec<Vec<F::Elem>> = (0..module.shape.m)
            .map(|i| sl.iter().flat_map(|slice| slice[i].iter().cloned()).collect())
            .collect();
        out.push(back(left_kernel(field, &joint)));
        Ok(out)
    }
    match module.field {
        FieldKind::Rationals => go(&RationalField, module),
        FieldKind::Prime(p) => go(&PrimeField::new(p)?, module),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(q: usize, m: usize, n: usize, field: FieldKind, flat: &[i64]) -> KroneckerModule {
        let shape = KroneckerShape::new(q, m, n).unwrap();
        let mut it = flat.iter();
        let entries = (0..q)
            .map(|_| (0..m).map(|_| (0..n).map(|_| int(*it.next().unwrap())).collect()).collect())
            .collect();
        KroneckerModule::new(shape, field, entries).unwrap()
    }

    #[test]
    fn gaussian_counts() {
        assert_eq!(subspace_count(2, 1), Some(1));
        // [2,1]_2 + [2,2]_2 = 3 + 1
        assert_eq!(subspace_count(2, 2), Some(4));
        // 7 + 7 + 1
        assert_eq!(subspace_count(2, 3), Some(15));
        assert_eq!(subspace_count(3, 2), Some(5));
    }

    #[test]
    fn enumeration_order_and_size() {
        let mut seen = Vec::new();
        EchelonSubspaces { p: 2, m: 3 }.for_each(|b| {
            seen.push(b.to_vec());
            true
        });
        assert_eq!(seen.len() as u128, subspace_count(2, 3).unwrap());
        assert_eq!(seen[0].len(), 3);
        assert_eq!(seen[1], vec![vec![1, 0, 0]]);
        assert!(seen[1..].windows(2).all(|w| w[0].len() <= w[1].len()));
    }

    #[test]
    fn point_module_is_stable() {
        let f2 = FieldKind::Prime(2);
        let v = check_ff(&module(3, 1, 1, f2, &[1, 0, 0])).unwrap();
        assert_eq!(v.status, StabilityStatus::Stable);
        assert!(v.certificate.is_none());
    }

    #[test]
    fn zero_module_is_unstable_at_the_source() {
        let m = KroneckerModule::zero(KroneckerShape::new(3, 2, 3).unwrap(), FieldKind::Prime(2));
        let v = check_ff(&m).unwrap();
        let c = v.certificate.unwrap();
        assert_eq!((v.status, c.subspace_dim, c.image_dim), (StabilityStatus::Unstable, 2, 0));
        let v = search_destabilizer_q(&KroneckerModule { field: FieldKind::Rationals, ..m }, 0, 1).unwrap();
        assert_eq!(v.status, StabilityStatus::Unstable);
    }

    /// `f(L ⊗ e1)` lies in `span(f1)`, `f(L ⊗ e2)` spans everything.
    fn thin_first_row(field: FieldKind) -> KroneckerModule {
        #[rustfmt::skip]
        let flat = [
            1, 0, 0,  1, 0, 0,
            0, 0, 0,  0, 1, 0,
            1, 0, 0,  0, 0, 1,
        ];
        module(3, 2, 3, field, &flat)
    }

    #[test]
    fn thin_row_destabilizes() {
        let m = thin_first_row(FieldKind::Prime(2));
        let v = check_ff(&m).unwrap();
        let c = v.certificate.clone().unwrap();
        assert_eq!(v.status, StabilityStatus::Unstable);
        assert_eq!((c.subspace_dim, c.image_dim), (1, 1));
        assert_eq!(c.basis, vec![vec![int(1), int(0)]]);
        assert!(verify_certificate(&m, &c).unwrap());

        let mq = thin_first_row(FieldKind::Rationals);
        let v = search_destabilizer_q(&mq, 10, 7).unwrap();
        assert_eq!(v.status, StabilityStatus::Unstable);
        assert!(verify_certificate(&mq, v.certificate.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn generic_point_has_no_proper_subspaces() {
        let m = module(3, 1, 1, FieldKind::Rationals, &[2, -1, 5]);
        let v = search_destabilizer_q(&m, 100, 3).unwrap();
        assert_eq!(v.status, StabilityStatus::Unknown);
        assert_eq!(v.note.as_deref(), Some("no proper subspaces"));
    }

    #[test]
    fn semistable_but_not_stable() {
        // (3, 2, 2): e1 ↦ f1 under every slice, e2 ↦ f2; span(e1) has ratio 1.
        #[rustfmt::skip]
        let flat = [
            1, 0,  0, 1,
            1, 0,  0, 1,
            1, 0,  0, 1,
        ];
        let v = check_ff(&module(3, 2, 2, FieldKind::Prime(3), &flat)).unwrap();
        assert_eq!(v.status, StabilityStatus::Semistable);
    }

    #[test]
    fn budget_is_enforced() {
        let m = KroneckerModule::zero(KroneckerShape::new(3, 6, 1).unwrap(), FieldKind::Prime(3));
        assert!(matches!(check_ff_with_budget(&m, 10), Err(Error::SizeLimit(_, 10))));
        let q = KroneckerModule::zero(KroneckerShape::new(3, 1, 1).unwrap(), FieldKind::Rationals);
        assert!(check_ff(&q).is_err());
    }

    #[test]
    fn bogus_certificates_are_rejected() {
        let m = thin_first_row(FieldKind::Prime(2));
        let bad = Certificate { basis: vec![vec![int(0), int(1)]], subspace_dim: 1, image_dim: 1 };
        assert!(!verify_certificate(&m, &bad).unwrap());
        let lying = Certificate { basis: vec![vec![int(1), int(0)]], subspace_dim: 1, image_dim: 0 };
        assert!(!verify_certificate(&m, &lying).unwrap());
    }
}
