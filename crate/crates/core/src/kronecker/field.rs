//! Scalar fields for Kronecker-module linear algebra.

use std::fmt;

use num_traits::{One, Zero};

use crate::{BigInt, Error, Rational, Result};

pub trait Field {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `a` must be nonzero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn embed(&self, r: &Rational) -> Result<Self::Elem>;
    fn to_rational(&self, a: &Self::Elem) -> Rational;
}

/// `Z/pZ` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::OutOfRange(format!("{p} is not a prime below 2^32")));
        }
        Ok(PrimeField { p })
    }

    pub fn order(&self) -> u64 {
        self.p
    }

    fn reduce(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        u64::try_from(r).expect("residue fits")
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn embed(&self, r: &Rational) -> Result<u64> {
        let d = self.reduce(r.denom());
        if d == 0 {
            return Err(Error::OutOfRange(format!("{r} has no image mod {}", self.p)));
        }
        Ok(self.mul(&self.reduce(r.numer()), &self.inv(&d)))
    }
    fn to_rational(&self, a: &u64) -> Rational {
        Rational::from_integer(BigInt::from(*a))
    }
}

/// The rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn embed(&self, r: &Rational) -> Result<Rational> {
        Ok(r.clone())
    }
    fn to_rational(&self, a: &Rational) -> Rational {
        a.clone()
    }
}

/// Reduced row-echelon form in place; returns the pivot columns.
pub fn row_reduce<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !field.is_zero(&row[c]) {
                let factor = row[c].clone();
                for (x, pv) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(x, &field.mul(&factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut rows = rows.to_vec();
    row_reduce(field, &mut rows).len()
}

/// Basis of `{v : Σ_i v_i · rows[i] = 0}` for the linear map
/// `F^{rows.len()} → F^{ncols}` given by its rows.
pub fn left_kernel<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    // Solve Aᵀ v = 0: reduce the transpose and read off free variables.
    let mut t: Vec<Vec<F::Elem>> = (0..ncols)
        .map(|j| (0..m).map(|i| rows[i][j].clone()).collect())
        .collect();
    let pivots = if ncols == 0 { Vec::new() } else { row_reduce(field, &mut t) };
    let mut basis = Vec::new();
    for free in (0..m).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); m];
        v[free] = field.one();
        for (row, &pc) in t.iter().zip(&pivots) {
            v[pc] = field.sub(&field.zero(), &row[free]);
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.embed(&rat(1, 2)).unwrap(), 4);
        assert_eq!(f.embed(&rat(-1, 1)).unwrap(), 6);
        assert!(f.embed(&rat(1, 7)).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn ranks() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(rank(&f2, &[vec![1, 1], vec![1, 1]]), 1);
        assert_eq!(rank(&f2, &[vec![1, 0], vec![0, 1], vec![1, 1]]), 2);
        let q = RationalField;
        assert_eq!(rank(&q, &[vec![rat(1, 2), rat(1, 3)], vec![rat(3, 1), rat(2, 1)]]), 1);
    }

    #[test]
    fn kernels() {
        let q = RationalField;
        let rows = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)], vec![rat(0, 1), rat(1, 1)]];
        let k = left_kernel(&q, &rows);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        for j in 0..2 {
            let s: Rational = v.iter().zip(&rows).map(|(vi, row)| vi * &row[j]).sum();
            assert_eq!(s, rat(0, 1));
        }
    }
}
