//! Generalized Catalan numbers `d_k(n, a)`: the number of `k`-element
//! non-crossing sets of `a`-diagonals of a convex `a(n+1)+2`-gon.
//!
//! Closed form `d_k(n,a) = C(a(n+1)+k+1, k) * C(n, k) / (k+1)`. The
//! recurrence, the alternating sum and the binomial identity below are all
//! checked against this one implementation; the geometric enumeration in
//! [`brute_a_diagonal_fvector`] is the independent ground truth.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chords::a_diagonals;
use crate::geometry::{is_convex, Polygon};
use crate::nc_euler::{chord_f_vector, FVector};
use crate::Error;

/// `C(n, k)`, zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        // Each prefix product is itself a binomial, so the division is exact.
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

fn size(n: u64, a: u64) -> u64 {
    a * (n + 1) + 2
}

pub fn d_closed(n: u64, k: u64, a: u64) -> Result<BigInt, Error> {
    let num = binomial(size(n, a) + k - 1, k) * binomial(n, k);
    let (q, r) = num.div_rem(&BigInt::from(k + 1));
    if !r.is_zero() {
        return Err(Error::InexactDivision("d_k closed form"));
    }
    Ok(q)
}

/// Checks `d_k(n,a) = (a(n+1)+2)/(2k) * sum d_j1(i1,a) d_j2(i2,a)` over
/// `i1 + i2 = n - 1`, `j1 + j2 = k - 1`.
pub fn d_recurrence_check(n: u64, k: u64, a: u64) -> Result<bool, Error> {
    if n == 0 || k == 0 || a == 0 {
        return Err(Error::Precondition("the recurrence needs n, k, a >= 1".into()));
    }
    let mut sum = BigInt::zero();
    for i1 in 0..n {
        let i2 = n - 1 - i1;
        for j1 in 0..k {
            let j2 = k - 1 - j1;
            sum += d_closed(i1, j1, a)? * d_closed(i2, j2, a)?;
        }
    }
    let rhs = BigRational::new(BigInt::from(size(n, a)) * sum, BigInt::from(2 * k));
    Ok(rhs == BigRational::from_integer(d_closed(n, k, a)?))
}

/// `sum_{k=1..n} (-1)^(k-1) d_k(n,a) = 1 + (-1)^(n+1) d_n(n,a-1)`.
pub fn alternating_sum_check(n: u64, a: u64) -> Result<bool, Error> {
    if n == 0 || a == 0 {
        return Err(Error::Precondition("the alternating sum needs n, a >= 1".into()));
    }
    let (lhs, rhs) = alternating_sum_sides(n, a)?;
    Ok(lhs == rhs)
}

/// Both sides of the alternating-sum identity.
pub fn alternating_sum_sides(n: u64, a: u64) -> Result<(BigInt, BigInt), Error> {
    let mut lhs = BigInt::zero();
    for k in 1..=n {
        let d = d_closed(n, k, a)?;
        if k % 2 == 1 {
            lhs += d;
        } else {
            lhs -= d;
        }
    }
    let tail = d_closed(n, n, a - 1)?;
    let rhs = if n % 2 == 1 { BigInt::one() + tail } else { BigInt::one() - tail };
    Ok((lhs, rhs))
}

fn binom_r(n: u64, k: u64) -> BigRational {
    BigRational::from_integer(binomial(n, k))
}

/// The binomial identity behind the recurrence, transcribed independently:
/// `C(a(n+1)+i+1, i) C(n,i) / (i+1)` against
/// `(a(n+1)+2)/(2i) * sum C(a(n1+1)+i1+1, i1) C(a(n2+1)+i2+1, i2) C(n1,i1) C(n2,i2) / ((i1+1)(i2+1))`.
pub fn identity14_check(n: u64, i: u64, a: u64) -> Result<bool, Error> {
    if n == 0 || i == 0 || a == 0 {
        return Err(Error::Precondition("the identity needs n, i, a >= 1".into()));
    }
    let frac = |num: BigRational, den: u64| num / BigRational::from_integer(BigInt::from(den));
    let lhs = frac(binom_r(a * (n + 1) + i + 1, i) * binom_r(n, i), i + 1);
    let mut sum = BigRational::zero();
    for n1 in 0..n {
        let n2 = n - 1 - n1;
        for i1 in 0..i {
            let i2 = i - 1 - i1;
            let term = binom_r(a * (n1 + 1) + i1 + 1, i1)
                * binom_r(a * (n2 + 1) + i2 + 1, i2)
                * binom_r(n1, i1)
                * binom_r(n2, i2);
            sum += frac(term, (i1 + 1) * (i2 + 1));
        }
    }
    let rhs = frac(BigRational::from_integer(BigInt::from(a * (n + 1) + 2)) * sum, 2 * i);
    Ok(lhs == rhs)
}

/// f-vector of the `a`-diagonals of a convex polygon with `a(n+1)+2`
/// vertices, by enumeration.
pub fn brute_a_diagonal_fvector(p: &Polygon, a: usize) -> Result<FVector, Error> {
    if !is_convex(p) {
        return Err(Error::Precondition("a-diagonal counts need a convex polygon".into()));
    }
    let m = a_diagonals(p, a)?;
    chord_f_vector(p, &m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::convex_ngon;

    fn d(n: u64, k: u64, a: u64) -> i64 {
        i64::try_from(d_closed(n, k, a).unwrap()).unwrap()
    }

    #[test]
    fn hand_values() {
        assert_eq!(d(2, 1, 1), 5);
        assert_eq!(d(1, 1, 2), 3);
        assert_eq!(d(2, 2, 2), 12);
        assert_eq!(d(2, 1, 2), 8);
        assert_eq!(d(3, 0, 0), 1);
        assert_eq!(d(3, 3, 0), 1);
        assert_eq!(d(2, 3, 1), 0);
        // Catalan numbers C_{n+1}.
        let cat = [1, 2, 5, 14, 42, 132];
        for n in 0..6u64 {
            assert_eq!(d(n, n, 1), cat[n as usize]);
        }
    }

    #[test]
    fn identities() {
        assert!(d_recurrence_check(2, 1, 1).unwrap());
        assert!(d_recurrence_check(1, 1, 2).unwrap());
        let (l, r) = alternating_sum_sides(2, 2).unwrap();
        assert_eq!((l.clone(), r), (BigInt::from(-4), BigInt::from(-4)));
        assert_eq!(alternating_sum_sides(3, 1).unwrap().0, BigInt::from(2));
        assert!(identity14_check(2, 1, 1).unwrap());
        assert!(identity14_check(3, 2, 2).unwrap());
        assert!(identity14_check(2, 3, 1).unwrap());
    }

    #[test]
    fn geometric_oracle() {
        let f = brute_a_diagonal_fvector(&convex_ngon(6).unwrap(), 2).unwrap();
        assert_eq!(f.to_string(), "[1, 3]");
        assert_eq!(f.euler(), BigInt::from(-2));
        let f = brute_a_diagonal_fvector(&convex_ngon(5).unwrap(), 1).unwrap();
        assert_eq!(f.to_string(), "[1, 5, 5]");
        let f = brute_a_diagonal_fvector(&convex_ngon(8).unwrap(), 2).unwrap();
        assert_eq!(f.get(1), BigInt::from(8));
        assert!(brute_a_diagonal_fvector(&convex_ngon(7).unwrap(), 2).is_err());
    }
}
