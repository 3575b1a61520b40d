//! Division-algebra tests: exhaustive over finite fields, Hilbert symbols over
//! the rationals, bounded zero-divisor search elsewhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::{Algebra, AlgebraSpec};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Zero-divisor candidates tried over infinite fields that have no decision
/// procedure.
pub const DIVISION_SEARCH_BOUND: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DivisionVerdict {
    Division,
    NotDivision,
    Unknown,
}

fn to_i128(n: &BigInt) -> Result<i128> {
    n.to_i128()
        .filter(|v| v.unsigned_abs() < 1 << 62)
        .ok_or_else(|| Error::UnsupportedField(format!("integer {n} too large for the Hilbert symbol")))
}

/// Integer in the same square class as `r`.
fn square_class(r: &BigRational) -> Result<i128> {
    to_i128(&(r.numer() * r.denom()))
}

fn valuation(mut n: i128, p: i128) -> (u32, i128) {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

fn pow_mod(mut b: i128, mut e: i128, m: i128) -> i128 {
    b = b.rem_euclid(m);
    let mut acc = 1i128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn legendre(u: i128, p: i128) -> i32 {
    if pow_mod(u, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

fn odd_primes(mut n: i128) -> Vec<i128> {
    n = n.abs();
    let mut out = Vec::new();
    let mut d = 2i128;
    while d * d <= n {
        if n % d == 0 {
            if d != 2 {
                out.push(d);
            }
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 2 {
        out.push(n);
    }
    out
}

/// Hilbert symbol (a, b) at the prime `p`, or at the real place for `None`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, p: Option<u64>) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Invalid("Hilbert symbol of zero".into()));
    }
    let (a, b) = (square_class(a)?, square_class(b)?);
    let Some(p) = p else {
        return Ok(if a < 0 && b < 0 { -1 } else { 1 });
    };
    let p = p as i128;
    let (alpha, u) = valuation(a, p);
    let (beta, v) = valuation(b, p);
    if p == 2 {
        let eps = |x: i128| ((x - 1) / 2).rem_euclid(2);
        let omega = |x: i128| ((x * x - 1) / 8).rem_euclid(2);
        let e = eps(u) * eps(v) + alpha as i128 * omega(v) + beta as i128 * omega(u);
        return Ok(if e % 2 == 0 { 1 } else { -1 });
    }
    let mut s = if (alpha as i128 * beta as i128 * ((p - 1) / 2)) % 2 == 0 { 1 } else { -1 };
    if beta % 2 == 1 {
        s *= legendre(u, p);
    }
    if alpha % 2 == 1 {
        s *= legendre(v, p);
    }
    Ok(s)
}

/// Small sample of scalars used for zero-divisor searches.
fn sample_scalars(k: &Field, count: usize) -> Vec<Scalar> {
    let mut out = vec![k.zero(), k.one(), k.from_int(-1)];
    for i in 0..k.num_vars() {
        if let Ok(v) = k.variable(i) {
            out.push(v.clone());
            out.push(&v + &k.one());
            out.push(&v * &v);
        }
    }
    if k.num_vars() == 2 {
        out.push(k.variable(0).unwrap() * k.variable(1).unwrap());
        out.push(k.variable(0).unwrap() + k.variable(1).unwrap());
    }
    let mut n = 2;
    while out.len() < count {
        out.push(k.from_int(n));
        out.push(k.from_int(-n));
        n += 1;
    }
    let mut uniq: Vec<Scalar> = Vec::new();
    for s in out {
        if !uniq.contains(&s) {
            uniq.push(s);
        }
    }
    uniq.truncate(count);
    uniq
}

impl Algebra {
    /// Whether the algebra has no zero divisors.
    pub fn is_division(&self) -> Result<DivisionVerdict> {
        let k = self.field().clone();
        if k.is_finite() {
            let any_zero_divisor = self.elements()?.iter().any(|a| !a.is_zero() && !a.is_unit());
            return Ok(if any_zero_divisor { DivisionVerdict::NotDivision } else { DivisionVerdict::Division });
        }
        match self.spec() {
            AlgebraSpec::Tower { .. } => return Ok(DivisionVerdict::Division),
            AlgebraSpec::QuaternionOdd { a, b } => {
                if let (Some(a), Some(b)) = (a.as_rational(), b.as_rational()) {
                    let mut places: Vec<Option<u64>> = vec![None, Some(2)];
                    let prod = square_class(a)? * square_class(b)?;
                    places.extend(odd_primes(prod).into_iter().map(|p| Some(p as u64)));
                    for place in places {
                        if hilbert_symbol(a, b, place)? == -1 {
                            return Ok(DivisionVerdict::Division);
                        }
                    }
                    return Ok(DivisionVerdict::NotDivision);
                }
            }
            AlgebraSpec::QuaternionChar2 { .. } => {}
        }
        let per_coord = (DIVISION_SEARCH_BOUND as f64).powf(0.25).floor() as usize;
        let sample = sample_scalars(&k, per_coord);
        let n = sample.len();
        for idx in 1..n.pow(4) {
            let mut r = idx;
            let coords = std::array::from_fn(|_| {
                let s = sample[r % n].clone();
                r /= n;
                s
            });
            let a = self.elem(coords);
            if !a.is_zero() && !a.is_unit() {
                return Ok(DivisionVerdict::NotDivision);
            }
        }
        Ok(DivisionVerdict::Unknown)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn quat(k: &Field, a: i64, b: i64) -> Algebra {
        Algebra::new(k, AlgebraSpec::QuaternionOdd { a: k.from_int(a), b: k.from_int(b) }).unwrap()
    }

    #[test]
    fn hamilton_is_division() {
        assert_eq!(quat(&Field::rationals(), -1, -1).is_division().unwrap(), DivisionVerdict::Division);
    }

    #[test]
    fn split_when_a_is_one() {
        assert_eq!(quat(&Field::rationals(), 1, 7).is_division().unwrap(), DivisionVerdict::NotDivision);
    }

    #[test]
    fn finite_quaternions_split() {
        let f5 = Field::prime(5).unwrap();
        for (a, b) in [(1, 1), (2, 3), (-1, -1), (2, 2)] {
            assert_eq!(quat(&f5, a, b).is_division().unwrap(), DivisionVerdict::NotDivision);
        }
    }

    #[test]
    fn hilbert_reciprocity_holds() {
        for (a, b) in [(-1, -1), (2, 3), (-3, 5), (7, -14), (6, 10)] {
            let (ra, rb) = (rat(a), rat(b));
            let mut places = vec![None, Some(2)];
            places.extend(odd_primes((a * b) as i128).into_iter().map(|p| Some(p as u64)));
            let prod: i32 = places.iter().map(|pl| hilbert_symbol(&ra, &rb, *pl).unwrap()).product();
            assert_eq!(prod, 1, "({a},{b})");
        }
    }

    #[test]
    fn known_symbols() {
        // (-1,-1) ramifies at 2 and infinity; (2, 3)_3 = (2/3) = -1
        assert_eq!(hilbert_symbol(&rat(-1), &rat(-1), Some(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&rat(2), &rat(3), Some(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&rat(2), &rat(3), Some(5)).unwrap(), 1);
    }
}
