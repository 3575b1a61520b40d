//! Dense univariate polynomials over a [`Field`], with factorization over
//! finite fields by trial division.

use std::fmt;

use super::{Field, Scalar};
use crate::error::{Error, Result};

/// Coefficients low to high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: &Field, coeffs: Vec<Scalar>) -> UniPoly {
        let mut p = UniPoly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> UniPoly {
        UniPoly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly::new(field, vec![])
    }

    pub fn constant(c: Scalar) -> UniPoly {
        let f = c.field().clone();
        UniPoly::new(&f, vec![c])
    }

    /// The variable `t`.
    pub fn var(field: &Field) -> UniPoly {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new(&self.field, (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(&self.field, out)
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        (0..e).fold(UniPoly::constant(self.field.one()), |acc, _| acc.mul(self))
    }

    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.leading().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &(&c * dc);
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((UniPoly::new(&self.field, quot), UniPoly::new(&self.field, rem)))
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading().inv() {
            Ok(inv) => self.scale(&inv),
            Err(_) => self.clone(),
        }
    }

    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &self.field.from_int(i as i64)).collect();
        UniPoly::new(&self.field, coeffs)
    }

    /// Every monic polynomial of degree `d` over a finite field.
    pub fn monic_of_degree(field: &Field, d: usize) -> Result<Vec<UniPoly>> {
        let elems = field.elements()?;
        let q = elems.len();
        let count = q
            .checked_pow(d as u32)
            .filter(|c| *c <= 1 << 22)
            .ok_or_else(|| Error::SearchSpaceTooLarge(format!("monic polynomials of degree {d} over a field of size {q}")))?;
        Ok((0..count)
            .map(|mut idx| {
                let mut coeffs = Vec::with_capacity(d + 1);
                for _ in 0..d {
                    coeffs.push(elems[idx % q].clone());
                    idx /= q;
                }
                coeffs.push(field.one());
                UniPoly::new(field, coeffs)
            })
            .collect())
    }

    /// Monic irreducibles of degree `d` over a finite field.
    pub fn irreducibles_of_degree(field: &Field, d: usize) -> Result<Vec<UniPoly>> {
        let all = UniPoly::monic_of_degree(field, d)?;
        let mut out = Vec::new();
        for f in all {
            if f.is_irreducible()? {
                out.push(f);
            }
        }
        Ok(out)
    }

    fn smallest_monic_factor(&self) -> Result<Option<UniPoly>> {
        let n = self.degree().unwrap_or(0);
        for d in 1..=n / 2 {
            for g in UniPoly::monic_of_degree(&self.field, d)? {
                if self.divrem(&g)?.1.is_zero() {
                    return Ok(Some(g));
                }
            }
        }
        Ok(None)
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        if !self.field.is_finite() {
            return Err(Error::UnsupportedField("irreducibility needs a finite field".into()));
        }
        match self.degree() {
            None | Some(0) => Ok(false),
            Some(1) => Ok(true),
            Some(_) => Ok(self.smallest_monic_factor()?.is_none()),
        }
    }

    /// `self = unit * prod f_i^{m_i}` with monic irreducible `f_i` in
    /// increasing degree order.
    pub fn factor(&self) -> Result<(Scalar, Vec<(UniPoly, usize)>)> {
        if !self.field.is_finite() {
            return Err(Error::UnsupportedField("factorization needs a finite field".into()));
        }
        if self.is_zero() {
            return Err(Error::Invalid("cannot factor the zero polynomial".into()));
        }
        let unit = self.leading();
        let mut rest = self.monic();
        let mut out: Vec<(UniPoly, usize)> = Vec::new();
        while rest.degree().unwrap_or(0) > 0 {
            let g = rest.smallest_monic_factor()?.unwrap_or_else(|| rest.clone());
            let mut mult = 0;
            loop {
                let (q, r) = rest.divrem(&g)?;
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            out.push((g, mult));
        }
        Ok((unit, out))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let cs = if cs.contains(['+', '-', '/']) && i > 0 { format!("({cs})") } else { cs };
            parts.push(match (i, c.is_one()) {
                (0, _) => cs,
                (1, true) => "t".to_string(),
                (1, false) => format!("{cs}*t"),
                (_, true) => format!("t^{i}"),
                (_, false) => format!("{cs}*t^{i}"),
            });
        }
        write!(f, "{}", parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t2_plus_1_over_f3_is_irreducible() {
        let f3 = Field::prime(3).unwrap();
        assert!(UniPoly::from_ints(&f3, &[1, 0, 1]).is_irreducible().unwrap());
    }

    #[test]
    fn t2_minus_1_over_f5_splits() {
        let f5 = Field::prime(5).unwrap();
        let (unit, factors) = UniPoly::from_ints(&f5, &[-1, 0, 1]).factor().unwrap();
        assert!(unit.is_one());
        let got: Vec<_> = factors.iter().map(|(g, m)| (g.to_string(), *m)).collect();
        assert_eq!(got, vec![("t+1".to_string(), 1), ("t+4".to_string(), 1)]);
    }

    #[test]
    fn t4_t_1_over_f2_is_irreducible() {
        let f2 = Field::prime(2).unwrap();
        let f = UniPoly::from_ints(&f2, &[1, 1, 0, 0, 1]);
        assert!(f.is_irreducible().unwrap());
        // oracle: no root, and not divisible by the only irreducible quadratic t^2+t+1
        assert!(f2.elements().unwrap().iter().all(|a| !f.eval(a).is_zero()));
        let quad = UniPoly::from_ints(&f2, &[1, 1, 1]);
        assert!(!f.divrem(&quad).unwrap().1.is_zero());
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // over F_2: 2, 1, 2, 3 irreducibles of degree 1..4
        let f2 = Field::prime(2).unwrap();
        let counts: Vec<usize> = (1..=4).map(|d| UniPoly::irreducibles_of_degree(&f2, d).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3]);
    }

    #[test]
    fn infinite_field_rejected() {
        let q = Field::rationals();
        assert!(matches!(UniPoly::from_ints(&q, &[1, 0, 1]).factor(), Err(Error::UnsupportedField(_))));
    }
}
