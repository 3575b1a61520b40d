//! Dense polynomials over a prime field F_p in one (`Poly1`) and two
//! (`Poly2`) variables, and reduced fractions of the latter.
//!
//! `Poly2` is stored as a polynomial in `v` whose coefficients are
//! polynomials in `u`; gcds use a primitive pseudo-remainder sequence over
//! F_p[u]. Coefficients are residues in `0..p`.

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let (mut base, mut acc) = (a as u64 % p as u64, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly1(pub Vec<u32>);

impl Poly1 {
    pub fn zero() -> Self {
        Poly1(Vec::new())
    }

    pub fn constant(c: u32) -> Self {
        Poly1(vec![c]).trimmed()
    }

    pub fn monomial(c: u32, deg: usize) -> Self {
        let mut v = vec![0; deg + 1];
        v[deg] = c;
        Poly1(v).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    pub fn deg(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> u32 {
        *self.0.last().unwrap_or(&0)
    }

    pub fn add(&self, o: &Self, p: u32) -> Self {
        let n = self.0.len().max(o.0.len());
        let v = (0..n)
            .map(|i| {
                let a = *self.0.get(i).unwrap_or(&0);
                let b = *o.0.get(i).unwrap_or(&0);
                (a + b) % p
            })
            .collect();
        Poly1(v).trimmed()
    }

    pub fn neg(&self, p: u32) -> Self {
        Poly1(self.0.iter().map(|&a| (p - a) % p).collect())
    }

    pub fn sub(&self, o: &Self, p: u32) -> Self {
        self.add(&o.neg(p), p)
    }

    pub fn scale(&self, c: u32, p: u32) -> Self {
        Poly1(self.0.iter().map(|&a| (a as u64 * c as u64 % p as u64) as u32).collect()).trimmed()
    }

    pub fn mul(&self, o: &Self, p: u32) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly1::zero();
        }
        let mut v = vec![0u64; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                v[i + j] = (v[i + j] + a as u64 * b as u64) % p as u64;
            }
        }
        Poly1(v.into_iter().map(|x| x as u32).collect()).trimmed()
    }

    pub fn divrem(&self, d: &Self, p: u32) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.0.len() - 1;
        let inv = inv_mod(d.lc(), p);
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly1::zero(), self.clone());
        }
        let mut q = vec![0u32; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = (r[i] as u64 * inv as u64 % p as u64) as u32;
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &b) in d.0.iter().enumerate() {
                let t = (c as u64 * b as u64 % p as u64) as u32;
                r[i - dd + j] = (r[i - dd + j] + p - t) % p;
            }
        }
        (Poly1(q).trimmed(), Poly1(r).trimmed())
    }

    pub fn monic(&self, p: u32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), p), p)
    }

    pub fn gcd(&self, o: &Self, p: u32) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b, p).1;
            a = b;
            b = r;
        }
        a.monic(p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly2(pub Vec<Poly1>);

impl Poly2 {
    pub fn zero() -> Self {
        Poly2(Vec::new())
    }

    pub fn one() -> Self {
        Poly2(vec![Poly1::constant(1)])
    }

    pub fn from_poly1(c: Poly1) -> Self {
        Poly2(vec![c]).trimmed()
    }

    /// `c * u^i * v^j`
    pub fn monomial(c: u32, i: usize, j: usize) -> Self {
        let mut v = vec![Poly1::zero(); j + 1];
        v[j] = Poly1::monomial(c, i);
        Poly2(v).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn deg_v(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lc(&self) -> &Poly1 {
        self.0.last().expect("zero polynomial has no leading coefficient")
    }

    /// Leading scalar in the order (v-degree, then u-degree).
    pub fn lead_scalar(&self) -> u32 {
        self.0.last().map_or(0, |c| c.lc())
    }

    /// Terms as `(coeff, u_exp, v_exp)`.
    pub fn terms(&self) -> Vec<(u32, usize, usize)> {
        let mut out = Vec::new();
        for (j, c) in self.0.iter().enumerate() {
            for (i, &a) in c.0.iter().enumerate() {
                if a != 0 {
                    out.push((a, i, j));
                }
            }
        }
        out
    }

    pub fn from_terms(terms: &[(u32, usize, usize)], p: u32) -> Self {
        terms.iter().fold(Poly2::zero(), |acc, &(c, i, j)| acc.add(&Poly2::monomial(c % p, i, j), p))
    }

    pub fn add(&self, o: &Self, p: u32) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = Poly1::zero();
        let v = (0..n).map(|j| self.0.get(j).unwrap_or(&z).add(o.0.get(j).unwrap_or(&z), p)).collect();
        Poly2(v).trimmed()
    }

    pub fn neg(&self, p: u32) -> Self {
        Poly2(self.0.iter().map(|c| c.neg(p)).collect())
    }

    pub fn sub(&self, o: &Self, p: u32) -> Self {
        self.add(&o.neg(p), p)
    }

    pub fn scale(&self, c: u32, p: u32) -> Self {
        Poly2(self.0.iter().map(|a| a.scale(c, p)).collect()).trimmed()
    }

    fn scale_poly1(&self, c: &Poly1, p: u32) -> Self {
        Poly2(self.0.iter().map(|a| a.mul(c, p)).collect()).trimmed()
    }

    fn shift_v(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Poly1::zero(); k];
        v.extend(self.0.iter().cloned());
        Poly2(v)
    }

    pub fn mul(&self, o: &Self, p: u32) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly2::zero();
        }
        let mut v = vec![Poly1::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b, p), p);
            }
        }
        Poly2(v).trimmed()
    }

    pub fn content(&self, p: u32) -> Poly1 {
        self.0.iter().fold(Poly1::zero(), |g, c| g.gcd(c, p))
    }

    fn primitive_part(&self, p: u32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content(p);
        Poly2(self.0.iter().map(|a| a.divrem(&c, p).0).collect())
    }

    fn pseudo_rem(&self, d: &Self, p: u32) -> Self {
        let dd = d.deg_v().expect("pseudo-division by zero");
        let mut r = self.clone();
        while let Some(dr) = r.deg_v() {
            if dr < dd {
                break;
            }
            let lr = r.lc().clone();
            r = r.scale_poly1(d.lc(), p).sub(&d.scale_poly1(&lr, p).shift_v(dr - dd), p);
        }
        r
    }

    pub fn monic(&self, p: u32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead_scalar(), p), p)
    }

    pub fn gcd(&self, o: &Self, p: u32) -> Self {
        if self.is_zero() {
            return o.monic(p);
        }
        if o.is_zero() {
            return self.monic(p);
        }
        let c = self.content(p).gcd(&o.content(p), p);
        let (mut a, mut b) = (self.primitive_part(p), o.primitive_part(p));
        if a.deg_v() < b.deg_v() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b, p);
            a = b;
            b = r.primitive_part(p);
        }
        let g = if a.deg_v() == Some(0) { Poly2::one() } else { a.primitive_part(p) };
        g.scale_poly1(&c, p).monic(p)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self, p: u32) -> Option<Self> {
        let dd = d.deg_v()?;
        let mut q = Poly2::zero();
        let mut r = self.clone();
        while let Some(dr) = r.deg_v() {
            if dr < dd {
                return None;
            }
            let (qc, rem) = r.lc().divrem(d.lc(), p);
            if !rem.is_zero() {
                return None;
            }
            let term = Poly2::from_poly1(qc).shift_v(dr - dd);
            q = q.add(&term, p);
            r = r.sub(&term.mul(d, p), p);
        }
        Some(q)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1 && self.0.first().is_none_or(|c| c.0.len() <= 1)
    }
}

/// A reduced fraction with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    pub num: Poly2,
    pub den: Poly2,
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn { num: Poly2::zero(), den: Poly2::one() }
    }

    pub fn from_poly(num: Poly2) -> Self {
        RatFn { num, den: Poly2::one() }
    }

    /// Returns `None` for a zero denominator.
    pub fn new(num: Poly2, den: Poly2, p: u32) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFn::zero());
        }
        let g = num.gcd(&den, p);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g, p)?, den.exact_div(&g, p)?) };
        let c = inv_mod(den.lead_scalar(), p);
        Some(RatFn { num: num.scale(c, p), den: den.scale(c, p) })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self, p: u32) -> Self {
        if self.den == o.den {
            return RatFn::new(self.num.add(&o.num, p), self.den.clone(), p).unwrap();
        }
        let n = self.num.mul(&o.den, p).add(&o.num.mul(&self.den, p), p);
        RatFn::new(n, self.den.mul(&o.den, p), p).unwrap()
    }

    pub fn neg(&self, p: u32) -> Self {
        RatFn { num: self.num.neg(p), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self, p: u32) -> Self {
        RatFn::new(self.num.mul(&o.num, p), self.den.mul(&o.den, p), p).unwrap()
    }

    pub fn inv(&self, p: u32) -> Option<Self> {
        RatFn::new(self.den.clone(), self.num.clone(), p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(terms: &[(u32, usize, usize)], p: u32) -> Poly2 {
        Poly2::from_terms(terms, p)
    }

    #[test]
    fn poly1_gcd_and_division() {
        let p = 5;
        // (t-1)(t+1) and (t-1)(t+2)
        let a = Poly1(vec![4, 0, 1]);
        let b = Poly1(vec![3, 1, 1]);
        assert_eq!(a.gcd(&b, p), Poly1(vec![4, 1]));
        let (q, r) = a.divrem(&Poly1(vec![4, 1]), p);
        assert_eq!(q, Poly1(vec![1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn bivariate_gcd_recovers_common_factor() {
        let p = 2;
        // g = u v + 1, a = g (u + v), b = g (u^2 + v + 1)
        let g = p2(&[(1, 1, 1), (1, 0, 0)], p);
        let a = g.mul(&p2(&[(1, 1, 0), (1, 0, 1)], p), p);
        let b = g.mul(&p2(&[(1, 2, 0), (1, 0, 1), (1, 0, 0)], p), p);
        assert_eq!(a.gcd(&b, p), g.monic(p));
        assert_eq!(a.exact_div(&g, p).unwrap(), p2(&[(1, 1, 0), (1, 0, 1)], p));
    }

    #[test]
    fn bivariate_gcd_content_only() {
        let p = 3;
        // a = u (v + 1), b = u^2 v
        let a = p2(&[(1, 1, 1), (1, 1, 0)], p);
        let b = p2(&[(1, 2, 1)], p);
        assert_eq!(a.gcd(&b, p), p2(&[(1, 1, 0)], p));
    }

    #[test]
    fn fractions_reduce() {
        let p = 2;
        // (u^2 + u) / (u v + v) = u / v
        let f = RatFn::new(p2(&[(1, 2, 0), (1, 1, 0)], p), p2(&[(1, 1, 1), (1, 0, 1)], p), p).unwrap();
        assert_eq!(f.num, p2(&[(1, 1, 0)], p));
        assert_eq!(f.den, p2(&[(1, 0, 1)], p));
    }
}
