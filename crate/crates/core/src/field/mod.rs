//! Exact base fields: prime and finite fields, the rationals, and rational
//! function fields over a prime field in at most two variables.

pub mod fp_poly;
mod parse;
pub mod unipoly;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use fp_poly::{Poly1, Poly2, RatFn};

/// Largest finite field we tabulate.
pub const MAX_FINITE_ORDER: u64 = 1 << 16;

/// Serializable description of a base field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldDesc {
    /// F_{p^m}. `modulus` lists the coefficients (low to high) of a monic
    /// irreducible polynomial of degree `m`; the first one in lexicographic
    /// order is used when absent.
    Finite {
        p: u32,
        #[serde(default = "one_u32")]
        m: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gen: Option<String>,
    },
    Rationals,
    /// F_p(u^e, v^e) inside F_p(u, v), with `e = power`. Elements are written
    /// in the original variables.
    Ratfunc {
        p: u32,
        vars: Vec<String>,
        #[serde(default = "one_u32")]
        power: u32,
    },
}

fn one_u32() -> u32 {
    1
}

#[derive(Debug)]
struct FiniteData {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    gen_name: String,
    /// `exp[i]` is the encoding of g^i for a fixed primitive element g.
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Debug)]
enum Kind {
    Finite(FiniteData),
    Rationals,
    RatFunc { p: u32, vars: Vec<String>, power: u32 },
}

#[derive(Debug)]
struct FieldData {
    desc: FieldDesc,
    kind: Kind,
}

/// A base field. Cheap to clone; equality compares descriptions.
#[derive(Debug, Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.desc.hash(state);
    }
}

/// Canonical representation of a field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Repr {
    /// Base-p digits of the coefficient vector over F_p.
    Fin(u32),
    Rat(BigRational),
    Fun(RatFn),
}

#[derive(Clone)]
pub struct Scalar {
    field: Field,
    repr: Repr,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.field == other.field
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::format_scalar(self))
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// First monic irreducible of degree `m` over F_p in lexicographic order of
/// the coefficient vector (low to high).
fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(m as usize + 1);
        let mut r = idx;
        for _ in 0..m {
            coeffs.push((r % p as u64) as u32);
            r /= p as u64;
        }
        coeffs.push(1);
        if fp_irreducible(&Poly1(coeffs.clone()), p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Irreducibility over F_p via gcd(f, t^(p^i) - t) for i <= deg/2.
fn fp_irreducible(f: &Poly1, p: u32) -> bool {
    let d = match f.deg() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let t = Poly1(vec![0, 1]);
    let mut h = t.clone();
    for _ in 0..d / 2 {
        // h <- h^p mod f
        let mut acc = Poly1::constant(1);
        for _ in 0..p {
            acc = acc.mul(&h, p).divrem(f, p).1;
        }
        h = acc;
        let g = h.sub(&t, p).gcd(f, p);
        if !g.is_one() {
            return false;
        }
    }
    true
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(mut code: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let c = code % p;
            code /= p;
            c
        })
        .collect()
}

impl FiniteData {
    fn new(p: u32, m: u32, modulus: Option<Vec<u32>>, gen: Option<String>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        let q64 = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q64 > MAX_FINITE_ORDER {
            return Err(Error::UnsupportedField(format!("F_{p}^{m} exceeds {MAX_FINITE_ORDER} elements")));
        }
        let q = q64 as u32;
        let modulus = match modulus {
            Some(md) => {
                let md: Vec<u32> = md.iter().map(|c| c % p).collect();
                if md.len() != m as usize + 1 || md[m as usize] != 1 {
                    return Err(Error::Invalid(format!("modulus must be monic of degree {m}")));
                }
                if !fp_irreducible(&Poly1(md.clone()), p) {
                    return Err(Error::ReduciblePolynomial(format!("modulus {md:?} over F_{p}")));
                }
                md
            }
            None => default_modulus(p, m),
        };
        let modp = Poly1(modulus.clone());
        let mul_poly = |a: u32, b: u32| -> u32 {
            let pa = Poly1(decode(a, p, m));
            let pb = Poly1(decode(b, p, m));
            let r = pa.mul(&pb, p).divrem(&modp, p).1;
            encode(&r.0, p)
        };
        let order_factors = prime_factors(q - 1);
        let pow_enc = |a: u32, mut e: u32| -> u32 {
            let (mut base, mut acc) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_poly(acc, base);
                }
                base = mul_poly(base, base);
                e >>= 1;
            }
            acc
        };
        let g = (1..q)
            .find(|&g| order_factors.iter().all(|&r| pow_enc(g, (q - 1) / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..q - 1 {
            exp.push(cur);
            log[cur as usize] = i;
            cur = mul_poly(cur, g);
        }
        Ok(FiniteData { p, m, q, modulus, gen_name: gen.unwrap_or_else(|| "t".into()), exp, log })
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn neg(&self, a: u32) -> u32 {
        if self.m == 1 {
            return (self.p - a) % self.p;
        }
        let (mut a, mut out, mut place) = (a, 0u32, 1u32);
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] as u64 + self.log[b as usize] as u64) % n as u64) as usize]
    }

    fn inv(&self, a: u32) -> u32 {
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }
}

impl Field {
    pub fn new(desc: FieldDesc) -> Result<Field> {
        let kind = match &desc {
            FieldDesc::Finite { p, m, modulus, gen } => Kind::Finite(FiniteData::new(*p, *m, modulus.clone(), gen.clone())?),
            FieldDesc::Rationals => Kind::Rationals,
            FieldDesc::Ratfunc { p, vars, power } => {
                if !is_prime(*p) {
                    return Err(Error::Invalid(format!("{p} is not prime")));
                }
                if vars.is_empty() || vars.len() > 2 {
                    return Err(Error::UnsupportedField("rational function fields take one or two variables".into()));
                }
                if *power == 0 {
                    return Err(Error::Invalid("power must be positive".into()));
                }
                Kind::RatFunc { p: *p, vars: vars.clone(), power: *power }
            }
        };
        Ok(Field(Arc::new(FieldData { desc, kind })))
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new(FieldDesc::Finite { p, m: 1, modulus: None, gen: None })
    }

    pub fn finite(p: u32, m: u32) -> Result<Field> {
        Field::new(FieldDesc::Finite { p, m, modulus: None, gen: None })
    }

    pub fn rationals() -> Field {
        Field::new(FieldDesc::Rationals).expect("rationals are always valid")
    }

    pub fn ratfunc(p: u32, vars: &[&str], power: u32) -> Result<Field> {
        Field::new(FieldDesc::Ratfunc { p, vars: vars.iter().map(|s| s.to_string()).collect(), power })
    }

    pub fn desc(&self) -> &FieldDesc {
        &self.0.desc
    }

    pub fn characteristic(&self) -> u32 {
        match &self.0.kind {
            Kind::Finite(d) => d.p,
            Kind::Rationals => 0,
            Kind::RatFunc { p, .. } => *p,
        }
    }

    pub fn cardinality(&self) -> Option<u64> {
        match &self.0.kind {
            Kind::Finite(d) => Some(d.q as u64),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.cardinality().is_some()
    }

    /// Degree over the prime field for finite fields.
    pub fn degree_over_prime(&self) -> Option<u32> {
        match &self.0.kind {
            Kind::Finite(d) => Some(d.m),
            _ => None,
        }
    }

    fn make(&self, repr: Repr) -> Scalar {
        Scalar { field: self.clone(), repr }
    }

    pub fn zero(&self) -> Scalar {
        match &self.0.kind {
            Kind::Finite(_) => self.make(Repr::Fin(0)),
            Kind::Rationals => self.make(Repr::Rat(BigRational::zero())),
            Kind::RatFunc { .. } => self.make(Repr::Fun(RatFn::zero())),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match &self.0.kind {
            Kind::Finite(d) => self.make(Repr::Fin(n.rem_euclid(d.p as i64) as u32)),
            Kind::Rationals => self.make(Repr::Rat(BigRational::from_integer(BigInt::from(n)))),
            Kind::RatFunc { p, .. } => {
                let c = n.rem_euclid(*p as i64) as u32;
                self.make(Repr::Fun(RatFn::from_poly(Poly2::from_poly1(Poly1::constant(c)))))
            }
        }
    }

    pub fn from_rational(&self, r: BigRational) -> Result<Scalar> {
        match &self.0.kind {
            Kind::Rationals => Ok(self.make(Repr::Rat(r))),
            _ => {
                let n = self.from_bigint(r.numer());
                let d = self.from_bigint(r.denom());
                n.div(&d)
            }
        }
    }

    fn from_bigint(&self, n: &BigInt) -> Scalar {
        let c = self.characteristic();
        if c == 0 {
            return self.make(Repr::Rat(BigRational::from_integer(n.clone())));
        }
        let r = ((n % BigInt::from(c)) + BigInt::from(c)) % BigInt::from(c);
        self.from_int(i64::try_from(r).expect("residue fits"))
    }

    /// Element of a finite field from its base-p digit encoding.
    pub fn from_code(&self, code: u32) -> Result<Scalar> {
        match &self.0.kind {
            Kind::Finite(d) if code < d.q => Ok(self.make(Repr::Fin(code))),
            Kind::Finite(_) => Err(Error::Invalid(format!("code {code} out of range"))),
            _ => Err(Error::InfiniteField),
        }
    }

    /// Coordinates over F_p in the power basis of the defining modulus.
    pub fn coords_over_prime(&self, a: &Scalar) -> Result<Vec<u32>> {
        match (&self.0.kind, &a.repr) {
            (Kind::Finite(d), Repr::Fin(c)) => Ok(decode(*c, d.p, d.m)),
            _ => Err(Error::InfiniteField),
        }
    }

    /// The class of the polynomial variable in F_p[t]/(modulus).
    pub fn generator(&self) -> Result<Scalar> {
        match &self.0.kind {
            Kind::Finite(d) if d.m > 1 => Ok(self.make(Repr::Fin(d.p))),
            Kind::Finite(_) => Ok(self.one()),
            _ => Err(Error::InfiniteField),
        }
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Result<Scalar> {
        match &self.0.kind {
            Kind::Finite(d) => Ok(self.make(Repr::Fin(d.exp[1 % d.exp.len()]))),
            _ => Err(Error::InfiniteField),
        }
    }

    /// Every element exactly once, in encoding order.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match &self.0.kind {
            Kind::Finite(d) => Ok((0..d.q).map(|c| self.make(Repr::Fin(c))).collect()),
            _ => Err(Error::InfiniteField),
        }
    }

    /// Variable `idx` of a rational function field, as an element of this
    /// field (that is, the internal generator `u^power`).
    pub fn variable(&self, idx: usize) -> Result<Scalar> {
        match &self.0.kind {
            Kind::RatFunc { vars, .. } if idx < vars.len() => {
                let (i, j) = if idx == 0 { (1, 0) } else { (0, 1) };
                Ok(self.make(Repr::Fun(RatFn::from_poly(Poly2::monomial(1, i, j)))))
            }
            _ => Err(Error::Invalid(format!("no variable {idx}"))),
        }
    }

    pub fn num_vars(&self) -> usize {
        match &self.0.kind {
            Kind::RatFunc { vars, .. } => vars.len(),
            _ => 0,
        }
    }

    pub fn parse(&self, s: &str) -> Result<Scalar> {
        parse::parse_scalar(self, s)
    }

    pub fn frobenius(&self, a: &Scalar) -> Scalar {
        a.pow(self.characteristic().max(1) as u64)
    }

    /// Square test in this field.
    pub fn is_square(&self, a: &Scalar) -> Result<bool> {
        Ok(self.sqrt(a)?.is_some())
    }

    /// A square root if one exists.
    pub fn sqrt(&self, a: &Scalar) -> Result<Option<Scalar>> {
        if a.is_zero() {
            return Ok(Some(a.clone()));
        }
        match (&self.0.kind, &a.repr) {
            (Kind::Finite(d), Repr::Fin(c)) => {
                let l = d.log[*c as usize];
                let n = d.q - 1;
                if d.p == 2 {
                    // squaring is a bijection; halve the logarithm mod an odd order
                    let half = (l as u64 * (n as u64).div_ceil(2) % n as u64) as usize;
                    return Ok(Some(self.make(Repr::Fin(d.exp[half]))));
                }
                if l % 2 == 0 {
                    Ok(Some(self.make(Repr::Fin(d.exp[(l / 2) as usize]))))
                } else {
                    Ok(None)
                }
            }
            (Kind::Rationals, Repr::Rat(r)) => {
                if r.is_negative() {
                    return Ok(None);
                }
                let (n, dn) = (r.numer(), r.denom());
                let (sn, sd) = (n.sqrt(), dn.sqrt());
                if &(&sn * &sn) == n && &(&sd * &sd) == dn {
                    Ok(Some(self.make(Repr::Rat(BigRational::new(sn, sd)))))
                } else {
                    Ok(None)
                }
            }
            (Kind::RatFunc { p: 2, .. }, Repr::Fun(_)) => {
                let comps = self.p_basis_components(a)?;
                if comps.iter().skip(1).all(|c| c.is_zero()) {
                    Ok(Some(comps[0].clone()))
                } else {
                    Ok(None)
                }
            }
            (Kind::RatFunc { .. }, _) => {
                Err(Error::UnsupportedField("square roots in odd-characteristic function fields".into()))
            }
            _ => unreachable!("scalar does not belong to its field"),
        }
    }

    /// Characteristic 2 function fields: `a = sum_e m_e * r_e^2` where `m_e`
    /// runs over the square-free monomials in the field's variables (1, s, t,
    /// st for two variables). Returns the `r_e` in that order.
    pub fn p_basis_components(&self, a: &Scalar) -> Result<Vec<Scalar>> {
        let (nv, f) = match (&self.0.kind, &a.repr) {
            (Kind::RatFunc { p: 2, vars, .. }, Repr::Fun(f)) => (vars.len(), f),
            _ => return Err(Error::UnsupportedField("p-basis needs a characteristic 2 function field".into())),
        };
        let prod = f.num.mul(&f.den, 2);
        let mut parts = vec![Vec::new(); 1 << nv];
        for (c, i, j) in prod.terms() {
            let eps = (i % 2) + 2 * (j % 2);
            parts[eps].push((c, i / 2, j / 2));
        }
        parts
            .into_iter()
            .map(|terms| {
                let h = Poly2::from_terms(&terms, 2);
                RatFn::new(h, f.den.clone(), 2).map(|r| self.make(Repr::Fun(r))).ok_or(Error::DivisionByZero)
            })
            .collect()
    }

    /// Square-free monomials matching [`Field::p_basis_components`].
    pub fn p_basis(&self) -> Result<Vec<Scalar>> {
        let nv = self.num_vars();
        if self.characteristic() != 2 || nv == 0 {
            return Err(Error::UnsupportedField("p-basis needs a characteristic 2 function field".into()));
        }
        Ok((0..1usize << nv)
            .map(|eps| {
                let (i, j) = (eps & 1, (eps >> 1) & 1);
                self.make(Repr::Fun(RatFn::from_poly(Poly2::monomial(1, i, j))))
            })
            .collect())
    }

    pub(crate) fn finite_gen_name(&self) -> Option<(&str, u32, u32)> {
        match &self.0.kind {
            Kind::Finite(d) => Some((d.gen_name.as_str(), d.p, d.m)),
            _ => None,
        }
    }

    pub(crate) fn ratfunc_data(&self) -> Option<(u32, &[String], u32)> {
        match &self.0.kind {
            Kind::RatFunc { p, vars, power } => Some((*p, vars.as_slice(), *power)),
            _ => None,
        }
    }

    /// A random element: uniform for finite fields, small height otherwise.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match &self.0.kind {
            Kind::Finite(d) => self.make(Repr::Fin(rng.gen_range(0..d.q))),
            Kind::Rationals => {
                let n = BigInt::from(rng.gen_range(-9i64..=9));
                let dn = BigInt::from(rng.gen_range(1i64..=4));
                self.make(Repr::Rat(BigRational::new(n, dn)))
            }
            Kind::RatFunc { p, vars, .. } => {
                let nv = vars.len();
                let mut poly = || {
                    let terms: Vec<(u32, usize, usize)> = (0..3)
                        .map(|_| {
                            let j = if nv == 2 { rng.gen_range(0..3) } else { 0 };
                            (rng.gen_range(0..*p), rng.gen_range(0..3), j)
                        })
                        .collect();
                    Poly2::from_terms(&terms, *p)
                };
                let num = poly();
                let den = poly();
                let den = if den.is_zero() { Poly2::one() } else { den };
                self.make(Repr::Fun(RatFn::new(num, den, *p).expect("nonzero denominator")))
            }
        }
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        match &self.0.kind {
            Kind::Finite(d) => Some(&d.modulus),
            _ => None,
        }
    }
}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub(crate) fn from_parts(field: &Field, repr: Repr) -> Scalar {
        field.make(repr)
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Fin(c) => *c == 0,
            Repr::Rat(r) => r.is_zero(),
            Repr::Fun(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Fin(c) => *c == 1,
            Repr::Rat(r) => r.is_one(),
            Repr::Fun(f) => f.num.is_one() && f.den.is_one(),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field.zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field.one()
    }

    fn check_same(&self, o: &Scalar) {
        debug_assert!(self.field == o.field, "mixing scalars of different fields");
    }

    pub fn add_ref(&self, o: &Scalar) -> Scalar {
        self.check_same(o);
        let repr = match (&self.field.0.kind, &self.repr, &o.repr) {
            (Kind::Finite(d), Repr::Fin(a), Repr::Fin(b)) => Repr::Fin(d.add(*a, *b)),
            (_, Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            (Kind::RatFunc { p, .. }, Repr::Fun(a), Repr::Fun(b)) => Repr::Fun(a.add(b, *p)),
            _ => unreachable!("mismatched scalar representations"),
        };
        self.field.make(repr)
    }

    pub fn neg_ref(&self) -> Scalar {
        let repr = match (&self.field.0.kind, &self.repr) {
            (Kind::Finite(d), Repr::Fin(a)) => Repr::Fin(d.neg(*a)),
            (_, Repr::Rat(a)) => Repr::Rat(-a),
            (Kind::RatFunc { p, .. }, Repr::Fun(a)) => Repr::Fun(a.neg(*p)),
            _ => unreachable!("mismatched scalar representations"),
        };
        self.field.make(repr)
    }

    pub fn sub_ref(&self, o: &Scalar) -> Scalar {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &Scalar) -> Scalar {
        self.check_same(o);
        if self.is_zero() || o.is_zero() {
            return self.field.zero();
        }
        let repr = match (&self.field.0.kind, &self.repr, &o.repr) {
            (Kind::Finite(d), Repr::Fin(a), Repr::Fin(b)) => Repr::Fin(d.mul(*a, *b)),
            (_, Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            (Kind::RatFunc { p, .. }, Repr::Fun(a), Repr::Fun(b)) => Repr::Fun(a.mul(b, *p)),
            _ => unreachable!("mismatched scalar representations"),
        };
        self.field.make(repr)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match (&self.field.0.kind, &self.repr) {
            (Kind::Finite(d), Repr::Fin(a)) => Repr::Fin(d.inv(*a)),
            (_, Repr::Rat(a)) => Repr::Rat(a.recip()),
            (Kind::RatFunc { p, .. }, Repr::Fun(a)) => Repr::Fun(a.inv(*p).ok_or(Error::DivisionByZero)?),
            _ => unreachable!("mismatched scalar representations"),
        };
        Ok(self.field.make(repr))
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    /// The reduced fraction for rational scalars.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// Residue for prime-field scalars.
    pub fn as_residue(&self) -> Option<u32> {
        match (&self.field.0.kind, &self.repr) {
            (Kind::Finite(d), Repr::Fin(c)) if d.m == 1 => Some(*c),
            _ => None,
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, o: &Scalar) -> Scalar {
                self.$inner(o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, o: Scalar) -> Scalar {
                self.$inner(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, o: &Scalar) -> Scalar {
                self.$inner(o)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

/// Quadratic-extension helper: is `t^2 - b t - c` irreducible over `k`?
///
/// Decided exactly for finite fields, the rationals and characteristic 2
/// function fields (for `b = 0`, or for constant Artin-Schreier data).
pub fn quadratic_irreducible(b: &Scalar, c: &Scalar) -> Result<bool> {
    let k = b.field().clone();
    if let Ok(elems) = k.elements() {
        return Ok(!elems.iter().any(|t| (t * t - b * t - c).is_zero()));
    }
    if k.characteristic() != 2 {
        let disc = b * b + k.from_int(4) * c;
        return Ok(!k.is_square(&disc)?);
    }
    if b.is_zero() {
        return Ok(!k.is_square(c)?);
    }
    // t = b s: s^2 + s + c/b^2 (characteristic 2)
    let w = c.div(&(b * b))?;
    artin_schreier_irreducible(&w)
}

/// Characteristic 2: is `s^2 + s + w` irreducible over the field of `w`?
fn artin_schreier_irreducible(w: &Scalar) -> Result<bool> {
    let k = w.field().clone();
    if let Ok(elems) = k.elements() {
        return Ok(!elems.iter().any(|s| (s * s + s + w).is_zero()));
    }
    if let Repr::Fun(f) = w.repr() {
        if f.num.is_constant() && f.den.is_one() {
            // constants: F_2 is algebraically closed in F_2(u, v)
            let c = f.num.0.first().map_or(0, |p| p.lc());
            return Ok(c == 1);
        }
    }
    Err(Error::UnsupportedField(format!("Artin-Schreier test for {w} over {:?}", k.desc())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_field_inverse() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.from_int(2).inv().unwrap(), f3.from_int(2));
        assert_eq!(f3.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_addition() {
        let q = Field::rationals();
        let a = q.parse("1/2").unwrap() + q.parse("1/3").unwrap();
        assert_eq!(a, q.parse("5/6").unwrap());
        assert_eq!(a.to_string(), "5/6");
    }

    #[test]
    fn function_field_inverse_is_reduced() {
        let k = Field::ratfunc(2, &["u"], 1).unwrap();
        let a = k.parse("u^2+u").unwrap();
        let inv = a.inv().unwrap();
        assert_eq!(inv.to_string(), "1/(u^2+u)");
        assert!((inv * a).is_one());
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(Field::prime(3).unwrap().elements().unwrap().len(), 3);
        assert_eq!(Field::finite(2, 2).unwrap().elements().unwrap().len(), 4);
        assert_eq!(Field::finite(3, 2).unwrap().elements().unwrap().len(), 9);
        assert_eq!(Field::rationals().elements().unwrap_err(), Error::InfiniteField);
    }

    #[test]
    fn square_roots() {
        let f5 = Field::prime(5).unwrap();
        assert!(f5.is_square(&f5.from_int(4)).unwrap());
        assert!(!f5.is_square(&f5.from_int(2)).unwrap());
        let f8 = Field::finite(2, 3).unwrap();
        for a in f8.elements().unwrap() {
            let r = f8.sqrt(&a).unwrap().unwrap();
            assert_eq!(&r * &r, a);
        }
        let q = Field::rationals();
        assert_eq!(q.sqrt(&q.parse("9/4").unwrap()).unwrap(), Some(q.parse("3/2").unwrap()));
        assert_eq!(q.sqrt(&q.parse("2").unwrap()).unwrap(), None);
    }

    #[test]
    fn char2_function_field_squares() {
        // k = F_2(u^2, v^2); s = u^2 is not a square, u^4 + v^4 is.
        let k = Field::ratfunc(2, &["u", "v"], 2).unwrap();
        assert!(!k.is_square(&k.parse("u^2").unwrap()).unwrap());
        let r = k.sqrt(&k.parse("u^4+v^4").unwrap()).unwrap().unwrap();
        assert_eq!(r, k.parse("u^2+v^2").unwrap());
        let a = k.parse("(u^2+v^2)/(u^2*v^2+1)").unwrap();
        let comps = k.p_basis_components(&a).unwrap();
        let basis = k.p_basis().unwrap();
        let back = comps.iter().zip(&basis).fold(k.zero(), |acc, (r, m)| acc + m * &(r * r));
        assert_eq!(back, a);
    }

    #[test]
    fn quadratic_irreducibility() {
        let f3 = Field::prime(3).unwrap();
        assert!(quadratic_irreducible(&f3.zero(), &f3.from_int(2)).unwrap());
        let q = Field::rationals();
        assert!(quadratic_irreducible(&q.zero(), &q.from_int(2)).unwrap());
        assert!(!quadratic_irreducible(&q.zero(), &q.from_int(4)).unwrap());
        let k = Field::ratfunc(2, &["u"], 2).unwrap();
        // t^2 + t + 1 stays irreducible over F_2(u^2)
        assert!(quadratic_irreducible(&k.one(), &k.one()).unwrap());
        assert!(quadratic_irreducible(&k.zero(), &k.parse("u^2").unwrap()).unwrap());
    }
}
