//! Four-dimensional k-algebras with basis (1, x, y, xy): quartic field towers
//! and quaternion algebras.

mod division;
mod galois;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{quadratic_irreducible, Field, Scalar};
use crate::matrix::{Matrix, Ring};

pub use division::{hilbert_symbol, DivisionVerdict};
pub use galois::{apply_automorphism, QuadraticSubfields};

/// Which shape of algebra, with its defining scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraSpec {
    /// Commutative: x^2 = c1 x + c0, y^2 = d1 y + a0 + a1 x.
    Tower { c1: Scalar, c0: Scalar, d1: Scalar, a0: Scalar, a1: Scalar },
    /// x^2 = a, y^2 = b, yx = -xy.
    QuaternionOdd { a: Scalar, b: Scalar },
    /// Characteristic 2: x^2 = c0 + x, y^2 = a0, xy = y + yx.
    QuaternionChar2 { c0: Scalar, a0: Scalar },
}

/// JSON form of [`AlgebraSpec`]; scalars are expression strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgebraDesc {
    Tower {
        #[serde(default = "zero_str")]
        c1: String,
        c0: String,
        #[serde(default = "zero_str")]
        d1: String,
        a0: String,
        #[serde(default = "zero_str")]
        a1: String,
    },
    Quaternion {
        variant: QuaternionVariant,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c0: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a0: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuaternionVariant {
    #[serde(rename = "charNot2")]
    CharNot2,
    #[serde(rename = "char2")]
    Char2,
}

fn zero_str() -> String {
    "0".into()
}

impl AlgebraDesc {
    pub fn to_spec(&self, k: &Field) -> Result<AlgebraSpec> {
        let need = |v: &Option<String>, name: &str| -> Result<Scalar> {
            let s = v.as_ref().ok_or_else(|| Error::Invalid(format!("quaternion variant needs '{name}'")))?;
            k.parse(s)
        };
        Ok(match self {
            AlgebraDesc::Tower { c1, c0, d1, a0, a1 } => {
                AlgebraSpec::Tower { c1: k.parse(c1)?, c0: k.parse(c0)?, d1: k.parse(d1)?, a0: k.parse(a0)?, a1: k.parse(a1)? }
            }
            AlgebraDesc::Quaternion { variant: QuaternionVariant::CharNot2, a, b, .. } => {
                AlgebraSpec::QuaternionOdd { a: need(a, "a")?, b: need(b, "b")? }
            }
            AlgebraDesc::Quaternion { variant: QuaternionVariant::Char2, c0, a0, .. } => {
                AlgebraSpec::QuaternionChar2 { c0: need(c0, "c0")?, a0: need(a0, "a0")? }
            }
        })
    }
}

#[derive(Debug)]
struct AlgebraData {
    field: Field,
    spec: AlgebraSpec,
    /// `table[4 * i + j]` = coordinates of e_i e_j.
    table: Vec<[Scalar; 4]>,
    commutative: bool,
}

/// A built algebra. Cheap to clone.
#[derive(Debug, Clone)]
pub struct Algebra(Arc<AlgebraData>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.field == other.0.field && self.0.spec == other.0.spec)
    }
}

impl Eq for Algebra {}

#[derive(Clone)]
pub struct AlgebraElem {
    alg: Algebra,
    coords: [Scalar; 4],
}

impl PartialEq for AlgebraElem {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for AlgebraElem {}

impl std::hash::Hash for AlgebraElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

/// Words in x, y as strings over {'x', 'y'}.
type Poly = BTreeMap<String, Scalar>;

fn add_term(p: &mut Poly, w: String, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&w) {
        Some(e) => {
            *e = &*e + &c;
            if e.is_zero() {
                p.remove(&w);
            }
        }
        None => {
            p.insert(w, c);
        }
    }
}

/// Rewriting rules xx -> rx, yy -> ry, yx -> ryx (right-hand sides given as
/// coefficient lists over the basis words "", "x", "y", "xy").
struct Rules {
    xx: [Scalar; 4],
    yy: [Scalar; 4],
    yx: [Scalar; 4],
}

const BASIS_WORDS: [&str; 4] = ["", "x", "y", "xy"];

fn normalize(word: &str, coeff: Scalar, rules: &Rules) -> Result<[Scalar; 4]> {
    let zero = coeff.zero_like();
    let mut todo: Poly = BTreeMap::new();
    add_term(&mut todo, word.to_string(), coeff);
    let mut out: [Scalar; 4] = std::array::from_fn(|_| zero.clone());
    let mut steps = 0usize;
    while let Some((w, c)) = todo.pop_first() {
        steps += 1;
        if steps > 10_000 {
            return Err(Error::NonTerminating(steps));
        }
        if let Some(i) = BASIS_WORDS.iter().position(|b| *b == w) {
            out[i] = &out[i] + &c;
            continue;
        }
        let (pos, rhs) = ["xx", "yy", "yx"]
            .iter()
            .zip([&rules.xx, &rules.yy, &rules.yx])
            .filter_map(|(pat, rhs)| w.find(pat).map(|p| (p, rhs)))
            .min_by_key(|(p, _)| *p)
            .expect("non-basis word contains a reducible pair");
        let (pre, post) = (&w[..pos], &w[pos + 2..]);
        for (bw, rc) in BASIS_WORDS.iter().zip(rhs.iter()) {
            if !rc.is_zero() {
                add_term(&mut todo, format!("{pre}{bw}{post}"), &c * rc);
            }
        }
    }
    Ok(out)
}

impl Algebra {
    pub fn new(field: &Field, spec: AlgebraSpec) -> Result<Algebra> {
        let k = field;
        let (z, one) = (k.zero(), k.one());
        let v = |a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar| [a.clone(), b.clone(), c.clone(), d.clone()];
        let rules = match &spec {
            AlgebraSpec::Tower { c1, c0, d1, a0, a1 } => {
                if !quadratic_irreducible(c1, c0)? {
                    return Err(Error::ReduciblePolynomial(format!("t^2-({c1})t-({c0}) over k")));
                }
                Rules { xx: v(c0, c1, &z, &z), yy: v(a0, a1, d1, &z), yx: v(&z, &z, &z, &one) }
            }
            AlgebraSpec::QuaternionOdd { a, b } => {
                if k.characteristic() == 2 {
                    return Err(Error::Invalid("this quaternion variant needs characteristic not 2".into()));
                }
                if a.is_zero() || b.is_zero() {
                    return Err(Error::Invalid("quaternion parameters must be nonzero".into()));
                }
                Rules { xx: v(a, &z, &z, &z), yy: v(b, &z, &z, &z), yx: v(&z, &z, &z, &-&one) }
            }
            AlgebraSpec::QuaternionChar2 { c0, a0 } => {
                if k.characteristic() != 2 {
                    return Err(Error::Invalid("this quaternion variant needs characteristic 2".into()));
                }
                if a0.is_zero() {
                    return Err(Error::Invalid("a0 must be nonzero".into()));
                }
                // yx = xy - y = xy + y
                Rules { xx: v(c0, &one, &z, &z), yy: v(a0, &z, &z, &z), yx: v(&z, &z, &one, &one) }
            }
        };
        let mut table = Vec::with_capacity(16);
        for a in BASIS_WORDS {
            for b in BASIS_WORDS {
                table.push(normalize(&format!("{a}{b}"), one.clone(), &rules)?);
            }
        }
        let commutative = (0..4).all(|i| (0..4).all(|j| table[4 * i + j] == table[4 * j + i]));
        let alg = Algebra(Arc::new(AlgebraData { field: k.clone(), spec, table, commutative }));
        alg.check_associative()?;
        if let AlgebraSpec::Tower { .. } = alg.spec() {
            if !alg.second_step_irreducible()? {
                return Err(Error::ReduciblePolynomial("y^2-d1*y-(a0+a1*x) over k(x)".into()));
            }
        }
        Ok(alg)
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.0.spec
    }

    pub fn is_commutative(&self) -> bool {
        self.0.commutative
    }

    pub fn is_tower(&self) -> bool {
        matches!(self.0.spec, AlgebraSpec::Tower { .. })
    }

    fn check_associative(&self) -> Result<()> {
        let b = self.basis();
        for (i, ei) in b.iter().enumerate() {
            for (j, ej) in b.iter().enumerate() {
                for (l, el) in b.iter().enumerate() {
                    if ei.mul(ej).mul(el) != ei.mul(&ej.mul(el)) {
                        return Err(Error::NotAssociative(format!("basis triple ({i},{j},{l})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn elem(&self, coords: [Scalar; 4]) -> AlgebraElem {
        AlgebraElem { alg: self.clone(), coords }
    }

    pub fn from_vec(&self, v: &[Scalar]) -> AlgebraElem {
        self.elem(std::array::from_fn(|i| v[i].clone()))
    }

    pub fn from_scalar(&self, c: &Scalar) -> AlgebraElem {
        let z = self.field().zero();
        self.elem([c.clone(), z.clone(), z.clone(), z])
    }

    pub fn zero(&self) -> AlgebraElem {
        self.from_scalar(&self.field().zero())
    }

    pub fn one(&self) -> AlgebraElem {
        self.from_scalar(&self.field().one())
    }

    pub fn basis_elem(&self, i: usize) -> AlgebraElem {
        let k = self.field();
        self.elem(std::array::from_fn(|j| if i == j { k.one() } else { k.zero() }))
    }

    pub fn basis(&self) -> [AlgebraElem; 4] {
        std::array::from_fn(|i| self.basis_elem(i))
    }

    pub fn x(&self) -> AlgebraElem {
        self.basis_elem(1)
    }

    pub fn y(&self) -> AlgebraElem {
        self.basis_elem(2)
    }

    /// Parse `c0 + c1*x + c2*y + c3*xy` given as four scalar strings.
    pub fn parse_coords(&self, coords: &[String]) -> Result<AlgebraElem> {
        if coords.len() != 4 {
            return Err(Error::Invalid("algebra elements take four coordinates".into()));
        }
        let v = coords.iter().map(|s| self.field().parse(s)).collect::<Result<Vec<_>>>()?;
        Ok(self.from_vec(&v))
    }

    /// Every element, for finite k.
    pub fn elements(&self) -> Result<Vec<AlgebraElem>> {
        let ks = self.field().elements()?;
        let q = ks.len();
        let total = q.pow(4);
        Ok((0..total)
            .map(|mut idx| {
                let c = std::array::from_fn(|_| {
                    let s = ks[idx % q].clone();
                    idx /= q;
                    s
                });
                self.elem(c)
            })
            .collect())
    }

    /// Matrix over k of left multiplication by `a` (column j = a e_j).
    pub fn left_mult_matrix(&self, a: &AlgebraElem) -> Matrix<Scalar> {
        let cols: Vec<[Scalar; 4]> = (0..4).map(|j| a.mul(&self.basis_elem(j)).coords).collect();
        Matrix::from_fn(4, 4, &self.field().zero(), |i, j| cols[j][i].clone())
    }

    /// Matrix over k of right multiplication by `a` (column j = e_j a).
    pub fn right_mult_matrix(&self, a: &AlgebraElem) -> Matrix<Scalar> {
        let cols: Vec<[Scalar; 4]> = (0..4).map(|j| self.basis_elem(j).mul(a).coords).collect();
        Matrix::from_fn(4, 4, &self.field().zero(), |i, j| cols[j][i].clone())
    }

    /// Minimal polynomial over k as monic coefficients (low to high).
    pub fn min_poly(&self, a: &AlgebraElem) -> Vec<Scalar> {
        let k = self.field();
        let mut powers = vec![self.one()];
        loop {
            let next = powers.last().unwrap().mul(a);
            let d = powers.len();
            // solve next = sum c_i a^i
            let m = Matrix::from_fn(4, d, &k.zero(), |i, j| powers[j].coords[i].clone());
            if let Ok(sol) = m.solve(&next.coords) {
                let mut out: Vec<Scalar> = sol.iter().map(|c| -c).collect();
                out.push(k.one());
                return out;
            }
            powers.push(next);
        }
    }

    /// Degree of `a` over k.
    pub fn degree_of(&self, a: &AlgebraElem) -> usize {
        self.min_poly(a).len() - 1
    }

    pub fn in_base(&self, a: &AlgebraElem) -> bool {
        a.coords[1..].iter().all(|c| c.is_zero())
    }

    /// Irreducibility of y^2 - d1 y - (a0 + a1 x) over k(x).
    fn second_step_irreducible(&self) -> Result<bool> {
        let AlgebraSpec::Tower { c1, c0, d1, a0, a1 } = self.spec().clone() else { return Ok(true) };
        let k = self.field().clone();
        if let Ok(ks) = k.elements() {
            // no root r + s x in k(x)
            let target = self.elem([a0.clone(), a1.clone(), k.zero(), k.zero()]);
            for r in &ks {
                for s in &ks {
                    let w = self.elem([r.clone(), s.clone(), k.zero(), k.zero()]);
                    let val = w.mul(&w).sub(&w.scale(&d1)).sub(&target);
                    if val.is_zero() {
                        return Ok(false);
                    }
                }
            }
            return Ok(true);
        }
        if k.characteristic() != 2 {
            let two = k.from_int(2);
            let half_d = d1.div(&two)?;
            // delta = a0 + a1 x + d1^2/4 must be a non-square in k(x)
            let delta = self.elem([&a0 + &(&half_d * &half_d), a1.clone(), k.zero(), k.zero()]);
            return Ok(galois::sqrt_in_first_step(self, &delta)?.is_none());
        }
        if !d1.is_zero() {
            return Err(Error::UnsupportedField("separable second step in characteristic 2 over an infinite field".into()));
        }
        // delta = a0 + a1 x is a square in k(x) iff a0 = r^2 + s^2 c0 and a1 = s^2 c1
        if !c1.is_zero() {
            let Some(s) = k.sqrt(&a1.div(&c1)?)? else { return Ok(true) };
            return Ok(!k.is_square(&(&a0 + &(&(&s * &s) * &c0)))?);
        }
        if !a1.is_zero() {
            return Ok(true);
        }
        Ok(!in_square_span(&k, &a0, &c0)?)
    }

    pub fn random_elem<R: rand::Rng>(&self, rng: &mut R) -> AlgebraElem {
        let k = self.field();
        self.elem(std::array::from_fn(|_| k.random(rng)))
    }
}

/// Characteristic 2: is `a` in k^2 + c k^2?
pub(crate) fn in_square_span(k: &Field, a: &Scalar, c: &Scalar) -> Result<bool> {
    let ca = k.p_basis_components(a)?;
    let cc = k.p_basis_components(c)?;
    let mut e0 = vec![k.zero(); ca.len()];
    e0[0] = k.one();
    let base = Matrix::from_rows(vec![e0.clone(), cc.clone()], &k.zero()).rank();
    let with = Matrix::from_rows(vec![e0, cc, ca], &k.zero()).rank();
    Ok(base == with)
}

impl AlgebraElem {
    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coords(&self) -> &[Scalar; 4] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &AlgebraElem) -> AlgebraElem {
        self.alg.elem(std::array::from_fn(|i| &self.coords[i] + &o.coords[i]))
    }

    pub fn sub(&self, o: &AlgebraElem) -> AlgebraElem {
        self.alg.elem(std::array::from_fn(|i| &self.coords[i] - &o.coords[i]))
    }

    pub fn neg(&self) -> AlgebraElem {
        self.alg.elem(std::array::from_fn(|i| -&self.coords[i]))
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElem {
        self.alg.elem(std::array::from_fn(|i| &self.coords[i] * c))
    }

    pub fn mul(&self, o: &AlgebraElem) -> AlgebraElem {
        let k = self.alg.field();
        let mut out: [Scalar; 4] = std::array::from_fn(|_| k.zero());
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (l, t) in self.alg.0.table[4 * i + j].iter().enumerate() {
                    if !t.is_zero() {
                        out[l] = &out[l] + &(&ab * t);
                    }
                }
            }
        }
        self.alg.elem(out)
    }

    pub fn pow(&self, e: usize) -> AlgebraElem {
        (0..e).fold(self.alg.one(), |acc, _| acc.mul(self))
    }

    /// Two-sided inverse.
    pub fn inv(&self) -> Result<AlgebraElem> {
        let lm = self.alg.left_mult_matrix(self);
        if !lm.is_invertible() {
            return Err(Error::DivisionByZero);
        }
        let e0 = self.alg.one();
        let sol = lm.solve(&e0.coords)?;
        Ok(self.alg.from_vec(&sol))
    }

    pub fn is_unit(&self) -> bool {
        self.alg.left_mult_matrix(self).is_invertible()
    }
}

impl Ring for AlgebraElem {
    fn zero_like(&self) -> Self {
        self.alg.zero()
    }
    fn one_like(&self) -> Self {
        self.alg.one()
    }
    fn is_zero(&self) -> bool {
        AlgebraElem::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
}

impl fmt::Display for AlgebraElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (c, w) in self.coords.iter().zip(BASIS_WORDS) {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let compound = cs.contains(['+', '/']) || cs[1..].contains('-');
            parts.push(match (w, c.is_one(), compound) {
                ("", _, _) => cs,
                (_, true, _) => w.to_string(),
                (_, false, true) => format!("({cs})*{w}"),
                (_, false, false) => format!("{cs}*{w}"),
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for AlgebraElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
