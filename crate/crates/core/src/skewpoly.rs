//! The skew polynomial ring K[X; Y, α] over a finite field K = F_{p^n},
//! graded by total degree: X central, Y·c = α(c)·Y with α = Frobenius^s.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

#[derive(Debug, Clone)]
pub struct SkewPolyAlgebra {
    big: Field,
    base: Field,
    degree: usize,
    frobenius_power: usize,
}

/// Sum of c·X^i·Y^j, keyed by (i, j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewElem {
    terms: BTreeMap<(usize, usize), Scalar>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl SkewPolyAlgebra {
    /// K = F_{p^n} over k = F_p, α = x ↦ x^{p^s} with gcd(s, n) = 1.
    pub fn new(p: u32, n: usize, frobenius_power: usize) -> Result<SkewPolyAlgebra> {
        if n < 1 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        if gcd(frobenius_power % n.max(1), n) != 1 && n > 1 {
            return Err(Error::Invalid(format!("Frobenius^{frobenius_power} does not generate Gal(F_{p}^{n}/F_{p})")));
        }
        let big = Field::finite(p, n as u32)?;
        let base = Field::prime(p)?;
        Ok(SkewPolyAlgebra { big, base, degree: n, frobenius_power: frobenius_power % n.max(1) })
    }

    pub fn big_field(&self) -> &Field {
        &self.big
    }

    pub fn base_field(&self) -> &Field {
        &self.base
    }

    /// [K : k], also the order of α.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn alpha(&self, c: &Scalar) -> Scalar {
        self.alpha_pow(c, 1)
    }

    pub fn alpha_pow(&self, c: &Scalar, j: usize) -> Scalar {
        let steps = (j * self.frobenius_power) % self.degree;
        (0..steps).fold(c.clone(), |acc, _| self.big.frobenius(&acc))
    }

    pub fn zero(&self) -> SkewElem {
        SkewElem { terms: BTreeMap::new() }
    }

    pub fn term(&self, c: Scalar, i: usize, j: usize) -> SkewElem {
        let mut e = self.zero();
        e.add_term((i, j), c);
        e
    }

    pub fn x(&self) -> SkewElem {
        self.term(self.big.one(), 1, 0)
    }

    pub fn y(&self) -> SkewElem {
        self.term(self.big.one(), 0, 1)
    }

    pub fn scalar(&self, c: Scalar) -> SkewElem {
        self.term(c, 0, 0)
    }

    pub fn add(&self, a: &SkewElem, b: &SkewElem) -> SkewElem {
        let mut out = a.clone();
        for (k, c) in &b.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, a: &SkewElem, b: &SkewElem) -> SkewElem {
        let mut out = a.clone();
        for (k, c) in &b.terms {
            out.add_term(*k, -c);
        }
        out
    }

    pub fn mul(&self, a: &SkewElem, b: &SkewElem) -> SkewElem {
        let mut out = self.zero();
        for (&(i, j), c) in &a.terms {
            for (&(k, l), d) in &b.terms {
                out.add_term((i + k, j + l), c * &self.alpha_pow(d, j));
            }
        }
        out
    }

    /// k-basis of K: powers of the defining generator.
    fn power_basis(&self) -> Vec<Scalar> {
        let g = self.big.generator().expect("finite field");
        (0..self.degree).map(|t| g.pow(t as u64)).collect()
    }

    fn coords(&self, c: &Scalar) -> Vec<Scalar> {
        let raw = self.big.coords_over_prime(c).expect("finite field");
        (0..self.degree).map(|t| self.base.from_int(raw.get(t).copied().unwrap_or(0) as i64)).collect()
    }

    fn from_coords(&self, v: &[Scalar]) -> Scalar {
        self.power_basis().iter().zip(v).fold(self.big.zero(), |acc, (b, c)| {
            let lifted = self.big.from_int(c.as_residue().expect("prime field") as i64);
            &acc + &(&lifted * b)
        })
    }

    /// Homogeneous central elements of degree `d` (k-basis).
    pub fn centre_basis(&self, d: usize) -> Vec<SkewElem> {
        let n = self.degree;
        let basis = self.power_basis();
        let vars: Vec<(usize, usize)> = (0..=d).flat_map(|j| (0..n).map(move |t| (j, t))).collect();
        let g = self.big.generator().expect("finite field");
        let probes = [self.y(), self.scalar(g)];
        // rows: coordinates of [probe, e] in degree ≤ d + 1, one block per probe and monomial
        let row_index = |probe: usize, j: usize, t: usize| ((probe * (d + 2)) + j) * n + t;
        let mut sys = Matrix::zeros(2 * (d + 2) * n, vars.len(), &self.base.zero());
        for (col, &(j, t)) in vars.iter().enumerate() {
            let e = self.term(basis[t].clone(), d - j, j);
            for (pi, probe) in probes.iter().enumerate() {
                let comm = self.sub(&self.mul(probe, &e), &self.mul(&e, probe));
                for (&(_, jj), c) in &comm.terms {
                    for (tt, v) in self.coords(c).into_iter().enumerate() {
                        sys.set(row_index(pi, jj, tt), col, v);
                    }
                }
            }
        }
        sys.kernel()
            .into_iter()
            .map(|v| {
                let mut e = self.zero();
                for j in 0..=d {
                    e.add_term((d - j, j), self.from_coords(&v[j * n..(j + 1) * n]));
                }
                e
            })
            .collect()
    }

    pub fn is_central(&self, e: &SkewElem) -> bool {
        let g = self.big.generator().expect("finite field");
        [self.x(), self.y(), self.scalar(g)].iter().all(|p| self.sub(&self.mul(p, e), &self.mul(e, p)).is_zero())
    }

    /// Whether the degree-d centre is spanned by X^{d-j}·Y^j with n | j and
    /// coefficients in k.
    pub fn centre_matches_k_x_yn(&self, d: usize) -> bool {
        let centre = self.centre_basis(d);
        let expected = (0..=d).filter(|j| j % self.degree == 0).count();
        centre.len() == expected
            && centre.iter().all(|e| e.terms.iter().all(|(&(_, j), c)| j % self.degree == 0 && self.alpha(c) == *c))
    }

    /// The graded automorphism α_*: coefficients c ↦ α(c), X ↦ X, Y ↦ Y.
    pub fn apply_alpha_star(&self, e: &SkewElem, times: usize) -> SkewElem {
        let mut out = self.zero();
        for (&k, c) in &e.terms {
            out.add_term(k, self.alpha_pow(c, times));
        }
        out
    }

    /// The ghost group, generated by α_*. Inner automorphisms and scalar
    /// twists act trivially on the degree-0 part K, so the order of α_* is
    /// read off there.
    pub fn ghost_group(&self) -> SkewGhostReport {
        let g = self.big.generator().expect("finite field");
        let x = self.x();
        let y = self.y();
        // α_* respects Y·c = α(c)·Y and fixes the centre k[X, Y^n]
        let respects = self.mul(&self.apply_alpha_star(&y, 1), &self.scalar(self.alpha(&g)))
            == self.apply_alpha_star(&self.mul(&y, &self.scalar(g.clone())), 1);
        let yn = (1..self.degree).fold(y.clone(), |acc, _| self.mul(&acc, &y));
        let fixes_centre = self.apply_alpha_star(&x, 1) == x && self.apply_alpha_star(&yn, 1) == yn;
        let order = (1..=self.degree).find(|&t| self.alpha_pow(&g, t) == g).unwrap_or(self.degree);
        SkewGhostReport {
            order,
            cyclic: true,
            generator: format!("alpha_*: c -> c^(p^{}), X -> X, Y -> Y", self.frobenius_power),
            automorphism_verified: respects && fixes_centre,
        }
    }

    pub fn function_field(&self) -> SkewFunctionField {
        SkewFunctionField { presentation: "K(T, alpha)".into(), centre: format!("k(T^{})", self.degree), s: self.degree }
    }

    pub fn random_elem<R: rand::Rng>(&self, rng: &mut R, max_degree: usize) -> SkewElem {
        let mut e = self.zero();
        for i in 0..=max_degree {
            for j in 0..=max_degree - i {
                e.add_term((i, j), self.big.random(rng));
            }
        }
        e
    }
}

impl SkewElem {
    fn add_term(&mut self, k: (usize, usize), c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&k) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(k, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.terms.iter()
    }
}

impl fmt::Display for SkewElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Scalar, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), c)| {
                let mut m = String::new();
                for (name, e) in [("X", i), ("Y", j)] {
                    match e {
                        0 => {}
                        1 => m.push_str(name),
                        _ => m.push_str(&format!("{name}^{e}")),
                    }
                }
                (c.clone(), m)
            })
            .collect();
        f.write_str(&crate::presentation::format_sum(&terms))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SkewGhostReport {
    pub order: usize,
    pub cyclic: bool,
    pub generator: String,
    pub automorphism_verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkewFunctionField {
    pub presentation: String,
    pub centre: String,
    pub s: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn y_twists_scalars() {
        let r = SkewPolyAlgebra::new(3, 2, 1).unwrap();
        let g = r.big_field().generator().unwrap();
        let lhs = r.mul(&r.y(), &r.scalar(g.clone()));
        let rhs = r.mul(&r.scalar(r.alpha(&g)), &r.y());
        assert_eq!(lhs, rhs);
        assert_ne!(r.alpha(&g), g);
    }

    #[test]
    fn centre_is_k_x_yn() {
        for n in 2..=4 {
            let r = SkewPolyAlgebra::new(2, n, 1).unwrap();
            for d in 0..=4 {
                assert!(r.centre_matches_k_x_yn(d), "n = {n}, d = {d}");
            }
        }
    }

    #[test]
    fn ghost_group_is_cyclic_of_degree_order() {
        let r = SkewPolyAlgebra::new(3, 2, 1).unwrap();
        let report = r.ghost_group();
        assert_eq!(report.order, 2);
        assert!(report.automorphism_verified);
    }

    #[test]
    fn multiplication_is_associative() {
        let r = SkewPolyAlgebra::new(5, 3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let (a, b, c) = (r.random_elem(&mut rng, 2), r.random_elem(&mut rng, 2), r.random_elem(&mut rng, 2));
            assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        }
    }

    #[test]
    fn rejects_non_generator() {
        assert!(SkewPolyAlgebra::new(2, 4, 2).is_err());
    }
}
