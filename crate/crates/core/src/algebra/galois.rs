//! Square roots, automorphisms, primitive elements and quadratic subfields of
//! quartic towers.

use super::{Algebra, AlgebraElem, AlgebraSpec};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;

type SqrtFn<'a> = dyn Fn(&AlgebraElem) -> Result<Option<AlgebraElem>> + 'a;

/// Square root of `a + b * root` where `root^2 = delta`, given square roots
/// in the smaller field. Characteristic not 2.
fn sqrt_ext(
    a: &AlgebraElem,
    b: &AlgebraElem,
    delta: &AlgebraElem,
    root: &AlgebraElem,
    sqrt_base: &SqrtFn<'_>,
) -> Result<Option<AlgebraElem>> {
    let alg = a.algebra();
    let two = alg.from_scalar(&alg.field().from_int(2));
    if b.is_zero() {
        if let Some(r) = sqrt_base(a)? {
            return Ok(Some(r));
        }
        if let Some(s) = sqrt_base(&a.mul(&delta.inv()?))? {
            return Ok(Some(s.mul(root)));
        }
        return Ok(None);
    }
    let norm = a.mul(a).sub(&delta.mul(b).mul(b));
    let Some(n) = sqrt_base(&norm)? else { return Ok(None) };
    for sign in [n.clone(), n.neg()] {
        let t = a.add(&sign).mul(&two.inv()?);
        if let Some(r) = sqrt_base(&t)? {
            if !r.is_zero() {
                let s = b.mul(&two.mul(&r).inv()?);
                return Ok(Some(r.add(&s.mul(root))));
            }
        }
    }
    Ok(None)
}

struct Normalized {
    /// x - c1/2 and its square D in k
    xs: AlgebraElem,
    d: AlgebraElem,
    /// y - d1/2 and its square in k(x)
    ys: AlgebraElem,
    delta: AlgebraElem,
}

fn normalized(alg: &Algebra) -> Result<Normalized> {
    let AlgebraSpec::Tower { c1, d1, .. } = alg.spec() else {
        return Err(Error::Invalid("not a tower".into()));
    };
    let k = alg.field();
    if k.characteristic() == 2 {
        return Err(Error::UnsupportedField("completing the square in characteristic 2".into()));
    }
    let half = k.from_int(2).inv()?;
    let xs = alg.x().sub(&alg.from_scalar(&(c1 * &half)));
    let ys = alg.y().sub(&alg.from_scalar(&(d1 * &half)));
    let d = xs.mul(&xs);
    let delta = ys.mul(&ys);
    Ok(Normalized { xs, d, ys, delta })
}

fn sqrt_in_k(e: &AlgebraElem) -> Result<Option<AlgebraElem>> {
    let alg = e.algebra();
    if !alg.in_base(e) {
        return Err(Error::Invalid("element is not in k".into()));
    }
    Ok(alg.field().sqrt(&e.coords()[0])?.map(|s| alg.from_scalar(&s)))
}

/// Square root inside k(x) of an element of k(x). Characteristic not 2.
pub(super) fn sqrt_in_first_step(alg: &Algebra, e: &AlgebraElem) -> Result<Option<AlgebraElem>> {
    let nz = normalized(alg)?;
    let b = alg.from_scalar(&e.coords()[1]);
    let a = e.sub(&b.mul(&nz.xs));
    sqrt_ext(&a, &b, &nz.d, &nz.xs, &sqrt_in_k)
}

/// Square root inside K. Characteristic not 2, infinite k.
pub(super) fn sqrt_in_tower(alg: &Algebra, w: &AlgebraElem) -> Result<Option<AlgebraElem>> {
    let nz = normalized(alg)?;
    let c = w.coords();
    let b = alg.elem([c[2].clone(), c[3].clone(), alg.field().zero(), alg.field().zero()]);
    let a = w.sub(&b.mul(&nz.ys));
    let base = |e: &AlgebraElem| sqrt_in_first_step(alg, e);
    sqrt_ext(&a, &b, &nz.delta, &nz.ys, &base)
}

/// Roots in K of `t^2 - p t - q` for `p, q` in K.
fn quadratic_roots(alg: &Algebra, p: &AlgebraElem, q: &AlgebraElem) -> Result<Vec<AlgebraElem>> {
    let k = alg.field();
    if k.is_finite() {
        return Ok(alg.elements()?.into_iter().filter(|t| t.mul(t).sub(&p.mul(t)).sub(q).is_zero()).collect());
    }
    if k.characteristic() == 2 {
        return Err(Error::UnsupportedField("quadratic roots in characteristic 2".into()));
    }
    let half = alg.from_scalar(&k.from_int(2).inv()?);
    let hp = p.mul(&half);
    let disc = hp.mul(&hp).add(q);
    let Some(r) = sqrt_in_tower(alg, &disc)? else { return Ok(vec![]) };
    let mut out = vec![hp.add(&r)];
    if !r.is_zero() {
        out.push(hp.sub(&r));
    }
    Ok(out)
}

/// Matrix (columns = images of the basis) of the k-algebra endomorphism with
/// the given images of x and y, if it respects all products.
fn endomorphism_matrix(alg: &Algebra, sx: &AlgebraElem, sy: &AlgebraElem) -> Option<Matrix<Scalar>> {
    let images = [alg.one(), sx.clone(), sy.clone(), sx.mul(sy)];
    let k = alg.field();
    let m = Matrix::from_fn(4, 4, &k.zero(), |i, j| images[j].coords()[i].clone());
    let apply = |e: &AlgebraElem| alg.from_vec(&m.mul(&Matrix::column(e.coords().to_vec(), &k.zero())).col(0));
    let basis = alg.basis();
    for a in &basis {
        for b in &basis {
            if apply(&a.mul(b)) != apply(a).mul(&apply(b)) {
                return None;
            }
        }
    }
    m.is_invertible().then_some(m)
}

/// Apply an automorphism given by its matrix.
pub fn apply_automorphism(m: &Matrix<Scalar>, e: &AlgebraElem) -> AlgebraElem {
    let k = e.algebra().field();
    e.algebra().from_vec(&m.mul(&Matrix::column(e.coords().to_vec(), &k.zero())).col(0))
}

/// Intermediate fields of degree two over k, each given by a generator z.
#[derive(Debug, Clone)]
pub struct QuadraticSubfields {
    pub generators: Vec<AlgebraElem>,
    /// Whether the list is known to be every such subfield.
    pub complete: bool,
}

impl Algebra {
    fn tower_params(&self) -> Result<(Scalar, Scalar, Scalar, Scalar, Scalar)> {
        match self.spec() {
            AlgebraSpec::Tower { c1, c0, d1, a0, a1 } => Ok((c1.clone(), c0.clone(), d1.clone(), a0.clone(), a1.clone())),
            _ => Err(Error::Invalid("operation needs a commutative tower".into())),
        }
    }

    /// All k-automorphisms of the tower, identity first.
    pub fn galois_group(&self) -> Result<Vec<Matrix<Scalar>>> {
        let (c1, c0, d1, a0, a1) = self.tower_params()?;
        let k = self.field().clone();
        let from = |s: &Scalar| self.from_scalar(s);
        let x_images: Vec<AlgebraElem> = if k.is_finite() || k.characteristic() != 2 {
            quadratic_roots(self, &from(&c1), &from(&c0))?
        } else if c1.is_zero() {
            vec![self.x()]
        } else {
            vec![self.x(), self.x().add(&from(&c1))]
        };
        let mut out: Vec<Matrix<Scalar>> = Vec::new();
        for sx in &x_images {
            let rhs = from(&a0).add(&sx.scale(&a1));
            let y_images = if k.is_finite() || k.characteristic() != 2 {
                quadratic_roots(self, &from(&d1), &rhs)?
            } else if d1.is_zero() && a1.is_zero() {
                vec![self.y()]
            } else if d1.is_zero() && c1.is_zero() {
                // purely inseparable: square roots are unique
                vec![self.y()]
            } else {
                return Err(Error::UnsupportedField("automorphisms of this characteristic 2 tower".into()));
            };
            for sy in &y_images {
                if let Some(m) = endomorphism_matrix(self, sx, sy) {
                    if !out.contains(&m) {
                        out.push(m);
                    }
                }
            }
        }
        let id = Matrix::identity(4, &k.zero());
        if let Some(pos) = out.iter().position(|m| *m == id) {
            out.swap(0, pos);
        }
        Ok(out)
    }

    /// A primitive element of K over k, or `None` when there is none.
    pub fn primitive_element(&self) -> Result<Option<AlgebraElem>> {
        let (c1, _, d1, _, a1) = self.tower_params()?;
        let k = self.field().clone();
        if k.characteristic() == 2 && c1.is_zero() && d1.is_zero() && a1.is_zero() && !k.is_finite() {
            return Ok(None);
        }
        let mut candidates = vec![self.y(), self.x()];
        let lambdas: Vec<Scalar> = match k.elements() {
            Ok(ks) => ks.into_iter().filter(|s| !s.is_zero()).collect(),
            Err(_) => (1..=5).map(|i| k.from_int(i)).collect(),
        };
        for l in &lambdas {
            candidates.push(self.x().add(&self.y().scale(l)));
        }
        if let Some(z) = candidates.into_iter().find(|z| self.degree_of(z) == 4) {
            return Ok(Some(z));
        }
        if k.is_finite() {
            return Ok(self.elements()?.into_iter().find(|z| self.degree_of(z) == 4));
        }
        Ok(None)
    }

    /// Degree-two intermediate fields.
    pub fn intermediate_quadratic_fields(&self) -> Result<QuadraticSubfields> {
        let (c1, _, d1, _, a1) = self.tower_params()?;
        let k = self.field().clone();
        let zero = k.zero();
        let mut gens: Vec<AlgebraElem> = Vec::new();
        let push = |z: AlgebraElem, gens: &mut Vec<AlgebraElem>| {
            if self.in_base(&z) || self.degree_of(&z) != 2 {
                return;
            }
            let dup = gens.iter().any(|g| {
                let m = Matrix::from_rows(vec![self.one().coords().to_vec(), g.coords().to_vec(), z.coords().to_vec()], &zero);
                m.rank() == 2
            });
            if !dup {
                gens.push(z);
            }
        };
        if k.is_finite() {
            for z in self.elements()? {
                push(z, &mut gens);
            }
            return Ok(QuadraticSubfields { generators: gens, complete: true });
        }
        push(self.x(), &mut gens);
        if k.characteristic() != 2 {
            let nz = normalized(self)?;
            let a = nz.delta.coords()[0].clone() + nz.delta.coords()[1].clone() * c1.div(&k.from_int(2))?;
            let b = nz.delta.coords()[1].clone();
            let d = nz.d.coords()[0].clone();
            if b.is_zero() {
                push(nz.ys.clone(), &mut gens);
                push(nz.xs.mul(&nz.ys), &mut gens);
            } else if let Some(n) = k.sqrt(&(&a * &a - &(&d * &(&b * &b))))? {
                for sign in [n.clone(), -&n] {
                    let t = (-&a + sign).div(&b)?;
                    push(self.from_scalar(&t).add(&nz.xs).mul(&nz.ys), &mut gens);
                }
            }
            return Ok(QuadraticSubfields { generators: gens, complete: true });
        }
        let simple_inseparable = c1.is_zero() && d1.is_zero() && !a1.is_zero();
        for z in [self.y(), self.x().mul(&self.y()), self.x().add(&self.y())] {
            push(z, &mut gens);
        }
        Ok(QuadraticSubfields { generators: gens, complete: simple_inseparable })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn tower(k: &Field, c0: &str, a0: &str, a1: &str) -> Algebra {
        let spec = AlgebraSpec::Tower {
            c1: k.zero(),
            c0: k.parse(c0).unwrap(),
            d1: k.zero(),
            a0: k.parse(a0).unwrap(),
            a1: k.parse(a1).unwrap(),
        };
        Algebra::new(k, spec).unwrap()
    }

    #[test]
    fn biquadratic_rationals_klein_four() {
        let q = Field::rationals();
        let alg = tower(&q, "3", "2", "0");
        let g = alg.galois_group().unwrap();
        assert_eq!(g.len(), 4);
        // every non-identity element has order 2
        for m in &g[1..] {
            assert_eq!(m.mul(m), Matrix::identity(4, &q.zero()));
        }
        let sub = alg.intermediate_quadratic_fields().unwrap();
        assert_eq!(sub.generators.len(), 3);
        assert!(sub.complete);
        let z = alg.primitive_element().unwrap().unwrap();
        assert_eq!(alg.degree_of(&z), 4);
    }

    #[test]
    fn fourth_root_of_two() {
        let q = Field::rationals();
        let alg = tower(&q, "2", "0", "1");
        let sub = alg.intermediate_quadratic_fields().unwrap();
        assert_eq!(sub.generators.len(), 1);
        assert_eq!(sub.generators[0], alg.x());
        // only x -> x, y -> +-y survive
        assert_eq!(alg.galois_group().unwrap().len(), 2);
    }

    #[test]
    fn f81_frobenius() {
        let k = Field::prime(3).unwrap();
        let alg = tower(&k, "2", "1", "1");
        let g = alg.galois_group().unwrap();
        assert_eq!(g.len(), 4);
        let frob = g.iter().find(|m| {
            let m2 = m.mul(m);
            m2 != Matrix::identity(4, &k.zero())
        });
        assert!(frob.is_some(), "cyclic of order 4 has an element of order 4");
        let sub = alg.intermediate_quadratic_fields().unwrap();
        assert_eq!(sub.generators.len(), 1);
    }

    #[test]
    fn purely_inseparable_cases() {
        let k = Field::ratfunc(2, &["u", "v"], 2).unwrap();
        let alg = tower(&k, "u^2", "v^2", "0");
        assert_eq!(alg.galois_group().unwrap().len(), 1);
        assert_eq!(alg.primitive_element().unwrap(), None);
        let k = Field::ratfunc(2, &["u"], 4).unwrap();
        let alg = tower(&k, "u^4", "0", "1");
        assert_eq!(alg.primitive_element().unwrap(), Some(alg.y()));
    }
}
