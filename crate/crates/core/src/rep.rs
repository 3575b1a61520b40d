//! Representations k^m ⊗ F → F^n of the bimodule ₖF_F and their morphisms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, AlgebraElem};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{span_dim, Matrix};

/// Structure matrix `c` (n × m over F): `v ⊗ f ↦ c·v·f`.
#[derive(Clone, PartialEq, Debug)]
pub struct Rep {
    pub m: usize,
    pub n: usize,
    pub c: Matrix<AlgebraElem>,
}

/// A pair `(a, b)` with `b·c = c'·a`; `a` over k, `b` over F.
#[derive(Clone, PartialEq, Debug)]
pub struct Morphism {
    pub a: Matrix<Scalar>,
    pub b: Matrix<AlgebraElem>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RepJson {
    pub m: usize,
    pub n: usize,
    /// Row-major entries, each as coordinates in the basis (1, x, y, xy).
    pub c: Vec<Vec<[String; 4]>>,
}

pub(crate) fn embed(alg: &Algebra, a: &Matrix<Scalar>) -> Matrix<AlgebraElem> {
    a.map(&alg.zero(), |s| alg.from_scalar(s))
}

/// k-matrix of `v ↦ b·v` on F^n (blocks of 4 coordinates).
pub fn expand_left(alg: &Algebra, b: &Matrix<AlgebraElem>) -> Matrix<Scalar> {
    let k = alg.field();
    let mut out = Matrix::zeros(4 * b.rows(), 4 * b.cols(), &k.zero());
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            let lm = alg.left_mult_matrix(b.get(i, j));
            for r in 0..4 {
                for s in 0..4 {
                    out.set(4 * i + r, 4 * j + s, lm.get(r, s).clone());
                }
            }
        }
    }
    out
}

/// Flatten a matrix over F into k-coordinates, row-major.
fn flatten(b: &Matrix<AlgebraElem>) -> Vec<Scalar> {
    b.entries().iter().flat_map(|e| e.coords().iter().cloned()).collect()
}

impl Rep {
    pub fn new(c: Matrix<AlgebraElem>) -> Rep {
        Rep { m: c.cols(), n: c.rows(), c }
    }

    pub fn zero(alg: &Algebra) -> Rep {
        Rep { m: 0, n: 0, c: Matrix::zeros(0, 0, &alg.zero()) }
    }

    pub fn algebra(&self) -> Algebra {
        self.c.zero_elem().algebra().clone()
    }

    /// The structure sheaf: k ⊗ F → F, the identity.
    pub fn structure_sheaf(alg: &Algebra) -> Rep {
        Rep::new(Matrix::identity(1, &alg.zero()))
    }

    /// `(1, λ): k^2 ⊗ F → F`.
    pub fn simple_regular(lambda: &AlgebraElem) -> Result<Rep> {
        let alg = lambda.algebra();
        if alg.in_base(lambda) {
            return Err(Error::ElementInBase);
        }
        Ok(Rep::new(Matrix::from_rows(vec![vec![alg.one(), lambda.clone()]], &alg.zero())))
    }

    pub fn dim_pair(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// Defect m - 2n (−1 on the structure sheaf, 0 on regular simples).
    pub fn defect(&self) -> i64 {
        self.m as i64 - 2 * self.n as i64
    }

    pub fn rank(&self) -> i64 {
        2 * self.n as i64 - self.m as i64
    }

    pub fn identity(&self) -> Morphism {
        let alg = self.algebra();
        Morphism { a: Matrix::identity(self.m, &alg.field().zero()), b: Matrix::identity(self.n, &alg.zero()) }
    }

    pub fn to_json(&self) -> RepJson {
        RepJson {
            m: self.m,
            n: self.n,
            c: self
                .c
                .to_rows()
                .iter()
                .map(|row| row.iter().map(|e| e.coords().clone().map(|s| s.to_string())).collect())
                .collect(),
        }
    }
}

/// Euler form on dimension pairs.
pub fn euler_form(u: (usize, usize), v: (usize, usize)) -> i64 {
    let (m, n) = (u.0 as i64, u.1 as i64);
    let (m2, n2) = (v.0 as i64, v.1 as i64);
    m * m2 + 4 * n * n2 - 4 * m * n2
}

impl Morphism {
    pub fn is_valid(&self, src: &Rep, tgt: &Rep) -> bool {
        let alg = src.algebra();
        self.a.rows() == tgt.m
            && self.a.cols() == src.m
            && self.b.rows() == tgt.n
            && self.b.cols() == src.n
            && self.b.mul(&src.c) == tgt.c.mul(&embed(&alg, &self.a))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        Morphism { a: self.a.mul(&other.a), b: self.b.mul(&other.b) }
    }

    pub fn add(&self, o: &Morphism) -> Morphism {
        Morphism { a: self.a.add(&o.a), b: self.b.add(&o.b) }
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        let alg = self.b.zero_elem().algebra().clone();
        Morphism { a: self.a.scale_left(c), b: self.b.scale_left(&alg.from_scalar(c)) }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Coordinates: entries of `a`, then the coordinates of the entries of `b`.
    pub fn to_vector(&self) -> Vec<Scalar> {
        let mut v: Vec<Scalar> = self.a.entries().to_vec();
        v.extend(flatten(&self.b));
        v
    }

    fn from_vector(v: &[Scalar], src: &Rep, tgt: &Rep, alg: &Algebra) -> Morphism {
        let k = alg.field();
        let na = tgt.m * src.m;
        let a = Matrix::from_fn(tgt.m, src.m, &k.zero(), |i, j| v[i * src.m + j].clone());
        let b = Matrix::from_fn(tgt.n, src.n, &alg.zero(), |i, j| {
            let o = na + 4 * (i * src.n + j);
            alg.from_vec(&v[o..o + 4])
        });
        Morphism { a, b }
    }

    /// Injective on both components.
    pub fn is_mono(&self, alg: &Algebra) -> bool {
        self.a.rank() == self.a.cols() && expand_left(alg, &self.b).rank() == 4 * self.b.cols()
    }

    pub fn is_iso(&self, alg: &Algebra) -> bool {
        self.a.is_invertible() && expand_left(alg, &self.b).is_invertible()
    }

    /// Dimensions over k of the kernels of `a` and `b`.
    pub fn kernel_dims(&self, alg: &Algebra) -> (usize, usize) {
        (self.a.cols() - self.a.rank(), 4 * self.b.cols() - expand_left(alg, &self.b).rank())
    }
}

/// Linear system (over k) whose kernel is Hom(src, tgt).
fn hom_system(src: &Rep, tgt: &Rep, alg: &Algebra) -> Matrix<Scalar> {
    let k = alg.field();
    let na = tgt.m * src.m;
    let nb = 4 * tgt.n * src.n;
    let rows = 4 * tgt.n * src.m;
    let mut sys = Matrix::zeros(rows, na + nb, &k.zero());
    // (b c)_{ij} - (c' a)_{ij} = 0 for i < tgt.n, j < src.m
    let right: Vec<Matrix<Scalar>> = src.c.entries().iter().map(|e| alg.right_mult_matrix(e)).collect();
    for i in 0..tgt.n {
        for j in 0..src.m {
            let row0 = 4 * (i * src.m + j);
            for l in 0..src.n {
                let rm = &right[l * src.m + j];
                let col0 = na + 4 * (i * src.n + l);
                for r in 0..4 {
                    for s in 0..4 {
                        let v = rm.get(r, s);
                        if !v.is_zero() {
                            sys.set(row0 + r, col0 + s, v.clone());
                        }
                    }
                }
            }
            for l in 0..tgt.m {
                let cc = tgt.c.get(i, l).coords();
                for r in 0..4 {
                    if !cc[r].is_zero() {
                        sys.set(row0 + r, l * src.m + j, -&cc[r]);
                    }
                }
            }
        }
    }
    sys
}

/// A k-basis of Hom(src, tgt).
pub fn hom_basis(src: &Rep, tgt: &Rep) -> Vec<Morphism> {
    let alg = src.algebra();
    if (src.m == 0 && src.n == 0) || (tgt.m == 0 && tgt.n == 0) {
        return vec![];
    }
    hom_system(src, tgt, &alg).kernel().iter().map(|v| Morphism::from_vector(v, src, tgt, &alg)).collect()
}

pub fn hom_dim(src: &Rep, tgt: &Rep) -> usize {
    if (src.m == 0 && src.n == 0) || (tgt.m == 0 && tgt.n == 0) {
        return 0;
    }
    let sys = hom_system(src, tgt, &src.algebra());
    sys.cols() - sys.rank()
}

/// Coordinates of `f` in a basis of morphisms, if it lies in their span.
pub fn coordinates_in(basis: &[Morphism], f: &Morphism) -> Option<Vec<Scalar>> {
    let zero = f.a.zero_elem().clone();
    if basis.is_empty() {
        return f.is_zero().then(Vec::new);
    }
    let cols: Vec<Vec<Scalar>> = basis.iter().map(|g| g.to_vector()).collect();
    let m = Matrix::from_fn(cols[0].len(), cols.len(), &zero, |i, j| cols[j][i].clone());
    m.solve(&f.to_vector()).ok()
}

pub fn linear_combination(basis: &[Morphism], coeffs: &[Scalar]) -> Morphism {
    let mut it = basis.iter().zip(coeffs);
    let (g0, c0) = it.next().expect("nonempty basis");
    it.fold(g0.scale(c0), |acc, (g, c)| acc.add(&g.scale(c)))
}

/// Greedy generators of a k-subspace of F^n (coordinates in blocks of 4)
/// that is closed under the F-action on the given side, as a free module.
fn free_generators(alg: &Algebra, n: usize, space: &[Vec<Scalar>], right_action: bool) -> Result<Vec<Vec<AlgebraElem>>> {
    let k = alg.field();
    let zero = k.zero();
    let target = span_dim(space, &zero);
    if !target.is_multiple_of(4) {
        return Err(Error::UnsupportedShape("submodule dimension is not a multiple of 4".into()));
    }
    let to_elems = |v: &[Scalar]| -> Vec<AlgebraElem> { (0..n).map(|i| alg.from_vec(&v[4 * i..4 * i + 4])).collect() };
    let orbit = |w: &[AlgebraElem]| -> Vec<Vec<Scalar>> {
        alg.basis()
            .iter()
            .map(|e| w.iter().flat_map(|x| if right_action { x.mul(e) } else { e.mul(x) }.coords().clone()).collect())
            .collect()
    };
    let mut gens: Vec<Vec<AlgebraElem>> = Vec::new();
    let mut spanned: Vec<Vec<Scalar>> = Vec::new();
    let mut candidates: Vec<Vec<Scalar>> = space.to_vec();
    for i in 0..space.len() {
        for j in i + 1..space.len() {
            candidates.push(space[i].iter().zip(&space[j]).map(|(a, b)| a + b).collect());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..64 {
        let combo = space.iter().fold(vec![zero.clone(); 4 * n], |acc, v| {
            let c = k.random(&mut rng);
            acc.iter().zip(v).map(|(a, b)| a + &(&c * b)).collect()
        });
        candidates.push(combo);
    }
    let mut current = 0;
    for cand in candidates {
        if current == target {
            break;
        }
        let w = to_elems(&cand);
        let mut trial = spanned.clone();
        trial.extend(orbit(&w));
        let d = span_dim(&trial, &zero);
        if d == current + 4 {
            spanned = trial;
            current = d;
            gens.push(w);
        }
    }
    if current != target {
        return Err(Error::UnsupportedShape("module is not free over F".into()));
    }
    Ok(gens)
}

/// Solve `lhs · x = rhs` for `x` over F (unique solution expected).
pub(crate) fn solve_left_factor(
    alg: &Algebra,
    lhs: &Matrix<AlgebraElem>,
    rhs: &Matrix<AlgebraElem>,
) -> Result<Matrix<AlgebraElem>> {
    let big = expand_left(alg, lhs);
    let cols = rhs.cols();
    let mut out = Matrix::zeros(lhs.cols(), cols, &alg.zero());
    for j in 0..cols {
        let col: Vec<Scalar> = (0..rhs.rows()).flat_map(|i| rhs.get(i, j).coords().clone()).collect();
        let sol = big.solve(&col)?;
        for i in 0..lhs.cols() {
            out.set(i, j, alg.from_vec(&sol[4 * i..4 * i + 4]));
        }
    }
    Ok(out)
}

pub struct Cokernel {
    pub rep: Rep,
    /// target of the morphism → cokernel
    pub projection: Morphism,
}

pub struct Kernel {
    pub rep: Rep,
    /// kernel → source of the morphism
    pub inclusion: Morphism,
}

/// A surjection `r` (over F) with kernel exactly the column space of `b`.
pub(crate) fn left_cokernel(alg: &Algebra, b: &Matrix<AlgebraElem>) -> Result<Matrix<AlgebraElem>> {
    let k = alg.field();
    let n = b.rows();
    // rows r over F with r·b = 0, a left F-module; linear in r via right multiplication
    let mut sys = Matrix::zeros(4 * b.cols(), 4 * n, &k.zero());
    for j in 0..b.cols() {
        for i in 0..n {
            let rm = alg.right_mult_matrix(b.get(i, j));
            for r in 0..4 {
                for s in 0..4 {
                    sys.set(4 * j + r, 4 * i + s, rm.get(r, s).clone());
                }
            }
        }
    }
    let gens = free_generators(alg, n, &sys.kernel(), false)?;
    let proj = if gens.is_empty() { Matrix::zeros(0, n, &alg.zero()) } else { Matrix::from_rows(gens, &alg.zero()) };
    let image_dim = expand_left(alg, b).rank();
    let kernel_dim = 4 * n - expand_left(alg, &proj).rank();
    if image_dim != kernel_dim {
        return Err(Error::UnsupportedShape("cokernel over F is not free".into()));
    }
    Ok(proj)
}

/// Cokernel of `f: src → tgt`.
pub fn cokernel(f: &Morphism, tgt: &Rep) -> Result<Cokernel> {
    let alg = tgt.algebra();
    let (qk, section) = f.a.cokernel_projection();
    let proj_b = left_cokernel(&alg, &f.b)?;
    let nn = proj_b.rows();
    // exactness: kernel of the projection is the image of b
    let c = proj_b.mul(&tgt.c).mul(&embed(&alg, &section));
    let rep = Rep { m: qk.rows(), n: nn, c };
    Ok(Cokernel { rep, projection: Morphism { a: qk, b: proj_b } })
}

/// Kernel of `f: src → tgt`.
pub fn kernel(f: &Morphism, src: &Rep) -> Result<Kernel> {
    let alg = src.algebra();
    let k = alg.field();
    let ka = f.a.kernel();
    let inc_a = if ka.is_empty() {
        Matrix::zeros(src.m, 0, &k.zero())
    } else {
        Matrix::from_fn(src.m, ka.len(), &k.zero(), |i, j| ka[j][i].clone())
    };
    let kb = expand_left(&alg, &f.b).kernel();
    let gens = free_generators(&alg, src.n, &kb, true)?;
    let inc_b = if gens.is_empty() {
        Matrix::zeros(src.n, 0, &alg.zero())
    } else {
        Matrix::from_fn(src.n, gens.len(), &alg.zero(), |i, j| gens[j][i].clone())
    };
    let rhs = src.c.mul(&embed(&alg, &inc_a));
    let c = if gens.is_empty() || ka.is_empty() {
        Matrix::zeros(gens.len(), ka.len(), &alg.zero())
    } else {
        solve_left_factor(&alg, &inc_b, &rhs)?
    };
    Ok(Kernel { rep: Rep { m: ka.len(), n: gens.len(), c }, inclusion: Morphism { a: inc_a, b: inc_b } })
}

/// An isomorphism src → tgt if one is found among the hom basis and
/// seeded random combinations of it.
pub fn find_isomorphism(src: &Rep, tgt: &Rep) -> Option<Morphism> {
    if src.dim_pair() != tgt.dim_pair() {
        return None;
    }
    let alg = src.algebra();
    if src.m == 0 && src.n == 0 {
        return Some(src.identity());
    }
    let basis = hom_basis(src, tgt);
    if basis.is_empty() {
        return None;
    }
    if let Some(f) = basis.iter().find(|f| f.is_iso(&alg)) {
        return Some(f.clone());
    }
    let k = alg.field();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let coeffs: Vec<Scalar> = basis.iter().map(|_| k.random(&mut rng)).collect();
        let f = linear_combination(&basis, &coeffs);
        if f.is_iso(&alg) {
            return Some(f);
        }
    }
    None
}

/// Endomorphism ring with structure constants in a hom basis.
#[derive(Debug, Clone)]
pub struct EndRing {
    pub basis: Vec<Morphism>,
    /// `table[i][j]` = coordinates of basis[i] ∘ basis[j]
    pub table: Vec<Vec<Vec<Scalar>>>,
    pub centre_dim: usize,
    pub commutative: bool,
    pub description: String,
}

impl EndRing {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn end_ring(p: &Rep) -> Result<EndRing> {
    let alg = p.algebra();
    let k = alg.field();
    let mut basis = hom_basis(p, p);
    // put the identity first when possible
    let id = p.identity();
    if let Some(coords) = coordinates_in(&basis, &id) {
        if let Some(pivot) = coords.iter().position(|c| !c.is_zero()) {
            basis[pivot] = id.clone();
            basis.swap(0, pivot);
        }
    }
    let d = basis.len();
    let mut table = vec![vec![vec![]; d]; d];
    for i in 0..d {
        for j in 0..d {
            let prod = basis[i].compose(&basis[j]);
            table[i][j] = coordinates_in(&basis, &prod).ok_or_else(|| Error::Invalid("composition left the hom space".into()))?;
        }
    }
    // centre: Σ c_i (t_ij - t_ji) = 0 for all j
    let mut rows = Vec::new();
    for j in 0..d {
        for l in 0..d {
            rows.push((0..d).map(|i| &table[i][j][l] - &table[j][i][l]).collect::<Vec<_>>());
        }
    }
    let centre_dim = if d == 0 { 0 } else { d - Matrix::from_rows(rows, &k.zero()).rank() };
    let commutative = centre_dim == d;
    let description = match d {
        0 => "0".to_string(),
        1 => "k".to_string(),
        2 => {
            // basis[0] = id; basis[1]^2 = s id + t basis[1]
            let sq = &table[1][1];
            format!("k(z) with z^2 = {}*z + {}", sq[1], sq[0])
        }
        _ => format!(
            "{d}-dimensional {}algebra with centre of dimension {centre_dim}",
            if commutative { "commutative " } else { "" }
        ),
    };
    Ok(EndRing { basis, table, centre_dim, commutative, description })
}

/// Index and multiplicity of a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexMultiplicity {
    pub f: usize,
    pub e: usize,
}

/// (f, e) from the simple regular `s` and the structure sheaf `l`, with
/// `epsilon` = 2 for (1,4)-bimodules.
pub fn index_multiplicity(s: &Rep, l: &Rep, epsilon: usize) -> Result<(IndexMultiplicity, EndRing)> {
    let h = hom_dim(l, s);
    let end = end_ring(s)?;
    let de = end.dim();
    if h == 0 || de == 0 || !h.is_multiple_of(epsilon) || !h.is_multiple_of(de) {
        return Err(Error::NonIntegralInvariant(format!("dim Hom(L,S) = {h}, dim End(S) = {de}, epsilon = {epsilon}")));
    }
    Ok((IndexMultiplicity { f: h / epsilon, e: h / de }, end))
}

/// (f, e) of the point whose universal extension has cokernel `q` ≅ S^e,
/// assuming End(S) is commutative (always the case over finite fields).
pub fn index_multiplicity_of_power(q: &Rep, l: &Rep, epsilon: usize) -> Result<(IndexMultiplicity, EndRing)> {
    let end = end_ring(q)?;
    let ratio = end.dim() / end.centre_dim.max(1);
    let e = (1..=ratio).find(|e| e * e == ratio).filter(|_| end.dim() % end.centre_dim.max(1) == 0);
    let Some(e) = e else {
        return Err(Error::NonIntegralInvariant(format!(
            "End of cokernel has dimension {} over a centre of dimension {}",
            end.dim(),
            end.centre_dim
        )));
    };
    let h = hom_dim(l, q);
    if !h.is_multiple_of(epsilon * e) {
        return Err(Error::NonIntegralInvariant(format!("dim Hom(L,Q) = {h} not divisible by {}", epsilon * e)));
    }
    Ok((IndexMultiplicity { f: h / (epsilon * e), e }, end))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::field::Field;

    fn f3_tower() -> Algebra {
        let k = Field::prime(3).unwrap();
        let spec = AlgebraSpec::Tower { c1: k.zero(), c0: k.from_int(2), d1: k.zero(), a0: k.one(), a1: k.one() };
        Algebra::new(&k, spec).unwrap()
    }

    #[test]
    fn structure_sheaf_endomorphisms() {
        let alg = f3_tower();
        let l = Rep::structure_sheaf(&alg);
        let end = end_ring(&l).unwrap();
        assert_eq!(end.dim(), 1);
        assert_eq!(end.description, "k");
        assert_eq!(l.defect(), -1);
    }

    #[test]
    fn simple_regular_from_x() {
        let alg = f3_tower();
        let s = Rep::simple_regular(&alg.x()).unwrap();
        assert_eq!(s.defect(), 0);
        let l = Rep::structure_sheaf(&alg);
        let (fe, end) = index_multiplicity(&s, &l, 2).unwrap();
        assert_eq!(fe, IndexMultiplicity { f: 1, e: 1 });
        assert_eq!(end.dim(), 2);
        assert!(end.commutative);
        assert_eq!(hom_dim(&s, &l), 0);
    }

    #[test]
    fn simple_regular_from_primitive_element() {
        let alg = f3_tower();
        let s = Rep::simple_regular(&alg.y()).unwrap();
        let l = Rep::structure_sheaf(&alg);
        let (fe, end) = index_multiplicity(&s, &l, 2).unwrap();
        assert_eq!(end.dim(), 1);
        assert_eq!(fe, IndexMultiplicity { f: 1, e: 2 });
    }

    #[test]
    fn base_element_rejected() {
        let alg = f3_tower();
        assert_eq!(Rep::simple_regular(&alg.one()).unwrap_err(), Error::ElementInBase);
    }

    #[test]
    fn identity_cokernel_is_zero() {
        let alg = f3_tower();
        let l = Rep::structure_sheaf(&alg);
        let ck = cokernel(&l.identity(), &l).unwrap();
        assert_eq!(ck.rep.dim_pair(), (0, 0));
        let kr = kernel(&l.identity(), &l).unwrap();
        assert_eq!(kr.rep.dim_pair(), (0, 0));
    }

    #[test]
    fn euler_form_values() {
        assert_eq!(euler_form((1, 1), (1, 1)), 1);
        assert_eq!(euler_form((2, 1), (2, 1)), 0);
    }
}
