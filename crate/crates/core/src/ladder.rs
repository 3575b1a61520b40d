//! The preprojective ladder P₁ → P₂ → … of defect −1 and the three
//! morphisms X, Y, Z: Pₙ → Pₙ₊₁ for the three supported algebra shapes.

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraElem, AlgebraSpec};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::presentation::{NcPoly, Presentation};
use crate::rep::{cokernel, end_ring, find_isomorphism, hom_dim, Morphism, Rep};

/// The algebra shapes that carry an explicit ladder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LadderVariant {
    /// Commutative tower x² = c0, y² = a0 + a1·x.
    CommExt { c0: Scalar, a0: Scalar, a1: Scalar },
    /// Quaternions x² = c0, y² = a0, yx = −xy.
    SkewExt { c0: Scalar, a0: Scalar },
    /// Characteristic 2: x² = c0 + x, y² = a0, xy = y + yx.
    QuatChar2 { c0: Scalar, a0: Scalar },
}

impl LadderVariant {
    pub fn from_algebra(alg: &Algebra) -> Result<LadderVariant> {
        match alg.spec() {
            AlgebraSpec::Tower { c1, c0, d1, a0, a1 } => {
                if !c1.is_zero() || !d1.is_zero() {
                    return Err(Error::UnsupportedShape("ladder needs a tower with x^2 = c0 and y^2 = a0 + a1*x".into()));
                }
                Ok(LadderVariant::CommExt { c0: c0.clone(), a0: a0.clone(), a1: a1.clone() })
            }
            AlgebraSpec::QuaternionOdd { a, b } => Ok(LadderVariant::SkewExt { c0: a.clone(), a0: b.clone() }),
            AlgebraSpec::QuaternionChar2 { c0, a0 } => {
                if a0.is_zero() {
                    return Err(Error::UnsupportedShape("char 2 quaternions need a0 != 0".into()));
                }
                Ok(LadderVariant::QuatChar2 { c0: c0.clone(), a0: a0.clone() })
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LadderVariant::CommExt { .. } => "CommExt",
            LadderVariant::SkewExt { .. } => "SkewExt",
            LadderVariant::QuatChar2 { .. } => "QuatChar2",
        }
    }

    pub fn c0(&self) -> &Scalar {
        match self {
            LadderVariant::CommExt { c0, .. } | LadderVariant::SkewExt { c0, .. } | LadderVariant::QuatChar2 { c0, .. } => c0,
        }
    }

    pub fn a0(&self) -> &Scalar {
        match self {
            LadderVariant::CommExt { a0, .. } | LadderVariant::SkewExt { a0, .. } | LadderVariant::QuatChar2 { a0, .. } => a0,
        }
    }

    /// a1 for the commutative tower, zero otherwise.
    pub fn a1(&self) -> Scalar {
        match self {
            LadderVariant::CommExt { a1, .. } => a1.clone(),
            _ => self.c0().zero_like(),
        }
    }
}

/// Pₙ: n × (2n−1), identity on the left, then columns with x over y.
pub fn build_p(alg: &Algebra, n: usize) -> Result<Rep> {
    if n == 0 {
        return Err(Error::Invalid("ladder index starts at 1".into()));
    }
    LadderVariant::from_algebra(alg)?;
    let mut c = Matrix::zeros(n, 2 * n - 1, &alg.zero());
    for i in 0..n {
        c.set(i, i, alg.one());
    }
    for j in 0..n - 1 {
        c.set(j, n + j, alg.x());
        c.set(j + 1, n + j, alg.y());
    }
    Ok(Rep::new(c))
}

/// The morphisms (X, Y, Z): Pₙ → Pₙ₊₁.
pub fn build_xyz(alg: &Algebra, n: usize) -> Result<[Morphism; 3]> {
    if n == 0 {
        return Err(Error::Invalid("ladder index starts at 1".into()));
    }
    let variant = LadderVariant::from_algebra(alg)?;
    let k = alg.field();
    let (rows, cols) = (2 * n + 1, 2 * n - 1);
    let one = k.one();

    let mut xa = Matrix::zeros(rows, cols, &k.zero());
    let mut ya = xa.clone();
    for i in 0..n {
        xa.set(i + 1, i, one.clone());
        ya.set(i, i, one.clone());
    }
    for j in 0..n - 1 {
        xa.set(n + 2 + j, n + j, one.clone());
        ya.set(n + 1 + j, n + j, one.clone());
    }
    let shift = |down: usize| Matrix::from_fn(n + 1, n, &alg.zero(), |i, j| if i == j + down { alg.one() } else { alg.zero() });
    let x = Morphism { a: xa, b: shift(1) };
    let y = Morphism { a: ya, b: shift(0) };

    // Z: signs alternate ending in +1; the commutative tower picks up a1-corrections
    let (c0, a0, a1) = (variant.c0().clone(), variant.a0().clone(), variant.a1());
    let alternating = matches!(variant, LadderVariant::CommExt { .. });
    let sign = |j: usize| if alternating && (n - 1 - j) % 2 == 1 { -&one } else { one.clone() };
    let correction = |j: usize| if alternating && (n - 1 - j) % 2 == 1 { -&a1 } else { k.zero() };

    let mut za = Matrix::zeros(rows, cols, &k.zero());
    let mut zb = Matrix::zeros(n + 1, n, &alg.zero());
    for j in 0..n {
        let s = alg.from_scalar(&sign(j));
        zb.set(j, j, s.mul(&alg.x()));
        zb.set(j + 1, j, s.mul(&alg.y()));
        za.set(n + 1 + j, j, sign(j));
        if j + 2 <= n {
            zb.set(j + 2, j, alg.from_scalar(&correction(j)));
            za.set(j + 2, j, correction(j));
        }
    }
    for j in 0..n - 1 {
        za.add_at(j, n + j, &(&sign(j) * &c0));
        za.add_at(j + 2, n + j, &(&sign(j + 1) * &a0));
        if n + 3 + j < rows {
            za.add_at(n + 3 + j, n + j, &correction(j + 1));
        }
        if matches!(variant, LadderVariant::QuatChar2 { .. }) {
            za.add_at(n + 1 + j, n + j, &one);
        }
    }
    let z = Morphism { a: za, b: zb };
    Ok([x, y, z])
}

/// Cached ladder up to some index.
#[derive(Debug, Clone)]
pub struct Ladder {
    alg: Algebra,
    variant: LadderVariant,
    /// `reps[i]` is Pᵢ₊₁.
    reps: Vec<Rep>,
    /// `gens[i]` are the morphisms Pᵢ₊₁ → Pᵢ₊₂.
    gens: Vec<[Morphism; 3]>,
}

impl Ladder {
    pub fn new(alg: &Algebra) -> Result<Ladder> {
        let variant = LadderVariant::from_algebra(alg)?;
        Ok(Ladder { alg: alg.clone(), variant, reps: vec![build_p(alg, 1)?], gens: vec![] })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn variant(&self) -> &LadderVariant {
        &self.variant
    }

    /// Make sure Pₙ and the generators out of Pₙ₋₁ are available.
    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.reps.len() < n {
            let next = self.reps.len() + 1;
            let p = build_p(&self.alg, next)?;
            let gens = build_xyz(&self.alg, next - 1)?;
            for (g, name) in gens.iter().zip(["X", "Y", "Z"]) {
                if !g.is_valid(&self.reps[next - 2], &p) {
                    return Err(Error::ExactnessFailure(format!("{name}_{} is not a morphism", next - 1)));
                }
            }
            self.reps.push(p);
            self.gens.push(gens);
        }
        Ok(())
    }

    pub fn p(&mut self, n: usize) -> Result<&Rep> {
        self.extend_to(n)?;
        Ok(&self.reps[n - 1])
    }

    /// Generator `g` (0 = X, 1 = Y, 2 = Z) out of Pₙ.
    pub fn generator(&mut self, g: usize, n: usize) -> Result<&Morphism> {
        self.extend_to(n + 1)?;
        Ok(&self.gens[n - 1][g])
    }

    /// A word w₀w₁…w_{t−1} read as the composite Pₙ → Pₙ₊ₜ with the last letter applied first.
    pub fn monomial(&mut self, word: &[u8], n: usize) -> Result<Morphism> {
        self.extend_to(n + word.len())?;
        if word.is_empty() {
            return Ok(self.reps[n - 1].identity());
        }
        let t = word.len();
        let mut acc = self.gens[n - 1][word[t - 1] as usize].clone();
        for (step, &g) in word[..t - 1].iter().rev().enumerate() {
            acc = self.gens[n + step][g as usize].compose(&acc);
        }
        Ok(acc)
    }

    /// Value of a homogeneous noncommutative polynomial on the ladder at Pₙ.
    pub fn evaluate(&mut self, poly: &NcPoly, n: usize) -> Result<Morphism> {
        let degree = poly.degree().unwrap_or(0);
        self.extend_to(n + degree)?;
        let k = self.alg.field();
        let src = self.reps[n - 1].clone();
        let tgt = self.reps[n - 1 + degree].clone();
        let mut acc = Morphism { a: Matrix::zeros(tgt.m, src.m, &k.zero()), b: Matrix::zeros(tgt.n, src.n, &self.alg.zero()) };
        for (word, c) in poly.terms() {
            if word.len() != degree {
                return Err(Error::Invalid("relation is not homogeneous".into()));
            }
            acc = acc.add(&self.monomial(word, n)?.scale(c));
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactnessReport {
    pub n: usize,
    /// k-dimensions of the kernel of Xₙ on the two components.
    pub kernel_dims: (usize, usize),
    pub cokernel_dims: (usize, usize),
    pub cokernel_is_simple_x: bool,
    pub exact: bool,
}

/// 0 → Pₙ → Pₙ₊₁ → Sₓ → 0 with the first map Xₙ.
pub fn verify_universal_extension(ladder: &mut Ladder, n: usize) -> Result<ExactnessReport> {
    let alg = ladder.algebra().clone();
    let src = ladder.p(n)?.clone();
    let tgt = ladder.p(n + 1)?.clone();
    let x = ladder.generator(0, n)?.clone();
    let kernel_dims = x.kernel_dims(&alg);
    let coker = cokernel(&x, &tgt)?;
    let simple = Rep::simple_regular(&alg.x())?;
    let iso = find_isomorphism(&coker.rep, &simple).is_some();
    let bookkeeping = tgt.m == src.m + coker.rep.m && tgt.n == src.n + coker.rep.n;
    let report = ExactnessReport {
        n,
        kernel_dims,
        cokernel_dims: coker.rep.dim_pair(),
        cokernel_is_simple_x: iso,
        exact: kernel_dims == (0, 0) && iso && bookkeeping,
    };
    if !report.exact {
        return Err(Error::ExactnessFailure(format!("n = {n}: kernel {kernel_dims:?}, cokernel {:?}", report.cokernel_dims)));
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderLevel {
    pub n: usize,
    pub morphisms_valid: bool,
    pub relations: Vec<RelationCheck>,
    pub exact: bool,
    pub end_dim: usize,
    pub hom_next_dim: usize,
    pub generators_independent: bool,
}

impl LadderLevel {
    pub fn passed(&self) -> bool {
        self.morphisms_valid
            && self.exact
            && self.end_dim == 1
            && self.hom_next_dim == 3
            && self.generators_independent
            && self.relations.iter().all(|r| r.holds)
    }
}

/// Full contract at every level 1..=max_n: morphisms, relations, exactness,
/// End(Pₙ) = k and Hom(Pₙ, Pₙ₊₁) spanned by X, Y, Z.
pub fn verify_ladder(alg: &Algebra, pres: &Presentation, max_n: usize) -> Result<Vec<LadderLevel>> {
    let mut ladder = Ladder::new(alg)?;
    ladder.extend_to(max_n + 2)?;
    let mut out = Vec::new();
    for n in 1..=max_n {
        let src = ladder.p(n)?.clone();
        let tgt = ladder.p(n + 1)?.clone();
        let gens: Vec<Morphism> = (0..3).map(|g| ladder.generator(g, n).cloned()).collect::<Result<_>>()?;
        let morphisms_valid = gens.iter().all(|g| g.is_valid(&src, &tgt));
        let mut checks = Vec::new();
        for (r, shown) in pres.relations().iter().zip(pres.relation_strings()) {
            checks.push(RelationCheck { relation: shown.clone(), holds: ladder.evaluate(r, n)?.is_zero() });
        }
        let exact = verify_universal_extension(&mut ladder, n).map(|r| r.exact).unwrap_or(false);
        let end_dim = end_ring(&src)?.dim();
        let hom_next_dim = hom_dim(&src, &tgt);
        let vectors: Vec<Vec<Scalar>> = gens.iter().map(|g| g.to_vector()).collect();
        let generators_independent = crate::matrix::independent(&vectors, &alg.field().zero());
        out.push(LadderLevel { n, morphisms_valid, relations: checks, exact, end_dim, hom_next_dim, generators_independent });
    }
    Ok(out)
}

/// Matrices of Pₙ and (Xₙ, Yₙ, Zₙ) in JSON-friendly form.
#[derive(Debug, Clone, Serialize)]
pub struct LadderDump {
    pub n: usize,
    pub p: crate::rep::RepJson,
    pub generators: Vec<MorphismJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MorphismJson {
    pub name: String,
    pub a: Vec<Vec<String>>,
    pub b: Vec<Vec<[String; 4]>>,
}

impl MorphismJson {
    pub fn new(name: &str, f: &Morphism) -> MorphismJson {
        let elem = |e: &AlgebraElem| e.coords().clone().map(|s| s.to_string());
        MorphismJson {
            name: name.into(),
            a: f.a.to_rows().iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
            b: f.b.to_rows().iter().map(|r| r.iter().map(elem).collect()).collect(),
        }
    }
}

pub fn dump(alg: &Algebra, n: usize) -> Result<LadderDump> {
    let p = build_p(alg, n)?;
    let gens = build_xyz(alg, n)?;
    Ok(LadderDump {
        n,
        p: p.to_json(),
        generators: gens.iter().zip(["X", "Y", "Z"]).map(|(g, name)| MorphismJson::new(name, g)).collect(),
    })
}
