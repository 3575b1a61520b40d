//! Graded orbit algebras given by generators X, Y, Z and quadratic
//! relations, with a rewriting normal form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::ladder::{Ladder, LadderVariant};
use crate::matrix::{span_dim, Matrix};
use crate::rep::{hom_dim, Morphism};

pub const GENERATOR_NAMES: [&str; 3] = ["X", "Y", "Z"];
const REWRITE_STEP_BOUND: usize = 1_000_000;

/// A word in the generators, ordered by length then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u8>);

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Render a word with powers collapsed: `XY^2Z`.
pub fn format_word(w: &[u8], names: &[&str]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        out.push_str(names[w[i] as usize]);
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}

/// Join `coefficient*monomial` terms into a signed sum.
pub(crate) fn format_sum(terms: &[(Scalar, String)]) -> String {
    format_terms(terms, true)
}

/// Like [`format_sum`], but with `signed = false` a coefficient −1 in F_p is
/// written as its residue p−1.
pub(crate) fn format_terms(terms: &[(Scalar, String)], signed: bool) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (c, mono) in terms {
        let neg = -c;
        let (negative, mag) = if c.is_one() || (signed && neg.is_one()) {
            (neg.is_one() && !c.is_one(), String::new())
        } else {
            let s = c.to_string();
            match s.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, s),
            }
        };
        let mag = if mag.contains(['+', '-']) { format!("({mag})") } else { mag };
        let body = match (mag.is_empty(), mono.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => mono.clone(),
            (false, true) => mag,
            (false, false) => format!("{mag}*{mono}"),
        };
        if out.is_empty() {
            out = if negative { format!("-{body}") } else { body };
        } else {
            out.push_str(if negative { "-" } else { "+" });
            out.push_str(&body);
        }
    }
    out
}

/// Terms in the given order, like terms merged in place of their first occurrence.
pub fn format_ordered(terms: &[(Scalar, Vec<u8>)]) -> String {
    let mut merged: Vec<(Scalar, Vec<u8>)> = Vec::new();
    for (c, w) in terms {
        match merged.iter_mut().find(|(_, v)| v == w) {
            Some(slot) => slot.0 = &slot.0 + c,
            None => merged.push((c.clone(), w.clone())),
        }
    }
    let shown: Vec<(Scalar, String)> =
        merged.into_iter().filter(|(c, _)| !c.is_zero()).map(|(c, w)| (c, format_word(&w, &GENERATOR_NAMES))).collect();
    format_sum(&shown)
}

/// Noncommutative polynomial over k in the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcPoly {
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero(k: &Field) -> NcPoly {
        NcPoly { field: k.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(k: &Field, c: Scalar, word: &[u8]) -> NcPoly {
        let mut p = NcPoly::zero(k);
        p.add_term(word.to_vec(), c);
        p
    }

    pub fn word(k: &Field, word: &[u8]) -> NcPoly {
        NcPoly::monomial(k, k.one(), word)
    }

    /// Sum of `(coefficient, word)` terms.
    pub fn from_terms(k: &Field, terms: &[(Scalar, &[u8])]) -> NcPoly {
        let mut p = NcPoly::zero(k);
        for (c, w) in terms {
            p.add_term(w.to_vec(), c.clone());
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn add_term(&mut self, w: Vec<u8>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = Word(w);
        let v = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Scalar)> {
        self.terms.iter().map(|(w, c)| (&w.0, c))
    }

    pub fn coeff(&self, w: &[u8]) -> Scalar {
        self.terms.get(&Word(w.to_vec())).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of a homogeneous polynomial (`None` for zero or mixed degrees).
    pub fn degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(|w| w.0.len());
        let d = lens.next()?;
        lens.all(|l| l == d).then_some(d)
    }

    pub fn add(&self, o: &NcPoly) -> NcPoly {
        let mut p = self.clone();
        for (w, c) in &o.terms {
            p.add_term(w.0.clone(), c.clone());
        }
        p
    }

    pub fn neg(&self) -> NcPoly {
        self.scale(&-&self.field.one())
    }

    pub fn sub(&self, o: &NcPoly) -> NcPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        let mut p = NcPoly::zero(&self.field);
        for (w, v) in &self.terms {
            p.add_term(w.0.clone(), v * c);
        }
        p
    }

    /// Free product: concatenation of words.
    pub fn concat(&self, o: &NcPoly) -> NcPoly {
        let mut p = NcPoly::zero(&self.field);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.0.clone();
                w.extend(&w2.0);
                p.add_term(w, c1 * c2);
            }
        }
        p
    }

    pub fn format_with(&self, names: &[&str]) -> String {
        format_terms(&self.named_terms(names), true)
    }

    /// Coefficients printed as field elements, without folding −1 into a sign.
    pub fn format_residues(&self) -> String {
        format_terms(&self.named_terms(&GENERATOR_NAMES), !self.field.is_finite())
    }

    fn named_terms(&self, names: &[&str]) -> Vec<(Scalar, String)> {
        self.terms.iter().rev().map(|(w, c)| (c.clone(), format_word(&w.0, names))).collect()
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&GENERATOR_NAMES))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PresentationKind {
    CommExt,
    SkewExt,
    QuatChar2,
}

/// k⟨X, Y, Z⟩ modulo four quadratic relations, with rewrite rules.
#[derive(Debug, Clone)]
pub struct Presentation {
    field: Field,
    kind: PresentationKind,
    variant: LadderVariant,
    relations: Vec<NcPoly>,
    display: Vec<String>,
    ordered: Vec<Vec<(Scalar, Vec<u8>)>>,
    /// leading word → replacement
    rules: Vec<(Vec<u8>, NcPoly)>,
}

const X: u8 = 0;
const Y: u8 = 1;
const Z: u8 = 2;

impl Presentation {
    pub fn for_algebra(alg: &Algebra) -> Result<Presentation> {
        Presentation::for_variant(alg.field(), &LadderVariant::from_algebra(alg)?)
    }

    pub fn for_variant(k: &Field, variant: &LadderVariant) -> Result<Presentation> {
        let one = k.one();
        let m1 = -&one;
        let w = |t: &[(Scalar, &[u8])]| {
            let ordered: Vec<(Scalar, Vec<u8>)> =
                t.iter().filter(|(c, _)| !c.is_zero()).map(|(c, v)| (c.clone(), v.to_vec())).collect();
            (NcPoly::from_terms(k, t), ordered)
        };
        let xy = w(&[(one.clone(), &[X, Y]), (m1.clone(), &[Y, X])]);
        let xz = w(&[(one.clone(), &[X, Z]), (m1.clone(), &[Z, X])]);
        let (c0, a0, a1) = (variant.c0().clone(), variant.a0().clone(), variant.a1());
        let (kind, yz, zz) = match variant {
            LadderVariant::CommExt { .. } => (
                PresentationKind::CommExt,
                w(&[(one.clone(), &[Z, Y]), (one.clone(), &[Y, Z]), (a1.clone(), &[X, X])]),
                w(&[(one.clone(), &[Z, Z]), (c0.clone(), &[Y, Y]), (-&a0, &[X, X])]),
            ),
            LadderVariant::SkewExt { .. } => (
                PresentationKind::SkewExt,
                w(&[(one.clone(), &[Z, Y]), (m1.clone(), &[Y, Z])]),
                w(&[(one.clone(), &[Z, Z]), (-&c0, &[Y, Y]), (-&a0, &[X, X])]),
            ),
            LadderVariant::QuatChar2 { .. } => (
                PresentationKind::QuatChar2,
                w(&[(one.clone(), &[Z, Y]), (m1.clone(), &[Y, Z])]),
                w(&[(one.clone(), &[Z, Z]), (c0.clone(), &[Y, Y]), (a0.clone(), &[X, X]), (one.clone(), &[Y, Z])]),
            ),
        };
        let (relations, ordered): (Vec<NcPoly>, Vec<_>) = [xy, xz, yz, zz].into_iter().unzip();
        let display = ordered.iter().map(|t| format_ordered(t)).collect();
        let rules = relations
            .iter()
            .map(|r| {
                let (lead, c) = r.terms.iter().next_back().expect("nonzero relation");
                let monic = r.scale(&c.inv().expect("nonzero leading coefficient"));
                let rest = monic.sub(&NcPoly::word(k, &lead.0)).neg();
                (lead.0.clone(), rest)
            })
            .collect();
        Ok(Presentation { field: k.clone(), kind, variant: variant.clone(), relations, display, ordered, rules })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn kind(&self) -> PresentationKind {
        self.kind
    }

    pub fn variant(&self) -> &LadderVariant {
        &self.variant
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    /// Relations written in the customary term order.
    pub fn relation_strings(&self) -> &[String] {
        &self.display
    }

    /// Relation terms in the customary order.
    pub fn relation_terms(&self) -> &[Vec<(Scalar, Vec<u8>)>] {
        &self.ordered
    }

    pub fn rules(&self) -> &[(Vec<u8>, NcPoly)] {
        &self.rules
    }

    pub fn generator(&self, g: u8) -> NcPoly {
        NcPoly::word(&self.field, &[g])
    }

    fn find_rule(&self, w: &[u8]) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for (ri, (lhs, _)) in self.rules.iter().enumerate() {
                if w[pos..].starts_with(lhs) {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &[u8]) -> bool {
        self.find_rule(w).is_none()
    }

    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly> {
        let mut done = NcPoly::zero(&self.field);
        let mut todo = p.clone();
        let mut steps = 0;
        while let Some((w, c)) = todo.terms.pop_last() {
            steps += 1;
            if steps > REWRITE_STEP_BOUND {
                return Err(Error::NonTerminating(steps));
            }
            match self.find_rule(&w.0) {
                None => done.add_term(w.0, c),
                Some((pos, ri)) => {
                    let (lhs, rhs) = &self.rules[ri];
                    let prefix = NcPoly::monomial(&self.field, c, &w.0[..pos]);
                    let suffix = NcPoly::word(&self.field, &w.0[pos + lhs.len()..]);
                    todo = todo.add(&prefix.concat(rhs).concat(&suffix));
                }
            }
        }
        Ok(done)
    }

    pub fn multiply(&self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
        self.normal_form(&a.concat(b))
    }

    /// Normal words of length `n`.
    pub fn basis(&self, n: usize) -> Vec<Vec<u8>> {
        let mut layer: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..3u8 {
                    let mut v = w.clone();
                    v.push(g);
                    // only suffixes can create a new reducible subword
                    if self.rules.iter().all(|(lhs, _)| !v.ends_with(lhs)) {
                        next.push(v);
                    }
                }
            }
            layer = next;
        }
        layer
    }

    pub fn dim_degree(&self, n: usize) -> usize {
        self.basis(n).len()
    }

    /// Homogeneous central elements of degree `n`, as a basis of that space.
    pub fn centre_basis(&self, n: usize) -> Result<Vec<NcPoly>> {
        let k = &self.field;
        let src = self.basis(n);
        let tgt = self.basis(n + 1);
        let index: BTreeMap<Word, usize> = tgt.iter().enumerate().map(|(i, w)| (Word(w.clone()), i)).collect();
        let mut sys = Matrix::zeros(3 * tgt.len(), src.len(), &k.zero());
        for (j, w) in src.iter().enumerate() {
            let m = NcPoly::word(k, w);
            for g in 0..3u8 {
                let gen = self.generator(g);
                let comm = self.multiply(&gen, &m)?.sub(&self.multiply(&m, &gen)?);
                for (v, c) in comm.terms() {
                    sys.set(g as usize * tgt.len() + index[&Word(v.clone())], j, c.clone());
                }
            }
        }
        Ok(sys
            .kernel()
            .into_iter()
            .map(|v| {
                let mut p = NcPoly::zero(k);
                for (w, c) in src.iter().zip(v) {
                    p.add_term(w.clone(), c);
                }
                p
            })
            .collect())
    }

    pub fn is_central(&self, p: &NcPoly) -> Result<bool> {
        for g in 0..3u8 {
            let gen = self.generator(g);
            if !self.multiply(&gen, p)?.sub(&self.multiply(p, &gen)?).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The generators commute pairwise, so the whole algebra is commutative.
    pub fn is_commutative(&self) -> Result<bool> {
        for g in 0..3u8 {
            for h in g + 1..3 {
                let (a, b) = (self.generator(g), self.generator(h));
                if !self.multiply(&a, &b)?.sub(&self.multiply(&b, &a)?).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// (p)R = R(p) in degrees up to `max_degree` of the cofactor.
    pub fn is_normal_element(&self, p: &NcPoly, max_degree: usize) -> Result<bool> {
        let d = p.degree().ok_or_else(|| Error::Invalid("element is not homogeneous".into()))?;
        for t in 1..=max_degree {
            let basis = self.basis(t);
            let left: Vec<NcPoly> =
                basis.iter().map(|w| self.multiply(p, &NcPoly::word(&self.field, w))).collect::<Result<_>>()?;
            let right: Vec<NcPoly> =
                basis.iter().map(|w| self.multiply(&NcPoly::word(&self.field, w), p)).collect::<Result<_>>()?;
            let target = self.basis(d + t);
            let vec_of = |q: &NcPoly| target.iter().map(|w| q.coeff(w)).collect::<Vec<_>>();
            let lv: Vec<Vec<Scalar>> = left.iter().map(vec_of).collect();
            let rv: Vec<Vec<Scalar>> = right.iter().map(vec_of).collect();
            let zero = self.field.zero();
            let both: Vec<Vec<Scalar>> = lv.iter().chain(&rv).cloned().collect();
            let (dl, dr, db) = (span_dim(&lv, &zero), span_dim(&rv, &zero), span_dim(&both, &zero));
            if dl != db || dr != db {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dehomogenized presentation of the function field k(𝕏).
    pub fn function_field(&self) -> Result<FunctionField> {
        let k = &self.field;
        let commutative = self.is_commutative()?;
        let uv = |t: &[(Scalar, &str)]| -> String {
            let terms: Vec<(Scalar, String)> =
                t.iter().filter(|(c, _)| !c.is_zero()).map(|(c, m)| (c.clone(), m.to_string())).collect();
            format_sum(&terms)
        };
        let (c0, a0, a1) = (self.variant.c0().clone(), self.variant.a0().clone(), self.variant.a1());
        let one = k.one();
        let presentation = match self.kind {
            PresentationKind::CommExt if commutative => {
                // K = k(√a0, √c0): cV² + aU² + 1 with a = a0, c = c0
                format!("Quot(k[U,V]/({}))", uv(&[(a0, "U^2"), (c0, "V^2"), (one, "")]))
            }
            PresentationKind::CommExt => format!(
                "k<U,V>/({}, {})",
                uv(&[(one.clone(), "UV"), (one.clone(), "VU"), (a1, "")]),
                uv(&[(one.clone(), "V^2"), (c0, "U^2"), (-&a0, "")])
            ),
            PresentationKind::SkewExt => {
                let ab = &c0 * &a0;
                format!("Quot(k[U,V]/({}))", uv(&[(-&c0, "U^2"), (-&a0, "V^2"), (ab, "")]))
            }
            PresentationKind::QuatChar2 => {
                format!("Quot(k[U,V]/({}))", uv(&[(one.clone(), "U^2"), (one, "UV"), (c0, "V^2"), (a0, "")]))
            }
        };
        let (centre, s) = if commutative { ("k(X)".to_string(), 1) } else { ("k(U^2)".to_string(), 2) };
        Ok(FunctionField { presentation, commutative, centre, s })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FunctionField {
    pub presentation: String,
    pub commutative: bool,
    pub centre: String,
    /// Square root of the dimension of k(𝕏) over its centre.
    pub s: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationComparison {
    pub n: usize,
    /// dim Hom(Pₙ, Pₙ₊₂)
    pub hom_dim: usize,
    /// dimension of the kernel of the composition map on the nine words
    pub kernel_dim: usize,
    /// basis of that kernel
    pub derived: Vec<String>,
    pub presented: Vec<String>,
    pub matches: bool,
}

const QUADRATIC_WORDS: [[u8; 2]; 9] = [[X, X], [X, Y], [X, Z], [Y, X], [Y, Y], [Y, Z], [Z, X], [Z, Y], [Z, Z]];

/// Quadratic relations read off from composites on the ladder at Pₙ, compared with the presentation.
pub fn derive_relations_from_ladder(ladder: &mut Ladder, pres: &Presentation, n: usize) -> Result<RelationComparison> {
    let k = pres.field().clone();
    let composites: Vec<Morphism> = QUADRATIC_WORDS.iter().map(|w| ladder.monomial(w, n)).collect::<Result<_>>()?;
    let cols: Vec<Vec<Scalar>> = composites.iter().map(|m| m.to_vector()).collect();
    let map = Matrix::from_fn(cols[0].len(), 9, &k.zero(), |i, j| cols[j][i].clone());
    let kernel = map.kernel();
    let src = ladder.p(n)?.clone();
    let tgt = ladder.p(n + 2)?.clone();
    let hom = hom_dim(&src, &tgt);
    let presented: Vec<Vec<Scalar>> =
        pres.relations().iter().map(|r| QUADRATIC_WORDS.iter().map(|w| r.coeff(w)).collect()).collect();
    let zero = k.zero();
    let union: Vec<Vec<Scalar>> = kernel.iter().chain(&presented).cloned().collect();
    let dk = span_dim(&kernel, &zero);
    let matches = dk == span_dim(&presented, &zero) && dk == span_dim(&union, &zero) && 9 - dk == hom;
    let as_poly = |v: &Vec<Scalar>| {
        let mut p = NcPoly::zero(&k);
        for (w, c) in QUADRATIC_WORDS.iter().zip(v) {
            p.add_term(w.to_vec(), c.clone());
        }
        p
    };
    let report = RelationComparison {
        n,
        hom_dim: hom,
        kernel_dim: dk,
        derived: kernel.iter().map(|v| as_poly(v).to_string()).collect(),
        presented: pres.relation_strings().to_vec(),
        matches,
    };
    if !matches {
        return Err(Error::PresentationMismatch(format!("derived relations {:?}", report.derived)));
    }
    Ok(report)
}
