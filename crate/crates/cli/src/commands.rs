use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use tamecurve::curve::{
    classify_commutative, ensure_division, enumerate_points, has_efficient_tubular_shift, Bimodule, ShiftVerdict,
    DEFAULT_SEARCH_BOUND,
};
use tamecurve::ladder::{dump, verify_ladder};
use tamecurve::presentation::{NcPoly, Presentation};
use tamecurve::skewpoly::SkewPolyAlgebra;
use tamecurve::symmetry::{compare_tau_with_shift, ghost_group};
use tamecurve::{Error, Result};

/// Human-readable text plus the JSON result of one command.
pub struct Report {
    pub text: String,
    pub result: Value,
    /// False when a verification ran but did not pass.
    pub passed: bool,
}

impl Report {
    fn ok(text: String, result: Value) -> Report {
        Report { text, result, passed: true }
    }
}

pub struct Settings {
    pub max_degree: usize,
    pub seed: u64,
    pub search_bound: usize,
    pub ladder_depth: usize,
    pub dump_matrices: Option<std::path::PathBuf>,
}

fn one_four(b: &Bimodule) -> Result<&tamecurve::algebra::Algebra> {
    match b {
        Bimodule::OneFour(alg) => Ok(alg),
        _ => Err(Error::UnsupportedShape("this command needs a (1,4) bimodule".into())),
    }
}

/// A (1,4) bimodule whose F is a skew field.
fn division_one_four(b: &Bimodule) -> Result<&tamecurve::algebra::Algebra> {
    let alg = one_four(b)?;
    ensure_division(alg)?;
    Ok(alg)
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|i| rows.iter().map(|r| r[i].chars().count()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(header.iter().map(|h| h.to_string()).collect())];
    out.extend(rows.iter().map(|r| line(r.clone())));
    out.join("\n")
}

pub fn classify(b: &Bimodule, s: &Settings) -> Result<Report> {
    let d = classify_commutative(b)?;
    let shift = match b {
        Bimodule::OneFour(alg) if !alg.field().is_finite() => None,
        _ => Some(has_efficient_tubular_shift(b, s.search_bound)?),
    };
    let mut text = d.summary();
    if let Some(v) = &shift {
        text.push_str(&format!("\nefficient tubular shift: {}", describe_shift(v)));
    }
    Ok(Report::ok(text, json!({ "summary": d.summary(), "descriptor": d, "efficient_shift": shift })))
}

fn describe_shift(v: &ShiftVerdict) -> String {
    match v {
        ShiftVerdict::Yes { witness, f, e } => format!("yes (witness {witness}, f = {f}, e = {e})"),
        ShiftVerdict::No => "no".into(),
        ShiftVerdict::Unknown => "unknown".into(),
    }
}

pub fn points(b: &Bimodule, s: &Settings) -> Result<Report> {
    let pts = enumerate_points(one_four(b)?, s.max_degree)?;
    let rows: Vec<Vec<String>> = pts
        .iter()
        .map(|p| vec![p.prime.clone(), p.degree.to_string(), p.f.to_string(), p.e.to_string(), p.end_ring.clone()])
        .collect();
    let text = table(&["prime", "degree", "f", "e", "End"], &rows);
    Ok(Report::ok(text, json!({ "max_degree": s.max_degree, "points": pts })))
}

fn associativity_samples(pres: &Presentation, seed: u64, samples: usize) -> Result<bool> {
    let k = pres.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = |rng: &mut ChaCha8Rng| -> Result<NcPoly> {
        let deg = rand::Rng::gen_range(rng, 0..=2usize);
        let mut p = NcPoly::zero(&k);
        for w in pres.basis(deg) {
            p = p.add(&NcPoly::monomial(&k, k.random(rng), &w));
        }
        Ok(p)
    };
    for _ in 0..samples {
        let (a, b, c) = (random(&mut rng)?, random(&mut rng)?, random(&mut rng)?);
        let left = pres.multiply(&pres.multiply(&a, &b)?, &c)?;
        let right = pres.multiply(&a, &pres.multiply(&b, &c)?)?;
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

fn skew_associativity(r: &SkewPolyAlgebra, seed: u64, samples: usize) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|_| {
        let (a, b, c) = (r.random_elem(&mut rng, 2), r.random_elem(&mut rng, 2), r.random_elem(&mut rng, 2));
        r.mul(&r.mul(&a, &b), &c) == r.mul(&a, &r.mul(&b, &c))
    })
}

const ASSOCIATIVITY_SAMPLES: usize = 20;

pub fn algebra(b: &Bimodule, s: &Settings) -> Result<Report> {
    match b {
        Bimodule::Kronecker(_) => {
            Ok(Report::ok("R = k[X,Y]\ncommutative: yes".into(), json!({ "presentation": "k[X,Y]", "commutative": true })))
        }
        Bimodule::TwoTwo(r) => {
            let degrees: Vec<usize> = (0..=s.max_degree).collect();
            let centre_ok = degrees.iter().all(|&d| r.centre_matches_k_x_yn(d));
            let assoc = skew_associativity(r, s.seed, ASSOCIATIVITY_SAMPLES);
            let centre = format!("k[X, Y^{}]", r.degree());
            let text = format!(
                "R = K[X][Y; alpha], Y*c = alpha(c)*Y, K = F_{}^{}\ncentre: {centre} (degrees <= {}: {})\nassociativity ({} samples, seed {}): {}",
                r.base_field().characteristic(),
                r.degree(),
                s.max_degree,
                if centre_ok { "confirmed" } else { "FAILED" },
                ASSOCIATIVITY_SAMPLES,
                s.seed,
                if assoc { "ok" } else { "FAILED" }
            );
            let result = json!({
                "presentation": "K[X][Y; alpha]",
                "centre": centre,
                "centre_confirmed": centre_ok,
                "associative": assoc,
            });
            Ok(Report { text, result, passed: centre_ok && assoc })
        }
        Bimodule::OneFour(alg) => {
            let pres = Presentation::for_algebra(alg)?;
            let dims: Vec<usize> = (0..=s.max_degree).map(|t| pres.dim_degree(t)).collect();
            let centre_dims: Vec<usize> =
                (0..=s.max_degree).map(|t| pres.centre_basis(t).map(|b| b.len())).collect::<Result<_>>()?;
            let commutative = pres.is_commutative()?;
            let assoc = associativity_samples(&pres, s.seed, ASSOCIATIVITY_SAMPLES)?;
            let text = format!(
                "R = k<X,Y,Z>/({})\nshape: {:?}\ndim R_t (t = 0..{}): {:?}\ndim Z(R)_t: {:?}\ncommutative: {}\nassociativity ({} samples, seed {}): {}",
                pres.relation_strings().join(", "),
                pres.kind(),
                s.max_degree,
                dims,
                centre_dims,
                if commutative { "yes" } else { "no" },
                ASSOCIATIVITY_SAMPLES,
                s.seed,
                if assoc { "ok" } else { "FAILED" }
            );
            let result = json!({
                "shape": pres.kind(),
                "relations": pres.relation_strings(),
                "hilbert_function": dims,
                "centre_dimensions": centre_dims,
                "commutative": commutative,
                "associative": assoc,
            });
            Ok(Report { text, result, passed: assoc })
        }
    }
}

pub fn ghosts(b: &Bimodule, s: &Settings) -> Result<Report> {
    match b {
        Bimodule::Kronecker(_) => Ok(Report::ok(
            "ghost group: trivial (order 1)".into(),
            json!({ "order": 1, "structure": "trivial", "elements": ["X -> X, Y -> Y"] }),
        )),
        Bimodule::TwoTwo(r) => {
            let g = r.ghost_group();
            let structure = if g.order == 1 { "trivial".to_string() } else { format!("cyclic of order {}", g.order) };
            let text = format!("ghost group: {structure}\ngenerator: {}", g.generator);
            Ok(Report { text, result: json!({ "structure": structure, "report": g }), passed: g.automorphism_verified })
        }
        Bimodule::OneFour(_) => {
            let pres = Presentation::for_algebra(division_one_four(b)?)?;
            let g = ghost_group(&pres, s.max_degree)?;
            let mut text = format!(
                "ghost group: {} (order {})\nautomorphism classes modulo scalars: {}\ntest primes{}: {}\n",
                g.structure,
                g.order,
                g.automorphism_classes,
                if g.primes_complete { format!(" (all up to degree {})", s.max_degree) } else { " (documented list)".into() },
                g.test_primes.join(", ")
            );
            for e in &g.elements {
                text.push_str(&format!("  {e}\n"));
            }
            Ok(Report::ok(text.trim_end().to_string(), serde_json::to_value(&g).expect("serializable")))
        }
    }
}

pub fn ladder_verify(b: &Bimodule, s: &Settings) -> Result<Report> {
    let alg = one_four(b)?;
    let pres = Presentation::for_algebra(alg)?;
    let levels = verify_ladder(alg, &pres, s.ladder_depth)?;
    let mark = |ok: bool| if ok { "pass" } else { "FAIL" }.to_string();
    let rows: Vec<Vec<String>> = levels
        .iter()
        .map(|l| {
            vec![
                l.n.to_string(),
                mark(l.morphisms_valid),
                mark(l.relations.iter().all(|r| r.holds)),
                mark(l.exact),
                l.end_dim.to_string(),
                l.hom_next_dim.to_string(),
                mark(l.passed()),
            ]
        })
        .collect();
    let passed = levels.iter().all(|l| l.passed());
    let mut text = format!(
        "relations: {}\n{}",
        pres.relation_strings().join(", "),
        table(&["n", "morphisms", "relations", "exact", "dim End", "dim Hom(P_n,P_n+1)", "status"], &rows)
    );
    if let Some(path) = &s.dump_matrices {
        let dumps = (1..=s.ladder_depth).map(|n| dump(alg, n)).collect::<Result<Vec<_>>>()?;
        let body = serde_json::to_string_pretty(&dumps).expect("serializable");
        std::fs::write(path, body + "\n").map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
        text.push_str(&format!("\nmatrices written to {}", path.display()));
    }
    Ok(Report { text, result: json!({ "relations": pres.relation_strings(), "levels": levels, "passed": passed }), passed })
}

pub fn ar_translate(b: &Bimodule) -> Result<Report> {
    let cmp = compare_tau_with_shift(division_one_four(b)?)?;
    let text = format!(
        "sigma_x^-1 tau^- on Hom(L, L(1)): {}{}\nPi(L, tau^-) relations: {}",
        cmp.ghost,
        if cmp.is_identity { " (identity)" } else { "" },
        cmp.twisted_relations.join(", ")
    );
    Ok(Report::ok(text, serde_json::to_value(&cmp).expect("serializable")))
}

pub fn function_field(b: &Bimodule) -> Result<Report> {
    let d = classify_commutative(b)?;
    let text = format!("k(X) = {}\ncentre: {}\ns = {}", d.function_field, d.function_field_centre, d.s);
    Ok(Report::ok(
        text,
        json!({ "function_field": d.function_field, "centre": d.function_field_centre, "s": d.s, "commutative": d.commutative }),
    ))
}

pub const DEFAULT_LADDER_DEPTH: usize = 6;
pub const FALLBACK_SEARCH_BOUND: usize = DEFAULT_SEARCH_BOUND;
