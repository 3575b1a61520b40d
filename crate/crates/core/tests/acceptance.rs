use std::io::Write;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tamecurve::algebra::{Algebra, AlgebraSpec};
use tamecurve::curve::{classify_commutative, enumerate_points, has_efficient_tubular_shift, Bimodule, ShiftVerdict};
use tamecurve::ladder::{verify_ladder, verify_universal_extension, Ladder};
use tamecurve::matrix::span_dim;
use tamecurve::presentation::{derive_relations_from_ladder, NcPoly, Presentation};
use tamecurve::rep::{hom_dim, Rep};
use tamecurve::skewpoly::SkewPolyAlgebra;
use tamecurve::spec::CurveSpec;
use tamecurve::symmetry::{compare_tau_with_shift, ghost_group, graded_automorphisms, GradedAutomorphism};
use tamecurve::{Field, Scalar};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn tower(k: &Field, c0: i64, a0: i64, a1: i64) -> Algebra {
    let spec = AlgebraSpec::Tower { c1: k.zero(), c0: k.from_int(c0), d1: k.zero(), a0: k.from_int(a0), a1: k.from_int(a1) };
    Algebra::new(k, spec).unwrap()
}

fn f3_tower() -> Algebra {
    tower(&Field::prime(3).unwrap(), 2, 1, 1)
}

fn hamilton() -> Algebra {
    let k = Field::rationals();
    Algebra::new(&k, AlgebraSpec::QuaternionOdd { a: k.from_int(-1), b: k.from_int(-1) }).unwrap()
}

fn f2_quaternion() -> Algebra {
    let k = Field::prime(2).unwrap();
    Algebra::new(&k, AlgebraSpec::QuaternionChar2 { c0: k.one(), a0: k.one() }).unwrap()
}

fn sqrt2_sqrt3() -> Algebra {
    tower(&Field::rationals(), 3, 2, 0)
}

/// The three ladder variants with the relations they must reproduce.
fn variants() -> Vec<(&'static str, Algebra, [&'static str; 4])> {
    vec![
        ("CommExt over F_3", f3_tower(), ["XY-YX", "XZ-ZX", "ZY+YZ+X^2", "Z^2-Y^2-X^2"]),
        ("SkewExt over Q", hamilton(), ["XY-YX", "XZ-ZX", "ZY-YZ", "Z^2+Y^2+X^2"]),
        ("QuatChar2 over F_2", f2_quaternion(), ["XY+YX", "XZ+ZX", "ZY+YZ", "Z^2+Y^2+X^2+YZ"]),
    ]
}

fn bundled(name: &str) -> Bimodule {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    CurveSpec::from_json(&text).unwrap().bimodule().unwrap()
}

const DEPTH: usize = 6;

fn ladder_relations() -> Outcome {
    for (name, alg, expected) in variants() {
        let pres = Presentation::for_algebra(&alg).map_err(|e| e.to_string())?;
        ensure(pres.relation_strings() == expected, format!("{name}: relations {:?}", pres.relation_strings()))?;
        let levels = verify_ladder(&alg, &pres, DEPTH).map_err(|e| format!("{name}: {e}"))?;
        for level in &levels {
            let failed: Vec<&str> = level.relations.iter().filter(|r| !r.holds).map(|r| r.relation.as_str()).collect();
            ensure(level.morphisms_valid && failed.is_empty(), format!("{name}, n = {}: {failed:?}", level.n))?;
        }
    }
    Ok(())
}

fn exactness() -> Outcome {
    for (name, alg, _) in variants() {
        let mut ladder = Ladder::new(&alg).map_err(|e| e.to_string())?;
        for n in 1..=DEPTH {
            let r = verify_universal_extension(&mut ladder, n).map_err(|e| format!("{name}: {e}"))?;
            ensure(r.kernel_dims == (0, 0) && r.cokernel_is_simple_x, format!("{name}, n = {n}: {r:?}"))?;
        }
    }
    Ok(())
}

fn hom_dimensions() -> Outcome {
    for (name, alg, _) in variants() {
        let pres = Presentation::for_algebra(&alg).map_err(|e| e.to_string())?;
        let mut ladder = Ladder::new(&alg).map_err(|e| e.to_string())?;
        let simple = Rep::simple_regular(&alg.x()).map_err(|e| e.to_string())?;
        for n in 1..=DEPTH {
            let p = ladder.p(n).map_err(|e| e.to_string())?.clone();
            let next = ladder.p(n + 1).map_err(|e| e.to_string())?.clone();
            let dims = (hom_dim(&p, &p), hom_dim(&p, &next), hom_dim(&simple, &p));
            ensure(dims == (1, 3, 0), format!("{name}, n = {n}: (End, Hom to next, Hom from S_x) = {dims:?}"))?;
        }
        let p1 = ladder.p(1).map_err(|e| e.to_string())?.clone();
        let k = alg.field().clone();
        for t in 0..=8 {
            let words = pres.basis(t);
            let target = ladder.p(1 + t).map_err(|e| e.to_string())?.clone();
            let composites: Vec<Vec<Scalar>> = words
                .iter()
                .map(|w| ladder.monomial(w, 1).map(|m| m.to_vector()))
                .collect::<tamecurve::Result<_>>()
                .map_err(|e| e.to_string())?;
            let spanned = span_dim(&composites, &k.zero());
            let hom = hom_dim(&p1, &target);
            ensure(
                words.len() == 2 * t + 1 && spanned == 2 * t + 1 && hom == 2 * t + 1,
                format!("{name}, t = {t}: basis {}, composites {spanned}, Hom {hom}", words.len()),
            )?;
        }
    }
    Ok(())
}

fn presentation_oracle() -> Outcome {
    for (name, alg, _) in variants() {
        let pres = Presentation::for_algebra(&alg).map_err(|e| e.to_string())?;
        let mut ladder = Ladder::new(&alg).map_err(|e| e.to_string())?;
        for n in 1..=3 {
            let cmp = derive_relations_from_ladder(&mut ladder, &pres, n).map_err(|e| format!("{name}: {e}"))?;
            ensure(cmp.matches && cmp.kernel_dim == 4, format!("{name}, n = {n}: derived {:?}", cmp.derived))?;
        }
    }
    Ok(())
}

fn centre() -> Outcome {
    // dim k[X, Y^2]_t
    let expected = |t: usize| t / 2 + 1;
    for (name, alg) in [("F_3 tower", f3_tower()), ("Q(sqrt2, sqrt3)", sqrt2_sqrt3())] {
        let pres = Presentation::for_algebra(&alg).map_err(|e| e.to_string())?;
        let k = alg.field().clone();
        for t in 0..=4 {
            let dim = pres.centre_basis(t).map_err(|e| e.to_string())?.len();
            ensure(dim == expected(t), format!("{name}: dim Z(R)_{t} = {dim}"))?;
        }
        for p in [NcPoly::word(&k, &[0]), NcPoly::word(&k, &[1, 1])] {
            ensure(pres.is_central(&p).map_err(|e| e.to_string())?, format!("{name}: {p} not central"))?;
        }
        ensure(!pres.is_commutative().map_err(|e| e.to_string())?, format!("{name}: unexpectedly commutative"))?;
    }
    let Bimodule::OneFour(biquadratic) = bundled("f2_biquadratic") else { return Err("f2_biquadratic shape".into()) };
    let pres = Presentation::for_algebra(&biquadratic).map_err(|e| e.to_string())?;
    ensure(pres.is_commutative().map_err(|e| e.to_string())?, "char 2, a1 = 0: R not commutative")?;
    for n in 2..=4 {
        let r = SkewPolyAlgebra::new(2, n, 1).map_err(|e| e.to_string())?;
        for d in 0..=4 {
            ensure(r.centre_matches_k_x_yn(d), format!("skew ring n = {n}: centre differs in degree {d}"))?;
        }
    }
    Ok(())
}

fn classifier() -> Outcome {
    let golden = [
        ("kronecker_f5", "Commutative (Brauer-Severi); k(X) = k(T)"),
        ("hamilton", "Commutative (Brauer-Severi); k(X) = Quot(k[U,V]/(U^2+V^2+1))"),
        ("f2_biquadratic", "Commutative (not Brauer-Severi); k(X) = Quot(k[U,V]/(v^2*U^2+u^2*V^2+1))"),
        ("f2_u4", "Noncommutative (s = 2); k(X) = k<U,V>/(UV+VU+1, V^2+u^4*U^2)"),
    ];
    for (name, summary) in golden {
        let d = classify_commutative(&bundled(name)).map_err(|e| format!("{name}: {e}"))?;
        ensure(d.summary() == summary, format!("{name}: {}", d.summary()))?;
    }
    let d = classify_commutative(&bundled("f4u_over_f2u2")).map_err(|e| e.to_string())?;
    ensure(!d.commutative && d.s == 2, format!("f4u_over_f2u2: {}", d.summary()))
}

fn census() -> Outcome {
    let points = enumerate_points(&f3_tower(), 2).map_err(|e| e.to_string())?;
    let primes: Vec<&str> = points.iter().map(|p| p.prime.as_str()).collect();
    ensure(primes == ["X", "Y^2", "Y^2+X^2", "Y^2+2*X^2"], format!("primes {primes:?}"))?;
    ensure(points.iter().all(|p| p.f == 1), "some f differs from 1")?;
    ensure((points[0].f, points[0].e) == (1, 1), format!("(f, e) at X = ({}, {})", points[0].f, points[0].e))
}

fn ghosts() -> Outcome {
    let biquadratic =
        ghost_group(&Presentation::for_algebra(&sqrt2_sqrt3()).map_err(|e| e.to_string())?, 2).map_err(|e| e.to_string())?;
    ensure(biquadratic.structure == "Klein four", format!("Q(sqrt2, sqrt3): {}", biquadratic.structure))?;
    let quartic = tower(&Field::rationals(), 2, 0, 1);
    let g = ghost_group(&Presentation::for_algebra(&quartic).map_err(|e| e.to_string())?, 2).map_err(|e| e.to_string())?;
    ensure(g.order == 2, format!("Q(2^(1/4)): order {}", g.order))?;
    let skew = SkewPolyAlgebra::new(3, 2, 1).map_err(|e| e.to_string())?.ghost_group();
    ensure(skew.order == 2 && skew.cyclic && skew.automorphism_verified, format!("F_9 over F_3: {skew:?}"))?;

    let alg = f3_tower();
    let k = alg.field().clone();
    let pres = Presentation::for_algebra(&alg).map_err(|e| e.to_string())?;
    let alpha = GradedAutomorphism::from_columns(&k, [[1, 0, 0], [0, -1, 1], [0, 1, 1]]);
    let search = graded_automorphisms(&pres).map_err(|e| e.to_string())?;
    ensure(search.automorphisms.contains(&alpha), "alpha not found among graded automorphisms")?;
    let negate_x = GradedAutomorphism::from_columns(&k, [[-1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    ensure(alpha.compose(&alpha).equals_mod_scalars(&negate_x), "alpha^2 is not X -> -X modulo scalars")?;
    let yy = NcPoly::word(&k, &[1, 1]);
    ensure(!alpha.fixes_ideal(&pres, &yy).map_err(|e| e.to_string())?, "alpha fixes (Y^2)")
}

fn ar_translation() -> Outcome {
    let cmp = compare_tau_with_shift(&sqrt2_sqrt3()).map_err(|e| e.to_string())?;
    ensure(cmp.ghost == "X -> -X, Y -> Y, Z -> Z", format!("ghost {}", cmp.ghost))?;
    ensure(
        cmp.twisted_relations == ["XY+YX", "XZ+ZX", "ZY+YZ", "Z^2+3*Y^2+2*X^2"],
        format!("relations {:?}", cmp.twisted_relations),
    )
}

fn random_tower(k: &Field, rng: &mut ChaCha8Rng) -> Algebra {
    loop {
        let mut draw = || k.random(rng);
        let spec = AlgebraSpec::Tower { c1: draw(), c0: draw(), d1: draw(), a0: draw(), a1: draw() };
        if let Ok(alg) = Algebra::new(k, spec) {
            return alg;
        }
    }
}

fn unirational() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for p in [3, 5, 7] {
        let k = Field::prime(p).unwrap();
        for _ in 0..10 {
            let alg = random_tower(&k, &mut rng);
            let spec = format!("{:?}", alg.spec());
            let verdict = has_efficient_tubular_shift(&Bimodule::OneFour(alg), 1000).map_err(|e| e.to_string())?;
            ensure(matches!(verdict, ShiftVerdict::Yes { .. }), format!("F_{p}, {spec}: {verdict:?}"))?;
        }
    }
    Ok(())
}

const TRIPLES: usize = 200;

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let algebras = [f3_tower(), hamilton(), f2_quaternion(), sqrt2_sqrt3()];
    for alg in &algebras {
        for _ in 0..TRIPLES {
            let (a, b, c) = (alg.random_elem(&mut rng), alg.random_elem(&mut rng), alg.random_elem(&mut rng));
            ensure(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), format!("{:?}: ({a})({b})({c})", alg.spec()))?;
        }
        let pres = Presentation::for_algebra(alg).map_err(|e| e.to_string())?;
        let k = pres.field().clone();
        let random_poly = |rng: &mut ChaCha8Rng| {
            let mut p = NcPoly::zero(&k);
            for w in pres.basis(rng.gen_range(0..=2)) {
                p = p.add(&NcPoly::monomial(&k, k.random(rng), &w));
            }
            p
        };
        for _ in 0..TRIPLES {
            let (a, b, c) = (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng));
            let left = pres.multiply(&pres.multiply(&a, &b).map_err(|e| e.to_string())?, &c).map_err(|e| e.to_string())?;
            let right = pres.multiply(&a, &pres.multiply(&b, &c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(left == right, format!("orbit algebra product not associative on {a}, {b}, {c}"))?;
        }
    }
    let skew = SkewPolyAlgebra::new(5, 3, 2).map_err(|e| e.to_string())?;
    for _ in 0..TRIPLES {
        let (a, b, c) = (skew.random_elem(&mut rng, 2), skew.random_elem(&mut rng, 2), skew.random_elem(&mut rng, 2));
        ensure(skew.mul(&skew.mul(&a, &b), &c) == skew.mul(&a, &skew.mul(&b, &c)), "skew product not associative")?;
    }

    let fields = [
        Field::rationals(),
        Field::finite(3, 2).unwrap(),
        Field::ratfunc(2, &["u"], 4).unwrap(),
        Field::ratfunc(3, &["u", "v"], 3).unwrap(),
    ];
    for k in &fields {
        for _ in 0..TRIPLES {
            let (a, b) = (k.random(&mut rng), k.random(&mut rng));
            let printed = a.to_string();
            let reparsed = k.parse(&printed).map_err(|e| format!("{printed}: {e}"))?;
            ensure(reparsed == a && reparsed.to_string() == printed, format!("{printed} is not a fixed point"))?;
            if !b.is_zero() {
                let round = (&a * &b).div(&b).map_err(|e| e.to_string())?;
                ensure(round == a && round.to_string() == printed, format!("({printed})*({b})/({b}) = {round}"))?;
            }
        }
    }

    for alg in [f3_tower(), sqrt2_sqrt3()] {
        let pres = Presentation::for_algebra(&alg).map_err(|e| e.to_string())?;
        let search = graded_automorphisms(&pres).map_err(|e| e.to_string())?;
        for phi in &search.automorphisms {
            for r in pres.relations() {
                let image = pres.normal_form(&phi.apply(r)).map_err(|e| e.to_string())?;
                ensure(image.is_zero(), format!("{} does not preserve {r}", phi.describe()))?;
            }
        }
    }
    Ok(())
}

/// Bypasses libtest output capture.
fn report(line: String) {
    let _ = writeln!(std::io::stderr(), "{line}");
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("ladder relations", ladder_relations),
        ("exactness", exactness),
        ("hom dimensions", hom_dimensions),
        ("presentation oracle", presentation_oracle),
        ("centre", centre),
        ("classifier golden set", classifier),
        ("point census", census),
        ("ghost groups", ghosts),
        ("AR translation", ar_translation),
        ("unirational existence", unirational),
        ("property suites", properties),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = check();
        let elapsed = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(()) => report(format!("criterion {:>2} {name}: pass ({elapsed:.2}s)", i + 1)),
            Err(msg) => {
                failures += 1;
                report(format!("criterion {:>2} {name}: FAIL ({elapsed:.2}s): {msg}", i + 1));
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
