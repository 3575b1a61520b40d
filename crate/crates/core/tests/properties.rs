use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tamecurve::algebra::{Algebra, AlgebraSpec};
use tamecurve::curve::prime_generators;
use tamecurve::field::unipoly::UniPoly;
use tamecurve::ladder::Ladder;
use tamecurve::matrix::Matrix;
use tamecurve::presentation::{NcPoly, Presentation};
use tamecurve::rep::{coordinates_in, end_ring, hom_basis, index_multiplicity, Rep};
use tamecurve::skewpoly::SkewPolyAlgebra;
use tamecurve::symmetry::graded_automorphisms;
use tamecurve::{Error, Field, Scalar};

fn fields() -> Vec<Field> {
    vec![
        Field::prime(7).unwrap(),
        Field::finite(2, 3).unwrap(),
        Field::finite(3, 2).unwrap(),
        Field::rationals(),
        Field::ratfunc(2, &["u"], 2).unwrap(),
        Field::ratfunc(3, &["u", "v"], 3).unwrap(),
    ]
}

fn tower(k: &Field, c0: i64, a0: i64, a1: i64) -> Algebra {
    let spec = AlgebraSpec::Tower { c1: k.zero(), c0: k.from_int(c0), d1: k.zero(), a0: k.from_int(a0), a1: k.from_int(a1) };
    Algebra::new(k, spec).unwrap()
}

fn algebras() -> Vec<Algebra> {
    let q = Field::rationals();
    let f2 = Field::prime(2).unwrap();
    let f2u = Field::ratfunc(2, &["u"], 4).unwrap();
    vec![
        tower(&Field::prime(3).unwrap(), 2, 1, 1),
        tower(&q, 3, 2, 0),
        tower(&q, 2, 0, 1),
        Algebra::new(&q, AlgebraSpec::QuaternionOdd { a: q.from_int(-1), b: q.from_int(-1) }).unwrap(),
        Algebra::new(&f2, AlgebraSpec::QuaternionChar2 { c0: f2.one(), a0: f2.one() }).unwrap(),
        Algebra::new(
            &f2u,
            AlgebraSpec::Tower { c1: f2u.zero(), c0: f2u.parse("u^4").unwrap(), d1: f2u.zero(), a0: f2u.zero(), a1: f2u.one() },
        )
        .unwrap(),
    ]
}

fn random_poly(pres: &Presentation, rng: &mut ChaCha8Rng, max_degree: usize) -> NcPoly {
    let k = pres.field();
    let mut p = NcPoly::zero(k);
    let degree = rng.gen_range(0..=max_degree);
    for w in pres.basis(degree) {
        p = p.add(&NcPoly::monomial(k, k.random(rng), &w));
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn printing_and_parsing_are_inverse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in fields() {
            let a = k.random(&mut rng);
            let printed = a.to_string();
            let back = k.parse(&printed).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), printed);
        }
    }

    #[test]
    fn equality_matches_cross_multiplication(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in fields() {
            let (a, b, c, d) = (k.random(&mut rng), k.random(&mut rng), k.random(&mut rng), k.random(&mut rng));
            if b.is_zero() || d.is_zero() {
                continue;
            }
            let lhs = a.div(&b).unwrap();
            let rhs = c.div(&d).unwrap();
            prop_assert_eq!(lhs == rhs, &a * &d == &b * &c);
            // the same fraction reached two ways has one representation
            let scaled = (&a * &d).div(&(&b * &d)).unwrap();
            prop_assert_eq!(scaled.to_string(), lhs.to_string());
            prop_assert_eq!(scaled, lhs);
        }
    }

    #[test]
    fn field_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in fields() {
            let (a, b, c) = (k.random(&mut rng), k.random(&mut rng), k.random(&mut rng));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &(-&a), k.zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), k.one());
            }
        }
    }

    #[test]
    fn factorization_multiplies_back(seed in any::<u64>(), degree in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in [Field::prime(2).unwrap(), Field::prime(5).unwrap(), Field::finite(2, 2).unwrap()] {
            let mut coeffs: Vec<Scalar> = (0..degree).map(|_| k.random(&mut rng)).collect();
            coeffs.push(k.one());
            let f = UniPoly::new(&k, coeffs);
            let (unit, factors) = f.factor().unwrap();
            let mut product = UniPoly::constant(unit);
            for (g, e) in &factors {
                prop_assert!(g.is_irreducible().unwrap());
                product = product.mul(&g.pow(*e));
            }
            prop_assert_eq!(product, f);
        }
    }

    #[test]
    fn rank_plus_nullity(seed in any::<u64>(), rows in 1usize..5, cols in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in fields().into_iter().take(5) {
            let noise: Vec<Vec<Scalar>> = (0..rows).map(|_| (0..cols).map(|_| k.random(&mut rng)).collect()).collect();
            // every row a multiple of the first
            let scale: Vec<Scalar> = (0..rows).map(|_| k.random(&mut rng)).collect();
            let degenerate = Matrix::from_fn(rows, cols, &k.zero(), |i, j| &scale[i] * &noise[0][j]);
            for candidate in [degenerate, Matrix::from_rows(noise, &k.zero())] {
                let kernel = candidate.kernel();
                prop_assert_eq!(kernel.len() + candidate.rank(), cols);
                for v in &kernel {
                    let image = candidate.mul(&Matrix::column(v.clone(), &k.zero()));
                    prop_assert!(image.is_zero());
                }
            }
        }
    }

    #[test]
    fn algebra_multiplication_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for alg in algebras() {
            let (a, b, c) = (alg.random_elem(&mut rng), alg.random_elem(&mut rng), alg.random_elem(&mut rng));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&alg.one()), a.clone());
            if a.is_unit() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()), alg.one());
            }
        }
    }

    #[test]
    fn orbit_algebra_product_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for alg in algebras().into_iter().take(5) {
            let pres = Presentation::for_algebra(&alg).unwrap();
            let (a, b, c) = (random_poly(&pres, &mut rng, 2), random_poly(&pres, &mut rng, 2), random_poly(&pres, &mut rng, 2));
            let left = pres.multiply(&pres.multiply(&a, &b).unwrap(), &c).unwrap();
            let right = pres.multiply(&a, &pres.multiply(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(pres.normal_form(&left).unwrap(), left);
        }
    }

    #[test]
    fn skew_polynomial_product_is_associative(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = SkewPolyAlgebra::new(2, n, 1).unwrap();
        let (a, b, c) = (r.random_elem(&mut rng, 3), r.random_elem(&mut rng, 3), r.random_elem(&mut rng, 3));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        let x_yn = r.mul(&r.x(), &(0..n).fold(r.scalar(r.big_field().one()), |acc, _| r.mul(&acc, &r.y())));
        prop_assert!(r.is_central(&x_yn));
    }
}

#[test]
fn inverting_zero_fails() {
    for k in fields() {
        assert!(matches!(k.zero().inv(), Err(Error::DivisionByZero)));
    }
}

#[test]
fn finite_fields_are_closed() {
    for k in [Field::finite(2, 3).unwrap(), Field::finite(3, 2).unwrap(), Field::prime(11).unwrap()] {
        let elements = k.elements().unwrap();
        assert_eq!(elements.len() as u64, k.cardinality().unwrap());
        let units: Vec<&Scalar> = elements.iter().filter(|a| !a.is_zero()).collect();
        for a in &units {
            for b in &units {
                assert!(units.contains(&&(*a * *b)));
            }
        }
    }
}

#[test]
fn associativity_on_basis_triples() {
    for alg in algebras() {
        let basis = alg.basis();
        for a in &basis {
            for b in &basis {
                for c in &basis {
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                }
            }
        }
    }
}

#[test]
fn char2_quaternion_twist() {
    let alg = &algebras()[4];
    let (x, y) = (alg.x(), alg.y());
    assert_eq!(x.mul(&y), y.add(&y.mul(&x)));
}

#[test]
fn galois_groups_are_closed() {
    for alg in algebras().into_iter().filter(Algebra::is_tower) {
        let group = alg.galois_group().unwrap();
        for g in &group {
            for h in &group {
                assert!(group.contains(&g.mul(h)));
            }
        }
    }
}

#[test]
fn composites_of_homs_stay_in_hom() {
    for alg in algebras().into_iter().take(5).skip(1) {
        let mut ladder = Ladder::new(&alg).unwrap();
        let (p1, p2, p3) = (ladder.p(1).unwrap().clone(), ladder.p(2).unwrap().clone(), ladder.p(3).unwrap().clone());
        let (first, second, total) = (hom_basis(&p1, &p2), hom_basis(&p2, &p3), hom_basis(&p1, &p3));
        for f in &first {
            for g in &second {
                let gf = g.compose(f);
                assert!(gf.is_valid(&p1, &p3));
                assert!(coordinates_in(&total, &gf).is_some());
            }
        }
    }
}

#[test]
fn index_and_multiplicity_are_consistent() {
    for alg in algebras().into_iter().take(4) {
        let l = Rep::structure_sheaf(&alg);
        for lambda in [alg.x(), alg.y(), alg.x().add(&alg.y())] {
            let s = Rep::simple_regular(&lambda).unwrap();
            let (im, end) = index_multiplicity(&s, &l, 2).unwrap();
            assert_eq!(im.e * end.dim(), 2 * im.f);
            assert_eq!(end_ring(&s).unwrap().dim(), end.dim());
        }
    }
}

#[test]
fn automorphisms_preserve_relations() {
    let q = Field::rationals();
    let f3 = Field::prime(3).unwrap();
    for alg in [tower(&f3, 2, 1, 1), tower(&q, 3, 2, 0), tower(&q, 2, 0, 1)] {
        let pres = Presentation::for_algebra(&alg).unwrap();
        let search = graded_automorphisms(&pres).unwrap();
        assert!(search.automorphisms.len() > 1);
        for phi in &search.automorphisms {
            for psi in &search.automorphisms {
                let composite = phi.compose(psi);
                for r in pres.relations() {
                    assert!(pres.normal_form(&composite.apply(r)).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn prime_generators_are_normal() {
    let alg = tower(&Field::prime(3).unwrap(), 2, 1, 1);
    let pres = Presentation::for_algebra(&alg).unwrap();
    for p in prime_generators(alg.field(), 2).unwrap() {
        assert!(pres.is_normal_element(&p, 2).unwrap(), "{p}");
    }
}
