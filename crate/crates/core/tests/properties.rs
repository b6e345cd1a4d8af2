//! Randomized property suites for the module-level invariants, all with
//! fixed seeds so runs are reproducible.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ratdec::factor::{factor_polynomial, roots_in_field};
use ratdec::galois::fixing_group;
use ratdec::numfield::{Field, FieldElement};
use ratdec::parse::parse_expression;
use ratdec::poly::{Matrix, Polynomial};
use ratdec::ratfunc::{
    complete_chains, decompose_once, format_rf, same_field, MoebiusUnit, RationalFunction,
};

fn q() -> Field {
    Field::rationals()
}

fn qi() -> Field {
    Field::extension(&Polynomial::from_integers(&q(), &[1, 0, 1]), "i").unwrap()
}

fn qw() -> Field {
    Field::extension(&Polynomial::from_integers(&q(), &[-2, 0, 0, 1]), "w").unwrap()
}

fn random_element(rng: &mut ChaCha8Rng, field: &Field) -> FieldElement {
    use num_bigint::BigInt;
    use ratdec::numfield::BigRational;
    let d = field.degree();
    let coeffs: Vec<BigRational> = (0..d)
        .map(|_| {
            BigRational::new(
                BigInt::from(rng.gen_range(-9..=9)),
                BigInt::from(rng.gen_range(1..=5)),
            )
        })
        .collect();
    FieldElement::from_coeffs(field, coeffs)
}

fn random_poly(rng: &mut ChaCha8Rng, field: &Field, max_deg: usize) -> Polynomial {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<FieldElement> = (0..=deg).map(|_| random_element(rng, field)).collect();
    Polynomial::from_coeffs(field, coeffs)
}

fn random_nonzero_poly(rng: &mut ChaCha8Rng, field: &Field, max_deg: usize) -> Polynomial {
    loop {
        let p = random_poly(rng, field, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_function(rng: &mut ChaCha8Rng, field: &Field, max_deg: usize) -> RationalFunction {
    loop {
        let num = random_poly(rng, field, max_deg);
        let den = random_nonzero_poly(rng, field, max_deg);
        let Ok(f) = RationalFunction::new(num, den) else {
            continue;
        };
        if !f.is_constant() {
            return f;
        }
    }
}

fn random_unit(rng: &mut ChaCha8Rng, field: &Field) -> MoebiusUnit {
    loop {
        let a = field.integer(rng.gen_range(-3..=3));
        let b = field.integer(rng.gen_range(-3..=3));
        let c = field.integer(rng.gen_range(-3..=3));
        let d = field.integer(rng.gen_range(-3..=3));
        if let Ok(u) = MoebiusUnit::new(a, b, c, d) {
            return u;
        }
    }
}

#[test]
fn field_axioms_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for field in [q(), qi(), qw()] {
        for _ in 0..200 {
            let x = random_element(&mut rng, &field);
            let y = random_element(&mut rng, &field);
            let z = random_element(&mut rng, &field);
            assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            if !x.is_zero() {
                assert!(x.mul(&x.inv().unwrap()).is_one());
            }
        }
    }
}

#[test]
fn powers_cancel() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for field in [q(), qi(), qw()] {
        for _ in 0..50 {
            let x = random_element(&mut rng, &field);
            if x.is_zero() {
                continue;
            }
            for k in 1..=3i64 {
                assert!(x.pow(k).unwrap().mul(&x.pow(-k).unwrap()).is_one());
            }
        }
    }
}

#[test]
fn element_order_is_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let field = qi();
    let sample: Vec<FieldElement> = (0..30).map(|_| random_element(&mut rng, &field)).collect();
    for a in &sample {
        for b in &sample {
            match a.cmp(b) {
                std::cmp::Ordering::Less => assert_eq!(b.cmp(a), std::cmp::Ordering::Greater),
                std::cmp::Ordering::Greater => assert_eq!(b.cmp(a), std::cmp::Ordering::Less),
                std::cmp::Ordering::Equal => assert_eq!(a, b),
            }
            for c in &sample {
                if a <= b && b <= c {
                    assert!(a <= c);
                }
            }
        }
    }
}

#[test]
fn divrem_roundtrip_500() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..500 {
        let field = if i % 3 == 0 { qi() } else { q() };
        let a = random_poly(&mut rng, &field, 7);
        let b = random_nonzero_poly(&mut rng, &field, 4);
        let (quo, rem) = a.divrem(&b).unwrap();
        assert_eq!(quo.mul(&b).add(&rem), a);
        assert!(rem.degree() < b.degree() || rem.is_zero());
    }
}

#[test]
fn gcd_divides_both() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let field = q();
        let a = random_nonzero_poly(&mut rng, &field, 6);
        let b = random_nonzero_poly(&mut rng, &field, 6);
        let g = a.gcd(&b);
        assert!(g.divides(&a));
        assert!(g.divides(&b));
    }
}

#[test]
fn resultant_vanishes_iff_common_factor() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let field = q();
    for _ in 0..100 {
        // planted common factor
        let c = random_nonzero_poly(&mut rng, &field, 2);
        let c = if c.is_constant() {
            Polynomial::from_integers(&field, &[1, 1])
        } else {
            c
        };
        let a = c.mul(&random_nonzero_poly(&mut rng, &field, 3));
        let b = c.mul(&random_nonzero_poly(&mut rng, &field, 3));
        assert!(a.resultant(&b).unwrap().is_zero());
    }
    for _ in 0..100 {
        let a = random_nonzero_poly(&mut rng, &field, 4);
        let b = random_nonzero_poly(&mut rng, &field, 4);
        let res_zero = a.resultant(&b).unwrap().is_zero();
        let gcd_nonconst = a.gcd(&b).degree().map_or(false, |d| d > 0);
        assert_eq!(res_zero, gcd_nonconst, "a = {a}, b = {b}");
    }
}

#[test]
fn yun_reassembles_products_with_multiplicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let field = q();
    for _ in 0..100 {
        let a = random_nonzero_poly(&mut rng, &field, 3);
        let b = random_nonzero_poly(&mut rng, &field, 2);
        let e1 = rng.gen_range(1..=3);
        let e2 = rng.gen_range(1..=2);
        let f = a.pow(e1).mul(&b.pow(e2));
        if f.is_constant() {
            continue;
        }
        let (lc, parts) = f.squarefree_decomposition().unwrap();
        let mut acc = Polynomial::constant(lc);
        for (g, m) in &parts {
            assert!(g.is_monic());
            acc = acc.mul(&g.pow(*m));
        }
        assert_eq!(acc, f);
        // parts pairwise coprime and squarefree
        for (i, (gi, _)) in parts.iter().enumerate() {
            assert!(gi.gcd(&gi.derivative()).is_constant() || gi.is_constant());
            for (gj, _) in parts.iter().skip(i + 1) {
                assert!(gi.gcd(gj).is_one());
            }
        }
    }
}

#[test]
fn nullspace_vectors_annihilate_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let field = q();
    for _ in 0..50 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=6);
        let mut m = Matrix::zeros(&field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, field.integer(rng.gen_range(-3..=3)));
            }
        }
        for v in m.nullspace() {
            for r in 0..rows {
                let mut acc = field.zero();
                for c in 0..cols {
                    acc = acc.add(&m.get(r, c).mul(&v[c]));
                }
                assert!(acc.is_zero());
            }
        }
    }
}

#[test]
fn factorization_factors_have_no_roots_in_their_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..60 {
        let field = if i % 3 == 0 { qi() } else { q() };
        let f = random_nonzero_poly(&mut rng, &field, 5);
        if f.is_constant() {
            continue;
        }
        let fact = factor_polynomial(&f).unwrap();
        assert_eq!(fact.reassemble(), f);
        for (g, _) in &fact.factors {
            if g.degree().unwrap() >= 2 {
                assert!(
                    roots_in_field(g, &field).unwrap().is_empty(),
                    "irreducible factor with a root: {g}"
                );
            }
        }
    }
}

#[test]
fn roots_in_field_are_exact_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..60 {
        let field = if i % 2 == 0 { qi() } else { q() };
        // plant some roots
        let r1 = random_element(&mut rng, &field);
        let r2 = random_element(&mut rng, &field);
        let lin1 = Polynomial::from_coeffs(&field, vec![r1.neg(), field.one()]);
        let lin2 = Polynomial::from_coeffs(&field, vec![r2.neg(), field.one()]);
        let f = lin1
            .mul(&lin2)
            .mul(&random_nonzero_poly(&mut rng, &field, 2));
        let roots = roots_in_field(&f, &field).unwrap();
        assert!(roots.contains(&r1));
        assert!(roots.contains(&r2));
        for root in &roots {
            assert!(f.eval(root).is_zero());
        }
    }
}

#[test]
fn factor_over_extension_reassembles_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let field = qi();
    for _ in 0..20 {
        let a = random_nonzero_poly(&mut rng, &field, 2);
        let b = random_nonzero_poly(&mut rng, &field, 2);
        if a.is_constant() || b.is_constant() {
            continue;
        }
        let f = a.mul(&b);
        let fact = factor_polynomial(&f).unwrap();
        assert_eq!(fact.reassemble(), f);
    }
}

#[test]
fn composition_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let field = q();
    for _ in 0..60 {
        let f = random_function(&mut rng, &field, 3);
        let g = random_function(&mut rng, &field, 3);
        let h = random_function(&mut rng, &field, 3);
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn same_field_detects_unit_shifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let field = q();
    for _ in 0..100 {
        let f = random_function(&mut rng, &field, 4);
        let u = random_unit(&mut rng, &field);
        let uf = u.to_rf().compose(&f).unwrap();
        let w = same_field(&uf, &f)
            .unwrap()
            .expect("unit relation must be found");
        assert_eq!(w.to_rf().compose(&f).unwrap(), uf);
        assert_eq!(w, u);
    }
    // degree mismatch gives none
    let f2 = random_function(&mut rng, &field, 2);
    let f3 = parse_expression("x^3", &field).unwrap();
    if f2.degree() != 3 {
        assert!(same_field(&f2, &f3).unwrap().is_none());
    }
}

#[test]
fn decompose_once_iff_chains_longer_than_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let field = q();
    let mut composites = 0;
    for _ in 0..25 {
        // build decomposable samples half the time
        let f = if rng.gen_bool(0.5) {
            let g = random_function(&mut rng, &field, 2);
            let h = random_function(&mut rng, &field, 2);
            match g.compose(&h) {
                Ok(f) if f.degree() >= 4 => f,
                _ => continue,
            }
        } else {
            random_function(&mut rng, &field, 4)
        };
        if f.degree() < 2 {
            continue;
        }
        let once = decompose_once(&f).unwrap();
        let chains = complete_chains(&f).unwrap();
        let has_long = chains.iter().any(|c| c.len() >= 2);
        assert_eq!(!once.is_empty(), has_long, "f = {f}");
        for c in &chains {
            assert_eq!(c.recompose().unwrap(), f);
        }
        if !once.is_empty() {
            composites += 1;
            for d in &once {
                assert_eq!(d.target().unwrap(), f);
            }
        }
    }
    assert!(
        composites >= 3,
        "too few decomposable samples: {composites}"
    );
}

#[test]
fn fixing_group_elements_fix() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let field = q();
    for _ in 0..40 {
        let f = random_function(&mut rng, &field, 6);
        let g = fixing_group(&f).unwrap();
        for u in g.elements() {
            assert_eq!(f.compose(&u.to_rf()).unwrap(), f);
        }
    }
}

#[test]
fn right_component_of_degree12_from_its_group() {
    // G_Q(f) has order 2; its fixed field induces the degree-2 right
    // component, equivalent to x(x+6)/(x-3)
    let record = ratdec::casebook::CaseRecord::load("CB-5").unwrap();
    let f = record.value_over_q("f").unwrap();
    let g3 = record.value_over_q("g3").unwrap();
    let group = fixing_group(&f).unwrap();
    assert_eq!(group.order(), 2);
    let d = ratdec::galois::right_component_from_subgroup(&f, &group).unwrap();
    assert_eq!(d.target().unwrap(), f);
    assert_eq!(d.right.degree(), 2);
    assert_eq!(d.left.degree(), 6);
    assert!(same_field(&d.right, &g3).unwrap().is_some());
}

#[test]
fn a4_subgroup_lattice() {
    // the twelve-element casebook group has the A4 lattice:
    // 1 trivial + 3 C2 + 4 C3 + V + itself
    let record = ratdec::casebook::CaseRecord::load("CB-3").unwrap();
    let h = record.group("h_").unwrap();
    let subs = ratdec::galois::subgroups(&h).unwrap();
    assert_eq!(subs.len(), 10);
    let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
    assert_eq!(orders, vec![1, 2, 2, 2, 3, 3, 3, 3, 4, 12]);
    for s in &subs {
        assert!(s.is_subgroup_of(&h));
    }
}

#[test]
fn print_parse_roundtrip_500() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for i in 0..500 {
        let field = if i % 2 == 0 { q() } else { qi() };
        let f = random_function(&mut rng, &field, 6);
        let printed = format_rf(&f, "x");
        let reparsed = parse_expression(&printed, &field).unwrap();
        assert_eq!(f, reparsed, "roundtrip failed: {printed}");
    }
}
