//! Factoring over Q(theta) by the norm method: shift by multiples of the
//! generator until the norm is squarefree, factor the norm over Q, and
//! recover the factors by gcds back in the extension.

use num_bigint::BigInt;

use crate::error::Result;
use crate::numfield::{BigRational, Field, FieldElement};
use crate::poly::Polynomial;

/// Norm of a polynomial over Q(theta): res_theta(m(theta), f), a polynomial
/// over Q of degree d * deg f for monic f. Computed by evaluating the
/// resultant at d*deg(f)+1 rational points and interpolating; valid because
/// the minimal polynomial is monic in theta.
pub(crate) fn norm(f: &Polynomial) -> Result<Polynomial> {
    let k = f.field().clone();
    let d = k.degree();
    assert!(d >= 2, "norm is only defined over an extension");
    let q = Field::rationals();
    let m = k.min_poly().unwrap();
    let n = f.degree().expect("nonzero input");
    let npoints = d * n + 1;
    let mut points = Vec::with_capacity(npoints);
    let mut j: i64 = 0;
    while points.len() < npoints {
        let xj = q.integer(j);
        // f with x specialized at j, as a polynomial in theta over Q
        let mut theta_coeffs = vec![BigRational::from(BigInt::from(0)); d];
        let je = FieldElement::from_integer(&k, j);
        let mut jpow = k.one();
        for i in 0..=n {
            let c = f.coeff(i).mul(&jpow);
            for (t, v) in c.coeffs().iter().enumerate() {
                theta_coeffs[t] += v;
            }
            if i < n {
                jpow = jpow.mul(&je);
            }
        }
        let tpoly = Polynomial::from_rational_coeffs(&q, &theta_coeffs);
        let value = if tpoly.is_zero() {
            q.zero()
        } else {
            m.resultant(&tpoly)?
        };
        points.push((xj, value));
        j = if j > 0 { -j } else { -j + 1 };
    }
    Ok(Polynomial::interpolate(&q, &points))
}

/// Factors a monic squarefree polynomial over a simple extension into
/// monic irreducible factors.
pub(crate) fn factor_squarefree_over_extension(f: &Polynomial) -> Result<Vec<Polynomial>> {
    let k = f.field().clone();
    let n = f.degree().expect("nonzero input");
    debug_assert!(f.is_monic());
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    // fast path: rational coefficients factor over Q first, then each
    // Q-irreducible piece is split over the extension
    if let Some(fq) = f.try_project_to_rationals() {
        let fact = super::factor_over_rationals(&fq)?;
        let mut out = vec![];
        for (g, mult) in fact.factors {
            debug_assert_eq!(mult, 1);
            out.extend(factor_irreducible_rational_part(&g.lift_to(&k))?);
        }
        sort_factors(&mut out);
        return Ok(out);
    }
    let out = trager_split(f)?;
    Ok(out)
}

/// Splits a polynomial that is irreducible over Q (or any monic squarefree
/// polynomial) over the extension, via the norm.
fn factor_irreducible_rational_part(f: &Polynomial) -> Result<Vec<Polynomial>> {
    if f.degree() == Some(1) {
        return Ok(vec![f.clone()]);
    }
    trager_split(f)
}

fn trager_split(f: &Polynomial) -> Result<Vec<Polynomial>> {
    let k = f.field().clone();
    let theta = k.generator().expect("extension field");
    let x = Polynomial::x(&k);
    let mut s: i64 = 0;
    loop {
        // g(x) = f(x - s*theta)
        let shift = x.sub(&Polynomial::constant(
            theta.scale(&BigRational::from(BigInt::from(s))),
        ));
        let g = f.compose(&shift);
        let nrm = norm(&g)?;
        let sqfree = nrm.gcd(&nrm.derivative()).is_constant();
        if !sqfree {
            s += 1;
            continue;
        }
        let fact = super::factor_over_rationals(&nrm)?;
        let mut out = vec![];
        let back = x.add(&Polynomial::constant(
            theta.scale(&BigRational::from(BigInt::from(s))),
        ));
        for (q_factor, _) in fact.factors {
            let lifted = q_factor.lift_to(&k);
            let h = g.gcd(&lifted);
            if h.is_constant() {
                continue;
            }
            out.push(h.compose(&back).monic());
        }
        sort_factors(&mut out);
        debug_assert_eq!(
            out.iter().map(|h| h.degree().unwrap()).sum::<usize>(),
            f.degree().unwrap(),
            "norm factorization lost degree"
        );
        return Ok(out);
    }
}

pub(crate) fn sort_factors(v: &mut [Polynomial]) {
    v.sort_by(|a, b| a.cmp_order(b));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi() -> Field {
        let q = Field::rationals();
        Field::extension(&Polynomial::from_integers(&q, &[1, 0, 1]), "i").unwrap()
    }

    #[test]
    fn norm_of_linear() {
        // norm(x - i) over Q(i) = x^2 + 1
        let k = qi();
        let f = Polynomial::from_coeffs(&k, vec![k.generator().unwrap().neg(), k.one()]);
        let n = norm(&f).unwrap();
        assert_eq!(
            n,
            Polynomial::from_integers(&Field::rationals(), &[1, 0, 1])
        );
    }

    #[test]
    fn norm_is_multiplicative() {
        let k = qi();
        let i = k.generator().unwrap();
        let a = Polynomial::from_coeffs(&k, vec![i.clone(), k.integer(2), k.one()]);
        let b = Polynomial::from_coeffs(&k, vec![k.integer(3).mul(&i), k.one()]);
        let na = norm(&a).unwrap();
        let nb = norm(&b).unwrap();
        let nab = norm(&a.mul(&b)).unwrap();
        assert_eq!(na.mul(&nb), nab);
    }

    #[test]
    fn norm_is_multiplicative_on_random_pairs() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for field in [
            qi(),
            Field::extension(
                &Polynomial::from_integers(&Field::rationals(), &[-2, 0, 0, 1]),
                "w",
            )
            .unwrap(),
        ] {
            for _ in 0..25 {
                let rand_poly = |rng: &mut rand_chacha::ChaCha8Rng, deg: usize| {
                    let d = field.degree();
                    loop {
                        let coeffs: Vec<FieldElement> = (0..=deg)
                            .map(|_| {
                                let v: Vec<BigRational> = (0..d)
                                    .map(|_| {
                                        BigRational::from(BigInt::from(rng.gen_range(-5..=5i64)))
                                    })
                                    .collect();
                                FieldElement::from_coeffs(&field, v)
                            })
                            .collect();
                        let p = Polynomial::from_coeffs(&field, coeffs);
                        if !p.is_zero() {
                            return p;
                        }
                    }
                };
                let a = rand_poly(&mut rng, 3);
                let b = rand_poly(&mut rng, 2);
                assert_eq!(
                    norm(&a).unwrap().mul(&norm(&b).unwrap()),
                    norm(&a.mul(&b)).unwrap()
                );
            }
        }
    }

    #[test]
    fn splits_x2_plus_1_over_qi() {
        let k = qi();
        let f = Polynomial::from_integers(&k, &[1, 0, 1]);
        let facs = factor_squarefree_over_extension(&f).unwrap();
        assert_eq!(facs.len(), 2);
        let i = k.generator().unwrap();
        let prod = facs[0].mul(&facs[1]);
        assert_eq!(prod, f);
        assert!(facs.iter().any(|g| g.eval(&i).is_zero()));
        assert!(facs.iter().any(|g| g.eval(&i.neg()).is_zero()));
    }
}
