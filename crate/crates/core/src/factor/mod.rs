//! Factorization and root finding over Q and over simple extensions Q(theta).

mod intfactor;
mod modp;
mod trager;
mod zassenhaus;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numfield::{BigRational, Field, FieldElement};
use crate::poly::Polynomial;

/// A complete factorization: unit * prod(factor^multiplicity), with monic
/// irreducible pairwise distinct factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit_constant: FieldElement,
    pub factors: Vec<(Polynomial, usize)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn reassemble(&self) -> Polynomial {
        let mut acc = Polynomial::constant(self.unit_constant.clone());
        for (g, m) in &self.factors {
            acc = acc.mul(&g.pow(*m));
        }
        acc
    }
}

/// The distinct rational roots of a nonzero polynomial over Q, by
/// rational-root-theorem candidate enumeration on the squarefree
/// primitive part, each candidate confirmed by evaluation.
pub fn rational_roots(f: &Polynomial) -> Result<BTreeSet<BigRational>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    assert!(
        f.field().is_rationals(),
        "rational_roots needs a polynomial over Q"
    );
    let mut roots = BTreeSet::new();
    if f.is_constant() {
        return Ok(roots);
    }
    // squarefree part
    let sf = f.div_exact(&f.gcd(&f.derivative()))?;
    let (mut prim, _) = sf.to_integer_primitive();
    // strip x^k
    let mut k = 0;
    while prim[0].is_zero() {
        prim.remove(0);
        k += 1;
    }
    if k > 0 {
        roots.insert(BigRational::zero());
    }
    if prim.len() < 2 {
        return Ok(roots);
    }
    let a0 = prim[0].clone();
    let an = prim.last().unwrap().clone();
    let num_divs = intfactor::positive_divisors(&a0);
    let den_divs = intfactor::positive_divisors(&an);
    let q = Field::rationals();
    let sfq = Polynomial::from_integer_coeffs(&q, &prim);
    for p in &num_divs {
        for d in &den_divs {
            if !p.gcd(d).is_one() {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = BigRational::new(p * BigInt::from(sign), d.clone());
                let ce = FieldElement::from_rational(&q, cand.clone());
                if sfq.eval(&ce).is_zero() {
                    roots.insert(cand);
                }
            }
        }
    }
    Ok(roots)
}

/// Complete irreducible factorization over Q: Yun squarefree split, rational
/// roots stripped, then Zassenhaus on the remaining squarefree parts.
pub fn factor_over_rationals(f: &Polynomial) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    assert!(
        f.field().is_rationals(),
        "factor_over_rationals needs a polynomial over Q"
    );
    let q = f.field().clone();
    let (unit, parts) = f.squarefree_decomposition()?;
    let mut factors: Vec<(Polynomial, usize)> = vec![];
    for (part, mult) in parts {
        for g in factor_squarefree_rational(&part)? {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| a.0.cmp_order(&b.0).then(a.1.cmp(&b.1)));
    let fact = Factorization {
        unit_constant: unit,
        factors,
    };
    debug_assert_eq!(fact.reassemble(), *f);
    let _ = q;
    Ok(fact)
}

/// Monic irreducible factors of a monic squarefree polynomial over Q.
fn factor_squarefree_rational(part: &Polynomial) -> Result<Vec<Polynomial>> {
    let q = part.field().clone();
    let mut rest = part.clone();
    let mut out = vec![];
    for r in rational_roots(part)? {
        let lin = Polynomial::from_rational_coeffs(&q, &[-r.clone(), BigRational::one()]);
        rest = rest.div_exact(&lin)?;
        out.push(lin);
    }
    match rest.degree() {
        None | Some(0) => {}
        Some(1) => out.push(rest.monic()),
        Some(2) | Some(3) => out.push(rest.monic()), // no rational root: irreducible
        Some(_) => {
            // substitute to a monic integer polynomial fhat(x) = lam^n * rest(x/lam)
            let rest = rest.monic();
            let n = rest.degree().unwrap();
            let mut lam = BigInt::one();
            for c in rest.coeffs() {
                lam = lam.lcm(c.rational_value().unwrap().denom());
            }
            let lam_rat = BigRational::from(lam.clone());
            let mut scaled: Vec<BigInt> = Vec::with_capacity(n + 1);
            let mut pw = BigRational::one();
            for i in (0..=n).rev() {
                // coefficient of x^i picks up lam^(n-i)
                let c = rest.coeff(i).rational_value().unwrap() * &pw;
                debug_assert!(c.denom().is_one());
                scaled.push(c.to_integer());
                pw *= &lam_rat;
            }
            scaled.reverse();
            for ghat in zassenhaus::factor_monic_squarefree(&scaled) {
                // map back: g(x) = ghat(lam*x) / lam^deg
                let dg = ghat.len() - 1;
                let coeffs: Vec<BigRational> = ghat
                    .iter()
                    .enumerate()
                    .map(|(i, c)| BigRational::new(c.clone(), lam.pow((dg - i) as u32)))
                    .collect();
                out.push(Polynomial::from_rational_coeffs(&q, &coeffs));
            }
        }
    }
    trager::sort_factors(&mut out);
    Ok(out)
}

/// Complete irreducible factorization over a simple extension (Trager).
pub fn factor_over_extension(f: &Polynomial) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.field().is_rationals() {
        return Err(Error::FieldMismatch);
    }
    let (unit, parts) = f.squarefree_decomposition()?;
    let mut factors: Vec<(Polynomial, usize)> = vec![];
    for (part, mult) in parts {
        for g in trager::factor_squarefree_over_extension(&part)? {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| a.0.cmp_order(&b.0).then(a.1.cmp(&b.1)));
    let fact = Factorization {
        unit_constant: unit,
        factors,
    };
    debug_assert_eq!(fact.reassemble(), *f);
    Ok(fact)
}

/// Factorization over the polynomial's own coefficient field.
pub fn factor_polynomial(f: &Polynomial) -> Result<Factorization> {
    if f.field().is_rationals() {
        factor_over_rationals(f)
    } else {
        factor_over_extension(f)
    }
}

/// The distinct roots of f lying in K (the polynomial's own field).
pub fn roots_in_field(f: &Polynomial, k: &Field) -> Result<Vec<FieldElement>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    assert_eq!(
        f.field(),
        k,
        "roots_in_field: polynomial not over the requested field"
    );
    if f.is_constant() {
        return Ok(vec![]);
    }
    let mut roots: BTreeSet<FieldElement> = BTreeSet::new();
    if k.is_rationals() {
        for r in rational_roots(f)? {
            roots.insert(FieldElement::from_rational(k, r));
        }
        return Ok(roots.into_iter().collect());
    }
    let d = k.degree();
    let sf = f.div_exact(&f.gcd(&f.derivative()))?.monic();
    if let Some(fq) = sf.try_project_to_rationals() {
        // roots in K have minimal polynomials of degree dividing d, so only
        // the small Q-irreducible factors can contribute
        let fact = factor_over_rationals(&fq)?;
        for (g, _) in fact.factors {
            let dg = g.degree().unwrap();
            if dg == 1 {
                let root = g.coeff(0).neg();
                roots.insert(FieldElement::from_rational(
                    k,
                    root.rational_value().unwrap(),
                ));
            } else if dg <= d && d % dg == 0 {
                for h in trager::factor_squarefree_over_extension(&g.lift_to(k))? {
                    if h.degree() == Some(1) {
                        roots.insert(h.coeff(0).neg());
                    }
                }
            }
        }
    } else {
        for h in trager::factor_squarefree_over_extension(&sf)? {
            if h.degree() == Some(1) {
                roots.insert(h.coeff(0).neg());
            }
        }
    }
    Ok(roots.into_iter().collect())
}

/// The m-th roots of unity contained in K.
pub fn roots_of_unity(k: &Field, m: usize) -> Result<Vec<FieldElement>> {
    assert!(m >= 1);
    let mut coeffs = vec![k.zero(); m + 1];
    coeffs[0] = k.integer(-1);
    coeffs[m] = k.one();
    let f = Polynomial::from_coeffs(k, coeffs);
    roots_in_field(&f, k)
}
