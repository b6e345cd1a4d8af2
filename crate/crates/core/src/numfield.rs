//! Exact arithmetic in Q and in simple algebraic extensions Q[t]/(m(t)).
//!
//! A [`Field`] is either the rationals or a quotient Q[t]/(m(t)) with m
//! monic irreducible of degree >= 2. A [`FieldElement`] stores exactly
//! `d` rational coordinates c_0 + c_1*t + ... + c_{d-1}*t^{d-1}.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub type BigRational = num_rational::BigRational;

#[derive(Debug)]
enum FieldRepr {
    Rationals,
    Extension {
        name: String,
        /// Monic minimal polynomial, lowest degree first, length d + 1.
        min_poly: Vec<BigRational>,
    },
}

/// A coefficient field: Q or a simple extension Q[name]/(m(name)).
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (FieldRepr::Rationals, FieldRepr::Rationals) => true,
            (
                FieldRepr::Extension {
                    name: n1,
                    min_poly: m1,
                },
                FieldRepr::Extension {
                    name: n2,
                    min_poly: m2,
                },
            ) => n1 == n2 && m1 == m2,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl Field {
    /// The rational field Q.
    pub fn rationals() -> Field {
        static Q: OnceLock<Field> = OnceLock::new();
        Q.get_or_init(|| Field(Arc::new(FieldRepr::Rationals)))
            .clone()
    }

    /// Builds Q[name]/(min_poly). The minimal polynomial must be monic of
    /// degree >= 2 over Q and is verified irreducible by factoring it.
    pub fn extension(min_poly: &Polynomial, name: &str) -> Result<Field> {
        if min_poly.field() != &Field::rationals() {
            return Err(Error::FieldMismatch);
        }
        let deg = match min_poly.degree() {
            Some(d) if d >= 2 => d,
            _ => {
                return Err(Error::ReduciblePolynomial(format!(
                    "minimal polynomial must have degree >= 2, got {}",
                    min_poly
                )))
            }
        };
        if !min_poly.is_monic() {
            return Err(Error::NotMonic);
        }
        let fact = crate::factor::factor_over_rationals(min_poly)?;
        if fact.factors.len() != 1 || fact.factors[0].1 != 1 {
            return Err(Error::ReduciblePolynomial(format!("{}", min_poly)));
        }
        let coeffs: Vec<BigRational> = (0..=deg)
            .map(|i| {
                min_poly
                    .coeff(i)
                    .rational_value()
                    .expect("rational coefficients")
            })
            .collect();
        Ok(Field(Arc::new(FieldRepr::Extension {
            name: name.to_string(),
            min_poly: coeffs,
        })))
    }

    /// Degree over Q: 1 for the rationals, deg(min_poly) otherwise.
    pub fn degree(&self) -> usize {
        match &*self.0 {
            FieldRepr::Rationals => 1,
            FieldRepr::Extension { min_poly, .. } => min_poly.len() - 1,
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(&*self.0, FieldRepr::Rationals)
    }

    pub fn generator_name(&self) -> Option<&str> {
        match &*self.0 {
            FieldRepr::Rationals => None,
            FieldRepr::Extension { name, .. } => Some(name),
        }
    }

    /// The generator t of the extension, if any.
    pub fn generator(&self) -> Option<FieldElement> {
        match &*self.0 {
            FieldRepr::Rationals => None,
            FieldRepr::Extension { .. } => {
                let mut coeffs = vec![BigRational::zero(); self.degree()];
                coeffs[1] = BigRational::one();
                Some(FieldElement {
                    field: self.clone(),
                    coeffs,
                })
            }
        }
    }

    /// The minimal polynomial of the generator as a polynomial over Q.
    pub fn min_poly(&self) -> Option<Polynomial> {
        match &*self.0 {
            FieldRepr::Rationals => None,
            FieldRepr::Extension { min_poly, .. } => {
                let q = Field::rationals();
                let coeffs = min_poly
                    .iter()
                    .map(|c| FieldElement::from_rational(&q, c.clone()))
                    .collect();
                Some(Polynomial::from_coeffs(&q, coeffs))
            }
        }
    }

    fn min_poly_coeffs(&self) -> Option<&[BigRational]> {
        match &*self.0 {
            FieldRepr::Rationals => None,
            FieldRepr::Extension { min_poly, .. } => Some(min_poly),
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.integer(1)
    }

    pub fn integer(&self, n: i64) -> FieldElement {
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        coeffs[0] = BigRational::from(BigInt::from(n));
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldRepr::Rationals => write!(f, "Q"),
            FieldRepr::Extension { name, .. } => {
                write!(f, "Q[{}]/({})", name, self.min_poly().unwrap())
            }
        }
    }
}

/// An element of a [`Field`], with exactly `field.degree()` coordinates.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// Lexicographic order on the coordinate vector. Used only for
    /// deterministic output ordering; it has no algebraic meaning.
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.field, other.field);
        self.coeffs.cmp(&other.coeffs)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn from_rational(field: &Field, r: BigRational) -> FieldElement {
        let mut coeffs = vec![BigRational::zero(); field.degree()];
        coeffs[0] = r;
        FieldElement {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_integer(field: &Field, n: i64) -> FieldElement {
        field.integer(n)
    }

    /// Builds an element from its coordinate vector (length d).
    pub fn from_coeffs(field: &Field, coeffs: Vec<BigRational>) -> FieldElement {
        assert_eq!(
            coeffs.len(),
            field.degree(),
            "coordinate vector has wrong length"
        );
        FieldElement {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The value as a rational number, when no generator part is present.
    pub fn rational_value(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert_eq!(
            self.field, other.field,
            "field mismatch in element arithmetic"
        );
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        let d = self.field.degree();
        if d == 1 {
            return FieldElement {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        reduce_mod_min_poly(&mut prod, self.field.min_poly_coeffs().unwrap());
        prod.truncate(d);
        prod.resize(d, BigRational::zero());
        FieldElement {
            field: self.field.clone(),
            coeffs: prod,
        }
    }

    /// Multiplicative inverse via the extended Euclidean relation between
    /// the coordinate polynomial and the minimal polynomial.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree() == 1 {
            return Ok(FieldElement {
                field: self.field.clone(),
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        let m = self.field.min_poly_coeffs().unwrap();
        let a: Vec<BigRational> = trim(self.coeffs.clone());
        let s = ext_euclid_inverse(&a, m);
        let mut coeffs = s;
        coeffs.resize(self.field.degree(), BigRational::zero());
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, exp: i64) -> Result<FieldElement> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &BigRational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }
}

/// Reduces a raw product vector modulo the monic minimal polynomial
/// (t^d = -(m_0 + m_1 t + ... + m_{d-1} t^{d-1})).
fn reduce_mod_min_poly(v: &mut Vec<BigRational>, min_poly: &[BigRational]) {
    let d = min_poly.len() - 1;
    for k in (d..v.len()).rev() {
        if v[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[k], BigRational::zero());
        for i in 0..d {
            if !min_poly[i].is_zero() {
                let t = &c * &min_poly[i];
                v[k - d + i] -= t;
            }
        }
    }
    v.truncate(d);
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn vec_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db)];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / lead;
        for i in 0..=db {
            let t = &c * &b[i];
            r[k + i] -= t;
        }
        q[k] = c;
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    (q, r)
}

/// For coprime a, m returns s with s*a = 1 (mod m).
fn ext_euclid_inverse(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    // invariants: r0 = s0*a (mod m), r1 = s1*a (mod m)
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    let mut s0: Vec<BigRational> = vec![];
    let mut s1 = vec![BigRational::one()];
    while !r1.is_empty() && r1.len() > 1 {
        let (q, r) = vec_divrem(&r0, &r1);
        let qs = vec_mul(&q, &s1);
        let s = vec_sub(&s0, &qs);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    assert!(
        !r1.is_empty(),
        "element not invertible: modulus is reducible"
    );
    // r1 is a nonzero constant: s1 * a = r1 (mod m)
    let c = r1[0].recip();
    let (_, rem) = if s1.len() >= m.len() {
        vec_divrem(&s1, m)
    } else {
        (vec![], s1)
    };
    rem.into_iter().map(|x| x * &c).collect()
}

fn vec_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn vec_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(x - y);
    }
    trim(out)
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::add(self, rhs)
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::sub(self, rhs)
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::mul(self, rhs)
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

/// Prints a rational in the expression grammar: "3", "-2", "3/4".
pub(crate) fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl FieldElement {
    /// True when the element is a single signed monomial q*t^k (or a plain
    /// rational), so it can be printed without enclosing parentheses.
    pub(crate) fn is_single_term(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }

    /// True when the leading printed term carries a minus sign.
    pub(crate) fn leading_is_negative(&self) -> bool {
        self.coeffs
            .iter()
            .rev()
            .find(|c| !c.is_zero())
            .map_or(false, |c| c.is_negative())
    }

    fn format_monomial(r: &BigRational, name: &str, k: usize, out: &mut String) {
        let mag = r.abs();
        if k == 0 {
            out.push_str(&format_rational(&mag));
            return;
        }
        if !mag.is_one() {
            out.push_str(&format_rational(&mag));
            out.push('*');
        }
        out.push_str(name);
        if k > 1 {
            out.push_str(&format!("^{}", k));
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some(r) = self.rational_value() {
            if r.is_negative() {
                return write!(f, "-{}", format_rational(&r.abs()));
            }
            return write!(f, "{}", format_rational(&r));
        }
        let name = self.field.generator_name().unwrap();
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    out.push('-');
                }
                first = false;
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            Self::format_monomial(c, name, k, &mut out);
        }
        write!(f, "{}", out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn q() -> Field {
        Field::rationals()
    }

    fn qpoly(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_integers(&q(), coeffs)
    }

    #[test]
    fn make_field_validates() {
        // t^3 - 2 is irreducible, degree 3
        let k = Field::extension(&qpoly(&[-2, 0, 0, 1]), "w").unwrap();
        assert_eq!(k.degree(), 3);
        // t^2 + 1 is irreducible, degree 2
        let k = Field::extension(&qpoly(&[1, 0, 1]), "i").unwrap();
        assert_eq!(k.degree(), 2);
        // t^2 - 1 = (t-1)(t+1)
        let err = Field::extension(&qpoly(&[-1, 0, 1]), "e").unwrap_err();
        assert!(matches!(err, Error::ReduciblePolynomial(_)));
        // 2t^2 + 2 is not monic
        let err = Field::extension(&qpoly(&[2, 0, 2]), "e").unwrap_err();
        assert_eq!(err, Error::NotMonic);
    }

    #[test]
    fn inverse_of_generator_in_cubic_field() {
        // in Q[w]/(w^3 - 2): 1/w = w^2/2
        let k = Field::extension(&qpoly(&[-2, 0, 0, 1]), "w").unwrap();
        let w = k.generator().unwrap();
        let inv = w.inv().unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(inv, w.mul(&w).scale(&half));
        assert!(w.mul(&inv).is_one());
    }

    #[test]
    fn gaussian_product() {
        // (1+i)(1-i) = 2
        let k = Field::extension(&qpoly(&[1, 0, 1]), "i").unwrap();
        let i = k.generator().unwrap();
        let a = k.one().add(&i);
        let b = k.one().sub(&i);
        assert_eq!(a.mul(&b), k.integer(2));
    }

    #[test]
    fn power_in_cyclotomic_field() {
        // in Q[a]/(a^2+a+1): (2a+1)^2 = -3
        let k = Field::extension(&qpoly(&[1, 1, 1]), "a").unwrap();
        let a = k.generator().unwrap();
        let x = a.scale(&BigRational::from(BigInt::from(2))).add(&k.one());
        assert_eq!(x.pow(2).unwrap(), k.integer(-3));
    }

    #[test]
    fn pow_negative_exponent() {
        let k = Field::extension(&qpoly(&[-2, 0, 0, 1]), "w").unwrap();
        let x = k.generator().unwrap().add(&k.integer(3));
        for e in 1..=3 {
            assert!(x.pow(e).unwrap().mul(&x.pow(-e).unwrap()).is_one());
        }
        assert_eq!(k.zero().pow(-1).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn element_order_is_total() {
        let k = Field::extension(&qpoly(&[1, 0, 1]), "i").unwrap();
        let i = k.generator().unwrap();
        let xs = vec![k.zero(), k.one(), i.clone(), i.neg(), k.integer(-3)];
        for a in &xs {
            for b in &xs {
                match a.cmp(b) {
                    Ordering::Equal => assert_eq!(a, b),
                    Ordering::Less => assert_eq!(b.cmp(a), Ordering::Greater),
                    Ordering::Greater => assert_eq!(b.cmp(a), Ordering::Less),
                }
            }
        }
    }

    #[test]
    fn display_roundtrips_manually() {
        let k = Field::extension(&qpoly(&[1, 1, 1]), "a").unwrap();
        let a = k.generator().unwrap();
        let x = a
            .scale(&BigRational::new(BigInt::from(-3), BigInt::from(2)))
            .add(&k.one());
        assert_eq!(format!("{}", x), "-3/2*a + 1");
    }
}
