//! Dense univariate polynomial arithmetic over any [`Field`], plus the
//! small exact linear algebra used by the decomposition solvers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numfield::{BigRational, Field, FieldElement};

/// A dense polynomial, lowest degree first, no trailing zeros.
/// The zero polynomial has an empty coefficient list and degree `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero(field: &Field) -> Polynomial {
        Polynomial {
            field: field.clone(),
            coeffs: vec![],
        }
    }

    pub fn one(field: &Field) -> Polynomial {
        Polynomial::constant(field.one())
    }

    pub fn x(field: &Field) -> Polynomial {
        Polynomial {
            field: field.clone(),
            coeffs: vec![field.zero(), field.one()],
        }
    }

    pub fn constant(c: FieldElement) -> Polynomial {
        let field = c.field().clone();
        if c.is_zero() {
            Polynomial::zero(&field)
        } else {
            Polynomial {
                field,
                coeffs: vec![c],
            }
        }
    }

    pub fn from_coeffs(field: &Field, mut coeffs: Vec<FieldElement>) -> Polynomial {
        for c in &coeffs {
            assert_eq!(c.field(), field, "coefficient from a different field");
        }
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial {
            field: field.clone(),
            coeffs,
        }
    }

    /// Convenience constructor from integer coefficients, lowest first.
    pub fn from_integers(field: &Field, coeffs: &[i64]) -> Polynomial {
        let elems = coeffs.iter().map(|&n| field.integer(n)).collect();
        Polynomial::from_coeffs(field, elems)
    }

    pub fn from_rational_coeffs(field: &Field, coeffs: &[BigRational]) -> Polynomial {
        let elems = coeffs
            .iter()
            .map(|r| FieldElement::from_rational(field, r.clone()))
            .collect();
        Polynomial::from_coeffs(field, elems)
    }

    pub fn monomial(c: FieldElement, k: usize) -> Polynomial {
        let field = c.field().clone();
        if c.is_zero() {
            return Polynomial::zero(&field);
        }
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Polynomial { field, coeffs }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().map_or(false, |c| c.is_one())
    }

    fn assert_same_field(&self, other: &Polynomial) {
        assert_eq!(
            self.field, other.field,
            "field mismatch in polynomial arithmetic"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&other.coeff(i)));
        }
        Polynomial::from_coeffs(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_field(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Polynomial::from_coeffs(&self.field, coeffs)
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.field);
        }
        Polynomial {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn pow(&self, mut e: usize) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Euclidean division: a = q*b + r with deg r < deg b.
    pub fn divrem(&self, b: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.assert_same_field(b);
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = b.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Polynomial::zero(&self.field), self.clone()));
        }
        let lead_inv = b.leading_coeff().unwrap().inv()?;
        let mut q = vec![self.field.zero(); r.len() - db];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = r.last().unwrap().mul(&lead_inv);
            if !c.is_zero() {
                for i in 0..=db {
                    let t = c.mul(&b.coeffs[i]);
                    r[k + i] = r[k + i].sub(&t);
                }
                q[k] = c;
            } else {
                r.pop();
                continue;
            }
            while r.last().map_or(false, |x| x.is_zero()) {
                r.pop();
            }
        }
        Ok((
            Polynomial::from_coeffs(&self.field, q),
            Polynomial::from_coeffs(&self.field, r),
        ))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, b: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.divrem(b)?;
        if !r.is_zero() {
            return Err(Error::DegreeMismatch(format!(
                "{} does not divide {}",
                b, self
            )));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divrem(self).map_or(false, |(_, r)| r.is_zero())
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_field(other);
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = std::mem::replace(&mut b, r.monic());
        }
        a
    }

    /// Self divided by its leading coefficient (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &FieldElement) -> FieldElement {
        assert_eq!(a.field(), &self.field, "field mismatch in evaluation");
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&BigRational::from(BigInt::from(i))))
            .collect();
        Polynomial::from_coeffs(&self.field, coeffs)
    }

    /// Composition self(g(x)) by Horner.
    pub fn compose(&self, g: &Polynomial) -> Polynomial {
        self.assert_same_field(g);
        let mut acc = Polynomial::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Polynomial::constant(c.clone()));
        }
        acc
    }

    /// Resultant via the subresultant pseudo-remainder sequence.
    pub fn resultant(&self, other: &Polynomial) -> Result<FieldElement> {
        self.assert_same_field(other);
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut sign_flip = false;
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
            if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
                sign_flip = true;
            }
        }
        let mut g = self.field.one();
        let mut h = self.field.one();
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            if db == 0 {
                // res = lc(b)^(deg a) * h^(1 - deg a) adjustments already folded in
                let mut res = b.coeffs[0].pow(da as i64)?;
                if da > 1 {
                    let hp = h.pow(da as i64 - 1)?;
                    res = res.div(&hp)?;
                }
                if sign_flip {
                    res = res.neg();
                }
                return Ok(res);
            }
            let delta = da - db;
            if da % 2 == 1 && db % 2 == 1 {
                sign_flip = !sign_flip;
            }
            let r = pseudo_rem(&a, &b)?;
            if r.is_zero() {
                // common factor of positive degree
                return Ok(self.field.zero());
            }
            let divisor = g.mul(&h.pow(delta as i64)?);
            a = b;
            b = r.scale(&divisor.inv()?);
            g = a.leading_coeff().unwrap().clone();
            h = if delta == 0 {
                h
            } else {
                // h = g^delta * h^(1-delta)
                g.pow(delta as i64)?.div(&h.pow(delta as i64 - 1)?)?
            };
        }
    }

    /// Yun squarefree decomposition: returns (lc, [(monic squarefree factor,
    /// multiplicity)]) with lc * prod(factor^mult) equal to the input.
    pub fn squarefree_decomposition(&self) -> Result<(FieldElement, Vec<(Polynomial, usize)>)> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let lc = self.leading_coeff().unwrap().clone();
        let f = self.monic();
        if f.is_constant() {
            return Ok((lc, vec![]));
        }
        let df = f.derivative();
        let u = f.gcd(&df);
        let mut b = f.div_exact(&u)?;
        let mut c = df.div_exact(&u)?;
        let mut d = c.sub(&b.derivative());
        let mut out = vec![];
        let mut i = 1usize;
        loop {
            let a = b.gcd(&d);
            if a.degree().map_or(false, |dd| dd > 0) {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a)?;
            if b.is_constant() {
                break;
            }
            c = d.div_exact(&a)?;
            d = c.sub(&b.derivative());
            i += 1;
        }
        Ok((lc, out))
    }

    /// Newton interpolation through distinct points.
    pub fn interpolate(field: &Field, points: &[(FieldElement, FieldElement)]) -> Polynomial {
        // divided differences
        let n = points.len();
        let mut coef: Vec<FieldElement> = points.iter().map(|(_, y)| y.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = coef[i].sub(&coef[i - 1]);
                let den = points[i].0.sub(&points[i - j].0);
                coef[i] = num.div(&den).expect("distinct interpolation nodes");
            }
        }
        let mut result = Polynomial::constant(coef[n - 1].clone());
        for i in (0..n - 1).rev() {
            let x_minus = Polynomial::from_coeffs(field, vec![points[i].0.neg(), field.one()]);
            result = result
                .mul(&x_minus)
                .add(&Polynomial::constant(coef[i].clone()));
        }
        result
    }

    /// For a polynomial over Q: clears denominators and the integer content,
    /// returning (primitive integer coefficients with positive leading
    /// coefficient, rational unit) with self = unit * primitive.
    pub fn to_integer_primitive(&self) -> (Vec<BigInt>, BigRational) {
        assert!(self.field.is_rationals());
        assert!(!self.is_zero());
        let rats: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| c.rational_value().unwrap())
            .collect();
        let mut denom_lcm = BigInt::one();
        for r in &rats {
            denom_lcm = denom_lcm.lcm(r.denom());
        }
        let ints: Vec<BigInt> = rats
            .iter()
            .map(|r| (r * BigRational::from(denom_lcm.clone())).to_integer())
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if content.is_zero() {
            content = BigInt::one();
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
        let unit = BigRational::new(content, denom_lcm);
        (prim, unit)
    }

    pub fn from_integer_coeffs(field: &Field, coeffs: &[BigInt]) -> Polynomial {
        let elems = coeffs
            .iter()
            .map(|c| FieldElement::from_rational(field, BigRational::from(c.clone())))
            .collect();
        Polynomial::from_coeffs(field, elems)
    }

    /// Lifts a polynomial over Q into a larger field coefficient-wise.
    pub fn lift_to(&self, field: &Field) -> Polynomial {
        assert!(self.field.is_rationals());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| FieldElement::from_rational(field, c.rational_value().unwrap()))
            .collect();
        Polynomial::from_coeffs(field, coeffs)
    }

    /// Projects onto Q when every coefficient is rational.
    pub fn try_project_to_rationals(&self) -> Option<Polynomial> {
        let q = Field::rationals();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(FieldElement::from_rational(&q, c.rational_value()?));
        }
        Some(Polynomial::from_coeffs(&q, coeffs))
    }

    /// Deterministic order: by degree, then coefficients from the constant
    /// term upward. No algebraic meaning.
    pub fn cmp_order(&self, other: &Polynomial) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

/// Pseudo-remainder: prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b.
fn pseudo_rem(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let da = a.degree().ok_or(Error::ZeroInput)?;
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    let lc = b.leading_coeff().unwrap().clone();
    let mut r = a.clone();
    let mut shift = da as i64 - db as i64 + 1;
    while !r.is_zero() && r.degree().unwrap() >= db {
        let dr = r.degree().unwrap();
        let c = r.leading_coeff().unwrap().clone();
        // r = lc * r - c * x^(dr-db) * b
        r = r.scale(&lc).sub(&b.mul(&Polynomial::monomial(c, dr - db)));
        shift -= 1;
    }
    if shift > 0 {
        r = r.scale(&lc.pow(shift)?);
    }
    Ok(r)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly(self, "x"))
    }
}

/// Prints a polynomial in the expression grammar with the given variable;
/// output re-parses to the same polynomial.
pub(crate) fn format_poly(p: &Polynomial, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let single = c.is_single_term();
        let neg = single && c.leading_is_negative();
        if first {
            first = false;
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let body = if single {
            let disp = if neg {
                format!("{}", c.neg())
            } else {
                format!("{}", c)
            };
            term_string(&disp, c, k, var, neg)
        } else {
            // multi-term coefficient: parenthesize
            if k == 0 {
                format!("({})", c)
            } else if k == 1 {
                format!("({})*{}", c, var)
            } else {
                format!("({})*{}^{}", c, var, k)
            }
        };
        out.push_str(&body);
    }
    out
}

fn term_string(disp: &str, c: &FieldElement, k: usize, var: &str, negated: bool) -> String {
    let is_unit_mag = if negated {
        c.neg().is_one()
    } else {
        c.is_one()
    };
    // c is a single monomial q*t^j; its display needs no parens under '*'
    if k == 0 {
        disp.to_string()
    } else {
        let var_part = if k == 1 {
            var.to_string()
        } else {
            format!("{}^{}", var, k)
        };
        if is_unit_mag {
            var_part
        } else {
            format!("{}*{}", disp, var_part)
        }
    }
}

/// A rectangular matrix over a field, row major.
#[derive(Clone, Debug)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        assert_eq!(v.field(), &self.field);
        self.data[r * self.cols + c] = v;
    }

    /// Basis of the right kernel {v : Mv = 0} by exact Gauss-Jordan
    /// elimination. Empty when the kernel is trivial.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let mut a = self.data.clone();
        let rows = self.rows;
        let cols = self.cols;
        let at = |a: &Vec<FieldElement>, r: usize, c: usize| a[r * cols + c].clone();
        let mut pivot_cols: Vec<usize> = vec![];
        let mut row = 0usize;
        for col in 0..cols {
            if row >= rows {
                break;
            }
            let mut piv = None;
            for r in row..rows {
                if !at(&a, r, col).is_zero() {
                    piv = Some(r);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            if p != row {
                for c in 0..cols {
                    a.swap(row * cols + c, p * cols + c);
                }
            }
            let inv = at(&a, row, col).inv().expect("pivot nonzero");
            for c in col..cols {
                let v = at(&a, row, c).mul(&inv);
                a[row * cols + c] = v;
            }
            for r in 0..rows {
                if r == row {
                    continue;
                }
                let factor = at(&a, r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..cols {
                    let v = at(&a, r, c).sub(&factor.mul(&at(&a, row, c)));
                    a[r * cols + c] = v;
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        let pivot_set: std::collections::BTreeSet<usize> = pivot_cols.iter().copied().collect();
        let mut basis = vec![];
        for free in 0..cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); cols];
            v[free] = self.field.one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = at(&a, r, free).neg();
            }
            basis.push(v);
        }
        basis
    }
}
