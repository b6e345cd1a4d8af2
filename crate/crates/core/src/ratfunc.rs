//! Rational functions, Moebius units, composition, normal forms and
//! decomposition into indecomposable components.
//!
//! A [`RationalFunction`] is stored reduced with a monic denominator; its
//! degree is max(deg num, deg den), and constants have degree 0. A
//! [`MoebiusUnit`] is an invertible degree-1 map (ax+b)/(cx+d), scaled so
//! the first nonzero entry of (a, b, c, d) is 1.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::factor::factor_polynomial;
use crate::numfield::{Field, FieldElement};
use crate::poly::{format_poly, Matrix, Polynomial};

/// Maximum function degree accepted by the complete-chain search.
pub const MAX_CHAIN_DEGREE: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Builds num/den reduced by their gcd, denominator made monic.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        assert_eq!(
            num.field(),
            den.field(),
            "field mismatch in rational function"
        );
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() || num.is_zero() {
            (num.clone(), den.clone())
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        if num.is_zero() {
            den = Polynomial::one(den.field());
        } else if !den.is_monic() {
            let lc_inv = den.leading_coeff().unwrap().inv()?;
            den = den.scale(&lc_inv);
            num = num.scale(&lc_inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_polynomial(p: Polynomial) -> RationalFunction {
        let one = Polynomial::one(p.field());
        RationalFunction { num: p, den: one }
    }

    pub fn x(field: &Field) -> RationalFunction {
        RationalFunction::from_polynomial(Polynomial::x(field))
    }

    pub fn constant(c: FieldElement) -> RationalFunction {
        RationalFunction::from_polynomial(Polynomial::constant(c))
    }

    pub fn from_integer_coeffs(
        field: &Field,
        num: &[i64],
        den: &[i64],
    ) -> Result<RationalFunction> {
        RationalFunction::new(
            Polynomial::from_integers(field, num),
            Polynomial::from_integers(field, den),
        )
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.den.field()
    }

    /// max(deg num, deg den); constants (including zero) have degree 0.
    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn constant_value(&self) -> Option<FieldElement> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Value at a point; None at a pole.
    pub fn eval(&self, a: &FieldElement) -> Option<FieldElement> {
        let d = self.den.eval(a);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(a).div(&d).expect("nonzero denominator value"))
    }

    // ---- field operations on K(x) ----

    pub fn add(&self, other: &RationalFunction) -> Result<RationalFunction> {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RationalFunction::new(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if other.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        RationalFunction::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn pow(&self, e: u32) -> Result<RationalFunction> {
        RationalFunction::new(self.num.pow(e as usize), self.den.pow(e as usize))
    }

    pub fn scale(&self, c: &FieldElement) -> RationalFunction {
        if c.is_zero() {
            return RationalFunction::constant(self.field().zero());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Functional composition self(g(x)); degree is multiplicative.
    pub fn compose(&self, g: &RationalFunction) -> Result<RationalFunction> {
        if self.field() != g.field() {
            return Err(Error::FieldMismatch);
        }
        if self.is_constant() || g.is_constant() {
            return Err(Error::ConstantInput);
        }
        let n = self.degree();
        // homogenize both parts of self with g = p/q to total degree n
        let p = &g.num;
        let q = &g.den;
        let mut qpow = Vec::with_capacity(n + 1);
        qpow.push(Polynomial::one(self.field()));
        for i in 0..n {
            qpow.push(qpow[i].mul(q));
        }
        let mut ppow = Vec::with_capacity(n + 1);
        ppow.push(Polynomial::one(self.field()));
        for i in 0..n {
            ppow.push(ppow[i].mul(p));
        }
        let mut num = Polynomial::zero(self.field());
        let mut den = Polynomial::zero(self.field());
        for i in 0..=n {
            let basis = ppow[i].mul(&qpow[n - i]);
            let cn = self.num.coeff(i);
            if !cn.is_zero() {
                num = num.add(&basis.scale(&cn));
            }
            let cd = self.den.coeff(i);
            if !cd.is_zero() {
                den = den.add(&basis.scale(&cd));
            }
        }
        let out = RationalFunction::new(num, den)?;
        debug_assert_eq!(out.degree(), self.degree() * g.degree());
        Ok(out)
    }

    /// Embeds a function over Q into a larger coefficient field.
    pub fn lift_to(&self, field: &Field) -> RationalFunction {
        RationalFunction {
            num: self.num.lift_to(field),
            den: self.den.lift_to(field),
        }
    }

    /// Deterministic order: degree, then numerator, then denominator.
    pub fn cmp_order(&self, other: &RationalFunction) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.num.cmp_order(&other.num))
            .then_with(|| self.den.cmp_order(&other.den))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// An invertible degree-1 map (ax+b)/(cx+d), ad - bc != 0, canonically
/// scaled so that the first nonzero of (a, b, c, d) equals 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusUnit {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    d: FieldElement,
}

impl MoebiusUnit {
    pub fn new(
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
        d: FieldElement,
    ) -> Result<MoebiusUnit> {
        let det = a.mul(&d).sub(&b.mul(&c));
        if det.is_zero() {
            return Err(Error::NotAUnit("zero determinant".into()));
        }
        let mut u = MoebiusUnit { a, b, c, d };
        u.canonicalize();
        Ok(u)
    }

    fn canonicalize(&mut self) {
        let lead = [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .find(|e| !e.is_zero())
            .expect("unit has a nonzero entry")
            .clone();
        if lead.is_one() {
            return;
        }
        let inv = lead.inv().expect("nonzero entry");
        self.a = self.a.mul(&inv);
        self.b = self.b.mul(&inv);
        self.c = self.c.mul(&inv);
        self.d = self.d.mul(&inv);
    }

    pub fn identity(field: &Field) -> MoebiusUnit {
        MoebiusUnit {
            a: field.one(),
            b: field.zero(),
            c: field.zero(),
            d: field.one(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn entries(&self) -> (&FieldElement, &FieldElement, &FieldElement, &FieldElement) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    /// Composition self(other(x)), the matrix product.
    pub fn compose(&self, other: &MoebiusUnit) -> MoebiusUnit {
        assert_eq!(
            self.field(),
            other.field(),
            "field mismatch in unit composition"
        );
        let a = self.a.mul(&other.a).add(&self.b.mul(&other.c));
        let b = self.a.mul(&other.b).add(&self.b.mul(&other.d));
        let c = self.c.mul(&other.a).add(&self.d.mul(&other.c));
        let d = self.c.mul(&other.b).add(&self.d.mul(&other.d));
        let mut u = MoebiusUnit { a, b, c, d };
        u.canonicalize();
        u
    }

    /// The compositional inverse (dx - b)/(-cx + a).
    pub fn inverse(&self) -> MoebiusUnit {
        let mut u = MoebiusUnit {
            a: self.d.clone(),
            b: self.b.neg(),
            c: self.c.neg(),
            d: self.a.clone(),
        };
        u.canonicalize();
        u
    }

    /// Applies the map to a field element; errors at the pole.
    pub fn apply(&self, t: &FieldElement) -> Result<FieldElement> {
        let den = self.c.mul(t).add(&self.d);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.a.mul(t).add(&self.b).div(&den)
    }

    pub fn to_rf(&self) -> RationalFunction {
        let field = self.field();
        let num = Polynomial::from_coeffs(field, vec![self.b.clone(), self.a.clone()]);
        let den = Polynomial::from_coeffs(field, vec![self.d.clone(), self.c.clone()]);
        RationalFunction::new(num, den).expect("unit denominator is nonzero")
    }

    pub fn from_rf(f: &RationalFunction) -> Result<MoebiusUnit> {
        if f.degree() != 1 {
            return Err(Error::NotAUnit(format!("degree {} function", f.degree())));
        }
        MoebiusUnit::new(
            f.num.coeff(1),
            f.num.coeff(0),
            f.den.coeff(1),
            f.den.coeff(0),
        )
    }

    /// Order in the composition group, if at most `limit`.
    pub fn order(&self, limit: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = self.compose(&acc);
        }
        None
    }
}

impl PartialOrd for MoebiusUnit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MoebiusUnit {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.a, &self.b, &self.c, &self.d).cmp(&(&other.a, &other.b, &other.c, &other.d))
    }
}

impl fmt::Display for MoebiusUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rf())
    }
}

/// A single decomposition step f = left(right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub left: RationalFunction,
    pub right: RationalFunction,
}

impl Decomposition {
    pub fn target(&self) -> Result<RationalFunction> {
        self.left.compose(&self.right)
    }
}

/// A complete decomposition f = c_1 o c_2 o ... o c_r with every component
/// indecomposable of degree >= 2 (or a single indecomposable component).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionChain {
    pub components: Vec<RationalFunction>,
}

impl DecompositionChain {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Left-to-right composition of the components.
    pub fn recompose(&self) -> Result<RationalFunction> {
        let mut it = self.components.iter();
        let mut acc = it.next().ok_or(Error::ConstantInput)?.clone();
        for c in it {
            acc = acc.compose(c)?;
        }
        Ok(acc)
    }

    /// Right tails c_{j+1} o ... o c_r for j = 1..r-1: generators of the
    /// proper intermediate fields K(f) < K(t) < K(x).
    pub fn intermediate_tails(&self) -> Result<Vec<RationalFunction>> {
        let r = self.components.len();
        let mut tails = vec![];
        if r < 2 {
            return Ok(tails);
        }
        let mut acc = self.components[r - 1].clone();
        tails.push(acc.clone());
        for j in (1..r - 1).rev() {
            acc = self.components[j].compose(&acc)?;
            tails.push(acc.clone());
        }
        tails.reverse();
        Ok(tails)
    }
}

/// deg f_N > deg f_D and f_N(0) = 0.
pub fn is_normal_form(f: &RationalFunction) -> Result<bool> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let dn = f.num.degree().unwrap_or(0);
    let dd = f.den.degree().unwrap_or(0);
    Ok(!f.num.is_zero() && dn > dd && f.num.coeff(0).is_zero())
}

/// Deterministic units (u, v) with u o f o v in normal form.
///
/// Step 1 fixes deg num > deg den by a left 1/(x-a) (a the leading
/// coefficient ratio) or 1/x; step 2 right-composes x+b with b the least
/// non-negative integer that is not a root of the denominator; step 3
/// left-composes x minus the value at 0.
pub fn normal_form(f: &RationalFunction) -> Result<(MoebiusUnit, MoebiusUnit, RationalFunction)> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let field = f.field().clone();
    let mut cur = f.clone();
    let mut u = MoebiusUnit::identity(&field);

    let dn = cur.num.degree().unwrap_or(0);
    let dd = cur.den.degree().unwrap_or(0);
    if dn <= dd {
        let u1 = if dn == dd {
            let a = cur
                .num
                .leading_coeff()
                .unwrap()
                .div(cur.den.leading_coeff().unwrap())?;
            // 1/(x - a)
            MoebiusUnit::new(field.zero(), field.one(), field.one(), a.neg())?
        } else {
            // 1/x
            MoebiusUnit::new(field.zero(), field.one(), field.one(), field.zero())?
        };
        cur = u1.to_rf().compose(&cur)?;
        u = u1;
    }

    let mut b: i64 = 0;
    while cur.den.eval(&field.integer(b)).is_zero() {
        b += 1;
    }
    let v = MoebiusUnit::new(field.one(), field.integer(b), field.zero(), field.one())?;
    if b != 0 {
        cur = cur.compose(&v.to_rf())?;
    }

    let value_at_zero = cur.num.coeff(0).div(&cur.den.coeff(0))?;
    if !value_at_zero.is_zero() {
        let u2 = MoebiusUnit::new(field.one(), value_at_zero.neg(), field.zero(), field.one())?;
        cur = cur.sub(&RationalFunction::constant(value_at_zero))?;
        u = u2.compose(&u);
    }

    debug_assert!(is_normal_form(&cur)?);
    debug_assert_eq!(
        u.to_rf().compose(&f.compose(&v.to_rf())?)?,
        cur,
        "normal form units do not recompose"
    );
    Ok((u, v, cur))
}

/// Solves f = g o h for g via the homogeneous linear system in the
/// coefficients of g. None when no such g exists.
pub fn left_solve(f: &RationalFunction, h: &RationalFunction) -> Result<Option<RationalFunction>> {
    if f.is_constant() || h.is_constant() {
        return Err(Error::ConstantInput);
    }
    if f.field() != h.field() {
        return Err(Error::FieldMismatch);
    }
    let df = f.degree();
    let dh = h.degree();
    if df % dh != 0 {
        return Err(Error::DegreeMismatch(format!(
            "deg h = {} does not divide deg f = {}",
            dh, df
        )));
    }
    let k = df / dh;
    let field = f.field().clone();
    let mut qpow = vec![Polynomial::one(&field)];
    let mut ppow = vec![Polynomial::one(&field)];
    for i in 0..k {
        qpow.push(qpow[i].mul(&h.den));
        ppow.push(ppow[i].mul(&h.num));
    }
    let basis: Vec<Polynomial> = (0..=k).map(|i| ppow[i].mul(&qpow[k - i])).collect();
    // unknowns: g_N coefficients n_0..n_k, then g_D coefficients d_0..d_k;
    // equation: f_D * sum(n_i basis_i) - f_N * sum(d_i basis_i) = 0
    let col_n: Vec<Polynomial> = basis.iter().map(|p| f.den.mul(p)).collect();
    let col_d: Vec<Polynomial> = basis.iter().map(|p| f.num.mul(p).neg()).collect();
    let max_deg = col_n
        .iter()
        .chain(col_d.iter())
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0);
    let mut m = Matrix::zeros(&field, max_deg + 1, 2 * (k + 1));
    for (j, p) in col_n.iter().enumerate() {
        for r in 0..=max_deg {
            m.set(r, j, p.coeff(r));
        }
    }
    for (j, p) in col_d.iter().enumerate() {
        for r in 0..=max_deg {
            m.set(r, k + 1 + j, p.coeff(r));
        }
    }
    for vec in m.nullspace() {
        let gn = Polynomial::from_coeffs(&field, vec[..=k].to_vec());
        let gd = Polynomial::from_coeffs(&field, vec[k + 1..].to_vec());
        if gd.is_zero() {
            continue;
        }
        let Ok(g) = RationalFunction::new(gn, gd) else {
            continue;
        };
        if g.is_constant() {
            continue;
        }
        if g.compose(h)? == *f {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// All normal-form right-component candidates of a normal-form function:
/// monic divisor pairs h_N | f_N, h_D | f_D with x | h_N,
/// deg h_N > deg h_D, gcd(h_N, h_D) = 1 and 1 < deg h | deg f, sorted.
pub fn right_candidates(fbar: &RationalFunction) -> Result<Vec<RationalFunction>> {
    if !is_normal_form(fbar)? {
        return Err(Error::NotNormalForm);
    }
    let deg = fbar.degree();
    let num_divs = monic_divisors(&fbar.num)?;
    let den_divs = monic_divisors(&fbar.den)?;
    let mut out = vec![];
    for hn in &num_divs {
        let dn = match hn.degree() {
            Some(d) if d > 1 && d < deg && deg % d == 0 => d,
            _ => continue,
        };
        if !hn.coeff(0).is_zero() {
            continue;
        }
        for hd in &den_divs {
            let dd = hd.degree().unwrap_or(0);
            if dd >= dn {
                continue;
            }
            if !hn.gcd(hd).is_one() {
                continue;
            }
            out.push(RationalFunction {
                num: hn.clone(),
                den: hd.clone(),
            });
        }
    }
    out.sort_by(|a, b| a.cmp_order(b));
    Ok(out)
}

/// All monic divisors of a polynomial, from its irreducible factorization.
fn monic_divisors(f: &Polynomial) -> Result<Vec<Polynomial>> {
    let field = f.field().clone();
    if f.is_constant() {
        return Ok(vec![Polynomial::one(&field)]);
    }
    let fact = factor_polynomial(f)?;
    let mut divs = vec![Polynomial::one(&field)];
    for (g, e) in &fact.factors {
        let mut next = Vec::with_capacity(divs.len() * (e + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = acc.mul(g);
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    Ok(divs)
}

/// One decomposition step: all inequivalent nontrivial (g, h) with
/// f = g o h. Empty exactly when f is indecomposable (for non-unit f).
pub fn decompose_once(f: &RationalFunction) -> Result<Vec<Decomposition>> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    if f.degree() == 1 {
        return Ok(vec![]);
    }
    let (u, v, fbar) = normal_form(f)?;
    let u_inv_rf = u.inverse().to_rf();
    let v_inv_rf = v.inverse().to_rf();
    let mut out: Vec<Decomposition> = vec![];
    for h in right_candidates(&fbar)? {
        let Some(g) = left_solve(&fbar, &h)? else {
            continue;
        };
        let left = u_inv_rf.compose(&g)?;
        let right = h.compose(&v_inv_rf)?;
        if out
            .iter()
            .any(|d| same_field(&d.right, &right).map_or(false, |w| w.is_some()))
        {
            continue;
        }
        debug_assert_eq!(left.compose(&right)?, *f);
        out.push(Decomposition { left, right });
    }
    Ok(out)
}

fn is_indecomposable(f: &RationalFunction) -> Result<bool> {
    let d = f.degree();
    if d <= 1 {
        return Ok(false);
    }
    if is_prime(d) {
        return Ok(true);
    }
    Ok(decompose_once(f)?.is_empty())
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// All complete decomposition chains of f up to equivalence (chains are
/// deduplicated by unit-equivalence of their intermediate-field towers).
pub fn complete_chains(f: &RationalFunction) -> Result<Vec<DecompositionChain>> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    if f.degree() > MAX_CHAIN_DEGREE {
        return Err(Error::DegreeTooLarge(f.degree(), MAX_CHAIN_DEGREE));
    }
    let raw = chains_rec(f)?;
    let mut chains: Vec<DecompositionChain> = raw
        .into_iter()
        .map(|components| DecompositionChain { components })
        .collect();
    chains.sort_by(|a, b| {
        a.len().cmp(&b.len()).then_with(|| {
            let da: Vec<usize> = a.components.iter().map(|c| c.degree()).collect();
            let db: Vec<usize> = b.components.iter().map(|c| c.degree()).collect();
            da.cmp(&db).then_with(|| {
                for (x, y) in a.components.iter().zip(&b.components) {
                    let ord = x.cmp_order(y);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            })
        })
    });
    let mut kept: Vec<DecompositionChain> = vec![];
    for chain in chains {
        debug_assert_eq!(chain.recompose()?, *f);
        let mut duplicate = false;
        for prev in &kept {
            if equivalent_chains(prev, &chain)? {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            kept.push(chain);
        }
    }
    Ok(kept)
}

fn chains_rec(f: &RationalFunction) -> Result<Vec<Vec<RationalFunction>>> {
    let decs = decompose_once(f)?;
    if decs.is_empty() {
        return Ok(vec![vec![f.clone()]]);
    }
    let mut out = vec![];
    for d in decs {
        if !is_indecomposable(&d.right)? {
            continue;
        }
        for mut chain in chains_rec(&d.left)? {
            chain.push(d.right.clone());
            out.push(chain);
        }
    }
    debug_assert!(
        !out.is_empty(),
        "decomposable function with no complete chain"
    );
    Ok(out)
}

/// Chains are equivalent when they have the same length and their towers of
/// intermediate fields agree up to units.
pub fn equivalent_chains(c1: &DecompositionChain, c2: &DecompositionChain) -> Result<bool> {
    if c1.len() != c2.len() {
        return Ok(false);
    }
    let t1 = c1.intermediate_tails()?;
    let t2 = c2.intermediate_tails()?;
    for (a, b) in t1.iter().zip(&t2) {
        if same_field(a, b)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The unit realizing h1 = u o h2 and g1 = g2 o u^-1 when the two
/// decompositions of the same target are equivalent.
pub fn equivalent_decompositions(
    d1: &Decomposition,
    d2: &Decomposition,
) -> Result<Option<MoebiusUnit>> {
    if d1.target()? != d2.target()? {
        return Err(Error::NotSameTarget);
    }
    let Some(u) = same_field(&d1.right, &d2.right)? else {
        return Ok(None);
    };
    let g2u = d2.left.compose(&u.inverse().to_rf())?;
    if g2u == d1.left {
        Ok(Some(u))
    } else {
        Ok(None)
    }
}

/// K(f1) = K(f2) test: returns u with f1 = u o f2 when the generated
/// fields coincide, None otherwise.
pub fn same_field(f1: &RationalFunction, f2: &RationalFunction) -> Result<Option<MoebiusUnit>> {
    if f1.field() != f2.field() {
        return Err(Error::FieldMismatch);
    }
    if f1.is_constant() || f2.is_constant() {
        return Err(Error::ConstantInput);
    }
    if f1.degree() != f2.degree() {
        return Ok(None);
    }
    if f1 == f2 {
        return Ok(Some(MoebiusUnit::identity(f1.field())));
    }
    let field = f1.field().clone();
    // f1 = (a f2 + b)/(c f2 + d):
    // f1_N (c f2_N + d f2_D) - f1_D (a f2_N + b f2_D) = 0
    let cols = [
        f1.den.mul(&f2.num).neg(), // a
        f1.den.mul(&f2.den).neg(), // b
        f1.num.mul(&f2.num),       // c
        f1.num.mul(&f2.den),       // d
    ];
    let max_deg = cols.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let mut m = Matrix::zeros(&field, max_deg + 1, 4);
    for (j, p) in cols.iter().enumerate() {
        for r in 0..=max_deg {
            m.set(r, j, p.coeff(r));
        }
    }
    for vec in m.nullspace() {
        let Ok(u) = MoebiusUnit::new(
            vec[0].clone(),
            vec[1].clone(),
            vec[2].clone(),
            vec[3].clone(),
        ) else {
            continue;
        };
        if u.to_rf().compose(f2)? == *f1 {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// Ritt exchange-move shape test: f1 o g1 = f2 o g2 with deg f1 = deg g2
/// and coprime component degrees.
pub fn is_bidecomposition(
    f1: &RationalFunction,
    g1: &RationalFunction,
    f2: &RationalFunction,
    g2: &RationalFunction,
) -> bool {
    if [f1, g1, f2, g2].iter().any(|f| f.is_constant()) {
        return false;
    }
    if f1.degree() != g2.degree() {
        return false;
    }
    if gcd_usize(f1.degree(), g1.degree()) != 1 {
        return false;
    }
    match (f1.compose(g1), f2.compose(g2)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

/// Bound for the degree of an extension containing all decompositions:
/// (deg fbar_N - 1)! * max(1, deg fbar_D)! after normalization (the forced
/// 0 root of fbar_N is already rational).
pub fn extension_degree_bound(f: &RationalFunction) -> Result<BigUint> {
    let (_, _, fbar) = normal_form(f)?;
    let dn = fbar.num.degree().unwrap();
    let dd = fbar.den.degree().unwrap_or(0);
    Ok(factorial(dn - 1) * factorial(dd.max(1)))
}

fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Formats a function in the expression grammar with a chosen variable.
pub fn format_rf(f: &RationalFunction, var: &str) -> String {
    if f.den().is_one() {
        format_poly(f.num(), var)
    } else {
        format!(
            "({})/({})",
            format_poly(f.num(), var),
            format_poly(f.den(), var)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn p(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_integers(&q(), coeffs)
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::from_integer_coeffs(&q(), num, den).unwrap()
    }

    #[test]
    fn make_reduces_and_normalizes() {
        // (x^2-1)/(x-1) = x+1
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), rf(&[1, 1], &[1]));
        // 2x/2 = x
        assert_eq!(rf(&[0, 2], &[2]), RationalFunction::x(&q()));
        assert_eq!(
            RationalFunction::new(p(&[1]), Polynomial::zero(&q())).unwrap_err(),
            Error::ZeroDenominator
        );
    }

    #[test]
    fn degree12_function_stored_as_given() {
        let num = p(&[0, 0, 0, 1])
            .mul(&p(&[6, 1]).pow(3))
            .mul(&p(&[36, -6, 1]).pow(3));
        let den = p(&[-3, 1]).pow(3).mul(&p(&[9, 3, 1]).pow(3));
        let f = RationalFunction::new(num.clone(), den.clone()).unwrap();
        assert_eq!(f.num(), &num);
        assert_eq!(f.den(), &den);
        assert_eq!(f.degree(), 12);
        assert!(is_normal_form(&f).unwrap());
    }

    #[test]
    fn compose_degree12() {
        let g1 = rf(&[0, 0, 0, 1], &[1]);
        let g2 = rf(&[0, -12, 1], &[-3, 1]);
        let g3 = rf(&[0, 6, 1], &[-3, 1]);
        let f = g1.compose(&g2.compose(&g3).unwrap()).unwrap();
        let num = p(&[0, 0, 0, 1])
            .mul(&p(&[6, 1]).pow(3))
            .mul(&p(&[36, -6, 1]).pow(3));
        let den = p(&[-3, 1]).pow(3).mul(&p(&[9, 3, 1]).pow(3));
        assert_eq!(f, RationalFunction::new(num, den).unwrap());

        let h1 = RationalFunction::new(p(&[0, 0, 0, 1]).mul(&p(&[24, 1])), p(&[-3, 1])).unwrap();
        let h2 = RationalFunction::new(p(&[0, 1]).mul(&p(&[36, -6, 1])), p(&[9, 3, 1])).unwrap();
        assert_eq!(h1.compose(&h2).unwrap(), f);

        let x2 = rf(&[0, 0, 1], &[1]);
        assert_eq!(x2.compose(&x2).unwrap(), rf(&[0, 0, 0, 0, 1], &[1]));
    }

    #[test]
    fn unit_inverse_of_paper_example() {
        // inverse of (x-1)/x is 1/(1-x)
        let u = MoebiusUnit::from_rf(&rf(&[-1, 1], &[0, 1])).unwrap();
        let inv = u.inverse();
        assert!(u.compose(&inv).is_identity());
        assert!(inv.compose(&u).is_identity());
        let expect = MoebiusUnit::from_rf(&rf(&[1], &[1, -1])).unwrap();
        assert_eq!(inv, expect);
    }

    #[test]
    fn unit_apply_and_pole() {
        let u = MoebiusUnit::from_rf(&rf(&[1], &[1, -1])).unwrap(); // 1/(1-x)
        assert_eq!(u.apply(&q().integer(0)).unwrap(), q().integer(1));
        assert_eq!(u.apply(&q().integer(1)).unwrap_err(), Error::DivisionByZero);
        let inv = u.inverse();
        let y = u.apply(&q().integer(3)).unwrap();
        assert_eq!(inv.apply(&y).unwrap(), q().integer(3));
    }

    #[test]
    fn values_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Field>();
        assert_send_sync::<FieldElement>();
        assert_send_sync::<Polynomial>();
        assert_send_sync::<RationalFunction>();
        assert_send_sync::<MoebiusUnit>();
    }

    #[test]
    fn unit_compose_and_from_rf() {
        let a = MoebiusUnit::from_rf(&rf(&[1, 1], &[1])).unwrap(); // x+1
        let b = MoebiusUnit::from_rf(&rf(&[-1, 1], &[1])).unwrap(); // x-1
        assert!(a.compose(&b).is_identity());
        assert!(matches!(
            MoebiusUnit::from_rf(&rf(&[0, 0, 1], &[1])).unwrap_err(),
            Error::NotAUnit(_)
        ));
    }

    #[test]
    fn normal_form_checks() {
        assert!(is_normal_form(&rf(&[0, 0, 1], &[1, 1])).unwrap());
        assert!(!is_normal_form(&rf(&[1, 1], &[1])).unwrap());

        // x + 1/x normalizes to (x-2, x+1, x^2/(x+1))
        let f = rf(&[1, 0, 1], &[0, 1]);
        let (u, v, fbar) = normal_form(&f).unwrap();
        assert_eq!(fbar, rf(&[0, 0, 1], &[1, 1]));
        assert_eq!(u, MoebiusUnit::from_rf(&rf(&[-2, 1], &[1])).unwrap());
        assert_eq!(v, MoebiusUnit::from_rf(&rf(&[1, 1], &[1])).unwrap());

        // x^2 is already normal
        let f = rf(&[0, 0, 1], &[1]);
        let (u, v, fbar) = normal_form(&f).unwrap();
        assert!(u.is_identity() && v.is_identity());
        assert_eq!(fbar, f);
    }

    #[test]
    fn left_solve_cases() {
        // x^4 = x^2 o x^2
        let f = rf(&[0, 0, 0, 0, 1], &[1]);
        let h = rf(&[0, 0, 1], &[1]);
        assert_eq!(left_solve(&f, &h).unwrap().unwrap(), h);
        // no quadratic g with g(x^2 + x) = x^4
        let h2 = rf(&[0, 1, 1], &[1]);
        assert!(left_solve(&f, &h2).unwrap().is_none());
        // degree obstruction
        let err = left_solve(&rf(&[0, 0, 0, 1], &[1]), &h).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch(_)));
    }

    #[test]
    fn left_solve_worked_example() {
        // f = (x^3-3x+1)^2 / (x (x^3-x^2-2x+1)(x-1)), h = (x^3-3x+1)/((x-1)x)
        let num = p(&[1, -3, 0, 1]).pow(2);
        let den = p(&[0, 1]).mul(&p(&[1, -2, -1, 1])).mul(&p(&[-1, 1]));
        let f = RationalFunction::new(num, den).unwrap();
        let h = RationalFunction::new(p(&[1, -3, 0, 1]), p(&[-1, 1]).mul(&p(&[0, 1]))).unwrap();
        let g = left_solve(&f, &h).unwrap().unwrap();
        assert_eq!(g, rf(&[0, 0, 1], &[-1, 1]));
        assert_eq!(g.compose(&h).unwrap(), f);
    }

    #[test]
    fn right_candidates_degree12() {
        let num = p(&[0, 0, 0, 1])
            .mul(&p(&[6, 1]).pow(3))
            .mul(&p(&[36, -6, 1]).pow(3));
        let den = p(&[-3, 1]).pow(3).mul(&p(&[9, 3, 1]).pow(3));
        let f = RationalFunction::new(num, den).unwrap();
        let cands = right_candidates(&f).unwrap();
        let g3 = rf(&[0, 6, 1], &[-3, 1]);
        let h2 = RationalFunction::new(p(&[0, 1]).mul(&p(&[36, -6, 1])), p(&[9, 3, 1])).unwrap();
        assert!(cands.contains(&g3));
        assert!(cands.contains(&h2));
    }

    #[test]
    fn right_candidates_x4() {
        let f = rf(&[0, 0, 0, 0, 1], &[1]);
        let cands = right_candidates(&f).unwrap();
        assert!(cands.contains(&rf(&[0, 0, 1], &[1])));
    }

    #[test]
    fn right_candidates_prime_degree_empty() {
        let f = rf(&[0, 1, 0, 0, 0, 1], &[1]); // x^5 + x
        assert!(right_candidates(&f).unwrap().is_empty());
    }

    #[test]
    fn decompose_once_x4() {
        let f = rf(&[0, 0, 0, 0, 1], &[1]);
        let decs = decompose_once(&f).unwrap();
        let x2 = rf(&[0, 0, 1], &[1]);
        assert!(decs.iter().any(|d| d.left == x2 && d.right == x2));
    }

    #[test]
    fn complete_chains_x8() {
        let f = rf(&[0, 0, 0, 0, 0, 0, 0, 0, 1], &[1]);
        let chains = complete_chains(&f).unwrap();
        assert!(!chains.is_empty());
        for c in &chains {
            assert_eq!(c.len(), 3);
            assert_eq!(c.recompose().unwrap(), f);
        }
    }

    #[test]
    fn complete_chains_indecomposable() {
        let f = rf(&[1, 0, 1], &[0, 1]); // degree 2
        let chains = complete_chains(&f).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].components, vec![f]);
    }

    #[test]
    fn degree_limit_enforced() {
        let mut c = vec![0i64; 66];
        c[65] = 1;
        let f = rf(&c, &[1]);
        assert!(matches!(
            complete_chains(&f).unwrap_err(),
            Error::DegreeTooLarge(65, _)
        ));
    }

    #[test]
    fn equivalent_decompositions_cases() {
        let x2 = rf(&[0, 0, 1], &[1]);
        let d = Decomposition {
            left: x2.clone(),
            right: x2.clone(),
        };
        let u = equivalent_decompositions(&d, &d).unwrap().unwrap();
        assert!(u.is_identity());

        // f = (x^2+1)^2: (x^2, x^2+1) vs ((x+1)^2, x^2)
        let d1 = Decomposition {
            left: x2.clone(),
            right: rf(&[1, 0, 1], &[1]),
        };
        let d2 = Decomposition {
            left: rf(&[1, 2, 1], &[1]),
            right: x2.clone(),
        };
        let u = equivalent_decompositions(&d1, &d2).unwrap().unwrap();
        assert_eq!(u, MoebiusUnit::from_rf(&rf(&[1, 1], &[1])).unwrap());

        let other = Decomposition {
            left: x2.clone(),
            right: rf(&[0, 0, 0, 1], &[1]),
        };
        assert!(matches!(
            equivalent_decompositions(&d1, &other),
            Err(Error::NotSameTarget)
        ));
    }

    #[test]
    fn same_field_cases() {
        let f1 = rf(&[0, 0, 1], &[1]);
        let f2 = rf(&[3, 0, 2], &[1]);
        let u = same_field(&f1, &f2).unwrap().unwrap();
        assert_eq!(u.to_rf().compose(&f2).unwrap(), f1);
        assert!(same_field(&f1, &rf(&[0, 0, 0, 1], &[1])).unwrap().is_none());
    }

    #[test]
    fn bidecomposition_cases() {
        let x2 = rf(&[0, 0, 1], &[1]);
        let x3 = rf(&[0, 0, 0, 1], &[1]);
        assert!(is_bidecomposition(&x2, &x3, &x3, &x2));
        assert!(!is_bidecomposition(&x2, &x2, &x2, &x2));
        assert!(!is_bidecomposition(&x2, &x3, &x2, &x3));
    }

    #[test]
    fn extension_bound_cases() {
        // degree-4 example: 3! * 3! = 36
        let f = rf(&[-1, -8, 0, -2, 2], &[1, -16, 0, 2, 4]);
        assert_eq!(extension_degree_bound(&f).unwrap(), BigUint::from(36u32));
        let f = rf(&[0, 0, 1], &[1, 1]);
        assert_eq!(extension_degree_bound(&f).unwrap(), BigUint::from(1u32));
        let f = rf(&[0, 0, 1], &[1]);
        assert_eq!(extension_degree_bound(&f).unwrap(), BigUint::from(1u32));
    }
}
