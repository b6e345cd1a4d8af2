//! Fixing groups G(f), fixed fields Fix(H), subgroup lattices, the
//! correspondence between subgroup chains and decomposition chains, and
//! classification of the finite subgroups of PGL2 that occur.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::factor::{roots_in_field, roots_of_unity};
use crate::numfield::{Field, FieldElement};
use crate::poly::Polynomial;
use crate::ratfunc::{
    left_solve, normal_form, same_field, Decomposition, DecompositionChain, MoebiusUnit,
    RationalFunction,
};

/// Largest group order accepted by the lattice enumeration.
pub const MAX_GROUP_ORDER: usize = 60;

/// A finite set of Moebius units closed under composition, containing the
/// identity; elements are kept sorted in the deterministic unit order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteUnitGroup {
    field: Field,
    elements: Vec<MoebiusUnit>,
}

impl FiniteUnitGroup {
    /// Validates closure under composition and inverse before accepting.
    pub fn try_new(field: &Field, units: Vec<MoebiusUnit>) -> Result<FiniteUnitGroup> {
        if !is_group(&units) {
            return Err(Error::NotAGroup);
        }
        if units.iter().any(|u| u.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::new_unchecked(field, units))
    }

    pub(crate) fn new_unchecked(field: &Field, mut units: Vec<MoebiusUnit>) -> FiniteUnitGroup {
        units.sort();
        units.dedup();
        debug_assert!(is_group(&units));
        FiniteUnitGroup {
            field: field.clone(),
            elements: units,
        }
    }

    pub fn trivial(field: &Field) -> FiniteUnitGroup {
        FiniteUnitGroup {
            field: field.clone(),
            elements: vec![MoebiusUnit::identity(field)],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[MoebiusUnit] {
        &self.elements
    }

    pub fn contains(&self, u: &MoebiusUnit) -> bool {
        self.elements.binary_search(u).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &FiniteUnitGroup) -> bool {
        self.elements.iter().all(|u| other.contains(u))
    }

    /// Multiset of element orders, used by the classifier.
    pub fn order_multiset(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for u in &self.elements {
            let ord = u
                .order(self.elements.len())
                .expect("element of a finite group");
            *counts.entry(ord).or_insert(0) += 1;
        }
        counts
    }
}

impl fmt::Display for FiniteUnitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, u) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", u)?;
        }
        write!(f, "}}")
    }
}

/// True iff the set contains the identity and is closed under composition
/// and inverse.
pub fn is_group(units: &[MoebiusUnit]) -> bool {
    if units.is_empty() {
        return false;
    }
    let field = units[0].field().clone();
    if units.iter().any(|u| u.field() != &field) {
        return false;
    }
    let set: BTreeSet<MoebiusUnit> = units.iter().cloned().collect();
    if set.len() != units.len() {
        return false;
    }
    if !set.contains(&MoebiusUnit::identity(&field)) {
        return false;
    }
    for u in &set {
        if !set.contains(&u.inverse()) {
            return false;
        }
        for v in &set {
            if !set.contains(&u.compose(v)) {
                return false;
            }
        }
    }
    true
}

/// The isomorphism type of a finite subgroup of PGL2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupIsoType {
    Cyclic(usize),
    Dihedral(usize),
    A4,
    S4,
    A5,
}

impl GroupIsoType {
    pub fn order(&self) -> usize {
        match self {
            GroupIsoType::Cyclic(n) => *n,
            GroupIsoType::Dihedral(n) => 2 * n,
            GroupIsoType::A4 => 12,
            GroupIsoType::S4 => 24,
            GroupIsoType::A5 => 60,
        }
    }
}

impl fmt::Display for GroupIsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupIsoType::Cyclic(n) => write!(f, "C{}", n),
            GroupIsoType::Dihedral(n) => write!(f, "D{}", n),
            GroupIsoType::A4 => write!(f, "A4"),
            GroupIsoType::S4 => write!(f, "S4"),
            GroupIsoType::A5 => write!(f, "A5"),
        }
    }
}

/// G(f) = {u : f o u = f}, by the normal-form root-candidate search:
/// affine candidates from roots of unity and numerator roots, rational
/// candidates from a one-parameter family per (numerator root, denominator
/// root) pair, then conjugation back through the normalizing unit.
pub fn fixing_group(f: &RationalFunction) -> Result<FiniteUnitGroup> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let field = f.field().clone();
    let m = f.degree();
    let (_, v, fbar) = normal_form(f)?;

    let unity = roots_of_unity(&field, m)?;
    let num_roots = roots_in_field(fbar.num(), &field)?;
    let den_roots = roots_in_field(fbar.den(), &field)?;

    let mut found: Vec<MoebiusUnit> = vec![MoebiusUnit::identity(&field)];

    // affine elements alpha*x + beta; alpha = 1 only yields the identity in
    // characteristic zero
    for alpha in &unity {
        if alpha.is_one() {
            continue;
        }
        for beta in &num_roots {
            let w = MoebiusUnit::new(alpha.clone(), beta.clone(), field.zero(), field.one())?;
            if fbar.compose(&w.to_rf())? == fbar {
                found.push(w);
            }
        }
    }

    // elements (c*gamma*x + beta)/(c*x + 1) with c != 0
    for beta in &num_roots {
        for gamma in &den_roots {
            debug_assert_ne!(beta, gamma, "numerator and denominator share a root");
            for c in solve_rational_candidates(&fbar, beta, gamma)? {
                if c.is_zero() {
                    continue;
                }
                let w = MoebiusUnit::new(c.mul(gamma), beta.clone(), c.clone(), field.one())?;
                if fbar.compose(&w.to_rf())? == fbar {
                    found.push(w);
                }
            }
        }
    }

    // conjugate back: G(f) = v G(fbar) v^-1
    let v_inv = v.inverse();
    let conjugated: Vec<MoebiusUnit> = found.iter().map(|w| v.compose(w).compose(&v_inv)).collect();
    let group = FiniteUnitGroup::new_unchecked(&field, conjugated);
    debug_assert!(m % group.order() == 0, "|G(f)| must divide deg f");
    Ok(group)
}

/// Values of c with fbar((c*gamma*x + beta)/(c*x + 1)) = fbar: clears
/// denominators into a polynomial identity in x whose coefficients are
/// polynomials in c, intersects the root sets via one gcd in K[c] and
/// returns the roots of the gcd in K.
fn solve_rational_candidates(
    fbar: &RationalFunction,
    beta: &FieldElement,
    gamma: &FieldElement,
) -> Result<Vec<FieldElement>> {
    let field = fbar.field().clone();
    let m = fbar.degree();
    // bivariate polynomials in (x; c): entries are polynomials in c,
    // indexed by the power of x
    let p_lin = vec![
        Polynomial::constant(beta.clone()),
        Polynomial::from_coeffs(&field, vec![field.zero(), gamma.clone()]),
    ];
    let q_lin = vec![Polynomial::one(&field), Polynomial::x(&field)];
    let mut ppow: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(&field)]];
    let mut qpow: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(&field)]];
    for i in 0..m {
        ppow.push(bi_mul(&ppow[i], &p_lin));
        qpow.push(bi_mul(&qpow[i], &q_lin));
    }
    let mut comp_num: Vec<Polynomial> = vec![];
    let mut comp_den: Vec<Polynomial> = vec![];
    for i in 0..=m {
        let basis = bi_mul(&ppow[i], &qpow[m - i]);
        let an = fbar.num().coeff(i);
        if !an.is_zero() {
            comp_num = bi_add(&comp_num, &bi_scale(&basis, &an));
        }
        let ad = fbar.den().coeff(i);
        if !ad.is_zero() {
            comp_den = bi_add(&comp_den, &bi_scale(&basis, &ad));
        }
    }
    // E(x,c) = comp_num * fbar_D(x) - comp_den * fbar_N(x) must vanish
    let e = bi_sub(
        &bi_mul_xpoly(&comp_num, fbar.den()),
        &bi_mul_xpoly(&comp_den, fbar.num()),
    );
    let mut g = Polynomial::zero(&field);
    for coeff in &e {
        if coeff.is_zero() {
            continue;
        }
        g = g.gcd(coeff);
        if g.is_one() {
            return Ok(vec![]);
        }
    }
    if g.is_zero() {
        // identity holds for every c: impossible for a non-constant fbar
        return Err(Error::SolveFailed);
    }
    if g.is_constant() {
        return Ok(vec![]);
    }
    roots_in_field(&g, &field)
}

// -- small bivariate helpers: Vec<Polynomial> indexed by x-power,
//    entries are polynomials in the parameter c --

fn bi_mul(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let field = a[0].field().clone();
    let mut out = vec![Polynomial::zero(&field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn bi_add(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    if a.is_empty() {
        return b.to_vec();
    }
    if b.is_empty() {
        return a.to_vec();
    }
    let field = a[0].field().clone();
    let n = a.len().max(b.len());
    let zero = Polynomial::zero(&field);
    (0..n)
        .map(|i| a.get(i).unwrap_or(&zero).add(b.get(i).unwrap_or(&zero)))
        .collect()
}

fn bi_sub(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let neg: Vec<Polynomial> = b.iter().map(|p| p.neg()).collect();
    bi_add(a, &neg)
}

fn bi_scale(a: &[Polynomial], c: &FieldElement) -> Vec<Polynomial> {
    a.iter().map(|p| p.scale(c)).collect()
}

/// Multiplies a bivariate polynomial by a univariate polynomial in x.
fn bi_mul_xpoly(a: &[Polynomial], p: &Polynomial) -> Vec<Polynomial> {
    if a.is_empty() || p.is_zero() {
        return vec![];
    }
    let field = a[0].field().clone();
    let dp = p.degree().unwrap();
    let mut out = vec![Polynomial::zero(&field); a.len() + dp];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for j in 0..=dp {
            let c = p.coeff(j);
            if c.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.scale(&c));
        }
    }
    out
}

/// Generator of Fix(H): the first nonconstant elementary symmetric function
/// of the group elements (a coefficient of prod(T - h_i)), canonicalized to
/// a monic numerator. Its degree equals |H|.
pub fn fixed_field(h: &FiniteUnitGroup) -> Result<RationalFunction> {
    if h.order() < 2 {
        return Err(Error::TrivialGroup);
    }
    let field = h.field().clone();
    let m = h.order();
    // coefficients of prod(T - h_i), ascending in T
    let mut coeffs: Vec<RationalFunction> = vec![RationalFunction::constant(field.one())];
    for u in h.elements() {
        let hrf = u.to_rf();
        let mut next = vec![RationalFunction::constant(field.zero()); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j + 1] = next[j + 1].add(c)?;
            next[j] = next[j].sub(&c.mul(&hrf)?)?;
        }
        coeffs = next;
    }
    for i in 1..=m {
        let c = &coeffs[m - i];
        if c.is_constant() {
            continue;
        }
        // sigma_i = (-1)^i * coefficient of T^(m-i)
        let sigma = if i % 2 == 1 { c.neg() } else { c.clone() };
        let lc_inv = sigma.num().leading_coeff().unwrap().inv()?;
        let gen = sigma.scale(&lc_inv);
        debug_assert_eq!(gen.degree(), m, "fixed field generator degree");
        return Ok(gen);
    }
    Err(Error::SolveFailed)
}

/// All subgroups, by closure of subsets grown one generator at a time.
pub fn subgroups(g: &FiniteUnitGroup) -> Result<Vec<FiniteUnitGroup>> {
    if g.order() > MAX_GROUP_ORDER {
        return Err(Error::GroupTooLarge(g.order(), MAX_GROUP_ORDER));
    }
    let field = g.field().clone();
    let trivial: BTreeSet<MoebiusUnit> = [MoebiusUnit::identity(&field)].into();
    let mut seen: BTreeSet<Vec<MoebiusUnit>> = BTreeSet::new();
    let mut frontier = vec![trivial.clone()];
    seen.insert(trivial.iter().cloned().collect());
    while let Some(h) = frontier.pop() {
        for u in g.elements() {
            if h.contains(u) {
                continue;
            }
            let mut gen = h.clone();
            gen.insert(u.clone());
            let closed = closure(&gen);
            let key: Vec<MoebiusUnit> = closed.iter().cloned().collect();
            if seen.insert(key) {
                frontier.push(closed);
            }
        }
    }
    let mut out: Vec<FiniteUnitGroup> = seen
        .into_iter()
        .map(|els| FiniteUnitGroup {
            field: field.clone(),
            elements: els,
        })
        .collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    Ok(out)
}

fn closure(gen: &BTreeSet<MoebiusUnit>) -> BTreeSet<MoebiusUnit> {
    let mut set = gen.clone();
    loop {
        let mut new = vec![];
        for u in &set {
            for v in &set {
                let w = u.compose(v);
                if !set.contains(&w) {
                    new.push(w);
                }
            }
        }
        if new.is_empty() {
            return set;
        }
        set.extend(new);
    }
}

/// All chains {id} = H_0 < H_1 < ... < H_k = G with each step maximal.
/// The reported chain length is k, the number of proper steps.
pub fn maximal_subgroup_chains(g: &FiniteUnitGroup) -> Result<Vec<Vec<FiniteUnitGroup>>> {
    let subs = subgroups(g)?;
    let n = subs.len();
    // maximal_in[i][j]: subs[i] maximal in subs[j]
    let mut proper = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            proper[i][j] = subs[i].order() < subs[j].order() && subs[i].is_subgroup_of(&subs[j]);
        }
    }
    let maximal_in = |i: usize, j: usize| -> bool {
        proper[i][j] && !(0..n).any(|k| proper[i][k] && proper[k][j])
    };
    let top = subs
        .iter()
        .position(|h| h.order() == g.order())
        .expect("G is its own subgroup");
    let mut chains = vec![];
    let mut stack = vec![vec![top]];
    while let Some(chain) = stack.pop() {
        let lowest = *chain.last().unwrap();
        if subs[lowest].order() == 1 {
            let mut groups: Vec<FiniteUnitGroup> =
                chain.iter().rev().map(|&i| subs[i].clone()).collect();
            groups.shrink_to_fit();
            chains.push(groups);
            continue;
        }
        for i in 0..n {
            if maximal_in(i, lowest) {
                let mut next = chain.clone();
                next.push(i);
                stack.push(next);
            }
        }
    }
    chains.sort_by_key(|c| (c.len(), c.iter().map(|h| h.order()).collect::<Vec<_>>()));
    Ok(chains)
}

/// The decomposition f = g o h induced by a subgroup H of G(f):
/// h generates Fix(H), g is the unique left factor.
pub fn right_component_from_subgroup(
    f: &RationalFunction,
    h: &FiniteUnitGroup,
) -> Result<Decomposition> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    if f.field() != h.field() {
        return Err(Error::FieldMismatch);
    }
    for u in h.elements() {
        if f.compose(&u.to_rf())? != *f {
            return Err(Error::NotASubgroupOfFixingGroup);
        }
    }
    if h.order() < 2 {
        return Err(Error::TrivialGroup);
    }
    if h.order() >= f.degree() {
        return Err(Error::DegreeMismatch(format!(
            "|H| = {} admits no proper component of a degree {} function",
            h.order(),
            f.degree()
        )));
    }
    let right = fixed_field(h)?;
    let left = left_solve(f, &right)?.ok_or(Error::SolveFailed)?;
    Ok(Decomposition { left, right })
}

/// In the normal case |G(f)| = deg f: every maximal subgroup chain of G(f)
/// induces a complete decomposition chain of f through the tower of fixed
/// fields. Returns one chain per subgroup chain; each recomposes to f.
pub fn chains_to_decompositions(f: &RationalFunction) -> Result<Vec<DecompositionChain>> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let g = fixing_group(f)?;
    if g.order() != f.degree() {
        return Err(Error::NotNormalCase(g.order(), f.degree()));
    }
    let chains = maximal_subgroup_chains(&g)?;
    let mut out = vec![];
    for chain in chains {
        // chain is ascending {id} = H_0 < ... < H_k = G
        let towers: Vec<RationalFunction> =
            chain[1..].iter().map(fixed_field).collect::<Result<_>>()?;
        let k = towers.len();
        let mut components: Vec<RationalFunction> = Vec::with_capacity(k);
        // split tower steps: t_i = s_i o t_{i-1}
        for i in (1..k).rev() {
            let s = left_solve(&towers[i], &towers[i - 1])?.ok_or(Error::SolveFailed)?;
            components.push(s);
        }
        components.push(towers[0].clone());
        // absorb the unit between f and the top generator into the head
        let w = same_field(f, &towers[k - 1])?.ok_or(Error::SolveFailed)?;
        components[0] = w.to_rf().compose(&components[0])?;
        let chain = DecompositionChain { components };
        debug_assert_eq!(chain.recompose()?, *f);
        out.push(chain);
    }
    Ok(out)
}

/// Classification by order and element-order multiset; these invariants
/// separate C_n, D_n, A4, S4, A5 at the orders in question.
pub fn classify_group(g: &FiniteUnitGroup) -> Result<GroupIsoType> {
    let n = g.order();
    let counts = g.order_multiset();
    if counts.contains_key(&n) {
        return Ok(GroupIsoType::Cyclic(n));
    }
    match n {
        12 if counts == multiset(&[(1, 1), (2, 3), (3, 8)]) => return Ok(GroupIsoType::A4),
        24 if counts == multiset(&[(1, 1), (2, 9), (3, 8), (4, 6)]) => return Ok(GroupIsoType::S4),
        60 if counts == multiset(&[(1, 1), (2, 15), (3, 20), (5, 24)]) => {
            return Ok(GroupIsoType::A5)
        }
        _ => {}
    }
    if n % 2 == 0 {
        let m = n / 2;
        if counts == dihedral_multiset(m) {
            return Ok(GroupIsoType::Dihedral(m));
        }
    }
    Err(Error::UnclassifiableGroup)
}

fn multiset(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    pairs.iter().copied().collect()
}

fn dihedral_multiset(m: usize) -> BTreeMap<usize, usize> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for k in 0..m {
        let ord = m / gcd_usize(m, k);
        *counts.entry(if k == 0 { 1 } else { ord }).or_insert(0) += 1;
    }
    *counts.entry(2).or_insert(0) += m;
    counts
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

/// Sanity predicate for groups over Q: every finite subgroup of PGL2(Q) is
/// C_n or D_n with n in {2, 3, 4, 6} (or trivial).
pub fn pgl2q_check(g: &FiniteUnitGroup) -> Result<bool> {
    if !g.field().is_rationals() {
        return Err(Error::FieldMismatch);
    }
    Ok(match classify_group(g)? {
        GroupIsoType::Cyclic(n) => n == 1 || matches!(n, 2 | 3 | 4 | 6),
        GroupIsoType::Dihedral(n) => matches!(n, 2 | 3 | 4 | 6),
        _ => false,
    })
}
