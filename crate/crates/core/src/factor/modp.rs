//! Polynomial arithmetic over GF(p) for small primes, and Berlekamp's
//! factorization algorithm. Everything here is deterministic.

/// Dense polynomial over GF(p), lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct PolyZp {
    pub p: u64,
    pub c: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> u64 {
    // extended Euclid on signed integers
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        t -= q * new_t;
        std::mem::swap(&mut t, &mut new_t);
        r -= q * new_r;
        std::mem::swap(&mut r, &mut new_r);
    }
    assert_eq!(r, 1, "element not invertible mod p");
    t.rem_euclid(p as i128) as u64
}

impl PolyZp {
    pub fn new(p: u64, mut c: Vec<u64>) -> PolyZp {
        for x in &mut c {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyZp { p, c }
    }

    pub fn zero(p: u64) -> PolyZp {
        PolyZp { p, c: vec![] }
    }

    pub fn one(p: u64) -> PolyZp {
        PolyZp { p, c: vec![1] }
    }

    pub fn x(p: u64) -> PolyZp {
        PolyZp { p, c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn sub(&self, o: &PolyZp) -> PolyZp {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0u64; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            c[i] = (a + self.p - b) % self.p;
        }
        PolyZp::new(self.p, c)
    }

    pub fn mul(&self, o: &PolyZp) -> PolyZp {
        if self.is_zero() || o.is_zero() {
            return PolyZp::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        PolyZp::new(self.p, c)
    }

    pub fn scale(&self, k: u64) -> PolyZp {
        PolyZp::new(
            self.p,
            self.c.iter().map(|&a| mulmod(a, k, self.p)).collect(),
        )
    }

    pub fn monic(&self) -> PolyZp {
        match self.c.last() {
            None => self.clone(),
            Some(&1) => self.clone(),
            Some(&lc) => self.scale(invmod(lc, self.p)),
        }
    }

    pub fn divrem(&self, b: &PolyZp) -> (PolyZp, PolyZp) {
        assert!(!b.is_zero());
        let db = b.degree().unwrap();
        let mut r = self.c.clone();
        if r.len() <= db {
            return (PolyZp::zero(self.p), self.clone());
        }
        let inv = invmod(*b.c.last().unwrap(), self.p);
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = mulmod(*r.last().unwrap(), inv, self.p);
            if c != 0 {
                for i in 0..=db {
                    let t = mulmod(c, b.c[i], self.p);
                    r[k + i] = (r[k + i] + self.p - t) % self.p;
                }
                q[k] = c;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
            if r.len() <= db {
                break;
            }
        }
        (PolyZp::new(self.p, q), PolyZp::new(self.p, r))
    }

    pub fn rem(&self, b: &PolyZp) -> PolyZp {
        self.divrem(b).1
    }

    pub fn gcd(&self, o: &PolyZp) -> PolyZp {
        let mut a = self.monic();
        let mut b = o.monic();
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = std::mem::replace(&mut b, r);
        }
        a
    }

    pub fn derivative(&self) -> PolyZp {
        if self.c.len() <= 1 {
            return PolyZp::zero(self.p);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mulmod(a, (i as u64) % self.p, self.p))
            .collect();
        PolyZp::new(self.p, c)
    }

    pub fn is_squarefree(&self) -> bool {
        let g = self.gcd(&self.derivative());
        g.is_constant()
    }

    /// self^e mod f by square and multiply.
    pub fn pow_mod(&self, mut e: u64, f: &PolyZp) -> PolyZp {
        let mut acc = PolyZp::one(self.p);
        let mut sq = self.rem(f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq).rem(f);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq).rem(f);
            }
        }
        acc
    }

    /// Extended Euclid: (g, s, t) monic g = gcd with s*self + t*other = g.
    pub fn ext_gcd(&self, other: &PolyZp) -> (PolyZp, PolyZp, PolyZp) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (PolyZp::one(p), PolyZp::zero(p));
        let (mut t0, mut t1) = (PolyZp::zero(p), PolyZp::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let ns = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, ns);
            let nt = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, nt);
        }
        if let Some(&lc) = r0.c.last() {
            if lc != 1 {
                let inv = invmod(lc, p);
                r0 = r0.scale(inv);
                s0 = s0.scale(inv);
                t0 = t0.scale(inv);
            }
        }
        (r0, s0, t0)
    }
}

/// Berlekamp factorization of a monic squarefree polynomial over GF(p).
/// Returns monic irreducible factors, sorted.
pub(crate) fn berlekamp(f: &PolyZp) -> Vec<PolyZp> {
    let p = f.p;
    let n = f.degree().expect("nonzero input");
    if n <= 1 {
        return vec![f.clone()];
    }
    // Q matrix: row i holds x^(i*p) mod f
    let xp = PolyZp::x(p).pow_mod(p, f);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur = PolyZp::one(p);
    for _ in 0..n {
        let mut row = cur.c.clone();
        row.resize(n, 0);
        rows.push(row);
        cur = cur.mul(&xp).rem(f);
    }
    // kernel of (Q - I)^T: vectors h with h(x)^p = h(x) mod f
    let mut m = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            // transpose of (Q - I)
            let v = (rows[j][i] + p - if i == j { 1 } else { 0 }) % p;
            m[i][j] = v;
        }
    }
    let basis = nullspace_zp(&mut m, p);
    let r = basis.len();
    debug_assert!(r >= 1);
    if r == 1 {
        return vec![f.monic()];
    }
    let mut factors = vec![f.monic()];
    'split: for h_vec in &basis {
        let h = PolyZp::new(p, h_vec.clone());
        if h.is_constant() {
            continue;
        }
        for c in 0..p {
            let shifted = h.sub(&PolyZp::new(p, vec![c]));
            let mut next = vec![];
            for fac in factors.drain(..) {
                if fac.degree() == Some(1) {
                    next.push(fac);
                    continue;
                }
                let g = fac.gcd(&shifted);
                if g.is_constant() || g.degree() == fac.degree() {
                    next.push(fac);
                } else {
                    let q = fac.divrem(&g).0.monic();
                    next.push(g);
                    next.push(q);
                }
            }
            factors = next;
            if factors.len() == r {
                break 'split;
            }
        }
    }
    debug_assert_eq!(factors.len(), r, "Berlekamp split incomplete");
    factors.sort();
    factors
}

/// Kernel basis of a square matrix over GF(p) (rows are modified in place).
fn nullspace_zp(m: &mut [Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let cols = if n == 0 { 0 } else { m[0].len() };
    let mut pivot_cols = vec![];
    let mut row = 0;
    for col in 0..cols {
        if row >= n {
            break;
        }
        let mut piv = None;
        for r in row..n {
            if m[r][col] != 0 {
                piv = Some(r);
                break;
            }
        }
        let Some(pv) = piv else { continue };
        m.swap(row, pv);
        let inv = invmod(m[row][col], p);
        for c in col..cols {
            m[row][c] = mulmod(m[row][c], inv, p);
        }
        for r in 0..n {
            if r != row && m[r][col] != 0 {
                let factor = m[r][col];
                for c in col..cols {
                    let t = mulmod(factor, m[row][c], p);
                    m[r][c] = (m[r][c] + p - t) % p;
                }
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
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = (p - m[r][free]) % p;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod5() {
        let p = 5;
        let a = PolyZp::new(p, vec![1, 2, 3]);
        let b = PolyZp::new(p, vec![4, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(a.sub(&q.mul(&b)), r);
    }

    #[test]
    fn berlekamp_splits_product() {
        // (x^2+1)(x+2)(x+3) mod 5: x^2+1 = (x+2)(x+3) mod 5, so all linear
        let p = 5;
        let f = PolyZp::new(p, vec![1, 0, 1]);
        let facs = berlekamp(&f);
        assert_eq!(facs.len(), 2);
        let prod = facs.iter().fold(PolyZp::one(p), |acc, g| acc.mul(g));
        assert_eq!(prod, f);
    }

    #[test]
    fn berlekamp_irreducible() {
        // x^2 + x + 1 is irreducible mod 5 (no roots, degree 2)
        let f = PolyZp::new(5, vec![1, 1, 1]);
        assert_eq!(berlekamp(&f).len(), 1);
    }

    #[test]
    fn berlekamp_mixed_degrees() {
        // f = (x^2+x+1)(x+1)(x+4) mod 5
        let p = 5;
        let f = PolyZp::new(p, vec![1, 1, 1])
            .mul(&PolyZp::new(p, vec![1, 1]))
            .mul(&PolyZp::new(p, vec![4, 1]));
        assert!(f.is_squarefree());
        let facs = berlekamp(&f);
        assert_eq!(facs.len(), 3);
        let prod = facs.iter().fold(PolyZp::one(p), |acc, g| acc.mul(g));
        assert_eq!(prod, f);
        assert!(facs.iter().all(|g| g.c.last() == Some(&1)));
    }

    #[test]
    fn ext_gcd_bezout() {
        let p = 7;
        let a = PolyZp::new(p, vec![1, 0, 1]);
        let b = PolyZp::new(p, vec![3, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g.sub(&s.mul(&a)), t.mul(&b));
        assert!(g.is_constant());
    }
}
