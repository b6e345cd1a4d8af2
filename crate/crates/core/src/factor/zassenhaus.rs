//! Factorization of monic squarefree integer polynomials: Berlekamp mod a
//! small prime, quadratic Hensel lifting past the Landau-Mignotte bound,
//! then subset recombination smallest-cardinality first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modp::{berlekamp, PolyZp};

type ZPoly = Vec<BigInt>; // lowest degree first, no trailing zeros

fn trim(mut v: ZPoly) -> ZPoly {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
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

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out.push(x - y);
    }
    trim(out)
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out.push(x + y);
    }
    trim(out)
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Division by a monic divisor with coefficients reduced mod m.
fn zdivrem_monic_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    debug_assert!(b.last().map_or(false, |c| c.is_one()));
    let db = b.len() - 1;
    let mut r: ZPoly = a.to_vec();
    if r.len() <= db {
        return (vec![], zmod(&r, m));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap().mod_floor(m);
        if !c.is_zero() {
            for i in 0..=db {
                let t = (&c * &b[i]).mod_floor(m);
                r[k + i] = (&r[k + i] - t).mod_floor(m);
            }
            q[k] = c;
        } else {
            *r.last_mut().unwrap() = BigInt::zero();
        }
        while r.last().map_or(false, |x| x.mod_floor(m).is_zero()) {
            r.pop();
        }
    }
    (trim(q), zmod(&r, m))
}

/// Exact division test over Z by a monic candidate; returns the quotient.
fn zdiv_exact_monic(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    debug_assert!(b.last().map_or(false, |c| c.is_one()));
    let db = b.len() - 1;
    let mut r: ZPoly = a.to_vec();
    if r.len() <= db {
        return if r.is_empty() { Some(vec![]) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap().clone();
        for i in 0..=db {
            let t = &c * &b[i];
            r[k + i] -= t;
        }
        q[k] = c;
        r = trim(r);
    }
    if r.is_empty() {
        Some(trim(q))
    } else {
        None
    }
}

fn zp_to_big(f: &PolyZp) -> ZPoly {
    f.c.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from f = g*h (mod m), s*g + t*h = 1 (mod m)
/// with h, g monic, to the same relations mod m^2.
#[allow(clippy::type_complexity)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic_mod(&zmul(s, &e), h, &m2);
    let g1 = zmod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &m2);
    let h1 = zmod(&zadd(h, &r), &m2);
    let b = zmod(
        &zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &[BigInt::one()]),
        &m2,
    );
    let (c, d) = zdivrem_monic_mod(&zmul(s, &b), &h1, &m2);
    let s1 = zmod(&zsub(s, &d), &m2);
    let t1 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g1)), &m2);
    (g1, h1, s1, t1)
}

/// Lifts the factorization f = prod(facs) (mod p) to mod target, f monic.
fn hensel_lift_tree(f: &[BigInt], facs: &[PolyZp], p: u64, target: &BigInt) -> Vec<ZPoly> {
    if facs.len() == 1 {
        return vec![zmod(f, target)];
    }
    let mid = facs.len() / 2;
    let g0 = facs[..mid].iter().fold(PolyZp::one(p), |acc, x| acc.mul(x));
    let h0 = facs[mid..].iter().fold(PolyZp::one(p), |acc, x| acc.mul(x));
    let (gcd, s0, t0) = g0.ext_gcd(&h0);
    debug_assert!(gcd.is_constant(), "factors not coprime mod p");
    let mut g = zp_to_big(&g0);
    let mut h = zp_to_big(&h0);
    let mut s = zp_to_big(&s0);
    let mut t = zp_to_big(&t0);
    let mut m = BigInt::from(p);
    while &m < target {
        let f_red = zmod(f, &(&m * &m));
        let (g1, h1, s1, t1) = hensel_step(&f_red, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    let g = zmod(&g, target);
    let h = zmod(&h, target);
    let mut out = hensel_lift_tree(&g, &facs[..mid], p, target);
    out.extend(hensel_lift_tree(&h, &facs[mid..], p, target));
    out
}

/// Coefficients from [0, m) into the symmetric range (-m/2, m/2].
fn symmetric(f: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim(
        f.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

fn norm2_bound(f: &[BigInt]) -> BigInt {
    let sum: BigInt = f.iter().map(|c| c * c).sum();
    sum.sqrt() + 1
}

fn eval_at(f: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = acc * &x + c;
    }
    acc
}

/// Enumerates k-subsets of 0..n in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Factors a monic squarefree integer polynomial of degree >= 2 with no
/// rational roots stripped requirement; returns monic integer factors.
pub(crate) fn factor_monic_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    debug_assert!(f.last().map_or(false, |c| c.is_one()));
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // smallest usable prime >= 3: f stays squarefree mod p
    let mut p = 3u64;
    let fp = loop {
        let coeffs = f
            .iter()
            .map(|c| super::intfactor::to_small_u64(&c.mod_floor(&BigInt::from(p))).unwrap())
            .collect();
        let fp = PolyZp::new(p, coeffs);
        if fp.degree() == Some(n) && fp.is_squarefree() {
            break fp;
        }
        p = next_prime(p);
    };
    let modular = berlekamp(&fp);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    // lift past twice the Landau-Mignotte bound
    let bound: BigInt = (BigInt::from(2).pow(n as u32 + 1)) * norm2_bound(f);
    let mut target = BigInt::from(p);
    while target <= &bound * 2 {
        target = &target * p;
    }
    let lifted = hensel_lift_tree(f, &modular, p, &target);

    let mut remaining: ZPoly = f.to_vec();
    let mut pool: Vec<ZPoly> = lifted;
    let mut out: Vec<ZPoly> = vec![];
    let mut size = 1usize;
    'outer: while 2 * size <= pool.len() {
        let f0 = eval_at(&remaining, 0);
        let f1 = eval_at(&remaining, 1);
        for combo in subsets(pool.len(), size) {
            let mut cand = vec![BigInt::one()];
            for &i in &combo {
                cand = zmod(&zmul(&cand, &pool[i]), &target);
            }
            let cand = symmetric(&cand, &target);
            // cheap evaluation filters before the full division
            if !f0.is_zero() {
                let c0 = eval_at(&cand, 0);
                if c0.is_zero() || !(&f0 % c0).is_zero() {
                    continue;
                }
            }
            if !f1.is_zero() {
                let c1 = eval_at(&cand, 1);
                if c1.is_zero() || !(&f1 % c1).is_zero() {
                    continue;
                }
            }
            if let Some(q) = zdiv_exact_monic(&remaining, &cand) {
                out.push(cand);
                remaining = q;
                let mut keep = vec![];
                for (i, g) in pool.drain(..).enumerate() {
                    if !combo.contains(&i) {
                        keep.push(g);
                    }
                }
                pool = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if remaining.len() > 1 {
        out.push(remaining);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn next_prime(p: u64) -> u64 {
    let mut q = p + 2;
    'outer: loop {
        let mut d = 3;
        while d * d <= q {
            if q % d == 0 {
                q += 2;
                continue 'outer;
            }
            d += 2;
        }
        return q;
    }
}
