//! Integer factorization helpers for rational-root candidate enumeration:
//! trial division, deterministic Miller-Rabin, Pollard-Brent rho.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Prime factorization of |n| for n != 0.
pub(crate) fn factor_integer(n: &BigInt) -> BTreeMap<BigInt, u32> {
    let mut map = BTreeMap::new();
    let mut n = n.abs();
    assert!(!n.is_zero());
    for p in [2u64, 3, 5, 7, 11, 13] {
        let p = BigInt::from(p);
        while (&n % &p).is_zero() {
            *map.entry(p.clone()).or_insert(0) += 1;
            n /= &p;
        }
    }
    let mut d = BigInt::from(17);
    let step = BigInt::from(2);
    // trial division up to 2^20, enough for desk-scale coefficients
    let limit = BigInt::from(1u64 << 20);
    while &d * &d <= n && d <= limit {
        while (&n % &d).is_zero() {
            *map.entry(d.clone()).or_insert(0) += 1;
            n /= &d;
        }
        d += &step;
    }
    if n.is_one() {
        return map;
    }
    if &d * &d > n {
        *map.entry(n).or_insert(0) += 1;
        return map;
    }
    // large remaining cofactor
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            *map.entry(m).or_insert(0) += 1;
            continue;
        }
        let f = pollard_brent(&m);
        stack.push(&m / &f);
        stack.push(f);
    }
    map
}

/// All positive divisors of |n|, sorted.
pub(crate) fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let map = factor_integer(n);
    let mut divs = vec![BigInt::one()];
    for (p, e) in &map {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=*e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

fn is_probable_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    // Miller-Rabin; the base set is deterministic for n < 3.3e24
    let n_minus_1: BigInt = n - 1;
    let s = n_minus_1.trailing_zeros().unwrap();
    let d = &n_minus_1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigInt::from(a);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x.modpow(&BigInt::from(2), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    for c in 1u64..64 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut d = BigInt::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
    }
    // desk-scale inputs never reach this
    panic!("pollard rho failed on {}", n);
}

pub(crate) fn to_small_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_small() {
        let m = factor_integer(&BigInt::from(10077696)); // 6^3 * 36^3 = 2^9 3^9
        assert_eq!(m.get(&BigInt::from(2)), Some(&9));
        assert_eq!(m.get(&BigInt::from(3)), Some(&9));
    }

    #[test]
    fn divisors_of_12() {
        let d = positive_divisors(&BigInt::from(12));
        let want: Vec<BigInt> = [1, 2, 3, 4, 6, 12]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(d, want);
    }

    #[test]
    fn factors_semiprime() {
        let n = BigInt::from(1000003u64) * BigInt::from(1000033u64);
        let m = factor_integer(&n);
        assert_eq!(m.len(), 2);
        assert!(m.values().all(|&e| e == 1));
    }
}
