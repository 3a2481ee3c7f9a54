//! Residue arithmetic modulo prime powers.

use crate::error::{Error, Result};

/// Largest modulus allowed for a single cyclic factor. Keeps every product of
/// two residues inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::Overflow(format!("{base}^{exp} does not fit in 64 bits")))
}

/// `p^e`, for callers that already validated the bound.
#[inline]
pub fn pow(p: u64, e: u32) -> u64 {
    p.pow(e)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a % m) * (b % m) % m
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    (a % m + b % m) % m
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    (a % m + m - b % m) % m
}

#[inline]
pub fn neg_mod(a: u64, m: u64) -> u64 {
    (m - a % m) % m
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// p-adic valuation of a residue modulo `p^cap`; zero has valuation `cap`.
pub fn valuation(x: u64, p: u64, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut v = 0;
    let mut y = x;
    while y.is_multiple_of(p) && v < cap {
        y /= p;
        v += 1;
    }
    v
}

pub fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Small generating set of `(Z/p^e)^×`, chosen greedily in ascending order.
pub fn unit_group_generators(p: u64, e: u32) -> Vec<u64> {
    let m = pow(p, e);
    let units: Vec<u64> = (1..m).filter(|x| x % p != 0).collect();
    let mut generated: Vec<bool> = vec![false; m as usize];
    generated[(1 % m) as usize] = true;
    let mut count = 1usize;
    let mut gens = Vec::new();
    for &u in &units {
        if count == units.len() {
            break;
        }
        if generated[u as usize] {
            continue;
        }
        gens.push(u);
        // close the subgroup under multiplication by the new generator
        let mut frontier: Vec<u64> = (0..m).filter(|&x| generated[x as usize]).collect();
        while let Some(x) = frontier.pop() {
            let y = x * u % m;
            if !generated[y as usize] {
                generated[y as usize] = true;
                count += 1;
                frontier.push(y);
            }
            for &g in &gens {
                let z = x * g % m;
                if !generated[z as usize] {
                    generated[z as usize] = true;
                    count += 1;
                    frontier.push(z);
                }
            }
        }
    }
    gens
}
