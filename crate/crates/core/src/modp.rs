//! Arithmetic and Gaussian elimination over prime fields `Z/p` with
//! `p < 2^32`, so every product fits in a `u64`.

use alloc::vec::Vec;

use rand_core::RngCore;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

/// Deterministic Miller-Rabin for `n < 2^32`.
pub fn is_prime(n: u64) -> bool {
    assert!(n < 1 << 32, "is_prime is only deterministic below 2^32");
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // Bases 2, 3, 5, 7 are exact below 3_215_031_751 > 2^31; 11 covers 2^32.
    'witness: for a in [2u64, 3, 5, 7, 11] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly drawn prime in `(2^(bits-1), 2^bits)`.
pub fn random_prime<R: RngCore>(rng: &mut R, bits: u32) -> u64 {
    assert!((3..=32).contains(&bits), "prime size must be 3..=32 bits");
    let low = 1u64 << (bits - 1);
    loop {
        let candidate = (low + (rng.next_u64() % low)) | 1;
        if candidate > low && candidate < (1u64 << bits) && is_prime(candidate) {
            return candidate;
        }
    }
}

/// A uniform residue in `1..p`.
pub fn random_nonzero<R: RngCore>(rng: &mut R, p: u64) -> u64 {
    1 + rng.next_u64() % (p - 1)
}

/// Rank of a dense matrix over `Z/p`. Entries must already be reduced.
pub fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p).expect("nonzero pivot");
        for v in rows[rank][col..].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (v, &pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *v = (*v + p - mul_mod(factor, pv, p)) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
