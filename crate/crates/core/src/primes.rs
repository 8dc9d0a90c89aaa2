//! Miller–Rabin and uniform big-integer sampling over the crate's seeded RNG.

use crate::rng::KernelRng;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::RngCore;

const SMALL_PRIMES: [u32; 46] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199,
];

/// ⌈log₂ x⌉ for x ≥ 1.
pub fn ceil_log2(x: &BigUint) -> u64 {
    assert!(!x.is_zero(), "ceil_log2 of zero");
    (x - 1u32).bits()
}

/// Uniform integer in [0, bound) by rejection on the bit length of `bound`.
pub fn uniform_below(rng: &mut KernelRng, bound: &BigUint) -> BigUint {
    assert!(!bound.is_zero(), "empty range");
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let top_mask = if bits.is_multiple_of(32) { u32::MAX } else { (1u32 << (bits % 32)) - 1 };
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
        if let Some(top) = digits.last_mut() {
            *top &= top_mask;
        }
        let x = BigUint::new(digits);
        if &x < bound {
            return x;
        }
    }
}

/// Uniform integer in [lo, hi].
pub fn uniform_inclusive(rng: &mut KernelRng, lo: &BigUint, hi: &BigUint) -> BigUint {
    assert!(lo <= hi, "empty range");
    lo + uniform_below(rng, &(hi - lo + 1u32))
}

/// Trial division by small primes, then `rounds` Miller–Rabin rounds with
/// random bases. Composites pass with probability at most 4^-rounds.
pub fn is_probable_prime(n: &BigUint, rounds: u32, rng: &mut KernelRng) -> bool {
    if let Some(small) = n.to_u32() {
        if small < 2 {
            return false;
        }
        if SMALL_PRIMES.contains(&small) {
            return true;
        }
    }
    if SMALL_PRIMES.iter().any(|&q| (n % q).is_zero()) {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n is odd and > 2");
    let d = &n_minus_1 >> s;
    let two = BigUint::from(2u32);
    let base_hi = n - 2u32;
    'rounds: for _ in 0..rounds {
        let a = uniform_inclusive(rng, &two, &base_hi);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x).mod_floor(n);
            if x == n_minus_1 {
                continue 'rounds;
            }
        }
        return false;
    }
    true
}

/// Deterministic trial division, for tests and certificate checks on small p.
pub fn is_prime_by_trial_division(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}
