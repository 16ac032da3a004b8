//! Deterministic primality below `2^64` and isolated-prime search.

/// Witness set that makes Miller–Rabin exact for every 64-bit input.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Exact primality test for all `u64` values.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
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

/// Is `p` the only prime in `[p − radius, p + radius]`?
pub fn is_isolated_prime(p: u64, radius: u64) -> bool {
    if !is_prime(p) {
        return false;
    }
    let lo = p.saturating_sub(radius);
    let hi = p.saturating_add(radius);
    (lo..=hi).all(|q| q == p || !is_prime(q))
}

/// Smallest `k ≤ limit` such that `p = a + 2^bits·k` is the only prime in
/// `[p − 2^bits, p + 2^bits]`.
///
/// Returns `None` for an even `a`, for `a ≥ 2^bits`, or when the search is
/// exhausted (including by 64-bit overflow).
pub fn find_isolated_prime(a: u64, bits: u32, limit: u64) -> Option<u64> {
    if a.is_multiple_of(2) || bits >= 63 || a >= 1 << bits {
        return None;
    }
    let modulus = 1u64 << bits;
    (0..=limit)
        .map_while(|k| Some((k, a.checked_add(modulus.checked_mul(k)?)?)))
        .find(|&(_, p)| is_isolated_prime(p, modulus))
        .map(|(k, _)| k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve(limit: usize) -> Vec<bool> {
        let mut is = vec![true; limit + 1];
        is[0] = false;
        if limit >= 1 {
            is[1] = false;
        }
        let mut i = 2;
        while i * i <= limit {
            if is[i] {
                let mut j = i * i;
                while j <= limit {
                    is[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        is
    }

    #[test]
    fn small_values() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime(37));
        assert!(!is_prime(41 * 43));
    }

    #[test]
    fn agrees_with_sieve_to_a_million() {
        let table = sieve(1_000_000);
        for (k, &expected) in table.iter().enumerate() {
            assert_eq!(is_prime(k as u64), expected, "{k}");
        }
    }

    #[test]
    fn large_values() {
        assert!(is_prime(18_446_744_073_709_551_557)); // largest 64-bit prime
        assert!(!is_prime(u64::MAX));
        assert!(!is_prime(3_825_123_056_546_413_051)); // strong pseudoprime to bases 2..23
        assert!(is_prime((1 << 61) - 1));
    }

    /// Independent scan: walk the progression with a sieve.
    fn scan(a: u64, bits: u32, limit: u64) -> Option<u64> {
        let n = 1u64 << bits;
        let table = sieve(((a + n * limit + n) as usize).max(8));
        (0..=limit).find(|k| {
            let p = a + n * k;
            table[p as usize]
                && (p.saturating_sub(n)..=p + n).all(|q| q == p || !table[q as usize])
        })
    }

    #[test]
    fn isolated_prime_examples() {
        assert_eq!(find_isolated_prime(1, 2, 1_000_000), Some(13));
        assert_eq!(find_isolated_prime(1, 1, 1_000_000), Some(11));
        assert_eq!(find_isolated_prime(3, 2, 0), None);
        assert_eq!(find_isolated_prime(2, 2, 100), None);
    }

    #[test]
    fn isolated_prime_matches_sieve_scan() {
        for bits in 1..=4 {
            for a in (1..1u64 << bits).step_by(2) {
                assert_eq!(find_isolated_prime(a, bits, 5000), scan(a, bits, 5000), "a={a} bits={bits}");
            }
        }
    }
}
