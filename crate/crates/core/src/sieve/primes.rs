//! Prime generation: a plain odd-only Eratosthenes sieve for small limits and
//! a segmented variant for ranges that do not fit comfortably in memory.

const SEGMENT_ODDS: u64 = 1 << 18;

/// Integer square root, `floor(sqrt(n))`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).map_or(true, |sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// All primes in `[2, limit]`, ascending.
pub fn base_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    if limit <= 1 << 22 {
        return small_sieve(limit);
    }
    let mut out = Vec::with_capacity(estimate_pi(limit));
    for_each_prime(2, limit, |p| out.push(p));
    out
}

fn estimate_pi(n: u64) -> usize {
    let x = n as f64;
    (1.26 * x / x.ln()) as usize + 16
}

fn small_sieve(limit: u64) -> Vec<u64> {
    // index i stands for 2i+1
    let half = (limit as usize - 1) / 2 + 1;
    let mut composite = vec![false; half];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = Vec::with_capacity(estimate_pi(limit));
    out.push(2);
    out.extend(
        (1..half)
            .filter(|&i| !composite[i])
            .map(|i| 2 * i as u64 + 1),
    );
    out
}

/// Calls `f` for every prime in `[lo, hi]` in ascending order.
pub fn for_each_prime<F: FnMut(u64)>(lo: u64, hi: u64, mut f: F) {
    if hi < 2 || lo > hi {
        return;
    }
    let lo = lo.max(2);
    if lo <= 2 {
        f(2);
    }
    let sieving = small_sieve(isqrt(hi).max(2));
    // odd numbers o in [lo, hi]
    let mut start = if lo % 2 == 0 { lo + 1 } else { lo };
    if start < 3 {
        start = 3;
    }
    let mut marks = vec![false; SEGMENT_ODDS as usize];
    while start <= hi {
        let count = ((hi - start) / 2 + 1).min(SEGMENT_ODDS);
        let end = start + 2 * (count - 1);
        marks[..count as usize].fill(false);
        for &p in sieving.iter().skip(1) {
            let p2 = p * p;
            if p2 > end {
                break;
            }
            let mut m = if p2 >= start {
                p2
            } else {
                let r = start % p;
                let first = if r == 0 { start } else { start + (p - r) };
                if first % 2 == 0 {
                    first + p
                } else {
                    first
                }
            };
            while m <= end {
                marks[((m - start) / 2) as usize] = true;
                m += 2 * p;
            }
        }
        for (i, &c) in marks[..count as usize].iter().enumerate() {
            if !c {
                let n = start + 2 * i as u64;
                if n > 1 {
                    f(n);
                }
            }
        }
        start = end + 2;
    }
}

/// Number of primes in `(lo, hi]`.
pub fn prime_count_between(lo: u64, hi: u64) -> u64 {
    if hi <= lo {
        return 0;
    }
    let mut c = 0;
    for_each_prime(lo + 1, hi, |_| c += 1);
    c
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(limit: u64) -> Vec<u64> {
        (2..=limit)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(base_primes(10), vec![2, 3, 5, 7]);
        assert!(base_primes(1).is_empty());
        assert!(base_primes(0).is_empty());
        assert_eq!(base_primes(2), vec![2]);
        assert_eq!(base_primes(100).len(), trial_division_primes(100).len());
        assert_eq!(base_primes(100).len(), 25);
    }

    #[test]
    fn matches_trial_division() {
        assert_eq!(base_primes(5000), trial_division_primes(5000));
    }

    #[test]
    fn segmented_agrees_with_plain() {
        let mut seg = Vec::new();
        for_each_prime(2, 3_000_000, |p| seg.push(p));
        assert_eq!(seg, small_sieve(3_000_000));
        let mut window = Vec::new();
        for_each_prime(1_000_000, 1_000_200, |p| window.push(p));
        let expect: Vec<u64> = (1_000_000..=1_000_200).filter(|&n| is_prime(n)).collect();
        assert_eq!(window, expect);
    }

    #[test]
    fn large_limit_uses_segments() {
        let v = base_primes(5_000_000);
        assert_eq!(v.len(), 348_513);
        assert_eq!(*v.last().unwrap(), 4_999_999);
    }

    #[test]
    fn isqrt_edges() {
        for n in [0u64, 1, 2, 3, 4, 15, 16, 17, u64::MAX, (1 << 62) - 1] {
            let r = isqrt(n);
            assert!(r.checked_mul(r).unwrap() <= n);
            assert!((r + 1).checked_mul(r + 1).map_or(true, |s| s > n));
        }
    }

    #[test]
    fn miller_rabin_known_values() {
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert!(is_prime(4_611_686_018_427_387_847)); // largest prime below 2^62
        assert_eq!(prime_count_between(0, 100), 25);
        assert_eq!(prime_count_between(10, 11), 1);
    }
}
