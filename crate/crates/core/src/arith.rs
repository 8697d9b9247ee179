//! Deterministic trial-division arithmetic on machine integers.

/// Largest absolute value accepted by primality and factorization routines.
pub const TRIAL_DIVISION_BOUND: i64 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factors of `n` with multiplicity, ascending. Empty for `n <= 1`.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    while n.is_multiple_of(2) {
        out.push(2);
        n /= 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 2;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors of `n >= 1`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_after(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// The first `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut c = 1;
    while out.len() < k {
        c = next_prime_after(c);
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn factors_reassemble() {
        for n in 1..2000u64 {
            let fs = prime_factors(n);
            assert_eq!(fs.iter().product::<u64>(), n);
            assert!(fs.windows(2).all(|w| w[0] <= w[1]));
            assert!(fs.iter().all(|&p| is_prime(p)));
        }
    }

    #[test]
    fn divisors_of_twelve() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn next_prime() {
        assert_eq!(next_prime_after(1), 2);
        assert_eq!(next_prime_after(6), 7);
        assert_eq!(next_prime_after(7), 11);
        assert_eq!(first_primes(4), vec![2, 3, 5, 7]);
    }

    #[test]
    fn largest_bound_prime() {
        // 2^31 - 1 is a Mersenne prime.
        assert!(is_prime((1u64 << 31) - 1));
        assert!(!is_prime(1u64 << 31));
    }
}
