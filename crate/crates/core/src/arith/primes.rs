//! Small-integer helpers: primality, factorization, primitive roots.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes strictly below `bound`, ascending.
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n];
    let mut primes = Vec::new();
    for i in 2..n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Prime factorization as (prime, exponent) pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
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

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (q, _)| acc / q * (q - 1))
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// `a mod m` for signed `a`, in `[0, m)`.
pub fn rem_euclid(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

/// Multiplicative order of `a` modulo the prime `p`; `None` when `p | a`.
pub fn multiplicative_order(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let group = p - 1;
    let mut order = group;
    for (q, _) in factorize(group) {
        while order.is_multiple_of(q) && mod_pow(a, order / q, p) == 1 {
            order /= q;
        }
    }
    Some(order)
}

/// Smallest positive primitive root modulo the odd prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    debug_assert!(is_prime(p));
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| multiplicative_order(g, p) == Some(p - 1))
        .expect("every prime has a primitive root")
}

/// Discrete logarithm table for the primitive root `g`: `table[a] = j` with `g^j ≡ a mod p`.
/// Index 0 is unused and holds `u64::MAX`.
pub fn discrete_log_table(p: u64, g: u64) -> Vec<u64> {
    let mut table = vec![u64::MAX; p as usize];
    let mut x = 1u64;
    for j in 0..p - 1 {
        table[x as usize] = j;
        x = x * g % p;
    }
    table
}
