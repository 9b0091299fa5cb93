use num_bigint::BigInt;
use num_traits::One;

/// Integer binomial `m(m-1)…(m-k+1)/k!`, valid for negative `m`.
pub fn binom_int(m: &BigInt, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= m - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

pub fn binom_i64(m: i64, k: u64) -> BigInt {
    binom_int(&BigInt::from(m), k)
}

/// `binom(m, k) mod p`. Lucas' digit product for `m ≥ 0`; negative `m`
/// goes through `binom(m,k) = (-1)^k binom(k-m-1, k)`.
pub fn lucas_binom(m: i64, k: u64, p: u64) -> u64 {
    if m < 0 {
        let top = (k as i128 - m as i128 - 1) as u128;
        let v = lucas_nonneg(top, k as u128, p as u128) as u64;
        return if k % 2 == 1 { (p - v) % p } else { v };
    }
    lucas_nonneg(m as u128, k as u128, p as u128) as u64
}

fn lucas_nonneg(mut m: u128, mut k: u128, p: u128) -> u128 {
    let mut acc = 1u128;
    while k > 0 || m > 0 {
        let (mi, ki) = (m % p, k % p);
        if ki > mi {
            return 0;
        }
        acc = acc * small_binom(mi, ki, p) % p;
        m /= p;
        k /= p;
    }
    acc % p
}

fn small_binom(m: u128, k: u128, p: u128) -> u128 {
    // m < p so no factor of p appears in the factorials
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num = num * ((m - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    let inv = pow_mod(den, p - 2, p);
    num * inv % p
}

fn pow_mod(mut b: u128, mut e: u128, p: u128) -> u128 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}


#[cfg(test)]
mod tests {
    use super::*;
    use super::super::fp::reduce_int;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(lucas_binom(5, 3, 3), 1);
        assert_eq!(lucas_binom(7, 9, 2), 0);
        for p in [2u64, 3, 5, 7] {
            for r in 0..4 {
                let pr = p.pow(r) as i64;
                assert_eq!(lucas_binom(pr, pr as u64, p), 1);
            }
        }
        assert_eq!(binom_i64(-1, 3), BigInt::from(-1));
        assert_eq!(binom_i64(-2, 2), BigInt::from(3));
    }

    #[test]
    fn exhaustive_against_integer_binomial() {
        for p in [2u64, 3, 5] {
            for m in -30i64..=30 {
                for k in 0..=30u64 {
                    let expect = reduce_int(&binom_i64(m, k), p);
                    assert_eq!(lucas_binom(m, k, p), expect, "m={m} k={k} p={p}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn large_arguments_agree(m in -400i64..400, k in 0u64..60, pi in 0usize..4) {
            let p = [2u64, 3, 5, 7][pi];
            prop_assert_eq!(lucas_binom(m, k, p), reduce_int(&binom_i64(m, k), p));
        }
    }
}
