//! Exact integer and rational helpers shared by every stage.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

pub type Rational = BigRational;

/// `n/d` as an exact rational.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Product of prime powers, e.g. `pow_product(&[(2, 14), (3, 2)])`.
pub fn pow_product(factors: &[(u64, u32)]) -> BigInt {
    factors
        .iter()
        .fold(BigInt::one(), |acc, &(p, e)| acc * BigInt::from(p).pow(e))
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (quo, rem) = n.div_rem(&p);
        if !rem.is_zero() {
            return v;
        }
        n = quo;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation_q(x: &Rational, p: u64) -> i64 {
    valuation(x.numer(), p) as i64 - valuation(x.denom(), p) as i64
}

/// Integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_rational_square(x: &Rational) -> bool {
    x.is_zero() || (exact_sqrt(x.numer()).is_some() && exact_sqrt(x.denom()).is_some())
}

pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    Some(Rational::new(exact_sqrt(x.numer())?, exact_sqrt(x.denom())?))
}

/// `base^exp mod m` for machine-size operands.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Least nonnegative residue of a big integer.
pub fn mod_u64(n: &BigInt, m: u64) -> u64 {
    let r = (n.magnitude() % m).to_u64().unwrap();
    if n.is_negative() && r != 0 {
        m - r
    } else {
        r
    }
}

/// All square-free products of subsets of `primes`, optionally with both signs.
/// Ordered by subset bitmask, positive before negative.
pub fn squarefree_divisors(primes: &[u64], signed: bool) -> Vec<BigInt> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << primes.len()) {
        let d: BigInt = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(BigInt::one(), |acc, (_, &p)| acc * p);
        if signed {
            out.push(d.clone());
            out.push(-d);
        } else {
            out.push(d);
        }
    }
    out
}

/// Every positive divisor of `prod p_i^{e_i}`, in increasing order.
pub fn divisors(factors: &[(u64, u32)]) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for &(p, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Square-free kernel of a nonzero rational modulo squares, as a signed integer.
pub fn squarefree_class(x: &Rational) -> Option<BigInt> {
    let n = x.numer() * x.denom();
    let f = FactoredInt::factor(&n, 1_000_000);
    if f.cofactor.is_some() {
        return None;
    }
    let mut k = BigInt::from(f.sign);
    for (p, e) in &f.factors {
        if e % 2 == 1 {
            k *= BigInt::from(p.clone());
        }
    }
    Some(k)
}

/// Integer in factored form. Anything left after trial division is kept as
/// an unfactored cofactor so the value always round-trips.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredInt {
    pub sign: i8,
    pub factors: Vec<(BigUint, u32)>,
    pub cofactor: Option<BigUint>,
}

impl FactoredInt {
    /// Trial division by every integer up to `bound`.
    pub fn factor(n: &BigInt, bound: u64) -> Self {
        let sign = match n.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        let mut m = n.magnitude().clone();
        let mut factors = Vec::new();
        if m.is_zero() {
            return FactoredInt { sign, factors, cofactor: None };
        }
        let mut d = 2u64;
        while d <= bound {
            let dd = BigUint::from(d);
            if &dd * &dd > m {
                break;
            }
            let mut e = 0;
            loop {
                let (quo, rem) = m.div_rem(&dd);
                if !rem.is_zero() {
                    break;
                }
                m = quo;
                e += 1;
            }
            if e > 0 {
                factors.push((dd, e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        let mut cofactor = None;
        if !m.is_one() {
            let fully = BigUint::from(d) * BigUint::from(d) > m;
            if fully {
                factors.push((m, 1));
            } else {
                cofactor = Some(m);
            }
        }
        FactoredInt { sign, factors, cofactor }
    }

    pub fn from_powers(sign: i8, factors: &[(u64, u32)]) -> Self {
        FactoredInt {
            sign,
            factors: factors.iter().map(|&(p, e)| (BigUint::from(p), e)).collect(),
            cofactor: None,
        }
    }

    pub fn value(&self) -> BigInt {
        let mut m = BigUint::one();
        for (p, e) in &self.factors {
            m *= p.pow(*e);
        }
        if let Some(c) = &self.cofactor {
            m *= c;
        }
        match self.sign {
            0 => BigInt::zero(),
            s if s < 0 => -BigInt::from(m),
            _ => BigInt::from(m),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.cofactor.is_none()
    }

    pub fn primes(&self) -> Vec<BigUint> {
        self.factors.iter().map(|(p, _)| p.clone()).collect()
    }
}

impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return write!(f, "0");
        }
        if self.sign < 0 {
            write!(f, "-")?;
        }
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        if let Some(c) = &self.cofactor {
            parts.push(format!("[{c}]"));
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join("·"))
    }
}

impl Serialize for FactoredInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let factors: Vec<(serde_json::Value, u32)> = self
            .factors
            .iter()
            .map(|(p, e)| (biguint_json(p), *e))
            .collect();
        let n = if self.cofactor.is_some() { 3 } else { 2 };
        let mut st = s.serialize_struct("FactoredInt", n)?;
        st.serialize_field("sign", &self.sign)?;
        st.serialize_field("factors", &factors)?;
        if let Some(c) = &self.cofactor {
            st.serialize_field("cofactor", &c.to_string())?;
        }
        st.end()
    }
}

fn biguint_json(p: &BigUint) -> serde_json::Value {
    match p.to_u64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(p.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_round_trip() {
        let n = -pow_product(&[(2, 8), (5, 4), (11, 8), (13, 2), (113, 1), (127, 1), (443, 6)]);
        let f = FactoredInt::factor(&n, 10_000);
        assert!(f.is_complete());
        assert_eq!(f.value(), n);
        assert_eq!(f.to_string(), "-2^8·5^4·11^8·13^2·113·127·443^6");
    }

    #[test]
    fn factor_keeps_cofactor() {
        // 1000003 is prime and beyond the bound.
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64) * 6;
        let f = FactoredInt::factor(&n, 100);
        assert!(!f.is_complete());
        assert_eq!(f.value(), n);
    }

    #[test]
    fn divisor_counts() {
        assert_eq!(divisors(&[(7, 2), (41, 1), (71, 1), (193, 1)]).len(), 24);
        assert_eq!(squarefree_divisors(&[2, 5, 11], true).len(), 16);
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&big(48), 2), 4);
        assert_eq!(valuation_q(&q(1, 16), 2), -4);
        assert_eq!(exact_sqrt(&big(2025)), Some(big(45)));
        assert_eq!(exact_sqrt(&big(-4)), None);
    }

    #[test]
    fn squarefree_class_of_rational() {
        assert_eq!(squarefree_class(&q(18, 49)), Some(big(2)));
        assert_eq!(squarefree_class(&q(-3, 12)), Some(big(-1)));
    }
}
