//! Points of `E` with coordinates in `Z[1/2]`: denominator certificates for
//! the base cases, the mod 7 doubling pattern, the prime `q` that forces an
//! odd denominator on `2^i P + Q`, and a direct scan over `nP + kQ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_prime_u64, mod_u64, valuation_q, FactoredInt, Rational};
use crate::curve::{Curve, CurveError, CurvePoint};

/// Trial division bound used by every certificate here.
pub const TRIAL_BOUND: u64 = 1_000_000;

/// Smallest odd prime `≤ bound` dividing `n`.
pub fn smallest_odd_prime_factor(n: &BigInt, bound: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    (3..=bound).step_by(2).find(|&p| is_prime_u64(p) && mod_u64(n, p) == 0)
}

fn odd_part(n: &BigInt) -> BigInt {
    let mut m = n.abs();
    while m.is_even() && !m.is_zero() {
        m >>= 1;
    }
    m
}

/// Why `nP + kQ` has a denominator outside `Z[1/2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// An odd prime dividing `e`.
    Prime(u64),
    /// No odd prime below the bound, but the odd part of `e` exceeds 1.
    OddCofactor(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorCertificate {
    pub n: i64,
    pub k: u8,
    pub point: CurvePoint,
    /// `e(nP + kQ)`, or `None` at `O`.
    pub e: Option<BigInt>,
    pub witness: Option<Witness>,
}

impl DenominatorCertificate {
    fn build(curve: &Curve, n: i64, k: u8) -> Self {
        let p = curve.generator();
        let base = curve.mul(n, &p);
        let point = if k == 1 { curve.add_q(&base) } else { base };
        let e = point.e().cloned();
        let witness = e.as_ref().and_then(|e| {
            if odd_part(e).is_one() {
                None
            } else {
                Some(match smallest_odd_prime_factor(e, TRIAL_BOUND) {
                    Some(q) => Witness::Prime(q),
                    None => Witness::OddCofactor(odd_part(e)),
                })
            }
        });
        DenominatorCertificate { n, k, point, e, witness }
    }

    /// Re-checks the witness against the stored denominator.
    pub fn verify(&self) -> bool {
        match (&self.e, &self.witness) {
            (Some(e), Some(Witness::Prime(q))) => mod_u64(e, *q) == 0,
            (Some(e), Some(Witness::OddCofactor(c))) => c > &BigInt::one() && (e % c).is_zero(),
            (Some(e), None) => odd_part(e).is_one(),
            (None, None) => true,
            (None, Some(_)) => false,
        }
    }

    pub fn excluded(&self) -> bool {
        self.witness.is_some()
    }

    pub fn factored_e(&self) -> Option<FactoredInt> {
        self.e.as_ref().map(|e| FactoredInt::factor(e, 1000))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseCases {
    pub p: DenominatorCertificate,
    pub p_plus_q: DenominatorCertificate,
    pub two_p_plus_q: DenominatorCertificate,
}

impl BaseCases {
    pub fn holds(&self) -> bool {
        let divides = |c: &DenominatorCertificate, q: u64| c.e.as_ref().is_some_and(|e| mod_u64(e, q) == 0);
        divides(&self.p, 7) && divides(&self.p_plus_q, 3) && divides(&self.two_p_plus_q, 79)
    }
}

/// `e(P)`, `e(P + Q)`, `e(2P + Q)` with the divisibility by 7, 3, 79.
pub fn certificate_base_cases(curve: &Curve) -> BaseCases {
    BaseCases {
        p: DenominatorCertificate::build(curve, 1, 0),
        p_plus_q: DenominatorCertificate::build(curve, 1, 1),
        two_p_plus_q: DenominatorCertificate::build(curve, 2, 1),
    }
}

/// Premises of the doubling pattern modulo 7.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mod7Pattern {
    pub j_max: u32,
    /// `α(2^j P) mod 7` for `j = 2..=j_max + 1`.
    pub alpha_residues: Vec<(u32, u64)>,
    /// `α(2^{j+1} P) ≡ ±(α² − b e⁴)² (mod 7)` for `j = 2..=j_max`.
    pub step_holds: Vec<(u32, bool)>,
    /// Decimal digits of `α(4P)`.
    pub alpha_4p_digits: usize,
    /// `α(4P)` prime to `2, 5, 11, 13, 443`.
    pub alpha_4p_coprime_to_b: bool,
    /// `4P` avoids the node `(0, 0)` modulo 113 and 127.
    pub nonsingular_at_113_127: bool,
    /// `x(2P) mod 2⁵`.
    pub x_2p_mod_32: u64,
    /// `v₂(x(4P))`.
    pub v2_x_4p: i64,
}

impl Mod7Pattern {
    pub fn holds(&self) -> bool {
        self.alpha_residues.iter().all(|(_, r)| *r == 3 || *r == 4)
            && self.step_holds.iter().all(|(_, ok)| *ok)
            && self.alpha_4p_coprime_to_b
            && self.nonsingular_at_113_127
            && self.x_2p_mod_32 == 4
            && self.v2_x_4p == -4
    }
}

/// `x mod 2^k` for `x` with odd denominator.
fn rational_mod_pow2(x: &Rational, k: u32) -> u64 {
    let m = 1u64 << k;
    let num = mod_u64(x.numer(), m);
    let den = mod_u64(x.denom(), m);
    // den is odd: invert by brute force in the small ring
    let inv = (1..m).step_by(2).find(|i| (den * i) % m == 1).expect("odd denominator");
    (num * inv) % m
}

pub fn mod7_pattern(curve: &Curve, j_max: u32) -> Result<Mod7Pattern, CurveError> {
    let p = curve.generator();
    let mut powers = vec![p.clone()];
    for _ in 0..=j_max {
        let last = powers.last().unwrap();
        powers.push(curve.double(last));
    }
    let alpha_of = |j: usize| powers[j].alpha().cloned().unwrap_or_default();
    let e_of = |j: usize| powers[j].e().cloned().unwrap_or_default();

    let alpha_residues = (2..=j_max + 1).map(|j| (j, mod_u64(&alpha_of(j as usize), 7))).collect();
    let step_holds = (2..=j_max)
        .map(|j| {
            let (alpha, e) = (alpha_of(j as usize), e_of(j as usize));
            let e4 = e.pow(4);
            let inner = &alpha * &alpha - &curve.b * e4;
            let predicted = mod_u64(&(&inner * &inner), 7);
            let actual = mod_u64(&alpha_of(j as usize + 1), 7);
            (j, actual == predicted || (actual + predicted) % 7 == 0)
        })
        .collect();

    let alpha4 = alpha_of(2);
    let alpha_4p_coprime_to_b = [2u64, 5, 11, 13, 443].iter().all(|&q| mod_u64(&alpha4, q) != 0);
    let nonsingular_at_113_127 = [113u64, 127].iter().all(|&q| {
        let node = curve.reduce_curve(q).map(|c| c.singular_points()).unwrap_or_default();
        !node.contains(&curve.reduce_point(&powers[2], q))
    });

    let x2 = powers[1].x().expect("2P affine");
    let x4 = powers[2].x().expect("4P affine");
    Ok(Mod7Pattern {
        j_max,
        alpha_residues,
        step_holds,
        alpha_4p_digits: alpha4.abs().to_string().len(),
        alpha_4p_coprime_to_b,
        nonsingular_at_113_127,
        x_2p_mod_32: rational_mod_pow2(&x2, 5),
        v2_x_4p: valuation_q(&x4, 2),
    })
}

/// Evidence for a prime `q ≢ 1 (mod 7)` dividing `α(2^i P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QWitness {
    /// An explicit prime below the trial bound.
    Prime(u64),
    /// The part of `|α|` free of primes below the trial bound. It is
    /// `≢ 1 (mod 7)`, so one of its prime factors is `≢ 1 (mod 7)`, and
    /// that prime exceeds every bad prime.
    Cofactor(BigInt),
}

/// A prime `q ≢ 1 (mod 7)` of good reduction dividing `α(2^i P)`, hence
/// dividing `e(2^i P + Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeQCertificate {
    pub i: u32,
    pub witness: Option<QWitness>,
    /// The witness divides `e(2^i P + Q)²`, so its primes divide `e`.
    pub divides_e_of_shift: bool,
}

impl PrimeQCertificate {
    pub fn complete(&self) -> bool {
        self.witness.is_some() && self.divides_e_of_shift
    }

    pub fn q(&self) -> Option<u64> {
        match self.witness {
            Some(QWitness::Prime(q)) => Some(q),
            _ => None,
        }
    }
}

pub const BAD_PRIMES: [u64; 7] = [2, 5, 11, 13, 113, 127, 443];

pub fn prime_q_argument(curve: &Curve, i: u32) -> PrimeQCertificate {
    let pt = curve.mul(1 << i, &curve.generator());
    let alpha = pt.alpha().cloned().unwrap_or_default();
    let shifted = curve.add_q(&pt);
    let mut cofactor = alpha.abs();
    let mut witness = None;
    if !cofactor.is_zero() {
        for q in (2..=TRIAL_BOUND).filter(|&q| is_prime_u64(q)) {
            if mod_u64(&cofactor, q) != 0 {
                continue;
            }
            if q % 7 != 1 && !BAD_PRIMES.contains(&q) {
                witness = Some(QWitness::Prime(q));
                break;
            }
            while mod_u64(&cofactor, q) == 0 {
                cofactor /= q;
            }
        }
        if witness.is_none() && mod_u64(&cofactor, 7) != 1 {
            witness = Some(QWitness::Cofactor(cofactor));
        }
    }
    let divides_e_of_shift = match (&witness, shifted.e()) {
        (Some(QWitness::Prime(q)), Some(e)) => mod_u64(e, *q) == 0,
        (Some(QWitness::Cofactor(c)), Some(e)) => (e * e % c).is_zero(),
        _ => false,
    };
    PrimeQCertificate { i, witness, divides_e_of_shift }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub bound: i64,
    pub certificates: Vec<DenominatorCertificate>,
}

impl ScanReport {
    /// `(n, k)` whose point lies in `Z[1/2]²`.
    pub fn half_integral(&self) -> Vec<(i64, u8)> {
        self.certificates.iter().filter(|c| c.e.is_some() && !c.excluded()).map(|c| (c.n, c.k)).collect()
    }

    pub fn all_verified(&self) -> bool {
        self.certificates.iter().all(DenominatorCertificate::verify)
    }

    /// Only `Q = (0, 0)` survives.
    pub fn only_two_torsion(&self) -> bool {
        self.half_integral() == [(0, 1)]
            && self
                .certificates
                .iter()
                .find(|c| (c.n, c.k) == (0, 1))
                .is_some_and(|c| c.point.alpha().is_some_and(Zero::is_zero))
    }
}

/// Every `nP + kQ` with `|n| ≤ bound`, `k ∈ {0, 1}`.
pub fn bounded_scan(curve: &Curve, bound: i64) -> ScanReport {
    let mut certificates = Vec::new();
    for n in -bound..=bound {
        for k in 0..=1u8 {
            certificates.push(DenominatorCertificate::build(curve, n, k));
        }
    }
    ScanReport { bound, certificates }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::big;

    #[test]
    fn base_cases() {
        let c = Curve::standard();
        let b = certificate_base_cases(&c);
        assert!(b.holds());
        assert_eq!(b.p.e, Some(big(49 * 41 * 71 * 193)));
        assert_eq!(b.p_plus_q.e, Some(big(3 * 83 * 6481)));
    }

    #[test]
    fn mod7() {
        let c = Curve::standard();
        let m = mod7_pattern(&c, 3).unwrap();
        assert!(m.holds(), "{m:?}");
        assert_eq!(m.alpha_residues[0].1, 4);
        assert_eq!(m.alpha_4p_digits, 256);
    }

    #[test]
    fn prime_q_for_4p() {
        let c = Curve::standard();
        let cert = prime_q_argument(&c, 2);
        assert!(cert.complete(), "{cert:?}");
        let q = cert.q().unwrap();
        assert_ne!(q % 7, 1);
    }

    #[test]
    fn prime_q_for_larger_doublings() {
        let c = Curve::standard();
        for i in 3..=4 {
            let cert = prime_q_argument(&c, i);
            assert!(cert.complete(), "i = {i}");
            if let Some(QWitness::Cofactor(m)) = &cert.witness {
                assert_ne!(mod_u64(m, 7), 1);
                assert!(smallest_odd_prime_factor(m, 1000).is_none());
            }
        }
    }

    #[test]
    fn small_scan() {
        let c = Curve::standard();
        let s = bounded_scan(&c, 3);
        assert!(s.all_verified());
        assert!(s.only_two_torsion());
    }
}
