//! The curve `E: y² = x³ + ax² + bx` over `Q` and its reductions modulo
//! small primes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{exact_sqrt, is_prime_u64, mod_u64, pow_mod, pow_product, FactoredInt, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("the Weierstrass model is singular")]
    Singular,
    #[error("{0} is a prime of bad reduction")]
    BadPrime(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime where (0,0) is claimed to be the singular point")]
    UnexpectedSingularPrime(u64),
    #[error("({}, {}) does not have the shape (α/e², β/e³)", .0.0, .0.1)]
    NotNormalizable(Box<(Rational, Rational)>),
    #[error("point is not on the curve")]
    NotOnCurve,
}

/// A rational point, stored as `(α/e², β/e³)` with `e ≥ 1` and
/// `gcd(α, e) = gcd(β, e) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { alpha: BigInt, beta: BigInt, e: BigInt },
}

impl CurvePoint {
    pub fn from_xy(x: &Rational, y: &Rational) -> Result<Self, CurveError> {
        let err = || CurveError::NotNormalizable(Box::new((x.clone(), y.clone())));
        let e = exact_sqrt(x.denom()).ok_or_else(err)?;
        let e3 = &e * &e * &e;
        if *y.denom() != e3 && !(y.is_zero() && e.is_one()) {
            return Err(err());
        }
        Ok(CurvePoint::Affine { alpha: x.numer().clone(), beta: y.numer().clone(), e })
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<Rational> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { alpha, e, .. } => Some(Rational::new(alpha.clone(), e * e)),
        }
    }

    pub fn y(&self) -> Option<Rational> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { beta, e, .. } => Some(Rational::new(beta.clone(), e * e * e)),
        }
    }

    pub fn alpha(&self) -> Option<&BigInt> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { alpha, .. } => Some(alpha),
        }
    }

    pub fn e(&self) -> Option<&BigInt> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { e, .. } => Some(e),
        }
    }

    /// Whether both coordinates lie in `Z[1/2]`.
    pub fn is_half_integral(&self) -> bool {
        match self.e() {
            None => false,
            Some(e) => {
                let mut e = e.clone();
                while e.is_even() {
                    e >>= 1;
                }
                e.is_one()
            }
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { .. } => write!(f, "({}, {})", self.x().unwrap(), self.y().unwrap()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub a: BigInt,
    pub b: BigInt,
}

/// `(x, y)` from `(L, d)`: `x = 2^-4·5²·11·443·(L + 48)`, `y = 2·3·5²·11²·443²·d`.
pub fn from_ld(l: &BigInt, d: &Rational) -> (Rational, Rational) {
    let sx = Rational::new(pow_product(&[(5, 2), (11, 1), (443, 1)]), BigInt::from(16));
    let sy = Rational::from_integer(pow_product(&[(2, 1), (3, 1), (5, 2), (11, 2), (443, 2)]));
    (sx * Rational::from_integer(l + 48), sy * d)
}

impl Curve {
    pub fn new(a: BigInt, b: BigInt) -> Result<Self, CurveError> {
        let c = Curve { a, b };
        if c.discriminant().is_zero() {
            return Err(CurveError::Singular);
        }
        Ok(c)
    }

    /// `a = -3²·11·23·443`, `b = 2²·5²·11³·13·443²`.
    pub fn standard() -> Self {
        Curve {
            a: -pow_product(&[(3, 2), (11, 1), (23, 1), (443, 1)]),
            b: pow_product(&[(2, 2), (5, 2), (11, 3), (13, 1), (443, 2)]),
        }
    }

    /// The generator of the free part.
    pub fn generator(&self) -> CurvePoint {
        let x = Rational::new(
            pow_product(&[(2, 1), (3, 2), (11, 2), (83, 2), (443, 2), (6481, 2)]),
            pow_product(&[(7, 4), (41, 2), (71, 2), (193, 2)]),
        );
        let y = Rational::new(
            pow_product(&[(2, 1), (3, 1), (11, 3), (31, 1), (83, 1), (163, 1), (443, 2), (6481, 1), (240623, 1), (3691717, 1)]),
            pow_product(&[(7, 6), (41, 3), (71, 3), (193, 3)]),
        );
        CurvePoint::from_xy(&x, &y).expect("normalized generator")
    }

    /// The rational 2-torsion point `(0, 0)`.
    pub fn two_torsion(&self) -> CurvePoint {
        CurvePoint::Affine { alpha: BigInt::zero(), beta: BigInt::zero(), e: BigInt::one() }
    }

    pub fn a2_minus_4b(&self) -> BigInt {
        &self.a * &self.a - BigInt::from(4) * &self.b
    }

    /// `Δ = 16 b² (a² - 4b)`.
    pub fn discriminant(&self) -> BigInt {
        BigInt::from(16) * &self.b * &self.b * self.a2_minus_4b()
    }

    pub fn discriminant_factored(&self) -> FactoredInt {
        FactoredInt::factor(&self.discriminant(), 1_000_000)
    }

    pub fn bad_primes(&self) -> Vec<u64> {
        self.discriminant_factored()
            .factors
            .iter()
            .map(|(p, _)| p.to_u64().expect("small bad prime"))
            .collect()
    }

    pub fn rhs(&self, x: &Rational) -> Rational {
        let a = Rational::from_integer(self.a.clone());
        let b = Rational::from_integer(self.b.clone());
        x * x * x + a * x * x + b * x
    }

    pub fn on_curve(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { .. } => {
                let (x, y) = (p.x().unwrap(), p.y().unwrap());
                &y * &y == self.rhs(&x)
            }
        }
    }

    pub fn point(&self, x: &Rational, y: &Rational) -> Result<CurvePoint, CurveError> {
        let p = CurvePoint::from_xy(x, y)?;
        if !self.on_curve(&p) {
            return Err(CurveError::NotOnCurve);
        }
        Ok(p)
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { alpha, beta, e } => CurvePoint::Affine { alpha: alpha.clone(), beta: -beta, e: e.clone() },
        }
    }

    /// Chord-tangent addition.
    pub fn add(&self, p1: &CurvePoint, p2: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p1, p2) {
            (CurvePoint::Infinity, _) => return p2.clone(),
            (_, CurvePoint::Infinity) => return p1.clone(),
            _ => (p1.x().unwrap(), p1.y().unwrap(), p2.x().unwrap(), p2.y().unwrap()),
        };
        let a = Rational::from_integer(self.a.clone());
        let b = Rational::from_integer(self.b.clone());
        let slope = if x1 == x2 {
            if (&y1 + &y2).is_zero() {
                return CurvePoint::Infinity;
            }
            (Rational::from_integer(3.into()) * &x1 * &x1 + Rational::from_integer(2.into()) * &a * &x1 + b)
                / (Rational::from_integer(2.into()) * &y1)
        } else {
            (&y2 - &y1) / (&x2 - &x1)
        };
        let x3 = &slope * &slope - &a - &x1 - &x2;
        let y3 = &slope * (&x1 - &x3) - &y1;
        CurvePoint::from_xy(&x3, &y3).expect("sum of rational points is normalizable")
    }

    pub fn double(&self, p: &CurvePoint) -> CurvePoint {
        self.add(p, p)
    }

    /// `n·P` by double-and-add (negative `n` allowed).
    pub fn mul(&self, n: i64, p: &CurvePoint) -> CurvePoint {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.double(&pow);
            }
        }
        acc
    }

    /// `R + Q = (b/x, -b y / x²)` for `Q = (0, 0)`.
    pub fn add_q(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => self.two_torsion(),
            CurvePoint::Affine { alpha, .. } if alpha.is_zero() => CurvePoint::Infinity,
            _ => {
                let (x, y) = (p.x().unwrap(), p.y().unwrap());
                let b = Rational::from_integer(self.b.clone());
                let nx = &b / &x;
                let ny = -(&b * &y) / (&x * &x);
                CurvePoint::from_xy(&nx, &ny).expect("R + Q is normalizable")
            }
        }
    }

    /// Unreduced numerator and denominator of the closed doubling formula
    /// `x(2R) = (α² - b e⁴)² / (4e²(α³ + aα²e² + bαe⁴))`.
    pub fn double_formula_parts(&self, p: &CurvePoint) -> Option<(BigInt, BigInt)> {
        let CurvePoint::Affine { alpha, e, .. } = p else {
            return None;
        };
        let e2 = e * e;
        let e4 = &e2 * &e2;
        let t = alpha * alpha - &self.b * &e4;
        let num = &t * &t;
        let den = BigInt::from(4) * &e2 * (alpha * alpha * alpha + &self.a * alpha * alpha * &e2 + &self.b * alpha * &e4);
        Some((num, den))
    }

    /// `x(2R)` from the closed formula; `None` when `2R = O`.
    pub fn double_formula_x(&self, p: &CurvePoint) -> Option<Rational> {
        let (num, den) = self.double_formula_parts(p)?;
        (!den.is_zero()).then(|| Rational::new(num, den))
    }

    pub fn reduce_curve(&self, p: u64) -> Result<FpCurve, CurveError> {
        if !is_prime_u64(p) {
            return Err(CurveError::NotPrime(p));
        }
        Ok(FpCurve { a: mod_u64(&self.a, p), b: mod_u64(&self.b, p), p })
    }

    /// Reduction of a rational point modulo a prime `p`.
    pub fn reduce_point(&self, pt: &CurvePoint, p: u64) -> FpPoint {
        match pt {
            CurvePoint::Infinity => FpPoint::Infinity,
            CurvePoint::Affine { alpha, beta, e } => {
                let em = mod_u64(e, p);
                if em == 0 {
                    return FpPoint::Infinity;
                }
                let inv = pow_mod(em, p - 2, p);
                let inv2 = mulm(inv, inv, p);
                let inv3 = mulm(inv2, inv, p);
                FpPoint::Affine(mulm(mod_u64(alpha, p), inv2, p), mulm(mod_u64(beta, p), inv3, p))
            }
        }
    }

    pub fn count_points(&self, p: u64) -> Result<PointCount, CurveError> {
        if self.bad_primes().contains(&p) {
            return Err(CurveError::BadPrime(p));
        }
        Ok(self.reduce_curve(p)?.count())
    }

    /// Certifies that the only singular point of `E(F_p)` is `(0, 0)`, for
    /// the bad primes dividing `b`.
    pub fn singular_point(&self, p: u64) -> Result<FpPoint, CurveError> {
        if !is_prime_u64(p) {
            return Err(CurveError::NotPrime(p));
        }
        if !(&self.b % BigInt::from(p)).is_zero() || !self.bad_primes().contains(&p) {
            return Err(CurveError::UnexpectedSingularPrime(p));
        }
        let sing = self.reduce_curve(p)?.singular_points();
        if sing == [FpPoint::Affine(0, 0)] {
            Ok(FpPoint::Affine(0, 0))
        } else {
            Err(CurveError::UnexpectedSingularPrime(p))
        }
    }

    pub fn torsion_subgroup(&self) -> TorsionCertificate {
        let a2_4b = self.a2_minus_4b();
        let counts: Vec<(u64, u64)> = [3u64, 19]
            .iter()
            .filter_map(|&p| self.count_points(p).ok().map(|c| (p, c.order)))
            .collect();
        // The prime-to-p part of the torsion injects into E(F_p).
        let mut bound = 1u64;
        let mut primes: Vec<u64> = Vec::new();
        for &(_, n) in &counts {
            for l in 2..=n {
                if n % l == 0 && is_prime_u64(l) && !primes.contains(&l) {
                    primes.push(l);
                }
            }
        }
        primes.sort();
        let mut ell_bounds = Vec::new();
        for &l in &primes {
            let exp = counts
                .iter()
                .filter(|(p, _)| *p != l)
                .map(|&(_, n)| {
                    let mut k = 0;
                    let mut m = n;
                    while m % l == 0 {
                        m /= l;
                        k += 1;
                    }
                    k
                })
                .min()
                .unwrap_or(u32::MAX);
            bound *= l.pow(exp);
            ell_bounds.push((l, exp));
        }
        let q = self.two_torsion();
        let q_order_two = !q.is_infinity() && self.double(&q).is_infinity();
        let rational_two_torsion = if a2_4b.is_negative() || exact_sqrt(&a2_4b).is_none() {
            vec![CurvePoint::Infinity, q]
        } else {
            Vec::new()
        };
        TorsionCertificate { a2_minus_4b_negative: a2_4b.is_negative(), counts, ell_bounds, order_bound: bound, q_order_two, rational_two_torsion }
    }
}

/// Evidence that `E(Q)_tors = {O, (0,0)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCertificate {
    pub a2_minus_4b_negative: bool,
    /// `(p, |E(F_p)|)` for the auxiliary primes.
    pub counts: Vec<(u64, u64)>,
    /// Largest admissible exponent of each prime `ℓ` in the torsion order.
    pub ell_bounds: Vec<(u64, u32)>,
    pub order_bound: u64,
    pub q_order_two: bool,
    pub rational_two_torsion: Vec<CurvePoint>,
}

impl TorsionCertificate {
    pub fn certifies_z2(&self) -> bool {
        self.a2_minus_4b_negative && self.order_bound == 2 && self.q_order_two && self.rational_two_torsion.len() == 2
    }
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FpPoint {
    Infinity,
    Affine(u64, u64),
}

/// `y² = x³ + ax² + bx` over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpCurve {
    pub a: u64,
    pub b: u64,
    pub p: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCount {
    pub p: u64,
    pub order: u64,
    /// Points of exact order two.
    pub two_torsion: u64,
    pub exponent: u64,
}

impl FpCurve {
    fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        let x2 = mulm(x, x, p);
        (mulm(x2, x, p) + mulm(self.a, x2, p) + mulm(self.b, x, p)) % p
    }

    pub fn contains(&self, pt: FpPoint) -> bool {
        match pt {
            FpPoint::Infinity => true,
            FpPoint::Affine(x, y) => mulm(y, y, self.p) == self.rhs(x),
        }
    }

    fn is_singular(&self, x: u64, y: u64) -> bool {
        let p = self.p;
        let dx = (3 * mulm(x, x, p) + 2 * mulm(self.a, x, p) + self.b) % p;
        let dy = (2 * y) % p;
        self.contains(FpPoint::Affine(x, y)) && dx == 0 && dy == 0
    }

    pub fn singular_points(&self) -> Vec<FpPoint> {
        self.affine_points().into_iter().filter(|pt| matches!(pt, FpPoint::Affine(x, y) if self.is_singular(*x, *y))).collect()
    }

    /// Every affine solution, in lexicographic order.
    pub fn affine_points(&self) -> Vec<FpPoint> {
        let p = self.p;
        let mut roots: Vec<Vec<u64>> = vec![Vec::new(); p as usize];
        for y in 0..p {
            roots[mulm(y, y, p) as usize].push(y);
        }
        let mut out = Vec::new();
        for x in 0..p {
            for &y in &roots[self.rhs(x) as usize] {
                out.push(FpPoint::Affine(x, y));
            }
        }
        out
    }

    /// Group law on the smooth locus.
    pub fn add(&self, p1: FpPoint, p2: FpPoint) -> FpPoint {
        let p = self.p;
        let (x1, y1, x2, y2) = match (p1, p2) {
            (FpPoint::Infinity, q) | (q, FpPoint::Infinity) => return q,
            (FpPoint::Affine(a, b), FpPoint::Affine(c, d)) => (a, b, c, d),
        };
        let inv = |v: u64| pow_mod(v, p - 2, p);
        let lambda = if x1 == x2 {
            if (y1 + y2) % p == 0 {
                return FpPoint::Infinity;
            }
            let num = (3 * mulm(x1, x1, p) + 2 * mulm(self.a, x1, p) + self.b) % p;
            mulm(num, inv(2 * y1 % p), p)
        } else {
            mulm((y2 + p - y1) % p, inv((x2 + p - x1) % p), p)
        };
        let x3 = (mulm(lambda, lambda, p) + 3 * p - self.a - x1 - x2) % p;
        let y3 = (mulm(lambda, (x1 + p - x3) % p, p) + p - y1) % p;
        FpPoint::Affine(x3, y3)
    }

    pub fn mul(&self, n: u64, pt: FpPoint) -> FpPoint {
        let mut acc = FpPoint::Infinity;
        let mut pow = pt;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, pow);
            }
            pow = self.add(pow, pow);
            k >>= 1;
        }
        acc
    }

    pub fn order_of(&self, pt: FpPoint) -> u64 {
        let mut k = 1;
        let mut cur = pt;
        while cur != FpPoint::Infinity {
            cur = self.add(cur, pt);
            k += 1;
        }
        k
    }

    pub fn count(&self) -> PointCount {
        let pts = self.affine_points();
        let order = pts.len() as u64 + 1;
        let two_torsion = pts.iter().filter(|pt| matches!(pt, FpPoint::Affine(_, 0))).count() as u64;
        let exponent = pts.iter().fold(1u64, |acc, &pt| acc.lcm(&self.order_of(pt)));
        PointCount { p: self.p, order, two_torsion, exponent }
    }

    /// `2E(F_p)`.
    pub fn doubles(&self) -> Vec<FpPoint> {
        let mut out: Vec<FpPoint> = std::iter::once(FpPoint::Infinity)
            .chain(self.affine_points())
            .map(|pt| self.add(pt, pt))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{big, q};

    #[test]
    fn curve_constants() {
        let c = Curve::standard();
        assert_eq!(c.a, big(-1_008_711));
        assert_eq!(c.a2_minus_4b(), -pow_product(&[(11, 2), (113, 1), (127, 1), (443, 2)]));
        assert_eq!(
            c.discriminant(),
            -pow_product(&[(2, 8), (5, 4), (11, 8), (13, 2), (113, 1), (127, 1), (443, 6)])
        );
        assert_eq!(c.bad_primes(), vec![2, 5, 11, 13, 113, 127, 443]);
    }

    #[test]
    fn generator_and_torsion_point() {
        let c = Curve::standard();
        let p = c.generator();
        assert!(c.on_curve(&p));
        assert_eq!(p.e(), Some(&pow_product(&[(7, 2), (41, 1), (71, 1), (193, 1)])));
        assert!(c.on_curve(&c.two_torsion()));
        assert!(c.add(&c.two_torsion(), &c.two_torsion()).is_infinity());
        let bad = CurvePoint::Affine { alpha: big(1), beta: big(1), e: big(1) };
        assert!(!c.on_curve(&bad));
    }

    #[test]
    fn p_plus_q() {
        let c = Curve::standard();
        let pq = c.add(&c.generator(), &c.two_torsion());
        let expected = Rational::new(
            pow_product(&[(2, 1), (5, 2), (7, 4), (11, 1), (13, 1), (41, 2), (71, 2), (193, 2)]),
            pow_product(&[(3, 2), (83, 2), (6481, 2)]),
        );
        assert_eq!(pq.x(), Some(expected));
        assert_eq!(pq, c.add_q(&c.generator()));
    }

    #[test]
    fn doubling_formula_agrees() {
        let c = Curve::standard();
        let p = c.generator();
        let p2 = c.double(&p);
        assert_eq!(c.double_formula_x(&p), p2.x());
        assert_eq!(c.double_formula_x(&p2), c.double(&p2).x());
    }

    #[test]
    fn from_ld_origin() {
        assert_eq!(from_ld(&big(-48), &q(0, 1)), (q(0, 1), q(0, 1)));
    }

    #[test]
    fn small_field_counts() {
        let c = Curve::standard();
        let f3 = c.count_points(3).unwrap();
        assert_eq!((f3.order, f3.two_torsion, f3.exponent), (4, 3, 2));
        assert_eq!(c.count_points(19).unwrap().order, 14);
        assert_eq!(c.count_points(7).unwrap().order, 6);
        assert_eq!(c.count_points(5), Err(CurveError::BadPrime(5)));
    }

    #[test]
    fn singular_points_at_bad_primes() {
        let c = Curve::standard();
        for p in [2, 5, 11, 13, 443] {
            assert_eq!(c.singular_point(p), Ok(FpPoint::Affine(0, 0)), "p = {p}");
        }
        assert!(c.singular_point(113).is_err());
        assert!(c.singular_point(7).is_err());
    }

    #[test]
    fn torsion() {
        let cert = Curve::standard().torsion_subgroup();
        assert!(cert.certifies_z2(), "{cert:?}");
    }

    #[test]
    fn normalization_rejects_bad_shapes() {
        assert!(CurvePoint::from_xy(&q(1, 2), &q(1, 1)).is_err());
    }
}
