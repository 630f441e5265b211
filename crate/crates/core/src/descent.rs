//! Two-isogeny descent on `y² = x³ + ax² + bx`: local solvability of the
//! quartic torsors, the ε-ladders that remove the locally solvable but
//! globally empty torsors, and the saturation argument for `⟨P, Q⟩`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{big, divisors, exact_sqrt, is_prime_u64, is_rational_square, squarefree_divisors, Rational};
use crate::curve::{Curve, CurveError, CurvePoint, FpPoint};
use crate::padic::{legendre_u64, solvable_at, BinaryForm, Constraint, LocalResult, PadicError, Place};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DescentError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("δ = {0} is not a square-free divisor of the radical")]
    InvalidDelta(BigInt),
    #[error("no ladder seed for δ = {0}")]
    NoSeed(BigInt),
    #[error("seed ({u0}, {w0}, {t}) is not on the conic for δ = {delta}")]
    SeedOffConic { delta: BigInt, u0: BigInt, w0: BigInt, t: BigInt },
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Quadratic residue symbol by Euler's criterion.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8, DescentError> {
    if p == 2 || !is_prime_u64(p) {
        return Err(DescentError::NotOddPrime(p));
    }
    Ok(legendre_u64(a, p))
}

/// Primes of `b = 2²·5²·11³·13·443²`.
pub const C_RADICAL: [u64; 5] = [2, 5, 11, 13, 443];
/// Primes of `a² − 4b = −11·113·127·443²`.
pub const C_PRIME_RADICAL: [u64; 4] = [11, 113, 127, 443];
/// Places at which the torsors are tested: all bad primes and `R`.
pub const TORSOR_PLACES: [Place; 8] = [
    Place::Real,
    Place::Prime(2),
    Place::Prime(5),
    Place::Prime(11),
    Place::Prime(13),
    Place::Prime(113),
    Place::Prime(127),
    Place::Prime(443),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TorsorKind {
    /// `δw² = δ²z⁴ + δaz² + b`.
    C,
    /// `δw² = δ²z⁴ − 2δaz² + (a² − 4b)`.
    CPrime,
}

impl fmt::Display for TorsorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsorKind::C => write!(f, "C"),
            TorsorKind::CPrime => write!(f, "C'"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorSpec {
    pub delta: BigInt,
    pub kind: TorsorKind,
    pub a: BigInt,
    pub b: BigInt,
}

impl TorsorSpec {
    pub fn new(curve: &Curve, kind: TorsorKind, delta: BigInt) -> Result<Self, DescentError> {
        let radical = match kind {
            TorsorKind::C => &C_RADICAL[..],
            TorsorKind::CPrime => &C_PRIME_RADICAL[..],
        };
        if !squarefree_divisors(radical, true).contains(&delta) {
            return Err(DescentError::InvalidDelta(delta));
        }
        Ok(TorsorSpec { delta, kind, a: curve.a.clone(), b: curve.b.clone() })
    }

    /// The quartic form `δ²X⁴ + c₂X²Y² + c₀Y⁴`.
    pub fn quartic(&self) -> BinaryForm {
        let d = &self.delta;
        let (c2, c0) = match self.kind {
            TorsorKind::C => (d * &self.a, self.b.clone()),
            TorsorKind::CPrime => (-(d * &self.a) * BigInt::from(2), &self.a * &self.a - &self.b * BigInt::from(4)),
        };
        BinaryForm::new(vec![c0, BigInt::zero(), c2, BigInt::zero(), d * d])
    }

    /// `δw² = F(z, 1)` has a point iff `δ·F` is a square.
    pub fn constraints(&self) -> Vec<Constraint> {
        vec![Constraint::new(self.delta.clone(), self.quartic())]
    }
}

pub fn quartic_solvable(spec: &TorsorSpec, place: Place, extra_precision: u32) -> Result<LocalResult, DescentError> {
    Ok(solvable_at(&spec.constraints(), place, extra_precision)?)
}

/// Local data of one torsor: the first place where it fails, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorVerdict {
    pub delta: BigInt,
    pub kind: TorsorKind,
    pub obstruction: Option<Place>,
    pub max_depth: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorSurvey {
    pub verdicts: Vec<TorsorVerdict>,
    /// δ for `C` that are everywhere locally solvable.
    pub locally_solvable_c: BTreeSet<BigInt>,
    pub locally_solvable_c_prime: BTreeSet<BigInt>,
    /// δ for `C` that carry a rational point.
    pub global_points_c: Vec<(BigInt, Rational, Rational)>,
    /// δ removed by an ε-ladder.
    pub ladder_excluded: Vec<BigInt>,
    pub survivors_c: BTreeSet<BigInt>,
    pub survivors_c_prime: BTreeSet<BigInt>,
}

impl TorsorSurvey {
    /// `|E(Q)/2E(Q)| = |Im ψ| · |Im ψ′| / 2`.
    pub fn mordell_weil_mod_2(&self) -> usize {
        self.survivors_c.len() * self.survivors_c_prime.len() / 2
    }

    pub fn rank(&self) -> u32 {
        (self.survivors_c.len() * self.survivors_c_prime.len()).trailing_zeros() - 2
    }
}

/// Square-free part of a nonzero integer.
pub fn squarefree_part(n: &BigInt, primes: &[u64]) -> BigInt {
    let mut out = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut m = n.abs();
    for &p in primes {
        let bp = BigInt::from(p);
        let mut parity = false;
        while m.is_multiple_of(&bp) {
            m /= &bp;
            parity = !parity;
        }
        if parity {
            out *= &bp;
        }
    }
    out * m
}

fn multiply_classes(x: &BigInt, y: &BigInt, primes: &[u64]) -> BigInt {
    squarefree_part(&(x * y), primes)
}

/// Rational point on `C_δ` from a point `R` with `x(R) = δ·z²`.
fn torsor_point(curve: &Curve, delta: &BigInt, pt: &CurvePoint) -> Option<(Rational, Rational)> {
    let x = pt.x()?;
    let y = pt.y()?;
    let d = Rational::from_integer(delta.clone());
    let z = crate::arith::rational_sqrt(&(&x / &d))?;
    if z.is_zero() {
        return None;
    }
    // δw² = δ²z⁴ + δaz² + b with w = y / (δ z)
    let w = &y / (&d * &z);
    let lhs = &d * &w * &w;
    let z2 = &z * &z;
    let rhs = &d * &d * &z2 * &z2 + &d * Rational::from_integer(curve.a.clone()) * &z2 + Rational::from_integer(curve.b.clone());
    (lhs == rhs).then_some((z, w))
}

pub fn torsor_survey(curve: &Curve, extra_precision: u32) -> Result<TorsorSurvey, DescentError> {
    let mut verdicts = Vec::new();
    let mut locally_c = BTreeSet::new();
    let mut locally_cp = BTreeSet::new();
    for (kind, radical) in [(TorsorKind::C, &C_RADICAL[..]), (TorsorKind::CPrime, &C_PRIME_RADICAL[..])] {
        for delta in squarefree_divisors(radical, true) {
            let spec = TorsorSpec::new(curve, kind, delta.clone())?;
            let mut obstruction = None;
            let mut max_depth = 0;
            for place in TORSOR_PLACES {
                let r = quartic_solvable(&spec, place, extra_precision)?;
                max_depth = max_depth.max(r.depth_reached);
                if !r.solvable {
                    obstruction = Some(place);
                    break;
                }
            }
            if obstruction.is_none() {
                match kind {
                    TorsorKind::C => locally_c.insert(delta.clone()),
                    TorsorKind::CPrime => locally_cp.insert(delta.clone()),
                };
            }
            verdicts.push(TorsorVerdict { delta, kind, obstruction, max_depth });
        }
    }

    // rational points: the trivial one on C_{b} class and x(P)
    let p = curve.generator();
    let q = curve.two_torsion();
    let mut global_points = Vec::new();
    let pq = curve.add(&p, &q);
    for pt in [&p, &pq] {
        let x = pt.x().expect("affine");
        let class = crate::arith::squarefree_class(&x).expect("nonzero");
        if let Some((z, w)) = torsor_point(curve, &class, pt) {
            global_points.push((class, z, w));
        }
    }
    // Q itself maps to the class of b, realized by z = 0
    let b_class = squarefree_part(&curve.b, &C_RADICAL);
    let w0 = exact_sqrt(&(&curve.b / &b_class)).map(Rational::from_integer);
    if let Some(w0) = w0 {
        global_points.push((b_class.clone(), Rational::zero(), w0));
    }
    let image: BTreeSet<BigInt> = {
        let mut gens: Vec<BigInt> = global_points.iter().map(|(d, _, _)| d.clone()).collect();
        gens.sort();
        gens.dedup();
        let mut group = BTreeSet::from([BigInt::one()]);
        for g in gens {
            let new: Vec<BigInt> = group.iter().map(|h| multiply_classes(h, &g, &C_RADICAL)).collect();
            group.extend(new);
        }
        group
    };

    // every locally solvable class outside the known image lies in a coset
    // represented by a ladder δ; a larger image would contain one of them
    let mut ladder_excluded = Vec::new();
    for delta in LADDER_DELTAS {
        let cert = epsilon_ladder(curve, &big(delta), extra_precision)?;
        if cert.all_obstructed() {
            ladder_excluded.push(big(delta));
        }
    }
    let mut survivors_c = image.clone();
    let mut candidates: Vec<BigInt> = locally_c.iter().filter(|d| !image.contains(*d)).cloned().collect();
    candidates.sort();
    let coset_blocked = |d: &BigInt| {
        // d·h for h in the image gives a ladder δ
        image.iter().any(|h| ladder_excluded.contains(&multiply_classes(d, h, &C_RADICAL)))
    };
    for d in candidates {
        if !coset_blocked(&d) {
            survivors_c.insert(d);
        }
    }

    // C′ classes are exactly the everywhere locally solvable ones; both
    // are realized, by O and by the two-torsion point of E′ (class a² − 4b)
    let survivors_c_prime = locally_cp.clone();

    Ok(TorsorSurvey {
        verdicts,
        locally_solvable_c: locally_c,
        locally_solvable_c_prime: locally_cp,
        global_points_c: global_points,
        ladder_excluded,
        survivors_c,
        survivors_c_prime,
    })
}

pub const LADDER_DELTAS: [i64; 3] = [11, 443, 4873];

/// Seed `(u0, w0, t)` with `(u0/t, w0/t)` on `δw² = δ²u² + δau + b`.
pub fn ladder_seed(delta: &BigInt) -> Option<(BigInt, BigInt, BigInt)> {
    let seed = match i64::try_from(delta).ok()? {
        11 => (3 * 25 * 443, 4 * 5 * 11 * 443, 1),
        443 => (-3 * 11 * 13, 11 * 13 * 443, 2),
        4873 => (125 * 11, 2 * 5 * 11 * 443, 9),
        _ => return None,
    };
    Some((big(seed.0), big(seed.1), big(seed.2)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonObstruction {
    pub epsilon: BigInt,
    /// First place where `εf = □, εg = □` has no common solution.
    pub place: Option<Place>,
    pub cap: u32,
    pub depth_reached: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderCertificate {
    pub delta: BigInt,
    pub u0: BigInt,
    pub w0: BigInt,
    pub t: BigInt,
    pub f: BinaryForm,
    pub g: BinaryForm,
    pub obstructions: Vec<EpsilonObstruction>,
}

impl LadderCertificate {
    pub fn all_obstructed(&self) -> bool {
        self.obstructions.iter().all(|o| o.place.is_some())
    }

    pub fn obstruction_for(&self, eps: &BigInt) -> Option<&EpsilonObstruction> {
        self.obstructions.iter().find(|o| &o.epsilon == eps)
    }
}

/// Places tried for the ε systems, in order.
pub const LADDER_PLACES: [Place; 9] = [
    Place::Real,
    Place::Prime(443),
    Place::Prime(11),
    Place::Prime(13),
    Place::Prime(2),
    Place::Prime(3),
    Place::Prime(5),
    Place::Prime(113),
    Place::Prime(127),
];

pub fn epsilon_ladder(curve: &Curve, delta: &BigInt, extra_precision: u32) -> Result<LadderCertificate, DescentError> {
    let (u0, w0, t) = ladder_seed(delta).ok_or_else(|| DescentError::NoSeed(delta.clone()))?;
    let (a, b) = (&curve.a, &curve.b);
    let on_conic = delta * &w0 * &w0 == delta * delta * &u0 * &u0 + delta * a * &u0 * &t + b * &t * &t;
    if !on_conic {
        return Err(DescentError::SeedOffConic { delta: delta.clone(), u0, w0, t });
    }
    let f = BinaryForm::new(vec![&t * a + delta * &u0, -(&w0 * BigInt::from(2)), u0.clone()]);
    let g = BinaryForm::new(vec![-(delta * &t), BigInt::zero(), t.clone()]);

    let mut primes: Vec<u64> = C_PRIME_RADICAL.to_vec();
    let t_abs = t.abs();
    for p in 2..=t_abs.to_string().parse::<u64>().unwrap_or(1) {
        if is_prime_u64(p) && t_abs.is_multiple_of(&BigInt::from(p)) && !primes.contains(&p) {
            primes.push(p);
        }
    }
    primes.sort_unstable();
    let mut obstructions = Vec::new();
    for eps in squarefree_divisors(&primes, true) {
        let system = vec![Constraint::new(eps.clone(), f.clone()), Constraint::new(eps.clone(), g.clone())];
        let mut found = None;
        let mut cap = 0;
        let mut depth = 0;
        for place in LADDER_PLACES {
            let r = solvable_at(&system, place, extra_precision)?;
            if !r.solvable {
                found = Some(place);
                cap = r.cap;
                depth = r.depth_reached;
                break;
            }
        }
        obstructions.push(EpsilonObstruction { epsilon: eps, place: found, cap, depth_reached: depth });
    }
    Ok(LadderCertificate { delta: delta.clone(), u0, w0, t, f, g, obstructions })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationCertificate {
    pub p_mod_3: FpPoint,
    pub doubles_mod_3: Vec<FpPoint>,
    pub p_plus_q_mod_7: FpPoint,
    pub doubles_mod_7: Vec<FpPoint>,
    pub candidates: usize,
    pub passing: Vec<Rational>,
    pub generator_x: Rational,
}

impl SaturationCertificate {
    pub fn two_indivisible(&self) -> bool {
        !self.doubles_mod_3.contains(&self.p_mod_3) && !self.doubles_mod_7.contains(&self.p_plus_q_mod_7)
    }

    pub fn only_generator_passes(&self) -> bool {
        self.passing == [self.generator_x.clone()]
    }
}

/// `b₁ = 2·11²·443²`, the part of `b` carrying `α(R)` for `R = P + 2S`.
pub fn saturation_b1() -> BigInt {
    big(2) * big(121) * big(443 * 443)
}

pub fn saturation_check(curve: &Curve) -> Result<SaturationCertificate, DescentError> {
    let p = curve.generator();
    let pq = curve.add_q(&p);
    let e3 = curve.reduce_curve(3)?;
    let e7 = curve.reduce_curve(7)?;
    let p_mod_3 = curve.reduce_point(&p, 3);
    let p_plus_q_mod_7 = curve.reduce_point(&pq, 7);

    let e_divs = divisors(&[(7, 2), (41, 1), (71, 1), (193, 1)]);
    let s_divs = divisors(&[(3, 1), (83, 1), (6481, 1)]);
    let b1 = saturation_b1();
    let mut passing = Vec::new();
    let mut candidates = 0;
    for e in &e_divs {
        for s in &s_divs {
            candidates += 1;
            let x = Rational::new(&b1 * s * s, e * e);
            if is_rational_square(&curve.rhs(&x)) {
                passing.push(x);
            }
        }
    }
    Ok(SaturationCertificate {
        p_mod_3,
        doubles_mod_3: e3.doubles(),
        p_plus_q_mod_7,
        doubles_mod_7: e7.doubles(),
        candidates,
        passing,
        generator_x: p.x().expect("affine"),
    })
}
