//! Seeded property checks shared by the property suites and the acceptance
//! target. Each check returns the number of cases it ran, or a description
//! of the first counterexample.

#![allow(dead_code)]

use lagrange3_core::arith::{big, qi, Rational};
use lagrange3_core::curve::{Curve, CurvePoint, FpPoint};
use lagrange3_core::k3::{GradedClass, K3Model, Label, Tensor2, DIM};
use lagrange3_core::padic::{brute_force_padic, solvable_at, BinaryForm, Constraint, Place};
use lagrange3_core::symring::{pullback, pushforward, tensor_pairing, Permutation, SnClass, Surjection, TensorMap};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<usize, String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    let v = rng.gen_range(-3..=3);
    qi(if v == 0 { 1 } else { v })
}

fn label(rng: &mut ChaCha8Rng) -> Label {
    rng.gen_range(0..DIM as Label)
}

pub fn random_graded(rng: &mut ChaCha8Rng) -> GradedClass {
    let terms = rng.gen_range(1..=4);
    GradedClass::from_terms((0..terms).map(|_| (label(rng), small(rng))).collect::<Vec<_>>())
}

/// A sparse class in `A{S_3}`: one or two monomials in random sectors.
pub fn random_sn(rng: &mut ChaCha8Rng) -> SnClass {
    let perms = Permutation::all(3);
    let mut x = SnClass::zero(3);
    for _ in 0..rng.gen_range(1..=2) {
        let pi = perms.choose(rng).unwrap();
        let labels = (0..pi.orbits().len()).map(|_| label(rng)).collect();
        x = x.add(&SnClass::monomial(pi, labels, small(rng)));
    }
    x
}

fn random_tensor(rng: &mut ChaCha8Rng, len: usize) -> TensorMap {
    let mut t = TensorMap::new();
    for _ in 0..rng.gen_range(1..=3) {
        let key: Vec<Label> = (0..len).map(|_| label(rng)).collect();
        t.insert(key, small(rng));
    }
    t
}

/// `mul_A` is commutative and associative.
pub fn frobenius_algebra(seed: u64, cases: usize) -> Check {
    let m = K3Model::standard();
    let mut rng = rng(seed);
    for k in 0..cases {
        let (x, y, z) = (random_graded(&mut rng), random_graded(&mut rng), random_graded(&mut rng));
        if m.mul(&x, &y) != m.mul(&y, &x) {
            return Err(format!("commutativity fails on case {k}"));
        }
        if m.mul(&m.mul(&x, &y), &z) != m.mul(&x, &m.mul(&y, &z)) {
            return Err(format!("associativity fails on case {k}"));
        }
    }
    Ok(cases)
}

/// `<Δ_* a, x ⊗ y> = <a, xy>` for every basis triple.
pub fn comultiply_adjoint() -> Check {
    let m = K3Model::standard();
    let mut count = 0;
    for a in 0..DIM as Label {
        let da = m.comultiply(&GradedClass::basis(a));
        for x in 0..DIM as Label {
            for y in 0..DIM as Label {
                let xy: Tensor2 = [((x, y), qi(1))].into_iter().collect();
                let lhs = m.pairing2(&da, &xy);
                let rhs = m.pairing(&GradedClass::basis(a), &m.mul(&GradedClass::basis(x), &GradedClass::basis(y)));
                if lhs != rhs {
                    return Err(format!("adjointness fails at ({a}, {x}, {y}): {lhs} vs {rhs}"));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `<φ^* a, b> = <a, φ_* b>` for random surjections and tensors.
pub fn pullback_adjoint(seed: u64, cases: usize) -> Check {
    let mut rng = rng(seed);
    for k in 0..cases {
        let source = rng.gen_range(2..=4);
        let target = rng.gen_range(1..source);
        let mut map: Vec<usize> = (0..source).map(|i| if i < target { i } else { rng.gen_range(0..target) }).collect();
        map.shuffle(&mut rng);
        let phi = Surjection::new(map.clone(), target).map_err(|e| e.to_string())?;
        let a = random_tensor(&mut rng, source);
        let b = random_tensor(&mut rng, target);
        let lhs = tensor_pairing(&pullback(&phi, &a), &b);
        let rhs = tensor_pairing(&a, &pushforward(&phi, &b));
        if lhs != rhs {
            return Err(format!("case {k}, map {map:?}: {lhs} vs {rhs}"));
        }
    }
    Ok(cases)
}

/// `(xy)z = x(yz)` in `A{S_3}`.
pub fn ring_associativity(seed: u64, cases: usize) -> Check {
    let mut rng = rng(seed);
    for k in 0..cases {
        let (x, y, z) = (random_sn(&mut rng), random_sn(&mut rng), random_sn(&mut rng));
        let lhs = x.multiply(&y).and_then(|xy| xy.multiply(&z)).map_err(|e| e.to_string())?;
        let rhs = y.multiply(&z).and_then(|yz| x.multiply(&yz)).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("case {k}: (xy)z != x(yz) for x = {x}, y = {y}, z = {z}"));
        }
    }
    Ok(cases)
}

/// `xy = yx` on the invariant part `A^[3]`, which is closed under products.
pub fn ring_commutativity(seed: u64, cases: usize) -> Check {
    let mut rng = rng(seed);
    for k in 0..cases {
        let x = random_sn(&mut rng).symmetrize();
        let y = random_sn(&mut rng).symmetrize();
        let xy = x.multiply(&y).map_err(|e| e.to_string())?;
        let yx = y.multiply(&x).map_err(|e| e.to_string())?;
        if xy != yx {
            return Err(format!("case {k}: xy != yx"));
        }
        if !xy.is_invariant() {
            return Err(format!("case {k}: product of invariants is not invariant"));
        }
    }
    Ok(cases)
}

/// `σ(xy) = σ(x)σ(y)`.
pub fn ring_equivariance(seed: u64, cases: usize) -> Check {
    let perms = Permutation::all(3);
    let mut rng = rng(seed);
    for k in 0..cases {
        let (x, y) = (random_sn(&mut rng), random_sn(&mut rng));
        let s = perms.choose(&mut rng).unwrap();
        let lhs = x.multiply(&y).map_err(|e| e.to_string())?.act(s);
        let rhs = x.act(s).multiply(&y.act(s)).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("case {k}: equivariance fails for sigma = {s}"));
        }
    }
    Ok(cases)
}

/// `(D + cδ)^6 = 15((D, D) - 4c²)^3`.
pub fn fujiki_identity(seed: u64, cases: usize) -> Check {
    let lattice = lagrange3_core::k3::K3Lattice::standard();
    let mut rng = rng(seed);
    for k in 0..cases {
        let d: Vec<Rational> = (0..lagrange3_core::k3::RANK).map(|_| qi(rng.gen_range(-3..=3))).collect();
        let c = qi(rng.gen_range(-3..=3));
        let lhs = SnClass::divisor(3, &d, &c).pow(6).map_err(|e| e.to_string())?.integrate();
        let q = lattice.form(&d, &d) - qi(4) * &c * &c;
        let rhs = qi(15) * &q * &q * &q;
        if lhs != rhs {
            return Err(format!("case {k}: {lhs} vs {rhs}"));
        }
    }
    Ok(cases)
}

/// `aP + bQ` with `|a| ≤ 3`.
pub fn random_point(curve: &Curve, rng: &mut ChaCha8Rng) -> (i64, u8, CurvePoint) {
    let a = rng.gen_range(-3..=3);
    let b = rng.gen_range(0..=1u8);
    let base = curve.mul(a, &curve.generator());
    (a, b, if b == 1 { curve.add_q(&base) } else { base })
}

/// Associativity, commutativity, identity, inverse and `n·O = O`.
pub fn curve_group_laws(seed: u64, cases: usize) -> Check {
    let c = Curve::standard();
    let mut rng = rng(seed);
    for n in -5..=5 {
        if c.mul(n, &CurvePoint::Infinity) != CurvePoint::Infinity {
            return Err(format!("{n}·O != O"));
        }
    }
    for k in 0..cases {
        let (_, _, x) = random_point(&c, &mut rng);
        let (_, _, y) = random_point(&c, &mut rng);
        let (_, _, z) = random_point(&c, &mut rng);
        if c.add(&x, &y) != c.add(&y, &x) {
            return Err(format!("case {k}: commutativity"));
        }
        if c.add(&c.add(&x, &y), &z) != c.add(&x, &c.add(&y, &z)) {
            return Err(format!("case {k}: associativity"));
        }
        if c.add(&x, &CurvePoint::Infinity) != x || c.add(&x, &c.neg(&x)) != CurvePoint::Infinity {
            return Err(format!("case {k}: identity or inverse"));
        }
        if !c.on_curve(&c.add(&x, &y)) {
            return Err(format!("case {k}: sum off the curve"));
        }
    }
    Ok(cases)
}

/// The closed doubling formula agrees with tangent doubling, and `add_q`
/// with chord addition of `(0, 0)`.
pub fn doubling_formula(seed: u64, cases: usize) -> Check {
    let c = Curve::standard();
    let q = c.two_torsion();
    let mut rng = rng(seed);
    for k in 0..cases {
        let (a, b, x) = random_point(&c, &mut rng);
        if x.is_infinity() || x == q {
            continue;
        }
        let tangent = c.double(&x);
        if tangent.x() != c.double_formula_x(&x) {
            return Err(format!("case {k}: doubling formula differs at {a}P + {b}Q"));
        }
        if c.add_q(&x) != c.add(&x, &q) {
            return Err(format!("case {k}: translation by (0, 0) differs at {a}P + {b}Q"));
        }
    }
    Ok(cases)
}

/// Reduction modulo good primes commutes with addition.
pub fn reduction_homomorphism(seed: u64, cases: usize) -> Check {
    let c = Curve::standard();
    let mut rng = rng(seed);
    let mut count = 0;
    for p in [3u64, 7, 19, 31] {
        let fp = c.reduce_curve(p).map_err(|e| e.to_string())?;
        for k in 0..cases {
            let (_, _, x) = random_point(&c, &mut rng);
            let (_, _, y) = random_point(&c, &mut rng);
            let lhs = c.reduce_point(&c.add(&x, &y), p);
            let rhs = fp.add(c.reduce_point(&x, p), c.reduce_point(&y, p));
            if lhs != rhs || !fp.contains(lhs) {
                return Err(format!("p = {p}, case {k}: {lhs:?} vs {rhs:?}"));
            }
            count += 1;
        }
    }
    if c.reduce_point(&CurvePoint::Infinity, 7) != FpPoint::Infinity {
        return Err("O does not reduce to O".into());
    }
    Ok(count)
}

pub fn padic_modulus_exponent(p: u64) -> u32 {
    match p {
        2 => 6,
        3 => 4,
        5 => 3,
        _ => 2,
    }
}

pub fn random_constraints(rng: &mut ChaCha8Rng) -> Vec<Constraint> {
    let degree = if rng.gen_bool(0.5) { 2 } else { 4 };
    let mut coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-6..=6)).collect();
    if coeffs[degree] == 0 {
        coeffs[degree] = 1;
    }
    if coeffs[0] == 0 {
        coeffs[0] = -1;
    }
    let m = [1i64, -1, 2, -2, 3, 5, 6, 7, -7, 10][rng.gen_range(0..10)];
    vec![Constraint::new(big(m), BinaryForm::from_ints(&coeffs))]
}

/// The residue-class solver agrees with exhaustive search modulo `p^k`
/// whenever the search is conclusive. Returns the number of conclusive
/// comparisons.
pub fn padic_oracle(seed: u64, cases: usize) -> Check {
    let mut rng = rng(seed);
    let mut conclusive = 0;
    for k in 0..cases {
        let cons = random_constraints(&mut rng);
        for p in [2u64, 3, 5, 7] {
            let solver = match solvable_at(&cons, Place::Prime(p), 2) {
                Ok(r) => r.solvable,
                Err(e) => return Err(format!("case {k}, p = {p}: {e}")),
            };
            if let Some(oracle) = brute_force_padic(&cons, p, padic_modulus_exponent(p)) {
                conclusive += 1;
                if solver != oracle {
                    return Err(format!("case {k}, p = {p}: solver {solver}, search {oracle}, form {:?}", cons[0].form.coeffs()));
                }
            }
        }
    }
    if conclusive == 0 {
        return Err("no conclusive comparisons".into());
    }
    Ok(conclusive)
}
