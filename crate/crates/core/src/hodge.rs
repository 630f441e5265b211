//! Absolute Hodge classes on `S^[3]`, their product table, and the
//! distinguished middle-degree class `η = 2U - V + 11W`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{qi, Rational};
use crate::k3::{K3Model, Label, PT, RANK, UNIT};
use crate::linalg::{self, Matrix};
use crate::symring::{delta, Permutation, RingError, SnClass};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HodgeError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("span is not two-dimensional or its complement is not a line")]
    DegenerateSpan,
}

/// `δ, P, Q, R` (codimension at most two) and `U, V, W` (codimension three).
#[derive(Clone, Debug)]
pub struct StandardClasses {
    pub delta: SnClass,
    pub p: SnClass,
    pub q: SnClass,
    pub r: SnClass,
    pub u: SnClass,
    pub v: SnClass,
    pub w: SnClass,
}

impl StandardClasses {
    pub fn named(&self) -> [(&'static str, &SnClass); 7] {
        [
            ("delta", &self.delta),
            ("P", &self.p),
            ("Q", &self.q),
            ("R", &self.r),
            ("U", &self.u),
            ("V", &self.v),
            ("W", &self.w),
        ]
    }
}

const N: usize = 3;

fn t(a: u8, b: u8) -> Permutation {
    Permutation::from_cycles(N, &[&[a, b]])
}

/// Transpositions with their fixed point, in the order (12), (13), (23).
const TRANSPOSITIONS: [(u8, u8, u8); 3] = [(1, 2, 3), (1, 3, 2), (2, 3, 1)];

/// `Σ_j e_j ⊗ e_j^∨` expanded in the basis, as `(label, label, coefficient)`.
pub fn dual_pairs() -> Vec<(Label, Label, i64)> {
    let m = K3Model::standard();
    (1..=RANK as Label)
        .flat_map(|j| m.poincare_dual(j).iter().map(move |&(k, c)| (j, k, c)))
        .collect()
}

/// `([pt] ⊗ [pt] ⊗ [pt])(id)`.
pub fn point_cube() -> SnClass {
    SnClass::monomial(&Permutation::identity(N), vec![PT; N], Rational::one())
}

pub fn standard_classes() -> StandardClasses {
    let id = Permutation::identity(N);
    let one = Rational::one();

    let p = (1..=N as u8).fold(SnClass::zero(N), |acc, i| {
        acc.add(&SnClass::placed(&id, &[(i, PT)], one.clone()))
    });

    let mut q = SnClass::zero(N);
    for (i, j) in [(1u8, 2u8), (1, 3), (2, 3)] {
        for (a, b, c) in dual_pairs() {
            q = q.add(&SnClass::placed(&id, &[(i, a), (j, b)], qi(c)));
        }
    }

    let r = SnClass::sector_unit(&Permutation::from_cycles(N, &[&[1, 3, 2]]))
        .add(&SnClass::sector_unit(&Permutation::from_cycles(N, &[&[1, 2, 3]])));

    let (mut u, mut v, mut w) = (SnClass::zero(N), SnClass::zero(N), SnClass::zero(N));
    for (a, b, fixed) in TRANSPOSITIONS {
        let pi = t(a, b);
        u = u.add(&SnClass::placed(&pi, &[(a, PT)], one.clone()));
        v = v.add(&SnClass::placed(&pi, &[(fixed, PT)], one.clone()));
        for (x, y, c) in dual_pairs() {
            w = w.add(&SnClass::placed(&pi, &[(a, x), (fixed, y)], qi(c)));
        }
    }

    StandardClasses { delta: delta(N), p, q, r, u, v, w }
}

/// `c` when `x = c·([pt]⊗[pt]⊗[pt])(id)` exactly.
pub fn point_cube_multiple(x: &SnClass) -> Option<Rational> {
    let c = x.top_coefficient();
    (point_cube().scale(&c) == *x).then_some(c)
}

/// Coordinates `(a, b, c)` with `x = aU + bV + cW`, when `x` lies in that span.
pub fn middle_coordinates(classes: &StandardClasses, x: &SnClass) -> Option<[Rational; 3]> {
    let pi = t(1, 2);
    let sector = x.sectors().get(&pi);
    let coeff = |key: Vec<Label>| {
        sector
            .and_then(|s| s.coeffs.get(&key).cloned())
            .unwrap_or_else(Rational::zero)
    };
    // orbits of (12) are {1,2} and {3}
    let a = coeff(vec![PT, UNIT]);
    let b = coeff(vec![UNIT, PT]);
    let (x0, y0, c0) = dual_pairs()[0];
    let c = coeff(vec![x0, y0]) / qi(c0);
    let rebuilt = SnClass::combination(
        N,
        &[(a.clone(), &classes.u), (b.clone(), &classes.v), (c.clone(), &classes.w)],
    );
    (rebuilt == *x).then_some([a, b, c])
}

/// One checked ring identity `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct RingIdentity {
    pub name: &'static str,
    pub lhs: SnClass,
    pub rhs: SnClass,
}

impl RingIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug)]
pub struct ProductTable {
    pub identities: Vec<RingIdentity>,
    /// `U·V` as a multiple of the point cube.
    pub uv: Option<Rational>,
    /// `W²` as a multiple of the point cube.
    pub w_squared: Option<Rational>,
    /// `δ³` in `(U, V, W)` coordinates, read back from the ring.
    pub delta_cubed: Option<[Rational; 3]>,
}

impl ProductTable {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(RingIdentity::holds)
            && self.uv == Some(qi(-3))
            && self.w_squared == Some(qi(-66))
    }
}

pub fn verify_product_table(c: &StandardClasses) -> Result<ProductTable, HodgeError> {
    let d = &c.delta;
    let comb = |parts: &[(i64, &SnClass)]| {
        let scaled: Vec<(Rational, &SnClass)> = parts.iter().map(|(k, x)| (qi(*k), *x)).collect();
        SnClass::combination(N, &scaled)
    };
    let zero = SnClass::zero(N);
    let d2 = d.multiply(d)?;
    let d3 = d.multiply(&d2)?;
    let identities = vec![
        RingIdentity { name: "delta^2 = -2P - Q + 3R", lhs: d2.clone(), rhs: comb(&[(-2, &c.p), (-1, &c.q), (3, &c.r)]) },
        RingIdentity { name: "delta*P = 2U + V", lhs: d.multiply(&c.p)?, rhs: comb(&[(2, &c.u), (1, &c.v)]) },
        RingIdentity { name: "delta*Q = 22U + 2W", lhs: d.multiply(&c.q)?, rhs: comb(&[(22, &c.u), (2, &c.w)]) },
        RingIdentity { name: "delta*R = -2(U + V + W)", lhs: d.multiply(&c.r)?, rhs: comb(&[(-2, &c.u), (-2, &c.v), (-2, &c.w)]) },
        RingIdentity { name: "delta^3 = -32U - 8V - 8W", lhs: d3.clone(), rhs: comb(&[(-32, &c.u), (-8, &c.v), (-8, &c.w)]) },
        RingIdentity { name: "U^2 = 0", lhs: c.u.multiply(&c.u)?, rhs: zero.clone() },
        RingIdentity { name: "V^2 = 0", lhs: c.v.multiply(&c.v)?, rhs: zero.clone() },
        RingIdentity { name: "U*W = 0", lhs: c.u.multiply(&c.w)?, rhs: zero.clone() },
        RingIdentity { name: "V*W = 0", lhs: c.v.multiply(&c.w)?, rhs: zero.clone() },
        RingIdentity { name: "U*V = -3 pt^3", lhs: c.u.multiply(&c.v)?, rhs: point_cube().scale(&qi(-3)) },
        RingIdentity { name: "W^2 = -66 pt^3", lhs: c.w.multiply(&c.w)?, rhs: point_cube().scale(&qi(-66)) },
    ];
    Ok(ProductTable {
        uv: point_cube_multiple(&c.u.multiply(&c.v)?),
        w_squared: point_cube_multiple(&c.w.multiply(&c.w)?),
        delta_cubed: middle_coordinates(c, &d3),
        identities,
    })
}

/// Pairings `∫ X·Y` for `X, Y ∈ {U, V, W}`, recomputed from the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiddleGram {
    pub gram: Matrix,
}

impl MiddleGram {
    pub const LABELS: [&'static str; 3] = ["U", "V", "W"];

    pub fn compute(c: &StandardClasses) -> Result<Self, HodgeError> {
        let basis = [&c.u, &c.v, &c.w];
        let mut gram = vec![vec![Rational::zero(); 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                let v = basis[i].multiply(basis[j])?.integrate();
                gram[i][j] = v.clone();
                gram[j][i] = v;
            }
        }
        Ok(MiddleGram { gram })
    }

    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        linalg::bilinear(&self.gram, x, y)
    }
}

/// Coordinates of `η = 2U - V + 11W`.
pub fn eta_coordinates() -> [Rational; 3] {
    [qi(2), qi(-1), qi(11)]
}

pub fn eta(c: &StandardClasses) -> SnClass {
    let [a, b, w] = eta_coordinates();
    SnClass::combination(N, &[(a, &c.u), (b, &c.v), (w, &c.w)])
}

/// `∫ η²` computed by ring multiplication and by the Gram expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaSquare {
    pub via_ring: Rational,
    pub via_gram: Rational,
    /// `∫ η·δ³`.
    pub eta_delta_cubed: Rational,
    /// `∫ η·δP = ∫ η·(2U + V)`.
    pub eta_delta_p: Rational,
}

pub fn eta_squared(c: &StandardClasses, gram: &MiddleGram) -> Result<EtaSquare, HodgeError> {
    let e = eta(c);
    let via_ring = e.multiply(&e)?.integrate();
    let coords = eta_coordinates();
    let via_gram = gram.pair(&coords, &coords);
    let d3 = c.delta.pow(3)?;
    let dp = c.delta.multiply(&c.p)?;
    Ok(EtaSquare {
        via_ring,
        via_gram,
        eta_delta_cubed: e.multiply(&d3)?.integrate(),
        eta_delta_p: e.multiply(&dp)?.integrate(),
    })
}

/// Generator of the Gram-orthogonal complement of a 2-dimensional span in
/// `(U, V, W)` coordinates, as a primitive integer vector with its first
/// nonzero entry positive, together with its self-pairing.
pub fn orthogonal_complement(
    span: &[[Rational; 3]],
    gram: &MiddleGram,
) -> Result<([BigInt; 3], Rational), HodgeError> {
    let rows: Matrix = span.iter().map(|s| linalg::mat_vec(&gram.gram, s)).collect();
    let rank_rows = 3 - linalg::null_space(&span.iter().map(|s| s.to_vec()).collect(), 3).len();
    if span.len() != 2 || rank_rows != 2 {
        return Err(HodgeError::DegenerateSpan);
    }
    let ns = linalg::null_space(&rows, 3);
    if ns.len() != 1 {
        return Err(HodgeError::DegenerateSpan);
    }
    let v = primitive_integer_vector(&ns[0]);
    let vq: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
    let self_pairing = gram.pair(&vq, &vq);
    Ok(([v[0].clone(), v[1].clone(), v[2].clone()], self_pairing))
}

fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.iter().map(|x| x / &g).collect()
}

/// Coefficients expressing `target` in terms of two spanning vectors, if possible.
pub fn express_in_span(target: &[Rational; 3], a: &[Rational; 3], b: &[Rational; 3]) -> Option<(Rational, Rational)> {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let m = vec![vec![a[i].clone(), b[i].clone()], vec![a[j].clone(), b[j].clone()]];
        if let Some(sol) = linalg::solve(&m, &[target[i].clone(), target[j].clone()]) {
            let ok = (0..3).all(|k| &sol[0] * &a[k] + &sol[1] * &b[k] == target[k]);
            return ok.then(|| (sol[0].clone(), sol[1].clone()));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use std::sync::OnceLock;

    fn classes() -> &'static StandardClasses {
        static C: OnceLock<StandardClasses> = OnceLock::new();
        C.get_or_init(standard_classes)
    }

    #[test]
    fn classes_are_invariant() {
        for (name, x) in classes().named() {
            assert!(x.is_invariant(), "{name} not invariant");
        }
    }

    #[test]
    fn w_is_three_copies_of_the_dual_pair_sum() {
        let pairs = dual_pairs().len();
        assert_eq!(classes().w.sectors().len(), 3);
        assert_eq!(classes().w.term_count(), 3 * pairs);
    }

    #[test]
    fn product_table() {
        let table = verify_product_table(classes()).unwrap();
        for id in &table.identities {
            assert!(id.holds(), "{} fails", id.name);
        }
        assert_eq!(table.uv, Some(qi(-3)));
        assert_eq!(table.w_squared, Some(qi(-66)));
        assert_eq!(table.delta_cubed, Some([qi(-32), qi(-8), qi(-8)]));
        assert!(table.all_hold());
    }

    #[test]
    fn gram_and_eta() {
        let g = MiddleGram::compute(classes()).unwrap();
        let expected = vec![
            vec![qi(0), q(-1, 2), qi(0)],
            vec![q(-1, 2), qi(0), qi(0)],
            vec![qi(0), qi(0), qi(-11)],
        ];
        assert_eq!(g.gram, expected);
        let e = eta_squared(classes(), &g).unwrap();
        assert_eq!(e.via_ring, qi(-1329));
        assert_eq!(e.via_gram, qi(-1329));
        assert_eq!(e.eta_delta_p, qi(0));
        assert_eq!(e.eta_delta_cubed, qi(960));
    }

    #[test]
    fn complements() {
        let g = MiddleGram::compute(classes()).unwrap();
        let span = [[qi(2), qi(1), qi(0)], [qi(0), qi(1), qi(-1)]];
        let (v, s) = orthogonal_complement(&span, &g).unwrap();
        assert_eq!(v, [BigInt::from(22), BigInt::from(-11), BigInt::from(1)]);
        assert_eq!(s, qi(231));

        let (v, _) = orthogonal_complement(&[[qi(1), qi(0), qi(0)], [qi(0), qi(1), qi(0)]], &g).unwrap();
        assert_eq!(v, [BigInt::from(0), BigInt::from(0), BigInt::from(1)]);

        let degenerate = [[qi(1), qi(0), qi(0)], [qi(2), qi(0), qi(0)]];
        assert_eq!(orthogonal_complement(&degenerate, &g), Err(HodgeError::DegenerateSpan));
    }

    #[test]
    fn v_minus_w_in_decomposable_span() {
        let d3 = [qi(-32), qi(-8), qi(-8)];
        let dp = [qi(2), qi(1), qi(0)];
        let (a, b) = express_in_span(&[qi(0), qi(1), qi(-1)], &d3, &dp).unwrap();
        assert_eq!((a, b), (q(1, 8), qi(2)));
        assert!(express_in_span(&[qi(0), qi(0), qi(1)], &[qi(1), qi(0), qi(0)], &[qi(0), qi(1), qi(0)]).is_none());
    }

    #[test]
    fn delta_sixth_via_classes() {
        assert_eq!(classes().delta.pow(6).unwrap().integrate(), qi(-960));
    }
}
