//! Fujiki constants from Riemann–Roch, the three relations satisfied by the
//! class of a Lagrangian `P^3`, and their elimination to a plane cubic.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{q, qi, Rational};
use crate::k3::{K3Lattice, RANK};
use crate::linalg::{self, Matrix};
use crate::poly::{Poly, RationalFunction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FujikiError {
    #[error("Chern index j = {j} outside 0..={n}")]
    IndexOutOfRange { n: u32, j: u32 },
    #[error("coefficient system is inconsistent")]
    Inconsistent,
    #[error("eta^2 must be nonzero")]
    ZeroEtaSquare,
    #[error("relations are degenerate: {0}")]
    Degenerate(&'static str),
    #[error("(L, d) = ({l}, {d}) is not the certified solution (-48, 0)")]
    NotCertified { l: BigInt, d: Rational },
}

/// `H^2(S^[n], Z) = Λ_K3 ⊕ Zδ` with `(δ, δ) = -2(n - 1)`.
#[derive(Clone, Debug)]
pub struct BBLattice {
    pub n: u32,
    gram: Matrix,
}

impl BBLattice {
    pub fn new(n: u32) -> Self {
        let k3 = K3Lattice::standard().gram_matrix();
        let mut gram = vec![vec![Rational::zero(); RANK + 1]; RANK + 1];
        for i in 0..RANK {
            gram[i][..RANK].clone_from_slice(&k3[i]);
        }
        gram[RANK][RANK] = qi(-2 * (n as i64 - 1));
        BBLattice { n, gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn form(&self, u: &[Rational], v: &[Rational]) -> Rational {
        linalg::bilinear(&self.gram, u, v)
    }

    pub fn delta(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rank()];
        v[RANK] = Rational::one();
        v
    }

    /// `δ^∨ = δ / (δ, δ)`, so that `(δ^∨, δ) = 1`.
    pub fn delta_dual(&self) -> Vec<Rational> {
        let d = self.delta();
        let dd = self.form(&d, &d);
        d.iter().map(|x| x / &dd).collect()
    }

    pub fn discriminant(&self) -> Rational {
        linalg::determinant(&self.gram)
    }
}

/// Coefficient of `h^{2j}` in `c(T_X|P^n) = c(T_{P^n}) c(T_{P^n}^∨) = (1 - h^2)^{n+1}`.
pub fn chern_restriction(n: u32, j: u32) -> Result<BigInt, FujikiError> {
    if j > n {
        return Err(FujikiError::IndexOutOfRange { n, j });
    }
    let one_plus = Poly::from_ints(&[1, 1]);
    let one_minus = Poly::from_ints(&[1, -1]);
    let total = &one_plus.pow(n + 1) * &one_minus.pow(n + 1);
    Ok(total.coeff(2 * j as usize).to_integer())
}

/// `f^6 = e0 q^3`, `f^4 c2 = e2 q^2`, `f^2 c4 = e4 q`, `f^2 c2^2 = e22 q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FujikiConstants {
    pub e0: Rational,
    pub e2: Rational,
    pub e4: Rational,
    pub e22: Rational,
    /// Constant term of the Riemann–Roch polynomial in `q = (f, f)`.
    pub constant_term: Rational,
}

/// Matches `f^6/6! + c2 f^4/(12·4!) + f^2(3c2^2 - c4)/(720·2!) + 4` against
/// `(q + 8)(q + 6)(q + 4)/(3!·2^3)` coefficient by coefficient, with
/// `c2^2 f^2 = (5/2) c4 f^2`.
pub fn fujiki_constants() -> Result<FujikiConstants, FujikiError> {
    let chi = &(&Poly::from_ints(&[8, 1]) * &Poly::from_ints(&[6, 1])) * &Poly::from_ints(&[4, 1]);
    let chi = chi.scale(&q(1, 6 * 8));
    // unknowns (e0, e2, e4, e22)
    let system: Matrix = vec![
        vec![q(1, 720), qi(0), qi(0), qi(0)],
        vec![qi(0), q(1, 12 * 24), qi(0), qi(0)],
        vec![qi(0), qi(0), q(-1, 720 * 2), q(3, 720 * 2)],
        vec![qi(0), qi(0), q(-5, 2), qi(1)],
    ];
    let rhs = vec![chi.coeff(3), chi.coeff(2), chi.coeff(1), qi(0)];
    let sol = linalg::solve(&system, &rhs).ok_or(FujikiError::Inconsistent)?;
    let constant_term = chi.coeff(0);
    if constant_term != qi(4) {
        return Err(FujikiError::Inconsistent);
    }
    Ok(FujikiConstants {
        e0: sol[0].clone(),
        e2: sol[1].clone(),
        e4: sol[2].clone(),
        e22: sol[3].clone(),
        constant_term,
    })
}

/// The relations on `[P^3] = aλc2 + bλ^3 + dη` with `L = (λ, λ)`.
#[derive(Clone, Debug)]
pub struct DiophantineSystem {
    pub constants: FujikiConstants,
    pub eta_sq: Rational,
}

impl DiophantineSystem {
    pub fn new(constants: FujikiConstants, eta_sq: Rational) -> Self {
        DiophantineSystem { constants, eta_sq }
    }

    /// `L(e0 b - 1/64) + e2 a`, from `[P^3]λ^3 = (L/4)^3` divided by `L`.
    pub fn relation1(&self, a: &Rational, b: &Rational, l: &Rational) -> Rational {
        let c = &self.constants;
        l * (&c.e0 * b - q(1, 64)) + &c.e2 * a
    }

    /// `e2 b L + e22 a + 1`, from `[P^3]λc2 = -L` divided by `L`.
    pub fn relation2(&self, a: &Rational, b: &Rational, l: &Rational) -> Rational {
        let c = &self.constants;
        &c.e2 * b * l + &c.e22 * a + qi(1)
    }

    /// Left side of `e0 b²L³ + 2e2 abL² + e22 a²L + d²η² = -4`.
    pub fn cubic(&self, a: &Rational, b: &Rational, l: &Rational, d: &Rational) -> Rational {
        let c = &self.constants;
        &c.e0 * b * b * l * l * l
            + qi(2) * &c.e2 * a * b * l * l
            + &c.e22 * a * a * l
            + d * d * &self.eta_sq
    }

    pub fn cubic_rhs() -> Rational {
        qi(-4)
    }

    pub fn describe(&self) -> [String; 3] {
        let c = &self.constants;
        [
            format!("L({} b - 1/64) + {} a = 0", c.e0, c.e2),
            format!("{} b L + ({} a + 1) = 0", c.e2, c.e22),
            format!(
                "{} b^2 L^3 + {} ab L^2 + {} a^2 L + ({}) d^2 = -4",
                c.e0,
                qi(2) * &c.e2,
                c.e22,
                self.eta_sq
            ),
        ]
    }
}

/// `c_d d^2 = c3 L^3 + c2 L^2 + c1 L + c0` with coprime integers `c3..c0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticModel {
    pub c_d: Rational,
    pub coeffs: [BigInt; 4],
    pub a_of_l: RationalFunction,
    pub b_of_l: RationalFunction,
}

impl EllipticModel {
    pub fn rhs(&self, l: &Rational) -> Rational {
        let [c3, c2, c1, c0] = &self.coeffs;
        let r = |x: &BigInt| Rational::from_integer(x.clone());
        r(c3) * l * l * l + r(c2) * l * l + r(c1) * l + r(c0)
    }
}

/// Solves relations 1–2 for `a(L), b(L)`, substitutes into the cubic, and
/// clears denominators.
pub fn eliminate(constants: &FujikiConstants, eta_sq: &Rational) -> Result<EllipticModel, FujikiError> {
    if eta_sq.is_zero() {
        return Err(FujikiError::ZeroEtaSquare);
    }
    let c = constants;
    let l = Poly::x();
    let cst = |x: &Rational| Poly::constant(x.clone());
    // e2·a + e0·L·b = L/64 ; e22·a + e2·L·b = -1
    let det_scalar = &c.e2 * &c.e2 - &c.e0 * &c.e22;
    if det_scalar.is_zero() {
        return Err(FujikiError::Degenerate("linear pair is singular"));
    }
    let det = RationalFunction::from_poly(l.scale(&det_scalar));
    let rhs1 = RationalFunction::from_poly(l.scale(&q(1, 64)));
    let rhs2 = RationalFunction::from_poly(cst(&qi(-1)));
    let co = |p: Poly| RationalFunction::from_poly(p);
    let a_num = rhs1.mul(&co(l.scale(&c.e2))).sub(&co(l.scale(&c.e0)).mul(&rhs2));
    let b_num = co(cst(&c.e2)).mul(&rhs2).sub(&co(cst(&c.e22)).mul(&rhs1));
    let inv_det = RationalFunction::new(det.den().clone(), det.num().clone());
    let a = a_num.mul(&inv_det);
    let b = b_num.mul(&inv_det);

    let lf = co(l.clone());
    let l2 = lf.mul(&lf);
    let l3 = l2.mul(&lf);
    let f = b.mul(&b).mul(&l3).scale(&c.e0)
        .add(&a.mul(&b).mul(&l2).scale(&(qi(2) * &c.e2)))
        .add(&a.mul(&a).mul(&lf).scale(&c.e22));
    // -η² d² = 4 + F(L)
    let rhs = f.add(&co(cst(&qi(4))));
    if rhs.den().degree() != Some(0) {
        return Err(FujikiError::Degenerate("substituted cubic is not polynomial in L"));
    }
    let poly = rhs.num().scale(&(Rational::one() / rhs.den().leading()));
    if poly.degree() != Some(3) {
        return Err(FujikiError::Degenerate("substituted cubic has wrong degree"));
    }
    let (content, prim) = poly.primitive_part();
    let c_d = -eta_sq / &content;
    Ok(EllipticModel {
        c_d,
        coeffs: [prim[3].clone(), prim[2].clone(), prim[1].clone(), prim[0].clone()],
        a_of_l: a,
        b_of_l: b,
    })
}

/// Consequences of the certified solution `(L, d) = (-48, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conclusion {
    pub a: Rational,
    pub b: Rational,
    pub ell_sq: Rational,
    pub rho_sq: Rational,
    /// Coefficients of `ρc2` and `ρ^3` after substituting `λ = 2ρ`.
    pub rho_coefficients: (Rational, Rational),
}

pub fn conclude(model: &EllipticModel, l: &BigInt, d: &Rational) -> Result<Conclusion, FujikiError> {
    if *l != BigInt::from(-48) || !d.is_zero() {
        return Err(FujikiError::NotCertified { l: l.clone(), d: d.clone() });
    }
    let lq = Rational::from_integer(l.clone());
    let a = model.a_of_l.eval(&lq).ok_or(FujikiError::Degenerate("a(L) has a pole"))?;
    let b = model.b_of_l.eval(&lq).ok_or(FujikiError::Degenerate("b(L) has a pole"))?;
    // ℓ = λ/4 and ρ = λ/2
    let ell_sq = &lq / qi(16);
    let rho_sq = &lq / qi(4);
    let rho_coefficients = (qi(2) * &a, qi(8) * &b);
    Ok(Conclusion { a, b, ell_sq, rho_sq, rho_coefficients })
}

/// Parity obstruction: writing `ℓ = D + mδ^∨` with `(ℓ,ℓ) = -3` forces
/// `(D, D) = m²/4 - 3`, which is an even integer only for even `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivityCheck {
    pub odd_m_checked: Vec<i64>,
    pub odd_all_non_integral: bool,
    /// `(D, D)` for `m = 2`.
    pub even_case: Rational,
}

impl PrimitivityCheck {
    pub fn holds(&self) -> bool {
        self.odd_all_non_integral && self.even_case.is_integer() && (self.even_case.to_integer() % BigInt::from(2)).is_zero()
    }
}

pub fn primitivity_check(ell_sq: &Rational, m_bound: i64) -> PrimitivityCheck {
    let dd = |m: i64| ell_sq + q(m * m, 4);
    let odd: Vec<i64> = (1..=m_bound).step_by(2).collect();
    let odd_all_non_integral = odd.iter().all(|&m| !dd(m).is_integer());
    PrimitivityCheck { odd_m_checked: odd, odd_all_non_integral, even_case: dd(2) }
}
