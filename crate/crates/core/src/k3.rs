//! The shifted Frobenius algebra `A = H^*(S, Q)` of a K3 surface.
//!
//! Basis labels: `0` is the unit (weight -2), `1..=22` are the classes
//! `e_1..e_22` spanning `H^2` (weight 0), and `23` is the point class
//! (weight +2). The lattice on `H^2` is fixed once as `U^3 ⊕ E8(-1)^2`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::linalg;

pub type Label = u8;

pub const RANK: usize = 22;
pub const DIM: usize = 24;
pub const UNIT: Label = 0;
pub const PT: Label = 23;

/// Label of `e_i` for `i` in `1..=22`.
pub fn mid(i: usize) -> Label {
    assert!((1..=RANK).contains(&i), "e_{i} out of range");
    i as Label
}

/// Shifted weight of a basis label.
pub fn weight(l: Label) -> i8 {
    match l {
        UNIT => -2,
        PT => 2,
        _ => 0,
    }
}

const E8_EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];

/// Intersection form on `H^2(S, Z)`.
#[derive(Clone, Debug)]
pub struct K3Lattice {
    pub gram: [[i64; RANK]; RANK],
    pub gram_inverse: [[i64; RANK]; RANK],
}

impl K3Lattice {
    pub fn standard() -> Self {
        let mut gram = [[0i64; RANK]; RANK];
        for h in 0..3 {
            gram[2 * h][2 * h + 1] = 1;
            gram[2 * h + 1][2 * h] = 1;
        }
        for block in 0..2 {
            let o = 6 + 8 * block;
            for i in 0..8 {
                gram[o + i][o + i] = -2;
            }
            for &(i, j) in &E8_EDGES {
                gram[o + i][o + j] = 1;
                gram[o + j][o + i] = 1;
            }
        }
        let m: linalg::Matrix = gram
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect();
        let inv = linalg::inverse(&m).expect("K3 lattice is unimodular");
        let mut gram_inverse = [[0i64; RANK]; RANK];
        for i in 0..RANK {
            for j in 0..RANK {
                assert!(inv[i][j].is_integer(), "inverse Gram must be integral");
                gram_inverse[i][j] = i64::try_from(inv[i][j].to_integer()).unwrap();
            }
        }
        K3Lattice { gram, gram_inverse }
    }

    pub fn gram_matrix(&self) -> linalg::Matrix {
        self.gram
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect()
    }

    /// `(D, D')` for coordinate vectors in the `e_i` basis.
    pub fn form(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..RANK {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..RANK {
                if self.gram[i][j] != 0 && !v[j].is_zero() {
                    acc += &u[i] * &v[j] * Rational::from_integer(self.gram[i][j].into());
                }
            }
        }
        acc
    }
}

/// An element of `A` with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedClass {
    pub c_unit: Rational,
    pub c_mid: Vec<Rational>,
    pub c_pt: Rational,
}

impl GradedClass {
    pub fn zero() -> Self {
        GradedClass { c_unit: Rational::zero(), c_mid: vec![Rational::zero(); RANK], c_pt: Rational::zero() }
    }

    pub fn unit() -> Self {
        Self::basis(UNIT)
    }

    pub fn pt() -> Self {
        Self::basis(PT)
    }

    pub fn e(i: usize) -> Self {
        Self::basis(mid(i))
    }

    pub fn basis(l: Label) -> Self {
        let mut c = Self::zero();
        c.set(l, Rational::one());
        c
    }

    pub fn get(&self, l: Label) -> &Rational {
        match l {
            UNIT => &self.c_unit,
            PT => &self.c_pt,
            _ => &self.c_mid[l as usize - 1],
        }
    }

    pub fn set(&mut self, l: Label, v: Rational) {
        match l {
            UNIT => self.c_unit = v,
            PT => self.c_pt = v,
            _ => self.c_mid[l as usize - 1] = v,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Label, &Rational)> {
        (0..DIM as Label).map(|l| (l, self.get(l))).filter(|(_, c)| !c.is_zero())
    }

    pub fn from_terms<I: IntoIterator<Item = (Label, Rational)>>(it: I) -> Self {
        let mut c = Self::zero();
        for (l, v) in it {
            let cur = c.get(l) + v;
            c.set(l, cur);
        }
        c
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_terms(self.terms().map(|(l, c)| (l, c * s)))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_terms(self.terms().chain(o.terms()).map(|(l, c)| (l, c.clone())))
    }

    /// Homogeneous iff at most one weight block is nonzero.
    pub fn is_homogeneous(&self) -> bool {
        let blocks = [
            !self.c_unit.is_zero(),
            self.c_mid.iter().any(|c| !c.is_zero()),
            !self.c_pt.is_zero(),
        ];
        blocks.iter().filter(|b| **b).count() <= 1
    }
}

/// Element of `A ⊗ A`, keyed by label pairs.
pub type Tensor2 = BTreeMap<(Label, Label), Rational>;

/// Basis tensor expansion of an m-fold coproduct of one basis label.
pub type Coproduct = Vec<(Vec<Label>, BigInt)>;

const CACHED_ARITY: usize = 3;

/// The algebra `A` with its Frobenius structure, built once.
#[derive(Debug)]
pub struct K3Model {
    pub lattice: K3Lattice,
    /// Poincaré duals `f^∨` (with `∫ f_k f_l^∨ = δ_kl`), sparse integer rows.
    poincare_dual: Vec<Vec<(Label, i64)>>,
    coproducts: Vec<Vec<Coproduct>>,
}

static STANDARD: OnceLock<K3Model> = OnceLock::new();

impl K3Model {
    pub fn standard() -> &'static K3Model {
        STANDARD.get_or_init(|| K3Model::new(K3Lattice::standard()))
    }

    fn new(lattice: K3Lattice) -> Self {
        let mut poincare_dual = vec![Vec::new(); DIM];
        poincare_dual[UNIT as usize] = vec![(PT, 1)];
        poincare_dual[PT as usize] = vec![(UNIT, 1)];
        for j in 1..=RANK {
            poincare_dual[j] = (1..=RANK)
                .filter(|&k| lattice.gram_inverse[j - 1][k - 1] != 0)
                .map(|k| (k as Label, lattice.gram_inverse[j - 1][k - 1]))
                .collect();
        }
        let mut model = K3Model { lattice, poincare_dual, coproducts: Vec::new() };
        let coproducts = (0..=CACHED_ARITY)
            .map(|m| (0..DIM as Label).map(|l| model.compute_coproduct(m, l)).collect())
            .collect();
        model.coproducts = coproducts;
        model
    }

    /// Product of two basis elements as `coefficient · label`, or `None` for zero.
    pub fn basis_mul(&self, a: Label, b: Label) -> Option<(i64, Label)> {
        match (a, b) {
            (UNIT, x) | (x, UNIT) => Some((1, x)),
            (PT, _) | (_, PT) => None,
            (i, j) => {
                let g = self.lattice.gram[i as usize - 1][j as usize - 1];
                (g != 0).then_some((g, PT))
            }
        }
    }

    /// Product of a sequence of basis elements.
    pub fn basis_product(&self, labels: &[Label]) -> Option<(i64, Label)> {
        labels.iter().try_fold((1i64, UNIT), |(c, acc), &l| {
            self.basis_mul(acc, l).map(|(k, r)| (c * k, r))
        })
    }

    /// `T` on a basis label: `T([pt]) = -1`, zero otherwise.
    pub fn t_basis(&self, l: Label) -> i64 {
        if l == PT {
            -1
        } else {
            0
        }
    }

    pub fn mul(&self, a: &GradedClass, b: &GradedClass) -> GradedClass {
        let mut out = GradedClass::zero();
        for (la, ca) in a.terms() {
            for (lb, cb) in b.terms() {
                if let Some((k, l)) = self.basis_mul(la, lb) {
                    let cur = out.get(l) + ca * cb * Rational::from_integer(k.into());
                    out.set(l, cur);
                }
            }
        }
        out
    }

    /// `T(γ) = -∫_S γ`.
    pub fn t(&self, a: &GradedClass) -> Rational {
        -a.c_pt.clone()
    }

    pub fn pairing(&self, a: &GradedClass, b: &GradedClass) -> Rational {
        self.t(&self.mul(a, b))
    }

    /// Pairing of two tensors in `A ⊗ A`.
    pub fn pairing2(&self, x: &Tensor2, y: &Tensor2) -> Rational {
        let mut acc = Rational::zero();
        for ((a1, a2), ca) in x {
            for ((b1, b2), cb) in y {
                let t1 = self.basis_product(&[*a1, *b1]).map_or(0, |(k, l)| k * self.t_basis(l));
                if t1 == 0 {
                    continue;
                }
                let t2 = self.basis_product(&[*a2, *b2]).map_or(0, |(k, l)| k * self.t_basis(l));
                acc += ca * cb * Rational::from_integer((t1 * t2).into());
            }
        }
        acc
    }

    /// Sparse Poincaré dual `f_l^∨`.
    pub fn poincare_dual(&self, l: Label) -> &[(Label, i64)] {
        &self.poincare_dual[l as usize]
    }

    /// Dual of `f_l` for the pairing `<,>`: `<f_k, f_l^#> = δ_kl`, so `f^# = -f^∨`.
    pub fn pairing_dual(&self, l: Label) -> Vec<(Label, i64)> {
        self.poincare_dual[l as usize].iter().map(|&(k, c)| (k, -c)).collect()
    }

    /// Adjoint of the m-fold multiplication `A^{⊗m} → A`, on a basis label.
    pub fn coproduct(&self, m: usize, l: Label) -> std::borrow::Cow<'_, Coproduct> {
        if m <= CACHED_ARITY && !self.coproducts.is_empty() {
            std::borrow::Cow::Borrowed(&self.coproducts[m][l as usize])
        } else {
            std::borrow::Cow::Owned(self.compute_coproduct(m, l))
        }
    }

    // Δ^{(m)}_* f = Σ_x <x_1⋯x_m, f> · x_1^# ⊗ ⋯ ⊗ x_m^#, summed over basis tuples x.
    fn compute_coproduct(&self, m: usize, l: Label) -> Coproduct {
        if m == 0 {
            // The empty product is 1; its adjoint is the functional T.
            let t = self.t_basis(l);
            return if t == 0 { Vec::new() } else { vec![(Vec::new(), BigInt::from(t))] };
        }
        let mut acc: BTreeMap<Vec<Label>, BigInt> = BTreeMap::new();
        let mut tuple = vec![0 as Label; m];
        loop {
            let mut full = tuple.clone();
            full.push(l);
            if let Some((k, r)) = self.basis_product(&full) {
                let t = k * self.t_basis(r);
                if t != 0 {
                    let mut terms: Vec<(Vec<Label>, i64)> = vec![(Vec::new(), t)];
                    for &x in &tuple {
                        let dual = self.pairing_dual(x);
                        terms = terms
                            .iter()
                            .flat_map(|(key, c)| {
                                dual.iter().map(move |&(d, dc)| {
                                    let mut k2 = key.clone();
                                    k2.push(d);
                                    (k2, c * dc)
                                })
                            })
                            .collect();
                    }
                    for (key, c) in terms {
                        *acc.entry(key).or_insert_with(BigInt::zero) += c;
                    }
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == m {
                    return acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                }
                tuple[i] += 1;
                if (tuple[i] as usize) < DIM {
                    break;
                }
                tuple[i] = 0;
                i += 1;
            }
        }
    }

    /// `Δ_* a` in `A ⊗ A`.
    pub fn comultiply(&self, a: &GradedClass) -> Tensor2 {
        let mut out = Tensor2::new();
        for (l, c) in a.terms() {
            for (key, k) in self.coproduct(2, l).iter() {
                *out.entry((key[0], key[1])).or_insert_with(Rational::zero) +=
                    c * Rational::from_integer(k.clone());
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Multiplication `A ⊗ A → A`.
    pub fn multiply_tensor(&self, t: &Tensor2) -> GradedClass {
        let mut out = GradedClass::zero();
        for ((a, b), c) in t {
            if let Some((k, l)) = self.basis_mul(*a, *b) {
                let cur = out.get(l) + c * Rational::from_integer(k.into());
                out.set(l, cur);
            }
        }
        out
    }

    /// `e(A) = χ(S)·vol = -24·[pt]`.
    pub fn euler_class(&self) -> GradedClass {
        GradedClass::pt().scale(&Rational::from_integer((-24).into()))
    }

    /// Gram matrix of `<,>` on the full 24-dimensional basis.
    pub fn pairing_gram(&self) -> linalg::Matrix {
        (0..DIM as Label)
            .map(|a| {
                (0..DIM as Label)
                    .map(|b| {
                        let t = self.basis_mul(a, b).map_or(0, |(k, l)| k * self.t_basis(l));
                        Rational::from_integer(t.into())
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qi;

    fn model() -> &'static K3Model {
        K3Model::standard()
    }

    #[test]
    fn lattice_is_even_unimodular_with_signature_3_19() {
        let lat = &model().lattice;
        let g = lat.gram_matrix();
        for i in 0..RANK {
            assert_eq!(lat.gram[i][i] % 2, 0);
            for j in 0..RANK {
                assert_eq!(lat.gram[i][j], lat.gram[j][i]);
            }
        }
        assert_eq!(linalg::determinant(&g), qi(-1));
        assert_eq!(linalg::inertia(&g), (3, 19, 0));
        let inv: linalg::Matrix = lat
            .gram_inverse
            .iter()
            .map(|r| r.iter().map(|&v| qi(v)).collect())
            .collect();
        assert_eq!(linalg::mul(&g, &inv), linalg::identity(RANK));
    }

    #[test]
    fn products_of_basis() {
        let m = model();
        let x = GradedClass::e(5).add(&GradedClass::pt());
        assert_eq!(m.mul(&GradedClass::unit(), &x), x);
        let g12 = m.lattice.gram[0][1];
        assert_eq!(g12, 1);
        assert_eq!(m.mul(&GradedClass::e(1), &GradedClass::e(2)), GradedClass::pt());
        assert_eq!(m.mul(&GradedClass::pt(), &GradedClass::pt()), GradedClass::zero());
        assert_eq!(m.mul(&GradedClass::pt(), &GradedClass::e(3)), GradedClass::zero());
    }

    #[test]
    fn functional_t() {
        let m = model();
        assert_eq!(m.t(&GradedClass::pt()), qi(-1));
        assert_eq!(m.t(&GradedClass::unit()), qi(0));
        let x = GradedClass::pt().scale(&qi(3)).add(&GradedClass::e(5));
        assert_eq!(m.t(&x), qi(-3));
    }

    #[test]
    fn pairing_values_and_signature() {
        let m = model();
        assert_eq!(m.pairing(&GradedClass::unit(), &GradedClass::pt()), qi(-1));
        for i in 1..=RANK {
            for j in 1..=RANK {
                assert_eq!(
                    m.pairing(&GradedClass::e(i), &GradedClass::e(j)),
                    qi(-m.lattice.gram[i - 1][j - 1])
                );
            }
        }
        assert_eq!(linalg::inertia(&m.pairing_gram()), (20, 4, 0));
    }

    #[test]
    fn comultiply_point_and_unit() {
        let m = model();
        let dp = m.comultiply(&GradedClass::pt());
        assert_eq!(dp.len(), 1);
        assert_eq!(dp[&(PT, PT)], qi(-1));

        // Δ_*1 = -(1⊗pt + pt⊗1 + Σ e_j ⊗ e_j^∨)
        let mut expected = Tensor2::new();
        expected.insert((UNIT, PT), qi(-1));
        expected.insert((PT, UNIT), qi(-1));
        for j in 1..=RANK as Label {
            for &(k, c) in m.poincare_dual(j) {
                *expected.entry((j, k)).or_insert_with(Rational::zero) -= qi(c);
            }
        }
        expected.retain(|_, v| !v.is_zero());
        assert_eq!(m.comultiply(&GradedClass::unit()), expected);

        // <Δ_*1, e_1 ⊗ e_1^∨> = <1, e_1 e_1^∨> = -1
        let mut probe = Tensor2::new();
        for &(k, c) in m.poincare_dual(1) {
            probe.insert((1, k), qi(c));
        }
        assert_eq!(m.pairing2(&m.comultiply(&GradedClass::unit()), &probe), qi(-1));
    }

    #[test]
    fn adjointness_on_all_basis_triples() {
        let m = model();
        for a in 0..DIM as Label {
            let da = m.comultiply(&GradedClass::basis(a));
            for x in 0..DIM as Label {
                for y in 0..DIM as Label {
                    let mut xy = Tensor2::new();
                    xy.insert((x, y), qi(1));
                    let lhs = m.pairing2(&da, &xy);
                    let rhs = m.pairing(
                        &GradedClass::basis(a),
                        &m.mul(&GradedClass::basis(x), &GradedClass::basis(y)),
                    );
                    assert_eq!(lhs, rhs, "a={a} x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn euler_class_closed_form_matches_composite() {
        let m = model();
        let e = m.euler_class();
        assert_eq!(e, GradedClass::pt().scale(&qi(-24)));
        assert_eq!(m.t(&e), qi(24));
        assert_eq!(-e.c_pt.clone(), qi(24)); // ∫ e = -24
        assert_eq!(m.multiply_tensor(&m.comultiply(&GradedClass::unit())), e);
    }

    #[test]
    fn dual_basis_sum_is_22_points() {
        let m = model();
        let mut total = GradedClass::zero();
        for j in 1..=RANK as Label {
            for &(k, c) in m.poincare_dual(j) {
                total = total.add(&m.mul(&GradedClass::basis(j), &GradedClass::basis(k)).scale(&qi(c)));
            }
        }
        assert_eq!(total, GradedClass::pt().scale(&qi(22)));
    }

    #[test]
    fn grading_orthogonality() {
        let m = model();
        for a in 0..DIM as Label {
            for b in 0..DIM as Label {
                if weight(a) + weight(b) != 0 {
                    assert!(m.pairing(&GradedClass::basis(a), &GradedClass::basis(b)).is_zero());
                }
            }
        }
    }
}
