//! The algebra `A{S_n}` and its invariant subalgebra `A^[n]`.
//!
//! An element is a sum over permutations `π` of tensors indexed by the
//! orbits of `⟨π⟩` on `{1..n}`. The product of `aπ` and `bσ` lands in the
//! sector `πσ` and is computed uniformly:
//!
//! 1. multiply `a` and `b` up to the orbits of `⟨π, σ⟩`,
//! 2. multiply the orbit factor `B` by `e(A)^{g(B)}` (graph defect `g`),
//! 3. push forward along the orbits of `⟨πσ⟩`.
//!
//! Permutations compose as functions: `(πσ)(i) = π(σ(i))`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::Rational;
use crate::k3::{GradedClass, K3Model, Label, DIM, PT, RANK, UNIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("map is not a surjection onto {target_len} indices")]
    NonSurjective { target_len: usize },
    #[error("operands live in A{{S_{left}}} and A{{S_{right}}}")]
    MismatchedN { left: usize, right: usize },
    #[error("graph defect {twice}/2 for orbit {orbit:?} is not a nonnegative integer")]
    InvalidDefect { orbit: Vec<u8>, twice: i64 },
    #[error("{0:?} is not an orbit of the generated subgroup")]
    NotAnOrbit(Vec<u8>),
    #[error("invalid permutation images {0:?}")]
    InvalidPermutation(Vec<u8>),
}

/// A bijection of `{0..n}` stored by images (displayed 1-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn new(images: Vec<u8>) -> Result<Self, RingError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(RingError::InvalidPermutation(images));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u8).collect() }
    }

    /// Builds a permutation from 1-based cycles, e.g. `&[&[1, 2, 3]]`.
    pub fn from_cycles(n: usize, cycles: &[&[u8]]) -> Self {
        let mut images: Vec<u8> = (0..n as u8).collect();
        for c in cycles {
            for (k, &i) in c.iter().enumerate() {
                images[i as usize - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Permutation::new(images).expect("valid cycles")
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: u8) -> u8 {
        self.images[i as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u8 == v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `σ π σ^{-1}` for `self = π`.
    pub fn conjugate_by(&self, sigma: &Permutation) -> Permutation {
        sigma.compose(self).compose(&sigma.inverse())
    }

    /// Cycles of `⟨self⟩`, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<u8>> {
        orbits_of(self.n(), &[self])
    }

    /// All permutations of `n` letters in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Permutation { images: prefix.clone() });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i as u8);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let mut seen = vec![false; self.n()];
        for start in 0..self.n() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            loop {
                seen[i] = true;
                write!(f, "{}", i + 1)?;
                i = self.images[i] as usize;
                if i == start {
                    break;
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Orbits of the subgroup generated by `gens`, canonical order.
pub fn orbits_of(n: usize, gens: &[&Permutation]) -> Vec<Vec<u8>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for g in gens {
        for i in 0..n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, g.apply(i as u8) as usize));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<u8>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        blocks.entry(r).or_default().push(i as u8);
    }
    let mut out: Vec<Vec<u8>> = blocks.into_values().collect();
    out.sort();
    out
}

/// Sparse tensor: one basis label per index, rational coefficients.
pub type TensorMap = BTreeMap<Vec<Label>, Rational>;

fn add_term(map: &mut TensorMap, key: Vec<Label>, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// A surjection `φ: I → J` between finite index sets `{0..|I|}` and `{0..|J|}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surjection {
    map: Vec<usize>,
    target_len: usize,
}

impl Surjection {
    pub fn new(map: Vec<usize>, target_len: usize) -> Result<Self, RingError> {
        let mut hit = vec![false; target_len];
        for &j in &map {
            if j >= target_len {
                return Err(RingError::NonSurjective { target_len });
            }
            hit[j] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(RingError::NonSurjective { target_len });
        }
        Ok(Surjection { map, target_len })
    }

    /// The quotient map from a finer partition to a coarser one.
    pub fn coarsening(fine: &[Vec<u8>], coarse: &[Vec<u8>]) -> Result<Self, RingError> {
        let map = fine
            .iter()
            .map(|block| {
                coarse
                    .iter()
                    .position(|c| block.iter().all(|x| c.contains(x)))
                    .ok_or_else(|| RingError::NotAnOrbit(block.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(map, coarse.len())
    }

    pub fn source_len(&self) -> usize {
        self.map.len()
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    fn fiber(&self, j: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&i| self.map[i] == j).collect()
    }
}

/// `φ^*`: multiplies all factors in each fiber.
pub fn pullback(phi: &Surjection, a: &TensorMap) -> TensorMap {
    let model = K3Model::standard();
    let fibers: Vec<Vec<usize>> = (0..phi.target_len).map(|j| phi.fiber(j)).collect();
    let mut out = TensorMap::new();
    'keys: for (key, c) in a {
        debug_assert_eq!(key.len(), phi.source_len());
        let mut coef = BigInt::one();
        let mut new_key = Vec::with_capacity(fibers.len());
        for fib in &fibers {
            let labels: Vec<Label> = fib.iter().map(|&i| key[i]).collect();
            match model.basis_product(&labels) {
                Some((k, l)) => {
                    coef *= k;
                    new_key.push(l);
                }
                None => continue 'keys,
            }
        }
        add_term(&mut out, new_key, c * Rational::from_integer(coef));
    }
    out
}

/// `φ_*`: the `<,>`-adjoint of `φ^*`, applied factor by factor through the
/// multi-fold coproduct of each target label over its fiber.
pub fn pushforward(phi: &Surjection, b: &TensorMap) -> TensorMap {
    let model = K3Model::standard();
    let fibers: Vec<Vec<usize>> = (0..phi.target_len).map(|j| phi.fiber(j)).collect();
    let mut out = TensorMap::new();
    for (key, c) in b {
        debug_assert_eq!(key.len(), phi.target_len);
        let mut partial: Vec<(Vec<Label>, BigInt)> = vec![(vec![UNIT; phi.source_len()], BigInt::one())];
        for (j, fib) in fibers.iter().enumerate() {
            let cop = model.coproduct(fib.len(), key[j]);
            let mut next = Vec::with_capacity(partial.len() * cop.len());
            for (pk, pc) in &partial {
                for (tuple, tc) in cop.iter() {
                    let mut k2 = pk.clone();
                    for (slot, &lab) in fib.iter().zip(tuple) {
                        k2[*slot] = lab;
                    }
                    next.push((k2, pc * tc));
                }
            }
            partial = next;
        }
        for (k, pc) in partial {
            add_term(&mut out, k, c * Rational::from_integer(pc));
        }
    }
    out
}

/// `<x, y> = Σ Π_i T(x_i y_i)` on `A^{⊗I}`.
pub fn tensor_pairing(x: &TensorMap, y: &TensorMap) -> Rational {
    let model = K3Model::standard();
    let mut acc = Rational::zero();
    for (kx, cx) in x {
        'inner: for (ky, cy) in y {
            let mut t = 1i64;
            for (a, b) in kx.iter().zip(ky) {
                match model.basis_mul(*a, *b) {
                    Some((k, l)) if l == PT => t *= -k,
                    _ => continue 'inner,
                }
            }
            acc += cx * cy * Rational::from_integer(t.into());
        }
    }
    acc
}

/// Factorwise product of two tensors over the same index set.
fn tensor_mul(a: &TensorMap, b: &TensorMap) -> TensorMap {
    let model = K3Model::standard();
    let mut out = TensorMap::new();
    for (ka, ca) in a {
        'inner: for (kb, cb) in b {
            let mut coef = 1i64;
            let mut key = Vec::with_capacity(ka.len());
            for (x, y) in ka.iter().zip(kb) {
                match model.basis_mul(*x, *y) {
                    Some((k, l)) => {
                        coef *= k;
                        key.push(l);
                    }
                    None => continue 'inner,
                }
            }
            let c = ca * cb * Rational::from_integer(coef.into());
            *out.entry(key).or_insert_with(Rational::zero) += c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Multiplies factor `slot` of every term by `e(A)^power`.
fn apply_euler(t: &TensorMap, slot: usize, power: u32) -> TensorMap {
    if power == 0 {
        return t.clone();
    }
    let model = K3Model::standard();
    let mut factor = GradedClass::unit();
    for _ in 0..power {
        factor = model.mul(&factor, &model.euler_class());
    }
    let mut out = TensorMap::new();
    for (key, c) in t {
        for (l, fc) in factor.terms() {
            if let Some((k, r)) = model.basis_mul(key[slot], l) {
                let mut k2 = key.clone();
                k2[slot] = r;
                add_term(&mut out, k2, c * fc * Rational::from_integer(k.into()));
            }
        }
    }
    out
}

/// Tensor indexed by the orbits of a permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTensor {
    pub orbits: Vec<Vec<u8>>,
    pub coeffs: TensorMap,
}

impl OrbitTensor {
    pub fn zero(orbits: Vec<Vec<u8>>) -> Self {
        OrbitTensor { orbits, coeffs: TensorMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Label assigned to the orbit containing `i` in a key.
    fn slot_of(&self, i: u8) -> usize {
        self.orbits.iter().position(|o| o.contains(&i)).expect("index in some orbit")
    }
}

/// Graph defect `g(B) = (|B| + 2 - #π-orbits - #σ-orbits - #πσ-orbits)/2`
/// on an orbit `B` of `⟨π, σ⟩`.
pub fn graph_defect(pi: &Permutation, sigma: &Permutation, orbit: &[u8]) -> Result<u32, RingError> {
    let n = pi.n();
    let generated = orbits_of(n, &[pi, sigma]);
    let mut sorted = orbit.to_vec();
    sorted.sort();
    if !generated.contains(&sorted) {
        return Err(RingError::NotAnOrbit(sorted));
    }
    let count_in = |p: &Permutation| p.orbits().iter().filter(|o| sorted.contains(&o[0])).count() as i64;
    let tau = pi.compose(sigma);
    let twice = sorted.len() as i64 + 2 - count_in(pi) - count_in(sigma) - count_in(&tau);
    if twice < 0 || twice % 2 != 0 {
        return Err(RingError::InvalidDefect { orbit: sorted, twice });
    }
    Ok((twice / 2) as u32)
}

/// Element of `A{S_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnClass {
    n: usize,
    sectors: BTreeMap<Permutation, OrbitTensor>,
}

impl SnClass {
    pub fn zero(n: usize) -> Self {
        SnClass { n, sectors: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sectors(&self) -> &BTreeMap<Permutation, OrbitTensor> {
        &self.sectors
    }

    pub fn is_zero(&self) -> bool {
        self.sectors.is_empty()
    }

    /// Number of (sector, basis tensor) terms.
    pub fn term_count(&self) -> usize {
        self.sectors.values().map(|t| t.coeffs.len()).sum()
    }

    /// `c · (f_{l_1} ⊗ … )π` with one label per orbit of `π` in canonical order.
    pub fn monomial(pi: &Permutation, labels: Vec<Label>, c: Rational) -> Self {
        let orbits = pi.orbits();
        assert_eq!(labels.len(), orbits.len(), "one label per orbit");
        let mut t = OrbitTensor::zero(orbits);
        add_term(&mut t.coeffs, labels, c);
        let mut x = SnClass::zero(pi.n());
        x.add_sector(pi.clone(), t);
        x
    }

    /// Like [`SnClass::monomial`], but factors are given on named orbits
    /// (1-based, any orbit containing the listed index) and all other
    /// factors are the unit.
    pub fn placed(pi: &Permutation, placed: &[(u8, Label)], c: Rational) -> Self {
        let orbits = pi.orbits();
        let mut labels = vec![UNIT; orbits.len()];
        for &(i, l) in placed {
            let slot = orbits.iter().position(|o| o.contains(&(i - 1))).expect("index in range");
            labels[slot] = l;
        }
        Self::monomial(pi, labels, c)
    }

    /// The unit-tensor class `1 ⊗ … ⊗ 1 (π)`.
    pub fn sector_unit(pi: &Permutation) -> Self {
        Self::placed(pi, &[], Rational::one())
    }

    pub fn one(n: usize) -> Self {
        Self::sector_unit(&Permutation::identity(n))
    }

    fn add_sector(&mut self, pi: Permutation, t: OrbitTensor) {
        if t.is_zero() {
            return;
        }
        match self.sectors.get_mut(&pi) {
            Some(cur) => {
                for (k, c) in t.coeffs {
                    add_term(&mut cur.coeffs, k, c);
                }
                if cur.is_zero() {
                    self.sectors.remove(&pi);
                }
            }
            None => {
                self.sectors.insert(pi, t);
            }
        }
    }

    pub fn add(&self, o: &SnClass) -> SnClass {
        assert_eq!(self.n, o.n);
        let mut out = self.clone();
        for (p, t) in &o.sectors {
            out.add_sector(p.clone(), t.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SnClass {
        let mut out = SnClass::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (p, t) in &self.sectors {
            let coeffs = t.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect();
            out.sectors.insert(p.clone(), OrbitTensor { orbits: t.orbits.clone(), coeffs });
        }
        out
    }

    pub fn sub(&self, o: &SnClass) -> SnClass {
        self.add(&o.scale(&-Rational::one()))
    }

    /// Linear combination `Σ c_i x_i`.
    pub fn combination(n: usize, parts: &[(Rational, &SnClass)]) -> SnClass {
        parts
            .iter()
            .fold(SnClass::zero(n), |acc, (c, x)| acc.add(&x.scale(c)))
    }

    pub fn multiply(&self, o: &SnClass) -> Result<SnClass, RingError> {
        if self.n != o.n {
            return Err(RingError::MismatchedN { left: self.n, right: o.n });
        }
        let mut out = SnClass::zero(self.n);
        for (pi, a) in &self.sectors {
            for (sigma, b) in &o.sectors {
                let (tau, t) = sector_product(pi, a, sigma, b)?;
                out.add_sector(tau, t);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<SnClass, RingError> {
        let mut acc = SnClass::one(self.n);
        for _ in 0..k {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// `σ̃(aπ) = σ^*a · σπσ^{-1}`: the factor on orbit `B` moves to `σ(B)`.
    pub fn act(&self, sigma: &Permutation) -> SnClass {
        let mut out = SnClass::zero(self.n);
        for (pi, t) in &self.sectors {
            let new_pi = pi.conjugate_by(sigma);
            let new_orbits = new_pi.orbits();
            // slot in the old key feeding each new orbit
            let source: Vec<usize> = new_orbits
                .iter()
                .map(|o| t.slot_of(sigma.inverse().apply(o[0])))
                .collect();
            let coeffs = t
                .coeffs
                .iter()
                .map(|(k, c)| (source.iter().map(|&s| k[s]).collect(), c.clone()))
                .collect();
            out.add_sector(new_pi, OrbitTensor { orbits: new_orbits, coeffs });
        }
        out
    }

    /// Average over all `n!` actions.
    pub fn symmetrize(&self) -> SnClass {
        let perms = Permutation::all(self.n);
        let total = perms.iter().fold(SnClass::zero(self.n), |acc, s| acc.add(&self.act(s)));
        total.scale(&Rational::new(BigInt::one(), BigInt::from(perms.len())))
    }

    pub fn is_invariant(&self) -> bool {
        Permutation::all(self.n).iter().all(|s| &self.act(s) == self)
    }

    /// Coefficient of `[pt]^{⊗n}(id)`, divided by `n!`.
    pub fn integrate(&self) -> Rational {
        let id = Permutation::identity(self.n);
        let top = self
            .sectors
            .get(&id)
            .and_then(|t| t.coeffs.get(&vec![PT; self.n]).cloned())
            .unwrap_or_else(Rational::zero);
        let fact: u64 = (1..=self.n as u64).product();
        top / Rational::from_integer(fact.into())
    }

    /// Coefficient of `[pt]^{⊗n}(id)` itself.
    pub fn top_coefficient(&self) -> Rational {
        self.integrate() * Rational::from_integer((1..=self.n as u64).product::<u64>().into())
    }

    /// `Σ_i 1 ⊗ … ⊗ D_(i) ⊗ … ⊗ 1 (id) + c·δ`.
    pub fn divisor(n: usize, d: &[Rational], c: &Rational) -> SnClass {
        assert_eq!(d.len(), RANK);
        let id = Permutation::identity(n);
        let mut t = OrbitTensor::zero(id.orbits());
        for i in 0..n {
            for (j, dj) in d.iter().enumerate() {
                let mut key = vec![UNIT; n];
                key[i] = (j + 1) as Label;
                add_term(&mut t.coeffs, key, dj.clone());
            }
        }
        let mut x = SnClass::zero(n);
        x.add_sector(id, t);
        x.add(&delta(n).scale(c))
    }
}

impl fmt::Display for SnClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (pi, t) in &self.sectors {
            for (k, c) in &t.coeffs {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let factors: Vec<String> = t
                    .orbits
                    .iter()
                    .zip(k)
                    .filter(|(_, l)| **l != UNIT)
                    .map(|(o, l)| {
                        let idx: String = o.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
                        format!("{}_{{{idx}}}", label_name(*l))
                    })
                    .collect();
                let body = if factors.is_empty() { "1".to_string() } else { factors.join("⊗") };
                write!(f, "({c})·{body}{pi}")?;
            }
        }
        Ok(())
    }
}

pub fn label_name(l: Label) -> String {
    match l {
        UNIT => "1".into(),
        PT => "pt".into(),
        i => format!("e{i}"),
    }
}

/// `δ = Σ_{i<j} 1(ij)`.
pub fn delta(n: usize) -> SnClass {
    let mut x = SnClass::zero(n);
    for i in 1..=n as u8 {
        for j in i + 1..=n as u8 {
            x = x.add(&SnClass::sector_unit(&Permutation::from_cycles(n, &[&[i, j]])));
        }
    }
    x
}

fn sector_product(
    pi: &Permutation,
    a: &OrbitTensor,
    sigma: &Permutation,
    b: &OrbitTensor,
) -> Result<(Permutation, OrbitTensor), RingError> {
    let n = pi.n();
    let tau = pi.compose(sigma);
    let joint = orbits_of(n, &[pi, sigma]);
    let a_up = pullback(&Surjection::coarsening(&a.orbits, &joint)?, &a.coeffs);
    if a_up.is_empty() {
        return Ok((tau.clone(), OrbitTensor::zero(tau.orbits())));
    }
    let b_up = pullback(&Surjection::coarsening(&b.orbits, &joint)?, &b.coeffs);
    let mut prod = tensor_mul(&a_up, &b_up);
    for (slot, orbit) in joint.iter().enumerate() {
        let g = graph_defect(pi, sigma, orbit)?;
        prod = apply_euler(&prod, slot, g);
    }
    let tau_orbits = tau.orbits();
    let down = pushforward(&Surjection::coarsening(&tau_orbits, &joint)?, &prod);
    Ok((tau, OrbitTensor { orbits: tau_orbits, coeffs: down }))
}

/// Converts a 24-dimensional class to sparse `(label, coefficient)` terms.
pub fn class_terms(c: &GradedClass) -> Vec<(Label, Rational)> {
    (0..DIM as Label).map(|l| (l, c.get(l).clone())).filter(|(_, v)| !v.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qi;
    use crate::k3::mid;

    fn p(n: usize, cycles: &[&[u8]]) -> Permutation {
        Permutation::from_cycles(n, cycles)
    }

    fn single(labels: &[Label]) -> TensorMap {
        let mut t = TensorMap::new();
        t.insert(labels.to_vec(), qi(1));
        t
    }

    #[test]
    fn composition_convention() {
        // (12)(13) = (132)
        assert_eq!(p(3, &[&[1, 2]]).compose(&p(3, &[&[1, 3]])), p(3, &[&[1, 3, 2]]));
        assert_eq!(p(3, &[&[1, 3, 2]]).to_string(), "(132)");
        let s = p(3, &[&[1, 3]]);
        assert_eq!(p(3, &[&[1, 2]]).conjugate_by(&s), p(3, &[&[2, 3]]));
    }

    #[test]
    fn surjection_must_be_onto() {
        assert!(Surjection::new(vec![0, 0], 2).is_err());
        assert!(Surjection::new(vec![0, 1], 2).is_ok());
    }

    #[test]
    fn pullback_examples() {
        let id = Surjection::new(vec![0, 1], 2).unwrap();
        let t = single(&[mid(3), PT]);
        assert_eq!(pullback(&id, &t), t);

        let m = K3Model::standard();
        let collapse2 = Surjection::new(vec![0, 0], 1).unwrap();
        for i in 1..=RANK {
            for j in 1..=RANK {
                let out = pullback(&collapse2, &single(&[mid(i), mid(j)]));
                let g = m.lattice.gram[i - 1][j - 1];
                if g == 0 {
                    assert!(out.is_empty());
                } else {
                    assert_eq!(out, [(vec![PT], qi(g))].into_iter().collect());
                }
            }
        }

        let collapse3 = Surjection::new(vec![0, 0, 0], 1).unwrap();
        assert_eq!(pullback(&collapse3, &single(&[UNIT, UNIT, mid(7)])), single(&[mid(7)]));
    }

    #[test]
    fn pushforward_matches_comultiply() {
        let m = K3Model::standard();
        let phi = Surjection::new(vec![0, 0], 1).unwrap();
        for l in [UNIT, PT, mid(1), mid(9)] {
            let expected: TensorMap = m
                .comultiply(&GradedClass::basis(l))
                .into_iter()
                .map(|((a, b), c)| (vec![a, b], c))
                .collect();
            assert_eq!(pushforward(&phi, &single(&[l])), expected);
        }
        assert_eq!(pushforward(&phi, &single(&[PT])), [(vec![PT, PT], qi(-1))].into_iter().collect());
    }

    #[test]
    fn defect_examples() {
        let all = vec![0u8, 1, 2];
        assert_eq!(graph_defect(&p(3, &[&[1, 2]]), &p(3, &[&[1, 3]]), &all), Ok(0));
        assert_eq!(graph_defect(&p(3, &[&[1, 2, 3]]), &p(3, &[&[1, 2, 3]]), &all), Ok(1));
        assert_eq!(graph_defect(&p(3, &[&[1, 2, 3]]), &p(3, &[&[1, 3, 2]]), &all), Ok(0));
        assert!(graph_defect(&p(3, &[&[1, 2]]), &p(3, &[&[1, 2]]), &all).is_err());
    }

    #[test]
    fn defect_symmetric_and_conjugation_invariant() {
        let perms = Permutation::all(3);
        for a in &perms {
            for b in &perms {
                for orbit in orbits_of(3, &[a, b]) {
                    let g = graph_defect(a, b, &orbit).unwrap();
                    assert_eq!(g, graph_defect(b, a, &orbit).unwrap());
                    for s in &perms {
                        let moved: Vec<u8> = orbit.iter().map(|&i| s.apply(i)).collect();
                        let g2 = graph_defect(&a.conjugate_by(s), &b.conjugate_by(s), &moved).unwrap();
                        assert_eq!(g, g2);
                    }
                }
            }
        }
    }

    #[test]
    fn sector_rule_transposition_squared() {
        // (α_{12}⊗β_3)(12) · (γ_{12}⊗δ_3)(12) = (Δ_*(αγ) ⊗ βδ)(id)
        let m = K3Model::standard();
        let t12 = p(3, &[&[1, 2]]);
        let (alpha, beta, gamma, delta_) = (mid(1), UNIT, mid(2), PT);
        let x = SnClass::monomial(&t12, vec![alpha, beta], qi(1));
        let y = SnClass::monomial(&t12, vec![gamma, delta_], qi(1));
        let got = x.multiply(&y).unwrap();

        let ag = m.mul(&GradedClass::basis(alpha), &GradedClass::basis(gamma));
        let bd = m.mul(&GradedClass::basis(beta), &GradedClass::basis(delta_));
        let mut expected = SnClass::zero(3);
        let id = Permutation::identity(3);
        for ((l1, l2), c) in m.comultiply(&ag) {
            for (l3, c3) in bd.terms() {
                expected = expected.add(&SnClass::monomial(&id, vec![l1, l2, l3], &c * c3));
            }
        }
        assert_eq!(got, expected);
    }

    #[test]
    fn sector_rule_three_cycle_squared() {
        // α(123)·β(123) = (αβe)(132)
        let c = p(3, &[&[1, 2, 3]]);
        let x = SnClass::monomial(&c, vec![UNIT], qi(1));
        let got = x.multiply(&x).unwrap();
        assert_eq!(got, SnClass::monomial(&p(3, &[&[1, 3, 2]]), vec![PT], qi(-24)));
    }

    #[test]
    fn transposition_times_three_cycle() {
        // (12)·(132) = (Δ_*1)_{{1,3},{2}}(13)
        let m = K3Model::standard();
        let got = SnClass::sector_unit(&p(3, &[&[1, 2]]))
            .multiply(&SnClass::sector_unit(&p(3, &[&[1, 3, 2]])))
            .unwrap();
        let t13 = p(3, &[&[1, 3]]);
        // orbits of (13): {1,3}, {2}
        let mut expected = SnClass::zero(3);
        for ((l1, l2), c) in m.comultiply(&GradedClass::unit()) {
            expected = expected.add(&SnClass::monomial(&t13, vec![l1, l2], c));
        }
        assert_eq!(got, expected);
    }

    #[test]
    fn action_relabels() {
        let t12 = p(3, &[&[1, 2]]);
        let x = SnClass::monomial(&t12, vec![mid(4), PT], qi(1));
        let s = p(3, &[&[1, 3]]);
        // orbits of (23): {1}, {2,3}; pt moves from {3} to {1}
        let expected = SnClass::monomial(&p(3, &[&[2, 3]]), vec![PT, mid(4)], qi(1));
        assert_eq!(x.act(&s), expected);
        assert_eq!(x.act(&Permutation::identity(3)), x);
    }

    #[test]
    fn invariants() {
        assert!(delta(3).is_invariant());
        assert!(!SnClass::sector_unit(&p(3, &[&[1, 2]])).is_invariant());
        let x = SnClass::monomial(&p(3, &[&[1, 2]]), vec![mid(4), PT], qi(3));
        let s = x.symmetrize();
        assert!(s.is_invariant());
        assert_eq!(s.symmetrize(), s);
    }

    #[test]
    fn integration_normalisation() {
        let id = Permutation::identity(3);
        let top = SnClass::monomial(&id, vec![PT, PT, PT], qi(1));
        assert_eq!(top.integrate(), Rational::new(1.into(), 6.into()));
        assert_eq!(SnClass::one(3).integrate(), qi(0));
    }

    #[test]
    fn divisor_construction() {
        let zero = vec![qi(0); RANK];
        assert_eq!(SnClass::divisor(3, &zero, &qi(1)), delta(3));
        let mut e1 = zero.clone();
        e1[0] = qi(1);
        let d = SnClass::divisor(3, &e1, &qi(0));
        let id = Permutation::identity(3);
        let expected = SnClass::combination(
            3,
            &[
                (qi(1), &SnClass::monomial(&id, vec![mid(1), UNIT, UNIT], qi(1))),
                (qi(1), &SnClass::monomial(&id, vec![UNIT, mid(1), UNIT], qi(1))),
                (qi(1), &SnClass::monomial(&id, vec![UNIT, UNIT, mid(1)], qi(1))),
            ],
        );
        assert_eq!(d, expected);
        assert!(SnClass::divisor(3, &e1, &qi(5)).is_invariant());
    }

    #[test]
    fn delta_sixth_power() {
        assert_eq!(delta(3).pow(6).unwrap().integrate(), qi(-960));
    }

    #[test]
    fn n2_delta_square() {
        // In A{S_2}: δ² = Δ_*1 (id), integrating to -24/2 on the top part only through 1⊗pt terms.
        let d = delta(2);
        let sq = d.multiply(&d).unwrap();
        assert_eq!(sq.sectors().len(), 1);
        // Fujiki for n = 2: δ⁴ = 3 (δ,δ)² with (δ,δ) = -2
        assert_eq!(d.pow(4).unwrap().integrate(), qi(12));
    }

    #[test]
    fn mismatched_n() {
        assert!(delta(2).multiply(&delta(3)).is_err());
    }
}
