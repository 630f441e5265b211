//! Local solvability of `m_i · F_i(X, Y) ∈ K²` (zero allowed) for even-degree
//! binary forms `F_i`, simultaneously at one point `(X : Y) ∈ P¹(K)`, where
//! `K` is `Q_p` or `R`.
//!
//! Over `Q_p` the projective line is covered by `x ∈ Z_p` (point `(x : 1)`)
//! and `y ∈ pZ_p` (point `(1 : y)`). Each chart is searched by refining
//! residue classes `t0 + p^n Z_p`. A class is decided when every constraint
//! either has constant square class on it (Taylor bound), or has a root
//! inside it by Newton's lemma.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{is_prime_u64, mod_u64, pow_mod, valuation, Rational};
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("form has odd degree {0}")]
    OddDegree(usize),
    #[error("form is identically zero")]
    ZeroForm,
    #[error("undetermined at p = {p}: a residue class survives to depth {depth} (cap {cap})")]
    Undetermined { p: u64, depth: u32, cap: u32 },
}

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "R"),
            Place::Prime(p) => write!(f, "Q_{p}"),
        }
    }
}

/// `F(X, Y) = Σ c_i X^i Y^{d-i}` with `d` the formal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    /// Coefficients `c_0..c_d` of `X^0 Y^d, …, X^d Y^0`.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        BinaryForm { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let d = self.degree();
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * x.pow(i as u32) * y.pow((d - i) as u32);
        }
        acc
    }

    pub fn mul(&self, o: &BinaryForm) -> BinaryForm {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm::new(out)
    }

    /// Homogeneous resultant of `∂F/∂X` and `∂F/∂Y`, a nonzero multiple of
    /// the discriminant when `F` has no repeated factor.
    pub fn discriminant_multiple(&self) -> BigInt {
        let d = self.degree();
        if d < 2 {
            return BigInt::one();
        }
        let fx: Vec<BigInt> = (1..=d).map(|i| &self.coeffs[i] * BigInt::from(i)).collect();
        let fy: Vec<BigInt> = (0..d).map(|i| &self.coeffs[i] * BigInt::from(d - i)).collect();
        homogeneous_resultant(&fx, &fy)
    }

    /// `F(t, 1)` as an integer polynomial (lowest degree first).
    fn chart_x(&self) -> Vec<BigInt> {
        self.coeffs.clone()
    }

    /// `F(1, t)`.
    fn chart_y(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }
}

/// Sylvester resultant of two binary forms of the same formal degree.
fn homogeneous_resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![BigInt::zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![BigInt::zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    bareiss_determinant(rows)
}

/// Fraction-free determinant of a square integer matrix.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// The requirement `multiplier · form(X, Y)` is a square (possibly zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub multiplier: BigInt,
    pub form: BinaryForm,
}

impl Constraint {
    pub fn new(multiplier: BigInt, form: BinaryForm) -> Self {
        Constraint { multiplier, form }
    }
}

/// Outcome of a local test, with the depth bookkeeping that certifies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalResult {
    pub place: Place,
    pub solvable: bool,
    /// Residue depth cap used at a finite place.
    pub cap: u32,
    /// Deepest residue class actually visited.
    pub depth_reached: u32,
    /// A witness class `(chart, t0, n)` when solvable at a finite place.
    pub witness: Option<(Chart, BigInt, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `(t : 1)` with `t ∈ Z_p`.
    X,
    /// `(1 : t)` with `t ∈ pZ_p`.
    Y,
}

fn validate(constraints: &[Constraint]) -> Result<(), PadicError> {
    for c in constraints {
        if c.form.degree() % 2 == 1 {
            return Err(PadicError::OddDegree(c.form.degree()));
        }
        if c.form.coeffs.iter().all(Zero::is_zero) || c.multiplier.is_zero() {
            return Err(PadicError::ZeroForm);
        }
    }
    Ok(())
}

pub fn solvable_at(constraints: &[Constraint], place: Place, extra_precision: u32) -> Result<LocalResult, PadicError> {
    validate(constraints)?;
    match place {
        Place::Real => Ok(LocalResult { place, solvable: solvable_real(constraints), cap: 0, depth_reached: 0, witness: None }),
        Place::Prime(p) => solvable_padic(constraints, p, extra_precision),
    }
}

/// Whether `u` is a nonzero square in `Q_p`.
pub fn is_padic_square(u: &BigInt, p: u64) -> bool {
    if u.is_zero() {
        return true;
    }
    let v = valuation(u, p);
    if v % 2 == 1 {
        return false;
    }
    let unit = u / BigInt::from(p).pow(v);
    if p == 2 {
        mod_u64(&unit, 8) == 1
    } else {
        let r = mod_u64(&unit, p);
        pow_mod(r, (p - 1) / 2, p) == 1
    }
}

fn eval_int(coeffs: &[BigInt], t: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
}

fn derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ClassStatus {
    /// Constant square class on the whole residue class.
    Stable(bool),
    /// Contains a root of the form.
    Root,
    Unknown,
}

struct ChartPoly {
    multiplier: BigInt,
    g: Vec<BigInt>,
    dg: Vec<BigInt>,
}

fn classify(cp: &ChartPoly, p: u64, t0: &BigInt, n: u32) -> ClassStatus {
    let v0 = eval_int(&cp.g, t0);
    if v0.is_zero() {
        return ClassStatus::Root;
    }
    let lambda = valuation(&v0, p);
    let d0 = eval_int(&cp.dg, t0);
    let mu = (!d0.is_zero()).then(|| valuation(&d0, p));
    let m = match mu {
        Some(mu) => (n + mu).min(2 * n),
        None => 2 * n,
    };
    let margin = if p == 2 { 3 } else { 1 };
    if lambda < m && m - lambda >= margin {
        return ClassStatus::Stable(is_padic_square(&(&cp.multiplier * &v0), p));
    }
    if let Some(mu) = mu {
        if lambda > 2 * mu && lambda - mu >= n {
            return ClassStatus::Root;
        }
    }
    ClassStatus::Unknown
}

struct Search<'a> {
    polys: &'a [ChartPoly],
    p: u64,
    cap: u32,
    depth_reached: u32,
}

impl Search<'_> {
    /// `Ok(Some(t0, n))` for a class containing a solution, `Ok(None)` when
    /// the class has none.
    fn run(&mut self, t0: BigInt, n: u32) -> Result<Option<(BigInt, u32)>, PadicError> {
        self.depth_reached = self.depth_reached.max(n);
        let statuses: Vec<ClassStatus> = self.polys.iter().map(|cp| classify(cp, self.p, &t0, n)).collect();
        if statuses.contains(&ClassStatus::Stable(false)) {
            return Ok(None);
        }
        let roots = statuses.iter().filter(|s| **s == ClassStatus::Root).count();
        let unknown = statuses.contains(&ClassStatus::Unknown);
        if !unknown && roots <= 1 {
            return Ok(Some((t0, n)));
        }
        if n >= self.cap {
            return Err(PadicError::Undetermined { p: self.p, depth: n, cap: self.cap });
        }
        let step = BigInt::from(self.p).pow(n);
        for k in 0..self.p {
            let child = &t0 + &step * BigInt::from(k);
            if let Some(w) = self.run(child, n + 1)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}

fn solvable_padic(constraints: &[Constraint], p: u64, extra: u32) -> Result<LocalResult, PadicError> {
    if !is_prime_u64(p) {
        return Err(PadicError::NotPrime(p));
    }
    let product = constraints.iter().skip(1).fold(constraints[0].form.clone(), |acc, c| acc.mul(&c.form));
    let disc = product.discriminant_multiple();
    let base = if disc.is_zero() { 0 } else { valuation(&disc, p) };
    let cap = base + extra + if p == 2 { 2 } else { 0 } + 1;
    let mut depth_reached = 0;
    for chart in [Chart::X, Chart::Y] {
        let polys: Vec<ChartPoly> = constraints
            .iter()
            .map(|c| {
                let g = match chart {
                    Chart::X => c.form.chart_x(),
                    Chart::Y => c.form.chart_y(),
                };
                let dg = derivative(&g);
                ChartPoly { multiplier: c.multiplier.clone(), g, dg }
            })
            .collect();
        let mut s = Search { polys: &polys, p, cap, depth_reached: 0 };
        // chart Y only covers t ∈ pZ_p, the class 0 + p Z_p
        let found = match chart {
            Chart::X => s.run(BigInt::zero(), 0)?,
            Chart::Y => s.run(BigInt::zero(), 1)?,
        };
        depth_reached = depth_reached.max(s.depth_reached);
        if let Some((t0, n)) = found {
            return Ok(LocalResult { place: Place::Prime(p), solvable: true, cap, depth_reached, witness: Some((chart, t0, n)) });
        }
    }
    Ok(LocalResult { place: Place::Prime(p), solvable: false, cap, depth_reached, witness: None })
}

fn to_poly(coeffs: &[BigInt]) -> Poly {
    Poly::from_bigints(coeffs)
}

fn sturm_sequence(h: &Poly) -> Vec<Poly> {
    let mut seq = vec![h.clone(), h.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_changes(seq: &[Poly], x: &Rational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| {
            let v = p.eval(x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|s| *s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Disjoint open intervals with non-root rational endpoints, each holding
/// exactly one real root of the square-free polynomial `h`.
fn isolate_real_roots(h: &Poly) -> Vec<(Rational, Rational)> {
    if h.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(h);
    let lead = h.leading();
    let bound = h.coeffs().iter().map(|c| (c / &lead).abs()).fold(Rational::zero(), |a, b| a + b) + Rational::one();
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        let count = sign_changes(&seq, &a) - sign_changes(&seq, &b);
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push((a, b));
            continue;
        }
        let two = Rational::from_integer(2.into());
        let mut mid = (&a + &b) / &two;
        let mut k = 3;
        while h.eval(&mid).is_zero() {
            mid = &a + (&b - &a) / Rational::from_integer(k.into());
            k += 1;
        }
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    out.sort();
    out
}

fn root_in(h: &Poly, a: &Rational, b: &Rational) -> bool {
    if h.degree().unwrap_or(0) == 0 {
        return false;
    }
    let seq = sturm_sequence(h);
    sign_changes(&seq, a) > sign_changes(&seq, b)
}

fn square_free(p: &Poly) -> Poly {
    let g = p.gcd(&p.derivative());
    if g.degree().unwrap_or(0) == 0 {
        p.monic()
    } else {
        p.div_rem(&g).0.monic()
    }
}

/// Exact real test by sign evaluation at every root of the constraint
/// polynomials and at one point in each complementary cell.
fn solvable_real(constraints: &[Constraint]) -> bool {
    let sign = |x: &BigInt| x.signum();
    // the point (1 : 0)
    let at_infinity = constraints.iter().all(|c| sign(&c.multiplier) * sign(c.form.coeffs.last().unwrap()) >= BigInt::zero());
    if at_infinity {
        return true;
    }
    let polys: Vec<(BigInt, Poly)> = constraints
        .iter()
        .map(|c| (c.multiplier.clone(), to_poly(&c.form.chart_x())))
        .collect();
    let nonconstant: Vec<Poly> = polys.iter().filter(|(_, p)| p.degree().unwrap_or(0) > 0).map(|(_, p)| square_free(p)).collect();
    let h = nonconstant.iter().fold(Poly::constant(Rational::one()), |acc, p| &acc * p);
    let h = if h.degree().unwrap_or(0) > 0 { square_free(&h) } else { h };
    let intervals = isolate_real_roots(&h);
    let ok_value = |m: &BigInt, v: &Rational| !(Rational::from_integer(m.clone()) * v).is_negative();

    let mut samples: Vec<Rational> = vec![Rational::zero()];
    for (a, b) in &intervals {
        samples.push(a.clone());
        samples.push(b.clone());
    }
    if samples.iter().any(|x| polys.iter().all(|(m, p)| ok_value(m, &p.eval(x)))) {
        return true;
    }
    // at a root: zero for polynomials vanishing there, otherwise the sign at
    // the interval endpoint
    intervals.iter().any(|(a, b)| {
        polys.iter().all(|(m, p)| {
            let vanishes = p.degree().unwrap_or(0) > 0 && root_in(&square_free(p), a, b);
            vanishes || ok_value(m, &p.eval(a))
        })
    })
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre_u64(a: &BigInt, p: u64) -> i8 {
    let r = mod_u64(a, p);
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Exhaustive oracle: every primitive `(X, Y)` modulo `p^k` whose value has
/// valuation small enough that the square class is fixed on all lifts.
/// Returns `Some(true)` when such a pair gives squares for every
/// constraint, `Some(false)` when every pair is determined and fails, and
/// `None` otherwise.
pub fn brute_force_padic(constraints: &[Constraint], p: u64, k: u32) -> Option<bool> {
    let modulus = p.pow(k);
    let margin = if p == 2 { 3 } else { 1 };
    let mut undetermined = false;
    for x in 0..modulus {
        for y in 0..modulus {
            if x % p == 0 && y % p == 0 {
                continue;
            }
            let (bx, by) = (BigInt::from(x), BigInt::from(y));
            let mut all_square = true;
            let mut determined = true;
            for c in constraints {
                let v = c.form.eval(&bx, &by);
                if v.is_zero() || valuation(&v, p) + margin > k {
                    determined = false;
                    break;
                }
                if !is_padic_square(&(&c.multiplier * &v), p) {
                    all_square = false;
                }
            }
            if !determined {
                undetermined = true;
                continue;
            }
            if all_square {
                return Some(true);
            }
        }
    }
    (!undetermined).then_some(false)
}

/// Searches `(X : Y)` with `|X|, Y ≤ bound` for a rational point, i.e.
/// `m_i F_i(X, Y)` all rational squares.
pub fn brute_force_rational(constraints: &[Constraint], bound: i64) -> Option<(BigInt, BigInt)> {
    for y in 0..=bound {
        for x in -bound..=bound {
            if (x == 0 && y == 0) || x.gcd(&y) != 1 || (y == 0 && x != 1) {
                continue;
            }
            let (bx, by) = (BigInt::from(x), BigInt::from(y));
            if constraints.iter().all(|c| {
                let v = &c.multiplier * c.form.eval(&bx, &by);
                !v.is_negative() && crate::arith::exact_sqrt(&v).is_some()
            }) {
                return Some((bx, by));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::big;

    fn single(m: i64, coeffs: &[i64]) -> Vec<Constraint> {
        vec![Constraint::new(big(m), BinaryForm::from_ints(coeffs))]
    }

    #[test]
    fn squares_in_qp() {
        assert!(is_padic_square(&big(17), 2));
        assert!(!is_padic_square(&big(3), 2));
        assert!(is_padic_square(&big(4 * 9), 2));
        assert!(is_padic_square(&big(-1), 5));
        assert!(!is_padic_square(&big(-1), 7));
        assert!(!is_padic_square(&big(7), 7));
        assert!(is_padic_square(&big(0), 7));
    }

    #[test]
    fn determinant() {
        let m = vec![vec![big(2), big(0), big(1)], vec![big(1), big(3), big(2)], vec![big(1), big(1), big(2)]];
        assert_eq!(bareiss_determinant(m), big(6));
    }

    #[test]
    fn norm_form_x2_minus_2y2() {
        // X² - 2Y² represents squares everywhere (X = 1, Y = 0)
        for p in [2, 3, 5, 7] {
            assert!(solvable_at(&single(1, &[-2, 0, 1]), Place::Prime(p), 2).unwrap().solvable);
        }
        // 3(X² + Y²) is never a square in Q_3: X² + Y² has even valuation
        // and the factor 3 makes the valuation odd
        let r = solvable_at(&single(3, &[1, 0, 1]), Place::Prime(3), 2).unwrap();
        assert!(!r.solvable);
    }

    #[test]
    fn real_place() {
        assert!(!solvable_at(&single(-1, &[1, 0, 1]), Place::Real, 2).unwrap().solvable);
        assert!(solvable_at(&single(1, &[-1, 0, 1]), Place::Real, 2).unwrap().solvable);
        // -(X - Y)² is a square only on X = Y
        assert!(solvable_at(&single(-1, &[1, -2, 1]), Place::Real, 2).unwrap().solvable);
        // X² - 2Y² ≥ 0 and -(X² - 3Y²) ≥ 0 overlap on 2 ≤ (X/Y)² ≤ 3
        let sys = vec![
            Constraint::new(big(1), BinaryForm::from_ints(&[-2, 0, 1])),
            Constraint::new(big(-1), BinaryForm::from_ints(&[-3, 0, 1])),
        ];
        assert!(solvable_at(&sys, Place::Real, 2).unwrap().solvable);
        let sys = vec![
            Constraint::new(big(1), BinaryForm::from_ints(&[-3, 0, 1])),
            Constraint::new(big(-1), BinaryForm::from_ints(&[-2, 0, 1])),
        ];
        assert!(!solvable_at(&sys, Place::Real, 2).unwrap().solvable);
    }

    #[test]
    fn oracle_agrees_on_small_forms() {
        let forms: [&[i64]; 5] = [&[1, 0, 1], &[3, 1, 2], &[-5, 0, 0, 0, 1], &[2, 0, 3], &[7, 1, 0, 1, 1]];
        for p in [2u64, 3, 5, 7] {
            for f in forms {
                for m in [1i64, -1, 2, 3, 5, 7] {
                    let c = single(m, f);
                    let solver = solvable_at(&c, Place::Prime(p), 2).unwrap().solvable;
                    let k = match p {
                        2 => 6,
                        3 => 4,
                        5 => 3,
                        _ => 2,
                    };
                    if let Some(oracle) = brute_force_padic(&c, p, k) {
                        assert_eq!(solver, oracle, "p={p} m={m} f={f:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre_u64(&big(5), 113), -1);
        assert_eq!(legendre_u64(&big(11), 443), -1);
        assert_eq!(legendre_u64(&big(1), 7), 1);
        assert_eq!(legendre_u64(&big(14), 7), 0);
    }
}
