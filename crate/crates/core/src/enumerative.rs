//! Betti numbers of `S^[n]` from the product formula, the Verbitsky
//! subalgebra counts, Weyl dimensions for `SO(2r+1)` and `SO(2r)`, the
//! interleaving branching rule, and dimension audits of the cohomology
//! decompositions.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{qi, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerativeError {
    #[error("n = {0} is outside 1..=6")]
    OutOfRange(usize),
    #[error("λ = {0:?} is not a dominant integral weight of rank {1}")]
    InvalidWeight(Vec<i64>, usize),
    #[error("Weyl product {0} is not an integer")]
    NonIntegral(Rational),
    #[error("no decomposition table for n = {0}")]
    NoTable(usize),
}

pub const MAX_N: usize = 6;

/// Power series in `t` truncated at `t^{n_max}`, coefficients polynomials
/// in `z` of degree `≤ 4n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    pub n_max: usize,
    /// `coeffs[n][d]` is the coefficient of `t^n z^d`.
    pub coeffs: Vec<Vec<BigInt>>,
}

impl BiSeries {
    pub fn one(n_max: usize) -> Self {
        let mut coeffs: Vec<Vec<BigInt>> = (0..=n_max).map(|n| vec![BigInt::zero(); 4 * n + 1]).collect();
        coeffs[0][0] = BigInt::one();
        BiSeries { n_max, coeffs }
    }

    /// Multiplies by `(1 − z^a t^m)^{-1}`.
    pub fn divide_by_one_minus(&mut self, a: usize, m: usize) {
        for n in m..=self.n_max {
            for d in a..=4 * n {
                let src = d - a;
                if src < self.coeffs[n - m].len() {
                    let v = self.coeffs[n - m][src].clone();
                    self.coeffs[n][d] += v;
                }
            }
        }
    }

    pub fn coefficient(&self, n: usize) -> &[BigInt] {
        &self.coeffs[n]
    }
}

/// `Π_m (1 − z^{2m−2}t^m)^{-1} (1 − z^{2m}t^m)^{-22} (1 − z^{2m+2}t^m)^{-1}`.
pub fn goettsche_series(n_max: usize) -> BiSeries {
    let mut s = BiSeries::one(n_max);
    for m in 1..=n_max {
        s.divide_by_one_minus(2 * m - 2, m);
        for _ in 0..22 {
            s.divide_by_one_minus(2 * m, m);
        }
        s.divide_by_one_minus(2 * m + 2, m);
    }
    s
}

/// Even Betti numbers `β_0, β_2, …, β_{4n}` of `S^[n]`.
pub fn betti_numbers(n: usize) -> Result<Vec<BigInt>, EnumerativeError> {
    if n == 0 || n > MAX_N {
        return Err(EnumerativeError::OutOfRange(n));
    }
    let s = goettsche_series(n);
    let p = s.coefficient(n);
    if p.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
        unreachable!("odd Betti numbers vanish");
    }
    Ok(p.iter().step_by(2).cloned().collect())
}

/// `q(S^[n], z) = Σ_{j ≤ n} β_{2j} z^j`; the rest follows by duality.
pub fn goettsche_q(n: usize) -> Result<Vec<BigInt>, EnumerativeError> {
    let b = betti_numbers(n)?;
    Ok(b[..=n].to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerbitskyCounts {
    /// `dim Sym^k H² = C(22 + k, k)` for `k = 0..=3`.
    pub sym_dims: Vec<(u32, BigInt)>,
    /// `(k, n, dim H^{2k}(S^[n]) − C(22 + k, k))`.
    pub cokernels: Vec<(u32, usize, BigInt)>,
}

pub fn verbitsky_counts() -> Result<VerbitskyCounts, EnumerativeError> {
    let sym = |k: u32| binomial(BigInt::from(22 + k), BigInt::from(k));
    let sym_dims = (0..=3).map(|k| (k, sym(k))).collect();
    let mut cokernels = Vec::new();
    for (k, n) in [(2u32, 2usize), (2, 3), (3, 3)] {
        let b = betti_numbers(n)?;
        cokernels.push((k, n, &b[k as usize] - sym(k)));
    }
    Ok(VerbitskyCounts { sym_dims, cokernels })
}

/// Highest weight `λ₁ ≥ … ≥ |λ_r|`, the last entry signed for `SO(2r)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HighestWeight(pub Vec<i64>);

impl HighestWeight {
    /// `λ` padded with zeros to rank `r`.
    pub fn padded(parts: &[i64], r: usize) -> Self {
        let mut v = parts.to_vec();
        v.resize(r, 0);
        HighestWeight(v)
    }

    fn validate(&self, r: usize, signed_last: bool) -> Result<(), EnumerativeError> {
        let l = &self.0;
        let err = || EnumerativeError::InvalidWeight(l.clone(), r);
        if l.len() != r || r == 0 {
            return Err(err());
        }
        for i in 0..r - 1 {
            let next = if i + 1 == r - 1 && signed_last { l[i + 1].abs() } else { l[i + 1] };
            if l[i] < next {
                return Err(err());
            }
        }
        if !signed_last && l[r - 1] < 0 {
            return Err(err());
        }
        Ok(())
    }
}

fn integral(x: Rational) -> Result<BigInt, EnumerativeError> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(EnumerativeError::NonIntegral(x))
    }
}

/// Weyl dimension for `SO(2r + 1)`, `ℓ_i = λ_i + r − i + 1/2`.
pub fn weyl_dim_odd(lambda: &HighestWeight, r: usize) -> Result<BigInt, EnumerativeError> {
    lambda.validate(r, false)?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let ell: Vec<Rational> = (1..=r).map(|i| qi(lambda.0[i - 1] + (r - i) as i64) + &half).collect();
    let mut d = Rational::one();
    for i in 1..=r {
        for j in i..=r {
            if i < j {
                d *= (&ell[i - 1] - &ell[j - 1]) / qi((j - i) as i64);
            }
            d *= (&ell[i - 1] + &ell[j - 1]) / qi((2 * r + 1 - i - j) as i64);
        }
    }
    integral(d)
}

/// Weyl dimension for `SO(2r)`, `ℓ_i = λ_i + r − i`.
pub fn weyl_dim_even(lambda: &HighestWeight, r: usize) -> Result<BigInt, EnumerativeError> {
    lambda.validate(r, true)?;
    let ell: Vec<Rational> = (1..=r).map(|i| qi(lambda.0[i - 1] + (r - i) as i64)).collect();
    let mut d = Rational::one();
    for i in 1..=r {
        for j in i + 1..=r {
            let num = &ell[i - 1] * &ell[i - 1] - &ell[j - 1] * &ell[j - 1];
            d *= num / qi(((j - i) * (2 * r - i - j)) as i64);
        }
    }
    integral(d)
}

/// All `λ̄` with `λ₁ ≥ λ̄₁ ≥ λ₂ ≥ … ≥ λ_r ≥ |λ̄_r|`.
pub fn branch_odd_to_even(lambda: &HighestWeight, r: usize) -> Result<Vec<HighestWeight>, EnumerativeError> {
    lambda.validate(r, false)?;
    let l = &lambda.0;
    let mut out = vec![Vec::new()];
    for i in 0..r {
        let hi = l[i];
        let lo = if i + 1 < r { l[i + 1] } else { -l[r - 1] };
        let mut next = Vec::new();
        for prefix in &out {
            for v in (lo..=hi).rev() {
                let mut p: Vec<i64> = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    Ok(out.into_iter().map(HighestWeight).collect())
}

/// Dominant `SO(2r + 1)` weights of size `|λ| ≤ k_max`.
pub fn weights_up_to(k_max: i64, r: usize) -> Vec<HighestWeight> {
    fn partitions(rest: i64, max_part: i64, len: usize, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(acc.clone());
        if acc.len() == len {
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            acc.push(part);
            partitions(rest - part, part, len, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    partitions(k_max, k_max, r, &mut Vec::new(), &mut out);
    out.into_iter().map(|p| HighestWeight::padded(&p, r)).collect()
}

/// Rank of `SO(H², q)` with `dim H² = 23`.
pub const RANK: usize = 11;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeAudit {
    /// Cohomological degree `2k`.
    pub degree: usize,
    pub summands: Vec<(HighestWeight, BigInt)>,
    pub total: BigInt,
    pub betti: BigInt,
    pub trivial_summands: usize,
}

impl DegreeAudit {
    pub fn holds(&self) -> bool {
        self.total == self.betti
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionAudit {
    pub n: usize,
    pub degrees: Vec<DegreeAudit>,
}

impl DecompositionAudit {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(DegreeAudit::holds)
    }

    pub fn degree(&self, d: usize) -> Option<&DegreeAudit> {
        self.degrees.iter().find(|a| a.degree == d)
    }
}

/// `SO(23)` summands of `H^{2k}(S^[n])` for `k ≤ n`.
fn decomposition_table(n: usize) -> Option<Vec<Vec<&'static [i64]>>> {
    match n {
        2 => Some(vec![vec![&[]], vec![&[1]], vec![&[2], &[]]]),
        3 => Some(vec![vec![&[]], vec![&[1]], vec![&[2], &[1], &[]], vec![&[3], &[1, 1], &[1], &[]]]),
        _ => None,
    }
}

pub fn decomposition_audit(n: usize) -> Result<DecompositionAudit, EnumerativeError> {
    let table = decomposition_table(n).ok_or(EnumerativeError::NoTable(n))?;
    let betti = betti_numbers(n)?;
    let mut degrees = Vec::new();
    for (k, parts) in table.iter().enumerate() {
        let mut summands = Vec::new();
        for p in parts {
            let w = HighestWeight::padded(p, RANK);
            let d = weyl_dim_odd(&w, RANK)?;
            summands.push((w, d));
        }
        let total = summands.iter().map(|(_, d)| d.clone()).sum();
        let trivial_summands = parts.iter().filter(|p| p.is_empty()).count();
        degrees.push(DegreeAudit { degree: 2 * k, summands, total, betti: betti[k].clone(), trivial_summands });
    }
    Ok(DecompositionAudit { n, degrees })
}

/// `dim V` as `u64`, for display.
pub fn small(d: &BigInt) -> u64 {
    d.to_u64().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::big;

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| big(x)).collect()
    }

    #[test]
    fn goettsche_small_n() {
        assert_eq!(goettsche_q(1).unwrap(), bigs(&[1, 22]));
        assert_eq!(goettsche_q(2).unwrap(), bigs(&[1, 23, 276]));
        assert_eq!(goettsche_q(3).unwrap(), bigs(&[1, 23, 299, 2554]));
        assert!(goettsche_q(7).is_err());
        // K3 itself: 1, 22, 1
        assert_eq!(betti_numbers(1).unwrap(), bigs(&[1, 22, 1]));
    }

    #[test]
    fn weyl_dims() {
        let r = RANK;
        let odd = |p: &[i64]| small(&weyl_dim_odd(&HighestWeight::padded(p, r), r).unwrap());
        let even = |p: &[i64]| small(&weyl_dim_even(&HighestWeight::padded(p, r), r).unwrap());
        assert_eq!([odd(&[]), odd(&[1]), odd(&[2]), odd(&[1, 1]), odd(&[3])], [1, 23, 275, 253, 2277]);
        assert_eq!([even(&[]), even(&[1]), even(&[2]), even(&[3]), even(&[1, 1])], [1, 22, 252, 2002, 231]);
    }

    #[test]
    fn branching() {
        let r = RANK;
        let w = HighestWeight::padded(&[2], r);
        let parts = branch_odd_to_even(&w, r).unwrap();
        assert_eq!(parts.len(), 3);
        for w in weights_up_to(3, r) {
            let total: BigInt = branch_odd_to_even(&w, r).unwrap().iter().map(|b| weyl_dim_even(b, r).unwrap()).sum();
            assert_eq!(total, weyl_dim_odd(&w, r).unwrap(), "{w:?}");
        }
    }

    #[test]
    fn audits() {
        let a = decomposition_audit(3).unwrap();
        assert!(a.holds());
        assert_eq!(a.degree(4).unwrap().betti, big(299));
        assert_eq!(a.degree(6).unwrap().betti, big(2554));
        assert_eq!(a.degree(6).unwrap().trivial_summands, 1);
        let a = decomposition_audit(2).unwrap();
        assert!(a.holds());
        assert_eq!(a.degree(4).unwrap().total, big(276));
        let v = verbitsky_counts().unwrap();
        assert_eq!(v.cokernels.iter().map(|c| c.2.clone()).collect::<Vec<_>>(), bigs(&[0, 23, 254]));
    }
}
