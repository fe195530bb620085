//! Exact integer polynomials in `q`, q-analogues, hook polynomials and the
//! cyclic sieving decision procedure.
//!
//! Every verdict is computed in `Z[q]`: a polynomial `f` takes the value `c`
//! at a primitive `d`-th root of unity iff the cyclotomic polynomial `Φ_d`
//! divides `f - c`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{hook_lengths, DescentConvention, IncreasingTableau, Partition};
use crate::enumeration::OrbitDecomposition;
use crate::error::{Error, Result};

/// Dense polynomial with arbitrary-precision integer coefficients; index is
/// the exponent of `q`. Trailing zeros are always trimmed, so the zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c · q^e`.
    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Long division by a divisor whose leading coefficient is `±1`.
    pub fn div_rem(&self, divisor: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        let lead = divisor
            .coeffs
            .last()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        if !lead.abs().is_one() {
            return Err(Error::Domain(format!(
                "divisor leading coefficient {lead} is not a unit"
            )));
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((IntPolynomial::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * lead;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        Ok((IntPolynomial::new(quot), IntPolynomial::new(rem)))
    }

    /// Division that is known to be exact; a remainder is an internal error.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Result<IntPolynomial> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!("({self}) / ({divisor}) leaves remainder {r}")));
        }
        Ok(q)
    }

    pub fn is_divisible_by(&self, divisor: &IntPolynomial) -> Result<bool> {
        Ok(self.div_rem(divisor)?.1.is_zero())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<_, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// `[d]_q = 1 + q + … + q^{d-1}`; `[0]_q = 0`.
pub fn q_int(d: usize) -> IntPolynomial {
    IntPolynomial::new(vec![BigInt::one(); d])
}

/// `[n]_q! = [n]_q [n-1]_q ⋯ [1]_q`.
pub fn q_factorial(n: usize) -> IntPolynomial {
    (1..=n).fold(IntPolynomial::one(), |acc, d| &acc * &q_int(d))
}

/// Gaussian binomial `[n choose k]_q`.
pub fn q_binomial(n: usize, k: usize) -> Result<IntPolynomial> {
    if k > n {
        return Err(Error::Domain(format!("q-binomial needs 0 <= k <= n, got n={n}, k={k}")));
    }
    // [n]![k]!^{-1}[n-k]!^{-1} as the product of [n-k+i]/[i], dividing as we go:
    // every partial product is itself a q-binomial.
    let mut acc = IntPolynomial::one();
    for i in 1..=k {
        acc = (&acc * &q_int(n - k + i)).div_exact(&q_int(i))?;
    }
    Ok(acc)
}

/// `b(λ) = Σ (i - 1) λ_i`.
pub fn b_statistic(shape: &Partition) -> u64 {
    shape
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| i as u64 * p as u64)
        .sum()
}

/// `f^λ(q) = [N]_q! / Π_c [h_c]_q`, dividing out one hook at a time.
///
/// Each partial quotient is a polynomial: `Φ_d` occurs `⌊N/d⌋` times in the
/// numerator and at most that many times in any sub-product of hooks.
pub fn q_hook_polynomial(shape: &Partition) -> Result<IntPolynomial> {
    let mut acc = q_factorial(shape.size() as usize);
    let mut hooks: Vec<u32> = hook_lengths(shape).into_iter().flatten().filter(|&h| h > 1).collect();
    hooks.sort_unstable_by(|a, b| b.cmp(a));
    for h in hooks {
        acc = acc.div_exact(&q_int(h as usize))?;
    }
    Ok(acc)
}

/// `Σ_T q^{maj(T)}`.
pub fn maj_generating_function<'a, I>(tableaux: I, conv: DescentConvention) -> IntPolynomial
where
    I: IntoIterator<Item = &'a IncreasingTableau>,
{
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for t in tableaux {
        *counts.entry(t.major_index(conv) as usize).or_default() += 1;
    }
    let Some((&top, _)) = counts.last_key_value() else {
        return IntPolynomial::zero();
    };
    let mut coeffs = vec![BigInt::zero(); top + 1];
    for (e, c) in counts {
        coeffs[e] = BigInt::from(c);
    }
    IntPolynomial::new(coeffs)
}

fn check_lengths(lengths: &[usize], order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::Domain("group order must be positive".into()));
    }
    match lengths.iter().find(|&&l| l == 0 || !order.is_multiple_of(l)) {
        Some(&length) => Err(Error::Order { length, order }),
        None => Ok(()),
    }
}

/// `|Fix(c^j)|`: an orbit of length `ℓ` contributes all `ℓ` points iff `ℓ | j`
/// (every length divides 0).
pub fn fixed_points(lengths: &[usize], j: usize) -> usize {
    lengths.iter().filter(|&&l| j.is_multiple_of(l)).sum()
}

/// The fixed-point sequence as a polynomial: the coefficient of `q^j` is
/// `|Fix(c^j)|` for `0 <= j < n`.
pub fn orbit_polynomial(lengths: &[usize], order: usize) -> Result<IntPolynomial> {
    check_lengths(lengths, order)?;
    Ok(IntPolynomial::new(
        (0..order).map(|j| BigInt::from(fixed_points(lengths, j))).collect(),
    ))
}

/// The `d`-th cyclotomic polynomial.
pub fn cyclotomic(d: usize) -> Result<IntPolynomial> {
    if d == 0 {
        return Err(Error::Domain("cyclotomic index must be positive".into()));
    }
    let mut table: BTreeMap<usize, IntPolynomial> = BTreeMap::new();
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        let mut p = &IntPolynomial::monomial(BigInt::one(), e) - &IntPolynomial::one();
        for (_, phi) in table.iter().filter(|(f, _)| e % **f == 0) {
            p = p.div_exact(phi)?;
        }
        table.insert(e, p);
    }
    Ok(table.remove(&d).expect("d divides itself"))
}

/// One divisor-level check of the cyclic sieving criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorCheck {
    /// Order `d` of the root of unity `ζ_n^{n/d}`.
    pub divisor: usize,
    /// The group element `c^{n/d}` whose fixed points are compared.
    pub power: usize,
    pub fixed_points: usize,
    /// Whether `Φ_d` divides `f - fixed_points`.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CspVerdict {
    pub group_order: usize,
    pub holds: bool,
    pub checks: Vec<DivisorCheck>,
    /// `|Fix(c^j)|` for `j = 0..n`.
    pub fixed_point_counts: Vec<usize>,
}

impl CspVerdict {
    pub fn first_failure(&self) -> Option<&DivisorCheck> {
        self.checks.iter().find(|c| !c.holds)
    }
}

/// Decides whether `(X, C_n, f)` exhibits cyclic sieving, where `X` is
/// described by its orbit lengths under a generator of `C_n`.
pub fn csp_check_lengths(f: &IntPolynomial, lengths: &[usize], order: usize) -> Result<CspVerdict> {
    check_lengths(lengths, order)?;
    if !f.has_nonnegative_coeffs() {
        return Err(Error::Domain(format!(
            "sieving polynomial {f} has a negative coefficient"
        )));
    }
    let checks = (1..=order)
        .filter(|d| order.is_multiple_of(*d))
        .map(|d| {
            let power = order / d;
            let fixed = fixed_points(lengths, power);
            let diff = f - &IntPolynomial::constant(BigInt::from(fixed));
            let holds = diff.is_divisible_by(&cyclotomic(d)?)?;
            Ok(DivisorCheck {
                divisor: d,
                power,
                fixed_points: fixed,
                holds,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CspVerdict {
        group_order: order,
        holds: checks.iter().all(|c| c.holds),
        checks,
        fixed_point_counts: (0..order).map(|j| fixed_points(lengths, j)).collect(),
    })
}

pub fn csp_check<T>(f: &IntPolynomial, decomposition: &OrbitDecomposition<T>, order: usize) -> Result<CspVerdict> {
    csp_check_lengths(f, &decomposition.lengths(), order)
}

/// Both sides of the toothbrush identity
/// `f^{(2,2,2,1^{k-2})}(q) = [k+3 choose 3]_q - q^{k-1}[k+3]_q`.
pub fn miracle_sides(k: usize) -> Result<(IntPolynomial, IntPolynomial)> {
    if k < 2 {
        return Err(Error::Domain(format!("the toothbrush identity needs k >= 2, got {k}")));
    }
    let lhs = q_hook_polynomial(&Partition::toothbrush(k as u32)?)?;
    let rhs = &q_binomial(k + 3, 3)? - &q_int(k + 3).shift(k - 1);
    Ok((lhs, rhs))
}

pub fn miracle_identity(k: usize) -> Result<bool> {
    let (lhs, rhs) = miracle_sides(k)?;
    Ok(lhs == rhs)
}

/// `n!/(k!(n-k)!)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}
