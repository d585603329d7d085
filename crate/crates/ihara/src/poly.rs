//! Exact univariate polynomial arithmetic in the variable `u`.
//!
//! Two coefficient flavors are provided: [`IntPoly`] over arbitrary-precision
//! integers, which carries every zeta reciprocal, and [`ComplexPoly`] over
//! double-precision complex pairs, which carries L-function intermediates
//! whose arithmetic passes through roots of unity.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Complex coefficients with both parts below this threshold are negligible.
pub const EPS_ZERO: f64 = 1e-9;
/// Relative tolerance for cross-checking floating-point results against exact ones.
pub const EPS_DET: f64 = 1e-6;
/// Default tolerance when rounding a complex polynomial to an integer one.
pub const ROUND_TOL: f64 = 1e-6;

/// Dense polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `u^i`. The zero polynomial is the empty
/// vector; otherwise the trailing coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::new(vec![BigInt::from(c)])
    }

    /// The polynomial `c * u^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    /// Convenience constructor from small coefficients, ascending in degree.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: usize) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

/// Renders in the text form `c0 + c1*u + c2*u^2 + ...`, eliding zero terms
/// and unit coefficients, e.g. `1 - 2*u + u^2`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                write!(f, "u")?;
                if i > 1 {
                    write!(f, "^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

/// Parses the text form emitted by [`IntPoly`]'s `Display`, e.g. `1 - 2*u + u^2`.
pub fn parse_int_poly(s: &str) -> Result<IntPoly> {
    let bad = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty input"));
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let bytes = compact.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = 1i32;
        while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
        }
        let digits_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let mag: Option<BigInt> = if pos > digits_start {
            Some(
                compact[digits_start..pos]
                    .parse()
                    .map_err(|_| bad("bad integer"))?,
            )
        } else {
            None
        };
        if pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
            if pos >= bytes.len() || bytes[pos] != b'u' {
                return Err(bad("expected u after *"));
            }
        }
        let power = if pos < bytes.len() && bytes[pos] == b'u' {
            pos += 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let exp_start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == exp_start {
                    return Err(bad("missing exponent"));
                }
                compact[exp_start..pos]
                    .parse::<usize>()
                    .map_err(|_| bad("bad exponent"))?
            } else {
                1
            }
        } else {
            0
        };
        let mag = match mag {
            Some(m) => m,
            None if power > 0 => BigInt::one(),
            None => return Err(bad("expected term")),
        };
        if power > 10_000 {
            return Err(bad("exponent too large"));
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigInt::zero());
        }
        coeffs[power] += BigInt::from(sign) * mag;
    }
    Ok(IntPoly::new(coeffs))
}

/// Exact division: returns `q` with `b = a * q` over the integers, or `None`
/// when no such integer-coefficient quotient exists.
pub fn divides(a: &IntPoly, b: &IntPoly) -> Result<Option<IntPoly>> {
    if a.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    if b.is_zero() {
        return Ok(Some(IntPoly::zero()));
    }
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();
    if db < da {
        return Ok(None);
    }
    let lead_a = a.coeff(da);
    let mut rem = b.coeffs.clone();
    let mut quot = vec![BigInt::zero(); db - da + 1];
    for k in (0..=db - da).rev() {
        let lead = rem[k + da].clone();
        if lead.is_zero() {
            continue;
        }
        let q = &lead / &lead_a;
        if &q * &lead_a != lead {
            return Ok(None);
        }
        for j in 0..=da {
            let t = &q * a.coeff(j);
            rem[k + j] -= t;
        }
        quot[k] = q;
    }
    if rem.iter().all(Zero::is_zero) {
        Ok(Some(IntPoly::new(quot)))
    } else {
        Ok(None)
    }
}

/// Exact division that must succeed; panics when it does not.
pub(crate) fn div_exact(b: &IntPoly, a: &IntPoly) -> IntPoly {
    divides(a, b)
        .expect("division by zero polynomial")
        .expect("inexact polynomial division")
}

/// Coefficients of `1/p` through `u^order`. Requires a nonzero constant term;
/// the result is integral whenever the constant term is `±1`.
pub fn series_reciprocal(p: &IntPoly, order: usize) -> Result<Vec<BigRational>> {
    let c0 = p.coeff(0);
    if c0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let inv0 = BigRational::new(BigInt::one(), c0);
    let mut out = Vec::with_capacity(order + 1);
    out.push(inv0.clone());
    for n in 1..=order {
        let mut s = BigRational::zero();
        for i in 1..=n.min(p.coeffs.len().saturating_sub(1)) {
            s += BigRational::from_integer(p.coeff(i)) * &out[n - i];
        }
        out.push(-s * &inv0);
    }
    Ok(out)
}

/// Truncation of the product over a multiset of prime lengths,
/// `prod (1 - u^len)^-1`, through `u^order`.
pub fn euler_product_truncation(lengths: &[usize], order: usize) -> Vec<BigRational> {
    let mut counts: Vec<(usize, BigInt)> = Vec::new();
    for &len in lengths {
        assert!(len >= 1, "prime length must be positive");
        match counts.iter_mut().find(|(l, _)| *l == len) {
            Some((_, c)) => *c += 1,
            None => counts.push((len, BigInt::one())),
        }
    }
    euler_product_from_counts(&counts, order)
}

/// Like [`euler_product_truncation`] but with each length given a
/// multiplicity, so `(1 - u^len)^-count` enters the product per entry.
pub fn euler_product_from_counts(counts: &[(usize, BigInt)], order: usize) -> Vec<BigRational> {
    let mut acc = vec![BigInt::zero(); order + 1];
    acc[0] = BigInt::one();
    for (len, count) in counts {
        if count.is_zero() {
            continue;
        }
        assert!(*len >= 1, "prime length must be positive");
        assert!(!count.is_negative(), "prime multiplicity must be nonnegative");
        // (1 - x)^-c = sum_j binom(c - 1 + j, j) x^j with x = u^len.
        let mut factor = vec![BigInt::one()];
        let mut j = 0usize;
        while (j + 1) * len <= order {
            let next = &factor[j] * (count + BigInt::from(j)) / BigInt::from(j + 1);
            factor.push(next);
            j += 1;
        }
        let mut out = vec![BigInt::zero(); order + 1];
        for (j, f) in factor.iter().enumerate() {
            let off = j * len;
            for i in off..=order {
                let t = f * &acc[i - off];
                out[i] += t;
            }
        }
        acc = out;
    }
    acc.into_iter().map(BigRational::from_integer).collect()
}

/// Distance of a coefficient from the integer lattice on the real axis,
/// relative to the coefficient's magnitude (double precision is accurate
/// relatively, so large exact coefficients carry proportionally large
/// float noise).
fn lattice_distance(c: &Complex64) -> f64 {
    let n = c.re.round();
    let scale = n.abs().max(1.0);
    if n.abs() >= 9e15 {
        return f64::INFINITY;
    }
    (c.re - n).abs().max(c.im.abs()) / scale
}

/// Rounds to an integer polynomial when every coefficient lies within `tol`
/// (relative to its magnitude) of an integer on the real axis; otherwise
/// reports the worst offender.
pub fn round_to_int_poly(p: &ComplexPoly, tol: f64) -> Result<IntPoly> {
    assert!(tol > 0.0);
    let mut worst: Option<(usize, Complex64, f64)> = None;
    let mut coeffs = Vec::with_capacity(p.coeffs.len());
    for (i, c) in p.coeffs.iter().enumerate() {
        let distance = lattice_distance(c);
        if worst.is_none_or(|(_, _, d)| distance > d) {
            worst = Some((i, *c, distance));
        }
        coeffs.push(BigInt::from(c.re.round() as i64));
    }
    match worst {
        Some((index, c, distance)) if distance > tol => Err(Error::RoundingFailed {
            index,
            re: c.re,
            im: c.im,
            distance,
            tol,
        }),
        _ => Ok(IntPoly::new(coeffs)),
    }
}

/// Largest relative distance of any coefficient from the integer lattice;
/// used for reporting residuals even when rounding succeeds.
pub fn rounding_residual(p: &ComplexPoly) -> f64 {
    p.coeffs.iter().map(lattice_distance).fold(0.0, f64::max)
}

/// Dense polynomial with complex double-precision coefficients.
///
/// Trailing coefficients negligible at [`EPS_ZERO`] are stripped on
/// construction.
#[derive(Clone, Debug, Default)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

fn negligible(c: &Complex64) -> bool {
    c.re.abs() < EPS_ZERO && c.im.abs() < EPS_ZERO
}

impl ComplexPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(negligible) {
            coeffs.pop();
        }
        ComplexPoly { coeffs }
    }

    pub fn zero() -> Self {
        ComplexPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ComplexPoly::new(vec![Complex64::new(1.0, 0.0)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Complex64 {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn add(&self, other: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        ComplexPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        ComplexPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &ComplexPoly) -> ComplexPoly {
        if self.is_zero() || other.is_zero() {
            return ComplexPoly::zero();
        }
        let mut out = vec![Complex64::default(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly::new(out)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::default();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Largest coefficient modulus.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Divides by an integer polynomial; the division must be exact up to
    /// floating-point noise of relative size `tol`.
    pub fn div_exact_by_int(&self, divisor: &IntPoly, tol: f64) -> Result<ComplexPoly> {
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(ComplexPoly::zero());
        }
        let dd = divisor.degree().unwrap();
        let div: Vec<f64> = (0..=dd)
            .map(|i| divisor.coeff(i).to_f64().expect("divisor coefficient out of f64 range"))
            .collect();
        let scale = self.max_norm().max(1.0);
        let n = self.coeffs.len();
        if n <= dd {
            return Err(Error::InexactDivision { residual: scale });
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Complex64::default(); n - dd];
        for k in (0..n - dd).rev() {
            let q = rem[k + dd] / div[dd];
            quot[k] = q;
            for j in 0..=dd {
                rem[k + j] -= q * div[j];
            }
        }
        let residual = rem.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if residual > tol * scale {
            return Err(Error::InexactDivision { residual });
        }
        Ok(ComplexPoly::new(quot))
    }

    /// Coefficientwise comparison with absolute tolerance scaled by the
    /// larger polynomial's magnitude.
    pub fn approx_eq(&self, other: &ComplexPoly, tol: f64) -> bool {
        let scale = self.max_norm().max(other.max_norm()).max(1.0);
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|i| (self.coeff(i) - other.coeff(i)).norm() <= tol * scale)
    }
}

impl From<&IntPoly> for ComplexPoly {
    fn from(p: &IntPoly) -> Self {
        ComplexPoly::new(
            p.coeffs()
                .iter()
                .map(|c| {
                    Complex64::new(c.to_f64().expect("coefficient out of f64 range"), 0.0)
                })
                .collect(),
        )
    }
}

impl fmt::Display for ComplexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            if i == 1 {
                write!(f, "*u")?;
            } else if i > 1 {
                write!(f, "*u^{}", i)?;
            }
        }
        Ok(())
    }
}

/// Truncated product of two complex power series.
pub(crate) fn cseries_mul(a: &[Complex64], b: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); order + 1];
    for i in 0..a.len().min(order + 1) {
        for j in 0..b.len().min(order + 1 - i) {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// Truncated reciprocal of a complex power series with nonzero constant term.
pub(crate) fn cseries_reciprocal(p: &[Complex64], order: usize) -> Result<Vec<Complex64>> {
    let c0 = p.first().copied().unwrap_or_default();
    if c0.norm() < EPS_ZERO {
        return Err(Error::ZeroConstantTerm);
    }
    let inv0 = Complex64::new(1.0, 0.0) / c0;
    let mut out = vec![Complex64::default(); order + 1];
    out[0] = inv0;
    for n in 1..=order {
        let mut s = Complex64::default();
        for i in 1..=n.min(p.len() - 1) {
            s += p[i] * out[n - i];
        }
        out[n] = -s * inv0;
    }
    Ok(out)
}
