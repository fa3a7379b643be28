//! Integer polynomials and the f → h → γ transforms.
//!
//! [`Poly`] is generic over an exact coefficient ring ([`Coefficient`]): the
//! crate root exposes `i64`, `i128` and arbitrary-precision aliases. All
//! arithmetic is checked; overflow panics rather than wrapping.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, ToPrimitive, Zero};
use thiserror::Error;

mod volodin;

pub use volodin::{gamma_via_volodin, VolodinError, VolodinSolver};

/// An exact ring of coefficients.
pub trait Coefficient:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Send
    + Sync
    + 'static
{
}

impl Coefficient for i64 {}
impl Coefficient for i128 {}
impl Coefficient for BigInt {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("degree {degree} exceeds the declared dimension parameter {d}")]
    DegreeTooHigh { degree: usize, d: usize },
    #[error("h-vector {0} is not symmetric")]
    NotSymmetric(String),
    #[error("cannot parse coefficient vector: {0}")]
    Parse(String),
}

fn add<C: Coefficient>(a: &C, b: &C) -> C {
    a.checked_add(b).expect("coefficient overflow")
}

fn sub<C: Coefficient>(a: &C, b: &C) -> C {
    a.checked_sub(b).expect("coefficient overflow")
}

fn mul<C: Coefficient>(a: &C, b: &C) -> C {
    a.checked_mul(b).expect("coefficient overflow")
}

/// Converts a count into a coefficient, panicking if it does not fit.
pub fn coeff_from_count<C: Coefficient>(count: u128) -> C {
    C::from_u128(count).expect("count does not fit the coefficient type")
}

/// A polynomial `c_0 + c_1 t + ..` stored densely. The stored length is the
/// declared length; equality compares trimmed forms.
#[derive(Clone)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Poly<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        Poly { coeffs }
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Poly::new(
            values
                .iter()
                .map(|&v| C::from_i64(v).expect("value does not fit"))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly::new(Vec::new())
    }

    pub fn one() -> Self {
        Poly::new(vec![C::one()])
    }

    /// `c t^degree`.
    pub fn monomial(c: C, degree: usize) -> Self {
        let mut coeffs = vec![C::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    /// `(t + shift)^power` as a dense polynomial.
    pub fn linear_power(shift: C, power: usize) -> Self {
        let base = Poly::new(vec![shift, C::one()]);
        (0..power).fold(Poly::one(), |acc, _| &acc * &base)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `t^i` (zero past the stored length).
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    /// Declared length, trailing zeros included.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the trimmed form; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn trimmed(&self) -> Poly<C> {
        let len = self.degree().map_or(0, |d| d + 1);
        Poly::new(self.coeffs[..len].to_vec())
    }

    /// Multiplication by `t`.
    pub fn shift(&self) -> Poly<C> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(coeffs)
    }

    pub fn scale(&self, c: &C) -> Poly<C> {
        Poly::new(self.coeffs.iter().map(|x| mul(x, c)).collect())
    }

    pub fn eval(&self, t: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| add(&mul(&acc, t), c))
    }

    /// Converts to another coefficient ring, panicking if a value does not fit.
    pub fn convert<D: Coefficient>(&self) -> Poly<D> {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let v = c.to_i128().expect("coefficient exceeds i128");
                    D::from_i128(v).expect("coefficient does not fit target type")
                })
                .collect(),
        )
    }
}

impl<C: Coefficient> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|i| self.coeff(i) == other.coeff(i))
    }
}

impl<C: Coefficient> Eq for Poly<C> {}

impl<C: Coefficient> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    /// `(1, 22, 16)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl<C: Coefficient> FromStr for Poly<C> {
    type Err = PolyError;

    /// Lenient: brackets optional, commas and/or whitespace as separators.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let coeffs = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<C>()
                    .map_err(|_| PolyError::Parse(tok.to_string()))
            })
            .collect::<Result<Vec<C>, _>>()?;
        if coeffs.is_empty() {
            return Err(PolyError::Parse(s.to_string()));
        }
        Ok(Poly::new(coeffs))
    }
}

impl<C: Coefficient> Add for &Poly<C> {
    type Output = Poly<C>;

    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.len().max(rhs.len());
        Poly::new((0..n).map(|i| add(&self.coeff(i), &rhs.coeff(i))).collect())
    }
}

impl<C: Coefficient> Mul for &Poly<C> {
    type Output = Poly<C>;

    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_empty() || rhs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.len() + rhs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = add(&out[i + j], &mul(a, b));
            }
        }
        Poly::new(out)
    }
}

pub fn poly_add<C: Coefficient>(a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
    a + b
}

pub fn poly_mul<C: Coefficient>(a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
    a * b
}

pub fn poly_shift_mul_t<C: Coefficient>(a: &Poly<C>) -> Poly<C> {
    a.shift()
}

/// `h(t) = (t - 1)^d f(1 / (t - 1)) = Σ f_i (t - 1)^(d - i)`.
pub fn f_to_h<C: Coefficient>(f: &Poly<C>, d: usize) -> Result<Poly<C>, PolyError> {
    if let Some(degree) = f.degree().filter(|&deg| deg > d) {
        return Err(PolyError::DegreeTooHigh { degree, d });
    }
    let minus_one = sub(&C::zero(), &C::one());
    let mut h = Poly::new(vec![C::zero(); d + 1]);
    // (t - 1)^(d - i) built from i = d downwards
    let mut power = Poly::one();
    for i in (0..=d).rev() {
        let fi = f.coeff(i);
        if !fi.is_zero() {
            h = &h + &power.scale(&fi);
        }
        power = &power * &Poly::new(vec![minus_one.clone(), C::one()]);
    }
    Ok(h)
}

/// Inverse of [`f_to_h`]: `f(s) = Σ h_j s^(d - j) (s + 1)^j`.
pub fn h_to_f<C: Coefficient>(h: &Poly<C>, d: usize) -> Result<Poly<C>, PolyError> {
    if let Some(degree) = h.degree().filter(|&deg| deg > d) {
        return Err(PolyError::DegreeTooHigh { degree, d });
    }
    let mut f = Poly::new(vec![C::zero(); d + 1]);
    let mut power = Poly::one();
    for j in 0..=d {
        let hj = h.coeff(j);
        if !hj.is_zero() {
            let mut term = power.scale(&hj);
            for _ in 0..d - j {
                term = term.shift();
            }
            f = &f + &term;
        }
        power = &power * &Poly::new(vec![C::one(), C::one()]);
    }
    Ok(f)
}

/// γ-vector of `h`, taking `d` to be the declared length minus one.
pub fn h_to_gamma<C: Coefficient>(h: &Poly<C>) -> Result<Poly<C>, PolyError> {
    let d = h.len().saturating_sub(1);
    h_to_gamma_with_degree(h, d)
}

/// Writes `h = Σ γ_i t^i (1 + t)^(d - 2i)` by peeling off the lowest
/// coefficient at each step.
pub fn h_to_gamma_with_degree<C: Coefficient>(h: &Poly<C>, d: usize) -> Result<Poly<C>, PolyError> {
    let not_symmetric = || PolyError::NotSymmetric(h.to_string());
    if h.degree().is_some_and(|deg| deg > d) {
        return Err(not_symmetric());
    }
    if (0..=d).any(|i| h.coeff(i) != h.coeff(d - i)) {
        return Err(not_symmetric());
    }
    let mut residual = Poly::new((0..=d).map(|i| h.coeff(i)).collect());
    let mut gamma = Vec::with_capacity(d / 2 + 1);
    for i in 0..=d / 2 {
        let g = residual.coeff(i);
        if !g.is_zero() {
            let mut basis = Poly::linear_power(C::one(), d - 2 * i);
            for _ in 0..i {
                basis = basis.shift();
            }
            residual = &residual + &basis.scale(&sub(&C::zero(), &g));
        }
        gamma.push(g);
    }
    if !residual.is_zero() {
        return Err(not_symmetric());
    }
    Ok(Poly::new(gamma))
}

/// `Σ γ_i t^i (1 + t)^(d - 2i)`.
pub fn gamma_to_h<C: Coefficient>(gamma: &Poly<C>, d: usize) -> Poly<C> {
    let mut h = Poly::new(vec![C::zero(); d + 1]);
    for (i, g) in gamma.coeffs().iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        assert!(2 * i <= d, "γ_{i} is nonzero but 2·{i} > d = {d}");
        let mut basis = Poly::linear_power(C::one(), d - 2 * i);
        for _ in 0..i {
            basis = basis.shift();
        }
        h = &h + &basis.scale(g);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<i64>;

    fn p(v: &[i64]) -> P {
        P::from_i64s(v)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&p(&[1, 2]) * &p(&[1, 1]), p(&[1, 3, 2]));
        assert_eq!(&p(&[1]) + &p(&[0, 1]), p(&[1, 1]));
        assert_eq!(p(&[1, 2]).shift(), p(&[0, 1, 2]));
        assert_eq!(p(&[1, 2, 0]), p(&[1, 2]));
        assert_eq!(p(&[1, 2, 0]).len(), 3);
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(p(&[2, 0, 1]).eval(&3), 11);
        assert_eq!(Poly::<i64>::linear_power(1, 3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p(&[1, 22, 16]).to_string(), "(1, 22, 16)");
        assert_eq!("(1,22, 16)".parse::<P>().unwrap(), p(&[1, 22, 16]));
        assert_eq!("1 2".parse::<P>().unwrap(), p(&[1, 2]));
        assert_eq!("[1, -3]".parse::<P>().unwrap(), p(&[1, -3]));
        assert!("(1, x)".parse::<P>().is_err());
        assert!("()".parse::<P>().is_err());
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_loud() {
        let big = p(&[i64::MAX]);
        let _ = &big + &big;
    }

    #[test]
    fn f_to_h_examples() {
        assert_eq!(f_to_h(&p(&[1, 6, 6]), 2).unwrap(), p(&[1, 4, 1]));
        assert_eq!(f_to_h(&p(&[1]), 0).unwrap(), p(&[1]));
        assert_eq!(f_to_h(&p(&[1, 5, 5]), 2).unwrap(), p(&[1, 3, 1]));
        assert_eq!(f_to_h(&p(&[1, 9, 21, 14]), 3).unwrap(), p(&[1, 6, 6, 1]));
        // (t - 1)^2 + 3(t - 1) + 1: the reversed standard h-vector
        assert_eq!(f_to_h(&p(&[1, 3, 1]), 2).unwrap(), p(&[-1, 1, 1]));
        assert_eq!(
            f_to_h(&p(&[1, 2, 3]), 1),
            Err(PolyError::DegreeTooHigh { degree: 2, d: 1 })
        );
    }

    #[test]
    fn h_to_gamma_examples() {
        assert_eq!(h_to_gamma(&p(&[1, 4, 1])).unwrap(), p(&[1, 2]));
        assert_eq!(h_to_gamma(&p(&[1, 1])).unwrap(), p(&[1]));
        assert!(matches!(
            h_to_gamma(&p(&[1, 2, 0])),
            Err(PolyError::NotSymmetric(_))
        ));
        assert_eq!(h_to_gamma(&p(&[1, 6, 6, 1])).unwrap(), p(&[1, 3]));
        // Eulerian polynomials A_4, A_5
        assert_eq!(h_to_gamma(&p(&[1, 11, 11, 1])).unwrap(), p(&[1, 8]));
        assert_eq!(
            h_to_gamma(&p(&[1, 26, 66, 26, 1])).unwrap(),
            p(&[1, 22, 16])
        );
    }

    #[test]
    fn gamma_round_trip_and_bigint() {
        let gamma = Poly::<BigInt>::from_i64s(&[1, 22, 16]);
        let h = gamma_to_h(&gamma, 4);
        assert_eq!(h, Poly::<BigInt>::from_i64s(&[1, 26, 66, 26, 1]));
        assert_eq!(h_to_gamma(&h).unwrap(), gamma);
        let wide: Poly<i128> = gamma.convert();
        assert_eq!(wide, Poly::<i128>::from_i64s(&[1, 22, 16]));
    }
}
