//! Dense univariate polynomials over a [`FieldArith`] context.
//!
//! Used for the cubics of the root-counting lemma and for the P/Q rational
//! function behind the affine curve. Degrees stay tiny (<= 8), so schoolbook
//! arithmetic is the whole story.

use super::{Elem, Field, FieldArith};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    GcdOfZeros,
}

/// Coefficients in ascending degree, trailing zeros trimmed; empty = zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Copy + Eq + std::fmt::Debug> Poly<E> {
    pub fn new<F: FieldArith<El = E>>(mut coeffs: Vec<E>, f: &F) -> Poly<E> {
        while coeffs.last().is_some_and(|&c| f.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly<E> {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant<F: FieldArith<El = E>>(c: E, f: &F) -> Poly<E> {
        Poly::new(vec![c], f)
    }

    /// The monomial X.
    pub fn x<F: FieldArith<El = E>>(f: &F) -> Poly<E> {
        Poly {
            coeffs: vec![f.zero(), f.one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff<F: FieldArith<El = E>>(&self, i: usize, f: &F) -> E {
        self.coeffs.get(i).copied().unwrap_or_else(|| f.zero())
    }

    pub fn leading<F: FieldArith<El = E>>(&self, f: &F) -> E {
        self.coeffs.last().copied().unwrap_or_else(|| f.zero())
    }

    pub fn add<F: FieldArith<El = E>>(&self, other: &Poly<E>, f: &F) -> Poly<E> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.add(self.coeff(i, f), other.coeff(i, f)))
            .collect();
        Poly::new(coeffs, f)
    }

    pub fn mul<F: FieldArith<El = E>>(&self, other: &Poly<E>, f: &F) -> Poly<E> {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Poly::new(coeffs, f)
    }

    pub fn scale<F: FieldArith<El = E>>(&self, c: E, f: &F) -> Poly<E> {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect(), f)
    }

    pub fn eval<F: FieldArith<El = E>>(&self, x: E, f: &F) -> E {
        let mut acc = f.zero();
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn divrem<F: FieldArith<El = E>>(
        &self,
        divisor: &Poly<E>,
        f: &F,
    ) -> Result<(Poly<E>, Poly<E>), PolyError> {
        let Some(dd) = divisor.degree() else {
            return Err(PolyError::DivisionByZero);
        };
        let lead_inv = f
            .inv(divisor.leading(f))
            .expect("nonzero polynomial has nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = *rem.last().unwrap();
            let shift = rem.len() - 1 - dd;
            if !f.is_zero(top) {
                let c = f.mul(top, lead_inv);
                quot[shift] = c;
                for (i, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] = f.add(rem[shift + i], f.mul(c, dc));
                }
            }
            rem.pop();
        }
        Ok((Poly::new(quot, f), Poly::new(rem, f)))
    }

    pub fn rem<F: FieldArith<El = E>>(&self, divisor: &Poly<E>, f: &F) -> Result<Poly<E>, PolyError> {
        Ok(self.divrem(divisor, f)?.1)
    }

    /// Monic gcd by the Euclidean algorithm. At least one input must be nonzero.
    pub fn gcd<F: FieldArith<El = E>>(&self, other: &Poly<E>, f: &F) -> Result<Poly<E>, PolyError> {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_zero() && b.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        while !b.is_zero() {
            let r = a.rem(&b, f)?;
            a = b;
            b = r;
        }
        let lead_inv = f.inv(a.leading(f)).expect("nonzero by loop invariant");
        Ok(a.scale(lead_inv, f))
    }
}

/// Number of distinct roots of `p` in its coefficient field: the degree of
/// gcd(X^q + X mod p, p), with X^q computed by n squarings modulo p.
pub fn root_count_in_field(p: &Poly<Elem>, f: &Field) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    let x = Poly::x(f);
    let mut r = x.rem(p, f)?;
    for _ in 0..f.n() {
        r = r.mul(&r, f).rem(p, f)?;
    }
    let xq_minus_x = r.add(&x.rem(p, f)?, f);
    if xq_minus_x.is_zero() {
        // p divides X^q + X, so p splits into distinct linear factors.
        return Ok(p.degree().unwrap());
    }
    let g = xq_minus_x.gcd(p, f)?;
    Ok(g.degree().unwrap_or(0))
}
