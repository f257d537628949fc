//! Univariate polynomials over GF(2^m).
//!
//! Coefficients are stored low-to-high: index i holds the coefficient of x^i.
//! The canonical form carries no trailing zeros, so the zero polynomial is an
//! empty coefficient vector and `degree()` returns `None` for it.

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![FieldElement::ONE],
        }
    }

    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// The monomial x.
    pub fn x() -> Self {
        Polynomial {
            coeffs: vec![FieldElement::ZERO, FieldElement::ONE],
        }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, spec: &FieldSpec, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = spec.add(spec.mul(acc, x), c);
        }
        acc
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (longer, shorter) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut out = longer.clone();
        for (o, s) in out.iter_mut().zip(shorter.iter()) {
            *o = FieldElement(o.value() ^ s.value());
        }
        Polynomial::from_coeffs(out)
    }

    /// Coefficient convolution.
    pub fn mul(&self, other: &Polynomial, spec: &FieldSpec) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let prod = spec.mul(a, b);
                out[i + j] = spec.add(out[i + j], prod);
            }
        }
        Polynomial::from_coeffs(out)
    }

    pub fn scalar_mul(&self, c: FieldElement, spec: &FieldSpec) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|&a| spec.mul(a, c)).collect())
    }

    /// The monic polynomial with roots a^i for every index i in the set:
    /// the product of (x - a^i). Indices wrap modulo q-1, so an index of
    /// q-1+j aliases index j; the empty set gives the constant 1.
    pub fn vanishing(indices: impl IntoIterator<Item = usize>, spec: &FieldSpec) -> Polynomial {
        let mut out = Polynomial::one();
        for i in indices {
            let root = spec.element_from_power(i);
            // (x - a^i) = (x + a^i) in characteristic 2
            let factor = Polynomial::from_coeffs(vec![root, FieldElement::ONE]);
            out = out.mul(&factor, spec);
        }
        out
    }

    /// Substitute beta*x for x: coefficient l gets multiplied by beta^l.
    /// Moves every root gamma of the polynomial to gamma/beta.
    pub fn scale_arg(&self, beta: FieldElement, spec: &FieldSpec) -> Result<Polynomial> {
        if beta.is_zero() {
            return Err(Error::ZeroScale);
        }
        let mut power = FieldElement::ONE;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let scaled = spec.mul(c, power);
                power = spec.mul(power, beta);
                scaled
            })
            .collect();
        Ok(Polynomial::from_coeffs(coeffs))
    }

    /// Scale the polynomial so it evaluates to 1 at a^index.
    pub fn normalize_at(&self, index: usize, spec: &FieldSpec) -> Result<Polynomial> {
        let at = self.eval(spec, spec.element_from_power(index));
        if at.is_zero() {
            return Err(Error::VanishesAtPivot(index));
        }
        Ok(self.scalar_mul(spec.inv(at)?, spec))
    }

    /// Coefficients padded with zeros to length k.
    pub fn coeff_vector(&self, k: usize) -> Result<Vec<FieldElement>> {
        if self.coeffs.len() > k {
            return Err(Error::DegreeTooHigh {
                degree: self.coeffs.len() - 1,
                len: k,
            });
        }
        let mut out = self.coeffs.clone();
        out.resize(k, FieldElement::ZERO);
        Ok(out)
    }

    pub fn count_nonzero_coeffs(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn divmod(&self, divisor: &Polynomial, spec: &FieldSpec) -> Result<(Polynomial, Polynomial)> {
        let Some(d_deg) = divisor.degree() else {
            return Err(Error::ZeroInverse);
        };
        let lead_inv = spec.inv(divisor.coeffs[d_deg])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - d_deg];
        for i in (d_deg..rem.len()).rev() {
            let factor = spec.mul(rem[i], lead_inv);
            if factor.is_zero() {
                continue;
            }
            quot[i - d_deg] = factor;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let sub = spec.mul(factor, dc);
                rem[i - d_deg + j] = spec.add(rem[i - d_deg + j], sub);
            }
        }
        Ok((Polynomial::from_coeffs(quot), Polynomial::from_coeffs(rem)))
    }

    /// Lagrange interpolation through distinct points.
    pub fn interpolate(
        points: &[FieldElement],
        values: &[FieldElement],
        spec: &FieldSpec,
    ) -> Result<Polynomial> {
        if points.len() != values.len() {
            return Err(Error::LengthMismatch {
                expected: points.len(),
                got: values.len(),
            });
        }
        let mut out = Polynomial::zero();
        for (i, (&xi, &yi)) in points.iter().zip(values.iter()).enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Polynomial::one();
            let mut denom = FieldElement::ONE;
            for (j, &xj) in points.iter().enumerate() {
                if j == i {
                    continue;
                }
                basis = basis.mul(
                    &Polynomial::from_coeffs(vec![xj, FieldElement::ONE]),
                    spec,
                );
                denom = spec.mul(denom, spec.sub(xi, xj));
            }
            let scale = spec.div(yi, denom)?;
            out = out.add(&basis.scalar_mul(scale, spec));
        }
        Ok(out)
    }
}
