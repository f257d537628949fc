//! The constituent [N, k, d] Reed-Solomon code in evaluation form.
//!
//! Codewords are evaluations of a message polynomial of degree < k at the
//! points a^1, ..., a^N (note: a^0 is not an evaluation point). The distance
//! is d = N - k + 1 = 2z + 1, so up to z symbol errors are uniquely
//! correctable. Decoding solves the Berlekamp-Welch key equation
//! Q(a^j) = y_j E(a^j) with a monic error locator E of degree at most z and
//! recovers the message as Q/E. A brute-force nearest-codeword decoder doubles
//! as an independent test oracle.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::linalg::{solve_linear, Matrix};
use crate::poly::Polynomial;

/// Largest message space the brute-force oracle will enumerate.
const ORACLE_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RSCode {
    spec: FieldSpec,
    n: usize,
    k: usize,
    z: usize,
    eval_points: Vec<FieldElement>,
}

impl RSCode {
    /// An [N, N-2z, 2z+1] code over the given field. Requires q - 1 >= N so
    /// the evaluation points a^1..a^N are distinct, and k >= 1.
    pub fn new(spec: FieldSpec, n: usize, z: usize) -> Result<Self> {
        if n == 0 || n > spec.order() {
            return Err(Error::FieldTooSmall { n, q: spec.q() });
        }
        if 2 * z >= n {
            return Err(Error::CodeDimension { n, twoz: 2 * z });
        }
        let eval_points = (1..=n).map(|j| spec.element_from_power(j)).collect();
        Ok(RSCode {
            k: n - 2 * z,
            spec,
            n,
            z,
            eval_points,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn distance(&self) -> usize {
        2 * self.z + 1
    }

    /// Evaluation points a^1..a^N, index 0 holding a^1.
    pub fn eval_points(&self) -> &[FieldElement] {
        &self.eval_points
    }

    /// The k x N Vandermonde-style generator: entry (i, j) = a^(i(j+1)),
    /// i.e. row 0 is all ones and row i evaluates x^i at each point.
    pub fn generator_matrix(&self) -> Matrix {
        let mut g = Matrix::zeros(self.k, self.n);
        for i in 0..self.k {
            for j in 0..self.n {
                g.set(i, j, self.spec.element_from_power(i * (j + 1)));
            }
        }
        g
    }

    /// Evaluate the message polynomial at every point; equals msg * G_RS.
    pub fn encode(&self, msg: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if msg.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                got: msg.len(),
            });
        }
        let poly = Polynomial::from_coeffs(msg.to_vec());
        Ok(self
            .eval_points
            .iter()
            .map(|&x| poly.eval(&self.spec, x))
            .collect())
    }

    /// Berlekamp-Welch unique decoding: returns the message of the codeword
    /// within Hamming distance z of `y`, if one exists.
    ///
    /// For an error-locator degree e (starting at z and retrying downwards
    /// when the linear slice is infeasible), the unknowns are the
    /// coefficients of Q (degree <= e + k - 1) and of E minus its forced
    /// leading 1. Exact division Q/E with quotient degree < k certifies the
    /// result: E has at most e roots, so the decoded codeword disagrees with
    /// y in at most e <= z places.
    pub fn decode_bw(&self, y: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if y.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: y.len(),
            });
        }
        for e_deg in (0..=self.z).rev() {
            let q_len = e_deg + self.k; // coefficients q_0..q_{e+k-1}
            let unknowns = q_len + e_deg;
            let mut a = Matrix::zeros(self.n, unknowns);
            let mut b = vec![FieldElement::ZERO; self.n];
            for (row, (&x, &yj)) in self.eval_points.iter().zip(y.iter()).enumerate() {
                let mut xp = FieldElement::ONE;
                for col in 0..q_len {
                    a.set(row, col, xp);
                    if col < e_deg {
                        // -y_j x^col, and minus is plus in characteristic 2
                        a.set(row, q_len + col, self.spec.mul(yj, xp));
                    }
                    xp = self.spec.mul(xp, x);
                }
                // move the monic x^e term of E to the right-hand side
                let xe = self.spec.pow(x, e_deg as i64).expect("nonzero point");
                b[row] = self.spec.mul(yj, xe);
            }
            let Some(solution) = solve_linear(&a, &b, &self.spec) else {
                continue;
            };
            let q_poly = Polynomial::from_coeffs(solution[..q_len].to_vec());
            let mut e_coeffs = solution[q_len..].to_vec();
            e_coeffs.push(FieldElement::ONE);
            let e_poly = Polynomial::from_coeffs(e_coeffs);
            let (quot, rem) = q_poly.divmod(&e_poly, &self.spec)?;
            if !rem.is_zero() {
                continue;
            }
            if let Ok(msg) = quot.coeff_vector(self.k) {
                return Ok(msg);
            }
        }
        Err(Error::DecodeFailure)
    }

    /// Exhaustive nearest-codeword oracle: scans every message, keeps those
    /// whose codeword lies within distance z of `y`, and demands exactly one.
    /// Guarded to message spaces of at most 2^20.
    pub fn decode_bruteforce(&self, y: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let total = self.message_space()?;
        #[cfg(feature = "parallel")]
        let candidates: Vec<u64> = (0..total)
            .into_par_iter()
            .filter(|&idx| self.within_z(idx, y))
            .collect();
        #[cfg(not(feature = "parallel"))]
        let candidates: Vec<u64> = (0..total).filter(|&idx| self.within_z(idx, y)).collect();
        match candidates.as_slice() {
            [unique] => Ok(self.message_from_index(*unique)),
            _ => Err(Error::DecodeFailure),
        }
    }

    /// Single-threaded variant of [`decode_bruteforce`](Self::decode_bruteforce),
    /// kept for benchmark comparisons.
    pub fn decode_bruteforce_seq(&self, y: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let total = self.message_space()?;
        let candidates: Vec<u64> = (0..total).filter(|&idx| self.within_z(idx, y)).collect();
        match candidates.as_slice() {
            [unique] => Ok(self.message_from_index(*unique)),
            _ => Err(Error::DecodeFailure),
        }
    }

    fn message_space(&self) -> Result<u64> {
        let q = self.spec.q() as u64;
        let mut total: u64 = 1;
        for _ in 0..self.k {
            total = total.saturating_mul(q);
            if total > ORACLE_CAP {
                return Err(Error::OracleTooLarge {
                    q: self.spec.q(),
                    k: self.k,
                });
            }
        }
        Ok(total)
    }

    fn message_from_index(&self, mut idx: u64) -> Vec<FieldElement> {
        let q = self.spec.q() as u64;
        (0..self.k)
            .map(|_| {
                let digit = (idx % q) as u16;
                idx /= q;
                FieldElement(digit)
            })
            .collect()
    }

    fn within_z(&self, idx: u64, y: &[FieldElement]) -> bool {
        let msg = self.message_from_index(idx);
        let poly = Polynomial::from_coeffs(msg);
        let mut dist = 0usize;
        for (&x, &yj) in self.eval_points.iter().zip(y.iter()) {
            if poly.eval(&self.spec, x) != yj {
                dist += 1;
                if dist > self.z {
                    return false;
                }
            }
        }
        true
    }
}

pub fn hamming_distance(a: &[FieldElement], b: &[FieldElement]) -> usize {
    a.iter().zip(b.iter()).filter(|(x, y)| x != y).count()
}
