//! Arithmetic in binary extension fields GF(2^m) with an explicit primitive
//! element `a` (the residue of x modulo the primitive polynomial).
//!
//! Multiplication, inversion and discrete logarithms run off log/antilog
//! tables built once at construction time, which is plenty fast for the
//! supported range m in 1..=16. A [`FieldSpec`] is cheap to clone: the tables
//! sit behind an `Arc`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default primitive polynomial per extension degree, indexed by m (1..=16).
/// Bit i is the coefficient of x^i; e.g. m=3 maps to x^3 + x + 1 = 0b1011.
const DEFAULT_POLYS: [u32; 17] = [
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

/// An element of GF(2^m), stored as its polynomial-basis value: bit i is the
/// coefficient of x^i. Only meaningful together with the [`FieldSpec`] it was
/// created from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub(crate) u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wrap a raw polynomial-basis value. The caller is responsible for
    /// keeping it below the field order; prefer [`FieldSpec::element`] when
    /// a spec is at hand.
    pub const fn new(value: u16) -> FieldElement {
        FieldElement(value)
    }

    pub fn value(self) -> u16 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
struct Tables {
    /// exp[i] = a^i for i in 0..2(q-1), doubled so products of two logs
    /// index without a modulo.
    exp: Vec<u16>,
    /// log[v] = discrete log of v for v in 1..q; entry 0 is unused.
    log: Vec<u16>,
}

/// A binary extension field GF(2^m) together with its primitive element.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "FieldDescriptor", into = "FieldDescriptor")]
pub struct FieldSpec {
    m: u32,
    primitive_poly: u32,
    q: u32,
    tables: Arc<Tables>,
}

/// Serialized form of a [`FieldSpec`]: the tables are rebuilt on load.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub m: u32,
    pub primitive_poly: u32,
}

impl TryFrom<FieldDescriptor> for FieldSpec {
    type Error = Error;

    fn try_from(d: FieldDescriptor) -> Result<Self> {
        FieldSpec::with_poly(d.m, d.primitive_poly)
    }
}

impl From<FieldSpec> for FieldDescriptor {
    fn from(spec: FieldSpec) -> Self {
        FieldDescriptor {
            m: spec.m,
            primitive_poly: spec.primitive_poly,
        }
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}; poly={:#x})", self.m, self.primitive_poly)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.primitive_poly == other.primitive_poly
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Build GF(2^m) with the default primitive polynomial for that degree.
    pub fn new(m: u32) -> Result<Self> {
        if !(1..=16).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        Self::with_poly(m, DEFAULT_POLYS[m as usize])
    }

    /// Build GF(2^m) with a caller-supplied primitive polynomial (bitmask,
    /// bit i = coefficient of x^i). The polynomial is validated: it must have
    /// degree exactly m and x must generate the full multiplicative group.
    pub fn with_poly(m: u32, primitive_poly: u32) -> Result<Self> {
        if !(1..=16).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        if primitive_poly >> m != 1 {
            return Err(Error::WrongPolyDegree {
                poly: primitive_poly,
                m,
            });
        }
        if primitive_poly & 1 == 0 {
            return Err(Error::NotPrimitive {
                poly: primitive_poly,
                reason: "constant term is zero, so x divides the polynomial".into(),
            });
        }
        let q: u32 = 1 << m;
        let order = (q - 1) as usize;
        let mut exp = vec![0u16; 2 * order.max(1)];
        let mut log = vec![u16::MAX; q as usize];
        let mut cur: u32 = 1;
        for i in 0..order {
            if log[cur as usize] != u16::MAX {
                return Err(Error::NotPrimitive {
                    poly: primitive_poly,
                    reason: format!("x has multiplicative order {i}, smaller than q-1 = {order}"),
                });
            }
            exp[i] = cur as u16;
            exp[i + order] = cur as u16;
            log[cur as usize] = i as u16;
            cur <<= 1;
            if cur & q != 0 {
                cur ^= primitive_poly;
            }
        }
        if cur != 1 {
            return Err(Error::NotPrimitive {
                poly: primitive_poly,
                reason: format!("x^(q-1) = {cur} instead of 1"),
            });
        }
        Ok(FieldSpec {
            m,
            primitive_poly,
            q,
            tables: Arc::new(Tables { exp, log }),
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn primitive_poly(&self) -> u32 {
        self.primitive_poly
    }

    /// Field order q = 2^m.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Size of the multiplicative group, q - 1.
    pub fn order(&self) -> usize {
        (self.q - 1) as usize
    }

    /// Validate an integer as a field element.
    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value >= self.q as u64 {
            return Err(Error::ElementOutOfRange { value, q: self.q });
        }
        Ok(FieldElement(value as u16))
    }

    /// The primitive element: the residue of x. Value 2 for m >= 2, value 1
    /// in the degenerate GF(2) case where x reduces to 1.
    pub fn alpha(&self) -> FieldElement {
        if self.m == 1 {
            FieldElement(1)
        } else {
            FieldElement(2)
        }
    }

    /// a^e for a nonnegative exponent, reduced modulo the group order.
    pub fn element_from_power(&self, e: usize) -> FieldElement {
        FieldElement(self.tables.exp[e % self.order()])
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q as u16 && b.0 < self.q as u16);
        FieldElement(a.0 ^ b.0)
    }

    /// Subtraction coincides with addition in characteristic 2.
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, b)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let la = self.tables.log[a.0 as usize] as usize;
        let lb = self.tables.log[b.0 as usize] as usize;
        FieldElement(self.tables.exp[la + lb])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let la = self.tables.log[a.0 as usize] as usize;
        Ok(FieldElement(self.tables.exp[self.order() - la]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e. Negative exponents are allowed for nonzero a; 0^0 = 1.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if a.is_zero() {
            return match e {
                0 => Ok(FieldElement::ONE),
                e if e > 0 => Ok(FieldElement::ZERO),
                _ => Err(Error::ZeroInverse),
            };
        }
        let la = self.tables.log[a.0 as usize] as i128;
        let order = self.order() as i128;
        let exp = (la * e as i128).rem_euclid(order) as usize;
        Ok(FieldElement(self.tables.exp[exp]))
    }

    /// The unique e in [0, q-1) with a^e equal to the argument.
    pub fn discrete_log(&self, a: FieldElement) -> Result<usize> {
        if a.is_zero() {
            return Err(Error::ZeroLog);
        }
        Ok(self.tables.log[a.0 as usize] as usize)
    }

    /// All q elements in value order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u16).map(FieldElement)
    }

    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.random_range(0..self.q) as u16)
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.random_range(1..self.q) as u16)
    }

    /// Power-notation rendering: "0", "1", "a", or "a^e".
    pub fn format_power(&self, a: FieldElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        match self.tables.log[a.0 as usize] {
            0 => "1".into(),
            1 => "a".into(),
            e => format!("a^{e}"),
        }
    }

    /// Parse either the decimal integer form or the power notation accepted
    /// on input ("0", "1", "a", "a^e").
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('a') {
            let e: usize = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .and_then(|e| e.parse().ok())
                    .ok_or_else(|| Error::ElementParse(s.into()))?
            };
            return Ok(self.element_from_power(e));
        }
        let value: u64 = s.parse().map_err(|_| Error::ElementParse(s.into()))?;
        self.element(value)
    }
}
