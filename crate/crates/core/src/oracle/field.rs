//! Small finite fields `F_p` and `F_{p^2}` with table arithmetic.
//!
//! An element `c0 + c1 t` of `F_{p^2} = F_p[t] / (t^2 + m1 t + m0)` is
//! encoded as the integer `c0 + p c1`, so the prime subfield is `0..p` in
//! both fields and base-field data embeds without conversion.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::is_prime;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1024;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    degree: u32,
    /// `(m0, m1)` for the modulus `t^2 + m1 t + m0`.
    modulus: Option<(u32, u32)>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteField {
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        if !is_prime(u64::from(p)) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if !(1..=2).contains(&degree) {
            return Err(Error::InvalidArgument(format!(
                "extension degree {degree} is not 1 or 2"
            )));
        }
        if p.pow(degree) > MAX_ORDER {
            return Err(Error::InvalidArgument(format!(
                "field of order {p}^{degree} is too large"
            )));
        }
        let modulus = (degree == 2).then(|| first_irreducible_quadratic(p));
        let q = p.pow(degree) as usize;
        let split = |a: usize| (a as u32 % p, a as u32 / p);
        let join = |c0: u32, c1: u32| c0 + p * c1;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let (a0, a1) = split(a);
            for b in 0..q {
                let (b0, b1) = split(b);
                add[a * q + b] = join((a0 + b0) % p, (a1 + b1) % p);
                mul[a * q + b] = match modulus {
                    None => (a0 * b0) % p,
                    Some((m0, m1)) => {
                        // t^2 = -m1 t - m0
                        let t2 = (a1 * b1) % p;
                        let c0 = (a0 * b0 + (p - m0) * t2) % p;
                        let c1 = (a0 * b1 + a1 * b0 + (p - m1) * t2) % p;
                        join(c0, c1)
                    }
                };
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u32).collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u32
                }
            })
            .collect();
        Ok(Self {
            p,
            degree,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.degree)
    }

    pub fn modulus(&self) -> Option<(u32, u32)> {
        self.modulus
    }

    /// `other` is a subfield of `self` under the shared encoding.
    pub fn extends(&self, other: &FiniteField) -> bool {
        self.p == other.p && self.degree.is_multiple_of(other.degree)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.order() + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.order() + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order()
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "F_{}", self.p),
            Some((m0, m1)) => {
                write!(f, "F_{}[t]/(t^2", self.p)?;
                match m1 {
                    0 => {}
                    1 => f.write_str("+t")?,
                    c => write!(f, "+{c}t")?,
                }
                write!(f, "+{m0})")
            }
        }
    }
}

/// First monic irreducible `t^2 + m1 t + m0` in lexicographic order of
/// `(m1, m0)`. A quadratic is irreducible iff it has no root.
fn first_irreducible_quadratic(p: u32) -> (u32, u32) {
    for m1 in 0..p {
        for m0 in 0..p {
            if (0..p).all(|x| (x * x + m1 * x + m0) % p != 0) {
                return (m0, m1);
            }
        }
    }
    unreachable!("every prime field has an irreducible quadratic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli() {
        assert_eq!(FiniteField::new(2, 2).unwrap().modulus(), Some((1, 1)));
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), Some((1, 0)));
        assert_eq!(FiniteField::new(5, 2).unwrap().modulus(), Some((2, 0)));
        assert_eq!(FiniteField::new(7, 2).unwrap().modulus(), Some((1, 0)));
        assert!(FiniteField::new(4, 1).is_err());
        assert!(FiniteField::new(3, 3).is_err());
    }

    #[test]
    fn field_axioms() {
        for (p, e) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (5, 2), (7, 2)] {
            let f = FiniteField::new(p, e).unwrap();
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
            // multiplicative group is cyclic of order q - 1: x^(q-1) = 1
            for a in 1..q {
                let mut x = 1;
                for _ in 0..q - 1 {
                    x = f.mul(x, a);
                }
                assert_eq!(x, 1);
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(FiniteField::prime(3).unwrap().to_string(), "F_3");
        assert_eq!(FiniteField::new(3, 2).unwrap().to_string(), "F_3[t]/(t^2+1)");
        assert_eq!(FiniteField::new(2, 2).unwrap().to_string(), "F_2[t]/(t^2+t+1)");
    }

    #[test]
    fn prime_subfield_embeds() {
        let base = FiniteField::prime(3).unwrap();
        let ext = FiniteField::new(3, 2).unwrap();
        assert!(ext.extends(&base) && !base.extends(&ext));
        for a in base.elements() {
            for b in base.elements() {
                assert_eq!(ext.add(a, b), base.add(a, b));
                assert_eq!(ext.mul(a, b), base.mul(a, b));
            }
        }
    }
}
