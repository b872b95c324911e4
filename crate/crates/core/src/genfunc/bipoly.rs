use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::qcomb::QPolynomial;

/// Exponents `(λ₁-degree, q-degree)` of a monomial.
pub type Exponents = (u32, u32);

/// Sparse polynomial in `λ₁` and `q` with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    terms: BTreeMap<Exponents, BigRational>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(lambda_deg: u32, q_deg: u32, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((lambda_deg, q_deg), c);
        }
        Self { terms }
    }

    /// `λ₁`.
    pub fn lambda() -> Self {
        Self::monomial(1, 0, BigRational::one())
    }

    /// `q`.
    pub fn q() -> Self {
        Self::monomial(0, 1, BigRational::one())
    }

    /// Embeds an integer polynomial in `q`.
    pub fn from_qpoly(p: &QPolynomial) -> Self {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| ((0, k as u32), BigRational::from_integer(BigInt::from(c.clone()))))
            .collect();
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &BigRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, lambda_deg: u32, q_deg: u32) -> BigRational {
        self.terms
            .get(&(lambda_deg, q_deg))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// The value if the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Multiplies by `λ₁^k`.
    pub fn times_lambda_pow(&self, k: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(l, q), v)| ((l + k, q), v.clone()))
                .collect(),
        }
    }

    /// Drops every monomial containing `q`.
    pub fn at_q_zero(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((_, q), _)| *q == 0)
                .map(|(&e, v)| (e, v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, lambda1: f64, q: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(l, k), c)| {
                c.to_f64().unwrap_or(f64::NAN) * lambda1.powi(l as i32) * q.powi(k as i32)
            })
            .sum()
    }

    /// Exact value at rational `(λ₁, q)`.
    pub fn eval_exact(&self, lambda1: &BigRational, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(l, k), c) in &self.terms {
            acc += c * num_traits::pow(lambda1.clone(), l as usize) * num_traits::pow(q.clone(), k as usize);
        }
        acc
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub(crate) fn add_assign_ref(&mut self, other: &Self) {
        for (&e, c) in &other.terms {
            self.add_term(e, c.clone());
        }
    }

    pub(crate) fn add_product(&mut self, a: &Self, b: &Self) {
        for (&(l1, q1), c1) in &a.terms {
            for (&(l2, q2), c2) in &b.terms {
                self.add_term((l1 + l2, q1 + q2), c1 * c2);
            }
        }
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;

    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;

    fn neg(self) -> BivarPoly {
        BivarPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;

    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        self + &(-rhs)
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;

    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        out.add_product(self, rhs);
        out
    }
}

impl fmt::Display for BivarPoly {
    /// Highest `λ₁` power first, e.g. `λ₁^5 + 5λ₁^3 + 10λ₁ + 5qλ₁`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(l, k), c) in self.terms.iter().rev() {
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let bare = l == 0 && k == 0;
            if !magnitude.is_one() || bare {
                write!(f, "{magnitude}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
            match l {
                0 => {}
                1 => write!(f, "λ₁")?,
                _ => write!(f, "λ₁^{l}")?,
            }
        }
        Ok(())
    }
}
