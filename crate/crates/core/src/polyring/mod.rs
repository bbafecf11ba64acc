//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] lives in `Q[z1, ..., zn]` for a fixed ambient `n`.
//! Coefficients are arbitrary-precision rationals and no zero coefficient is
//! ever stored, so structural equality is equality of polynomials.

mod gcd;
mod monomial;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use gcd::{gcd, gcd_all};
pub use monomial::{Monomial, MonomialOrder, OrderKind};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable `z_{var+1}` (0-based index).
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::term(Monomial::var(nvars, var, 1), BigRational::one())
    }

    pub fn term(mono: Monomial, coef: BigRational) -> Self {
        let mut p = Self::zero(mono.nvars());
        if !coef.is_zero() {
            p.terms.insert(mono, coef);
        }
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, merging
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::Dimension(format!(
                    "monomial with {} exponents in a ring of {} variables",
                    m.nvars(),
                    nvars
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// True for nonzero constants as well as zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    /// Nonzero element of the coefficient field, i.e. a unit of the ring.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Maximum total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    /// Indices of the variables occurring in the polynomial.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.involves(v)).collect()
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &BigRational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_coefficient(&self, order: &MonomialOrder) -> Option<&BigRational> {
        self.leading_term(order).map(|(_, c)| c)
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients of `self` viewed as a polynomial in `var`; entry `k` is
    /// the coefficient of `z_var^k` and does not involve `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Polynomial::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(var) as usize;
            out[k].terms.insert(m.with_exp(var, 0), c.clone());
        }
        out
    }

    /// Image under the ring homomorphism `z_var -> f`.
    pub fn substitute_var(&self, var: usize, f: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(f)?;
        if var >= self.nvars {
            return Err(Error::Dimension(format!(
                "variable index {} out of range for {} variables",
                var, self.nvars
            )));
        }
        if f.involves(var) {
            return Err(Error::InvalidSubstitution { var: var + 1 });
        }
        let coeffs = self.coefficients_in(var);
        // Horner
        let mut acc = Polynomial::zero(self.nvars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * f) + c;
        }
        Ok(acc)
    }

    /// Exchanges the roles of two variables.
    pub fn swap_vars(&self, a: usize, b: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swap_vars(a, b), c.clone()))
                .collect(),
        }
    }

    /// Division with remainder by a single divisor under `order`.
    /// Every term of the remainder is free of the divisor's leading monomial.
    pub fn div_rem(&self, d: &Polynomial, order: &MonomialOrder) -> Result<(Polynomial, Polynomial)> {
        self.check_same_ring(d)?;
        let (dm, dc) = d.leading_term(order).ok_or(Error::DivisionByZero)?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut q = Polynomial::zero(self.nvars);
        let mut r = Polynomial::zero(self.nvars);
        let mut p = self.clone();
        while let Some((pm, pc)) = p.leading_term(order) {
            let (pm, pc) = (pm.clone(), pc.clone());
            match dm.div(&pm) {
                Some(qm) => {
                    let qc = &pc / &dc;
                    p = &p - &d.mul_term(&qm, &qc);
                    q.add_term(qm, qc);
                }
                None => {
                    p.terms.remove(&pm);
                    r.add_term(pm, pc);
                }
            }
        }
        Ok((q, r))
    }

    /// Exact quotient `self / d` if `d` divides `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_same_ring(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = d.constant_value() {
            return Ok(Some(self.scale(&c.recip())));
        }
        // With a single divisor the leading term must always be divisible.
        let order = MonomialOrder::lex(self.nvars);
        let (dm, dc) = d.leading_term(&order).unwrap();
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut q = Polynomial::zero(self.nvars);
        let mut p = self.clone();
        while let Some((pm, pc)) = p.leading_term(&order) {
            let Some(qm) = dm.div(pm) else {
                return Ok(None);
            };
            let qc = pc / &dc;
            p = &p - &d.mul_term(&qm, &qc);
            q.add_term(qm, qc);
        }
        Ok(Some(q))
    }

    /// `Some(q)` with `p = d * q` when `d` divides `self`, `None` otherwise.
    pub fn divides_into(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        self.div_exact(d)
    }

    /// Canonical associate: integer coefficients with gcd 1 and a positive
    /// leading coefficient under degrevlex.
    pub fn normalized(&self) -> Polynomial {
        self.normalized_with(&MonomialOrder::degrevlex(self.nvars))
    }

    pub fn normalized_with(&self, order: &MonomialOrder) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            num = num.gcd(&(c.numer() * (&den / c.denom())));
        }
        let mut factor = BigRational::new(den, num);
        if self.leading_coefficient(order).unwrap().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Monic associate under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_coefficient(order) {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// True if `self = c * other` for a nonzero constant `c`.
    pub fn associate_of(&self, other: &Polynomial) -> bool {
        self.normalized() == other.normalized()
    }
}

/// `d` divides `p`: returns the cofactor on success.
pub fn divides(d: &Polynomial, p: &Polynomial) -> Result<Option<Polynomial>> {
    p.div_exact(d)
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form, terms in descending degrevlex order, readable
    /// back by the expression parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let order = MonomialOrder::degrevlex(self.nvars);
        for (i, (m, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("z{}", v + 1)),
                    _ => factors.push(format!("z{}^{}", v + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}
