//! Exact arithmetic in Z[A^{±1}], the ring of integer Laurent polynomials
//! in a single variable A.
//!
//! Values are kept in canonical form: zero coefficients are never stored,
//! so structural equality is ring equality and the zero polynomial is the
//! empty term map.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::SkeinError;

/// An element of Z[A^{±1}]: a finite map exponent -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// The single term `c * A^exp` (canonical: drops `c = 0`).
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let c: BigInt = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `A^k` for any integer k.
    pub fn a_pow(k: i64) -> Self {
        Self::monomial(k, 1)
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Highest minus lowest exponent; undefined for the zero polynomial.
    pub fn breadth(&self) -> Result<i64, SkeinError> {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => Ok(hi - lo),
            _ => Err(SkeinError::BreadthUndefined),
        }
    }

    /// The substitution A -> A^{-1}; a ring involution.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiply by `A^k` (an exponent shift).
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Evaluate at A = 1 or A = -1 (the only integer units).
    pub fn eval_pm1(&self, a: i8) -> BigInt {
        debug_assert!(a == 1 || a == -1);
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            if a == 1 || e.rem_euclid(2) == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc
    }

    /// Evaluate at a nonzero rational A-value.
    pub fn eval_rational(&self, a: &BigRational) -> Result<BigRational, SkeinError> {
        if a.is_zero() {
            return Err(SkeinError::ZeroSpecialization);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let pow = if *e >= 0 {
                num_traits::pow::pow(a.clone(), *e as usize)
            } else {
                num_traits::pow::pow(a.recip(), (-e) as usize)
            };
            acc += BigRational::from(c.clone()) * pow;
        }
        Ok(acc)
    }

    /// Evaluate at a nonzero element of the prime field F_p.
    pub fn eval_mod(&self, p: u64, a: u64) -> Result<u64, SkeinError> {
        let a = a % p;
        if a == 0 {
            return Err(SkeinError::ZeroSpecialization);
        }
        let a_inv = mod_inv(a, p);
        let mut acc: u64 = 0;
        for (e, c) in &self.terms {
            let base = if *e >= 0 { a } else { a_inv };
            let pow = mod_pow(base, e.unsigned_abs(), p);
            let cm = mod_of_bigint(c, p);
            acc = (acc + mulmod(cm, pow, p)) % p;
        }
        Ok(acc)
    }

    /// Exact division in Z[A^{±1}]: returns `q` with `self = q * b` when such
    /// a quotient exists, `None` when it does not.
    ///
    /// Leading-term long division from the top exponent. The quotient of an
    /// exact division has support within `[min(a)-min(b), max(a)-max(b)]`, so
    /// a remainder whose top drifts below that window witnesses inexactness,
    /// as does a non-divisible leading coefficient.
    pub fn divide_exact(&self, b: &LaurentPoly) -> Result<Option<LaurentPoly>, SkeinError> {
        if b.is_zero() {
            return Err(SkeinError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero()));
        }
        let b_top = b.max_exp().unwrap();
        let b_lead = b.coeff(b_top);
        let low_bound = self.min_exp().unwrap() - b.min_exp().unwrap();
        let mut quot = Self::zero();
        let mut rem = self.clone();
        while let Some(r_top) = rem.max_exp() {
            let q_exp = r_top - b_top;
            if q_exp < low_bound {
                return Ok(None);
            }
            let r_lead = rem.coeff(r_top);
            let (q_coeff, leftover) = num_integer::div_rem(r_lead, b_lead.clone());
            if !leftover.is_zero() {
                return Ok(None);
            }
            let t = Self::monomial(q_exp, q_coeff);
            rem = &rem - &(&t * b);
            quot = &quot + &t;
        }
        Ok(Some(quot))
    }
}

pub(crate) fn mod_of_bigint(c: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((c % &m) + &m) % &m;
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    base %= p;
    let mut acc: u64 = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime, a nonzero mod p
    mod_pow(a, p - 2, p)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mag = c.abs();
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "A")?,
                (1, false) => write!(f, "{}A", mag)?,
                (_, true) => write!(f, "A^{}", e)?,
                (_, false) => write!(f, "{}A^{}", mag, e)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(pairs.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn add_cancels_inverse() {
        let a = lp(&[(1, 1)]);
        let b = lp(&[(1, -1)]);
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn add_merges_terms() {
        let a = lp(&[(1, 1), (-1, 1)]);
        let b = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(&a + &b, lp(&[(1, 2)]));
    }

    #[test]
    fn add_mirror_of_antisymmetric_is_zero() {
        // -A^3 + A^{-3} plus its own mirror
        let p = lp(&[(3, -1), (-3, 1)]);
        assert!((&p + &p.mirror()).is_zero());
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = lp(&[(1, 1), (-1, -1)]);
        let b = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(&a * &b, lp(&[(2, 1), (-2, -1)]));
        assert_eq!(&(-&a) * &b, lp(&[(2, -1), (-2, 1)]));
    }

    #[test]
    fn mul_telescoping_geometric() {
        // (-A + A^{-1}) * sum_{i=0}^{k+1} A^{-k-1+2i} = -A^{k+2} + A^{-k-2}, k = 3
        let k = 3i64;
        let f = lp(&[(1, -1), (-1, 1)]);
        let s = LaurentPoly::from_terms((0..=k + 1).map(|i| (-k - 1 + 2 * i, BigInt::one())));
        assert_eq!(&f * &s, lp(&[(k + 2, -1), (-k - 2, 1)]));
    }

    #[test]
    fn mirror_examples() {
        let p = lp(&[(3, -1), (-3, 1)]);
        assert_eq!(p.mirror(), lp(&[(-3, -1), (3, 1)]));
        // involution on 1 - A^{2i+4}, i = 1
        let q = lp(&[(0, 1), (6, -1)]);
        assert_eq!(q.mirror().mirror(), q);
    }

    #[test]
    fn breadth_examples() {
        assert_eq!(lp(&[(4, -1), (-4, 1)]).breadth().unwrap(), 8);
        let n = 2i64;
        assert_eq!(
            lp(&[(2 * n + 2, -1), (-2 * n - 2, 1)]).breadth().unwrap(),
            4 * n + 4
        );
        let f = lp(&[(2, -1), (-2, 1)]);
        let p = lp(&[(1, 1), (0, 1), (-1, 1)]);
        assert_eq!((&f * &p).breadth().unwrap(), 6);
        assert!(matches!(
            LaurentPoly::zero().breadth(),
            Err(SkeinError::BreadthUndefined)
        ));
    }

    #[test]
    fn eval_at_units() {
        for k in 1..12 {
            let p = lp(&[(k, -1), (-k, 1)]);
            assert!(p.eval_pm1(1).is_zero());
            assert!(p.eval_pm1(-1).is_zero());
        }
        // balanced geometric sum at A = 1 counts its terms: m = n = 1
        let (m, n) = (1i64, 1i64);
        let s =
            LaurentPoly::from_terms((0..=m + n + 1).map(|i| (-m - n - 1 + 2 * i, BigInt::one())));
        assert_eq!(s.eval_pm1(1), BigInt::from(m + n + 2));
    }

    #[test]
    fn eval_rational_rejects_zero() {
        let p = lp(&[(1, 1)]);
        assert!(p.eval_rational(&BigRational::zero()).is_err());
        let two = BigRational::from(BigInt::from(2));
        assert_eq!(p.eval_rational(&two).unwrap(), two);
        let q = lp(&[(-2, 3)]);
        assert_eq!(
            q.eval_rational(&two).unwrap(),
            BigRational::new(BigInt::from(3), BigInt::from(4))
        );
    }

    #[test]
    fn divide_exact_examples() {
        let a = lp(&[(2, 1), (-2, -1)]);
        let b = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(a.divide_exact(&b).unwrap().unwrap(), lp(&[(1, 1), (-1, 1)]));

        let a = lp(&[(0, 1), (6, -1)]);
        let b = lp(&[(3, -1), (-3, 1)]);
        let q = a.divide_exact(&b).unwrap().unwrap();
        assert_eq!(q, lp(&[(3, 1)]));
        assert_eq!(&q * &b, a);

        let a = lp(&[(2, 1), (0, 1)]);
        let b = lp(&[(1, 1), (0, 1)]);
        assert!(a.divide_exact(&b).unwrap().is_none());

        assert!(matches!(
            a.divide_exact(&LaurentPoly::zero()),
            Err(SkeinError::DivisionByZero)
        ));
    }

    #[test]
    fn eval_mod_matches_rational() {
        let p = lp(&[(3, 2), (-1, -5), (0, 7)]);
        let prime = 65537u64;
        let v = p.eval_mod(prime, 3).unwrap();
        // 2*27 - 5*inv(3) + 7 mod p
        let inv3 = mod_inv(3, prime);
        let expect = (54 + 7 + (prime - 5) * inv3 % prime) % prime;
        assert_eq!(v, expect % prime);
    }
}
