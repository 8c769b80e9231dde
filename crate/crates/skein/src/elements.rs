//! Elements of the free Z[A^{±1}]-module on triples (i,j,k), the skein
//! module of the thickened pair of pants, with both the monomial basis
//! a1^i a2^j a3^k and the Chebyshev basis S_i(a1)S_j(a2)S_k(a3).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::laurent::LaurentPoly;
use crate::SkeinError;

/// A basis triple: exponents/indices of a1, a2, a3 respectively.
///
/// Ordered by graded lexicographic order with variable priority
/// a1 > a3 > a2, so the maximum key of a term map is the leading monomial
/// used by the reduction engine.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIndex {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl MonomialIndex {
    pub fn new(i: u32, j: u32, k: u32) -> Self {
        Self { i, j, k }
    }

    pub fn origin() -> Self {
        Self { i: 0, j: 0, k: 0 }
    }

    pub fn degree(&self) -> u32 {
        self.i + self.j + self.k
    }
}

impl Ord for MonomialIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.i, self.k, self.j).cmp(&(
            other.degree(),
            other.i,
            other.k,
            other.j,
        ))
    }
}

impl PartialOrd for MonomialIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MonomialIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    Monomial,
    Chebyshev,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Monomial => write!(f, "monomial"),
            Basis::Chebyshev => write!(f, "chebyshev"),
        }
    }
}

/// Chebyshev polynomial of the second kind S_n, for any integer index,
/// as a dense coefficient vector (ascending powers). The zero polynomial
/// is the empty vector.
///
/// S_0 = 1, S_1 = x, S_{q+1} = x S_q - S_{q-1}; S_{-1} = 0, S_{-2} = -1,
/// and S_n = -S_{-n-2} for n <= -2.
pub fn chebyshev(n: i64) -> Vec<BigInt> {
    if n == -1 {
        return Vec::new();
    }
    if n < -1 {
        return chebyshev(-n - 2).into_iter().map(|c| -c).collect();
    }
    let mut prev: Vec<BigInt> = vec![BigInt::one()]; // S_0
    if n == 0 {
        return prev;
    }
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()]; // S_1
    for _ in 1..n {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (d, c) in cur.iter().enumerate() {
            next[d + 1] += c;
        }
        for (d, c) in prev.iter().enumerate() {
            next[d] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Resolve an extended Chebyshev index to (sign, nonnegative index), or
/// `None` when the polynomial is zero (index -1).
pub fn normalize_cheb_index(n: i64) -> Option<(i8, u32)> {
    if n >= 0 {
        Some((1, n as u32))
    } else if n == -1 {
        None
    } else {
        normalize_cheb_index(-n - 2).map(|(s, i)| (-s, i))
    }
}

/// An element of the free module on basis triples, in the indicated basis.
/// Canonical form: no stored coefficient is the zero Laurent polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct SkeinElement {
    basis: Basis,
    terms: BTreeMap<MonomialIndex, LaurentPoly>,
}

impl SkeinElement {
    pub fn zero(basis: Basis) -> Self {
        Self {
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The empty link: basis triple (0,0,0) with coefficient 1. The
    /// multiplicative identity in either basis.
    pub fn empty_link(basis: Basis) -> Self {
        Self::term(basis, MonomialIndex::origin(), LaurentPoly::one())
    }

    pub fn term(basis: Basis, idx: MonomialIndex, coeff: LaurentPoly) -> Self {
        let mut e = Self::zero(basis);
        e.add_term(idx, coeff);
        e
    }

    /// Generator curve a1, a2 or a3 (same single-term form in both bases).
    pub fn generator(basis: Basis, var: usize) -> Self {
        let idx = match var {
            1 => MonomialIndex::new(1, 0, 0),
            2 => MonomialIndex::new(0, 1, 0),
            3 => MonomialIndex::new(0, 0, 1),
            _ => panic!("generator index must be 1, 2 or 3"),
        };
        Self::term(basis, idx, LaurentPoly::one())
    }

    /// S_m(a1) S_q(a2) S_n(a3) with extended indices, in the Chebyshev
    /// basis: a single signed term, or zero when any index is -1.
    pub fn cheb_elem(m: i64, q: i64, n: i64) -> Self {
        let parts = (
            normalize_cheb_index(m),
            normalize_cheb_index(q),
            normalize_cheb_index(n),
        );
        match parts {
            (Some((s1, i)), Some((s2, j)), Some((s3, k))) => {
                let sign = i64::from(s1) * i64::from(s2) * i64::from(s3);
                Self::term(
                    Basis::Chebyshev,
                    MonomialIndex::new(i, j, k),
                    LaurentPoly::monomial(0, sign),
                )
            }
            _ => Self::zero(Basis::Chebyshev),
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonomialIndex, &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &MonomialIndex) -> LaurentPoly {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    /// Maximal monomial under the graded-lex order, with its coefficient.
    pub fn max_term(&self) -> Option<(MonomialIndex, &LaurentPoly)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// Maximal total degree over the support; `None` for zero.
    pub fn support_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn add_term(&mut self, idx: MonomialIndex, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx).or_default();
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn scaled(&self, f: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.basis);
        for (idx, c) in &self.terms {
            out.add_term(*idx, f * c);
        }
        out
    }

    /// Coefficientwise A -> A^{-1}.
    pub fn mirror(&self) -> Self {
        Self {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.mirror()))
                .collect(),
        }
    }

    /// Coefficientwise evaluation at A = ±1.
    pub fn eval_pm1(&self, a: i8) -> BTreeMap<MonomialIndex, BigInt> {
        self.terms
            .iter()
            .map(|(m, c)| (*m, c.eval_pm1(a)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    /// Coefficientwise evaluation at a nonzero rational A-value.
    pub fn eval_rational(
        &self,
        a: &BigRational,
    ) -> Result<BTreeMap<MonomialIndex, BigRational>, SkeinError> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = c.eval_rational(a)?;
            if !v.is_zero() {
                out.insert(*m, v);
            }
        }
        Ok(out)
    }

    /// Convert to the Chebyshev basis (identity if already there).
    pub fn to_chebyshev(&self) -> Self {
        match self.basis {
            Basis::Chebyshev => self.clone(),
            Basis::Monomial => self.convert(Basis::Chebyshev, &power_to_cheb),
        }
    }

    /// Convert to the monomial basis (identity if already there).
    pub fn to_monomial(&self) -> Self {
        match self.basis {
            Basis::Monomial => self.clone(),
            Basis::Chebyshev => self.convert(Basis::Monomial, &cheb_to_power),
        }
    }

    fn convert(&self, target: Basis, table: &dyn Fn(u32) -> Vec<(u32, BigInt)>) -> Self {
        let mut out = Self::zero(target);
        for (idx, coeff) in &self.terms {
            for (i2, c1) in table(idx.i) {
                for (j2, c2) in table(idx.j) {
                    for (k2, c3) in table(idx.k) {
                        let scale = &c1 * &c2 * &c3;
                        out.add_term(
                            MonomialIndex::new(i2, j2, k2),
                            coeff * &LaurentPoly::monomial(0, scale),
                        );
                    }
                }
            }
        }
        out
    }

    /// The commutative algebra product. Both operands must be in the same
    /// basis; the result stays in that basis.
    pub fn mul(&self, other: &SkeinElement) -> SkeinElement {
        assert_eq!(self.basis, other.basis, "basis mismatch in product");
        let mut out = Self::zero(self.basis);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let coeff = ca * cb;
                match self.basis {
                    Basis::Monomial => {
                        out.add_term(
                            MonomialIndex::new(ma.i + mb.i, ma.j + mb.j, ma.k + mb.k),
                            coeff,
                        );
                    }
                    Basis::Chebyshev => {
                        for i in product_to_sum(ma.i, mb.i) {
                            for j in product_to_sum(ma.j, mb.j) {
                                for k in product_to_sum(ma.k, mb.k) {
                                    out.add_term(MonomialIndex::new(i, j, k), coeff.clone());
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// S_p S_q = sum_t S_{|p-q|+2t}, t = 0..min(p,q).
fn product_to_sum(p: u32, q: u32) -> Vec<u32> {
    let lo = p.abs_diff(q);
    (0..=p.min(q)).map(|t| lo + 2 * t).collect()
}

/// x^p expanded in the S basis, as (index, coefficient) pairs.
fn power_to_cheb(p: u32) -> Vec<(u32, BigInt)> {
    let mut cur: BTreeMap<u32, BigInt> = BTreeMap::new();
    cur.insert(0, BigInt::one());
    for _ in 0..p {
        let mut next: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (q, c) in &cur {
            // x * S_q = S_{q+1} + S_{q-1}
            *next.entry(q + 1).or_default() += c;
            if *q >= 1 {
                *next.entry(q - 1).or_default() += c;
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    cur.into_iter().collect()
}

/// S_p expanded in powers of x, as (exponent, coefficient) pairs.
fn cheb_to_power(p: u32) -> Vec<(u32, BigInt)> {
    chebyshev(p as i64)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(d, c)| (d as u32, c))
        .collect()
}

impl Add for &SkeinElement {
    type Output = SkeinElement;
    fn add(self, rhs: &SkeinElement) -> SkeinElement {
        assert_eq!(self.basis, rhs.basis, "basis mismatch in sum");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &SkeinElement {
    type Output = SkeinElement;
    fn sub(self, rhs: &SkeinElement) -> SkeinElement {
        assert_eq!(self.basis, rhs.basis, "basis mismatch in difference");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &SkeinElement {
    type Output = SkeinElement;
    fn neg(self) -> SkeinElement {
        SkeinElement {
            basis: self.basis,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl fmt::Debug for SkeinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 [{}]", self.basis);
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| format!("({}) {}", c, m))
            .collect();
        write!(f, "{} [{}]", parts.join(" + "), self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(pairs.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn chebyshev_small_values() {
        assert_eq!(chebyshev(0), big(&[1]));
        assert_eq!(chebyshev(1), big(&[0, 1]));
        assert_eq!(chebyshev(2), big(&[-1, 0, 1])); // x^2 - 1
        assert_eq!(chebyshev(-1), big(&[]));
        assert_eq!(chebyshev(-2), big(&[-1]));
        assert_eq!(chebyshev(-3), big(&[0, -1])); // -x
    }

    #[test]
    fn chebyshev_recurrence_and_reflection() {
        for n in -20..=20i64 {
            // S_{n+1} = x S_n - S_{n-1}
            let sn = chebyshev(n);
            let mut x_sn = vec![BigInt::zero(); sn.len() + 1];
            for (d, c) in sn.iter().enumerate() {
                x_sn[d + 1] = c.clone();
            }
            let snm1 = chebyshev(n - 1);
            let snp1 = chebyshev(n + 1);
            let mut lhs = x_sn;
            for (d, c) in snm1.iter().enumerate() {
                if d >= lhs.len() {
                    lhs.resize(d + 1, BigInt::zero());
                }
                lhs[d] -= c;
            }
            while lhs.last().is_some_and(|c| c.is_zero()) {
                lhs.pop();
            }
            let mut rhs = snp1.clone();
            while rhs.last().is_some_and(|c| c.is_zero()) {
                rhs.pop();
            }
            assert_eq!(lhs, rhs, "recurrence fails at n = {}", n);

            // reflection S_n = -S_{-n-2}
            let refl: Vec<BigInt> = chebyshev(-n - 2).into_iter().map(|c| -c).collect();
            assert_eq!(chebyshev(n), refl, "reflection fails at n = {}", n);
        }
    }

    #[test]
    fn cheb_elem_examples() {
        let e = SkeinElement::cheb_elem(0, 0, 0);
        assert_eq!(e, SkeinElement::empty_link(Basis::Chebyshev));

        assert!(SkeinElement::cheb_elem(1, 0, -1).is_zero());

        let e = SkeinElement::cheb_elem(2, 0, -3);
        assert_eq!(
            e,
            SkeinElement::term(
                Basis::Chebyshev,
                MonomialIndex::new(2, 0, 1),
                lp(&[(0, -1)])
            )
        );
    }

    #[test]
    fn basis_conversion_examples() {
        // a1^2 = S_2(a1) + 1
        let sq = SkeinElement::term(
            Basis::Monomial,
            MonomialIndex::new(2, 0, 0),
            LaurentPoly::one(),
        );
        let cheb = sq.to_chebyshev();
        let mut expect = SkeinElement::cheb_elem(2, 0, 0);
        expect.add_term(MonomialIndex::origin(), LaurentPoly::one());
        assert_eq!(cheb, expect);

        let e = SkeinElement::empty_link(Basis::Chebyshev);
        assert_eq!(e.to_monomial(), SkeinElement::empty_link(Basis::Monomial));
    }

    #[test]
    fn conversion_round_trip() {
        let mut e = SkeinElement::zero(Basis::Monomial);
        e.add_term(MonomialIndex::new(3, 1, 2), lp(&[(2, 5), (-1, -3)]));
        e.add_term(MonomialIndex::new(0, 4, 0), lp(&[(0, 1)]));
        e.add_term(MonomialIndex::new(1, 0, 1), lp(&[(-7, 2)]));
        assert_eq!(e.to_chebyshev().to_monomial(), e);
    }

    #[test]
    fn mul_recurrence_in_a2() {
        // a2 * S_q(a2) = S_{q+1}(a2) + S_{q-1}(a2), q = 3
        let a2 = SkeinElement::generator(Basis::Chebyshev, 2);
        let sq = SkeinElement::cheb_elem(0, 3, 0);
        let prod = a2.mul(&sq);
        let expect = &SkeinElement::cheb_elem(0, 4, 0) + &SkeinElement::cheb_elem(0, 2, 0);
        assert_eq!(prod, expect);
    }

    #[test]
    fn mul_s1_squared() {
        let s1 = SkeinElement::cheb_elem(1, 0, 0);
        let expect = &SkeinElement::cheb_elem(2, 0, 0) + &SkeinElement::cheb_elem(0, 0, 0);
        assert_eq!(s1.mul(&s1), expect);
    }

    #[test]
    fn mul_identity() {
        let mut e = SkeinElement::zero(Basis::Chebyshev);
        e.add_term(MonomialIndex::new(2, 1, 0), lp(&[(3, 4)]));
        e.add_term(MonomialIndex::new(0, 0, 5), lp(&[(-2, 1)]));
        let one = SkeinElement::empty_link(Basis::Chebyshev);
        assert_eq!(one.mul(&e), e);
        assert_eq!(e.mul(&one), e);
    }

    #[test]
    fn mul_agrees_with_monomial_route() {
        let mut a = SkeinElement::zero(Basis::Chebyshev);
        a.add_term(MonomialIndex::new(2, 1, 3), lp(&[(1, 2)]));
        a.add_term(MonomialIndex::new(0, 2, 0), lp(&[(-3, 1)]));
        let mut b = SkeinElement::zero(Basis::Chebyshev);
        b.add_term(MonomialIndex::new(1, 1, 1), lp(&[(0, 1), (2, -1)]));
        let direct = a.mul(&b);
        let via_monomial = a.to_monomial().mul(&b.to_monomial()).to_chebyshev();
        assert_eq!(direct, via_monomial);
    }

    #[test]
    fn mirror_example() {
        // A a1 a3 + A^{-1} a2  <->  A^{-1} a1 a3 + A a2
        let mut e = SkeinElement::zero(Basis::Monomial);
        e.add_term(MonomialIndex::new(1, 0, 1), lp(&[(1, 1)]));
        e.add_term(MonomialIndex::new(0, 1, 0), lp(&[(-1, 1)]));
        let mut expect = SkeinElement::zero(Basis::Monomial);
        expect.add_term(MonomialIndex::new(1, 0, 1), lp(&[(-1, 1)]));
        expect.add_term(MonomialIndex::new(0, 1, 0), lp(&[(1, 1)]));
        assert_eq!(e.mirror(), expect);
        assert_eq!(e.mirror().mirror(), e);
    }

    #[test]
    fn eval_examples() {
        let e = SkeinElement::empty_link(Basis::Chebyshev);
        let two = BigRational::from(BigInt::from(2));
        let v = e.eval_rational(&two).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[&MonomialIndex::origin()], BigRational::one());
    }

    #[test]
    fn monomial_order_priority() {
        // graded first, then a1 > a3 > a2
        let a = MonomialIndex::new(0, 0, 2);
        let b = MonomialIndex::new(1, 0, 0);
        assert!(a > b); // degree wins
        let c = MonomialIndex::new(1, 1, 0);
        let d = MonomialIndex::new(0, 0, 2);
        assert!(c > d); // same degree, a1 wins
        let e = MonomialIndex::new(0, 1, 1);
        let f = MonomialIndex::new(0, 2, 0);
        assert!(e > f); // same degree, same a1, a3 wins
    }
}
