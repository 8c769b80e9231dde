//! The two torsion families: tau(m,n,q) annihilated by 1 - A^2, and the
//! e'_i family on the a1 axis annihilated by 1 - A^{2i+4}. Certificates
//! carry an exact membership witness for annihilator * element together
//! with evaluation witnesses at A = 1 and A = -1 showing the element is
//! nonzero in the quotient and that neither factor 1 -+ A annihilates
//! alone.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::elements::{Basis, MonomialIndex, SkeinElement};
use crate::laurent::LaurentPoly;
use crate::reduction::{reduce_a1_line, ReductionCertificate, RelatorSet};
use crate::relators::Relator;
use crate::SkeinError;

/// The balanced geometric sum with (-A + A^{-1}) * geo(k) = -A^k + A^{-k}.
/// geo(0) = 0 and geo(-k) = -geo(k).
pub fn geo(k: i64) -> LaurentPoly {
    if k == 0 {
        return LaurentPoly::zero();
    }
    if k < 0 {
        return -&geo(-k);
    }
    let mut p = LaurentPoly::zero();
    for i in 0..k {
        p = &p + &LaurentPoly::a_pow(-k + 1 + 2 * i);
    }
    p
}

/// tau(m,n,q): the four-term element whose product with -A + A^{-1} is
/// exactly the relator C(m,n)S_q(a2). Requires m, q >= 0; n is any integer.
pub fn tau(m: i64, n: i64, q: i64) -> Result<SkeinElement, SkeinError> {
    if m < 0 || q < 0 {
        return Err(SkeinError::BadRelatorParams { m, n, q });
    }
    let mut e = SkeinElement::zero(Basis::Chebyshev);
    e = &e + &SkeinElement::cheb_elem(m, q, n).scaled(&geo(m + n + 2));
    e = &e + &SkeinElement::cheb_elem(m - 1, q + 1, n - 1).scaled(&geo(m + n));
    e = &e + &SkeinElement::cheb_elem(m - 1, q - 1, n - 1).scaled(&geo(m + n));
    e = &e + &SkeinElement::cheb_elem(m - 2, q, n - 2).scaled(&geo(m + n - 2));
    Ok(e)
}

/// e'_i on the a1 axis: e'_1 = S_1, e'_2 = S_2, e'_i = S_i + e'_{i-2} for
/// i >= 3. All coefficients are 1.
pub fn eprime(i: i64) -> Result<SkeinElement, SkeinError> {
    if i < 1 {
        return Err(SkeinError::OutOfRange {
            what: "eprime",
            m: i,
            n: 0,
        });
    }
    let mut e = SkeinElement::zero(Basis::Chebyshev);
    let mut k = i;
    while k >= 1 {
        e = &e + &SkeinElement::cheb_elem(k, 0, 0);
        k -= 2;
    }
    Ok(e)
}

/// An evaluation witness at A = a: the element's coefficient at `monomial`
/// specializes to the nonzero integer `value`.
#[derive(Clone, Debug)]
pub struct EvalWitness {
    pub a: i8,
    pub monomial: MonomialIndex,
    pub value: BigInt,
}

impl EvalWitness {
    fn check(&self, e: &SkeinElement) -> Result<(), SkeinError> {
        if self.value.is_zero() {
            return Err(SkeinError::CertificateInvalid(
                "evaluation witness value is zero".into(),
            ));
        }
        let got = e.coeff(&self.monomial).eval_pm1(self.a);
        if got == self.value {
            Ok(())
        } else {
            Err(SkeinError::CertificateInvalid(format!(
                "evaluation witness mismatch: expected {}, got {}",
                self.value, got
            )))
        }
    }

    /// Largest monomial whose coefficient is nonzero at A = a.
    fn find(e: &SkeinElement, a: i8) -> Option<Self> {
        let terms: Vec<_> = e.terms().collect();
        terms.into_iter().rev().find_map(|(mon, coeff)| {
            let value = coeff.eval_pm1(a);
            if value.is_zero() {
                None
            } else {
                Some(EvalWitness {
                    a,
                    monomial: *mon,
                    value,
                })
            }
        })
    }
}

/// How annihilator * element is expressed in the relator span.
#[derive(Clone, Debug)]
pub enum MembershipWitness {
    /// annihilator * element = multiplier * relator, as a single identity.
    DirectIdentity {
        relator: Relator,
        multiplier: LaurentPoly,
    },
    /// annihilator * element reduces to residue 0 against the C(k,0) line
    /// for 1 <= k <= max_k.
    A1LineReduction {
        cert: ReductionCertificate,
        max_k: i64,
    },
}

#[derive(Clone, Debug)]
pub struct TorsionCertificate {
    pub element: SkeinElement,
    pub annihilator: LaurentPoly,
    pub membership: MembershipWitness,
    /// element is nonzero in the quotient (Laurent coefficient surviving
    /// specialization at A = 1 or A = -1).
    pub nonzero: EvalWitness,
    /// (1 + A) * element survives at A = 1 and (1 - A) * element at
    /// A = -1, so neither factor of 1 - A^2 annihilates by itself.
    pub strictness: [EvalWitness; 2],
}

impl TorsionCertificate {
    /// Recomputes every claim from scratch.
    pub fn verify(&self) -> Result<(), SkeinError> {
        if self.element.is_zero() {
            return Err(SkeinError::CertificateInvalid(
                "torsion element is zero".into(),
            ));
        }
        if self.annihilator.is_zero() {
            return Err(SkeinError::CertificateInvalid("annihilator is zero".into()));
        }
        let product = self.element.scaled(&self.annihilator);
        match &self.membership {
            MembershipWitness::DirectIdentity {
                relator,
                multiplier,
            } => {
                let recomputed = match relator.family {
                    crate::relators::Family::C => {
                        Relator::new_c(relator.m, relator.n, relator.q)?
                    }
                    crate::relators::Family::Cbar => {
                        Relator::new_cbar(relator.q, relator.n, relator.m)?
                    }
                };
                if recomputed.element != relator.element {
                    return Err(SkeinError::CertificateInvalid(
                        "stored relator does not recompute".into(),
                    ));
                }
                if product != relator.element.scaled(multiplier) {
                    return Err(SkeinError::CertificateInvalid(
                        "direct identity does not hold".into(),
                    ));
                }
            }
            MembershipWitness::A1LineReduction { cert, max_k } => {
                if cert.input != product {
                    return Err(SkeinError::CertificateInvalid(
                        "reduction input is not annihilator * element".into(),
                    ));
                }
                if !cert.is_member() {
                    return Err(SkeinError::CertificateInvalid(
                        "reduction residue is nonzero".into(),
                    ));
                }
                cert.verify(&RelatorSet::a1_line(*max_k))?;
            }
        }
        self.nonzero.check(&self.element)?;
        let one_plus = &LaurentPoly::one() + &LaurentPoly::a_pow(1);
        let one_minus = &LaurentPoly::one() - &LaurentPoly::a_pow(1);
        let w = &self.strictness[0];
        if w.a != 1 {
            return Err(SkeinError::CertificateInvalid(
                "first strictness witness must evaluate at A = 1".into(),
            ));
        }
        w.check(&self.element.scaled(&one_plus))?;
        let w = &self.strictness[1];
        if w.a != -1 {
            return Err(SkeinError::CertificateInvalid(
                "second strictness witness must evaluate at A = -1".into(),
            ));
        }
        w.check(&self.element.scaled(&one_minus))?;
        Ok(())
    }
}

fn strictness_witnesses(e: &SkeinElement) -> Result<[EvalWitness; 2], SkeinError> {
    let one_plus = &LaurentPoly::one() + &LaurentPoly::a_pow(1);
    let one_minus = &LaurentPoly::one() - &LaurentPoly::a_pow(1);
    let w_plus = EvalWitness::find(&e.scaled(&one_plus), 1).ok_or_else(|| {
        SkeinError::CertificateInvalid("(1+A) * element vanishes at A = 1".into())
    })?;
    let w_minus = EvalWitness::find(&e.scaled(&one_minus), -1).ok_or_else(|| {
        SkeinError::CertificateInvalid("(1-A) * element vanishes at A = -1".into())
    })?;
    Ok([w_plus, w_minus])
}

/// Certificate that tau(m,n,q) is a nonzero (1 - A^2)-torsion element:
/// (1 - A^2) tau = A * C(m,n)S_q(a2). Rejects (m,n) = (0,0) and any
/// parameters where tau vanishes identically.
pub fn certify_tau(m: i64, n: i64, q: i64) -> Result<TorsionCertificate, SkeinError> {
    if (m, n) == (0, 0) {
        return Err(SkeinError::CertificateInvalid(
            "tau(0,0,q) is identically zero".into(),
        ));
    }
    let element = tau(m, n, q)?;
    if element.is_zero() {
        return Err(SkeinError::CertificateInvalid(format!(
            "tau({},{},{}) is identically zero",
            m, n, q
        )));
    }
    let annihilator = &LaurentPoly::one() - &LaurentPoly::a_pow(2);
    let relator = Relator::new_c(m, n, q)?;
    let multiplier = LaurentPoly::a_pow(1);
    if element.scaled(&annihilator) != relator.element.scaled(&multiplier) {
        return Err(SkeinError::CertificateInvalid(
            "membership identity failed to hold".into(),
        ));
    }
    let nonzero = EvalWitness::find(&element, 1)
        .or_else(|| EvalWitness::find(&element, -1))
        .ok_or_else(|| {
            SkeinError::CertificateInvalid("no nonzero evaluation witness at A = +-1".into())
        })?;
    let strictness = strictness_witnesses(&element)?;
    let cert = TorsionCertificate {
        element,
        annihilator,
        membership: MembershipWitness::DirectIdentity {
            relator,
            multiplier,
        },
        nonzero,
        strictness,
    };
    cert.verify()?;
    Ok(cert)
}

/// Certificate that e'_i is (1 - A^{2i+4})-torsion: the product reduces to
/// residue 0 against the C(k,0) line.
pub fn certify_eprime(i: i64) -> Result<TorsionCertificate, SkeinError> {
    let element = eprime(i)?;
    let annihilator = &LaurentPoly::one() - &LaurentPoly::a_pow(2 * i + 4);
    let product = element.scaled(&annihilator);
    let (_, cert) = reduce_a1_line(&product)?;
    if !cert.is_member() {
        return Err(SkeinError::CertificateInvalid(format!(
            "(1 - A^{})e'_{} did not reduce to zero",
            2 * i + 4,
            i
        )));
    }
    let nonzero = EvalWitness::find(&element, 1).ok_or_else(|| {
        SkeinError::CertificateInvalid("no nonzero evaluation witness at A = 1".into())
    })?;
    let strictness = strictness_witnesses(&element)?;
    let cert = TorsionCertificate {
        element,
        annihilator,
        membership: MembershipWitness::A1LineReduction { cert, max_k: i },
        nonzero,
        strictness,
    };
    cert.verify()?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relators::relator_coeff;

    #[test]
    fn geo_examples() {
        // geo(2) = A + A^-1
        assert_eq!(geo(2), &LaurentPoly::a_pow(1) + &LaurentPoly::a_pow(-1));
        assert!(geo(0).is_zero());
        assert_eq!(geo(-3), -&geo(3));
        assert_eq!(geo(4).eval_pm1(1), BigInt::from(4));
        // (-A + A^-1) geo(k) = -A^k + A^-k
        let unit = &LaurentPoly::a_pow(-1) - &LaurentPoly::a_pow(1);
        for k in -8..=8 {
            assert_eq!(&unit * &geo(k), relator_coeff(k), "k = {}", k);
        }
    }

    #[test]
    fn tau_examples() {
        assert!(tau(0, 0, 3).unwrap().is_zero());

        let t = tau(1, 1, 0).unwrap();
        let mut expect = SkeinElement::zero(Basis::Chebyshev);
        expect.add_term(MonomialIndex::new(1, 0, 1), geo(4));
        expect.add_term(MonomialIndex::new(0, 1, 0), geo(2));
        assert_eq!(t, expect);

        assert!(tau(-1, 0, 0).is_err());
    }

    #[test]
    fn tau_times_unit_is_relator() {
        let unit = &LaurentPoly::a_pow(-1) - &LaurentPoly::a_pow(1);
        for m in 0..=5 {
            for n in -5..=5 {
                for q in 0..=3 {
                    let t = tau(m, n, q).unwrap();
                    let r = Relator::new_c(m, n, q).unwrap();
                    assert_eq!(t.scaled(&unit), r.element, "({},{},{})", m, n, q);
                }
            }
        }
    }

    #[test]
    fn eprime_examples() {
        assert_eq!(eprime(1).unwrap(), SkeinElement::cheb_elem(1, 0, 0));
        let e3 = eprime(3).unwrap();
        let expect = &SkeinElement::cheb_elem(3, 0, 0) + &SkeinElement::cheb_elem(1, 0, 0);
        assert_eq!(e3, expect);
        let e5 = eprime(5).unwrap();
        assert_eq!(e5.num_terms(), 3);
        assert!(eprime(0).is_err());
    }

    #[test]
    fn certify_tau_basic() {
        let cert = certify_tau(1, 1, 0).unwrap();
        assert_eq!(
            cert.annihilator,
            &LaurentPoly::one() - &LaurentPoly::a_pow(2)
        );
        // top-monomial coefficient at A = 1 is m + n + 2 = 4
        assert_eq!(cert.nonzero.a, 1);
        assert_eq!(cert.nonzero.value, BigInt::from(4));
        cert.verify().unwrap();

        assert!(certify_tau(0, 0, 3).is_err());
        // tau(1,-1,0) cancels termwise, so no certificate exists
        assert!(certify_tau(1, -1, 0).is_err());
        // tau(2,-2,1) survives even though C(2,-2) has a degenerate lead
        certify_tau(2, -2, 1).unwrap().verify().unwrap();
    }

    #[test]
    fn certify_tau_witness_is_top_coefficient() {
        for m in 1..=4 {
            for n in 0..=4i64 {
                let cert = certify_tau(m, n, 1).unwrap();
                let (top, _) = cert.element.max_term().unwrap();
                assert_eq!(cert.nonzero.monomial, top);
                assert_eq!(cert.nonzero.value, BigInt::from(m + n + 2));
            }
        }
    }

    #[test]
    fn certify_eprime_small() {
        let cert = certify_eprime(1).unwrap();
        assert_eq!(
            cert.annihilator,
            &LaurentPoly::one() - &LaurentPoly::a_pow(6)
        );
        match &cert.membership {
            MembershipWitness::A1LineReduction { cert, .. } => {
                assert_eq!(cert.steps.len(), 1);
                assert_eq!(cert.steps[0].multiplier, LaurentPoly::a_pow(3));
            }
            _ => panic!("expected reduction witness"),
        }
        cert.verify().unwrap();

        for i in 2..=6 {
            certify_eprime(i).unwrap().verify().unwrap();
        }
        assert!(certify_eprime(0).is_err());
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut cert = certify_tau(2, 1, 0).unwrap();
        cert.nonzero.value += 1;
        assert!(cert.verify().is_err());

        let mut cert = certify_eprime(2).unwrap();
        cert.annihilator = LaurentPoly::one();
        assert!(cert.verify().is_err());
    }
}
