//! JSON wire format. All collections serialize in canonical order (terms
//! sorted by monomial index, exponents ascending), so output is byte-stable
//! across runs. Integer coefficients are emitted as exact JSON numbers of
//! unbounded size.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::elements::{Basis, SkeinElement};
use crate::laurent::LaurentPoly;
use crate::obstruction::{DescentCertificate, DescentStep, Justification};
use crate::reduction::{RankRow, ReductionCertificate, ReductionStep};
use crate::relators::Relator;
use crate::torsion::{EvalWitness, MembershipWitness, TorsionCertificate};

fn big(n: &num_bigint::BigInt) -> Number {
    Number::from_str(&n.to_string()).expect("decimal integer literal")
}

/// A Laurent polynomial as [[exponent, coefficient], ...], exponents
/// ascending.
pub fn poly_dto(p: &LaurentPoly) -> Vec<(i64, Number)> {
    p.terms().map(|(e, c)| (e, big(c))).collect()
}

#[derive(Serialize, Deserialize)]
pub struct TermDto {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub coeff: Vec<(i64, Number)>,
}

#[derive(Serialize, Deserialize)]
pub struct ElementDto {
    pub basis: String,
    pub terms: Vec<TermDto>,
}

impl From<&SkeinElement> for ElementDto {
    fn from(e: &SkeinElement) -> Self {
        ElementDto {
            basis: match e.basis() {
                Basis::Monomial => "monomial".to_string(),
                Basis::Chebyshev => "chebyshev".to_string(),
            },
            terms: e
                .terms()
                .map(|(m, c)| TermDto {
                    i: m.i,
                    j: m.j,
                    k: m.k,
                    coeff: poly_dto(c),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct LeadingDto {
    pub monomial: (u32, u32, u32),
    pub coeff: Vec<(i64, Number)>,
}

#[derive(Serialize)]
pub struct RelatorDto {
    pub family: String,
    pub m: i64,
    pub n: i64,
    pub q: i64,
    pub degenerate: bool,
    pub leading: Option<LeadingDto>,
    pub element: ElementDto,
}

impl From<&Relator> for RelatorDto {
    fn from(r: &Relator) -> Self {
        RelatorDto {
            family: r.family.to_string(),
            m: r.m,
            n: r.n,
            q: r.q,
            degenerate: r.leading.is_none(),
            leading: r.leading.as_ref().map(|(mon, coeff)| LeadingDto {
                monomial: (mon.i, mon.j, mon.k),
                coeff: poly_dto(coeff),
            }),
            element: (&r.element).into(),
        }
    }
}

#[derive(Serialize)]
pub struct ReductionStepDto {
    pub relator_id: usize,
    pub monomial: (u32, u32, u32),
    pub multiplier: Vec<(i64, Number)>,
}

impl From<&ReductionStep> for ReductionStepDto {
    fn from(s: &ReductionStep) -> Self {
        ReductionStepDto {
            relator_id: s.relator_id,
            monomial: (s.monomial.i, s.monomial.j, s.monomial.k),
            multiplier: poly_dto(&s.multiplier),
        }
    }
}

#[derive(Serialize)]
pub struct ReductionCertificateDto {
    pub member: bool,
    pub steps: Vec<ReductionStepDto>,
    pub residue: ElementDto,
    pub input: ElementDto,
}

impl From<&ReductionCertificate> for ReductionCertificateDto {
    fn from(c: &ReductionCertificate) -> Self {
        ReductionCertificateDto {
            member: c.is_member(),
            steps: c.steps.iter().map(Into::into).collect(),
            residue: (&c.residue).into(),
            input: (&c.input).into(),
        }
    }
}

#[derive(Serialize)]
pub struct EvalWitnessDto {
    pub a: i8,
    pub monomial: (u32, u32, u32),
    pub value: Number,
}

impl From<&EvalWitness> for EvalWitnessDto {
    fn from(w: &EvalWitness) -> Self {
        EvalWitnessDto {
            a: w.a,
            monomial: (w.monomial.i, w.monomial.j, w.monomial.k),
            value: big(&w.value),
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind")]
pub enum MembershipDto {
    #[serde(rename = "direct_identity")]
    DirectIdentity {
        relator: RelatorDto,
        multiplier: Vec<(i64, Number)>,
    },
    #[serde(rename = "a1_line_reduction")]
    A1LineReduction {
        max_k: i64,
        cert: ReductionCertificateDto,
    },
}

#[derive(Serialize)]
pub struct TorsionCertificateDto {
    pub annihilator: Vec<(i64, Number)>,
    pub element: ElementDto,
    pub membership: MembershipDto,
    pub nonzero: EvalWitnessDto,
    pub strictness: Vec<EvalWitnessDto>,
}

impl From<&TorsionCertificate> for TorsionCertificateDto {
    fn from(c: &TorsionCertificate) -> Self {
        TorsionCertificateDto {
            annihilator: poly_dto(&c.annihilator),
            element: (&c.element).into(),
            membership: match &c.membership {
                MembershipWitness::DirectIdentity {
                    relator,
                    multiplier,
                } => MembershipDto::DirectIdentity {
                    relator: relator.into(),
                    multiplier: poly_dto(multiplier),
                },
                MembershipWitness::A1LineReduction { cert, max_k } => {
                    MembershipDto::A1LineReduction {
                        max_k: *max_k,
                        cert: cert.into(),
                    }
                }
            },
            nonzero: (&c.nonzero).into(),
            strictness: c.strictness.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind")]
pub enum JustificationDto {
    #[serde(rename = "domain_cancellation")]
    DomainCancellation { multiplier: Vec<(i64, Number)> },
    #[serde(rename = "substitution")]
    Substitution { multiplier: Vec<(i64, Number)> },
    #[serde(rename = "breadth")]
    Breadth {
        u: Vec<(i64, Number)>,
        v: Vec<(i64, Number)>,
        drop: i64,
    },
}

#[derive(Serialize)]
pub struct DescentStepDto {
    pub lemma: &'static str,
    pub family: String,
    pub m: i64,
    pub n: i64,
    pub q: i64,
    pub target: (u32, u32, u32),
    pub constraint: Vec<TermDto>,
    pub justification: JustificationDto,
}

impl From<&DescentStep> for DescentStepDto {
    fn from(s: &DescentStep) -> Self {
        DescentStepDto {
            lemma: s.lemma,
            family: s.family.to_string(),
            m: s.m,
            n: s.n,
            q: s.q,
            target: (s.target.i, s.target.j, s.target.k),
            constraint: s
                .constraint
                .terms
                .iter()
                .map(|(m, c)| TermDto {
                    i: m.i,
                    j: m.j,
                    k: m.k,
                    coeff: poly_dto(c),
                })
                .collect(),
            justification: match &s.justification {
                Justification::DomainCancellation { multiplier } => {
                    JustificationDto::DomainCancellation {
                        multiplier: poly_dto(multiplier),
                    }
                }
                Justification::Substitution { multiplier } => JustificationDto::Substitution {
                    multiplier: poly_dto(multiplier),
                },
                Justification::Breadth { u, v, drop } => JustificationDto::Breadth {
                    u: poly_dto(u),
                    v: poly_dto(v),
                    drop: *drop,
                },
            },
        }
    }
}

#[derive(Serialize)]
pub struct DescentCertificateDto {
    pub depth: i64,
    pub steps: Vec<DescentStepDto>,
}

impl From<&DescentCertificate> for DescentCertificateDto {
    fn from(c: &DescentCertificate) -> Self {
        DescentCertificateDto {
            depth: c.depth,
            steps: c.steps.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct RankRowDto {
    #[serde(rename = "D")]
    pub d: u32,
    pub relators: usize,
    pub rank: usize,
}

impl From<&RankRow> for RankRowDto {
    fn from(r: &RankRow) -> Self {
        RankRowDto {
            d: r.d,
            relators: r.relators,
            rank: r.rank,
        }
    }
}

/// Parses an element back from its wire form.
pub fn element_from_dto(dto: &ElementDto) -> Result<SkeinElement, crate::SkeinError> {
    let basis = match dto.basis.as_str() {
        "monomial" => Basis::Monomial,
        "chebyshev" => Basis::Chebyshev,
        other => {
            return Err(crate::SkeinError::Parse(format!(
                "unknown basis {:?}",
                other
            )))
        }
    };
    let mut e = SkeinElement::zero(basis);
    for t in &dto.terms {
        let mut coeff = LaurentPoly::zero();
        for (exp, num) in &t.coeff {
            let c: num_bigint::BigInt = num
                .to_string()
                .parse()
                .map_err(|_| crate::SkeinError::Parse(format!("bad integer {}", num)))?;
            coeff = &coeff + &LaurentPoly::from_terms([(*exp, c)]);
        }
        e.add_term(crate::elements::MonomialIndex::new(t.i, t.j, t.k), coeff);
    }
    Ok(e)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn element_json_is_stable() {
        let r = Relator::new_c(1, 1, 0).unwrap();
        let dto: RelatorDto = (&r).into();
        let a = to_json(&dto);
        let dto2: RelatorDto = (&Relator::new_c(1, 1, 0).unwrap()).into();
        assert_eq!(a, to_json(&dto2));
        assert!(a.contains("\"family\": \"C\""));
        assert!(a.contains("chebyshev"));
    }

    #[test]
    fn big_integers_survive() {
        let huge: BigInt = BigInt::from(10).pow(40) + 7;
        let p = LaurentPoly::from_terms([(3, huge.clone())]);
        let dto = poly_dto(&p);
        let json = serde_json::to_string(&dto).unwrap();
        assert!(json.contains(&huge.to_string()));
    }

    #[test]
    fn torsion_certificate_serializes() {
        let cert = crate::torsion::certify_tau(1, 1, 0).unwrap();
        let dto: TorsionCertificateDto = (&cert).into();
        let json = to_json(&dto);
        assert!(json.contains("direct_identity"));

        let cert = crate::torsion::certify_eprime(2).unwrap();
        let json = to_json(&TorsionCertificateDto::from(&cert));
        assert!(json.contains("a1_line_reduction"));
    }

    #[test]
    fn descent_certificate_serializes() {
        let cert = crate::obstruction::verify_descent(1).unwrap();
        let json = to_json(&DescentCertificateDto::from(&cert));
        assert!(json.contains("breadth"));
        assert!(json.contains("domain_cancellation"));
    }
}
