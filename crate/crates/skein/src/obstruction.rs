//! Mechanical replay of the non-splitting argument. A hypothetical
//! splitting map iota sends each basis element S_i(a1)S_k(a3)S_j(a2) to a
//! free-part value alpha indexed by the same triple; every relator imposes
//! a vanishing linear form on the alphas. The verifier derives the
//! vanishing lemmas and the two-term descent recurrence up to a requested
//! depth and checks that each link drops the breadth by exactly 4, which
//! is the contradiction (breadths are nonnegative).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::elements::{MonomialIndex, SkeinElement};
use crate::laurent::LaurentPoly;
use crate::relators::{relator_coeff, Family, Relator};
use crate::torsion::EvalWitness;
use crate::SkeinError;

/// A linear form sum f_idx(A) * alpha_idx = 0 obtained from a relator.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaConstraint {
    pub terms: BTreeMap<MonomialIndex, LaurentPoly>,
}

/// Coefficientwise transcription of a relator into alpha variables.
pub fn extract_constraint(r: &Relator) -> AlphaConstraint {
    AlphaConstraint {
        terms: r
            .element
            .terms()
            .map(|(mon, coeff)| (*mon, coeff.clone()))
            .collect(),
    }
}

#[derive(Clone, Debug)]
pub enum Justification {
    /// A single-term constraint f * alpha = 0 with f nonzero in the
    /// integral domain.
    DomainCancellation { multiplier: LaurentPoly },
    /// All terms but the target were already established zero; the
    /// remaining multiplier cancels.
    Substitution { multiplier: LaurentPoly },
    /// Two-term relation u * alpha_target + v * alpha_partner = 0 with
    /// breadth(u) = breadth(v) + drop, forcing the breadth of the target
    /// below that of the partner if both are nonzero.
    Breadth {
        u: LaurentPoly,
        v: LaurentPoly,
        drop: i64,
    },
}

#[derive(Clone, Debug)]
pub struct DescentStep {
    pub lemma: &'static str,
    pub family: Family,
    pub m: i64,
    pub n: i64,
    pub q: i64,
    pub constraint: AlphaConstraint,
    /// The alpha index this step is about.
    pub target: MonomialIndex,
    pub justification: Justification,
}

#[derive(Clone, Debug)]
pub struct DescentCertificate {
    pub depth: i64,
    pub steps: Vec<DescentStep>,
}

impl DescentCertificate {
    /// Replays every step from scratch: reconstructs the relator, compares
    /// the stored constraint, and re-runs the zero-set bookkeeping and
    /// breadth arithmetic.
    pub fn verify(&self) -> Result<(), SkeinError> {
        let mut zero: BTreeSet<MonomialIndex> = BTreeSet::new();
        let mut links = 0i64;
        for step in &self.steps {
            let relator = match step.family {
                Family::C => Relator::new_c(step.m, step.n, step.q)?,
                Family::Cbar => Relator::new_cbar(step.q, step.n, step.m)?,
            };
            if extract_constraint(&relator) != step.constraint {
                return Err(SkeinError::DescentInvalid(format!(
                    "constraint for {}({},{})S_{} does not recompute",
                    step.family, step.m, step.n, step.q
                )));
            }
            match &step.justification {
                Justification::DomainCancellation { multiplier }
                | Justification::Substitution { multiplier } => {
                    if multiplier.is_zero() {
                        return Err(SkeinError::DescentInvalid(
                            "zero cancellation multiplier".into(),
                        ));
                    }
                    if step.constraint.terms.get(&step.target) != Some(multiplier) {
                        return Err(SkeinError::DescentInvalid(
                            "multiplier is not the target's coefficient".into(),
                        ));
                    }
                    for idx in step.constraint.terms.keys() {
                        if *idx != step.target && !zero.contains(idx) {
                            return Err(SkeinError::DescentInvalid(format!(
                                "unresolved alpha term {:?}",
                                idx
                            )));
                        }
                    }
                    zero.insert(step.target);
                }
                Justification::Breadth { u, v, drop } => {
                    let mut remaining = step.constraint.terms.clone();
                    remaining.retain(|idx, _| !zero.contains(idx));
                    if remaining.len() != 2 {
                        return Err(SkeinError::DescentInvalid(
                            "recurrence does not reduce to two terms".into(),
                        ));
                    }
                    let got_u = remaining.get(&step.target).ok_or_else(|| {
                        SkeinError::DescentInvalid("target missing from recurrence".into())
                    })?;
                    if got_u != u {
                        return Err(SkeinError::DescentInvalid("u multiplier mismatch".into()));
                    }
                    let (_, got_v) = remaining
                        .iter()
                        .find(|(idx, _)| **idx != step.target)
                        .expect("two terms");
                    if got_v != v {
                        return Err(SkeinError::DescentInvalid("v multiplier mismatch".into()));
                    }
                    let actual = u.breadth()? - v.breadth()?;
                    if actual != *drop || *drop <= 0 {
                        return Err(SkeinError::DescentInvalid(format!(
                            "breadth drop {} does not match claimed {}",
                            actual, drop
                        )));
                    }
                    links += 1;
                }
            }
        }
        if links != self.depth {
            return Err(SkeinError::DescentInvalid(format!(
                "expected {} descent links, found {}",
                self.depth, links
            )));
        }
        Ok(())
    }

    /// Human-readable trace, one line per step.
    pub fn trace(&self) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            let t = step.target;
            let head = match step.family {
                Family::C => format!(
                    "{:>3}. [{}] C({},{})S_{}(a2): ",
                    i + 1,
                    step.lemma,
                    step.m,
                    step.n,
                    step.q
                ),
                Family::Cbar => format!(
                    "{:>3}. [{}] Cbar({},{})S_{}(a1): ",
                    i + 1,
                    step.lemma,
                    step.q,
                    step.n,
                    step.m
                ),
            };
            let body = match &step.justification {
                Justification::DomainCancellation { multiplier } => format!(
                    "alpha({},{},{}) = 0  (cancel {})",
                    t.i, t.k, t.j, multiplier
                ),
                Justification::Substitution { multiplier } => format!(
                    "alpha({},{},{}) = 0  (substitute knowns, cancel {})",
                    t.i, t.k, t.j, multiplier
                ),
                Justification::Breadth { u, v, drop } => format!(
                    "({})*alpha({},{},{}) + ({})*alpha({},{},{}) = 0, breadth drop {}",
                    u,
                    t.i,
                    t.k,
                    t.j,
                    v,
                    t.i - 1,
                    t.k - 1,
                    t.j - 1,
                    drop
                ),
            };
            out.push_str(&head);
            out.push_str(&body);
            out.push('\n');
        }
        out
    }
}

struct DescentBuilder {
    zero: BTreeSet<MonomialIndex>,
    steps: Vec<DescentStep>,
}

impl DescentBuilder {
    /// alpha index of S_m(a1)S_m(a3)S_n(a2).
    fn diag_idx(m: i64, n: i64) -> MonomialIndex {
        MonomialIndex::new(m as u32, n as u32, m as u32)
    }

    /// Establishes alpha_{0,0,k} = 0 for 1 <= k <= up_to via the barred
    /// relators Cbar(k,0)S_0(a1), in increasing k (the lemma's induction).
    fn chain_a2_axis(&mut self, up_to: i64) -> Result<(), SkeinError> {
        for k in 1..=up_to {
            let target = MonomialIndex::new(0, k as u32, 0);
            if self.zero.contains(&target) {
                continue;
            }
            let relator = Relator::new_cbar(k, 0, 0)?;
            let constraint = extract_constraint(&relator);
            let multiplier = constraint.terms.get(&target).cloned().ok_or_else(|| {
                SkeinError::DescentInvalid(format!("Cbar({},0)S_0 misses alpha(0,0,{})", k, k))
            })?;
            if multiplier != relator_coeff(k + 2) {
                return Err(SkeinError::DescentInvalid(format!(
                    "unexpected multiplier on alpha(0,0,{})",
                    k
                )));
            }
            for idx in constraint.terms.keys() {
                if *idx != target && !self.zero.contains(idx) {
                    return Err(SkeinError::DescentInvalid(format!(
                        "Cbar({},0)S_0 has unresolved term {:?}",
                        k, idx
                    )));
                }
            }
            let justification = if constraint.terms.len() == 1 {
                Justification::DomainCancellation { multiplier }
            } else {
                Justification::Substitution { multiplier }
            };
            self.steps.push(DescentStep {
                lemma: "a2-axis vanishing",
                family: Family::Cbar,
                m: 0,
                n: 0,
                q: k,
                constraint,
                target,
                justification,
            });
            self.zero.insert(target);
        }
        Ok(())
    }

    /// Establishes alpha_{m,m,n} = 0 for n > m >= 0 by induction on
    /// t = n + 2m via the relator C(m,m)S_n(a2).
    fn establish_diag(&mut self, m: i64, n: i64) -> Result<(), SkeinError> {
        debug_assert!(n > m && m >= 0);
        let target = Self::diag_idx(m, n);
        if self.zero.contains(&target) {
            return Ok(());
        }
        if m == 0 {
            return self.chain_a2_axis(n);
        }
        // prerequisites, each with strictly smaller t
        self.establish_diag(m - 1, n + 1)?;
        self.establish_diag(m - 1, n - 1)?;
        if m >= 2 {
            self.establish_diag(m - 2, n)?;
        }
        let relator = Relator::new_c(m, m, n)?;
        let constraint = extract_constraint(&relator);
        let multiplier = constraint.terms.get(&target).cloned().ok_or_else(|| {
            SkeinError::DescentInvalid(format!("C({0},{0})S_{1} misses its top alpha", m, n))
        })?;
        if multiplier != relator_coeff(2 * m + 2) {
            return Err(SkeinError::DescentInvalid(format!(
                "unexpected multiplier on alpha({0},{0},{1})",
                m, n
            )));
        }
        for idx in constraint.terms.keys() {
            if *idx != target && !self.zero.contains(idx) {
                return Err(SkeinError::DescentInvalid(format!(
                    "C({0},{0})S_{1} has unresolved term {2:?}",
                    m, n, idx
                )));
            }
        }
        self.steps.push(DescentStep {
            lemma: "diagonal vanishing",
            family: Family::C,
            m,
            n: m,
            q: n,
            constraint,
            target,
            justification: Justification::Substitution { multiplier },
        });
        self.zero.insert(target);
        Ok(())
    }

    /// The descent link for n >= 1: from C(n,n)S_n(a2), after substituting
    /// the established zeros, exactly
    /// u_n * alpha_{n,n,n} + v_n * alpha_{n-1,n-1,n-1} = 0
    /// remains, with u_n = -A^{2n+2}+A^{-2n-2}, v_n = -A^{2n}+A^{-2n}.
    fn link(&mut self, n: i64) -> Result<(), SkeinError> {
        self.establish_diag(n - 1, n + 1)?;
        if n >= 2 {
            self.establish_diag(n - 2, n)?;
        }
        let relator = Relator::new_c(n, n, n)?;
        let constraint = extract_constraint(&relator);
        let target = Self::diag_idx(n, n);
        let partner = Self::diag_idx(n - 1, n - 1);
        let mut remaining = constraint.terms.clone();
        remaining.retain(|idx, _| !self.zero.contains(idx));
        let keys: Vec<MonomialIndex> = remaining.keys().copied().collect();
        if keys != vec![partner, target] {
            return Err(SkeinError::DescentInvalid(format!(
                "link {} does not reduce to the two diagonal alphas",
                n
            )));
        }
        let u = remaining[&target].clone();
        let v = remaining[&partner].clone();
        if u != relator_coeff(2 * n + 2) || v != relator_coeff(2 * n) {
            return Err(SkeinError::DescentInvalid(format!(
                "link {} multipliers differ from the stated u_n, v_n",
                n
            )));
        }
        let drop = u.breadth()? - v.breadth()?;
        if drop != 4 {
            return Err(SkeinError::DescentInvalid(format!(
                "link {} breadth drop is {}, expected 4",
                n, drop
            )));
        }
        self.steps.push(DescentStep {
            lemma: "descent link",
            family: Family::C,
            m: n,
            n,
            q: n,
            constraint,
            target,
            justification: Justification::Breadth { u, v, drop },
        });
        Ok(())
    }
}

/// Builds and checks the descent certificate: the vanishing lemmas feeding
/// each of the `depth` two-term links, every multiplier verified nonzero,
/// every link dropping the breadth by exactly 4.
pub fn verify_descent(depth: i64) -> Result<DescentCertificate, SkeinError> {
    if depth < 1 {
        return Err(SkeinError::OutOfRange {
            what: "verify_descent",
            m: depth,
            n: 0,
        });
    }
    let mut builder = DescentBuilder {
        zero: BTreeSet::new(),
        steps: Vec::new(),
    };
    for n in 1..=depth {
        builder.link(n)?;
    }
    let cert = DescentCertificate {
        depth,
        steps: builder.steps,
    };
    cert.verify()?;
    Ok(cert)
}

/// If any coefficient of e survives specialization at A = 1 or A = -1, the
/// element is provably nonzero in the quotient (relator coefficients all
/// vanish there). Returns the witness, or None when inconclusive.
pub fn certify_nonzero_mod_relations(e: &SkeinElement) -> Option<EvalWitness> {
    let cheb = e.to_chebyshev();
    let terms: Vec<_> = cheb.terms().collect();
    for a in [1i8, -1] {
        for &(mon, coeff) in terms.iter().rev() {
            let value: BigInt = coeff.eval_pm1(a);
            if !value.is_zero() {
                return Some(EvalWitness {
                    a,
                    monomial: *mon,
                    value,
                });
            }
        }
    }
    None
}
