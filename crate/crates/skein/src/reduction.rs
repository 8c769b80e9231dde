//! Leading-term reduction against indexed relator sets, with re-expandable
//! certificates, and exact rank computation of field-specialized truncated
//! relator matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::elements::{MonomialIndex, SkeinElement};
use crate::laurent::{mod_inv, mulmod, LaurentPoly};
use crate::relators::Relator;
use crate::SkeinError;

/// An ordered list of relators with an index from nondegenerate leading
/// monomials to relator ids. When two relators share a lead, the first one
/// pushed keeps the index slot; the later one is stored but not indexed.
pub struct RelatorSet {
    relators: Vec<Relator>,
    index: BTreeMap<MonomialIndex, usize>,
}

impl Default for RelatorSet {
    fn default() -> Self {
        Self::new()
    }
}

impl RelatorSet {
    pub fn new() -> Self {
        Self {
            relators: Vec::new(),
            index: BTreeMap::new(),
        }
    }

    /// The triangular family C(k,0) for 1 <= k <= max_k, indexed by their
    /// a1-axis leads S_k(a1).
    pub fn a1_line(max_k: i64) -> Self {
        let mut rs = Self::new();
        for k in 1..=max_k.max(0) {
            rs.push(Relator::new_c(k, 0, 0).expect("k >= 1"));
        }
        rs
    }

    /// Appends a relator, indexing its lead when nondegenerate and unclaimed.
    /// Returns the relator id.
    pub fn push(&mut self, r: Relator) -> usize {
        let id = self.relators.len();
        if let Some((mon, _)) = &r.leading {
            self.index.entry(*mon).or_insert(id);
        }
        self.relators.push(r);
        id
    }

    pub fn len(&self) -> usize {
        self.relators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relators.is_empty()
    }

    pub fn get(&self, id: usize) -> &Relator {
        &self.relators[id]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Relator> + '_ {
        self.relators.iter()
    }

    pub fn lookup(&self, mon: &MonomialIndex) -> Option<usize> {
        self.index.get(mon).copied()
    }
}

#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub relator_id: usize,
    pub monomial: MonomialIndex,
    pub multiplier: LaurentPoly,
}

/// Witness that input = residue + sum of multiplier * relator. Residue zero
/// certifies membership in the relator span; a nonzero residue is
/// inconclusive over the Laurent ring.
#[derive(Clone, Debug)]
pub struct ReductionCertificate {
    pub input: SkeinElement,
    pub steps: Vec<ReductionStep>,
    pub residue: SkeinElement,
}

impl ReductionCertificate {
    pub fn is_member(&self) -> bool {
        self.residue.is_zero()
    }

    /// Re-expands the steps and checks the defining identity exactly.
    pub fn verify(&self, rs: &RelatorSet) -> Result<(), SkeinError> {
        let mut acc = self.residue.clone();
        for step in &self.steps {
            let r = rs.get(step.relator_id);
            acc = &acc + &r.element.scaled(&step.multiplier);
        }
        if acc == self.input {
            Ok(())
        } else {
            Err(SkeinError::CertificateInvalid(
                "re-expansion does not reproduce the input".into(),
            ))
        }
    }
}

/// Top-down leading-term reduction. At each step the current maximal
/// monomial is eliminated when it matches an indexed lead and the exact
/// division of coefficients succeeds; otherwise reduction stops with the
/// partial residue. Terminates because the maximal monomial strictly
/// decreases.
pub fn reduce(e: &SkeinElement, rs: &RelatorSet) -> ReductionCertificate {
    let input = e.to_chebyshev();
    let mut current = input.clone();
    let mut steps = Vec::new();
    while let Some((mon, coeff)) = current.max_term() {
        let Some(id) = rs.lookup(&mon) else {
            break;
        };
        let lead = &rs.get(id).leading.as_ref().expect("indexed lead").1;
        let multiplier = match coeff.divide_exact(lead) {
            Ok(Some(g)) => g,
            _ => break,
        };
        current = &current - &rs.get(id).element.scaled(&multiplier);
        debug_assert!(current.coeff(&mon).is_zero());
        steps.push(ReductionStep {
            relator_id: id,
            monomial: mon,
            multiplier,
        });
    }
    ReductionCertificate {
        input,
        steps,
        residue: current,
    }
}

/// Reduces an element supported on Chebyshev powers of a1 alone against the
/// triangular family C(k,0). Returns the set used together with the
/// certificate so the latter stays re-expandable.
pub fn reduce_a1_line(e: &SkeinElement) -> Result<(RelatorSet, ReductionCertificate), SkeinError> {
    let cheb = e.to_chebyshev();
    let mut max_i: i64 = 0;
    for (mon, _) in cheb.terms() {
        if mon.j != 0 || mon.k != 0 {
            return Err(SkeinError::NotA1Line);
        }
        max_i = max_i.max(mon.i as i64);
    }
    let rs = RelatorSet::a1_line(max_i);
    let cert = reduce(&cheb, &rs);
    Ok((rs, cert))
}

/// Field arithmetic needed by Gaussian elimination.
pub trait FieldElem: Clone + PartialEq {
    fn is_zero_elem(&self) -> bool;
    fn div_elem(&self, other: &Self) -> Self;
    /// self - factor * other
    fn sub_mul(&self, factor: &Self, other: &Self) -> Self;
}

impl FieldElem for BigRational {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn div_elem(&self, other: &Self) -> Self {
        self / other
    }
    fn sub_mul(&self, factor: &Self, other: &Self) -> Self {
        self - factor * other
    }
}

/// An element of the prime field Z/p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp {
    pub val: u64,
    pub p: u64,
}

impl FieldElem for Fp {
    fn is_zero_elem(&self) -> bool {
        self.val == 0
    }
    fn div_elem(&self, other: &Self) -> Self {
        Fp {
            val: mulmod(self.val, mod_inv(other.val, self.p), self.p),
            p: self.p,
        }
    }
    fn sub_mul(&self, factor: &Self, other: &Self) -> Self {
        let prod = mulmod(factor.val, other.val, self.p);
        Fp {
            val: (self.val + self.p - prod) % self.p,
            p: self.p,
        }
    }
}

/// Rank of a dense row matrix by Gaussian elimination with first-nonzero
/// pivoting (deterministic).
pub fn matrix_rank<T: FieldElem>(mut rows: Vec<Vec<T>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero_elem()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        let pivot_val = pivot_row[col].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero_elem() {
                continue;
            }
            let factor = row[col].div_elem(&pivot_val);
            for c in col..ncols {
                row[c] = row[c].sub_mul(&factor, &pivot_row[c]);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// How to evaluate the Laurent coefficients for rank experiments.
#[derive(Clone, Debug)]
pub enum Specialization {
    Rational(BigRational),
    Prime { p: u64, a: u64 },
}

impl Specialization {
    pub fn rational_int(a: i64) -> Self {
        Specialization::Rational(BigRational::from_integer(BigInt::from(a)))
    }

    fn check(&self) -> Result<(), SkeinError> {
        let zero = match self {
            Specialization::Rational(a) => a.is_zero(),
            Specialization::Prime { p, a } => a % p == 0,
        };
        if zero {
            Err(SkeinError::ZeroSpecialization)
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankRow {
    pub d: u32,
    pub relators: usize,
    pub rank: usize,
}

/// Assembles, for each truncation degree D' <= max_d, all distinct relators
/// of both families whose full Chebyshev support has total degree <= D',
/// specializes A, and records the exact rank. Enumeration covers m,q up to
/// max_d + 1 and |n| up to max_d + 3, which exhausts every relator that can
/// pass the degree filter at these sizes.
pub fn rank_table(spec: &Specialization, max_d: u32) -> Result<Vec<RankRow>, SkeinError> {
    spec.check()?;
    let bound_mq = max_d as i64 + 1;
    let bound_n = max_d as i64 + 3;

    // deterministic enumeration order: family, then (m, n, q)
    let mut pool: Vec<SkeinElement> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut push_unique = |pool: &mut Vec<SkeinElement>, e: SkeinElement| {
        if e.is_zero() {
            return;
        }
        type DedupKey = Vec<((u32, u32, u32), Vec<(i64, BigInt)>)>;
        let key: DedupKey = e
            .terms()
            .map(|(m, c)| {
                (
                    (m.i, m.j, m.k),
                    c.terms().map(|(x, v)| (x, v.clone())).collect(),
                )
            })
            .collect();
        if seen.insert(key) {
            pool.push(e);
        }
    };
    for m in 0..=bound_mq {
        for n in -bound_n..=bound_n {
            for q in 0..=bound_mq {
                push_unique(&mut pool, Relator::new_c(m, n, q).expect("range").element);
            }
        }
    }
    for q in 0..=bound_mq {
        for n in -bound_n..=bound_n {
            for m in 0..=bound_mq {
                push_unique(&mut pool, Relator::new_cbar(q, n, m).expect("range").element);
            }
        }
    }

    let mut table = Vec::new();
    for d in 0..=max_d {
        let selected: Vec<&SkeinElement> = pool
            .iter()
            .filter(|e| e.support_degree().is_some_and(|deg| deg <= d))
            .collect();
        let rank = specialized_rank(&selected, spec, d)?;
        table.push(RankRow {
            d,
            relators: selected.len(),
            rank,
        });
    }
    Ok(table)
}

fn specialized_rank(
    elems: &[&SkeinElement],
    spec: &Specialization,
    max_degree: u32,
) -> Result<usize, SkeinError> {
    // column space: all monomials of total degree <= max_degree, in order
    let mut cols = Vec::new();
    for i in 0..=max_degree {
        for j in 0..=(max_degree - i) {
            for k in 0..=(max_degree - i - j) {
                cols.push(MonomialIndex::new(i, j, k));
            }
        }
    }
    let col_pos: BTreeMap<MonomialIndex, usize> =
        cols.iter().enumerate().map(|(p, m)| (*m, p)).collect();

    match spec {
        Specialization::Rational(a) => {
            let zero = BigRational::zero();
            let mut rows = Vec::with_capacity(elems.len());
            for e in elems {
                let mut row = vec![zero.clone(); cols.len()];
                for (mon, coeff) in e.terms() {
                    row[col_pos[mon]] = coeff.eval_rational(a)?;
                }
                rows.push(row);
            }
            Ok(matrix_rank(rows))
        }
        Specialization::Prime { p, a } => {
            let mut rows = Vec::with_capacity(elems.len());
            for e in elems {
                let mut row = vec![Fp { val: 0, p: *p }; cols.len()];
                for (mon, coeff) in e.terms() {
                    row[col_pos[mon]] = Fp {
                        val: coeff.eval_mod(*p, *a)?,
                        p: *p,
                    };
                }
                rows.push(row);
            }
            Ok(matrix_rank(rows))
        }
    }
}

/// Renders a rank table as CSV with header `D,relators,rank`.
pub fn rank_table_csv(table: &[RankRow]) -> String {
    let mut out = String::from("D,relators,rank\n");
    for row in table {
        out.push_str(&format!("{},{},{}\n", row.d, row.relators, row.rank));
    }
    out
}
