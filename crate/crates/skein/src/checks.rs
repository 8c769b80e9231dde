//! Identity sweeps shared by the CLI verify command and the acceptance
//! suite. Each check returns the number of identities confirmed, or a
//! description of the first counterexample.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::elements::SkeinElement;
use crate::laurent::LaurentPoly;
use crate::obstruction::certify_nonzero_mod_relations;
use crate::reduction::{reduce, RelatorSet};
use crate::relators::{c_closed, cbar_closed, Relator, SequenceCache};
use crate::torsion::tau;

type CheckResult = Result<usize, String>;

fn shift(e: &SkeinElement, k: i64) -> SkeinElement {
    e.scaled(&LaurentPoly::a_pow(k))
}

/// S_k(a3) expanded in the monomial basis, with extended indices.
fn s_a3(k: i64) -> SkeinElement {
    SkeinElement::cheb_elem(0, 0, k).to_monomial()
}

/// c_closed(m,n) = c_via_recurrence(m,n), negatives included.
pub fn check_closed_vs_recurrence(max_m: i64, max_abs_n: i64) -> CheckResult {
    let mut cache = SequenceCache::new();
    let mut count = 0;
    for m in -max_m..=max_m {
        for n in -max_abs_n..=max_abs_n {
            let rec = cache
                .c_via_recurrence(m, n)
                .map_err(|e| format!("C({},{}): {}", m, n, e))?;
            if rec != c_closed(m, n).to_monomial() {
                return Err(format!("closed form differs from recurrence at ({},{})", m, n));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// The sequence identities: the Q/PP and P/PP links in both index
/// half-planes, the S(a3) expansions of PP, and the mirror route for N/NN.
pub fn check_appendix_lemmas(max_m: i64, max_abs_n: i64) -> CheckResult {
    let mut cache = SequenceCache::new();
    let mut count = 0;
    for m in 2..=max_m {
        for n in 0..=max_abs_n {
            // Q(m,n) = A^{m+n-5} PP(m-2,n)
            let q = cache.q_seq(m, n).map_err(|e| e.to_string())?;
            let pp2 = cache.pp_seq(m - 2, n).map_err(|e| e.to_string())?;
            if q != shift(&pp2, m + n - 5) {
                return Err(format!("Q/PP link fails at ({},{})", m, n));
            }
            // P(m,n) = A^{m+n-1} PP(m,n) - A^{m+n-5} PP(m-2,n)
            let p = cache.p_seq(m, n).map_err(|e| e.to_string())?;
            let pp = cache.pp_seq(m, n).map_err(|e| e.to_string())?;
            if p != &shift(&pp, m + n - 1) - &shift(&pp2, m + n - 5) {
                return Err(format!("P/PP link fails at ({},{})", m, n));
            }
            count += 2;
        }
        for n in 1..=max_abs_n {
            // negative-n counterparts
            let q = cache.q_seq(m, -n).map_err(|e| e.to_string())?;
            let pp2 = cache.pp_seq(m - 2, -n).map_err(|e| e.to_string())?;
            if q != shift(&pp2, m - n - 5) {
                return Err(format!("Q/PP link fails at ({},-{})", m, n));
            }
            let p = cache.p_seq(m, -n).map_err(|e| e.to_string())?;
            let pp = cache.pp_seq(m, -n).map_err(|e| e.to_string())?;
            if p != &shift(&pp, m - n - 1) - &shift(&pp2, m - n - 5) {
                return Err(format!("P/PP link fails at ({},-{})", m, n));
            }
            count += 2;
        }
    }
    for m in 0..=max_m {
        let pp1 = cache.pp_seq(m, 1).map_err(|e| e.to_string())?;
        let pp0 = cache.pp_seq(m, 0).map_err(|e| e.to_string())?;
        for n in 0..=max_abs_n {
            // PP(m,n) = PP(m,1)S_{n-1}(a3) - PP(m,0)S_{n-2}(a3)
            let pp = cache.pp_seq(m, n).map_err(|e| e.to_string())?;
            if pp != &pp1.mul(&s_a3(n - 1)) - &pp0.mul(&s_a3(n - 2)) {
                return Err(format!("PP(a3) expansion fails at ({},{})", m, n));
            }
            count += 1;
        }
        if m >= 1 {
            for n in 1..=max_abs_n {
                // PP(m,-n) = A^3 PP(m,1)S_{n-1}(a3) - A^3 PP(m,0)S_n(a3)
                let pp = cache.pp_seq(m, -n).map_err(|e| e.to_string())?;
                let rhs = &shift(&pp1.mul(&s_a3(n - 1)), 3) - &shift(&pp0.mul(&s_a3(n)), 3);
                if pp != rhs {
                    return Err(format!("PP(a3) expansion fails at ({},-{})", m, n));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

/// N and NN are the mirrors of P and PP, and the mirrored sequence
/// identities hold: N(m,n) = A^{-m-n+1}NN(m,n) - A^{-m-n+5}NN(m-2,n).
pub fn check_mirror(max_m: i64, max_abs_n: i64) -> CheckResult {
    let mut cache = SequenceCache::new();
    let mut count = 0;
    for m in 0..=max_m {
        for n in -max_abs_n..=max_abs_n {
            if n < 0 && m < 1 {
                continue;
            }
            let n_val = cache.n_seq(m, n).map_err(|e| e.to_string())?;
            let p = cache.p_seq(m, n).map_err(|e| e.to_string())?;
            if n_val != p.mirror() || n_val.mirror() != p {
                return Err(format!("N/mirror(P) fails at ({},{})", m, n));
            }
            let nn = cache.nn_seq(m, n).map_err(|e| e.to_string())?;
            let pp = cache.pp_seq(m, n).map_err(|e| e.to_string())?;
            if nn != pp.mirror() {
                return Err(format!("NN/mirror(PP) fails at ({},{})", m, n));
            }
            count += 2;
            if m >= 2 {
                let nn2 = cache.nn_seq(m - 2, n).map_err(|e| e.to_string())?;
                let exp = m + n;
                if n_val != &shift(&nn, -exp + 1) - &shift(&nn2, -exp + 5) {
                    return Err(format!("N/NN link fails at ({},{})", m, n));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

/// C(m,n) + C(-m,-n) = 0 and the barred analogue.
pub fn check_antisymmetry(bound: i64) -> CheckResult {
    let mut count = 0;
    for a in -bound..=bound {
        for b in -bound..=bound {
            if !(&c_closed(a, b) + &c_closed(-a, -b)).is_zero() {
                return Err(format!("C antisymmetry fails at ({},{})", a, b));
            }
            if !(&cbar_closed(a, b) + &cbar_closed(-a, -b)).is_zero() {
                return Err(format!("Cbar antisymmetry fails at ({},{})", a, b));
            }
            count += 2;
        }
    }
    Ok(count)
}

/// Every relator of both families vanishes at A = 1 and A = -1.
pub fn check_vanishing(max_mq: i64, max_abs_n: i64) -> CheckResult {
    let mut count = 0;
    for m in 0..=max_mq {
        for n in -max_abs_n..=max_abs_n {
            for q in 0..=max_mq {
                for r in [
                    Relator::new_c(m, n, q).map_err(|e| e.to_string())?,
                    Relator::new_cbar(q, n, m).map_err(|e| e.to_string())?,
                ] {
                    if !r.element.eval_pm1(1).is_empty() || !r.element.eval_pm1(-1).is_empty() {
                        return Err(format!(
                            "{}({},{})S with q={} does not vanish at A=+-1",
                            r.family, r.m, r.n, r.q
                        ));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// (-A + A^{-1}) tau(m,n,q) = relator(m,n,q), and for m+n >= 1 the top
/// coefficient of tau at A=1 is m+n+2.
pub fn check_torsion_identities(max_mq: i64, max_abs_n: i64) -> CheckResult {
    let unit = &LaurentPoly::a_pow(-1) - &LaurentPoly::a_pow(1);
    let mut count = 0;
    for m in 0..=max_mq {
        for n in -max_abs_n..=max_abs_n {
            for q in 0..=max_mq {
                if (m, n) == (0, 0) {
                    continue;
                }
                let t = tau(m, n, q).map_err(|e| e.to_string())?;
                let r = Relator::new_c(m, n, q).map_err(|e| e.to_string())?;
                if t.scaled(&unit) != r.element {
                    return Err(format!("unit * tau != relator at ({},{},{})", m, n, q));
                }
                count += 1;
                // for n >= 0 the first term is the graded-lex top and its
                // geo coefficient specializes to m+n+2 at A=1
                if n >= 0 && m + n >= 1 {
                    let (_, coeff) = t.max_term().expect("nonzero");
                    if coeff.eval_pm1(1) != BigInt::from(m + n + 2) {
                        return Err(format!(
                            "tau top coefficient at A=1 differs from {} at ({},{},{})",
                            m + n + 2,
                            m,
                            n,
                            q
                        ));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

fn random_laurent(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let exp = rng.gen_range(-5..=5);
        let mut c: i64 = rng.gen_range(-9..=9);
        if c == 0 {
            c = 1;
        }
        p = &p + &LaurentPoly::monomial(exp, c);
    }
    if p.is_zero() {
        LaurentPoly::one()
    } else {
        p
    }
}

/// Random Laurent combinations of indexed relators reduce to residue 0
/// with exact re-expansion, and no quotient-nonzero witness exists for any
/// of them.
pub fn check_random_combinations(seed: u64, samples: usize) -> CheckResult {
    let mut rs = RelatorSet::new();
    for m in 0..=4i64 {
        for n in -4..=4 {
            for q in 0..=4 {
                let r = Relator::new_c(m, n, q).map_err(|e| e.to_string())?;
                if let Some((mon, _)) = &r.leading {
                    if rs.lookup(mon).is_none() {
                        rs.push(r);
                    }
                }
                let rb = Relator::new_cbar(q, n, m).map_err(|e| e.to_string())?;
                if let Some((mon, _)) = &rb.leading {
                    if rs.lookup(mon).is_none() {
                        rs.push(rb);
                    }
                }
            }
        }
    }
    let ids: Vec<usize> = (0..rs.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for sample in 0..samples {
        let picks = rng.gen_range(1..=4usize);
        let mut e = SkeinElement::zero(crate::elements::Basis::Chebyshev);
        for _ in 0..picks {
            let id = ids[rng.gen_range(0..ids.len())];
            e = &e + &rs.get(id).element.scaled(&random_laurent(&mut rng));
        }
        let cert = reduce(&e, &rs);
        if !cert.is_member() {
            return Err(format!("sample {}: nonzero residue", sample));
        }
        cert.verify(&rs)
            .map_err(|err| format!("sample {}: {}", sample, err))?;
        if let Some(w) = certify_nonzero_mod_relations(&e) {
            return Err(format!(
                "sample {}: false nonzero witness {:?}",
                sample, w.monomial
            ));
        }
    }
    Ok(samples)
}
