use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::curve::{rational_from_factors, EllipticCurve};
use crate::arith::{factor_big, inv_mod, legendre, mul_mod, primes_between, rational_mod};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurjectivityStatus {
    Surjective,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurjectivityMethod {
    Zywina,
    Sampling,
}

/// Evidence ruling out one family of proper subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminationWitness {
    /// family of maximal subgroups ruled out
    pub class: String,
    /// auxiliary prime (Frobenius prime, or prime of the `j` denominator)
    pub prime: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurjectivityVerdict {
    pub status: SurjectivityStatus,
    pub method: SurjectivityMethod,
    pub witnesses: Vec<EliminationWitness>,
    pub reason: String,
}

impl SurjectivityVerdict {
    pub fn is_surjective(&self) -> bool {
        self.status == SurjectivityStatus::Surjective
    }
}

/// The pairs `(p, j)` excluded from the denominator criterion.
pub fn zywina_exceptions() -> Vec<(u64, BigRational)> {
    vec![
        (17, rational_from_factors(-1, &[(17, 2), (101, 2), (2, -1)])),
        (17, rational_from_factors(-1, &[(17, 1), (373, 3), (2, -17)])),
        (37, rational_from_factors(-1, &[(7, 1), (11, 3)])),
        (37, rational_from_factors(-1, &[(7, 1), (137, 3), (2083, 3)])),
    ]
}

pub fn in_zywina_exceptions(p: u64, j: &BigRational) -> bool {
    zywina_exceptions().iter().any(|(q, k)| *q == p && k == j)
}

/// For `p > 13` outside the exceptional pairs, a non-surjective image forces
/// every prime `q^e` of the denominator of `j` to have `q = +-1 mod p` and `p | e`.
/// One prime violating this certifies surjectivity.
pub fn zywina_surjectivity(e: &EllipticCurve, p: u64) -> SurjectivityVerdict {
    let verdict = |status, witnesses, reason: String| SurjectivityVerdict {
        status,
        method: SurjectivityMethod::Zywina,
        witnesses,
        reason,
    };
    if p <= 13 {
        return verdict(SurjectivityStatus::Inconclusive, vec![], format!("criterion needs p > 13, got {p}"));
    }
    let j = e.j_invariant();
    if in_zywina_exceptions(p, j) {
        return verdict(SurjectivityStatus::Inconclusive, vec![], "(p, j) is an exceptional pair".into());
    }
    let bp = BigInt::from(p);
    for (q, exp) in factor_big(j.denom()) {
        let r = (&q % &bp).to_u64().expect("residue");
        if (r != 1 && r != p - 1) || exp as u64 % p != 0 {
            let w = EliminationWitness {
                class: "all proper subgroups".into(),
                prime: q.to_string(),
                detail: format!("{q}^{exp} divides the denominator of j; {q} = {r} mod {p}"),
            };
            return verdict(SurjectivityStatus::Surjective, vec![w], "denominator of j violates the criterion".into());
        }
    }
    verdict(SurjectivityStatus::Inconclusive, vec![], "every denominator prime satisfies the criterion".into())
}

/// Certifies surjectivity for small `p` by eliminating each family of maximal
/// subgroups of `GL2(F_p)` with Frobenius traces and determinants at good
/// primes `ell <= ell_bound`:
///
/// 1. `t != 0` with `t^2 - 4d` a non-residue: not in a Borel or split-Cartan normalizer.
/// 2. `t != 0` with `t^2 - 4d` a nonzero residue: not in a nonsplit-Cartan normalizer.
/// 3. `t^2 / d` outside `{0, 1, 2, 4}` and the roots of `u^2 - 3u + 1`: not exceptional.
///    For `p = 3` there is no exceptional proper subgroup and this step is vacuous.
/// 4. the determinants generate `F_p^x`.
///
/// At `p = 3` no trace pair satisfies step 2 (the nonsplit-Cartan normalizer is a
/// Sylow 2-subgroup and meets every trace class), so it is witnessed instead by
/// a prime where the 3-division polynomial has exactly one root: Frobenius then
/// permutes the four 3-torsion lines as a 3-cycle, impossible in a 2-group.
pub fn sampling_surjectivity(e: &EllipticCurve, p: u64, ell_bound: u64) -> SurjectivityVerdict {
    let mut steps: [Option<EliminationWitness>; 4] = [None, None, None, None];
    if p == 3 {
        steps[2] = Some(EliminationWitness {
            class: "exceptional".into(),
            prime: "-".into(),
            detail: "PGL2(F_3) is itself S_4; no exceptional proper subgroup".into(),
        });
    }
    let mut dets: Vec<u64> = vec![1];
    let mut dets_witness: Vec<u64> = Vec::new();
    for ell in primes_between(3, ell_bound) {
        if ell == p || steps.iter().all(Option::is_some) {
            continue;
        }
        let Ok(data) = e.point_count(ell) else { continue };
        let t = data.a.expect("good prime").rem_euclid(p as i64) as u64;
        let d = ell % p;
        let disc = (t * t % p + 4 * (p - d)) % p;
        let w = |class: &str| EliminationWitness {
            class: class.into(),
            prime: ell.to_string(),
            detail: format!("a_ell = {t}, ell = {d} mod {p}"),
        };
        if t != 0 && disc != 0 {
            let k = if legendre(disc as i64, p) == -1 { 0 } else { 1 };
            let class = ["borel and split cartan normalizer", "nonsplit cartan normalizer"][k];
            steps[k].get_or_insert_with(|| w(class));
        }
        if p == 3 && steps[1].is_none() && three_division_roots(e, ell) == Some(1) {
            steps[1] = Some(EliminationWitness {
                class: "nonsplit cartan normalizer".into(),
                prime: ell.to_string(),
                detail: format!("3-division polynomial has one root mod {ell}"),
            });
        }
        if steps[2].is_none() {
            let u = mul_mod(t * t % p, inv_mod(d as i128, p).expect("ell != p"), p);
            let golden = (u * u + 3 * (p - u) + 1) % p == 0;
            if ![0, 1, 2, 4 % p].contains(&u) && !golden {
                steps[2] = Some(w("exceptional"));
            }
        }
        if steps[3].is_none() && !dets.contains(&d) {
            dets_witness.push(ell);
            let mut closure = dets.clone();
            closure.push(d);
            let mut k = 0;
            while k < closure.len() {
                let x = closure[k];
                for y in closure.clone() {
                    let z = mul_mod(x, y, p);
                    if !closure.contains(&z) {
                        closure.push(z);
                    }
                }
                k += 1;
            }
            dets = closure;
            if dets.len() as u64 == p - 1 {
                steps[3] = Some(EliminationWitness {
                    class: "determinant".into(),
                    prime: dets_witness.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(","),
                    detail: format!("Frobenius determinants generate F_{p}^x"),
                });
            }
        }
    }
    let done = steps.iter().all(Option::is_some);
    let missing: Vec<&str> = ["1", "2", "3", "4"]
        .iter()
        .zip(&steps)
        .filter(|(_, s)| s.is_none())
        .map(|(k, _)| *k)
        .collect();
    SurjectivityVerdict {
        status: if done { SurjectivityStatus::Surjective } else { SurjectivityStatus::Inconclusive },
        method: SurjectivityMethod::Sampling,
        witnesses: steps.into_iter().flatten().collect(),
        reason: if done {
            format!("all maximal subgroup families eliminated with ell <= {ell_bound}")
        } else {
            format!("eliminations {} not witnessed with ell <= {ell_bound}", missing.join(", "))
        },
    }
}

/// Roots in `F_ell` of `3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8` on a model minimal at `ell`.
fn three_division_roots(e: &EllipticCurve, ell: u64) -> Option<usize> {
    let m = e.minimal_model_at(ell).ok()?;
    let b: Vec<u64> = m.b_invariants().iter().map(|x| rational_mod(x, ell)).collect::<Option<_>>()?;
    let coeffs = [b[3], 3 * b[2] % ell, 3 * b[1] % ell, b[0], 3 % ell];
    let roots = (0..ell)
        .filter(|&x| coeffs.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, ell) + c) % ell) == 0)
        .count();
    Some(roots)
}

/// The Zywina criterion above 13, sampling otherwise.
pub fn surjectivity(e: &EllipticCurve, p: u64, ell_bound: u64) -> SurjectivityVerdict {
    if p > 13 {
        zywina_surjectivity(e, p)
    } else {
        sampling_surjectivity(e, p, ell_bound)
    }
}
