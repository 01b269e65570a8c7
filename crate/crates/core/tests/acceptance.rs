//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Checks that cannot pass because the reference data is internally
//! inconsistent are listed in `KNOWN_DIVERGENCES`; they still print FAIL, and
//! the test fails if any other check fails or if a listed one starts passing.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use inertia_lab::arith::{big_mod, is_prime};
use inertia_lab::elliptic::{
    canonical_lift_j, construct_ordinary, construct_supersingular, fixture, gross_diagonalizable,
    in_zywina_exceptions, rational_from_factors, sampling_surjectivity, zywina_surjectivity, CertificateKind,
    EllipticCurve, ReductionType,
};
use inertia_lab::gl2::{
    candidate_requirement, classify_candidate, inertia_candidates, wrcase_group_identity_check, Gl2Context,
    InertiaCandidate, Reduction,
};
use inertia_lab::group::{
    abelian_group, cyclic_group, metacyclic_group, quotient_group, AbelianType, Element, FiniteGroup, Permutation,
    Subgroup,
};
use inertia_lab::local::{
    is_quotient_of_zp_units, lambda_fiber, qp_realizable_odd, tame_realizable, verify_example_6_2, Status,
};

/// `(criterion, check)` pairs that fail for documented reasons.
const KNOWN_DIVERGENCES: &[(u32, &str)] = &[
    // the listed lift 19 is not congruent to j(17.a1) = 2 mod 7; the lift is 54000 = 2 mod 49
    (3, "table b p=7 17.a1 lift"),
    (3, "table b p=7 17.a1 diagonal"),
    // class number one: the lift is -32768 = 7 mod 25, listed as 2
    (3, "table c p=5 19.a2 lift"),
    // no tame quotient exists: 2 is not 1 mod 3, and e = p = 3
    (9, "(e,f,p)=(3,1,2)"),
    (9, "(e,f,p)=(3,2,3)"),
];

/// Writes past the test harness's output capture so the report always shows.
macro_rules! report {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

struct Check {
    name: String,
    ok: bool,
    detail: String,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), ok, detail: detail.into() });
    }
}

fn run(id: u32, title: &str, limit: Duration, body: impl FnOnce(&mut Checks)) -> Vec<(u32, String)> {
    let start = Instant::now();
    let mut checks = Checks::default();
    body(&mut checks);
    let elapsed = start.elapsed();
    checks.add("runtime", elapsed <= limit, format!("{elapsed:.2?} (limit {limit:?})"));
    let failed: Vec<&Check> = checks.0.iter().filter(|c| !c.ok).collect();
    let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
    report!("{verdict} criterion {id}: {title} [{} checks, {elapsed:.2?}]", checks.0.len());
    for c in &failed {
        report!("    failed: {} ({})", c.name, c.detail);
    }
    failed.iter().map(|c| (id, c.name.clone())).collect()
}

fn curve(label: &str) -> EllipticCurve {
    fixture(label).unwrap_or_else(|| panic!("fixture {label}"))
}

fn criterion_1(c: &mut Checks) {
    let r = match verify_example_6_2() {
        Ok(r) => r,
        Err(e) => return c.add("verification", false, e.to_string()),
    };
    c.add("order 128", r.group_order == 128, r.group_order.to_string());
    c.add("four subgroups over I", r.intermediate.len() == 4, format!("{}", r.intermediate.len()));
    let ranks: Vec<usize> = r.intermediate.iter().map(|x| x.rank).collect();
    let shape = ranks.len() == 4 && ranks[..3].iter().all(|&k| k >= 4) && ranks[3] == 3;
    c.add("ranks (>=4, >=4, >=4, 3)", shape, format!("{ranks:?}"));
    c.add(
        "G is the rank-3 one",
        r.intermediate.last().map(|x| x.order) == Some(128) && r.only_whole_rank_at_most_3,
        format!("{:?}", r.intermediate),
    );
    c.add(
        "relator trivial under some convention",
        r.relator_trivial.iter().any(|(_, ok)| *ok),
        format!("{:?}", r.relator_trivial),
    );
    // the verifier rejects unless the normal closure of x y^2 and z equals I
    c.add("normal closure has order 16", r.inertia_order == 16, r.inertia_order.to_string());
}

fn criterion_2(c: &mut Checks) {
    for (p, label) in [(3u64, "17.a1"), (5, "14.a1"), (7, "15.a1"), (11, "14.a1"), (13, "56.b1")] {
        let e = curve(label);
        c.add(format!("p={p} {label} good"), e.good_reduction(p), "");
        match e.point_count(p) {
            Ok(d) => {
                let a = d.a.unwrap_or(1);
                c.add(format!("p={p} {label} a_p = 0 mod p"), a.rem_euclid(p as i64) == 0, format!("a_p = {a}"));
                c.add(format!("p={p} {label} flag"), d.kind == ReductionType::Supersingular, format!("{:?}", d.kind));
            }
            Err(err) => c.add(format!("p={p} {label} count"), false, err.to_string()),
        }
        let v = sampling_surjectivity(&e, p, 500);
        c.add(format!("p={p} {label} surjective"), v.is_surjective(), v.reason);
    }
}

fn criterion_3(c: &mut Checks) {
    let table_b = [(3u64, "89.a1", 1u64), (5, "17.a2", 3), (7, "17.a1", 19), (11, "54.a3", 114), (13, "14.a3", 38)];
    for (p, label, lift) in table_b {
        let e = curve(label);
        match canonical_lift_j(&e, p) {
            Ok(r) => c.add(format!("table b p={p} {label} lift"), r.j_lift == lift, format!("got {}, listed {lift}", r.j_lift)),
            Err(err) => c.add(format!("table b p={p} {label} lift"), false, err.to_string()),
        }
        let g = gross_diagonalizable(&e, p);
        c.add(format!("table b p={p} {label} diagonal"), g == Ok(true), format!("{g:?}"));
    }
    let table_c = [
        (3u64, "11.a2", 7u64, 1u64),
        (5, "19.a2", 12, 2),
        (7, "11.a2", 18, 46),
        (11, "19.a2", 65, 43),
        (13, "11.a2", 88, 10),
    ];
    for (p, label, j_res, lift) in table_c {
        let e = curve(label);
        let jm = e.j_mod(p * p);
        c.add(format!("table c p={p} {label} j mod p^2"), jm == Ok(j_res), format!("got {jm:?}, listed {j_res}"));
        match canonical_lift_j(&e, p) {
            Ok(r) => c.add(format!("table c p={p} {label} lift"), r.j_lift == lift, format!("got {}, listed {lift}", r.j_lift)),
            Err(err) => c.add(format!("table c p={p} {label} lift"), false, err.to_string()),
        }
        let g = gross_diagonalizable(&e, p);
        c.add(format!("table c p={p} {label} not diagonal"), g == Ok(false), format!("{g:?}"));
    }
}

fn criterion_4(c: &mut Checks) {
    let expected: [(&str, BigRational); 4] = [
        ("89.a1", rational_from_factors(-1, &[(7, 6), (89, -1)])),
        ("17.a2", rational_from_factors(1, &[(3, 3), (7, 3), (13, 3), (17, -2)])),
        ("11.a2", rational_from_factors(-1, &[(2, 12), (31, 3), (11, -5)])),
        ("19.a2", rational_from_factors(-1, &[(2, 18), (7, 3), (19, -3)])),
    ];
    for (label, j) in expected {
        let got = curve(label).j_invariant().clone();
        c.add(format!("j({label})"), got == j, format!("got {got}, expected {j}"));
    }
}

/// Brute-force count of `y^2 = x^3 + A x + B` over `F_p`.
fn short_count(a: u64, b: u64, p: u64) -> u64 {
    let squares: Vec<u64> = (0..p).map(|y| y * y % p).collect();
    1 + (0..p)
        .map(|x| {
            let rhs = (x * x % p * x + a * x + b) % p;
            squares.iter().filter(|&&s| s == rhs).count() as u64
        })
        .sum::<u64>()
}

fn criterion_5(c: &mut Checks) {
    let mut jobs: Vec<(String, u64, Option<bool>)> =
        [17u64, 19, 23].iter().map(|&p| (format!("supersingular p={p}"), p, None)).collect();
    jobs.push(("ordinary diagonal p=17".into(), 17, Some(true)));
    jobs.push(("ordinary non-diagonal p=17".into(), 17, Some(false)));
    for (name, p, diagonal) in jobs {
        let start = Instant::now();
        let built = match diagonal {
            None => construct_supersingular(p),
            Some(d) => construct_ordinary(p, d),
        };
        let (e, cert) = match built {
            Ok(x) => x,
            Err(err) => {
                c.add(name, false, err.to_string());
                continue;
            }
        };
        c.add(format!("{name} certificate"), cert.validate().is_ok(), format!("{:?}", cert.validate()));
        // independent recomputation from the coefficients
        let a4 = e.coefficients()[3].numer().clone();
        let a6 = e.coefficients()[4].numer().clone();
        let count = short_count(big_mod(&a4, p), big_mod(&a6, p), p);
        let ap = p as i64 + 1 - count as i64;
        let kind_ok = match cert.kind {
            CertificateKind::Supersingular => ap.rem_euclid(p as i64) == 0,
            CertificateKind::Ordinary { .. } => ap.rem_euclid(p as i64) != 0,
        };
        c.add(format!("{name} reduction flag"), kind_ok, format!("a_p = {ap}"));
        if let Some(d) = diagonal {
            let g = gross_diagonalizable(&e, p);
            c.add(format!("{name} gross flag"), g == Ok(d), format!("{g:?}"));
        }
        let q = cert.q;
        let den: &BigInt = e.j_invariant().denom();
        c.add(format!("{name} q | denominator"), big_mod(den, q) == 0, format!("q = {q}"));
        c.add(format!("{name} q != +-1 mod p"), is_prime(q) && q % p != 1 && q % p != p - 1, format!("q = {q}"));
        c.add(format!("{name} zywina"), zywina_surjectivity(&e, p).is_surjective(), "");
        c.add(format!("{name} outside exceptions"), !in_zywina_exceptions(p, e.j_invariant()), "");
        let elapsed = start.elapsed();
        c.add(format!("{name} runtime"), elapsed <= Duration::from_secs(60), format!("{elapsed:.2?}"));
    }
}

/// All invariant-factor lists `d1 | d2 | ... ` with product `n`.
fn abelian_types(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, min: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in (min.max(2)..=rest).filter(|d| rest % d == 0 && d % min == 0) {
            acc.push(d);
            go(rest / d, d, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

/// Whether `Z/d1 x ... x Z/dk` is generated by some `x, y` with `ord(x) | m1`, `ord(y) | m2`.
fn is_quotient_of_two_cyclic(factors: &[u64], m1: u64, m2: u64) -> bool {
    let n: u64 = factors.iter().product();
    let elems: Vec<Vec<u64>> = (0..n)
        .map(|mut k| {
            factors
                .iter()
                .map(|&d| {
                    let x = k % d;
                    k /= d;
                    x
                })
                .collect()
        })
        .collect();
    let scale = |x: &[u64], s: u64| -> Vec<u64> { x.iter().zip(factors).map(|(&a, &d)| a * s % d).collect() };
    let killed_by = |x: &[u64], m: u64| scale(x, m).iter().all(|&a| a == 0);
    let xs: Vec<&Vec<u64>> = elems.iter().filter(|x| killed_by(x, m1)).collect();
    let ys: Vec<&Vec<u64>> = elems.iter().filter(|y| killed_by(y, m2)).collect();
    for x in &xs {
        for y in &ys {
            let mut seen = std::collections::HashSet::new();
            for i in 0..m1.min(n) {
                for j in 0..m2.min(n) {
                    let v: Vec<u64> = scale(x, i).iter().zip(scale(y, j)).zip(factors).map(|((a, b), d)| (a + b) % d).collect();
                    seen.insert(v);
                }
            }
            if seen.len() as u64 == n {
                return true;
            }
        }
    }
    false
}

fn criterion_6(c: &mut Checks) {
    // (p, m1, m2): the truncation C_m1 x C_m2 of Z_p^x used by the oracle
    for (p, m1, m2) in [(3u64, 2u64, 81u64), (5, 4, 625), (7, 6, 2401), (13, 12, 28561), (2, 2, 64)] {
        let mut disagreements = Vec::new();
        let mut total = 0;
        for n in 1..=64 {
            for f in abelian_types(n) {
                total += 1;
                let a = AbelianType::from_cyclic_factors(&f).expect("valid factors");
                let oracle = is_quotient_of_two_cyclic(&f, m1, m2);
                if is_quotient_of_zp_units(&a, p) != oracle {
                    disagreements.push(f);
                }
            }
        }
        c.add(format!("p={p} C{m1} x C{m2}"), disagreements.is_empty(), format!("{total} types, disagreements {disagreements:?}"));
    }
}

fn s3() -> FiniteGroup {
    let gens = [vec![1, 2, 0], vec![1, 0, 2]]
        .map(|v| Element::Perm(Permutation::from_images(v).expect("permutation")));
    FiniteGroup::enumerate(&gens).expect("S3")
}

/// Odd-order groups for the Frattini corpus.
fn odd_corpus() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    for n in [9usize, 25, 27, 45, 63, 75, 81, 125, 135, 243] {
        out.push((format!("C{n}"), cyclic_group(n)));
    }
    for f in [[3u64, 9], [3, 27], [9, 9], [5, 25]] {
        out.push((format!("C{}xC{}", f[0], f[1]), abelian_group(&f).expect("abelian")));
    }
    for (e, n, u) in [(7u64, 9u64, 2u64), (9, 3, 4), (27, 3, 10), (25, 5, 6), (19, 9, 4), (13, 9, 3), (9, 9, 4), (7, 27, 2)] {
        let m = metacyclic_group(e, n, 0, u).expect("consistent parameters");
        out.push((format!("C{e}:C{n}"), m.group));
    }
    out
}

fn frattini_pairs(d: &FiniteGroup) -> Vec<(Subgroup, u64)> {
    let mut normals: Vec<Subgroup> = Vec::new();
    for x in 0..d.order() {
        let n = d.normal_closure(&[x]);
        if !normals.contains(&n) {
            normals.push(n);
        }
    }
    let primes: Vec<u64> = [3u64, 5, 7, 13, 19].into_iter().filter(|&p| d.order() as u64 % p == 0).collect();
    normals.into_iter().flat_map(|i| primes.iter().map(move |&p| (i.clone(), p))).collect()
}

fn criterion_7(c: &mut Checks) {
    let g = s3();
    let a3 = g.subgroup(&[g.index_of(&Element::Perm(Permutation::from_images(vec![1, 2, 0]).unwrap())).unwrap()]);
    let mut wrong = Vec::new();
    for p in (2..50).filter(|&p| is_prime(p)) {
        if tame_realizable(&g, &a3, p).is_some() != (p % 3 == 2) {
            wrong.push(p);
        }
    }
    c.add("S3 with A3 tame iff p = 2 mod 3", wrong.is_empty(), format!("wrong at {wrong:?}"));

    let m = metacyclic_group(7, 3, 0, 2).expect("C7:C3");
    let i = m.group.subgroup(&[m.t]);
    match qp_realizable_odd(&m.group, &i, 2) {
        Ok(v) => c.add("C7:C3 with C7 at 2", v.is_realizable() && v.validate().is_ok(), v.reason.clone()),
        Err(e) => c.add("C7:C3 with C7 at 2", false, e.to_string()),
    }
    let v3 = qp_realizable_odd(&m.group, &i, 3).map(|v| v.status);
    c.add("C7:C3 with C7 at 3", v3 == Ok(Status::NotRealizable), format!("{v3:?}"));

    let mut pairs = 0;
    let mut nontrivial = 0;
    let mut mismatches = Vec::new();
    for (name, d) in odd_corpus() {
        for (i, p) in frattini_pairs(&d) {
            let ip = i.lift(&i.as_group().sylow_subgroup(p));
            let Ok(phi) = ip.as_group().frattini_subgroup(p).map(|f| ip.lift(&f)) else { continue };
            if !phi.is_normal() {
                continue;
            }
            let lhs = qp_realizable_odd(&d, &i, p).map(|v| v.status);
            let rhs = quotient_group(&d, &phi)
                .map_err(|e| e.to_string())
                .and_then(|(q, pi)| qp_realizable_odd(&q, &pi.image_of(&i), p).map(|v| v.status).map_err(|e| e.to_string()));
            pairs += 1;
            if !phi.is_trivial() {
                nontrivial += 1;
            }
            if lhs.as_ref().ok() != rhs.as_ref().ok() {
                mismatches.push(format!("{name} |I|={} p={p}: {lhs:?} vs {rhs:?}", i.order()));
            }
        }
    }
    report!("    frattini corpus: {pairs} pairs, {nontrivial} with nontrivial Frattini subgroup");
    c.add("Frattini corpus size", nontrivial >= 20, format!("{pairs} pairs, {nontrivial} with nontrivial Frattini subgroup"));
    c.add("Frattini reduction invariant", mismatches.is_empty(), mismatches.join("; "));
}

fn criterion_8(c: &mut Checks) {
    for p in [3u64, 5] {
        let ctx = Gl2Context::new(p).expect("small prime");
        let cands = inertia_candidates(&ctx);
        let bad: Vec<InertiaCandidate> = cands
            .iter()
            .copied()
            .filter(|cand| classify_candidate(&ctx, &cand.subgroup(&ctx).unwrap()).ok() != Some(*cand))
            .collect();
        c.add(format!("p={p} round trip"), bad.is_empty(), format!("{} candidates, failing {bad:?}", cands.len()));
        let g = ctx.group();
        let borel = ctx.borel();
        let outside: Vec<InertiaCandidate> = cands
            .iter()
            .copied()
            .filter(|cand| cand.is_wild())
            .filter(|cand| {
                let s = cand.subgroup(&ctx).unwrap();
                !(0..g.order()).any(|x| s.conjugate(x).is_subgroup_of(&borel))
            })
            .collect();
        c.add(format!("p={p} wild in Borel"), outside.is_empty(), format!("{outside:?}"));
        let expect = [
            (InertiaCandidate::SplitTame { a: 0, b: 1 }, Reduction::Ordinary, Some(true)),
            (InertiaCandidate::Wild { a: 0, b: 1 }, Reduction::Ordinary, Some(false)),
            (InertiaCandidate::NonsplitTame { index: 1 }, Reduction::Supersingular, None),
        ];
        for (cand, red, diag) in expect {
            let r = candidate_requirement(&ctx, cand);
            let ok = matches!(&r, Ok(m) if m.weight == 2 && m.twist == 0 && m.reduction == red && m.diagonal == diag);
            c.add(format!("p={p} requirement {cand:?}"), ok, format!("{r:?}"));
        }
        let mut failing = Vec::new();
        for a in 0..p - 1 {
            for b in 1..p {
                if wrcase_group_identity_check(&ctx, a, b) != Ok(true) {
                    failing.push((a, b));
                }
            }
        }
        c.add(format!("p={p} wild generator identity"), failing.is_empty(), format!("{failing:?}"));
    }
}

fn criterion_9(c: &mut Checks) {
    for (e, f, p) in [(3u64, 1u64, 2u64), (1, 2, 3), (3, 2, 3)] {
        let name = format!("(e,f,p)=({e},{f},{p})");
        let tower = match lambda_fiber(e, f, 0, p) {
            Ok(t) => t,
            Err(err) => {
                c.add(name, false, err.to_string());
                continue;
            }
        };
        let ef = (e * f) as u32;
        let orders = (tower.lambda1.group.order() as u64, tower.lambda2.order() as u64, tower.lambda.order() as u64);
        let expected = (e * f * p, e * f * p.pow(ef), e * f * p.pow(ef + 1));
        let (to_l1, to_l2) = tower.inertia_projections();
        let ok = orders == expected && to_l1 == tower.t_subgroup() && to_l2 == tower.tau_preimage();
        c.add(name, ok, format!("orders {orders:?}, expected {expected:?}"));
    }
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let mut failures: Vec<(u32, String)> = Vec::new();
    failures.extend(run(1, "order-128 example: subgroups over I, ranks, relator", secs(5), criterion_1));
    failures.extend(run(2, "supersingular table: good, a_p = 0 mod p, surjective", secs(10), criterion_2));
    failures.extend(run(3, "canonical-lift tables and Gross flags", secs(30), criterion_3));
    failures.extend(run(4, "j-invariant fixtures", secs(1), criterion_4));
    failures.extend(run(5, "curve constructions with certificates", secs(300), criterion_5));
    failures.extend(run(6, "quotients of Z_p^x against brute force", secs(10), criterion_6));
    failures.extend(run(7, "tame and odd-order decisions, Frattini reduction", secs(60), criterion_7));
    failures.extend(run(8, "GL2 inertia candidates", secs(30), criterion_8));
    failures.extend(run(9, "tower groups: orders and inertia projections", secs(30), criterion_9));

    let got: BTreeSet<(u32, String)> = failures.into_iter().collect();
    let known: BTreeSet<(u32, String)> = KNOWN_DIVERGENCES.iter().map(|(k, s)| (*k, s.to_string())).collect();
    let unexpected: Vec<_> = got.difference(&known).collect();
    let stale: Vec<_> = known.difference(&got).collect();
    report!("documented divergences: {}", known.len());
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
    assert!(stale.is_empty(), "documented divergences that now pass: {stale:?}");
}
