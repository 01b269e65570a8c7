use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use inertia_lab::arith::{big_mod, is_prime};
use inertia_lab::elliptic::{canonical_lift_j, hilbert_class_polynomial, residue_of_rational, EllipticCurve, ReductionType};
use inertia_lab::gl2::{candidate_requirement, classify_candidate, inertia_candidates, Gl2Context, InertiaCandidate};
use inertia_lab::group::{
    abelian_group, cyclic_group, direct_product, fiber_product, metacyclic_group, quotient_group, semidirect_product,
    wreath_product_regular, Element, FiniteGroup, Homomorphism, Permutation,
};
use inertia_lab::local::{lambda_fiber, lift_tame_generators, qp_realizable_odd, tame_realizable};

fn perm_group(gens: &[Vec<usize>]) -> FiniteGroup {
    let gens: Vec<Element> = gens.iter().map(|g| Element::Perm(Permutation::from_images(g.iter().map(|&x| x as u32).collect()).unwrap())).collect();
    FiniteGroup::enumerate(&gens).unwrap()
}

fn corpus() -> Vec<FiniteGroup> {
    vec![
        cyclic_group(12),
        cyclic_group(27),
        abelian_group(&[2, 4, 4]).unwrap(),
        abelian_group(&[3, 9]).unwrap(),
        metacyclic_group(7, 3, 0, 2).unwrap().group,
        metacyclic_group(9, 3, 0, 4).unwrap().group,
        metacyclic_group(8, 2, 4, 7).unwrap().group,
        perm_group(&[vec![1, 2, 3, 0], vec![1, 0, 2, 3]]),
        perm_group(&[vec![1, 2, 0, 3, 4], vec![0, 1, 3, 4, 2]]),
        perm_group(&[vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]]),
        Gl2Context::new(3).unwrap().group().clone(),
    ]
}

fn p_groups() -> Vec<(u64, FiniteGroup)> {
    vec![
        (2, cyclic_group(16)),
        (2, abelian_group(&[2, 2, 4]).unwrap()),
        (2, metacyclic_group(8, 2, 4, 7).unwrap().group),
        (2, perm_group(&[vec![1, 2, 3, 0], vec![3, 2, 1, 0]])),
        (2, wreath_product_regular(2, &cyclic_group(4)).unwrap()),
        (3, abelian_group(&[3, 3, 9]).unwrap()),
        (3, metacyclic_group(9, 3, 0, 4).unwrap().group),
        (3, metacyclic_group(9, 9, 0, 4).unwrap().group),
        (5, metacyclic_group(25, 5, 0, 6).unwrap().group),
    ]
}

fn p_part(n: usize, p: usize) -> usize {
    let mut q = 1;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        q *= p;
    }
    q
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lagrange_and_normal_closure(k in 0usize..11, picks in prop::collection::vec(any::<prop::sample::Index>(), 0..3)) {
        let g = &corpus()[k];
        let elems: Vec<usize> = picks.iter().map(|i| i.index(g.order())).collect();
        let h = g.subgroup(&elems);
        prop_assert_eq!(g.order() % h.order(), 0);
        let n = g.normal_closure(&elems);
        prop_assert!(n.is_normal());
        prop_assert!(h.is_subgroup_of(&n));
    }

    #[test]
    fn sylow_orders(k in 0usize..11) {
        let g = &corpus()[k];
        for p in [2usize, 3, 5, 7] {
            let s = g.sylow_subgroup(p as u64);
            prop_assert_eq!(s.order(), p_part(g.order(), p));
            prop_assert!(s.as_group().is_p_group(p as u64));
        }
    }

    #[test]
    fn burnside_basis(k in 0usize..9, picks in prop::collection::vec(any::<prop::sample::Index>(), 1..5)) {
        let (p, g) = &p_groups()[k];
        let phi = g.frattini_subgroup(*p).unwrap();
        let rank = g.generator_rank(*p).unwrap();
        let (q, pi) = quotient_group(g, &phi).unwrap();
        prop_assert!(q.is_abelian());
        prop_assert!((1..q.order()).all(|x| q.element_order(x) as u64 == *p));
        prop_assert_eq!(q.order(), p.pow(rank as u32) as usize);
        let xs: Vec<usize> = picks.iter().map(|i| i.index(g.order())).collect();
        let images: Vec<usize> = xs.iter().map(|&x| pi.apply(x)).collect();
        if q.subgroup(&images).is_whole() {
            prop_assert!(g.subgroup(&xs).is_whole());
        }
    }

    #[test]
    fn fiber_product_order(n in 2usize..6, a in 1usize..4, b in 1usize..4) {
        let h = cyclic_group(n);
        let g1 = cyclic_group(n * a);
        let g2 = cyclic_group(n * b);
        let phi1 = Homomorphism::from_generator_images(&g1, &h, &[h.generators()[0]]).unwrap();
        let phi2 = Homomorphism::from_generator_images(&g2, &h, &[h.generators()[0]]).unwrap();
        let f = fiber_product(&phi1, &phi2).unwrap();
        prop_assert_eq!(f.order() * h.order(), g1.order() * g2.order());
    }

    #[test]
    fn odd_witnesses_validate(k in 0usize..4, pick in any::<prop::sample::Index>()) {
        let groups = [
            metacyclic_group(7, 3, 0, 2).unwrap(),
            metacyclic_group(7, 9, 0, 2).unwrap(),
            metacyclic_group(9, 3, 0, 4).unwrap(),
            metacyclic_group(13, 3, 0, 3).unwrap(),
        ];
        let d = &groups[k].group;
        let i = d.normal_closure(&[pick.index(d.order())]);
        for p in [2u64, 3, 5, 7, 13] {
            let v = qp_realizable_odd(d, &i, p).unwrap();
            if v.is_realizable() {
                prop_assert!(v.validate().is_ok(), "{:?}", v.validate());
            }
        }
    }

    #[test]
    fn tame_conjugation_invariance(gens in prop::collection::vec(any::<prop::sample::Index>(), 1..3), g in any::<prop::sample::Index>(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let s4 = perm_group(&[vec![1, 2, 3, 0], vec![1, 0, 2, 3]]);
        let xs: Vec<usize> = gens.iter().map(|i| i.index(s4.order())).collect();
        let d = s4.subgroup(&xs);
        let dg = d.as_group();
        let i = dg.normal_closure(&[dg.generators().first().copied().unwrap_or(0)]);
        let x = g.index(s4.order());
        let d2 = d.conjugate(x);
        let i2 = d2.restrict(&d.lift(&i).conjugate(x)).unwrap();
        let before = tame_realizable(&dg, &i, p).is_some();
        let after = tame_realizable(&d2.as_group(), &i2, p).is_some();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn classify_conjugation_invariance(p in prop::sample::select(vec![3u64, 5]), k in any::<prop::sample::Index>(), g in any::<prop::sample::Index>()) {
        let ctx = Gl2Context::new(p).unwrap();
        let cands = inertia_candidates(&ctx);
        let c = cands[k.index(cands.len())];
        let s = c.subgroup(&ctx).unwrap().conjugate(g.index(ctx.group().order()));
        prop_assert_eq!(classify_candidate(&ctx, &s).unwrap(), c);
    }

    #[test]
    fn split_aliases_share_requirements(p in prop::sample::select(vec![3u64, 5, 7]), a in 0u64..6, b in 0u64..6, a2 in 0u64..6, b2 in 0u64..6) {
        let ctx = Gl2Context::new(p).unwrap();
        let x = InertiaCandidate::SplitTame { a: a % (p - 1), b: b % (p - 1) };
        let y = InertiaCandidate::SplitTame { a: a2 % (p - 1), b: b2 % (p - 1) };
        if x.subgroup(&ctx).unwrap() == y.subgroup(&ctx).unwrap() {
            prop_assert_eq!(candidate_requirement(&ctx, x).ok(), candidate_requirement(&ctx, y).ok());
        }
    }
}

#[test]
fn trivial_action_semidirect_is_direct() {
    let n = abelian_group(&[2, 3]).unwrap();
    let h = cyclic_group(4);
    let action: Vec<Homomorphism> = h.generators().iter().map(|_| Homomorphism::identity(&n)).collect();
    let s = semidirect_product(&n, &h, &action).unwrap();
    let d = direct_product(&n, &h).unwrap();
    assert_eq!(s.order(), d.order());
    for x in s.elements() {
        assert!(d.index_of(x).is_some());
    }
    for x in 0..s.order() {
        for y in 0..s.order() {
            let xy = s.element(s.mul(x, y));
            assert_eq!(d.mul_elements(s.element(x), s.element(y)), *xy);
        }
    }
}

#[test]
fn wreath_orders_and_base() {
    for (p, h) in [(2u64, cyclic_group(2)), (2, cyclic_group(3)), (3, cyclic_group(2)), (2, abelian_group(&[2, 2]).unwrap())] {
        let w = wreath_product_regular(p, &h).unwrap();
        let m = h.order();
        assert_eq!(w.order(), (p as usize).pow(m as u32) * m);
        // the base generator at the identity coordinate
        let (base, top) = w.factors().unwrap();
        let unit = Element::tuple(base.element(base.generators()[0]).clone(), top.element(0).clone());
        let x = w.index_of(&unit).unwrap();
        assert_eq!(w.normal_closure(&[x]).order(), (p as usize).pow(m as u32));
    }
}

#[test]
fn tame_generators_lift_through_p_kernels() {
    // extensions N -> G -> H with N a p-group generated as a normal subgroup by one element
    for (m, p) in [(metacyclic_group(9, 3, 0, 4).unwrap(), 3u64), (metacyclic_group(7, 9, 0, 2).unwrap(), 3), (metacyclic_group(25, 5, 0, 6).unwrap(), 5)] {
        let g = &m.group;
        for a in 0..g.order() {
            let n = g.normal_closure(&[a]);
            if n.is_trivial() || !n.as_group().is_p_group(p) {
                continue;
            }
            let (h, pi) = quotient_group(g, &n).unwrap();
            for y in 0..h.order() {
                let i = h.normal_closure(&[y]);
                let Some(w) = tame_realizable(&h, &i, p) else { continue };
                let (tau, sigma) = (h.index_of(&w.tau).unwrap(), h.index_of(&w.sigma).unwrap());
                assert!(lift_tame_generators(&pi, tau, sigma, p).is_some(), "order {} kernel {}", g.order(), n.order());
            }
        }
    }
}

#[test]
fn tower_projections() {
    for (e, f, r, p) in [(1u64, 1u64, 0u64, 2u64), (1, 2, 0, 2), (1, 3, 0, 2), (2, 1, 0, 3), (2, 1, 1, 3), (1, 2, 0, 3), (3, 2, 0, 2), (2, 2, 0, 5)] {
        let Ok(t) = lambda_fiber(e, f, r, p) else { continue };
        let (a, b) = t.inertia_projections();
        assert_eq!(a, t.t_subgroup(), "{e} {f} {r} {p}");
        assert_eq!(b, t.tau_preimage(), "{e} {f} {r} {p}");
    }
}

/// Affine points of the long Weierstrass equation over `F_l`, plus infinity.
fn brute_count(a: &[i64; 5], l: i64) -> i64 {
    let m = |x: i64| x.rem_euclid(l);
    let mut n = 1;
    for x in 0..l {
        for y in 0..l {
            let lhs = y * y + a[0] * x * y + a[2] * y;
            let rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
            if m(lhs - rhs) == 0 {
                n += 1;
            }
        }
    }
    n
}

fn coefficients() -> impl Strategy<Value = [i64; 5]> {
    prop::array::uniform5(-12i64..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn discriminant_identity(a in coefficients()) {
        let Ok(e) = EllipticCurve::from_integers(a) else { return Ok(()) };
        let lhs = BigRational::from_integer(BigInt::from(1728)) * e.discriminant();
        prop_assert_eq!(lhs, e.c4() * e.c4() * e.c4() - e.c6() * e.c6());
    }

    #[test]
    fn point_counts(a in coefficients(), l in prop::sample::select(vec![3i64, 5, 7, 11, 13, 17, 19, 23])) {
        let Ok(e) = EllipticCurve::from_integers(a) else { return Ok(()) };
        if big_mod(e.discriminant().numer(), l as u64) == 0 {
            return Ok(());
        }
        let d = e.point_count(l as u64).unwrap();
        let ap = d.a.unwrap();
        prop_assert!(ap * ap <= 4 * l);
        prop_assert_eq!(l + 1 - ap, brute_count(&a, l));
        prop_assert_eq!(d.kind == ReductionType::Supersingular, ap.rem_euclid(l) == 0);
        if l >= 5 && d.kind == ReductionType::Supersingular {
            prop_assert_eq!(ap, 0);
        }
    }

    #[test]
    fn canonical_lift_consistency(a in coefficients(), p in prop::sample::select(vec![3u64, 5, 7, 11, 13]), k in prop::array::uniform5(-3i64..3)) {
        let Ok(e) = EllipticCurve::from_integers(a) else { return Ok(()) };
        let Ok(r) = canonical_lift_j(&e, p) else { return Ok(()) };
        let p2 = p * p;
        prop_assert_eq!(r.j_lift % p, e.j_mod(p).unwrap());
        let h = hilbert_class_polynomial(r.discriminant).unwrap();
        let val = h.iter().rev().fold(BigInt::from(0), |acc, c| acc * r.j_lift + c);
        prop_assert_eq!(big_mod(&val, p2), 0);
        // same reduction mod p, so the same lift
        let b: [i64; 5] = std::array::from_fn(|i| a[i] + p as i64 * k[i]);
        let Ok(e2) = EllipticCurve::from_integers(b) else { return Ok(()) };
        if let Ok(r2) = canonical_lift_j(&e2, p) {
            prop_assert_eq!(r2.j_lift, r.j_lift);
        }
    }

    #[test]
    fn residues_are_multiplicative(x in -500i64..500, y in -500i64..500, dx in 1i64..60, dy in 1i64..60, m in prop::sample::select(vec![7u64, 9, 25, 49, 121])) {
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let (u, v) = (q(x, dx), q(y, dy));
        if let (Ok(ru), Ok(rv)) = (residue_of_rational(&u, m), residue_of_rational(&v, m)) {
            prop_assert_eq!(residue_of_rational(&(u.clone() * v.clone()), m).unwrap(), ru * rv % m);
            prop_assert_eq!(residue_of_rational(&(u + v), m).unwrap(), (ru + rv) % m);
        }
    }
}

#[test]
fn primality_agrees_with_trial_division() {
    for n in 0u64..5000 {
        let naive = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        assert_eq!(is_prime(n), naive, "{n}");
    }
}
