use std::sync::Arc;

use fsig_core::*;
use proptest::prelude::*;

fn poly_from(ring: &Arc<PolyRing>, terms: &[(Vec<u32>, i64)]) -> Poly {
    Poly::from_terms(ring, terms.iter().map(|(e, c)| (Monomial::from_exponents(e), *c)))
}

fn terms(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), 1i64..7), 1..=max_terms)
}

/// Terms with no constant part.
fn terms_in_m(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    terms(n, max_deg, max_terms).prop_map(|mut t| {
        for (e, _) in t.iter_mut() {
            if e.iter().all(|&a| a == 0) {
                e[0] = 1;
            }
        }
        t
    })
}

fn m_primary(ring: &Arc<PolyRing>, a: u32, b: u32, extra: &[Vec<(Vec<u32>, i64)>]) -> Ideal {
    let mut gens = vec![poly_from(ring, &[(vec![a, 0], 1)]), poly_from(ring, &[(vec![0, b], 1)])];
    gens.extend(extra.iter().map(|t| poly_from(ring, t)));
    Ideal::new(ring, gens).unwrap()
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn reduced_basis_is_canonical(p in prime(), gens in prop::collection::vec(terms(3, 3, 3), 1..4)) {
        let ring = PolyRing::new(p, &["x", "y", "z"]).unwrap();
        let polys: Vec<Poly> = gens.iter().map(|t| poly_from(&ring, t)).collect();
        let mut rev = polys.clone();
        rev.reverse();
        let a = Ideal::new(&ring, polys.clone()).unwrap().groebner(MonomialOrder::GrevLex).unwrap().polys();
        let b = Ideal::new(&ring, rev).unwrap().groebner(MonomialOrder::GrevLex).unwrap().polys();
        prop_assert_eq!(&a, &b);
        let ideal = Ideal::new(&ring, polys.clone()).unwrap();
        for g in &polys {
            prop_assert!(ideal.member(g).unwrap());
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_congruent(p in prime(), gens in prop::collection::vec(terms(2, 3, 3), 1..3), f in terms(2, 4, 5)) {
        let ring = PolyRing::new(p, &["x", "y"]).unwrap();
        let ideal = Ideal::new(&ring, gens.iter().map(|t| poly_from(&ring, t)).collect()).unwrap();
        let f = poly_from(&ring, &f);
        let nf = ideal.normal_form(&f, MonomialOrder::GrevLex).unwrap();
        prop_assert_eq!(ideal.normal_form(&nf, MonomialOrder::GrevLex).unwrap(), nf.clone());
        prop_assert!(ideal.member(&(&f - &nf)).unwrap());
    }

    #[test]
    fn kunz_scaling(p in prime(), a in 1u32..4, b in 1u32..4, extra in prop::collection::vec(terms_in_m(2, 3, 3), 0..2)) {
        let ring = PolyRing::new(p, &["x", "y"]).unwrap();
        let s = RingPresentation::new(&ring, vec![], None, 0).unwrap();
        let j = m_primary(&ring, a, b, &extra);
        let base = s.length(&j).unwrap();
        let q = p as u64;
        prop_assert_eq!(s.length(&j.bracket_power(q).unwrap()).unwrap(), (q * q) as usize * base);
    }

    #[test]
    fn length_is_additive_along_colons(p in prime(), a in 1u32..5, b in 1u32..5, extra in prop::collection::vec(terms_in_m(2, 3, 3), 0..2), u in terms(2, 3, 3)) {
        let ring = PolyRing::new(p, &["x", "y"]).unwrap();
        let r = RingPresentation::new(&ring, vec![ring.parse("x*y").unwrap()], None, 0).unwrap();
        let j = m_primary(&ring, a, b, &extra);
        let u = poly_from(&ring, &u);
        prop_assume!(!u.is_zero());
        let whole = r.length(&j).unwrap();
        let with_u = r.length(&j.add_generators([u.clone()]).unwrap()).unwrap();
        let colon = r.length(&r.lift(&j).unwrap().colon(&u).unwrap()).unwrap();
        prop_assert_eq!(whole - with_u, colon);
    }

    #[test]
    fn artinian_and_elimination_colons_agree(p in prime(), a in 1u32..4, b in 1u32..4, extra in prop::collection::vec(terms_in_m(2, 2, 3), 0..2), u in terms(2, 2, 2)) {
        let ring = PolyRing::new(p, &["x", "y"]).unwrap();
        let j = m_primary(&ring, a, b, &extra);
        let u = poly_from(&ring, &u);
        prop_assume!(!u.is_zero());
        let fast = j.colon(&u).unwrap();
        let ideal_u = Ideal::new(&ring, vec![u.clone()]).unwrap();
        let slow = j.intersect(&ideal_u).unwrap();
        // (J ∩ (u)) = u (J : u)
        let times_u = Ideal::new(&ring, fast.generators().iter().map(|g| g * &u).collect()).unwrap();
        prop_assert!(slow.same_ideal(&times_u).unwrap());
    }
}

/// `S/(f)` for a random `f` of degree at most 3 in three variables, with an
/// sop given by two of the variables.
fn random_hypersurface(p: u32, t: &[(Vec<u32>, i64)]) -> Option<(RingPresentation, IrreducibleFamily)> {
    let ring = PolyRing::new(p, &["x", "y", "z"]).unwrap();
    let f = poly_from(&ring, t);
    if f.is_zero() {
        return None;
    }
    let r = RingPresentation::new(&ring, vec![f], None, 0).ok()?;
    for sop in [["x", "y"], ["x", "z"], ["y", "z"]] {
        if let Ok(fam) = build_family(&r, &sop) {
            return Some((r, fam));
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn splitting_invariants_on_hypersurfaces(p in prop::sample::select(vec![2u32, 3]), t in terms_in_m(3, 3, 3)) {
        let Some((r, fam)) = random_hypersurface(p, &t) else { return Ok(()) };
        let policy = SplittingPolicy::default();
        let rep = fsignature_sequence(&r, &fam, 2, &policy, &EvidenceConfig::default()).unwrap();
        for row in &rep.rows {
            prop_assert!(row.splitting.trace.iter().all(|&(_, l)| l <= row.q.pow(3)));
            prop_assert!(row.s_e.num <= row.s_e.den, "s_e = {}", row.s_e);
            if row.splitting.stabilized {
                let w = policy.window as usize;
                let tail = &row.splitting.trace[row.splitting.trace.len() - w..];
                prop_assert!(tail.iter().all(|&(_, l)| l == tail[0].1));
            }
        }
        // a_{p^2} >= a_p^2
        let (a1, a2) = (rep.rows[0].a_q, rep.rows[1].a_q);
        prop_assert!(a2 >= a1 * a1, "a_p = {a1}, a_p2 = {a2}");
        for t in 1..=3 {
            prop_assert!(fam.socle_chain_holds(t).unwrap());
        }
        if !fedder_fpure(&r).unwrap() {
            prop_assert!(rep.rows.iter().all(|row| row.a_q == 0));
        }
    }

    #[test]
    fn colon_route_matches_hypersurface_route(p in prop::sample::select(vec![2u32, 3, 5]), t in terms_in_m(3, 3, 3)) {
        let Some((r, fam)) = random_hypersurface(p, &t) else { return Ok(()) };
        let sn = splitting_number(&r, &fam, 1, &SplittingPolicy::default()).unwrap();
        prop_assume!(sn.stabilized);
        let f = r.hypersurface().unwrap();
        prop_assert_eq!(sn.a_q, hypersurface_splitting_oracle(f, 1, DEFAULT_TERM_BUDGET).unwrap());
    }
}

#[test]
fn alpha_localization_examples() {
    let ctx = |a, h| LocalizationAlpha {
        alpha_at_q: a,
        height: h,
    };
    assert_eq!(alpha_localize(ctx(0, 1)), 1);
    assert_eq!(alpha_localize(ctx(2, 3)), 5);
    // A1 at q = 3 against its localization at a height-one prime, which is regular
    assert!(localization_bound_check(5, 2, 0, 9, 1, 1, 3));
    assert!(!localization_bound_check(5, 2, 0, 4, 1, 1, 3));
}

#[test]
fn order_choice_does_not_change_lengths() {
    let r = build_ring(3, &["x", "y", "z"], &["x*y - z^2"], Some(2), None).unwrap();
    let fam = build_family(&r, &["x", "y"]).unwrap();
    let lex = SplittingPolicy {
        order: MonomialOrder::Lex,
        ..SplittingPolicy::default()
    };
    for e in 1..=2 {
        assert_eq!(
            splitting_number(&r, &fam, e, &lex).unwrap().a_q,
            splitting_number(&r, &fam, e, &SplittingPolicy::default()).unwrap().a_q
        );
    }
}
