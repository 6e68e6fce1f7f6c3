mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{example_pair, gf31i, random_map};
use miquel::chains::*;
use miquel::gf::{Field, Fq2};
use miquel::oracle::{chain_census_bruteforce, common_tangents_bruteforce};
use miquel::plane::{standard_tangent_pair, Circle, MobiusMap, Point};
use miquel::position::{capacitance, classify};
use miquel::sweep::lines_through_origin;
use miquel::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn hist(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
    pairs.iter().copied().collect()
}

#[test]
fn tangent_predictions() {
    let h = |p, m| predict_tangent(&Field::new(p, m).unwrap()).histogram();
    assert_eq!(h(7, 1), hist(&[(7, 1)]));
    assert_eq!(h(3, 3), hist(&[(3, 9)]));
    assert_eq!(h(5, 1), hist(&[]));
    assert!(!predict_tangent(&Field::new(5, 1).unwrap()).exists);
}

#[test]
fn standard_tangent_chain_in_m7() {
    let f = Field::new(7, 1).unwrap();
    let (b1, b2) = standard_tangent_pair(&f);
    let chains = construct_tangent_chains(&b1, &b2).unwrap();
    assert_eq!(chains.len(), 1);
    assert_eq!(chains[0].len(), 7);
    let i = f.int(-1).sqrt_ext();
    let quarter = f.int(4).inv().unwrap();
    let expected: BTreeSet<_> = f
        .elements()
        .map(|t| Circle::first(i.scale(t), quarter).unwrap())
        .collect();
    let got: BTreeSet<_> = chains[0].circles().iter().copied().collect();
    assert_eq!(got, expected);
    assert!(chains[0].validate(&b1, &b2).is_ok());
}

#[test]
fn no_tangent_chains_when_minus_one_is_a_square() {
    for (p, m) in [(5, 1), (3, 2), (13, 1)] {
        let f = Field::new(p, m).unwrap();
        let (b1, b2) = standard_tangent_pair(&f);
        assert_eq!(construct_tangent_chains(&b1, &b2).unwrap_err(), Error::NoChains);
    }
}

#[test]
fn tangent_chains_partition_the_pencil() {
    for (p, m) in [(3, 1), (7, 1), (11, 1), (3, 3)] {
        let f = Field::new(p, m).unwrap();
        let chains = standard_tangent_chains(&f).unwrap();
        assert_eq!(chains.len() as u64, (p as u64).pow(m - 1));
        let mut used: Vec<_> = chains.iter().flat_map(|c| c.circles().to_vec()).collect();
        used.sort();
        assert_eq!(used, standard_pencil(&f));
        assert!(chains.iter().all(|c| c.len() as u32 == p));
    }
}

#[test]
fn transported_tangent_pair_in_m7() {
    let f = Field::new(7, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (b1, b2) = standard_tangent_pair(&f);
    for _ in 0..5 {
        let g = random_map(&f, &mut rng);
        let (c1, c2) = (g.apply_circle(&b1), g.apply_circle(&b2));
        let chains = construct_chains(&c1, &c2).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].len(), 7);
        let census = chain_census_bruteforce(&c1, &c2).unwrap();
        assert_eq!(census.chains, chains);
    }
}

#[test]
fn tangent_reduction() {
    let f = Field::new(11, 1).unwrap();
    let (b1, b2) = standard_tangent_pair(&f);
    let red = reduce_tangent_pair(&b1, &b2).unwrap();
    assert_eq!(red.standard, (b1, b2));
    for c in common::all_circles(&f).iter().step_by(29) {
        assert_eq!(red.map.apply_circle(c), *c, "standard pair reduces by the identity");
    }
    // second-type image at r = 3: λ = 2/4 brings it to B²(1, 1)
    let c2 = Circle::second(Fq2::from(f.one()), f.int(3)).unwrap();
    let red = reduce_tangent_pair(&b1, &c2).unwrap();
    assert_eq!(red.map.apply_circle(&b1), b1);
    assert_eq!(red.map.apply_circle(&c2), b2);
    let (a, b) = (Circle::first(Fq2::from(f.zero()), f.one()).unwrap(), b1);
    assert_eq!(reduce_tangent_pair(&a, &b).unwrap_err(), Error::NotTangent);
}

#[test]
fn intersecting_reduction_of_the_m31_pair() {
    let f = gf31i();
    let (c1, c2) = example_pair(&f);
    let IntersectingReduction::Symmetric { map, gamma } = reduce_intersecting_pair(&c1, &c2).unwrap()
    else {
        panic!("the example pair has common tangents");
    };
    let (s1, s2) = symmetric_pair(gamma).unwrap();
    assert_eq!(map.apply_circle(&c1), s1);
    assert_eq!(map.apply_circle(&c2), s2);
    assert_ne!(gamma.square(), gamma.conj().square());
    assert_eq!(capacitance(&s1, &s2).unwrap(), f.int(2));
}

#[test]
fn intersecting_reduction_of_a_symmetric_pair_is_a_scaling() {
    let f = Field::new(7, 1).unwrap();
    let gamma = f.parse_fq2("1+2*w").unwrap();
    let (s1, s2) = symmetric_pair(gamma).unwrap();
    let IntersectingReduction::Symmetric { map, gamma: g } = reduce_intersecting_pair(&s1, &s2).unwrap()
    else {
        panic!("γ1γ2 = N(γ) is a square in GF(q²)");
    };
    let zero = Point::Finite(Fq2::from(f.zero()));
    assert_eq!(map.apply(zero), zero);
    assert_eq!(map.apply(Point::Infinity), Point::Infinity);
    assert_eq!(symmetric_pair(g).unwrap(), (map.apply_circle(&s1), map.apply_circle(&s2)));
}

#[test]
fn intersecting_pair_without_common_tangents() {
    let f = Field::new(7, 1).unwrap();
    let lines = lines_through_origin(&f);
    let mut seen = false;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b) = (lines[i], lines[j]);
            if let IntersectingReduction::NoCommonTangents { gamma1, gamma2, .. } =
                reduce_intersecting_pair(&a, &b).unwrap()
            {
                seen = true;
                assert!(!(gamma1 * gamma2).is_square());
                assert!(tangent_pencil(&a, &b).unwrap().is_empty());
                assert!(common_tangents_bruteforce(&a, &b).unwrap().is_empty());
                let kappa = capacitance(&a, &b).unwrap();
                assert!(!kappa.is_square());
            }
        }
    }
    assert!(seen);
}

#[test]
fn pencil_sizes() {
    for p in [3, 5, 7, 11] {
        let f = Field::new(p, 1).unwrap();
        let (b1, b2) = standard_tangent_pair(&f);
        assert_eq!(tangent_pencil(&b1, &b2).unwrap().len() as u32, p);
    }
    let f = gf31i();
    let (c1, c2) = example_pair(&f);
    let pencil = tangent_pencil(&c1, &c2).unwrap();
    assert_eq!(pencil.len(), 60);
    assert_eq!(pencil, common_tangents_bruteforce(&c1, &c2).unwrap());
}

#[test]
fn closed_form_pencils_match_the_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [5, 7, 11] {
        let f = Field::new(p, 1).unwrap();
        for _ in 0..20 {
            let a = common::random_circle(&f, &mut rng);
            let b = common::random_circle(&f, &mut rng);
            if a == b || classify(&a, &b).unwrap().is_disjoint() {
                continue;
            }
            assert_eq!(
                tangent_pencil(&a, &b).unwrap(),
                common_tangents_bruteforce(&a, &b).unwrap(),
                "{a} {b}"
            );
        }
    }
}

#[test]
fn m31_prediction() {
    let f = gf31i();
    let (c1, c2) = example_pair(&f);
    let pred = predict_intersecting(&c1, &c2).unwrap();
    assert_eq!(pred.case, CaseTag::TwoFamilies);
    assert_eq!(pred.kappa, Some(f.int(2)));
    assert_eq!(pred.sqrt_kappa, Some(f.int(8)));
    assert_eq!(pred.w_plus, Some(f.int(9)));
    assert_eq!(pred.w_minus, Some(f.int(8)));
    assert_eq!(pred.histogram(), hist(&[(15, 2), (5, 6)]));
    assert!(pred.length_clauses_hold(31));
    let chains = construct_chains(&c1, &c2).unwrap();
    let mut h = BTreeMap::new();
    for c in &chains {
        *h.entry(c.len() as u64).or_insert(0) += 1;
    }
    assert_eq!(h, pred.histogram());
}

#[test]
fn kappa_zero_in_m7() {
    let f = Field::new(7, 1).unwrap();
    let pred = predict_intersecting_kappa(f.zero());
    assert_eq!(pred.case, CaseTag::KappaZero);
    // √2 = 3 in GF(7), so 3 + 2√2 = 9 = 2, of order 3
    assert_eq!(pred.w_plus, Some(f.int(2)));
    assert_eq!(pred.histogram(), hist(&[(3, 4)]));
    for p in [3, 11] {
        let g = Field::new(p, 1).unwrap();
        let pred = predict_intersecting_kappa(g.zero());
        assert_eq!(pred.case, CaseTag::KappaZeroNone);
        assert!(!pred.exists);
    }
}

#[test]
fn nonsquare_kappa_means_no_chains() {
    let f = Field::new(11, 1).unwrap();
    for k in f.elements().filter(|k| !k.is_square()) {
        let pred = predict_intersecting_kappa(k);
        assert_eq!(pred.case, CaseTag::KappaNonsquare);
        assert!(!pred.exists);
    }
}

#[test]
fn family_shapes_by_residue_of_q() {
    for p in [7, 11, 19] {
        let f = Field::new(p, 1).unwrap();
        let mut seen = [false; 2];
        for gamma in f.ext_elements() {
            if generators(gamma).is_err() {
                continue;
            }
            match construct_intersecting_chains(gamma) {
                Ok(chains) => {
                    assert!(gamma.is_square());
                    let n: usize = chains.iter().map(|c| c.len()).sum();
                    assert_eq!(n as u32, 2 * (p - 1));
                    seen[0] = true;
                }
                Err(e) => {
                    assert_eq!(e, Error::NoChains);
                    assert!(!gamma.is_square());
                    seen[1] = true;
                }
            }
        }
        assert_eq!(seen, [true, true]);
    }
    for (p, m) in [(5, 1), (13, 1), (3, 2)] {
        let f = Field::new(p, m).unwrap();
        for gamma in f.ext_elements().filter(|g| generators(*g).is_ok()) {
            let chains = construct_intersecting_chains(gamma).unwrap();
            let n: usize = chains.iter().map(|c| c.len()).sum();
            assert_eq!(n as u32, f.q() - 1);
        }
    }
}

#[test]
fn degenerate_gamma() {
    let f = Field::new(7, 1).unwrap();
    for gamma in [Fq2::from(f.int(3)), f.sqrt_alpha().scale(f.int(2))] {
        assert_eq!(generators(gamma).unwrap_err(), Error::DegenerateGamma);
        assert_eq!(construct_intersecting_chains(gamma).unwrap_err(), Error::DegenerateGamma);
    }
}

#[test]
fn generators_are_w_plus_and_w_minus() {
    for p in [7, 11, 13, 19] {
        let f = Field::new(p, 1).unwrap();
        for gamma in f.ext_elements().filter(|g| generators(*g).is_ok()) {
            let g = generators(gamma).unwrap();
            let (s1, s2) = symmetric_pair(gamma).unwrap();
            let pred = predict_intersecting(&s1, &s2).unwrap();
            let ws: Vec<_> = [pred.w_plus, pred.w_minus].into_iter().flatten().collect();
            for x in [g.u, g.v].into_iter().flatten() {
                assert!(!x.is_zero() && x != f.one());
                let inv = x.inv().unwrap();
                assert!(ws.contains(&x) || ws.contains(&inv), "p={p} γ={gamma}");
            }
        }
    }
}

#[test]
fn validation_reports() {
    let f = Field::new(7, 1).unwrap();
    let (b1, b2) = standard_tangent_pair(&f);
    let chain = standard_tangent_chains(&f).unwrap().remove(0);
    let mut repeated = chain.circles().to_vec();
    repeated[3] = repeated[0];
    assert_eq!(validate_chain(&repeated, &b1, &b2).unwrap_err().clause, Clause::Distinct);
    let short = &chain.circles()[..2];
    assert_eq!(validate_chain(short, &b1, &b2).unwrap_err().clause, Clause::Length);
    let mut shuffled = chain.circles().to_vec();
    shuffled.swap(1, 3);
    assert_eq!(validate_chain(&shuffled, &b1, &b2).unwrap_err().clause, Clause::Consecutive);
    let stranger = Circle::first(f.parse_fq2("1+1*w").unwrap(), f.one()).unwrap();
    let mut with_stranger = chain.circles().to_vec();
    with_stranger.push(stranger);
    let v = validate_chain(&with_stranger, &b1, &b2).unwrap_err();
    assert!(matches!(v.clause, Clause::Consecutive | Clause::Carriers));
}

/// u-circle c → v-circle c·t → u-circle -c → v-circle -c·t with
/// t = (γ - γ̄)/(γ + γ̄): every step is a cross-family tangency.
fn mixed_cycle(gamma: Fq2<'_>) -> Vec<Circle<'_>> {
    let f = gamma.field();
    let pencil = symmetric_pencil(gamma).unwrap();
    let t = (gamma - gamma.conj()) / (gamma + gamma.conj());
    let c = Fq2::from(f.one());
    let find = |center: Fq2<'_>| *pencil.iter().find(|m| m.c() == center).unwrap();
    vec![find(c), find(c * t), find(-c), find(-(c * t))]
}

#[test]
fn mixed_chain_is_rejected_by_clause_three() {
    for p in [7, 11, 13] {
        let f = Field::new(p, 1).unwrap();
        for gamma in f.ext_elements().filter(|g| generators(*g).is_ok()).step_by(5) {
            let cycle = mixed_cycle(gamma);
            let (s1, s2) = symmetric_pair(gamma).unwrap();
            for i in 0..4 {
                assert!(classify(&cycle[i], &cycle[(i + 1) % 4]).unwrap().is_tangent());
            }
            let v = validate_chain(&cycle, &s1, &s2).unwrap_err();
            assert_eq!(v.clause, Clause::ContactPoints);
            assert_eq!(v.circles.len(), 3);
            assert!(v.circles.contains(&s1) || v.circles.contains(&s2));
        }
    }
}

#[test]
fn disjoint_predictions() {
    let f = Field::new(7, 1).unwrap();
    // c = 4: b = 1, μ = ±1; μ = 1 gives ξ = 1, μ = -1 has -μ = 1 a square
    let pred = predict_disjoint_kappa(f.int(4), None);
    let d = pred.disjoint.as_ref().unwrap();
    assert_eq!(d.b, f.one());
    let xi_one = d.roots.iter().find(|r| r.mu == f.one()).unwrap();
    assert_eq!(xi_one.xi, Some(Fq2::from(f.one())));
    assert!(!xi_one.admissible);
    assert!(!pred.exists);
    let none = (0..7)
        .map(|k| predict_disjoint_kappa(f.int(k), None))
        .find(|p| p.case == CaseTag::DisjointNonsquare)
        .unwrap();
    assert!(!none.exists && none.families.is_empty());

    let (b1, b2) = standard_tangent_pair(&f);
    assert_eq!(predict_disjoint(&b1, &b2, None).unwrap_err(), Error::NotDisjoint);
    assert_eq!(predict_intersecting(&b1, &b2).unwrap_err(), Error::NotIntersecting);
}

#[test]
fn prediction_depends_only_on_kappa() {
    let f = gf31i();
    let (c1, c2) = example_pair(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let base = predict_intersecting(&c1, &c2).unwrap();
    assert_eq!(predict_intersecting(&c2, &c1).unwrap().histogram(), base.histogram());
    for _ in 0..10 {
        let g: MobiusMap = random_map(&f, &mut rng);
        let pred = predict_intersecting(&g.apply_circle(&c1), &g.apply_circle(&c2)).unwrap();
        assert_eq!(pred.histogram(), base.histogram());
    }
}
