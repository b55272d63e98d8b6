mod common;

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use common::*;
use prodreg::betti::{betti_table, taylor_degree_cap};
use prodreg::hankel::{canonical_decomposition, gamma as lib_gamma, sigma_compare};
use prodreg::linforms::{family_text, random_family};
use prodreg::parse::{parse_family, parse_monomial_ideal, parse_polynomial_system, PolynomialSystem};
use prodreg::polymatroid::is_polymatroidal;
use prodreg::quotients::{check_order, monomial_colon, regularity_from_certificate, search_order, OrderCheck, QuotientCertificate, SearchOutcome};
use prodreg::{HomPolynomial, Monomial, MonomialIdeal, Rationals};

/// Monomial ideals in at most 4 variables with generators of degree 1..=6.
fn small_ideal(max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    (1usize..=4).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(0u32..=3, n), 1..=max_gens)
            .prop_filter("degrees 1..=6", |gens| gens.iter().all(|g| (1..=6).contains(&degree(g))))
            .prop_map(move |gens| MonomialIdeal::new(n, gens.into_iter().map(Monomial::new).collect()).unwrap())
    })
}

fn exponent_vector(max_n: usize, max_exp: u32) -> impl Strategy<Value = Exps> {
    (1usize..=max_n).prop_flat_map(move |n| prop::collection::vec(0u32..=max_exp, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hilbert_matches_enumeration(ideal in small_ideal(5)) {
        let gens = exps(&ideal);
        let graded = ideal.to_graded(&Rationals);
        for e in 0..=8 {
            let expected = hilbert(ideal.n(), &gens, e);
            prop_assert_eq!(ideal.hilbert_function(e) as usize, expected);
            prop_assert_eq!(graded.hilbert_value(e), expected);
        }
    }

    #[test]
    fn colon_matches_enumeration(ideal in small_ideal(5), u in prop::collection::vec(0u32..=3, 4)) {
        let n = ideal.n();
        let u = Monomial::new(u[..n].to_vec());
        let gens = exps(&ideal);
        let top = ideal.max_degree();
        let members: Vec<Exps> = (0..=top)
            .flat_map(|e| monomials(n, e))
            .filter(|m| in_colon(m, &gens, u.exponents()))
            .collect();
        let expected = minimal(&members);
        let got: HashSet<Exps> = exps(&ideal.colon(&u)).into_iter().collect();
        prop_assert_eq!(&got, &expected);
        let listed: HashSet<Exps> = monomial_colon(ideal.gens(), &u)
            .unwrap()
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        prop_assert_eq!(&listed, &expected);
    }

    #[test]
    fn saturation_matches_enumeration(ideal in small_ideal(4)) {
        let n = ideal.n();
        let gens = exps(&ideal);
        let cap = taylor_degree_cap(&ideal).max(1);
        let report = ideal.to_graded(&Rationals).saturation(cap);
        let profile: Vec<usize> = (0..=cap).map(|e| saturation_gap(n, &gens, e)).collect();
        prop_assert_eq!(&report.profile, &profile);
        let sat = (0..=cap).find(|&s| profile[s as usize..].iter().all(|&g| g == 0));
        prop_assert_eq!(report.sat, sat);
    }

    #[test]
    fn betti_euler_characteristic_matches_hilbert(ideal in small_ideal(4)) {
        let n = ideal.n();
        let gens = exps(&ideal);
        let cap = taylor_degree_cap(&ideal);
        let table = betti_table(&ideal.to_graded(&Rationals), cap).unwrap();
        prop_assert!(table.certified());
        for j in 0..=cap {
            let k: i64 = (0..=n.min(j as usize))
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    sign * binom(n, i) * hilbert(n, &gens, j - i as u32) as i64
                })
                .sum();
            let euler: i64 = (0..=n)
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    sign * table.get(i, j) as i64
                })
                .sum();
            prop_assert_eq!(euler, k, "degree {}", j);
        }
    }

    #[test]
    fn polymatroid_check_matches_exchange_oracle(
        n in 2usize..=4,
        d in 2u32..=3,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..=6),
    ) {
        let all = monomials(n, d);
        let gens: Vec<Exps> = picks.iter().map(|p| all[p.index(all.len())].clone()).collect::<HashSet<_>>().into_iter().collect();
        let ideal = MonomialIdeal::new(n, gens.iter().cloned().map(Monomial::new).collect()).unwrap();
        let set: HashSet<&Exps> = gens.iter().collect();
        let exchange = gens.iter().all(|u| gens.iter().all(|v| {
            (0..n).filter(|&i| u[i] > v[i]).all(|i| {
                (0..n).filter(|&j| u[j] < v[j]).any(|j| {
                    let mut w = u.clone();
                    w[i] -= 1;
                    w[j] += 1;
                    set.contains(&w)
                })
            })
        }));
        let check = is_polymatroidal(&ideal).unwrap();
        prop_assert_eq!(check.holds(), exchange);
    }

    #[test]
    fn search_matches_permutation_oracle(ideal in small_ideal(6)) {
        let gens = exps(&ideal);
        let exists = some_order_has_linear_quotients(&gens);
        match search_order(ideal.gens()).unwrap() {
            SearchOutcome::Found(c) => {
                prop_assert!(exists);
                c.verify().unwrap();
                let order: Vec<Exps> = c.order().iter().map(|m| m.exponents().to_vec()).collect();
                prop_assert!(order_has_linear_quotients(&order));
            }
            SearchOutcome::NoOrder => prop_assert!(!exists),
        }
    }

    #[test]
    fn linear_quotients_give_max_degree_regularity(ideal in small_ideal(5)) {
        if let SearchOutcome::Found(c) = search_order(ideal.gens()).unwrap() {
            let table = betti_table(&ideal.to_graded(&Rationals), taylor_degree_cap(&ideal)).unwrap();
            let reg = table.regularity().unwrap();
            prop_assert!(reg.certified);
            prop_assert_eq!(reg.value, regularity_from_certificate(&c) as i64);
            match check_order(c.order()).unwrap() {
                OrderCheck::Certificate(again) => prop_assert_eq!(again, c),
                OrderCheck::Failure(f) => prop_assert!(false, "rechecking failed: {:?}", f),
            }
        }
    }

    #[test]
    fn canonical_decomposition_is_greedy_lex(e in exponent_vector(6, 2).prop_filter("degree 1..=8", |e| (1..=8).contains(&degree(e)))) {
        let dec = canonical_decomposition(&Monomial::new(e.clone())).unwrap();
        let got: Vec<Exps> = dec.chains().iter().map(|c| c.exponents().to_vec()).collect();
        prop_assert_eq!(&got, &greedy_lex_decomposition(&e));
        prop_assert_eq!(dec.product().exponents().to_vec(), e);
    }

    #[test]
    fn canonical_shape_has_largest_gammas(e in exponent_vector(6, 2).prop_filter("degree 1..=7", |e| (1..=7).contains(&degree(e)))) {
        let shape = canonical_decomposition(&Monomial::new(e.clone())).unwrap().shape();
        for dec in all_decompositions(&e) {
            let s: Vec<u32> = dec.iter().map(|c| degree(c)).collect();
            for t in 1..=degree(&e) + 1 {
                prop_assert!(lib_gamma(t, &shape) >= gamma(t, &s), "t = {}, canonical {:?}, other {:?}", t, shape, s);
            }
        }
    }

    #[test]
    fn monomial_ideals_round_trip(ideal in small_ideal(5)) {
        prop_assert_eq!(parse_monomial_ideal(&ideal.to_text()).unwrap(), ideal);
    }

    #[test]
    fn families_round_trip(n in 1usize..=4, d in 1usize..=4, seed in any::<u64>()) {
        let family = random_family(n, d, seed).unwrap();
        prop_assert_eq!(parse_family(&family_text(&family)).unwrap(), family);
    }

    #[test]
    fn polynomial_systems_round_trip(
        n in 1usize..=4,
        polys in prop::collection::vec(prop::collection::vec((any::<prop::sample::Index>(), -5i64..=5, 1i64..=3), 1..=4), 1..=3),
        d in 1u32..=3,
    ) {
        let basis = monomials(n, d);
        let gens: Vec<HomPolynomial<Rationals>> = polys
            .iter()
            .map(|terms| {
                let terms = terms
                    .iter()
                    .map(|(i, num, den)| (Monomial::new(basis[i.index(basis.len())].clone()), BigRational::new(BigInt::from(*num), BigInt::from(*den))))
                    .collect();
                HomPolynomial::new(&Rationals, n, terms).unwrap()
            })
            .filter(|p| !p.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let system = PolynomialSystem::new(n, gens).unwrap();
        let text = system.to_text();
        let again = parse_polynomial_system(&text).unwrap();
        prop_assert!(again == system, "{}", text);
    }

    #[test]
    fn certificates_round_trip(ideal in small_ideal(5)) {
        if let SearchOutcome::Found(c) = search_order(ideal.gens()).unwrap() {
            prop_assert_eq!(QuotientCertificate::from_json(&c.to_json()).unwrap(), c);
        }
    }
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

#[test]
fn sigma_is_a_total_order() {
    for n in 1..=5 {
        for d in 1..=5 {
            let ms: Vec<Monomial> = monomials(n, d).into_iter().map(Monomial::new).collect();
            let cmp = |a: &Monomial, b: &Monomial| sigma_compare(a, b).unwrap();
            for a in &ms {
                for b in &ms {
                    let ab = cmp(a, b);
                    assert_eq!(ab == Ordering::Equal, a == b);
                    assert_eq!(ab, cmp(b, a).reverse());
                }
            }
            let mut sorted = ms.clone();
            sorted.sort_by(|a, b| cmp(b, a));
            for (i, a) in sorted.iter().enumerate() {
                for b in &sorted[i + 1..] {
                    assert_eq!(cmp(a, b), Ordering::Greater, "{a} vs {b} in {n} variables");
                }
            }
        }
    }
}
