use betadesign::beta_verifier::{
    enumerate_family, is_beta_i, meets_block_bound, mu_d_bruteforce, mu_d_formula, Family,
};
use betadesign::bounds::s1_size_formula;
use betadesign::constructions::{complete_design, fano, pair_design, witt_24};
use betadesign::design_model::{complement_design, extract_parameters, intersection_histogram};
use betadesign::exact_arith::{binomial, rat};
use betadesign::{subsets, Design};
use proptest::prelude::*;

fn small_design() -> impl Strategy<Value = Design> {
    (4usize..=9)
        .prop_flat_map(|v| (Just(v), 2..v))
        .prop_flat_map(|(v, k)| {
            let n = subsets::count(v, k) as usize;
            (Just(v), Just(k), proptest::collection::vec(any::<bool>(), n))
        })
        .prop_filter_map("need two blocks", |(v, k, pick)| {
            let masks: Vec<u64> = subsets::range(v, k, 0, subsets::count(v, k))
                .zip(pick)
                .filter_map(|(m, keep)| keep.then_some(m))
                .collect();
            (masks.len() >= 2).then(|| Design::from_masks(v, masks).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn json_round_trip(d in small_design()) {
        let text = d.to_json();
        prop_assert_eq!(Design::from_json(&text).unwrap(), d.clone());
        prop_assert_eq!(Design::from_json(&text).unwrap().to_json(), text);
    }

    #[test]
    fn complement_keeps_c(d in small_design()) {
        let p = extract_parameters(&d).unwrap();
        let comp = complement_design(&d);
        let q = extract_parameters(&comp).unwrap();
        prop_assert_eq!(q.c, p.c);
        prop_assert_eq!(q.k, p.v - p.k);
        prop_assert_eq!(q.d, p.v + p.d - 2 * p.k);
        prop_assert_eq!(complement_design(&comp), d);
    }

    #[test]
    fn histogram_sums_to_b_minus_one(d in small_design()) {
        for &b in d.blocks() {
            let total: usize = intersection_histogram(&d, b).unwrap().values().sum();
            prop_assert_eq!(total, d.b() - 1);
        }
    }

    #[test]
    fn beta_levels_transport_and_block_bound(d in small_design()) {
        let p = extract_parameters(&d).unwrap();
        let comp = complement_design(&d);
        for i in 1..=p.c {
            if p.d + 2 * i - 1 > p.v {
                continue;
            }
            let here = is_beta_i(&d, i).unwrap();
            prop_assert_eq!(here.holds, here.witness.is_none());
            prop_assert_eq!(here.holds, meets_block_bound(&p, i));
            if let Ok(there) = is_beta_i(&comp, p.c - i + 1) {
                prop_assert_eq!(here.holds, there.holds, "i={}", i);
            }
        }
    }
}

/// Checks every counting identity on one verified design.
fn check_verified(d: &Design) {
    let p = extract_parameters(d).unwrap();
    let mus: Vec<u64> = d.blocks().iter().map(|&b| mu_d_bruteforce(d, b).unwrap()).collect();
    assert!(mus.windows(2).all(|w| w[0] == w[1]), "mu_d not constant");
    let (v, k, dd, b, c) = (p.v as i64, p.k as i64, p.d as i64, p.b as i64, p.c as i64);
    let mut verified_any = false;
    for i in 1..=p.c {
        if p.d + 2 * i - 1 > p.v || !is_beta_i(d, i).unwrap().holds {
            continue;
        }
        verified_any = true;
        assert_eq!(mu_d_formula(&p, i).unwrap(), rat(mus[0]), "mu_d at i={i}");
        assert!(meets_block_bound(&p, i));
        let ii = i as i64;
        if i >= 2 && dd + 2 * ii - 4 <= v {
            let s1 = enumerate_family(d, i, Family::S1).unwrap();
            if let Ok(n) = s1_size_formula(v, k, dd, ii, b) {
                assert_eq!(n, rat(s1.n), "|S1| at i={i}");
            }
            let pp = binomial(k, dd + ii - 2) * binomial(v - k, ii - 2) * b;
            let qq = binomial(c, ii - 2).pow(2) * b * mus[0];
            assert_eq!(rat(s1.p), rat(pp), "P at i={i}");
            assert_eq!(rat(s1.q), rat(qq), "Q at i={i}");
        }
    }
    assert!(verified_any);
}

#[test]
fn counting_identities_on_fixtures() {
    check_verified(&fano());
    for k in 2..=6 {
        check_verified(&pair_design(k).unwrap());
    }
    check_verified(&complete_design(6, 3).unwrap());
    check_verified(&complete_design(7, 2).unwrap());
}

#[test]
fn counting_identities_on_witt_and_complement() {
    let w = witt_24();
    check_verified(&w);
    check_verified(&complement_design(&w));
}
