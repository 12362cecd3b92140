use nojunta::bounds::{
    count_indicator, crt_witness_for_profile, solve_crt, verify_nonsym_bound, IndicatorMode, SearchMode,
};
use nojunta::enumerate::random_function_with;
use nojunta::junta::{build_digraph, find_nojunta_restriction};
use nojunta::modpoly::{
    binom_mod_u64, degree_integers, degree_mod, mobius_transform, period_l, prime_power_degrees,
    symmetric_spectrum, Modulus, Ring,
};
use nojunta::{Restriction, SymmetryProfile, TruthTable, VarSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn table(n: usize, seed: u64) -> TruthTable {
    random_function_with(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn arb_table(max_n: usize) -> impl Strategy<Value = TruthTable> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| table(n, seed))
}

/// Sparse tables with many useless variables, so degenerate cases are exercised.
fn arb_junta(max_n: usize) -> impl Strategy<Value = TruthTable> {
    (2..=max_n, any::<u64>(), any::<u32>()).prop_map(|(n, seed, keep)| {
        let keep = keep & ((1 << n) - 1);
        let base = table(n, seed);
        TruthTable::from_index_fn(n, |x| base.bit(x & keep as usize)).unwrap()
    })
}

fn arb_profile(max_n: usize) -> impl Strategy<Value = SymmetryProfile> {
    (1..=max_n).prop_flat_map(|n| {
        (1u64..(1 << (n + 1)) - 1).prop_map(move |code| SymmetryProfile::from_code(n, code).unwrap())
    })
}

/// `c_D = sum_{S ⊆ D} (-1)^{|D \ S|} f(S)`, evaluated term by term.
fn interpolation_coefficient(tt: &TruthTable, d: usize) -> i64 {
    let mut sum = 0i64;
    let mut s = d;
    loop {
        let sign = if (d ^ s).count_ones() % 2 == 0 { 1 } else { -1 };
        sum += sign * tt.bit(s) as i64;
        if s == 0 {
            break;
        }
        s = (s - 1) & d;
    }
    sum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn evaluate_agrees_with_bits(tt in arb_table(10), x in any::<usize>()) {
        let x = x % tt.len();
        let point: Vec<bool> = (0..tt.num_vars()).map(|i| x >> i & 1 == 1).collect();
        prop_assert_eq!(tt.evaluate(&point).unwrap(), tt.bit(x));
    }

    #[test]
    fn hex_and_json_round_trip(tt in arb_table(12)) {
        prop_assert_eq!(&TruthTable::from_hex(tt.num_vars(), &tt.to_hex()).unwrap(), &tt);
        let back: TruthTable = serde_json::from_str(&serde_json::to_string(&tt).unwrap()).unwrap();
        prop_assert_eq!(back, tt);
    }

    #[test]
    fn restrictions_compose(n in 3usize..=9, seed in any::<u64>(), split in any::<u64>(), bits in any::<u64>()) {
        let tt = table(n, seed);
        // Variables 1..=n go to the first restriction, the second, or stay free (at least one).
        let roles: Vec<u64> = (0..n).map(|i| split >> (2 * i) & 3).collect();
        let free_count = roles.iter().filter(|&&r| r >= 2).count();
        prop_assume!(free_count >= 1 && free_count < n);
        let bit = |i: usize| bits >> i & 1 == 1;
        let first: Vec<(usize, bool)> = (1..=n).filter(|&i| roles[i - 1] == 0).map(|i| (i, bit(i))).collect();
        let second: Vec<(usize, bool)> = (1..=n).filter(|&i| roles[i - 1] == 1).map(|i| (i, bit(i))).collect();
        let union = Restriction::new(first.iter().chain(&second).copied()).unwrap();
        let direct = tt.restrict(&union).unwrap();

        let (staged_table, staged_free) = if first.is_empty() {
            (tt.clone(), (1..=n).collect::<Vec<_>>())
        } else {
            let s = tt.restrict(&Restriction::new(first.clone()).unwrap()).unwrap();
            (s.table, s.free)
        };
        let (final_table, final_free) = if second.is_empty() {
            (staged_table, staged_free)
        } else {
            let relabeled = second.iter().map(|&(i, b)| (staged_free.iter().position(|&f| f == i).unwrap() + 1, b));
            let s = staged_table.restrict(&Restriction::new(relabeled).unwrap()).unwrap();
            let free = s.free.iter().map(|&y| staged_free[y - 1]).collect();
            (s.table, free)
        };
        prop_assert_eq!(final_table, direct.table);
        prop_assert_eq!(final_free, direct.free);
    }

    #[test]
    fn complement_preserves_dependencies(tt in arb_junta(10)) {
        prop_assert_eq!(tt.complement().useless_set(), tt.useless_set());
    }

    #[test]
    fn digraph_matches_restricted_useless_sets(tt in arb_junta(8)) {
        let n = tt.num_vars();
        let g = build_digraph(&tt).unwrap();
        for i in 1..=n {
            for b in [false, true] {
                prop_assert!(!g.head_set(i, b).contains(i));
                let sub = tt.restrict(&Restriction::single(i, b)).unwrap();
                prop_assert_eq!(g.head_set(i, b), sub.useless_original());
            }
        }
    }

    #[test]
    fn nondegenerate_functions_have_a_pivot(tt in arb_table(12)) {
        prop_assume!(tt.num_vars() >= 2 && tt.is_nondegenerate());
        let cert = find_nojunta_restriction(&tt).unwrap();
        prop_assert!(cert.subfunction.table.is_nondegenerate());
        // Earlier pivots are all degenerate.
        for i in 1..=cert.pivot {
            for b in [false, true] {
                if (i, b) == (cert.pivot, cert.bit) {
                    break;
                }
                let sub = tt.restrict(&Restriction::single(i, b)).unwrap();
                prop_assert!(!sub.table.is_nondegenerate());
            }
        }
    }

    #[test]
    fn profile_round_trip(p in arb_profile(14)) {
        let tt = p.to_table();
        prop_assert_eq!(tt.symmetry_profile(), Some(p.clone()));
        prop_assert_eq!(tt.is_nondegenerate(), p.is_nondegenerate());
    }

    #[test]
    fn mobius_is_the_interpolation_polynomial(tt in arb_table(8), m in 2u64..=30) {
        let md = Modulus::new(m).unwrap();
        let poly = mobius_transform(&tt, &Ring::Mod(md.clone()));
        for d in 0..tt.len() {
            let want = md.reduce(interpolation_coefficient(&tt, d));
            prop_assert_eq!(poly.coefficient(VarSet::from_mask(d as u32)), want);
        }
        let values = poly.evaluate_all();
        for (x, v) in values.iter().enumerate() {
            prop_assert_eq!(*v, tt.bit(x) as i64);
        }
    }

    #[test]
    fn integer_degree_dominates(tt in arb_table(10), m in 2u64..=60) {
        let md = Modulus::new(m).unwrap();
        prop_assert!(degree_integers(&tt) >= degree_mod(&tt, &md));
        let per_factor = prime_power_degrees(&tt, &md);
        prop_assert_eq!(per_factor.iter().copied().max().unwrap(), degree_mod(&tt, &md));
    }

    #[test]
    fn degree_ignores_complement(tt in arb_table(10), m in 2u64..=60) {
        let md = Modulus::new(m).unwrap();
        prop_assert_eq!(prime_power_degrees(&tt, &md), prime_power_degrees(&tt.complement(), &md));
        prop_assert_eq!(degree_integers(&tt), degree_integers(&tt.complement()));
    }

    #[test]
    fn periods_divide(m in 2u64..=1000, k in 0u64..=30, extra in 0u64..=30) {
        let md = Modulus::new(m).unwrap();
        let d = k + extra;
        prop_assert_eq!(period_l(d, &md).unwrap() % period_l(k, &md).unwrap(), 0);
    }

    #[test]
    fn spectrum_reproduces_profile(p in arb_profile(20), m in 2u64..=100) {
        let ring = Ring::modulo(m).unwrap();
        let s = symmetric_spectrum(&p, &ring);
        for w in 0..=p.num_vars() {
            let v = (0..=p.num_vars()).fold(0u64, |acc, k| {
                (acc + s.coeffs[k] as u64 * binom_mod_u64(w as u64, k as u64, m)) % m
            });
            prop_assert_eq!(v, p.value(w) as u64);
        }
    }

    #[test]
    fn crt_solution_satisfies_system(r1 in any::<u32>(), r2 in any::<u32>(), a in 1u32..500, b in 1u32..500) {
        let (m1, m2) = (a as u128 * 2 + 1, b as u128 * 2);
        let g = num_integer::gcd(m1, m2);
        match solve_crt(&[(r1 as u128 % m1, m1), (r2 as u128 % m2, m2)]) {
            Some((x, l)) => {
                prop_assert_eq!(g, 1);
                prop_assert_eq!(l, m1 * m2);
                prop_assert!(x < l);
                prop_assert_eq!(x % m1, r1 as u128 % m1);
                prop_assert_eq!(x % m2, r2 as u128 % m2);
            }
            None => prop_assert!(g > 1),
        }
    }

    #[test]
    fn witnesses_satisfy_invariants(p in arb_profile(18), m in prop::sample::select(vec![6u64, 10, 12, 14, 15, 18, 20, 21, 30, 42, 60, 105, 210])) {
        let md = Modulus::new(m).unwrap();
        let w = crt_witness_for_profile(&p, &md).unwrap();
        prop_assert!(w.tau <= w.d_min);
        prop_assert!(w.a_size > p.num_vars() as u128);
        prop_assert!(w.a_size <= w.period_product && w.period_product <= w.degree_product);
        for (i, &l) in w.periods.iter().enumerate() {
            let r = if i == w.primary { w.tau as u128 % l } else { 0 };
            prop_assert_eq!(w.a_size % l, r);
        }
    }

    #[test]
    fn indicator_is_complement_invariant(n in 3usize..=9, seed in any::<u64>(), k in 1usize..=3) {
        prop_assume!(k < n);
        let tt = table(n, seed);
        let a = count_indicator(&tt, k, IndicatorMode::Exhaustive).unwrap().hits;
        let b = count_indicator(&tt.complement(), k, IndicatorMode::Exhaustive).unwrap().hits;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn subfunction_degrees_are_dominated(n in 4usize..=11, seed in any::<u64>(), m in prop::sample::select(vec![6u64, 10, 12, 30])) {
        let tt = table(n, seed);
        let rep = verify_nonsym_bound(&tt, &Modulus::new(m).unwrap(), SearchMode::default()).unwrap();
        if let (Some(found), Some(degrees)) = (&rep.found, &rep.degrees) {
            for (d, s) in degrees.iter().zip(&found.sub_degrees) {
                prop_assert!(d >= s);
            }
            prop_assert_eq!(rep.monotone, Some(true));
        }
    }
}
