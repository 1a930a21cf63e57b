use biext_core::abelian::{FgAbGroup, GroupElement};
use biext_core::biext::chain::{biextension_from_chain_pairing, ChainBiextension};
use biext_core::biext::toy::{doubling_chain_pairing, integer_toy, rank_two_chain_pairing, IntegerToy};
use biext_core::biext::{laws, AuditConfig, Biextension, Bisubgroup, Restricted, Twisted};
use biext_core::group::AbGroup;
use biext_core::SeededRng;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;

type IntBiext = Biextension<IntegerToy, IntegerToy>;

fn int_toy() -> IntBiext {
    let (t, p) = integer_toy(3);
    Biextension::build(t, p, &AuditConfig::default()).unwrap()
}

fn rank_two() -> ChainBiextension {
    biextension_from_chain_pairing(&rank_two_chain_pairing().unwrap(), 1, &AuditConfig::default()).unwrap()
}

fn doubling() -> ChainBiextension {
    let cp = doubling_chain_pairing(FgAbGroup::cyclic(4), 1, 1).unwrap();
    biextension_from_chain_pairing(&cp, 1, &AuditConfig::default()).unwrap()
}

fn chain_restriction_keep(a: &Vec<BigInt>, b: &Vec<BigInt>) -> bool {
    let zero = BigInt::from(0);
    &a[0] % 3 == zero || &b[0] % 3 == zero
}

fn chain_twist(n: &FgAbGroup) -> impl Fn(&Vec<BigInt>, &Vec<BigInt>) -> GroupElement + Clone + '_ {
    move |a: &Vec<BigInt>, b: &Vec<BigInt>| n.element(vec![&a[0] * &b[0] + &a[a.len() - 1] * &b[0]]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_laws_on_integer_toy(seed in any::<u64>()) {
        let mut rng = SeededRng::seed_from_u64(seed);
        laws::sampled(&int_toy(), 4, &mut rng).unwrap();
    }

    #[test]
    fn group_laws_on_chain_instances(seed in any::<u64>()) {
        let mut rng = SeededRng::seed_from_u64(seed);
        laws::sampled(&rank_two(), 2, &mut rng).unwrap();
        laws::sampled(&doubling(), 2, &mut rng).unwrap();
    }

    #[test]
    fn weil_pairing_properties_on_rank_two(seed in any::<u64>()) {
        let bx = rank_two();
        let t = bx.bisubgroup();
        let n = bx.coefficients().clone();
        let mut rng = SeededRng::seed_from_u64(seed);
        let (a1, a2, b) = (t.sample_a(&mut rng), t.sample_a(&mut rng), t.sample_b(&mut rng));
        let l = 4;
        let w1 = bx.weil_pairing(&a1, &b, l).unwrap();
        let w2 = bx.weil_pairing(&a2, &b, l).unwrap();
        let w12 = bx.weil_pairing(&t.group_a().add(&a1, &a2), &b, l).unwrap();
        prop_assert_eq!(n.add(&w1, &w2), w12);
        prop_assert!(n.is_zero(&n.mul_int(&w1, l as i64)));
        // Changing the lift by a coboundary leaves the value unchanged.
        let a1k = t.group_a().add(&a1, &t.sample_kernel_a(&mut rng));
        let bk = t.group_b().add(&b, &t.sample_kernel_b(&mut rng));
        prop_assert_eq!(bx.weil_pairing(&a1k, &bk, l).unwrap(), w1.clone());
        prop_assert_eq!(bx.weil_pairing_from_fibers(&a1, &b, l).unwrap(), w1);
    }

    #[test]
    fn restriction_is_compatible(seed in any::<u64>()) {
        let full = int_toy();
        let (t, p) = integer_toy(3);
        let restricted = Biextension::unchecked(
            Restricted::new(t, |a: &i64, b: &i64| a % 3 == 0 || b % 3 == 0),
            p,
            seed,
        );
        let mut rng = SeededRng::seed_from_u64(seed);
        let (alpha, gamma) = laws::random_base(&restricted, &mut rng);
        let (beta, delta) = laws::random_base(&restricted, &mut rng);
        laws::restriction(&full, &restricted, (&alpha, &beta), (&gamma, &delta), &mut rng).unwrap();
    }

    #[test]
    fn twist_is_an_isomorphism(seed in any::<u64>()) {
        let phi = move |a: &i64, b: &i64| FgAbGroup::cyclic(4).element_i64(&[a * b]).unwrap();
        let base = int_toy();
        let (t, p) = integer_toy(3);
        let twisted = Biextension::build(t, Twisted::new(p, phi), &AuditConfig::default()).unwrap();
        let mut rng = SeededRng::seed_from_u64(seed);
        let (alpha, gamma) = laws::random_base(&base, &mut rng);
        let (beta, delta) = laws::random_base(&base, &mut rng);
        laws::twist(&base, &twisted, phi, (&alpha, &beta), (&gamma, &delta), &mut rng).unwrap();
    }
}

#[test]
fn exhaustive_laws_on_finite_quotients() {
    let mut rng = SeededRng::seed_from_u64(7);
    assert!(laws::exhaustive(&int_toy(), &mut rng).unwrap().unwrap() > 0);
    assert!(laws::exhaustive(&doubling(), &mut rng).unwrap().unwrap() > 0);
    let n = laws::exhaustive(&rank_two(), &mut rng).unwrap().unwrap();
    assert!(n >= 16, "{n} quadruples");
}

#[test]
fn exhaustive_restriction_and_twist_on_rank_two() {
    let cp = rank_two_chain_pairing().unwrap();
    let full = rank_two();
    let (qa, qb) = full.bisubgroup().quotient_elements().unwrap();
    let restricted = Biextension::unchecked(
        Restricted::new(full.bisubgroup().clone(), chain_restriction_keep),
        full.trivialization().clone(),
        1,
    );
    let n = cp.coefficients().clone();
    let phi = chain_twist(&n);
    let twisted = Biextension::build(
        full.bisubgroup().clone(),
        Twisted::new(full.trivialization().clone(), phi.clone()),
        &AuditConfig::default(),
    )
    .unwrap();
    let mut rng = SeededRng::seed_from_u64(11);
    for alpha in &qa {
        for beta in &qa {
            for gamma in &qb {
                for delta in &qb {
                    laws::restriction(&full, &restricted, (alpha, beta), (gamma, delta), &mut rng).unwrap();
                    laws::twist(&full, &twisted, &phi, (alpha, beta), (gamma, delta), &mut rng).unwrap();
                }
            }
        }
    }
}

#[test]
fn integer_toy_weil_pairing_by_both_routes() {
    let bx = int_toy();
    let two = FgAbGroup::cyclic(4).element_i64(&[2]).unwrap();
    for (a, b) in [(1, 1), (3, 1), (1, 5), (-1, 7)] {
        assert_eq!(bx.weil_pairing(&a, &b, 2).unwrap(), two);
        assert_eq!(bx.weil_pairing_from_fibers(&a, &b, 2).unwrap(), two);
    }
}

#[test]
fn rank_two_pairing_table() {
    // For a = e_s, b = f_t: l·e_s = d((l/d_s) e_s) and l·f_t = d((l/d_t) f_t), so
    // the pairing is (l/d_s)·φ_0(e_s, f_t) + (l/d_t)·φ_1(e_s, f_t) mod 8.
    let bx = rank_two();
    let n = FgAbGroup::cyclic(8);
    let phi0 = [[1, 0], [1, 1]];
    let phi1 = [[1, 0], [2, 3]];
    let d = [4, 2];
    for s in 0..2 {
        for t in 0..2 {
            let mut a = vec![BigInt::from(0); 2];
            a[s] = 1.into();
            let mut b = vec![BigInt::from(0); 2];
            b[t] = 1.into();
            let l = 4;
            let expected = (l / d[s]) * phi0[s][t] + (l / d[t]) * phi1[s][t];
            let got: GroupElement = bx.weil_pairing(&a, &b, l as u32).unwrap();
            assert_eq!(got, n.element_i64(&[expected]).unwrap(), "generators ({s}, {t})");
        }
    }
}
