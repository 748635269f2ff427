mod common;

use std::collections::BTreeSet;

use common::*;
use invlim::algebra::field::field_equal;
use invlim::algebra::poly::QPoly;
use invlim::algebra::roots::perron_root;
use invlim::closure::{brute_force_factors, subword_closure};
use invlim::germs::{all_germs, eventual_range, germ_map};
use invlim::word::bar;
use invlim::Letter;
use num_traits::ToPrimitive;
use proptest::prelude::*;

proptest! {
    #[test]
    fn bar_is_an_involution(w in word_over(4, 12)) {
        prop_assert_eq!(bar(&bar(&w)), w);
    }

    #[test]
    fn bar_reverses_products(u in word_over(4, 8), v in word_over(4, 8)) {
        let uv: Vec<Letter> = u.iter().chain(&v).copied().collect();
        let expect: Vec<Letter> = bar(&v).into_iter().chain(bar(&u)).collect();
        prop_assert_eq!(bar(&uv), expect);
    }

    #[test]
    fn substitution_commutes_with_bar(s in (1..=3usize).prop_flat_map(|n| (substitution_sized(n, n, true, 4), word_over(n, 8)))) {
        let (s, w) = s;
        prop_assert_eq!(s.apply(&bar(&w)).unwrap(), bar(&s.apply(&w).unwrap()));
    }

    #[test]
    fn abelianization_is_functorial(
        (sigma, tau) in (1..=3usize, 1..=3usize, 1..=3usize).prop_flat_map(|(p, q, r)| {
            (substitution_sized(q, p, true, 3), substitution_sized(r, q, true, 3))
        })
    ) {
        let composed = sigma.compose(&tau).unwrap();
        prop_assert_eq!(
            composed.abelianization(),
            sigma.abelianization().mul(&tau.abelianization()).unwrap()
        );
    }

    #[test]
    fn powers_add(s in substitution(true), a in 1u32..3, b in 1u32..3) {
        prop_assert_eq!(
            s.power(a + b).unwrap(),
            s.power(a).unwrap().compose(&s.power(b).unwrap()).unwrap()
        );
    }

    #[test]
    fn closure_matches_brute_force(s in substitution(false)) {
        let starts: Vec<Letter> = (1..=s.domain_size()).map(Letter::pos).collect();
        for k in [2, 3] {
            let c = subword_closure(&s, k).unwrap();
            let scan = brute_force_factors(&s, k, &starts, 16, 1 << 15).unwrap();
            prop_assert!(scan.is_subset(c.words()));
            // Every closure word is seen by expansion up to its recorded level.
            for w in c.words() {
                let o = c.origin(w).unwrap();
                let found = brute_force_factors(&s, k, &[o.start], o.level, usize::MAX).unwrap();
                prop_assert!(found.contains(w));
            }
        }
    }

    #[test]
    fn germ_map_of_power(s in substitution(true), k in 1u32..4) {
        let g = germ_map(&s).unwrap();
        prop_assert_eq!(germ_map(&s.power(k).unwrap()).unwrap(), g.power(k as usize));
    }

    #[test]
    fn eventual_range_is_stable(s in substitution(true)) {
        let g = germ_map(&s).unwrap();
        let r = eventual_range(&s).unwrap();
        let image: BTreeSet<Letter> = r.iter().map(|&x| g.apply(x)).collect();
        prop_assert_eq!(&image, &r);
        let all: BTreeSet<Letter> = all_germs(s.domain_size()).into_iter().collect();
        prop_assert!(r.is_subset(&all));
    }

    #[test]
    fn char_poly_matches_cofactors(a in (1..=5usize).prop_flat_map(|n| matrix(n, 3))) {
        prop_assert_eq!(a.char_poly().unwrap().coeffs().to_vec(), char_poly_oracle(&a));
    }

    #[test]
    fn perron_root_dominates(a in (1..=5usize).prop_flat_map(|n| matrix(n, 3))) {
        prop_assume!(a.is_aperiodic().unwrap());
        let lambda = perron_root(&a).unwrap();
        let l = lambda.to_f64();
        let cp: Vec<f64> = char_poly_oracle(&a).iter().map(|c| c.to_f64().unwrap()).collect();
        let roots = complex_roots(&cp);
        let mut dominant = 0;
        for (re, im) in roots {
            let modulus = (re * re + im * im).sqrt();
            if (re - l).abs() < 1e-6 && im.abs() < 1e-6 {
                dominant += 1;
            } else {
                prop_assert!(modulus < l - 1e-9, "root {re}+{im}i vs {l}");
            }
        }
        prop_assert_eq!(dominant, 1);
    }

    #[test]
    fn perron_root_of_power(a in (1..=4usize).prop_flat_map(|n| matrix(n, 2)), k in 1u32..=3) {
        prop_assume!(a.is_aperiodic().unwrap());
        let l = perron_root(&a).unwrap();
        let lk = perron_root(&a.pow(k).unwrap()).unwrap();
        // minpoly(λ^k) vanishes at λ^k, exactly, in Q(λ).
        let xk = QPoly::new((0..=k).map(|i| if i == k { 1.into() } else { 0.into() }).map(num_rational::BigRational::from_integer).collect());
        let r = lk.minpoly().to_q().compose_mod(&xk, &l.minpoly().to_q());
        prop_assert!(r.is_zero());
        let iv = l.refined_bits(80).interval().eval(&xk);
        let lk = lk.refined_bits(80);
        prop_assert!(!(iv.below(lk.interval()) || lk.interval().below(&iv)));
    }

    #[test]
    fn field_equality_is_symmetric(a in (2..=3usize).prop_flat_map(|n| matrix(n, 2)), b in (2..=3usize).prop_flat_map(|n| matrix(n, 2))) {
        prop_assume!(a.is_aperiodic().unwrap() && b.is_aperiodic().unwrap());
        let (x, y) = (perron_root(&a).unwrap(), perron_root(&b).unwrap());
        let xy = field_equal(&x, &y, 1000).unwrap();
        let yx = field_equal(&y, &x, 1000).unwrap();
        prop_assert_eq!(xy.status, yx.status);
        prop_assert_eq!(field_equal(&x, &x, 1000).unwrap().status, invlim::algebra::field::FieldStatus::Equal);
    }
}
