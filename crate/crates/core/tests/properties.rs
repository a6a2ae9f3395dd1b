use num_bigint::BigInt;
use proptest::prelude::*;

use qloop::arith::{gbinom, qbinom, series_inverse, QRat, ZSeries};
use qloop::cartan::{CartanData, CartanType};
use qloop::lweight::{a_monomial, fundamental_lweight, kr_monomial, LWeight, Monomial};
use qloop::modules::*;
use qloop::relations::{verify_asymptotic_relations, CheckWindow};
use qloop::{char_formula, char_inverse, FormulaParams};

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn laurent() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-3i64..=3, -3i64..=3), 1..4)
}

fn qrat() -> impl Strategy<Value = QRat> {
    (laurent(), laurent()).prop_filter_map("zero denominator", |(n, d)| {
        let t = |v: Vec<(i64, i64)>| v.into_iter().map(|(c, e)| (BigInt::from(c), e)).collect();
        QRat::from_terms(t(n), t(d)).ok()
    })
}

fn nonzero_qrat() -> impl Strategy<Value = QRat> {
    qrat().prop_filter("zero", |a| !a.is_zero())
}

fn cartan() -> impl Strategy<Value = CartanData> {
    prop::sample::select(vec![
        CartanType::A(1),
        CartanType::A(2),
        CartanType::A(3),
        CartanType::B(2),
        CartanType::C(3),
        CartanType::D(4),
        CartanType::G2,
        CartanType::F4,
    ])
    .prop_map(CartanData::new)
}

mod arith {
    use super::*;

    proptest! {
        #![proptest_config(cfg(64))]

        #[test]
        fn field_axioms(a in nonzero_qrat(), b in qrat()) {
            let ainv = a.inv().unwrap();
            prop_assert_eq!(&(&a * &b) * &ainv, b.clone());
            prop_assert!((&b + &(-b.clone())).is_zero());
            // equal expressions, different routes, identical canonical form
            prop_assert_eq!(&(&a + &b) * &a, &(&a * &a) + &(&b * &a));
        }

        #[test]
        fn qbinom_symmetries(s in 0u32..8, r in 0u32..8, d in 1u32..3) {
            prop_assume!(r <= s);
            let x = qbinom(s, r, d);
            prop_assert_eq!(&x, &qbinom(s, s - r, d));
            prop_assert_eq!(x.invert_q(), x);
        }

        #[test]
        fn series_double_inverse(tail in prop::collection::vec(qrat(), 0..4), c in -3i64..=3) {
            prop_assume!(c != 0);
            let mut coeffs = vec![QRat::q_pow(c)];
            coeffs.extend(tail);
            let s = ZSeries::new(coeffs, 5);
            let back = series_inverse(&series_inverse(&s).unwrap()).unwrap();
            prop_assert_eq!(back.coeffs(), s.coeffs());
        }

        #[test]
        fn pascal(a in -12i64..12, b in 1i64..8) {
            let g = |x: i64, y: i64| gbinom(&BigInt::from(x), &BigInt::from(y)).unwrap();
            prop_assert_eq!(g(a, b), g(a - 1, b) + g(a - 1, b - 1));
        }
    }
}

mod cartan_data {
    use super::*;

    fn small_weight(n: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-3i64..=3, n)
    }

    proptest! {
        #![proptest_config(cfg(64))]

        #[test]
        fn symmetrized_matrix(cd in cartan()) {
            let n = cd.rank();
            for i in 1..=n {
                for j in 1..=n {
                    prop_assert_eq!(cd.d(i) * cd.c(i, j), cd.d(j) * cd.c(j, i));
                }
            }
        }

        #[test]
        fn dominance_is_a_partial_order(
            cd in cartan(),
            seeds in prop::collection::vec(prop::collection::vec(-2i64..=2, 8), 3),
        ) {
            // weights in the root lattice, so comparisons are often defined
            let n = cd.rank();
            let w: Vec<Vec<i64>> = seeds.iter().map(|s| cd.root_weight(&s[..n])).collect();
            let leq = |a: &Vec<i64>, b: &Vec<i64>| cd.weight_leq(a, b).is_some();
            prop_assert!(leq(&w[0], &w[0]));
            if leq(&w[0], &w[1]) && leq(&w[1], &w[0]) {
                prop_assert_eq!(&w[0], &w[1]);
            }
            if leq(&w[0], &w[1]) && leq(&w[1], &w[2]) {
                prop_assert!(leq(&w[0], &w[2]));
            }
        }

        #[test]
        fn lowering_by_a_simple_root(cd in cartan(), seed in small_weight(8), i in 1usize..8) {
            let n = cd.rank();
            prop_assume!(i <= n);
            let w = seed[..n].to_vec();
            let lowered: Vec<i64> = w.iter().zip(cd.simple_root_weight(i)).map(|(a, b)| a - b).collect();
            let mut e = vec![0; n];
            e[i - 1] = 1;
            prop_assert_eq!(cd.weight_leq(&lowered, &w), Some(e));
        }
    }
}

mod ell_weights {
    use super::*;

    fn monomial(n: usize) -> impl Strategy<Value = Monomial> {
        prop::collection::vec((1..=n, -4i64..=4, -2i64..=2), 0..4).prop_map(Monomial::from_exponents)
    }

    proptest! {
        #![proptest_config(cfg(64))]

        #[test]
        fn eval_is_an_injective_morphism(a in monomial(2), b in monomial(2)) {
            let cd = CartanData::new(CartanType::A(2));
            prop_assert_eq!(a.mul(&b).eval(&cd), a.eval(&cd).mul(&b.eval(&cd)));
            if a != b {
                prop_assert_ne!(a.eval(&cd), b.eval(&cd));
            }
            prop_assert_eq!(a.eval(&cd).to_monomial(&cd), Some(a));
        }

        #[test]
        fn varpi_of_a_is_the_simple_root(cd in cartan(), i in 1usize..8, r in -4i64..4) {
            prop_assume!(i <= cd.rank());
            let a = a_monomial(&cd, i, r).unwrap().eval(&cd);
            prop_assert_eq!(a.varpi().unwrap(), cd.simple_root_weight(i));
        }

        #[test]
        fn inverses_and_confluence(a in monomial(2), b in monomial(2), c in monomial(2)) {
            let cd = CartanData::new(CartanType::A(2));
            let (x, y, z) = (a.eval(&cd), b.eval(&cd), c.eval(&cd));
            prop_assert!(x.mul(&x.inv().unwrap()).is_one());
            prop_assert_eq!(x.mul(&y).mul(&z), z.mul(&x).mul(&y));
        }

        #[test]
        fn a1_telescoping(j in 0i64..6) {
            let cd = CartanData::new(CartanType::A(1));
            let mut w: LWeight = fundamental_lweight(&cd, 1, 0, -1).unwrap();
            for s in 0..j {
                w = w.mul(&a_monomial(&cd, 1, -2 * s).unwrap().eval(&cd).inv().unwrap());
            }
            let want = qloop::LFactor::new(QRat::q_pow(-2 * j), &[2], &[-2 * j + 2, -2 * j]);
            prop_assert_eq!(w.component(1), &want);
        }
    }
}

mod qcharacter {
    use super::*;

    fn kr_qchar(rank: usize, k: u32, s: i64) -> qloop::QChar {
        let w = Window::for_check(1, 1);
        if rank == 1 { build_sl2_kr(k, s, w) } else { build_sl3_kr(k, 1, s, w) }.qchar().unwrap()
    }

    proptest! {
        #![proptest_config(cfg(24))]

        #[test]
        fn chi_is_multiplicative(k1 in 0u32..3, k2 in 0u32..3, s in -3i64..3) {
            let (a, b) = (kr_qchar(1, k1, 0), kr_qchar(1, k2, s));
            prop_assert_eq!(a.mul(&b).unwrap().chi().unwrap(), a.chi().unwrap().mul(&b.chi().unwrap()).unwrap());
        }

        #[test]
        fn char_inverse_is_an_involution(k in 0u32..4) {
            let c = kr_qchar(2, k, 0).chi().unwrap();
            prop_assert_eq!(char_inverse(&char_inverse(&c)), c);
        }

        #[test]
        fn kr_terms_lie_in_the_a_inverse_monoid(rank in 1usize..=2, k in 0u32..4, s in -3i64..3) {
            let n = kr_qchar(rank, k, s).normalize().unwrap();
            prop_assert!(n.is_a_inverse_expansion());
        }

        #[test]
        fn kr_dimensions(k in 0u32..5) {
            let dim = |c: &qloop::Char| c.terms().values().sum::<i64>();
            prop_assert_eq!(dim(&kr_qchar(1, k, 0).chi().unwrap()), k as i64 + 1);
            if k <= 3 {
                let k = k as i64;
                prop_assert_eq!(dim(&kr_qchar(2, k as u32, 0).chi().unwrap()), (k + 1) * (k + 2) / 2);
            }
        }
    }
}

mod rep_modules {
    use super::*;

    proptest! {
        #![proptest_config(cfg(16))]

        #[test]
        fn sl2_kr_top_is_the_monomial(k in 0u32..5, s in -4i64..4) {
            let cd = CartanData::new(CartanType::A(1));
            let m = build_sl2_kr(k, s, Window::for_check(1, 1));
            let top = m.index_of(&m.basis()[0]).unwrap();
            let want = kr_monomial(&cd, 1, k, -2 * k as i64 + 1 + s).unwrap().eval(&cd);
            prop_assert_eq!(m.lweight_of(top).unwrap(), want);
        }

        #[test]
        fn sl2_vinf_lweights_telescope(d in 1u32..8) {
            let cd = CartanData::new(CartanType::A(1));
            let m = build_sl2_vinf(d, Window::for_check(1, 1));
            let mut w = fundamental_lweight(&cd, 1, 0, -1).unwrap();
            for j in 0..=d as i64 {
                prop_assert_eq!(m.lweight_of(m.index_of(&[j]).unwrap()).unwrap(), w.clone());
                w = w.mul(&a_monomial(&cd, 1, -2 * j).unwrap().eval(&cd).inv().unwrap());
            }
        }

        #[test]
        fn gradings_are_consistent(d in 1u32..6, k in 0u32..4, s in -2i64..2) {
            let w = Window::for_check(1, 2);
            for m in [
                build_sl2_kr(k, s, w),
                build_sl3_kr(k.min(2), 2, s, w),
                build_sl2_vinf(d, w),
                build_sl3_vinf(d, 1, w),
                build_sl2_lplus(d, w),
                build_sl3_lplus(d, 2, w),
                build_sl2_winf(d, w),
                build_sl3_winf(d, w),
            ] {
                prop_assert!(m.check_grading().is_ok());
            }
        }

        #[test]
        fn module_json_round_trips(d in 1u32..5, k in 0u32..3) {
            let w = Window::for_check(1, 1);
            for m in [build_sl3_kr(k, 1, 0, w), build_sl2_winf(d, w), dualize(&build_sl3_lplus(d, 1, w)).unwrap()] {
                let s = serde_json::to_string(&m).unwrap();
                let back: RepModule = serde_json::from_str(&s).unwrap();
                prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
            }
        }

        #[test]
        fn plus_and_minus_characters_agree(d in 0u32..9) {
            let w = Window::for_check(1, 1);
            prop_assert_eq!(build_sl2_vinf(d, w).char().unwrap().terms().clone(), build_sl2_lplus(d, w).char().unwrap().terms().clone());
        }
    }
}

mod relation_verifier {
    use super::*;

    const R: i64 = 1;
    const M: u32 = 2;

    /// The asymptotic-algebra tables with a nonzero entry and an index the check reaches.
    fn mutable_entries(m: &RepModule) -> Vec<(Gen, usize, usize)> {
        let w = Window::for_check(R, M);
        let mut out = Vec::new();
        for (g, t) in m.actions() {
            let ok = match *g {
                Gen::XPlus(_, r) | Gen::XTildeMinus(_, r) => r.abs() <= w.r,
                Gen::PhiTildePlus(_, k) | Gen::PhiTildeMinus(_, k) => k <= w.m,
                Gen::Kappa(_) => true,
                _ => false,
            };
            if !ok {
                continue;
            }
            for src in 0..m.dim() {
                for dst in 0..m.dim() {
                    if t.entry(dst, src).is_some_and(|c| !c.is_zero()) {
                        out.push((*g, src, dst));
                    }
                }
            }
        }
        out
    }

    proptest! {
        #![proptest_config(cfg(24))]

        #[test]
        fn single_entry_mutations_are_caught(rank in 1usize..=2, k in 1u32..4, pick in any::<prop::sample::Index>()) {
            let w = Window::for_check(R, M);
            let mut m = if rank == 1 { build_sl2_kr(k, 0, w) } else { build_sl3_kr(k.min(2), 1, 0, w) };
            let entries = mutable_entries(&m);
            let (g, src, dst) = entries[pick.index(entries.len())];
            m.scale_entry(&g, src, dst, &QRat::q_pow(1)).unwrap();
            let rep = verify_asymptotic_relations(&m, CheckWindow { r: R, m: M }).unwrap();
            prop_assert!(!rep.pass(), "{:?} {}->{} undetected", g, src, dst);
        }

        #[test]
        fn guard_monotonicity(d in 2u32..6, grow in 1u32..3) {
            let w = Window::for_check(R, M);
            let cw = CheckWindow { r: R, m: M };
            let small = verify_asymptotic_relations(&build_sl2_vinf(d, w), cw).unwrap();
            let large = verify_asymptotic_relations(&build_sl2_vinf(d + grow, w), cw).unwrap();
            prop_assert!(small.pass() && large.pass());
            for (a, b) in small.families.iter().zip(&large.families) {
                prop_assert!(a.instances_checked <= b.instances_checked);
            }
        }

        #[test]
        fn zero_modes(d in 1u32..6, i in 1usize..=2) {
            let w = Window::for_check(1, 1);
            for m in [build_sl2_vinf(d, w), build_sl3_vinf(d, i, w), build_sl3_kr(d.min(3), i, 0, w)] {
                let id = m.actions()[&Gen::PhiTildePlus(1, 0)].clone();
                prop_assert_eq!(id, SparseMatrix::identity(m.dim()));
                let k = m.actions()[&Gen::Kappa(1)].clone();
                prop_assert_eq!(&m.actions()[&Gen::PhiTildeMinus(1, 0)], &k.compose(&k));
            }
        }
    }
}

mod character_formula {
    use super::*;

    proptest! {
        #![proptest_config(cfg(12))]

        #[test]
        fn nonnegative_and_stable(cd in cartan(), i in 1usize..8, d in 0u32..5) {
            prop_assume!(i <= cd.rank());
            let big = char_formula(&FormulaParams::new(cd.clone(), i, d + 1)).unwrap();
            prop_assert!(big.terms().values().all(|m| *m > 0));
            let small = char_formula(&FormulaParams::new(cd.clone(), i, d)).unwrap();
            let zero = vec![0; cd.rank()];
            prop_assert_eq!(big.truncate_below(&zero, d).terms().clone(), small.terms().clone());
        }

        #[test]
        fn matches_vinf(d in 0u32..9, i in 1usize..=2) {
            let w = Window::for_check(1, 1);
            let a1 = CartanData::new(CartanType::A(1));
            let a2 = CartanData::new(CartanType::A(2));
            prop_assert_eq!(
                char_formula(&FormulaParams::new(a1, 1, d)).unwrap().terms().clone(),
                build_sl2_vinf(d, w).char().unwrap().terms().clone()
            );
            let d = d.min(6);
            prop_assert_eq!(
                char_formula(&FormulaParams::new(a2, i, d)).unwrap().terms().clone(),
                build_sl3_vinf(d, i, w).char().unwrap().terms().clone()
            );
        }
    }
}
