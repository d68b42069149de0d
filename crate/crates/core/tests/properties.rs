use obstrukt_core::algebra::{AlgebraElement, PresentedAlgebra};
use obstrukt_core::bockstein::{beta_certificate, e2_dimensions};
use obstrukt_core::models::{bo_algebra, em_algebra, EilenbergMacLane, ThomModule};
use obstrukt_core::oracle::SplittingOracle;
use obstrukt_core::series::{em_series, mo_series, poly_series};
use obstrukt_core::steenrod::{
    adem_reduce, admissible_with_excess_below, admissible_words, SqWord, SteenrodElement,
};
use proptest::prelude::*;
use std::sync::OnceLock;

fn models() -> &'static [PresentedAlgebra] {
    static MODELS: OnceLock<Vec<PresentedAlgebra>> = OnceLock::new();
    MODELS.get_or_init(|| {
        vec![
            em_algebra(2, 20).unwrap(),
            em_algebra(3, 20).unwrap(),
            bo_algebra(3, 20).unwrap(),
            bo_algebra(5, 16).unwrap(),
        ]
    })
}

/// A homogeneous element of degree `n`, choosing basis monomials by the bits
/// of `mask`.
fn element(alg: &PresentedAlgebra, n: u32, mask: u64) -> AlgebraElement {
    let basis = alg.monomial_basis(n).unwrap();
    AlgebraElement::from_monomials(
        basis
            .monomials()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
            .map(|(_, m)| m.clone()),
    )
}

fn word() -> impl Strategy<Value = SqWord> {
    prop::collection::vec(0u32..9, 0..5).prop_map(SqWord::new)
}

fn admissible(max_dim: u32) -> impl Strategy<Value = SqWord> {
    let words: Vec<SqWord> = (0..=max_dim).flat_map(admissible_words).collect();
    prop::sample::select(words)
}

proptest! {
    #[test]
    fn adem_output_is_admissible_and_stable(w in word()) {
        let r = adem_reduce(&w).unwrap();
        for t in r.terms() {
            prop_assert!(t.is_admissible());
            prop_assert_eq!(t.dimension(), w.dimension());
            let again = adem_reduce(t).unwrap();
            prop_assert_eq!(again.terms().collect::<Vec<_>>(), vec![t]);
        }
    }

    #[test]
    fn product_is_associative(a in admissible(8), b in admissible(8), c in admissible(8)) {
        let x = SteenrodElement::from_admissible(a).unwrap();
        let y = SteenrodElement::from_admissible(b).unwrap();
        let z = SteenrodElement::from_admissible(c).unwrap();
        let left = x.product(&y).unwrap().product(&z).unwrap();
        let right = x.product(&y.product(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reduction_acts_like_the_word(w in prop::collection::vec(0u32..5, 0..4).prop_map(SqWord::new)) {
        prop_assume!(w.dimension() <= 9);
        let oracle = SplittingOracle::new(9);
        let p = oracle.product_of_variables();
        let direct = oracle.apply_word(&w, &p).unwrap();
        let reduced = oracle.apply_element(&adem_reduce(&w).unwrap(), &p).unwrap();
        prop_assert_eq!(direct, reduced);
    }

    #[test]
    fn cartan_formula(m in 0usize..4, p in 1u32..8, q in 1u32..8, a in 0u32..8, s in any::<u64>(), t in any::<u64>()) {
        let alg = &models()[m];
        prop_assume!(p + q + a <= alg.truncation());
        let x = element(alg, p, s);
        let y = element(alg, q, t);
        let mut expected = AlgebraElement::zero();
        for i in 0..=a {
            expected.add_assign(&alg.multiply(&alg.sq(i, &x), &alg.sq(a - i, &y)));
        }
        prop_assert_eq!(alg.sq(a, &alg.multiply(&x, &y)), expected);
    }

    #[test]
    fn instability(m in 0usize..4, n in 1u32..10, extra in 1u32..6, s in any::<u64>()) {
        let alg = &models()[m];
        prop_assume!(2 * n + extra <= alg.truncation());
        let x = element(alg, n, s);
        prop_assert_eq!(alg.sq(n, &x), alg.square(&x));
        prop_assert!(alg.sq(n + extra, &x).is_zero());
        prop_assert!(alg.sq(0, &x) == x);
    }

    #[test]
    fn sq1_kills_squares_and_itself(m in 0usize..4, n in 1u32..9, s in any::<u64>()) {
        let alg = &models()[m];
        prop_assume!(2 * n < alg.truncation());
        let x = element(alg, n, s);
        prop_assert!(alg.sq(1, &alg.square(&x)).is_zero());
        prop_assert!(alg.sq(1, &alg.sq(1, &x)).is_zero());
    }

    #[test]
    fn action_respects_adem_relations(m in 0usize..4, n in 1u32..8, a in 1u32..10, b in 1u32..10, s in any::<u64>()) {
        let alg = &models()[m];
        prop_assume!(n + a + b <= alg.truncation());
        let x = element(alg, n, s);
        let w = SqWord::new([a, b]);
        let mut via_basis = AlgebraElement::zero();
        for t in adem_reduce(&w).unwrap().terms() {
            via_basis.add_assign(&alg.apply_word(t, &x));
        }
        prop_assert_eq!(alg.apply_word(&w, &x), via_basis);
    }

    #[test]
    fn series_of_union_is_product(s in prop::collection::vec(1u32..8, 0..5), t in prop::collection::vec(1u32..8, 0..5)) {
        let union: Vec<u32> = s.iter().chain(&t).copied().collect();
        let lhs = poly_series(&union, 30).unwrap();
        let rhs = poly_series(&s, 30).unwrap().mul(&poly_series(&t, 30).unwrap()).unwrap();
        prop_assert_eq!(lhs.coefficients(), rhs.coefficients());
    }

    #[test]
    fn em_series_is_stable_in_truncation(k in 1u32..5, d in 4u32..40, extra in 1u32..20) {
        let short = em_series(k, d);
        let long = em_series(k, d + extra);
        prop_assert_eq!(short.coefficients(), &long.coefficients()[..=d as usize]);
    }
}

#[test]
fn generator_action_matches_straightening() {
    for k in 1..=4 {
        let em = EilenbergMacLane::new(k, 22).unwrap();
        let alg = em.algebra();
        for (n, g) in em.generators().iter().enumerate() {
            let x = AlgebraElement::generator(n);
            for a in 1..=16 {
                for b in 1..=16 - a {
                    if g.degree() + a + b > alg.truncation() {
                        continue;
                    }
                    let stepwise = alg.sq(a, &alg.sq(b, &x));
                    let mut reduced = AlgebraElement::zero();
                    for t in adem_reduce(&SqWord::new([a, b])).unwrap().terms() {
                        reduced.add_assign(&alg.apply_word(t, &x));
                    }
                    assert_eq!(stepwise, reduced, "k={k} g={} a={a} b={b}", g.name());
                }
            }
        }
    }
}

#[test]
fn straightening_names_generators_and_squares() {
    for k in 2..=4 {
        let em = EilenbergMacLane::new(k, 24).unwrap();
        let alg = em.algebra();
        for (n, g) in em.generators().iter().enumerate() {
            assert_eq!(
                em.evaluate_admissible(&g.word).unwrap(),
                AlgebraElement::generator(n)
            );
            assert_eq!(em.apply_word(&g.word), AlgebraElement::generator(n));
            let head = SqWord::new([k + g.word.dimension()]).concat(&g.word);
            if k + head.dimension() <= 24 {
                assert_eq!(
                    em.apply_word(&head),
                    alg.square(&AlgebraElement::generator(n))
                );
            }
        }
    }
}

#[test]
fn basis_sizes_match_series() {
    for k in 1..=4 {
        let alg = em_algebra(k, 20).unwrap();
        let s = em_series(k, 20).to_u64().unwrap();
        for n in 0..=20 {
            assert_eq!(
                alg.monomial_basis(n).unwrap().len() as u64,
                s[n as usize],
                "k={k} n={n}"
            );
        }
    }
    for k in 1..=6 {
        let thom = ThomModule::new(k, 20).unwrap();
        let s = mo_series(k, 20).to_u64().unwrap();
        for n in 0..=20 {
            assert_eq!(thom.dimension(n).unwrap() as u64, s[n as usize]);
        }
    }
}

#[test]
fn sq1_is_a_differential_on_models() {
    for k in 1..=4 {
        e2_dimensions(&em_algebra(k, 16).unwrap(), 15).unwrap();
    }
    for k in 1..=6 {
        e2_dimensions(&bo_algebra(k, 16).unwrap(), 15).unwrap();
    }
}

#[test]
fn excess_bounded_words_close_under_tails() {
    for w in admissible_with_excess_below(4, 30) {
        assert!(w.excess().unwrap() < 4);
        if !w.is_empty() {
            assert!(w.tail().excess().unwrap() < 4);
        }
    }
}

#[test]
fn certificates_are_stable_in_truncation() {
    let cases = [
        (2, SqWord::identity()),
        (3, SqWord::new([2, 1])),
        (4, SqWord::identity()),
        (4, SqWord::new([2])),
    ];
    for (k, tail) in cases {
        let base = beta_certificate(k, &tail, 2 * (k + tail.dimension()) + 2).unwrap();
        for extra in 1..4 {
            let c = beta_certificate(k, &tail, base.obstruction_degree + 1 + extra).unwrap();
            assert_eq!(c.class, base.class);
            assert_eq!(c.obstruction_degree, base.obstruction_degree);
            assert_eq!(c.ambient_bound, base.ambient_bound);
        }
    }
}
