//! Property tests for the weight combinatorics, multiplicity engine and
//! torus evaluation.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use torus_spectra::mult::weight_sumset;
use torus_spectra::rational::Q;
use torus_spectra::smith::smith_normal_form;
use torus_spectra::torus::random_element;
use torus_spectra::weights::dominant_weights_up_to;
use torus_spectra::{
    generic_stratum_element, Dominance, Family, LevelCache, RootDatum, Spectrum, StratumSpec,
    TorusElement, ValueGroupElement, Weight,
};

const GROUPS: &[&str] = &["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2", "F4", "E6"];
const SMALL: &[&str] = &["A2", "A3", "B3", "C2", "C3", "D4", "G2"];

fn datum(s: &str) -> Arc<RootDatum> {
    Arc::new(RootDatum::from_type(s.parse().unwrap()))
}

fn small_datum() -> impl Strategy<Value = Arc<RootDatum>> {
    prop::sample::select(SMALL).prop_map(datum)
}

fn weight_in(d: &RootDatum, lo: i64, hi: i64) -> impl Strategy<Value = Weight> + Clone {
    prop::collection::vec(lo..=hi, d.rank()).prop_map(Weight::new)
}

fn element(d: &Arc<RootDatum>, seed: u64) -> TorusElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_element(d.clone(), 2, 2, &[1, 2], &mut rng)
}

// Root datum.

#[test]
fn short_roots_have_length_two_and_cartan_is_recovered() {
    for g in GROUPS {
        let d = datum(g);
        let roots = d.positive_roots();
        let shortest = roots.iter().map(|a| d.form(a, a)).min().unwrap();
        assert_eq!(shortest, Q::from_integer(2), "{g}");
        for i in 0..d.rank() {
            for j in 0..d.rank() {
                let (ai, aj) = (d.simple_root(i), d.simple_root(j));
                let pairing = Q::from_integer(2) * d.form(aj, ai) / d.form(ai, ai);
                assert_eq!(pairing, Q::from_integer(d.cartan()[i][j]), "{g} ({i},{j})");
            }
        }
    }
}

#[test]
fn highest_root_dominates_every_positive_root() {
    for g in GROUPS {
        let d = datum(g);
        let top = d.highest_root();
        for a in d.positive_roots() {
            let c = d.dominance_compare(top, a).unwrap();
            assert!(matches!(c, Dominance::Equal | Dominance::FirstSucceeds), "{g} {a}");
        }
    }
}

#[test]
fn classical_roots_in_epsilon_coordinates() {
    for (g, n) in [("A3", 4), ("B3", 3), ("C3", 3), ("D4", 4)] {
        let d = datum(g);
        let got: BTreeSet<Vec<Q>> = d
            .positive_roots()
            .iter()
            .flat_map(|a| {
                let e = d.epsilon_values(a).unwrap();
                let neg = e.iter().map(|x| -x).collect();
                [e, neg]
            })
            .collect();
        let unit = |i: usize, c: i64| -> Vec<Q> {
            (0..n).map(|k| Q::from_integer(if k == i { c } else { 0 })).collect()
        };
        let add = |a: Vec<Q>, b: Vec<Q>| -> Vec<Q> { a.iter().zip(&b).map(|(x, y)| x + y).collect() };
        let mut want = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                want.insert(add(unit(i, 1), unit(j, -1)));
                if d.family() != Family::A {
                    want.insert(add(unit(i, 1), unit(j, 1)));
                    want.insert(add(unit(i, -1), unit(j, -1)));
                }
            }
            match d.family() {
                Family::B => {
                    want.insert(unit(i, 1));
                    want.insert(unit(i, -1));
                }
                Family::C => {
                    want.insert(unit(i, 2));
                    want.insert(unit(i, -2));
                }
                _ => {}
            }
        }
        assert_eq!(got, want, "{g}");
    }
}

// Weights.

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dominance_is_a_strict_partial_order(
        (d, a, b, c) in small_datum().prop_flat_map(|d| {
            let w = weight_in(&d, -2, 2);
            (Just(d), w.clone(), w.clone(), w)
        })
    ) {
        use Dominance::*;
        prop_assert_eq!(d.dominance_compare(&a, &a).unwrap(), Equal);
        let ab = d.dominance_compare(&a, &b).unwrap();
        let ba = d.dominance_compare(&b, &a).unwrap();
        let flipped = match ab {
            FirstSucceeds => SecondSucceeds,
            SecondSucceeds => FirstSucceeds,
            x => x,
        };
        prop_assert_eq!(ba, flipped);
        if d.precedes(&a, &b) && d.precedes(&b, &c) {
            prop_assert!(d.precedes(&a, &c));
        }
        prop_assert!(!(d.precedes(&a, &b) && d.precedes(&b, &a)));
    }

    #[test]
    fn weyl_orbits_partition(
        (d, a, b) in small_datum().prop_flat_map(|d| {
            let w = weight_in(&d, -2, 2);
            (Just(d), w.clone(), w)
        })
    ) {
        let oa: BTreeSet<Weight> = d.weyl_orbit(&a).unwrap().into_iter().collect();
        let ob: BTreeSet<Weight> = d.weyl_orbit(&b).unwrap().into_iter().collect();
        prop_assert!(oa == ob || oa.is_disjoint(&ob));
        prop_assert_eq!(oa.iter().filter(|w| w.is_dominant()).count(), 1);
        prop_assert_eq!(oa.len() as u128, d.orbit_size(&a));
        prop_assert!(oa.contains(&d.dominant_rep(&a)));
    }

    #[test]
    fn evaluation_is_linear(
        (d, mu, nu, seed) in small_datum().prop_flat_map(|d| {
            let w = weight_in(&d, -3, 3);
            (Just(d), w.clone(), w, any::<u64>())
        })
    ) {
        let s = element(&d, seed);
        prop_assert_eq!(s.evaluate(&mu.add(&nu)), s.evaluate(&mu).add(&s.evaluate(&nu)));
        prop_assert_eq!(s.evaluate(&mu.neg()), s.evaluate(&mu).inverse());
    }

    #[test]
    fn spectrum_total_is_the_dimension(
        (d, lambda, seed) in small_datum().prop_flat_map(|d| {
            (Just(d.clone()), weight_in(&d, 0, 1), any::<u64>())
        })
    ) {
        let s = element(&d, seed);
        let sp = torus_spectra::spectrum(&s, &lambda).unwrap();
        prop_assert_eq!(sp.total(), d.weyl_dimension_u64(&lambda).unwrap());
    }

    /// Forced coincidences of a generic stratum element are exactly the
    /// kernel lattice: `μ(s) = 1` iff `μ ∈ ⟨K⟩`, decided by comparing the
    /// invariant factors of `K` and `K ∪ {μ}`.
    #[test]
    fn stratum_kernel_is_exact(
        (d, kernel, probes, seed) in small_datum().prop_flat_map(|d| {
            let w = weight_in(&d, -2, 2);
            (
                Just(d),
                prop::collection::vec(w.clone(), 0..3),
                prop::collection::vec(w, 1..6),
                any::<u64>(),
            )
        })
    ) {
        let n = d.rank();
        let rows: Vec<Vec<i64>> = kernel.iter().map(|w| w.coords().to_vec()).collect();
        let snf = smith_normal_form(&rows, n);
        prop_assume!(snf.rank() < n);
        let s = generic_stratum_element(d.clone(), &StratumSpec::new(kernel.clone()), seed).unwrap();
        let factors = |rows: &[Vec<i64>]| -> Vec<i64> {
            smith_normal_form(rows, n).diagonal.into_iter().filter(|&x| x != 0).collect()
        };
        let base = factors(&rows);
        for mu in probes {
            let mut ext = rows.clone();
            ext.push(mu.coords().to_vec());
            let member = factors(&ext) == base;
            prop_assert_eq!(s.evaluate(&mu).is_identity(), member, "mu {}", mu);
        }
    }

    #[test]
    fn multiplicities_are_weyl_invariant(
        (d, lambda) in small_datum().prop_flat_map(|d| (Just(d.clone()), weight_in(&d, 0, 1)))
    ) {
        let ms = d.freudenthal_multiplicities(&lambda).unwrap();
        for (w, m) in ms.entries() {
            for i in 0..d.rank() {
                prop_assert_eq!(ms.multiplicity(&d.reflect(w, i)), *m);
            }
        }
    }
}

#[test]
fn generic_strata_regularity() {
    for g in SMALL {
        let d = datum(g);
        for seed in 0..5 {
            let s = generic_stratum_element(d.clone(), &StratumSpec::new(vec![]), seed).unwrap();
            assert!(s.is_regular(), "{g} empty kernel");
            for a in d.positive_roots() {
                let s = generic_stratum_element(d.clone(), &StratumSpec::new(vec![a.clone()]), seed)
                    .unwrap();
                assert!(!s.is_regular() && !s.is_central(), "{g} kernel {a}");
            }
        }
    }
}

// Lemma 5.3 and Lemma 2.8(3).

#[test]
fn lower_levels_lie_below() {
    for g in SMALL {
        let d = datum(g);
        let mut cache = LevelCache::new(&d);
        for lambda in dominant_weights_up_to(d.rank(), 3) {
            let level = cache.level(&lambda).unwrap();
            let below = d.subdominant_weights(&lambda).unwrap();
            let levels: BTreeSet<u32> =
                below.iter().map(|w| cache.level(w).unwrap()).collect();
            for j in 1..level {
                assert!(levels.contains(&j), "{g} {lambda} level {level} lacks level {j}");
            }
        }
    }
}

#[test]
fn minuscule_or_short_root_below() {
    for g in SMALL {
        let d = datum(g);
        let short = d.highest_short_root().clone();
        let minuscule: Vec<Weight> =
            (0..d.rank()).map(|i| d.fundamental(i)).filter(|w| d.is_minuscule(w)).collect();
        for lambda in dominant_weights_up_to(d.rank(), 3) {
            if lambda.is_zero() {
                continue;
            }
            let below: BTreeSet<Weight> = d.subdominant_weights(&lambda).unwrap().into_iter().collect();
            if d.is_radical(&lambda) {
                assert!(below.contains(&short), "{g} {lambda}");
            } else {
                let premet: BTreeSet<Weight> =
                    d.premet_weight_set(&lambda).unwrap().into_iter().collect();
                assert!(
                    minuscule.iter().any(|m| below.contains(m) || premet.contains(m)),
                    "{g} {lambda}"
                );
            }
        }
    }
}

// Lemma 2.8(1), (2).

#[test]
fn premet_sets_are_monotone_and_additive() {
    for g in ["A2", "B2", "C2", "G2", "A3", "B3"] {
        let d = datum(g);
        let doms = dominant_weights_up_to(d.rank(), 2);
        let sets: Vec<BTreeSet<Weight>> = doms
            .iter()
            .map(|w| d.premet_weight_set(w).unwrap().into_iter().collect())
            .collect();
        for (i, a) in doms.iter().enumerate() {
            for (j, b) in doms.iter().enumerate() {
                if d.precedes(b, a) {
                    assert!(sets[j].is_subset(&sets[i]), "{g} {b} < {a}");
                }
                let va: Vec<Weight> = sets[i].iter().cloned().collect();
                let vb: Vec<Weight> = sets[j].iter().cloned().collect();
                let sum: BTreeSet<Weight> =
                    d.premet_weight_set(&a.add(b)).unwrap().into_iter().collect();
                assert_eq!(sum, weight_sumset(&va, &vb), "{g} {a}+{b}");
            }
        }
    }
}

// Lemma 2.5(2): almost simple on V_{μ+ν} forces separation on both factors.

#[test]
fn almost_simple_sum_separates_factors() {
    let mut applicable = 0;
    for g in ["A2", "A3", "C2", "B3", "G2"] {
        let d = datum(g);
        let doms: Vec<Weight> = dominant_weights_up_to(d.rank(), 2)
            .into_iter()
            .filter(|w| !w.is_zero())
            .collect();
        for seed in 0..60 {
            let s = element(&d, seed);
            if s.is_central() {
                continue;
            }
            for mu in &doms {
                for nu in &doms {
                    let lambda = mu.add(nu);
                    if d.weyl_dimension_u64(&lambda).unwrap() > 200 {
                        continue;
                    }
                    let sp = torus_spectra::spectrum(&s, &lambda).unwrap();
                    if !sp.classify().is_almost_simple() {
                        continue;
                    }
                    applicable += 1;
                    for f in [mu, nu] {
                        let weights = d.premet_weight_set(f).unwrap();
                        assert!(s.separates_weights(&weights), "{g} s={seed} {mu}+{nu}");
                    }
                }
            }
        }
    }
    assert!(applicable > 0);
}

// Lemma 2.10 implication battery.

fn almost_simple(s: &TorusElement, lambda: &Weight) -> bool {
    torus_spectra::spectrum(s, lambda).unwrap().classify().is_almost_simple()
}

#[test]
fn lemma_2_10_implications() {
    let mut applicable = [0usize; 6];
    for g in ["A2", "A3", "B3", "C2", "C3", "D4", "G2"] {
        let d = datum(g);
        let mus: Vec<Weight> = dominant_weights_up_to(d.rank(), 3)
            .into_iter()
            .filter(|w| !w.is_zero() && d.weyl_dimension_u64(w).unwrap() <= 300)
            .collect();
        for seed in 0..40 {
            let s = element(&d, seed);
            if s.is_central() {
                continue;
            }
            for mu in &mus {
                let zero_mu = d.zero_weight_multiplicity(mu).unwrap();
                let radical = d.is_radical(mu);
                let as_mu = almost_simple(&s, mu);
                for mm in d.minimal_nonzero_subdominant(mu).unwrap().unwrap_or_default() {
                    if almost_simple(&s, &mm) {
                        continue;
                    }
                    let zero_mm = d.zero_weight_multiplicity(&mm).unwrap();
                    let cases = [
                        !radical,
                        radical && zero_mm <= 1,
                        radical && zero_mu > 1 && zero_mm > 1,
                        !s.is_regular(),
                    ];
                    for (k, applies) in cases.into_iter().enumerate() {
                        if applies {
                            applicable[k] += 1;
                            assert!(!as_mu, "{g} (1)({k}) s={seed} mu={mu} mu_m={mm}");
                        }
                    }
                }
                for a in 0..d.rank() {
                    let wa = d.fundamental(a);
                    if !d.precedes(&wa, mu) || almost_simple(&s, &wa) {
                        continue;
                    }
                    if zero_mu > 1 {
                        applicable[4] += 1;
                        assert!(!as_mu, "{g} (2) s={seed} mu={mu} w{}", a + 1);
                    }
                    if !s.is_regular() {
                        applicable[5] += 1;
                        assert!(!as_mu, "{g} (3) s={seed} mu={mu} w{}", a + 1);
                    }
                }
            }
        }
    }
    assert!(applicable.iter().all(|&n| n > 0), "{applicable:?}");
}

// Lemma 2.1 on random small spectra.

fn small_spectrum() -> impl Strategy<Value = Spectrum> {
    let value = (prop::bool::weighted(0.3), -1i64..=1, -1i64..=1).prop_map(|(half, x, y)| {
        let t = if half { Q::new(1, 2) } else { Q::zero() };
        ValueGroupElement::new(t, vec![x, y])
    });
    prop::collection::vec((value, 1u64..=2), 2..4)
        .prop_map(Spectrum::from_entries)
        .prop_filter("non-scalar", |sp| sp.distinct_values() >= 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kronecker_almost_simple_needs_simple_factors(a in small_spectrum(), b in small_spectrum()) {
        let t = a.tensor(&b);
        prop_assert_eq!(t.total(), a.total() * b.total());
        if t.classify().is_almost_simple() {
            prop_assert!(a.classify().kind == torus_spectra::SpectrumKind::Simple);
            prop_assert!(b.classify().kind == torus_spectra::SpectrumKind::Simple);
        }
    }

    #[test]
    fn kronecker_of_symmetric_spectra(a in small_spectrum(), b in small_spectrum()) {
        let sym = |sp: &Spectrum| {
            Spectrum::from_entries(sp.entries().flat_map(|(v, m)| [(v.clone(), m), (v.inverse(), m)]))
        };
        let (a, b) = (sym(&a), sym(&b));
        prop_assume!(a.is_inversion_symmetric() && b.is_inversion_symmetric());
        let c = a.tensor(&b).classify();
        if c.is_almost_simple() {
            prop_assert!(c.max_multiplicity <= 2);
        }
    }
}
