//! Seeded Monte Carlo sweeps and sequential/parallel agreement.

use qfdiv::bounds::{binette_sharpness_search, check_quantum_pinsker_chi2, decoherence_bounds};
use qfdiv::divergence::{quantum_relative_entropy, trace_distance};
use qfdiv::fgen::FGenerator;
use qfdiv::maximal::{build_witness, check_maximality, maximal_f_div};
use qfdiv::montecarlo::{map_samples, map_samples_seq, summarize};
use qfdiv::states::{random_density_with, random_diagonal_with, satisfies_abs_condition};

#[test]
fn dispatch_matches_sequential_bit_for_bit() {
    let f = |_: usize, rng: &mut qfdiv::rng::SampleRng| {
        let rho = random_density_with(rng, 3, 3).unwrap();
        let sigma = random_density_with(rng, 3, 3).unwrap();
        maximal_f_div(&rho, &sigma, &FGenerator::kl()).unwrap().to_bits()
    };
    assert_eq!(map_samples(7, 64, f), map_samples_seq(7, 64, f));
}

#[cfg(feature = "parallel")]
#[test]
fn parallel_matches_sequential() {
    use qfdiv::montecarlo::map_samples_par;
    let f = |i: usize, rng: &mut qfdiv::rng::SampleRng| (i, rng.normal().to_bits(), rng.uniform().to_bits());
    assert_eq!(map_samples_par(3, 500, f), map_samples_seq(3, 500, f));
}

#[test]
fn substreams_differ() {
    let v = map_samples_seq(1, 100, |_, rng| rng.uniform().to_bits());
    let mut sorted = v.clone();
    sorted.sort_unstable();
    sorted.dedup();
    assert_eq!(sorted.len(), v.len());
}

#[test]
fn maximality_and_pinsker_sweep() {
    for n in [2, 4, 8] {
        let res = map_samples(11, 300, |_, rng| {
            let rank = 1 + (rng.uniform() * n as f64) as usize % n;
            let rho = random_density_with(rng, n, rank)?;
            let sigma = random_density_with(rng, n, n)?;
            let m = check_maximality(&rho, &sigma)?;
            let p = check_quantum_pinsker_chi2(&rho, &sigma)?;
            let orderings = (m.relative_entropy - m.maximal_kl).max(m.trace_distance - m.maximal_tv);
            let chi2_gap = (m.chi2 - m.maximal_chi2).abs() / m.chi2.max(1.0);
            Ok::<_, qfdiv::Error>(orderings.max(chi2_gap).max(-p.slack))
        });
        let s = summarize(&res, 1e-8);
        assert!(s.passed(), "n = {n}: {s:?}");
    }
}

#[test]
fn commuting_pairs_always_meet_the_condition() {
    let hits = map_samples(5, 500, |_, rng| {
        let rho = random_diagonal_with(rng, 4);
        let sigma = random_diagonal_with(rng, 4);
        satisfies_abs_condition(&rho, &sigma, 1e-9).unwrap()
    });
    assert!(hits.into_iter().all(|h| h));
}

#[test]
fn maximal_tv_dominates_trace_distance_and_relent_bounded_by_dmax() {
    let res = map_samples(21, 300, |_, rng| {
        let rho = random_density_with(rng, 4, 4)?;
        let sigma = random_density_with(rng, 4, 4)?;
        let w = build_witness(&rho, &sigma)?;
        let tv = qfdiv::divergence::classical_f_div(&w.r, &w.s, &FGenerator::tv())?;
        let kl = qfdiv::divergence::classical_f_div(&w.r, &w.s, &FGenerator::kl())?;
        let gap = (trace_distance(&rho, &sigma)? - tv).max(quantum_relative_entropy(&rho, &sigma)? - kl);
        Ok::<_, qfdiv::Error>(gap)
    });
    assert!(summarize(&res, 1e-10).passed());
}

#[test]
fn decoherence_grid() {
    for chi2_0 in [0.25, 1.0, 3.0, 4.0, 16.0, 100.0] {
        for lambda in [0.01, 0.1, 1.0] {
            for i in 0..=100 {
                let t = i as f64 * 0.2 / lambda;
                let b = decoherence_bounds(chi2_0, lambda, t).unwrap();
                assert!(b.improved <= b.temme + 1e-15, "{chi2_0} {lambda} {t}");
                assert!(b.improved <= 2.0);
            }
        }
    }
}

#[test]
fn binette_bound_is_sharp_on_ternary_distributions() {
    for f in [FGenerator::kl(), FGenerator::chi2()] {
        for (m, big_m) in [(0.2, 3.0), (0.5, 1.5), (0.05, 8.0)] {
            let best = binette_sharpness_search(m, big_m, &f, 4000, 17).unwrap();
            assert!((1.0 - 1e-4..=1.0 + 1e-10).contains(&best), "{} {m} {big_m}: {best}", f.name());
        }
    }
}
