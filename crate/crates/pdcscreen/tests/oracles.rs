//! Estimator checks against the definitional oracles in `common`.

mod common;

use common::*;
use ndarray::Array2;
use pdcscreen::dcor::{
    dcov2_v, dcor_v, pairwise_distances, pdcor, rstar, ucentered, DistanceMatrix, EstimatorKind,
};

fn to_matrix(d: &DistanceMatrix) -> Vec<Vec<f64>> {
    (0..d.n()).map(|i| (0..d.n()).map(|j| d.get(i, j)).collect()).collect()
}

#[test]
fn pairwise_distances_match_the_per_entry_oracle() {
    let mut rng = seeded_rng(101);
    let sample = random_sample(5, 2, &mut rng);
    let d = pairwise_distances(sample.view()).unwrap();
    let oracle = oracle_distances(&sample);
    for i in 0..5 {
        for j in 0..5 {
            assert!(rel_close(d.get(i, j), oracle[i][j], 1e-12));
        }
    }
}

#[test]
fn dcov2_matches_the_triple_sum_oracle() {
    let mut rng = seeded_rng(102);
    let u = random_sample(12, 1, &mut rng);
    let v = random_sample(12, 1, &mut rng);
    let du = pairwise_distances(u.view()).unwrap();
    let dv = pairwise_distances(v.view()).unwrap();
    let got = dcov2_v(&du, &dv).unwrap();
    let want = oracle_dcov2(&to_matrix(&du), &to_matrix(&dv));
    assert!(rel_close(got, want, 1e-10), "got {got}, oracle {want}");
}

#[test]
fn ucentering_matches_the_per_entry_formula() {
    let mut rng = seeded_rng(103);
    let u = random_sample(10, 1, &mut rng);
    let du = pairwise_distances(u.view()).unwrap();
    let centered = ucentered(&du).unwrap();
    let oracle = oracle_ucenter(&to_matrix(&du));
    for i in 0..10 {
        for j in 0..10 {
            assert!(
                (centered.get(i, j) - oracle[i][j]).abs() < 1e-12,
                "entry ({i},{j}): {} vs {}",
                centered.get(i, j),
                oracle[i][j]
            );
        }
    }
}

#[test]
fn rstar_matches_the_definitional_oracle() {
    let mut rng = seeded_rng(104);
    let u = random_sample(20, 2, &mut rng);
    let v = random_sample(20, 1, &mut rng);
    let du = pairwise_distances(u.view()).unwrap();
    let dv = pairwise_distances(v.view()).unwrap();
    let got = rstar(&du, &dv).unwrap();
    let want = oracle_rstar(&to_matrix(&du), &to_matrix(&dv));
    assert!(rel_close(got, want, 1e-10), "got {got}, oracle {want}");
}

#[test]
fn pdcor_matches_the_compositional_oracle_under_both_kinds() {
    let mut rng = seeded_rng(105);
    let u = random_sample(25, 1, &mut rng);
    let v = random_sample(25, 2, &mut rng);
    let z = random_sample(25, 3, &mut rng);
    let du = pairwise_distances(u.view()).unwrap();
    let dv = pairwise_distances(v.view()).unwrap();
    let dz = pairwise_distances(z.view()).unwrap();
    for (kind, u_flag) in [(EstimatorKind::VStatistic, false), (EstimatorKind::UCentered, true)] {
        let got = pdcor(&du, &dv, Some(&dz), kind).unwrap();
        let want = oracle_pdcor(&to_matrix(&du), &to_matrix(&dv), &to_matrix(&dz), u_flag);
        assert!(rel_close(got, want, 1e-10), "{kind:?}: got {got}, oracle {want}");
    }
}

#[test]
fn dcor_matches_its_oracle_on_small_random_instances() {
    let mut rng = seeded_rng(106);
    for trial in 0..10 {
        let n = 4 + (trial % 8);
        let u = random_sample(n, 1 + trial % 3, &mut rng);
        let v = random_sample(n, 1, &mut rng);
        let du = pairwise_distances(u.view()).unwrap();
        let dv = pairwise_distances(v.view()).unwrap();
        let got = dcor_v(&du, &dv).unwrap();
        let want = oracle_dcor(&to_matrix(&du), &to_matrix(&dv));
        assert!(rel_close(got, want, 1e-10), "trial {trial}: {got} vs {want}");
    }
}

#[test]
fn independent_normals_have_small_dcor_at_n_200() {
    // Monte Carlo sanity under the null: the median over 200 seeded trials
    // stays well below 0.2.
    let mut dcors = Vec::with_capacity(200);
    for trial in 0..200u64 {
        let mut rng = seeded_rng(2_000 + trial);
        let u: Vec<f64> = (0..200)
            .map(|_| rand_distr::Distribution::sample(&rand_distr::StandardNormal, &mut rng))
            .collect();
        let v: Vec<f64> = (0..200)
            .map(|_| rand_distr::Distribution::sample(&rand_distr::StandardNormal, &mut rng))
            .collect();
        let du = pairwise_distances(Array2::from_shape_vec((200, 1), u).unwrap().view()).unwrap();
        let dv = pairwise_distances(Array2::from_shape_vec((200, 1), v).unwrap().view()).unwrap();
        dcors.push(dcor_v(&du, &dv).unwrap());
    }
    dcors.sort_unstable_by(f64::total_cmp);
    let median = 0.5 * (dcors[99] + dcors[100]);
    assert!(median < 0.2, "null median dcor = {median}");
}
