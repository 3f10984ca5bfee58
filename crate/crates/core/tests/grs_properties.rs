//! Random-suite invariants of the generalized row sum solver and the
//! relaxed least-squares problem.

use num_traits::Signed;

use rankagg::grs;
use rankagg::objectives::beta_ls_objective;
use rankagg::orders::{d_n_squared, linear_orders};
use rankagg::rational::{rat, rat_int, to_f64, Rational};
use rankagg::suites::random;

#[test]
fn solver_succeeds_and_collapses_on_complete_arrays() {
    for seed in 0..30u64 {
        let n = 3 + (seed % 4) as usize;
        let m = 1 + (seed % 2) as usize;
        // full density: every pair compared by every individual
        let array = random::skew_array(seed + 100, n, m, 100);
        let max = grs::reasonable_epsilon_max(n, m).unwrap();
        let s = grs::solve(&array, &rat_int(0)).unwrap().x;
        for eps in [rat_int(0), max.clone() / rat_int(2), max] {
            let sol = grs::solve(&array, &eps).unwrap();
            assert_eq!(sol.x, s, "complete arrays keep x = s at every epsilon");
        }
    }
}

#[test]
fn epsilon_zero_always_returns_row_sums() {
    for seed in 0..30u64 {
        let n = 3 + (seed % 4) as usize;
        let array = random::skew_array(seed + 200, n, 2, 50);
        let sol = grs::solve(&array, &rat_int(0)).unwrap();
        let mut s = vec![Rational::from_integer(0.into()); n];
        for o in array.outcomes() {
            s[o.first] += o.forward.clone();
            s[o.second] += o.backward.clone();
        }
        assert_eq!(sol.x, s);
    }
}

#[test]
fn contribution_signs_hold_at_every_reasonable_epsilon() {
    for seed in 0..40u64 {
        let n = 3 + (seed % 4) as usize;
        let m = 1 + (seed % 3) as usize;
        let array = random::skew_array(seed + 300, n, m, 50);
        let max = grs::reasonable_epsilon_max(n, m).unwrap();
        for eps in [max.clone() / rat_int(3), max.clone() / rat_int(2), max] {
            let sol = grs::solve(&array, &eps).unwrap();
            for o in array.outcomes() {
                for (me, other) in [(o.first, o.second), (o.second, o.first)] {
                    let f = sol.contribution(&array, me, other, o.individual).unwrap();
                    let record = array
                        .outcomes_of(me)
                        .unwrap()
                        .into_iter()
                        .find(|r| r.opponent == other && r.individual == o.individual)
                        .unwrap();
                    if array.is_maximal_win(&record) {
                        assert!(!f.is_negative(), "win contribution must be non-negative");
                    }
                    if array.is_maximal_loss(&record) {
                        assert!(!f.is_positive(), "loss contribution must be non-positive");
                    }
                }
            }
        }
    }
}

#[test]
fn relaxed_solution_feasible_stationary_and_below_vertices() {
    for (k, seed) in [11u64, 23, 35, 47, 59].into_iter().enumerate() {
        let n = 3 + (k % 3);
        let array = random::connected_skew_array(seed, n, 1, 50, 4);
        for beta in [rat(1, 2), rat_int(1)] {
            let sol = grs::relaxed_beta_ls(&array, &beta).unwrap();
            let sum: f64 = sol.y.iter().sum();
            assert!(sum.abs() <= 1e-10);
            let d2 = d_n_squared(n) as f64;
            let sum2: f64 = sol.y.iter().map(|v| v * v).sum();
            assert!(((sum2 - d2) / d2).abs() <= 1e-9);

            // the rho vectors of linear orders lie on the feasible set, so
            // none of them can beat the relaxed optimum
            for order in linear_orders(n).unwrap() {
                let vertex = to_f64(&beta_ls_objective(&array, &beta, &order));
                assert!(sol.objective <= vertex + 1e-7 * (1.0 + vertex.abs()));
            }
        }
    }
}
