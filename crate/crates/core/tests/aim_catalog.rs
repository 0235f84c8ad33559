use std::collections::BTreeMap;

use aimnu::aim::{solve_iterative, IterativeOptions};
use aimnu::algebra::{rat, to_f64, Rational};
use aimnu::catalog::{catalog_get, expected_eigenvalue};
use aimnu::hypergeometric::to_aim_form;
use num_traits::Signed;

fn close(a: &Rational, b: &Rational, tol: &Rational) -> bool {
    (a - b).abs() <= *tol
}

fn check(name: &str, bracket: (Rational, Rational), levels: &[u32]) {
    let defaults = BTreeMap::new();
    let prob = catalog_get(name, &defaults).unwrap();
    let aim = to_aim_form(&prob).unwrap();
    let opts = IterativeOptions::new(prob.eval_point.clone(), bracket);
    let est = solve_iterative(&aim, &opts).unwrap();
    let tol10 = &opts.tol * rat(10, 1);
    for &n in levels {
        let want = expected_eigenvalue(name, &defaults, n).unwrap();
        let hit = est.iter().find(|e| e.converged && close(&e.value, &want, &tol10));
        assert!(
            hit.is_some(),
            "{name}: no converged root near {} (n = {n}); got {:?}",
            to_f64(&want),
            est.iter().map(|e| (to_f64(&e.value), e.converged, e.k_used)).collect::<Vec<_>>()
        );
    }
}

#[test]
fn morse_converges() {
    check("morse", (rat(1, 2), rat(4, 1)), &[0, 1]);
}

#[test]
fn hulthen_converges() {
    check("hulthen", (rat(-1, 2), rat(3, 1)), &[0, 1]);
}

#[test]
fn kratzer_converges() {
    check("kratzer", (rat(1, 5), rat(1, 1)), &[0, 1]);
}

#[test]
fn hermite_converges() {
    check("hermite", (rat(-1, 3), rat(5, 2)), &[0, 1, 2]);
}
