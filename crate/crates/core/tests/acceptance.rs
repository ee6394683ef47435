//! Acceptance gate: one test per criterion, each printing a single
//! `[PASS]`/`[FAIL]` line (visible with `--nocapture`, or on failure).

use std::time::{Duration, Instant};

use hilbmotive::graded::GradedDimension;
use hilbmotive::motive::{
    chow_dims_hilb, euler_hilb, hilb_decomposition, poincare_hilb, punctual_chow_total,
};
use hilbmotive::partition::{
    orbit_bijection_check, partition_count, q_fiber, sigma_orbits, Multipartition, Partition,
};
use hilbmotive::projector::{build_block_realization, verify_completeness, verify_projector_algebra};
use hilbmotive::series::{goettsche_series, motivic_monomial_expansion, two_path_check};
use hilbmotive::surface::SurfaceDescriptor;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn criterion<F>(number: u32, name: &str, budget: Option<Duration>, body: F)
where
    F: FnOnce() -> Result<String, String>,
{
    let started = Instant::now();
    let outcome = body().and_then(|detail| {
        let elapsed = started.elapsed();
        if let Some(limit) = budget {
            if elapsed >= limit {
                return Err(format!(
                    "finished correct but too slow: {elapsed:.2?} ≥ {limit:.2?}"
                ));
            }
        }
        Ok(format!("{detail} ({elapsed:.2?})"))
    });
    match outcome {
        Ok(detail) => println!("[PASS] criterion {number}: {name} — {detail}"),
        Err(why) => {
            println!("[FAIL] criterion {number}: {name} — {why}");
            panic!("criterion {number} failed: {why}");
        }
    }
}

fn builtins() -> Vec<SurfaceDescriptor> {
    ["p2", "p1xp1", "k3", "abelian"]
        .iter()
        .map(|name| SurfaceDescriptor::builtin(name).unwrap())
        .collect()
}

#[test]
fn criterion_1_two_path_generating_functions() {
    criterion(
        1,
        "series and decomposition agree on all built-in surfaces up to q^8",
        Some(Duration::from_secs(10)),
        || {
            for surface in builtins() {
                let report = two_path_check(&surface, 8);
                ensure!(
                    report.passed,
                    "{}: first mismatch {:?}",
                    surface.name,
                    report.first_mismatch
                );
            }
            Ok("4 surfaces, orders 0..=8, exact".into())
        },
    );
}

#[test]
fn criterion_2_known_values_for_two_points_on_the_plane() {
    criterion(2, "pinned Poincaré polynomial and Euler number", None, || {
        let p2 = SurfaceDescriptor::p2();
        let got = poincare_hilb(&p2, 2);
        let want = GradedDimension::from_pairs(&[(0, 1), (2, 2), (4, 3), (6, 2), (8, 1)]);
        ensure!(got == want, "poincare_hilb(P², 2) = {got:?}");
        ensure!(euler_hilb(&p2, 2) == 9, "euler = {}", euler_hilb(&p2, 2));
        Ok("1+2t²+3t⁴+2t⁶+t⁸, e = 9".into())
    });
}

#[test]
fn criterion_3_monomial_expansion_matches_decomposition() {
    criterion(3, "product expansion reproduces every term, n ≤ 12", None, || {
        for n in 0..=12 {
            let expansion = motivic_monomial_expansion(n);
            ensure!(
                expansion.matches_decomposition(&hilb_decomposition(n)),
                "expansion and decomposition disagree at n = {n}"
            );
        }
        Ok("term-for-term with twists n−l(ν), shifts 2n−2l(ν)".into())
    });
}

#[test]
fn criterion_4_projector_suite() {
    criterion(
        4,
        "projector algebra n ≤ 10; completeness on block models n ≤ 6",
        Some(Duration::from_secs(30)),
        || {
            for n in 0..=10 {
                let report = verify_projector_algebra(n);
                ensure!(
                    report.passed,
                    "algebra fails at n = {n}: {:?}",
                    report.failures
                );
            }
            let mut total_checks = 0;
            for name in ["p2", "p1xp1"] {
                let surface = SurfaceDescriptor::builtin(name).unwrap();
                for n in 0..=6 {
                    let r = build_block_realization(&surface, n)
                        .map_err(|e| format!("{name} n={n}: {e}"))?;
                    let report = verify_completeness(&r);
                    ensure!(report.passed, "{name} n={n}: {report:?}");
                    ensure!(
                        report.rank_sum == r.total_dim,
                        "{name} n={n}: rank sum {} ≠ dim {}",
                        report.rank_sum,
                        r.total_dim
                    );
                    total_checks += 1;
                }
            }
            Ok(format!("algebra 0..=10, {total_checks} exact completeness runs"))
        },
    );
}

#[test]
fn criterion_5_chow_matches_even_betti_for_the_plane() {
    criterion(5, "Chow ranks equal even Betti numbers for P², n ≤ 6", None, || {
        let p2 = SurfaceDescriptor::p2();
        for n in 0..=6 {
            let chow = chow_dims_hilb(&p2, n).map_err(|e| e.to_string())?;
            let poincare = poincare_hilb(&p2, n);
            for k in 0..=2 * n {
                ensure!(
                    chow.get(k) == poincare.get(2 * k),
                    "n={n}, k={k}: chow {} vs b_{} = {}",
                    chow.get(k),
                    2 * k,
                    poincare.get(2 * k)
                );
            }
            for (degree, count) in poincare.iter() {
                ensure!(
                    degree % 2 == 0,
                    "n={n}: odd-degree class t^{degree} with count {count}"
                );
            }
        }
        Ok("all k, exact".into())
    });
}

#[test]
fn criterion_6_worked_example_of_weight_four() {
    criterion(6, "fibers and orbits over μ = (2,2)", None, || {
        let mu = Partition::new(vec![2, 2]);
        let multipartitions = Multipartition::enumerate(&mu);
        ensure!(
            multipartitions.len() == 4,
            "expected 4 multipartitions, got {}",
            multipartitions.len()
        );

        let ones = Partition::new(vec![1, 1, 1, 1]);
        let fiber = q_fiber(&ones, &mu);
        ensure!(fiber.len() == 3, "q_fiber(1⁴, 2²) has {} elements", fiber.len());
        let orbits = sigma_orbits(&ones, &mu);
        ensure!(orbits.len() == 1, "expected one Σ_ν-orbit, got {}", orbits.len());

        let two_one_one = Partition::new(vec![2, 1, 1]);
        let fiber = q_fiber(&two_one_one, &mu);
        ensure!(
            fiber.len() == 1 && fiber[0].to_string() == "{{1},{2,3}}",
            "q_fiber(2·1², 2²) = {:?}",
            fiber.iter().map(|d| d.to_string()).collect::<Vec<_>>()
        );

        let two_two = Partition::new(vec![2, 2]);
        let fiber = q_fiber(&two_two, &mu);
        ensure!(
            fiber.len() == 1 && fiber[0].to_string() == "{{1},{2}}",
            "q_fiber(2², 2²) = {:?}",
            fiber.iter().map(|d| d.to_string()).collect::<Vec<_>>()
        );
        Ok("4 multipartitions; fibers 3/1/1 with expected orbits".into())
    });
}

#[test]
fn criterion_7_combinatorial_invariants() {
    criterion(
        7,
        "poset laws, orbit bijection, partition counts",
        Some(Duration::from_secs(10)),
        || {
            // refinement is a partial order with the expected extremes
            for n in 1..=8usize {
                let partitions = Partition::enumerate(n);
                let k = partitions.len();
                let mut rel = vec![vec![false; k]; k];
                for (i, nu) in partitions.iter().enumerate() {
                    for (j, mu) in partitions.iter().enumerate() {
                        rel[i][j] = nu.refines(mu).map_err(|e| e.to_string())?;
                    }
                }
                for i in 0..k {
                    ensure!(rel[i][i], "n={n}: not reflexive at {}", partitions[i]);
                    ensure!(rel[0][i], "n={n}: finest does not refine {}", partitions[i]);
                    ensure!(rel[i][k - 1], "n={n}: {} does not refine coarsest", partitions[i]);
                    for j in 0..k {
                        ensure!(
                            !(rel[i][j] && rel[j][i] && i != j),
                            "n={n}: antisymmetry fails between {} and {}",
                            partitions[i],
                            partitions[j]
                        );
                        for t in 0..k {
                            ensure!(
                                !(rel[i][j] && rel[j][t]) || rel[i][t],
                                "n={n}: transitivity fails {} ⪰ {} ⪰ {}",
                                partitions[i],
                                partitions[j],
                                partitions[t]
                            );
                        }
                    }
                }
            }

            for n in 1..=8usize {
                for mu in Partition::enumerate(n) {
                    let report = orbit_bijection_check(&mu);
                    ensure!(report.holds, "orbit bijection fails for μ = {mu}");
                }
            }

            // independent partition-count oracle via the pentagonal recurrence
            let mut p = vec![1i64];
            for n in 1..=20usize {
                let mut total = 0i64;
                let mut k = 1i64;
                loop {
                    let g1 = (k * (3 * k - 1) / 2) as usize;
                    let g2 = (k * (3 * k + 1) / 2) as usize;
                    if g1 > n && g2 > n {
                        break;
                    }
                    let sign = if k % 2 == 0 { -1 } else { 1 };
                    if g1 <= n {
                        total += sign * p[n - g1];
                    }
                    if g2 <= n {
                        total += sign * p[n - g2];
                    }
                    k += 1;
                }
                p.push(total);
                ensure!(
                    partition_count(n) == total as u64,
                    "p({n}) = {} but recurrence gives {total}",
                    partition_count(n)
                );
                ensure!(
                    punctual_chow_total(n) == total as u64,
                    "punctual total at n = {n} is {}, expected p(n) = {total}",
                    punctual_chow_total(n)
                );
            }
            Ok("posets n ≤ 8, orbits ≤ 8, counts ≤ 20".into())
        },
    );
}

#[test]
fn criterion_8_sign_conventions() {
    criterion(8, "odd classes square to zero yet survive the series", None, || {
        let odd = GradedDimension::from_pairs(&[(1, 1)]);
        ensure!(
            odd.sym_power_signed(2).is_zero(),
            "symmetric square of an odd generator is {:?}",
            odd.sym_power_signed(2)
        );

        let abelian = SurfaceDescriptor::builtin("abelian").unwrap();
        let report = two_path_check(&abelian, 8);
        ensure!(report.passed, "abelian two-path: {:?}", report.first_mismatch);
        let series = goettsche_series(&abelian, 2);
        let q1 = series.coeff(1);
        ensure!(
            q1.get(1) != 0.into(),
            "q¹ coefficient has no odd-degree term: {q1}"
        );
        let h1 = poincare_hilb(&abelian, 1);
        ensure!(h1.get(1) == 4, "b₁ of one point should be 4, got {}", h1.get(1));
        Ok("exterior square vanishes; abelian odd terms non-zero".into())
    });
}
