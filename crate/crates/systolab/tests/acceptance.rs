//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Oracles here are deliberately independent of the library internals:
//! quadrature for closed forms, exhaustive enumeration for the cycle solver,
//! direct universal-coefficient arithmetic for homology.

use std::panic::{catch_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use systolab::discsys::{self, Mode, WeightedComplex};
use systolab::families::{self, FamilyModel};
use systolab::homology::{self, Chain, ChainComplex};
use systolab::lattice;
use systolab::{rank_mod2, rank_rational, IntMatrix};

fn seed() -> u64 {
    std::env::var("SYSTOLE_LAB_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn report(number: u32, name: &str, budget: Duration, body: impl FnOnce() + UnwindSafe) {
    let start = Instant::now();
    let outcome = catch_unwind(body);
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) if elapsed <= budget => {
            println!("criterion {number} ({name}): PASS ({elapsed:.2?})");
        }
        Ok(()) => {
            println!(
                "criterion {number} ({name}): FAIL (runtime {elapsed:.2?} exceeds {budget:.2?})"
            );
            panic!("criterion {number} exceeded its runtime budget");
        }
        Err(cause) => {
            println!("criterion {number} ({name}): FAIL ({elapsed:.2?})");
            std::panic::resume_unwind(cause);
        }
    }
}

#[test]
fn criterion_1_loewner_bound() {
    report(1, "Loewner bound on 1e5 random tori", Duration::from_secs(30), || {
        let bound = 2.0 / 3.0_f64.sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(seed());
        for i in 0..100_000 {
            let t = lattice::random_torus(&mut rng, 2);
            let r = lattice::loewner_ratio(&t).unwrap();
            assert!(r <= bound + 1e-9, "torus {} violates the bound: {}", i, r);
        }
        let hex = lattice::hexagonal_torus();
        let r = lattice::loewner_ratio(&hex).unwrap();
        assert!((r - bound).abs() <= 1e-12);
        // exact rational equality of the squared quantities: λ₁²λ₂²/det = 4/3
        let sq = lattice::loewner_ratio_sq_exact(&hex).unwrap();
        assert_eq!(sq, BigRational::new(BigInt::from(4), BigInt::from(3)));
    });
}

#[test]
fn criterion_2_gromov_family() {
    report(2, "Gromov family ratio -> 0", Duration::from_secs(1), || {
        let js = [0u64, 1, 10, 100, 1000];
        let rows = families::freedom_table(FamilyModel::Gromov, &js).unwrap();
        for row in &rows {
            let expected = (1.0 + (row.j as f64).powi(2)).powf(-0.5);
            let rel = (row.ratio - expected).abs() / expected;
            assert!(rel <= 1e-9, "j = {}: ratio {} vs {}", row.j, row.ratio, expected);
        }
        let r10 = rows.iter().find(|r| r.j == 10).unwrap().ratio;
        let r1000 = rows.iter().find(|r| r.j == 1000).unwrap().ratio;
        assert!(r1000 / r10 <= 0.011);
    });
}

#[test]
fn criterion_3_hodge_rigorous_freedom() {
    report(3, "Hodge family rigorous freedom ~ j^2", Duration::from_secs(5), || {
        for j in [3u64, 10, 20, 50, 100, 500, 1000] {
            let vol = families::hodge_volume(j).unwrap();
            assert_eq!(vol, BigRational::from_integer(BigInt::from(2 * j)));
        }
        let calib10 = families::calibration_bound(10).unwrap();
        assert!((calib10 - 41.0482).abs() <= 1e-3);
        // independent quadrature oracle for the calibration integral
        for j in [10u64, 100] {
            let closed = families::calibration_bound(j).unwrap();
            let quad = families::adaptive_simpson(
                &|x: f64| (1.0 + x * x).sqrt(),
                1.0,
                (j - 1) as f64,
                1e-10,
            );
            assert!((closed - quad).abs() <= 1e-9, "j = {}", j);
        }
        for j in [20u64, 50, 100, 500] {
            let row = &families::freedom_table(FamilyModel::Hodge, &[j]).unwrap()[0];
            assert!(
                (row.ratio * j as f64 - 4.0).abs() <= 20.0 / j as f64,
                "j = {}: ratio*j = {}",
                j,
                row.ratio * j as f64
            );
        }
        let r100 = families::freedom_table(FamilyModel::Hodge, &[100]).unwrap()[0].ratio;
        let r1000 = families::freedom_table(FamilyModel::Hodge, &[1000]).unwrap()[0].ratio;
        let slope = (r1000.ln() - r100.ln()) / (1000.0_f64.ln() - 100.0_f64.ln());
        assert!((slope - (-1.0)).abs() <= 0.02, "log-log slope {}", slope);
    });
}

#[test]
fn criterion_4_mod2_area_gap() {
    report(4, "Z2/Z area gap crossover", Duration::from_secs(5), || {
        // exact linearity: every copy congruent to the base copy by shears,
        // verified in rational arithmetic at every integer slice parameter
        for j in [4u64, 8, 10] {
            let cycle = families::mod2_cycle(j).unwrap();
            assert_eq!(cycle.copies.len() as u64, j);
            for copy in &cycle.copies {
                assert_eq!(copy.area, cycle.copy_area);
            }
            assert_eq!(cycle.total_area, j as f64 * cycle.copy_area);
            // the shear identity holds on the unfolded half [0, j]; the
            // mirrored copies are congruent by the reflection x ↦ 2j − x
            for x in 0..(j - 1) {
                let x = BigRational::from_integer(BigInt::from(x));
                assert!(families::shear_isometry_check(j, &x).unwrap());
            }
        }
        // crossover bracket: Z2 area vs Z calibration bound
        let m8 = families::mod2_cycle(8).unwrap().total_area;
        let c8 = families::calibration_bound(8).unwrap();
        assert!((m8 - 31.663).abs() <= 1e-3);
        assert!((c8 - 24.923).abs() <= 1e-3);
        assert!(m8 > c8);
        let m10 = families::mod2_cycle(10).unwrap().total_area;
        let c10 = families::calibration_bound(10).unwrap();
        assert!((m10 - 39.579).abs() <= 1e-3);
        assert!((c10 - 41.048).abs() <= 1e-3);
        assert!(m10 < c10);
    });
}

#[test]
fn criterion_5_surgery_betti_triple() {
    report(5, "surgery Betti triple and universal coefficients", Duration::from_secs(30), || {
        let b2 = |name: &str| homology::catalog(name).unwrap().homology().unwrap().betti[2];
        assert_eq!(b2("s4_surgery_X"), 0);
        assert_eq!(b2("s4_surgery_W"), 1);
        assert_eq!(b2("s4_surgery_Y"), 2);
        let klein = homology::catalog("klein").unwrap().homology().unwrap();
        assert_eq!(klein.betti, vec![1, 1, 0]);
        assert_eq!(klein.torsion[1], vec![BigInt::from(2)]);
        assert_eq!(klein.betti_mod2, vec![1, 2, 1]);
        let rp2 = homology::catalog("rp2").unwrap().homology().unwrap();
        assert_eq!(rp2.betti, vec![1, 0, 0]);
        assert_eq!(rp2.torsion[1], vec![BigInt::from(2)]);
        assert_eq!(rp2.betti_mod2, vec![1, 1, 1]);
        for name in homology::catalog_names() {
            check_universal_coefficients(&homology::catalog(&name).unwrap());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed());
        for _ in 0..1000 {
            let c = homology::random_complex(&mut rng, 6);
            check_universal_coefficients(&c);
        }
    });
}

/// b₂ₖ = bₖ + #even-torsion(k) + #even-torsion(k−1), recomputed here from
/// scratch with the rank primitives, not the library's own cross-check.
fn check_universal_coefficients(c: &ChainComplex) {
    let h = c.homology().unwrap();
    for k in 0..=c.top_degree() {
        let even = |deg: isize| -> usize {
            if deg < 0 {
                return 0;
            }
            h.torsion
                .get(deg as usize)
                .map(|t| t.iter().filter(|d| d.to_i64().map_or(true, |v| v % 2 == 0)).count())
                .unwrap_or(0)
        };
        let expect = h.betti[k] + even(k as isize) + even(k as isize - 1);
        let direct =
            c.cell_count(k) - rank_mod2(&c.boundary(k)) - rank_mod2(&c.boundary(k + 1));
        assert_eq!(h.betti_mod2[k], expect, "UCT mismatch in degree {}", k);
        assert_eq!(h.betti_mod2[k], direct, "mod-2 rank mismatch in degree {}", k);
    }
}

#[test]
fn criterion_6_solver_oracle_equivalence() {
    report(6, "systole solver equals exhaustive oracle", Duration::from_secs(120), || {
        let unit = |c: &ChainComplex| -> Vec<Vec<BigRational>> {
            c.cell_counts().iter().map(|&n| vec![BigRational::one(); n]).collect()
        };
        let cases: Vec<(&str, usize)> = vec![
            ("torus", 1),
            ("torus", 2),
            ("klein", 1),
            ("rp2", 1),
            ("sphere(2)", 2),
            ("rp2_6", 1),
            ("rp2_6", 2),
        ];
        for (name, degree) in cases {
            let c = homology::catalog(name).unwrap();
            let wc = WeightedComplex::new(c.clone(), unit(&c), None).unwrap();
            let n = c.cell_count(degree);
            for mode in [Mode::All, Mode::ModTorsion, Mode::Z2] {
                // keep the Z-coefficient oracle to enumerable sizes
                if mode != Mode::Z2 && n > 12 {
                    continue;
                }
                let got = discsys::systole(&wc, degree, mode);
                let want = oracle_systole(&wc, degree, mode);
                match (&got, &want) {
                    (Ok(r), Some(v)) => {
                        assert_eq!(&r.value, v, "{} degree {} mode {:?}", name, degree, mode);
                        check_witness(&wc, degree, mode, &r.witness);
                    }
                    (Err(_), None) => {}
                    _ => panic!(
                        "{} degree {} mode {:?}: solver {:?} vs oracle {:?}",
                        name,
                        degree,
                        mode,
                        got.as_ref().map(|r| r.value.clone()).ok(),
                        want
                    ),
                }
            }
        }
        // the two headline values
        let c = homology::catalog("rp2_6").unwrap();
        let wc = WeightedComplex::new(c.clone(), unit(&c), None).unwrap();
        let sys2 = discsys::systole(&wc, 2, Mode::Z2).unwrap().value;
        assert_eq!(sys2, BigRational::from_integer(BigInt::from(10)));
        let sys1 = discsys::systole(&wc, 1, Mode::Z2).unwrap().value;
        assert_eq!(sys1, BigRational::from_integer(BigInt::from(3)));
    });
}

fn check_witness(wc: &WeightedComplex, degree: usize, mode: Mode, witness: &Chain) {
    assert!(!witness.is_zero());
    let b = wc.complex().apply_boundary(witness);
    if mode == Mode::Z2 {
        assert!(b.coefficients.iter().all(|x| (x % BigInt::from(2)).is_zero()));
    } else {
        assert!(b.is_zero());
    }
    let up = wc.complex().boundary(degree + 1);
    let aug = augment(&up, &witness.coefficients);
    let nontrivial = match mode {
        Mode::Z2 => rank_mod2(&aug) > rank_mod2(&up),
        Mode::ModTorsion => rank_rational(&aug) > rank_rational(&up),
        // nontrivial over Z at minimum means not a rational boundary OR a
        // torsion class; accept either certificate shape here
        Mode::All => {
            rank_rational(&aug) > rank_rational(&up) || rank_mod2(&aug) > rank_mod2(&up)
        }
    };
    assert!(nontrivial, "witness class is trivial in mode {:?}", mode);
}

fn augment(m: &IntMatrix, c: &[BigInt]) -> IntMatrix {
    let mut out = IntMatrix::zero(m.rows(), m.cols() + 1);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j).clone());
        }
        out.set(i, m.cols(), c[i].clone());
    }
    out
}

/// Exhaustive odometer over all chains with coefficients in [-3, 3] (Z
/// modes) or {0, 1} (Z2): no pruning, no solver machinery.
fn oracle_systole(wc: &WeightedComplex, degree: usize, mode: Mode) -> Option<BigRational> {
    let c = wc.complex();
    let n = c.cell_count(degree);
    let d = c.boundary(degree);
    let up = c.boundary(degree + 1);
    let rows: Vec<Vec<i64>> = (0..d.rows())
        .map(|i| (0..n).map(|j| d.get(i, j).to_i64().unwrap()).collect())
        .collect();
    let (lo, hi): (i64, i64) = if mode == Mode::Z2 { (0, 1) } else { (-3, 3) };
    let mut coeffs = vec![lo; n];
    let mut best: Option<BigRational> = None;
    loop {
        if coeffs.iter().any(|&x| x != 0) {
            let is_cycle = rows.iter().all(|row| {
                let s: i64 = row.iter().zip(&coeffs).map(|(a, b)| a * b).sum();
                if mode == Mode::Z2 { s % 2 == 0 } else { s == 0 }
            });
            if is_cycle {
                let vec: Vec<BigInt> = coeffs.iter().map(|&x| BigInt::from(x)).collect();
                let aug = augment(&up, &vec);
                let nontrivial = match mode {
                    Mode::Z2 => rank_mod2(&aug) > rank_mod2(&up),
                    Mode::ModTorsion => rank_rational(&aug) > rank_rational(&up),
                    Mode::All => !oracle_is_z_boundary(&up, &vec),
                };
                if nontrivial {
                    let w: BigRational = vec
                        .iter()
                        .zip(wc.weights(degree))
                        .map(|(x, w)| BigRational::from(x.abs()) * w)
                        .sum();
                    if best.as_ref().map_or(true, |b| w < *b) {
                        best = Some(w);
                    }
                }
            }
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return best;
            }
            if coeffs[pos] < hi {
                coeffs[pos] += 1;
                break;
            }
            coeffs[pos] = lo;
            pos += 1;
        }
    }
}

/// Z-image membership by exhaustive search over generator coefficients,
/// valid because the test complexes have few generator columns.
fn oracle_is_z_boundary(up: &IntMatrix, c: &[BigInt]) -> bool {
    if rank_rational(&augment(up, c)) > rank_rational(up) {
        return false;
    }
    let cols = up.cols();
    if cols == 0 {
        return c.iter().all(|x| x.is_zero());
    }
    assert!(cols <= 4, "oracle membership search needs few generators");
    let mut x = vec![-6i64; cols];
    loop {
        let hit = (0..up.rows()).all(|i| {
            let s: BigInt = (0..cols).map(|j| up.get(i, j) * BigInt::from(x[j])).sum();
            s == c[i]
        });
        if hit {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == cols {
                return false;
            }
            if x[pos] < 6 {
                x[pos] += 1;
                break;
            }
            x[pos] = -6;
            pos += 1;
        }
    }
}

#[test]
fn criterion_7_coarea_check() {
    report(7, "coarea slice bound on the meshed cylinder", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed());
        for j in [5u64, 10] {
            let (wc, m) = discsys::hodge_cylinder_mesh(j);
            let ell = 2.0 * j as f64;
            let base = discsys::coarea_slice_check(&wc, &m, ell).unwrap();
            assert!(base.holds, "j = {}: base chain fails", j);
            assert!(base.min_slice_weight <= base.bound);
            let slabs = (2 * j) as usize;
            for trial in 0..100 {
                let coeffs: Vec<i64> = (0..slabs).map(|_| rng.gen_range(-2..=2)).collect();
                let z = discsys::perturb_on_mesh(&wc, &m, &coeffs);
                let r = discsys::coarea_slice_check(&wc, &z, ell).unwrap();
                assert!(r.holds, "j = {}, trial {}: bound fails", j, trial);
            }
        }
    });
}
