//! Acceptance gate: ten numbered criteria covering the whole tool, each
//! printed as a single pass/fail line (run with `--nocapture` to see
//! them all). Every check is exact rational arithmetic unless the
//! criterion itself is about floating-point truncation.

use rand::Rng;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use std::time::{Duration, Instant};

use sympcliff_core::endf::{composition_table_differences, EndfUnit, ENDF_TABLE};
use sympcliff_core::graded_tensor::{embed_generator, graded_mul, GradedTensorElement, SlotSymbol};
use sympcliff_core::endf::Vec2;
use sympcliff_core::poisson::{ham, ham_inverse, pbracket, QuadPoly};
use sympcliff_core::process::{compose, ProcessKind, Sign, SignedProcess, PROCESS_TABLE};
use sympcliff_core::quantize::{
    fock_realize, jacobi_eigenvalues, weyl_commutator, weyl_quantize, verify_poisson_commutator,
};
use sympcliff_core::quaternion::{Quaternion, Vector3};
use sympcliff_core::symplectic::{
    admissible_pair_from_frame, j_from_form, make_phase_plane, scalar_from_form,
};
use sympcliff_core::verify::{run_suite, CheckStatus};
use sympcliff_core::{ComplexF64, Endo2, Rational};

// ---------------------------------------------------------------------------
// harness
// ---------------------------------------------------------------------------

fn criterion(
    number: u32,
    label: &str,
    budget: Option<Duration>,
    body: impl FnOnce() -> Result<(), String>,
) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let in_budget = budget.is_none_or(|b| elapsed <= b);
    match (&outcome, in_budget) {
        (Ok(()), true) => {
            println!("acceptance criterion {number:2}: PASS ({elapsed:.2?}) — {label}")
        }
        (Ok(()), false) => println!(
            "acceptance criterion {number:2}: FAIL (time {elapsed:.2?} over budget {:?}) — {label}",
            budget.unwrap()
        ),
        (Err(e), _) => println!("acceptance criterion {number:2}: FAIL — {label}: {e}"),
    }
    if let Err(e) = outcome {
        panic!("criterion {number} failed: {e}");
    }
    if let Some(b) = budget {
        assert!(
            elapsed <= b,
            "criterion {number} exceeded its budget: {elapsed:?} > {b:?}"
        );
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {{
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($arg)+));
        }
    }};
}

// ---------------------------------------------------------------------------
// random samplers (seeded, exact rationals)
// ---------------------------------------------------------------------------

fn rat(rng: &mut Xoshiro256PlusPlus) -> Rational {
    Rational::of(rng.random_range(-6..=6), rng.random_range(1..=9))
}

fn rat_nonzero(rng: &mut Xoshiro256PlusPlus) -> Rational {
    loop {
        let r = rat(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

fn vec3(rng: &mut Xoshiro256PlusPlus) -> Vector3 {
    Vector3::new(rat(rng), rat(rng), rat(rng))
}

fn quat(rng: &mut Xoshiro256PlusPlus) -> Quaternion {
    Quaternion::new(rat(rng), vec3(rng))
}

fn vec2(rng: &mut Xoshiro256PlusPlus) -> Vec2 {
    Vec2::new(rat(rng), rat(rng))
}

fn quad(rng: &mut Xoshiro256PlusPlus) -> QuadPoly {
    QuadPoly::new(rat(rng), rat(rng), rat(rng))
}

fn endo(rng: &mut Xoshiro256PlusPlus) -> Endo2 {
    Endo2::new(rat(rng), rat(rng), rat(rng), rat(rng))
}

fn invertible(rng: &mut Xoshiro256PlusPlus) -> Endo2 {
    loop {
        let m = endo(rng);
        if !m.det().is_zero() {
            return m;
        }
    }
}

fn quad_generators() -> [QuadPoly; 3] {
    let half = Rational::of(1, 2);
    [
        QuadPoly::q_squared().scale(&half),
        QuadPoly::p_squared().scale(&half),
        QuadPoly::q_times_p(),
    ]
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

#[test]
fn criterion_01_tables_reproduced_exactly() {
    criterion(
        1,
        "both unit tables match computed composition; four sign-flip cells",
        Some(Duration::from_secs(1)),
        || {
            for (r, &a) in ProcessKind::ALL.iter().enumerate() {
                for (c, &b) in ProcessKind::ALL.iter().enumerate() {
                    let composed = compose(
                        SignedProcess::new(Sign::Plus, a),
                        SignedProcess::new(Sign::Plus, b),
                    );
                    let (sign, kind) = PROCESS_TABLE[r][c];
                    ensure!(
                        composed.sign == sign && composed.kind == kind,
                        "process table cell ({r},{c}) disagrees with composition"
                    );
                }
            }
            for (r, &u) in EndfUnit::ALL.iter().enumerate() {
                for (c, &v) in EndfUnit::ALL.iter().enumerate() {
                    let product = &u.matrix() * &v.matrix();
                    let (sign, w) = ENDF_TABLE[r][c];
                    let expected = match sign {
                        Sign::Plus => w.matrix(),
                        Sign::Minus => -&w.matrix(),
                    };
                    ensure!(
                        product == expected,
                        "matrix table cell ({r},{c}) disagrees with matrix product"
                    );
                }
            }
            let diffs = composition_table_differences();
            let cells: Vec<(usize, usize)> = diffs.iter().map(|d| (d.row, d.col)).collect();
            ensure!(
                cells == [(2, 2), (2, 3), (3, 2), (3, 3)],
                "tables must differ exactly in the reflection block, got {cells:?}"
            );
            ensure!(
                diffs.iter().all(|d| d.same_kind),
                "each differing cell must name the same unit with opposite sign"
            );
            for &(r, c) in &cells {
                ensure!(
                    PROCESS_TABLE[r][c].0 != ENDF_TABLE[r][c].0,
                    "cell ({r},{c}) must differ in sign"
                );
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_02_quaternion_axioms() {
    criterion(
        2,
        "associativity, unit, norm multiplicativity, v^2 = -|v|^2 e on 1000 cases",
        Some(Duration::from_secs(5)),
        || {
            let mut rng = Xoshiro256PlusPlus::seed_from_u64(0xACCE_0002);
            let e = Quaternion::e();
            for case in 0..1000 {
                let a = quat(&mut rng);
                let b = quat(&mut rng);
                let c = quat(&mut rng);
                ensure!(
                    &(&a * &b) * &c == &a * &(&b * &c),
                    "associativity failed on case {case}"
                );
                ensure!(
                    &e * &a == a && &a * &e == a,
                    "unit law failed on case {case}"
                );
                ensure!(
                    (&a * &b).norm_sqr() == &a.norm_sqr() * &b.norm_sqr(),
                    "norm multiplicativity failed on case {case}"
                );
                let v = vec3(&mut rng);
                let vq = Quaternion::from_pure(v.clone());
                ensure!(
                    &vq * &vq == e.scale(&-&v.norm_sqr()),
                    "Clifford relation v^2 = -<v,v>e failed on case {case}"
                );
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_03_form_metric_quarter_turn_roundtrips() {
    criterion(
        3,
        "form <-> quarter-turn <-> metric roundtrips, 500 admissible cases",
        Some(Duration::from_secs(5)),
        || {
            let mut rng = Xoshiro256PlusPlus::seed_from_u64(0xACCE_0003);
            for case in 0..500 {
                let p = invertible(&mut rng);
                let s = rat_nonzero(&mut rng);
                let kappa = &s * &s;
                let (omega, g, expected_j) = admissible_pair_from_frame(&p, &kappa)
                    .expect("p invertible and kappa positive");
                let (j, k) = j_from_form(&omega, &g)
                    .map_err(|e| format!("case {case}: quarter-turn failed: {e}"))?;
                ensure!(j == expected_j, "case {case}: wrong quarter-turn");
                ensure!(k == kappa, "case {case}: wrong normalization");
                let plane = make_phase_plane(omega.clone(), g.clone())
                    .map_err(|e| format!("case {case}: plane assembly failed: {e}"))?;
                ensure!(
                    plane.j == j && plane.kappa == kappa,
                    "case {case}: plane stores a different derived pair"
                );
                let recovered = scalar_from_form(&j, &omega)
                    .map_err(|e| format!("case {case}: metric recovery failed: {e}"))?;
                ensure!(
                    *recovered.matrix() == g.matrix().scale(&kappa),
                    "case {case}: recovered metric is not kappa times the original"
                );
                let v = vec2(&mut rng);
                let w = vec2(&mut rng);
                let lhs = omega.eval(&v, &w);
                ensure!(
                    lhs == &kappa * &g.eval(&v, &j.apply(&w)),
                    "case {case}: omega(v,w) != kappa g(v, Jw)"
                );
                ensure!(
                    lhs == -&(&kappa * &g.eval(&j.apply(&v), &w)),
                    "case {case}: omega(v,w) != -kappa g(Jv, w)"
                );
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_04_ham_is_a_lie_algebra_isomorphism() {
    criterion(
        4,
        "ham{f,g} = [ham f, ham g] on 1000 pairs; inverse; generator matrices",
        Some(Duration::from_secs(5)),
        || {
            let mut rng = Xoshiro256PlusPlus::seed_from_u64(0xACCE_0004);
            for case in 0..1000 {
                let f = quad(&mut rng);
                let g = quad(&mut rng);
                ensure!(
                    ham(&pbracket(&f, &g)) == ham(&f).commutator(&ham(&g)),
                    "bracket/commutator mismatch on case {case}"
                );
                ensure!(
                    ham_inverse(&ham(&f)).map_err(|e| e.to_string())? == f,
                    "round trip through the field matrix failed on case {case}"
                );
            }
            let z = Rational::from_int(0);
            let one = Rational::from_int(1);
            let [h1, h2, h3] = quad_generators();
            ensure!(
                ham(&h1) == Endo2::new(z.clone(), z.clone(), -&one, z.clone()),
                "generator matrix for q^2/2 is wrong"
            );
            ensure!(
                ham(&h2) == Endo2::new(z.clone(), one.clone(), z.clone(), z.clone()),
                "generator matrix for p^2/2 is wrong"
            );
            ensure!(
                ham(&h3) == Endo2::new(one.clone(), z.clone(), z.clone(), -&one),
                "generator matrix for q*p is wrong"
            );
            Ok(())
        },
    );
}

#[test]
fn criterion_05_jacobi_identity() {
    criterion(
        5,
        "Jacobi identity, exact, 1000 random quadratic triples",
        Some(Duration::from_secs(5)),
        || {
            let mut rng = Xoshiro256PlusPlus::seed_from_u64(0xACCE_0005);
            for case in 0..1000 {
                let f = quad(&mut rng);
                let g = quad(&mut rng);
                let h = quad(&mut rng);
                let cyclic = &(&pbracket(&f, &pbracket(&g, &h))
                    + &pbracket(&g, &pbracket(&h, &f)))
                    + &pbracket(&h, &pbracket(&f, &g));
                ensure!(cyclic.is_zero(), "Jacobi identity failed on case {case}");
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_06_errata_documented_in_every_report() {
    criterion(
        6,
        "both documented sign/convention discrepancies appear in every report",
        None,
        || {
            for seed in [0u64, 123] {
                let report = run_suite(seed, 3);
                let errata: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| c.status == CheckStatus::ErratumDocumented)
                    .map(|c| c.name.as_str())
                    .collect();
                ensure!(
                    errata
                        == [
                            "erratum.hermitian-convention",
                            "erratum.quadratic-bracket-sign"
                        ],
                    "seed {seed}: erratum checks missing or renamed: {errata:?}"
                );
                ensure!(
                    report.summary.failed == 0,
                    "seed {seed}: erratum checks must count as passing"
                );
            }
            // The substance behind the bracket erratum, rechecked directly:
            // {q*p, q^2/2} = -q^2, confirmed through the independent
            // matrix-commutator route.
            let half = Rational::of(1, 2);
            let q_sq_half = QuadPoly::q_squared().scale(&half);
            let direct = pbracket(&QuadPoly::q_times_p(), &q_sq_half);
            let minus_q_sq = -&QuadPoly::q_squared();
            ensure!(
                direct == minus_q_sq,
                "defining convention gives {direct}, expected -q^2"
            );
            let via_matrices = ham_inverse(
                &ham(&QuadPoly::q_times_p()).commutator(&ham(&q_sq_half)),
            )
            .map_err(|e| e.to_string())?;
            ensure!(
                via_matrices == minus_q_sq,
                "matrix commutator route gives {via_matrices}, expected -q^2"
            );
            Ok(())
        },
    );
}

#[test]
fn criterion_07_graded_tensor_clifford_relations() {
    criterion(
        7,
        "2n embedded generators anticommute, square to -unit; associativity",
        Some(Duration::from_secs(10)),
        || {
            for n in [2usize, 3] {
                let mut generators = Vec::new();
                for slot in 1..=n {
                    for sym in [SlotSymbol::Eq, SlotSymbol::Ep] {
                        generators.push(
                            embed_generator(slot, sym, n).map_err(|e| e.to_string())?,
                        );
                    }
                }
                ensure!(generators.len() == 2 * n, "expected 2n generators");
                let minus_unit = GradedTensorElement::unit(n)
                    .map_err(|e| e.to_string())?
                    .neg();
                for (i, u) in generators.iter().enumerate() {
                    for (j, v) in generators.iter().enumerate() {
                        let coeff =
                            sympcliff_core::graded_tensor::clifford_relation_check(u, v)
                                .map_err(|e| e.to_string())?;
                        let expected = if i == j { -2 } else { 0 };
                        ensure!(
                            coeff == Rational::from_int(expected),
                            "n={n}: uv+vu for generators ({i},{j}) must be {expected} * unit"
                        );
                        if i == j {
                            let square = graded_mul(u, u).map_err(|e| e.to_string())?;
                            ensure!(
                                square == minus_unit,
                                "n={n}: generator {i} must square to -unit"
                            );
                        }
                    }
                }
            }

            let mut rng = Xoshiro256PlusPlus::seed_from_u64(0xACCE_0007);
            let symbols = [SlotSymbol::E, SlotSymbol::Eq, SlotSymbol::Ep, SlotSymbol::J];
            let random_element = |rng: &mut Xoshiro256PlusPlus| {
                let mut el = GradedTensorElement::zero(2).expect("n=2 is supported");
                for _ in 0..3 {
                    let word: Vec<SlotSymbol> =
                        (0..2).map(|_| symbols[rng.random_range(0..4)]).collect();
                    el.add_term(word, rat(rng)).expect("term fits the factor count");
                }
                el
            };
            for case in 0..200 {
                let a = random_element(&mut rng);
                let b = random_element(&mut rng);
                let c = random_element(&mut rng);
                let left = graded_mul(&graded_mul(&a, &b).map_err(|e| e.to_string())?, &c)
                    .map_err(|e| e.to_string())?;
                let right = graded_mul(&a, &graded_mul(&b, &c).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                ensure!(left == right, "graded associativity failed on case {case}");
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_08_quantization_is_exactly_homomorphic() {
    criterion(
        8,
        "Q({f,g}) = [Q(f),Q(g)] symbolically: 9 generator pairs + 500 random",
        Some(Duration::from_secs(10)),
        || {
            let generators = quad_generators();
            for f in &generators {
                for g in &generators {
                    let (ok, _) = verify_poisson_commutator(f, g);
                    ensure!(ok, "generator pair ({f}, {g}) fails the exact identity");
                    let defect = weyl_commutator(&weyl_quantize(f), &weyl_quantize(g))
                        .sub(&weyl_quantize(&pbracket(f, g)));
                    ensure!(defect.is_zero(), "nonzero defect for ({f}, {g})");
                }
            }
            let mut rng = Xoshiro256PlusPlus::seed_from_u64(0xACCE_0008);
            for case in 0..500 {
                let f = quad(&mut rng);
                let g = quad(&mut rng);
                let (ok, _) = verify_poisson_commutator(&f, &g);
                ensure!(ok, "random pair {case} fails the exact identity");
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_09_fock_truncation_fidelity() {
    criterion(
        9,
        "32-dim commutator defect <= 1e-9 on the 30x30 block; ladder spectra",
        Some(Duration::from_secs(10)),
        || {
            let generators = quad_generators();
            for f in &generators {
                for g in &generators {
                    let qf = fock_realize(&weyl_quantize(f), 32).map_err(|e| e.to_string())?;
                    let qg = fock_realize(&weyl_quantize(g), 32).map_err(|e| e.to_string())?;
                    let qfg = fock_realize(&weyl_quantize(&pbracket(f, g)), 32)
                        .map_err(|e| e.to_string())?;
                    let defect = qf.commutator(&qg).sub(&qfg).max_abs_block(30);
                    ensure!(
                        defect <= 1e-9,
                        "truncated commutator defect {defect:.3e} for ({f}, {g})"
                    );
                }
            }

            let oscillator = QuadPoly::harmonic_oscillator();
            for dim in [8usize, 16, 32] {
                let op = fock_realize(&weyl_quantize(&oscillator), dim)
                    .map_err(|e| e.to_string())?
                    .scale(ComplexF64::new(0.0, 1.0));
                let mut eigs = jacobi_eigenvalues(&op).map_err(|e| e.to_string())?;
                eigs.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
                let mut expected: Vec<f64> =
                    (0..=dim - 2).map(|n| n as f64 + 0.5).collect();
                expected.push((dim as f64 - 1.0) / 2.0);
                expected.sort_by(|a, b| a.partial_cmp(b).expect("finite expectations"));
                ensure!(eigs.len() == expected.len(), "dim {dim}: wrong spectrum size");
                for (k, (have, want)) in eigs.iter().zip(&expected).enumerate() {
                    ensure!(
                        (have - want).abs() <= 1e-10,
                        "dim {dim}: eigenvalue {k} is {have}, expected {want}"
                    );
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_10_end_to_end_determinism() {
    criterion(
        10,
        "verify --seed 42 --cases 500: byte-identical reports, zero failures",
        None,
        || {
            let run_once = || {
                std::process::Command::new(env!("CARGO_BIN_EXE_sympcliff"))
                    .env_remove("SYMPCLIFF_SEED")
                    .args(["verify", "--seed", "42", "--cases", "500"])
                    .output()
                    .expect("binary runs")
            };
            let first = std::thread::spawn(run_once);
            let second = run_once();
            let first = first.join().expect("first run completes");
            ensure!(
                first.status.code() == Some(0) && second.status.code() == Some(0),
                "verification must exit 0"
            );
            ensure!(
                first.stdout == second.stdout,
                "reports differ between identically seeded runs"
            );
            let report: serde_json::Value =
                serde_json::from_slice(&first.stdout).map_err(|e| e.to_string())?;
            ensure!(
                report["summary"]["failed"] == 0,
                "summary.failed must be 0, got {}",
                report["summary"]["failed"]
            );
            ensure!(report["seed"] == 42, "report must echo the requested seed");
            Ok(())
        },
    );
}
