//! Acceptance criteria 1-12. Prints one PASS/FAIL line per criterion; exits non-zero on failure.

use std::process::ExitCode;
use std::time::Instant;

use sphere_green::verify::{run_suite, VerifyOptions};

const CRITERIA: [(u8, &str, &str); 12] = [
    (1, "fourier-s2", "S^2 Fourier coefficients vs quadrature, 200 pairs, n <= 10, 1e-8"),
    (2, "fourier-s3", "S^3 elliptic route vs quadrature, 100 configs, m <= 6, 1e-7; m = 0 and Hopf forms 1e-8"),
    (3, "v-sequence", "V_j, j <= 6, vs per-j quadrature at 10 samples, 1e-8"),
    (4, "gegenbauer", "Gegenbauer sum L = 60 vs kernel, d = 3..5, 20 pairs, 1e-6, monotone for L >= 5"),
    (5, "addition", "addition-theorem sums L = 40 vs elliptic route, m <= 4, 20 configs, 1e-5"),
    (6, "wronskian", "Wronskians (PQ even d, PP odd d), l <= 6, 1e-7"),
    (7, "jump", "v_l derivative jump = -R^(2-d), d = 3..5, l <= 4, R in {1, 2}, 1e-5"),
    (8, "potentials", "2-disc / 3-ball vs convolution 1e-8; curve segment vs quadrature 1e-9"),
    (9, "poisson", "-Laplacian(Phi) = rho inside, 0 outside, 1e-5 |rho0|"),
    (10, "binding", "binding energies vs double quadrature 1e-7; 4 pi / 15 within 1%; 13/21 within 2%"),
    (11, "flat-limit", "flat-space deviations decay with slope -2 +- 0.2, R in {1e2, 1e3, 1e4}"),
    (12, "identities", "definite integrals 1e-7; superintegrable Poisson pairs 1e-5"),
];

fn main() -> ExitCode {
    let opts = VerifyOptions::default();
    let mut failed = 0;
    for (n, suite, what) in CRITERIA {
        let t = Instant::now();
        let rep = run_suite(suite, &opts).expect("suite exists");
        let status = if rep.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {n:>2} [{status}] {what} | {} cases, worst error {:.3e} (tol {:.1e}), {:.2}s",
            rep.cases,
            rep.max_error,
            rep.tolerance,
            t.elapsed().as_secs_f64()
        );
        for note in &rep.notes {
            println!("    note: {note}");
        }
        if !rep.passed {
            failed += 1;
            for f in rep.failures.iter().take(10) {
                println!("    fail: {f}");
            }
            if rep.failures.len() > 10 {
                println!("    ... {} more", rep.failures.len() - 10);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
