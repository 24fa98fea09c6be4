//! Invariant suites behind `verify`.

use lattice_area::combinatorics::{binomial, coeff_c, coeff_cg, compositions, factorial, g_compositions};
use lattice_area::oracle::{
    brute_force_distribution_square, brute_force_distribution_triangular, word_distribution_square,
};
use lattice_area::spectral::{
    cluster_b_compositions, cluster_b_logseries, dealias_modulus, extract_distribution_dft,
    kreft_z, secular_det_coeffs, trace_identity_check, z_series, RationalFlux, SpectralFunctions,
};
use lattice_area::square::area_distribution_square;
use lattice_area::triangular::triangular_distribution;
use lattice_area::{Error, Result};

pub const SUITES: [&str; 8] = [
    "golden",
    "oracle-equivalence",
    "sum-rule",
    "kreft",
    "cluster",
    "trace",
    "triangular",
    "structural",
];

#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub pass: bool,
}

fn check(label: impl Into<String>, pass: bool) -> Check {
    Check {
        label: label.into(),
        pass,
    }
}

pub fn run_suite(name: &str) -> Result<Vec<Check>> {
    match name {
        "golden" => golden(),
        "oracle-equivalence" => oracle_equivalence(),
        "sum-rule" => sum_rule(),
        "kreft" => kreft(),
        "cluster" => cluster(),
        "trace" => trace(),
        "triangular" => triangular(),
        "structural" => structural(),
        other => Err(Error::InvalidParameter(format!(
            "unknown suite {other:?}; expected one of {} or all",
            SUITES.join(", ")
        ))),
    }
}

fn golden() -> Result<Vec<Check>> {
    let expected = "{-1: 4, 0: 28, 1: 4}";
    Ok(vec![
        check("n=4 formula", area_distribution_square(4)?.to_string() == expected),
        check("n=4 walk counter", brute_force_distribution_square(4)?.to_string() == expected),
        check("n=4 word expansion", word_distribution_square(4)?.to_string() == expected),
        check("n=4 dft q=7", extract_distribution_dft(4, 7)?.to_string() == expected),
    ])
}

fn oracle_equivalence() -> Result<Vec<Check>> {
    (2..=16u32)
        .step_by(2)
        .map(|n| {
            let pass = area_distribution_square(n)? == brute_force_distribution_square(n)?;
            Ok(check(format!("n={n} formula = walk counter"), pass))
        })
        .collect()
}

fn sum_rule() -> Result<Vec<Check>> {
    (2..=24u32)
        .step_by(2)
        .map(|n| {
            let d = area_distribution_square(n)?;
            let c = binomial(n as i64, n as i64 / 2);
            let pass = d.total() == &c * &c && d.is_reflection_symmetric();
            Ok(check(format!("n={n} total and symmetry"), pass))
        })
        .collect()
}

fn kreft() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for q in 2..=12u32 {
        for flux in RationalFlux::coprime_numerators(q) {
            let mut pass = true;
            for (kx, ky) in [(0.0, 0.0), (0.7, 1.3), (2.1, -0.4)] {
                let d = secular_det_coeffs(flux, kx, ky);
                for n in 0..=((q - 1) / 2) {
                    let z = kreft_z(n, flux)?;
                    let expected = if n % 2 == 0 { z } else { -z };
                    pass &= (d[2 * n as usize] - expected).norm() < 1e-9;
                }
            }
            out.push(check(format!("flux {flux} even coefficients"), pass));
        }
    }
    Ok(out)
}

fn cluster() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for q in [17u32, 19] {
        let flux = RationalFlux::new(1, q)?;
        for (g, s) in [
            (2, SpectralFunctions::hofstadter(flux).s_table()),
            (3, SpectralFunctions::triangular(flux).s_table()),
        ] {
            let z = z_series(5, &s, g)?;
            let mut pass = true;
            for n in 1..=5 {
                let a = cluster_b_logseries(n, &z)?;
                let b = cluster_b_compositions(n, &s, g)?;
                pass &= (a - b).norm() <= 1e-10 * a.norm();
            }
            out.push(check(format!("flux {flux} g={g} n<=5"), pass));
        }
    }
    Ok(out)
}

fn trace() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for q in [5u32, 7, 9, 11] {
        for flux in RationalFlux::coprime_numerators(q) {
            let mut pass = true;
            for n in 1..=((q - 1) / 2) {
                pass &= trace_identity_check(n, flux)?.gap() < 1e-9;
            }
            out.push(check(format!("flux {flux} all 2n < q"), pass));
        }
    }
    Ok(out)
}

fn triangular() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in [3u32, 6, 9, 12] {
        let d = triangular_distribution(n)?;
        let m = n as u64 / 3;
        let multinomial = factorial(n as u64) / (factorial(m) * factorial(m) * factorial(m));
        let pass = d == brute_force_distribution_triangular(n)? && d.total() == multinomial;
        out.push(check(format!("n={n} trace extraction = word expansion"), pass));
    }
    for n in (2..=12u32).step_by(2) {
        let pass = extract_distribution_dft(n, dealias_modulus(n))? == brute_force_distribution_square(n)?;
        out.push(check(format!("square n={n} dft = walk counter"), pass));
    }
    Ok(out)
}

fn structural() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for g in 2..=5u32 {
        let pass = (1..=8u32).all(|n| {
            g_compositions(n, g)
                .map(|it| it.count() as u64 == (g as u64).pow(n - 1))
                .unwrap_or(false)
        });
        out.push(check(format!("g={g} counts g^(n-1), n<=8"), pass));
    }
    let mut same = true;
    for n in 1..=10 {
        for p in compositions(n) {
            same &= coeff_c(p.parts())? == coeff_cg(p.parts(), 2)?;
        }
    }
    out.push(check("c = c_2 on compositions of n<=10", same));
    Ok(out)
}
