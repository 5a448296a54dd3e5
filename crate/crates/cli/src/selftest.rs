//! Fixture regression suite behind `hecl selftest`.

use hecl_fe::Verdict;

use crate::fixtures::{Fixture, FIXTURES};
use crate::pipeline::{run, RunOptions};

pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn bad_prime_outcome(f: &Fixture) -> Outcome {
    let (passed, detail) = match f.check_bad_primes() {
        Ok(p) if p.is_empty() => (true, format!("N = {}", f.conductor())),
        Ok(p) => (false, p.join("; ")),
        Err(e) => (false, e.to_string()),
    };
    Outcome {
        name: format!("{} ({}): bad primes", f.name, f.file),
        passed,
        detail,
    }
}

fn fe_outcome(f: &Fixture, options: &RunOptions) -> Outcome {
    let (passed, detail) = match run(&f.input(), options) {
        Ok(r) => {
            let ok = r.fe.verdict == Verdict::Verified && r.fe.root_number == Some(f.root_number);
            let detail = format!(
                "{:?}, w = {:?}, residuals +1: {:.2e}, -1: {:.2e}, M = {}, {:.1}s",
                r.fe.verdict,
                r.fe.root_number,
                r.fe.residual(1).unwrap_or(f64::NAN),
                r.fe.residual(-1).unwrap_or(f64::NAN),
                r.cutoff,
                r.timings.total
            );
            (ok, detail)
        }
        Err(e) => (false, e.to_string()),
    };
    Outcome {
        name: format!("{} ({}): root number {:+}", f.name, f.file, f.root_number),
        passed,
        detail,
    }
}

/// Bad-prime data for every fixture; with `full`, also the functional
/// equation of every fixture, otherwise only of the first.
pub fn selftest(full: bool, options: &RunOptions) -> Vec<Outcome> {
    let mut out: Vec<Outcome> = FIXTURES.iter().map(bad_prime_outcome).collect();
    let fe: &[Fixture] = if full { FIXTURES } else { &FIXTURES[..1] };
    out.extend(fe.iter().map(|f| fe_outcome(f, options)));
    out
}
