//! Regression fixtures: published example curves with their expected
//! bad-prime data, conductors and root numbers.

use hecl_core::IntPoly;
use num_bigint::{BigInt, BigUint};

use crate::error::Result;
use crate::io::{parse_curve, CurveInput};
use crate::pipeline::{bad_prime_stage, factored, BadPrimeSummary, Source};

pub struct ExpectedPrime {
    pub p: u64,
    /// Inverse local factor as a product of ascending integer polynomials.
    pub factors: &'static [&'static [i64]],
    pub f_p: usize,
    pub source: Source,
}

pub struct Fixture {
    pub name: &'static str,
    pub file: &'static str,
    pub json: &'static str,
    pub bad: &'static [ExpectedPrime],
    /// `p^e` pairs.
    pub conductor: &'static [(u64, u32)],
    pub root_number: i8,
}

const fn computed(p: u64, factors: &'static [&'static [i64]], f_p: usize) -> ExpectedPrime {
    ExpectedPrime {
        p,
        factors,
        f_p,
        source: Source::Computed,
    }
}

const fn supplied(p: u64, factors: &'static [&'static [i64]], f_p: usize) -> ExpectedPrime {
    ExpectedPrime {
        p,
        factors,
        f_p,
        source: Source::Override,
    }
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "genus 2, N = 2^2*3*7*101*163",
        file: "ex1.json",
        json: include_str!("../fixtures/ex1.json"),
        bad: &[
            computed(2, &[&[1, 0, 1]], 2),
            computed(3, &[&[1, 1], &[1, -1, 3]], 1),
            computed(7, &[&[1, -1], &[1, 3, 7]], 1),
            computed(101, &[&[1, 1], &[1, 3, 101]], 1),
            computed(163, &[&[1, -1], &[1, 11, 163]], 1),
        ],
        conductor: &[(2, 2), (3, 1), (7, 1), (101, 1), (163, 1)],
        root_number: 1,
    },
    Fixture {
        name: "genus 3, N = 2^2*3^3*11^2*37",
        file: "ex2.json",
        json: include_str!("../fixtures/ex2.json"),
        bad: &[
            computed(2, &[&[1, -1], &[1, 1], &[1, -1, 2]], 2),
            computed(3, &[&[1, 1], &[1, 0, -1]], 3),
            computed(11, &[&[1, 1], &[1, 1], &[1, -4, 11]], 2),
            computed(37, &[&[1, -1], &[1, 4, 14, 148, 1369]], 1),
        ],
        conductor: &[(2, 2), (3, 3), (11, 2), (37, 1)],
        root_number: 1,
    },
    Fixture {
        name: "genus 4, N = 3^2*7^3*31*53",
        file: "ex3.json",
        json: include_str!("../fixtures/ex3.json"),
        bad: &[
            computed(3, &[&[1, -1], &[1, 1], &[1, 2, 4, 6, 9]], 2),
            computed(7, &[&[1, 0, 0, 1], &[1, 3, 7]], 3),
            computed(31, &[&[1, -1], &[1, 0, 51, 36, 1581, 0, 29791]], 1),
            computed(53, &[&[1, 1], &[1, 3, 29, 670, 1537, 8427, 148877]], 1),
        ],
        conductor: &[(3, 2), (7, 3), (31, 1), (53, 1)],
        root_number: 1,
    },
    Fixture {
        name: "genus 3, override at 5",
        file: "sec61.json",
        json: include_str!("../fixtures/sec61.json"),
        bad: &[
            computed(3, &[&[1, -1], &[1, 1, 0, 3, 9]], 1),
            supplied(5, &[&[1, 1], &[1, 3, 5]], 3),
            computed(13, &[&[1, 0, 1], &[1, 5, 13]], 2),
            computed(97, &[&[1, 1], &[1, 6, 78, 582, 9409]], 1),
        ],
        conductor: &[(3, 1), (5, 3), (13, 2), (97, 1)],
        root_number: -1,
    },
    Fixture {
        name: "genus 4, override at 2",
        file: "sec62.json",
        json: include_str!("../fixtures/sec62.json"),
        bad: &[
            supplied(2, &[&[1, 1, 2]], 16),
            // known through T^2 at this cutoff
            computed(317, &[&[1, 1], &[1, -32, 991]], 1),
        ],
        conductor: &[(2, 16), (317, 1)],
        root_number: -1,
    },
    Fixture {
        name: "y^3 = x^4 - x^2 + 1, overrides at 2 and 3",
        file: "sec63.json",
        json: include_str!("../fixtures/sec63.json"),
        bad: &[supplied(2, &[&[1, 0, 2]], 8), supplied(3, &[&[1]], 12)],
        conductor: &[(2, 8), (3, 12)],
        root_number: 1,
    },
];

impl ExpectedPrime {
    pub fn factor(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .fold(IntPoly::one(), |acc, f| acc.mul(&IntPoly::from_i64(f)))
            .coeffs()
            .to_vec()
    }

    /// Coefficient agreement up to the degree the summary knows.
    pub fn matches(&self, s: &BadPrimeSummary) -> bool {
        let want = self.factor();
        let got = &s.factor_inv;
        let coeffs_ok = match s.truncated_at {
            None => *got == want,
            Some(k) => {
                let k = k.min(want.len() - 1);
                got.len() > k && got[..=k] == want[..=k]
            }
        };
        s.p == BigUint::from(self.p) && s.f_p == self.f_p && s.source == self.source && coeffs_ok
    }
}

impl Fixture {
    pub fn input(&self) -> CurveInput {
        parse_curve(self.json, self.file).expect("fixture parses")
    }

    pub fn conductor(&self) -> BigUint {
        self.conductor
            .iter()
            .map(|&(p, e)| BigUint::from(p).pow(e))
            .product()
    }

    /// Mismatches between the bad-prime stage and the expected data; empty
    /// when everything agrees.
    pub fn check_bad_primes(&self) -> Result<Vec<String>> {
        let stage = bad_prime_stage(&self.input())?;
        let mut problems = Vec::new();
        let primes: Vec<u64> = self.bad.iter().map(|e| e.p).collect();
        let got: Vec<String> = stage.summaries.iter().map(|s| s.p.to_string()).collect();
        if got != primes.iter().map(u64::to_string).collect::<Vec<_>>() {
            problems.push(format!("bad primes {got:?}, expected {primes:?}"));
        }
        for e in self.bad {
            match stage.summaries.iter().find(|s| s.p == BigUint::from(e.p)) {
                Some(s) if e.matches(s) => {}
                Some(s) => problems.push(format!(
                    "p={}: factor {:?} (known to {:?}), f_p={}, expected {:?}, f_p={}",
                    e.p,
                    s.factor_inv.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    s.truncated_at,
                    s.f_p,
                    e.factor().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    e.f_p
                )),
                None => problems.push(format!("p={} missing", e.p)),
            }
        }
        if stage.conductor != self.conductor() {
            problems.push(format!(
                "N = {} = {}, expected {}",
                stage.conductor,
                factored(&stage.summaries),
                self.conductor()
            ));
        }
        Ok(problems)
    }
}

pub fn by_file(file: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.file == file)
}
