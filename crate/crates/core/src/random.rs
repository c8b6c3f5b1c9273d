//! Seeded random generators for polynomials and forms used by the
//! verification harnesses. All streams come from ChaCha8 and are reproducible.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{rat_int, PolyCoeff};
use crate::frame::{blades_of_degree, Form};

/// Generator state shared by every harness in the crate.
pub type TrialRng = ChaCha8Rng;

/// Independent stream for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, label: u64, index: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(label.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index);
    rng
}

/// Nonzero sparse polynomial with 1–4 distinct monomials of total degree
/// ≤ `max_degree` and integer coefficients in `[−5, 5] \ {0}`.
pub fn random_poly(n: usize, max_degree: u32, rng: &mut impl Rng) -> PolyCoeff {
    let vars = 2 * n + 1;
    let mut picked: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    let terms = rng.random_range(1..=4);
    for _ in 0..terms {
        let deg = rng.random_range(0..=max_degree);
        let mut exps = vec![0u32; vars];
        for _ in 0..deg {
            exps[rng.random_range(0..vars)] += 1;
        }
        let mut c = rng.random_range(-5i64..=4);
        if c >= 0 {
            c += 1;
        }
        picked.entry(exps).or_insert(c);
    }
    let mut p = PolyCoeff::zero(n);
    for (exps, c) in picked {
        p += &PolyCoeff::monomial(n, &exps, rat_int(c)).expect("length 2n+1");
    }
    p
}

/// Random `k`-form: each blade gets a random polynomial with probability ½,
/// and at least one blade is populated.
pub fn random_form(n: usize, k: usize, max_degree: u32, rng: &mut impl Rng) -> Form {
    let blades = blades_of_degree(2 * n + 1, k);
    let forced = rng.random_range(0..blades.len());
    let mut terms = Vec::new();
    for (i, b) in blades.into_iter().enumerate() {
        if i == forced || rng.random_bool(0.5) {
            terms.push((b, random_poly(n, max_degree, rng)));
        }
    }
    Form::from_terms(n, k, terms).expect("valid blades")
}

/// Random polynomial combination of the given constant forms.
pub fn random_combination(n: usize, k: usize, basis: &[Form], max_degree: u32, rng: &mut impl Rng) -> Form {
    let mut acc = Form::zero(n, k);
    for b in basis {
        if rng.random_bool(0.6) {
            acc = acc.add(&b.mul_poly(&random_poly(n, max_degree, rng))).expect("same shape");
        }
    }
    acc
}
