//! Printed closed forms of the explicit complexes in H¹ and H², used as
//! oracles. Each printed coefficient is an operator acting on one input slot;
//! comparisons are made slot by slot so that disagreements can be itemised.

#![allow(dead_code)]

use std::collections::BTreeSet;

use heiscalc_core::frame::frame_apply;
use heiscalc_core::random::{random_poly, trial_rng};
use heiscalc_core::rumin::{d_q_high, d_q_low, d_second_order, project_quotient};
use heiscalc_core::{rat, Form, PolyCoeff};

/// A word in the frame fields applied right to left (`[1, 3]` is `X₁Y₁` for n = 2),
/// with an integer or half-integer weight.
#[derive(Clone, Copy)]
pub struct Word {
    pub num: i64,
    pub den: i64,
    pub fields: &'static [usize],
}

const fn w(num: i64, fields: &'static [usize]) -> Word {
    Word { num, den: 1, fields }
}

const fn half(num: i64, fields: &'static [usize]) -> Word {
    Word { num, den: 2, fields }
}

pub fn apply_words(words: &[Word], f: &PolyCoeff) -> PolyCoeff {
    let mut acc = PolyCoeff::zero(f.n());
    for word in words {
        let mut g = f.clone();
        for &i in word.fields.iter().rev() {
            g = frame_apply(i, &g).unwrap();
        }
        acc += &g.scale(&rat(word.num, word.den));
    }
    acc
}

/// A basis element written as signed blades.
pub type Element = &'static [(i64, &'static [usize])];

pub fn element(n: usize, e: Element, c: &PolyCoeff) -> Form {
    let mut acc = Form::zero(n, e[0].1.len());
    for (sign, idx) in e {
        acc = acc.add(&Form::basis(n, idx, c.scale(&rat(*sign, 1))).unwrap()).unwrap();
    }
    acc
}

/// Coordinate of `f` along a basis element, read off its first blade.
pub fn coordinate(f: &Form, e: Element) -> PolyCoeff {
    let (sign, idx) = e[0];
    let b = heiscalc_core::Blade::from_indices(idx).unwrap();
    f.coeff(b).scale(&rat(sign, 1))
}

/// `table[c][s]`: words giving output coordinate `c` from input slot `s`.
pub struct Printed {
    pub name: &'static str,
    pub n: usize,
    pub inputs: &'static [Element],
    pub outputs: &'static [Element],
    pub table: &'static [&'static [&'static [Word]]],
}

// n = 1: X = 1, Y = 2, T = 3
const H1_Q1: &[Element] = &[&[(1, &[1])], &[(1, &[2])]];
const H1_J2: &[Element] = &[&[(1, &[1, 3])], &[(1, &[2, 3])]];
const H1_J3: &[Element] = &[&[(1, &[1, 2, 3])]];

pub const H1_D: Printed = Printed {
    name: "D",
    n: 1,
    inputs: H1_Q1,
    outputs: H1_J2,
    table: &[
        &[&[w(-1, &[1, 2]), w(-1, &[3])], &[w(1, &[1, 1])]],
        &[&[w(-1, &[2, 2])], &[w(1, &[2, 1]), w(-1, &[3])]],
    ],
};

pub const H1_DQ3: Printed = Printed {
    name: "dQ3",
    n: 1,
    inputs: H1_J2,
    outputs: H1_J3,
    table: &[&[&[w(-1, &[2])], &[w(1, &[1])]]],
};

// n = 2: X₁ = 1, X₂ = 2, Y₁ = 3, Y₂ = 4, T = 5
const H2_Q1: &[Element] = &[&[(1, &[1])], &[(1, &[2])], &[(1, &[3])], &[(1, &[4])]];
const H2_Q2: &[Element] = &[
    &[(1, &[1, 2])],
    &[(1, &[1, 4])],
    &[(1, &[2, 3])],
    &[(1, &[3, 4])],
    &[(1, &[1, 3]), (-1, &[2, 4])],
];
const H2_J3: &[Element] = &[
    &[(1, &[1, 2, 5])],
    &[(1, &[1, 4, 5])],
    &[(1, &[2, 3, 5])],
    &[(1, &[3, 4, 5])],
    &[(1, &[1, 3, 5]), (-1, &[2, 4, 5])],
];
const H2_J4: &[Element] = &[
    &[(1, &[1, 2, 3, 5])],
    &[(1, &[1, 2, 4, 5])],
    &[(1, &[1, 3, 4, 5])],
    &[(1, &[2, 3, 4, 5])],
];
const H2_J5: &[Element] = &[&[(1, &[1, 2, 3, 4, 5])]];

/// Output order: dx₁dx₂, dx₁dy₂, dx₂dy₁, dy₁dy₂, (dx₁dy₁ − dx₂dy₂); inputs α₁..α₄.
pub const H2_DQ2: Printed = Printed {
    name: "dQ2",
    n: 2,
    inputs: H2_Q1,
    outputs: H2_Q2,
    table: &[
        &[&[w(-1, &[2])], &[w(1, &[1])], &[], &[]],
        &[&[w(-1, &[4])], &[], &[], &[w(1, &[1])]],
        &[&[], &[w(-1, &[3])], &[w(1, &[2])], &[]],
        &[&[], &[], &[w(-1, &[4])], &[w(1, &[3])]],
        &[&[half(-1, &[3])], &[half(1, &[4])], &[half(1, &[1])], &[half(-1, &[2])]],
    ],
};

/// Inputs α₁, α₃, α₄, α₆, β; the printed `(X₂Y₂α₃ − X₁Y₁)α₃` is read as `(X₂Y₂ − X₁Y₁)α₃`.
pub const H2_D: Printed = Printed {
    name: "D",
    n: 2,
    inputs: H2_Q2,
    outputs: H2_J3,
    table: &[
        &[&[w(-1, &[1, 3]), w(-1, &[4, 2])], &[w(1, &[2, 2])], &[w(-1, &[1, 1])], &[], &[w(2, &[1, 2])]],
        &[&[w(-1, &[4, 4])], &[w(1, &[2, 4]), w(-1, &[1, 3])], &[], &[w(1, &[1, 1])], &[w(2, &[1, 4])]],
        &[&[w(1, &[3, 3])], &[], &[w(1, &[3, 1]), w(-1, &[4, 2])], &[w(-1, &[2, 2])], &[w(-2, &[2, 3])]],
        &[&[], &[w(-1, &[3, 3])], &[w(1, &[4, 4])], &[w(1, &[3, 1]), w(1, &[2, 4])], &[w(2, &[3, 4])]],
        &[&[w(-1, &[3, 4])], &[w(1, &[3, 2])], &[w(-1, &[1, 4])], &[w(-1, &[1, 2])], &[]],
    ],
};

pub const H2_DQ3: Printed = Printed {
    name: "dQ3",
    n: 2,
    inputs: H2_J3,
    outputs: H2_J4,
    table: &[
        &[&[w(1, &[3])], &[], &[w(1, &[1])], &[], &[w(-1, &[2])]],
        &[&[w(1, &[4])], &[w(-1, &[2])], &[], &[], &[w(-1, &[1])]],
        &[&[], &[w(-1, &[3])], &[], &[w(1, &[1])], &[w(1, &[4])]],
        &[&[], &[], &[w(1, &[4])], &[w(1, &[2])], &[w(1, &[3])]],
    ],
};

pub const H2_DQ4: Printed = Printed {
    name: "dQ4",
    n: 2,
    inputs: H2_J4,
    outputs: H2_J5,
    table: &[&[&[w(-1, &[4])], &[w(1, &[3])], &[w(-1, &[2])], &[w(1, &[1])]]],
};

/// Applies the module's operator for the printed map to one input slot.
pub fn module_apply(p: &Printed, slot: usize, a: &PolyCoeff) -> Form {
    let n = p.n;
    let input = element(n, p.inputs[slot], a);
    let k = input.degree();
    if k < n {
        let c = project_quotient(&input, k, n).unwrap();
        d_q_low(&c).unwrap().representative().clone()
    } else if k == n {
        d_second_order(&project_quotient(&input, k, n).unwrap()).unwrap()
    } else {
        d_q_high(&input, k).unwrap()
    }
}

/// Output coordinate of a class representative along a printed element.
///
/// For the quotient `Ω²/I²` in H², the orthogonal representative of
/// `c(dx₁dy₁ − dx₂dy₂)` has coefficient `c` on `dx₁dy₁`, so the scale map is the identity.
pub fn read_output(f: &Form, e: Element) -> PolyCoeff {
    coordinate(f, e)
}

/// Every `(output, slot)` pair whose printed coefficient differs from the module
/// on some of `trials` random polynomials.
pub fn mismatches(p: &Printed, trials: usize, seed: u64) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for t in 0..trials {
        let mut rng = trial_rng(seed, 900, t as u64);
        for slot in 0..p.inputs.len() {
            let a = random_poly(p.n, 3, &mut rng);
            let got = module_apply(p, slot, &a);
            for (c, e) in p.outputs.iter().enumerate() {
                if read_output(&got, e) != apply_words(p.table[c][slot], &a) {
                    out.insert((c, slot));
                }
            }
            // the module's output must lie in the span of the printed outputs
            let mut rebuilt = Form::zero(p.n, got.degree());
            for e in p.outputs {
                rebuilt = rebuilt.add(&element(p.n, e, &read_output(&got, e))).unwrap();
            }
            if rebuilt != got {
                out.insert((usize::MAX, slot));
            }
        }
    }
    out
}

/// `d_Q^{(1)} f = [X f dx + Y f dy]` (n = 1) or the four-term analogue (n = 2).
pub fn dq1_agrees(n: usize, f: &PolyCoeff) -> bool {
    let c = project_quotient(&Form::function(f.clone()), 0, n).unwrap();
    let got = d_q_low(&c).unwrap();
    let mut expected = Form::zero(n, 1);
    for i in 1..=2 * n {
        expected = expected.add(&Form::basis(n, &[i], frame_apply(i, f).unwrap()).unwrap()).unwrap();
    }
    got.representative() == &expected
}

/// Entries where the module disagrees with `−printed + 2T` on the diagonal and
/// `−printed` elsewhere; this relation accounts for every mismatch in the printed H² `D`.
pub fn normalised_mismatches(p: &Printed, trials: usize, seed: u64) -> BTreeSet<(usize, usize)> {
    let t = 2 * p.n + 1;
    let mut out = BTreeSet::new();
    for trial in 0..trials {
        let mut rng = trial_rng(seed, 901, trial as u64);
        for slot in 0..p.inputs.len() {
            let a = random_poly(p.n, 3, &mut rng);
            let got = module_apply(p, slot, &a);
            for (c, e) in p.outputs.iter().enumerate() {
                let mut expected = -apply_words(p.table[c][slot], &a);
                if c == slot {
                    expected += &frame_apply(t, &a).unwrap().scale(&rat(2, 1));
                }
                if read_output(&got, e) != expected {
                    out.insert((c, slot));
                }
            }
        }
    }
    out
}

/// `(output, slot)` entries of the printed H² `D` that disagree with `d(α̃)`:
/// every nonzero printed entry, plus the (β → (dx₁dy₁ − dx₂dy₂)θ) entry printed as 0
/// which equals 2Tβ. Outputs: dx₁dx₂θ, dx₁dy₂θ, dx₂dy₁θ, dy₁dy₂θ, (dx₁dy₁ − dx₂dy₂)θ;
/// slots: α₁, α₃, α₄, α₆, β.
pub const H2_D_TYPO_LEDGER: &[(usize, usize)] = &[
    (0, 0), (0, 1), (0, 2), (0, 4),
    (1, 0), (1, 1), (1, 3), (1, 4),
    (2, 0), (2, 2), (2, 3), (2, 4),
    (3, 1), (3, 2), (3, 3), (3, 4),
    (4, 0), (4, 1), (4, 2), (4, 3), (4, 4),
];

/// Applies a printed operator to a form written in its input basis.
pub fn apply_printed(p: &Printed, input: &Form) -> Form {
    let out_degree = p.outputs[0][0].1.len();
    let mut out = Form::zero(p.n, out_degree);
    for (slot, e) in p.inputs.iter().enumerate() {
        let a = coordinate(input, e);
        if a.is_zero() {
            continue;
        }
        for (c, o) in p.outputs.iter().enumerate() {
            out = out.add(&element(p.n, o, &apply_words(p.table[c][slot], &a))).unwrap();
        }
    }
    out
}

/// Whether the printed H² `D` composed after the module's `d_Q` fails to vanish
/// on some of `trials` random 1-forms.
pub fn printed_d_breaks_exactness(trials: usize, seed: u64) -> bool {
    (0..trials).any(|t| {
        let a = heiscalc_core::random::random_form(2, 1, 3, &mut trial_rng(seed, 902, t as u64));
        let c = project_quotient(&a, 1, 2).unwrap();
        let mid = d_q_low(&c).unwrap();
        !apply_printed(&H2_D, mid.representative()).is_zero()
    })
}
