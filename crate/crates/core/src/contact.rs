//! Polynomial maps `H^n → H^n`: pushforward in the left-invariant frame,
//! pullback of forms, contactness coefficients, and the commutation harness.

use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use serde::Serialize;

use rand::Rng;

use crate::coeff::{format_rational, parse_rational, rat, PolyCoeff, Rational};
use crate::error::{check_dim, Error, Result};
use crate::frame::{frame_apply, Form};
use crate::random::trial_rng;
use crate::rumin::{
    basis_i, basis_j, d_q_high, d_q_low, d_second_order, is_in_j, project_quotient, random_class, random_j,
    CheckResult, QuotientClass,
};

/// `(2n+1)×(2n+1)` matrix of polynomials; entry `(l, j)` is `⟨θ_l | f_* W_j⟩` (0-based storage).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameMatrix {
    n: usize,
    entries: Vec<Vec<PolyCoeff>>,
}

impl FrameMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `(l, j)`, 1-based.
    pub fn get(&self, l: usize, j: usize) -> &PolyCoeff {
        &self.entries[l - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<PolyCoeff>] {
        &self.entries
    }

    pub fn identity(n: usize) -> Self {
        let dim = 2 * n + 1;
        let entries = (0..dim)
            .map(|l| (0..dim).map(|j| PolyCoeff::from_int(n, i64::from(l == j))).collect())
            .collect();
        FrameMatrix { n, entries }
    }
}

/// A map with polynomial components `f¹, …, f^{2n+1}`.
#[derive(Clone, Debug)]
pub struct SmoothMap {
    n: usize,
    components: Vec<PolyCoeff>,
    pushforward: OnceLock<FrameMatrix>,
}

impl PartialEq for SmoothMap {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.components == other.components
    }
}

impl SmoothMap {
    pub fn new(n: usize, components: Vec<PolyCoeff>) -> Result<Self> {
        if components.len() != 2 * n + 1 {
            return Err(Error::PointLength { expected: 2 * n + 1, found: components.len() });
        }
        for c in &components {
            check_dim(n, c.n())?;
        }
        Ok(SmoothMap { n, components, pushforward: OnceLock::new() })
    }

    pub fn identity(n: usize) -> Self {
        let comps = (1..=2 * n + 1).map(|i| PolyCoeff::var(n, i).unwrap()).collect();
        SmoothMap::new(n, comps).unwrap()
    }

    /// `δ_r(x, y, t) = (r x, r y, r² t)`.
    pub fn dilation(r: &Rational, n: usize) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidParameter(format!("dilation factor must be positive, got {r}")));
        }
        let dim = 2 * n + 1;
        let comps = (1..=dim)
            .map(|i| {
                let s = if i == dim { r * r } else { r.clone() };
                PolyCoeff::var(n, i).unwrap().scale(&s)
            })
            .collect();
        SmoothMap::new(n, comps)
    }

    /// `τ_q(p) = q * p`, with `t`-component `t_q + t + ½ Σ (x_{q,j} y_j − y_{q,j} x_j)`.
    pub fn left_translation(q: &[Rational], n: usize) -> Result<Self> {
        let dim = 2 * n + 1;
        if q.len() != dim {
            return Err(Error::PointLength { expected: dim, found: q.len() });
        }
        let mut comps: Vec<PolyCoeff> = (1..=dim)
            .map(|i| PolyCoeff::var(n, i).unwrap() + PolyCoeff::constant(n, q[i - 1].clone()))
            .collect();
        let half = rat(1, 2);
        for j in 1..=n {
            let twist = PolyCoeff::var(n, n + j).unwrap().scale(&(&q[j - 1] * &half))
                - PolyCoeff::var(n, j).unwrap().scale(&(&q[n + j - 1] * &half));
            comps[dim - 1] += &twist;
        }
        SmoothMap::new(n, comps)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SmoothMap) -> Result<SmoothMap> {
        check_dim(self.n, inner.n)?;
        let comps = self.components.iter().map(|c| c.compose(&inner.components)).collect::<Result<_>>()?;
        SmoothMap::new(self.n, comps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[PolyCoeff] {
        &self.components
    }

    /// Parses `dilation:r=2`, `translate:q=1/2,0,3`, `compose:<m1>;<m2>;…`
    /// (meaning `m1 ∘ m2 ∘ …`) or `poly:[w1, w2, 2*w3]`.
    ///
    /// For `n > 1` a translation vector with three entries is read as
    /// `(x1, y1, t)` with all other coordinates zero.
    pub fn parse(n: usize, src: &str) -> Result<SmoothMap> {
        let src = src.trim();
        let (kind, rest) = src
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("map literal `{src}` lacks a `kind:` prefix")))?;
        match kind.trim() {
            "dilation" => {
                let r = rest
                    .trim()
                    .strip_prefix("r=")
                    .ok_or_else(|| Error::Parse("expected `dilation:r=<rational>`".into()))?;
                SmoothMap::dilation(&parse_rational(r)?, n)
            }
            "translate" => {
                let q = rest
                    .trim()
                    .strip_prefix("q=")
                    .ok_or_else(|| Error::Parse("expected `translate:q=<list>`".into()))?;
                let vals = q.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
                let dim = 2 * n + 1;
                let full = if vals.len() == dim {
                    vals
                } else if vals.len() == 3 && n > 1 {
                    let mut v = vec![Rational::zero(); dim];
                    v[0] = vals[0].clone();
                    v[n] = vals[1].clone();
                    v[dim - 1] = vals[2].clone();
                    v
                } else {
                    return Err(Error::PointLength { expected: dim, found: vals.len() });
                };
                SmoothMap::left_translation(&full, n)
            }
            "compose" => {
                let mut parts = rest.split(';').map(|p| SmoothMap::parse(n, p));
                let mut acc = parts.next().ok_or_else(|| Error::Parse("empty composition".into()))??;
                for p in parts {
                    acc = acc.compose(&p?)?;
                }
                Ok(acc)
            }
            "poly" => {
                let body = rest
                    .trim()
                    .strip_prefix('[')
                    .and_then(|b| b.strip_suffix(']'))
                    .ok_or_else(|| Error::Parse("expected `poly:[c1, c2, …]`".into()))?;
                let comps = body.split(',').map(|c| PolyCoeff::parse(n, c)).collect::<Result<Vec<_>>>()?;
                SmoothMap::new(n, comps)
            }
            other => Err(Error::Parse(format!("unknown map kind `{other}`"))),
        }
    }

    fn check_index(&self, j: usize, max: usize) -> Result<()> {
        if j == 0 || j > max {
            return Err(Error::IndexOutOfRange { index: j, max });
        }
        Ok(())
    }

    /// `A(j,f) = W_j f^{2n+1} + ½ Σ_{l≤2n} w̃_l(f) W_j f^l`, the θ-component of `f_* W_j`.
    pub fn a_coefficient(&self, j: usize) -> Result<PolyCoeff> {
        let n = self.n;
        self.check_index(j, 2 * n + 1)?;
        let f = &self.components;
        let mut acc = frame_apply(j, &f[2 * n])?;
        let half = rat(1, 2);
        for l in 1..=n {
            // w̃_l(f) = f^{n+l}, w̃_{n+l}(f) = −f^l
            acc += &(&f[n + l - 1] * &frame_apply(j, &f[l - 1])?).scale(&half);
            acc -= &(&f[l - 1] * &frame_apply(j, &f[n + l - 1])?).scale(&half);
        }
        Ok(acc)
    }

    /// `λ(j,f) = Σ_l (W_j f^l W_{n+j} f^{n+l} − W_{n+j} f^l W_j f^{n+l})`.
    pub fn lambda_coefficient(&self, j: usize) -> Result<PolyCoeff> {
        let n = self.n;
        self.check_index(j, n)?;
        let f = &self.components;
        let mut acc = PolyCoeff::zero(n);
        for l in 1..=n {
            acc += &(frame_apply(j, &f[l - 1])? * frame_apply(n + j, &f[n + l - 1])?);
            acc -= &(frame_apply(n + j, &f[l - 1])? * frame_apply(j, &f[n + l - 1])?);
        }
        Ok(acc)
    }

    /// The first horizontal index with `A(j,f) ≠ 0`, with that coefficient.
    pub fn contact_obstruction(&self) -> Option<(usize, PolyCoeff)> {
        (1..=2 * self.n)
            .map(|j| (j, self.a_coefficient(j).expect("valid index")))
            .find(|(_, a)| !a.is_zero())
    }

    pub fn is_contact(&self) -> bool {
        self.contact_obstruction().is_none()
    }

    fn require_contact(&self) -> Result<()> {
        match self.contact_obstruction() {
            None => Ok(()),
            Some((index, a)) => Err(Error::NotContact { index, coefficient: a.to_string() }),
        }
    }

    /// Columns are `f_* W_j = Σ_{l≤2n} W_j f^l W_l + A(j,f) T`.
    pub fn pushforward(&self) -> &FrameMatrix {
        self.pushforward.get_or_init(|| {
            let n = self.n;
            let dim = 2 * n + 1;
            let mut entries = vec![vec![PolyCoeff::zero(n); dim]; dim];
            for j in 1..=dim {
                for l in 1..=2 * n {
                    entries[l - 1][j - 1] = frame_apply(j, &self.components[l - 1]).expect("valid index");
                }
                entries[dim - 1][j - 1] = self.a_coefficient(j).expect("valid index");
            }
            FrameMatrix { n, entries }
        })
    }

    /// `g ∘ f`.
    pub fn pullback_function(&self, g: &PolyCoeff) -> Result<PolyCoeff> {
        check_dim(self.n, g.n())?;
        g.compose(&self.components)
    }

    /// `f*θ_l = Σ_j M[l][j] θ_j`: row `l` of the pushforward matrix.
    fn pulled_coframe(&self) -> Vec<Form> {
        let n = self.n;
        let m = self.pushforward();
        (1..=2 * n + 1)
            .map(|l| {
                let terms = (1..=2 * n + 1).map(|j| {
                    (crate::frame::Blade::single(j), m.get(l, j).clone())
                });
                Form::from_terms(n, 1, terms).expect("valid blades")
            })
            .collect()
    }

    /// Pullback of a form: coefficients composed with `f`, generators pulled
    /// back by the transpose of the pushforward matrix, extended multiplicatively.
    pub fn pullback_form(&self, alpha: &Form) -> Result<Form> {
        check_dim(self.n, alpha.n())?;
        let n = self.n;
        let k = alpha.degree();
        if alpha.is_zero() {
            return Ok(Form::zero(n, k));
        }
        let gens = self.pulled_coframe();
        let mut out = Form::zero(n, k);
        for (b, c) in alpha.terms() {
            let mut piece = Form::function(c.compose(&self.components)?);
            if piece.is_zero() {
                continue;
            }
            for i in b.indices() {
                piece = piece.wedge(&gens[i - 1])?;
                if piece.is_zero() {
                    break;
                }
            }
            out = out.add(&piece)?;
        }
        Ok(out)
    }

    /// `[f*α]` for a contact map; well defined since `f*(I^k) ⊆ I^k`.
    pub fn pullback_quotient(&self, c: &QuotientClass) -> Result<QuotientClass> {
        self.require_contact()?;
        let c = c.to_mod_i();
        project_quotient(&self.pullback_form(c.representative())?, c.degree(), c.n())
    }

    /// `f*α` for `α ∈ J^k` and a contact map; the result lies in `J^k`.
    pub fn pullback_j(&self, alpha: &Form) -> Result<Form> {
        self.require_contact()?;
        if !is_in_j(alpha) {
            return Err(Error::NotInSubspace(format!("J^{}", alpha.degree())));
        }
        let out = self.pullback_form(alpha)?;
        postcondition!(is_in_j(&out));
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CommuteReport {
    pub n: usize,
    pub degree: usize,
    pub trials: usize,
    pub seed: u64,
    pub check: CheckResult,
}

/// Compares `f* ∘ op` with `op ∘ f*` on random inputs of degree `k`, where `op`
/// is `d_Q` for `k ≠ n` and `D` for `k = n`.
pub fn commute_check(f: &SmoothMap, k: usize, trials: usize, seed: u64, max_degree: u32) -> Result<CommuteReport> {
    f.require_contact()?;
    let n = f.n();
    if k > 2 * n {
        return Err(Error::DegreeOutOfRange { degree: k, min: 0, max: 2 * n });
    }
    let label = 600 + k as u64;
    let name = match k.cmp(&n) {
        std::cmp::Ordering::Less => format!("f*dQ = dQ f* k={k}"),
        std::cmp::Ordering::Equal => format!("f*D = D f* k={k}"),
        std::cmp::Ordering::Greater => format!("f*dQ = dQ f* k={k}"),
    };
    let check = CheckResult::run(name, trials, |t| {
        let mut rng = trial_rng(seed, label, t as u64);
        let input = if k <= n {
            random_class(n, k, max_degree, &mut rng).representative().clone()
        } else {
            random_j(n, k, max_degree, &mut rng)
        };
        let run = || -> Result<(Form, Form)> {
            Ok(if k < n {
                let c = project_quotient(&input, k, n)?;
                let lhs = f.pullback_quotient(&d_q_low(&c)?)?;
                let rhs = d_q_low(&f.pullback_quotient(&c)?)?;
                (lhs.representative().clone(), rhs.representative().clone())
            } else if k == n {
                let c = project_quotient(&input, k, n)?;
                (f.pullback_j(&d_second_order(&c)?)?, d_second_order(&f.pullback_quotient(&c)?)?)
            } else {
                (f.pullback_j(&d_q_high(&input, k)?)?, d_q_high(&f.pullback_j(&input)?, k)?)
            })
        };
        match run() {
            Ok((lhs, rhs)) => (lhs != rhs).then(|| {
                serde_json::json!({
                    "input": input.to_json(),
                    "pullback_then_op": rhs.to_json(),
                    "op_then_pullback": lhs.to_json(),
                })
            }),
            Err(e) => Some(serde_json::json!({ "input": input.to_json(), "error": e.to_string() })),
        }
    });
    Ok(CommuteReport { n, degree: k, trials, seed, check })
}

/// The contact maps exercised by the suites: `δ₂`, `δ_{1/3}`, three left
/// translations drawn from `seed`, and `δ₂ ∘ τ` for the first translation.
/// Each comes with a literal that [`SmoothMap::parse`] maps back to it.
pub fn built_in_maps(n: usize, seed: u64) -> Result<Vec<(String, SmoothMap)>> {
    let mut out = Vec::new();
    for r in ["2", "1/3"] {
        let lit = format!("dilation:r={r}");
        out.push((lit.clone(), SmoothMap::parse(n, &lit)?));
    }
    for t in 0..3 {
        let mut rng = trial_rng(seed, 700, t);
        let q: Vec<String> = (0..2 * n + 1)
            .map(|_| format_rational(&rat(rng.random_range(-4..=4), rng.random_range(1..=3))))
            .collect();
        let lit = format!("translate:q={}", q.join(","));
        out.push((lit.clone(), SmoothMap::parse(n, &lit)?));
    }
    let lit = format!("compose:dilation:r=2;{}", out[2].0);
    out.push((lit.clone(), SmoothMap::parse(n, &lit)?));
    Ok(out)
}

/// Checks `f*(I^k) ⊆ I^k` and `f*(J^k) ⊆ J^k` on the constant bases for every valid `k`.
pub fn subspace_preservation(f: &SmoothMap) -> Result<Vec<CheckResult>> {
    f.require_contact()?;
    let n = f.n();
    let mut out = Vec::new();
    for k in 1..=n {
        let basis = basis_i(k, n)?;
        let bad = basis
            .elements()
            .iter()
            .map(|e| basis.residual(&f.pullback_form(e)?))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .find(|r| !r.is_zero());
        out.push(CheckResult::single(format!("f*(I^{k}) in I^{k}"), bad.is_none(), bad.map(|r| r.to_json())));
    }
    for k in n + 1..=2 * n + 1 {
        let basis = basis_j(k, n)?;
        let bad = basis
            .elements()
            .iter()
            .map(|e| basis.residual(&f.pullback_form(e)?))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .find(|r| !r.is_zero());
        out.push(CheckResult::single(format!("f*(J^{k}) in J^{k}"), bad.is_none(), bad.map(|r| r.to_json())));
    }
    Ok(out)
}

/// Checks that `λ(j,f) − λ(1,f) ≡ 0` for all `j`.
pub fn lambda_is_j_independent(f: &SmoothMap) -> bool {
    let l1 = f.lambda_coefficient(1).expect("n >= 1");
    (2..=f.n()).all(|j| f.lambda_coefficient(j).expect("valid index") == l1)
}
