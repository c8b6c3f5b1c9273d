//! The Rumin complex of `H^n`.
//!
//! ```text
//! Ω⁰ →d_Q→ Ω¹/I¹ → … → Ωⁿ/Iⁿ →D→ J^{n+1} →d_Q→ … → J^{2n+1}
//! ```
//!
//! `I^k` is spanned by `α∧θ + β∧dθ`, `J^k` is the joint kernel of `∧θ` and
//! `∧dθ`. Quotient classes are represented by the orthogonal complement of
//! `I^k` under the blade-orthonormal inner product. All linear algebra is exact.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::binomial;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::{PolyCoeff, Rational};
use crate::error::{check_dim, Error, Result};
use crate::frame::{blades_of_degree, Form};
use crate::linalg::Matrix;
use crate::random::{random_combination, random_form, trial_rng};

/// Closed-form dimensions at degree `k` of `H^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub dim_omega: u64,
    pub dim_i: u64,
    pub dim_quotient: u64,
    pub dim_j_dual: u64,
}

/// `C(a, b)`, zero outside `0 <= b <= a`.
pub fn binom(a: i64, b: i64) -> u64 {
    if b < 0 || a < 0 || b > a {
        0
    } else {
        binomial(a as u64, b as u64)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    Ok(())
}

pub fn dims(k: usize, n: usize) -> Result<Dims> {
    check_n(n)?;
    if k == 0 || k > n {
        return Err(Error::DegreeOutOfRange { degree: k, min: 1, max: n });
    }
    let (k, n2) = (k as i64, 2 * n as i64);
    let dim_omega = binom(n2 + 1, k);
    let dim_i = binom(n2 + 1, k - 1);
    let dim_quotient = dim_omega * (n2 + 2 - 2 * k) as u64 / (n2 + 2 - k) as u64;
    // dim J^{2n+1-k}, counted independently as primitive horizontal k-forms
    let dim_j_dual = binom(n2, k) - binom(n2, k - 2);
    Ok(Dims { dim_omega, dim_i, dim_quotient, dim_j_dual })
}

/// `C(2n,k−1) + C(2n+1,k−2) − C(2n,k−3) = C(2n+1,k−1)`.
pub fn binomial_identity_holds(k: usize, n: usize) -> bool {
    let (k, n2) = (k as i64, 2 * n as i64);
    binom(n2, k - 1) + binom(n2 + 1, k - 2) == binom(n2 + 1, k - 1) + binom(n2, k - 3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SubspaceKind {
    I,
    J,
    QuotientComplement,
    E0,
}

/// A row-reduced basis of constant forms spanning a subspace of `Ω^k`.
#[derive(Debug)]
pub struct SubspaceBasis {
    n: usize,
    degree: usize,
    kind: SubspaceKind,
    elements: Vec<Form>,
    matrix: Matrix,
    projector: OnceLock<Matrix>,
}

impl SubspaceBasis {
    fn from_rows(n: usize, degree: usize, kind: SubspaceKind, rows: Matrix) -> Self {
        let matrix = rows.row_space_basis();
        let elements = matrix
            .row_vectors()
            .iter()
            .map(|v| Form::from_constant_vector(n, degree, v))
            .collect();
        SubspaceBasis { n, degree, kind, elements, matrix, projector: OnceLock::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> SubspaceKind {
        self.kind
    }

    pub fn elements(&self) -> &[Form] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Rows are the coefficient vectors of the elements.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Orthogonal projector of `Ω^k` onto the span.
    pub fn projector(&self) -> &Matrix {
        self.projector.get_or_init(|| {
            let dim = binom(2 * self.n as i64 + 1, self.degree as i64) as usize;
            if self.matrix.rows() == 0 {
                Matrix::zeros(dim, dim)
            } else {
                self.matrix.row_space_projector()
            }
        })
    }

    /// Orthogonal projection of a polynomial form onto the span.
    pub fn project(&self, alpha: &Form) -> Result<Form> {
        self.check_form(alpha)?;
        let v = self.projector().apply_poly(&alpha.coeff_vector_at(self.degree), self.n);
        Ok(Form::from_coeff_vector(self.n, self.degree, v))
    }

    /// `α − proj(α)`; zero exactly when `α` lies in the span (pointwise).
    pub fn residual(&self, alpha: &Form) -> Result<Form> {
        let p = self.project(alpha)?;
        alpha.sub(&p)
    }

    pub fn contains(&self, alpha: &Form) -> Result<bool> {
        Ok(self.residual(alpha)?.is_zero())
    }

    fn check_form(&self, alpha: &Form) -> Result<()> {
        check_dim(self.n, alpha.n())?;
        if !alpha.is_zero() && alpha.degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: alpha.degree() });
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "degree": self.degree,
            "kind": self.kind,
            "dimension": self.len(),
            "elements": self.elements.iter().map(Form::to_json).collect::<Vec<_>>(),
        })
    }
}

impl Form {
    /// Coefficient vector at `degree`, treating a zero form of another degree as zero.
    fn coeff_vector_at(&self, degree: usize) -> Vec<PolyCoeff> {
        if self.is_zero() {
            vec![PolyCoeff::zero(self.n()); binom(2 * self.n() as i64 + 1, degree as i64) as usize]
        } else {
            self.coeff_vector()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum MatrixKey {
    D0 { n: usize, k: usize },
    D0Pinv { n: usize, k: usize },
    LInverse { n: usize },
}

type Cache<K, V> = OnceLock<RwLock<HashMap<K, Arc<V>>>>;

static SUBSPACES: Cache<(SubspaceKind, usize, usize), SubspaceBasis> = OnceLock::new();
static MATRICES: Cache<MatrixKey, Matrix> = OnceLock::new();

fn cached<K: Copy + Eq + std::hash::Hash, V>(cache: &'static Cache<K, V>, key: K, build: impl FnOnce() -> V) -> Arc<V> {
    let map = cache.get_or_init(Default::default);
    if let Some(v) = map.read().expect("cache lock").get(&key) {
        return Arc::clone(v);
    }
    // Computed outside the lock; a racing duplicate is identical and discarded.
    let v = Arc::new(build());
    Arc::clone(map.write().expect("cache lock").entry(key).or_insert(v))
}

/// Matrix of `α ↦ α ∧ w` from `Ω^k` to `Ω^{k+deg w}` for a constant form `w`.
fn right_wedge_matrix(n: usize, k: usize, w: &Form) -> Matrix {
    let dim = 2 * n + 1;
    let src = blades_of_degree(dim, k);
    let dst_deg = k + w.degree();
    let rows = binom(dim as i64, dst_deg as i64) as usize;
    let mut m = Matrix::zeros(rows, src.len());
    if dst_deg > dim {
        return m;
    }
    for (j, b) in src.iter().enumerate() {
        let image = Form::basis(n, &b.indices(), PolyCoeff::one(n))
            .and_then(|f| f.wedge(w))
            .and_then(|f| f.constant_vector_at(dst_deg))
            .expect("constant wedge");
        for (i, v) in image.into_iter().enumerate() {
            if !v.is_zero() {
                m.set(i, j, v);
            }
        }
    }
    m
}

impl Form {
    fn constant_vector_at(&self, degree: usize) -> Result<Vec<Rational>> {
        if self.is_zero() {
            Ok(vec![Rational::zero(); binom(2 * self.n() as i64 + 1, degree as i64) as usize])
        } else {
            self.constant_vector()
        }
    }
}

/// Generators of `I^k`: θ-free `(k−1)`-blades wedged with θ, all `(k−2)`-blades wedged with dθ.
fn i_generators(n: usize, k: usize) -> Matrix {
    let dim = 2 * n + 1;
    let size = binom(dim as i64, k as i64) as usize;
    let mut rows = Vec::new();
    let theta = Form::theta(n);
    let dtheta = Form::dtheta(n);
    if k >= 1 {
        for b in blades_of_degree(2 * n, k - 1) {
            let g = Form::basis(n, &b.indices(), PolyCoeff::one(n)).unwrap().wedge(&theta).unwrap();
            rows.push(g.constant_vector_at(k).unwrap());
        }
    }
    if k >= 2 {
        for b in blades_of_degree(dim, k - 2) {
            let g = Form::basis(n, &b.indices(), PolyCoeff::one(n)).unwrap().wedge(&dtheta).unwrap();
            rows.push(g.constant_vector_at(k).unwrap());
        }
    }
    Matrix::from_rows(rows, size)
}

fn stack(a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.cols(), b.cols());
    let mut rows = a.row_vectors();
    rows.extend(b.row_vectors());
    Matrix::from_rows(rows, a.cols())
}

fn build_subspace(kind: SubspaceKind, k: usize, n: usize) -> SubspaceBasis {
    let dim = 2 * n + 1;
    let size = binom(dim as i64, k as i64) as usize;
    let rows = match kind {
        SubspaceKind::I => i_generators(n, k),
        SubspaceKind::QuotientComplement => {
            let gens = i_generators(n, k);
            if gens.rows() == 0 {
                Matrix::identity(size)
            } else {
                gens.nullspace()
            }
        }
        SubspaceKind::J => {
            let a = right_wedge_matrix(n, k, &Form::theta(n));
            let b = right_wedge_matrix(n, k, &Form::dtheta(n));
            stack(&a, &b).nullspace()
        }
        SubspaceKind::E0 => {
            // Ker d₀ ∩ (Im d₀)^⊥ at degree k
            let mut m = d0_matrix(n, k).as_ref().clone();
            if k >= 1 {
                m = stack(&m, &d0_matrix(n, k - 1).transpose());
            }
            if m.rows() == 0 {
                Matrix::identity(size)
            } else {
                m.nullspace()
            }
        }
    };
    SubspaceBasis::from_rows(n, k, kind, rows)
}

fn subspace(kind: SubspaceKind, k: usize, n: usize) -> Result<Arc<SubspaceBasis>> {
    check_n(n)?;
    if k > 2 * n + 1 {
        return Err(Error::DegreeOutOfRange { degree: k, min: 0, max: 2 * n + 1 });
    }
    Ok(cached(&SUBSPACES, (kind, k, n), || build_subspace(kind, k, n)))
}

fn check_range(k: usize, min: usize, max: usize) -> Result<()> {
    if k < min || k > max {
        return Err(Error::DegreeOutOfRange { degree: k, min, max });
    }
    Ok(())
}

/// Row-reduced basis of `I^k`, `1 <= k <= n`.
pub fn basis_i(k: usize, n: usize) -> Result<Arc<SubspaceBasis>> {
    check_n(n)?;
    check_range(k, 1, n)?;
    subspace(SubspaceKind::I, k, n)
}

/// Row-reduced basis of `J^k`, `n+1 <= k <= 2n+1`.
pub fn basis_j(k: usize, n: usize) -> Result<Arc<SubspaceBasis>> {
    check_n(n)?;
    check_range(k, n + 1, 2 * n + 1)?;
    subspace(SubspaceKind::J, k, n)
}

/// Orthogonal complement of `I^k` in `Ω^k`, `0 <= k <= n` (at `k = 0` all of `Ω⁰`).
pub fn quotient_complement(k: usize, n: usize) -> Result<Arc<SubspaceBasis>> {
    check_n(n)?;
    check_range(k, 0, n)?;
    subspace(SubspaceKind::QuotientComplement, k, n)
}

/// `E₀^k = Ker d₀ ∩ (Im d₀)^⊥`, `0 <= k <= 2n+1`.
pub fn basis_e0(k: usize, n: usize) -> Result<Arc<SubspaceBasis>> {
    subspace(SubspaceKind::E0, k, n)
}

/// Which equivalence relation a [`QuotientClass`] is taken with respect to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    /// Modulo `I^k`.
    ModI,
    /// Modulo `{γ ∧ θ}`; the representative is θ-free.
    ModTheta,
}

/// A class in `Ω^k/I^k` or `Ω^k/{γ∧θ}` with its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientClass {
    n: usize,
    k: usize,
    relation: Relation,
    representative: Form,
}

impl QuotientClass {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn representative(&self) -> &Form {
        &self.representative
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }

    /// The coarser class modulo `I^k`.
    pub fn to_mod_i(&self) -> QuotientClass {
        match self.relation {
            Relation::ModI => self.clone(),
            Relation::ModTheta => project_quotient(&self.representative, self.k, self.n).expect("valid class"),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "degree": self.k,
            "relation": self.relation,
            "representative": self.representative.to_json(),
        })
    }
}

fn check_form_degree(alpha: &Form, k: usize, n: usize) -> Result<()> {
    check_dim(n, alpha.n())?;
    if !alpha.is_zero() && alpha.degree() != k {
        return Err(Error::DegreeMismatch { expected: k, found: alpha.degree() });
    }
    Ok(())
}

/// Class of `α` in `Ω^k/I^k`; the representative is `α` minus its orthogonal projection onto `I^k`.
pub fn project_quotient(alpha: &Form, k: usize, n: usize) -> Result<QuotientClass> {
    check_n(n)?;
    check_range(k, 0, n)?;
    check_form_degree(alpha, k, n)?;
    let representative = if k == 0 {
        if alpha.is_zero() { Form::zero(n, 0) } else { alpha.clone() }
    } else {
        let r = subspace(SubspaceKind::I, k, n)?.residual(alpha)?;
        if r.is_zero() { Form::zero(n, k) } else { r }
    };
    Ok(QuotientClass { n, k, relation: Relation::ModI, representative })
}

/// Class of `α` modulo `{γ ∧ θ}`: the θ-free part of `α`.
pub fn project_mod_theta(alpha: &Form, k: usize, n: usize) -> Result<QuotientClass> {
    check_n(n)?;
    check_range(k, 0, n)?;
    check_form_degree(alpha, k, n)?;
    let rep = alpha.horizontal_part();
    let representative = if rep.is_zero() { Form::zero(n, k) } else { rep };
    Ok(QuotientClass { n, k, relation: Relation::ModTheta, representative })
}

fn horizontal_vector(alpha: &Form, k: usize) -> Vec<PolyCoeff> {
    blades_of_degree(2 * alpha.n(), k).into_iter().map(|b| alpha.coeff(b)).collect()
}

fn from_horizontal_vector(n: usize, k: usize, v: Vec<PolyCoeff>) -> Form {
    Form::from_terms(n, k, blades_of_degree(2 * n, k).into_iter().zip(v)).expect("valid blades")
}

fn check_horizontal(alpha: &Form, k: usize, n: usize) -> Result<()> {
    check_form_degree(alpha, k, n)?;
    if alpha.has_theta() {
        return Err(Error::ThetaComponent);
    }
    Ok(())
}

/// `L(β) = dθ ∧ β` on θ-free `(n−1)`-forms.
pub fn l_apply(beta: &Form) -> Result<Form> {
    let n = beta.n();
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    check_horizontal(beta, n - 1, n)?;
    if beta.is_zero() {
        return Ok(Form::zero(n, n + 1));
    }
    Form::dtheta(n).wedge(beta)
}

fn l_inverse_matrix(n: usize) -> Arc<Matrix> {
    cached(&MATRICES, MatrixKey::LInverse { n }, || {
        let src = blades_of_degree(2 * n, n - 1);
        let dst = blades_of_degree(2 * n, n + 1);
        let mut m = Matrix::zeros(dst.len(), src.len());
        let dtheta = Form::dtheta(n);
        for (j, b) in src.iter().enumerate() {
            let img = dtheta.wedge(&Form::basis(n, &b.indices(), PolyCoeff::one(n)).unwrap()).unwrap();
            for (i, d) in dst.iter().enumerate() {
                let c = img.coeff(*d);
                if !c.is_zero() {
                    m.set(i, j, c.constant_term());
                }
            }
        }
        m.inverse().expect("L is an isomorphism")
    })
}

/// Solves `dθ ∧ β = γ` for θ-free `γ` of degree `n+1`.
pub fn l_inverse(gamma: &Form) -> Result<Form> {
    let n = gamma.n();
    check_n(n)?;
    check_horizontal(gamma, n + 1, n)?;
    let v = l_inverse_matrix(n).apply_poly(&horizontal_vector(gamma, n + 1), n);
    Ok(from_horizontal_vector(n, n - 1, v))
}

/// The unique lift `α̃ = α + β∧θ` of a middle-degree class with `θ ∧ dα̃ = 0`.
///
/// With `h` the θ-free part of `dα`, `β = L⁻¹((−1)^n h)`; the sign makes the
/// θ-free part of `d(β∧θ) = dβ∧θ + (−1)^{n−1} β∧dθ` cancel `h` for every `n`.
pub fn lift(c: &QuotientClass) -> Result<Form> {
    let n = c.n;
    if c.k != n {
        return Err(Error::DegreeMismatch { expected: n, found: c.k });
    }
    let alpha = c.representative.horizontal_part();
    if alpha.is_zero() {
        return Ok(Form::zero(n, n));
    }
    let h = alpha.exterior_derivative().horizontal_part();
    let h = if n % 2 == 0 { h } else { h.neg() };
    let beta = l_inverse(&h)?;
    let lifted = if beta.is_zero() {
        alpha
    } else {
        alpha.add(&beta.wedge(&Form::theta(n))?)?
    };
    postcondition!({
        let d = lifted.exterior_derivative();
        Form::theta(n).wedge(&d)?.is_zero() && Form::dtheta(n).wedge(&d)?.is_zero()
    });
    Ok(lifted)
}

/// `d_Q[α] = [dα]` for classes of degree `k < n`.
pub fn d_q_low(c: &QuotientClass) -> Result<QuotientClass> {
    let n = c.n;
    if c.k >= n {
        return Err(Error::DegreeOutOfRange { degree: c.k, min: 0, max: n - 1 });
    }
    let c = c.to_mod_i();
    project_quotient(&c.representative.exterior_derivative(), c.k + 1, n)
}

/// True when `α ∧ θ = 0` and `α ∧ dθ = 0`.
pub fn is_in_j(alpha: &Form) -> bool {
    let n = alpha.n();
    alpha.is_zero()
        || (alpha.wedge(&Form::theta(n)).map(|f| f.is_zero()).unwrap_or(false)
            && alpha.wedge(&Form::dtheta(n)).map(|f| f.is_zero()).unwrap_or(false))
}

/// `d_Q = d|_{J^k}` for `n+1 <= k <= 2n`.
pub fn d_q_high(alpha: &Form, k: usize) -> Result<Form> {
    let n = alpha.n();
    check_n(n)?;
    check_range(k, n + 1, 2 * n)?;
    check_form_degree(alpha, k, n)?;
    if !is_in_j(alpha) {
        return Err(Error::NotInSubspace(format!("J^{k}")));
    }
    if alpha.is_zero() {
        return Ok(Form::zero(n, k + 1));
    }
    let d = alpha.exterior_derivative();
    postcondition!(is_in_j(&d));
    Ok(d)
}

/// `D[α] = d(α̃)`, the second-order operator `Ωⁿ/Iⁿ → J^{n+1}`.
pub fn d_second_order(c: &QuotientClass) -> Result<Form> {
    let lifted = lift(c)?;
    if lifted.is_zero() {
        return Ok(Form::zero(c.n, c.n + 1));
    }
    let d = lifted.exterior_derivative();
    postcondition!(is_in_j(&d));
    Ok(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Weight {
    Pure(usize),
    Mixed,
}

/// Common weight of all blades (dx, dy weigh 1, θ weighs 2), or `Mixed`.
pub fn weight_of(alpha: &Form) -> Result<Weight> {
    let n = alpha.n();
    let mut weights = alpha.terms().map(|(b, _)| b.weight(n));
    let first = weights.next().ok_or(Error::ZeroWeight)?;
    Ok(if weights.all(|w| w == first) { Weight::Pure(first) } else { Weight::Mixed })
}

fn d0_generic(alpha: &Form, signed: bool) -> Form {
    let n = alpha.n();
    let t = 2 * n + 1;
    let k = alpha.degree();
    let mut out = Form::zero(n, k + 1);
    if k + 1 > t {
        return out;
    }
    let flip = signed && k % 2 == 0;
    let dtheta = Form::dtheta(n);
    for (b, c) in alpha.terms() {
        if !b.contains(t) {
            continue;
        }
        let rest = Form::basis(n, &b.without(t).indices(), c.clone()).expect("valid blade");
        let img = rest.wedge(&dtheta).expect("same n");
        out = out.add(&if flip { img.neg() } else { img }).expect("same degree");
    }
    out
}

/// `d₀(f·blade∧θ) = f·blade∧dθ`, zero on θ-free blades.
///
/// This is the printed convention. It agrees with the weight-preserving part
/// of `d` up to the sign `(−1)^{k−1}`; see [`weight_preserving_part`].
pub fn d0_part(alpha: &Form) -> Form {
    d0_generic(alpha, false)
}

/// The weight-preserving part of `dα`: `(−1)^{k−1} f·blade∧dθ` on `f·blade∧θ`.
pub fn weight_preserving_part(alpha: &Form) -> Form {
    d0_generic(alpha, true)
}

/// Matrix of the weight-preserving part of `d` from `Ω^k` to `Ω^{k+1}`.
fn d0_matrix(n: usize, k: usize) -> Arc<Matrix> {
    cached(&MATRICES, MatrixKey::D0 { n, k }, || {
        let dim = 2 * n + 1;
        let src = blades_of_degree(dim, k);
        let rows = binom(dim as i64, k as i64 + 1) as usize;
        let mut m = Matrix::zeros(rows, src.len());
        for (j, b) in src.iter().enumerate() {
            let img = weight_preserving_part(&Form::basis(n, &b.indices(), PolyCoeff::one(n)).unwrap());
            if img.is_zero() {
                continue;
            }
            for (i, v) in img.constant_vector().unwrap().into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        m
    })
}

fn d0_pinv_matrix(n: usize, k: usize) -> Arc<Matrix> {
    cached(&MATRICES, MatrixKey::D0Pinv { n, k }, || d0_matrix(n, k).pseudoinverse())
}

/// `d₀⁻¹` (Moore–Penrose) on a form of degree `m`, landing in degree `m−1`.
fn d0_pinv(beta: &Form, m: usize) -> Form {
    let n = beta.n();
    if m == 0 || beta.is_zero() {
        return Form::zero(n, m.saturating_sub(1));
    }
    let v = d0_pinv_matrix(n, m - 1).apply_poly(&beta.coeff_vector_at(m), n);
    Form::from_coeff_vector(n, m - 1, v)
}

fn d0_at(alpha: &Form, k: usize) -> Form {
    if alpha.is_zero() {
        Form::zero(alpha.n(), k + 1)
    } else {
        weight_preserving_part(alpha)
    }
}

fn d_at(alpha: &Form, k: usize) -> Form {
    if alpha.is_zero() {
        Form::zero(alpha.n(), k + 1)
    } else {
        alpha.exterior_derivative()
    }
}

/// The nilpotent corrector `d₀⁻¹(d − d₀)` on `Ω^k`.
fn d0_corrector(alpha: &Form, k: usize) -> Form {
    let rest = d_at(alpha, k).sub(&d0_at(alpha, k)).expect("same degree");
    d0_pinv(&rest, k + 1)
}

/// `P = Σ_j (−d0_corrector)^j`; terminates because the corrector raises weight.
fn p_op(alpha: &Form, k: usize) -> Result<Form> {
    let mut acc = alpha.clone();
    let mut term = alpha.clone();
    for _ in 0..=2 * (2 * alpha.n() + 1) {
        term = d0_corrector(&term, k).neg();
        if term.is_zero() {
            return Ok(acc);
        }
        acc = acc.add(&term)?;
    }
    Err(Error::NotNilpotent(format!("corrector on degree {k} did not vanish")))
}

/// `Q = P d₀⁻¹` from degree `m` to degree `m−1`.
fn q_op(beta: &Form, m: usize) -> Result<Form> {
    if m == 0 {
        return Ok(Form::zero(beta.n(), 0));
    }
    p_op(&d0_pinv(beta, m), m - 1)
}

fn pi_e(alpha: &Form, k: usize) -> Result<Form> {
    let qd = q_op(&d_at(alpha, k), k + 1)?;
    let dq = if k == 0 { Form::zero(alpha.n(), 0) } else { d_at(&q_op(alpha, k)?, k - 1) };
    alpha.sub(&qd)?.sub(&dq)
}

fn pi_e0(beta: &Form, m: usize) -> Form {
    let a = d0_pinv(&d0_at(beta, m), m + 1);
    let b = if m == 0 { Form::zero(beta.n(), 0) } else { d0_at(&d0_pinv(beta, m), m - 1) };
    beta.sub(&a).and_then(|f| f.sub(&b)).expect("same degree")
}

/// `d_c = Π_{E₀} d Π_E` on `E₀^k`, for `n ∈ {1, 2}`.
pub fn dc_operator(alpha: &Form) -> Result<Form> {
    let n = alpha.n();
    if !(1..=2).contains(&n) {
        return Err(Error::Unsupported(format!("d_c is implemented for n = 1, 2 (got n = {n})")));
    }
    let k = alpha.degree();
    if !basis_e0(k, n)?.contains(alpha)? {
        return Err(Error::NotInSubspace(format!("E0^{k}")));
    }
    if k == 2 * n + 1 || alpha.is_zero() {
        return Ok(Form::zero(n, k + 1));
    }
    Ok(pi_e0(&d_at(&pi_e(alpha, k)?, k), k + 1))
}

/// Outcome of one identity checked over many random trials.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    pub passed: bool,
    pub counterexample: Option<serde_json::Value>,
}

impl CheckResult {
    /// Runs `trial` for `0..trials` in parallel; the counterexample is the
    /// lowest-index failure, so the result does not depend on scheduling.
    pub fn run<F>(name: impl Into<String>, trials: usize, trial: F) -> CheckResult
    where
        F: Fn(usize) -> Option<serde_json::Value> + Sync,
    {
        let outcomes: Vec<Option<serde_json::Value>> = (0..trials).into_par_iter().map(&trial).collect();
        let failures = outcomes.iter().filter(|o| o.is_some()).count();
        CheckResult {
            name: name.into(),
            trials,
            failures,
            passed: failures == 0,
            counterexample: outcomes.into_iter().flatten().next(),
        }
    }

    pub fn single(name: impl Into<String>, passed: bool, counterexample: Option<serde_json::Value>) -> CheckResult {
        CheckResult {
            name: name.into(),
            trials: 1,
            failures: usize::from(!passed),
            passed,
            counterexample,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl ComplexReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Random class in `Ω^k/I^k`.
pub fn random_class(n: usize, k: usize, max_degree: u32, rng: &mut impl rand::Rng) -> QuotientClass {
    project_quotient(&random_form(n, k, max_degree, rng), k, n).expect("valid degree")
}

/// Random element of `J^k`: a polynomial combination of the basis.
pub fn random_j(n: usize, k: usize, max_degree: u32, rng: &mut impl rand::Rng) -> Form {
    let basis = basis_j(k, n).expect("valid degree");
    random_combination(n, k, basis.elements(), max_degree, rng)
}

fn witness(input: &Form, output: &Form) -> serde_json::Value {
    serde_json::json!({ "input": input.to_json(), "output": output.to_json() })
}

/// Failure witness for one trial: `Ok(Some(out))` is a wrong output, `Err` an
/// operator that rejected its input.
fn outcome(input: &Form, r: Result<Option<Form>>) -> Option<serde_json::Value> {
    match r {
        Ok(None) => None,
        Ok(Some(out)) => Some(witness(input, &out)),
        Err(e) => Some(serde_json::json!({ "input": input.to_json(), "error": e.to_string() })),
    }
}

fn nonzero(f: Form) -> Option<Form> {
    (!f.is_zero()).then_some(f)
}

/// Checks that every two consecutive operators of the complex compose to zero.
pub fn verify_complex(n: usize, trials: usize, seed: u64, degree: u32) -> Result<ComplexReport> {
    if !(1..=3).contains(&n) {
        return Err(Error::Unsupported(format!("verify_complex supports n = 1, 2, 3 (got {n})")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let mut checks = Vec::new();
    for k in 0..n {
        // d_Q then the next operator, starting in degree k < n
        let label = 100 + k as u64;
        let name = if k + 1 < n { format!("dQ.dQ k={k}") } else { format!("D.dQ k={k}") };
        checks.push(CheckResult::run(name, trials, |t| {
            let c = random_class(n, k, degree, &mut trial_rng(seed, label, t as u64));
            let run = || {
                let mid = d_q_low(&c)?;
                let out = if k + 1 < n { d_q_low(&mid)?.representative().clone() } else { d_second_order(&mid)? };
                Ok(nonzero(out))
            };
            outcome(c.representative(), run())
        }));
    }
    checks.push(CheckResult::run(format!("dQ.D k={n}"), trials, |t| {
        let c = random_class(n, n, degree, &mut trial_rng(seed, 200, t as u64));
        let run = || Ok(nonzero(d_q_high(&d_second_order(&c)?, n + 1)?));
        outcome(c.representative(), run())
    }));
    for k in n + 1..2 * n {
        checks.push(CheckResult::run(format!("dQ.dQ k={k}"), trials, |t| {
            let a = random_j(n, k, degree, &mut trial_rng(seed, 300 + k as u64, t as u64));
            let run = || Ok(nonzero(d_q_high(&d_q_high(&a, k)?, k + 1)?));
            outcome(&a, run())
        }));
    }
    Ok(ComplexReport { n, trials, seed, checks })
}

/// Checks the lift property `θ∧dα̃ = 0`, `dθ∧dα̃ = 0` on random middle-degree classes.
pub fn verify_lift(n: usize, trials: usize, seed: u64, degree: u32) -> CheckResult {
    CheckResult::run(format!("lift n={n}"), trials, |t| {
        let c = random_class(n, n, degree, &mut trial_rng(seed, 400, t as u64));
        let run = || {
            let lifted = lift(&c)?;
            let d = lifted.exterior_derivative();
            let ok = Form::theta(n).wedge(&d)?.is_zero() && Form::dtheta(n).wedge(&d)?.is_zero();
            Ok((!ok).then_some(lifted))
        };
        outcome(c.representative(), run())
    })
}

/// Compares `d_c` with `d_Q` / `D` / `d` on random elements of `E₀^k` for every degree.
pub fn verify_dc(n: usize, trials: usize, seed: u64, degree: u32) -> Result<Vec<CheckResult>> {
    if !(1..=2).contains(&n) {
        return Err(Error::Unsupported(format!("d_c is implemented for n = 1, 2 (got n = {n})")));
    }
    let mut out = Vec::new();
    for k in 0..=2 * n {
        let e0 = basis_e0(k, n)?;
        out.push(CheckResult::run(format!("dc k={k}"), trials, |t| {
            let a = random_combination(n, k, e0.elements(), degree, &mut trial_rng(seed, 500 + k as u64, t as u64));
            let run = || {
                let dc = dc_operator(&a)?;
                let expected = if k < n {
                    project_quotient(&d_at(&a, k), k + 1, n)?.representative().clone()
                } else if k == n {
                    d_second_order(&project_quotient(&a, k, n)?)?
                } else {
                    d_at(&a, k)
                };
                Ok((dc != expected).then_some(dc))
            };
            outcome(&a, run())
        }));
    }
    Ok(out)
}
