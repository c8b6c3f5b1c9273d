//! Left-invariant frame and coframe of `H^n`, graded algebras of forms and
//! multivectors with polynomial coefficients, `d`, Hodge star, pairing.
//!
//! Index conventions are 1-based throughout: coframe index `i` is
//! `dx_i` for `i <= n`, `dy_{i-n}` for `n < i <= 2n`, and `θ` for `i = 2n+1`;
//! frame index `i` is `X_i`, `Y_{i-n}`, `T` in the same way.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::coeff::{rat, PolyCoeff, Rational};
use crate::error::{check_dim, Error, Result};

/// A basis blade `θ_{i1} ∧ … ∧ θ_{ik}` (or `W_{i1} ∧ … ∧ W_{ik}`) with
/// strictly increasing indices, stored as a bitmask (bit `i-1` ↔ index `i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Blade(u32);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn from_indices(indices: &[usize]) -> Result<Blade> {
        let mut mask = 0u32;
        let mut last = 0;
        for &i in indices {
            if i == 0 || i > 31 {
                return Err(Error::IndexOutOfRange { index: i, max: 31 });
            }
            if i <= last {
                return Err(Error::InvalidParameter(format!(
                    "blade indices must be strictly increasing: {indices:?}"
                )));
            }
            last = i;
            mask |= 1 << (i - 1);
        }
        Ok(Blade(mask))
    }

    pub fn single(i: usize) -> Blade {
        Blade(1 << (i - 1))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    pub fn indices(self) -> SmallVec<[usize; 12]> {
        (1..=32).filter(|&i| self.contains(i)).collect()
    }

    pub fn max_index(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn without(self, i: usize) -> Blade {
        Blade(self.0 & !(1 << (i - 1)))
    }

    /// Complement inside `{1, …, dim}`.
    pub fn complement(self, dim: usize) -> Blade {
        Blade(!self.0 & ((1u32 << dim) - 1))
    }

    /// Sign and blade of `self ∧ other`, or `None` when they share an index.
    pub fn wedge(self, other: Blade) -> Option<(i8, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // count pairs (i in self, j in other) with i > j
        let mut inversions = 0u32;
        for j in other.indices() {
            inversions += (self.0 >> j).count_ones();
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, Blade(self.0 | other.0)))
    }

    /// Total weight: horizontal indices weigh 1, the vertical index `2n+1` weighs 2.
    pub fn weight(self, n: usize) -> usize {
        self.degree() + usize::from(self.contains(2 * n + 1))
    }
}

impl Ord for Blade {
    /// Lexicographic order on the increasing index lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(&other.indices())
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All blades of degree `k` among indices `1..=dim`, in lexicographic order.
pub fn blades_of_degree(dim: usize, k: usize) -> Vec<Blade> {
    let mut out = Vec::new();
    if k > dim {
        return out;
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        out.push(Blade::from_indices(&idx).expect("increasing"));
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < dim - (k - 1 - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Applies the frame field `W_i` to a polynomial: `T = ∂_t`, and for
/// `i <= 2n`, `W_i = ∂_{w_i} − ½ w̃_i ∂_t` with `w̃_j = y_j`, `w̃_{n+j} = −x_j`.
pub fn frame_apply(i: usize, p: &PolyCoeff) -> Result<PolyCoeff> {
    let n = p.n();
    let dim = 2 * n + 1;
    if i == 0 || i > dim {
        return Err(Error::IndexOutOfRange { index: i, max: dim });
    }
    let di = p.partial_derivative(i)?;
    if i == dim {
        return Ok(di);
    }
    let dt = p.partial_derivative(dim)?;
    if dt.is_zero() {
        return Ok(di);
    }
    // −½ w̃_i: −½ y_i for X_i, +½ x_i for Y_i
    let (twist, factor) = if i <= n { (n + i, rat(-1, 2)) } else { (i - n, rat(1, 2)) };
    Ok(di + PolyCoeff::var(n, twist)?.scale(&factor) * dt)
}

#[derive(Clone, Debug, Default)]
struct Graded {
    n: usize,
    degree: usize,
    terms: BTreeMap<Blade, PolyCoeff>,
}

impl Graded {
    fn new(n: usize, degree: usize) -> Self {
        Graded { n, degree, terms: BTreeMap::new() }
    }

    fn add_term(&mut self, blade: Blade, c: PolyCoeff) {
        debug_assert_eq!(blade.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(blade) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Graded) -> Result<()> {
        check_dim(self.n, other.n)?;
        if self.degree != other.degree && !self.terms.is_empty() && !other.terms.is_empty() {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    fn combine(&self, other: &Graded, sign: i64) -> Result<Graded> {
        self.check_same(other)?;
        let mut out = if self.terms.is_empty() {
            Graded::new(self.n, other.degree)
        } else {
            self.clone()
        };
        for (b, c) in &other.terms {
            let c = if sign < 0 { -c } else { c.clone() };
            out.add_term(*b, c);
        }
        Ok(out)
    }

    fn map_coeffs(&self, f: impl Fn(&PolyCoeff) -> PolyCoeff) -> Graded {
        let mut out = Graded::new(self.n, self.degree);
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }

    fn eq(&self, other: &Graded) -> bool {
        if self.terms.is_empty() && other.terms.is_empty() {
            return true;
        }
        self.n == other.n && self.degree == other.degree && self.terms == other.terms
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    blade: Vec<usize>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct GradedJson {
    n: usize,
    degree: usize,
    terms: Vec<TermJson>,
}

macro_rules! graded_type {
    ($name:ident, $label:literal) => {
        impl $name {
            pub fn zero(n: usize, degree: usize) -> Self {
                $name(Graded::new(n, degree))
            }

            /// `c` times the basis blade with the given indices.
            pub fn basis(n: usize, indices: &[usize], c: PolyCoeff) -> Result<Self> {
                check_dim(n, c.n())?;
                let blade = Blade::from_indices(indices)?;
                if blade.max_index() > 2 * n + 1 {
                    return Err(Error::IndexOutOfRange { index: blade.max_index(), max: 2 * n + 1 });
                }
                let mut g = Graded::new(n, indices.len());
                g.add_term(blade, c);
                Ok($name(g))
            }

            /// Builds from `(blade, coefficient)` pairs, summing repeated blades.
            pub fn from_terms(
                n: usize,
                degree: usize,
                terms: impl IntoIterator<Item = (Blade, PolyCoeff)>,
            ) -> Result<Self> {
                let mut g = Graded::new(n, degree);
                for (b, c) in terms {
                    if b.degree() != degree {
                        return Err(Error::DegreeMismatch { expected: degree, found: b.degree() });
                    }
                    if b.max_index() > 2 * n + 1 {
                        return Err(Error::IndexOutOfRange { index: b.max_index(), max: 2 * n + 1 });
                    }
                    check_dim(n, c.n())?;
                    g.add_term(b, c);
                }
                Ok($name(g))
            }

            pub fn n(&self) -> usize {
                self.0.n
            }

            pub fn degree(&self) -> usize {
                self.0.degree
            }

            pub fn is_zero(&self) -> bool {
                self.0.terms.is_empty()
            }

            pub fn terms(&self) -> impl Iterator<Item = (&Blade, &PolyCoeff)> {
                self.0.terms.iter()
            }

            pub fn len(&self) -> usize {
                self.0.terms.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.terms.is_empty()
            }

            pub fn coeff(&self, blade: Blade) -> PolyCoeff {
                self.0.terms.get(&blade).cloned().unwrap_or_else(|| PolyCoeff::zero(self.0.n))
            }

            pub fn is_constant(&self) -> bool {
                self.0.terms.values().all(PolyCoeff::is_constant)
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                self.0.combine(&other.0, 1).map($name)
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                self.0.combine(&other.0, -1).map($name)
            }

            pub fn neg(&self) -> Self {
                $name(self.0.map_coeffs(|c| -c))
            }

            pub fn scale(&self, r: &Rational) -> Self {
                $name(self.0.map_coeffs(|c| c.scale(r)))
            }

            /// Multiplies every coefficient by the polynomial `p`.
            pub fn mul_poly(&self, p: &PolyCoeff) -> Self {
                $name(self.0.map_coeffs(|c| c * p))
            }

            /// Coefficients over the lexicographically ordered blades of this degree.
            pub fn coeff_vector(&self) -> Vec<PolyCoeff> {
                blades_of_degree(2 * self.0.n + 1, self.0.degree)
                    .into_iter()
                    .map(|b| self.coeff(b))
                    .collect()
            }

            pub fn from_coeff_vector(n: usize, degree: usize, v: Vec<PolyCoeff>) -> Self {
                let blades = blades_of_degree(2 * n + 1, degree);
                assert_eq!(blades.len(), v.len());
                let mut g = Graded::new(n, degree);
                for (b, c) in blades.into_iter().zip(v) {
                    g.add_term(b, c);
                }
                $name(g)
            }

            /// Rational coefficient vector; fails unless every coefficient is constant.
            pub fn constant_vector(&self) -> Result<Vec<Rational>> {
                self.coeff_vector()
                    .into_iter()
                    .map(|c| {
                        if c.is_constant() {
                            Ok(c.constant_term())
                        } else {
                            Err(Error::InvalidParameter("expected constant coefficients".into()))
                        }
                    })
                    .collect()
            }

            pub fn from_constant_vector(n: usize, degree: usize, v: &[Rational]) -> Self {
                Self::from_coeff_vector(
                    n,
                    degree,
                    v.iter().map(|r| PolyCoeff::constant(n, r.clone())).collect(),
                )
            }

            pub fn to_json(&self) -> serde_json::Value {
                let j = GradedJson {
                    n: self.0.n,
                    degree: self.0.degree,
                    terms: self
                        .0
                        .terms
                        .iter()
                        .map(|(b, c)| TermJson { blade: b.indices().to_vec(), coeff: c.to_string() })
                        .collect(),
                };
                serde_json::to_value(j).expect("serializable")
            }

            pub fn from_json(v: &serde_json::Value) -> Result<Self> {
                let j: GradedJson =
                    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
                let mut terms = Vec::with_capacity(j.terms.len());
                for t in j.terms {
                    terms.push((Blade::from_indices(&t.blade)?, PolyCoeff::parse(j.n, &t.coeff)?));
                }
                Self::from_terms(j.n, j.degree, terms)
            }
        }

        impl PartialEq for $name {
            fn eq(&self, other: &Self) -> bool {
                self.0.eq(&other.0)
            }
        }

        impl Eq for $name {}

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.terms.is_empty() {
                    return f.write_str("0");
                }
                let mut first = true;
                for (b, c) in &self.0.terms {
                    if !first {
                        f.write_str(" + ")?;
                    }
                    first = false;
                    let names: Vec<String> =
                        b.indices().iter().map(|&i| index_name(self.0.n, i, $label)).collect();
                    if names.is_empty() {
                        write!(f, "({c})")?;
                    } else {
                        write!(f, "({c}) {}", names.join("∧"))?;
                    }
                }
                Ok(())
            }
        }
    };
}

fn index_name(n: usize, i: usize, kind: &str) -> String {
    let covector = kind == "form";
    let suffix = |j: usize| if n == 1 { String::new() } else { j.to_string() };
    if i == 2 * n + 1 {
        return if covector { "θ".into() } else { "T".into() };
    }
    let (base, j) = if i <= n { ("x", i) } else { ("y", i - n) };
    if covector {
        format!("d{base}{}", suffix(j))
    } else {
        format!("{}{}", base.to_uppercase(), suffix(j))
    }
}

/// A differential form: coefficients over coframe blades.
#[derive(Clone, Debug)]
pub struct Form(Graded);

/// A multivector: coefficients over frame blades.
#[derive(Clone, Debug)]
pub struct MultiVector(Graded);

graded_type!(Form, "form");
graded_type!(MultiVector, "vector");

impl Form {
    pub fn function(f: PolyCoeff) -> Form {
        let n = f.n();
        let mut g = Graded::new(n, 0);
        g.add_term(Blade::EMPTY, f);
        Form(g)
    }

    /// The coframe 1-form `θ_i`.
    pub fn coframe(n: usize, i: usize) -> Result<Form> {
        Form::basis(n, &[i], PolyCoeff::one(n))
    }

    pub fn dx(n: usize, j: usize) -> Form {
        assert!(j >= 1 && j <= n);
        Form::coframe(n, j).expect("valid index")
    }

    pub fn dy(n: usize, j: usize) -> Form {
        assert!(j >= 1 && j <= n);
        Form::coframe(n, n + j).expect("valid index")
    }

    pub fn theta(n: usize) -> Form {
        Form::coframe(n, 2 * n + 1).expect("valid index")
    }

    /// `dθ = −Σ_j dx_j ∧ dy_j`.
    pub fn dtheta(n: usize) -> Form {
        let mut g = Graded::new(n, 2);
        for j in 1..=n {
            g.add_term(Blade::from_indices(&[j, n + j]).unwrap(), PolyCoeff::from_int(n, -1));
        }
        Form(g)
    }

    pub fn wedge(&self, other: &Form) -> Result<Form> {
        check_dim(self.n(), other.n())?;
        let n = self.n();
        let mut g = Graded::new(n, self.degree() + other.degree());
        if g.degree > 2 * n + 1 {
            return Ok(Form(g));
        }
        for (ba, ca) in &self.0.terms {
            for (bb, cb) in &other.0.terms {
                if let Some((sign, b)) = ba.wedge(*bb) {
                    let c = ca * cb;
                    g.add_term(b, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(Form(g))
    }

    /// `dα`, computed termwise from `d(c·blade) = Σ_i W_i c θ_i ∧ blade + c·d(blade)`.
    pub fn exterior_derivative(&self) -> Form {
        let n = self.n();
        let dim = 2 * n + 1;
        let mut g = Graded::new(n, self.degree() + 1);
        if g.degree > dim {
            return Form(g);
        }
        let dtheta = dtheta_for_d(n);
        for (b, c) in &self.0.terms {
            for i in 1..=dim {
                if b.contains(i) {
                    continue;
                }
                let wc = frame_apply(i, c).expect("index in range");
                if wc.is_zero() {
                    continue;
                }
                let (sign, nb) = Blade::single(i).wedge(*b).expect("disjoint");
                g.add_term(nb, if sign < 0 { -wc } else { wc });
            }
            if b.contains(dim) {
                // blade = rest ∧ θ, so d(blade) = (−1)^{|rest|} rest ∧ dθ
                let rest = b.without(dim);
                let sign = if rest.degree() % 2 == 0 { 1 } else { -1 };
                for (db, dc) in &dtheta.0.terms {
                    if let Some((s, nb)) = rest.wedge(*db) {
                        let v = c * dc;
                        g.add_term(nb, if s * sign < 0 { -v } else { v });
                    }
                }
            }
        }
        Form(g)
    }

    /// Blade-orthonormal inner product `Σ_I a_I b_I`.
    pub fn inner(&self, other: &Form) -> Result<PolyCoeff> {
        self.0.check_same(&other.0)?;
        let mut acc = PolyCoeff::zero(self.n());
        for (b, c) in &self.0.terms {
            if let Some(d) = other.0.terms.get(b) {
                acc += &(c * d);
            }
        }
        Ok(acc)
    }

    /// True when some blade carries `θ`.
    pub fn has_theta(&self) -> bool {
        let t = 2 * self.n() + 1;
        self.0.terms.keys().any(|b| b.contains(t))
    }

    /// Keeps only the `θ`-free blades (the component in `Λ^k h₁`).
    pub fn horizontal_part(&self) -> Form {
        let t = 2 * self.n() + 1;
        let mut g = Graded::new(self.n(), self.degree());
        for (b, c) in &self.0.terms {
            if !b.contains(t) {
                g.add_term(*b, c.clone());
            }
        }
        Form(g)
    }

    /// Keeps only the blades containing `θ`.
    pub fn vertical_part(&self) -> Form {
        self.sub(&self.horizontal_part()).expect("same shape")
    }
}

fn dtheta_for_d(n: usize) -> Form {
    let dt = Form::dtheta(n);
    if cfg!(feature = "fault-dtheta") {
        dt.neg()
    } else {
        dt
    }
}

impl MultiVector {
    pub fn scalar(f: PolyCoeff) -> MultiVector {
        let n = f.n();
        let mut g = Graded::new(n, 0);
        g.add_term(Blade::EMPTY, f);
        MultiVector(g)
    }

    /// The frame field `W_i` as a 1-vector.
    pub fn frame(n: usize, i: usize) -> Result<MultiVector> {
        MultiVector::basis(n, &[i], PolyCoeff::one(n))
    }

    pub fn wedge(&self, other: &MultiVector) -> Result<MultiVector> {
        let a = Form(self.0.clone());
        let b = Form(other.0.clone());
        Ok(MultiVector(a.wedge(&b)?.0))
    }

    /// Blade-orthonormal inner product `Σ_I a_I b_I`.
    pub fn inner(&self, other: &MultiVector) -> Result<PolyCoeff> {
        Form(self.0.clone()).inner(&Form(other.0.clone()))
    }
}

/// `*V_I = (−1)^{σ(I)} V_{I*}`, `σ(I)` the number of pairs `i ∈ I`, `j ∈ I*` with `i > j`.
pub fn hodge_star(v: &MultiVector) -> Result<MultiVector> {
    let n = v.n();
    let dim = 2 * n + 1;
    let k = v.degree();
    if k == 0 || k > 2 * n {
        return Err(Error::DegreeOutOfRange { degree: k, min: 1, max: 2 * n });
    }
    let mut g = Graded::new(n, dim - k);
    for (b, c) in v.terms() {
        let comp = b.complement(dim);
        let (sign, _) = b.wedge(comp).expect("disjoint");
        g.add_term(comp, if sign < 0 { -c } else { c.clone() });
    }
    Ok(MultiVector(g))
}

/// `∇_H f = Σ_j (X_j f) X_j + (Y_j f) Y_j`.
pub fn horizontal_gradient(f: &PolyCoeff) -> MultiVector {
    let n = f.n();
    let mut g = Graded::new(n, 1);
    for i in 1..=2 * n {
        g.add_term(Blade::single(i), frame_apply(i, f).expect("index in range"));
    }
    MultiVector(g)
}

/// Duality pairing `⟨ω | v⟩` with `⟨θ_I | W_J⟩ = δ_{IJ}`.
pub fn pairing(omega: &Form, v: &MultiVector) -> Result<PolyCoeff> {
    check_dim(omega.n(), v.n())?;
    if omega.degree() != v.degree() {
        return Err(Error::DegreeMismatch { expected: omega.degree(), found: v.degree() });
    }
    omega.inner(&Form(v.0.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> PolyCoeff {
        PolyCoeff::parse(n, s).unwrap()
    }

    #[test]
    fn frame_examples() {
        assert_eq!(frame_apply(1, &p(1, "t")).unwrap(), p(1, "-1/2*y"));
        assert_eq!(frame_apply(2, &p(1, "t")).unwrap(), p(1, "1/2*x"));
        assert_eq!(frame_apply(1, &p(1, "x^2")).unwrap(), p(1, "2*x"));
        let t = p(1, "t");
        let xy = frame_apply(1, &frame_apply(2, &t).unwrap()).unwrap();
        let yx = frame_apply(2, &frame_apply(1, &t).unwrap()).unwrap();
        assert_eq!(xy - yx, frame_apply(3, &t).unwrap());
        assert!(frame_apply(4, &t).is_err());
    }

    #[test]
    fn twisted_frame_for_n2() {
        // X_2 = ∂x2 − ½ y2 ∂t, Y_2 = ∂y2 + ½ x2 ∂t
        assert_eq!(frame_apply(2, &p(2, "t")).unwrap(), p(2, "-1/2*y2"));
        assert_eq!(frame_apply(4, &p(2, "t")).unwrap(), p(2, "1/2*x2"));
    }

    #[test]
    fn wedge_examples() {
        let dx = Form::dx(1, 1);
        let dy = Form::dy(1, 1);
        assert!(dx.wedge(&dx).unwrap().is_zero());
        assert_eq!(dx.wedge(&dy).unwrap(), dy.wedge(&dx).unwrap().neg());
        let a = dx.mul_poly(&p(1, "x"));
        let b = dy.mul_poly(&p(1, "y")).add(&Form::theta(1)).unwrap();
        let expected = Form::basis(1, &[1, 2], p(1, "x*y"))
            .unwrap()
            .add(&Form::basis(1, &[1, 3], p(1, "x")).unwrap())
            .unwrap();
        assert_eq!(a.wedge(&b).unwrap(), expected);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(Form::function(p(1, "x")).exterior_derivative(), Form::dx(1, 1));
        assert_eq!(Form::theta(1).exterior_derivative(), Form::dtheta(1));
        assert_eq!(Form::dtheta(1), Form::basis(1, &[1, 2], PolyCoeff::from_int(1, -1)).unwrap());
        let expected = Form::theta(1)
            .add(&Form::dy(1, 1).mul_poly(&p(1, "1/2*x")))
            .unwrap()
            .sub(&Form::dx(1, 1).mul_poly(&p(1, "1/2*y")))
            .unwrap();
        assert_eq!(Form::function(p(1, "t")).exterior_derivative(), expected);
        let top = Form::basis(1, &[1, 2, 3], p(1, "x")).unwrap();
        assert!(top.exterior_derivative().is_zero());
    }

    #[test]
    fn hodge_examples() {
        let x = MultiVector::frame(1, 1).unwrap();
        let y = MultiVector::frame(1, 2).unwrap();
        let yt = MultiVector::basis(1, &[2, 3], PolyCoeff::one(1)).unwrap();
        let xt = MultiVector::basis(1, &[1, 3], PolyCoeff::one(1)).unwrap();
        assert_eq!(hodge_star(&x).unwrap(), yt);
        assert_eq!(hodge_star(&y).unwrap(), xt.neg());
        let v = x.mul_poly(&p(1, "w1")).add(&y.mul_poly(&p(1, "w2"))).unwrap();
        let expected = yt.mul_poly(&p(1, "w1")).sub(&xt.mul_poly(&p(1, "w2"))).unwrap();
        assert_eq!(hodge_star(&v).unwrap(), expected);
        assert!(hodge_star(&MultiVector::scalar(PolyCoeff::one(1))).is_err());
    }

    #[test]
    fn gradient_examples() {
        assert_eq!(horizontal_gradient(&p(1, "x")), MultiVector::frame(1, 1).unwrap());
        let expected = MultiVector::frame(1, 1)
            .unwrap()
            .mul_poly(&p(1, "-1/2*y"))
            .add(&MultiVector::frame(1, 2).unwrap().mul_poly(&p(1, "1/2*x")))
            .unwrap();
        assert_eq!(horizontal_gradient(&p(1, "t")), expected);
        assert!(horizontal_gradient(&PolyCoeff::from_int(1, 7)).is_zero());
    }

    #[test]
    fn pairing_examples() {
        let x = MultiVector::frame(1, 1).unwrap();
        assert_eq!(pairing(&Form::dx(1, 1), &x).unwrap(), PolyCoeff::one(1));
        assert!(pairing(&Form::theta(1), &x).unwrap().is_zero());
        let dxt = Form::dx(1, 1).wedge(&Form::theta(1)).unwrap();
        let xt = MultiVector::basis(1, &[1, 3], PolyCoeff::one(1)).unwrap();
        assert_eq!(pairing(&dxt, &xt).unwrap(), PolyCoeff::one(1));
        assert!(matches!(pairing(&dxt, &x), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn zero_forms_compare_equal_across_degrees() {
        assert_eq!(Form::zero(1, 0), Form::zero(1, 3));
        assert_ne!(Form::theta(1), Form::dx(1, 1));
    }

    #[test]
    fn blade_order_and_enumeration() {
        let bs = blades_of_degree(5, 2);
        assert_eq!(bs.len(), 10);
        assert_eq!(bs[0].indices().to_vec(), vec![1, 2]);
        assert_eq!(bs[9].indices().to_vec(), vec![4, 5]);
        assert!(bs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(blades_of_degree(3, 0), vec![Blade::EMPTY]);
    }

    #[test]
    fn json_round_trip() {
        let f = Form::basis(2, &[1, 5], p(2, "x1*t - 3/4")).unwrap();
        let j = f.to_json();
        assert_eq!(j["terms"][0]["blade"], serde_json::json!([1, 5]));
        assert_eq!(Form::from_json(&j).unwrap(), f);
    }

    #[test]
    fn weight_of_blades() {
        assert_eq!(Blade::from_indices(&[3]).unwrap().weight(1), 2);
        assert_eq!(Blade::from_indices(&[1, 5]).unwrap().weight(2), 3);
    }
}
