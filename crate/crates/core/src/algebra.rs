//! Positively graded Gorenstein algebras given by explicit multiplication tables.
//!
//! A [`GradedAlgebra`] is the raw, possibly inconsistent table as read from a
//! definition file or built by a preset. [`validate_algebra`] checks the
//! standing hypotheses and [`Algebra`] is the validated handle every other
//! module works with.
//!
//! Basis index 0 is always the identity, indices `1..=r` span the codimension
//! one piece and the remaining `s` indices are the higher classes in
//! nondecreasing codimension.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Q};

/// Sparse coordinate vector over the basis.
pub type SparseVec = Vec<(usize, Q)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    pub name: String,
    /// Socle degree.
    pub n: u32,
    pub labels: Vec<String>,
    pub codims: Vec<u32>,
    /// Products keyed by unordered pair `(a, b)` with `a <= b`.
    products: BTreeMap<(usize, usize), Vec<Q>>,
    pub integral: Vec<Q>,
}

impl GradedAlgebra {
    pub fn new(name: impl Into<String>, n: u32, basis: &[(&str, u32)]) -> Self {
        let labels: Vec<String> = basis.iter().map(|(l, _)| l.to_string()).collect();
        let codims = basis.iter().map(|&(_, c)| c).collect();
        let dim = labels.len();
        GradedAlgebra {
            name: name.into(),
            n,
            labels,
            codims,
            products: BTreeMap::new(),
            integral: vec![Q::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sets `T_a * T_b` (and by symmetry `T_b * T_a`).
    pub fn set_product(&mut self, a: usize, b: usize, value: Vec<Q>) {
        self.products.insert((a.min(b), a.max(b)), value);
    }

    /// Convenience for presets: `terms` are `(coefficient, label)` pairs.
    pub fn set_product_terms(&mut self, a: &str, b: &str, terms: &[(Q, &str)]) {
        let ia = self.index_of(a).expect("unknown label");
        let ib = self.index_of(b).expect("unknown label");
        let mut v = vec![Q::zero(); self.dim()];
        for (c, l) in terms {
            v[self.index_of(l).expect("unknown label")] += c;
        }
        self.set_product(ia, ib, v);
    }

    pub fn set_integral(&mut self, a: usize, value: Q) {
        self.integral[a] = value;
    }

    pub fn listed_product(&self, a: usize, b: usize) -> Option<&Vec<Q>> {
        self.products.get(&(a.min(b), a.max(b)))
    }

    pub fn listed_products(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Q>)> {
        self.products.iter()
    }

    fn identity_index(&self) -> Option<usize> {
        self.codims.iter().position(|&c| c == 0)
    }

    /// Product of two basis elements with the implicit conventions applied:
    /// identity products, and zero above the socle. Unlisted pairs read as `None`.
    pub fn basis_product(&self, a: usize, b: usize) -> Option<Vec<Q>> {
        if let Some(v) = self.listed_product(a, b) {
            return Some(v.clone());
        }
        let id = self.identity_index();
        if Some(a) == id {
            return Some(unit(self.dim(), b));
        }
        if Some(b) == id {
            return Some(unit(self.dim(), a));
        }
        if self.codims[a] + self.codims[b] > self.n {
            return Some(vec![Q::zero(); self.dim()]);
        }
        None
    }

    /// Pairing matrix `g_ij` and its inverse.
    pub fn inverse_pairing(&self) -> Result<PairingData> {
        let dim = self.dim();
        let mut g = vec![vec![Q::zero(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let p = self.basis_product(a, b).unwrap_or_else(|| vec![Q::zero(); dim]);
                g[a][b] = linalg::dot(&p, &self.integral);
            }
        }
        let g_inv = linalg::inverse(&g).ok_or(Error::SingularPairing)?;
        let mut triple = BTreeMap::new();
        for a in 0..dim {
            for b in a..dim {
                let Some(ab) = self.basis_product(a, b) else { continue };
                for c in b..dim {
                    let mut v = Q::zero();
                    for (x, coef) in ab.iter().enumerate() {
                        if coef.is_zero() {
                            continue;
                        }
                        if let Some(xc) = self.basis_product(x, c) {
                            v += coef * linalg::dot(&xc, &self.integral);
                        }
                    }
                    if !v.is_zero() {
                        triple.insert((a, b, c), v);
                    }
                }
            }
        }
        Ok(PairingData { g, g_inv, triple })
    }
}

pub fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}

/// Pairing `g_ij = ∫ T_i T_j`, its inverse, and the sparse triple intersection table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingData {
    pub g: Vec<Vec<Q>>,
    pub g_inv: Vec<Vec<Q>>,
    /// `g_abc` keyed by sorted index triple.
    pub triple: BTreeMap<(usize, usize, usize), Q>,
}

impl PairingData {
    pub fn triple(&self, a: usize, b: usize, c: usize) -> Q {
        let mut k = [a, b, c];
        k.sort_unstable();
        self.triple.get(&(k[0], k[1], k[2])).cloned().unwrap_or_else(Q::zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    DuplicateLabel(String),
    CodimOutOfRange { label: String, codim: u32 },
    IdentityNotFirst,
    MultipleIdentities,
    BasisOrder { label: String },
    NoDivisors,
    SocleTooSmall(u32),
    MissingProduct { a: String, b: String },
    WrongLength { a: String, b: String },
    IdentityLaw { a: String },
    NotGraded { a: String, b: String },
    NotAssociative { a: String, b: String, c: String },
    TopRank(usize),
    IntegralBelowTop { label: String },
    IntegralZeroOnTop,
    SingularPairing,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "basis is empty"),
            Violation::DuplicateLabel(l) => write!(f, "duplicate basis label `{l}`"),
            Violation::CodimOutOfRange { label, codim } => {
                write!(f, "codimension {codim} of `{label}` exceeds the socle degree")
            }
            Violation::IdentityNotFirst => write!(f, "first basis element must have codimension 0"),
            Violation::MultipleIdentities => write!(f, "more than one basis element of codimension 0"),
            Violation::BasisOrder { label } => {
                write!(f, "basis not in nondecreasing codimension order at `{label}`")
            }
            Violation::NoDivisors => write!(f, "codimension one piece is zero"),
            Violation::SocleTooSmall(n) => write!(f, "socle degree {n} is below 2"),
            Violation::MissingProduct { a, b } => write!(f, "product {a} * {b} is not listed"),
            Violation::WrongLength { a, b } => write!(f, "product {a} * {b} has the wrong length"),
            Violation::IdentityLaw { a } => write!(f, "identity does not act trivially on `{a}`"),
            Violation::NotGraded { a, b } => write!(f, "product {a} * {b} is not homogeneous of the expected codimension"),
            Violation::NotAssociative { a, b, c } => write!(f, "({a} * {b}) * {c} != {a} * ({b} * {c})"),
            Violation::TopRank(k) => write!(f, "socle piece has rank {k}, expected 1"),
            Violation::IntegralBelowTop { label } => write!(f, "integral of `{label}` is nonzero below the socle"),
            Violation::IntegralZeroOnTop => write!(f, "integral vanishes on the socle"),
            Violation::SingularPairing => write!(f, "pairing singular"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "pass");
        }
        write!(f, "fail: ")?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every standing hypothesis on the algebra. Failures are collected,
/// never raised.
pub fn validate_algebra(alg: &GradedAlgebra) -> ValidationReport {
    let mut out = Vec::new();
    let dim = alg.dim();
    if dim == 0 {
        return ValidationReport { violations: vec![Violation::Empty] };
    }
    for (i, l) in alg.labels.iter().enumerate() {
        if alg.labels[..i].contains(l) {
            out.push(Violation::DuplicateLabel(l.clone()));
        }
    }
    if alg.n < 2 {
        out.push(Violation::SocleTooSmall(alg.n));
    }
    for (l, &c) in alg.labels.iter().zip(&alg.codims) {
        if c > alg.n {
            out.push(Violation::CodimOutOfRange { label: l.clone(), codim: c });
        }
    }
    if alg.codims[0] != 0 {
        out.push(Violation::IdentityNotFirst);
    }
    if alg.codims.iter().filter(|&&c| c == 0).count() > 1 {
        out.push(Violation::MultipleIdentities);
    }
    for i in 1..dim {
        if alg.codims[i] < alg.codims[i - 1] {
            out.push(Violation::BasisOrder { label: alg.labels[i].clone() });
        }
    }
    if !alg.codims.contains(&1) {
        out.push(Violation::NoDivisors);
    }
    if !out.is_empty() {
        return ValidationReport { violations: out };
    }

    let label = |i: usize| alg.labels[i].clone();
    let mut table = vec![vec![None; dim]; dim];
    for a in 0..dim {
        for b in a..dim {
            match alg.basis_product(a, b) {
                None => out.push(Violation::MissingProduct { a: label(a), b: label(b) }),
                Some(v) if v.len() != dim => out.push(Violation::WrongLength { a: label(a), b: label(b) }),
                Some(v) => {
                    let target = alg.codims[a] + alg.codims[b];
                    let graded = v
                        .iter()
                        .enumerate()
                        .all(|(x, c)| c.is_zero() || alg.codims[x] == target);
                    if !graded {
                        out.push(Violation::NotGraded { a: label(a), b: label(b) });
                    }
                    if a == 0 && v != unit(dim, b) {
                        out.push(Violation::IdentityLaw { a: label(b) });
                    }
                    table[a][b] = Some(v.clone());
                    table[b][a] = Some(v);
                }
            }
        }
    }
    if !out.is_empty() {
        return ValidationReport { violations: out };
    }
    let table: Vec<Vec<Vec<Q>>> = table
        .into_iter()
        .map(|row| row.into_iter().map(Option::unwrap).collect())
        .collect();
    let mul = |x: &[Q], b: usize| -> Vec<Q> {
        let mut acc = vec![Q::zero(); dim];
        for (a, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, v) in table[a][b].iter().enumerate() {
                if !v.is_zero() {
                    acc[k] += c * v;
                }
            }
        }
        acc
    };
    'assoc: for a in 1..dim {
        for b in a..dim {
            for c in 1..dim {
                if alg.codims[a] + alg.codims[b] + alg.codims[c] > alg.n {
                    continue;
                }
                let left = mul(&table[a][b], c);
                let right = mul(&table[b][c], a);
                if left != right {
                    out.push(Violation::NotAssociative { a: label(a), b: label(b), c: label(c) });
                    break 'assoc;
                }
            }
        }
    }

    let top: Vec<usize> = (0..dim).filter(|&i| alg.codims[i] == alg.n).collect();
    if top.len() != 1 {
        out.push(Violation::TopRank(top.len()));
    }
    for i in 0..dim {
        if alg.codims[i] < alg.n && !alg.integral[i].is_zero() {
            out.push(Violation::IntegralBelowTop { label: label(i) });
        }
    }
    if top.len() == 1 && alg.integral[top[0]].is_zero() {
        out.push(Violation::IntegralZeroOnTop);
    }
    if alg.inverse_pairing().is_err() {
        out.push(Violation::SingularPairing);
    }
    ValidationReport { violations: out }
}

/// A validated algebra with precomputed multiplication and pairing data.
#[derive(Debug, Clone)]
pub struct Algebra {
    raw: GradedAlgebra,
    table: Vec<Vec<SparseVec>>,
    pairing: PairingData,
    r: usize,
    /// Nonzero entries of the inverse pairing, `(e, f, g^ef)`.
    ginv_entries: Vec<(usize, usize, Q)>,
}

impl Algebra {
    pub fn new(raw: GradedAlgebra) -> std::result::Result<Self, ValidationReport> {
        let report = validate_algebra(&raw);
        if !report.is_ok() {
            return Err(report);
        }
        let dim = raw.dim();
        let table = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| {
                        raw.basis_product(a, b)
                            .expect("validated")
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let pairing = raw.inverse_pairing().expect("validated");
        let r = raw.codims.iter().filter(|&&c| c == 1).count();
        let mut ginv_entries = Vec::new();
        for e in 0..dim {
            for f in 0..dim {
                if !pairing.g_inv[e][f].is_zero() {
                    ginv_entries.push((e, f, pairing.g_inv[e][f].clone()));
                }
            }
        }
        Ok(Algebra { raw, table, pairing, r, ginv_entries })
    }

    pub fn raw(&self) -> &GradedAlgebra {
        &self.raw
    }

    pub fn name(&self) -> &str {
        &self.raw.name
    }

    pub fn dim(&self) -> usize {
        self.raw.dim()
    }

    /// Socle degree.
    pub fn n(&self) -> u32 {
        self.raw.n
    }

    /// Rank of the codimension one piece.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of basis elements of codimension at least two.
    pub fn s(&self) -> usize {
        self.dim() - 1 - self.r
    }

    pub fn codim(&self, i: usize) -> u32 {
        self.raw.codims[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.raw.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.raw.index_of(label)
    }

    /// Coordinate of `β` paired with this divisor, if `i` is a divisor index.
    pub fn sigma_slot(&self, i: usize) -> Option<usize> {
        (1..=self.r).contains(&i).then(|| i - 1)
    }

    /// Position among the insertion slots `d_1..d_s`, if `i` has codim >= 2.
    pub fn tau_slot(&self, i: usize) -> Option<usize> {
        (i > self.r).then(|| i - self.r - 1)
    }

    pub fn tau_index(&self, slot: usize) -> usize {
        slot + self.r + 1
    }

    /// Weights `codim τ_j - 1` of the insertion slots.
    pub fn tau_weights(&self) -> Vec<u32> {
        (0..self.s()).map(|j| self.codim(self.tau_index(j)) - 1).collect()
    }

    pub fn basis_product(&self, a: usize, b: usize) -> &SparseVec {
        &self.table[a][b]
    }

    pub fn pairing(&self) -> &PairingData {
        &self.pairing
    }

    pub fn ginv_entries(&self) -> &[(usize, usize, Q)] {
        &self.ginv_entries
    }

    pub fn unit(&self, i: usize) -> Vec<Q> {
        unit(self.dim(), i)
    }

    pub fn multiply(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut acc = vec![Q::zero(); self.dim()];
        for (a, ca) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, cb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let w = ca * cb;
                for (k, v) in &self.table[a][b] {
                    acc[*k] += &w * v;
                }
            }
        }
        acc
    }

    pub fn integral(&self, x: &[Q]) -> Q {
        linalg::dot(x, &self.raw.integral)
    }

    pub fn triple_integral(&self, a: usize, b: usize, c: usize) -> Q {
        self.pairing.triple(a, b, c)
    }

    /// True iff iterated products of divisor classes span every graded piece.
    pub fn is_generated_by_divisors(&self) -> bool {
        let dim = self.dim();
        let n = self.n() as usize;
        let mut piece: Vec<Vec<Q>> = (1..=self.r).map(|i| self.unit(i)).collect();
        for k in 1..=n {
            let expected = (0..dim).filter(|&i| self.codim(i) as usize == k).count();
            if linalg::rank(&piece) != expected {
                return false;
            }
            let mut next = Vec::new();
            for v in &piece {
                for i in 1..=self.r {
                    next.push(self.multiply(v, &self.unit(i)));
                }
            }
            let mut work = next.clone();
            let pivots = linalg::rref(&mut work);
            piece = work.into_iter().take(pivots.len()).collect();
        }
        true
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.raw == other.raw
    }
}

/// One-shot helper: validated algebra or an error carrying the report text.
pub fn validated(raw: GradedAlgebra) -> Result<Algebra> {
    Algebra::new(raw).map_err(|r| Error::InvalidAlgebra(r.to_string()))
}
