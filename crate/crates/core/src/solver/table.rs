use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::degrees::{CurveClass, Degree};
use crate::linalg::Q;

/// Values of the unknowns, with the user-fixed and free-parameter bookkeeping.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolutionTable {
    pub algebra: String,
    pub status: String,
    values: BTreeMap<Degree, Q>,
    pins: BTreeSet<Degree>,
    free: BTreeSet<Degree>,
}

impl SolutionTable {
    pub fn new(algebra: &str) -> Self {
        SolutionTable { algebra: algebra.to_string(), status: "partial".to_string(), ..Default::default() }
    }

    pub fn get(&self, v: &Degree) -> Option<&Q> {
        self.values.get(v)
    }

    pub fn contains(&self, v: &Degree) -> bool {
        self.values.contains_key(v)
    }

    pub fn insert(&mut self, v: Degree, value: Q) {
        self.values.insert(v, value);
    }

    /// Inserts and marks the value as fixed by the user.
    pub fn pin(&mut self, v: Degree, value: Q) {
        self.pins.insert(v.clone());
        self.values.insert(v, value);
    }

    pub fn mark_free(&mut self, v: Degree) {
        self.free.insert(v);
    }

    pub fn is_pinned(&self, v: &Degree) -> bool {
        self.pins.contains(v)
    }

    pub fn values(&self) -> impl Iterator<Item = (&Degree, &Q)> {
        self.values.iter()
    }

    pub fn pins(&self) -> impl Iterator<Item = &Degree> {
        self.pins.iter()
    }

    pub fn free(&self) -> impl Iterator<Item = &Degree> {
        self.free.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values_in(&self, beta: &CurveClass) -> impl Iterator<Item = (&Degree, &Q)> + '_ {
        let beta = beta.clone();
        self.values.iter().filter(move |(v, _)| v.beta == beta)
    }

    /// Entries ordered by `(⟨β,ω⟩, β, d)`.
    pub fn sorted_entries(&self, omega: &[i64]) -> Vec<(&Degree, &Q)> {
        let mut out: Vec<(&Degree, &Q)> = self.values.iter().collect();
        out.sort_by(|(a, _), (b, _)| a.beta.dot(omega).cmp(&b.beta.dot(omega)).then_with(|| a.cmp(b)));
        out
    }

    /// Applies `f` to every key, keeping values and bookkeeping.
    pub fn map_keys(&self, f: impl Fn(&Degree) -> Degree) -> SolutionTable {
        SolutionTable {
            algebra: self.algebra.clone(),
            status: self.status.clone(),
            values: self.values.iter().map(|(k, v)| (f(k), v.clone())).collect(),
            pins: self.pins.iter().map(&f).collect(),
            free: self.free.iter().map(&f).collect(),
        }
    }

    pub fn map_values(&self, f: impl Fn(&Degree, &Q) -> Q) -> SolutionTable {
        let mut out = self.clone();
        for (k, v) in out.values.iter_mut() {
            *v = f(k, v);
        }
        out
    }
}

/// `N(β;d) ↦ (∏ λ_i^{b_i}) N(β;d)`.
pub fn rescale_table(table: &SolutionTable, lambdas: &[Q]) -> SolutionTable {
    table.map_values(|k, v| {
        let mut scale = Q::one();
        for (l, &b) in lambdas.iter().zip(&k.beta.0) {
            scale *= num_traits::pow::Pow::pow(l, b as i32);
        }
        if v.is_zero() {
            v.clone()
        } else {
            scale * v
        }
    })
}

/// Induced map of a graded automorphism that permutes the divisor basis and the
/// higher basis: `beta_perm[i]` is the image slot of divisor `i`, likewise `tau_perm`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisPermutation {
    pub beta_perm: Vec<usize>,
    pub tau_perm: Vec<usize>,
}

impl BasisPermutation {
    pub fn apply(&self, v: &Degree) -> Degree {
        let mut b = vec![0i64; v.beta.0.len()];
        for (i, &x) in v.beta.0.iter().enumerate() {
            b[self.beta_perm[i]] = x;
        }
        let mut d = vec![0u32; v.d.len()];
        for (j, &x) in v.d.iter().enumerate() {
            d[self.tau_perm[j]] = x;
        }
        Degree { beta: CurveClass(b), d }
    }
}

pub fn permute_table(table: &SolutionTable, perm: &BasisPermutation) -> SolutionTable {
    table.map_keys(|k| perm.apply(k))
}
