//! The data fixing one system of associativity relations: algebra, cone,
//! and the dimension filter (canonical class or an explicit insertion bound).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::Algebra;
use crate::degrees::{self, CanonicalClass, Cone, CurveClass, Degree};
use crate::error::{Error, Result};
use crate::linalg::{self, Q};

#[derive(Debug)]
pub struct Problem {
    algebra: Algebra,
    cone: Cone,
    canonical: Option<CanonicalClass>,
    dbound: Option<u32>,
    weights: Vec<u32>,
    splits: Mutex<HashMap<CurveClass, Arc<Vec<(CurveClass, CurveClass)>>>>,
    targets: Mutex<HashMap<i64, Arc<Vec<Vec<u32>>>>>,
}

impl Clone for Problem {
    fn clone(&self) -> Self {
        Problem::new(self.algebra.clone(), self.cone.clone(), self.canonical.clone(), self.dbound)
            .expect("already validated")
    }
}

impl Problem {
    pub fn new(
        algebra: Algebra,
        cone: Cone,
        canonical: Option<CanonicalClass>,
        dbound: Option<u32>,
    ) -> Result<Problem> {
        if cone.dim() != algebra.r() {
            return Err(Error::Dimension { expected: algebra.r(), got: cone.dim() });
        }
        if let Some(k) = &canonical {
            if k.k.len() != algebra.r() {
                return Err(Error::Dimension { expected: algebra.r(), got: k.k.len() });
            }
        }
        if canonical.is_none() && dbound.is_none() {
            return Err(Error::MissingBound);
        }
        let weights = algebra.tau_weights();
        Ok(Problem {
            algebra,
            cone,
            canonical,
            dbound,
            weights,
            splits: Mutex::new(HashMap::new()),
            targets: Mutex::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn canonical(&self) -> Option<&CanonicalClass> {
        self.canonical.as_ref()
    }

    pub fn dbound(&self) -> Option<u32> {
        self.dbound
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn omega_pairing(&self, beta: &CurveClass) -> i64 {
        self.cone.omega_pairing(beta)
    }

    /// Required weighted insertion count of an admissible `N(β;·)`.
    pub fn number_target(&self, beta: &CurveClass) -> Option<i64> {
        self.canonical.as_ref().and_then(|k| degrees::number_target(&self.algebra, beta, k))
    }

    /// Dimension filter. Without a canonical class every number is admissible.
    pub fn is_admissible(&self, v: &Degree) -> bool {
        match &self.canonical {
            None => true,
            Some(_) => self.number_target(&v.beta) == Some(degrees::weighted(&v.d, &self.weights)),
        }
    }

    fn weighted_list(&self, target: i64) -> Arc<Vec<Vec<u32>>> {
        let mut cache = self.targets.lock().expect("cache poisoned");
        cache
            .entry(target)
            .or_insert_with(|| Arc::new(degrees::weighted_vectors(&self.weights, target)))
            .clone()
    }

    /// Admissible insertion vectors in class `β`.
    pub fn admissible_degrees(&self, beta: &CurveClass) -> Arc<Vec<Vec<u32>>> {
        match &self.canonical {
            Some(_) => match self.number_target(beta) {
                Some(t) => self.weighted_list(t),
                None => Arc::new(Vec::new()),
            },
            None => Arc::new(degrees::bounded_vectors(self.algebra.s(), self.dbound.unwrap_or(0))),
        }
    }

    /// Degrees at which a relation with total entry codimension `total` can be nontrivial.
    pub fn relation_degrees(&self, beta: &CurveClass, total: u32) -> Arc<Vec<Vec<u32>>> {
        match &self.canonical {
            Some(k) => match degrees::relation_target(&self.algebra, beta, total, k) {
                Some(t) => self.weighted_list(t),
                None => Arc::new(Vec::new()),
            },
            None => Arc::new(degrees::bounded_vectors(self.algebra.s(), self.dbound.unwrap_or(0))),
        }
    }

    pub fn classes_up_to(&self, bound: &Q) -> Vec<CurveClass> {
        self.cone.curve_classes_up_to(bound)
    }

    /// Ordered splittings `β = β₁ + β₂` with both parts in the cone.
    pub fn splittings(&self, beta: &CurveClass) -> Arc<Vec<(CurveClass, CurveClass)>> {
        if let Some(s) = self.splits.lock().expect("cache poisoned").get(beta) {
            return s.clone();
        }
        let w = self.omega_pairing(beta);
        let mut out = Vec::new();
        for b1 in self.classes_up_to(&linalg::q(w - 1)) {
            let b2 = beta.sub(&b1);
            if self.cone.contains(&b2) {
                out.push((b1, b2));
            }
        }
        let out = Arc::new(out);
        self.splits.lock().expect("cache poisoned").insert(beta.clone(), out.clone());
        out
    }
}
