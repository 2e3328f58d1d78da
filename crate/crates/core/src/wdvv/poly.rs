use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::degrees::Degree;
use crate::error::{Error, Result};
use crate::linalg::Q;

/// An unknown `N(β;d)`.
pub type NVar = Degree;

/// Sparse polynomial of degree at most two with no constant term.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuadPoly {
    pub linear: BTreeMap<NVar, Q>,
    /// Keys are ordered pairs `(v, w)` with `v <= w`.
    pub quadratic: BTreeMap<(NVar, NVar), Q>,
}

fn bump<K: Ord>(map: &mut BTreeMap<K, Q>, key: K, c: Q) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl QuadPoly {
    pub fn zero() -> Self {
        QuadPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.linear.is_empty() && self.quadratic.is_empty()
    }

    pub fn add_linear(&mut self, v: NVar, c: Q) {
        bump(&mut self.linear, v, c);
    }

    pub fn add_quadratic(&mut self, v: NVar, w: NVar, c: Q) {
        let key = if v <= w { (v, w) } else { (w, v) };
        bump(&mut self.quadratic, key, c);
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &QuadPoly, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (v, x) in &other.linear {
            bump(&mut self.linear, v.clone(), x * c);
        }
        for (k, x) in &other.quadratic {
            bump(&mut self.quadratic, k.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &Q) -> QuadPoly {
        let mut out = QuadPoly::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn linear_part(&self) -> QuadPoly {
        QuadPoly { linear: self.linear.clone(), quadratic: BTreeMap::new() }
    }

    pub fn quadratic_part(&self) -> QuadPoly {
        QuadPoly { linear: BTreeMap::new(), quadratic: self.quadratic.clone() }
    }

    /// Coefficient used for sign normalization: first linear, else first quadratic.
    pub fn leading_coefficient(&self) -> Option<&Q> {
        self.linear.values().next().or_else(|| self.quadratic.values().next())
    }

    /// Flips the sign so the leading coefficient is positive. Returns the applied sign.
    pub fn normalize_sign(&mut self) -> i8 {
        if self.leading_coefficient().is_some_and(|c| c.is_negative()) {
            *self = self.scaled(&-Q::one());
            -1
        } else {
            1
        }
    }

    pub fn variables(&self) -> Vec<&NVar> {
        let mut out: Vec<&NVar> = self.linear.keys().collect();
        for (v, w) in self.quadratic.keys() {
            out.push(v);
            out.push(w);
        }
        out.sort();
        out.dedup();
        out
    }

    /// Evaluates with `lookup` supplying variable values.
    pub fn evaluate(&self, mut lookup: impl FnMut(&NVar) -> Option<Q>) -> Result<Q> {
        let mut get = |v: &NVar| lookup(v).ok_or_else(|| Error::MissingValue(v.clone()));
        let mut acc = Q::zero();
        for (v, c) in &self.linear {
            acc += c * get(v)?;
        }
        for ((v, w), c) in &self.quadratic {
            acc += c * get(v)? * get(w)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms = self
            .linear
            .iter()
            .map(|(v, c)| (c, v.to_string()))
            .chain(self.quadratic.iter().map(|((v, w), c)| {
                if v == w {
                    (c, format!("{v}^2"))
                } else {
                    (c, format!("{v}*{w}"))
                }
            }));
        for (i, (c, mono)) in terms.enumerate() {
            let (sign, abs) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}
