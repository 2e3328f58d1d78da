//! Coefficient extraction for the associativity relations.
//!
//! `Γ_abc` is the third derivative of the quantum part of the potential. Its
//! coefficient at `e^{β·y} ∏ y^d / d!` is `∏ β_x · N(β; d + Σ e_x)`, the product
//! running over divisor indices and the shift over higher indices.
//! A relation `⟨ijkl⟩(β;d)` is the coefficient of
//! `Σ Φ_ije g^ef Φ_fkl - Σ Φ_jke g^ef Φ_fil`, classical terms dropped.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::degrees::{self, CurveClass, Degree};
use crate::linalg::Q;
use crate::problem::Problem;

use super::poly::{NVar, QuadPoly};

/// One canonical relation: a symmetry-orbit representative at a degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelationId {
    pub tuple: [usize; 4],
    pub degree: Degree,
    /// Sign applied to `Rel(tuple)` to get the stored polynomial.
    pub sign: i8,
}

impl RelationId {
    pub fn describe(&self, alg: &Algebra) -> String {
        let [i, j, k, l] = self.tuple;
        let body = format!(
            "<{} {} {} {}>({};{})",
            alg.label(i),
            alg.label(j),
            alg.label(k),
            alg.label(l),
            self.degree.beta,
            join(&self.degree.d)
        );
        if self.sign < 0 {
            format!("-{body}")
        } else {
            body
        }
    }
}

fn join(d: &[u32]) -> String {
    d.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k, l] = self.tuple;
        if self.sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "<{i} {j} {k} {l}>({};{})", self.degree.beta, join(&self.degree.d))
    }
}

/// Divisor factor and insertion shift contributed by a list of basis indices.
/// `None` when an index is the identity or a divisor pairs to zero with `β`.
fn insertion(alg: &Algebra, idx: &[usize], beta: &CurveClass) -> Option<(i64, Vec<u32>)> {
    let mut factor = 1i64;
    let mut shift = vec![0u32; alg.s()];
    for &x in idx {
        if x == 0 {
            return None;
        }
        if let Some(slot) = alg.sigma_slot(x) {
            factor *= beta.0[slot];
        } else if let Some(slot) = alg.tau_slot(x) {
            shift[slot] += 1;
        }
    }
    (factor != 0).then_some((factor, shift))
}

fn add(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Coefficient of `Γ_abc` at `(β;d)` as factor times one unknown, or `None`
/// when it vanishes (identity index, zero factor, inadmissible unknown).
pub fn gamma_coefficient(
    p: &Problem,
    a: usize,
    b: usize,
    c: usize,
    beta: &CurveClass,
    d: &[u32],
) -> Option<(Q, NVar)> {
    let (factor, shift) = insertion(p.algebra(), &[a, b, c], beta)?;
    let v = Degree { beta: beta.clone(), d: add(d, &shift) };
    p.is_admissible(&v).then(|| (Q::from_integer(factor.into()), v))
}

/// Calls `sink` with every term of `Γ_{ij(kl)} + Γ_{(ij)kl} - Γ_{jk(il)} - Γ_{(jk)il}` at `(β;d)`.
pub fn linear_terms(p: &Problem, t: [usize; 4], beta: &CurveClass, d: &[u32], sink: &mut dyn FnMut(Q, NVar)) {
    let alg = p.algebra();
    let [i, j, k, l] = t;
    let parts: [(bool, [usize; 2], [usize; 2]); 4] = [
        (true, [i, j], [k, l]),
        (true, [k, l], [i, j]),
        (false, [j, k], [i, l]),
        (false, [i, l], [j, k]),
    ];
    for (positive, outer, inner) in parts {
        for (q, coef) in alg.basis_product(inner[0], inner[1]) {
            if let Some((f, v)) = gamma_coefficient(p, outer[0], outer[1], *q, beta, d) {
                let c = coef * f;
                sink(if positive { c } else { -c }, v);
            }
        }
    }
}

/// Small exact binomial.
fn binom(n: u32, k: u32) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * u128::from(n - t) / u128::from(t + 1);
    }
    acc
}

/// All `δ <= d` componentwise, optionally with a fixed weighted size.
fn sub_vectors(d: &[u32], weights: &[u32], weight: Option<i64>, f: &mut dyn FnMut(&[u32])) {
    fn go(
        d: &[u32],
        weights: &[u32],
        k: usize,
        left: Option<i64>,
        cur: &mut Vec<u32>,
        f: &mut dyn FnMut(&[u32]),
    ) {
        if k == d.len() {
            if left.map_or(true, |l| l == 0) {
                f(cur);
            }
            return;
        }
        let w = i64::from(weights[k]);
        let mut max = d[k];
        if let Some(l) = left {
            if l < 0 {
                return;
            }
            if w > 0 {
                max = max.min((l / w) as u32);
            }
        }
        for x in 0..=max {
            cur.push(x);
            go(d, weights, k + 1, left.map(|l| l - w * i64::from(x)), cur, f);
            cur.pop();
        }
    }
    go(d, weights, 0, weight, &mut Vec::with_capacity(d.len()), f);
}

/// Coefficient at `(β;d)` of `Σ c · Γ_{x0 x1 a} Γ_{b y0 y1}` over `(a, b, c)` in `mid`.
/// Products of the two series split `β = β1 + β2` over the cone and `d = δ1 + δ2`
/// with weight `∏ C(d_m, δ1_m)`.
pub fn product_terms(
    p: &Problem,
    x: [usize; 2],
    y: [usize; 2],
    mid: &[(usize, usize, Q)],
    beta: &CurveClass,
    d: &[u32],
    sink: &mut dyn FnMut(Q, NVar, NVar),
) {
    let alg = p.algebra();
    let w = p.weights();
    let dw = degrees::weighted(d, w);
    let filtered = p.canonical().is_some();
    for (b1, b2) in p.splittings(beta).iter() {
        let (t1, t2) = (p.number_target(b1), p.number_target(b2));
        if filtered && (t1.is_none() || t2.is_none()) {
            continue;
        }
        for (a, b, c) in mid {
            let Some((f1, s1)) = insertion(alg, &[x[0], x[1], *a], b1) else { continue };
            let Some((f2, s2)) = insertion(alg, &[*b, y[0], y[1]], b2) else { continue };
            let want1 = if filtered {
                let need1 = t1.unwrap() - degrees::weighted(&s1, w);
                let need2 = t2.unwrap() - degrees::weighted(&s2, w);
                if need1 < 0 || need2 < 0 || need1 + need2 != dw {
                    continue;
                }
                Some(need1)
            } else {
                None
            };
            let base = c * Q::from_integer(BigInt::from(f1) * BigInt::from(f2));
            sub_vectors(d, w, want1, &mut |delta| {
                let mut weight: u128 = 1;
                for (dm, em) in d.iter().zip(delta) {
                    weight *= binom(*dm, *em);
                }
                let v1 = Degree { beta: b1.clone(), d: add(delta, &s1) };
                let rest: Vec<u32> = d.iter().zip(delta).map(|(a, b)| a - b).collect();
                let v2 = Degree { beta: b2.clone(), d: add(&rest, &s2) };
                sink(&base * Q::from_integer(BigInt::from(weight)), v1, v2);
            });
        }
    }
}

/// Terms of the quadratic part of `Rel(t)`, i.e. of `-(Σ Γ_jke g^ef Γ_fil - Σ Γ_ije g^ef Γ_fkl)`.
pub fn relation_quadratic_terms(
    p: &Problem,
    t: [usize; 4],
    beta: &CurveClass,
    d: &[u32],
    sink: &mut dyn FnMut(Q, NVar, NVar),
) {
    let [i, j, k, l] = t;
    let ginv = p.algebra().ginv_entries();
    product_terms(p, [i, j], [k, l], ginv, beta, d, sink);
    product_terms(p, [j, k], [i, l], ginv, beta, d, &mut |c, v, w| sink(-c, v, w));
}

pub fn linear_contribution(p: &Problem, t: [usize; 4], beta: &CurveClass, d: &[u32]) -> QuadPoly {
    let mut out = QuadPoly::zero();
    linear_terms(p, t, beta, d, &mut |c, v| out.add_linear(v, c));
    out
}

/// `Σ Γ_jke g^ef Γ_fil - Σ Γ_ije g^ef Γ_fkl` at `(β;d)`.
pub fn quadratic_contribution(p: &Problem, t: [usize; 4], beta: &CurveClass, d: &[u32]) -> QuadPoly {
    let mut out = QuadPoly::zero();
    relation_quadratic_terms(p, t, beta, d, &mut |c, v, w| out.add_quadratic(v, w, -c));
    out
}

/// `Rel(t)(β;d)` = linear contribution minus quadratic contribution.
pub fn build_basis_relation(p: &Problem, t: [usize; 4], beta: &CurveClass, d: &[u32]) -> QuadPoly {
    let mut out = QuadPoly::zero();
    if t.contains(&0) {
        return out;
    }
    linear_terms(p, t, beta, d, &mut |c, v| out.add_linear(v, c));
    relation_quadratic_terms(p, t, beta, d, &mut |c, v, w| out.add_quadratic(v, w, c));
    out
}

/// `⟨ξπρσ⟩(β;d)` for coordinate vectors, extended multilinearly.
pub fn build_relation(p: &Problem, entries: [&[Q]; 4], beta: &CurveClass, d: &[u32]) -> QuadPoly {
    let support = |v: &[Q]| -> Vec<(usize, Q)> {
        v.iter()
            .enumerate()
            .filter(|(x, c)| *x != 0 && !c.is_zero())
            .map(|(x, c)| (x, c.clone()))
            .collect()
    };
    let s: Vec<Vec<(usize, Q)>> = entries.iter().map(|v| support(v)).collect();
    let mut out = QuadPoly::zero();
    for (i, ci) in &s[0] {
        for (j, cj) in &s[1] {
            for (k, ck) in &s[2] {
                for (l, cl) in &s[3] {
                    let rel = build_basis_relation(p, [*i, *j, *k, *l], beta, d);
                    out.add_scaled(&rel, &(ci * cj * ck * cl));
                }
            }
        }
    }
    out
}

/// Orbit of a tuple under the order-8 symmetry group, with the sign relating
/// each member's relation to the starting one.
pub fn orbit(t: [usize; 4]) -> Vec<([usize; 4], i8)> {
    let moves: [(fn([usize; 4]) -> [usize; 4], i8); 3] = [
        (|[i, j, k, l]| [j, i, l, k], 1),
        (|[i, j, k, l]| [k, j, i, l], -1),
        (|[i, j, k, l]| [i, l, k, j], -1),
    ];
    let mut seen: Vec<([usize; 4], i8)> = vec![(t, 1)];
    let mut queue = VecDeque::from([(t, 1i8)]);
    while let Some((u, s)) = queue.pop_front() {
        for (g, gs) in &moves {
            let v = g(u);
            let vs = s * gs;
            if !seen.iter().any(|(w, ws)| *w == v && *ws == vs) {
                seen.push((v, vs));
                queue.push_back((v, vs));
            }
        }
    }
    seen
}

/// Lexicographically smallest orbit member, the sign `Rel(t) = sign · Rel(rep)`,
/// and whether the orbit forces `Rel(t) = -Rel(t)`.
pub fn canonical_tuple(t: [usize; 4]) -> ([usize; 4], i8, bool) {
    let orb = orbit(t);
    let self_negating = orb.iter().any(|(u, s)| *u == t && *s < 0);
    let (rep, s) = orb.iter().min_by_key(|(u, _)| *u).copied().expect("nonempty orbit");
    (rep, s, self_negating)
}

/// Orbit representatives over non-identity indices with `k != i`, `l != j`.
pub fn canonical_tuples(alg: &Algebra) -> Vec<[usize; 4]> {
    let dim = alg.dim();
    let mut out = Vec::new();
    for i in 1..dim {
        for j in 1..dim {
            for k in 1..dim {
                for l in 1..dim {
                    if k == i || l == j {
                        continue;
                    }
                    let t = [i, j, k, l];
                    let (rep, _, neg) = canonical_tuple(t);
                    if rep == t && !neg {
                        out.push(t);
                    }
                }
            }
        }
    }
    out
}

fn total_codim(alg: &Algebra, t: [usize; 4]) -> u32 {
    t.iter().map(|&x| alg.codim(x)).sum()
}

/// Every `(tuple, d)` at which a canonical relation in class `β` can be nontrivial,
/// in deterministic order.
pub fn relation_instances(p: &Problem, beta: &CurveClass) -> Vec<([usize; 4], Vec<u32>)> {
    let mut out = Vec::new();
    for t in canonical_tuples(p.algebra()) {
        for d in p.relation_degrees(beta, total_codim(p.algebra(), t)).iter() {
            out.push((t, d.clone()));
        }
    }
    out
}

fn finish(p: &Problem, t: [usize; 4], beta: &CurveClass, d: &[u32]) -> Option<(RelationId, QuadPoly)> {
    let (id, poly) = finish_keep_zero(p, t, beta, d);
    (!poly.is_zero()).then_some((id, poly))
}

fn finish_keep_zero(p: &Problem, t: [usize; 4], beta: &CurveClass, d: &[u32]) -> (RelationId, QuadPoly) {
    let mut poly = build_basis_relation(p, t, beta, d);
    let sign = if poly.is_zero() { 1 } else { poly.normalize_sign() };
    (RelationId { tuple: t, degree: Degree { beta: beta.clone(), d: d.to_vec() }, sign }, poly)
}

/// One representative per symmetry orbit at every relevant degree in class `β`,
/// identically zero relations removed.
pub fn enumerate_relations(p: &Problem, beta: &CurveClass) -> Vec<(RelationId, QuadPoly)> {
    relation_instances(p, beta)
        .into_par_iter()
        .filter_map(|(t, d)| finish(p, t, beta, &d))
        .collect()
}

/// Whether `t` has the seed shape `⟨A, A¹, A, A¹⟩`.
fn seed_shape(alg: &Algebra, t: [usize; 4]) -> bool {
    alg.sigma_slot(t[1]).is_some() && alg.sigma_slot(t[3]).is_some()
}

/// Canonical relations `⟨A,A¹,A,A¹⟩(β;0)`: orbits that meet the seed shape and
/// pass the dimension condition at `d = 0`. Relations that happen to vanish
/// identically are kept, so the count matches the number of relations imposed.
pub fn enumerate_seed_relations(p: &Problem, beta: &CurveClass) -> Vec<(RelationId, QuadPoly)> {
    let alg = p.algebra();
    let zero = vec![0u32; alg.s()];
    canonical_tuples(alg)
        .into_iter()
        .filter(|t| orbit(*t).iter().any(|(u, _)| seed_shape(alg, *u)))
        .filter(|t| p.relation_degrees(beta, total_codim(alg, *t)).iter().any(|d| *d == zero))
        .map(|t| finish_keep_zero(p, t, beta, &zero))
        .collect()
}

/// The linear part and the value of the quadratic part of `Rel(t)(β;d)`,
/// with lower-class unknowns read through `lookup`.
pub fn relation_row(
    p: &Problem,
    t: [usize; 4],
    beta: &CurveClass,
    d: &[u32],
    lookup: &dyn Fn(&NVar) -> Option<Q>,
) -> Result<(BTreeMap<NVar, Q>, Q), NVar> {
    let mut linear = QuadPoly::zero();
    linear_terms(p, t, beta, d, &mut |c, v| linear.add_linear(v, c));
    let mut value = Q::zero();
    let mut missing: Option<NVar> = None;
    relation_quadratic_terms(p, t, beta, d, &mut |c, v, w| {
        if missing.is_some() {
            return;
        }
        match (lookup(&v), lookup(&w)) {
            (Some(a), Some(b)) => {
                if !a.is_zero() && !b.is_zero() {
                    value += c * a * b;
                }
            }
            (None, _) => missing = Some(v),
            (_, None) => missing = Some(w),
        }
    });
    match missing {
        Some(v) => Err(v),
        None => Ok((linear.linear, value)),
    }
}
