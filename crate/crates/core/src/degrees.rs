//! Curve classes, the effective cone, canonical class and insertion vectors.
//!
//! A curve class is an integer vector over the dual basis of the divisor
//! classes, so its i-th coordinate is its pairing with the i-th divisor.
//! The unknown numbers are indexed by a [`Degree`]: a curve class together with
//! insertion multiplicities `d_j` for the higher basis classes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Q};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveClass(pub Vec<i64>);

impl CurveClass {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    pub fn sub(&self, other: &CurveClass) -> CurveClass {
        CurveClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &CurveClass) -> CurveClass {
        CurveClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn dot(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Index of one unknown `N(β; d)`. Ordered by `β` then `d`, lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree {
    pub beta: CurveClass,
    pub d: Vec<u32>,
}

impl Degree {
    pub fn new(beta: Vec<i64>, d: Vec<u32>) -> Self {
        Degree { beta: CurveClass(beta), d }
    }

    pub fn size(&self) -> u32 {
        self.d.iter().sum()
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N(")?;
        write_list(f, &self.beta.0)?;
        write!(f, ";")?;
        write_list(f, &self.d)?;
        write!(f, ")")
    }
}

/// Weighted insertion count `Σ d_j (codim τ_j - 1)`.
pub fn weighted(d: &[u32], weights: &[u32]) -> i64 {
    d.iter().zip(weights).map(|(&a, &w)| i64::from(a) * i64::from(w)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeGenerators {
    /// V-form; must be linearly independent.
    Rays(Vec<Vec<i64>>),
    /// H-form; `β` is admissible iff every dot product is nonnegative.
    Inequalities(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSpec {
    pub generators: ConeGenerators,
    pub omega: Option<Vec<i64>>,
}

impl ConeSpec {
    pub fn rays(rays: Vec<Vec<i64>>) -> Self {
        ConeSpec { generators: ConeGenerators::Rays(rays), omega: None }
    }

    pub fn inequalities(ineqs: Vec<Vec<i64>>) -> Self {
        ConeSpec { generators: ConeGenerators::Inequalities(ineqs), omega: None }
    }

    pub fn with_omega(mut self, omega: Vec<i64>) -> Self {
        self.omega = Some(omega);
        self
    }
}

/// A validated strongly convex rational cone with its ordering functional `ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    spec: ConeSpec,
    dim: usize,
    ineqs: Vec<Vec<Q>>,
    eqs: Vec<Vec<Q>>,
    rays: Vec<Vec<i64>>,
    omega: Vec<i64>,
}

fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| linalg::q(x)).collect()
}

fn to_i64(v: Vec<BigInt>) -> Result<Vec<i64>> {
    v.into_iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::InvalidCone("coordinate overflow".into())))
        .collect()
}

impl Cone {
    pub fn new(spec: ConeSpec) -> Result<Cone> {
        let (dim, ineqs, eqs, rays) = match &spec.generators {
            ConeGenerators::Rays(rays) => Self::from_rays(rays)?,
            ConeGenerators::Inequalities(h) => Self::from_inequalities(h)?,
        };
        let omega = match &spec.omega {
            Some(w) => {
                if w.len() != dim {
                    return Err(Error::Dimension { expected: dim, got: w.len() });
                }
                w.clone()
            }
            None => {
                let mut sum = vec![Q::zero(); dim];
                for h in &ineqs {
                    for (s, x) in sum.iter_mut().zip(h) {
                        *s += x;
                    }
                }
                to_i64(linalg::primitive_integer(&sum))?
            }
        };
        for ray in &rays {
            if CurveClass(ray.clone()).dot(&omega) <= 0 {
                return Err(Error::UnboundedCone(ray.clone()));
            }
        }
        Ok(Cone { spec, dim, ineqs, eqs, rays, omega })
    }

    fn from_rays(rays: &[Vec<i64>]) -> Result<(usize, Vec<Vec<Q>>, Vec<Vec<Q>>, Vec<Vec<i64>>)> {
        let dim = rays.first().map(Vec::len).ok_or_else(|| Error::InvalidCone("no rays".into()))?;
        if dim == 0 || rays.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidCone("rays have inconsistent dimension".into()));
        }
        let v: Vec<Vec<Q>> = rays.iter().map(|r| to_q(r)).collect();
        if linalg::rank(&v) != rays.len() {
            return Err(Error::InvalidCone(
                "rays are not linearly independent; supply the cone by inequalities instead".into(),
            ));
        }
        // Dual basis inside the span: rows l_i with l_i . v_j = delta_ij.
        let k = rays.len();
        let gram: Vec<Vec<Q>> = (0..k)
            .map(|i| (0..k).map(|j| linalg::dot(&v[i], &v[j])).collect())
            .collect();
        let gram_inv = linalg::inverse(&gram).expect("independent rays");
        let ineqs = linalg::mat_mul(&gram_inv, &v);
        let eqs = linalg::nullspace(&v, dim);
        Ok((dim, ineqs, eqs, rays.to_vec()))
    }

    fn from_inequalities(h: &[Vec<i64>]) -> Result<(usize, Vec<Vec<Q>>, Vec<Vec<Q>>, Vec<Vec<i64>>)> {
        let dim = h.first().map(Vec::len).ok_or_else(|| Error::InvalidCone("no inequalities".into()))?;
        if dim == 0 || h.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidCone("inequalities have inconsistent dimension".into()));
        }
        let hq: Vec<Vec<Q>> = h.iter().map(|r| to_q(r)).collect();
        if linalg::rank(&hq) != dim {
            return Err(Error::InvalidCone("cone contains a line (not strongly convex)".into()));
        }
        let mut rays: Vec<Vec<i64>> = Vec::new();
        for subset in subsets(hq.len(), dim - 1) {
            let rows: Vec<Vec<Q>> = subset.iter().map(|&i| hq[i].clone()).collect();
            let ns = linalg::nullspace(&rows, dim);
            if ns.len() != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let cand: Vec<Q> = ns[0].iter().map(|x| x * linalg::q(sign)).collect();
                if hq.iter().all(|row| !linalg::dot(row, &cand).is_negative()) {
                    let prim = to_i64(linalg::primitive_integer(&cand))?;
                    if !rays.contains(&prim) {
                        rays.push(prim);
                    }
                }
            }
        }
        if rays.is_empty() {
            return Err(Error::InvalidCone("cone contains no nonzero points".into()));
        }
        rays.sort();
        Ok((dim, hq, Vec::new(), rays))
    }

    pub fn spec(&self) -> &ConeSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn omega(&self) -> &[i64] {
        &self.omega
    }

    /// Extreme rays (the given rays in V-form, computed ones in H-form).
    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn omega_pairing(&self, beta: &CurveClass) -> i64 {
        beta.dot(&self.omega)
    }

    /// Membership in `C = Θ ∩ Λ \ {0}`.
    pub fn contains(&self, beta: &CurveClass) -> bool {
        if beta.rank() != self.dim || beta.is_zero() {
            return false;
        }
        let x = to_q(&beta.0);
        self.eqs.iter().all(|e| linalg::dot(e, &x).is_zero())
            && self.ineqs.iter().all(|h| !linalg::dot(h, &x).is_negative())
    }

    /// All `β ∈ C` with `⟨β,ω⟩ <= bound`, sorted by `⟨β,ω⟩` then lexicographically.
    pub fn curve_classes_up_to(&self, bound: &Q) -> Vec<CurveClass> {
        let b = bound.floor().to_integer();
        let Some(b) = b.to_i64() else { return Vec::new() };
        if b <= 0 {
            return Vec::new();
        }
        let boxes: Vec<i64> = (0..self.dim)
            .map(|k| {
                self.rays
                    .iter()
                    .map(|v| {
                        let w = CurveClass(v.clone()).dot(&self.omega);
                        Integer::div_floor(&(v[k].abs() * b), &w)
                    })
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.dim];
        box_points(&boxes, 0, &mut cur, &mut |x| {
            let beta = CurveClass(x.to_vec());
            let w = beta.dot(&self.omega);
            if w <= b && self.contains(&beta) {
                out.push(beta);
            }
        });
        out.sort_by(|a, c| self.omega_pairing(a).cmp(&self.omega_pairing(c)).then_with(|| a.cmp(c)));
        out
    }
}

fn box_points(bounds: &[i64], k: usize, cur: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if k == bounds.len() {
        f(cur);
        return;
    }
    for x in -bounds[k]..=bounds[k] {
        cur[k] = x;
        box_points(bounds, k + 1, cur, f);
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn curve_classes_up_to(cone: &Cone, bound: &Q) -> Vec<CurveClass> {
    cone.curve_classes_up_to(bound)
}

/// Canonical class `K` in coordinates over the divisor basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalClass {
    pub k: Vec<Q>,
}

impl CanonicalClass {
    pub fn from_ints(k: &[i64]) -> Self {
        CanonicalClass { k: to_q(k) }
    }

    /// `⟨β, -K⟩`.
    pub fn anticanonical_degree(&self, beta: &CurveClass) -> Q {
        -pairing_with_divisor(beta, &self.k)
    }
}

/// `⟨β, x⟩ = Σ b_i x_i` for a divisor class `x`.
pub fn pairing_with_divisor(beta: &CurveClass, x: &[Q]) -> Q {
    beta.0.iter().zip(x).fold(Q::zero(), |acc, (&b, xi)| acc + linalg::q(b) * xi)
}

/// All `d >= 0` with `Σ d_j w_j = target`, lexicographically ordered.
pub fn weighted_vectors(weights: &[u32], target: i64) -> Vec<Vec<u32>> {
    fn go(weights: &[u32], k: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = i64::from(weights[k]);
        let max = if w == 0 { 0 } else { left / w };
        for x in 0..=max {
            cur.push(x as u32);
            go(weights, k + 1, left - x * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if target >= 0 {
        go(weights, 0, target, &mut Vec::new(), &mut out);
    }
    out
}

/// All `d >= 0` with `|d| <= bound`, lexicographically ordered.
pub fn bounded_vectors(s: usize, bound: u32) -> Vec<Vec<u32>> {
    fn go(s: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur.push(x);
            go(s, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(s, bound, &mut Vec::new(), &mut out);
    out
}

fn integral_target(value: Q) -> Option<i64> {
    value.is_integer().then(|| value.to_integer().to_i64()).flatten()
}

/// Weighted size required of `d` for `N(β;d)` to be admissible: `⟨β,-K⟩ + n - 3`.
/// `None` when the pairing is not integral.
pub fn number_target(alg: &Algebra, beta: &CurveClass, k: &CanonicalClass) -> Option<i64> {
    integral_target(k.anticanonical_degree(beta) + linalg::q(i64::from(alg.n()) - 3))
}

/// Weighted size required of `d` for a relation with total entry codimension
/// `total` to be nontrivial: `⟨β,-K⟩ - (total - n)`.
pub fn relation_target(alg: &Algebra, beta: &CurveClass, total: u32, k: &CanonicalClass) -> Option<i64> {
    integral_target(k.anticanonical_degree(beta) - linalg::q(i64::from(total) - i64::from(alg.n())))
}

pub fn admissible_degrees(
    alg: &Algebra,
    beta: &CurveClass,
    k: Option<&CanonicalClass>,
    dbound: Option<u32>,
) -> Result<Vec<Vec<u32>>> {
    match (k, dbound) {
        (Some(k), _) => Ok(number_target(alg, beta, k)
            .map(|t| weighted_vectors(&alg.tau_weights(), t))
            .unwrap_or_default()),
        (None, Some(b)) => Ok(bounded_vectors(alg.s(), b)),
        (None, None) => Err(Error::MissingBound),
    }
}

pub fn relation_degrees(
    alg: &Algebra,
    beta: &CurveClass,
    codims: [u32; 4],
    k: Option<&CanonicalClass>,
    dbound: Option<u32>,
) -> Result<Vec<Vec<u32>>> {
    relation_degrees_total(alg, beta, codims.iter().sum(), k, dbound)
}

pub fn relation_degrees_total(
    alg: &Algebra,
    beta: &CurveClass,
    total: u32,
    k: Option<&CanonicalClass>,
    dbound: Option<u32>,
) -> Result<Vec<Vec<u32>>> {
    match (k, dbound) {
        (Some(k), _) => Ok(relation_target(alg, beta, total, k)
            .map(|t| weighted_vectors(&alg.tau_weights(), t))
            .unwrap_or_default()),
        (None, Some(b)) => Ok(bounded_vectors(alg.s(), b)),
        (None, None) => Err(Error::MissingBound),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedSet {
    pub vars: Vec<Degree>,
    /// Smallest `⟨β,ω⟩` bound that already contains every seed, when finite.
    pub minimal_bound: Option<i64>,
}

/// Admissible `N(β;d)` with `|d| <= 2`.
///
/// With a canonical class that is strictly negative on the cone the set is
/// finite and `bound` is only used as a cap.
pub fn seed_variables(alg: &Algebra, cone: &Cone, k: Option<&CanonicalClass>, bound: &Q) -> Result<SeedSet> {
    let mut effective = bound.clone();
    let mut finite = false;
    if let Some(k) = k {
        let anti: Vec<Q> = cone
            .rays()
            .iter()
            .map(|v| k.anticanonical_degree(&CurveClass(v.clone())))
            .collect();
        if anti.iter().all(|a| a.is_positive()) {
            let wmax = alg.tau_weights().into_iter().max().unwrap_or(0);
            let cap = linalg::q(2 * i64::from(wmax) - i64::from(alg.n()) + 3);
            let ratio = cone
                .rays()
                .iter()
                .zip(&anti)
                .map(|(v, a)| linalg::q(CurveClass(v.clone()).dot(cone.omega())) / a)
                .max()
                .unwrap_or_else(Q::zero);
            let needed = cap * ratio;
            if needed < effective {
                effective = needed;
            }
            finite = true;
        }
    }
    let mut vars = Vec::new();
    for beta in cone.curve_classes_up_to(&effective) {
        let ds = match k {
            Some(_) => admissible_degrees(alg, &beta, k, None)?,
            None => bounded_vectors(alg.s(), 2),
        };
        vars.extend(
            ds.into_iter()
                .filter(|d| d.iter().sum::<u32>() <= 2)
                .map(|d| Degree { beta: beta.clone(), d }),
        );
    }
    let minimal_bound = finite.then(|| vars.iter().map(|v| cone.omega_pairing(&v.beta)).max().unwrap_or(0));
    Ok(SeedSet { vars, minimal_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::presets;

    fn cc(v: &[i64]) -> CurveClass {
        CurveClass(v.to_vec())
    }

    #[test]
    fn toric_classes_up_to_two() {
        let cone = Cone::new(ConeSpec::rays(vec![vec![1, 0], vec![0, 1]])).unwrap();
        assert_eq!(cone.omega(), &[1, 1]);
        let got = cone.curve_classes_up_to(&q(2));
        assert_eq!(got, vec![cc(&[0, 1]), cc(&[1, 0]), cc(&[0, 2]), cc(&[1, 1]), cc(&[2, 0])]);
    }

    #[test]
    fn p2_classes() {
        let cone = Cone::new(ConeSpec::rays(vec![vec![1]])).unwrap();
        assert_eq!(cone.curve_classes_up_to(&q(3)), vec![cc(&[1]), cc(&[2]), cc(&[3])]);
    }

    #[test]
    fn positivity_guard() {
        let err = Cone::new(ConeSpec::rays(vec![vec![1, -1]]).with_omega(vec![1, 1])).unwrap_err();
        assert!(matches!(err, Error::UnboundedCone(_)));
    }

    #[test]
    fn non_simplicial_rays_rejected() {
        let err = Cone::new(ConeSpec::rays(vec![vec![1, 0], vec![0, 1], vec![1, 1]])).unwrap_err();
        assert!(matches!(err, Error::InvalidCone(_)));
    }

    #[test]
    fn h_form_matches_v_form() {
        let v = Cone::new(ConeSpec::rays(vec![vec![1, 0], vec![1, 2]])).unwrap();
        // Same cone: 2x - y >= 0, y >= 0.
        let h = Cone::new(ConeSpec::inequalities(vec![vec![2, -1], vec![0, 1]]).with_omega(v.omega().to_vec())).unwrap();
        assert_eq!(v.curve_classes_up_to(&q(6)), h.curve_classes_up_to(&q(6)));
        assert!(!h.contains(&cc(&[0, 1])));
        assert!(h.contains(&cc(&[1, 1])));
    }

    #[test]
    fn h_form_rejects_lines() {
        let err = Cone::new(ConeSpec::inequalities(vec![vec![1, 0]])).unwrap_err();
        assert!(matches!(err, Error::InvalidCone(_)));
    }

    #[test]
    fn lower_dimensional_ray_cone() {
        let cone = Cone::new(ConeSpec::rays(vec![vec![1, 1]])).unwrap();
        assert_eq!(cone.curve_classes_up_to(&q(4)), vec![cc(&[1, 1]), cc(&[2, 2])]);
    }

    #[test]
    fn pairings() {
        assert_eq!(pairing_with_divisor(&cc(&[2]), &[q(3)]), q(6));
        assert_eq!(pairing_with_divisor(&cc(&[1, 1]), &[q(2), q(1)]), q(3));
        assert_eq!(pairing_with_divisor(&cc(&[4, 7]), &[q(0), q(0)]), q(0));
    }

    #[test]
    fn admissible_degree_examples() {
        let p2 = presets::get_preset("P2", &[]).unwrap();
        let k = p2.canonical.as_ref();
        assert_eq!(admissible_degrees(&p2.algebra, &cc(&[2]), k, None).unwrap(), vec![vec![5]]);

        let toric = presets::get_preset("toric-ex2", &[]).unwrap();
        let got = admissible_degrees(&toric.algebra, &cc(&[1, 0]), toric.canonical.as_ref(), None).unwrap();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        let mut want = vec![vec![2, 0, 0], vec![1, 1, 0], vec![0, 2, 0], vec![0, 0, 1]];
        want.sort();
        assert_eq!(got_sorted, want);

        let g25 = presets::get_preset("G25", &[]).unwrap();
        let got = admissible_degrees(&g25.algebra, &cc(&[1]), g25.canonical.as_ref(), None).unwrap();
        // coefficient of x^8 in 1/((1-x)^2 (1-x^2)^2 (1-x^3)^2 (1-x^4)(1-x^5))
        let mut series = vec![0u64; 9];
        series[0] = 1;
        for w in [1usize, 1, 2, 2, 3, 3, 4, 5] {
            for i in w..9 {
                series[i] += series[i - w];
            }
        }
        assert_eq!(got.len() as u64, series[8]);
        assert_eq!(got.len(), 139);
        assert!(matches!(admissible_degrees(&g25.algebra, &cc(&[1]), None, None), Err(Error::MissingBound)));
    }

    #[test]
    fn relation_degree_examples() {
        let p2 = presets::get_preset("P2", &[]).unwrap();
        let k = p2.canonical.as_ref();
        assert_eq!(relation_degrees(&p2.algebra, &cc(&[2]), [1, 1, 2, 2], k, None).unwrap(), vec![vec![2]]);
        assert!(relation_degrees(&p2.algebra, &cc(&[1]), [2, 2, 2, 2], k, None).unwrap().is_empty());
        let g24 = presets::get_preset("G24", &[]).unwrap();
        assert!(relation_degrees(&g24.algebra, &cc(&[1]), [4, 1, 3, 2], g24.canonical.as_ref(), None)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn weighted_vectors_match_brute_force() {
        let weights = [1, 1, 2, 2, 3, 3, 4, 5];
        let got = weighted_vectors(&weights, 8);
        let mut brute = 0;
        let mut d = [0u32; 8];
        // Box 0 <= d_j <= target.
        fn rec(k: usize, weights: &[u32], d: &mut [u32; 8], count: &mut usize) {
            if k == 8 {
                if weighted(d, weights) == 8 {
                    *count += 1;
                }
                return;
            }
            for x in 0..=8 {
                d[k] = x;
                rec(k + 1, weights, d, count);
            }
            d[k] = 0;
        }
        rec(0, &weights, &mut d, &mut brute);
        assert_eq!(got.len(), brute);
        assert!(got.iter().all(|v| weighted(v, &weights) == 8));
    }

    #[test]
    fn seed_variable_counts() {
        for (name, count) in [("toric-ex2", 17), ("P2", 1), ("G24", 1), ("G25", 3)] {
            let p = presets::get_preset(name, &[]).unwrap();
            let seeds = seed_variables(&p.algebra, &p.cone, p.canonical.as_ref(), &q(100)).unwrap();
            assert_eq!(seeds.vars.len(), count, "{name}");
        }
        let p2 = presets::get_preset("P2", &[]).unwrap();
        let seeds = seed_variables(&p2.algebra, &p2.cone, p2.canonical.as_ref(), &q(100)).unwrap();
        assert_eq!(seeds.vars, vec![Degree::new(vec![1], vec![2])]);
        assert_eq!(seeds.minimal_bound, Some(1));
    }
}
