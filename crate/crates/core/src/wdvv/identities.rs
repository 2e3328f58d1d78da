//! Structural identities among the relations, checked as exact polynomial identities.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::degrees::CurveClass;
use crate::error::{Error, Result};
use crate::linalg::{self, Q};
use crate::problem::Problem;

use super::poly::QuadPoly;
use super::relations::{build_basis_relation, build_relation, product_terms};

/// `⟨ijkl⟩ + ⟨jkil⟩ + ⟨kijl⟩ = 0`.
pub fn check_two_out_of_three(p: &Problem, t: [usize; 4], beta: &CurveClass, d: &[u32]) -> bool {
    let [i, j, k, l] = t;
    let mut sum = build_basis_relation(p, [i, j, k, l], beta, d);
    sum.add_scaled(&build_basis_relation(p, [j, k, i, l], beta, d), &linalg::q(1));
    sum.add_scaled(&build_basis_relation(p, [k, i, j, l], beta, d), &linalg::q(1));
    sum.is_zero()
}

/// Weight `w_x` and shift `e_x` of a basis index: the pairing with `β` for a
/// divisor, `1` and a unit vector for a higher class, `0` for the identity.
fn weight_and_shift(p: &Problem, x: usize, beta: &CurveClass) -> (i64, Vec<i64>) {
    let alg = p.algebra();
    let mut e = vec![0i64; alg.s()];
    if let Some(slot) = alg.sigma_slot(x) {
        (beta.0[slot], e)
    } else if let Some(slot) = alg.tau_slot(x) {
        e[slot] = 1;
        (1, e)
    } else {
        (0, e)
    }
}

fn shifted(d: &[u32], plus: &[i64], minus: &[i64]) -> Vec<u32> {
    d.iter()
        .zip(plus.iter().zip(minus))
        .map(|(&x, (a, b))| (i64::from(x) + a - b) as u32)
        .collect()
}

/// `Rel(i,j,k,l;d) + w_j Rel(i,l,k,m;d+e_j-e_m) + w_l Rel(i,m,k,j;d+e_l-e_m) = 0`
/// for a higher class `m` with `d_m >= 1`.
pub fn check_three_symbols(p: &Problem, t: [usize; 4], m: usize, beta: &CurveClass, d: &[u32]) -> Result<bool> {
    let alg = p.algebra();
    let Some(slot) = alg.tau_slot(m) else {
        return Err(Error::PreconditionViolated(format!("`{}` has codimension below 2", alg.label(m))));
    };
    if d[slot] == 0 {
        return Err(Error::PreconditionViolated(format!("insertion count of `{}` is 0", alg.label(m))));
    }
    let [i, j, k, l] = t;
    let (wj, ej) = weight_and_shift(p, j, beta);
    let (wl, el) = weight_and_shift(p, l, beta);
    let (_, em) = weight_and_shift(p, m, beta);
    let mut sum = build_basis_relation(p, t, beta, d);
    sum.add_scaled(&build_basis_relation(p, [i, l, k, m], beta, &shifted(d, &ej, &em)), &linalg::q(wj));
    sum.add_scaled(&build_basis_relation(p, [i, m, k, j], beta, &shifted(d, &el, &em)), &linalg::q(wl));
    Ok(sum.is_zero())
}

/// Middle coefficients `(q, f, Σ_e g^ef (T_m T_e)_q)` of `Σ Γ_{ij(me)} g^ef Γ_fkl`.
fn m_diagonal_mid(p: &Problem, m: usize) -> Vec<(usize, usize, Q)> {
    let alg = p.algebra();
    let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
    for (e, f, g) in alg.ginv_entries() {
        for (q, t) in alg.basis_product(m, *e) {
            *acc.entry((*q, *f)).or_insert_with(Q::zero) += g * t;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (a, b, c)).collect()
}

fn product_poly(p: &Problem, x: [usize; 2], y: [usize; 2], mid: &[(usize, usize, Q)], beta: &CurveClass, d: &[u32]) -> QuadPoly {
    let mut out = QuadPoly::zero();
    product_terms(p, x, y, mid, beta, d, &mut |c, v, w| out.add_quadratic(v, w, c));
    out
}

/// `Σ Γ_{ij(me)} g^ef Γ_fkl = Σ Γ_{kl(me)} g^ef Γ_fij` at `(β;d)`.
pub fn check_m_diagonal(p: &Problem, t: [usize; 4], m: usize, beta: &CurveClass, d: &[u32]) -> bool {
    let [i, j, k, l] = t;
    let mid = m_diagonal_mid(p, m);
    product_poly(p, [i, j], [k, l], &mid, beta, d) == product_poly(p, [k, l], [i, j], &mid, beta, d)
}

/// `⟨(mi)jkl⟩ - ⟨m(ij)kl⟩ + ⟨mi(jk)l⟩ - ⟨mij(kl)⟩ + ⟨(lm)ijk⟩`, whose linear part
/// must cancel; the quadratic remainder is returned.
pub fn five_symbols_combination(p: &Problem, t: [usize; 4], m: usize, beta: &CurveClass, d: &[u32]) -> Result<QuadPoly> {
    let alg = p.algebra();
    let [i, j, k, l] = t;
    let u = |x: usize| alg.unit(x);
    let prod = |a: usize, b: usize| alg.multiply(&alg.unit(a), &alg.unit(b));
    let one = linalg::q(1);
    let minus = linalg::q(-1);
    let terms: [([Vec<Q>; 4], &Q); 5] = [
        ([prod(m, i), u(j), u(k), u(l)], &one),
        ([u(m), prod(i, j), u(k), u(l)], &minus),
        ([u(m), u(i), prod(j, k), u(l)], &one),
        ([u(m), u(i), u(j), prod(k, l)], &minus),
        ([prod(l, m), u(i), u(j), u(k)], &one),
    ];
    let mut out = QuadPoly::zero();
    for (v, s) in &terms {
        let rel = build_relation(p, [&v[0], &v[1], &v[2], &v[3]], beta, d);
        out.add_scaled(&rel, s);
    }
    if !out.linear.is_empty() {
        return Err(Error::LinearPartNonzero);
    }
    Ok(out)
}

/// Passed/attempted counts of one randomized identity family.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub passed: usize,
    pub total: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.total += 1;
        if ok {
            self.passed += 1;
        }
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub two_of_three: Tally,
    pub three_symbols: Tally,
    pub m_diagonal: Tally,
    pub five_symbols_linear: Tally,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        [self.two_of_three, self.three_symbols, self.m_diagonal, self.five_symbols_linear]
            .iter()
            .all(Tally::all_passed)
    }
}

struct Sampler<'a> {
    p: &'a Problem,
    rng: ChaCha8Rng,
    classes: Vec<CurveClass>,
}

impl Sampler<'_> {
    fn index(&mut self) -> usize {
        self.rng.gen_range(1..self.p.algebra().dim())
    }

    fn beta(&mut self) -> CurveClass {
        self.classes.choose(&mut self.rng).expect("classes").clone()
    }

    /// A degree at which a relation with this total codimension can be nontrivial,
    /// subject to `accept`; falls back to a small random vector.
    fn degree(&mut self, beta: &CurveClass, total: u32, accept: impl Fn(&[u32]) -> bool) -> Vec<u32> {
        let ds: Vec<Vec<u32>> = self.p.relation_degrees(beta, total).iter().filter(|d| accept(d)).cloned().collect();
        if let Some(d) = ds.choose(&mut self.rng) {
            return d.clone();
        }
        loop {
            let d: Vec<u32> = (0..self.p.algebra().s()).map(|_| self.rng.gen_range(0..3)).collect();
            if accept(&d) {
                return d;
            }
        }
    }
}

/// Runs `samples` random instances of each identity family on classes with
/// `⟨β,ω⟩ <= max_class`.
pub fn run_identity_suite(p: &Problem, samples: usize, seed: u64, max_class: i64) -> Result<SuiteReport> {
    let alg = p.algebra();
    let classes = p.classes_up_to(&linalg::q(max_class));
    if classes.is_empty() {
        return Err(Error::InvalidCone(format!("no curve classes with pairing <= {max_class}")));
    }
    let taus: Vec<usize> = (alg.r() + 1..alg.dim()).collect();
    let mut s = Sampler { p, rng: ChaCha8Rng::seed_from_u64(seed), classes };
    let mut report = SuiteReport::default();
    let codim = |x: usize| alg.codim(x);
    for _ in 0..samples {
        let t = [s.index(), s.index(), s.index(), s.index()];
        let beta = s.beta();
        let total: u32 = t.iter().map(|&x| codim(x)).sum();
        let d = s.degree(&beta, total, |_| true);
        report.two_of_three.record(check_two_out_of_three(p, t, &beta, &d));

        if !taus.is_empty() {
            let m = *taus.choose(&mut s.rng).expect("taus");
            let slot = alg.tau_slot(m).expect("tau");
            let d = s.degree(&beta, total, |d| d[slot] >= 1);
            report.three_symbols.record(check_three_symbols(p, t, m, &beta, &d)?);
        }

        let m = s.index();
        let d = s.degree(&beta, total + codim(m), |_| true);
        report.m_diagonal.record(check_m_diagonal(p, t, m, &beta, &d));
        match five_symbols_combination(p, t, m, &beta, &d) {
            Ok(_) => report.five_symbols_linear.record(true),
            Err(Error::LinearPartNonzero) => report.five_symbols_linear.record(false),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::get_preset;

    fn problem(name: &str) -> Problem {
        get_preset(name, &[]).unwrap().problem()
    }

    #[test]
    fn two_of_three_examples() {
        let p2 = problem("P2");
        assert!(check_two_out_of_three(&p2, [1, 1, 2, 2], &CurveClass(vec![2]), &[2]));
        let g24 = problem("G24");
        let b = CurveClass(vec![2]);
        for d in g24.relation_degrees(&b, 1 + 2 + 2 + 3).iter() {
            assert!(check_two_out_of_three(&g24, [1, 2, 3, 4], &b, d));
        }
        let toric = problem("toric-ex2");
        let b = CurveClass(vec![1, 1]);
        for d in toric.relation_degrees(&b, 6).iter() {
            assert!(check_two_out_of_three(&toric, [1, 2, 3, 4], &b, d));
        }
    }

    #[test]
    fn three_symbols_examples() {
        let p2 = problem("P2");
        for beta in 1..=4 {
            let b = CurveClass(vec![beta]);
            for d in 1..8 {
                assert!(check_three_symbols(&p2, [1, 1, 1, 1], 2, &b, &[d]).unwrap());
            }
        }
        assert!(matches!(
            check_three_symbols(&p2, [1, 1, 1, 1], 2, &CurveClass(vec![1]), &[0]),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            check_three_symbols(&p2, [1, 1, 1, 1], 1, &CurveClass(vec![1]), &[1]),
            Err(Error::PreconditionViolated(_))
        ));
        let g25 = problem("G25");
        let idx = |l: &str| g25.algebra().index_of(l).unwrap();
        let b = CurveClass(vec![1]);
        let t = [idx("t2"), idx("t3"), idx("t1"), idx("t4")];
        let slot = g25.algebra().tau_slot(idx("t3")).unwrap();
        let total: u32 = t.iter().map(|&x| g25.algebra().codim(x)).sum();
        let mut hits = 0;
        for d in g25.relation_degrees(&b, total).iter().filter(|d| d[slot] >= 1) {
            assert!(check_three_symbols(&g25, t, idx("t3"), &b, d).unwrap());
            hits += 1;
        }
        assert!(hits > 0);
    }

    #[test]
    fn m_diagonal_examples() {
        let g24 = problem("G24");
        let b = CurveClass(vec![3]);
        for d in g24.relation_degrees(&b, 1 + 2 + 2 + 3 + 2).iter().take(20) {
            assert!(check_m_diagonal(&g24, [1, 2, 3, 4], 3, &b, d));
        }
        let toric = problem("toric-ex2");
        let b = CurveClass(vec![1, 1]);
        for d in toric.relation_degrees(&b, 1 + 1 + 2 + 2 + 1).iter() {
            assert!(check_m_diagonal(&toric, [1, 2, 4, 3], 1, &b, d));
        }
        assert!(check_m_diagonal(&toric, [1, 2, 1, 2], 3, &CurveClass(vec![2, 1]), &[1, 0, 0]));
    }

    #[test]
    fn five_symbols_linear_part_vanishes() {
        let p2 = problem("P2");
        let q = five_symbols_combination(&p2, [1, 1, 2, 2], 2, &CurveClass(vec![2]), &[2]).unwrap();
        for (v, w) in q.quadratic.keys() {
            assert_eq!(v.beta.add(&w.beta), CurveClass(vec![2]));
        }
        let toric = problem("toric-ex2");
        for m in 0..toric.algebra().dim() {
            for d in toric.relation_degrees(&CurveClass(vec![1, 1]), 7).iter() {
                five_symbols_combination(&toric, [1, 2, 3, 4], m, &CurveClass(vec![1, 1]), d).unwrap();
            }
        }
    }

    #[test]
    fn small_suite_passes() {
        let report = run_identity_suite(&problem("P2"), 20, 7, 4).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(report.two_of_three.total, 20);
    }
}
