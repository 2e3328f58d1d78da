//! Shipped example algebras and the independent plane-curve counting oracle.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{validated, Algebra, GradedAlgebra};
use crate::degrees::{self, CanonicalClass, Cone, ConeSpec, CurveClass, Degree};
use crate::error::{Error, Result};
use crate::linalg::{binomial, q, q_frac, Q};
use crate::problem::Problem;
use crate::solver::SolutionTable;
use crate::wdvv::QuadPoly;

/// A complete example: algebra, cone, canonical class and notes.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: String,
    pub algebra: Algebra,
    pub cone: Cone,
    pub canonical: Option<CanonicalClass>,
    pub doc: String,
}

impl Preset {
    pub fn problem(&self) -> Problem {
        Problem::new(self.algebra.clone(), self.cone.clone(), self.canonical.clone(), None)
            .expect("presets are consistent")
    }
}

pub const PRESET_NAMES: &[&str] = &["P2", "Pn", "P1xP1", "toric-ex2", "G24", "Sym2P2", "G25"];

fn param(params: &[(&str, i64)], key: &str) -> Option<i64> {
    params.iter().rev().find(|(k, _)| *k == key).map(|&(_, v)| v)
}

fn reject_unknown(params: &[(&str, i64)], allowed: &[&str]) -> Result<()> {
    match params.iter().find(|(k, _)| !allowed.contains(k)) {
        Some((k, _)) => Err(Error::BadParams(format!("unknown parameter `{k}`"))),
        None => Ok(()),
    }
}

pub fn get_preset(name: &str, params: &[(&str, i64)]) -> Result<Preset> {
    match name {
        "P2" => {
            reject_unknown(params, &[])?;
            projective_space(2, 3)
        }
        "Pn" => {
            reject_unknown(params, &["n", "b"])?;
            let n = param(params, "n").unwrap_or(2);
            let b = param(params, "b").unwrap_or(n + 1);
            projective_space(n, b)
        }
        "P1xP1" => {
            reject_unknown(params, &[])?;
            p1xp1()
        }
        "toric-ex2" => {
            reject_unknown(params, &[])?;
            toric_ex2()
        }
        "G24" => {
            reject_unknown(params, &[])?;
            quadric_type("G24", 2, 2, 4)
        }
        "Sym2P2" => {
            reject_unknown(params, &["h4", "c2"])?;
            let h4 = param(params, "h4").ok_or_else(|| Error::BadParams("Sym2P2 requires h4=<∫h^4>".into()))?;
            let c2 = param(params, "c2").ok_or_else(|| Error::BadParams("Sym2P2 requires c2=<∫c^2>".into()))?;
            if h4 == 0 || c2 == 0 {
                return Err(Error::BadParams("integrals h4 and c2 must be nonzero".into()));
            }
            quadric_type("Sym2P2", h4, c2, 3)
        }
        "G25" => {
            reject_unknown(params, &[])?;
            g25()
        }
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

fn finish(name: &str, raw: GradedAlgebra, cone: ConeSpec, k: &[i64], doc: &str) -> Result<Preset> {
    Ok(Preset {
        name: name.to_string(),
        algebra: validated(raw)?,
        cone: Cone::new(cone)?,
        canonical: Some(CanonicalClass::from_ints(k)),
        doc: doc.to_string(),
    })
}

fn projective_space(n: i64, b: i64) -> Result<Preset> {
    if n < 2 {
        return Err(Error::BadParams(format!("Pn needs n >= 2, got {n}")));
    }
    if b < 1 || b > n + 1 {
        return Err(Error::BadParams(format!("Pn needs 1 <= b <= n+1, got b = {b}")));
    }
    let n = n as u32;
    let labels: Vec<String> = (0..=n)
        .map(|k| match k {
            0 => "one".to_string(),
            1 => "h".to_string(),
            k => format!("h{k}"),
        })
        .collect();
    let basis: Vec<(&str, u32)> = labels.iter().zip(0..).map(|(l, k)| (l.as_str(), k)).collect();
    let name = if n == 2 && b == 3 { "P2".to_string() } else { format!("P{n}_b{b}") };
    let mut raw = GradedAlgebra::new(name.clone(), n, &basis);
    for a in 1..=n {
        for c in a..=n {
            if a + c <= n {
                let mut v = vec![Q::zero(); raw.dim()];
                v[(a + c) as usize] = q(1);
                raw.set_product(a as usize, c as usize, v);
            }
        }
    }
    raw.set_integral(n as usize, q(1));
    finish(
        &name,
        raw,
        ConeSpec::rays(vec![vec![1]]),
        &[-b],
        "Truncated polynomial ring Q[h]/(h^{n+1}) with ∫h^n = 1 and K = -b h.",
    )
}

fn p1xp1() -> Result<Preset> {
    let mut raw = GradedAlgebra::new("P1xP1", 2, &[("one", 0), ("a", 1), ("b", 1), ("ab", 2)]);
    raw.set_product_terms("a", "a", &[]);
    raw.set_product_terms("b", "b", &[]);
    raw.set_product_terms("a", "b", &[(q(1), "ab")]);
    raw.set_integral(3, q(1));
    finish(
        "P1xP1",
        raw,
        ConeSpec::rays(vec![vec![1, 0], vec![0, 1]]),
        &[-2, -2],
        "Q[a,b]/(a^2, b^2), ∫ab = 1, -K = 2a + 2b. Added to exercise the surface case and the factor swap.",
    )
}

fn toric_ex2() -> Result<Preset> {
    let mut raw = GradedAlgebra::new(
        "toric-ex2",
        3,
        &[("one", 0), ("D1", 1), ("D2", 1), ("D1D2", 2), ("D2_2", 2), ("D1D2_2", 3)],
    );
    raw.set_product_terms("D1", "D1", &[(q(2), "D1D2")]);
    raw.set_product_terms("D1", "D2", &[(q(1), "D1D2")]);
    raw.set_product_terms("D2", "D2", &[(q(1), "D2_2")]);
    raw.set_product_terms("D1", "D1D2", &[(q(2), "D1D2_2")]);
    raw.set_product_terms("D1", "D2_2", &[(q(1), "D1D2_2")]);
    raw.set_product_terms("D2", "D1D2", &[(q(1), "D1D2_2")]);
    raw.set_product_terms("D2", "D2_2", &[]);
    raw.set_integral(5, q(1));
    finish(
        "toric-ex2",
        raw,
        ConeSpec::rays(vec![vec![1, 0], vec![0, 1]]),
        &[-2, -1],
        "Q[D1,D2]/(D1^2 - 2 D1 D2, D2^3) with basis 1, D1, D2, D1D2, D2^2, D1D2^2. \
         ∫D1D2^2 = 1 because the cone <v1,v2,v3> is unimodular and D3 = D2. -K = 2 D1 + D2.",
    )
}

/// Basis `1, h, c, h^2, h^3, h^4` with `h c = 0`, `∫h^4 = h4`, `∫c^2 = c2`, `K = -κ h`.
fn quadric_type(name: &str, h4: i64, c2: i64, kappa: i64) -> Result<Preset> {
    let mut raw = GradedAlgebra::new(name, 4, &[("one", 0), ("h", 1), ("c", 2), ("h2", 2), ("h3", 3), ("h4", 4)]);
    raw.set_product_terms("h", "h", &[(q(1), "h2")]);
    raw.set_product_terms("h", "c", &[]);
    raw.set_product_terms("h", "h2", &[(q(1), "h3")]);
    raw.set_product_terms("h", "h3", &[(q(1), "h4")]);
    raw.set_product_terms("c", "c", &[(q_frac(c2, h4), "h4")]);
    raw.set_product_terms("c", "h2", &[]);
    raw.set_product_terms("h2", "h2", &[(q(1), "h4")]);
    raw.set_integral(5, q(h4));
    let doc = if name == "G24" {
        "Schubert model in the 2x2 box: h = σ1, h^2 = σ2 + σ11, c = σ2 - σ11, so h c = 0, \
         c^2 = h^4 = 2 σ22, ∫σ22 = 1, K = -4h."
    } else {
        "Same ring shape as G(2,4) with the two integrals ∫h^4 and ∫c^2 as parameters; K = -3h."
    };
    finish(name, raw, ConeSpec::rays(vec![vec![1]]), &[-kappa], doc)
}

fn g25() -> Result<Preset> {
    let basis: Vec<(&str, u32)> = vec![
        ("t0", 0),
        ("t1", 1),
        ("t2", 2),
        ("t3", 2),
        ("t4", 3),
        ("t5", 3),
        ("t6", 4),
        ("t7", 4),
        ("t8", 5),
        ("t9", 6),
    ];
    let mut raw = GradedAlgebra::new("G25", 6, &basis);
    let one = q(1);
    let third = q_frac(1, 3);
    let five = q(5);
    let rows: Vec<(&str, &str, Vec<(Q, &str)>)> = vec![
        ("t1", "t1", vec![(one.clone(), "t2")]),
        ("t1", "t2", vec![(one.clone(), "t4")]),
        ("t1", "t3", vec![(one.clone(), "t5")]),
        ("t1", "t4", vec![(one.clone(), "t6")]),
        ("t1", "t5", vec![(third.clone(), "t7")]),
        ("t1", "t6", vec![(five.clone(), "t8")]),
        ("t1", "t7", vec![]),
        ("t1", "t8", vec![(one.clone(), "t9")]),
        ("t2", "t2", vec![(one.clone(), "t6")]),
        ("t2", "t3", vec![(third.clone(), "t7")]),
        ("t2", "t4", vec![(five.clone(), "t8")]),
        ("t2", "t5", vec![]),
        ("t2", "t6", vec![(five.clone(), "t9")]),
        ("t2", "t7", vec![]),
        ("t3", "t3", vec![(one.clone(), "t6"), (q_frac(-11, 3), "t7")]),
        ("t3", "t4", vec![]),
        ("t3", "t5", vec![(five.clone(), "t8")]),
        ("t3", "t6", vec![]),
        ("t3", "t7", vec![(q(15), "t9")]),
        ("t4", "t4", vec![(five.clone(), "t9")]),
        ("t4", "t5", vec![]),
        ("t5", "t5", vec![(five, "t9")]),
    ];
    for (a, b, terms) in &rows {
        raw.set_product_terms(a, b, terms);
    }
    raw.set_integral(9, q(1));
    finish(
        "G25",
        raw,
        ConeSpec::rays(vec![vec![1]]),
        &[-5],
        "Rank-2 quotient Grassmannian G(2,5) with t1 = c1, t2 = c1^2, t3 = 2c1^2 - 5c2, t4 = c1^3, \
         t5 = 2c1^3 - 5c1c2, t6 = c1^4, t7 = c1^4 - 5c2^2, t8 = c1c2^2, t9 = c2^3 (point, ∫t9 = 1). \
         Insertion slots are (t2,t3,t4,t5,t6,t7,t8,t9).",
    )
}

/// Plane rational curve counts by the closed recursion, independent of the
/// relation machinery: `N_1 = 1` and
/// `N_β = Σ N_{β1} N_{β2} [β1²β2² C(3β-4, 3β1-2) - β1³β2 C(3β-4, 3β1-1)]`.
pub fn kontsevich_oracle(beta_max: u32) -> Vec<BigInt> {
    let mut n: Vec<BigInt> = vec![BigInt::zero(); beta_max as usize + 1];
    if beta_max >= 1 {
        n[1] = BigInt::from(1);
    }
    for b in 2..=beta_max {
        let mut acc = BigInt::zero();
        for b1 in 1..b {
            let b2 = b - b1;
            let (x, y) = (BigInt::from(b1), BigInt::from(b2));
            let kernel = &x * &x * &y * &y * binomial(3 * b - 4, 3 * b1 - 2)
                - &x * &x * &x * &y * binomial(3 * b - 4, 3 * b1 - 1);
            acc += &n[b1 as usize] * &n[b2 as usize] * kernel;
        }
        n[b as usize] = acc;
    }
    n.into_iter().skip(1).collect()
}

/// The degree-one condition on the G(2,5) starting data:
/// `11 N(1; t7 t9) - 6 N(1; t6 t9) - 15 N(1; t8 t8)`.
pub fn g25_linear_condition() -> QuadPoly {
    let var = |d: [u32; 8]| Degree { beta: CurveClass(vec![1]), d: d.to_vec() };
    let mut p = QuadPoly::zero();
    p.add_linear(var([0, 0, 0, 0, 0, 1, 0, 1]), q(11));
    p.add_linear(var([0, 0, 0, 0, 1, 0, 0, 1]), q(-6));
    p.add_linear(var([0, 0, 0, 0, 0, 0, 2, 0]), q(-15));
    p
}

/// Which codimension-two class carries the quintuple insertion in the
/// degenerate G(2,4) start.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodimTwoSlot {
    H2,
    C,
}

/// `N(1; 5 e_x) = 1` for the chosen class `x`, every other admissible degree-one number 0.
pub fn g24_degenerate_seed(convention: CodimTwoSlot) -> SolutionTable {
    let preset = get_preset("G24", &[]).expect("G24 preset");
    let alg = &preset.algebra;
    let label = match convention {
        CodimTwoSlot::H2 => "h2",
        CodimTwoSlot::C => "c",
    };
    let slot = alg.tau_slot(alg.index_of(label).expect("label")).expect("codim 2");
    let beta = CurveClass(vec![1]);
    let mut table = SolutionTable::new(alg.name());
    let ds = degrees::admissible_degrees(alg, &beta, preset.canonical.as_ref(), None).expect("canonical class");
    for d in ds {
        let hit = d[slot] == 5 && d.iter().sum::<u32>() == 5;
        table.pin(Degree { beta: beta.clone(), d }, if hit { q(1) } else { q(0) });
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_algebra;

    #[test]
    fn every_preset_validates_and_is_positive() {
        for &name in PRESET_NAMES {
            let params: Vec<(&str, i64)> = if name == "Sym2P2" { vec![("h4", 1), ("c2", 3)] } else { vec![] };
            let p = get_preset(name, &params).unwrap();
            assert!(validate_algebra(p.algebra.raw()).is_ok(), "{name}");
            let k = p.canonical.as_ref().unwrap();
            for ray in p.cone.rays() {
                assert!(k.anticanonical_degree(&CurveClass(ray.clone())) > q(0), "{name}");
            }
        }
    }

    #[test]
    fn unknown_and_bad_params() {
        assert!(matches!(get_preset("P7x", &[]), Err(Error::UnknownPreset(_))));
        assert!(matches!(get_preset("Pn", &[("n", 3), ("b", 5)]), Err(Error::BadParams(_))));
        assert!(matches!(get_preset("Sym2P2", &[]), Err(Error::BadParams(_))));
        assert!(matches!(get_preset("P2", &[("n", 2)]), Err(Error::BadParams(_))));
    }

    #[test]
    fn toric_products() {
        let p = get_preset("toric-ex2", &[]).unwrap();
        let a = &p.algebra;
        let u = |l: &str| a.unit(a.index_of(l).unwrap());
        let d1sq = a.multiply(&u("D1"), &u("D1"));
        assert_eq!(d1sq, a.multiply(&u("D1D2"), &{
            let mut two = a.unit(0);
            two[0] = q(2);
            two
        }));
        let d2cube = a.multiply(&a.multiply(&u("D2"), &u("D2")), &u("D2"));
        assert!(d2cube.iter().all(Zero::is_zero));
        assert_eq!(a.integral(&u("D1D2_2")), q(1));
    }

    #[test]
    fn oracle_values() {
        let n = kontsevich_oracle(6);
        let want: Vec<BigInt> = [1u64, 1, 12, 620, 87304, 26312976].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(n, want);
    }

    #[test]
    fn oracle_recursion_self_check() {
        let n = kontsevich_oracle(8);
        assert_eq!(n[0], BigInt::from(1));
        assert_eq!(n[1], BigInt::from(1));
        // Re-evaluate the recursion at β = 8 from the list itself.
        let b = 8u32;
        let mut acc = BigInt::zero();
        for b1 in 1..b {
            let b2 = b - b1;
            let (x, y) = (BigInt::from(b1), BigInt::from(b2));
            acc += &n[(b1 - 1) as usize]
                * &n[(b2 - 1) as usize]
                * (&x * &x * &y * &y * binomial(3 * b - 4, 3 * b1 - 2)
                    - &x * &x * &x * &y * binomial(3 * b - 4, 3 * b1 - 1));
        }
        assert_eq!(acc, n[7]);
    }

    #[test]
    fn g25_condition_shape() {
        let p = get_preset("G25", &[]).unwrap();
        let cond = g25_linear_condition();
        assert_eq!(cond.linear.len(), 3);
        assert!(cond.quadratic.is_empty());
        let w = p.algebra.tau_weights();
        for v in cond.linear.keys() {
            assert_eq!(degrees::weighted(&v.d, &w), 8);
        }
        let coefs: Vec<Q> = [[0, 0, 0, 0, 0, 1, 0, 1], [0, 0, 0, 0, 1, 0, 0, 1], [0, 0, 0, 0, 0, 0, 2, 0]]
            .iter()
            .map(|d| cond.linear[&Degree::new(vec![1], d.to_vec())].clone())
            .collect();
        assert_eq!(coefs, vec![q(11), q(-6), q(-15)]);
    }

    #[test]
    fn g24_seed_shape() {
        for conv in [CodimTwoSlot::H2, CodimTwoSlot::C] {
            let t = g24_degenerate_seed(conv);
            let nonzero: Vec<_> = t.values().filter(|(_, v)| !v.is_zero()).collect();
            assert_eq!(nonzero.len(), 1);
            assert_eq!(degrees::weighted(&nonzero[0].0.d, &[1, 1, 2, 3]), 5);
        }
    }
}
