//! The per-class reconstruction loop, table verification, and the five-symbols residual.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::degrees::{CurveClass, Degree};
use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::problem::Problem;
use crate::wdvv::{self, NVar, RelationId};

use super::linear::{solve_system, solve_with_zero_frees, LinearSystem, Row, RowTag, SolveReport, SolveStatus};
use super::table::SolutionTable;

/// Builds the linear system in the unknowns `N(β;·)` from every canonical relation
/// in class `β`. Lower classes are read from `table`, values already present at
/// `β` are substituted, and `pins` at `β` are appended as singleton rows.
pub fn assemble_system(p: &Problem, beta: &CurveClass, table: &SolutionTable, pins: &[(NVar, Q)]) -> Result<LinearSystem> {
    let lookup = |v: &NVar| table.get(v).cloned();
    let instances = wdvv::relation_instances(p, beta);
    let rows: Vec<std::result::Result<Option<(RelationId, BTreeMap<NVar, Q>, Q)>, NVar>> = instances
        .into_par_iter()
        .map(|(t, d)| {
            let (linear, quad) = wdvv::relation_row(p, t, beta, &d, &lookup)?;
            let mut rhs = -quad;
            let mut unknown = BTreeMap::new();
            for (v, c) in linear {
                match table.get(&v) {
                    Some(x) => rhs -= c * x,
                    None => {
                        unknown.insert(v, c);
                    }
                }
            }
            if unknown.is_empty() && rhs.is_zero() {
                return Ok(None);
            }
            let id = RelationId { tuple: t, degree: Degree { beta: beta.clone(), d }, sign: 1 };
            Ok(Some((id, unknown, rhs)))
        })
        .collect();

    let mut unknowns: Vec<NVar> = match p.canonical() {
        Some(_) => p
            .admissible_degrees(beta)
            .iter()
            .map(|d| Degree { beta: beta.clone(), d: d.clone() })
            .filter(|v| !table.contains(v))
            .collect(),
        None => Vec::new(),
    };
    let mut built = Vec::with_capacity(rows.len());
    for r in rows {
        match r {
            Ok(Some(x)) => built.push(x),
            Ok(None) => {}
            Err(v) => return Err(Error::MissingLowerValue(v)),
        }
    }
    if p.canonical().is_none() {
        let mut seen: Vec<NVar> = built.iter().flat_map(|(_, u, _)| u.keys().cloned()).collect();
        seen.extend(pins.iter().filter(|(v, _)| &v.beta == beta && !table.contains(v)).map(|(v, _)| v.clone()));
        seen.sort();
        seen.dedup();
        unknowns = seen;
    }
    let col: HashMap<&NVar, usize> = unknowns.iter().enumerate().map(|(i, v)| (v, i)).collect();

    // Scale each row to a leading coefficient of one and drop repeats.
    let mut seen_rows: HashSet<(Vec<(usize, Q)>, Q)> = HashSet::new();
    let mut out = Vec::new();
    for (id, unknown, rhs) in built {
        let coeffs: BTreeMap<usize, Q> = unknown.iter().map(|(v, c)| (col[v], c.clone())).collect();
        let lead = coeffs.values().next().cloned().unwrap_or_else(Q::one);
        let key_coeffs: Vec<(usize, Q)> = coeffs.iter().map(|(k, c)| (*k, c / &lead)).collect();
        let key_rhs = if coeffs.is_empty() { Q::one() } else { &rhs / &lead };
        if !seen_rows.insert((key_coeffs, key_rhs)) {
            continue;
        }
        out.push(Row { coeffs, rhs, tag: RowTag::Relation(id) });
    }
    let n_relations = out.len();
    for (v, value) in pins {
        if &v.beta != beta {
            continue;
        }
        match col.get(v) {
            Some(&c) => out.push(Row {
                coeffs: [(c, Q::one())].into_iter().collect(),
                rhs: value.clone(),
                tag: RowTag::Pin(v.clone()),
            }),
            None => {
                if let Some(x) = table.get(v) {
                    if x != value {
                        out.push(Row { coeffs: BTreeMap::new(), rhs: value - x, tag: RowTag::Pin(v.clone()) });
                    }
                }
            }
        }
    }
    Ok(LinearSystem { beta: beta.clone(), unknowns, rows: out, n_relations })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    /// Halt unless the relations alone determine every unknown.
    Strict,
    /// Let user pins fix what the relations leave free; halt if anything stays free.
    Pins,
    /// Set whatever stays free to zero and record it.
    ZeroFrees,
}

impl std::str::FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "strict" => Ok(Policy::Strict),
            "pins" => Ok(Policy::Pins),
            "zero" => Ok(Policy::ZeroFrees),
            other => Err(format!("unknown policy `{other}` (expected strict, pins or zero)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedViolation {
    pub relation: RelationId,
    pub value: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Halt {
    SeedRelations,
    Underdetermined(CurveClass),
    Inconsistent(CurveClass),
}

impl fmt::Display for Halt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Halt::SeedRelations => write!(f, "seed relations violated"),
            Halt::Underdetermined(b) => write!(f, "underdetermined at beta ({b})"),
            Halt::Inconsistent(b) => write!(f, "inconsistent at beta ({b})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub table: SolutionTable,
    pub reports: Vec<SolveReport>,
    pub seed_violations: Vec<SeedViolation>,
    pub halted: Option<Halt>,
}

/// Seed relations `⟨A,A¹,A,A¹⟩(β;0)` whose value on `table` is known and nonzero.
pub fn check_seed_relations(p: &Problem, table: &SolutionTable, bound: &Q) -> Vec<SeedViolation> {
    let mut out = Vec::new();
    for beta in p.classes_up_to(bound) {
        for (id, poly) in wdvv::enumerate_seed_relations(p, &beta) {
            if let Ok(value) = poly.evaluate(|v| table.get(v).cloned()) {
                if !value.is_zero() {
                    out.push(SeedViolation { relation: id, value });
                }
            }
        }
    }
    out
}

/// Extends `seeds` class by class up to `⟨β,ω⟩ <= bound`.
pub fn reconstruct(
    p: &Problem,
    seeds: &SolutionTable,
    bound: &Q,
    policy: Policy,
    pins: &[(NVar, Q)],
) -> Result<Reconstruction> {
    let mut table = seeds.clone();
    let mut reports = Vec::new();
    let seed_violations = check_seed_relations(p, &table, bound);
    if !seed_violations.is_empty() {
        table.status = "seed-violation".into();
        return Ok(Reconstruction { table, reports, seed_violations, halted: Some(Halt::SeedRelations) });
    }
    for beta in p.classes_up_to(bound) {
        let sys = assemble_system(p, &beta, &table, pins)?;
        let (report, values) = solve_system(&sys);
        let halt = match (&report.status, policy) {
            (SolveStatus::Inconsistent(_), _) => Some(Halt::Inconsistent(beta.clone())),
            (_, Policy::Strict) if !report.relation_free.is_empty() => Some(Halt::Underdetermined(beta.clone())),
            (SolveStatus::Underdetermined { .. }, Policy::Strict | Policy::Pins) => {
                Some(Halt::Underdetermined(beta.clone()))
            }
            _ => None,
        };
        if halt.is_none() {
            let values = match report.status {
                SolveStatus::Underdetermined { ref free } => {
                    for v in free {
                        table.mark_free(v.clone());
                    }
                    solve_with_zero_frees(&sys).expect("consistent system")
                }
                _ => values,
            };
            for (v, x) in values {
                if pins.iter().any(|(w, _)| *w == v) {
                    table.pin(v, x);
                } else {
                    table.insert(v, x);
                }
            }
        }
        table.status = match &halt {
            None => "partial".into(),
            Some(Halt::Inconsistent(_)) => "inconsistent".into(),
            Some(_) => "underdetermined".into(),
        };
        reports.push(report);
        if halt.is_some() {
            return Ok(Reconstruction { table, reports, seed_violations, halted: halt });
        }
    }
    table.status = "complete".into();
    Ok(Reconstruction { table, reports, seed_violations, halted: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    Ok { checked: usize },
    Failure { relation: RelationId, residual: Q },
}

impl VerifyOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, VerifyOutcome::Ok { .. })
    }
}

/// Evaluates every relation with `⟨β,ω⟩ <= bound` on `table` and reports the
/// first nonzero one in (class, degree, tuple) order.
pub fn verify_table(p: &Problem, table: &SolutionTable, bound: &Q, zero_default: bool) -> Result<VerifyOutcome> {
    let lookup = |v: &NVar| match table.get(v) {
        Some(x) => Some(x.clone()),
        None if zero_default => Some(Q::zero()),
        None => None,
    };
    let mut checked = 0;
    for beta in p.classes_up_to(bound) {
        let mut instances = wdvv::relation_instances(p, &beta);
        instances.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        checked += instances.len();
        let first = instances.par_iter().find_map_first(|(t, d)| {
            let (linear, quad) = match wdvv::relation_row(p, *t, &beta, d, &lookup) {
                Ok(x) => x,
                Err(v) => return Some(Err(Error::MissingValue(v))),
            };
            let mut value = quad;
            for (v, c) in linear {
                match lookup(&v) {
                    Some(x) => value += c * x,
                    None => return Some(Err(Error::MissingValue(v))),
                }
            }
            (!value.is_zero()).then(|| {
                let relation = RelationId { tuple: *t, degree: Degree { beta: beta.clone(), d: d.clone() }, sign: 1 };
                Ok(VerifyOutcome::Failure { relation, residual: value })
            })
        });
        if let Some(r) = first {
            return r;
        }
    }
    Ok(VerifyOutcome::Ok { checked })
}

/// Five-symbols residuals on a table whose relations below a class bound have
/// been verified once.
pub struct FsrChecker<'a> {
    p: &'a Problem,
    table: &'a SolutionTable,
    verified_below: i64,
}

impl<'a> FsrChecker<'a> {
    /// Verifies every relation with `⟨β,ω⟩ < top`.
    pub fn new(p: &'a Problem, table: &'a SolutionTable, top: i64) -> Result<Self> {
        match verify_table(p, table, &Q::from_integer((top - 1).into()), false)? {
            VerifyOutcome::Ok { .. } => Ok(FsrChecker { p, table, verified_below: top }),
            VerifyOutcome::Failure { relation, residual } => Err(Error::PreconditionViolated(format!(
                "lower relation {} evaluates to {residual}",
                relation.describe(p.algebra())
            ))),
        }
    }

    pub fn residual(&self, t: [usize; 4], m: usize, beta: &CurveClass, d: &[u32]) -> Result<Q> {
        if self.p.omega_pairing(beta) > self.verified_below {
            return Err(Error::PreconditionViolated(format!(
                "relations below class ({beta}) have not been verified"
            )));
        }
        let combo = wdvv::five_symbols_combination(self.p, t, m, beta, d)?;
        combo.evaluate(|v| self.table.get(v).cloned())
    }
}

/// Value of the five-symbols combination on `table`, after checking that the
/// table satisfies every relation in lower classes.
pub fn fsr_residual(p: &Problem, table: &SolutionTable, t: [usize; 4], m: usize, beta: &CurveClass, d: &[u32]) -> Result<Q> {
    FsrChecker::new(p, table, p.omega_pairing(beta))?.residual(t, m, beta, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::presets::{get_preset, kontsevich_oracle};

    fn p2_seeds() -> SolutionTable {
        let mut t = SolutionTable::new("P2");
        t.pin(Degree::new(vec![1], vec![2]), q(1));
        t
    }

    #[test]
    fn p2_beta_two_system() {
        let p = get_preset("P2", &[]).unwrap().problem();
        let sys = assemble_system(&p, &CurveClass(vec![2]), &p2_seeds(), &[]).unwrap();
        assert_eq!(sys.unknowns, vec![Degree::new(vec![2], vec![5])]);
        assert_eq!(sys.rows.len(), 1);
        assert_eq!(sys.rows[0].rhs, q(1));
        let empty = SolutionTable::new("P2");
        assert!(matches!(
            assemble_system(&p, &CurveClass(vec![2]), &empty, &[]),
            Err(Error::MissingLowerValue(_))
        ));
    }

    #[test]
    fn p2_reconstruction_matches_oracle() {
        let p = get_preset("P2", &[]).unwrap().problem();
        let rec = reconstruct(&p, &p2_seeds(), &q(5), Policy::Strict, &[]).unwrap();
        assert!(rec.halted.is_none());
        let oracle = kontsevich_oracle(5);
        for (b, n) in (1..=5).zip(oracle) {
            let v = Degree::new(vec![b], vec![3 * b as u32 - 1]);
            assert_eq!(rec.table.get(&v), Some(&Q::from_integer(n)));
        }
        assert!(verify_table(&p, &rec.table, &q(5), false).unwrap().is_ok());
        let fsr = fsr_residual(&p, &rec.table, [1, 1, 2, 2], 2, &CurveClass(vec![3]), &[5]).unwrap();
        assert!(fsr.is_zero());
    }

    #[test]
    fn zero_table_verifies() {
        let p = get_preset("toric-ex2", &[]).unwrap().problem();
        let empty = SolutionTable::new("toric-ex2");
        assert!(verify_table(&p, &empty, &q(3), true).unwrap().is_ok());
        assert!(matches!(verify_table(&p, &empty, &q(3), false), Err(Error::MissingValue(_))));
    }

    #[test]
    fn corrupted_lower_value_breaks_precondition() {
        let p = get_preset("P2", &[]).unwrap().problem();
        let rec = reconstruct(&p, &p2_seeds(), &q(3), Policy::Strict, &[]).unwrap();
        let mut bad = rec.table.clone();
        bad.insert(Degree::new(vec![2], vec![5]), q(2));
        assert!(matches!(
            fsr_residual(&p, &bad, [1, 1, 2, 2], 2, &CurveClass(vec![3]), &[5]),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn strict_halts_on_free_unknowns() {
        let p = get_preset("P2", &[]).unwrap().problem();
        let empty = SolutionTable::new("P2");
        let rec = reconstruct(&p, &empty, &q(3), Policy::Strict, &[]).unwrap();
        assert_eq!(rec.halted, Some(Halt::Underdetermined(CurveClass(vec![1]))));
        let pins = vec![(Degree::new(vec![1], vec![2]), q(1))];
        let rec = reconstruct(&p, &empty, &q(3), Policy::Pins, &pins).unwrap();
        assert!(rec.halted.is_none());
        assert_eq!(rec.table.get(&Degree::new(vec![3], vec![8])), Some(&q(12)));
        assert!(rec.table.is_pinned(&Degree::new(vec![1], vec![2])));
        let rec = reconstruct(&p, &empty, &q(3), Policy::ZeroFrees, &[]).unwrap();
        assert!(rec.halted.is_none());
        assert_eq!(rec.table.free().count(), 1);
    }
}
