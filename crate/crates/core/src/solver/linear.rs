//! Exact sparse elimination with row provenance.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::degrees::{CurveClass, Degree};
use crate::linalg::Q;
use crate::wdvv::{NVar, RelationId};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RowTag {
    Relation(RelationId),
    Pin(Degree),
}

impl fmt::Display for RowTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowTag::Relation(id) => write!(f, "{id}"),
            RowTag::Pin(v) => write!(f, "pin {v}"),
        }
    }
}

/// `Σ coeffs[u] · x_u = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: BTreeMap<usize, Q>,
    pub rhs: Q,
    pub tag: RowTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub beta: CurveClass,
    pub unknowns: Vec<NVar>,
    /// Relation rows first, pin rows last.
    pub rows: Vec<Row>,
    pub n_relations: usize,
}

impl LinearSystem {
    pub fn relation_rows(&self) -> &[Row] {
        &self.rows[..self.n_relations]
    }

    pub fn pin_rows(&self) -> &[Row] {
        &self.rows[self.n_relations..]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub rows: Vec<RowTag>,
    /// The nonzero constant `c` in the derived equation `0 = c`.
    pub residual: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveStatus {
    Unique,
    Underdetermined { free: Vec<NVar> },
    Inconsistent(Witness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub beta: CurveClass,
    pub n_relations: usize,
    pub n_unknowns: usize,
    pub rank: usize,
    /// Rank of the relation rows alone, before pins.
    pub relation_rank: usize,
    /// Unknowns left free by the relation rows alone.
    pub relation_free: Vec<NVar>,
    pub status: SolveStatus,
}

impl SolveReport {
    pub fn is_unique(&self) -> bool {
        self.status == SolveStatus::Unique
    }
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "beta ({}): {} relations, {} unknowns, rank {}: ",
            self.beta, self.n_relations, self.n_unknowns, self.rank
        )?;
        match &self.status {
            SolveStatus::Unique => write!(f, "unique"),
            SolveStatus::Underdetermined { free } => {
                let names: Vec<String> = free.iter().map(ToString::to_string).collect();
                write!(f, "underdetermined, free {}", names.join(" "))
            }
            SolveStatus::Inconsistent(w) => {
                let names: Vec<String> = w.rows.iter().map(ToString::to_string).collect();
                write!(f, "inconsistent (0 = {}) from {}", w.residual, names.join(", "))
            }
        }
    }
}

struct Pivot {
    col: usize,
    row: BTreeMap<usize, Q>,
    rhs: Q,
    /// Bitset over pivot creation order.
    tags: Vec<u64>,
}

fn or_into(a: &mut Vec<u64>, b: &[u64]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x |= y;
    }
}

fn set_bit(a: &mut Vec<u64>, i: usize) {
    if a.len() <= i / 64 {
        a.resize(i / 64 + 1, 0);
    }
    a[i / 64] |= 1 << (i % 64);
}

fn bits(a: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &x) in a.iter().enumerate() {
        for b in 0..64 {
            if x >> b & 1 == 1 {
                out.push(w * 64 + b);
            }
        }
    }
    out
}

/// Incremental reduced row echelon form.
struct Eliminator {
    pivots: Vec<Pivot>,
    by_col: HashMap<usize, usize>,
    /// Original row index of each pivot, by creation order.
    origin: Vec<usize>,
}

enum Outcome {
    NewPivot,
    Redundant,
    /// The row reduced to `0 = c` with `c != 0`; carries the contributing original rows.
    Conflict(Vec<usize>, Q),
}

impl Eliminator {
    fn new() -> Self {
        Eliminator { pivots: Vec::new(), by_col: HashMap::new(), origin: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn add(&mut self, index: usize, row: &Row) -> Outcome {
        let mut r = row.coeffs.clone();
        let mut rhs = row.rhs.clone();
        let mut tags: Vec<u64> = Vec::new();
        let hits: Vec<(usize, Q)> = r
            .iter()
            .filter_map(|(c, x)| self.by_col.get(c).map(|&p| (p, x.clone())))
            .collect();
        for (p, factor) in hits {
            let piv = &self.pivots[p];
            for (c, x) in &piv.row {
                let e = r.entry(*c).or_insert_with(Q::zero);
                *e -= &factor * x;
                if e.is_zero() {
                    r.remove(c);
                }
            }
            rhs -= &factor * &piv.rhs;
            or_into(&mut tags, &piv.tags);
        }
        let Some((&col, lead)) = r.iter().next() else {
            if rhs.is_zero() {
                return Outcome::Redundant;
            }
            let mut rows: Vec<usize> = bits(&tags).into_iter().map(|k| self.origin[k]).collect();
            rows.push(index);
            return Outcome::Conflict(rows, rhs);
        };
        let inv = Q::one() / lead;
        for x in r.values_mut() {
            *x *= &inv;
        }
        rhs *= &inv;
        let id = self.pivots.len();
        set_bit(&mut tags, id);
        for piv in &mut self.pivots {
            if let Some(f) = piv.row.get(&col).cloned() {
                for (c, x) in &r {
                    let e = piv.row.entry(*c).or_insert_with(Q::zero);
                    *e -= &f * x;
                    if e.is_zero() {
                        piv.row.remove(c);
                    }
                }
                piv.rhs -= &f * &rhs;
                or_into(&mut piv.tags, &tags);
            }
        }
        self.by_col.insert(col, id);
        self.origin.push(index);
        self.pivots.push(Pivot { col, row: r, rhs, tags });
        Outcome::NewPivot
    }

    fn free_columns(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|c| !self.by_col.contains_key(c)).collect()
    }
}

/// Whether the given rows are jointly inconsistent.
fn inconsistent(rows: &[&Row]) -> Option<Q> {
    let mut e = Eliminator::new();
    for (i, r) in rows.iter().enumerate() {
        if let Outcome::Conflict(_, c) = e.add(i, r) {
            return Some(c);
        }
    }
    None
}

/// Greedy deletion filter over a conflicting row set.
fn minimize(sys: &LinearSystem, mut core: Vec<usize>, limit: usize) -> Vec<usize> {
    if core.len() > limit {
        return core;
    }
    let mut k = 0;
    while k < core.len() {
        let trial: Vec<&Row> = core.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, &r)| &sys.rows[r]).collect();
        if inconsistent(&trial).is_some() {
            core.remove(k);
        } else {
            k += 1;
        }
    }
    core
}

/// Largest conflict set that is still reduced by the greedy filter.
pub const WITNESS_MINIMIZE_LIMIT: usize = 160;

/// Solves the system exactly. Returns the report and the values of every
/// unknown fixed by the rows (all of them when the status is unique).
pub fn solve_system(sys: &LinearSystem) -> (SolveReport, BTreeMap<NVar, Q>) {
    let n = sys.unknowns.len();
    let mut e = Eliminator::new();
    let mut conflict = None;
    let mut before_pins: Option<(usize, Vec<usize>)> = None;
    for (i, row) in sys.rows.iter().enumerate() {
        if i == sys.n_relations {
            before_pins = Some((e.rank(), e.free_columns(n)));
        }
        if let Outcome::Conflict(rows, c) = e.add(i, row) {
            conflict = Some((rows, c));
            break;
        }
    }
    let (relation_rank, relation_free) = before_pins.unwrap_or_else(|| (e.rank(), e.free_columns(n)));
    let relation_free: Vec<NVar> = relation_free.into_iter().map(|c| sys.unknowns[c].clone()).collect();
    let mut values = BTreeMap::new();
    for piv in &e.pivots {
        if piv.row.len() == 1 {
            values.insert(sys.unknowns[piv.col].clone(), piv.rhs.clone());
        }
    }
    let status = if let Some((rows, _)) = conflict {
        let core = minimize(sys, rows, WITNESS_MINIMIZE_LIMIT);
        let refs: Vec<&Row> = core.iter().map(|&r| &sys.rows[r]).collect();
        let residual = inconsistent(&refs).expect("core stays inconsistent");
        values.clear();
        SolveStatus::Inconsistent(Witness { rows: core.iter().map(|&r| sys.rows[r].tag.clone()).collect(), residual })
    } else if e.rank() < n {
        SolveStatus::Underdetermined {
            free: e.free_columns(n).into_iter().map(|c| sys.unknowns[c].clone()).collect(),
        }
    } else {
        SolveStatus::Unique
    };
    let report = SolveReport {
        beta: sys.beta.clone(),
        n_relations: sys.n_relations,
        n_unknowns: n,
        rank: e.rank(),
        relation_rank,
        relation_free,
        status,
    };
    (report, values)
}

/// Values after setting every free unknown to zero, or `None` when inconsistent.
pub fn solve_with_zero_frees(sys: &LinearSystem) -> Option<BTreeMap<NVar, Q>> {
    let n = sys.unknowns.len();
    let mut e = Eliminator::new();
    for (i, row) in sys.rows.iter().enumerate() {
        if let Outcome::Conflict(..) = e.add(i, row) {
            return None;
        }
    }
    let mut out = BTreeMap::new();
    for c in e.free_columns(n) {
        out.insert(sys.unknowns[c].clone(), Q::zero());
    }
    for piv in &e.pivots {
        out.insert(sys.unknowns[piv.col].clone(), piv.rhs.clone());
    }
    Some(out)
}

/// Rank of the rows' coefficient parts.
pub fn coefficient_rank(rows: &[BTreeMap<usize, Q>]) -> usize {
    let mut e = Eliminator::new();
    let mut rank = 0;
    for (i, c) in rows.iter().enumerate() {
        let row = Row { coeffs: c.clone(), rhs: Q::zero(), tag: RowTag::Pin(Degree::new(vec![], vec![])) };
        if let Outcome::NewPivot = e.add(i, &row) {
            rank += 1;
        }
    }
    rank
}
