//! Sparse fraction-free elimination over the integers.
//!
//! Each identity `Σ_j c_j P_j + P_0 = 0` with polynomial columns contributes
//! one rational equation per monomial. Rows are cleared of denominators and
//! kept primitive (content divided out, leading entry positive); a row
//! update is `b·r − a·p` divided by content, so no rational arithmetic
//! happens during elimination. The unknowns split into connected
//! components that are reduced independently.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::jetcore::{DiffPoly, Monomial, Q};

/// `Σ_j c_j · columns[j] + constant = 0` as a polynomial identity in the
/// jet variables, linear in the unknowns `c_j`.
#[derive(Clone, Debug, Default)]
pub struct LinearIdentity {
    pub columns: Vec<(usize, DiffPoly)>,
    pub constant: DiffPoly,
}

impl LinearIdentity {
    pub fn homogeneous(columns: Vec<(usize, DiffPoly)>) -> Self {
        LinearIdentity {
            columns,
            constant: DiffPoly::zero(),
        }
    }
}

pub type SparseVec = Vec<(usize, Q)>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub components: usize,
    pub consistent: bool,
}

/// Solutions of a linear system: a particular solution (absent when the
/// system is inconsistent) and a basis of the homogeneous solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Option<SparseVec>,
    pub kernel: Vec<SparseVec>,
    pub stats: SolveStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Row(Vec<(usize, BigInt)>);

impl Row {
    fn from_rational(entries: BTreeMap<usize, Q>) -> Row {
        let lcm = entries
            .values()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let mut row = Row(entries
            .into_iter()
            .map(|(j, q)| (j, q.numer() * (&lcm / q.denom())))
            .collect());
        row.make_primitive();
        row
    }

    fn lead(&self) -> Option<usize> {
        self.0.first().map(|(j, _)| *j)
    }

    fn get(&self, col: usize) -> Option<&BigInt> {
        self.0
            .binary_search_by_key(&col, |(j, _)| *j)
            .ok()
            .map(|i| &self.0[i].1)
    }

    fn make_primitive(&mut self) {
        let mut g = BigInt::zero();
        for (_, v) in &self.0 {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        let negate = self.0.first().is_some_and(|(_, v)| v.is_negative());
        if g.is_zero() {
            return;
        }
        if negate {
            g = -g;
        }
        if !g.is_one() {
            for (_, v) in &mut self.0 {
                *v /= &g;
            }
        }
    }

    /// `self ← (a/g)·self − (e/g)·pivot`, where `e` is this row's entry at
    /// the pivot column and `a` the pivot's leading entry; clears that entry.
    fn eliminate(&mut self, pivot: &Row, col: usize) {
        let a = &pivot.0[0].1;
        debug_assert_eq!(pivot.0[0].0, col);
        let Some(e) = self.get(col).cloned() else {
            return;
        };
        let g = a.gcd(&e);
        let (sa, se) = (a / &g, e / &g);
        let (x, y) = (&self.0, &pivot.0);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut k) = (0, 0);
        while i < x.len() || k < y.len() {
            let take_x = k == y.len() || (i < x.len() && x[i].0 < y[k].0);
            let take_y = i == x.len() || (k < y.len() && y[k].0 < x[i].0);
            if take_x {
                out.push((x[i].0, &x[i].1 * &sa));
                i += 1;
            } else if take_y {
                out.push((y[k].0, -(&y[k].1 * &se)));
                k += 1;
            } else {
                let v = &x[i].1 * &sa - &y[k].1 * &se;
                if !v.is_zero() {
                    out.push((x[i].0, v));
                }
                i += 1;
                k += 1;
            }
        }
        self.0 = out;
        self.make_primitive();
    }
}

/// Result of reducing one component to echelon form.
struct Echelon {
    pivots: BTreeMap<usize, Row>,
    inconsistent: bool,
}

fn echelon(mut rows: Vec<Row>, constant_col: usize) -> Echelon {
    // Sparse rows first keeps fill-in low; duplicates carry no information.
    rows.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    rows.dedup();
    let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
    let mut inconsistent = false;
    for mut row in rows {
        while let Some(lead) = row.lead() {
            if lead == constant_col {
                inconsistent = true;
                break;
            }
            match pivots.get(&lead) {
                Some(p) => row.eliminate(p, lead),
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    Echelon {
        pivots,
        inconsistent,
    }
}

/// Reduce an echelon form to reduced row echelon form in place.
fn back_substitute(pivots: &mut BTreeMap<usize, Row>) {
    let cols: Vec<usize> = pivots.keys().rev().copied().collect();
    for &c in &cols {
        let mut row = pivots.remove(&c).unwrap();
        loop {
            let next = row
                .0
                .iter()
                .skip(1)
                .map(|(j, _)| *j)
                .find(|j| pivots.contains_key(j));
            match next {
                Some(d) => row.eliminate(&pivots[&d], d),
                None => break,
            }
        }
        pivots.insert(c, row);
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Extract one equation per (identity, monomial) and solve exactly.
pub fn solve_identities(n_unknowns: usize, identities: &[LinearIdentity]) -> LinearSolution {
    let constant_col = n_unknowns;
    let mut index: HashMap<(usize, &Monomial), usize> = HashMap::new();
    let mut rows: Vec<BTreeMap<usize, Q>> = Vec::new();
    for (k, id) in identities.iter().enumerate() {
        let cols = id
            .columns
            .iter()
            .map(|(j, p)| (*j, p))
            .chain(std::iter::once((constant_col, &id.constant)));
        for (j, p) in cols {
            assert!(j <= n_unknowns, "unknown index {j} out of range");
            for (m, c) in p.terms() {
                let r = *index.entry((k, m)).or_insert_with(|| {
                    rows.push(BTreeMap::new());
                    rows.len() - 1
                });
                let slot = rows[r].entry(j).or_insert_with(Q::zero);
                *slot += c;
                if slot.is_zero() {
                    rows[r].remove(&j);
                }
            }
        }
    }
    let rows: Vec<Row> = rows
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(Row::from_rational)
        .collect();
    solve_rows(n_unknowns, rows)
}

fn solve_rows(n: usize, rows: Vec<Row>) -> LinearSolution {
    let constant_col = n;
    let equations = rows.len();
    let mut uf = UnionFind((0..n).collect());
    let mut trivially_inconsistent = false;
    for r in &rows {
        match r.lead() {
            Some(l) if l == constant_col => trivially_inconsistent = true,
            Some(l) => {
                for (j, _) in &r.0 {
                    if *j < constant_col {
                        uf.union(l, *j);
                    }
                }
            }
            None => {}
        }
    }
    let mut groups: BTreeMap<usize, (Vec<usize>, Vec<Row>)> = BTreeMap::new();
    for j in 0..n {
        let root = uf.find(j);
        groups.entry(root).or_default().0.push(j);
    }
    for r in rows {
        if let Some(l) = r.lead().filter(|&l| l < constant_col) {
            let root = uf.find(l);
            groups.get_mut(&root).unwrap().1.push(r);
        }
    }
    let groups: Vec<(Vec<usize>, Vec<Row>)> = groups.into_values().collect();
    let components = groups.len();

    let reduced: Vec<(Vec<usize>, Echelon)> = groups
        .into_par_iter()
        .map(|(vars, rows)| (vars, echelon(rows, constant_col)))
        .collect();
    let rank = reduced.iter().map(|(_, e)| e.pivots.len()).sum();
    let consistent = !trivially_inconsistent && reduced.iter().all(|(_, e)| !e.inconsistent);
    let stats = SolveStats {
        unknowns: n,
        equations,
        rank,
        components,
        consistent,
    };

    let finished: Vec<(SparseVec, Vec<(usize, SparseVec)>)> = reduced
        .into_par_iter()
        .map(|(vars, mut e)| {
            back_substitute(&mut e.pivots);
            let mut particular = Vec::new();
            for (&c, row) in &e.pivots {
                if let Some(b) = row.get(constant_col) {
                    particular.push((c, -Q::new(b.clone(), row.0[0].1.clone())));
                }
            }
            let mut kernel = Vec::new();
            for &f in vars.iter().filter(|v| !e.pivots.contains_key(v)) {
                let mut v: SparseVec = vec![(f, Q::one())];
                for (&c, row) in &e.pivots {
                    if let Some(a) = row.get(f) {
                        v.push((c, -Q::new(a.clone(), row.0[0].1.clone())));
                    }
                }
                v.sort_by_key(|(j, _)| *j);
                kernel.push((f, normalize(v)));
            }
            particular.sort_by_key(|(j, _)| *j);
            (particular, kernel)
        })
        .collect();

    let mut particular: SparseVec = Vec::new();
    let mut kernel: Vec<(usize, SparseVec)> = Vec::new();
    for (p, k) in finished {
        particular.extend(p);
        kernel.extend(k);
    }
    particular.sort_by_key(|(j, _)| *j);
    kernel.sort_by_key(|(f, _)| *f);
    LinearSolution {
        particular: consistent.then_some(particular),
        kernel: kernel.into_iter().map(|(_, v)| v).collect(),
        stats,
    }
}

/// Scale to coprime integers, keeping the sign of the defining free entry.
fn normalize(v: SparseVec) -> SparseVec {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    let gcd = v.iter().fold(BigInt::zero(), |acc, (_, q)| {
        acc.gcd(&(q.numer() * (&lcm / q.denom())))
    });
    if gcd.is_zero() {
        return v;
    }
    let scale = Q::new(lcm, gcd);
    v.into_iter().map(|(j, q)| (j, q * &scale)).collect()
}

/// Null space of the homogeneous system, as dense vectors.
pub fn linear_kernel(n_unknowns: usize, identities: &[LinearIdentity]) -> LinearSolution {
    let homogeneous: Vec<LinearIdentity> = identities
        .iter()
        .map(|id| LinearIdentity {
            columns: id.columns.clone(),
            constant: DiffPoly::zero(),
        })
        .collect();
    solve_identities(n_unknowns, &homogeneous)
}
