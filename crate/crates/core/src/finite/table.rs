//! Cayley tables of binary operations on `{0..n-1}`.
//!
//! Text format: the first line is `n`, followed by `n` lines of `n`
//! space-separated 0-based entries; row `x`, column `y` holds `x * y`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::term::{Op, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteBinaryTable {
    n: usize,
    data: Vec<u32>,
}

/// Flags computed by [`FiniteBinaryTable::check_axioms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub idempotent: bool,
    pub left_quasigroup: bool,
    pub left_distributive: bool,
    pub medial: bool,
}

impl AxiomReport {
    pub fn is_quandle(&self) -> bool {
        self.idempotent && self.left_quasigroup && self.left_distributive
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    n: usize,
    table: Vec<Vec<u32>>,
}

impl FiniteBinaryTable {
    pub fn new(n: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::TableFormat(format!(
                "expected {} entries for n = {n}, got {}",
                n * n,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|&&v| v as usize >= n) {
            return Err(Error::TableFormat(format!("entry {bad} out of range for n = {n}")));
        }
        Ok(Self { n, data })
    }

    pub fn from_fn(n: usize, f: impl Fn(u32, u32) -> u32) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                data.push(f(x, y));
            }
        }
        Self::new(n, data)
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::TableFormat(format!("row of length {} in a table of size {n}", r.len())));
        }
        Self::new(n, rows.concat())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, x: u32, y: u32) -> u32 {
        self.data[x as usize * self.n + y as usize]
    }

    pub fn row(&self, x: u32) -> &[u32] {
        &self.data[x as usize * self.n..(x as usize + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut nums = text.split_whitespace().map(|w| {
            w.parse::<u32>()
                .map_err(|_| Error::TableFormat(format!("not a non-negative integer: {w:?}")))
        });
        let n = nums
            .next()
            .ok_or_else(|| Error::TableFormat("empty table file".into()))?? as usize;
        let data = nums.collect::<Result<Vec<u32>>>()?;
        Self::new(n, data)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for x in 0..self.n as u32 {
            let row: Vec<String> = self.row(x).iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson {
            n: self.n,
            table: self.rows(),
        })
        .expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let t: TableJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::TableFormat(format!("bad table JSON: {e}")))?;
        if t.table.len() != t.n {
            return Err(Error::TableFormat(format!("{} rows for n = {}", t.table.len(), t.n)));
        }
        Self::from_rows(&t.table)
    }

    /// `L_x` as a permutation, if row `x` is a bijection.
    pub fn left_translation(&self, x: u32) -> Option<Permutation> {
        Permutation::from_image(self.row(x).to_vec())
    }

    /// `R_x: y -> y * x` as a plain map.
    pub fn right_translation(&self, x: u32) -> Vec<u32> {
        (0..self.n as u32).map(|y| self.op(y, x)).collect()
    }

    /// All left translations, or `NotLeftQuasigroup`.
    pub fn left_translations(&self) -> Result<Vec<Permutation>> {
        (0..self.n as u32)
            .map(|x| self.left_translation(x).ok_or(Error::NotLeftQuasigroup))
            .collect()
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.n as u32).all(|x| self.op(x, x) == x)
    }

    pub fn is_left_quasigroup(&self) -> bool {
        (0..self.n as u32).all(|x| self.left_translation(x).is_some())
    }

    /// `x(yz) = (xy)(xz)`, exhaustively.
    pub fn is_left_distributive(&self) -> bool {
        let n = self.n as u32;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.op(x, y);
                (0..n).all(|z| self.op(x, self.op(y, z)) == self.op(xy, self.op(x, z)))
            })
        })
    }

    /// `(xy)(uv) = (xu)(yv)`, exhaustively.
    pub fn is_medial(&self) -> bool {
        let n = self.n as u32;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.op(x, y);
                (0..n).all(|u| {
                    let xu = self.op(x, u);
                    (0..n).all(|v| self.op(xy, self.op(u, v)) == self.op(xu, self.op(y, v)))
                })
            })
        })
    }

    pub fn check_axioms(&self) -> AxiomReport {
        AxiomReport {
            idempotent: self.is_idempotent(),
            left_quasigroup: self.is_left_quasigroup(),
            left_distributive: self.is_left_distributive(),
            medial: self.is_medial(),
        }
    }

    pub fn is_quandle(&self) -> bool {
        self.is_idempotent() && self.is_left_quasigroup() && self.is_left_distributive()
    }

    pub(crate) fn require_quandle(&self) -> Result<()> {
        if !self.is_left_quasigroup() {
            return Err(Error::NotLeftQuasigroup);
        }
        if !self.is_idempotent() {
            return Err(Error::NotQuandle("not idempotent".into()));
        }
        if !self.is_left_distributive() {
            return Err(Error::NotQuandle("not left distributive".into()));
        }
        Ok(())
    }

    /// Every right translation is injective.
    pub fn is_right_cancellative(&self) -> bool {
        (0..self.n as u32).all(|x| {
            let mut seen = vec![false; self.n];
            self.right_translation(x)
                .into_iter()
                .all(|v| !std::mem::replace(&mut seen[v as usize], true))
        })
    }

    /// `L_x^n = 1` for every `x`.
    pub fn check_symmetry(&self, n: u64) -> bool {
        (0..self.n as u32).all(|x| {
            (0..self.n as u32).all(|y| {
                let mut v = y;
                for _ in 0..n {
                    v = self.op(x, v);
                }
                v == y
            })
        })
    }

    /// `R_x^m(y) = x` for all `x, y`, i.e. `((y * x) * x) ... * x = x`.
    pub fn check_reductivity(&self, m: u64) -> bool {
        (0..self.n as u32).all(|x| {
            (0..self.n as u32).all(|y| {
                let mut v = y;
                for _ in 0..m {
                    v = self.op(v, x);
                }
                v == x
            })
        })
    }

    /// Smallest `n <= max` with `L_x^n = 1`.
    pub fn symmetry_order(&self, max: u64) -> Option<u64> {
        (1..=max).find(|&n| self.check_symmetry(n))
    }

    /// Smallest `m <= max` with `R_x^m(y) = x`.
    pub fn reductivity_order(&self, max: u64) -> Option<u64> {
        (1..=max).find(|&m| self.check_reductivity(m))
    }

    /// Smallest subset closed under `*` and `\` containing `seeds`, sorted.
    pub fn subquandle_closure(&self, seeds: &[u32]) -> Result<Vec<u32>> {
        let ldiv = LeftDivision::new(self)?;
        let mut inside = vec![false; self.n];
        let mut members: Vec<u32> = Vec::new();
        for &s in seeds {
            if s as usize >= self.n {
                return Err(Error::TableFormat(format!("element {s} out of range")));
            }
            if !std::mem::replace(&mut inside[s as usize], true) {
                members.push(s);
            }
        }
        let mut k = 0;
        while k < members.len() {
            let a = members[k];
            for j in 0..=k {
                let b = members[j];
                for v in [self.op(a, b), self.op(b, a), ldiv.get(a, b), ldiv.get(b, a)] {
                    if !std::mem::replace(&mut inside[v as usize], true) {
                        members.push(v);
                    }
                }
            }
            k += 1;
        }
        members.sort_unstable();
        Ok(members)
    }

    /// A generating set built greedily in index order: each element not yet
    /// generated by the previous choices is added.
    pub fn greedy_generators(&self) -> Result<Vec<u32>> {
        let mut gens = Vec::new();
        let mut generated = vec![false; self.n];
        for x in 0..self.n as u32 {
            if generated[x as usize] {
                continue;
            }
            gens.push(x);
            for v in self.subquandle_closure(&gens)? {
                generated[v as usize] = true;
            }
        }
        Ok(gens)
    }

    /// Checks `lhs ≈ rhs` under every assignment of table elements to the
    /// variables; returns the first failing assignment (in variable order).
    pub fn find_counterexample(&self, lhs: &Term, rhs: &Term) -> Result<Option<Vec<(String, u32)>>> {
        let mut vars = lhs.vars();
        for v in rhs.vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let needs_ldiv = has_backslash(lhs) || has_backslash(rhs);
        let ldiv = if needs_ldiv { Some(LeftDivision::new(self)?) } else { None };
        let l = Program::compile(lhs, &vars);
        let r = Program::compile(rhs, &vars);
        if self.n == 0 {
            return Ok(None);
        }
        let mut assignment = vec![0u32; vars.len()];
        let mut stack = Vec::with_capacity(16);
        loop {
            let a = l.run(self, ldiv.as_ref(), &assignment, &mut stack);
            let b = r.run(self, ldiv.as_ref(), &assignment, &mut stack);
            if a != b {
                return Ok(Some(vars.iter().cloned().zip(assignment.iter().copied()).collect()));
            }
            // odometer over all assignments
            let mut i = 0;
            loop {
                if i == assignment.len() {
                    return Ok(None);
                }
                assignment[i] += 1;
                if (assignment[i] as usize) < self.n {
                    break;
                }
                assignment[i] = 0;
                i += 1;
            }
        }
    }

    pub fn satisfies(&self, lhs: &Term, rhs: &Term) -> Result<bool> {
        Ok(self.find_counterexample(lhs, rhs)?.is_none())
    }

    /// Value of `term` under `assignment` (one entry per variable of
    /// `term.vars()`).
    pub fn eval(&self, term: &Term, assignment: &[u32]) -> Result<u32> {
        let vars = term.vars();
        if assignment.len() != vars.len() {
            return Err(Error::TableFormat(format!(
                "{} values for {} variables",
                assignment.len(),
                vars.len()
            )));
        }
        let ldiv = if has_backslash(term) { Some(LeftDivision::new(self)?) } else { None };
        Ok(Program::compile(term, &vars).run(self, ldiv.as_ref(), assignment, &mut Vec::new()))
    }
}

fn has_backslash(t: &Term) -> bool {
    match t {
        Term::Var(_) => false,
        Term::Backslash(..) => true,
        Term::Star(l, r) => has_backslash(l) || has_backslash(r),
    }
}

/// `x \ y`, the solution `u` of `x * u = y`.
pub struct LeftDivision {
    n: usize,
    data: Vec<u32>,
}

impl LeftDivision {
    pub fn new(t: &FiniteBinaryTable) -> Result<Self> {
        let n = t.size();
        let mut data = vec![0; n * n];
        for x in 0..n as u32 {
            let inv = t.left_translation(x).ok_or(Error::NotLeftQuasigroup)?.inverse();
            data[x as usize * n..(x as usize + 1) * n].copy_from_slice(inv.image());
        }
        Ok(Self { n, data })
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> u32 {
        self.data[x as usize * self.n + y as usize]
    }
}

/// A term flattened to postfix form over variable indices.
struct Program(Vec<Instr>);

#[derive(Clone, Copy)]
enum Instr {
    Var(usize),
    Apply(Op),
}

impl Program {
    fn compile(t: &Term, vars: &[String]) -> Self {
        fn go(t: &Term, vars: &[String], out: &mut Vec<Instr>) {
            match t {
                Term::Var(v) => out.push(Instr::Var(vars.iter().position(|w| w == v).unwrap())),
                Term::Star(l, r) | Term::Backslash(l, r) => {
                    go(l, vars, out);
                    go(r, vars, out);
                    let op = if matches!(t, Term::Star(..)) { Op::Star } else { Op::Backslash };
                    out.push(Instr::Apply(op));
                }
            }
        }
        let mut out = Vec::new();
        go(t, vars, &mut out);
        Program(out)
    }

    fn run(
        &self,
        table: &FiniteBinaryTable,
        ldiv: Option<&LeftDivision>,
        assignment: &[u32],
        stack: &mut Vec<u32>,
    ) -> u32 {
        stack.clear();
        for ins in &self.0 {
            match *ins {
                Instr::Var(i) => stack.push(assignment[i]),
                Instr::Apply(op) => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    stack.push(match op {
                        Op::Star => table.op(a, b),
                        Op::Backslash => ldiv.expect("left division prepared").get(a, b),
                    });
                }
            }
        }
        stack.pop().unwrap()
    }
}
