//! Zero-left-prime (ZLP) matrices: the ZLP test, factoring a full-row-rank
//! matrix through a ZLP one, and completing a ZLP matrix to a unimodular one.
//!
//! Completion is a bounded constructive search. Column operations bring `H`
//! to `[I_r | 0]`; the accumulated operations `V` and their inverse are
//! tracked together, and `U = V^-1` has `H` as its first rows.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::groebner::is_unit_ideal;
use crate::modsyz::{module_equal, module_quotient_by_poly, ModuleVector};
use crate::polymatrix::PolyMatrix;
use crate::polyring::{MonomialOrder, OrderKind, Polynomial};

/// Limits for the completion search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompletionBudget {
    /// Elementary operations per attempt.
    pub max_ops: usize,
    /// Largest total degree allowed in any intermediate entry.
    pub max_degree: u32,
}

impl Default for CompletionBudget {
    fn default() -> Self {
        CompletionBudget {
            max_ops: 200,
            max_degree: 12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionStatus {
    Completed,
    FailedDepthLimit,
}

#[derive(Clone, Debug)]
pub struct CompletionResult {
    pub status: CompletionStatus,
    /// Unimodular `l x l` matrix whose first `r` rows are the input.
    pub unimodular: Option<PolyMatrix>,
    /// Operations spent by the successful (or last) attempt.
    pub ops: usize,
}

impl CompletionResult {
    pub fn is_completed(&self) -> bool {
        self.status == CompletionStatus::Completed
    }
}

fn require_full_row_rank(h: &PolyMatrix) -> Result<()> {
    let rank = h.rank();
    if rank < h.nrows() {
        return Err(Error::NotFullRank {
            rank,
            rows: h.nrows(),
        });
    }
    Ok(())
}

/// True iff the maximal minors of `h` generate the unit ideal.
pub fn is_zlp(h: &PolyMatrix) -> Result<bool> {
    require_full_row_rank(h)?;
    let minors: Vec<Polynomial> = h
        .minor_list(h.nrows())?
        .into_iter()
        .map(|(_, p)| p)
        .filter(|p| !p.is_zero())
        .collect();
    let order = MonomialOrder::degrevlex(h.nvars());
    Ok(is_unit_ideal(&minors, &order)?.is_some())
}

/// Factors `h0 = h1 * h2` with `h1` square and `h2` ZLP, provided the
/// reduced maximal minors of `h0` generate the unit ideal.
pub fn zlp_factorize(h0: &PolyMatrix) -> Result<(PolyMatrix, PolyMatrix)> {
    require_full_row_rank(h0)?;
    let (r, n) = (h0.nrows(), h0.nvars());
    if is_zlp(h0)? {
        return Ok((PolyMatrix::identity(n, r), h0.clone()));
    }
    let report = h0.minors(r)?;
    let order = MonomialOrder::degrevlex(n);
    if is_unit_ideal(&report.reduced, &order)?.is_none() {
        return Err(Error::HypothesisViolated(
            "reduced maximal minors do not generate the unit ideal".into(),
        ));
    }
    let d = report.d;

    let h2 = if r == 1 {
        // the gcd of the entries is d
        h0.divide_row(0, &d)?
            .ok_or_else(|| Error::Internal("row not divisible by its gcd".into()))?
    } else {
        let rows = h0.row_vectors();
        let quotient = module_quotient_by_poly(&rows, &d)?;
        select_basis(&quotient, r)?
    };

    let h1 = solve_left_factor(h0, &h2)?;
    if h1.mul(&h2)? != *h0 {
        return Err(Error::Internal("left factor does not reproduce the input".into()));
    }
    Ok((h1, h2))
}

// The quotient module is free of rank r. Its reduced basis is used when it
// has exactly r elements; otherwise any r generators that span it form a basis.
fn select_basis(quotient: &[ModuleVector], r: usize) -> Result<PolyMatrix> {
    let stack = |vs: &[&ModuleVector]| {
        PolyMatrix::from_rows(vs.iter().map(|v| v.entries().to_vec()).collect())
    };
    if quotient.len() == r {
        let m = stack(&quotient.iter().collect::<Vec<_>>())?;
        if m.rank() == r {
            return Ok(m);
        }
    }
    if quotient.len() > r {
        for subset in quotient.iter().combinations(r) {
            let m = stack(&subset)?;
            if m.rank() < r {
                continue;
            }
            if module_equal(&m.row_vectors(), quotient)? && is_zlp(&m)? {
                return Ok(m);
            }
        }
    }
    Err(Error::FactorizationIncomplete(format!(
        "no {} generators span the quotient module ({} generators)",
        r,
        quotient.len()
    )))
}

// h1 = h0[:, S] * adj(h2[:, S]) / det(h2[:, S]) for a column subset S with a
// nonzero minor.
fn solve_left_factor(h0: &PolyMatrix, h2: &PolyMatrix) -> Result<PolyMatrix> {
    let r = h2.nrows();
    let all_rows: Vec<usize> = (0..r).collect();
    for cols in (0..h2.ncols()).combinations(r) {
        let block = h2.submatrix(&all_rows, &cols);
        let det = block.determinant()?;
        if det.is_zero() {
            continue;
        }
        let adj = adjugate(&block)?;
        let num = h0.submatrix(&all_rows, &cols).mul(&adj)?;
        let mut out = num.clone();
        for i in 0..r {
            for j in 0..r {
                let q = num.get(i, j).div_exact(&det)?.ok_or_else(|| {
                    Error::Internal("left factor is not polynomial".into())
                })?;
                out.set(i, j, q);
            }
        }
        return Ok(out);
    }
    Err(Error::NotFullRank { rank: h2.rank(), rows: r })
}

fn adjugate(m: &PolyMatrix) -> Result<PolyMatrix> {
    let n = m.nrows();
    if n == 1 {
        return Ok(PolyMatrix::identity(m.nvars(), 1));
    }
    let mut out = PolyMatrix::zeros(m.nvars(), n, n);
    for i in 0..n {
        for j in 0..n {
            let rs: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            let cs: Vec<usize> = (0..n).filter(|&k| k != j).collect();
            let minor = m.submatrix(&rs, &cs).determinant()?;
            out.set(j, i, if (i + j) % 2 == 0 { minor } else { -minor });
        }
    }
    Ok(out)
}

/// Completes a ZLP matrix `h` (`r x l`) to a unimodular `l x l` matrix with
/// `h` as its first `r` rows.
///
/// The search tries degrevlex division first, then lex under each rotation
/// of the variables. `FailedDepthLimit` is inconclusive: it only says the
/// budget ran out.
pub fn complete_to_unimodular(h: &PolyMatrix, budget: &CompletionBudget) -> Result<CompletionResult> {
    if !is_zlp(h)? {
        return Err(Error::HypothesisViolated("matrix is not zero left prime".into()));
    }
    let n = h.nvars();
    let mut orders = vec![MonomialOrder::degrevlex(n)];
    for shift in 0..n {
        let ranking = (0..n).map(|k| (k + shift) % n).collect();
        orders.push(MonomialOrder::with_ranking(OrderKind::Lex, ranking).unwrap());
    }
    let mut last_ops = 0;
    for order in &orders {
        let mut search = Search::new(h, order.clone(), *budget);
        match search.run() {
            Ok(()) => {
                let u = search.v_inv;
                if u.top_rows(h.nrows()) != *h || !u.is_unimodular()? {
                    return Err(Error::Internal("completion lost the input rows".into()));
                }
                return Ok(CompletionResult {
                    status: CompletionStatus::Completed,
                    unimodular: Some(u),
                    ops: search.ops,
                });
            }
            Err(Stop::Budget) => last_ops = search.ops,
            Err(Stop::Failed(e)) => return Err(e),
        }
    }
    Ok(CompletionResult {
        status: CompletionStatus::FailedDepthLimit,
        unimodular: None,
        ops: last_ops,
    })
}

enum Stop {
    Budget,
    Failed(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Failed(e)
    }
}

/// State of one completion attempt: `w = h * v` and `v_inv = v^-1`.
struct Search {
    w: PolyMatrix,
    v: PolyMatrix,
    v_inv: PolyMatrix,
    order: MonomialOrder,
    budget: CompletionBudget,
    ops: usize,
}

impl Search {
    fn new(h: &PolyMatrix, order: MonomialOrder, budget: CompletionBudget) -> Self {
        let (n, l) = (h.nvars(), h.ncols());
        Search {
            w: h.clone(),
            v: PolyMatrix::identity(n, l),
            v_inv: PolyMatrix::identity(n, l),
            order,
            budget,
            ops: 0,
        }
    }

    fn tick(&mut self, too_deep: bool) -> std::result::Result<(), Stop> {
        self.ops += 1;
        if self.ops > self.budget.max_ops || too_deep {
            return Err(Stop::Budget);
        }
        Ok(())
    }

    /// Counts an operation that touched columns `cols` of `w` and `v` and
    /// rows `rows` of `v_inv`.
    fn degree_check(&mut self, cols: &[usize], rows: &[usize]) -> std::result::Result<(), Stop> {
        let max = self.budget.max_degree;
        let deep = |p: &Polynomial| p.total_degree() > max;
        let too_deep = cols.iter().any(|&c| {
            (0..self.w.nrows()).any(|i| deep(self.w.get(i, c)))
                || (0..self.v.nrows()).any(|i| deep(self.v.get(i, c)))
        }) || rows.iter().any(|&r| self.v_inv.row(r).iter().any(deep));
        self.tick(too_deep)
    }

    /// `col_c += t * col_p`.
    fn add(&mut self, c: usize, p: usize, t: &Polynomial) -> std::result::Result<(), Stop> {
        for m in [&mut self.w, &mut self.v] {
            for i in 0..m.nrows() {
                let x = m.get(i, c) + &(t * m.get(i, p));
                m.set(i, c, x);
            }
        }
        for j in 0..self.v_inv.ncols() {
            let x = self.v_inv.get(p, j) - &(t * self.v_inv.get(c, j));
            self.v_inv.set(p, j, x);
        }
        self.degree_check(&[c], &[p])
    }

    fn swap(&mut self, a: usize, b: usize) -> std::result::Result<(), Stop> {
        if a == b {
            return Ok(());
        }
        for m in [&mut self.w, &mut self.v] {
            for i in 0..m.nrows() {
                let (x, y) = (m.get(i, a).clone(), m.get(i, b).clone());
                m.set(i, a, y);
                m.set(i, b, x);
            }
        }
        for j in 0..self.v_inv.ncols() {
            let (x, y) = (self.v_inv.get(a, j).clone(), self.v_inv.get(b, j).clone());
            self.v_inv.set(a, j, y);
            self.v_inv.set(b, j, x);
        }
        self.tick(false)
    }

    /// Scales column `c` by the unit `s`.
    fn scale(&mut self, c: usize, s: &Polynomial) -> std::result::Result<(), Stop> {
        let sv = s.constant_value().expect("unit scale");
        let inv = sv.recip();
        for m in [&mut self.w, &mut self.v] {
            for i in 0..m.nrows() {
                let x = m.get(i, c).scale(&sv);
                m.set(i, c, x);
            }
        }
        for j in 0..self.v_inv.ncols() {
            let x = self.v_inv.get(c, j).scale(&inv);
            self.v_inv.set(c, j, x);
        }
        self.tick(false)
    }

    /// Right-multiplies columns `i, j` by `[[a, b], [c, d]]` (rows `i, j`),
    /// a block of determinant 1.
    fn block(
        &mut self,
        i: usize,
        j: usize,
        [a, b, c, d]: [&Polynomial; 4],
    ) -> std::result::Result<(), Stop> {
        for m in [&mut self.w, &mut self.v] {
            for k in 0..m.nrows() {
                let (x, y) = (m.get(k, i).clone(), m.get(k, j).clone());
                m.set(k, i, &(&x * a) + &(&y * c));
                m.set(k, j, &(&x * b) + &(&y * d));
            }
        }
        // inverse block [[d, -b], [-c, a]] acts on rows i, j
        for k in 0..self.v_inv.ncols() {
            let (x, y) = (self.v_inv.get(i, k).clone(), self.v_inv.get(j, k).clone());
            self.v_inv.set(i, k, &(d * &x) - &(b * &y));
            self.v_inv.set(j, k, &(a * &y) - &(c * &x));
        }
        self.degree_check(&[i, j], &[i, j])
    }

    fn run(&mut self) -> std::result::Result<(), Stop> {
        for k in 0..self.w.nrows() {
            self.clear_row(k)?;
        }
        Ok(())
    }

    /// Makes row `k` equal to `e_k`, leaving rows above untouched.
    fn clear_row(&mut self, k: usize) -> std::result::Result<(), Stop> {
        let l = self.w.ncols();
        let unit_col = loop {
            if let Some(c) = (k..l).find(|&c| self.w.get(k, c).is_unit()) {
                break c;
            }
            if self.euclid_step(k)? {
                continue;
            }
            if self.comaximal_pair(k)? || self.augment(k)? {
                continue;
            }
            return Err(Stop::Budget);
        };
        self.swap(k, unit_col)?;
        let inv = Polynomial::constant(
            self.w.nvars(),
            self.w.get(k, k).constant_value().unwrap().recip(),
        );
        self.scale(k, &inv)?;
        for c in 0..l {
            if c == k || self.w.get(k, c).is_zero() {
                continue;
            }
            let t = -self.w.get(k, c);
            self.add(c, k, &t)?;
        }
        Ok(())
    }

    /// One round of division by the smallest entry of row `k`. Returns false
    /// when no entry changes.
    fn euclid_step(&mut self, k: usize) -> std::result::Result<bool, Stop> {
        let l = self.w.ncols();
        let Some(p) = (k..l)
            .filter(|&c| !self.w.get(k, c).is_zero())
            .min_by_key(|&c| {
                let e = self.w.get(k, c);
                (e.total_degree(), e.num_terms(), c)
            })
        else {
            return Err(Stop::Failed(Error::Internal("row became zero".into())));
        };
        let mut changed = false;
        for c in k..l {
            if c == p || self.w.get(k, c).is_zero() {
                continue;
            }
            let (q, _) = self.w.get(k, c).div_rem(self.w.get(k, p), &self.order)?;
            if q.is_zero() {
                continue;
            }
            self.add(c, p, &-q)?;
            changed = true;
        }
        Ok(changed)
    }

    /// Finds entries `v_i, v_j` with `a v_i + b v_j = 1` and turns `v_i` into 1.
    fn comaximal_pair(&mut self, k: usize) -> std::result::Result<bool, Stop> {
        let l = self.w.ncols();
        for i in k..l {
            for j in i + 1..l {
                let (vi, vj) = (self.w.get(k, i).clone(), self.w.get(k, j).clone());
                if vi.is_zero() || vj.is_zero() {
                    continue;
                }
                let Some(cert) = is_unit_ideal(&[vi.clone(), vj.clone()], &self.order)? else {
                    continue;
                };
                let neg_vj = -&vj;
                self.block(i, j, [&cert[0], &neg_vj, &cert[1], &vi])?;
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Finds `j` with `1 - v_j` in the ideal of the other entries and adds
    /// the matching combination of columns to column `j`.
    fn augment(&mut self, k: usize) -> std::result::Result<bool, Stop> {
        let l = self.w.ncols();
        let n = self.w.nvars();
        for j in k..l {
            let others: Vec<usize> = (k..l)
                .filter(|&i| i != j && !self.w.get(k, i).is_zero())
                .collect();
            if others.is_empty() {
                continue;
            }
            let gens: Vec<Polynomial> = others.iter().map(|&i| self.w.get(k, i).clone()).collect();
            let basis = crate::groebner::buchberger(&gens, &self.order, true)?;
            let target = &Polynomial::one(n) - self.w.get(k, j);
            let Some(t) = basis.lift(&target) else {
                continue;
            };
            for (&i, ti) in others.iter().zip(&t) {
                if !ti.is_zero() {
                    self.add(j, i, ti)?;
                }
            }
            return Ok(true);
        }
        Ok(false)
    }
}
