//! Submodules of free modules `Q[z]^m`: Groebner bases under a
//! position-over-term order, syzygies, membership and quotients.

use crate::error::{Error, Result};
use crate::groebner::engine::{self, Elem, ModuleOrder, Vect};
use crate::polymatrix::PolyMatrix;
use crate::polyring::{MonomialOrder, Polynomial};

/// A vector in `Q[z]^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    entries: Vec<Polynomial>,
}

impl ModuleVector {
    pub fn new(entries: Vec<Polynomial>) -> Result<Self> {
        let Some(first) = entries.first() else {
            return Err(Error::Shape("module vector of length 0".into()));
        };
        let n = first.nvars();
        if entries.iter().any(|p| p.nvars() != n) {
            return Err(Error::Dimension("module vector entries in different rings".into()));
        }
        Ok(ModuleVector { entries })
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Polynomial> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.entries[0].nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }
}

/// Reduced Groebner basis of a submodule of `Q[z]^rank`.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    generators: Vec<ModuleVector>,
    rank: usize,
    order: MonomialOrder,
    elems: Vec<Elem>,
}

impl ModuleBasis {
    pub fn generators(&self) -> &[ModuleVector] {
        &self.generators
    }

    /// Ambient rank `m`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Generators stacked as rows; `None` for the zero module.
    pub fn to_matrix(&self) -> Option<PolyMatrix> {
        if self.generators.is_empty() {
            return None;
        }
        let rows = self.generators.iter().map(|g| g.entries.clone()).collect();
        PolyMatrix::from_rows(rows).ok()
    }

    /// Reduces `v` to zero against the basis.
    pub fn contains(&self, v: &ModuleVector) -> bool {
        if v.len() != self.rank {
            return false;
        }
        let ord = ModuleOrder::new(self.order.clone());
        let e = Elem {
            v: Vect::from_polys(&v.entries, &ord),
            tag: None,
        };
        engine::reduce(e, &self.elems, &ord).v.is_zero()
    }

    pub fn satisfies_buchberger_criterion(&self) -> bool {
        engine::satisfies_buchberger_criterion(&self.elems, &ModuleOrder::new(self.order.clone()))
    }
}

fn check_rows(rows: &[ModuleVector]) -> Result<(usize, usize)> {
    let Some(first) = rows.first() else {
        return Err(Error::Shape("empty generator list".into()));
    };
    let (m, n) = (first.len(), first.nvars());
    for r in rows {
        if r.len() != m {
            return Err(Error::Shape(format!("rows of length {} and {}", m, r.len())));
        }
        if r.nvars() != n {
            return Err(Error::Dimension("rows in different rings".into()));
        }
    }
    Ok((m, n))
}

fn basis_from_elems(elems: Vec<Elem>, rank: usize, order: MonomialOrder) -> ModuleBasis {
    let n = order.nvars();
    let generators = elems
        .iter()
        .map(|e| ModuleVector {
            entries: e.v.to_polys(rank, n),
        })
        .collect();
    ModuleBasis {
        generators,
        rank,
        order,
        elems,
    }
}

/// Groebner basis of the module generated by `rows` (all of length `rank`).
pub fn module_basis(rows: &[ModuleVector], rank: usize, order: &MonomialOrder) -> Result<ModuleBasis> {
    if rows.iter().any(|r| r.len() != rank) {
        return Err(Error::Shape("row length differs from ambient rank".into()));
    }
    if rows.iter().any(|r| r.nvars() != order.nvars()) {
        return Err(Error::Dimension("rows and order in different rings".into()));
    }
    let ord = ModuleOrder::new(order.clone());
    let gens = rows
        .iter()
        .map(|r| Elem {
            v: Vect::from_polys(&r.entries, &ord),
            tag: None,
        })
        .collect();
    let elems = engine::groebner(gens, &ord, false);
    Ok(basis_from_elems(elems, rank, order.clone()))
}

/// Syzygies of `rows` under degrevlex.
pub fn syzygy(rows: &[ModuleVector]) -> Result<ModuleBasis> {
    let (_, n) = check_rows(rows)?;
    syzygy_with_order(rows, &MonomialOrder::degrevlex(n))
}

/// Generators of `{b : sum b_i * rows_i = 0}`, read off the module Groebner
/// basis of the augmented rows `[row_i | e_i]`.
pub fn syzygy_with_order(rows: &[ModuleVector], order: &MonomialOrder) -> Result<ModuleBasis> {
    let (m, n) = check_rows(rows)?;
    if n != order.nvars() {
        return Err(Error::Dimension("rows and order in different rings".into()));
    }
    let l = rows.len();
    let ord = ModuleOrder::new(order.clone());
    let gens = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut aug = r.entries.clone();
            aug.extend((0..l).map(|j| {
                if i == j {
                    Polynomial::one(n)
                } else {
                    Polynomial::zero(n)
                }
            }));
            Elem {
                v: Vect::from_polys(&aug, &ord),
                tag: None,
            }
        })
        .collect();
    let gb = engine::groebner(gens, &ord, false);
    // position-over-term: a leading position in the tag block means the
    // first m coordinates vanish
    let syz: Vec<Elem> = gb
        .into_iter()
        .filter(|e| e.v.lead().is_some_and(|t| t.pos >= m))
        .map(|mut e| {
            for t in &mut e.v.terms {
                t.pos -= m;
            }
            e
        })
        .collect();
    Ok(basis_from_elems(syz, l, order.clone()))
}

/// Rank of the stacked rows over the fraction field.
pub fn rank_of_module(rows: &[ModuleVector]) -> Result<usize> {
    if rows.is_empty() {
        return Ok(0);
    }
    check_rows(rows)?;
    let mat = PolyMatrix::from_rows(rows.iter().map(|r| r.entries.clone()).collect())?;
    Ok(mat.rank())
}

pub fn module_membership(v: &ModuleVector, basis: &ModuleBasis) -> bool {
    basis.contains(v)
}

/// Whether `a` and `b` generate the same submodule.
pub fn module_equal(a: &[ModuleVector], b: &[ModuleVector]) -> Result<bool> {
    let all: Vec<&ModuleVector> = a.iter().chain(b).collect();
    let Some(first) = all.first() else {
        return Ok(true);
    };
    let (m, n) = (first.len(), first.nvars());
    if all.iter().any(|v| v.len() != m) {
        return Err(Error::Shape("different ambient ranks".into()));
    }
    let order = MonomialOrder::degrevlex(n);
    let ga = module_basis(a, m, &order)?;
    let gb = module_basis(b, m, &order)?;
    Ok(b.iter().all(|v| ga.contains(v)) && a.iter().all(|v| gb.contains(v)))
}

/// Generators of `{v : d*v in <rows>}`, via syzygies of the rows stacked
/// with `d*e_j`.
pub fn module_quotient_by_poly(rows: &[ModuleVector], d: &Polynomial) -> Result<Vec<ModuleVector>> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (m, n) = check_rows(rows)?;
    if d.nvars() != n {
        return Err(Error::Dimension("divisor in a different ring".into()));
    }
    let k = rows.len();
    let mut stacked = rows.to_vec();
    for j in 0..m {
        let mut e = vec![Polynomial::zero(n); m];
        e[j] = d.clone();
        stacked.push(ModuleVector { entries: e });
    }
    let syz = syzygy(&stacked)?;
    // sum a_i row_i + sum b_j d e_j = 0, so d * (-b) lies in <rows>
    let quotient: Vec<ModuleVector> = syz
        .generators
        .iter()
        .map(|g| ModuleVector {
            entries: g.entries[k..].iter().map(|p| -p).collect(),
        })
        .filter(|v| !v.is_zero())
        .collect();
    let basis = module_basis(&quotient, m, &MonomialOrder::degrevlex(n))?;
    Ok(basis.generators)
}
