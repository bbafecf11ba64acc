//! Buchberger engine over free modules `Q[z]^m` with a position-over-term
//! order. Ideals are the rank-one case.
//!
//! Vectors are kept as term lists sorted descending, so leading terms are at
//! the front and monomial shifts preserve the sort. Each element may carry a
//! tag vector that is updated by the same linear operations; this is how
//! cofactors with respect to the input generators are tracked.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polyring::{Monomial, MonomialOrder, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModTerm {
    pub pos: usize,
    pub mono: Monomial,
    pub coef: BigRational,
}

/// Position-over-term order: a smaller position index is more significant,
/// ties broken by the monomial order.
#[derive(Clone, Debug)]
pub(crate) struct ModuleOrder {
    pub order: MonomialOrder,
}

impl ModuleOrder {
    pub fn new(order: MonomialOrder) -> Self {
        ModuleOrder { order }
    }

    pub fn cmp(&self, ap: usize, am: &Monomial, bp: usize, bm: &Monomial) -> Ordering {
        bp.cmp(&ap).then_with(|| self.order.cmp(am, bm))
    }
}

/// Sparse module vector; terms sorted descending, no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Vect {
    pub terms: Vec<ModTerm>,
}

impl Vect {
    pub fn zero() -> Self {
        Vect { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&ModTerm> {
        self.terms.first()
    }

    pub fn from_polys(polys: &[Polynomial], ord: &ModuleOrder) -> Self {
        let mut terms: Vec<ModTerm> = polys
            .iter()
            .enumerate()
            .flat_map(|(pos, p)| {
                p.terms().map(move |(m, c)| ModTerm {
                    pos,
                    mono: m.clone(),
                    coef: c.clone(),
                })
            })
            .collect();
        terms.sort_by(|a, b| ord.cmp(b.pos, &b.mono, a.pos, &a.mono));
        Vect { terms }
    }

    /// Unit vector `e_pos`.
    pub fn unit(pos: usize, nvars: usize) -> Self {
        Vect {
            terms: vec![ModTerm {
                pos,
                mono: Monomial::one(nvars),
                coef: BigRational::one(),
            }],
        }
    }

    pub fn to_polys(&self, rank: usize, nvars: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(nvars); rank];
        for t in &self.terms {
            out[t.pos].add_term(t.mono.clone(), t.coef.clone());
        }
        out
    }

    pub fn scale(&mut self, c: &BigRational) {
        for t in &mut self.terms {
            t.coef = &t.coef * c;
        }
    }

    /// `self[skip_a..] - c * m * other[skip_b..]`.
    pub fn sub_scaled(
        &self,
        skip_a: usize,
        c: &BigRational,
        m: &Monomial,
        other: &Vect,
        skip_b: usize,
        ord: &ModuleOrder,
    ) -> Vect {
        let a = &self.terms[skip_a.min(self.terms.len())..];
        let b = &other.terms[skip_b.min(other.terms.len())..];
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let bm = b[j].mono.mul(m);
            if i == a.len() {
                out.push(ModTerm {
                    pos: b[j].pos,
                    mono: bm,
                    coef: -(&b[j].coef * c),
                });
                j += 1;
                continue;
            }
            match ord.cmp(a[i].pos, &a[i].mono, b[j].pos, &bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(ModTerm {
                        pos: b[j].pos,
                        mono: bm,
                        coef: -(&b[j].coef * c),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let coef = &a[i].coef - &(&b[j].coef * c);
                    if !coef.is_zero() {
                        out.push(ModTerm {
                            pos: a[i].pos,
                            mono: bm,
                            coef,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Vect { terms: out }
    }
}

/// Basis element: the vector and an optional tag tracking how it was built.
#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub v: Vect,
    pub tag: Option<Vect>,
}

impl Elem {
    fn make_monic(&mut self) {
        if let Some(lc) = self.v.lead().map(|t| t.coef.clone()) {
            if !lc.is_one() {
                let inv = lc.recip();
                self.v.scale(&inv);
                if let Some(t) = &mut self.tag {
                    t.scale(&inv);
                }
            }
        }
    }

    fn lead(&self) -> &ModTerm {
        self.v.lead().expect("nonzero basis element")
    }
}

/// Full reduction of `e` modulo `basis` (whose elements are monic).
pub(crate) fn reduce(mut e: Elem, basis: &[Elem], ord: &ModuleOrder) -> Elem {
    let mut rem: Vec<ModTerm> = Vec::new();
    let mut cursor = 0;
    while let Some(t) = e.v.terms.get(cursor) {
        let divisor = basis.iter().find(|g| {
            let l = g.lead();
            l.pos == t.pos && l.mono.divides(&t.mono)
        });
        match divisor {
            Some(g) => {
                let q = g.lead().mono.div(&t.mono).unwrap();
                let c = t.coef.clone();
                e.v = e.v.sub_scaled(cursor + 1, &c, &q, &g.v, 1, ord);
                cursor = 0;
                if let (Some(tag), Some(gt)) = (&e.tag, &g.tag) {
                    e.tag = Some(tag.sub_scaled(0, &c, &q, gt, 0, ord));
                }
            }
            None => {
                rem.push(t.clone());
                cursor += 1;
            }
        }
    }
    e.v = Vect { terms: rem };
    e
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    seq: usize,
}

fn s_vector(a: &Elem, b: &Elem, lcm: &Monomial, ord: &ModuleOrder) -> Elem {
    let ma = a.lead().mono.div(lcm).unwrap();
    let mb = b.lead().mono.div(lcm).unwrap();
    let one = BigRational::one();
    // ma * a - mb * b, leading terms cancel
    let v = Vect::zero()
        .sub_scaled(0, &(-&one), &ma, &a.v, 1, ord)
        .sub_scaled(0, &one, &mb, &b.v, 1, ord);
    let tag = match (&a.tag, &b.tag) {
        (Some(ta), Some(tb)) => Some(
            Vect::zero()
                .sub_scaled(0, &(-&one), &ma, ta, 0, ord)
                .sub_scaled(0, &one, &mb, tb, 0, ord),
        ),
        _ => None,
    };
    Elem { v, tag }
}

/// Buchberger with the normal selection strategy, the product criterion (in
/// rank one) and the Gebauer-Moeller chain criterion. Returns the reduced
/// basis sorted ascending by leading term.
pub(crate) fn groebner(gens: Vec<Elem>, ord: &ModuleOrder, rank_one: bool) -> Vec<Elem> {
    let mut basis: Vec<Elem> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut seq = 0usize;

    let mut add = |e: Elem, basis: &mut Vec<Elem>, pairs: &mut Vec<Pair>| {
        let k = basis.len();
        let lk = e.lead().clone();
        // chain criterion on pending pairs
        pairs.retain(|p| {
            let (li, lj) = (basis[p.i].lead(), basis[p.j].lead());
            if li.pos != lk.pos || !lk.mono.divides(&p.lcm) {
                return true;
            }
            let lik = li.mono.lcm(&lk.mono);
            let ljk = lj.mono.lcm(&lk.mono);
            lik == p.lcm || ljk == p.lcm
        });
        for (i, g) in basis.iter().enumerate() {
            let li = g.lead();
            if li.pos != lk.pos {
                continue;
            }
            if rank_one && li.mono.is_coprime(&lk.mono) {
                continue;
            }
            pairs.push(Pair {
                i,
                j: k,
                lcm: li.mono.lcm(&lk.mono),
                seq,
            });
            seq += 1;
        }
        basis.push(e);
    };

    for g in gens {
        if g.v.is_zero() {
            continue;
        }
        let mut r = reduce(g, &basis, ord);
        if r.v.is_zero() {
            continue;
        }
        r.make_monic();
        add(r, &mut basis, &mut pairs);
    }

    while !pairs.is_empty() {
        let best = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.lcm.total_degree(), p.seq))
            .map(|(k, _)| k)
            .unwrap();
        let p = pairs.swap_remove(best);
        let s = s_vector(&basis[p.i], &basis[p.j], &p.lcm, ord);
        let mut r = reduce(s, &basis, ord);
        if r.v.is_zero() {
            continue;
        }
        r.make_monic();
        add(r, &mut basis, &mut pairs);
    }

    interreduce(basis, ord)
}

/// Minimalizes and tail-reduces a Groebner basis; sorts ascending.
pub(crate) fn interreduce(mut basis: Vec<Elem>, ord: &ModuleOrder) -> Vec<Elem> {
    basis.sort_by(|a, b| {
        let (la, lb) = (a.lead(), b.lead());
        ord.cmp(la.pos, &la.mono, lb.pos, &lb.mono)
    });
    let mut minimal: Vec<Elem> = Vec::new();
    for e in basis {
        let l = e.lead();
        let redundant = minimal
            .iter()
            .any(|g| g.lead().pos == l.pos && g.lead().mono.divides(&l.mono));
        if !redundant {
            minimal.push(e);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Elem> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, e)| e.clone())
            .collect();
        let mut r = reduce(minimal[k].clone(), &others, ord);
        r.make_monic();
        out.push(r);
    }
    out
}

/// True when every S-vector of `basis` reduces to zero.
pub(crate) fn satisfies_buchberger_criterion(basis: &[Elem], ord: &ModuleOrder) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (li, lj) = (basis[i].lead(), basis[j].lead());
            if li.pos != lj.pos {
                continue;
            }
            let lcm = li.mono.lcm(&lj.mono);
            let s = s_vector(&basis[i], &basis[j], &lcm, ord);
            if !reduce(s, basis, ord).v.is_zero() {
                return false;
            }
        }
    }
    true
}
