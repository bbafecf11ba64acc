//! Random small instances and the property checks shared by the property
//! tests and the acceptance harness. Each check takes a seed and returns a
//! description of the first violated assertion.

#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use polymat::completion::{complete_to_unimodular, is_zlp, zlp_factorize, CompletionBudget};
use polymat::factorizer::{
    classify, decide_equivalence, factorize_general_variable, verify_equivalence,
    verify_factorization, EquivalenceOutcome, FactorOptions, FactorizationOutcome,
};
use polymat::groebner::is_unit_ideal;
use polymat::modsyz::{module_equal, module_quotient_by_poly, rank_of_module, syzygy, ModuleVector};
use polymat::polyring::divides;
use polymat::{Monomial, MonomialOrder, PolyMatrix, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub mod worked;

pub type Check = std::result::Result<(), String>;

pub struct Gen {
    rng: ChaCha8Rng,
    pub nvars: usize,
}

impl Gen {
    pub fn new(seed: u64, nvars: usize) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            nvars,
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    fn nonzero_coef(&mut self) -> BigRational {
        let mut c = 0;
        while c == 0 {
            c = self.int(-3, 3);
        }
        BigRational::from_integer(BigInt::from(c))
    }

    fn monomial_in(&mut self, vars: &[usize], max_deg: u32) -> Monomial {
        let mut exps = vec![0u32; self.nvars];
        let deg = self.rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            let v = vars[self.rng.gen_range(0..vars.len())];
            exps[v] += 1;
        }
        Monomial::from_exponents(&exps)
    }

    /// Sparse polynomial in `vars` with up to `max_terms` terms.
    pub fn poly_in(&mut self, vars: &[usize], max_terms: usize, max_deg: u32) -> Polynomial {
        let k = self.rng.gen_range(0..=max_terms);
        let mut p = Polynomial::zero(self.nvars);
        for _ in 0..k {
            let m = self.monomial_in(vars, max_deg);
            let c = self.nonzero_coef();
            p = &p + &Polynomial::term(m, c);
        }
        p
    }

    pub fn poly(&mut self, max_terms: usize, max_deg: u32) -> Polynomial {
        let vars: Vec<usize> = (0..self.nvars).collect();
        self.poly_in(&vars, max_terms, max_deg)
    }

    pub fn nonzero_poly(&mut self, max_terms: usize, max_deg: u32) -> Polynomial {
        loop {
            let p = self.poly(max_terms.max(1), max_deg);
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, max_terms: usize, max_deg: u32) -> PolyMatrix {
        let data = (0..rows)
            .map(|_| (0..cols).map(|_| self.poly(max_terms, max_deg)).collect())
            .collect();
        PolyMatrix::from_rows(data).unwrap()
    }

    /// Product of a few elementary matrices: row additions with monomial
    /// multipliers of degree at most 1, swaps and constant scalings.
    pub fn unimodular(&mut self, n: usize, steps: usize) -> PolyMatrix {
        let mut u = PolyMatrix::identity(self.nvars, n);
        if n == 1 {
            let c = self.nonzero_coef();
            return u.map(|p| p.scale(&c));
        }
        for _ in 0..steps {
            let i = self.rng.gen_range(0..n);
            let mut j = self.rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            match self.rng.gen_range(0..6) {
                0 => {
                    let rows = u.clone().into_rows();
                    let mut rows = rows;
                    rows.swap(i, j);
                    u = PolyMatrix::from_rows(rows).unwrap();
                }
                1 => {
                    let c = self.nonzero_coef();
                    let mut rows = u.clone().into_rows();
                    rows[i] = rows[i].iter().map(|p| p.scale(&c)).collect();
                    u = PolyMatrix::from_rows(rows).unwrap();
                }
                _ => {
                    let t = self.nonzero_poly(1, 1);
                    let mut rows = u.clone().into_rows();
                    let add: Vec<Polynomial> = rows[j].iter().map(|p| p * &t).collect();
                    rows[i] = rows[i].iter().zip(&add).map(|(a, b)| a + b).collect();
                    u = PolyMatrix::from_rows(rows).unwrap();
                }
            }
        }
        u
    }

    /// `z1 - f` with `f` a small polynomial in the other variables.
    pub fn divisor(&mut self) -> (Polynomial, Polynomial) {
        let rest: Vec<usize> = (1..self.nvars).collect();
        let f = self.poly_in(&rest, 2, 1);
        (&Polynomial::var(self.nvars, 0) - &f, f)
    }
}

/// Determinant by permutation expansion, independent of the library's
/// elimination and Laplace routines.
pub fn naive_det(m: &PolyMatrix) -> Polynomial {
    let n = m.nrows();
    let mut acc = Polynomial::zero(m.nvars());
    for perm in (0..n).permutations(n) {
        let inversions = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| perm[a] > perm[b])
            .count();
        let mut t = Polynomial::one(m.nvars());
        for (i, &j) in perm.iter().enumerate() {
            t = &t * m.get(i, j);
        }
        acc = if inversions % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

fn naive_minor(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    naive_det(&m.submatrix(rows, cols))
}

fn divides_or_zero(d: &Polynomial, p: &Polynomial) -> bool {
    if p.is_zero() {
        return true;
    }
    if d.is_zero() {
        return false;
    }
    p.div_exact(d).unwrap().is_some()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs `check` on seeds `0..count`, stopping at the first failure.
pub fn run_seeds(count: u64, mut check: impl FnMut(u64) -> Check) -> Check {
    for seed in 0..count {
        check(seed).map_err(|e| format!("seed {}: {}", seed, e))?;
    }
    Ok(())
}

pub fn binet_cauchy(seed: u64) -> Check {
    let mut g = Gen::new(seed, 2 + (seed % 2) as usize);
    let a = g.matrix(2, 3, 2, 2);
    let b = g.matrix(3, 4, 2, 2);
    let ab = a.mul(&b).unwrap();
    for i in 1..=2 {
        for ((rows, cols), minor) in ab.minor_list(i).unwrap() {
            let mut sum = Polynomial::zero(g.nvars);
            for ks in (0..3).combinations(i) {
                sum = &sum + &(&naive_minor(&a, &rows, &ks) * &naive_minor(&b, &ks, &cols));
            }
            ensure(sum == minor, || format!("size {} minor {:?} {:?}", i, rows, cols))?;
        }
    }
    Ok(())
}

pub fn divisor_chain(seed: u64) -> Check {
    let mut g = Gen::new(seed, 3);
    let (l, m) = if g.coin() { (3, 3) } else { (2, 3) };
    let f = g.matrix(l, m, 2, 2);
    let mut prev = Polynomial::one(3);
    for i in 1..=l {
        let rep = f.minors(i).unwrap();
        ensure(divides_or_zero(&prev, &rep.d), || format!("d_{} does not divide d_{}", i - 1, i))?;
        for (a, b) in rep.minors.iter().zip(&rep.reduced) {
            ensure(*a == &rep.d * b, || format!("reduced minor identity fails at size {}", i))?;
        }
        prev = rep.d;
    }
    Ok(())
}

pub fn factor_divisor_law(seed: u64) -> Check {
    let mut g = Gen::new(seed, 3);
    let l = 2;
    let m = 2 + (seed % 2) as usize;
    let g1 = g.matrix(l, l, 2, 1);
    let f1 = g.matrix(l, m, 2, 1);
    let f = g1.mul(&f1).unwrap();
    for i in 1..=l {
        let di = f.minor_gcd(i).unwrap();
        ensure(divides_or_zero(&f1.minor_gcd(i).unwrap(), &di), || format!("d_{}(F1) does not divide d_{}(F)", i, i))?;
        ensure(divides_or_zero(&g1.minor_gcd(i).unwrap(), &di), || format!("d_{}(G1) does not divide d_{}(F)", i, i))?;
    }
    Ok(())
}

pub fn gcd_invariance(seed: u64) -> Check {
    let mut g = Gen::new(seed, 3);
    let f1 = g.matrix(2, 3, 2, 2);
    let u = g.unimodular(2, 3);
    let v = g.unimodular(3, 3);
    let f2 = u.mul(&f1).unwrap().mul(&v).unwrap();
    for i in 1..=2 {
        ensure(f1.minor_gcd(i).unwrap() == f2.minor_gcd(i).unwrap(), || format!("d_{} changed", i))?;
    }
    Ok(())
}

pub fn syzygy_rank_law(seed: u64) -> Check {
    let mut g = Gen::new(seed, 2);
    let l = 2 + (seed % 2) as usize;
    let m = 2 + ((seed / 2) % 2) as usize;
    let mut f = g.matrix(l, m, 2, 2);
    let mut relation = None;
    if g.coin() {
        // last row a combination of the others: a known syzygy
        let coefs: Vec<Polynomial> = (0..l - 1).map(|_| g.poly(2, 1)).collect();
        let mut rows = f.clone().into_rows();
        let mut last = vec![Polynomial::zero(2); m];
        for (c, row) in coefs.iter().zip(&rows) {
            for (x, y) in last.iter_mut().zip(row) {
                *x = &*x + &(c * y);
            }
        }
        rows[l - 1] = last;
        f = PolyMatrix::from_rows(rows).unwrap();
        let mut rel = coefs;
        rel.push(-Polynomial::one(2));
        relation = Some(ModuleVector::new(rel).unwrap());
    }
    let rows = f.row_vectors();
    let syz = syzygy(&rows).map_err(|e| e.to_string())?;
    for gen in syz.generators() {
        let mut acc = vec![Polynomial::zero(2); m];
        for (c, row) in gen.entries().iter().zip(f.rows()) {
            for (x, y) in acc.iter_mut().zip(row) {
                *x = &*x + &(c * y);
            }
        }
        ensure(acc.iter().all(Polynomial::is_zero), || "syzygy does not annihilate".into())?;
    }
    let syz_rank = rank_of_module(syz.generators()).unwrap();
    ensure(syz_rank == l - f.rank(), || format!("rank(Syz) = {} but l - rank = {}", syz_rank, l - f.rank()))?;
    if let Some(rel) = relation {
        ensure(syz.contains(&rel), || "known relation missing from syzygy module".into())?;
    }
    Ok(())
}

pub fn divides_iff_vanishes(seed: u64) -> Check {
    let mut g = Gen::new(seed, 3);
    let (h, f) = g.divisor();
    let p = if g.coin() {
        &g.poly(3, 2) * &h
    } else {
        g.poly(3, 2)
    };
    let by_division = divides(&h, &p).unwrap().is_some();
    let by_substitution = p.substitute_var(0, &f).unwrap().is_zero();
    ensure(by_division == by_substitution, || format!("h = {}, p = {}", h, p))
}

/// A member of the class for `h`: `G * W` with `det G = h * g` and `W` the
/// top rows of a unimodular matrix.
pub fn member(g: &mut Gen, l: usize, m: usize, h: &Polynomial, extra: bool) -> PolyMatrix {
    let n = g.nvars;
    let mut diag = vec![Polynomial::one(n); l];
    diag[0] = h.clone();
    if extra {
        diag[l - 1] = g.nonzero_poly(2, 1);
    }
    member_with_diag(g, &diag, m)
}

/// `U0 * diag * V0 * W` with `W` the top rows of an `m x m` unimodular matrix.
pub fn member_with_diag(g: &mut Gen, diag: &[Polynomial], m: usize) -> PolyMatrix {
    let l = diag.len();
    let d = PolyMatrix::diag(diag).unwrap();
    let left = g.unimodular(l, 2).mul(&d).unwrap().mul(&g.unimodular(l, 2)).unwrap();
    let w = g.unimodular(m, 2).top_rows(l);
    left.mul(&w).unwrap()
}

fn outcome_sound(f: &PolyMatrix, h: &Polynomial, out: &FactorizationOutcome) -> Check {
    if let Some((g1, f1)) = out.factors() {
        let expected = h.pow(out.r() as u32);
        ensure(verify_factorization(f, g1, f1, &expected), || "Factored witness fails verification".into())?;
    }
    Ok(())
}

pub fn uniqueness(seed: u64) -> Check {
    let mut g = Gen::new(seed, 3);
    let (h, f) = g.divisor();
    let m = 2 + (seed % 2) as usize;
    let fm = member(&mut g, 2, m, &h, seed.is_multiple_of(3));
    let fwd = FactorOptions::default();
    let rev = FactorOptions {
        reverse_tie_break: true,
        ..FactorOptions::default()
    };
    let a = factorize_general_variable(&fm, 0, &f, &fwd).map_err(|e| e.to_string())?;
    let b = factorize_general_variable(&fm, 0, &f, &rev).map_err(|e| e.to_string())?;
    outcome_sound(&fm, &h, &a)?;
    outcome_sound(&fm, &h, &b)?;
    ensure(a.name() == b.name(), || format!("{} vs {}", a.name(), b.name()))?;
    if let (Some((_, f1)), Some((_, f1r))) = (a.factors(), b.factors()) {
        ensure(
            module_equal(&f1.row_vectors(), &f1r.row_vectors()).unwrap(),
            || "tie-breaking changed Im(F1)".into(),
        )?;
    }
    Ok(())
}

/// Returns whether `<h, c>` was the unit ideal, so callers can confirm both
/// sides were exercised.
pub fn minor_ideal_biconditional_case(seed: u64) -> std::result::Result<bool, String> {
    let mut g = Gen::new(seed, 3);
    let (h, _) = g.divisor();
    let l = 2;
    let m = 2 + (seed % 2) as usize;
    let second = match seed % 3 {
        0 => h.clone(),
        1 => &h * &g.nonzero_poly(2, 1),
        _ => g.nonzero_poly(2, 1),
    };
    let fm = member_with_diag(&mut g, &[h.clone(), second], m);
    let order = MonomialOrder::degrevlex(3);
    let es: Vec<Polynomial> = fm
        .minor_list(l)
        .unwrap()
        .into_iter()
        .map(|(_, a)| a.div_exact(&h).unwrap().expect("h divides every maximal minor"))
        .collect();
    let cs: Vec<Polynomial> = fm.minor_list(l - 1).unwrap().into_iter().map(|(_, c)| c).collect();
    let mut with_e = vec![h.clone()];
    with_e.extend(es);
    with_e.extend(cs.iter().cloned());
    let mut without_e = vec![h.clone()];
    without_e.extend(cs);
    let lhs = is_unit_ideal(&with_e, &order).unwrap().is_some();
    let rhs = is_unit_ideal(&without_e, &order).unwrap().is_some();
    ensure(lhs == rhs, || format!("<h, e, c> unit: {}, <h, c> unit: {}", lhs, rhs))?;
    Ok(rhs)
}

pub fn minor_ideal_biconditional(seed: u64) -> Check {
    minor_ideal_biconditional_case(seed).map(|_| ())
}

/// Outcome counts for soundness runs.
#[derive(Default, Debug)]
pub struct Tally {
    pub factored: usize,
    pub other: usize,
}

pub fn factorization_soundness(seed: u64, tally: &mut Tally) -> Check {
    let mut g = Gen::new(seed, 3);
    let (h, f) = g.divisor();
    let l = 2 + (seed % 2) as usize;
    let fm = member(&mut g, l, l + (seed.is_multiple_of(3)) as usize, &h, seed.is_multiple_of(4));
    let out = factorize_general_variable(&fm, 0, &f, &FactorOptions::default()).map_err(|e| e.to_string())?;
    if out.factors().is_some() {
        tally.factored += 1;
    } else {
        tally.other += 1;
    }
    // necessity at multiplicity one: det G1 = h and h not dividing d_{l-1}
    if out.r() == 1 && matches!(out, FactorizationOutcome::NoFactorization { .. }) {
        return Err("constructed member reported NoFactorization".into());
    }
    outcome_sound(&fm, &h, &out)
}

pub fn equivalence_soundness(seed: u64, tally: &mut Tally) -> Check {
    let mut g = Gen::new(seed, 3);
    let (h, _) = g.divisor();
    let l = 2 + (seed % 2) as usize;
    let r = 1 + (seed as usize / 2) % l;
    let mut diag = vec![Polynomial::one(3); l];
    for d in diag.iter_mut().take(r) {
        *d = h.clone();
    }
    let d = PolyMatrix::diag(&diag).unwrap();
    let f = g.unimodular(l, 3).mul(&d).unwrap().mul(&g.unimodular(l, 3)).unwrap();
    // necessity: the two conditions hold for a constructed equivalent matrix
    if r < l {
        let dd = f.minor_gcd(l - r + 1).unwrap();
        ensure(divides_or_zero(&h, &dd), || "h does not divide d_{l-r+1}".into())?;
    }
    let out = decide_equivalence(&f, &h, r, &FactorOptions::default()).map_err(|e| e.to_string())?;
    match out {
        EquivalenceOutcome::Equivalent { u, d, v } => {
            tally.factored += 1;
            ensure(verify_equivalence(&f, &u, &d, &v), || "witnesses fail verification".into())
        }
        EquivalenceOutcome::NotEquivalent { reason, .. } => Err(format!("constructed equivalent matrix rejected: {}", reason)),
        EquivalenceOutcome::CompletionNotFound { .. } => {
            tally.other += 1;
            Ok(())
        }
    }
}

pub fn completion_of_unimodular_rows(seed: u64) -> Check {
    let mut g = Gen::new(seed, 3);
    let l = 2 + (seed % 2) as usize;
    let r = 1 + (seed as usize / 2) % (l - 1);
    let u = g.unimodular(l, 4);
    let h = u.top_rows(r);
    ensure(is_zlp(&h).unwrap(), || "rows of a unimodular matrix are not ZLP".into())?;
    let res = complete_to_unimodular(&h, &CompletionBudget::default()).map_err(|e| e.to_string())?;
    let Some(c) = res.unimodular else {
        return Err(format!("completion failed for {:?}", h));
    };
    ensure(c.top_rows(r) == h, || "completion changed the input rows".into())?;
    let inv = c.inverse_unimodular().map_err(|e| e.to_string())?;
    ensure(c.mul(&inv).unwrap() == PolyMatrix::identity(3, l), || "U * U^-1 != I".into())
}

pub fn zlp_factorization(seed: u64) -> Check {
    let mut g = Gen::new(seed, 3);
    let l = 3;
    let r = 1 + (seed % 2) as usize;
    let w = g.unimodular(l, 3).top_rows(r);
    let mut left = g.matrix(r, r, 2, 1);
    while left.determinant().unwrap().is_zero() {
        left = g.matrix(r, r, 2, 1);
    }
    let h0 = left.mul(&w).unwrap();
    let (h1, h2) = zlp_factorize(&h0).map_err(|e| e.to_string())?;
    ensure(h1.mul(&h2).unwrap() == h0, || "H1 * H2 != H0".into())?;
    ensure(is_zlp(&h2).unwrap(), || "H2 is not ZLP".into())?;
    ensure(module_equal(&h2.row_vectors(), &w.row_vectors()).unwrap(), || "Im(H2) != Im(W)".into())
}

pub fn quotient_recovers_vector(seed: u64) -> Check {
    let mut g = Gen::new(seed, 2);
    // a unit entry makes the row ZLP
    let mut w = g.matrix(1, 3, 2, 1);
    w.set(0, 0, Polynomial::one(2));
    let w0 = g.nonzero_poly(2, 2);
    let h0 = w.map(|p| p * &w0);
    let q = module_quotient_by_poly(&h0.row_vectors(), &w0).map_err(|e| e.to_string())?;
    ensure(module_equal(&q, &w.row_vectors()).unwrap(), || "quotient differs from <w>".into())
}

/// Multiplicity agrees between the two classification routes on members.
pub fn classify_consistent(seed: u64) -> Check {
    let mut g = Gen::new(seed, 3);
    let (h, _) = g.divisor();
    let fm = member(&mut g, 2, 3, &h, true);
    classify(&fm, &h).map(|_| ()).map_err(|e| e.to_string())
}

pub fn ring_axioms(seed: u64) -> Check {
    let mut g = Gen::new(seed, 3);
    let (a, b, c) = (g.poly(3, 2), g.poly(3, 2), g.poly(3, 2));
    ensure(&a + &b == &b + &a, || "addition not commutative".into())?;
    ensure(&a * &b == &b * &a, || "multiplication not commutative".into())?;
    ensure(&(&a * &b) * &c == &a * &(&b * &c), || "multiplication not associative".into())?;
    ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || "not distributive".into())?;
    ensure((&a + &(-&a)).is_zero(), || "a + (-a) != 0".into())?;
    ensure(&a * &Polynomial::one(3) == a, || "1 is not neutral".into())?;
    if !b.is_zero() {
        let q = (&a * &b).div_exact(&b).unwrap();
        ensure(q.as_ref() == Some(&a), || "exact division does not invert product".into())?;
    }
    Ok(())
}

pub fn substitution_homomorphism(seed: u64) -> Check {
    let mut g = Gen::new(seed, 3);
    let (a, b) = (g.poly(3, 2), g.poly(3, 2));
    let (_, f) = g.divisor();
    let s = |p: &Polynomial| p.substitute_var(0, &f).unwrap();
    ensure(s(&(&a + &b)) == &s(&a) + &s(&b), || "substitution not additive".into())?;
    ensure(s(&(&a * &b)) == &s(&a) * &s(&b), || "substitution not multiplicative".into())?;
    ensure(!s(&a).involves(0), || "z1 survives substitution".into())
}

pub fn gcd_properties(seed: u64) -> Check {
    let mut g = Gen::new(seed, 2 + (seed % 2) as usize);
    let common = g.nonzero_poly(2, 2);
    let a = &g.nonzero_poly(3, 2) * &common;
    let b = &g.nonzero_poly(3, 2) * &common;
    let d = polymat::gcd(&a, &b);
    ensure(divides_or_zero(&d, &a) && divides_or_zero(&d, &b), || "gcd does not divide inputs".into())?;
    ensure(divides_or_zero(&common, &d), || format!("common factor {} does not divide gcd {}", common, d))?;
    ensure(d == d.normalized(), || "gcd not normalized".into())?;
    ensure(polymat::gcd(&b, &a) == d, || "gcd not symmetric".into())
}

pub fn monomial_orders(seed: u64) -> Check {
    use std::cmp::Ordering;
    let mut g = Gen::new(seed, 3);
    let all: Vec<usize> = (0..3).collect();
    let (a, b, c) = (g.monomial_in(&all, 3), g.monomial_in(&all, 3), g.monomial_in(&all, 3));
    for order in [MonomialOrder::degrevlex(3), MonomialOrder::lex(3), MonomialOrder::deglex(3)] {
        let ab = order.cmp(&a, &b);
        ensure(ab == order.cmp(&b, &a).reverse(), || "order not antisymmetric".into())?;
        ensure((ab == Ordering::Equal) == (a == b), || "order not total".into())?;
        ensure(order.cmp(&a.mul(&c), &b.mul(&c)) == ab, || "order not multiplicative".into())?;
        ensure(order.cmp(&Monomial::one(3), &a) != Ordering::Greater, || "1 is not minimal".into())?;
        if ab == Ordering::Less && order.cmp(&b, &c) == Ordering::Less {
            ensure(order.cmp(&a, &c) == Ordering::Less, || "order not transitive".into())?;
        }
    }
    Ok(())
}

pub fn groebner_properties(seed: u64) -> Check {
    let mut g = Gen::new(seed, 2 + (seed % 2) as usize);
    let n = g.nvars;
    let k = 2 + (seed % 2) as usize;
    let gens: Vec<Polynomial> = (0..k).map(|_| g.nonzero_poly(2, 2)).collect();
    let order = MonomialOrder::degrevlex(n);
    let basis = polymat::groebner::buchberger(&gens, &order, true).map_err(|e| e.to_string())?;
    ensure(basis.satisfies_buchberger_criterion(), || "S-pairs do not reduce to zero".into())?;
    for p in &gens {
        ensure(basis.normal_form(p).is_zero(), || format!("generator {} not in basis ideal", p))?;
    }
    let cof = basis.cofactors().expect("tracking requested");
    for (b, row) in basis.generators().iter().zip(cof) {
        let mut acc = Polynomial::zero(n);
        for (c, p) in row.iter().zip(&gens) {
            acc = &acc + &(c * p);
        }
        ensure(acc == *b, || format!("cofactors do not reproduce {}", b))?;
    }
    let mut rev = gens.clone();
    rev.reverse();
    let other = polymat::groebner::buchberger(&rev, &order, false).map_err(|e| e.to_string())?;
    ensure(other.generators() == basis.generators(), || "reduced basis depends on generator order".into())
}

pub fn rank_is_largest_nonzero_minor(seed: u64) -> Check {
    let mut g = Gen::new(seed, 2);
    let rows = 2 + (seed % 2) as usize;
    let cols = 2 + ((seed / 2) % 2) as usize;
    let mut f = g.matrix(rows, cols, 2, 1);
    if g.coin() {
        // force a dependency
        let mut data = f.into_rows();
        let t = g.poly(2, 1);
        data[rows - 1] = data[0].iter().map(|p| p * &t).collect();
        f = PolyMatrix::from_rows(data).unwrap();
    }
    let mut largest = 0;
    for i in 1..=rows.min(cols) {
        let nonzero = (0..rows)
            .combinations(i)
            .cartesian_product((0..cols).combinations(i).collect::<Vec<_>>())
            .any(|(r, c)| !naive_minor(&f, &r, &c).is_zero());
        if nonzero {
            largest = i;
        }
    }
    ensure(f.rank() == largest, || format!("rank {} vs largest nonzero minor {}", f.rank(), largest))
}

pub fn reduced_minors_choice_independent(seed: u64) -> Check {
    let mut g = Gen::new(seed, 3);
    let (h, f) = g.divisor();
    let fm = member(&mut g, 2 + (seed % 2) as usize, 4, &h, seed.is_multiple_of(3));
    let sub = fm.substitute(0, &f).unwrap();
    let a = sub.column_reduced_minors_with(false).map_err(|e| e.to_string())?;
    let b = sub.column_reduced_minors_with(true).map_err(|e| e.to_string())?;
    ensure(a.len() == b.len(), || "different lengths".into())?;
    // equal up to one common unit
    let Some((x0, y0)) = a.iter().zip(&b).find(|(x, _)| !x.is_zero()) else {
        return ensure(b.iter().all(Polynomial::is_zero), || "zero vs nonzero".into());
    };
    let (Some(cx), Some(cy)) = (x0.leading_coefficient(&MonomialOrder::degrevlex(3)), y0.leading_coefficient(&MonomialOrder::degrevlex(3))) else {
        return Err("zero paired with nonzero".into());
    };
    let ratio = cy / cx;
    for (x, y) in a.iter().zip(&b) {
        ensure(x.scale(&ratio) == *y, || format!("{:?} vs {:?}", a, b))?;
    }
    Ok(())
}

pub fn parser_round_trip(seed: u64) -> Check {
    let mut g = Gen::new(seed, 3);
    let p = g.poly(4, 3).scale(&BigRational::new(BigInt::from(g.int(1, 5)), BigInt::from(g.int(1, 7))));
    let text = p.to_string();
    let q = polymat::cli::parse_polynomial(&text, 3).map_err(|e| format!("{}: {:?}", text, e))?;
    ensure(p == q, || format!("{} reparsed as {}", text, q))
}

pub fn module_equality(seed: u64) -> Check {
    let mut g = Gen::new(seed, 2);
    let f = g.matrix(2, 3, 2, 1);
    let u = g.unimodular(2, 3);
    let same = u.mul(&f).unwrap();
    ensure(module_equal(&f.row_vectors(), &same.row_vectors()).unwrap(), || "U*F image differs from F".into())?;
    // doubling the first row shrinks the image unless it was zero there
    let smaller = PolyMatrix::from_rows(vec![
        f.row(0).iter().map(|p| p * &Polynomial::var(2, 0)).collect(),
        f.row(1).to_vec(),
    ])
    .unwrap();
    if f.rank() == 2 {
        ensure(!module_equal(&f.row_vectors(), &smaller.row_vectors()).unwrap(), || "z1 * row0 image equals F".into())?;
    }
    Ok(())
}
