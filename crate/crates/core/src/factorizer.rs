//! Factorization of a polynomial matrix `F` (full row rank, `l x m`) with
//! respect to powers of `h = z_i - f`, and the decision of whether a square
//! `F` is equivalent to `diag(h, ..., h, 1, ..., 1)`.
//!
//! `F` belongs to the class handled here when `h` divides `d_l(F)`. Its
//! multiplicity `r` is `l - rank F(f)`, where `F(f)` substitutes `f` for
//! `z_i`. For `r = 1` the outcome is decisive either way; for `1 < r < l` a
//! non-unit column-reduced-minor ideal leaves the question open.

use crate::completion::{complete_to_unimodular, zlp_factorize, CompletionBudget};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, IdealBasis};
use crate::modsyz::syzygy;
use crate::polymatrix::{fitting_ideal, PolyMatrix};
use crate::polyring::{gcd_all, Monomial, MonomialOrder, Polynomial};

/// Ideal-theoretic evidence behind an outcome.
#[derive(Clone, Debug, Default)]
pub struct Certificate {
    /// Generators whose ideal was tested.
    pub generators: Vec<Polynomial>,
    /// Their reduced Groebner basis.
    pub basis: Vec<Polynomial>,
    /// Coefficients expressing 1 in the generators, when the ideal is `<1>`.
    pub cofactors: Option<Vec<Polynomial>>,
}

impl Certificate {
    fn from_basis(generators: Vec<Polynomial>, basis: &IdealBasis) -> Self {
        let cofactors = if basis.is_unit() {
            basis.cofactors().map(|c| c[0].clone())
        } else {
            None
        };
        Certificate {
            generators,
            basis: basis.generators().to_vec(),
            cofactors,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_one()
    }
}

#[derive(Clone, Debug)]
pub enum FactorizationOutcome {
    /// `F = g1 * f1` with `det g1 = h^r` up to a constant.
    Factored {
        r: usize,
        g1: PolyMatrix,
        f1: PolyMatrix,
        certificate: Certificate,
    },
    /// `r = 1` and the column reduced minors of `F(f)` do not generate `<1>`.
    NoFactorization { r: usize, certificate: Certificate },
    /// `1 < r < l` and the column reduced minors of `F(f)` do not generate `<1>`.
    UnableToJudge { r: usize, certificate: Certificate },
    /// The criterion holds but the witness search ran out of budget.
    CompletionNotFound {
        r: usize,
        certificate: Certificate,
        reason: String,
    },
}

impl FactorizationOutcome {
    pub fn r(&self) -> usize {
        match self {
            Self::Factored { r, .. }
            | Self::NoFactorization { r, .. }
            | Self::UnableToJudge { r, .. }
            | Self::CompletionNotFound { r, .. } => *r,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Factored { .. } => "Factored",
            Self::NoFactorization { .. } => "NoFactorization",
            Self::UnableToJudge { .. } => "UnableToJudge",
            Self::CompletionNotFound { .. } => "CompletionNotFound",
        }
    }

    pub fn certificate(&self) -> &Certificate {
        match self {
            Self::Factored { certificate, .. }
            | Self::NoFactorization { certificate, .. }
            | Self::UnableToJudge { certificate, .. }
            | Self::CompletionNotFound { certificate, .. } => certificate,
        }
    }

    pub fn factors(&self) -> Option<(&PolyMatrix, &PolyMatrix)> {
        match self {
            Self::Factored { g1, f1, .. } => Some((g1, f1)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum EquivalenceOutcome {
    /// `F = u * d * v` with `u`, `v` unimodular.
    Equivalent {
        u: PolyMatrix,
        d: PolyMatrix,
        v: PolyMatrix,
    },
    NotEquivalent {
        d: PolyMatrix,
        reason: String,
        certificate: Certificate,
    },
    CompletionNotFound { d: PolyMatrix, reason: String },
}

impl EquivalenceOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Equivalent { .. } => "Equivalent",
            Self::NotEquivalent { .. } => "NotEquivalent",
            Self::CompletionNotFound { .. } => "CompletionNotFound",
        }
    }

    pub fn target(&self) -> &PolyMatrix {
        match self {
            Self::Equivalent { d, .. }
            | Self::NotEquivalent { d, .. }
            | Self::CompletionNotFound { d, .. } => d,
        }
    }
}

/// Knobs shared by the factorization and equivalence procedures.
#[derive(Clone, Debug, Default)]
pub struct FactorOptions {
    pub budget: CompletionBudget,
    /// Term order for the ideal computations; degrevlex when `None`.
    pub order: Option<MonomialOrder>,
    /// Scan column subsets and syzygy rows in reverse. Any choice gives the
    /// same image of `F1`; the switch exists to check that.
    pub reverse_tie_break: bool,
}

impl FactorOptions {
    fn order(&self, nvars: usize) -> MonomialOrder {
        self.order
            .clone()
            .unwrap_or_else(|| MonomialOrder::degrevlex(nvars))
    }
}

/// Splits `h = c * (z_var - f)` with `c` a nonzero constant and `f` free of
/// `z_var`; returns `f`.
pub fn split_divisor(h: &Polynomial, var: usize) -> Result<Polynomial> {
    if var >= h.nvars() {
        return Err(Error::MalformedDivisor(format!("no variable z{}", var + 1)));
    }
    if h.degree_in(var) != 1 {
        return Err(Error::MalformedDivisor(format!(
            "{} is not linear in z{}",
            h,
            var + 1
        )));
    }
    let coeffs = h.coefficients_in(var);
    let Some(c) = coeffs[1].constant_value() else {
        return Err(Error::MalformedDivisor(format!(
            "coefficient of z{} in {} is not constant",
            var + 1,
            h
        )));
    };
    Ok(coeffs[0].scale(&(-c.recip())))
}

fn divisor(nvars: usize, var: usize, f: &Polynomial) -> Polynomial {
    &Polynomial::var(nvars, var) - f
}

fn diag_target(nvars: usize, h: &Polynomial, r: usize, l: usize) -> Result<PolyMatrix> {
    let entries: Vec<Polynomial> = (0..l)
        .map(|k| if k < r { h.clone() } else { Polynomial::one(nvars) })
        .collect();
    PolyMatrix::diag(&entries)
}

fn divisible(h: &Polynomial, p: &Polynomial) -> Result<bool> {
    Ok(p.div_exact(h)?.is_some())
}

/// The multiplicity `r` of `h = z1 - f` in `F`.
pub fn classify(f_mat: &PolyMatrix, h: &Polynomial) -> Result<usize> {
    let f = split_divisor(h, 0)?;
    classify_in(f_mat, 0, &f)
}

/// `r = l - rank F(f)`, cross-checked against the divisor chain: `r` is the
/// unique value with `h | d_{l-r+1}(F)` and `h` not dividing `d_{l-r}(F)`.
pub fn classify_in(f_mat: &PolyMatrix, var: usize, f: &Polynomial) -> Result<usize> {
    if f.involves(var) {
        return Err(Error::InvalidSubstitution { var: var + 1 });
    }
    let (l, m) = (f_mat.nrows(), f_mat.ncols());
    if l > m {
        return Err(Error::NotInClass(format!("{}x{} matrix cannot have full row rank", l, m)));
    }
    let h = divisor(f_mat.nvars(), var, f);
    let chain = f_mat.divisor_chain()?;
    let dl = &chain[l - 1];
    if dl.is_zero() {
        return Err(Error::NotInClass("matrix does not have full row rank".into()));
    }
    if !divisible(&h, dl)? {
        return Err(Error::NotInClass(format!("{} does not divide d_{}", h, l)));
    }
    let by_rank = l - f_mat.substitute(var, f)?.rank();
    // smallest i with h | d_i; d_0 = 1 is never divisible
    let mut first = l;
    for i in (1..=l).rev() {
        if divisible(&h, &chain[i - 1])? {
            first = i;
        } else {
            break;
        }
    }
    let by_chain = l - first + 1;
    if by_rank != by_chain {
        return Err(Error::Internal(format!(
            "multiplicity {} from the rank but {} from the divisor chain",
            by_rank, by_chain
        )));
    }
    Ok(by_rank)
}

/// Factorization of `F` with respect to `h^r`, `h = z1 - f`.
pub fn factorize(f_mat: &PolyMatrix, h: &Polynomial, order: &MonomialOrder) -> Result<FactorizationOutcome> {
    let f = split_divisor(h, 0)?;
    let opts = FactorOptions {
        order: Some(order.clone()),
        ..FactorOptions::default()
    };
    factorize_general_variable(f_mat, 0, &f, &opts)
}

/// Factorization with respect to `(z_var - f)^r`.
pub fn factorize_general_variable(
    f_mat: &PolyMatrix,
    var: usize,
    f: &Polynomial,
    opts: &FactorOptions,
) -> Result<FactorizationOutcome> {
    let n = f_mat.nvars();
    let order = opts.order(n);
    let l = f_mat.nrows();
    let r = classify_in(f_mat, var, f)?;
    let h = divisor(n, var, f);
    let target = diag_target(n, &h, r, l)?;

    if r == l {
        let mut f1 = f_mat.clone();
        for i in 0..l {
            f1 = f1
                .divide_row(i, &h)?
                .ok_or_else(|| Error::Internal("entry not divisible at full multiplicity".into()))?;
        }
        return finish(f_mat, r, target, f1, Certificate::default());
    }

    let at_f = f_mat.substitute(var, f)?;
    let crm = at_f.column_reduced_minors_with(opts.reverse_tie_break)?;
    let basis = buchberger(&crm, &order, true)?;
    let certificate = Certificate::from_basis(crm, &basis);
    if !basis.is_unit() {
        return Ok(if r == 1 {
            FactorizationOutcome::NoFactorization { r, certificate }
        } else {
            FactorizationOutcome::UnableToJudge { r, certificate }
        });
    }

    let u = match annihilator_completion(&at_f, r, opts)? {
        Ok(u) => u,
        Err(reason) => {
            return Ok(FactorizationOutcome::CompletionNotFound {
                r,
                certificate,
                reason,
            })
        }
    };
    let f1 = extract_rows(&u.mul(f_mat)?, r, &h)?;
    let g1 = u.inverse_unimodular()?.mul(&target)?;
    if g1.mul(&f1)? != *f_mat {
        return Err(Error::Internal("factors do not reproduce the matrix".into()));
    }
    Ok(FactorizationOutcome::Factored {
        r,
        g1,
        f1,
        certificate,
    })
}

fn finish(
    f_mat: &PolyMatrix,
    r: usize,
    g1: PolyMatrix,
    f1: PolyMatrix,
    certificate: Certificate,
) -> Result<FactorizationOutcome> {
    if g1.mul(&f1)? != *f_mat {
        return Err(Error::Internal("factors do not reproduce the matrix".into()));
    }
    Ok(FactorizationOutcome::Factored {
        r,
        g1,
        f1,
        certificate,
    })
}

/// Divides the first `r` rows of `m` by `h`.
fn extract_rows(m: &PolyMatrix, r: usize, h: &Polynomial) -> Result<PolyMatrix> {
    let mut out = m.clone();
    for i in 0..r {
        out = out
            .divide_row(i, h)?
            .ok_or_else(|| Error::Internal("annihilated row not divisible by h".into()))?;
    }
    Ok(out)
}

/// A unimodular `U` whose first `r` rows annihilate `at_f` from the left,
/// built from `r` independent syzygies made ZLP and then completed. The inner
/// `Err` carries the reason when the search budget is exhausted.
fn annihilator_completion(
    at_f: &PolyMatrix,
    r: usize,
    opts: &FactorOptions,
) -> Result<std::result::Result<PolyMatrix, String>> {
    let syz = syzygy(&at_f.row_vectors())?;
    let mut candidates: Vec<Vec<Polynomial>> = syz
        .generators()
        .iter()
        .map(|g| g.entries().to_vec())
        .collect();
    if opts.reverse_tie_break {
        candidates.reverse();
    }
    let mut chosen: Vec<Vec<Polynomial>> = Vec::new();
    for row in candidates {
        if chosen.len() == r {
            break;
        }
        chosen.push(row);
        let rank = PolyMatrix::from_rows(chosen.clone())?.rank();
        if rank < chosen.len() {
            chosen.pop();
        }
    }
    if chosen.len() < r {
        return Err(Error::Internal(format!(
            "syzygy module has rank {} but {} was expected",
            chosen.len(),
            r
        )));
    }
    let h0 = PolyMatrix::from_rows(chosen)?;
    let h2 = match zlp_factorize(&h0) {
        Ok((_, h2)) => h2,
        Err(Error::FactorizationIncomplete(msg)) => return Ok(Err(msg)),
        Err(e) => return Err(e),
    };
    let res = complete_to_unimodular(&h2, &opts.budget)?;
    Ok(match res.unimodular {
        Some(u) => Ok(u),
        None => Err(format!(
            "completion budget exhausted after {} operations",
            res.ops
        )),
    })
}

/// Details of the Fitting-ideal test on `W = Im F(f)`.
#[derive(Clone, Debug)]
pub struct FittingCheck {
    pub passes: bool,
    /// `Fitt_{l-2}(W) = 0`.
    pub second_vanishes: bool,
    /// Generator `d` when `Fitt_{l-1}(W) = <d>` with `d` nonzero.
    pub principal_generator: Option<Polynomial>,
}

/// Sufficient condition for a factorization with respect to `h`:
/// `Fitt_{l-2}(W) = 0` and `Fitt_{l-1}(W)` principal and nonzero, where the
/// presentation matrix of `W` has the syzygies of `F(f)` as rows.
pub fn fitting_sufficient_check(f_mat: &PolyMatrix, h: &Polynomial) -> Result<FittingCheck> {
    let f = split_divisor(h, 0)?;
    classify_in(f_mat, 0, &f)?;
    let at_f = f_mat.substitute(0, &f)?;
    let l = f_mat.nrows();
    let syz = syzygy(&at_f.row_vectors())?;
    let Some(pres) = syz.to_matrix() else {
        // no relations: every Fitting ideal below l vanishes
        return Ok(FittingCheck {
            passes: false,
            second_vanishes: true,
            principal_generator: None,
        });
    };
    let second_vanishes = l < 2 || fitting_ideal(&pres, l - 2)?.is_zero_ideal();
    let first = fitting_ideal(&pres, l - 1)?;
    let principal_generator = if first.is_zero_ideal() {
        None
    } else {
        let g = gcd_all(f_mat.nvars(), first.generators());
        first.contains(&g).then_some(g)
    };
    Ok(FittingCheck {
        passes: second_vanishes && principal_generator.is_some(),
        second_vanishes,
        principal_generator,
    })
}

/// Decides whether the square `F` is equivalent to `D = diag(h, .., h, 1, .., 1)`
/// with `r` copies of `h = z1 - f`, given `det F = c * h^r`. On success the
/// witnesses satisfy `F = u * D * v`.
pub fn decide_equivalence(
    f_mat: &PolyMatrix,
    h: &Polynomial,
    r: usize,
    opts: &FactorOptions,
) -> Result<EquivalenceOutcome> {
    let n = f_mat.nvars();
    let f = split_divisor(h, 0)?;
    let h = divisor(n, 0, &f);
    if !f_mat.is_square() {
        return Err(Error::Shape("equivalence needs a square matrix".into()));
    }
    let l = f_mat.nrows();
    if r == 0 || r > l {
        return Err(Error::Input(format!("r = {} outside 1..={}", r, l)));
    }
    let det = f_mat.determinant()?;
    let is_power = det
        .div_exact(&h.pow(r as u32))?
        .is_some_and(|q| q.is_unit());
    if !is_power {
        return Err(Error::Input(format!(
            "determinant {} is not a constant times ({})^{}",
            det, h, r
        )));
    }
    let d = diag_target(n, &h, r, l)?;
    let order = opts.order(n);

    if r == l {
        let d1 = f_mat.minor_gcd(1)?;
        if !divisible(&h, &d1)? {
            return Ok(EquivalenceOutcome::NotEquivalent {
                d,
                reason: format!("{} does not divide d_1 = {}", h, d1),
                certificate: Certificate::default(),
            });
        }
        let v = extract_rows(f_mat, l, &h)?;
        let u = PolyMatrix::identity(n, l);
        return Ok(EquivalenceOutcome::Equivalent { u, d, v });
    }

    let chain_d = f_mat.minor_gcd(l - r + 1)?;
    if !divisible(&h, &chain_d)? {
        return Ok(EquivalenceOutcome::NotEquivalent {
            d,
            reason: format!("{} does not divide d_{} = {}", h, l - r + 1, chain_d),
            certificate: Certificate::default(),
        });
    }
    let mut gens = vec![h.clone()];
    gens.extend(
        f_mat
            .minor_list(l - r)?
            .into_iter()
            .map(|(_, p)| p)
            .filter(|p| !p.is_zero()),
    );
    let basis = buchberger(&gens, &order, true)?;
    let certificate = Certificate::from_basis(gens, &basis);
    if !basis.is_unit() {
        return Ok(EquivalenceOutcome::NotEquivalent {
            d,
            reason: format!("h and the {0}x{0} minors do not generate the unit ideal", l - r),
            certificate,
        });
    }

    let at_f = f_mat.substitute(0, &f)?;
    let u = match annihilator_completion(&at_f, r, opts)? {
        Ok(u) => u,
        Err(reason) => return Ok(EquivalenceOutcome::CompletionNotFound { d, reason }),
    };
    let v = extract_rows(&u.mul(f_mat)?, r, &h)?;
    if !v.is_unimodular()? {
        return Err(Error::Internal("right witness is not unimodular".into()));
    }
    let u_star = u.inverse_unimodular()?;
    Ok(EquivalenceOutcome::Equivalent { u: u_star, d, v })
}

/// `F = g1 * f1` exactly and `det g1` is a nonzero constant times `expected_det`.
pub fn verify_factorization(
    f_mat: &PolyMatrix,
    g1: &PolyMatrix,
    f1: &PolyMatrix,
    expected_det: &Polynomial,
) -> bool {
    let Ok(prod) = g1.mul(f1) else {
        return false;
    };
    if prod != *f_mat {
        return false;
    }
    match g1.determinant() {
        Ok(det) => !det.is_zero() && det.associate_of(expected_det),
        Err(_) => false,
    }
}

/// `F = u * d * v` exactly with `u` and `v` unimodular.
pub fn verify_equivalence(f_mat: &PolyMatrix, u: &PolyMatrix, d: &PolyMatrix, v: &PolyMatrix) -> bool {
    let prod = u.mul(d).and_then(|ud| ud.mul(v));
    matches!(prod, Ok(p) if p == *f_mat)
        && matches!(u.is_unimodular(), Ok(true))
        && matches!(v.is_unimodular(), Ok(true))
}

/// Monomials `z_k` dividing `p`, as candidate divisors for repeated
/// factorization.
pub fn variable_divisors(p: &Polynomial) -> Vec<usize> {
    if p.is_zero() {
        return Vec::new();
    }
    (0..p.nvars())
        .filter(|&k| {
            let zk = Monomial::var(p.nvars(), k, 1);
            p.terms().all(|(m, _)| zk.divides(m))
        })
        .collect()
}
