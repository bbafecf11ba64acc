//! Worked examples and the end-to-end checks built on them.

use polymat::factorizer::{
    classify, decide_equivalence, factorize, factorize_general_variable, verify_equivalence,
    verify_factorization, EquivalenceOutcome, FactorOptions, FactorizationOutcome,
};
use polymat::groebner::buchberger;
use polymat::modsyz::module_equal;
use polymat::{MonomialOrder, PolyMatrix, Polynomial};

use super::{ensure, Check};

pub fn poly(s: &str) -> Polynomial {
    polymat::cli::parse_polynomial(s, 3).unwrap()
}

pub fn mat(rows: &[&[&str]]) -> PolyMatrix {
    PolyMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| poly(s)).collect()).collect()).unwrap()
}

/// 2x4 matrix with `d_2 = z2 (z1 - z3)`.
pub fn wide() -> PolyMatrix {
    mat(&[
        &[
            "-2*z1*z2^2 + z1^2*z3 + z2^2*z3 - z1*z3^2 + z2*z3^2",
            "z1^3 - z2^3 - z1^2*z3 + z2*z3^2",
            "z1*z2 - z2*z3",
            "z2^2",
        ],
        &["-z1*z2 + z3^2", "-z2^2 + z1*z3", "0", "z2"],
    ])
}

pub fn wide_f1() -> PolyMatrix {
    mat(&[
        &["z1*z3 - z2^2", "z1^2 - z2*z3", "z2", "0"],
        &["-z1*z2 + z3^2", "-z2^2 + z1*z3", "0", "z2"],
    ])
}

pub fn wide_g1() -> PolyMatrix {
    mat(&[&["z1 - z3", "z2"], &["0", "1"]])
}

/// 3x3 matrix with `d_2 = z1 - z2` and multiplicity two.
pub fn square() -> PolyMatrix {
    mat(&[
        &["z1^2 - z1*z2", "z2*z3 + z3^2 + z2 + z3", "-z2*z3 - z2"],
        &["z1*z2 - z2^2", "-z1*z3 + z2*z3", "z1^3 - z1^2*z2 + z1*z2 - z2^2"],
        &["0", "z2 + z3", "-z2"],
    ])
}

pub fn square_f1() -> PolyMatrix {
    mat(&[&["z1", "0", "0"], &["z2", "-z3", "z1^2 + z2"], &["0", "z2 + z3", "-z2"]])
}

/// 3x3 matrix with determinant `(z1 - z2)^2`, equivalent to `diag(h, h, 1)`.
pub fn equiv() -> PolyMatrix {
    mat(&[
        &[
            "z1*z2 - z2^2 + z2*z3 + z2 - z3 - 1",
            "z1*z2*z3 - z2^2*z3 + z1*z2 - z2^2 + z2*z3 - z3",
            "z1*z2*z3 - z2^2*z3",
        ],
        &[
            "z1*z2 - z2^2 + z1 - z2 + z3 + 1",
            "(z1 - z2)*(z2*z3 + 2*z2 + z3 + 1) + z3",
            "z1*z2*z3 - z2^2*z3 + z1*z2 - z2^2 + z1*z3 - z2*z3",
        ],
        &["z1 - z2", "z1*z3 - z2*z3 + 2*z1 - 2*z2", "z1*z3 - z2*z3 + z1 - z2"],
    ])
}

pub fn equiv_u() -> PolyMatrix {
    mat(&[&["0", "z2", "z2 - 1"], &["z2", "z2 + 1", "1"], &["1", "1", "0"]])
}

pub fn equiv_v() -> PolyMatrix {
    mat(&[&["0", "1", "1"], &["1", "z3 + 1", "z3"], &["z3 + 1", "z3", "0"]])
}

/// 3x3 member for `h = z1` with multiplicity two whose reduced minors at
/// `z1 = 0` are `{z2, z3}`, a proper ideal.
pub fn undecidable() -> PolyMatrix {
    mat(&[&["z2", "z1", "0"], &["z3", "0", "z1"], &["z1", "0", "0"]])
}

pub fn opts() -> FactorOptions {
    FactorOptions::default()
}

fn same_ideal(gens: &[Polynomial], expected: &[&str]) -> bool {
    let order = MonomialOrder::degrevlex(3);
    let a = buchberger(gens, &order, false).unwrap();
    let want: Vec<Polynomial> = expected.iter().map(|s| poly(s)).collect();
    let b = buchberger(&want, &order, false).unwrap();
    a.same_ideal(&b)
}

pub fn criterion_wide_factored() -> Check {
    let f = wide();
    let h = poly("z1 - z3");
    let out = factorize(&f, &h, &MonomialOrder::degrevlex(3)).map_err(|e| e.to_string())?;
    let Some((g1, f1)) = out.factors() else {
        return Err(format!("expected Factored, got {}", out.name()));
    };
    ensure(verify_factorization(&f, g1, f1, &h), || "F != G1 F1 or det G1 != h".into())?;
    ensure(
        module_equal(&f1.row_vectors(), &wide_f1().row_vectors()).unwrap(),
        || format!("Im(F1) differs from the reference F1: {}", f1),
    )
}

pub fn criterion_wide_no_factorization() -> Check {
    let zero = Polynomial::zero(3);
    let out = factorize_general_variable(&wide_f1(), 1, &zero, &opts()).map_err(|e| e.to_string())?;
    let FactorizationOutcome::NoFactorization { certificate, .. } = &out else {
        return Err(format!("F1 w.r.t. z2: expected NoFactorization, got {}", out.name()));
    };
    ensure(same_ideal(&certificate.basis, &["z1", "z3"]), || format!("certificate {:?}", certificate.basis))?;
    let out = factorize_general_variable(&wide(), 1, &zero, &opts()).map_err(|e| e.to_string())?;
    ensure(
        matches!(out, FactorizationOutcome::NoFactorization { .. }),
        || format!("F w.r.t. z2: expected NoFactorization, got {}", out.name()),
    )
}

pub fn criterion_square_chain() -> Check {
    let f = square();
    let h = poly("z1 - z2");
    let r = classify(&f, &h).map_err(|e| e.to_string())?;
    ensure(r == 2, || format!("r = {}", r))?;
    let out = factorize(&f, &h, &MonomialOrder::degrevlex(3)).map_err(|e| e.to_string())?;
    let Some((g1, f1)) = out.factors() else {
        return Err(format!("expected Factored, got {}", out.name()));
    };
    ensure(verify_factorization(&f, g1, f1, &h.pow(2)), || "first step does not verify".into())?;
    let z1 = poly("z1");
    let out2 = factorize(f1, &z1, &MonomialOrder::degrevlex(3)).map_err(|e| e.to_string())?;
    let Some((g2, f2)) = out2.factors() else {
        return Err(format!("F1 w.r.t. z1: expected Factored, got {}", out2.name()));
    };
    ensure(verify_factorization(f1, g2, f2, &z1), || "second step does not verify".into())?;
    let g = g1.mul(g2).unwrap();
    let expected = &z1 * &h.pow(2);
    ensure(verify_factorization(&f, &g, f2, &expected), || "composed factorization does not verify".into())
}

pub fn criterion_equivalence() -> Check {
    let f = equiv();
    let h = poly("z1 - z2");
    let out = decide_equivalence(&f, &h, 2, &opts()).map_err(|e| e.to_string())?;
    let EquivalenceOutcome::Equivalent { u, d, v } = &out else {
        return Err(format!("expected Equivalent, got {}", out.name()));
    };
    ensure(*d == PolyMatrix::diag(&[h.clone(), h.clone(), Polynomial::one(3)]).unwrap(), || "wrong target".into())?;
    ensure(verify_equivalence(&f, u, d, v), || "F != U D V or witnesses not unimodular".into())
}

pub fn criterion_groebner() -> Check {
    let mut gens = vec![poly("z1 - z3")];
    gens.extend(wide().entries().cloned());
    let basis = buchberger(&gens, &MonomialOrder::degrevlex(3), false).map_err(|e| e.to_string())?;
    let mut got: Vec<Polynomial> = basis.generators().iter().map(Polynomial::normalized).collect();
    let mut want: Vec<Polynomial> = ["z1 - z3", "z2", "z3^2"].iter().map(|s| poly(s).normalized()).collect();
    got.sort_by_key(|p| p.to_string());
    want.sort_by_key(|p| p.to_string());
    ensure(got == want, || format!("basis {:?}", basis.generators()))
}

pub fn criterion_unable_to_judge() -> Check {
    let z1 = poly("z1");
    let out = factorize(&undecidable(), &z1, &MonomialOrder::degrevlex(3)).map_err(|e| e.to_string())?;
    ensure(out.r() == 2, || format!("r = {}", out.r()))?;
    ensure(
        matches!(out, FactorizationOutcome::UnableToJudge { .. }),
        || format!("expected UnableToJudge, got {}", out.name()),
    )
}
