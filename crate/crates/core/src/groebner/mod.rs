//! Groebner bases of polynomial ideals.
//!
//! [`buchberger`] returns the reduced basis of an ideal; with tracking on, each
//! basis element also carries its expression in the input generators, which
//! is what unit-ideal certificates and ideal-membership lifts are built from.

pub(crate) mod engine;

use crate::error::{Error, Result};
use crate::polyring::{MonomialOrder, Polynomial};

use engine::{Elem, ModuleOrder, Vect};

/// Reduced Groebner basis of an ideal, optionally with cofactors.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    // rows: basis element k = sum_j cofactors[k][j] * input[j]
    cofactors: Option<Vec<Vec<Polynomial>>>,
    ninputs: usize,
    elems: Vec<Elem>,
}

impl IdealBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    /// Bases produced here are always reduced.
    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn cofactors(&self) -> Option<&[Vec<Polynomial>]> {
        self.cofactors.as_deref()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// The reduced basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_one()
    }

    fn module_order(&self) -> ModuleOrder {
        ModuleOrder::new(self.order.clone())
    }

    /// Remainder of `p` on division by the basis; zero iff `p` is in the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let ord = self.module_order();
        let e = Elem {
            v: Vect::from_polys(std::slice::from_ref(p), &ord),
            tag: None,
        };
        let r = engine::reduce(e, &self.elems, &ord);
        r.v.to_polys(1, self.nvars()).pop().unwrap()
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Coefficients `c` with `p = sum c_j * input_j`, when `p` lies in the
    /// ideal. Requires a basis built with tracking.
    pub fn lift(&self, p: &Polynomial) -> Option<Vec<Polynomial>> {
        self.cofactors.as_ref()?;
        let ord = self.module_order();
        let e = Elem {
            v: Vect::from_polys(std::slice::from_ref(p), &ord),
            tag: Some(Vect::zero()),
        };
        let r = engine::reduce(e, &self.elems, &ord);
        if !r.v.is_zero() {
            return None;
        }
        // p - sum q_k g_k = 0 and the tag holds -sum q_k (cofactors of g_k)
        let tag = r.tag.unwrap().to_polys(self.ninputs, self.nvars());
        Some(tag.into_iter().map(|c| -c).collect())
    }

    /// Same ideal as `other` (mutual containment of generators).
    pub fn same_ideal(&self, other: &IdealBasis) -> bool {
        self.generators.iter().all(|g| other.contains(g))
            && other.generators.iter().all(|g| self.contains(g))
    }

    /// Every S-polynomial of basis pairs reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        engine::satisfies_buchberger_criterion(&self.elems, &self.module_order())
    }
}

/// Reduced Groebner basis of `<gens>` under `order`. The ambient ring is the
/// one `order` is defined on; an empty input gives the zero ideal.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder, track: bool) -> Result<IdealBasis> {
    let nvars = order.nvars();
    if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::Dimension(format!(
            "generator in {} variables, order on {}",
            g.nvars(),
            nvars
        )));
    }
    let ord = ModuleOrder::new(order.clone());
    let input: Vec<Elem> = gens
        .iter()
        .enumerate()
        .map(|(j, g)| Elem {
            v: Vect::from_polys(std::slice::from_ref(g), &ord),
            tag: track.then(|| Vect::unit(j, nvars)),
        })
        .collect();
    let elems = engine::groebner(input, &ord, true);
    let generators: Vec<Polynomial> = elems
        .iter()
        .map(|e| e.v.to_polys(1, nvars).pop().unwrap())
        .collect();
    let cofactors = track.then(|| {
        elems
            .iter()
            .map(|e| e.tag.as_ref().unwrap().to_polys(gens.len(), nvars))
            .collect()
    });
    Ok(IdealBasis {
        generators,
        order: order.clone(),
        cofactors,
        ninputs: gens.len(),
        elems,
    })
}

/// Remainder of `p` modulo a Groebner basis.
pub fn normal_form(p: &Polynomial, basis: &IdealBasis) -> Polynomial {
    basis.normal_form(p)
}

/// Decides `<gens> = <1>`; on success returns `c` with `sum c_i * gens_i = 1`.
pub fn is_unit_ideal(gens: &[Polynomial], order: &MonomialOrder) -> Result<Option<Vec<Polynomial>>> {
    // cheap exits: a unit generator certifies directly
    if let Some(k) = gens.iter().position(Polynomial::is_unit) {
        let n = order.nvars();
        let c = gens[k].constant_value().unwrap().recip();
        let mut cof = vec![Polynomial::zero(n); gens.len()];
        cof[k] = Polynomial::constant(n, c);
        return Ok(Some(cof));
    }
    let basis = buchberger(gens, order, true)?;
    if !basis.is_unit() {
        return Ok(None);
    }
    Ok(basis.cofactors().map(|c| c[0].clone()))
}
