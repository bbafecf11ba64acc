use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial `z1^e1 * ... * zn^en`.
///
/// The derived `Ord` is plain lexicographic comparison of the exponent
/// vectors; it is only used for storage. Term orders live in [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    /// The monomial `z_{var+1}^exp` (0-based `var`).
    pub fn var(nvars: usize, var: usize, exp: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[var] = exp;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub(crate) fn with_exp(&self, var: usize, exp: u32) -> Monomial {
        let mut m = self.clone();
        m.0[var] = exp;
        m
    }

    pub(crate) fn swap_vars(&self, a: usize, b: usize) -> Monomial {
        let mut m = self.clone();
        m.0.swap(a, b);
        m
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    DegRevLex,
    Lex,
    DegLex,
}

/// A term order on monomials: a kind plus a ranking of the variables.
///
/// `ranking[0]` is the most significant variable. The default ranking is
/// `z1 > z2 > ... > zn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    ranking: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder {
            kind,
            ranking: (0..nvars).collect(),
        }
    }

    pub fn degrevlex(nvars: usize) -> Self {
        Self::new(OrderKind::DegRevLex, nvars)
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, nvars)
    }

    pub fn deglex(nvars: usize) -> Self {
        Self::new(OrderKind::DegLex, nvars)
    }

    /// Order with an explicit variable ranking; `None` unless `ranking`
    /// is a permutation of `0..ranking.len()`.
    pub fn with_ranking(kind: OrderKind, ranking: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; ranking.len()];
        for &v in &ranking {
            if v >= seen.len() || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(MonomialOrder { kind, ranking })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn nvars(&self) -> usize {
        self.ranking.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => self.cmp_lex(a, b),
            OrderKind::DegLex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| self.cmp_lex(a, b)),
            OrderKind::DegRevLex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| {
                    // the smaller exponent in the least significant differing
                    // variable wins
                    for &v in self.ranking.iter().rev() {
                        match a.exp(v).cmp(&b.exp(v)) {
                            Ordering::Equal => continue,
                            o => return o.reverse(),
                        }
                    }
                    Ordering::Equal
                }),
        }
    }

    fn cmp_lex(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &v in &self.ranking {
            match a.exp(v).cmp(&b.exp(v)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}
