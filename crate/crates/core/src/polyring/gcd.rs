//! Multivariate gcd by recursive content / primitive-part splitting, with the
//! subresultant PRS for the univariate step in the chosen main variable.

use super::Polynomial;

/// Greatest common divisor in canonical normalization.
///
/// `gcd(p, 0) = normalize(p)` and `gcd(0, 0) = 0`.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return q.normalized();
    }
    if q.is_zero() {
        return p.normalized();
    }
    gcd_rec(p, q).normalized()
}

/// Gcd of a whole family; zero for an empty or all-zero family.
pub fn gcd_all<'a, I>(nvars: usize, polys: I) -> Polynomial
where
    I: IntoIterator<Item = &'a Polynomial>,
{
    let mut acc = Polynomial::zero(nvars);
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = if acc.is_zero() {
            p.normalized()
        } else {
            gcd(&acc, p)
        };
        if acc.is_one() {
            break;
        }
    }
    acc
}

// Both arguments nonzero; the result is correct up to a nonzero constant.
fn gcd_rec(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let n = p.nvars();
    if p.is_constant() || q.is_constant() {
        return Polynomial::one(n);
    }
    let vp = p.variables();
    let vq = q.variables();
    if let Some(&v) = vp.iter().find(|v| !vq.contains(v)) {
        return gcd_rec(&content_in(p, v), q);
    }
    if let Some(&v) = vq.iter().find(|v| !vp.contains(v)) {
        return gcd_rec(p, &content_in(q, v));
    }
    // same variable set: pick the main variable of least degree
    let v = *vp
        .iter()
        .min_by_key(|&&v| (p.degree_in(v).max(q.degree_in(v)), v))
        .unwrap();
    let cp = content_in(p, v);
    let cq = content_in(q, v);
    let pp = exact(p, &cp);
    let qq = exact(q, &cq);
    let c = gcd_rec(&cp, &cq);
    let g = subresultant_gcd(pp, qq, v);
    &c * &g
}

fn exact(p: &Polynomial, d: &Polynomial) -> Polynomial {
    p.div_exact(d)
        .expect("same ring")
        .expect("gcd step: inexact division")
}

/// Content of `p` with respect to `var`: gcd of its coefficients in `var`.
fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let n = p.nvars();
    let mut acc: Option<Polynomial> = None;
    for c in p.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        let next = match acc {
            None => c,
            Some(a) => gcd_rec(&a, &c),
        };
        if next.is_constant() {
            return Polynomial::one(n);
        }
        acc = Some(next);
    }
    acc.unwrap_or_else(|| Polynomial::zero(n))
}

/// Polynomial in one main variable with coefficients free of it.
#[derive(Clone)]
struct Univariate {
    var: usize,
    nvars: usize,
    // coeffs[k] multiplies var^k; no trailing zeros
    coeffs: Vec<Polynomial>,
}

impl Univariate {
    fn from_poly(p: &Polynomial, var: usize) -> Self {
        let mut u = Univariate {
            var,
            nvars: p.nvars(),
            coeffs: p.coefficients_in(var),
        };
        u.trim();
        u
    }

    fn to_poly(&self) -> Polynomial {
        let x = Polynomial::var(self.nvars, self.var);
        let mut acc = Polynomial::zero(self.nvars);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Polynomial::is_zero) {
            self.coeffs.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lc(&self) -> &Polynomial {
        self.coeffs.last().unwrap()
    }

    fn scale(&self, c: &Polynomial) -> Univariate {
        let mut u = Univariate {
            var: self.var,
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        };
        u.trim();
        u
    }

    fn div_scalar(&self, c: &Polynomial) -> Univariate {
        Univariate {
            var: self.var,
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|a| exact(a, c)).collect(),
        }
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn prem(&self, b: &Univariate) -> Univariate {
        let db = b.degree();
        let lb = b.lc().clone();
        let mut r = self.clone();
        let mut e = self.degree() as i64 - db as i64 + 1;
        while !r.is_zero() && r.degree() >= db {
            let shift = r.degree() - db;
            let lr = r.lc().clone();
            let mut next = r.scale(&lb);
            for (k, c) in b.coeffs.iter().enumerate() {
                let t = &lr * c;
                next.coeffs[k + shift] = &next.coeffs[k + shift] - &t;
            }
            next.trim();
            r = next;
            e -= 1;
        }
        if e > 0 {
            r = r.scale(&lb.pow(e as u32));
        }
        r
    }
}

/// Gcd of two polynomials primitive in `var`, via the subresultant PRS.
fn subresultant_gcd(p: Polynomial, q: Polynomial, var: usize) -> Polynomial {
    let n = p.nvars();
    let mut a = Univariate::from_poly(&p, var);
    let mut b = Univariate::from_poly(&q, var);
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = Polynomial::one(n);
    let mut h = Polynomial::one(n);
    loop {
        let delta = (a.degree() - b.degree()) as u32;
        let r = a.prem(&b);
        if r.is_zero() {
            break;
        }
        if r.degree() == 0 {
            return Polynomial::one(n);
        }
        a = b;
        let denom = &g * &h.pow(delta);
        b = r.div_scalar(&denom);
        g = a.lc().clone();
        h = if delta == 0 {
            h
        } else {
            exact(&g.pow(delta), &h.pow(delta - 1))
        };
    }
    let bp = b.to_poly();
    let cont = content_in(&bp, var);
    exact(&bp, &cont)
}
