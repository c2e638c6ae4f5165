//! Exact multivariate polynomials over GF(p) with order-sorted term lists.

use std::cmp::Ordering;
use std::fmt;

use super::field::FieldElem;
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// A polynomial in `R = GF(p)[x0..x{n-1}]`.
///
/// Terms are kept sorted strictly descending under the active order, with no
/// zero coefficients and no duplicate monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    prime: u64,
    order: MonomialOrder,
    terms: Vec<(Monomial, FieldElem)>,
}

impl Polynomial {
    pub fn zero(prime: u64, order: MonomialOrder) -> Self {
        Polynomial { prime, order, terms: Vec::new() }
    }

    pub fn constant(c: i64, prime: u64, order: MonomialOrder) -> Self {
        let e = FieldElem::new(c, prime);
        if e.is_zero() {
            return Self::zero(prime, order);
        }
        Polynomial {
            prime,
            order,
            terms: vec![(Monomial::one(order.nvars()), e)],
        }
    }

    /// The monomial `c * x{var}^e`.
    pub fn term(c: i64, var: usize, e: u32, prime: u64, order: MonomialOrder) -> Self {
        let coef = FieldElem::new(c, prime);
        if coef.is_zero() {
            return Self::zero(prime, order);
        }
        Polynomial {
            prime,
            order,
            terms: vec![(Monomial::var_pow(order.nvars(), var, e), coef)],
        }
    }

    /// Build from an arbitrary term list: merges duplicates, drops zeros,
    /// sorts descending under `order`.
    pub fn from_terms(
        terms: Vec<(Monomial, FieldElem)>,
        prime: u64,
        order: MonomialOrder,
    ) -> Self {
        let mut p = Polynomial { prime, order, terms };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        let order = self.order;
        self.terms
            .sort_unstable_by(|(a, _), (b, _)| order.cmp(b, a));
        let mut merged: Vec<(Monomial, FieldElem)> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.drain(..) {
            debug_assert_eq!(m.nvars(), order.nvars());
            debug_assert_eq!(c.prime(), self.prime);
            if let Some(last) = merged.last_mut() {
                if last.0 == m {
                    last.1 = last.1.add(&c);
                    continue;
                }
            }
            merged.push((m, c));
        }
        merged.retain(|(_, c)| !c.is_zero());
        self.terms = merged;
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coef(&self) -> Option<FieldElem> {
        self.terms.first().map(|(_, c)| *c)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// All terms share one total degree (vacuously true for zero).
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    pub fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.prime != other.prime || self.order.nvars() != other.order.nvars() {
            return Err(Error::RingMismatch {
                expected: format!("GF({})[{} vars]", self.prime, self.nvars()),
                found: format!("GF({})[{} vars]", other.prime, other.nvars()),
            });
        }
        Ok(())
    }

    /// Same polynomial re-sorted under another order on the same variables.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        assert_eq!(order.nvars(), self.nvars());
        Polynomial::from_terms(self.terms.clone(), self.prime, order)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            prime: self.prime,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(self.check_same_ring(other).is_ok());
        // Merge two sorted term lists.
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match self.order.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), *ca));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), *cb));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca.add(cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().cloned());
        Polynomial { prime: self.prime, order: self.order, terms: out }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.prime, self.order);
        }
        // Multiplication by a monomial preserves the term order.
        Polynomial {
            prime: self.prime,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc.mul(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Polynomial {
        self.mul_term(&Monomial::one(self.nvars()), c)
    }

    /// Divide every coefficient so the leading coefficient becomes 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coef() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut acc = Polynomial::zero(self.prime, self.order);
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(m, c));
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor` when every reduction step succeeds and
    /// the remainder is zero; `None` otherwise.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(&[divisor]);
        if r.is_zero() {
            Some(q.into_iter().next().unwrap())
        } else {
            None
        }
    }

    /// Multivariate division: returns quotients (one per divisor, tried in
    /// list order) and the remainder, none of whose terms is divisible by any
    /// divisor's leading monomial.
    pub fn div_rem(&self, divisors: &[&Polynomial]) -> (Vec<Polynomial>, Polynomial) {
        let mut quotients = vec![Polynomial::zero(self.prime, self.order); divisors.len()];
        let mut remainder = Polynomial::zero(self.prime, self.order);
        let mut work = self.clone();
        'outer: while let Some((lm, lc)) = work.terms.first().cloned() {
            for (k, g) in divisors.iter().enumerate() {
                if let Some(glm) = g.leading_monomial() {
                    if glm.divides(&lm) {
                        let q_mono = glm.quotient_into(&lm);
                        let q_coef = lc.div(&g.leading_coef().unwrap());
                        work = work.sub(&g.mul_term(&q_mono, &q_coef));
                        quotients[k] =
                            quotients[k].add(&Polynomial::from_terms(
                                vec![(q_mono, q_coef)],
                                self.prime,
                                self.order,
                            ));
                        continue 'outer;
                    }
                }
            }
            // Leading term irreducible: move it to the remainder.
            remainder = remainder.add(&Polynomial {
                prime: self.prime,
                order: self.order,
                terms: vec![(lm, lc)],
            });
            work.terms.remove(0);
        }
        (quotients, remainder)
    }
}

/// Remainder of `f` on division by the list `basis` (divisors tried in list
/// order). The result has no term divisible by any leading term of `basis`,
/// and `f - normal_form(f, basis)` lies in the ideal generated by `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], _ord: &MonomialOrder) -> Polynomial {
    let refs: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    f.div_rem(&refs).1
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let show_coef = !c.is_one() || m.is_one();
            if show_coef {
                write!(f, "{}", c.value())?;
            }
            let mut shown_var = false;
            for (i, e) in m.exps().iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                if show_coef || shown_var {
                    write!(f, "*")?;
                }
                shown_var = true;
                write!(f, "x{i}")?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grev(n: usize) -> MonomialOrder {
        MonomialOrder::grevlex(n)
    }

    fn var(i: usize, n: usize, p: u64) -> Polynomial {
        Polynomial::term(1, i, 1, p, grev(n))
    }

    #[test]
    fn product_difference_of_squares() {
        // (x + y)(x - y) = x^2 - y^2 over GF(32003)
        let p = 32003;
        let x = var(0, 2, p);
        let y = var(1, 2, p);
        let f = x.add(&y);
        let g = x.sub(&y);
        let prod = f.mul(&g).unwrap();
        let expected = x.mul(&x).unwrap().sub(&y.mul(&y).unwrap());
        assert_eq!(prod, expected);
    }

    #[test]
    fn product_with_zero() {
        let p = 32003;
        let x = var(0, 2, p);
        let z = Polynomial::zero(p, grev(2));
        assert!(x.mul(&z).unwrap().is_zero());
    }

    #[test]
    fn frobenius_in_characteristic_two() {
        // (x + y)^2 = x^2 + y^2 over GF(2)
        let p = 2;
        let x = var(0, 2, p);
        let y = var(1, 2, p);
        let s = x.add(&y);
        let sq = s.mul(&s).unwrap();
        let expected = x.mul(&x).unwrap().add(&y.mul(&y).unwrap());
        assert_eq!(sq, expected);
    }

    #[test]
    fn homogeneous_product_degree_adds() {
        let p = 101;
        let x = var(0, 3, p);
        let y = var(1, 3, p);
        let f = x.mul(&x).unwrap().add(&y.mul(&y).unwrap());
        let g = x.add(&y);
        let prod = f.mul(&g).unwrap();
        assert!(prod.is_homogeneous());
        assert_eq!(prod.degree(), Some(3));
    }

    #[test]
    fn normal_form_divisibility() {
        // normal_form(x^2 y, {x^2}) = 0
        let p = 32003;
        let ord = grev(3);
        let x2y = Polynomial::from_terms(
            vec![(Monomial::new(vec![2, 1, 0]), FieldElem::one(p))],
            p,
            ord,
        );
        let x2 = Polynomial::term(1, 0, 2, p, ord);
        assert!(normal_form(&x2y, &[x2], &ord).is_zero());
    }

    #[test]
    fn normal_form_no_division_possible() {
        // normal_form(x^2, {y}) = x^2
        let p = 32003;
        let ord = grev(2);
        let x2 = Polynomial::term(1, 0, 2, p, ord);
        let y = Polynomial::term(1, 1, 1, p, ord);
        assert_eq!(normal_form(&x2, &[y], &ord), x2);
    }

    #[test]
    fn normal_form_hand_division() {
        // normal_form(xy + y^2, {x + y}) = 0 since xy + y^2 = y (x + y)
        let p = 32003;
        let ord = grev(2);
        let f = Polynomial::from_terms(
            vec![
                (Monomial::new(vec![1, 1]), FieldElem::one(p)),
                (Monomial::new(vec![0, 2]), FieldElem::one(p)),
            ],
            p,
            ord,
        );
        let g = Polynomial::term(1, 0, 1, p, ord).add(&Polynomial::term(1, 1, 1, p, ord));
        assert!(normal_form(&f, &[g], &ord).is_zero());
    }

    #[test]
    fn display_round_shape() {
        let p = 32003;
        let ord = grev(3);
        let f = Polynomial::term(3, 0, 2, p, ord).add(&Polynomial::term(-1, 2, 6, p, ord));
        assert_eq!(format!("{f}"), "32002*x2^6 + 3*x0^2");
    }
}

#[cfg(test)]
mod proptest_arithmetic {
    use super::*;
    use crate::ring::monomial::monomials_of_degree;
    use proptest::prelude::*;

    fn homogeneous(degree: u32) -> impl Strategy<Value = Polynomial> {
        let monos = monomials_of_degree(3, degree);
        prop::collection::vec(0i64..32003, monos.len()).prop_map(move |coefs| {
            let terms = monos
                .iter()
                .cloned()
                .zip(coefs.into_iter().map(|c| FieldElem::new(c, 32003)))
                .collect();
            Polynomial::from_terms(terms, 32003, MonomialOrder::grevlex(3))
        })
    }

    proptest! {
        /// Degrees add under multiplication of homogeneous polynomials,
        /// unless the product vanishes.
        #[test]
        fn product_degree_adds(
            a in (1u32..4).prop_flat_map(homogeneous),
            b in (1u32..4).prop_flat_map(homogeneous),
        ) {
            let prod = a.mul(&b).unwrap();
            prop_assert!(prod.is_homogeneous());
            match (a.degree(), b.degree(), prod.degree()) {
                (Some(da), Some(db), Some(dp)) => prop_assert_eq!(dp, da + db),
                (_, _, None) => {}
                (None, _, Some(_)) | (_, None, Some(_)) => prop_assert!(false),
            }
        }

        /// Ring laws on random triples: distributivity and commutativity.
        #[test]
        fn distributive_and_commutative(
            a in (1u32..3).prop_flat_map(homogeneous),
            b in (1u32..3).prop_flat_map(homogeneous),
            c in (1u32..3).prop_flat_map(homogeneous),
        ) {
            let left = a.mul(&b.add(&c)).unwrap();
            let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap());
            prop_assert_eq!(left, right);
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }
    }
}
