//! Monomials with dense exponent vectors, and the two monomial orders the
//! library needs: graded reverse lexicographic and a one-block elimination
//! order for ideal intersection.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// A monomial in `nvars` variables `x0..x{nvars-1}`, with cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], degree: 0 }
    }

    /// The monomial `x{var}^e`.
    pub fn var_pow(nvars: usize, var: usize, e: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = e;
        Monomial { exps, degree: e }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Exact quotient `other / self`; caller guarantees divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(b, a)| b - a)
            .collect();
        Monomial { exps, degree: other.degree - self.degree }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::new(exps)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }
}

/// Kind of monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// Graded reverse lexicographic: compare total degree, ties broken at the
    /// last variable with differing exponent, smaller exponent wins.
    Grevlex,
    /// Elimination block order: the first `k` variables are compared
    /// grevlex-style first, then the remaining variables grevlex-style.
    Block(usize),
}

/// A total multiplicative monomial order on a fixed number of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    nvars: usize,
}

fn grevlex_slice(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    // Rightmost differing exponent, smaller wins.
    for (x, y) in a.iter().zip(b.iter()).rev() {
        match x.cmp(y) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {}
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::Grevlex, nvars }
    }

    /// Elimination order with a leading block of `k` variables.
    pub fn block(k: usize, nvars: usize) -> Self {
        assert!(k <= nvars);
        MonomialOrder { kind: OrderKind::Block(k), nvars }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn check_dims(&self, m: &Monomial) -> Result<()> {
        if m.nvars() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: m.nvars() });
        }
        Ok(())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), self.nvars);
        debug_assert_eq!(b.nvars(), self.nvars);
        match self.kind {
            OrderKind::Grevlex => grevlex_slice(a.exps(), b.exps()),
            OrderKind::Block(k) => grevlex_slice(&a.exps()[..k], &b.exps()[..k])
                .then_with(|| grevlex_slice(&a.exps()[k..], &b.exps()[k..])),
        }
    }
}

/// Checked comparison of two monomials under an order.
pub fn monomial_cmp(a: &Monomial, b: &Monomial, ord: &MonomialOrder) -> Result<Ordering> {
    ord.check_dims(a)?;
    ord.check_dims(b)?;
    Ok(ord.cmp(a, b))
}

/// Pure lexicographic comparison, used only to sort syzygy bases so that
/// each syzygy stage stops involving the earliest remaining variable.
pub fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exps().iter().zip(b.exps()) {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

/// All monomials of the given total degree, in deterministic order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(out: &mut Vec<Monomial>, current: &mut Vec<u32>, var: usize, left: u32) {
        if var + 1 == current.len() {
            current[var] = left;
            out.push(Monomial::new(current.clone()));
            return;
        }
        for e in (0..=left).rev() {
            current[var] = e;
            rec(out, current, var + 1, left - e);
            current[var] = 0;
        }
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::new(vec![]));
        }
        return out;
    }
    rec(&mut out, &mut current, 0, degree);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn grevlex_spec_cases() {
        // 3 vars x>y>z.
        let ord = MonomialOrder::grevlex(3);
        // x^2 vs xy
        assert_eq!(ord.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        // y^2 vs xz
        assert_eq!(ord.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        // a vs a
        assert_eq!(ord.cmp(&m(&[1, 2, 3]), &m(&[1, 2, 3])), Ordering::Equal);
    }

    #[test]
    fn grevlex_degree_two_chain() {
        // x^2 > xy > y^2 > xz > yz > z^2
        let ord = MonomialOrder::grevlex(3);
        let chain = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for w in chain.windows(2) {
            assert_eq!(ord.cmp(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn block_order_eliminates_first_variable() {
        // Any monomial containing x0 beats any monomial without it.
        let ord = MonomialOrder::block(1, 3);
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 2, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let ord = MonomialOrder::grevlex(3);
        assert!(monomial_cmp(&m(&[1, 0]), &m(&[0, 0, 1]), &ord).is_err());
    }

    #[test]
    fn enumeration_counts() {
        // C(d + n - 1, n - 1) monomials of degree d in n variables.
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
    }
}
