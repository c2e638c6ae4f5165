//! Gröbner bases and the ideal operations linkage needs: membership,
//! intersection, colon ideals, codimension and regular-sequence tests.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ring::{normal_form, FieldElem, Monomial, MonomialOrder, Polynomial};

/// A homogeneous ideal with a lazily cached reduced Gröbner basis.
///
/// Immutable after the basis is cached; distinct ideals may be processed
/// concurrently without shared state.
#[derive(Debug)]
pub struct Ideal {
    prime: u64,
    order: MonomialOrder,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            prime: self.prime,
            order: self.order,
            gens: self.gens.clone(),
            gb: self.gb.clone(),
        }
    }
}

#[derive(Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
    idx: u64,
}

/// Reduced Gröbner basis of the given generators.
///
/// Deterministic for a fixed input order: surviving S-pairs are processed
/// lowest lcm degree first with ties broken by insertion index (normal
/// strategy). Pairs with coprime leading terms are skipped (Buchberger's
/// first criterion), and the Gebauer–Möller installation prunes pairs whose
/// lcm is dominated by another's; neither affects the reduced basis, which
/// is canonical. Output is auto-reduced, monic and sorted descending by
/// leading monomial, so equal ideals yield identical bases.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut counter: u64 = 0;

    // Gebauer–Möller installation of element s against 0..s.
    let install = |basis: &[Polynomial], pairs: &mut Vec<Pair>, counter: &mut u64, s: usize| {
        let lt_s = basis[s].leading_monomial().unwrap();
        // Prune old pairs strictly dominated by the new leading term.
        pairs.retain(|p| {
            !(lt_s.divides(&p.lcm)
                && basis[p.i].leading_monomial().unwrap().lcm(lt_s) != p.lcm
                && basis[p.j].leading_monomial().unwrap().lcm(lt_s) != p.lcm)
        });
        let cand: Vec<Monomial> = (0..s)
            .map(|i| basis[i].leading_monomial().unwrap().lcm(lt_s))
            .collect();
        let mut keep = vec![true; s];
        // Drop (i,s) when some (j,s) has a strictly smaller lcm.
        for i in 0..s {
            if !keep[i] {
                continue;
            }
            for j in 0..s {
                if i == j {
                    continue;
                }
                if cand[j].divides(&cand[i]) && cand[j] != cand[i] {
                    keep[i] = false;
                    break;
                }
            }
        }
        // Among equal lcms keep the earliest, or none when a member has
        // coprime leading terms.
        for i in 0..s {
            if !keep[i] {
                continue;
            }
            let mut class_coprime =
                basis[i].leading_monomial().unwrap().coprime(lt_s);
            for j in (i + 1)..s {
                if keep[j] && cand[j] == cand[i] {
                    keep[j] = false;
                    class_coprime |=
                        basis[j].leading_monomial().unwrap().coprime(lt_s);
                }
            }
            if class_coprime {
                keep[i] = false;
            }
        }
        for i in 0..s {
            if keep[i] {
                pairs.push(Pair {
                    i,
                    j: s,
                    lcm: cand[i].clone(),
                    degree: cand[i].degree(),
                    idx: *counter,
                });
                *counter += 1;
            }
        }
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        basis.push(g.with_order(*ord).monic());
        install(&basis, &mut pairs, &mut counter, basis.len() - 1);
    }

    while !pairs.is_empty() {
        let best = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.degree, p.idx))
            .map(|(k, _)| k)
            .unwrap();
        let pair = pairs.swap_remove(best);
        let fi = &basis[pair.i];
        let fj = &basis[pair.j];
        let mi = fi.leading_monomial().unwrap();
        let mj = fj.leading_monomial().unwrap();
        let one = FieldElem::one(fi.prime());
        let s = fi
            .mul_term(&mi.quotient_into(&pair.lcm), &one)
            .sub(&fj.mul_term(&mj.quotient_into(&pair.lcm), &one));
        let r = normal_form(&s, &basis, ord);
        if !r.is_zero() {
            basis.push(r.monic());
            install(&basis, &mut pairs, &mut counter, basis.len() - 1);
        }
    }

    reduce_basis(basis, ord)
}

/// Minimalize and auto-reduce a Gröbner basis into the reduced basis.
fn reduce_basis(mut basis: Vec<Polynomial>, ord: &MonomialOrder) -> Vec<Polynomial> {
    // Drop elements whose leading monomial is divisible by another's.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let mi = basis[i].leading_monomial().unwrap();
            let mj = basis[j].leading_monomial().unwrap();
            if mj.divides(mi) && (mj != mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut kept: Vec<Polynomial> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();

    // Tail-reduce each element against the others.
    for i in 0..kept.len() {
        let g = kept[i].clone();
        let others: Vec<Polynomial> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        kept[i] = normal_form(&g, &others, ord).monic();
    }
    kept.retain(|g| !g.is_zero());
    kept.sort_by(|a, b| {
        ord.cmp(
            b.leading_monomial().unwrap(),
            a.leading_monomial().unwrap(),
        )
    });
    kept
}

impl Ideal {
    /// Construct from homogeneous generators; inhomogeneous input is
    /// rejected rather than homogenized.
    pub fn new(prime: u64, order: MonomialOrder, gens: Vec<Polynomial>) -> Result<Ideal> {
        let mut kept = Vec::with_capacity(gens.len());
        for (index, g) in gens.into_iter().enumerate() {
            if g.prime() != prime || g.nvars() != order.nvars() {
                return Err(Error::RingMismatch {
                    expected: format!("GF({prime})[{} vars]", order.nvars()),
                    found: format!("GF({})[{} vars]", g.prime(), g.nvars()),
                });
            }
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous { index });
            }
            if !g.is_zero() {
                kept.push(g.with_order(order));
            }
        }
        Ok(Ideal { prime, order, gens: kept, gb: OnceLock::new() })
    }

    /// The zero ideal of `GF(prime)[x0..x{n-1}]`.
    pub fn zero(prime: u64, order: MonomialOrder) -> Ideal {
        Ideal { prime, order, gens: Vec::new(), gb: OnceLock::new() }
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

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The reduced Gröbner basis, computed on first use and cached.
    pub fn gb(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| buchberger(&self.gens, &self.order))
    }

    pub fn is_zero(&self) -> bool {
        self.gb().is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().iter().any(|g| g.is_unit())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(&f.with_order(self.order), self.gb(), &self.order)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// Equality of ideals via their canonical reduced bases.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.prime == other.prime && self.nvars() == other.nvars() && {
            let a = self.gb();
            let b: Vec<Polynomial> = other.gb().iter().map(|g| g.with_order(self.order)).collect();
            a == b.as_slice()
        }
    }

    /// Intersection `I ∩ J` via a single auxiliary variable placed first in
    /// an elimination-block order: generators `t·I + (1−t)·J`, keeping basis
    /// elements free of `t`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if self.prime != other.prime || self.nvars() != other.nvars() {
            return Err(Error::RingMismatch {
                expected: format!("GF({})[{} vars]", self.prime, self.nvars()),
                found: format!("GF({})[{} vars]", other.prime, other.nvars()),
            });
        }
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Ideal::zero(self.prime, self.order));
        }
        let n = self.nvars();
        let ext_order = MonomialOrder::block(1, n + 1);
        let extend = |f: &Polynomial, with_t: bool, negate_t: bool| -> Polynomial {
            // f ↦ t^(0 or 1) · f in GF(p)[t, x0..x{n-1}].
            let terms = f
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut exps = Vec::with_capacity(n + 1);
                    exps.push(u32::from(with_t));
                    exps.extend_from_slice(m.exps());
                    let coef = if negate_t { c.neg() } else { *c };
                    (Monomial::new(exps), coef)
                })
                .collect();
            Polynomial::from_terms(terms, self.prime, ext_order)
        };
        let mut ext_gens = Vec::new();
        for f in &self.gens {
            ext_gens.push(extend(f, true, false));
        }
        for g in &other.gens {
            // (1 - t)·g = g - t·g
            ext_gens.push(extend(g, false, false).add(&extend(g, true, true)));
        }
        let gb = buchberger(&ext_gens, &ext_order);
        let mut result = Vec::new();
        for g in gb {
            if g.terms().iter().all(|(m, _)| m.exps()[0] == 0) {
                let terms = g
                    .terms()
                    .iter()
                    .map(|(m, c)| (Monomial::new(m.exps()[1..].to_vec()), *c))
                    .collect();
                result.push(Polynomial::from_terms(terms, self.prime, self.order));
            }
        }
        Ideal::new(self.prime, self.order, result)
    }

    /// Colon ideal `I : f = { g : g·f ∈ I }`, computed as `(I ∩ ⟨f⟩)/f`.
    pub fn colon(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_homogeneous() {
            return Err(Error::Inhomogeneous { index: 0 });
        }
        if f.degree() == Some(0) {
            return Ok(self.clone());
        }
        let principal = Ideal::new(self.prime, self.order, vec![f.clone()])?;
        let meet = self.intersect(&principal)?;
        let mut gens = Vec::new();
        for g in meet.generators() {
            let q = g
                .div_exact(&f.with_order(self.order))
                .expect("member of I ∩ ⟨f⟩ must be divisible by f");
            gens.push(q);
        }
        Ideal::new(self.prime, self.order, gens)
    }

    /// Colon ideal `I : J = ⋂_j (I : f_j)` over the generators of `J`.
    pub fn colon_ideal(&self, other: &Ideal) -> Result<Ideal> {
        if other.generators().is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let mut acc: Option<Ideal> = None;
        for f in other.generators() {
            let q = self.colon(f)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// Krull dimension of `R/I`, read combinatorially off the initial ideal:
    /// the largest set of variables containing no leading-term support.
    pub fn dim_quotient(&self) -> usize {
        let n = self.nvars();
        let supports: Vec<u32> = self
            .gb()
            .iter()
            .map(|g| {
                let mut mask = 0u32;
                for v in g.leading_monomial().unwrap().support() {
                    mask |= 1 << v;
                }
                mask
            })
            .collect();
        if supports.contains(&0) {
            // Unit ideal: R/I = 0, by convention dimension 0 here.
            return 0;
        }
        let mut best = 0usize;
        for s in 0u32..(1 << n) {
            let size = s.count_ones() as usize;
            if size <= best {
                continue;
            }
            if supports.iter().all(|supp| supp & !s != 0) {
                best = size;
            }
        }
        best
    }

    /// Codimension: number of variables minus `dim R/I`; 0 for the zero
    /// ideal, `nvars` for the unit ideal.
    pub fn codim(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.nvars() - self.dim_quotient()
    }

    /// Extract a minimal generating set as a subset of the reduced basis:
    /// by graded Nakayama, the degree-e minimal generators are a basis of
    /// `I_e` modulo `(𝔪·I)_e`, so per degree we row-reduce the span of
    /// `{m·g : g in basis, deg m = e - deg g ≥ 1}` and keep the degree-e
    /// basis elements that stay independent (deterministic scan order).
    pub fn minimal_generators(&self) -> Vec<Polynomial> {
        let mut gens: Vec<Polynomial> = self.gb().to_vec();
        gens.sort_by(|a, b| {
            a.degree().cmp(&b.degree()).then_with(|| {
                self.order.cmp(
                    b.leading_monomial().unwrap(),
                    a.leading_monomial().unwrap(),
                )
            })
        });
        let mut kept = Vec::new();
        let mut degrees: Vec<u32> = gens.iter().map(|g| g.degree().unwrap()).collect();
        degrees.dedup();
        for e in degrees {
            let mut span = RowSpan::new(self.prime, self.nvars(), e);
            for g in &gens {
                let dg = g.degree().unwrap();
                if dg >= e {
                    continue;
                }
                for m in crate::ring::monomials_of_degree(self.nvars(), e - dg) {
                    span.insert(&g.mul_term(&m, &FieldElem::one(self.prime)));
                }
            }
            for g in &gens {
                if g.degree() == Some(e) && span.insert(g) {
                    kept.push(g.clone());
                }
            }
        }
        kept
    }
}

/// Incremental row space of degree-e forms over GF(p), for membership tests.
struct RowSpan {
    prime: u64,
    index: std::collections::HashMap<Monomial, usize>,
    dim: usize,
    /// pivot column → reduced row (dense coefficient vector).
    pivots: std::collections::BTreeMap<usize, Vec<u64>>,
}

impl RowSpan {
    fn new(prime: u64, nvars: usize, degree: u32) -> RowSpan {
        let monos = crate::ring::monomials_of_degree(nvars, degree);
        let dim = monos.len();
        let index = monos.into_iter().zip(0..).collect();
        RowSpan { prime, index, dim, pivots: std::collections::BTreeMap::new() }
    }

    /// Reduce against the span; if independent, install as a new pivot row
    /// and return true.
    fn insert(&mut self, f: &Polynomial) -> bool {
        let p = self.prime as u128;
        let mut row = vec![0u64; self.dim];
        for (m, c) in f.terms() {
            row[self.index[m]] = c.value();
        }
        for (col, pivot_row) in &self.pivots {
            let factor = row[*col];
            if factor == 0 {
                continue;
            }
            let f128 = factor as u128;
            for (r, pv) in row.iter_mut().zip(pivot_row) {
                let sub = f128 * (*pv as u128) % p;
                let cur = *r as u128;
                *r = ((cur + p - sub) % p) as u64;
            }
        }
        let Some(lead) = row.iter().position(|c| *c != 0) else {
            return false;
        };
        let inv = FieldElem::new(row[lead] as i64, self.prime).inv().value() as u128;
        for r in row.iter_mut() {
            *r = ((*r as u128) * inv % p) as u64;
        }
        self.pivots.insert(lead, row);
        true
    }
}

/// True iff the forms cut a complete intersection: codim equals length.
pub fn is_regular_sequence(fs: &[Polynomial]) -> bool {
    if fs.is_empty() {
        return true;
    }
    if fs.iter().any(|f| f.is_zero() || !f.is_homogeneous()) {
        return false;
    }
    let order = fs[0].order();
    let prime = fs[0].prime();
    match Ideal::new(prime, order, fs.to_vec()) {
        Ok(ideal) => ideal.codim() == fs.len(),
        Err(_) => false,
    }
}
