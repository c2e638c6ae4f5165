//! Graded free modules over GF(p)[x0..xn], module monomial orders, division
//! with quotient tracking, Schreyer syzygies and membership lifting.
//!
//! This is the engine behind `resolution::free_resolution` and the
//! comparison-map lifts in `linkage`: syzygies of a Gröbner basis generate
//! the kernel of the map it presents, and the S-pair remainders taken under
//! the induced (Schreyer) order form a Gröbner basis of that kernel.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::ring::{lex_cmp, FieldElem, Monomial, MonomialOrder, Polynomial};

/// Order on module monomials `m·ε_c`.
#[derive(Debug, Clone)]
pub enum ModOrder {
    /// Schreyer tower: compares images under the presented basis; `acc[c]`
    /// is the accumulated ring monomial of basis element `c` down the tower
    /// and `chain[c]` the bottom-up component chain used to break ties
    /// (smaller index wins).
    Schreyer {
        acc: Arc<Vec<Monomial>>,
        chain: Arc<Vec<Vec<u32>>>,
    },
    /// Components before `split` dominate the rest regardless of monomial;
    /// within a block, ring order with ties to the smaller component. Used
    /// to eliminate the value block in membership lifts.
    Elim { split: usize },
}

/// A graded free module `⊕ R(-shifts[c])` with a module monomial order.
#[derive(Debug, Clone)]
pub struct FreeModule {
    prime: u64,
    ring_order: MonomialOrder,
    shifts: Vec<i64>,
    order: ModOrder,
}

impl FreeModule {
    /// The base ring as a rank-1 free module (bottom of every Schreyer tower).
    pub fn base_ring(prime: u64, ring_order: MonomialOrder) -> FreeModule {
        FreeModule {
            prime,
            ring_order,
            shifts: vec![0],
            order: ModOrder::Schreyer {
                acc: Arc::new(vec![Monomial::one(ring_order.nvars())]),
                chain: Arc::new(vec![Vec::new()]),
            },
        }
    }

    /// Free module with an elimination order dominated by the first `split`
    /// components.
    pub fn with_elim(
        prime: u64,
        ring_order: MonomialOrder,
        shifts: Vec<i64>,
        split: usize,
    ) -> FreeModule {
        FreeModule { prime, ring_order, shifts, order: ModOrder::Elim { split } }
    }

    /// The next free module in a Schreyer tower, presented on generators
    /// whose leading module monomials in `self` are `leads`.
    pub fn schreyer_over(&self, leads: &[(Monomial, usize)]) -> FreeModule {
        let (parent_acc, parent_chain) = match &self.order {
            ModOrder::Schreyer { acc, chain } => (acc.clone(), chain.clone()),
            ModOrder::Elim { .. } => panic!("Schreyer stage over an elimination module"),
        };
        let mut acc = Vec::with_capacity(leads.len());
        let mut chain = Vec::with_capacity(leads.len());
        let mut shifts = Vec::with_capacity(leads.len());
        for (i, (m, c)) in leads.iter().enumerate() {
            acc.push(m.mul(&parent_acc[*c]));
            let mut ch = parent_chain[*c].clone();
            ch.push(i as u32);
            chain.push(ch);
            shifts.push(m.degree() as i64 + self.shifts[*c]);
        }
        FreeModule {
            prime: self.prime,
            ring_order: self.ring_order,
            shifts,
            order: ModOrder::Schreyer { acc: Arc::new(acc), chain: Arc::new(chain) },
        }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn ring_order(&self) -> MonomialOrder {
        self.ring_order
    }

    /// Compare module monomials `m1·ε_{c1}` and `m2·ε_{c2}`.
    pub fn cmp_mono(&self, m1: &Monomial, c1: usize, m2: &Monomial, c2: usize) -> Ordering {
        match &self.order {
            ModOrder::Schreyer { acc, chain } => {
                let im1 = m1.mul(&acc[c1]);
                let im2 = m2.mul(&acc[c2]);
                match self.ring_order.cmp(&im1, &im2) {
                    Ordering::Equal => {}
                    o => return o,
                }
                // Equal ring images: ties resolve bottom-up along the
                // component chains, smaller index first.
                for (a, b) in chain[c1].iter().zip(chain[c2].iter()) {
                    match a.cmp(b) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {}
                    }
                }
                Ordering::Equal
            }
            ModOrder::Elim { split } => {
                let b1 = c1 < *split;
                let b2 = c2 < *split;
                match (b1, b2) {
                    (true, false) => return Ordering::Greater,
                    (false, true) => return Ordering::Less,
                    _ => {}
                }
                self.ring_order.cmp(m1, m2).then_with(|| c2.cmp(&c1))
            }
        }
    }
}

/// An element of a free module, stored sparsely as (component, polynomial)
/// pairs sorted by component, zero polynomials omitted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModVec {
    comps: Vec<(usize, Polynomial)>,
}

impl ModVec {
    pub fn zero() -> ModVec {
        ModVec { comps: Vec::new() }
    }

    pub fn from_dense(comps: Vec<Polynomial>) -> ModVec {
        ModVec {
            comps: comps
                .into_iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    pub fn from_sparse(mut comps: Vec<(usize, Polynomial)>) -> ModVec {
        comps.retain(|(_, p)| !p.is_zero());
        comps.sort_by_key(|(c, _)| *c);
        ModVec { comps }
    }

    /// The basis vector `ε_c`.
    pub fn unit(module: &FreeModule, c: usize) -> ModVec {
        ModVec {
            comps: vec![(c, Polynomial::constant(1, module.prime(), module.ring_order()))],
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.comps.iter().map(|(c, p)| (*c, p))
    }

    pub fn comp(&self, c: usize) -> Option<&Polynomial> {
        self.comps
            .binary_search_by_key(&c, |(cc, _)| *cc)
            .ok()
            .map(|k| &self.comps[k].1)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add(&self, other: &ModVec) -> ModVec {
        let mut out = Vec::with_capacity(self.comps.len() + other.comps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.comps.len() && j < other.comps.len() {
            match self.comps[i].0.cmp(&other.comps[j].0) {
                Ordering::Less => {
                    out.push(self.comps[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.comps[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let sum = self.comps[i].1.add(&other.comps[j].1);
                    if !sum.is_zero() {
                        out.push((self.comps[i].0, sum));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.comps[i..]);
        out.extend_from_slice(&other.comps[j..]);
        ModVec { comps: out }
    }

    pub fn sub(&self, other: &ModVec) -> ModVec {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ModVec {
        ModVec {
            comps: self.comps.iter().map(|(c, p)| (*c, p.neg())).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, coef: &FieldElem) -> ModVec {
        if coef.is_zero() {
            return ModVec::zero();
        }
        ModVec {
            comps: self
                .comps
                .iter()
                .map(|(c, p)| (*c, p.mul_term(m, coef)))
                .collect(),
        }
    }

    pub fn scale(&self, coef: &FieldElem) -> ModVec {
        ModVec {
            comps: self.comps.iter().map(|(c, p)| (*c, p.scale(coef))).collect(),
        }
    }

    /// Leading term under the module order: `(monomial, component, coef)`.
    ///
    /// Within a component the module order restricts to the ring order, so
    /// only per-component leading terms compete.
    pub fn lead(&self, module: &FreeModule) -> Option<(Monomial, usize, FieldElem)> {
        let mut best: Option<(&Monomial, usize, FieldElem)> = None;
        for (c, p) in &self.comps {
            let m = p.leading_monomial().expect("no zero components stored");
            match &best {
                None => best = Some((m, *c, p.leading_coef().unwrap())),
                Some((bm, bc, _)) => {
                    if module.cmp_mono(m, *c, bm, *bc) == Ordering::Greater {
                        best = Some((m, *c, p.leading_coef().unwrap()));
                    }
                }
            }
        }
        best.map(|(m, c, coef)| (m.clone(), c, coef))
    }

    /// Degree of a homogeneous element w.r.t. the module shifts, `None` if
    /// zero or not homogeneous.
    pub fn homogeneous_degree(&self, module: &FreeModule) -> Option<i64> {
        let mut deg: Option<i64> = None;
        for (c, p) in &self.comps {
            if !p.is_homogeneous() {
                return None;
            }
            let d = p.degree().unwrap() as i64 + module.shifts()[*c];
            match deg {
                None => deg = Some(d),
                Some(existing) if existing == d => {}
                _ => return None,
            }
        }
        deg
    }

    fn drop_lead_into(&mut self, c: usize, remainder: &mut ModVec) {
        let k = self
            .comps
            .binary_search_by_key(&c, |(cc, _)| *cc)
            .expect("component present");
        let p = &self.comps[k].1;
        let (m, coef) = p.terms()[0].clone();
        let t = Polynomial::from_terms(vec![(m, coef)], p.prime(), p.order());
        *remainder = remainder.add(&ModVec { comps: vec![(c, t.clone())] });
        let rest = self.comps[k].1.sub(&t);
        if rest.is_zero() {
            self.comps.remove(k);
        } else {
            self.comps[k].1 = rest;
        }
    }
}

/// Full division of `v` by `gens` in `module`: returns the quotients (one
/// per divisor, tried in list order) and the fully reduced remainder, none
/// of whose terms is divisible by a divisor's leading module monomial.
pub fn div_rem(v: &ModVec, gens: &[ModVec], module: &FreeModule) -> (Vec<Polynomial>, ModVec) {
    let prime = module.prime();
    let ring_order = module.ring_order();
    let leads: Vec<Option<(Monomial, usize, FieldElem)>> =
        gens.iter().map(|g| g.lead(module)).collect();
    // Bucket divisor indices by leading component for fast candidate scans.
    let mut by_comp: std::collections::HashMap<usize, Vec<usize>> = Default::default();
    for (k, lead) in leads.iter().enumerate() {
        if let Some((_, c, _)) = lead {
            by_comp.entry(*c).or_default().push(k);
        }
    }
    let mut quotients = vec![Polynomial::zero(prime, ring_order); gens.len()];
    let mut remainder = ModVec::zero();
    let mut work = v.clone();
    'outer: while let Some((m, c, coef)) = work.lead(module) {
        if let Some(cands) = by_comp.get(&c) {
            for &k in cands {
                let (gm, _, gcoef) = leads[k].as_ref().unwrap();
                if gm.divides(&m) {
                    let q_mono = gm.quotient_into(&m);
                    let q_coef = coef.div(gcoef);
                    work = work.sub(&gens[k].mul_term(&q_mono, &q_coef));
                    quotients[k] = quotients[k].add(&Polynomial::from_terms(
                        vec![(q_mono, q_coef)],
                        prime,
                        ring_order,
                    ));
                    continue 'outer;
                }
            }
        }
        work.drop_lead_into(c, &mut remainder);
    }
    (quotients, remainder)
}

/// One Schreyer step: the `gens` form a Gröbner basis of a submodule of
/// `module`; returns the next free module (Schreyer order over the leading
/// terms) and a Gröbner basis of the syzygy module, minimalized by leading
/// term divisibility and sorted so that iterated steps terminate.
pub fn schreyer_syzygies(module: &FreeModule, gens: &[ModVec]) -> (FreeModule, Vec<ModVec>) {
    let leads: Vec<(Monomial, usize)> = gens
        .iter()
        .map(|g| {
            let (m, c, coef) = g.lead(module).expect("zero generator in Gröbner basis");
            debug_assert!(coef.is_one(), "basis elements must be monic");
            (m, c)
        })
        .collect();
    let next = module.schreyer_over(&leads);
    let one = FieldElem::one(module.prime());

    let mut syzygies: Vec<ModVec> = Vec::new();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let (mi, ci) = &leads[i];
            let (mj, cj) = &leads[j];
            if ci != cj {
                continue;
            }
            let lcm = mi.lcm(mj);
            let a = mi.quotient_into(&lcm);
            let b = mj.quotient_into(&lcm);
            let s = gens[i].mul_term(&a, &one).sub(&gens[j].mul_term(&b, &one));
            let (q, rem) = div_rem(&s, gens, module);
            assert!(
                rem.is_zero(),
                "S-vector of a Gröbner basis failed to reduce to zero"
            );
            let mut comps: Vec<(usize, Polynomial)> = q
                .into_iter()
                .enumerate()
                .filter(|(_, quot)| !quot.is_zero())
                .map(|(l, quot)| (l, quot.neg()))
                .collect();
            let add_term = |comps: &mut Vec<(usize, Polynomial)>, l: usize, t: Polynomial| {
                match comps.iter_mut().find(|(c, _)| *c == l) {
                    Some((_, p)) => *p = p.add(&t),
                    None => comps.push((l, t)),
                }
            };
            add_term(
                &mut comps,
                i,
                Polynomial::from_terms(vec![(a.clone(), one)], module.prime(), module.ring_order()),
            );
            add_term(
                &mut comps,
                j,
                Polynomial::from_terms(vec![(b, one)], module.prime(), module.ring_order())
                    .neg(),
            );
            let tau = ModVec::from_sparse(comps);
            debug_assert_eq!(
                tau.lead(&next).map(|(m, c, _)| (m, c)),
                Some((a, i)),
                "Schreyer leading term mismatch"
            );
            syzygies.push(tau);
        }
    }

    // Minimalize by leading-term divisibility within each component, then
    // sort components ascending with leading monomials lex-descending so
    // the next stage drops the earliest remaining variable.
    let mut with_leads: Vec<(Monomial, usize, ModVec)> = syzygies
        .into_iter()
        .map(|t| {
            let (m, c, _) = t.lead(&next).unwrap();
            (m, c, t)
        })
        .collect();
    with_leads.sort_by(|(ma, ca, _), (mb, cb, _)| {
        ca.cmp(cb)
            .then_with(|| lex_cmp(mb, ma))
            .then_with(|| module.ring_order().cmp(mb, ma))
    });
    let mut kept: Vec<(Monomial, usize, ModVec)> = Vec::new();
    'cand: for (m, c, t) in with_leads {
        for (km, kc, _) in &kept {
            if kc == &c && km.divides(&m) {
                continue 'cand;
            }
        }
        kept.push((m, c, t));
    }
    (next, kept.into_iter().map(|(_, _, t)| t).collect())
}

/// Gröbner basis of a submodule from arbitrary generators. No pair criteria
/// are applied: the product criterion is not valid for modules.
pub fn module_buchberger(module: &FreeModule, gens: &[ModVec]) -> Vec<ModVec> {
    let mut basis: Vec<ModVec> = Vec::new();
    for g in gens {
        if let Some((_, _, coef)) = g.lead(module) {
            basis.push(g.scale(&coef.inv()));
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    let one = FieldElem::one(module.prime());
    while let Some((i, j)) = pairs.pop() {
        let (mi, ci, _) = basis[i].lead(module).unwrap();
        let (mj, cj, _) = basis[j].lead(module).unwrap();
        if ci != cj {
            continue;
        }
        let lcm = mi.lcm(&mj);
        let s = basis[i]
            .mul_term(&mi.quotient_into(&lcm), &one)
            .sub(&basis[j].mul_term(&mj.quotient_into(&lcm), &one));
        let (_, rem) = div_rem(&s, &basis, module);
        if !rem.is_zero() {
            let (_, _, coef) = rem.lead(module).unwrap();
            let new_idx = basis.len();
            basis.push(rem.scale(&coef.inv()));
            for k in 0..new_idx {
                pairs.push((k, new_idx));
            }
        }
    }
    basis
}

/// Express `v` as an R-combination of `gens` inside `module`, if possible.
///
/// Works by Gröbner elimination on the graph module `⟨(g_l, ε_l)⟩`: the
/// normal form of `(v, 0)` has zero value block exactly when `v` lies in the
/// submodule, and its tail block carries the negated quotients.
pub fn lift(v: &ModVec, gens: &[ModVec], module: &FreeModule) -> Option<Vec<Polynomial>> {
    let rank = module.rank();
    let prime = module.prime();
    let ring_order = module.ring_order();
    let mut ext_shifts = module.shifts().to_vec();
    for g in gens {
        let d = g
            .homogeneous_degree(module)
            .expect("lift generators must be nonzero and homogeneous");
        ext_shifts.push(d);
    }
    let ext = FreeModule::with_elim(prime, ring_order, ext_shifts, rank);
    let ext_gens: Vec<ModVec> = gens
        .iter()
        .enumerate()
        .map(|(l, g)| {
            let mut comps: Vec<(usize, Polynomial)> =
                g.iter().map(|(c, p)| (c, p.clone())).collect();
            comps.push((rank + l, Polynomial::constant(1, prime, ring_order)));
            ModVec::from_sparse(comps)
        })
        .collect();
    let gb = module_buchberger(&ext, &ext_gens);
    let (_, rem) = div_rem(v, &gb, &ext);
    let mut quotients = vec![Polynomial::zero(prime, ring_order); gens.len()];
    for (c, p) in rem.iter() {
        if c < rank {
            return None;
        }
        quotients[c - rank] = p.neg();
    }
    Some(quotients)
}
