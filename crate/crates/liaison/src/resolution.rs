//! Graded free resolutions via iterated syzygies, minimalization by unit
//! cancellation, Betti diagrams, and Hilbert numerators/degrees.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::freemod::{schreyer_syzygies, FreeModule, ModVec};
use crate::groebner::Ideal;
use crate::ring::{lex_cmp, Monomial, Polynomial};

/// A homogeneous map between graded free modules, stored row-major.
///
/// Entry `(r, c)` is zero or homogeneous of degree
/// `src_shifts[c] - tgt_shifts[r] ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
    src_shifts: Vec<i64>,
    tgt_shifts: Vec<i64>,
}

impl GradedMap {
    pub fn new(
        entries: Vec<Polynomial>,
        src_shifts: Vec<i64>,
        tgt_shifts: Vec<i64>,
    ) -> Result<GradedMap> {
        let rows = tgt_shifts.len();
        let cols = src_shifts.len();
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                detail: format!("{} entries for a {rows}x{cols} map", entries.len()),
            });
        }
        let map = GradedMap { rows, cols, entries, src_shifts, tgt_shifts };
        for r in 0..rows {
            for c in 0..cols {
                let e = map.entry(r, c);
                if e.is_zero() {
                    continue;
                }
                let want = map.src_shifts[c] - map.tgt_shifts[r];
                if !e.is_homogeneous() || i64::from(e.degree().unwrap()) != want {
                    return Err(Error::LengthMismatch {
                        detail: format!(
                            "entry ({r},{c}) has degree {:?}, expected {want}",
                            e.degree()
                        ),
                    });
                }
            }
        }
        Ok(map)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn src_shifts(&self) -> &[i64] {
        &self.src_shifts
    }

    pub fn tgt_shifts(&self) -> &[i64] {
        &self.tgt_shifts
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(self.cols, other.rows, "composition shape mismatch");
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc: Option<Polynomial> = None;
                for k in 0..self.cols {
                    let a = self.entry(r, k);
                    let b = other.entry(k, c);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b).expect("same ring");
                    acc = Some(match acc {
                        None => prod,
                        Some(s) => s.add(&prod),
                    });
                }
                entries.push(acc.unwrap_or_else(|| {
                    let probe = &self.entries.first();
                    match probe {
                        Some(p) => Polynomial::zero(p.prime(), p.order()),
                        None => {
                            let p = &other.entries[0];
                            Polynomial::zero(p.prime(), p.order())
                        }
                    }
                }));
            }
        }
        GradedMap {
            rows: self.rows,
            cols: other.cols,
            entries,
            src_shifts: other.src_shifts.clone(),
            tgt_shifts: self.tgt_shifts.clone(),
        }
    }

    /// Dual transposed map, twisted by `-alpha`: if `self: F → G`, the result
    /// is `G^∨(-α) → F^∨(-α)` with shift `s ↦ α - s` on both sides.
    pub fn dual_twist(&self, alpha: i64) -> GradedMap {
        let mut entries = Vec::with_capacity(self.entries.len());
        for r in 0..self.cols {
            for c in 0..self.rows {
                entries.push(self.entry(c, r).clone());
            }
        }
        GradedMap {
            rows: self.cols,
            cols: self.rows,
            entries,
            src_shifts: self.tgt_shifts.iter().map(|s| alpha - s).collect(),
            tgt_shifts: self.src_shifts.iter().map(|s| alpha - s).collect(),
        }
    }

    /// Negate every entry.
    pub fn negated(&self) -> GradedMap {
        GradedMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.neg()).collect(),
            src_shifts: self.src_shifts.clone(),
            tgt_shifts: self.tgt_shifts.clone(),
        }
    }
}

/// A chained complex of graded free modules `R ← F_1 ← F_2 ← …` resolving a
/// cyclic module; `maps[k]` is the differential `F_{k+1} → F_k` with
/// `F_0 = ⊕ R(-s)` given by `f0_shifts` (a single shift 0 in normal use).
#[derive(Debug, Clone)]
pub struct Resolution {
    f0_shifts: Vec<i64>,
    maps: Vec<GradedMap>,
    minimal: bool,
}

impl Resolution {
    pub fn new(f0_shifts: Vec<i64>, maps: Vec<GradedMap>, minimal: bool) -> Result<Resolution> {
        let res = Resolution { f0_shifts, maps, minimal };
        res.validate()?;
        Ok(res)
    }

    fn validate(&self) -> Result<()> {
        let mut tgt: &[i64] = &self.f0_shifts;
        for (k, m) in self.maps.iter().enumerate() {
            if m.tgt_shifts() != tgt {
                return Err(Error::LengthMismatch {
                    detail: format!("map {k} target shifts do not chain"),
                });
            }
            tgt = m.src_shifts();
        }
        for k in 0..self.maps.len().saturating_sub(1) {
            if !self.maps[k].compose(&self.maps[k + 1]).is_zero() {
                return Err(Error::LengthMismatch {
                    detail: format!("composition of maps {k} and {} is nonzero", k + 1),
                });
            }
        }
        Ok(())
    }

    /// Number of maps (homological length).
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[GradedMap] {
        &self.maps
    }

    pub fn is_minimal_flagged(&self) -> bool {
        self.minimal
    }

    /// Shifts of `F_i`.
    pub fn module_shifts(&self, i: usize) -> &[i64] {
        if i == 0 {
            &self.f0_shifts
        } else {
            self.maps[i - 1].src_shifts()
        }
    }

    /// Every consecutive composite is zero.
    pub fn is_complex(&self) -> bool {
        (0..self.maps.len().saturating_sub(1))
            .all(|k| self.maps[k].compose(&self.maps[k + 1]).is_zero())
    }

    /// `Σ (-1)^i rank F_i`.
    pub fn alternating_rank_sum(&self) -> i64 {
        let mut sum = self.f0_shifts.len() as i64;
        for (k, m) in self.maps.iter().enumerate() {
            let sign = if k % 2 == 0 { -1 } else { 1 };
            sum += sign * m.src_shifts().len() as i64;
        }
        sum
    }

    /// No differential entry is a nonzero constant.
    pub fn has_no_unit_entries(&self) -> bool {
        self.maps.iter().all(|m| {
            (0..m.rows()).all(|r| (0..m.cols()).all(|c| !m.entry(r, c).is_unit()))
        })
    }
}

/// Free resolution of `R/I` by iterated Schreyer syzygies on Gröbner bases
/// of the successive kernels. The output is a valid resolution but usually
/// not minimal; pass it through [`minimalize`].
///
/// At each stage the basis is sorted with leading monomials lexicographically
/// descending within each component, which makes every stage drop the
/// earliest remaining variable, so at most `nvars + 1` maps are produced.
pub fn free_resolution(ideal: &Ideal) -> Resolution {
    let gb = ideal.gb();
    if gb.is_empty() {
        return Resolution { f0_shifts: vec![0], maps: Vec::new(), minimal: true };
    }
    let mut sorted: Vec<Polynomial> = gb.to_vec();
    sorted.sort_by(|a, b| {
        lex_cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
    });

    let mut module = FreeModule::base_ring(ideal.prime(), ideal.order());
    let mut gens: Vec<ModVec> = sorted
        .into_iter()
        .map(|g| ModVec::from_dense(vec![g]))
        .collect();

    let zero = Polynomial::zero(ideal.prime(), ideal.order());
    let mut maps = Vec::new();
    loop {
        let src_shifts: Vec<i64> = gens
            .iter()
            .map(|g| g.homogeneous_degree(&module).expect("homogeneous generator"))
            .collect();
        let mut entries = Vec::with_capacity(module.rank() * gens.len());
        for r in 0..module.rank() {
            for g in &gens {
                entries.push(g.comp(r).cloned().unwrap_or_else(|| zero.clone()));
            }
        }
        maps.push(
            GradedMap::new(entries, src_shifts, module.shifts().to_vec())
                .expect("syzygy stage is graded"),
        );
        let (next, syz) = schreyer_syzygies(&module, &gens);
        if syz.is_empty() {
            break;
        }
        assert!(
            maps.len() <= ideal.nvars() + 1,
            "syzygy tower failed to terminate"
        );
        module = next;
        gens = syz;
    }
    Resolution { f0_shifts: vec![0], maps, minimal: false }
}

/// Minimalize a resolution by cancelling unit entries one at a time,
/// scanning maps in ascending index and entries row-major. Yields the
/// minimal resolution of the same module; the Betti diagram of the output
/// is entrywise ≤ that of the input.
pub fn minimalize(res: &Resolution) -> Resolution {
    let mut f0 = res.f0_shifts.clone();
    let mut maps = res.maps.clone();

    'scan: loop {
        for k in 0..maps.len() {
            for r in 0..maps[k].rows {
                for c in 0..maps[k].cols {
                    if maps[k].entry(r, c).is_unit() {
                        cancel_pair(&mut maps, &mut f0, k, r, c);
                        continue 'scan;
                    }
                }
            }
        }
        break;
    }
    while maps.last().is_some_and(|m| m.cols() == 0) {
        maps.pop();
    }
    let out = Resolution { f0_shifts: f0, maps, minimal: true };
    debug_assert!(out.is_complex());
    out
}

fn cancel_pair(maps: &mut [GradedMap], f0: &mut Vec<i64>, k: usize, r: usize, c: usize) {
    let u = maps[k].entry(r, c).leading_coef().unwrap();
    let u_inv = u.inv();

    // Clear row r: column operations on F_{k+1}, mirrored as row operations
    // on the next differential.
    for c2 in 0..maps[k].cols {
        if c2 == c || maps[k].entry(r, c2).is_zero() {
            continue;
        }
        let lambda = maps[k].entry(r, c2).scale(&u_inv);
        for r2 in 0..maps[k].rows {
            let delta = maps[k].entry(r2, c).mul(&lambda).expect("same ring");
            let idx = r2 * maps[k].cols + c2;
            maps[k].entries[idx] = maps[k].entries[idx].sub(&delta);
        }
        if k + 1 < maps.len() {
            for j in 0..maps[k + 1].cols {
                let delta = maps[k + 1].entry(c2, j).mul(&lambda).expect("same ring");
                let idx = c * maps[k + 1].cols + j;
                maps[k + 1].entries[idx] = maps[k + 1].entries[idx].add(&delta);
            }
        }
    }

    // Clear column c: row operations on F_k, mirrored as column operations
    // on the previous differential.
    for r2 in 0..maps[k].rows {
        if r2 == r || maps[k].entry(r2, c).is_zero() {
            continue;
        }
        let mu = maps[k].entry(r2, c).scale(&u_inv);
        let idx = r2 * maps[k].cols + c;
        let zero = Polynomial::zero(mu.prime(), mu.order());
        maps[k].entries[idx] = zero;
        if k > 0 {
            for i in 0..maps[k - 1].rows {
                let delta = maps[k - 1].entry(i, r2).mul(&mu).expect("same ring");
                let idx = i * maps[k - 1].cols + r;
                maps[k - 1].entries[idx] = maps[k - 1].entries[idx].add(&delta);
            }
        }
    }

    // Delete basis element c of F_{k+1} and r of F_k.
    delete_col(&mut maps[k], c);
    delete_row(&mut maps[k], r);
    if k + 1 < maps.len() {
        debug_assert!(
            (0..maps[k + 1].cols).all(|j| maps[k + 1].entry(c, j).is_zero()),
            "cancelled row must already be zero"
        );
        delete_row(&mut maps[k + 1], c);
    }
    if k > 0 {
        let prev = k - 1;
        debug_assert!(
            (0..maps[prev].rows).all(|i| maps[prev].entry(i, r).is_zero()),
            "cancelled column must already be zero"
        );
        delete_col(&mut maps[prev], r);
    } else {
        f0.remove(r);
    }
}

fn delete_row(m: &mut GradedMap, r: usize) {
    let cols = m.cols;
    m.entries.drain(r * cols..(r + 1) * cols);
    m.tgt_shifts.remove(r);
    m.rows -= 1;
}

fn delete_col(m: &mut GradedMap, c: usize) {
    let cols = m.cols;
    let mut out = Vec::with_capacity(m.entries.len() - m.rows);
    for (i, e) in m.entries.drain(..).enumerate() {
        if i % cols != c {
            out.push(e);
        }
    }
    m.entries = out;
    m.src_shifts.remove(c);
    m.cols -= 1;
}

/// Finitely supported rank table over (homological index, internal degree).
#[derive(Debug, Clone, Default)]
pub struct BettiDiagram {
    entries: BTreeMap<(usize, i64), u64>,
    codim: Option<usize>,
}

impl PartialEq for BettiDiagram {
    /// Diagrams compare by their rank tables; an attached codimension is
    /// bookkeeping, not data.
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for BettiDiagram {}

impl BettiDiagram {
    pub fn new() -> BettiDiagram {
        BettiDiagram::default()
    }

    pub fn add(&mut self, i: usize, j: i64, count: u64) {
        if count > 0 {
            *self.entries.entry((i, j)).or_insert(0) += count;
        }
    }

    pub fn entry(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest homological index with an entry.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    pub fn column_total(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((ii, _), _)| *ii == i)
            .map(|(_, c)| c)
            .sum()
    }

    pub fn column_totals(&self) -> Vec<u64> {
        (0..=self.length()).map(|i| self.column_total(i)).collect()
    }

    pub fn min_shift(&self, i: usize) -> Option<i64> {
        self.entries
            .keys()
            .filter(|(ii, _)| *ii == i)
            .map(|(_, j)| *j)
            .min()
    }

    pub fn max_shift(&self, i: usize) -> Option<i64> {
        self.entries
            .keys()
            .filter(|(ii, _)| *ii == i)
            .map(|(_, j)| *j)
            .max()
    }

    /// `(m_1..m_p, M_1..M_p)`: per-step minimum and maximum shifts.
    pub fn min_max(&self, p: usize) -> Result<(Vec<i64>, Vec<i64>)> {
        let mut mins = Vec::with_capacity(p);
        let mut maxs = Vec::with_capacity(p);
        for i in 1..=p {
            match (self.min_shift(i), self.max_shift(i)) {
                (Some(a), Some(b)) => {
                    mins.push(a);
                    maxs.push(b);
                }
                _ => return Err(Error::EmptyColumn { column: i }),
            }
        }
        Ok((mins, maxs))
    }

    pub fn set_codim(&mut self, p: usize) {
        self.codim = Some(p);
    }

    pub fn codim(&self) -> Option<usize> {
        self.codim
    }

    /// Entrywise `self ≤ other`.
    pub fn dominated_by(&self, other: &BettiDiagram) -> bool {
        self.entries
            .iter()
            .all(|(&(i, j), &c)| other.entry(i, j) >= c)
    }
}

/// Betti diagram of a resolution: entry `(i, j)` counts shifts `-j` in `F_i`.
pub fn betti(res: &Resolution) -> BettiDiagram {
    let mut d = BettiDiagram::new();
    for i in 0..=res.length() {
        for s in res.module_shifts(i) {
            d.add(i, *s, 1);
        }
    }
    d
}

/// Rank over GF(p) of a dense matrix given as rows.
fn gf_rank(rows: &mut Vec<Vec<u64>>, prime: u64) -> u64 {
    let p = prime as u128;
    let mut rank = 0u64;
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivot_rows: Vec<(usize, Vec<u64>)> = Vec::new();
    for row in rows.drain(..) {
        let mut row = row;
        for (col, pr) in &pivot_rows {
            let factor = row[*col] as u128;
            if factor == 0 {
                continue;
            }
            for (x, y) in row.iter_mut().zip(pr) {
                let sub = factor * (*y as u128) % p;
                *x = ((*x as u128 + p - sub) % p) as u64;
            }
        }
        if let Some(lead) = (0..width).find(|c| row[*c] != 0) {
            let inv = crate::ring::FieldElem::new(row[lead] as i64, prime)
                .inv()
                .value() as u128;
            for x in row.iter_mut() {
                *x = ((*x as u128) * inv % p) as u64;
            }
            pivot_rows.push((lead, row));
            rank += 1;
        }
    }
    rank
}

/// Minimal Betti diagram of the resolved module, computed from any (even
/// very nonminimal) resolution without transforming its matrices: tensoring
/// with the residue field leaves only the degree-zero entries, and the
/// homology of that strand in each internal degree is `Tor_i(M, K)_j`, so
/// `β_min(i,j) = β(i,j) − rank c_i(j) − rank c_{i+1}(j)` with `c_i(j)` the
/// constant block of the i-th differential between shift-j summands.
pub fn minimal_betti(res: &Resolution) -> BettiDiagram {
    let raw = betti(res);
    let prime = res
        .maps
        .iter()
        .flat_map(|m| m.entries.iter())
        .find(|e| !e.is_zero())
        .map(|e| e.prime());
    let Some(prime) = prime else {
        return raw;
    };
    // rank of the constant block of map k (F_{k+1} → F_k) at shift j.
    let mut const_rank: Vec<std::collections::BTreeMap<i64, u64>> = Vec::new();
    for m in &res.maps {
        let mut by_shift: std::collections::BTreeMap<i64, u64> = Default::default();
        let shifts: std::collections::BTreeSet<i64> =
            m.src_shifts.iter().copied().collect();
        for j in shifts {
            let rows_idx: Vec<usize> = (0..m.rows())
                .filter(|r| m.tgt_shifts[*r] == j)
                .collect();
            let cols_idx: Vec<usize> = (0..m.cols())
                .filter(|c| m.src_shifts[*c] == j)
                .collect();
            if rows_idx.is_empty() || cols_idx.is_empty() {
                continue;
            }
            let mut rows: Vec<Vec<u64>> = cols_idx
                .iter()
                .map(|c| {
                    rows_idx
                        .iter()
                        .map(|r| {
                            let e = m.entry(*r, *c);
                            if e.degree() == Some(0) {
                                e.leading_coef().unwrap().value()
                            } else {
                                0
                            }
                        })
                        .collect()
                })
                .collect();
            let rank = gf_rank(&mut rows, prime);
            if rank > 0 {
                by_shift.insert(j, rank);
            }
        }
        const_rank.push(by_shift);
    }
    let mut out = BettiDiagram::new();
    for (i, j, c) in raw.entries() {
        let above = if i > 0 {
            const_rank[i - 1].get(&j).copied().unwrap_or(0)
        } else {
            0
        };
        let below = const_rank
            .get(i)
            .and_then(|m| m.get(&j).copied())
            .unwrap_or(0);
        let reduced = c as i64 - above as i64 - below as i64;
        assert!(reduced >= 0, "constant-strand ranks exceed Betti number");
        out.add(i, j, reduced as u64);
    }
    out
}

/// Hilbert series numerator (over `(1-t)^nvars`), quotient dimension and
/// multiplicity of a homogeneous ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    /// Dense coefficients of the numerator polynomial in t.
    pub numerator: Vec<i64>,
    /// Krull dimension of R/I.
    pub dimension: usize,
    /// Multiplicity; 0 for the unit ideal (flagged).
    pub degree: u64,
    /// Set when I = R, where degree 0 is a convention rather than a count.
    pub unit_ideal: bool,
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn add_scaled(a: &mut Vec<i64>, b: &[i64], shift: usize, scale: i64) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, coef) in b.iter().enumerate() {
        a[k + shift] += scale * coef;
    }
}

fn monomial_gcd(a: &Monomial, b: &Monomial) -> Monomial {
    Monomial::new(
        a.exps()
            .iter()
            .zip(b.exps())
            .map(|(x, y)| *x.min(y))
            .collect(),
    )
}

fn minimalize_monomials(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.exps().cmp(b.exps())));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    'outer: for g in gens {
        for k in &kept {
            if k.divides(&g) {
                continue 'outer;
            }
        }
        kept.push(g);
    }
    kept
}

/// Hilbert series numerator of `R/(monomial ideal)` by the standard pivot
/// recursion `N(I + m) = N(I) - t^{deg m} · N(I : m)`.
pub fn hilbert_numerator_from_monomials(gens: &[Monomial]) -> Vec<i64> {
    let gens = minimalize_monomials(gens.to_vec());
    if gens.is_empty() {
        return vec![1];
    }
    if gens.len() == 1 {
        let mut n = vec![0i64; gens[0].degree() as usize + 1];
        n[0] = 1;
        *n.last_mut().unwrap() -= 1;
        return trim(n);
    }
    let (last, rest) = gens.split_last().unwrap();
    let n_rest = hilbert_numerator_from_monomials(rest);
    let colon: Vec<Monomial> = rest
        .iter()
        .map(|g| monomial_gcd(g, last).quotient_into(g))
        .collect();
    let n_colon = hilbert_numerator_from_monomials(&colon);
    let mut out = n_rest;
    add_scaled(&mut out, &n_colon, last.degree() as usize, -1);
    trim(out)
}

/// Hilbert numerator as the alternating shift sum of any (possibly
/// nonminimal) free resolution: `Σ_i (-1)^i Σ_j t^{d_{i,j}}`.
pub fn hilbert_numerator_from_diagram(d: &BettiDiagram) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    for (i, j, count) in d.entries() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        assert!(j >= 0, "negative internal degree in resolution");
        add_scaled(&mut out, &[sign * count as i64], j as usize, 1);
    }
    trim(out)
}

/// Minimal Betti numbers computed as Koszul homology, independently of any
/// syzygy computation: `β_{i,j} = dim H_i(K_• ⊗ R/I)_j` for the Koszul
/// complex `K_•` on the variables, evaluated by exact linear algebra on
/// normal-form multiplication tables. Internal degrees are scanned up to
/// `jmax`; pair with a Hilbert-numerator consistency check when the window
/// matters.
pub fn tor_betti(ideal: &Ideal, jmax: i64) -> BettiDiagram {
    let nv = ideal.nvars();
    let prime = ideal.prime();
    let order = ideal.order();
    let lts: Vec<Monomial> = ideal
        .gb()
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .collect();
    let emax = jmax.max(0) as u32;

    // Per degree: all monomials (descending), standard-monomial indices, and
    // the normal-form table monomial → coefficient vector over the standard
    // basis, filled in descending order so every reference is already known.
    let mut std_count: Vec<usize> = Vec::new();
    let mut std_index: Vec<std::collections::HashMap<Monomial, usize>> = Vec::new();
    let mut nf_table: Vec<std::collections::HashMap<Monomial, Vec<u64>>> = Vec::new();
    let gb = ideal.gb();
    for e in 0..=emax {
        // Ascending order: each reduction references strictly smaller
        // monomials of the same degree, which are then already tabulated.
        let mut monos = crate::ring::monomials_of_degree(nv, e);
        monos.sort_by(|a, b| order.cmp(a, b));
        let mut index = std::collections::HashMap::new();
        for m in &monos {
            if !lts.iter().any(|lt| lt.divides(m)) {
                let k = index.len();
                index.insert(m.clone(), k);
            }
        }
        let dim = index.len();
        let mut table: std::collections::HashMap<Monomial, Vec<u64>> =
            std::collections::HashMap::new();
        for m in &monos {
            let mut vec = vec![0u64; dim];
            if let Some(k) = index.get(m) {
                vec[*k] = 1;
            } else {
                let g = gb
                    .iter()
                    .find(|g| g.leading_monomial().unwrap().divides(m))
                    .expect("non-standard monomial has a divisor");
                let u = g.leading_monomial().unwrap().quotient_into(m);
                // m = u·lt(g) ⇒ NF(m) = −Σ tail coefficients · NF(u·m').
                let p = prime as u128;
                for (tm, tc) in g.terms().iter().skip(1) {
                    let shifted = u.mul(tm);
                    let known = &table[&shifted];
                    let c = tc.neg().value() as u128;
                    for (x, y) in vec.iter_mut().zip(known) {
                        *x = ((*x as u128 + c * (*y as u128)) % p) as u64;
                    }
                }
            }
            table.insert(m.clone(), vec);
        }
        std_count.push(dim);
        std_index.push(index);
        nf_table.push(table);
    }

    // Standard monomials in index order, per degree.
    let std_monos: Vec<Vec<Monomial>> = std_index
        .iter()
        .map(|index| {
            let mut v: Vec<(usize, Monomial)> =
                index.iter().map(|(m, k)| (*k, m.clone())).collect();
            v.sort_by_key(|(k, _)| *k);
            v.into_iter().map(|(_, m)| m).collect()
        })
        .collect();

    let subsets: Vec<Vec<Vec<usize>>> = (0..=nv)
        .map(|k| subsets_lex(nv, k))
        .collect();

    // rank of the Koszul differential ∧^i V ⊗ (R/I)_{j-i} → ∧^{i-1} V ⊗ (R/I)_{j-i+1}.
    let rank_cell = |i: usize, j: i64| -> u64 {
        if i == 0 || i > nv {
            return 0;
        }
        let e = j - i as i64;
        if e < 0 || e + 1 > emax as i64 {
            return 0;
        }
        let e = e as usize;
        let dim_src = std_count[e];
        let dim_tgt = std_count[e + 1];
        if dim_src == 0 || dim_tgt == 0 {
            return 0;
        }
        let tgt_sets = &subsets[i - 1];
        let width = tgt_sets.len() * dim_tgt;
        let set_pos: std::collections::HashMap<&[usize], usize> = tgt_sets
            .iter()
            .enumerate()
            .map(|(k, s)| (s.as_slice(), k))
            .collect();
        let mut columns: Vec<Vec<u64>> = Vec::with_capacity(subsets[i].len() * dim_src);
        let p = prime as u128;
        for s in &subsets[i] {
            for m in &std_monos[e] {
                let mut col = vec![0u64; width];
                for (pos, var) in s.iter().enumerate() {
                    let mut face = s.clone();
                    face.remove(pos);
                    let block = set_pos[face.as_slice()];
                    let shifted = m.mul(&Monomial::var_pow(nv, *var, 1));
                    let nf = &nf_table[e + 1][&shifted];
                    let negate = pos % 2 == 1;
                    for (k, c) in nf.iter().enumerate() {
                        if *c == 0 {
                            continue;
                        }
                        let v = if negate { prime - c } else { *c };
                        let slot = &mut col[block * dim_tgt + k];
                        *slot = ((*slot as u128 + v as u128) % p) as u64;
                    }
                }
                columns.push(col);
            }
        }
        gf_rank(&mut columns, prime)
    };

    let mut out = BettiDiagram::new();
    for i in 0..=nv {
        for j in 0..=jmax {
            let e = j - i as i64;
            if e < 0 || e > emax as i64 {
                continue;
            }
            let dim = subsets[i].len() as u64 * std_count[e as usize] as u64;
            if dim == 0 {
                continue;
            }
            let r_in = rank_cell(i, j);
            let r_out = if i < nv { rank_cell(i + 1, j) } else { 0 };
            let h = dim as i64 - r_in as i64 - r_out as i64;
            assert!(h >= 0, "Koszul homology dimension went negative");
            out.add(i, j, h as u64);
        }
    }
    out
}

fn subsets_lex(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if cur[i] != i + n - k {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return out;
        }
    }
}

fn divide_by_one_minus_t(num: &[i64]) -> Option<Vec<i64>> {
    // N(t) = (1 - t) Q(t) requires N(1) = 0; synthetic division.
    if num.iter().sum::<i64>() != 0 {
        return None;
    }
    let mut q = vec![0i64; num.len().saturating_sub(1)];
    let mut carry = 0i64;
    for k in 0..q.len() {
        q[k] = num[k] + carry;
        carry = q[k];
    }
    Some(trim(q))
}

/// Evaluate numerator data into dimension and multiplicity.
pub fn hilbert_degree(ideal: &Ideal) -> HilbertData {
    let lts: Vec<Monomial> = ideal
        .gb()
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .collect();
    let numerator = hilbert_numerator_from_monomials(&lts);
    let codim = ideal.codim();
    let unit_ideal = ideal.is_unit();
    let mut k = numerator.clone();
    for _ in 0..codim {
        k = divide_by_one_minus_t(&k)
            .expect("numerator must vanish at t=1 exactly codim times");
    }
    let value: i64 = k.iter().sum();
    assert!(value >= 0, "multiplicity must be nonnegative");
    HilbertData {
        numerator,
        dimension: ideal.nvars() - codim,
        degree: value as u64,
        unit_ideal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldElem, MonomialOrder, DEFAULT_PRIME};

    fn grev(n: usize) -> MonomialOrder {
        MonomialOrder::grevlex(n)
    }

    fn mono(exps: &[u32], p: u64, ord: MonomialOrder) -> Polynomial {
        Polynomial::from_terms(
            vec![(Monomial::new(exps.to_vec()), FieldElem::one(p))],
            p,
            ord,
        )
    }

    fn diagram(entries: &[(usize, i64, u64)]) -> BettiDiagram {
        let mut d = BettiDiagram::new();
        for (i, j, c) in entries {
            d.add(*i, *j, *c);
        }
        d
    }

    #[test]
    fn koszul_on_two_linear_forms() {
        // I = (x, y): 0 → R(-2) → R(-1)^2 → R
        let p = DEFAULT_PRIME;
        let ord = grev(2);
        let ideal = Ideal::new(p, ord, vec![mono(&[1, 0], p, ord), mono(&[0, 1], p, ord)])
            .unwrap();
        let res = free_resolution(&ideal);
        assert!(res.is_complex());
        let d = betti(&res);
        assert_eq!(
            d,
            diagram(&[(0, 0, 1), (1, 1, 2), (2, 2, 1)])
        );
    }

    #[test]
    fn koszul_shifts_for_regular_sequence() {
        // (x^2, y^2, z^6) in 4 vars: shifts {2,2,6}, {4,8,8}, {10}.
        let p = DEFAULT_PRIME;
        let ord = grev(4);
        let ideal = Ideal::new(
            p,
            ord,
            vec![
                mono(&[2, 0, 0, 0], p, ord),
                mono(&[0, 2, 0, 0], p, ord),
                mono(&[0, 0, 6, 0], p, ord),
            ],
        )
        .unwrap();
        let res = minimalize(&free_resolution(&ideal));
        let d = betti(&res);
        assert_eq!(
            d,
            diagram(&[
                (0, 0, 1),
                (1, 2, 2),
                (1, 6, 1),
                (2, 4, 1),
                (2, 8, 2),
                (3, 10, 1)
            ])
        );
        assert_eq!(res.alternating_rank_sum(), 0);
    }

    #[test]
    fn zero_ideal_resolution() {
        let p = DEFAULT_PRIME;
        let ord = grev(2);
        let ideal = Ideal::zero(p, ord);
        let res = free_resolution(&ideal);
        assert_eq!(res.length(), 0);
        assert_eq!(betti(&res), diagram(&[(0, 0, 1)]));
    }

    #[test]
    fn minimalize_is_fixpoint_on_minimal_input() {
        let p = DEFAULT_PRIME;
        let ord = grev(3);
        let ideal = Ideal::new(
            p,
            ord,
            vec![mono(&[1, 0, 0], p, ord), mono(&[0, 2, 0], p, ord)],
        )
        .unwrap();
        let min = minimalize(&free_resolution(&ideal));
        let again = minimalize(&min);
        assert_eq!(betti(&min), betti(&again));
        assert!(min.has_no_unit_entries());
    }

    #[test]
    fn minimalize_cancels_artificial_identity_pair() {
        // Append R(-d) = R(-d) to a Koszul complex and watch it vanish.
        let p = DEFAULT_PRIME;
        let ord = grev(2);
        let ideal = Ideal::new(p, ord, vec![mono(&[1, 0], p, ord), mono(&[0, 1], p, ord)])
            .unwrap();
        let res = free_resolution(&ideal);
        // res: R ← R(-1)^2 ← R(-2). Extend F_1 by a redundant pair:
        // F_1' = R(-1)^2 ⊕ R(-5), F_2' = R(-2) ⊕ R(-5), identity on the tail.
        let d1 = &res.maps()[0];
        let d2 = &res.maps()[1];
        let zero = Polynomial::zero(p, ord);
        let one = Polynomial::constant(1, p, ord);
        let d1x = GradedMap::new(
            vec![
                d1.entry(0, 0).clone(),
                d1.entry(0, 1).clone(),
                zero.clone(),
            ],
            vec![1, 1, 5],
            vec![0],
        )
        .unwrap();
        let d2x = GradedMap::new(
            vec![
                d2.entry(0, 0).clone(),
                zero.clone(),
                d2.entry(1, 0).clone(),
                zero.clone(),
                zero.clone(),
                one,
            ],
            vec![2, 5],
            vec![1, 1, 5],
        )
        .unwrap();
        let padded = Resolution::new(vec![0], vec![d1x, d2x], false).unwrap();
        let min = minimalize(&padded);
        assert_eq!(
            betti(&min),
            diagram(&[(0, 0, 1), (1, 1, 2), (2, 2, 1)])
        );
    }

    #[test]
    fn hilbert_routes_agree_and_degrees_match() {
        let p = DEFAULT_PRIME;
        let ord = grev(4);
        // CI(2,2,6): degree 24 = 2*2*6.
        let ci = Ideal::new(
            p,
            ord,
            vec![
                mono(&[2, 0, 0, 0], p, ord),
                mono(&[0, 2, 0, 0], p, ord),
                mono(&[0, 0, 6, 0], p, ord),
            ],
        )
        .unwrap();
        let h = hilbert_degree(&ci);
        assert_eq!(h.degree, 24);
        assert_eq!(h.dimension, 1);
        let res = free_resolution(&ci);
        assert_eq!(h.numerator, hilbert_numerator_from_diagram(&betti(&res)));

        // I_Y of the linked pair: degree 18.
        let iy = Ideal::new(
            p,
            ord,
            vec![
                mono(&[2, 0, 0, 0], p, ord),
                mono(&[0, 2, 0, 0], p, ord),
                mono(&[0, 0, 6, 0], p, ord),
                mono(&[1, 1, 0, 0], p, ord),
            ],
        )
        .unwrap();
        assert_eq!(hilbert_degree(&iy).degree, 18);
        let res = free_resolution(&iy);
        assert_eq!(
            hilbert_degree(&iy).numerator,
            hilbert_numerator_from_diagram(&betti(&res))
        );

        // The non-Cohen-Macaulay example (x^2, xy): degree 1.
        let ord2 = grev(2);
        let non_cm = Ideal::new(
            p,
            ord2,
            vec![mono(&[2, 0], p, ord2), mono(&[1, 1], p, ord2)],
        )
        .unwrap();
        assert_eq!(hilbert_degree(&non_cm).degree, 1);
    }

    #[test]
    fn unit_ideal_degree_zero_flagged() {
        let p = DEFAULT_PRIME;
        let ord = grev(2);
        let unit = Ideal::new(p, ord, vec![Polynomial::constant(1, p, ord)]).unwrap();
        let h = hilbert_degree(&unit);
        assert_eq!(h.degree, 0);
        assert!(h.unit_ideal);
    }

    #[test]
    fn example_2_2_minimal_betti() {
        // Minimal resolution of (x^2, y^2, z^6, xy): columns 1,4,5,2.
        let p = DEFAULT_PRIME;
        let ord = grev(4);
        let iy = Ideal::new(
            p,
            ord,
            vec![
                mono(&[2, 0, 0, 0], p, ord),
                mono(&[0, 2, 0, 0], p, ord),
                mono(&[0, 0, 6, 0], p, ord),
                mono(&[1, 1, 0, 0], p, ord),
            ],
        )
        .unwrap();
        let res = minimalize(&free_resolution(&iy));
        let d = betti(&res);
        assert_eq!(d.column_totals(), vec![1, 4, 5, 2]);
        assert_eq!(
            d,
            diagram(&[
                (0, 0, 1),
                (1, 2, 3),
                (1, 6, 1),
                (2, 3, 2),
                (2, 8, 3),
                (3, 9, 2)
            ])
        );
        // Minimal diagrams have strictly increasing minimum shifts.
        let (m, _) = d.min_max(3).unwrap();
        assert!(m.windows(2).all(|w| w[0] < w[1]));
    }
}
