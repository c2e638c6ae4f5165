//! Linkage of zero-schemes: Koszul shift calculus, mapping-cone resolutions
//! of linked ideals, minimality detection, the collinear and three-point
//! shift profiles with their cancellation scenarios, and random realization
//! of concrete linked instances.

use crate::error::{Error, Result};
use crate::freemod::{lift, FreeModule, ModVec};
use crate::groebner::{is_regular_sequence, Ideal};
use crate::resolution::{
    free_resolution, minimalize, BettiDiagram, GradedMap, Resolution,
};
use crate::ring::{check_prime, monomials_of_degree, FieldElem, Monomial, MonomialOrder, Polynomial};
use crate::rng::Rng;

/// Type of a non-degenerate complete intersection zero-scheme in ℙⁿ:
/// degrees `d_1 ≤ … ≤ d_n`, all at least 2, with `n ≥ 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CIType {
    degrees: Vec<u32>,
}

impl CIType {
    pub fn new(degrees: Vec<u32>) -> Result<CIType> {
        if degrees.len() < 3 {
            return Err(Error::InvalidSpec(format!(
                "complete intersection type needs n ≥ 3, got n = {}",
                degrees.len()
            )));
        }
        if degrees.iter().any(|d| *d < 2) {
            return Err(Error::InvalidSpec(
                "degenerate type: all degrees must be at least 2".into(),
            ));
        }
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidSpec(
                "degrees must be sorted ascending".into(),
            ));
        }
        Ok(CIType { degrees })
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Socle bound α_X = Σ d_i.
    pub fn alpha(&self) -> u32 {
        self.degrees.iter().sum()
    }

    /// d_X = ∏ d_i (Bézout).
    pub fn degree_product(&self) -> u64 {
        self.degrees.iter().map(|d| u64::from(*d)).product()
    }
}

/// The residual scheme Z a link is taken against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Residual {
    /// Z cut by n−1 independent linear forms and one form of degree t on the
    /// remaining line; requires `1 ≤ t ≤ d_n`.
    Collinear { t: u32 },
    /// Three non-collinear points, fixed as coordinate points.
    ThreePoints,
    /// A complete intersection of type `e` inside X (`1 ≤ e_i ≤ d_i`).
    CustomCi { degrees: Vec<u32> },
}

/// Parameters of a link instance: the ambient CI type and the residual kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkSpec {
    pub ci: CIType,
    pub residual: Residual,
}

impl LinkSpec {
    pub fn collinear(ci: CIType, t: u32) -> Result<LinkSpec> {
        let dn = *ci.degrees().last().unwrap();
        if t < 1 || t > dn {
            return Err(Error::InvalidSpec(format!(
                "collinear residual degree t = {t} out of range 1..={dn}"
            )));
        }
        Ok(LinkSpec { ci, residual: Residual::Collinear { t } })
    }

    pub fn three_points(ci: CIType) -> LinkSpec {
        // n ≥ 3 is already a CIType invariant.
        LinkSpec { ci, residual: Residual::ThreePoints }
    }

    pub fn custom_ci(ci: CIType, degrees: Vec<u32>) -> Result<LinkSpec> {
        if degrees.len() != ci.n() {
            return Err(Error::InvalidSpec(
                "sub-CI type must have the same length as the ambient type".into(),
            ));
        }
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidSpec("sub-CI degrees must be sorted".into()));
        }
        for (e, d) in degrees.iter().zip(ci.degrees()) {
            if *e < 1 || e > d {
                return Err(Error::InvalidSpec(format!(
                    "sub-CI degree {e} outside 1..={d}"
                )));
            }
        }
        Ok(LinkSpec { ci, residual: Residual::CustomCi { degrees } })
    }

    /// Degree of the residual scheme Z.
    pub fn residual_degree(&self) -> u64 {
        match &self.residual {
            Residual::Collinear { t } => u64::from(*t),
            Residual::ThreePoints => 3,
            Residual::CustomCi { degrees } => {
                degrees.iter().map(|e| u64::from(*e)).product()
            }
        }
    }

    /// α_Z when Z is a complete intersection.
    pub fn alpha_z(&self) -> Option<u32> {
        match &self.residual {
            Residual::Collinear { t } => Some(self.ci.n() as u32 - 1 + t),
            Residual::ThreePoints => None,
            Residual::CustomCi { degrees } => Some(degrees.iter().sum()),
        }
    }

    /// Degree `a = α_X − α_Z` of the extra generator for CI-in-CI links.
    pub fn extra_degree(&self) -> Option<u32> {
        self.alpha_z().map(|az| self.ci.alpha() - az)
    }

    /// Degree of the linked ideal: `d_X − deg Z` (additivity of linkage).
    pub fn predicted_degree(&self) -> u64 {
        self.ci.degree_product() - self.residual_degree()
    }
}

/// Per-step minimum/maximum shifts for one cancellation scenario, together
/// with the degree the multiplicity bounds are tested against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftProfile {
    pub p: usize,
    pub min_shifts: Vec<i64>,
    pub max_shifts: Vec<i64>,
    pub degree: u64,
    pub scenario: String,
}

impl ShiftProfile {
    fn validate(&self) {
        assert_eq!(self.min_shifts.len(), self.p);
        assert_eq!(self.max_shifts.len(), self.p);
        for (m, mx) in self.min_shifts.iter().zip(&self.max_shifts) {
            assert!(m <= mx, "profile {}: m > M", self.scenario);
        }
    }

    /// Does a minimal diagram have exactly these per-column extremes?
    pub fn matches(&self, diagram: &BettiDiagram) -> bool {
        if diagram.length() != self.p {
            return false;
        }
        (1..=self.p).all(|i| {
            diagram.min_shift(i) == Some(self.min_shifts[i - 1])
                && diagram.max_shift(i) == Some(self.max_shifts[i - 1])
        })
    }
}

/// Betti diagram of the Koszul complex on forms of the given degrees:
/// entry `(i, s)` counts i-subsets of the degree list summing to s.
pub fn koszul_diagram(degrees: &[u32]) -> BettiDiagram {
    let mut d = BettiDiagram::new();
    let n = degrees.len();
    // Subset-sum counting per cardinality.
    let mut counts: Vec<std::collections::BTreeMap<i64, u64>> =
        vec![Default::default(); n + 1];
    counts[0].insert(0, 1);
    for deg in degrees {
        for i in (0..n).rev() {
            let snapshot: Vec<(i64, u64)> =
                counts[i].iter().map(|(s, c)| (*s, *c)).collect();
            for (s, c) in snapshot {
                *counts[i + 1].entry(s + i64::from(*deg)).or_insert(0) += c;
            }
        }
    }
    for (i, table) in counts.iter().enumerate() {
        for (s, c) in table {
            d.add(i, *s, *c);
        }
    }
    d
}

/// Dual of a length-ℓ diagram twisted by `-α`: entry `(i, j) ↦ (ℓ-i, α-j)`.
/// An involution: applying it twice with the same α is the identity.
pub fn dual_twist(diagram: &BettiDiagram, alpha: i64) -> BettiDiagram {
    let len = diagram.length();
    let mut out = BettiDiagram::new();
    for (i, j, c) in diagram.entries() {
        out.add(len - i, alpha - j, c);
    }
    out
}

/// Shift-level mapping cone for `R/I_Y` with `I_Y = I_X : I_Z`: stage
/// `1 ≤ i ≤ n-1` collects the dual of G at stage `n-i+1` and the dual of F
/// at stage `n-i`, both twisted by `-α`; stage `n` is the dual of G at
/// stage 1; stage 0 is a single rank at degree 0.
pub fn mapping_cone_diagram(
    f: &BettiDiagram,
    g: &BettiDiagram,
    alpha: i64,
) -> Result<BettiDiagram> {
    let n = f.length();
    if g.length() != n || n == 0 {
        return Err(Error::LengthMismatch {
            detail: format!(
                "resolutions of length {} and {} cannot be cone-assembled",
                n,
                g.length()
            ),
        });
    }
    let mut out = BettiDiagram::new();
    out.add(0, 0, 1);
    for stage in 1..=n {
        for (i, j, c) in g.entries() {
            if i == n - stage + 1 {
                out.add(stage, alpha - j, c);
            }
        }
        if stage < n {
            for (i, j, c) in f.entries() {
                if i == n - stage {
                    out.add(stage, alpha - j, c);
                }
            }
        }
    }
    Ok(out)
}

/// Koszul complex on the given nonzero homogeneous forms, with explicit
/// differentials: basis of `F_i` indexed by i-subsets in lexicographic
/// order, `d(e_S) = Σ_k (-1)^k f_{S[k]} e_{S∖S[k]}`.
pub fn koszul_complex(gens: &[Polynomial]) -> Result<Resolution> {
    if gens.is_empty() || gens.iter().any(|g| g.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    let n = gens.len();
    let prime = gens[0].prime();
    let order = gens[0].order();
    let degrees: Vec<i64> = gens
        .iter()
        .map(|g| i64::from(g.degree().unwrap()))
        .collect();

    let subsets_of = |k: usize| -> Vec<Vec<usize>> {
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
            // Advance to the next combination in lexicographic order.
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
    };

    let shift_of = |s: &[usize]| -> i64 { s.iter().map(|i| degrees[*i]).sum() };

    let mut maps = Vec::new();
    let mut prev = subsets_of(0);
    for k in 1..=n {
        let cur = subsets_of(k);
        let tgt_shifts: Vec<i64> = prev.iter().map(|s| shift_of(s)).collect();
        let src_shifts: Vec<i64> = cur.iter().map(|s| shift_of(s)).collect();
        let mut entries =
            vec![Polynomial::zero(prime, order); tgt_shifts.len() * src_shifts.len()];
        for (c, s) in cur.iter().enumerate() {
            for (pos, var) in s.iter().enumerate() {
                let mut reduced = s.clone();
                reduced.remove(pos);
                let r = prev
                    .iter()
                    .position(|q| q == &reduced)
                    .expect("face of a subset");
                let g = if pos % 2 == 0 {
                    gens[*var].clone()
                } else {
                    gens[*var].neg()
                };
                entries[r * src_shifts.len() + c] = g;
            }
        }
        maps.push(GradedMap::new(entries, src_shifts, tgt_shifts)?);
        prev = cur;
    }
    Resolution::new(vec![0], maps, true)
}

fn probe_ring(res: &Resolution) -> Result<(u64, MonomialOrder)> {
    for m in res.maps() {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let e = m.entry(r, c);
                if !e.is_zero() {
                    return Ok((e.prime(), e.order()));
                }
            }
        }
    }
    Err(Error::LengthMismatch {
        detail: "resolution has no nonzero entry".into(),
    })
}

/// Comparison maps `φ_i: F_i → G_i` lifting the surjection
/// `R/I_X → R/I_Z`, solved stage by stage through module membership.
pub fn comparison_lifts(f: &Resolution, g: &Resolution) -> Result<Vec<GradedMap>> {
    let n = f.length();
    if g.length() != n {
        return Err(Error::LengthMismatch {
            detail: "comparison lift needs equal lengths".into(),
        });
    }
    let (prime, order) = probe_ring(f)?;
    let one = Polynomial::constant(1, prime, order);
    let mut phis =
        vec![GradedMap::new(vec![one], vec![0], vec![0]).expect("identity is graded")];
    for i in 1..=n {
        let target = phis[i - 1].compose(&f.maps()[i - 1]);
        let dg = &g.maps()[i - 1];
        let module = FreeModule::with_elim(prime, order, dg.tgt_shifts().to_vec(), 0);
        let gens: Vec<ModVec> = (0..dg.cols())
            .map(|c| {
                ModVec::from_dense(
                    (0..dg.rows()).map(|r| dg.entry(r, c).clone()).collect(),
                )
            })
            .collect();
        let mut entries =
            vec![Polynomial::zero(prime, order); dg.cols() * target.cols()];
        for c in 0..target.cols() {
            let v = ModVec::from_dense(
                (0..target.rows()).map(|r| target.entry(r, c).clone()).collect(),
            );
            if v.is_zero() {
                continue;
            }
            let q = lift(&v, &gens, &module).ok_or_else(|| Error::NotContained {
                detail: format!("stage {i} comparison map is not liftable"),
            })?;
            for (r, quot) in q.into_iter().enumerate() {
                entries[r * target.cols() + c] = quot;
            }
        }
        phis.push(GradedMap::new(
            entries,
            f.module_shifts(i).to_vec(),
            g.module_shifts(i).to_vec(),
        )?);
    }
    Ok(phis)
}

/// Assemble the mapping-cone resolution of `R/(I_X : I_Z)` from minimal
/// resolutions `f` of `R/I_X` (complete intersection, socle twist α) and
/// `g` of `R/I_Z`, with honest differentials: stage k is
/// `G_{n-k+1}^∨(-α) ⊕ F_{n-k}^∨(-α)`, glued along the dualized comparison
/// maps with alternating sign.
pub fn mapping_cone_complex(
    f: &Resolution,
    g: &Resolution,
    alpha: i64,
) -> Result<Resolution> {
    let n = f.length();
    if g.length() != n || n == 0 {
        return Err(Error::LengthMismatch {
            detail: format!(
                "cone needs equal positive lengths, got {} and {}",
                n,
                g.length()
            ),
        });
    }
    let phis = comparison_lifts(f, g)?;
    let (prime, order) = probe_ring(f)?;
    let zero = Polynomial::zero(prime, order);

    let gv = |k: usize| -> Vec<i64> {
        g.module_shifts(n - k + 1).iter().map(|s| alpha - s).collect()
    };
    let fv = |k: usize| -> Vec<i64> {
        f.module_shifts(n - k).iter().map(|s| alpha - s).collect()
    };

    let mut maps = Vec::new();
    for k in 1..=n {
        let phi_dual = {
            let d = phis[n - k + 1].dual_twist(alpha);
            if k % 2 == 1 {
                d.negated()
            } else {
                d
            }
        };
        let g_block = (k >= 2).then(|| g.maps()[n - k + 1].dual_twist(alpha));
        let f_block = (k < n).then(|| f.maps()[n - k].dual_twist(alpha));

        let src_g = gv(k);
        let src_f: Vec<i64> = if k < n { fv(k) } else { Vec::new() };
        let tgt_g: Vec<i64> = if k >= 2 { gv(k - 1) } else { Vec::new() };
        let tgt_f = fv(k - 1);

        let rows = tgt_g.len() + tgt_f.len();
        let cols = src_g.len() + src_f.len();
        let mut entries = vec![zero.clone(); rows * cols];
        if let Some(b) = &g_block {
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    entries[r * cols + c] = b.entry(r, c).clone();
                }
            }
        }
        for r in 0..phi_dual.rows() {
            for c in 0..phi_dual.cols() {
                entries[(tgt_g.len() + r) * cols + c] = phi_dual.entry(r, c).clone();
            }
        }
        if let Some(b) = &f_block {
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    entries[(tgt_g.len() + r) * cols + (src_g.len() + c)] =
                        b.entry(r, c).clone();
                }
            }
        }
        let mut src = src_g;
        src.extend(src_f);
        let mut tgt = tgt_g;
        tgt.extend(tgt_f);
        maps.push(GradedMap::new(entries, src, tgt)?);
    }
    Resolution::new(vec![0], maps, false)
}

/// The link `I_Y = I_X : I_Z`, with preconditions checked: `I_X ⊆ I_Z` and
/// equal codimension. When both inputs are complete intersections the
/// almost-complete-intersection structure `I_Y = I_X + ⟨f⟩` with
/// `deg f = α_X − α_Z` is verified too.
pub fn link_ideal(ix: &Ideal, iz: &Ideal) -> Result<Ideal> {
    if !iz.contains_ideal(ix) {
        return Err(Error::NotContained {
            detail: "I_X ⊆ I_Z fails, so Z is not a subscheme of X".into(),
        });
    }
    let cx = ix.codim();
    let cz = iz.codim();
    if cx != cz {
        return Err(Error::CodimMismatch { expected: cx, found: cz });
    }
    let colon = ix.colon_ideal(iz)?;
    // Re-present on minimal generators (same ideal, canonical small list).
    let iy = Ideal::new(ix.prime(), ix.order(), colon.minimal_generators())?;

    let x_ci = ix.generators().len() == cx && is_regular_sequence(ix.generators());
    let z_ci = iz.generators().len() == cz && is_regular_sequence(iz.generators());
    if x_ci && z_ci && !iy.is_unit() {
        let deg_sum = |ideal: &Ideal| -> i64 {
            ideal
                .generators()
                .iter()
                .map(|g| i64::from(g.degree().unwrap()))
                .sum()
        };
        let a = deg_sum(ix) - deg_sum(iz);
        let mut found = false;
        for g in iy.generators() {
            if i64::from(g.degree().unwrap()) != a {
                continue;
            }
            let mut gens = ix.generators().to_vec();
            gens.push(g.clone());
            let candidate = Ideal::new(ix.prime(), ix.order(), gens)?;
            if candidate.equals(&iy) {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::NotContained {
                detail: format!(
                    "link of complete intersections is not I_X plus one degree-{a} form"
                ),
            });
        }
    }
    Ok(iy)
}

/// Lemma-level minimality test: true iff every generator of `I_X` lies in
/// `𝔪·I_Z`, in which case the mapping cone is already minimal.
pub fn minimality_test(ix: &Ideal, iz: &Ideal) -> Result<bool> {
    if !iz.contains_ideal(ix) {
        return Err(Error::NotContained {
            detail: "minimality test needs I_X ⊆ I_Z".into(),
        });
    }
    let nvars = iz.nvars();
    let mut gens = Vec::new();
    for g in iz.generators() {
        for v in 0..nvars {
            gens.push(g.mul_term(
                &Monomial::var_pow(nvars, v, 1),
                &FieldElem::one(iz.prime()),
            ));
        }
    }
    let m_iz = Ideal::new(iz.prime(), iz.order(), gens)?;
    Ok(ix.generators().iter().all(|g| m_iz.contains(g)))
}

fn push_cross_scenarios(
    p: usize,
    degree: u64,
    m_variants: &[(String, Vec<i64>)],
    max_variants: &[(String, Vec<i64>)],
) -> Vec<ShiftProfile> {
    let mut out = Vec::new();
    for (ml, m) in m_variants {
        for (xl, mx) in max_variants {
            let scenario = match (ml.is_empty(), xl.is_empty()) {
                (true, true) => "no-cancel".to_string(),
                (false, true) => ml.clone(),
                (true, false) => xl.clone(),
                (false, false) => format!("{ml}+{xl}"),
            };
            let profile = ShiftProfile {
                p,
                min_shifts: m.clone(),
                max_shifts: mx.clone(),
                degree,
                scenario,
            };
            profile.validate();
            out.push(profile);
        }
    }
    out
}

/// Shift profiles for an ideal linked to a collinear subscheme of degree t,
/// one per cancellation scenario: the no-cancellation shape, the `t = d_l`
/// and `t = d_n` bottom-step cancellations, and the `M_1 = d_n − 1`
/// top-generator cancellation. Predicted degree `d_X − t` throughout.
pub fn collinear_profiles(ci: &CIType, t: u32) -> Result<Vec<ShiftProfile>> {
    let spec = LinkSpec::collinear(ci.clone(), t)?;
    let n = ci.n();
    let d = ci.degrees();
    let alpha = i64::from(ci.alpha());
    let t = i64::from(t);
    let nn = n as i64;
    let a = alpha - nn - t + 1;
    let dn = i64::from(d[n - 1]);
    let partial = |i: usize| -> i64 { d[..i].iter().map(|x| i64::from(*x)).sum() };

    let mut m0: Vec<i64> = (1..n)
        .map(|i| (alpha - nn - t + i as i64).min(partial(i)))
        .collect();
    m0.push(alpha - t);
    let mut max0: Vec<i64> = vec![dn.max(a)];
    max0.extend((2..=n).map(|i| alpha - nn + i as i64 - 1));

    let mut m_variants = vec![(String::new(), m0.clone())];
    if t < dn && d[..n - 1].iter().any(|dl| i64::from(*dl) == t) {
        let mut m = m0.clone();
        m[n - 1] = alpha - 1;
        m_variants.push(("m-cancel:t=d_l".to_string(), m));
    }
    if t == dn {
        let mut m = m0.clone();
        m[n - 1] = alpha - 1;
        m[n - 2] = (alpha - i64::from(d[n - 2])).min(alpha - t - 1);
        m_variants.push(("m-cancel:t=d_n".to_string(), m));
    }

    let mut max_variants = vec![(String::new(), max0.clone())];
    if a == dn - 1 && i64::from(d[0]) < dn {
        let mut mx = max0.clone();
        mx[0] = dn - 1;
        max_variants.push(("M-cancel:M1=dn-1".to_string(), mx));
    }

    Ok(push_cross_scenarios(
        n,
        spec.predicted_degree(),
        &m_variants,
        &max_variants,
    ))
}

fn binom(n: i64, k: i64) -> u64 {
    if k < 0 || k > n || n < 0 {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * ((n - i) as u64) / ((i + 1) as u64);
    }
    acc
}

/// Minimal Betti diagram of three non-collinear (coordinate) points in ℙⁿ:
/// the Hilbert–Burch strand of 3 points in a plane tensored with a Koszul
/// complex on n−2 linear forms. Stage i carries `C(n-2, i)` ranks at degree
/// i and `3·C(n-2, i-1) + 2·C(n-2, i-2)` ranks at degree i+1.
pub fn threepoints_residual_diagram(n: usize) -> BettiDiagram {
    let mut d = BettiDiagram::new();
    d.add(0, 0, 1);
    let m = n as i64 - 2;
    for i in 1..=n {
        let ii = i as i64;
        d.add(i, ii, binom(m, ii));
        d.add(i, ii + 1, 3 * binom(m, ii - 1) + 2 * binom(m, ii - 2));
    }
    d
}

/// Shift profiles for an ideal linked to three general points, covering
/// both bottom-step branches (`m_n = α−2` and `m_n = α−1`) and the n = 3
/// second-step cancellation, plus the predicted (generally nonminimal)
/// mapping-cone diagram. Predicted degree `d_X − 3`.
pub fn threepoints_profiles(ci: &CIType) -> (Vec<ShiftProfile>, BettiDiagram) {
    let n = ci.n();
    let d = ci.degrees();
    let alpha = i64::from(ci.alpha());
    let nn = n as i64;
    let partial = |i: usize| -> i64 { d[..i].iter().map(|x| i64::from(*x)).sum() };
    let dn = i64::from(d[n - 1]);
    let dn1 = i64::from(d[n - 2]);

    let mut m0: Vec<i64> = (1..n)
        .map(|i| partial(i).min(alpha - nn + i as i64 - 2))
        .collect();
    m0.push(alpha - 2);
    let mut m1 = m0.clone();
    m1[n - 1] = alpha - 1;
    let m_variants = vec![
        (String::new(), m0),
        ("m-cancel:m_n=a-1".to_string(), m1),
    ];

    let mut max0: Vec<i64> = vec![dn.max(alpha - nn - 1)];
    max0.push((dn1 + dn).max(alpha - nn));
    max0.extend((3..=n).map(|i| alpha - nn + i as i64 - 1));
    let mut max_variants = vec![(String::new(), max0.clone())];
    if n == 3 && d[0] == 2 {
        let mut mx = max0.clone();
        mx[1] = alpha - 3;
        max_variants.push(("M-cancel:M2=a-3".to_string(), mx));
    }

    let profiles = push_cross_scenarios(
        n,
        ci.degree_product() - 3,
        &m_variants,
        &max_variants,
    );
    let predicted = mapping_cone_diagram(
        &koszul_diagram(d),
        &threepoints_residual_diagram(n),
        alpha,
    )
    .expect("lengths agree by construction");
    (profiles, predicted)
}

/// A realized link: concrete ideals over GF(p) with the linkage invariants
/// checked at construction (`I_Y = I_X : I_Z`, `I_X : I_Y = I_Z`, certified
/// regular sequence of the stated type).
#[derive(Debug, Clone)]
pub struct LinkInstance {
    pub spec: LinkSpec,
    pub prime: u64,
    pub seed: u64,
    pub ix: Ideal,
    pub iz: Ideal,
    pub iy: Ideal,
}

fn random_homogeneous(
    rng: &mut Rng,
    nvars: usize,
    degree: u32,
    prime: u64,
    order: MonomialOrder,
) -> Polynomial {
    let terms = monomials_of_degree(nvars, degree)
        .into_iter()
        .map(|m| (m, FieldElem::new(rng.below(prime) as i64, prime)))
        .collect();
    Polynomial::from_terms(terms, prime, order)
}

const REALIZE_ATTEMPTS: u32 = 32;

/// Realize a link instance: construct `I_Z` for the residual kind, draw
/// `I_X ⊆ I_Z` as random combinations of degree-`d_i` multiples of the
/// residual generators, certify the regular sequence (retrying with fresh
/// randomness up to a cap), and take the colon. Deterministic for a fixed
/// `(spec, prime, seed)`.
pub fn realize(spec: &LinkSpec, prime: u64, seed: u64) -> Result<LinkInstance> {
    check_prime(prime)?;
    let n = spec.ci.n();
    let nvars = n + 1;
    let order = MonomialOrder::grevlex(nvars);
    let master = Rng::new(seed);

    for attempt in 0..REALIZE_ATTEMPTS {
        let mut rng = master.split(u64::from(attempt));
        let z_gens: Vec<Polynomial> = match &spec.residual {
            Residual::Collinear { t } => {
                let mut gens: Vec<Polynomial> = (1..n)
                    .map(|v| Polynomial::term(1, v, 1, prime, order))
                    .collect();
                // Monic degree-t binary form in x0, xn.
                let mut f = Polynomial::term(1, 0, *t, prime, order);
                for k in 1..=*t {
                    let c = FieldElem::new(rng.below(prime) as i64, prime);
                    if c.is_zero() {
                        continue;
                    }
                    let mut exps = vec![0u32; nvars];
                    exps[0] = t - k;
                    exps[nvars - 1] = k;
                    f = f.add(&Polynomial::from_terms(
                        vec![(Monomial::new(exps), c)],
                        prime,
                        order,
                    ));
                }
                gens.push(f);
                gens
            }
            Residual::ThreePoints => {
                let mut gens: Vec<Polynomial> = (3..nvars)
                    .map(|v| Polynomial::term(1, v, 1, prime, order))
                    .collect();
                for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                    let m = Monomial::new(
                        (0..nvars)
                            .map(|v| u32::from(v == i) + u32::from(v == j))
                            .collect(),
                    );
                    gens.push(Polynomial::from_terms(
                        vec![(m, FieldElem::one(prime))],
                        prime,
                        order,
                    ));
                }
                gens
            }
            Residual::CustomCi { degrees } => {
                let gens: Vec<Polynomial> = degrees
                    .iter()
                    .map(|e| random_homogeneous(&mut rng, nvars, *e, prime, order))
                    .collect();
                if !is_regular_sequence(&gens) {
                    continue;
                }
                gens
            }
        };

        // I_X: random K-combinations of degree-d_i multiples of I_Z's gens.
        let mut x_gens = Vec::with_capacity(n);
        for di in spec.ci.degrees() {
            let mut g = Polynomial::zero(prime, order);
            for z in &z_gens {
                let dz = z.degree().unwrap();
                if dz > *di {
                    continue;
                }
                let h = random_homogeneous(&mut rng, nvars, di - dz, prime, order);
                g = g.add(&h.mul(z).expect("same ring"));
            }
            x_gens.push(g);
        }
        if x_gens
            .iter()
            .zip(spec.ci.degrees())
            .any(|(g, di)| g.is_zero() || g.degree() != Some(*di))
        {
            continue;
        }
        if !is_regular_sequence(&x_gens) {
            continue;
        }

        let ix = Ideal::new(prime, order, x_gens)?;
        let iz = Ideal::new(prime, order, z_gens)?;
        if iz.codim() != n {
            continue;
        }
        let iy = link_ideal(&ix, &iz)?;
        // Linkage involution: I_X : I_Y must recover I_Z exactly (Z is
        // arithmetically Cohen-Macaulay for every residual kind we realize).
        let back = ix.colon_ideal(&iy)?;
        if !back.equals(&iz) {
            continue;
        }
        return Ok(LinkInstance { spec: spec.clone(), prime, seed, ix, iz, iy });
    }
    Err(Error::DegenerateRealization {
        seed,
        attempts: REALIZE_ATTEMPTS,
        detail: "no certified regular sequence found".into(),
    })
}

impl LinkInstance {
    pub fn alpha(&self) -> i64 {
        i64::from(self.spec.ci.alpha())
    }

    /// Koszul resolution of `R/I_X` on the realized generators.
    pub fn x_resolution(&self) -> Resolution {
        koszul_complex(self.ix.generators()).expect("certified regular sequence")
    }

    /// Minimal resolution of `R/I_Z`: Koszul for complete-intersection
    /// residuals, the syzygy kernel route for three points.
    pub fn z_resolution(&self) -> Resolution {
        match &self.spec.residual {
            Residual::ThreePoints => minimalize(&free_resolution(&self.iz)),
            _ => koszul_complex(self.iz.generators())
                .expect("certified regular sequence"),
        }
    }

    /// The honest mapping-cone resolution of `R/I_Y` (generally nonminimal).
    pub fn cone_resolution(&self) -> Result<Resolution> {
        mapping_cone_complex(&self.x_resolution(), &self.z_resolution(), self.alpha())
    }

    /// Shift profiles for this instance's residual kind.
    pub fn profiles(&self) -> Result<Vec<ShiftProfile>> {
        match &self.spec.residual {
            Residual::Collinear { t } => collinear_profiles(&self.spec.ci, *t),
            Residual::ThreePoints => Ok(threepoints_profiles(&self.spec.ci).0),
            Residual::CustomCi { .. } => Err(Error::InvalidSpec(
                "profile formulas exist only for collinear and three-point residuals"
                    .into(),
            )),
        }
    }
}
