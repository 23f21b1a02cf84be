//! Enumeration of candidate real Weil polynomials over F_2 and the
//! factorization filters applied to them.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{all_roots_in_interval, bigint_serde, divisors, radical, reduced_resultant, resultant, IntPoly};
use crate::error::{Error, Result};
use crate::zeta::{avector_from_h, AVector, RealWeilPoly};

/// Parameters of a search for genus-`g` candidates with `a_1 = target_a1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub g: usize,
    pub q: u64,
    pub target_a1: i64,
    /// Depth to which `a_d >= 0` is validated; `None` means `2g`.
    pub dmax: Option<usize>,
    pub a1_bound_check: bool,
}

impl SearchSpec {
    pub fn new(g: usize, target_a1: i64) -> Self {
        SearchSpec {
            g,
            q: 2,
            target_a1,
            dmax: None,
            a1_bound_check: false,
        }
    }

    pub fn depth(&self) -> usize {
        self.dmax.unwrap_or(2 * self.g).max(self.g)
    }
}

/// A nontrivial split `h = h1 * h2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub h1: IntPoly,
    pub h2: IntPoly,
    #[serde(with = "bigint_serde")]
    pub resultant: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Res1Verdict {
    Pass,
    Fail { witness: Split },
}

impl Res1Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Res1Verdict::Pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObligationKind {
    /// Reduced resultant of the radicals is 2: a degree-2 map to a curve
    /// with real Weil polynomial `h1` or `h2`.
    Res2,
    /// `h1 = t - mu` and `Res(h1, rad h2) = r != ±1`: a map of degree
    /// dividing `r` to an elliptic curve isogenous to the one of `h1`.
    EllFact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obligation {
    pub kind: ObligationKind,
    pub h1: IntPoly,
    pub h2: IntPoly,
    /// Reduced resultant of the radicals (Res2) or resultant with the radical (EllFact).
    #[serde(with = "bigint_serde")]
    pub value: BigInt,
    /// Exact covering degree (Res2) or the bound it divides (EllFact).
    pub covering_degree: u64,
    pub degree_exact: bool,
}

impl Obligation {
    /// Base curves of genus ≥ 0 the map may land on.
    pub fn bases(&self) -> Vec<IntPoly> {
        match self.kind {
            ObligationKind::Res2 => vec![self.h1.clone(), self.h2.clone()],
            ObligationKind::EllFact => vec![self.h1.clone()],
        }
    }

    /// Whether the cover is forced to have degree exactly 2.
    pub fn is_double_cover(&self) -> bool {
        self.covering_degree == 2
    }
}

/// A place of the base curve that ramifies, with its conductor exponent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConductorTerm {
    pub label: String,
    pub degree: usize,
    pub exponent: u32,
}

/// One ordered, labelled conductor `sum c_j P_j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConductorShape {
    pub terms: Vec<ConductorTerm>,
}

impl fmt::Display for ConductorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("{}{}", t.exponent, t.label))
            .collect();
        f.write_str(&parts.join("+"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Feasibility {
    Feasible {
        shapes: Vec<ConductorShape>,
        trace: Vec<String>,
    },
    Contradiction {
        trace: Vec<String>,
    },
    Indeterminate {
        reason: String,
    },
}

impl Feasibility {
    pub fn is_contradiction(&self) -> bool {
        matches!(self, Feasibility::Contradiction { .. })
    }

    pub fn shapes_display(&self) -> Vec<String> {
        match self {
            Feasibility::Feasible { shapes, .. } => shapes.iter().map(|s| s.to_string()).collect(),
            _ => vec![],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObligationCheck {
    pub obligation: Obligation,
    /// One verdict per admissible base, `None` when no degree-2 check applies.
    pub verdicts: Vec<(IntPoly, Feasibility)>,
}

impl ObligationCheck {
    /// True iff the obligation forces a double cover and every possible base
    /// leads to a contradiction.
    pub fn excludes(&self) -> bool {
        !self.verdicts.is_empty() && self.verdicts.iter().all(|(_, v)| v.is_contradiction())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub h: IntPoly,
    pub factors: Vec<(IntPoly, u32)>,
    pub a: AVector,
    pub res1: Res1Verdict,
    pub obligations: Vec<ObligationCheck>,
}

impl CandidateReport {
    /// Some degree-2 obligation is contradictory on every base.
    pub fn excluded_by_feasibility(&self) -> bool {
        self.obligations.iter().any(ObligationCheck::excludes)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub spec: SearchSpec,
    pub candidates: Vec<CandidateReport>,
    /// Candidates meeting every numeric condition but failing Res1.
    pub rejected_res1: Vec<CandidateReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// `q + 1 + floor(2 g sqrt q)`.
pub fn hasse_weil_bound(g: usize, q: u64) -> i64 {
    (q + 1 + isqrt(4 * (g as u64) * (g as u64) * q)) as i64
}

fn binom_i(n: usize, k: usize) -> i128 {
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

/// Upper bound `floor(2^k + 1 + 2g 2^{k/2})` on `N_k`.
fn weil_upper(k: usize, g: usize) -> i128 {
    // 2g 2^{k/2} = sqrt(4 g^2 2^k)
    let r = isqrt((4 * (g as u64).pow(2)) << k);
    (1i128 << k) + 1 + r as i128
}

/// Lower bound `ceil(2^k + 1 - 2g 2^{k/2})`.
fn weil_lower(k: usize, g: usize) -> i128 {
    let v = (4 * (g as u64).pow(2)) << k;
    let mut r = isqrt(v);
    if r * r < v {
        r += 1;
    }
    (1i128 << k) + 1 - r as i128
}

fn poly_from_i128(c: &[i128]) -> IntPoly {
    IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
}

/// `d`-th derivative of `sum_{i >= lo} c_i t^i` restricted to known top coefficients.
fn derivative_tail(c: &[i128], lo: usize) -> IntPoly {
    let g = c.len() - 1;
    let mut out = Vec::with_capacity(g - lo + 1);
    for i in lo..=g {
        let mut f: i128 = 1;
        for j in 0..lo {
            f *= (i - j) as i128;
        }
        out.push(c[i] * f);
    }
    poly_from_i128(&out)
}

struct Enumerator {
    g: usize,
    q: i128,
    dmax: usize,
    n: Vec<i128>,
    a: Vec<i128>,
    b: Vec<i128>,
    c: Vec<i128>,
    found: Vec<IntPoly>,
}

impl Enumerator {
    fn run(&mut self, k: usize) -> Result<()> {
        let g = self.g;
        if k > g {
            let h = poly_from_i128(&self.c);
            let rw = RealWeilPoly::new(h.clone(), 2)?;
            let av = avector_from_h(&rw, self.dmax)?;
            if av.is_valid() {
                self.found.push(h);
            }
            return Ok(());
        }
        let divs: Vec<usize> = divisors(k as u64)
            .into_iter()
            .map(|d| d as usize)
            .filter(|&d| d < k)
            .collect();
        let rest: i128 = divs.iter().map(|&d| d as i128 * self.a[d]).sum();
        let lo = weil_lower(k, g).max(self.n[1]).max(0);
        let hi = weil_upper(k, g);
        let kk = k as i128;
        let amin = Integer::div_ceil(&(lo - rest), &kk).max(0);
        let amax = Integer::div_floor(&(hi - rest), &kk);
        for ak in amin..=amax {
            let nk = rest + kk * ak;
            let sk = self.q.pow(k as u32) + 1 - nk;
            // k b_k = -(s_k + sum_{j<k} b_j s_{k-j})
            let mut acc = sk;
            for j in 1..k {
                let sj = self.q.pow((k - j) as u32) + 1 - self.n[k - j];
                acc += self.b[j] * sj;
            }
            if acc % kk != 0 {
                continue;
            }
            let bk = -acc / kk;
            let mut ck = bk;
            let mut j = 1;
            while g - k + 2 * j <= g {
                let i = g - k + 2 * j;
                ck -= self.c[i] * binom_i(i, j) * self.q.pow(j as u32);
                j += 1;
            }
            self.a[k] = ak;
            self.n[k] = nk;
            self.b[k] = bk;
            self.c[g - k] = ck;
            // Rolle: the (g-k)-th derivative has all roots in the interval.
            let d = derivative_tail(&self.c, g - k);
            if !all_roots_in_interval(&d, 2)? {
                continue;
            }
            self.run(k + 1)?;
        }
        self.c[g - k] = 0;
        Ok(())
    }
}

/// Monic degree-`g` polynomials with all roots in `[-2 sqrt 2, 2 sqrt 2]`,
/// `a_1 = target` and `a_d >= 0` integral for `d <= dmax`, split by Res1.
pub fn enumerate_candidates(spec: &SearchSpec) -> Result<Enumeration> {
    if spec.q != 2 {
        return Err(Error::UnsupportedField(spec.q));
    }
    if spec.g == 0 {
        return Err(Error::OutOfRange("genus must be at least 1".into()));
    }
    let mut out = Enumeration {
        spec: spec.clone(),
        candidates: vec![],
        rejected_res1: vec![],
        flag: None,
    };
    let hw = hasse_weil_bound(spec.g, spec.q);
    if spec.target_a1 > hw {
        out.flag = Some(format!(
            "a_1 = {} exceeds the Hasse-Weil bound {hw} for g = {}",
            spec.target_a1, spec.g
        ));
        return Ok(out);
    }
    if spec.target_a1 < 0 {
        out.flag = Some("a_1 must be nonnegative".into());
        return Ok(out);
    }
    if spec.a1_bound_check {
        let serre = (83 * spec.g as i64 + 535) / 100;
        if spec.target_a1 > serre {
            out.flag = Some(format!(
                "a_1 = {} exceeds 0.83 g + 5.35 = {serre} (rounded down)",
                spec.target_a1
            ));
            return Ok(out);
        }
    }
    let g = spec.g;
    let dmax = spec.depth();
    let mut e = Enumerator {
        g,
        q: 2,
        dmax,
        n: vec![0; g + 1],
        a: vec![0; g + 1],
        b: vec![0; g + 1],
        c: vec![0; g + 1],
        found: vec![],
    };
    e.c[g] = 1;
    e.b[0] = 1;
    // k = 1 is pinned by the target.
    let a1 = spec.target_a1 as i128;
    e.a[1] = a1;
    e.n[1] = a1;
    e.b[1] = -(3 - a1);
    e.c[g - 1] = e.b[1];
    if all_roots_in_interval(&derivative_tail(&e.c, g - 1), 2)? {
        e.run(2)?;
    }
    let mut found = e.found;
    found.sort();
    found.dedup();
    for h in found {
        let report = candidate_report(&h, dmax)?;
        if report.res1.passed() {
            out.candidates.push(report);
        } else {
            out.rejected_res1.push(report);
        }
    }
    Ok(out)
}

/// Full report for one polynomial: factors, a-vector, Res1, obligations
/// and double-cover feasibility for each obligation of degree 2.
pub fn candidate_report(h: &IntPoly, dmax: usize) -> Result<CandidateReport> {
    let rw = RealWeilPoly::new(h.clone(), 2)?;
    let a = avector_from_h(&rw, dmax)?;
    let res1 = filter_res1(h)?;
    let mut obligations = Vec::new();
    if res1.passed() {
        for ob in obligations_res2_ellfact(h)? {
            let mut verdicts = Vec::new();
            if ob.is_double_cover() {
                for base in ob.bases() {
                    let brw = RealWeilPoly::new(base.clone(), 2)?;
                    let bc = BaseCurve::from_h(&brw, dmax)?;
                    verdicts.push((base, double_cover_feasibility(&rw, &bc, dmax)?));
                }
            }
            obligations.push(ObligationCheck {
                obligation: ob,
                verdicts,
            });
        }
    }
    Ok(CandidateReport {
        h: h.clone(),
        factors: factor_monic(h)?,
        a,
        res1,
        obligations,
    })
}

fn small_divisors(n: &BigInt) -> Option<Vec<i64>> {
    let n = n.abs().to_u64()?;
    if n == 0 {
        return None;
    }
    let mut out = Vec::new();
    for d in divisors(n) {
        out.push(d as i64);
        out.push(-(d as i64));
    }
    Some(out)
}

/// Monic factor of degree `k` by Kronecker's method, if one exists.
fn kronecker_factor(f: &IntPoly, k: usize) -> Option<IntPoly> {
    // k interpolation points with small nonzero values.
    let mut pts: Vec<(i64, BigInt)> = (-6i64..=6)
        .map(|x| (x, f.eval_i64(x)))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    pts.sort_by_key(|(x, v)| (v.abs(), x.abs(), *x));
    pts.truncate(k);
    if pts.len() < k {
        return None;
    }
    let xs: Vec<i64> = pts.iter().map(|p| p.0).collect();
    let divs: Vec<Vec<i64>> = pts
        .iter()
        .map(|(_, v)| small_divisors(v))
        .collect::<Option<_>>()?;
    let base = IntPoly::product(xs.iter().map(|&x| IntPoly::linear_root(x)).collect::<Vec<_>>().iter());
    // Lagrange basis scaled to integers: ell_i(t) * denom_i.
    let mut basis = Vec::with_capacity(k);
    for i in 0..k {
        let mut num = IntPoly::one();
        let mut den = BigInt::one();
        for j in 0..k {
            if i != j {
                num = &num * &IntPoly::linear_root(xs[j]);
                den *= BigInt::from(xs[i] - xs[j]);
            }
        }
        basis.push((num, den));
    }
    let total_den = basis
        .iter()
        .fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
    let mut idx = vec![0usize; k];
    loop {
        let mut r = IntPoly::zero();
        for i in 0..k {
            let v = BigInt::from(divs[i][idx[i]]);
            let scale = &total_den / &basis[i].1 * v;
            r = &r + &basis[i].0.scale(&scale);
        }
        if r.coeffs().iter().all(|c| (c % &total_den).is_zero()) {
            let p = &base + &r.div_scalar(&total_den);
            if p.degree() == Some(k) && f.div_exact(&p).is_some() {
                return Some(p);
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return None;
            }
            idx[i] += 1;
            if idx[i] < divs[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Irreducible monic factors with multiplicities, sorted.
pub fn factor_monic(h: &IntPoly) -> Result<Vec<(IntPoly, u32)>> {
    if !h.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut irreducibles: Vec<IntPoly> = Vec::new();
    let mut f = h.clone();
    while f.coeff(0).is_zero() && !f.is_constant() {
        irreducibles.push(IntPoly::t());
        f = f.div_exact(&IntPoly::t()).expect("t divides");
    }
    if !f.is_constant() {
        for r in small_divisors(&f.coeff(0)).unwrap_or_default() {
            let lin = IntPoly::linear_root(r);
            while let Some(q) = f.div_exact(&lin) {
                irreducibles.push(lin.clone());
                f = q;
            }
        }
    }
    let mut k = 2;
    while f.degree().unwrap_or(0) >= 2 * k {
        match kronecker_factor(&f, k) {
            Some(p) => {
                f = f.div_exact(&p).expect("found factor divides");
                irreducibles.push(p);
            }
            None => k += 1,
        }
    }
    if !f.is_constant() {
        irreducibles.push(f);
    }
    irreducibles.sort();
    let mut out: Vec<(IntPoly, u32)> = Vec::new();
    for p in irreducibles {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// All nontrivial `(h1, h2)` with `h1 h2 = h`, h1 running over sub-multisets
/// of the irreducible factors in a fixed order.
fn splits(factors: &[(IntPoly, u32)]) -> Vec<(IntPoly, IntPoly)> {
    let mut out = Vec::new();
    let mut k = vec![0u32; factors.len()];
    loop {
        let mut i = 0;
        loop {
            if i == factors.len() {
                return out;
            }
            k[i] += 1;
            if k[i] <= factors[i].1 {
                break;
            }
            k[i] = 0;
            i += 1;
        }
        let full = k.iter().zip(factors).all(|(a, (_, e))| a == e);
        if full {
            continue;
        }
        let mut h1 = IntPoly::one();
        let mut h2 = IntPoly::one();
        for (j, (p, e)) in factors.iter().enumerate() {
            h1 = &h1 * &p.pow(k[j]);
            h2 = &h2 * &p.pow(e - k[j]);
        }
        out.push((h1, h2));
    }
}

/// Fails iff some nontrivial factorization `h = h1 h2` has `Res(h1, h2) = ±1`.
pub fn filter_res1(h: &IntPoly) -> Result<Res1Verdict> {
    let factors = factor_monic(h)?;
    for (h1, h2) in splits(&factors) {
        let r = resultant(&h1, &h2)?;
        if r.abs().is_one() {
            return Ok(Res1Verdict::Fail {
                witness: Split {
                    h1,
                    h2,
                    resultant: r,
                },
            });
        }
    }
    Ok(Res1Verdict::Pass)
}

/// Res2 and EllFact obligations over every coprime split of `h`.
pub fn obligations_res2_ellfact(h: &IntPoly) -> Result<Vec<Obligation>> {
    let factors = factor_monic(h)?;
    let n = factors.len();
    let mut out = Vec::new();
    if n < 2 {
        return Ok(out);
    }
    // Coprime splits: each distinct irreducible goes wholly to one side.
    for mask in 1u32..(1 << n) - 1 {
        let mut h1 = IntPoly::one();
        let mut h2 = IntPoly::one();
        for (i, (p, e)) in factors.iter().enumerate() {
            if mask >> i & 1 == 1 {
                h1 = &h1 * &p.pow(*e);
            } else {
                h2 = &h2 * &p.pow(*e);
            }
        }
        let (r1, r2) = (radical(&h1)?, radical(&h2)?);
        let rr = reduced_resultant(&r1, &r2)?;
        if rr == BigInt::from(2) && h1 < h2 {
            out.push(Obligation {
                kind: ObligationKind::Res2,
                h1: h1.clone(),
                h2: h2.clone(),
                value: rr,
                covering_degree: 2,
                degree_exact: true,
            });
        }
        if h1.degree() == Some(1) {
            let r = resultant(&h1, &r2)?;
            if !r.abs().is_one() {
                let deg = r.abs().to_u64().unwrap_or(u64::MAX);
                out.push(Obligation {
                    kind: ObligationKind::EllFact,
                    h1,
                    h2,
                    value: r,
                    covering_degree: deg,
                    degree_exact: false,
                });
            }
        }
    }
    out.sort_by(|a, b| {
        (a.kind == ObligationKind::Res2, &a.h1, &a.h2).cmp(&(b.kind == ObligationKind::Res2, &b.h1, &b.h2))
    });
    Ok(out)
}

/// Place counts and genus of the base of a double cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseCurve {
    pub genus: usize,
    pub a: AVector,
}

impl BaseCurve {
    pub fn from_h(h: &RealWeilPoly, dmax: usize) -> Result<Self> {
        Ok(BaseCurve {
            genus: h.genus(),
            a: avector_from_h(h, dmax)?,
        })
    }

    pub fn projective_line(dmax: usize) -> Self {
        BaseCurve::from_h(&RealWeilPoly::new(IntPoly::one(), 2).expect("monic"), dmax)
            .expect("P^1 counts")
    }
}

/// Split/ramified/inert counts over base places of one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Behaviour {
    split: i64,
    ramified: i64,
    inert: i64,
}

struct FeasSearch<'a> {
    cover: &'a [i64],
    base: &'a [i64],
    dmax: usize,
    delta: i64,
    choice: Vec<Behaviour>,
    leaves: BTreeSet<Vec<usize>>,
    trace: Vec<String>,
}

impl FeasSearch<'_> {
    fn ramified_budget(&self, upto: usize) -> i64 {
        (1..upto).map(|d| 2 * d as i64 * self.choice[d].ramified).sum()
    }

    fn go(&mut self, d: usize) {
        if d > self.dmax {
            let degs: Vec<usize> = (1..=self.dmax)
                .flat_map(|e| std::iter::repeat_n(e, self.choice[e].ramified as usize))
                .collect();
            if exponent_assignments(&degs, self.delta).is_empty() {
                self.trace.push(format!(
                    "ramified base places of degrees {degs:?} cannot carry a conductor of degree {} with even exponents >= 2",
                    self.delta
                ));
            } else {
                self.leaves.insert(degs);
            }
            return;
        }
        let ad_x = self.cover[d - 1];
        let ad_b = self.base[d - 1];
        let inert_half = if d.is_multiple_of(2) { self.choice[d / 2].inert } else { 0 };
        let used = self.ramified_budget(d);
        let mut any = false;
        for r in 0..=ad_b {
            let rest = ad_x - r - inert_half;
            if rest < 0 || rest % 2 != 0 {
                continue;
            }
            let s = rest / 2;
            let i = ad_b - s - r;
            if i < 0 {
                if r == 0 {
                    self.trace.push(format!(
                        "degree {d}: a_{d}(X) = {ad_x} needs {s} split base places but the base has only {ad_b}"
                    ));
                }
                continue;
            }
            if used + 2 * d as i64 * r > self.delta {
                self.trace.push(format!(
                    "degree {d}: {r} ramified place(s) would push the conductor degree past {}",
                    self.delta
                ));
                continue;
            }
            any = true;
            self.choice[d] = Behaviour {
                split: s,
                ramified: r,
                inert: i,
            };
            self.go(d + 1);
        }
        if !any {
            self.trace.push(format!(
                "degree {d}: no split/ramified/inert assignment reproduces a_{d}(X) = {ad_x} from a_{d}(base) = {ad_b}"
            ));
        }
        self.choice[d] = Behaviour {
            split: 0,
            ramified: 0,
            inert: 0,
        };
    }
}

/// Ordered assignments of even exponents >= 2 to places of the given degrees
/// with `sum c_j deg_j = delta`.
fn exponent_assignments(degs: &[usize], delta: i64) -> Vec<Vec<u32>> {
    fn rec(degs: &[usize], left: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&d, rest)) = degs.split_first() else {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        };
        let mut c = 2u32;
        while c as i64 * d as i64 <= left {
            cur.push(c);
            rec(rest, left - c as i64 * d as i64, cur, out);
            cur.pop();
            c += 2;
        }
    }
    let mut out = Vec::new();
    rec(degs, delta, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn place_labels(degs: &[usize]) -> Vec<String> {
    let mut seen: Vec<usize> = Vec::new();
    degs.iter()
        .map(|&d| {
            let k = seen.iter().filter(|&&e| e == d).count();
            seen.push(d);
            let base = if d == 1 { "P" } else { "Q" };
            format!("{base}{}", "\u{2032}".repeat(k))
        })
        .collect()
}

/// Decide whether a degree-2 cover `X -> B` with the given place counts can
/// exist, enumerating every split/ramified/inert pattern of base places up to
/// depth `dmax` together with even wild conductor exponents fitting
/// Riemann–Hurwitz `2 g_X - 2 = 2 (2 g_B - 2) + deg D`.
pub fn double_cover_feasibility(
    cover: &RealWeilPoly,
    base: &BaseCurve,
    dmax: usize,
) -> Result<Feasibility> {
    if cover.q != 2 {
        return Err(Error::UnsupportedField(cover.q));
    }
    let cover_a = avector_from_h(cover, dmax)?;
    if base.a.len() < dmax {
        return Ok(Feasibility::Indeterminate {
            reason: format!(
                "base a-vector known to depth {}, need {dmax}",
                base.a.len()
            ),
        });
    }
    let gx = cover.genus() as i64;
    let gb = base.genus as i64;
    let delta = 2 * gx - 2 - 2 * (2 * gb - 2);
    let mut trace = vec![format!(
        "Riemann-Hurwitz: deg D = 2*{gx}-2 - 2*(2*{gb}-2) = {delta}"
    )];
    if delta < 0 || delta % 2 != 0 {
        trace.push(format!(
            "conductor degree {delta} is not a nonnegative even number"
        ));
        return Ok(Feasibility::Contradiction { trace });
    }
    if delta / 2 > dmax as i64 {
        return Ok(Feasibility::Indeterminate {
            reason: format!(
                "places of degree up to {} may ramify but counts are known only to degree {dmax}",
                delta / 2
            ),
        });
    }
    let mut s = FeasSearch {
        cover: &cover_a.a,
        base: &base.a.a,
        dmax,
        delta,
        choice: vec![
            Behaviour {
                split: 0,
                ramified: 0,
                inert: 0
            };
            dmax + 1
        ],
        leaves: BTreeSet::new(),
        trace: Vec::new(),
    };
    s.go(1);
    let mut dedup: Vec<String> = Vec::new();
    for t in s.trace {
        if !dedup.contains(&t) {
            dedup.push(t);
        }
    }
    trace.extend(dedup);
    if s.leaves.is_empty() {
        return Ok(Feasibility::Contradiction { trace });
    }
    let mut shapes = Vec::new();
    for degs in &s.leaves {
        let labels = place_labels(degs);
        for exps in exponent_assignments(degs, delta) {
            shapes.push(ConductorShape {
                terms: degs
                    .iter()
                    .zip(&labels)
                    .zip(exps)
                    .map(|((&degree, label), exponent)| ConductorTerm {
                        label: label.clone(),
                        degree,
                        exponent,
                    })
                    .collect(),
            });
        }
    }
    Ok(Feasibility::Feasible { shapes, trace })
}

/// One solution of the two-parameter tail search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailSolution {
    pub alpha: i64,
    pub beta: i64,
    pub h: IntPoly,
    pub a: Vec<i64>,
    pub parity_ok: bool,
}

/// Required parities of `a_6` and `a_7`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityConstraint {
    pub a6_odd: Option<bool>,
    pub a7_odd: Option<bool>,
}

/// Degree-7 polynomial determined by `a_1..a_5` except for its two lowest
/// coefficients `alpha t + beta`.
pub fn tail_template(prefix: &[i64]) -> Result<IntPoly> {
    let g = 7usize;
    if prefix.len() != 5 {
        return Err(Error::Precondition(
            "the genus-7 tail search takes a_1..a_5".into(),
        ));
    }
    let mut n = [0i128; 6];
    for k in 1..=5 {
        n[k] = divisors(k as u64)
            .into_iter()
            .map(|d| d as i128 * prefix[d as usize - 1] as i128)
            .sum();
    }
    let mut b = [0i128; 6];
    b[0] = 1;
    let mut c = vec![0i128; g + 1];
    c[g] = 1;
    for k in 1..=5 {
        let mut acc = 2i128.pow(k as u32) + 1 - n[k];
        for j in 1..k {
            acc += b[j] * (2i128.pow((k - j) as u32) + 1 - n[k - j]);
        }
        if acc % k as i128 != 0 {
            return Err(Error::Precondition(format!(
                "prefix gives a non-integral L coefficient b_{k}"
            )));
        }
        b[k] = -acc / k as i128;
        let mut ck = b[k];
        let mut j = 1;
        while g - k + 2 * j <= g {
            let i = g - k + 2 * j;
            ck -= c[i] * binom_i(i, j) * 2i128.pow(j as u32);
            j += 1;
        }
        c[g - k] = ck;
    }
    Ok(poly_from_i128(&c))
}

/// Scan `(alpha, beta)` in `p(t) + alpha t + beta` for all roots in
/// `[-2 sqrt 2, 2 sqrt 2]`; `parity_ok` records the stated constraints.
pub fn parametric_tail_search(prefix: &[i64], parity: ParityConstraint) -> Result<Vec<TailSolution>> {
    let p = tail_template(prefix)?;
    let dp = p.derivative();
    // alpha = ±e_6 and beta = ±e_7 of seven roots in [-2 sqrt 2, 2 sqrt 2].
    let abound = 7 * 512;
    let bbound = isqrt(8u64.pow(7)) as i64;
    let mut out = Vec::new();
    for alpha in -abound..=abound {
        let dh = &dp + &IntPoly::from_i64s(&[alpha]);
        if !all_roots_in_interval(&dh, 2)? {
            continue;
        }
        let qa = &p + &IntPoly::from_i64s(&[0, alpha]);
        for beta in -bbound..=bbound {
            let h = &qa + &IntPoly::from_i64s(&[beta]);
            if !all_roots_in_interval(&h, 2)? {
                continue;
            }
            let rw = RealWeilPoly::new(h.clone(), 2)?;
            let a = avector_from_h(&rw, 7)?.a;
            let ok6 = parity.a6_odd.is_none_or(|odd| (a[5] % 2 != 0) == odd);
            let ok7 = parity.a7_odd.is_none_or(|odd| (a[6] % 2 != 0) == odd);
            out.push(TailSolution {
                alpha,
                beta,
                h,
                a,
                parity_ok: ok6 && ok7,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(hasse_weil_bound(1, 2), 5);
        assert_eq!(hasse_weil_bound(2, 2), 8);
        assert_eq!(weil_upper(2, 1), 4 + 1 + 4);
        assert_eq!(weil_lower(2, 1), 1);
    }

    #[test]
    fn labels() {
        assert_eq!(place_labels(&[1, 1, 4]), vec!["P", "P\u{2032}", "Q"]);
    }

    #[test]
    fn exponents() {
        assert_eq!(exponent_assignments(&[1, 1], 6), vec![vec![4, 2], vec![2, 4]]);
        assert!(exponent_assignments(&[4], 10).is_empty());
        assert_eq!(exponent_assignments(&[], 0), vec![Vec::<u32>::new()]);
    }
}
