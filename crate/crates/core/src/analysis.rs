//! End-to-end verifications: rectangle and toothbrush cyclic sieving, the
//! packed/exceptional decomposition, `Θ`-equivariance, promotion order,
//! regression triples, and the patched bijection between packed `3 × k`
//! tableaux and toothbrush standard tableaux.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::combinatorics::{DescentConvention, IncreasingTableau, Partition};
use crate::dynamics::{
    exceptional_orbit, k_evacuate, k_promote, k_promote_inverse, k_promote_pow, k_promote_toggles, rowmotion, theta,
    theta_inv,
};
use crate::enumeration::{
    collect_within, enumerate_increasing_par, enumerate_syt, ideal_to_subset, orbit_decomposition, OrbitDecomposition,
};
use crate::error::{Error, Result};
use crate::qseries::{binomial, csp_check, miracle_sides, q_binomial, q_hook_polynomial, CspVerdict, IntPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one verification. Failing reports always carry a witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub parameters: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub witness: Option<Value>,
    pub statistics: BTreeMap<String, Value>,
    pub descent_convention: DescentConvention,
    /// Results that contradict an expected obstruction and
    /// need a human to look at them.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub review: Vec<String>,
}

impl VerificationReport {
    fn new(claim: &str) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            parameters: BTreeMap::new(),
            verdict: Verdict::Pass,
            witness: None,
            statistics: BTreeMap::new(),
            descent_convention: DescentConvention::LowerRow,
            review: Vec::new(),
        }
    }

    fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    fn stat(&mut self, key: &str, value: impl Serialize) {
        self.statistics.insert(
            key.to_string(),
            serde_json::to_value(value).expect("statistics serialize"),
        );
    }

    /// Records a failure. The first witness wins.
    fn fail(&mut self, witness: Value) {
        self.verdict = Verdict::Fail;
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Flat `key<TAB>value` rendering.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(k);
            out.push('\t');
            out.push_str(&v);
            out.push('\n');
        };
        line("claim", self.claim.clone());
        line("verdict", if self.passed() { "pass".into() } else { "fail".into() });
        line("descent_convention", self.descent_convention.to_string());
        for (k, v) in &self.parameters {
            line(&format!("param.{k}"), v.to_string());
        }
        for (k, v) in &self.statistics {
            line(&format!("stat.{k}"), v.to_string());
        }
        if let Some(w) = &self.witness {
            line("witness", w.to_string());
        }
        for r in &self.review {
            line("review", r.clone());
        }
        out
    }
}

fn check_budget(size: &BigInt, budget: usize) -> Result<()> {
    if *size > BigInt::from(budget) {
        let size = usize::try_from(size).unwrap_or(usize::MAX);
        return Err(Error::Budget { size, budget });
    }
    Ok(())
}

fn rectangle_ground(a: u32, b: u32, packed: bool, budget: usize) -> Result<Vec<IncreasingTableau>> {
    if a == 0 || b == 0 {
        return Err(Error::Domain(format!("rectangle needs a, b >= 1, got {a}x{b}")));
    }
    check_budget(&binomial((a + b) as u64, a as u64), budget)?;
    enumerate_increasing_par(&Partition::rectangle(a, b), a + b, packed, budget)
}

/// First element (in ground order) for which `bad` returns a witness.
fn first_violation<T, F>(ground: &[T], bad: F) -> Option<Value>
where
    T: Sync,
    F: Fn(&T) -> Option<Value> + Sync + Send,
{
    ground.par_iter().find_map_first(bad)
}

fn tableau_json(t: &IncreasingTableau) -> Value {
    serde_json::to_value(t).expect("tableau serializes")
}

fn record_csp(
    report: &mut VerificationReport,
    f: &IntPolynomial,
    d: &OrbitDecomposition<IncreasingTableau>,
    n: usize,
) -> Result<CspVerdict> {
    let verdict = csp_check(f, d, n)?;
    report.stat("ground_set_size", d.total);
    report.stat("orbit_lengths", d.length_profile());
    report.stat("orbit_count", d.orbits.len());
    report.stat("group_order", n);
    report.stat("promotion_order", d.order);
    report.stat("sieving_polynomial", f);
    report.stat("sieving_polynomial_at_1", f.eval_at_one().to_string());
    report.stat("fixed_point_counts", &verdict.fixed_point_counts);
    if let Some(bad) = verdict.first_failure() {
        report.fail(json!({ "csp_divisor_check": bad }));
    }
    Ok(verdict)
}

/// Everything needed to re-check a CSP verdict independently.
#[derive(Debug, Clone)]
pub struct CspInstance {
    pub polynomial: IntPolynomial,
    pub orbit_lengths: Vec<usize>,
    pub order: usize,
    pub verdict: CspVerdict,
}

fn csp_on(
    report: &mut VerificationReport,
    ground: &[IncreasingTableau],
    f: &IntPolynomial,
    n: usize,
) -> Result<CspInstance> {
    if let Some(w) = first_violation(ground, |t| {
        (k_promote_pow(t, n) != *t).then(|| json!({ "promotion_order_violation": tableau_json(t) }))
    }) {
        report.fail(w);
    }
    let d = orbit_decomposition(ground, k_promote)?;
    let verdict = record_csp(report, f, &d, n)?;
    Ok(CspInstance {
        polynomial: f.clone(),
        orbit_lengths: d.lengths(),
        order: n,
        verdict,
    })
}

/// `(Inc^{a+b}(a × b), ⟨K-promotion⟩, [a+b choose a]_q)`.
pub fn verify_rectangle_csp(a: u32, b: u32, budget: usize) -> Result<VerificationReport> {
    Ok(rectangle_csp_instance(a, b, budget)?.0)
}

pub fn rectangle_csp_instance(a: u32, b: u32, budget: usize) -> Result<(VerificationReport, CspInstance)> {
    let mut report = VerificationReport::new("rectangle").param("a", a).param("b", b);
    let ground = rectangle_ground(a, b, false, budget)?;
    let f = q_binomial((a + b) as usize, a as usize)?;
    let inst = csp_on(&mut report, &ground, &f, (a + b) as usize)?;
    Ok((report, inst))
}

/// `Inc^{a+b}(a × b)` is the disjoint union of its packed part and the
/// K-promotion orbit of the minimal tableau, which has `a + b` elements.
pub fn verify_decomposition(a: u32, b: u32, budget: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("decomposition").param("a", a).param("b", b);
    let all = rectangle_ground(a, b, false, budget)?;
    let packed = rectangle_ground(a, b, true, budget)?;
    let orbit = exceptional_orbit(a, b)?;
    report.stat("total", all.len());
    report.stat("packed", packed.len());
    report.stat("exceptional", orbit.len());
    report.stat("exceptional_orbit", &orbit.tableaux);

    if orbit.len() != (a + b) as usize {
        report.fail(json!({ "exceptional_orbit_length": orbit.len(), "expected": a + b }));
    }
    if let Some(t) = orbit.tableaux.iter().find(|t| t.is_packed_at_bound()) {
        report.fail(json!({ "packed_element_in_exceptional_orbit": tableau_json(t) }));
    }
    let all_set: BTreeSet<_> = all.iter().collect();
    let mut union: BTreeSet<_> = packed.iter().collect();
    for t in &orbit.tableaux {
        if !union.insert(t) {
            report.fail(json!({ "overlap": tableau_json(t) }));
        }
    }
    if let Some(t) = all_set.symmetric_difference(&union).next() {
        report.fail(json!({ "not_covered_exactly": tableau_json(t) }));
    }
    Ok(report)
}

/// `Θ ∘ K-promotion = rowmotion ∘ Θ` and `Θ⁻¹ ∘ Θ = id` on `Inc^{a+b}(a × b)`.
pub fn verify_equivariance(a: u32, b: u32, budget: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("equivariance").param("a", a).param("b", b);
    let ground = rectangle_ground(a, b, false, budget)?;
    report.stat("ground_set_size", ground.len());
    let violation = first_violation(&ground, |t| {
        let j = theta(t).ok()?;
        if theta_inv(&j) != *t {
            return Some(json!({ "theta_not_invertible_at": tableau_json(t) }));
        }
        let lhs = theta(&k_promote(t)).ok()?;
        let rhs = rowmotion(&j);
        (lhs != rhs).then(|| {
            json!({ "tableau": tableau_json(t), "theta_of_promotion": lhs.profile(), "rowmotion_of_theta": rhs.profile() })
        })
    });
    if let Some(w) = violation {
        report.fail(w);
    }
    let ideals: BTreeSet<_> = ground.iter().filter_map(|t| theta(t).ok()).collect();
    report.stat("distinct_ideals", ideals.len());
    if ideals.len() != ground.len() {
        report.fail(json!({ "theta_not_injective": ground.len() - ideals.len() }));
    }
    Ok(report)
}

/// `K-promotion^n = id` on the given ground set.
pub fn verify_promotion_order(claim: &str, ground: &[IncreasingTableau], n: usize) -> VerificationReport {
    let mut report = VerificationReport::new(claim).param("n", n);
    report.stat("ground_set_size", ground.len());
    if let Some(w) = first_violation(ground, |t| (k_promote_pow(t, n) != *t).then(|| tableau_json(t))) {
        report.fail(w);
    }
    report
}

/// Toggle-product promotion agrees with sliding promotion, K-evacuation is an
/// involution, and `ε ∘ ∂ = ∂⁻¹ ∘ ε`, element by element.
pub fn verify_toggle_dynamics(claim: &str, ground: &[IncreasingTableau]) -> VerificationReport {
    let mut report = VerificationReport::new(claim);
    report.stat("ground_set_size", ground.len());
    if let Some(w) = first_violation(ground, |t| {
        (k_promote_toggles(t) != k_promote(t)).then(|| json!({ "toggle_slide_disagreement": tableau_json(t) }))
    }) {
        report.fail(w);
    }
    if let Some(w) = first_violation(ground, |t| {
        (k_promote_inverse(&k_promote(t)) != *t).then(|| json!({ "inverse_promotion_failure": tableau_json(t) }))
    }) {
        report.fail(w);
    }
    if let Some(w) = first_violation(ground, |t| {
        let e = k_evacuate(t);
        if k_evacuate(&e) != *t {
            return Some(json!({ "evacuation_not_involution": tableau_json(t) }));
        }
        (k_evacuate(&k_promote(t)) != k_promote_inverse(&e))
            .then(|| json!({ "evacuation_conjugation_failure": tableau_json(t) }))
    }) {
        report.fail(w);
    }
    report
}

/// Packed `3 × k` tableaux with maximum entry `k + 3`.
pub fn packed_three_row(k: u32, budget: usize) -> Result<Vec<IncreasingTableau>> {
    if k < 2 {
        return Err(Error::Domain(format!("k must be at least 2, got {k}")));
    }
    rectangle_ground(3, k, true, budget)
}

/// `(Inc_Packed^{3+k}(3 × k), ⟨K-promotion⟩, f^{(2,2,2,1^{k-2})}(q))`
/// together with the equinumerosity with toothbrush tableaux.
pub fn verify_main_theorem(k: u32, budget: usize) -> Result<VerificationReport> {
    Ok(main_theorem_instance(k, budget)?.0)
}

pub fn main_theorem_instance(k: u32, budget: usize) -> Result<(VerificationReport, CspInstance)> {
    let mut report = VerificationReport::new("main").param("k", k);
    let ground = packed_three_row(k, budget)?;
    let toothbrush = Partition::toothbrush(k)?;
    let f = q_hook_polynomial(&toothbrush)?;
    let inst = csp_on(&mut report, &ground, &f, (k + 3) as usize)?;

    let syt_count = collect_within(enumerate_syt(&toothbrush), budget)?.len();
    let closed_form = binomial(k as u64 + 3, 3) - BigInt::from(k + 3);
    report.stat("toothbrush_shape", &toothbrush);
    report.stat("toothbrush_syt_count", syt_count);
    report.stat("binom_minus_exceptional", closed_form.to_string());
    if syt_count != ground.len() {
        report.fail(json!({ "packed_count": ground.len(), "toothbrush_syt_count": syt_count }));
    }
    if closed_form != BigInt::from(ground.len()) {
        report.fail(json!({ "packed_count": ground.len(), "binom_minus_exceptional": closed_form.to_string() }));
    }
    Ok((report, inst))
}

/// The toothbrush q-identity for every `k` in `2..=k_max`.
pub fn verify_identity(k_max: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("identity").param("k_max", k_max);
    if k_max < 2 {
        return Err(Error::Domain(format!("k_max must be at least 2, got {k_max}")));
    }
    let mut checked = 0;
    for k in 2..=k_max {
        let (lhs, rhs) = miracle_sides(k)?;
        checked += 1;
        if lhs != rhs {
            report.fail(json!({ "k": k, "hook_side": lhs, "binomial_side": rhs }));
            break;
        }
    }
    report.stat("values_checked", checked);
    Ok(report)
}

/// Rectangular standard tableaux under promotion with the q-hook polynomial
/// of the rectangle; group order `ab`.
pub fn verify_csp1(a: u32, b: u32, budget: usize) -> Result<VerificationReport> {
    Ok(csp1_instance(a, b, budget)?.0)
}

pub fn csp1_instance(a: u32, b: u32, budget: usize) -> Result<(VerificationReport, CspInstance)> {
    if a == 0 || b == 0 {
        return Err(Error::Domain(format!("rectangle needs a, b >= 1, got {a}x{b}")));
    }
    let mut report = VerificationReport::new("csp1").param("a", a).param("b", b);
    let shape = Partition::rectangle(a, b);
    let ground = collect_within(enumerate_syt(&shape), budget)?;
    let f = q_hook_polynomial(&shape)?;
    let inst = csp_on(&mut report, &ground, &f, (a * b) as usize)?;
    Ok((report, inst))
}

/// Packed two-row rectangles `Inc_Packed^m(2 × k)` with the pennant
/// polynomial `f^{(m-k, m-k, 1^{2k-m})}`; group order `m`.
pub fn verify_csp2(k: u32, m: u32, budget: usize) -> Result<VerificationReport> {
    Ok(csp2_instance(k, m, budget)?.0)
}

pub fn csp2_instance(k: u32, m: u32, budget: usize) -> Result<(VerificationReport, CspInstance)> {
    if k == 0 || m <= k || m > 2 * k {
        return Err(Error::Domain(format!(
            "pennant triple needs k < m <= 2k, got k={k}, m={m}"
        )));
    }
    let mut report = VerificationReport::new("csp2").param("k", k).param("m", m);
    let ground = collect_within(
        crate::enumeration::enumerate_increasing(&Partition::rectangle(2, k), m, true),
        budget,
    )?;
    let mut parts = vec![m - k, m - k];
    parts.extend(std::iter::repeat_n(1, (2 * k - m) as usize));
    let pennant = Partition::new(parts)?;
    report.stat("pennant_shape", &pennant);
    let f = q_hook_polynomial(&pennant)?;
    let inst = csp_on(&mut report, &ground, &f, m as usize)?;
    Ok((report, inst))
}

/// Packed hook shapes `Inc_Packed^m(r, 1^s)` with the product
/// `f^{(m-s, 1^s)} · f^{(m-r+1, 1^{r+s-m})}`; group order `m - 1`.
pub fn verify_csp3(r: u32, s: u32, m: u32, budget: usize) -> Result<VerificationReport> {
    Ok(csp3_instance(r, s, m, budget)?.0)
}

pub fn csp3_instance(r: u32, s: u32, m: u32, budget: usize) -> Result<(VerificationReport, CspInstance)> {
    if r == 0 || m <= s || r + s < m || m < 2 || m > r + s + 1 {
        return Err(Error::Domain(format!(
            "hook triple needs s < m <= r+s and m >= 2, got r={r}, s={s}, m={m}"
        )));
    }
    let mut report = VerificationReport::new("csp3")
        .param("r", r)
        .param("s", s)
        .param("m", m);
    let hook = |first: u32, legs: u32| {
        let mut parts = vec![first];
        parts.extend(std::iter::repeat_n(1, legs as usize));
        Partition::new(parts)
    };
    let shape = hook(r, s)?;
    let ground = collect_within(crate::enumeration::enumerate_increasing(&shape, m, true), budget)?;
    let left = hook(m - s, s)?;
    let right = hook(m - r + 1, r + s - m)?;
    report.stat("factor_shapes", [&left, &right]);
    let f = &q_hook_polynomial(&left)? * &q_hook_polynomial(&right)?;
    let inst = csp_on(&mut report, &ground, &f, (m - 1) as usize)?;
    Ok((report, inst))
}

/// For packed `a × b` tableaux with bound `a + b`, tries every single q-hook
/// polynomial `f^λ` with at most `max_boxes` cells and `f^λ(1)` equal to the
/// set size. Passes when none of them is a sieving polynomial.
pub fn verify_no_hook_sieve(a: u32, b: u32, max_boxes: u32, budget: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("no_hook_sieve")
        .param("a", a)
        .param("b", b)
        .param("max_boxes", max_boxes);
    let ground = rectangle_ground(a, b, true, budget)?;
    let d = orbit_decomposition(&ground, k_promote)?;
    let n = (a + b) as usize;
    report.stat("packed", ground.len());
    report.stat("orbit_lengths", d.length_profile());
    let target = BigInt::from(ground.len());
    let mut candidates = Vec::new();
    for size in 0..=max_boxes {
        for shape in Partition::all_of_size(size) {
            let f = q_hook_polynomial(&shape)?;
            if f.eval_at_one() != target {
                continue;
            }
            let sieves = csp_check(&f, &d, n)?.holds;
            candidates.push(json!({ "shape": shape, "sieves": sieves }));
            if sieves {
                report.fail(json!({ "sieving_hook_shape": shape }));
            }
        }
    }
    report.stat("candidate_shapes", candidates);
    Ok(report)
}

/// The three second-column entries of a toothbrush standard tableau.
pub fn syt_second_column_encoding(t: &IncreasingTableau, k: u32) -> Result<Vec<u32>> {
    let shape = Partition::toothbrush(k)?;
    if *t.shape() != shape || t.bound() != shape.size() || !t.is_packed_at_bound() {
        return Err(Error::Domain(format!("{t} is not a standard tableau of shape {shape}")));
    }
    Ok(t.rows()[..3].iter().map(|r| r[1]).collect())
}

/// Rebuilds the toothbrush tableau whose second column is `column`; the
/// first column holds the remaining values of `1..=k+4` in order.
pub fn syt_from_second_column(column: &[u32], k: u32) -> Result<IncreasingTableau> {
    let shape = Partition::toothbrush(k)?;
    let n = shape.size();
    let second: BTreeSet<u32> = column.iter().copied().collect();
    if second.len() != 3 || column.len() != 3 || second.iter().any(|&x| x < 1 || x > n) {
        return Err(Error::Domain(format!("{column:?} is not a 3-subset of 1..={n}")));
    }
    let first: Vec<u32> = (1..=n).filter(|x| !second.contains(x)).collect();
    let second: Vec<u32> = second.into_iter().collect();
    let rows = first
        .iter()
        .enumerate()
        .map(|(i, &x)| if i < 3 { vec![x, second[i]] } else { vec![x] })
        .collect();
    IncreasingTableau::new(shape, n, rows)
        .map_err(|_| Error::Domain(format!("{column:?} is not the second column of a standard tableau")))
}

/// 3-subsets of `{2, …, k+4}` that are not the second column of any
/// toothbrush standard tableau, lexicographically sorted.
pub fn exceptional_subsets(k: u32) -> Result<Vec<Vec<u32>>> {
    if k < 2 {
        return Err(Error::Domain(format!("k must be at least 2, got {k}")));
    }
    let mut family: Vec<Vec<u32>> = (4..=k + 4).map(|j| vec![2, 3, j]).collect();
    family.push(vec![2, 4, 5]);
    family.push(vec![3, 4, 5]);
    family.sort();
    Ok(family)
}

/// An explicit association list between two finite sets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BijectionTable {
    pub domain: String,
    pub codomain: String,
    pub pairs: Vec<(IncreasingTableau, IncreasingTableau)>,
    /// Lexicographic pairing of the exceptional orbit's subsets with the
    /// decremented exceptional second columns.
    pub patch: Vec<(Vec<u32>, Vec<u32>)>,
}

fn subset_of(t: &IncreasingTableau) -> Result<Vec<u32>> {
    Ok(ideal_to_subset(&theta(t)?))
}

/// Packed `3 × k` tableaux → toothbrush standard tableaux, through
/// `Θ`, the subset encoding, a lexicographic patch on the exceptional
/// families, and the inverse second-column encoding.
pub fn build_explicit_bijection(k: u32, budget: usize) -> Result<BijectionTable> {
    let packed = packed_three_row(k, budget)?;
    let orbit_subsets: BTreeSet<Vec<u32>> = exceptional_orbit(3, k)?
        .tableaux
        .iter()
        .map(subset_of)
        .collect::<Result<_>>()?;
    let shifted: BTreeSet<Vec<u32>> = exceptional_subsets(k)?
        .into_iter()
        .map(|s| s.into_iter().map(|x| x - 1).collect())
        .collect();

    let patch: Vec<(Vec<u32>, Vec<u32>)> = orbit_subsets.iter().cloned().zip(shifted.iter().cloned()).collect();
    // The permutation of the union sending the orbit family onto the shifted
    // family restricts, off the orbit family, to this pairing.
    let reroute: BTreeMap<Vec<u32>, Vec<u32>> = shifted
        .difference(&orbit_subsets)
        .cloned()
        .zip(orbit_subsets.difference(&shifted).cloned())
        .collect();

    let mut pairs = Vec::with_capacity(packed.len());
    for t in &packed {
        let s = subset_of(t)?;
        let target = reroute.get(&s).cloned().unwrap_or(s);
        let column: Vec<u32> = target.iter().map(|x| x + 1).collect();
        let syt = syt_from_second_column(&column, k)
            .map_err(|e| Error::Internal(format!("patched subset {column:?} not realizable: {e}")))?;
        pairs.push((t.clone(), syt));
    }

    let images: BTreeSet<_> = pairs.iter().map(|(_, s)| s).collect();
    let codomain = collect_within(enumerate_syt(&Partition::toothbrush(k)?), budget)?;
    if images.len() != pairs.len() || images.len() != codomain.len() || codomain.iter().any(|s| !images.contains(s)) {
        return Err(Error::Internal(format!("patched map for k={k} is not a bijection")));
    }
    Ok(BijectionTable {
        domain: format!("Inc_packed^{}(3x{k})", k + 3),
        codomain: format!("SYT{}", Partition::toothbrush(k)?),
        pairs,
        patch,
    })
}

/// Checks the bijection table and reports its size and patch size.
pub fn verify_bijection(k: u32, budget: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("bijection").param("k", k);
    let table = build_explicit_bijection(k, budget)?;
    report.stat("pairs", table.pairs.len());
    report.stat("patch_size", table.patch.len());
    if table.patch.len() != (k + 3) as usize {
        report.fail(json!({ "patch_size": table.patch.len(), "expected": k + 3 }));
    }
    let domain: BTreeSet<_> = table.pairs.iter().map(|(t, _)| t).collect();
    let image: BTreeSet<_> = table.pairs.iter().map(|(_, s)| s).collect();
    if domain.len() != table.pairs.len() || image.len() != table.pairs.len() {
        report.fail(json!({ "duplicate_entries": table.pairs.len() - domain.len().min(image.len()) }));
    }
    Ok(report)
}

fn maj_histogram(set: &[IncreasingTableau]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for t in set {
        *h.entry(t.major_index(DescentConvention::LowerRow)).or_default() += 1;
    }
    h
}

/// Whether a major-index-preserving bijection or a bijection intertwining
/// the two evacuations could exist between packed `3 × k` tableaux and
/// toothbrush standard tableaux. Passes when both are obstructed.
pub fn bijection_obstruction_report(k: u32, budget: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("obstructions").param("k", k);
    let inc = packed_three_row(k, budget)?;
    let syt = collect_within(enumerate_syt(&Partition::toothbrush(k)?), budget)?;
    report.stat("packed", inc.len());
    report.stat("toothbrush_syt", syt.len());

    let inc_maj = maj_histogram(&inc);
    let syt_maj = maj_histogram(&syt);
    report.stat("maj_multiset_packed", &inc_maj);
    report.stat("maj_multiset_toothbrush", &syt_maj);
    let maj_obstructed = inc_maj != syt_maj;
    report.stat("maj_obstructed", maj_obstructed);

    let inc_fixed = inc.par_iter().filter(|t| k_evacuate(t) == **t).count();
    let syt_fixed = syt.par_iter().filter(|t| k_evacuate(t) == **t).count();
    report.stat("evacuation_fixed_points_packed", inc_fixed);
    report.stat("evacuation_fixed_points_toothbrush", syt_fixed);
    let evac_obstructed = inc_fixed != syt_fixed;
    report.stat("evacuation_obstructed", evac_obstructed);

    if !maj_obstructed {
        report
            .review
            .push("maj multisets coincide; a maj-preserving bijection is not ruled out".into());
        report.fail(json!({ "maj_multisets_equal": inc_maj }));
    }
    if !evac_obstructed {
        report
            .review
            .push("evacuation fixed-point counts coincide; cycle types match".into());
        report.fail(json!({ "evacuation_fixed_points_equal": inc_fixed }));
    }
    Ok(report)
}
