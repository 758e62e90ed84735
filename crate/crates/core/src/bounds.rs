//! Closed-form order bounds for graphs of given neighbor-locating chromatic
//! number, the path formula, and the size formulas of the constructions.
//!
//! Everything is exact integer arithmetic on `u128`/`i128`; overflow is
//! reported rather than wrapped.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::graph::DegreeProfile;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("arithmetic overflow while evaluating {0}")]
    Overflow(&'static str),
}

type Result<T> = std::result::Result<T, BoundError>;

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(BoundError::Invalid(msg.into()))
}

/// `C(n, r)`, zero when `r > n`.
pub fn binomial(n: u64, r: u64) -> Result<u128> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc.checked_mul((n - i) as u128).ok_or(BoundError::Overflow("binomial"))? / (i as u128 + 1);
    }
    Ok(acc)
}

fn pow(base: u64, exp: u64, what: &'static str) -> Result<u128> {
    let exp = u32::try_from(exp).map_err(|_| BoundError::Overflow(what))?;
    (base as u128).checked_pow(exp).ok_or(BoundError::Overflow(what))
}

/// `k (2^{k-1} - 1)`: maximum order of an isolate-free graph with
/// neighbor-locating chromatic number `k`.
pub fn general_max_order(k: u64) -> Result<u128> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    let p = pow(2, k - 1, "general_max_order")?;
    (k as u128).checked_mul(p - 1).ok_or(BoundError::Overflow("general_max_order"))
}

/// `k Σ_{i=1}^{s} C(k-1, i)`: the number of distinct pairs `(f(u), N_f(u))`
/// available to vertices of degree between 1 and `s`.
pub fn nl_signature_capacity(k: u64, s: u64) -> Result<u128> {
    if k == 0 {
        return Ok(0);
    }
    let mut sum: u128 = 0;
    for i in 1..=s.min(k - 1) {
        sum = sum.checked_add(binomial(k - 1, i)?).ok_or(BoundError::Overflow("capacity"))?;
    }
    sum.checked_mul(k as u128).ok_or(BoundError::Overflow("capacity"))
}

/// `k Σ_{j=1}^{Δ} C(k-1, j)`, valid when `Δ ≤ k - 1`.
pub fn max_order_nl_maxdeg(k: u64, max_degree: u64) -> Result<u128> {
    if k == 0 || max_degree > k - 1 {
        return invalid(format!("maximum degree {max_degree} must be at most k - 1 = {}", k.saturating_sub(1)));
    }
    nl_signature_capacity(k, max_degree)
}

/// Which half of the average-degree bound applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AvgDegCase {
    /// `k ≤ ⌈d⌉`: `n < ⌈d⌉ k^{⌈d⌉-1}`.
    Strict,
    /// `k ≥ ⌈d⌉ + 1`: `n ≤ k Σ_{i=1}^{⌈d⌉} (⌈d⌉+1-i) C(k-1, i)`.
    NonStrict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AvgDegBound {
    pub value: u128,
    pub case: AvgDegCase,
    pub ceil_avg_degree: u64,
}

impl AvgDegBound {
    /// Whether an order `n` is consistent with the bound, using `<` or `≤`
    /// according to the case.
    pub fn admits(&self, n: u128) -> bool {
        match self.case {
            AvgDegCase::Strict => n < self.value,
            AvgDegCase::NonStrict => n <= self.value,
        }
    }

    pub fn comparison(&self) -> &'static str {
        match self.case {
            AvgDegCase::Strict => "<",
            AvgDegCase::NonStrict => "<=",
        }
    }
}

/// Order bound for a connected graph with neighbor-locating chromatic
/// number `k` and average degree `d`.
pub fn max_order_nl_avgdeg(k: u64, d: Ratio<u64>) -> Result<AvgDegBound> {
    if k < 2 {
        return invalid("k must be at least 2");
    }
    if d < Ratio::from_integer(1) {
        return invalid("average degree must be at least 1");
    }
    let a = d.ceil().to_integer();
    if k <= a {
        let value = (a as u128)
            .checked_mul(pow(k, a - 1, "max_order_nl_avgdeg")?)
            .ok_or(BoundError::Overflow("max_order_nl_avgdeg"))?;
        return Ok(AvgDegBound { value, case: AvgDegCase::Strict, ceil_avg_degree: a });
    }
    let mut sum: u128 = 0;
    for i in 1..=a {
        let term = ((a + 1 - i) as u128)
            .checked_mul(binomial(k - 1, i)?)
            .ok_or(BoundError::Overflow("max_order_nl_avgdeg"))?;
        sum = sum.checked_add(term).ok_or(BoundError::Overflow("max_order_nl_avgdeg"))?;
    }
    let value = sum.checked_mul(k as u128).ok_or(BoundError::Overflow("max_order_nl_avgdeg"))?;
    Ok(AvgDegBound { value, case: AvgDegCase::NonStrict, ceil_avg_degree: a })
}

/// Degree counts of a graph attaining the case-(ii) bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalProfile {
    /// degree `i` → `k C(k-1, i)` for `i = 1..=a`.
    pub counts: BTreeMap<u64, u128>,
    /// An extremal graph has maximum degree at most this value.
    pub max_degree_at_most: u64,
}

impl ExtremalProfile {
    /// Whether a concrete degree profile matches exactly.
    pub fn matches(&self, profile: &DegreeProfile) -> bool {
        let observed: BTreeMap<u64, u128> = profile
            .counts
            .iter()
            .enumerate()
            .filter(|&(i, &c)| i > 0 && c > 0)
            .map(|(i, &c)| (i as u64, c as u128))
            .collect();
        let expected: BTreeMap<u64, u128> = self.counts.iter().filter(|(_, &c)| c > 0).map(|(&i, &c)| (i, c)).collect();
        observed == expected && profile.count(0) == 0 && profile.max_degree as u64 <= self.max_degree_at_most
    }
}

pub fn extremal_degree_profile(k: u64, a: u64) -> Result<ExtremalProfile> {
    if k == 0 || a > k - 1 {
        return invalid(format!("a = {a} must be at most k - 1"));
    }
    let mut counts = BTreeMap::new();
    for i in 1..=a {
        let c = binomial(k - 1, i)?.checked_mul(k as u128).ok_or(BoundError::Overflow("extremal_degree_profile"))?;
        counts.insert(i, c);
    }
    Ok(ExtremalProfile { counts, max_degree_at_most: a + 1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PathChromatic {
    pub k: u64,
    /// True for `n ≤ 9`, where the value comes from exhaustive search
    /// rather than the `k ≥ 4` range formula.
    pub extension: bool,
}

/// Neighbor-locating chromatic number of the path `P_n`.
///
/// For `n ≥ 10` this is the unique `k ≥ 4` with
/// `(k-1)²(k-2)/2 < n ≤ k²(k-1)/2`.
pub fn path_nl_chromatic(n: u64) -> Result<PathChromatic> {
    match n {
        0 => invalid("path must have at least one vertex"),
        1 => Ok(PathChromatic { k: 1, extension: true }),
        2 => Ok(PathChromatic { k: 2, extension: true }),
        3..=9 => Ok(PathChromatic { k: 3, extension: true }),
        _ => {
            let upper = |k: u128| k * k * (k - 1) / 2;
            let mut k: u128 = 4;
            while upper(k) < n as u128 {
                k += 1;
            }
            debug_assert!((k - 1) * (k - 1) * (k - 2) / 2 < n as u128);
            Ok(PathChromatic { k: k as u64, extension: false })
        }
    }
}

/// Odd cycle length used for a prescribed neighbor-locating chromatic
/// number `r`: with `t = r(r-1)(r-2)/2`, `t` if odd, else `t - 1`.
pub fn suitable_odd_cycle_length(r: u64) -> Result<u64> {
    if r < 4 {
        return invalid("r must be at least 4");
    }
    let t = r * (r - 1) * (r - 2) / 2;
    Ok(if t % 2 == 1 { t } else { t - 1 })
}

/// `4 ⌊s²(s-1)/8⌋`, the order of the base path of the iterative family.
pub fn base_path_order(s: u64) -> Result<u64> {
    if s < 4 {
        return invalid("s must be at least 4");
    }
    Ok(4 * (s * s * (s - 1) / 8))
}

/// `n_i = ((i+1)/2) s^{i-1} n_1`.
pub fn family_order_formula(s: u64, i: u64) -> Result<u128> {
    if i == 0 {
        return invalid("level i must be at least 1");
    }
    let n1 = base_path_order(s)? as u128;
    let p = pow(s, i - 1, "family_order_formula")?;
    let twice = ((i + 1) as u128)
        .checked_mul(p)
        .and_then(|x| x.checked_mul(n1))
        .ok_or(BoundError::Overflow("family_order_formula"))?;
    // n_1 is a multiple of 4, so the halving is exact.
    Ok(twice / 2)
}

/// `⌊(Δ/4)(s^{Δ+1} - s^Δ - 8 s^{Δ-2})⌋`, a lower bound on the order of the
/// level-`(Δ-1)` family member.
pub fn family_lower_bound(max_degree: u64, s: u64) -> Result<u128> {
    if s < 4 {
        return invalid("s must be at least 4");
    }
    if max_degree < 2 {
        return invalid("maximum degree must be at least 2");
    }
    let big = pow(s, max_degree + 1, "family_lower_bound")?;
    let mid = pow(s, max_degree, "family_lower_bound")?;
    let small = pow(s, max_degree - 2, "family_lower_bound")?.checked_mul(8).ok_or(BoundError::Overflow("family_lower_bound"))?;
    let inner = big - mid - small;
    let scaled = inner.checked_mul(max_degree as u128).ok_or(BoundError::Overflow("family_lower_bound"))?;
    Ok(scaled / 4)
}

/// `½(k³ + k² - 2k) + 2(c - 1)` for cycle rank `c`.
pub fn cycle_rank_bound(k: u64, c: u64) -> Result<i128> {
    let k = k as i128;
    let cubic = k.checked_mul(k - 1).and_then(|x| x.checked_mul(k + 2)).ok_or(BoundError::Overflow("cycle_rank_bound"))?;
    Ok(cubic / 2 + 2 * (c as i128 - 1))
}

/// Named formulas exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    General,
    MaxDegree,
    AvgDegree,
    Extremal,
    Path,
    OddCycle,
    FamilyOrder,
    FamilyLowerBound,
    CycleRank,
}

impl Formula {
    pub const ALL: [Formula; 9] = [
        Formula::General,
        Formula::MaxDegree,
        Formula::AvgDegree,
        Formula::Extremal,
        Formula::Path,
        Formula::OddCycle,
        Formula::FamilyOrder,
        Formula::FamilyLowerBound,
        Formula::CycleRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formula::General => "general",
            Formula::MaxDegree => "maxdeg",
            Formula::AvgDegree => "avgdeg",
            Formula::Extremal => "extremal",
            Formula::Path => "path",
            Formula::OddCycle => "odd-cycle",
            Formula::FamilyOrder => "family-order",
            Formula::FamilyLowerBound => "family-lower-bound",
            Formula::CycleRank => "cycle-rank",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Formula {
    type Err = BoundError;

    fn from_str(s: &str) -> Result<Self> {
        Formula::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| BoundError::Invalid(format!("unknown formula {s:?}")))
    }
}

/// Inputs for [`evaluate`]; which fields are required depends on the formula.
#[derive(Debug, Clone, Default)]
pub struct BoundParams {
    pub k: Option<u64>,
    pub delta: Option<u64>,
    pub avg_degree: Option<Ratio<u64>>,
    pub n: Option<u64>,
    pub s: Option<u64>,
    pub i: Option<u64>,
    pub c: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub bound_name: String,
    pub parameters: BTreeMap<String, String>,
    /// Textual so that `i128`/`u128` values survive JSON untouched.
    pub value: String,
    /// `"<"` for strict bounds, `"<="` for non-strict ones, `"="` for exact values.
    pub comparison: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<AvgDegCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<BTreeMap<u64, String>>,
    /// Set when the report was evaluated against a concrete order `n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub satisfied: Option<bool>,
}

fn need(v: Option<u64>, name: &str) -> Result<u64> {
    v.ok_or_else(|| BoundError::Invalid(format!("missing parameter --{name}")))
}

pub fn evaluate(formula: Formula, p: &BoundParams) -> Result<BoundReport> {
    let mut parameters = BTreeMap::new();
    let mut put = |name: &str, v: &dyn fmt::Display| {
        parameters.insert(name.to_string(), v.to_string());
    };
    let report = |value: String, comparison: &'static str| BoundReport {
        bound_name: formula.name().to_string(),
        parameters: BTreeMap::new(),
        value,
        comparison,
        case: None,
        extension: None,
        profile: None,
        satisfied: None,
    };
    let check = |bound: u128, strict: bool| p.n.map(|n| if strict { (n as u128) < bound } else { n as u128 <= bound });
    let mut out = match formula {
        Formula::General => {
            let k = need(p.k, "k")?;
            put("k", &k);
            let v = general_max_order(k)?;
            let mut r = report(v.to_string(), "<=");
            r.satisfied = check(v, false);
            r
        }
        Formula::MaxDegree => {
            let k = need(p.k, "k")?;
            let d = need(p.delta, "delta")?;
            put("k", &k);
            put("delta", &d);
            let v = max_order_nl_maxdeg(k, d)?;
            let mut r = report(v.to_string(), "<=");
            r.satisfied = check(v, false);
            r
        }
        Formula::AvgDegree => {
            let k = need(p.k, "k")?;
            let d = p.avg_degree.ok_or_else(|| BoundError::Invalid("missing parameter --avgdeg".into()))?;
            put("k", &k);
            put("avgdeg", &d);
            let b = max_order_nl_avgdeg(k, d)?;
            let mut r = report(b.value.to_string(), b.comparison());
            r.case = Some(b.case);
            r.satisfied = p.n.map(|n| b.admits(n as u128));
            r
        }
        Formula::Extremal => {
            let k = need(p.k, "k")?;
            let a = need(p.delta, "delta")?;
            put("k", &k);
            put("a", &a);
            let prof = extremal_degree_profile(k, a)?;
            let total: u128 = prof.counts.values().sum();
            let mut r = report(total.to_string(), "=");
            r.profile = Some(prof.counts.iter().map(|(&i, c)| (i, c.to_string())).collect());
            r
        }
        Formula::Path => {
            let n = need(p.n, "n")?;
            put("n", &n);
            let pc = path_nl_chromatic(n)?;
            let mut r = report(pc.k.to_string(), "=");
            r.extension = Some(pc.extension);
            r
        }
        Formula::OddCycle => {
            let r_ = need(p.k, "k")?;
            put("r", &r_);
            report(suitable_odd_cycle_length(r_)?.to_string(), "=")
        }
        Formula::FamilyOrder => {
            let s = need(p.s.or(p.k), "s")?;
            let i = need(p.i, "i")?;
            put("s", &s);
            put("i", &i);
            report(family_order_formula(s, i)?.to_string(), "=")
        }
        Formula::FamilyLowerBound => {
            let s = need(p.s.or(p.k), "s")?;
            let d = need(p.delta, "delta")?;
            put("s", &s);
            put("delta", &d);
            let v = family_lower_bound(d, s)?;
            let mut r = report(v.to_string(), ">=");
            r.satisfied = p.n.map(|n| n as u128 >= v);
            r
        }
        Formula::CycleRank => {
            let k = need(p.k, "k")?;
            let c = need(p.c, "c")?;
            put("k", &k);
            put("c", &c);
            let v = cycle_rank_bound(k, c)?;
            let mut r = report(v.to_string(), "<=");
            r.satisfied = p.n.map(|n| (n as i128) <= v);
            r
        }
    };
    if let Some(n) = p.n {
        parameters.entry("n".into()).or_insert_with(|| n.to_string());
    }
    out.parameters = parameters;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_examples() {
        assert_eq!(general_max_order(3).unwrap(), 9);
        assert_eq!(general_max_order(1).unwrap(), 0);
        assert_eq!(general_max_order(4).unwrap(), 28);
        assert!(general_max_order(0).is_err());
    }

    #[test]
    fn maxdeg_examples() {
        assert_eq!(max_order_nl_maxdeg(4, 2).unwrap(), 24);
        assert_eq!(max_order_nl_maxdeg(5, 2).unwrap(), 50);
        for k in 2..20 {
            assert_eq!(max_order_nl_maxdeg(k, 1).unwrap(), (k * (k - 1)) as u128);
        }
        assert!(max_order_nl_maxdeg(4, 4).is_err());
    }

    #[test]
    fn avgdeg_examples() {
        let b = max_order_nl_avgdeg(4, Ratio::from_integer(2)).unwrap();
        assert_eq!((b.value, b.case), (36, AvgDegCase::NonStrict));
        let b = max_order_nl_avgdeg(3, Ratio::from_integer(5)).unwrap();
        assert_eq!((b.value, b.case), (405, AvgDegCase::Strict));
        assert!(!b.admits(405) && b.admits(404));
        // Across the case switch the value decreases: 4·4³ = 256 strict, then 215.
        assert_eq!(max_order_nl_avgdeg(4, Ratio::from_integer(4)).unwrap().value, 256);
        assert_eq!(max_order_nl_avgdeg(5, Ratio::from_integer(4)).unwrap().value, 215);
        // Planar regime, d just below 6.
        let b = max_order_nl_avgdeg(7, Ratio::new(599, 100)).unwrap();
        let display: u128 = 7 * (1..=6u64).map(|i| (7 - i) as u128 * binomial(6, i).unwrap()).sum::<u128>();
        assert_eq!(b.case, AvgDegCase::NonStrict);
        assert_eq!(b.value, display);
        assert_eq!(b.value, 1743);
    }

    #[test]
    fn extremal_examples() {
        let p = extremal_degree_profile(4, 2).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(1, 12), (2, 12)]));
        assert_eq!(p.max_degree_at_most, 3);
        assert_eq!(extremal_degree_profile(5, 2).unwrap().counts, BTreeMap::from([(1, 20), (2, 30)]));
        assert_eq!(extremal_degree_profile(6, 1).unwrap().counts, BTreeMap::from([(1, 30)]));
        assert!(extremal_degree_profile(3, 3).is_err());
    }

    #[test]
    fn path_examples() {
        assert_eq!(path_nl_chromatic(24).unwrap(), PathChromatic { k: 4, extension: false });
        assert_eq!(path_nl_chromatic(25).unwrap(), PathChromatic { k: 5, extension: false });
        assert_eq!(path_nl_chromatic(5).unwrap().k, 3);
        assert_eq!(path_nl_chromatic(10).unwrap().k, 4);
        assert_eq!(path_nl_chromatic(50).unwrap().k, 5);
        assert_eq!(path_nl_chromatic(51).unwrap().k, 6);
    }

    #[test]
    fn odd_cycle_examples() {
        assert_eq!(suitable_odd_cycle_length(4).unwrap(), 11);
        assert_eq!(suitable_odd_cycle_length(5).unwrap(), 29);
        assert_eq!(suitable_odd_cycle_length(6).unwrap(), 59);
        assert!(suitable_odd_cycle_length(3).is_err());
    }

    #[test]
    fn family_examples() {
        assert_eq!(base_path_order(4).unwrap(), 24);
        assert_eq!(base_path_order(5).unwrap(), 48);
        assert_eq!(family_order_formula(4, 1).unwrap(), 24);
        assert_eq!(family_order_formula(4, 2).unwrap(), 144);
        assert_eq!(family_order_formula(4, 3).unwrap(), 768);
        assert_eq!(family_lower_bound(3, 4).unwrap(), 120);
        assert!(family_lower_bound(3, 3).is_err());
        for s in 4..9 {
            for delta in 2..6 {
                assert!(family_order_formula(s, delta - 1).unwrap() >= family_lower_bound(delta, s).unwrap());
            }
        }
    }

    #[test]
    fn cycle_rank_formula() {
        // Trees: ½(k³+k²-2k) - 2.
        assert_eq!(cycle_rank_bound(4, 0).unwrap(), 34);
        assert_eq!(cycle_rank_bound(4, 1).unwrap(), 36);
    }

    #[test]
    fn monotone_in_k() {
        for k in 2..30u64 {
            assert!(general_max_order(k + 1).unwrap() >= general_max_order(k).unwrap());
            for d in 1..k {
                assert!(max_order_nl_maxdeg(k + 1, d).unwrap() >= max_order_nl_maxdeg(k, d).unwrap());
            }
            // The strict case is a much looser estimate, so the value drops
            // where the cases switch over; within one case it never does.
            for d in 1..8 {
                let a = max_order_nl_avgdeg(k, Ratio::from_integer(d)).unwrap();
                let b = max_order_nl_avgdeg(k + 1, Ratio::from_integer(d)).unwrap();
                if a.case == b.case {
                    assert!(b.value >= a.value, "k={k} d={d}");
                }
            }
        }
    }

    #[test]
    fn formula_names_round_trip() {
        for f in Formula::ALL {
            assert_eq!(f.name().parse::<Formula>().unwrap(), f);
        }
        let r = evaluate(Formula::Path, &BoundParams { n: Some(25), ..Default::default() }).unwrap();
        assert_eq!(r.value, "5");
        let r = evaluate(
            Formula::AvgDegree,
            &BoundParams { k: Some(3), avg_degree: Some(Ratio::from_integer(5)), n: Some(405), ..Default::default() },
        )
        .unwrap();
        assert_eq!((r.comparison, r.satisfied), ("<", Some(false)));
    }
}
