//! Order, maximal element order and representation dimension data for the
//! families of finite simple groups and for `GL(n,q)`, with the derived
//! ratio `log|G| / log m₁(G)` and the bounded-rank thresholds.

mod family;
mod threshold;

pub use family::{exact_order, FamilyId, FamilyTag};
pub use threshold::{
    bounded_rank_threshold, psl_embedding_bookkeeping, threshold_report, PslEmbedding,
    ThresholdContribution, ThresholdReport, ThresholdScope,
};

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::config::Budgets;
use crate::groups::arith::ln_big;
use crate::groups::target::{max_cycle_type_order, TargetGroup};
use crate::groups::GroupDescriptor;

pub type Rational = Ratio<i64>;

pub(crate) fn ser_ratio<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

fn ser_opt_big<S: Serializer>(b: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match b {
        Some(b) => s.collect_str(b),
        None => s.serialize_none(),
    }
}

fn ser_big<S: Serializer>(b: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(b)
}

/// Size of `|G|` or `m₁(G)` as the atlas knows it.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Magnitude {
    Exact {
        #[serde(serialize_with = "ser_big")]
        value: BigUint,
    },
    /// `q^lo < x < q^hi`.
    Interval { lo: i64, hi: i64 },
    /// `x ≈ q^exponent` (asymptotic only).
    Approx { exponent: i64 },
    UpperBound { value: u64 },
    Unknown,
}

/// A value of `r(G)` or `r^FL(G)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RValue {
    Exact { value: u64 },
    /// `lo ≤ r ≤ hi`.
    Interval { lo: u64, hi: u64 },
    UpperBound { value: u64 },
}

impl RValue {
    pub fn upper(&self) -> u64 {
        match *self {
            RValue::Exact { value } | RValue::UpperBound { value } => value,
            RValue::Interval { hi, .. } => hi,
        }
    }

    pub fn lower(&self) -> u64 {
        match *self {
            RValue::Exact { value } => value,
            RValue::Interval { lo, .. } => lo,
            RValue::UpperBound { .. } => 1,
        }
    }

    /// `r ≤ r^FL ≤ r²` bracket derived from an `r` value.
    fn fl_bracket(&self) -> RValue {
        let u = self.upper();
        RValue::Interval {
            lo: self.lower(),
            hi: u * u,
        }
    }
}

/// A one-sided bound on the ratio `log|G| / log m₁(G)`.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct RatioBound {
    /// Exact rational value, when the bound is rational.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_ratio")]
    pub exact: Option<Rational>,
    pub value: f64,
    pub strict: bool,
}

fn ser_opt_ratio<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

impl RatioBound {
    fn rational(num: i64, den: i64, strict: bool) -> Self {
        let r = Rational::new(num, den);
        RatioBound {
            exact: Some(r),
            value: *r.numer() as f64 / *r.denom() as f64,
            strict,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Debug, Default, Serialize)]
pub struct RatioBounds {
    pub lower: Option<RatioBound>,
    pub upper: Option<RatioBound>,
}

/// One atlas row.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct AtlasEntry {
    pub family: FamilyId,
    pub order: Magnitude,
    #[serde(serialize_with = "ser_opt_big")]
    pub exact_order: Option<BigUint>,
    pub m1: Magnitude,
    /// `None` where the atlas records no value (`r` of `GL`).
    pub r: Option<RValue>,
    pub r_fl: RValue,
    /// `(n, q)` pairs excluded from the stated `r` value.
    pub r_exceptions: Vec<(u32, u64)>,
    /// Whether this member is one of the excluded pairs.
    pub exception_applies: bool,
    /// Rows whose data are asymptotic (`≈`).
    pub approx: bool,
    /// The source condition for the exception list is incomplete.
    pub truncated: bool,
    pub ratio_bounds: RatioBounds,
}

/// Lower bound on `log|Alt(n)| / log m₁(Alt(n))` using `n! ≥ (n/e)ⁿ` and
/// `log m₁(Alt(n)) ≤ log g(n) ≤ 1.05313·√(n log n)` (Landau's function).
pub fn alt_ratio_lower_bound(n: u32) -> f64 {
    let n = n as f64;
    (n * (n / std::f64::consts::E).ln() - std::f64::consts::LN_2) / (1.05313 * (n * n.ln()).sqrt())
}

fn interval(lo: i64, hi: i64) -> Magnitude {
    Magnitude::Interval { lo, hi }
}

fn approx(e: i64) -> Magnitude {
    Magnitude::Approx { exponent: e }
}

fn exact_r(v: u64) -> RValue {
    RValue::Exact { value: v }
}

/// The recorded data for a family member.
pub fn atlas_entry(f: &FamilyId) -> AtlasEntry {
    use FamilyTag::*;
    let n = f.rank() as i64;
    let nu = f.rank() as u64;
    let q = f.q;
    let mut e = AtlasEntry {
        family: *f,
        order: Magnitude::Unknown,
        exact_order: exact_order(f),
        m1: Magnitude::Unknown,
        r: None,
        r_fl: exact_r(1),
        r_exceptions: Vec::new(),
        exception_applies: false,
        approx: false,
        truncated: false,
        ratio_bounds: RatioBounds::default(),
    };
    let lie_upper = |num: i64, den: i64| (den > 0).then(|| RatioBound::rational(num, den, true));
    let in_exceptions = |list: &[(u32, u64)]| q.is_some_and(|q| list.contains(&(f.rank(), q)));
    match f.tag {
        Alt => {
            e.order = Magnitude::Exact {
                value: e.exact_order.clone().unwrap(),
            };
            e.m1 = Magnitude::Exact {
                value: BigUint::from(max_cycle_type_order(f.rank(), true)),
            };
            e.r = Some(if nu >= 9 {
                exact_r(nu - 2)
            } else {
                RValue::Interval { lo: 2, hi: nu - 2 }
            });
            e.ratio_bounds.lower = Some(RatioBound {
                exact: None,
                value: alt_ratio_lower_bound(f.rank()),
                strict: false,
            });
        }
        GL => {
            e.order = interval(n * n - 1, n * n);
            e.m1 = interval(n - 1, n + 1);
            e.r_fl = RValue::Interval {
                lo: nu.saturating_sub(2),
                hi: nu,
            };
            e.ratio_bounds = RatioBounds {
                lower: Some(RatioBound::rational(n - 1, 1, false)),
                upper: (n > 1).then(|| RatioBound::rational(n * n, n - 1, true)),
            };
        }
        A => {
            e.order = interval(n * n - 3, n * n + 2 * n + 1);
            e.m1 = interval(n - 2, n + 2);
            e.r_exceptions = vec![(1, 4), (1, 5), (2, 2)];
            e.exception_applies = in_exceptions(&e.r_exceptions);
            e.r = Some(if e.exception_applies {
                RValue::UpperBound { value: nu + 1 }
            } else {
                exact_r(nu + 1)
            });
            e.ratio_bounds = RatioBounds {
                lower: Some(RatioBound::rational(n * n - 3, n + 2, true)),
                upper: lie_upper(n * n + 2 * n + 1, n - 2),
            };
        }
        A2 => {
            e.order = interval(n * n + 2 * n - 1, n * n + 2 * n + 1);
            e.m1 = interval(n - 4, n + 1);
            e.r_exceptions = vec![(3, 2)];
            e.exception_applies = in_exceptions(&e.r_exceptions);
            e.r = Some(if e.exception_applies {
                RValue::UpperBound { value: nu + 1 }
            } else {
                exact_r(nu + 1)
            });
            e.ratio_bounds = RatioBounds {
                lower: Some(RatioBound::rational(n * n + 2 * n - 1, n + 1, true)),
                upper: lie_upper(n * n + 2 * n + 1, n - 4),
            };
        }
        B | C => {
            e.order = interval(2 * n * n + n - 2, 2 * n * n + n + 1);
            e.m1 = interval(n - 2, n + 2);
            e.r = Some(if f.tag == C || nu == 2 {
                exact_r(2 * nu)
            } else {
                match q {
                    Some(q) if q % 2 == 1 => exact_r(2 * nu + 1),
                    Some(_) => exact_r(2 * nu),
                    None => RValue::Interval {
                        lo: 2 * nu,
                        hi: 2 * nu + 1,
                    },
                }
            });
            e.ratio_bounds = RatioBounds {
                lower: Some(RatioBound::rational(2 * n * n + n - 2, n + 2, true)),
                upper: lie_upper(2 * n * n + n + 1, n - 2),
            };
        }
        D | D2 => {
            e.order = interval(2 * n * n - n - 2, 2 * n * n - n + 1);
            e.m1 = interval(n - 2, n + 2);
            if f.tag == D {
                e.r_exceptions = vec![(4, 2)];
                e.exception_applies = in_exceptions(&e.r_exceptions);
                e.truncated = true;
            }
            e.r = Some(if e.exception_applies {
                RValue::UpperBound { value: 2 * nu }
            } else {
                exact_r(2 * nu)
            });
            e.ratio_bounds = RatioBounds {
                lower: Some(RatioBound::rational(2 * n * n - n - 2, n + 2, true)),
                upper: lie_upper(2 * n * n - n + 1, n - 2),
            };
        }
        CyclicPrime => {
            match q {
                Some(p) => {
                    e.order = Magnitude::Exact {
                        value: BigUint::from(p),
                    };
                    e.m1 = e.order.clone();
                }
                None => {
                    e.order = approx(1);
                    e.m1 = approx(1);
                    e.approx = true;
                }
            }
            e.r = Some(exact_r(1));
            e.ratio_bounds.upper = Some(RatioBound::rational(248, 1, false));
        }
        Sporadic => {
            e.r = Some(RValue::UpperBound { value: 196883 });
            e.ratio_bounds.upper = Some(RatioBound::rational(196883, 1, false));
        }
        _ => {
            let (ord, m1, r) = match f.tag {
                E6 | E6Twisted => (78, 6, exact_r(27)),
                E7 => (133, 7, exact_r(56)),
                E8 => (248, 8, exact_r(248)),
                F4 => (52, 4, RValue::Interval { lo: 25, hi: 26 }),
                G2 => (14, 2, RValue::Interval { lo: 6, hi: 7 }),
                D4Triality => (28, 4, exact_r(8)),
                Suzuki => (5, 2, exact_r(4)),
                Ree => {
                    e.r_exceptions = vec![(0, 27)];
                    (2, 2, RValue::Exact { value: 7 })
                }
                ReeF4 => {
                    e.r_exceptions = vec![(0, 8)];
                    (26, 2, RValue::Exact { value: 26 })
                }
                _ => unreachable!(),
            };
            e.exception_applies = in_exceptions(&e.r_exceptions);
            e.order = approx(ord);
            e.m1 = approx(m1);
            e.r = Some(if e.exception_applies {
                RValue::UpperBound { value: r.upper() }
            } else {
                r
            });
            e.approx = true;
            e.ratio_bounds.upper = Some(RatioBound::rational(248, 1, false));
        }
    }
    if let Some(r) = e.r {
        if f.tag != GL {
            e.r_fl = r.fl_bracket();
        }
    }
    e
}

/// Exact `m₁` for a fixed family member, when a closed form applies or the
/// group is small enough to scan.
pub fn exact_m1(f: &FamilyId, budgets: &Budgets) -> Option<u64> {
    use FamilyTag::*;
    match (f.tag, f.q) {
        (Alt, _) => Some(max_cycle_type_order(f.rank(), true)),
        (CyclicPrime, Some(p)) => Some(p),
        (GL, Some(q)) => q.checked_pow(f.rank()).map(|x| x - 1),
        (A, Some(q)) => {
            let t = TargetGroup::new(GroupDescriptor::PSL(f.rank() + 1, q)).ok()?;
            t.m1_exact(budgets).ok()
        }
        _ => None,
    }
}

/// `x` compared with `q^e` for a possibly negative exponent: returns the
/// ordering of `x` relative to `q^e`.
fn cmp_pow(x: &BigUint, q: u64, e: i64) -> std::cmp::Ordering {
    if e >= 0 {
        x.cmp(&BigUint::from(q).pow(e as u32))
    } else {
        (x * BigUint::from(q).pow((-e) as u32)).cmp(&BigUint::from(1u32))
    }
}

/// `log a / log b` compared with the rational `r`, exactly: compares
/// `a^den` with `b^num`. Requires `a, b ≥ 2` and `r > 0`.
fn cmp_log_ratio(a: &BigUint, b: &BigUint, r: &Rational) -> std::cmp::Ordering {
    let (num, den) = (*r.numer(), *r.denom());
    if num <= 0 {
        return std::cmp::Ordering::Greater;
    }
    a.pow(den as u32).cmp(&b.pow(num as u32))
}

/// A single pass/fail line of an inequality audit.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct InequalityCheck {
    pub name: String,
    pub passed: bool,
}

/// Exact ratio data and bounds for a family member.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct RatioReport {
    pub family: FamilyId,
    /// `exact` when both ingredients are exact, else `interval`.
    pub tag: &'static str,
    #[serde(serialize_with = "ser_opt_big")]
    pub order: Option<BigUint>,
    pub m1: Option<u64>,
    pub value: Option<f64>,
    pub bounds: RatioBounds,
    pub checks: Vec<InequalityCheck>,
}

impl RatioReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn ratio_checks(order: &BigUint, m1: u64, bounds: &RatioBounds) -> Vec<InequalityCheck> {
    let mut out = Vec::new();
    let m1b = BigUint::from(m1);
    if m1 < 2 {
        return out;
    }
    for (side, bound) in [("lower", bounds.lower), ("upper", bounds.upper)] {
        let Some(b) = bound else { continue };
        let passed = match b.exact {
            Some(r) => {
                let c = cmp_log_ratio(order, &m1b, &r);
                match (side, b.strict) {
                    ("lower", true) => c.is_gt(),
                    ("lower", false) => c.is_ge(),
                    (_, true) => c.is_lt(),
                    (_, false) => c.is_le(),
                }
            }
            None => {
                let v = ln_big(order) / (m1 as f64).ln();
                if side == "lower" {
                    v >= b.value
                } else {
                    v <= b.value
                }
            }
        };
        out.push(InequalityCheck {
            name: format!("ratio {side} bound"),
            passed,
        });
    }
    out
}

/// The ratio `log|G| / log m₁(G)`: exact when both ingredients are exactly
/// computable, otherwise the recorded bounds.
pub fn ratio(f: &FamilyId, budgets: &Budgets) -> RatioReport {
    let entry = atlas_entry(f);
    let order = entry.exact_order.clone();
    let m1 = if order.is_some() { exact_m1(f, budgets) } else { None };
    let (value, checks) = match (&order, m1) {
        (Some(o), Some(m)) if m >= 2 => (
            Some(ln_big(o) / (m as f64).ln()),
            ratio_checks(o, m, &entry.ratio_bounds),
        ),
        _ => (None, Vec::new()),
    };
    RatioReport {
        family: *f,
        tag: if value.is_some() { "exact" } else { "interval" },
        order,
        m1,
        value,
        bounds: entry.ratio_bounds,
        checks,
    }
}

/// Audit of the recorded exponent bounds against exact values.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct InequalityReport {
    pub family: FamilyId,
    #[serde(serialize_with = "ser_opt_big")]
    pub order: Option<BigUint>,
    pub m1: Option<u64>,
    pub checks: Vec<InequalityCheck>,
}

impl InequalityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn violations(&self) -> Vec<&InequalityCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Checks `q^lo < |G| < q^hi`, `q^lo' < m₁ < q^hi'` and the ratio bounds
/// wherever exact values are available. Violations are reported, not raised.
pub fn verify_family_inequalities(f: &FamilyId, budgets: &Budgets) -> InequalityReport {
    let entry = atlas_entry(f);
    let order = entry.exact_order.clone();
    let m1 = if order.is_some() { exact_m1(f, budgets) } else { None };
    let mut checks = Vec::new();
    if let (Some(q), Some(o)) = (f.q, &order) {
        if let Magnitude::Interval { lo, hi } = entry.order {
            checks.push(InequalityCheck {
                name: format!("q^{lo} < |G|"),
                passed: cmp_pow(o, q, lo).is_gt(),
            });
            checks.push(InequalityCheck {
                name: format!("|G| < q^{hi}"),
                passed: cmp_pow(o, q, hi).is_lt(),
            });
        }
        if let (Magnitude::Interval { lo, hi }, Some(m)) = (&entry.m1, m1) {
            let mb = BigUint::from(m);
            checks.push(InequalityCheck {
                name: format!("q^{lo} < m1"),
                passed: cmp_pow(&mb, q, *lo).is_gt(),
            });
            checks.push(InequalityCheck {
                name: format!("m1 < q^{hi}"),
                passed: cmp_pow(&mb, q, *hi).is_lt(),
            });
        }
    }
    if let (Some(o), Some(m)) = (&order, m1) {
        checks.extend(ratio_checks(o, m, &entry.ratio_bounds));
    }
    InequalityReport {
        family: *f,
        order,
        m1,
        checks,
    }
}
