use rayon::prelude::*;
use serde::Serialize;

use super::catalog::{CatalogClass, TargetCatalog};
use super::detect::{detect, DetectionResult, ValueTag};
use crate::certify::{build_tj, common_multiple, verify_witness};
use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::groups::element_order;
use crate::words::{ball_with_budget, Presentation, Word};

#[derive(Clone, Debug)]
pub struct GrowthRow {
    pub m: usize,
    /// Maximum detection value over nontrivial elements of length ≤ m.
    pub value: u64,
    pub argmax: Word,
    /// Descriptor text of the group detecting `argmax`.
    pub witness_group: Option<String>,
    pub exhausted: bool,
    pub exact: bool,
}

impl GrowthRow {
    pub fn tag(&self) -> ValueTag {
        if self.exhausted {
            ValueTag::LowerBound
        } else if self.exact {
            ValueTag::Exact
        } else {
            ValueTag::UpperBound
        }
    }
}

#[derive(Clone, Debug)]
pub struct GrowthTable {
    pub class: CatalogClass,
    pub order_limit: u64,
    pub rows: Vec<GrowthRow>,
}

/// Growth function of `p` over `cat` for radii `1..=radius`.
///
/// Each ball element is detected once; row `m` takes the maximum over the
/// prefix of elements of length at most `m`.
pub fn growth(p: &Presentation, radius: usize, cat: &TargetCatalog, budgets: &Budgets) -> Result<GrowthTable> {
    if radius == 0 {
        return Err(Error::input("radius must be at least 1"));
    }
    let ball = ball_with_budget(p, radius, budgets)?;
    let results: Vec<DetectionResult> = ball
        .elements
        .par_iter()
        .map(|w| detect(w, p, cat, budgets))
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(radius);
    // (value, index of first argmax, any exact argmax, any exhausted)
    let mut best: Option<(u64, usize, bool, bool)> = None;
    let mut next = 0;
    for m in 1..=radius {
        let end = ball.within(m).len();
        for (i, r) in results.iter().enumerate().take(end).skip(next) {
            best = Some(match best {
                None => (r.value, i, r.exact, r.exhausted),
                Some((v, j, ex, exh)) => {
                    let exh = exh || r.exhausted;
                    if r.value > v {
                        (r.value, i, r.exact, exh)
                    } else if r.value == v {
                        (v, j, ex || r.exact, exh)
                    } else {
                        (v, j, ex, exh)
                    }
                }
            });
        }
        next = end;
        let Some((value, i, exact, exhausted)) = best else {
            return Err(Error::input("presentation has no nontrivial elements in the ball"));
        };
        let r = &results[i];
        rows.push(GrowthRow {
            m,
            value,
            argmax: r.word.clone(),
            witness_group: r.group().map(|g| g.descriptor.to_string()),
            exhausted,
            exact: exact && !exhausted,
        });
    }
    Ok(GrowthTable {
        class: cat.class,
        order_limit: cat.order_limit,
        rows,
    })
}

/// Whether `a ≤ b` holds for the true values behind two tagged rows:
/// `Some(true)` when proven, `Some(false)` when refuted, `None` otherwise.
fn dominated(a: &GrowthRow, b: &GrowthRow) -> Option<bool> {
    match (a.tag(), b.tag()) {
        // a's true value is ≤ its reported value, b's is ≥ its reported value
        (ValueTag::Exact | ValueTag::UpperBound, ValueTag::Exact | ValueTag::LowerBound) => {
            if a.value <= b.value {
                Some(true)
            } else if a.tag() == ValueTag::Exact && b.tag() == ValueTag::Exact {
                Some(false)
            } else {
                None
            }
        }
        // both reported numbers come from catalogs in which ALL contains
        // every GL and SIMPLE member, so the catalog values are comparable
        _ => Some(a.value <= b.value),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonRow {
    pub m: usize,
    pub all: (u64, ValueTag),
    pub gl: (u64, ValueTag),
    pub simple: (u64, ValueTag),
    pub all_le_gl: Option<bool>,
    pub all_le_simple: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassComparison {
    pub order_limit: u64,
    pub rows: Vec<ComparisonRow>,
}

impl ClassComparison {
    /// No row refutes either inequality.
    pub fn consistent(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.all_le_gl != Some(false) && r.all_le_simple != Some(false))
    }
}

/// Computes the three growth tables under a shared limit and checks
/// `D_ALL ≤ D_GL` and `D_ALL ≤ D_SIMPLE` row by row.
pub fn compare_classes(p: &Presentation, radius: usize, order_limit: u64, budgets: &Budgets) -> Result<ClassComparison> {
    let cats = [CatalogClass::All, CatalogClass::Gl, CatalogClass::Simple]
        .map(|c| super::catalog::build_catalog(c, order_limit));
    let [all, gl, simple] = cats;
    let (all, gl, simple) = (
        growth(p, radius, &all?, budgets)?,
        growth(p, radius, &gl?, budgets)?,
        growth(p, radius, &simple?, budgets)?,
    );
    let rows = (0..radius)
        .map(|i| {
            let (a, g, s) = (&all.rows[i], &gl.rows[i], &simple.rows[i]);
            ComparisonRow {
                m: a.m,
                all: (a.value, a.tag()),
                gl: (g.value, g.tag()),
                simple: (s.value, s.tag()),
                all_le_gl: dominated(a, g),
                all_le_simple: dominated(a, s),
            }
        })
        .collect();
    Ok(ClassComparison { order_limit, rows })
}

/// Least `C ≥ 1` with `f(m) ≤ C·g(C·m)` for every `m` where `C·m` is in
/// range, or `None` if no `C ≤ len` works. Inputs are indexed from `m = 1`.
pub fn dominance_constant(f: &[u64], g: &[u64]) -> Option<u64> {
    let len = f.len().min(g.len());
    (1..=len).find_map(|c| {
        (1..=len / c)
            .all(|m| f[m - 1] <= c as u64 * g[c * m - 1])
            .then_some(c as u64)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioPoint {
    pub j: usize,
    pub eta_length: usize,
    /// `‖η_j‖ / (‖γ₀‖ · j³)`.
    pub fitted_constant: f64,
    pub witnesses_valid: bool,
    pub group: Option<String>,
    pub group_order: Option<u64>,
    pub m1: Option<u64>,
    /// `ln|G_j| / ln m₁(G_j)`; `None` when `m₁ = 1` or detection failed.
    pub ratio: Option<f64>,
    pub gamma0_image_order: Option<u64>,
    /// How `group_order` relates to the least detecting order in the class.
    pub tag: ValueTag,
    pub exhausted: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioCurve {
    pub gamma: String,
    pub gamma0: String,
    pub points: Vec<RatioPoint>,
    /// Smallest constant `Ĉ` with `‖η_j‖ ≤ Ĉ‖γ₀‖j³` for all recorded `j`.
    pub fitted_constant: f64,
    /// Set when a detection was exhausted; later `j` are not attempted.
    pub truncated_at: Option<usize>,
}

/// For `j = 2..=j_max`, certifies a common multiple `η_j` of the set
/// `T_j` built from `γ` and `γ₀`, detects it in `cat` and records the
/// order-to-element-order ratio of the detecting group.
pub fn ratio_experiment(
    gamma: &Word,
    gamma0: &Word,
    j_max: usize,
    k_max: usize,
    p: &Presentation,
    cat: &TargetCatalog,
    budgets: &Budgets,
) -> Result<RatioCurve> {
    if cat.class == CatalogClass::All {
        return Err(Error::input("ratio experiment needs a GL or SIMPLE catalog"));
    }
    let mut points = Vec::new();
    let mut truncated_at = None;
    for j in 2..=j_max {
        let tj = build_tj(gamma, gamma0, j, k_max, p)?;
        let cm = common_multiple(&tj.elements, k_max, p)?;
        let eta = cm.word.clone();
        let det = detect(&eta, p, cat, budgets)?;
        let mut point = RatioPoint {
            j,
            eta_length: eta.len(),
            fitted_constant: eta.len() as f64 / (gamma0.len() * j.pow(3)) as f64,
            witnesses_valid: verify_witness(&cm).is_valid(),
            group: None,
            group_order: None,
            m1: None,
            ratio: None,
            gamma0_image_order: None,
            tag: det.tag(),
            exhausted: det.exhausted,
        };
        if let Some(h) = &det.witness {
            let g = h.target();
            let m1 = g.m1_exact(budgets)?;
            point.group = Some(g.descriptor.to_string());
            point.group_order = Some(det.value);
            point.m1 = Some(m1);
            point.ratio = (m1 > 1).then(|| (det.value as f64).ln() / (m1 as f64).ln());
            point.gamma0_image_order = Some(element_order(&h.evaluate(gamma0), budgets.order_cap)?);
        }
        points.push(point);
        if det.exhausted {
            truncated_at = Some(j);
            break;
        }
    }
    let fitted_constant = points.iter().map(|x| x.fitted_constant).fold(0.0, f64::max);
    Ok(RatioCurve {
        gamma: p.alphabet().render(gamma),
        gamma0: p.alphabet().render(gamma0),
        points,
        fitted_constant,
        truncated_at,
    })
}
