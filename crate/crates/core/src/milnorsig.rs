//! Vertical indices, the intersection form of `X`, and the signature of the
//! Milnor fiber `sigma(F) = sigma(X) + T - C`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{component_set, curve_milnor, ComponentSet, CurveError, ImageComponent};
use crate::germ::{
    corank, crosscap_number, double_curve_by_resultant, double_curve_equation, fold_normal_data,
    multipoint_data, triple_point_number, CurveRoute, Germ, GermError, TripleRoute,
};
use crate::mpoly::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("{stage}: {source}")]
    Germ {
        stage: &'static str,
        source: GermError,
    },
    #[error("{stage}: {source}")]
    Curve {
        stage: &'static str,
        source: CurveError,
    },
    #[error("overrides required for {stage}: {hint}")]
    OverridesRequired { stage: &'static str, hint: String },
    #[error("fold data missing: the vertical-index formula needs D_i . {{v = 0}}")]
    MissingFoldData,
    #[error("vertical index for image component {0} is unknown")]
    MissingVerticalIndex(ImageComponent),
    #[error("override validation failed: {0}")]
    ValidationFailed(String),
    #[error("sum rule violated: vertical indices sum to {lhs}, expected {rhs}")]
    SumRuleViolated { lhs: i64, rhs: i64 },
    #[error("mu(D) + C - 4T - 1 = {0} is not a non-negative even number")]
    ParityViolation(i64),
}

impl SignatureError {
    pub fn overrides_required(&self) -> bool {
        match self {
            SignatureError::OverridesRequired { .. } => true,
            SignatureError::Germ { source, .. } => source.overrides_required(),
            SignatureError::Curve { source, .. } => source.overrides_required(),
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    FoldFormula,
    SumRule,
    Override,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::FoldFormula => "fold formula",
            Provenance::SumRule => "sum rule",
            Provenance::Override => "override",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerticalIndex {
    pub component: ImageComponent,
    pub value: Option<i64>,
    pub provenance: Option<Provenance>,
}

/// One entry per image component, in the order of the component pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerticalIndexAssignment {
    pub entries: Vec<VerticalIndex>,
}

impl VerticalIndexAssignment {
    /// Every entry unknown.
    pub fn unknown(cs: &ComponentSet) -> Self {
        VerticalIndexAssignment {
            entries: cs
                .pairing
                .iter()
                .map(|&component| VerticalIndex {
                    component,
                    value: None,
                    provenance: None,
                })
                .collect(),
        }
    }

    pub fn get(&self, c: ImageComponent) -> Option<i64> {
        self.entries.iter().find(|e| e.component == c).and_then(|e| e.value)
    }

    pub fn missing(&self) -> Vec<ImageComponent> {
        self.entries
            .iter()
            .filter(|e| e.value.is_none())
            .map(|e| e.component)
            .collect()
    }

    /// Applies user-supplied values. A value that contradicts the fold
    /// formula is rejected.
    pub fn with_overrides(mut self, supplied: &[(ImageComponent, i64)]) -> Result<Self, SignatureError> {
        for &(c, value) in supplied {
            let c = match c {
                ImageComponent::Untwisted(i, j) => ImageComponent::untwisted(i, j),
                t => t,
            };
            let entry = self
                .entries
                .iter_mut()
                .find(|e| e.component == c)
                .ok_or_else(|| {
                    SignatureError::ValidationFailed(format!(
                        "vertical index given for {c}, which is not an image component"
                    ))
                })?;
            if entry.provenance == Some(Provenance::FoldFormula) && entry.value != Some(value) {
                return Err(SignatureError::ValidationFailed(format!(
                    "vertical index {value} for {c} contradicts the fold formula value {}",
                    entry.value.unwrap()
                )));
            }
            if entry.value.is_none() {
                entry.value = Some(value);
                entry.provenance = Some(Provenance::Override);
            }
        }
        Ok(self)
    }
}

/// `lambda_i = -sum_{k != i} D_i . D_k - D_i . {v = 0}` on a fold.
pub fn fold_lambdas(cs: &ComponentSet) -> Result<Vec<i64>, SignatureError> {
    let axis = cs.v_axis_mult.as_ref().ok_or(SignatureError::MissingFoldData)?;
    Ok((0..cs.components.len())
        .map(|i| -(cs.intersection[i].iter().sum::<u64>() as i64) - axis[i] as i64)
        .collect())
}

/// Vertical indices of a fold: `lambda_i + lambda_i'` for an untwisted
/// pair, `lambda_i` for a twisted component.
pub fn fold_vertical_indices(cs: &ComponentSet) -> Result<VerticalIndexAssignment, SignatureError> {
    let lambda = fold_lambdas(cs)?;
    let entries = cs
        .pairing
        .iter()
        .map(|&component| VerticalIndex {
            component,
            value: Some(component.members().iter().map(|&i| lambda[i]).sum()),
            provenance: Some(Provenance::FoldFormula),
        })
        .collect();
    Ok(VerticalIndexAssignment { entries })
}

/// `-sum_{i != k} D_i . D_k - C + 3T`, over ordered pairs.
pub fn sum_rule_total(cs: &ComponentSet, c: u64, t: u64) -> i64 {
    -(cs.ordered_pair_sum() as i64) - c as i64 + 3 * t as i64
}

/// Outcome of the sum rule for vertical indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SumRule {
    Holds { total: i64 },
    Solved { component: ImageComponent, value: i64 },
    /// Only possible when no entry comes from the fold formula.
    Violated { lhs: i64, rhs: i64 },
}

/// Verifies the sum rule, or uses it to solve for a single unknown entry.
pub fn complete_vertical_indices(
    partial: &VerticalIndexAssignment,
    cs: &ComponentSet,
    c: u64,
    t: u64,
) -> Result<(VerticalIndexAssignment, SumRule), SignatureError> {
    let rhs = sum_rule_total(cs, c, t);
    let known: i64 = partial.entries.iter().filter_map(|e| e.value).sum();
    let missing = partial.missing();
    match missing.as_slice() {
        [] => {
            if known == rhs {
                Ok((partial.clone(), SumRule::Holds { total: rhs }))
            } else if partial
                .entries
                .iter()
                .any(|e| e.provenance == Some(Provenance::FoldFormula))
            {
                Err(SignatureError::SumRuleViolated { lhs: known, rhs })
            } else {
                Ok((partial.clone(), SumRule::Violated { lhs: known, rhs }))
            }
        }
        [one] => {
            let value = rhs - known;
            let mut out = partial.clone();
            for e in out.entries.iter_mut().filter(|e| e.component == *one) {
                e.value = Some(value);
                e.provenance = Some(Provenance::SumRule);
            }
            Ok((
                out,
                SumRule::Solved {
                    component: *one,
                    value,
                },
            ))
        }
        many => Err(SignatureError::OverridesRequired {
            stage: "vertical indices",
            hint: format!(
                "{} entries unknown ({}); supply `vertical_indices`",
                many.len(),
                many.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            ),
        }),
    }
}

/// Symmetric integer matrix indexed by untwisted pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionForm {
    pub labels: Vec<(usize, usize)>,
    pub matrix: Vec<Vec<i64>>,
}

impl IntersectionForm {
    pub fn signature(&self) -> i64 {
        signature_of_form(&self.matrix)
    }
}

/// Diagonal `2 D_i . D_i' + vi`, off-diagonal the sum of the four
/// intersections between the two pairs.
pub fn build_intersection_form(
    cs: &ComponentSet,
    vi: &VerticalIndexAssignment,
) -> Result<IntersectionForm, SignatureError> {
    let labels = cs.untwisted_pairs();
    let d = |i: usize, j: usize| cs.intersection[i][j] as i64;
    let mut matrix = vec![vec![0i64; labels.len()]; labels.len()];
    for (a, &(i, i2)) in labels.iter().enumerate() {
        let c = ImageComponent::Untwisted(i, i2);
        let value = vi.get(c).ok_or(SignatureError::MissingVerticalIndex(c))?;
        matrix[a][a] = 2 * d(i, i2) + value;
        for (b, &(j, j2)) in labels.iter().enumerate().skip(a + 1) {
            let x = d(i, j) + d(i, j2) + d(i2, j) + d(i2, j2);
            matrix[a][b] = x;
            matrix[b][a] = x;
        }
    }
    Ok(IntersectionForm { labels, matrix })
}

/// `(positive, negative, zero)` inertia of a symmetric matrix, by exact
/// congruence diagonalization.
pub fn inertia(matrix: &[Vec<i64>]) -> (usize, usize, usize) {
    let mut a: Vec<Vec<Rational>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    let (mut pos, mut neg) = (0, 0);
    let mut live: Vec<usize> = (0..a.len()).collect();
    while !live.is_empty() {
        if let Some(&p) = live.iter().find(|&&i| !a[i][i].is_zero()) {
            let d = a[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            live.retain(|&i| i != p);
            for &j in &live {
                let f = &a[j][p] / &d;
                for &k in &live {
                    let delta = &f * &a[p][k];
                    a[j][k] -= delta;
                }
            }
            continue;
        }
        let pair = live
            .iter()
            .flat_map(|&i| live.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| i != j && !a[i][j].is_zero());
        let Some((p, q)) = pair else {
            break;
        };
        // the block [[0, b], [b, 0]] has one positive and one negative eigenvalue
        pos += 1;
        neg += 1;
        let b = a[p][q].clone();
        live.retain(|&i| i != p && i != q);
        let rows: Vec<(Rational, Rational)> = live.iter().map(|&j| (a[j][p].clone(), a[j][q].clone())).collect();
        for (x, &j) in live.iter().enumerate() {
            for (y, &k) in live.iter().enumerate() {
                let delta = (&rows[x].0 * &rows[y].1 + &rows[x].1 * &rows[y].0) / &b;
                a[j][k] -= delta;
            }
        }
    }
    (pos, neg, matrix.len() - pos - neg)
}

/// Number of positive minus number of negative eigenvalues.
pub fn signature_of_form(matrix: &[Vec<i64>]) -> i64 {
    let (p, n, _) = inertia(matrix);
    p as i64 - n as i64
}

/// `sigma(F) = sigma(X) + T - C`.
pub fn milnor_fiber_signature(c: u64, t: u64, sigma_x: i64) -> i64 {
    sigma_x + t as i64 - c as i64
}

/// `mu_I = (mu(D) + C - 4T - 1) / 2` and `b2 = mu(D) + 2C - 3T - 1`.
pub fn derived_invariants(mu_d: u64, c: u64, t: u64) -> Result<(u64, u64), SignatureError> {
    let (mu_d, c, t) = (mu_d as i64, c as i64, t as i64);
    let twice = mu_d + c - 4 * t - 1;
    if twice < 0 || twice % 2 != 0 {
        return Err(SignatureError::ParityViolation(twice));
    }
    let b2 = mu_d + 2 * c - 3 * t - 1;
    if b2 < 0 {
        return Err(SignatureError::ValidationFailed(format!("b2 = {b2} is negative")));
    }
    Ok(((twice / 2) as u64, b2 as u64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, status: CheckStatus, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            status,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub equation: String,
    /// `"twisted"` or `"untwisted"`.
    pub twist: String,
    /// 1-based index of the untwisted partner.
    pub partner: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerticalIndexReport {
    /// 1-based component indices of the image component.
    pub pair: Vec<usize>,
    pub value: Option<i64>,
    pub provenance: Option<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub name: String,
    pub corank: u8,
    #[serde(rename = "C")]
    pub c: u64,
    #[serde(rename = "T")]
    pub t: u64,
    #[serde(rename = "mu_D")]
    pub mu_d: u64,
    #[serde(rename = "mu_I")]
    pub mu_i: u64,
    pub b2: u64,
    pub components: Vec<ComponentReport>,
    pub intersection_table: Vec<Vec<u64>>,
    pub vertical_indices: Vec<VerticalIndexReport>,
    pub intersection_form: Vec<Vec<i64>>,
    #[serde(rename = "sigma_X")]
    pub sigma_x: i64,
    #[serde(rename = "sigma_F")]
    pub sigma_f: i64,
    pub checks: Vec<Check>,
}

impl SignatureReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn germ_stage(stage: &'static str) -> impl Fn(GermError) -> SignatureError {
    move |source| SignatureError::Germ { stage, source }
}

fn curve_stage(stage: &'static str) -> impl Fn(CurveError) -> SignatureError {
    move |source| SignatureError::Curve { stage, source }
}

/// Runs the full pipeline on `f`.
pub fn analyze(f: &Germ) -> Result<SignatureReport, SignatureError> {
    let k = corank(f);
    if k == 0 {
        return Err(germ_stage("corank")(GermError::Immersion));
    }
    let c = crosscap_number(f).map_err(germ_stage("cross-cap number"))?;
    let curve = double_curve_equation(f).map_err(germ_stage("double curve"))?;
    let cs = component_set(f, &curve).map_err(curve_stage("components"))?;
    let triple = triple_point_number(f).map_err(germ_stage("triple points"))?;
    let t = triple.value;
    let mut checks = Vec::new();

    let partial = if cs.v_axis_mult.is_some() {
        fold_vertical_indices(&cs)?
    } else {
        VerticalIndexAssignment::unknown(&cs)
    };
    let partial = partial.with_overrides(&f.overrides().vertical_indices)?;
    let vi = match complete_vertical_indices(&partial, &cs, c, t) {
        Ok((vi, rule)) => {
            checks.push(match rule {
                SumRule::Holds { total } => {
                    Check::new("sum_rule", CheckStatus::Pass, format!("sum of vertical indices = {total}"))
                }
                SumRule::Solved { component, value } => Check::new(
                    "sum_rule",
                    CheckStatus::Pass,
                    format!("solved for {component}: {value}"),
                ),
                SumRule::Violated { lhs, rhs } => Check::new(
                    "sum_rule",
                    CheckStatus::Fail,
                    format!("sum of vertical indices = {lhs}, expected {rhs}"),
                ),
            });
            vi
        }
        Err(e) if e.overrides_required() => {
            let blocking: Vec<_> = partial.missing().into_iter().filter(|m| !m.is_twisted()).collect();
            if !blocking.is_empty() {
                return Err(e);
            }
            checks.push(Check::new(
                "sum_rule",
                CheckStatus::Skipped,
                format!("{} twisted vertical indices unknown", partial.missing().len()),
            ));
            partial
        }
        Err(e) => return Err(e),
    };

    let form = build_intersection_form(&cs, &vi)?;
    let sigma_x = form.signature();
    let sigma_f = milnor_fiber_signature(c, t, sigma_x);
    let mu_d = curve_milnor(&cs.curve).map_err(curve_stage("milnor number"))?;
    let (mu_i, b2) = derived_invariants(mu_d, c, t)?;
    checks.push(Check::new(
        "parity",
        CheckStatus::Pass,
        format!("mu(D) + C - 4T - 1 = {}", 2 * mu_i),
    ));
    let rank = form.labels.len() as i64;
    checks.push(Check::new(
        "sigma_bound",
        if sigma_x.abs() <= rank { CheckStatus::Pass } else { CheckStatus::Fail },
        format!("|sigma(X)| = {} <= {rank}", sigma_x.abs()),
    ));
    checks.push(match multipoint_data(f) {
        Ok(mp) if mp.satisfies_identity(f) => {
            Check::new("divided_difference_identity", CheckStatus::Pass, "P and Q verified")
        }
        Ok(_) => Check::new("divided_difference_identity", CheckStatus::Fail, "identity does not hold"),
        Err(e) => Check::new("divided_difference_identity", CheckStatus::Skipped, e.to_string()),
    });
    checks.push(if fold_normal_data(f).is_some() && curve.route == CurveRoute::Fold {
        match double_curve_by_resultant(f) {
            Ok(res) if res.is_associate(&curve.equation) => {
                Check::new("double_curve_routes", CheckStatus::Pass, "fold and resultant curves agree")
            }
            Ok(res) => Check::new(
                "double_curve_routes",
                CheckStatus::Fail,
                format!("resultant route gives {res}"),
            ),
            Err(e) if e.overrides_required() => {
                Check::new("double_curve_routes", CheckStatus::Skipped, e.to_string())
            }
            Err(e) => Check::new("double_curve_routes", CheckStatus::Fail, e.to_string()),
        }
    } else {
        Check::new("double_curve_routes", CheckStatus::Skipped, "not a fold")
    });
    checks.push(Check::new(
        "triple_point_route",
        CheckStatus::Pass,
        match triple.route {
            TripleRoute::Fold => "triple-point space is empty",
            TripleRoute::TriplePointSpace => "length of the triple-point space divided by 6",
            TripleRoute::Override => "supplied",
        },
    ));

    let components = cs
        .components
        .iter()
        .enumerate()
        .map(|(i, h)| ComponentReport {
            equation: h.to_expr_string(),
            twist: if cs.partner(i).is_some() { "untwisted" } else { "twisted" }.into(),
            partner: cs.partner(i).map(|j| j + 1),
        })
        .collect();
    let vertical_indices = vi
        .entries
        .iter()
        .map(|e| VerticalIndexReport {
            pair: e.component.members().iter().map(|i| i + 1).collect(),
            value: e.value,
            provenance: e.provenance,
        })
        .collect();
    Ok(SignatureReport {
        name: f.name().to_string(),
        corank: k,
        c,
        t,
        mu_d,
        mu_i,
        b2,
        components,
        intersection_table: cs.intersection.clone(),
        vertical_indices,
        intersection_form: form.matrix,
        sigma_x,
        sigma_f,
        checks,
    })
}
