//! Monomial blow-up charts for the twist `g(t, y) = 1/y - psi(t)`.
//!
//! The charts follow a fixed recipe. With `n = max q_i`, blowing up the origin
//! `n` times gives the charts
//!
//! * `u_k` (k = 1..n): `t = u v`, `y = u^(k-1) v^k`,
//! * `~u_n`: `t = u`, `y = u^n v`.
//!
//! For `psi = mu t^-q` the pullback has exactly one bad point, `v = 1/mu` in
//! chart `u_(q+1)` (or `~u_n` when `q = n`). That chart is translated by
//! `v' = v - 1/mu` and the new origin is blown up `q` more times, giving the
//! primed charts `u'_s` (s = 1..q) and `~u'_q` with the same exponent pattern.
//! Primed indexing restarts at `s = 1`.

pub mod poly;

use std::fmt;

use crate::divisor_config::{validate, DivisorConfig};
use crate::error::{Error, Result};
use crate::exponent_order::ExponentialFactor;

pub use poly::{Gaussian, Poly2};

/// The twist `g = 1/y - psi(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistExpression {
    pub psi: ExponentialFactor,
}

/// `(x1, x2) = (u^a v^b, u^c v^d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialMap {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl MonomialMap {
    /// Chart `k` of an iterated point blow-up: `(u v, u^(k-1) v^k)`.
    pub fn standard(k: u32) -> Self {
        Self { a: 1, b: 1, c: k - 1, d: k }
    }

    /// Last chart of an `n`-fold blow-up: `(u, u^n v)`.
    pub fn tilde(n: u32) -> Self {
        Self { a: 1, b: 0, c: n, d: 1 }
    }

    pub fn determinant(&self) -> i64 {
        self.a as i64 * self.d as i64 - self.b as i64 * self.c as i64
    }

    /// The two coordinate functions as polynomials in the chart variables.
    pub fn apply(&self) -> (Poly2, Poly2) {
        (
            Poly2::monomial(Gaussian::one(), self.a, self.b),
            Poly2::monomial(Gaussian::one(), self.c, self.d),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChartLabel {
    Standard(u32),
    Tilde(u32),
    Primed(u32),
    PrimedTilde(u32),
}

impl fmt::Display for ChartLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartLabel::Standard(k) => write!(f, "u{k}"),
            ChartLabel::Tilde(k) => write!(f, "~u{k}"),
            ChartLabel::Primed(k) => write!(f, "u'{k}"),
            ChartLabel::PrimedTilde(k) => write!(f, "~u'{k}"),
        }
    }
}

/// A coordinate chart of the blown-up surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub label: ChartLabel,
    /// Monomial map from the first round of blow-ups.
    pub base: MonomialMap,
    /// Center `1/mu` of the translation `v' = v - 1/mu`, if the chart lives above it.
    pub translation: Option<Gaussian>,
    /// Monomial map of the second round of blow-ups, in translated coordinates.
    pub inner: Option<MonomialMap>,
    /// Points `(0, v0)` of this chart's exceptional line covered by another chart.
    pub excluded: Vec<Gaussian>,
}

impl Chart {
    fn plain(label: ChartLabel, base: MonomialMap) -> Self {
        Self {
            label,
            base,
            translation: None,
            inner: None,
            excluded: Vec::new(),
        }
    }

    /// `t` and `y` as polynomials in the chart coordinates `(u, v)`.
    pub fn coordinates(&self) -> (Poly2, Poly2) {
        let (bu, bv) = match (self.translation, self.inner) {
            (Some(c), Some(inner)) => {
                let (up, vp) = inner.apply();
                (up, &vp + &Poly2::constant(c))
            }
            _ => (Poly2::u(), Poly2::v()),
        };
        let (t, y) = self.base.apply();
        (t.compose(&bu, &bv), y.compose(&bu, &bv))
    }
}

/// `numerator / denominator`, both polynomials in the chart coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentExpression {
    pub numerator: Poly2,
    pub denominator: Poly2,
}

impl LaurentExpression {
    /// Splits into `u^-m v^-n * N'/D'` with `N'`, `D'` free of monomial factors.
    pub fn monomial_split(&self) -> (i64, i64, Poly2, Poly2) {
        let (na, nb) = self.numerator.monomial_content();
        let (da, db) = self.denominator.monomial_content();
        (
            da as i64 - na as i64,
            db as i64 - nb as i64,
            self.numerator.shift_down(na, nb),
            self.denominator.shift_down(da, db),
        )
    }
}

impl fmt::Display for LaurentExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// Local shape of a pulled-back twist at a point of the exceptional line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GoodForm {
    Holomorphic,
    Good { m: u32, n: u32, beta0: Gaussian },
    Bad,
}

impl GoodForm {
    pub fn is_bad(&self) -> bool {
        matches!(self, GoodForm::Bad)
    }
}

/// Pulls the twist back along a chart: `(t^q - mu y) / (y t^q)`, or `1/y` for `psi = 0`.
pub fn pullback(twist: &TwistExpression, chart: &Chart) -> Result<LaurentExpression> {
    let (t, y) = chart.coordinates();
    Ok(match twist.psi {
        ExponentialFactor::Zero => LaurentExpression {
            numerator: Poly2::one(),
            denominator: y,
        },
        ExponentialFactor::Polar { q, mu0 } => {
            let mu = Gaussian::from_polar(&mu0)?;
            let tq = t.pow(q);
            LaurentExpression {
                numerator: &tq - &y.scale(mu),
                denominator: &y * &tq,
            }
        }
    })
}

/// Classifies `expr` at the point `(0, v0)`.
pub fn is_good(expr: &LaurentExpression, v0: Gaussian) -> GoodForm {
    let (m, n, num, den) = expr.monomial_split();
    let d0 = den.eval_u0(v0);
    let Some(d0_inv) = d0.inv() else {
        return GoodForm::Bad;
    };
    let beta0 = num.eval_u0(v0) * d0_inv;
    let v_unit = !v0.is_zero();
    match (m, n) {
        (m, n) if m <= 0 && n <= 0 => GoodForm::Holomorphic,
        (m, _) if m <= 0 && v_unit => GoodForm::Holomorphic,
        (m, n) if m >= 0 && n >= 0 => {
            if beta0.is_zero() {
                GoodForm::Bad
            } else {
                GoodForm::Good { m: m as u32, n: n as u32, beta0 }
            }
        }
        (m, n) if m > 0 && n < 0 && v_unit => {
            // v^-n is a unit at v0 and is absorbed into beta
            let beta0 = beta0 * v0.pow((-n) as u32);
            if beta0.is_zero() {
                GoodForm::Bad
            } else {
                GoodForm::Good { m: m as u32, n: 0, beta0 }
            }
        }
        _ => GoodForm::Bad,
    }
}

// True when the univariate polynomial vanishes nowhere except at `excluded`.
fn nonvanishing_off(coeffs: &[Gaussian], excluded: &[Gaussian]) -> bool {
    let mut p = coeffs.to_vec();
    for e in excluded {
        p = poly::deflate(&p, *e).0;
    }
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p.len() == 1
}

/// Certifies a chart: the form at its origin, after checking that the unit
/// factor `beta(0, v)` has no zero and no pole on the chart's part of the
/// exceptional line.
pub fn certify_chart(expr: &LaurentExpression, chart: &Chart) -> GoodForm {
    let (m, n, num, den) = expr.monomial_split();
    let holomorphic = m <= 0 && n <= 0;
    if !nonvanishing_off(&den.restrict_u0(), &chart.excluded) {
        return GoodForm::Bad;
    }
    if !holomorphic && !nonvanishing_off(&num.restrict_u0(), &chart.excluded) {
        return GoodForm::Bad;
    }
    is_good(expr, Gaussian::zero())
}

/// Where the strict transform of a component meets the exceptional divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intersection {
    pub component: usize,
    pub chart: ChartLabel,
    pub point: (Gaussian, Gaussian),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub twist: TwistExpression,
    pub charts: Vec<Chart>,
    pub chart_forms: Vec<GoodForm>,
    pub intersections: Vec<Intersection>,
}

impl Resolution {
    pub fn chart(&self, label: ChartLabel) -> Option<&Chart> {
        self.charts.iter().find(|c| c.label == label)
    }
}

/// Runs the blow-up recipe for `twist` over `config`.
pub fn resolve(twist: &TwistExpression, config: &DivisorConfig) -> Result<Resolution> {
    validate(config)?;
    let n = config.max_pole_order().max(1);

    let mut charts: Vec<Chart> = (1..=n)
        .map(|k| Chart::plain(ChartLabel::Standard(k), MonomialMap::standard(k)))
        .chain(std::iter::once(Chart::plain(ChartLabel::Tilde(n), MonomialMap::tilde(n))))
        .collect();

    let base_chart_of = |q: u32| {
        if q < n {
            ChartLabel::Standard(q + 1)
        } else {
            ChartLabel::Tilde(n)
        }
    };

    if let ExponentialFactor::Polar { q, mu0 } = twist.psi {
        if q > n {
            return Err(Error::UnsupportedTwist(format!(
                "pole order {q} exceeds the maximal order {n} of the configuration"
            )));
        }
        let center = Gaussian::from_polar(&mu0)?
            .inv()
            .expect("polar coefficients are nonzero");
        let bad = base_chart_of(q);
        let base = charts
            .iter_mut()
            .find(|c| c.label == bad)
            .expect("base chart exists");
        base.excluded.push(center);
        let base_map = base.base;
        for s in 1..=q {
            charts.push(Chart {
                label: ChartLabel::Primed(s),
                base: base_map,
                translation: Some(center),
                inner: Some(MonomialMap::standard(s)),
                excluded: if s == 1 { vec![-center] } else { Vec::new() },
            });
        }
        charts.push(Chart {
            label: ChartLabel::PrimedTilde(q),
            base: base_map,
            translation: Some(center),
            inner: Some(MonomialMap::tilde(q)),
            excluded: Vec::new(),
        });
    }

    let mut chart_forms = Vec::with_capacity(charts.len());
    for chart in &charts {
        let form = certify_chart(&pullback(twist, chart)?, chart);
        if form.is_bad() {
            return Err(Error::ResolutionIncomplete {
                chart: chart.label.to_string(),
            });
        }
        chart_forms.push(form);
    }

    let mut intersections = Vec::new();
    for (idx, comp) in config.components.iter().enumerate() {
        if comp.kind != crate::divisor_config::ComponentKind::AtInfinity {
            continue;
        }
        let ExponentialFactor::Polar { q, mu0 } = comp.factor else {
            continue;
        };
        if comp.factor == twist.psi {
            intersections.push(Intersection {
                component: idx,
                chart: ChartLabel::PrimedTilde(q),
                point: (Gaussian::zero(), Gaussian::zero()),
            });
        } else {
            let mu = Gaussian::from_polar(&mu0)?;
            intersections.push(Intersection {
                component: idx,
                chart: base_chart_of(q),
                point: (Gaussian::zero(), mu.inv().expect("nonzero")),
            });
        }
    }

    Ok(Resolution {
        twist: *twist,
        charts,
        chart_forms,
        intersections,
    })
}

/// Strict transform of `mu y - t^q` in a chart: the total transform with the
/// powers of exceptional coordinate lines divided out.
pub fn strict_transform(q: u32, mu: Gaussian, chart: &Chart) -> Poly2 {
    let (t, y) = chart.coordinates();
    let f = &y.scale(mu) - &t.pow(q);
    let (a, b) = f.monomial_content();
    let (tu, tv) = t.monomial_content();
    let (yu, yv) = y.monomial_content();
    // a coordinate line is exceptional when both t and y vanish along it
    let a = if tu > 0 && yu > 0 { a } else { 0 };
    let b = if tv > 0 && yv > 0 { b } else { 0 };
    f.shift_down(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor_config::{ComponentKind, DivisorComponent};
    use crate::exponent_order::PolarCoefficient;
    use num_rational::Rational64;

    fn single(q: u32, mu: i64) -> DivisorConfig {
        DivisorConfig::new(
            1,
            vec![DivisorComponent {
                kind: ComponentKind::AtInfinity,
                label: "S".into(),
                factor: ExponentialFactor::polar(q, PolarCoefficient::real(mu)).unwrap(),
                phi_dim: 1,
            }],
        )
    }

    fn expr(num: Poly2, den: Poly2) -> LaurentExpression {
        LaurentExpression { numerator: num, denominator: den }
    }

    #[test]
    fn psi_zero_single_component() {
        let twist = TwistExpression { psi: ExponentialFactor::Zero };
        let res = resolve(&twist, &single(1, 1)).unwrap();
        let labels: Vec<_> = res.charts.iter().map(|c| c.label).collect();
        assert_eq!(labels, vec![ChartLabel::Standard(1), ChartLabel::Tilde(1)]);
        assert_eq!(
            res.chart_forms[1],
            GoodForm::Good { m: 1, n: 1, beta0: Gaussian::one() }
        );
    }

    #[test]
    fn pullback_examples() {
        let zero = TwistExpression { psi: ExponentialFactor::Zero };
        let identity = Chart::plain(ChartLabel::Standard(0), MonomialMap { a: 1, b: 0, c: 0, d: 1 });
        let e = pullback(&zero, &identity).unwrap();
        assert_eq!(e, expr(Poly2::one(), Poly2::v()));

        let k1 = Chart::plain(ChartLabel::Standard(1), MonomialMap::standard(1));
        let (m, n, num, den) = pullback(&zero, &k1).unwrap().monomial_split();
        assert_eq!((m, n, num, den), (0, 1, Poly2::one(), Poly2::one()));

        let tw = TwistExpression { psi: ExponentialFactor::inverse_t() };
        let tilde = Chart::plain(ChartLabel::Tilde(1), MonomialMap::tilde(1));
        let (m, n, num, den) = pullback(&tw, &tilde).unwrap().monomial_split();
        assert_eq!((m, n), (1, 1));
        assert_eq!(num, &Poly2::one() - &Poly2::v());
        assert_eq!(den, Poly2::one());
    }

    #[test]
    fn goodness_examples() {
        let uv = &Poly2::u() * &Poly2::v();
        let one_minus_v = &Poly2::one() - &Poly2::v();
        assert_eq!(
            is_good(&expr(Poly2::one(), uv.clone()), Gaussian::int(2)),
            GoodForm::Good { m: 1, n: 1, beta0: Gaussian::one() }
        );
        assert_eq!(is_good(&expr(one_minus_v.clone(), uv.clone()), Gaussian::one()), GoodForm::Bad);
        assert_eq!(
            is_good(&expr(one_minus_v, uv), Gaussian::int(2)),
            GoodForm::Good { m: 1, n: 1, beta0: Gaussian::int(-1) }
        );
        assert_eq!(is_good(&expr(Poly2::u(), Poly2::one()), Gaussian::zero()), GoodForm::Holomorphic);
    }

    #[test]
    fn inverse_t_on_worked_example_takes_two_blow_ups() {
        let tw = TwistExpression { psi: ExponentialFactor::inverse_t() };
        let res = resolve(&tw, &DivisorConfig::worked_example(1)).unwrap();
        let labels: Vec<_> = res.charts.iter().map(|c| c.label).collect();
        assert_eq!(
            labels,
            vec![
                ChartLabel::Standard(1),
                ChartLabel::Tilde(1),
                ChartLabel::Primed(1),
                ChartLabel::PrimedTilde(1)
            ]
        );
        assert!(res.chart_forms.iter().all(|f| !f.is_bad()));
        assert_eq!(res.chart_forms[3], GoodForm::Holomorphic);
        assert_eq!(res.intersections.len(), 1);
        assert_eq!(res.intersections[0].chart, ChartLabel::PrimedTilde(1));
        assert_eq!(res.intersections[0].point, (Gaussian::zero(), Gaussian::zero()));
    }

    #[test]
    fn intersection_point_is_inverse_coefficient() {
        let twist = TwistExpression { psi: ExponentialFactor::Zero };
        let res = resolve(&twist, &single(1, 5)).unwrap();
        let p = &res.intersections[0];
        assert_eq!(p.chart, ChartLabel::Tilde(1));
        assert_eq!(p.point.1, Gaussian::new(Rational64::new(1, 5), Rational64::from_integer(0)));
        let chart = res.chart(p.chart).unwrap();
        let st = strict_transform(1, Gaussian::int(5), chart);
        assert!(st.eval_u0(p.point.1).is_zero());
    }

    #[test]
    fn twist_above_max_order_is_rejected() {
        let tw = TwistExpression {
            psi: ExponentialFactor::polar(3, PolarCoefficient::real(1)).unwrap(),
        };
        assert!(matches!(resolve(&tw, &single(2, 1)), Err(Error::UnsupportedTwist(_))));
    }

    #[test]
    fn non_quarter_turn_coefficient_is_rejected() {
        let mu = PolarCoefficient::new(Rational64::from_integer(1), crate::angle::Angle::pi_frac(1, 3)).unwrap();
        let tw = TwistExpression { psi: ExponentialFactor::polar(1, mu).unwrap() };
        assert!(matches!(resolve(&tw, &single(1, 1)), Err(Error::UnsupportedTwist(_))));
    }
}
