//! Blow-up charts on which the pulled-back twist is good, with the points where
//! the singular components meet the exceptional divisor.
//!
//! ```bash
//! cargo run --example blow_up_charts
//! ```

use stokes_core::divisor_config::DivisorConfig;
use stokes_core::exponent_order::ExponentialFactor;
use stokes_core::resolution::{pullback, resolve, GoodForm, TwistExpression};
use stokes_core::verify::pole_order_config;

fn report(cfg: &DivisorConfig, psi: ExponentialFactor) -> stokes_core::Result<()> {
    let twist = TwistExpression { psi };
    let res = resolve(&twist, cfg)?;
    println!("psi = {psi}");
    for (chart, form) in res.charts.iter().zip(&res.chart_forms) {
        let (t, y) = chart.coordinates();
        let shape = match form {
            GoodForm::Holomorphic => "holomorphic".to_string(),
            GoodForm::Good { m, n, beta0 } => {
                let pole: Vec<String> = [("u", *m), ("v", *n)]
                    .iter()
                    .filter(|(_, e)| *e > 0)
                    .map(|(x, e)| format!("{x}^-{e}"))
                    .collect();
                format!("{} · ({beta0} + ...)", pole.join(" "))
            }
            GoodForm::Bad => "bad".to_string(),
        };
        println!("  {:<5} t = {:<8} y = {:<12} {shape}", chart.label.to_string(), t.to_string(), y.to_string());
        println!("        pullback {}", pullback(&twist, chart)?);
    }
    for i in &res.intersections {
        println!("  component {} meets chart {} at ({}, {})", i.component, i.chart, i.point.0, i.point.1);
    }
    Ok(())
}

fn main() -> stokes_core::Result<()> {
    let cfg = DivisorConfig::worked_example(1);
    for psi in cfg.exponents() {
        report(&cfg, psi)?;
    }
    report(&pole_order_config(3)?, ExponentialFactor::Zero)?;
    Ok(())
}
