//! Plain-text link budget table.

use std::fmt::Write as _;

use vdemask_core::units::format_bandwidth;
use vdemask_core::{DecibelQuantity, Evaluation, Role};

#[derive(Debug, Clone, PartialEq)]
pub struct BudgetRow {
    pub name: String,
    pub value: f64,
    pub unit: String,
    /// Reference tag, empty for derived quantities.
    pub tag: &'static str,
}

fn unit_of(q: &DecibelQuantity) -> String {
    match q.ref_bandwidth() {
        Some(bw) => format!("{} per {}", q.kind(), format_bandwidth(bw)),
        None => q.kind().to_string(),
    }
}

struct Rows(Vec<BudgetRow>);

impl Rows {
    fn plain(&mut self, name: impl Into<String>, value: f64, unit: &str, tag: &'static str) {
        self.0.push(BudgetRow {
            name: name.into(),
            value,
            unit: unit.to_string(),
            tag,
        });
    }

    fn quantity(&mut self, name: impl Into<String>, q: DecibelQuantity, tag: &'static str) {
        let unit = unit_of(&q);
        self.plain(name, q.value(), &unit, tag);
    }
}

/// Every intermediate of the evaluation in a fixed order.
pub fn budget_rows(eval: &Evaluation) -> Vec<BudgetRow> {
    let mut r = Rows(Vec::new());
    r.plain(
        "T system noise temperature",
        eval.system_temperature,
        "dBK",
        "(2)",
    );

    for role in Role::ALL {
        let e = eval.role(role);
        let lim = &e.in_limit;
        let get = |k: &str| lim.intermediate(k).expect("I/N intermediates");
        r.quantity(format!("N noise floor, {role} rx"), e.noise, "(3)");
        r.quantity(
            format!("I/N limit at {role} rx input"),
            get("i_receiver"),
            "(4)",
        );
        r.quantity(
            format!("I/N limit at {role} antenna"),
            get("i_antenna"),
            "(5)",
        );
        r.quantity(
            format!("I/N limit at {role} antenna, reference bw"),
            lim.i_max,
            "(6)",
        );
    }

    r.quantity(
        "ECC field strength, reference bw",
        eval.ecc_field_reference,
        "",
    );
    r.quantity("ECC PFD threshold", eval.ecc_threshold, "(9)");

    r.plain("base station horizon", eval.base.horizon / 1e3, "km", "");
    r.plain(
        "mobile station horizon",
        eval.mobile.horizon / 1e3,
        "km",
        "",
    );
    r.plain("d link distance", eval.path.distance / 1e3, "km", "");
    r.plain("l free-space loss", eval.path.free_space_loss, "dB", "(17)");
    r.plain("dl excess loss", eval.path.excess_loss, "dB", "(18)");
    r.plain("L total path loss", eval.path.total_loss, "dB", "(19)");
    r.plain("wavelength", eval.wavelength, "m", "");

    for role in Role::ALL {
        let e = eval.role(role);
        let tx = role.counterpart();
        let lim = &e.ci_limit;
        let get = |k: &str| lim.intermediate(k).expect("C/I intermediates");
        r.quantity(
            format!("EIRP min, digital {tx} tx"),
            get("eirp_digital_tx"),
            "",
        );
        r.quantity(
            format!("C min, digital at {role} rx"),
            get("c_min_digital"),
            "(20)",
        );
        r.quantity(
            format!("EIRP min, analog {tx} tx"),
            get("eirp_analog_tx"),
            "",
        );
        r.quantity(
            format!("C min, analog at {role} rx"),
            get("c_min_analog"),
            "(20)",
        );
        r.quantity(
            format!("C/N digital, {role} rx"),
            get("c_over_n_digital"),
            "",
        );
        r.quantity(format!("C/N analog, {role} rx"), get("c_over_n_analog"), "");
        r.quantity(
            format!("required C/(N+I) digital, {role} rx"),
            get("zeta_d"),
            "(12)",
        );
        r.quantity(
            format!("C/I digital, {role} rx"),
            get("c_over_i_digital"),
            "(21)",
        );
        r.quantity(
            format!("I max digital, {role} rx"),
            get("i_max_digital"),
            "(22)",
        );
        r.quantity(
            format!("C/I analog, {role} rx"),
            get("c_over_i_analog"),
            "(23)",
        );
        r.quantity(
            format!("I max analog, {role} rx"),
            get("i_max_analog"),
            "(24)",
        );
        r.quantity(format!("I max combined, {role} rx"), lim.i_max, "(25)");
        r.quantity(
            format!("I max combined, {role} rx, reference bw"),
            e.ci_reference,
            "",
        );
    }
    r.0
}

/// Fixed-width rendering of [`budget_rows`].
pub fn render_budget(eval: &Evaluation) -> String {
    let rows = budget_rows(eval);
    let name_w = rows
        .iter()
        .map(|r| r.name.chars().count())
        .max()
        .unwrap_or(0);
    let unit_w = rows
        .iter()
        .map(|r| r.unit.chars().count())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<name_w$}  {:>10}  {:<unit_w$}  ref",
        "quantity", "value", "unit"
    );
    for r in &rows {
        // pad by chars so µ and ² don't skew the columns
        let name_pad = name_w - r.name.chars().count();
        let unit_pad = unit_w - r.unit.chars().count();
        let line = format!(
            "{}{}  {:>10.2}  {}{}  {}",
            r.name,
            " ".repeat(name_pad),
            r.value,
            r.unit,
            " ".repeat(unit_pad),
            r.tag
        );
        let _ = writeln!(out, "{}", line.trim_end());
    }
    out
}
