//! Linear relaxation of bit retrieval as an integer program in LP format.
//!
//! With binary variables b′ and b = b′ − 1/2, every disk |σ_j(b)| ≤ a_j is
//! relaxed to the square |Re σ_j(b)| ≤ a_j, |Im σ_j(b)| ≤ a_j, and σ₀ gives
//! the interval |σ₀(b)| ≤ a₀. Rows j and N − j coincide up to sign, so only
//! j ≤ (N − 1)/2 is emitted: 2N inequalities in all.

use std::f64::consts::PI;
use std::fmt::Write as _;

use bitretrieval::cyclotomic::RingElement;
use bitretrieval::solver::torus_moduli;
use bitretrieval::Result;

/// One two-sided row lo ≤ Σ coeffs·b′ ≤ hi.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub name: String,
    pub coeffs: Vec<f64>,
    pub lo: f64,
    pub hi: f64,
}

impl Constraint {
    pub fn satisfied_by(&self, bits: &[u8], tol: f64) -> bool {
        let v: f64 = self.coeffs.iter().zip(bits).map(|(c, &b)| c * f64::from(b)).sum();
        v >= self.lo - tol && v <= self.hi + tol
    }
}

fn row(name: String, coeffs: Vec<f64>, a: f64) -> Constraint {
    // −a ≤ Σ c (b′ − 1/2) ≤ a, with the constant moved to the bounds.
    let shift: f64 = coeffs.iter().sum::<f64>() / 2.0;
    Constraint {
        name,
        coeffs,
        lo: shift - a,
        hi: shift + a,
    }
}

/// The N independent two-sided rows for an autocorrelation α in R.
pub fn mip_constraints(alpha: &RingElement<f64>) -> Result<Vec<Constraint>> {
    let n = alpha.n();
    let a = torus_moduli(alpha)?;
    let angle = |i: usize, j: usize| 2.0 * PI * ((i * j) % n) as f64 / n as f64;
    let mut rows = vec![row("c0".into(), vec![1.0; n], a[0])];
    for i in 1..=(n - 1) / 2 {
        rows.push(row(format!("c{i}"), (0..n).map(|j| angle(i, j).cos()).collect(), a[i]));
        rows.push(row(format!("s{i}"), (0..n).map(|j| angle(i, j).sin()).collect(), a[i]));
    }
    Ok(rows)
}

/// Twelve significant digits in scientific notation.
fn num(x: f64) -> String {
    format!("{x:.11e}")
}

fn linear_form(coeffs: &[f64]) -> String {
    let mut out = String::new();
    for (j, &c) in coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let sign = if c < 0.0 { "-" } else { "+" };
        if out.is_empty() && c > 0.0 {
            write!(out, "{} b{j}", num(c)).unwrap();
        } else {
            write!(out, " {sign} {} b{j}", num(c.abs())).unwrap();
        }
    }
    out
}

/// LP-format model text. Each two-sided row becomes `<name>_lo` (≥) and
/// `<name>_hi` (≤); the objective is the constant zero.
pub fn emit_mip(alpha: &RingElement<f64>) -> Result<String> {
    let n = alpha.n();
    let rows = mip_constraints(alpha)?;
    let mut out = String::new();
    writeln!(out, "\\* bitretrieval N={n} *\\").unwrap();
    writeln!(out, "Minimize\n obj: 0 b0\nSubject To").unwrap();
    for r in &rows {
        let lhs = linear_form(&r.coeffs);
        writeln!(out, " {}_lo: {lhs} >= {}", r.name, num(r.lo)).unwrap();
        writeln!(out, " {}_hi: {lhs} <= {}", r.name, num(r.hi)).unwrap();
    }
    writeln!(out, "Binary").unwrap();
    let vars: Vec<String> = (0..n).map(|j| format!("b{j}")).collect();
    writeln!(out, " {}", vars.join(" ")).unwrap();
    writeln!(out, "End").unwrap();
    Ok(out)
}
