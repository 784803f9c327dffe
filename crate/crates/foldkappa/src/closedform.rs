//! Closed-form evaluation. Three families of polynomials in (n, g), each
//! with fractional coefficients that always cancel to integers, plus the
//! structural facts (monotonicity, plateau, symmetry) that make the folded
//! family useful as a budget curve.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{Report, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// f_n(g) = g(n+1) − g(g+1)/2 + 1: the folded-family budget curve.
    FnG,
    /// Extremal neighborhood size over g-subsets of the plain cube.
    ThetaQn,
    /// Component connectivity of the plain cube (value for g+1 components).
    CkappaQn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Only one formula applies (the folded family).
    Single,
    /// Low-g branch of a piecewise form.
    Low,
    /// High-g branch of a piecewise form.
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormulaValue {
    pub family: Family,
    pub n: u32,
    pub g: i64,
    pub value: i64,
    pub branch: Branch,
    /// False when (n, g) falls outside the range the formula is quoted for.
    /// Only the folded family evaluates out of range (with this flag down);
    /// the piecewise families refuse instead.
    pub in_domain: bool,
}

/// Halves an integer that is provably even, as all these polynomials are
/// after doubling: g(g+1) and g(g−1) are products of consecutive integers.
fn half(x: i64) -> i64 {
    debug_assert!(x % 2 == 0, "parity cancellation failed for {x}");
    x / 2
}

/// f_n(g) = g(n+1) − g(g+1)/2 + 1. Defined for every integer g; the quoted
/// domain of use is 0 ≤ g ≤ n+2 and values outside it carry `in_domain =
/// false` (and may be negative).
pub fn f(n: u32, g: i64) -> Result<FormulaValue> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let ni = n as i64;
    let value = g * (ni + 1) - half(g * (g + 1)) + 1;
    Ok(FormulaValue {
        family: Family::FnG,
        n,
        g,
        value,
        branch: Branch::Single,
        in_domain: (0..=ni + 2).contains(&g),
    })
}

/// Convenience accessor for in-domain use: the bare value of f_n(g).
pub fn f_value(n: u32, g: i64) -> i64 {
    f(n, g).map(|fv| fv.value).unwrap_or(i64::MIN)
}

/// Extremal neighborhood size of g-subsets of the plain n-cube:
/// −g²/2 + (n − 1/2)g + 1 for 1 ≤ g ≤ n+1, and
/// −g²/2 + (2n − 3/2)g − n² + 2 for n+2 ≤ g ≤ 2n.
pub fn theta_qn_formula(n: u32, g: i64) -> Result<FormulaValue> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let ni = n as i64;
    if !(1..=2 * ni).contains(&g) {
        return Err(Error::FormulaDomain(format!(
            "theta formula for the n-cube needs 1 <= g <= 2n = {}, got g = {g}",
            2 * ni
        )));
    }
    let (value, branch) = if g <= ni + 1 {
        (half(-g * g + 2 * ni * g - g + 2), Branch::Low)
    } else {
        (half(-g * g + 4 * ni * g - 3 * g - 2 * ni * ni + 4), Branch::High)
    };
    Ok(FormulaValue {
        family: Family::ThetaQn,
        n,
        g,
        value,
        branch,
        in_domain: true,
    })
}

/// Component connectivity of the plain n-cube, indexed so that the value is
/// the minimum cut size producing at least g+1 components:
/// −g²/2 + (n − 1/2)g + 1 for 1 ≤ g ≤ n (n ≥ 3), and
/// −g²/2 + (2n − 5/2)g − n² + 2n + 1 for n+1 ≤ g ≤ 2n−5 (n ≥ 6).
pub fn ckappa_qn_formula(n: u32, g: i64) -> Result<FormulaValue> {
    let ni = n as i64;
    let low = n >= 3 && (1..=ni).contains(&g);
    let high = n >= 6 && (ni + 1..=2 * ni - 5).contains(&g);
    if !low && !high {
        return Err(Error::FormulaDomain(format!(
            "component-connectivity formula for the n-cube is quoted only for \
             1 <= g <= n with n >= 3 or n+1 <= g <= 2n-5 with n >= 6; got n = {n}, g = {g}"
        )));
    }
    let (value, branch) = if low {
        (half(-g * g + 2 * ni * g - g + 2), Branch::Low)
    } else {
        (half(-g * g + 4 * ni * g - 5 * g - 2 * ni * ni + 4 * ni + 2), Branch::High)
    };
    Ok(FormulaValue {
        family: Family::CkappaQn,
        n,
        g,
        value,
        branch,
        in_domain: true,
    })
}

/// Checks the structural facts of the budget curve for one n:
/// (a) strictly increasing on 1..=n, (b) the plateau f(n) = f(n+1) =
/// n(n+1)/2 + 1, (c) the symmetry f(n−1) = f(n+2), (d) both plateau
/// neighbors sit strictly below the plateau. Empty ranges pass vacuously.
pub fn f_structure_facts(n: u32) -> Result<Report> {
    if n < 2 {
        return Err(Error::InvalidDimension(n as i64));
    }
    let start = std::time::Instant::now();
    let ni = n as i64;
    let val = |g: i64| f(n, g).unwrap().value;

    let mut failures: Vec<String> = Vec::new();

    let increasing = (1..ni).all(|g| val(g) < val(g + 1));
    if !increasing {
        failures.push("monotonicity on 1..=n-1 failed".into());
    }
    let plateau_value = ni * (ni + 1) / 2 + 1;
    let plateau = val(ni) == val(ni + 1) && val(ni) == plateau_value;
    if !plateau {
        failures.push(format!(
            "plateau failed: f({n}) = {}, f({}) = {}, expected both {plateau_value}",
            val(ni),
            ni + 1,
            val(ni + 1)
        ));
    }
    let symmetry = val(ni - 1) == val(ni + 2);
    if !symmetry {
        failures.push(format!(
            "symmetry failed: f({}) = {} but f({}) = {}",
            ni - 1,
            val(ni - 1),
            ni + 2,
            val(ni + 2)
        ));
    }
    let below = val(ni + 2) < val(ni) && (1..=ni - 2).all(|g| val(g) < val(ni - 1));
    if !below {
        failures.push("strictly-below-plateau facts failed".into());
    }

    let verdict = if failures.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let mut report = Report::new(
        format!("closed-form/f-structure/n={n}"),
        serde_json::json!({ "n": n }),
        verdict,
    )
    .computed(serde_json::json!({
        "increasing": increasing,
        "plateau": plateau,
        "plateau_value": plateau_value,
        "symmetry": symmetry,
        "below_plateau": below,
        "values": (0..=ni + 2).map(|g| val(g)).collect::<Vec<_>>(),
    }))
    .elapsed(start);
    if !failures.is_empty() {
        report = report.witness(serde_json::json!(failures));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folded_budget_curve_values() {
        assert_eq!(f_value(8, 1), 9);
        assert_eq!(f_value(8, 8), 37);
        assert_eq!(f_value(8, 9), 37);
        assert_eq!(f_value(5, 3), 13);
        assert_eq!(f_value(5, 1), 6);
        assert_eq!(f_value(5, 2), 10);
        // The symmetry pair at n = 5 sits at 15, not at the plateau value.
        assert_eq!(f_value(5, 4), 15);
        assert_eq!(f_value(5, 7), 15);
        assert_eq!(f_value(5, 5), 16);
        assert_eq!(f_value(5, 6), 16);
        assert_eq!(f_value(4, 3), 10);
    }

    #[test]
    fn folded_budget_curve_domain_flag() {
        assert!(f(5, 0).unwrap().in_domain);
        assert!(f(5, 7).unwrap().in_domain);
        assert!(!f(5, 8).unwrap().in_domain);
        assert!(!f(5, -1).unwrap().in_domain);
        assert!(f(0, 1).is_err());
        // Out-of-domain values can go negative but still evaluate.
        assert!(f(2, 9).unwrap().value < 0);
    }

    #[test]
    fn cube_theta_formula_branches() {
        let v = theta_qn_formula(4, 2).unwrap();
        assert_eq!((v.value, v.branch), (6, Branch::Low));
        let v = theta_qn_formula(4, 6).unwrap();
        assert_eq!((v.value, v.branch), (7, Branch::High));
        assert_eq!(theta_qn_formula(4, 1).unwrap().value, 4);
        assert_eq!(theta_qn_formula(5, 2).unwrap().value, 8);
        // Branch boundary: g = n+1 on the low side, g = n+2 on the high side.
        assert_eq!(theta_qn_formula(4, 5).unwrap().branch, Branch::Low);
        assert_eq!(theta_qn_formula(4, 6).unwrap().branch, Branch::High);
        assert!(theta_qn_formula(4, 0).is_err());
        assert!(theta_qn_formula(4, 9).is_err());
    }

    #[test]
    fn cube_ckappa_formula_branches() {
        assert_eq!(ckappa_qn_formula(3, 1).unwrap().value, 3);
        // Low branch coincides with the theta polynomial.
        assert_eq!(ckappa_qn_formula(4, 2).unwrap().value, 6);
        assert_eq!(ckappa_qn_formula(4, 4).unwrap().value, 7);
        let v = ckappa_qn_formula(6, 7).unwrap();
        assert_eq!((v.value, v.branch), (19, Branch::High));
        assert!(ckappa_qn_formula(2, 1).is_err());
        assert!(ckappa_qn_formula(4, 5).is_err());
        assert!(ckappa_qn_formula(5, 6).is_err());
        assert!(ckappa_qn_formula(6, 8).is_err());
        assert_eq!(ckappa_qn_formula(6, 6).unwrap().branch, Branch::Low);
        assert_eq!(ckappa_qn_formula(6, 7).unwrap().branch, Branch::High);
    }

    #[test]
    fn low_branches_agree_where_both_quoted() {
        for n in 3..=10u32 {
            for g in 1..=n as i64 {
                assert_eq!(
                    theta_qn_formula(n, g).unwrap().value,
                    ckappa_qn_formula(n, g).unwrap().value,
                    "n={n} g={g}"
                );
            }
        }
    }

    #[test]
    fn integrality_across_wide_sweep() {
        // half() debug-asserts evenness; this sweep would panic on any
        // parity failure.
        for n in 1..=24u32 {
            for g in -3..=(2 * n as i64 + 3) {
                let _ = f(n, g);
                if (1..=2 * n as i64).contains(&g) {
                    theta_qn_formula(n, g).unwrap();
                }
                let _ = ckappa_qn_formula(n, g);
            }
        }
    }

    #[test]
    fn structure_facts_pass_for_small_n() {
        for n in 2..=16 {
            let r = f_structure_facts(n).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "n={n}: {:?}", r.witness);
        }
        assert!(f_structure_facts(1).is_err());
    }
}
