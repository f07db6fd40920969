//! First/second-moment bookkeeping for extension counts, and the
//! Cauchy-Schwarz concentration checker built on it.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use serde::Serialize;

use crate::complex::Complex;
use crate::counting::transform::glue_double;
use crate::counting::{count_copies, count_extensions, enumerate_sub_copies};
use crate::error::Result;
use crate::graph::Vertex;

/// Exact moment data for extensions of copies of the induced subcomplex on
/// `shared` to full pattern copies.
#[derive(Clone, Debug)]
pub struct SecondMomentCheck {
    /// Sum over copies phi of ext(phi): equals the full copy count.
    pub s1: BigUint,
    /// Sum of ext(phi)^2: pairs of extensions of a common base copy.
    pub s2: BigUint,
    /// Copies of the glued double (two pattern copies identified on the
    /// shared part): the extension pairs that are disjoint outside the base.
    pub glued_count: BigUint,
    /// (t'-t)^2 n^(2t'-t-1): pairs meeting in some vertex outside the base.
    pub overlap_bound: BigUint,
    /// glued_count <= s2
    pub lower_ok: bool,
    /// s2 <= glued_count + overlap_bound
    pub upper_ok: bool,
}

/// Compute S1, S2, the glued-double count and the overlap bound, and check
/// the exact inequalities glued <= S2 <= glued + overlap.
pub fn second_moment_check(
    pattern: &Complex,
    class_map: &[usize],
    shared: &[Vertex],
    host: &Complex,
) -> Result<SecondMomentCheck> {
    let mut s1 = BigUint::ZERO;
    let mut s2 = BigUint::ZERO;
    let mut failure: Option<crate::error::Error> = None;
    enumerate_sub_copies(
        pattern,
        class_map,
        shared,
        host,
        |phi| match count_extensions(pattern, class_map, phi, host) {
            Ok(ext) => {
                s1 += &ext;
                s2 += &ext * &ext;
                ControlFlow::Continue(())
            }
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        },
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let glued = glue_double(pattern, shared)?;
    let glued_count = count_copies(&glued, class_map, host)?;
    let t_prime = pattern.num_vertices();
    let t = shared.len();
    let n = host.class_sizes().iter().copied().max().unwrap_or(0);
    let overlap_bound = if t_prime == t {
        BigUint::ZERO
    } else {
        BigUint::from((t_prime - t) * (t_prime - t))
            * BigUint::from(n).pow((2 * t_prime - t - 1) as u32)
    };
    let upper = &glued_count + &overlap_bound;
    Ok(SecondMomentCheck {
        lower_ok: glued_count <= s2,
        upper_ok: s2 <= upper,
        s1,
        s2,
        glued_count,
        overlap_bound,
    })
}

/// Outcome of the two-moment concentration check.
#[derive(Clone, Debug, Serialize)]
pub struct MomentReport {
    pub n: usize,
    /// Sum of values lies in (1 +- delta) A N.
    pub first_moment_ok: bool,
    /// Sum of squares lies in (1 +- delta) A^2 N.
    pub second_moment_ok: bool,
    /// Values outside [(1 - beta) A, (1 + beta) A].
    pub outliers: u64,
    pub outlier_fraction: f64,
    /// Premises hold and the outliers stay within beta N.
    pub pass: bool,
}

/// Check the two moment premises at tolerance `delta` and count the values
/// outside (1 +- beta) A. Passing needs both premises and at most beta N
/// outliers.
pub fn moment_concentration(values: &[f64], a: f64, delta: f64, beta: f64) -> MomentReport {
    let n = values.len();
    let nf = n as f64;
    let sum: f64 = values.iter().sum();
    let sum_sq: f64 = values.iter().map(|x| x * x).sum();
    let within = |value: f64, target: f64| -> bool {
        if target == 0.0 {
            value == 0.0
        } else {
            (value - target).abs() <= delta * target
        }
    };
    let first_moment_ok = within(sum, a * nf);
    let second_moment_ok = within(sum_sq, a * a * nf);
    let outliers = values
        .iter()
        .filter(|&&x| x < (1.0 - beta) * a || x > (1.0 + beta) * a)
        .count() as u64;
    let outlier_fraction = if n == 0 { 0.0 } else { outliers as f64 / nf };
    MomentReport {
        n,
        first_moment_ok,
        second_moment_ok,
        outliers,
        outlier_fraction,
        pass: first_moment_ok && second_moment_ok && outliers as f64 <= beta * nf,
    }
}
