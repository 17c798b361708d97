//! The counting identities over census tables.
//!
//! For weights `x_p` on an index window, with `y_p = x_p - x_{p-1}` and
//! `z_p = 2 x_p`, every census of a valid chart satisfies
//!
//! ```text
//! sum_{p,s} s x_p B(p,s) + sum_{q,d} d y_q T(q,d) + sum_{r,e} e z_r D(r,e) = 0
//! ```
//!
//! exactly, for every adequate window. The per-index balance behind it is
//! equation (*),
//!
//! ```text
//! B(p,+) - B(p,-) + 2(D(p,+) - D(p,-))
//!     = (T(p+1,+) - T(p+1,-)) - (T(p,+) - T(p,-)),
//! ```
//!
//! together with its telescoped consequences: the signed branch/singular
//! total vanishes, the triple-point differences are prefix sums, and
//! black-free charts balance their triple-point signs.
//!
//! Everything here is exact integer arithmetic; windows that do not cover a
//! census are a hard error rather than a silent zero-extension.

use std::collections::BTreeMap;

use crate::census::Census;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("weight window [{lo}, {hi}] does not cover census support [{need_lo}, {need_hi}]")]
    WindowTooSmall {
        lo: i64,
        hi: i64,
        need_lo: i64,
        need_hi: i64,
    },
    #[error("weight window [{lo}, {hi}] is empty or reversed")]
    EmptyWindow { lo: i64, hi: i64 },
    #[error("zero denominator in rational weight at index {0}")]
    ZeroDenominator(i64),
}

/// Integer weights `x_p` for `lo <= p <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSequence {
    lo: i64,
    hi: i64,
    x: Vec<i64>,
}

impl WeightSequence {
    pub fn from_values(lo: i64, values: Vec<i64>) -> Result<Self, WeightError> {
        if values.is_empty() {
            return Err(WeightError::EmptyWindow { lo, hi: lo - 1 });
        }
        let hi = lo + values.len() as i64 - 1;
        Ok(WeightSequence { lo, hi, x: values })
    }

    pub fn from_fn(lo: i64, hi: i64, mut f: impl FnMut(i64) -> i64) -> Result<Self, WeightError> {
        if hi < lo {
            return Err(WeightError::EmptyWindow { lo, hi });
        }
        Ok(WeightSequence {
            lo,
            hi,
            x: (lo..=hi).map(&mut f).collect(),
        })
    }

    pub fn constant(c: i64, lo: i64, hi: i64) -> Result<Self, WeightError> {
        Self::from_fn(lo, hi, |_| c)
    }

    /// `x_p = p`, so `y_p = 1`.
    pub fn linear(lo: i64, hi: i64) -> Result<Self, WeightError> {
        Self::from_fn(lo, hi, |p| p)
    }

    /// `x_p = p (p + 1) / 2`, so `y_p = p`.
    pub fn triangular(lo: i64, hi: i64) -> Result<Self, WeightError> {
        Self::from_fn(lo, hi, |p| p * (p + 1) / 2)
    }

    /// Rational weights scaled to integers by the common denominator.
    pub fn from_rationals(lo: i64, values: &[(i64, i64)]) -> Result<Self, WeightError> {
        fn gcd(a: i64, b: i64) -> i64 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        let mut scale: i64 = 1;
        for (i, &(_, den)) in values.iter().enumerate() {
            if den == 0 {
                return Err(WeightError::ZeroDenominator(lo + i as i64));
            }
            scale = scale / gcd(scale, den) * den.abs();
        }
        let scaled = values
            .iter()
            .map(|&(num, den)| num * (scale / den))
            .collect();
        Self::from_values(lo, scaled)
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn x(&self, p: i64) -> i64 {
        assert!(p >= self.lo && p <= self.hi, "index {p} outside window");
        self.x[(p - self.lo) as usize]
    }

    /// `y_p = x_p - x_{p-1}`, defined on `(lo, hi]`.
    pub fn derive_y(&self) -> BTreeMap<i64, i64> {
        (self.lo + 1..=self.hi)
            .map(|p| (p, self.x(p) - self.x(p - 1)))
            .collect()
    }

    /// `z_p = 2 x_p` on the whole window.
    pub fn derive_z(&self) -> BTreeMap<i64, i64> {
        (self.lo..=self.hi).map(|p| (p, 2 * self.x(p))).collect()
    }

    fn check_covers(&self, census: &Census) -> Result<(), WeightError> {
        if let Some((min, max)) = census.support_bounds() {
            if self.lo > min - 1 || self.hi < max {
                return Err(WeightError::WindowTooSmall {
                    lo: self.lo,
                    hi: self.hi,
                    need_lo: min - 1,
                    need_hi: max,
                });
            }
        }
        Ok(())
    }
}

/// The theorem's weighted total; zero for every census of a valid chart.
/// Accumulates in 128 bits so extreme weights stay exact.
pub fn weighted_sum(census: &Census, weights: &WeightSequence) -> Result<i64, WeightError> {
    weights.check_covers(census)?;
    let mut total = 0i128;
    for (&p, &(plus, minus)) in census.b_map() {
        total += weights.x(p) as i128 * (plus - minus) as i128;
    }
    for (&q, &(plus, minus)) in census.t_map() {
        let y = weights.x(q) as i128 - weights.x(q - 1) as i128;
        total += y * (plus - minus) as i128;
    }
    for (&r, &(plus, minus)) in census.d_map() {
        total += 2 * weights.x(r) as i128 * (plus - minus) as i128;
    }
    Ok(i64::try_from(total).expect("weighted total fits in 64 bits"))
}

/// Indices where equation (*) has something to say about a census.
fn star_window(census: &Census) -> Option<(i64, i64)> {
    census.support_bounds().map(|(min, max)| (min - 1, max))
}

/// Equation (*) at every relevant index.
pub fn check_star(census: &Census) -> BTreeMap<i64, bool> {
    let Some((lo, hi)) = star_window(census) else {
        return BTreeMap::new();
    };
    (lo..=hi)
        .map(|p| {
            let lhs = census.b_diff(p) + 2 * census.d_diff(p);
            let rhs = census.t_diff(p + 1) - census.t_diff(p);
            (p, lhs == rhs)
        })
        .collect()
}

pub fn star_holds(census: &Census) -> bool {
    check_star(census).values().all(|&ok| ok)
}

/// The constant-weights corollary: the signed branch-point total, extended
/// by twice the signed singular-point total, vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchSum {
    /// `sum_{p,s} s B(p,s)`
    pub branch_total: i64,
    /// `2 sum_{r,e} e D(r,e)`
    pub singular_total: i64,
    pub ok: bool,
}

pub fn corollary_branch_sum(census: &Census) -> BranchSum {
    let branch_total: i64 = census.b_map().keys().map(|&p| census.b_diff(p)).sum();
    let singular_total: i64 = census.d_map().keys().map(|&r| 2 * census.d_diff(r)).sum();
    BranchSum {
        branch_total,
        singular_total,
        ok: branch_total + singular_total == 0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartialSums {
    pub t_diff: i64,
    pub prefix: i64,
    pub neg_suffix: i64,
    pub ok: bool,
}

/// The prefix-sum corollary at every relevant index: the signed triple-point
/// count at `p` equals the signed branch/singular total below `p`, and also
/// minus the total at and above `p`.
pub fn corollary_partial_sums(census: &Census) -> BTreeMap<i64, PartialSums> {
    let Some((min, max)) = census.support_bounds() else {
        return BTreeMap::new();
    };
    let contrib = |i: i64| census.b_diff(i) + 2 * census.d_diff(i);
    let mut out = BTreeMap::new();
    for p in min..=max + 1 {
        let t_diff = census.t_diff(p);
        let prefix: i64 = (min..p).map(contrib).sum();
        let suffix: i64 = (p..=max).map(contrib).sum();
        out.insert(
            p,
            PartialSums {
                t_diff,
                prefix,
                neg_suffix: -suffix,
                ok: t_diff == prefix && t_diff == -suffix,
            },
        );
    }
    out
}

/// Outcome of the immersed-projection corollary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImmersedCheck {
    /// Some branch points exist, so the corollary says nothing.
    Vacuous,
    /// No branch points; reports whether `T(p,+) = T(p,-)` for all `p`.
    Applicable { holds: bool },
}

impl ImmersedCheck {
    pub fn holds_or_vacuous(self) -> bool {
        !matches!(self, ImmersedCheck::Applicable { holds: false })
    }
}

pub fn corollary_immersed(census: &Census) -> ImmersedCheck {
    if !census.is_black_free() {
        return ImmersedCheck::Vacuous;
    }
    let holds = census.t_map().values().all(|&(plus, minus)| plus == minus);
    ImmersedCheck::Applicable { holds }
}

/// One named corollary outcome, with both sides of the claimed equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryResult {
    pub claim: String,
    pub lhs: i64,
    pub rhs: i64,
    pub ok: bool,
}

/// Everything the identity engine can say about one census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub star_ok: BTreeMap<i64, bool>,
    /// One total per supplied weight sequence.
    pub weighted_totals: Vec<i64>,
    pub corollaries: Vec<CorollaryResult>,
    pub edge_count_ok: bool,
}

impl IdentityReport {
    pub fn all_ok(&self) -> bool {
        self.star_ok.values().all(|&ok| ok)
            && self.weighted_totals.iter().all(|&t| t == 0)
            && self.corollaries.iter().all(|c| c.ok)
            && self.edge_count_ok
    }
}

/// Run the full identity suite against a census.
pub fn full_report(
    census: &Census,
    weights: &[WeightSequence],
) -> Result<IdentityReport, WeightError> {
    let star_ok = check_star(census);
    let weighted_totals = weights
        .iter()
        .map(|w| weighted_sum(census, w))
        .collect::<Result<Vec<_>, _>>()?;
    let mut corollaries = Vec::new();
    let bs = corollary_branch_sum(census);
    corollaries.push(CorollaryResult {
        claim: "signed branch + singular total".into(),
        lhs: bs.branch_total + bs.singular_total,
        rhs: 0,
        ok: bs.ok,
    });
    for (p, ps) in corollary_partial_sums(census) {
        corollaries.push(CorollaryResult {
            claim: format!("partial sums at {p}"),
            lhs: ps.t_diff,
            rhs: ps.prefix,
            ok: ps.ok,
        });
    }
    match corollary_immersed(census) {
        ImmersedCheck::Vacuous => corollaries.push(CorollaryResult {
            claim: "immersed (vacuous)".into(),
            lhs: 0,
            rhs: 0,
            ok: true,
        }),
        ImmersedCheck::Applicable { holds } => corollaries.push(CorollaryResult {
            claim: "immersed: T(p,+) = T(p,-)".into(),
            lhs: holds as i64,
            rhs: 1,
            ok: holds,
        }),
    }
    Ok(IdentityReport {
        star_ok,
        weighted_totals,
        corollaries,
        edge_count_ok: crate::census::check_edge_count(census),
    })
}
