//! Parameter arithmetic for strongly regular graphs: the counting identity,
//! exact spectra, eigenvalue-multiplicity feasibility, and enumeration of
//! parameter families. All arithmetic is integer-exact; a feasibility verdict
//! must never depend on floating-point rounding.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamsError {
    #[error("valency {0} is odd; k(k-2) = 2(n-k-1) forces even k in this family")]
    OddValency(u64),
    #[error("parameters {0} violate k(k-lambda-1) = (n-k-1)mu")]
    IdentityViolation(SrgParams),
    #[error("parameters {0} require lambda >= 1 for triangle bookkeeping")]
    LambdaTooSmall(SrgParams),
    #[error("parameters {0} fail a divisibility requirement: {1}")]
    Indivisible(SrgParams, &'static str),
}

/// The tuple (n, k, lambda, mu).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub n: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    pub fn new(n: u64, k: u64, lambda: u64, mu: u64) -> Self {
        SrgParams { n, k, lambda, mu }
    }

    pub fn is_complete(&self) -> bool {
        self.n == self.k + 1
    }

    /// Basic feasibility bounds, checked before any spectral arithmetic.
    pub fn bounds_ok(&self) -> bool {
        self.n > self.k && self.k >= 1 && self.lambda < self.k && self.mu <= self.k
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "srg({},{},{},{})", self.n, self.k, self.lambda, self.mu)
    }
}

/// k(k - lambda - 1) == (n - k - 1) mu, vacuous for complete graphs.
pub fn check_identity(p: &SrgParams) -> bool {
    if p.is_complete() {
        return true;
    }
    let lhs = p.k as u128 * (p.k as u128).saturating_sub(p.lambda as u128 + 1);
    let rhs = (p.n as u128 - p.k as u128 - 1) * p.mu as u128;
    p.k > p.lambda && lhs == rhs
}

/// Order of the lambda = 1, mu = 2 family member with valency `k`:
/// n = k(k-2)/2 + k + 1. Odd k cannot satisfy the identity.
pub fn family_order(k: u64) -> Result<u64, ParamsError> {
    if !k.is_multiple_of(2) || k < 2 {
        return Err(ParamsError::OddValency(k));
    }
    Ok(k * (k - 2) / 2 + k + 1)
}

/// A non-principal eigenvalue, exactly: either an integer or the quadratic
/// irrational (base ± sqrt(disc)) / 2 with non-square disc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Eigenvalue {
    Integer {
        value: i64,
    },
    Surd {
        base: i64,
        disc: u64,
        positive_root: bool,
    },
}

impl std::fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Eigenvalue::Integer { value } => write!(f, "{value}"),
            Eigenvalue::Surd {
                base,
                disc,
                positive_root,
            } => {
                write!(
                    f,
                    "({} {} sqrt({}))/2",
                    base,
                    if *positive_root { '+' } else { '-' },
                    disc
                )
            }
        }
    }
}

/// The two non-principal eigenvalues r > s and, when both are non-negative
/// integers, their multiplicities (f, g).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub r: Eigenvalue,
    pub s: Eigenvalue,
    /// (f, g) = multiplicities of r and s; present exactly when the spectrum
    /// passes the integrality requirement (conference graphs included).
    pub multiplicities: Option<(u64, u64)>,
}

impl Spectrum {
    pub fn integral(&self) -> bool {
        self.multiplicities.is_some()
    }

    /// r + s, always an integer (= lambda - mu).
    pub fn eigen_sum(&self) -> i64 {
        match (self.r, self.s) {
            (Eigenvalue::Integer { value: r }, Eigenvalue::Integer { value: s }) => r + s,
            (Eigenvalue::Surd { base, .. }, Eigenvalue::Surd { .. }) => base,
            _ => unreachable!("r and s always share a form"),
        }
    }

    /// r * s, always an integer (= mu - k).
    pub fn eigen_product(&self) -> i64 {
        match (self.r, self.s) {
            (Eigenvalue::Integer { value: r }, Eigenvalue::Integer { value: s }) => r * s,
            (Eigenvalue::Surd { base, disc, .. }, Eigenvalue::Surd { .. }) => {
                (base * base - disc as i64) / 4
            }
            _ => unreachable!("r and s always share a form"),
        }
    }

    /// k + f*r + g*s, exactly; `None` when the spectrum is not integral.
    /// For the irrational conference case the surd parts cancel because
    /// f == g, leaving (2k + (f + g) * base) / 2.
    pub fn trace_residual(&self, k: u64) -> Option<i128> {
        let (f, g) = self.multiplicities?;
        match (self.r, self.s) {
            (Eigenvalue::Integer { value: r }, Eigenvalue::Integer { value: s }) => {
                Some(k as i128 + f as i128 * r as i128 + g as i128 * s as i128)
            }
            (Eigenvalue::Surd { base, .. }, Eigenvalue::Surd { .. }) => {
                if f != g {
                    return None;
                }
                Some((2 * k as i128 + (f + g) as i128 * base as i128) / 2)
            }
            _ => unreachable!("r and s always share a form"),
        }
    }
}

fn exact_sqrt(d: u64) -> Option<u64> {
    let t = d.isqrt();
    (t * t == d).then_some(t)
}

/// Exact spectrum of a parameter set satisfying the identity.
///
/// D = (lambda - mu)^2 + 4(k - mu); r, s = ((lambda - mu) ± sqrt(D)) / 2;
/// f, g = ((n - 1) ∓ (2k + (n-1)(lambda - mu)) / sqrt(D)) / 2.
pub fn spectrum_of(p: &SrgParams) -> Result<Spectrum, ParamsError> {
    if !check_identity(p) || !p.bounds_ok() {
        return Err(ParamsError::IdentityViolation(*p));
    }
    let diff = p.lambda as i128 - p.mu as i128;
    let disc = (diff * diff + 4 * (p.k as i128 - p.mu as i128)) as u64;
    let numerator = 2 * p.k as i128 + (p.n as i128 - 1) * diff;
    let n_minus_1 = p.n as i128 - 1;

    if let Some(root) = exact_sqrt(disc) {
        let r = Eigenvalue::Integer {
            value: ((diff + root as i128) / 2) as i64,
        };
        let s = Eigenvalue::Integer {
            value: ((diff - root as i128) / 2) as i64,
        };
        let multiplicities = if root != 0 && numerator % root as i128 == 0 {
            let q = numerator / root as i128;
            let (f2, g2) = (n_minus_1 - q, n_minus_1 + q);
            (f2 >= 0 && g2 >= 0 && f2 % 2 == 0 && g2 % 2 == 0)
                .then_some(((f2 / 2) as u64, (g2 / 2) as u64))
        } else {
            None
        };
        Ok(Spectrum {
            r,
            s,
            multiplicities,
        })
    } else {
        let r = Eigenvalue::Surd {
            base: diff as i64,
            disc,
            positive_root: true,
        };
        let s = Eigenvalue::Surd {
            base: diff as i64,
            disc,
            positive_root: false,
        };
        // conference case: zero numerator forces f = g = (n-1)/2
        let multiplicities = (numerator == 0 && n_minus_1 % 2 == 0)
            .then_some(((n_minus_1 / 2) as u64, (n_minus_1 / 2) as u64));
        Ok(Spectrum {
            r,
            s,
            multiplicities,
        })
    }
}

/// Why a parameter set passed or failed the multiplicity feasibility screen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeasibilityReason {
    Ok,
    NonSquareDiscriminantWithNonzeroNumerator,
    NonIntegerMultiplicity,
    IdentityViolation,
}

impl std::fmt::Display for FeasibilityReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FeasibilityReason::Ok => "ok",
            FeasibilityReason::NonSquareDiscriminantWithNonzeroNumerator => {
                "non_square_discriminant_with_nonzero_numerator"
            }
            FeasibilityReason::NonIntegerMultiplicity => "non_integer_multiplicity",
            FeasibilityReason::IdentityViolation => "identity_violation",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityVerdict {
    pub params: SrgParams,
    pub passes_integrality: bool,
    pub reason: FeasibilityReason,
    pub spectrum: Option<Spectrum>,
}

/// Eigenvalue-multiplicity feasibility screen. The multiplicities of the two
/// non-principal eigenvalues must be non-negative integers; an identity
/// violation short-circuits.
pub fn integrality_test(p: &SrgParams) -> FeasibilityVerdict {
    if !check_identity(p) || !p.bounds_ok() {
        return FeasibilityVerdict {
            params: *p,
            passes_integrality: false,
            reason: FeasibilityReason::IdentityViolation,
            spectrum: None,
        };
    }
    let spectrum = spectrum_of(p).expect("identity checked above");
    let (passes, reason) = if spectrum.integral() {
        (true, FeasibilityReason::Ok)
    } else if matches!(spectrum.r, Eigenvalue::Surd { .. }) {
        (
            false,
            FeasibilityReason::NonSquareDiscriminantWithNonzeroNumerator,
        )
    } else {
        (false, FeasibilityReason::NonIntegerMultiplicity)
    };
    FeasibilityVerdict {
        params: *p,
        passes_integrality: passes,
        reason,
        spectrum: Some(spectrum),
    }
}

/// All valencies k <= k_max admitting an integer order for the given
/// (lambda, mu), each with its feasibility verdict, ascending in k.
///
/// Iterates k and solves the identity for n: the complete graph K_{k+1}
/// covers k = lambda + 1, otherwise n = k(k - lambda - 1)/mu + k + 1
/// whenever that quotient is an integer.
pub fn enumerate_family(lambda: u64, mu: u64, k_max: u64) -> Vec<FeasibilityVerdict> {
    let mut verdicts = Vec::new();
    for k in 1..=k_max {
        if lambda + 1 > k || mu > k {
            continue;
        }
        let n = if k == lambda + 1 {
            k + 1
        } else if mu > 0 && (k * (k - lambda - 1)).is_multiple_of(mu) {
            k * (k - lambda - 1) / mu + k + 1
        } else {
            continue; // mu = 0 with a positive left side has no solution
        };
        verdicts.push(integrality_test(&SrgParams::new(n, k, lambda, mu)));
    }
    verdicts
}

/// Quantities a strongly regular graph with these parameters must exhibit:
/// total triangles n*k*lambda/6, triangles through each vertex k*lambda/2,
/// and the class sizes (k-2, k-2, k-2, n-3-3(k-2)) of the partition anchored
/// at any triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedCounts {
    pub triangles: u64,
    pub triangles_per_vertex: u64,
    pub partition: (u64, u64, u64, u64),
}

pub fn expected_counts(p: &SrgParams) -> Result<ExpectedCounts, ParamsError> {
    if p.lambda < 1 {
        return Err(ParamsError::LambdaTooSmall(*p));
    }
    if !(p.k * p.lambda).is_multiple_of(2) {
        return Err(ParamsError::Indivisible(*p, "k*lambda must be even"));
    }
    if !(p.n * p.k * p.lambda).is_multiple_of(6) {
        return Err(ParamsError::Indivisible(
            *p,
            "n*k*lambda must be divisible by 6",
        ));
    }
    let class =
        p.k.checked_sub(2)
            .ok_or(ParamsError::Indivisible(*p, "k >= 2 required"))?;
    let rest = (p.n)
        .checked_sub(3 + 3 * class)
        .ok_or(ParamsError::Indivisible(
            *p,
            "n must cover the three anchor classes",
        ))?;
    Ok(ExpectedCounts {
        triangles: p.n * p.k * p.lambda / 6,
        triangles_per_vertex: p.k * p.lambda / 2,
        partition: (class, class, class, rest),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_examples() {
        assert!(check_identity(&SrgParams::new(19, 6, 1, 2)));
        assert!(check_identity(&SrgParams::new(3, 2, 1, 2))); // complete, vacuous
        assert!(!check_identity(&SrgParams::new(19, 6, 1, 3)));
    }

    #[test]
    fn family_orders() {
        assert_eq!(family_order(6).unwrap(), 19);
        assert_eq!(family_order(14).unwrap(), 99);
        assert_eq!(family_order(4).unwrap(), 9);
        assert_eq!(family_order(2).unwrap(), 3);
        assert_eq!(family_order(5), Err(ParamsError::OddValency(5)));
    }

    #[test]
    fn spectrum_small_cases() {
        // plugging into the formulas by hand: D = 9, r = 1, s = -2,
        // numerator = 8 - 8 = 0 via the square branch: q = 0, f = g = 4
        let s = spectrum_of(&SrgParams::new(9, 4, 1, 2)).unwrap();
        assert_eq!(s.r, Eigenvalue::Integer { value: 1 });
        assert_eq!(s.s, Eigenvalue::Integer { value: -2 });
        assert_eq!(s.multiplicities, Some((4, 4)));
        assert_eq!(s.trace_residual(4), Some(0));

        // D = 17 is not a square and the numerator 12 - 18 = -6 is nonzero
        let s = spectrum_of(&SrgParams::new(19, 6, 1, 2)).unwrap();
        assert!(!s.integral());
        assert!(matches!(
            s.r,
            Eigenvalue::Surd {
                base: -1,
                disc: 17,
                positive_root: true
            }
        ));

        // D = 49, r = 3, s = -4, f = 54, g = 44
        let s = spectrum_of(&SrgParams::new(99, 14, 1, 2)).unwrap();
        assert_eq!(s.r, Eigenvalue::Integer { value: 3 });
        assert_eq!(s.s, Eigenvalue::Integer { value: -4 });
        assert_eq!(s.multiplicities, Some((54, 44)));
        assert_eq!(s.trace_residual(14), Some(0));

        // conference case: 5-cycle, D = 5, numerator 4 - 4 = 0, f = g = 2
        let s = spectrum_of(&SrgParams::new(5, 2, 0, 1)).unwrap();
        assert!(matches!(
            s.r,
            Eigenvalue::Surd {
                base: -1,
                disc: 5,
                positive_root: true
            }
        ));
        assert_eq!(s.multiplicities, Some((2, 2)));
        assert_eq!(s.eigen_sum(), -1);
        assert_eq!(s.eigen_product(), -1);
        assert_eq!(s.trace_residual(2), Some(0));

        assert!(spectrum_of(&SrgParams::new(19, 6, 1, 3)).is_err());
    }

    #[test]
    fn integrality_verdicts() {
        let v = integrality_test(&SrgParams::new(19, 6, 1, 2));
        assert!(!v.passes_integrality);
        assert_eq!(
            v.reason,
            FeasibilityReason::NonSquareDiscriminantWithNonzeroNumerator
        );

        let v = integrality_test(&SrgParams::new(99, 14, 1, 2));
        assert!(v.passes_integrality);

        // D = 25 but -16/5 is not an integer
        let v = integrality_test(&SrgParams::new(33, 8, 1, 2));
        assert!(!v.passes_integrality);
        assert_eq!(v.reason, FeasibilityReason::NonIntegerMultiplicity);

        let v = integrality_test(&SrgParams::new(19, 6, 1, 3));
        assert_eq!(v.reason, FeasibilityReason::IdentityViolation);
    }

    #[test]
    fn family_enumeration_lambda1_mu2() {
        let verdicts = enumerate_family(1, 2, 1000);
        let passing: Vec<u64> = verdicts
            .iter()
            .filter(|v| v.passes_integrality)
            .map(|v| v.params.k)
            .collect();
        assert_eq!(passing, vec![2, 4, 14, 22, 112, 994]);
        // every listed k satisfies the identity at the family order
        for v in &verdicts {
            assert_eq!(family_order(v.params.k).unwrap(), v.params.n);
            assert!(check_identity(&v.params));
        }

        let small = enumerate_family(1, 2, 6);
        assert_eq!(
            small.iter().map(|v| v.params.k).collect::<Vec<_>>(),
            vec![2, 4, 6]
        );
        assert!(!small[2].passes_integrality);

        assert!(enumerate_family(1, 2, 1).is_empty());
    }

    #[test]
    fn family_enumeration_includes_petersen() {
        let verdicts = enumerate_family(0, 1, 3);
        let petersen = verdicts.iter().find(|v| v.params.k == 3).unwrap();
        assert_eq!(petersen.params, SrgParams::new(10, 3, 0, 1));
        assert!(petersen.passes_integrality);
        assert_eq!(petersen.spectrum.unwrap().multiplicities, Some((5, 4)));
    }

    #[test]
    fn expected_count_examples() {
        let c = expected_counts(&SrgParams::new(19, 6, 1, 2)).unwrap();
        assert_eq!(c.triangles, 19);
        assert_eq!(c.triangles_per_vertex, 3);
        assert_eq!(c.partition, (4, 4, 4, 4));

        let c = expected_counts(&SrgParams::new(9, 4, 1, 2)).unwrap();
        assert_eq!((c.triangles, c.triangles_per_vertex), (6, 2));
        assert_eq!(c.partition, (2, 2, 2, 0));

        let c = expected_counts(&SrgParams::new(3, 2, 1, 2)).unwrap();
        assert_eq!((c.triangles, c.triangles_per_vertex), (1, 1));
        assert_eq!(c.partition, (0, 0, 0, 0));

        assert!(expected_counts(&SrgParams::new(5, 2, 0, 1)).is_err());
    }
}
