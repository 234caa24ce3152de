//! Column ranks over `E_ĥ`, the gcrd rank formula, minimum distance and MRD
//! certification.

use crate::algebra::{norm_criterion, right_invariant, Criterion};
use crate::central::{is_irreducible, EHat, Irreducibility};
use crate::code::{left_mult_matrix, CodeSpec, SpreadSet, VfBasis};
use crate::error::{Error, Result};
use crate::field::{PrimeField, FE};
use crate::linalg::{self, Matrix};
use crate::par::{self, Exec};
use crate::skew::SkewPoly;

/// Default cap on exhaustive codeword scans.
pub const DEFAULT_BUDGET: u128 = 1 << 20;

pub fn column_rank<P: PrimeField>(ehat: &EHat<P>, m: &Matrix<Vec<FE<P>>>) -> usize {
    linalg::rank(ehat, m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate<P: PrimeField> {
    pub element: SkewPoly<P>,
    pub gaussian_rank: usize,
    pub gcrd_degree: usize,
    pub formula_rank: usize,
}

/// Rank of `M_a` computed twice: by elimination and as `k - deg gcrd(a, h) / m`.
pub fn rank_via_gcrd<P: PrimeField>(
    vf: &VfBasis<P>,
    spec: &CodeSpec<P>,
    a: &SkewPoly<P>,
) -> Result<RankCertificate<P>> {
    let r = spec.ring();
    r.require_no_delta()?;
    let h = &spec.report().h;
    let dh = h.deg().expect("h is nonzero");
    if a.deg().is_some_and(|da| da >= dh) {
        return Err(Error::DegreeOutOfRange(format!(
            "deg a must be below deg h = {dh}"
        )));
    }
    let gcrd_degree = gcrd_degree(spec, a)?;
    let formula_rank = formula_rank(spec, gcrd_degree)?;
    let gaussian_rank = column_rank(&spec.ehat(), &left_mult_matrix(vf, a)?);
    if gaussian_rank != formula_rank {
        return Err(Error::EngineDisagreement(format!(
            "rank of M_a is {gaussian_rank}, gcrd formula gives {formula_rank} for a = {}",
            r.format(a)
        )));
    }
    Ok(RankCertificate {
        element: a.clone(),
        gaussian_rank,
        gcrd_degree,
        formula_rank,
    })
}

fn gcrd_degree<P: PrimeField>(spec: &CodeSpec<P>, a: &SkewPoly<P>) -> Result<usize> {
    let h = &spec.report().h;
    Ok(spec.ring().gcrd(a, h)?.deg().expect("gcrd is nonzero"))
}

fn formula_rank<P: PrimeField>(spec: &CodeSpec<P>, gcrd_degree: usize) -> Result<usize> {
    let m = spec.m();
    if !gcrd_degree.is_multiple_of(m) {
        return Err(Error::EngineDisagreement(format!(
            "deg gcrd = {gcrd_degree} is not a multiple of m = {m}"
        )));
    }
    Ok(spec.k() - gcrd_degree / m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMode {
    /// Rank of every nonzero `M_a`.
    Exhaustive,
    /// `k - max deg gcrd(a, h) / m`, no matrices.
    GcrdExhaustive,
    /// Both, failing on the first disagreement.
    Both,
}

#[derive(Clone, Debug)]
pub struct DistanceReport<P: PrimeField> {
    pub min_distance: usize,
    pub argmin: SkewPoly<P>,
    pub argmin_index: u128,
    pub is_mrd: bool,
    /// `k (k - d + 1) [E_ĥ : F']`.
    pub singleton_rhs: usize,
    pub dim_fp: usize,
    pub visited: u128,
}

/// Minimum rank over nonzero codewords. `Exhaustive` and `Both` need a spread set.
pub fn min_distance<P: PrimeField>(
    spec: &CodeSpec<P>,
    ss: Option<&SpreadSet<P>>,
    mode: DistanceMode,
    budget: u128,
    exec: Exec,
) -> Result<DistanceReport<P>> {
    if spec.dim_fp() == 0 {
        return Err(Error::EmptyCode);
    }
    let total = spec.codeword_count().ok_or(Error::InfiniteField)?;
    if total > budget {
        return Err(Error::BudgetExceeded {
            visited: budget,
            total,
        });
    }
    let ss = match (mode, ss) {
        (DistanceMode::GcrdExhaustive, _) => None,
        (_, Some(ss)) => Some(ss),
        (_, None) => {
            return Err(Error::PreconditionFailed(
                "matrix engine needs a spread set".into(),
            ))
        }
    };
    let elems = spec.ring().tower().fp_field().elements().expect("finite");
    let gens = spec.generators();
    let ehat = spec.ehat();
    let dim = spec.dim_fp();
    // (0, _) flags a disagreement so that it wins the minimum.
    let key = |i: u64| -> Option<(u8, usize)> {
        let c = digits::<P>(&elems, i as u128, dim);
        let gcrd_rank = || -> usize {
            let a = spec.combine(&gens, &c);
            let deg = gcrd_degree(spec, &a).expect("a is nonzero");
            formula_rank(spec, deg).unwrap_or(usize::MAX)
        };
        let matrix_rank = || column_rank(&ehat, &ss.expect("spread set").matrix_of_coords(&c));
        Some(match mode {
            DistanceMode::GcrdExhaustive => (1, gcrd_rank()),
            DistanceMode::Exhaustive => (1, matrix_rank()),
            DistanceMode::Both => {
                let (g, mr) = (gcrd_rank(), matrix_rank());
                if g == mr {
                    (1, mr)
                } else {
                    (0, 0)
                }
            }
        })
    };
    let ((tag, d), idx0) =
        par::min_key(exec, (total - 1) as u64, |i| key(i + 1)).expect("nonzero codewords exist");
    let index = idx0 as u128 + 1;
    let argmin = spec.combine(&gens, &digits::<P>(&elems, index, dim));
    if tag == 0 || d == usize::MAX {
        return Err(Error::EngineDisagreement(format!(
            "rank engines disagree on codeword {index} ({})",
            spec.ring().format(&argmin)
        )));
    }
    let k = spec.k();
    Ok(DistanceReport {
        min_distance: d,
        argmin,
        argmin_index: index,
        is_mrd: d == k - spec.l() + 1,
        singleton_rhs: singleton_rhs(spec, d),
        dim_fp: dim,
        visited: total,
    })
}

/// `k (k - d + 1) [E_ĥ : F']`.
pub fn singleton_rhs<P: PrimeField>(spec: &CodeSpec<P>, d: usize) -> usize {
    let k = spec.k();
    k * (k + 1).saturating_sub(d) * spec.ehat_over_fp()
}

/// Base-`q` digits of `index` read as `F'`-coordinates, least significant first.
pub(crate) fn digits<P: PrimeField>(elems: &[FE<P>], mut index: u128, len: usize) -> Vec<FE<P>> {
    let q = elems.len() as u128;
    (0..len)
        .map(|_| {
            let c = elems[(index % q) as usize].clone();
            index /= q;
            c
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MrdVerdict<P: PrimeField> {
    /// Minimum distance `k - l + 1`.
    Mrd {
        by: Criterion,
        distance: usize,
    },
    NotMrd {
        witness: SkewPoly<P>,
        distance: usize,
    },
    Unknown,
}

impl<P: PrimeField> MrdVerdict<P> {
    pub fn summary(&self, bound: usize) -> String {
        match self {
            MrdVerdict::Mrd { by, distance } => {
                format!("mrd=yes d={distance} bound={bound} by={}", by.name())
            }
            MrdVerdict::NotMrd { distance, .. } => {
                format!("mrd=no d={distance} bound={bound} by=scan")
            }
            MrdVerdict::Unknown => format!("mrd=unknown d=unknown bound={bound} by=none"),
        }
    }
}

/// The theorem-backed criteria alone; `None` when none applies.
pub fn mrd_criteria<P: PrimeField>(spec: &CodeSpec<P>, budget: u128) -> Result<Option<Criterion>> {
    if spec.l() == 0 {
        return Ok(None);
    }
    let r = spec.ring();
    if !matches!(
        is_irreducible(r, spec.report(), budget)?,
        Irreducibility::Irreducible
    ) {
        return Ok(None);
    }
    let ring = r.ring();
    if ring.is_zero(spec.nu()) {
        return Ok(Some(Criterion::NuZero));
    }
    // the l > 1 results assume Rf is not two-sided
    if spec.l() > 1 && right_invariant(r, spec.f())? {
        return Ok(None);
    }
    norm_criterion(spec)
}

/// Criteria first, then an exhaustive gcrd scan within `budget`.
pub fn certify_mrd<P: PrimeField>(
    spec: &CodeSpec<P>,
    budget: u128,
    exec: Exec,
) -> Result<MrdVerdict<P>> {
    let bound = spec.k() - spec.l() + 1;
    if let Some(by) = mrd_criteria(spec, budget)? {
        return Ok(MrdVerdict::Mrd {
            by,
            distance: bound,
        });
    }
    match min_distance(spec, None, DistanceMode::GcrdExhaustive, budget, exec) {
        Ok(rep) if rep.is_mrd => Ok(MrdVerdict::Mrd {
            by: Criterion::Scan,
            distance: rep.min_distance,
        }),
        Ok(rep) => Ok(MrdVerdict::NotMrd {
            witness: rep.argmin,
            distance: rep.min_distance,
        }),
        Err(Error::InfiniteField | Error::BudgetExceeded { .. } | Error::EmptyCode) => {
            Ok(MrdVerdict::Unknown)
        }
        Err(e) => Err(e),
    }
}
