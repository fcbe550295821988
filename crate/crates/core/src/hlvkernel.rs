//! The genus-g, k-point Cauchy function Ω and its degree-n kernel
//! ℍ_n = (Z−1)(1−W)·Log Ω|_{sⁿ}.
//!
//! Coefficients live in [`HookField`]: Z = z², W = w² and ε = zw with ε² = ZW,
//! so only rational values are ever substituted.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use rayon::prelude::*;

use crate::coeffring::{CoeffError, HookField, Polynomial, RationalFunction};
use crate::macdonald::{table, MacdonaldError};
use crate::partitions::{enumerate, Partition};
use crate::plethysm::{PlethysmError, TruncatedSeries};
use crate::symfunc::{SymError, SymFunc};

pub type KernelFunc = SymFunc<HookField>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KernelError {
    #[error("PoleError: kernel not regular at this specialization ({0})")]
    NotRegular(String),
    #[error("InconsistentEpsilon: specialization needs e0^2 = Z0*W0")]
    InconsistentEpsilon,
    #[error("the kernel has epsilon terms, which this specialization cannot evaluate rationally")]
    IrrationalEpsilon,
    #[error("at least one puncture is required")]
    NoPoints,
    #[error(transparent)]
    Macdonald(#[from] MacdonaldError),
    #[error(transparent)]
    Plethysm(#[from] PlethysmError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

impl From<CoeffError> for KernelError {
    fn from(e: CoeffError) -> Self {
        match e {
            CoeffError::Pole(den) => KernelError::NotRegular(den),
            CoeffError::InconsistentEpsilon => KernelError::InconsistentEpsilon,
            other => KernelError::Sym(other.into()),
        }
    }
}

/// Ω^g_k truncated at `cap`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSeries {
    pub genus: usize,
    pub points: usize,
    pub cap: usize,
    pub series: TruncatedSeries<HookField>,
}

fn zvar() -> RationalFunction {
    RationalFunction::var('Z')
}
fn wvar() -> RationalFunction {
    RationalFunction::var('W')
}

/// 𝓗_λ = ∏_{cells} (z^{2a+1} − w^{2l+1})^{2g} / ((Z^{a+1} − W^l)(Z^a − W^{l+1})).
pub fn hook_term(lam: &Partition, g: usize) -> HookField {
    let z = Polynomial::var('Z');
    let w = Polynomial::var('W');
    let mut num = HookField::one();
    let mut den = Polynomial::one();
    for (_, _, a, l) in lam.cells() {
        let (a, l) = (a as u32, l as u32);
        if g > 0 {
            // (z·Z^a − w·W^l)² = Z^{2a+1} + W^{2l+1} − 2ε Z^a W^l
            let base = &z.pow(2 * a + 1) + &w.pow(2 * l + 1);
            let odd = (&z.pow(a) * &w.pow(l)).scale(&BigRational::from_integer((-2).into()));
            let sq = HookField::new(RationalFunction::from_poly(base), RationalFunction::from_poly(odd));
            for _ in 0..g {
                num = &num * &sq;
            }
        }
        den = &den * &(&z.pow(a + 1) - &w.pow(l));
        den = &den * &(&z.pow(a) - &w.pow(l + 1));
    }
    num.mul_base(&RationalFunction::from_poly(den).inv().expect("nonzero hook denominator"))
}

/// H̃_λ[X; Z, W] as a HookField-valued function.
fn h_tilde_zw(lam: &Partition) -> Result<KernelFunc, KernelError> {
    let tab = table(lam.size())?;
    let h = tab.h_tilde(lam)?;
    let renamed = h.try_map_coefficients(|c| {
        c.subs(&[('q', zvar()), ('t', wvar())]).map(HookField::from_base)
    })?;
    Ok(renamed)
}

/// Ω^g_k = Σ_λ 𝓗_λ ∏_j H̃_λ[X_j; Z, W] s^{|λ|}, truncated at `cap`.
pub fn omega(g: usize, k: usize, cap: usize) -> Result<KernelSeries, KernelError> {
    if k == 0 {
        return Err(KernelError::NoPoints);
    }
    let mut coeffs = vec![KernelFunc::one(k)];
    for d in 1..=cap {
        let parts = enumerate(d);
        let terms: Vec<KernelFunc> = parts
            .par_iter()
            .map(|lam| {
                let h = h_tilde_zw(lam)?;
                Ok(KernelFunc::tensor_all(&vec![h; k]).scale(&hook_term(lam, g)))
            })
            .collect::<Result<_, KernelError>>()?;
        let mut acc = KernelFunc::zero(k);
        for t in &terms {
            acc.add_assign(t);
        }
        coeffs.push(acc);
    }
    Ok(KernelSeries { genus: g, points: k, cap, series: TruncatedSeries::from_coeffs(k, cap, coeffs) })
}

type LogCache = Mutex<HashMap<(usize, usize), Arc<TruncatedSeries<HookField>>>>;

fn log_cache() -> &'static LogCache {
    static CACHE: OnceLock<LogCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// (Z−1)(1−W)·Log Ω^g_k up to `cap`, shared between callers.
pub fn scaled_log_omega(g: usize, k: usize, cap: usize) -> Result<Arc<TruncatedSeries<HookField>>, KernelError> {
    if let Some(s) = log_cache().lock().unwrap().get(&(g, k)) {
        if s.cap() >= cap {
            return Ok(s.clone());
        }
    }
    let om = omega(g, k, cap)?;
    let log = om.series.log_pleth()?;
    let pref = HookField::from_base(RationalFunction::parse("(Z - 1)*(1 - W)").unwrap());
    let coeffs = log.coeffs().iter().map(|f| f.scale(&pref)).collect();
    let scaled = Arc::new(TruncatedSeries::from_coeffs(k, cap, coeffs));
    let mut cache = log_cache().lock().unwrap();
    let slot = cache.entry((g, k)).or_insert_with(|| scaled.clone());
    if slot.cap() < cap {
        *slot = scaled.clone();
    }
    Ok(scaled)
}

/// ℍ^{HLV}_n for genus g and k punctures.
pub fn hlv(n: usize, g: usize, k: usize) -> Result<KernelFunc, KernelError> {
    Ok(scaled_log_omega(g, k, n)?.coeff(n).clone())
}

/// Named substitutions for (Z, W, ε).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Specialization {
    /// Z = 0, W = v², ε = 0.
    Poincare,
    /// Z = q, W = t; ε = −√(qt) is irrational, so ε-parts must vanish.
    MixedHodge,
    /// Z = 1, W = v², ε = −v.
    QEqualsOne,
}

impl Specialization {
    fn point(self) -> (RationalFunction, RationalFunction, Option<RationalFunction>) {
        let v = RationalFunction::var('v');
        match self {
            Specialization::Poincare => (RationalFunction::zero(), v.pow(2), Some(RationalFunction::zero())),
            Specialization::MixedHodge => (RationalFunction::var('q'), RationalFunction::var('t'), None),
            Specialization::QEqualsOne => (RationalFunction::one(), v.pow(2), Some(-v)),
        }
    }

    pub fn apply(self, h: &HookField) -> Result<RationalFunction, KernelError> {
        let (z0, w0, e0) = self.point();
        match e0 {
            Some(e0) => Ok(h.specialize(&z0, &w0, &e0)?),
            None => {
                if !h.odd.is_zero() {
                    return Err(KernelError::IrrationalEpsilon);
                }
                Ok(h.base.subs(&[('Z', z0), ('W', w0)])?)
            }
        }
    }
}

/// Substitutes (Z, W, ε) = (z0, w0, e0) in every coefficient; requires e0² = z0·w0.
pub fn specialize_kernel(
    f: &KernelFunc,
    z0: &RationalFunction,
    w0: &RationalFunction,
    e0: &RationalFunction,
) -> Result<SymFunc<RationalFunction>, KernelError> {
    if &(e0 * e0) != &(z0 * w0) {
        return Err(KernelError::InconsistentEpsilon);
    }
    Ok(f.try_map_coefficients(|c| c.specialize(z0, w0, e0))?)
}

pub fn specialize_named(f: &KernelFunc, spec: Specialization) -> Result<SymFunc<RationalFunction>, KernelError> {
    f.try_map_coefficients(|c| spec.apply(c))
}

/// ⟨test, ℍ⟩ over all alphabets, then the specialization.
pub fn pair_then_specialize(
    test: &SymFunc<RationalFunction>,
    kernel: &KernelFunc,
    spec: Specialization,
) -> Result<RationalFunction, KernelError> {
    let lifted = test.map_coefficients(|c| HookField::from_base(c.clone()));
    spec.apply(&lifted.hall_scalar(kernel)?)
}

/// The specialization, then ⟨test, ℍ⟩.
pub fn specialize_then_pair(
    test: &SymFunc<RationalFunction>,
    kernel: &KernelFunc,
    spec: Specialization,
) -> Result<RationalFunction, KernelError> {
    Ok(test.hall_scalar(&specialize_named(kernel, spec)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }
    fn rf(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }
    fn prod_h1(k: usize) -> KernelFunc {
        let h1 = KernelFunc::h(&p("[1]"));
        KernelFunc::tensor_all(&vec![h1; k])
    }

    #[test]
    fn hook_terms_by_hand() {
        assert_eq!(hook_term(&p("[1]"), 0), HookField::from_base(rf("1/((Z - 1)*(1 - W))")));
        let g1 = HookField::new(rf("(Z + W)/((Z - 1)*(1 - W))"), rf("-2/((Z - 1)*(1 - W))"));
        assert_eq!(hook_term(&p("[1]"), 1), g1);
        assert_eq!(
            hook_term(&p("[2]"), 0),
            HookField::from_base(rf("1/((Z^2 - 1)*(Z - W)*(Z - 1)*(1 - W))"))
        );
    }

    #[test]
    fn omega_low_degrees() {
        let om = omega(0, 2, 2).unwrap();
        assert_eq!(om.series.coeff(0), &KernelFunc::one(2));
        let expected = prod_h1(2).scale(&hook_term(&p("[1]"), 0));
        assert_eq!(om.series.coeff(1), &expected);
    }

    #[test]
    fn degree_one_kernel() {
        for k in 1..=3 {
            assert_eq!(hlv(1, 0, k).unwrap(), prod_h1(k));
        }
        let g1 = hlv(1, 1, 2).unwrap();
        let zw_part = HookField::new(rf("Z + W"), rf("-2"));
        assert_eq!(g1, prod_h1(2).scale(&zw_part));
        let v2 = specialize_named(&g1, Specialization::Poincare).unwrap();
        assert_eq!(v2, SymFunc::tensor_all(&vec![SymFunc::h(&p("[1]")); 2]).scale(&rf("v^2")));
    }

    #[test]
    fn epsilon_checks() {
        let k = hlv(1, 0, 1).unwrap();
        assert!(specialize_kernel(&k, &rf("1"), &rf("v^2"), &rf("-v")).is_ok());
        assert_eq!(
            specialize_kernel(&k, &rf("1"), &rf("v^2"), &rf("v^3")),
            Err(KernelError::InconsistentEpsilon)
        );
        let g1 = hlv(1, 1, 1).unwrap();
        assert_eq!(specialize_named(&g1, Specialization::MixedHodge), Err(KernelError::IrrationalEpsilon));
    }

    #[test]
    fn pairing_orders_agree_at_poincare() {
        let k = hlv(2, 0, 2).unwrap();
        let test = SymFunc::h(&p("[1,1]")).tensor(&SymFunc::h(&p("[2]")));
        let a = pair_then_specialize(&test, &k, Specialization::Poincare).unwrap();
        let b = specialize_then_pair(&test, &k, Specialization::Poincare).unwrap();
        assert_eq!(a, b);
        assert!(a.is_polynomial());
    }
}
