//! The mean `M(a) = lim (1/N) Σ a(n)` of a theorem-form sequence, in closed
//! form and empirically.
//!
//! The closed form is `M(a) = M(f2) · Σ_{k≥0} f1(k)/p^k`: the mean of a
//! periodic `f2` is the average over one period (zero for finitely supported
//! `f2`), and the `f1` series splits into a finite preperiod part plus a
//! geometric tail summed exactly. Both factors are exact cyclotomic
//! elements, so equalities like `M(a) = 1/3` are decided symbolically.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::construct::{MultSpec, TheoremFormSpec};
use crate::exact::{Cyclo, Fx};
use crate::scan;
use crate::seq::SequenceOracle;

/// Exact closed-form mean of the sequence of `spec`.
pub fn mean_formula(spec: &TheoremFormSpec) -> Cyclo {
    let p = spec.prime();
    let f2_mean = match spec.f2() {
        MultSpec::Finite(_) => Cyclo::zero(),
        MultSpec::Periodic(f) => {
            let d = f.period();
            let mut sum = Cyclo::zero();
            for r in 1..=d {
                sum = sum.add(&Cyclo::from_value(&f.value(r)));
            }
            sum.scale(&BigRational::new(BigInt::one(), BigInt::from(d)))
        }
    };

    // Σ_{k≥0} f1(k)/p^k = finite preperiod sum + geometric period block
    let f1 = spec.f1();
    let pre = f1.preperiod().len();
    let per = f1.period().len();
    let p_big = BigInt::from(p);
    let mut series = Cyclo::zero();
    for (k, v) in f1.preperiod().iter().enumerate() {
        series = series.add(
            &Cyclo::from_value(v).scale(&BigRational::new(BigInt::one(), p_big.pow(k as u32))),
        );
    }
    // block B = Σ_{i<per} f1(pre+i)/p^{pre+i}; tail = B / (1 - p^{-per·1})
    let mut block = Cyclo::zero();
    for (i, v) in f1.period().iter().enumerate() {
        block = block.add(
            &Cyclo::from_value(v)
                .scale(&BigRational::new(BigInt::one(), p_big.pow((pre + i) as u32))),
        );
    }
    let p_to_per = BigRational::from_integer(p_big.pow(per as u32));
    let geometric = &p_to_per / (&p_to_per - BigRational::one());
    series = series.add(&block.scale(&geometric));

    f2_mean.mul(&series)
}

/// Exact empirical mean `(1/N) Σ_{n=1}^{N} a(n)`, computed by counting the
/// finitely many distinct values and combining once.
pub fn empirical_mean(a: &dyn SequenceOracle, n_max: u64) -> Cyclo {
    assert!(n_max >= 1);
    let counts = scan::fold_counts(1, n_max + 1, |n| a.value(n));
    let mut sum = Cyclo::zero();
    for (v, c) in counts {
        sum = sum.add(&Cyclo::from_value(&v).scale(&BigRational::from_integer(BigInt::from(c))));
    }
    sum.scale(&BigRational::new(BigInt::one(), BigInt::from(n_max)))
}

/// Formula mean against the empirical mean at `N`, with the discrepancy
/// evaluated in 70-digit fixed point.
#[derive(Clone, Debug)]
pub struct MeanReport {
    pub formula: Cyclo,
    pub empirical: Cyclo,
    pub n: u64,
    pub formula_complex: (f64, f64),
    pub empirical_complex: (f64, f64),
    /// `|formula - empirical|`, exact difference embedded at 70 digits.
    pub discrepancy: Fx,
}

pub fn mean_report(spec: &TheoremFormSpec, n_max: u64) -> MeanReport {
    let formula = mean_formula(spec);
    let a = spec.oracle();
    let empirical = empirical_mean(&a, n_max);
    let discrepancy = formula.sub(&empirical).to_prec().abs();
    MeanReport {
        formula_complex: formula.to_complex_f64(),
        empirical_complex: empirical.to_complex_f64(),
        formula,
        empirical,
        n: n_max,
        discrepancy,
    }
}

/// CSV rows `N,real,imag,abs_error` of the empirical means along the given
/// checkpoints, for external plotting.
pub fn mean_trace_csv(spec: &TheoremFormSpec, checkpoints: &[u64]) -> String {
    let formula = mean_formula(spec);
    let a = spec.oracle();
    let mut out = String::from("N,real,imag,abs_error\n");
    for &n in checkpoints {
        let emp = empirical_mean(&a, n);
        let (re, im) = emp.to_complex_f64();
        let err = formula.sub(&emp).to_prec().abs().to_f64();
        out.push_str(&format!("{n},{re},{im},{err}\n"));
    }
    out
}
