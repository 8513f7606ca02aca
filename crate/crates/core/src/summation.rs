//! Compensated summation and acceleration of slowly convergent series.

use num_complex::Complex64;

/// Neumaier-compensated accumulator for complex values.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

fn two_sum(s: f64, c: &mut f64, x: f64) -> f64 {
    let t = s + x;
    if s.abs() >= x.abs() {
        *c += (s - t) + x;
    } else {
        *c += (x - t) + s;
    }
    t
}

impl CompensatedSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add(&mut self, x: Complex64) {
        let mut cre = self.comp.re;
        let mut cim = self.comp.im;
        self.sum.re = two_sum(self.sum.re, &mut cre, x.re);
        self.sum.im = two_sum(self.sum.im, &mut cim, x.im);
        self.comp = Complex64::new(cre, cim);
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

/// Smooth cutoff: 1 at u ≤ 0, 0 at u ≥ 1, C^∞ in between.
pub(crate) fn taper(u: f64) -> f64 {
    if u <= 0.0 {
        return 1.0;
    }
    if u >= 1.0 {
        return 0.0;
    }
    let a = (-1.0 / (1.0 - u)).exp();
    let b = (-1.0 / u).exp();
    a / (a + b)
}

/// Tapered partial sums Σ χ(n/N) t_n for each cutoff N in `levels`.
pub(crate) fn tapered_sums(terms: &[Complex64], levels: &[usize]) -> Vec<Complex64> {
    levels
        .iter()
        .map(|&n_cut| {
            let mut acc = CompensatedSum::new();
            for (n, &t) in terms.iter().enumerate().take(n_cut) {
                acc.add(t * taper(n as f64 / n_cut as f64));
            }
            acc.value()
        })
        .collect()
}

/// Result of extrapolating a sequence of partial sums.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Extrapolated {
    pub value: Complex64,
    pub error_estimate: f64,
}

/// Richardson extrapolation of sums taken at cutoffs doubling in size, with
/// error terms N^{-s_k}. Every column of the table is a candidate; the one
/// whose last two entries agree best is returned.
pub(crate) fn richardson(sums: &[Complex64], exponents: &[f64]) -> Extrapolated {
    assert!(sums.len() >= 2);
    let mut column: Vec<Complex64> = sums.to_vec();
    let mut best = Extrapolated {
        value: column[column.len() - 1],
        error_estimate: (column[column.len() - 1] - column[column.len() - 2]).norm(),
    };
    for &s in exponents {
        if column.len() < 3 {
            break;
        }
        let r = 2f64.powf(s);
        column = column.windows(2).map(|w| (w[1] * r - w[0]) / (r - 1.0)).collect();
        let last = column[column.len() - 1];
        let err = (last - column[column.len() - 2]).norm();
        if err < best.error_estimate {
            best = Extrapolated {
                value: last,
                error_estimate: err,
            };
        }
    }
    best
}
