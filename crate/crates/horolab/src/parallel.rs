//! Deterministic parallel reduction helpers.
//!
//! Index ranges are split into fixed-size chunks independent of the worker
//! count; each chunk is summed serially with compensated accumulation and
//! the chunk results are folded in index order. A run with 1 thread and a
//! run with 8 therefore produce bit-identical sums.

use num_complex::Complex64;
use rayon::prelude::*;

const CHUNK: usize = 4096;

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated serial sum of `f(i)` for `i` in `0..n`.
pub fn sum_serial(n: usize, f: impl Fn(usize) -> f64) -> f64 {
    let mut acc = Accumulator::default();
    for i in 0..n {
        acc.add(f(i));
    }
    acc.value()
}

/// Deterministic parallel sum of `f(i)` for `i` in `0..n`.
pub fn sum_indexed(n: usize, f: impl Fn(usize) -> f64 + Sync) -> f64 {
    let starts: Vec<usize> = (0..n).step_by(CHUNK).collect();
    let partials: Vec<f64> = starts
        .par_iter()
        .map(|&s| {
            let mut acc = Accumulator::default();
            for i in s..(s + CHUNK).min(n) {
                acc.add(f(i));
            }
            acc.value()
        })
        .collect();
    let mut acc = Accumulator::default();
    for p in partials {
        acc.add(p);
    }
    acc.value()
}

/// Deterministic parallel sum of a complex-valued term function.
pub fn sum_indexed_complex(n: usize, f: impl Fn(usize) -> Complex64 + Sync) -> Complex64 {
    let starts: Vec<usize> = (0..n).step_by(CHUNK).collect();
    let partials: Vec<(f64, f64)> = starts
        .par_iter()
        .map(|&s| {
            let mut re = Accumulator::default();
            let mut im = Accumulator::default();
            for i in s..(s + CHUNK).min(n) {
                let v = f(i);
                re.add(v.re);
                im.add(v.im);
            }
            (re.value(), im.value())
        })
        .collect();
    let mut re = Accumulator::default();
    let mut im = Accumulator::default();
    for (r, i) in partials {
        re.add(r);
        im.add(i);
    }
    Complex64::new(re.value(), im.value())
}
