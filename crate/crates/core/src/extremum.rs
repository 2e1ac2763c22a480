//! Sample-then-refine maximization of a smooth function of one variable.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Location and value of a (numerical) maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub arg: f64,
    pub value: f64,
}

/// Sampling layout for [`maximize`].
#[derive(Debug, Clone)]
pub struct Scan<'a> {
    pub lo: f64,
    pub hi: f64,
    pub samples: usize,
    /// Extra sample points (e.g. pole projections) merged into the grid.
    pub seeds: &'a [f64],
    /// `f(lo + period) == f(lo)`; neighbours wrap around.
    pub periodic: bool,
    /// Refinement stops once the bracket is narrower than this.
    pub xtol: f64,
}

/// Maximizes `f` on `[lo, hi]`: dense sampling followed by golden-section
/// refinement of every local-maximum bracket. The result is never below a
/// sampled value.
pub fn maximize(f: impl Fn(f64) -> f64, scan: &Scan) -> Maximum {
    let n = scan.samples.max(3);
    let width = scan.hi - scan.lo;
    let mut grid: Vec<f64> = if scan.periodic {
        (0..n)
            .map(|i| scan.lo + width * i as f64 / n as f64)
            .collect()
    } else {
        (0..=n)
            .map(|i| scan.lo + width * i as f64 / n as f64)
            .collect()
    };
    grid.extend(
        scan.seeds
            .iter()
            .map(|s| {
                if scan.periodic {
                    scan.lo + (s - scan.lo).rem_euclid(width)
                } else {
                    s.clamp(scan.lo, scan.hi)
                }
            })
            .filter(|s| s.is_finite()),
    );
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let values: Vec<f64> = grid.iter().map(|&t| f(t)).collect();
    let len = grid.len();
    let mut best = Maximum {
        arg: grid[0],
        value: values[0],
    };
    for (t, v) in grid.iter().zip(&values) {
        if *v > best.value {
            best = Maximum { arg: *t, value: *v };
        }
    }

    for i in 0..len {
        let (left, right) = if scan.periodic {
            let l = if i == 0 {
                grid[len - 1] - width
            } else {
                grid[i - 1]
            };
            let r = if i + 1 == len {
                grid[0] + width
            } else {
                grid[i + 1]
            };
            (l, r)
        } else {
            if i == 0 || i + 1 == len {
                continue;
            }
            (grid[i - 1], grid[i + 1])
        };
        let vl = values[(i + len - 1) % len];
        let vr = values[(i + 1) % len];
        if values[i] < vl || values[i] < vr {
            continue;
        }
        let m = golden(&f, left, right, scan.xtol);
        if m.value > best.value {
            best = m;
        }
    }
    if scan.periodic {
        best.arg = scan.lo + (best.arg - scan.lo).rem_euclid(width);
    }
    best
}

fn golden(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, xtol: f64) -> Maximum {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= xtol * (1.0 + c.abs()) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        Maximum { arg: c, value: fc }
    } else {
        Maximum { arg: d, value: fd }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_peak() {
        let scan = Scan {
            lo: -3.0,
            hi: 3.0,
            samples: 16,
            seeds: &[],
            periodic: false,
            xtol: 1e-12,
        };
        let m = maximize(|x| 1.0 / ((x - 0.3217).powi(2) + 0.01), &scan);
        assert!((m.arg - 0.3217).abs() < 1e-7);
        assert!((m.value - 100.0).abs() < 1e-9);
    }

    #[test]
    fn keeps_endpoint_maximum() {
        let scan = Scan {
            lo: -1.0,
            hi: 1.0,
            samples: 8,
            seeds: &[],
            periodic: false,
            xtol: 1e-12,
        };
        let m = maximize(|x| 2.0 * x + 1.0, &scan);
        assert_eq!(m.value, 3.0);
    }

    #[test]
    fn periodic_peak_at_wrap() {
        let scan = Scan {
            lo: 0.0,
            hi: std::f64::consts::TAU,
            samples: 10,
            seeds: &[],
            periodic: true,
            xtol: 1e-12,
        };
        let m = maximize(|t| (t - 0.001).cos(), &scan);
        assert!((m.value - 1.0).abs() < 1e-15);
    }
}
