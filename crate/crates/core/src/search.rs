//! One-dimensional search: golden-section refinement of sampled minima and
//! bisection on monotone predicates.

/// `(√5 − 1)/2`
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a local minimum of `f` on `[lo, hi]`, stopping
/// once the bracket is narrower than `resolution`. Returns `(x, f(x))` for
/// the best point evaluated, endpoints included.
pub fn golden_section<F>(f: F, mut lo: f64, mut hi: f64, resolution: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut best = [(lo, f(lo)), (hi, f(hi))]
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("two candidates");
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > resolution {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    for cand in [(x1, f1), (x2, f2)] {
        if cand.1 < best.1 {
            best = cand;
        }
    }
    best
}

/// Indices of the `count` smallest discrete local minima of a periodic
/// sample sequence, smallest value first. NaN samples are skipped.
pub fn smallest_local_minima(values: &[f64], count: usize, periodic: bool) -> Vec<usize> {
    let n = values.len();
    if n == 0 {
        return Vec::new();
    }
    let at = |i: isize| -> Option<f64> {
        if periodic {
            Some(values[i.rem_euclid(n as isize) as usize])
        } else if i < 0 || i >= n as isize {
            None
        } else {
            Some(values[i as usize])
        }
    };
    let mut minima: Vec<usize> = (0..n)
        .filter(|&i| {
            let v = values[i];
            if v.is_nan() {
                return false;
            }
            let left = at(i as isize - 1).map_or(true, |l| l.is_nan() || v <= l);
            let right = at(i as isize + 1).map_or(true, |r| r.is_nan() || v <= r);
            left && right
        })
        .collect();
    minima.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    minima.truncate(count);
    minima
}

/// Smallest `x` in `[lo, hi]` with `pred(x)` true, for a predicate that is
/// false then true. Requires `pred(hi)`; returns `hi` side of the final bracket.
pub fn bisect_threshold<P>(pred: P, mut lo: f64, mut hi: f64, resolution: f64) -> f64
where
    P: Fn(f64) -> bool,
{
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
