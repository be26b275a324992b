use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::hypcore::{legendre_p, EvalResult};
use crate::scalar::{from_usize, lit, to_f64, Scalar};

/// Hard cap on 1D panels per integral.
const MAX_PANELS_1D: usize = 20_000;
/// Hard cap on 2D cells per integral.
const MAX_CELLS_2D: usize = 6_000;

/// Adaptive Gauss–Legendre settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    /// Gauss–Legendre order on each panel.
    pub nodes_per_panel: usize,
    /// Uniform panels per breakpoint interval before adaptivity.
    pub initial_panels: usize,
    /// Target: total error estimate at most `tol * max(1, |integral|)`.
    pub tol: T,
    /// Maximum bisection depth of any panel.
    pub max_depth: u32,
}

impl<T: Scalar> QuadratureSpec<T> {
    pub fn new(nodes_per_panel: usize, initial_panels: usize, tol: T, max_depth: u32) -> Result<Self> {
        if nodes_per_panel < 4 {
            return Err(Error::Parameter(format!("need at least 4 nodes per panel, got {nodes_per_panel}")));
        }
        if initial_panels == 0 {
            return Err(Error::Parameter("need at least one initial panel".into()));
        }
        if !(tol > T::zero()) || !tol.is_finite() {
            return Err(Error::Parameter(format!("tolerance must be positive, got {tol:?}")));
        }
        if max_depth > 40 {
            return Err(Error::Parameter(format!("max_depth {max_depth} exceeds 40")));
        }
        Ok(Self { nodes_per_panel, initial_panels, tol, max_depth })
    }

    pub fn with_tol(self, tol: T) -> Result<Self> {
        Self::new(self.nodes_per_panel, self.initial_panels, tol, self.max_depth)
    }
}

impl<T: Scalar> Default for QuadratureSpec<T> {
    /// 16-point panels, 4 initial panels, tolerance `1024 eps`, depth 30.
    fn default() -> Self {
        Self { nodes_per_panel: 16, initial_panels: 4, tol: T::epsilon() * lit(1024.0), max_depth: 30 }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre<T: Scalar>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = from_usize::<T>(n);
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let guess = T::PI() * (from_usize::<T>(i) + lit(0.75)) / (nf + lit(0.5));
        let mut z = guess.cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let p = legendre_p(n, z);
            let p_prev = legendre_p(n - 1, z);
            dp = nf * (z * p - p_prev) / (z * z - T::one());
            let step = p / dp;
            z = z - step;
            if step.abs() <= T::epsilon() * lit(4.0) {
                let p = legendre_p(n, z);
                let p_prev = legendre_p(n - 1, z);
                dp = nf * (z * p - p_prev) / (z * z - T::one());
                break;
            }
        }
        let w = lit::<T>(2.0) / ((T::one() - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    (nodes, weights)
}

struct Rule<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Scalar> Rule<T> {
    fn new(n: usize) -> Self {
        let (nodes, weights) = gauss_legendre(n);
        Self { nodes, weights }
    }

    fn points(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let half = (b - a) * lit(0.5);
        let mid = (a + b) * lit(0.5);
        self.nodes.iter().zip(&self.weights).map(move |(&t, &w)| (mid + half * t, w * half))
    }

    /// `(∫ f, ∫ |f|)` over `[a, b]`.
    fn apply<F: FnMut(T) -> T>(&self, f: &mut F, a: T, b: T) -> (T, T) {
        let mut s = T::zero();
        let mut l1 = T::zero();
        for (x, w) in self.points(a, b) {
            let v = f(x) * w;
            s = s + v;
            l1 = l1 + v.abs();
        }
        (s, l1)
    }
}

/// Max-heap key: error estimate (as `f64`), ties broken by insertion order.
#[derive(PartialEq)]
struct Key(f64, usize);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then_with(|| other.1.cmp(&self.1))
    }
}

struct Panel<T> {
    a: T,
    b: T,
    left: T,
    right: T,
    err: T,
    l1: T,
    depth: u32,
    live: bool,
}

fn make_panel<T: Scalar, F: FnMut(T) -> T>(rule: &Rule<T>, f: &mut F, a: T, b: T, whole: T, depth: u32) -> Panel<T> {
    let m = (a + b) * lit(0.5);
    let (left, l1a) = rule.apply(f, a, m);
    let (right, l1b) = rule.apply(f, m, b);
    Panel { a, b, left, right, err: (left + right - whole).abs(), l1: l1a + l1b, depth, live: true }
}

/// Geometric breakpoints in `(a, b)` accumulating toward `a` with ratio 1/2:
/// `a + (b-a)/2^j` for `j = levels, ..., 1`.
pub fn graded_breaks<T: Scalar>(a: T, b: T, levels: u32) -> Vec<T> {
    let mut out = vec![a];
    let mut scale = T::one();
    let mut inner = Vec::with_capacity(levels as usize);
    for _ in 0..levels {
        scale = scale * lit(0.5);
        inner.push(a + (b - a) * scale);
    }
    inner.reverse();
    out.extend(inner);
    out.push(b);
    out
}

/// Grading depth that resolves a feature of width `width` at the end of an interval.
pub(crate) fn grading_levels<T: Scalar>(width: T) -> u32 {
    if !(width > T::zero()) {
        return 40;
    }
    let levels = (-to_f64(width).log2()).ceil() + 2.0;
    levels.clamp(0.0, 40.0) as u32
}

/// Adaptive integral of `f` over `[a, b]`.
pub fn integrate_1d<T: Scalar, F: FnMut(T) -> T>(f: F, a: T, b: T, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>> {
    integrate_1d_on(f, &[a, b], spec)
}

/// Adaptive integral over `[breaks[0], breaks[last]]` with the given
/// breakpoints kept as panel boundaries (place them at kinks and peaks).
///
/// Global adaptive bisection: the panel with the largest halving error is
/// split until the summed error meets the tolerance. Panels are summed in
/// left-to-right order, so the result is bit-reproducible.
pub fn integrate_1d_on<T: Scalar, F: FnMut(T) -> T>(mut f: F, breaks: &[T], spec: &QuadratureSpec<T>) -> Result<EvalResult<T>> {
    if breaks.len() < 2 || breaks.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Parameter("integration breakpoints must be strictly increasing".into()));
    }
    let rule = Rule::new(spec.nodes_per_panel);
    let mut panels: Vec<Panel<T>> = Vec::new();
    let mut heap = BinaryHeap::new();
    for w in breaks.windows(2) {
        let h = (w[1] - w[0]) / from_usize::<T>(spec.initial_panels);
        for i in 0..spec.initial_panels {
            let a = w[0] + h * from_usize::<T>(i);
            let b = if i + 1 == spec.initial_panels { w[1] } else { a + h };
            let (whole, _) = rule.apply(&mut f, a, b);
            let p = make_panel(&rule, &mut f, a, b, whole, 0);
            heap.push(Key(to_f64(p.err), panels.len()));
            panels.push(p);
        }
    }
    let floor_factor = T::epsilon() * lit(16.0);
    let mut converged = false;
    // Running sums, updated on each split.
    let (mut total, mut err, mut l1) = (T::zero(), T::zero(), T::zero());
    for p in &panels {
        total = total + p.left + p.right;
        err = err + p.err;
        l1 = l1 + p.l1;
    }
    let mut live = panels.len();
    loop {
        let target = (spec.tol * T::one().max(total.abs())).max(floor_factor * l1);
        if err <= target {
            converged = true;
            break;
        }
        let Some(Key(_, idx)) = heap.pop() else { break };
        if panels[idx].depth >= spec.max_depth || live + 1 > MAX_PANELS_1D {
            break;
        }
        let (a, b, left, right, depth) = {
            let p = &mut panels[idx];
            p.live = false;
            total = total - p.left - p.right;
            err = err - p.err;
            l1 = l1 - p.l1;
            (p.a, p.b, p.left, p.right, p.depth)
        };
        let m = (a + b) * lit(0.5);
        for (lo, hi, whole) in [(a, m, left), (m, b, right)] {
            let child = make_panel(&rule, &mut f, lo, hi, whole, depth + 1);
            total = total + child.left + child.right;
            err = err + child.err;
            l1 = l1 + child.l1;
            heap.push(Key(to_f64(child.err), panels.len()));
            panels.push(child);
        }
        err = err.max(T::zero());
        live += 1;
    }
    let mut live: Vec<&Panel<T>> = panels.iter().filter(|p| p.live).collect();
    live.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap_or(Ordering::Equal));
    let (mut total, mut err, mut l1) = (T::zero(), T::zero(), T::zero());
    for p in &live {
        total = total + p.left + p.right;
        err = err + p.err;
        l1 = l1 + p.l1;
    }
    Ok(EvalResult { value: total, abs_error: err + floor_factor * l1, terms_used: live.len(), converged })
}

/// An integrand on a rectangle whose per-coordinate work can be shared
/// across a tensor grid: `axis_x` and `axis_y` run once per node, `eval` once
/// per node pair.
pub trait TensorIntegrand<T> {
    type Axis: Clone;
    fn axis_x(&mut self, x: T) -> Self::Axis;
    fn axis_y(&mut self, y: T) -> Self::Axis;
    fn eval(&mut self, x: &Self::Axis, y: &Self::Axis) -> T;
}

impl<T: Copy, F: FnMut(T, T) -> T> TensorIntegrand<T> for F {
    type Axis = T;
    fn axis_x(&mut self, x: T) -> T {
        x
    }
    fn axis_y(&mut self, y: T) -> T {
        y
    }
    fn eval(&mut self, x: &T, y: &T) -> T {
        self(*x, *y)
    }
}

struct Cell<T> {
    x: (T, T),
    y: (T, T),
    value: T,
    err_x: T,
    err_y: T,
    l1: T,
    depth: u32,
    live: bool,
}

struct AxisSamples<A, T> {
    data: Vec<A>,
    weights: Vec<T>,
}

fn axis_samples<T: Scalar, A>(rule: &Rule<T>, lo: T, hi: T, mut make: impl FnMut(T) -> A) -> [AxisSamples<A, T>; 2] {
    // Index 0: full-interval rule; index 1: two half-interval rules concatenated.
    let mid = (lo + hi) * lit(0.5);
    let mut whole = AxisSamples { data: Vec::new(), weights: Vec::new() };
    for (x, w) in rule.points(lo, hi) {
        whole.data.push(make(x));
        whole.weights.push(w);
    }
    let mut halves = AxisSamples { data: Vec::new(), weights: Vec::new() };
    for (a, b) in [(lo, mid), (mid, hi)] {
        for (x, w) in rule.points(a, b) {
            halves.data.push(make(x));
            halves.weights.push(w);
        }
    }
    [whole, halves]
}

fn tensor_sum<T: Scalar, I: TensorIntegrand<T>>(
    f: &mut I,
    xs: &AxisSamples<I::Axis, T>,
    ys: &AxisSamples<I::Axis, T>,
) -> (T, T) {
    let mut s = T::zero();
    let mut l1 = T::zero();
    for (xa, &wx) in xs.data.iter().zip(&xs.weights) {
        let mut row = T::zero();
        let mut row_abs = T::zero();
        for (ya, &wy) in ys.data.iter().zip(&ys.weights) {
            let v = f.eval(xa, ya) * wy;
            row = row + v;
            row_abs = row_abs + v.abs();
        }
        s = s + row * wx;
        l1 = l1 + row_abs * wx.abs();
    }
    (s, l1)
}

fn make_cell<T: Scalar, I: TensorIntegrand<T>>(rule: &Rule<T>, f: &mut I, x: (T, T), y: (T, T), depth: u32) -> Cell<T> {
    let [xw, xh] = axis_samples(rule, x.0, x.1, |t| f.axis_x(t));
    let [yw, yh] = axis_samples(rule, y.0, y.1, |t| f.axis_y(t));
    let (q, _) = tensor_sum(f, &xw, &yw);
    let (qx, _) = tensor_sum(f, &xh, &yw);
    let (qy, l1) = tensor_sum(f, &xw, &yh);
    Cell { x, y, value: qx + qy - q, err_x: (qx - q).abs(), err_y: (qy - q).abs(), l1, depth, live: true }
}

/// Adaptive integral of `f(x, y)` over `[x0, x1] × [y0, y1]`.
pub fn integrate_2d<T: Scalar, I: TensorIntegrand<T>>(f: I, x: (T, T), y: (T, T), spec: &QuadratureSpec<T>) -> Result<EvalResult<T>> {
    integrate_2d_on(f, &[x.0, x.1], &[y.0, y.1], spec)
}

/// Adaptive tensor-product integral with breakpoints on each axis.
///
/// Each cell carries a full-cell rule and the two single-axis halvings; the
/// cell value is their extrapolated combination and each axis contributes
/// its own halving error, so refinement splits only the axis that needs it.
pub fn integrate_2d_on<T: Scalar, I: TensorIntegrand<T>>(
    mut f: I,
    xbreaks: &[T],
    ybreaks: &[T],
    spec: &QuadratureSpec<T>,
) -> Result<EvalResult<T>> {
    for b in [xbreaks, ybreaks] {
        if b.len() < 2 || b.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Parameter("integration breakpoints must be strictly increasing".into()));
        }
    }
    let rule = Rule::new(spec.nodes_per_panel);
    let split = |breaks: &[T]| -> Vec<(T, T)> {
        let mut out = Vec::new();
        for w in breaks.windows(2) {
            let h = (w[1] - w[0]) / from_usize::<T>(spec.initial_panels);
            for i in 0..spec.initial_panels {
                let a = w[0] + h * from_usize::<T>(i);
                let b = if i + 1 == spec.initial_panels { w[1] } else { a + h };
                out.push((a, b));
            }
        }
        out
    };
    let xs = split(xbreaks);
    let ys = split(ybreaks);
    let mut cells: Vec<Cell<T>> = Vec::new();
    let mut heap = BinaryHeap::new();
    for &x in &xs {
        for &y in &ys {
            let c = make_cell(&rule, &mut f, x, y, 0);
            heap.push(Key(to_f64(c.err_x + c.err_y), cells.len()));
            cells.push(c);
        }
    }
    let floor_factor = T::epsilon() * lit(64.0);
    let mut converged = false;
    let mut live_count = cells.len();
    let (mut total, mut err, mut l1) = (T::zero(), T::zero(), T::zero());
    for c in &cells {
        total = total + c.value;
        err = err + c.err_x + c.err_y;
        l1 = l1 + c.l1;
    }
    loop {
        let target = (spec.tol * T::one().max(total.abs())).max(floor_factor * l1);
        if err <= target {
            converged = true;
            break;
        }
        let Some(Key(_, idx)) = heap.pop() else { break };
        if cells[idx].depth >= spec.max_depth || live_count + 1 > MAX_CELLS_2D {
            break;
        }
        let (x, y, along_x, depth) = {
            let c = &mut cells[idx];
            c.live = false;
            total = total - c.value;
            err = err - c.err_x - c.err_y;
            l1 = l1 - c.l1;
            (c.x, c.y, c.err_x >= c.err_y, c.depth)
        };
        let children = if along_x {
            let m = (x.0 + x.1) * lit(0.5);
            [((x.0, m), y), ((m, x.1), y)]
        } else {
            let m = (y.0 + y.1) * lit(0.5);
            [(x, (y.0, m)), (x, (m, y.1))]
        };
        for (cx, cy) in children {
            let c = make_cell(&rule, &mut f, cx, cy, depth + 1);
            total = total + c.value;
            err = err + c.err_x + c.err_y;
            l1 = l1 + c.l1;
            heap.push(Key(to_f64(c.err_x + c.err_y), cells.len()));
            cells.push(c);
        }
        err = err.max(T::zero());
        live_count += 1;
    }
    let mut live: Vec<&Cell<T>> = cells.iter().filter(|c| c.live).collect();
    live.sort_by(|p, q| {
        p.x.0
            .partial_cmp(&q.x.0)
            .unwrap_or(Ordering::Equal)
            .then(p.y.0.partial_cmp(&q.y.0).unwrap_or(Ordering::Equal))
    });
    let (mut total, mut err, mut l1) = (T::zero(), T::zero(), T::zero());
    for c in &live {
        total = total + c.value;
        err = err + c.err_x + c.err_y;
        l1 = l1 + c.l1;
    }
    Ok(EvalResult { value: total, abs_error: err + floor_factor * l1, terms_used: live.len(), converged })
}
