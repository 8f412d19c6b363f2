use crate::error::{invalid, numerical, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub initial_step: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-12, initial_step: 1e-3, max_steps: 2_000_000 }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] =
    [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0];

/// Dormand-Prince 5(4) integration of `y' = f(t, y)` from `(t0, y0)`, returning the state at
/// every point of the increasing `grid` (all `>= t0`). Steps land exactly on grid points.
pub fn dopri5<const N: usize>(
    mut f: impl FnMut(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    y0: [f64; N],
    grid: &[f64],
    opts: OdeOptions,
) -> Result<Vec<[f64; N]>> {
    if grid.windows(2).any(|w| w[1] < w[0]) || grid.first().is_some_and(|&g| g < t0) {
        return Err(invalid("output grid must be non-decreasing and start at or after t0"));
    }
    let mut out = Vec::with_capacity(grid.len());
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = opts.initial_step;
    let mut steps = 0;
    for &target in grid {
        while t < target {
            steps += 1;
            if steps > opts.max_steps {
                return Err(numerical(format!("step budget exhausted at t = {t}")));
            }
            let last = h >= target - t;
            let step = if last { target - t } else { h };
            let mut k = [[0.0; N]; 7];
            k[0] = k1;
            for s in 1..7 {
                let mut ys = y;
                for (i, yi) in ys.iter_mut().enumerate() {
                    *yi += step * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>();
                }
                k[s] = f(t + C[s] * step, &ys);
            }
            let mut y_new = y;
            for (i, yi) in y_new.iter_mut().enumerate() {
                *yi += step * (0..6).map(|j| A[6][j] * k[j][i]).sum::<f64>();
            }
            let err = (0..N)
                .map(|i| {
                    let e = step * (0..7).map(|j| E[j] * k[j][i]).sum::<f64>();
                    let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
                    (e / sc).powi(2)
                })
                .sum::<f64>()
                / N as f64;
            let err = err.sqrt();
            if !err.is_finite() {
                return Err(numerical(format!("non-finite state near t = {t}")));
            }
            if err <= 1.0 {
                t = if last { target } else { t + step };
                y = y_new;
                k1 = k[6];
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            // a shortened final step says nothing about the natural step size
            if !(last && err <= 1.0) || factor < 1.0 {
                h = step * factor;
            }
            if h < 1e-14 * t.abs().max(1.0) {
                return Err(numerical(format!("step size underflow at t = {t}")));
            }
        }
        out.push(y);
    }
    Ok(out)
}
