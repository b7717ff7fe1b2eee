//! Classical fourth-order Runge–Kutta step for small autonomous systems.

/// One RK4 step of `y' = f(y)` with step `h`.
pub fn rk4_step<const N: usize, F>(f: &F, y: [f64; N], h: f64) -> [f64; N]
where
    F: Fn([f64; N]) -> [f64; N],
{
    let shift = |y: [f64; N], k: [f64; N], s: f64| {
        let mut out = y;
        for i in 0..N {
            out[i] += s * k[i];
        }
        out
    };
    let k1 = f(y);
    let k2 = f(shift(y, k1, 0.5 * h));
    let k3 = f(shift(y, k2, 0.5 * h));
    let k4 = f(shift(y, k3, h));
    let mut out = y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}
