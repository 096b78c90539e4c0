//! Compact finite-difference derivatives along grid lines.
//!
//! Interior rows of the first-derivative operator read
//!
//! ```text
//! α Q'_{j-1} + Q'_j + α Q'_{j+1} = a (Q_{j+1} - Q_{j-1}) / 2h + b (Q_{j+2} - Q_{j-2}) / 4h
//! ```
//!
//! Non-periodic lines close with third-order one-sided rows at both ends and
//! the fourth-order Padé row (`α = 1/4`, `a = 3/2`, `b = 0`) one cell in.
//! Second derivatives apply the same operator to the first derivative.

use crate::boundary::BoundarySet;
use crate::error::{Error, Result};
use crate::grid::Field;

/// Shortest line the one-sided closures can handle.
pub const MIN_LINE: usize = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalSystem {
    /// `sub[i]` multiplies `x[i-1]`; for cyclic systems `sub[0]` couples to `x[n-1]`.
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    /// `sup[i]` multiplies `x[i+1]`; for cyclic systems `sup[n-1]` couples to `x[0]`.
    pub sup: Vec<f64>,
    pub rhs: Vec<Vec<f64>>,
    pub periodic: bool,
}

impl TridiagonalSystem {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>, rhs: Vec<Vec<f64>>) -> Self {
        TridiagonalSystem {
            sub,
            diag,
            sup,
            rhs,
            periodic: false,
        }
    }

    pub fn cyclic(mut self) -> Self {
        self.periodic = true;
        self
    }

    fn check(&self) -> Result<usize> {
        let n = self.diag.len();
        if n == 0 || self.sub.len() != n || self.sup.len() != n {
            return Err(Error::Config("inconsistent tridiagonal sizes".into()));
        }
        if self.rhs.iter().any(|r| r.len() != n) {
            return Err(Error::Config("right-hand side length mismatch".into()));
        }
        Ok(n)
    }
}

/// Thomas algorithm, one solution per right-hand side.
pub fn solve_tridiagonal(sys: &TridiagonalSystem) -> Result<Vec<Vec<f64>>> {
    if sys.periodic {
        return Err(Error::Config("cyclic system passed to the Thomas solver".into()));
    }
    sys.check()?;
    let f = Thomas::factor(&sys.sub, &sys.diag, &sys.sup)?;
    Ok(sys
        .rhs
        .iter()
        .map(|r| {
            let mut x = r.clone();
            f.solve_in_place(&mut x);
            x
        })
        .collect())
}

/// Cyclic tridiagonal solve by a Sherman-Morrison rank-one correction.
pub fn solve_cyclic_tridiagonal(sys: &TridiagonalSystem) -> Result<Vec<Vec<f64>>> {
    if !sys.periodic {
        return Err(Error::Config("cyclic solver requires a periodic system".into()));
    }
    let n = sys.check()?;
    if n < 3 {
        return Err(Error::LineTooShort { len: n, min: 3 });
    }
    let f = Cyclic::factor(&sys.sub, &sys.diag, &sys.sup)?;
    Ok(sys
        .rhs
        .iter()
        .map(|r| {
            let mut x = r.clone();
            f.solve_in_place(&mut x);
            x
        })
        .collect())
}

/// LU factors of a non-periodic tridiagonal matrix.
#[derive(Clone, Debug)]
pub(crate) struct Thomas {
    sub: Vec<f64>,
    /// Modified super-diagonal `c'_i`.
    cp: Vec<f64>,
    /// Reciprocal pivots.
    inv: Vec<f64>,
}

impl Thomas {
    fn factor(sub: &[f64], diag: &[f64], sup: &[f64]) -> Result<Self> {
        let n = diag.len();
        let mut cp = vec![0.0; n];
        let mut inv = vec![0.0; n];
        let scale = diag.iter().fold(0.0f64, |m, d| m.max(d.abs())).max(f64::MIN_POSITIVE);
        for i in 0..n {
            let piv = diag[i] - if i > 0 { sub[i] * cp[i - 1] } else { 0.0 };
            if piv.abs() <= 1e-14 * scale {
                return Err(Error::SingularSystem { row: i });
            }
            inv[i] = 1.0 / piv;
            cp[i] = if i + 1 < n { sup[i] * inv[i] } else { 0.0 };
        }
        Ok(Thomas {
            sub: sub.to_vec(),
            cp,
            inv,
        })
    }

    #[inline]
    fn solve_in_place(&self, x: &mut [f64]) {
        self.solve_interleaved(x, 1);
    }

    /// Solves `nv` interleaved right-hand sides, `x[i * nv + v]`.
    #[inline]
    fn solve_interleaved(&self, x: &mut [f64], nv: usize) {
        let n = self.inv.len();
        debug_assert_eq!(x.len(), n * nv);
        for v in 0..nv {
            x[v] *= self.inv[0];
        }
        for i in 1..n {
            let (s, w) = (self.sub[i], self.inv[i]);
            let (prev, cur) = x[(i - 1) * nv..(i + 1) * nv].split_at_mut(nv);
            for v in 0..nv {
                cur[v] = (cur[v] - s * prev[v]) * w;
            }
        }
        for i in (0..n - 1).rev() {
            let c = self.cp[i];
            let (cur, next) = x[i * nv..(i + 2) * nv].split_at_mut(nv);
            for v in 0..nv {
                cur[v] -= c * next[v];
            }
        }
    }
}

/// Factorized cyclic system: the corner-free Thomas factors plus the
/// precomputed correction vector.
#[derive(Clone, Debug)]
pub(crate) struct Cyclic {
    inner: Thomas,
    z: Vec<f64>,
    beta_over_gamma: f64,
    denom: f64,
}

impl Cyclic {
    fn factor(sub: &[f64], diag: &[f64], sup: &[f64]) -> Result<Self> {
        let n = diag.len();
        let alpha = sup[n - 1];
        let beta = sub[0];
        let gamma = -diag[0];
        let mut d = diag.to_vec();
        d[0] -= gamma;
        d[n - 1] -= alpha * beta / gamma;
        let mut s = sub.to_vec();
        s[0] = 0.0;
        let mut p = sup.to_vec();
        p[n - 1] = 0.0;
        let inner = Thomas::factor(&s, &d, &p)?;
        let mut z = vec![0.0; n];
        z[0] = gamma;
        z[n - 1] = alpha;
        inner.solve_in_place(&mut z);
        let bg = beta / gamma;
        let denom = 1.0 + z[0] + bg * z[n - 1];
        if denom.abs() < 1e-14 {
            return Err(Error::SingularSystem { row: 0 });
        }
        Ok(Cyclic {
            inner,
            z,
            beta_over_gamma: bg,
            denom,
        })
    }

    #[inline]
    fn solve_in_place(&self, x: &mut [f64]) {
        self.solve_interleaved(x, 1);
    }

    #[inline]
    fn solve_interleaved(&self, x: &mut [f64], nv: usize) {
        let n = self.z.len();
        self.inner.solve_interleaved(x, nv);
        let mut fact = [0.0; 8];
        for v in 0..nv {
            fact[v] = (x[v] + self.beta_over_gamma * x[(n - 1) * nv + v]) / self.denom;
        }
        for (row, zi) in x.chunks_exact_mut(nv).zip(&self.z) {
            for v in 0..nv {
                row[v] -= fact[v] * zi;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum CompactScheme {
    /// Optimised fourth-order scheme, `α = 5/14`.
    Cd4,
    /// Sixth-order scheme, `α = 1/3`.
    Cd6,
}

impl CompactScheme {
    /// `(α, a, b)` of the interior row.
    pub fn coefficients(self) -> (f64, f64, f64) {
        match self {
            CompactScheme::Cd4 => {
                let al = 5.0 / 14.0;
                (al, 2.0 * (al + 2.0) / 3.0, (4.0 * al - 1.0) / 3.0)
            }
            CompactScheme::Cd6 => (1.0 / 3.0, 14.0 / 9.0, 1.0 / 9.0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Closure {
    OneSided,
    Periodic,
}

/// A factorized tridiagonal matrix, open or cyclic.
#[derive(Clone, Debug)]
pub(crate) enum Factors {
    Open(Thomas),
    Cyclic(Cyclic),
}

impl Factors {
    pub(crate) fn new(sub: &[f64], diag: &[f64], sup: &[f64], periodic: bool) -> Result<Self> {
        Ok(if periodic {
            Factors::Cyclic(Cyclic::factor(sub, diag, sup)?)
        } else {
            Factors::Open(Thomas::factor(sub, diag, sup)?)
        })
    }

    #[inline]
    pub(crate) fn solve_interleaved(&self, x: &mut [f64], nv: usize) {
        match self {
            Factors::Open(f) => f.solve_interleaved(x, nv),
            Factors::Cyclic(f) => f.solve_interleaved(x, nv),
        }
    }
}

/// First-derivative operator factorized once for a line length.
#[derive(Clone, Debug)]
pub struct CompactOperator {
    pub n: usize,
    pub scheme: CompactScheme,
    pub closure: Closure,
    factors: Factors,
}

impl CompactOperator {
    pub fn new(n: usize, scheme: CompactScheme, closure: Closure) -> Result<Self> {
        if n < MIN_LINE {
            return Err(Error::LineTooShort { len: n, min: MIN_LINE });
        }
        let (al, _, _) = scheme.coefficients();
        let mut sub = vec![al; n];
        let diag = vec![1.0; n];
        let mut sup = vec![al; n];
        let factors = match closure {
            Closure::Periodic => Factors::Cyclic(Cyclic::factor(&sub, &diag, &sup)?),
            Closure::OneSided => {
                sub[0] = 0.0;
                sup[0] = 2.0;
                sub[1] = 0.25;
                sup[1] = 0.25;
                sub[n - 2] = 0.25;
                sup[n - 2] = 0.25;
                sub[n - 1] = 2.0;
                sup[n - 1] = 0.0;
                Factors::Open(Thomas::factor(&sub, &diag, &sup)?)
            }
        };
        Ok(CompactOperator {
            n,
            scheme,
            closure,
            factors,
        })
    }

    /// Writes the derivative of `q` (spacing `h`) into `out`.
    pub fn apply(&self, q: &[f64], h: f64, out: &mut [f64]) {
        self.apply_interleaved(q, 1, h, out);
    }

    /// Derivative of `nv` interleaved lines at once, `q[m * nv + v]`.
    /// `nv` is at most 8.
    pub fn apply_interleaved(&self, q: &[f64], nv: usize, h: f64, out: &mut [f64]) {
        let n = self.n;
        assert!(nv <= 8 && q.len() == n * nv && out.len() == n * nv);
        let (_, a, b) = self.scheme.coefficients();
        let ca = a / (2.0 * h);
        let cb = b / (4.0 * h);
        let at = |j: usize, v: usize| q[j * nv + v];
        match &self.factors {
            Factors::Cyclic(f) => {
                let wrap = |j: isize| j.rem_euclid(n as isize) as usize;
                for j in [0, 1, n - 2, n - 1] {
                    let jj = j as isize;
                    let (p1, m1, p2, m2) = (wrap(jj + 1), wrap(jj - 1), wrap(jj + 2), wrap(jj - 2));
                    for v in 0..nv {
                        out[j * nv + v] = ca * (at(p1, v) - at(m1, v)) + cb * (at(p2, v) - at(m2, v));
                    }
                }
                interior_rows(q, nv, n, ca, cb, out);
                f.solve_interleaved(out, nv);
            }
            Factors::Open(f) => {
                let inv_h = 1.0 / h;
                for v in 0..nv {
                    out[v] = (-2.5 * at(0, v) + 2.0 * at(1, v) + 0.5 * at(2, v)) * inv_h;
                    out[nv + v] = 0.75 * (at(2, v) - at(0, v)) * inv_h;
                    out[(n - 2) * nv + v] = 0.75 * (at(n - 1, v) - at(n - 3, v)) * inv_h;
                    out[(n - 1) * nv + v] = (2.5 * at(n - 1, v) - 2.0 * at(n - 2, v) - 0.5 * at(n - 3, v)) * inv_h;
                }
                interior_rows(q, nv, n, ca, cb, out);
                f.solve_interleaved(out, nv);
            }
        }
    }
}

#[inline]
fn interior_rows(q: &[f64], nv: usize, n: usize, ca: f64, cb: f64, out: &mut [f64]) {
    for j in 2..n - 2 {
        let w = &q[(j - 2) * nv..(j + 3) * nv];
        let o = &mut out[j * nv..(j + 1) * nv];
        for v in 0..nv {
            o[v] = ca * (w[3 * nv + v] - w[nv + v]) + cb * (w[4 * nv + v] - w[v]);
        }
    }
}

pub fn first_derivative(line: &[f64], h: f64, scheme: CompactScheme, closure: Closure) -> Result<Vec<f64>> {
    let op = CompactOperator::new(line.len(), scheme, closure)?;
    let mut out = vec![0.0; line.len()];
    op.apply(line, h, &mut out);
    Ok(out)
}

/// Applies the first-derivative operator to an already computed derivative.
pub fn second_derivative(qprime: &[f64], h: f64, scheme: CompactScheme, closure: Closure) -> Result<Vec<f64>> {
    first_derivative(qprime, h, scheme, closure)
}

/// Physical first and second derivatives of every variable along every
/// active axis, stored at interior cells.
#[derive(Clone, Debug)]
pub struct GradientField {
    pub first: Vec<Field>,
    pub second: Vec<Field>,
}

/// Reusable operators and line buffers for gradient evaluation.
#[derive(Debug, Default)]
pub struct GradientWorkspace {
    ops: Vec<CompactOperator>,
    line: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
}

impl GradientWorkspace {
    fn operator(&mut self, n: usize, scheme: CompactScheme, closure: Closure) -> Result<usize> {
        if let Some(i) = self
            .ops
            .iter()
            .position(|o| o.n == n && o.scheme == scheme && o.closure == closure)
        {
            return Ok(i);
        }
        self.ops.push(CompactOperator::new(n, scheme, closure)?);
        Ok(self.ops.len() - 1)
    }
}

impl GradientField {
    pub fn zeros(f: &Field) -> Self {
        let nd = f.grid.ndim;
        GradientField {
            first: (0..nd).map(|_| Field::new(f.grid.clone(), f.nvars)).collect(),
            second: (0..nd).map(|_| Field::new(f.grid.clone(), f.nvars)).collect(),
        }
    }
}

/// Computes compact gradients of all variables of a primitive field. The
/// closure along each axis follows the boundary tags.
pub fn gradients_all(f: &Field, bcs: &BoundarySet, scheme: CompactScheme) -> Result<GradientField> {
    let mut g = GradientField::zeros(f);
    let mut ws = GradientWorkspace::default();
    gradients_into(f, bcs, scheme, &mut g, &mut ws, true)?;
    Ok(g)
}

/// In-place variant of [`gradients_all`]; `with_second` skips the second
/// derivative when only first derivatives are needed.
pub fn gradients_into(
    f: &Field,
    bcs: &BoundarySet,
    scheme: CompactScheme,
    out: &mut GradientField,
    ws: &mut GradientWorkspace,
    with_second: bool,
) -> Result<()> {
    let grid = &f.grid;
    let nv = f.nvars;
    for axis in 0..grid.ndim {
        let n = grid.dims[axis];
        let closure = if bcs.is_periodic(axis) {
            Closure::Periodic
        } else {
            Closure::OneSided
        };
        let oi = ws.operator(n, scheme, closure)?;
        let h = grid.spacing[axis];
        let stride = grid.stride(axis);
        ws.line.resize(n * nv, 0.0);
        ws.d1.resize(n * nv, 0.0);
        ws.d2.resize(n * nv, 0.0);
        let (oa, ob) = match axis {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        for b in 0..grid.dims[ob] as isize {
            for a in 0..grid.dims[oa] as isize {
                let mut ijk = [0isize; 3];
                ijk[oa] = a;
                ijk[ob] = b;
                let base = grid.index(ijk[0], ijk[1], ijk[2]);
                let op = &ws.ops[oi];
                for m in 0..n {
                    let c = (base + m * stride) * nv;
                    ws.line[m * nv..(m + 1) * nv].copy_from_slice(&f.data[c..c + nv]);
                }
                op.apply_interleaved(&ws.line, nv, h, &mut ws.d1);
                if with_second {
                    op.apply_interleaved(&ws.d1, nv, h, &mut ws.d2);
                }
                for m in 0..n {
                    let c = (base + m * stride) * nv;
                    out.first[axis].data[c..c + nv].copy_from_slice(&ws.d1[m * nv..(m + 1) * nv]);
                    if with_second {
                        out.second[axis].data[c..c + nv].copy_from_slice(&ws.d2[m * nv..(m + 1) * nv]);
                    }
                }
            }
        }
    }
    Ok(())
}
