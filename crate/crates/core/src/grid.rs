use crate::error::{Error, Result};

/// Uniform node grid on the rectangle `[x_min, x_max] x [y_min, y_max]`.
///
/// Node `(i, j)` sits at `(x_min + i*hx, y_min + j*hy)` and is stored at
/// flat index `j*nx + i` everywhere in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
    nx: usize,
    ny: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && y_min.is_finite() && y_max.is_finite()) {
            return Err(Error::Config("grid bounds must be finite".into()));
        }
        if x_max <= x_min {
            return Err(Error::Config(format!("x_max ({x_max}) must exceed x_min ({x_min})")));
        }
        if y_max <= y_min {
            return Err(Error::Config(format!("y_max ({y_max}) must exceed y_min ({y_min})")));
        }
        if nx < 2 || ny < 2 {
            return Err(Error::Config(format!("grid needs at least 2x2 nodes, got {nx}x{ny}")));
        }
        Ok(Self { x_min, x_max, y_min, y_max, nx, ny })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }
    pub fn x_max(&self) -> f64 {
        self.x_max
    }
    pub fn y_min(&self) -> f64 {
        self.y_min
    }
    pub fn y_max(&self) -> f64 {
        self.y_max
    }
    pub fn nx(&self) -> usize {
        self.nx
    }
    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn hx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn hy(&self) -> f64 {
        (self.y_max - self.y_min) / (self.ny - 1) as f64
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x(&self, i: usize) -> f64 {
        // Pin the last node to x_max exactly.
        if i + 1 == self.nx {
            self.x_max
        } else {
            self.x_min + i as f64 * self.hx()
        }
    }

    pub fn y(&self, j: usize) -> f64 {
        if j + 1 == self.ny {
            self.y_max
        } else {
            self.y_min + j as f64 * self.hy()
        }
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Nodes in storage order as `(i, j, x, y)`.
    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize, f64, f64)> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| (i, j, self.x(i), self.y(j))))
    }

    pub fn is_interior(&self, i: usize, j: usize) -> bool {
        i > 0 && j > 0 && i + 1 < self.nx && j + 1 < self.ny
    }

    /// Grid with every spacing halved (node counts `2n - 1`).
    pub fn refined(&self) -> Self {
        Self { nx: 2 * self.nx - 1, ny: 2 * self.ny - 1, ..*self }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }

    /// Locates `(x, y)` on a node, allowing a small fraction of a cell of slack.
    pub fn node_at(&self, x: f64, y: f64) -> Option<(usize, usize)> {
        let fi = (x - self.x_min) / self.hx();
        let fj = (y - self.y_min) / self.hy();
        let (ri, rj) = (fi.round(), fj.round());
        if (fi - ri).abs() > 1e-9 || (fj - rj).abs() > 1e-9 {
            return None;
        }
        if ri < 0.0 || rj < 0.0 || ri as usize >= self.nx || rj as usize >= self.ny {
            return None;
        }
        Some((ri as usize, rj as usize))
    }
}

/// Second-order first derivative of uniformly spaced samples: central in the
/// interior, one-sided three-point stencils at both ends.
///
/// Requires at least three samples.
pub(crate) fn diff_second_order<T>(values: &[T], h: f64) -> Vec<T>
where
    T: Copy + std::ops::Sub<Output = T> + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
{
    let n = values.len();
    debug_assert!(n >= 3);
    let mut out = Vec::with_capacity(n);
    let inv = 1.0 / (2.0 * h);
    out.push((values[0] * -3.0 + values[1] * 4.0 - values[2]) * inv);
    for k in 1..n - 1 {
        out.push((values[k + 1] - values[k - 1]) * inv);
    }
    out.push((values[n - 1] * 3.0 - values[n - 2] * 4.0 + values[n - 3]) * inv);
    out
}
