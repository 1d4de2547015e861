use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Quaternion `w + x i + y j + z k`. Complex numbers are stored with `y = z = 0`
/// and reals with `x = y = z = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion { w: 0.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const ONE: Quaternion = Quaternion { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    pub const fn complex(re: f64, im: f64) -> Self {
        Self::new(re, im, 0.0, 0.0)
    }

    /// Builds a scalar from 1, 2 or 4 real components.
    pub fn from_components(c: &[f64]) -> Option<Self> {
        match *c {
            [w] => Some(Self::real(w)),
            [w, x] => Some(Self::complex(w, x)),
            [w, x, y, z] => Some(Self::new(w, x, y, z)),
            _ => None,
        }
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Components beyond the first `delta` are zero.
    pub fn fits_field(self, delta: usize) -> bool {
        match delta {
            1 => self.x == 0.0 && self.y == 0.0 && self.z == 0.0,
            2 => self.y == 0.0 && self.z == 0.0,
            _ => true,
        }
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

/// Hermitian inner product `(x, y) = sum_k conj(x_k) y_k`.
pub fn inner(x: &[Quaternion], y: &[Quaternion]) -> Quaternion {
    x.iter()
        .zip(y)
        .fold(Quaternion::ZERO, |acc, (a, b)| acc + a.conj() * *b)
}

/// `sum_k |x_k|^2`
pub fn norm_sq(x: &[Quaternion]) -> f64 {
    x.iter().map(|q| q.norm_sq()).sum()
}
