use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Tolerance on `|norm − 1|` accepted by [`UnitVector3::new`].
pub const UNIT_NORM_TOL: f64 = 1e-9;

/// A plain 3-vector. Not necessarily normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Vec3 {
        Vec3 { x, y, z }
    }

    /// Euclidean inner product. Bilinear and symmetric.
    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;

    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;

    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;

    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;

    fn mul(self, k: f64) -> Vec3 {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }
}

/// A normalized 3-vector on the sphere: a measurement setting or a hidden
/// variable. Norm is 1 within [`UNIT_NORM_TOL`] at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector3(Vec3);

impl UnitVector3 {
    pub const X_AXIS: UnitVector3 = UnitVector3(Vec3::new(1.0, 0.0, 0.0));
    pub const Y_AXIS: UnitVector3 = UnitVector3(Vec3::new(0.0, 1.0, 0.0));
    pub const Z_AXIS: UnitVector3 = UnitVector3(Vec3::new(0.0, 0.0, 1.0));

    /// Accepts components already unit-norm within [`UNIT_NORM_TOL`].
    pub fn new(x: f64, y: f64, z: f64) -> Result<UnitVector3> {
        let v = Vec3::new(x, y, z);
        if !v.is_finite() {
            return Err(Error::NonFinite {
                context: "unit vector components",
            });
        }
        let norm = v.norm();
        if (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::NotUnit {
                norm,
                tol: UNIT_NORM_TOL,
            });
        }
        Ok(UnitVector3(v))
    }

    /// Normalizes arbitrary finite components. Errors on near-zero vectors.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<UnitVector3> {
        let v = Vec3::new(x, y, z);
        if !v.is_finite() {
            return Err(Error::NonFinite {
                context: "vector components",
            });
        }
        let norm = v.norm();
        if norm < 1e-12 {
            return Err(Error::ZeroVector { norm });
        }
        Ok(UnitVector3(v * (1.0 / norm)))
    }

    /// The direction at angle `theta` from the z-axis, in the xz-plane.
    pub fn in_xz_plane(theta: f64) -> UnitVector3 {
        UnitVector3(Vec3::new(theta.sin(), 0.0, theta.cos()))
    }

    pub fn x(self) -> f64 {
        self.0.x
    }

    pub fn y(self) -> f64 {
        self.0.y
    }

    pub fn z(self) -> f64 {
        self.0.z
    }

    pub fn as_vec3(self) -> Vec3 {
        self.0
    }

    pub fn dot(self, other: UnitVector3) -> f64 {
        self.0.dot(other.0)
    }

    /// Inner product with an arbitrary (possibly unnormalized) vector.
    pub fn dot_vec(self, v: Vec3) -> f64 {
        self.0.dot(v)
    }
}

impl Neg for UnitVector3 {
    type Output = UnitVector3;

    fn neg(self) -> UnitVector3 {
        // Componentwise negation is exact, so the norm is unchanged.
        UnitVector3(-self.0)
    }
}

/// The pair `λ± = λ1 ± λ2`, kept unnormalized.
///
/// `sg` is scale invariant, so normalizing would change nothing; the
/// degenerate draw `λ1 = ±λ2` (one of the two a zero vector) has measure
/// zero and falls back to the `sg(0) = 1` convention. For unit `λ1`, `λ2`
/// the two vectors are orthogonal: `λ+·λ− = |λ1|² − |λ2|² = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedVectorPair {
    pub lambda_plus: Vec3,
    pub lambda_minus: Vec3,
}

impl DerivedVectorPair {
    pub fn new(lambda1: UnitVector3, lambda2: UnitVector3) -> DerivedVectorPair {
        DerivedVectorPair {
            lambda_plus: lambda1.as_vec3() + lambda2.as_vec3(),
            lambda_minus: lambda1.as_vec3() - lambda2.as_vec3(),
        }
    }
}
