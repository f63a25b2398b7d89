//! Quaternion scalars, imaginary units and symplectic frames.
//!
//! Sign convention: the Hamilton product satisfies `e1 * e2 = +e3`
//! (and cyclically). This is the only place the convention is fixed; every
//! other module goes through [`Quaternion::mul`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when validating unit imaginary directions and frames.
pub const UNIT_TOL: f64 = 1e-12;

/// A real quaternion `w + x e1 + y e2 + z e3`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(c: [f64; 4]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl From<f64> for Quaternion {
    fn from(r: f64) -> Self {
        Quaternion::real(r)
    }
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const E1: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const E2: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const E3: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    /// Purely imaginary quaternion with the given vector part.
    #[inline]
    pub const fn pure(v: [f64; 3]) -> Self {
        Quaternion::new(0.0, v[0], v[1], v[2])
    }

    #[inline]
    pub fn vector(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Imaginary part `x e1 + y e2 + z e3`.
    #[inline]
    pub fn imag(&self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    #[inline]
    pub fn conj(&self) -> Quaternion {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    #[inline]
    pub fn imag_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Quaternion> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            None
        } else {
            Some(self.conj() * (1.0 / n2))
        }
    }

    /// Quaternion exponential `e^q`.
    pub fn exp(&self) -> Quaternion {
        let r = self.imag_norm();
        let ew = self.w.exp();
        if r == 0.0 {
            return Quaternion::real(ew);
        }
        let s = ew * r.sin() / r;
        Quaternion::new(ew * r.cos(), s * self.x, s * self.y, s * self.z)
    }

    /// Euclidean inner product of the coefficient 4-vectors.
    #[inline]
    pub fn dot(&self, other: &Quaternion) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn is_finite(&self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Hamilton product under the global convention `e1 e2 = e3`.
#[inline]
pub fn qmul(p: Quaternion, q: Quaternion) -> Quaternion {
    Quaternion::new(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )
}

#[inline]
pub fn qconj(q: Quaternion) -> Quaternion {
    q.conj()
}

#[inline]
pub fn qnorm(q: Quaternion) -> f64 {
    q.norm()
}

impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, rhs: Quaternion) -> Quaternion {
        qmul(self, rhs)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, s: f64) -> Quaternion {
        self * (1.0 / s)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, rhs: Quaternion) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, rhs: Quaternion) {
        *self = *self - rhs;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:+.6} {:+.6}e1 {:+.6}e2 {:+.6}e3",
            self.w, self.x, self.y, self.z
        )
    }
}

/// A unit direction in the imaginary 3-space; squares to `-1` as a quaternion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct ImaginaryUnit {
    direction: [f64; 3],
}

impl TryFrom<[f64; 3]> for ImaginaryUnit {
    type Error = Error;
    fn try_from(v: [f64; 3]) -> Result<Self> {
        ImaginaryUnit::new(v)
    }
}

impl From<ImaginaryUnit> for [f64; 3] {
    fn from(u: ImaginaryUnit) -> Self {
        u.direction
    }
}

impl ImaginaryUnit {
    pub const E1: ImaginaryUnit = ImaginaryUnit {
        direction: [1.0, 0.0, 0.0],
    };
    pub const E2: ImaginaryUnit = ImaginaryUnit {
        direction: [0.0, 1.0, 0.0],
    };
    pub const E3: ImaginaryUnit = ImaginaryUnit {
        direction: [0.0, 0.0, 1.0],
    };

    /// Accepts `v` only if it already has unit length (within [`UNIT_TOL`]).
    pub fn new(v: [f64; 3]) -> Result<Self> {
        let n = norm3(v);
        if !n.is_finite() || (n - 1.0).abs() > UNIT_TOL {
            return Err(Error::structure("imaginary unit must have norm 1", (n - 1.0).abs()));
        }
        Ok(ImaginaryUnit { direction: v })
    }

    /// Normalizes an arbitrary nonzero 3-vector.
    pub fn normalized(v: [f64; 3]) -> Result<Self> {
        let n = norm3(v);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::structure("cannot normalize a zero direction", n));
        }
        Ok(ImaginaryUnit {
            direction: [v[0] / n, v[1] / n, v[2] / n],
        })
    }

    #[inline]
    pub fn direction(&self) -> [f64; 3] {
        self.direction
    }

    #[inline]
    pub fn as_quaternion(&self) -> Quaternion {
        Quaternion::pure(self.direction)
    }

    pub fn neg(&self) -> ImaginaryUnit {
        let d = self.direction;
        ImaginaryUnit {
            direction: [-d[0], -d[1], -d[2]],
        }
    }

    /// Quaternion `re + im * self` in the complex slice spanned by this unit.
    #[inline]
    pub fn complex(&self, z: Complex64) -> Quaternion {
        let d = self.direction;
        Quaternion::new(z.re, z.im * d[0], z.im * d[1], z.im * d[2])
    }

    /// Projects `q` onto the slice `C_i`, returning `(re, im)` as a complex number.
    #[inline]
    pub fn to_complex(&self, q: Quaternion) -> Complex64 {
        let d = self.direction;
        Complex64::new(q.w, q.x * d[0] + q.y * d[1] + q.z * d[2])
    }

    /// Norm of the component of `q` that lies outside `C_i`.
    pub fn off_slice_norm(&self, q: Quaternion) -> f64 {
        (q - self.complex(self.to_complex(q))).norm()
    }
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// An orthonormal imaginary triple `(i, j, k = ij)`.
///
/// Every quaternion decomposes uniquely as `a0 + a1 i + a2 j + a3 k`, and
/// equivalently as `z1 + z2 j` with `z1, z2` in the slice `C_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FrameWire", into = "FrameWire")]
pub struct Frame {
    i: ImaginaryUnit,
    j: ImaginaryUnit,
    k: ImaginaryUnit,
}

#[derive(Serialize, Deserialize)]
struct FrameWire {
    i: [f64; 3],
    j: [f64; 3],
}

impl TryFrom<FrameWire> for Frame {
    type Error = Error;
    fn try_from(w: FrameWire) -> Result<Self> {
        Frame::new(ImaginaryUnit::new(w.i)?, ImaginaryUnit::new(w.j)?)
    }
}

impl From<Frame> for FrameWire {
    fn from(f: Frame) -> Self {
        FrameWire {
            i: f.i.direction(),
            j: f.j.direction(),
        }
    }
}

impl Default for Frame {
    fn default() -> Self {
        Frame::standard()
    }
}

impl Frame {
    /// The frame `(e1, e2, e3)`.
    pub const fn standard() -> Frame {
        Frame {
            i: ImaginaryUnit::E1,
            j: ImaginaryUnit::E2,
            k: ImaginaryUnit::E3,
        }
    }

    /// Builds the frame `(i, j, ij)`; `i` and `j` must be orthogonal.
    pub fn new(i: ImaginaryUnit, j: ImaginaryUnit) -> Result<Frame> {
        let d = dot3(i.direction(), j.direction());
        if d.abs() > UNIT_TOL {
            return Err(Error::structure("frame units must be orthogonal", d.abs()));
        }
        // For orthogonal pure units ij = i x j (the real part -i.j vanishes).
        let k = ImaginaryUnit {
            direction: cross3(i.direction(), j.direction()),
        };
        Ok(Frame { i, j, k })
    }

    #[inline]
    pub fn i(&self) -> ImaginaryUnit {
        self.i
    }

    #[inline]
    pub fn j(&self) -> ImaginaryUnit {
        self.j
    }

    #[inline]
    pub fn k(&self) -> ImaginaryUnit {
        self.k
    }

    /// Coefficients `(a0, a1, a2, a3)` of `q = a0 + a1 i + a2 j + a3 k`.
    #[inline]
    pub fn coords(&self, q: Quaternion) -> [f64; 4] {
        let v = q.vector();
        [
            q.w,
            dot3(v, self.i.direction),
            dot3(v, self.j.direction),
            dot3(v, self.k.direction),
        ]
    }

    #[inline]
    pub fn from_coords(&self, a: [f64; 4]) -> Quaternion {
        let (i, j, k) = (self.i.direction, self.j.direction, self.k.direction);
        Quaternion::new(
            a[0],
            a[1] * i[0] + a[2] * j[0] + a[3] * k[0],
            a[1] * i[1] + a[2] * j[1] + a[3] * k[1],
            a[1] * i[2] + a[2] * j[2] + a[3] * k[2],
        )
    }

    /// Splits `q = z1 + z2 j` with `z1, z2` in `C_i`.
    #[inline]
    pub fn split(&self, q: Quaternion) -> (Complex64, Complex64) {
        let a = self.coords(q);
        // a2 j + a3 k = (a2 + a3 i) j since ij = k.
        (Complex64::new(a[0], a[1]), Complex64::new(a[2], a[3]))
    }

    /// Inverse of [`Frame::split`].
    #[inline]
    pub fn join(&self, z1: Complex64, z2: Complex64) -> Quaternion {
        self.from_coords([z1.re, z1.im, z2.re, z2.im])
    }

    /// Embeds a complex number into the slice `C_i`.
    #[inline]
    pub fn complex(&self, z: Complex64) -> Quaternion {
        self.i.complex(z)
    }

    #[inline]
    pub fn to_complex(&self, q: Quaternion) -> Complex64 {
        self.i.to_complex(q)
    }
}

/// Symplectic decomposition `q = z1 + z2 j` relative to `f`.
pub fn symplectic_split(q: Quaternion, f: &Frame) -> (Complex64, Complex64) {
    f.split(q)
}

/// Completes `i` to a frame: `j` is the coordinate axis least aligned with
/// `i` with the `i` component projected out, then `k = ij`.
pub fn frame_complete(i: ImaginaryUnit) -> Frame {
    let d = i.direction();
    let mut axis = 0;
    for m in 1..3 {
        if d[m].abs() < d[axis].abs() {
            axis = m;
        }
    }
    let mut e = [0.0; 3];
    e[axis] = 1.0;
    let c = d[axis];
    let raw = [e[0] - c * d[0], e[1] - c * d[1], e[2] - c * d[2]];
    // |i| = 1 and |c| <= 1/sqrt(3), so raw has norm >= sqrt(2/3).
    let j = ImaginaryUnit::normalized(raw).expect("projected axis is nonzero");
    let mut j_dir = j.direction();
    // One re-orthogonalization pass keeps i.j at round-off level.
    let c2 = dot3(j_dir, d);
    for m in 0..3 {
        j_dir[m] -= c2 * d[m];
    }
    let j = ImaginaryUnit::normalized(j_dir).expect("nonzero");
    Frame::new(i, j).expect("constructed orthogonal pair")
}

/// Representative `q0 + i |Im q|` of the similarity class of `q` in the
/// closed upper half of `C_i`.
pub fn sphere_representative(q: Quaternion, i: ImaginaryUnit) -> Quaternion {
    i.complex(Complex64::new(q.w, q.imag_norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn unit_products() {
        assert_eq!(Quaternion::E1 * Quaternion::E2, Quaternion::E3);
        assert_eq!(Quaternion::E2 * Quaternion::E3, Quaternion::E1);
        assert_eq!(Quaternion::E3 * Quaternion::E1, Quaternion::E2);
        assert_eq!(Quaternion::E2 * Quaternion::E1, -Quaternion::E3);
        for e in [Quaternion::E1, Quaternion::E2, Quaternion::E3] {
            assert_eq!(e * e, Quaternion::real(-1.0));
        }
    }

    #[test]
    fn conj_and_norm() {
        let q = Quaternion::new(1.0, 1.0, 0.0, 0.0);
        assert_eq!(qconj(q), Quaternion::new(1.0, -1.0, 0.0, 0.0));
        assert_eq!(qnorm(Quaternion::new(1.0, 1.0, 1.0, 1.0)), 2.0);
    }

    #[test]
    fn split_examples() {
        let f = Frame::standard();
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        let (z1, z2) = symplectic_split(q, &f);
        assert_eq!(z1, Complex64::new(1.0, 2.0));
        assert_eq!(z2, Complex64::new(3.0, 4.0));
        // independent reconstruction through qmul
        let back = f.complex(z1) + f.complex(z2) * f.j().as_quaternion();
        assert!(close(back, q, 1e-14));

        let (z1, z2) = symplectic_split(Quaternion::real(-2.5), &f);
        assert_eq!((z1, z2), (Complex64::new(-2.5, 0.0), Complex64::new(0.0, 0.0)));
        let (z1, z2) = symplectic_split(Quaternion::E2, &f);
        assert_eq!((z1, z2), (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn frame_complete_examples() {
        let f = frame_complete(ImaginaryUnit::E1);
        assert_eq!(f.i(), ImaginaryUnit::E1);
        assert_eq!(f.j(), ImaginaryUnit::E2);
        assert_eq!(f.k(), ImaginaryUnit::E3);

        let f = frame_complete(ImaginaryUnit::E2);
        let (i, j) = (f.i().as_quaternion(), f.j().as_quaternion());
        assert!(close(i * j, -(j * i), 0.0));
        assert!(close(i * j, f.k().as_quaternion(), 1e-15));
    }

    #[test]
    fn sphere_representative_examples() {
        let r = sphere_representative(Quaternion::new(2.0, 0.0, 3.0, 0.0), ImaginaryUnit::E1);
        assert_eq!(r, Quaternion::new(2.0, 3.0, 0.0, 0.0));
        let r = sphere_representative(Quaternion::real(-7.0), ImaginaryUnit::E3);
        assert_eq!(r, Quaternion::real(-7.0));
        let r = sphere_representative(Quaternion::new(0.0, 1.0, 1.0, 1.0), ImaginaryUnit::E1);
        assert!(close(r, Quaternion::new(0.0, 3f64.sqrt(), 0.0, 0.0), 1e-15));
    }

    #[test]
    fn frame_rejects_non_orthogonal() {
        let i = ImaginaryUnit::E1;
        let j = ImaginaryUnit::normalized([1.0, 1.0, 0.0]).unwrap();
        assert!(Frame::new(i, j).is_err());
        assert!(ImaginaryUnit::new([1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn json_encoding() {
        let q = Quaternion::new(1.0, -2.0, 0.5, 4.0);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[1.0,-2.0,0.5,4.0]");
        let back: Quaternion = serde_json::from_str("[1.0,-2.0,0.5,4.0]").unwrap();
        assert_eq!(back, q);

        let f = Frame::standard();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"i":[1.0,0.0,0.0],"j":[0.0,1.0,0.0]}"#);
        let g: Frame = serde_json::from_str(&s).unwrap();
        assert_eq!(g, f);
        assert!(serde_json::from_str::<Frame>(r#"{"i":[1,0,0],"j":[1,0,0]}"#).is_err());
    }

    fn quat() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-10.0f64..10.0).prop_map(Quaternion::from)
    }

    fn unit_dir() -> impl Strategy<Value = ImaginaryUnit> {
        prop::array::uniform3(-1.0f64..1.0)
            .prop_filter("nonzero", |v| norm3(*v) > 1e-3)
            .prop_map(|v| ImaginaryUnit::normalized(v).unwrap())
    }

    proptest! {
        #[test]
        fn prop_norm_multiplicative(p in quat(), q in quat()) {
            let lhs = (p * q).norm();
            let rhs = p.norm() * q.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
        }

        #[test]
        fn prop_associative(p in quat(), q in quat(), r in quat()) {
            let s = p.norm() * q.norm() * r.norm();
            prop_assert!(((p * q) * r - p * (q * r)).norm() <= 1e-12 * s.max(1.0));
        }

        #[test]
        fn prop_conj_antihomomorphism(p in quat(), q in quat()) {
            prop_assert!(((p * q).conj() - q.conj() * p.conj()).norm() <= 1e-12 * (p.norm() * q.norm()).max(1.0));
        }

        #[test]
        fn prop_norm_from_conj(q in quat()) {
            let n = q.conj() * q;
            prop_assert!((n.w - q.norm_sqr()).abs() <= 1e-12 * q.norm_sqr().max(1.0));
            prop_assert!(n.imag_norm() <= 1e-12 * q.norm_sqr().max(1.0));
        }

        #[test]
        fn prop_split_roundtrip(q in quat(), i in unit_dir()) {
            let f = frame_complete(i);
            let (z1, z2) = f.split(q);
            let back = f.complex(z1) + f.complex(z2) * f.j().as_quaternion();
            prop_assert!((back - q).norm() <= 1e-14 * q.norm().max(1.0) * 10.0);
        }

        #[test]
        fn prop_frame_complete_valid(i in unit_dir()) {
            let f = frame_complete(i);
            let (iq, jq, kq) = (f.i().as_quaternion(), f.j().as_quaternion(), f.k().as_quaternion());
            prop_assert!((iq * jq + jq * iq).norm() <= 1e-14);
            prop_assert!((iq * jq - kq).norm() <= 1e-14);
            prop_assert!(dot3(f.i().direction(), f.j().direction()).abs() <= 1e-12);
            prop_assert!((norm3(f.j().direction()) - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn prop_sphere_similarity_invariant(q in quat(), h in quat(), i in unit_dir()) {
            prop_assume!(h.norm() > 1e-3);
            let h = h / h.norm();
            let conj = h * q * h.conj();
            let a = sphere_representative(q, i);
            let b = sphere_representative(conj, i);
            prop_assert!((a - b).norm() <= 1e-12 * q.norm().max(1.0));
        }
    }
}
