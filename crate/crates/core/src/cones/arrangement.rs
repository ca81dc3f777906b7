//! Faces of a central hyperplane arrangement in Q^n for n <= 3.
//!
//! The arrangement always contains the coordinate hyperplanes, so every face
//! is a pointed cone. Faces are found from their extreme rays. Rays are the
//! lines cut out by n-1 independent hyperplanes, and higher faces are read
//! off cyclic orders of rays. No linear programming is needed at this size.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::rat::{dot, primitive, primitive_up_to_sign};
use crate::exactnum::{det_columns, sign_of, Rat};

/// A relatively open face: the open cone over its extreme rays, listed in
/// cyclic order for 3-dimensional faces. `sample` is a point inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub rays: Vec<Vec<Rat>>,
    pub sample: Vec<Rat>,
}

impl Face {
    fn new(rays: Vec<Vec<Rat>>) -> Self {
        let n = rays[0].len();
        let mut sample = vec![Rat::zero(); n];
        for r in &rays {
            for (s, x) in sample.iter_mut().zip(r) {
                *s += x;
            }
        }
        Face { rays, sample }
    }

    pub fn dim(&self) -> usize {
        self.rays.len().min(self.sample.len())
    }

    /// Open simplicial pieces partitioning the face: itself when simplicial,
    /// otherwise a fan from the first ray (open triangles plus the open
    /// interior diagonals between them).
    pub fn triangulate(&self) -> Vec<Vec<Vec<Rat>>> {
        let m = self.rays.len();
        let n = self.sample.len();
        if m <= n {
            return vec![self.rays.clone()];
        }
        // Only 3-dimensional faces can have more than n rays (n = 3).
        let r = &self.rays;
        let mut out = Vec::with_capacity(2 * m - 5);
        for k in 1..m - 1 {
            out.push(vec![r[0].clone(), r[k].clone(), r[k + 1].clone()]);
        }
        for k in 2..m - 1 {
            out.push(vec![r[0].clone(), r[k].clone()]);
        }
        out
    }
}

/// Primitive integer representatives of the nonzero forms, one per hyperplane,
/// together with the coordinate hyperplanes.
pub fn normalize_hyperplanes(n: usize, forms: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut hs: Vec<Vec<Rat>> = Vec::new();
    let coords = (0..n).map(|i| {
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::from_integer(1.into());
        e
    });
    for f in forms.iter().cloned().chain(coords) {
        if f.iter().all(Zero::is_zero) {
            continue;
        }
        let (p, _) = primitive_up_to_sign(&f);
        if !hs.contains(&p) {
            hs.push(p);
        }
    }
    hs.sort();
    hs
}

fn cross(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn det3(a: &[Rat], b: &[Rat], c: &[Rat]) -> Rat {
    det_columns(&[a, b, c])
}

fn det2(a: &[Rat], b: &[Rat]) -> Rat {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn neg(v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| -x).collect()
}

/// Sorts vectors counterclockwise by angle, where `orient(a, b) > 0` means `b`
/// is less than half a turn counterclockwise of `a`. No two entries may point
/// in the same direction.
fn angular_sort<F>(mut vs: Vec<Vec<Rat>>, orient: F) -> Vec<Vec<Rat>>
where
    F: Fn(&[Rat], &[Rat]) -> i8,
{
    if vs.len() <= 1 {
        return vs;
    }
    vs.sort();
    let reference = vs[0].clone();
    // Half 0 is the reference plus the open half-turn after it; half 1 starts
    // at the opposite direction. Within a half, angles differ by less than a
    // half-turn, so `orient` alone orders them.
    let half = |v: &[Rat]| -> u8 {
        if v == reference.as_slice() || orient(&reference, v) > 0 {
            0
        } else {
            1
        }
    };
    vs.sort_by(|a, b| {
        half(a).cmp(&half(b)).then_with(|| match orient(a, b) {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => Ordering::Equal,
        })
    });
    vs
}

/// Every relatively open face of the arrangement of `hyperplanes` (which must
/// include the coordinate hyperplanes), lowest dimension first.
pub fn faces(n: usize, hyperplanes: &[Vec<Rat>]) -> Result<Vec<Face>> {
    match n {
        1 => Ok(vec![Face::new(vec![vec![Rat::from_integer((-1).into())]]), Face::new(vec![vec![
            Rat::from_integer(1.into()),
        ]])]),
        2 => Ok(faces_2d(hyperplanes)),
        3 => Ok(faces_3d(hyperplanes)),
        _ => Err(Error::UnsupportedDimension(n)),
    }
}

fn faces_2d(hs: &[Vec<Rat>]) -> Vec<Face> {
    let mut rays: Vec<Vec<Rat>> = Vec::new();
    for h in hs {
        let r = primitive(&[-h[1].clone(), h[0].clone()]);
        for cand in [neg(&r), r] {
            if !rays.contains(&cand) {
                rays.push(cand);
            }
        }
    }
    let rays = angular_sort(rays, |a, b| sign_of(&det2(a, b)));
    let m = rays.len();
    let mut out: Vec<Face> = rays.iter().map(|r| Face::new(vec![r.clone()])).collect();
    for k in 0..m {
        out.push(Face::new(vec![rays[k].clone(), rays[(k + 1) % m].clone()]));
    }
    out
}

fn sign_vector(hs: &[Vec<Rat>], w: &[Rat]) -> Vec<i8> {
    hs.iter().map(|h| sign_of(&dot(h, w))).collect()
}

fn faces_3d(hs: &[Vec<Rat>]) -> Vec<Face> {
    // Rays: both directions of every line where two planes meet.
    let mut rays: Vec<Vec<Rat>> = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            let c = cross(&hs[i], &hs[j]);
            if c.iter().all(Zero::is_zero) {
                continue;
            }
            let p = primitive(&c);
            for cand in [neg(&p), p] {
                if !rays.contains(&cand) {
                    rays.push(cand);
                }
            }
        }
    }
    rays.sort();
    let mut out: Vec<Face> = rays.iter().map(|r| Face::new(vec![r.clone()])).collect();

    // Two-dimensional faces: consecutive rays around each plane.
    let mut two_faces: Vec<Face> = Vec::new();
    for h in hs {
        let on: Vec<Vec<Rat>> = rays.iter().filter(|r| dot(h, r).is_zero()).cloned().collect();
        let cyc = angular_sort(on, |a, b| sign_of(&det3(h, a, b)));
        let m = cyc.len();
        for k in 0..m {
            let face = Face::new(vec![cyc[k].clone(), cyc[(k + 1) % m].clone()]);
            two_faces.push(face);
        }
    }

    // Chambers: each side of each two-dimensional face.
    let ray_signs: Vec<Vec<i8>> = rays.iter().map(|r| sign_vector(hs, r)).collect();
    let mut chambers: Vec<Vec<i8>> = Vec::new();
    for f in &two_faces {
        let s = sign_vector(hs, &f.sample);
        let zero = s.iter().position(|&x| x == 0).expect("a two-face lies on a plane");
        for flip in [-1i8, 1] {
            let mut c = s.clone();
            c[zero] = flip;
            if !chambers.contains(&c) {
                chambers.push(c);
            }
        }
    }
    chambers.sort();
    out.extend(two_faces);

    for c in &chambers {
        let compatible: Vec<Vec<Rat>> = rays
            .iter()
            .zip(&ray_signs)
            .filter(|(_, rs)| rs.iter().zip(c).all(|(&a, &b)| a == 0 || a == b))
            .map(|(r, _)| r.clone())
            .collect();
        let mut axis = vec![Rat::zero(); 3];
        for r in &compatible {
            for (a, x) in axis.iter_mut().zip(r) {
                *a += x;
            }
        }
        let mut cyc = angular_sort(compatible, |a, b| sign_of(&det3(&axis, a, b)));
        // Drop rays in the relative interior of a facet (none are expected).
        loop {
            let m = cyc.len();
            let Some(k) = (0..m).find(|&k| {
                det3(&cyc[(k + m - 1) % m], &cyc[k], &cyc[(k + 1) % m]).is_zero()
            }) else {
                break;
            };
            cyc.remove(k);
        }
        out.push(Face::new(cyc));
    }
    out
}
