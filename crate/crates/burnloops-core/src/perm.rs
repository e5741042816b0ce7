//! Permutations of `{0..d-1}`, the atom everything else is built from.
//!
//! Composition is a right action: `x^(p*q) = (x^p)^q`, the left factor acts
//! first. All multiplicative identities in the other modules are transcribed
//! against this convention.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A bijection of `{0..d-1}`, stored as its image table.
///
/// Images are `u16`, which caps the degree at 65535; the largest domain in this
/// crate is a net point set of size (4n)^2 <= 1600.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u16>,
}

/// Why an image table was rejected as a permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    NotABijection { degree: usize },
    DegreeTooLarge { degree: usize },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotABijection { degree } => {
                write!(f, "image table of length {degree} is not a bijection")
            }
            PermError::DegreeTooLarge { degree } => {
                write!(f, "degree {degree} exceeds the u16 image range")
            }
        }
    }
}

impl core::error::Error for PermError {}

impl Perm {
    /// The identity on `{0..degree-1}`.
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Validates that `images` is a bijection of its index range.
    pub fn from_images(images: Vec<u16>) -> Result<Perm, PermError> {
        let d = images.len();
        if d > u16::MAX as usize + 1 {
            return Err(PermError::DegreeTooLarge { degree: d });
        }
        let mut seen = vec![false; d];
        for &im in &images {
            if (im as usize) >= d || seen[im as usize] {
                return Err(PermError::NotABijection { degree: d });
            }
            seen[im as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation from the images as `usize`, panicking on invalid input.
    /// Intended for internal construction sites where validity is structural.
    pub fn from_fn(degree: usize, f: impl Fn(usize) -> usize) -> Perm {
        let images: Vec<u16> = (0..degree).map(|x| f(x) as u16).collect();
        match Perm::from_images(images) {
            Ok(p) => p,
            Err(e) => panic!("from_fn produced an invalid permutation: {e}"),
        }
    }

    /// Transposition of `a` and `b` on `{0..degree-1}`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Perm {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        images.swap(a, b);
        Perm { images }
    }

    /// The cycle `(0 1 2 .. degree-1)`.
    pub fn cycle(degree: usize) -> Perm {
        Perm::from_fn(degree, |x| (x + 1) % degree)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im as usize)
    }

    /// `x^(self*other) = (x^self)^other`: `self` acts first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(
            self.degree(),
            other.degree(),
            "cannot compose permutations of degrees {} and {}",
            self.degree(),
            other.degree()
        );
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u16;
        }
        Perm { images }
    }

    /// `self` composed with itself `e` times; negative exponents invert first.
    pub fn power(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Perm::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// Multiplicative order, via the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut ord: u64 = 1;
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        other.inverse().compose(self).compose(other)
    }

    /// `self^-1 * other^-1 * self * other`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    /// Cycle notation, e.g. `(0 2 1)(3 4)`; the identity prints as `()`.
    pub fn cycle_string(&self) -> String {
        use core::fmt::Write;
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = String::new();
        for start in 0..d {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                let _ = write!(out, "{x}");
                x = self.apply(x);
                first = false;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self.cycle_string())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_right_action() {
        // swap(0,1) then swap(1,2) sends 0 -> 1 -> 2
        let p = Perm::transposition(3, 0, 1);
        let q = Perm::transposition(3, 1, 2);
        assert_eq!(p.compose(&q).apply(0), 2);
    }

    #[test]
    fn identity_and_inverse_laws() {
        let p = Perm::from_images(vec![2, 0, 1, 4, 3]).unwrap();
        let id = Perm::identity(5);
        assert_eq!(p.compose(&id), p);
        assert_eq!(id.compose(&p), p);
        assert_eq!(p.compose(&p.inverse()), id);
        assert_eq!(p.inverse().compose(&p), id);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
        assert!(Perm::from_images(vec![]).is_ok());
    }

    #[test]
    fn order_and_power() {
        let c = Perm::cycle(6);
        assert_eq!(c.order(), 6);
        assert!(c.power(6).is_identity());
        assert_eq!(c.power(-1), c.inverse());
        let p = Perm::from_images(vec![1, 0, 3, 4, 2]).unwrap();
        assert_eq!(p.order(), 6); // 2-cycle and 3-cycle
    }

    #[test]
    fn cycle_string_format() {
        assert_eq!(Perm::identity(4).cycle_string(), "()");
        assert_eq!(Perm::transposition(4, 1, 3).cycle_string(), "(1 3)");
    }
}
