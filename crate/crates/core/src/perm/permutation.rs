use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use super::PermError;

/// A permutation of the points `0..degree`.
///
/// Products are read left to right: `p * q` applies `p` first, then `q`,
/// so that `(p * q).apply(x) == q.apply(p.apply(x))`. Words in generators
/// evaluate with the same convention, which makes coset tables (right
/// actions) homomorphic images without any reversal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotABijection);
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from 0-based disjoint (or overlapping) cycles.
    /// Overlapping cycles are composed left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut result = Permutation::identity(degree);
        for cycle in cycles {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            let mut seen = std::collections::HashSet::new();
            for (i, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if !seen.insert(p) {
                    return Err(PermError::NotABijection);
                }
                images[p] = cycle[(i + 1) % cycle.len()] as u32;
            }
            result = &result * &Permutation::from_images_unchecked(images);
        }
        Ok(result)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `self * other`, written into `out` without allocating.
    #[inline]
    pub fn compose_into(&self, other: &Permutation, out: &mut Permutation) {
        for (o, &x) in out.images.iter_mut().zip(self.images.iter()) {
            *o = other.images[x as usize];
        }
    }

    /// `q⁻¹ · self · q`, i.e. the conjugate relabelled by `q`.
    pub fn conjugate_by(&self, q: &Permutation) -> Self {
        let mut out = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[q.apply(i)] = q.images[x as usize];
        }
        Permutation::from_images_unchecked(out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut seen = vec![false; self.degree()];
        let mut parts = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type()
            .parts
            .iter()
            .fold(1u64, |acc, &l| acc.lcm(&(l as u64)))
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 == x)
            .count()
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i)
    }

    /// The same permutation on `degree ≥ self.degree()` points, fixing the new ones.
    pub fn extend_to(&self, degree: usize) -> Self {
        assert!(degree >= self.degree());
        let mut images = self.images.to_vec();
        images.extend(self.degree() as u32..degree as u32);
        Permutation::from_images_unchecked(images)
    }

    /// Cycle notation with 1-based points, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            s.push_str(&pts.join(" "));
            s.push(')');
        }
        s
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        let images = self
            .images
            .iter()
            .map(|&x| rhs.images[x as usize])
            .collect();
        Permutation { images }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

/// Cycle lengths of a permutation, fixed points included, sorted descending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycleType {
    pub parts: Vec<usize>,
}

impl CycleType {
    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Exponential notation such as `4^4` or `3^1·2^1·1^2`, largest part first.
    pub fn label(&self) -> String {
        let mut out: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i];
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == part {
                j += 1;
            }
            out.push(format!("{}^{}", part, j - i));
            i = j;
        }
        out.join("·")
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Cycle type of `p`, fixed points counted as 1-cycles.
pub fn cycle_type(p: &Permutation) -> CycleType {
    p.cycle_type()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_cycle_type() {
        assert_eq!(Permutation::identity(5).cycle_type().parts, vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn disjoint_cycles() {
        let p = Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3, 4]]).unwrap();
        assert_eq!(p.cycle_type().parts, vec![3, 2]);
        assert_eq!(p.order(), 6);
        assert_eq!(p.to_cycle_string(), "(1 2)(3 4 5)");
        assert_eq!(p.cycle_type().label(), "3^1·2^1");
    }

    #[test]
    fn product_is_left_to_right() {
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let ab = &a * &b;
        assert_eq!(ab.apply(0), b.apply(a.apply(0)));
        assert_eq!(ab.apply(0), 2);
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let p = Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap();
        let q = Permutation::from_cycles(4, &[vec![2, 3]]).unwrap();
        let c = p.conjugate_by(&q);
        assert_eq!(c, &(&q.inverse() * &p) * &q);
        assert_eq!(c.to_cycle_string(), "(1 2 4)");
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }
}
