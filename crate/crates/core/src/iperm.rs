//! Partial injective transformations of the chain `1 < 2 < ... < n`.
//!
//! Maps act on the right and compose left to right: `compose(f, g)` applies
//! `f` first, then `g`. Points are 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::PermError;

/// A point of the chain, 1-based.
pub type Point = u32;

const NONE: u32 = 0;

/// A partial permutation of `{1, ..., degree}`.
///
/// Stored densely: `images[p - 1]` is the image of `p`, or `0` when `p` is
/// outside the domain. The dense form is canonical, so derived equality and
/// hashing coincide with equality of maps.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialPerm {
    degree: u32,
    images: Box<[u32]>,
}

/// Cyclic / anti-cyclic classification of an image sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceKind {
    pub cyclic: bool,
    pub anti_cyclic: bool,
}

/// The named generators used throughout the dihedral families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// The rotation `i -> i + 1 (mod n)`.
    G,
    /// The reflection `i -> n - i + 1`.
    H,
    /// Partial identity missing the point `i`.
    E(u32),
    /// `i -> i + 1` on `1..n-1`.
    X,
    /// Inverse of `X`.
    Y,
    /// Rank-two map `{1 -> 1, 1 + i -> n - i + 1}`.
    XI(u32),
    /// Inverse of `XI(i)`.
    YI(u32),
}

impl Generator {
    /// Letter name used in alphabets and reports, e.g. `e_3`, `x_1`, `g`.
    pub fn name(self) -> String {
        match self {
            Generator::G => "g".into(),
            Generator::H => "h".into(),
            Generator::E(i) => format!("e_{i}"),
            Generator::X => "x".into(),
            Generator::Y => "y".into(),
            Generator::XI(i) => format!("x_{i}"),
            Generator::YI(i) => format!("y_{i}"),
        }
    }

    /// Inverse of [`Generator::name`].
    pub fn parse(name: &str) -> Option<Generator> {
        match name {
            "g" => return Some(Generator::G),
            "h" => return Some(Generator::H),
            "x" => return Some(Generator::X),
            "y" => return Some(Generator::Y),
            _ => {}
        }
        let (head, index) = name.split_once('_')?;
        let i: u32 = index.parse().ok()?;
        match head {
            "e" => Some(Generator::E(i)),
            "x" => Some(Generator::XI(i)),
            "y" => Some(Generator::YI(i)),
            _ => None,
        }
    }
}

impl PartialPerm {
    /// Builds a map from `(point, image)` pairs in any order.
    pub fn from_pairs(
        degree: u32,
        pairs: impl IntoIterator<Item = (Point, Point)>,
    ) -> Result<Self, PermError> {
        let mut images = vec![NONE; degree as usize];
        let mut used = vec![false; degree as usize];
        for (p, q) in pairs {
            for v in [p, q] {
                if v == 0 || v > degree {
                    return Err(PermError::PointOutOfRange { point: v, degree });
                }
            }
            if images[p as usize - 1] != NONE {
                return Err(PermError::DuplicatePoint(p));
            }
            if used[q as usize - 1] {
                return Err(PermError::NotInjective(q));
            }
            images[p as usize - 1] = q;
            used[q as usize - 1] = true;
        }
        Ok(PartialPerm {
            degree,
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a total map from its image list `[1 f, 2 f, ..., n f]`.
    pub fn from_images(images: &[Point]) -> Result<Self, PermError> {
        let degree = images.len() as u32;
        Self::from_pairs(degree, (1..=degree).zip(images.iter().copied()))
    }

    pub fn identity(degree: u32) -> Self {
        PartialPerm {
            degree,
            images: (1..=degree).collect(),
        }
    }

    pub fn empty(degree: u32) -> Self {
        PartialPerm {
            degree,
            images: vec![NONE; degree as usize].into_boxed_slice(),
        }
    }

    /// The partial identity with domain `points`.
    pub fn partial_identity(
        degree: u32,
        points: impl IntoIterator<Item = Point>,
    ) -> Result<Self, PermError> {
        let mut images = vec![NONE; degree as usize];
        for p in points {
            if p == 0 || p > degree {
                return Err(PermError::PointOutOfRange { point: p, degree });
            }
            images[p as usize - 1] = p;
        }
        Ok(PartialPerm {
            degree,
            images: images.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Image of `p`, if `p` is in the domain.
    #[inline]
    pub fn apply(&self, p: Point) -> Option<Point> {
        match self.images.get((p as usize).wrapping_sub(1)) {
            Some(&q) if q != NONE => Some(q),
            _ => None,
        }
    }

    /// `(point, image)` pairs in increasing point order.
    pub fn pairs(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, &q)| q != NONE)
            .map(|(i, &q)| (i as u32 + 1, q))
    }

    pub fn domain(&self) -> Vec<Point> {
        self.pairs().map(|(p, _)| p).collect()
    }

    /// Images listed in increasing order of the domain points.
    pub fn image_sequence(&self) -> Vec<Point> {
        self.pairs().map(|(_, q)| q).collect()
    }

    pub fn image(&self) -> Vec<Point> {
        let mut im = self.image_sequence();
        im.sort_unstable();
        im
    }

    /// Size of the image.
    pub fn rank(&self) -> usize {
        self.images.iter().filter(|&&q| q != NONE).count()
    }

    pub fn is_total(&self) -> bool {
        self.images.iter().all(|&q| q != NONE)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &q)| q == i as u32 + 1)
    }

    /// Left-to-right product: `p` maps to `(p f) g`.
    pub fn compose(&self, other: &PartialPerm) -> Result<PartialPerm, PermError> {
        if self.degree != other.degree {
            return Err(PermError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(self.then(other))
    }

    /// [`compose`](Self::compose) without the degree check; callers guarantee
    /// equal degrees.
    #[inline]
    pub fn then(&self, other: &PartialPerm) -> PartialPerm {
        debug_assert_eq!(self.degree, other.degree);
        let images = self
            .images
            .iter()
            .map(|&q| {
                if q == NONE {
                    NONE
                } else {
                    other.images[q as usize - 1]
                }
            })
            .collect();
        PartialPerm {
            degree: self.degree,
            images,
        }
    }

    pub fn inverse(&self) -> PartialPerm {
        let mut images = vec![NONE; self.degree as usize];
        for (p, q) in self.pairs() {
            images[q as usize - 1] = p;
        }
        PartialPerm {
            degree: self.degree,
            images: images.into_boxed_slice(),
        }
    }

    /// `self` raised to the power `k` (`k = 0` gives the identity).
    pub fn pow(&self, k: usize) -> PartialPerm {
        (0..k).fold(PartialPerm::identity(self.degree), |acc, _| acc.then(self))
    }

    /// Restriction to `points ∩ dom(self)`.
    pub fn restrict(&self, points: impl IntoIterator<Item = Point>) -> PartialPerm {
        let mut images = vec![NONE; self.degree as usize];
        for p in points {
            if let Some(q) = self.apply(p) {
                images[p as usize - 1] = q;
            }
        }
        PartialPerm {
            degree: self.degree,
            images: images.into_boxed_slice(),
        }
    }

    /// Whether `self` agrees with the total map `total` on `dom(self)`.
    pub fn is_restriction_of(&self, total: &PartialPerm) -> Result<bool, PermError> {
        if self.degree != total.degree {
            return Err(PermError::DegreeMismatch(self.degree, total.degree));
        }
        if !total.is_total() {
            return Err(PermError::NotTotal);
        }
        Ok(self.pairs().all(|(p, q)| total.apply(p) == Some(q)))
    }

    pub fn classify_image_sequence(&self) -> SequenceKind {
        classify_sequence(&self.image_sequence())
    }

    pub fn is_order_preserving(&self) -> bool {
        self.image_sequence().windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_order_reversing(&self) -> bool {
        self.image_sequence().windows(2).all(|w| w[0] > w[1])
    }

    pub fn is_monotone(&self) -> bool {
        self.is_order_preserving() || self.is_order_reversing()
    }

    pub fn is_orientation_preserving(&self) -> bool {
        self.classify_image_sequence().cyclic
    }

    pub fn is_orientation_reversing(&self) -> bool {
        self.classify_image_sequence().anti_cyclic
    }

    pub fn is_oriented(&self) -> bool {
        let kind = self.classify_image_sequence();
        kind.cyclic || kind.anti_cyclic
    }
}

/// Counts circular descents and ascents; the wrap pair `(a_t, a_1)` is one
/// comparison.
pub fn classify_sequence(seq: &[Point]) -> SequenceKind {
    let t = seq.len();
    let (mut descents, mut ascents) = (0, 0);
    if t >= 2 {
        for i in 0..t {
            let (a, b) = (seq[i], seq[(i + 1) % t]);
            if a > b {
                descents += 1;
            } else if a < b {
                ascents += 1;
            }
        }
    }
    SequenceKind {
        cyclic: descents <= 1,
        anti_cyclic: ascents <= 1,
    }
}

/// `⌊(n - 1) / 2⌋`, the number of `x_i` generators in degree `n`.
pub fn half_index(n: u32) -> u32 {
    n.saturating_sub(1) / 2
}

/// The transformation behind a named generator in degree `n`.
pub fn named_generator(kind: Generator, n: u32) -> Result<PartialPerm, PermError> {
    if n == 0 {
        return Err(PermError::DegreeTooSmall { degree: n, min: 1 });
    }
    let index_err = |i: u32, max: u32| PermError::IndexOutOfRange {
        name: kind.name(),
        index: i,
        max,
    };
    let perm = match kind {
        Generator::G => PartialPerm::from_pairs(n, (1..=n).map(|i| (i, i % n + 1)))?,
        Generator::H => {
            if n < 2 {
                return Err(PermError::DegreeTooSmall { degree: n, min: 2 });
            }
            PartialPerm::from_pairs(n, (1..=n).map(|i| (i, n - i + 1)))?
        }
        Generator::E(i) => {
            if i == 0 || i > n {
                return Err(index_err(i, n));
            }
            PartialPerm::partial_identity(n, (1..=n).filter(|&p| p != i))?
        }
        Generator::X => PartialPerm::from_pairs(n, (1..n).map(|i| (i, i + 1)))?,
        Generator::Y => PartialPerm::from_pairs(n, (2..=n).map(|i| (i, i - 1)))?,
        Generator::XI(i) | Generator::YI(i) => {
            let k = half_index(n);
            if i == 0 || i > k {
                return Err(index_err(i, k));
            }
            let x = PartialPerm::from_pairs(n, [(1, 1), (1 + i, n - i + 1)])?;
            if matches!(kind, Generator::XI(_)) {
                x
            } else {
                x.inverse()
            }
        }
    };
    Ok(perm)
}

impl fmt::Debug for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialPerm(n={}, {{", self.degree)?;
        for (k, (p, q)) in self.pairs().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}->{q}")?;
        }
        write!(f, "}})")
    }
}

impl fmt::Display for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (p, q)) in self.pairs().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}>{q}")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct PermRepr {
    n: u32,
    map: Vec<[u32; 2]>,
}

impl Serialize for PartialPerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PermRepr {
            n: self.degree,
            map: self.pairs().map(|(p, q)| [p, q]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartialPerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PermRepr::deserialize(d)?;
        if repr.map.windows(2).any(|w| w[0][0] >= w[1][0]) {
            return Err(serde::de::Error::custom("map must be sorted by point"));
        }
        PartialPerm::from_pairs(repr.n, repr.map.into_iter().map(|[p, q]| (p, q)))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(kind: Generator, n: u32) -> PartialPerm {
        named_generator(kind, n).unwrap()
    }

    fn pp(n: u32, pairs: &[(u32, u32)]) -> PartialPerm {
        PartialPerm::from_pairs(n, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let n = 4;
        let e4 = PartialPerm::partial_identity(n, [1, 2, 3]).unwrap();
        assert_eq!(
            gen(Generator::X, n).compose(&gen(Generator::Y, n)).unwrap(),
            e4
        );
        let f = pp(n, &[(1, 3), (4, 2)]);
        assert_eq!(PartialPerm::identity(n).compose(&f).unwrap(), f);
        let e1e2 = gen(Generator::E(1), n).then(&gen(Generator::E(2), n));
        assert_eq!(e1e2, PartialPerm::partial_identity(n, [3, 4]).unwrap());
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = PartialPerm::identity(3).compose(&PartialPerm::identity(4));
        assert!(matches!(err, Err(PermError::DegreeMismatch(3, 4))));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(gen(Generator::X, 4).inverse(), gen(Generator::Y, 4));
        assert_eq!(PartialPerm::empty(4).inverse(), PartialPerm::empty(4));
        assert_eq!(gen(Generator::XI(1), 4).inverse(), pp(4, &[(1, 1), (4, 2)]));
        assert_eq!(gen(Generator::YI(1), 4), pp(4, &[(1, 1), (4, 2)]));
    }

    #[test]
    fn partial_identity_examples() {
        assert_eq!(
            PartialPerm::partial_identity(4, [1, 2, 3, 4]).unwrap(),
            PartialPerm::identity(4)
        );
        assert_eq!(
            PartialPerm::partial_identity(4, []).unwrap(),
            PartialPerm::empty(4)
        );
        assert_eq!(
            PartialPerm::partial_identity(4, [1, 2, 3]).unwrap(),
            gen(Generator::E(4), 4)
        );
        assert!(matches!(
            PartialPerm::partial_identity(4, [5]),
            Err(PermError::PointOutOfRange {
                point: 5,
                degree: 4
            })
        ));
    }

    #[test]
    fn restrict_examples() {
        let g = gen(Generator::G, 4);
        assert_eq!(g.restrict(1..=4), g);
        assert_eq!(
            gen(Generator::H, 4).restrict([1, 4]),
            pp(4, &[(1, 4), (4, 1)])
        );
        assert_eq!(g.restrict([]), PartialPerm::empty(4));
    }

    #[test]
    fn restriction_membership() {
        let n = 4;
        let e4 = gen(Generator::E(4), n);
        assert!(e4.is_restriction_of(&PartialPerm::identity(n)).unwrap());
        let hg = gen(Generator::H, n).then(&gen(Generator::G, n));
        assert_eq!(hg.image_sequence(), vec![1, 4, 3, 2]);
        assert!(pp(n, &[(1, 1), (2, 4)]).is_restriction_of(&hg).unwrap());
        assert!(!gen(Generator::G, n)
            .is_restriction_of(&gen(Generator::H, n))
            .unwrap());
        assert!(matches!(
            e4.is_restriction_of(&e4),
            Err(PermError::NotTotal)
        ));
    }

    #[test]
    fn sequence_classification() {
        let g = gen(Generator::G, 4);
        assert_eq!(g.image_sequence(), vec![2, 3, 4, 1]);
        assert_eq!(
            g.classify_image_sequence(),
            SequenceKind {
                cyclic: true,
                anti_cyclic: false
            }
        );
        let both = SequenceKind {
            cyclic: true,
            anti_cyclic: true,
        };
        assert_eq!(PartialPerm::empty(4).classify_image_sequence(), both);
        assert_eq!(
            gen(Generator::H, 4).classify_image_sequence(),
            SequenceKind {
                cyclic: false,
                anti_cyclic: true
            }
        );
        assert_eq!(classify_sequence(&[3, 1]), both);
        assert_eq!(classify_sequence(&[2]), both);
    }

    #[test]
    fn predicates_on_named_maps() {
        for n in 2..=7 {
            let g = gen(Generator::G, n);
            assert!(g.is_orientation_preserving());
            assert!(!g.is_order_preserving());
            let h = gen(Generator::H, n);
            assert!(h.is_order_reversing());
            assert!(h.is_orientation_reversing());
            assert!(h.is_monotone() && h.is_oriented());
        }
        let n = 5;
        let mut small = vec![PartialPerm::empty(n)];
        for p in 1..=n {
            for q in 1..=n {
                small.push(pp(n, &[(p, q)]));
            }
        }
        for f in &small {
            assert!(f.is_order_preserving() && f.is_order_reversing());
            assert!(f.is_orientation_preserving() && f.is_orientation_reversing());
            assert!(f.is_monotone() && f.is_oriented());
        }
    }

    #[test]
    fn named_generator_displays() {
        assert_eq!(gen(Generator::X, 4), pp(4, &[(1, 2), (2, 3), (3, 4)]));
        assert_eq!(gen(Generator::XI(1), 4), pp(4, &[(1, 1), (2, 4)]));
        assert_eq!(
            gen(Generator::E(1), 4),
            PartialPerm::partial_identity(4, [2, 3, 4]).unwrap()
        );
        assert_eq!(gen(Generator::XI(2), 6), pp(6, &[(1, 1), (3, 5)]));
        assert!(named_generator(Generator::XI(2), 4).is_err());
        assert!(named_generator(Generator::E(0), 4).is_err());
        assert!(named_generator(Generator::E(5), 4).is_err());
        assert!(named_generator(Generator::H, 1).is_err());
    }

    #[test]
    fn generator_names_round_trip() {
        for g in [
            Generator::G,
            Generator::H,
            Generator::X,
            Generator::Y,
            Generator::E(12),
            Generator::XI(3),
            Generator::YI(1),
        ] {
            assert_eq!(Generator::parse(&g.name()), Some(g));
        }
        assert_eq!(Generator::parse("z_1"), None);
        assert_eq!(Generator::parse("e_"), None);
    }

    #[test]
    fn json_format_is_exact() {
        let f = pp(4, &[(2, 4), (1, 1)]);
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"n":4,"map":[[1,1],[2,4]]}"#);
        let back: PartialPerm = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<PartialPerm>(r#"{"n":4,"map":[[2,4],[1,1]]}"#).is_err());
        assert!(serde_json::from_str::<PartialPerm>(r#"{"n":4,"map":[[1,1],[2,1]]}"#).is_err());
    }
}
