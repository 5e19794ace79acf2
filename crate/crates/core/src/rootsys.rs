//! Finite root systems in integer coordinates.
//!
//! Roots are stored twice: as integer vectors in a fixed ambient space
//! (with the standard dot product) and as integer coordinates with respect
//! to the simple roots. The simple roots follow Bourbaki numbering. The
//! non-reduced family `BC` is admitted so that restricted root systems of
//! real forms can be described.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSysError {
    #[error("invalid rank {rank} for family {family}: {bound}")]
    InvalidRank { family: Family, rank: usize, bound: &'static str },
    #[error("cannot parse root system label {0:?}")]
    Parse(String),
    #[error("vector {0:?} is not a root of {1}")]
    NotARoot(Vec<i64>, RootSystemLabel),
    #[error("{0} is not supported for the non-reduced system {1}")]
    Unsupported(&'static str, RootSystemLabel),
    #[error("weight has {got} coordinates, expected {expected}")]
    WeightLength { got: usize, expected: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::BC => "BC",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemLabel {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemLabel {
    /// Validating constructor.
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSysError> {
        let bound = match family {
            Family::A | Family::BC if rank < 1 => Some(">= 1"),
            Family::B if rank < 2 => Some(">= 2"),
            Family::C if rank < 3 => Some(">= 3"),
            Family::D if rank < 4 => Some(">= 4"),
            Family::E if !(6..=8).contains(&rank) => Some("6..=8"),
            Family::F if rank != 4 => Some("= 4"),
            Family::G if rank != 2 => Some("= 2"),
            _ => None,
        };
        match bound {
            Some(bound) => Err(RootSysError::InvalidRank { family, rank, bound }),
            None => Ok(RootSystemLabel { family, rank }),
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.family != Family::BC
    }

    /// Number of roots of the system.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => [72, 126, 240][n - 6],
            Family::F => 48,
            Family::G => 12,
            Family::BC => 2 * n * n + 2 * n,
        }
    }

    /// Dimension of the complex simple Lie algebra with this root system.
    pub fn lie_algebra_dim(&self) -> Option<usize> {
        self.is_reduced().then(|| self.rank + self.root_count())
    }
}

impl fmt::Display for RootSystemLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemLabel {
    type Err = RootSysError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| RootSysError::Parse(s.into()))?;
        let (fam, num) = s.split_at(split);
        let family = match fam {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            "BC" => Family::BC,
            _ => return Err(RootSysError::Parse(s.into())),
        };
        let rank = num.parse().map_err(|_| RootSysError::Parse(s.into()))?;
        RootSystemLabel::new(family, rank)
    }
}

impl Serialize for RootSystemLabel {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootSystemLabel {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Weight in the basis of fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight { coords }
    }

    pub fn neg(&self) -> Weight {
        Weight { coords: self.coords.iter().map(|x| -x).collect() }
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&x| x >= 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub label: RootSystemLabel,
    /// Simple roots in ambient coordinates, Bourbaki order.
    pub simple_roots: Vec<Vec<i64>>,
    /// All roots in ambient coordinates; positive roots first, by height.
    pub all_roots: Vec<Vec<i64>>,
    /// Coordinates of `all_roots` with respect to the simple roots.
    pub root_coords: Vec<Vec<i64>>,
    /// `A[i][j] = 2(a_i, a_j) / (a_j, a_j)`.
    pub cartan_matrix: Vec<Vec<i64>>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn e(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn diff(n: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = e(n, i);
    v[j] -= 1;
    v
}

const E8_SIMPLE: [[i64; 8]; 8] = [
    [1, -1, -1, -1, -1, -1, -1, 1],
    [2, 2, 0, 0, 0, 0, 0, 0],
    [-2, 2, 0, 0, 0, 0, 0, 0],
    [0, -2, 2, 0, 0, 0, 0, 0],
    [0, 0, -2, 2, 0, 0, 0, 0],
    [0, 0, 0, -2, 2, 0, 0, 0],
    [0, 0, 0, 0, -2, 2, 0, 0],
    [0, 0, 0, 0, 0, -2, 2, 0],
];

fn simple_roots_for(label: RootSystemLabel) -> Vec<Vec<i64>> {
    let n = label.rank;
    match label.family {
        Family::A => (0..n).map(|i| diff(n + 1, i, i + 1)).collect(),
        Family::B | Family::BC => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            s.push(e(n, n - 1));
            s
        }
        Family::C => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            s.push(e(n, n - 1).iter().map(|x| 2 * x).collect());
            s
        }
        Family::D => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = e(n, n - 2);
            last[n - 1] = 1;
            s.push(last);
            s
        }
        Family::E => E8_SIMPLE[..n].iter().map(|r| r.to_vec()).collect(),
        Family::F => vec![
            vec![0, 2, -2, 0],
            vec![0, 0, 2, -2],
            vec![0, 0, 0, 2],
            vec![1, -1, -1, -1],
        ],
        Family::G => vec![vec![1, -1, 0], vec![-2, 1, 1]],
    }
}

/// Cartan matrix `A[i][j] = 2(a_i, a_j)/(a_j, a_j)` of a list of vectors.
pub fn cartan_matrix_of(simple: &[Vec<i64>]) -> Vec<Vec<i64>> {
    simple
        .iter()
        .map(|ai| {
            simple
                .iter()
                .map(|aj| {
                    let num = 2 * dot(ai, aj);
                    let den = dot(aj, aj);
                    debug_assert_eq!(num % den, 0);
                    num / den
                })
                .collect()
        })
        .collect()
}

impl RootSystem {
    /// Construct and validate the root system with Bourbaki numbering.
    pub fn build(label: RootSystemLabel) -> Result<Self, RootSysError> {
        let label = RootSystemLabel::new(label.family, label.rank)?;
        let simple = simple_roots_for(label);
        let cartan = cartan_matrix_of(&simple);
        let r = label.rank;

        // Every root is Weyl-conjugate to a simple root (or, for BC, to 2e_r),
        // so closing the seeds under simple reflections gives all roots.
        let mut seeds: Vec<Vec<i64>> = (0..r).map(|i| e(r, i).to_vec()).collect();
        if label.family == Family::BC {
            let mut twice = vec![0; r];
            twice[r - 1] = 2;
            seeds.push(twice);
        }
        let to_ambient = |c: &[i64]| -> Vec<i64> {
            let mut v = vec![0; simple[0].len()];
            for (ci, a) in c.iter().zip(&simple) {
                for (x, y) in v.iter_mut().zip(a) {
                    *x += ci * y;
                }
            }
            v
        };
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = seeds.into_iter().collect();
        while let Some(c) = queue.pop_front() {
            if !seen.insert(c.clone()) {
                continue;
            }
            let amb = to_ambient(&c);
            for (i, ai) in simple.iter().enumerate() {
                let num = 2 * dot(&amb, ai);
                let den = dot(ai, ai);
                let k = num / den;
                if k != 0 {
                    let mut next = c.clone();
                    next[i] -= k;
                    if !seen.contains(&next) {
                        queue.push_back(next);
                    }
                }
            }
        }

        let mut pos: Vec<Vec<i64>> = seen.iter().filter(|c| c.iter().all(|&x| x >= 0)).cloned().collect();
        pos.sort_by_key(|c| (c.iter().sum::<i64>(), c.iter().map(|x| -x).collect::<Vec<_>>()));
        let neg: Vec<Vec<i64>> = pos.iter().map(|c| c.iter().map(|x| -x).collect()).collect();
        let root_coords: Vec<Vec<i64>> = pos.into_iter().chain(neg).collect();
        debug_assert_eq!(root_coords.len(), seen.len());
        let all_roots = root_coords.iter().map(|c| to_ambient(c)).collect();

        let rs = RootSystem { label, simple_roots: simple, all_roots, root_coords, cartan_matrix: cartan };
        rs.validate();
        Ok(rs)
    }

    fn validate(&self) {
        assert_eq!(self.all_roots.len(), self.label.root_count(), "root count for {}", self.label);
        for (i, row) in self.cartan_matrix.iter().enumerate() {
            assert_eq!(row[i], 2);
            for (j, &a) in row.iter().enumerate() {
                assert!(i == j || (-3..=0).contains(&a));
            }
        }
        for r in &self.all_roots {
            let n: Vec<i64> = r.iter().map(|x| -x).collect();
            assert!(self.all_roots.contains(&n));
        }
    }

    pub fn rank(&self) -> usize {
        self.label.rank
    }

    pub fn num_positive(&self) -> usize {
        self.all_roots.len() / 2
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.all_roots[..self.num_positive()]
    }

    /// Standard inner product on the ambient space.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        dot(a, b)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.all_roots.iter().any(|r| r == v)
    }

    /// The highest root (for BC this is twice the highest short root).
    pub fn highest_root(&self) -> &[i64] {
        &self.all_roots[self.num_positive() - 1]
    }

    pub fn highest_root_coords(&self) -> &[i64] {
        &self.root_coords[self.num_positive() - 1]
    }

    /// `2(b, a)/(a, a)`.
    pub fn coroot_pairing(&self, beta: &[i64], alpha: &[i64]) -> Result<i64, RootSysError> {
        for v in [beta, alpha] {
            if !self.contains(v) {
                return Err(RootSysError::NotARoot(v.to_vec(), self.label));
            }
        }
        let num = 2 * dot(beta, alpha);
        let den = dot(alpha, alpha);
        assert_eq!(num % den, 0, "non-integral pairing in a root system");
        Ok(num / den)
    }

    /// `1 + sum of the comarks of the highest root`.
    pub fn dual_coxeter_number(&self) -> Result<u32, RootSysError> {
        if !self.label.is_reduced() {
            return Err(RootSysError::Unsupported("dual Coxeter number", self.label));
        }
        let theta = self.highest_root();
        let tt = dot(theta, theta);
        let mut sum = 0;
        for (a, alpha) in self.highest_root_coords().iter().zip(&self.simple_roots) {
            let num = a * dot(alpha, alpha);
            assert_eq!(num % tt, 0);
            sum += num / tt;
        }
        Ok(1 + sum as u32)
    }

    /// Name of the length class a root belongs to. Reduced systems with one
    /// root length use `"long"`; `BC` uses `"e_i"`, `"e_i±e_j"`, `"2e_i"`.
    pub fn length_class(&self, root: &[i64]) -> &'static str {
        let n = dot(root, root);
        if self.label.family == Family::BC {
            return match n {
                1 => "e_i",
                2 => "e_i±e_j",
                _ => "2e_i",
            };
        }
        let max = self.all_roots.iter().map(|r| dot(r, r)).max().unwrap_or(0);
        if n == max {
            "long"
        } else {
            "short"
        }
    }

    /// Length classes present, in a fixed order.
    pub fn length_classes(&self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = Vec::new();
        for r in self.positive_roots() {
            let c = self.length_class(r);
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out.sort_by_key(|c| ["short", "long", "e_i", "e_i±e_j", "2e_i"].iter().position(|x| x == c));
        out
    }

    /// Dominant element of the Weyl orbit of `w`.
    pub fn dominant_representative(&self, w: &Weight) -> Result<Weight, RootSysError> {
        if !self.label.is_reduced() {
            return Err(RootSysError::Unsupported("dominant representative", self.label));
        }
        if w.coords.len() != self.rank() {
            return Err(RootSysError::WeightLength { got: w.coords.len(), expected: self.rank() });
        }
        Ok(dominant_for_cartan(&self.cartan_matrix, w))
    }
}

/// Dominant representative of a weight for the Weyl group of an arbitrary
/// (possibly reducible) Cartan matrix `A[i][j] = <a_i, a_j^vee>`.
///
/// Uses `s_i(w) = w - w_i * (row i of A)`; each step raises the weight by a
/// positive root, so the loop terminates.
pub fn dominant_for_cartan(cartan: &[Vec<i64>], w: &Weight) -> Weight {
    let mut c = w.coords.clone();
    while let Some(i) = c.iter().position(|&x| x < 0) {
        let wi = c[i];
        for (x, a) in c.iter_mut().zip(&cartan[i]) {
            *x -= wi * a;
        }
    }
    Weight { coords: c }
}
