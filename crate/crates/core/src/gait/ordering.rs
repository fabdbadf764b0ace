use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Ordered partition `ℓ1 ≺ ℓ2 ≺ … ≺ ℓm` of the legs `1..=n`.
///
/// Legs inside a group swing together; group `ℓ(i+1)` lifts off only after
/// every leg of `ℓi` has touched down, and `ℓ1` follows `ℓm`. In-group order
/// is significant for the flattened representation, so `{1,4}≺{2,3}` and
/// `{4,1}≺{2,3}` are distinct values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gait {
    n: usize,
    groups: Vec<Vec<usize>>,
}

/// Checks that `groups` partitions `1..=n` into non-empty blocks.
pub fn validate_gait(n: usize, groups: &[Vec<usize>]) -> Result<()> {
    let not_partition = |reason: String| Err(Error::NotPartition { n, reason });
    if n == 0 {
        return not_partition("no legs".into());
    }
    if groups.is_empty() {
        return not_partition("no groups".into());
    }
    let mut seen = vec![false; n];
    for (gi, group) in groups.iter().enumerate() {
        if group.is_empty() {
            return not_partition(format!("group {} is empty", gi + 1));
        }
        for &leg in group {
            if leg == 0 || leg > n {
                return Err(Error::BadIndex { index: leg, n });
            }
            if std::mem::replace(&mut seen[leg - 1], true) {
                return not_partition(format!("leg {leg} appears twice"));
            }
        }
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return not_partition(format!("leg {} missing", missing + 1));
    }
    Ok(())
}

impl Gait {
    pub fn new(n: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        validate_gait(n, &groups)?;
        Ok(Gait { n, groups })
    }

    /// Leg count inferred from the number of listed indices.
    pub fn from_groups(groups: Vec<Vec<usize>>) -> Result<Self> {
        let n = groups.iter().map(Vec::len).sum();
        Self::new(n, groups)
    }

    /// `{1}≺{2}≺…≺{n}`.
    pub fn wave(n: usize) -> Self {
        Gait {
            n,
            groups: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    /// Normal gait with the given group sizes.
    pub fn normal_with_sizes(sizes: &[usize]) -> Result<Self> {
        let mut next = 1;
        let groups = sizes
            .iter()
            .map(|&s| {
                let g: Vec<usize> = (next..next + s).collect();
                next += s;
                g
            })
            .collect();
        Self::from_groups(groups)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of groups `m`.
    pub fn m(&self) -> usize {
        self.groups.len()
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }

    /// 0-based index of the group containing `leg` (1-based).
    pub fn group_of(&self, leg: usize) -> Option<usize> {
        self.groups.iter().position(|g| g.contains(&leg))
    }

    /// Concatenation of the groups in order.
    pub fn flat(&self) -> Vec<usize> {
        self.groups.iter().flatten().copied().collect()
    }

    /// `flat()` strictly increasing.
    pub fn is_normal(&self) -> bool {
        self.flat().windows(2).all(|w| w[0] < w[1])
    }

    /// The normal gait reached by relabeling legs in flattened order.
    pub fn normalized(&self) -> Self {
        Self::normal_with_sizes(&self.group_sizes()).expect("sizes of a valid gait")
    }

    /// Same gait with each group sorted ascending.
    pub fn canonical(&self) -> Self {
        let mut groups = self.groups.clone();
        for g in &mut groups {
            g.sort_unstable();
        }
        Gait { n: self.n, groups }
    }

    /// `(C̄, C)` with `[C̄]_ij = e` iff `flat[i] = j`, and `C = diag(C̄, C̄)`.
    pub fn similarity<T: Scalar>(&self) -> (Matrix<T>, Matrix<T>) {
        let mut c_bar = Matrix::zeros(self.n, self.n);
        for (i, &leg) in self.flat().iter().enumerate() {
            c_bar[(i, leg - 1)] = crate::MaxPlus::e();
        }
        let z = Matrix::zeros(self.n, self.n);
        let c = Matrix::from_blocks(&[vec![c_bar.clone(), z.clone()], vec![z, c_bar.clone()]])
            .expect("square blocks");
        (c_bar, c)
    }
}

impl fmt::Display for Gait {
    /// DSL form, e.g. `{1,4}<{2,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (gi, group) in self.groups.iter().enumerate() {
            if gi > 0 {
                f.write_str("<")?;
            }
            f.write_str("{")?;
            for (li, leg) in group.iter().enumerate() {
                if li > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{leg}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// Every ordered set partition of `1..=n`, groups sorted ascending.
///
/// There are Fubini-many of them: 3, 13, 75, 541, 4683 for `n = 2..=6`.
pub fn all_gaits(n: usize) -> Vec<Gait> {
    let mut out = Vec::new();
    for blocks in set_partitions(n) {
        let mut order: Vec<usize> = (0..blocks.len()).collect();
        permute(&mut order, 0, &mut |perm| {
            out.push(Gait {
                n,
                groups: perm.iter().map(|&b| blocks[b].clone()).collect(),
            });
        });
    }
    out
}

fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut parts: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for leg in 1..=n {
        let mut next = Vec::new();
        for p in &parts {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(leg);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![leg]);
            next.push(q);
        }
        parts = next;
    }
    parts
}

fn permute(items: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, visit);
        items.swap(start, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::MaxPlus;

    fn trot() -> Gait {
        Gait::new(4, vec![vec![1, 4], vec![2, 3]]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(validate_gait(4, &[vec![1, 4], vec![2, 3]]).is_ok());
        assert!(matches!(
            validate_gait(2, &[vec![1], vec![1, 2]]),
            Err(Error::NotPartition { .. })
        ));
        assert!(matches!(
            validate_gait(2, &[vec![1], vec![], vec![2]]),
            Err(Error::NotPartition { .. })
        ));
        assert!(matches!(
            validate_gait(3, &[vec![1], vec![2]]),
            Err(Error::NotPartition { .. })
        ));
        assert_eq!(
            validate_gait(2, &[vec![1], vec![3]]),
            Err(Error::BadIndex { index: 3, n: 2 })
        );
        assert_eq!(
            validate_gait(2, &[vec![0, 1, 2]]),
            Err(Error::BadIndex { index: 0, n: 2 })
        );
        assert!(validate_gait(0, &[]).is_err());
    }

    #[test]
    fn flat_and_normal() {
        assert_eq!(trot().flat(), vec![1, 4, 2, 3]);
        assert_eq!(Gait::wave(3).flat(), vec![1, 2, 3]);
        let swapped = Gait::new(4, vec![vec![4, 1], vec![2, 3]]).unwrap();
        assert_eq!(swapped.flat(), vec![4, 1, 2, 3]);
        assert_ne!(swapped, trot());
        assert_eq!(swapped.canonical(), trot());

        assert!(Gait::from_groups(vec![vec![1, 2], vec![3, 4]]).unwrap().is_normal());
        assert!(!trot().is_normal());
        assert!(Gait::wave(6).is_normal());
        assert_eq!(trot().normalized(), Gait::from_groups(vec![vec![1, 2], vec![3, 4]]).unwrap());
    }

    #[test]
    fn trot_similarity() {
        let (c_bar, c) = trot().similarity::<f64>();
        let e = MaxPlus::e();
        for (i, j) in [(0, 0), (1, 3), (2, 1), (3, 2)] {
            assert_eq!(c_bar[(i, j)], e);
        }
        assert_eq!(c_bar.entries().iter().filter(|x| x.is_finite()).count(), 4);
        assert_eq!(c_bar.otimes(&c_bar.transpose()).unwrap(), Matrix::identity(4));
        assert_eq!(c.otimes(&c.transpose()).unwrap(), Matrix::identity(8));
        let (normal_c, _) = Gait::wave(3).similarity::<f64>();
        assert_eq!(normal_c, Matrix::identity(3));
    }

    #[test]
    fn display_is_dsl() {
        assert_eq!(trot().to_string(), "{1,4}<{2,3}");
        assert_eq!(Gait::wave(3).to_string(), "{1}<{2}<{3}");
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| all_gaits(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 13, 75, 541, 4683]);
        let gaits = all_gaits(4);
        let unique: std::collections::HashSet<_> = gaits.iter().cloned().collect();
        assert_eq!(unique.len(), gaits.len());
        assert!(gaits.iter().all(|g| validate_gait(4, g.groups()).is_ok()));
    }
}
