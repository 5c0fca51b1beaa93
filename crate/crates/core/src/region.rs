//! Labelled barycentric grids of the simplex.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::orderings::{hypertriangle_of, HypertriangleCell};
use crate::profile::{Allocation, VarianceProfile, DEFAULT_TOL};
use crate::wisdom::{
    baseline_variance, classify_consistency, membership_of, optimal_allocation, quadratic_form, Consistency,
    Membership,
};

/// `C(m, k)` without overflow for the sizes used here.
pub fn binomial(m: usize, k: usize) -> usize {
    let k = k.min(m - k);
    (0..k).fold(1usize, |acc, i| acc * (m - i) / (i + 1))
}

/// Number of lattice points `(k_1, ..., k_n) / resolution` with
/// `Σ k_i = resolution`.
pub fn grid_size(n: usize, resolution: usize) -> usize {
    binomial(resolution + n - 1, n - 1)
}

/// Integer coordinates of every lattice point, in lexicographic order.
pub fn simplex_lattice(n: usize, resolution: usize) -> Result<Vec<Vec<usize>>> {
    if n < 2 {
        return Err(Error::GroupTooSmall(n));
    }
    if resolution == 0 {
        return Err(Error::ZeroResolution);
    }
    let mut out = Vec::with_capacity(grid_size(n, resolution));
    let mut k = vec![0usize; n];
    fill(&mut k, 0, resolution, &mut out);
    Ok(out)
}

fn fill(k: &mut Vec<usize>, pos: usize, left: usize, out: &mut Vec<Vec<usize>>) {
    if pos + 1 == k.len() {
        k[pos] = left;
        out.push(k.clone());
        return;
    }
    for v in 0..=left {
        k[pos] = v;
        fill(k, pos + 1, left - v, out);
    }
}

fn lattice_allocation(k: &[usize], resolution: usize) -> Allocation {
    let r = resolution as f64;
    Allocation::new(k.iter().map(|&v| v as f64 / r).collect()).expect("lattice point of the simplex")
}

/// Every lattice point as an allocation, in lexicographic order.
pub fn simplex_grid(n: usize, resolution: usize) -> Result<Vec<Allocation>> {
    Ok(simplex_lattice(n, resolution)?
        .iter()
        .map(|k| lattice_allocation(k, resolution))
        .collect())
}

/// Whether `x` satisfies `1 <= z_i / z_{i+1} <= σ²_{i+1} / σ²_i` after
/// relabelling the variances ascending (cross-multiplied, with slack).
pub fn in_gap_polytope(x: &Allocation, s: &VarianceProfile) -> bool {
    let (sorted, order) = s.sorted_ascending();
    let z = order.apply(x.weights());
    let v = sorted.values();
    (0..z.len() - 1)
        .all(|i| z[i + 1] <= z[i] + DEFAULT_TOL && z[i] * v[i] <= z[i + 1] * v[i + 1] + DEFAULT_TOL)
}

/// One labelled grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionPoint {
    pub lattice: Vec<usize>,
    pub x: Allocation,
    pub collective_variance: f64,
    pub membership: Membership,
    pub consistency: Consistency,
    pub gap_polytope: bool,
    pub cell: HypertriangleCell,
}

/// Area fractions of a region map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSummary {
    pub points: usize,
    pub improves: usize,
    pub undermines: usize,
    pub neutral: usize,
    /// At least ordering-consistent.
    pub ordering_consistent: usize,
    /// At least gap-consistent.
    pub gap_consistent: usize,
    pub gap_polytope: usize,
}

impl RegionSummary {
    pub fn fraction(&self, count: usize) -> f64 {
        count as f64 / self.points as f64
    }
}

/// Grid of the simplex labelled by membership, consistency, the gap polytope
/// and hypertriangle.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionMap {
    pub sigma2: VarianceProfile,
    pub resolution: usize,
    pub baseline: f64,
    pub points: Vec<RegionPoint>,
    /// The maximal-consistency point `x*`.
    pub optimum: Allocation,
    pub optimal_variance: f64,
}

impl RegionMap {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Whether some lattice point has every coordinate positive.
    pub fn has_interior_points(&self) -> bool {
        self.resolution >= self.sigma2.len()
    }

    pub fn summary(&self) -> RegionSummary {
        let count = |f: &dyn Fn(&RegionPoint) -> bool| self.points.iter().filter(|p| f(p)).count();
        RegionSummary {
            points: self.points.len(),
            improves: count(&|p| p.membership == Membership::Improves),
            undermines: count(&|p| p.membership == Membership::Undermines),
            neutral: count(&|p| p.membership == Membership::Neutral),
            ordering_consistent: count(&|p| p.consistency >= Consistency::Ordering),
            gap_consistent: count(&|p| p.consistency >= Consistency::Gap),
            gap_polytope: count(&|p| p.gap_polytope),
        }
    }

    /// Gap-consistent points (non-uniform variances) not labelled Improves.
    pub fn gap_inclusion_violations(&self) -> usize {
        if self.sigma2.is_uniform() {
            return 0;
        }
        self.points
            .iter()
            .filter(|p| p.consistency >= Consistency::Gap && p.membership != Membership::Improves)
            .count()
    }

    /// Pairs of improving points whose midpoint, a lattice point at twice
    /// the resolution, does not improve.
    pub fn convexity_violations(&self) -> usize {
        let improving: Vec<&RegionPoint> = self
            .points
            .iter()
            .filter(|p| p.membership == Membership::Improves)
            .collect();
        let r2 = 2.0 * self.resolution as f64;
        let s = self.sigma2.values();
        let mut mid = vec![0.0; s.len()];
        let mut violations = 0;
        for (a, p) in improving.iter().enumerate() {
            for q in &improving[a + 1..] {
                for (m, (u, v)) in mid.iter_mut().zip(p.lattice.iter().zip(&q.lattice)) {
                    *m = (u + v) as f64 / r2;
                }
                if membership_of(quadratic_form(&mid, s), self.baseline, DEFAULT_TOL) != Membership::Improves
                {
                    violations += 1;
                }
            }
        }
        violations
    }
}

pub fn classify_point(k: Vec<usize>, resolution: usize, s: &VarianceProfile) -> Result<RegionPoint> {
    let x = lattice_allocation(&k, resolution);
    let e = quadratic_form(x.weights(), s.values());
    Ok(RegionPoint {
        membership: membership_of(e, baseline_variance(s), DEFAULT_TOL),
        consistency: classify_consistency(&x, s)?,
        gap_polytope: in_gap_polytope(&x, s),
        cell: hypertriangle_of(&x),
        collective_variance: e,
        lattice: k,
        x,
    })
}

/// Labels every lattice point of the simplex at `resolution`.
pub fn region_map(s: &VarianceProfile, resolution: usize) -> Result<RegionMap> {
    let points = simplex_lattice(s.len(), resolution)?
        .into_iter()
        .map(|k| classify_point(k, resolution, s))
        .collect::<Result<Vec<_>>>()?;
    let (optimum, optimal_variance) = optimal_allocation(s);
    Ok(RegionMap {
        sigma2: s.clone(),
        resolution,
        baseline: baseline_variance(s),
        points,
        optimum,
        optimal_variance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orderings::{in_hypertriangle, PermutationOrdering};
    use crate::wisdom::classify;

    fn profile(v: &[f64]) -> VarianceProfile {
        VarianceProfile::new(v.to_vec()).unwrap()
    }

    #[test]
    fn grid_counts_and_order() {
        assert_eq!(simplex_grid(3, 2).unwrap().len(), 6);
        assert_eq!(simplex_grid(3, 100).unwrap().len(), 5151);
        assert_eq!(grid_size(3, 100), 5151);
        assert_eq!(grid_size(4, 7), 120);
        let g: Vec<Vec<f64>> = simplex_grid(2, 4)
            .unwrap()
            .into_iter()
            .map(Allocation::into_inner)
            .collect();
        assert_eq!(
            g,
            vec![
                vec![0.0, 1.0],
                vec![0.25, 0.75],
                vec![0.5, 0.5],
                vec![0.75, 0.25],
                vec![1.0, 0.0]
            ]
        );
        assert_eq!(simplex_grid(3, 0), Err(Error::ZeroResolution));
        assert_eq!(simplex_grid(1, 3), Err(Error::GroupTooSmall(1)));
        assert_eq!(simplex_lattice(3, 2).unwrap()[0], vec![0, 0, 2]);
    }

    #[test]
    fn optimum_lies_in_its_region() {
        let s = profile(&[1.0, 4.0, 9.0]);
        let map = region_map(&s, 10).unwrap();
        let v = classify(&map.optimum, &s, DEFAULT_TOL).unwrap();
        assert_eq!(v.membership, Membership::Improves);
        assert!(v.consistency >= Consistency::Gap);
        assert!(in_gap_polytope(&map.optimum, &s));
    }

    #[test]
    fn two_cells_improve_for_the_unsorted_instance() {
        let s = profile(&[2.0, 1.0, 16.0]);
        let map = region_map(&s, 200).unwrap();
        for tau in [[2, 1, 3], [1, 2, 3]] {
            let tau = PermutationOrdering::from_one_based(&tau).unwrap();
            let cell: Vec<_> = map
                .points
                .iter()
                .filter(|p| in_hypertriangle(&p.x, &tau).unwrap())
                .collect();
            assert!(!cell.is_empty());
            assert!(cell.iter().all(|p| p.membership == Membership::Improves));
        }
    }

    #[test]
    fn uniform_profile_never_improves() {
        let map = region_map(&VarianceProfile::uniform(3, 2.0).unwrap(), 60).unwrap();
        assert_eq!(map.summary().improves, 0);
        assert_eq!(map.summary().neutral, 1);
    }

    #[test]
    fn labels_are_consistent() {
        let s = profile(&[1.0, 2.0, 3.0]);
        let map = region_map(&s, 40).unwrap();
        let sum = map.summary();
        assert!(sum.improves > 0 && 2 * sum.improves < sum.points);
        assert_eq!(map.gap_inclusion_violations(), 0);
        assert_eq!(map.convexity_violations(), 0);
        let degenerate = map
            .points
            .iter()
            .filter(|p| p.cell == HypertriangleCell::Degenerate)
            .count();
        assert_eq!(degenerate, 0);
        assert!(map.has_interior_points());
        assert!(!region_map(&s, 2).unwrap().has_interior_points());
    }
}
