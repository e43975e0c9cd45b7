use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, ModSystem};

use super::{FinModule, ModMorphism};

/// Linear equations `P_k · H = Q_k` in an unknown morphism `H: Z → Y`.
///
/// The left-hand sides `P_k: S_k → Z` are fixed when the problem is built,
/// and many right-hand sides `Q_k: S_k → Y` can then be decided against the
/// same prepared system. `H` is parametrized by one coordinate per matrix
/// entry: entry `(i, j)` equals `u·c` with `c` read modulo
/// `gcd(order_i, order_j)` and `u = 2` exactly when an order-2 generator maps
/// into an order-4 one.
#[derive(Debug, Clone)]
pub struct HomProblem {
    source: FinModule,
    target: FinModule,
    lhs: Vec<ModMorphism>,
    units: Vec<i64>,
    periods: Vec<i64>,
    system: ModSystem,
}

impl HomProblem {
    pub fn new(source: FinModule, target: FinModule, lhs: Vec<ModMorphism>) -> Result<Self> {
        if let Some(p) = lhs.iter().find(|p| p.target() != &source) {
            return Err(Error::ObjectMismatch(format!(
                "equation coefficient maps into {}, unknown starts at {}",
                p.target(),
                source
            )));
        }
        let (zn, yn) = (source.ngens(), target.ngens());
        let mut units = Vec::with_capacity(zn * yn);
        let mut periods = Vec::with_capacity(zn * yn);
        for i in 0..zn {
            for j in 0..yn {
                let (oi, oj) = (source.order(i), target.order(j));
                units.push(if oi == 2 && oj == 4 { 2 } else { 1 });
                periods.push(oi.min(oj) as i64);
            }
        }

        let n_eq: usize = lhs.iter().map(|p| p.source().ngens() * yn).sum();
        let mut a = IntMatrix::zeros(zn * yn, n_eq);
        let mut moduli = Vec::with_capacity(n_eq);
        let mut col = 0;
        for p in &lhs {
            for s in 0..p.source().ngens() {
                for j in 0..yn {
                    for i in 0..zn {
                        let var = i * yn + j;
                        a.set(var, col, p.entry(s, i) as i64 * units[var]);
                    }
                    moduli.push(target.order(j) as i64);
                    col += 1;
                }
            }
        }
        let system = ModSystem::new(&a, &moduli)?;
        Ok(Self { source, target, lhs, units, periods, system })
    }

    fn rhs_vector(&self, rhs: &[ModMorphism]) -> Result<Vec<i64>> {
        if rhs.len() != self.lhs.len() {
            return Err(Error::ObjectMismatch(format!(
                "{} right-hand sides for {} equations",
                rhs.len(),
                self.lhs.len()
            )));
        }
        let mut b = Vec::with_capacity(self.system.equations());
        for (p, q) in self.lhs.iter().zip(rhs) {
            if q.source() != p.source() || q.target() != &self.target {
                return Err(Error::ObjectMismatch(format!(
                    "right-hand side {} -> {} does not match {} -> {}",
                    q.source(),
                    q.target(),
                    p.source(),
                    self.target
                )));
            }
            for s in 0..q.source().ngens() {
                b.extend(q.row(s).iter().map(|&x| x as i64));
            }
        }
        Ok(b)
    }

    pub fn solve(&self, rhs: &[ModMorphism]) -> Result<Option<ModMorphism>> {
        let b = self.rhs_vector(rhs)?;
        let Some(x) = self.system.solve(&b)? else {
            return Ok(None);
        };
        let yn = self.target.ngens();
        let h = ModMorphism::from_fn(self.source.clone(), self.target.clone(), |i, j| {
            x[i * yn + j].rem_euclid(self.periods[i * yn + j]) * self.units[i * yn + j]
        })?;
        debug_assert!(self.lhs.iter().zip(rhs).all(|(p, q)| &p.compose_unchecked(&h) == q));
        Ok(Some(h))
    }

    pub fn is_solvable(&self, rhs: &[ModMorphism]) -> Result<bool> {
        let b = self.rhs_vector(rhs)?;
        Ok(self.system.is_solvable(&b)?)
    }

    /// Number of `H` with `P_k·H = 0` for all `k`; equivalently the number of
    /// solutions of any solvable instance.
    pub fn solution_count(&self) -> u128 {
        self.system.homogeneous_solution_count(&self.periods)
    }

    pub fn source(&self) -> &FinModule {
        &self.source
    }

    pub fn target(&self) -> &FinModule {
        &self.target
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(orders: &[u8]) -> FinModule {
        FinModule::new(orders.to_vec()).unwrap()
    }

    #[test]
    fn unconstrained_problem_counts_all_homs() {
        let p = HomProblem::new(md(&[4, 2]), md(&[4, 2]), vec![]).unwrap();
        // Hom(Z/4+Z/2, Z/4+Z/2) has 4*2*2*2 elements.
        assert_eq!(p.solution_count(), 32);
        assert!(p.solve(&[]).unwrap().unwrap().is_zero());
    }

    #[test]
    fn extension_along_doubling() {
        // h: Z/4 -> Z/4 with 2·h = 2 has solutions h = 1, 3.
        let two = ModMorphism::new(md(&[4]), md(&[4]), &[vec![2]]).unwrap();
        let p = HomProblem::new(md(&[4]), md(&[4]), vec![two.clone()]).unwrap();
        let h = p.solve(std::slice::from_ref(&two)).unwrap().unwrap();
        assert_eq!(two.compose(&h).unwrap(), two);
        assert_eq!(p.solution_count(), 2);
        let one = ModMorphism::identity(&md(&[4]));
        assert!(!p.is_solvable(&[one]).unwrap());
    }

    #[test]
    fn order_two_source_entries_are_even() {
        // h: Z/2 -> Z/4 with id_{Z/2}·h = 2.
        let id = ModMorphism::identity(&md(&[2]));
        let p = HomProblem::new(md(&[2]), md(&[4]), vec![id]).unwrap();
        let q = ModMorphism::new(md(&[2]), md(&[4]), &[vec![2]]).unwrap();
        assert_eq!(p.solve(std::slice::from_ref(&q)).unwrap().unwrap(), q);
        assert_eq!(p.solution_count(), 1);
    }

    #[test]
    fn mismatched_rhs_is_rejected() {
        let id = ModMorphism::identity(&md(&[4]));
        let p = HomProblem::new(md(&[4]), md(&[4]), vec![id]).unwrap();
        let bad = ModMorphism::identity(&md(&[2]));
        assert!(p.solve(&[bad]).is_err());
        assert!(p.solve(&[]).is_err());
    }
}
