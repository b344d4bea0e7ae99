use super::graph::support_components;
use super::NumericalSemigroup;

impl NumericalSemigroup {
    /// Upper end of the Betti scan, `F(N) + 2 * max(atoms)`.
    ///
    /// Past it, `x - a_i - a_j` lies in `N` for every pair of atoms, so any
    /// two factorizations of `x` are joined through one that uses both.
    pub fn betti_bound(&self) -> u64 {
        (self.frobenius + 2 * self.max_atom() as i64).max(0) as u64
    }

    /// Whether `∇_x` is disconnected.
    pub fn is_betti(&self, x: u64) -> bool {
        if x == 0 || !self.contains(x) {
            return false;
        }
        // Two components need two factorizations with disjoint nonempty
        // supports, hence two distinct atoms dividing x.
        let dividing = self
            .atoms
            .iter()
            .filter(|&&a| self.divides(a, x))
            .count();
        if dividing < 2 {
            return false;
        }
        let mut zs = Vec::new();
        self.for_each_factorization(x, |c| {
            zs.push(c.to_vec());
            true
        });
        zs.len() >= 2 && support_components(self.atoms.len(), &zs) >= 2
    }

    /// `Betti(N)`, ascending. Empty for the naturals.
    pub fn betti_elements(&self) -> Vec<u64> {
        if self.is_naturals() {
            return Vec::new();
        }
        (1..=self.betti_bound()).filter(|&x| self.is_betti(x)).collect()
    }
}
