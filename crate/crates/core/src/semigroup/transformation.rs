use std::collections::HashMap;

use super::green::scc_classes;
use super::{Elt, FiniteSemigroup, SemigroupError};

/// `x` followed by `y` (functions act on the right).
pub fn compose(x: &[u32], y: &[u32]) -> Vec<u32> {
    x.iter().map(|&q| y[q as usize]).collect()
}

/// Breadth-first closure of a set of transformations under composition.
///
/// Keeps only the right Cayley graph; the full table is built on demand by
/// [`TransformationClosure::to_semigroup`], which is quadratic in the size.
#[derive(Debug, Clone)]
pub struct TransformationClosure {
    pub degree: usize,
    pub elements: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, Elt>,
    /// Element realizing each input generator (duplicates share an element).
    pub generator_map: Vec<Elt>,
    /// Distinct generator elements, in input order.
    pub generators: Vec<Elt>,
    /// `right[x][k] = x * generators[k]`.
    pub right: Vec<Vec<Elt>>,
}

impl TransformationClosure {
    pub fn new(degree: usize, gens: &[Vec<usize>], cap: usize) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyGeneratorSet);
        }
        let mut elements: Vec<Vec<u32>> = Vec::new();
        let mut index: HashMap<Vec<u32>, Elt> = HashMap::new();
        let mut generator_map = Vec::with_capacity(gens.len());
        let mut generators = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if g.len() != degree || g.iter().any(|&q| q >= degree) {
                return Err(SemigroupError::BadTransformation { index: i, degree });
            }
            let g: Vec<u32> = g.iter().map(|&q| q as u32).collect();
            let id = match index.get(&g) {
                Some(&id) => id,
                None => {
                    let id = elements.len();
                    index.insert(g.clone(), id);
                    elements.push(g);
                    generators.push(id);
                    id
                }
            };
            generator_map.push(id);
        }
        let mut right: Vec<Vec<Elt>> = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            let mut row = Vec::with_capacity(generators.len());
            for &g in &generators {
                let y = compose(&elements[i], &elements[g]);
                let id = match index.get(&y) {
                    Some(&id) => id,
                    None => {
                        if elements.len() >= cap {
                            return Err(SemigroupError::CapExceeded { cap });
                        }
                        let id = elements.len();
                        index.insert(y.clone(), id);
                        elements.push(y);
                        id
                    }
                };
                row.push(id);
            }
            right.push(row);
            i += 1;
        }
        Ok(Self {
            degree,
            elements,
            index,
            generator_map,
            generators,
            right,
        })
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn lookup(&self, t: &[u32]) -> Option<Elt> {
        self.index.get(t).copied()
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        let t = compose(&self.elements[a], &self.elements[b]);
        self.index[&t]
    }

    /// `left[x][k] = generators[k] * x`.
    pub fn left_edges(&self) -> Vec<Vec<Elt>> {
        (0..self.size())
            .map(|x| self.generators.iter().map(|&g| self.mul(g, x)).collect())
            .collect()
    }

    /// R-class and L-class ids from strongly connected components of the
    /// right and left Cayley graphs.
    pub fn r_and_l_classes(&self) -> (Vec<usize>, Vec<usize>) {
        let left = self.left_edges();
        let (r, _) = scc_classes(self.size(), |x| self.right[x].clone());
        let (l, _) = scc_classes(self.size(), |x| left[x].clone());
        (r, l)
    }

    pub fn to_semigroup(&self) -> FiniteSemigroup {
        let n = self.size();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(self.mul(a, b));
            }
        }
        let mut s = FiniteSemigroup::from_table_unchecked(n, table);
        s.generators = Some(self.generators.clone());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_transformation_monoid_on_two_points() {
        let c = TransformationClosure::new(2, &[vec![1, 0], vec![0, 0], vec![1, 1]], 100).unwrap();
        // T_2 without the identity being a generator: swap^2 = id is reached.
        assert_eq!(c.size(), 4);
        assert_eq!(c.generator_map, vec![0, 1, 2]);
    }

    #[test]
    fn duplicate_generators_share_an_element() {
        let c = TransformationClosure::new(2, &[vec![1, 0], vec![1, 0]], 100).unwrap();
        assert_eq!(c.generator_map, vec![0, 0]);
        assert_eq!(c.size(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let err = TransformationClosure::new(4, &[vec![1, 2, 3, 0]], 2).unwrap_err();
        assert_eq!(err, SemigroupError::CapExceeded { cap: 2 });
    }
}
