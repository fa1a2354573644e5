//! The elementary abelian groups acting on extruded graphs.
//!
//! An element of Z₂ᵗ is stored as a bit mask where bit `h` holds the `h`-th
//! coordinate. Elements are enumerated in the order `(0,0), (1,0), (0,1),
//! (1,1), ...`, i.e. by the integer whose binary expansion (least significant
//! bit first) is the coordinate word. The same index is used for the
//! irreducible representations: `ρ_i(γ_j) = (-1)^{i·j}`.

use std::fmt;

use nalgebra::DMatrix;

/// An element of Z₂ᵗ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    bits: u32,
    order: usize,
}

impl GroupElement {
    pub fn identity(order: usize) -> Self {
        GroupElement { bits: 0, order }
    }

    /// Builds an element from its bit mask. Bits at positions `>= order` are
    /// discarded.
    pub fn from_bits(bits: u32, order: usize) -> Self {
        assert!(order <= 31, "extrusion order {order} is too large");
        let mask = if order == 0 { 0 } else { (1u32 << order) - 1 };
        GroupElement {
            bits: bits & mask,
            order,
        }
    }

    /// Builds an element from a slice of 0/1 coordinates.
    pub fn from_word(word: &[u8]) -> Self {
        let bits = word
            .iter()
            .enumerate()
            .fold(0u32, |acc, (h, &b)| acc | (u32::from(b & 1) << h));
        GroupElement::from_bits(bits, word.len())
    }

    /// The generator with a single 1 in coordinate `h`.
    pub fn generator(h: usize, order: usize) -> Self {
        assert!(h < order);
        GroupElement::from_bits(1 << h, order)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bit(&self, h: usize) -> bool {
        (self.bits >> h) & 1 == 1
    }

    pub fn is_identity(&self) -> bool {
        self.bits == 0
    }

    /// Group operation (coordinatewise addition mod 2).
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.order, other.order, "elements of different groups");
        GroupElement {
            bits: self.bits ^ other.bits,
            order: self.order,
        }
    }

    /// `γ·γ' mod 2`.
    pub fn dot(&self, other: &GroupElement) -> u32 {
        (self.bits & other.bits).count_ones() & 1
    }

    /// All elements of Z₂ᵗ in the fixed enumeration order.
    pub fn all(order: usize) -> Vec<GroupElement> {
        (0..1u32 << order)
            .map(|b| GroupElement::from_bits(b, order))
            .collect()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for h in 0..self.order {
            write!(f, "{}", u8::from(self.bit(h)))?;
        }
        Ok(())
    }
}

/// The subgroup of Z₂ᵗ generated by a chosen set of coordinate directions.
///
/// With every direction active this is the full extrusion group. Hyperplane
/// pinning can drop directions, and a framework without extrusion structure
/// carries the trivial group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtrusionGroup {
    order: usize,
    generators: Vec<usize>,
}

impl ExtrusionGroup {
    pub fn full(order: usize) -> Self {
        ExtrusionGroup {
            order,
            generators: (0..order).collect(),
        }
    }

    pub fn trivial(order: usize) -> Self {
        ExtrusionGroup {
            order,
            generators: Vec::new(),
        }
    }

    pub fn with_generators(order: usize, mut generators: Vec<usize>) -> Self {
        generators.sort_unstable();
        generators.dedup();
        assert!(generators.iter().all(|&h| h < order));
        ExtrusionGroup { order, generators }
    }

    /// The extrusion order `t` of the ambient group.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Coordinate directions generating this subgroup.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Number of elements, `2^k` for `k` generators.
    pub fn size(&self) -> usize {
        1 << self.generators.len()
    }

    /// The `j`-th element, embedded as a word of length `t`.
    pub fn element(&self, j: usize) -> GroupElement {
        let bits = self
            .generators
            .iter()
            .enumerate()
            .filter(|(k, _)| (j >> k) & 1 == 1)
            .fold(0u32, |acc, (_, &h)| acc | (1 << h));
        GroupElement::from_bits(bits, self.order)
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.size()).map(|j| self.element(j)).collect()
    }

    /// Value of the irreducible character `ρ_i` at the `j`-th element.
    pub fn character(&self, irrep: usize, element: usize) -> f64 {
        if (irrep & element).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Label of an element or irrep index in the subgroup coordinates.
    pub fn label(&self, j: usize) -> String {
        let k = self.generators.len();
        if k == 0 {
            return "e".to_string();
        }
        let digits: Vec<String> = (0..k).map(|b| ((j >> b) & 1).to_string()).collect();
        if k == 1 {
            digits[0].clone()
        } else {
            format!("({})", digits.join(","))
        }
    }
}

/// Character table of Z₂ᵗ: row `i` is `ρ_i`, column `j` is the `j`-th element.
pub fn irreducible_characters(order: usize) -> DMatrix<f64> {
    let g = ExtrusionGroup::full(order);
    character_table(&g)
}

/// Character table of an arbitrary coordinate subgroup.
pub fn character_table(group: &ExtrusionGroup) -> DMatrix<f64> {
    let n = group.size();
    DMatrix::from_fn(n, n, |i, j| group.character(i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_one_table() {
        let t = irreducible_characters(1);
        assert_eq!(t, DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, -1.0]));
    }

    #[test]
    fn order_two_table_rows() {
        let t = irreducible_characters(2);
        let expected = [
            [1.0, 1.0, 1.0, 1.0],
            [1.0, -1.0, 1.0, -1.0],
            [1.0, 1.0, -1.0, -1.0],
            [1.0, -1.0, -1.0, 1.0],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(t[(i, j)], *v);
            }
        }
    }

    #[test]
    fn order_zero_is_trivial() {
        assert_eq!(irreducible_characters(0), DMatrix::from_element(1, 1, 1.0));
    }

    #[test]
    fn columns_are_orthogonal() {
        let t = irreducible_characters(3);
        let g = t.transpose() * &t;
        assert_eq!(g, DMatrix::identity(8, 8) * 8.0);
    }

    #[test]
    fn subgroup_embedding() {
        let g = ExtrusionGroup::with_generators(3, vec![2, 0]);
        let words: Vec<String> = g.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(words, ["000", "100", "001", "101"]);
    }

    #[test]
    fn compose_is_xor() {
        let a = GroupElement::from_word(&[1, 0, 1]);
        let b = GroupElement::from_word(&[1, 1, 0]);
        assert_eq!(a.compose(&b), GroupElement::from_word(&[0, 1, 1]));
        assert_eq!(a.dot(&b), 1);
    }
}
