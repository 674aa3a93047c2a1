//! Published worked examples for n = 4, 5, 6: cut matrices, vertex lists in
//! their printed order, and the corresponding objective expressions.

/// One worked example. Vertices are `(denominator, numerators)`, so
/// `(2, [1, 0, 1, ...])` is `½(1, 0, 1, ...)`.
#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub newick: &'static str,
    pub matrix: &'static [&'static [u8]],
    pub vertices: &'static [(u64, &'static [u64])],
    pub formulas: &'static [&'static str],
}

pub const FOUR: Fixture = Fixture {
    name: "n4",
    newick: "((1,2),(3,4));",
    matrix: &[
        &[1, 1, 1, 0, 0, 0],
        &[1, 0, 0, 1, 1, 0],
        &[0, 1, 0, 1, 0, 1],
        &[0, 0, 1, 0, 1, 1],
        &[0, 1, 1, 1, 1, 0],
    ],
    vertices: &[(2, &[1, 0, 1, 1, 0, 1]), (2, &[1, 1, 0, 0, 1, 1])],
    formulas: &[
        r"\frac{1}{2}\big(d_{12}+d_{14}+d_{23}+d_{34}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{13}+d_{24}+d_{34}\big)",
    ],
};

pub const FIVE: Fixture = Fixture {
    name: "n5",
    newick: "((1,2),(3,(4,5)));",
    matrix: &[
        &[1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
        &[1, 0, 0, 0, 1, 1, 1, 0, 0, 0],
        &[0, 1, 0, 0, 1, 0, 0, 1, 1, 0],
        &[0, 0, 1, 0, 0, 1, 0, 1, 0, 1],
        &[0, 0, 0, 1, 0, 0, 1, 0, 1, 1],
        &[0, 1, 1, 1, 1, 1, 1, 0, 0, 0],
        &[0, 0, 1, 1, 0, 1, 1, 1, 1, 0],
    ],
    vertices: &[
        (2, &[1, 0, 0, 1, 1, 0, 0, 1, 0, 1]),
        (2, &[1, 1, 0, 0, 0, 0, 1, 1, 0, 1]),
        (2, &[1, 0, 1, 0, 1, 0, 0, 0, 1, 1]),
        (2, &[1, 1, 0, 0, 0, 1, 0, 0, 1, 1]),
    ],
    formulas: &[
        r"\frac{1}{2}\big(d_{12}+d_{15}+d_{23}+d_{34}+d_{45}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{13}+d_{25}+d_{34}+d_{45}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{14}+d_{23}+d_{35}+d_{45}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{13}+d_{24}+d_{35}+d_{45}\big)",
    ],
};

/// Six leaves, two moustaches.
pub const SIX_CATERPILLAR: Fixture = Fixture {
    name: "n6-caterpillar",
    newick: "((1,2),(3,(4,(5,6))));",
    matrix: &[
        &[1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0],
        &[0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 1, 0],
        &[0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 1],
        &[0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1],
        &[0, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
        &[0, 0, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0],
        &[0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 1, 1, 1, 1, 0],
    ],
    vertices: &[
        (2, &[1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1]),
        (2, &[1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0, 1]),
        (2, &[1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 1, 0, 1]),
        (2, &[1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 1]),
        (2, &[1, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 1]),
        (2, &[1, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 1]),
        (2, &[1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 1]),
        (2, &[1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 1]),
    ],
    formulas: &[
        r"\frac{1}{2}\big(d_{12}+d_{16}+d_{23}+d_{34}+d_{45}+d_{56}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{13}+d_{26}+d_{34}+d_{45}+d_{56}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{14}+d_{23}+d_{36}+d_{45}+d_{56}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{13}+d_{24}+d_{36}+d_{45}+d_{56}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{15}+d_{23}+d_{34}+d_{46}+d_{56}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{13}+d_{25}+d_{34}+d_{46}+d_{56}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{14}+d_{23}+d_{35}+d_{46}+d_{56}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{13}+d_{24}+d_{35}+d_{46}+d_{56}\big)",
    ],
};

/// Six leaves, three moustaches.
///
/// The tenth expression is printed in the source with `d_{45}`; the printed
/// tenth vertex has `λ_46 = 1/4, λ_45 = 0`, and only that choice makes the
/// row of leaf 5 sum to one, so `d_{46}` is used here.
pub const SIX_SNOWFLAKE: Fixture = Fixture {
    name: "n6-snowflake",
    newick: "((1,2),((3,4),(5,6)));",
    matrix: &[
        &[1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0],
        &[0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 1, 0],
        &[0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 1],
        &[0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1],
        &[0, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
        &[0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0],
        &[0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 1, 1, 1, 1, 0],
    ],
    vertices: &[
        (2, &[1, 0, 0, 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1]),
        (2, &[1, 0, 1, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1]),
        (2, &[1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1]),
        (2, &[1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1]),
        (4, &[2, 1, 0, 0, 1, 0, 1, 1, 0, 2, 0, 1, 1, 0, 2]),
        (4, &[2, 0, 1, 1, 0, 1, 0, 0, 1, 2, 0, 1, 1, 0, 2]),
        (2, &[1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1]),
        (2, &[1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0, 1]),
        (4, &[2, 0, 1, 0, 1, 1, 0, 1, 0, 2, 1, 0, 0, 1, 2]),
        (4, &[2, 1, 0, 1, 0, 0, 1, 0, 1, 2, 1, 0, 0, 1, 2]),
        (2, &[1, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 1]),
        (2, &[1, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 1]),
    ],
    formulas: &[
        r"\frac{1}{2}\big(d_{12}+d_{16}+d_{24}+d_{34}+d_{35}+d_{56}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{14}+d_{26}+d_{34}+d_{35}+d_{56}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{15}+d_{24}+d_{34}+d_{36}+d_{56}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{14}+d_{25}+d_{34}+d_{36}+d_{56}\big)",
        r"\frac{1}{4}\big(2d_{12}+d_{13}+d_{16}+d_{24}+d_{25}+2d_{34}+d_{36}+d_{45}+2d_{56}\big)",
        r"\frac{1}{4}\big(2d_{12}+d_{14}+d_{15}+d_{23}+d_{26}+2d_{34}+d_{36}+d_{45}+2d_{56}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{16}+d_{23}+d_{34}+d_{45}+d_{56}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{13}+d_{26}+d_{34}+d_{45}+d_{56}\big)",
        r"\frac{1}{4}\big(2d_{12}+d_{14}+d_{16}+d_{23}+d_{25}+2d_{34}+d_{35}+d_{46}+2d_{56}\big)",
        r"\frac{1}{4}\big(2d_{12}+d_{13}+d_{15}+d_{24}+d_{26}+2d_{34}+d_{35}+d_{46}+2d_{56}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{15}+d_{23}+d_{34}+d_{46}+d_{56}\big)",
        r"\frac{1}{2}\big(d_{12}+d_{13}+d_{25}+d_{34}+d_{46}+d_{56}\big)",
    ],
};

pub const ALL: [Fixture; 4] = [FOUR, FIVE, SIX_CATERPILLAR, SIX_SNOWFLAKE];

/// Positions (0-based) of vertices shared between the two six-leaf lists:
/// `SIX_CATERPILLAR.vertices[a] == SIX_SNOWFLAKE.vertices[b]`.
pub const SHARED_SIX: [(usize, usize); 4] = [(0, 6), (1, 7), (4, 10), (5, 11)];

/// Vertex counts for seven leaves: `(shape, vertices, max multiplicity)`.
pub const SEVEN_COUNTS: [(&str, usize, u64); 2] = [("caterpillar", 16, 1), ("snowflake", 32, 2)];

impl Fixture {
    pub fn n(&self) -> usize {
        (self.matrix.len() + 3) / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_are_consistent() {
        for f in ALL {
            let n = f.n();
            assert_eq!(f.matrix.len(), 2 * n - 3, "{}", f.name);
            assert!(f.matrix.iter().all(|r| r.len() == n * (n - 1) / 2));
            assert!(f.vertices.iter().all(|(_, v)| v.len() == n * (n - 1) / 2));
            assert_eq!(f.vertices.len(), f.formulas.len());
        }
        for (a, b) in SHARED_SIX {
            assert_eq!(SIX_CATERPILLAR.vertices[a], SIX_SNOWFLAKE.vertices[b]);
        }
    }
}
