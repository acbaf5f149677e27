/// Resource caps shared by the enumerating operations.
///
/// Every cap is a hard limit: exceeding one aborts the operation with
/// [`Error::CapExceeded`](crate::Error::CapExceeded) instead of truncating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Longest word an enumeration or closure may produce.
    pub max_word_len: usize,
    /// Largest set a closure or word enumeration may hold.
    pub max_closure_size: usize,
    /// Largest number of group elements a breadth-first search may hold.
    pub max_elements: usize,
    /// Longest automorphism image word tolerated during group searches.
    pub max_image_len: usize,
    /// Largest permutation group order enumerated element by element.
    pub max_group_order: usize,
    /// Largest point set accepted by the finite automorphism searches.
    pub max_points: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_word_len: 64,
            max_closure_size: 200_000,
            max_elements: 500_000,
            max_image_len: 1 << 20,
            max_group_order: 5_000_000,
            max_points: 16,
        }
    }
}
