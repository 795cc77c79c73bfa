/// Size limits for the exhaustive parts of the library. Exceeding one yields
/// `Error::CapExceeded` instead of an unbounded computation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Caps {
    /// Maximum number of members an enumerated family may have.
    pub family_size: u64,
    /// Maximum number of edges for bitmask subset enumeration.
    pub subset_edges: usize,
    /// Dreyfus–Wagner terminal limit.
    pub steiner_terminals: usize,
    /// Maximum binomial(|J|, p) for the p-median solver.
    pub pmedian_subsets: u64,
    /// Maximum number of sites for p-median family enumeration.
    pub pmedian_sites: usize,
    /// Maximum number of scenarios scanned by brute-force evaluation.
    pub scenarios: u64,
    /// Largest decomposition width handed to the treewidth DP.
    pub treewidth: usize,
    /// Maximum entries of a single DP table.
    pub dp_table: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            family_size: 2_000_000,
            subset_edges: 20,
            steiner_terminals: 12,
            pmedian_subsets: 1_000_000,
            pmedian_sites: 12,
            scenarios: 10_000_000,
            treewidth: 6,
            dp_table: 10_000_000,
        }
    }
}
