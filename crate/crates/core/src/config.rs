//! Size limits for the exact solvers.

/// Environment variable overriding [`ExactConfig::max_brute_force_vertices`].
pub const MAX_BRUTE_ENV: &str = "MATCHSHAP_MAX_BRUTE_N";

/// Hard ceiling on the brute-force bound: coalitions are 64-bit masks.
pub const BRUTE_FORCE_CEILING: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactConfig {
    /// Largest component (in vertices) solved by enumerating coalitions.
    pub max_brute_force_vertices: usize,
    /// Largest number of modules for which the player-type program is used.
    pub max_modules: usize,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            max_brute_force_vertices: 20,
            max_modules: 6,
        }
    }
}

impl ExactConfig {
    /// Defaults, with the brute-force bound taken from `MATCHSHAP_MAX_BRUTE_N`
    /// when it holds a valid number.
    pub fn from_env() -> Self {
        let mut config = Self::default();
        if let Some(n) = std::env::var(MAX_BRUTE_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            config.max_brute_force_vertices = n.min(BRUTE_FORCE_CEILING);
        }
        config
    }
}
