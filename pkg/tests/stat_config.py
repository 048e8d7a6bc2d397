"""Seeds and significance thresholds for every statistical test.

All randomized tests draw from fixed seeds so the suite is deterministic;
the thresholds below were sized from the sampling noise at the configured
sample counts and are asserted as-is.
"""

# generic seed for randomized test data
SEED = 20240911

# starting-state uniformity: chi-squared significance level
CHI2_SIGNIFICANCE = 0.01
CHI2_DRAWS = 10_000
CHI2_RADIX_LOG = 6

# bit balance at default parameters
BALANCE_MIN_BITS = 10_000_000
BALANCE_TOLERANCE = 0.003
PATTERN_SIGMA = 5.0

# avalanche
AVALANCHE_TRIALS = 100
AVALANCHE_TOLERANCE = 0.01

# completeness
COMPLETENESS_TRIALS = 100
COMPLETENESS_WINDOW = 256
COMPLETENESS_TOLERANCE = 0.02

# observed redundancy must sit within this factor band of the 1/L**2 law
REDUNDANCY_RATIO_LOW = 2.5
REDUNDANCY_RATIO_HIGH = 6.0
