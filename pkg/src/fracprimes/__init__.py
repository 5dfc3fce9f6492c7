"""Primes in fractional sequences [x/n]: sums, densities and censuses."""
from .arith import LambdaTable, build_lambda_table, is_prime, lambda_of, prime_power, primes_up_to
from .census import (CensusRecord, GaussianTwinPair, beatty_primes, error_exponent_report,
                     fractional_prime_count, gaussian_twin_pairs, interleaving_report,
                     pair_census, piatetski_shapiro_primes, weighted_census)
from .density import (DensityEstimate, EulerProductEstimate, density_series,
                      density_series_pair, euler_product, tail_bound)
from .errors import DomainError
from .floor_sum import (BlockDecomposition, decompose, floor_weighted_sum,
                        floor_weighted_sum_bruteforce)
from .frac_parts import cubic_frac_parts, dlvp_sum, ps_frac_parts, quad_frac_parts
from .poly import (FactorialBasis, IntPolynomial, evaluate, fixed_divisor_factorial,
                   fixed_divisor_truncated, parse_poly, to_factorial_basis)

__version__ = "0.1.0"
