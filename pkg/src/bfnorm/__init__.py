"""Degree, normality and Walsh analysis of Boolean functions over GF(2)."""

from .core import (Anf, AffineTransform, BoolFun, DegreeBand, MAX_VARS,
                   anf_to_truth_table, apply_affine, band_masks, degree,
                   format_anf, parse_anf, permute_variables, random_in_band,
                   truth_table_to_anf, valuation)
from .reldeg import (ABNORMAL, NORMAL, WEAKLY_NORMAL, NormalityReport,
                     RelDegDistribution, classify_normality_naive,
                     classify_normality_paired, distribution, normality_dimension,
                     r_degree, rel_degree, restrict)
from .search import (CLASS_COUNTS, DTableEntry, EXACT, LOWER_BOUND, WorkFactor,
                     exhaustive_m5_rows, iter_function_file, m5_scan_stats,
                     random_lower_bound, scan_file, work_factor)
from .spectra import WalshSpectrum, dual_bent, is_bent, random_mm_bent, walsh_transform
from .subspace import (AffineFlat, ENUMERATION_CAP, FlatTable, LinearSubspace,
                       build_flat_table, cosets, enumerate_subspaces, flat_points,
                       gaussian_binomial, load_flat_table, save_flat_table)

__version__ = "0.1.0"
