from .claims import CATALOG, Claim, SweepResult, UnknownClaimError, catalog_ids, get_claim, proof_chain_audit, run_claim_sweep
from .grid import GridSpec, lambda_grid, reduced_fractions
from .poibin import Exploration, MadRatioRow, PoissonBinomialLaw, explore_mad_ratio, poisson_binomial_pmf, poisson_binomial_weights
from .records import CSV_HEADER, VerificationRecord, exit_status, summarize, write_csv
from .reports import TightnessReport, tightness_report, write_tightness_csv
