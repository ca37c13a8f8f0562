"""Index computations for minimal zero-sum sequences over finite cyclic
groups: an exact index oracle, constructive unit-witness searches with
certificates, and desk-scale verification campaigns.
"""

from .arith import (
    GroupContext,
    canonical_residue,
    euler_phi,
    factorize,
    is_unit,
    unit_inverse,
    units_stream,
)
from .campaign import (
    CampaignReport,
    VerificationRecord,
    Violation,
    admissible_modulus,
    campaign,
    counterexample_scan,
    verify_n,
    write_report_jsonl,
    write_summary_csv,
)
from .errors import (
    CertificateValidationError,
    HypothesesNotMetError,
    InvalidFamilyError,
    InvalidModulusError,
    LemmaViolationError,
    NotAUnitError,
    UsageError,
    ZsIndexError,
)
from .index import (
    IndexResult,
    index_oracle,
    one_side_criterion,
    triple_sum_criterion,
    unit_norm,
)
from .sequences import (
    GcdProfile,
    ZsSequence,
    canonical_rep,
    enumerate_minimal4,
    enumerate_orbit_reps,
    gcd_profile,
    is_minimal_zero_sum,
    is_zero_sum,
    parse_sequence,
    scale,
)
from .witness import (
    OrbitFamilySums,
    UnitCertificate,
    WitnessFamily,
    WitnessTrace,
    certificate_line,
    certify_index_one,
    decompose_by_step,
    family_unit_below_half,
    lifted_unit_below_half,
    orbit_family_sums,
    pair_unit_below_half,
    straddle_offsets,
    unit_family,
)

__version__ = "0.1.0"

__all__ = [
    "CampaignReport",
    "CertificateValidationError",
    "GcdProfile",
    "GroupContext",
    "HypothesesNotMetError",
    "IndexResult",
    "InvalidFamilyError",
    "InvalidModulusError",
    "LemmaViolationError",
    "NotAUnitError",
    "OrbitFamilySums",
    "UnitCertificate",
    "UsageError",
    "VerificationRecord",
    "Violation",
    "WitnessFamily",
    "WitnessTrace",
    "ZsIndexError",
    "ZsSequence",
    "admissible_modulus",
    "campaign",
    "canonical_rep",
    "canonical_residue",
    "certificate_line",
    "certify_index_one",
    "counterexample_scan",
    "decompose_by_step",
    "enumerate_minimal4",
    "enumerate_orbit_reps",
    "euler_phi",
    "factorize",
    "family_unit_below_half",
    "gcd_profile",
    "index_oracle",
    "is_minimal_zero_sum",
    "is_unit",
    "is_zero_sum",
    "lifted_unit_below_half",
    "one_side_criterion",
    "orbit_family_sums",
    "pair_unit_below_half",
    "parse_sequence",
    "scale",
    "straddle_offsets",
    "triple_sum_criterion",
    "unit_family",
    "unit_inverse",
    "unit_norm",
    "units_stream",
    "verify_n",
    "write_report_jsonl",
    "write_summary_csv",
]
