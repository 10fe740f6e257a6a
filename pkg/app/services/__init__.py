"""Services package for the OFDM code toolkit."""

from .errors import (
    CodeParameterError,
    EnumerationCapExceeded,
    PayloadLengthError,
    NotACodewordError,
    ConstructionError,
    MalformedLineError,
)

from .gbf import (
    GeneralizedBooleanFunction,
    GBF,
    ZqVector,
    RestrictedVector,
    evaluate,
    interpolate,
    restrict,
    reconstruct,
    order,
    polyphase,
    indicator,
    all_bit_vectors,
)

from .corr import (
    CyclotomicInt,
    CorrelationProfile,
    ComplementaryCheck,
    cross_correlation,
    auto_correlation,
    correlation_profile,
    is_complementary_set,
    verify_restriction_identity,
)

from .envelope import (
    PmeprSummary,
    envelope_power,
    power_via_correlation,
    pmepr,
    pmepr_batch,
    pmepr_summary,
    polyphase_symbols,
    mean_power,
)

from .codes import (
    Generator,
    LinearCode,
    WeightMetric,
    zrm_coefficient_constraint,
    zrm_log2_size,
    zrm_code,
    zrm_label,
    zrm_distances,
    rm_code,
    zrm_enumerate,
    contains,
    wt_hamming,
    wt_lee,
    min_distance,
    weight_distribution,
)

from .construct import (
    PathForm,
    PermutationTuple,
    RepresentativeSet,
    ClassCode,
    DistanceContract,
    PmeprCertificate,
    is_path_form,
    golay_pair,
    selector_e,
    complementary_set,
    complementary_set_functions,
    certify_pmepr,
    search_certificate,
    golay_family,
    deinterleave,
    l_code,
    a_code,
    a_code_log2_size,
    r_code,
    r_prime_code,
    class_code,
    class_capacity,
    encode,
    codeword_index,
    payload_from_hex,
    payload_to_hex,
)

from .verify import (
    SuiteReport,
    SUITES,
    resolve_suite,
    run_suite,
    suite_names,
)

__all__ = [
    # Errors
    "CodeParameterError",
    "EnumerationCapExceeded",
    "PayloadLengthError",
    "NotACodewordError",
    "ConstructionError",
    "MalformedLineError",
    # Generalized Boolean functions
    "GeneralizedBooleanFunction",
    "GBF",
    "ZqVector",
    "RestrictedVector",
    "evaluate",
    "interpolate",
    "restrict",
    "reconstruct",
    "order",
    "polyphase",
    "indicator",
    "all_bit_vectors",
    # Correlation
    "CyclotomicInt",
    "CorrelationProfile",
    "ComplementaryCheck",
    "cross_correlation",
    "auto_correlation",
    "correlation_profile",
    "is_complementary_set",
    "verify_restriction_identity",
    # Envelope
    "PmeprSummary",
    "envelope_power",
    "power_via_correlation",
    "pmepr",
    "pmepr_batch",
    "pmepr_summary",
    "polyphase_symbols",
    "mean_power",
    # Codes
    "Generator",
    "LinearCode",
    "WeightMetric",
    "zrm_coefficient_constraint",
    "zrm_log2_size",
    "zrm_code",
    "zrm_label",
    "zrm_distances",
    "rm_code",
    "zrm_enumerate",
    "contains",
    "wt_hamming",
    "wt_lee",
    "min_distance",
    "weight_distribution",
    # Constructions
    "PathForm",
    "PermutationTuple",
    "RepresentativeSet",
    "ClassCode",
    "DistanceContract",
    "PmeprCertificate",
    "is_path_form",
    "golay_pair",
    "selector_e",
    "complementary_set",
    "complementary_set_functions",
    "certify_pmepr",
    "search_certificate",
    "golay_family",
    "deinterleave",
    "l_code",
    "a_code",
    "a_code_log2_size",
    "r_code",
    "r_prime_code",
    "class_code",
    "class_capacity",
    "encode",
    "codeword_index",
    "payload_from_hex",
    "payload_to_hex",
    # Verification
    "SuiteReport",
    "SUITES",
    "resolve_suite",
    "run_suite",
    "suite_names",
]
