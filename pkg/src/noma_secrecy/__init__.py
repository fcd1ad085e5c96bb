"""Secrecy-rate region simulator for two-user downlink NOMA relaying.

Covers a trusted-relay scenario (cooperative jamming, decode-and-forward,
amplify-and-forward against an external eavesdropper) and an untrusted-relay
scenario (compress/amplify-and-forward with passive or active users), plus a
weighted-sum boundary optimizer and a CSV-emitting CLI.
"""

__version__ = "0.1.0"

from .channels import (
    ScenarioGeometry,
    TrustedChannels,
    UntrustedChannels,
    dbm_to_linear,
    draw_channel,
    draw_trusted,
    draw_untrusted,
    path_gain_magnitude,
    trial_rng,
)
from .errors import (
    BoundaryError,
    ConfigurationError,
    DeflationError,
    DegenerateRealizationError,
    DomainError,
    NomaSecrecyError,
    NumericalDegeneracyError,
    SingularMatrixError,
)
from .linalg import leading_eigvec, leading_gen_eigvec, orth_complement_basis, orth_projector
from .optimizer import (
    BoundaryPoint,
    GridConfig,
    RegionCurve,
    SchemeId,
    boundary_point,
    scheme_rates,
    secrecy_sum_rate,
    trace_region,
)
from .rates import PowerSplit, RatePair, noma_rates, wiretap_secrecy_rates
from .trusted import (
    BeamWeight,
    af_beamformer,
    af_secrecy_rates,
    cj_beamformer,
    cj_secrecy_rates,
    df_beamformer,
    df_secrecy_rates,
)
from .untrusted import (
    active_jammer,
    af_active,
    af_passive,
    cf_active,
    cf_passive,
    cf_quantization_noise,
    untrusted_baseline,
)

__all__ = [
    "__version__",
    "ScenarioGeometry",
    "TrustedChannels",
    "UntrustedChannels",
    "dbm_to_linear",
    "draw_channel",
    "draw_trusted",
    "draw_untrusted",
    "path_gain_magnitude",
    "trial_rng",
    "NomaSecrecyError",
    "DomainError",
    "ConfigurationError",
    "SingularMatrixError",
    "DeflationError",
    "DegenerateRealizationError",
    "BoundaryError",
    "NumericalDegeneracyError",
    "leading_eigvec",
    "leading_gen_eigvec",
    "orth_complement_basis",
    "orth_projector",
    "PowerSplit",
    "RatePair",
    "noma_rates",
    "wiretap_secrecy_rates",
    "BeamWeight",
    "cj_beamformer",
    "cj_secrecy_rates",
    "df_beamformer",
    "df_secrecy_rates",
    "af_beamformer",
    "af_secrecy_rates",
    "untrusted_baseline",
    "cf_passive",
    "af_passive",
    "cf_active",
    "af_active",
    "active_jammer",
    "cf_quantization_noise",
    "SchemeId",
    "GridConfig",
    "BoundaryPoint",
    "RegionCurve",
    "boundary_point",
    "scheme_rates",
    "trace_region",
    "secrecy_sum_rate",
]
