"""Monte-Carlo simulator for malicious-RIS attacks on RSMA/SDMA downlinks."""

from .attacker import (
    AttackSpec,
    ReflectionState,
    aligned_attack,
    effective_channel,
    mitigation_attack,
    random_attack,
)
from .channel import (
    CascadeMatrix,
    ChannelEstimate,
    ChannelRealization,
    CsiErrorSpec,
    ScenarioGeometry,
    cascade,
    corrupt_csi,
    draw_channels,
    path_loss,
)
from .harness import (
    ExperimentConfig,
    ResultRecord,
    default_config,
    run_experiment,
    run_trial,
)
from .metrics import RateReport, common_sinr, private_sinr, rate_report
from .transmitter import (
    PowerAllocation,
    PrecoderSet,
    allocate_power,
    build_precoders,
    mf_common_precoder,
    zf_private_precoders,
)

__version__ = "0.1.0"
