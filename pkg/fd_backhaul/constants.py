from typing import Dict, Literal, Tuple, get_args

# Type annotations
Phase = Literal[1, 2]
PHASES: Tuple[Phase, ...] = get_args(Phase)

Method = Literal["analytic", "montecarlo", "limit"]
METHODS: Tuple[Method, ...] = get_args(Method)

# "exact" evaluates every conditioned SINR term without approximation,
# "printed" keeps the legacy closed forms unchanged.
Form = Literal["exact", "printed"]
FORMS: Tuple[Form, ...] = get_args(Form)

Side = Literal["mc", "sc"]
SIDES: Tuple[Side, ...] = get_args(Side)

SweepVariable = Literal["M_rx", "N_rx", "M_tx", "N_tx", "b", "K_dB", "sigma2", "SNR_dB"]
SWEEP_VARIABLES: Tuple[SweepVariable, ...] = get_args(SweepVariable)

SweepOutput = Literal["analytic", "montecarlo", "limits", "hd", "ee"]
SWEEP_OUTPUTS: Tuple[SweepOutput, ...] = get_args(SweepOutput)

# Names of the additive SINR components, in report order.
COMPONENTS: Tuple[str, ...] = (
    "desired",
    "ici",
    "estimation",
    "si",
    "sc2sc",
    "noise",
    "qn",
)

# Sweep variables that only make sense for one phase.
PHASE_VARIABLES: Dict[Phase, Tuple[SweepVariable, ...]] = {
    1: ("M_rx", "N_rx", "b", "K_dB", "sigma2", "SNR_dB"),
    2: ("M_tx", "N_tx", "b", "K_dB", "sigma2", "SNR_dB"),
}

# Distortion factor of a b-bit quantizer for b <= 5 (Lloyd-Max, Gaussian input).
KAPPA_TABLE: Dict[int, float] = {
    1: 0.3634,
    2: 0.1175,
    3: 0.03454,
    4: 0.009497,
    5: 0.002499,
}

# "pooled" uses the sum of squares over every realization, "batch_means" the
# spread of the per-batch means.
StderrMethod = Literal["pooled", "batch_means"]
STDERR_METHODS: Tuple[StderrMethod, ...] = get_args(StderrMethod)
