"""Python bindings for the drxsim DRX signaling simulator."""

from ._core import (
    Checkpoint,
    Config,
    InvalidParameter,
    QNetwork,
    QueueOverflow,
    drx_listening_trace,
    evaluate,
    generate_arrivals,
    huber,
    rho_from_doppler,
    select_tbs,
    tb_outcome,
    train,
)

__all__ = [
    "Checkpoint",
    "Config",
    "InvalidParameter",
    "QNetwork",
    "QueueOverflow",
    "drx_listening_trace",
    "evaluate",
    "generate_arrivals",
    "huber",
    "rho_from_doppler",
    "select_tbs",
    "tb_outcome",
    "train",
]
