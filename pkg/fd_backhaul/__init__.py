"""Top-level package for the full-duplex massive MIMO backhaul analyzer."""
from fd_backhaul.params import (  # noqa: F401
    HeterogeneousKError,
    RoleMismatchError,
    Scenario,
    default_scenario,
)

__author__ = """fd_backhaul developers"""
__version__ = "0.1.0"
