"""Dense-coding capacity of multiqubit resource states under local noise."""

from ._qdc import (
    __version__,
    bell_depolarizing_threshold,
    capacity,
    critical,
    density_matrix,
    entropy,
    gghz_two_receiver_bound,
    pa_closed_form,
    pc_closed_form,
    quench,
    validate,
)

__all__ = [
    "__version__",
    "bell_depolarizing_threshold",
    "capacity",
    "critical",
    "density_matrix",
    "entropy",
    "gghz_two_receiver_bound",
    "pa_closed_form",
    "pc_closed_form",
    "quench",
    "validate",
]
