"""Finite forcing posets: conditions, orders, dense sets and property suites.

Values are plain Python data in the same JSON shapes the command line reads and
writes: a Q0 condition is {"ht": 2, "entries": {"1": [0, 0]}}, a level map is a list
of {node: value} dicts, and so on. Functions accept either such data or JSON text.
"""

import json

from . import _core
from ._core import (
    BudgetExceeded,
    DecodeError,
    ForcelabError,
    IncompatibleError,
    InputTooLarge,
    PreconditionError,
)

DEFAULT_BUDGET = _core.DEFAULT_BUDGET

__all__ = [
    "BudgetExceeded",
    "DecodeError",
    "ForcelabError",
    "IncompatibleError",
    "InputTooLarge",
    "PreconditionError",
    "DEFAULT_BUDGET",
]


def _text(value):
    return value if isinstance(value, str) else json.dumps(value, separators=(",", ":"))


def _load(text):
    return None if text is None else json.loads(text)


def _wrap(name, json_args, returns_json):
    fn = getattr(_core, name)

    def call(*args, **kwargs):
        args = [_text(a) if k in json_args else a for k, a in enumerate(args)]
        result = fn(*args, **kwargs)
        return _load(result) if returns_json else result

    call.__name__ = name
    call.__doc__ = fn.__doc__
    return call


# name: (positions of JSON arguments, whether the result is JSON)
_API = {
    "enumerate_t_level": ((), True),
    "enumerate_b_level": ((), True),
    "validate_q0": ((0,), True),
    "leq_q0": ((0, 1), False),
    "compatible": ((0, 1), False),
    "oracle_compatible": ((0, 1), False),
    "common_extension": ((0, 1), True),
    "extend_to_height": ((0,), True),
    "extend_domain": ((0,), True),
    "separativity_witness": ((0, 1), True),
    "reduction": ((0,), True),
    "enumerate_q0": ((), True),
    "count_q0": ((), False),
    "forces_atom": ((0, 1), False),
    "n_witness": ((0, 1), True),
    "forces_neg_conj": ((0,), False),
    "forces_sigma_set": ((0, 1), False),
    "refuter_condition": ((), True),
    "refuting_common_extension": ((0, 1, 2), True),
    "refutation_report": ((0, 1), True),
    "validate_stp_q": ((0,), True),
    "leq_stp_q": ((0, 1), False),
    "is_dq": ((0,), False),
    "densify_q": ((0,), True),
    "enumerate_dq": ((), True),
    "validate_stp_p": ((0,), True),
    "leq_stp_p": ((0, 1), False),
    "is_dp": ((0,), False),
    "densify_p": ((0,), True),
    "enumerate_dp": ((), True),
    "restrict_dp": ((0,), True),
    "dp_to_dq": ((0,), True),
    "dq_to_dp": ((0,), True),
    "check_order_iso": ((), True),
    "build_filter": ((), True),
    "simulate": ((), True),
    "check_coherence": ((0,), True),
    "check_almost_disjoint": ((0,), True),
    "run_suite": ((), True),
}

for _name, (_json_args, _returns_json) in _API.items():
    globals()[_name] = _wrap(_name, set(_json_args), _returns_json)
    __all__.append(_name)


def disjoint_above(family, k):
    """Values at every level >= k are pairwise distinct across family."""
    return _core.disjoint_above([_text(t) for t in family], k)


__all__.append("disjoint_above")
