"""Online admission control and placement engine.

Thin wrapper over the C++ extension. Structured values cross the boundary as
JSON text; the helpers here lift them to dicts.
"""

import json as _json

try:
    from ._core import *  # noqa: F401,F403  (installed package layout)
    from . import _core as _core  # noqa: F401
except ImportError:  # in-tree: the build directory is on sys.path
    from _core import *  # noqa: F401,F403
    import _core as _core  # noqa: F401


def run_trace_dict(network, trace, **kwargs):
    """run_trace with dict inputs and a dict result."""
    if isinstance(network, dict):
        network = _json.dumps(network)
    if isinstance(trace, dict):
        trace = _json.dumps(trace)
    return _json.loads(_core.run_trace(network, trace, **kwargs))


def gen_random_dict(seed, **kwargs):
    net, trace = _core.gen_random(seed, **kwargs)
    return _json.loads(net), _json.loads(trace)


def gen_lowerbound_dict(n, **kwargs):
    net, trace = _core.gen_lowerbound(n, **kwargs)
    return _json.loads(net), _json.loads(trace)
