"""Float-point SC and SCL decoders (min-sum f, LLR-domain path metric).

Decision convention: a leaf decides 0 iff its LLR is >= 0, and the path
metric grows by |LLR| whenever a decision disagrees with that rule.
"""

import numpy as np

from ._kernels import decode_batch
from .errors import ParameterError

_NO_FTAB = np.zeros((1, 1, 1), dtype=np.int32)
_NO_GTAB = np.zeros((1, 1, 1, 2), dtype=np.int32)
_NO_RECON = np.zeros((1, 1))


def f_fn(a, b):
    m = min(abs(a), abs(b))
    return -m if (a < 0) != (b < 0) else m


def g_fn(a, b, u):
    return (-a if u else a) + b


def hard_decision(alpha, is_frozen):
    if is_frozen:
        return 0
    return 0 if alpha >= 0 else 1


def pm_update(pm, alpha, u_hat):
    preferred = 0 if alpha >= 0 else 1
    return pm + abs(alpha) if u_hat != preferred else pm


def _as_frames(config, llrs):
    x = np.ascontiguousarray(llrs, dtype=np.float64)
    if x.ndim not in (1, 2) or x.shape[-1] != config.code_len:
        raise ParameterError(f"expected {config.code_len} LLRs per frame, got shape {x.shape}")
    return x


def decode_float(config, llrs, list_size=1):
    """Decode frames (N,) or (F, N); returns full u vectors and path metrics."""
    if list_size < 1:
        raise ParameterError("list size must be >= 1")
    x = _as_frames(config, llrs)
    u, pm = decode_batch(
        np.atleast_2d(x), config.frozen_mask, config.n_bits, int(list_size),
        False, _NO_FTAB, _NO_GTAB, _NO_RECON,
    )
    if x.ndim == 1:
        return u[0], pm[0]
    return u, pm


def sc_decode(config, llrs):
    """SC decode one frame (N,) or a batch (F, N); returns the info bits."""
    return decode_float(config, llrs, 1)[0][..., config.info_set]


def scl_decode(config, llrs, list_size):
    return decode_float(config, llrs, list_size)[0][..., config.info_set]
