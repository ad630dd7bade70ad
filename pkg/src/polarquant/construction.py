"""Polar code construction (beta-expansion) and nonsystematic encoding."""

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

BETA = 2.0 ** 0.25


def _log2_exact(N):
    if not isinstance(N, (int, np.integer)) or N < 1 or (N & (N - 1)) != 0:
        raise ParameterError(f"code length must be a power of two, got {N!r}")
    return int(N).bit_length() - 1


def beta_weights(N, beta=BETA):
    """Polarization weight sum_j b_j * beta**j of every bit index."""
    n = _log2_exact(N)
    idx = np.arange(N)
    bits = (idx[:, None] >> np.arange(n)) & 1
    return bits @ (beta ** np.arange(n))


def construct_info_set(N, K):
    """Return the K most reliable bit indices, sorted ascending."""
    _log2_exact(N)
    if not 1 <= K <= N:
        raise ParameterError(f"need 1 <= K <= N, got K={K}, N={N}")
    w = beta_weights(N)
    # descending weight, ties toward the larger index
    order = np.lexsort((-np.arange(N), -w))
    return np.sort(order[:K])


@dataclass(frozen=True)
class CodeConfig:
    code_len: int
    info_len: int
    info_set: np.ndarray = field(repr=False)
    frozen_value: int = 0

    def __post_init__(self):
        _log2_exact(self.code_len)
        info = np.sort(np.asarray(self.info_set, dtype=np.int64))
        if not 1 <= self.info_len <= self.code_len:
            raise ParameterError("need 1 <= K <= N")
        if info.size != self.info_len or np.unique(info).size != info.size:
            raise ParameterError("info_set must contain K distinct indices")
        if info.size and (info[0] < 0 or info[-1] >= self.code_len):
            raise ParameterError("info_set indices out of range")
        if self.frozen_value != 0:
            raise ParameterError("only frozen_value = 0 is supported")
        object.__setattr__(self, "info_set", info)

    @classmethod
    def from_beta(cls, N, K):
        return cls(N, K, construct_info_set(N, K))

    @classmethod
    def all_info(cls, N):
        return cls(N, N, np.arange(N))

    @property
    def n_bits(self):
        return self.code_len.bit_length() - 1

    @property
    def rate(self):
        return self.info_len / self.code_len

    @property
    def frozen_mask(self):
        mask = np.ones(self.code_len, dtype=np.bool_)
        mask[self.info_set] = False
        return mask


def polar_transform(u):
    """x = u F^{(x)n} over GF(2) along the last axis, no bit reversal.

    The transform is its own inverse, so it also maps codewords back to u.
    """
    x = np.array(u, dtype=np.uint8, copy=True)
    N = x.shape[-1]
    _log2_exact(N)
    lead = x.shape[:-1]
    h = 1
    while h < N:
        v = x.reshape(*lead, N // (2 * h), 2, h)
        v[..., 0, :] ^= v[..., 1, :]
        h *= 2
    return x


def encode(config, info_bits):
    """Encode one payload of K bits (or a batch of shape (..., K))."""
    info_bits = np.asarray(info_bits)
    if info_bits.shape[-1:] != (config.info_len,):
        raise ParameterError(
            f"expected {config.info_len} info bits, got shape {info_bits.shape}"
        )
    if np.any((info_bits != 0) & (info_bits != 1)):
        raise ParameterError("info bits must be 0/1")
    u = np.zeros(info_bits.shape[:-1] + (config.code_len,), dtype=np.uint8)
    u[..., config.info_set] = info_bits
    return polar_transform(u)
