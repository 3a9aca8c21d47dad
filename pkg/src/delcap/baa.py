"""Blahut-Arimoto baseline for the finite-n deletion channel.

Builds the dense transition matrix over all inputs of length n and all
outputs of length 0..n (the empty output included, otherwise rows would sum
to 1 - d^n), runs the alternating-maximization iteration from the uniform
input, and reports the per-symbol capacity proxy with a convergence bracket,
the KKT residual of the final distribution, and the additive sandwich that
pins the true capacity under the proxy.

Input distributions are plain numpy vectors over the 2^n inputs, indexed by
numeral like everything else; internals work in nats, the API reports bits
per symbol.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bitseq import BinarySequence, CapExceededError
from .patcount import counts_for_all_inputs

# Dense matrix is 2^n x (2^(n+1) - 1); past n = 14 it stops fitting in
# ordinary memory.
BAA_MAX_N = 14

_LN2 = math.log(2.0)

# Below this mass an input is treated as off-support when scoring KKT
# optimality; multiplicative updates never produce exact zeros.
KKT_SUPPORT_EPS = 1e-12


@dataclass(frozen=True)
class ChannelMatrix:
    """Dense W(y|x) for block length n and deletion probability d.

    Row index is the numeral of x; outputs run over lengths 0..n, each
    length in numeral order, matching the `outputs` list.
    """

    n: int
    d: float
    outputs: list
    w: np.ndarray


@dataclass(frozen=True)
class BaaReport:
    n: int
    d: float
    iterations: int
    capacity_proxy: float
    history: list
    kkt_residual: float
    sandwich: tuple
    converged: bool


def build_channel_matrix(n: int, d: float) -> ChannelMatrix:
    """Dense transition matrix w[x, y] = #(x,y) (1-d)^len(y) d^(n-len(y))."""
    if not 1 <= n <= BAA_MAX_N:
        raise CapExceededError(f"dense matrix capped at n <= {BAA_MAX_N}, got {n}")
    if not 0.0 < d < 1.0:
        raise ValueError(f"deletion probability {d} outside (0, 1)")
    size = 1 << n
    outputs = []
    columns = []
    for m in range(n + 1):
        scale = (1.0 - d) ** m * d ** (n - m)
        for v in range(1 << m):
            y = BinarySequence.from_numeral(v, m)
            outputs.append(y)
            columns.append(counts_for_all_inputs(y, n) * scale)
    w = np.empty((size, len(outputs)), dtype=np.float64)
    for j, col in enumerate(columns):
        w[:, j] = col
    assert abs(w.sum(axis=1) - 1.0).max() < 1e-12, "rows must be stochastic"
    return ChannelMatrix(n=n, d=d, outputs=outputs, w=w)


def _input_divergences(w: ChannelMatrix, p: np.ndarray) -> np.ndarray:
    """D_j = sum_y w[j,y] ln(w[j,y]/q(y)) in nats; rows with p_j = 0 are zeroed.

    q(y) can vanish only where every supported input has w = 0, so the
    masked rows are exactly the ones whose divergence is irrelevant to both
    the mutual information and the multiplicative update.
    """
    q = p @ w.w
    with np.errstate(divide="ignore", invalid="ignore"):
        contrib = w.w * np.log(w.w / q)
    contrib = np.where(w.w > 0.0, contrib, 0.0)
    D = contrib.sum(axis=1)
    return np.where(p > 0.0, D, 0.0)


def baa_iterate(w: ChannelMatrix, p: np.ndarray) -> tuple[np.ndarray, float]:
    """One alternating-maximization step.

    Returns the reweighted distribution p'_j proportional to p_j exp(D_j)
    and the mutual information of the incoming p in bits per symbol.
    """
    p = np.asarray(p, dtype=np.float64)
    D = _input_divergences(w, p)
    info = float(p @ D)
    new = p * np.exp(D)
    new /= new.sum()
    return new, info / (w.n * _LN2)


def baa_capacity(
    n: int, d: float, tol: float = 1e-10, max_iter: int = 20000
) -> BaaReport:
    """Iterate from the uniform input until the capacity bracket closes.

    The bracket is (max_j D_j - sum_j p_j D_j) / n in bits: an upper and
    lower capacity estimate from the same divergences.  Non-convergence
    within max_iter is reported through the `converged` flag, not an error.
    """
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    w = build_channel_matrix(n, d)
    size = 1 << n
    p = np.full(size, 1.0 / size)
    history: list[float] = []
    converged = False
    for _ in range(max_iter):
        D = _input_divergences(w, p)
        info = float(p @ D)
        history.append(info / (n * _LN2))
        bracket = (float(D.max()) - info) / (n * _LN2)
        if bracket <= tol:
            converged = True
            break
        p = p * np.exp(D)
        p /= p.sum()
    proxy = history[-1]
    return BaaReport(
        n=n,
        d=d,
        iterations=len(history),
        capacity_proxy=proxy,
        history=history,
        kkt_residual=kkt_residual(w, p),
        sandwich=dobrushin_sandwich(n, proxy),
        converged=converged,
    )


def kkt_residual(
    w: ChannelMatrix, p: np.ndarray, support_eps: float = KKT_SUPPORT_EPS
) -> float:
    """Distance of p from the capacity optimality conditions, bits per symbol.

    With D_j the per-input divergence and lambda their p-average, an optimal
    p has D_j = lambda wherever p_j > 0 and D_j <= lambda elsewhere.  The
    residual adds the worst on-support deviation |D_j - lambda| and the
    worst off-support excess max(0, D_j - lambda).
    """
    p = np.asarray(p, dtype=np.float64)
    D = _input_divergences(w, p) / (w.n * _LN2)
    lam = float(p @ D)
    support = p > support_eps
    on = float(np.abs(D[support] - lam).max()) if support.any() else 0.0
    off = 0.0
    if (~support).any():
        off = max(0.0, float((D[~support] - lam).max()))
    return on + off


def dobrushin_sandwich(n: int, c_n: float) -> tuple[float, float]:
    """(c_n - log2(n+1)/n, c_n): the true capacity sits inside this interval.

    The lower edge can go negative at small n, in which case it is vacuous
    but still reported as is.
    """
    if c_n < 0.0:
        raise ValueError("capacity proxy must be non-negative")
    return (c_n - math.log2(n + 1) / n, c_n)
