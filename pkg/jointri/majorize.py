"""
Multiplicative Majorization
============================
Feasibility predicates for every decomposition in the package.

x majorizes y (multiplicatively) when both have the same product and every
prefix product of x, sorted non-increasingly, dominates the corresponding
prefix product of y. All comparisons run on logarithms so long vectors of
large or tiny values neither overflow nor underflow.

The block variant orders blocks by their *per-element* ratio r_k, not by the
block determinant ratio rho_k = r_k ** n_k. The two orderings can disagree,
and the per-element one is the correct one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from jointri.errors import DimensionMismatch, InvalidBlockSpec, NonFiniteEntries


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

MAJORIZATION_TOL = 1e-9
BLOCK_RATIO_TOL = 1e-10


# ---------------------------------------------------------------------------
# Positive vectors
# ---------------------------------------------------------------------------

def as_positive_vector(x) -> np.ndarray:
    """Coerce to a 1-D float array of strictly positive, finite entries."""
    arr = np.array(x, dtype=np.float64, copy=True).reshape(-1)
    if arr.size == 0:
        raise DimensionMismatch("Vector must be non-empty.")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteEntries("Vector contains NaN or Inf entries.")
    if np.any(arr <= 0):
        raise NonFiniteEntries("Vector entries must be strictly positive.")
    return arr


def _log_sorted(x: np.ndarray) -> np.ndarray:
    return np.sort(np.log(x))[::-1]


def _slack(tol: float, *logs: np.ndarray) -> float:
    scale = max([1.0] + [float(np.sum(np.abs(v))) for v in logs])
    return tol * scale


# ---------------------------------------------------------------------------
# Majorization
# ---------------------------------------------------------------------------

def violated_prefix(x, y, tol: float = MAJORIZATION_TOL) -> int | None:
    """
    Index of the first failed condition of ``x`` majorizing ``y``.

    Returns k (1-based prefix length) for the first prefix whose product
    comparison fails, n for a product mismatch, or None when x majorizes y.
    """
    x = as_positive_vector(x)
    y = as_positive_vector(y)
    if x.size != y.size:
        raise DimensionMismatch(f"Length mismatch: {x.size} vs {y.size}.")
    lx = _log_sorted(x)
    ly = _log_sorted(y)
    slack = _slack(tol, lx, ly)
    cx = np.cumsum(lx)
    cy = np.cumsum(ly)
    for k in range(x.size - 1):
        if cx[k] < cy[k] - slack:
            return k + 1
    if abs(cx[-1] - cy[-1]) > slack:
        return x.size
    return None


def majorizes(x, y, tol: float = MAJORIZATION_TOL) -> bool:
    """True iff ``x`` multiplicatively majorizes ``y``."""
    return violated_prefix(x, y, tol) is None


def geometric_mean_vector(x) -> np.ndarray:
    """Constant vector at the geometric mean of ``x``; always majorized by it."""
    x = as_positive_vector(x)
    return np.full(x.size, float(np.exp(np.mean(np.log(x)))))


def project_product(target, reference) -> np.ndarray:
    """
    Rescale ``target`` so its product equals that of ``reference`` exactly.

    Used to put borderline requests onto the feasible boundary before a
    construction consumes them.
    """
    t = as_positive_vector(target)
    r = as_positive_vector(reference)
    shift = (np.sum(np.log(r)) - np.sum(np.log(t))) / t.size
    return t * np.exp(shift)


# ---------------------------------------------------------------------------
# Block form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockSpec:
    """
    Block partition with per-block determinant ratios.

    ``per_element_ratios`` holds r_k; the block ratios rho_k = r_k ** n_k
    are derived.
    """
    sizes: tuple[int, ...]
    per_element_ratios: tuple[float, ...]
    ratios: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes or any(s <= 0 for s in sizes):
            raise InvalidBlockSpec(f"Block sizes must be positive, got {self.sizes}.")
        r = tuple(float(v) for v in as_positive_vector(self.per_element_ratios))
        if len(r) != len(sizes):
            raise InvalidBlockSpec("One per-element ratio is needed per block.")
        rho = tuple(rk ** nk for rk, nk in zip(r, sizes))
        if self.ratios:
            given = as_positive_vector(self.ratios)
            if given.size != len(sizes) or np.any(
                np.abs(given - np.array(rho)) > BLOCK_RATIO_TOL * np.array(rho)
            ):
                raise InvalidBlockSpec("Block ratios disagree with r_k ** n_k.")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "per_element_ratios", r)
        object.__setattr__(self, "ratios", rho)

    @classmethod
    def from_block_ratios(cls, sizes, rho) -> BlockSpec:
        rho = as_positive_vector(rho)
        sizes = tuple(int(s) for s in sizes)
        if rho.size != len(sizes):
            raise InvalidBlockSpec("One block ratio is needed per block.")
        r = tuple(float(v ** (1.0 / n)) for v, n in zip(rho, sizes))
        return cls(sizes=sizes, per_element_ratios=r)

    @property
    def n(self) -> int:
        return sum(self.sizes)


def block_feasible(mu, spec: BlockSpec, tol: float = MAJORIZATION_TOL) -> bool:
    """
    Existence test for a block joint triangularization.

    Blocks are visited in non-increasing order of r_k. Block l is compared
    with the product of the next n_{k_l} largest GSVs.
    """
    mu = as_positive_vector(mu)
    if spec.n != mu.size:
        raise DimensionMismatch(
            f"Block sizes sum to {spec.n} but the GSV vector has {mu.size} entries."
        )
    order = sorted(range(len(spec.sizes)), key=lambda k: -spec.per_element_ratios[k])
    lmu = _log_sorted(mu)
    lrho = np.log(np.array([spec.ratios[k] for k in order]))
    bounds = np.cumsum([spec.sizes[k] for k in order])
    lm = np.array([np.sum(lmu[b - s:b]) for b, s in
                   zip(bounds, [spec.sizes[k] for k in order])])
    slack = _slack(tol, lmu, lrho)
    if abs(np.sum(lrho) - np.sum(lmu)) > slack:
        return False
    prefix_rho = np.cumsum(lrho)
    prefix_mu = np.cumsum(lm)
    return bool(np.all(prefix_rho[:-1] <= prefix_mu[:-1] + slack))
