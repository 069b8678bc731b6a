"""Parameter schedule and greedy index selection for quasi-tilings."""

from fractions import Fraction
from typing import Callable, List, Optional, Tuple

import structlog

from folnerkit.core.exceptions import ConfigurationError, PrefixExhaustedError
from folnerkit.core.numeric import Number, to_fraction
from folnerkit.groups.folner import FolnerSequence
from folnerkit.tiling.family import TileFamily

logger = structlog.get_logger()

# Upper end of a linear scan over enumerated (non closed-form) sequences
DEFAULT_SCAN_LIMIT = 64


def select_tile_parameters(epsilon: Number, n_start: int = 1) -> Tuple[int, Fraction]:
    """Smallest k with (1 - ε/2)^k < ε, and δ = ε / (2·6^k), halved once.

    Both inequalities are decided exactly; the δ returned satisfies 6^k δ < ε/2
    strictly.
    """
    eps = to_fraction(epsilon)
    if not 0 < eps <= Fraction(1, 4):
        raise ConfigurationError(f"epsilon must lie in (0, 1/4], got {epsilon}")
    if n_start < 1:
        raise ConfigurationError(f"N must be at least 1, got {n_start}")
    base = 1 - eps / 2
    k = 1
    while base**k >= eps:
        k += 1
    delta = eps / (2 * 6**k) / 2
    logger.debug("Tile parameters selected", epsilon=str(eps), k=k, delta=float(delta))
    return k, delta


def _first_index(
    predicate: Callable[[int], bool], start: int, cap: Optional[int], monotone: bool
) -> Optional[int]:
    """Smallest n >= start with predicate(n), within cap; galloping when monotone."""
    last = cap if cap is not None else (None if monotone else start + DEFAULT_SCAN_LIMIT)
    if not monotone:
        for n in range(start, (last or start) + 1):
            if predicate(n):
                return n
        return None
    lo, step = start, 1
    hi = start
    while not predicate(hi):
        lo = hi + 1
        hi = start + step
        step *= 2
        if last is not None and hi > last:
            if lo > last or not predicate(last):
                return None
            hi = last
            break
    while lo < hi:
        mid = (lo + hi) // 2
        if predicate(mid):
            hi = mid
        else:
            lo = mid + 1
    return hi


def select_tile_indices(
    seq: FolnerSequence,
    epsilon: Number,
    n_start: int = 1,
    k_override: Optional[int] = None,
) -> TileFamily:
    """Greedy indices N <= n_1 < ... < n_k, each pair certified by both tests.

    F_{n_{i+1}} must be (F_{n_i}F_{n_i}⁻¹, δ)-invariant and |F_{n_i}| / |F_{n_{i+1}}| < δ.
    Closed-form sequences are searched by galloping; enumerated ones are
    scanned one index at a time.

    Raises:
        PrefixExhaustedError: names the failing condition and the index reached
    """
    k, delta = select_tile_parameters(epsilon, n_start)
    if k_override is not None:
        if k_override < 1:
            raise ConfigurationError(f"k override must be positive, got {k_override}")
        k = k_override
    indices: List[int] = [n_start]
    seq.size(n_start)  # validates N against the cap
    monotone = seq.closed_form
    for i in range(1, k):
        prev = indices[-1]
        prev_size = seq.size(prev)

        failed = {"condition": "", "n": prev}

        def both(
            n: int, prev: int = prev, prev_size: int = prev_size, failed: dict = failed
        ) -> bool:
            if Fraction(prev_size, seq.size(n)) >= delta:
                failed.update(condition="cardinality ratio", n=n)
                return False
            if seq.invariance_ratio(n, prev) >= delta:
                failed.update(condition="invariance", n=n)
                return False
            return True

        nxt = _first_index(both, prev + 1, seq.cap, monotone)
        if nxt is None:
            raise PrefixExhaustedError(
                f"no n_{i + 1} after n_{i}={prev}: {failed['condition']} test fails at "
                f"n={failed['n']} "
                f"(delta={float(delta):.3e}, {len(indices)} of {k} indices found)",
                stage="select_tile_indices",
            )
        indices.append(nxt)
        logger.debug("Tile index certified", i=i + 1, n=nxt)
    logger.info("Tile indices selected", k=k, first=indices[0], last=indices[-1])
    return TileFamily.from_indices(seq, indices, delta=delta)
