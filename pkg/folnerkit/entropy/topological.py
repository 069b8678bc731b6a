"""Topological entropy approximants from admissible pattern counts."""

import itertools
import math
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
import structlog

from folnerkit.core.config import settings
from folnerkit.core.exceptions import BudgetExceededError
from folnerkit.groups.folner import FolnerSequence
from folnerkit.groups.subsets import FiniteSubset
from folnerkit.models.entropy import CurvePoint, EntropyCurve
from folnerkit.shift.patterns import Pattern
from folnerkit.shift.system import ShiftSystem, count_admissible, is_admissible

logger = structlog.get_logger()


def _interval(window: FiniteSubset) -> Optional[Tuple[int, int]]:
    """(start, length) when the window is an integer interval in Z."""
    if window.model.name != "zd:1" or not window:
        return None
    start = window.elements[0][0]
    stop = window.elements[-1][0]
    if stop - start + 1 != len(window):
        return None
    return start, len(window)


def _word_pattern(system: ShiftSystem, word: Tuple[int, ...]) -> Pattern:
    window = FiniteSubset(system.model, [(i,) for i in range(len(word))], check=False)
    return Pattern(window, word)


class TransferMatrix:
    """Counts admissible words over Z through (ℓ-1)-blocks, ℓ the forbidden span."""

    def __init__(self, system: ShiftSystem):
        self.system = system
        spans = []
        for f in system.forbidden:
            coords = [g[0] for g in f.window]
            spans.append(max(coords) - min(coords) + 1)
        self.span = max(spans) if spans else 1
        q = system.alphabet_size
        width = max(self.span - 1, 1)
        if q**width > settings.budget.max_patterns:
            raise BudgetExceededError(f"{q**width} transfer-matrix states (budget)")
        self.width = width
        self.states = list(itertools.product(range(q), repeat=width))
        index = {s: i for i, s in enumerate(self.states)}
        size = len(self.states)
        self.matrix = np.zeros((size, size), dtype=object)
        self.start = np.zeros(size, dtype=object)
        for i, s in enumerate(self.states):
            self.start[i] = 1 if is_admissible(system, _word_pattern(system, s)) else 0
            for a in range(q):
                word = s + (a,)
                if is_admissible(system, _word_pattern(system, word)):
                    self.matrix[i, index[word[1:]]] = 1

    def count(self, length: int) -> int:
        if length <= self.width:
            return sum(
                1
                for word in itertools.product(range(self.system.alphabet_size), repeat=length)
                if is_admissible(self.system, _word_pattern(self.system, word))
            )
        vector = self.start.copy()
        for _ in range(length - self.width):
            vector = vector.dot(self.matrix)
        return int(sum(vector))


def admissible_count(system: ShiftSystem, window: FiniteSubset, cache: Dict[str, object]) -> int:
    """Closed form for full shifts, transfer matrix for interval windows in Z, else enumeration."""
    if not system.forbidden:
        return system.alphabet_size ** len(window)
    if _interval(window) is not None:
        if "transfer" not in cache:
            cache["transfer"] = TransferMatrix(system)
        matrix = cache["transfer"]
        assert isinstance(matrix, TransferMatrix)
        return matrix.count(len(window))
    return count_admissible(system, window)


def topological_entropy_curve(
    system: ShiftSystem, seq: FolnerSequence, n_range: Iterable[int]
) -> EntropyCurve:
    """(1/|F_n|) log #(admissible F_n-patterns)."""
    points: List[CurvePoint] = []
    skipped: Dict[int, str] = {}
    cache: Dict[str, object] = {}
    for n in n_range:
        size = seq.size(n)
        try:
            if system.forbidden:
                count = admissible_count(system, seq.get(n), cache)
                value = math.log(count) / size
            else:
                value = math.log(system.alphabet_size)
        except BudgetExceededError as e:
            logger.warning("Pattern count skipped", n=n, reason=str(e))
            skipped[n] = str(e)
            continue
        points.append(CurvePoint(n=n, size=size, value=value))
    return EntropyCurve.from_points("topological", points, skipped)
