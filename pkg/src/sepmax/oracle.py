"""Value oracles: memoized, monotone, submodular set-function evaluators.

Subsets are plain ``int`` bitmasks over ground-set indices; bit ``i`` set
means element ``i`` is a member. Every solver in sepmax sees the objective
only through :class:`ValueOracle`.
"""

from __future__ import annotations

import logging
import math
import threading
from collections.abc import Callable, Iterable, Sequence

from sepmax.config import CACHE_SIZE_LIMIT, VALUE_ABS_TOL, VALUE_REL_TOL
from sepmax.exceptions import InvalidParamsError, InvalidSubsetError, OracleValueError
from sepmax.models import GroundSet

logger = logging.getLogger(__name__)

Subset = int
SetFunction = Callable[[Subset], float]


def subset_of(indices: Iterable[int]) -> Subset:
    """Build a bitmask from element indices."""
    mask = 0
    for i in indices:
        if i < 0:
            raise InvalidSubsetError(f"Negative element index: {i}")
        mask |= 1 << i
    return mask


def members(mask: Subset) -> list[int]:
    """Return the element indices of *mask* in ascending order."""
    out: list[int] = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def cardinality(mask: Subset) -> int:
    return mask.bit_count()


def values_close(a: float, b: float) -> bool:
    """Equality of oracle values up to floating-point noise."""
    return math.isclose(a, b, rel_tol=VALUE_REL_TOL, abs_tol=VALUE_ABS_TOL)


class ValueOracle:
    """Deterministic evaluator of a non-negative set function v: 2^X -> R.

    Results are memoized per distinct subset while the ground set has at most
    ``CACHE_SIZE_LIMIT`` elements. ``evaluations`` counts calls into the
    underlying function (cache misses). The cache and counter are guarded by
    a lock so the oracle may be shared between threads.
    """

    def __init__(
        self,
        ground: GroundSet,
        fn: SetFunction,
        *,
        cache: bool | None = None,
        name: str = "oracle",
    ) -> None:
        self.ground = ground
        self.name = name
        self._fn = fn
        self._cache_enabled = ground.size <= CACHE_SIZE_LIMIT if cache is None else cache
        self._cache: dict[Subset, float] = {}
        self._evaluations = 0
        self._lock = threading.Lock()
        self._singletons: list[float] | None = None

    @classmethod
    def from_function(
        cls,
        size: int,
        fn: SetFunction,
        *,
        labels: Sequence[str] | None = None,
        cache: bool | None = None,
        name: str = "function",
    ) -> ValueOracle:
        """Wrap an arbitrary callable over bitmasks of a ``size``-element ground set."""
        ground = GroundSet(size=size, labels=tuple(labels) if labels is not None else None)
        return cls(ground, fn, cache=cache, name=name)

    @classmethod
    def combine(
        cls,
        oracles: Sequence[ValueOracle],
        coefficients: Sequence[float],
    ) -> ValueOracle:
        """Return the oracle for sum_i coefficients[i] * oracles[i].

        All oracles must share one ground-set size and coefficients must be
        non-negative, so the combination stays non-negative and monotone.
        """
        if not oracles or len(oracles) != len(coefficients):
            raise InvalidParamsError("combine needs one coefficient per oracle")
        size = oracles[0].ground.size
        if any(o.ground.size != size for o in oracles):
            raise InvalidParamsError("combined oracles must share a ground set size")
        if any(c < 0 for c in coefficients):
            raise InvalidParamsError("combination coefficients must be non-negative")
        parts = list(zip(coefficients, oracles, strict=True))

        def _fn(mask: Subset) -> float:
            return sum(c * o.evaluate(mask) for c, o in parts)

        return cls(oracles[0].ground, _fn, name="combination")

    @property
    def size(self) -> int:
        return self.ground.size

    @property
    def evaluations(self) -> int:
        return self._evaluations

    @property
    def cache_enabled(self) -> bool:
        return self._cache_enabled

    def _check(self, mask: Subset) -> None:
        if mask < 0 or mask >> self.ground.size:
            raise InvalidSubsetError(
                f"Subset {mask:#x} references indices outside 0..{self.ground.size - 1}"
            )

    def evaluate(self, mask: Subset) -> float:
        """Return v(mask), memoized when the cache is enabled."""
        self._check(mask)
        if self._cache_enabled:
            with self._lock:
                cached = self._cache.get(mask)
            if cached is not None:
                return cached

        value = float(self._fn(mask))
        if not math.isfinite(value) or value < -VALUE_ABS_TOL:
            raise OracleValueError(f"{self.name} returned {value!r} for subset {members(mask)}")
        if value <= 0.0:
            # Round noise below zero (and -0.0) to an exact zero.
            value = 0.0

        with self._lock:
            if self._cache_enabled:
                # Another thread may have filled the slot; keep the first value.
                if mask in self._cache:
                    return self._cache[mask]
                self._cache[mask] = value
            self._evaluations += 1
        return value

    def marginal(self, mask: Subset, x: int) -> float:
        """Return v(mask + x) - v(mask)."""
        if x < 0 or x >= self.ground.size:
            raise InvalidSubsetError(f"Element {x} outside 0..{self.ground.size - 1}")
        return self.evaluate(mask | (1 << x)) - self.evaluate(mask)

    def singleton_values(self) -> list[float]:
        """Return [v({x}) for x in X]."""
        if self._singletons is None:
            self._singletons = [self.evaluate(1 << x) for x in range(self.ground.size)]
        return list(self._singletons)

    def singleton_sum(self) -> float:
        """Return sum over x in X of v({x})."""
        return math.fsum(self.singleton_values())

    def full_value(self) -> float:
        return self.evaluate(self.ground.full_mask)

    def empty_value(self) -> float:
        return self.evaluate(0)

    def clear_cache(self) -> None:
        with self._lock:
            self._cache.clear()
        self._singletons = None

    def __repr__(self) -> str:
        return f"ValueOracle(name={self.name!r}, size={self.ground.size})"
