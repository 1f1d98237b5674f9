"""
@file cache.py
@description Memoization for enumerations and solve results
@module hedonic_graphs.cache
@author hedonic-graphs maintainers
@created 2026-10-17
"""

import logging
import threading
from typing import Any, Callable, Hashable, Optional, Tuple, TypeVar

from cachetools import LRUCache

from hedonic_graphs.config import CacheConfig

logger = logging.getLogger(__name__)

T = TypeVar("T")

_MISSING = object()


def _describe(key: Hashable) -> str:
    if isinstance(key, tuple) and key and isinstance(key[0], str):
        return key[0]
    return type(key).__name__


class CacheManager:
    """
    Thread-safe LRU memoization keyed by hashable values.

    Graphs, coalitions and games are immutable and hashable, so they are used
    as keys directly. A cached ``None`` (a solver that proved nonexistence) is
    a hit, not a miss.

    Example:
        >>> cache_manager = CacheManager(CacheConfig(max_size=128))
        >>> cache_manager.get_or_set(("subsets", graph, None), lambda: expensive())
    """

    def __init__(self, config: Optional[CacheConfig] = None) -> None:
        """
        Initialize cache manager.

        Args:
            config: Cache configuration (defaults to ``CacheConfig()``)
        """
        self.config = config or CacheConfig()
        self.enabled = self.config.enabled
        self._cache: LRUCache = LRUCache(maxsize=self.config.max_size)
        self._lock = threading.RLock()
        self.hits = 0
        self.misses = 0
        logger.debug(
            f"Cache manager initialized (enabled={self.enabled}, max_size={self.config.max_size})"
        )

    def __len__(self) -> int:
        with self._lock:
            return len(self._cache)

    @staticmethod
    def generate_key(prefix: str, **params: Hashable) -> Tuple[Hashable, ...]:
        """
        Build a cache key from a prefix and hashable parameters.

        Example:
            >>> CacheManager.generate_key("solve", concept="is", root=None)
            ('solve', ('concept', 'is'), ('root', None))
        """
        return (prefix,) + tuple(sorted(params.items()))

    def lookup(self, key: Hashable) -> Any:
        """
        Retrieve a value, returning the module sentinel on a miss.

        Args:
            key: Cache key

        Returns:
            The cached value, or ``_MISSING`` if absent or caching is disabled
        """
        if not self.enabled:
            return _MISSING
        with self._lock:
            return self._cache.get(key, _MISSING)

    def get(self, key: Hashable, default: Any = None) -> Any:
        """Retrieve a value or ``default`` when not cached."""
        value = self.lookup(key)
        return default if value is _MISSING else value

    def set(self, key: Hashable, value: Any) -> None:
        """Store a value; a no-op when caching is disabled."""
        if not self.enabled:
            return
        with self._lock:
            self._cache[key] = value

    def clear(self) -> None:
        """Drop every cached value and reset the hit/miss counters."""
        with self._lock:
            self._cache.clear()
            self.hits = 0
            self.misses = 0
        logger.debug("Cache cleared")

    def get_or_set(self, key: Hashable, factory_fn: Callable[[], T]) -> T:
        """
        Get value from cache or compute and store it.

        Exceptions raised by ``factory_fn`` propagate and nothing is stored.

        Args:
            key: Cache key
            factory_fn: Zero-argument function computing the value on a miss

        Returns:
            Cached or computed value

        Example:
            >>> subsets = cache_manager.get_or_set(key, lambda: tuple(generate()))
        """
        cached_value = self.lookup(key)
        if cached_value is not _MISSING:
            self.hits += 1
            logger.debug(f"Cache hit for {_describe(key)}")
            return cached_value  # type: ignore[no-any-return]

        self.misses += 1
        logger.debug(f"Cache miss for {_describe(key)}, computing value")
        value = factory_fn()
        self.set(key, value)
        return value
