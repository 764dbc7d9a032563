"""Memoization of local rules across tables that share restricted margins."""

from __future__ import annotations

import logging
import threading
from typing import Callable, Dict, Hashable

from .methods import LocalRule

logger = logging.getLogger(__name__)


class RegionCache:
    """
    Thread-safe map from a rule key to its LocalRule. Inserts are idempotent:
    two workers racing on the same key build equal rules and the first one wins.
    """

    def __init__(self):
        self._rules: Dict[Hashable, LocalRule] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self._rules)

    def get_or_build(self, key: Hashable, build: Callable[[], LocalRule]) -> LocalRule:
        with self._lock:
            rule = self._rules.get(key)
            if rule is not None:
                self.hits += 1
                return rule
            self.misses += 1
        rule = build()
        with self._lock:
            return self._rules.setdefault(key, rule)

    def clear(self) -> None:
        with self._lock:
            self._rules.clear()
            self.hits = self.misses = 0
        logger.debug("region cache cleared")
