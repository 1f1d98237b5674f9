"""
@file config.py
@description Configuration management for the hedonic-graphs toolkit
@module hedonic_graphs.config
@author hedonic-graphs maintainers
@created 2026-10-17
"""

import os
from dataclasses import dataclass, field
from typing import Optional

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


def _env_optional_int(name: str) -> Optional[int]:
    raw = os.getenv(name, "").strip()
    return int(raw) if raw else None


@dataclass
class EnumerationBudget:
    """
    Limits for every enumeration the toolkit performs.

    Attributes:
        max_partitions: Maximum feasible partitions enumerated (default: 10^6)
        max_subsets: Maximum connected subsets enumerated per call (default: 10^6)
        max_clique_nodes: Largest graph accepted by the brute-force clique oracle
        max_cut_nodes: Largest graph accepted by the brute-force local max-cut oracle

    Example:
        >>> budget = EnumerationBudget(max_partitions=5000)
        >>> partitions = list(enumerate_feasible_partitions(graph, budget))
    """

    max_partitions: int = 10**6
    max_subsets: int = 10**6
    max_clique_nodes: int = 16
    max_cut_nodes: int = 20

    def __post_init__(self) -> None:
        """Validate configuration values."""
        if self.max_partitions <= 0:
            raise ValueError("max_partitions must be positive")
        if self.max_subsets <= 0:
            raise ValueError("max_subsets must be positive")
        if self.max_clique_nodes <= 0:
            raise ValueError("max_clique_nodes must be positive")
        if self.max_cut_nodes <= 0:
            raise ValueError("max_cut_nodes must be positive")


@dataclass
class CacheConfig:
    """
    Configuration for memoization of enumerations and solve results.

    Attributes:
        enabled: Whether caching is enabled (default: True)
        max_size: Maximum number of cached entries per cache (default: 4096)
    """

    enabled: bool = True
    max_size: int = 4096

    def __post_init__(self) -> None:
        """Validate configuration values."""
        if self.max_size <= 0:
            raise ValueError("max_size must be positive")


@dataclass
class SolverConfig:
    """
    Configuration shared by the solvers.

    Attributes:
        debug_verify: Re-verify every solver output for its concept (default: False)
        threads: Worker threads for exhaustive verification (default: 1)
        max_oracle_calls: Optional cap on preference comparisons per solve

    Example:
        >>> solver_config = SolverConfig(debug_verify=True)
        >>> toolkit = HedonicToolkit(HedonicConfig(solver_config=solver_config))
    """

    debug_verify: bool = False
    threads: int = 1
    max_oracle_calls: Optional[int] = None

    def __post_init__(self) -> None:
        """Validate configuration values."""
        if self.threads < 1:
            raise ValueError("threads must be at least 1")
        if self.max_oracle_calls is not None and self.max_oracle_calls <= 0:
            raise ValueError("max_oracle_calls must be positive when set")


@dataclass
class DynamicsConfig:
    """
    Defaults for deviation dynamics.

    Attributes:
        max_steps: Step limit before a run is reported as StepLimit (default: 1000)
        seed: Seed for the random deviation policy; None selects deterministic-first
    """

    max_steps: int = 1000
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        """Validate configuration values."""
        if self.max_steps < 0:
            raise ValueError("max_steps must be non-negative")


@dataclass
class HedonicConfig:
    """
    Main configuration for the hedonic-graphs toolkit.

    Attributes:
        budget: Enumeration limits
        cache_config: Memoization settings
        solver_config: Solver settings
        dynamics_config: Dynamics defaults
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)

    Example:
        >>> config = HedonicConfig(budget=EnumerationBudget(max_subsets=50_000))
        >>> toolkit = HedonicToolkit(config)

        Using environment variables:
        >>> # Set HEDONIC_MAX_SUBSETS in .env file
        >>> config = HedonicConfig.from_env()
    """

    budget: EnumerationBudget = field(default_factory=EnumerationBudget)
    cache_config: CacheConfig = field(default_factory=CacheConfig)
    solver_config: SolverConfig = field(default_factory=SolverConfig)
    dynamics_config: DynamicsConfig = field(default_factory=DynamicsConfig)
    log_level: str = "INFO"

    def __post_init__(self) -> None:
        """Validate configuration values."""
        self.log_level = self.log_level.upper()
        if self.log_level not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of: {', '.join(LOG_LEVELS)}")

    @classmethod
    def from_env(
        cls,
        max_subsets: Optional[int] = None,
        max_partitions: Optional[int] = None,
        threads: Optional[int] = None,
        log_level: Optional[str] = None,
    ) -> "HedonicConfig":
        """
        Create configuration from environment variables.

        Environment Variables:
            - HEDONIC_MAX_PARTITIONS: Partition enumeration budget
            - HEDONIC_MAX_SUBSETS: Connected-subset enumeration cap
            - HEDONIC_MAX_CLIQUE_NODES: Node limit of the clique oracle
            - HEDONIC_MAX_CUT_NODES: Node limit of the local max-cut oracle
            - HEDONIC_CACHE_ENABLED: Whether caching is enabled (true/false)
            - HEDONIC_CACHE_MAX_SIZE: Entries per cache
            - HEDONIC_DEBUG_VERIFY: Re-verify solver outputs (true/false)
            - HEDONIC_THREADS: Worker threads for exhaustive verification
            - HEDONIC_MAX_ORACLE_CALLS: Preference-comparison cap per solve
            - HEDONIC_DYNAMICS_MAX_STEPS: Default dynamics step limit
            - HEDONIC_LOG_LEVEL: Logging level

        Args:
            max_subsets: Optional subset cap (overrides environment variable)
            max_partitions: Optional partition budget (overrides environment variable)
            threads: Optional thread count (overrides environment variable)
            log_level: Optional log level (overrides environment variable)

        Returns:
            HedonicConfig instance initialized from environment

        Raises:
            ValueError: If a value is out of range or not a number

        Example:
            >>> config = HedonicConfig.from_env(max_subsets=10_000)
        """
        budget = EnumerationBudget(
            max_partitions=(
                max_partitions
                if max_partitions is not None
                else int(os.getenv("HEDONIC_MAX_PARTITIONS", str(10**6)))
            ),
            max_subsets=(
                max_subsets
                if max_subsets is not None
                else int(os.getenv("HEDONIC_MAX_SUBSETS", str(10**6)))
            ),
            max_clique_nodes=int(os.getenv("HEDONIC_MAX_CLIQUE_NODES", "16")),
            max_cut_nodes=int(os.getenv("HEDONIC_MAX_CUT_NODES", "20")),
        )

        cache_config = CacheConfig(
            enabled=_env_bool("HEDONIC_CACHE_ENABLED", "true"),
            max_size=int(os.getenv("HEDONIC_CACHE_MAX_SIZE", "4096")),
        )

        solver_config = SolverConfig(
            debug_verify=_env_bool("HEDONIC_DEBUG_VERIFY", "false"),
            threads=threads if threads is not None else int(os.getenv("HEDONIC_THREADS", "1")),
            max_oracle_calls=_env_optional_int("HEDONIC_MAX_ORACLE_CALLS"),
        )

        dynamics_config = DynamicsConfig(
            max_steps=int(os.getenv("HEDONIC_DYNAMICS_MAX_STEPS", "1000")),
        )

        return cls(
            budget=budget,
            cache_config=cache_config,
            solver_config=solver_config,
            dynamics_config=dynamics_config,
            log_level=log_level or os.getenv("HEDONIC_LOG_LEVEL", "INFO"),
        )
