"""Configuration for the scope GALOIS_BUDGET."""

from math import factorial
from typing import Dict, Optional, Union

from lcgalois.exceptions import BudgetExceeded

from .abstract import GaloisAbstractConfig, as_bool


class GaloisBudgetConfig(GaloisAbstractConfig):
    """Caps on exhaustive enumerations.

    Every cap is a positive integer. GALOIS_BUDGET_OVERRIDE lifts all of them.
    """

    VALID_KEYS: Dict[str, Union[int, bool, str]] = {
        "OVERRIDE": False,
        # |generators| * n! candidates for enumerate_actions; 2 generators at degree 6.
        "ACTION_CANDIDATES": 2 * factorial(6),
        "MAX_DEGREE": 6,
        "GROUP_ORDER": 24,
        "COVER_DEGREE": 5,
        "DEGREE_CAP": 3,
        "SPECTRUM_DEGREE": 4,
        "EQUIVARIANT_SIZE": 64,
        "SIMPLICES": 4096,
        "IMAGE_ORDER": 720,
    }

    LIMITS = [
        "ACTION_CANDIDATES",
        "MAX_DEGREE",
        "GROUP_ORDER",
        "COVER_DEGREE",
        "DEGREE_CAP",
        "SPECTRUM_DEGREE",
        "EQUIVARIANT_SIZE",
        "SIMPLICES",
        "IMAGE_ORDER",
    ]

    def __init__(self, prefix: str, env: Dict[str, str]) -> None:
        """Initialize the budget configuration."""
        self._overrides: Dict[str, int] = {}
        super().__init__(prefix, env)

    def validate(self) -> None:
        """Validate that every limit is a positive integer."""
        for key in self.LIMITS:
            if self.get_int(key) < 1:
                raise ValueError(
                    f"Invalid value for {self.fq_key(key)}: {self.get(key)}. "
                    "Supported values: positive int"
                )

    @property
    def unlocked(self) -> bool:
        """Check if GALOIS_BUDGET_OVERRIDE lifts the caps."""
        return as_bool(self.get("OVERRIDE"))

    def limit(self, key: str) -> int:
        """Return the effective value of a limit, honouring per-run overrides."""
        key = key.upper()
        if key in self._overrides:
            return self._overrides[key]
        return self.get_int(key)

    def with_limits(self, **limits: int) -> "GaloisBudgetConfig":
        """Return a copy with some limits replaced, e.g. from command line flags."""
        clone = self.__class__.__new__(self.__class__)
        clone._prefix = self._prefix
        clone._config = dict(self._config)
        clone._overrides = dict(self._overrides)
        for key, value in limits.items():
            if value is None:
                continue
            if int(value) < 1:
                raise ValueError(f"Invalid value for {self.fq_key(key)}: {value}.")
            clone._overrides[key.upper()] = int(value)
        return clone

    def allows(self, key: str, requested: int) -> bool:
        """Check if a request fits under a limit."""
        return self.unlocked or requested <= self.limit(key)

    def enforce(self, key: str, requested: int, what: str = "") -> None:
        """Refuse a request that does not fit under a limit.

        :raises BudgetExceeded: naming the budget, the request and the limit.
        """
        if not self.allows(key, requested):
            raise BudgetExceeded(what or key.lower(), requested, self.limit(key))


def resolve_budget(budget: Optional[GaloisBudgetConfig] = None) -> GaloisBudgetConfig:
    """Return the given budget, or the process-wide one from the environment."""
    if budget is not None:
        return budget

    from lcgalois.settings import config  # noqa

    return config.budget
