"""Run configuration shared by the numeric pipeline and the CLI."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class RunConfig:
    """Knobs for every numeric computation.

    precision          working precision in bits for embeddings and Gram forms
    tolerance_exponent zero tolerance is 2**(-precision/tolerance_exponent)
                       times the largest Gram entry
    enumeration_cap    hard cap on the number of enumerated short vectors
    seed               seed for the deterministic choice of splitting elements
    output_format      "text" or "json" (CLI only)
    escalation_budget  how many times precision may be doubled on ambiguity
    """

    precision: int = 192
    tolerance_exponent: int = 3
    enumeration_cap: int = 10**6
    seed: int = 0
    output_format: str = "text"
    escalation_budget: int = 4

    def __post_init__(self):
        if self.precision < 64:
            raise ValueError("precision must be at least 64 bits")
        if self.enumeration_cap < 1:
            raise ValueError("enumeration cap must be at least 1")
        if self.tolerance_exponent < 2:
            raise ValueError("tolerance exponent must be at least 2")
        if self.output_format not in ("text", "json"):
            raise ValueError("output format must be 'text' or 'json'")


DEFAULT_CONFIG = RunConfig()
