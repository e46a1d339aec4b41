"""Typed failures shared by all modules.

Every error carries a short machine-readable ``reason`` token; the CLI
prints ``error: <reason>: <detail>`` and exits with status 3.
"""

from __future__ import annotations


class DomainError(ValueError):
    """Input is well-formed but outside the mathematical domain."""

    def __init__(self, reason: str, detail: str = "") -> None:
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


class SingularBlockError(DomainError):
    def __init__(self, detail: str = "") -> None:
        super().__init__("singular-block", detail)


class NonIntegralError(DomainError):
    def __init__(self, detail: str = "") -> None:
        super().__init__("non-integral", detail)


class UncoveredVariantError(DomainError):
    def __init__(self, detail: str = "") -> None:
        super().__init__("uncovered-variant", detail)
