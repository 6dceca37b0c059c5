"""Comparison records shared by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import mpmath

from .exact import ExactScalar


@dataclass(frozen=True)
class DualityReport:
    """Left/right comparison with deviations and the convention in force.

    For exact operands ``equal`` is the verdict and both deviations are
    ``None``.  For numeric operands ``rel_dev`` is
    ``|lhs - rhs| / max(|lhs|, |rhs|)`` (zero when both vanish) and the
    verdict compares ``rel_dev`` (or ``abs_dev`` when ``judge="abs"``) with
    ``tolerance``.
    """

    lhs: Any
    rhs: Any
    abs_dev: Any
    rel_dev: Any
    convention_tag: str
    tolerance: Optional[float] = None
    judge: str = "rel"
    equal: Optional[bool] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.equal is not None

    @property
    def passed(self) -> bool:
        if self.equal is not None:
            return self.equal
        if self.tolerance is None:
            raise ValueError("numeric report carries no tolerance")
        dev = self.abs_dev if self.judge == "abs" else self.rel_dev
        return bool(dev <= self.tolerance)

    @classmethod
    def compare_exact(cls, lhs, rhs, convention_tag: str, **details) -> "DualityReport":
        lhs, rhs = ExactScalar.coerce(lhs), ExactScalar.coerce(rhs)
        return cls(
            lhs=lhs,
            rhs=rhs,
            abs_dev=None,
            rel_dev=None,
            convention_tag=convention_tag,
            equal=lhs == rhs,
            details=details,
        )

    @classmethod
    def compare_numeric(
        cls,
        lhs,
        rhs,
        convention_tag: str,
        tolerance: Optional[float] = None,
        judge: str = "rel",
        **details,
    ) -> "DualityReport":
        if judge not in ("rel", "abs"):
            raise ValueError(f"judge must be 'rel' or 'abs', got {judge!r}")
        abs_dev = abs(lhs - rhs)
        scale = max(abs(lhs), abs(rhs))
        rel_dev = abs_dev / scale if scale else mpmath.mpf(0)
        return cls(
            lhs=lhs,
            rhs=rhs,
            abs_dev=abs_dev,
            rel_dev=rel_dev,
            convention_tag=convention_tag,
            tolerance=tolerance,
            judge=judge,
            details=details,
        )
