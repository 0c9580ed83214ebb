"""Probabilities and claim thresholds driving the four-stage construction.

``paper`` mode derives every value from the natural-log formulas and is only
feasible for astronomically large maximum degree. ``desk`` mode exposes the
same thresholds as plain integers with defaults that work at moderate scale.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields, replace

from .errors import InfeasibleThresholds, InvalidInput

DEFAULT_MAX_RESAMPLE = 1_000_000
DESK_EXPECTED_UNCOLOURED = 2.0


def paper_thresholds(delta: int, c_prime: float = 1.0) -> dict[str, float | int]:
    """Exact formula layer, ``L = ln(delta)``."""
    L = math.log(delta)
    return {
        "p1": L ** 4 / math.sqrt(delta),
        "p2": L ** 2 / delta,
        "t_reserve": math.ceil(L ** 8 / 2),
        "t_leftover": math.ceil(delta + c_prime * math.sqrt(delta) * L ** 4),
        "u_lo": math.ceil(L ** 2 / 8),
        "u_hi": math.floor(3 * L ** 2 / 2),
        "t_diff2": math.ceil(L ** 2 / 16),
        "t_u3": math.floor(L ** 2 / 128),
        "t_diff3": math.ceil(L ** 2 / 32),
        "t_final": math.ceil(L ** 2 / 64),
    }


def paper_list_length(delta: int, c0: float) -> int:
    """``delta + floor(c0 * sqrt(delta) * ln(delta)^4)``."""
    return delta + math.floor(c0 * math.sqrt(delta) * math.log(delta) ** 4)


@dataclass(frozen=True)
class ThresholdProfile:
    p1: float
    p2: float
    t_reserve: int
    t_leftover: int
    u_lo: int
    u_hi: int
    t_diff2: int
    t_u3: int
    t_diff3: int
    t_final: int
    max_resample: int = DEFAULT_MAX_RESAMPLE
    mode: str = "desk"

    @classmethod
    def paper(cls, delta: int, c_prime: float = 1.0,
              max_resample: int = DEFAULT_MAX_RESAMPLE) -> ThresholdProfile:
        """Formula-derived profile. ``p1`` is capped at 1 (the formula exceeds 1 below ~1e15)."""
        if delta < 2:
            raise InvalidInput("paper mode needs delta >= 2")
        t = paper_thresholds(delta, c_prime)
        t["p1"] = min(1.0, t["p1"])
        t["p2"] = min(1.0, t["p2"])
        prof = cls(**t, max_resample=max_resample, mode="paper")
        prof.validate()
        return prof

    @classmethod
    def desk(cls, delta: int, **overrides) -> ThresholdProfile:
        """Desk-scale defaults; ``overrides`` replace individual fields.

        ``p2`` keeps about ``DESK_EXPECTED_UNCOLOURED`` uncoloured edges per
        maximum-degree vertex, so the naive colouring has few clashes.
        """
        L = math.log(max(delta, 2))
        p1 = min(0.3, L ** 4 / math.sqrt(max(delta, 2)))
        p2 = min(0.3, L ** 2 / max(delta, 2), DESK_EXPECTED_UNCOLOURED / max(delta, 1))
        base = dict(
            p1=p1, p2=p2, t_reserve=2, t_leftover=-(-delta // 2),
            u_lo=1, u_hi=6, t_diff2=4, t_u3=1, t_diff3=4, t_final=2,
            max_resample=DEFAULT_MAX_RESAMPLE, mode="desk",
        )
        base.update(overrides)
        prof = cls(**base)
        prof.validate()
        return prof

    def validate(self) -> None:
        if not (0.0 <= self.p1 <= 1.0 and 0.0 <= self.p2 <= 1.0):
            raise InvalidInput(f"probabilities must lie in [0, 1]: p1={self.p1}, p2={self.p2}")
        ints = [f.name for f in fields(self) if f.name not in ("p1", "p2", "mode")]
        for name in ints:
            if getattr(self, name) < 0:
                raise InvalidInput(f"{name} must be non-negative")
        if self.mode not in ("paper", "desk"):
            raise InvalidInput(f"unknown profile mode {self.mode!r}")
        if self.u_lo > self.u_hi:
            raise InfeasibleThresholds(f"u_lo={self.u_lo} exceeds u_hi={self.u_hi}")
        if self.t_diff3 > self.t_diff2:
            raise InvalidInput("t_diff3 must not exceed t_diff2")
        if 2 * self.t_u3 > self.t_diff3:
            raise InvalidInput("2 * t_u3 must not exceed t_diff3")
        if self.t_final > self.t_diff3 - 2 * self.t_u3:
            raise InvalidInput("t_final must not exceed t_diff3 - 2 * t_u3")

    def with_margin(self, margin: int) -> ThresholdProfile:
        """Raise the final margin to ``margin``, lifting the stage thresholds to keep it attainable."""
        if self.t_final >= margin:
            return self
        t_diff3 = max(self.t_diff3, margin + 2 * self.t_u3)
        return replace(self, t_final=margin, t_diff3=t_diff3, t_diff2=max(self.t_diff2, t_diff3))

    def to_dict(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> ThresholdProfile:
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise InvalidInput(f"unknown profile fields: {sorted(unknown)}")
        missing = names - set(d) - {"max_resample", "mode"}
        if missing:
            raise InvalidInput(f"missing profile fields: {sorted(missing)}")
        prof = cls(**d)
        prof.validate()
        return prof


def resolve_profile(prof: ThresholdProfile | str | None, delta: int) -> ThresholdProfile:
    """Turn ``None`` / ``"desk"`` / ``"paper"`` / a profile into a concrete profile.

    A profile in paper mode is re-derived from ``delta``, keeping only its
    ``max_resample``.
    """
    if prof is None or prof == "desk":
        return ThresholdProfile.desk(delta)
    if prof == "paper":
        return ThresholdProfile.paper(delta)
    if isinstance(prof, str):
        raise InvalidInput(f"unknown profile {prof!r}")
    if prof.mode == "paper":
        return ThresholdProfile.paper(delta, max_resample=prof.max_resample)
    prof.validate()
    return prof
