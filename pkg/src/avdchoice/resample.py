"""Moser-Tardos style resampling with a deterministic FIFO schedule."""

from __future__ import annotations

from collections import deque
from collections.abc import Callable, Hashable, Iterable

from .errors import ResampleBudgetExhausted


def resample_until_clear(
    events: Iterable[Hashable],
    violated: Callable[[Hashable], bool],
    resample: Callable[[Hashable], Iterable[Hashable]],
    max_resample: int,
    what: str = "events",
) -> int:
    """Redraw the variables of violated events until none is violated.

    ``resample(ev)`` redraws the independent choices ``ev`` depends on and
    returns every event whose outcome may have changed. Each event is
    re-checked after any redraw touching it, so an empty queue means no
    event is violated. Returns the number of resamplings performed.
    """
    queue = deque(events)
    queued = set(queue)
    count = 0
    while queue:
        ev = queue.popleft()
        queued.discard(ev)
        if not violated(ev):
            continue
        if count >= max_resample:
            raise ResampleBudgetExhausted(
                f"{what}: still violated after {count} resamplings (first pending: {ev!r})", count)
        count += 1
        for other in resample(ev):
            if other not in queued:
                queued.add(other)
                queue.append(other)
        if ev not in queued:
            queued.add(ev)
            queue.append(ev)
    return count
