"""Capacity limits shared by every algorithm that can blow up."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    degree_cap: int = 100_000
    order_cap: int = 2_000_000
    effort_cap: int = 100_000
    element_cap: int = 20_000

    def with_(self, **changes) -> "Caps":
        return replace(self, **changes)


DEFAULT_CAPS = Caps()
