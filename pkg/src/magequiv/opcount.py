"""Elementary-operation counters for the empirical complexity runs."""

from __future__ import annotations

from dataclasses import dataclass, fields


@dataclass
class OpCounter:
    """Named monotone counters; ``total`` is their sum.

    ``ancestor_steps``   parent visits while building ancestor sets
    ``pair_inserts``     pairs added to the output
    ``parent_pairs``     parent pairs examined for unshielded triples
    ``tail_tests``       tail members tested for a size-3 set
    ``triple_candidates`` third vertices examined as a size-3 head
    ``district_visits``  vertex expansions during district traversals
    ``descendant_visits`` vertex expansions during descendant traversals
    ``heads3``           size-3 heads found (not part of ``total``)
    """

    ancestor_steps: int = 0
    pair_inserts: int = 0
    parent_pairs: int = 0
    tail_tests: int = 0
    triple_candidates: int = 0
    district_visits: int = 0
    descendant_visits: int = 0
    heads3: int = 0

    @property
    def total(self) -> int:
        return sum(getattr(self, f.name) for f in fields(self) if f.name != "heads3")

    def __add__(self, other: "OpCounter") -> "OpCounter":
        return OpCounter(**{f.name: getattr(self, f.name) + getattr(other, f.name) for f in fields(self)})

    def as_dict(self) -> dict[str, int]:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["total"] = self.total
        return d
