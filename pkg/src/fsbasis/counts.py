"""Weight/degree multiplicity tables shared by every computation path."""

from __future__ import annotations

import json
from collections import Counter
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

Weight = Tuple[int, ...]
Cell = Tuple[Weight, int]


class WeightedCount:
    """Map ``(weight, degree) -> multiplicity`` with nonnegative entries.

    ``weight`` is a tuple of integers: doubled e-coordinates for B2,
    the h-eigenvalue ``(m,)`` for sl2.  ``degree`` is the nonnegative
    depth below the highest weight vector (the d-eigenvalue is ``-degree``).
    """

    def __init__(self, table: Optional[Dict[Cell, int]] = None):
        self._table: Counter = Counter()
        if table:
            for cell, n in table.items():
                self.add(cell[0], cell[1], n)

    def add(self, weight: Iterable[int], degree: int, n: int = 1) -> None:
        if n < 0:
            raise ValueError("multiplicities are nonnegative")
        if n == 0:
            return
        self._table[(tuple(int(x) for x in weight), int(degree))] += n

    def update(self, other: "WeightedCount") -> None:
        for (w, d), n in other.items():
            self.add(w, d, n)

    def __getitem__(self, cell: Cell) -> int:
        w, d = cell
        return self._table.get((tuple(w), d), 0)

    def __len__(self) -> int:
        return len(self._table)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells())

    def items(self) -> List[Tuple[Cell, int]]:
        return [(c, self._table[c]) for c in self.cells()]

    def cells(self) -> List[Cell]:
        return sorted(self._table, key=lambda c: (c[1], c[0]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedCount):
            return NotImplemented
        return +self._table == +other._table

    def __repr__(self) -> str:
        return f"WeightedCount({dict(self.items())!r})"

    def degrees(self) -> List[int]:
        return sorted({d for _, d in self._table})

    def weights(self, degree: Optional[int] = None) -> List[Weight]:
        return sorted({w for w, d in self._table if degree is None or d == degree})

    def total(self, degree: int) -> int:
        return sum(n for (_, d), n in self._table.items() if d == degree)

    def totals(self, max_degree: int) -> List[int]:
        return [self.total(d) for d in range(max_degree + 1)]

    def restrict(self, max_degree: int) -> "WeightedCount":
        return WeightedCount({c: n for c, n in self._table.items() if c[1] <= max_degree})

    def forget_weights(self) -> "WeightedCount":
        out = WeightedCount()
        for (_, d), n in self._table.items():
            out.add((), d, n)
        return out

    def first_mismatch(self, other: "WeightedCount") -> Optional[Tuple[Cell, int, int]]:
        """First cell (degree-major order) where the two tables differ."""
        cells = sorted(set(self._table) | set(other._table), key=lambda c: (c[1], c[0]))
        for c in cells:
            if self[c] != other[c]:
                return c, self[c], other[c]
        return None

    # JSON schema: [{"weight": [..], "degree": d, "mult": n}, ...]
    def to_records(self) -> List[dict]:
        return [
            {"weight": list(w), "degree": d, "mult": n} for (w, d), n in self.items()
        ]

    @classmethod
    def from_records(cls, records: Iterable[dict]) -> "WeightedCount":
        out = cls()
        for r in records:
            out.add(r["weight"], r["degree"], r["mult"])
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_records(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "WeightedCount":
        return cls.from_records(json.loads(text))


WEIGHTED_COUNT_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {
            "weight": {"type": "array", "items": {"type": "integer"}},
            "degree": {"type": "integer"},
            "mult": {"type": "integer", "minimum": 0},
        },
        "required": ["weight", "degree", "mult"],
        "additionalProperties": False,
    },
}
