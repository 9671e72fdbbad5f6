"""Certificates and refutations for polynomial-identity checks."""
from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .ratpoly import RatPoly, as_rational

DEFAULT_GRID = (0, 1, -1, Fraction(1, 2), Fraction(-1, 2), 2)
GRID_BUDGET = 512


class Verdict(enum.Enum):
    CERTIFIED = "Certified"
    REFUTED = "Refuted"


@dataclass(frozen=True)
class Defect:
    label: str
    where: str
    poly: RatPoly

    @property
    def name(self) -> str:
        return f"{self.label} {self.where}".strip()

    @property
    def vanishes(self) -> bool:
        return self.poly.is_zero()


@dataclass(frozen=True)
class Witness:
    defect: str
    point: tuple[tuple[str, Fraction], ...]
    value: Fraction

    def to_dict(self) -> dict:
        return {
            "defect": self.defect,
            "point": {k: str(v) for k, v in self.point},
            "value": str(self.value),
        }


def witness_grid() -> tuple:
    raw = os.environ.get("GCK_WITNESS_GRID")
    if not raw:
        return DEFAULT_GRID
    return tuple(as_rational(tok) for tok in raw.split(",") if tok.strip())


def find_witness(p: RatPoly, grid: Sequence | None = None, budget: int = GRID_BUDGET):
    """A rational point where ``p`` is nonzero, or None for the zero polynomial.

    Tries the small grid first; if the budget runs out, specializes one variable
    at a time to a value in 0..deg, which always succeeds for nonzero ``p``.
    """
    if p.is_zero():
        return None
    grid = witness_grid() if grid is None else grid
    n = p.nvars
    for count, point in enumerate(itertools.product(grid, repeat=n)):
        if count >= budget:
            break
        v = p.eval(point)
        if v:
            return tuple(Fraction(x) for x in point), Fraction(v)
    q = p
    point = []
    for name in p.variables:
        for c in itertools.chain(grid, range(q.degree_in(name) + 1)):
            r = q.subs({name: c})
            if not r.is_zero():
                q = r
                point.append(Fraction(as_rational(c)))
                break
        else:  # pragma: no cover - unreachable for nonzero q
            raise AssertionError("specialization failed")
    return tuple(point), Fraction(p.eval(point))


@dataclass
class CheckReport:
    name: str
    verdict: Verdict
    defects: tuple[Defect, ...] = ()
    witness: Witness | None = None
    notes: tuple[str, ...] = ()
    parts: tuple["CheckReport", ...] = field(default_factory=tuple)

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED

    def __bool__(self) -> bool:
        return self.certified

    @classmethod
    def from_defects(cls, name: str, defects: Iterable[Defect], notes: Iterable[str] = (),
                     grid: Sequence | None = None) -> "CheckReport":
        defects = tuple(defects)
        bad = next((d for d in defects if not d.vanishes), None)
        if bad is None:
            return cls(name, Verdict.CERTIFIED, defects, None, tuple(notes))
        found = find_witness(bad.poly, grid)
        point, value = found
        witness = Witness(bad.name, tuple(zip(bad.poly.variables, point)), value)
        return cls(name, Verdict.REFUTED, defects, witness, tuple(notes))

    @classmethod
    def combine(cls, name: str, parts: Iterable["CheckReport"], notes: Iterable[str] = ()) -> "CheckReport":
        parts = tuple(parts)
        defects = tuple(d for p in parts for d in p.defects)
        failed = next((p for p in parts if not p.certified), None)
        verdict = Verdict.CERTIFIED if failed is None else Verdict.REFUTED
        witness = failed.witness if failed is not None else None
        return cls(name, verdict, defects, witness, tuple(notes), parts)

    @classmethod
    def at_point(cls, name: str, defects: Iterable[Defect], point: Sequence[tuple[str, object]],
                 notes: Iterable[str] = ()) -> "CheckReport":
        """For constant defects computed at a fixed point: the witness is that point."""
        defects = tuple(defects)
        bad = next((d for d in defects if not d.vanishes), None)
        if bad is None:
            return cls(name, Verdict.CERTIFIED, defects, None, tuple(notes))
        pt = tuple((k, Fraction(as_rational(v))) for k, v in point)
        witness = Witness(bad.name, pt, Fraction(bad.poly.constant_term()))
        return cls(name, Verdict.REFUTED, defects, witness, tuple(notes))

    def failures(self) -> list[Defect]:
        return [d for d in self.defects if not d.vanishes]

    def failed_labels(self) -> list[str]:
        seen = []
        for d in self.failures():
            if d.label not in seen:
                seen.append(d.label)
        return seen

    def labels(self) -> list[str]:
        seen = []
        for d in self.defects:
            if d.label not in seen:
                seen.append(d.label)
        return seen

    def label_certified(self, label: str) -> bool:
        return all(d.vanishes for d in self.defects if d.label == label)

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "verdict": self.verdict.value,
            "labels": {lab: self.label_certified(lab) for lab in self.labels()},
            "failed": [
                {"label": d.label, "where": d.where, "defect": str(d.poly)} for d in self.failures()
            ],
            "witness": self.witness.to_dict() if self.witness else None,
            "defect_count": len(self.defects),
            "notes": list(self.notes),
            "parts": [p.to_dict() for p in self.parts],
        }

    def summary(self) -> str:
        lines = [f"{self.name}: {self.verdict.value}"]
        for lab in self.labels():
            lines.append(f"  {lab:<28} {'ok' if self.label_certified(lab) else 'FAILED'}")
        if self.witness:
            pt = ", ".join(f"{k}={v}" for k, v in self.witness.point)
            lines.append(f"  witness: {self.witness.defect} = {self.witness.value} at ({pt})")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)
