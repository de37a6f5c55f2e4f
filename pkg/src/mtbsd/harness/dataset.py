"""Curve-database ingestion: line-delimited records with named fields."""

import json
from dataclasses import dataclass

from ..curves import (
    SPLIT, CurveRecord, all_local_data, compute_invariants, conductor,
)


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class DatasetEntry:
    label: str
    a_invariants: tuple
    conductor: int
    rank: int
    torsion_order: int
    sha_order: int = None
    tamagawa: tuple = None          # tuple of (p, c) pairs
    modular_degree: int = None

    def record(self):
        model = compute_invariants(*self.a_invariants)
        tam = dict(self.tamagawa) if self.tamagawa else \
            {p: ld.tamagawa_cp for p, ld in all_local_data(model).items()}
        return CurveRecord(
            label=self.label, model=model, conductor=self.conductor,
            rank=self.rank, torsion_order=self.torsion_order,
            tamagawa=tam, sha_order=self.sha_order,
            modular_degree=self.modular_degree)


def _entry_from_dict(d, where):
    try:
        ainvs = tuple(int(a) for a in d["ainvs"])
        if len(ainvs) != 5:
            raise ValueError("expected 5 a-invariants, got %d" % len(ainvs))
        tam = d.get("tamagawa")
        if tam is not None:
            tam = tuple(sorted((int(p), int(c)) for p, c in tam.items()))
        return DatasetEntry(
            label=str(d["label"]),
            a_invariants=ainvs,
            conductor=int(d["conductor"]),
            rank=int(d["rank"]),
            torsion_order=int(d["torsion"]),
            sha_order=int(d["sha"]) if d.get("sha") is not None else None,
            tamagawa=tam,
            modular_degree=int(d["degree"]) if d.get("degree") is not None
            else None)
    except (KeyError, TypeError, ValueError) as exc:
        raise DatasetError("%s: %s" % (where, exc)) from exc


def parse_dataset(path):
    """All entries of a line-delimited dataset; labels must be unique."""
    entries = []
    seen = set()
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            where = "%s:%d" % (path, lineno)
            try:
                d = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError("%s: %s" % (where, exc)) from exc
            entry = _entry_from_dict(d, where)
            if entry.label in seen:
                raise DatasetError("%s: duplicate label %r" % (where, entry.label))
            seen.add(entry.label)
            entries.append(entry)
    return entries


def validate_entry(entry):
    """Cross-check the stated conductor against Tate's algorithm."""
    model = compute_invariants(*entry.a_invariants)
    N = conductor(model)
    if N != entry.conductor:
        raise DatasetError("label %s: stated conductor %d != computed %d"
                           % (entry.label, entry.conductor, N))


def split_primes(entry):
    """Primes of split multiplicative reduction, ascending."""
    model = compute_invariants(*entry.a_invariants)
    return [p for p, ld in sorted(all_local_data(model).items())
            if ld.reduction == SPLIT]


def enumerate_pairs(entry):
    """(entry, p) for each split multiplicative prime p, ascending."""
    return [(entry, p) for p in split_primes(entry)]
