"""CurveRecord: a minimal model together with its ingested arithmetic invariants."""

from dataclasses import dataclass, field

from .weierstrass import CurveModel, compute_invariants

MAZUR_TORSION = frozenset(list(range(1, 11)) + [12, 16])


@dataclass
class CurveRecord:
    label: str
    model: CurveModel
    conductor: int
    rank: int
    torsion_order: int
    tamagawa: dict  # prime -> positive integer
    sha_order: int | None = None
    modular_degree: int | None = None
    ap_cache: dict = field(default_factory=dict)

    def __post_init__(self):
        assert self.conductor > 0 and self.rank >= 0
        assert self.torsion_order in MAZUR_TORSION, \
            "torsion order %d violates Mazur's theorem" % self.torsion_order
        assert all(self.conductor % p == 0 for p in self.tamagawa), \
            "Tamagawa prime not dividing the conductor"

    def ap(self, p):
        if p not in self.ap_cache:
            from .points import ap as _ap
            self.ap_cache[p] = _ap(self.model, p)
        return self.ap_cache[p]

    @property
    def ainvs(self):
        return self.model.ainvs

    def to_dict(self):
        d = {
            "label": self.label,
            "ainvs": list(self.ainvs),
            "conductor": self.conductor,
            "rank": self.rank,
            "torsion": self.torsion_order,
            "tamagawa": {str(p): c for p, c in sorted(self.tamagawa.items())},
        }
        if self.sha_order is not None:
            d["sha"] = self.sha_order
        if self.modular_degree is not None:
            d["degree"] = self.modular_degree
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(
            label=d["label"],
            model=compute_invariants(*d["ainvs"]),
            conductor=int(d["conductor"]),
            rank=int(d["rank"]),
            torsion_order=int(d["torsion"]),
            tamagawa={int(p): int(c) for p, c in d.get("tamagawa", {}).items()},
            sha_order=int(d["sha"]) if d.get("sha") is not None else None,
            modular_degree=int(d["degree"]) if d.get("degree") is not None else None,
        )
