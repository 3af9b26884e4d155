"""Log resolutions of A-D-E hypersurface singularities, as stratum data.

A singularity is identified by its family, index ``n`` and the number
``m >= 3`` of ambient variables; its dimension is ``m - 1``.  The output
of :func:`build_resolution` lists the exceptional divisors with their
discrepancies and every nonempty stratum ``D_J°`` (``J`` nonempty) with
its Hodge-Deligne polynomial in ``w``.

The stratum tables are written for the higher dimensional resolution
(one exceptional divisor per blow-up, singular lines blown up at the
end).  The same tables are used unchanged for ``m = 4`` and ``m = 3``:
for surfaces the quadric conventions ``a_1 = w + 1``, ``b_1 = 1``,
``c_1 = 0`` make every piece of a divisor carrying a singular line
vanish.  Labels follow the usual naming of the intersection diagrams
(``D1``, ``E2``, ``F1``, ``G3``, ...).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .exactalg import ONE, Polynomial, W, geom_sum, monomial
from .quadrics import a, b, c

__all__ = [
    "FAMILIES",
    "SingularitySpec",
    "Divisor",
    "Stratum",
    "StratifiedResolution",
    "Diagnostic",
    "ResolutionError",
    "discrepancy_of",
    "line_blowup_bases",
    "build_resolution",
    "validate_resolution",
    "resolution_from_json",
]

FAMILIES = ("A", "D", "E6", "E7", "E8")
_E_INDEX = {"E6": 6, "E7": 7, "E8": 8}


@dataclass(frozen=True)
class SingularitySpec:
    """One A-D-E singularity: ``family`` in A, D, E6, E7, E8; index ``n``; ``m`` variables."""

    family: str
    n: int
    m: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        for name in ("n", "m"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise ValueError(f"{name} must be an integer, got {v!r}")
        if self.m < 3:
            raise ValueError(f"m must be >= 3 (surfaces and up), got {self.m}")
        if self.family == "A" and self.n < 1:
            raise ValueError(f"A_n needs n >= 1, got {self.n}")
        if self.family == "D" and self.n < 4:
            raise ValueError(f"D_n needs n >= 4, got {self.n}")
        if self.family in _E_INDEX and self.n != _E_INDEX[self.family]:
            raise ValueError(f"{self.family} has index {_E_INDEX[self.family]}, got {self.n}")

    @classmethod
    def of(cls, family: str, n: int | None = None, m: int = 3) -> "SingularitySpec":
        if n is None:
            if family not in _E_INDEX:
                raise ValueError(f"family {family} needs an index n")
            n = _E_INDEX[family]
        return cls(family, n, m)

    @classmethod
    def parse(cls, token: str) -> "SingularitySpec":
        """Parse ``FAMILY:n:m=M`` (``E7:m=4`` is accepted for E families)."""
        match = re.fullmatch(r"\s*(A|D|E6|E7|E8)\s*(?::\s*(\d+))?\s*:\s*m\s*=\s*(\d+)\s*", token)
        if not match:
            raise ValueError(f"bad singularity token {token!r}; expected FAMILY:n:m=M, e.g. D:4:m=4")
        fam, n, m = match.groups()
        return cls.of(fam, int(n) if n is not None else None, int(m))

    @property
    def dim(self) -> int:
        return self.m - 1

    @property
    def k(self) -> int | None:
        """Half-index used by the A and D tables (``None`` for E families)."""
        if self.family == "A":
            return (self.n + 1) // 2
        if self.family == "D":
            return self.n // 2
        return None

    @property
    def name(self) -> str:
        return self.family if self.family in _E_INDEX else f"{self.family}{self.n}"

    def token(self) -> str:
        return f"{self.family}:{self.n}:m={self.m}"

    def __str__(self):
        return f"{self.name} (m={self.m})"


@dataclass(frozen=True)
class Divisor:
    id: int
    label: str
    discrepancy: int


@dataclass(frozen=True)
class Stratum:
    divisor_ids: tuple[int, ...]
    hodge: Polynomial


@dataclass(frozen=True)
class StratifiedResolution:
    divisors: tuple[Divisor, ...]
    strata: tuple[Stratum, ...]
    source: str = field(default="", compare=False)

    def divisor(self, ident: int) -> Divisor:
        for dv in self.divisors:
            if dv.id == ident:
                return dv
        raise KeyError(ident)

    def by_label(self, label: str) -> Divisor:
        label = normalize_label(label)
        for dv in self.divisors:
            if dv.label == label:
                return dv
        raise KeyError(label)

    def labels(self, stratum: Stratum) -> tuple[str, ...]:
        return tuple(self.divisor(i).label for i in stratum.divisor_ids)

    def stratum(self, *labels: str) -> Stratum:
        ids = tuple(sorted(self.by_label(x).id for x in labels))
        for s in self.strata:
            if s.divisor_ids == ids:
                return s
        raise KeyError(labels)

    def max_discrepancy(self) -> int:
        return max((dv.discrepancy for dv in self.divisors), default=0)

    def to_json(self) -> dict:
        return {
            "divisors": [{"label": dv.label, "discrepancy": dv.discrepancy} for dv in self.divisors],
            "strata": [{"divisors": list(self.labels(s)), "hodge": s.hodge.to_json()}
                       for s in self.strata],
        }


# -- labels and discrepancies ----------------------------------------------

_LABEL_RE = re.compile(r"([A-Z])_?\{?(\d+)\}?")


def normalize_label(label: str) -> str:
    """``"E_{2}"``, ``"E_2"`` and ``"E2"`` all become ``"E2"``."""
    match = _LABEL_RE.fullmatch(label.strip())
    if not match:
        raise KeyError(f"malformed divisor label {label!r}")
    return f"{match.group(1)}{int(match.group(2))}"


# Coefficients (in units of m - 3) of point blow-up divisors, read off the
# threefold discrepancy table; ("line", base) marks the blow-up
# of the singular line on divisor ``base``.
_E_RULES: dict[str, dict[str, object]] = {
    "E6": {"D1": 1, "D2": 2, "D3": 4, "D4": 6, "D5": ("line", "D1")},
    "E7": {"C1": 1, "D1": 2, "D2": 4, "E1": 3, "E2": 7, "F1": 6, "F2": 5,
           "G1": ("line", "D1"), "G2": ("line", "D2"), "H1": ("line", "C1")},
    "E8": {"B1": 1, "C1": 2, "D1": 4, "D2": 7, "E1": 6, "E2": 12, "F1": 10, "F2": 8,
           "G1": ("line", "D1"), "G2": ("line", "D2"), "H1": ("line", "C1"),
           "I1": ("line", "B1")},
}


def _rule(spec: SingularitySpec, label: str):
    if spec.family in _E_RULES:
        return _E_RULES[spec.family].get(label)
    letter, i = label[0], int(label[1:])
    k = spec.k
    if spec.family == "A":
        if letter != "D":
            return None
        if 1 <= i <= k:
            return i
        if spec.n % 2 == 0 and i == k + 1:
            return "a_even_last"
        return None
    # D family
    if letter in "DEG" and 1 <= i <= k - 1:
        return {"D": i, "E": 2 * i, "G": ("line", f"D{i}")}[letter]
    if letter == "F" and i in (1, 2):
        return 2 * k if (i == 2 and spec.n % 2) else k
    return None


def _labels(spec: SingularitySpec) -> list[str]:
    if spec.family in _E_RULES:
        return list(_E_RULES[spec.family])
    k = spec.k
    if spec.family == "A":
        top = k + 1 if spec.n % 2 == 0 else k
        return [f"D{i}" for i in range(1, top + 1)]
    out = [f"D{i}" for i in range(1, k)] + [f"E{i}" for i in range(1, k)]
    return out + ["F1", "F2"] + [f"G{i}" for i in range(1, k)]


def discrepancy_of(spec: SingularitySpec, label: str) -> int:
    """Discrepancy coefficient of the divisor ``label`` in the resolution of ``spec``.

    Point blow-up divisors scale the threefold coefficient by ``m - 3``;
    a divisor over the singular line of ``D`` gets
    ``2 * discrepancy(D) + (m - 3)``; the last divisor for even ``A_n`` gets
    ``(n + 1)(m - 3) + 1``.
    """
    lab = normalize_label(label)
    rule = _rule(spec, lab)
    if rule is None:
        raise KeyError(f"{spec.name} has no divisor {label!r}")
    scale = spec.m - 3
    if rule == "a_even_last":
        return (spec.n + 1) * scale + 1
    if isinstance(rule, tuple):
        return 2 * discrepancy_of(spec, rule[1]) + scale
    return rule * scale


def line_blowup_bases(spec: SingularitySpec) -> tuple[str, ...]:
    """Labels of divisors that carry a singular line (blown up later)."""
    return tuple(sorted({r[1] for r in (_rule(spec, x) for x in _labels(spec))
                         if isinstance(r, tuple)}))


# -- stratum tables ----------------------------------------------------------

class _Pieces:
    """The quadric polynomials the stratum tables are written in, for fixed m."""

    def __init__(self, m: int):
        self.a2, self.b2, self.c2 = a(m - 2), b(m - 2), c(m - 2)
        self.b1, self.c1 = b(m - 1), c(m - 1)
        self.c0 = c(m)
        self.geo2 = geom_sum(m - 2)        # 1 + w + ... + w^{m-3}
        self.geo1 = geom_sum(m - 1)        # 1 + w + ... + w^{m-2}
        self.top = monomial(m - 2)         # w^{m-2}


class _Table:
    def __init__(self):
        self.entries: dict[frozenset, tuple[tuple[str, ...], Polynomial]] = {}

    def add(self, labels: Iterable[str], hodge: Polynomial, replace: bool = False):
        labels = tuple(labels)
        key = frozenset(labels)
        if len(key) != len(labels):
            raise AssertionError(f"repeated divisor in stratum {labels}")
        if (key in self.entries) != replace:
            raise AssertionError(f"stratum {labels} {'missing' if replace else 'duplicated'}")
        self.entries[key] = (labels, hodge)

    def drop(self, labels: Iterable[str]):
        del self.entries[frozenset(labels)]


def _a_strata(t: _Table, p: _Pieces, n: int, k: int):
    odd = n % 2 == 1
    last = k if odd else k + 1
    if odd and k == 1:
        # single blow-up: D1 is a smooth quadric in P^{m-1}
        t.add(["D1"], p.c0)
        return
    t.add(["D1"], p.b1 - ONE)
    for i in range(2, last):
        t.add([f"D{i}"], p.b1 - p.c1 - ONE)
    if odd:
        t.add([f"D{k}"], p.c0 - p.c1)
    else:
        t.add([f"D{k + 1}"], p.geo1 - p.c1)
    for i in range(1, last):
        t.add([f"D{i}", f"D{i + 1}"], p.c1)


def _d_strata(t: _Table, p: _Pieces, k: int, odd: bool):
    """Strata of D_{2k} (``odd=False``) or D_{2k+1} (``odd=True``), k >= 2."""
    w = W
    a2, b2, c2, geo2 = p.a2, p.b2, p.c2, p.geo2
    K = k - 1
    fibre = geo2 - c2                      # P^{m-3} fibre minus the quadric
    # divisors
    t.add(["D1"], a2 - (w + 1))
    for i in range(2, k):
        t.add([f"D{i}"], a2 - (w + 1) - b2 + 1)
    t.add(["E1"], p.c0 - b2)
    for i in range(2, k):
        t.add([f"E{i}"], p.c0 - 2 * b2 + c2)
    if odd:
        t.add(["F1"], p.b1 - b2)
        t.add(["F2"], p.c0 - p.c1 - b2 + c2)
    else:
        t.add(["F1"], p.c0 - b2)
        t.add(["F2"], p.c0 - b2)
    for i in range(1, K):
        t.add([f"G{i}"], p.top - 1 - (w - 1) * c2)
    if odd:
        t.add([f"G{K}"], p.top - 1 - (w - 1) * c2)
    else:
        t.add([f"G{K}"], w * geo2 - 2 * geo2 - (w - 2) * c2)
    # double intersections
    for i in range(1, K):
        t.add([f"D{i}", f"D{i + 1}"], b2 - 1)
    t.add(["D1", "E1"], b2 - 1)
    for i in range(2, k):
        t.add([f"D{i}", f"E{i}"], b2 - c2 - 1)
    for i in range(1, K):
        t.add([f"D{i}", f"E{i + 1}"], b2 - c2 - 1)
    t.add([f"D{K}", "F1"], b2 - 1)
    t.add([f"D{K}", "F2"], b2 - c2 - 1 if odd else b2 - 1)
    for i in range(1, K):
        t.add([f"D{i}", f"G{i}"], (w - 1) * c2)
    t.add([f"D{K}", f"G{K}"], (w - 1) * c2 if odd else (w - 2) * c2)
    for i in range(1, k):
        t.add([f"E{i}", f"G{i}"], fibre)
    for i in range(1, K):
        t.add([f"E{i + 1}", f"G{i}"], fibre)
    if odd:
        t.add(["F1", "F2"], p.c1 - c2)
    else:
        t.add(["F1", f"G{K}"], fibre)
    t.add(["F2", f"G{K}"], fibre)
    # triple intersections
    for i in range(1, K):
        t.add([f"D{i}", f"D{i + 1}", f"E{i + 1}"], c2)
    for i in range(1, k):
        t.add([f"D{i}", f"E{i}", f"G{i}"], c2)
    for i in range(1, K):
        t.add([f"D{i}", f"E{i + 1}", f"G{i}"], c2)
    if odd:
        t.add([f"D{K}", "F1", "F2"], c2)
    else:
        t.add([f"D{K}", "F1", f"G{K}"], c2)
    t.add([f"D{K}", "F2", f"G{K}"], c2)


def _e6_strata(t: _Table, p: _Pieces):
    w = W
    a2, b2, c2 = p.a2, p.b2, p.c2
    t.add(["D1"], a2 - w - 1)
    t.add(["D2"], p.b1 - b2)
    t.add(["D3"], p.b1 - b2 - p.c1 + c2)
    t.add(["D4"], p.c0 - b2 - p.c1 + c2)
    t.add(["D5"], w * p.geo2 - w * c2)
    t.add(["D1", "D2"], b2 - 1)
    t.add(["D1", "D3"], b2 - c2 - 1)
    t.add(["D1", "D4"], b2 - c2 - 1)
    t.add(["D1", "D5"], w * c2)
    t.add(["D2", "D3"], p.c1 - c2)
    t.add(["D3", "D4"], p.c1 - c2)
    t.add(["D4", "D5"], p.geo2 - c2)
    for triple in (["D1", "D2", "D3"], ["D1", "D3", "D4"], ["D1", "D4", "D5"]):
        t.add(triple, c2)


def _e78_strata(t: _Table, p: _Pieces, e8: bool):
    """E7 and E8 share the strata of an embedded D6 resolution (same labels)."""
    w = W
    a2, b2, c2 = p.a2, p.b2, p.c2
    _d_strata(t, p, 3, odd=False)
    # strata of the D6 part that meet the first exceptional divisor(s) change
    for labels in (["D1", "D2"], ["D1", "E1"], ["D2", "F1"]):
        t.drop(labels)
    for lab in ("D1", "D2", "E1", "F1"):
        t.drop([lab])
    bcd = b2 - c2 - 1
    t.add(["C1"], a2 - b2 - w)
    t.add(["D1"], a2 - 2 * b2 + c2 - w + 1)
    t.add(["D2"], a2 - 2 * b2 + c2 - w + 1)
    t.add(["E1"], p.c0 - 2 * b2 + c2)
    t.add(["F1"], p.c0 - 2 * b2 + c2)
    t.add(["H1"], w * p.geo2 - w * c2)
    t.add(["C1", "H1"], w * c2)
    for pair in (["C1", "D1"], ["C1", "D2"], ["C1", "F1"], ["D1", "D2"], ["D1", "E1"], ["D2", "F1"]):
        t.add(pair, bcd)
    t.add(["F1", "H1"], p.geo2 - c2)
    for triple in (["C1", "D1", "D2"], ["C1", "D2", "F1"], ["C1", "F1", "H1"]):
        t.add(triple, c2)
    if e8:
        t.add(["B1"], a2 - w - 1)
        t.add(["I1"], w * p.geo2 - w * c2)
        t.add(["B1", "C1"], w * c2)
        t.add(["B1", "I1"], w * c2)
        t.add(["B1", "D1"], bcd)
        t.add(["B1", "E1"], bcd)
        t.add(["E1", "I1"], p.geo2 - c2)
        for triple in (["B1", "C1", "D1"], ["B1", "D1", "E1"], ["B1", "E1", "I1"]):
            t.add(triple, c2)
    else:
        t.add(["C1"], a2 - w - 1, replace=True)
        t.add(["D1"], a2 - b2 - w, replace=True)
        t.add(["E1"], p.c0 - b2, replace=True)
        t.add(["C1", "D1"], b2 - 1, replace=True)
        t.add(["D1", "E1"], b2 - 1, replace=True)


def build_resolution(spec: SingularitySpec) -> StratifiedResolution:
    """Divisors and nonempty strata of the log resolution of ``spec``."""
    labels = _labels(spec)
    divisors = tuple(Divisor(i, lab, discrepancy_of(spec, lab)) for i, lab in enumerate(labels))
    ids = {dv.label: dv.id for dv in divisors}
    p = _Pieces(spec.m)
    t = _Table()
    if spec.family == "A":
        _a_strata(t, p, spec.n, spec.k)
    elif spec.family == "D":
        _d_strata(t, p, spec.k, odd=spec.n % 2 == 1)
    elif spec.family == "E6":
        _e6_strata(t, p)
    else:
        _e78_strata(t, p, e8=spec.family == "E8")
    strata = []
    for labs, hodge in t.entries.values():
        strata.append(Stratum(tuple(sorted(ids[x] for x in labs)), hodge))
    strata.sort(key=lambda s: (len(s.divisor_ids), s.divisor_ids))
    return StratifiedResolution(divisors, tuple(strata), source=str(spec))


# -- validation and ingestion ----------------------------------------------

@dataclass(frozen=True)
class Diagnostic:
    """One invariant violation; ``path`` is a JSON pointer into the resolution."""

    code: str
    message: str
    path: str = ""

    def __str__(self):
        return f"{self.path or '/'}: {self.message} [{self.code}]"


class ResolutionError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("invalid resolution:\n" + "\n".join(f"  {d}" for d in self.diagnostics))


def validate_resolution(res: StratifiedResolution, max_codim: int | None = None) -> list[Diagnostic]:
    """Check the structural invariants of ``res``; an empty list means valid.

    ``max_codim`` bounds the number of divisors meeting in one stratum
    (3 for catalog resolutions, whose diagrams have no quadruple points).
    """
    diags: list[Diagnostic] = []
    seen_ids: dict[int, int] = {}
    seen_labels: dict[str, int] = {}
    for i, dv in enumerate(res.divisors):
        path = f"/divisors/{i}"
        if dv.id in seen_ids:
            diags.append(Diagnostic("duplicate-id", f"divisor id {dv.id} repeats entry {seen_ids[dv.id]}", path))
        seen_ids.setdefault(dv.id, i)
        if dv.label in seen_labels:
            diags.append(Diagnostic("duplicate-label", f"label {dv.label!r} repeats entry {seen_labels[dv.label]}",
                                    path + "/label"))
        seen_labels.setdefault(dv.label, i)
        if not isinstance(dv.discrepancy, int) or isinstance(dv.discrepancy, bool) or dv.discrepancy < 0:
            diags.append(Diagnostic("bad-discrepancy", f"discrepancy must be an integer >= 0, got {dv.discrepancy!r}",
                                    path + "/discrepancy"))
    seen_sets: dict[tuple[int, ...], int] = {}
    for i, s in enumerate(res.strata):
        path = f"/strata/{i}"
        ids = s.divisor_ids
        if not ids:
            diags.append(Diagnostic("empty-stratum", "stratum has no divisors", path + "/divisors"))
        if len(set(ids)) != len(ids):
            diags.append(Diagnostic("repeated-divisor", "stratum lists a divisor twice", path + "/divisors"))
        if list(ids) != sorted(ids):
            diags.append(Diagnostic("unsorted-stratum", "divisor ids must be sorted", path + "/divisors"))
        for j, ident in enumerate(ids):
            if ident not in seen_ids:
                diags.append(Diagnostic("dangling-id", f"stratum refers to unknown divisor {ident}",
                                        f"{path}/divisors/{j}"))
        key = tuple(sorted(set(ids)))
        if key in seen_sets:
            diags.append(Diagnostic("duplicate-stratum", f"same divisor set as stratum {seen_sets[key]}", path))
        seen_sets.setdefault(key, i)
        if max_codim is not None and len(ids) > max_codim:
            diags.append(Diagnostic("codim", f"{len(ids)} divisors meet, at most {max_codim} allowed",
                                    path + "/divisors"))
        if not isinstance(s.hodge, Polynomial):
            diags.append(Diagnostic("bad-hodge", "hodge must be a Polynomial", path + "/hodge"))
    return diags


def resolution_from_json(data, source: str = "") -> StratifiedResolution:
    """Build and validate a resolution from its JSON form.

    Raises :class:`ResolutionError` listing every violation with a JSON
    pointer.
    """
    diags: list[Diagnostic] = []
    if not isinstance(data, dict):
        raise ResolutionError([Diagnostic("schema", "top level must be an object", "")])
    for key in ("divisors", "strata"):
        if not isinstance(data.get(key), list):
            diags.append(Diagnostic("schema", f"{key!r} must be an array", f"/{key}"))
    extra = set(data) - {"divisors", "strata"}
    for key in sorted(extra):
        diags.append(Diagnostic("schema", f"unexpected key {key!r}", f"/{key}"))
    if diags:
        raise ResolutionError(diags)

    divisors = []
    ids: dict[str, int] = {}
    for i, entry in enumerate(data["divisors"]):
        path = f"/divisors/{i}"
        if not isinstance(entry, dict):
            diags.append(Diagnostic("schema", "divisor must be an object", path))
            continue
        label, disc = entry.get("label"), entry.get("discrepancy")
        if not isinstance(label, str) or not label:
            diags.append(Diagnostic("schema", "label must be a nonempty string", path + "/label"))
            continue
        if isinstance(disc, bool) or not isinstance(disc, int):
            diags.append(Diagnostic("schema", f"discrepancy must be an integer, got {disc!r}", path + "/discrepancy"))
            continue
        if set(entry) - {"label", "discrepancy"}:
            diags.append(Diagnostic("schema", "unexpected keys in divisor", path))
        ident = len(divisors)
        if label in ids:
            diags.append(Diagnostic("duplicate-label", f"label {label!r} already used", path + "/label"))
            continue
        ids[label] = ident
        divisors.append(Divisor(ident, label, disc))

    strata = []
    for i, entry in enumerate(data["strata"]):
        path = f"/strata/{i}"
        if not isinstance(entry, dict):
            diags.append(Diagnostic("schema", "stratum must be an object", path))
            continue
        labs, hodge = entry.get("divisors"), entry.get("hodge")
        if not isinstance(labs, list):
            diags.append(Diagnostic("schema", "divisors must be an array of labels", path + "/divisors"))
            continue
        members = []
        for j, lab in enumerate(labs):
            if lab not in ids:
                diags.append(Diagnostic("dangling-label", f"unknown divisor label {lab!r}", f"{path}/divisors/{j}"))
            else:
                members.append(ids[lab])
        try:
            poly = Polynomial.from_json(hodge)
        except ValueError as exc:
            diags.append(Diagnostic("schema", str(exc), path + "/hodge"))
            continue
        if len(members) == len(labs):
            if len(set(members)) != len(members):
                diags.append(Diagnostic("repeated-divisor", "stratum lists a divisor twice", path + "/divisors"))
                continue
            strata.append((i, Stratum(tuple(sorted(members)), poly)))

    res = StratifiedResolution(tuple(divisors), tuple(s for _, s in strata), source=source)
    # re-anchor structural diagnostics to the original array positions
    pos = [i for i, _ in strata]
    for dg in validate_resolution(res):
        path = dg.path
        if path.startswith("/strata/"):
            rest = path[len("/strata/"):].split("/", 1)
            path = f"/strata/{pos[int(rest[0])]}" + (f"/{rest[1]}" if len(rest) > 1 else "")
        diags.append(Diagnostic(dg.code, dg.message, path))
    if diags:
        raise ResolutionError(diags)
    return res
