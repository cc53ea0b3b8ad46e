"""Error syndromes against a stabilizer group's generator list.

Bit i of a syndrome is 1 when the error anticommutes with generator i,
with generators in the group's stored order (for lattice groups, the
vertex linearization). Rendered strings put generator 0 leftmost.
Syndromes are blind to error phases.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from .errors import DimensionMismatch, InvalidInput, ResourceCapExceeded
from .pauli import PauliString, from_sites
from .stabilizer import StabilizerGroup
from .uniformity import coset_min_weight, min_weight_bruteforce

__all__ = [
    "syndrome",
    "syndrome_string",
    "parse_syndrome",
    "SyndromeTable",
    "build_table",
    "IdentifyResult",
    "pure_code_check",
]

TABLE_ERROR_CAP = 2_000_000


def syndrome(group: StabilizerGroup, error: PauliString) -> int:
    """Anticommutation pattern as an integer; bit i <-> generator i."""
    if error.n != group.n:
        raise DimensionMismatch("error width disagrees with group")
    out = 0
    for i, g in enumerate(group.generators):
        if ((error.x & g.z).bit_count() + (error.z & g.x).bit_count()) & 1:
            out |= 1 << i
    return out


def syndrome_string(bits: int, q: int) -> str:
    return "".join("1" if (bits >> i) & 1 else "0" for i in range(q))


def parse_syndrome(text: str) -> int:
    s = text.strip()
    if not s or any(c not in "01" for c in s):
        raise InvalidInput(f"syndrome must be a 0/1 string, got {text!r}")
    out = 0
    for i, c in enumerate(s):
        if c == "1":
            out |= 1 << i
    return out


@dataclass
class IdentifyResult:
    kind: str                 # "no-error" | "identified" | "ambiguous" | "unknown"
    errors: list

    def describe(self) -> str:
        if self.kind == "no-error":
            return "no error"
        if self.kind == "unknown":
            return "no error of tabulated weight matches"
        names = ", ".join(_error_name(e) for e in self.errors)
        if self.kind == "identified":
            return names
        return f"ambiguous: {names}"


def _error_name(e: PauliString) -> str:
    sites = sorted(e.support())
    letters = []
    for q in sites:
        xb = (e.x >> q) & 1
        zb = (e.z >> q) & 1
        letters.append({(1, 0): "X", (0, 1): "Z", (1, 1): "Y"}[(xb, zb)] + str(q + 1))
    return " ".join(letters)  # 1-based site labels for display


@dataclass
class SyndromeTable:
    """All errors of weight <= t, grouped by syndrome."""

    group: StabilizerGroup
    t: int
    entries: dict                    # int syndrome -> list[PauliString]
    pure: bool

    @property
    def q(self) -> int:
        return self.group.num_generators

    def identify(self, bits: int) -> IdentifyResult:
        """Classify a measured syndrome.

        Phases are ignored throughout: errors differing by a sign give
        identical syndromes, so candidates are reported sign-free.
        """
        if bits == 0:
            return IdentifyResult("no-error", [])
        hits = self.entries.get(bits)
        if not hits:
            return IdentifyResult("unknown", [])
        if len(hits) == 1:
            return IdentifyResult("identified", list(hits))
        return IdentifyResult("ambiguous", list(hits))

    def to_json_obj(self) -> dict:
        return {
            "t": self.t,
            "generator_order": [g.to_string() for g in self.group.generators],
            "pure": self.pure,
            "syndromes": {
                syndrome_string(bits, self.q): sorted(e.to_string() for e in errs)
                for bits, errs in sorted(self.entries.items())
            },
        }


def _weight_stratum(n: int, w: int):
    for sites in combinations(range(n), w):
        for letters in product("XYZ", repeat=w):
            x_sites = [s for s, c in zip(sites, letters) if c in "XY"]
            z_sites = [s for s, c in zip(sites, letters) if c in "ZY"]
            yield from_sites(n, x_sites=x_sites, z_sites=z_sites)


def build_table(group: StabilizerGroup, t: int, *, qubit: int | None = None,
                error_cap: int = TABLE_ERROR_CAP) -> SyndromeTable:
    """Tabulate syndromes of every error of weight 1..t.

    The table is pure when the zero syndrome matches no tabulated error
    and every other syndrome matches exactly one. `qubit` restricts the
    error model to X/Y/Z on that one qubit (t is then forced to 1).
    """
    n = group.n
    if t < 0:
        raise InvalidInput("t must be >= 0")
    if t > n:
        raise InvalidInput("t exceeds qubit count")
    if qubit is not None:
        if not 0 <= qubit < n:
            raise InvalidInput(f"qubit {qubit} out of range")
        strata = [
            (
                from_sites(n, x_sites=[qubit] if c in "XY" else [],
                           z_sites=[qubit] if c in "ZY" else [])
                for c in "XYZ"
            )
        ]
        t = 1
    else:
        total = sum(comb(n, w) * 3 ** w for w in range(1, t + 1))
        if total > error_cap:
            raise ResourceCapExceeded(f"{total} errors exceed cap {error_cap}")
        strata = [_weight_stratum(n, w) for w in range(1, t + 1)]
    entries: dict = {}
    pure = True
    for stratum in strata:
        for err in stratum:
            bits = syndrome(group, err)
            entries.setdefault(bits, []).append(err)
            if bits == 0:
                pure = False
    if any(len(v) > 1 for k, v in entries.items() if k != 0):
        pure = False
    return SyndromeTable(group=group, t=t, entries=entries, pure=pure)


def pure_code_check(group: StabilizerGroup, logicals, m: int, *,
                    threads: int | None = None) -> bool:
    """True when weight-<=m errors act trivially nowhere.

    Requires minimum group weight > m and, for every nonempty product
    of the given logical representatives, a coset minimum weight > m.
    With no logicals this is exactly the m-uniformity condition.
    """
    logicals = list(logicals)
    for l in logicals:
        if l.n != group.n:
            raise DimensionMismatch("logical width disagrees with group")
    report = min_weight_bruteforce(group, early_stop=m, threads=threads)
    if report.min_support <= m:
        return False
    k = len(logicals)
    for sel in range(1, 1 << k):
        prod = None
        for i in range(k):
            if (sel >> i) & 1:
                prod = logicals[i] if prod is None else prod * logicals[i]
        rep = coset_min_weight(group, prod, early_stop=m, threads=threads)
        if rep.min_support <= m:
            return False
    return True
