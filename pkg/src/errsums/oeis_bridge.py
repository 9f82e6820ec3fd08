"""Compare generated integer sequences with OEIS b-files read from local disk.

Nothing here touches the network.  A b-file is plain text with one
``index value`` pair per line; ``#`` starts a comment line.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable

from .apery import apery_pair
from .exp_errsums import exp_root_cf
from .log1p import log1p_seq
from .numkernel import lcm_upto
from .triangles import central_b

__all__ = [
    "BFileError",
    "AlignmentError",
    "BFile",
    "parse_bfile",
    "read_bfile",
    "serialize_bfile",
    "SequenceBinding",
    "CompareReport",
    "compare",
    "BINDINGS",
    "binding",
]


class BFileError(ValueError):
    """Malformed b-file text; the message names the offending line."""


class AlignmentError(ValueError):
    """No offset shift lines up even the first few terms."""


@dataclass(frozen=True)
class BFile:
    entries: tuple[tuple[int, int], ...]
    source_path: str = ""

    @property
    def indices(self) -> list[int]:
        return [i for i, _ in self.entries]

    @property
    def values(self) -> list[int]:
        return [v for _, v in self.entries]


def parse_bfile(text: str, source_path: str = "") -> BFile:
    entries: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileError(f"line {lineno}: expected 'index value', got {raw!r}")
        try:
            idx, val = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileError(f"line {lineno}: non-integer field in {raw!r}") from None
        if entries and idx <= entries[-1][0]:
            raise BFileError(f"line {lineno}: index {idx} is not greater than {entries[-1][0]}")
        entries.append((idx, val))
    return BFile(tuple(entries), source_path)


def read_bfile(path: str | Path) -> BFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="ascii")
    except UnicodeDecodeError as exc:
        raise BFileError(f"{path}: not ASCII text") from exc
    return parse_bfile(text, str(path))


def serialize_bfile(bfile: BFile, header: str | None = None) -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    lines += [f"{i} {v}" for i, v in bfile.entries]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SequenceBinding:
    """An OEIS id tied to an internal generator n -> integer (n counts from 0)."""

    oeis_id: str
    name: str
    generator: Callable[[int], int]
    offset_shift: int | None = None
    enabled: bool = True
    note: str = ""


@dataclass(frozen=True)
class CompareReport:
    oeis_id: str
    matched: int
    compared: int
    first_mismatch: tuple[int, int, int] | None
    offset_used: int

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None and self.compared > 0


def _align(binding: SequenceBinding, bfile: BFile, count: int, shift: int):
    """Compare b-file entry (i, v) with generator(i + shift)."""
    matched = 0
    compared = 0
    for idx, val in bfile.entries[:count]:
        n = idx + shift
        if n < 0:
            return matched, compared, (idx, val, None)
        got = binding.generator(n)
        compared += 1
        if got != val:
            return matched, compared, (idx, val, got)
        matched += 1
    return matched, compared, None


def compare(binding: SequenceBinding, bfile: BFile, count: int = 30) -> CompareReport:
    """Match the first ``count`` b-file terms against the generator.

    With no fixed ``offset_shift`` every shift in -2..2 is tried and the one
    matching the longest prefix wins (ties go to the smallest |shift|).
    """
    if not bfile.entries:
        raise AlignmentError(f"{binding.oeis_id}: empty b-file")
    shifts = [binding.offset_shift] if binding.offset_shift is not None else sorted(range(-2, 3), key=abs)
    best = None
    for s in shifts:
        matched, compared, miss = _align(binding, bfile, count, s)
        if best is None or matched > best[0]:
            best = (matched, compared, miss, s)
    matched, compared, miss, s = best
    if matched < min(3, len(bfile.entries[:count])):
        raise AlignmentError(f"{binding.oeis_id}: no offset in {shifts} aligns the first terms")
    return CompareReport(binding.oeis_id, matched, compared, miss, s)


@lru_cache(maxsize=8)
def _e_quotients(count: int) -> tuple[int, ...]:
    return tuple(exp_root_cf(1, count))


def _e_quotient(n: int) -> int:
    count = 64
    while count <= n:
        count *= 2
    return _e_quotients(count)[n]


def _delannoy(n: int) -> int:
    b = log1p_seq(1, n).B
    if b.denominator != 1:
        raise ArithmeticError(f"log1p denominator at t = 1, n = {n} is not an integer")
    return int(b)


def _lcm_record(n: int) -> int:
    # n-th distinct value of lcm(1..m), m = 1, 2, ...
    seen, m, last = -1, 0, 0
    while seen < n:
        m += 1
        v = lcm_upto(m)
        if v != last:
            seen += 1
            last = v
    return last


BINDINGS: dict[str, SequenceBinding] = {
    b.oeis_id: b
    for b in [
        SequenceBinding("A001850", "central Delannoy numbers: log1p denominators at t = 1", _delannoy),
        SequenceBinding("A003417", "regular continued fraction of e", _e_quotient),
        SequenceBinding("A005258", "Apery numbers for zeta(2)", lambda n: apery_pair("zeta2", n).den),
        SequenceBinding("A005259", "Apery numbers for zeta(3)", lambda n: apery_pair("zeta3", n).den),
        SequenceBinding("A108626", "central diagonal b_{n,n} of the b triangle", central_b),
        SequenceBinding(
            "A051451",
            "distinct values of lcm(1..m)",
            _lcm_record,
            enabled=False,
            note="mapping unconfirmed; enable after checking against a real b-file",
        ),
    ]
}


def binding(oeis_id: str) -> SequenceBinding:
    try:
        return BINDINGS[oeis_id.upper()]
    except KeyError:
        raise KeyError(f"no binding for {oeis_id}; known: {', '.join(BINDINGS)}") from None
