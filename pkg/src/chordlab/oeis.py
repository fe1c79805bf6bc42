"""Compare computed sequences against local OEIS b-files."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError, UsageError
from .series import catalog_series, coefficients_as_ints


def _a000699(n_max: int) -> list[int]:
    c = coefficients_as_ints(catalog_series("C", n_max))
    # OEIS lists a(0) = 1 although C(x) has no constant term
    return [1] + c[1:]


def _a000698(n_max: int) -> list[int]:
    return coefficients_as_ints(catalog_series("I", n_max))


def _a088221(n_max: int) -> list[int]:
    return coefficients_as_ints(catalog_series("A", n_max))


SEQUENCES = {
    "A000699": _a000699,
    "A000698": _a000698,
    "A088221": _a088221,
}


def read_bfile(path: str | Path) -> list[tuple[int, int]]:
    """Parse ``index value`` lines, skipping blanks and ``#`` comments."""
    path = Path(path)
    if not path.is_file():
        raise UsageError(f"b-file {path} not found")
    entries = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"{path}:{lineno}: expected 'index value', got {raw!r}", raw)
        try:
            entries.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(f"{path}:{lineno}: non-integer field in {raw!r}", raw) from None
    if not entries:
        raise ParseError(f"{path}: b-file has no terms")
    return entries


@dataclass(frozen=True)
class CheckResult:
    sequence: str
    compared: int
    mismatch: tuple[int, int, int] | None = None  # (index, b-file value, computed value)

    @property
    def ok(self) -> bool:
        return self.mismatch is None


def oeis_check(sequence: str, path: str | Path, count: int) -> CheckResult:
    if sequence not in SEQUENCES:
        raise UsageError(f"unsupported sequence {sequence}; known: {', '.join(SEQUENCES)}")
    if count < 1:
        raise UsageError("count must be positive")
    entries = read_bfile(path)
    if len(entries) < count:
        raise ParseError(f"{path}: only {len(entries)} terms, {count} requested")
    entries = entries[:count]
    if any(i < 0 for i, _ in entries):
        raise ParseError(f"{path}: negative index")
    terms = SEQUENCES[sequence](max(i for i, _ in entries))
    for index, value in entries:
        if terms[index] != value:
            return CheckResult(sequence, count, (index, value, terms[index]))
    return CheckResult(sequence, count)
