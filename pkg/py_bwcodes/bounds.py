"""Reference tables, the patching lower bound and code patching."""

import math
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .corpus import DATA_DIR, Code, Provenance, code_from_clique, verify_code
from .exact import SearchBudget, max_clique_exact
from .exceptions import CapacityError, ParseError, UsageError, ValidationError
from .graph import build_graph
from .logger import get_logger
from .words import CodeParams, Word, WeightMode, word_count

logger = get_logger()

REFERENCE_TABLE_PATH = DATA_DIR / "reference_tables.csv"

TableKey = Tuple[int, int, int, WeightMode]


class Status(str, Enum):
    OPTIMAL = "optimal"
    LOWER_BOUND = "lower_bound"


@dataclass(frozen=True)
class TableEntry:
    value: int
    status: Status
    source: str

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


class ReferenceTable(Mapping):
    """Immutable mapping (n, d, w, mode) -> TableEntry."""

    def __init__(self, entries: Optional[Dict[TableKey, TableEntry]] = None):
        self._entries: Dict[TableKey, TableEntry] = dict(entries or {})

    def __getitem__(self, key: TableKey) -> TableEntry:
        n, d, w, mode = key
        return self._entries[(n, d, w, WeightMode(mode))]

    def __iter__(self) -> Iterator[TableKey]:
        return iter(sorted(self._entries, key=lambda k: (k[1], k[0], k[2], k[3].value)))

    def __len__(self) -> int:
        return len(self._entries)

    def lookup(self, n: int, d: int, w: int, mode: WeightMode) -> Optional[TableEntry]:
        return self._entries.get((n, d, w, WeightMode(mode)))

    def distances(self) -> List[int]:
        return sorted({d for _, d, _, _ in self._entries})

    def rows(self, d: int) -> List[Tuple[int, int]]:
        """(n, w) pairs of one distance block, in table order."""
        return sorted({(n, w) for n, dd, w, _ in self._entries if dd == d})

    def violations(self) -> List[Tuple[str, TableKey]]:
        """Invariant violations as (message, key) pairs."""
        problems = []
        for (n, d, w, mode), entry in self._entries.items():
            if mode is not WeightMode.BOUNDED:
                continue
            constant = self.lookup(n, d, w, WeightMode.CONSTANT)
            if constant is not None and entry.value < constant.value:
                problems.append(
                    (
                        f"bounded A({n},{d},{w}) = {entry.value} is below constant "
                        f"A({n},{d},{w}) = {constant.value}",
                        (n, d, w, mode),
                    )
                )

        blocks: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
        for (n, d, w, mode), entry in self._entries.items():
            if mode is WeightMode.BOUNDED:
                blocks.setdefault((n, d), []).append((w, entry.value))
        for (n, d), series in sorted(blocks.items()):
            series.sort()
            for (w0, v0), (w1, v1) in zip(series, series[1:]):
                if v1 < v0:
                    problems.append(
                        (
                            f"bounded A({n},{d},{w1}) = {v1} decreases from "
                            f"A({n},{d},{w0}) = {v0}",
                            (n, d, w1, WeightMode.BOUNDED),
                        )
                    )
        return problems


def load_reference_table(source: str, source_name: Optional[str] = None) -> ReferenceTable:
    """
    Parse "n,d,w,mode,value,status,source" rows; '#' lines are comments.

    Raises:
        ParseError: Malformed or repeated row, with its line number
        ValidationError: The rows break a table invariant
    """
    entries: Dict[TableKey, TableEntry] = {}
    for line_no, raw in enumerate(source.splitlines(), start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        fields = [f.strip() for f in text.split(",")]
        if len(fields) != 7:
            raise ParseError(f"expected 7 fields, got {len(fields)}", line=line_no, source=source_name)
        try:
            n, d, w, value = int(fields[0]), int(fields[1]), int(fields[2]), int(fields[4])
            mode = WeightMode(fields[3])
            status = Status(fields[5])
        except ValueError as exc:
            raise ParseError(str(exc), line=line_no, source=source_name) from exc
        try:
            CodeParams(n, d, w, mode)
        except UsageError as exc:
            raise ParseError(str(exc), line=line_no, source=source_name) from exc
        if value < 0:
            raise ParseError(f"negative value {value}", line=line_no, source=source_name)
        key = (n, d, w, mode)
        if key in entries:
            raise ParseError(f"repeated entry for {key}", line=line_no, source=source_name)
        entries[key] = TableEntry(value=value, status=status, source=fields[6])

    table = ReferenceTable(entries)
    problems = table.violations()
    if problems:
        message, key = problems[0]
        raise ValidationError(message, key=key)
    return table


def load_shipped_table(path: Path = REFERENCE_TABLE_PATH) -> ReferenceTable:
    return load_reference_table(Path(path).read_text(), source_name=str(path))


@lru_cache(maxsize=None)
def _johnson(n: int, delta: int, w: int) -> int:
    if w < delta:
        return 1
    return n * _johnson(n - 1, delta, w - 1) // w


def johnson_upper_bound(n: int, d: int, w: int) -> int:
    """
    Johnson upper bound on the constant-weight A(n,d,w).

    Distances between equal-weight words are even, so odd d is rounded up.
    """
    if w < 0 or w > n:
        return 0
    return _johnson(n, (d + 1) // 2, min(w, n - w))


def closed_form_constant(n: int, d: int, w: int) -> Optional[int]:
    """Constant-weight A(n,d,w) where it follows from counting alone, else None."""
    if w < 0 or w > n:
        return 0
    delta = (d + 1) // 2
    j = min(w, n - w)
    if j == 0 or j < delta:
        return 1
    if delta == 1:
        return math.comb(n, j)
    if j == delta:
        # distance 2j forces disjoint supports
        return n // j
    return None


@dataclass(frozen=True)
class ResolvedValue:
    value: int
    source: str


class ConstantWeightResolver:
    """
    Looks up constant-weight A(n,d,j): reference table, then counting
    arguments, then the exact solver within configured limits.
    """

    def __init__(
        self,
        table: Optional[ReferenceTable] = None,
        max_vertices: int = 2000,
        time_limit: Optional[float] = 60.0,
    ):
        self.table = table if table is not None else ReferenceTable()
        self.max_vertices = max_vertices
        self.time_limit = time_limit
        self._cache: Dict[Tuple[int, int, int], ResolvedValue] = {}
        self._codes: Dict[Tuple[int, int, int], Code] = {}

    def known(self, n: int, d: int, j: int) -> Optional[ResolvedValue]:
        """Value available without running the solver, if any."""
        key = (n, d, j)
        if key in self._cache:
            return self._cache[key]
        for jj in (j, n - j):
            entry = self.table.lookup(n, d, jj, WeightMode.CONSTANT) if 0 <= jj <= n else None
            if entry is not None and entry.optimal:
                return ResolvedValue(entry.value, "table")
        closed = closed_form_constant(n, d, j)
        if closed is not None:
            return ResolvedValue(closed, "closed_form")
        return None

    def upper_bound(self, n: int, d: int, j: int) -> int:
        known = self.known(n, d, j)
        return known.value if known is not None else johnson_upper_bound(n, d, j)

    def value(self, n: int, d: int, j: int) -> ResolvedValue:
        """
        Exact constant-weight A(n,d,j).

        Raises:
            CapacityError: The value is not tabulated and the solver cannot
                certify it within the configured limits
        """
        key = (n, d, j)
        resolved = self.known(n, d, j)
        if resolved is None:
            code = self._solve(n, d, j, require_optimal=True)
            resolved = ResolvedValue(code.size, "solver")
        self._cache[key] = resolved
        return resolved

    def code(self, n: int, d: int, j: int) -> Code:
        """A constant-weight code of size A(n,d,j)."""
        target = self.value(n, d, j).value
        if j == 0:
            return Code(CodeParams(n, d, 0, WeightMode.CONSTANT), (Word.zero(n),), Provenance.EXACT)
        code = self._solve(n, d, j, require_optimal=False)
        if code.size < target:
            raise CapacityError(
                f"solver found only {code.size} of the {target} words of constant A({n},{d},{j}) "
                f"within {self.time_limit}s",
                cap=self.max_vertices,
                key=(n, d, j),
            )
        return code

    def _solve(self, n: int, d: int, j: int, require_optimal: bool) -> Code:
        key = (n, d, j)
        if key in self._codes:
            return self._codes[key]

        params = CodeParams(n, d, j, WeightMode.CONSTANT)
        count = word_count(params)
        if count > self.max_vertices:
            raise CapacityError(
                f"constant A({n},{d},{j}) is not tabulated and its {count} words exceed "
                f"the solver limit of {self.max_vertices}",
                cap=self.max_vertices,
                key=key,
            )

        graph = build_graph(params)
        result = max_clique_exact(
            graph, budget=SearchBudget(time_limit=self.time_limit), coloring_bound=True
        )
        if require_optimal and not result.proven_optimal:
            raise CapacityError(
                f"solver could not certify constant A({n},{d},{j}) within {self.time_limit}s",
                cap=self.max_vertices,
                key=key,
            )
        code = code_from_clique(graph, result.clique, Provenance.EXACT)
        if result.proven_optimal:
            self._codes[key] = code
            logger.info("Resolved constant A({},{},{}) = {} by exact search", n, d, j, code.size)
        return code


@dataclass(frozen=True)
class PatchedBound:
    """Value of the patching bound with the residue class that attains it."""

    value: int
    residue: int
    weights: Tuple[int, ...]
    terms: Tuple[int, ...]


def residue_weights(d: int, w: int, residue: int) -> Tuple[int, ...]:
    """Weights j with 0 <= j <= w and j = residue (mod d)."""
    return tuple(range(residue, w + 1, d))


def patch_lower_bound(
    n: int,
    d: int,
    w: int,
    table: Optional[ReferenceTable] = None,
    resolver: Optional[ConstantWeightResolver] = None,
) -> PatchedBound:
    """
    max over residues m of the sum of constant-weight A(n,d,j), j <= w, j = m (mod d).

    Classes whose Johnson upper bound falls short of the best resolved class
    are never resolved; the returned value is unaffected. Ties go to the
    smallest residue.
    """
    CodeParams(n, d, w)
    if resolver is None:
        resolver = ConstantWeightResolver(table)

    classes = [residue_weights(d, w, m) for m in range(min(d, w + 1))]
    optimistic = [sum(resolver.upper_bound(n, d, j) for j in weights) for weights in classes]

    best: Optional[PatchedBound] = None
    for m in sorted(range(len(classes)), key=lambda r: (-optimistic[r], r)):
        if best is not None and optimistic[m] < best.value:
            logger.debug(
                "Residue {} skipped: at most {} < {}", m, optimistic[m], best.value
            )
            continue
        terms = tuple(resolver.value(n, d, j).value for j in classes[m])
        total = sum(terms)
        if best is None or total > best.value or (total == best.value and m < best.residue):
            best = PatchedBound(value=total, residue=m, weights=classes[m], terms=terms)

    return best


def augment_with_zero(code: Code) -> Code:
    """
    Add the all-zero word to a constant-weight code of weight w >= d.

    Raises:
        UsageError: If w < d or the code already holds the zero word
        ValidationError: If the input is not a valid constant-weight code
    """
    params = code.params
    zero = Word.zero(params.n)
    if zero in code.word_set:
        raise UsageError("code already contains the zero word")
    if params.w < params.d:
        raise UsageError(
            f"weight {params.w} < distance {params.d}: the zero word would be too close"
        )
    constant = CodeParams(params.n, params.d, params.w, WeightMode.CONSTANT)
    report = verify_code(Code(constant, code.words))
    if not report.passed:
        raise ValidationError(
            "input is not a valid constant-weight code: " + "; ".join(report.failures()),
            key=constant.key(),
        )
    return Code(
        params=constant.with_mode(WeightMode.BOUNDED),
        words=code.words + (zero,),
        provenance=Provenance.PATCHED,
    )


def patch_codes(n: int, d: int, w: int, residue: int, constituents: Sequence[Code]) -> Code:
    """
    Union of constant-weight codes whose weights share a residue mod d.

    Weights in one class differ by at least d, and so do the words.

    Raises:
        ValidationError: A constituent is invalid, off-class, above w or
            repeats a weight; `key` is the constituent index
    """
    bounded = CodeParams(n, d, w, WeightMode.BOUNDED)
    used_weights = {}
    words: List[Word] = []
    for index, part in enumerate(constituents):
        j = part.params.w
        if part.params.n != n:
            raise ValidationError(f"constituent {index} has length {part.params.n}, expected {n}", key=index)
        if j > w or j % d != residue % d:
            raise ValidationError(
                f"constituent {index} has weight {j}, outside residue class {residue} mod {d} "
                f"up to {w}",
                key=index,
            )
        if j in used_weights:
            raise ValidationError(
                f"constituents {used_weights[j]} and {index} share weight {j}", key=index
            )
        report = verify_code(Code(CodeParams(n, d, j, WeightMode.CONSTANT), part.words))
        if not report.passed:
            raise ValidationError(
                f"constituent {index} fails verification: " + "; ".join(report.failures()),
                key=index,
            )
        used_weights[j] = index
        words.extend(part.words)
    return Code(params=bounded, words=tuple(words), provenance=Provenance.PATCHED)


def build_patched_code(
    n: int, d: int, w: int, resolver: ConstantWeightResolver
) -> Tuple[PatchedBound, Code]:
    """Realise the patching bound with solver-built constituents."""
    bound = patch_lower_bound(n, d, w, resolver=resolver)
    parts = [resolver.code(n, d, j) for j, term in zip(bound.weights, bound.terms) if term > 0]
    return bound, patch_codes(n, d, w, bound.residue, parts)
