"""Code files: parsing, serialization, verification and the appendix corpus."""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from pathlib import Path
from typing import BinaryIO, Dict, FrozenSet, Iterable, List, Optional, Tuple

from .exceptions import ParseError, UsageError
from .graph import CompatibilityGraph
from .words import CodeParams, Word, WeightMode, hamming_distance

DATA_DIR = Path(__file__).parent / "data"
APPENDIX_DIR = DATA_DIR / "appendix"

# Listings shipped verbatim although they break their own parameters.
APPENDIX_ERRATA: Dict[Tuple[int, int, int], str] = {
    (10, 8, 6): "word 0011111110 has weight 7; the listing is a valid (10,8,7) code",
}


class Provenance(str, Enum):
    EXACT = "exact"
    GREEDY = "greedy"
    PATCHED = "patched"
    EXTERNAL = "external"


@dataclass(frozen=True)
class Code:
    """Words of a code with the parameters they are meant to satisfy."""

    params: CodeParams
    words: Tuple[Word, ...]
    provenance: Provenance = Provenance.EXTERNAL

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))
        object.__setattr__(self, "provenance", Provenance(self.provenance))

    @property
    def size(self) -> int:
        return len(self.words)

    @property
    def word_set(self) -> FrozenSet[Word]:
        return frozenset(self.words)

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class VerificationReport:
    params: CodeParams
    size: int
    min_distance: Optional[int]
    distance_witness: Optional[Tuple[Word, Word]]
    max_weight: Optional[int]
    weight_witness: Optional[Word]
    weight_violations: Tuple[Word, ...] = ()
    length_violations: Tuple[Word, ...] = ()
    duplicates: Tuple[Word, ...] = ()

    @property
    def distance_ok(self) -> bool:
        return self.min_distance is None or self.min_distance >= self.params.d

    @property
    def weight_ok(self) -> bool:
        return not self.weight_violations

    @property
    def length_ok(self) -> bool:
        return not self.length_violations

    @property
    def duplicates_ok(self) -> bool:
        return not self.duplicates

    @property
    def passed(self) -> bool:
        return self.distance_ok and self.weight_ok and self.length_ok and self.duplicates_ok

    def failures(self) -> List[str]:
        messages = []
        if not self.length_ok:
            bad = ", ".join(w.render() for w in self.length_violations)
            messages.append(f"length: expected {self.params.n} characters, got {bad}")
        if not self.duplicates_ok:
            messages.append("duplicates: " + ", ".join(w.render() for w in self.duplicates))
        if not self.weight_ok:
            rule = "exactly" if self.params.mode is WeightMode.CONSTANT else "at most"
            bad = ", ".join(f"{w.render()} (weight {w.weight})" for w in self.weight_violations)
            messages.append(f"weight: expected {rule} {self.params.w}, got {bad}")
        if not self.distance_ok:
            x, y = self.distance_witness
            messages.append(
                f"distance: {x.render()} and {y.render()} are at distance "
                f"{self.min_distance} < {self.params.d}"
            )
        return messages

    def render(self) -> str:
        lines = [
            f"parameters:   {self.params}",
            f"size:         {self.size}",
        ]
        if self.min_distance is not None:
            x, y = self.distance_witness
            lines.append(f"min distance: {self.min_distance} ({x.render()}, {y.render()})")
        else:
            lines.append("min distance: n/a (fewer than 2 words)")
        if self.max_weight is not None:
            lines.append(f"max weight:   {self.max_weight} ({self.weight_witness.render()})")
        for label, ok in (
            ("length", self.length_ok),
            ("duplicates", self.duplicates_ok),
            ("weight", self.weight_ok),
            ("distance", self.distance_ok),
        ):
            lines.append(f"{label + ':':<14}{'pass' if ok else 'FAIL'}")
        lines.extend(f"  {message}" for message in self.failures())
        lines.append("result:       " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def verify_code(code: Code) -> VerificationReport:
    """Check length, weight and distance constraints; failures are report content."""
    params = code.params
    sized = [w for w in code.words if w.length == params.n]
    length_violations = tuple(w for w in code.words if w.length != params.n)

    seen = set()
    duplicates = []
    for w in code.words:
        if w in seen and w not in duplicates:
            duplicates.append(w)
        seen.add(w)

    weight_violations = tuple(w for w in sized if not params.admits(w))

    max_weight = None
    weight_witness = None
    for w in sized:
        if max_weight is None or w.weight > max_weight:
            max_weight, weight_witness = w.weight, w

    min_distance = None
    distance_witness = None
    for x, y in combinations(sized, 2):
        dist = hamming_distance(x, y)
        if min_distance is None or dist < min_distance:
            min_distance, distance_witness = dist, (x, y)

    return VerificationReport(
        params=params,
        size=code.size,
        min_distance=min_distance,
        distance_witness=distance_witness,
        max_weight=max_weight,
        weight_witness=weight_witness,
        weight_violations=weight_violations,
        length_violations=length_violations,
        duplicates=tuple(duplicates),
    )


def parse_code_file(source: str, params: CodeParams, source_name: Optional[str] = None) -> Code:
    """
    Parse a code listing: one word per line, blank lines and '#' comments ignored.

    Raises:
        ParseError: On a wrong line length, an illegal character or a
            repeated word, with the 1-based line number
    """
    words: List[Word] = []
    seen: Dict[Word, int] = {}
    for line_no, raw in enumerate(source.splitlines(), start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        if len(text) != params.n:
            raise ParseError(
                f"expected {params.n} characters, got {len(text)} in {text!r}",
                line=line_no,
                source=source_name,
            )
        try:
            word = Word.parse(text)
        except ParseError as exc:
            raise ParseError(str(exc), line=line_no, source=source_name) from exc
        if word in seen:
            raise ParseError(
                f"duplicate word {text} (first on line {seen[word]})",
                line=line_no,
                source=source_name,
            )
        seen[word] = line_no
        words.append(word)
    return Code(params=params, words=tuple(words), provenance=Provenance.EXTERNAL)


def read_code_file(path: Path, params: CodeParams) -> Code:
    path = Path(path)
    return parse_code_file(path.read_text(), params, source_name=str(path))


def serialize_code(code: Code, sink: BinaryIO) -> None:
    """Write header comments then the words in ascending packed order."""
    params = code.params
    header = [
        f"# n={params.n}",
        f"# d={params.d}",
        f"# w={params.w}",
        f"# mode={params.mode.value}",
        f"# size={code.size}",
        f"# provenance={code.provenance.value}",
    ]
    body = [w.render() for w in sorted(code.words)]
    sink.write(("\n".join(header + body) + "\n").encode("ascii"))


def code_from_clique(
    graph: CompatibilityGraph, indices: Iterable[int], provenance: Provenance
) -> Code:
    return Code(
        params=graph.params,
        words=tuple(graph.vertices[i] for i in sorted(indices)),
        provenance=provenance,
    )


def appendix_path(n: int, d: int, w: int) -> Path:
    return APPENDIX_DIR / f"A_{n}_{d}_{w}.txt"


def appendix_keys() -> List[Tuple[int, int, int]]:
    """(n, d, w) of every shipped listing, sorted."""
    keys = []
    for path in APPENDIX_DIR.glob("A_*_*_*.txt"):
        _, n, d, w = path.stem.split("_")
        keys.append((int(n), int(d), int(w)))
    return sorted(keys)


def load_appendix(n: int, d: int, w: int, mode: WeightMode = WeightMode.BOUNDED) -> Code:
    """Load a shipped appendix listing under its stated parameters."""
    path = appendix_path(n, d, w)
    if not path.exists():
        raise UsageError(f"no appendix listing for A({n},{d},{w})")
    return read_code_file(path, CodeParams(n, d, w, mode))
