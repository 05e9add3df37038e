"""Utility functions for py_bwcodes."""

from pathlib import Path
from typing import Iterable, Iterator, List, Optional


def walk_up_find_file(
    filename: str, start_path: Optional[Path] = None, max_levels: int = 5
) -> Optional[Path]:
    """Walk up directory tree looking for a specific file."""
    current = start_path if start_path is not None else Path.cwd()

    for _ in range(max_levels):
        file_path = current / filename
        if file_path.is_file():
            return file_path

        parent = current.parent
        if parent == current:
            break
        current = parent

    return None


def get_common_config_locations(filename: str = "bwcodes.yaml") -> List[Path]:
    """Conventional configuration locations, in lookup order."""
    cwd = Path.cwd()
    return [
        cwd / "config" / filename,
        cwd / "configs" / filename,
        cwd / ".config" / filename,
        Path.home() / ".py_bwcodes" / filename,
    ]


def ensure_directory_exists(file_path: Path) -> None:
    """Ensure the directory for a file path exists."""
    file_path.parent.mkdir(parents=True, exist_ok=True)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of a non-negative int, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bitset(indices: Iterable[int]) -> int:
    """Pack vertex indices into an int bitset."""
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask
