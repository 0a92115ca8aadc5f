"""
Manifest Loader - Reads and writes CSV dataset manifests

Header: ``ref,dist,mos[,distortion][,level]``. Lines starting with ``#``
are comments. Relative image paths resolve against the manifest directory.
"""
import csv
import io
import math
from pathlib import Path
from typing import Dict, List, Optional, Union

from ..core.errors import MissingColumn, MissingLabel, ParseError
from ..core.models import Dataset, ManifestEntry

REQUIRED_COLUMNS = ("ref", "dist", "mos")
OPTIONAL_COLUMNS = ("distortion", "level")


def _split_row(line: str, lineno: int) -> List[str]:
    try:
        return [cell.strip() for cell in next(csv.reader([line]))]
    except (csv.Error, StopIteration) as e:
        raise ParseError(f"malformed CSV row: {e}", lineno) from e


def _resolve(value: str, base: Path, column: str, lineno: int) -> Path:
    if not value:
        raise ParseError(f"empty '{column}' path", lineno)
    path = Path(value)
    return path if path.is_absolute() else base / path


def _parse_mos(value: str, lineno: int) -> float:
    try:
        mos = float(value)
    except ValueError:
        raise ParseError(f"mos '{value}' is not a number", lineno) from None
    if not math.isfinite(mos):
        raise ParseError(f"mos '{value}' is not finite", lineno)
    return mos


def _parse_level(value: str, lineno: int) -> Optional[int]:
    if not value:
        return None
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"level '{value}' is not an integer", lineno) from None


def parse_manifest(text: str, base_dir: Path, name: str = "dataset") -> Dataset:
    """
    Parse manifest text into a Dataset

    Args:
        text: CSV contents
        base_dir: Directory that relative paths are resolved against
        name: Dataset name

    Returns:
        Dataset with entries in file order
    """
    header: Optional[Dict[str, int]] = None
    entries: List[ManifestEntry] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cells = _split_row(line, lineno)

        if header is None:
            header = {cell.lower(): index for index, cell in enumerate(cells)}
            for column in REQUIRED_COLUMNS:
                if column not in header:
                    raise MissingColumn(column)
            continue

        if len(cells) < len(header):
            cells = cells + [""] * (len(header) - len(cells))
        elif len(cells) > len(header):
            raise ParseError(f"expected {len(header)} fields, got {len(cells)}", lineno)

        def cell(column: str) -> str:
            index = header.get(column)
            return cells[index] if index is not None else ""

        entries.append(ManifestEntry(
            ref_path=_resolve(cell("ref"), base_dir, "ref", lineno),
            dist_path=_resolve(cell("dist"), base_dir, "dist", lineno),
            mos=_parse_mos(cell("mos"), lineno),
            distortion=cell("distortion") or None,
            level=_parse_level(cell("level"), lineno),
        ))

    if header is None:
        raise ParseError("manifest has no header")
    if not entries:
        raise ParseError("manifest has no entries")
    return Dataset(name=name, entries=entries)


def load_manifest(path: Union[str, Path]) -> Dataset:
    """Load a manifest file; the dataset is named after the file stem"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read manifest {path}: {e}") from e
    return parse_manifest(text, path.resolve().parent, name=path.stem)


def write_manifest(dataset: Dataset, path: Union[str, Path]) -> None:
    """Write a dataset as a manifest that load_manifest reads back unchanged"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REQUIRED_COLUMNS + OPTIONAL_COLUMNS)
    for entry in dataset.entries:
        writer.writerow([
            str(entry.ref_path),
            str(entry.dist_path),
            repr(float(entry.mos)),
            entry.distortion or "",
            "" if entry.level is None else str(entry.level),
        ])
    Path(path).write_text(buffer.getvalue(), encoding="utf-8")


def group_by_distortion(dataset: Dataset) -> Dict[str, Dataset]:
    """
    Partition a dataset by distortion label

    Groups appear in order of first occurrence and keep the input order
    of their entries.
    """
    groups: Dict[str, Dataset] = {}
    for index, entry in enumerate(dataset.entries):
        if not entry.distortion:
            raise MissingLabel(index)
        if entry.distortion not in groups:
            groups[entry.distortion] = Dataset(name=f"{dataset.name}/{entry.distortion}")
        groups[entry.distortion].entries.append(entry)
    return groups
