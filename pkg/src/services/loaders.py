"""Readers for matrix CSV, known-value JSON and solution JSON inputs.

Matrix files hold n rows of n comma-separated positive numbers; cells may be
decimals or fractions such as ``5/8`` and are parsed exactly before
conversion. Blank lines and lines starting with ``#`` are ignored.
"""
import json
import logging
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from pydantic import ValidationError

from src.config.settings import settings
from src.models.pairwise import PcMatrix, PriorityVector, ReferenceAssignment
from src.services.errors import InputFormatError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _cells(line: str) -> List[Tuple[int, str]]:
    """Split a CSV line into (1-based column, stripped text) pairs."""
    cells, start = [], 0
    for part in line.split(","):
        offset = len(part) - len(part.lstrip()) if part.strip() else 0
        cells.append((start + offset + 1, part.strip()))
        start += len(part) + 1
    return cells


def _parse_cell(text: str, source: str, line: int, column: int) -> float:
    if not text:
        raise InputFormatError(source, line, column, "empty cell")
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputFormatError(source, line, column, f"cannot parse {text!r} as a number or fraction")
    if value <= 0:
        raise InputFormatError(source, line, column, f"judgment {text!r} must be strictly positive")
    try:
        result = float(value)
    except OverflowError:
        raise InputFormatError(source, line, column, f"judgment {text!r} out of range")
    if result == 0.0 or not math.isfinite(result):
        raise InputFormatError(source, line, column, f"judgment {text!r} out of range")
    return result


def _first_error(exc: ValidationError) -> str:
    return exc.errors()[0]["msg"]


def parse_matrix_text(text: str, source: str = "<matrix>") -> PcMatrix:
    """
    Parse CSV text into a PcMatrix.

    Raises:
        InputFormatError: With the line and column of the first problem
    """
    rows: List[Tuple[float, ...]] = []
    last_line = 1
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        last_line = line_no
        cells = _cells(line)
        if rows and len(cells) != len(rows[0]):
            raise InputFormatError(
                source, line_no, 1, f"row has {len(cells)} entries, expected {len(rows[0])}"
            )
        row = []
        for position, (column, cell) in enumerate(cells):
            value = _parse_cell(cell, source, line_no, column)
            if position == len(rows) and abs(value - 1.0) > settings.diagonal_tolerance:
                raise InputFormatError(source, line_no, column, f"diagonal entry must be 1, got {cell!r}")
            row.append(value)
        rows.append(tuple(row))

    if not rows:
        raise InputFormatError(source, 1, 1, "no matrix rows found")
    if len(rows) != len(rows[0]):
        raise InputFormatError(
            source, last_line, 1, f"matrix has {len(rows)} rows but {len(rows[0])} columns"
        )
    try:
        matrix = PcMatrix(entries=tuple(rows))
    except ValidationError as exc:
        raise InputFormatError(source, 1, 1, _first_error(exc)) from exc
    logger.debug("Parsed %dx%d matrix from %s", matrix.n, matrix.n, source)
    return matrix


def _locate(text: str, needle: str, occurrence: int = 1) -> Tuple[int, int]:
    index = -1
    for _ in range(occurrence):
        index = text.find(needle, index + 1)
        if index < 0:
            return 1, 1
    line = text.count("\n", 0, index) + 1
    return line, index - (text.rfind("\n", 0, index) + 1) + 1


class _DuplicateKey(Exception):
    def __init__(self, key: str):
        super().__init__(key)
        self.key = key


def _unique_pairs(pairs: List[Tuple[str, Any]]) -> Dict[str, Any]:
    data: Dict[str, Any] = {}
    for key, value in pairs:
        if key in data:
            raise _DuplicateKey(key)
        data[key] = value
    return data


def _load_json(text: str, source: str) -> Any:
    try:
        return json.loads(text, object_pairs_hook=_unique_pairs)
    except json.JSONDecodeError as exc:
        raise InputFormatError(source, exc.lineno, exc.colno, exc.msg) from exc
    except _DuplicateKey as exc:
        line, column = _locate(text, f'"{exc.key}"', occurrence=2)
        raise InputFormatError(source, line, column, f"duplicate key {exc.key!r}") from None


def _is_number(value: Any) -> bool:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        return False
    try:
        return math.isfinite(float(value))
    except OverflowError:
        return False


def parse_known_text(text: str, source: str = "<known>") -> ReferenceAssignment:
    """
    Parse a JSON object mapping 1-based concept indices (as strings) to known values.

    Raises:
        InputFormatError: With the line and column of the first problem
    """
    data = _load_json(text, source)
    if not isinstance(data, dict):
        raise InputFormatError(source, 1, 1, "expected a JSON object such as {\"2\": 5, \"3\": 7}")
    known = {}
    for key, value in data.items():
        line, column = _locate(text, f'"{key}"')
        if not key.strip().isdigit():
            raise InputFormatError(source, line, column, f"key {key!r} is not a 1-based concept index")
        if not _is_number(value):
            raise InputFormatError(source, line, column, f"value for concept {key} must be a finite number")
        index = int(key)
        if index in known:
            raise InputFormatError(source, line, column, f"concept {index} is given more than once")
        known[index] = float(value)
    try:
        return ReferenceAssignment(known=known)
    except ValidationError as exc:
        raise InputFormatError(source, 1, 1, _first_error(exc)) from exc


def parse_solution_text(text: str, source: str = "<solution>") -> PriorityVector:
    """Parse a JSON array of strictly positive priorities."""
    data = _load_json(text, source)
    if not isinstance(data, list) or not all(_is_number(v) for v in data):
        raise InputFormatError(source, 1, 1, "expected a JSON array of finite numbers")
    try:
        return PriorityVector(values=tuple(float(v) for v in data), method="provided")
    except ValidationError as exc:
        raise InputFormatError(source, 1, 1, _first_error(exc)) from exc


def load_matrix(path: PathLike) -> PcMatrix:
    return parse_matrix_text(Path(path).read_text(encoding="utf-8"), str(path))


def load_known(path: PathLike) -> ReferenceAssignment:
    return parse_known_text(Path(path).read_text(encoding="utf-8"), str(path))


def load_solution(path: PathLike) -> PriorityVector:
    return parse_solution_text(Path(path).read_text(encoding="utf-8"), str(path))
