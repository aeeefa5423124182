"""Tab separated line formats for the input files.

edges       user_a<TAB>user_b
profiles    user<TAB>dimension<TAB>value      one line per held value
candidates  user<TAB>candidate<TAB>likelihood
truth       user<TAB>added_friend

Files are UTF-8 with one record per line. Likelihoods are written with repr so that
reading a written file gives back the identical floats.
"""

import csv
import math
from pathlib import Path
from typing import Iterable, Iterator


class IngestError(ValueError):
    """Raised for a malformed input line, reporting the file and line number"""

    def __init__(self, path, line: int | None, message: str):
        self.path = str(path)
        self.line = line
        location = self.path if line is None else f"{self.path}:{line}"
        super().__init__(f"{location}: {message}")


def _read_fields(path: Path, n_fields: int) -> Iterator[tuple[int, list[str]]]:
    with open(path, "r", encoding="utf-8", newline="") as infile:
        reader = csv.reader(infile, delimiter="\t", quoting=csv.QUOTE_NONE)
        for fields in reader:
            line = reader.line_num
            if not fields:
                continue
            if len(fields) != n_fields:
                raise IngestError(
                    path, line, f"expected {n_fields} tab separated fields, got {len(fields)}"
                )
            if any(field == "" for field in fields):
                raise IngestError(path, line, "empty field")
            yield line, fields


def _write_rows(path: Path, rows: Iterable[tuple]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as outfile:
        writer = csv.writer(
            outfile, delimiter="\t", lineterminator="\n", quoting=csv.QUOTE_NONE
        )
        writer.writerows(rows)


def read_edges(path: Path) -> list[tuple[int, str, str]]:
    """(line number, user_a, user_b) for every edge line"""
    edges = []
    for line, (a, b) in _read_fields(path, 2):
        if a == b:
            raise IngestError(path, line, f"self loop on user {a}")
        edges.append((line, a, b))
    return edges


def write_edges(path: Path, edges: Iterable[tuple[str, str]]) -> None:
    _write_rows(path, sorted(edges))


def read_profiles(path: Path) -> list[tuple[str, str, str]]:
    return [tuple(fields) for _, fields in _read_fields(path, 3)]


def write_profiles(path: Path, triples: Iterable[tuple[str, str, str]]) -> None:
    _write_rows(path, sorted(triples))


def read_candidates(path: Path) -> list[tuple[int, str, str, float]]:
    """(line number, user, candidate, likelihood) in file order"""
    rows = []
    for line, (user, candidate, text) in _read_fields(path, 3):
        try:
            likelihood = float(text)
        except ValueError:
            raise IngestError(path, line, f"likelihood {text!r} is not a number")
        if not math.isfinite(likelihood):
            raise IngestError(path, line, f"likelihood {text!r} is not finite")
        rows.append((line, user, candidate, likelihood))
    return rows


def write_candidates(path: Path, rows: Iterable[tuple[str, str, float]]) -> None:
    """Rows are written in the order given, which is the candidate order per user"""
    _write_rows(
        path, ((user, candidate, repr(float(ll))) for user, candidate, ll in rows)
    )


def read_truth(path: Path) -> list[tuple[int, str, str]]:
    return [(line, user, friend) for line, (user, friend) in _read_fields(path, 2)]


def write_truth(path: Path, truth: dict[str, Iterable[str]]) -> None:
    _write_rows(
        path,
        ((user, friend) for user in sorted(truth) for friend in sorted(truth[user])),
    )
