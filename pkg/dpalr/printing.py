"""Verbosity controlled printing used for all progress and warning output.

verbosity levels used across the package:

0: warnings only (always shown)
1: run summaries
2: per user progress
"""

from typing import Callable

WARNING = 0
SUMMARY = 1
PROGRESS = 2


def get_printer(
    verbosity_level: int, verbosity_threshold: int
) -> Callable[[str], None]:
    if verbosity_level >= verbosity_threshold:

        def optprint(message: str, **kwargs):
            print(message, **kwargs)

    else:

        def optprint(message: str, **kwargs):
            pass

    return optprint


def get_warner(verbosity_level: int = 0) -> Callable[[str], None]:
    """Printer for warnings which are shown at every verbosity level"""
    printer = get_printer(verbosity_level, verbosity_threshold=WARNING)

    def warn(message: str, **kwargs):
        printer(f"warning: {message}", **kwargs)

    return warn


def format_table(header: list[str], rows: list[list[str]]) -> str:
    """Left align the first column and right align the others so that reports
    line up when printed or saved as text."""
    widths = [
        max(len(row[i]) for row in [header] + rows) for i in range(len(header))
    ]

    def format_row(row):
        cells = [row[0].ljust(widths[0])] + [
            cell.rjust(width) for cell, width in zip(row[1:], widths[1:])
        ]
        return "  ".join(cells).rstrip()

    rule = "-" * len(format_row(header))
    return "\n".join([format_row(header), rule] + [format_row(row) for row in rows])
