import argparse
import json
import sys
from typing import Any, Dict, NoReturn, Optional

from ..dependencies import Settings
from ..errors import ElastoError


class UsageError(ElastoError):
    """Bad command-line usage."""

    exit_code = 1


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as exceptions (exit 1) instead of exiting 2."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer")
    if number < 1:
        raise argparse.ArgumentTypeError(f"{value} must be a positive integer")
    return number


def non_negative_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer")
    if number < 0:
        raise argparse.ArgumentTypeError(f"{value} must not be negative")
    return number


def open_fraction(value: str) -> float:
    try:
        number = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not a number")
    if not 0.0 < number < 1.0:
        raise argparse.ArgumentTypeError(f"{value} must lie strictly between 0 and 1")
    return number


def resolve_seed(seed: Optional[int], settings: Settings) -> int:
    return settings.seed if seed is None else seed


def emit(line: str) -> None:
    """Command results go to stdout; logs go to stderr."""
    print(line, file=sys.stdout, flush=True)


def emit_json(document: Dict[str, Any], pretty: bool = False) -> None:
    emit(json.dumps(document, indent=2 if pretty else None, sort_keys=False))
