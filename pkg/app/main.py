import sys
from typing import List, Optional

import structlog
from pydantic import ValidationError

from app.cli import COMMANDS
from app.cli.common import CliParser, UsageError
from app.dependencies import get_settings
from app.errors import ElastoError
from app.logging import setup_logging

INTERNAL_ERROR_EXIT_CODE = 2


def build_parser() -> CliParser:
    parser = CliParser(
        prog="elasto",
        description="RF frame-pair selection for quasi-static ultrasound elastography",
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)
    for register in COMMANDS:
        register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return exc.exit_code
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)

    setup_logging(args.log_level or settings.log_level, settings.environment)
    logger = structlog.get_logger("elasto")

    try:
        return args.handler(args, settings)
    except ElastoError as exc:
        logger.error("Command failed", command=args.command, error=str(exc),
                     error_type=type(exc).__name__)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        logger.error("Invalid data", command=args.command, error=str(exc))
        print(f"error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR_EXIT_CODE
    except OSError as exc:
        logger.error("I/O failure", command=args.command, error=str(exc))
        print(f"error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR_EXIT_CODE
    except Exception as exc:
        logger.exception("Unhandled exception", command=args.command, error=str(exc))
        return INTERNAL_ERROR_EXIT_CODE


if __name__ == "__main__":
    sys.exit(main())
