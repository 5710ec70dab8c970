"""exact wave pulses with abnormally slow far-zone decay

Every command writes its report and a run manifest (run.json) to the output
directory. To see usage info for a specific subcommand, run
splash <subcommand> [-h | --help]

exit codes: 0 pass, 1 check failed, 2 usage, 3 singular data,
4 ambiguous classification, 5 divergence
"""

import argparse
import logging
import sys
from typing import List, Optional

from splash_pulses.utils.logging import (
    TRACE,
    SummaryFormatter,
    compute_log_level,
    get_logger,
)

from .arguments import (
    CLIArgumentNamespace,
    get_log_level_options_parser,
    get_standard_options_parser,
)
from .commands import register_all_commands

logger = get_logger(__name__)

INTERRUPTED = 130


def main(args: Optional[List[str]] = None) -> int:
    args = args if args is not None else sys.argv[1:]

    log_level_parser = get_log_level_options_parser()
    log_level_options, _ = log_level_parser.parse_known_args(args)

    level = compute_log_level(log_level_options.verbose, log_level_options.quiet)
    configure_logger(level)

    logger.debug("received args: %s", args)

    main_parser = argparse.ArgumentParser(
        description=__doc__,
        prog="splash",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[log_level_parser],
    )

    subparsers = main_parser.add_subparsers(dest="command", metavar="command", help="subcommand help")
    subparsers.required = True
    parents = [log_level_parser, get_standard_options_parser()]
    register_all_commands(subparsers, parents)

    try:
        parsed_args = main_parser.parse_args(args, namespace=CLIArgumentNamespace())
    except SystemExit as ex:
        # argparse exits with 2 on usage errors and 0 after --help
        return ex.code if isinstance(ex.code, int) else 2

    logger.debug(parsed_args)

    try:
        return parsed_args.func(parsed_args)
    except KeyboardInterrupt:
        logger.info("stopping; interrupted")
        return INTERRUPTED
    except Exception:
        logger.critical("uncaught exception!", exc_info=level <= logging.DEBUG)
        return 1


def configure_logger(level: int) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(SummaryFormatter(fmt="%(levelname)s: %(message)s", indent=level <= TRACE))
    package_logger = get_logger(__name__.split(".")[0])
    package_logger.handlers.clear()
    package_logger.addHandler(handler)
    package_logger.setLevel(level)
    package_logger.propagate = False
