#!/usr/bin/env python3
"""
Characteristic classes and genera of symmetric products.

Subcommands:
    classes   Generating series of Hirzebruch, Todd, Chern or L classes of the
              symmetric powers of a builtin or file-based space model
    verify    Exact verification suites (p1, oracle, genera,
              specializations, laws, sensitivity or all)
    genera    Scalar series: chi_y, Zagier signatures, arithmetic genera and
              intersection Euler characteristics

Examples:
    python symprod.py classes --model p1 --base hirzebruch --N 4
    python symprod.py classes --model point --base chi=3 --pipeline todd --N 5
    python symprod.py verify --suite p1 --N 6
    python symprod.py genera --chi-y "1+y" --N 3

Exit codes:
    0 success, 1 verification failed, 2 bad flags or configuration,
    3 file or parse error, 4 invariant violation, 5 pole, 6 parity mismatch
"""

import sys

import dotenv

from utils.cli_utils import COMMANDS, build_parser
from utils.config_utils import load_configuration, setup_logging
from utils.errors import ConfigurationError

# Load environment variables from .env file
dotenv.load_dotenv()


def main(argv=None) -> int:
    """
    Parse the command line, configure logging and dispatch to a subcommand.

    Returns:
        The process exit code
    """
    try:
        config = load_configuration()
    except ConfigurationError as e:
        setup_logging()
        print(f"Configuration error: {e}", file=sys.stderr)
        return e.exit_code

    logger = setup_logging(config['debug'])
    parser = build_parser(config['default_format'])
    args = parser.parse_args(argv)
    logger.debug(f"Arguments: {vars(args)}")
    return COMMANDS[args.command](args, config)


if __name__ == "__main__":
    sys.exit(main())
