"""Main CLI application entry point."""

import argparse
import asyncio
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv

from ...application.commands import (
    CheckBetaCommand, CheckBetaCommandHandler,
    CheckPhiCovCommand, CheckPhiCovCommandHandler,
    WignerChecksCommand, WignerChecksCommandHandler, parse_checks,
    SimulateCircuitCommand, SimulateCircuitCommandHandler
)
from ...domain.exceptions import InternalConsistencyError, QuditCohomologyError, ResourceLimitError
from ...domain.models import Report
from ...infrastructure.configuration import ServiceContainer, get_settings, initialize_services

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gauge", metavar="FILE", help="gauge file: JSON list of {a, gamma}")
    common.add_argument("--json", metavar="OUT", help="append the report to OUT instead of stdout")
    common.add_argument("--verify", action="store_true", help="re-check the emitted witness")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    dimensions = argparse.ArgumentParser(add_help=False)
    dimensions.add_argument("--d", type=int, required=True, help="local dimension")
    dimensions.add_argument("--n", type=int, default=1, help="number of qudits")

    parser = argparse.ArgumentParser(
        prog="qcoh",
        description="Exact Pauli/Clifford cohomology, Wigner functions and magic-state sampling.",
    )
    subcommands = parser.add_subparsers(dest="command", required=True)
    subcommands.add_parser("check-beta", parents=[common, dimensions],
                           help="decide whether the commutation phase class vanishes")
    subcommands.add_parser("check-phicov", parents=[common, dimensions],
                           help="decide whether the Clifford covariance class vanishes")
    wigner = subcommands.add_parser("wigner", parents=[common, dimensions],
                                    help="build a phase-point basis and verify it")
    wigner.add_argument("--checks", metavar="LIST", help="'all' or a subset of sw,covariance,positivity,bochner")
    wigner.add_argument("--seed", type=int, default=0)
    simulate = subcommands.add_parser("simulate", parents=[common],
                                      help="sample a circuit from a non-negative input state")
    simulate.add_argument("circuit", help="circuit JSON file")
    simulate.add_argument("--state", default="zero", help="zero, mixed, plus or a JSON density matrix file")
    simulate.add_argument("--shots", type=int)
    simulate.add_argument("--seed", type=int)
    return parser


async def run(args: argparse.Namespace, services: ServiceContainer) -> Report:
    """Dispatch one parsed command to its handler."""
    if args.command == "check-beta":
        handler = CheckBetaCommandHandler(services.cohomology, services.gauge_loader)
        return await handler.handle(CheckBetaCommand(args.d, args.n, args.gauge, args.verify))
    if args.command == "check-phicov":
        handler = CheckPhiCovCommandHandler(services.clifford, services.gauge_loader)
        return await handler.handle(CheckPhiCovCommand(args.d, args.n, args.gauge, args.verify))
    if args.command == "wigner":
        handler = WignerChecksCommandHandler(services.cohomology, services.clifford,
                                             services.wigner, services.gauge_loader)
        command = WignerChecksCommand(args.d, args.n, parse_checks(args.checks), args.gauge, args.seed, args.verify)
        return await handler.handle(command)
    handler = SimulateCircuitCommandHandler(services.sampling, services.wigner,
                                            services.circuit_loader, services.state_loader)
    command = SimulateCircuitCommand(args.circuit, args.state, args.shots, args.seed, args.gauge, args.verify)
    return await handler.handle(command)


async def execute(args: argparse.Namespace) -> int:
    services = await initialize_services(get_settings(), report_path=args.json)
    report = await run(args, services)
    services.report_writer.write(report)
    if report.verified is False:
        logger.error("%s: emitted witness failed re-verification", report.command)
        return EXIT_FAILURE
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI application function."""
    load_dotenv()
    args = build_parser().parse_args(argv)
    settings = get_settings()
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.log_level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        return asyncio.run(execute(args))
    except ResourceLimitError as e:
        logger.error("resource limit: %s", e)
        return EXIT_RESOURCE
    except InternalConsistencyError as e:
        logger.error("internal consistency failure: %s", e)
        return EXIT_FAILURE
    except QuditCohomologyError as e:
        logger.error("%s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
