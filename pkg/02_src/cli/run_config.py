"""
Command-line arguments and the RunConfig they parse into.
"""
import argparse
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional, Sequence

from isoparametric.catalog import Side
from lawlor.config import SolverSettings, default_settings, get_solver_config


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class ModelChoice(str, Enum):
    """q-model selection for `angle`; auto tries every strategy."""

    EXACT = "exact"
    F = "F"
    EXP = "exp"
    AUTO = "auto"


@dataclass
class RunConfig:
    """
    One CLI invocation.

    tol only tightens the integrator; the certificate soundness margin is
    fixed in certifier.models and not part of the config.
    """

    command: str
    target: Optional[str] = None
    output_format: OutputFormat = OutputFormat.TEXT
    out: Optional[str] = None
    jobs: Optional[int] = None
    log_dir: Optional[str] = None
    tol: Optional[float] = None
    max_sum: Optional[int] = None
    # angle
    dim: Optional[int] = None
    alpha2: Optional[float] = None
    model: ModelChoice = ModelChoice.AUTO
    spectrum: Optional[str] = None
    trace: bool = False
    # certify / classify
    g: Optional[int] = None
    m1: Optional[int] = None
    m2: Optional[int] = None
    side: Side = Side.PLUS
    n: Optional[int] = None
    factors: Optional[str] = None
    # table
    dims: Optional[List[int]] = None
    alpha_sqs: Optional[List[float]] = None
    # verify
    verify_all: bool = False
    claims: List[str] = field(default_factory=list)
    recheck: Optional[str] = None
    resolve: bool = False
    # certificate store
    store: Optional[str] = None
    name: Optional[str] = None

    def with_environment(self) -> "RunConfig":
        """
        Fill --jobs and --log-dir from CONE_CERTIFY_JOBS / CONE_CERTIFY_LOG_DIR when not given.

        Raises:
            ConfigError: If an environment variable is malformed
        """
        env = get_solver_config()
        return replace(
            self,
            jobs=env["jobs"] if self.jobs is None else self.jobs,
            log_dir=self.log_dir or env["log_dir"],
        )

    def solver_settings(self) -> SolverSettings:
        """
        Environment settings, tightened by --tol when given.

        Raises:
            ConfigError: If --tol would loosen the integrator
        """
        settings = default_settings()
        if self.tol is not None:
            settings = settings.with_tolerance(self.tol)
        return settings


def _int_list(text: str) -> List[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _float_list(text: str) -> List[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def _add_shared(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.TEXT.value,
        help="Output format (default: text)",
    )
    parser.add_argument("--out", help="Write the result to this file instead of stdout")
    parser.add_argument(
        "--jobs", type=int, help="Concurrent solves (default: CONE_CERTIFY_JOBS or 1)"
    )
    parser.add_argument("--log-dir", help="Directory for runner JSONL logs (default: CONE_CERTIFY_LOG_DIR)")
    parser.add_argument("--tol", type=float, help="Tighter integrator tolerance than the default 1e-10")


def _add_store(parser: argparse.ArgumentParser, what: str) -> None:
    parser.add_argument("--store", help=f"Also save the {what} into this certificate store directory")
    parser.add_argument("--name", help="Name inside the store (default: derived from the subject)")


def _add_family(parser: argparse.ArgumentParser, need_multiplicities: bool = True) -> None:
    parser.add_argument("--g", type=int, required=True, help="Number of distinct principal curvatures")
    parser.add_argument("--m1", type=int, required=need_multiplicities, help="First multiplicity")
    parser.add_argument("--m2", type=int, help="Second multiplicity (defaults to m1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cone-certify",
        description="Vanishing angles and Lawlor certificates for cones over focal submanifolds",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    angle = commands.add_parser("angle", help="Upper bound for the vanishing angle theta_c(k, alpha)")
    angle.add_argument("--dim", type=int, required=True, help="Cone dimension k")
    angle.add_argument("--alpha2", type=float, help="alpha^2 (taken from --spectrum when omitted)")
    angle.add_argument("--model", choices=[m.value for m in ModelChoice], default=ModelChoice.AUTO.value)
    angle.add_argument("--spectrum", help='Principal curvatures, e.g. "1x2,-1x2,0x1"')
    angle.add_argument("--trace", action="store_true", help="Emit the profile trace as CSV")
    _add_shared(angle)

    table = commands.add_parser("table", help="Table of vanishing-angle bounds in degrees")
    table.add_argument("--dims", type=_int_list, help="Comma-separated cone dimensions (default 3..12)")
    table.add_argument("--alpha2s", dest="alpha_sqs", type=_float_list, help="Comma-separated alpha^2 (default 0..19)")
    _add_shared(table)

    certify = commands.add_parser("certify", help="Certificates for focal cones, unions, products and sweeps")
    targets = certify.add_subparsers(dest="target", required=True)
    focal = targets.add_parser("focal", help="Cone over one focal submanifold")
    _add_family(focal)
    focal.add_argument("--side", choices=[s.value for s in Side], default=Side.PLUS.value)
    _add_store(focal, "certificate")
    _add_shared(focal)
    union = targets.add_parser("union", help="Union of both focal cones of a g=4 family")
    _add_family(union)
    _add_store(union, "certificate")
    _add_shared(union)
    product = targets.add_parser("product", help="Cone over a minimal product")
    product.add_argument("--factors", required=True, help='e.g. "g=4,m1=1,m2=2,side=plus; g=3,m=2; sphere=4"')
    _add_store(product, "certificate")
    _add_shared(product)
    sweep = targets.add_parser("sweep", help="Both focal cones of every g=4 family up to --max-sum, then g=3 and g=6")
    sweep.add_argument("--max-sum", type=int, default=20, help="Bound on m1 + m2 (default: 20)")
    _add_store(sweep, "certificates")
    _add_shared(sweep)

    classify = commands.add_parser("classify", help="Wang's criterion for the cone over an isoparametric hypersurface")
    _add_family(classify)
    classify.add_argument("--n", type=int, help="Ambient dimension (default: g(m1+m2)/2 + 2)")
    _add_shared(classify)

    catalog = commands.add_parser("catalog", help="Isoparametric families with both focal submanifolds")
    catalog.add_argument("--max-sum", type=int, default=9, help="Bound on m1 + m2 for g=4 (default: 9)")
    _add_shared(catalog)

    verify = commands.add_parser("verify", help="Claim report, or recheck saved certificates")
    group = verify.add_mutually_exclusive_group(required=True)
    group.add_argument("--all", dest="verify_all", action="store_true", help="Run every claim")
    group.add_argument("--claim", dest="claims", action="append", default=[], help="Run one claim (repeatable)")
    group.add_argument(
        "--recheck", help="Re-validate the certificates in a JSON file, or under this name with --store"
    )
    verify.add_argument("--resolve", action="store_true", help="With --recheck: re-solve every theta0")
    _add_store(verify, "claim report")
    _add_shared(verify)
    return parser


def config_from_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """
    Parse argv into a RunConfig.

    Raises:
        SystemExit: On argparse errors (exit code 2)
    """
    args = vars(build_parser().parse_args(argv))
    args["output_format"] = OutputFormat(args["output_format"])
    if "model" in args:
        args["model"] = ModelChoice(args["model"])
    if "side" in args:
        args["side"] = Side(args["side"])
    if args.get("m2") is None and args.get("m1") is not None:
        args["m2"] = args["m1"]
    return RunConfig(**args)
