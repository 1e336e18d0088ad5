"""
CLI for cone certification.

Usage:
    python -m cli angle --dim 12 --alpha2 10 --model exp
    python -m cli certify focal --g 4 --m1 1 --m2 2 --side minus --format json --out cert.json
    python -m cli certify product --factors "g=3,m=2; g=3,m=2"
    python -m cli verify --all
    python -m cli verify --recheck cert.json
    python -m cli certify focal --g 3 --m1 2 --store runs
    python -m cli verify --recheck "g=3(2,2)plus" --store runs --resolve

Exit codes: 0 when every certificate is Minimizing (every claim passes),
1 when something is Inconclusive or fails, 2 on input errors.
"""
import asyncio
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

from certifier.certify import (
    RecheckError,
    certify_focal_cone,
    certify_focal_union,
    certify_product,
    recheck_certificate,
)
from certifier.claims import verify_paper_claims_async
from certifier.models import Certificate
from certifier.storage import CertificateStorageError, FileCertificateStore, certificates_from_document, read_json
from certifier.sweeps import sweep_g3_g6_families, sweep_g4_families
from isoparametric.catalog import InvalidFamilyError, catalog_dump, wang_minimizing
from lawlor.angle_bounds import NoVanishingError, ScalingHypothesisError, theta_upper_bound
from lawlor.angle_table import DEFAULT_ALPHA_SQS, DEFAULT_DIMS, generate_angle_table_async
from lawlor.config import ConfigError
from lawlor.models import BoundStrategy
from lawlor.profile_ode import IntegrationError, solve_profile, trace_to_csv
from lawlor.qmodel import ExactSpectrum, ExpBound, FBound, QModel, QModelDomainError, Spectrum
from products.minimal_product import ProductError
from products.normal_radius import AppendixDomainError

from . import render
from .factor_parser import parse_factor_list
from .run_config import ModelChoice, RunConfig, config_from_args

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_INPUT_ERROR = 2

INPUT_ERRORS = (
    ValueError,
    ConfigError,
    InvalidFamilyError,
    ProductError,
    AppendixDomainError,
    QModelDomainError,
    ScalingHypothesisError,
    IntegrationError,
    CertificateStorageError,
)

MODEL_STRATEGIES = {
    ModelChoice.EXACT: (BoundStrategy.EXACT,),
    ModelChoice.F: (BoundStrategy.F_BOUND,),
    ModelChoice.EXP: (BoundStrategy.EXP_BOUND,),
    ModelChoice.AUTO: None,
}


def _angle_inputs(config: RunConfig) -> Tuple[float, Optional[Spectrum]]:
    spectrum = Spectrum.parse(config.spectrum) if config.spectrum else None
    if config.model is ModelChoice.EXACT and spectrum is None:
        raise ValueError("--model exact needs --spectrum")
    if config.alpha2 is not None:
        return config.alpha2, spectrum
    if spectrum is None:
        raise ValueError("angle needs --alpha2 or --spectrum")
    return spectrum.alpha_sq, spectrum


def _trace_model(strategy: BoundStrategy, k: int, alpha_sq: float, spectrum: Optional[Spectrum]) -> QModel:
    alpha = alpha_sq**0.5
    if strategy is BoundStrategy.EXACT:
        return ExactSpectrum(spectrum)
    if strategy is BoundStrategy.F_BOUND:
        return FBound(alpha, k - 1)
    if strategy is BoundStrategy.EXP_BOUND:
        return ExpBound(alpha)
    raise ValueError("the chain bound is not an ODE solve; pick --model F, exp or exact for --trace")


def run_angle(config: RunConfig) -> Tuple[int, str]:
    settings = config.solver_settings()
    alpha_sq, spectrum = _angle_inputs(config)
    strategies = MODEL_STRATEGIES[config.model]
    try:
        bound = theta_upper_bound(config.dim, alpha_sq, spectrum=spectrum, strategies=strategies, settings=settings)
    except NoVanishingError as e:
        if config.trace and strategies and len(strategies) == 1:
            model = _trace_model(strategies[0], config.dim, alpha_sq, spectrum)
            return EXIT_INCONCLUSIVE, trace_to_csv(solve_profile(model, config.dim, settings, keep_trace=True))
        return EXIT_INCONCLUSIVE, render.render_no_angle(config.dim, alpha_sq, e.result.describe(), config.output_format)

    if config.trace:
        model = _trace_model(bound.strategy, config.dim, alpha_sq, spectrum)
        return EXIT_OK, trace_to_csv(solve_profile(model, config.dim, settings, keep_trace=True))
    return EXIT_OK, render.render_angle(bound, config.output_format)


async def run_table(config: RunConfig) -> Tuple[int, str]:
    table = await generate_angle_table_async(
        config.dims or DEFAULT_DIMS,
        config.alpha_sqs or DEFAULT_ALPHA_SQS,
        config.solver_settings(),
        config.jobs,
        config.log_dir,
    )
    return EXIT_OK, render.render_table(table, config.output_format)


def _certificates(config: RunConfig) -> List[Certificate]:
    settings = config.solver_settings()
    if config.target == "focal":
        return [certify_focal_cone(config.g, config.m1, config.m2, config.side, settings)]
    if config.target == "union":
        return [certify_focal_union(config.g, config.m1, config.m2, settings)]
    if config.target == "product":
        return [certify_product(parse_factor_list(config.factors), settings)]

    certificates: List[Certificate] = []
    entries = sweep_g4_families(config.max_sum, settings, config.jobs, config.log_dir)
    entries += sweep_g3_g6_families(settings, config.jobs, config.log_dir)
    for entry in entries:
        certificates += [entry.plus, entry.minus]
    return certificates


def _store_name(config: RunConfig, certificates: Sequence[Certificate]) -> str:
    if config.name:
        return config.name
    if config.target == "sweep":
        return f"sweep-g4-{config.max_sum}"
    return certificates[0].label()


async def run_certify(config: RunConfig, stderr: TextIO) -> Tuple[int, str]:
    # sweeps start their own event loop, so certification runs off the CLI loop
    certificates = await asyncio.to_thread(_certificates, config)
    if config.store:
        path = FileCertificateStore(config.store).save_certificates(_store_name(config, certificates), certificates)
        print(f"Stored {path}", file=stderr)
    code = EXIT_OK if all(c.is_minimizing for c in certificates) else EXIT_INCONCLUSIVE
    return code, render.render_certificates(certificates, config.output_format)


def run_classify(config: RunConfig) -> Tuple[int, str]:
    result = wang_minimizing(config.g, config.m1, config.m2, config.n)
    return EXIT_OK, render.render_classification(result, config.output_format)


def run_catalog(config: RunConfig) -> Tuple[int, str]:
    return EXIT_OK, render.render_catalog(catalog_dump(config.max_sum), config.output_format)


def _load_for_recheck(config: RunConfig) -> List[Certificate]:
    if config.store:
        store = FileCertificateStore(config.store)
        certificates = store.load_certificates(config.recheck)
        if certificates is None:
            raise CertificateStorageError(config.store, f"no certificates named {config.recheck!r}")
        return certificates
    try:
        return certificates_from_document(read_json(config.recheck))
    except (KeyError, ValueError) as e:
        raise CertificateStorageError(config.recheck, f"malformed certificate: {e}") from e


def _recheck(config: RunConfig) -> List[Dict[str, Any]]:
    certificates = _load_for_recheck(config)
    if not certificates:
        raise ValueError(f"No certificates in {config.recheck}")

    settings = config.solver_settings()
    results = []
    for certificate in certificates:
        try:
            verdict = recheck_certificate(certificate, resolve=config.resolve, settings=settings)
            results.append({"label": certificate.label(), "status": "ok", "details": verdict.value})
        except RecheckError as e:
            results.append({"label": certificate.label(), "status": "FAIL", "details": e.details})
    return results


async def run_verify(config: RunConfig, stderr: TextIO) -> Tuple[int, str]:
    if config.recheck:
        results = await asyncio.to_thread(_recheck, config)
        code = EXIT_OK if all(r["status"] == "ok" for r in results) else EXIT_INCONCLUSIVE
        return code, render.render_recheck(results, config.output_format)

    async def progress_callback(claim_id: str, duration_sec: float, status: str) -> None:
        print(f"{status:<4} {claim_id} ({duration_sec:.2f}s)", file=stderr)

    report = await verify_paper_claims_async(
        config.solver_settings(),
        only=None if config.verify_all else config.claims,
        jobs=config.jobs,
        log_dir=config.log_dir,
        progress_callback=progress_callback,
    )
    if config.store:
        path = FileCertificateStore(config.store).save_report(config.name or "claims", report.to_dict())
        print(f"Stored {path}", file=stderr)
    return (EXIT_OK if report.passed else EXIT_INCONCLUSIVE), render.render_report(report, config.output_format)


def _emit(text: str, config: RunConfig, stdout: TextIO, stderr: TextIO) -> None:
    if not config.out:
        stdout.write(text)
        return
    path = Path(config.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    temp_path = path.with_name(path.name + ".tmp")
    temp_path.write_text(text, encoding="utf-8")
    temp_path.replace(path)
    print(f"Saved {path}", file=stderr)


async def run(config: RunConfig, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Execute one command and write its output.

    Returns:
        Exit code: 0 all Minimizing / passed, 1 Inconclusive / failed, 2 input error
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        config = config.with_environment()
        if config.command == "angle":
            code, text = await asyncio.to_thread(run_angle, config)
        elif config.command == "table":
            code, text = await run_table(config)
        elif config.command == "certify":
            code, text = await run_certify(config, stderr)
        elif config.command == "classify":
            code, text = run_classify(config)
        elif config.command == "catalog":
            code, text = run_catalog(config)
        elif config.command == "verify":
            code, text = await run_verify(config, stderr)
        else:
            raise ValueError(f"Unknown command {config.command!r}")
        _emit(text, config, stdout, stderr)
    except INPUT_ERRORS as e:
        logger.debug(f"{config.command} failed", exc_info=True)
        print(f"error: {e}", file=stderr)
        return EXIT_INPUT_ERROR
    except OSError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_INPUT_ERROR
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    config = config_from_args(argv)
    return asyncio.run(run(config))


if __name__ == "__main__":
    sys.exit(main())
