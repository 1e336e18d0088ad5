"""
Rendering of results as json, csv or text.

Angles are printed in degrees with 4 decimals in text and csv; JSON keeps
radians at full precision. Every renderer returns a string ending in a
newline.
"""
import csv
import io
import json
from typing import Any, Dict, Iterable, List, Optional, Sequence

from certifier.claims import ClaimReport
from certifier.models import Certificate, Condition
from certifier.storage import certificates_document
from isoparametric.catalog import WangClassification
from lawlor.angle_table import AngleTable
from lawlor.models import AngleBound

from .run_config import OutputFormat

CERTIFICATE_COLUMNS = [
    "label",
    "kind",
    "cone_dim",
    "alpha_sq",
    "q_model",
    "theta0_deg",
    "threshold_deg",
    "condition",
    "margin_rad",
    "verdict",
]


def to_json(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"


def _csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _deg(value: Optional[float]) -> str:
    return "***" if value is None else f"{value:.4f}"


def _margin(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.3e}"


def render_angle(bound: AngleBound, output_format: OutputFormat) -> str:
    if output_format is OutputFormat.JSON:
        return to_json(bound.to_dict())
    if output_format is OutputFormat.CSV:
        return _csv(
            ["k", "alpha_sq", "theta_deg", "strategy"],
            [[bound.k, f"{bound.alpha_sq:g}", _deg(bound.degrees), bound.strategy.value]],
        )
    return (
        f"theta_c(k={bound.k}, alpha^2={bound.alpha_sq:g}) < {bound.degrees:.4f} deg "
        f"(tan < {bound.tan:.6f}, {bound.strategy.value} bound)\n"
    )


def render_no_angle(k: int, alpha_sq: float, reason: str, output_format: OutputFormat) -> str:
    if output_format is OutputFormat.JSON:
        return to_json({"k": k, "alpha_sq": alpha_sq, "theta": None, "reason": reason})
    if output_format is OutputFormat.CSV:
        return _csv(["k", "alpha_sq", "theta_deg", "strategy"], [[k, f"{alpha_sq:g}", "***", ""]])
    return f"theta_c(k={k}, alpha^2={alpha_sq:g}): no vanishing angle ({reason})\n"


def render_table(table: AngleTable, output_format: OutputFormat) -> str:
    if output_format is OutputFormat.JSON:
        return to_json(table.to_dict())
    if output_format is OutputFormat.CSV:
        return table.to_csv()
    width = 7
    lines = ["alpha^2 " + "".join(f"{k:>{width}}" for k in table.dims)]
    for alpha_sq, row in zip(table.alpha_sqs, table.rows()):
        lines.append(f"{alpha_sq:>7g} " + "".join(f"{cell.text:>{width}}" for cell in row))
    return "\n".join(lines) + "\n"


def _certificate_line(certificate: Certificate) -> str:
    if certificate.theta0_upper is None:
        comparison = "no vanishing angle"
    elif certificate.condition is Condition.DOUBLE_THETA_BELOW_PHI:
        comparison = (
            f"2 theta0 < {2 * certificate.theta0_degrees:.4f} deg, phi > {certificate.threshold_degrees:.4f} deg"
        )
    else:
        comparison = f"theta0 < {certificate.theta0_degrees:.4f} deg, threshold {certificate.threshold_degrees:.4f} deg"
    return f"{certificate.verdict.value:<12} {certificate.label()}: {comparison}, margin {_margin(certificate.margin)} rad"


def render_certificates(certificates: Sequence[Certificate], output_format: OutputFormat) -> str:
    if output_format is OutputFormat.JSON:
        return to_json(certificates_document(certificates))
    if output_format is OutputFormat.CSV:
        rows = [
            [
                c.label(),
                c.kind.value,
                c.cone_dim,
                repr(c.alpha_sq_used),
                c.q_model_used,
                _deg(c.theta0_degrees),
                _deg(c.threshold_degrees),
                c.condition.value,
                _margin(c.margin),
                c.verdict.value,
            ]
            for c in certificates
        ]
        return _csv(CERTIFICATE_COLUMNS, rows)
    lines = []
    for certificate in certificates:
        lines.append(_certificate_line(certificate))
        lines.extend(f"    {note}" for note in certificate.notes)
    return "\n".join(lines) + "\n"


def render_classification(result: WangClassification, output_format: OutputFormat) -> str:
    data = result.to_dict()
    if output_format is OutputFormat.JSON:
        return to_json(data)
    if output_format is OutputFormat.CSV:
        return _csv(list(data), [list(data.values())])
    verdict = "area-minimizing" if result.minimizing else "not area-minimizing"
    strictly = " (strictly)" if result.strictly else ""
    return f"g={result.g} ({result.m1},{result.m2}) in S^{result.n - 1}: {verdict}{strictly}; {result.reason}\n"


def render_catalog(catalog: Dict[str, Any], output_format: OutputFormat) -> str:
    if output_format is OutputFormat.JSON:
        return to_json(catalog)
    rows: List[List[Any]] = []
    for family in catalog["families"]:
        for side in ("plus", "minus"):
            focal = family[side]
            rows.append(
                [family["g"], family["m1"], family["m2"], side, focal["dim"], f"{focal['alpha_sq']:.6g}", family["provenance"]]
            )
    header = ["g", "m1", "m2", "side", "dim", "alpha_sq", "provenance"]
    if output_format is OutputFormat.CSV:
        return _csv(header, rows)
    return "\n".join(" ".join(f"{str(v):<8}" for v in row).rstrip() for row in [header] + rows) + "\n"


def render_report(report: ClaimReport, output_format: OutputFormat) -> str:
    if output_format is OutputFormat.JSON:
        return to_json(report.to_dict())
    if output_format is OutputFormat.CSV:
        rows = [
            [
                c.claim_id,
                "pass" if c.passed else "FAIL",
                "" if c.value is None else repr(c.value),
                "" if c.bound is None else repr(c.bound),
                _margin(c.margin),
                c.unit,
                c.description,
            ]
            for c in report.claims
        ]
        return _csv(["claim_id", "status", "value", "bound", "margin", "unit", "description"], rows)
    return report.render_text() + "\n"


def render_recheck(results: Sequence[Dict[str, Any]], output_format: OutputFormat) -> str:
    if output_format is OutputFormat.JSON:
        return to_json({"rechecked": list(results)})
    if output_format is OutputFormat.CSV:
        return _csv(["label", "status", "details"], [[r["label"], r["status"], r["details"]] for r in results])
    return "\n".join(f"{r['status']:<6} {r['label']}" + (f": {r['details']}" if r["details"] else "") for r in results) + "\n"
