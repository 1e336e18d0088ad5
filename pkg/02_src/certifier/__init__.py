"""
Certificates for cones over focal submanifolds, focal unions and minimal
products, with recheck, JSON storage, sweeps and the claim report.
"""
from .certify import (
    FOCAL_THRESHOLDS,
    UNION_THRESHOLD,
    RecheckError,
    certify_descriptor,
    certify_focal_cone,
    certify_focal_union,
    certify_product,
    certify_product_spec,
    closed_form_checks,
    focal_threshold,
    recheck_certificate,
)
from .claims import (
    CLAIM_IDS,
    ClaimReport,
    ClaimResult,
    verify_paper_claims,
    verify_paper_claims_async,
)
from .models import (
    SCHEMA_VERSION,
    SOUNDNESS_MARGIN,
    Certificate,
    ClosedFormChecks,
    Condition,
    SubjectKind,
    Verdict,
)
from .storage import (
    CertificateStorageError,
    CertificateStore,
    FileCertificateStore,
    certificates_document,
    certificates_from_document,
    read_json,
    safe_name,
    write_json,
)
from .sweeps import (
    FamilySweepEntry,
    ProductSweepEntry,
    default_product_pool,
    dimension_8_products,
    expected_product_minimizing,
    sweep_g3_g6_families,
    sweep_g4_families,
    sweep_products,
)

__all__ = [
    "Certificate",
    "ClosedFormChecks",
    "Condition",
    "SubjectKind",
    "Verdict",
    "SCHEMA_VERSION",
    "SOUNDNESS_MARGIN",
    "FOCAL_THRESHOLDS",
    "UNION_THRESHOLD",
    "RecheckError",
    "certify_descriptor",
    "certify_focal_cone",
    "certify_focal_union",
    "certify_product",
    "certify_product_spec",
    "closed_form_checks",
    "focal_threshold",
    "recheck_certificate",
    "CertificateStorageError",
    "CertificateStore",
    "FileCertificateStore",
    "safe_name",
    "certificates_document",
    "certificates_from_document",
    "read_json",
    "write_json",
    "FamilySweepEntry",
    "ProductSweepEntry",
    "default_product_pool",
    "dimension_8_products",
    "expected_product_minimizing",
    "sweep_g3_g6_families",
    "sweep_g4_families",
    "sweep_products",
    "CLAIM_IDS",
    "ClaimReport",
    "ClaimResult",
    "verify_paper_claims",
    "verify_paper_claims_async",
]
