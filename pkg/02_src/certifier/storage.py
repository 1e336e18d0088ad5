"""
File-based JSON storage for certificates and claim reports.

Documents carry "schema_version" and are written atomically (temp file +
replace).
"""
from __future__ import annotations

import json
import logging
import re
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from .models import SCHEMA_VERSION, Certificate

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
NAME_PATTERN = re.compile(r"[^A-Za-z0-9._+-]+")


class CertificateStorageError(Exception):
    """Raised when a certificate document cannot be written, read or decoded."""

    def __init__(self, path: PathLike, details: str):
        self.path = str(path)
        self.details = details
        super().__init__(f"Certificate storage error for {self.path}: {details}")


def safe_name(name: str) -> str:
    """
    File-name form of a store name: runs of other characters become "_".

    Raises:
        ValueError: If nothing usable remains
    """
    cleaned = NAME_PATTERN.sub("_", name).strip("._")
    if not cleaned:
        raise ValueError(f"Unusable store name: {name!r}")
    return cleaned


def write_json(path: PathLike, data: Dict[str, Any]) -> Path:
    """
    Write a JSON document atomically.

    Raises:
        CertificateStorageError: If the write fails
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        temp_path = path.with_name(path.name + ".tmp")
        with open(temp_path, "w", encoding="utf-8") as f:
            json.dump(data, f, ensure_ascii=False, indent=2)
        temp_path.replace(path)
    except (IOError, OSError) as e:
        logger.error(f"Failed to write {path}: {e}")
        raise CertificateStorageError(path, f"write failed: {e}") from e
    logger.info(f"Saved {path}")
    return path


def read_json(path: PathLike) -> Dict[str, Any]:
    """
    Read a JSON document and check its schema version.

    Raises:
        CertificateStorageError: If the file is missing, corrupted or of another schema
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise CertificateStorageError(path, "file not found") from e
    except json.JSONDecodeError as e:
        logger.error(f"Invalid JSON in {path}: {e}")
        raise CertificateStorageError(path, f"corrupted JSON: {e}") from e
    except (IOError, OSError) as e:
        raise CertificateStorageError(path, f"read failed: {e}") from e

    if not isinstance(data, dict):
        raise CertificateStorageError(path, "top-level JSON value must be an object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise CertificateStorageError(path, f"schema_version {version!r} (expected {SCHEMA_VERSION})")
    return data


def certificates_document(certificates: Sequence[Certificate]) -> Dict[str, Any]:
    """A single certificate as-is, several wrapped in a list document."""
    if len(certificates) == 1:
        return certificates[0].to_dict()
    return {"schema_version": SCHEMA_VERSION, "certificates": [c.to_dict() for c in certificates]}


def certificates_from_document(data: Dict[str, Any]) -> List[Certificate]:
    """
    Certificates held by a document: a single certificate, a certificate
    list, or a claim report embedding certificates under its claims.
    """
    if "certificates" in data:
        raw = data["certificates"]
    elif "claims" in data:
        raw = [cert for claim in data["claims"] for cert in claim.get("certificates", [])]
    else:
        raw = [data]
    return [Certificate.from_dict({"schema_version": data["schema_version"], **item}) for item in raw]


class CertificateStore(ABC):
    """Abstract store for certificates keyed by name."""

    @abstractmethod
    def save_certificates(self, name: str, certificates: Sequence[Certificate]) -> Path:
        """
        Save certificates under name.

        Raises:
            CertificateStorageError: If the write fails
        """
        pass

    @abstractmethod
    def load_certificates(self, name: str) -> Optional[List[Certificate]]:
        """
        Load certificates saved under name.

        Returns:
            Certificates if found, None otherwise
        """
        pass

    @abstractmethod
    def exists(self, name: str) -> bool:
        pass


class FileCertificateStore(CertificateStore):
    """
    JSON files under a base directory.

    Storage structure:
        {base_path}/certificates/{name}.json
        {base_path}/reports/{name}.json
    """

    def __init__(self, base_path: PathLike):
        self.base_path = Path(base_path)
        self.base_path.mkdir(parents=True, exist_ok=True)
        logger.info(f"FileCertificateStore initialized with base_path={self.base_path}")

    def _certificate_path(self, name: str) -> Path:
        return self.base_path / "certificates" / f"{safe_name(name)}.json"

    def _report_path(self, name: str) -> Path:
        return self.base_path / "reports" / f"{safe_name(name)}.json"

    def save_certificates(self, name: str, certificates: Sequence[Certificate]) -> Path:
        if not certificates:
            raise CertificateStorageError(self._certificate_path(name), "nothing to save")
        return write_json(self._certificate_path(name), certificates_document(certificates))

    def load_certificates(self, name: str) -> Optional[List[Certificate]]:
        path = self._certificate_path(name)
        if not path.exists():
            logger.debug(f"Certificates not found: {name}")
            return None
        data = read_json(path)
        try:
            return certificates_from_document(data)
        except (KeyError, ValueError) as e:
            raise CertificateStorageError(path, f"malformed certificate: {e}") from e

    def save_report(self, name: str, report: Dict[str, Any]) -> Path:
        return write_json(self._report_path(name), report)

    def load_report(self, name: str) -> Optional[Dict[str, Any]]:
        path = self._report_path(name)
        if not path.exists():
            logger.debug(f"Report not found: {name}")
            return None
        return read_json(path)

    def exists(self, name: str) -> bool:
        exists = self._certificate_path(name).exists()
        logger.debug(f"exists({name}): {exists}")
        return exists
