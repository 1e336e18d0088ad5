"""
Factor-list grammar for `certify product`.

    factors := factor (";" factor)*
    factor  := pair ("," pair)*
    pair    := key "=" value

Keys: g, m1, m2, m (shorthand for m1 = m2), side (plus|minus), sphere (a
great sphere of that dimension, alone in its factor). Whitespace is
ignored. A JSON list of objects with the same keys is accepted as well.

Error offsets are byte offsets into the UTF-8 encoded input.
"""
import json
import logging
from typing import Any, Dict, List, Tuple

from isoparametric.catalog import SUPPORTED_G, FocalDescriptor, InvalidFamilyError, Side, focal_descriptor, great_sphere

logger = logging.getLogger(__name__)

KNOWN_KEYS = ("g", "m1", "m2", "m", "side", "sphere")
INTEGER_KEYS = ("g", "m1", "m2", "m", "sphere")


class FactorParseError(ValueError):
    """Raised for malformed factor lists; offset is a byte offset into the input."""

    def __init__(self, message: str, offset: int):
        self.message = message
        self.offset = offset
        super().__init__(f"{message} (at byte {offset})")


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def _split(text: str, separator: str, start: int = 0) -> List[Tuple[str, int]]:
    """Pieces of text with the character index where each begins (relative to start)."""
    pieces = []
    position = 0
    for piece in text.split(separator):
        pieces.append((piece, start + position))
        position += len(piece) + 1
    return pieces


def _leading_space(piece: str) -> int:
    return len(piece) - len(piece.lstrip())


def _descriptor(fields: Dict[str, Any], offset: int) -> FocalDescriptor:
    if "sphere" in fields:
        if len(fields) > 1:
            raise FactorParseError("sphere cannot be combined with other keys", offset)
        if fields["sphere"] < 1:
            raise FactorParseError("sphere dimension must be >= 1", offset)
        return great_sphere(fields["sphere"])

    if "g" not in fields:
        raise FactorParseError("factor needs g or sphere", offset)
    g = fields["g"]
    if g not in SUPPORTED_G:
        raise FactorParseError(f"g must be in {{{','.join(str(v) for v in SUPPORTED_G)}}}", offset)
    if "m" in fields and ("m1" in fields or "m2" in fields):
        raise FactorParseError("use either m or m1/m2", offset)
    m1 = fields.get("m", fields.get("m1"))
    m2 = fields.get("m", fields.get("m2", m1))
    if m1 is None:
        raise FactorParseError("factor needs m or m1", offset)
    try:
        side = Side(fields.get("side", Side.PLUS.value))
    except ValueError:
        raise FactorParseError(f"side must be plus or minus: got {fields['side']!r}", offset) from None
    try:
        return focal_descriptor(g, m1, m2, side)
    except InvalidFamilyError as e:
        raise FactorParseError(f"invalid family: {e.details}", offset) from e


def _parse_factor(text: str, chunk: str, start: int) -> FocalDescriptor:
    fields: Dict[str, Any] = {}
    for pair, index in _split(chunk, ",", start):
        index += _leading_space(pair)
        offset = _byte_offset(text, index)
        if not pair.strip():
            raise FactorParseError("empty key=value pair", offset)
        if "=" not in pair:
            raise FactorParseError(f"expected key=value: got {pair.strip()!r}", offset)
        key, value = (part.strip() for part in pair.split("=", 1))
        key = key.lower()
        if key not in KNOWN_KEYS:
            raise FactorParseError(f"unknown key {key!r} (expected one of {', '.join(KNOWN_KEYS)})", offset)
        if key in fields:
            raise FactorParseError(f"duplicate key {key!r}", offset)
        if key in INTEGER_KEYS:
            try:
                fields[key] = int(value)
            except ValueError:
                raise FactorParseError(f"{key} must be an integer: got {value!r}", offset) from None
        else:
            fields[key] = value.lower()
    return _descriptor(fields, _byte_offset(text, start + _leading_space(chunk)))


def _parse_json(text: str) -> List[FocalDescriptor]:
    try:
        items = json.loads(text)
    except json.JSONDecodeError as e:
        raise FactorParseError(f"invalid JSON: {e.msg}", _byte_offset(text, e.pos)) from e
    if not isinstance(items, list) or not items:
        raise FactorParseError("empty factor list" if items == [] else "JSON factors must be a list", 0)

    factors = []
    for item in items:
        if not isinstance(item, dict):
            raise FactorParseError("JSON factors must be objects", 0)
        unknown = sorted(set(item) - set(KNOWN_KEYS))
        if unknown:
            raise FactorParseError(f"unknown key {unknown[0]!r} (expected one of {', '.join(KNOWN_KEYS)})", 0)
        factors.append(_descriptor({key: _json_value(key, value) for key, value in item.items()}, 0))
    return factors


def _json_value(key: str, value: Any) -> Any:
    if key in INTEGER_KEYS:
        # bool is an int subclass; floats are never truncated
        if isinstance(value, bool) or not isinstance(value, int):
            raise FactorParseError(f"{key} must be an integer: got {json.dumps(value)}", 0)
        return value
    if not isinstance(value, str):
        raise FactorParseError(f"{key} must be a string: got {json.dumps(value)}", 0)
    return value.lower()


def parse_factor_list(text: str) -> List[FocalDescriptor]:
    """
    Parse a factor list into descriptors, in input order.

    Raises:
        FactorParseError: For empty lists, unknown keys, bad values and invalid families
    """
    if text.lstrip().startswith("["):
        factors = _parse_json(text)
    else:
        chunks = [(chunk, index) for chunk, index in _split(text, ";") if chunk.strip()]
        if not chunks:
            raise FactorParseError("empty factor list", 0)
        factors = [_parse_factor(text, chunk, index) for chunk, index in chunks]
    logger.debug(f"Parsed {len(factors)} factors: {[f.label() for f in factors]}")
    return factors
