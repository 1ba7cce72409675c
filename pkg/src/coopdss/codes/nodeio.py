"""Binary node-content files.

Layout (little-endian throughout):

    scheme tag        1 byte
    n,k,d,t,l1,l2     2 bytes each
    field descriptor  p: 4 bytes, m: 2 bytes, modulus coefficient count:
                      2 bytes, then that many base-field coordinates
                      (coord_width bytes each; count is 0 for prime fields)
    record count      2 bytes
    records           node_id: 2 bytes, then alpha symbols, each m
                      little-endian base-field coordinates of coord_width
                      bytes (coordinate 0 first)

Symbols appear in node-id-major order (one record per node), segment order
within a record.  The CLI writes one record per file.
"""

from __future__ import annotations

import struct
from typing import Sequence

from ..field import ExtField, PrimeField
from . import SCHEME_TAGS, make_scheme
from .base import NodeContent, ParameterError, Scheme, SchemeParams

_TAG_TO_SCHEME = {v: k for k, v in SCHEME_TAGS.items()}


def _field_descriptor(field) -> bytes:
    if isinstance(field, PrimeField):
        return struct.pack("<IHH", field.p, 1, 0)
    coords = b"".join(c.to_bytes(field.coord_width, "little") for c in field.modulus)
    return struct.pack("<IHH", field.p, field.m, len(field.modulus)) + coords


def write_nodes(scheme: Scheme, contents: Sequence[NodeContent]) -> bytes:
    p = scheme.params
    head = struct.pack("<B6H", SCHEME_TAGS[scheme.name], p.n, p.k, p.d, p.t, p.l1, p.l2)
    head += _field_descriptor(scheme.field)
    head += struct.pack("<H", len(contents))
    body = b""
    for c in contents:
        if len(c.symbols) != scheme.alpha:
            raise ParameterError("content does not match the scheme's alpha")
        body += struct.pack("<H", c.node_id)
        for sym in c.symbols:
            body += scheme.field.symbol_to_bytes(sym)
    return head + body


def read_nodes(data: bytes) -> tuple[SchemeParams, list[NodeContent]]:
    tag, n, k, d, t, l1, l2 = struct.unpack_from("<B6H", data, 0)
    off = 13
    p, m, modlen = struct.unpack_from("<IHH", data, off)
    off += 8
    if tag not in _TAG_TO_SCHEME:
        raise ParameterError(f"unknown scheme tag {tag}")
    params = SchemeParams(n=n, k=k, d=d, t=t, l1=l1, l2=l2, scheme=_TAG_TO_SCHEME[tag])
    scheme = make_scheme(params)
    field = scheme.field
    if (field.p, field.degree) != (p, m):
        raise ParameterError(
            f"file field GF({p}^{m}) does not match the scheme's {field!r}")
    if modlen:
        w = field.coord_width
        coeffs = tuple(int.from_bytes(data[off + i * w:off + (i + 1) * w], "little")
                       for i in range(modlen))
        off += modlen * w
        if isinstance(field, ExtField) and coeffs != field.modulus:
            raise ParameterError("modulus mismatch; file from an incompatible build")
    (count,) = struct.unpack_from("<H", data, off)
    off += 2
    sym_bytes = field.symbol_bytes
    contents = []
    for _ in range(count):
        (node_id,) = struct.unpack_from("<H", data, off)
        off += 2
        syms = []
        for _ in range(scheme.alpha):
            syms.append(field.symbol_from_bytes(data[off:off + sym_bytes]))
            off += sym_bytes
        contents.append(NodeContent(node_id, tuple(syms), scheme.layout))
    if off != len(data):
        raise ParameterError("trailing bytes in node file")
    return params, contents
