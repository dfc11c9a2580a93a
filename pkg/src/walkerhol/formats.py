"""Text formats: subalgebras (soalgv1) and Walker metrics (walkerv1).

Both formats are line based ``key = value`` files; ``#`` starts a comment.
A Walker file may end with a ``[certificate]`` block of further
``key = value`` lines recording verified properties.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .exactnum import ParseError, Poly, Q, RatFunc, Rational, as_ratfunc, fmt_q, parse_poly, parse_ratfunc
from .liealg import AlgebraError, Subalgebra, builtin, direct_sum, format_matrix
from .walker import FAMILIES, MetricError, WalkerMetric

CERT_HEADER = "[certificate]"

_LINE = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*((?:\[\s*\d+\s*\])*)\s*=\s*(.*?)\s*$")
_INDEX = re.compile(r"\[\s*(\d+)\s*\]")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _kv(no: int, line: str) -> tuple[str, tuple[int, ...], str]:
    m = _LINE.match(line)
    if not m:
        raise ParseError(f"line {no}: expected 'key = value', got {line!r}")
    idx = tuple(int(x) for x in _INDEX.findall(m.group(2)))
    return m.group(1), idx, m.group(3)


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int,)):
        return str(v)
    if isinstance(v, Rational):
        return fmt_q(v)
    return str(v)


def parse_value(s: str):
    if s in ("true", "false"):
        return s == "true"
    if re.fullmatch(r"-?\d+", s):
        return int(s)
    if re.fullmatch(r"-?\d+/\d+", s):
        return Q(s)
    return s


# ---------------------------------------------------------------------------
# subalgebras
# ---------------------------------------------------------------------------


def parse_matrix(text: str, n: int) -> np.ndarray:
    s = text.replace(" ", "")
    if not (s.startswith("[[") and s.endswith("]]")):
        raise ParseError(f"matrix must look like [[..],[..]]: {text!r}")
    rows = s[2:-2].split("],[")
    if len(rows) != n:
        raise ParseError(f"matrix has {len(rows)} rows, expected {n}")
    m = np.empty((n, n), dtype=object)
    for r, row in enumerate(rows):
        vals = row.split(",")
        if len(vals) != n:
            raise ParseError(f"matrix row {r + 1} has {len(vals)} entries, expected {n}")
        for c, v in enumerate(vals):
            try:
                m[r, c] = Q(v)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad rational {v!r}") from exc
    return m


def write_soalg(h: Subalgebra) -> str:
    out = ["soalgv1", f"n = {h.n}", f"basis = {h.dim}"]
    for t, b in enumerate(h.basis, 1):
        out.append(f"M[{t}] = {format_matrix(b)}")
    return "\n".join(out) + "\n"


def read_soalg(text: str, name: str = "") -> Subalgebra:
    it = list(_lines(text))
    if not it or it[0][1] != "soalgv1":
        raise ParseError("missing 'soalgv1' header")
    n = k = None
    mats: dict[int, np.ndarray] = {}
    for no, line in it[1:]:
        key, idx, val = _kv(no, line)
        if key == "n" and not idx:
            n = _int(val, no)
        elif key == "basis" and not idx:
            k = _int(val, no)
        elif key == "M" and len(idx) == 1:
            if n is None:
                raise ParseError(f"line {no}: 'n' must precede the matrices")
            mats[idx[0]] = parse_matrix(val, n)
        else:
            raise ParseError(f"line {no}: unknown key {key!r}")
    if n is None or k is None:
        raise ParseError("soalgv1 needs 'n' and 'basis'")
    if sorted(mats) != list(range(1, k + 1)):
        raise ParseError(f"expected matrices M[1]..M[{k}]")
    try:
        h = Subalgebra(n, tuple(mats[t] for t in range(1, k + 1)), name)
    except AlgebraError as exc:
        raise ParseError(str(exc)) from exc
    if not h.is_independent():
        raise ParseError("basis matrices are linearly dependent")
    return h


def _int(s: str, no: int) -> int:
    try:
        return int(s)
    except ValueError as exc:
        raise ParseError(f"line {no}: expected an integer, got {s!r}") from exc


def load_algebra(source: str) -> Subalgebra:
    """``builtin:<name>[+<name>...]``, ``file:<path>`` or a bare path.

    A sum of builtins is block diagonal in the order given; ``trivial:k``
    summands are moved to the end.
    """
    if source.startswith("builtin:"):
        names = source[len("builtin:") :].split("+")
        try:
            parts = [builtin(x) for x in names]
        except (AlgebraError, ValueError, KeyError) as exc:
            raise ParseError(f"unknown builtin algebra {source!r}: {exc}") from exc
        if len(parts) == 1:
            return parts[0]
        active = [p for p in parts if p.dim]
        return direct_sum(active, sum(p.n for p in parts if not p.dim))
    path = source[len("file:") :] if source.startswith("file:") else source
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return read_soalg(text, Path(path).stem)


# ---------------------------------------------------------------------------
# Walker metrics
# ---------------------------------------------------------------------------


def _fmt_ratfunc(x) -> str:
    if isinstance(x, RatFunc):
        x = x.simplify()
        if x.is_poly():
            return str(x.to_poly())
    return str(x)


def write_walker(g: WalkerMetric, certificate=None) -> str:
    out = ["walkerv1", f"n = {g.n}", f"family = {g.family}"]
    if g.h is None:
        out.append("h = flat")
    else:
        for i in range(g.n):
            for j in range(i, g.n):
                x = g.h[i][j]
                if i == j or not x.is_zero():
                    out.append(f"h[{i + 1}][{j + 1}] = {_fmt_ratfunc(x)}")
    for i, p in enumerate(g.u, 1):
        if not p.is_zero():
            out.append(f"u[{i}] = {p}")
    out.append(f"f = {g.f}")
    if certificate:
        out.append(CERT_HEADER)
        for k, v in certificate:
            out.append(f"{k} = {format_value(v)}")
    return "\n".join(out) + "\n"


def read_walker(text: str) -> tuple[WalkerMetric, list[tuple[str, object]]]:
    it = list(_lines(text))
    if not it or it[0][1] != "walkerv1":
        raise ParseError("missing 'walkerv1' header")
    n = family = None
    h_flat = False
    hs: dict[tuple[int, int], str] = {}
    us: dict[int, str] = {}
    f_text = None
    cert: list[tuple[str, object]] = []
    in_cert = False
    for no, line in it[1:]:
        if line == CERT_HEADER:
            in_cert = True
            continue
        key, idx, val = _kv(no, line)
        if in_cert:
            cert.append((key, parse_value(val)))
            continue
        if key == "n" and not idx:
            n = _int(val, no)
            if n < 1:
                raise ParseError(f"line {no}: n must be positive")
        elif key == "family" and not idx:
            if val not in FAMILIES:
                raise ParseError(f"line {no}: family must be one of {', '.join(FAMILIES)}")
            family = val
        elif key == "h" and not idx:
            if val != "flat":
                raise ParseError(f"line {no}: 'h = ' only accepts 'flat'")
            h_flat = True
        elif key == "h" and len(idx) == 2:
            i, j = idx
            hs[(min(i, j), max(i, j))] = val
        elif key == "u" and len(idx) == 1:
            us[idx[0]] = val
        elif key == "f" and not idx:
            f_text = val
        else:
            raise ParseError(f"line {no}: unknown key {key!r}")
    if n is None or family is None:
        raise ParseError("walkerv1 needs 'n' and 'family'")
    N = n + 2
    for i in us:
        if not 1 <= i <= n:
            raise ParseError(f"u[{i}] is out of range 1..{n}")
    u = [parse_poly(us[i], N) if i in us else Poly.zero(N) for i in range(1, n + 1)]
    f = parse_poly(f_text, N) if f_text is not None else Poly.zero(N)
    h = None
    if family == "flat":
        if hs:
            raise ParseError("flat family takes 'h = flat', not h components")
    else:
        if h_flat:
            raise ParseError(f"family {family} needs h components")
        for i, j in hs:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ParseError(f"h[{i}][{j}] is out of range")
        zero = as_ratfunc(Poly.zero(N))
        h = [[zero] * n for _ in range(n)]
        for (i, j), val in hs.items():
            x = as_ratfunc(parse_ratfunc(val, N))
            h[i - 1][j - 1] = h[j - 1][i - 1] = x
        for i in range(n):
            if h[i][i].is_zero():
                raise ParseError(f"h[{i + 1}][{i + 1}] is missing or zero")
    try:
        g = WalkerMetric(n, family, u, f, h)
    except MetricError as exc:
        raise ParseError(str(exc)) from exc
    return g, cert


def load_walker(path: str) -> tuple[WalkerMetric, list[tuple[str, object]]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return read_walker(text)
