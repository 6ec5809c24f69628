"""Reading and writing cdd-style ``.ine`` / ``.ext`` text.

H-representation rows are ``b a1 ... ad`` meaning ``b + a·x >= 0``; rows
listed on the ``linearity`` line are equalities. V-representation rows are
``t v1 ... vd`` with ``t = 0`` for rays and ``t = 1`` for points; lines
listed under ``linearity`` span the lineality space. Cones always have
``b = 0``, and the only point accepted in a V-representation is the origin,
which lrs and cdd expect to see explicitly.
"""

from fractions import Fraction
from typing import Iterable, List, Optional, TextIO, Tuple, Union

from .cone import HRep, VRep


class CddFormatError(ValueError):
    pass


def _tok(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _block(kind: str, rows: List[Tuple[Fraction, ...]], lin_idx: List[int], d: int,
           comments: Iterable[str]) -> str:
    out = [f"* {c}" for c in comments]
    out.append(kind)
    if lin_idx:
        out.append("linearity " + " ".join(str(k) for k in [len(lin_idx)] + lin_idx))
    out.append("begin")
    out.append(f"{len(rows)} {d + 1} rational")
    for r in rows:
        out.append(" ".join(_tok(x) for x in r))
    out.append("end")
    return "\n".join(out) + "\n"


def format_hrep(h: HRep, comments: Iterable[str] = ()) -> str:
    """Inequalities first, then equalities (flagged on the linearity line)."""
    comments = _header(h.name, h.n, comments)
    rows = [(Fraction(0),) + tuple(r) for r in h.inequalities]
    rows += [(Fraction(0),) + tuple(r) for r in h.equalities]
    lin = list(range(len(h.inequalities) + 1, len(rows) + 1))
    return _block("H-representation", rows, lin, h.dim, comments)


def format_vrep(v: VRep, comments: Iterable[str] = (), origin: bool = True) -> str:
    """Origin vertex (optional), then rays, then lineality lines."""
    comments = _header(v.name, v.n, comments)
    rows = []
    if origin:
        rows.append((Fraction(1),) + (Fraction(0),) * v.dim)
    rows += [(Fraction(0),) + tuple(r) for r in v.rays]
    first_lin = len(rows) + 1
    rows += [(Fraction(0),) + tuple(r) for r in v.lineality]
    lin = list(range(first_lin, len(rows) + 1))
    return _block("V-representation", rows, lin, v.dim, comments)


def _parse(text: str):
    kind = None
    linearity: List[int] = []
    rows: List[Tuple[Fraction, ...]] = []
    comments: List[str] = []
    lines = iter(text.splitlines())
    header = None
    for raw in lines:
        line = raw.strip()
        if not line:
            continue
        if line.startswith("*"):
            comments.append(line[1:].strip())
            continue
        if line in ("H-representation", "V-representation"):
            kind = line[0]
            continue
        if line.startswith("linearity"):
            toks = line.split()[1:]
            cnt = int(toks[0])
            linearity = [int(t) for t in toks[1:]]
            if len(linearity) != cnt:
                raise CddFormatError("linearity count does not match its index list")
            continue
        if line == "begin":
            header = next(lines, "").split()
            if len(header) < 2:
                raise CddFormatError("missing size line after 'begin'")
            m, d1 = int(header[0]), int(header[1])
            if len(header) > 2 and header[2] not in ("rational", "integer"):
                raise CddFormatError(f"unsupported number type {header[2]!r}")
            for _ in range(m):
                toks = next(lines, "").split()
                if len(toks) != d1:
                    raise CddFormatError(f"expected {d1} entries per row, got {len(toks)}")
                rows.append(tuple(Fraction(t) for t in toks))
            end = next(lines, "").strip()
            if end != "end":
                raise CddFormatError("missing 'end'")
            break
        # other cdd options (e.g. 'project') are ignored
    if kind is None or header is None:
        raise CddFormatError("no H- or V-representation block found")
    if any(not 1 <= k <= len(rows) for k in linearity):
        raise CddFormatError("linearity index out of range")
    return kind, rows, linearity, comments


def parse_hrep(text: str, n: Optional[int] = None) -> HRep:
    kind, rows, lin, comments = _parse(text)
    if kind != "H":
        raise CddFormatError("expected an H-representation")
    if not rows:
        raise CddFormatError("empty H-representation")
    if any(r[0] != 0 for r in rows):
        raise CddFormatError("only homogeneous rows (b = 0) describe a cone")
    dim = len(rows[0]) - 1
    linset = set(lin)
    ineq = [r[1:] for k, r in enumerate(rows, 1) if k not in linset]
    eq = [r[1:] for k, r in enumerate(rows, 1) if k in linset]
    return HRep(dim, tuple(ineq), tuple(eq), n=n if n is not None else _n_from(comments, dim),
                name=_name_from(comments))


def parse_vrep(text: str, n: Optional[int] = None) -> VRep:
    kind, rows, lin, comments = _parse(text)
    if kind != "V":
        raise CddFormatError("expected a V-representation")
    if not rows:
        raise CddFormatError("empty V-representation")
    dim = len(rows[0]) - 1
    linset = set(lin)
    rays, lines = [], []
    for k, r in enumerate(rows, 1):
        if r[0] != 0:
            if any(r[1:]):
                raise CddFormatError("only the origin may appear as a point of a cone")
            continue
        (lines if k in linset else rays).append(r[1:])
    return VRep(dim, tuple(rays), tuple(lines), n=n if n is not None else _n_from(comments, dim),
                name=_name_from(comments))


_COORD_TAG = "coordinates: subsets n="


def _header(name: str, n: Optional[int], comments: Iterable[str]) -> List[str]:
    out = list(comments) or ([name] if name else [])
    if n is not None:
        out.append(f"{_COORD_TAG}{n}")
    return out


def _name_from(comments: List[str]) -> str:
    return next((c for c in comments if not c.startswith(_COORD_TAG)), "")


def _n_from(comments: List[str], dim: int) -> Optional[int]:
    for c in comments:
        if c.startswith(_COORD_TAG):
            n = int(c[len(_COORD_TAG):])
            if (1 << n) - 1 != dim:
                raise CddFormatError(f"header says n={n} but rows have dimension {dim}")
            return n
    return None


def read(source: Union[str, TextIO], n: Optional[int] = None) -> Union[HRep, VRep]:
    """Parse either representation from a path or an open text stream."""
    text = source.read() if hasattr(source, "read") else open(source).read()
    kind = _parse(text)[0]
    return parse_hrep(text, n) if kind == "H" else parse_vrep(text, n)
