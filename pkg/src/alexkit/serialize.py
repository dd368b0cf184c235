"""JSON forms of the library's values.

Rationals are written as ``"p/q"`` strings (``"p"`` for integers) so that a
dump followed by a load reproduces the value exactly.
"""
from __future__ import annotations

import re
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction

from .alexiewicz import StepFunction
from .compact import CompactSet, make_compact_set
from .compatibility import FiberMatching, GapCorrespondence, Incompatibility
from .errors import AlexkitError
from .isometry import IsometryDescriptor
from .lifting import LiftedMap
from .numeric import PiecewiseLinear

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
_CTX17 = Context(prec=17, rounding=ROUND_HALF_EVEN)


class SchemaError(AlexkitError):
    """Input JSON does not have the documented shape."""


def rat(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise SchemaError(f"expected a rational string, got {text!r}")
    text = str(text).strip()
    if not _RATIONAL.match(text):
        raise SchemaError(f"malformed rational {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError as exc:
        raise SchemaError(f"zero denominator in {text!r}") from exc


def rstr(q: Fraction) -> str:
    return str(q)


def decimal17(q: Fraction) -> str:
    """17 significant digits, round-half-even, computed from the exact rational."""
    d = _CTX17.divide(Decimal(q.numerator), Decimal(q.denominator))
    return format(d, "g") if d != 0 else "0"


def _need(doc, key):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"missing key {key!r}")
    return doc[key]


def pl_to_json(f: PiecewiseLinear) -> dict:
    return {"breakpoints": [rstr(t) for t in f.breakpoints], "values": [rstr(v) for v in f.values]}


def pl_from_json(doc) -> PiecewiseLinear:
    bps = _need(doc, "breakpoints")
    if not isinstance(bps, list):
        raise SchemaError("breakpoints must be a list")
    if "values" not in doc and all(isinstance(p, list) and len(p) == 2 for p in bps):
        # accepted alternative: breakpoints given as [t, value] pairs
        return PiecewiseLinear(tuple(rat(t) for t, _ in bps), tuple(rat(v) for _, v in bps))
    vals = _need(doc, "values")
    if not isinstance(vals, list):
        raise SchemaError("values must be a list")
    return PiecewiseLinear(tuple(rat(t) for t in bps), tuple(rat(v) for v in vals))


def set_to_json(K: CompactSet) -> dict:
    return {"components": [[rstr(a), rstr(b)] for a, b in K.components]}


def set_from_json(doc) -> CompactSet:
    comps = _need(doc, "components")
    if not isinstance(comps, list) or not all(isinstance(c, list) and len(c) == 2 for c in comps):
        raise SchemaError("components must be a list of [a, b] pairs")
    return make_compact_set([(rat(a), rat(b)) for a, b in comps])


def step_to_json(f: StepFunction) -> dict:
    return {
        "domain": set_to_json(f.domain),
        "t_breaks": [rstr(t) for t in f.t_breaks],
        "values": [rstr(v) for v in f.values],
    }


def step_from_json(doc, domain: CompactSet = None) -> StepFunction:
    K = domain if domain is not None else set_from_json(_need(doc, "domain"))
    ts = _need(doc, "t_breaks")
    vs = _need(doc, "values")
    return StepFunction(K, tuple(rat(t) for t in ts), tuple(rat(v) for v in vs))


def descriptor_to_json(D: IsometryDescriptor) -> dict:
    return {
        "sign": D.sign,
        "psi": pl_to_json(D.psi),
        "source": set_to_json(D.source),
        "target": set_to_json(D.target),
    }


def descriptor_from_json(doc) -> IsometryDescriptor:
    sign = _need(doc, "sign")
    if sign not in (1, -1) or isinstance(sign, bool):
        raise SchemaError("sign must be 1 or -1")
    return IsometryDescriptor(
        sign,
        pl_from_json(_need(doc, "psi")),
        set_from_json(_need(doc, "source")),
        set_from_json(_need(doc, "target")),
    )


def lifted_to_json(phi: LiftedMap) -> dict:
    return {
        "source": set_to_json(phi.source),
        "target": set_to_json(phi.target),
        "psi": pl_to_json(phi.psi),
        "component_pieces": [pl_to_json(p) for p in phi.component_pieces],
        "point_images": {rstr(y): rstr(x) for y, x in sorted(phi.point_images.items())},
        "lip_forward": rstr(phi.lip_forward),
        "lip_inverse": rstr(phi.lip_inverse),
    }


def lifted_from_json(doc) -> LiftedMap:
    images = _need(doc, "point_images")
    if not isinstance(images, dict):
        raise SchemaError("point_images must be an object")
    return LiftedMap(
        set_from_json(_need(doc, "source")),
        set_from_json(_need(doc, "target")),
        pl_from_json(_need(doc, "psi")),
        tuple(pl_from_json(p) for p in _need(doc, "component_pieces")),
        {rat(y): rat(x) for y, x in images.items()},
        rat(_need(doc, "lip_forward")),
        rat(_need(doc, "lip_inverse")),
    )


def incompatibility_to_json(r: Incompatibility) -> dict:
    doc = {"compatible": False, "reason": r.reason, "level": rstr(r.level), "image": rstr(r.image)}
    if r.m_count is not None:
        doc["m_fiber_size"] = r.m_count
        doc["k_fiber_size"] = r.k_count
    return doc


def matching_to_json(m: FiberMatching) -> dict:
    return {
        "compatible": True,
        "levels": [
            {
                "level": rstr(s),
                "image": rstr(t),
                "isomorphism": [[rstr(y), rstr(x)] for y, x in m.isomorphisms[s]],
            }
            for s, t in m.level_pairs
        ],
    }


def correspondence_to_json(c: GapCorrespondence) -> dict:
    return {
        "pairs": [
            {
                "U": [rstr(p.U.left), rstr(p.U.right)],
                "V": [rstr(p.V.left), rstr(p.V.right)],
                "ratio": rstr(p.ratio),
            }
            for p in c.pairs
        ],
        "constant": rstr(c.constant),
    }


def _floatify(value):
    if isinstance(value, str) and _RATIONAL.match(value):
        return float(Fraction(value))
    if isinstance(value, list):
        out = [_floatify(v) for v in value]
        return out if all(o is not None for o in out) else None
    return None


def add_floats(doc):
    """Add a ``<key>_float`` sibling next to every rational-valued field; nothing is replaced."""
    if isinstance(doc, list):
        return [add_floats(v) for v in doc]
    if not isinstance(doc, dict):
        return doc
    out = {}
    for key, value in doc.items():
        out[key] = add_floats(value)
        fl = _floatify(value)
        if fl is not None and not (isinstance(value, list) and not value):
            out[f"{key}_float"] = fl
    return out
