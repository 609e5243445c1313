"""Check records shared by all verification suites."""
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import FMat
from .field import Fp


@dataclass
class Check:
    name: str
    passed: bool
    witness: object = None
    detail: object = None
    expected_fail: bool = False

    def to_dict(self):
        d = {"name": self.name, "status": "pass" if self.passed else "fail"}
        if self.expected_fail:
            d["expected_fail"] = True
        if self.witness is not None:
            d["witness"] = jsonable(self.witness)
        if self.detail is not None:
            d["detail"] = jsonable(self.detail)
        return d


def jsonable(x):
    if isinstance(x, FMat):
        return x.to_strs()
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, Fp):
        return f"{x.v}/1"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if hasattr(x, "to_dict"):
        return x.to_dict()
    # algebra elements and group elements wrap a matrix
    for attr in ("v", "m", "matrix"):
        inner = getattr(x, attr, None)
        if isinstance(inner, FMat) or hasattr(inner, "m"):
            return jsonable(inner)
    return str(x)


def first_failure(items, pred):
    """First item for which pred is false, or None."""
    for it in items:
        if not pred(it):
            return it
    return None
