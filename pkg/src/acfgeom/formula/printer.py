from __future__ import annotations

from .ast import And, Atom, Exists, FalseF, Forall, InfMany, Not, Or, TrueF

_QUANT_KW = {Exists: "E", Forall: "A", InfMany: "Einf"}


def to_text(f) -> str:
    """Render ``f`` in the concrete grammar; parsing the result gives ``f`` back."""
    if isinstance(f, Or):
        return " | ".join(_unary(a) for a in f.args)
    if isinstance(f, And):
        return " & ".join(_unary(a) for a in f.args)
    return _unary(f)


def _unary(f) -> str:
    if isinstance(f, TrueF):
        return "true"
    if isinstance(f, FalseF):
        return "false"
    if isinstance(f, Atom):
        return f"{f.poly} {f.rel} 0"
    if isinstance(f, Not):
        return "!" + _unary(f.arg)
    if isinstance(f, (Exists, Forall, InfMany)):
        return f"{_QUANT_KW[type(f)]} {f.var}. ({to_text(f.body)})"
    if isinstance(f, (And, Or)):
        return f"({to_text(f)})"
    raise TypeError(f"not a formula: {f!r}")
