"""Readable names for modules and objects of the morphism category."""
from __future__ import annotations

from .modcat import _indecomposable_iso, is_indecomposable, radical, socle, top
from .modules import Module, injective_module, projective_module, simple_module


def dims_str(dims) -> str:
    return "(" + ",".join(str(d) for d in dims) + ")"


def loewy(M: Module) -> str | None:
    """[v1;v2;...] listing radical layers top down, when every layer is simple."""
    A = M.algebra
    layers = []
    X = M
    while X.dim:
        T, _ = top(X)
        if T.dim != 1:
            return None
        layers.append(str(A.vertices[T.dims.index(1)]))
        X, _ = radical(X)
    return "[" + ";".join(layers) + "]" if layers else "0"


def shorthand(M: Module) -> str | None:
    """S<v>, P<v> or I<v> when M is isomorphic to one of those."""
    A = M.algebra
    if M.dim == 0 or not is_indecomposable(M):
        return None
    if M.dim == 1:
        return f"S{A.vertices[M.dims.index(1)]}"
    T, _ = top(M)
    if T.dim == 1:
        v = T.dims.index(1)
        P = projective_module(A, (v,))
        if P.dims == M.dims and _indecomposable_iso(P, M) is not None:
            return f"P{A.vertices[v]}"
    S, _ = socle(M)
    if S.dim == 1:
        v = S.dims.index(1)
        I = injective_module(A, (v,))
        if I.dims == M.dims and _indecomposable_iso(I, M) is not None:
            return f"I{A.vertices[v]}"
    return None


def module_name(M: Module) -> str:
    """S<v> for simples, Loewy notation for uniserials, then P<v>/I<v>, then the dim vector."""
    if M.dim == 0:
        return "0"
    if M.dim == 1:
        return shorthand(M)
    return loewy(M) or shorthand(M) or dims_str(M.dims)


def _end_name(M: Module) -> str:
    if M.proj_labels is not None:
        if not M.proj_labels:
            return "0"
        return "+".join(f"P{M.algebra.vertices[v]}" for v in M.proj_labels)
    return module_name(M)


def object_name(X) -> str:
    """(dom -> cod); labeled projective ends are written P<v>, other ends by module name."""
    return f"({_end_name(X.dom)}->{_end_name(X.cod)})"


def resolve_shorthand(A, token: str) -> Module | None:
    """Parse S<v>, P<v>, I<v> into the corresponding module, or None."""
    if len(token) < 2 or token[0] not in "SPI":
        return None
    rest = token[1:]
    names = {str(v): i for i, v in enumerate(A.vertices)}
    if rest not in names:
        return None
    v = names[rest]
    if token[0] == "S":
        return simple_module(A, A.vertices[v])
    if token[0] == "P":
        return projective_module(A, (v,))
    return injective_module(A, (v,))
