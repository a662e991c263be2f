"""Coends as ordinary coequalizers, and the tensor-over-E coequalizer."""
from __future__ import annotations

from ..core import InputError


def coend(C, Hobj, Hmor, backend):
    """∫^c H(c, c) for a finite category ``C``.

    ``Hobj(c, d)`` is an object; ``Hmor(f, g)`` for ``f: c'→c`` and ``g: d→d'`` is the
    map H(c, d) → H(c', d').  Computed as the coequalizer of
    ⊔_{f: c→d} H(d, c) ⇉ ⊔_c H(c, c).  The result carries ``injections[c]``.
    """
    diag = [Hobj(c, c) for c in C.objects]
    fams = [(f, C.src[f], C.tgt[f]) for f in C.morphisms]
    srcs = [Hobj(d, c) for f, c, d in fams]
    top = backend.coproduct(srcs)
    bot = backend.coproduct(diag)
    pos = {c: i for i, c in enumerate(C.objects)}
    left_maps, right_maps = [], []
    for k, (f, c, d) in enumerate(fams):
        lf = Hmor(f, C.ident[c])          # H(d,c) → H(c,c)
        rf = Hmor(C.ident[d], f)          # H(d,c) → H(d,d)
        left_maps.append(backend.compose(backend.coproj(diag, pos[c]), lf))
        right_maps.append(backend.compose(backend.coproj(diag, pos[d]), rf))
    left = backend.cotuple(srcs, bot, left_maps)
    right = backend.cotuple(srcs, bot, right_maps)
    # identities give a common section
    sec_maps = []
    for i, c in enumerate(C.objects):
        k = next(k for k, (f, a, b) in enumerate(fams) if f == C.ident[c])
        sec_maps.append(backend.coproj(srcs, k))
    section = backend.cotuple(diag, top, sec_maps)
    data = backend.coequalizer(left, right, section)
    data.injections = {c: backend.compose(data.q, backend.coproj(diag, pos[c])) for c in C.objects}
    return data


def tensor_over(U, rho, E, M, lam, backend=None):
    """U ⊗_E M as the coequalizer of (ρ⊗M)∘a and U⊗λ : U⊗(E⊗M) ⇉ U⊗M.

    ``rho: U×E → U`` is a right action in finite sets, ``lam: E⊗M → M`` a left action in
    the backend of ``M``.  Works at the Set level too (``M`` a finite set).
    """
    B = backend or M.base.backend
    V = B.V
    if rho.dom.base is not V.copower(U, E) or lam.dom.base is not B.copower(E, M.base):
        raise InputError("tensor_over: action shapes do not match")
    idM = B.identity(M.base)
    first = B.compose(B.copower_map(rho, idM), B.assoc(U, E, M.base))
    second = B.copower_map(V.identity(U), lam)
    return B.coequalizer(first, second)
