"""Pure-Python search kernels.

Reference semantics for :mod:`pretor._ckernels`; both expose the same
``CompositionTable`` API and must return identical results, including the
choice of witness (always the least in morphism index order).

Layout: morphisms are grouped by codomain (``in_list``) and by domain
(``out_list``).  The composite ``g∘f`` lives at
``comp[comp_off[g] + in_pos[f]]``, which is only meaningful when
``dst[f] == src[g]``.  Missing composites are stored as -1.
"""

BACKEND = "python"


def _groups(keys, n_obj):
    ptr = [0] * (n_obj + 1)
    for k in keys:
        ptr[k + 1] += 1
    for i in range(n_obj):
        ptr[i + 1] += ptr[i]
    fill = ptr[:-1]
    lst = [0] * len(keys)
    pos = [0] * len(keys)
    for m, k in enumerate(keys):
        pos[m] = fill[k] - ptr[k]
        lst[fill[k]] = m
        fill[k] += 1
    return ptr, lst, pos


class CompositionTable:
    """Index-level view of a finite category used by the exhaustive searches."""

    def __init__(self, n_obj, src, dst, ident, entries):
        self.n_obj = n_obj
        self.n_mor = len(src)
        self.src = list(src)
        self.dst = list(dst)
        self.ident = list(ident)
        self.in_ptr, self.in_list, self.in_pos = _groups(self.dst, n_obj)
        self.out_ptr, self.out_list, self.out_pos = _groups(self.src, n_obj)
        off = [0] * self.n_mor
        total = 0
        for g in range(self.n_mor):
            off[g] = total
            s = self.src[g]
            total += self.in_ptr[s + 1] - self.in_ptr[s]
        self.comp_off = off
        self.comp = [-1] * total
        for g, f, gf in entries:
            if self.dst[f] == self.src[g]:
                self.comp[off[g] + self.in_pos[f]] = gf

    # -- basic access -------------------------------------------------------

    def compose(self, g, f):
        if self.dst[f] != self.src[g]:
            return -1
        return self.comp[self.comp_off[g] + self.in_pos[f]]

    def incoming(self, x):
        return self.in_list[self.in_ptr[x]:self.in_ptr[x + 1]]

    def outgoing(self, x):
        return self.out_list[self.out_ptr[x]:self.out_ptr[x + 1]]

    def missing(self):
        """Composable pairs ``(g, f)`` with no stored composite, in (g, f) order."""
        out = []
        for g in range(self.n_mor):
            base = self.comp_off[g]
            for f in self.incoming(self.src[g]):
                if self.comp[base + self.in_pos[f]] < 0:
                    out.append((g, f))
        return out

    # -- axioms -------------------------------------------------------------

    def assoc_violation(self):
        """Least ``(f, g, h)`` with ``(h∘g)∘f != h∘(g∘f)``, or None.

        Triples where a composite is missing are skipped; totality is
        reported separately by :meth:`missing`.
        """
        comp, off, pos = self.comp, self.comp_off, self.in_pos
        for f in range(self.n_mor):
            for g in self.outgoing(self.dst[f]):
                gf = comp[off[g] + pos[f]]
                if gf < 0:
                    continue
                for h in self.outgoing(self.dst[g]):
                    hg = comp[off[h] + pos[g]]
                    if hg < 0:
                        continue
                    lhs = comp[off[hg] + pos[f]]
                    rhs = comp[off[h] + pos[gf]]
                    if lhs < 0 or rhs < 0:
                        continue
                    if lhs != rhs:
                        return (f, g, h)
        return None

    # -- elementary predicates ------------------------------------------------

    def mono_witness(self, f):
        """Least colliding pair ``(u, v)`` with ``f∘u == f∘v``, or None."""
        seen = {}
        base = self.comp_off[f]
        for u in self.incoming(self.src[f]):
            c = self.comp[base + self.in_pos[u]]
            if c < 0:
                continue
            if c in seen:
                return (seen[c], u)
            seen[c] = u
        return None

    def epi_witness(self, f):
        seen = {}
        p = self.in_pos[f]
        for v in self.outgoing(self.dst[f]):
            c = self.comp[self.comp_off[v] + p]
            if c < 0:
                continue
            if c in seen:
                return (seen[c], v)
            seen[c] = v
        return None

    def mono_flags(self):
        return [self.mono_witness(f) is None for f in range(self.n_mor)]

    def epi_flags(self):
        return [self.epi_witness(f) is None for f in range(self.n_mor)]

    def iso_inverse(self, f):
        a, b = self.src[f], self.dst[f]
        for g in self.outgoing(b):
            if self.dst[g] != a:
                continue
            if self.compose(g, f) == self.ident[a] and self.compose(f, g) == self.ident[b]:
                return g
        return -1

    # -- ideals -------------------------------------------------------------

    def generated_ideal(self, zmask):
        """Mask of morphisms factoring through an object flagged in ``zmask``."""
        out = bytearray(self.n_mor)
        for z in range(self.n_obj):
            if not zmask[z]:
                continue
            ins = self.incoming(z)
            for q in self.outgoing(z):
                base = self.comp_off[q]
                for p in ins:
                    c = self.comp[base + self.in_pos[p]]
                    if c >= 0:
                        out[c] = 1
        return bytes(out)

    def closure_violation(self, mask):
        """Least ``(g, f)`` with one side in ``mask`` but ``g∘f`` outside it."""
        for g in range(self.n_mor):
            base = self.comp_off[g]
            for f in self.incoming(self.src[g]):
                if mask[g] or mask[f]:
                    c = self.comp[base + self.in_pos[f]]
                    if c >= 0 and not mask[c]:
                        return (g, f)
        return None

    # -- kernels and cokernels -------------------------------------------------

    def kernel_fail(self, null, k, f, unique):
        """-1 if ``k`` is a kernel of ``f`` relative to ``null``.

        Returns -2 when ``f∘k`` is not null, otherwise the least ``u`` with
        ``f∘u`` null that fails to factor (uniquely, if ``unique``) through ``k``.
        """
        fk = self.compose(f, k)
        if fk < 0 or not null[fk]:
            return -2
        counts = {}
        base = self.comp_off[k]
        for w in self.incoming(self.src[k]):
            c = self.comp[base + self.in_pos[w]]
            counts[c] = counts.get(c, 0) + 1
        fbase = self.comp_off[f]
        for u in self.incoming(self.dst[k]):
            fu = self.comp[fbase + self.in_pos[u]]
            if fu >= 0 and null[fu]:
                n = counts.get(u, 0)
                if n == 0 or (unique and n > 1):
                    return u
        return -1

    def cokernel_fail(self, null, c, f, unique):
        cf = self.compose(c, f)
        if cf < 0 or not null[cf]:
            return -2
        counts = {}
        p = self.in_pos[c]
        for w in self.outgoing(self.dst[c]):
            r = self.comp[self.comp_off[w] + p]
            counts[r] = counts.get(r, 0) + 1
        fp = self.in_pos[f]
        for v in self.outgoing(self.src[c]):
            vf = self.comp[self.comp_off[v] + fp]
            if vf >= 0 and null[vf]:
                n = counts.get(v, 0)
                if n == 0 or (unique and n > 1):
                    return v
        return -1

    def ses_pairs(self, null, x, tmask, fmask, first_only):
        """All ``(m, e)`` through object ``x`` forming a short exact sequence.

        ``m`` ranges over morphisms into ``x`` with domain in ``tmask`` and
        ``e`` over morphisms out of ``x`` with codomain in ``fmask``, both in
        index order.
        """
        found = []
        for m in self.incoming(x):
            if not tmask[self.src[m]]:
                continue
            for e in self.outgoing(x):
                if not fmask[self.dst[e]]:
                    continue
                em = self.comp[self.comp_off[e] + self.in_pos[m]]
                if em < 0 or not null[em]:
                    continue
                if self.kernel_fail(null, m, e, True) != -1:
                    continue
                if self.cokernel_fail(null, e, m, True) != -1:
                    continue
                found.append((m, e))
                if first_only:
                    return found
        return found
