# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; mirrors :mod:`pretor._pykernels` exactly."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

ctypedef cnp.int32_t idx_t


cdef tuple _groups(idx_t[:] keys, Py_ssize_t n_obj):
    cdef Py_ssize_t n = keys.shape[0], i, m
    cdef idx_t k
    ptr = np.zeros(n_obj + 1, dtype=np.int32)
    lst = np.zeros(n, dtype=np.int32)
    pos = np.zeros(n, dtype=np.int32)
    cdef idx_t[:] p = ptr, l = lst, q = pos
    for i in range(n):
        p[keys[i] + 1] += 1
    for i in range(n_obj):
        p[i + 1] += p[i]
    fill_arr = ptr[:-1].copy()
    cdef idx_t[:] fill = fill_arr
    for m in range(n):
        k = keys[m]
        q[m] = fill[k] - p[k]
        l[fill[k]] = m
        fill[k] += 1
    return ptr, lst, pos


cdef class CompositionTable:
    cdef readonly Py_ssize_t n_obj, n_mor
    cdef idx_t[:] _src, _dst, _ident
    cdef idx_t[:] _in_ptr, _in_list, _in_pos
    cdef idx_t[:] _out_ptr, _out_list, _out_pos
    cdef idx_t[:] _off, _comp
    cdef idx_t[:] _stamp, _count, _first
    cdef int _epoch

    def __init__(self, n_obj, src, dst, ident, entries):
        cdef Py_ssize_t g, total
        self.n_obj = n_obj
        self.n_mor = len(src)
        self._src = np.asarray(src, dtype=np.int32).reshape(-1)
        self._dst = np.asarray(dst, dtype=np.int32).reshape(-1)
        self._ident = np.asarray(ident, dtype=np.int32).reshape(-1)
        self._in_ptr, self._in_list, self._in_pos = _groups(self._dst, n_obj)
        self._out_ptr, self._out_list, self._out_pos = _groups(self._src, n_obj)
        off = np.zeros(self.n_mor, dtype=np.int32)
        self._off = off
        total = 0
        for g in range(self.n_mor):
            self._off[g] = total
            total += self._in_ptr[self._src[g] + 1] - self._in_ptr[self._src[g]]
        self._comp = np.full(total, -1, dtype=np.int32)
        for g_, f_, gf_ in entries:
            if self._dst[f_] == self._src[g_]:
                self._comp[self._off[g_] + self._in_pos[f_]] = gf_
        # scratch arrays indexed by morphism; entries valid iff stamp == epoch
        self._stamp = np.zeros(max(self.n_mor, 1), dtype=np.int32)
        self._count = np.zeros(max(self.n_mor, 1), dtype=np.int32)
        self._first = np.zeros(max(self.n_mor, 1), dtype=np.int32)
        self._epoch = 0

    cdef inline int _next_epoch(self):
        self._epoch += 1
        if self._epoch == 2147483647:
            self._stamp[:] = 0
            self._epoch = 1
        return self._epoch

    cdef inline idx_t _c(self, idx_t g, idx_t f):
        return self._comp[self._off[g] + self._in_pos[f]]

    # -- basic access -------------------------------------------------------

    @property
    def src(self):
        return list(np.asarray(self._src))

    @property
    def dst(self):
        return list(np.asarray(self._dst))

    def compose(self, idx_t g, idx_t f):
        if self._dst[f] != self._src[g]:
            return -1
        return self._c(g, f)

    def incoming(self, idx_t x):
        return [int(v) for v in self._in_list[self._in_ptr[x]:self._in_ptr[x + 1]]]

    def outgoing(self, idx_t x):
        return [int(v) for v in self._out_list[self._out_ptr[x]:self._out_ptr[x + 1]]]

    def missing(self):
        cdef idx_t g, i, f
        out = []
        for g in range(self.n_mor):
            for i in range(self._in_ptr[self._src[g]], self._in_ptr[self._src[g] + 1]):
                f = self._in_list[i]
                if self._c(g, f) < 0:
                    out.append((g, f))
        return out

    # -- axioms -------------------------------------------------------------

    def assoc_violation(self):
        cdef idx_t f, g, h, gf, hg, lhs, rhs, i, j
        for f in range(self.n_mor):
            for i in range(self._out_ptr[self._dst[f]], self._out_ptr[self._dst[f] + 1]):
                g = self._out_list[i]
                gf = self._c(g, f)
                if gf < 0:
                    continue
                for j in range(self._out_ptr[self._dst[g]], self._out_ptr[self._dst[g] + 1]):
                    h = self._out_list[j]
                    hg = self._c(h, g)
                    if hg < 0:
                        continue
                    lhs = self._c(hg, f)
                    rhs = self._c(h, gf)
                    if lhs < 0 or rhs < 0:
                        continue
                    if lhs != rhs:
                        return (f, g, h)
        return None

    # -- elementary predicates ------------------------------------------------

    def mono_witness(self, idx_t f):
        cdef int ep = self._next_epoch()
        cdef idx_t i, u, c
        cdef idx_t s = self._src[f]
        for i in range(self._in_ptr[s], self._in_ptr[s + 1]):
            u = self._in_list[i]
            c = self._c(f, u)
            if c < 0:
                continue
            if self._stamp[c] == ep:
                return (self._first[c], u)
            self._stamp[c] = ep
            self._first[c] = u
        return None

    def epi_witness(self, idx_t f):
        cdef int ep = self._next_epoch()
        cdef idx_t i, v, c
        cdef idx_t d = self._dst[f]
        for i in range(self._out_ptr[d], self._out_ptr[d + 1]):
            v = self._out_list[i]
            c = self._c(v, f)
            if c < 0:
                continue
            if self._stamp[c] == ep:
                return (self._first[c], v)
            self._stamp[c] = ep
            self._first[c] = v
        return None

    def mono_flags(self):
        return [self.mono_witness(f) is None for f in range(self.n_mor)]

    def epi_flags(self):
        return [self.epi_witness(f) is None for f in range(self.n_mor)]

    def iso_inverse(self, idx_t f):
        cdef idx_t a = self._src[f], b = self._dst[f], i, g
        for i in range(self._out_ptr[b], self._out_ptr[b + 1]):
            g = self._out_list[i]
            if self._dst[g] != a:
                continue
            if self._c(g, f) == self._ident[a] and self._c(f, g) == self._ident[b]:
                return g
        return -1

    # -- ideals -------------------------------------------------------------

    def generated_ideal(self, const unsigned char[:] zmask):
        cdef idx_t z, i, j, p, q, c
        out = bytearray(self.n_mor)
        cdef unsigned char[:] o = out
        for z in range(self.n_obj):
            if not zmask[z]:
                continue
            for j in range(self._out_ptr[z], self._out_ptr[z + 1]):
                q = self._out_list[j]
                for i in range(self._in_ptr[z], self._in_ptr[z + 1]):
                    p = self._in_list[i]
                    c = self._c(q, p)
                    if c >= 0:
                        o[c] = 1
        return bytes(out)

    def closure_violation(self, const unsigned char[:] mask):
        cdef idx_t g, i, f, c
        for g in range(self.n_mor):
            for i in range(self._in_ptr[self._src[g]], self._in_ptr[self._src[g] + 1]):
                f = self._in_list[i]
                if mask[g] or mask[f]:
                    c = self._c(g, f)
                    if c >= 0 and not mask[c]:
                        return (g, f)
        return None

    # -- kernels and cokernels -------------------------------------------------

    cdef idx_t _kernel_fail(self, const unsigned char[:] null, idx_t k, idx_t f, bint unique):
        cdef idx_t fk, i, w, c, u, n
        cdef int ep
        if self._dst[k] != self._src[f]:
            return -2
        fk = self._c(f, k)
        if fk < 0 or not null[fk]:
            return -2
        ep = self._next_epoch()
        for i in range(self._in_ptr[self._src[k]], self._in_ptr[self._src[k] + 1]):
            w = self._in_list[i]
            c = self._c(k, w)
            if c < 0:
                continue
            if self._stamp[c] != ep:
                self._stamp[c] = ep
                self._count[c] = 0
            self._count[c] += 1
        for i in range(self._in_ptr[self._dst[k]], self._in_ptr[self._dst[k] + 1]):
            u = self._in_list[i]
            c = self._c(f, u)
            if c >= 0 and null[c]:
                n = self._count[u] if self._stamp[u] == ep else 0
                if n == 0 or (unique and n > 1):
                    return u
        return -1

    cdef idx_t _cokernel_fail(self, const unsigned char[:] null, idx_t c, idx_t f, bint unique):
        cdef idx_t cf, i, w, r, v, n
        cdef int ep
        if self._dst[f] != self._src[c]:
            return -2
        cf = self._c(c, f)
        if cf < 0 or not null[cf]:
            return -2
        ep = self._next_epoch()
        for i in range(self._out_ptr[self._dst[c]], self._out_ptr[self._dst[c] + 1]):
            w = self._out_list[i]
            r = self._c(w, c)
            if r < 0:
                continue
            if self._stamp[r] != ep:
                self._stamp[r] = ep
                self._count[r] = 0
            self._count[r] += 1
        for i in range(self._out_ptr[self._src[c]], self._out_ptr[self._src[c] + 1]):
            v = self._out_list[i]
            r = self._c(v, f)
            if r >= 0 and null[r]:
                n = self._count[v] if self._stamp[v] == ep else 0
                if n == 0 or (unique and n > 1):
                    return v
        return -1

    def kernel_fail(self, const unsigned char[:] null, idx_t k, idx_t f, bint unique):
        return self._kernel_fail(null, k, f, unique)

    def cokernel_fail(self, const unsigned char[:] null, idx_t c, idx_t f, bint unique):
        return self._cokernel_fail(null, c, f, unique)

    def ses_pairs(self, const unsigned char[:] null, idx_t x,
                  const unsigned char[:] tmask, const unsigned char[:] fmask,
                  bint first_only):
        cdef idx_t i, j, m, e, em
        found = []
        for i in range(self._in_ptr[x], self._in_ptr[x + 1]):
            m = self._in_list[i]
            if not tmask[self._src[m]]:
                continue
            for j in range(self._out_ptr[x], self._out_ptr[x + 1]):
                e = self._out_list[j]
                if not fmask[self._dst[e]]:
                    continue
                em = self._c(e, m)
                if em < 0 or not null[em]:
                    continue
                if self._kernel_fail(null, m, e, True) != -1:
                    continue
                if self._cokernel_fail(null, e, m, True) != -1:
                    continue
                found.append((m, e))
                if first_only:
                    return found
        return found
