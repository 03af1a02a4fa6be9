# cython: language_level=3
"""Compiled versions of the kernels in ``_pykernels``.

Same algorithms, same tie-breaking, same outputs.  Scores are 64-bit here,
so ``_backend`` only routes inputs whose sums fit comfortably.
"""

from array import array

cimport cython
from libc.stdlib cimport malloc, free


cdef class _Blossom:
    cdef int n
    cdef list edges
    cdef long long[:] ew
    cdef long long[:] endpoint
    cdef list neighbend
    cdef long long[:] mate
    cdef long long[:] label
    cdef long long[:] labelend
    cdef long long[:] inblossom
    cdef long long[:] blossomparent
    cdef list blossomchilds
    cdef long long[:] blossombase
    cdef list blossomendps
    cdef long long[:] bestedge
    cdef list blossombestedges
    cdef list unusedblossoms
    cdef long long[:] dualvar
    cdef long long[:] allowedge
    cdef list queue

    def __init__(self, int n, list edges):
        cdef Py_ssize_t nedge = len(edges), k
        cdef long long maxweight = 0
        self.n = n
        self.edges = edges
        self.ew = array("q", [0] * nedge)
        self.endpoint = array("q", [0] * (2 * nedge))
        self.neighbend = [[] for _ in range(n)]
        for k in range(nedge):
            i, j, w = edges[k]
            self.ew[k] = w
            if w > maxweight:
                maxweight = w
            self.endpoint[2 * k] = i
            self.endpoint[2 * k + 1] = j
            self.neighbend[i].append(2 * k + 1)
            self.neighbend[j].append(2 * k)
        self.mate = array("q", [-1] * n)
        self.label = array("q", [0] * (2 * n))
        self.labelend = array("q", [-1] * (2 * n))
        self.inblossom = array("q", range(n))
        self.blossomparent = array("q", [-1] * (2 * n))
        self.blossomchilds = [None] * (2 * n)
        self.blossombase = array("q", list(range(n)) + [-1] * n)
        self.blossomendps = [None] * (2 * n)
        self.bestedge = array("q", [-1] * (2 * n))
        self.blossombestedges = [None] * (2 * n)
        self.unusedblossoms = list(range(n, 2 * n))
        self.dualvar = array("q", [maxweight] * n + [0] * n)
        self.allowedge = array("q", [0] * nedge)
        self.queue = []

    cdef inline long long slack(self, long long k):
        return (self.dualvar[self.endpoint[2 * k]] + self.dualvar[self.endpoint[2 * k + 1]]
                - 2 * self.ew[k])

    cdef list leaves(self, long long b):
        if b < self.n:
            return [b]
        cdef list out = []
        cdef list stack = [b]
        cdef long long x
        while stack:
            x = stack.pop()
            if x < self.n:
                out.append(x)
            else:
                stack.extend(reversed(self.blossomchilds[x]))
        return out

    cdef void assign_label(self, long long w, long long t, long long p):
        cdef long long b, base
        while True:
            b = self.inblossom[w]
            self.label[w] = t
            self.label[b] = t
            self.labelend[w] = p
            self.labelend[b] = p
            self.bestedge[w] = -1
            self.bestedge[b] = -1
            if t == 1:
                self.queue.extend(self.leaves(b))
                return
            base = self.blossombase[b]
            p = self.mate[base] ^ 1
            w = self.endpoint[self.mate[base]]
            t = 1

    cdef long long scan_blossom(self, long long v, long long w):
        cdef list path = []
        cdef long long base = -1, b
        while v != -1 or w != -1:
            b = self.inblossom[v]
            if self.label[b] & 4:
                base = self.blossombase[b]
                break
            path.append(b)
            self.label[b] = 5
            if self.labelend[b] == -1:
                v = -1
            else:
                v = self.endpoint[self.labelend[b]]
                b = self.inblossom[v]
                v = self.endpoint[self.labelend[b]]
            if w != -1:
                v, w = w, v
        for b in path:
            self.label[b] = 1
        return base

    cdef void add_blossom(self, long long base, long long k):
        cdef long long v = self.endpoint[2 * k], w = self.endpoint[2 * k + 1]
        cdef long long bb = self.inblossom[base], bv = self.inblossom[v], bw = self.inblossom[w]
        cdef long long b = self.unusedblossoms.pop()
        cdef long long x, i, j, bj, e, cur, sub
        cdef list path = [], endps = [], nblists, nblist, best
        cdef dict bestedgeto = {}
        self.blossombase[b] = base
        self.blossomparent[b] = -1
        self.blossomparent[bb] = b
        self.blossomchilds[b] = path
        self.blossomendps[b] = endps
        while bv != bb:
            self.blossomparent[bv] = b
            path.append(bv)
            endps.append(self.labelend[bv])
            v = self.endpoint[self.labelend[bv]]
            bv = self.inblossom[v]
        path.append(bb)
        path.reverse()
        endps.reverse()
        endps.append(2 * k)
        while bw != bb:
            self.blossomparent[bw] = b
            path.append(bw)
            endps.append(self.labelend[bw] ^ 1)
            w = self.endpoint[self.labelend[bw]]
            bw = self.inblossom[w]
        self.label[b] = 1
        self.labelend[b] = self.labelend[bb]
        self.dualvar[b] = 0
        for x in self.leaves(b):
            if self.label[self.inblossom[x]] == 2:
                self.queue.append(x)
            self.inblossom[x] = b
        for sub in path:
            if self.blossombestedges[sub] is None:
                nblists = [[p // 2 for p in self.neighbend[x]] for x in self.leaves(sub)]
            else:
                nblists = [self.blossombestedges[sub]]
            for nblist in nblists:
                for e in nblist:
                    i = self.endpoint[2 * e]
                    j = self.endpoint[2 * e + 1]
                    if self.inblossom[j] == b:
                        i, j = j, i
                    bj = self.inblossom[j]
                    if bj != b and self.label[bj] == 1:
                        cur = bestedgeto.get(bj, -1)
                        if cur == -1 or self.slack(e) < self.slack(cur):
                            bestedgeto[bj] = e
            self.blossombestedges[sub] = None
            self.bestedge[sub] = -1
        best = [bestedgeto[j] for j in sorted(bestedgeto)]
        self.blossombestedges[b] = best
        self.bestedge[b] = -1
        for e in best:
            if self.bestedge[b] == -1 or self.slack(e) < self.slack(self.bestedge[b]):
                self.bestedge[b] = e

    @cython.wraparound(True)
    cdef void expand_blossom(self, long long b, bint endstage):
        cdef long long s, x, j, jstep, trick, p, bv, entrychild
        cdef list childs, endps
        for s in self.blossomchilds[b]:
            self.blossomparent[s] = -1
            if s < self.n:
                self.inblossom[s] = s
            elif endstage and self.dualvar[s] == 0:
                self.expand_blossom(s, endstage)
            else:
                for x in self.leaves(s):
                    self.inblossom[x] = s
        if not endstage and self.label[b] == 2:
            childs = self.blossomchilds[b]
            endps = self.blossomendps[b]
            entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]]
            j = childs.index(entrychild)
            if j & 1:
                j -= len(childs)
                jstep = 1
                trick = 0
            else:
                jstep = -1
                trick = 1
            p = self.labelend[b]
            while j != 0:
                self.label[self.endpoint[p ^ 1]] = 0
                self.label[self.endpoint[<long long>endps[j - trick] ^ trick ^ 1]] = 0
                self.assign_label(self.endpoint[p ^ 1], 2, p)
                self.allowedge[<long long>endps[j - trick] // 2] = 1
                j += jstep
                p = <long long>endps[j - trick] ^ trick
                self.allowedge[p // 2] = 1
                j += jstep
            bv = childs[j]
            self.label[self.endpoint[p ^ 1]] = 2
            self.label[bv] = 2
            self.labelend[self.endpoint[p ^ 1]] = p
            self.labelend[bv] = p
            self.bestedge[bv] = -1
            j += jstep
            while <long long>childs[j] != entrychild:
                bv = childs[j]
                if self.label[bv] == 1:
                    j += jstep
                    continue
                for x in self.leaves(bv):
                    if self.label[x] != 0:
                        self.label[x] = 0
                        self.label[self.endpoint[self.mate[self.blossombase[bv]]]] = 0
                        self.assign_label(x, 2, self.labelend[x])
                        break
                j += jstep
        self.label[b] = -1
        self.labelend[b] = -1
        self.blossomchilds[b] = None
        self.blossomendps[b] = None
        self.blossombase[b] = -1
        self.blossombestedges[b] = None
        self.bestedge[b] = -1
        self.unusedblossoms.append(b)

    @cython.wraparound(True)
    cdef void augment_blossom(self, long long b, long long v):
        cdef long long t = v, i, j, jstep, trick, p
        cdef list childs, endps
        while self.blossomparent[t] != b:
            t = self.blossomparent[t]
        if t >= self.n:
            self.augment_blossom(t, v)
        childs = self.blossomchilds[b]
        endps = self.blossomendps[b]
        i = childs.index(t)
        j = i
        if i & 1:
            j -= len(childs)
            jstep = 1
            trick = 0
        else:
            jstep = -1
            trick = 1
        while j != 0:
            j += jstep
            t = childs[j]
            p = <long long>endps[j - trick] ^ trick
            if t >= self.n:
                self.augment_blossom(t, self.endpoint[p])
            j += jstep
            t = childs[j]
            if t >= self.n:
                self.augment_blossom(t, self.endpoint[p ^ 1])
            self.mate[self.endpoint[p]] = p ^ 1
            self.mate[self.endpoint[p ^ 1]] = p
        self.blossomchilds[b] = childs[i:] + childs[:i]
        self.blossomendps[b] = endps[i:] + endps[:i]
        self.blossombase[b] = self.blossombase[<long long>self.blossomchilds[b][0]]

    cdef void augment_matching(self, long long k):
        cdef long long s, p, bs, t, bt, j, r
        for r in range(2):
            if r == 0:
                s = self.endpoint[2 * k]
                p = 2 * k + 1
            else:
                s = self.endpoint[2 * k + 1]
                p = 2 * k
            while True:
                bs = self.inblossom[s]
                if bs >= self.n:
                    self.augment_blossom(bs, s)
                self.mate[s] = p
                if self.labelend[bs] == -1:
                    break
                t = self.endpoint[self.labelend[bs]]
                bt = self.inblossom[t]
                s = self.endpoint[self.labelend[bt]]
                j = self.endpoint[self.labelend[bt] ^ 1]
                if bt >= self.n:
                    self.augment_blossom(bt, j)
                self.mate[j] = self.labelend[bt]
                p = self.labelend[bt] ^ 1

    cdef bint stage(self):
        cdef long long n = self.n, i, v, w, k, p, kslack, lw, base, b, d, lv
        cdef long long delta, deltatype, deltaedge, deltablossom
        for i in range(2 * n):
            self.label[i] = 0
            self.bestedge[i] = -1
        for i in range(n, 2 * n):
            self.blossombestedges[i] = None
        for i in range(self.allowedge.shape[0]):
            self.allowedge[i] = 0
        self.queue.clear()
        for v in range(n):
            if self.mate[v] == -1 and self.label[self.inblossom[v]] == 0:
                self.assign_label(v, 1, -1)

        while True:
            while self.queue:
                v = self.queue.pop()
                for p in self.neighbend[v]:
                    k = p // 2
                    w = self.endpoint[p]
                    if self.inblossom[v] == self.inblossom[w]:
                        continue
                    kslack = 0
                    if not self.allowedge[k]:
                        kslack = self.slack(k)
                        if kslack <= 0:
                            self.allowedge[k] = 1
                    if self.allowedge[k]:
                        lw = self.label[self.inblossom[w]]
                        if lw == 0:
                            self.assign_label(w, 2, p ^ 1)
                        elif lw == 1:
                            base = self.scan_blossom(v, w)
                            if base >= 0:
                                self.add_blossom(base, k)
                            else:
                                self.augment_matching(k)
                                return True
                        elif self.label[w] == 0:
                            self.label[w] = 2
                            self.labelend[w] = p ^ 1
                    elif self.label[self.inblossom[w]] == 1:
                        b = self.inblossom[v]
                        if self.bestedge[b] == -1 or kslack < self.slack(self.bestedge[b]):
                            self.bestedge[b] = k
                    elif self.label[w] == 0:
                        if self.bestedge[w] == -1 or kslack < self.slack(self.bestedge[w]):
                            self.bestedge[w] = k

            deltatype = 1
            deltaedge = -1
            deltablossom = -1
            delta = self.dualvar[0]
            for v in range(1, n):
                if self.dualvar[v] < delta:
                    delta = self.dualvar[v]
            for v in range(n):
                if self.label[self.inblossom[v]] == 0 and self.bestedge[v] != -1:
                    d = self.slack(self.bestedge[v])
                    if d < delta:
                        delta = d
                        deltatype = 2
                        deltaedge = self.bestedge[v]
            for b in range(2 * n):
                if self.blossomparent[b] == -1 and self.label[b] == 1 and self.bestedge[b] != -1:
                    d = self.slack(self.bestedge[b]) // 2
                    if d < delta:
                        delta = d
                        deltatype = 3
                        deltaedge = self.bestedge[b]
            for b in range(n, 2 * n):
                if (self.blossombase[b] >= 0 and self.blossomparent[b] == -1
                        and self.label[b] == 2 and self.dualvar[b] < delta):
                    delta = self.dualvar[b]
                    deltatype = 4
                    deltablossom = b
            for v in range(n):
                lv = self.label[self.inblossom[v]]
                if lv == 1:
                    self.dualvar[v] -= delta
                elif lv == 2:
                    self.dualvar[v] += delta
            for b in range(n, 2 * n):
                if self.blossombase[b] >= 0 and self.blossomparent[b] == -1:
                    if self.label[b] == 1:
                        self.dualvar[b] += delta
                    elif self.label[b] == 2:
                        self.dualvar[b] -= delta
            if deltatype == 1:
                return False
            if deltatype == 2:
                self.allowedge[deltaedge] = 1
                i = self.endpoint[2 * deltaedge]
                if self.label[self.inblossom[i]] == 0:
                    i = self.endpoint[2 * deltaedge + 1]
                self.queue.append(i)
            elif deltatype == 3:
                self.allowedge[deltaedge] = 1
                self.queue.append(self.endpoint[2 * deltaedge])
            else:
                self.expand_blossom(deltablossom, False)

    cpdef list solve(self):
        cdef long long n = self.n, b, v, it
        for it in range(n):
            if not self.stage():
                break
            for b in range(n, 2 * n):
                if (self.blossomparent[b] == -1 and self.blossombase[b] >= 0
                        and self.label[b] == 1 and self.dualvar[b] == 0):
                    self.expand_blossom(b, True)
        return [self.endpoint[self.mate[v]] if self.mate[v] >= 0 else -1 for v in range(n)]


def mwm_mates(int n, edges):
    if not edges:
        return [-1] * n
    return _Blossom(n, list(edges)).solve()


def colored_dp(int ncolors, int k, const long long[:] colors, const long long[:] cand_vertex,
               const long long[:] cand_score, const long long[:] cand_size,
               const long long[:] cand_start, const long long[:] members,
               const long long[:] empty):
    cdef Py_ssize_t n = empty.shape[0], m = cand_vertex.shape[0]
    cdef Py_ssize_t full = (1 << ncolors) - 1, width = k + 1
    cdef Py_ssize_t i, p, c, mask, kk, rest, row, prow, idx, pos, bc, bref, code
    cdef long long cm, best, val, bit, size
    cdef long long *cmask = <long long *> malloc(max(m, 1) * sizeof(long long))
    cdef Py_ssize_t *order = <Py_ssize_t *> malloc(max(m, 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *bstart = <Py_ssize_t *> malloc((ncolors + 1) * sizeof(Py_ssize_t))
    cdef long long *classsum = <long long *> malloc(max(ncolors, 1) * sizeof(long long))
    cdef long long *table = <long long *> malloc((full + 1) * width * sizeof(long long))
    cdef Py_ssize_t *back = <Py_ssize_t *> malloc((full + 1) * width * sizeof(Py_ssize_t))
    if not (cmask and order and bstart and classsum and table and back):
        free(cmask); free(order); free(bstart); free(classsum); free(table); free(back)
        raise MemoryError()
    try:
        for i in range(m):
            cm = 0
            for p in range(cand_start[i], cand_start[i + 1]):
                cm |= (<long long>1) << colors[members[p]]
            cmask[i] = cm
        # stable counting sort of candidates by the color of their vertex
        for c in range(ncolors + 1):
            bstart[c] = 0
        for i in range(m):
            bstart[colors[cand_vertex[i]] + 1] += 1
        for c in range(ncolors):
            bstart[c + 1] += bstart[c]
        for c in range(ncolors):
            classsum[c] = 0
        for i in range(n):
            classsum[colors[i]] += empty[i]
        for i in range(m):
            c = colors[cand_vertex[i]]
            order[bstart[c]] = i
            bstart[c] += 1
        for c in range(ncolors, 0, -1):
            bstart[c] = bstart[c - 1]
        bstart[0] = 0

        for kk in range(width):
            table[kk] = 0
            back[kk] = 0
        for mask in range(1, full + 1):
            row = mask * width
            for kk in range(width):
                best = -1
                bc = -1
                bref = -1
                for c in range(ncolors):
                    bit = (<long long>1) << c
                    if not (mask & bit):
                        continue
                    rest = mask ^ bit
                    prow = rest * width
                    if bstart[c] == bstart[c + 1]:
                        val = table[prow + kk]
                        if val > best:
                            best = val
                            bc = c
                            bref = -1
                        continue
                    for pos in range(bstart[c], bstart[c + 1]):
                        idx = order[pos]
                        size = cand_size[idx]
                        if size > kk or (cmask[idx] & ~rest):
                            continue
                        val = (table[prow + kk - size] + cand_score[idx] + classsum[c]
                               - empty[cand_vertex[idx]])
                        if val > best:
                            best = val
                            bc = c
                            bref = idx
                table[row + kk] = best
                back[row + kk] = bc * (m + 1) + bref + 1

        chosen = []
        mask = full
        kk = k
        while mask:
            code = back[mask * width + kk]
            c = code // (m + 1)
            bref = code % (m + 1) - 1
            if bref >= 0:
                chosen.append(bref)
                kk -= cand_size[bref]
            mask ^= (<Py_ssize_t>1) << c
        return table[full * width + k], chosen
    finally:
        free(cmask)
        free(order)
        free(bstart)
        free(classsum)
        free(table)
        free(back)
