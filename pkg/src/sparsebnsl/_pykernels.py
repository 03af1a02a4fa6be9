"""Pure-Python hot kernels: weighted blossom matching and the colored subset DP.

``_ckernels.pyx`` mirrors both functions with typed loops; ``_backend`` picks
one at import time.  Both kernels work on plain integers only.
"""

from __future__ import annotations


class _Blossom:
    """Primal-dual weighted matching on a general graph (Edmonds, O(n^3)).

    Endpoints are numbered ``2k`` and ``2k + 1`` for edge ``k``; blossoms get
    ids ``n .. 2n-1``.  Vertex duals start at the maximum weight and the
    slack of an edge is ``u_i + u_j - 2 w``, which keeps every quantity an
    integer when the weights are integers.
    """

    def __init__(self, n: int, edges: list[tuple[int, int, int]]):
        self.n = n
        self.edges = edges
        nedge = len(edges)
        maxweight = max((w for _, _, w in edges), default=0)
        self.endpoint = [edges[p // 2][p % 2] for p in range(2 * nedge)]
        self.neighbend: list[list[int]] = [[] for _ in range(n)]
        for k, (i, j, _) in enumerate(edges):
            self.neighbend[i].append(2 * k + 1)
            self.neighbend[j].append(2 * k)
        self.mate = [-1] * n
        self.label = [0] * (2 * n)
        self.labelend = [-1] * (2 * n)
        self.inblossom = list(range(n))
        self.blossomparent = [-1] * (2 * n)
        self.blossomchilds: list = [None] * (2 * n)
        self.blossombase = list(range(n)) + [-1] * n
        self.blossomendps: list = [None] * (2 * n)
        self.bestedge = [-1] * (2 * n)
        self.blossombestedges: list = [None] * (2 * n)
        self.unusedblossoms = list(range(n, 2 * n))
        self.dualvar = [maxweight] * n + [0] * n
        self.allowedge = [False] * nedge
        self.queue: list[int] = []

    def slack(self, k: int) -> int:
        i, j, w = self.edges[k]
        return self.dualvar[i] + self.dualvar[j] - 2 * w

    def leaves(self, b: int) -> list[int]:
        if b < self.n:
            return [b]
        out = []
        stack = [b]
        while stack:
            x = stack.pop()
            if x < self.n:
                out.append(x)
            else:
                stack.extend(reversed(self.blossomchilds[x]))
        return out

    def assign_label(self, w: int, t: int, p: int) -> None:
        while True:
            b = self.inblossom[w]
            self.label[w] = self.label[b] = t
            self.labelend[w] = self.labelend[b] = p
            self.bestedge[w] = self.bestedge[b] = -1
            if t == 1:
                self.queue.extend(self.leaves(b))
                return
            # T-vertex: its mate becomes an S-vertex
            base = self.blossombase[b]
            w, t, p = self.endpoint[self.mate[base]], 1, self.mate[base] ^ 1

    def scan_blossom(self, v: int, w: int) -> int:
        """Trace back from v and w; return the common base or -1 for an augmenting path."""
        label, labelend, endpoint, inblossom = self.label, self.labelend, self.endpoint, self.inblossom
        path = []
        base = -1
        while v != -1 or w != -1:
            b = inblossom[v]
            if label[b] & 4:
                base = self.blossombase[b]
                break
            path.append(b)
            label[b] = 5
            if labelend[b] == -1:
                v = -1
            else:
                v = endpoint[labelend[b]]
                b = inblossom[v]
                v = endpoint[labelend[b]]
            if w != -1:
                v, w = w, v
        for b in path:
            label[b] = 1
        return base

    def add_blossom(self, base: int, k: int) -> None:
        v, w, _ = self.edges[k]
        inblossom, labelend, endpoint = self.inblossom, self.labelend, self.endpoint
        bb = inblossom[base]
        bv = inblossom[v]
        bw = inblossom[w]
        b = self.unusedblossoms.pop()
        self.blossombase[b] = base
        self.blossomparent[b] = -1
        self.blossomparent[bb] = b
        path: list[int] = []
        endps: list[int] = []
        self.blossomchilds[b] = path
        self.blossomendps[b] = endps
        while bv != bb:
            self.blossomparent[bv] = b
            path.append(bv)
            endps.append(labelend[bv])
            v = endpoint[labelend[bv]]
            bv = inblossom[v]
        path.append(bb)
        path.reverse()
        endps.reverse()
        endps.append(2 * k)
        while bw != bb:
            self.blossomparent[bw] = b
            path.append(bw)
            endps.append(labelend[bw] ^ 1)
            w = endpoint[labelend[bw]]
            bw = inblossom[w]
        self.label[b] = 1
        labelend[b] = labelend[bb]
        self.dualvar[b] = 0
        for x in self.leaves(b):
            if self.label[inblossom[x]] == 2:
                self.queue.append(x)
            inblossom[x] = b
        # least-slack edges from the new blossom to each neighbouring S-blossom
        bestedgeto = {}
        for sub in path:
            if self.blossombestedges[sub] is None:
                nblists = [[p // 2 for p in self.neighbend[x]] for x in self.leaves(sub)]
            else:
                nblists = [self.blossombestedges[sub]]
            for nblist in nblists:
                for e in nblist:
                    i, j, _ = self.edges[e]
                    if inblossom[j] == b:
                        i, j = j, i
                    bj = inblossom[j]
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

    def expand_blossom(self, b: int, endstage: bool) -> None:
        label, labelend, endpoint = self.label, self.labelend, self.endpoint
        for s in self.blossomchilds[b]:
            self.blossomparent[s] = -1
            if s < self.n:
                self.inblossom[s] = s
            elif endstage and self.dualvar[s] == 0:
                self.expand_blossom(s, endstage)
            else:
                for x in self.leaves(s):
                    self.inblossom[x] = s
        if not endstage and label[b] == 2:
            # relabel the children along the even path through the blossom
            childs = self.blossomchilds[b]
            endps = self.blossomendps[b]
            entrychild = self.inblossom[endpoint[labelend[b] ^ 1]]
            j = childs.index(entrychild)
            if j & 1:
                j -= len(childs)
                jstep, trick = 1, 0
            else:
                jstep, trick = -1, 1
            p = labelend[b]
            while j != 0:
                label[endpoint[p ^ 1]] = 0
                label[endpoint[endps[j - trick] ^ trick ^ 1]] = 0
                self.assign_label(endpoint[p ^ 1], 2, p)
                self.allowedge[endps[j - trick] // 2] = True
                j += jstep
                p = endps[j - trick] ^ trick
                self.allowedge[p // 2] = True
                j += jstep
            bv = childs[j]
            label[endpoint[p ^ 1]] = label[bv] = 2
            labelend[endpoint[p ^ 1]] = labelend[bv] = p
            self.bestedge[bv] = -1
            j += jstep
            while childs[j] != entrychild:
                bv = childs[j]
                if label[bv] == 1:
                    j += jstep
                    continue
                for x in self.leaves(bv):
                    if label[x] != 0:
                        label[x] = 0
                        label[endpoint[self.mate[self.blossombase[bv]]]] = 0
                        self.assign_label(x, 2, labelend[x])
                        break
                j += jstep
        label[b] = labelend[b] = -1
        self.blossomchilds[b] = self.blossomendps[b] = None
        self.blossombase[b] = -1
        self.blossombestedges[b] = None
        self.bestedge[b] = -1
        self.unusedblossoms.append(b)

    def augment_blossom(self, b: int, v: int) -> None:
        """Swap matched and unmatched edges on the path from v to the base of b."""
        t = v
        while self.blossomparent[t] != b:
            t = self.blossomparent[t]
        if t >= self.n:
            self.augment_blossom(t, v)
        childs = self.blossomchilds[b]
        endps = self.blossomendps[b]
        i = j = childs.index(t)
        if i & 1:
            j -= len(childs)
            jstep, trick = 1, 0
        else:
            jstep, trick = -1, 1
        endpoint = self.endpoint
        while j != 0:
            j += jstep
            t = childs[j]
            p = endps[j - trick] ^ trick
            if t >= self.n:
                self.augment_blossom(t, endpoint[p])
            j += jstep
            t = childs[j]
            if t >= self.n:
                self.augment_blossom(t, endpoint[p ^ 1])
            self.mate[endpoint[p]] = p ^ 1
            self.mate[endpoint[p ^ 1]] = p
        self.blossomchilds[b] = childs[i:] + childs[:i]
        self.blossomendps[b] = endps[i:] + endps[:i]
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]]

    def augment_matching(self, k: int) -> None:
        v, w, _ = self.edges[k]
        endpoint, inblossom, labelend = self.endpoint, self.inblossom, self.labelend
        for s, p in ((v, 2 * k + 1), (w, 2 * k)):
            while True:
                bs = inblossom[s]
                if bs >= self.n:
                    self.augment_blossom(bs, s)
                self.mate[s] = p
                if labelend[bs] == -1:
                    break
                t = endpoint[labelend[bs]]
                bt = inblossom[t]
                s = endpoint[labelend[bt]]
                j = endpoint[labelend[bt] ^ 1]
                if bt >= self.n:
                    self.augment_blossom(bt, j)
                self.mate[j] = labelend[bt]
                p = labelend[bt] ^ 1

    def stage(self) -> bool:
        """Grow alternating trees until one augmentation; False when optimal."""
        n = self.n
        label, inblossom, bestedge = self.label, self.inblossom, self.bestedge
        for i in range(2 * n):
            label[i] = 0
            bestedge[i] = -1
        for i in range(n, 2 * n):
            self.blossombestedges[i] = None
        for i in range(len(self.allowedge)):
            self.allowedge[i] = False
        self.queue.clear()
        for v in range(n):
            if self.mate[v] == -1 and label[inblossom[v]] == 0:
                self.assign_label(v, 1, -1)

        while True:
            while self.queue:
                v = self.queue.pop()
                for p in self.neighbend[v]:
                    k = p // 2
                    w = self.endpoint[p]
                    if inblossom[v] == inblossom[w]:
                        continue
                    kslack = 0
                    if not self.allowedge[k]:
                        kslack = self.slack(k)
                        if kslack <= 0:
                            self.allowedge[k] = True
                    if self.allowedge[k]:
                        lw = label[inblossom[w]]
                        if lw == 0:
                            self.assign_label(w, 2, p ^ 1)
                        elif lw == 1:
                            base = self.scan_blossom(v, w)
                            if base >= 0:
                                self.add_blossom(base, k)
                            else:
                                self.augment_matching(k)
                                return True
                        elif label[w] == 0:
                            label[w] = 2
                            self.labelend[w] = p ^ 1
                    elif label[inblossom[w]] == 1:
                        b = inblossom[v]
                        if bestedge[b] == -1 or kslack < self.slack(bestedge[b]):
                            bestedge[b] = k
                    elif label[w] == 0:
                        if bestedge[w] == -1 or kslack < self.slack(bestedge[w]):
                            bestedge[w] = k

            # no tight edge left: adjust the duals
            dualvar = self.dualvar
            deltatype = 1
            delta = min(dualvar[:n])
            deltaedge = deltablossom = -1
            for v in range(n):
                if label[inblossom[v]] == 0 and bestedge[v] != -1:
                    d = self.slack(bestedge[v])
                    if d < delta:
                        delta, deltatype, deltaedge = d, 2, bestedge[v]
            for b in range(2 * n):
                if self.blossomparent[b] == -1 and label[b] == 1 and bestedge[b] != -1:
                    d = self.slack(bestedge[b]) // 2
                    if d < delta:
                        delta, deltatype, deltaedge = d, 3, bestedge[b]
            for b in range(n, 2 * n):
                if (self.blossombase[b] >= 0 and self.blossomparent[b] == -1
                        and label[b] == 2 and dualvar[b] < delta):
                    delta, deltatype, deltablossom = dualvar[b], 4, b
            for v in range(n):
                lv = label[inblossom[v]]
                if lv == 1:
                    dualvar[v] -= delta
                elif lv == 2:
                    dualvar[v] += delta
            for b in range(n, 2 * n):
                if self.blossombase[b] >= 0 and self.blossomparent[b] == -1:
                    if label[b] == 1:
                        dualvar[b] += delta
                    elif label[b] == 2:
                        dualvar[b] -= delta
            if deltatype == 1:
                return False
            if deltatype == 2:
                self.allowedge[deltaedge] = True
                i, j, _ = self.edges[deltaedge]
                if label[inblossom[i]] == 0:
                    i = j
                self.queue.append(i)
            elif deltatype == 3:
                self.allowedge[deltaedge] = True
                self.queue.append(self.edges[deltaedge][0])
            else:
                self.expand_blossom(deltablossom, False)

    def solve(self) -> list[int]:
        n = self.n
        for _ in range(n):
            if not self.stage():
                break
            # expand S-blossoms whose dual dropped to zero
            for b in range(n, 2 * n):
                if (self.blossomparent[b] == -1 and self.blossombase[b] >= 0
                        and self.label[b] == 1 and self.dualvar[b] == 0):
                    self.expand_blossom(b, True)
        return [self.endpoint[m] if m >= 0 else -1 for m in self.mate]


def mwm_mates(n: int, edges: list[tuple[int, int, int]]) -> list[int]:
    """Maximum weight matching; ``mates[v]`` is v's partner or -1.

    ``edges`` must be simple, loop-free and carry non-negative integer weights.
    """
    if not edges:
        return [-1] * n
    return _Blossom(n, list(edges)).solve()


def colored_dp(ncolors, k, colors, cand_vertex, cand_score, cand_size,
               cand_start, members, empty):
    """Best color-loyal assignment for one coloring.

    Candidates are flat arrays grouped by vertex; candidate ``i`` belongs to
    ``cand_vertex[i]`` and its parents are ``members[cand_start[i]:cand_start[i+1]]``.
    Every vertex must own its empty candidate.  Returns ``(value, chosen)``
    where ``chosen`` lists one candidate index per non-empty color class.
    """
    n = len(empty)
    colors = [int(c) for c in colors]
    m = len(cand_vertex)
    cmask = [0] * m
    for i in range(m):
        cm = 0
        for p in range(cand_start[i], cand_start[i + 1]):
            cm |= 1 << colors[members[p]]
        cmask[i] = cm
    buckets: list[list[int]] = [[] for _ in range(ncolors)]
    for i in range(m):
        buckets[colors[cand_vertex[i]]].append(i)
    classsum = [0] * ncolors
    for v in range(n):
        classsum[colors[v]] += empty[v]

    full = (1 << ncolors) - 1
    width = k + 1
    table = [0] * ((full + 1) * width)
    back = [0] * ((full + 1) * width)
    for mask in range(1, full + 1):
        row = mask * width
        for kk in range(width):
            best = -1
            bref = -1
            bc = -1
            for c in range(ncolors):
                bit = 1 << c
                if not mask & bit:
                    continue
                rest = mask ^ bit
                prow = rest * width
                bucket = buckets[c]
                if not bucket:
                    val = table[prow + kk]
                    if val > best:
                        best, bc, bref = val, c, -1
                    continue
                base = classsum[c]
                for i in bucket:
                    size = cand_size[i]
                    if size > kk or cmask[i] & ~rest:
                        continue
                    val = table[prow + kk - size] + cand_score[i] + base - empty[cand_vertex[i]]
                    if val > best:
                        best, bc, bref = val, c, i
            table[row + kk] = best
            back[row + kk] = bc * (m + 1) + bref + 1

    chosen = []
    mask, kk = full, k
    while mask:
        code = back[mask * width + kk]
        c, ref = divmod(code, m + 1)
        ref -= 1
        if ref >= 0:
            chosen.append(ref)
            kk -= cand_size[ref]
        mask ^= 1 << c
    return table[full * width + k], chosen
