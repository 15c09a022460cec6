"""Finite Coxeter systems: enumeration, descent data, cosets, shapes.

Elements are enumerated breadth-first by length, ties broken by the
lexicographically smallest reduced word, so element index 0 is the identity
and the last index is the longest element. Each element is represented by
the signed permutation it induces on the positive roots; everything else
(lengths, ascent sets, conjugation of generators, coset representatives)
derives from that action.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cartan, rootperm
from .errors import InvalidSubset, UnsupportedType


def iter_bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask):
    return bin(mask).count("1")


@dataclass(frozen=True)
class GroupElement:
    index: int
    word: tuple
    length: int


@dataclass(frozen=True)
class Shape:
    """One W-conjugacy class of generator subsets."""
    class_id: int
    members: tuple
    canonical: int
    cardinality_of_member: int


class CoxeterSystem:
    def __init__(self, matrix, labels=None, type_label=None, components=None,
                 from_label=False, allow_rank7=False, cache=True):
        n = len(matrix)
        if n == 0:
            # the trivial group, used as a rank-0 morphism codomain
            components = []
            if type_label is None:
                type_label = "A0"
        else:
            cartan.validate_matrix(matrix)
            if components is None:
                # recognizes the isomorphism type; raises InfiniteGroup otherwise
                canonical = cartan.classify_matrix(matrix)
                components = cartan.parse_label(canonical)
                if type_label is None:
                    type_label = canonical
        cartan.enforce_rank_cap(n, allow_rank7)
        self.matrix = [list(row) for row in matrix]
        self.rank = n
        self.labels = list(labels) if labels else [str(i + 1) for i in range(n)]
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise UnsupportedType("generator labels must be distinct")
        self.components = components
        self.type_label = type_label
        self.from_label = from_label
        self.cache_enabled = cache and from_label
        self.order = cartan.order_for_components(components)
        self.full_mask = (1 << n) - 1
        nroots, sperm, simple_index = rootperm.build_root_action(self.matrix)
        self.nroots = nroots
        self.sperm = sperm
        self.simple_index = list(simple_index)
        self._build()
        self._lmul = None
        self._conjs = None
        self._shapes = None
        self._eclasses = None
        self._cshapes = None
        self._tensor = None
        self._multable = None
        self._w0par = {}

    # ------------------------------------------------------------------
    # enumeration

    def _build(self):
        n, N, order = self.rank, self.nroots, self.order
        gidx = [np.abs(s).astype(np.intp) - 1 for s in self.sperm]
        gsgn = [np.sign(s).astype(np.int16) for s in self.sperm]
        spos = self.simple_index

        P = np.empty((order, N), dtype=np.int16)
        P[0] = np.arange(1, N + 1, dtype=np.int16)
        index = {P[0].tobytes(): 0}
        parent = np.empty(order, dtype=np.int32)
        lastgen = np.empty(order, dtype=np.int8)
        length = np.empty(order, dtype=np.int16)
        supp = np.empty(order, dtype=np.int16)
        parent[0], lastgen[0], length[0], supp[0] = -1, -1, 0, 0
        rmul = np.full((order, n), -1, dtype=np.int32)

        count = 1
        lv_start = 0
        while lv_start < count:
            lv_end = count
            F = P[lv_start:lv_end]
            asc = [F[:, spos[s]] > 0 for s in range(n)]
            new_rows = [
                (gsgn[s][None, :] * F[:, gidx[s]]).astype(np.int16)
                for s in range(n)
            ]
            for pos in range(lv_end - lv_start):
                w = lv_start + pos
                for s in range(n):
                    if not asc[s][pos]:
                        continue
                    row = new_rows[s][pos]
                    key = row.tobytes()
                    v = index.get(key)
                    if v is None:
                        v = count
                        index[key] = v
                        P[v] = row
                        parent[v] = w
                        lastgen[v] = s
                        length[v] = length[w] + 1
                        supp[v] = supp[w] | (1 << s)
                        count += 1
                    rmul[w, s] = v
                    rmul[v, s] = w
            lv_start = lv_end
        if count != order:
            raise AssertionError(
                "enumeration found %d elements, expected %d" % (count, order))

        # inverse permutations, used for left descents and conjugation data
        PI = np.empty_like(P)
        cols = np.abs(P).astype(np.intp) - 1
        vals = np.sign(P).astype(np.int16) * np.arange(
            1, N + 1, dtype=np.int16)[None, :]
        np.put_along_axis(PI, cols, vals, axis=1)

        right_cols = P[:, spos]    # image of each simple root under w
        left_cols = PI[:, spos]    # image under w^{-1}
        rasc = np.zeros(order, dtype=np.int16)
        lasc = np.zeros(order, dtype=np.int16)
        for s in range(n):
            rasc |= (right_cols[:, s] > 0).astype(np.int16) << s
            lasc |= (left_cols[:, s] > 0).astype(np.int16) << s

        root_to_gen = np.full(N, -1, dtype=np.int8)
        for g in range(n):
            root_to_gen[spos[g]] = g
        csany = np.empty((order, n), dtype=np.int8)
        for s in range(n):
            csany[:, s] = root_to_gen[np.abs(left_cols[:, s]).astype(np.intp) - 1]

        inv = np.empty(order, dtype=np.int32)
        for w in range(order):
            inv[w] = index[PI[w].tobytes()]

        self.perms = P
        self.index = index
        self.parent = parent
        self.lastgen = lastgen
        self.length = length
        self.supp = supp
        self.rmul = rmul
        self.rasc = rasc      # R(w) = {s : l(ws) > l(w)}
        self.lasc = lasc      # {s : l(sw) > l(w)} = R(w^{-1})
        self.csany = csany    # csany[w, s] = t iff w^{-1} s w = s_t, else -1
        self.inv = inv

    # ------------------------------------------------------------------
    # basic element access

    def word(self, i):
        out = []
        i = int(i)
        while i:
            out.append(int(self.lastgen[i]))
            i = int(self.parent[i])
        return tuple(reversed(out))

    def element(self, i):
        i = int(i)
        return GroupElement(i, self.word(i), int(self.length[i]))

    def element_by_word(self, word):
        w = 0
        for s in word:
            if not 0 <= s < self.rank:
                raise InvalidSubset("generator position %r out of range" % (s,))
            w = int(self.rmul[w, s])
        return w

    def mul(self, a, b):
        w = int(a)
        for s in self.word(b):
            w = int(self.rmul[w, s])
        return w

    def lmul(self):
        if self._lmul is None:
            lm = np.empty_like(self.rmul)
            inv = self.inv
            for s in range(self.rank):
                lm[:, s] = inv[self.rmul[inv, s]]
            self._lmul = lm
        return self._lmul

    def conj_tables(self):
        """conj[w, s] = s w s."""
        if self._conjs is None:
            lm = self.lmul()
            out = np.empty_like(self.rmul)
            for s in range(self.rank):
                out[:, s] = lm[self.rmul[:, s], s]
            self._conjs = out
        return self._conjs

    def right_translation(self, v):
        """Index array t with t[u] = index of u*v."""
        idx = np.arange(self.order, dtype=np.int32)
        for s in self.word(v):
            idx = self.rmul[idx, s]
        return idx

    def left_translation(self, u):
        """Index array t with t[v] = index of u*v."""
        idx = np.arange(self.order, dtype=np.int32)
        lm = self.lmul()
        for s in reversed(self.word(u)):
            idx = lm[idx, s]
        return idx

    def multiplication_table(self):
        """Full index table mt[u, v] = index of u*v.

        Only built for small groups; quadratic memory. Larger groups should
        use left_translation row by row instead.
        """
        if self._multable is None:
            if self.order > 6000:
                raise MemoryError(
                    "multiplication table for |W| = %d would be too large"
                    % self.order)
            lm = self.lmul()
            mt = np.empty((self.order, self.order), dtype=np.int32)
            mt[0] = np.arange(self.order, dtype=np.int32)
            # walk elements in discovery order: each index > 0 has a parent
            # of smaller index, so rows can be filled by one pass
            for w in range(1, self.order):
                mt[w] = mt[int(self.parent[w])][lm[:, int(self.lastgen[w])]]
            self._multable = mt
        return self._multable

    def order_of(self, i):
        k, w = 1, int(i)
        while w != 0:
            w = self.mul(w, i)
            k += 1
        return k

    # ------------------------------------------------------------------
    # subsets of generators

    def check_mask(self, mask):
        if not 0 <= mask <= self.full_mask:
            raise InvalidSubset("subset mask %r out of range" % (mask,))
        return int(mask)

    def mask_of_labels(self, names):
        mask = 0
        for name in names:
            try:
                mask |= 1 << self.labels.index(name)
            except ValueError:
                raise InvalidSubset("unknown generator label %r" % (name,))
        return mask

    def labels_of_mask(self, mask):
        return [self.labels[s] for s in iter_bits(self.check_mask(mask))]

    def longest_element(self):
        w0 = self.order - 1
        assert int(self.length[w0]) == self.nroots
        return self.element(w0)

    def longest_in_parabolic(self, mask):
        mask = self.check_mask(mask)
        got = self._w0par.get(mask)
        if got is None:
            w = 0
            while True:
                av = int(self.rasc[w]) & mask
                if not av:
                    break
                w = int(self.rmul[w, (av & -av).bit_length() - 1])
            self._w0par[mask] = got = w
        return got

    def is_w0_central(self):
        w0 = self.order - 1
        conj = self.conj_tables()
        return all(int(conj[w0, s]) == w0 for s in range(self.rank))

    def parabolic_indices(self, mask):
        mask = self.check_mask(mask)
        return np.flatnonzero((self.supp & ~mask) == 0)

    def coset_rep_indices(self, mask):
        mask = self.check_mask(mask)
        return np.flatnonzero((self.rasc & mask) == mask)

    def min_coset_reps(self, mask):
        """Minimal length representatives of the cosets w W_mask,
        sorted by (length, index)."""
        return [self.element(i) for i in self.coset_rep_indices(mask)]

    # ------------------------------------------------------------------
    # structure sets

    def _xij_indices(self, imask, jmask):
        imask = self.check_mask(imask)
        jmask = self.check_mask(jmask)
        hit = ((self.lasc & imask) == imask) & ((self.rasc & jmask) == jmask)
        return np.flatnonzero(hit)

    def _refine_mask(self, d, imask, jmask):
        """(d^{-1} I d) cap J as a mask, for d with I among its left ascents."""
        out = 0
        row = self.csany[d]
        for s in iter_bits(imask):
            t = int(row[s])
            if t >= 0:
                out |= 1 << t
        return out & jmask

    def structure_set(self, imask, jmask, kmask=None):
        """X_{I,J} (or its refinement X_{I,J,K}) as GroupElements."""
        idxs = self._xij_indices(imask, jmask)
        if kmask is None:
            return [self.element(i) for i in idxs]
        kmask = self.check_mask(kmask)
        return [self.element(int(d)) for d in idxs
                if self._refine_mask(int(d), imask, jmask) == kmask]

    # ------------------------------------------------------------------
    # shapes (conjugacy classes of generator subsets)

    def shape_classes(self):
        if self._shapes is not None:
            return self._shapes
        full = 1 << self.rank
        uf = list(range(full))

        def find(x):
            while uf[x] != x:
                uf[x] = uf[uf[x]]
                x = uf[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                uf[max(ra, rb)] = min(ra, rb)

        # elementary conjugations: the longest element of W_{J+s} maps J
        # to another subset of J+s; iterating these reaches every conjugate
        for jmask in range(full):
            for s in range(self.rank):
                if jmask >> s & 1:
                    continue
                big = jmask | (1 << s)
                w0m = self.longest_in_parabolic(big)
                row = self.csany[w0m]
                img = 0
                for t in iter_bits(jmask):
                    u = int(row[t])
                    assert u >= 0
                    img |= 1 << u
                union(jmask, img)

        groups = {}
        for jmask in range(full):
            groups.setdefault(find(jmask), []).append(jmask)
        classes = sorted(groups.values(),
                         key=lambda ms: (popcount(ms[0]), ms[0]))
        shapes = []
        mask_to_shape = [0] * full
        for cid, members in enumerate(classes):
            members = tuple(sorted(members))
            for m in members:
                mask_to_shape[m] = cid
            shapes.append(Shape(class_id=cid, members=members,
                                canonical=members[0],
                                cardinality_of_member=popcount(members[0])))
        self._shapes = (shapes, mask_to_shape)
        return self._shapes

    def shapes(self):
        return self.shape_classes()[0]

    def shape_of_mask(self, mask):
        shapes, m2s = self.shape_classes()
        return shapes[m2s[self.check_mask(mask)]]

    def shape_id_of_mask(self, mask):
        _, m2s = self.shape_classes()
        return m2s[self.check_mask(mask)]

    def shape_order_leq(self, a, b):
        """True when shape a is conjugate to a subset of (a member of) b.

        Accepts shape class ids or Shape objects.
        """
        shapes, _ = self.shape_classes()
        if isinstance(a, Shape):
            a = a.class_id
        if isinstance(b, Shape):
            b = b.class_id
        sa, sb = shapes[a], shapes[b]
        for jm in sa.members:
            for km in sb.members:
                if jm & km == jm:
                    return True
        return False

    def conjugate_subsets_brute(self, jmask):
        """All masks w^{-1} J w over the whole group. Test oracle, O(|W| n)."""
        jmask = self.check_mask(jmask)
        out = set()
        for d in range(self.order):
            row = self.csany[d]
            img = 0
            for t in iter_bits(jmask):
                u = int(row[t])
                if u < 0:
                    img = -1
                    break
                img |= 1 << u
            if img >= 0:
                out.add(img)
        return out

    def subset_conjugator(self, jmask, kmask):
        """Some d with d^{-1} J d = K, or None."""
        jmask = self.check_mask(jmask)
        kmask = self.check_mask(kmask)
        for d in range(self.order):
            row = self.csany[d]
            img = 0
            for t in iter_bits(jmask):
                u = int(row[t])
                if u < 0:
                    img = -1
                    break
                img |= 1 << u
            if img == kmask:
                return int(d)
        return None

    # ------------------------------------------------------------------
    # conjugacy classes of elements

    def element_classes(self):
        """(class_id per element, min-length rep per class, sizes)."""
        if self._eclasses is not None:
            return self._eclasses
        conj = self.conj_tables()
        cid = np.full(self.order, -1, dtype=np.int32)
        reps, sizes = [], []
        for w in range(self.order):
            if cid[w] >= 0:
                continue
            c = len(reps)
            stack = [w]
            cid[w] = c
            members = 0
            while stack:
                u = stack.pop()
                members += 1
                for s in range(self.rank):
                    v = int(conj[u, s])
                    if cid[v] < 0:
                        cid[v] = c
                        stack.append(v)
            reps.append(w)   # smallest index = minimal (length, word)
            sizes.append(members)
        self._eclasses = (cid, reps, sizes)
        return self._eclasses

    def shape_of_element(self, i):
        """Shape of the smallest parabolic subgroup containing element i.

        Computed as the unique minimum, under conjugate-inclusion of shapes,
        of the support shapes occurring in the conjugacy class of i.
        """
        cid, _, _ = self.element_classes()
        _, class_shapes, _ = self.class_shape_ids()
        shapes, _ = self.shape_classes()
        return shapes[int(class_shapes[int(cid[int(i)])])]

    def class_shape_ids(self):
        """Shape class_id attached to each element conjugacy class."""
        if self._cshapes is not None:
            return self._cshapes
        cid, reps, sizes = self.element_classes()
        shapes, m2s = self.shape_classes()
        m2s_arr = np.asarray(m2s, dtype=np.int32)
        supp_shape = m2s_arr[self.supp.astype(np.intp)]
        class_shapes = np.empty(len(reps), dtype=np.int32)
        for c in range(len(reps)):
            seen = set(int(v) for v in np.unique(supp_shape[cid == c]))
            best = [s for s in seen
                    if all(self.shape_order_leq(s, t) for t in seen)]
            if len(best) != 1:
                raise AssertionError(
                    "no unique minimal support shape in class %d" % c)
            class_shapes[c] = best[0]
        self._cshapes = (cid, class_shapes, sizes)
        return self._cshapes

    # ------------------------------------------------------------------
    # structure constants

    def structure_tensor(self):
        """T[I, J, K] = #{d in X_{I,J} : (d^{-1} I d) cap J = K}."""
        if self._tensor is not None:
            return self._tensor
        from . import cache as cache_mod
        if self.cache_enabled:
            T = cache_mod.load_tensor(self)
            if T is not None:
                self._tensor = T
                return T
        T = self._compute_tensor()
        self._tensor = T
        if self.cache_enabled:
            cache_mod.store_tensor(self, T)
        return T

    def _compute_tensor(self):
        n = self.rank
        full = 1 << n
        lasc, rasc, csany = self.lasc, self.rasc, self.csany
        sigs = {}
        for d in range(self.order):
            amask = int(lasc[d])
            row = csany[d]
            cmap = tuple(int(row[s]) for s in iter_bits(amask))
            key = (amask, int(rasc[d]), cmap)
            sigs[key] = sigs.get(key, 0) + 1
        T = np.zeros((full, full, full), dtype=np.int64)
        for (amask, bmask, cmap), mult in sigs.items():
            abits = list(iter_bits(amask))
            images = {}
            for pos, s in enumerate(abits):
                t = cmap[pos]
                images[1 << s] = (1 << t) if t >= 0 else 0
            imask = amask
            while True:
                dmask = 0
                rem = imask
                while rem:
                    low = rem & -rem
                    dmask |= images[low]
                    rem ^= low
                jmask = bmask
                while True:
                    T[imask, jmask, dmask & jmask] += mult
                    if jmask == 0:
                        break
                    jmask = (jmask - 1) & bmask
                if imask == 0:
                    break
                imask = (imask - 1) & amask
        return T


def build_system(type=None, matrix=None, labels=None, allow_rank7=False,
                 cache=True):
    """Build a finite Coxeter system from a type label or a Coxeter matrix."""
    if (type is None) == (matrix is None):
        raise UnsupportedType("give exactly one of type= or matrix=")
    if type is not None:
        comps = cartan.parse_label(type)
        norm = cartan.normalized_label(comps)
        built_labels, mat = cartan.matrix_for_components(comps)
        return CoxeterSystem(mat, labels=built_labels, type_label=norm,
                             components=comps, from_label=True,
                             allow_rank7=allow_rank7, cache=cache)
    return CoxeterSystem(matrix, labels=labels, from_label=False,
                         allow_rank7=allow_rank7, cache=cache)
