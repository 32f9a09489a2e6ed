"""Presentations of associative algebras and the reduction backends.

Two backends decide equalities modulo the two-sided ideal of relations:

* rewriting with oriented rules (PBW normal form) when a confluent system
  is supplied, and a degree-bounded completion (GroebnerBasis) otherwise;
* ideal_member, which builds the span of all multiples w1*rel*w2 up to a
  degree bound and runs exact sparse elimination. Slow but assumption free.

Words are ordered by (degree, length, lexicographic sort indices).
"""

from __future__ import annotations

import heapq
import itertools
import sys
from dataclasses import dataclass, field

from .freealg import Alphabet, NCElement
from .scalar import ONE, ZERO, Scalar, as_scalar, to_text

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

IN_IDEAL = "in-ideal"
NOT_IN_IDEAL = "not-in-ideal"
INCONCLUSIVE = "inconclusive-at-bound"


class NonConfluentError(ValueError):
    pass


class StepBudgetError(RuntimeError):
    pass


class BoundTooSmallError(ValueError):
    pass


def graded_degree(alphabet: Alphabet, terms) -> int | None:
    """Common word degree of the terms, else None.

    Coefficients do not contribute: over a coefficient field containing
    eta, a relation that is homogeneous only when eta carries degree 1 can
    be divided by eta, so such gradings do not make truncation decisive.
    """
    degs = {alphabet.degree(w) for w in terms}
    if len(degs) > 1:
        return None
    return degs.pop() if degs else 0


class Presentation:
    def __init__(self, name, alphabet: Alphabet, relations, rules=None, confluent=False,
                 tags=None):
        self.name = name
        self.alphabet = alphabet
        self.relations = []
        for r in relations:
            if r.legs != 1 or r.alphabets[0] != alphabet:
                raise ValueError(f"relation over the wrong alphabet in {name}")
            if r:
                self.relations.append(r)
        self.tags = list(tags) if tags is not None else [f"r{i}" for i in range(len(self.relations))]
        self.rules = []
        key = alphabet.word_key
        for lhs, rhs in rules or []:
            if isinstance(lhs, str):
                lhs = alphabet.word(lhs)
            for (w,) in rhs.terms:
                if key(w) >= key(lhs):
                    raise ValueError(
                        f"rule {alphabet.word_text(lhs)} -> {alphabet.word_text(w)} does not decrease")
            self.rules.append((tuple(lhs), rhs))
        self.confluent = confluent
        self._reducer = None

    def __repr__(self):
        return f"Presentation({self.name!r}, {len(self.alphabet)} generators, {len(self.relations)} relations)"

    def gen(self, name, coeff=ONE):
        return NCElement.gen(self.alphabet, name, coeff)

    def word(self, text, coeff=ONE):
        return NCElement.from_words(self.alphabet, text, coeff)

    def one(self):
        return NCElement.one((self.alphabet,))

    def zero(self):
        return NCElement.zero((self.alphabet,))

    def is_graded(self):
        """True if every relation is homogeneous in word degree."""
        return all(graded_degree(self.alphabet, {w: c for (w,), c in r.terms.items()}) is not None
                   for r in self.relations)

    def reducer(self):
        if self._reducer is None:
            self._reducer = WordReducer(self.alphabet, {lhs: _as_terms(rhs) for lhs, rhs in self.rules})
        return self._reducer

    def content_key(self):
        from .textio import presentation_to_text
        return presentation_to_text(self)


def _as_terms(a: NCElement):
    return {w: c for (w,), c in a.terms.items()}


def _add_into(target, w, c):
    s = target.get(w)
    if s is None:
        target[w] = c
    else:
        s = s + c
        if s:
            target[w] = s
        else:
            del target[w]


class WordReducer:
    """Reduction of words by rules lead -> tail, memoized per word.

    The first rule occurrence (leftmost, shortest) is applied; results are
    unique when the rule system is confluent in the degrees involved.
    """

    def __init__(self, alphabet, rules, budget=5_000_000):
        self.alphabet = alphabet
        self.rules = dict(rules)
        self.lengths = sorted({len(k) for k in self.rules})
        self.memo = {}
        self.budget = budget
        self.steps = 0

    def find(self, w):
        rules = self.rules
        n = len(w)
        for i in range(n):
            for L in self.lengths:
                if i + L > n:
                    break
                sub = w[i:i + L]
                if sub in rules:
                    return i, sub
        return None

    def reduce_word(self, w):
        hit = self.memo.get(w)
        if hit is not None:
            return hit
        self.steps += 1
        if self.steps > self.budget:
            raise StepBudgetError(f"rewriting exceeded {self.budget} steps")
        occ = self.find(w)
        if occ is None:
            res = {w: ONE}
        else:
            i, lead = occ
            left, right = w[:i], w[i + len(lead):]
            res = {}
            for t, c in self.rules[lead].items():
                for u, d in self.reduce_word(left + t + right).items():
                    _add_into(res, u, c * d)
        self.memo[w] = res
        return res

    def reduce_terms(self, terms):
        out = {}
        for w, c in terms.items():
            for u, d in self.reduce_word(w).items():
                _add_into(out, u, c * d)
        return out

    def is_reduced(self, w):
        return self.find(w) is None


def reduce_element(a: NCElement, reducers) -> NCElement:
    """Leg-wise reduction; reducers[i] acts on leg i (None leaves it)."""
    if a.legs == 1:
        r = reducers[0]
        if r is None:
            return a
        out = r.reduce_terms({w: c for (w,), c in a.terms.items()})
        return NCElement._make(a.alphabets, {(w,): c for w, c in out.items()})
    out = {}
    for key, c in a.terms.items():
        acc = {(): c}
        for i, w in enumerate(key):
            r = reducers[i]
            nf = {w: ONE} if r is None else r.reduce_word(w)
            nxt = {}
            for k1, c1 in acc.items():
                for u, d in nf.items():
                    nxt[k1 + (u,)] = c1 * d
            acc = nxt
        for k, v in acc.items():
            _add_into(out, k, v)
    return NCElement._make(a.alphabets, out)


def normal_form(p: Presentation, a: NCElement) -> NCElement:
    """PBW normal form using the presentation's rules (leg-wise)."""
    if not p.confluent:
        raise NonConfluentError(f"{p.name} has no confluent rewriting system")
    for alph in a.alphabets:
        if alph != p.alphabet:
            raise ValueError(f"element is not over {p.name}")
    return reduce_element(a, [p.reducer()] * a.legs)


# --- confluence -------------------------------------------------------------

@dataclass
class OverlapReport:
    checked: int
    failures: list = field(default_factory=list)

    @property
    def confluent(self):
        return not self.failures


def _ambiguities(leads, degree_of, bound):
    """Overlap and inclusion ambiguities (word, (lead1, pos1), (lead2, pos2))."""
    out = []
    for l1 in leads:
        for l2 in leads:
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    w = l1 + l2[k:]
                    if degree_of(w) <= bound:
                        out.append((w, (l1, 0), (l2, len(l1) - k)))
            if l1 != l2 and len(l2) < len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i:i + len(l2)] == l2 and degree_of(l1) <= bound:
                        out.append((l1, (l1, 0), (l2, i)))
    return out


def check_confluence(p: Presentation, degree_bound: int) -> OverlapReport:
    rules = {lhs: _as_terms(rhs) for lhs, rhs in p.rules}
    red = WordReducer(p.alphabet, rules)
    report = OverlapReport(0)
    for w, (l1, i1), (l2, i2) in _ambiguities(list(rules), p.alphabet.degree, degree_bound):
        report.checked += 1
        sides = []
        for lead, i in ((l1, i1), (l2, i2)):
            left, right = w[:i], w[i + len(lead):]
            step = {}
            for t, c in rules[lead].items():
                _add_into(step, left + t + right, c)
            sides.append(red.reduce_terms(step))
        diff = dict(sides[0])
        for u, c in sides[1].items():
            _add_into(diff, u, -c)
        if diff:
            report.failures.append((p.alphabet.word_text(w), NCElement._make((p.alphabet,), {(u,): c for u, c in diff.items()})))
    return report


# --- certificates -----------------------------------------------------------

@dataclass
class MembershipCertificate:
    """Verdict plus a combination sum(coeff * left * rel * right).

    Entries are (left, rel_index, right, coeff) for one-leg elements. For
    multi-leg elements entries are (left, rel_index, right, coeff, leg, key)
    where key holds the words of the other legs (with None at `leg`).
    Entries produced by a GroebnerBasis reference its elements through
    ('gb', j) in place of the relation index.
    """

    verdict: str
    combination: list
    degree_bound: int
    residue: NCElement | None = None

    @property
    def in_ideal(self):
        return self.verdict == IN_IDEAL


def replay(p: Presentation, cert: MembershipCertificate, alphabets=None, gb=None) -> NCElement:
    """Rebuild the element witnessed by a certificate."""
    alph = p.alphabet
    total = {}
    for entry in cert.combination:
        left, ref, right, coeff = entry[:4]
        if isinstance(ref, tuple):
            terms = gb.element_terms(ref[1])
        else:
            terms = _as_terms(p.relations[ref])
        if len(entry) == 4:
            for w, c in terms.items():
                _add_into(total, (left + w + right,), coeff * c)
        else:
            leg, key = entry[4], entry[5]
            for w, c in terms.items():
                k = list(key)
                k[leg] = left + w + right
                _add_into(total, tuple(k), coeff * c)
    if alphabets is None:
        alphabets = (alph,)
    return NCElement._make(tuple(alphabets), total)


# --- Macaulay span membership ------------------------------------------------

def certificate_text(p: Presentation, cert: MembershipCertificate, gb=None) -> str:
    """One line per entry, "coeff * left * [tag] * right", expanded over the
    defining relations when the entries reference a Groebner basis."""
    combination = cert.combination
    if gb is not None and gb.track and any(isinstance(e[1], tuple) for e in combination):
        combination = gb.flatten(combination)
    alph = p.alphabet
    lines = [f"verdict: {cert.verdict}", f"degree_bound: {cert.degree_bound}"]
    for entry in combination:
        left, ref, right, coeff = entry[:4]
        name = f"gb{ref[1]}" if isinstance(ref, tuple) else p.tags[ref]
        lines.append(f"({to_text(coeff)}) * {alph.word_text(left)} * [{name}] * {alph.word_text(right)}")
    return "\n".join(lines) + "\n"


def _words_up_to(alphabet, max_degree):
    """All words with degree <= max_degree, grouped by degree."""
    by_deg = {0: [()]}
    for d in range(1, max_degree + 1):
        ws = []
        for i, gd in enumerate(alphabet.degrees):
            if gd <= d:
                ws.extend(w + (i,) for w in by_deg.get(d - gd, []))
        by_deg[d] = ws
    return by_deg


class SparseEchelon:
    """Incremental exact row echelon over Scalar with row provenance.

    Each stored pivot row has no entries in the pivot columns of rows
    stored before it, so reducing a vector in pivot insertion order is
    final. The pivot of a new row is the column with the fewest
    occurrences among the input rows (a cheap Markowitz rule).
    """

    def __init__(self, column_counts=None):
        self.pivots = {}
        self.order = {}
        self.counts = column_counts or {}

    def reduce(self, row, tag):
        row = dict(row)
        tag = dict(tag)
        heap = [(self.order[c], c) for c in row if c in self.pivots]
        heapq.heapify(heap)
        seen = set()
        while heap:
            _, col = heapq.heappop(heap)
            if col in seen:
                continue
            seen.add(col)
            c = row.get(col)
            if c is None:
                continue
            prow, ptag = self.pivots[col]
            for k, v in prow.items():
                _add_into(row, k, -c * v)
                if k in self.pivots and k not in seen:
                    heapq.heappush(heap, (self.order[k], k))
            for k, v in ptag.items():
                _add_into(tag, k, -c * v)
        return row, tag

    def insert(self, row, tag):
        row, tag = self.reduce(row, tag)
        if not row:
            return False
        counts = self.counts
        col = min(row, key=lambda k: (counts.get(k, 0), k))
        inv = ONE / row[col]
        row = {k: v * inv for k, v in row.items()}
        tag = {k: v * inv for k, v in tag.items()}
        self.order[col] = len(self.order)
        self.pivots[col] = (row, tag)
        return True

    @property
    def rank(self):
        return len(self.pivots)


def _relation_degree(p, r, graded):
    terms = _as_terms(r)
    if graded:
        return graded_degree(p.alphabet, terms)
    return max(p.alphabet.degree(w) for w in terms)


def ideal_member(p: Presentation, a: NCElement, degree_bound: int, max_rows=400_000) -> MembershipCertificate:
    """Decide a in span{w1*rel*w2 : degree <= degree_bound} exactly."""
    if a.legs != 1:
        raise ValueError("ideal_member works on one-leg elements")
    target = _as_terms(a)
    graded = p.is_graded()
    alph = p.alphabet
    if graded and target:
        tdeg = graded_degree(alph, target)
        homogeneous_target = tdeg is not None
        if tdeg is None:
            tdeg = max(alph.degree(w) for w in target)
    else:
        homogeneous_target = False
        tdeg = max((alph.degree(w) for w in target), default=0)
    if tdeg > degree_bound:
        raise BoundTooSmallError(f"element degree {tdeg} exceeds bound {degree_bound}")
    if not target:
        return MembershipCertificate(IN_IDEAL, [], degree_bound)
    rdegs = [_relation_degree(p, r, graded) for r in p.relations]
    free = degree_bound - min(rdegs, default=degree_bound)
    words = _words_up_to(alph, max(free, 0))
    rows = []
    for idx, (r, rd) in enumerate(zip(p.relations, rdegs)):
        room = degree_bound - rd
        if room < 0:
            continue
        terms = _as_terms(r)
        for d1 in range(room + 1):
            for w1 in words.get(d1, []):
                for d2 in range(room - d1 + 1):
                    for w2 in words.get(d2, []):
                        rows.append(((w1, idx, w2), {w1 + w + w2: c for w, c in terms.items()}))
                        if len(rows) > max_rows:
                            raise BoundTooSmallError(
                                f"Macaulay span exceeds {max_rows} rows; use the completion backend")
    counts = {}
    for _, row in rows:
        for k in row:
            counts[k] = counts.get(k, 0) + 1
    rows.sort(key=lambda item: (len(item[1]), item[0][1], alph.word_key(item[0][0]), alph.word_key(item[0][2])))
    ech = SparseEchelon(counts)
    for i, (_, row) in enumerate(rows):
        ech.insert(row, {i: ONE})
    rest, tag = ech.reduce(target, {})
    if not rest:
        combination = []
        for i, c in sorted(tag.items()):
            w1, idx, w2 = rows[i][0]
            combination.append((w1, idx, w2, -c))
        return MembershipCertificate(IN_IDEAL, combination, degree_bound)
    verdict = NOT_IN_IDEAL if (graded and homogeneous_target) or p.confluent else INCONCLUSIVE
    if p.confluent and not (graded and homogeneous_target):
        # a confluent rewriting system decides membership outright
        verdict = NOT_IN_IDEAL if normal_form(p, a) else INCONCLUSIVE
    residue = NCElement._make((alph,), {(w,): c for w, c in rest.items()})
    return MembershipCertificate(verdict, [], degree_bound, residue)


# --- degree-bounded completion ----------------------------------------------

class GroebnerBasis:
    """Noncommutative Buchberger completion truncated at a degree bound.

    Every basis element g_j = lead_j - tail_j stores its provenance as a
    list of (coeff, left, source, right) with source ('rel', i) or
    ('gb', k), k < j. Reductions of ambiguity words of degree above the
    bound are skipped; `complete` records whether any were skipped.
    """

    def __init__(self, p: Presentation, degree_bound: int, track=True):
        self.presentation = p
        self.alphabet = p.alphabet
        self.degree_bound = degree_bound
        self.track = track
        self.leads = []
        self.tails = []
        self.provenance = []
        self.active = {}
        self.lengths = []
        self.skipped = 0
        self.pairs_done = 0
        self._final = None
        self._build()

    # the word order, as a heap key for extracting maxima
    def _hkey(self, w):
        return (-self.alphabet.degree(w), -len(w), tuple(-x for x in w))

    def _find(self, w):
        rules = self.active
        n = len(w)
        for i in range(n):
            for L in self.lengths:
                if i + L > n:
                    break
                j = rules.get(w[i:i + L])
                if j is not None:
                    return i, L, j
        return None

    def _reduce(self, terms, trace):
        """Full reduction; appends (coeff, left, ('gb', j), right) to trace."""
        heap = [(self._hkey(w), w) for w in terms]
        heapq.heapify(heap)
        work = dict(terms)
        out = {}
        while heap:
            _, w = heapq.heappop(heap)
            c = work.pop(w, None)
            if c is None:
                continue
            occ = self._find(w)
            if occ is None:
                out[w] = c
                continue
            i, L, j = occ
            left, right = w[:i], w[i + L:]
            if trace is not None:
                trace.append((c, left, ("gb", j), right))
            for t, tc in self.tails[j].items():
                u = left + t + right
                if u in work:
                    s = work[u] + c * tc
                    if s:
                        work[u] = s
                    else:
                        del work[u]
                else:
                    work[u] = c * tc
                    heapq.heappush(heap, (self._hkey(u), u))
        return out

    def _lead(self, terms):
        return min(terms, key=self._hkey)

    def _add(self, terms, provenance):
        """Insert a reduced nonzero element; returns its index."""
        lead = self._lead(terms)
        inv = ONE / terms[lead]
        tail = {w: -c * inv for w, c in terms.items() if w != lead}
        j = len(self.leads)
        self.leads.append(lead)
        self.tails.append(tail)
        if self.track:
            self.provenance.append([(c * inv, l, s, r) for c, l, s, r in provenance])
        else:
            self.provenance.append(None)
        # retire active rules whose lead contains the new lead
        retired = [k for k in self.active.values() if _contains(self.leads[k], lead)]
        for k in retired:
            del self.active[self.leads[k]]
        self.active[lead] = j
        self.lengths = sorted({len(k) for k in self.active})
        return j, retired

    def _pairs_for(self, j):
        deg = self.alphabet.degree
        lj = self.leads[j]
        out = []
        for k in list(self.active.values()):
            lk = self.leads[k]
            for a, b in ((j, k), (k, j)) if k != j else ((j, j),):
                la, lb = self.leads[a], self.leads[b]
                for m in range(1, min(len(la), len(lb))):
                    if la[-m:] == lb[:m]:
                        w = la + lb[m:]
                        out.append((deg(w), w, a, 0, b, len(la) - m))
        return out

    def _s_element(self, w, a, ia, b, ib):
        terms = {}
        prov = []
        for idx, pos, sign in ((a, ia, ONE), (b, ib, -ONE)):
            left, right = w[:pos], w[pos + len(self.leads[idx]):]
            _add_into(terms, w, sign)
            for t, c in self.tails[idx].items():
                _add_into(terms, left + t + right, -sign * c)
            prov.append((sign, left, ("gb", idx), right))
        return terms, prov

    def _build(self):
        p = self.presentation
        deg = self.alphabet.degree
        inputs = []
        for i, r in enumerate(p.relations):
            terms = _as_terms(r)
            inputs.append((max(deg(w) for w in terms), i, terms))
        inputs.sort(key=lambda x: (x[0], x[1]))
        heap = []
        counter = itertools.count()

        def push(cands):
            for d, w, a, ia, b, ib in cands:
                if d > self.degree_bound:
                    self.skipped += 1
                    continue
                heapq.heappush(heap, (d, next(counter), w, a, ia, b, ib))

        def insert(terms, prov):
            trace = [] if self.track else None
            red = self._reduce(terms, trace)
            if not red:
                return
            full = list(prov)
            if self.track:
                full.extend((-c, l, s, r) for c, l, s, r in trace)
            j, retired = self._add(red, full)
            push(self._pairs_for(j))
            for k in retired:
                # inclusion ambiguity: reduce the retired element by the basis
                tk = {self.leads[k]: ONE}
                for t, c in self.tails[k].items():
                    _add_into(tk, t, -c)
                pending.append((deg(self.leads[k]), tk, [(ONE, (), ("gb", k), ())]))

        pending = []
        ii = 0
        while ii < len(inputs) or heap or pending:
            # process the lowest degree first across inputs and pairs
            cand = []
            if ii < len(inputs):
                cand.append((inputs[ii][0], 0))
            if heap:
                cand.append((heap[0][0], 1))
            if pending:
                cand.append((min(x[0] for x in pending), 2))
            d, which = min(cand)
            if which == 0:
                _, i, terms = inputs[ii]
                ii += 1
                insert(terms, [(ONE, (), ("rel", i), ())])
            elif which == 1:
                _, _, w, a, ia, b, ib = heapq.heappop(heap)
                if self.leads[a] not in self.active or self.active[self.leads[a]] != a:
                    continue
                if self.leads[b] not in self.active or self.active[self.leads[b]] != b:
                    continue
                self.pairs_done += 1
                terms, prov = self._s_element(w, a, ia, b, ib)
                insert(terms, prov)
            else:
                k = min(range(len(pending)), key=lambda n: pending[n][0])
                _, terms, prov = pending.pop(k)
                insert(terms, prov)
        self._final = WordReducer(self.alphabet, {self.leads[j]: self.tails[j] for j in self.active.values()})

    @property
    def complete(self):
        return self.skipped == 0

    @property
    def size(self):
        return len(self.active)

    def rules(self):
        return sorted(((self.leads[j], self.tails[j]) for j in self.active.values()),
                      key=lambda x: self.alphabet.word_key(x[0]))

    def reducer(self):
        return self._final

    def element_terms(self, j):
        terms = {self.leads[j]: ONE}
        for t, c in self.tails[j].items():
            _add_into(terms, t, -c)
        return terms

    def normal_form(self, a: NCElement) -> NCElement:
        return reduce_element(a, [self._final] * a.legs)

    def member(self, a: NCElement, certificate=False) -> MembershipCertificate:
        """Membership via reduction; exact for degrees within the bound."""
        deg = a.degree()
        if certificate:
            comb = []
            if a.legs == 1:
                trace = []
                rest = self._reduce(_as_terms(a), trace)
                comb = [(l, s, r, c) for c, l, s, r in trace]
                residue = NCElement._make(a.alphabets, {(w,): c for w, c in rest.items()})
            else:
                residue, comb = self._reduce_multileg(a)
        else:
            residue = self.normal_form(a)
            comb = []
        if not residue:
            return MembershipCertificate(IN_IDEAL, comb, self.degree_bound)
        decisive = deg <= self.degree_bound and (self.complete or self.presentation.is_graded())
        return MembershipCertificate(NOT_IN_IDEAL if decisive else INCONCLUSIVE, [], self.degree_bound, residue)

    def _reduce_multileg(self, a):
        """Leg-by-leg reduction with a certificate."""
        comb = []
        cur = dict(a.terms)
        for leg in range(a.legs):
            nxt = {}
            groups = {}
            for key, c in cur.items():
                other = key[:leg] + (None,) + key[leg + 1:]
                groups.setdefault(other, {})[key[leg]] = c
            for other, terms in groups.items():
                trace = []
                rest = self._reduce(terms, trace)
                comb.extend((l, s, r, c, leg, other) for c, l, s, r in trace)
                for w, c in rest.items():
                    k = list(other)
                    k[leg] = w
                    _add_into(nxt, tuple(k), c)
            cur = nxt
        return NCElement._make(a.alphabets, cur), comb

    def verify_provenance(self):
        """Check every basis element against its recorded derivation."""
        if not self.track:
            raise ValueError("provenance was not tracked")
        rels = self.presentation.relations
        for j, prov in enumerate(self.provenance):
            total = {}
            for c, left, (kind, k), right in prov:
                terms = _as_terms(rels[k]) if kind == "rel" else self.element_terms(k)
                for w, d in terms.items():
                    _add_into(total, left + w + right, c * d)
            if total != self.element_terms(j):
                return False
        return True

    def flatten(self, combination):
        """Expand a certificate over basis elements into one over relations."""
        memo = {}

        def expand(j):
            if j in memo:
                return memo[j]
            out = {}
            for c, left, (kind, k), right in self.provenance[j]:
                if kind == "rel":
                    _add_into(out, (left, k, right), c)
                else:
                    for (l2, i2, r2), d in expand(k).items():
                        _add_into(out, (left + l2, i2, r2 + right), c * d)
            memo[j] = out
            return out

        flat = {}
        for entry in combination:
            left, ref, right, c = entry[:4]
            extra = tuple(entry[4:])
            if isinstance(ref, tuple):
                for (l2, i2, r2), d in expand(ref[1]).items():
                    _add_into(flat, (left + l2, i2, r2 + right) + extra, c * d)
            else:
                _add_into(flat, (left, ref, right) + extra, c)
        return [k[:3] + (c,) + k[3:] for k, c in sorted(flat.items(), key=lambda kv: repr(kv[0]))]


def _contains(big, small):
    n, m = len(big), len(small)
    return any(big[i:i + m] == small for i in range(n - m + 1))
