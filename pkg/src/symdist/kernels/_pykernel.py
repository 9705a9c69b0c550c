"""Pure-Python enumeration kernel, used when the compiled extension is absent.

Same interface and results as the compiled kernel.  Rows become Python ints
in the same block layout, so a row XOR is one big-int operation.
"""

from __future__ import annotations

import threading

import numpy as np

BACKEND = "python"
NO_WEIGHT = 1 << 62

_update_lock = threading.Lock()


def _as_int(words: np.ndarray) -> int:
    return int.from_bytes(np.ascontiguousarray(words, dtype="<u8").tobytes(), "little")


class GammaKernel:
    def __init__(self, rows, members, sizes, nw, mode, filter_rows, use_filter):
        rows = np.asarray(rows, dtype=np.uint64)
        self.width = rows.shape[1]
        self.nw = int(nw)
        self.mode = int(mode)
        self.n_p = len(sizes)
        self.rows = [_as_int(r) for r in rows]
        self.members = [
            tuple(self.rows[int(m)] for m in np.asarray(members)[p, : int(sizes[p])]) for p in range(self.n_p)
        ]
        self.filter_rows = [_as_int(f) for f in np.asarray(filter_rows, dtype=np.uint64)]
        self.use_filter = bool(use_filter) and len(self.filter_rows) > 0
        self._block = 64 * self.nw
        self._block_mask = (1 << self._block) - 1
        self._two_mask = (1 << (2 * self._block)) - 1

    def _weight(self, c: int) -> int:
        if self.mode == 0:
            return ((c | (c >> self._block)) & self._block_mask).bit_count()
        return c.bit_count()

    def _admissible(self, c: int) -> bool:
        if not self.use_filter:
            return True
        c &= self._two_mask
        return any((c & f).bit_count() & 1 for f in self.filter_rows)

    def run(self, g: int, prefix, shared_upper: np.ndarray):
        prefix = [int(p) for p in prefix]
        if g < 1 or g > self.n_p:
            raise ValueError(f"generation {g} outside 1..{self.n_p}")
        if len(prefix) > g:
            raise ValueError("prefix longer than the generation")
        n_p, t = self.n_p, len(prefix)
        members, weight = self.members, self._weight
        state = {"count": 0, "best_w": NO_WEIGHT, "best": 0}

        def leaf(acc: int) -> None:
            state["count"] += 1
            w = weight(acc)
            if 0 < w < min(int(shared_upper[0]), state["best_w"]) and self._admissible(acc):
                state["best_w"], state["best"] = w, acc
                with _update_lock:
                    if w < shared_upper[0]:
                        shared_upper[0] = w

        def walk(level: int, start: int, acc: int) -> None:
            if level < t:
                choices = (prefix[level],)
            else:
                choices = range(start, n_p - (g - level) + 1)
            last = level == g - 1
            for p in choices:
                for row in members[p]:
                    if last:
                        leaf(acc ^ row)
                    else:
                        walk(level + 1, p + 1, acc ^ row)

        walk(0, 0, 0)
        best = None
        if state["best_w"] < NO_WEIGHT:
            raw = state["best"].to_bytes(8 * self.width, "little")
            best = np.frombuffer(raw, dtype="<u8").astype(np.uint64)
        return state["count"], state["best_w"], best
